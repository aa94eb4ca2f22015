//! Finite order frames and models: each world carries a strict total
//! well-order of its accessible worlds, and a conditional is true at a
//! world when its consequent holds at the first antecedent world in that
//! order (vacuously true if there is none).

mod enumerate;
mod props;
mod transform;

pub use enumerate::{enumerate_frames, gamma_finite_witness, FrameClass};
pub use props::FrameProperties;
pub use transform::{
    kripke_to_flat_order, order_to_selection, selection_to_order, SelectionTable,
};

use crate::formula::Formula;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// A finite order frame. `after[w]` lists the worlds strictly after `w`
/// in `w`'s ordering; the full order at `w` is `w` followed by `after[w]`,
/// and the worlds accessible from `w` are `{w} ∪ after[w]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderFrame {
    pub worlds: Vec<String>,
    pub after: BTreeMap<String, Vec<String>>,
}

/// Maps atom indices to the set of worlds where the atom is true;
/// unlisted atoms are false everywhere.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Valuation(pub BTreeMap<u32, BTreeSet<String>>);

impl Valuation {
    pub fn new() -> Self {
        Valuation(BTreeMap::new())
    }

    pub fn set(&mut self, atom: u32, worlds: &[&str]) {
        self.0.insert(
            atom,
            worlds.iter().map(|w| w.to_string()).collect(),
        );
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedModel {
    pub frame: OrderFrame,
    pub valuation: Valuation,
    pub designated: String,
}

/// A Kripke model with an explicit accessibility relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KripkeModel {
    pub worlds: Vec<String>,
    pub relation: BTreeSet<(String, String)>,
    pub valuation: Valuation,
    pub designated: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrameError {
    #[error("world '{0}' appears in its own after-list")]
    SelfAfter(String),
    #[error("duplicate world '{1}' in after-list of '{0}'")]
    Duplicate(String, String),
    #[error("unknown world '{0}' referenced")]
    UnknownWorld(String),
    #[error("designated world '{0}' not in frame")]
    BadDesignated(String),
    #[error("valuation mentions unknown world '{0}'")]
    ValuationWorld(String),
}

impl OrderFrame {
    /// Checks the frame invariants, reporting every violation.
    pub fn validate(&self) -> Result<(), Vec<FrameError>> {
        let mut errors = Vec::new();
        let world_set: BTreeSet<&String> = self.worlds.iter().collect();
        for w in self.after.keys() {
            if !world_set.contains(w) {
                errors.push(FrameError::UnknownWorld(w.clone()));
            }
        }
        for (w, list) in &self.after {
            let mut seen = BTreeSet::new();
            for v in list {
                if v == w {
                    errors.push(FrameError::SelfAfter(w.clone()));
                }
                if !world_set.contains(v) {
                    errors.push(FrameError::UnknownWorld(v.clone()));
                }
                if !seen.insert(v) {
                    errors.push(FrameError::Duplicate(w.clone(), v.clone()));
                }
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }

    pub fn after_of(&self, w: &str) -> &[String] {
        self.after.get(w).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The order at `w` as a list: `w` first, then `after[w]`.
    pub fn order_at(&self, w: &str) -> Vec<&str> {
        let mut out = vec![w];
        out.extend(self.after_of(w).iter().map(String::as_str));
        out
    }

    /// Worlds accessible from `w`.
    pub fn reach(&self, w: &str) -> BTreeSet<&str> {
        self.order_at(w).into_iter().collect()
    }

    pub fn index(&self) -> FrameIndex {
        FrameIndex::new(self)
    }
}

impl PointedModel {
    pub fn validate(&self) -> Result<(), Vec<FrameError>> {
        let mut errors = match self.frame.validate() {
            Ok(()) => Vec::new(),
            Err(e) => e,
        };
        let world_set: BTreeSet<&String> = self.frame.worlds.iter().collect();
        if !world_set.contains(&self.designated) {
            errors.push(FrameError::BadDesignated(self.designated.clone()));
        }
        for worlds in self.valuation.0.values() {
            for w in worlds {
                if !world_set.contains(w) {
                    errors.push(FrameError::ValuationWorld(w.clone()));
                }
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }
}

/// Indexed view of a frame for evaluation: worlds as `0..n`, accessible
/// orders as index lists, denotations as bitmasks. Limited to 64 worlds.
pub struct FrameIndex {
    pub names: Vec<String>,
    pub by_name: HashMap<String, usize>,
    /// `order[w]` is `w` followed by its after-list, as indices.
    pub order: Vec<Vec<usize>>,
}

impl FrameIndex {
    fn new(frame: &OrderFrame) -> Self {
        assert!(frame.worlds.len() <= 64, "frames are limited to 64 worlds");
        let names = frame.worlds.clone();
        let by_name: HashMap<String, usize> = names
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let order = names
            .iter()
            .map(|w| {
                let mut o = vec![by_name[w]];
                o.extend(frame.after_of(w).iter().map(|v| by_name[v]));
                o
            })
            .collect();
        FrameIndex {
            names,
            by_name,
            order,
        }
    }

    fn valuation_mask(&self, valuation: &Valuation, atom: u32) -> u64 {
        valuation
            .0
            .get(&atom)
            .map(|ws| {
                ws.iter()
                    .filter_map(|w| self.by_name.get(w))
                    .fold(0u64, |m, &i| m | (1 << i))
            })
            .unwrap_or(0)
    }
}

/// Computes the set of worlds where `f` is true, memoizing per subformula.
pub fn denotation(frame: &OrderFrame, valuation: &Valuation, f: &Formula) -> BTreeSet<String> {
    let idx = frame.index();
    let mask = denote_mask(&idx, valuation, f);
    idx.names
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, w)| w.clone())
        .collect()
}

/// Truth of `f` at the designated world of `m`.
pub fn evaluate(m: &PointedModel, f: &Formula) -> bool {
    let idx = m.frame.index();
    let mask = denote_mask(&idx, &m.valuation, f);
    let w = idx.by_name[&m.designated];
    mask & (1 << w) != 0
}

pub(crate) fn denote_mask(idx: &FrameIndex, valuation: &Valuation, f: &Formula) -> u64 {
    let mut memo = HashMap::new();
    denote_rec(idx, valuation, &f.normalize(), &mut memo)
}

fn denote_rec(
    idx: &FrameIndex,
    valuation: &Valuation,
    f: &Formula,
    memo: &mut HashMap<Formula, u64>,
) -> u64 {
    if let Some(&m) = memo.get(f) {
        return m;
    }
    use Formula::*;
    let n = idx.names.len();
    let all: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let mask = match f {
        Atom(k) => idx.valuation_mask(valuation, *k),
        Neg(a) => all & !denote_rec(idx, valuation, a, memo),
        And(a, b) => {
            denote_rec(idx, valuation, a, memo) & denote_rec(idx, valuation, b, memo)
        }
        Cond(a, b) => {
            let pa = denote_rec(idx, valuation, a, memo);
            let pb = denote_rec(idx, valuation, b, memo);
            let mut out = 0u64;
            for w in 0..n {
                // First antecedent world in w's order decides; vacuous
                // truth when the order contains none.
                let first = idx.order[w].iter().find(|&&v| pa & (1 << v) != 0);
                let holds = match first {
                    None => true,
                    Some(&v) => pb & (1 << v) != 0,
                };
                if holds {
                    out |= 1 << w;
                }
            }
            out
        }
        Meta(_) => panic!("cannot evaluate a schema template; instantiate it first"),
        _ => unreachable!("normalized formula"),
    };
    memo.insert(f.clone(), mask);
    mask
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    pub(crate) fn fig1_frame() -> OrderFrame {
        let mut after = BTreeMap::new();
        after.insert("1".into(), vec!["2".into(), "3".into()]);
        after.insert("2".into(), vec!["4".into()]);
        after.insert("3".into(), vec![]);
        after.insert("4".into(), vec![]);
        OrderFrame {
            worlds: vec!["1".into(), "2".into(), "3".into(), "4".into()],
            after,
        }
    }

    pub(crate) fn fig1_model() -> PointedModel {
        let mut v = Valuation::new();
        v.set(0, &["2", "3", "4"]);
        v.set(1, &["3", "4"]);
        v.set(2, &["4"]);
        PointedModel {
            frame: fig1_frame(),
            valuation: v,
            designated: "1".into(),
        }
    }

    #[test]
    fn validate_catches_violations() {
        assert!(fig1_frame().validate().is_ok());

        let mut after = BTreeMap::new();
        after.insert("1".into(), vec!["1".into()]);
        let f = OrderFrame {
            worlds: vec!["1".into()],
            after,
        };
        assert_eq!(
            f.validate().unwrap_err(),
            vec![FrameError::SelfAfter("1".into())]
        );

        let mut after = BTreeMap::new();
        after.insert("1".into(), vec!["2".into(), "2".into()]);
        let f = OrderFrame {
            worlds: vec!["1".into(), "2".into()],
            after,
        };
        assert_eq!(
            f.validate().unwrap_err(),
            vec![FrameError::Duplicate("1".into(), "2".into())]
        );
    }

    #[test]
    fn flattening_fails_at_fig1() {
        let m = fig1_model();
        // p & q > r is false at 1, while p > ((p & q) > r) is true.
        assert!(!evaluate(&m, &parse("(p & q) > r").unwrap()));
        assert!(evaluate(&m, &parse("p > ((p & q) > r)").unwrap()));
        // Flipping r at worlds 3 and 4 reverses which direction fails.
        let mut m2 = m.clone();
        m2.valuation.set(2, &["3"]);
        assert!(evaluate(&m2, &parse("(p & q) > r").unwrap()));
        assert!(!evaluate(&m2, &parse("p > ((p & q) > r)").unwrap()));
    }

    #[test]
    fn identity_true_everywhere() {
        let m = fig1_model();
        for w in &m.frame.worlds {
            let mut pm = m.clone();
            pm.designated = w.clone();
            assert!(evaluate(&pm, &parse("p > p").unwrap()));
        }
    }

    #[test]
    fn denotation_examples() {
        let m = fig1_model();
        let pq: BTreeSet<String> = ["3", "4"].iter().map(|s| s.to_string()).collect();
        assert_eq!(
            denotation(&m.frame, &m.valuation, &parse("p & q").unwrap()),
            pq
        );
        let top: BTreeSet<String> =
            m.frame.worlds.iter().cloned().collect();
        assert_eq!(
            denotation(&m.frame, &m.valuation, &parse("#t").unwrap()),
            top
        );
    }
}
