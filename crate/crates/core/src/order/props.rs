//! Frame-property analysis: transitivity, connectedness, the semi-flat and
//! flat conditions, successor structure, and ancestrality.

use super::OrderFrame;
use crate::seq::Lasso;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FrameProperties {
    /// Accessibility is reflexive by construction: every world heads its
    /// own order.
    pub reflexive: bool,
    pub transitive: bool,
    pub connected: bool,
    pub semi_flat: bool,
    pub flat: bool,
    pub ancestral: bool,
}

impl OrderFrame {
    pub fn properties(&self) -> FrameProperties {
        let transitive = self.is_transitive();
        let semi_flat = self.is_semi_flat();
        FrameProperties {
            reflexive: true,
            transitive,
            connected: self.is_connected(),
            semi_flat,
            flat: semi_flat && transitive,
            ancestral: self.is_ancestral(),
        }
    }

    pub fn is_transitive(&self) -> bool {
        self.worlds.iter().all(|w| {
            let rw = self.reach(w);
            rw.iter().all(|x| self.reach(x).is_subset(&rw))
        })
    }

    pub fn is_connected(&self) -> bool {
        self.worlds.iter().all(|w| {
            let rw: Vec<&str> = self.order_at(w);
            rw.iter().all(|x| {
                rw.iter().all(|y| {
                    x == y || self.reach(x).contains(y) || self.reach(y).contains(x)
                })
            })
        })
    }

    /// Position of `v` in `w`'s order, if accessible.
    fn pos(&self, w: &str, v: &str) -> Option<usize> {
        self.order_at(w).iter().position(|&u| u == v)
    }

    fn lt(&self, w: &str, x: &str, y: &str) -> bool {
        match (self.pos(w, x), self.pos(w, y)) {
            (Some(i), Some(j)) => i < j,
            _ => false,
        }
    }

    fn le(&self, w: &str, x: &str, y: &str) -> bool {
        let rw = self.reach(w);
        rw.contains(x) && rw.contains(y) && !self.lt(w, y, x)
    }

    /// The full clause, quantifying over all world quadruples:
    /// if `x <_w y` and either `y <=_w z` or `z ∈ R(x) \ R(w)`,
    /// then `y <=_x z`.
    pub fn is_semi_flat(&self) -> bool {
        for w in &self.worlds {
            let rw = self.reach(w);
            for x in &self.worlds {
                for y in &self.worlds {
                    if !self.lt(w, x, y) {
                        continue;
                    }
                    let rx = self.reach(x);
                    for z in &self.worlds {
                        let hypothesis =
                            self.le(w, y, z) || (rx.contains(z.as_str()) && !rw.contains(z.as_str()));
                        if hypothesis && !self.le(x, y, z) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn is_flat(&self) -> bool {
        self.is_semi_flat() && self.is_transitive()
    }

    /// The successor of `w`: `w` itself when `w` accesses only itself,
    /// otherwise the first world after `w`.
    pub fn successor(&self, w: &str) -> &str {
        match self.after_of(w).first() {
            Some(v) => v,
            None => self
                .worlds
                .iter()
                .find(|u| u.as_str() == w)
                .map(String::as_str)
                .expect("world in frame"),
        }
    }

    /// Least set containing `w` and closed under successor.
    pub fn reachable_set(&self, w: &str) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut cur = w;
        while out.insert(cur.to_string()) {
            cur = self.successor(cur);
        }
        out
    }

    /// Every accessible world is reachable by iterated successor steps.
    pub fn is_ancestral(&self) -> bool {
        self.worlds.iter().all(|w| {
            let reachable = self.reachable_set(w);
            self.reach(w).iter().all(|v| reachable.contains(*v))
        })
    }

    /// The successor-sequence of `w` as a lasso: in a finite frame the
    /// successor orbit always enters a cycle.
    pub fn successor_sequence(&self, w: &str) -> Lasso {
        let mut seen: Vec<&str> = Vec::new();
        let mut cur = w;
        loop {
            if let Some(k) = seen.iter().position(|&u| u == cur) {
                let prefix = seen[..k].iter().map(|s| s.to_string()).collect();
                let cycle = seen[k..].iter().map(|s| s.to_string()).collect();
                return Lasso::new(prefix, cycle);
            }
            seen.push(cur);
            cur = self.successor(cur);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn frame(spec: &[(&str, &[&str])]) -> OrderFrame {
        let worlds = spec.iter().map(|(w, _)| w.to_string()).collect();
        let after = spec
            .iter()
            .map(|(w, a)| (w.to_string(), a.iter().map(|v| v.to_string()).collect()))
            .collect::<BTreeMap<_, _>>();
        OrderFrame { worlds, after }
    }

    fn fig2_left() -> OrderFrame {
        frame(&[
            ("1", &["2", "3", "4"]),
            ("2", &["3", "4"]),
            ("3", &["2", "4"]),
            ("4", &[]),
        ])
    }

    fn fig2_right() -> OrderFrame {
        frame(&[
            ("1", &["2", "3", "4"]),
            ("2", &["4", "3"]),
            ("3", &["2", "4"]),
            ("4", &[]),
        ])
    }

    fn fig4_lt1() -> OrderFrame {
        frame(&[("1", &["2", "3"]), ("2", &["1", "3"]), ("3", &[])])
    }

    fn fig4_lt2() -> OrderFrame {
        frame(&[("1", &["2", "3"]), ("2", &["3"]), ("3", &[])])
    }

    fn fig4_lt3() -> OrderFrame {
        frame(&[("1", &["2", "3"]), ("2", &["3", "1"]), ("3", &["1", "2"])])
    }

    #[test]
    fn flatness_illustrations() {
        assert!(fig2_left().properties().flat);
        let right = fig2_right().properties();
        assert!(!right.semi_flat);
        assert!(!right.flat);
    }

    #[test]
    fn flat_but_not_ancestral() {
        let p = fig4_lt1().properties();
        assert!(p.flat);
        assert!(!p.ancestral);
    }

    #[test]
    fn successor_and_reachability() {
        let f1 = fig4_lt1();
        assert_eq!(f1.successor("1"), "2");
        assert_eq!(f1.successor("2"), "1");
        let r: Vec<String> = f1.reachable_set("1").into_iter().collect();
        assert_eq!(r, vec!["1".to_string(), "2".to_string()]);
        assert!(!f1.is_ancestral());

        let f3 = fig4_lt3();
        assert_eq!(
            f3.reachable_set("1").len(),
            3,
            "all three worlds reachable"
        );
        assert!(f3.properties().ancestral);
        assert!(fig4_lt2().properties().ancestral);
    }

    #[test]
    fn singleton_successor_is_self() {
        let f = frame(&[("w", &[])]);
        assert_eq!(f.successor("w"), "w");
    }

    #[test]
    fn successor_sequences() {
        let f3 = fig4_lt3();
        let l = f3.successor_sequence("1");
        assert_eq!(l.prefix, Vec::<String>::new());
        assert_eq!(l.cycle, vec!["1", "2", "3"]);

        let f2 = fig4_lt2();
        let l = f2.successor_sequence("1");
        assert_eq!(l.prefix, vec!["1", "2"]);
        assert_eq!(l.cycle, vec!["3"]);

        let f1 = fig4_lt1();
        let l = f1.successor_sequence("3");
        assert_eq!(l.prefix, Vec::<String>::new());
        assert_eq!(l.cycle, vec!["3"]);
    }

    #[test]
    fn successor_sequence_visits_reachable_set() {
        for f in [fig4_lt1(), fig4_lt2(), fig4_lt3(), fig2_left()] {
            for w in &f.worlds {
                let lasso = f.successor_sequence(w);
                let visited: BTreeSet<String> = lasso
                    .prefix
                    .iter()
                    .chain(lasso.cycle.iter())
                    .cloned()
                    .collect();
                assert_eq!(visited, f.reachable_set(w));
            }
        }
    }
}
