//! Transforms between model kinds: Kripke models to flat order frames, and
//! order frames to selection functions and back.

use super::{KripkeModel, OrderFrame};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("relation is not reflexive at '{0}'")]
    NotReflexive(String),
    #[error("relation is not transitive: ({0},{1}),({1},{2}) but not ({0},{2})")]
    NotTransitive(String, String, String),
    #[error("relation is not connected at '{0}': neither ({1},{2}) nor ({2},{1})")]
    NotConnected(String, String, String),
    #[error("tie order violates the relation: '{0}' before '{1}' but not {0}R{1}")]
    TieOrderViolation(String, String),
    #[error("tie order must list every world exactly once")]
    TieOrderDomain,
    #[error("selection constraint {0} violated at ({1:?}, '{2}')")]
    Selection(u8, Vec<String>, String),
}

impl KripkeModel {
    pub fn holds(&self, a: &str, b: &str) -> bool {
        self.relation.contains(&(a.to_string(), b.to_string()))
    }

    pub fn check_reflexive(&self) -> Result<(), TransformError> {
        for w in &self.worlds {
            if !self.holds(w, w) {
                return Err(TransformError::NotReflexive(w.clone()));
            }
        }
        Ok(())
    }

    pub fn check_transitive(&self) -> Result<(), TransformError> {
        for (a, b) in &self.relation {
            for c in &self.worlds {
                if self.holds(b, c) && !self.holds(a, c) {
                    return Err(TransformError::NotTransitive(
                        a.clone(),
                        b.clone(),
                        c.clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn check_connected(&self) -> Result<(), TransformError> {
        for w in &self.worlds {
            for x in &self.worlds {
                for y in &self.worlds {
                    if x != y && self.holds(w, x) && self.holds(w, y)
                        && !self.holds(x, y)
                        && !self.holds(y, x)
                    {
                        return Err(TransformError::NotConnected(
                            w.clone(),
                            x.clone(),
                            y.clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Turns a reflexive, transitive, connected Kripke model into a flat order
/// frame agreeing with its accessibility relation. `tie_order` breaks ties
/// between distinct accessible worlds and must itself respect the relation
/// (`x` before `y` implies `xRy`).
pub fn kripke_to_flat_order(
    k: &KripkeModel,
    tie_order: &[String],
) -> Result<OrderFrame, TransformError> {
    k.check_reflexive()?;
    k.check_transitive()?;
    k.check_connected()?;
    let order_set: BTreeSet<&String> = tie_order.iter().collect();
    if order_set.len() != tie_order.len() || order_set.len() != k.worlds.len() {
        return Err(TransformError::TieOrderDomain);
    }
    for (i, x) in tie_order.iter().enumerate() {
        for y in &tie_order[i + 1..] {
            if !k.holds(x, y) {
                return Err(TransformError::TieOrderViolation(x.clone(), y.clone()));
            }
        }
    }
    let pos: BTreeMap<&String, usize> =
        tie_order.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut after = BTreeMap::new();
    for w in &k.worlds {
        let mut out: Vec<String> = k
            .worlds
            .iter()
            .filter(|y| *y != w && k.holds(w, y))
            .cloned()
            .collect();
        out.sort_by_key(|y| pos[&y]);
        after.insert(w.clone(), out);
    }
    Ok(OrderFrame {
        worlds: k.worlds.clone(),
        after,
    })
}

/// A selection function as an explicit finite table: for every subset of
/// the worlds and every world, the selected set (empty or a singleton).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionTable {
    pub worlds: Vec<String>,
    pub select: BTreeMap<(BTreeSet<String>, String), BTreeSet<String>>,
}

impl SelectionTable {
    fn get(&self, phi: &BTreeSet<String>, w: &str) -> BTreeSet<String> {
        self.select
            .get(&(phi.clone(), w.to_string()))
            .cloned()
            .unwrap_or_default()
    }
}

fn subsets(worlds: &[String]) -> Vec<BTreeSet<String>> {
    let n = worlds.len();
    (0..(1u32 << n))
        .map(|mask| {
            worlds
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, w)| w.clone())
                .collect()
        })
        .collect()
}

/// Derives the selection table of an order frame: the selected world is
/// `w` itself when `w` is in the set, otherwise the first world of the set
/// in `w`'s order, otherwise nothing.
pub fn order_to_selection(frame: &OrderFrame) -> SelectionTable {
    let mut select = BTreeMap::new();
    for phi in subsets(&frame.worlds) {
        for w in &frame.worlds {
            let chosen: BTreeSet<String> = if phi.contains(w) {
                [w.clone()].into_iter().collect()
            } else {
                frame
                    .order_at(w)
                    .into_iter()
                    .find(|v| phi.contains(*v))
                    .map(|v| [v.to_string()].into_iter().collect())
                    .unwrap_or_default()
            };
            select.insert((phi.clone(), w.clone()), chosen);
        }
    }
    SelectionTable {
        worlds: frame.worlds.clone(),
        select,
    }
}

/// Recovers the order frame from a selection table, checking the four
/// selection constraints:
/// 1. if `w ∈ φ` then `w ∈ f(φ,w)`;
/// 2. if `f(φ,w) ⊆ ψ` and `f(ψ,w) ⊆ φ` then `f(φ,w) = f(ψ,w)`;
/// 3. `f(φ,w) ⊆ φ`;
/// 4. `|f(φ,w)| ≤ 1`.
pub fn selection_to_order(table: &SelectionTable) -> Result<OrderFrame, TransformError> {
    let sets = subsets(&table.worlds);
    for phi in &sets {
        for w in &table.worlds {
            let f = table.get(phi, w);
            if phi.contains(w) && !f.contains(w) {
                return Err(TransformError::Selection(
                    1,
                    phi.iter().cloned().collect(),
                    w.clone(),
                ));
            }
            if !f.is_subset(phi) {
                return Err(TransformError::Selection(
                    3,
                    phi.iter().cloned().collect(),
                    w.clone(),
                ));
            }
            if f.len() > 1 {
                return Err(TransformError::Selection(
                    4,
                    phi.iter().cloned().collect(),
                    w.clone(),
                ));
            }
            for psi in &sets {
                let g = table.get(psi, w);
                if f.is_subset(psi) && g.is_subset(phi) && f != g {
                    return Err(TransformError::Selection(
                        2,
                        phi.iter().cloned().collect(),
                        w.clone(),
                    ));
                }
            }
        }
    }
    // x <_w y iff f({x,y},w) = {x} and f({y},w) = {y}
    let mut after = BTreeMap::new();
    for w in &table.worlds {
        let mut acc: Vec<String> = table
            .worlds
            .iter()
            .filter(|v| *v != w)
            .filter(|v| {
                let singleton: BTreeSet<String> = [(*v).clone()].into_iter().collect();
                table.get(&singleton, w) == singleton
            })
            .cloned()
            .collect();
        acc.sort_by(|x, y| {
            let pair: BTreeSet<String> = [x.clone(), y.clone()].into_iter().collect();
            let sel = table.get(&pair, w);
            if sel.contains(x) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        after.insert(w.clone(), acc);
    }
    Ok(OrderFrame {
        worlds: table.worlds.clone(),
        after,
    })
}
