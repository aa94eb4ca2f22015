//! Relevance restriction for Boolean-antecedent formulas: the positions of
//! a sequence that can matter to a formula's truth value, and the finite
//! subsequence they carve out.

use super::{ProtoworldTable, OrdinalCNF, SeqExpr};
use crate::formula::{Formula, Fragment};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RestrictError {
    #[error("formula is not in the Boolean-antecedent fragment")]
    NotBooleanAntecedent,
    #[error("position {0} out of range")]
    OutOfRange(String),
    #[error("position set must contain 0")]
    MissingZero,
}

/// Truth of a Boolean formula at a protoworld under the categorical table.
fn bool_holds(table: &ProtoworldTable, f: &Formula, w: &str) -> bool {
    use Formula::*;
    match f {
        Atom(k) => table.holds(*k, w),
        Neg(a) => !bool_holds(table, a, w),
        And(a, b) => bool_holds(table, a, w) && bool_holds(table, b, w),
        _ => unreachable!("normalized Boolean formula"),
    }
}

/// Least rank of a tail whose head satisfies the Boolean formula `f`,
/// scanning tails in rank order.
fn first_tail_rank(
    root: &SeqExpr,
    table: &ProtoworldTable,
    f: &Formula,
) -> Option<(OrdinalCNF, SeqExpr)> {
    super::tails(root)
        .into_iter()
        .find(|(t, _)| bool_holds(table, f, t.head()))
        .map(|(t, r)| (r, t))
}

/// The finite set of positions of `root` relevant to the Boolean-antecedent
/// formula `f`; always contains 0.
pub fn relevant_positions(
    root: &SeqExpr,
    table: &ProtoworldTable,
    f: &Formula,
) -> Result<BTreeSet<OrdinalCNF>, RestrictError> {
    let n = f.normalize();
    if n.classify_fragment() == Fragment::General {
        return Err(RestrictError::NotBooleanAntecedent);
    }
    Ok(h(root, table, &n))
}

fn h(root: &SeqExpr, table: &ProtoworldTable, f: &Formula) -> BTreeSet<OrdinalCNF> {
    use Formula::*;
    let mut out = BTreeSet::new();
    out.insert(OrdinalCNF::zero());
    match f {
        Atom(_) => {}
        Neg(a) => return h(root, table, a),
        And(a, b) => {
            let mut s = h(root, table, a);
            s.extend(h(root, table, b));
            return s;
        }
        Cond(a, b) => {
            if let Some((rank, tail)) = first_tail_rank(root, table, a) {
                for beta in h(&tail, table, b) {
                    out.insert(rank.add(&beta));
                }
            }
        }
        _ => unreachable!("normalized formula"),
    }
    out
}

/// The element of `e` at ordinal position `alpha`.
pub fn element_at(e: &SeqExpr, alpha: &OrdinalCNF) -> Option<String> {
    match e {
        SeqExpr::Elem(w) => {
            if alpha.is_zero() {
                Some(w.clone())
            } else {
                None
            }
        }
        SeqExpr::Cat(items) => {
            let mut pos = alpha.clone();
            for it in items {
                let len = it.length();
                if pos < len {
                    return element_at(it, &pos);
                }
                pos = len.left_subtract(&pos)?;
            }
            None
        }
        SeqExpr::Omega(b) => {
            let len = b.length();
            if *alpha >= len.mul_omega() {
                return None;
            }
            // reduce alpha modulo the body length
            let mut pos = alpha.clone();
            while pos >= len {
                pos = len.left_subtract(&pos)?;
            }
            element_at(b, &pos)
        }
    }
}

/// Restriction of `root` to a finite position set `positions` (which must
/// contain 0 and stay within range): the protoworlds at those positions
/// in order, as a finite list.
pub fn restrict(
    root: &SeqExpr,
    positions: &BTreeSet<OrdinalCNF>,
) -> Result<Vec<String>, RestrictError> {
    if !positions.contains(&OrdinalCNF::zero()) {
        return Err(RestrictError::MissingZero);
    }
    let root = root.normalize();
    positions
        .iter()
        .map(|p| {
            element_at(&root, p).ok_or_else(|| RestrictError::OutOfRange(p.to_string()))
        })
        .collect()
}
