//! Order models induced by sequences: worlds are the tails, accessibility
//! is tailhood, and a tail's order is ascending rank.

use super::{expr_equal, tails, Lasso, OrdinalCNF, SeqExpr};
use crate::order::{OrderFrame, PointedModel, Valuation};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Protoworld identifiers with a categorical valuation: an atom's truth at
/// a sequence depends only on the sequence's first protoworld.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtoworldTable {
    /// atom index -> protoworlds where it is true
    pub atoms: BTreeMap<u32, BTreeSet<String>>,
}

impl ProtoworldTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, atom: u32, protoworlds: &[&str]) {
        self.atoms.insert(
            atom,
            protoworlds.iter().map(|w| w.to_string()).collect(),
        );
    }

    pub fn holds(&self, atom: u32, protoworld: &str) -> bool {
        self.atoms
            .get(&atom)
            .map(|s| s.contains(protoworld))
            .unwrap_or(false)
    }
}

/// A pointed sequence model: a designated root sequence together with the
/// categorical valuation. Worlds of the induced order model are the
/// distinct non-empty tails of the root.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SequenceModel {
    pub root: SeqExpr,
    pub table: ProtoworldTable,
}

impl SequenceModel {
    pub fn new(root: SeqExpr, table: ProtoworldTable) -> Self {
        SequenceModel {
            root: root.normalize(),
            table,
        }
    }

    pub fn induced(&self) -> PointedModel {
        induced_order_model(&self.root, &self.table)
    }

    pub fn tails(&self) -> Vec<(SeqExpr, OrdinalCNF)> {
        tails(&self.root)
    }
}

/// Builds the induced pointed order model. World names are the rendered
/// normal forms of the tails; each tail's after-list is its proper tails
/// in ascending rank order.
pub fn induced_order_model(root: &SeqExpr, table: &ProtoworldTable) -> PointedModel {
    let root = root.normalize();
    let root_tails = tails(&root);
    let worlds: Vec<String> = root_tails.iter().map(|(t, _)| t.render()).collect();

    let mut after: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (t, _) in &root_tails {
        let own = tails(t);
        let name = t.render();
        let list = own
            .iter()
            .skip(1) // rank 0 is t itself
            .map(|(u, _)| {
                // identify u with the matching world of the root model
                root_tails
                    .iter()
                    .find(|(w, _)| expr_equal(w, u))
                    .map(|(w, _)| w.render())
                    .unwrap_or_else(|| u.render())
            })
            .collect();
        after.insert(name, list);
    }

    let mut valuation = Valuation::new();
    let atoms: BTreeSet<u32> = table.atoms.keys().copied().collect();
    for atom in atoms {
        let holds: Vec<String> = root_tails
            .iter()
            .filter(|(t, _)| table.holds(atom, t.head()))
            .map(|(t, _)| t.render())
            .collect();
        valuation
            .0
            .insert(atom, holds.into_iter().collect());
    }

    PointedModel {
        frame: OrderFrame { worlds, after },
        valuation,
        designated: root.render(),
    }
}

/// Replaces a lasso model's protoworlds by fresh ones, one per distinct
/// tail, carrying that tail's atom values. The result verifies the same
/// sentences.
pub fn minimal_representation(
    lasso: &Lasso,
    table: &ProtoworldTable,
) -> (Lasso, ProtoworldTable) {
    let lasso = Lasso::new(lasso.prefix.clone(), lasso.cycle.clone());
    let old: Vec<&String> = lasso.prefix.iter().chain(lasso.cycle.iter()).collect();
    let fresh: Vec<String> = (0..old.len()).map(|i| format!("n{i}")).collect();
    let mut new_table = ProtoworldTable::new();
    for (atom, ws) in &table.atoms {
        let holds: BTreeSet<String> = old
            .iter()
            .zip(fresh.iter())
            .filter(|(o, _)| ws.contains(**o))
            .map(|(_, f)| f.clone())
            .collect();
        new_table.atoms.insert(*atom, holds);
    }
    let prefix = fresh[..lasso.prefix.len()].to_vec();
    let cycle = fresh[lasso.prefix.len()..].to_vec();
    (Lasso { prefix, cycle }, new_table)
}

/// ω-padding of a non-empty finite list: repeat the last element forever.
pub fn omega_padding(list: &[String]) -> Result<Lasso, &'static str> {
    match list.split_last() {
        None => Err("cannot ω-pad the empty list"),
        Some((last, init)) => Ok(Lasso::new(init.to_vec(), vec![last.clone()])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::order::evaluate;

    fn table_p_at(ws: &[&str]) -> ProtoworldTable {
        let mut t = ProtoworldTable::new();
        t.set(0, ws);
        t
    }

    #[test]
    fn material_vs_conditional_at_cycle() {
        // root (12)^ω, p true only at protoworld 2, q nowhere:
        // p -> q true at the root, p > q false.
        let root = SeqExpr::omega(SeqExpr::word(&["1", "2"]));
        let m = induced_order_model(&root, &table_p_at(&["2"]));
        assert!(evaluate(&m, &parse("p -> q").unwrap()));
        assert!(!evaluate(&m, &parse("p > q").unwrap()));
    }

    #[test]
    fn mckinsey_fails_at_cycle() {
        // root (12)^ω with p at 1: □◇p true, ◇□p false.
        let root = SeqExpr::omega(SeqExpr::word(&["1", "2"]));
        let m = induced_order_model(&root, &table_p_at(&["1"]));
        assert!(evaluate(&m, &parse("[]<>p").unwrap()));
        assert!(!evaluate(&m, &parse("<>[]p").unwrap()));
    }

    #[test]
    fn sequentiality_premises_with_failing_conclusion() {
        // root (12)^ω·3 with p at 1, q at 2, r at 1 and 2 realizes the
        // flat model that verifies (a)-(c) but not (d).
        let root = SeqExpr::cat(vec![
            SeqExpr::omega(SeqExpr::word(&["1", "2"])),
            SeqExpr::elem("3"),
        ]);
        let mut t = ProtoworldTable::new();
        t.set(0, &["1"]);
        t.set(1, &["2"]);
        t.set(2, &["1", "2"]);
        let m = induced_order_model(&root, &t);
        assert!(evaluate(&m, &parse("[](p -> (~p > r))").unwrap()));
        assert!(evaluate(&m, &parse("[](q -> (~q > r))").unwrap()));
        assert!(evaluate(&m, &parse("p | q").unwrap()));
        assert!(!evaluate(&m, &parse("~(p | q) > r").unwrap()));
    }

    #[test]
    fn induced_frames_are_flat() {
        let roots = vec![
            SeqExpr::omega(SeqExpr::word(&["1", "2"])),
            SeqExpr::cat(vec![
                SeqExpr::omega(SeqExpr::word(&["1", "2"])),
                SeqExpr::elem("3"),
            ]),
            SeqExpr::word(&["1", "2", "3"]),
        ];
        for root in roots {
            let m = induced_order_model(&root, &ProtoworldTable::new());
            let props = m.frame.properties();
            assert!(props.flat, "induced frame must be flat: {root}");
        }
        // lassos additionally induce ancestral frames
        let m = induced_order_model(
            &SeqExpr::omega(SeqExpr::word(&["1", "2"])),
            &ProtoworldTable::new(),
        );
        assert!(m.frame.properties().ancestral);
        // finite lists: ancestral and every world reaches a fixpoint
        let m = induced_order_model(&SeqExpr::word(&["1", "2", "3"]), &ProtoworldTable::new());
        assert!(m.frame.properties().ancestral);
    }

    #[test]
    fn omega_padding_examples() {
        let l = omega_padding(&["1".into(), "2".into(), "3".into()]).unwrap();
        assert_eq!(l.prefix, vec!["1", "2"]);
        assert_eq!(l.cycle, vec!["3"]);
        let l = omega_padding(&["3".into()]).unwrap();
        assert!(l.prefix.is_empty());
        assert_eq!(l.cycle, vec!["3"]);
        assert!(omega_padding(&[]).is_err());
    }

    #[test]
    fn padding_preserves_small_formulas() {
        let list: Vec<String> = vec!["1".into(), "2".into(), "3".into()];
        let mut t = ProtoworldTable::new();
        t.set(0, &["1", "3"]);
        t.set(1, &["2"]);
        let list_model = induced_order_model(
            &SeqExpr::word(&["1", "2", "3"]),
            &t,
        );
        let padded = omega_padding(&list).unwrap();
        let pad_model = induced_order_model(&padded.to_seq_expr(), &t);
        for src in [
            "p", "q", "p > q", "q > p", "~p > q", "[]p", "<>q", "[](p | q)",
            "p > (q > p)", "(p & q) > p", "[]<>p", "<>[]p", "~q > (p & ~q)",
        ] {
            let f = parse(src).unwrap();
            assert_eq!(
                evaluate(&list_model, &f),
                evaluate(&pad_model, &f),
                "{src} differs between list and padding"
            );
        }
    }

    #[test]
    fn minimal_representation_preserves_small_formulas() {
        // duplicate labels in the lasso
        let lasso = Lasso::new(vec!["1".into()], vec!["2".into(), "1".into()]);
        let mut t = ProtoworldTable::new();
        t.set(0, &["1"]);
        t.set(1, &["2"]);
        let (ml, mt) = minimal_representation(&lasso, &t);
        assert_eq!(ml.prefix.len() + ml.cycle.len(), 3);
        let before = induced_order_model(&lasso.to_seq_expr(), &t);
        let after = induced_order_model(&ml.to_seq_expr(), &mt);
        for src in [
            "p", "q", "p > q", "~p > q", "[]p", "<>p", "[](p | q)",
            "(p | q) > q", "p > (q > p)", "[]<>q", "~p > (~p & q)",
        ] {
            let f = parse(src).unwrap();
            assert_eq!(evaluate(&before, &f), evaluate(&after, &f), "{src}");
        }
    }
}
