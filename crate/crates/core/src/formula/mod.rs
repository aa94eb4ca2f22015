//! Abstract syntax, parsing, printing and syntactic analysis for the
//! conditional language: atoms, Boolean connectives, and the binary
//! conditional `>` together with the defined connectives built from it.

mod parse;
mod print;

pub use parse::{parse, ParseError};
pub use print::PrintStyle;

use std::collections::BTreeMap;
use std::fmt;

/// A formula of the conditional language.
///
/// `Atom`, `Neg`, `And` and `Cond` form the core language; the remaining
/// variants are defined connectives that [`Formula::normalize`] rewrites
/// into the core. `Meta` is a schematic letter used only in [`Schema`]
/// templates and never appears in object formulas.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(u32),
    /// Schematic metavariable `?a` .. `?z` (0-based letter index).
    Meta(u8),
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    /// Material implication.
    MatImp(Box<Formula>, Box<Formula>),
    /// Material biconditional.
    MatIff(Box<Formula>, Box<Formula>),
    /// The conditional `p > q`.
    Cond(Box<Formula>, Box<Formula>),
    /// The strong conditional `p >> q`, i.e. `~(p > ~q)`.
    StrongCond(Box<Formula>, Box<Formula>),
    /// Necessity: `[]p` abbreviates `~p > p`.
    Nec(Box<Formula>),
    /// Possibility: `<>p` abbreviates `~(p > ~p)`.
    Poss(Box<Formula>),
    Bot,
    Top,
}

impl Formula {
    pub fn atom(k: u32) -> Self {
        Formula::Atom(k)
    }

    pub fn meta(k: u8) -> Self {
        Formula::Meta(k)
    }

    pub fn neg(f: Formula) -> Self {
        Formula::Neg(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::MatImp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::MatIff(Box::new(a), Box::new(b))
    }

    pub fn cond(a: Formula, b: Formula) -> Self {
        Formula::Cond(Box::new(a), Box::new(b))
    }

    pub fn strong_cond(a: Formula, b: Formula) -> Self {
        Formula::StrongCond(Box::new(a), Box::new(b))
    }

    pub fn nec(f: Formula) -> Self {
        Formula::Nec(Box::new(f))
    }

    pub fn poss(f: Formula) -> Self {
        Formula::Poss(Box::new(f))
    }

    /// Conjunction of a list, `⊤` for the empty list, left-associated.
    pub fn conj(items: &[Formula]) -> Formula {
        let mut it = items.iter().cloned();
        match it.next() {
            None => Formula::Top,
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// Disjunction of a list, `⊥` for the empty list, left-associated.
    pub fn disj(items: &[Formula]) -> Formula {
        let mut it = items.iter().cloned();
        match it.next() {
            None => Formula::Bot,
            Some(first) => it.fold(first, Formula::or),
        }
    }

    /// Rewrites every defined connective into the core language
    /// (`Atom`/`Neg`/`And`/`Cond`). Idempotent.
    pub fn normalize(&self) -> Formula {
        use Formula::*;
        match self {
            Atom(k) => Atom(*k),
            Meta(k) => Meta(*k),
            Neg(f) => Formula::neg(f.normalize()),
            And(a, b) => Formula::and(a.normalize(), b.normalize()),
            Or(a, b) => {
                // a | b  =>  ~(~a & ~b)
                let (a, b) = (a.normalize(), b.normalize());
                Formula::neg(Formula::and(Formula::neg(a), Formula::neg(b)))
            }
            MatImp(a, b) => {
                // a -> b  =>  ~(a & ~b)
                let (a, b) = (a.normalize(), b.normalize());
                Formula::neg(Formula::and(a, Formula::neg(b)))
            }
            MatIff(a, b) => {
                let (a, b) = (a.normalize(), b.normalize());
                Formula::and(
                    Formula::imp(a.clone(), b.clone()).normalize(),
                    Formula::imp(b, a).normalize(),
                )
            }
            Cond(a, b) => Formula::cond(a.normalize(), b.normalize()),
            StrongCond(a, b) => {
                // a >> b  =>  ~(a > ~b)
                let (a, b) = (a.normalize(), b.normalize());
                Formula::neg(Formula::cond(a, Formula::neg(b)))
            }
            Nec(f) => {
                // []f  =>  ~f > f
                let f = f.normalize();
                Formula::cond(Formula::neg(f.clone()), f)
            }
            Poss(f) => {
                // <>f  =>  ~(f > ~f)
                let f = f.normalize();
                Formula::neg(Formula::cond(f.clone(), Formula::neg(f)))
            }
            Bot => Formula::and(Atom(0), Formula::neg(Atom(0))),
            Top => Formula::neg(Formula::and(Atom(0), Formula::neg(Atom(0)))),
        }
    }

    /// Strips double negations recursively. Used for structural equality
    /// comparisons only; stored formulas keep their written shape.
    pub fn canonical(&self) -> Formula {
        use Formula::*;
        match self {
            Neg(inner) => match &**inner {
                Neg(f) => f.canonical(),
                _ => Formula::neg(inner.canonical()),
            },
            And(a, b) => Formula::and(a.canonical(), b.canonical()),
            Or(a, b) => Formula::or(a.canonical(), b.canonical()),
            MatImp(a, b) => Formula::imp(a.canonical(), b.canonical()),
            MatIff(a, b) => Formula::iff(a.canonical(), b.canonical()),
            Cond(a, b) => Formula::cond(a.canonical(), b.canonical()),
            StrongCond(a, b) => Formula::strong_cond(a.canonical(), b.canonical()),
            Nec(f) => Formula::nec(f.canonical()),
            Poss(f) => Formula::poss(f.canonical()),
            other => other.clone(),
        }
    }

    /// Structural equality modulo normalization and double negation.
    pub fn equivalent_shape(&self, other: &Formula) -> bool {
        self.normalize().canonical() == other.normalize().canonical()
    }

    /// Modal depth: maximal nesting of conditionals, computed on the
    /// normalized form (so `[]`/`<>` count as one conditional each).
    pub fn modal_depth(&self) -> u32 {
        fn depth(f: &Formula) -> u32 {
            use Formula::*;
            match f {
                Atom(_) | Meta(_) => 0,
                Neg(a) => depth(a),
                And(a, b) => depth(a).max(depth(b)),
                Cond(a, b) => 1 + depth(a).max(depth(b)),
                _ => unreachable!("normalized formula"),
            }
        }
        depth(&self.normalize())
    }

    /// Atom indices occurring in the formula, sorted.
    pub fn atoms(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_atoms(&self, out: &mut Vec<u32>) {
        use Formula::*;
        match self {
            Atom(k) => out.push(*k),
            Meta(_) => {}
            Neg(a) | Nec(a) | Poss(a) => a.collect_atoms(out),
            And(a, b) | Or(a, b) | MatImp(a, b) | MatIff(a, b) | Cond(a, b)
            | StrongCond(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Bot | Top => out.push(0),
        }
    }

    /// Metavariable indices occurring in the formula, sorted.
    pub fn metavars(&self) -> Vec<u8> {
        fn walk(f: &Formula, out: &mut Vec<u8>) {
            use Formula::*;
            match f {
                Meta(k) => out.push(*k),
                Atom(_) | Bot | Top => {}
                Neg(a) | Nec(a) | Poss(a) => walk(a, out),
                And(a, b) | Or(a, b) | MatImp(a, b) | MatIff(a, b) | Cond(a, b)
                | StrongCond(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    /// True if the normalized formula contains no conditional.
    pub fn is_boolean(&self) -> bool {
        fn walk(f: &Formula) -> bool {
            use Formula::*;
            match f {
                Atom(_) | Meta(_) => true,
                Neg(a) => walk(a),
                And(a, b) => walk(a) && walk(b),
                Cond(_, _) => false,
                _ => unreachable!("normalized formula"),
            }
        }
        walk(&self.normalize())
    }

    pub fn classify_fragment(&self) -> Fragment {
        let n = self.normalize();
        if n.is_boolean() {
            return Fragment::Boolean;
        }
        if is_modal(&n) {
            return Fragment::Modal;
        }
        if is_boolean_antecedent(&n) {
            return Fragment::BooleanAntecedent;
        }
        Fragment::General
    }

    /// Printed form; see [`PrintStyle`].
    pub fn print(&self, style: PrintStyle) -> String {
        print::print(self, style)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.print(PrintStyle::Ascii))
    }
}

/// Syntactic fragments of the language.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fragment {
    /// No conditional at all.
    Boolean,
    /// Every conditional has a Boolean antecedent.
    BooleanAntecedent,
    /// Conditionals occur only in necessity/possibility patterns
    /// (`~x > x` shapes up to double negation).
    Modal,
    General,
}

fn is_boolean_antecedent(f: &Formula) -> bool {
    use Formula::*;
    match f {
        Atom(_) | Meta(_) => true,
        Neg(a) => is_boolean_antecedent(a),
        And(a, b) => is_boolean_antecedent(a) && is_boolean_antecedent(b),
        Cond(a, b) => a.is_boolean() && is_boolean_antecedent(b),
        _ => unreachable!("normalized formula"),
    }
}

/// A conditional node counts as modal when its antecedent is the negation
/// of its consequent up to double negation: this covers both `[]x = ~x > x`
/// and the inner conditional of `<>x = ~(x > ~x)`.
fn is_modal(f: &Formula) -> bool {
    use Formula::*;
    match f {
        Atom(_) | Meta(_) => true,
        Neg(a) => is_modal(a),
        And(a, b) => is_modal(a) && is_modal(b),
        Cond(a, b) => {
            let a = a.canonical();
            let b = b.canonical();
            let box_shape = Formula::neg(b.clone()).canonical() == a
                || Formula::neg(a.clone()).canonical() == b;
            box_shape && is_modal(&a) && is_modal(&b)
        }
        _ => unreachable!("normalized formula"),
    }
}

/// An axiom schema: a template over metavariables with a name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    pub name: String,
    pub template: Formula,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InstantiateError {
    #[error("no binding for metavariable ?{}", (b'a' + *.0) as char)]
    MissingBinding(u8),
}

impl Schema {
    pub fn new(name: impl Into<String>, template: Formula) -> Self {
        Schema {
            name: name.into(),
            template,
        }
    }

    /// Uniform substitution of formulas for the schema's metavariables.
    pub fn instantiate(
        &self,
        binding: &BTreeMap<u8, Formula>,
    ) -> Result<Formula, InstantiateError> {
        fn subst(
            f: &Formula,
            binding: &BTreeMap<u8, Formula>,
        ) -> Result<Formula, InstantiateError> {
            use Formula::*;
            Ok(match f {
                Meta(k) => binding
                    .get(k)
                    .cloned()
                    .ok_or(InstantiateError::MissingBinding(*k))?,
                Atom(k) => Atom(*k),
                Neg(a) => Formula::neg(subst(a, binding)?),
                And(a, b) => Formula::and(subst(a, binding)?, subst(b, binding)?),
                Or(a, b) => Formula::or(subst(a, binding)?, subst(b, binding)?),
                MatImp(a, b) => Formula::imp(subst(a, binding)?, subst(b, binding)?),
                MatIff(a, b) => Formula::iff(subst(a, binding)?, subst(b, binding)?),
                Cond(a, b) => Formula::cond(subst(a, binding)?, subst(b, binding)?),
                StrongCond(a, b) => {
                    Formula::strong_cond(subst(a, binding)?, subst(b, binding)?)
                }
                Nec(a) => Formula::nec(subst(a, binding)?),
                Poss(a) => Formula::poss(subst(a, binding)?),
                Bot => Bot,
                Top => Top,
            })
        }
        subst(&self.template, binding)
    }

    /// Instantiates with distinct fresh atoms `p0, p1, ...` in metavariable order.
    pub fn instantiate_with_atoms(&self) -> Formula {
        let binding: BTreeMap<u8, Formula> = self
            .template
            .metavars()
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, Formula::atom(i as u32)))
            .collect();
        self.instantiate(&binding).expect("all metavariables bound")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: u32) -> Formula {
        Formula::atom(k)
    }

    #[test]
    fn normalize_box_and_poss() {
        let b = Formula::nec(p(1)).normalize();
        assert_eq!(b, Formula::cond(Formula::neg(p(1)), p(1)));
        let d = Formula::poss(p(0)).normalize();
        assert_eq!(d, Formula::neg(Formula::cond(p(0), Formula::neg(p(0)))));
    }

    #[test]
    fn normalize_bot_and_or() {
        assert_eq!(
            Formula::Bot.normalize(),
            Formula::and(p(0), Formula::neg(p(0)))
        );
        let or = Formula::or(p(0), p(1)).normalize();
        assert_eq!(
            or,
            Formula::neg(Formula::and(Formula::neg(p(0)), Formula::neg(p(1))))
        );
    }

    #[test]
    fn normalize_idempotent_and_depth_stable() {
        let f = Formula::iff(
            Formula::cond(p(0), Formula::cond(Formula::and(p(0), p(1)), p(2))),
            Formula::nec(p(1)),
        );
        let n = f.normalize();
        assert_eq!(n, n.normalize());
        assert_eq!(f.modal_depth(), n.modal_depth());
    }

    #[test]
    fn modal_depth_examples() {
        assert_eq!(Formula::and(p(0), Formula::neg(p(1))).modal_depth(), 0);
        let f = Formula::cond(p(0), Formula::cond(Formula::and(p(0), p(1)), p(2)));
        assert_eq!(f.modal_depth(), 2);
        assert_eq!(Formula::nec(p(0)).modal_depth(), 1);
    }

    #[test]
    fn classify_examples() {
        let f = Formula::cond(Formula::or(p(0), p(1)), p(2));
        assert_eq!(f.classify_fragment(), Fragment::BooleanAntecedent);
        let g = Formula::cond(Formula::cond(p(0), p(1)), p(0));
        assert_eq!(g.classify_fragment(), Fragment::General);
        let h = Formula::nec(Formula::imp(p(0), Formula::nec(p(0))));
        assert_eq!(h.classify_fragment(), Fragment::Modal);
        assert_eq!(
            Formula::and(p(0), p(1)).classify_fragment(),
            Fragment::Boolean
        );
    }

    #[test]
    fn boolean_implies_depth_zero() {
        let f = Formula::or(Formula::neg(p(0)), p(1));
        assert_eq!(f.classify_fragment(), Fragment::Boolean);
        assert_eq!(f.modal_depth(), 0);
    }

    #[test]
    fn instantiate_flattening() {
        let flat = Schema::new(
            "Flattening",
            Formula::iff(
                Formula::cond(
                    Formula::meta(0),
                    Formula::cond(
                        Formula::and(Formula::meta(0), Formula::meta(1)),
                        Formula::meta(2),
                    ),
                ),
                Formula::cond(
                    Formula::and(Formula::meta(0), Formula::meta(1)),
                    Formula::meta(2),
                ),
            ),
        );
        let mut b = BTreeMap::new();
        b.insert(0u8, p(0));
        b.insert(1u8, p(1));
        b.insert(2u8, p(2));
        let inst = flat.instantiate(&b).unwrap();
        let expect = Formula::iff(
            Formula::cond(p(0), Formula::cond(Formula::and(p(0), p(1)), p(2))),
            Formula::cond(Formula::and(p(0), p(1)), p(2)),
        );
        assert_eq!(inst, expect);

        let mut missing = BTreeMap::new();
        missing.insert(0u8, p(0));
        assert!(flat.instantiate(&missing).is_err());
    }

    #[test]
    fn instantiate_commutes_with_normalize() {
        let s = Schema::new(
            "t",
            Formula::iff(Formula::nec(Formula::meta(0)), Formula::meta(1)),
        );
        let mut b = BTreeMap::new();
        b.insert(0u8, Formula::or(p(0), p(1)));
        b.insert(1u8, Formula::poss(p(2)));
        let lhs = s.instantiate(&b).unwrap().normalize().canonical();
        let nb: BTreeMap<u8, Formula> =
            b.iter().map(|(k, v)| (*k, v.normalize())).collect();
        let rhs = s.instantiate(&nb).unwrap().normalize().canonical();
        assert_eq!(lhs, rhs);
    }
}
