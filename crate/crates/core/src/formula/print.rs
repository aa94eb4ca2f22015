//! Pretty-printer, inverse of the parser: `parse(print(f)) == f`.

use super::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrintStyle {
    Ascii,
    Unicode,
}

// Precedence levels, loosest first; mirrors the parser.
const LVL_IMP: u8 = 0;
const LVL_COND: u8 = 1;
const LVL_OR: u8 = 2;
const LVL_AND: u8 = 3;
const LVL_UNARY: u8 = 4;

fn level(f: &Formula) -> u8 {
    use Formula::*;
    match f {
        MatImp(_, _) | MatIff(_, _) => LVL_IMP,
        Cond(_, _) | StrongCond(_, _) => LVL_COND,
        Or(_, _) => LVL_OR,
        And(_, _) => LVL_AND,
        _ => LVL_UNARY,
    }
}

pub fn print(f: &Formula, style: PrintStyle) -> String {
    let mut out = String::new();
    write_at(f, style, &mut out);
    out
}

fn write_at(f: &Formula, style: PrintStyle, out: &mut String) {
    use Formula::*;
    let uni = style == PrintStyle::Unicode;
    match f {
        Atom(k) => out.push_str(&format!("p{k}")),
        Meta(k) => {
            out.push('?');
            out.push((b'a' + k) as char);
        }
        Bot => out.push_str(if uni { "⊥" } else { "#f" }),
        Top => out.push_str(if uni { "⊤" } else { "#t" }),
        Neg(a) => {
            out.push_str(if uni { "¬" } else { "~" });
            write_child(a, LVL_UNARY, false, style, out);
        }
        Nec(a) => {
            out.push_str(if uni { "□" } else { "[]" });
            write_child(a, LVL_UNARY, false, style, out);
        }
        Poss(a) => {
            out.push_str(if uni { "◇" } else { "<>" });
            write_child(a, LVL_UNARY, false, style, out);
        }
        And(a, b) => {
            write_child(a, LVL_AND, true, style, out);
            out.push_str(if uni { " ∧ " } else { " & " });
            write_child(b, LVL_AND, false, style, out);
        }
        Or(a, b) => {
            write_child(a, LVL_OR, true, style, out);
            out.push_str(if uni { " ∨ " } else { " | " });
            write_child(b, LVL_OR, false, style, out);
        }
        Cond(a, b) => {
            write_child(a, LVL_COND, false, style, out);
            out.push_str(if uni { " > " } else { " > " });
            write_child(b, LVL_COND, false, style, out);
        }
        StrongCond(a, b) => {
            write_child(a, LVL_COND, false, style, out);
            out.push_str(if uni { " ≫ " } else { " >> " });
            write_child(b, LVL_COND, false, style, out);
        }
        MatImp(a, b) => {
            write_child(a, LVL_IMP, false, style, out);
            out.push_str(if uni { " → " } else { " -> " });
            write_child(b, LVL_IMP, false, style, out);
        }
        MatIff(a, b) => {
            write_child(a, LVL_IMP, false, style, out);
            out.push_str(if uni { " ↔ " } else { " <-> " });
            write_child(b, LVL_IMP, false, style, out);
        }
    }
}

/// Writes a child of an operator at `parent_level`. Left operands of the
/// associative `&`/`|` may sit at the same level; everything else at the
/// parent's level or looser needs parentheses (the conditional and
/// implication levels are non-associative).
fn write_child(
    f: &Formula,
    parent_level: u8,
    assoc_left: bool,
    style: PrintStyle,
    out: &mut String,
) {
    let l = level(f);
    let needs_parens = if assoc_left {
        l < parent_level
    } else {
        l <= parent_level && l != LVL_UNARY
    };
    if needs_parens {
        out.push('(');
        write_at(f, style, out);
        out.push(')');
    } else {
        write_at(f, style, out);
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse, Formula};
    use super::PrintStyle;

    fn p(k: u32) -> Formula {
        Formula::atom(k)
    }

    #[test]
    fn print_examples() {
        let f = Formula::cond(p(0), p(0));
        assert_eq!(f.print(PrintStyle::Ascii), "p0 > p0");
        let b = Formula::nec(p(1));
        assert_eq!(b.print(PrintStyle::Unicode), "□p1");
        assert_eq!(b.normalize().print(PrintStyle::Ascii), "~p1 > p1");
    }

    #[test]
    fn roundtrip_nested() {
        let cases = [
            Formula::cond(p(0), Formula::cond(Formula::and(p(0), p(1)), p(2))),
            Formula::iff(
                Formula::cond(p(0), Formula::cond(Formula::and(p(0), p(1)), p(2))),
                Formula::cond(Formula::and(p(0), p(1)), p(2)),
            ),
            Formula::and(p(0), Formula::and(p(1), p(2))),
            Formula::or(Formula::and(p(0), p(1)), Formula::neg(p(2))),
            Formula::strong_cond(Formula::neg(Formula::Bot), p(0)),
            Formula::nec(Formula::imp(p(0), Formula::nec(p(0)))),
        ];
        for f in cases {
            for style in [PrintStyle::Ascii, PrintStyle::Unicode] {
                let printed = f.print(style);
                assert_eq!(parse(&printed).unwrap(), f, "roundtrip of {printed}");
            }
        }
    }
}
