//! Symbolic ordinal sequences over protoworlds (lengths below ω^ω),
//! eventually-cyclic ω-sequences as lassos, their tail structure, and the
//! order models they induce.

mod model;
mod ordinal;
mod restrict;
mod tails;

pub use model::{
    induced_order_model, minimal_representation, omega_padding, ProtoworldTable,
    SequenceModel,
};
pub use ordinal::OrdinalCNF;
pub use restrict::{element_at, relevant_positions, restrict, RestrictError};
pub use tails::{expr_equal, tails};

use serde::{Deserialize, Serialize};
use std::fmt;

/// A symbolic ordinal sequence: a protoworld, a concatenation, or an
/// ω-fold repetition of a non-empty body.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeqExpr {
    Elem(String),
    Cat(Vec<SeqExpr>),
    Omega(Box<SeqExpr>),
}

impl SeqExpr {
    pub fn elem(w: impl Into<String>) -> Self {
        SeqExpr::Elem(w.into())
    }

    pub fn word(ws: &[&str]) -> Self {
        SeqExpr::Cat(ws.iter().map(|w| SeqExpr::elem(*w)).collect()).normalize()
    }

    pub fn omega(body: SeqExpr) -> Self {
        SeqExpr::Omega(Box::new(body))
    }

    pub fn cat(items: Vec<SeqExpr>) -> Self {
        SeqExpr::Cat(items).normalize()
    }

    pub fn length(&self) -> OrdinalCNF {
        match self {
            SeqExpr::Elem(_) => OrdinalCNF::finite(1),
            SeqExpr::Cat(items) => items
                .iter()
                .fold(OrdinalCNF::zero(), |acc, it| acc.add(&it.length())),
            SeqExpr::Omega(b) => b.length().mul_omega(),
        }
    }

    /// First protoworld of the sequence.
    pub fn head(&self) -> &str {
        match self {
            SeqExpr::Elem(w) => w,
            SeqExpr::Cat(items) => items.first().expect("non-empty").head(),
            SeqExpr::Omega(b) => b.head(),
        }
    }

    /// Flat unit list of a normalized expression: `Elem` and `Omega` items.
    fn units(&self) -> Vec<SeqExpr> {
        match self {
            SeqExpr::Cat(items) => items.clone(),
            other => vec![other.clone()],
        }
    }

    fn from_units(mut units: Vec<SeqExpr>) -> SeqExpr {
        match units.len() {
            0 => SeqExpr::Cat(Vec::new()),
            1 => units.pop().unwrap(),
            _ => SeqExpr::Cat(units),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SeqExpr::Cat(items) if items.is_empty())
    }

    /// Rewrites to normal form: concatenations flattened, empty parts
    /// dropped, ω-bodies taken primitive, and the absorption rules
    /// `x·x^ω → x^ω` and `x·(y·x)^ω → (x·y)^ω` applied to fixpoint.
    pub fn normalize(&self) -> SeqExpr {
        let mut cur = self.flatten();
        loop {
            let next = rewrite_once(&cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    fn flatten(&self) -> SeqExpr {
        match self {
            SeqExpr::Elem(w) => SeqExpr::Elem(w.clone()),
            SeqExpr::Omega(b) => SeqExpr::Omega(Box::new(b.flatten())),
            SeqExpr::Cat(items) => {
                let mut units = Vec::new();
                for it in items {
                    match it.flatten() {
                        SeqExpr::Cat(sub) => units.extend(sub),
                        other => units.push(other),
                    }
                }
                SeqExpr::from_units(units)
            }
        }
    }

    /// Rendered form, also used as world identifiers of induced models:
    /// elements joined by `·`, ω-repetition as `(...)^w`.
    pub fn render(&self) -> String {
        fn unit(u: &SeqExpr, out: &mut String) {
            match u {
                SeqExpr::Elem(w) => out.push_str(w),
                SeqExpr::Omega(b) => {
                    out.push('(');
                    out.push_str(&b.render());
                    out.push_str(")^w");
                }
                SeqExpr::Cat(_) => unreachable!("flattened"),
            }
        }
        let mut out = String::new();
        for (i, u) in self.flatten().units().iter().enumerate() {
            if i > 0 {
                out.push('·');
            }
            unit(u, &mut out);
        }
        out
    }
}

fn rewrite_once(e: &SeqExpr) -> SeqExpr {
    // Normalize inside ω-bodies first, then take primitive roots, then
    // absorb prefixes into a following ω-repetition.
    let units: Vec<SeqExpr> = e
        .units()
        .into_iter()
        .filter(|u| !u.is_empty())
        .map(|u| match u {
            SeqExpr::Omega(b) => SeqExpr::Omega(Box::new(primitive_root(&b.normalize()))),
            other => other,
        })
        .collect();

    for k in 0..units.len() {
        if let SeqExpr::Omega(body) = &units[k] {
            let body_units = body.units();
            let m = body_units.len();
            // x·x^ω → x^ω : the chunk right before the ω equals the body.
            if k >= m && units[k - m..k] == body_units[..] {
                let mut next = units[..k - m].to_vec();
                next.extend(units[k..].iter().cloned());
                return SeqExpr::from_units(next);
            }
            // x·(y·x)^ω → (x·y)^ω : the chunk equals a proper suffix of the body.
            for split in 1..m {
                let x = &body_units[split..];
                let xl = x.len();
                if k >= xl && &units[k - xl..k] == x {
                    let mut rotated = x.to_vec();
                    rotated.extend(body_units[..split].iter().cloned());
                    let mut next = units[..k - xl].to_vec();
                    next.push(SeqExpr::Omega(Box::new(SeqExpr::from_units(rotated))));
                    next.extend(units[k + 1..].iter().cloned());
                    return SeqExpr::from_units(next);
                }
            }
        }
    }
    SeqExpr::from_units(units)
}

/// Shortest word whose repetition gives the body.
fn primitive_root(body: &SeqExpr) -> SeqExpr {
    let units = body.units();
    let n = units.len();
    for d in 1..n {
        if n % d == 0 && units.chunks(d).all(|c| c == &units[..d]) {
            return SeqExpr::from_units(units[..d].to_vec());
        }
    }
    body.clone()
}

impl fmt::Display for SeqExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

// JSON: Elem as a bare string, Cat as an array, Omega as {"rep":[...]}.
impl Serialize for SeqExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            SeqExpr::Elem(w) => s.serialize_str(w),
            SeqExpr::Cat(items) => items.serialize(s),
            SeqExpr::Omega(b) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("rep", &b.units())?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for SeqExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        fn conv(v: &serde_json::Value) -> Result<SeqExpr, String> {
            match v {
                serde_json::Value::String(w) => Ok(SeqExpr::Elem(w.clone())),
                serde_json::Value::Array(items) => {
                    let parts: Result<Vec<_>, _> = items.iter().map(conv).collect();
                    Ok(SeqExpr::Cat(parts?))
                }
                serde_json::Value::Object(map) => {
                    let rep = map
                        .get("rep")
                        .ok_or_else(|| "expected {\"rep\": [...]}".to_string())?;
                    let body = conv(rep)?;
                    if body.is_empty() {
                        return Err("empty ω-repetition body".to_string());
                    }
                    Ok(SeqExpr::Omega(Box::new(body)))
                }
                _ => Err("expected string, array, or {\"rep\": [...]}".to_string()),
            }
        }
        conv(&v).map(|e| e.normalize()).map_err(serde::de::Error::custom)
    }
}

/// Finite prefix plus repeating cycle: an eventually cyclic ω-sequence,
/// or a finite list when the cycle is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lasso {
    pub prefix: Vec<String>,
    pub cycle: Vec<String>,
}

impl Lasso {
    /// Normalizes: primitive cycle, and prefix elements matching the cycle
    /// tail rotated into the cycle.
    pub fn new(prefix: Vec<String>, cycle: Vec<String>) -> Self {
        assert!(
            !prefix.is_empty() || !cycle.is_empty(),
            "lasso must be non-empty"
        );
        let mut l = Lasso { prefix, cycle };
        if l.cycle.is_empty() {
            return l;
        }
        // primitive root of the cycle
        let n = l.cycle.len();
        for d in 1..n {
            if n % d == 0 && l.cycle.chunks(d).all(|c| c == &l.cycle[..d]) {
                l.cycle.truncate(d);
                break;
            }
        }
        // absorb prefix tail into the cycle: u·(v·u)^ω = (u·v)^ω
        while let (Some(p), Some(c)) = (l.prefix.last(), l.cycle.last()) {
            if p == c {
                l.prefix.pop();
                let last = l.cycle.pop().unwrap();
                l.cycle.insert(0, last);
            } else {
                break;
            }
        }
        l
    }

    pub fn is_finite(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn to_seq_expr(&self) -> SeqExpr {
        let mut items: Vec<SeqExpr> =
            self.prefix.iter().map(SeqExpr::elem).collect();
        if !self.cycle.is_empty() {
            let body: Vec<SeqExpr> = self.cycle.iter().map(SeqExpr::elem).collect();
            items.push(SeqExpr::Omega(Box::new(SeqExpr::from_units(body))));
        }
        SeqExpr::from_units(items).normalize()
    }

    /// Recovers a lasso from a normalized expression of length <= ω.
    pub fn from_seq_expr(e: &SeqExpr) -> Option<Lasso> {
        let units = e.normalize().units();
        let mut prefix = Vec::new();
        let mut cycle = Vec::new();
        for (i, u) in units.iter().enumerate() {
            match u {
                SeqExpr::Elem(w) => prefix.push(w.clone()),
                SeqExpr::Omega(b) if i + 1 == units.len() => {
                    for bu in b.units() {
                        match bu {
                            SeqExpr::Elem(w) => cycle.push(w.clone()),
                            _ => return None,
                        }
                    }
                }
                _ => return None,
            }
        }
        if prefix.is_empty() && cycle.is_empty() {
            return None;
        }
        Some(Lasso::new(prefix, cycle))
    }
}
