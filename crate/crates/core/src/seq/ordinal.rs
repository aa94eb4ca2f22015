//! Ordinals below ω^ω in Cantor normal form: a sum Σ ω^e·c with strictly
//! decreasing exponents and positive coefficients.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Canonical form is unique: terms sorted by strictly decreasing exponent,
/// all coefficients nonzero. The empty sum is 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default, PartialOrd, Ord)]
pub struct OrdinalCNF {
    /// (exponent, coefficient) pairs, exponents strictly decreasing.
    pub terms: Vec<(u32, u64)>,
}

impl OrdinalCNF {
    pub fn zero() -> Self {
        OrdinalCNF { terms: Vec::new() }
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            OrdinalCNF {
                terms: vec![(0, n)],
            }
        }
    }

    pub fn omega() -> Self {
        OrdinalCNF {
            terms: vec![(1, 1)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.len() <= 1 && self.terms.first().map(|t| t.0 == 0).unwrap_or(true)
    }

    pub fn as_finite(&self) -> Option<u64> {
        if self.is_zero() {
            Some(0)
        } else if self.is_finite() {
            Some(self.terms[0].1)
        } else {
            None
        }
    }

    /// A successor ordinal has a last `+ n` term.
    pub fn is_successor(&self) -> bool {
        self.terms.last().map(|t| t.0 == 0).unwrap_or(false)
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    /// Ordinal addition (left argument may be absorbed).
    pub fn add(&self, rhs: &OrdinalCNF) -> OrdinalCNF {
        let Some(&(lead, lead_c)) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(u32, u64)> = self
            .terms
            .iter()
            .copied()
            .take_while(|&(e, _)| e > lead)
            .collect();
        // A matching exponent merges coefficients.
        if let Some(&(e, c)) = self.terms.iter().find(|&&(e, _)| e == lead) {
            debug_assert_eq!(e, lead);
            terms.push((lead, c + lead_c));
        } else {
            terms.push((lead, lead_c));
        }
        terms.extend(rhs.terms.iter().skip(1).copied());
        OrdinalCNF { terms }
    }

    pub fn succ(&self) -> OrdinalCNF {
        self.add(&OrdinalCNF::finite(1))
    }

    /// Right multiplication by ω: Σ ω^e·c ↦ ω^(e_max + 1).
    pub fn mul_omega(&self) -> OrdinalCNF {
        match self.terms.first() {
            None => OrdinalCNF::zero(),
            Some(&(e, _)) => OrdinalCNF {
                terms: vec![(e + 1, 1)],
            },
        }
    }

    /// Left subtraction: the unique γ with `self + γ = rhs`, defined when
    /// `self <= rhs`.
    pub fn left_subtract(&self, rhs: &OrdinalCNF) -> Option<OrdinalCNF> {
        match self.cmp(rhs) {
            Ordering::Greater => None,
            Ordering::Equal => Some(OrdinalCNF::zero()),
            Ordering::Less => {
                for i in 0..rhs.terms.len() {
                    match self.terms.get(i) {
                        None => {
                            return Some(OrdinalCNF {
                                terms: rhs.terms[i..].to_vec(),
                            })
                        }
                        Some(&(ea, ca)) => {
                            let (eb, cb) = rhs.terms[i];
                            if ea == eb && ca == cb {
                                continue;
                            }
                            if ea < eb {
                                return Some(OrdinalCNF {
                                    terms: rhs.terms[i..].to_vec(),
                                });
                            }
                            // ea == eb, ca < cb (self < rhs rules the rest out)
                            let mut terms = vec![(eb, cb - ca)];
                            terms.extend(rhs.terms[i + 1..].iter().copied());
                            return Some(OrdinalCNF { terms });
                        }
                    }
                }
                // self is a proper prefix handled above; unreachable
                Some(OrdinalCNF::zero())
            }
        }
    }
}

impl fmt::Display for OrdinalCNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(e, c)| match (e, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "w".to_string(),
                (1, c) => format!("w*{c}"),
                (e, 1) => format!("w^{e}"),
                (e, c) => format!("w^{e}*{c}"),
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}
