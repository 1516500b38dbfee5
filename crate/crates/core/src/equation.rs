//! Right-hand sides, solution checking, classification and root reports.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::abelian::{solution_index, IndexValue};
use crate::error::{Error, Result};
use crate::word::{basic_commutator, Word};

/// Target genus plus ordered terms `(w_i, c_i)` describing
/// `(B_g^{w_1})^{c_1} ... (B_g^{w_l})^{c_l}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSpec {
    pub g: u32,
    pub terms: Vec<(Word, i64)>,
}

impl EquationSpec {
    pub fn new(g: u32, terms: Vec<(Word, i64)>) -> Result<Self> {
        if g == 0 {
            return Err(Error::ZeroRank);
        }
        if terms.is_empty() {
            return Err(Error::InvalidParameter("at least one term required".into()));
        }
        for (w, c) in &terms {
            if w.rank() != g {
                return Err(Error::RankMismatch {
                    left: g,
                    right: w.rank(),
                });
            }
            if *c == 0 {
                return Err(Error::InvalidParameter("exponents must be nonzero".into()));
            }
        }
        Ok(EquationSpec { g, terms })
    }

    /// All exponents equal to `c`, conjugators as given.
    pub fn uniform(g: u32, conjugators: &[Word], c: i64) -> Result<Self> {
        EquationSpec::new(g, conjugators.iter().map(|w| (w.clone(), c)).collect())
    }

    /// `B^c (B^y)^c ... (B^{y^{l-1}})^c` in rank 1.
    pub fn torus(l: u32, c: i64) -> Result<Self> {
        EquationSpec::uniform(1, &torus_conjugators(1, l), c)
    }

    pub fn l(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(_, c)| c).sum()
    }
}

/// `1, y_1, ..., y_1^{l-1}` in the given rank.
pub fn torus_conjugators(rank: u32, l: u32) -> Vec<Word> {
    (0..l as i64).map(|i| Word::y(rank, 1).pow(i)).collect()
}

pub fn build_rhs(spec: &EquationSpec) -> Word {
    let b = basic_commutator(spec.g).expect("spec rank is positive");
    spec.terms.iter().fold(Word::identity(spec.g), |acc, (w, c)| {
        acc.mul(&b.conjugate(w).pow(*c))
    })
}

/// Smallest h allowed by the necessary bound
/// `(sum |c_i|)(2g-1) <= 2h - 2 + l`. Never below 1.
pub fn min_h_bound(spec: &EquationSpec) -> Result<u64> {
    let pos = spec.terms.iter().all(|(_, c)| *c > 0);
    let neg = spec.terms.iter().all(|(_, c)| *c < 0);
    if !pos && !neg {
        return Err(Error::MixedSigns);
    }
    let total: i128 = spec.terms.iter().map(|(_, c)| c.unsigned_abs() as i128).sum();
    let num = total * (2 * spec.g as i128 - 1) + 2 - spec.l() as i128;
    Ok(ceil_div(num, 2).max(1) as u64)
}

/// Smallest integer h with `h >= l(c(2g-1) - 1)/2 + 1`.
pub fn min_h_family(g: u32, l: u32, c: u32) -> u64 {
    let (g, l, c) = (g as i128, l as i128, c as i128);
    let num = l * (c * (2 * g - 1) - 1) + 2;
    ceil_div(num, 2) as u64
}

pub(crate) fn ceil_div(p: i128, q: i128) -> i128 {
    p.div_euclid(q) + i128::from(p.rem_euclid(q) != 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    PowerLift,
    TorusMinIndex,
    TorusPrimitive,
    Asymmetric,
    External,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::PowerLift => "power-lift",
            Family::TorusMinIndex => "torus-min-index",
            Family::TorusPrimitive => "torus-primitive",
            Family::Asymmetric => "asymmetric",
            Family::External => "external",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "power-lift" => Family::PowerLift,
            "torus-min-index" | "torus-min" => Family::TorusMinIndex,
            "torus-primitive" => Family::TorusPrimitive,
            "asymmetric" => Family::Asymmetric,
            "external" => Family::External,
            _ => return Err(Error::Document(format!("unknown family {s:?}"))),
        })
    }
}

/// Ordered pairs `(u_i, v_i)` with provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub g: u32,
    pub pairs: Vec<(Word, Word)>,
    pub family: Family,
    pub params: Map<String, Value>,
}

impl Solution {
    pub fn new(g: u32, pairs: Vec<(Word, Word)>, family: Family) -> Self {
        Solution {
            g,
            pairs,
            family,
            params: Map::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn h(&self) -> usize {
        self.pairs.len()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.pairs.iter().flat_map(|(u, v)| [u, v])
    }

    pub fn product(&self) -> Word {
        self.pairs.iter().fold(Word::identity(self.g), |acc, (u, v)| {
            acc.mul(&u.commutator(v))
        })
    }

    /// Every word conjugated by `by`.
    pub fn conjugated(&self, by: &Word) -> Vec<(Word, Word)> {
        self.pairs
            .iter()
            .map(|(u, v)| (u.conjugate(by), v.conjugate(by)))
            .collect()
    }
}

pub fn verify(sol: &Solution, spec: &EquationSpec) -> Result<bool> {
    if sol.g != spec.g {
        return Err(Error::RankMismatch {
            left: sol.g,
            right: spec.g,
        });
    }
    if let Some(w) = sol.words().find(|w| w.rank() != sol.g) {
        return Err(Error::RankMismatch {
            left: sol.g,
            right: w.rank(),
        });
    }
    Ok(sol.product() == build_rhs(spec))
}

pub fn classify(sol: &Solution) -> IndexValue {
    solution_index(sol)
}

/// Evaluation of the root-count formulas for the map given by a solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootReport {
    pub degree: i64,
    pub index: IndexValue,
    #[serde(rename = "NR")]
    pub nr: u64,
    /// `None` when the degree is zero.
    #[serde(rename = "MR", serialize_with = "or_not_computed")]
    pub mr: Option<i64>,
    #[serde(serialize_with = "or_not_computed")]
    pub wecken: Option<bool>,
    pub h: u64,
    /// Set for index-1 solutions of uniform exponent `c` with `l(c-1)` odd,
    /// where the closed-form value `MR = l` differs from the general formula.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mr_discrepancy: Option<MrDiscrepancy>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MrDiscrepancy {
    pub formula: i64,
    pub closed_form: i64,
}

fn or_not_computed<T: Serialize, S: serde::Serializer>(
    v: &Option<T>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => v.serialize(s),
        None => s.serialize_str("not computed"),
    }
}

pub fn root_report(sol: &Solution, spec: &EquationSpec) -> Result<RootReport> {
    if !verify(sol, spec)? {
        return Err(Error::Unverified("solution does not satisfy the equation".into()));
    }
    let degree = spec.degree();
    let index = classify(sol);
    let h = sol.h() as u64;
    if degree == 0 {
        return Ok(RootReport {
            degree,
            index,
            nr: 0,
            mr: None,
            wecken: None,
            h,
            mr_discrepancy: None,
        });
    }
    // infinite index maps to zero root classes
    let nr = index.as_u64().unwrap_or(0);
    let euler_bound = (2 - 2 * h as i64) + (2 * spec.g as i64 - 1) * degree.abs();
    let mr = (nr as i64).max(euler_bound);

    let mut mr_discrepancy = None;
    let c = spec.terms[0].1;
    let l = spec.l() as i64;
    if index.is_one() && spec.terms.iter().all(|(_, ci)| *ci == c) && (l * (c - 1)) % 2 != 0 {
        if mr != l {
            mr_discrepancy = Some(MrDiscrepancy {
                formula: mr,
                closed_form: l,
            });
        }
    }
    Ok(RootReport {
        degree,
        index,
        nr,
        mr: Some(mr),
        wecken: Some(nr as i64 == mr),
        h,
        mr_discrepancy,
    })
}
