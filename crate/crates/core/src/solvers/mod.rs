//! Constructive solution generators.

mod asymmetric;
mod power_lift;
mod torus;

pub use asymmetric::{asymmetric_factors, p2_prefix, p3_prefix, solve_asymmetric};
pub use power_lift::{
    express_commutator_power, solve_power_lift, solve_power_lift_traced, BaseSolution,
    RecursionTrace, Source, TraceEntry,
};
pub use torus::{
    l2_c_step, l2_shifted_family, lemma_l2_solution, solve_torus_min_index, solve_torus_primitive,
};

use std::collections::HashMap;

use crate::equation::{EquationSpec, Solution};
use crate::error::{Error, Result};
use crate::word::{Generator, Word};

pub(crate) type Pairs = Vec<(Word, Word)>;

pub(crate) fn conj_pairs(pairs: &[(Word, Word)], by: &Word) -> Pairs {
    pairs
        .iter()
        .map(|(u, v)| (u.conjugate(by), v.conjugate(by)))
        .collect()
}

pub(crate) fn product_of(rank: u32, pairs: &[(Word, Word)]) -> Word {
    pairs
        .iter()
        .fold(Word::identity(rank), |acc, (u, v)| acc.mul(&u.commutator(v)))
}

/// Generator swap `x_i -> y_{g+1-i}`, `y_i -> x_{g+1-i}`. It sends `B_g` to
/// its inverse and is its own inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    g: u32,
    images: HashMap<Generator, Word>,
}

impl Relabeling {
    pub fn new(g: u32) -> Self {
        let images = (1..=g)
            .flat_map(|i| {
                let j = g + 1 - i;
                [
                    (Generator::x(i), Word::y(g, j)),
                    (Generator::y(i), Word::x(g, j)),
                ]
            })
            .collect();
        Relabeling { g, images }
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.rank() != self.g {
            return Err(Error::RankMismatch {
                left: self.g,
                right: w.rank(),
            });
        }
        w.apply_homomorphism(&self.images)
    }

    pub fn apply_solution(&self, sol: &Solution) -> Result<Solution> {
        let pairs = sol
            .pairs
            .iter()
            .map(|(u, v)| Ok((self.apply(u)?, self.apply(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Solution {
            g: sol.g,
            pairs,
            family: sol.family,
            params: sol.params.clone(),
        })
    }
}

/// Turns a spec with one common negative exponent into the positive one
/// over relabeled generators. Solving the result and relabeling the
/// solution back solves the original.
pub fn normalize_negative_c(spec: &EquationSpec) -> Result<(EquationSpec, Relabeling)> {
    let c = spec.terms[0].1;
    if c >= 0 || spec.terms.iter().any(|(_, ci)| *ci != c) {
        return Err(Error::NonuniformExponents);
    }
    let relabel = Relabeling::new(spec.g);
    let terms = spec
        .terms
        .iter()
        .map(|(w, ci)| Ok((relabel.apply(w)?, -ci)))
        .collect::<Result<Vec<_>>>()?;
    Ok((EquationSpec::new(spec.g, terms)?, relabel))
}

pub(crate) fn check_solution(sol: &Solution, spec: &EquationSpec) -> Result<()> {
    if crate::equation::verify(sol, spec)? {
        Ok(())
    } else {
        Err(Error::Unverified(format!(
            "{} construction does not reproduce the right-hand side",
            sol.family
        )))
    }
}
