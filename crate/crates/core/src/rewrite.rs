//! Commutator extraction: `a x1 b x2 c = [a x1 a^-1, a b a^-1] * (a b x1 x2 c)`,
//! and an engine that applies it repeatedly to a product of block words.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TechSplit {
    pub pair: (Word, Word),
    pub remainder: Word,
}

/// Splits `a xi1 b xi2 c` into one commutator and a remainder.
pub fn tech_split(a: &Word, xi1: &Word, b: &Word, xi2: &Word, c: &Word) -> Result<TechSplit> {
    let rank = a.rank();
    for w in [xi1, b, xi2, c] {
        if w.rank() != rank {
            return Err(Error::RankMismatch {
                left: rank,
                right: w.rank(),
            });
        }
    }
    let p = xi1.conjugate(a);
    let q = b.conjugate(a);
    let remainder = Word::product(rank, [a, b, xi1, xi2, c]);
    Ok(TechSplit {
        pair: (p, q),
        remainder,
    })
}

/// One step of a peeling schedule. Ranges index the current factor list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeelStep {
    /// Factors in `xi1` and `xi2` play the two distinguished pieces;
    /// everything before `xi1` is `a`, between them `b`, after `xi2` is `c`.
    Split { xi1: Range<usize>, xi2: Range<usize> },
    /// The remaining product must equal `by [p, q] by^-1`; emits that
    /// conjugated pair and leaves the identity.
    Close { p: Word, q: Word, by: Word },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Peeled {
    pub commutators: Vec<(Word, Word)>,
    /// Factors left after the last step, with adjacent inverse factors cancelled.
    pub factors: Vec<Word>,
    pub remainder: Word,
}

/// Stateful form of [`peel_pairs`], so a caller can locate each step's
/// ranges against the current factor list.
#[derive(Debug, Clone)]
pub struct Peeler {
    rank: u32,
    prefix: Word,
    factors: Vec<Word>,
    suffix: Word,
    commutators: Vec<(Word, Word)>,
}

fn cancel_factors(factors: Vec<Word>) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::with_capacity(factors.len());
    for f in factors {
        if f.is_identity() {
            continue;
        }
        if out.last().is_some_and(|t| t.inverse() == f) {
            out.pop();
        } else {
            out.push(f);
        }
    }
    out
}

impl Peeler {
    pub fn new(prefix: &Word, blocks: &[Word], suffix: &Word) -> Result<Self> {
        let rank = prefix.rank();
        for w in blocks.iter().chain([suffix]) {
            if w.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: w.rank(),
                });
            }
        }
        Ok(Peeler {
            rank,
            prefix: prefix.clone(),
            factors: cancel_factors(blocks.to_vec()),
            suffix: suffix.clone(),
            commutators: Vec::new(),
        })
    }

    pub fn factors(&self) -> &[Word] {
        &self.factors
    }

    /// First position `>= from` where `pattern` occurs as a run of factors.
    pub fn locate(&self, pattern: &[Word], from: usize) -> Option<usize> {
        if pattern.is_empty() {
            return Some(from.min(self.factors.len()));
        }
        (from..=self.factors.len().saturating_sub(pattern.len()))
            .find(|&i| self.factors[i..].starts_with(pattern))
    }

    fn product(&self, range: Range<usize>) -> Word {
        Word::product(self.rank, &self.factors[range])
    }

    pub fn remainder(&self) -> Word {
        self.prefix
            .mul(&self.product(0..self.factors.len()))
            .mul(&self.suffix)
    }

    pub fn step(&mut self, step: &PeelStep) -> Result<()> {
        match step {
            PeelStep::Split { xi1, xi2 } => {
                let n = self.factors.len();
                if !(xi1.start <= xi1.end && xi1.end <= xi2.start && xi2.start <= xi2.end && xi2.end <= n)
                {
                    return Err(Error::MalformedSchedule(format!(
                        "ranges {xi1:?}, {xi2:?} do not fit {n} factors in order"
                    )));
                }
                let a = self.prefix.mul(&self.product(0..xi1.start));
                let x1 = self.product(xi1.clone());
                let b = self.product(xi1.end..xi2.start);
                self.commutators.push((x1.conjugate(&a), b.conjugate(&a)));

                let f = &self.factors;
                let next: Vec<Word> = f[..xi1.start]
                    .iter()
                    .chain(&f[xi1.end..xi2.start])
                    .chain(&f[xi1.clone()])
                    .chain(&f[xi2.clone()])
                    .chain(&f[xi2.end..])
                    .cloned()
                    .collect();
                self.factors = cancel_factors(next);
            }
            PeelStep::Close { p, q, by } => {
                let target = p.commutator(q).conjugate(by);
                if self.remainder() != target {
                    return Err(Error::MalformedSchedule(
                        "remainder is not the stated closing commutator".into(),
                    ));
                }
                self.commutators.push((p.conjugate(by), q.conjugate(by)));
                self.prefix = Word::identity(self.rank);
                self.factors.clear();
                self.suffix = Word::identity(self.rank);
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Peeled {
        let remainder = self.remainder();
        Peeled {
            commutators: self.commutators,
            factors: self.factors,
            remainder,
        }
    }
}

/// Applies a schedule to `prefix * blocks[0] * ... * blocks[n-1] * suffix`.
/// The emitted commutators times the remainder reduce to the original product.
pub fn peel_pairs(prefix: &Word, blocks: &[Word], suffix: &Word, schedule: &[PeelStep]) -> Result<Peeled> {
    let mut peeler = Peeler::new(prefix, blocks, suffix)?;
    for s in schedule {
        peeler.step(s)?;
    }
    Ok(peeler.finish())
}
