//! Abelianization `F_2g -> Z^2g` and subgroup index via Hermite normal form.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::equation::Solution;
use crate::word::Word;

/// Exponent sums ordered (x_1, y_1, ..., x_g, y_g).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianVector {
    pub rank: u32,
    pub coords: Vec<i64>,
}

impl AbelianVector {
    pub fn zero(rank: u32) -> Self {
        AbelianVector {
            rank,
            coords: vec![0; 2 * rank as usize],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl std::ops::Add for &AbelianVector {
    type Output = AbelianVector;

    fn add(self, rhs: &AbelianVector) -> AbelianVector {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        AbelianVector {
            rank: self.rank,
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

pub fn abelianize(w: &Word) -> AbelianVector {
    let mut v = AbelianVector::zero(w.rank());
    for l in w.letters() {
        v.coords[l.slot()] += l.sign() as i64;
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IndexValue {
    Finite(BigUint),
    Infinite,
}

impl IndexValue {
    pub fn finite(n: u64) -> Self {
        IndexValue::Finite(BigUint::from(n))
    }

    pub fn as_u64(&self) -> Option<u64> {
        match self {
            IndexValue::Finite(n) => u64::try_from(n).ok(),
            IndexValue::Infinite => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, IndexValue::Finite(n) if n.is_one())
    }

    /// Finite values compare as integers; infinite is above all of them.
    pub fn at_most(&self, bound: u64) -> bool {
        match self {
            IndexValue::Finite(n) => *n <= BigUint::from(bound),
            IndexValue::Infinite => false,
        }
    }
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexValue::Finite(n) => write!(f, "{n}"),
            IndexValue::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for IndexValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.as_u64() {
            Some(n) => s.serialize_u64(n),
            None => s.serialize_str(&self.to_string()),
        }
    }
}

/// Images of a list of generators; rows of the integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupImage {
    pub rank: u32,
    pub generators: Vec<AbelianVector>,
}

impl SubgroupImage {
    pub fn of_words<'a>(rank: u32, words: impl IntoIterator<Item = &'a Word>) -> Self {
        SubgroupImage {
            rank,
            generators: words.into_iter().map(abelianize).collect(),
        }
    }

    /// Row-style Hermite normal form: nonzero rows only, pivots positive,
    /// entries above each pivot reduced into `[0, pivot)`.
    pub fn hnf(&self) -> Vec<Vec<BigInt>> {
        let cols = 2 * self.rank as usize;
        let mut rows: Vec<Vec<BigInt>> = self
            .generators
            .iter()
            .map(|v| v.coords.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        let mut r = 0;
        for col in 0..cols {
            if r == rows.len() {
                break;
            }
            // gcd-combine every row below r into row r
            for i in r + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                if rows[r][col].is_zero() {
                    rows.swap(r, i);
                    continue;
                }
                let a = rows[r][col].clone();
                let b = rows[i][col].clone();
                let e = a.extended_gcd(&b);
                let (g, s, t) = (e.gcd, e.x, e.y);
                let (ag, bg) = (&a / &g, &b / &g);
                let new_r: Vec<BigInt> = (0..cols)
                    .map(|k| &s * &rows[r][k] + &t * &rows[i][k])
                    .collect();
                let new_i: Vec<BigInt> = (0..cols)
                    .map(|k| &ag * &rows[i][k] - &bg * &rows[r][k])
                    .collect();
                rows[r] = new_r;
                rows[i] = new_i;
            }
            if rows[r][col].is_zero() {
                continue;
            }
            if rows[r][col].is_negative() {
                for v in rows[r].iter_mut() {
                    *v = -v.clone();
                }
            }
            let p = rows[r][col].clone();
            for i in 0..r {
                let q = rows[i][col].div_floor(&p);
                if !q.is_zero() {
                    for k in 0..cols {
                        let d = &q * &rows[r][k];
                        rows[i][k] -= d;
                    }
                }
            }
            r += 1;
        }
        rows.truncate(r);
        rows
    }

    pub fn index(&self) -> IndexValue {
        let h = self.hnf();
        let cols = 2 * self.rank as usize;
        if h.len() < cols {
            return IndexValue::Infinite;
        }
        let mut det = BigInt::one();
        for (i, row) in h.iter().enumerate() {
            // full rank forces the pivot of row i into column i
            det *= &row[i];
        }
        IndexValue::Finite(det.magnitude().clone())
    }
}

pub fn image_index(gens: &[Word], rank: u32) -> IndexValue {
    SubgroupImage::of_words(rank, gens).index()
}

/// Index of the image of all 2h words of a solution.
pub fn solution_index(sol: &Solution) -> IndexValue {
    SubgroupImage::of_words(sol.g, sol.words()).index()
}

pub fn is_primitive(sol: &Solution) -> bool {
    solution_index(sol).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 1).unwrap()
    }

    #[test]
    fn abelianize_examples() {
        assert!(abelianize(&w("x1 y1 x1^-1 y1^-1")).is_zero());
        let u2 = w("y1^3 x1 y1^-2 x1^-1 y1^-1 x1 y1^2 x1^-1 y1^-3");
        assert_eq!(abelianize(&u2).coords, vec![0, -1]);
    }

    #[test]
    fn index_examples() {
        assert_eq!(image_index(&[w("x1"), w("y1^2")], 1), IndexValue::finite(2));
        assert_eq!(image_index(&[w("x1"), w("y1")], 1), IndexValue::finite(1));
        assert_eq!(
            image_index(&[w("x1 y1 x1^-1 y1^-1")], 1),
            IndexValue::Infinite
        );
        assert_eq!(image_index(&[], 1), IndexValue::Infinite);
        assert_eq!(
            image_index(&[w("x1^2 y1^3"), w("x1^3 y1^5"), w("y1^7")], 1),
            IndexValue::finite(1)
        );
    }

    #[test]
    fn hnf_is_canonical() {
        let a = SubgroupImage::of_words(1, &[w("x1^4 y1^6"), w("y1^2")]);
        let b = SubgroupImage::of_words(1, &[w("x1^4"), w("y1^-2"), w("x1^8 y1^2")]);
        assert_eq!(a.hnf(), b.hnf());
        assert_eq!(a.index(), IndexValue::finite(8));
    }

    #[test]
    fn index_display() {
        assert_eq!(IndexValue::Infinite.to_string(), "infinite");
        assert!(!IndexValue::Infinite.at_most(100));
        assert!(IndexValue::finite(3).at_most(3));
    }
}
