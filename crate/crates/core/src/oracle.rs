//! Independent checks: the Wicks form for single commutators and a bounded
//! exhaustive search over short words.

use serde::Serialize;

use crate::abelian::abelianize;
use crate::equation::{build_rhs, EquationSpec, Family, Solution};
use crate::error::{Error, Result};
use crate::word::{Generator, Letter, Word};

pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// The cyclically reduced core of a word, rotated left by `rotation`,
/// reads `a b c a^-1 b^-1 c^-1`. The original word is
/// `conjugator * core * conjugator^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WicksWitness {
    pub rotation: usize,
    #[serde(serialize_with = "as_text")]
    pub a: Word,
    #[serde(serialize_with = "as_text")]
    pub b: Word,
    #[serde(serialize_with = "as_text")]
    pub c: Word,
    #[serde(serialize_with = "as_text")]
    pub conjugator: Word,
}

fn as_text<S: serde::Serializer>(w: &Word, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

fn slice_word(rank: u32, letters: &[Letter]) -> Word {
    Word::reduce(letters.iter().copied(), rank).expect("letters of the same rank")
}

fn is_inverse_of(s: &[Letter], t: &[Letter]) -> bool {
    s.len() == t.len() && s.iter().zip(t.iter().rev()).all(|(p, q)| *p == q.inverse())
}

/// Decides whether `w` is a single commutator by trying every rotation of
/// its cyclic core and every split point.
pub fn wicks_is_commutator(w: &Word) -> Option<WicksWitness> {
    let rank = w.rank();
    let (core, conjugator) = w.cyclically_reduce();
    let v = core.letters();
    let n = v.len();
    if n == 0 {
        let e = Word::identity(rank);
        return Some(WicksWitness {
            rotation: 0,
            a: e.clone(),
            b: e.clone(),
            c: e,
            conjugator,
        });
    }
    if n % 2 == 1 {
        return None;
    }
    let half = n / 2;
    let mut rot = Vec::with_capacity(n);
    for r in 0..n {
        rot.clear();
        rot.extend_from_slice(&v[r..]);
        rot.extend_from_slice(&v[..r]);
        let (first, second) = rot.split_at(half);
        for la in (0..=half).rev() {
            if !is_inverse_of(&first[..la], &second[..la]) {
                continue;
            }
            for lb in (0..=half - la).rev() {
                let (bs, cs) = (&first[la..la + lb], &first[la + lb..]);
                if is_inverse_of(bs, &second[la..la + lb]) && is_inverse_of(cs, &second[la + lb..]) {
                    return Some(WicksWitness {
                        rotation: r,
                        a: slice_word(rank, &first[..la]),
                        b: slice_word(rank, bs),
                        c: slice_word(rank, cs),
                        conjugator,
                    });
                }
            }
        }
    }
    None
}

/// A pair `(u, v)` with `[u, v] = w` read off a witness for `w`.
pub fn witness_pair(w: &Word, wit: &WicksWitness) -> (Word, Word) {
    let (core, _) = w.cyclically_reduce();
    let shift = slice_word(w.rank(), &core.letters()[..wit.rotation]);
    let g = wit.conjugator.mul(&shift);
    let u = wit.a.mul(&wit.b).conjugate(&g);
    let v = wit.c.mul(&wit.a.inverse()).conjugate(&g);
    (u, v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub found: Option<Solution>,
    pub words_enumerated: u128,
    pub max_len: usize,
}

/// Reduced words of length at most `max_len`, shortlex with letters ordered
/// `x1 < x1^-1 < y1 < y1^-1 < x2 < ...`.
pub fn reduced_words(rank: u32, max_len: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> = Generator::all(rank)
        .flat_map(|g| [Letter::new(g, true), Letter::new(g, false)])
        .collect();
    let mut out = vec![Word::identity(rank)];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &a in &alphabet {
                if w.last().is_some_and(|&t| t == a.inverse()) {
                    continue;
                }
                let mut nw = w.clone();
                nw.push(a);
                next.push(nw);
            }
        }
        out.extend(next.iter().map(|w| slice_word(rank, w)));
        layer = next;
    }
    out
}

pub fn brute_force_solve(spec: &EquationSpec, h: usize, max_len: usize) -> Result<SearchResult> {
    brute_force_solve_with_budget(spec, h, max_len, DEFAULT_BUDGET)
}

/// Exhaustive search for `h` pairs of words of length at most `max_len`.
/// The first tuple in lexicographic order over [`reduced_words`] wins.
/// A miss only means no solution within the bound.
pub fn brute_force_solve_with_budget(
    spec: &EquationSpec,
    h: usize,
    max_len: usize,
    budget: u128,
) -> Result<SearchResult> {
    brute_force_solve_word(&build_rhs(spec), h, max_len, budget)
}

/// [`brute_force_solve_with_budget`] for an arbitrary target word.
pub fn brute_force_solve_word(target: &Word, h: usize, max_len: usize, budget: u128) -> Result<SearchResult> {
    if h == 0 {
        return Err(Error::InvalidParameter("h must be at least 1".into()));
    }
    let rank = target.rank();
    let pool = reduced_words(rank, max_len);
    let estimate = (pool.len() as u128)
        .checked_pow(2 * h as u32)
        .unwrap_or(u128::MAX);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    let mut result = SearchResult {
        found: None,
        words_enumerated: 0,
        max_len,
    };
    // a product of commutators abelianizes to zero
    if !abelianize(target).is_zero() {
        return Ok(result);
    }
    let mut idx = vec![0usize; 2 * h];
    loop {
        result.words_enumerated += 1;
        let mut acc = Word::identity(rank);
        for k in 0..h {
            acc = acc.mul(&pool[idx[2 * k]].commutator(&pool[idx[2 * k + 1]]));
        }
        if acc == *target {
            let pairs = (0..h)
                .map(|k| (pool[idx[2 * k]].clone(), pool[idx[2 * k + 1]].clone()))
                .collect();
            result.found = Some(
                Solution::new(rank, pairs, Family::External)
                    .with_param("h", h)
                    .with_param("max_len", max_len),
            );
            return Ok(result);
        }
        let mut pos = 2 * h;
        loop {
            if pos == 0 {
                return Ok(result);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < pool.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
