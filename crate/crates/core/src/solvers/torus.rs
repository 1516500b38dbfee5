//! Rank-one families for `B^c (B^y)^c ... (B^{y^{l-1}})^c`, `B = [x, y]`.

use crate::equation::{min_h_family, EquationSpec, Family, Solution};
use crate::error::{Error, Result};
use crate::word::{basic_commutator, Word};

use super::power_lift::{odd_commutator_power, solve_power_lift, BaseSolution};
use super::{check_solution, conj_pairs, Pairs};

fn x() -> Word {
    Word::x(1, 1)
}

fn y() -> Word {
    Word::y(1, 1)
}

fn w(text: &str) -> Word {
    Word::parse(text, 1).expect("literal word")
}

/// Pair appended when moving an l=2 solution from exponent c to c+1:
/// `((B^y)^-c x (B^y)^c, (B^y)^-c y^2 (B^y)^c)`.
fn l2_step_pair(c: i64) -> (Word, Word) {
    let by = basic_commutator(1)
        .expect("rank 1")
        .conjugate(&y())
        .pow(-c);
    (x().conjugate(&by), y().pow(2).conjugate(&by))
}

/// `B^c (B^y)^c` with c pairs, head `(x, y^2)`; empty for c = 0.
pub(crate) fn l2_shifted_pairs(c: u32) -> Pairs {
    if c == 0 {
        return Vec::new();
    }
    let mut pairs = vec![(x(), y().pow(2))];
    for k in 1..c as i64 {
        pairs.push(l2_step_pair(k));
    }
    pairs
}

/// The l=2 solution started from `(x, y^2)`; index 2.
pub fn l2_shifted_family(c: u32) -> Result<Solution> {
    if c == 0 {
        return Err(Error::InvalidParameter("c must be at least 1".into()));
    }
    let sol = Solution::new(1, l2_shifted_pairs(c), Family::External)
        .with_param("l", 2)
        .with_param("c", c);
    check_solution(&sol, &EquationSpec::torus(2, c as i64)?)?;
    Ok(sol)
}

/// The primitive two-pair solution of `B^2 (B^y)^2`.
pub fn lemma_l2_solution() -> Solution {
    let pairs = vec![
        (x(), y().pow(3)),
        (
            w("y1^3 x1 y1^-2 x1^-1 y1^-1 x1 y1^2 x1^-1 y1^-3"),
            w("y1^2 x1^2 y1^2 x1^-1 y1^-3"),
        ),
    ];
    Solution::new(1, pairs, Family::TorusPrimitive)
        .with_param("l", 2)
        .with_param("c", 2)
        .with_param("head_exponent", 3)
}

/// Extends a solution of `B^c (B^y)^c` to one of `B^{c+1} (B^y)^{c+1}` with one more pair.
pub fn l2_c_step(sol: &Solution) -> Result<Solution> {
    let c = sol
        .params
        .get("c")
        .and_then(|v| v.as_i64())
        .ok_or_else(|| Error::InvalidParameter("solution carries no exponent c".into()))?;
    if sol.g != 1 || c < 1 {
        return Err(Error::InvalidParameter("expected a rank-1 solution with c >= 1".into()));
    }
    check_solution(sol, &EquationSpec::torus(2, c)?)?;
    let mut out = sol.clone();
    out.pairs.push(l2_step_pair(c));
    out.params.insert("c".into(), (c + 1).into());
    check_solution(&out, &EquationSpec::torus(2, c + 1)?)?;
    Ok(out)
}

/// Index-l family: the power lift of `(x, y^l)`.
pub fn solve_torus_min_index(l: u32, c: u32) -> Result<Solution> {
    if l == 0 || c == 0 {
        return Err(Error::InvalidParameter("l and c must be at least 1".into()));
    }
    let base = BaseSolution::torus(1, l)?;
    let lifted = solve_power_lift(&base, c)?;
    Ok(Solution::new(1, lifted.pairs, Family::TorusMinIndex)
        .with_param("l", l)
        .with_param("c", c))
}

/// A solution with its head pair `(x, y^e)` and the number of blocks it covers.
struct Piece {
    blocks: u32,
    pairs: Pairs,
}

impl Piece {
    fn head_exponent(&self) -> Option<i64> {
        head_exponent(&self.pairs)
    }
}

fn head_exponent(pairs: &[(Word, Word)]) -> Option<i64> {
    let (u, v) = pairs.first()?;
    if u != &x() {
        return None;
    }
    (1..=v.len() as i64).find(|&e| *v == y().pow(e))
}

/// Concatenates a piece with head `(x, y^m)` covering m blocks and a piece
/// with head `(x, y^e)`, using `[x, y^m] y^m [x, y^e] y^-m = [x, y^{m+e}]`.
/// Costs one pair less than the two pieces together.
fn glue(left: Piece, right: Piece) -> Piece {
    let m = left.blocks as i64;
    debug_assert_eq!(left.head_exponent(), Some(m));
    let e = right.head_exponent().expect("right piece has an (x, y^e) head");
    let shift = y().pow(m);
    let q = x().commutator(&y().pow(e)).conjugate(&shift);
    let mut pairs = vec![(x(), y().pow(m + e))];
    pairs.extend(conj_pairs(&left.pairs[1..], &q.inverse()));
    pairs.extend(conj_pairs(&right.pairs[1..], &shift));
    Piece {
        blocks: left.blocks + right.blocks,
        pairs,
    }
}

fn shifted_chain(pieces: u32, c: u32) -> Piece {
    let one = || Piece {
        blocks: 2,
        pairs: l2_shifted_pairs(c),
    };
    (1..pieces).fold(one(), |acc, _| glue(acc, one()))
}

fn primitive_l2(c: u32) -> Result<Pairs> {
    let mut sol = lemma_l2_solution();
    for _ in 2..c {
        sol = l2_c_step(&sol)?;
    }
    Ok(sol.pairs)
}

/// `B^c` in rank 1: head `(x, y)` for even c.
fn single_block(c: u32) -> Pairs {
    let c = c as i64;
    if c % 2 == 0 {
        let mut pairs = vec![(x(), y())];
        pairs.extend(odd_commutator_power(c - 1));
        pairs
    } else {
        odd_commutator_power(c)
    }
}

/// `B^3` with head `(x, y^2)`: `[x,y^2]^-1 B^3` is the single commutator of the second pair.
fn cube_with_square_head() -> Pairs {
    vec![
        (x(), y().pow(2)),
        (
            w("y1^2 x1 y1^-1 x1^-1 y1^-1 x1 y1 x1^-1 y1^-2"),
            w("y1 x1^2 y1 x1^-1 y1^-2"),
        ),
    ]
}

/// l = 3 with odd c: the power-lift odd step seeded with a primitive
/// solution two exponents lower, which keeps the head `(x, y^3)` for c >= 5.
fn three_blocks_odd(c: u32) -> Result<Pairs> {
    if c == 3 {
        let left = Piece {
            blocks: 2,
            pairs: l2_shifted_pairs(3),
        };
        let right = Piece {
            blocks: 1,
            pairs: cube_with_square_head(),
        };
        return Ok(glue(left, right).pairs);
    }
    let b = basic_commutator(1)?;
    let z: Vec<Word> = (0..3).map(|i| b.conjugate(&y().pow(i))).collect();
    let s_inv = z[1].mul(&z[2]).inverse();
    let base = vec![(x(), y().pow(3))];
    let older = three_blocks_odd(c - 2)?;
    let n = (c - 1) as i64;
    let (yb, zb) = (&z[1], &z[2]);
    let p = yb.inverse().mul(&zb.pow(n - 1));
    let q = zb.pow(-n).mul(&yb.inverse());
    let by = zb.inverse();

    let mut pairs = base.clone();
    pairs.extend(conj_pairs(&base, &s_inv));
    pairs.extend(conj_pairs(&older, &s_inv.pow(2)));
    pairs.push((p.conjugate(&by), q.conjugate(&by)));
    Ok(pairs)
}

/// Index-1 family for c >= 2 (c = 1 only for l = 1).
///
/// Pieces are glued left to right by head exponent: even l puts `l-2`
/// blocks of the `(x, y^2)` family before the primitive l=2 family; odd l
/// with even c starts from the single block with head `(x, y)`; odd l >= 5
/// with odd c appends the index-3 family to `l-3` blocks of the `(x, y^2)`
/// family, whose lattices together span everything.
pub fn solve_torus_primitive(l: u32, c: u32) -> Result<Solution> {
    if l == 0 {
        return Err(Error::InvalidParameter("l must be at least 1".into()));
    }
    if c == 0 || (c == 1 && l > 1) {
        return Err(Error::InvalidParameter(
            "for c = 1 an index-1 solution exists only when l = 1".into(),
        ));
    }
    let pairs = match (l, c) {
        (1, _) => single_block(c),
        (2, _) => primitive_l2(c)?,
        (l, _) if l % 2 == 0 => {
            let right = Piece {
                blocks: 2,
                pairs: primitive_l2(c)?,
            };
            glue(shifted_chain((l - 2) / 2, c), right).pairs
        }
        (l, c) if c % 2 == 0 => {
            let start = Piece {
                blocks: 1,
                pairs: single_block(c),
            };
            (0..(l - 1) / 2)
                .fold(start, |acc, _| {
                    glue(
                        acc,
                        Piece {
                            blocks: 2,
                            pairs: l2_shifted_pairs(c),
                        },
                    )
                })
                .pairs
        }
        (3, c) => three_blocks_odd(c)?,
        (l, c) => {
            let tail = Piece {
                blocks: 3,
                pairs: solve_torus_min_index(3, c)?.pairs,
            };
            glue(shifted_chain((l - 3) / 2, c), tail).pairs
        }
    };
    let mut sol = Solution::new(1, pairs, Family::TorusPrimitive)
        .with_param("l", l)
        .with_param("c", c);
    let head = head_exponent(&sol.pairs);
    sol.params.insert(
        "head_exponent".into(),
        head.map_or(serde_json::Value::Null, Into::into),
    );
    check_solution(&sol, &EquationSpec::torus(l, c as i64)?)?;
    if sol.h() as u64 != min_h_family(1, l, c) {
        return Err(Error::Unverified(format!(
            "built {} pairs, expected {}",
            sol.h(),
            min_h_family(1, l, c)
        )));
    }
    Ok(sol)
}
