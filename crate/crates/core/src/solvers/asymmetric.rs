//! `B^{k+l} (B^y)^{k-l}` with k pairs, for k > l >= 0.

use crate::equation::{EquationSpec, Family, Solution};
use crate::error::{Error, Result};
use crate::word::{basic_commutator, Word};

use super::{check_solution, conj_pairs, Pairs};

struct Letters {
    x: Word,
    xi: Word,
    y: Word,
    yi: Word,
    b: Word,
}

impl Letters {
    fn new() -> Self {
        let x = Word::x(1, 1);
        let y = Word::y(1, 1);
        Letters {
            xi: x.inverse(),
            yi: y.inverse(),
            b: basic_commutator(1).expect("rank 1"),
            x,
            y,
        }
    }

    fn yp(&self, n: i64) -> Word {
        self.y.pow(n)
    }

    fn bp(&self, n: i64) -> Word {
        self.b.pow(n)
    }
}

fn prod(ws: &[&Word]) -> Word {
    Word::product(1, ws.iter().copied())
}

/// The unconjugated pairs `(r_i, s_i)`, i = 1..k, whose commutator product
/// is `B^l (B^y)^{k-l} B^k`.
pub fn asymmetric_factors(k: u32, l: u32) -> Result<Pairs> {
    if k <= l {
        return Err(Error::InvalidParameter(format!("need k > l, got k={k}, l={l}")));
    }
    let (k, l) = (k as i64, l as i64);
    let t = Letters::new();
    let (x, xi, y, yi) = (&t.x, &t.xi, &t.y, &t.yi);
    let x2 = x.pow(2);
    let mut pairs = Vec::with_capacity(k as usize);
    for i in 1..=l {
        let r = prod(&[y, x, &t.yp(i - 1), xi, yi, x, &t.yp(1 - i), xi, yi]);
        let s = prod(&[
            y,
            x,
            &t.yp(i - 1),
            xi,
            &t.bp(l - i + 1),
            y,
            &t.bp(k - l),
            &t.yp(-i),
            &x2,
            &t.yp(1 - i),
            xi,
            yi,
        ]);
        pairs.push((r, s));
    }
    for j in 1..k - l {
        let m = l + j;
        let r = prod(&[y, x, &t.yp(m), xi, yi, x, &t.yp(-m), xi, yi]);
        let s = prod(&[
            y,
            x,
            &t.yp(m),
            xi,
            &t.bp(k - m),
            &t.yp(-m),
            &x2,
            &t.yp(-m),
            xi,
            yi,
        ]);
        pairs.push((r, s));
    }
    pairs.push((
        prod(&[y, x, &t.yp(k + 1), xi, yi]),
        prod(&[y, x, yi, xi, y, xi, yi]),
    ));
    Ok(pairs)
}

/// Closed form of `[r_1,s_1] ... [r_t,s_t]` for `1 <= t <= l`.
pub fn p2_prefix(t: u32, k: u32, l: u32) -> Result<Word> {
    if k <= l || t < 1 || t > l {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= t <= l < k, got t={t}, l={l}, k={k}"
        )));
    }
    let (t, k, l) = (t as i64, k as i64, l as i64);
    let a = Letters::new();
    Ok(prod(&[
        &a.bp(l),
        &a.y,
        &a.bp(k - l),
        &a.yi,
        &a.bp(t),
        &a.yp(t + 1),
        &a.bp(l - k),
        &a.yi,
        &a.bp(t - 1 - l),
        &a.x,
        &a.yp(1 - t),
        &a.xi,
        &a.yi,
    ]))
}

/// Closed form of `[r_{l+1},s_{l+1}] ... [r_{l+t},s_{l+t}]` for `1 <= t <= k-l-1`.
pub fn p3_prefix(t: u32, k: u32, l: u32) -> Result<Word> {
    if k <= l || t < 1 || t + l + 1 > k {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= t <= k-l-1, got t={t}, l={l}, k={k}"
        )));
    }
    let (t, k, l) = (t as i64, k as i64, l as i64);
    let a = Letters::new();
    Ok(prod(&[
        &a.y,
        &a.x,
        &a.yp(l + 1),
        &a.xi,
        &a.yi,
        &a.bp(k - l - 1),
        &a.yp(-l - 1),
        &a.bp(t),
        &a.yp(l + t + 1),
        &a.bp(l + t - k),
        &a.x,
        &a.yp(-l - t),
        &a.xi,
        &a.yi,
    ]))
}

/// The factor pairs conjugated by `B^k`.
pub fn solve_asymmetric(k: u32, l: u32) -> Result<Solution> {
    let factors = asymmetric_factors(k, l)?;
    let b = basic_commutator(1)?;
    let sol = Solution::new(1, conj_pairs(&factors, &b.pow(k as i64)), Family::Asymmetric)
        .with_param("k", k)
        .with_param("l", l);
    let spec = EquationSpec::new(
        1,
        vec![
            (Word::identity(1), (k + l) as i64),
            (Word::y(1, 1), (k - l) as i64),
        ],
    )?;
    check_solution(&sol, &spec)?;
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::product_of;

    #[test]
    fn range_errors() {
        assert!(solve_asymmetric(2, 2).is_err());
        assert!(p2_prefix(0, 3, 1).is_err());
        assert!(p2_prefix(2, 3, 1).is_err());
        assert!(p3_prefix(2, 3, 1).is_err());
        assert!(p3_prefix(1, 3, 1).is_ok());
    }

    #[test]
    fn single_pair_case() {
        let sol = solve_asymmetric(1, 0).unwrap();
        assert_eq!(sol.h(), 1);
    }

    #[test]
    fn factor_product() {
        let b = basic_commutator(1).unwrap();
        let y = Word::y(1, 1);
        let f = asymmetric_factors(4, 1).unwrap();
        let want = b.mul(&b.conjugate(&y).pow(3)).mul(&b.pow(4));
        assert_eq!(product_of(1, &f), want);
    }
}
