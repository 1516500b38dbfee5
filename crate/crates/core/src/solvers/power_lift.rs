//! Lifting a solution for exponent 1 to every exponent c >= 1.
//!
//! Notation in comments: `Z_i = B_g^{w_i}` (blocks, 1-based), `S = Z_2 ... Z_l`,
//! `E(c) = Z_1^c ... Z_l^c`.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::ops::Range;

use crate::equation::{min_h_family, torus_conjugators, EquationSpec, Family, Solution};
use crate::error::{Error, Result};
use crate::rewrite::{PeelStep, Peeler};
use crate::word::{basic_commutator, Generator, Word};

use super::{check_solution, conj_pairs, product_of, Pairs};

/// A verified solution for exponent 1 with exactly `l(g-1)+1` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseSolution {
    solution: Solution,
    conjugators: Vec<Word>,
}

impl BaseSolution {
    pub fn new(solution: Solution, conjugators: Vec<Word>) -> Result<Self> {
        let g = solution.g;
        let l = conjugators.len() as u32;
        let spec = EquationSpec::uniform(g, &conjugators, 1)?;
        if !crate::equation::verify(&solution, &spec)? {
            return Err(Error::Unverified("base does not solve the exponent-1 equation".into()));
        }
        let want = (l * (g - 1) + 1) as usize;
        if solution.h() != want {
            return Err(Error::InvalidParameter(format!(
                "base has {} pairs, expected {want}",
                solution.h()
            )));
        }
        Ok(BaseSolution {
            solution,
            conjugators,
        })
    }

    /// Base for conjugators `1, y_1, ..., y_1^{l-1}` in rank g:
    /// `(x_1, y_1^l)` followed by conjugates of `(x_j, y_j)`, j >= 2.
    pub fn torus(g: u32, l: u32) -> Result<Self> {
        if g == 0 || l == 0 {
            return Err(Error::InvalidParameter("g and l must be positive".into()));
        }
        let y = Word::y(g, 1);
        let head_comm = Word::x(g, 1).commutator(&y);
        // a_j = y^j [x_1, y_1] y^-j
        let a: Vec<Word> = (0..l as i64).map(|j| head_comm.conjugate(&y.pow(j))).collect();
        let mut pairs = vec![(Word::x(g, 1), y.pow(l as i64))];
        for i in 0..l as usize {
            let tail = Word::product(g, &a[i + 1..]);
            let by = tail.inverse().mul(&y.pow(i as i64));
            for j in 2..=g {
                pairs.push((Word::x(g, j).conjugate(&by), Word::y(g, j).conjugate(&by)));
            }
        }
        let sol = Solution::new(g, pairs, Family::External)
            .with_param("g", g)
            .with_param("l", l);
        BaseSolution::new(sol, torus_conjugators(g, l))
    }

    pub fn solution(&self) -> &Solution {
        &self.solution
    }

    pub fn conjugators(&self) -> &[Word] {
        &self.conjugators
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    ConjugatedPrevious,
    Peeled,
    BaseCopy,
    Closing,
}

/// Pairs `range` of the level-`c` solution came from `source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub c: u32,
    pub source: Source,
    pub pairs: Range<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RecursionTrace {
    pub levels: BTreeMap<u32, Vec<TraceEntry>>,
}

impl RecursionTrace {
    pub fn count(&self, c: u32, source: Source) -> usize {
        self.levels
            .get(&c)
            .map(|es| es.iter().filter(|e| e.source == source).map(|e| e.pairs.len()).sum())
            .unwrap_or(0)
    }
}

struct Lifter {
    g: u32,
    blocks: Vec<Word>,
    base: Pairs,
    memo: HashMap<u32, Pairs>,
    trace: RecursionTrace,
}

struct Assembly {
    c: u32,
    pairs: Pairs,
    entries: Vec<TraceEntry>,
}

impl Assembly {
    fn new(c: u32) -> Self {
        Assembly {
            c,
            pairs: Vec::new(),
            entries: Vec::new(),
        }
    }

    fn push(&mut self, source: Source, pairs: Pairs) {
        let start = self.pairs.len();
        self.pairs.extend(pairs);
        self.entries.push(TraceEntry {
            c: self.c,
            source,
            pairs: start..self.pairs.len(),
        });
    }
}

impl Lifter {
    fn l(&self) -> usize {
        self.blocks.len()
    }

    /// Block `Z_i` (1-based) raised to `e`, as `|e|` separate factors.
    fn run(&self, i: usize, e: i64) -> Vec<Word> {
        let f = self.blocks[i - 1].pow(e.signum());
        vec![f; e.unsigned_abs() as usize]
    }

    fn s(&self) -> Word {
        Word::product(self.g, &self.blocks[1..])
    }

    fn level(&mut self, c: u32) -> Result<Pairs> {
        if let Some(p) = self.memo.get(&c) {
            return Ok(p.clone());
        }
        let mut asm = Assembly::new(c);
        if c == 1 {
            asm.push(Source::BaseCopy, self.base.clone());
        } else if self.l() == 1 {
            self.single_block(&mut asm)?;
        } else if self.l() % 2 == 0 {
            let prev = self.level(c - 1)?;
            asm.push(Source::ConjugatedPrevious, conj_pairs(&prev, &self.blocks[0]));
            asm.push(Source::Peeled, self.peel_even(c - 1)?);
            asm.push(Source::BaseCopy, self.base.clone());
        } else {
            let s_inv = self.s().inverse();
            asm.push(Source::BaseCopy, self.base.clone());
            asm.push(Source::BaseCopy, conj_pairs(&self.base, &s_inv));
            if c == 2 {
                asm.push(Source::Peeled, self.peel_odd_second()?);
            } else {
                let older = self.level(c - 2)?;
                asm.push(Source::ConjugatedPrevious, conj_pairs(&older, &s_inv.pow(2)));
                let (peeled, closing) = self.peel_odd(c - 1)?;
                asm.push(Source::Peeled, peeled);
                asm.push(Source::Closing, vec![closing]);
            }
        }
        self.trace.levels.insert(c, asm.entries);
        self.memo.insert(c, asm.pairs.clone());
        Ok(asm.pairs)
    }

    /// Even l, from exponent n to n+1: the factor list
    /// `Z_1 Z_l^-n ... Z_3^-n Z_2 Z_3^{n+1} ... Z_l^{n+1}`, splitting off
    /// the top two blocks per step until `Z_1 ... Z_l` is left.
    fn peel_even(&self, n: u32) -> Result<Pairs> {
        let l = self.l();
        let n = n as i64;
        let mut factors = vec![self.blocks[0].clone()];
        for i in (3..=l).rev() {
            factors.extend(self.run(i, -n));
        }
        factors.push(self.blocks[1].clone());
        for i in 3..=l {
            factors.extend(self.run(i, n + 1));
        }
        let e = Word::identity(self.g);
        let mut peeler = Peeler::new(&e, &factors, &e)?;
        for top in (4..=l).rev().step_by(2) {
            let mut xi1 = self.run(top, -n);
            xi1.extend(self.run(top - 1, -n));
            let mut xi2 = self.run(top - 1, n);
            xi2.extend(self.run(top, n));
            split_at_patterns(&mut peeler, &xi1, &xi2)?;
        }
        self.finish_to(peeler, &Word::product(self.g, &self.blocks))
    }

    /// Odd l, exponent 2: `S^-1 Z_l^-1 ... Z_3^-1 Z_2 Z_3^2 ... Z_l^2` peeled
    /// down to the identity, two blocks per step.
    fn peel_odd_second(&self) -> Result<Pairs> {
        let l = self.l();
        let mut factors = Vec::new();
        for i in (2..=l).rev() {
            factors.extend(self.run(i, -1));
        }
        for i in (3..=l).rev() {
            factors.extend(self.run(i, -1));
        }
        factors.extend(self.run(2, 1));
        for i in 3..=l {
            factors.extend(self.run(i, 2));
        }
        let e = Word::identity(self.g);
        let mut peeler = Peeler::new(&e, &factors, &e)?;
        for low in (2..l).step_by(2) {
            self.split_low_pair(&mut peeler, low)?;
        }
        self.finish_to(peeler, &e)
    }

    /// Odd l, exponent n+1 >= 3: `S^-2 Z_l^{1-n} ... Z_3^{1-n} Z_2^2 Z_3^{n+1} ... Z_l^{n+1}`.
    /// Two splits per low pair of blocks, then the last two blocks close as
    /// `Z^-1 [Y^-1 Z^{n-1}, Z^-n Y^-1] Z` with `Y = Z_{l-1}`, `Z = Z_l`.
    fn peel_odd(&self, n: u32) -> Result<(Pairs, (Word, Word))> {
        let l = self.l();
        let n = n as i64;
        let mut factors = Vec::new();
        for _ in 0..2 {
            for i in (2..=l).rev() {
                factors.extend(self.run(i, -1));
            }
        }
        for i in (3..=l).rev() {
            factors.extend(self.run(i, 1 - n));
        }
        factors.extend(self.run(2, 2));
        for i in 3..=l {
            factors.extend(self.run(i, n + 1));
        }
        let e = Word::identity(self.g);
        let mut peeler = Peeler::new(&e, &factors, &e)?;
        for low in (2..l - 1).step_by(2) {
            self.split_low_pair(&mut peeler, low)?;
            self.split_low_pair(&mut peeler, low)?;
        }
        let y = &self.blocks[l - 2];
        let z = &self.blocks[l - 1];
        let p = y.inverse().mul(&z.pow(n - 1));
        let q = z.pow(-n).mul(&y.inverse());
        peeler.step(&PeelStep::Close {
            p,
            q,
            by: z.inverse(),
        })?;
        let mut out = self.finish_to(peeler, &e)?;
        let closing = out.pop().expect("closing pair emitted");
        Ok((out, closing))
    }

    /// Split with `xi1 = Z_{low+1}^-1 Z_low^-1` and `xi2 = Z_low Z_{low+1}`.
    fn split_low_pair(&self, peeler: &mut Peeler, low: usize) -> Result<()> {
        let mut xi1 = self.run(low + 1, -1);
        xi1.extend(self.run(low, -1));
        let mut xi2 = self.run(low, 1);
        xi2.extend(self.run(low + 1, 1));
        split_at_patterns(peeler, &xi1, &xi2)
    }

    fn finish_to(&self, peeler: Peeler, expected: &Word) -> Result<Pairs> {
        let done = peeler.finish();
        if &done.remainder != expected {
            return Err(Error::MalformedSchedule(
                "peeling left an unexpected remainder; are the conjugators distinct?".into(),
            ));
        }
        Ok(done.commutators)
    }

    /// One block `K = Z_1` with base `[u_1,v_1] ... [u_g,v_g] = K`.
    /// Even c: the base, then `K^{c-1}`. Odd c: [`power_of_product`].
    fn single_block(&mut self, asm: &mut Assembly) -> Result<()> {
        let c = asm.c as i64;
        if c % 2 == 0 {
            asm.push(Source::BaseCopy, self.base.clone());
            asm.push(Source::Peeled, power_of_product(self.g, &self.base, c - 1)?);
        } else {
            asm.push(Source::Peeled, power_of_product(self.g, &self.base, c)?);
        }
        Ok(())
    }
}

fn split_at_patterns(peeler: &mut Peeler, xi1: &[Word], xi2: &[Word]) -> Result<()> {
    let s1 = peeler
        .locate(xi1, 0)
        .ok_or_else(|| Error::MalformedSchedule("first split piece not found".into()))?;
    let s2 = peeler
        .locate(xi2, s1 + xi1.len())
        .ok_or_else(|| Error::MalformedSchedule("second split piece not found".into()))?;
    peeler.step(&PeelStep::Split {
        xi1: s1..s1 + xi1.len(),
        xi2: s2..s2 + xi2.len(),
    })
}

/// `([u_1,v_1] ... [u_m,v_m])^c` for odd c as `c(m-1) + (c+1)/2` commutators:
/// with `C = [u_1,v_1]` and `R` the rest, `(CR)^c = C C^R ... C^{R^{c-1}} R^c`.
fn power_of_product(rank: u32, pairs: &[(Word, Word)], c: i64) -> Result<Pairs> {
    debug_assert!(c > 0 && c % 2 == 1);
    match pairs {
        [] => Ok(Vec::new()),
        [(u, v)] => push_forward(&odd_commutator_power(c), u, v),
        [(u, v), rest @ ..] => {
            let r = product_of(rank, rest);
            let mut out = Vec::new();
            let mut by = Word::identity(rank);
            for _ in 0..c {
                out.push((u.conjugate(&by), v.conjugate(&by)));
                by = by.mul(&r);
            }
            out.extend(power_of_product(rank, rest, c)?);
            Ok(out)
        }
    }
}

/// Sends rank-1 pairs through `x -> a`, `y -> b`.
fn push_forward(pairs: &[(Word, Word)], a: &Word, b: &Word) -> Result<Pairs> {
    let images: HashMap<Generator, Word> =
        [(Generator::x(1), a.clone()), (Generator::y(1), b.clone())].into();
    pairs
        .iter()
        .map(|(u, v)| Ok((u.apply_homomorphism(&images)?, v.apply_homomorphism(&images)?)))
        .collect()
}

/// `[x,y]^c` in rank 1 for odd `c = 2m+1`, with `m+1` pairs:
/// `[x,y]^{m+1} (B^{y^-1})^{-m} = [x y x^-1, (y^-1 x y x^-1)^m x^-1]`, and the
/// leftover `(B^{y^-1})^m B^m` is a `y^-1`-conjugate of `B^m (B^y)^m`.
pub(crate) fn odd_commutator_power(c: i64) -> Pairs {
    let x = Word::x(1, 1);
    let y = Word::y(1, 1);
    if c == 1 {
        return vec![(x, y)];
    }
    let m = (c - 1) / 2;
    let xi = x.inverse();
    let first = (
        y.conjugate(&x),
        y.inverse().mul(&x).mul(&y).mul(&xi).pow(m).mul(&xi),
    );
    let mut out = vec![first];
    out.extend(conj_pairs(&super::torus::l2_shifted_pairs(m as u32), &y.inverse()));
    out
}

/// `[x,y]^n` in rank 1 with `ceil((n+1)/2)` pairs.
pub fn express_commutator_power(n: u32) -> Result<Solution> {
    let base = BaseSolution::new(
        Solution::new(1, vec![(Word::x(1, 1), Word::y(1, 1))], Family::External),
        vec![Word::identity(1)],
    )?;
    let mut sol = solve_power_lift(&base, n)?;
    sol.params.insert("n".into(), n.into());
    let want = EquationSpec::new(1, vec![(Word::identity(1), n as i64)])?;
    check_solution(&sol, &want)?;
    Ok(sol)
}

pub fn solve_power_lift(base: &BaseSolution, c: u32) -> Result<Solution> {
    solve_power_lift_traced(base, c).map(|(s, _)| s)
}

/// Solution of `(B_g^{w_1})^c ... (B_g^{w_l})^c` with `min_h_family(g, l, c)` pairs,
/// plus the per-level provenance of each pair.
pub fn solve_power_lift_traced(base: &BaseSolution, c: u32) -> Result<(Solution, RecursionTrace)> {
    if c == 0 {
        return Err(Error::InvalidParameter("c must be at least 1".into()));
    }
    let g = base.solution.g;
    let b = basic_commutator(g)?;
    let blocks: Vec<Word> = base.conjugators.iter().map(|w| b.conjugate(w)).collect();
    let l = blocks.len() as u32;
    let mut lifter = Lifter {
        g,
        blocks,
        base: base.solution.pairs.clone(),
        memo: HashMap::new(),
        trace: RecursionTrace::default(),
    };
    let pairs = lifter.level(c)?;
    let sol = Solution::new(g, pairs, Family::PowerLift)
        .with_param("g", g)
        .with_param("l", l)
        .with_param("c", c)
        .with_param(
            "w",
            base.conjugators
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>(),
        );
    let spec = EquationSpec::uniform(g, &base.conjugators, c as i64)?;
    check_solution(&sol, &spec)?;
    if sol.h() as u64 != min_h_family(g, l, c) {
        return Err(Error::Unverified(format!(
            "built {} pairs, expected {}",
            sol.h(),
            min_h_family(g, l, c)
        )));
    }
    Ok((sol, lifter.trace))
}
