//! Reduced words in the free group on x_1, y_1, ..., x_g, y_g.
//!
//! Every constructor and operation returns a freely reduced [`Word`]. The
//! rank travels with the word and is checked on every binary operation.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    X,
    Y,
}

/// A generator symbol x_i or y_i, with i >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: Kind,
    pub index: u32,
}

impl Generator {
    pub fn x(index: u32) -> Self {
        Generator { kind: Kind::X, index }
    }

    pub fn y(index: u32) -> Self {
        Generator { kind: Kind::Y, index }
    }

    fn code(self) -> i32 {
        let base = 2 * self.index as i32;
        match self.kind {
            Kind::X => base - 1,
            Kind::Y => base,
        }
    }

    fn from_code(code: i32) -> Self {
        let c = code.unsigned_abs();
        let index = c.div_ceil(2);
        if c % 2 == 1 {
            Generator::x(index)
        } else {
            Generator::y(index)
        }
    }

    /// All 2g generators in the order x_1, y_1, ..., x_g, y_g.
    pub fn all(rank: u32) -> impl Iterator<Item = Generator> {
        (1..=rank).flat_map(|i| [Generator::x(i), Generator::y(i)])
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::X => 'x',
            Kind::Y => 'y',
        };
        write!(f, "{k}{}", self.index)
    }
}

/// A generator with an exponent sign, packed as a signed code:
/// x_i is 2i-1, y_i is 2i, inverses are negated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: Generator, positive: bool) -> Self {
        let c = generator.code();
        Letter(if positive { c } else { -c })
    }

    pub fn generator(self) -> Generator {
        Generator::from_code(self.0)
    }

    /// +1 or -1.
    pub fn sign(self) -> i32 {
        self.0.signum()
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Position of the generator in the abelianization coordinates.
    pub(crate) fn slot(self) -> usize {
        self.0.unsigned_abs() as usize - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: u32,
    letters: Vec<Letter>,
}

fn check_rank(rank: u32) -> Result<()> {
    if rank == 0 {
        Err(Error::ZeroRank)
    } else {
        Ok(())
    }
}

fn same_rank(a: &Word, b: &Word) -> Result<()> {
    if a.rank != b.rank {
        return Err(Error::RankMismatch {
            left: a.rank,
            right: b.rank,
        });
    }
    Ok(())
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl Word {
    pub fn identity(rank: u32) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn generator(rank: u32, generator: Generator) -> Result<Self> {
        check_rank(rank)?;
        if generator.index == 0 || generator.index > rank {
            return Err(Error::SubscriptExceedsRank { generator, rank });
        }
        Ok(Word {
            rank,
            letters: vec![Letter::new(generator, true)],
        })
    }

    /// x_i of the given rank. Panics if i is out of range.
    pub fn x(rank: u32, i: u32) -> Self {
        Word::generator(rank, Generator::x(i)).expect("generator index within rank")
    }

    /// y_i of the given rank. Panics if i is out of range.
    pub fn y(rank: u32, i: u32) -> Self {
        Word::generator(rank, Generator::y(i)).expect("generator index within rank")
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>, rank: u32) -> Result<Self> {
        check_rank(rank)?;
        let mut out = Vec::new();
        for l in letters {
            let g = l.generator();
            if g.index > rank {
                return Err(Error::SubscriptExceedsRank {
                    generator: g,
                    rank,
                });
            }
            push_reduced(&mut out, l);
        }
        Ok(Word { rank, letters: out })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn try_mul(&self, other: &Word) -> Result<Word> {
        same_rank(self, other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.letters);
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Word {
            rank: self.rank,
            letters: out,
        }
    }

    /// Product; panics on rank mismatch. See [`Word::try_mul`].
    pub fn mul(&self, other: &Word) -> Word {
        self.try_mul(other).expect("rank mismatch in multiply")
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Word::identity(self.rank);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `self^by = by * self * by^-1`.
    pub fn try_conjugate(&self, by: &Word) -> Result<Word> {
        same_rank(self, by)?;
        Ok(by.mul_unchecked(self).mul_unchecked(&by.inverse()))
    }

    pub fn conjugate(&self, by: &Word) -> Word {
        self.try_conjugate(by).expect("rank mismatch in conjugate")
    }

    /// `[self, other] = self * other * self^-1 * other^-1`.
    pub fn try_commutator(&self, other: &Word) -> Result<Word> {
        same_rank(self, other)?;
        Ok(self
            .mul_unchecked(other)
            .mul_unchecked(&self.inverse())
            .mul_unchecked(&other.inverse()))
    }

    pub fn commutator(&self, other: &Word) -> Word {
        self.try_commutator(other)
            .expect("rank mismatch in commutator")
    }

    /// Product of a sequence of words of the given rank.
    pub fn product<'a>(rank: u32, words: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut acc = Word::identity(rank);
        for w in words {
            acc = acc.mul(w);
        }
        acc
    }

    /// Substitutes an image word for every generator and reduces.
    pub fn apply_homomorphism(&self, images: &HashMap<Generator, Word>) -> Result<Word> {
        let mut image_rank = None;
        for g in Generator::all(self.rank) {
            let w = images.get(&g).ok_or(Error::MissingImage(g))?;
            match image_rank {
                None => image_rank = Some(w.rank),
                Some(r) if r != w.rank => {
                    return Err(Error::RankMismatch {
                        left: r,
                        right: w.rank,
                    })
                }
                _ => {}
            }
        }
        let rank = image_rank.unwrap_or(self.rank);
        let inverses: HashMap<Generator, Word> =
            images.iter().map(|(g, w)| (*g, w.inverse())).collect();
        let mut out = Vec::new();
        for l in &self.letters {
            let g = l.generator();
            let img = if l.sign() > 0 { &images[&g] } else { &inverses[&g] };
            for &m in &img.letters {
                push_reduced(&mut out, m);
            }
        }
        Ok(Word { rank, letters: out })
    }

    /// Splits `self = conjugator * core * conjugator^-1` with `core`
    /// cyclically reduced.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let n = self.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k] == self.letters[n - 1 - k].inverse() {
            k += 1;
        }
        let core = Word {
            rank: self.rank,
            letters: self.letters[k..n - k].to_vec(),
        };
        let conj = Word {
            rank: self.rank,
            letters: self.letters[..k].to_vec(),
        };
        (core, conj)
    }

    /// Parses the textual form, e.g. `"x1 y1^-2 x1^-1"` or `"1"`.
    pub fn parse(text: &str, rank: u32) -> Result<Self> {
        check_rank(rank)?;
        let letters = parse_letters(text)?;
        Word::reduce(letters, rank)
    }

    /// Parses with the smallest rank that holds every subscript (at least 1).
    pub fn parse_auto(text: &str) -> Result<Self> {
        let letters = parse_letters(text)?;
        let rank = letters
            .iter()
            .map(|l| l.generator().index)
            .max()
            .unwrap_or(1)
            .max(1);
        Word::reduce(letters, rank)
    }

    /// Same letters viewed in a larger rank.
    pub fn widen(&self, rank: u32) -> Result<Word> {
        if rank < self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: rank,
            });
        }
        Ok(Word {
            rank,
            letters: self.letters.clone(),
        })
    }
}

fn parse_letters(text: &str) -> Result<Vec<Letter>> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let digits = |pos: &mut usize| -> Option<(usize, usize)> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (*pos > start).then_some((start, *pos))
    };
    let err = |pos: usize, msg: &str| Error::Syntax {
        pos,
        msg: msg.to_string(),
    };

    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(err(pos, "empty word; write 1 for the identity"));
    }
    if bytes[pos] == b'1' {
        let start = pos;
        pos += 1;
        skip_ws(&mut pos);
        if pos != bytes.len() {
            return Err(err(start, "identity must stand alone"));
        }
        return Ok(Vec::new());
    }

    let mut letters = Vec::new();
    while pos < bytes.len() {
        let kind = match bytes[pos] {
            b'x' => Kind::X,
            b'y' => Kind::Y,
            _ => return Err(err(pos, "expected generator x<i> or y<i>")),
        };
        pos += 1;
        let (s, e) = digits(&mut pos).ok_or_else(|| err(pos, "expected subscript"))?;
        let index: u32 = text[s..e]
            .parse()
            .map_err(|_| err(s, "subscript out of range"))?;
        if index == 0 || bytes[s] == b'0' {
            return Err(err(s, "subscript must be a positive integer"));
        }
        let mut exp: i64 = 1;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let neg = if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
                pos += 1;
                bytes[pos - 1] == b'-'
            } else {
                false
            };
            let (s, e) = digits(&mut pos).ok_or_else(|| err(pos, "expected exponent"))?;
            let v: i64 = text[s..e]
                .parse()
                .map_err(|_| err(s, "exponent out of range"))?;
            if v == 0 {
                return Err(err(s, "exponent must be nonzero"));
            }
            exp = if neg { -v } else { v };
        }
        let l = Letter::new(Generator { kind, index }, exp > 0);
        letters.extend(std::iter::repeat(l).take(exp.unsigned_abs() as usize));
        let before = pos;
        skip_ws(&mut pos);
        if pos < bytes.len() && pos == before {
            return Err(err(pos, "expected whitespace between terms"));
        }
    }
    Ok(letters)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for run in self.letters.chunk_by(|a, b| a == b) {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let e = run.len() as i64 * run[0].sign() as i64;
            if e == 1 {
                write!(f, "{}", run[0].generator())?;
            } else {
                write!(f, "{}^{e}", run[0].generator())?;
            }
        }
        Ok(())
    }
}

/// `B_g = [x_1, y_1] ... [x_g, y_g]`.
pub fn basic_commutator(g: u32) -> Result<Word> {
    check_rank(g)?;
    Ok((1..=g).fold(Word::identity(g), |acc, i| {
        acc.mul(&Word::x(g, i).commutator(&Word::y(g, i)))
    }))
}
