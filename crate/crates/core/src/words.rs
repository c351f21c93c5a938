//! Braid words over the σ / ρ / τ alphabets, free reduction and the two
//! homomorphisms every other module leans on: the strand permutation and
//! the exponent sums.
//!
//! Words are read left to right in temporal order: the first letter is the
//! first crossing the strands perform.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GeneratorKind {
    /// Disc crossing σ_i between strands i and i+1.
    Sigma,
    /// Surface loop ρ_i of strand i through the cross-cap.
    Rho,
    /// Annulus loop τ of the first strand around the hole.
    Tau,
    /// Abstract letter of a finite group presentation.
    X,
}

impl GeneratorKind {
    fn prefix(self) -> char {
        match self {
            GeneratorKind::Sigma => 's',
            GeneratorKind::Rho => 'r',
            GeneratorKind::Tau => 't',
            GeneratorKind::X => 'x',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub kind: GeneratorKind,
    /// 1-based index.
    pub index: u32,
}

impl Generator {
    pub const fn sigma(index: u32) -> Self {
        Generator { kind: GeneratorKind::Sigma, index }
    }

    pub const fn rho(index: u32) -> Self {
        Generator { kind: GeneratorKind::Rho, index }
    }

    pub const fn tau() -> Self {
        Generator { kind: GeneratorKind::Tau, index: 1 }
    }

    pub const fn x(index: u32) -> Self {
        Generator { kind: GeneratorKind::X, index }
    }

    /// Checks the index against an ambient strand count.
    pub fn check(&self, n: u32) -> Result<(), WordError> {
        let ok = match self.kind {
            GeneratorKind::Sigma => self.index >= 1 && self.index < n,
            GeneratorKind::Rho => self.index >= 1 && self.index <= n,
            GeneratorKind::Tau => self.index == 1,
            GeneratorKind::X => self.index >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(WordError::OutOfBounds { generator: *self, n })
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.prefix(), self.index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: Generator,
    /// +1 or -1.
    pub exponent: i8,
}

impl Letter {
    pub const fn new(generator: Generator, exponent: i8) -> Self {
        Letter { generator, exponent }
    }

    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, exponent: -self.exponent }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.exponent == -other.exponent
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent < 0 {
            write!(f, "{}^-1", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("malformed token {0:?}")]
    Malformed(String),
    #[error("bad generator index in token {0:?}")]
    BadIndex(String),
    #[error("generator {generator} out of bounds for {n} strands")]
    OutOfBounds { generator: Generator, n: u32 },
}

/// A braid word: letters in temporal order. Concatenation never reduces.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct BraidWord {
    pub letters: Vec<Letter>,
}

impl BraidWord {
    pub fn empty() -> Self {
        BraidWord { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        BraidWord { letters }
    }

    pub fn single(generator: Generator, exponent: i8) -> Self {
        BraidWord { letters: alloc::vec![Letter::new(generator, exponent)] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    pub fn push(&mut self, generator: Generator, exponent: i8) {
        self.letters.push(Letter::new(generator, exponent));
    }

    pub fn extend(&mut self, other: &BraidWord) {
        self.letters.extend_from_slice(&other.letters);
    }

    /// `self` repeated `k` times.
    pub fn pow(&self, k: usize) -> BraidWord {
        let mut letters = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        BraidWord { letters }
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Every letter inverted in place, order kept.
    pub fn mirror(&self) -> BraidWord {
        BraidWord { letters: self.letters.iter().map(|l| l.inverse()).collect() }
    }

    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        BraidWord { letters: out }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// Every generator index valid for `n` strands.
    pub fn check(&self, n: u32) -> Result<(), WordError> {
        self.letters.iter().try_for_each(|l| l.generator.check(n))
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.letters.iter().map(|l| l.generator)
    }

    pub fn permutation_image(&self, n: u32) -> Result<Permutation, WordError> {
        let mut perm = Permutation::identity(n as usize);
        for l in &self.letters {
            l.generator.check(n)?;
            if l.generator.kind == GeneratorKind::Sigma {
                // π(uv) = π(v)∘π(u): apply the new transposition after the old map.
                let i = l.generator.index as usize - 1;
                for img in perm.images.iter_mut() {
                    if *img == i {
                        *img = i + 1;
                    } else if *img == i + 1 {
                        *img = i;
                    }
                }
            }
        }
        Ok(perm)
    }

    /// `self` followed by σ letters that sort the strands back, so the result is pure.
    pub fn pure_closure(&self, n: u32) -> Result<BraidWord, WordError> {
        // Strand at each position, bubble-sorted with adjacent transpositions.
        let inv = self.permutation_image(n)?.inverse();
        let mut at: Vec<usize> = (0..n as usize).map(|p| inv.apply(p)).collect();
        let mut out = self.clone();
        let mut swapped = true;
        while swapped {
            swapped = false;
            for k in 0..at.len().saturating_sub(1) {
                if at[k] > at[k + 1] {
                    at.swap(k, k + 1);
                    out.push(Generator::sigma(k as u32 + 1), 1);
                    swapped = true;
                }
            }
        }
        Ok(out)
    }

    pub fn exponent_sums(&self) -> ExponentSums {
        let mut sums = ExponentSums::default();
        for l in &self.letters {
            let e = i64::from(l.exponent);
            match l.generator.kind {
                GeneratorKind::Sigma => sums.sigma += e,
                GeneratorKind::Rho => sums.rho += e,
                GeneratorKind::Tau => sums.tau += e,
                GeneratorKind::X => {}
            }
        }
        sums
    }

    /// Replaces every letter by a word. Letters with negative exponent map to the inverse image.
    pub fn substitute(&self, mut image: impl FnMut(Generator) -> BraidWord) -> BraidWord {
        let mut out = BraidWord::empty();
        for l in &self.letters {
            let w = image(l.generator);
            if l.exponent > 0 {
                out.extend(&w);
            } else {
                out.extend(&w.invert());
            }
        }
        out
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn parse_token(tok: &str) -> Result<Letter, WordError> {
    let malformed = || WordError::Malformed(tok.into());
    let mut chars = tok.chars();
    let kind = match chars.next() {
        Some('s') => GeneratorKind::Sigma,
        Some('r') => GeneratorKind::Rho,
        Some('t') => GeneratorKind::Tau,
        Some('x') => GeneratorKind::X,
        _ => return Err(malformed()),
    };
    let rest = chars.as_str();
    let (digits, exponent) = match rest.strip_suffix("^-1") {
        Some(d) => (d, -1),
        None => (rest, 1),
    };
    if digits.starts_with('-') {
        return Err(WordError::BadIndex(tok.into()));
    }
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let index: u32 = digits.parse().map_err(|_| WordError::BadIndex(tok.into()))?;
    if index == 0 {
        return Err(WordError::BadIndex(tok.into()));
    }
    Ok(Letter::new(Generator { kind, index }, exponent))
}

pub fn parse_word(text: &str) -> Result<BraidWord, WordError> {
    let letters = text.split_whitespace().map(parse_token).collect::<Result<Vec<_>, _>>()?;
    Ok(BraidWord { letters })
}

impl FromStr for BraidWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

impl From<BraidWord> for String {
    fn from(w: BraidWord) -> String {
        alloc::format!("{w}")
    }
}

impl TryFrom<String> for BraidWord {
    type Error = WordError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        parse_word(&s)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentSums {
    pub sigma: i64,
    pub rho: i64,
    pub tau: i64,
}

impl core::ops::Add for ExponentSums {
    type Output = ExponentSums;

    fn add(self, o: ExponentSums) -> ExponentSums {
        ExponentSums { sigma: self.sigma + o.sigma, rho: self.rho + o.rho, tau: self.tau + o.tau }
    }
}

impl core::ops::Neg for ExponentSums {
    type Output = ExponentSums;

    fn neg(self) -> ExponentSums {
        ExponentSums { sigma: -self.sigma, rho: -self.rho, tau: -self.tau }
    }
}

/// A permutation of `0..n` (displayed 1-based). `images[i]` is where point `i` goes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Permutation {
    pub images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation { images })
    }

    /// Builds from 1-based images.
    pub fn from_one_based(images: &[usize]) -> Option<Self> {
        if images.contains(&0) {
            return None;
        }
        Self::from_images(images.iter().map(|i| i - 1).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn order(&self) -> usize {
        let n = self.degree();
        let mut seen = alloc::vec![false; n];
        let mut order = 1usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut out = Permutation::identity(self.degree());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.images[i];
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, i) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", i + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BraidWord {
        parse_word(s).unwrap()
    }

    #[test]
    fn parses_tokens() {
        let word = w("s1 s2^-1 r1");
        assert_eq!(
            word.letters,
            alloc::vec![
                Letter::new(Generator::sigma(1), 1),
                Letter::new(Generator::sigma(2), -1),
                Letter::new(Generator::rho(1), 1),
            ]
        );
        assert!(w("").is_empty());
        assert!(w("   ").is_empty());
        assert!(matches!(parse_word("s0"), Err(WordError::BadIndex(_))));
        assert!(matches!(parse_word("s-1"), Err(WordError::BadIndex(_))));
        assert!(matches!(parse_word("q1"), Err(WordError::Malformed(_))));
        assert!(matches!(parse_word("s"), Err(WordError::Malformed(_))));
        assert!(matches!(parse_word("s1^2"), Err(WordError::Malformed(_))));
    }

    #[test]
    fn free_reduction() {
        assert!(w("s1 s1^-1").free_reduce().is_empty());
        assert!(w("r1 s1 s1^-1 r1^-1").free_reduce().is_empty());
        assert_eq!(w("s1 s2").free_reduce(), w("s1 s2"));
        assert_eq!(w("s1 s2 s2^-1 s3").free_reduce(), w("s1 s3"));
    }

    #[test]
    fn inversion() {
        assert_eq!(w("s1 r2").invert(), w("r2^-1 s1^-1"));
        assert!(BraidWord::empty().invert().is_empty());
        assert_eq!(w("s1^-1").invert(), w("s1"));
    }

    #[test]
    fn permutation_of_generators() {
        let p = w("s1").permutation_image(2).unwrap();
        assert_eq!(p, Permutation::transposition(2, 0, 1));
        assert!(w("r1").permutation_image(3).unwrap().is_identity());
        // a(3): 1 -> 2 -> 3 -> 1
        let a = w("s2^-1 s1^-1 r1").permutation_image(3).unwrap();
        assert_eq!(a, Permutation::from_one_based(&[2, 3, 1]).unwrap());
        assert!(w("s3").permutation_image(3).is_err());
        assert!(w("r4").permutation_image(3).is_err());
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(w("s1 s2 s1").exponent_sums(), ExponentSums { sigma: 3, rho: 0, tau: 0 });
        assert_eq!(
            w("s3^-1 s2^-1 s1^-1 r1").exponent_sums(),
            ExponentSums { sigma: -3, rho: 1, tau: 0 }
        );
        assert_eq!(w("s1 s2").pow(3).exponent_sums().sigma, 6);
    }

    #[test]
    fn permutation_display_and_order() {
        let p = Permutation::from_one_based(&[2, 3, 1, 5, 4]).unwrap();
        assert_eq!(alloc::format!("{p}"), "(1 2 3)(4 5)");
        assert_eq!(p.order(), 6);
        assert!(p.pow(6).is_identity());
        assert!(p.compose(&p.inverse()).is_identity());
    }
}
