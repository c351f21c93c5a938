//! Finite presentations: Van Buskirk's presentation of the projective-plane
//! braid groups, the sphere and annulus braid groups, and small finite groups
//! (dicyclic, dihedral, binary polyhedral, their quotients).
//!
//! A relator `r` stands for the relation `r = 1`; relations `u = v` are stored
//! as the free reduction of `u·v⁻¹`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{BraidWord, Generator, GeneratorKind, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("strand count {0} is not allowed here")]
    BadStrandCount(u32),
    #[error("invalid parameter {0} for this family")]
    BadParameter(u32),
    #[error("relator {index} uses generator {generator} outside the generator list")]
    UnknownGenerator { index: usize, generator: Generator },
    #[error("relator {0} is empty")]
    EmptyRelator(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<Generator>,
    pub relators: Vec<BraidWord>,
}

/// Letters encoded as `±(generator position + 1)`.
pub type Code = i32;

impl Presentation {
    pub fn new(name: impl Into<String>, generators: Vec<Generator>) -> Self {
        Presentation { name: name.into(), generators, relators: Vec::new() }
    }

    /// Adds the relation `lhs = rhs`, skipping it if it is freely trivial.
    pub fn relate(&mut self, lhs: &BraidWord, rhs: &BraidWord) {
        self.add_relator(lhs.concat(&rhs.invert()));
    }

    pub fn add_relator(&mut self, r: BraidWord) {
        let r = r.free_reduce();
        if !r.is_empty() {
            self.relators.push(r);
        }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, g: Generator) -> Option<usize> {
        self.generators.iter().position(|&h| h == g)
    }

    pub fn validate(&self) -> Result<(), PresentationError> {
        for (index, r) in self.relators.iter().enumerate() {
            if r.is_empty() {
                return Err(PresentationError::EmptyRelator(index));
            }
            if let Some(generator) = r.generators().find(|&g| self.generator_index(g).is_none()) {
                return Err(PresentationError::UnknownGenerator { index, generator });
            }
        }
        Ok(())
    }

    /// Whether every letter of `w` is one of the generators.
    pub fn accepts(&self, w: &BraidWord) -> bool {
        w.generators().all(|g| self.generator_index(g).is_some())
    }

    pub fn encode(&self, w: &BraidWord) -> Option<Vec<Code>> {
        w.letters
            .iter()
            .map(|l| {
                let i = self.generator_index(l.generator)? as Code + 1;
                Some(if l.exponent > 0 { i } else { -i })
            })
            .collect()
    }

    pub fn decode(&self, code: &[Code]) -> BraidWord {
        BraidWord::from_letters(
            code.iter()
                .map(|&c| {
                    let g = self.generators[c.unsigned_abs() as usize - 1];
                    Letter::new(g, if c > 0 { 1 } else { -1 })
                })
                .collect(),
        )
    }

    pub fn encoded_relators(&self) -> Vec<Vec<Code>> {
        self.relators.iter().map(|r| self.encode(r).expect("validated presentation")).collect()
    }

    pub fn longest_relator(&self) -> usize {
        self.relators.iter().map(BraidWord::len).max().unwrap_or(0)
    }
}

fn s(i: u32) -> BraidWord {
    BraidWord::single(Generator::sigma(i), 1)
}

fn si(i: u32) -> BraidWord {
    BraidWord::single(Generator::sigma(i), -1)
}

fn r(i: u32) -> BraidWord {
    BraidWord::single(Generator::rho(i), 1)
}

fn x(i: u32) -> BraidWord {
    BraidWord::single(Generator::x(i), 1)
}

fn cat(parts: &[&BraidWord]) -> BraidWord {
    let mut out = BraidWord::empty();
    for p in parts {
        out.extend(p);
    }
    out
}

/// σ_a σ_{a+1} ⋯ σ_b (empty when a > b).
pub fn ascending(a: u32, b: u32) -> BraidWord {
    let mut w = BraidWord::empty();
    for i in a..=b {
        w.push(Generator::sigma(i), 1);
    }
    w
}

/// σ_b σ_{b-1} ⋯ σ_a (empty when a > b).
pub fn descending(a: u32, b: u32) -> BraidWord {
    let mut w = BraidWord::empty();
    for i in (a..=b).rev() {
        w.push(Generator::sigma(i), 1);
    }
    w
}

fn artin_relations(p: &mut Presentation, m: u32) {
    for i in 1..m {
        for j in (i + 2)..m {
            p.relate(&cat(&[&s(i), &s(j)]), &cat(&[&s(j), &s(i)]));
        }
    }
    for i in 1..m.saturating_sub(1) {
        p.relate(&cat(&[&s(i), &s(i + 1), &s(i)]), &cat(&[&s(i + 1), &s(i), &s(i + 1)]));
    }
}

/// σ_1 ⋯ σ_{m-2} σ_{m-1}² σ_{m-2} ⋯ σ_1
fn surface_loop(m: u32) -> BraidWord {
    if m < 2 {
        return BraidWord::empty();
    }
    cat(&[&ascending(1, m - 1), &descending(1, m - 1)])
}

/// Van Buskirk's presentation of B_n(RP²).
pub fn van_buskirk(n: u32) -> Result<Presentation, PresentationError> {
    if n == 0 {
        return Err(PresentationError::BadStrandCount(n));
    }
    let mut gens: Vec<Generator> = (1..n).map(Generator::sigma).collect();
    gens.extend((1..=n).map(Generator::rho));
    let mut p = Presentation::new(format!("B{n}(RP2)"), gens);
    artin_relations(&mut p, n);
    for i in 1..n {
        for j in 1..=n {
            if j != i && j != i + 1 {
                p.relate(&cat(&[&s(i), &r(j)]), &cat(&[&r(j), &s(i)]));
            }
        }
    }
    for i in 1..n {
        p.relate(&r(i + 1), &cat(&[&si(i), &r(i), &si(i)]));
    }
    for i in 1..n {
        let lhs = cat(&[&r(i + 1).invert(), &r(i).invert(), &r(i + 1), &r(i)]);
        p.relate(&lhs, &s(i).pow(2));
    }
    p.relate(&r(1).pow(2), &surface_loop(n));
    Ok(p)
}

/// Artin relations plus the sphere relator σ_1 ⋯ σ_{m-1}² ⋯ σ_1.
pub fn sphere_presentation(m: u32) -> Result<Presentation, PresentationError> {
    if m < 2 {
        return Err(PresentationError::BadStrandCount(m));
    }
    let mut p = Presentation::new(format!("B{m}(S2)"), (1..m).map(Generator::sigma).collect());
    artin_relations(&mut p, m);
    p.add_relator(surface_loop(m));
    Ok(p)
}

/// Type-B presentation of the annulus braid group: σ_1..σ_{n-1} and the loop τ.
pub fn annulus_presentation(n: u32) -> Result<Presentation, PresentationError> {
    if n == 0 {
        return Err(PresentationError::BadStrandCount(n));
    }
    let mut gens: Vec<Generator> = (1..n).map(Generator::sigma).collect();
    gens.push(Generator::tau());
    let mut p = Presentation::new(format!("B{n}(Ann)"), gens);
    artin_relations(&mut p, n);
    let t = BraidWord::single(Generator::tau(), 1);
    if n >= 2 {
        p.relate(&cat(&[&t, &s(1), &t, &s(1)]), &cat(&[&s(1), &t, &s(1), &t]));
    }
    for i in 2..n {
        p.relate(&cat(&[&t, &s(i)]), &cat(&[&s(i), &t]));
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedElement {
    /// σ_{n-1}⁻¹ ⋯ σ_1⁻¹ ρ_1, of order 4n.
    A,
    /// σ_{n-2}⁻¹ ⋯ σ_1⁻¹ ρ_1, of order 4(n-1).
    B,
    /// The half twist Δ.
    Delta,
    /// Δ² = (σ_1 ⋯ σ_{n-1})^n.
    FullTwist,
    /// ρ_j written as σ_{j-1}⁻¹ ⋯ σ_1⁻¹ ρ_1 σ_1⁻¹ ⋯ σ_{j-1}⁻¹.
    RhoExpanded(u32),
}

pub fn named_element(name: NamedElement, n: u32) -> Result<BraidWord, PresentationError> {
    if n == 0 {
        return Err(PresentationError::BadStrandCount(n));
    }
    Ok(match name {
        NamedElement::A => cat(&[&descending(1, n - 1).mirror(), &r(1)]),
        NamedElement::B => {
            if n < 2 {
                return Err(PresentationError::BadStrandCount(n));
            }
            cat(&[&descending(1, n - 2).mirror(), &r(1)])
        }
        NamedElement::Delta => {
            let mut w = BraidWord::empty();
            for k in (1..n).rev() {
                w.extend(&ascending(1, k));
            }
            w
        }
        NamedElement::FullTwist => ascending(1, n - 1).pow(n as usize),
        NamedElement::RhoExpanded(j) => {
            if j == 0 || j > n {
                return Err(PresentationError::BadParameter(j));
            }
            let left = descending(1, j - 1).mirror();
            let right = ascending(1, j - 1).mirror();
            cat(&[&left, &r(1), &right])
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FiniteFamily {
    /// Z_k.
    Cyclic(u32),
    /// Dicyclic group of order 4m: ⟨x, y | x^m = y², y x y⁻¹ = x⁻¹⟩.
    Dic(u32),
    /// Dihedral group of order 2k.
    Dih(u32),
    Q8,
    /// Binary tetrahedral, octahedral and icosahedral groups.
    TStar,
    OStar,
    IStar,
    /// Rotation groups of the regular polyhedra.
    Alt4,
    Sym4,
    Alt5,
}

impl FiniteFamily {
    /// Order the presentation enumerates to.
    pub fn order(self) -> u64 {
        match self {
            FiniteFamily::Cyclic(k) => u64::from(k),
            FiniteFamily::Dic(m) => 4 * u64::from(m),
            FiniteFamily::Dih(k) => 2 * u64::from(k),
            FiniteFamily::Q8 => 8,
            FiniteFamily::TStar => 24,
            FiniteFamily::OStar => 48,
            FiniteFamily::IStar => 120,
            FiniteFamily::Alt4 => 12,
            FiniteFamily::Sym4 => 24,
            FiniteFamily::Alt5 => 60,
        }
    }
}

impl core::fmt::Display for FiniteFamily {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FiniteFamily::Cyclic(k) => write!(f, "Z{k}"),
            FiniteFamily::Dic(m) => write!(f, "Dic{}", 4 * m),
            FiniteFamily::Dih(k) => write!(f, "Dih{}", 2 * k),
            FiniteFamily::Q8 => f.write_str("Q8"),
            FiniteFamily::TStar => f.write_str("T*"),
            FiniteFamily::OStar => f.write_str("O*"),
            FiniteFamily::IStar => f.write_str("I*"),
            FiniteFamily::Alt4 => f.write_str("A4"),
            FiniteFamily::Sym4 => f.write_str("S4"),
            FiniteFamily::Alt5 => f.write_str("A5"),
        }
    }
}

fn dicyclic(name: &str, m: u32) -> Presentation {
    let mut p = Presentation::new(name, alloc::vec![Generator::x(1), Generator::x(2)]);
    p.relate(&x(1).pow(m as usize), &x(2).pow(2));
    p.relate(&cat(&[&x(2), &x(1), &x(2).invert()]), &x(1).invert());
    p
}

/// ⟨p, q, r | p² = q³ = r^k = pqr⟩
fn binary_polyhedral(name: &str, k: u32) -> Presentation {
    let mut p = Presentation::new(name, (1..=3).map(Generator::x).collect());
    let pqr = cat(&[&x(1), &x(2), &x(3)]);
    p.relate(&x(1).pow(2), &pqr);
    p.relate(&x(2).pow(3), &pqr);
    p.relate(&x(3).pow(k as usize), &pqr);
    p
}

/// ⟨x, y | x², y³, (xy)^k⟩
fn triangle(name: &str, k: u32) -> Presentation {
    let mut p = Presentation::new(name, (1..=2).map(Generator::x).collect());
    p.add_relator(x(1).pow(2));
    p.add_relator(x(2).pow(3));
    p.add_relator(cat(&[&x(1), &x(2)]).pow(k as usize));
    p
}

pub fn finite_group_presentation(family: FiniteFamily) -> Result<Presentation, PresentationError> {
    let name = format!("{family}");
    Ok(match family {
        FiniteFamily::Cyclic(k) => {
            if k == 0 {
                return Err(PresentationError::BadParameter(k));
            }
            let mut p = Presentation::new(name, alloc::vec![Generator::x(1)]);
            p.add_relator(x(1).pow(k as usize));
            p
        }
        FiniteFamily::Dic(m) if m < 2 => return Err(PresentationError::BadParameter(m)),
        FiniteFamily::Dic(m) => dicyclic(&name, m),
        FiniteFamily::Q8 => dicyclic(&name, 2),
        FiniteFamily::Dih(k) => {
            if k == 0 {
                return Err(PresentationError::BadParameter(k));
            }
            let mut p = Presentation::new(name, alloc::vec![Generator::x(1), Generator::x(2)]);
            p.add_relator(x(1).pow(k as usize));
            p.add_relator(x(2).pow(2));
            p.add_relator(cat(&[&x(1), &x(2)]).pow(2));
            p
        }
        FiniteFamily::TStar => binary_polyhedral(&name, 3),
        FiniteFamily::OStar => binary_polyhedral(&name, 4),
        FiniteFamily::IStar => binary_polyhedral(&name, 5),
        FiniteFamily::Alt4 => triangle(&name, 3),
        FiniteFamily::Sym4 => triangle(&name, 4),
        FiniteFamily::Alt5 => triangle(&name, 5),
    })
}

/// The one-relator presentation ⟨x | x⟩ of the trivial group.
pub fn trivial_presentation() -> Presentation {
    let mut p = Presentation::new("1", alloc::vec![Generator::x(1)]);
    p.add_relator(x(1));
    p
}

pub fn is_sigma_only(w: &BraidWord) -> bool {
    w.generators().all(|g| g.kind == GeneratorKind::Sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn w(s: &str) -> BraidWord {
        parse_word(s).unwrap()
    }

    #[test]
    fn van_buskirk_two_strands() {
        let p = van_buskirk(2).unwrap();
        assert_eq!(p.generators, alloc::vec![Generator::sigma(1), Generator::rho(1), Generator::rho(2)]);
        assert_eq!(
            p.relators,
            alloc::vec![w("r2 s1 r1^-1 s1"), w("r2^-1 r1^-1 r2 r1 s1^-1 s1^-1"), w("r1 r1 s1^-1 s1^-1")]
        );
        p.validate().unwrap();
    }

    #[test]
    fn van_buskirk_small_cases() {
        let p1 = van_buskirk(1).unwrap();
        assert_eq!(p1.generators, alloc::vec![Generator::rho(1)]);
        assert_eq!(p1.relators, alloc::vec![w("r1 r1")]);
        assert!(van_buskirk(0).is_err());
        // 1 braid + 2 σρ commutations + 2 + 2 + 1 surface
        let p3 = van_buskirk(3).unwrap();
        assert_eq!(p3.rank(), 5);
        assert_eq!(p3.relators.len(), 8);
    }

    #[test]
    fn sphere_and_annulus() {
        let p = sphere_presentation(2).unwrap();
        assert_eq!(p.relators, alloc::vec![w("s1 s1")]);
        let p = sphere_presentation(3).unwrap();
        assert_eq!(p.relators, alloc::vec![w("s1 s2 s1 s2^-1 s1^-1 s2^-1"), w("s1 s2 s2 s1")]);
        let p = sphere_presentation(4).unwrap();
        assert_eq!((p.rank(), p.relators.len()), (3, 4));
        assert!(sphere_presentation(1).is_err());

        let a1 = annulus_presentation(1).unwrap();
        assert_eq!((a1.rank(), a1.relators.len()), (1, 0));
        let a2 = annulus_presentation(2).unwrap();
        assert_eq!(a2.relators, alloc::vec![w("t1 s1 t1 s1 t1^-1 s1^-1 t1^-1 s1^-1")]);
        let a3 = annulus_presentation(3).unwrap();
        assert!(a3.relators.contains(&w("t1 s2 t1^-1 s2^-1")));
    }

    #[test]
    fn named_elements() {
        assert_eq!(named_element(NamedElement::A, 3).unwrap(), w("s2^-1 s1^-1 r1"));
        assert_eq!(named_element(NamedElement::B, 3).unwrap(), w("s1^-1 r1"));
        assert_eq!(named_element(NamedElement::B, 2).unwrap(), w("r1"));
        assert!(named_element(NamedElement::B, 1).is_err());
        assert_eq!(named_element(NamedElement::Delta, 2).unwrap(), w("s1"));
        assert_eq!(named_element(NamedElement::Delta, 3).unwrap(), w("s1 s2 s1"));
        assert_eq!(named_element(NamedElement::FullTwist, 3).unwrap(), w("s1 s2 s1 s2 s1 s2"));
        assert_eq!(named_element(NamedElement::RhoExpanded(3), 3).unwrap(), w("s2^-1 s1^-1 r1 s1^-1 s2^-1"));
        assert_eq!(named_element(NamedElement::RhoExpanded(1), 3).unwrap(), w("r1"));
        assert!(named_element(NamedElement::RhoExpanded(4), 3).is_err());
    }

    #[test]
    fn finite_families_validate() {
        for f in [
            FiniteFamily::Cyclic(1),
            FiniteFamily::Cyclic(5),
            FiniteFamily::Dic(2),
            FiniteFamily::Dic(7),
            FiniteFamily::Dih(6),
            FiniteFamily::Q8,
            FiniteFamily::TStar,
            FiniteFamily::OStar,
            FiniteFamily::IStar,
            FiniteFamily::Sym4,
            FiniteFamily::Alt5,
        ] {
            finite_group_presentation(f).unwrap().validate().unwrap();
        }
        assert!(finite_group_presentation(FiniteFamily::Dic(1)).is_err());
        assert!(finite_group_presentation(FiniteFamily::Dih(0)).is_err());
    }

    #[test]
    fn relators_are_permutation_trivial() {
        for n in 1..=8 {
            let p = van_buskirk(n).unwrap();
            for r in &p.relators {
                assert!(r.permutation_image(n).unwrap().is_identity(), "n={n} relator {r}");
            }
        }
    }

    #[test]
    fn sphere_relator_exponent() {
        for m in 2..=7u32 {
            let p = sphere_presentation(m).unwrap();
            let last = p.relators.last().unwrap();
            assert_eq!(last.exponent_sums().sigma, 2 * (i64::from(m) - 1));
        }
    }
}
