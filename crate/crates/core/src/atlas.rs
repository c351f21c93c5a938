//! Classification tables for finite subgroups, the candidate-elimination
//! arithmetic, and the verification suite that gathers every check for one n.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::covering::verify_relator_images;
use crate::enumeration::{center_and_quotient, isomorphic, materialize, pure_elements, GroupTable};
use crate::oracles::SphereVerdict;
use crate::presentations::{finite_group_presentation, named_element, van_buskirk, FiniteFamily, NamedElement};
use crate::rewriting::{certify_claims, verify_derivation, Budget, ClaimCertificate, Derivation, SearchMode};
use crate::words::{gcd, BraidWord};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtlasError {
    #[error("n = {n} is out of range for {surface}")]
    OutOfRange { surface: SurfaceKind, n: u32 },
    #[error("unknown surface `{0}`")]
    UnknownSurface(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurfaceKind {
    /// Braid groups of the projective plane.
    Rp2,
    /// Braid groups of the sphere.
    S2,
    /// Mapping class groups of the projective plane with n marked points.
    McgRp2,
}

impl SurfaceKind {
    pub fn min_n(self) -> u32 {
        match self {
            SurfaceKind::Rp2 | SurfaceKind::McgRp2 => 2,
            SurfaceKind::S2 => 3,
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceKind::Rp2 => "rp2",
            SurfaceKind::S2 => "s2",
            SurfaceKind::McgRp2 => "mcg_rp2",
        })
    }
}

impl core::str::FromStr for SurfaceKind {
    type Err = AtlasError;

    fn from_str(s: &str) -> Result<Self, AtlasError> {
        match s {
            "rp2" => Ok(SurfaceKind::Rp2),
            "s2" => Ok(SurfaceKind::S2),
            "mcg_rp2" => Ok(SurfaceKind::McgRp2),
            _ => Err(AtlasError::UnknownSurface(s.into())),
        }
    }
}

/// `(n ≥ from or n ∈ also) and n mod modulus ∈ residues`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub modulus: u32,
    pub residues: Vec<u32>,
    pub from: u32,
    pub also: Vec<u32>,
}

impl Condition {
    pub fn always() -> Self {
        Condition { modulus: 1, residues: vec![0], from: 0, also: Vec::new() }
    }

    pub fn at_least(from: u32) -> Self {
        Condition { from, ..Condition::always() }
    }

    pub fn residues(modulus: u32, residues: &[u32]) -> Self {
        Condition { modulus, residues: residues.to_vec(), from: 0, also: Vec::new() }
    }

    pub fn holds(&self, n: u32) -> bool {
        (n >= self.from || self.also.contains(&n)) && self.residues.contains(&(n % self.modulus))
    }

    /// The condition on n equivalent to this condition on 2n.
    pub fn halved(&self) -> Condition {
        let m = self.modulus;
        let (modulus, mut residues) = if m % 2 == 0 {
            (m / 2, self.residues.iter().filter(|r| *r % 2 == 0).map(|r| r / 2).collect::<Vec<_>>())
        } else {
            // 2 is invertible mod m with inverse (m + 1)/2.
            (m, self.residues.iter().map(|r| (r * (m + 1) / 2) % m).collect())
        };
        residues.sort_unstable();
        residues.dedup();
        Condition {
            modulus: modulus.max(1),
            residues,
            from: self.from.div_ceil(2),
            also: self.also.iter().filter(|v| *v % 2 == 0).map(|v| v / 2).collect(),
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.from > 0 {
            let mut s = String::new();
            for v in &self.also {
                s.push_str(&format!("n = {v} or "));
            }
            s.push_str(&format!("n ≥ {}", self.from));
            parts.push(s);
        }
        if self.modulus > 1 {
            let r: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
            parts.push(format!("n ≡ {} (mod {})", r.join(","), self.modulus));
        }
        if parts.is_empty() {
            f.write_str("all n")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    Cyclic,
    Dic,
    Dih,
    TStar,
    OStar,
    IStar,
    Sym4,
    Alt5,
}

/// Family parameter `a·n + b`, in the convention of [`FiniteFamily`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Linear {
    pub a: i64,
    pub b: i64,
}

impl Linear {
    pub fn at(self, n: u32) -> i64 {
        self.a * i64::from(n) + self.b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationEntry {
    pub family: FamilyKind,
    pub parameter: Linear,
    pub condition: Condition,
    /// Which list and which item of it this entry transcribes.
    pub source: String,
}

impl ClassificationEntry {
    fn new(family: FamilyKind, a: i64, b: i64, condition: Condition, source: &str) -> Self {
        ClassificationEntry { family, parameter: Linear { a, b }, condition, source: source.into() }
    }

    pub fn group(&self, n: u32) -> FiniteFamily {
        let p = u32::try_from(self.parameter.at(n).max(0)).unwrap_or(0);
        match self.family {
            FamilyKind::Cyclic => FiniteFamily::Cyclic(p),
            FamilyKind::Dic => FiniteFamily::Dic(p),
            FamilyKind::Dih => FiniteFamily::Dih(p),
            FamilyKind::TStar => FiniteFamily::TStar,
            FamilyKind::OStar => FiniteFamily::OStar,
            FamilyKind::IStar => FiniteFamily::IStar,
            FamilyKind::Sym4 => FiniteFamily::Sym4,
            FamilyKind::Alt5 => FiniteFamily::Alt5,
        }
    }

    /// Symbolic name with the group order as a formula in n, e.g. `Dic(8(n-1))`.
    pub fn formula(&self) -> String {
        let mult = match self.family {
            FamilyKind::Cyclic => 1,
            FamilyKind::Dic => 4,
            FamilyKind::Dih => 2,
            FamilyKind::TStar => return "T*".into(),
            FamilyKind::OStar => return "O*".into(),
            FamilyKind::IStar => return "I*".into(),
            FamilyKind::Sym4 => return "S4".into(),
            FamilyKind::Alt5 => return "A5".into(),
        };
        let name = match self.family {
            FamilyKind::Cyclic => "Z",
            FamilyKind::Dic => "Dic",
            _ => "Dih",
        };
        let (k, c) = (mult * self.parameter.a, mult * self.parameter.b);
        let body = if c == 0 {
            format!("{k}n")
        } else if k != 0 && c % k == 0 {
            let d = c / k;
            if d < 0 {
                format!("{k}(n-{})", -d)
            } else {
                format!("{k}(n+{d})")
            }
        } else if c < 0 {
            format!("{k}n-{}", -c)
        } else {
            format!("{k}n+{c}")
        };
        format!("{name}({body})")
    }
}

/// The unevaluated list for a surface.
pub fn classification_rules(surface: SurfaceKind) -> Vec<ClassificationEntry> {
    use FamilyKind::*;
    let o_star = Condition::residues(3, &[0, 1]);
    let i_star = Condition::residues(15, &[0, 1, 6, 10]);
    match surface {
        SurfaceKind::Rp2 => vec![
            ClassificationEntry::new(Dic, 2, 0, Condition::always(), "rp2 maximal finite subgroups, item 1"),
            ClassificationEntry::new(Dic, 2, -2, Condition::at_least(3), "rp2 maximal finite subgroups, item 2"),
            ClassificationEntry::new(OStar, 0, 0, o_star, "rp2 maximal finite subgroups, item 3"),
            ClassificationEntry::new(IStar, 0, 0, i_star, "rp2 maximal finite subgroups, item 4"),
        ],
        SurfaceKind::S2 => vec![
            ClassificationEntry::new(Cyclic, 2, -2, Condition::at_least(5), "s2 maximal finite subgroups, item 1"),
            ClassificationEntry::new(Dic, 1, 0, Condition::always(), "s2 maximal finite subgroups, item 2"),
            ClassificationEntry::new(
                Dic,
                1,
                -2,
                Condition { from: 7, also: vec![5], ..Condition::always() },
                "s2 maximal finite subgroups, item 3",
            ),
            ClassificationEntry::new(TStar, 0, 0, Condition::residues(6, &[4]), "s2 maximal finite subgroups, item 4"),
            ClassificationEntry::new(OStar, 0, 0, Condition::residues(6, &[0, 2]), "s2 maximal finite subgroups, item 5"),
            ClassificationEntry::new(IStar, 0, 0, Condition::residues(30, &[0, 2, 12, 20]), "s2 maximal finite subgroups, item 6"),
        ],
        SurfaceKind::McgRp2 => vec![
            ClassificationEntry::new(Dih, 2, 0, Condition::always(), "mcg_rp2 maximal finite subgroups, item 1"),
            ClassificationEntry::new(Dih, 2, -2, Condition::at_least(3), "mcg_rp2 maximal finite subgroups, item 2"),
            ClassificationEntry::new(Sym4, 0, 0, o_star, "mcg_rp2 maximal finite subgroups, item 3"),
            ClassificationEntry::new(Alt5, 0, 0, i_star, "mcg_rp2 maximal finite subgroups, item 4"),
        ],
    }
}

/// The entries of the list for `surface` whose conditions hold at `n`.
pub fn classify(surface: SurfaceKind, n: u32) -> Result<Vec<ClassificationEntry>, AtlasError> {
    if n < surface.min_n() {
        return Err(AtlasError::OutOfRange { surface, n });
    }
    Ok(classification_rules(surface).into_iter().filter(|e| e.condition.holds(n)).collect())
}

/// Groups of [`classify`] evaluated at `n`.
pub fn classify_groups(surface: SurfaceKind, n: u32) -> Result<Vec<FiniteFamily>, AtlasError> {
    Ok(classify(surface, n)?.iter().map(|e| e.group(n)).collect())
}

/// Image of a finite subgroup of B_n(RP²) in the quotient by the full twist.
pub fn center_quotient(g: FiniteFamily) -> FiniteFamily {
    match g {
        FiniteFamily::Dic(m) => FiniteFamily::Dih(m),
        FiniteFamily::Q8 => FiniteFamily::Dih(2),
        FiniteFamily::TStar => FiniteFamily::Alt4,
        FiniteFamily::OStar => FiniteFamily::Sym4,
        FiniteFamily::IStar => FiniteFamily::Alt5,
        FiniteFamily::Cyclic(k) if k % 2 == 0 => FiniteFamily::Cyclic(k / 2),
        other => other,
    }
}

/// An arithmetic fact computed while eliminating a candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub statement: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepAction {
    /// Dropped: every subgroup it could contribute already lies in a kept candidate.
    Removed,
    /// Kept although the sphere list has no maximal subgroup of this type at 2n.
    Restored,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationStep {
    pub group: FiniteFamily,
    pub action: StepAction,
    pub reason: String,
    pub facts: Vec<Fact>,
}

/// A sphere-list entry at 2n rewritten as a condition and parameter in n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub group: FiniteFamily,
    pub sphere_entry: ClassificationEntry,
    pub condition_in_n: Condition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationTrace {
    pub n: u32,
    pub candidates: Vec<Candidate>,
    pub steps: Vec<EliminationStep>,
    pub result: Vec<FiniteFamily>,
}

fn divisors(k: u64) -> Vec<u64> {
    (1..=k).filter(|d| k % d == 0).collect()
}

/// Filters the finite subgroups of B_{2n}(S²) down to the candidates for B_n(RP²).
pub fn eliminate_candidates(n: u32) -> Result<EliminationTrace, AtlasError> {
    if n < 3 {
        return Err(AtlasError::OutOfRange { surface: SurfaceKind::Rp2, n });
    }
    let candidates: Vec<Candidate> = classify(SurfaceKind::S2, 2 * n)?
        .into_iter()
        .map(|e| Candidate { group: e.group(2 * n), condition_in_n: e.condition.halved(), sphere_entry: e })
        .collect();
    let mut kept: Vec<FiniteFamily> = candidates.iter().map(|c| c.group).collect();
    let mut steps = Vec::new();
    let n64 = u64::from(n);
    let torsion = [4 * n64, 4 * (n64 - 1)];

    // Dic_{8(n−1)} = Dic_{4(2n−2)} is absent from the sphere list only at 2n = 6.
    let lower = FiniteFamily::Dic(2 * (n - 1));
    if !kept.contains(&lower) {
        let host = kept.iter().copied().find(|g| matches!(g, FiniteFamily::OStar));
        let facts = vec![
            Fact { statement: format!("2n = {} is excluded by the sphere condition n = 5 or n ≥ 7", 2 * n), holds: 2 * n == 6 },
            Fact { statement: format!("{lower} embeds in O*, which is on the list"), holds: host.is_some() && lower.order() == 16 },
        ];
        let ok = facts.iter().all(|f| f.holds);
        steps.push(EliminationStep {
            group: lower,
            action: StepAction::Restored,
            reason: "not maximal in the sphere group here, but still a subgroup of a listed candidate".into(),
            facts,
        });
        if ok {
            let at = kept.iter().position(|g| *g == FiniteFamily::Dic(2 * n)).map_or(0, |i| i + 1);
            kept.insert(at, lower);
        }
    }

    // Z_{2(2n−1)}: its subgroups have order dividing 2(2n−1) and 4n or 4(n−1).
    let cyc = FiniteFamily::Cyclic(2 * (2 * n - 1));
    if let Some(i) = kept.iter().position(|g| *g == cyc) {
        let k = 2 * (2 * n64 - 1);
        let common: Vec<u64> = divisors(k).into_iter().filter(|d| torsion.iter().any(|t| t % d == 0)).collect();
        let g1 = gcd(2 * n as usize - 1, 2 * n as usize);
        let g2 = gcd(2 * n as usize - 1, 2 * (n as usize - 1));
        let facts = vec![
            Fact { statement: format!("gcd(2n-1, 2n) = gcd({}, {}) = {g1}", 2 * n - 1, 2 * n), holds: g1 == 1 },
            Fact { statement: format!("gcd(2n-1, 2(n-1)) = gcd({}, {}) = {g2}", 2 * n - 1, 2 * (n - 1)), holds: g2 == 1 },
            Fact {
                statement: format!("divisors of {k} dividing {} or {}: {:?}", torsion[0], torsion[1], common),
                holds: common == [1, 2],
            },
        ];
        let ok = facts.iter().all(|f| f.holds);
        steps.push(EliminationStep {
            group: cyc,
            action: StepAction::Removed,
            reason: "a subgroup has order 1 or 2, so it is trivial or generated by the full twist, both inside Dic(8n)".into(),
            facts,
        });
        if ok {
            kept.remove(i);
        }
    }

    // T*: elements of order 3 would need 3 | 4n or 3 | 4(n−1).
    if let Some(i) = kept.iter().position(|g| *g == FiniteFamily::TStar) {
        let three = torsion.iter().any(|t| t % 3 == 0);
        let facts = vec![
            Fact { statement: format!("n mod 3 = {}", n % 3), holds: n % 3 == 2 },
            Fact { statement: format!("3 divides neither {} nor {}", torsion[0], torsion[1]), holds: !three },
        ];
        let ok = facts.iter().all(|f| f.holds);
        steps.push(EliminationStep {
            group: FiniteFamily::TStar,
            action: StepAction::Removed,
            reason: "a subgroup without elements of order 3 lies in the Q8 factor, which lies in Dic(8n)".into(),
            facts,
        });
        if ok {
            kept.remove(i);
        }
    }
    Ok(EliminationTrace { n, candidates, steps, result: kept })
}

/// `gcd(2n−1, 2n) = gcd(2n−1, 2(n−1)) = 1` for every n in range; returns the first failure.
pub fn gcd_scan(range: core::ops::RangeInclusive<u32>) -> Option<u32> {
    range.into_iter().find(|&n| {
        let n = n as usize;
        gcd(2 * n - 1, 2 * n) != 1 || gcd(2 * n - 1, 2 * (n - 1)) != 1
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Status {
    Verified,
    PartiallyVerified { gaps: Vec<String> },
    StatementOnly { note: String },
    Failed { reason: String },
}

impl Status {
    fn gap(s: impl Into<String>) -> Status {
        Status::PartiallyVerified { gaps: vec![s.into()] }
    }
}

/// Facts about a, Δ and their permutations that bound the order of ⟨a⟩ from below.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderLedger {
    pub n: u32,
    /// Order of the permutation of a.
    pub a_permutation_order: usize,
    /// The permutation of aⁿ is the identity.
    pub a_pow_n_pure: bool,
    /// The permutation of Δ is not the identity.
    pub delta_moves_points: bool,
    /// Exact order of a, where an exhaustive table exists.
    pub a_order: Option<usize>,
    /// ⟨a, Δ⟩ is the whole group, where an exhaustive table exists.
    pub a_delta_generate: Option<bool>,
    pub status: Status,
}

pub fn order_ledger(n: u32) -> Result<OrderLedger, AtlasError> {
    if n < 2 {
        return Err(AtlasError::OutOfRange { surface: SurfaceKind::Rp2, n });
    }
    let a = named_element(NamedElement::A, n).expect("n >= 2");
    let delta = named_element(NamedElement::Delta, n).expect("n >= 2");
    let perm = |w: &BraidWord| w.permutation_image(n).expect("valid word");
    let a_permutation_order = perm(&a).order();
    let a_pow_n_pure = perm(&a.pow(n as usize)).is_identity();
    let delta_moves_points = !perm(&delta).is_identity();
    let mut ledger = OrderLedger {
        n,
        a_permutation_order,
        a_pow_n_pure,
        delta_moves_points,
        a_order: None,
        a_delta_generate: None,
        status: Status::Verified,
    };
    let basic = a_permutation_order == n as usize && a_pow_n_pure && delta_moves_points;
    if n == 2 {
        let t = materialize(&van_buskirk(2).expect("n = 2"), 1000).expect("finite");
        let ea = t.element_of(&a).expect("letters of the table");
        let ed = t.element_of(&delta).expect("letters of the table");
        ledger.a_order = Some(t.element_order(ea));
        ledger.a_delta_generate = Some(t.generated(&[ea, ed]).len() == t.order);
    }
    ledger.status = if !basic || ledger.a_order.is_some_and(|o| o != 4 * n as usize) || ledger.a_delta_generate == Some(false) {
        Status::Failed { reason: "permutation or table order check failed".into() }
    } else if n == 2 {
        Status::Verified
    } else {
        Status::gap(format!(
            "the permutation gives only n = {n} | ord(a); the exact order 4n = {} has no exhaustive check at this n",
            4 * n
        ))
    };
    Ok(ledger)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub label: String,
    pub status: Status,
    pub steps: usize,
    /// Agreement with the exhaustive table (n = 2 only).
    pub table_check: Option<bool>,
    pub certificate: Option<Derivation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    pub formula: String,
    pub group: FiniteFamily,
    pub source: String,
    pub status: Status,
    /// Maximality is part of the transcribed statement, not a computation.
    pub maximality: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema: u32,
    pub surface: SurfaceKind,
    pub n: u32,
    pub entries: Vec<EntryReport>,
    pub claims: Vec<ClaimReport>,
    pub checks: Vec<CheckReport>,
    pub elimination: Option<EliminationTrace>,
    pub order_ledger: OrderLedger,
}

impl ClassificationReport {
    fn statuses(&self) -> impl Iterator<Item = &Status> {
        self.entries
            .iter()
            .map(|e| &e.status)
            .chain(self.claims.iter().map(|c| &c.status))
            .chain(self.checks.iter().map(|c| &c.status))
            .chain(core::iter::once(&self.order_ledger.status))
    }

    pub fn hard_failures(&self) -> usize {
        self.statuses().filter(|s| matches!(s, Status::Failed { .. })).count()
    }

    pub fn gaps(&self) -> usize {
        self.statuses().filter(|s| matches!(s, Status::PartiallyVerified { .. })).count()
    }

    /// 0 when everything checked is verified, 2 when gaps remain, 1 on a hard failure.
    pub fn exit_code(&self) -> i32 {
        if self.hard_failures() > 0 {
            1
        } else if self.gaps() > 0 {
            2
        } else {
            0
        }
    }
}

/// Replays each certificate and, at n = 2, checks the claim in the exhaustive table.
pub fn claim_reports(n: u32, certificates: &[ClaimCertificate], table: Option<&GroupTable>) -> Vec<ClaimReport> {
    let p = van_buskirk(n).expect("n >= 1");
    certificates
        .iter()
        .map(|c| {
            let table_check = table.map(|t| t.element_of(&c.claim.from) == t.element_of(&c.claim.to));
            let replay = c.derivation.as_ref().map(|d| verify_derivation(&p, d) == Ok(true));
            let status = match (replay, table_check) {
                (_, Some(false)) => Status::Failed { reason: "the two sides differ in the exhaustive table".into() },
                (Some(true), _) => Status::Verified,
                (Some(false), _) => Status::Failed { reason: "certificate does not replay".into() },
                (None, _) => Status::gap("no certificate within the search budget"),
            };
            ClaimReport {
                label: c.claim.label.clone(),
                status,
                steps: c.derivation.as_ref().map_or(0, |d| d.steps.len()),
                table_check,
                certificate: c.derivation.clone(),
            }
        })
        .collect()
}

fn family_table(g: FiniteFamily) -> Option<GroupTable> {
    materialize(&finite_group_presentation(g).ok()?, 200_000).ok()
}

/// `g / center ≅ center_quotient(g)`, by enumeration and isomorphism search.
pub fn quotient_check(g: FiniteFamily) -> CheckReport {
    let target = center_quotient(g);
    let verdict = (|| {
        let t = family_table(g)?;
        let (_, q) = center_and_quotient(&t).ok()?;
        let u = family_table(target)?;
        Some(isomorphic(&q, &u).is_some())
    })();
    let status = match verdict {
        Some(true) => Status::Verified,
        Some(false) => Status::Failed { reason: format!("{g} / center is not {target}") },
        None => Status::gap("enumeration did not finish"),
    };
    CheckReport { name: format!("quotient {g}"), status, detail: format!("{g} / center ≅ {target}") }
}

/// Largest n for which the relator images are run through the sphere oracle.
pub const RELATOR_IMAGE_MAX_N: u32 = 4;

pub fn relator_image_check(n: u32, budget: &Budget) -> CheckReport {
    let name = "relator images".to_string();
    if n > RELATOR_IMAGE_MAX_N {
        return CheckReport {
            name,
            status: Status::gap(format!("sphere oracle run only for n ≤ {RELATOR_IMAGE_MAX_N}")),
            detail: String::new(),
        };
    }
    match verify_relator_images(n, budget) {
        Err(e) => CheckReport { name, status: Status::Failed { reason: format!("{e}") }, detail: String::new() },
        Ok(r) => {
            let undecided = r.images.iter().filter(|i| matches!(i.decision.verdict, SphereVerdict::TrivialOrFullTwist)).count();
            let status = if r.hard_failures() > 0 {
                Status::Failed { reason: format!("{} relator images are nontrivial", r.hard_failures()) }
            } else if r.all_trivial() {
                Status::Verified
            } else {
                Status::gap(format!("{undecided} images are trivial only up to the full twist"))
            };
            CheckReport { name, status, detail: format!("{} relators", r.images.len()) }
        }
    }
}

/// Order 16, Dic16, and a pure subgroup Q8.
pub fn small_group_check(t: &GroupTable) -> CheckReport {
    let dic = family_table(FiniteFamily::Dic(4));
    let pure = t.subgroup(&pure_elements(t, 2));
    let q8 = family_table(FiniteFamily::Q8);
    let ok = t.order == 16
        && dic.as_ref().is_some_and(|d| isomorphic(t, d).is_some())
        && pure.order == 8
        && q8.as_ref().is_some_and(|q| isomorphic(&pure, q).is_some());
    CheckReport {
        name: "enumeration".into(),
        status: if ok { Status::Verified } else { Status::Failed { reason: "B_2(RP²) table mismatch".into() } },
        detail: format!("order {}, pure subgroup order {}", t.order, pure.order),
    }
}

fn entry_status(g: FiniteFamily, n: u32, claims: &[ClaimReport], table: Option<&GroupTable>) -> Status {
    let verified = |l: &str| claims.iter().any(|c| c.label == l && c.status == Status::Verified);
    match g {
        FiniteFamily::Dic(m) if m == 2 * n => {
            if let Some(t) = table {
                // ⟨a, Δ⟩ is the whole order-16 group.
                let a = t.element_of(&named_element(NamedElement::A, n).expect("n >= 2"));
                let d = t.element_of(&named_element(NamedElement::Delta, n).expect("n >= 2"));
                let full = a.zip(d).is_some_and(|(a, d)| t.generated(&[a, d]).len() == t.order);
                let iso = family_table(g).is_some_and(|f| isomorphic(t, &f).is_some());
                if full && iso {
                    Status::Verified
                } else {
                    Status::Failed { reason: "⟨a, Δ⟩ is not dicyclic of order 8n".into() }
                }
            } else if verified("realdic_a") && verified("powerab_a") && verified("delta4") {
                Status::gap("⟨a, Δ⟩ satisfies the dicyclic relations; its order is not bounded below by 8n here")
            } else {
                Status::gap("dicyclic relations for ⟨a, Δ⟩ are not all certified")
            }
        }
        FiniteFamily::Dic(_) => {
            if verified("realdic_b") && verified("powerab_b") && verified("delta4") {
                Status::gap("⟨b, Δa⁻¹⟩ satisfies the dicyclic relations; its order is not bounded below by 8(n-1) here")
            } else {
                Status::gap("dicyclic relations for ⟨b, Δa⁻¹⟩ are not all certified")
            }
        }
        _ => Status::StatementOnly { note: "no realisation is constructed by this toolkit".into() },
    }
}

/// Runs every check for B_n(RP²) and gathers the results.
pub fn verify_suite(n: u32, budget: &Budget) -> Result<ClassificationReport, AtlasError> {
    classify(SurfaceKind::Rp2, n)?;
    let certificates = certify_claims(n, SearchMode::Seeded, budget);
    assemble_report(n, certificates, relator_image_check(n, budget))
}

/// Joins the independently computed parts of [`verify_suite`] into one report.
pub fn assemble_report(n: u32, certificates: Vec<ClaimCertificate>, relators: CheckReport) -> Result<ClassificationReport, AtlasError> {
    let entries_in = classify(SurfaceKind::Rp2, n)?;
    let table = if n == 2 { materialize(&van_buskirk(2).expect("n = 2"), 1000).ok() } else { None };
    let claims = claim_reports(n, &certificates, table.as_ref());
    let mut checks = Vec::new();
    if let Some(t) = &table {
        checks.push(small_group_check(t));
    }
    for e in &entries_in {
        let g = e.group(n);
        if matches!(g, FiniteFamily::Dic(_) | FiniteFamily::OStar | FiniteFamily::IStar) {
            checks.push(quotient_check(g));
        }
    }
    checks.push(relators);
    let entries = entries_in
        .iter()
        .map(|e| {
            let g = e.group(n);
            EntryReport {
                formula: e.formula(),
                group: g,
                source: e.source.clone(),
                status: entry_status(g, n, &claims, table.as_ref()),
                maximality: Status::StatementOnly { note: "maximality is transcribed, not computed".into() },
            }
        })
        .collect();
    let elimination = if n >= 3 { Some(eliminate_candidates(n)?) } else { None };
    Ok(ClassificationReport {
        schema: REPORT_SCHEMA,
        surface: SurfaceKind::Rp2,
        n,
        entries,
        claims,
        checks,
        elimination,
        order_ledger: order_ledger(n)?,
    })
}
