//! The identities of the Van Buskirk presentation that the toolkit certifies,
//! and the lemma plan used to certify them.
//!
//! In seeded mode every identity is reached through a chain of waypoints,
//! each hop found by a small search that may use earlier lemmas as moves.
//! Unseeded mode runs one plain relator search per claim.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use serde::{Deserialize, Serialize};

use super::search::{Budget, Conjugation, Engine, Lemma, SearchOptions, SearchOutcome};
use super::{equality_from_triviality, Derivation, DerivationStep};
use crate::presentations::{named_element, van_buskirk, NamedElement, Presentation};
use crate::words::{BraidWord, Generator, GeneratorKind, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub label: String,
    pub from: BraidWord,
    pub to: BraidWord,
}

fn s(i: u32) -> BraidWord {
    BraidWord::single(Generator::sigma(i), 1)
}

fn si(i: u32) -> BraidWord {
    BraidWord::single(Generator::sigma(i), -1)
}

fn r(j: u32) -> BraidWord {
    BraidWord::single(Generator::rho(j), 1)
}

fn ri(j: u32) -> BraidWord {
    BraidWord::single(Generator::rho(j), -1)
}

fn cat(parts: &[&BraidWord]) -> BraidWord {
    let mut out = BraidWord::empty();
    for p in parts {
        out.extend(p);
    }
    out
}

fn run(g: impl Fn(u32) -> Generator, idx: impl Iterator<Item = u32>, e: i8) -> BraidWord {
    BraidWord::from_letters(idx.map(|i| Letter::new(g(i), e)).collect())
}

/// σ_1⋯σ_{k−1}
fn q_word(k: u32) -> BraidWord {
    run(Generator::sigma, 1..k, 1)
}

/// σ_{k−1}⋯σ_1
fn p_word(k: u32) -> BraidWord {
    run(Generator::sigma, (1..k).rev(), 1)
}

/// Half twist on the first `k` strands.
fn half_twist(k: u32) -> BraidWord {
    let mut out = BraidWord::empty();
    for m in (2..=k).rev() {
        out.extend(&q_word(m));
    }
    out
}

/// ρ_k⋯ρ_1
pub fn rho_descending(k: u32) -> BraidWord {
    run(Generator::rho, (1..=k).rev(), 1)
}

/// ρ_1⋯ρ_k
pub fn rho_ascending(k: u32) -> BraidWord {
    run(Generator::rho, 1..=k, 1)
}

fn conj(x: &BraidWord, w: &BraidWord) -> BraidWord {
    cat(&[&x.invert(), w, x])
}

/// Waypoints from `(ρ_m·σ_{m−1}⋯σ_1)^m` towards `ρ_m⋯ρ_1·Z`: each later ρ_m is moved
/// to the front with `σ_iρ_{i+1} = ρ_iσ_i⁻¹`, `σ_i⁻¹ρ_i = ρ_{i+1}σ_i` and commutations.
/// The last entry is `ρ_m⋯ρ_1·Z`, with `Z` a word in the σ's.
fn pushed_powers(m: u32) -> Option<Vec<BraidWord>> {
    let unit = r(m).concat(&p_word(m));
    let mut head = unit.clone();
    let mut out = vec![unit.pow(m as usize)];
    for k in 2..=m {
        let mut w = head.letters.clone();
        w.push(Letter::new(Generator::rho(m), 1));
        let mut at = w.len() - 1;
        while at > 0 && w[at - 1].generator.kind == GeneratorKind::Sigma {
            let (sg, rg) = (w[at - 1], w[at]);
            let (i, j) = (sg.generator.index, rg.generator.index);
            let (left, right) = if j != i && j != i + 1 {
                (rg, sg)
            } else if j == i + 1 && sg.exponent == 1 {
                (Letter::new(Generator::rho(i), 1), Letter::new(Generator::sigma(i), -1))
            } else if j == i && sg.exponent == -1 {
                (Letter::new(Generator::rho(i + 1), 1), Letter::new(Generator::sigma(i), 1))
            } else {
                return None;
            };
            w[at - 1] = left;
            w[at] = right;
            at -= 1;
        }
        head = BraidWord::from_letters(w).concat(&p_word(m));
        out.push(head.concat(&unit.pow((m - k) as usize)));
    }
    Some(out)
}

fn claim(label: String, from: BraidWord, to: BraidWord) -> Claim {
    Claim { label, from, to }
}

/// Entries of a conjugation cycle: `x⁻¹·e_k·x = e_{k+1}` for every k, cyclically.
fn cycle_claims(prefix: &str, x: &BraidWord, cycle: &[BraidWord]) -> Vec<Claim> {
    let len = cycle.len();
    (0..len)
        .map(|k| claim(format!("{prefix}_{}", k + 1), conj(x, &cycle[k]), cycle[(k + 1) % len].clone()))
        .collect()
}

/// σ_1, …, σ_m, x⁻¹σ_mx, σ_1⁻¹, …, σ_m⁻¹, x⁻¹σ_m⁻¹x
fn sigma_cycle(x: &BraidWord, m: u32) -> Vec<BraidWord> {
    let mut cycle: Vec<BraidWord> = (1..=m).map(s).collect();
    cycle.push(conj(x, &s(m)));
    cycle.extend((1..=m).map(si));
    cycle.push(conj(x, &si(m)));
    cycle
}

/// The identity set for `n ≥ 2` strands; each claim asserts `from = to` in B_n(RP²).
pub fn paper_claims(n: u32) -> Vec<Claim> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let a = named_element(NamedElement::A, n).expect("n >= 2");
    let b = named_element(NamedElement::B, n).expect("n >= 2");
    let delta = named_element(NamedElement::Delta, n).expect("n >= 2");
    for j in 1..=n {
        out.push(claim(format!("rjr1_{j}"), r(j), cat(&[&q_word(j).invert(), &r(1), &p_word(j).invert()])));
    }
    out.push(claim("rn2".into(), ri(n).pow(2), p_word(n).concat(&q_word(n))));
    out.push(claim("powerab_a".into(), a.pow(n as usize), rho_descending(n)));
    out.push(claim("powerab_b".into(), b.pow(n as usize - 1), rho_descending(n - 1)));
    for i in 1..=n {
        out.push(claim(format!("conjri_{i}"), conj(&delta, &r(i)), ri(n + 1 - i)));
    }
    out.extend(cycle_claims("permute_a_sigma", &a, &sigma_cycle(&a, n - 1)));
    let rho_cycle: Vec<BraidWord> = (1..=n).map(r).chain((1..=n).map(ri)).collect();
    out.extend(cycle_claims("permute_a_rho", &a, &rho_cycle));
    if n >= 3 {
        out.extend(cycle_claims("permute_b_sigma", &b, &sigma_cycle(&b, n - 2)));
    }
    out.push(claim("realdic_a".into(), cat(&[&delta, &a, &delta.invert(), &a]), BraidWord::empty()));
    let da = delta.concat(&a.invert());
    out.push(claim("realdic_b".into(), cat(&[&da, &b, &da.invert(), &b]), BraidWord::empty()));
    out.push(claim("delta4".into(), delta.pow(4), BraidWord::empty()));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchMode {
    /// Waypoint chains with certified lemmas as extra moves.
    Seeded,
    /// One plain relator search per claim.
    Unseeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCertificate {
    pub claim: Claim,
    pub derivation: Option<Derivation>,
    /// Search expansions spent on this claim's own hops.
    pub expansions: usize,
    pub hops: usize,
}

impl ClaimCertificate {
    pub fn is_certified(&self) -> bool {
        self.derivation.is_some()
    }
}

/// A proven lemma: the derivation `from → to` and what it cost.
#[derive(Debug, Clone)]
struct Proven {
    derivation: Derivation,
    expansions: usize,
    hops: usize,
}

/// Conjugation shortcut naming its per-letter lemmas by label.
struct ConjSpec {
    conjugator: BraidWord,
    images: Vec<(BraidWord, BraidWord, String)>,
}

/// One step of the lemma plan, in the order it was attempted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaRecord {
    pub label: String,
    pub proven: bool,
    pub expansions: usize,
    pub hops: usize,
    pub steps: usize,
}

struct Prover<'a> {
    engine: Engine<'a>,
    budget: Budget,
    proven: HashMap<String, Proven>,
    log: Vec<LemmaRecord>,
}

impl<'a> Prover<'a> {
    fn new(p: &'a Presentation, budget: Budget) -> Self {
        Prover { engine: Engine::new(p, Vec::new()), budget, proven: HashMap::new(), log: Vec::new() }
    }

    fn has(&self, label: &str) -> bool {
        self.proven.contains_key(label)
    }

    fn options(&self, uses: &[String], conjs: &[ConjSpec]) -> Option<SearchOptions> {
        let mut lemma_moves = Vec::new();
        for u in uses {
            if !self.has(u) {
                return None;
            }
            // Trivial lemmas are never registered.
            if let Some(i) = self.engine.lemma_index(u) {
                lemma_moves.push(i);
            }
        }
        let mut conjugations = Vec::new();
        for c in conjs {
            let mut images = Vec::new();
            for (l, img, lemma) in &c.images {
                images.push((l.clone(), img.clone(), self.engine.lemma_index(lemma)?));
            }
            conjugations.push(Conjugation { conjugator: c.conjugator.clone(), images });
        }
        Some(SearchOptions { lemma_moves, conjugations, ..SearchOptions::default() })
    }

    /// Certifies `from = to` through `waypoints`, then registers it as a lemma.
    fn lemma(&mut self, label: &str, from: BraidWord, to: BraidWord, waypoints: Vec<BraidWord>, uses: &[String], conjs: &[ConjSpec]) -> bool {
        if self.has(label) {
            return true;
        }
        let ok = self.attempt(label, from, to, waypoints, uses, conjs);
        if !ok {
            self.log.push(LemmaRecord { label: label.into(), proven: false, expansions: 0, hops: 0, steps: 0 });
        }
        ok
    }

    fn attempt(&mut self, label: &str, from: BraidWord, to: BraidWord, waypoints: Vec<BraidWord>, uses: &[String], conjs: &[ConjSpec]) -> bool {
        let Some(opts) = self.options(uses, conjs) else { return false };
        let mut chain = vec![from.clone()];
        chain.extend(waypoints);
        chain.push(to.clone());
        let mut derivation = Derivation::trivial(from.clone());
        let mut expansions = 0;
        for hop in chain.windows(2) {
            if hop[0] == hop[1] {
                continue;
            }
            let w = hop[0].concat(&hop[1].invert());
            match self.engine.search(&w, &opts, &self.budget) {
                SearchOutcome::Found { derivation: d, stats } => {
                    expansions += stats.expansions;
                    derivation = derivation.then(&equality_from_triviality(&hop[0], &hop[1], &d.steps));
                }
                SearchOutcome::NotFound { .. } => return false,
            }
        }
        if from != to {
            // from·to⁻¹ → to·to⁻¹ → 1
            let mut proof = derivation.steps.clone();
            proof.extend((0..to.len()).rev().map(|position| DerivationStep::FreeCancel { position }));
            self.engine.add_lemma(Lemma { label: label.into(), relator: from.concat(&to.invert()), proof });
        }
        let hops = chain.len() - 1;
        self.log.push(LemmaRecord { label: label.into(), proven: true, expansions, hops, steps: derivation.steps.len() });
        self.proven.insert(label.into(), Proven { derivation, expansions, hops });
        true
    }
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|x| String::from(*x)).collect()
}

/// Runs the lemma plan for B_n(RP²) and returns every lemma it proved.
fn seeded(p: &Presentation, n: u32, budget: Budget) -> (HashMap<String, Proven>, Vec<LemmaRecord>) {
    let mut pr = Prover::new(p, budget);
    let a = named_element(NamedElement::A, n).expect("n >= 2");
    let b = named_element(NamedElement::B, n).expect("n >= 2");
    let delta = named_element(NamedElement::Delta, n).expect("n >= 2");
    let (q, pp) = (q_word(n), p_word(n));
    let rr = rho_descending(n);
    let ss = rho_ascending(n);
    let none: &[ConjSpec] = &[];
    let rjr1_n = format!("rjr1_{n}");

    // ρ_j = σ_{j−1}⁻¹⋯σ_1⁻¹ρ_1σ_1⁻¹⋯σ_{j−1}⁻¹
    for j in 1..=n {
        let to = cat(&[&q_word(j).invert(), &r(1), &p_word(j).invert()]);
        let uses = if j > 1 { vec![format!("rjr1_{}", j - 1)] } else { Vec::new() };
        pr.lemma(&format!("rjr1_{j}"), r(j), to, vec![], &uses, none);
    }
    pr.lemma("rn2", ri(n).pow(2), pp.concat(&q), vec![], &[rjr1_n.clone()], none);
    // a = ρ_n·σ_{n−1}⋯σ_1 and b = ρ_{n−1}·σ_{n−2}⋯σ_1
    pr.lemma("aform", a.clone(), r(n).concat(&pp), vec![], &[rjr1_n.clone()], none);
    pr.lemma("bform", b.clone(), r(n - 1).concat(&p_word(n - 1)), vec![], &[format!("rjr1_{}", n - 1)], none);

    // Disc identities.
    for k in [n - 1, n] {
        for i in 1..k.saturating_sub(1) {
            pr.lemma(&format!("shq_{k}_{i}"), conj(&q_word(k).invert(), &s(i)), s(i + 1), vec![], &[], none);
        }
    }
    for i in 1..n {
        pr.lemma(&format!("pg_{i}"), conj(&delta, &s(i)), s(n - i), vec![], &[], none);
    }
    pr.lemma("fulltwist", delta.pow(2), pp.pow(n as usize), vec![], &[], none);

    // Δ⁻¹ρ_iΔ = ρ_{n+1−i}⁻¹
    let inner = half_twist(n - 1);
    pr.lemma(
        "conjri_1",
        conj(&delta, &r(1)),
        ri(n),
        vec![cat(&[&inner.invert(), &r(n), &pp, &q, &inner]), conj(&inner, &ri(n))],
        &labels(&["aform", "rn2"]),
        none,
    );
    // Images under x ↦ Δ⁻¹xΔ and under x ↦ ΔxΔ⁻¹.
    let by_delta = |rhos: u32| -> ConjSpec {
        let mut v: Vec<(BraidWord, BraidWord, String)> = (1..n).map(|i| (s(i), s(n - i), format!("pg_{i}"))).collect();
        v.extend((1..=rhos).map(|i| (r(i), ri(n + 1 - i), format!("conjri_{i}"))));
        ConjSpec { conjugator: delta.clone(), images: v }
    };
    let by_delta_inv = || -> ConjSpec {
        let mut v: Vec<(BraidWord, BraidWord, String)> = (1..n).map(|i| (s(i), s(n - i), format!("pg_{}", n - i))).collect();
        v.extend((1..=n).map(|j| (r(j), ri(n + 1 - j), format!("conjri_{}", n + 1 - j))));
        ConjSpec { conjugator: delta.invert(), images: v }
    };
    for i in 1..n {
        pr.lemma(
            &format!("conjri_{}", i + 1),
            conj(&delta, &r(i + 1)),
            ri(n - i),
            vec![conj(&delta, &cat(&[&si(i), &r(i), &si(i)])), cat(&[&si(n - i), &ri(n + 1 - i), &si(n - i)])],
            &[],
            &[by_delta(i)],
        );
    }

    // Conjugation by a and by b on the generators.
    for i in 1..n.saturating_sub(1) {
        pr.lemma(&format!("perm_a_s_{i}"), conj(&a, &s(i)), s(i + 1), vec![], &[format!("shq_{n}_{i}")], none);
    }
    let by_a = |rhos: u32| -> ConjSpec {
        let mut v: Vec<(BraidWord, BraidWord, String)> =
            (1..n - 1).map(|j| (s(j), s(j + 1), format!("perm_a_s_{j}"))).collect();
        v.extend((1..=rhos).map(|j| (r(j), r(j + 1), format!("perm_a_r_{j}"))));
        ConjSpec { conjugator: a.clone(), images: v }
    };
    pr.lemma("perm_a_r_1", conj(&a, &r(1)), r(2), vec![], &labels(&["aform", &rjr1_n, "rjr1_2"]), none);
    for i in 2..n {
        pr.lemma(
            &format!("perm_a_r_{i}"),
            conj(&a, &r(i)),
            r(i + 1),
            vec![conj(&a, &cat(&[&si(i - 1), &r(i - 1), &si(i - 1)])), cat(&[&si(i), &r(i), &si(i)])],
            &[],
            &[by_a(i - 1)],
        );
    }
    pr.lemma(&format!("perm_a_r_{n}"), conj(&a, &r(n)), ri(1), vec![], &labels(&["aform", &rjr1_n]), none);
    for i in 1..n.saturating_sub(2) {
        pr.lemma(&format!("perm_b_s_{i}"), conj(&b, &s(i)), s(i + 1), vec![], &[format!("shq_{}_{i}", n - 1)], none);
    }

    // a^n = ρ_n⋯ρ_1 and b^{n−1} = ρ_{n−1}⋯ρ_1.
    for (label, x, m, form) in [("powerab_a", &a, n, "aform"), ("powerab_b", &b, n - 1, "bform")] {
        let target = rho_descending(m);
        let Some(way) = pushed_powers(m) else { continue };
        pr.lemma(label, x.pow(m as usize), target, way, &labels(&[form]), none);
    }

    // R⁻¹ρ_jR = ρ_j⁻¹ with R = ρ_n⋯ρ_1 = a^n, then ρ_1⋯ρ_n·R = R·ρ_1⁻¹⋯ρ_n⁻¹ = 1.
    let mut cycle = by_a(n - 1);
    cycle.images.push((r(n), ri(1), format!("perm_a_r_{n}")));
    for j in 1..=n {
        pr.lemma(
            &format!("rconj_{j}"),
            conj(&rr, &r(j)),
            ri(j),
            (0..n)
                .map(|k| {
                    let t = j + k;
                    let f = if t <= n { r(t) } else { ri(t - n) };
                    conj(&a.pow((n - k) as usize), &f)
                })
                .collect(),
            &labels(&["powerab_a"]),
            core::slice::from_ref(&cycle),
        );
    }
    let pushed: Vec<BraidWord> = (1..=n)
        .rev()
        .map(|k| cat(&[&rho_ascending(k - 1), &rr, &run(Generator::rho, k..=n, -1)]))
        .collect();
    let rconj: Vec<String> = (1..=n).map(|j| format!("rconj_{j}")).collect();
    pr.lemma("sr", ss.concat(&rr), BraidWord::empty(), pushed, &rconj, none);

    // a^n = ρ_1⋯ρ_n·(σ_{n−1}⋯σ_1)^n, moving each ρ_n to the front.
    let mut way = vec![a.pow(n as usize - 1).concat(&r(n)).concat(&pp)];
    way.extend((1..n).map(|k| cat(&[&rho_ascending(k), &a.pow((n - k) as usize), &pp.pow(k as usize)])));
    let down: Vec<(BraidWord, BraidWord, String)> = (1..n).map(|j| (r(j + 1), r(j), format!("perm_a_r_{j}"))).collect();
    pr.lemma(
        "apower",
        a.pow(n as usize),
        ss.concat(&pp.pow(n as usize)),
        way,
        &labels(&["aform"]),
        &[ConjSpec { conjugator: a.invert(), images: down }],
    );
    // Δ² = ρ_n⋯ρ_1·ρ_n⋯ρ_1, then Δ⁴ = 1.
    pr.lemma(
        "ft",
        delta.pow(2),
        rr.pow(2),
        vec![pp.pow(n as usize), ss.invert().concat(&a.pow(n as usize)), ss.invert().concat(&rr)],
        &labels(&["fulltwist", "apower", "powerab_a", "sr"]),
        none,
    );
    pr.lemma("conjR", conj(&delta, &rr), rr.invert(), vec![], &[], &[by_delta(n)]);
    pr.lemma(
        "delta4",
        delta.pow(4),
        BraidWord::empty(),
        vec![cat(&[&delta, &rr, &rr, &delta]), cat(&[&delta, &rr, &rr, &delta.invert(), &delta.pow(2)])],
        &labels(&["ft", "conjR"]),
        none,
    );

    // The wrap-around entries: x^{−2}σ_{m−1}x² = σ_1⁻¹.
    pr.lemma("twist", conj(&rho_descending(2), &s(1)), si(1), vec![], &[], none);
    for (label, x, m, power) in [("wrap_a", &a, n, "powerab_a"), ("wrap_b", &b, n - 1, "powerab_b")] {
        if m < 2 {
            continue;
        }
        let images: Vec<(BraidWord, BraidWord, String)> = if label == "wrap_a" {
            by_a(0).images
        } else {
            (1..m - 1).map(|j| (s(j), s(j + 1), format!("perm_b_s_{j}"))).collect()
        };
        pr.lemma(
            label,
            conj(&x.pow(2), &s(m - 1)),
            si(1),
            vec![conj(&x.pow(m as usize), &s(1)), conj(&rho_descending(m), &s(1)), conj(&rho_descending(2), &s(1))],
            &labels(&[power, "twist"]),
            &[ConjSpec { conjugator: x.clone(), images }],
        );
    }

    // ΔaΔ⁻¹ = a⁻¹ and (Δa⁻¹)b(Δa⁻¹)⁻¹ = b⁻¹.
    pr.lemma(
        "realdic_a",
        cat(&[&delta, &a, &delta.invert(), &a]),
        BraidWord::empty(),
        vec![cat(&[&pp.invert(), &ri(n), &a])],
        &labels(&["aform"]),
        &[by_delta_inv()],
    );
    let da = delta.concat(&a.invert());
    let shifted_b = run(Generator::sigma, (2..n).rev(), -1).concat(&r(2));
    pr.lemma(
        "realdic_b",
        cat(&[&da, &b, &da.invert(), &b]),
        BraidWord::empty(),
        vec![cat(&[&delta, &shifted_b, &delta.invert(), &b]), cat(&[&p_word(n - 1).invert(), &ri(n - 1), &b])],
        &labels(&["bform"]),
        &[by_a(1), by_delta_inv()],
    );
    (pr.proven, pr.log)
}

/// Certificates for every claim of [`paper_claims`].
pub fn certify_claims(n: u32, mode: SearchMode, budget: &Budget) -> Vec<ClaimCertificate> {
    let Ok(p) = van_buskirk(n) else { return Vec::new() };
    let claims = paper_claims(n);
    match mode {
        SearchMode::Unseeded => claims
            .into_iter()
            .map(|c| {
                let mut engine = Engine::new(&p, Vec::new());
                let w = c.from.concat(&c.to.invert());
                let out = engine.search(&w, &SearchOptions::default(), budget);
                let expansions = out.stats().expansions;
                let derivation = out.found().map(|d| equality_from_triviality(&c.from, &c.to, &d.steps));
                ClaimCertificate { claim: c, derivation, expansions, hops: 1 }
            })
            .collect(),
        SearchMode::Seeded => {
            let (proven, _) = seeded(&p, n, *budget);
            claims
                .into_iter()
                .map(|c| match lookup(&p, &proven, &c) {
                    Some(pv) => ClaimCertificate { claim: c, derivation: Some(pv.derivation), expansions: pv.expansions, hops: pv.hops },
                    None => ClaimCertificate { claim: c, derivation: None, expansions: 0, hops: 0 },
                })
                .collect()
        }
    }
}

/// The seeded lemma plan for `n` strands, one record per lemma.
pub fn lemma_plan(n: u32, budget: &Budget) -> Vec<LemmaRecord> {
    match van_buskirk(n) {
        Ok(p) if n >= 2 => seeded(&p, n, *budget).1,
        _ => Vec::new(),
    }
}

/// Finds the lemma proving a claim, directly or as the inverse of one.
fn lookup(p: &Presentation, proven: &HashMap<String, Proven>, c: &Claim) -> Option<Proven> {
    if c.from == c.to {
        return Some(Proven { derivation: Derivation::trivial(c.from.clone()), expansions: 0, hops: 0 });
    }
    let mut keys: Vec<&String> = proven.keys().collect();
    keys.sort();
    for k in &keys {
        let pv = &proven[*k];
        if pv.derivation.from == c.from && pv.derivation.to == c.to {
            return Some(pv.clone());
        }
    }
    let (from_inv, to_inv) = (c.from.invert(), c.to.invert());
    for k in &keys {
        let pv = &proven[*k];
        if pv.derivation.from == from_inv && pv.derivation.to == to_inv {
            let derivation = pv.derivation.mirrored(p).ok()?;
            return Some(Proven { derivation, ..pv.clone() });
        }
    }
    None
}
