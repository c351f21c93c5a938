//! Best-first certificate search.
//!
//! Moves replace a subword `l` by `r` whenever `l·r⁻¹` is a cyclic rotation
//! of a relator or its inverse; relators are the presentation's own and,
//! optionally, previously certified lemmas. After every move the word is
//! freely reduced and any `x … x⁻¹` whose gap commutes with `x` (by a length
//! four commutator relator) is cancelled. Search nodes only hold words; the
//! certificate is produced by replaying the winning path once.

use alloc::collections::BinaryHeap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use core::hash::{Hash, Hasher};

use hashbrown::{HashMap, HashSet};
use rustc_hash::FxHasher;
use serde::{Deserialize, Serialize};

use super::{insert_inverse_then, insert_then_inverse, Derivation, DerivationStep};
use crate::presentations::{Code, Presentation};
use crate::words::BraidWord;

/// A relator certified trivial by `proof: relator → 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma {
    pub label: String,
    pub relator: BraidWord,
    pub proof: Vec<DerivationStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_expansions: usize,
    /// Word length cap; `None` means 4·max(|word|, longest relator in play).
    pub max_length: Option<usize>,
    /// Cap on stored search nodes.
    pub max_nodes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_expansions: 1_000_000, max_length: None, max_nodes: 2_000_000 }
    }
}

/// Conjugation shortcut `X⁻¹·u_1⋯u_k·X → φ(u_1)⋯φ(u_k)`, one lemma per letter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conjugation {
    pub conjugator: BraidWord,
    /// `(letter, φ(letter), lemma index)`; the inverse letter is handled by the same lemma.
    pub images: Vec<(BraidWord, BraidWord, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Use the presentation's relators as moves.
    pub base_moves: bool,
    /// Relators whose moves are allowed even when `base_moves` is off.
    pub base_subset: Vec<usize>,
    /// Lemmas usable as moves (indices into the lemma list).
    pub lemma_moves: Vec<usize>,
    pub conjugations: Vec<Conjugation>,
    /// Largest allowed `|r| − |l|` for a move.
    pub max_growth: isize,
    /// Priority is `length_weight·|w| + depth`.
    pub length_weight: usize,
    /// Cancel across commuting letters after each move.
    pub commute_cancel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            base_moves: true,
            base_subset: Vec::new(),
            lemma_moves: Vec::new(),
            conjugations: Vec::new(),
            max_growth: isize::MAX,
            length_weight: 4,
            commute_cancel: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub expansions: usize,
    pub visited: usize,
    pub path_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchOutcome {
    Found { derivation: Derivation, stats: SearchStats },
    NotFound { stats: SearchStats },
}

impl SearchOutcome {
    pub fn found(self) -> Option<Derivation> {
        match self {
            SearchOutcome::Found { derivation, .. } => Some(derivation),
            SearchOutcome::NotFound { .. } => None,
        }
    }

    pub fn stats(&self) -> SearchStats {
        match self {
            SearchOutcome::Found { stats, .. } | SearchOutcome::NotFound { stats } => *stats,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Source {
    /// Rotation `k` of relator (or its inverse), split after `|l|` letters.
    Base { relator: usize, inverse: bool, k: usize },
    Lemma { lemma: usize, inverse: bool, k: usize },
}

#[derive(Debug, Clone)]
struct Rule {
    lhs: Vec<Code>,
    rhs: Vec<Code>,
    source: Source,
}

#[derive(Debug, Clone, Copy)]
enum Move {
    Rule { rule: usize, at: usize },
    Conjugate { conj: usize, at: usize, end: usize },
}

fn inv(w: &[Code]) -> Vec<Code> {
    w.iter().rev().map(|&c| -c).collect()
}

fn reduce(w: &mut Vec<Code>) {
    let mut out: Vec<Code> = Vec::with_capacity(w.len());
    for &c in w.iter() {
        if out.last() == Some(&-c) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    *w = out;
}

fn power(r: &[Code], inverse: bool) -> Vec<Code> {
    if inverse {
        inv(r)
    } else {
        r.to_vec()
    }
}

fn rotation(r: &[Code], k: usize) -> Vec<Code> {
    r[k..].iter().chain(&r[..k]).copied().collect()
}

/// Conjugation shortcut compiled to codes.
struct CompiledConj {
    x: Vec<Code>,
    x_inv: Vec<Code>,
    /// Per signed letter: (image, lemma rule).
    images: HashMap<Code, (Vec<Code>, Rule)>,
}

/// Presentation plus lemmas, compiled for rewriting.
pub struct Engine<'a> {
    p: &'a Presentation,
    relators: Vec<Vec<Code>>,
    lemmas: Vec<Lemma>,
    lemma_codes: Vec<Vec<Code>>,
    /// Cached `rotation → 1` certificates, keyed by (lemma, inverse, k).
    rotation_proofs: HashMap<(usize, bool, usize), Vec<DerivationStep>>,
    mirrored: HashMap<usize, Vec<DerivationStep>>,
    commute: HashMap<(Code, Code), Rule>,
}

impl<'a> Engine<'a> {
    pub fn new(p: &'a Presentation, lemmas: Vec<Lemma>) -> Self {
        let relators = p.encoded_relators();
        let lemma_codes = lemmas.iter().map(|l| p.encode(&l.relator).expect("lemma over presentation")).collect();
        let mut e = Engine {
            p,
            relators,
            lemmas,
            lemma_codes,
            rotation_proofs: HashMap::new(),
            mirrored: HashMap::new(),
            commute: HashMap::new(),
        };
        e.commute = e.commutations();
        e
    }

    pub fn presentation(&self) -> &Presentation {
        self.p
    }

    pub fn lemmas(&self) -> &[Lemma] {
        &self.lemmas
    }

    pub fn add_lemma(&mut self, lemma: Lemma) -> usize {
        self.lemma_codes.push(self.p.encode(&lemma.relator).expect("lemma over presentation"));
        self.lemmas.push(lemma);
        self.lemmas.len() - 1
    }

    pub fn lemma_index(&self, label: &str) -> Option<usize> {
        self.lemmas.iter().position(|l| l.label == label)
    }

    fn commutations(&self) -> HashMap<(Code, Code), Rule> {
        let mut out = HashMap::new();
        for (i, r) in self.relators.iter().enumerate() {
            if r.len() != 4 || r[2] != -r[0] || r[3] != -r[1] || r[0].abs() == r[1].abs() {
                continue;
            }
            for inverse in [false, true] {
                let rp = power(r, inverse);
                for k in 0..4 {
                    let rot = rotation(&rp, k);
                    let rule = Rule { lhs: rot[..2].to_vec(), rhs: inv(&rot[2..]), source: Source::Base { relator: i, inverse, k } };
                    out.entry((rule.lhs[0], rule.lhs[1])).or_insert(rule);
                }
            }
        }
        out
    }

    fn commutes(&self, x: Code, y: Code) -> bool {
        self.commute.contains_key(&(x, y))
    }

    fn rules(&self, opts: &SearchOptions) -> Vec<Rule> {
        let mut out = Vec::new();
        let mut seen = hashbrown::HashSet::new();
        let mut push = |lhs: Vec<Code>, rhs: Vec<Code>, source: Source, out: &mut Vec<Rule>| {
            if rhs.len() as isize - lhs.len() as isize <= opts.max_growth && seen.insert((lhs.clone(), rhs.clone())) {
                out.push(Rule { lhs, rhs, source });
            }
        };
        for (i, r) in self.relators.iter().enumerate() {
            if !opts.base_moves && !opts.base_subset.contains(&i) {
                continue;
            }
            for inverse in [false, true] {
                let rp = power(r, inverse);
                for k in 0..rp.len() {
                    let rot = rotation(&rp, k);
                    for l in 1..=rot.len() {
                        push(rot[..l].to_vec(), inv(&rot[l..]), Source::Base { relator: i, inverse, k }, &mut out);
                    }
                }
            }
        }
        for &m in &opts.lemma_moves {
            let r = &self.lemma_codes[m];
            for inverse in [false, true] {
                let rp = power(r, inverse);
                for k in 0..rp.len() {
                    let rot = rotation(&rp, k);
                    for l in 1..=rot.len() {
                        push(rot[..l].to_vec(), inv(&rot[l..]), Source::Lemma { lemma: m, inverse, k }, &mut out);
                    }
                }
            }
        }
        out
    }

    /// The lemma rotation reading `lhs·rhs⁻¹`, if any.
    fn lemma_rule(&self, lemma: usize, lhs: &[Code], rhs: &[Code]) -> Option<Rule> {
        let target: Vec<Code> = lhs.iter().copied().chain(inv(rhs)).collect();
        let r = &self.lemma_codes[lemma];
        if r.len() != target.len() {
            return None;
        }
        for inverse in [false, true] {
            let rp = power(r, inverse);
            for k in 0..rp.len() {
                if rotation(&rp, k) == target {
                    return Some(Rule { lhs: lhs.to_vec(), rhs: rhs.to_vec(), source: Source::Lemma { lemma, inverse, k } });
                }
            }
        }
        None
    }

    fn compile(&self, c: &Conjugation) -> Option<CompiledConj> {
        let x = self.p.encode(&c.conjugator)?;
        let x_inv = inv(&x);
        let mut images = HashMap::new();
        for (letter, image, lemma) in &c.images {
            let g = self.p.encode(letter)?;
            let img = self.p.encode(image)?;
            if g.len() != 1 {
                return None;
            }
            for (g, img) in [(g[0], img.clone()), (-g[0], inv(&img))] {
                let lhs: Vec<Code> = x_inv.iter().copied().chain([g]).chain(x.iter().copied()).collect();
                let rule = self.lemma_rule(*lemma, &lhs, &img)?;
                images.insert(g, (img, rule));
            }
        }
        Some(CompiledConj { x, x_inv, images })
    }

    /// Certificate for `rotation k of lemma^{±1} → 1`, positions relative to the rotation's start.
    fn rotation_proof(&mut self, lemma: usize, inverse: bool, k: usize) -> Vec<DerivationStep> {
        if let Some(s) = self.rotation_proofs.get(&(lemma, inverse, k)) {
            return s.clone();
        }
        let base: Vec<DerivationStep> = if inverse {
            if !self.mirrored.contains_key(&lemma) {
                let d = Derivation {
                    from: self.lemmas[lemma].relator.clone(),
                    to: BraidWord::empty(),
                    steps: self.lemmas[lemma].proof.clone(),
                };
                let m = d.mirrored(self.p).expect("lemma proof replays");
                self.mirrored.insert(lemma, m.steps);
            }
            self.mirrored[&lemma].clone()
        } else {
            self.lemmas[lemma].proof.clone()
        };
        let rp = power(&self.lemma_codes[lemma], inverse);
        let steps = if k == 0 {
            base
        } else {
            // rotation = t·s where rp = s·t: append t·t⁻¹, kill s·t, cancel t·t⁻¹.
            let t = self.p.decode(&rp[k..]).letters;
            let mut steps = insert_then_inverse(&t, rp.len());
            steps.extend(base.iter().map(|s| s.shifted(t.len())));
            steps.extend((0..t.len()).rev().map(|position| DerivationStep::FreeCancel { position }));
            steps
        };
        self.rotation_proofs.insert((lemma, inverse, k), steps.clone());
        steps
    }
}

/// Mutable word plus the certificate that produced it.
struct Rewriter<'e, 'a> {
    engine: &'e mut Engine<'a>,
    word: Vec<Code>,
    steps: Vec<DerivationStep>,
}

impl<'e, 'a> Rewriter<'e, 'a> {
    fn cancel(&mut self, position: usize) {
        debug_assert_eq!(self.word[position], -self.word[position + 1]);
        self.word.drain(position..position + 2);
        self.steps.push(DerivationStep::FreeCancel { position });
    }

    fn splice(&mut self, steps: Vec<DerivationStep>, at: usize, old: usize, new: &[Code]) {
        self.steps.extend(steps.into_iter().map(|s| s.shifted(at)));
        self.word.splice(at..at + old, new.iter().copied());
    }

    fn free_reduce(&mut self) {
        let mut stack: Vec<Code> = Vec::with_capacity(self.word.len());
        let word = core::mem::take(&mut self.word);
        for c in word {
            if stack.last() == Some(&-c) {
                stack.pop();
                self.steps.push(DerivationStep::FreeCancel { position: stack.len() });
            } else {
                stack.push(c);
            }
        }
        self.word = stack;
    }

    /// Replaces `lhs` at `at` by `rhs`, without reducing outside the replaced segment.
    fn apply(&mut self, rule: &Rule, at: usize) {
        debug_assert_eq!(&self.word[at..at + rule.lhs.len()], &rule.lhs[..]);
        match rule.source {
            Source::Base { relator, inverse, k } => {
                let rp = power(&self.engine.relators[relator], inverse);
                let t = self.engine.p.decode(&rp[k..]);
                let tl = t.len();
                let l = rule.lhs.len();
                let len = rp.len();
                self.steps.push(DerivationStep::InsertRelatorConjugate {
                    relator,
                    inverse: !inverse,
                    conjugator: t,
                    position: at,
                });
                let mut block: Vec<Code> = rp[k..].to_vec();
                block.extend(inv(&rp));
                block.extend(inv(&rp[k..]));
                self.word.splice(at..at, block);
                for q in (at..at + tl).rev() {
                    self.cancel(q);
                }
                let r = len - l;
                for q in (at + r..at + len).rev() {
                    self.cancel(q);
                }
            }
            Source::Lemma { lemma, inverse, k } => {
                let l = rule.lhs.len();
                let rhs_letters = self.engine.p.decode(&rule.rhs).letters;
                let mut steps = insert_inverse_then(&rhs_letters, l);
                steps.extend(self.engine.rotation_proof(lemma, inverse, k));
                self.splice(steps, at, l, &rule.rhs.clone());
            }
        }
    }

    fn conjugate(&mut self, conj: &CompiledConj, at: usize, end: usize) {
        let xl = conj.x.len();
        let inner: Vec<Code> = self.word[at + xl..end - xl].to_vec();
        // X⁻¹ u1 u2 … X  →  X⁻¹ u1 X X⁻¹ u2 X … X⁻¹ uk X
        let x_letters = self.engine.p.decode(&conj.x).letters;
        let mut q = at + xl + 1;
        for _ in 1..inner.len() {
            for s in insert_then_inverse(&x_letters, q) {
                self.steps.push(s);
            }
            let mut block = conj.x.clone();
            block.extend(&conj.x_inv);
            self.word.splice(q..q, block);
            q += 2 * xl + 1;
        }
        let mut pos = at;
        for u in inner {
            let (img, rule) = &conj.images[&u];
            let (img, rule) = (img.clone(), rule.clone());
            self.apply(&rule, pos);
            pos += img.len();
        }
    }

    /// Moves the letter at `i` rightwards to `j − 1` and cancels it against `j`.
    fn commute_cancel(&mut self, i: usize, j: usize) {
        for t in i..j - 1 {
            let rule = self.engine.commute[&(self.word[t], self.word[t + 1])].clone();
            self.apply(&rule, t);
        }
        self.cancel(j - 1);
    }

    fn normalize(&mut self, commute: bool) {
        self.free_reduce();
        if !commute {
            return;
        }
        while let Some((i, j)) = commuting_pair(self.engine, &self.word) {
            self.commute_cancel(i, j);
            self.free_reduce();
        }
    }
}

fn commuting_pair(e: &Engine<'_>, w: &[Code]) -> Option<(usize, usize)> {
    for i in 0..w.len() {
        let x = w[i];
        for j in i + 1..w.len() {
            let y = w[j];
            if y == -x {
                return Some((i, j));
            }
            if y.abs() == x.abs() || !e.commutes(x, y) {
                break;
            }
        }
    }
    None
}

fn normalize_word(e: &Engine<'_>, w: &mut Vec<Code>, commute: bool) {
    reduce(w);
    if !commute {
        return;
    }
    while let Some((i, j)) = commuting_pair(e, w) {
        w.remove(j);
        w.remove(i);
        reduce(w);
    }
}

fn fingerprint(w: &[Code]) -> u64 {
    let mut h = FxHasher::default();
    w.hash(&mut h);
    h.finish()
}

struct Node {
    word: Vec<Code>,
    parent: usize,
    mv: Option<Move>,
    depth: usize,
}

/// Plain relator search: no lemmas, all base moves.
pub fn search_identity(p: &Presentation, w: &BraidWord, budget: &Budget) -> SearchOutcome {
    let mut engine = Engine::new(p, Vec::new());
    engine.search(w, &SearchOptions::default(), budget)
}

impl<'a> Engine<'a> {
    /// Searches for a certificate `w → 1`.
    pub fn search(&mut self, w: &BraidWord, opts: &SearchOptions, budget: &Budget) -> SearchOutcome {
        let Some(start) = self.p.encode(w) else {
            return SearchOutcome::NotFound { stats: SearchStats::default() };
        };
        let rules = self.rules(opts);
        let conjs: Vec<CompiledConj> = opts.conjugations.iter().filter_map(|c| self.compile(c)).collect();
        let mut by_first: HashMap<Code, Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            by_first.entry(r.lhs[0]).or_default().push(i);
        }
        let longest = self
            .relators
            .iter()
            .chain(opts.lemma_moves.iter().map(|&m| &self.lemma_codes[m]))
            .map(Vec::len)
            .max()
            .unwrap_or(0);
        let max_len = budget.max_length.unwrap_or(4 * start.len().max(longest));

        let mut root = start.clone();
        normalize_word(self, &mut root, opts.commute_cancel);
        let mut nodes = vec![Node { word: root.clone(), parent: usize::MAX, mv: None, depth: 0 }];
        // Hashes only; a collision can prune a branch but never fakes a certificate.
        let mut seen: HashSet<u64> = HashSet::new();
        seen.insert(fingerprint(&root));
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((opts.length_weight * root.len(), 0usize)));
        let mut stats = SearchStats::default();
        let mut goal = if root.is_empty() { Some(0) } else { None };

        while goal.is_none() {
            let Some(Reverse((_, id))) = heap.pop() else { break };
            if stats.expansions >= budget.max_expansions || nodes.len() >= budget.max_nodes {
                break;
            }
            stats.expansions += 1;
            let word = nodes[id].word.clone();
            let depth = nodes[id].depth;
            let mut moves: Vec<(Move, Vec<Code>)> = Vec::new();
            for at in 0..word.len() {
                if let Some(ids) = by_first.get(&word[at]) {
                    for &r in ids {
                        let rule = &rules[r];
                        if word[at..].starts_with(&rule.lhs) {
                            let mut child = word[..at].to_vec();
                            child.extend(&rule.rhs);
                            child.extend(&word[at + rule.lhs.len()..]);
                            moves.push((Move::Rule { rule: r, at }, child));
                        }
                    }
                }
            }
            for (ci, c) in conjs.iter().enumerate() {
                let xl = c.x.len();
                for at in 0..word.len() {
                    if !word[at..].starts_with(&c.x_inv) {
                        continue;
                    }
                    let mut j = at + xl;
                    let mut image: Vec<Code> = Vec::new();
                    while j < word.len() {
                        if j > at + xl && word[j..].starts_with(&c.x) {
                            let mut child = word[..at].to_vec();
                            child.extend(&image);
                            child.extend(&word[j + xl..]);
                            moves.push((Move::Conjugate { conj: ci, at, end: j + xl }, child));
                        }
                        match c.images.get(&word[j]) {
                            Some((img, _)) => image.extend(img),
                            None => break,
                        }
                        j += 1;
                    }
                }
            }
            for (mv, mut child) in moves {
                normalize_word(self, &mut child, opts.commute_cancel);
                if child.len() > max_len || !seen.insert(fingerprint(&child)) {
                    continue;
                }
                let cid = nodes.len();
                let done = child.is_empty();
                heap.push(Reverse((opts.length_weight * child.len() + depth + 1, cid)));
                nodes.push(Node { word: child, parent: id, mv: Some(mv), depth: depth + 1 });
                if done {
                    goal = Some(cid);
                    break;
                }
            }
        }
        stats.visited = nodes.len();
        let Some(goal) = goal else {
            return SearchOutcome::NotFound { stats };
        };
        let mut path = Vec::new();
        let mut at = goal;
        while let Some(mv) = nodes[at].mv {
            path.push((mv, at));
            at = nodes[at].parent;
        }
        path.reverse();
        stats.path_length = path.len();

        let mut rw = Rewriter { engine: self, word: start, steps: Vec::new() };
        rw.normalize(opts.commute_cancel);
        debug_assert_eq!(rw.word, nodes[0].word);
        for (mv, node) in path {
            match mv {
                Move::Rule { rule, at } => rw.apply(&rules[rule], at),
                Move::Conjugate { conj, at, end } => rw.conjugate(&conjs[conj], at, end),
            }
            rw.normalize(opts.commute_cancel);
            debug_assert_eq!(rw.word, nodes[node].word);
        }
        let steps = rw.steps;
        SearchOutcome::Found { derivation: Derivation { from: w.clone(), to: BraidWord::empty(), steps }, stats }
    }

    /// Certificate `from → to`, searching on `from·to⁻¹`.
    pub fn derive(&mut self, from: &BraidWord, to: &BraidWord, opts: &SearchOptions, budget: &Budget) -> Option<Derivation> {
        let w = from.concat(&to.invert());
        let d = self.search(&w, opts, budget).found()?;
        Some(super::equality_from_triviality(from, to, &d.steps))
    }

    /// Searches `from·to⁻¹ → 1` and, on success, records it as a lemma.
    pub fn prove(&mut self, label: &str, from: &BraidWord, to: &BraidWord, opts: &SearchOptions, budget: &Budget) -> Result<usize, SearchStats> {
        let w = from.concat(&to.invert());
        match self.search(&w, opts, budget) {
            SearchOutcome::Found { derivation, .. } => {
                Ok(self.add_lemma(Lemma { label: label.into(), relator: w, proof: derivation.steps }))
            }
            SearchOutcome::NotFound { stats } => Err(stats),
        }
    }
}
