//! Todd–Coxeter coset enumeration and what can be read off a finished table:
//! multiplication tables, isomorphism tests, centres and central quotients,
//! and abelian invariants from the relation matrix.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentations::{Code, Presentation};
use crate::words::{BraidWord, Generator, Letter};

const UNDEF: u32 = u32::MAX;

pub const DEFAULT_MAX_COSETS: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("coset limit {0} exceeded")]
    Overflow(usize),
    #[error("word uses a generator outside the presentation")]
    UnknownGenerator,
    #[error("coset table is not closed")]
    NotClosed,
    #[error("group has no central element of order 2")]
    NoCentralInvolution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Strategy {
    /// Relator-based: scan and fill every relator at every coset in turn.
    #[default]
    Hlt,
    /// Definition-based: fill the first hole, then chase deductions.
    Felsch,
}

/// A closed coset table. Column `2k` is generator `k`, column `2k+1` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    pub label: String,
    pub generators: Vec<Generator>,
    pub cosets: usize,
    pub action: Vec<Vec<u32>>,
}

fn column(c: Code) -> usize {
    let k = (c.unsigned_abs() - 1) as usize;
    if c > 0 {
        2 * k
    } else {
        2 * k + 1
    }
}

struct Enumerator {
    width: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max: usize,
    deductions: Vec<(u32, usize)>,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(rank: usize, max: usize) -> Self {
        let width = 2 * rank;
        Enumerator {
            width,
            table: vec![UNDEF; width],
            parent: vec![0],
            live: 1,
            max,
            deductions: Vec::new(),
            queue: Vec::new(),
        }
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.width + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.width + x] = d;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn link(&mut self, c: u32, x: usize, d: u32) {
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        self.deductions.push((c, x));
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, EnumerationError> {
        if self.live >= self.max {
            return Err(EnumerationError::Overflow(self.max));
        }
        let d = self.rows() as u32;
        self.parent.push(d);
        self.table.extend(core::iter::repeat(UNDEF).take(self.width));
        self.live += 1;
        self.link(c, x, d);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != root {
            let next = self.parent[k as usize];
            self.parent[k as usize] = root;
            k = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop as usize] = keep;
        self.live -= 1;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.width {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                self.set(f, x ^ 1, UNDEF);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let g = self.get(e1, x);
                if g != UNDEF {
                    self.merge(f1, g);
                    continue;
                }
                let h = self.get(f1, x ^ 1);
                if h != UNDEF {
                    self.merge(e1, h);
                } else {
                    self.link(e1, x, f1);
                }
            }
        }
    }

    /// Scans `rel` at `c`, defining new cosets to close any gap.
    fn scan_and_fill(&mut self, c: u32, rel: &[usize]) -> Result<(), EnumerationError> {
        let mut lo = 0usize;
        let mut hi = rel.len();
        let mut f = c;
        let mut b = c;
        loop {
            while lo < hi && self.get(f, rel[lo]) != UNDEF {
                f = self.get(f, rel[lo]);
                lo += 1;
            }
            if lo == hi {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while hi > lo && self.get(b, rel[hi - 1] ^ 1) != UNDEF {
                b = self.get(b, rel[hi - 1] ^ 1);
                hi -= 1;
            }
            if hi == lo {
                self.coincidence(f, b);
                return Ok(());
            }
            if hi == lo + 1 {
                self.link(f, rel[lo], b);
                return Ok(());
            }
            self.define(f, rel[lo])?;
        }
    }

    /// Scans `rel` at `c` without defining; records a deduction or coincidence.
    fn scan(&mut self, c: u32, rel: &[usize]) {
        let mut lo = 0usize;
        let mut hi = rel.len();
        let mut f = c;
        let mut b = c;
        while lo < hi && self.get(f, rel[lo]) != UNDEF {
            f = self.get(f, rel[lo]);
            lo += 1;
        }
        if lo == hi {
            if f != b {
                self.coincidence(f, b);
            }
            return;
        }
        while hi > lo && self.get(b, rel[hi - 1] ^ 1) != UNDEF {
            b = self.get(b, rel[hi - 1] ^ 1);
            hi -= 1;
        }
        if hi == lo {
            self.coincidence(f, b);
        } else if hi == lo + 1 {
            self.link(f, rel[lo], b);
        }
    }

    /// Lookahead: deduction-only scans of every live coset, then compaction.
    fn lookahead(&mut self, rels: &[Vec<usize>], cursor: u32) -> u32 {
        let mut c = 0u32;
        while (c as usize) < self.rows() {
            for r in rels {
                if !self.alive(c) {
                    break;
                }
                self.scan(c, r);
            }
            c += 1;
        }
        self.compact(cursor)
    }

    /// Drops dead rows, keeping order. Returns the new index of `cursor`.
    fn compact(&mut self, cursor: u32) -> u32 {
        let n = self.rows();
        let mut map = vec![UNDEF; n];
        let mut next = 0u32;
        let mut new_cursor = None;
        for c in 0..n as u32 {
            if c == cursor || (new_cursor.is_none() && c > cursor) {
                new_cursor.get_or_insert(next);
            }
            if self.alive(c) {
                map[c as usize] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.width);
        for c in 0..n as u32 {
            if self.alive(c) {
                for x in 0..self.width {
                    let d = self.get(c, x);
                    table.push(if d == UNDEF { UNDEF } else { map[d as usize] });
                }
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.deductions.clear();
        new_cursor.unwrap_or(next)
    }

    fn hlt(&mut self, rels: &[Vec<usize>]) -> Result<(), EnumerationError> {
        let mut c = 0u32;
        while (c as usize) < self.rows() {
            if self.alive(c) {
                self.deductions.clear();
                for r in rels {
                    if !self.alive(c) {
                        break;
                    }
                    match self.scan_and_fill(c, r) {
                        Ok(()) => {}
                        Err(EnumerationError::Overflow(_)) => {
                            c = self.lookahead(rels, c);
                            if self.live >= self.max {
                                return Err(EnumerationError::Overflow(self.max));
                            }
                            // Restart the relator loop at the (renumbered) cursor.
                            break;
                        }
                        Err(e) => return Err(e),
                    }
                }
                if (c as usize) < self.rows() && self.alive(c) && self.row_closed(c, rels) {
                    // Generators missing from every relator still need their entries.
                    match (0..self.width).find(|&x| self.get(c, x) == UNDEF) {
                        Some(x) => {
                            if let Err(e) = self.define(c, x) {
                                c = self.lookahead(rels, c);
                                if self.live >= self.max {
                                    return Err(e);
                                }
                            }
                        }
                        None => c += 1,
                    }
                }
                continue;
            }
            c += 1;
        }
        Ok(())
    }

    fn row_closed(&self, c: u32, rels: &[Vec<usize>]) -> bool {
        rels.iter().all(|r| {
            let mut f = c;
            for &x in r {
                f = self.get(f, x);
                if f == UNDEF {
                    return false;
                }
            }
            f == c
        })
    }

    fn felsch(&mut self, rels: &[Vec<usize>]) -> Result<(), EnumerationError> {
        // Cyclic conjugates of every relator and its inverse, bucketed by first letter.
        let mut by_first: Vec<Vec<Vec<usize>>> = vec![Vec::new(); self.width];
        for r in rels {
            let inv: Vec<usize> = r.iter().rev().map(|&x| x ^ 1).collect();
            for w in [r, &inv] {
                for k in 0..w.len() {
                    let rot: Vec<usize> = w[k..].iter().chain(&w[..k]).copied().collect();
                    if !by_first[rot[0]].contains(&rot) {
                        by_first[rot[0]].push(rot);
                    }
                }
            }
        }
        loop {
            self.process_deductions(&by_first);
            let hole = (0..self.rows() as u32)
                .filter(|&c| self.alive(c))
                .find_map(|c| (0..self.width).find(|&x| self.get(c, x) == UNDEF).map(|x| (c, x)));
            match hole {
                Some((c, x)) => {
                    if let Err(e) = self.define(c, x) {
                        self.process_deductions(&by_first);
                        self.compact(0);
                        if self.live >= self.max {
                            return Err(e);
                        }
                    }
                }
                None => {
                    // Completion check; any deduction found here reopens the loop.
                    let before = self.live;
                    for c in 0..self.rows() as u32 {
                        for r in rels {
                            if self.alive(c) {
                                self.scan(c, r);
                            }
                        }
                    }
                    if self.deductions.is_empty() && self.live == before {
                        return Ok(());
                    }
                }
            }
        }
    }

    fn process_deductions(&mut self, by_first: &[Vec<Vec<usize>>]) {
        while let Some((c, x)) = self.deductions.pop() {
            for (start, col) in [(c, x), (self.get(c, x), x ^ 1)] {
                if start == UNDEF {
                    continue;
                }
                for rel in &by_first[col] {
                    let start = self.rep(start);
                    self.scan(start, rel);
                }
            }
        }
    }

    fn finish(mut self, p: &Presentation) -> CosetTable {
        self.compact(0);
        standardize(p, &self.table, self.width)
    }
}

/// Relabels cosets in breadth-first order from coset 0.
fn standardize(p: &Presentation, table: &[u32], width: usize) -> CosetTable {
    let n = table.len() / width;
    let mut map = vec![UNDEF; n];
    let mut order = Vec::with_capacity(n);
    map[0] = 0;
    order.push(0u32);
    let mut i = 0;
    while i < order.len() {
        let c = order[i] as usize;
        i += 1;
        for x in 0..width {
            let d = table[c * width + x];
            if map[d as usize] == UNDEF {
                map[d as usize] = order.len() as u32;
                order.push(d);
            }
        }
    }
    let action = order
        .iter()
        .map(|&c| (0..width).map(|x| map[table[c as usize * width + x] as usize]).collect())
        .collect();
    CosetTable { label: p.name.clone(), generators: p.generators.clone(), cosets: order.len(), action }
}

pub fn coset_enumerate(
    p: &Presentation,
    subgroup: &[BraidWord],
    max_cosets: usize,
) -> Result<CosetTable, EnumerationError> {
    coset_enumerate_with(p, subgroup, max_cosets, Strategy::Hlt)
}

pub fn coset_enumerate_with(
    p: &Presentation,
    subgroup: &[BraidWord],
    max_cosets: usize,
    strategy: Strategy,
) -> Result<CosetTable, EnumerationError> {
    let encode = |w: &BraidWord| -> Result<Vec<usize>, EnumerationError> {
        let code = p.encode(&w.free_reduce()).ok_or(EnumerationError::UnknownGenerator)?;
        Ok(code.into_iter().map(column).collect())
    };
    let rels = p.relators.iter().map(encode).collect::<Result<Vec<_>, _>>()?;
    let subs = subgroup.iter().map(encode).collect::<Result<Vec<_>, _>>()?;
    let mut e = Enumerator::new(p.rank(), max_cosets.max(1));
    for s in subs.iter().filter(|s| !s.is_empty()) {
        e.scan_and_fill(0, s)?;
    }
    match strategy {
        Strategy::Hlt => e.hlt(&rels)?,
        Strategy::Felsch => e.felsch(&rels)?,
    }
    Ok(e.finish(p))
}

impl CosetTable {
    pub fn apply(&self, c: u32, code: &[Code]) -> u32 {
        code.iter().fold(c, |c, &l| self.action[c as usize][column(l)])
    }

    pub fn apply_word(&self, c: u32, w: &BraidWord) -> Option<u32> {
        let mut c = c;
        for l in &w.letters {
            let k = self.generators.iter().position(|&g| g == l.generator)?;
            let x = if l.exponent > 0 { 2 * k } else { 2 * k + 1 };
            c = self.action[c as usize][x];
        }
        Some(c)
    }

    /// Spanning-tree words: `words[c]` carries coset 0 to coset `c`.
    pub fn transversal(&self) -> Vec<BraidWord> {
        let mut words: Vec<Option<BraidWord>> = vec![None; self.cosets];
        words[0] = Some(BraidWord::empty());
        let mut queue = VecDeque::from([0u32]);
        while let Some(c) = queue.pop_front() {
            let base = words[c as usize].clone().expect("visited");
            for (x, &d) in self.action[c as usize].iter().enumerate() {
                if words[d as usize].is_none() {
                    let mut w = base.clone();
                    w.push(self.generators[x / 2], if x % 2 == 0 { 1 } else { -1 });
                    words[d as usize] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        words.into_iter().map(|w| w.expect("table is connected")).collect()
    }

    pub fn is_closed(&self, p: &Presentation) -> bool {
        let rels = p.encoded_relators();
        self.action.iter().all(|row| row.iter().all(|&d| (d as usize) < self.cosets))
            && (0..self.cosets as u32).all(|c| rels.iter().all(|r| self.apply(c, r) == c))
    }
}

/// A finite group as a Cayley table. Element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    pub order: usize,
    pub mul: Vec<Vec<u32>>,
    /// Element of each presentation generator, in generator order.
    pub generator_elements: Vec<u32>,
    pub generators: Vec<Generator>,
    /// A word in the generators for every element.
    pub words: Vec<BraidWord>,
}

pub fn group_table(t: &CosetTable) -> Result<GroupTable, EnumerationError> {
    if t.action.iter().any(|row| row.iter().any(|&d| d as usize >= t.cosets)) {
        return Err(EnumerationError::NotClosed);
    }
    let words = t.transversal();
    // Right regular action: coset c is the element reached by words[c].
    let mul = (0..t.cosets as u32)
        .map(|a| words.iter().map(|w| t.apply_word(a, w).expect("own generators")).collect())
        .collect();
    let generator_elements = (0..t.generators.len()).map(|k| t.action[0][2 * k]).collect();
    Ok(GroupTable {
        order: t.cosets,
        mul,
        generator_elements,
        generators: t.generators.clone(),
        words,
    })
}

/// Enumerates `p` over the trivial subgroup and builds its Cayley table.
pub fn materialize(p: &Presentation, max_cosets: usize) -> Result<GroupTable, EnumerationError> {
    group_table(&coset_enumerate(p, &[], max_cosets)?)
}

impl GroupTable {
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize][b as usize]
    }

    pub fn inverse(&self, a: u32) -> u32 {
        self.mul[a as usize].iter().position(|&c| c == 0).expect("group") as u32
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Evaluates a word over the table's generators.
    pub fn element_of(&self, w: &BraidWord) -> Option<u32> {
        let mut e = 0u32;
        for l in &w.letters {
            let k = self.generators.iter().position(|&g| g == l.generator)?;
            let g = self.generator_elements[k];
            e = self.mul(e, if l.exponent > 0 { g } else { self.inverse(g) });
        }
        Some(e)
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order as u32;
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))))
    }

    /// Sorted `(element order, count)` pairs.
    pub fn order_histogram(&self) -> Vec<(usize, usize)> {
        let mut orders: Vec<usize> = (0..self.order as u32).map(|a| self.element_order(a)).collect();
        orders.sort_unstable();
        let mut out: Vec<(usize, usize)> = Vec::new();
        for o in orders {
            match out.last_mut() {
                Some((k, c)) if *k == o => *c += 1,
                _ => out.push((o, 1)),
            }
        }
        out
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut stack = vec![0u32];
        while let Some(a) = stack.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b as usize] {
                    seen[b as usize] = true;
                    stack.push(b);
                }
            }
        }
        (0..self.order as u32).filter(|&a| seen[a as usize]).collect()
    }

    /// Restriction to a subgroup given by its sorted elements; 0 must be first.
    pub fn subgroup(&self, elements: &[u32]) -> GroupTable {
        let mut index = vec![UNDEF; self.order];
        for (i, &e) in elements.iter().enumerate() {
            index[e as usize] = i as u32;
        }
        let mul = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| index[self.mul(a, b) as usize]).collect())
            .collect();
        let kept: Vec<(Generator, u32)> = self
            .generators
            .iter()
            .zip(&self.generator_elements)
            .filter(|(_, &e)| index[e as usize] != UNDEF)
            .map(|(&g, &e)| (g, index[e as usize]))
            .collect();
        GroupTable {
            order: elements.len(),
            mul,
            generator_elements: kept.iter().map(|&(_, e)| e).collect(),
            generators: kept.iter().map(|&(g, _)| g).collect(),
            words: elements.iter().map(|&e| self.words[e as usize].clone()).collect(),
        }
    }

    pub fn center(&self) -> Vec<u32> {
        let n = self.order as u32;
        (0..n).filter(|&z| (0..n).all(|a| self.mul(z, a) == self.mul(a, z))).collect()
    }

    pub fn is_normal(&self, elements: &[u32]) -> bool {
        let mut member = vec![false; self.order];
        for &e in elements {
            member[e as usize] = true;
        }
        (0..self.order as u32).all(|g| {
            let gi = self.inverse(g);
            elements.iter().all(|&h| member[self.mul(self.mul(gi, h), g) as usize])
        })
    }

    /// Quotient by a normal subgroup; each coset is represented by its least element.
    pub fn quotient(&self, normal: &[u32]) -> GroupTable {
        let mut class = vec![UNDEF; self.order];
        let mut reps = Vec::new();
        for a in 0..self.order as u32 {
            if class[a as usize] != UNDEF {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(a);
            for &h in normal {
                class[self.mul(a, h) as usize] = id;
            }
        }
        let mul = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| class[self.mul(a, b) as usize]).collect())
            .collect();
        GroupTable {
            order: reps.len(),
            mul,
            generator_elements: self.generator_elements.iter().map(|&e| class[e as usize]).collect(),
            generators: self.generators.clone(),
            words: reps.iter().map(|&a| self.words[a as usize].clone()).collect(),
        }
    }

    /// Greedy generating set, preferring elements of large order.
    pub fn generating_set(&self) -> Vec<u32> {
        let mut by_order: Vec<u32> = (1..self.order as u32).collect();
        by_order.sort_by_key(|&a| core::cmp::Reverse(self.element_order(a)));
        let mut gens = Vec::new();
        let mut span = vec![0u32];
        for a in by_order {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.generated(&gens);
            }
        }
        gens
    }
}

/// An isomorphism as the image of every element of the domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isomorphism {
    pub map: Vec<u32>,
    /// Domain generating set and its images.
    pub generators: Vec<(u32, u32)>,
}

/// Extends generator images along a spanning tree; `None` unless a bijective homomorphism results.
fn extend(a: &GroupTable, b: &GroupTable, gens: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    let mut map = vec![UNDEF; a.order];
    let mut hit = vec![false; b.order];
    map[0] = 0;
    hit[0] = true;
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let fy = b.mul(map[x as usize], h);
            if map[y as usize] == UNDEF {
                if hit[fy as usize] {
                    return None;
                }
                map[y as usize] = fy;
                hit[fy as usize] = true;
                queue.push_back(y);
            } else if map[y as usize] != fy {
                return None;
            }
        }
    }
    map.iter().all(|&m| m != UNDEF).then_some(map)
}

pub fn is_homomorphism(a: &GroupTable, b: &GroupTable, map: &[u32]) -> bool {
    (0..a.order as u32).all(|x| {
        (0..a.order as u32).all(|y| map[a.mul(x, y) as usize] == b.mul(map[x as usize], map[y as usize]))
    })
}

pub fn isomorphic(a: &GroupTable, b: &GroupTable) -> Option<Isomorphism> {
    if a.order != b.order || a.order_histogram() != b.order_histogram() {
        return None;
    }
    let gens = a.generating_set();
    let b_orders: Vec<usize> = (0..b.order as u32).map(|y| b.element_order(y)).collect();
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| {
            let o = a.element_order(g);
            (0..b.order as u32).filter(|&y| b_orders[y as usize] == o).collect()
        })
        .collect();
    let mut images = vec![0u32; gens.len()];
    let map = search(a, b, &gens, &candidates, &mut images, 0)?;
    debug_assert!(is_homomorphism(a, b, &map));
    Some(Isomorphism { map, generators: gens.iter().copied().zip(images).collect() })
}

fn search(
    a: &GroupTable,
    b: &GroupTable,
    gens: &[u32],
    candidates: &[Vec<u32>],
    images: &mut [u32],
    depth: usize,
) -> Option<Vec<u32>> {
    if depth == gens.len() {
        let map = extend(a, b, gens, images)?;
        return is_homomorphism(a, b, &map).then_some(map);
    }
    for &y in &candidates[depth] {
        images[depth] = y;
        if let Some(map) = search(a, b, gens, candidates, images, depth + 1) {
            return Some(map);
        }
    }
    None
}

/// Centre, and the quotient by its unique (least) central element of order 2.
pub fn center_and_quotient(t: &GroupTable) -> Result<(Vec<u32>, GroupTable), EnumerationError> {
    let center = t.center();
    let z = center
        .iter()
        .copied()
        .find(|&z| t.element_order(z) == 2)
        .ok_or(EnumerationError::NoCentralInvolution)?;
    Ok((center, t.quotient(&[0, z])))
}

/// Invariant factors, each dividing the next, with free factors as trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants(pub Vec<u64>);

/// Exponent-sum matrix: one row per relator, one column per generator.
pub fn relation_matrix(p: &Presentation) -> Vec<Vec<i128>> {
    p.relators
        .iter()
        .map(|r| {
            let mut row = vec![0i128; p.rank()];
            for l in &r.letters {
                if let Some(k) = p.generator_index(l.generator) {
                    row[k] += i128::from(l.exponent);
                }
            }
            row
        })
        .collect()
}

/// Diagonal of the Smith normal form, without trailing zeros.
pub fn smith_diagonal(mut m: Vec<Vec<i128>>, cols: usize) -> Vec<i128> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t] / m[t][t];
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / m[t][t];
                if q != 0 {
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // A smaller remainder appeared in the pivot row or column; move it to the pivot.
            let (i, j) = (t..rows)
                .map(|i| (i, t))
                .chain((t..cols).map(|j| (t, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs())
                .expect("pivot is nonzero");
            m.swap(t, i);
            for row in m.iter_mut() {
                row.swap(t, j);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    // Enforce the divisibility chain: diag(a, b) ~ diag(gcd, lcm).
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = gcd_i(diag[i], diag[j]);
            let l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

fn gcd_i(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let diag = smith_diagonal(relation_matrix(p), p.rank());
    let mut factors: Vec<u64> = diag.iter().filter(|&&d| d != 1).map(|&d| d as u64).collect();
    factors.extend(core::iter::repeat(0).take(p.rank() - diag.len()));
    AbelianInvariants(factors)
}

/// The generator images of an isomorphism, as words over each side's generators.
pub fn witness_words(a: &GroupTable, b: &GroupTable, iso: &Isomorphism) -> Vec<(BraidWord, BraidWord)> {
    iso.generators
        .iter()
        .map(|&(x, y)| (a.words[x as usize].clone(), b.words[y as usize].clone()))
        .collect()
}

/// Elements whose witness word has trivial strand permutation.
pub fn pure_elements(t: &GroupTable, n: u32) -> Vec<u32> {
    (0..t.order as u32)
        .filter(|&e| t.words[e as usize].permutation_image(n).map(|p| p.is_identity()).unwrap_or(false))
        .collect()
}

/// Letter of a generator at a table column.
pub fn column_letter(generators: &[Generator], x: usize) -> Letter {
    Letter::new(generators[x / 2], if x % 2 == 0 { 1 } else { -1 })
}
