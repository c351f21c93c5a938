//! Strand motions on RP² and on the annulus, their lifts through the
//! antipodal double cover S² → RP² and through the d-fold cover z ↦ z^d of
//! the punctured plane, and braid words read off the lifted pictures.
//!
//! RP² is modelled as the unit sphere modulo v ~ −v. Base points sit near
//! the north pole on the meridian y = 0; the projection used for reading
//! crossings is stereographic from (1, 0, 0), which sends the north pole to
//! −1, the south pole to 1 and the antipodal map to w ↦ −1/w̄. Every point of
//! the lifted base set then lies on the real axis: north copies first.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oracles::{annulus_oracle, disc_action, sphere_word_problem, OracleError, SphereDecision};
use crate::presentations::van_buskirk;
use crate::rewriting::Budget;
use crate::words::{BraidWord, Generator, GeneratorKind, Letter};

pub type Vec3 = [f64; 3];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("generator {0} is not valid on this surface for {1} strands")]
    InvalidGenerator(Generator, u32),
    #[error("strands {0} and {1} come within {2:e} of each other")]
    Collision(usize, usize, f64),
    #[error("path {0} jumps between samples")]
    NotContinuous(usize),
    #[error("projection is not generic near t = {0}")]
    Degenerate(f64),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometryConfig {
    /// Spacing of the base points near the pole (or on the real axis for the annulus).
    pub spacing: f64,
    /// Samples per generator motion.
    pub samples: usize,
    /// Rotation of the projection direction, radians.
    pub tilt: f64,
    pub unit_tolerance: f64,
    pub min_separation: f64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        GeometryConfig { spacing: 0.1, samples: 1000, tilt: 0.0123, unit_tolerance: 1e-9, min_separation: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Surface {
    ProjectivePlane,
    Annulus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cover {
    AntipodalSphere,
    Annulus { d: u32 },
}

/// `samples[t][k]`: position of strand `k` at the t-th time sample, uniformly spaced on [0, 1].
/// On RP² the stored vector is one of the two antipodal representatives, chosen continuously.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrandMotion {
    pub surface: Surface,
    pub n: u32,
    pub samples: Vec<Vec<Vec3>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftScene {
    pub cover: Cover,
    pub n: u32,
    /// Lifted positions, time-major; the annulus cover adds the fixed hole as the last path.
    pub paths: Vec<Vec<Vec3>>,
    /// `(strand, sheet)` of each lifted path; strand `i` on sheet `j` is numbered `i + j·n`.
    pub labels: Vec<(u32, u32)>,
}

fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn norm(a: Vec3) -> f64 {
    libm::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2])
}

fn normalize(a: Vec3) -> Vec3 {
    scale(a, 1.0 / norm(a))
}

fn dist(a: Vec3, b: Vec3) -> f64 {
    norm(add(a, scale(b, -1.0)))
}

/// Shear applied before reading crossings of annulus scenes.
pub const ANNULUS_SHEAR: f64 = 0.0731;

/// Base point `k` (1-based) of RP², on the northern cap.
pub fn sphere_base_point(k: u32, cfg: &GeometryConfig) -> Vec3 {
    normalize([-cfg.spacing * f64::from(k), 0.0, 1.0])
}

/// Base point `k` (1-based) of the annulus, on the positive real axis; the hole is at 0.
pub fn annulus_base_point(k: u32) -> Vec3 {
    [f64::from(k), 0.0, 0.0]
}

/// Stereographic projection from (1, 0, 0).
pub fn stereographic(v: Vec3) -> (f64, f64) {
    let d = 1.0 - v[0];
    (-v[2] / d, v[1] / d)
}

fn base_points(surface: Surface, n: u32, cfg: &GeometryConfig) -> Vec<Vec3> {
    (1..=n)
        .map(|k| match surface {
            Surface::ProjectivePlane => sphere_base_point(k, cfg),
            Surface::Annulus => annulus_base_point(k),
        })
        .collect()
}

fn check_generator(surface: Surface, g: Generator, n: u32) -> Result<(), GeometryError> {
    let ok = match (surface, g.kind) {
        (_, GeneratorKind::Sigma) => g.index >= 1 && g.index < n,
        (Surface::ProjectivePlane, GeneratorKind::Rho) => g.index >= 1 && g.index <= n,
        (Surface::Annulus, GeneratorKind::Tau) => g.index == 1 && n >= 1,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(GeometryError::InvalidGenerator(g, n))
    }
}

/// Half-turn exchanging base positions `i`, `i+1`; strand `i` passes on the +y side for positive exponent.
fn half_turn(a: Vec3, b: Vec3, exponent: i8, t: f64) -> (Vec3, Vec3) {
    let m = scale(add(a, b), 0.5);
    let d = scale(add(b, scale(a, -1.0)), 0.5);
    let r = norm(d);
    let side = if exponent > 0 { 1.0 } else { -1.0 };
    let (c, s) = (libm::cos(core::f64::consts::PI * t), libm::sin(core::f64::consts::PI * t));
    let perp = [0.0, side * r, 0.0];
    (add(add(m, scale(d, -c)), scale(perp, s)), add(add(m, scale(d, c)), scale(perp, -s)))
}

/// Motion of a whole word, generator by generator, starting at the base configuration.
pub fn word_motion(surface: Surface, n: u32, w: &BraidWord, cfg: &GeometryConfig) -> Result<StrandMotion, GeometryError> {
    let base = base_points(surface, n, cfg);
    // Strand at each base position, and the sign of its representative (RP² only).
    let mut at: Vec<usize> = (0..n as usize).collect();
    let mut sign = vec![1.0f64; n as usize];
    let mut current = base.clone();
    let mut samples = vec![current.clone()];
    for l in &w.letters {
        let g = l.generator;
        check_generator(surface, g, n)?;
        let i = g.index as usize - 1;
        for step in 1..=cfg.samples {
            let t = step as f64 / cfg.samples as f64;
            match g.kind {
                GeneratorKind::Sigma => {
                    let (p, q) = half_turn(base[i], base[i + 1], l.exponent, t);
                    let (a, b) = (at[i], at[i + 1]);
                    current[a] = match surface {
                        Surface::ProjectivePlane => scale(normalize(p), sign[a]),
                        Surface::Annulus => p,
                    };
                    current[b] = match surface {
                        Surface::ProjectivePlane => scale(normalize(q), sign[b]),
                        Surface::Annulus => q,
                    };
                }
                GeneratorKind::Rho => {
                    // Along the great circle through the base point and (0, ±1, 0).
                    let a = at[i];
                    let th = core::f64::consts::PI * t;
                    let y = if l.exponent > 0 { 1.0 } else { -1.0 };
                    let v = add(scale(base[i], libm::cos(th)), [0.0, y * libm::sin(th), 0.0]);
                    current[a] = scale(v, sign[a]);
                }
                GeneratorKind::Tau => {
                    // Clockwise for τ, so the hole passes above: τ is σ_0² with the hole as strand 0.
                    let a = at[0];
                    let th = -2.0 * core::f64::consts::PI * t * f64::from(l.exponent);
                    let r = base[0][0];
                    current[a] = [r * libm::cos(th), r * libm::sin(th), 0.0];
                }
                GeneratorKind::X => return Err(GeometryError::InvalidGenerator(g, n)),
            }
            samples.push(current.clone());
        }
        match g.kind {
            GeneratorKind::Sigma => at.swap(i, i + 1),
            GeneratorKind::Rho => sign[at[i]] = -sign[at[i]],
            _ => {}
        }
        // Snap to the exact base set so rounding does not accumulate.
        for (pos, &s) in at.iter().enumerate() {
            current[s] = match surface {
                Surface::ProjectivePlane => scale(base[pos], sign[s]),
                Surface::Annulus => base[pos],
            };
        }
        *samples.last_mut().expect("nonempty") = current.clone();
    }
    Ok(StrandMotion { surface, n, samples })
}

pub fn generator_motion(surface: Surface, g: Generator, n: u32, cfg: &GeometryConfig) -> Result<StrandMotion, GeometryError> {
    word_motion(surface, n, &BraidWord::single(g, 1), cfg)
}

impl StrandMotion {
    pub fn constant(surface: Surface, n: u32, cfg: &GeometryConfig) -> StrandMotion {
        let base = base_points(surface, n, cfg);
        StrandMotion { surface, n, samples: vec![base.clone(), base] }
    }

    /// Smallest distance between two strands over all samples (on RP², between the point pairs).
    pub fn min_separation(&self) -> (f64, usize, usize) {
        let mut best = (f64::INFINITY, 0, 0);
        for frame in &self.samples {
            for a in 0..frame.len() {
                for b in a + 1..frame.len() {
                    let mut d = dist(frame[a], frame[b]);
                    if self.surface == Surface::ProjectivePlane {
                        d = d.min(dist(frame[a], scale(frame[b], -1.0)));
                    }
                    if d < best.0 {
                        best = (d, a, b);
                    }
                }
            }
        }
        best
    }

    pub fn validate(&self, cfg: &GeometryConfig) -> Result<(), GeometryError> {
        if self.surface == Surface::ProjectivePlane {
            for frame in &self.samples {
                for &v in frame {
                    if (norm(v) - 1.0).abs() > cfg.unit_tolerance {
                        return Err(GeometryError::NotContinuous(0));
                    }
                }
            }
        }
        let (d, a, b) = self.min_separation();
        if d <= cfg.min_separation {
            return Err(GeometryError::Collision(a, b, d));
        }
        Ok(())
    }
}

fn complex_root(z: Vec3, d: u32, previous_arg: Option<f64>) -> (Vec3, f64) {
    let r = libm::sqrt(z[0] * z[0] + z[1] * z[1]);
    let mut arg = libm::atan2(z[1], z[0]);
    if let Some(prev) = previous_arg {
        let two_pi = 2.0 * core::f64::consts::PI;
        while arg - prev > core::f64::consts::PI {
            arg -= two_pi;
        }
        while arg - prev < -core::f64::consts::PI {
            arg += two_pi;
        }
    }
    let rr = libm::pow(r, 1.0 / f64::from(d));
    let a = arg / f64::from(d);
    ([rr * libm::cos(a), rr * libm::sin(a), 0.0], arg)
}

fn rotate(z: Vec3, angle: f64) -> Vec3 {
    let (c, s) = (libm::cos(angle), libm::sin(angle));
    [z[0] * c - z[1] * s, z[0] * s + z[1] * c, 0.0]
}

pub fn lift_motion(m: &StrandMotion, cover: Cover) -> Result<LiftScene, GeometryError> {
    let n = m.n as usize;
    match (m.surface, cover) {
        (Surface::ProjectivePlane, Cover::AntipodalSphere) => {
            let paths = m
                .samples
                .iter()
                .map(|frame| frame.iter().copied().chain(frame.iter().map(|&v| scale(v, -1.0))).collect())
                .collect();
            let labels = (0..2).flat_map(|j| (1..=m.n).map(move |i| (i, j))).collect();
            Ok(LiftScene { cover, n: m.n, paths, labels })
        }
        (Surface::Annulus, Cover::Annulus { d }) => {
            let mut args: Vec<Option<f64>> = vec![None; n];
            let mut paths = Vec::with_capacity(m.samples.len());
            for frame in &m.samples {
                let mut lifted = vec![[0.0; 3]; d as usize * n];
                for (k, &z) in frame.iter().enumerate() {
                    let (root, arg) = complex_root(z, d, args[k]);
                    args[k] = Some(arg);
                    for j in 0..d as usize {
                        let angle = 2.0 * core::f64::consts::PI * j as f64 / f64::from(d);
                        lifted[k + j * n] = rotate(root, angle);
                    }
                }
                lifted.push([0.0; 3]);
                paths.push(lifted);
            }
            let mut labels: Vec<(u32, u32)> = (0..d).flat_map(|j| (1..=m.n).map(move |i| (i, j))).collect();
            labels.push((0, 0));
            Ok(LiftScene { cover, n: m.n, paths, labels })
        }
        _ => Err(GeometryError::Degenerate(0.0)),
    }
}

impl LiftScene {
    /// Planar coordinates used for reading crossings.
    fn planar(&self, v: Vec3) -> (f64, f64) {
        match self.cover {
            Cover::AntipodalSphere => stereographic(v),
            // Sheets of the annulus cover are rotations about the hole, so z, the hole and
            // the opposite lift are collinear; a shear of the plane keeps them off one vertical.
            Cover::Annulus { .. } => (v[0] + ANNULUS_SHEAR * v[1] * v[1], v[1]),
        }
    }

    /// Strand ids at each position of the left-to-right order at time sample `t`.
    pub fn order_at(&self, t: usize, tilt: f64) -> Vec<usize> {
        let keys = self.keys(t, tilt);
        let mut order: Vec<usize> = (0..keys.len()).collect();
        order.sort_by(|&a, &b| keys[a].0.partial_cmp(&keys[b].0).expect("finite"));
        order
    }

    /// Rotated planar coordinates of every path at time sample `t`.
    pub fn keys(&self, t: usize, tilt: f64) -> Vec<(f64, f64)> {
        let (c, s) = (libm::cos(tilt), libm::sin(tilt));
        self.paths[t]
            .iter()
            .map(|&v| {
                let (x, y) = self.planar(v);
                (x * c - y * s, x * s + y * c)
            })
            .collect()
    }

    pub fn is_constant(&self) -> bool {
        self.paths.windows(2).all(|w| w[0] == w[1])
    }
}

/// Reads the braid word off a lifted scene.
///
/// Between samples the projected positions move linearly, so the order
/// changes are found exactly, earliest first. A strand moving one place to
/// the right gives σ_k if it passes on the side of larger imaginary part.
pub fn extract_word(s: &LiftScene, cfg: &GeometryConfig) -> Result<BraidWord, GeometryError> {
    let mut word = BraidWord::empty();
    if s.paths.is_empty() {
        return Ok(word);
    }
    let mut order = s.order_at(0, cfg.tilt);
    let mut prev = s.keys(0, cfg.tilt);
    for t in 1..s.paths.len() {
        let next = s.keys(t, cfg.tilt);
        let mut clock = 0.0f64;
        loop {
            // Earliest crossing of an adjacent pair after `clock`.
            let mut best: Option<(f64, usize)> = None;
            for k in 0..order.len() - 1 {
                let (a, b) = (order[k], order[k + 1]);
                let d0 = prev[b].0 - prev[a].0;
                let d1 = next[b].0 - next[a].0;
                if d1 >= 0.0 || d0 == d1 {
                    continue;
                }
                let tau = d0 / (d0 - d1);
                if tau <= clock && d0 >= 0.0 {
                    continue;
                }
                match best {
                    Some((bt, _)) if (bt - tau).abs() < 1e-12 && tau > clock => {
                        return Err(GeometryError::Degenerate(t as f64));
                    }
                    Some((bt, _)) if bt <= tau => {}
                    _ => best = Some((tau, k)),
                }
            }
            let Some((tau, k)) = best else { break };
            let (a, b) = (order[k], order[k + 1]);
            let ya = prev[a].1 + tau * (next[a].1 - prev[a].1);
            let yb = prev[b].1 + tau * (next[b].1 - prev[b].1);
            if (ya - yb).abs() < cfg.min_separation {
                return Err(GeometryError::Collision(a, b, (ya - yb).abs()));
            }
            word.letters.push(Letter::new(Generator::sigma(k as u32 + 1), if ya > yb { 1 } else { -1 }));
            order.swap(k, k + 1);
            clock = tau;
        }
        prev = next;
    }
    Ok(word)
}

/// Words for every generator lift, computed once.
#[derive(Debug, Clone)]
pub struct LiftTable {
    pub n: u32,
    pub cover: Cover,
    images: HashMap<Letter, BraidWord>,
}

impl LiftTable {
    pub fn antipodal(n: u32, cfg: &GeometryConfig) -> Result<LiftTable, GeometryError> {
        let gens: Vec<Generator> = (1..n).map(Generator::sigma).chain((1..=n).map(Generator::rho)).collect();
        Self::build(Surface::ProjectivePlane, Cover::AntipodalSphere, n, &gens, cfg)
    }

    pub fn annulus(d: u32, n: u32, cfg: &GeometryConfig) -> Result<LiftTable, GeometryError> {
        let gens: Vec<Generator> = (1..n).map(Generator::sigma).chain([Generator::tau()]).collect();
        Self::build(Surface::Annulus, Cover::Annulus { d }, n, &gens, cfg)
    }

    fn build(surface: Surface, cover: Cover, n: u32, gens: &[Generator], cfg: &GeometryConfig) -> Result<LiftTable, GeometryError> {
        let mut images = HashMap::new();
        for &g in gens {
            for e in [1i8, -1] {
                let m = word_motion(surface, n, &BraidWord::single(g, e), cfg)?;
                m.validate(cfg)?;
                let scene = lift_motion(&m, cover)?;
                images.insert(Letter::new(g, e), extract_word(&scene, cfg)?);
            }
        }
        Ok(LiftTable { n, cover, images })
    }

    pub fn image(&self, l: Letter) -> Option<&BraidWord> {
        self.images.get(&l)
    }

    /// Homomorphic extension of the generator lifts.
    pub fn apply(&self, w: &BraidWord) -> Result<BraidWord, GeometryError> {
        let mut out = BraidWord::empty();
        for &l in &w.letters {
            let img = self.images.get(&l).ok_or(GeometryError::InvalidGenerator(l.generator, self.n))?;
            out.extend(img);
        }
        Ok(out)
    }
}

/// ψ: B_n(RP²) → B_{2n}(S²).
pub fn psi(n: u32, w: &BraidWord) -> Result<BraidWord, GeometryError> {
    LiftTable::antipodal(n, &GeometryConfig::default())?.apply(w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorImage {
    pub relator: BraidWord,
    pub image: BraidWord,
    pub decision: SphereDecision,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorReport {
    pub n: u32,
    pub images: Vec<RelatorImage>,
}

impl RelatorReport {
    pub fn hard_failures(&self) -> usize {
        self.images.iter().filter(|r| r.decision.verdict.is_nontrivial()).count()
    }

    pub fn all_trivial(&self) -> bool {
        self.images.iter().all(|r| r.decision.verdict.is_trivial())
    }
}

/// Decides ψ(r) in B_{2n}(S²) for every Van Buskirk relator r.
pub fn verify_relator_images(n: u32, budget: &Budget) -> Result<RelatorReport, GeometryError> {
    let p = van_buskirk(n).map_err(|_| GeometryError::Degenerate(0.0))?;
    let table = LiftTable::antipodal(n, &GeometryConfig::default())?;
    let mut images = Vec::new();
    for r in &p.relators {
        let image = table.apply(r)?.free_reduce();
        let decision = sphere_word_problem(2 * n, &image, budget)?;
        images.push(RelatorImage { relator: r.clone(), image, decision });
    }
    Ok(RelatorReport { n, images })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub d: u32,
    pub n: u32,
    pub trials: usize,
    pub failures: Vec<BraidWord>,
}

/// Lifts each word certified nontrivial in B_n(annulus) and checks its image in B_{dn}(annulus).
pub fn injectivity_spotcheck_annulus(
    d: u32,
    n: u32,
    words: impl IntoIterator<Item = BraidWord>,
) -> Result<SpotCheck, GeometryError> {
    let table = LiftTable::annulus(d, n, &GeometryConfig::default())?;
    let mut trials = 0;
    let mut failures = Vec::new();
    for w in words {
        if annulus_oracle(n, &w)? {
            continue;
        }
        trials += 1;
        let image = table.apply(&w)?;
        if disc_action(d * n + 1, &image)?.is_identity() {
            failures.push(w);
        }
    }
    Ok(SpotCheck { d, n, trials, failures })
}
