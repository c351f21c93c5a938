//! Text formats for presentations, coset tables, certificates, scenes and reports.
//!
//! Presentation text:
//!
//! ```text
//! name: B_2(RP2)
//! generators: s1 r1 r2
//! r1^-1 s1 r1 s1
//! ```
//!
//! Lines starting with `#` and blank lines are ignored; every other line after
//! the header is one relator in the word grammar.
//!
//! Coset table text: a `label:`, `cosets:` and `columns:` header, then one row
//! per coset listing its image under each column letter. Cosets are numbered
//! from 0; coset 0 is the subgroup.

use std::fmt::Write as _;

use braidcov_core::atlas::{ClassificationReport, Status};
use braidcov_core::covering::{Cover, LiftScene};
use braidcov_core::enumeration::{column_letter, CosetTable};
use braidcov_core::presentations::{
    annulus_presentation, finite_group_presentation, sphere_presentation, van_buskirk, FiniteFamily, Presentation,
};
use braidcov_core::rewriting::{verify_derivation, Derivation};
use braidcov_core::words::{parse_word, BraidWord, Generator, WordError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const CERTIFICATE_SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("unknown presentation `{0}`")]
    UnknownPresentation(String),
    #[error("presentation {0} rejected: {1}")]
    Presentation(String, String),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// The presentations the CLI can name: `rp2`, `s2`, `annulus`, `dic`, `dih`, `cyclic`,
/// and the fixed groups `q8`, `tstar`, `ostar`, `istar`, `a4`, `s4`, `a5` (which ignore `n`).
pub fn named_presentation(name: &str, n: u32) -> Result<Presentation, FormatError> {
    let fail = |e: braidcov_core::presentations::PresentationError| FormatError::Presentation(format!("{name} {n}"), e.to_string());
    let family = match name {
        "rp2" => return van_buskirk(n).map_err(fail),
        "s2" => return sphere_presentation(n).map_err(fail),
        "annulus" => return annulus_presentation(n).map_err(fail),
        "dic" => FiniteFamily::Dic(n),
        "dih" => FiniteFamily::Dih(n),
        "cyclic" => FiniteFamily::Cyclic(n),
        "q8" => FiniteFamily::Q8,
        "tstar" => FiniteFamily::TStar,
        "ostar" => FiniteFamily::OStar,
        "istar" => FiniteFamily::IStar,
        "a4" => FiniteFamily::Alt4,
        "s4" => FiniteFamily::Sym4,
        "a5" => FiniteFamily::Alt5,
        _ => return Err(FormatError::UnknownPresentation(name.into())),
    };
    finite_group_presentation(family).map_err(fail)
}

/// Canonical text of a word, `1` for the empty word.
pub fn word_text(w: &BraidWord) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.to_string()
    }
}

pub fn parse_word_text(text: &str) -> Result<BraidWord, WordError> {
    if text.trim() == "1" {
        Ok(BraidWord::empty())
    } else {
        parse_word(text)
    }
}

pub fn write_presentation(p: &Presentation) -> String {
    let mut out = format!("name: {}\ngenerators:", p.name);
    for g in &p.generators {
        let _ = write!(out, " {g}");
    }
    out.push('\n');
    for r in &p.relators {
        let _ = writeln!(out, "{}", word_text(r));
    }
    out
}

fn generator_of(token: &str, line: usize) -> Result<Generator, FormatError> {
    let w = parse_word(token)?;
    match w.letters.as_slice() {
        [l] if l.exponent == 1 => Ok(l.generator),
        _ => Err(syntax(line, format!("`{token}` is not a generator"))),
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, FormatError> {
    let mut name = None;
    let mut generators: Option<Vec<Generator>> = None;
    let mut relators = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        if let Some(rest) = body.strip_prefix("name:") {
            name = Some(rest.trim().to_string());
        } else if let Some(rest) = body.strip_prefix("generators:") {
            generators = Some(rest.split_whitespace().map(|t| generator_of(t, line)).collect::<Result<_, _>>()?);
        } else {
            if generators.is_none() {
                return Err(syntax(line, "relator before the generators line"));
            }
            relators.push((line, parse_word_text(body)?));
        }
    }
    let generators = generators.ok_or_else(|| syntax(0, "missing generators line"))?;
    let mut p = Presentation::new(name.unwrap_or_default(), generators);
    for (line, r) in relators {
        if !p.accepts(&r) {
            return Err(syntax(line, format!("relator `{r}` uses an undeclared generator")));
        }
        p.add_relator(r);
    }
    Ok(p)
}

fn column_names(generators: &[Generator]) -> Vec<String> {
    (0..2 * generators.len()).map(|x| column_letter(generators, x).to_string()).collect()
}

pub fn write_coset_table(t: &CosetTable) -> String {
    let mut out = format!("label: {}\ncosets: {}\ncolumns: {}\n", t.label, t.cosets, column_names(&t.generators).join(" "));
    for row in &t.action {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

pub fn parse_coset_table(text: &str) -> Result<CosetTable, FormatError> {
    let mut label = String::new();
    let mut cosets = None;
    let mut generators = None;
    let mut action = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        if let Some(rest) = body.strip_prefix("label:") {
            label = rest.trim().to_string();
        } else if let Some(rest) = body.strip_prefix("cosets:") {
            cosets = Some(rest.trim().parse::<usize>().map_err(|_| syntax(line, "bad coset count"))?);
        } else if let Some(rest) = body.strip_prefix("columns:") {
            let cols: Vec<&str> = rest.split_whitespace().collect();
            if cols.len() % 2 != 0 {
                return Err(syntax(line, "odd number of columns"));
            }
            let gens: Vec<Generator> = cols.iter().step_by(2).map(|c| generator_of(c, line)).collect::<Result<_, _>>()?;
            if column_names(&gens) != cols {
                return Err(syntax(line, "columns must alternate generator and inverse"));
            }
            generators = Some(gens);
        } else {
            let row: Vec<u32> = body
                .split_whitespace()
                .map(|c| c.parse().map_err(|_| syntax(line, format!("bad entry `{c}`"))))
                .collect::<Result<_, _>>()?;
            action.push((line, row));
        }
    }
    let generators = generators.ok_or_else(|| syntax(0, "missing columns line"))?;
    let cosets = cosets.ok_or_else(|| syntax(0, "missing cosets line"))?;
    if action.len() != cosets {
        return Err(syntax(0, format!("{} rows for {cosets} cosets", action.len())));
    }
    let mut rows = Vec::with_capacity(cosets);
    for (line, row) in action {
        if row.len() != 2 * generators.len() || row.iter().any(|&c| c as usize >= cosets) {
            return Err(syntax(line, "row width or entry out of range"));
        }
        rows.push(row);
    }
    Ok(CosetTable { label, generators, cosets, action: rows })
}

/// One line `domain-word -> image-word` per generator of the domain.
pub fn write_witness(domain: &str, codomain: &str, pairs: &[(BraidWord, BraidWord)]) -> String {
    let mut out = format!("# isomorphism {domain} -> {codomain}\n");
    for (x, y) in pairs {
        let _ = writeln!(out, "{} -> {}", word_text(x), word_text(y));
    }
    out
}

pub fn parse_witness(text: &str) -> Result<Vec<(BraidWord, BraidWord)>, FormatError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let (x, y) = body.split_once("->").ok_or_else(|| syntax(i + 1, "expected `->`"))?;
        out.push((parse_word_text(x)?, parse_word_text(y)?));
    }
    Ok(out)
}

/// A saved certificate: the presentation it refers to and the derivation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub schema: u32,
    /// Name accepted by [`named_presentation`].
    pub presentation: String,
    pub n: u32,
    pub claim: String,
    pub derivation: Derivation,
}

impl CertificateFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<CertificateFile, FormatError> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateCheck {
    /// The derivation replays from `from` to `to`.
    pub replays: bool,
    /// Re-serializing the parsed file reproduces the input byte for byte.
    pub canonical: bool,
    pub steps: usize,
    pub error: Option<String>,
}

impl CertificateCheck {
    pub fn ok(&self) -> bool {
        self.replays && self.canonical
    }
}

pub fn check_certificate_text(text: &str) -> Result<CertificateCheck, FormatError> {
    let file = CertificateFile::from_json(text)?;
    let p = named_presentation(&file.presentation, file.n)?;
    let (replays, error) = match verify_derivation(&p, &file.derivation) {
        Ok(ok) => (ok, (!ok).then(|| "replay ends at a different word".to_string())),
        Err(e) => (false, Some(e.to_string())),
    };
    Ok(CertificateCheck { replays, canonical: file.to_json() == text, steps: file.derivation.steps.len(), error })
}

fn cover_text(c: Cover) -> String {
    match c {
        Cover::AntipodalSphere => "antipodal".into(),
        Cover::Annulus { d } => format!("annulus {d}"),
    }
}

/// Header lines, then `t x y z x y z …` per time sample, paths in label order.
pub fn write_scene(s: &LiftScene) -> String {
    let samples = s.paths.len();
    let mut out = format!("# lifted scene\ncover: {}\nn: {}\nsamples: {samples}\nlabels:", cover_text(s.cover), s.n);
    for (strand, sheet) in &s.labels {
        let _ = write!(out, " {strand}/{sheet}");
    }
    out.push('\n');
    let denom = samples.saturating_sub(1).max(1) as f64;
    for (t, frame) in s.paths.iter().enumerate() {
        let _ = write!(out, "{:.6}", t as f64 / denom);
        for v in frame {
            let _ = write!(out, " {:.9} {:.9} {:.9}", v[0], v[1], v[2]);
        }
        out.push('\n');
    }
    out
}

const SHEET_COLOURS: [&str; 4] = ["#1f5fa8", "#c0392b", "#2e8b57", "#8e44ad"];

/// Braid diagram read from the scene: horizontal position is the strand's rank
/// in the projected order, time runs downwards, and at a crossing the strand
/// with the larger depth key is drawn on top.
pub fn write_svg(s: &LiftScene, tilt: f64) -> String {
    let paths = s.labels.len();
    let (gap, margin, height) = (48.0, 32.0, 640.0);
    let width = 2.0 * margin + gap * paths.saturating_sub(1) as f64;
    let frames = s.paths.len();
    let y = |t: usize| margin + height * t as f64 / frames.saturating_sub(1).max(1) as f64;
    let x = |rank: usize| margin + gap * rank as f64;
    let ranks: Vec<Vec<usize>> = (0..frames)
        .map(|t| {
            let mut rank = vec![0; paths];
            for (pos, &id) in s.order_at(t, tilt).iter().enumerate() {
                rank[id] = pos;
            }
            rank
        })
        .collect();
    let colour = |id: usize| {
        let (strand, sheet) = s.labels[id];
        if strand == 0 {
            "#555555"
        } else {
            SHEET_COLOURS[sheet as usize % SHEET_COLOURS.len()]
        }
    };
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{:.0}\" viewBox=\"0 0 {width:.0} {:.0}\">\n",
        height + 2.0 * margin,
        height + 2.0 * margin
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    let mut crossings = Vec::new();
    for id in 0..paths {
        let mut start = 0;
        for t in 1..=frames {
            if t == frames || ranks[t][id] != ranks[t - 1][id] {
                let _ = writeln!(
                    out,
                    "<line x1=\"{:.1}\" y1=\"{:.2}\" x2=\"{:.1}\" y2=\"{:.2}\" stroke=\"{}\" stroke-width=\"3\"/>",
                    x(ranks[start][id]),
                    y(start),
                    x(ranks[t - 1][id]),
                    y(t - 1),
                    colour(id)
                );
                if t < frames {
                    let depth = (s.keys(t - 1, tilt)[id].1 + s.keys(t, tilt)[id].1) / 2.0;
                    crossings.push((depth, id, t));
                }
                start = t;
            }
        }
    }
    crossings.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
    for (_, id, t) in crossings {
        let (x1, y1, x2, y2) = (x(ranks[t - 1][id]), y(t - 1), x(ranks[t][id]), y(t));
        let _ = writeln!(out, "<line x1=\"{x1:.1}\" y1=\"{y1:.2}\" x2=\"{x2:.1}\" y2=\"{y2:.2}\" stroke=\"white\" stroke-width=\"9\"/>");
        let _ = writeln!(
            out,
            "<line x1=\"{x1:.1}\" y1=\"{y1:.2}\" x2=\"{x2:.1}\" y2=\"{y2:.2}\" stroke=\"{}\" stroke-width=\"3\"/>",
            colour(id)
        );
    }
    for (pos, &id) in s.order_at(0, tilt).iter().enumerate() {
        let (strand, sheet) = s.labels[id];
        let text = if strand == 0 { "hole".to_string() } else { format!("{strand}/{sheet}") };
        let _ = writeln!(out, "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"middle\">{text}</text>", x(pos), margin - 10.0);
    }
    out.push_str("</svg>\n");
    out
}

pub fn report_json(r: &ClassificationReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("plain data");
    s.push('\n');
    s
}

fn status_cell(s: &Status) -> String {
    match s {
        Status::Verified => "verified".into(),
        Status::PartiallyVerified { gaps } => format!("partially-verified: {}", gaps.join("; ")),
        Status::StatementOnly { note } => format!("statement-only: {note}"),
        Status::Failed { reason } => format!("FAILED: {reason}"),
    }
}

pub fn report_markdown(r: &ClassificationReport) -> String {
    let mut out = format!("# B_{}(RP²) verification report\n\n", r.n);
    let verdict = match r.exit_code() {
        0 => "all verified",
        2 => "verified with gaps",
        _ => "hard failure",
    };
    let _ = writeln!(out, "Schema {}. Outcome: **{verdict}** ({} gaps, {} failures).\n", r.schema, r.gaps(), r.hard_failures());
    out.push_str("## Maximal finite subgroups\n\n| group | formula | source | status | maximality |\n|---|---|---|---|---|\n");
    for e in &r.entries {
        let _ = writeln!(out, "| {} | {} | {} | {} | {} |", e.group, e.formula, e.source, status_cell(&e.status), status_cell(&e.maximality));
    }
    out.push_str("\n## Claims\n\n| claim | status | steps | table |\n|---|---|---|---|\n");
    for c in &r.claims {
        let table = match c.table_check {
            Some(true) => "agrees",
            Some(false) => "DIFFERS",
            None => "-",
        };
        let _ = writeln!(out, "| {} | {} | {} | {table} |", c.label, status_cell(&c.status), c.steps);
    }
    out.push_str("\n## Checks\n\n| check | status | detail |\n|---|---|---|\n");
    for c in &r.checks {
        let _ = writeln!(out, "| {} | {} | {} |", c.name, status_cell(&c.status), c.detail);
    }
    let l = &r.order_ledger;
    out.push_str("\n## Order ledger\n\n");
    let _ = writeln!(out, "- order of the permutation of a: {}", l.a_permutation_order);
    let _ = writeln!(out, "- permutation of a^n is the identity: {}", l.a_pow_n_pure);
    let _ = writeln!(out, "- permutation of Δ moves points: {}", l.delta_moves_points);
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    let _ = writeln!(out, "- exact order of a: {}", opt(l.a_order.map(|o| o.to_string())));
    let _ = writeln!(out, "- ⟨a, Δ⟩ is the whole group: {}", opt(l.a_delta_generate.map(|b| b.to_string())));
    let _ = writeln!(out, "- status: {}", status_cell(&l.status));
    if let Some(e) = &r.elimination {
        out.push_str("\n## Candidate elimination\n\n");
        let cands: Vec<String> = e.candidates.iter().map(|c| c.group.to_string()).collect();
        let _ = writeln!(out, "Candidates: {}\n", cands.join(", "));
        for step in &e.steps {
            let _ = writeln!(out, "- {:?} {}: {}", step.action, step.group, step.reason);
            for f in &step.facts {
                let _ = writeln!(out, "  - {} ({})", f.statement, if f.holds { "holds" } else { "FAILS" });
            }
        }
        let result: Vec<String> = e.result.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "\nResult: {}", result.join(", "));
    }
    out
}
