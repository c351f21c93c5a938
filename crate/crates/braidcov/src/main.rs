use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use braidcov::config::Config;
use braidcov::formats::{self, CertificateFile, CERTIFICATE_SCHEMA};
use braidcov::suite;
use braidcov_core::atlas::{classify, eliminate_candidates, SurfaceKind};
use braidcov_core::covering::{extract_word, lift_motion, word_motion, Cover, Surface};
use braidcov_core::enumeration::{coset_enumerate_with, group_table, isomorphic, materialize, witness_words, Strategy};
use braidcov_core::oracles::{annulus_oracle, disc_action, sphere_word_problem, SphereVerdict};
use braidcov_core::presentations::van_buskirk;
use braidcov_core::rewriting::{
    certify_claims, describe, equality_from_triviality, paper_claims, search_identity, verify_derivation, Budget,
    SearchMode,
};
use braidcov_core::words::{parse_word, BraidWord};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "braidcov", version, about = "Surface braid groups: presentations, certificates, enumeration, covering lifts")]
struct Cli {
    /// TOML file with geometry tolerances, seed and budget (default: $BRAIDCOV_CONFIG).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a presentation in the text format.
    Present { surface: String, n: u32 },
    /// Coset-enumerate a presentation file.
    Enumerate {
        file: PathBuf,
        /// Subgroup generator, in the word grammar; repeatable.
        #[arg(long = "subgroup")]
        subgroup: Vec<String>,
        #[arg(long, default_value_t = 1_000_000)]
        max_cosets: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Hlt)]
        strategy: StrategyArg,
        /// Write the coset table here.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Test isomorphism with a named group, e.g. `dic:4` or `q8`.
        #[arg(long)]
        compare: Option<String>,
        /// Write the isomorphism witness here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Certify one claim in B_n(RP²).
    Derive {
        claim: String,
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Plain relator search instead of the lemma chain.
        #[arg(long)]
        unseeded: bool,
        /// Print every step.
        #[arg(long)]
        trace: bool,
    },
    /// Re-verify a saved certificate file.
    Check { file: PathBuf },
    /// Word problem: `s2` (sphere), `disc` or `annulus`.
    Wp {
        surface: String,
        m: u32,
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Lift a word to a cover and read the braid back off the lifted paths.
    Lift {
        n: u32,
        word: String,
        #[arg(long, value_enum, default_value_t = CoverArg::Antipodal)]
        cover: CoverArg,
        /// Sheets of the annulus cover.
        #[arg(long, default_value_t = 2)]
        sheets: u32,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Maximal finite subgroups: `rp2`, `s2` or `mcg_rp2`.
    Classify {
        surface: String,
        n: u32,
        /// Also print the candidate elimination (rp2, n ≥ 3).
        #[arg(long)]
        trace: bool,
    },
    /// Run every check for B_n(RP²) and print a summary.
    Verify { n: u32 },
    /// Run every check for B_n(RP²) and write the report.
    Report {
        n: u32,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Hlt,
    Felsch,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverArg {
    Antipodal,
    Annulus,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Md,
}

fn word(text: &str) -> Result<BraidWord> {
    parse_word(text).with_context(|| format!("cannot parse word `{text}`"))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn surface(text: &str) -> Result<SurfaceKind> {
    text.parse().map_err(|e| anyhow!("{e}"))
}

fn enumerate(
    file: &Path,
    subgroup: &[String],
    max_cosets: usize,
    strategy: StrategyArg,
    table: Option<&Path>,
    compare: Option<&str>,
    witness: Option<&Path>,
) -> Result<u8> {
    let text = std::fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
    let p = formats::parse_presentation(&text)?;
    let sub = subgroup.iter().map(|s| word(s)).collect::<Result<Vec<_>>>()?;
    let strategy = match strategy {
        StrategyArg::Hlt => Strategy::Hlt,
        StrategyArg::Felsch => Strategy::Felsch,
    };
    let t = coset_enumerate_with(&p, &sub, max_cosets, strategy)?;
    println!("{}: index {}", p.name, t.cosets);
    if let Some(path) = table {
        write_file(path, &formats::write_coset_table(&t))?;
    }
    if let Some(spec) = compare {
        if !sub.is_empty() {
            bail!("--compare needs the trivial subgroup");
        }
        let (name, n) = spec.split_once(':').map_or((spec, Ok(0)), |(a, b)| (a, b.parse::<u32>()));
        let other = formats::named_presentation(name, n.context("bad parameter in --compare")?)?;
        let a = group_table(&t)?;
        let b = materialize(&other, max_cosets)?;
        match isomorphic(&a, &b) {
            Some(iso) => {
                println!("isomorphic to {}", other.name);
                let w = formats::write_witness(&p.name, &other.name, &witness_words(&a, &b, &iso));
                match witness {
                    Some(path) => write_file(path, &w)?,
                    None => print!("{w}"),
                }
            }
            None => {
                println!("not isomorphic to {} (orders {} and {})", other.name, a.order, b.order);
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn derive(claim: &str, n: u32, budget: &Budget, out: Option<&Path>, unseeded: bool, trace: bool) -> Result<u8> {
    let p = van_buskirk(n)?;
    let c = paper_claims(n)
        .into_iter()
        .find(|c| c.label == claim)
        .ok_or_else(|| anyhow!("no claim `{claim}` at n = {n}"))?;
    let derivation = if unseeded {
        let target = c.from.concat(&c.to.invert());
        search_identity(&p, &target, budget).found().map(|d| equality_from_triviality(&c.from, &c.to, &d.steps))
    } else {
        certify_claims(n, SearchMode::Seeded, budget).into_iter().find(|x| x.claim.label == claim).and_then(|x| x.derivation)
    };
    println!("{claim}: {} = {}", formats::word_text(&c.from), formats::word_text(&c.to));
    let Some(d) = derivation else {
        println!("no certificate within the budget");
        return Ok(2);
    };
    let ok = verify_derivation(&p, &d)?;
    println!("certificate: {} steps, replay {}", d.steps.len(), if ok { "ok" } else { "FAILED" });
    if trace {
        for s in &d.steps {
            println!("  {}", describe(s));
        }
    }
    if let Some(path) = out {
        let file = CertificateFile { schema: CERTIFICATE_SCHEMA, presentation: "rp2".into(), n, claim: claim.into(), derivation: d };
        write_file(path, &file.to_json())?;
    }
    Ok(if ok { 0 } else { 1 })
}

fn check(file: &Path) -> Result<u8> {
    let text = std::fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
    let r = formats::check_certificate_text(&text)?;
    println!("steps: {}", r.steps);
    println!("replay: {}", if r.replays { "ok" } else { "FAILED" });
    println!("canonical: {}", if r.canonical { "ok" } else { "FAILED" });
    if let Some(e) = &r.error {
        println!("error: {e}");
    }
    Ok(if r.ok() { 0 } else { 1 })
}

fn wp(surface: &str, m: u32, text: &str, budget: &Budget, json: bool) -> Result<u8> {
    let w = word(text)?;
    match surface {
        "s2" => {
            let d = sphere_word_problem(m, &w, budget)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&d)?);
            } else {
                println!("verdict: {}", d.verdict);
                if let Some(c) = &d.certificate {
                    println!("certificate: {} steps", c.steps.len());
                }
            }
            Ok(if matches!(d.verdict, SphereVerdict::TrivialOrFullTwist) { 2 } else { 0 })
        }
        "disc" | "annulus" => {
            let trivial = if surface == "disc" { disc_action(m, &w)?.is_identity() } else { annulus_oracle(m, &w)? };
            let verdict = if trivial { "Trivial" } else { "Nontrivial" };
            if json {
                println!("{}", serde_json::json!({ "verdict": verdict, "evidence": "Action" }));
            } else {
                println!("verdict: {verdict} (Action)");
            }
            Ok(0)
        }
        _ => bail!("unknown surface `{surface}` for wp (s2, disc, annulus)"),
    }
}

fn lift(cfg: &Config, n: u32, text: &str, cover: CoverArg, sheets: u32, out_dir: &Path) -> Result<u8> {
    let w = word(text)?;
    let (surf, cov) = match cover {
        CoverArg::Antipodal => (Surface::ProjectivePlane, Cover::AntipodalSphere),
        CoverArg::Annulus => (Surface::Annulus, Cover::Annulus { d: sheets }),
    };
    let g = &cfg.geometry;
    let motion = word_motion(surf, n, &w, g)?;
    motion.validate(g)?;
    let scene = lift_motion(&motion, cov)?;
    let lifted = extract_word(&scene, g)?;
    std::fs::create_dir_all(out_dir).with_context(|| format!("cannot create {}", out_dir.display()))?;
    write_file(&out_dir.join("scene.txt"), &formats::write_scene(&scene))?;
    write_file(&out_dir.join("scene.svg"), &formats::write_svg(&scene, g.tilt))?;
    println!("word: {w}");
    println!("lift: {lifted}");
    println!("reduced: {}", lifted.free_reduce());
    Ok(0)
}

fn classify_cmd(surface_text: &str, n: u32, trace: bool) -> Result<u8> {
    let s = surface(surface_text)?;
    for e in classify(s, n)? {
        println!("{:<8} {:<14} {}", e.group(n).to_string(), e.formula(), e.source);
    }
    if trace && s == SurfaceKind::Rp2 && n >= 3 {
        let t = eliminate_candidates(n)?;
        for step in &t.steps {
            println!("{:?} {}: {}", step.action, step.group, step.reason);
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    let cfg = Config::load(cli.config.as_deref())?;
    let budget = cfg.budget()?;
    match cli.command {
        Command::Present { surface, n } => {
            print!("{}", formats::write_presentation(&formats::named_presentation(&surface, n)?));
            Ok(0)
        }
        Command::Enumerate { file, subgroup, max_cosets, strategy, table, compare, witness } => {
            enumerate(&file, &subgroup, max_cosets, strategy, table.as_deref(), compare.as_deref(), witness.as_deref())
        }
        Command::Derive { claim, n, out, unseeded, trace } => derive(&claim, n, &budget, out.as_deref(), unseeded, trace),
        Command::Check { file } => check(&file),
        Command::Wp { surface, m, word, json } => wp(&surface, m, &word, &budget, json),
        Command::Lift { n, word, cover, sheets, out_dir } => lift(&cfg, n, &word, cover, sheets, &out_dir),
        Command::Classify { surface, n, trace } => classify_cmd(&surface, n, trace),
        Command::Verify { n } => {
            let r = suite::verify(n, &budget)?;
            print!("{}", formats::report_markdown(&r));
            Ok(r.exit_code() as u8)
        }
        Command::Report { n, format, out } => {
            let r = suite::verify(n, &budget)?;
            let text = match format {
                ReportFormat::Json => formats::report_json(&r),
                ReportFormat::Md => formats::report_markdown(&r),
            };
            match out {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(r.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
