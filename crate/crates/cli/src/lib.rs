//! The `axkin` command line: argument parsing, command dispatch and report
//! rendering. `main.rs` only maps the outcome to an exit code.

pub mod report;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use axkin_core::axioms::{check_claim, AxiomId, Claim, Mode, SystemId, TwinVariant, Verdict};
use axkin_core::constructions::{build_named, ModelDescriptor, NamedModel};
use axkin_core::efield::FieldElem;
use axkin_core::geom::{classify_surface, sample_refute};
use axkin_core::spec_file::{load_model, parse_scenario, parse_surface};
use axkin_core::twin::{compare_elapsed, crosscheck_characterization, minkowski_sphere, Comparison};
use axkin_core::worldview::Model;
use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{CheckReport, CrosscheckSummary, MsReport, ScenarioReport, SurfaceReport};

#[derive(Debug, Parser)]
#[command(
    name = "axkin",
    version,
    about = "Exact checker for axioms of kinematics and the twin paradox"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check axioms, axiom systems and twin-paradox variants on a model.
    Check(CheckArgs),
    /// Evaluate an explicit twin situation from a scenario file.
    Scenario(ScenarioArgs),
    /// Compare proper times with the sphere-triple classification on samples.
    Crosscheck(CrosscheckArgs),
    /// Classify the reference observer's Minkowski sphere.
    Ms(MsArgs),
    /// Classify a surface given in a JSON file.
    Surface(SurfaceArgs),
    /// Print a named model's expected verdicts next to the computed ones.
    Table(TableArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Named model: minkowski, newtonian, thm41, thm55, hemisphere.
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    pub model: Option<String>,
    /// JSON model spec file.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    /// thm55 shape parameter b.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<FieldElem>,
    /// thm55 shape parameter c.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<FieldElem>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Sample,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Comma-separated claims; default is every axiom, system and variant.
    #[arg(long, value_delimiter = ',')]
    pub axioms: Vec<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report here ("-" for stdout).
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// JSON scenario file.
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CrosscheckArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MsArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Also classify this many sampled triples.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    /// JSON surface file.
    pub file: PathBuf,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub model: String,
    #[arg(long, default_value_t = 3)]
    pub d: usize,
}

pub struct LoadedModel {
    pub model: Model,
    pub descriptor: ModelDescriptor,
}

pub fn load(args: &ModelArgs) -> anyhow::Result<LoadedModel> {
    if let Some(path) = &args.spec {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let model = load_model(&text)?;
        let descriptor = ModelDescriptor {
            name: model.name().to_string(),
            d: model.d(),
            params: BTreeMap::from([("source".to_string(), "spec".to_string())]),
        };
        return Ok(LoadedModel { model, descriptor });
    }
    let name = args.model.as_deref().expect("clap requires --model or --spec");
    let nm: NamedModel = build_named(name, args.d, args.b.clone(), args.c.clone())?;
    Ok(LoadedModel {
        descriptor: nm.descriptor(),
        model: nm.model,
    })
}

/// Every axiom, system and twin variant.
pub fn all_claims() -> Vec<Claim> {
    AxiomId::ALL
        .iter()
        .map(|a| Claim::Axiom(*a))
        .chain([SystemId::Kinem0, SystemId::SpecRel, SystemId::SpecRelMinus].map(Claim::System))
        .chain([TwinVariant::TwP, TwinVariant::NoTwP, TwinVariant::AntiTwP].map(Claim::Twin))
        .collect()
}

pub fn parse_claims(names: &[String]) -> anyhow::Result<Vec<Claim>> {
    if names.is_empty() {
        return Ok(all_claims());
    }
    let mut out: Vec<Claim> = Vec::new();
    for n in names.iter().filter(|n| !n.trim().is_empty()) {
        let c: Claim = n.parse()?;
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

pub fn run_check(args: &CheckArgs) -> anyhow::Result<CheckReport> {
    let loaded = load(&args.model)?;
    let claims = parse_claims(&args.axioms)?;
    let mode = match args.mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Sample => Mode::Sample {
            n: args.samples,
            seed: args.seed,
        },
    };
    let mut checks: Vec<Verdict> = Vec::with_capacity(claims.len());
    for c in claims {
        checks.push(check_claim(&loaded.model, c, mode).with_context(|| format!("checking {c}"))?);
    }
    Ok(CheckReport::new(loaded.descriptor, mode, checks))
}

pub fn run_scenario(args: &ScenarioArgs) -> anyhow::Result<ScenarioReport> {
    let loaded = load(&args.model)?;
    let path = &args.scenario;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let situation = parse_scenario(&text)?.situation();
    let cmp = compare_elapsed(&loaded.model, &situation)?;
    Ok(ScenarioReport {
        tool: report::tool(),
        model: loaded.descriptor,
        is_twin_situation: true,
        tau_a: cmp.tau_a,
        tau_c: cmp.tau_c,
        tau_b: cmp.tau_b,
        outcome: cmp.outcome,
        situation,
    })
}

pub fn run_crosscheck(args: &CrosscheckArgs) -> anyhow::Result<CrosscheckSummary> {
    if args.n == 0 {
        bail!("--n must be at least 1");
    }
    let loaded = load(&args.model)?;
    let r = crosscheck_characterization(&loaded.model, args.n, args.seed)?;
    Ok(CrosscheckSummary {
        tool: report::tool(),
        model: loaded.descriptor,
        n: r.n,
        seed: r.seed,
        agree: r.agree,
        lt: r.count(Comparison::Lt),
        eq: r.count(Comparison::Eq),
        gt: r.count(Comparison::Gt),
        records: r.records,
    })
}

pub fn run_ms(args: &MsArgs) -> anyhow::Result<MsReport> {
    let loaded = load(&args.model)?;
    let m = loaded.model.reference();
    let ms = minkowski_sphere(&loaded.model, &m)?;
    let classification = classify_surface(&ms.surface)?;
    let sampled = match args.samples {
        Some(n) => Some(sample_refute(&ms.surface, n, args.seed)?),
        None => None,
    };
    Ok(MsReport {
        tool: report::tool(),
        model: loaded.descriptor,
        surface: ms.surface,
        classification,
        sampled,
    })
}

pub fn run_surface(args: &SurfaceArgs) -> anyhow::Result<SurfaceReport> {
    let text = std::fs::read_to_string(&args.file).with_context(|| format!("reading {}", args.file.display()))?;
    let surface = parse_surface(&text)?;
    let classification = classify_surface(&surface)?;
    let sampled = match args.samples {
        Some(n) => Some(sample_refute(&surface, n, args.seed)?),
        None => None,
    };
    Ok(SurfaceReport {
        tool: report::tool(),
        surface,
        classification,
        sampled,
    })
}

fn emit_json<T: serde::Serialize>(value: &T, target: &Path, out: &mut dyn Write) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    if target == Path::new("-") {
        out.write_all(text.as_bytes())?;
    } else {
        std::fs::write(target, text).with_context(|| format!("writing {}", target.display()))?;
    }
    Ok(())
}

/// Runs a parsed command, writing human-readable output to `out`. Returns
/// whether every requested check passed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Check(a) => {
            let r = run_check(a)?;
            match &a.json {
                Some(p) if p == Path::new("-") => emit_json(&r, p, out)?,
                Some(p) => {
                    emit_json(&r, p, out)?;
                    r.render(out)?;
                }
                None => r.render(out)?,
            }
            Ok(r.all_ok())
        }
        Command::Scenario(a) => {
            let r = run_scenario(a)?;
            finish(&r, a.json.as_deref(), out, |r, o| r.render(o))?;
            Ok(true)
        }
        Command::Crosscheck(a) => {
            let r = run_crosscheck(a)?;
            finish(&r, a.json.as_deref(), out, |r, o| r.render(o))?;
            Ok(r.agree == r.n)
        }
        Command::Ms(a) => {
            let r = run_ms(a)?;
            finish(&r, a.json.as_deref(), out, |r, o| r.render(o))?;
            Ok(true)
        }
        Command::Surface(a) => {
            let r = run_surface(a)?;
            finish(&r, a.json.as_deref(), out, |r, o| r.render(o))?;
            Ok(true)
        }
        Command::Table(a) => {
            let nm = build_named(&a.model, a.d, None, None)?;
            report::render_table(&nm, out)
        }
    }
}

fn finish<T: serde::Serialize>(
    r: &T,
    json: Option<&Path>,
    out: &mut dyn Write,
    render: impl Fn(&T, &mut dyn Write) -> std::io::Result<()>,
) -> anyhow::Result<()> {
    match json {
        Some(p) if p == Path::new("-") => emit_json(r, p, out),
        Some(p) => {
            emit_json(r, p, out)?;
            Ok(render(r, out)?)
        }
        None => Ok(render(r, out)?),
    }
}
