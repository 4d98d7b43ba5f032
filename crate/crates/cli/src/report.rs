//! Report types and their text rendering. JSON reports carry no timing so
//! that identical invocations produce identical bytes.

use std::io::{self, Write};

use axkin_core::axioms::{check_claim, Mode, Outcome, Verdict};
use axkin_core::constructions::{ModelDescriptor, NamedModel};
use axkin_core::efield::FieldElem;
use axkin_core::geom::{SampledClassification, SurfaceClassification, SurfaceSpec};
use axkin_core::twin::{Comparison, CrosscheckRecord, TwinSituation};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

pub fn tool() -> Tool {
    Tool {
        name: "axkin",
        version: env!("CARGO_PKG_VERSION"),
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Tally {
    pub holds: usize,
    pub fails: usize,
    pub sampled_pass: usize,
    pub presupposition_violated: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub tool: Tool,
    pub model: ModelDescriptor,
    pub mode: &'static str,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub checks: Vec<Verdict>,
    pub summary: Tally,
}

impl CheckReport {
    pub fn new(model: ModelDescriptor, mode: Mode, mut checks: Vec<Verdict>) -> CheckReport {
        checks.sort_by(|a, b| a.axiom.name().cmp(b.axiom.name()));
        let mut summary = Tally::default();
        for v in &checks {
            match v.outcome {
                Outcome::Holds => summary.holds += 1,
                Outcome::Fails => summary.fails += 1,
                Outcome::SampledPass => summary.sampled_pass += 1,
                Outcome::PresuppositionViolated => summary.presupposition_violated += 1,
            }
        }
        let (samples, seed) = match mode {
            Mode::Exact => (None, None),
            Mode::Sample { n, seed } => (Some(n), Some(seed)),
        };
        CheckReport {
            tool: tool(),
            model,
            mode: mode.name(),
            samples,
            seed,
            checks,
            summary,
        }
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(Verdict::is_ok)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.checks.iter().find(|v| v.axiom.name() == name)
    }

    pub fn render(&self, out: &mut dyn Write) -> io::Result<()> {
        model_header(&self.model, out)?;
        writeln!(out, "mode: {}", self.mode)?;
        for v in &self.checks {
            writeln!(out, "{:<14} {}", v.axiom.name(), v.outcome)?;
            if let Some(c) = &v.certificate {
                writeln!(out, "    certificate: {c}")?;
            }
            if let Some(d) = &v.detail {
                writeln!(out, "    detail: {d}")?;
            }
            if let Some(w) = &v.witness {
                writeln!(out, "    witness:")?;
                write_value(&serde_json::to_value(w).expect("witness serializes"), 3, out)?;
            }
        }
        let s = &self.summary;
        writeln!(
            out,
            "summary: {} hold, {} fail, {} sampled pass, {} presupposition violated",
            s.holds, s.fails, s.sampled_pass, s.presupposition_violated
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub tool: Tool,
    pub model: ModelDescriptor,
    pub is_twin_situation: bool,
    pub tau_a: FieldElem,
    pub tau_c: FieldElem,
    pub tau_b: FieldElem,
    pub outcome: Comparison,
    pub situation: TwinSituation,
}

impl ScenarioReport {
    pub fn render(&self, out: &mut dyn Write) -> io::Result<()> {
        model_header(&self.model, out)?;
        writeln!(out, "twin situation: {}", self.is_twin_situation)?;
        writeln!(out, "τ_a(e_a, e)   = {}", num(&self.tau_a))?;
        writeln!(out, "τ_c(e, e_c)   = {}", num(&self.tau_c))?;
        writeln!(out, "τ_a + τ_c     = {}", num(&(&self.tau_a + &self.tau_c)))?;
        writeln!(out, "τ_b(e_a, e_c) = {}", num(&self.tau_b))?;
        writeln!(out, "outcome: {}", self.outcome)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckSummary {
    pub tool: Tool,
    pub model: ModelDescriptor,
    pub n: usize,
    pub seed: u64,
    pub agree: usize,
    pub lt: usize,
    pub eq: usize,
    pub gt: usize,
    pub records: Vec<CrosscheckRecord>,
}

impl CrosscheckSummary {
    pub fn render(&self, out: &mut dyn Write) -> io::Result<()> {
        model_header(&self.model, out)?;
        writeln!(out, "samples: {} (seed {})", self.n, self.seed)?;
        writeln!(out, "outcomes: LT {}, EQ {}, GT {}", self.lt, self.eq, self.gt)?;
        writeln!(out, "agreement: {}/{}", self.agree, self.n)?;
        for r in self.records.iter().filter(|r| !r.agree) {
            writeln!(
                out,
                "    disagreement at sample {}: {} vs {:?}",
                r.index, r.outcome, r.tag
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MsReport {
    pub tool: Tool,
    pub model: ModelDescriptor,
    pub surface: SurfaceSpec,
    pub classification: SurfaceClassification,
    pub sampled: Option<SampledClassification>,
}

impl MsReport {
    pub fn render(&self, out: &mut dyn Write) -> io::Result<()> {
        model_header(&self.model, out)?;
        render_surface(&self.surface, &self.classification, self.sampled.as_ref(), out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceReport {
    pub tool: Tool,
    pub surface: SurfaceSpec,
    pub classification: SurfaceClassification,
    pub sampled: Option<SampledClassification>,
}

impl SurfaceReport {
    pub fn render(&self, out: &mut dyn Write) -> io::Result<()> {
        render_surface(&self.surface, &self.classification, self.sampled.as_ref(), out)
    }
}

fn render_surface(
    s: &SurfaceSpec,
    c: &SurfaceClassification,
    sampled: Option<&SampledClassification>,
    out: &mut dyn Write,
) -> io::Result<()> {
    writeln!(out, "surface:")?;
    write_value(&serde_json::to_value(s).expect("surface serializes"), 2, out)?;
    writeln!(out, "class: {:?}", c.class)?;
    writeln!(out, "certificate: {}", c.certificate)?;
    for w in &c.witnesses {
        writeln!(out, "    witness triple:")?;
        write_value(&serde_json::to_value(w).expect("triple serializes"), 3, out)?;
    }
    if let Some(sc) = sampled {
        let tally: Vec<String> = sc.tally.iter().map(|(t, n)| format!("{t:?} {n}")).collect();
        writeln!(
            out,
            "sampled {} triples (seed {}): {}",
            sc.samples,
            sc.seed,
            tally.join(", ")
        )?;
    }
    Ok(())
}

/// Expected and computed exact verdicts for a named model.
pub fn render_table(nm: &NamedModel, out: &mut dyn Write) -> anyhow::Result<bool> {
    model_header(&nm.descriptor(), out)?;
    let mut all = true;
    for (claim, want) in &nm.expected {
        let got = check_claim(&nm.model, *claim, Mode::Exact)?.outcome;
        let mark = if got == *want { "ok" } else { "MISMATCH" };
        all &= got == *want;
        writeln!(
            out,
            "{:<14} expected {:<8} computed {:<8} {mark}",
            claim.name(),
            want.to_string(),
            got.to_string()
        )?;
    }
    Ok(all)
}

fn model_header(m: &ModelDescriptor, out: &mut dyn Write) -> io::Result<()> {
    let params: Vec<String> = m
        .params
        .iter()
        .filter(|(k, _)| k.as_str() != "d")
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    if params.is_empty() {
        writeln!(out, "model: {} (d = {})", m.name, m.d)
    } else {
        writeln!(out, "model: {} (d = {}; {})", m.name, m.d, params.join(", "))
    }
}

/// A field element with its decimal approximation when it is not an integer.
pub fn num(x: &FieldElem) -> String {
    let s = x.to_string();
    if s.parse::<i64>().is_ok() {
        s
    } else {
        format!("{s} ({})", x.approx_string())
    }
}

fn leaf(v: &Value) -> String {
    match v {
        Value::String(s) => match s.parse::<FieldElem>() {
            Ok(x) => num(&x),
            Err(_) => s.clone(),
        },
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = xs.iter().map(leaf).collect();
            format!("({})", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn write_value(v: &Value, indent: usize, out: &mut dyn Write) -> io::Result<()> {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        writeln!(out, "{pad}{k}:")?;
                        write_value(x, indent + 1, out)?;
                    }
                    Value::Array(xs) if xs.iter().any(|y| y.is_object() || y.is_array()) => {
                        writeln!(out, "{pad}{k}:")?;
                        for y in xs {
                            match y {
                                Value::Object(_) => write_value(y, indent + 1, out)?,
                                _ => writeln!(out, "{pad}  {}", leaf(y))?,
                            }
                        }
                    }
                    _ => writeln!(out, "{pad}{k}: {}", leaf(x))?,
                }
            }
            Ok(())
        }
        other => writeln!(out, "{pad}{}", leaf(other)),
    }
}
