//! The eight acceptance criteria, each at its stated tolerance and time
//! limit. Criteria run one after another so the timings are not shared, and
//! every criterion prints one PASS or FAIL line.

#[path = "../../core/tests/support/compositions.rs"]
mod compositions;
#[path = "../../core/tests/support/field_suite.rs"]
mod field_suite;

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use axkin_core::axioms::{check_axiom, check_claim, AxiomId, Claim, Mode, Outcome, SystemId, TwinVariant, Witness};
use axkin_core::constructions::{build_named, MODEL_NAMES};
use axkin_core::efield::FieldElem;
use axkin_core::error::Error;
use axkin_core::twin::{crosscheck_characterization, watcher_independence};
use axkin_core::xforms::{az_decompose, is_poincare};
use serde_json::Value;

type Check = Result<(), String>;
type Criterion = (String, Duration, Box<dyn Fn() -> Check>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_axkin"))
        .args(args)
        .args(["--json", "-"])
        .output()
        .map_err(|e| e.to_string())?;
    serde_json::from_slice(&out.stdout).map_err(|e| format!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn entry<'a>(report: &'a Value, claim: &str) -> Result<&'a Value, String> {
    report["checks"]
        .as_array()
        .and_then(|cs| cs.iter().find(|v| v["axiom"] == claim))
        .ok_or_else(|| format!("{claim} missing from the report"))
}

fn expect_outcomes(report: &Value, claims: &[&str], want: &str) -> Check {
    let wrong: Vec<String> = claims
        .iter()
        .map(|c| entry(report, c).map(|v| (c, v["outcome"].as_str().unwrap_or("?").to_string())))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|(_, o)| o != want)
        .map(|(c, o)| format!("{c} is {o}"))
        .collect();
    ensure(wrong.is_empty(), || format!("expected {want}: {}", wrong.join(", ")))
}

fn field(v: &Value) -> Result<FieldElem, String> {
    v.as_str()
        .ok_or_else(|| format!("not a field literal: {v}"))?
        .parse()
        .map_err(|e| format!("{e}"))
}

/// The CLI witness must be the in-process exact witness, and it must replay.
fn replayed_witness(model: &str, axiom: AxiomId, from_cli: &Value) -> Result<Witness, String> {
    let m = build_named(model, 3, None, None).map_err(|e| e.to_string())?.model;
    let v = check_axiom(&m, axiom, Mode::Exact).map_err(|e| e.to_string())?;
    let w = v.witness.ok_or("no exact witness")?;
    ensure(serde_json::to_value(&w).unwrap() == from_cli["witness"], || {
        "CLI and library witnesses differ".into()
    })?;
    ensure(w.replay(&m, Claim::Axiom(axiom)).map_err(|e| e.to_string())?, || {
        "witness does not replay".into()
    })?;
    Ok(w)
}

fn flat_counterexample_model() -> Check {
    let r = cli_json(&["check", "--model", "thm41", "--d", "3"])?;
    let mut problems = Vec::new();
    if let Err(e) = expect_outcomes(&r, &["Kinem0", "AxShift", "AxThExpStar", "noTwP"], "Holds") {
        problems.push(e);
    }
    let abs = entry(&r, "AbsTime")?;
    if abs["outcome"] != "Fails" || abs["mode"] != "exact" {
        problems.push(format!("AbsTime is {}", abs["outcome"]));
    } else {
        match replayed_witness("thm41", AxiomId::AbsTime, abs)? {
            Witness::TimeDisagreement { unit, .. } => {
                let t = unit.time_part().abs();
                if t == FieldElem::one() {
                    problems.push("time-unit τ-component is ±1".into());
                }
            }
            other => problems.push(format!("unexpected witness {other:?}")),
        }
    }
    ensure(problems.is_empty(), || problems.join("; "))
}

fn convex_counterexample_model() -> Check {
    let r = cli_json(&["check", "--model", "thm55", "--d", "3"])?;
    expect_outcomes(&r, &["SpecRelMinus", "AxShift", "AxLinTime", "AxThExp", "TwP"], "Holds")?;
    let slow = entry(&r, "SlowTime")?;
    ensure(slow["outcome"] == "Fails" && slow["mode"] == "exact", || {
        format!("SlowTime is {}", slow["outcome"])
    })?;
    let Witness::FastClock { unit, .. } = replayed_witness("thm55", AxiomId::SlowTime, slow)? else {
        return Err("SlowTime witness is not a sphere point".into());
    };
    let t = unit.time_part().abs();
    ensure(t < FieldElem::one(), || format!("|x_τ| = {t} is not below 1"))?;
    let five_over_root47 = FieldElem::from_int(5) / FieldElem::from_int(47).sqrt().unwrap();
    ensure(t == five_over_root47, || format!("x_τ = {t}, expected 5/√47"))?;
    ensure(field(&slow["witness"]["unit"][0])?.abs() == t, || {
        "reported x_τ differs".into()
    })
}

fn minkowski_twin_paradox() -> Check {
    let m = build_named("minkowski", 3, None, None)
        .map_err(|e| e.to_string())?
        .model;
    let run = |c: Claim| check_claim(&m, c, Mode::Exact).map_err(|e| e.to_string());
    let minus = run(Claim::System(SystemId::SpecRelMinus))?;
    ensure(minus.outcome == Outcome::Holds, || {
        format!("SpecRel⁻ is {}", minus.outcome)
    })?;
    let sym = run(Claim::Axiom(AxiomId::AxSymDist))?;
    ensure(sym.outcome == Outcome::Holds, || {
        format!("AxSymDist is {}", sym.outcome)
    })?;
    let twp = run(Claim::Twin(TwinVariant::TwP))?;
    ensure(twp.outcome == Outcome::Holds && twp.mode == "exact", || {
        format!("TwP is {}", twp.outcome)
    })?;
    let anti = run(Claim::Twin(TwinVariant::AntiTwP))?;
    ensure(anti.outcome == Outcome::Fails, || {
        format!("antiTwP is {}", anti.outcome)
    })?;
    let w = anti.witness.ok_or("antiTwP failed without a witness")?;
    ensure(matches!(w, Witness::Twin { .. }), || {
        "antiTwP witness is not a twin situation".into()
    })?;
    ensure(
        w.replay(&m, Claim::Twin(TwinVariant::AntiTwP))
            .map_err(|e| e.to_string())?,
        || "twin witness does not replay".into(),
    )
}

fn crosscheck(model: &str) -> Check {
    let m = build_named(model, 3, None, None).map_err(|e| e.to_string())?.model;
    let r = crosscheck_characterization(&m, 1000, 7).map_err(|e| e.to_string())?;
    ensure(r.records.len() == 1000 && r.all_agree(), || {
        format!("{}/1000 agree", r.agree)
    })
}

fn watcher_invariance() -> Check {
    for model in ["minkowski", "thm55"] {
        let m = build_named(model, 3, None, None).map_err(|e| e.to_string())?.model;
        let r = watcher_independence(&m, 500, 5).map_err(|e| e.to_string())?;
        ensure(r.n == 500 && r.disagreements == 0, || {
            format!("{model}: {} disagreements in {} samples", r.disagreements, r.n)
        })?;
    }
    Ok(())
}

fn decomposition_round_trip() -> Check {
    for i in 0..100 {
        let c = compositions::composition(2024, i, 3 + (i % 2) as usize);
        let r = az_decompose(&c.map).map_err(|e| format!("composition {i}: {e}"))?;
        ensure(is_poincare(&r.poincare), || {
            format!("composition {i}: Poincaré part is not Poincaré")
        })?;
        ensure(r.dilation == c.scale, || {
            format!("composition {i}: dilation {} vs {}", r.dilation, c.scale)
        })?;
        ensure(r.recompose() == c.map, || {
            format!("composition {i}: recomposition differs")
        })?;
    }
    for i in 0..100 {
        let s = compositions::shear(2024, i, 3 + (i % 2) as usize);
        ensure(az_decompose(&s) == Err(Error::NotConePreserving), || {
            format!("shear {i} was not rejected")
        })?;
    }
    Ok(())
}

fn three_four_five() -> Check {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/inputs/three_four_five.json");
    let path = path.to_string_lossy();
    let r = cli_json(&["scenario", "--model", "minkowski", "--scenario", &path])?;
    let taus = |r: &Value| -> Result<[FieldElem; 3], String> {
        Ok([field(&r["tau_a"])?, field(&r["tau_c"])?, field(&r["tau_b"])?])
    };
    let [a, c, b] = taus(&r)?;
    let int = FieldElem::from_int;
    ensure(
        a == int(4) && c == int(4) && b == int(10) && r["outcome"] == "LT",
        || format!("minkowski: {a}, {c}, {b}, {}", r["outcome"]),
    )?;
    let r = cli_json(&["scenario", "--model", "newtonian", "--scenario", &path])?;
    let [a, c, b] = taus(&r)?;
    ensure(&a + &c == int(10) && b == int(10) && r["outcome"] == "EQ", || {
        format!("newtonian: {a} + {c} vs {b}, {}", r["outcome"])
    })
}

fn field_backend() -> Check {
    let r = field_suite::run(10_000, 99);
    ensure(r.checks == 10_000, || format!("ran {} checks", r.checks))?;
    ensure(r.failures.is_empty(), || {
        format!("{} failures, first: {}", r.failures.len(), r.failures[0])
    })
}

#[test]
fn acceptance() {
    let mut criteria: Vec<Criterion> = vec![
        (
            "1 flat-sphere model: Kinem0, AxShift, AxThExpStar, noTwP hold; AbsTime fails".into(),
            Duration::from_secs(10),
            Box::new(flat_counterexample_model),
        ),
        (
            "2 skewed-cone model: SpecRelMinus, AxShift, AxLinTime, AxThExp, TwP hold; SlowTime fails at 5/√47".into(),
            Duration::from_secs(30),
            Box::new(convex_counterexample_model),
        ),
        (
            "3 minkowski: SpecRelMinus, AxSymDist, TwP hold; antiTwP refuted".into(),
            Duration::from_secs(10),
            Box::new(minkowski_twin_paradox),
        ),
    ];
    for model in MODEL_NAMES {
        criteria.push((
            format!("4 crosscheck {model}: 1000/1000"),
            Duration::from_secs(60),
            Box::new(move || crosscheck(model)),
        ));
    }
    criteria.push((
        "5 watcher invariance: 500 situations, no disagreement".into(),
        Duration::from_secs(60),
        Box::new(watcher_invariance),
    ));
    criteria.push((
        "6 decomposition round trip and shear rejection".into(),
        Duration::from_secs(30),
        Box::new(decomposition_round_trip),
    ));
    criteria.push((
        "7 3-4-5 scenario: 4 + 4 < 10 and 10 = 10".into(),
        Duration::from_secs(5),
        Box::new(three_four_five),
    ));
    criteria.push((
        "8 field backend: 10⁴ law checks".into(),
        Duration::from_secs(60),
        Box::new(field_backend),
    ));

    println!();
    let mut failed = Vec::new();
    for (name, limit, run) in &criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let verdict = match result {
            Ok(()) if took <= *limit => Ok(()),
            Ok(()) => Err(format!("took {took:.1?}, limit {limit:?}")),
            Err(e) => Err(e),
        };
        match &verdict {
            Ok(()) => println!("PASS  {name}  ({took:.2?})"),
            Err(e) => {
                println!("FAIL  {name}  ({took:.2?}): {e}");
                failed.push(name.clone());
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:#?}");
}
