//! Twin-paradox situations, proper-time comparison, Minkowski spheres and the
//! TwP / noTwP / antiTwP verdicts.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::{
    check_axiom, check_system, AxiomId, Claim, Mode, Outcome, SystemId, TwinVariant, Verdict, Witness,
};
use crate::efield::{FieldElem, Point};
use crate::error::{Error, Result};
use crate::geom::{
    classify_surface, classify_triple, ddag, DirectionDomain, SetClass, SurfaceClassification, SurfaceSpec, TripleTag,
    WitnessTriple,
};
use crate::linalg::Matrix;
use crate::sampling::{self, SampleRng};
use crate::worldview::{
    elapsed_time, time_of, time_unit_vector, Body, ChartRule, DirectionConstraint, Event, Model, Observer,
};

/// m watches a and c meet at e, a and b part at e_a, c and b meet at e_c.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct TwinSituation {
    pub watcher: Observer,
    pub a: Observer,
    pub b: Observer,
    pub c: Observer,
    pub e_a: Event,
    pub e: Event,
    pub e_c: Event,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Comparison {
    #[serde(rename = "LT")]
    Lt,
    #[serde(rename = "EQ")]
    Eq,
    #[serde(rename = "GT")]
    Gt,
}

impl Comparison {
    /// What each variant demands of τ_a + τ_c against τ_b.
    pub fn required_by(v: TwinVariant) -> Comparison {
        match v {
            TwinVariant::TwP => Comparison::Lt,
            TwinVariant::NoTwP => Comparison::Eq,
            TwinVariant::AntiTwP => Comparison::Gt,
        }
    }

    pub fn matching_tag(self) -> TripleTag {
        match self {
            Comparison::Lt => TripleTag::Conv,
            Comparison::Eq => TripleTag::Flat,
            Comparison::Gt => TripleTag::Conc,
        }
    }
}

impl std::fmt::Display for Comparison {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Comparison::Lt => "LT",
            Comparison::Eq => "EQ",
            Comparison::Gt => "GT",
        })
    }
}

fn target_class(v: TwinVariant) -> SetClass {
    match v {
        TwinVariant::TwP => SetClass::Convex,
        TwinVariant::NoTwP => SetClass::Flat,
        TwinVariant::AntiTwP => SetClass::Concave,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElapsedComparison {
    /// τ_a(e_a, e).
    pub tau_a: FieldElem,
    /// τ_c(e, e_c).
    pub tau_c: FieldElem,
    /// τ_b(e_a, e_c).
    pub tau_b: FieldElem,
    pub outcome: Comparison,
}

pub fn is_twin_situation(model: &Model, s: &TwinSituation) -> Result<bool> {
    let member = |e: &Event, k: &Observer| model.contains(e, &Body::Observer(k.clone()));
    for k in [&s.watcher, &s.a, &s.b, &s.c] {
        if !model.admits(k) {
            return Err(Error::NotAnObserver(format!("⟨{}, {}⟩", k.origin, k.through)));
        }
    }
    let meets = member(&s.e_a, &s.a)?
        && member(&s.e, &s.a)?
        && member(&s.e_a, &s.b)?
        && member(&s.e_c, &s.b)?
        && member(&s.e, &s.c)?
        && member(&s.e_c, &s.c)?
        && !member(&s.e, &s.b)?;
    if !meets {
        return Ok(false);
    }
    let ta = time_of(model, &s.watcher, &s.e_a)?;
    let t = time_of(model, &s.watcher, &s.e)?;
    let tc = time_of(model, &s.watcher, &s.e_c)?;
    Ok((ta < t && t < tc) || (ta > t && t > tc))
}

pub fn compare_elapsed(model: &Model, s: &TwinSituation) -> Result<ElapsedComparison> {
    if !is_twin_situation(model, s)? {
        return Err(Error::NotATwinSituation(
            "membership or time-ordering clauses fail".into(),
        ));
    }
    let tau_a = elapsed_time(model, &s.a, &s.e_a, &s.e)?;
    let tau_c = elapsed_time(model, &s.c, &s.e, &s.e_c)?;
    let tau_b = elapsed_time(model, &s.b, &s.e_a, &s.e_c)?;
    let outcome = match (&tau_a + &tau_c).cmp(&tau_b) {
        std::cmp::Ordering::Less => Comparison::Lt,
        std::cmp::Ordering::Equal => Comparison::Eq,
        std::cmp::Ordering::Greater => Comparison::Gt,
    };
    Ok(ElapsedComparison {
        tau_a,
        tau_c,
        tau_b,
        outcome,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinkowskiSphere {
    pub owner: Observer,
    pub surface: SurfaceSpec,
}

/// The sphere of the reference observer, read off the chart rule.
fn reference_sphere(model: &Model) -> SurfaceSpec {
    let d = model.d();
    let family = model.family();
    let domain = DirectionDomain {
        cone: family.has_subluminal().then(|| Matrix::minkowski(d)),
        exclusions: family
            .predicate
            .iter()
            .filter_map(|c| match c {
                DirectionConstraint::LinearNonzero(l) => Some(l.clone()),
                _ => None,
            })
            .collect(),
    };
    match &family.rule {
        ChartRule::Galilean => SurfaceSpec::AffineHyperplanePatch {
            normal: Point::unit_time(d),
            offset: FieldElem::one(),
            domain,
        },
        ChartRule::PlaneSection { normal } if normal.space_part().iter().all(FieldElem::is_zero) => {
            // a_τ x_τ = 1
            SurfaceSpec::AffineHyperplanePatch {
                normal: Point::unit_time(d),
                offset: normal.time_part().recip().expect("validated").abs(),
                domain,
            }
        }
        ChartRule::PlaneSection { normal } => {
            // ‡ of the points with a·x = 1 is the level set (a·x)² = 1.
            let col = Matrix::from_columns(std::slice::from_ref(normal));
            SurfaceSpec::QuadricRadialGraph {
                form: col.mul(&col.transpose()),
                domain,
            }
        }
        ChartRule::ConformalSection { form } => SurfaceSpec::QuadricRadialGraph {
            form: form.clone(),
            domain,
        },
    }
}

/// MS‡_m = {‡1^k_m}. Each 1^k_m is L_m⁻¹ applied to k's reference time-unit
/// vector, so the sphere is the reference sphere seen through L_m.
pub fn minkowski_sphere(model: &Model, m: &Observer) -> Result<MinkowskiSphere> {
    let l = model.linear_part(m)?;
    let base = reference_sphere(model);
    let surface = if l.is_identity() { base } else { base.transformed(&l)? };
    Ok(MinkowskiSphere {
        owner: m.clone(),
        surface,
    })
}

pub fn classify_ms(model: &Model, m: &Observer) -> Result<SurfaceClassification> {
    classify_surface(&minkowski_sphere(model, m)?.surface)
}

/// The situation read off a sphere triple p, q, r with μq = λp + (1−λ)r: all
/// three observers start at o; b runs to μq, a to λp and c from there on.
pub fn situation_from_triple(model: &Model, m: &Observer, t: &WitnessTriple) -> Result<Option<TwinSituation>> {
    let (Some(mu), Some(lambda)) = (&t.class.mu, &t.class.lambda) else {
        return Ok(None);
    };
    let chart = model.chart(m)?;
    let to_ref = |x: &Point| chart.forward.apply(x);
    let o = Point::origin(model.d());
    let pe_a = o.clone();
    let pe = t.p.scale(lambda);
    let pe_c = t.q.scale(mu);
    let (xa, xe, xc) = (to_ref(&pe_a), to_ref(&pe), to_ref(&pe_c));
    let along = |from: &Point, to: &Point| Observer::along(from.clone(), &(to - from));
    let s = TwinSituation {
        watcher: m.clone(),
        a: along(&xa, &xe),
        b: along(&xa, &xc),
        c: along(&xe, &xc),
        e_a: Event::at(xa),
        e: Event::at(xe),
        e_c: Event::at(xc),
    };
    if ![&s.a, &s.b, &s.c].iter().all(|k| model.admits(k)) {
        return Ok(None);
    }
    Ok(is_twin_situation(model, &s)?.then_some(s))
}

fn twin_witness(model: &Model, s: TwinSituation) -> Result<Witness> {
    let c = compare_elapsed(model, &s)?;
    Ok(Witness::Twin {
        situation: s,
        tau_a: c.tau_a,
        tau_c: c.tau_c,
        tau_b: c.tau_b,
        outcome: c.outcome,
    })
}

/// A direction (in m's coordinates) of an admitted observer, with positive τ.
fn random_leg(model: &Model, l: &Matrix, rng: &mut SampleRng) -> Option<Point> {
    let bound = if model.family().has_subluminal() { 1 } else { 3 };
    for _ in 0..32 {
        let v = sampling::unit_time_direction(rng, model.d(), bound, 10);
        if model.admits_direction(&l.apply(&v)) {
            return Some(v);
        }
    }
    None
}

/// Samples a watcher and three meeting events in the watcher's chart: e_a,
/// then e along one admitted leg, then e_c along another, rejecting until b's
/// leg e_a → e_c is admitted too.
pub fn sample_situation(model: &Model, rng: &mut SampleRng) -> Option<TwinSituation> {
    let d = model.d();
    let m = if rng.gen_bool(0.5) {
        model.reference()
    } else {
        model.random_observer(rng)
    };
    let chart = model.chart(&m).ok()?;
    let l = &chart.forward.linear;
    for _ in 0..64 {
        let p = sampling::point(rng, d, 5, 4);
        let da = random_leg(model, l, rng)?.scale(&sampling::positive(rng, 3, 4));
        let dc = random_leg(model, l, rng)?.scale(&sampling::positive(rng, 3, 4));
        let (da, dc) = if rng.gen_bool(0.5) { (-&da, -&dc) } else { (da, dc) };
        let e = &p + &da;
        let r = &e + &dc;
        if crate::worldview::proportional(&da, &dc) {
            continue;
        }
        let (xa, xe, xc) = (
            chart.forward.apply(&p),
            chart.forward.apply(&e),
            chart.forward.apply(&r),
        );
        if !model.admits_direction(&(&xc - &xa)) {
            continue;
        }
        let along = |from: &Point, to: &Point| Observer::along(from.clone(), &(to - from));
        return Some(TwinSituation {
            watcher: m,
            a: along(&xa, &xe),
            b: along(&xa, &xc),
            c: along(&xe, &xc),
            e_a: Event::at(xa),
            e: Event::at(xe),
            e_c: Event::at(xc),
        });
    }
    None
}

fn sample_situation_retrying(model: &Model, seed: u64, index: u64) -> Result<TwinSituation> {
    let mut rng = sampling::stream(seed, index);
    for _ in 0..32 {
        if let Some(s) = sample_situation(model, &mut rng) {
            return Ok(s);
        }
    }
    Err(Error::UnknownReduction(format!(
        "could not sample a twin situation in '{}'",
        model.name()
    )))
}

const FALLBACK_SAMPLES: usize = 1000;

pub fn twp_verdict(model: &Model, which: TwinVariant, mode: Mode) -> Result<Verdict> {
    let claim = Claim::Twin(which);
    match mode {
        Mode::Sample { n, seed } => sampled_twp(model, which, n, seed),
        Mode::Exact => {
            let reference = model.reference();
            let kinem = check_system(model, SystemId::Kinem0, Mode::Exact)?;
            if kinem.outcome == Outcome::PresuppositionViolated {
                return Err(Error::PresuppositionViolated("Kinem0 presupposition fails".into()));
            }
            let shift = check_axiom(model, AxiomId::AxShift, Mode::Exact)?.outcome == Outcome::Holds;
            let target = target_class(which);
            match classify_ms(model, &reference) {
                Ok(cls) => {
                    // Every chart rule here has an inverse linear part that
                    // either keeps the sign of τ on the sphere or flips it
                    // for all points at once, so MS‡_m is a linear image of
                    // the reference sphere and has the same class.
                    if cls.class == target && kinem.outcome == Outcome::Holds {
                        let licence = if shift {
                            "Kinem0 and AxShift hold; the characterization is an equivalence"
                        } else {
                            "Kinem0 holds; the sphere class implies the claim"
                        };
                        return Ok(Verdict::holds(
                            claim,
                            format!(
                                "every Minkowski sphere is {} ({}); {licence}",
                                cls.class, cls.certificate
                            ),
                        ));
                    }
                    for w in cls.witnesses.iter().filter(|w| SetClass::of_tag(w.class.tag) != target) {
                        if let Some(s) = situation_from_triple(model, &reference, w)? {
                            let wit = twin_witness(model, s)?;
                            return Ok(Verdict::fails(claim, Mode::Exact, wit));
                        }
                    }
                }
                Err(Error::UnknownReduction(_)) => {}
                Err(e) => return Err(e),
            }
            Ok(sampled_twp(model, which, FALLBACK_SAMPLES, 0)?.with_mode(Mode::Sample {
                n: FALLBACK_SAMPLES,
                seed: 0,
            }))
        }
    }
}

fn sampled_twp(model: &Model, which: TwinVariant, n: usize, seed: u64) -> Result<Verdict> {
    let claim = Claim::Twin(which);
    let want = Comparison::required_by(which);
    let first_bad = (0..n as u64)
        .into_par_iter()
        .map(|i| -> Result<Option<(u64, TwinSituation)>> {
            let s = sample_situation_retrying(model, seed, i)?;
            let c = compare_elapsed(model, &s)?;
            Ok((c.outcome != want).then_some((i, s)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .min_by_key(|(i, _)| *i);
    match first_bad {
        Some((_, s)) => Ok(Verdict::fails(claim, Mode::Sample { n, seed }, twin_witness(model, s)?)),
        None => Ok(Verdict::sampled_pass(claim, n, seed)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckRecord {
    pub index: u64,
    pub outcome: Comparison,
    pub tag: TripleTag,
    pub agree: bool,
    pub tau_a: FieldElem,
    pub tau_c: FieldElem,
    pub tau_b: FieldElem,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub model: String,
    pub n: usize,
    pub seed: u64,
    pub agree: usize,
    pub records: Vec<CrosscheckRecord>,
}

impl CrosscheckReport {
    pub fn all_agree(&self) -> bool {
        self.agree == self.n
    }

    pub fn count(&self, outcome: Comparison) -> usize {
        self.records.iter().filter(|r| r.outcome == outcome).count()
    }
}

/// ‡1^a_m, ‡1^b_m, ‡1^c_m for the situation.
pub fn sphere_triple(model: &Model, s: &TwinSituation) -> Result<(Point, Point, Point)> {
    let u = |k: &Observer| time_unit_vector(model, k, &s.watcher).map(|x| ddag(&x));
    Ok((u(&s.a)?, u(&s.b)?, u(&s.c)?))
}

/// Samples n situations and compares each proper-time outcome with the class
/// of the triple of ‡-normalized time-unit vectors.
pub fn crosscheck_characterization(model: &Model, n: usize, seed: u64) -> Result<CrosscheckReport> {
    let records = (0..n as u64)
        .into_par_iter()
        .map(|i| -> Result<CrosscheckRecord> {
            let s = sample_situation_retrying(model, seed, i)?;
            let c = compare_elapsed(model, &s)?;
            let (pa, pb, pc) = sphere_triple(model, &s)?;
            let tag = classify_triple(&pa, &pb, &pc)?.tag;
            Ok(CrosscheckRecord {
                index: i,
                outcome: c.outcome,
                tag,
                agree: c.outcome.matching_tag() == tag,
                tau_a: c.tau_a,
                tau_c: c.tau_c,
                tau_b: c.tau_b,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CrosscheckReport {
        model: model.name().to_string(),
        n,
        seed,
        agree: records.iter().filter(|r| r.agree).count(),
        records,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WatcherReport {
    pub n: usize,
    pub seed: u64,
    /// Configurations that are twin situations for the sampled watcher.
    pub situations: usize,
    pub disagreements: usize,
}

/// Evaluates sampled configurations from the sampled watcher and from b. Half
/// of them move the middle event to a random point first, so both verdicts
/// occur.
pub fn watcher_independence(model: &Model, n: usize, seed: u64) -> Result<WatcherReport> {
    let rows = (0..n as u64)
        .into_par_iter()
        .map(|i| -> Result<(bool, bool)> {
            let mut s = sample_situation_retrying(model, seed, i)?;
            let mut rng = sampling::stream(seed ^ 0x5eed, i);
            if rng.gen_bool(0.5) {
                for _ in 0..32 {
                    let x = sampling::point(&mut rng, model.d(), 8, 4);
                    let a = Observer::along(s.e_a.ref_point.clone(), &(&x - &s.e_a.ref_point));
                    let c = Observer::along(x.clone(), &(&s.e_c.ref_point - &x));
                    if model.admits(&a) && model.admits(&c) {
                        s.a = a;
                        s.c = c;
                        s.e = Event::at(x);
                        break;
                    }
                }
            }
            let from_m = is_twin_situation(model, &s)?;
            let from_b = is_twin_situation(
                model,
                &TwinSituation {
                    watcher: s.b.clone(),
                    ..s.clone()
                },
            )?;
            Ok((from_m, from_b))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WatcherReport {
        n,
        seed,
        situations: rows.iter().filter(|r| r.0).count(),
        disagreements: rows.iter().filter(|r| r.0 != r.1).count(),
    })
}
