//! Sample mode: instantiate the quantifiers on seeded random data and replay
//! each instance as a candidate witness. Only refutes.

use rand::Rng;
use rayon::prelude::*;

use super::{AxiomId, Claim, Mode, Verdict, Witness};
use crate::efield::{FieldElem, Point};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::sampling::{self, SampleRng};
use crate::worldview::{time_unit_vector, worldview_map, Event, Model};

pub(super) fn check(model: &Model, axiom: AxiomId, n: usize, seed: u64) -> Result<Verdict> {
    let claim = Claim::Axiom(axiom);
    Ok(match first_counterexample(model, axiom, n, seed)? {
        Some((_, w)) => Verdict::fails(claim, Mode::Sample { n, seed }, w),
        None => Verdict::sampled_pass(claim, n, seed),
    })
}

/// The lowest-index sample that replays as a violation.
pub(super) fn first_counterexample(
    model: &Model,
    axiom: AxiomId,
    n: usize,
    seed: u64,
) -> Result<Option<(u64, Witness)>> {
    let claim = Claim::Axiom(axiom);
    let hits = (0..n as u64)
        .into_par_iter()
        .map(|i| -> Result<Option<(u64, Witness)>> {
            let mut rng = sampling::stream(seed, i);
            let Some(w) = candidate(model, axiom, &mut rng)? else {
                return Ok(None);
            };
            Ok(w.replay(model, claim)?.then_some((i, w)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(hits.into_iter().flatten().min_by_key(|(i, _)| *i))
}

/// A slope-1 direction (1, σ) with rational unit σ.
fn light_step(rng: &mut SampleRng, d: usize) -> Point {
    let one = FieldElem::one();
    let mut v = vec![FieldElem::zero(); d];
    v[0] = one.clone();
    if d == 2 {
        v[1] = FieldElem::from_int(if rng.gen_bool(0.5) { 1 } else { -1 });
        return Point::new(v);
    }
    let t = sampling::rational(rng, 3, 5);
    let den = &one + &t.square();
    let i = rng.gen_range(1..d);
    let j = if i + 1 < d { i + 1 } else { 1 };
    v[i] = (&one - &t.square()) / &den;
    v[j] = (&t + &t) / &den;
    Point::new(v)
}

fn candidate(model: &Model, axiom: AxiomId, rng: &mut SampleRng) -> Result<Option<Witness>> {
    let d = model.d();
    let m = model.random_observer(rng);
    Ok(Some(match axiom {
        AxiomId::AxEOF => {
            // (√a + √b)² = a + b + 2√(ab), compared both ways
            let a = sampling::positive(rng, 20, 7);
            let b = sampling::positive(rng, 20, 7);
            let x = a.sqrt()? + b.sqrt()?;
            let y = &a + &b + FieldElem::from_int(2) * (&a * &b).sqrt()?;
            let r = y.sqrt()?;
            if x.square() != y || r != x || r.is_negative() {
                return Err(Error::InvalidModel("field backend violates a square-root law".into()));
            }
            return Ok(None);
        }
        AxiomId::AxSelf => {
            let p = if rng.gen_bool(0.5) {
                Point::unit_time(d).scale(&sampling::rational(rng, 5, 4))
            } else {
                sampling::point(rng, d, 5, 4)
            };
            Witness::SelfSighting { m, p }
        }
        AxiomId::AxEv => Witness::SingularChart { m },
        AxiomId::AxLinTime => {
            let k = model.random_observer(rng);
            let w = worldview_map(model, &k, &m)?;
            let u = time_unit_vector(model, &k, &m)?;
            let o = w.apply(&Point::origin(d));
            let p = &o + &u.scale(&sampling::rational(rng, 5, 4));
            let q = &o + &u.scale(&sampling::rational(rng, 5, 4));
            Witness::NonUniformTime { m, k, p, q }
        }
        AxiomId::AxPh => {
            let p = sampling::point(rng, d, 5, 4);
            let step = if rng.gen_bool(0.5) {
                light_step(rng, d).scale(&sampling::rational(rng, 3, 4))
            } else {
                sampling::point(rng, d, 3, 4)
            };
            let q = &p + &step;
            Witness::PhotonMismatch { m, p, q }
        }
        AxiomId::AxSymDist => {
            let k = model.random_observer(rng);
            let l = worldview_map(model, &k, &m)?.linear;
            // v_τ = 0 and (L v)_τ = 0
            let rows =
                Matrix::from_rows(vec![Point::unit_time(d).into_coords(), l.row(0).into_coords()]).expect("two rows");
            let basis = rows.null_space();
            if basis.is_empty() {
                return Ok(None);
            }
            let mut v = Point::origin(d);
            for b in &basis {
                v = &v + &b.scale(&sampling::rational(rng, 3, 4));
            }
            let start = sampling::point(rng, d, 5, 4);
            let ck = model.chart(&k)?;
            let e1 = Event::at(ck.forward.apply(&start));
            let e2 = Event::at(ck.forward.apply(&(&start + &v)));
            let dist_m = crate::worldview::spatial_distance(model, &m, &e1, &e2)?;
            let dist_k = crate::worldview::spatial_distance(model, &k, &e1, &e2)?;
            Witness::DistanceMismatch {
                m,
                k,
                e1,
                e2,
                dist_m,
                dist_k,
            }
        }
        AxiomId::AxShift => {
            // The translated copy of k must be admitted, sit at ev_m(p) and
            // share k's time-unit vector.
            let k = model.random_observer(rng);
            let p = sampling::point(rng, d, 5, 4);
            let x = model.chart(&m)?.forward.apply(&p);
            let h = k.translated(&(&x - &k.origin));
            let ok = model.admits(&h)
                && model.contains(&Event::at(x), &crate::worldview::Body::Observer(h.clone()))?
                && time_unit_vector(model, &h, &m)? == time_unit_vector(model, &k, &m)?;
            if !ok {
                return Err(Error::InvalidModel(
                    "translated observer breaks the shift property".into(),
                ));
            }
            return Ok(None);
        }
        AxiomId::AxThExpPlus => {
            let p = sampling::point(rng, d, 5, 4);
            let mut q = sampling::point(rng, d, 5, 4);
            if q.time_part() == p.time_part() {
                q = q.with_time(p.time_part() + FieldElem::one());
            }
            Witness::MissingObserver { m, p, q }
        }
        AxiomId::AxThExp => {
            let p = sampling::point(rng, d, 5, 4);
            let v = sampling::unit_time_direction(rng, d, 1, 10);
            if !v.minkowski_sq().is_positive() {
                return Ok(None);
            }
            let q = &p + &v.scale(&sampling::rational(rng, 4, 3));
            if q == p {
                return Ok(None);
            }
            Witness::MissingObserver { m, p, q }
        }
        AxiomId::AxThExpStar => {
            // Only the reference chart yields a replayable ball argument.
            let p = sampling::point(rng, d, 5, 4);
            let q = sampling::point(rng, d, 5, 4);
            Witness::NoNearbyObserver {
                m: model.reference(),
                p,
                q,
                epsilon: FieldElem::ratio(1, 10),
            }
        }
        AxiomId::AbsTime => {
            let k = model.random_observer(rng);
            let e1 = Event::at(sampling::point(rng, d, 5, 4));
            let e2 = Event::at(sampling::point(rng, d, 5, 4));
            let time_m = crate::worldview::elapsed_time(model, &m, &e1, &e2)?;
            let time_k = crate::worldview::elapsed_time(model, &k, &e1, &e2)?;
            let unit = time_unit_vector(model, &k, &m)?;
            Witness::TimeDisagreement {
                m,
                k,
                e1,
                e2,
                time_m,
                time_k,
                unit,
            }
        }
        AxiomId::SlowTime => {
            let k = model.random_observer(rng);
            let unit = time_unit_vector(model, &k, &m)?;
            Witness::FastClock { m, k, unit }
        }
    }))
}
