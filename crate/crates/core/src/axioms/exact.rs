//! Structural reductions. Each either certifies the axiom from the shape of
//! the predicate and chart rule, or produces a witness that replays as a
//! violation.

use super::sample;
use super::{AxiomId, Claim, Mode, Verdict, Witness};
use crate::efield::{FieldElem, Point};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::worldview::{ChartRule, DirectionConstraint, Event, Model, Observer};

pub(super) fn check(model: &Model, axiom: AxiomId) -> Result<Verdict> {
    let claim = Claim::Axiom(axiom);
    let found = |w: Witness| -> Result<Verdict> {
        debug_assert!(w.replay(model, claim)?, "witness for {claim} does not replay");
        Ok(Verdict::fails(claim, Mode::Exact, w))
    };
    match axiom {
        AxiomId::AxEOF => Ok(Verdict::holds(claim, "backend")),
        AxiomId::AxSelf => match self_sighting(model)? {
            Some(w) => found(w),
            None => Ok(Verdict::holds(
                claim,
                "every chart sends 1_t onto the observer's own worldline direction, so wl_m(m) is the time axis",
            )),
        },
        AxiomId::AxEv => ax_ev(model, claim),
        AxiomId::AxLinTime => {
            if let Some(w) = sample::first_counterexample(model, axiom, 32, 0x11)? {
                return found(w.1);
            }
            Ok(Verdict::holds(
                claim,
                "affine-identity: charts are affine, so wl_m(k) = w^k_m(o) + λ·1^k_m and time_k·|1^k_m| = |p − q| on it (32 sampled confirmations)",
            ))
        }
        AxiomId::AxPh => ax_ph(model, claim),
        AxiomId::AxSymDist => ax_sym_dist(model, claim),
        AxiomId::AxShift => Ok(Verdict::holds(
            claim,
            "the predicate depends on p − q only and each chart is a translation to p after a linear part fixed by p − q, so shifted observers exist everywhere with equal time-unit vectors",
        )),
        AxiomId::AxThExpPlus => {
            if let Some(c) = certify_thexp_plus(model) {
                return Ok(Verdict::holds(claim, c));
            }
            match search_missing(model, |v| !v.time_part().is_zero()) {
                Some(w) => found(w),
                None => Err(unknown(claim)),
            }
        }
        AxiomId::AxThExp => {
            if let Some(c) = certify_thexp(model) {
                return Ok(Verdict::holds(claim, c));
            }
            match search_missing(model, |v| v.minkowski_sq().is_positive()) {
                Some(w) => found(w),
                None => Err(unknown(claim)),
            }
        }
        AxiomId::AxThExpStar => {
            if model.family().has_subluminal() {
                let d = model.d();
                let mut q = vec![FieldElem::zero(); d];
                q[0] = FieldElem::one();
                q[1] = FieldElem::from_int(3);
                return found(Witness::NoNearbyObserver {
                    m: model.reference(),
                    p: Point::origin(d),
                    q: Point::new(q),
                    epsilon: FieldElem::ratio(1, 2),
                });
            }
            Ok(Verdict::holds(
                claim,
                "admitted directions are the complement of finitely many hyperplanes in every chart, hence dense",
            ))
        }
        AxiomId::AbsTime => {
            if matches!(model.family().rule, ChartRule::Galilean) {
                return Ok(Verdict::holds(
                    claim,
                    "Galilean charts: the τ row of every linear part is (1, 0, …, 0)",
                ));
            }
            match abs_time_witness(model)? {
                Some(w) => found(w),
                None => Err(unknown(claim)),
            }
        }
        AxiomId::SlowTime => {
            if let ChartRule::ConformalSection { form } = &model.family().rule {
                if *form == Matrix::minkowski(model.d()) {
                    return Ok(Verdict::holds(
                        claim,
                        "Lorentz charts: every sphere is the unit hyperboloid sheet, where x_τ ≥ 1 with equality only at 1_t",
                    ));
                }
            }
            match slow_time_probe(model)? {
                Some((k, unit)) => found(Witness::FastClock {
                    m: model.reference(),
                    k,
                    unit,
                }),
                None => Err(unknown(claim)),
            }
        }
    }
}

fn unknown(claim: Claim) -> Error {
    Error::UnknownReduction(format!(
        "{claim}: no structural reduction or witness for this family; use sample mode"
    ))
}

/// Observers along each admitted probe direction, some of them off the origin.
pub(super) fn probe_observers(model: &Model) -> Vec<Observer> {
    let d = model.d();
    let shift = Point::new((0..d).map(|i| FieldElem::from_int(i as i64 + 1)).collect());
    let mut out = vec![model.reference()];
    for (i, w) in crate::geom::surface_probe_directions(d)
        .into_iter()
        .filter(|w| model.admits_direction(w))
        .enumerate()
    {
        let origin = if i % 2 == 0 { Point::origin(d) } else { shift.clone() };
        out.push(Observer::along(origin, &w));
    }
    out
}

fn self_sighting(model: &Model) -> Result<Option<Witness>> {
    let d = model.d();
    for k in probe_observers(model) {
        let l = model.linear_part(&k)?;
        let s = model.section(&k.direction())?;
        if !crate::worldview::proportional(&l.column(0), &s) {
            return Ok(Some(Witness::SelfSighting {
                m: k,
                p: Point::unit_time(d),
            }));
        }
    }
    Ok(None)
}

fn ax_ev(model: &Model, claim: Claim) -> Result<Verdict> {
    for k in probe_observers(model) {
        if model.linear_part(&k)?.det().is_zero() {
            return Ok(Verdict::fails(claim, Mode::Exact, Witness::SingularChart { m: k }));
        }
    }
    let why = match &model.family().rule {
        ChartRule::Galilean => "Galilean linear parts have determinant 1",
        ChartRule::PlaneSection { .. } => {
            "plane-section linear parts have determinant u_τ, nonzero because the predicate forces w_τ ≠ 0"
        }
        ChartRule::ConformalSection { .. } => "scaled Lorentz linear parts have determinant s^d > 0",
    };
    Ok(Verdict::holds(
        claim,
        format!("every chart is an affine bijection of the whole space: {why}"),
    ))
}

fn light_pair(d: usize) -> (Point, Point) {
    let mut q = vec![FieldElem::zero(); d];
    q[0] = FieldElem::one();
    q[1] = FieldElem::one();
    (Point::new(q), Point::origin(d))
}

fn ax_ph(model: &Model, claim: Claim) -> Result<Verdict> {
    let d = model.d();
    let (p, q) = light_pair(d);
    if !model.photons() {
        return Ok(Verdict::fails(
            claim,
            Mode::Exact,
            Witness::PhotonMismatch {
                m: model.reference(),
                p,
                q,
            },
        ));
    }
    if let ChartRule::ConformalSection { .. } = model.family().rule {
        let eta = Matrix::minkowski(d);
        for k in probe_observers(model) {
            let l = model.linear_part(&k)?;
            let g = l.congruence(&eta);
            if g != eta.scale(g.get(0, 0)) {
                return Err(Error::InvalidModel(
                    "scaled Lorentz chart fails the η-congruence".into(),
                ));
            }
        }
        return Ok(Verdict::holds(
            claim,
            "photons are exactly the slope-1 lines of the reference chart and every chart is a scaled Lorentz map: LᵀηL = s²·η",
        ));
    }
    // Charts that fix the spatial axes shear light lines off the cone.
    for k in probe_observers(model) {
        for sign in [1, -1] {
            let mut v = vec![FieldElem::zero(); d];
            v[0] = FieldElem::one();
            v[1] = FieldElem::from_int(sign);
            let w = Witness::PhotonMismatch {
                m: k.clone(),
                p: Point::new(v),
                q: Point::origin(d),
            };
            if w.replay(model, claim)? {
                return Ok(Verdict::fails(claim, Mode::Exact, w));
            }
        }
    }
    Err(unknown(claim))
}

/// A nonzero v with v_τ = 0 and (L v)_τ = 0, when d ≥ 3.
fn simultaneous_displacement(l: &Matrix) -> Option<Point> {
    let d = l.rows();
    let r = l.row(0);
    let mut v = vec![FieldElem::zero(); d];
    match (1..d).find(|&i| !r[i].is_zero()) {
        None => v[1] = FieldElem::one(),
        Some(i) => {
            let j = (1..d).find(|&j| j != i)?;
            v[j] = r[i].clone();
            v[i] = -&r[j];
        }
    }
    Some(Point::new(v))
}

fn ax_sym_dist(model: &Model, claim: Claim) -> Result<Verdict> {
    let d = model.d();
    match &model.family().rule {
        ChartRule::Galilean | ChartRule::PlaneSection { .. } => {
            return Ok(Verdict::holds(
                claim,
                "charts fix every spatial basis vector, so each worldview map is the identity on displacements simultaneous in both frames",
            ));
        }
        ChartRule::ConformalSection { form } if *form == Matrix::minkowski(d) => {
            return Ok(Verdict::holds(
                claim,
                "worldview maps are Poincaré maps; on displacements with zero τ in both frames −|v_σ|² is preserved",
            ));
        }
        ChartRule::ConformalSection { .. } => {}
    }
    let m = model.reference();
    for k in probe_observers(model) {
        let l = model.linear_part(&k)?;
        let Some(v) = simultaneous_displacement(&l) else {
            continue;
        };
        let chart = model.chart(&k)?;
        let e1 = Event::at(chart.forward.apply(&Point::origin(d)));
        let e2 = Event::at(chart.forward.apply(&v));
        let dist_m = crate::worldview::spatial_distance(model, &m, &e1, &e2)?;
        let dist_k = crate::worldview::spatial_distance(model, &k, &e1, &e2)?;
        let w = Witness::DistanceMismatch {
            m: m.clone(),
            k,
            e1,
            e2,
            dist_m,
            dist_k,
        };
        if w.replay(model, claim)? {
            return Ok(Verdict::fails(claim, Mode::Exact, w));
        }
    }
    if d == 2 {
        return Ok(Verdict::holds(
            claim,
            "d = 2: relatively moving scaled-Lorentz frames share no nonzero simultaneous displacement, and parallel ones share a chart up to translation",
        ));
    }
    Err(unknown(claim))
}

fn is_time_functional(l: &Point) -> bool {
    l.space_part().iter().all(FieldElem::is_zero)
}

fn is_causal(l: &Point) -> bool {
    !l.is_zero() && l.time_part().square() >= l.space_norm_sq()
}

fn keeps_time_row(rule: &ChartRule) -> bool {
    matches!(rule, ChartRule::Galilean | ChartRule::PlaneSection { .. })
}

fn certify_thexp_plus(model: &Model) -> Option<String> {
    let f = model.family();
    let ok = keeps_time_row(&f.rule)
        && f.predicate.iter().all(|c| match c {
            DirectionConstraint::TimeNonzero => true,
            DirectionConstraint::LinearNonzero(l) => is_time_functional(l),
            DirectionConstraint::Subluminal => false,
        });
    ok.then(|| {
        "the predicate admits every direction with w_τ ≠ 0 and each chart's τ row is (u_τ, 0, …, 0), so every non-horizontal direction in every chart is admitted".to_string()
    })
}

fn certify_thexp(model: &Model) -> Option<String> {
    let f = model.family();
    let conformal = matches!(f.rule, ChartRule::ConformalSection { .. });
    let ok = f.predicate.iter().all(|c| match c {
        DirectionConstraint::TimeNonzero => true,
        DirectionConstraint::Subluminal => conformal,
        DirectionConstraint::LinearNonzero(l) => is_causal(l) && (conformal || f.functional_invariant(l)),
    });
    ok.then(|| {
        let how = if conformal {
            "scaled Lorentz charts map the speed<1 cone onto itself"
        } else {
            "charts keep w_τ ≠ 0 and map each linear exclusion to itself"
        };
        format!("every speed<1 direction in every chart is admitted: {how}, and each excluded hyperplane meets the cone only in slope-1 directions")
    })
}

/// Probe directions plus, for each linear exclusion ℓ, a direction in its
/// kernel with nonzero τ, plus a fast one.
fn candidate_directions(model: &Model) -> Vec<Point> {
    let d = model.d();
    let mut out = Vec::new();
    for l in model.constraint_functionals() {
        if let Some(j) = (1..d).find(|&j| !l[j].is_zero()) {
            let mut v = vec![FieldElem::zero(); d];
            v[0] = l[j].clone();
            v[j] = -&l[0];
            out.push(Point::new(v));
        }
    }
    let mut fast = vec![FieldElem::zero(); d];
    fast[0] = FieldElem::one();
    fast[1] = FieldElem::from_int(2);
    out.push(Point::new(fast));
    out.extend(crate::geom::surface_probe_directions(d));
    out
}

fn search_missing(model: &Model, premise: impl Fn(&Point) -> bool) -> Option<Witness> {
    let d = model.d();
    let dirs = candidate_directions(model);
    for m in probe_observers(model) {
        let l = model.linear_part(&m).ok()?;
        for v in dirs.iter().filter(|v| premise(v)) {
            if !model.admits_direction(&l.apply(v)) {
                return Some(Witness::MissingObserver {
                    m,
                    p: v.clone(),
                    q: Point::origin(d),
                });
            }
        }
    }
    None
}

fn abs_time_witness(model: &Model) -> Result<Option<Witness>> {
    let d = model.d();
    let m = model.reference();
    let mut first = vec![FieldElem::zero(); d];
    first[0] = FieldElem::from_int(2);
    first[1] = FieldElem::one();
    let dirs = std::iter::once(Point::new(first)).chain(crate::geom::surface_probe_directions(d));
    for w in dirs.filter(|w| model.admits_direction(w)) {
        let k = Observer::along(Point::origin(d), &w);
        let unit = crate::worldview::time_unit_vector(model, &k, &m)?;
        if unit.time_part().abs().is_one() {
            continue;
        }
        let e1 = Event::at(Point::origin(d));
        let e2 = Event::at(model.chart(&k)?.forward.apply(&Point::unit_time(d)));
        let time_m = crate::worldview::elapsed_time(model, &m, &e1, &e2)?;
        let time_k = crate::worldview::elapsed_time(model, &k, &e1, &e2)?;
        return Ok(Some(Witness::TimeDisagreement {
            m,
            k,
            e1,
            e2,
            time_m,
            time_k,
            unit,
        }));
    }
    Ok(None)
}

/// A moving observer whose reference time-unit vector has |τ| ≤ 1. For a
/// section form Q the first tries run along the axis j with the largest
/// |Q_0j|, signed so that Q(1, t·e_j) grows.
pub fn slow_time_probe(model: &Model) -> Result<Option<(Observer, Point)>> {
    let d = model.d();
    let mut dirs = Vec::new();
    if let ChartRule::ConformalSection { form } = &model.family().rule {
        let best = (1..d).max_by(|&i, &j| form.get(0, i).abs().cmp(&form.get(0, j).abs()));
        if let Some(j) = best.filter(|&j| !form.get(0, j).is_zero()) {
            let neg = form.get(0, j).is_negative();
            for (n, den) in [(4, 5), (1, 2), (1, 5), (1, 10)] {
                let t = FieldElem::ratio(if neg { -n } else { n }, den);
                let mut v = vec![FieldElem::zero(); d];
                v[0] = FieldElem::one();
                v[j] = t;
                dirs.push(Point::new(v));
            }
        }
    }
    dirs.extend(crate::geom::surface_probe_directions(d));
    for w in dirs {
        if !model.admits_direction(&w) || is_time_functional(&w) {
            continue;
        }
        let u = model.section(&w)?;
        if u.time_part().abs() <= FieldElem::one() {
            return Ok(Some((Observer::along(Point::origin(d), &w), u)));
        }
    }
    Ok(None)
}
