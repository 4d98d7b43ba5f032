//! Surfaces given by a defining equation over a set of admitted directions.
//!
//! A QuadricRadialGraph is {x : Q(x) = 1, x_τ > 0, line(x) admitted}; an
//! AffineHyperplanePatch is {x : a·x = c, x_τ > 0, line(x) admitted}. Lines
//! with w_τ = 0 are never admitted.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{classify_point_set, classify_triple, ddag, slot, summarize, SetClass, TripleTag, WitnessTriple};
use crate::efield::{FieldElem, Point};
use crate::error::{same_dim, Error, Result};
use crate::linalg::Matrix;
use crate::sampling;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionDomain {
    /// Admits w iff wᵀCw > 0.
    #[serde(default)]
    pub cone: Option<Matrix>,
    /// Admits w iff ℓ·w ≠ 0 for each ℓ.
    #[serde(default)]
    pub exclusions: Vec<Point>,
}

impl DirectionDomain {
    pub fn everything() -> DirectionDomain {
        DirectionDomain {
            cone: None,
            exclusions: Vec::new(),
        }
    }

    /// Directions of speed below 1.
    pub fn light_cone(d: usize) -> DirectionDomain {
        DirectionDomain {
            cone: Some(Matrix::minkowski(d)),
            exclusions: Vec::new(),
        }
    }

    pub fn admits(&self, w: &Point) -> bool {
        !w.time_part().is_zero()
            && self.cone.as_ref().is_none_or(|c| c.quad(w).is_positive())
            && self.exclusions.iter().all(|l| !l.dot(w).is_zero())
    }

    /// The domain seen in coordinates y with x = L y.
    pub fn transformed(&self, l: &Matrix) -> DirectionDomain {
        let lt = l.transpose();
        let mut exclusions: Vec<Point> = self.exclusions.iter().map(|e| lt.apply(e)).collect();
        let d = l.rows();
        let old_time = lt.apply(&Point::unit_time(d));
        if !is_time_functional(&old_time) {
            exclusions.push(old_time);
        }
        DirectionDomain {
            cone: self.cone.as_ref().map(|c| l.congruence(c)),
            exclusions,
        }
    }

    /// Exact sufficient condition for ℓ·w > 0 on every admitted w with w_τ > 0.
    fn functional_positive_on_upper(&self, ell: &Point) -> bool {
        match &self.cone {
            None => is_time_functional(ell) && ell.time_part().is_positive(),
            Some(c) => {
                let d = c.rows();
                if !c.get(0, 0).is_positive() {
                    return false;
                }
                let rows: Vec<Vec<FieldElem>> = (1..d).map(|i| (1..d).map(|j| c.get(i, j).clone()).collect()).collect();
                let spatial = Matrix::from_rows(rows).expect("square block");
                let neg_def = spatial.rows() == 0 || spatial.scale(&FieldElem::from_int(-1)).inertia().0 == d - 1;
                if !neg_def {
                    return false;
                }
                let Some(ci) = c.inverse() else { return false };
                !ci.quad(ell).is_negative() && !ell.is_zero() && ell.time_part().is_positive()
            }
        }
    }
}

fn is_time_functional(ell: &Point) -> bool {
    ell.space_part().iter().all(FieldElem::is_zero)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SurfaceSpec {
    AffineHyperplanePatch {
        normal: Point,
        offset: FieldElem,
        #[serde(default)]
        domain: DirectionDomain,
    },
    QuadricRadialGraph {
        form: Matrix,
        #[serde(default)]
        domain: DirectionDomain,
    },
    FinitePointSet {
        points: Vec<Point>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceClassification {
    pub class: SetClass,
    pub certificate: String,
    pub witnesses: Vec<WitnessTriple>,
}

impl SurfaceSpec {
    /// The standard upper sheet x_τ² − |x_σ|² = 1.
    pub fn hyperboloid(d: usize) -> SurfaceSpec {
        SurfaceSpec::QuadricRadialGraph {
            form: Matrix::minkowski(d),
            domain: DirectionDomain::light_cone(d),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SurfaceSpec::AffineHyperplanePatch { normal, .. } => normal.dim(),
            SurfaceSpec::QuadricRadialGraph { form, .. } => form.rows(),
            SurfaceSpec::FinitePointSet { points } => points.first().map_or(0, Point::dim),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SurfaceSpec::AffineHyperplanePatch { normal, offset, domain } => {
                if normal.is_zero() {
                    return Err(Error::MalformedSurface("zero normal".into()));
                }
                if offset.is_zero() {
                    return Err(Error::MalformedSurface(
                        "hyperplane through the origin meets no ray in a single point".into(),
                    ));
                }
                check_domain(domain, normal.dim())
            }
            SurfaceSpec::QuadricRadialGraph { form, domain } => {
                if !form.is_symmetric() {
                    return Err(Error::MalformedSurface("form is not symmetric".into()));
                }
                check_domain(domain, form.rows())
            }
            SurfaceSpec::FinitePointSet { points } => {
                let Some(p) = points.first() else {
                    return Err(Error::MalformedSurface("empty point set".into()));
                };
                for x in points {
                    same_dim(p.dim(), x.dim())?;
                }
                Ok(())
            }
        }
    }

    /// The surface point on the line of w, if there is one.
    pub fn radial_point(&self, w: &Point) -> Option<Point> {
        match self {
            SurfaceSpec::AffineHyperplanePatch { normal, offset, domain } => {
                if !domain.admits(w) {
                    return None;
                }
                let aw = normal.dot(w);
                if aw.is_zero() {
                    return None;
                }
                let x = w.scale(&(offset / &aw));
                x.time_part().is_positive().then_some(x)
            }
            SurfaceSpec::QuadricRadialGraph { form, domain } => {
                if !domain.admits(w) {
                    return None;
                }
                let q = form.quad(w);
                if !q.is_positive() {
                    return None;
                }
                Some(ddag(&w.scale(&q.sqrt_nonneg().recip().ok()?)))
            }
            SurfaceSpec::FinitePointSet { points } => points
                .iter()
                .find(|p| {
                    let m = crate::linalg::Matrix::from_columns(&[(*p).clone(), w.clone()]);
                    m.transpose().null_space().len() + 1 == p.dim() && !p.is_zero()
                })
                .cloned(),
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        match self {
            SurfaceSpec::AffineHyperplanePatch { normal, offset, domain } => {
                x.time_part().is_positive() && normal.dot(x) == *offset && domain.admits(x)
            }
            SurfaceSpec::QuadricRadialGraph { form, domain } => {
                x.time_part().is_positive() && form.quad(x).is_one() && domain.admits(x)
            }
            SurfaceSpec::FinitePointSet { points } => points.contains(x),
        }
    }

    /// The set {‡(L⁻¹x) : x in self}, i.e. the surface in coordinates y with
    /// x = L y.
    pub fn transformed(&self, l: &Matrix) -> Result<SurfaceSpec> {
        Ok(match self {
            SurfaceSpec::QuadricRadialGraph { form, domain } => SurfaceSpec::QuadricRadialGraph {
                form: l.congruence(form),
                domain: domain.transformed(l),
            },
            SurfaceSpec::AffineHyperplanePatch { normal, offset, domain } => {
                let li = l
                    .inverse()
                    .ok_or_else(|| Error::MalformedSurface("singular frame change".into()))?;
                let first = li.row(0);
                if !is_time_functional(&first) {
                    return Err(Error::UnknownReduction(
                        "frame change mixes time into space; patch image is not a patch".into(),
                    ));
                }
                let a = l.transpose().apply(normal);
                let c = if first.time_part().is_positive() {
                    offset.clone()
                } else {
                    -offset
                };
                SurfaceSpec::AffineHyperplanePatch {
                    normal: a,
                    offset: c,
                    domain: domain.transformed(l),
                }
            }
            SurfaceSpec::FinitePointSet { points } => {
                let li = l
                    .inverse()
                    .ok_or_else(|| Error::MalformedSurface("singular frame change".into()))?;
                SurfaceSpec::FinitePointSet {
                    points: points.iter().map(|p| ddag(&li.apply(p))).collect(),
                }
            }
        })
    }

    /// Deterministic probe points used for witness search.
    pub fn probe_points(&self) -> Vec<Point> {
        if let SurfaceSpec::FinitePointSet { points } = self {
            return points.clone();
        }
        let mut out: Vec<Point> = Vec::new();
        for w in probe_directions(self.dim()) {
            if let Some(x) = self.radial_point(&w) {
                if !out.contains(&x) {
                    out.push(x);
                }
            }
            if out.len() >= 24 {
                break;
            }
        }
        out
    }
}

fn check_domain(domain: &DirectionDomain, d: usize) -> Result<()> {
    if let Some(c) = &domain.cone {
        if c.rows() != d || !c.is_symmetric() {
            return Err(Error::MalformedSurface("cone form has the wrong shape".into()));
        }
    }
    for e in &domain.exclusions {
        same_dim(d, e.dim())?;
        if e.is_zero() {
            return Err(Error::MalformedSurface("zero exclusion functional".into()));
        }
    }
    Ok(())
}

/// Directions (1, v) over a small grid of speeds, slow ones first.
pub(crate) fn probe_directions(d: usize) -> Vec<Point> {
    let speeds: [(i64, i64); 10] = [
        (1, 5),
        (3, 2),
        (-1, 2),
        (3, 1),
        (4, 5),
        (-1, 5),
        (1, 2),
        (-3, 2),
        (-4, 5),
        (-3, 1),
    ];
    let mut out = Vec::new();
    let mk = |pairs: &[(usize, (i64, i64))]| {
        let mut v = vec![FieldElem::one()];
        v.extend((1..d).map(|_| FieldElem::zero()));
        for &(i, (n, m)) in pairs {
            v[i] = FieldElem::ratio(n, m);
        }
        Point::new(v)
    };
    out.push(mk(&[]));
    for &s in &speeds {
        out.push(mk(&[(1, s)]));
        if d > 2 {
            out.push(mk(&[(2, s)]));
            out.push(mk(&[(1, s), (2, (1, 5))]));
        }
    }
    out
}

/// Finds one witness triple per class among the probe points, trying several
/// positions of the middle ray along each chord.
fn witness_search(s: &SurfaceSpec) -> [Option<WitnessTriple>; 3] {
    let pts = s.probe_points();
    if let SurfaceSpec::FinitePointSet { .. } = s {
        return match classify_point_set(&pts) {
            Ok(c) => {
                let mut out = [None, None, None];
                for w in c.witnesses {
                    let k = slot(w.class.tag);
                    out[k] = Some(w);
                }
                out
            }
            Err(_) => [None, None, None],
        };
    }
    let lambdas = [FieldElem::ratio(1, 2), FieldElem::ratio(1, 3), FieldElem::ratio(2, 3)];
    let mut found: [Option<WitnessTriple>; 3] = [None, None, None];
    for i in 0..pts.len() {
        for k in i + 1..pts.len() {
            for lam in &lambdas {
                let mid = &pts[i].scale(lam) + &pts[k].scale(&(FieldElem::one() - lam));
                if mid.is_zero() {
                    continue;
                }
                let Some(q) = s.radial_point(&mid) else { continue };
                let Ok(c) = classify_triple(&pts[i], &q, &pts[k]) else {
                    continue;
                };
                if c.tag == TripleTag::NoWitness {
                    continue;
                }
                let slot_ix = slot(c.tag);
                if found[slot_ix].is_none() {
                    found[slot_ix] = Some(WitnessTriple {
                        p: pts[i].clone(),
                        q,
                        r: pts[k].clone(),
                        class: c,
                    });
                }
            }
            if found.iter().all(Option::is_some) {
                return found;
            }
        }
    }
    found
}

pub fn classify_surface(s: &SurfaceSpec) -> Result<SurfaceClassification> {
    s.validate()?;
    let found = witness_search(s);
    let (seen, witnesses) = summarize(found);
    let certified = match s {
        SurfaceSpec::FinitePointSet { .. } => {
            return Ok(SurfaceClassification {
                class: seen,
                certificate: "exhaustive triple enumeration".into(),
                witnesses,
            });
        }
        SurfaceSpec::AffineHyperplanePatch { .. } => Some((
            SetClass::Flat,
            "hyperplane not through o: every witness has μ = 1".to_string(),
        )),
        SurfaceSpec::QuadricRadialGraph { form, domain } => quadric_certificate(form, domain),
    };
    match (certified, seen) {
        (_, SetClass::Mixed) => Ok(SurfaceClassification {
            class: SetClass::Mixed,
            certificate: "witness triples of different classes".into(),
            witnesses,
        }),
        (_, SetClass::Trivial) => Ok(SurfaceClassification {
            class: SetClass::Trivial,
            certificate: "no witness triple among the probe points".into(),
            witnesses,
        }),
        (Some((class, cert)), found) if found == class => Ok(SurfaceClassification {
            class,
            certificate: cert,
            witnesses,
        }),
        (Some((class, _)), found) => Err(Error::MalformedSurface(format!(
            "certificate says {class} but a {found} witness was found"
        ))),
        (None, found) => Err(Error::UnknownReduction(format!(
            "only {found} witnesses found and no exact certificate for this form"
        ))),
    }
}

/// Exact class of a quadric radial graph from the inertia of its form. For p,
/// r on the level set Q = 1, a witness μ satisfies μ² = 1 − λ(1−λ)·Q(p − r),
/// so the sign of Q on chords decides the class.
fn quadric_certificate(form: &Matrix, domain: &DirectionDomain) -> Option<(SetClass, String)> {
    let d = form.rows();
    let (pos, neg, zero) = form.inertia();
    if pos == d {
        return Some((
            SetClass::Concave,
            "positive definite form: Q(p − r) > 0 on every chord".into(),
        ));
    }
    if pos != 1 || !(neg == d - 1 || zero == d - 1) {
        return None;
    }
    // ℓ = Q v for some v with Q(v) > 0 separates the two sheets.
    let v = (0..d)
        .map(|i| Point::basis(d, i))
        .find(|e| form.quad(e).is_positive())
        .or_else(|| {
            (0..d)
                .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
                .map(|(i, j)| &Point::basis(d, i) + &Point::basis(d, j))
                .find(|e| form.quad(e).is_positive())
        })?;
    let ell = form.apply(&v);
    let one_sheet = domain.functional_positive_on_upper(&ell) || domain.functional_positive_on_upper(&-&ell);
    if !one_sheet {
        return None;
    }
    if neg == d - 1 {
        Some((
            SetClass::Convex,
            "Lorentzian form, one sheet: Q(p − r) < 0 on every chord".into(),
        ))
    } else {
        Some((
            SetClass::Flat,
            "rank-one form, one sheet: the set lies in a hyperplane not through o".into(),
        ))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SampledClassification {
    pub samples: usize,
    pub seed: u64,
    pub tally: BTreeMap<TripleTag, usize>,
    /// First triple seen for each class, reproducible from the seed.
    pub witnesses: Vec<WitnessTriple>,
}

impl SampledClassification {
    /// A sampled triple whose class differs from `class`, if any.
    pub fn refutes(&self, class: SetClass) -> Option<&WitnessTriple> {
        let tag = class.tag();
        self.witnesses.iter().find(|w| Some(w.class.tag) != tag)
    }

    pub fn unanimous(&self) -> Option<TripleTag> {
        let seen: Vec<_> = self
            .tally
            .iter()
            .filter(|(t, n)| **t != TripleTag::NoWitness && **n > 0)
            .collect();
        (seen.len() == 1).then(|| *seen[0].0)
    }
}

/// Classifies n random exact triples. This can refute a claimed class but
/// never certifies one.
pub fn sample_refute(s: &SurfaceSpec, n: usize, seed: u64) -> Result<SampledClassification> {
    s.validate()?;
    let d = s.dim();
    let results: Vec<Option<WitnessTriple>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = sampling::stream(seed, i as u64);
            random_triple(s, d, &mut rng)
        })
        .collect();
    let mut tally = BTreeMap::new();
    let mut witnesses: Vec<WitnessTriple> = Vec::new();
    for w in results {
        let tag = w.as_ref().map_or(TripleTag::NoWitness, |w| w.class.tag);
        *tally.entry(tag).or_insert(0) += 1;
        if let Some(w) = w {
            if !witnesses.iter().any(|x| x.class.tag == w.class.tag) {
                witnesses.push(w);
            }
        }
    }
    witnesses.sort_by_key(|w| w.class.tag);
    Ok(SampledClassification {
        samples: n,
        seed,
        tally,
        witnesses,
    })
}

fn random_triple(s: &SurfaceSpec, d: usize, rng: &mut sampling::SampleRng) -> Option<WitnessTriple> {
    (0..32).find_map(|_| random_triple_once(s, d, rng))
}

fn random_triple_once(s: &SurfaceSpec, d: usize, rng: &mut sampling::SampleRng) -> Option<WitnessTriple> {
    if let SurfaceSpec::FinitePointSet { points } = s {
        if points.len() < 3 {
            return None;
        }
        let i = rng.gen_range(0..points.len());
        let j = rng.gen_range(0..points.len());
        let k = rng.gen_range(0..points.len());
        if i == j || j == k || i == k {
            return None;
        }
        let c = classify_triple(&points[i], &points[j], &points[k]).ok()?;
        return (c.tag != TripleTag::NoWitness).then(|| WitnessTriple {
            p: points[i].clone(),
            q: points[j].clone(),
            r: points[k].clone(),
            class: c,
        });
    }
    let pick = |rng: &mut sampling::SampleRng| {
        for _ in 0..64 {
            let w = sampling::unit_time_direction(rng, d, 2, 12);
            if let Some(x) = s.radial_point(&w) {
                return Some(x);
            }
        }
        None
    };
    let p = pick(rng)?;
    let r = pick(rng)?;
    if p == r {
        return None;
    }
    let lam = sampling::unit_open(rng, 12);
    let mid = &p.scale(&lam) + &r.scale(&(FieldElem::one() - &lam));
    let q = s.radial_point(&mid)?;
    let c = classify_triple(&p, &q, &r).ok()?;
    (c.tag != TripleTag::NoWitness).then_some(WitnessTriple { p, q, r, class: c })
}
