//! Exact betweenness, the μ-classification of triples, ‡-normalization and
//! convex/flat/concave classification of point sets and surfaces.

mod surface;

use std::fmt;

use serde::Serialize;

use crate::efield::{FieldElem, Point};
use crate::error::{same_dim, Error, Result};

pub(crate) use surface::probe_directions as surface_probe_directions;
pub use surface::{
    classify_surface, sample_refute, DirectionDomain, SampledClassification, SurfaceClassification, SurfaceSpec,
};

/// True iff q = λp + (1−λ)r for some 0 < λ < 1.
pub fn between(p: &Point, q: &Point, r: &Point) -> Result<bool> {
    same_dim(p.dim(), q.dim())?;
    same_dim(p.dim(), r.dim())?;
    let pr = p - r;
    let qr = q - r;
    if pr.is_zero() {
        return Ok(false);
    }
    // λ from the first coordinate where p and r differ, then check all.
    let i = (0..p.dim()).find(|&i| !pr[i].is_zero()).unwrap();
    let lambda = &qr[i] / &pr[i];
    if !lambda.is_positive() || lambda >= FieldElem::one() {
        return Ok(false);
    }
    Ok(pr.scale(&lambda) == qr)
}

/// p if p_τ ≥ 0, else −p.
pub fn ddag(p: &Point) -> Point {
    if p.time_part().is_negative() {
        -p
    } else {
        p.clone()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TripleTag {
    Conv,
    Flat,
    Conc,
    NoWitness,
}

impl fmt::Display for TripleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TripleTag::Conv => "Conv",
            TripleTag::Flat => "Flat",
            TripleTag::Conc => "Conc",
            TripleTag::NoWitness => "NoWitness",
        })
    }
}

/// Result of solving Bw(p, μq, r) for μ > 0. When a witness exists, λ is the
/// segment parameter: μq = λp + (1−λ)r.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleClass {
    pub tag: TripleTag,
    pub mu: Option<FieldElem>,
    pub lambda: Option<FieldElem>,
}

impl TripleClass {
    fn none() -> TripleClass {
        TripleClass {
            tag: TripleTag::NoWitness,
            mu: None,
            lambda: None,
        }
    }
}

pub fn classify_triple(p: &Point, q: &Point, r: &Point) -> Result<TripleClass> {
    same_dim(p.dim(), q.dim())?;
    same_dim(p.dim(), r.dim())?;
    if q.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let u = p - r;
    if u.is_zero() {
        return Ok(TripleClass::none());
    }
    // μ q − λ u = r, solved through the normal equations.
    let qq = q.dot(q);
    let qu = q.dot(&u);
    let uu = u.dot(&u);
    let det = &qq * &uu - &qu * &qu;
    if det.is_zero() {
        return Ok(TripleClass::none());
    }
    let b0 = q.dot(r);
    let b1 = -u.dot(r);
    // [qq  -qu] [μ]   [b0]
    // [-qu  uu] [λ] = [b1]
    let mu = (&b0 * &uu + &qu * &b1) / &det;
    let lambda = (&qq * &b1 + &qu * &b0) / &det;
    if &q.scale(&mu) - &u.scale(&lambda) != *r {
        return Ok(TripleClass::none());
    }
    if !mu.is_positive() || !lambda.is_positive() || lambda >= FieldElem::one() {
        return Ok(TripleClass::none());
    }
    let tag = match mu.cmp(&FieldElem::one()) {
        std::cmp::Ordering::Greater => TripleTag::Conv,
        std::cmp::Ordering::Equal => TripleTag::Flat,
        std::cmp::Ordering::Less => TripleTag::Conc,
    };
    Ok(TripleClass {
        tag,
        mu: Some(mu),
        lambda: Some(lambda),
    })
}

/// |p_σ − q_σ| = |p_τ − q_τ|, compared through squares.
pub fn slope_is_one(p: &Point, q: &Point) -> Result<bool> {
    same_dim(p.dim(), q.dim())?;
    let w = p - q;
    if w.is_zero() {
        return Err(Error::DegenerateSegment);
    }
    Ok(w.space_norm_sq() == w.time_part().square())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SetClass {
    Convex,
    Flat,
    Concave,
    Trivial,
    Mixed,
}

impl SetClass {
    pub fn of_tag(tag: TripleTag) -> SetClass {
        match tag {
            TripleTag::Conv => SetClass::Convex,
            TripleTag::Flat => SetClass::Flat,
            TripleTag::Conc => SetClass::Concave,
            TripleTag::NoWitness => SetClass::Trivial,
        }
    }

    pub fn tag(self) -> Option<TripleTag> {
        match self {
            SetClass::Convex => Some(TripleTag::Conv),
            SetClass::Flat => Some(TripleTag::Flat),
            SetClass::Concave => Some(TripleTag::Conc),
            _ => None,
        }
    }
}

impl fmt::Display for SetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessTriple {
    pub p: Point,
    pub q: Point,
    pub r: Point,
    pub class: TripleClass,
}

impl WitnessTriple {
    /// Re-solves the triple from scratch.
    pub fn recheck(&self) -> Result<bool> {
        Ok(classify_triple(&self.p, &self.q, &self.r)? == self.class)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PointSetClassification {
    pub class: SetClass,
    /// One triple per class seen, in Conv, Flat, Conc order.
    pub witnesses: Vec<WitnessTriple>,
}

pub(crate) fn summarize(found: [Option<WitnessTriple>; 3]) -> (SetClass, Vec<WitnessTriple>) {
    let witnesses: Vec<WitnessTriple> = found.into_iter().flatten().collect();
    let class = match witnesses.len() {
        0 => SetClass::Trivial,
        1 => SetClass::of_tag(witnesses[0].class.tag),
        _ => SetClass::Mixed,
    };
    (class, witnesses)
}

pub(crate) fn slot(tag: TripleTag) -> usize {
    match tag {
        TripleTag::Conv => 0,
        TripleTag::Flat => 1,
        TripleTag::Conc => 2,
        TripleTag::NoWitness => unreachable!(),
    }
}

pub fn classify_point_set(points: &[Point]) -> Result<PointSetClassification> {
    let Some(first) = points.first() else {
        return Err(Error::MalformedSurface("empty point set".into()));
    };
    for p in points {
        same_dim(first.dim(), p.dim())?;
    }
    let mut found: [Option<WitnessTriple>; 3] = [None, None, None];
    let n = points.len();
    for i in 0..n {
        for k in i + 1..n {
            for j in 0..n {
                if j == i || j == k || points[j].is_zero() {
                    continue;
                }
                let c = classify_triple(&points[i], &points[j], &points[k])?;
                if c.tag == TripleTag::NoWitness {
                    continue;
                }
                let s = slot(c.tag);
                if found[s].is_none() {
                    found[s] = Some(WitnessTriple {
                        p: points[i].clone(),
                        q: points[j].clone(),
                        r: points[k].clone(),
                        class: c,
                    });
                }
            }
        }
    }
    let (class, witnesses) = summarize(found);
    Ok(PointSetClassification { class, witnesses })
}

#[cfg(test)]
mod tests;
