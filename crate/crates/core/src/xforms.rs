//! Lorentz boosts, Poincaré tests, dilations and the decomposition of
//! cone-preserving affine maps into a Poincaré map and a dilation.

use serde::Serialize;

use crate::efield::{FieldElem, Point};
use crate::error::{Error, Result};
use crate::linalg::{AffineMap, Matrix};
use crate::worldview::boost_from_column;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionResult {
    pub poincare: AffineMap,
    pub dilation: FieldElem,
    /// The field automorphism part; only the identity exists here.
    pub automorphism: &'static str,
}

impl DecompositionResult {
    /// dilation · (linear part of `poincare`), keeping its offset.
    pub fn recompose(&self) -> AffineMap {
        AffineMap::new(self.poincare.linear.scale(&self.dilation), self.poincare.offset.clone())
    }
}

/// Boost taking the time axis to the line of velocity v.
pub fn lorentz_boost(d: usize, v: &[FieldElem]) -> Result<AffineMap> {
    if v.len() + 1 != d {
        return Err(Error::DimensionMismatch {
            expected: d - 1,
            found: v.len(),
        });
    }
    let speed_sq: FieldElem = v.iter().map(FieldElem::square).sum();
    let one = FieldElem::one();
    if speed_sq >= one {
        return Err(Error::FasterThanLight(format!("|v|² = {speed_sq}")));
    }
    let gamma = (&one - &speed_sq).sqrt()?.recip()?;
    let col = Point::new(
        std::iter::once(gamma.clone())
            .chain(v.iter().map(|x| x * &gamma))
            .collect(),
    );
    Ok(AffineMap::linear(boost_from_column(&col)))
}

pub fn dilation(d: usize, s: &FieldElem) -> Result<AffineMap> {
    if !s.is_positive() {
        return Err(Error::BadShape(format!("dilation factor {s} is not positive")));
    }
    Ok(AffineMap::linear(Matrix::identity(d).scale(s)))
}

/// Rotation by the angle with the given cosine and sine in the plane of
/// spatial axes i and j (1-based coordinate indices, i ≠ j, both ≥ 1).
pub fn spatial_rotation(d: usize, i: usize, j: usize, cos: &FieldElem, sin: &FieldElem) -> Result<AffineMap> {
    if i == 0 || j == 0 || i >= d || j >= d || i == j {
        return Err(Error::BadShape(format!(
            "bad rotation plane ({i}, {j}) in dimension {d}"
        )));
    }
    if !(cos.square() + sin.square()).is_one() {
        return Err(Error::BadShape("cos² + sin² ≠ 1".into()));
    }
    let mut m = Matrix::identity(d);
    m.set(i, i, cos.clone());
    m.set(j, j, cos.clone());
    m.set(i, j, -sin);
    m.set(j, i, sin.clone());
    Ok(AffineMap::linear(m))
}

/// (t, x) ↦ (t, x + v t).
pub fn galilean_shear(d: usize, v: &[FieldElem]) -> Result<AffineMap> {
    if v.len() + 1 != d {
        return Err(Error::DimensionMismatch {
            expected: d - 1,
            found: v.len(),
        });
    }
    let mut m = Matrix::identity(d);
    for (i, x) in v.iter().enumerate() {
        m.set(i + 1, 0, x.clone());
    }
    Ok(AffineMap::linear(m))
}

/// c with LᵀηL = c·η, if the linear part has that shape.
fn eta_factor(map: &AffineMap) -> Option<FieldElem> {
    let d = map.dim();
    let eta = Matrix::minkowski(d);
    let g = map.linear.congruence(&eta);
    let c = g.get(0, 0).clone();
    (g == eta.scale(&c)).then_some(c)
}

fn require_d3(d: usize) -> Result<()> {
    if d < 3 {
        return Err(Error::DimensionTooLow { d, min: 3 });
    }
    Ok(())
}

/// True iff LᵀηL = c·η with c > 0, i.e. the map sends slope-1 lines to
/// slope-1 lines.
pub fn preserves_slope1(map: &AffineMap) -> Result<bool> {
    require_d3(map.dim())?;
    Ok(eta_factor(map).is_some_and(|c| c.is_positive()))
}

pub fn is_poincare(map: &AffineMap) -> bool {
    eta_factor(map).is_some_and(|c| c.is_one())
}

pub fn az_decompose(map: &AffineMap) -> Result<DecompositionResult> {
    require_d3(map.dim())?;
    let c = eta_factor(map)
        .filter(FieldElem::is_positive)
        .ok_or(Error::NotConePreserving)?;
    let s = c.sqrt()?;
    let poincare = AffineMap::new(map.linear.scale(&s.recip()?), map.offset.clone());
    Ok(DecompositionResult {
        poincare,
        dilation: s,
        automorphism: "identity",
    })
}
