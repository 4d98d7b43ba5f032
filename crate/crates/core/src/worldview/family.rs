use serde::{Deserialize, Serialize};

use crate::efield::{FieldElem, Point};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// One conjunct of the membership predicate, evaluated on w = p − q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "functional")]
pub enum DirectionConstraint {
    /// w_τ ≠ 0.
    TimeNonzero,
    /// |w_σ|² < w_τ².
    Subluminal,
    /// ℓ·w ≠ 0.
    LinearNonzero(Point),
}

impl DirectionConstraint {
    pub fn admits(&self, w: &Point) -> bool {
        match self {
            DirectionConstraint::TimeNonzero => !w.time_part().is_zero(),
            DirectionConstraint::Subluminal => w.space_norm_sq() < w.time_part().square(),
            DirectionConstraint::LinearNonzero(l) => !l.dot(w).is_zero(),
        }
    }

    /// The constraint as a linear functional, when it is one.
    pub fn functional(&self, d: usize) -> Option<Point> {
        match self {
            DirectionConstraint::TimeNonzero => Some(Point::unit_time(d)),
            DirectionConstraint::LinearNonzero(l) => Some(l.clone()),
            DirectionConstraint::Subluminal => None,
        }
    }
}

/// How an admitted direction w determines the linear part of the chart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ChartRule {
    /// 1_t ↦ w / w_τ, other basis vectors fixed.
    Galilean,
    /// 1_t ↦ the point where the line of w meets a·x = 1, other basis
    /// vectors fixed.
    PlaneSection { normal: Point },
    /// 1_t ↦ the point of the line of w on Q(x) = 1 with positive time;
    /// the linear part is that point's Lorentz boost scaled to fit.
    ConformalSection { form: Matrix },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObserverFamily {
    pub predicate: Vec<DirectionConstraint>,
    #[serde(rename = "constructor")]
    pub rule: ChartRule,
}

pub(crate) struct LinearPair {
    pub forward: Matrix,
    pub inverse: Matrix,
}

fn is_time_functional(l: &Point) -> bool {
    l.space_part().iter().all(FieldElem::is_zero) && !l.time_part().is_zero()
}

pub(crate) fn proportional(a: &Point, b: &Point) -> bool {
    let Some(i) = (0..a.dim()).find(|&i| !a[i].is_zero()) else {
        return b.is_zero();
    };
    if b[i].is_zero() {
        return false;
    }
    let t = &b[i] / &a[i];
    a.scale(&t) == *b
}

impl ObserverFamily {
    pub fn admits(&self, w: &Point) -> bool {
        !w.is_zero() && self.predicate.iter().all(|c| c.admits(w))
    }

    pub fn has_subluminal(&self) -> bool {
        self.predicate.contains(&DirectionConstraint::Subluminal)
    }

    /// The predicate forces w_τ ≠ 0.
    pub fn forces_time_nonzero(&self) -> bool {
        self.predicate.iter().any(|c| match c {
            DirectionConstraint::TimeNonzero | DirectionConstraint::Subluminal => true,
            DirectionConstraint::LinearNonzero(l) => is_time_functional(l),
        })
    }

    /// The predicate forces ℓ·w ≠ 0.
    pub fn forces_nonzero(&self, ell: &Point) -> bool {
        self.predicate.iter().any(|c| match c {
            DirectionConstraint::TimeNonzero => is_time_functional(ell),
            DirectionConstraint::Subluminal => {
                // ℓ·w ≠ 0 on the light cone iff ℓ is timelike or lightlike
                let l = ell.time_part().square() - ell.space_norm_sq();
                !l.is_negative() && !ell.is_zero()
            }
            DirectionConstraint::LinearNonzero(l) => proportional(l, ell),
        })
    }

    pub fn validate(&self, d: usize) -> Result<()> {
        for c in &self.predicate {
            if let DirectionConstraint::LinearNonzero(l) = c {
                crate::error::same_dim(d, l.dim())?;
                if l.is_zero() {
                    return Err(Error::InvalidModel("zero functional in predicate".into()));
                }
            }
        }
        match &self.rule {
            ChartRule::Galilean => {
                if !self.forces_time_nonzero() {
                    return Err(Error::InvalidModel(
                        "Galilean charts need a predicate that forces w_τ ≠ 0".into(),
                    ));
                }
            }
            ChartRule::PlaneSection { normal } => {
                crate::error::same_dim(d, normal.dim())?;
                if !self.forces_time_nonzero() || !self.forces_nonzero(normal) {
                    return Err(Error::InvalidModel(
                        "plane-section charts need a predicate forcing w_τ ≠ 0 and a·w ≠ 0".into(),
                    ));
                }
            }
            ChartRule::ConformalSection { form } => {
                if form.rows() != d || !form.is_symmetric() {
                    return Err(Error::InvalidModel("section form must be symmetric d×d".into()));
                }
                if !self.has_subluminal() {
                    return Err(Error::InvalidModel(
                        "conformal charts need the speed<1 constraint in the predicate".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The time-unit vector, in the reference chart, of an observer moving
    /// along w.
    pub fn section(&self, w: &Point) -> Result<Point> {
        match &self.rule {
            ChartRule::Galilean => {
                let t = w.time_part();
                if t.is_zero() {
                    return Err(Error::NotAnObserver("horizontal direction".into()));
                }
                Ok(w.scale(&t.recip()?))
            }
            ChartRule::PlaneSection { normal } => {
                let aw = normal.dot(w);
                if aw.is_zero() {
                    return Err(Error::NotAnObserver("direction parallel to the section plane".into()));
                }
                Ok(w.scale(&aw.recip()?))
            }
            ChartRule::ConformalSection { form } => {
                let q = form.quad(w);
                if !q.is_positive() {
                    return Err(Error::NotAnObserver("line misses the section surface".into()));
                }
                let u = w.scale(&q.sqrt()?.recip()?);
                Ok(crate::geom::ddag(&u))
            }
        }
    }

    pub(crate) fn linear_pair(&self, w: &Point) -> Result<LinearPair> {
        let d = w.dim();
        match &self.rule {
            ChartRule::Galilean | ChartRule::PlaneSection { .. } => {
                let u = self.section(w)?;
                let ut = u.time_part().clone();
                if ut.is_zero() {
                    return Err(Error::NotAnObserver("time-unit vector is horizontal".into()));
                }
                let mut cols = vec![u.clone()];
                cols.extend((1..d).map(|i| Point::basis(d, i)));
                let forward = Matrix::from_columns(&cols);
                let it = ut.recip()?;
                let mut inverse = Matrix::identity(d);
                inverse.set(0, 0, it.clone());
                for i in 1..d {
                    inverse.set(i, 0, -(&u[i] * &it));
                }
                Ok(LinearPair { forward, inverse })
            }
            ChartRule::ConformalSection { form } => {
                let w = crate::geom::ddag(w);
                let q = form.quad(&w);
                let e = w.minkowski_sq();
                if !q.is_positive() || !e.is_positive() {
                    return Err(Error::NotAnObserver("direction outside the light cone".into()));
                }
                let sq = q.sqrt()?;
                let se = e.sqrt()?;
                let s = &se / &sq;
                // boost column (γ, γv) = w / √η(w)
                let c = w.scale(&se.recip()?);
                let boost = boost_from_column(&c);
                let inv_boost = boost_from_column(&Point::new(
                    std::iter::once(c.time_part().clone())
                        .chain(c.space_part().iter().map(|x| -x))
                        .collect(),
                ));
                Ok(LinearPair {
                    forward: boost.scale(&s),
                    inverse: inv_boost.scale(&s.recip()?),
                })
            }
        }
    }

    /// Chart linear parts L satisfy Lᵀ ℓ ∝ ℓ for every observer.
    pub fn functional_invariant(&self, ell: &Point) -> bool {
        match &self.rule {
            ChartRule::Galilean => is_time_functional(ell),
            ChartRule::PlaneSection { normal } => {
                is_time_functional(ell)
                    || (proportional(normal, ell)
                        && (normal.time_part().is_one() || normal.space_part().iter().all(FieldElem::is_zero)))
            }
            ChartRule::ConformalSection { .. } => false,
        }
    }

    /// The admitted set of directions looks the same from every observer.
    pub fn constraint_invariant(&self, c: &DirectionConstraint, d: usize) -> bool {
        match c {
            DirectionConstraint::Subluminal => matches!(self.rule, ChartRule::ConformalSection { .. }),
            _ => self.functional_invariant(&c.functional(d).expect("linear constraint")),
        }
    }
}

/// Lorentz boost whose first column is c = (γ, γv).
pub fn boost_from_column(c: &Point) -> Matrix {
    let d = c.dim();
    let g = c.time_part();
    let b = c.space_part();
    let k = (FieldElem::one() + g).recip().expect("γ ≥ 1");
    let mut m = Matrix::zeros(d, d);
    m.set(0, 0, g.clone());
    for i in 1..d {
        m.set(0, i, b[i - 1].clone());
        m.set(i, 0, b[i - 1].clone());
        for j in 1..d {
            let mut v = &(&b[i - 1] * &b[j - 1]) * &k;
            if i == j {
                v = v + FieldElem::one();
            }
            m.set(i, j, v);
        }
    }
    m
}
