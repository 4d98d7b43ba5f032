use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::FieldElem;

/// A point of Q^d. The first coordinate is time, the rest are space.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<FieldElem>);

impl Point {
    pub fn new(coords: Vec<FieldElem>) -> Point {
        Point(coords)
    }

    pub fn from_ints(xs: &[i64]) -> Point {
        Point(xs.iter().map(|&x| FieldElem::from_int(x)).collect())
    }

    /// The origin o.
    pub fn origin(d: usize) -> Point {
        Point(vec![FieldElem::zero(); d])
    }

    /// The i-th standard basis vector; `basis(d, 0)` is 1_t.
    pub fn basis(d: usize, i: usize) -> Point {
        let mut v = vec![FieldElem::zero(); d];
        v[i] = FieldElem::one();
        Point(v)
    }

    pub fn unit_time(d: usize) -> Point {
        Point::basis(d, 0)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[FieldElem] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<FieldElem> {
        self.0
    }

    pub fn time_part(&self) -> &FieldElem {
        &self.0[0]
    }

    pub fn space_part(&self) -> &[FieldElem] {
        &self.0[1..]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldElem::is_zero)
    }

    pub fn scale(&self, s: &FieldElem) -> Point {
        Point(self.0.iter().map(|x| x * s).collect())
    }

    pub fn dot(&self, other: &Point) -> FieldElem {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> FieldElem {
        self.dot(self)
    }

    pub fn norm(&self) -> FieldElem {
        self.norm_sq().sqrt_nonneg()
    }

    /// |p_σ|².
    pub fn space_norm_sq(&self) -> FieldElem {
        self.0[1..].iter().map(|x| x * x).sum()
    }

    pub fn space_norm(&self) -> FieldElem {
        self.space_norm_sq().sqrt_nonneg()
    }

    /// p_τ² − |p_σ|².
    pub fn minkowski_sq(&self) -> FieldElem {
        &self.0[0] * &self.0[0] - self.space_norm_sq()
    }

    pub fn with_time(&self, t: FieldElem) -> Point {
        let mut v = self.0.clone();
        v[0] = t;
        Point(v)
    }

    pub fn approx(&self) -> Vec<f64> {
        self.0.iter().map(FieldElem::to_f64).collect()
    }
}

impl Index<usize> for Point {
    type Output = FieldElem;
    fn index(&self, i: usize) -> &FieldElem {
        &self.0[i]
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        &self + &rhs
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        &self - &rhs
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point(self.0.iter().map(|x| -x).collect())
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        -&self
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
