//! Exact matrices and affine maps over the constructible field.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::efield::{FieldElem, Point};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    m: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zeros(n: usize, m: usize) -> Matrix {
        Matrix {
            n,
            m,
            data: vec![FieldElem::zero(); n * m],
        }
    }

    pub fn identity(d: usize) -> Matrix {
        let mut a = Matrix::zeros(d, d);
        for i in 0..d {
            a.set(i, i, FieldElem::one());
        }
        a
    }

    /// diag(1, −1, …, −1).
    pub fn minkowski(d: usize) -> Matrix {
        let mut a = Matrix::zeros(d, d);
        a.set(0, 0, FieldElem::one());
        for i in 1..d {
            a.set(i, i, FieldElem::from_int(-1));
        }
        a
    }

    pub fn diagonal(entries: Vec<FieldElem>) -> Matrix {
        let d = entries.len();
        let mut a = Matrix::zeros(d, d);
        for (i, x) in entries.into_iter().enumerate() {
            a.set(i, i, x);
        }
        a
    }

    pub fn from_rows(rows: Vec<Vec<FieldElem>>) -> Option<Matrix> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return None;
        }
        Some(Matrix {
            n,
            m,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_columns(cols: &[Point]) -> Matrix {
        let m = cols.len();
        let n = cols.first().map_or(0, Point::dim);
        let mut a = Matrix::zeros(n, m);
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                a.set(i, j, c[i].clone());
            }
        }
        a
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    pub fn is_square(&self) -> bool {
        self.n == self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.data[i * self.m + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.m + j] = v;
    }

    pub fn row(&self, i: usize) -> Point {
        Point::new(self.data[i * self.m..(i + 1) * self.m].to_vec())
    }

    pub fn column(&self, j: usize) -> Point {
        Point::new((0..self.n).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElem>> {
        (0..self.n).map(|i| self.row(i).into_coords()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.m, self.n);
        for i in 0..self.n {
            for j in 0..self.m {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.m, o.n, "matrix shape mismatch");
        let mut r = Matrix::zeros(self.n, o.m);
        for i in 0..self.n {
            for j in 0..o.m {
                let mut acc = FieldElem::zero();
                for k in 0..self.m {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a * b;
                    }
                }
                r.set(i, j, acc);
            }
        }
        r
    }

    pub fn apply(&self, p: &Point) -> Point {
        assert_eq!(self.m, p.dim(), "dimension mismatch");
        Point::new(
            (0..self.n)
                .map(|i| {
                    let mut acc = FieldElem::zero();
                    for j in 0..self.m {
                        let a = self.get(i, j);
                        if !a.is_zero() && !p[j].is_zero() {
                            acc = acc + a * &p[j];
                        }
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn scale(&self, s: &FieldElem) -> Matrix {
        Matrix {
            n: self.n,
            m: self.m,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            m: self.m,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            m: self.m,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// xᵀ A x.
    pub fn quad(&self, x: &Point) -> FieldElem {
        x.dot(&self.apply(x))
    }

    /// xᵀ A y.
    pub fn bilinear(&self, x: &Point, y: &Point) -> FieldElem {
        x.dot(&self.apply(y))
    }

    /// Aᵀ Q A.
    pub fn congruence(&self, q: &Matrix) -> Matrix {
        self.transpose().mul(q).mul(self)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    pub fn det(&self) -> FieldElem {
        assert!(self.is_square());
        let n = self.n;
        let mut a = self.clone();
        let mut det = FieldElem::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return FieldElem::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let pivot = a.get(k, k).clone();
            det = det * &pivot;
            for i in k + 1..n {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let factor = a.get(i, k) / &pivot;
                for j in k..n {
                    let v = a.get(i, j) - &factor * a.get(k, j);
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for k in 0..n {
            let p = (k..n).find(|&i| !a.get(i, k).is_zero())?;
            if p != k {
                a.swap_rows(p, k);
                inv.swap_rows(p, k);
            }
            let pivot = a.get(k, k).recip().ok()?;
            for j in 0..n {
                let v = a.get(k, j) * &pivot;
                a.set(k, j, v);
                let w = inv.get(k, j) * &pivot;
                inv.set(k, j, w);
            }
            for i in 0..n {
                if i == k || a.get(i, k).is_zero() {
                    continue;
                }
                let factor = a.get(i, k).clone();
                for j in 0..n {
                    let v = a.get(i, j) - &factor * a.get(k, j);
                    a.set(i, j, v);
                    let w = inv.get(i, j) - &factor * inv.get(k, j);
                    inv.set(i, j, w);
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.m {
            self.data.swap(a * self.m + j, b * self.m + j);
        }
    }

    /// A basis of {x : A x = 0}.
    pub fn null_space(&self) -> Vec<Point> {
        let mut a = self.clone();
        let (n, m) = (self.n, self.m);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m {
            if row == n {
                break;
            }
            let Some(p) = (row..n).find(|&i| !a.get(i, col).is_zero()) else {
                continue;
            };
            a.swap_rows(p, row);
            let inv = a.get(row, col).recip().expect("nonzero pivot");
            for j in 0..m {
                let v = a.get(row, j) * &inv;
                a.set(row, j, v);
            }
            for i in 0..n {
                if i != row && !a.get(i, col).is_zero() {
                    let factor = a.get(i, col).clone();
                    for j in 0..m {
                        let v = a.get(i, j) - &factor * a.get(row, j);
                        a.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![FieldElem::zero(); m];
                v[f] = FieldElem::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a.get(r, f);
                }
                Point::new(v)
            })
            .collect()
    }

    /// Counts of positive, negative and zero eigenvalue signs (Sylvester
    /// inertia) by symmetric elimination.
    pub fn inertia(&self) -> (usize, usize, usize) {
        assert!(self.is_symmetric(), "inertia needs a symmetric matrix");
        let n = self.n;
        let mut a = self.clone();
        let (mut pos, mut neg) = (0, 0);
        let mut k = 0;
        while k < n {
            let diag = (k..n).find(|&i| !a.get(i, i).is_zero());
            let p = match diag {
                Some(p) => p,
                None => {
                    let off = (k..n)
                        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                        .find(|&(i, j)| !a.get(i, j).is_zero());
                    let Some((i, j)) = off else { break };
                    // row/col i += row/col j makes the diagonal 2·a_ij
                    for c in 0..n {
                        let v = a.get(i, c) + a.get(j, c);
                        a.set(i, c, v);
                    }
                    for r in 0..n {
                        let v = a.get(r, i) + a.get(r, j);
                        a.set(r, i, v);
                    }
                    i
                }
            };
            if p != k {
                a.swap_rows(p, k);
                for r in 0..n {
                    a.data.swap(r * n + p, r * n + k);
                }
            }
            let pivot = a.get(k, k).clone();
            if pivot.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let factor = a.get(i, k) / &pivot;
                for j in k..n {
                    let v = a.get(i, j) - &factor * a.get(k, j);
                    a.set(i, j, v);
                }
                for r in k..n {
                    let v = a.get(r, i) - &factor * a.get(r, k);
                    a.set(r, i, v);
                }
            }
            k += 1;
        }
        (pos, neg, n - pos - neg)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<FieldElem>>::deserialize(d)?;
        Matrix::from_rows(rows).ok_or_else(|| serde::de::Error::custom("ragged matrix rows"))
    }
}

/// x ↦ L x + offset.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMap {
    pub linear: Matrix,
    pub offset: Point,
}

impl AffineMap {
    pub fn new(linear: Matrix, offset: Point) -> AffineMap {
        AffineMap { linear, offset }
    }

    pub fn identity(d: usize) -> AffineMap {
        AffineMap::new(Matrix::identity(d), Point::origin(d))
    }

    pub fn linear(l: Matrix) -> AffineMap {
        let d = l.rows();
        AffineMap::new(l, Point::origin(d))
    }

    pub fn translation(t: Point) -> AffineMap {
        AffineMap::new(Matrix::identity(t.dim()), t)
    }

    pub fn dim(&self) -> usize {
        self.offset.dim()
    }

    pub fn apply(&self, p: &Point) -> Point {
        &self.linear.apply(p) + &self.offset
    }

    /// Image of a displacement vector.
    pub fn apply_linear(&self, v: &Point) -> Point {
        self.linear.apply(v)
    }

    /// self ∘ other.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap::new(self.linear.mul(&other.linear), self.apply(&other.offset))
    }

    pub fn inverse(&self) -> Option<AffineMap> {
        let li = self.linear.inverse()?;
        let off = -li.apply(&self.offset);
        Some(AffineMap::new(li, off))
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.offset.is_zero()
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x ↦ {} x + {}", self.linear, self.offset)
    }
}
