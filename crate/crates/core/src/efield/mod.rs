//! Exact arithmetic in the field of real constructible numbers.
//!
//! Values live in towers of quadratic extensions of Q (see [`tower`]). Equality
//! and sign are decided exactly; an f64 interval enclosure is only used to
//! answer sign queries early when it already separates the value from zero.

mod interval;
mod parse;
mod point;
mod tower;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use parse::ParseFieldError;
pub use point::Point;

use tower::{Poly, Tower};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeRadicand,
    #[error("radical nesting depth {depth} exceeds the limit {limit}")]
    ResourceExceeded { depth: u32, limit: u32 },
}

/// An exact real constructible number.
#[derive(Clone)]
pub struct FieldElem {
    tower: Tower,
    poly: Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(a: &FieldElem, b: &FieldElem, op: ArithOp) -> Result<FieldElem, FieldError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

pub fn field_sqrt(x: &FieldElem) -> Result<FieldElem, FieldError> {
    x.sqrt()
}

pub fn field_compare(a: &FieldElem, b: &FieldElem) -> Ordering {
    a.cmp(b)
}

/// Runs `f` with a lowered radical-nesting limit on the current thread.
pub fn with_nesting_limit<T>(limit: u32, f: impl FnOnce() -> T) -> T {
    let prev = tower::LIMIT_OVERRIDE.with(|c| c.replace(Some(limit)));
    let out = f();
    tower::LIMIT_OVERRIDE.with(|c| c.set(prev));
    out
}

impl FieldElem {
    fn from_parts(tower: Tower, poly: Poly) -> FieldElem {
        match poly.level() {
            None => FieldElem {
                tower: Tower::empty(),
                poly,
            },
            Some(l) if l + 1 < tower.len() => FieldElem {
                tower: tower.truncate(l + 1),
                poly,
            },
            Some(_) => FieldElem { tower, poly },
        }
    }

    pub fn zero() -> FieldElem {
        FieldElem::from_rational(BigRational::zero())
    }

    pub fn one() -> FieldElem {
        FieldElem::from_int(1)
    }

    pub fn from_int(n: i64) -> FieldElem {
        FieldElem::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> FieldElem {
        assert!(d != 0, "zero denominator");
        FieldElem::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(q: BigRational) -> FieldElem {
        FieldElem {
            tower: Tower::empty(),
            poly: Poly::Rat(q),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.poly.as_rational()
    }

    pub fn is_rational(&self) -> bool {
        self.poly.as_rational().is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        matches!(self.poly.as_rational(), Some(q) if q.is_one())
    }

    pub fn signum(&self) -> Ordering {
        tower::sign(&self.tower, &self.poly)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> FieldElem {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> FieldElem {
        self * self
    }

    /// Number of generators in the element's tower.
    pub fn tower_len(&self) -> usize {
        self.tower.len()
    }

    /// Deepest radical nesting among the generators in use.
    pub fn nesting_depth(&self) -> u32 {
        self.tower.max_nesting_used()
    }

    fn lift(a: &FieldElem, b: &FieldElem) -> (Tower, Poly, Poly) {
        if b.tower.len() == 0 {
            return (a.tower.clone(), a.poly.clone(), b.poly.clone());
        }
        if a.tower.len() == 0 {
            return (b.tower.clone(), a.poly.clone(), b.poly.clone());
        }
        let common = a.tower.common_prefix(&b.tower);
        if common == b.tower.len() {
            return (a.tower.clone(), a.poly.clone(), b.poly.clone());
        }
        if common == a.tower.len() {
            return (b.tower.clone(), a.poly.clone(), b.poly.clone());
        }
        let (m, images) = tower::merge(&a.tower, &b.tower);
        let limit = tower::max_nesting();
        let depth = m.max_nesting_used();
        if depth > limit {
            panic!("{}", FieldError::ResourceExceeded { depth, limit });
        }
        let pb = tower::embed(&m, &b.poly, &images);
        (m, a.poly.clone(), pb)
    }

    pub fn checked_div(&self, rhs: &FieldElem) -> Result<FieldElem, FieldError> {
        if rhs.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (t, x, y) = FieldElem::lift(self, rhs);
        let yi = tower::inv(&t, &y);
        let p = tower::mul(&t, &x, &yi);
        Ok(FieldElem::from_parts(t, p))
    }

    pub fn recip(&self) -> Result<FieldElem, FieldError> {
        FieldElem::one().checked_div(self)
    }

    /// The nonnegative square root.
    pub fn sqrt(&self) -> Result<FieldElem, FieldError> {
        match self.signum() {
            Ordering::Less => return Err(FieldError::NegativeRadicand),
            Ordering::Equal => return Ok(FieldElem::zero()),
            Ordering::Greater => {}
        }
        let limit = tower::max_nesting();
        if let Some(q) = self.poly.as_rational() {
            let nd = q.numer() * q.denom();
            let (s, f) = tower::square_part(&nd);
            let coeff = BigRational::new(s, q.denom().clone());
            if f.is_one() {
                return Ok(FieldElem::from_rational(coeff));
            }
            if limit < 1 {
                return Err(FieldError::ResourceExceeded { depth: 1, limit });
            }
            let t = Tower::integer_root(&f);
            let p = tower::mul_rat(&Poly::gen(0), &coeff);
            return Ok(FieldElem::from_parts(t, p));
        }
        if let Some(s) = tower::sqrt_in(&self.tower, &self.poly, self.tower.len()) {
            return Ok(FieldElem::from_parts(self.tower.clone(), s));
        }
        let t = self.tower.extend(self.poly.clone());
        let depth = t.gen(t.len() - 1).nesting;
        if depth > limit {
            return Err(FieldError::ResourceExceeded { depth, limit });
        }
        let p = Poly::gen(t.len() - 1);
        Ok(FieldElem::from_parts(t, p))
    }

    /// Square root of a value known to be nonnegative. Panics only if the
    /// nesting guard trips.
    pub fn sqrt_nonneg(&self) -> FieldElem {
        match self.sqrt() {
            Ok(v) => v,
            Err(e) => panic!("sqrt of a nonnegative value failed: {e}"),
        }
    }

    pub fn to_f64(&self) -> f64 {
        tower::interval(&self.tower, &self.poly).mid()
    }

    /// Bounds on the value; both ends are valid f64 enclosures.
    pub fn enclosure(&self) -> (f64, f64) {
        let iv = tower::interval(&self.tower, &self.poly);
        (iv.lo, iv.hi)
    }

    /// Decimal rendering for humans. Never used in a predicate.
    pub fn approx_string(&self) -> String {
        format!("≈{}", format_sig(self.to_f64(), 12))
    }

    /// Drops generators the value does not depend on.
    pub fn normalized(&self) -> FieldElem {
        let n = self.tower.len();
        if n == 0 {
            return self.clone();
        }
        let mut used = vec![false; n];
        self.poly.collect_levels(&mut used);
        for i in (0..n).rev() {
            if used[i] {
                self.tower.radicand(i).collect_levels(&mut used);
            }
        }
        if used.iter().all(|u| *u) {
            return self.clone();
        }
        let (t, map) = self.tower.restrict(&used);
        FieldElem::from_parts(t, self.poly.relabel(&map))
    }

    /// Same tower shape and same coefficients, compared term by term.
    pub fn structurally_eq(&self, other: &FieldElem) -> bool {
        self.tower.structurally_eq(&other.tower) && self.poly.structurally_eq(&other.poly)
    }

    pub fn min(a: FieldElem, b: FieldElem) -> FieldElem {
        if a <= b {
            a
        } else {
            b
        }
    }

    pub fn max(a: FieldElem, b: FieldElem) -> FieldElem {
        if a >= b {
            a
        } else {
            b
        }
    }
}

fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - mag).max(0) as usize;
    if (-5..15).contains(&mag) {
        format!("{v:.decimals$}")
    } else {
        format!("{v:.prec$e}", prec = digits - 1)
    }
}

impl Default for FieldElem {
    fn default() -> Self {
        FieldElem::zero()
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::from_int(n)
    }
}

impl From<BigRational> for FieldElem {
    fn from(q: BigRational) -> Self {
        FieldElem::from_rational(q)
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        if self.tower.len() == 0 && other.tower.len() == 0 {
            return self.poly.structurally_eq(&other.poly);
        }
        (self - other).is_zero()
    }
}

impl Eq for FieldElem {}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Some(x), Some(y)) = (self.as_rational(), other.as_rational()) {
            return x.cmp(y);
        }
        (self - other).signum()
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            tower: self.tower.clone(),
            poly: tower::neg(&self.poly),
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        let (t, x, y) = FieldElem::lift(self, rhs);
        let p = tower::add(&x, &y);
        FieldElem::from_parts(t, p)
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        let (t, x, y) = FieldElem::lift(self, rhs);
        let p = tower::sub(&x, &y);
        FieldElem::from_parts(t, p)
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        let (t, x, y) = FieldElem::lift(self, rhs);
        let p = tower::mul(&t, &x, &y);
        FieldElem::from_parts(t, p)
    }
}

impl Div for &FieldElem {
    type Output = FieldElem;
    /// Panics on a zero divisor; use [`FieldElem::checked_div`] otherwise.
    fn div(self, rhs: &FieldElem) -> FieldElem {
        match self.checked_div(rhs) {
            Ok(v) => v,
            Err(e) => panic!("{e}"),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                (&self).$m(rhs)
            }
        }
        impl $tr<FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl std::iter::Sum for FieldElem {
    fn sum<I: Iterator<Item = FieldElem>>(iter: I) -> FieldElem {
        iter.fold(FieldElem::zero(), |acc, x| acc + x)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

struct Term<'a> {
    tower: &'a Tower,
    poly: &'a Poly,
}

impl Term<'_> {
    fn sub<'b>(&'b self, poly: &'b Poly) -> Term<'b> {
        Term {
            tower: self.tower,
            poly,
        }
    }

    fn is_sum(&self) -> bool {
        match self.poly {
            Poly::Rat(q) => !q.is_integer() || q.is_negative(),
            Poly::Ext { a, b, .. } => !a.is_zero() || !b.as_rational().is_some_and(|q| q.is_one()),
        }
    }
}

impl fmt::Display for Term<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.poly {
            Poly::Rat(q) => write_rational(f, q),
            Poly::Ext { level, a, b } => {
                let root = format!("sqrt({})", self.sub(self.tower.radicand(*level)));
                let mut started = false;
                if !a.is_zero() {
                    write!(f, "{}", self.sub(a))?;
                    started = true;
                }
                match b.as_rational() {
                    Some(q) => {
                        let mag = q.abs();
                        if started {
                            f.write_str(if q.is_negative() { " - " } else { " + " })?;
                        } else if q.is_negative() {
                            f.write_str("-")?;
                        }
                        if mag.is_one() {
                            f.write_str(&root)
                        } else if mag.is_integer() {
                            write!(f, "{}*{}", mag.numer(), root)
                        } else if mag.numer().is_one() {
                            write!(f, "{}/{}", root, mag.denom())
                        } else {
                            write!(f, "{}*{}/{}", mag.numer(), root, mag.denom())
                        }
                    }
                    None => {
                        if started {
                            f.write_str(" + ")?;
                        }
                        let bt = self.sub(b);
                        if bt.is_sum() {
                            write!(f, "({bt})*{root}")
                        } else {
                            write!(f, "{bt}*{root}")
                        }
                    }
                }
            }
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            Term {
                tower: &self.tower,
                poly: &self.poly
            }
        )
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for FieldElem {
    type Err = ParseFieldError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse(s)
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Lit {
            Int(i64),
            Text(String),
        }
        match Lit::deserialize(d)? {
            Lit::Int(n) => Ok(FieldElem::from_int(n)),
            Lit::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
