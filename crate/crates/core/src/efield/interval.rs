//! Outward-rounded f64 intervals used as a fast sign filter.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const EVERYTHING: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        if q.is_zero() {
            return Interval::point(0.0);
        }
        match q.to_f64() {
            Some(f) if f.is_finite() && f != 0.0 => {
                // to_f64 is within one ulp; widen by two to be safe.
                Interval {
                    lo: f.next_down().next_down(),
                    hi: f.next_up().next_up(),
                }
            }
            _ => {
                if q > &BigRational::zero() {
                    Interval {
                        lo: 0.0,
                        hi: f64::INFINITY,
                    }
                } else {
                    Interval {
                        lo: f64::NEG_INFINITY,
                        hi: 0.0,
                    }
                }
            }
        }
    }

    pub fn add(self, o: Interval) -> Interval {
        sane(Interval {
            lo: (self.lo + o.lo).next_down(),
            hi: (self.hi + o.hi).next_up(),
        })
    }

    pub fn mul(self, o: Interval) -> Interval {
        if self == Interval::point(0.0) || o == Interval::point(0.0) {
            return Interval::point(0.0);
        }
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        if c.iter().any(|x| x.is_nan()) {
            return Interval::EVERYTHING;
        }
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        sane(Interval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        })
    }

    /// Enclosure of √x on the nonnegative part of the interval.
    pub fn sqrt(self) -> Interval {
        let lo = if self.lo <= 0.0 {
            0.0
        } else {
            self.lo.sqrt().next_down().max(0.0)
        };
        let hi = if self.hi.is_infinite() {
            f64::INFINITY
        } else {
            self.hi.max(0.0).sqrt().next_up()
        };
        sane(Interval { lo, hi })
    }

    pub fn mid(self) -> f64 {
        if self.lo.is_finite() && self.hi.is_finite() {
            self.lo / 2.0 + self.hi / 2.0
        } else if self.lo.is_finite() {
            self.lo
        } else {
            self.hi
        }
    }
}

fn sane(i: Interval) -> Interval {
    if i.lo.is_nan() || i.hi.is_nan() {
        Interval::EVERYTHING
    } else {
        i
    }
}
