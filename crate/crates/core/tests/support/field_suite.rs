//! Randomized ordered-field law checks on the exact backend, with nested
//! radical comparisons cross-checked against an independent outward-rounded
//! f64 interval evaluation of the same expression tree.

use axkin_core::efield::FieldElem;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub enum Expr {
    Q(i64, i64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// √|x|
    Root(Box<Expr>),
}

#[derive(Clone, Copy, Debug)]
pub struct Iv {
    pub lo: f64,
    pub hi: f64,
}

impl Iv {
    fn add(self, o: Iv) -> Iv {
        Iv {
            lo: (self.lo + o.lo).next_down(),
            hi: (self.hi + o.hi).next_up(),
        }
    }
    fn neg(self) -> Iv {
        Iv {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
    fn mul(self, o: Iv) -> Iv {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Iv {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }
    fn abs(self) -> Iv {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            self.neg()
        } else {
            Iv {
                lo: 0.0,
                hi: self.hi.max(-self.lo),
            }
        }
    }
    fn sqrt(self) -> Iv {
        let a = self.abs();
        Iv {
            lo: a.lo.sqrt().next_down().max(0.0),
            hi: a.hi.sqrt().next_up(),
        }
    }
    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl Expr {
    pub fn exact(&self) -> FieldElem {
        match self {
            Expr::Q(n, d) => FieldElem::ratio(*n, *d),
            Expr::Add(a, b) => a.exact() + b.exact(),
            Expr::Sub(a, b) => a.exact() - b.exact(),
            Expr::Mul(a, b) => a.exact() * b.exact(),
            Expr::Root(a) => a.exact().abs().sqrt().expect("root of a nonnegative element"),
        }
    }

    pub fn oracle(&self) -> Iv {
        match self {
            Expr::Q(n, d) => {
                let x = *n as f64 / *d as f64;
                Iv {
                    lo: x.next_down(),
                    hi: x.next_up(),
                }
            }
            Expr::Add(a, b) => a.oracle().add(b.oracle()),
            Expr::Sub(a, b) => a.oracle().add(b.oracle().neg()),
            Expr::Mul(a, b) => a.oracle().mul(b.oracle()),
            Expr::Root(a) => a.oracle().sqrt(),
        }
    }
}

/// A random expression over small rationals using at most `roots` square roots.
pub fn expr(rng: &mut ChaCha8Rng, depth: u32, roots: &mut u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.3) {
        return Expr::Q(rng.gen_range(-9..=9), rng.gen_range(1..=6));
    }
    let sub = |rng: &mut ChaCha8Rng, roots: &mut u32| Box::new(expr(rng, depth - 1, roots));
    match rng.gen_range(0..4) {
        0 => Expr::Add(sub(rng, roots), sub(rng, roots)),
        1 => Expr::Sub(sub(rng, roots), sub(rng, roots)),
        2 => Expr::Mul(sub(rng, roots), sub(rng, roots)),
        _ if *roots > 0 => {
            *roots -= 1;
            Expr::Root(sub(rng, roots))
        }
        _ => Expr::Add(sub(rng, roots), sub(rng, roots)),
    }
}

fn radical(rng: &mut ChaCha8Rng) -> (Expr, FieldElem) {
    let mut roots = 2;
    let e = expr(rng, 3, &mut roots);
    let x = e.exact();
    (e, x)
}

#[derive(Debug, Default)]
pub struct SuiteReport {
    pub checks: usize,
    pub failures: Vec<String>,
    /// Comparisons the interval oracle could separate.
    pub oracle_decided: usize,
    /// Checks whose operands include an irrational element.
    pub irrational: usize,
}

/// Runs `n` randomized law checks; each index gets its own stream.
pub fn run(n: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::default();
    for i in 0..n {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let (ea, a) = radical(&mut rng);
        let (eb, b) = radical(&mut rng);
        let (ec, c) = radical(&mut rng);
        if !(a.is_rational() && b.is_rational() && c.is_rational()) {
            rep.irrational += 1;
        }
        let kind = i % 8;
        let ok = match kind {
            0 => (&a + &b) + &c == &a + &(&b + &c) && (&a * &b) * &c == &a * &(&b * &c),
            1 => &a * &(&b + &c) == &a * &b + &a * &c,
            2 => (&a + &b) == (&b + &a) && (&a * &b) == (&b * &a) && &(&a - &b) + &b == a,
            3 => {
                // order is compatible with + and with multiplication by positives
                let lt = a < b;
                let shifted = (&a + &c) < (&b + &c);
                let scaled = if c.is_positive() { (&a * &c) < (&b * &c) } else { lt };
                lt == shifted && lt == scaled
            }
            4 => {
                let r = a.abs().sqrt().unwrap();
                r.square() == a.abs() && !r.is_negative() && a.square().sqrt().unwrap() == a.abs()
            }
            5 => match a.checked_div(&b) {
                Ok(q) => &q * &b == a,
                Err(_) => b.is_zero(),
            },
            _ => {
                // exact comparison against the oracle where the oracle separates
                let ia = ea.oracle();
                let ib = eb.oracle();
                let exact_in = ia.contains(a.to_f64()) || (ia.hi - ia.lo) < 1e-9;
                let decided = if ia.hi < ib.lo {
                    Some(std::cmp::Ordering::Less)
                } else if ib.hi < ia.lo {
                    Some(std::cmp::Ordering::Greater)
                } else {
                    None
                };
                let agrees = match decided {
                    Some(o) => {
                        rep.oracle_decided += 1;
                        a.cmp(&b) == o
                    }
                    None => true,
                };
                let _ = &ec;
                exact_in && agrees
            }
        };
        rep.checks += 1;
        if !ok {
            rep.failures
                .push(format!("check {i} (kind {kind}): a = {a}, b = {b}, c = {c}"));
        }
    }
    rep
}
