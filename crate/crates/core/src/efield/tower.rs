//! Towers of quadratic extensions and the recursive element representation.
//!
//! A tower is a list of generators g_0, g_1, ... where g_i = √r_i, r_i is a
//! positive element of Q(g_0..g_{i-1}) and g_i is not already in that field.
//! An element is `Rat(q)` or `Ext { level, a, b }` meaning a + b·g_level with
//! a, b over strictly lower generators and b ≠ 0. Because every generator is
//! independent of the ones below it, this representation is unique.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;

#[derive(Debug)]
pub(crate) struct Gen {
    pub radicand: Poly,
    pub approx: Interval,
    pub nesting: u32,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Tower {
    gens: Arc<Vec<Arc<Gen>>>,
}

#[derive(Clone, Debug)]
pub(crate) enum Poly {
    Rat(BigRational),
    Ext { level: usize, a: Arc<Poly>, b: Arc<Poly> },
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::Rat(BigRational::zero())
    }

    pub fn int(n: i64) -> Poly {
        Poly::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Poly::Rat(q) if q.is_zero())
    }

    pub fn level(&self) -> Option<usize> {
        match self {
            Poly::Rat(_) => None,
            Poly::Ext { level, .. } => Some(*level),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Poly::Rat(q) => Some(q),
            _ => None,
        }
    }

    pub fn gen(level: usize) -> Poly {
        Poly::Ext {
            level,
            a: Arc::new(Poly::zero()),
            b: Arc::new(Poly::int(1)),
        }
    }

    /// Split into (u, v) with self = u + v·g_level.
    fn split(&self, level: usize) -> (Poly, Poly) {
        match self {
            Poly::Ext { level: l, a, b } if *l == level => ((**a).clone(), (**b).clone()),
            _ => (self.clone(), Poly::zero()),
        }
    }

    /// Records every generator level mentioned directly in this term.
    pub fn collect_levels(&self, out: &mut Vec<bool>) {
        if let Poly::Ext { level, a, b } = self {
            out[*level] = true;
            a.collect_levels(out);
            b.collect_levels(out);
        }
    }

    pub fn structurally_eq(&self, other: &Poly) -> bool {
        match (self, other) {
            (Poly::Rat(x), Poly::Rat(y)) => x == y,
            (
                Poly::Ext {
                    level: l1,
                    a: a1,
                    b: b1,
                },
                Poly::Ext {
                    level: l2,
                    a: a2,
                    b: b2,
                },
            ) => l1 == l2 && a1.structurally_eq(a2) && b1.structurally_eq(b2),
            _ => false,
        }
    }

    pub fn relabel(&self, map: &[usize]) -> Poly {
        match self {
            Poly::Rat(q) => Poly::Rat(q.clone()),
            Poly::Ext { level, a, b } => Poly::Ext {
                level: map[*level],
                a: Arc::new(a.relabel(map)),
                b: Arc::new(b.relabel(map)),
            },
        }
    }
}

fn mk(level: usize, a: Poly, b: Poly) -> Poly {
    if b.is_zero() {
        a
    } else {
        Poly::Ext {
            level,
            a: Arc::new(a),
            b: Arc::new(b),
        }
    }
}

/// The nesting bound is read once from the environment; tests may lower it
/// per thread.
pub(crate) fn max_nesting() -> u32 {
    static ENV: OnceLock<u32> = OnceLock::new();
    let base = *ENV.get_or_init(|| {
        std::env::var("WORKBENCH_MAX_RADICAL_DEPTH")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(64)
    });
    LIMIT_OVERRIDE.with(|c| c.get()).unwrap_or(base)
}

thread_local! {
    pub(crate) static LIMIT_OVERRIDE: std::cell::Cell<Option<u32>> = const { std::cell::Cell::new(None) };
}

impl Tower {
    pub fn empty() -> Tower {
        Tower::default()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn gen(&self, i: usize) -> &Gen {
        &self.gens[i]
    }

    pub fn radicand(&self, i: usize) -> &Poly {
        &self.gens[i].radicand
    }

    /// Tower with a new generator √r. The caller guarantees r > 0 and that
    /// r has no square root in this tower.
    pub fn extend(&self, r: Poly) -> Tower {
        let mut used = vec![false; self.len()];
        r.collect_levels(&mut used);
        let nesting = 1 + used
            .iter()
            .enumerate()
            .filter(|(_, u)| **u)
            .map(|(i, _)| self.gens[i].nesting)
            .max()
            .unwrap_or(0);
        let approx = interval(self, &r).sqrt();
        let mut v: Vec<Arc<Gen>> = (*self.gens).clone();
        v.push(Arc::new(Gen {
            radicand: r,
            approx,
            nesting,
        }));
        Tower { gens: Arc::new(v) }
    }

    /// Shared single-generator tower for √n, n a squarefree integer > 1.
    pub fn integer_root(n: &BigInt) -> Tower {
        static CACHE: OnceLock<Mutex<HashMap<BigInt, Tower>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry(n.clone())
            .or_insert_with(|| Tower::empty().extend(Poly::Rat(BigRational::from_integer(n.clone()))))
            .clone()
    }

    pub fn truncate(&self, n: usize) -> Tower {
        if n >= self.len() {
            return self.clone();
        }
        Tower {
            gens: Arc::new(self.gens[..n].to_vec()),
        }
    }

    pub fn max_nesting_used(&self) -> u32 {
        self.gens.iter().map(|g| g.nesting).max().unwrap_or(0)
    }

    /// Length of the longest shared prefix. Generators are only ever shared
    /// together with everything below them, so one pointer test per index
    /// suffices.
    pub fn common_prefix(&self, other: &Tower) -> usize {
        let n = self.len().min(other.len());
        for j in (0..n).rev() {
            if Arc::ptr_eq(&self.gens[j], &other.gens[j]) {
                return j + 1;
            }
        }
        0
    }

    pub fn structurally_eq(&self, other: &Tower) -> bool {
        self.len() == other.len()
            && self
                .gens
                .iter()
                .zip(other.gens.iter())
                .all(|(a, b)| Arc::ptr_eq(a, b) || a.radicand.structurally_eq(&b.radicand))
    }

    /// Tower keeping only the generators flagged in `keep`, with the level map.
    pub fn restrict(&self, keep: &[bool]) -> (Tower, Vec<usize>) {
        let mut map = vec![usize::MAX; self.len()];
        let mut out = Tower::empty();
        for (i, k) in keep.iter().enumerate() {
            if *k {
                map[i] = out.len();
                let r = self.gens[i].radicand.relabel(&map);
                out = match r.as_rational() {
                    Some(q) if q.is_integer() && out.len() == 0 => Tower::integer_root(q.numer()),
                    _ => out.extend(r),
                };
            }
        }
        (out, map)
    }
}

pub(crate) fn neg(x: &Poly) -> Poly {
    match x {
        Poly::Rat(q) => Poly::Rat(-q),
        Poly::Ext { level, a, b } => Poly::Ext {
            level: *level,
            a: Arc::new(neg(a)),
            b: Arc::new(neg(b)),
        },
    }
}

pub(crate) fn add(x: &Poly, y: &Poly) -> Poly {
    match x.level().cmp(&y.level()) {
        Ordering::Greater => {
            let (a, b) = x.split(x.level().unwrap());
            mk(x.level().unwrap(), add(&a, y), b)
        }
        Ordering::Less => add(y, x),
        Ordering::Equal => match (x, y) {
            (Poly::Rat(p), Poly::Rat(q)) => Poly::Rat(p + q),
            (Poly::Ext { level, a: a1, b: b1 }, Poly::Ext { a: a2, b: b2, .. }) => mk(*level, add(a1, a2), add(b1, b2)),
            _ => unreachable!(),
        },
    }
}

pub(crate) fn sub(x: &Poly, y: &Poly) -> Poly {
    add(x, &neg(y))
}

pub(crate) fn mul_rat(x: &Poly, q: &BigRational) -> Poly {
    if q.is_zero() {
        return Poly::zero();
    }
    match x {
        Poly::Rat(p) => Poly::Rat(p * q),
        Poly::Ext { level, a, b } => Poly::Ext {
            level: *level,
            a: Arc::new(mul_rat(a, q)),
            b: Arc::new(mul_rat(b, q)),
        },
    }
}

pub(crate) fn mul(t: &Tower, x: &Poly, y: &Poly) -> Poly {
    if x.is_zero() || y.is_zero() {
        return Poly::zero();
    }
    match x.level().cmp(&y.level()) {
        Ordering::Greater => {
            let l = x.level().unwrap();
            let (a, b) = x.split(l);
            mk(l, mul(t, &a, y), mul(t, &b, y))
        }
        Ordering::Less => mul(t, y, x),
        Ordering::Equal => match (x, y) {
            (Poly::Rat(p), _) => mul_rat(y, p),
            (Poly::Ext { level, a: a1, b: b1 }, Poly::Ext { a: a2, b: b2, .. }) => {
                let l = *level;
                let bb = mul(t, &mul(t, b1, b2), t.radicand(l));
                let a = add(&mul(t, a1, a2), &bb);
                let b = add(&mul(t, a1, b2), &mul(t, b1, a2));
                mk(l, a, b)
            }
            _ => unreachable!(),
        },
    }
}

/// Multiplicative inverse; x must be nonzero.
pub(crate) fn inv(t: &Tower, x: &Poly) -> Poly {
    match x {
        Poly::Rat(q) => Poly::Rat(q.recip()),
        Poly::Ext { level, a, b } => {
            let l = *level;
            let n = sub(&mul(t, a, a), &mul(t, &mul(t, b, b), t.radicand(l)));
            let ni = inv(t, &n);
            mk(l, mul(t, a, &ni), neg(&mul(t, b, &ni)))
        }
    }
}

pub(crate) fn interval(t: &Tower, x: &Poly) -> Interval {
    match x {
        Poly::Rat(q) => Interval::from_rational(q),
        Poly::Ext { level, a, b } => interval(t, a).add(interval(t, b).mul(t.gen(*level).approx)),
    }
}

pub(crate) fn sign(t: &Tower, x: &Poly) -> Ordering {
    match x {
        Poly::Rat(q) => q.cmp(&BigRational::zero()),
        Poly::Ext { level, a, b } => {
            let iv = interval(t, x);
            if iv.lo > 0.0 {
                return Ordering::Greater;
            }
            if iv.hi < 0.0 {
                return Ordering::Less;
            }
            let sa = sign(t, a);
            let sb = sign(t, b);
            if sa == Ordering::Equal {
                return sb;
            }
            if sa == sb {
                return sa;
            }
            let n = sub(&mul(t, a, a), &mul(t, &mul(t, b, b), t.radicand(*level)));
            let sn = sign(t, &n);
            if sa == Ordering::Greater {
                sn
            } else {
                sn.reverse()
            }
        }
    }
}

pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// Nonnegative square root of x using only generators 0..k, if it exists.
pub(crate) fn sqrt_in(t: &Tower, x: &Poly, k: usize) -> Option<Poly> {
    if x.is_zero() {
        return Some(Poly::zero());
    }
    if sign(t, x) == Ordering::Less {
        return None;
    }
    if k == 0 {
        return x.as_rational().and_then(rational_sqrt).map(Poly::Rat);
    }
    let l = k - 1;
    if x.level().is_some_and(|xl| xl > l) {
        return None;
    }
    let (u, v) = x.split(l);
    let r = t.radicand(l);
    let two = BigRational::from_integer(BigInt::from(2));
    let root = if v.is_zero() {
        if let Some(s) = sqrt_in(t, &u, l) {
            Some(s)
        } else {
            let w2 = mul(t, &u, &inv(t, r));
            sqrt_in(t, &w2, l).map(|w| mk(l, Poly::zero(), w))
        }
    } else {
        let n2 = sub(&mul(t, &u, &u), &mul(t, &mul(t, &v, &v), r));
        let n = sqrt_in(t, &n2, l)?;
        let half = two.recip();
        let mut found = None;
        for cand in [mul_rat(&add(&u, &n), &half), mul_rat(&sub(&u, &n), &half)] {
            if cand.is_zero() {
                continue;
            }
            if let Some(p) = sqrt_in(t, &cand, l) {
                let q = mul(t, &v, &inv(t, &mul_rat(&p, &two)));
                found = Some(mk(l, p, q));
                break;
            }
        }
        found
    }?;
    if sign(t, &root) == Ordering::Less {
        Some(neg(&root))
    } else {
        Some(root)
    }
}

/// Rewrites a term over tower `from` into tower `to`, given the image of each
/// generator of `from`.
pub(crate) fn embed(to: &Tower, x: &Poly, images: &[Poly]) -> Poly {
    match x {
        Poly::Rat(q) => Poly::Rat(q.clone()),
        Poly::Ext { level, a, b } => add(&embed(to, a, images), &mul(to, &embed(to, b, images), &images[*level])),
    }
}

/// Smallest tower containing both, plus the images of `b`'s generators.
pub(crate) fn merge(a: &Tower, b: &Tower) -> (Tower, Vec<Poly>) {
    let common = a.common_prefix(b);
    let mut images: Vec<Poly> = (0..common).map(Poly::gen).collect();
    let mut m = a.clone();
    for j in common..b.len() {
        let r = embed(&m, b.radicand(j), &images);
        if let Some(s) = sqrt_in(&m, &r, m.len()) {
            images.push(s);
        } else {
            m = m.extend(r);
            images.push(Poly::gen(m.len() - 1));
        }
    }
    (m, images)
}

/// Squarefree decomposition by trial division: n = s²·f for the small primes;
/// whatever is left is kept in f unless it is itself a perfect square.
pub(crate) fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut s = BigInt::one();
    let mut f = BigInt::one();
    let mut m = n.clone();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(2000);
    while p <= limit && &p * &p <= m {
        let pp = &p * &p;
        while (&m % &pp).is_zero() {
            m /= &pp;
            s *= &p;
        }
        if (&m % &p).is_zero() {
            m /= &p;
            f *= &p;
        }
        p += 1;
    }
    let r = m.sqrt();
    if &r * &r == m {
        s *= r;
    } else {
        f *= m;
    }
    (s, f)
}
