//! Arithmetic on raw coordinate vectors over a real quadratic tower.
//!
//! A vector of length `2^d` holds the coordinates of an element of
//! `F_d = Q(√r_0, ..., √r_{d-1})`. Bit `k` of an index selects the factor
//! `√r_k`, so the top half of a vector is the coefficient of `√r_{d-1}`:
//! `a = u + v·√r_{d-1}` with `u, v ∈ F_{d-1}`. Each radicand `r_k` is itself
//! stored as a vector of length `2^k`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type Q = BigRational;
pub(crate) type Radicands = [Vec<Q>];

pub(crate) fn depth_of(len: usize) -> usize {
    debug_assert!(len.is_power_of_two());
    len.trailing_zeros() as usize
}

pub(crate) fn zeros(len: usize) -> Vec<Q> {
    vec![Q::zero(); len]
}

pub(crate) fn is_zero(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Pads `a` with zeros up to `len` coordinates.
pub(crate) fn lift(a: &[Q], len: usize) -> Vec<Q> {
    debug_assert!(len >= a.len());
    let mut out = Vec::with_capacity(len);
    out.extend_from_slice(a);
    out.resize(len, Q::zero());
    out
}

/// Drops top halves that are identically zero, giving the minimal depth.
pub(crate) fn trim(mut a: Vec<Q>) -> Vec<Q> {
    while a.len() > 1 {
        let half = a.len() / 2;
        if !is_zero(&a[half..]) {
            break;
        }
        a.truncate(half);
    }
    a
}

pub(crate) fn join(u: Vec<Q>, v: Vec<Q>) -> Vec<Q> {
    debug_assert_eq!(u.len(), v.len());
    let mut out = u;
    out.extend(v);
    out
}

pub(crate) fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn neg(a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| -x).collect()
}

pub(crate) fn scale(a: &[Q], k: &Q) -> Vec<Q> {
    a.iter().map(|x| x * k).collect()
}

/// Product of two vectors of equal length.
pub(crate) fn mul(a: &[Q], b: &[Q], rads: &Radicands) -> Vec<Q> {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len();
    if n == 1 {
        return vec![&a[0] * &b[0]];
    }
    if is_zero(a) || is_zero(b) {
        return zeros(n);
    }
    let h = n / 2;
    let (u1, v1) = a.split_at(h);
    let (u2, v2) = b.split_at(h);
    let r = &rads[depth_of(n) - 1];
    // (u1 + v1√r)(u2 + v2√r) = (u1u2 + v1v2·r) + ((u1+v1)(u2+v2) − u1u2 − v1v2)√r
    let p = mul(u1, u2, rads);
    let q = mul(v1, v2, rads);
    let m = mul(&add(u1, v1), &add(u2, v2), rads);
    let lo = add(&p, &mul(&q, r, rads));
    let hi = sub(&sub(&m, &p), &q);
    join(lo, hi)
}

/// Zero-totalized inverse: `inv(0) = 0`.
pub(crate) fn inv(a: &[Q], rads: &Radicands) -> Vec<Q> {
    let n = a.len();
    if n == 1 {
        return vec![if a[0].is_zero() { Q::zero() } else { a[0].recip() }];
    }
    let h = n / 2;
    let (u, v) = a.split_at(h);
    if is_zero(v) {
        return join(inv(u, rads), zeros(h));
    }
    let r = &rads[depth_of(n) - 1];
    // 1/(u + v√r) = (u − v√r) / (u² − v²r)
    let norm = sub(&mul(u, u, rads), &mul(&mul(v, v, rads), r, rads));
    assert!(
        !is_zero(&norm),
        "tower invariant violated: radicand at level {} is a square below it",
        depth_of(n) - 1
    );
    let ni = inv(&norm, rads);
    join(mul(u, &ni, rads), neg(&mul(v, &ni, rads)))
}

/// Exact sign, recursing down the tower.
pub(crate) fn sign(a: &[Q], rads: &Radicands) -> Ordering {
    let n = a.len();
    if n == 1 {
        return a[0].cmp(&Q::zero());
    }
    let h = n / 2;
    let (u, v) = a.split_at(h);
    let sv = sign(v, rads);
    if sv == Ordering::Equal {
        return sign(u, rads);
    }
    let su = sign(u, rads);
    if su == Ordering::Equal {
        return sv;
    }
    if su == sv {
        return su;
    }
    // u and v√r have opposite signs; the larger magnitude wins.
    let r = &rads[depth_of(n) - 1];
    let diff = sub(&mul(u, u, rads), &mul(&mul(v, v, rads), r, rads));
    match sign(&diff, rads) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => panic!(
            "tower invariant violated: u² = v²·r at level {}",
            depth_of(n) - 1
        ),
    }
}

/// Exact square root of a non-negative rational, if it is rational.
pub(crate) fn rational_sqrt(q: &Q) -> Option<Q> {
    if q.is_negative() {
        return None;
    }
    let root = |x: &BigInt| -> Option<BigInt> {
        let s = x.sqrt();
        (&s * &s == *x).then_some(s)
    };
    Some(Q::new(root(q.numer())?, root(q.denom())?))
}

/// Trial-division bound used when pulling square factors out of integers.
const SQUARE_FACTOR_BOUND: u64 = 1 << 16;

/// Writes a positive rational as `c² · m` with `m` a positive integer free of
/// square factors below [`SQUARE_FACTOR_BOUND`] (and not itself a square).
/// Returns `(c, m)`.
pub(crate) fn square_part(q: &Q) -> (Q, BigInt) {
    debug_assert!(q.is_positive());
    // n/d = (n·d) / d²
    let mut m = q.numer() * q.denom();
    let mut c = BigInt::one();
    let mut p = 2u64;
    while p < SQUARE_FACTOR_BOUND {
        let pp = BigInt::from(p * p);
        if pp > m {
            break;
        }
        while (&m % &pp).is_zero() {
            m /= &pp;
            c *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let s = m.sqrt();
    if &s * &s == m {
        c *= s;
        m = BigInt::one();
    }
    (Q::new(c, q.denom().clone()), m)
}

/// Searches `F_d` (where `a.len() == 2^d`) for `w` with `w² = a`.
///
/// Complete for the tower: if `a` is a square of any element of `F_d` a root
/// is returned (of unspecified sign).
pub(crate) fn sqrt_in_tower(a: &[Q], rads: &Radicands) -> Option<Vec<Q>> {
    let n = a.len();
    if n == 1 {
        return rational_sqrt(&a[0]).map(|s| vec![s]);
    }
    let h = n / 2;
    let (u, v) = a.split_at(h);
    let r = &rads[depth_of(n) - 1];
    if is_zero(v) {
        if let Some(c) = sqrt_in_tower(u, rads) {
            return Some(join(c, zeros(h)));
        }
        // u = d²·r  ⇒  √u = d·√r
        let quotient = mul(u, &inv(r, rads), rads);
        return sqrt_in_tower(&quotient, rads).map(|d| join(zeros(h), d));
    }
    // (c + d√r)² = (c² + d²r) + 2cd√r, and (c² − d²r)² = u² − v²r.
    let norm = sub(&mul(u, u, rads), &mul(&mul(v, v, rads), r, rads));
    let s = sqrt_in_tower(&norm, rads)?;
    let half = Q::new(BigInt::one(), BigInt::from(2));
    for candidate in [add(u, &s), sub(u, &s)] {
        let c_sq = scale(&candidate, &half);
        if is_zero(&c_sq) {
            continue;
        }
        if let Some(c) = sqrt_in_tower(&c_sq, rads) {
            let two_c_inv = inv(&scale(&c, &Q::from_integer(BigInt::from(2))), rads);
            let d = mul(v, &two_c_inv, rads);
            return Some(join(c, d));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn trim_drops_zero_top_halves() {
        let v = vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)];
        assert_eq!(trim(v), vec![q(1, 1)]);
        let w = vec![q(1, 1), q(2, 1), q(0, 1), q(0, 1)];
        assert_eq!(trim(w).len(), 2);
    }

    #[test]
    fn square_parts() {
        let sp = |n: i64, d: i64| {
            let (c, m) = square_part(&Q::new(n.into(), d.into()));
            (c, m.to_string())
        };
        assert_eq!(sp(8, 1), (Q::from_integer(2.into()), "2".into()));
        assert_eq!(sp(1, 2), (Q::new(1.into(), 2.into()), "2".into()));
        assert_eq!(sp(9, 4), (Q::new(3.into(), 2.into()), "1".into()));
        assert_eq!(sp(12, 5), (Q::new(2.into(), 5.into()), "15".into()));
    }

    #[test]
    fn rational_sqrt_detects_squares() {
        assert_eq!(rational_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(rational_sqrt(&q(2, 1)), None);
        assert_eq!(rational_sqrt(&q(-4, 1)), None);
        assert_eq!(rational_sqrt(&q(0, 1)), Some(q(0, 1)));
    }

    #[test]
    fn mul_and_inv_in_q_sqrt2() {
        let rads = vec![vec![q(2, 1)]];
        // (1 + √2)(−1 + √2) = 1
        let a = vec![q(1, 1), q(1, 1)];
        let b = vec![q(-1, 1), q(1, 1)];
        assert_eq!(mul(&a, &b, &rads), vec![q(1, 1), q(0, 1)]);
        assert_eq!(inv(&a, &rads), b);
    }

    #[test]
    fn finds_denested_root() {
        // 3 + 2√2 = (1 + √2)²
        let rads = vec![vec![q(2, 1)]];
        let a = vec![q(3, 1), q(2, 1)];
        let w = sqrt_in_tower(&a, &rads).unwrap();
        assert_eq!(mul(&w, &w, &rads), a);
        // 1 + √2 is not a square in Q(√2)
        assert!(sqrt_in_tower(&[q(1, 1), q(1, 1)], &rads).is_none());
    }
}
