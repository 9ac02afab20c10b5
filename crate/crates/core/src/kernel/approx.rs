//! Certified decimal approximation by rational interval arithmetic.
//!
//! This path never asks the exact kernel for a sign: every radical is
//! enclosed by integer square roots on a dyadic grid and enclosures are
//! propagated through the coordinate expression. It serves as an
//! independent cross-check of the exact decisions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::coords::{self, Q};
use super::{Rational, Real};

/// A closed interval with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn point(q: Rational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// True when every point of `self` exceeds every point of `other`.
    pub fn strictly_above(&self, other: &Interval) -> bool {
        self.lo > other.hi
    }

    fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    fn mul(&self, other: &Interval, bits: u32) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().cloned().unwrap();
        let hi = products.iter().max().cloned().unwrap();
        Interval {
            lo: round_down(&lo, bits),
            hi: round_up(&hi, bits),
        }
    }

    /// Encloses `√x` for the non-negative part of the interval.
    fn sqrt(&self, bits: u32) -> Interval {
        let scale = BigInt::one() << (2 * bits as usize);
        let denom = BigInt::one() << bits as usize;
        let clamp = |q: &Rational| if q.is_negative() { Rational::zero() } else { q.clone() };
        let lo_scaled = (clamp(&self.lo) * Rational::from_integer(scale.clone())).floor().to_integer();
        let hi_scaled = (clamp(&self.hi) * Rational::from_integer(scale)).ceil().to_integer();
        let lo_root = lo_scaled.sqrt();
        let mut hi_root = hi_scaled.sqrt();
        if &hi_root * &hi_root < hi_scaled {
            hi_root += 1;
        }
        Interval {
            lo: Rational::new(lo_root, denom.clone()),
            hi: Rational::new(hi_root, denom),
        }
    }
}

fn round_down(q: &Rational, bits: u32) -> Rational {
    let denom = BigInt::one() << bits as usize;
    let scaled = (q * Rational::from_integer(denom.clone())).floor().to_integer();
    Rational::new(scaled, denom)
}

fn round_up(q: &Rational, bits: u32) -> Rational {
    let denom = BigInt::one() << bits as usize;
    let scaled = (q * Rational::from_integer(denom.clone())).ceil().to_integer();
    Rational::new(scaled, denom)
}

fn enclose(coords: &[Q], radicals: &[Interval], bits: u32) -> Interval {
    if coords.len() == 1 {
        return Interval::point(coords[0].clone());
    }
    let h = coords.len() / 2;
    let (u, v) = coords.split_at(h);
    let level = coords::depth_of(coords.len()) - 1;
    let iu = enclose(u, radicals, bits);
    if coords::is_zero(v) {
        return iu;
    }
    let iv = enclose(v, radicals, bits);
    iu.add(&iv.mul(&radicals[level], bits))
}

fn radical_enclosures(rads: &[Vec<Q>], levels: usize, bits: u32) -> Vec<Interval> {
    let mut out: Vec<Interval> = Vec::with_capacity(levels);
    for r in rads.iter().take(levels) {
        let radicand = enclose(r, &out, bits);
        out.push(radicand.sqrt(bits));
    }
    out
}

fn pow10(digits: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), digits)
}

fn format_decimal(negative: bool, scaled: &BigInt, digits: usize) -> String {
    let (int_part, frac_part) = scaled.div_rem(&pow10(digits));
    let sign = if negative { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part:0>digits$}")
}

/// Truncates a rational toward zero at `digits` decimals.
fn truncate_rational(q: &Rational, digits: usize) -> String {
    let scaled = (q.abs() * Rational::from_integer(pow10(digits))).floor().to_integer();
    format_decimal(q.is_negative(), &scaled, digits)
}

impl Real {
    /// An enclosure of this value with all radicals approximated on a grid of
    /// `2^-bits`. Finer grids give narrower intervals.
    pub fn enclosure(&self, bits: u32) -> Interval {
        let rads = self.session.radicands();
        let radicals = radical_enclosures(&rads, self.depth(), bits);
        enclose(&self.coords, &radicals, bits)
    }

    /// A decimal string `d` with `|self − d| < 10^-digits`.
    ///
    /// Digits are the truncation (toward zero) of a certified enclosure once
    /// both endpoints agree to `digits` places. Values of positive depth are
    /// irrational, so refinement always separates them from decimal
    /// boundaries; the midpoint fallback only guards against a refinement cap.
    pub fn approx_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if let Some(q) = self.to_rational() {
            return truncate_rational(&q, digits);
        }
        let scale = Rational::from_integer(pow10(digits));
        let mut bits = (digits as u32) * 4 + 32;
        let mut last = self.enclosure(bits);
        for _ in 0..16 {
            let iv = &last;
            let zero = Rational::zero();
            if iv.lo > zero || iv.hi < zero {
                let negative = iv.hi < zero;
                let (lo, hi) = if negative {
                    (-iv.hi.clone(), -iv.lo.clone())
                } else {
                    (iv.lo.clone(), iv.hi.clone())
                };
                let a = (&lo * &scale).floor().to_integer();
                let b = (&hi * &scale).floor().to_integer();
                if a == b {
                    return format_decimal(negative, &a, digits);
                }
            }
            bits *= 2;
            last = self.enclosure(bits);
        }
        let mid = (&last.lo + &last.hi) / Rational::from_integer(2.into());
        let rounded = (mid.abs() * &scale).round().to_integer();
        format_decimal(mid.is_negative(), &rounded, digits)
    }
}
