//! Zero-totalized prime fields `(F_p)₀` and the Lagrange equations
//! `(1 + x₁² + ... + xₙ²) / (1 + x₁² + ... + xₙ²) = 1`.
//!
//! `L_n` holds in `(F_p)₀` exactly when `−1` is not a sum of `n` squares
//! mod `p`. Witness searches fold over the precomputed set of squares
//! instead of enumerating all `p^n` tuples.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::axioms::{run_suite, CheckParams, Mode, Model};
use crate::kernel::{Rational, Session};
use crate::term::{eval_exact, eval_mod_p, parse, EvalError, Interpretation, Valuation};
use crate::SCHEMA_VERSION;

/// Moduli above this are rejected; the squares table is one byte per element.
pub const MAX_MODULUS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is smaller than 2")]
    TooSmall(u64),
    #[error("modulus {p} is composite (divisible by {factor})")]
    Composite { p: u64, factor: u64 },
    #[error("modulus {0} exceeds the supported maximum {MAX_MODULUS}")]
    TooLarge(u64),
    #[error("Lagrange arity {0} is outside 1..=4")]
    ArityOutOfRange(usize),
}

/// An element of `(F_p)₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }
}

impl std::fmt::Display for Residue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// The prime field of `p` elements with `0⁻¹ = 0`.
#[derive(Debug, Clone)]
pub struct PrimeField {
    p: u64,
    /// `smallest_root[v]` is the least `x` with `x² ≡ v`, if any.
    smallest_root: Vec<Option<u64>>,
}

fn smallest_factor(n: u64) -> Option<u64> {
    (2..).take_while(|d| d * d <= n).find(|d| n.is_multiple_of(*d))
}

impl PrimeField {
    /// Builds `(F_p)₀`, rejecting composites by trial division.
    pub fn new(p: u64) -> Result<PrimeField, FieldError> {
        if p < 2 {
            return Err(FieldError::TooSmall(p));
        }
        if p > MAX_MODULUS {
            return Err(FieldError::TooLarge(p));
        }
        if let Some(factor) = smallest_factor(p) {
            return Err(FieldError::Composite { p, factor });
        }
        let mut smallest_root = vec![None; p as usize];
        for x in 0..p {
            let sq = (x * x % p) as usize;
            smallest_root[sq].get_or_insert(x);
        }
        Ok(PrimeField { p, smallest_root })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn residue(&self, v: u64) -> Residue {
        Residue {
            value: v % self.p,
            modulus: self.p,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Residue> + '_ {
        (0..self.p).map(|v| self.residue(v))
    }

    pub fn add(&self, a: Residue, b: Residue) -> Residue {
        self.residue((a.value + b.value) % self.p)
    }

    pub fn mul(&self, a: Residue, b: Residue) -> Residue {
        self.residue(a.value * b.value % self.p)
    }

    pub fn neg(&self, a: Residue) -> Residue {
        self.residue(self.p - a.value)
    }

    pub fn pow(&self, a: Residue, mut e: u64) -> Residue {
        let (mut base, mut acc) = (a.value, 1 % self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        self.residue(acc)
    }

    /// `a^(p−2)`, and `0` at `0`.
    pub fn inv(&self, a: Residue) -> Residue {
        if a.value == 0 {
            return a;
        }
        self.pow(a, self.p - 2)
    }

    /// Reduces `p/q` as `p · q⁻¹`, so a denominator divisible by `p` gives `0`.
    pub fn rational(&self, q: &Rational) -> Residue {
        let reduce = |n: &BigInt| -> u64 {
            let r = n.mod_floor(&BigInt::from(self.p));
            r.to_u64().expect("reduced below modulus")
        };
        let num = self.residue(reduce(q.numer()));
        let den = self.residue(reduce(q.denom()));
        self.mul(num, self.inv(den))
    }

    pub fn is_square(&self, v: u64) -> bool {
        self.smallest_root[(v % self.p) as usize].is_some()
    }

    /// The set `{x² mod p}` in ascending order.
    pub fn squares(&self) -> Vec<u64> {
        (0..self.p).filter(|&v| self.is_square(v)).collect()
    }

    /// The smallest `(x₁..x_k)` with `Σ xᵢ² ≡ target`, comparing `x_k`
    /// first, then `x_{k−1}`, and so on.
    fn sum_of_squares(&self, target: u64, k: usize) -> Option<Vec<u64>> {
        if k == 1 {
            return self.smallest_root[target as usize].map(|x| vec![x]);
        }
        (0..self.p).find_map(|x| {
            let rest = (target + self.p - x * x % self.p) % self.p;
            self.sum_of_squares(rest, k - 1).map(|mut w| {
                w.push(x);
                w
            })
        })
    }

    /// Decides `L_n`. On failure the smallest tuple with `1 + Σ xᵢ² ≡ 0` is
    /// returned, in the order that compares the last coordinate first. Under
    /// that order the witness for `L_n` is the witness for the smallest
    /// failing arity `m`, padded with zeros.
    pub fn lagrange(&self, n: usize) -> Result<LagrangeOutcome, FieldError> {
        if !(1..=4).contains(&n) {
            return Err(FieldError::ArityOutOfRange(n));
        }
        let witness = self.sum_of_squares(self.p - 1, n);
        Ok(LagrangeOutcome {
            p: self.p,
            n,
            holds: witness.is_none(),
            witness,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LagrangeOutcome {
    pub p: u64,
    pub n: usize,
    pub holds: bool,
    pub witness: Option<Vec<u64>>,
}

pub fn lagrange_holds(p: u64, n: usize) -> Result<LagrangeOutcome, FieldError> {
    PrimeField::new(p)?.lagrange(n)
}

/// Primes up to `limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return vec![];
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Number of failing primes whose witnesses are kept in a scan report.
pub const SCAN_SAMPLE: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub schema_version: u32,
    pub n: usize,
    pub limit: u64,
    /// Primes `p ≤ limit` with `(F_p)₀ ⊨ L_n`.
    pub holds: Vec<u64>,
    /// Witnesses for the first few primes where `L_n` fails.
    pub counterexample_sample: BTreeMap<u64, Vec<u64>>,
}

/// Enumerates every prime up to `limit` and records where `L_n` holds.
pub fn scan_lagrange(n: usize, limit: u64) -> Result<ScanReport, FieldError> {
    if !(1..=4).contains(&n) {
        return Err(FieldError::ArityOutOfRange(n));
    }
    let limit = limit.min(MAX_MODULUS);
    let outcomes: Vec<LagrangeOutcome> = primes_up_to(limit)
        .into_par_iter()
        .map(|p| lagrange_holds(p, n))
        .collect::<Result<_, _>>()?;
    let holds = outcomes.iter().filter(|o| o.holds).map(|o| o.p).collect();
    let counterexample_sample = outcomes
        .iter()
        .filter_map(|o| Some((o.p, o.witness.clone()?)))
        .take(SCAN_SAMPLE)
        .collect();
    Ok(ScanReport {
        schema_version: SCHEMA_VERSION,
        n,
        limit,
        holds,
        counterexample_sample,
    })
}

/// Evaluation into a [`PrimeField`].
pub struct FiniteModel<'a> {
    pub field: &'a PrimeField,
}

impl FiniteModel<'_> {
    fn check(&self, a: Residue) -> Result<Residue, EvalError> {
        if a.modulus != self.field.p {
            return Err(EvalError::Unsupported {
                symbol: "residue of another field",
                model: self.name(),
            });
        }
        Ok(a)
    }
}

impl Interpretation for FiniteModel<'_> {
    type Value = Residue;

    fn name(&self) -> String {
        format!("F_{}", self.field.p)
    }
    fn zero(&self) -> Residue {
        self.field.residue(0)
    }
    fn one(&self) -> Residue {
        self.field.residue(1)
    }
    fn num(&self, q: &Rational) -> Result<Residue, EvalError> {
        Ok(self.field.rational(q))
    }
    fn add(&self, a: &Residue, b: &Residue) -> Result<Residue, EvalError> {
        Ok(self.field.add(self.check(*a)?, self.check(*b)?))
    }
    fn mul(&self, a: &Residue, b: &Residue) -> Result<Residue, EvalError> {
        Ok(self.field.mul(self.check(*a)?, self.check(*b)?))
    }
    fn neg(&self, a: &Residue) -> Result<Residue, EvalError> {
        Ok(self.field.neg(self.check(*a)?))
    }
    fn inv(&self, a: &Residue) -> Result<Residue, EvalError> {
        Ok(self.field.inv(self.check(*a)?))
    }
    fn sign(&self, _: &Residue) -> Result<Residue, EvalError> {
        Err(self.unsupported("s"))
    }
    fn sqrt(&self, _: &Residue) -> Result<Residue, EvalError> {
        Err(self.unsupported("sqrt"))
    }
    fn re(&self, _: &Residue) -> Result<Residue, EvalError> {
        Err(self.unsupported("re"))
    }
    fn conj(&self, _: &Residue) -> Result<Residue, EvalError> {
        Err(self.unsupported("conj"))
    }
}

/// Why `(F_3)₀` satisfies `Md + L₁` yet is no homomorphic image of the
/// rational meadow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct F3Report {
    pub schema_version: u32,
    /// `{x² mod 3}`.
    pub squares: Vec<u64>,
    /// `L₁` decided from the squares table.
    pub l1: LagrangeOutcome,
    /// Md and `L₁` checked exhaustively over `(F_3)₀`.
    pub md_and_l1_hold: bool,
    /// `(1+1+1)/(1+1+1)` in `(F_3)₀`.
    pub finite_value: u64,
    /// The same closed term in the exact model, canonical form.
    pub exact_value: String,
    /// A homomorphism would have to map `1` to both values.
    pub homomorphism_blocked: bool,
}

pub fn verify_f3_argument() -> F3Report {
    let f3 = PrimeField::new(3).expect("3 is prime");
    let params = CheckParams::new(Mode::Exhaustive);
    let md_and_l1_hold = run_suite("Md+Lagrange1", Model::Finite(3), &params)
        .map(|r| r.passed())
        .unwrap_or(false);
    let display = parse("(1+1+1)/(1+1+1)").expect("fixed term parses");
    let finite_value = eval_mod_p(&display, &Valuation::new(), &f3)
        .expect("meadow term")
        .value();
    let session = Session::new();
    let exact = eval_exact(&display, &Valuation::new(), &session).expect("closed term");
    let exact_one = exact == session.one();
    F3Report {
        schema_version: SCHEMA_VERSION,
        squares: f3.squares(),
        l1: f3.lagrange(1).expect("n in range"),
        md_and_l1_hold,
        finite_value,
        exact_value: exact.to_string(),
        homomorphism_blocked: exact_one && finite_value != 1,
    }
}

/// Euler's criterion: `−1` is a square mod odd `p` iff `(−1)^((p−1)/2) ≡ 1`.
/// Kept as an oracle independent of the squares table.
pub fn minus_one_is_square_euler(p: u64) -> bool {
    if p == 2 {
        return true;
    }
    let minus_one = BigInt::from(p - 1);
    let r = minus_one.modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
    !r.is_negative() && r == BigInt::from(1)
}
