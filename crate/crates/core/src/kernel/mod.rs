//! Exact arithmetic in the signed square-root meadow over the rationals.
//!
//! Values live in a [`Session`], which owns a growing tower of real quadratic
//! extensions `Q ⊂ Q(√r_0) ⊂ Q(√r_0, √r_1) ⊂ ...`. Every radicand is positive
//! and not a square in the field below it, so coordinates over the tower are
//! canonical and equality is coordinate equality.
//!
//! Inversion, sign and the signed square root are total: `inv(0) = 0`,
//! `sign(0) = 0`, `ssqrt(0) = 0`, and `ssqrt(x) = −ssqrt(−x)` for negative `x`.

mod approx;
pub(crate) mod coords;
mod serialize;

use std::cell::{Ref, RefCell};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

pub use approx::Interval;

use coords::Q;

/// Rational numbers: reduced, positive denominator, zero as `0/1`.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("values belong to different sessions ({0} and {1})")]
    SessionMismatch(u64, u64),
    #[error("tower invariant violated at level {level}: {reason}")]
    TowerInvariant { level: usize, reason: &'static str },
}

/// The three values of the sign function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SignValue {
    Negative,
    Zero,
    Positive,
}

impl SignValue {
    pub fn from_ordering(ord: Ordering) -> Self {
        match ord {
            Ordering::Less => SignValue::Negative,
            Ordering::Equal => SignValue::Zero,
            Ordering::Greater => SignValue::Positive,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            SignValue::Negative => -1,
            SignValue::Zero => 0,
            SignValue::Positive => 1,
        }
    }

    pub fn to_ordering(self) -> Ordering {
        self.to_i8().cmp(&0)
    }
}

impl fmt::Display for SignValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_i8())
    }
}

static NEXT_SESSION: AtomicU64 = AtomicU64::new(1);

struct SessionInner {
    id: u64,
    /// Radicand `k` stored at exactly `2^k` coordinates.
    radicands: RefCell<Vec<Vec<Q>>>,
}

/// A shared, monotonically growing quadratic tower.
///
/// Cloning a `Session` yields another handle to the same tower. A session and
/// its values must stay on one thread.
#[derive(Clone)]
pub struct Session {
    inner: Rc<SessionInner>,
}

impl Default for Session {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Debug for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Session")
            .field("id", &self.id())
            .field("depth", &self.depth())
            .finish()
    }
}

impl Session {
    pub fn new() -> Self {
        Session {
            inner: Rc::new(SessionInner {
                id: NEXT_SESSION.fetch_add(1, AtomicOrdering::Relaxed),
                radicands: RefCell::new(Vec::new()),
            }),
        }
    }

    pub fn id(&self) -> u64 {
        self.inner.id
    }

    /// Number of radicals adjoined so far.
    pub fn depth(&self) -> usize {
        self.inner.radicands.borrow().len()
    }

    pub fn same(&self, other: &Session) -> bool {
        Rc::ptr_eq(&self.inner, &other.inner)
    }

    pub(crate) fn radicands(&self) -> Ref<'_, Vec<Vec<Q>>> {
        self.inner.radicands.borrow()
    }

    fn value(&self, coords: Vec<Q>) -> Real {
        Real {
            session: self.clone(),
            coords: coords::trim(coords),
        }
    }

    pub fn zero(&self) -> Real {
        self.value(vec![Q::zero()])
    }

    pub fn one(&self) -> Real {
        self.value(vec![Q::one()])
    }

    pub fn integer(&self, n: impl Into<BigInt>) -> Real {
        self.value(vec![Q::from_integer(n.into())])
    }

    /// Embeds `p/q`. Division is zero-totalized, so `q = 0` gives `0`.
    pub fn rational(&self, p: impl Into<BigInt>, q: impl Into<BigInt>) -> Real {
        let q = q.into();
        if q.is_zero() {
            return self.zero();
        }
        self.value(vec![Q::new(p.into(), q)])
    }

    pub fn from_rational(&self, q: &Rational) -> Real {
        self.value(vec![q.clone()])
    }

    /// The radicand adjoined at `level`, as a value of this session.
    pub fn radicand(&self, level: usize) -> Option<Real> {
        let r = self.radicands().get(level).cloned()?;
        Some(self.value(r))
    }

    /// The adjoined radical `√r_level` itself.
    pub fn radical(&self, level: usize) -> Option<Real> {
        if level >= self.depth() {
            return None;
        }
        let mut e = coords::zeros(1 << (level + 1));
        e[1 << level] = Q::one();
        Some(self.value(e))
    }

    /// Re-verifies that every radicand is positive and not a square in the
    /// field generated by the radicals below it.
    pub fn check_tower(&self) -> Result<(), KernelError> {
        let rads = self.radicands();
        for (level, r) in rads.iter().enumerate() {
            let below = &rads[..level];
            if coords::sign(r, below) != Ordering::Greater {
                return Err(KernelError::TowerInvariant {
                    level,
                    reason: "radicand is not positive",
                });
            }
            if coords::sqrt_in_tower(r, below).is_some() {
                return Err(KernelError::TowerInvariant {
                    level,
                    reason: "radicand is a square one level down",
                });
            }
        }
        Ok(())
    }
}

/// An element of the signed square-root meadow, held as coordinates over
/// its session's tower at minimal depth.
#[derive(Clone)]
pub struct Real {
    session: Session,
    coords: Vec<Q>,
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Real")
            .field("session", &self.session.id())
            .field("coords", &self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

/// Values of different sessions are never equal.
impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.session.same(&other.session) && self.coords == other.coords
    }
}

impl Eq for Real {}

impl Real {
    pub fn session(&self) -> &Session {
        &self.session
    }

    /// Number of tower levels this value actually uses.
    pub fn depth(&self) -> usize {
        coords::depth_of(self.coords.len())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        coords::is_zero(&self.coords)
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        (self.coords.len() == 1).then(|| self.coords[0].clone())
    }

    fn check_session(&self, other: &Real) -> Result<(), KernelError> {
        if self.session.same(&other.session) {
            Ok(())
        } else {
            Err(KernelError::SessionMismatch(self.session.id(), other.session.id()))
        }
    }

    fn binary(
        &self,
        other: &Real,
        op: impl FnOnce(&[Q], &[Q], &[Vec<Q>]) -> Vec<Q>,
    ) -> Result<Real, KernelError> {
        self.check_session(other)?;
        let len = self.coords.len().max(other.coords.len());
        let a = coords::lift(&self.coords, len);
        let b = coords::lift(&other.coords, len);
        let out = {
            let rads = self.session.radicands();
            op(&a, &b, &rads)
        };
        Ok(self.session.value(out))
    }

    pub fn try_add(&self, other: &Real) -> Result<Real, KernelError> {
        self.binary(other, |a, b, _| coords::add(a, b))
    }

    pub fn try_sub(&self, other: &Real) -> Result<Real, KernelError> {
        self.binary(other, |a, b, _| coords::sub(a, b))
    }

    pub fn try_mul(&self, other: &Real) -> Result<Real, KernelError> {
        self.binary(other, coords::mul)
    }

    /// `sign(self − other)`.
    pub fn try_compare(&self, other: &Real) -> Result<SignValue, KernelError> {
        Ok(self.try_sub(other)?.sign())
    }

    pub fn try_eq(&self, other: &Real) -> Result<bool, KernelError> {
        self.check_session(other)?;
        Ok(self.coords == other.coords)
    }

    /// Panics if the values belong to different sessions.
    pub fn compare(&self, other: &Real) -> SignValue {
        self.try_compare(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn neg(&self) -> Real {
        self.session.value(coords::neg(&self.coords))
    }

    /// Zero-totalized multiplicative inverse.
    pub fn inv(&self) -> Real {
        let out = coords::inv(&self.coords, &self.session.radicands());
        self.session.value(out)
    }

    pub fn sign(&self) -> SignValue {
        SignValue::from_ordering(coords::sign(&self.coords, &self.session.radicands()))
    }

    /// The signed square root: the non-negative root for `x ≥ 0` and
    /// `−√(−x)` for `x < 0`. Adjoins a new radical when the tower has no root.
    pub fn ssqrt(&self) -> Real {
        let sigma = self.sign();
        if sigma == SignValue::Zero {
            return self.session.zero();
        }
        let magnitude = match sigma {
            SignValue::Negative => coords::neg(&self.coords),
            _ => self.coords.clone(),
        };
        let found = {
            let rads = self.session.radicands();
            let lifted = coords::lift(&magnitude, 1 << rads.len());
            coords::sqrt_in_tower(&lifted, &rads).map(|w| {
                if coords::sign(&w, &rads) == Ordering::Less {
                    coords::neg(&w)
                } else {
                    w
                }
            })
        };
        let root = found.unwrap_or_else(|| {
            let mut rads = self.session.inner.radicands.borrow_mut();
            let level = rads.len();
            // Rational radicands are reduced to square-free integers, so
            // `√8` is adjoined as `2·√2`.
            let (coeff, radicand) = match magnitude.as_slice() {
                [q] => {
                    let (c, m) = coords::square_part(q);
                    (c, vec![Q::from_integer(m)])
                }
                _ => (Q::one(), magnitude.clone()),
            };
            rads.push(coords::lift(&radicand, 1 << level));
            let mut e = coords::zeros(1 << (level + 1));
            e[1 << level] = coeff;
            e
        });
        let root = self.session.value(root);
        match sigma {
            SignValue::Negative => root.neg(),
            _ => root,
        }
    }

    /// `1_x = x · x⁻¹`, which is `0` or `1`.
    pub fn pseudo_unit(&self) -> Real {
        self * &self.inv()
    }

    /// `0_x = 1 − 1_x`.
    pub fn pseudo_zero(&self) -> Real {
        &self.session.one() - &self.pseudo_unit()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            /// Panics if the operands belong to different sessions.
            fn $method(self, rhs: &Real) -> Real {
                self.$inner(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::neg(self)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::neg(&self)
    }
}
