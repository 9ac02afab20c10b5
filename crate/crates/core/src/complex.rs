//! Complex values over the signed square-root meadow.
//!
//! Sign and root look only at the real part: `s(x) = s(Re x)` and
//! `√x = √(Re x)`. The inverse is the conjugate over the squared modulus,
//! totalized so that the inverse of zero is zero.

use std::fmt;

use crate::kernel::{KernelError, Rational, Real, Session, SignValue};
use crate::term::{EvalError, Interpretation};

#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    re: Real,
    im: Real,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Serialized as `complex(<re>, <im>)` with canonical real terms.
impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "complex({}, {})", self.re, self.im)
    }
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Result<Complex, KernelError> {
        if !re.session().same(im.session()) {
            return Err(KernelError::SessionMismatch(re.session().id(), im.session().id()));
        }
        Ok(Complex { re, im })
    }

    pub fn from_real(re: Real) -> Complex {
        let im = re.session().zero();
        Complex { re, im }
    }

    pub fn re(&self) -> &Real {
        &self.re
    }

    pub fn im(&self) -> &Real {
        &self.im
    }

    pub fn session(&self) -> &Session {
        self.re.session()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Complex {
        Complex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    /// The real part as a complex value with zero imaginary part.
    pub fn re_part(&self) -> Complex {
        Complex::from_real(self.re.clone())
    }

    pub fn neg(&self) -> Complex {
        Complex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn try_add(&self, other: &Complex) -> Result<Complex, KernelError> {
        Ok(Complex {
            re: self.re.try_add(&other.re)?,
            im: self.im.try_add(&other.im)?,
        })
    }

    pub fn try_mul(&self, other: &Complex) -> Result<Complex, KernelError> {
        let (a, b, c, d) = (&self.re, &self.im, &other.re, &other.im);
        Ok(Complex {
            re: a.try_mul(c)?.try_sub(&b.try_mul(d)?)?,
            im: a.try_mul(d)?.try_add(&b.try_mul(c)?)?,
        })
    }

    /// Zero-totalized inverse: `conj(x) / (re² + im²)`, and `0` at `0`.
    pub fn inv(&self) -> Complex {
        let modulus = &(&self.re * &self.re) + &(&self.im * &self.im);
        let k = modulus.inv();
        Complex {
            re: &self.re * &k,
            im: &self.im.neg() * &k,
        }
    }

    pub fn sign(&self) -> SignValue {
        self.re.sign()
    }

    pub fn ssqrt(&self) -> Complex {
        Complex::from_real(self.re.ssqrt())
    }
}

/// Complex values whose components live in `session`.
pub struct ComplexModel<'a> {
    pub session: &'a Session,
}

impl Interpretation for ComplexModel<'_> {
    type Value = Complex;

    fn name(&self) -> String {
        "complex".into()
    }
    fn zero(&self) -> Complex {
        Complex::from_real(self.session.zero())
    }
    fn one(&self) -> Complex {
        Complex::from_real(self.session.one())
    }
    fn num(&self, q: &Rational) -> Result<Complex, EvalError> {
        Ok(Complex::from_real(self.session.from_rational(q)))
    }
    fn add(&self, a: &Complex, b: &Complex) -> Result<Complex, EvalError> {
        Ok(a.try_add(b)?)
    }
    fn mul(&self, a: &Complex, b: &Complex) -> Result<Complex, EvalError> {
        Ok(a.try_mul(b)?)
    }
    fn neg(&self, a: &Complex) -> Result<Complex, EvalError> {
        Ok(a.neg())
    }
    fn inv(&self, a: &Complex) -> Result<Complex, EvalError> {
        Ok(a.inv())
    }
    fn sign(&self, a: &Complex) -> Result<Complex, EvalError> {
        Ok(Complex::from_real(self.session.integer(a.sign().to_i8())))
    }
    fn sqrt(&self, a: &Complex) -> Result<Complex, EvalError> {
        Ok(a.ssqrt())
    }
    fn re(&self, a: &Complex) -> Result<Complex, EvalError> {
        Ok(a.re_part())
    }
    fn conj(&self, a: &Complex) -> Result<Complex, EvalError> {
        Ok(a.conj())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &Session, re: i64, im: i64) -> Complex {
        Complex::new(s.integer(re), s.integer(im)).unwrap()
    }

    #[test]
    fn conjugate_and_i_squared() {
        let s = Session::new();
        assert_eq!(c(&s, 1, 2).conj(), c(&s, 1, -2));
        let i = c(&s, 0, 1);
        assert_eq!(i.try_mul(&i).unwrap(), c(&s, -1, 0));
    }

    #[test]
    fn inverse_is_total() {
        let s = Session::new();
        assert_eq!(c(&s, 0, 0).inv(), c(&s, 0, 0));
        assert_eq!(c(&s, 0, 1).inv(), c(&s, 0, -1));
        let x = c(&s, 3, 4);
        let xi = x.inv();
        assert_eq!(xi, Complex::new(s.rational(3, 25), s.rational(-4, 25)).unwrap());
        assert_eq!(x.try_mul(&xi).unwrap(), c(&s, 1, 0));
    }

    #[test]
    fn sign_and_root_use_real_part() {
        let s = Session::new();
        assert_eq!(c(&s, -2, 7).sign(), SignValue::Negative);
        assert_eq!(c(&s, 4, -9).ssqrt(), c(&s, 2, 0));
        assert_eq!(c(&s, 0, 5).ssqrt(), c(&s, 0, 0));
    }

    #[test]
    fn real_part_is_half_sum_with_conjugate() {
        let s = Session::new();
        let x = Complex::new(s.integer(2).ssqrt(), s.rational(-7, 3)).unwrap();
        let half = Complex::from_real(s.rational(1, 2));
        let sum = x.try_add(&x.conj()).unwrap();
        assert_eq!(half.try_mul(&sum).unwrap(), x.re_part());
    }

    #[test]
    fn session_mismatch() {
        let a = Session::new();
        let b = Session::new();
        assert!(Complex::new(a.one(), b.one()).is_err());
        assert!(c(&a, 1, 1).try_add(&c(&b, 1, 1)).is_err());
    }

    #[test]
    fn serialization() {
        let s = Session::new();
        let x = Complex::new(s.integer(2).ssqrt(), s.integer(-1)).unwrap();
        assert_eq!(x.to_string(), "complex(sqrt(2), -1)");
    }
}
