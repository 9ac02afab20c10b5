use thiserror::Error;

use super::{Term, Valuation};
use crate::complex::{Complex, ComplexModel};
use crate::finite::{FiniteModel, PrimeField, Residue};
use crate::kernel::{KernelError, Rational, Real, Session};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable {0:?}")]
    UnboundVariable(String),
    #[error("cannot evaluate a context hole")]
    Hole,
    #[error("symbol {symbol} is not supported in {model}")]
    Unsupported { symbol: &'static str, model: String },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// A model of the term signature. Each constructor maps to one operation.
pub trait Interpretation {
    type Value: Clone;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn num(&self, q: &Rational) -> Result<Self::Value, EvalError>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError>;
    fn neg(&self, a: &Self::Value) -> Result<Self::Value, EvalError>;
    fn inv(&self, a: &Self::Value) -> Result<Self::Value, EvalError>;
    fn sign(&self, a: &Self::Value) -> Result<Self::Value, EvalError>;
    fn sqrt(&self, a: &Self::Value) -> Result<Self::Value, EvalError>;
    fn re(&self, a: &Self::Value) -> Result<Self::Value, EvalError>;
    fn conj(&self, a: &Self::Value) -> Result<Self::Value, EvalError>;

    fn unsupported(&self, symbol: &'static str) -> EvalError {
        EvalError::Unsupported {
            symbol,
            model: self.name(),
        }
    }
}

/// Homomorphic evaluation of `term` in `model`.
pub fn eval<M: Interpretation>(
    term: &Term,
    val: &Valuation<M::Value>,
    model: &M,
) -> Result<M::Value, EvalError> {
    let go = |t: &Term| eval(t, val, model);
    match term {
        Term::Zero => Ok(model.zero()),
        Term::One => Ok(model.one()),
        Term::Num(q) => model.num(q),
        Term::Var(name) => val
            .get(name)
            .cloned()
            .ok_or_else(|| EvalError::UnboundVariable(name.clone())),
        Term::Hole => Err(EvalError::Hole),
        Term::Add(a, b) => model.add(&go(a)?, &go(b)?),
        Term::Mul(a, b) => model.mul(&go(a)?, &go(b)?),
        Term::Neg(a) => model.neg(&go(a)?),
        Term::Inv(a) => model.inv(&go(a)?),
        Term::Sign(a) => model.sign(&go(a)?),
        Term::Sqrt(a) => model.sqrt(&go(a)?),
        Term::Re(a) => model.re(&go(a)?),
        Term::Conj(a) => model.conj(&go(a)?),
    }
}

/// The signed square-root meadow over `Q`, in one session.
///
/// Real numbers are their own real part and conjugate.
pub struct ExactModel<'a> {
    pub session: &'a Session,
}

impl Interpretation for ExactModel<'_> {
    type Value = Real;

    fn name(&self) -> String {
        "exact".into()
    }
    fn zero(&self) -> Real {
        self.session.zero()
    }
    fn one(&self) -> Real {
        self.session.one()
    }
    fn num(&self, q: &Rational) -> Result<Real, EvalError> {
        Ok(self.session.from_rational(q))
    }
    fn add(&self, a: &Real, b: &Real) -> Result<Real, EvalError> {
        Ok(a.try_add(b)?)
    }
    fn mul(&self, a: &Real, b: &Real) -> Result<Real, EvalError> {
        Ok(a.try_mul(b)?)
    }
    fn neg(&self, a: &Real) -> Result<Real, EvalError> {
        Ok(a.neg())
    }
    fn inv(&self, a: &Real) -> Result<Real, EvalError> {
        Ok(a.inv())
    }
    fn sign(&self, a: &Real) -> Result<Real, EvalError> {
        Ok(self.session.integer(a.sign().to_i8()))
    }
    fn sqrt(&self, a: &Real) -> Result<Real, EvalError> {
        Ok(a.ssqrt())
    }
    fn re(&self, a: &Real) -> Result<Real, EvalError> {
        Ok(a.clone())
    }
    fn conj(&self, a: &Real) -> Result<Real, EvalError> {
        Ok(a.clone())
    }
}

pub fn eval_exact(term: &Term, val: &Valuation<Real>, session: &Session) -> Result<Real, EvalError> {
    eval(term, val, &ExactModel { session })
}

/// Evaluation in the zero-totalized prime field. Only meadow symbols (and
/// numerals) are supported; `s`, `sqrt`, `re` and `conj` are rejected.
pub fn eval_mod_p(
    term: &Term,
    val: &Valuation<Residue>,
    field: &PrimeField,
) -> Result<Residue, EvalError> {
    eval(term, val, &FiniteModel { field })
}

pub fn eval_complex(
    term: &Term,
    val: &Valuation<Complex>,
    session: &Session,
) -> Result<Complex, EvalError> {
    eval(term, val, &ComplexModel { session })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse;

    fn exact(src: &str, vars: &[(&str, i64)]) -> Result<Real, EvalError> {
        let s = Session::new();
        let val = vars
            .iter()
            .map(|(k, v)| (k.to_string(), s.integer(*v)))
            .collect();
        eval_exact(&parse(src).unwrap(), &val, &s)
    }

    #[test]
    fn sign_of_negative() {
        let v = exact("s(x)", &[("x", -7)]).unwrap();
        assert_eq!(v.to_rational(), Some(Rational::from_integer((-1).into())));
    }

    #[test]
    fn signed_root_of_signed_square() {
        let v = exact("sqrt(x*x*s(x))", &[("x", -3)]).unwrap();
        assert_eq!(v.to_rational(), Some(Rational::from_integer((-3).into())));
    }

    #[test]
    fn closed_quotient_is_one() {
        let v = exact("(1+1+1)/(1+1+1)", &[]).unwrap();
        assert_eq!(v.to_rational(), Some(Rational::from_integer(1.into())));
        assert!(exact("1/0", &[]).unwrap().is_zero());
    }

    #[test]
    fn errors() {
        assert_eq!(exact("x + y", &[("x", 1)]).unwrap_err(), EvalError::UnboundVariable("y".into()));
        assert_eq!(exact("sqrt([])", &[]).unwrap_err(), EvalError::Hole);
        let a = Session::new();
        let b = Session::new();
        let val = [("x".to_string(), a.one())].into_iter().collect();
        assert!(matches!(
            eval_exact(&parse("x + 1").unwrap(), &val, &b),
            Err(EvalError::Kernel(KernelError::SessionMismatch(..)))
        ));
    }

    #[test]
    fn finite_evaluation() {
        let f3 = PrimeField::new(3).unwrap();
        let none = Valuation::new();
        let v = eval_mod_p(&parse("(1+1+1)/(1+1+1)").unwrap(), &none, &f3).unwrap();
        assert_eq!(v.value(), 0);

        let f5 = PrimeField::new(5).unwrap();
        let val = [("x".to_string(), f5.residue(2))].into_iter().collect();
        assert_eq!(eval_mod_p(&parse("x * inv(x)").unwrap(), &val, &f5).unwrap().value(), 1);

        let f7 = PrimeField::new(7).unwrap();
        let val = [("x".to_string(), f7.residue(3))].into_iter().collect();
        assert!(matches!(
            eval_mod_p(&parse("s(x)").unwrap(), &val, &f7),
            Err(EvalError::Unsupported { symbol: "s", .. })
        ));
    }
}
