//! Terms over the signature `(0, 1, +, ·, −, ⁻¹, s, √)`, with variables,
//! rational numerals and a context hole.
//!
//! `re` and `conj` are carried as well so the complex-extension axioms can be
//! written in the same language; over the reals both are the identity.

mod eval;
mod gen;
mod parse;
mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::kernel::Rational;

pub use eval::{eval, eval_complex, eval_exact, eval_mod_p, EvalError, ExactModel, Interpretation};
pub use gen::{gen_context, gen_random_term, gen_term, GenError, Signature, Symbol};
pub use parse::{parse, ParseError};
pub use render::render;

/// A variable assignment.
pub type Valuation<V> = BTreeMap<String, V>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    One,
    /// A positive rational numeral other than `1`.
    Num(Rational),
    Var(String),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Inv(Box<Term>),
    Sign(Box<Term>),
    Sqrt(Box<Term>),
    Re(Box<Term>),
    Conj(Box<Term>),
    Hole,
}

// Smart constructors named after the operations they build.
#[allow(clippy::should_implement_trait)]
impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    /// Canonical numeral: `0` and `1` become constructors, negatives are
    /// wrapped in `Neg`.
    pub fn num(q: Rational) -> Term {
        if q.is_zero() {
            Term::Zero
        } else if q.is_one() {
            Term::One
        } else if q.is_negative() {
            Term::Neg(Box::new(Term::num(-q)))
        } else {
            Term::Num(q)
        }
    }

    pub fn int(n: i64) -> Term {
        Term::num(Rational::from_integer(BigInt::from(n)))
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    /// `a − b`, i.e. `a + (−b)`.
    pub fn sub(a: Term, b: Term) -> Term {
        Term::add(a, Term::neg(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Term) -> Term {
        Term::Neg(Box::new(a))
    }

    pub fn inv(a: Term) -> Term {
        Term::Inv(Box::new(a))
    }

    pub fn sign(a: Term) -> Term {
        Term::Sign(Box::new(a))
    }

    pub fn sqrt(a: Term) -> Term {
        Term::Sqrt(Box::new(a))
    }

    /// `1_t = t · t⁻¹`.
    pub fn pseudo_unit(t: Term) -> Term {
        Term::mul(t.clone(), Term::inv(t))
    }

    /// `0_t = 1 − 1_t`.
    pub fn pseudo_zero(t: Term) -> Term {
        Term::sub(Term::One, Term::pseudo_unit(t))
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Zero | Term::One | Term::Num(_) | Term::Var(_) | Term::Hole => vec![],
            Term::Add(a, b) | Term::Mul(a, b) => vec![a, b],
            Term::Neg(a)
            | Term::Inv(a)
            | Term::Sign(a)
            | Term::Sqrt(a)
            | Term::Re(a)
            | Term::Conj(a) => vec![a],
        }
    }

    /// Rebuilds this node with children transformed by `f`.
    pub fn map_children(&self, mut f: impl FnMut(&Term) -> Term) -> Term {
        let b = |t: Term| Box::new(t);
        match self {
            Term::Zero | Term::One | Term::Num(_) | Term::Var(_) | Term::Hole => self.clone(),
            Term::Add(x, y) => Term::Add(b(f(x)), b(f(y))),
            Term::Mul(x, y) => Term::Mul(b(f(x)), b(f(y))),
            Term::Neg(x) => Term::Neg(b(f(x))),
            Term::Inv(x) => Term::Inv(b(f(x))),
            Term::Sign(x) => Term::Sign(b(f(x))),
            Term::Sqrt(x) => Term::Sqrt(b(f(x))),
            Term::Re(x) => Term::Re(b(f(x))),
            Term::Conj(x) => Term::Conj(b(f(x))),
        }
    }

    /// Node count.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        if let Term::Var(name) = self {
            out.insert(name.clone());
        }
        for c in self.children() {
            c.collect_vars(out);
        }
    }

    pub fn is_closed(&self) -> bool {
        !self.any(&|t| matches!(t, Term::Var(_) | Term::Hole))
    }

    pub fn holes(&self) -> usize {
        usize::from(matches!(self, Term::Hole)) + self.children().iter().map(|c| c.holes()).sum::<usize>()
    }

    /// True if `pred` holds for this node or any descendant.
    pub fn any(&self, pred: &dyn Fn(&Term) -> bool) -> bool {
        pred(self) || self.children().iter().any(|c| c.any(pred))
    }

    /// Replaces every occurrence of variable `var` by `replacement`.
    pub fn substitute(&self, var: &str, replacement: &Term) -> Term {
        match self {
            Term::Var(name) if name == var => replacement.clone(),
            _ => self.map_children(|c| c.substitute(var, replacement)),
        }
    }

    /// Simultaneous substitution of several variables.
    pub fn substitute_all(&self, map: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Var(name) => map.get(name).cloned().unwrap_or_else(|| self.clone()),
            _ => self.map_children(|c| c.substitute_all(map)),
        }
    }

    /// Plugs `plug` into every hole of this context.
    pub fn fill(&self, plug: &Term) -> Term {
        match self {
            Term::Hole => plug.clone(),
            _ => self.map_children(|c| c.fill(plug)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}
