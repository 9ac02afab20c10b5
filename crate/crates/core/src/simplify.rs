//! Closed-term normalization by evaluation, and a small sound rewrite
//! system for open terms.
//!
//! Closed terms are decided by the kernel: evaluate in a fresh session and
//! read back the canonical tower form. Open terms only get the fixed rule
//! list below, which never claims completeness.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::kernel::{Session, SignValue};
use crate::term::{eval_exact, parse, EvalError, Term, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplifyError {
    #[error("term has free variables: {}", .0.join(", "))]
    OpenTerm(Vec<String>),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn closed(t: &Term) -> Result<(), SimplifyError> {
    let vars = t.free_vars();
    if !vars.is_empty() {
        return Err(SimplifyError::OpenTerm(vars.into_iter().collect()));
    }
    if t.holes() > 0 {
        return Err(EvalError::Hole.into());
    }
    Ok(())
}

/// The canonical form of a closed term: a sum of rational multiples of
/// products of radicals. Idempotent, and evaluates to the same value.
pub fn normalize_closed(t: &Term) -> Result<Term, SimplifyError> {
    closed(t)?;
    let session = Session::new();
    Ok(eval_exact(t, &Valuation::new(), &session)?.to_term())
}

/// Equality of closed terms in the exact model.
pub fn decide_closed_eq(t: &Term, u: &Term) -> Result<bool, SimplifyError> {
    closed(t)?;
    closed(u)?;
    let session = Session::new();
    let none = Valuation::new();
    Ok(eval_exact(t, &none, &session)? == eval_exact(u, &none, &session)?)
}

pub fn sign_of_closed(t: &Term) -> Result<SignValue, SimplifyError> {
    closed(t)?;
    let session = Session::new();
    Ok(eval_exact(t, &Valuation::new(), &session)?.sign())
}

/// A directed instance of a valid equation. Variables in `lhs` match any
/// subterm; a repeated variable must match equal subterms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub name: &'static str,
    pub lhs: Term,
    pub rhs: Term,
    pub note: &'static str,
}

const RULE_TEXT: &[(&str, &str, &str, &str)] = &[
    ("inv_inv", "inv(inv(x))", "x", "involution, removes two inverses"),
    ("inv_zero", "inv(0)", "0", "totalized inverse at zero"),
    ("inv_one", "inv(1)", "1", "inverse of one"),
    ("sign_sign", "s(s(x))", "s(x)", "sign is idempotent"),
    ("sign_zero", "s(0)", "0", "sign of zero"),
    ("sign_one", "s(1)", "1", "sign of one"),
    ("sign_neg", "s(-x)", "-s(x)", "moves negation outward"),
    ("sign_mul", "s(x * y)", "s(x) * s(y)", "flattens; the reverse is never applied"),
    ("sqrt_sign", "sqrt(s(x))", "s(x)", "root of a sign"),
    ("sqrt_neg", "sqrt(-x)", "-sqrt(x)", "signed root is odd; moves negation outward"),
    ("sqrt_signed_square", "sqrt(x * x * s(x))", "x", "root of a signed square"),
    ("sqrt_zero", "sqrt(0)", "0", "root of zero"),
    ("sqrt_one", "sqrt(1)", "1", "root of one"),
    ("zero_mul", "0 * x", "0", "absorption"),
    ("mul_zero", "x * 0", "0", "absorption"),
    ("one_mul", "1 * x", "x", "unit"),
    ("mul_one", "x * 1", "x", "unit"),
    ("zero_add", "0 + x", "x", "unit"),
    ("add_zero", "x + 0", "x", "unit"),
    ("neg_neg", "-(-x)", "x", "double negation"),
    ("neg_zero", "-0", "0", "negation of zero"),
];

/// The fixed rule list, in priority order.
pub fn rules() -> &'static [RewriteRule] {
    static RULES: OnceLock<Vec<RewriteRule>> = OnceLock::new();
    RULES.get_or_init(|| {
        RULE_TEXT
            .iter()
            .map(|&(name, l, r, note)| RewriteRule {
                name,
                lhs: parse(l).expect("fixed rule"),
                rhs: parse(r).expect("fixed rule"),
                note,
            })
            .collect()
    })
}

fn matches<'t>(pattern: &Term, t: &'t Term, binding: &mut BTreeMap<String, &'t Term>) -> bool {
    match (pattern, t) {
        (Term::Var(name), _) => match binding.get(name) {
            Some(bound) => *bound == t,
            None => {
                binding.insert(name.clone(), t);
                true
            }
        },
        (Term::Zero, Term::Zero) | (Term::One, Term::One) | (Term::Hole, Term::Hole) => true,
        (Term::Num(a), Term::Num(b)) => a == b,
        (Term::Add(a, b), Term::Add(c, d)) | (Term::Mul(a, b), Term::Mul(c, d)) => {
            matches(a, c, binding) && matches(b, d, binding)
        }
        (Term::Neg(a), Term::Neg(b))
        | (Term::Inv(a), Term::Inv(b))
        | (Term::Sign(a), Term::Sign(b))
        | (Term::Sqrt(a), Term::Sqrt(b))
        | (Term::Re(a), Term::Re(b))
        | (Term::Conj(a), Term::Conj(b)) => matches(a, b, binding),
        _ => false,
    }
}

impl RewriteRule {
    /// Rewrites `t` at its root, if the rule applies there.
    pub fn apply(&self, t: &Term) -> Option<Term> {
        let mut binding = BTreeMap::new();
        if !matches(&self.lhs, t, &mut binding) {
            return None;
        }
        let owned = binding.into_iter().map(|(k, v)| (k, v.clone())).collect();
        Some(self.rhs.substitute_all(&owned))
    }
}

/// One rewrite: the rule used and the whole term afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: &'static str,
    pub term: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rewritten {
    pub term: Term,
    pub steps: usize,
    /// The step budget ran out before a normal form was reached.
    pub truncated: bool,
    pub trace: Vec<Step>,
}

/// Rewrites the leftmost-innermost redex once.
fn step(t: &Term) -> Option<(&'static str, Term)> {
    let children = t.children();
    for (i, c) in children.iter().enumerate() {
        if let Some((rule, new_child)) = step(c) {
            let mut idx = 0;
            let rebuilt = t.map_children(|child| {
                let out = if idx == i { new_child.clone() } else { child.clone() };
                idx += 1;
                out
            });
            return Some((rule, rebuilt));
        }
    }
    rules()
        .iter()
        .find_map(|r| r.apply(t).map(|out| (r.name, out)))
}

/// Applies [`rules`] leftmost-innermost until none applies or `max_steps`
/// rewrites have been made.
pub fn rewrite_simplify(t: &Term, max_steps: usize) -> Rewritten {
    let mut current = t.clone();
    let mut trace = Vec::new();
    while trace.len() < max_steps {
        match step(&current) {
            Some((rule, next)) => {
                trace.push(Step {
                    rule,
                    term: next.clone(),
                });
                current = next;
            }
            None => {
                return Rewritten {
                    term: current,
                    steps: trace.len(),
                    truncated: false,
                    trace,
                }
            }
        }
    }
    let truncated = step(&current).is_some();
    Rewritten {
        term: current,
        steps: trace.len(),
        truncated,
        trace,
    }
}
