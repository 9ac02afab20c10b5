//! Canonical closed-term form of a value: a sum of `q * sqrt(R1) * ...`
//! monomials, one per non-zero tower coordinate. Radicals inside a monomial
//! are ordered by (radicand depth, rendered radicand); monomials are ordered
//! by their radical lists, with the rational part first.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::coords::{self, Q};
use super::Real;
use crate::term::{render, Term};

type Key = (usize, String);

struct Radical {
    term: Term,
    key: Key,
}

/// `|coeff| * sqrt(..) * ...` together with its ordering key.
fn monomial(abs_coeff: &Q, mut factors: Vec<&Radical>) -> (Vec<Key>, Term) {
    factors.sort_by(|a, b| a.key.cmp(&b.key));
    let keys = factors.iter().map(|r| r.key.clone()).collect();
    let product = factors.iter().map(|r| r.term.clone()).reduce(Term::mul);
    let term = match product {
        None => Term::num(abs_coeff.clone()),
        Some(p) if abs_coeff.is_one() => p,
        Some(p) => Term::mul(Term::num(abs_coeff.clone()), p),
    };
    (keys, term)
}

fn sum_term(coords: &[Q], radicals: &[Radical]) -> Term {
    let mut monomials: Vec<(Vec<Key>, bool, Term)> = coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(idx, c)| {
            let factors = (0..radicals.len())
                .filter(|bit| idx & (1 << bit) != 0)
                .map(|bit| &radicals[bit])
                .collect();
            let (keys, t) = monomial(&c.abs(), factors);
            (keys, c.is_negative(), t)
        })
        .collect();
    monomials.sort_by(|a, b| a.0.cmp(&b.0));
    let mut iter = monomials.into_iter();
    let Some((_, negative, first)) = iter.next() else {
        return Term::Zero;
    };
    // A leading minus goes on the first factor: `-2 * sqrt(2)`, `-sqrt(2) * sqrt(3)`.
    let first = match (negative, first) {
        (false, t) => t,
        (true, Term::Mul(a, b)) => Term::mul(Term::neg(*a), *b),
        (true, t) => Term::neg(t),
    };
    iter.fold(first, |acc, (_, negative, t)| {
        if negative {
            Term::sub(acc, t)
        } else {
            Term::add(acc, t)
        }
    })
}

impl Real {
    /// The canonical closed term denoting this value. Equal values of one
    /// session always produce the same term.
    pub fn to_term(&self) -> Term {
        let rads = self.session.radicands();
        let mut radicals: Vec<Radical> = Vec::with_capacity(self.depth());
        for r in rads.iter().take(self.depth()) {
            let trimmed = coords::trim(r.clone());
            let radicand = sum_term(&trimmed, &radicals);
            let key = (coords::depth_of(trimmed.len()), render(&radicand));
            radicals.push(Radical {
                term: Term::sqrt(radicand),
                key,
            });
        }
        sum_term(&self.coords, &radicals)
    }

    pub fn canonical_string(&self) -> String {
        render(&self.to_term())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}
