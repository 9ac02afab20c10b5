//! Seeded random terms for property checks.
//!
//! Constructor weights: `0`:1, `1`:2, variable:3, `+`:3, `·`:3, `−`:1,
//! `⁻¹`:2, `s`:1, `√`:2. At remaining fuel `f` a leaf is forced with
//! probability `2/(f+1)`, so leaves become likelier as fuel runs out; the
//! node count never exceeds the fuel given.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Zero,
    One,
    Var,
    Add,
    Mul,
    Neg,
    Inv,
    Sign,
    Sqrt,
}

impl Symbol {
    fn weight(self) -> u32 {
        match self {
            Symbol::Zero | Symbol::Neg | Symbol::Sign => 1,
            Symbol::One | Symbol::Inv | Symbol::Sqrt => 2,
            Symbol::Var | Symbol::Add | Symbol::Mul => 3,
        }
    }

    fn arity(self) -> usize {
        match self {
            Symbol::Zero | Symbol::One | Symbol::Var => 0,
            Symbol::Neg | Symbol::Inv | Symbol::Sign | Symbol::Sqrt => 1,
            Symbol::Add | Symbol::Mul => 2,
        }
    }

    fn build(self, mut args: Vec<Term>, vars: &[String], rng: &mut impl Rng) -> Term {
        let mut next = || args.remove(0);
        match self {
            Symbol::Zero => Term::Zero,
            Symbol::One => Term::One,
            Symbol::Var => Term::Var(vars.choose(rng).expect("non-empty pool").clone()),
            Symbol::Add => {
                let a = next();
                Term::add(a, next())
            }
            Symbol::Mul => {
                let a = next();
                Term::mul(a, next())
            }
            Symbol::Neg => Term::neg(next()),
            Symbol::Inv => Term::inv(next()),
            Symbol::Sign => Term::sign(next()),
            Symbol::Sqrt => Term::sqrt(next()),
        }
    }
}

/// A subset of the signature to draw constructors from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

impl Signature {
    pub fn new(symbols: impl IntoIterator<Item = Symbol>) -> Self {
        let mut symbols: Vec<Symbol> = symbols.into_iter().collect();
        symbols.sort();
        symbols.dedup();
        Signature { symbols }
    }

    /// `(0, 1, +, ·, −, ⁻¹)` plus variables.
    pub fn meadow() -> Self {
        use Symbol::*;
        Self::new([Zero, One, Var, Add, Mul, Neg, Inv])
    }

    /// The meadow signature with sign.
    pub fn signed() -> Self {
        let mut s = Self::meadow();
        s.symbols.push(Symbol::Sign);
        Self::new(s.symbols)
    }

    /// The meadow signature with sign and signed square root.
    pub fn roots() -> Self {
        let mut s = Self::signed();
        s.symbols.push(Symbol::Sqrt);
        Self::new(s.symbols)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("signature subset is empty")]
    EmptySignature,
    #[error("signature subset has no usable leaf (constant, or variable with a non-empty pool)")]
    NoLeaves,
    #[error("maximum size must be at least 1")]
    ZeroSize,
}

fn pick(candidates: &[Symbol], rng: &mut impl Rng) -> Symbol {
    let total: u32 = candidates.iter().map(|s| s.weight()).sum();
    let mut roll = rng.gen_range(0..total);
    for &s in candidates {
        if roll < s.weight() {
            return s;
        }
        roll -= s.weight();
    }
    unreachable!("roll below total weight")
}

struct Generator<'a> {
    leaves: Vec<Symbol>,
    operators: Vec<Symbol>,
    vars: &'a [String],
}

impl Generator<'_> {
    fn new<'a>(sig: &Signature, vars: &'a [String]) -> Result<Generator<'a>, GenError> {
        if sig.symbols.is_empty() {
            return Err(GenError::EmptySignature);
        }
        let leaves: Vec<Symbol> = sig
            .symbols
            .iter()
            .copied()
            .filter(|s| s.arity() == 0 && (*s != Symbol::Var || !vars.is_empty()))
            .collect();
        if leaves.is_empty() {
            return Err(GenError::NoLeaves);
        }
        let operators = sig.symbols.iter().copied().filter(|s| s.arity() > 0).collect();
        Ok(Generator {
            leaves,
            operators,
            vars,
        })
    }

    fn term(&self, fuel: usize, rng: &mut impl Rng) -> Term {
        let fitting: Vec<Symbol> = self
            .operators
            .iter()
            .copied()
            .filter(|s| s.arity() < fuel)
            .collect();
        let leaf = fitting.is_empty() || rng.gen_bool(2.0 / (fuel as f64 + 1.0));
        if leaf {
            let s = pick(&self.leaves, rng);
            return s.build(vec![], self.vars, rng);
        }
        let op = pick(&fitting, rng);
        let args = match op.arity() {
            1 => vec![self.term(fuel - 1, rng)],
            _ => {
                let left = rng.gen_range(1..=fuel - 2);
                let a = self.term(left, rng);
                let b = self.term(fuel - 1 - left, rng);
                vec![a, b]
            }
        };
        op.build(args, self.vars, rng)
    }
}

/// Draws a term of at most `max_size` nodes.
pub fn gen_term(
    rng: &mut impl Rng,
    max_size: usize,
    sig: &Signature,
    vars: &[String],
) -> Result<Term, GenError> {
    if max_size == 0 {
        return Err(GenError::ZeroSize);
    }
    Ok(Generator::new(sig, vars)?.term(max_size, rng))
}

/// Deterministic for a fixed `seed`.
pub fn gen_random_term(
    seed: u64,
    max_size: usize,
    sig: &Signature,
    vars: &[String],
) -> Result<Term, GenError> {
    gen_term(&mut ChaCha8Rng::seed_from_u64(seed), max_size, sig, vars)
}

/// A context with exactly one hole: `depth` random wrappers from the
/// signature's operators, with binary siblings of at most `sibling_size`
/// nodes placed on a random side.
pub fn gen_context(
    rng: &mut impl Rng,
    depth: usize,
    sibling_size: usize,
    sig: &Signature,
    vars: &[String],
) -> Result<Term, GenError> {
    let g = Generator::new(sig, vars)?;
    let sibling_size = sibling_size.max(1);
    let mut ctx = Term::Hole;
    for _ in 0..depth {
        if g.operators.is_empty() {
            break;
        }
        let op = pick(&g.operators, rng);
        ctx = match op.arity() {
            1 => op.build(vec![ctx], vars, rng),
            _ => {
                let sibling = g.term(sibling_size, rng);
                if rng.gen_bool(0.5) {
                    op.build(vec![ctx, sibling], vars, rng)
                } else {
                    op.build(vec![sibling, ctx], vars, rng)
                }
            }
        };
    }
    Ok(ctx)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn pool(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn symbol_of(t: &Term) -> Symbol {
        match t {
            Term::Zero => Symbol::Zero,
            Term::One => Symbol::One,
            Term::Var(_) => Symbol::Var,
            Term::Add(..) => Symbol::Add,
            Term::Mul(..) => Symbol::Mul,
            Term::Neg(_) => Symbol::Neg,
            Term::Inv(_) => Symbol::Inv,
            Term::Sign(_) => Symbol::Sign,
            Term::Sqrt(_) => Symbol::Sqrt,
            other => panic!("unexpected node {other:?}"),
        }
    }

    fn collect(t: &Term, out: &mut BTreeSet<Symbol>) {
        out.insert(symbol_of(t));
        for c in t.children() {
            collect(c, out);
        }
    }

    #[test]
    fn size_one_forces_leaf() {
        for seed in 0..50 {
            let t = gen_random_term(seed, 1, &Signature::meadow(), &pool(&["x"])).unwrap();
            assert!(matches!(t, Term::Zero | Term::One | Term::Var(_)), "{t:?}");
        }
    }

    #[test]
    fn deterministic_and_bounded() {
        let sig = Signature::roots();
        let vars = pool(&["x", "y"]);
        for seed in 0..100 {
            let a = gen_random_term(seed, 12, &sig, &vars).unwrap();
            let b = gen_random_term(seed, 12, &sig, &vars).unwrap();
            assert_eq!(a, b);
            assert!(a.size() <= 12);
        }
    }

    #[test]
    fn every_constructor_appears() {
        let sig = Signature::roots();
        let vars = pool(&["x", "y"]);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut seen = BTreeSet::new();
        for _ in 0..10_000 {
            collect(&gen_term(&mut rng, 12, &sig, &vars).unwrap(), &mut seen);
        }
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), sig.symbols().to_vec());
    }

    #[test]
    fn meadow_signature_has_no_sign_or_root() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let t = gen_term(&mut rng, 10, &Signature::meadow(), &pool(&["x"])).unwrap();
            assert!(!t.any(&|n| matches!(n, Term::Sign(_) | Term::Sqrt(_))));
        }
    }

    #[test]
    fn errors() {
        let vars = pool(&["x"]);
        assert_eq!(
            gen_random_term(0, 3, &Signature::new([]), &vars),
            Err(GenError::EmptySignature)
        );
        assert_eq!(
            gen_random_term(0, 3, &Signature::new([Symbol::Add]), &vars),
            Err(GenError::NoLeaves)
        );
        assert_eq!(
            gen_random_term(0, 3, &Signature::new([Symbol::Var]), &[]),
            Err(GenError::NoLeaves)
        );
        assert_eq!(gen_random_term(0, 0, &Signature::meadow(), &vars), Err(GenError::ZeroSize));
    }

    #[test]
    fn contexts_have_one_hole() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for depth in 0..5 {
            let c = gen_context(&mut rng, depth, 3, &Signature::roots(), &pool(&["x"])).unwrap();
            assert_eq!(c.holes(), 1);
        }
    }
}
