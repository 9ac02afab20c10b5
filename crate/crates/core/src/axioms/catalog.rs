use std::collections::BTreeSet;

use serde::Serialize;

use super::CheckError;
use crate::term::{parse, render, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    NotEqual,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Premise {
    pub lhs: Term,
    pub rhs: Term,
    pub relation: Relation,
}

impl Premise {
    fn render(&self) -> String {
        let op = match self.relation {
            Relation::Equal => "=",
            Relation::NotEqual => "!=",
        };
        format!("{} {op} {}", render(&self.lhs), render(&self.rhs))
    }
}

/// `lhs = rhs` over the variables in `vars` (sorted, shared by both sides).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
    pub source: String,
    pub vars: Vec<String>,
}

fn sorted_vars<'a>(terms: impl IntoIterator<Item = &'a Term>) -> Vec<String> {
    let mut all = BTreeSet::new();
    for t in terms {
        all.extend(t.free_vars());
    }
    all.into_iter().collect()
}

impl Equation {
    pub fn new(name: &str, lhs: Term, rhs: Term, source: &str) -> Equation {
        let vars = sorted_vars([&lhs, &rhs]);
        Equation {
            name: name.into(),
            lhs,
            rhs,
            source: source.into(),
            vars,
        }
    }

    /// Parses `"lhs = rhs"`.
    ///
    /// # Panics
    /// On malformed text; only used for the fixed catalog.
    fn fixed(name: &str, text: &str, source: &str) -> Equation {
        let (l, r) = text.split_once('=').expect("equation has '='");
        let side = |s: &str| parse(s).unwrap_or_else(|e| panic!("{name}: {e}"));
        Equation::new(name, side(l), side(r), source)
    }

    pub fn statement(&self) -> String {
        format!("{} = {}", render(&self.lhs), render(&self.rhs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalEquation {
    pub name: String,
    pub premises: Vec<Premise>,
    pub conclusion: Equation,
    /// Free variables of premises and conclusion.
    pub vars: Vec<String>,
}

impl ConditionalEquation {
    /// # Panics
    /// If `premises` is empty.
    pub fn new(name: &str, premises: Vec<Premise>, conclusion: Equation) -> ConditionalEquation {
        assert!(!premises.is_empty(), "a conditional needs a premise");
        let terms = premises
            .iter()
            .flat_map(|p| [&p.lhs, &p.rhs])
            .chain([&conclusion.lhs, &conclusion.rhs]);
        let vars = sorted_vars(terms);
        ConditionalEquation {
            name: name.into(),
            premises,
            conclusion,
            vars,
        }
    }

    /// Premises are `&`-joined `lhs = rhs` or `lhs != rhs`.
    fn fixed(name: &str, premises: &str, conclusion: &str, source: &str) -> ConditionalEquation {
        let premises = premises
            .split('&')
            .map(|p| {
                let (l, r, relation) = match p.split_once("!=") {
                    Some((l, r)) => (l, r, Relation::NotEqual),
                    None => {
                        let (l, r) = p.split_once('=').expect("premise has a relation");
                        (l, r, Relation::Equal)
                    }
                };
                Premise {
                    lhs: parse(l).expect("fixed premise"),
                    rhs: parse(r).expect("fixed premise"),
                    relation,
                }
            })
            .collect();
        ConditionalEquation::new(name, premises, Equation::fixed(name, conclusion, source))
    }

    pub fn statement(&self) -> String {
        let ps: Vec<String> = self.premises.iter().map(Premise::render).collect();
        format!("{} -> {}", ps.join(" & "), self.conclusion.statement())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Law {
    Equation(Equation),
    Conditional(ConditionalEquation),
}

impl Law {
    pub fn name(&self) -> &str {
        match self {
            Law::Equation(e) => &e.name,
            Law::Conditional(c) => &c.name,
        }
    }

    pub fn vars(&self) -> &[String] {
        match self {
            Law::Equation(e) => &e.vars,
            Law::Conditional(c) => &c.vars,
        }
    }

    pub fn statement(&self) -> String {
        match self {
            Law::Equation(e) => e.statement(),
            Law::Conditional(c) => c.statement(),
        }
    }

    /// Every term occurring in the law.
    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Law::Equation(e) => vec![&e.lhs, &e.rhs],
            Law::Conditional(c) => c
                .premises
                .iter()
                .flat_map(|p| [&p.lhs, &p.rhs])
                .chain([&c.conclusion.lhs, &c.conclusion.rhs])
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSet {
    pub name: String,
    pub laws: Vec<Law>,
}

impl AxiomSet {
    fn equations(name: &str, source: &str, rows: &[(&str, &str)]) -> AxiomSet {
        AxiomSet {
            name: name.into(),
            laws: rows
                .iter()
                .map(|(n, text)| Law::Equation(Equation::fixed(n, text, source)))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.laws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.laws.is_empty()
    }
}

fn md() -> AxiomSet {
    AxiomSet::equations(
        "Md",
        "meadow axioms",
        &[
            ("add_assoc", "(x + y) + z = x + (y + z)"),
            ("add_comm", "x + y = y + x"),
            ("add_zero", "x + 0 = x"),
            ("add_neg", "x + (-x) = 0"),
            ("mul_assoc", "(x * y) * z = x * (y * z)"),
            ("mul_comm", "x * y = y * x"),
            ("one_mul", "1 * x = x"),
            ("distrib", "x * (y + z) = x * y + x * z"),
            ("inv_inv", "inv(inv(x)) = x"),
            ("ril", "x * (x * inv(x)) = x"),
        ],
    )
}

fn md_derived() -> AxiomSet {
    AxiomSet::equations(
        "MdDerived",
        "consequences of the meadow axioms",
        &[
            ("inv_one", "inv(1) = 1"),
            ("inv_zero", "inv(0) = 0"),
            ("inv_neg", "inv(-x) = -inv(x)"),
            ("inv_mul", "inv(x * y) = inv(x) * inv(y)"),
            ("zero_mul", "0 * x = 0"),
            ("mul_neg", "x * (-y) = -(x * y)"),
            ("neg_neg", "-(-x) = x"),
        ],
    )
}

fn pseudo_laws() -> AxiomSet {
    AxiomSet::equations(
        "PseudoLaws",
        "pseudo units and pseudo zeros",
        &[
            ("zero_plus_unit", "(1 - x/x) + x/x = 1"),
            ("unit_idempotent", "(x/x)^2 = x/x"),
            ("zero_idempotent", "(1 - x/x)^2 = 1 - x/x"),
        ],
    )
}

fn signs() -> AxiomSet {
    AxiomSet::equations(
        "Signs",
        "sign axioms",
        &[
            ("sign_unit", "s(x/x) = x/x"),
            ("sign_zero_part", "s(1 - x/x) = 1 - x/x"),
            ("sign_minus_one", "s(-1) = -1"),
            ("sign_inv", "s(inv(x)) = s(x)"),
            ("sign_mul", "s(x * y) = s(x) * s(y)"),
            (
                "sign_add",
                "(1 - (s(x) - s(y))/(s(x) - s(y))) * (s(x + y) - s(x)) = 0",
            ),
        ],
    )
}

fn signs_derived() -> AxiomSet {
    let mut set = AxiomSet::equations(
        "SignsDerived",
        "consequences of the sign axioms",
        &[
            ("sign_of_zero", "s(0) = 0"),
            ("sign_of_one", "s(1) = 1"),
            ("sign_idempotent", "s(s(x)) = s(x)"),
        ],
    );
    set.laws.push(Law::Conditional(ConditionalEquation::fixed(
        "sign_add_conditional",
        "s(x) = s(y)",
        "s(x + y) = s(x)",
        "conditional reading of sign_add",
    )));
    set
}

fn il_cancellation() -> AxiomSet {
    let source = "cancellation meadows";
    AxiomSet {
        name: "ILCancellation".into(),
        laws: vec![
            Law::Conditional(ConditionalEquation::fixed(
                "inverse_law",
                "x != 0",
                "x * inv(x) = 1",
                source,
            )),
            Law::Conditional(ConditionalEquation::fixed(
                "cancellation",
                "x != 0 & x * y = x * z",
                "y = z",
                source,
            )),
            Law::Conditional(ConditionalEquation::fixed(
                "no_zero_divisors",
                "x * y = 0 & x != 0",
                "y = 0",
                source,
            )),
        ],
    }
}

fn square_roots() -> AxiomSet {
    AxiomSet::equations(
        "SquareRoots",
        "signed square root axioms",
        &[
            ("sqrt_inv", "sqrt(inv(x)) = inv(sqrt(x))"),
            ("sqrt_mul", "sqrt(x * y) = sqrt(x) * sqrt(y)"),
            ("sqrt_signed_square", "sqrt(x * x * s(x)) = x"),
            ("sqrt_monotone", "s(sqrt(x) - sqrt(y)) = s(x - y)"),
        ],
    )
}

fn sqrt_derived() -> AxiomSet {
    AxiomSet::equations(
        "SqrtDerived",
        "consequences of the square root axioms",
        &[
            ("sqrt_of_sign", "sqrt(s(x)) = s(x)"),
            ("sqrt_of_unit", "sqrt(x/x) = x/x"),
            ("sqrt_of_zero_part", "sqrt(1 - x/x) = 1 - x/x"),
            ("sqrt_odd", "sqrt(-x) = -sqrt(x)"),
            ("sqrt_of_square", "sqrt(x^2) = x * s(x)"),
        ],
    )
}

fn showcase() -> AxiomSet {
    AxiomSet::equations(
        "Showcase",
        "total form of a relativity identity",
        &[(
            "relativity",
            "sqrt(1 + b) / sqrt(1 - b^2) = s(1 + b)^2 / sqrt(1 - b)",
        )],
    )
}

fn complex() -> AxiomSet {
    AxiomSet::equations(
        "Complex",
        "complex signed square roots",
        &[
            ("sign_real_part", "s(x) = s(re(x))"),
            ("sqrt_real_part", "sqrt(x) = sqrt(re(x))"),
            ("real_part", "re(x) = 1/2 * (x + conj(x))"),
        ],
    )
}

fn complex_restricted() -> AxiomSet {
    AxiomSet::equations(
        "ComplexRestricted",
        "square root axioms restricted to real parts",
        &[
            ("sqrt_inv_re", "sqrt(inv(re(x))) = inv(sqrt(re(x)))"),
            ("sqrt_mul_re", "sqrt(re(x) * re(y)) = sqrt(re(x)) * sqrt(re(y))"),
            ("sqrt_signed_square_re", "sqrt(re(x) * re(x) * s(re(x))) = re(x)"),
            ("sqrt_monotone_re", "s(sqrt(re(x)) - sqrt(re(y))) = s(re(x) - re(y))"),
        ],
    )
}

fn refutable() -> AxiomSet {
    AxiomSet::equations(
        "Refutable",
        "unconditional inverse law, false at zero",
        &[("inverse_unconditional", "x * inv(x) = 1")],
    )
}

/// `(1 + x1^2 + ... + xn^2) / (1 + x1^2 + ... + xn^2) = 1`.
pub fn lagrange(n: usize) -> Equation {
    let sum = (1..=n).fold(Term::One, |acc, i| {
        let x = Term::var(format!("x{i}"));
        Term::add(acc, Term::mul(x.clone(), x))
    });
    Equation::new(
        &format!("lagrange_{n}"),
        Term::mul(sum.clone(), Term::inv(sum)),
        Term::One,
        "Lagrange equation",
    )
}

fn lagrange_set(n: usize) -> AxiomSet {
    AxiomSet {
        name: format!("Lagrange{n}"),
        laws: vec![Law::Equation(lagrange(n))],
    }
}

/// Every fixed set, with `Lagrange1` to `Lagrange4` in place of the
/// parameterized family.
pub fn catalog() -> Vec<AxiomSet> {
    let mut sets = vec![
        md(),
        md_derived(),
        pseudo_laws(),
        signs(),
        signs_derived(),
        il_cancellation(),
        square_roots(),
        sqrt_derived(),
        showcase(),
        complex(),
        complex_restricted(),
        refutable(),
    ];
    sets.extend((1..=4).map(lagrange_set));
    sets
}

fn canonical_name(name: &str) -> String {
    let lower: String = name
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect::<String>()
        .to_ascii_lowercase();
    match lower.as_str() {
        "il" | "cancellation" | "ilcancellation" => "ilcancellation".into(),
        "l1" | "l2" | "l3" | "l4" => format!("lagrange{}", &lower[1..]),
        _ => lower,
    }
}

/// Looks up a set by name, case-insensitively. `A+B` joins sets;
/// `IL`, `Cancellation`, `L2` and `Lagrange(2)` are accepted aliases.
pub fn axiom_set(name: &str) -> Result<AxiomSet, CheckError> {
    let sets = catalog();
    let mut joined = AxiomSet {
        name: name.trim().into(),
        laws: vec![],
    };
    for part in name.split('+') {
        let key = canonical_name(part);
        let found = sets
            .iter()
            .find(|s| canonical_name(&s.name) == key)
            .ok_or_else(|| CheckError::UnknownSet {
                name: part.trim().into(),
                valid: set_names(),
            })?;
        joined.laws.extend(found.laws.iter().cloned());
    }
    Ok(joined)
}

pub fn set_names() -> Vec<String> {
    catalog().into_iter().map(|s| s.name).collect()
}
