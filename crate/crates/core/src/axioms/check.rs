use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::catalog::{axiom_set, Equation, Law, Premise, Relation};
use super::report::{CheckReport, Failure, ModeTag, SuiteReport, Value};
use super::CheckError;
use crate::complex::{Complex, ComplexModel};
use crate::finite::{FiniteModel, PrimeField, Residue};
use crate::kernel::{Real, Session};
use crate::term::{
    eval, gen_context, gen_term, EvalError, ExactModel, Interpretation, Signature, Term, Valuation,
};

/// Default bound on `p^vars` for exhaustive checks.
pub const EXHAUSTIVE_CAP: u64 = 10_000_000;
/// Failures kept verbatim in a report; the total is always counted.
pub const FAILURE_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Exact,
    Finite(u64),
    Complex,
}

impl Model {
    pub fn id(self) -> String {
        match self {
            Model::Exact => "exact".into(),
            Model::Finite(p) => format!("fp:{p}"),
            Model::Complex => "complex".into(),
        }
    }
}

impl std::str::FromStr for Model {
    type Err = CheckError;

    /// `exact`, `complex` or `fp:<p>`.
    fn from_str(s: &str) -> Result<Model, CheckError> {
        let unknown = || CheckError::UnknownModel(s.into());
        match s {
            "exact" => Ok(Model::Exact),
            "complex" => Ok(Model::Complex),
            _ => {
                let p = s.strip_prefix("fp:").ok_or_else(unknown)?;
                p.parse().map(Model::Finite).map_err(|_| unknown())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Randomized { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckParams {
    pub mode: Mode,
    pub exhaustive_cap: u64,
    pub failure_cap: usize,
}

impl CheckParams {
    pub fn new(mode: Mode) -> CheckParams {
        CheckParams {
            mode,
            exhaustive_cap: EXHAUSTIVE_CAP,
            failure_cap: FAILURE_CAP,
        }
    }

    pub fn randomized(trials: u64, seed: u64) -> CheckParams {
        CheckParams::new(Mode::Randomized { trials, seed })
    }
}

/// The random stream for trial `index`: one ChaCha stream per trial, so
/// results do not depend on scheduling.
fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A random rational `±(1..=12)/(1..=6)`.
fn base_rational(rng: &mut impl Rng, session: &Session) -> Real {
    let num: i64 = rng.gen_range(1..=12);
    let den: i64 = rng.gen_range(1..=6);
    let sign = if rng.gen_bool(0.5) { -1 } else { 1 };
    session.rational(sign * num, den)
}

/// Draws a value for randomized exact checks.
///
/// With probability 0.15 an earlier value is reused and with 0.05 its
/// negation, so equality premises get exercised. Otherwise 0.1 gives zero
/// and the rest start from a base rational `±(1..=12)/(1..=6)` followed by
/// up to three steps drawn from: signed root, inverse, adding or
/// multiplying a fresh base rational, negation. Nested radicals such as
/// `sqrt(1/2 + sqrt(3))` arise from root-add-root chains.
pub fn gen_exact_value(rng: &mut impl Rng, session: &Session, earlier: &[Real]) -> Real {
    if !earlier.is_empty() {
        let roll: f64 = rng.gen();
        if roll < 0.2 {
            let v = &earlier[rng.gen_range(0..earlier.len())];
            return if roll < 0.15 { v.clone() } else { v.neg() };
        }
    }
    if rng.gen_bool(0.1) {
        return session.zero();
    }
    let mut v = base_rational(rng, session);
    let steps = [0, 0, 1, 1, 1, 2, 2, 3][rng.gen_range(0..8)];
    for _ in 0..steps {
        v = match rng.gen_range(0..6) {
            0 | 1 => v.ssqrt(),
            2 => v.inv(),
            3 => &v + &base_rational(rng, session),
            4 => &v * &base_rational(rng, session),
            _ => v.neg(),
        };
    }
    v
}

/// Complex values: components from [`gen_exact_value`], purely real one
/// time in five.
pub fn gen_complex_value(rng: &mut impl Rng, session: &Session, earlier: &[Real]) -> Complex {
    let re = gen_exact_value(rng, session, earlier);
    let im = if rng.gen_bool(0.2) {
        session.zero()
    } else {
        gen_exact_value(rng, session, earlier)
    };
    Complex::new(re, im).expect("one session")
}

/// Replaces every value by `|v| · s(first)`, so all signs agree.
fn align_signs(values: &mut [Real]) {
    let Some(first) = values.first() else { return };
    let sign = first.session().integer(first.sign().to_i8());
    for v in values.iter_mut() {
        let abs = v.session().integer(v.sign().to_i8()) * &*v;
        *v = &abs * &sign;
    }
}

enum Outcome {
    Holds,
    Skipped,
    Fails(Failure),
}

trait Render {
    fn value(&self) -> Value;
}

impl Render for Real {
    fn value(&self) -> Value {
        Value {
            term: self.to_string(),
            decimal: Some(self.approx_decimal(12)),
        }
    }
}

impl Render for Complex {
    fn value(&self) -> Value {
        Value {
            term: self.to_string(),
            decimal: Some(format!(
                "({}, {})",
                self.re().approx_decimal(12),
                self.im().approx_decimal(12)
            )),
        }
    }
}

impl Render for Residue {
    fn value(&self) -> Value {
        Value {
            term: self.to_string(),
            decimal: None,
        }
    }
}

fn premise_holds<M: Interpretation>(
    p: &Premise,
    val: &Valuation<M::Value>,
    model: &M,
) -> Result<bool, EvalError>
where
    M::Value: PartialEq,
{
    let equal = eval(&p.lhs, val, model)? == eval(&p.rhs, val, model)?;
    Ok(equal == (p.relation == Relation::Equal))
}

/// Evaluates `law` at one valuation.
fn decide<M: Interpretation>(
    law: &Law,
    val: &Valuation<M::Value>,
    model: &M,
) -> Result<Outcome, EvalError>
where
    M::Value: PartialEq + Render,
{
    let eq: &Equation = match law {
        Law::Equation(e) => e,
        Law::Conditional(c) => {
            for p in &c.premises {
                if !premise_holds(p, val, model)? {
                    return Ok(Outcome::Skipped);
                }
            }
            &c.conclusion
        }
    };
    let lhs = eval(&eq.lhs, val, model)?;
    let rhs = eval(&eq.rhs, val, model)?;
    if lhs == rhs {
        return Ok(Outcome::Holds);
    }
    Ok(Outcome::Fails(Failure {
        valuation: val.iter().map(|(k, v)| (k.clone(), v.value())).collect(),
        lhs: lhs.value(),
        rhs: rhs.value(),
        instance: None,
    }))
}

fn rejects_symbols<M: Interpretation>(law: &Law, model: &M) -> Result<(), EvalError> {
    let probe = |t: &Term| -> Option<&'static str> {
        if t.any(&|n| matches!(n, Term::Sign(_))) {
            Some("s")
        } else if t.any(&|n| matches!(n, Term::Sqrt(_))) {
            Some("sqrt")
        } else if t.any(&|n| matches!(n, Term::Re(_))) {
            Some("re")
        } else if t.any(&|n| matches!(n, Term::Conj(_))) {
            Some("conj")
        } else {
            None
        }
    };
    match law.terms().into_iter().find_map(probe) {
        Some(symbol) => Err(model.unsupported(symbol)),
        None => Ok(()),
    }
}

fn assemble(
    law: &Law,
    model: Model,
    mode: ModeTag,
    seed: Option<u64>,
    outcomes: Vec<Outcome>,
    cap: usize,
) -> CheckReport {
    let trials = outcomes.len() as u64;
    let mut satisfied = 0;
    let mut skipped = 0;
    let mut failure_count = 0;
    let mut failures = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Holds => satisfied += 1,
            Outcome::Skipped => skipped += 1,
            Outcome::Fails(f) => {
                satisfied += 1;
                failure_count += 1;
                if failures.len() < cap {
                    failures.push(f);
                }
            }
        }
    }
    CheckReport::new(
        law.name(),
        law.statement(),
        model.id(),
        mode,
        seed,
        trials,
        satisfied,
        skipped,
        failure_count,
        failures,
    )
}

fn check_finite(law: &Law, p: u64, params: &CheckParams) -> Result<CheckReport, CheckError> {
    let field = PrimeField::new(p)?;
    let model = FiniteModel { field: &field };
    rejects_symbols(law, &model)?;
    let vars = law.vars();
    let run = |residues: Vec<u64>| -> Result<Outcome, EvalError> {
        let val = vars
            .iter()
            .cloned()
            .zip(residues.into_iter().map(|r| field.residue(r)))
            .collect();
        decide(law, &val, &FiniteModel { field: &field })
    };
    let (outcomes, mode, seed) = match params.mode {
        Mode::Exhaustive => {
            let total = (p as u128).pow(vars.len() as u32);
            if total > params.exhaustive_cap as u128 {
                return Err(CheckError::ExhaustiveTooLarge {
                    p,
                    vars: vars.len(),
                    cap: params.exhaustive_cap,
                });
            }
            let outcomes = (0..total as u64)
                .into_par_iter()
                .map(|code| {
                    // Most significant digit first, so failures come out in
                    // lexicographic order of the valuation.
                    let mut digits = vec![0; vars.len()];
                    let mut c = code;
                    for d in digits.iter_mut().rev() {
                        *d = c % p;
                        c /= p;
                    }
                    run(digits)
                })
                .collect::<Result<Vec<_>, _>>()?;
            (outcomes, ModeTag::Exhaustive, None)
        }
        Mode::Randomized { trials, seed } => {
            let outcomes = (0..trials)
                .into_par_iter()
                .map(|i| {
                    let mut rng = trial_rng(seed, i);
                    run(vars.iter().map(|_| rng.gen_range(0..p)).collect())
                })
                .collect::<Result<Vec<_>, _>>()?;
            (outcomes, ModeTag::Randomized, Some(seed))
        }
    };
    Ok(assemble(law, Model::Finite(p), mode, seed, outcomes, params.failure_cap))
}

fn exact_trial(law: &Law, seed: u64, index: u64) -> Result<Outcome, EvalError> {
    let mut rng = trial_rng(seed, index);
    let session = Session::new();
    let mut values: Vec<Real> = Vec::new();
    for _ in law.vars() {
        let v = gen_exact_value(&mut rng, &session, &values);
        values.push(v);
    }
    // Sign-stratified: every other trial of a conditional forces all
    // variables to share a sign, so `s(x) = s(y)` premises are exercised.
    if matches!(law, Law::Conditional(_)) && index % 2 == 1 {
        align_signs(&mut values);
    }
    let val = law.vars().iter().cloned().zip(values).collect();
    decide(law, &val, &ExactModel { session: &session })
}

fn complex_trial(law: &Law, seed: u64, index: u64) -> Result<Outcome, EvalError> {
    let mut rng = trial_rng(seed, index);
    let session = Session::new();
    let mut parts: Vec<Real> = Vec::new();
    let mut val = Valuation::new();
    for name in law.vars() {
        let c = gen_complex_value(&mut rng, &session, &parts);
        parts.push(c.re().clone());
        val.insert(name.clone(), c);
    }
    decide(law, &val, &ComplexModel { session: &session })
}

fn check_randomized(
    law: &Law,
    model: Model,
    params: &CheckParams,
    trial: fn(&Law, u64, u64) -> Result<Outcome, EvalError>,
) -> Result<CheckReport, CheckError> {
    let Mode::Randomized { trials, seed } = params.mode else {
        return Err(CheckError::ExhaustiveUnsupported(model.id()));
    };
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|i| trial(law, seed, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(assemble(
        law,
        model,
        ModeTag::Randomized,
        Some(seed),
        outcomes,
        params.failure_cap,
    ))
}

/// Checks one law. Conditionals skip valuations whose premises fail and
/// count them separately.
pub fn check_law(law: &Law, model: Model, params: &CheckParams) -> Result<CheckReport, CheckError> {
    match model {
        Model::Finite(p) => check_finite(law, p, params),
        Model::Exact => check_randomized(law, model, params, exact_trial),
        Model::Complex => check_randomized(law, model, params, complex_trial),
    }
}

pub fn check_equation(
    eq: &Equation,
    model: Model,
    params: &CheckParams,
) -> Result<CheckReport, CheckError> {
    check_law(&Law::Equation(eq.clone()), model, params)
}

pub fn check_conditional(
    ceq: &super::ConditionalEquation,
    model: Model,
    params: &CheckParams,
) -> Result<CheckReport, CheckError> {
    check_law(&Law::Conditional(ceq.clone()), model, params)
}

/// Checks every law of a named set (see [`axiom_set`]).
pub fn run_suite(name: &str, model: Model, params: &CheckParams) -> Result<SuiteReport, CheckError> {
    let set = axiom_set(name)?;
    let reports = set
        .laws
        .iter()
        .map(|law| check_law(law, model, params))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SuiteReport::new(set.name, model.id(), reports))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropagationKind {
    Unit,
    Zero,
}

impl PropagationKind {
    fn wrap(self, t: Term) -> Term {
        match self {
            PropagationKind::Unit => Term::pseudo_unit(t),
            PropagationKind::Zero => Term::pseudo_zero(t),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PropagationKind::Unit => "unit",
            PropagationKind::Zero => "zero",
        }
    }
}

impl std::str::FromStr for PropagationKind {
    type Err = CheckError;

    fn from_str(s: &str) -> Result<Self, CheckError> {
        match s {
            "unit" => Ok(PropagationKind::Unit),
            "zero" => Ok(PropagationKind::Zero),
            other => Err(CheckError::UnknownKind(other.into())),
        }
    }
}

/// Variables of propagation instances.
const PROPAGATION_VARS: [&str; 3] = ["x", "y", "z"];

/// The instance `p·C[r] = p·C[p·r]` with `p` the pseudo unit or zero of `t`.
pub fn propagation_instance(kind: PropagationKind, t: &Term, r: &Term, ctx: &Term) -> (Term, Term) {
    let p = kind.wrap(t.clone());
    let lhs = Term::mul(p.clone(), ctx.fill(r));
    let rhs = Term::mul(p.clone(), ctx.fill(&Term::mul(p, r.clone())));
    (lhs, rhs)
}

fn propagation_trial(kind: PropagationKind, seed: u64, index: u64, max_size: usize) -> Outcome {
    let mut rng = trial_rng(seed, index);
    let vars: Vec<String> = PROPAGATION_VARS.iter().map(|s| s.to_string()).collect();
    let sig = Signature::roots();
    let t = gen_term(&mut rng, max_size, &sig, &vars).expect("valid signature");
    let r = gen_term(&mut rng, max_size, &sig, &vars).expect("valid signature");
    // Every fifth trial uses a bare root or sign context; the rest are random
    // contexts of depth 1 to 3.
    let ctx = match index % 10 {
        0 => Term::sqrt(Term::Hole),
        5 => Term::sign(Term::Hole),
        _ => {
            let depth = rng.gen_range(1..=3);
            gen_context(&mut rng, depth, 3, &sig, &vars).expect("valid signature")
        }
    };
    let session = Session::new();
    let val = exact_valuation(&mut rng, &session, &vars);
    let (lhs_t, rhs_t) = propagation_instance(kind, &t, &r, &ctx);
    let model = ExactModel { session: &session };
    let lhs = eval(&lhs_t, &val, &model).expect("closed under valuation");
    let rhs = eval(&rhs_t, &val, &model).expect("closed under valuation");
    if lhs == rhs {
        return Outcome::Holds;
    }
    Outcome::Fails(Failure {
        valuation: val.iter().map(|(k, v)| (k.clone(), v.value())).collect(),
        lhs: lhs.value(),
        rhs: rhs.value(),
        instance: Some(format!("{lhs_t} = {rhs_t}")),
    })
}

/// Randomized propagation check in the exact model: per trial, random
/// terms `t`, `r` of at most `max_term_size` nodes, a random one-hole
/// context `C` and a random valuation.
pub fn check_propagation(
    kind: PropagationKind,
    trials: u64,
    seed: u64,
    max_term_size: usize,
) -> Result<CheckReport, CheckError> {
    if trials == 0 {
        return Err(CheckError::NoTrials);
    }
    let max_size = max_term_size.max(1);
    let outcomes: Vec<Outcome> = (0..trials)
        .into_par_iter()
        .map(|i| propagation_trial(kind, seed, i, max_size))
        .collect();
    let name = format!("propagation_{}", kind.name());
    let statement = match kind {
        PropagationKind::Unit => "1_t * C[r] = 1_t * C[1_t * r]",
        PropagationKind::Zero => "0_t * C[r] = 0_t * C[0_t * r]",
    };
    let law = Law::Equation(Equation::new(&name, Term::Zero, Term::Zero, "propagation"));
    let mut report = assemble(
        &law,
        Model::Exact,
        ModeTag::Randomized,
        Some(seed),
        outcomes,
        FAILURE_CAP,
    );
    report.statement = statement.into();
    Ok(report)
}

/// Draws one value per variable with [`gen_exact_value`].
pub fn exact_valuation(rng: &mut impl Rng, session: &Session, vars: &[String]) -> BTreeMap<String, Real> {
    let mut values = Vec::new();
    for _ in vars {
        let v = gen_exact_value(rng, session, &values);
        values.push(v);
    }
    vars.iter().cloned().zip(values).collect()
}
