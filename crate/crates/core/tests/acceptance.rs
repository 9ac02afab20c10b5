//! Acceptance criteria, one line per criterion. Run with
//! `cargo test -p meadow-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use meadow_core::axioms::{
    check_propagation, exact_valuation, propagation_instance, run_suite, CheckParams, Mode, Model,
    PropagationKind, SuiteReport,
};
use meadow_core::finite::{lagrange_holds, scan_lagrange, verify_f3_argument, PrimeField};
use meadow_core::kernel::{Rational, Real, Session, SignValue};
use meadow_core::simplify::{decide_closed_eq, normalize_closed, rewrite_simplify};
use meadow_core::term::{eval_exact, gen_term, Signature, Term, Valuation};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_917;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite_ok(report: &SuiteReport) -> Result<(), String> {
    ensure(report.passed(), || report.to_string())
}

fn finite_soundness() -> Outcome {
    let params = CheckParams::new(Mode::Exhaustive);
    let primes = [2, 3, 5, 7, 11, 13];
    let mut valuations = 0;
    for p in primes {
        let core = run_suite("Md+MdDerived+PseudoLaws", Model::Finite(p), &params)
            .map_err(|e| e.to_string())?;
        ensure(core.reports.len() == 20, || format!("expected 20 laws, got {}", core.reports.len()))?;
        suite_ok(&core)?;
        let conditional =
            run_suite("ILCancellation", Model::Finite(p), &params).map_err(|e| e.to_string())?;
        suite_ok(&conditional)?;
        for r in &conditional.reports {
            ensure(r.satisfied + r.skipped == r.trials, || format!("accounting broken: {r}"))?;
        }
        let refuted = run_suite("Refutable", Model::Finite(p), &params).map_err(|e| e.to_string())?;
        let r = &refuted.reports[0];
        let at_zero = r.failure_count == 1 && r.failures[0].valuation["x"].term == "0";
        ensure(at_zero, || format!("x * inv(x) = 1 over F_{p} should fail only at 0: {r}"))?;
        valuations += core.reports.iter().map(|r| r.trials).sum::<u64>();
    }
    Ok(format!(
        "20 laws + 3 conditionals over F_p, p in {primes:?}: {valuations} valuations, x*inv(x)=1 fails only at x=0"
    ))
}

fn exact_soundness() -> Outcome {
    let params = CheckParams::randomized(1000, SEED);
    let mut laws = 0;
    for set in ["Md", "Signs", "SquareRoots", "SignsDerived", "SqrtDerived", "Showcase"] {
        let report = run_suite(set, Model::Exact, &params).map_err(|e| e.to_string())?;
        suite_ok(&report)?;
        for r in &report.reports {
            ensure(r.trials == 1000, || format!("{} ran {} trials", r.equation, r.trials))?;
        }
        laws += report.reports.len();
    }
    Ok(format!("{laws} laws x 1000 seeded valuations, exact equality"))
}

fn propagation() -> Outcome {
    // The root context case worked out by hand: t = x, r = y, C = sqrt([]).
    let s = Session::new();
    let val: Valuation<Real> = [("x".to_string(), s.integer(3)), ("y".to_string(), s.integer(2))]
        .into_iter()
        .collect();
    let ctx = Term::sqrt(Term::Hole);
    let (lhs, rhs) = propagation_instance(PropagationKind::Unit, &Term::var("x"), &Term::var("y"), &ctx);
    let l = eval_exact(&lhs, &val, &s).map_err(|e| e.to_string())?;
    let r = eval_exact(&rhs, &val, &s).map_err(|e| e.to_string())?;
    ensure(l == r && l == s.integer(2).ssqrt(), || format!("root case: {l} vs {r}"))?;

    let mut total = 0;
    for kind in [PropagationKind::Unit, PropagationKind::Zero] {
        let report = check_propagation(kind, 1000, SEED, 8).map_err(|e| e.to_string())?;
        ensure(report.passed() && report.trials == 1000, || report.to_string())?;
        total += report.trials;
    }
    Ok(format!("{total} random (t, r, C, valuation) trials, root case sqrt(2) = sqrt(2)"))
}

fn f3_fact() -> Outcome {
    ensure(lagrange_holds(3, 1).map_err(|e| e.to_string())?.holds, || "L1 fails in F_3".into())?;
    let f3 = PrimeField::new(3).map_err(|e| e.to_string())?;
    ensure(f3.squares() == vec![0, 1], || format!("squares {:?}", f3.squares()))?;
    let r = verify_f3_argument();
    ensure(r.md_and_l1_hold, || "Md + L1 fails over F_3".into())?;
    ensure(r.finite_value == 0, || format!("finite value {}", r.finite_value))?;
    ensure(r.exact_value == "1", || format!("exact value {}", r.exact_value))?;
    ensure(r.homomorphism_blocked, || "no contradiction".into())?;
    Ok("squares {0, 1}, (1+1+1)/(1+1+1) is 0 in F_3 and 1 exactly".into())
}

/// Primality by trial division, independent of the sieve under test.
fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn lagrange_scans() -> Outcome {
    let limit = 10_000;
    let l1 = scan_lagrange(1, limit).map_err(|e| e.to_string())?;
    let oracle: Vec<u64> = (2..=limit).filter(|&p| is_prime(p) && p % 4 == 3).collect();
    ensure(l1.holds == oracle, || "L1 scan differs from p = 3 mod 4".into())?;
    let l2 = scan_lagrange(2, limit).map_err(|e| e.to_string())?;
    ensure(l2.holds.is_empty(), || format!("L2 holds at {:?}", l2.holds))?;
    for (p, w) in &l2.counterexample_sample {
        let s = w.iter().fold(1, |acc, x| (acc + x * x) % p);
        ensure(s == 0, || format!("bad witness {w:?} for {p}"))?;
    }
    Ok(format!(
        "L1 holds at {} primes (all p = 3 mod 4), L2 holds at none up to {limit}",
        l1.holds.len()
    ))
}

fn parse_decimal(s: &str) -> Rational {
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    let scale = BigInt::from(10).pow(frac.len() as u32);
    let n: BigInt = format!("{int}{frac}").parse().expect("decimal digits");
    let q = Rational::new(n, scale);
    if neg {
        -q
    } else {
        q
    }
}

fn numeric_cross_check() -> Outcome {
    let s = Session::new();
    let r2 = s.integer(2).ssqrt();
    ensure(&r2 * &r2 == s.integer(2), || "(sqrt 2)^2 != 2".into())?;
    ensure(s.integer(8).ssqrt() == s.integer(2) * &r2, || "sqrt 8 != 2 sqrt 2".into())?;
    ensure(
        BigInt::from(2) * BigInt::from(408).pow(2) == BigInt::from(332_928)
            && BigInt::from(577).pow(2) == BigInt::from(332_929),
        || "integer oracle".into(),
    )?;
    ensure((&r2 - &s.rational(577, 408)).sign() == SignValue::Negative, || "sign".into())?;

    let ulp = Rational::new(1.into(), BigInt::from(10).pow(12));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut contradictions = Vec::new();
    let mut equal_pairs = 0;
    for i in 0..200 {
        let session = Session::new();
        let vars: Vec<String> = vec!["a".into(), "b".into()];
        let val = exact_valuation(&mut rng, &session, &vars);
        let (a, b) = (&val["a"], &val["b"]);
        let da = parse_decimal(&a.approx_decimal(12));
        let db = parse_decimal(&b.approx_decimal(12));
        let zero = Rational::from_integer(0.into());
        // |x - d| < 10^-12 for each, so the sign of x - y is pinned down
        // whenever the decimals differ by at least 2 ulp.
        let gap = &da - &db;
        let consistent_sign = match a.sign() {
            SignValue::Positive => da > -ulp.clone(),
            SignValue::Negative => da < ulp.clone(),
            SignValue::Zero => da == zero,
        };
        let consistent_order = match a.compare(b) {
            SignValue::Zero => {
                equal_pairs += 1;
                gap < &ulp + &ulp && gap > -(&ulp + &ulp)
            }
            SignValue::Positive => gap > -(&ulp + &ulp),
            SignValue::Negative => gap < &ulp + &ulp,
        };
        if !(consistent_sign && consistent_order) {
            contradictions.push(format!("#{i}: {a} vs {b}"));
        }
    }
    ensure(contradictions.is_empty(), || contradictions.join("; "))?;
    Ok(format!("200 random pairs ({equal_pairs} equal), no contradictions; anchors exact"))
}

fn complex_extension() -> Outcome {
    let params = CheckParams::randomized(500, SEED);
    let report = run_suite("Complex+ComplexRestricted", Model::Complex, &params)
        .map_err(|e| e.to_string())?;
    suite_ok(&report)?;
    Ok(format!("{} laws x 500 random complex valuations", report.reports.len()))
}

fn random_terms(rng: &mut ChaCha8Rng, n: usize, max_size: usize, vars: &[String]) -> Vec<Term> {
    (0..n)
        .map(|_| gen_term(rng, max_size, &Signature::roots(), vars).expect("valid signature"))
        .collect()
}

fn simplifier_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let corpus = random_terms(&mut rng, 500, 10, &[]);
    for t in &corpus {
        let n = normalize_closed(t).map_err(|e| e.to_string())?;
        let nn = normalize_closed(&n).map_err(|e| e.to_string())?;
        ensure(n == nn, || format!("not idempotent: {t} -> {n} -> {nn}"))?;
        ensure(decide_closed_eq(t, &n).map_err(|e| e.to_string())?, || format!("{t} != {n}"))?;
    }

    let mut equal = 0;
    for i in 0..1000 {
        let t = &corpus[rng.gen_range(0..corpus.len())];
        let u = match i % 3 {
            0 => normalize_closed(t).map_err(|e| e.to_string())?,
            _ => corpus[rng.gen_range(0..corpus.len())].clone(),
        };
        let decided = decide_closed_eq(t, &u).map_err(|e| e.to_string())?;
        let s = Session::new();
        let none = Valuation::new();
        let diff = eval_exact(&Term::sub(t.clone(), u.clone()), &none, &s).map_err(|e| e.to_string())?;
        ensure(decided == diff.is_zero(), || format!("decision differs on {t} vs {u}"))?;
        // Numeric side: distinct values must separate at some precision.
        if !decided {
            let separated = [64, 256, 1024].iter().any(|&bits| {
                let e = diff.enclosure(bits);
                !e.contains(&Rational::from_integer(0.into()))
            });
            ensure(separated, || format!("{t} and {u} never separate"))?;
        } else {
            equal += 1;
        }
    }

    let vars: Vec<String> = vec!["x".into(), "y".into()];
    let open = random_terms(&mut rng, 500, 10, &vars);
    let mut steps = 0;
    for (i, t) in open.iter().enumerate() {
        let rewritten = rewrite_simplify(t, 200);
        ensure(!rewritten.truncated, || format!("no normal form for {t}"))?;
        let mut seen = vec![t.clone()];
        for st in &rewritten.trace {
            ensure(!seen.contains(&st.term), || format!("loop on {t}"))?;
            seen.push(st.term.clone());
        }
        for v in 0..20u64 {
            let mut vrng = ChaCha8Rng::seed_from_u64(SEED ^ ((i as u64) << 8 | v));
            let session = Session::new();
            let val = exact_valuation(&mut vrng, &session, &vars);
            let values = seen
                .iter()
                .map(|term| eval_exact(term, &val, &session))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            ensure(values.windows(2).all(|w| w[0] == w[1]), || {
                format!("rewrite of {t} changes its value")
            })?;
        }
        steps += rewritten.steps;
    }
    Ok(format!(
        "500 closed terms normalized, 1000 pairs decided ({equal} equal), {steps} rewrite steps checked at 20 valuations each"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 finite-model soundness", finite_soundness, Duration::from_secs(5)),
        ("AC2 exact-model soundness", exact_soundness, Duration::from_secs(60)),
        ("AC3 propagation properties", propagation, Duration::from_secs(60)),
        ("AC4 (F_3)_0 satisfies L1", f3_fact, Duration::from_secs(1)),
        ("AC5 Lagrange scans", lagrange_scans, Duration::from_secs(10)),
        ("AC6 kernel numeric cross-check", numeric_cross_check, Duration::from_secs(60)),
        ("AC7 complex extension", complex_extension, Duration::from_secs(60)),
        ("AC8 simplifier soundness", simplifier_soundness, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) if elapsed <= budget => println!("[PASS] {name} ({secs:.2}s): {detail}"),
            Ok(detail) => {
                failed += 1;
                println!("[FAIL] {name} ({secs:.2}s, budget {}s): {detail}", budget.as_secs());
            }
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name} ({secs:.2}s): {why}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria fail");
        ExitCode::FAILURE
    }
}
