//! The axiom bank and the engine that checks it.
//!
//! Finite fields are checked exhaustively (or by sampling); the exact and
//! complex models are checked on seeded random valuations, each trial in its
//! own session and its own random stream.

mod catalog;
mod check;
mod report;

use thiserror::Error;

pub use catalog::{
    axiom_set, catalog, lagrange, set_names, AxiomSet, ConditionalEquation, Equation, Law, Premise,
    Relation,
};
pub use check::{
    check_conditional, check_equation, check_law, check_propagation, exact_valuation,
    gen_complex_value, gen_exact_value, propagation_instance, run_suite, CheckParams, Mode, Model,
    PropagationKind, EXHAUSTIVE_CAP, FAILURE_CAP,
};
pub use report::{CheckReport, Failure, ModeTag, SuiteReport, Value, Verdict};

use crate::finite::FieldError;
use crate::term::EvalError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("unknown axiom set {name:?}; valid sets: {}", valid.join(", "))]
    UnknownSet { name: String, valid: Vec<String> },
    #[error("unknown model {0:?}; valid models: exact, complex, fp:<prime>")]
    UnknownModel(String),
    #[error("unknown propagation kind {0:?}; valid kinds: unit, zero")]
    UnknownKind(String),
    #[error("exhaustive check over F_{p} with {vars} variables exceeds the cap of {cap} valuations")]
    ExhaustiveTooLarge { p: u64, vars: usize, cap: u64 },
    #[error("model {0} has no exhaustive mode")]
    ExhaustiveUnsupported(String),
    #[error("at least one trial is required")]
    NoTrials,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
