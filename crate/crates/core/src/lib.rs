//! Exact arithmetic for the zero-totalized signed square-root meadow over
//! the rationals, with a term language, an axiom bank, finite prime-field
//! models and a simplifier.
//!
//! Values live in a [`kernel::Session`]: a growing tower of real quadratic
//! extensions of `Q`. Every value of one session is a coordinate vector over
//! that tower, so equality, sign and square roots are decided exactly.

pub mod axioms;
pub mod complex;
pub mod finite;
pub mod kernel;
pub mod simplify;
pub mod term;

/// Version stamp carried by every serialized report.
pub const SCHEMA_VERSION: u32 = 1;

pub use kernel::{KernelError, Rational, Real, Session, SignValue};
pub use term::{parse, render, Term};
