//! A workbench for total functional programs over natural numbers.
//!
//! The object language is a simply typed lambda calculus with `0`, `succ`
//! and a primitive recursor, extended with binary products. The crate
//! provides:
//!
//! - a parser and typechecker for a small surface syntax ([`parser`],
//!   [`syntax`]),
//! - self-translations of the language in which numbers become functionals
//!   over an input sequence, including a paired variant that carries a
//!   continuity modulus alongside each value ([`translate`]),
//! - an instrumented environment-machine evaluator whose input sequences
//!   are first-class oracle values with query logging ([`eval`], [`point`]),
//! - verification harnesses for pointwise continuity moduli and for uniform
//!   continuity over binary sequences ([`continuity`]).

pub mod continuity;
pub mod eval;
pub mod json;
pub mod parser;
pub mod point;
pub mod pretty;
pub mod syntax;
pub mod translate;

/// Unbounded natural numbers, the semantic base type.
pub type Nat = num_bigint::BigUint;

pub use continuity::{
    check_equivalence, modulus_at, uc_modulus, verify_modulus, verify_uc_modulus, ContinuityError,
    EquivalenceReport, ModulusReport, UcReport, VerifyBudget,
};
pub use eval::{
    apply_to_point, eval_closed, eval_to_nat, oracle_modulus, Env, EvalError, Evaluator, QueryLog,
    Value, DEFAULT_FUEL,
};
pub use parser::{parse, ParseError};
pub use point::{sample_points, Point, PointError, Tail};
pub use pretty::{pretty_term, pretty_type};
pub use syntax::{typecheck, typecheck_closed, FiniteType, Term, TypeError, TypingContext};
pub use translate::{
    generic_element, kleisli_ext, max_term, modulus_term, modulus_term_checked, translate_term,
    translate_term_checked, translate_type, value_term, value_term_checked, TranslateError,
    TranslationTarget,
};
