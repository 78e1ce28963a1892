//! Continuity verification harnesses.
//!
//! Three kinds of checks live here:
//!
//! - [`check_equivalence`]: the translated functional applied to the generic
//!   element agrees with the original at every supplied point (exact numeral
//!   equality; a mismatch would be an implementation bug).
//! - [`modulus_at`] / [`verify_modulus`]: evaluate the derived modulus term
//!   at a point and falsify it against enumerated and sampled perturbations.
//!   The derived modulus and the instrumentation modulus are both reported;
//!   neither is claimed minimal and no ordering between them is asserted.
//! - [`uc_modulus`] / [`verify_uc_modulus`]: iterative-deepening search for
//!   a uniform continuity modulus over binary sequences, with an exhaustive
//!   per-cylinder check sized by the evaluator's query logs.
//!
//! Enumerations run in lexicographic order, so a reported counterexample is
//! the least one found and reports are deterministic for a fixed seed.

use std::fmt;

use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::eval::{apply_to_point, oracle_modulus, EvalError, DEFAULT_FUEL};
use crate::point::Point;
use crate::syntax::{typecheck_closed, FiniteType, Term};
use crate::translate::{
    generic_element, modulus_term_checked, translate_term, TranslateError, TranslationTarget,
};
use crate::Nat;

/// Enumeration budget and reproducibility knobs for modulus verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyBudget {
    /// Total number of perturbed points checked per call.
    pub limit: u64,
    /// Exhaustively enumerated values range over `0..=alphabet_max`.
    pub alphabet_max: u64,
    /// Width of the exhaustively enumerated window starting at the modulus.
    pub window: u32,
    /// Seed for the sampled perturbations that top up the budget.
    pub seed: u64,
    /// Step budget per evaluation; `None` disables it.
    pub fuel: Option<u64>,
}

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

impl Default for VerifyBudget {
    fn default() -> Self {
        VerifyBudget {
            limit: 10_000,
            alphabet_max: 3,
            window: 4,
            seed: DEFAULT_SEED,
            fuel: Some(DEFAULT_FUEL),
        }
    }
}

/// Hard bound on the uniform-continuity search depth (`2^m` enumeration).
pub const MAX_UC_DEPTH: u32 = 20;

/// Hard bound on the per-cylinder window used by [`verify_uc_modulus`].
const MAX_UC_WINDOW: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContinuityError {
    Translate(TranslateError),
    Eval(EvalError),
    /// The modulus under verification does not fit the window arithmetic.
    ModulusTooLarge { modulus: Nat },
    /// The uniform-continuity search exhausted its depth bound. This says
    /// the bound was too small, not that the function is discontinuous.
    MaxDepthExceeded { max_depth: u32 },
    DepthTooLarge { given: u32, max: u32 },
}

impl fmt::Display for ContinuityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContinuityError::Translate(e) => write!(f, "{e}"),
            ContinuityError::Eval(e) => write!(f, "{e}"),
            ContinuityError::ModulusTooLarge { modulus } => {
                write!(f, "modulus {modulus} is too large to verify by enumeration")
            }
            ContinuityError::MaxDepthExceeded { max_depth } => write!(
                f,
                "no uniform modulus found up to depth {max_depth}; the search bound was too small"
            ),
            ContinuityError::DepthTooLarge { given, max } => {
                write!(f, "depth {given} exceeds the supported bound {max}")
            }
        }
    }
}

impl std::error::Error for ContinuityError {}

impl From<TranslateError> for ContinuityError {
    fn from(e: TranslateError) -> Self {
        ContinuityError::Translate(e)
    }
}

impl From<EvalError> for ContinuityError {
    fn from(e: EvalError) -> Self {
        ContinuityError::Eval(e)
    }
}

fn ensure_baire_functional(f: &Term) -> Result<(), ContinuityError> {
    let found = typecheck_closed(f).map_err(TranslateError::from)?;
    let expected = FiniteType::baire_functional();
    if found == expected {
        Ok(())
    } else {
        Err(TranslateError::WrongSourceType { expected, found }.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivMismatch {
    pub alpha: Point,
    pub direct: Nat,
    pub translated: Nat,
}

/// Outcome of comparing a functional against its translation at points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub f: Term,
    pub points_checked: u64,
    pub mismatches: Vec<EquivMismatch>,
}

impl EquivalenceReport {
    pub fn all_equal(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Evaluate both `f` and its translation applied to the generic element at
/// each point and collect any disagreements.
pub fn check_equivalence(
    f: &Term,
    points: &[Point],
    fuel: Option<u64>,
) -> Result<EquivalenceReport, ContinuityError> {
    ensure_baire_functional(f)?;
    let translated = translate_term(f, &TranslationTarget::Baire);
    let generic = generic_element(&TranslationTarget::Baire)?;
    let reconstructed = Term::app(translated, generic);
    let mut mismatches = Vec::new();
    for alpha in points {
        let (direct, _) = apply_to_point(f, alpha, fuel)?;
        let (translated_value, _) = apply_to_point(&reconstructed, alpha, fuel)?;
        if direct != translated_value {
            mismatches.push(EquivMismatch {
                alpha: alpha.clone(),
                direct,
                translated: translated_value,
            });
        }
    }
    Ok(EquivalenceReport {
        f: f.clone(),
        points_checked: points.len() as u64,
        mismatches,
    })
}

/// Evaluate the derived modulus term of `f` at `alpha`. No minimality is
/// claimed: the result is a valid modulus, possibly an overestimate.
pub fn modulus_at(f: &Term, alpha: &Point, fuel: Option<u64>) -> Result<Nat, ContinuityError> {
    let m = modulus_term_checked(f)?;
    Ok(apply_to_point(&m, alpha, fuel)?.0)
}

/// Result of falsification-testing a claimed modulus `m` of `f` at `alpha`.
///
/// `verified` refers to the `m` that was passed in; `modulus_bb` (the
/// derived, object-language modulus) and `modulus_oracle` (the query-log
/// modulus) are included for comparison. `exhaustive` is set only when the
/// whole `{0..alphabet_max}^window` perturbation space was enumerated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusReport {
    pub f: Term,
    pub alpha: Point,
    pub modulus_bb: Nat,
    pub modulus_oracle: Nat,
    pub verified: bool,
    pub counterexample: Option<Point>,
    pub perturbations_tested: u64,
    pub exhaustive: bool,
}

/// Check `f(beta) = f(alpha)` for every `beta` agreeing with `alpha` below
/// `m`: exhaustively over the budget's alphabet on the window right above
/// `m` when that space fits the budget, then seeded random perturbations
/// over a wider window until the budget is spent. Failures are data in the
/// report, not errors.
pub fn verify_modulus(
    f: &Term,
    alpha: &Point,
    m: &Nat,
    budget: &VerifyBudget,
) -> Result<ModulusReport, ContinuityError> {
    let modulus_bb = modulus_at(f, alpha, budget.fuel)?;
    let modulus_oracle = oracle_modulus(f, alpha, budget.fuel)?;
    let (base_value, _) = apply_to_point(f, alpha, budget.fuel)?;
    let start = m
        .to_usize()
        .ok_or_else(|| ContinuityError::ModulusTooLarge { modulus: m.clone() })?;

    let mut tested: u64 = 0;
    let mut counterexample: Option<Point> = None;
    let mut exhaustive = false;

    let window = budget.window as usize;
    let space = (u128::from(budget.alphabet_max) + 1)
        .checked_pow(budget.window)
        .unwrap_or(u128::MAX);

    let agrees = |beta: &Point| -> Result<bool, ContinuityError> {
        let (value, _) = apply_to_point(f, beta, budget.fuel)?;
        Ok(value == base_value)
    };

    if space <= u128::from(budget.limit) {
        // Odometer over the window in lexicographic order, so the first
        // failure found is the least counterexample.
        let mut digits = vec![0u64; window];
        'enumerate: loop {
            let values: Vec<Nat> = digits.iter().map(|&d| Nat::from(d)).collect();
            let beta = alpha.with_window(start, &values);
            tested += 1;
            if !agrees(&beta)? {
                counterexample = Some(beta);
                break 'enumerate;
            }
            let mut pos = window;
            loop {
                if pos == 0 {
                    exhaustive = true;
                    break 'enumerate;
                }
                pos -= 1;
                if digits[pos] < budget.alphabet_max {
                    digits[pos] += 1;
                    break;
                }
                digits[pos] = 0;
            }
        }
    }

    if counterexample.is_none() {
        // Top up with seeded perturbations over a wider window and larger
        // values than the exhaustive pass.
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        let sample_window = window + 4;
        let value_hi = budget.alphabet_max.max(9);
        while tested < budget.limit {
            let values: Vec<Nat> = (0..sample_window)
                .map(|_| Nat::from(rng.gen_range(0..=value_hi)))
                .collect();
            let beta = alpha.with_window(start, &values);
            tested += 1;
            if !agrees(&beta)? {
                counterexample = Some(beta);
                break;
            }
        }
    }

    Ok(ModulusReport {
        f: f.clone(),
        alpha: alpha.clone(),
        modulus_bb,
        modulus_oracle,
        verified: counterexample.is_none(),
        counterexample,
        perturbations_tested: tested,
        exhaustive,
    })
}

/// Outcome of the uniform-continuity search. On success the function is
/// constant on each of the `2^uc_modulus` binary cylinders (verified
/// exhaustively); `max_depth_hit` is false on every successful report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UcReport {
    pub f: Term,
    pub uc_modulus: u32,
    pub prefixes_checked: u64,
    pub max_depth_hit: bool,
}

/// All binary prefixes of length `m` in lexicographic order.
fn binary_prefixes(m: u32) -> impl Iterator<Item = Vec<u8>> {
    (0..(1u64 << m)).map(move |i| {
        (0..m)
            .map(|j| ((i >> (m - 1 - j)) & 1) as u8)
            .collect::<Vec<u8>>()
    })
}

/// Iterative-deepening search for a uniform continuity modulus of `f`
/// restricted to binary sequences.
///
/// Depth `m` is accepted when the derived modulus stays within `m` at every
/// zero-extended representative (a cheap screen) and the exhaustive cylinder
/// check of [`verify_uc_modulus`] passes (the condition that is reported).
/// Returns the least accepted depth.
pub fn uc_modulus(f: &Term, max_depth: u32, fuel: Option<u64>) -> Result<UcReport, ContinuityError> {
    if max_depth > MAX_UC_DEPTH {
        return Err(ContinuityError::DepthTooLarge {
            given: max_depth,
            max: MAX_UC_DEPTH,
        });
    }
    let modulus = modulus_term_checked(f)?;
    for m in 0..=max_depth {
        let mut screened_out = false;
        for bits in binary_prefixes(m) {
            let representative = Point::from_bits(&bits);
            let (value, _) = apply_to_point(&modulus, &representative, fuel)?;
            if value > Nat::from(m) {
                screened_out = true;
                break;
            }
        }
        if screened_out {
            continue;
        }
        if verify_uc_modulus(f, m, fuel)? {
            return Ok(UcReport {
                f: f.clone(),
                uc_modulus: m,
                prefixes_checked: 1u64 << m,
                max_depth_hit: false,
            });
        }
    }
    Err(ContinuityError::MaxDepthExceeded { max_depth })
}

/// Exhaustively check that `m` is a uniform continuity modulus of `f` on
/// binary sequences: for every binary prefix of length `m`, all binary
/// extensions on a window sized by the evaluations' own query logs yield
/// the same value. Returns `false` when a cylinder is not constant, and
/// also when the required window outgrows an internal bound (verification
/// failed, not a continuity judgement).
pub fn verify_uc_modulus(f: &Term, m: u32, fuel: Option<u64>) -> Result<bool, ContinuityError> {
    if m > MAX_UC_DEPTH {
        return Err(ContinuityError::DepthTooLarge {
            given: m,
            max: MAX_UC_DEPTH,
        });
    }
    ensure_baire_functional(f)?;
    for bits in binary_prefixes(m) {
        let mut window: u32 = 0;
        loop {
            let mut needed: u32 = 0;
            let mut base_value: Option<Nat> = None;
            let mut constant = true;
            for extension in binary_prefixes(window) {
                let mut full = bits.clone();
                full.extend_from_slice(&extension);
                let point = Point::from_bits(&full);
                let (value, log) = apply_to_point(f, &point, fuel)?;
                match log.modulus().to_u32() {
                    Some(queried) => {
                        if queried > m + window {
                            needed = needed.max(queried - m);
                        }
                    }
                    // A query log this deep cannot be windowed.
                    None => return Ok(false),
                }
                match &base_value {
                    None => base_value = Some(value),
                    Some(b) => {
                        if *b != value {
                            constant = false;
                        }
                    }
                }
            }
            if needed > window {
                if needed > MAX_UC_WINDOW {
                    return Ok(false);
                }
                window = needed;
                continue;
            }
            if !constant {
                return Ok(false);
            }
            break;
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use crate::point::sample_points;

    const FUEL: Option<u64> = Some(DEFAULT_FUEL);

    fn nat(n: u64) -> Nat {
        Nat::from(n)
    }

    fn small_budget() -> VerifyBudget {
        VerifyBudget {
            limit: 400,
            ..VerifyBudget::default()
        }
    }

    #[test]
    fn equivalence_on_constants_and_projections() {
        let constant = parse("fun (a : N -> N) => 0").unwrap();
        let report = check_equivalence(&constant, &sample_points(1, 10), FUEL).unwrap();
        assert!(report.all_equal());

        let head = parse("fun (a : N -> N) => a 0").unwrap();
        let alpha = Point::from_values(&[9], 0);
        let (direct, _) = apply_to_point(&head, &alpha, FUEL).unwrap();
        assert_eq!(direct, nat(9));
        let report = check_equivalence(&head, &[alpha], FUEL).unwrap();
        assert!(report.all_equal());
        assert_eq!(report.points_checked, 1);
    }

    #[test]
    fn equivalence_through_the_recursor() {
        // rec (a 0) (fun k r => succ r) (a 1) adds a1 successors to a0
        let f = parse(
            "fun (a : N -> N) => rec[N] (a 0) (fun (k : N) (r : N) => succ r) (a 1)",
        )
        .unwrap();
        let alpha = Point::from_values(&[2, 3], 0);
        let (direct, _) = apply_to_point(&f, &alpha, FUEL).unwrap();
        assert_eq!(direct, nat(5));
        let report = check_equivalence(&f, &[alpha], FUEL).unwrap();
        assert!(report.all_equal());
    }

    #[test]
    fn equivalence_rejects_wrongly_typed_input() {
        let not_functional = parse("fun (x : N) => x").unwrap();
        assert!(matches!(
            check_equivalence(&not_functional, &[], FUEL),
            Err(ContinuityError::Translate(TranslateError::WrongSourceType { .. }))
        ));
    }

    #[test]
    fn derived_modulus_values() {
        let constant = parse("fun (a : N -> N) => 0").unwrap();
        for alpha in sample_points(2, 5) {
            assert_eq!(modulus_at(&constant, &alpha, FUEL).unwrap(), nat(0));
        }
        let head = parse("fun (a : N -> N) => a 0").unwrap();
        for alpha in sample_points(3, 5) {
            assert_eq!(modulus_at(&head, &alpha, FUEL).unwrap(), nat(1));
        }
        // Nested query: the derived modulus follows the value actually read.
        let nested = parse("fun (a : N -> N) => a (a 0)").unwrap();
        assert_eq!(modulus_at(&nested, &Point::constant(0), FUEL).unwrap(), nat(1));
        assert_eq!(modulus_at(&nested, &Point::constant(1), FUEL).unwrap(), nat(2));
        let bump = parse("fun (a : N -> N) => a (succ (a 0))").unwrap();
        assert_eq!(modulus_at(&bump, &Point::constant(0), FUEL).unwrap(), nat(2));
    }

    #[test]
    fn verify_accepts_valid_moduli() {
        let constant = parse("fun (a : N -> N) => 0").unwrap();
        let report =
            verify_modulus(&constant, &Point::constant(5), &nat(0), &small_budget()).unwrap();
        assert!(report.verified);
        assert!(report.counterexample.is_none());
        assert!(report.exhaustive);
        assert_eq!(report.modulus_bb, nat(0));
        assert_eq!(report.modulus_oracle, nat(0));

        let head = parse("fun (a : N -> N) => a 0").unwrap();
        let report =
            verify_modulus(&head, &Point::from_values(&[5], 0), &nat(1), &small_budget()).unwrap();
        assert!(report.verified);
        assert!(report.exhaustive);
        assert_eq!(report.perturbations_tested, 400);
    }

    #[test]
    fn verify_rejects_an_undersized_modulus() {
        // f reads index 1, so m = 1 pins only index 0 and must fail.
        let f = parse("fun (a : N -> N) => a 1").unwrap();
        let alpha = Point::constant(0);
        let report = verify_modulus(&f, &alpha, &nat(1), &small_budget()).unwrap();
        assert!(!report.verified);
        assert!(!report.exhaustive);
        let beta = report.counterexample.expect("counterexample present");
        assert_eq!(beta.value_at(&nat(0)), alpha.value_at(&nat(0)));
        assert_ne!(beta.value_at(&nat(1)), alpha.value_at(&nat(1)));
        // Lexicographically least failing window assignment: [0, 1, 0, 0].
        assert_eq!(beta.value_at(&nat(1)), nat(1));
    }

    #[test]
    fn verify_is_deterministic() {
        let f = parse("fun (a : N -> N) => a (a 0)").unwrap();
        let alpha = Point::from_values(&[1, 4], 2);
        let m = modulus_at(&f, &alpha, FUEL).unwrap();
        let first = verify_modulus(&f, &alpha, &m, &small_budget()).unwrap();
        let second = verify_modulus(&f, &alpha, &m, &small_budget()).unwrap();
        assert_eq!(first, second);
        assert!(first.verified);
    }

    #[test]
    fn uc_modulus_of_constants_and_projections() {
        let constant = parse("fun (a : N -> N) => 0").unwrap();
        let report = uc_modulus(&constant, 16, FUEL).unwrap();
        assert_eq!(report.uc_modulus, 0);
        assert_eq!(report.prefixes_checked, 1);
        assert!(!report.max_depth_hit);

        let proj2 = parse("fun (a : N -> N) => a 2").unwrap();
        let report = uc_modulus(&proj2, 16, FUEL).unwrap();
        assert_eq!(report.uc_modulus, 3);
        assert_eq!(report.prefixes_checked, 8);
    }

    #[test]
    fn uc_modulus_through_rec_driven_selection() {
        // reads index 0, then index 1 or 2 depending on what it saw
        let f = parse(
            "fun (a : N -> N) => rec[N] (a 1) (fun (k : N) (r : N) => a 2) (a 0)",
        )
        .unwrap();
        let report = uc_modulus(&f, 16, FUEL).unwrap();
        assert_eq!(report.uc_modulus, 3);
    }

    #[test]
    fn uc_search_reports_depth_exhaustion() {
        let proj2 = parse("fun (a : N -> N) => a 2").unwrap();
        assert!(matches!(
            uc_modulus(&proj2, 1, FUEL),
            Err(ContinuityError::MaxDepthExceeded { max_depth: 1 })
        ));
        assert!(matches!(
            uc_modulus(&proj2, MAX_UC_DEPTH + 1, FUEL),
            Err(ContinuityError::DepthTooLarge { .. })
        ));
    }

    #[test]
    fn uc_verifier_accepts_and_rejects() {
        let constant = parse("fun (a : N -> N) => 0").unwrap();
        assert_eq!(verify_uc_modulus(&constant, 0, FUEL), Ok(true));

        let proj2 = parse("fun (a : N -> N) => a 2").unwrap();
        assert_eq!(verify_uc_modulus(&proj2, 3, FUEL), Ok(true));
        assert_eq!(verify_uc_modulus(&proj2, 2, FUEL), Ok(false));
    }

    #[test]
    fn uc_verification_is_monotone_in_the_depth() {
        for src in [
            "fun (a : N -> N) => a 2",
            "fun (a : N -> N) => rec[N] (a 1) (fun (k : N) (r : N) => a 2) (a 0)",
        ] {
            let f = parse(src).unwrap();
            let m = uc_modulus(&f, 16, FUEL).unwrap().uc_modulus;
            assert_eq!(verify_uc_modulus(&f, m, FUEL), Ok(true));
            assert_eq!(verify_uc_modulus(&f, m + 1, FUEL), Ok(true));
            assert_eq!(verify_uc_modulus(&f, m + 2, FUEL), Ok(true));
        }
    }
}
