//! Self-translations of the object language.
//!
//! A translation target fixes a point type `X`; the type translation sends
//! the base type to `X -> N` and is homomorphic on arrows and products.
//! Three targets are built in:
//!
//! - [`TranslationTarget::Baire`]: `X = N -> N`, so numbers become
//!   functionals `(N -> N) -> N` over an input sequence.
//! - [`TranslationTarget::BairePaired`]: the paired variant, where a number
//!   becomes a pair of functionals `(value, modulus)` and the modulus
//!   component tracks a continuity modulus of the value component. Taking
//!   the second projection of a translated functional applied to the
//!   paired generic element yields a closed, object-language modulus of
//!   continuity — see [`modulus_term`].
//! - [`TranslationTarget::NatId`]: `X = N`, whose generic element is the
//!   identity.
//!
//! Custom targets translate types and terms for any point type `X`, but
//! support the generic element only when the caller supplies one.
//!
//! All translated constants are generated as closed object-language terms,
//! never as host-language functions, so every derived artifact (in
//! particular the modulus term) is itself a program of the object language.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::syntax::{typecheck_closed, FiniteType, Term, TypeError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TranslationTarget {
    /// Point type `N -> N`; numbers become `(N -> N) -> N`.
    Baire,
    /// Point type `N -> N` with paired value/modulus components;
    /// numbers become `((N -> N) -> N) * ((N -> N) -> N)`.
    BairePaired,
    /// Point type `N`; numbers become `N -> N`.
    NatId,
    /// Arbitrary point type. Without a generic element the target supports
    /// translation only.
    Custom {
        base: FiniteType,
        generic: Option<Term>,
    },
}

impl TranslationTarget {
    /// The point type `X` of this target.
    pub fn point_type(&self) -> FiniteType {
        match self {
            TranslationTarget::Baire | TranslationTarget::BairePaired => FiniteType::baire(),
            TranslationTarget::NatId => FiniteType::Nat,
            TranslationTarget::Custom { base, .. } => base.clone(),
        }
    }

    fn paired(&self) -> bool {
        matches!(self, TranslationTarget::BairePaired)
    }

    fn describe(&self) -> &'static str {
        match self {
            TranslationTarget::Baire => "baire",
            TranslationTarget::BairePaired => "baire-paired",
            TranslationTarget::NatId => "nat-identity",
            TranslationTarget::Custom { .. } => "custom",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TranslateError {
    IllTypedSource(TypeError),
    WrongSourceType {
        expected: FiniteType,
        found: FiniteType,
    },
    /// The target has no generic element (custom target without one).
    UnsupportedTarget(String),
    /// A supplied generic element does not have type `X^X`.
    InvalidGeneric {
        expected: FiniteType,
        found: FiniteType,
    },
}

impl fmt::Display for TranslateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TranslateError::IllTypedSource(e) => write!(f, "ill-typed source term: {e}"),
            TranslateError::WrongSourceType { expected, found } => {
                write!(f, "source term has type {found}, expected {expected}")
            }
            TranslateError::UnsupportedTarget(what) => {
                write!(f, "target `{what}` has no generic element")
            }
            TranslateError::InvalidGeneric { expected, found } => {
                write!(f, "generic element has type {found}, expected {expected}")
            }
        }
    }
}

impl std::error::Error for TranslateError {}

impl From<TypeError> for TranslateError {
    fn from(e: TypeError) -> Self {
        TranslateError::IllTypedSource(e)
    }
}

/// Translate a type: base case per target, homomorphic on arrows, and
/// componentwise on products.
pub fn translate_type(ty: &FiniteType, target: &TranslationTarget) -> FiniteType {
    match ty {
        FiniteType::Nat => {
            let value = FiniteType::arrow(target.point_type(), FiniteType::Nat);
            if target.paired() {
                FiniteType::prod(value.clone(), value)
            } else {
                value
            }
        }
        FiniteType::Arrow(domain, codomain) => FiniteType::arrow(
            translate_type(domain, target),
            translate_type(codomain, target),
        ),
        FiniteType::Prod(left, right) => FiniteType::prod(
            translate_type(left, target),
            translate_type(right, target),
        ),
    }
}

// Shorthand used by the generated-term builders below.
use Term::{Fst, Snd, Succ, Var, Zero};

fn lam(domain: FiniteType, body: Term) -> Term {
    Term::lam(domain, body)
}

fn app(fun: Term, arg: Term) -> Term {
    Term::app(fun, arg)
}

fn app2(fun: Term, a: Term, b: Term) -> Term {
    Term::app2(fun, a, b)
}

/// Binary maximum as a closed term `N -> N -> N` built from `rec`:
/// `max m n = m + (n - m)` with truncated subtraction.
pub fn max_term() -> Term {
    static MAX: OnceLock<Term> = OnceLock::new();
    MAX.get_or_init(|| {
        let nat = FiniteType::Nat;
        // pred = rec 0 (fun k r => k)
        let pred = app2(Term::Rec(nat.clone()), Zero, lam(nat.clone(), lam(nat.clone(), Var(1))));
        // plus = fun x y => rec x (fun k r => succ r) y
        let plus = lam(
            nat.clone(),
            lam(
                nat.clone(),
                app(
                    app2(
                        Term::Rec(nat.clone()),
                        Var(1),
                        lam(nat.clone(), lam(nat.clone(), app(Succ, Var(0)))),
                    ),
                    Var(0),
                ),
            ),
        );
        // monus = fun x y => rec x (fun k r => pred r) y
        let monus = lam(
            nat.clone(),
            lam(
                nat.clone(),
                app(
                    app2(
                        Term::Rec(nat.clone()),
                        Var(1),
                        lam(nat.clone(), lam(nat.clone(), app(pred, Var(0)))),
                    ),
                    Var(0),
                ),
            ),
        );
        // max = fun m n => plus m (monus n m)
        lam(
            nat.clone(),
            lam(nat, app2(plus, Var(1), app2(monus, Var(0), Var(1)))),
        )
    })
    .clone()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum KeKind {
    Plain(FiniteType),
    Paired,
}

fn ke_kind(target: &TranslationTarget) -> KeKind {
    if target.paired() {
        KeKind::Paired
    } else {
        KeKind::Plain(target.point_type())
    }
}

/// The extension operator at type `rho`: a closed term of type
/// `(N -> rho^X) -> N^X -> rho^X` turning a function defined on numerals
/// into one defined on translated numbers. This is what makes the
/// translation of `rec` go through. Generated terms are memoized per
/// `(target, rho)`.
pub fn kleisli_ext(rho: &FiniteType, target: &TranslationTarget) -> Term {
    static CACHE: OnceLock<Mutex<HashMap<(KeKind, FiniteType), Term>>> = OnceLock::new();
    let key = (ke_kind(target), rho.clone());
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let built = build_ke(rho, target);
    cache.lock().unwrap().insert(key, built.clone());
    built
}

fn build_ke(rho: &FiniteType, target: &TranslationTarget) -> Term {
    let point = target.point_type();
    let nat_t = translate_type(&FiniteType::Nat, target);
    let rho_t = translate_type(rho, target);
    let arg_ty = FiniteType::arrow(FiniteType::Nat, rho_t.clone());
    match rho {
        FiniteType::Nat if !target.paired() => {
            // fun g f => fun p => g (f p) p
            lam(
                arg_ty,
                lam(
                    nat_t,
                    lam(point, app2(Var(2), app(Var(1), Var(0)), Var(0))),
                ),
            )
        }
        FiniteType::Nat => {
            // Paired base case: the value component applies g at the value
            // of f, and the modulus component keeps the larger of the two
            // candidate moduli.
            //   fun g f => pair
            //     (fun p => fst (g (fst f p)) p)
            //     (fun p => max (snd (g (fst f p)) p) (snd f p))
            let g_at_f = |depth_g: usize, depth_f: usize| {
                app(
                    Term::Var(depth_g),
                    app(app(Fst, Term::Var(depth_f)), Var(0)),
                )
            };
            let value_part = lam(
                point.clone(),
                app(app(Fst, g_at_f(2, 1)), Var(0)),
            );
            let modulus_part = lam(
                point,
                app2(
                    max_term(),
                    app(app(Snd, g_at_f(2, 1)), Var(0)),
                    app(app(Snd, Var(1)), Var(0)),
                ),
            );
            lam(arg_ty, lam(nat_t, Term::pair(value_part, modulus_part)))
        }
        FiniteType::Arrow(sigma, tau) => {
            // fun g f x => ke_tau (fun k => g k x) f
            let ke_tau = kleisli_ext(tau, target);
            let sigma_t = translate_type(sigma, target);
            lam(
                arg_ty,
                lam(
                    nat_t,
                    lam(
                        sigma_t,
                        app2(
                            ke_tau,
                            lam(FiniteType::Nat, app2(Var(3), Var(0), Var(1))),
                            Var(1),
                        ),
                    ),
                ),
            )
        }
        FiniteType::Prod(left, right) => {
            // fun g f => pair (ke_left (fun k => fst (g k)) f)
            //                 (ke_right (fun k => snd (g k)) f)
            let ke_left = kleisli_ext(left, target);
            let ke_right = kleisli_ext(right, target);
            lam(
                arg_ty,
                lam(
                    nat_t,
                    Term::pair(
                        app2(
                            ke_left,
                            lam(FiniteType::Nat, app(Fst, app(Var(2), Var(0)))),
                            Var(0),
                        ),
                        app2(
                            ke_right,
                            lam(FiniteType::Nat, app(Snd, app(Var(2), Var(0)))),
                            Var(0),
                        ),
                    ),
                ),
            )
        }
    }
}

/// Translate a term. Binder references carry over index-for-index, so the
/// variable mapping of the translation is the identity on indices.
///
/// The clauses are syntax directed; on an ill-typed input the output may be
/// ill-typed too. Use [`translate_term_checked`] to validate first.
pub fn translate_term(t: &Term, target: &TranslationTarget) -> Term {
    let point = target.point_type();
    match t {
        Term::Var(index) => Var(*index),
        Term::Lam(domain, body) => lam(
            translate_type(domain, target),
            translate_term(body, target),
        ),
        Term::App(fun, arg) => app(
            translate_term(fun, target),
            translate_term(arg, target),
        ),
        Term::Zero => {
            if target.paired() {
                // pair (fun p => 0) (fun p => 0): the constant queries
                // nothing, so its modulus is zero.
                Term::pair(lam(point.clone(), Zero), lam(point, Zero))
            } else {
                // fun p => 0
                lam(point, Zero)
            }
        }
        Term::Succ => {
            let nat_t = translate_type(&FiniteType::Nat, target);
            if target.paired() {
                // fun x => pair (fun p => succ (fst x p)) (snd x):
                // succ changes the value, not what was read.
                lam(
                    nat_t,
                    Term::pair(
                        lam(point, app(Succ, app(app(Fst, Var(1)), Var(0)))),
                        app(Snd, Var(0)),
                    ),
                )
            } else {
                // fun f p => succ (f p)
                lam(nat_t, lam(point, app(Succ, app(Var(1), Var(0)))))
            }
        }
        Term::Rec(rho) => {
            // fun a f => ke_rho (rec a (fun k => f (inject k)))
            // where `inject` embeds a numeral as a translated number.
            let nat_t = translate_type(&FiniteType::Nat, target);
            let rho_t = translate_type(rho, target);
            let inject = if target.paired() {
                // pair (fun p => k) (fun p => 0): a literal numeral has a
                // zero modulus.
                Term::pair(lam(point.clone(), Var(1)), lam(point, Zero))
            } else {
                // fun p => k
                lam(point, Var(1))
            };
            let step_ty = FiniteType::arrow(
                nat_t.clone(),
                FiniteType::arrow(rho_t.clone(), rho_t.clone()),
            );
            let rec_applied = app2(
                Term::Rec(rho_t.clone()),
                Var(1),
                lam(FiniteType::Nat, app(Var(1), inject)),
            );
            lam(
                rho_t,
                lam(step_ty, app(kleisli_ext(rho, target), rec_applied)),
            )
        }
        Term::Pair(fst, snd) => Term::pair(
            translate_term(fst, target),
            translate_term(snd, target),
        ),
        Term::Fst => Fst,
        Term::Snd => Snd,
    }
}

/// Typecheck a closed term, then translate it.
pub fn translate_term_checked(t: &Term, target: &TranslationTarget) -> Result<Term, TranslateError> {
    typecheck_closed(t)?;
    Ok(translate_term(t, target))
}

/// The generic element of the target: a closed term of type `N^X -> N^X`
/// standing in for "the input itself" inside translated terms.
pub fn generic_element(target: &TranslationTarget) -> Result<Term, TranslateError> {
    let nat_t = translate_type(&FiniteType::Nat, target);
    let point = target.point_type();
    match target {
        TranslationTarget::Baire => {
            // fun f p => p (f p)
            Ok(lam(
                nat_t,
                lam(point, app(Var(0), app(Var(1), Var(0)))),
            ))
        }
        TranslationTarget::BairePaired => {
            // fun f => pair (fun p => p (fst f p))
            //               (fun p => max (snd f p) (succ (fst f p)))
            // The modulus keeps the larger of the argument's own modulus and
            // one past the index the value component reads.
            let value_part = lam(
                point.clone(),
                app(Var(0), app(app(Fst, Var(1)), Var(0))),
            );
            let modulus_part = lam(
                point,
                app2(
                    max_term(),
                    app(app(Snd, Var(1)), Var(0)),
                    app(Succ, app(app(Fst, Var(1)), Var(0))),
                ),
            );
            Ok(lam(nat_t, Term::pair(value_part, modulus_part)))
        }
        TranslationTarget::NatId => Ok(lam(FiniteType::Nat, Var(0))),
        TranslationTarget::Custom { base, generic } => match generic {
            Some(g) => {
                let expected = translate_type(base, target);
                let found = typecheck_closed(g)?;
                if found == expected {
                    Ok(g.clone())
                } else {
                    Err(TranslateError::InvalidGeneric { expected, found })
                }
            }
            None => Err(TranslateError::UnsupportedTarget(
                target.describe().to_string(),
            )),
        },
    }
}

fn checked_baire_functional(f: &Term) -> Result<(), TranslateError> {
    let found = typecheck_closed(f)?;
    let expected = FiniteType::baire_functional();
    if found == expected {
        Ok(())
    } else {
        Err(TranslateError::WrongSourceType { expected, found })
    }
}

/// For a closed `f : (N -> N) -> N`, the closed term
/// `snd (f^paired generic)` of the same type: a modulus of continuity of
/// `f` expressed inside the object language.
pub fn modulus_term(f: &Term) -> Term {
    let translated = translate_term(f, &TranslationTarget::BairePaired);
    let generic =
        generic_element(&TranslationTarget::BairePaired).expect("built-in generic element");
    app(Snd, app(translated, generic))
}

/// Companion of [`modulus_term`]: the value component `fst (f^paired generic)`,
/// pointwise equal to `f`.
pub fn value_term(f: &Term) -> Term {
    let translated = translate_term(f, &TranslationTarget::BairePaired);
    let generic =
        generic_element(&TranslationTarget::BairePaired).expect("built-in generic element");
    app(Fst, app(translated, generic))
}

/// [`modulus_term`] with the source term validated first.
pub fn modulus_term_checked(f: &Term) -> Result<Term, TranslateError> {
    checked_baire_functional(f)?;
    Ok(modulus_term(f))
}

/// [`value_term`] with the source term validated first.
pub fn value_term_checked(f: &Term) -> Result<Term, TranslateError> {
    checked_baire_functional(f)?;
    Ok(value_term(f))
}
