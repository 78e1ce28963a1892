//! Shared corpus and comparison helpers for the integration suites.

use tcont::eval::DEFAULT_FUEL;
use tcont::{apply_to_point, parse, FiniteType, Point, Term};

pub const FUEL: Option<u64> = Some(DEFAULT_FUEL);

/// Closed functionals `(N -> N) -> N` exercised by every suite.
pub const CORPUS: &[(&str, &str)] = &[
    ("const0", "fun (a : N -> N) => 0"),
    ("const7", "fun (a : N -> N) => 7"),
    ("head", "fun (a : N -> N) => a 0"),
    ("head_twice", "fun (a : N -> N) => a (a 0)"),
    ("head_thrice", "fun (a : N -> N) => a (a (a 0))"),
    ("bump_head", "fun (a : N -> N) => a (succ (a 0))"),
    ("proj1", "fun (a : N -> N) => a 1"),
    ("proj2", "fun (a : N -> N) => a 2"),
    ("proj3", "fun (a : N -> N) => a 3"),
    ("proj4", "fun (a : N -> N) => a 4"),
    ("proj5", "fun (a : N -> N) => a 5"),
    ("succ_proj3", "fun (a : N -> N) => succ (a 3)"),
    (
        "rec_copy",
        "fun (a : N -> N) => rec[N] 0 (fun (k : N) (r : N) => succ r) (a 0)",
    ),
    (
        "rec_add",
        "fun (a : N -> N) => rec[N] (a 0) (fun (k : N) (r : N) => succ r) (a 1)",
    ),
    (
        "rec_iterate",
        "fun (a : N -> N) => rec[N] 0 (fun (k : N) (r : N) => a r) (a 0)",
    ),
    (
        "rec_double_arg",
        "fun (a : N -> N) => a (rec[N] 0 (fun (k : N) (r : N) => succ (succ r)) 3)",
    ),
    (
        "rec_select",
        "fun (a : N -> N) => rec[N] (a 1) (fun (k : N) (r : N) => a 2) (a 0)",
    ),
    (
        "rec_pred",
        "fun (a : N -> N) => rec[N] (a 3) (fun (k : N) (r : N) => k) (a 0)",
    ),
    (
        "rec_sum3",
        "fun (a : N -> N) => rec[N] 0 (fun (k : N) (r : N) => rec[N] r (fun (j : N) (s : N) => succ s) (a k)) 3",
    ),
    (
        "rec_fun_compose",
        "fun (a : N -> N) => rec[N -> N] a (fun (k : N) (g : N -> N) => fun (x : N) => a (g x)) 2 0",
    ),
    (
        "rec_fun_iter",
        "fun (a : N -> N) => rec[N -> N] (fun (x : N) => x) (fun (k : N) (g : N -> N) => fun (x : N) => g (a x)) (a 0) 1",
    ),
    ("pair_fst", "fun (a : N -> N) => fst (pair (a 1) (a 4))"),
    (
        "pair_snd",
        "fun (a : N -> N) => snd (pair (a 0) (succ (a 2)))",
    ),
    (
        "let_add",
        "let add = fun (x : N) (y : N) => rec[N] x (fun (k : N) (r : N) => succ r) y;\nfun (a : N -> N) => add (a 0) (a 2)",
    ),
];

pub fn corpus() -> Vec<(&'static str, Term)> {
    CORPUS
        .iter()
        .map(|(name, src)| (*name, parse(src).unwrap_or_else(|e| panic!("{name}: {e}"))))
        .collect()
}

/// Result types of every `rec` occurrence in a term.
pub fn rec_result_types(t: &Term) -> Vec<FiniteType> {
    let mut out = Vec::new();
    collect_recs(t, &mut out);
    out
}

fn collect_recs(t: &Term, out: &mut Vec<FiniteType>) {
    match t {
        Term::Rec(rho) => out.push(rho.clone()),
        Term::Lam(_, body) => collect_recs(body, out),
        Term::App(fun, arg) => {
            collect_recs(fun, out);
            collect_recs(arg, out);
        }
        Term::Pair(fst, snd) => {
            collect_recs(fst, out);
            collect_recs(snd, out);
        }
        _ => {}
    }
}

/// Closed terms of the translated number type `(N -> N) -> N`, used as
/// sampled semantic arguments.
pub fn translated_number_samples() -> Vec<Term> {
    [
        "fun (p : N -> N) => 0",
        "fun (p : N -> N) => 4",
        "fun (p : N -> N) => p 0",
        "fun (p : N -> N) => p 2",
    ]
    .iter()
    .map(|src| parse(src).unwrap())
    .collect()
}

/// Assert that two closed terms of the translated type of `rho` are
/// extensionally equal: numerals compare at every point, functions compare
/// after feeding sampled arguments.
pub fn assert_ext_equal(rho: &FiniteType, lhs: &Term, rhs: &Term, points: &[Point], label: &str) {
    match rho {
        FiniteType::Nat => {
            for alpha in points {
                let (l, _) = apply_to_point(lhs, alpha, FUEL)
                    .unwrap_or_else(|e| panic!("{label}: left side failed at {alpha}: {e}"));
                let (r, _) = apply_to_point(rhs, alpha, FUEL)
                    .unwrap_or_else(|e| panic!("{label}: right side failed at {alpha}: {e}"));
                assert_eq!(l, r, "{label}: disagreement at {alpha}");
            }
        }
        FiniteType::Arrow(sigma, tau) if **sigma == FiniteType::Nat => {
            for arg in translated_number_samples() {
                assert_ext_equal(
                    tau,
                    &Term::app(lhs.clone(), arg.clone()),
                    &Term::app(rhs.clone(), arg),
                    points,
                    label,
                );
            }
        }
        other => panic!("{label}: no extensional comparison at type {other}"),
    }
}
