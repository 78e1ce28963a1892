//! Surface-syntax printer. [`crate::parser::parse`] accepts everything this
//! module emits, and parsing a printed term yields the original term back
//! (indices make this literal structural equality).

use crate::syntax::{FiniteType, Term};

const TYPE_PREC_ARROW: u8 = 0;
const TYPE_PREC_PROD: u8 = 1;
const TYPE_PREC_ATOM: u8 = 2;

pub fn pretty_type(ty: &FiniteType) -> String {
    let mut out = String::new();
    write_type(ty, TYPE_PREC_ARROW, &mut out);
    out
}

fn write_type(ty: &FiniteType, min_prec: u8, out: &mut String) {
    match ty {
        FiniteType::Nat => out.push('N'),
        FiniteType::Arrow(domain, codomain) => {
            let parens = min_prec > TYPE_PREC_ARROW;
            if parens {
                out.push('(');
            }
            write_type(domain, TYPE_PREC_PROD, out);
            out.push_str(" -> ");
            write_type(codomain, TYPE_PREC_ARROW, out);
            if parens {
                out.push(')');
            }
        }
        FiniteType::Prod(left, right) => {
            let parens = min_prec > TYPE_PREC_PROD;
            if parens {
                out.push('(');
            }
            write_type(left, TYPE_PREC_ATOM, out);
            out.push_str(" * ");
            write_type(right, TYPE_PREC_PROD, out);
            if parens {
                out.push(')');
            }
        }
    }
}

const TERM_PREC_LAM: u8 = 0;
const TERM_PREC_APP: u8 = 1;
const TERM_PREC_ATOM: u8 = 2;

pub fn pretty_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, 0, TERM_PREC_LAM, &mut out);
    out
}

/// Binder names by depth: a, b, ..., z, a1, b1, ... Keywords are all at
/// least two letters long, so single-letter names never collide.
fn binder_name(depth: usize) -> String {
    let letter = (b'a' + (depth % 26) as u8) as char;
    let round = depth / 26;
    if round == 0 {
        letter.to_string()
    } else {
        format!("{letter}{round}")
    }
}

fn write_term(t: &Term, depth: usize, min_prec: u8, out: &mut String) {
    if let Some(n) = t.as_numeral() {
        out.push_str(&n.to_string());
        return;
    }
    match t {
        Term::Var(index) => {
            debug_assert!(*index < depth, "printer given an open term");
            out.push_str(&binder_name(depth - 1 - index));
        }
        Term::Lam(..) => {
            let parens = min_prec > TERM_PREC_LAM;
            if parens {
                out.push('(');
            }
            out.push_str("fun");
            // Collapse nested lambdas into one binder list.
            let mut inner = t;
            let mut d = depth;
            while let Term::Lam(domain, body) = inner {
                out.push_str(" (");
                out.push_str(&binder_name(d));
                out.push_str(" : ");
                write_type(domain, TYPE_PREC_ARROW, out);
                out.push(')');
                d += 1;
                inner = body;
            }
            out.push_str(" => ");
            write_term(inner, d, TERM_PREC_LAM, out);
            if parens {
                out.push(')');
            }
        }
        Term::App(fun, arg) => {
            let parens = min_prec > TERM_PREC_APP;
            if parens {
                out.push('(');
            }
            write_term(fun, depth, TERM_PREC_APP, out);
            out.push(' ');
            write_term(arg, depth, TERM_PREC_ATOM, out);
            if parens {
                out.push(')');
            }
        }
        Term::Zero => out.push('0'),
        Term::Succ => out.push_str("succ"),
        Term::Rec(result) => {
            out.push_str("rec[");
            write_type(result, TYPE_PREC_ARROW, out);
            out.push(']');
        }
        Term::Pair(fst, snd) => {
            let parens = min_prec > TERM_PREC_APP;
            if parens {
                out.push('(');
            }
            out.push_str("pair ");
            write_term(fst, depth, TERM_PREC_ATOM, out);
            out.push(' ');
            write_term(snd, depth, TERM_PREC_ATOM, out);
            if parens {
                out.push(')');
            }
        }
        Term::Fst => out.push_str("fst"),
        Term::Snd => out.push_str("snd"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::FiniteType as T;

    #[test]
    fn prints_zero() {
        assert_eq!(pretty_term(&Term::Zero), "0");
    }

    #[test]
    fn prints_head_function() {
        let t = Term::lam(T::baire(), Term::app(Term::Var(0), Term::Zero));
        assert_eq!(pretty_term(&t), "fun (a : N -> N) => a 0");
    }

    #[test]
    fn resugars_numerals() {
        assert_eq!(pretty_term(&Term::numeral(3)), "3");
    }

    #[test]
    fn partial_succ_chain_stays_explicit() {
        let t = Term::lam(T::Nat, Term::app(Term::Succ, Term::app(Term::Succ, Term::Var(0))));
        assert_eq!(pretty_term(&t), "fun (a : N) => succ (succ a)");
    }

    #[test]
    fn arrow_is_right_associative() {
        let ty = T::arrow(T::baire(), T::Nat);
        assert_eq!(pretty_type(&ty), "(N -> N) -> N");
        let ty = T::arrow(T::Nat, T::baire());
        assert_eq!(pretty_type(&ty), "N -> N -> N");
    }

    #[test]
    fn product_binds_tighter_than_arrow() {
        let ty = T::arrow(T::prod(T::Nat, T::Nat), T::Nat);
        assert_eq!(pretty_type(&ty), "N * N -> N");
        let ty = T::prod(T::Nat, T::arrow(T::Nat, T::Nat));
        assert_eq!(pretty_type(&ty), "N * (N -> N)");
    }

    #[test]
    fn collapses_binder_chains() {
        let t = Term::lam(
            T::Nat,
            Term::lam(T::Nat, Term::app(Term::Succ, Term::Var(0))),
        );
        assert_eq!(pretty_term(&t), "fun (a : N) (b : N) => succ b");
    }

    #[test]
    fn application_groups_left() {
        // rec[N] 0 succ prints without parens; argument applications keep theirs
        let t = Term::app2(Term::Rec(T::Nat), Term::Zero, Term::Succ);
        assert_eq!(pretty_term(&t), "rec[N] 0 succ");
        let u = Term::lam(
            T::baire(),
            Term::app(Term::Var(0), Term::app(Term::Var(0), Term::Zero)),
        );
        assert_eq!(pretty_term(&u), "fun (a : N -> N) => a (a 0)");
    }
}
