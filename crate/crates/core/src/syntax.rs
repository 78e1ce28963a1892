//! Finite types, terms and the typechecker.
//!
//! Terms use de Bruijn indices: `Var(0)` refers to the innermost enclosing
//! binder. Numerals have no constructor of their own; the parser elaborates
//! literals into `succ`-towers over [`Term::Zero`], and the printer re-sugars
//! such towers back into decimal.

use std::fmt;

/// Simple types over the base type `N` of natural numbers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FiniteType {
    Nat,
    Arrow(Box<FiniteType>, Box<FiniteType>),
    Prod(Box<FiniteType>, Box<FiniteType>),
}

impl FiniteType {
    pub fn arrow(domain: FiniteType, codomain: FiniteType) -> Self {
        FiniteType::Arrow(Box::new(domain), Box::new(codomain))
    }

    pub fn prod(left: FiniteType, right: FiniteType) -> Self {
        FiniteType::Prod(Box::new(left), Box::new(right))
    }

    /// The type `N -> N` of input sequences.
    pub fn baire() -> Self {
        Self::arrow(FiniteType::Nat, FiniteType::Nat)
    }

    /// The type `(N -> N) -> N` of the functionals under analysis.
    pub fn baire_functional() -> Self {
        Self::arrow(Self::baire(), FiniteType::Nat)
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::pretty::pretty_type(self))
    }
}

/// Terms of the object language.
///
/// `Rec(rho)` is the primitive recursor at result type `rho`, with type
/// `rho -> (N -> rho -> rho) -> N -> rho`. `Fst` and `Snd` are projection
/// constants; the typechecker only accepts them applied directly to a term
/// of product type, since a bare projection has no unique simple type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    Lam(FiniteType, Box<Term>),
    App(Box<Term>, Box<Term>),
    Zero,
    Succ,
    Rec(FiniteType),
    Pair(Box<Term>, Box<Term>),
    Fst,
    Snd,
}

impl Term {
    pub fn lam(domain: FiniteType, body: Term) -> Self {
        Term::Lam(domain, Box::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Self {
        Term::App(Box::new(fun), Box::new(arg))
    }

    pub fn app2(fun: Term, a: Term, b: Term) -> Self {
        Term::app(Term::app(fun, a), b)
    }

    pub fn pair(fst: Term, snd: Term) -> Self {
        Term::Pair(Box::new(fst), Box::new(snd))
    }

    /// The numeral `n` as a `succ`-tower over `Zero`, built iteratively.
    pub fn numeral(n: u64) -> Self {
        let mut t = Term::Zero;
        for _ in 0..n {
            t = Term::app(Term::Succ, t);
        }
        t
    }

    /// Decimal value of a saturated `succ`-tower, if this term is one.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n: u64 = 0;
        let mut cur = self;
        loop {
            match cur {
                Term::Zero => return Some(n),
                Term::App(f, a) if **f == Term::Succ => {
                    n = n.checked_add(1)?;
                    cur = a;
                }
                _ => return None,
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::pretty::pretty_term(self))
    }
}

/// Typing context: one entry per enclosing binder, outermost first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TypingContext(Vec<FiniteType>);

impl TypingContext {
    pub fn empty() -> Self {
        TypingContext(Vec::new())
    }

    pub fn from_types(types: Vec<FiniteType>) -> Self {
        TypingContext(types)
    }

    /// Type of the binder referenced by de Bruijn index `index`.
    pub fn lookup(&self, index: usize) -> Option<&FiniteType> {
        let len = self.0.len();
        if index < len {
            Some(&self.0[len - 1 - index])
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// One step into a subterm, used to report where an error occurred.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathSeg {
    Body,
    Fun,
    Arg,
    PairFst,
    PairSnd,
}

impl PathSeg {
    fn label(self) -> &'static str {
        match self {
            PathSeg::Body => "body",
            PathSeg::Fun => "fun",
            PathSeg::Arg => "arg",
            PathSeg::PairFst => "fst",
            PathSeg::PairSnd => "snd",
        }
    }
}

/// Path from the root of the checked term to an offending subterm.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermPath(pub Vec<PathSeg>);

impl fmt::Display for TermPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let mut first = true;
        for seg in &self.0 {
            if !first {
                f.write_str(".")?;
            }
            f.write_str(seg.label())?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeError {
    UnboundVariable {
        index: usize,
        depth: usize,
        path: TermPath,
    },
    TypeMismatch {
        expected: FiniteType,
        found: FiniteType,
        path: TermPath,
    },
    NotAFunction {
        found: FiniteType,
        path: TermPath,
    },
    NotAProduct {
        found: FiniteType,
        path: TermPath,
    },
    UnappliedProjection {
        path: TermPath,
    },
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeError::UnboundVariable { index, depth, path } => write!(
                f,
                "unbound variable {index} (binder depth {depth}) at {path}"
            ),
            TypeError::TypeMismatch {
                expected,
                found,
                path,
            } => write!(f, "type mismatch at {path}: expected {expected}, found {found}"),
            TypeError::NotAFunction { found, path } => {
                write!(f, "applied non-function of type {found} at {path}")
            }
            TypeError::NotAProduct { found, path } => {
                write!(f, "projection from non-product of type {found} at {path}")
            }
            TypeError::UnappliedProjection { path } => write!(
                f,
                "bare projection at {path}: fst/snd must be applied to a term of product type"
            ),
        }
    }
}

impl std::error::Error for TypeError {}

/// Type of `t` under `ctx`. Pure: same inputs give the same output.
pub fn typecheck(ctx: &TypingContext, t: &Term) -> Result<FiniteType, TypeError> {
    let mut scope = ctx.0.clone();
    let mut path = Vec::new();
    check(&mut scope, t, &mut path)
}

/// Type of a closed term.
pub fn typecheck_closed(t: &Term) -> Result<FiniteType, TypeError> {
    typecheck(&TypingContext::empty(), t)
}

fn check(
    scope: &mut Vec<FiniteType>,
    t: &Term,
    path: &mut Vec<PathSeg>,
) -> Result<FiniteType, TypeError> {
    match t {
        Term::Var(index) => {
            let len = scope.len();
            if *index < len {
                Ok(scope[len - 1 - index].clone())
            } else {
                Err(TypeError::UnboundVariable {
                    index: *index,
                    depth: len,
                    path: TermPath(path.clone()),
                })
            }
        }
        Term::Lam(domain, body) => {
            scope.push(domain.clone());
            path.push(PathSeg::Body);
            let codomain = check(scope, body, path);
            path.pop();
            scope.pop();
            Ok(FiniteType::arrow(domain.clone(), codomain?))
        }
        Term::App(fun, arg) => match **fun {
            // Projections typecheck only against the concrete product type
            // of their argument.
            Term::Fst | Term::Snd => {
                path.push(PathSeg::Arg);
                let arg_ty = check(scope, arg, path)?;
                path.pop();
                match arg_ty {
                    FiniteType::Prod(left, right) => {
                        if **fun == Term::Fst {
                            Ok(*left)
                        } else {
                            Ok(*right)
                        }
                    }
                    other => Err(TypeError::NotAProduct {
                        found: other,
                        path: TermPath(path.clone()),
                    }),
                }
            }
            _ => {
                path.push(PathSeg::Fun);
                let fun_ty = check(scope, fun, path)?;
                path.pop();
                match fun_ty {
                    FiniteType::Arrow(domain, codomain) => {
                        path.push(PathSeg::Arg);
                        let arg_ty = check(scope, arg, path)?;
                        path.pop();
                        if arg_ty == *domain {
                            Ok(*codomain)
                        } else {
                            let mut p = path.clone();
                            p.push(PathSeg::Arg);
                            Err(TypeError::TypeMismatch {
                                expected: *domain,
                                found: arg_ty,
                                path: TermPath(p),
                            })
                        }
                    }
                    other => {
                        let mut p = path.clone();
                        p.push(PathSeg::Fun);
                        Err(TypeError::NotAFunction {
                            found: other,
                            path: TermPath(p),
                        })
                    }
                }
            }
        },
        Term::Zero => Ok(FiniteType::Nat),
        Term::Succ => Ok(FiniteType::arrow(FiniteType::Nat, FiniteType::Nat)),
        Term::Rec(result) => {
            // rec : rho -> (N -> rho -> rho) -> N -> rho
            let step = FiniteType::arrow(
                FiniteType::Nat,
                FiniteType::arrow(result.clone(), result.clone()),
            );
            Ok(FiniteType::arrow(
                result.clone(),
                FiniteType::arrow(step, FiniteType::arrow(FiniteType::Nat, result.clone())),
            ))
        }
        Term::Pair(fst, snd) => {
            path.push(PathSeg::PairFst);
            let left = check(scope, fst, path);
            path.pop();
            path.push(PathSeg::PairSnd);
            let right = check(scope, snd, path);
            path.pop();
            Ok(FiniteType::prod(left?, right?))
        }
        Term::Fst | Term::Snd => Err(TypeError::UnappliedProjection {
            path: TermPath(path.clone()),
        }),
    }
}
