//! Call-by-value environment machine with first-class oracle sequences.
//!
//! Evaluation is deterministic and left-to-right, which makes the query log
//! of an oracle well defined: applying an oracle value to a numeral records
//! the queried index before returning the sequence value. The log is owned
//! by one evaluation; separate evaluations never share state.
//!
//! An optional step budget (fuel) bounds runaway computations. The default
//! used by the command-line front end is [`DEFAULT_FUEL`].

use std::cell::{Cell, RefCell};
use std::fmt;
use std::rc::Rc;

use num_traits::{One, Zero};

use crate::point::Point;
use crate::syntax::Term;
use crate::Nat;

/// Default step budget.
pub const DEFAULT_FUEL: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// Evaluation got stuck; impossible on typechecked input, so this
    /// signals a bug in the caller or in a translation pass.
    EvalType(String),
    FuelExhausted { budget: u64 },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::EvalType(msg) => write!(f, "evaluation type error: {msg}"),
            EvalError::FuelExhausted { budget } => {
                write!(f, "evaluation exceeded the step budget of {budget}")
            }
        }
    }
}

impl std::error::Error for EvalError {}

/// Runtime environment: one value per enclosing binder. A persistent list,
/// so extending for a closure body is cheap.
#[derive(Debug, Clone, Default)]
pub struct Env(Option<Rc<EnvNode>>);

#[derive(Debug)]
struct EnvNode {
    value: Value,
    rest: Env,
}

impl Env {
    pub fn empty() -> Self {
        Env(None)
    }

    pub fn push(&self, value: Value) -> Env {
        Env(Some(Rc::new(EnvNode {
            value,
            rest: self.clone(),
        })))
    }

    pub fn lookup(&self, index: usize) -> Option<&Value> {
        let mut cur = self;
        let mut i = index;
        while let Some(node) = &cur.0 {
            if i == 0 {
                return Some(&node.value);
            }
            i -= 1;
            cur = &node.rest;
        }
        None
    }
}

/// An oracle sequence under evaluation: the point itself plus its query log
/// and a shadow counter of oracle applications. The counter is bumped by the
/// machine and the log by the oracle, so the two can be cross-checked.
#[derive(Debug)]
pub struct PointOracle {
    point: Point,
    queries: RefCell<Vec<Nat>>,
    applications: Cell<u64>,
}

impl PointOracle {
    pub fn new(point: Point) -> Self {
        PointOracle {
            point,
            queries: RefCell::new(Vec::new()),
            applications: Cell::new(0),
        }
    }

    fn note_application(&self) {
        self.applications.set(self.applications.get() + 1);
    }

    fn query(&self, index: &Nat) -> Nat {
        self.queries.borrow_mut().push(index.clone());
        self.point.value_at(index)
    }

    pub fn applications(&self) -> u64 {
        self.applications.get()
    }

    pub fn log(&self) -> QueryLog {
        QueryLog {
            queried: self.queries.borrow().clone(),
        }
    }
}

/// Indices queried during one evaluation, in query order (a multiset:
/// repeats are kept).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryLog {
    queried: Vec<Nat>,
}

impl QueryLog {
    pub fn indices(&self) -> &[Nat] {
        &self.queried
    }

    pub fn len(&self) -> usize {
        self.queried.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queried.is_empty()
    }

    pub fn max(&self) -> Option<&Nat> {
        self.queried.iter().max()
    }

    /// `0` for an empty log, otherwise one past the largest queried index.
    pub fn modulus(&self) -> Nat {
        match self.max() {
            None => Nat::zero(),
            Some(m) => m + Nat::one(),
        }
    }
}

/// Semantic values.
#[derive(Debug, Clone)]
pub enum Value {
    Nat(Nat),
    Closure(Env, Rc<Term>),
    External(Rc<PointOracle>),
    Pair(Rc<Value>, Rc<Value>),
    Prim(Prim),
}

/// Constants and their partial applications.
#[derive(Debug, Clone)]
pub enum Prim {
    Succ,
    Rec,
    Rec1(Rc<Value>),
    Rec2(Rc<Value>, Rc<Value>),
    Fst,
    Snd,
}

impl Value {
    pub fn as_nat(&self) -> Option<&Nat> {
        match self {
            Value::Nat(n) => Some(n),
            _ => None,
        }
    }

    fn describe(&self) -> &'static str {
        match self {
            Value::Nat(_) => "numeral",
            Value::Closure(..) => "closure",
            Value::External(_) => "oracle",
            Value::Pair(..) => "pair",
            Value::Prim(_) => "primitive",
        }
    }
}

/// The machine: carries the remaining fuel across one or more evaluations.
#[derive(Debug)]
pub struct Evaluator {
    budget: Option<u64>,
    remaining: Option<u64>,
}

impl Evaluator {
    /// `fuel = None` disables the step budget.
    pub fn new(fuel: Option<u64>) -> Self {
        Evaluator {
            budget: fuel,
            remaining: fuel,
        }
    }

    fn tick(&mut self) -> Result<(), EvalError> {
        if let Some(remaining) = &mut self.remaining {
            if *remaining == 0 {
                return Err(EvalError::FuelExhausted {
                    budget: self.budget.unwrap_or(0),
                });
            }
            *remaining -= 1;
        }
        Ok(())
    }

    pub fn eval(&mut self, t: &Term, env: &Env) -> Result<Value, EvalError> {
        self.tick()?;
        match t {
            Term::Var(index) => env
                .lookup(*index)
                .cloned()
                .ok_or_else(|| EvalError::EvalType(format!("unbound variable {index}"))),
            Term::Lam(_, body) => Ok(Value::Closure(env.clone(), Rc::new((**body).clone()))),
            Term::App(fun, arg) => {
                let vf = self.eval(fun, env)?;
                let va = self.eval(arg, env)?;
                self.apply(vf, va)
            }
            Term::Zero => Ok(Value::Nat(Nat::zero())),
            Term::Succ => Ok(Value::Prim(Prim::Succ)),
            Term::Rec(_) => Ok(Value::Prim(Prim::Rec)),
            Term::Pair(fst, snd) => {
                let vf = self.eval(fst, env)?;
                let vs = self.eval(snd, env)?;
                Ok(Value::Pair(Rc::new(vf), Rc::new(vs)))
            }
            Term::Fst => Ok(Value::Prim(Prim::Fst)),
            Term::Snd => Ok(Value::Prim(Prim::Snd)),
        }
    }

    pub fn apply(&mut self, fun: Value, arg: Value) -> Result<Value, EvalError> {
        self.tick()?;
        match fun {
            Value::Closure(env, body) => self.eval(&body, &env.push(arg)),
            Value::External(oracle) => match arg {
                Value::Nat(index) => {
                    oracle.note_application();
                    Ok(Value::Nat(oracle.query(&index)))
                }
                other => Err(EvalError::EvalType(format!(
                    "oracle applied to {}",
                    other.describe()
                ))),
            },
            Value::Prim(prim) => self.apply_prim(prim, arg),
            other => Err(EvalError::EvalType(format!(
                "applied non-function {}",
                other.describe()
            ))),
        }
    }

    fn apply_prim(&mut self, prim: Prim, arg: Value) -> Result<Value, EvalError> {
        match prim {
            Prim::Succ => match arg {
                Value::Nat(n) => Ok(Value::Nat(n + Nat::one())),
                other => Err(EvalError::EvalType(format!(
                    "succ applied to {}",
                    other.describe()
                ))),
            },
            Prim::Rec => Ok(Value::Prim(Prim::Rec1(Rc::new(arg)))),
            Prim::Rec1(base) => Ok(Value::Prim(Prim::Rec2(base, Rc::new(arg)))),
            Prim::Rec2(base, step) => match arg {
                // rec(a)(f)(0) = a; rec(a)(f)(succ n) = f(n)(rec(a)(f)(n)).
                // Unfolded iteratively from below.
                Value::Nat(n) => {
                    let mut acc = (*base).clone();
                    let mut k = Nat::zero();
                    while k < n {
                        let fk = self.apply((*step).clone(), Value::Nat(k.clone()))?;
                        acc = self.apply(fk, acc)?;
                        k += Nat::one();
                    }
                    Ok(acc)
                }
                other => Err(EvalError::EvalType(format!(
                    "rec applied to {}",
                    other.describe()
                ))),
            },
            Prim::Fst => match arg {
                Value::Pair(fst, _) => Ok((*fst).clone()),
                other => Err(EvalError::EvalType(format!(
                    "fst applied to {}",
                    other.describe()
                ))),
            },
            Prim::Snd => match arg {
                Value::Pair(_, snd) => Ok((*snd).clone()),
                other => Err(EvalError::EvalType(format!(
                    "snd applied to {}",
                    other.describe()
                ))),
            },
        }
    }
}

/// Evaluate a closed term.
pub fn eval_closed(t: &Term, fuel: Option<u64>) -> Result<Value, EvalError> {
    Evaluator::new(fuel).eval(t, &Env::empty())
}

/// Apply a closed term `f : (N -> N) -> N` to a fresh oracle over `point`;
/// returns the resulting numeral together with the completed query log.
pub fn apply_to_point(f: &Term, point: &Point, fuel: Option<u64>) -> Result<(Nat, QueryLog), EvalError> {
    let mut machine = Evaluator::new(fuel);
    let vf = machine.eval(f, &Env::empty())?;
    let oracle = Rc::new(PointOracle::new(point.clone()));
    let result = machine.apply(vf, Value::External(oracle.clone()))?;
    match result {
        Value::Nat(n) => {
            let log = oracle.log();
            debug_assert_eq!(
                oracle.applications() as usize,
                log.len(),
                "query log out of sync with oracle applications"
            );
            Ok((n, log))
        }
        other => Err(EvalError::EvalType(format!(
            "expected a numeral result, got {}",
            other.describe()
        ))),
    }
}

/// Instrumentation-based continuity modulus of `f` at `point`: `0` when the
/// evaluation queried nothing, otherwise one past the largest queried index.
pub fn oracle_modulus(f: &Term, point: &Point, fuel: Option<u64>) -> Result<Nat, EvalError> {
    let (_, log) = apply_to_point(f, point, fuel)?;
    Ok(log.modulus())
}

/// Evaluate a closed term of type `N` to its numeral.
pub fn eval_to_nat(t: &Term, fuel: Option<u64>) -> Result<Nat, EvalError> {
    match eval_closed(t, fuel)? {
        Value::Nat(n) => Ok(n),
        other => Err(EvalError::EvalType(format!(
            "expected a numeral, got {}",
            other.describe()
        ))),
    }
}
