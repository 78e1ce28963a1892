//! Concrete elements of the input space `N -> N`.
//!
//! A [`Point`] is a finite prefix plus a total tail rule, so it is defined on
//! every index, can be printed and re-parsed exactly, and supports exhaustive
//! perturbation in the verification harnesses.
//!
//! Literal syntax: `[a0,a1,...;const c]` or `[a0,...;cycle p0,p1,...]`.
//! The prefix may be empty, as in `[;const 0]`.

use std::fmt;

use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::Nat;

/// Value rule beyond the explicit prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    Constant(Nat),
    /// Repeats forever; the period is nonempty by construction.
    Cyclic(Vec<Nat>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    prefix: Vec<Nat>,
    tail: Tail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointError {
    EmptyCycle,
    Syntax { offset: usize, message: String },
}

impl fmt::Display for PointError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointError::EmptyCycle => write!(f, "cyclic tail needs at least one value"),
            PointError::Syntax { offset, message } => {
                write!(f, "bad point literal at byte {offset}: {message}")
            }
        }
    }
}

impl std::error::Error for PointError {}

impl Point {
    pub fn new(prefix: Vec<Nat>, tail: Tail) -> Result<Self, PointError> {
        if let Tail::Cyclic(period) = &tail {
            if period.is_empty() {
                return Err(PointError::EmptyCycle);
            }
        }
        Ok(Point { prefix, tail })
    }

    /// The everywhere-`c` sequence.
    pub fn constant(c: u64) -> Self {
        Point {
            prefix: Vec::new(),
            tail: Tail::Constant(Nat::from(c)),
        }
    }

    /// Short prefix of small values followed by a constant tail.
    pub fn from_values(values: &[u64], tail_constant: u64) -> Self {
        Point {
            prefix: values.iter().map(|&v| Nat::from(v)).collect(),
            tail: Tail::Constant(Nat::from(tail_constant)),
        }
    }

    pub fn prefix(&self) -> &[Nat] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// The sequence value at index `i`; total on all naturals.
    pub fn value_at(&self, i: &Nat) -> Nat {
        if let Some(iu) = i.to_usize() {
            if iu < self.prefix.len() {
                return self.prefix[iu].clone();
            }
        }
        match &self.tail {
            Tail::Constant(c) => c.clone(),
            Tail::Cyclic(period) => {
                let offset = i - Nat::from(self.prefix.len());
                let idx = (offset % Nat::from(period.len()))
                    .to_usize()
                    .expect("cycle index fits usize");
                period[idx].clone()
            }
        }
    }

    fn value_at_usize(&self, i: usize) -> Nat {
        self.value_at(&Nat::from(i))
    }

    /// A point equal to `self` everywhere except on the window
    /// `[start, start + values.len())`, which takes `values`.
    ///
    /// The representation prefix is extended to cover the window; a cyclic
    /// tail is rotated so the sequence beyond the window is unchanged.
    pub fn with_window(&self, start: usize, values: &[Nat]) -> Point {
        let keep = self.prefix.len().max(start + values.len());
        let mut prefix: Vec<Nat> = (0..keep).map(|i| self.value_at_usize(i)).collect();
        for (j, v) in values.iter().enumerate() {
            prefix[start + j] = v.clone();
        }
        let tail = match &self.tail {
            Tail::Constant(c) => Tail::Constant(c.clone()),
            Tail::Cyclic(period) => {
                let shift = (keep - self.prefix.len()) % period.len();
                let mut rotated = period[shift..].to_vec();
                rotated.extend_from_slice(&period[..shift]);
                Tail::Cyclic(rotated)
            }
        };
        Point { prefix, tail }
    }

    /// A binary point: the given bits followed by zeros.
    pub fn from_bits(bits: &[u8]) -> Point {
        Point {
            prefix: bits.iter().map(|&b| Nat::from(b)).collect(),
            tail: Tail::Constant(Nat::from(0u32)),
        }
    }

    /// Parse the literal syntax `[a0,...;const c]` / `[a0,...;cycle p0,...]`.
    pub fn parse(s: &str) -> Result<Point, PointError> {
        let syntax = |offset: usize, message: &str| PointError::Syntax {
            offset,
            message: message.to_string(),
        };
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .ok_or_else(|| syntax(0, "expected `[`"))?
            .strip_suffix(']')
            .ok_or_else(|| syntax(t.len(), "expected closing `]`"))?;
        let semi = inner
            .find(';')
            .ok_or_else(|| syntax(t.len(), "expected `;` before the tail rule"))?;
        let (prefix_part, tail_part) = (&inner[..semi], &inner[semi + 1..]);
        let prefix = parse_nat_list(prefix_part).map_err(|m| syntax(1, &m))?;
        let tail_part = tail_part.trim();
        let tail = if let Some(rest) = tail_part.strip_prefix("const") {
            let values = parse_nat_list(rest).map_err(|m| syntax(semi + 2, &m))?;
            if values.len() != 1 {
                return Err(syntax(semi + 2, "`const` takes exactly one value"));
            }
            Tail::Constant(values.into_iter().next().unwrap())
        } else if let Some(rest) = tail_part.strip_prefix("cycle") {
            let values = parse_nat_list(rest).map_err(|m| syntax(semi + 2, &m))?;
            if values.is_empty() {
                return Err(PointError::EmptyCycle);
            }
            Tail::Cyclic(values)
        } else {
            return Err(syntax(semi + 2, "expected `const` or `cycle`"));
        };
        Ok(Point { prefix, tail })
    }
}

fn parse_nat_list(s: &str) -> Result<Vec<Nat>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|chunk| {
            let chunk = chunk.trim();
            chunk
                .parse::<Nat>()
                .map_err(|_| format!("`{chunk}` is not a natural number"))
        })
        .collect()
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.prefix.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ";")?;
        match &self.tail {
            Tail::Constant(c) => write!(f, "const {c}")?,
            Tail::Cyclic(period) => {
                write!(f, "cycle ")?;
                for (i, v) in period.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
            }
        }
        write!(f, "]")
    }
}

/// Deterministic stream of test points: short prefixes of small values with
/// constant or cyclic tails. Same seed, same points.
pub fn sample_points(seed: u64, count: usize) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=8usize);
            let prefix: Vec<Nat> = (0..len).map(|_| Nat::from(rng.gen_range(0u64..=9))).collect();
            let tail = if rng.gen_bool(0.5) {
                Tail::Constant(Nat::from(rng.gen_range(0u64..=3)))
            } else {
                let period_len = rng.gen_range(1..=3usize);
                Tail::Cyclic(
                    (0..period_len)
                        .map(|_| Nat::from(rng.gen_range(0u64..=9)))
                        .collect(),
                )
            };
            Point { prefix, tail }
        })
        .collect()
}
