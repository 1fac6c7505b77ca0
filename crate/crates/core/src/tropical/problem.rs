//! 0/1 minimization problems `f_A(x) = min_{a∈A} ⟨a, x⟩`.
//!
//! File format: `vars <n>` followed by one feasible solution per line given as its
//! support, e.g. `1 3 5` (variables numbered from 1). `#` starts a comment.

use std::fmt::Write;

use num_traits::Zero;

use crate::boolfun::{is_antichain, support_mask, BooleanFunction};
use crate::circuit::Rational;
use crate::error::{Error, Result};
use crate::poly::{ExpVec, ExpVecSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinProblem {
    n: usize,
    solutions: ExpVecSet,
}

impl MinProblem {
    /// Requires a nonempty antichain of nonzero 0/1 vectors.
    pub fn new(n: usize, solutions: ExpVecSet) -> Result<MinProblem> {
        if solutions.is_empty() {
            return Err(Error::EmptySet);
        }
        for a in solutions.iter() {
            if !a.is_binary() {
                return Err(Error::InvalidArgument(format!(
                    "feasible solution {a} is not a 0/1 vector"
                )));
            }
            if a.is_zero() {
                return Err(Error::InvalidArgument("zero vector as feasible solution".into()));
            }
            if a.support().last().is_some_and(|&i| i >= n) {
                return Err(Error::InvalidArgument(format!(
                    "feasible solution {a} exceeds arity {n}"
                )));
            }
        }
        if !is_antichain(&solutions) {
            return Err(Error::InvalidArgument("feasible solutions are not an antichain".into()));
        }
        Ok(MinProblem { n, solutions })
    }

    /// The problem on the lowest ones of a monotone function.
    pub fn from_function(f: &BooleanFunction) -> Result<MinProblem> {
        if !f.is_monotone() {
            return Err(Error::NonMonotone);
        }
        MinProblem::new(f.arity(), f.lowest_ones())
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn solutions(&self) -> &ExpVecSet {
        &self.solutions
    }

    /// Largest support size `m`.
    pub fn max_support(&self) -> usize {
        self.solutions.iter().map(|a| a.support_len()).max().unwrap_or(0)
    }

    /// The monotone Boolean function `⋁_{a∈A} ⋀_{i∈supp a} x_i`.
    pub fn boolean_function(&self) -> Result<BooleanFunction> {
        BooleanFunction::from_supports(self.n, &self.solutions)
    }

    pub(crate) fn support_masks(&self) -> Result<Vec<u64>> {
        self.solutions.iter().map(|a| support_mask(a, self.n)).collect()
    }

    /// Exact `min_{a∈A} ⟨a, x⟩`.
    pub fn solve_brute_force(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        if let Some(i) = x.iter().position(|v| v < &Rational::zero()) {
            return Err(Error::DomainError(format!("x{} is negative", i + 1)));
        }
        Ok(self
            .solutions
            .iter()
            .map(|a| a.support().iter().map(|&i| &x[i]).sum::<Rational>())
            .min()
            .expect("nonempty"))
    }
}

pub fn print_problem(p: &MinProblem) -> String {
    let mut s = format!("vars {}\n", p.n);
    for a in p.solutions.iter() {
        let line: Vec<String> = a.support().iter().map(|i| (i + 1).to_string()).collect();
        writeln!(s, "{}", line.join(" ")).unwrap();
    }
    s
}

pub fn parse_problem(text: &str) -> Result<MinProblem> {
    let mut n: Option<usize> = None;
    let mut vecs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let err = |message: String| Error::Parse { line, message };
        let tokens: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens[0] == "vars" {
            let [_, v] = tokens[..] else {
                return Err(err("expected `vars <n>`".into()));
            };
            if n.is_some() {
                return Err(err("duplicate `vars` header".into()));
            }
            n = Some(v.parse().map_err(|_| err(format!("`{v}` is not a natural number")))?);
            continue;
        }
        let arity = n.ok_or_else(|| err("solution before `vars` header".into()))?;
        let mut support = Vec::with_capacity(tokens.len());
        for t in tokens {
            let v: usize = t.parse().map_err(|_| err(format!("`{t}` is not a variable")))?;
            if v == 0 || v > arity {
                return Err(err(format!("variable {v} outside 1..={arity}")));
            }
            support.push(v - 1);
        }
        vecs.push(ExpVec::from_support(support));
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        message: "missing `vars` header".into(),
    })?;
    MinProblem::new(n, ExpVecSet::from_vecs(n, vecs))
}
