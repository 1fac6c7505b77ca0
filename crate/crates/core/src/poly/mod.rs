//! Syntactic production: exponent-vector sets and formal polynomials of circuits.
//!
//! Production ignores the semiring tag: inputs produce `{e_i}`, constants the
//! zero vector, addition gates take unions and multiplication gates Minkowski
//! sums. Nothing cancels.

mod brute;
mod expvec;
mod identity;

use num_bigint::BigUint;
use num_traits::{One, Signed};

use crate::circuit::{Circuit, Node, NodeId, Op};
use crate::error::{Error, Result};

pub use brute::{brute_force_expand, brute_force_expand_truncated};
pub use expvec::{Caps, ExpVec, ExpVecSet, FormalPolynomial};
pub use identity::{
    individual_degree_bound, mul_depth_degree_bound, polynomial_identity_by_grid, GRID_BUDGET,
};

/// Bottom-up fold over the nodes feeding the outputs. Intermediate values are dropped
/// as soon as their last consumer has been computed.
pub(crate) fn fold_outputs<T: Clone>(
    c: &Circuit,
    mut leaf: impl FnMut(NodeId, &Node) -> Result<T>,
    mut gate: impl FnMut(Op, &T, &T) -> Result<T>,
) -> Result<Vec<T>> {
    let n = c.nodes().len();
    let mut uses = vec![0usize; n];
    let mut live = vec![false; n];
    for &o in c.outputs() {
        uses[o] += 1;
        live[o] = true;
    }
    for id in (0..n).rev() {
        if let (true, Node::Gate { left, right, .. }) = (live[id], c.node(id)) {
            live[*left] = true;
            live[*right] = true;
            uses[*left] += 1;
            uses[*right] += 1;
        }
    }
    let mut values: Vec<Option<T>> = vec![None; n];
    for (id, node) in c.nodes().iter().enumerate() {
        if !live[id] {
            continue;
        }
        let v = match node {
            Node::Gate { op, left, right } => {
                let v = gate(
                    *op,
                    values[*left].as_ref().expect("operand computed"),
                    values[*right].as_ref().expect("operand computed"),
                )?;
                for operand in [*left, *right] {
                    uses[operand] -= 1;
                    if uses[operand] == 0 {
                        values[operand] = None;
                    }
                }
                v
            }
            _ => leaf(id, node)?,
        };
        values[id] = Some(v);
    }
    Ok(c
        .outputs()
        .iter()
        .map(|&o| values[o].clone().expect("output computed"))
        .collect())
}

/// Produced exponent set `Exp(F)` of the single output.
pub fn produced_exponent_set(c: &Circuit, caps: &Caps) -> Result<ExpVecSet> {
    c.output()?;
    Ok(produced_exponent_sets(c, caps)?.remove(0))
}

/// Produced exponent sets of every output.
pub fn produced_exponent_sets(c: &Circuit, caps: &Caps) -> Result<Vec<ExpVecSet>> {
    c.require_monotone()?;
    let n = c.num_vars();
    fold_outputs(
        c,
        |_, node| {
            let v = match node {
                Node::Input(i) | Node::Literal { var: i, .. } => ExpVec::unit(*i),
                _ => ExpVec::zero(),
            };
            let mut s = ExpVecSet::new(n);
            if caps.admits(&v) {
                s.insert(v);
            }
            Ok(s)
        },
        |op, a, b| match op {
            Op::Add => {
                let u = a.union(b);
                if u.len() > caps.max_set_size {
                    Err(Error::CapExceeded(caps.max_set_size))
                } else {
                    Ok(u)
                }
            }
            Op::Mul => a.minkowski_sum(b, caps),
        },
    )
}

/// Produced polynomial `P_F` of the single output, with integer coefficients.
///
/// Constants must be positive integers; a Boolean circuit is read as its arithmetic
/// version.
pub fn produced_polynomial(c: &Circuit, caps: &Caps) -> Result<FormalPolynomial> {
    c.output()?;
    Ok(produced_polynomials(c, caps)?.remove(0))
}

/// Produced polynomials of every output.
pub fn produced_polynomials(c: &Circuit, caps: &Caps) -> Result<Vec<FormalPolynomial>> {
    c.require_monotone()?;
    let n = c.num_vars();
    fold_outputs(
        c,
        |_, node| {
            let p = match node {
                Node::Input(i) | Node::Literal { var: i, .. } => FormalPolynomial::variable(n, *i),
                Node::Const(v) => FormalPolynomial::constant(n, positive_integer(v)?),
                Node::Gate { .. } => unreachable!(),
            };
            Ok(match caps.max_degree {
                Some(d) => p.truncate_to_degree(d),
                None => p,
            })
        },
        |op, a, b| match op {
            Op::Add => {
                let s = a.add(b);
                if s.len() > caps.max_set_size {
                    Err(Error::CapExceeded(caps.max_set_size))
                } else {
                    Ok(s)
                }
            }
            Op::Mul => a.mul(b, caps),
        },
    )
}

pub(crate) fn positive_integer(v: &crate::circuit::Rational) -> Result<BigUint> {
    if !v.is_integer() || !v.is_positive() {
        return Err(Error::NonIntegralConstant(v.to_string()));
    }
    v.to_integer()
        .to_biguint()
        .ok_or_else(|| Error::NonIntegralConstant(v.to_string()))
}

/// Largest individual degree occurring in a polynomial's monomials.
pub fn max_individual_degree(p: &FormalPolynomial) -> u64 {
    p.terms().keys().map(|e| e.max_entry()).max().unwrap_or(0)
}

/// `n!` as a `u64`, `None` on overflow.
pub fn factorial(n: u64) -> Option<u64> {
    (1..=n).try_fold(1u64, |acc, i| acc.checked_mul(i))
}

/// Binomial coefficient `C(n, k)` computed exactly.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u8);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
