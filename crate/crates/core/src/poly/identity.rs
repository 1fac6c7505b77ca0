//! Identity testing of produced polynomials by evaluation on a full grid.
//!
//! Two polynomials whose individual degrees are at most `d` agree everywhere on
//! `{0, ..., d}^n` only if they are identical, so a grid check decides equality of
//! the produced polynomials of two monotone arithmetic circuits.

use rayon::prelude::*;

use crate::circuit::eval::NatEvaluator;
use crate::circuit::{evaluate, integer, Circuit, Node, Op, Rational, Semiring};
use crate::error::{Error, Result};
use crate::grid::{grid_len, grid_point};

/// Largest grid the identity test will enumerate.
pub const GRID_BUDGET: u64 = 10_000_000;

/// `2^(mul-depth)`, an a-priori bound on every individual degree of the produced
/// polynomial. Saturates at `u64::MAX`.
pub fn mul_depth_degree_bound(c: &Circuit) -> u64 {
    1u64.checked_shl(c.mul_depth() as u32).unwrap_or(u64::MAX)
}

/// Largest individual degree a produced monomial can reach, computed structurally:
/// per variable, addition takes the maximum and multiplication the sum.
pub fn individual_degree_bound(c: &Circuit) -> u64 {
    let n = c.num_vars();
    let mut deg: Vec<Vec<u64>> = Vec::with_capacity(c.nodes().len());
    for node in c.nodes() {
        let v = match node {
            Node::Input(i) | Node::Literal { var: i, .. } => {
                let mut v = vec![0; n];
                v[*i] = 1;
                v
            }
            Node::Const(_) => vec![0; n],
            Node::Gate { op, left, right } => deg[*left]
                .iter()
                .zip(&deg[*right])
                .map(|(&a, &b)| match op {
                    Op::Add => a.max(b),
                    Op::Mul => a.saturating_add(b),
                })
                .collect(),
        };
        deg.push(v);
    }
    c.outputs()
        .iter()
        .flat_map(|&o| deg[o].iter().copied())
        .max()
        .unwrap_or(0)
}

/// Whether two monotone arithmetic circuits produce the same polynomial, decided on
/// `{0, ..., d_bound}^n`. `d_bound` must bound every individual degree of both.
pub fn polynomial_identity_by_grid(c1: &Circuit, c2: &Circuit, d_bound: u64) -> Result<bool> {
    for c in [c1, c2] {
        c.require_semiring(Semiring::Arithmetic)?;
        c.require_monotone()?;
        c.output()?;
    }
    if c1.num_vars() != c2.num_vars() {
        return Err(Error::ArityMismatch {
            expected: c1.num_vars(),
            got: c2.num_vars(),
        });
    }
    let n = c1.num_vars();
    let base = d_bound
        .checked_add(1)
        .ok_or_else(|| Error::BudgetExceeded("degree bound too large".into()))?;
    let total = grid_len(base, n)
        .filter(|&t| t <= GRID_BUDGET)
        .ok_or_else(|| {
            Error::BudgetExceeded(format!(
                "grid {{0..{d_bound}}}^{n} exceeds {GRID_BUDGET} points"
            ))
        })?;

    let fast = NatEvaluator::new(c1, Semiring::Arithmetic).is_some()
        && NatEvaluator::new(c2, Semiring::Arithmetic).is_some();
    let exact = |p: &[u64]| -> Result<bool> {
        let x: Vec<Rational> = p.iter().map(|&v| integer(v as i64)).collect();
        Ok(evaluate(c1, Semiring::Arithmetic, &x)? == evaluate(c2, Semiring::Arithmetic, &x)?)
    };
    let mismatch = (0..total)
        .into_par_iter()
        .map_init(
            || {
                let evals = fast.then(|| {
                    (
                        NatEvaluator::new(c1, Semiring::Arithmetic).expect("checked"),
                        NatEvaluator::new(c2, Semiring::Arithmetic).expect("checked"),
                    )
                });
                (evals, vec![0u64; n])
            },
            |(evals, point), idx| -> Result<bool> {
                grid_point(idx, base, point);
                if let Some((e1, e2)) = evals {
                    if let (Some(a), Some(b)) = (e1.eval(point), e2.eval(point)) {
                        return Ok(a != b);
                    }
                }
                Ok(!exact(point)?)
            },
        )
        .find_any(|r| !matches!(r, Ok(false)));
    match mismatch {
        None => Ok(true),
        Some(Ok(_)) => Ok(false),
        Some(Err(e)) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitBuilder;

    #[test]
    fn distributivity_is_an_identity() {
        let mut b = CircuitBuilder::new(Semiring::Arithmetic, 2);
        let (x, y) = (b.input(0), b.input(1));
        let s = b.add(x, y);
        let o = b.mul(s, x);
        let c1 = b.build_single(o).unwrap();

        let mut b = CircuitBuilder::new(Semiring::Arithmetic, 2);
        let (x, y) = (b.input(0), b.input(1));
        let xx = b.mul(x, x);
        let yx = b.mul(y, x);
        let o = b.add(xx, yx);
        let c2 = b.build_single(o).unwrap();
        assert!(polynomial_identity_by_grid(&c1, &c2, 2).unwrap());
        assert_eq!(individual_degree_bound(&c1), 2);
        assert_eq!(mul_depth_degree_bound(&c1), 2);
    }

    #[test]
    fn coefficient_mismatch_is_detected() {
        let mut b = CircuitBuilder::new(Semiring::Arithmetic, 1);
        let x = b.input(0);
        let c1 = b.clone().build_single(x).unwrap();
        let o = b.add(x, x);
        let c2 = b.build_single(o).unwrap();
        assert!(!polynomial_identity_by_grid(&c1, &c2, 1).unwrap());
    }

    #[test]
    fn errors() {
        let mut b = CircuitBuilder::new(Semiring::Arithmetic, 30);
        let x = b.input(0);
        let c = b.build_single(x).unwrap();
        assert!(matches!(
            polynomial_identity_by_grid(&c, &c, 3),
            Err(Error::BudgetExceeded(_))
        ));
        let t = c.with_semiring(Semiring::Tropical);
        assert!(matches!(
            polynomial_identity_by_grid(&t, &t, 1),
            Err(Error::WrongSemiring { .. })
        ));
    }

    #[test]
    fn overflow_falls_back_to_exact_evaluation() {
        let mut b = CircuitBuilder::new(Semiring::Arithmetic, 1);
        let x = b.input(0);
        let mut g = x;
        for _ in 0..7 {
            g = b.mul(g, g);
        }
        let c1 = b.clone().build_single(g).unwrap();
        let h = b.add(g, x);
        let c2 = b.build_single(h).unwrap();
        let d = individual_degree_bound(&c1);
        assert_eq!(d, 128);
        assert!(polynomial_identity_by_grid(&c1, &c1, d).unwrap());
        assert!(!polynomial_identity_by_grid(&c1, &c2, d).unwrap());
    }
}
