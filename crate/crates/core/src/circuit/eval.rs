use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Circuit, Node, Op, Rational, Semiring};
use crate::error::{Error, Result};

/// Evaluates the single output of `c` over semiring `s` at `x`.
pub fn evaluate(c: &Circuit, s: Semiring, x: &[Rational]) -> Result<Rational> {
    let out = c.output()?;
    let values = node_values(c, s, x)?;
    Ok(values[out].clone())
}

/// Evaluates every output of `c`.
pub fn evaluate_all(c: &Circuit, s: Semiring, x: &[Rational]) -> Result<Vec<Rational>> {
    let values = node_values(c, s, x)?;
    Ok(c.outputs().iter().map(|&o| values[o].clone()).collect())
}

fn node_values(c: &Circuit, s: Semiring, x: &[Rational]) -> Result<Vec<Rational>> {
    if x.len() != c.num_vars() {
        return Err(Error::ArityMismatch {
            expected: c.num_vars(),
            got: x.len(),
        });
    }
    for (i, v) in x.iter().enumerate() {
        check_domain(s, v).map_err(|m| Error::DomainError(format!("x{}: {m}", i + 1)))?;
    }
    let mut values: Vec<Rational> = Vec::with_capacity(c.nodes().len());
    for (id, node) in c.nodes().iter().enumerate() {
        let v = match node {
            Node::Input(var) | Node::Literal { var, negated: false } => x[*var].clone(),
            Node::Literal { var, negated: true } => {
                if s != Semiring::Boolean {
                    return Err(Error::DomainError(format!(
                        "negated literal at node {id} outside the Boolean semiring"
                    )));
                }
                Rational::one() - &x[*var]
            }
            Node::Const(v) => {
                check_domain(s, v)
                    .map_err(|m| Error::DomainError(format!("constant at node {id}: {m}")))?;
                v.clone()
            }
            Node::Gate { op, left, right } => s.apply(*op, &values[*left], &values[*right]),
        };
        values.push(v);
    }
    Ok(values)
}

fn check_domain(s: Semiring, v: &Rational) -> std::result::Result<(), String> {
    match s {
        Semiring::Boolean if !(v.is_zero() || v.is_one()) => Err(format!("{v} is not 0 or 1")),
        _ if v.is_negative() => Err(format!("{v} is negative")),
        _ => Ok(()),
    }
}

/// Fixed-width evaluation of arithmetic and tropical circuits at natural-number points.
///
/// Used by grid checks; `eval` returns `None` on overflow and the caller falls back to
/// exact rational evaluation.
pub(crate) struct NatEvaluator<'a> {
    circuit: &'a Circuit,
    semiring: Semiring,
    constants: Vec<Option<u128>>,
    scratch: Vec<u128>,
}

impl<'a> NatEvaluator<'a> {
    /// `None` when some constant is not a nonnegative integer or a negated literal is present.
    pub(crate) fn new(circuit: &'a Circuit, semiring: Semiring) -> Option<Self> {
        if semiring == Semiring::Boolean || !circuit.is_monotone() {
            return None;
        }
        let mut constants = vec![None; circuit.nodes().len()];
        for (id, node) in circuit.nodes().iter().enumerate() {
            if let Node::Const(v) = node {
                if !v.is_integer() || v.is_negative() {
                    return None;
                }
                constants[id] = Some(v.to_integer().to_u128()?);
            }
        }
        Some(NatEvaluator {
            circuit,
            semiring,
            constants,
            scratch: Vec::with_capacity(circuit.nodes().len()),
        })
    }

    pub(crate) fn eval(&mut self, x: &[u64]) -> Option<Vec<u128>> {
        self.scratch.clear();
        for (id, node) in self.circuit.nodes().iter().enumerate() {
            let v = match *node {
                Node::Input(var) | Node::Literal { var, .. } => x[var] as u128,
                Node::Const(_) => self.constants[id]?,
                Node::Gate { op, left, right } => {
                    let (a, b) = (self.scratch[left], self.scratch[right]);
                    match (self.semiring, op) {
                        (Semiring::Arithmetic, Op::Add) => a.checked_add(b)?,
                        (Semiring::Arithmetic, Op::Mul) => a.checked_mul(b)?,
                        (Semiring::Tropical, Op::Add) => a.min(b),
                        (Semiring::Tropical, Op::Mul) => a.checked_add(b)?,
                        (Semiring::Boolean, _) => unreachable!(),
                    }
                }
            };
            self.scratch.push(v);
        }
        Some(self.circuit.outputs().iter().map(|&o| self.scratch[o]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{integer, CircuitBuilder};

    fn xy_plus_z(s: Semiring) -> Circuit {
        let mut b = CircuitBuilder::new(s, 3);
        let (x, y, z) = (b.input(0), b.input(1), b.input(2));
        let xy = b.mul(x, y);
        let o = b.add(xy, z);
        b.build_single(o).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&i| integer(i)).collect()
    }

    #[test]
    fn same_circuit_three_semirings() {
        let c = xy_plus_z(Semiring::Arithmetic);
        assert_eq!(evaluate(&c, Semiring::Arithmetic, &ints(&[2, 3, 5])).unwrap(), integer(11));
        assert_eq!(evaluate(&c, Semiring::Tropical, &ints(&[2, 3, 5])).unwrap(), integer(5));
        assert_eq!(evaluate(&c, Semiring::Boolean, &ints(&[1, 1, 0])).unwrap(), integer(1));
    }

    #[test]
    fn arity_and_domain_errors() {
        let c = xy_plus_z(Semiring::Boolean);
        assert_eq!(
            evaluate(&c, Semiring::Boolean, &ints(&[1, 1])),
            Err(Error::ArityMismatch {
                expected: 3,
                got: 2
            })
        );
        assert!(matches!(
            evaluate(&c, Semiring::Boolean, &ints(&[2, 1, 0])),
            Err(Error::DomainError(_))
        ));
        assert!(matches!(
            evaluate(&c, Semiring::Tropical, &ints(&[-1, 1, 0])),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn boolean_rejects_non_binary_constants() {
        let mut b = CircuitBuilder::new(Semiring::Boolean, 1);
        let x = b.input(0);
        let k = b.constant(integer(2));
        let g = b.mul(x, k);
        let c = b.build_single(g).unwrap();
        assert!(matches!(
            evaluate(&c, Semiring::Boolean, &ints(&[1])),
            Err(Error::DomainError(_))
        ));
        assert_eq!(evaluate(&c, Semiring::Arithmetic, &ints(&[3])).unwrap(), integer(6));
    }

    #[test]
    fn negated_literals_evaluate_in_boolean() {
        let mut b = CircuitBuilder::new(Semiring::Boolean, 2);
        let x = b.input(0);
        let ny = b.negated(1);
        let g = b.mul(x, ny);
        let c = b.build_single(g).unwrap();
        assert_eq!(evaluate(&c, Semiring::Boolean, &ints(&[1, 0])).unwrap(), integer(1));
        assert_eq!(evaluate(&c, Semiring::Boolean, &ints(&[1, 1])).unwrap(), integer(0));
        assert!(evaluate(&c, Semiring::Arithmetic, &ints(&[1, 1])).is_err());
    }

    #[test]
    fn nat_evaluator_matches_exact_and_detects_overflow() {
        let c = xy_plus_z(Semiring::Arithmetic);
        let mut e = NatEvaluator::new(&c, Semiring::Arithmetic).unwrap();
        assert_eq!(e.eval(&[2, 3, 5]), Some(vec![11]));
        let mut t = NatEvaluator::new(&c, Semiring::Tropical).unwrap();
        assert_eq!(t.eval(&[2, 3, 5]), Some(vec![5]));

        let mut b = CircuitBuilder::new(Semiring::Arithmetic, 1);
        let mut g = b.input(0);
        for _ in 0..8 {
            g = b.mul(g, g);
        }
        let big = b.build_single(g).unwrap();
        let mut e = NatEvaluator::new(&big, Semiring::Arithmetic).unwrap();
        assert_eq!(e.eval(&[1]), Some(vec![1]));
        assert_eq!(e.eval(&[2]), None);
    }
}
