use super::eliminate_constants;
use crate::boolfun::BooleanFunction;
use crate::circuit::{integer, retarget, Circuit, CircuitBuilder, Node, NodeId, Semiring};
use crate::error::{Error, Result};
use crate::poly::{produced_exponent_set, Caps};

/// Replaces every negated literal by the constant 1, keeping all other nodes.
pub fn replace_negated_literals(c: &Circuit) -> Result<Circuit> {
    c.require_semiring(Semiring::Boolean)?;
    let nodes = c
        .nodes()
        .iter()
        .map(|node| match node {
            Node::Literal { negated: true, .. } => Node::Const(integer(1)),
            Node::Literal { var, negated: false } => Node::Input(*var),
            other => other.clone(),
        })
        .collect();
    Circuit::from_parts(Semiring::Boolean, c.num_vars(), nodes, c.outputs().to_vec())
}

/// The monotone circuit `pos(F)`: negated literals become 1, then constants are removed.
///
/// Fails with `ConstantFunction` when `pos(F)` is constant.
pub fn positive_version(c: &Circuit) -> Result<Circuit> {
    eliminate_constants(&replace_negated_literals(c)?)
}

/// OR over the prime implicants of a monotone non-constant `f`, each as an AND chain.
pub fn or_of_prime_implicants(f: &BooleanFunction) -> Result<Circuit> {
    if !f.is_monotone() {
        return Err(Error::NonMonotone);
    }
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let mut b = CircuitBuilder::new(Semiring::Boolean, f.arity());
    let mut terms: Vec<NodeId> = Vec::new();
    for a in f.lowest_ones().iter() {
        let lits: Vec<NodeId> = a.support().into_iter().map(|i| b.input(i)).collect();
        terms.push(b.mul_all(lits).expect("prime implicants of a non-constant function"));
    }
    let out = b.add_all(terms).expect("non-constant function");
    b.build_single(out)
}

/// Boolean version of a constant-free arithmetic circuit whose produced exponent set is
/// exactly `Low(f)`. The result is syntactically read-1 and computes `f`.
pub fn arithmetic_to_read1(c: &Circuit, f: &BooleanFunction, caps: &Caps) -> Result<Circuit> {
    c.require_semiring(Semiring::Arithmetic)?;
    c.require_constant_free()?;
    if c.num_vars() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: c.num_vars(),
            got: f.arity(),
        });
    }
    if produced_exponent_set(c, caps)? != f.lowest_ones() {
        return Err(Error::ExponentSetNotLowF);
    }
    retarget(c, Semiring::Boolean)
}
