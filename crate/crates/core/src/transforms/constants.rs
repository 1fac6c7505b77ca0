use num_traits::{One, Zero};

use crate::circuit::{Circuit, CircuitBuilder, Node, NodeId, Op, Semiring};
use crate::error::{Error, Result};

#[derive(Clone, Copy)]
enum Value {
    Known(bool),
    At(NodeId),
}

/// Removes Boolean constants with `1∧x = x`, `0∧x = 0`, `1∨x = 1`, `0∨x = x`.
pub fn eliminate_constants(c: &Circuit) -> Result<Circuit> {
    c.require_semiring(Semiring::Boolean)?;
    let out = c.output()?;
    let mut b = CircuitBuilder::new(Semiring::Boolean, c.num_vars());
    let mut values: Vec<Value> = Vec::with_capacity(c.nodes().len());
    for (id, node) in c.nodes().iter().enumerate() {
        let v = match node {
            Node::Input(i) => Value::At(b.input(*i)),
            Node::Literal { var, negated } => Value::At(b.literal(*var, *negated)),
            Node::Const(k) if k.is_zero() => Value::Known(false),
            Node::Const(k) if k.is_one() => Value::Known(true),
            Node::Const(k) => {
                return Err(Error::DomainError(format!(
                    "constant {k} at node {id} is not Boolean"
                )))
            }
            Node::Gate { op, left, right } => match (op, values[*left], values[*right]) {
                (Op::Add, Value::Known(true), _) | (Op::Add, _, Value::Known(true)) => {
                    Value::Known(true)
                }
                (Op::Mul, Value::Known(false), _) | (Op::Mul, _, Value::Known(false)) => {
                    Value::Known(false)
                }
                (_, Value::Known(_), other) | (_, other, Value::Known(_)) => other,
                (op, Value::At(l), Value::At(r)) => Value::At(b.gate(*op, l, r)),
            },
        };
        values.push(v);
    }
    match values[out] {
        Value::Known(_) => Err(Error::ConstantFunction),
        Value::At(id) => Ok(b.build_single(id)?.compact()),
    }
}
