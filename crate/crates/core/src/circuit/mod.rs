//! The shared circuit DAG: nodes, semiring tags, construction and validation.
//!
//! A [`Circuit`] is an immutable list of nodes in topological order. Every gate
//! has fan-in two and refers only to earlier nodes; `left == right` is allowed
//! and models a pair of parallel edges. The semiring tag records how `Add` and
//! `Mul` gates are interpreted, but the node structure itself is
//! semiring-agnostic, which is what makes the produced exponent set a property
//! of the circuit alone.

pub(crate) mod eval;
mod text;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use eval::{evaluate, evaluate_all};
pub use text::{parse_circuit, print_circuit};

pub type NodeId = usize;
pub type Rational = BigRational;

/// The three semirings a circuit can be read over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Semiring {
    /// `(∨, ∧)` over `{0, 1}`, neutral `1`.
    Boolean,
    /// `(+, ×)` over nonnegative rationals, neutral `1`.
    Arithmetic,
    /// `(min, +)` over nonnegative rationals, neutral `0`.
    Tropical,
}

impl Semiring {
    pub const ALL: [Semiring; 3] = [Semiring::Boolean, Semiring::Arithmetic, Semiring::Tropical];

    pub fn name(self) -> &'static str {
        match self {
            Semiring::Boolean => "boolean",
            Semiring::Arithmetic => "arithmetic",
            Semiring::Tropical => "tropical",
        }
    }

    pub fn from_name(s: &str) -> Option<Semiring> {
        match s.to_ascii_lowercase().as_str() {
            "boolean" | "bool" => Some(Semiring::Boolean),
            "arithmetic" | "arith" => Some(Semiring::Arithmetic),
            "tropical" | "trop" => Some(Semiring::Tropical),
            _ => None,
        }
    }

    /// The multiplicative neutral element.
    pub fn one(self) -> Rational {
        match self {
            Semiring::Boolean | Semiring::Arithmetic => Rational::one(),
            Semiring::Tropical => Rational::zero(),
        }
    }

    pub fn add(self, a: &Rational, b: &Rational) -> Rational {
        match self {
            Semiring::Boolean => bool_value(!a.is_zero() || !b.is_zero()),
            Semiring::Arithmetic => a + b,
            Semiring::Tropical => a.min(b).clone(),
        }
    }

    pub fn mul(self, a: &Rational, b: &Rational) -> Rational {
        match self {
            Semiring::Boolean => bool_value(!a.is_zero() && !b.is_zero()),
            Semiring::Arithmetic => a * b,
            Semiring::Tropical => a + b,
        }
    }

    pub fn apply(self, op: Op, a: &Rational, b: &Rational) -> Rational {
        match op {
            Op::Add => self.add(a, b),
            Op::Mul => self.mul(a, b),
        }
    }
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn bool_value(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Builds a rational from an integer numerator and denominator.
pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn integer(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Add,
    Mul,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Input(usize),
    Const(Rational),
    /// DeMorgan input literal; `negated: false` behaves exactly like `Input`.
    Literal { var: usize, negated: bool },
    Gate { op: Op, left: NodeId, right: NodeId },
}

impl Node {
    /// Variable index of an input or literal node.
    pub fn var(&self) -> Option<usize> {
        match *self {
            Node::Input(v) | Node::Literal { var: v, .. } => Some(v),
            _ => None,
        }
    }

    pub fn is_gate(&self) -> bool {
        matches!(self, Node::Gate { .. })
    }
}

/// A violated structural invariant, tied to the offending node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    CycleOrForwardRef { node: NodeId, operand: NodeId },
    VarOutOfRange { node: NodeId, var: usize },
    NonMonotoneLiteral { node: NodeId },
    NegativeConstant { node: NodeId },
    NoOutputs,
    OutputOutOfRange { output: NodeId },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::CycleOrForwardRef { node, operand } => {
                write!(f, "node {node} references node {operand} which does not precede it")
            }
            Diagnostic::VarOutOfRange { node, var } => {
                write!(f, "node {node} uses variable index {var} outside the circuit arity")
            }
            Diagnostic::NonMonotoneLiteral { node } => {
                write!(f, "node {node} is a negated literal in a monotone circuit")
            }
            Diagnostic::NegativeConstant { node } => write!(f, "node {node} holds a negative constant"),
            Diagnostic::NoOutputs => f.write_str("circuit has no outputs"),
            Diagnostic::OutputOutOfRange { output } => write!(f, "output {output} is not a node"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    semiring: Semiring,
    num_vars: usize,
    nodes: Vec<Node>,
    outputs: Vec<NodeId>,
}

impl Circuit {
    /// Assembles a circuit and checks every structural invariant.
    pub fn from_parts(
        semiring: Semiring,
        num_vars: usize,
        nodes: Vec<Node>,
        outputs: Vec<NodeId>,
    ) -> Result<Circuit> {
        let c = Circuit::from_parts_unchecked(semiring, num_vars, nodes, outputs);
        let diagnostics = validate(&c);
        if diagnostics.is_empty() {
            Ok(c)
        } else {
            Err(Error::InvalidCircuit(diagnostics))
        }
    }

    /// Assembles a circuit without validation; see [`validate`].
    pub fn from_parts_unchecked(
        semiring: Semiring,
        num_vars: usize,
        nodes: Vec<Node>,
        outputs: Vec<NodeId>,
    ) -> Circuit {
        Circuit {
            semiring,
            num_vars,
            nodes,
            outputs,
        }
    }

    pub fn semiring(&self) -> Semiring {
        self.semiring
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn outputs(&self) -> &[NodeId] {
        &self.outputs
    }

    /// The single output node; fails for multi-output circuits.
    pub fn output(&self) -> Result<NodeId> {
        match self.outputs.as_slice() {
            [o] => Ok(*o),
            other => Err(Error::MultipleOutputs(other.len())),
        }
    }

    /// Number of gates, the circuit size.
    pub fn size(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_gate()).count()
    }

    pub fn count_gates(&self, op: Op) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, Node::Gate { op: o, .. } if *o == op))
            .count()
    }

    pub fn is_monotone(&self) -> bool {
        !self
            .nodes
            .iter()
            .any(|n| matches!(n, Node::Literal { negated: true, .. }))
    }

    pub fn is_constant_free(&self) -> bool {
        !self.nodes.iter().any(|n| matches!(n, Node::Const(_)))
    }

    /// Longest number of `Mul` gates along an input-output path.
    pub fn mul_depth(&self) -> usize {
        let mut depth = vec![0usize; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            if let Node::Gate { op, left, right } = *node {
                let d = depth[left].max(depth[right]);
                depth[id] = if op == Op::Mul { d + 1 } else { d };
            }
        }
        self.outputs.iter().map(|&o| depth[o]).max().unwrap_or(0)
    }

    /// Same node structure read over another semiring.
    pub fn with_semiring(&self, semiring: Semiring) -> Circuit {
        Circuit {
            semiring,
            ..self.clone()
        }
    }

    /// Same nodes with a different output list.
    pub fn with_outputs(&self, outputs: Vec<NodeId>) -> Result<Circuit> {
        Circuit::from_parts(self.semiring, self.num_vars, self.nodes.clone(), outputs)
    }

    /// Keeps only the nodes reachable from the outputs, renumbering densely.
    pub fn compact(&self) -> Circuit {
        let mut live = vec![false; self.nodes.len()];
        for &o in &self.outputs {
            live[o] = true;
        }
        for id in (0..self.nodes.len()).rev() {
            if let (true, Node::Gate { left, right, .. }) = (live[id], &self.nodes[id]) {
                live[*left] = true;
                live[*right] = true;
            }
        }
        let mut map = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for (id, node) in self.nodes.iter().enumerate() {
            if !live[id] {
                continue;
            }
            map[id] = nodes.len();
            nodes.push(match node {
                Node::Gate { op, left, right } => Node::Gate {
                    op: *op,
                    left: map[*left],
                    right: map[*right],
                },
                other => other.clone(),
            });
        }
        Circuit {
            semiring: self.semiring,
            num_vars: self.num_vars,
            nodes,
            outputs: self.outputs.iter().map(|&o| map[o]).collect(),
        }
    }

    pub(crate) fn require_semiring(&self, expected: Semiring) -> Result<()> {
        if self.semiring == expected {
            Ok(())
        } else {
            Err(Error::WrongSemiring {
                expected: expected.name(),
                found: self.semiring.name(),
            })
        }
    }

    pub(crate) fn require_monotone(&self) -> Result<()> {
        if self.is_monotone() {
            Ok(())
        } else {
            Err(Error::NonMonotone)
        }
    }

    pub(crate) fn require_constant_free(&self) -> Result<()> {
        if self.is_constant_free() {
            Ok(())
        } else {
            Err(Error::HasConstants)
        }
    }
}

/// Lists every violated structural invariant. Empty means the circuit is well formed.
///
/// Negated literals are only meaningful in Boolean (DeMorgan) circuits; arithmetic and
/// tropical circuits are monotone by definition and report `NonMonotoneLiteral`.
pub fn validate(c: &Circuit) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (id, node) in c.nodes.iter().enumerate() {
        match node {
            Node::Input(v) | Node::Literal { var: v, .. } if *v >= c.num_vars => {
                out.push(Diagnostic::VarOutOfRange { node: id, var: *v });
            }
            Node::Literal { negated: true, .. } if c.semiring != Semiring::Boolean => {
                out.push(Diagnostic::NonMonotoneLiteral { node: id });
            }
            Node::Const(v) if v.is_negative() => out.push(Diagnostic::NegativeConstant { node: id }),
            Node::Gate { left, right, .. } => {
                if *left >= id {
                    out.push(Diagnostic::CycleOrForwardRef { node: id, operand: *left });
                }
                if *right >= id && right != left {
                    out.push(Diagnostic::CycleOrForwardRef { node: id, operand: *right });
                }
            }
            _ => {}
        }
    }
    if c.outputs.is_empty() {
        out.push(Diagnostic::NoOutputs);
    }
    for &o in &c.outputs {
        if o >= c.nodes.len() {
            out.push(Diagnostic::OutputOutOfRange { output: o });
        }
    }
    out
}

/// Converts a monotone constant-free circuit to another semiring.
///
/// The node structure is untouched, so the size and the produced exponent set are
/// preserved.
pub fn retarget(c: &Circuit, target: Semiring) -> Result<Circuit> {
    c.require_constant_free()?;
    c.require_monotone()?;
    Ok(c.with_semiring(target))
}

/// Incremental construction of circuits. Input nodes are shared per variable.
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    semiring: Semiring,
    num_vars: usize,
    nodes: Vec<Node>,
    inputs: Vec<Option<NodeId>>,
    literals: Vec<Option<NodeId>>,
}

impl CircuitBuilder {
    pub fn new(semiring: Semiring, num_vars: usize) -> Self {
        CircuitBuilder {
            semiring,
            num_vars,
            nodes: Vec::new(),
            inputs: vec![None; num_vars],
            literals: vec![None; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    /// Appends a raw node without sharing.
    pub fn push(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn input(&mut self, var: usize) -> NodeId {
        assert!(var < self.num_vars, "variable {var} out of range");
        if let Some(id) = self.inputs[var] {
            return id;
        }
        let id = self.push(Node::Input(var));
        self.inputs[var] = Some(id);
        id
    }

    /// Negated input literal `x̄_var`.
    pub fn negated(&mut self, var: usize) -> NodeId {
        assert!(var < self.num_vars, "variable {var} out of range");
        if let Some(id) = self.literals[var] {
            return id;
        }
        let id = self.push(Node::Literal { var, negated: true });
        self.literals[var] = Some(id);
        id
    }

    pub fn literal(&mut self, var: usize, negated: bool) -> NodeId {
        if negated {
            self.negated(var)
        } else {
            self.input(var)
        }
    }

    pub fn constant(&mut self, value: Rational) -> NodeId {
        self.push(Node::Const(value))
    }

    pub fn gate(&mut self, op: Op, left: NodeId, right: NodeId) -> NodeId {
        self.push(Node::Gate { op, left, right })
    }

    pub fn add(&mut self, left: NodeId, right: NodeId) -> NodeId {
        self.gate(Op::Add, left, right)
    }

    pub fn mul(&mut self, left: NodeId, right: NodeId) -> NodeId {
        self.gate(Op::Mul, left, right)
    }

    /// Left-deep chain of `op` over `ids`; `None` for an empty list.
    pub fn chain(&mut self, op: Op, ids: impl IntoIterator<Item = NodeId>) -> Option<NodeId> {
        ids.into_iter()
            .reduce(|acc, id| self.gate(op, acc, id))
    }

    pub fn add_all(&mut self, ids: impl IntoIterator<Item = NodeId>) -> Option<NodeId> {
        self.chain(Op::Add, ids)
    }

    pub fn mul_all(&mut self, ids: impl IntoIterator<Item = NodeId>) -> Option<NodeId> {
        self.chain(Op::Mul, ids)
    }

    pub fn build(self, outputs: Vec<NodeId>) -> Result<Circuit> {
        Circuit::from_parts(self.semiring, self.num_vars, self.nodes, outputs)
    }

    pub fn build_single(self, output: NodeId) -> Result<Circuit> {
        self.build(vec![output])
    }
}
