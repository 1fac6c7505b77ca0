//! Dependence, multilinearity and produced term sets of DeMorgan circuits: Boolean
//! circuits whose only negations sit on input literals.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::boolfun::{node_functions, compute_function, BooleanFunction, Term, TRUTH_TABLE_CAP};
use crate::circuit::{Circuit, Node, Op, Semiring};
use crate::error::{Error, Result};
use crate::poly::fold_outputs;

/// Largest arity for which prime implicants are enumerated.
pub const PRIME_IMPLICANT_CAP: usize = 12;

/// Default cap on produced term sets.
pub const PRODUCED_TERM_CAP: usize = 100_000;

/// Variables whose flip changes the value somewhere.
pub fn depends_on(f: &BooleanFunction) -> BTreeSet<usize> {
    f.depends_on()
}

/// `g` and `h` depend on disjoint sets of variables.
pub fn independent(g: &BooleanFunction, h: &BooleanFunction) -> bool {
    depends_on(g).is_disjoint(&depends_on(h))
}

/// All prime implicants: terms implying `f` from which no literal can be dropped.
pub fn prime_implicants(f: &BooleanFunction) -> Result<Vec<Term>> {
    let n = f.arity();
    if n > PRIME_IMPLICANT_CAP {
        return Err(Error::ArityTooLarge {
            n,
            cap: PRIME_IMPLICANT_CAP,
        });
    }
    let implies = |t: &Term| t.to_function(n).map(|tf| tf.implies(f));
    let mut out = Vec::new();
    // Each variable is absent, positive or negated.
    for code in 0..3u64.pow(n as u32) {
        let mut t = Term::default();
        let mut c = code;
        for i in 0..n {
            match c % 3 {
                1 => {
                    t.positives.insert(i);
                }
                2 => {
                    t.negatives.insert(i);
                }
                _ => {}
            }
            c /= 3;
        }
        if !implies(&t)? {
            continue;
        }
        let mut prime = true;
        for &i in t.positives.iter().chain(&t.negatives) {
            let mut shorter = t.clone();
            shorter.positives.remove(&i);
            shorter.negatives.remove(&i);
            if implies(&shorter)? {
                prime = false;
                break;
            }
        }
        if prime {
            out.push(t);
        }
    }
    out.sort();
    Ok(out)
}

fn require_demorgan(c: &Circuit) -> Result<()> {
    c.require_semiring(Semiring::Boolean)
}

/// Every AND gate feeding the outputs combines functions with disjoint dependence sets.
pub fn is_semantically_multilinear(c: &Circuit) -> Result<bool> {
    require_demorgan(c)?;
    if c.num_vars() > TRUTH_TABLE_CAP {
        return Err(Error::ArityTooLarge {
            n: c.num_vars(),
            cap: TRUTH_TABLE_CAP,
        });
    }
    let live = c.compact();
    let tables = node_functions(&live)?;
    let deps: Vec<BTreeSet<usize>> = tables.iter().map(BooleanFunction::depends_on).collect();
    Ok(live.nodes().iter().all(|node| match node {
        Node::Gate {
            op: Op::Mul,
            left,
            right,
        } => deps[*left].is_disjoint(&deps[*right]),
        _ => true,
    }))
}

/// Every AND gate feeding the outputs has operand subcircuits over disjoint variables.
pub fn is_syntactically_multilinear(c: &Circuit) -> Result<bool> {
    require_demorgan(c)?;
    let mut disjoint = true;
    fold_outputs(
        c,
        |_, node| {
            Ok(match node.var() {
                Some(i) => BTreeSet::from([i]),
                None => BTreeSet::new(),
            })
        },
        |op, l: &BTreeSet<usize>, r| {
            if op == Op::Mul && !l.is_disjoint(r) {
                disjoint = false;
            }
            Ok(l.union(r).copied().collect())
        },
    )?;
    Ok(disjoint)
}

/// Terms produced without the laws `x ∧ x̄ = 0` and absorption: a literal gives itself,
/// OR takes unions and AND all pairwise conjunctions. The constant 1 gives the empty
/// term and 0 the empty set. Fails with `CapExceeded` when a node exceeds `cap` terms.
pub fn produced_terms(c: &Circuit, cap: usize) -> Result<BTreeSet<Term>> {
    require_demorgan(c)?;
    c.output()?;
    let over = |s: &BTreeSet<Term>| {
        if s.len() > cap {
            Err(Error::CapExceeded(cap))
        } else {
            Ok(())
        }
    };
    let mut out = fold_outputs(
        c,
        |id, node| match node {
            Node::Input(i) | Node::Literal { var: i, negated: false } => {
                Ok(BTreeSet::from([Term::positive(*i)]))
            }
            Node::Literal { var, negated: true } => Ok(BTreeSet::from([Term::negative(*var)])),
            Node::Const(v) if v.is_one() => Ok(BTreeSet::from([Term::default()])),
            Node::Const(v) if v.is_zero() => Ok(BTreeSet::new()),
            Node::Const(v) => Err(Error::DomainError(format!(
                "constant {v} at node {id} is not Boolean"
            ))),
            Node::Gate { .. } => unreachable!("gates are folded"),
        },
        |op, l: &BTreeSet<Term>, r| {
            let s: BTreeSet<Term> = match op {
                Op::Add => l.union(r).cloned().collect(),
                Op::Mul => {
                    if l.len().saturating_mul(r.len()) > cap.saturating_mul(cap.max(1)) {
                        return Err(Error::CapExceeded(cap));
                    }
                    l.iter()
                        .flat_map(|a| r.iter().map(move |b| a.conjoin(b)))
                        .collect()
                }
            };
            over(&s)?;
            Ok(s)
        },
    )?;
    Ok(out.remove(0))
}

/// Whether the positive factor of every produced zero term implies `↑f`.
pub fn impedes_zero_terms(c: &Circuit, f: &BooleanFunction, cap: usize) -> Result<bool> {
    require_demorgan(c)?;
    if c.num_vars() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: c.num_vars(),
            got: f.arity(),
        });
    }
    if compute_function(c)? != *f {
        return Err(Error::NotComputingF);
    }
    let up = f.upward_closure();
    for t in produced_terms(c, cap)? {
        if t.is_zero_term() && !t.positive_factor().to_function(f.arity())?.implies(&up) {
            return Ok(false);
        }
    }
    Ok(true)
}
