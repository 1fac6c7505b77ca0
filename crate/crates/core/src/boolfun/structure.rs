//! Truth tables of circuits and the structural verifiers built on produced sets.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::BooleanFunction;
use crate::circuit::{Circuit, Node, Op};
use crate::error::{Error, Result};
use crate::poly::{produced_exponent_set, Caps, ExpVecSet};

/// Truth table of every node under Boolean semantics.
pub fn node_functions(c: &Circuit) -> Result<Vec<BooleanFunction>> {
    let n = c.num_vars();
    let mut tables: Vec<BooleanFunction> = Vec::with_capacity(c.nodes().len());
    for (id, node) in c.nodes().iter().enumerate() {
        let t = match node {
            Node::Input(i) | Node::Literal { var: i, negated: false } => {
                BooleanFunction::projection(n, *i)?
            }
            Node::Literal { var, negated: true } => BooleanFunction::projection(n, *var)?.not(),
            Node::Const(v) if v.is_zero() || v.is_one() => BooleanFunction::constant(n, v.is_one())?,
            Node::Const(v) => {
                return Err(Error::DomainError(format!(
                    "constant {v} at node {id} is not Boolean"
                )))
            }
            Node::Gate { op, left, right } => match op {
                Op::Add => tables[*left].or(&tables[*right]),
                Op::Mul => tables[*left].and(&tables[*right]),
            },
        };
        tables.push(t);
    }
    Ok(tables)
}

/// The Boolean function computed at the single output.
pub fn compute_function(c: &Circuit) -> Result<BooleanFunction> {
    let out = c.output()?;
    if c.num_vars() > super::TRUTH_TABLE_CAP {
        return Err(Error::ArityTooLarge {
            n: c.num_vars(),
            cap: super::TRUTH_TABLE_CAP,
        });
    }
    Ok(node_functions(c)?.swap_remove(out))
}

fn require_same_arity(c: &Circuit, f: &BooleanFunction) -> Result<()> {
    if c.num_vars() == f.arity() {
        Ok(())
    } else {
        Err(Error::ArityMismatch {
            expected: c.num_vars(),
            got: f.arity(),
        })
    }
}

fn require_computes(c: &Circuit, f: &BooleanFunction) -> Result<()> {
    require_same_arity(c, f)?;
    if compute_function(c)? == *f {
        Ok(())
    } else {
        Err(Error::NotComputingF)
    }
}

fn monotone_constant_free(c: &Circuit) -> Result<()> {
    c.require_monotone()?;
    c.require_constant_free()
}

/// `Supp(Low f) ⊆ Supp(B_F)` and `B_F ⊆ ↑Low f`. For a monotone constant-free circuit
/// and monotone `f` this holds exactly when the circuit computes `f`.
pub fn verify_structure(c: &Circuit, f: &BooleanFunction, caps: &Caps) -> Result<bool> {
    monotone_constant_free(c)?;
    require_same_arity(c, f)?;
    if !f.is_monotone() {
        return Err(Error::NonMonotone);
    }
    let b = produced_exponent_set(c, caps)?;
    let low = f.lowest_ones();
    let supports_covered = low.supports().is_subset(&b.supports());
    Ok(supports_covered && b.is_in_upward_closure_of(&low))
}

/// Read parameters of a circuit for the function it computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReadK {
    /// Least `k` such that every lowest one has a `k`-bounded shadow in `B_F`; `None` when
    /// some lowest one has no shadow at all.
    pub semantic: Option<u64>,
    /// Largest entry over all of `B_F`.
    pub syntactic: u64,
    /// `B_F` was degree-truncated: `semantic` is then an upper bound and `syntactic`
    /// a lower bound on the untruncated values.
    pub truncated: bool,
}

pub fn classify_read_k(c: &Circuit, f: &BooleanFunction, caps: &Caps) -> Result<ReadK> {
    monotone_constant_free(c)?;
    require_computes(c, f)?;
    let b = produced_exponent_set(c, caps)?;
    Ok(read_parameters(&b, &f.lowest_ones(), caps.max_degree.is_some()))
}

pub(crate) fn read_parameters(b: &ExpVecSet, low: &ExpVecSet, truncated: bool) -> ReadK {
    let mut semantic = Some(0);
    for a in low.iter() {
        let best = b
            .iter()
            .filter(|v| v.is_shadow_of(a))
            .map(|v| v.max_entry())
            .min();
        semantic = match (semantic, best) {
            (Some(s), Some(k)) => Some(s.max(k)),
            _ => None,
        };
    }
    ReadK {
        semantic,
        syntactic: b.max_entry(),
        truncated,
    }
}

/// `a + b ≥ c` with `a, b, c ∈ A` forces `c ∈ {a, b}`.
pub fn is_cover_free(a: &ExpVecSet) -> bool {
    let vecs: Vec<_> = a.iter().collect();
    for (i, u) in vecs.iter().enumerate() {
        for v in &vecs[i..] {
            let Some(s) = u.checked_add(v) else {
                return false;
            };
            if vecs.iter().any(|w| w != u && w != v && w.is_below(&s)) {
                return false;
            }
        }
    }
    true
}

/// `Supp(B_F) = Supp(Low f)`.
pub fn is_tight(c: &Circuit, f: &BooleanFunction, caps: &Caps) -> Result<bool> {
    monotone_constant_free(c)?;
    require_computes(c, f)?;
    let b = produced_exponent_set(c, caps)?;
    let low: BTreeSet<Vec<usize>> = f.lowest_ones().supports();
    Ok(b.supports() == low)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{integer, CircuitBuilder, Semiring};

    fn maj3() -> BooleanFunction {
        BooleanFunction::from_fn(3, |x| x.count_ones() >= 2).unwrap()
    }

    fn maj3_cnf() -> Circuit {
        let mut b = CircuitBuilder::new(Semiring::Boolean, 3);
        let (x, y, z) = (b.input(0), b.input(1), b.input(2));
        let xy = b.add(x, y);
        let xz = b.add(x, z);
        let yz = b.add(y, z);
        let p = b.mul(xy, xz);
        let o = b.mul(p, yz);
        b.build_single(o).unwrap()
    }

    fn maj3_dnf() -> Circuit {
        let mut b = CircuitBuilder::new(Semiring::Boolean, 3);
        let (x, y, z) = (b.input(0), b.input(1), b.input(2));
        let xy = b.mul(x, y);
        let xz = b.mul(x, z);
        let yz = b.mul(y, z);
        let s = b.add(xy, xz);
        let o = b.add(s, yz);
        b.build_single(o).unwrap()
    }

    #[test]
    fn example_one_classification() {
        let caps = Caps::default();
        assert_eq!(compute_function(&maj3_cnf()).unwrap(), maj3());
        assert!(verify_structure(&maj3_cnf(), &maj3(), &caps).unwrap());
        let cnf = classify_read_k(&maj3_cnf(), &maj3(), &caps).unwrap();
        assert_eq!(cnf.semantic, Some(2));
        assert_eq!(cnf.syntactic, 2);
        let dnf = classify_read_k(&maj3_dnf(), &maj3(), &caps).unwrap();
        assert_eq!((dnf.semantic, dnf.syntactic), (Some(1), 1));
        assert!(is_tight(&maj3_dnf(), &maj3(), &caps).unwrap());
    }

    #[test]
    fn structure_failures() {
        let mut b = CircuitBuilder::new(Semiring::Boolean, 2);
        let (x, y) = (b.input(0), b.input(1));
        let o = b.add(x, y);
        let c = b.build_single(o).unwrap();
        let f = BooleanFunction::projection(2, 0).unwrap();
        assert!(!verify_structure(&c, &f, &Caps::default()).unwrap());
        assert_eq!(
            classify_read_k(&c, &f, &Caps::default()),
            Err(Error::NotComputingF)
        );
    }

    #[test]
    fn absorbed_monomial_is_not_tight() {
        let mut b = CircuitBuilder::new(Semiring::Boolean, 2);
        let (x, y) = (b.input(0), b.input(1));
        let xy = b.mul(x, y);
        let o = b.add(x, xy);
        let c = b.build_single(o).unwrap();
        let f = BooleanFunction::projection(2, 0).unwrap();
        assert!(verify_structure(&c, &f, &Caps::default()).unwrap());
        assert!(!is_tight(&c, &f, &Caps::default()).unwrap());
    }

    #[test]
    fn cover_free_examples() {
        assert!(is_cover_free(&ExpVecSet::from_dense(2, &[&[1, 0], &[0, 1]])));
        assert!(!is_cover_free(&ExpVecSet::from_dense(
            3,
            &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]
        )));
        assert!(is_cover_free(&ExpVecSet::from_dense(
            6,
            &[&[1, 1, 1, 0, 0, 0], &[1, 0, 0, 1, 1, 0], &[0, 1, 0, 1, 0, 1]]
        )));
    }

    #[test]
    fn constant_tables() {
        let mut b = CircuitBuilder::new(Semiring::Boolean, 1);
        let x = b.input(0);
        let one = b.constant(integer(1));
        let o = b.mul(x, one);
        let c = b.build_single(o).unwrap();
        assert_eq!(
            compute_function(&c).unwrap(),
            BooleanFunction::projection(1, 0).unwrap()
        );
        assert_eq!(
            verify_structure(&c, &compute_function(&c).unwrap(), &Caps::default()),
            Err(Error::HasConstants)
        );
    }
}
