//! Term-by-term expansion with dense exponent vectors, kept independent of the
//! set-based production so the two can check each other.

use num_bigint::BigUint;

use super::{positive_integer, Caps, ExpVec, FormalPolynomial};
use crate::circuit::{Circuit, Node};
use crate::error::{Error, Result};

type Terms = Vec<(Vec<u64>, BigUint)>;

/// Expands the single output by structural recursion. `caps.max_set_size` bounds the
/// number of intermediate terms.
pub fn brute_force_expand(c: &Circuit, caps: &Caps) -> Result<FormalPolynomial> {
    expand(c, caps, None)
}

/// Expansion keeping only terms of degree at most `d`.
pub fn brute_force_expand_truncated(c: &Circuit, d: u64, caps: &Caps) -> Result<FormalPolynomial> {
    expand(c, caps, Some(d))
}

fn expand(c: &Circuit, caps: &Caps, max_degree: Option<u64>) -> Result<FormalPolynomial> {
    c.require_monotone()?;
    let out = c.output()?;
    let n = c.num_vars();
    let mut memo: Vec<Option<Terms>> = vec![None; c.nodes().len()];
    let terms = node_terms(c, out, n, caps.max_set_size, max_degree, &mut memo)?;
    Ok(FormalPolynomial::from_terms(
        n,
        terms.into_iter().map(|(e, k)| (ExpVec::from_dense(&e), k)),
    ))
}

fn node_terms(
    c: &Circuit,
    id: usize,
    n: usize,
    budget: usize,
    max_degree: Option<u64>,
    memo: &mut Vec<Option<Terms>>,
) -> Result<Terms> {
    if let Some(t) = &memo[id] {
        return Ok(t.clone());
    }
    let terms = match c.node(id) {
        Node::Input(i) | Node::Literal { var: i, .. } => {
            let mut e = vec![0; n];
            e[*i] = 1;
            vec![(e, BigUint::from(1u8))]
        }
        Node::Const(v) => vec![(vec![0; n], positive_integer(v)?)],
        Node::Gate { op, left, right } => {
            let l = node_terms(c, *left, n, budget, max_degree, memo)?;
            let r = node_terms(c, *right, n, budget, max_degree, memo)?;
            let mut raw: Terms = match op {
                crate::circuit::Op::Add => l.into_iter().chain(r).collect(),
                crate::circuit::Op::Mul => {
                    if l.len().saturating_mul(r.len()) > budget.saturating_mul(4) {
                        return Err(Error::BudgetExceeded(format!(
                            "expansion at node {id} needs {} x {} products",
                            l.len(),
                            r.len()
                        )));
                    }
                    let mut out = Vec::with_capacity(l.len() * r.len());
                    for (a, ka) in &l {
                        for (b, kb) in &r {
                            let mut e = Vec::with_capacity(n);
                            for i in 0..n {
                                e.push(a[i].checked_add(b[i]).ok_or(Error::DegreeOverflow)?);
                            }
                            out.push((e, ka * kb));
                        }
                    }
                    out
                }
            };
            raw.sort_by(|a, b| a.0.cmp(&b.0));
            let mut merged: Terms = Vec::with_capacity(raw.len());
            for (e, k) in raw {
                match merged.last_mut() {
                    Some((last, acc)) if *last == e => *acc += k,
                    _ => merged.push((e, k)),
                }
            }
            merged
        }
    };
    let terms: Terms = match max_degree {
        Some(d) => terms
            .into_iter()
            .filter(|(e, _)| e.iter().sum::<u64>() <= d)
            .collect(),
        None => terms,
    };
    if terms.len() > budget {
        return Err(Error::BudgetExceeded(format!(
            "expansion at node {id} exceeds {budget} terms"
        )));
    }
    memo[id] = Some(terms.clone());
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{CircuitBuilder, Semiring};
    use crate::poly::produced_polynomial;

    #[test]
    fn input_expands_to_itself() {
        let mut b = CircuitBuilder::new(Semiring::Arithmetic, 1);
        let x = b.input(0);
        let c = b.build_single(x).unwrap();
        let p = brute_force_expand(&c, &Caps::default()).unwrap();
        assert_eq!(p.to_string(), "1 x1\n");
    }

    #[test]
    fn agrees_with_production_on_example_one() {
        let mut b = CircuitBuilder::new(Semiring::Boolean, 3);
        let (x, y, z) = (b.input(0), b.input(1), b.input(2));
        let xy = b.add(x, y);
        let xz = b.add(x, z);
        let yz = b.add(y, z);
        let p = b.mul(xy, xz);
        let o = b.mul(p, yz);
        let c = b.build_single(o).unwrap();
        let brute = brute_force_expand(&c, &Caps::default()).unwrap();
        assert_eq!(brute.len(), 7);
        assert_eq!(brute, produced_polynomial(&c, &Caps::default()).unwrap());
        assert_eq!(
            brute_force_expand_truncated(&c, 2, &Caps::default()).unwrap(),
            brute.truncate_to_degree(2)
        );
    }

    #[test]
    fn budget_is_enforced() {
        let mut b = CircuitBuilder::new(Semiring::Arithmetic, 3);
        let (x, y, z) = (b.input(0), b.input(1), b.input(2));
        let s = b.add(x, y);
        let mut g = b.add(s, z);
        for _ in 0..3 {
            g = b.mul(g, g);
        }
        let c = b.build_single(g).unwrap();
        let caps = Caps {
            max_set_size: 20,
            max_degree: None,
        };
        assert!(matches!(
            brute_force_expand(&c, &caps),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
