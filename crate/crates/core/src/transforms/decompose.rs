use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::circuit::{Circuit, Node, NodeId, Op, Semiring};
use crate::error::{Error, Result};
use crate::families::permanent_circuit;
use crate::poly::{binomial, factorial, positive_integer, produced_polynomial, Caps, ExpVec, FormalPolynomial};

/// One product `g·h` of a decomposition; `g` is the polynomial produced at `gate`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionPair {
    pub gate: NodeId,
    pub g: FormalPolynomial,
    pub h: FormalPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Degree `m` of the homogeneous produced polynomial.
    pub degree: u64,
    pub pairs: Vec<DecompositionPair>,
}

impl Decomposition {
    /// `Σ g_i·h_i`.
    pub fn reassemble(&self, arity: usize, caps: &Caps) -> Result<FormalPolynomial> {
        let mut sum = FormalPolynomial::zero(arity);
        for p in &self.pairs {
            sum = sum.add(&p.g.mul(&p.h, caps)?);
        }
        Ok(sum)
    }
}

/// Splits a homogeneous produced polynomial of degree `m ≥ 3` into at most `size(c)`
/// products `g_i·h_i` with `m/3 ≤ deg g_i ≤ 2m/3`.
///
/// From the output, walk towards the operand of larger degree until the degree drops to
/// `2m/3` or below. The gate `v` reached produces `g`; reading `v` as a fresh variable
/// `y` writes the output as `Σ_e F_e y^e`, so `h = Σ_{e≥1} g^{e-1} F_e` and the
/// remainder is `F_0`, the output with `v` set to zero. Repeat on the remainder.
pub fn decompose(c: &Circuit, caps: &Caps) -> Result<Decomposition> {
    c.require_semiring(Semiring::Arithmetic)?;
    let out = c.output()?;
    let n = c.num_vars();
    let p = produced_polynomial(c, caps)?;
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let m = p.degree().unwrap_or(0);
    if m < 3 {
        return Err(Error::DegreeTooSmall(m));
    }
    let mut killed = vec![false; c.nodes().len()];
    let mut pairs = Vec::new();
    loop {
        let polys = node_polynomials(c, &killed, None, caps)?;
        if polys[out].is_zero() {
            break;
        }
        if pairs.len() >= c.size() {
            return Err(Error::BudgetExceeded(
                "decomposition did not terminate within size(c) steps".into(),
            ));
        }
        let v = split_gate(c, out, &polys, m)?;
        let g = polys[v].clone();
        let marked = node_polynomials(c, &killed, Some(v), caps)?;
        let mut by_power: BTreeMap<u64, FormalPolynomial> = BTreeMap::new();
        for (e, k) in marked[out].terms() {
            let power = e.get(n);
            let rest = ExpVec::from_pairs(e.entries().iter().copied().filter(|&(i, _)| i != n));
            let slot = by_power
                .entry(power)
                .or_insert_with(|| FormalPolynomial::zero(n));
            *slot = slot.add(&FormalPolynomial::from_terms(n, [(rest, k.clone())]));
        }
        let mut h = FormalPolynomial::zero(n);
        let mut g_power = FormalPolynomial::constant(n, BigUint::from(1u8));
        let mut e = 1;
        for (&power, coeff) in by_power.range(1..) {
            while e < power {
                g_power = g_power.mul(&g, caps)?;
                e += 1;
            }
            h = h.add(&g_power.mul(coeff, caps)?);
        }
        pairs.push(DecompositionPair { gate: v, g, h });
        killed[v] = true;
    }
    Ok(Decomposition { degree: m, pairs })
}

fn split_gate(c: &Circuit, out: NodeId, polys: &[FormalPolynomial], m: u64) -> Result<NodeId> {
    let deg = |v: NodeId| polys[v].degree();
    let mut v = out;
    while let Some(d) = deg(v) {
        if 3 * d <= 2 * m {
            return Ok(v);
        }
        let Node::Gate { left, right, .. } = c.node(v) else {
            break;
        };
        v = if deg(*left) >= deg(*right) { *left } else { *right };
    }
    Err(Error::NotHomogeneous)
}

/// Polynomials of all nodes with `killed` nodes set to zero and `marked` read as the
/// extra variable `x_{n+1}`.
fn node_polynomials(
    c: &Circuit,
    killed: &[bool],
    marked: Option<NodeId>,
    caps: &Caps,
) -> Result<Vec<FormalPolynomial>> {
    let n = c.num_vars();
    let arity = if marked.is_some() { n + 1 } else { n };
    let mut polys: Vec<FormalPolynomial> = Vec::with_capacity(c.nodes().len());
    for (id, node) in c.nodes().iter().enumerate() {
        let p = if killed[id] {
            FormalPolynomial::zero(arity)
        } else if marked == Some(id) {
            FormalPolynomial::variable(arity, n)
        } else {
            match node {
                Node::Input(i) | Node::Literal { var: i, .. } => FormalPolynomial::variable(arity, *i),
                Node::Const(k) => FormalPolynomial::constant(arity, positive_integer(k)?),
                Node::Gate { op: Op::Add, left, right } => polys[*left].add(&polys[*right]),
                Node::Gate { op: Op::Mul, left, right } => polys[*left].mul(&polys[*right], caps)?,
            }
        };
        polys.push(p);
    }
    Ok(polys)
}

/// Decomposition of the permanent circuit and the gate-count bound it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingReport {
    pub n: usize,
    pub circuit_size: usize,
    /// Number of products `t`.
    pub pairs: usize,
    /// `max_i |mon(g_i h_i)|`.
    pub max_pair_monomials: u64,
    /// `⌈n! / max_i |mon(g_i h_i)|⌉`.
    pub implied_size_bound: u64,
    /// `C(n, ⌈n/3⌉)`.
    pub analytic_bound: u64,
}

pub fn matching_lower_bound_report(n: usize) -> Result<MatchingReport> {
    if n > 5 {
        return Err(Error::BudgetExceeded(format!(
            "permanent expansion for n = {n} exceeds the desk-scale budget"
        )));
    }
    if n < 3 {
        return Err(Error::DegreeTooSmall(n as u64));
    }
    let caps = Caps::default();
    let c = permanent_circuit(n)?;
    let d = decompose(&c, &caps)?;
    let mut max_mon = 0u64;
    for p in &d.pairs {
        max_mon = max_mon.max(p.g.mul(&p.h, &caps)?.len() as u64);
    }
    let total = factorial(n as u64).expect("n ≤ 5");
    let analytic = binomial(n as u64, (n as u64).div_ceil(3));
    Ok(MatchingReport {
        n,
        circuit_size: c.size(),
        pairs: d.pairs.len(),
        max_pair_monomials: max_mon,
        implied_size_bound: total.div_ceil(max_mon.max(1)),
        analytic_bound: u64::try_from(analytic).expect("small binomial"),
    })
}
