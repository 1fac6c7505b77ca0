use crate::boolfun::{classify_read_k, BooleanFunction};
use crate::circuit::{retarget, Circuit, CircuitBuilder, Node, NodeId, Op, Semiring};
use crate::error::{Error, Result};
use crate::poly::{produced_polynomials, Caps, FormalPolynomial};

/// Circuit whose outputs produce the homogeneous parts of degrees `0..=r`.
///
/// `parts[i]` is the position in `circuit.outputs()` producing the degree-`i` part, or
/// `None` when that part is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousParts {
    pub circuit: Circuit,
    pub parts: Vec<Option<usize>>,
}

impl HomogeneousParts {
    pub fn degree_bound(&self) -> usize {
        self.parts.len() - 1
    }

    /// Single-output circuit for part `i`, `None` when the part is empty.
    pub fn part(&self, i: usize) -> Option<Circuit> {
        let pos = (*self.parts.get(i)?)?;
        let out = self.circuit.outputs()[pos];
        Some(self.circuit.with_outputs(vec![out]).ok()?.compact())
    }

    /// Produced polynomial of every part, zero for empty parts.
    pub fn polynomials(&self, caps: &Caps) -> Result<Vec<FormalPolynomial>> {
        let n = self.circuit.num_vars();
        if self.parts.iter().all(Option::is_none) {
            return Ok(vec![FormalPolynomial::zero(n); self.parts.len()]);
        }
        let produced = produced_polynomials(&self.circuit, caps)?;
        Ok(self
            .parts
            .iter()
            .map(|p| match p {
                Some(pos) => produced[*pos].clone(),
                None => FormalPolynomial::zero(n),
            })
            .collect())
    }
}

/// Splits every node into `r + 1` copies, copy `i` producing the degree-`i` part.
pub fn homogeneous_parts(c: &Circuit, r: usize) -> Result<HomogeneousParts> {
    c.require_semiring(Semiring::Arithmetic)?;
    let out = c.output()?;
    let mut b = CircuitBuilder::new(Semiring::Arithmetic, c.num_vars());
    let mut copies: Vec<Vec<Option<NodeId>>> = Vec::with_capacity(c.nodes().len());
    for node in c.nodes() {
        let mut parts = vec![None; r + 1];
        match node {
            Node::Input(i) | Node::Literal { var: i, .. } => {
                if r >= 1 {
                    parts[1] = Some(b.input(*i));
                }
            }
            Node::Const(k) => parts[0] = Some(b.constant(k.clone())),
            Node::Gate { op: Op::Add, left, right } => {
                for (i, slot) in parts.iter_mut().enumerate() {
                    *slot = match (copies[*left][i], copies[*right][i]) {
                        (Some(u), Some(w)) => Some(b.add(u, w)),
                        (u, w) => u.or(w),
                    };
                }
            }
            Node::Gate { op: Op::Mul, left, right } => {
                for (i, slot) in parts.iter_mut().enumerate() {
                    let pairs: Vec<(NodeId, NodeId)> = (0..=i)
                        .filter_map(|j| Some((copies[*left][j]?, copies[*right][i - j]?)))
                        .collect();
                    let products: Vec<NodeId> = pairs.into_iter().map(|(u, w)| b.mul(u, w)).collect();
                    *slot = b.add_all(products);
                }
            }
        }
        copies.push(parts);
    }
    let mut outputs = Vec::new();
    let mut parts = Vec::with_capacity(r + 1);
    for id in &copies[out] {
        parts.push(id.map(|id| {
            outputs.push(id);
            outputs.len() - 1
        }));
    }
    let circuit = if outputs.is_empty() {
        // Every part is empty. A circuit needs an output, so a lone zero constant stands in.
        Circuit::from_parts(
            Semiring::Arithmetic,
            c.num_vars(),
            vec![Node::Const(crate::circuit::integer(0))],
            vec![0],
        )?
    } else {
        b.build(outputs)?.compact()
    };
    Ok(HomogeneousParts { circuit, parts })
}

/// Read-`k` circuit for `f` whose produced polynomial has degree at most `k·m`, where
/// `m` is the largest prime-implicant width of `f`.
pub fn degree_reduce_read_k(
    c: &Circuit,
    k: u64,
    f: &BooleanFunction,
    caps: &Caps,
) -> Result<Circuit> {
    c.require_semiring(Semiring::Boolean)?;
    let class = classify_read_k(c, f, caps)?;
    if class.semantic.is_none_or(|s| s > k) {
        return Err(Error::NotReadK(k));
    }
    let m = f
        .lowest_ones()
        .iter()
        .map(|a| a.support_len() as u64)
        .max()
        .unwrap_or(0);
    let bound = usize::try_from(k.saturating_mul(m))
        .map_err(|_| Error::SizeOverflow("degree bound".into()))?;
    let hp = homogeneous_parts(&retarget(c, Semiring::Arithmetic)?, bound)?;
    let outs = hp.circuit.outputs().to_vec();
    let mut b = CircuitBuilder::new(Semiring::Arithmetic, c.num_vars());
    let mut map = Vec::with_capacity(hp.circuit.nodes().len());
    for node in hp.circuit.nodes() {
        let id = match node {
            Node::Gate { op, left, right } => b.gate(*op, map[*left], map[*right]),
            other => b.push(other.clone()),
        };
        map.push(id);
    }
    let sum = b
        .add_all(outs.iter().map(|&o| map[o]))
        .ok_or(Error::NotComputingF)?;
    let reduced = b.build_single(sum)?.compact();
    retarget(&reduced, Semiring::Boolean)
}
