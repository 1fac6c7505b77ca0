//! Seeded generators of random circuits, functions and feasible-solution sets.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::boolfun::BooleanFunction;
use crate::circuit::{Circuit, CircuitBuilder, NodeId, Op, Rational, Semiring};
use crate::poly::{ExpVec, ExpVecSet};

fn random_op<R: Rng + ?Sized>(rng: &mut R) -> Op {
    if rng.random_bool(0.5) {
        Op::Add
    } else {
        Op::Mul
    }
}

/// Random DAG over `leaves` with `gates` fanin-2 gates; each gate reads two earlier nodes,
/// preferring recent ones so the output tends to use most of the circuit.
fn random_dag<R: Rng + ?Sized>(rng: &mut R, b: &mut CircuitBuilder, leaves: Vec<NodeId>, gates: usize) -> NodeId {
    let mut pool = leaves;
    for _ in 0..gates {
        let pick = |rng: &mut R, pool: &[NodeId]| {
            let len = pool.len();
            if rng.random_bool(0.6) {
                pool[len - 1 - rng.random_range(0..len.min(3))]
            } else {
                *pool.choose(rng).expect("nonempty pool")
            }
        };
        let l = pick(rng, &pool);
        let r = pick(rng, &pool);
        let op = random_op(rng);
        pool.push(b.gate(op, l, r));
    }
    *pool.last().expect("nonempty pool")
}

/// Monotone constant-free circuit with exactly `gates` gates over `n ≥ 1` variables.
pub fn monotone_circuit<R: Rng + ?Sized>(rng: &mut R, s: Semiring, n: usize, gates: usize) -> Circuit {
    let mut b = CircuitBuilder::new(s, n);
    let leaves: Vec<NodeId> = (0..n).map(|i| b.input(i)).collect();
    let out = random_dag(rng, &mut b, leaves, gates);
    b.build_single(out).expect("well-formed").compact()
}

/// Monotone circuit whose leaves also include the given constants.
pub fn circuit_with_constants<R: Rng + ?Sized>(
    rng: &mut R,
    s: Semiring,
    n: usize,
    gates: usize,
    constants: &[Rational],
) -> Circuit {
    let mut b = CircuitBuilder::new(s, n);
    let mut leaves: Vec<NodeId> = (0..n).map(|i| b.input(i)).collect();
    for c in constants {
        leaves.push(b.constant(c.clone()));
    }
    // Shuffle so constants are not always the most recent nodes.
    for i in (1..leaves.len()).rev() {
        leaves.swap(i, rng.random_range(0..=i));
    }
    let out = random_dag(rng, &mut b, leaves, gates);
    b.build_single(out).expect("well-formed").compact()
}

/// Boolean circuit whose leaves are positive and negated literals.
pub fn demorgan_circuit<R: Rng + ?Sized>(rng: &mut R, n: usize, gates: usize) -> Circuit {
    let mut b = CircuitBuilder::new(Semiring::Boolean, n);
    let mut leaves = Vec::with_capacity(2 * n);
    for i in 0..n {
        leaves.push(b.input(i));
        leaves.push(b.negated(i));
    }
    for i in (1..leaves.len()).rev() {
        leaves.swap(i, rng.random_range(0..=i));
    }
    let out = random_dag(rng, &mut b, leaves, gates);
    b.build_single(out).expect("well-formed").compact()
}

/// Syntactically multilinear DeMorgan formula: AND gates split the available variables
/// into disjoint halves, OR gates reuse them. `negation` is the probability of a negated
/// leaf; 0 gives a monotone circuit.
pub fn multilinear_circuit<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    gates: usize,
    negation: f64,
) -> Circuit {
    let mut b = CircuitBuilder::new(Semiring::Boolean, n);
    let vars: Vec<usize> = (0..n).collect();
    let out = multilinear_node(rng, &mut b, &vars, gates, negation);
    b.build_single(out).expect("well-formed").compact()
}

fn multilinear_node<R: Rng + ?Sized>(
    rng: &mut R,
    b: &mut CircuitBuilder,
    vars: &[usize],
    gates: usize,
    negation: f64,
) -> NodeId {
    if gates == 0 {
        let v = *vars.choose(rng).expect("nonempty variable set");
        return b.literal(v, rng.random_bool(negation));
    }
    let left_gates = rng.random_range(0..gates);
    let right_gates = gates - 1 - left_gates;
    if vars.len() >= 2 && rng.random_bool(0.5) {
        let mut shuffled = vars.to_vec();
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.random_range(0..=i));
        }
        let cut = rng.random_range(1..shuffled.len());
        let (l, r) = shuffled.split_at(cut);
        let l = multilinear_node(rng, b, l, left_gates, negation);
        let r = multilinear_node(rng, b, r, right_gates, negation);
        b.mul(l, r)
    } else {
        let l = multilinear_node(rng, b, vars, left_gates, negation);
        let r = multilinear_node(rng, b, vars, right_gates, negation);
        b.add(l, r)
    }
}

/// Random nonempty antichain of nonzero 0/1 vectors of length `n ≥ 1`.
pub fn antichain<R: Rng + ?Sized>(rng: &mut R, n: usize, max_size: usize) -> ExpVecSet {
    let full = (1u64 << n) - 1;
    let count = rng.random_range(1..=max_size.max(1));
    let mut masks: Vec<u64> = (0..count).map(|_| rng.random_range(1..=full)).collect();
    masks.sort_unstable();
    masks.dedup();
    let minimal: Vec<u64> = masks
        .iter()
        .copied()
        .filter(|&m| !masks.iter().any(|&o| o != m && o & m == o))
        .collect();
    ExpVecSet::from_vecs(
        n,
        minimal
            .into_iter()
            .map(|m| ExpVec::from_support((0..n).filter(|i| m >> i & 1 == 1))),
    )
}

/// Random non-constant monotone function: the upward closure of a random antichain.
pub fn monotone_function<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BooleanFunction {
    let a = antichain(rng, n, 2 * n);
    BooleanFunction::from_supports(n, &a).expect("arity within cap")
}

/// Uniformly random function on `n` variables.
pub fn boolean_function<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BooleanFunction {
    let words = (0..(1usize << n).div_ceil(64)).map(|_| rng.random()).collect();
    BooleanFunction::from_words(n, words).expect("arity within cap")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::is_antichain;
    use crate::multilinear::is_syntactically_multilinear;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for gates in 0..10 {
            let c = monotone_circuit(&mut rng, Semiring::Arithmetic, 4, gates);
            assert!(c.size() <= gates && c.is_monotone() && c.is_constant_free());
            let m = multilinear_circuit(&mut rng, 4, gates, 0.3);
            assert_eq!(m.size(), gates);
            assert!(is_syntactically_multilinear(&m).unwrap());
            let d = demorgan_circuit(&mut rng, 3, gates);
            assert!(d.size() <= gates);
            let a = antichain(&mut rng, 4, 6);
            assert!(!a.is_empty() && is_antichain(&a) && a.iter().all(|v| v.is_binary()));
            let f = monotone_function(&mut rng, 3);
            assert!(f.is_monotone() && !f.is_constant());
        }
    }

    #[test]
    fn same_seed_same_circuit() {
        let a = monotone_circuit(&mut ChaCha8Rng::seed_from_u64(9), Semiring::Boolean, 3, 7);
        let b = monotone_circuit(&mut ChaCha8Rng::seed_from_u64(9), Semiring::Boolean, 3, 7);
        assert_eq!(a, b);
    }
}
