use itertools::Itertools;

use crate::boolfun::{BooleanFunction, TRUTH_TABLE_CAP};
use crate::circuit::{Circuit, CircuitBuilder, NodeId, Semiring};
use crate::error::{Error, Result};

/// Largest `n` for which the permanent circuit is built.
const MAX_PERMANENT_N: usize = 16;

/// Variable index of the matrix entry `x_{i,j}` (row-major).
pub fn permanent_var(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// `PM_n`: the `n × n` bipartite graph given by `x` has a perfect matching.
pub fn matching_function(n: usize) -> Result<BooleanFunction> {
    let vars = n * n;
    if vars > TRUTH_TABLE_CAP {
        return Err(Error::ArityTooLarge {
            n: vars,
            cap: TRUTH_TABLE_CAP,
        });
    }
    let perms: Vec<u64> = (0..n)
        .permutations(n)
        .map(|p| {
            p.iter()
                .enumerate()
                .fold(0u64, |m, (i, &j)| m | 1 << permanent_var(n, i, j))
        })
        .collect();
    BooleanFunction::from_fn(vars, |x| perms.iter().any(|&m| m & !x == 0))
}

/// Arithmetic circuit for `perm_n` by expansion along rows over column subsets:
/// `P(S) = Σ_{j∈S} x_{|S|-1, j} · P(S \ {j})`, with `n(2^{n-1} − 1)` multiplication gates.
pub fn permanent_circuit(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("permanent needs n ≥ 2, got {n}")));
    }
    if n > MAX_PERMANENT_N {
        return Err(Error::SizeOverflow(format!("permanent circuit for n = {n}")));
    }
    let mut b = CircuitBuilder::new(Semiring::Arithmetic, n * n);
    let full = (1usize << n) - 1;
    let mut memo: Vec<Option<NodeId>> = vec![None; 1 << n];
    for j in 0..n {
        memo[1 << j] = Some(b.input(permanent_var(n, 0, j)));
    }
    for size in 2..=n {
        for s in 1..=full {
            if s.count_ones() as usize != size || (size == n && s != full) {
                continue;
            }
            let row = size - 1;
            let terms: Vec<NodeId> = (0..n)
                .filter(|j| s >> j & 1 == 1)
                .map(|j| (j, memo[s & !(1 << j)].expect("smaller subsets first")))
                .collect::<Vec<_>>()
                .into_iter()
                .map(|(j, sub)| {
                    let x = b.input(permanent_var(n, row, j));
                    b.mul(x, sub)
                })
                .collect();
            memo[s] = b.add_all(terms);
        }
    }
    b.build_single(memo[full].expect("full set built"))
}
