//! Generators for explicit functions and circuits: blocking-lines families, perfect
//! matchings and the permanent, and the read-1/read-2 gap witnesses.

mod coverfree;
mod gap;
mod matching;

use itertools::Itertools;

use crate::boolfun::{BooleanFunction, TRUTH_TABLE_CAP};
use crate::circuit::{Circuit, CircuitBuilder, NodeId, Semiring};
use crate::error::{Error, Result};

pub use coverfree::cover_free_sample;
pub use gap::{dual_lines_read1_circuit, gap_report, read2_lines_circuit, GapReport, GAP_MAX_M};
pub use matching::{matching_function, permanent_circuit, permanent_var};

/// Largest point set a family generator will build.
pub const MAX_POINTS: usize = 1 << 20;

/// A family of lines over points `0..point_count`: every line has `uniformity` points
/// and every point lies on `regularity` lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineFamily {
    pub point_count: usize,
    pub lines: Vec<Vec<usize>>,
    pub uniformity: usize,
    pub regularity: usize,
}

impl LineFamily {
    /// Builds a family, inferring uniformity and regularity and checking both hold.
    pub fn new(point_count: usize, lines: Vec<Vec<usize>>) -> Result<LineFamily> {
        let bad = |m: String| Err(Error::InvalidFamily(m));
        if lines.is_empty() {
            return bad("no lines".into());
        }
        let uniformity = lines[0].len();
        let mut degree = vec![0usize; point_count];
        for (i, line) in lines.iter().enumerate() {
            if line.len() != uniformity {
                return bad(format!("line {i} has {} points, expected {uniformity}", line.len()));
            }
            if !line.iter().all_unique() {
                return bad(format!("line {i} repeats a point"));
            }
            for &p in line {
                if p >= point_count {
                    return bad(format!("line {i} mentions point {p} outside 0..{point_count}"));
                }
                degree[p] += 1;
            }
        }
        let regularity = degree.first().copied().unwrap_or(0);
        if let Some(p) = degree.iter().position(|&d| d != regularity) {
            return bad(format!(
                "point {p} lies on {} lines, expected {regularity}",
                degree[p]
            ));
        }
        Ok(LineFamily {
            point_count,
            lines,
            uniformity,
            regularity,
        })
    }

    /// Whether the points set in `x` meet every line.
    pub fn blocks(&self, x: &[bool]) -> bool {
        self.lines.iter().all(|l| l.iter().any(|&p| x[p]))
    }

    /// Truth table of the blocking function; needs `point_count ≤` the table cap.
    pub fn blocking_function(&self) -> Result<BooleanFunction> {
        if self.point_count > TRUTH_TABLE_CAP {
            return Err(Error::ArityTooLarge {
                n: self.point_count,
                cap: TRUTH_TABLE_CAP,
            });
        }
        let masks: Vec<u64> = self
            .lines
            .iter()
            .map(|l| l.iter().fold(0u64, |m, &p| m | 1 << p))
            .collect();
        BooleanFunction::from_fn(self.point_count, |x| masks.iter().all(|&m| x & m != 0))
    }

    /// `⋀_L ⋁_{p∈L} x_p`, with `uniformity·|lines| − 1` gates.
    pub fn blocking_circuit(&self) -> Circuit {
        let mut b = CircuitBuilder::new(Semiring::Boolean, self.point_count);
        let clauses: Vec<NodeId> = self
            .lines
            .iter()
            .map(|l| {
                let lits: Vec<NodeId> = l.iter().map(|&p| b.input(p)).collect();
                b.add_all(lits).expect("nonempty line")
            })
            .collect();
        let out = b.mul_all(clauses).expect("nonempty family");
        b.build_single(out).expect("well-formed")
    }

    /// `⋁_L ⋀_{p∈L} x_p`, computing the dual of the blocking function.
    pub fn dual_circuit(&self) -> Circuit {
        let mut b = CircuitBuilder::new(Semiring::Boolean, self.point_count);
        let terms: Vec<NodeId> = self
            .lines
            .iter()
            .map(|l| {
                let lits: Vec<NodeId> = l.iter().map(|&p| b.input(p)).collect();
                b.mul_all(lits).expect("nonempty line")
            })
            .collect();
        let out = b.add_all(terms).expect("nonempty family");
        b.build_single(out).expect("well-formed")
    }
}

/// Blocking function as a lazy predicate together with its CNF circuit.
#[derive(Debug, Clone)]
pub struct BlockingFunction {
    pub family: LineFamily,
    pub circuit: Circuit,
}

impl BlockingFunction {
    pub fn accepts(&self, x: &[bool]) -> bool {
        self.family.blocks(x)
    }
}

pub fn blocking_function(family: &LineFamily) -> Result<BlockingFunction> {
    let checked = LineFamily::new(family.point_count, family.lines.clone())?;
    if checked.uniformity != family.uniformity || checked.regularity != family.regularity {
        return Err(Error::InvalidFamily(
            "declared uniformity or regularity does not match the lines".into(),
        ));
    }
    Ok(BlockingFunction {
        circuit: checked.blocking_circuit(),
        family: checked,
    })
}

/// Axis-parallel lines in `[m]^k`. Point `(p_0, ..., p_{k-1})` has index `Σ p_j m^j`.
pub fn lines_family(m: usize, k: usize) -> Result<LineFamily> {
    if m < 2 || k < 2 {
        return Err(Error::InvalidArgument(format!(
            "lines family needs m ≥ 2 and k ≥ 2, got m = {m}, k = {k}"
        )));
    }
    let points = (0..k)
        .try_fold(1usize, |acc, _| acc.checked_mul(m))
        .filter(|&p| p <= MAX_POINTS)
        .ok_or_else(|| Error::SizeOverflow(format!("{m}^{k} points")))?;
    let mut lines = Vec::with_capacity(k * points / m);
    for dir in 0..k {
        let stride = m.pow(dir as u32);
        for base in 0..points {
            if (base / stride).is_multiple_of(m) {
                lines.push((0..m).map(|t| base + t * stride).collect());
            }
        }
    }
    LineFamily::new(points, lines)
}

/// Points are the `k`-subsets of `[m]` in lexicographic order; line `i` holds the
/// subsets containing `i`.
pub fn cov_family(m: usize, k: usize) -> Result<LineFamily> {
    if k == 0 || !m.is_multiple_of(k) {
        return Err(Error::Divisibility { m, k });
    }
    let count = crate::poly::binomial(m as u64, k as u64);
    if count > num_bigint::BigUint::from(MAX_POINTS) {
        return Err(Error::SizeOverflow(format!("C({m}, {k}) points")));
    }
    let points: Vec<Vec<usize>> = (0..m).combinations(k).collect();
    let lines = (0..m)
        .map(|i| {
            points
                .iter()
                .enumerate()
                .filter(|(_, p)| p.contains(&i))
                .map(|(idx, _)| idx)
                .collect()
        })
        .collect();
    LineFamily::new(points.len(), lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::{compute_function, verify_structure};
    use crate::poly::Caps;

    #[test]
    fn lines_counts() {
        let l = lines_family(3, 2).unwrap();
        assert_eq!((l.point_count, l.lines.len()), (9, 6));
        assert_eq!(l.uniformity * l.lines.len(), l.regularity * l.point_count);
        let l = lines_family(2, 2).unwrap();
        assert_eq!((l.point_count, l.lines.len()), (4, 4));
        let l = lines_family(3, 3).unwrap();
        assert_eq!(l.lines.len(), 3 * 9);
        assert_eq!(l.regularity, 3);
        assert!(lines_family(3, 1).is_err());
    }

    #[test]
    fn permutation_matrix_blocks_grid() {
        let l = lines_family(3, 2).unwrap();
        let f = blocking_function(&l).unwrap();
        // rows (0 1 0), (1 0 0), (0 0 1)
        let mut x = [false; 9];
        for idx in [1, 3, 8] {
            x[idx] = true;
        }
        assert!(f.accepts(&x));
        x[8] = false;
        assert!(!f.accepts(&x));
        assert_eq!(f.circuit.size(), l.uniformity * l.lines.len() - 1);
        let table = l.blocking_function().unwrap();
        assert_eq!(compute_function(&f.circuit).unwrap(), table);
        assert!(verify_structure(&f.circuit, &table, &Caps::default()).unwrap());
    }

    #[test]
    fn single_line_is_an_or() {
        let l = LineFamily::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(l.regularity, 1);
        assert_eq!(
            l.blocking_function().unwrap(),
            BooleanFunction::from_fn(3, |x| x != 0).unwrap()
        );
        assert!(LineFamily::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn cov_examples() {
        let c = cov_family(4, 2).unwrap();
        assert_eq!((c.point_count, c.lines.len(), c.uniformity, c.regularity), (6, 4, 3, 2));
        let f = c.blocking_function().unwrap();
        let low = f.lowest_ones();
        let smallest = low.lower_envelope().unwrap();
        assert_eq!(smallest.len(), 3);
        assert!(smallest.iter().all(|a| a.degree() == 2));
        let c = cov_family(6, 2).unwrap();
        assert_eq!(c.uniformity, 5);
        let c = cov_family(3, 3).unwrap();
        assert_eq!((c.point_count, c.lines.len()), (1, 3));
        assert_eq!(cov_family(5, 2), Err(Error::Divisibility { m: 5, k: 2 }));
    }
}
