//! The rows-and-columns blocking function on an `m × m` grid: a read-2 circuit, a
//! read-1 circuit for its dual, and a report checking the gap between them.
//!
//! Variable `x_{i,j}` (row `i`, column `j`) has index `i·m + j`.

use num_traits::One;

use super::{lines_family, matching_function, LineFamily};
use crate::boolfun::{classify_read_k, compute_function, is_tight, verify_structure};
use crate::circuit::{Circuit, Rational};
use crate::error::{Error, Result};
use crate::grid::grid_len;
use crate::poly::Caps;
use crate::tropical::{
    boolean_read_k_to_tropical, check_approximation, GridMode, GridOptions, MinProblem,
    APPROX_GRID_BUDGET,
};

/// Largest `m` with exact truth-table verification.
pub const GAP_MAX_M: usize = 4;

/// Sample size for weight grids beyond the exhaustive budget.
const SAMPLED_GRID_POINTS: u64 = 100_000;

fn grid_lines(m: usize) -> Result<LineFamily> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("grid side must be at least 2, got {m}")));
    }
    lines_family(m, 2)
}

/// `⋀_i (⋁_j x_{i,j}) ∧ ⋀_j (⋁_i x_{i,j})` with `2m(m−1) + 2m − 1` gates.
pub fn read2_lines_circuit(m: usize) -> Result<Circuit> {
    Ok(grid_lines(m)?.blocking_circuit())
}

/// `⋁_i (⋀_j x_{i,j}) ∨ ⋁_j (⋀_i x_{i,j})`: some row or column is all ones.
pub fn dual_lines_read1_circuit(m: usize) -> Result<Circuit> {
    Ok(grid_lines(m)?.dual_circuit())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub m: usize,
    pub n: usize,
    pub read2_size: usize,
    pub dual_size: usize,
    /// `2n`.
    pub size_bound: usize,
    pub read2_computes_lines: bool,
    pub read2_structure: bool,
    pub read2_semantic_k: Option<u64>,
    pub read2_syntactic_k: u64,
    pub read2_tight: bool,
    pub dual_computes_dual: bool,
    pub dual_semantic_k: Option<u64>,
    pub envelope_size: usize,
    pub expected_envelope_size: u64,
    pub envelope_is_matchings: bool,
    pub tropical_structural: bool,
    pub tropical_grid: bool,
    pub tropical_grid_points: u64,
    pub tropical_sampled_seed: Option<u64>,
}

impl GapReport {
    /// Every verdict by name.
    pub fn verdicts(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("read2_size_within_2n", self.read2_size <= self.size_bound),
            ("read2_computes_lines", self.read2_computes_lines),
            ("read2_structure", self.read2_structure),
            ("read2_syntactic_k_is_2", self.read2_syntactic_k == 2),
            ("read2_semantic_k_at_most_2", self.read2_semantic_k.is_some_and(|k| k <= 2)),
            ("read2_tight", self.read2_tight),
            ("dual_size_within_2n", self.dual_size <= self.size_bound),
            ("dual_computes_dual", self.dual_computes_dual),
            ("dual_semantic_k_is_1", self.dual_semantic_k == Some(1)),
            (
                "envelope_size_is_m_factorial",
                self.envelope_size as u64 == self.expected_envelope_size,
            ),
            ("envelope_is_matchings", self.envelope_is_matchings),
            ("tropical_factor2_structural", self.tropical_structural),
            ("tropical_factor2_grid", self.tropical_grid),
        ]
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.verdicts()
            .into_iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name)
            .collect()
    }

    pub fn passes(&self) -> bool {
        self.failures().is_empty()
    }
}

/// Checks every desk-scale claim about the grid blocking function for `2 ≤ m ≤ GAP_MAX_M`.
/// The factor-2 weight grid is exhaustive when it fits the budget and otherwise sampled
/// with `seed`.
pub fn gap_report(m: usize, seed: u64) -> Result<GapReport> {
    let family = grid_lines(m)?;
    if m > GAP_MAX_M {
        return Err(Error::BudgetExceeded(format!(
            "exact gap verification supports m ≤ {GAP_MAX_M}, got {m}"
        )));
    }
    let n = m * m;
    let caps = Caps::default();
    let lines = family.blocking_function()?;
    let read2 = family.blocking_circuit();
    let dual = family.dual_circuit();

    let read2_computes_lines = compute_function(&read2)? == lines;
    let read2_structure = verify_structure(&read2, &lines, &caps)?;
    let rk = classify_read_k(&read2, &lines, &caps)?;
    let read2_tight = is_tight(&read2, &lines, &caps)?;

    let dual_fn = lines.dual();
    let dual_computes_dual = compute_function(&dual)? == dual_fn;
    let dual_rk = classify_read_k(&dual, &dual_fn, &caps)?;

    let low = lines.lowest_ones();
    let envelope = low.lower_envelope()?;
    let matchings = matching_function(m)?.lowest_ones();
    let expected_envelope_size = crate::poly::factorial(m as u64)
        .ok_or_else(|| Error::SizeOverflow(format!("{m}!")))?;

    let tropical = boolean_read_k_to_tropical(&read2, &lines, 2, &caps)?;
    let problem = MinProblem::new(n, low)?;
    let two = Rational::one() + Rational::one();
    let exhaustive_fits = grid_len(2 * n as u64 + 2, n).is_some_and(|l| l <= APPROX_GRID_BUDGET);
    let mode = if exhaustive_fits {
        GridMode::Exhaustive
    } else {
        GridMode::Sampled {
            count: SAMPLED_GRID_POINTS,
            seed,
        }
    };
    let approx = check_approximation(
        &tropical,
        &problem,
        &two,
        GridOptions {
            mode,
            max_weight: None,
        },
        &caps,
    )?;

    Ok(GapReport {
        m,
        n,
        read2_size: read2.size(),
        dual_size: dual.size(),
        size_bound: 2 * n,
        read2_computes_lines,
        read2_structure,
        read2_semantic_k: rk.semantic,
        read2_syntactic_k: rk.syntactic,
        read2_tight,
        dual_computes_dual,
        dual_semantic_k: dual_rk.semantic,
        envelope_size: envelope.len(),
        expected_envelope_size,
        envelope_is_matchings: envelope == matchings,
        tropical_structural: approx.structural_pass,
        tropical_grid: approx.grid_pass,
        tropical_grid_points: approx.grid_points,
        tropical_sampled_seed: approx.sampled_seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Op;

    #[test]
    fn circuit_sizes() {
        for m in 2..=5 {
            let c = read2_lines_circuit(m).unwrap();
            assert_eq!(c.size(), 2 * m * (m - 1) + 2 * m - 1);
            assert!(c.size() <= 2 * m * m);
            assert_eq!(dual_lines_read1_circuit(m).unwrap().size(), c.size());
        }
        let c = read2_lines_circuit(3).unwrap();
        assert_eq!((c.count_gates(Op::Add), c.count_gates(Op::Mul)), (12, 5));
        assert!(read2_lines_circuit(1).is_err());
    }

    #[test]
    fn dual_matches_dual_of_read2() {
        let f = compute_function(&read2_lines_circuit(2).unwrap()).unwrap();
        let d = compute_function(&dual_lines_read1_circuit(2).unwrap()).unwrap();
        assert_eq!(d, f.dual());
    }

    #[test]
    fn read2_circuit_produces_non_minimal_supports() {
        // x_{0,0} chosen by row 0 and column 0, rows 1, 2 pick column 0, columns 1, 2
        // pick row 0: the support is row 0 ∪ column 0, which still blocks without (0,0).
        let m = 3;
        let c = read2_lines_circuit(m).unwrap();
        let b = crate::poly::produced_exponent_set(&c, &Caps::default()).unwrap();
        let cross: Vec<usize> = vec![0, 1, 2, 3, 6];
        assert!(b.supports().contains(&cross));
        let low = compute_function(&c).unwrap().lowest_ones();
        assert!(!low.supports().contains(&cross));
        assert!(low.supports().contains(&vec![1, 2, 3, 6]));
    }

    #[test]
    fn reports_for_small_grids() {
        for m in [2, 3] {
            let r = gap_report(m, 0).unwrap();
            assert_eq!(r.failures(), vec!["read2_tight"], "{r:?}");
        }
        let r = gap_report(3, 0).unwrap();
        assert_eq!(r.tropical_sampled_seed, Some(0));
        assert_eq!((r.read2_size, r.envelope_size), (17, 6));
        assert!(matches!(gap_report(1, 0), Err(Error::InvalidArgument(_))));
        assert!(matches!(gap_report(5, 0), Err(Error::BudgetExceeded(_))));
    }
}
