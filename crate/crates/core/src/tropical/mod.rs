//! (min,+) circuits as solvers and approximators of 0/1 minimization problems.

mod problem;

use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::boolfun::classify_read_k;
use crate::boolfun::BooleanFunction;
use crate::circuit::eval::NatEvaluator;
use crate::circuit::{evaluate, integer, retarget, Circuit, Node, Rational, Semiring};
use crate::error::{Error, Result};
use crate::grid::{grid_len, grid_point};
use crate::poly::{produced_exponent_set, Caps, ExpVecSet};
use crate::transforms::eliminate_constants;

pub use problem::{parse_problem, print_problem, MinProblem};

/// Largest grid evaluated exhaustively.
pub const APPROX_GRID_BUDGET: u64 = 10_000_000;

/// Arity up to which sampled grids also include the 0/1 and `{1, ⌈k⌉n+1}` corners.
const CORNER_ARITY: usize = 16;

/// How the weight grid of an approximation check is covered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMode {
    Exhaustive,
    /// The 0/1 cube, the `{1, ⌈k⌉n+1}` cube (both for small arity), and `count` uniform
    /// points drawn from a generator seeded with `seed`.
    Sampled { count: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridOptions {
    pub mode: GridMode,
    /// Largest weight; defaults to `⌈k⌉·n + 1`.
    pub max_weight: Option<u64>,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            mode: GridMode::Exhaustive,
            max_weight: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxReport {
    /// `B_F ⊆ ↑A` and every `a ∈ A` has a shadow `b ∈ B_F` with `⟨a,b⟩ ≤ k⟨a,a⟩`; for
    /// `k = 1` additionally `A ⊆ B_F`.
    pub structural_pass: bool,
    /// `k = 1` and the structural test passed: the circuit solves the problem exactly.
    pub exact: bool,
    /// `f_A(x) ≤ F(x) ≤ k·f_A(x)` at every grid point checked.
    pub grid_pass: bool,
    pub grid_points: u64,
    pub max_weight: u64,
    /// Seed of the sampled grid, `None` for an exhaustive one.
    pub sampled_seed: Option<u64>,
}

/// Replaces every constant by 0 and simplifies with `min(u, 0) = 0`, `u + 0 = u`.
///
/// Fails with `ConstantFunction` when the whole circuit collapses to the constant 0.
pub fn constant_free_version(c: &Circuit) -> Result<Circuit> {
    c.require_semiring(Semiring::Tropical)?;
    c.require_monotone()?;
    if c.is_constant_free() {
        return Ok(c.clone());
    }
    // 0 is the multiplicative unit and absorbs under min, exactly as 1 does in (∨, ∧).
    let nodes = c
        .nodes()
        .iter()
        .map(|n| match n {
            Node::Const(_) => Node::Const(Rational::one()),
            other => other.clone(),
        })
        .collect();
    let as_bool = Circuit::from_parts_unchecked(
        Semiring::Boolean,
        c.num_vars(),
        nodes,
        c.outputs().to_vec(),
    );
    Ok(eliminate_constants(&as_bool)?.with_semiring(Semiring::Tropical))
}

fn check_factor(k: &Rational) -> Result<()> {
    if k < &Rational::one() {
        return Err(Error::InvalidArgument(format!("approximation factor {k} is below 1")));
    }
    Ok(())
}

fn check_inputs(c: &Circuit, p: &MinProblem) -> Result<()> {
    c.require_semiring(Semiring::Tropical)?;
    c.require_monotone()?;
    c.require_constant_free()?;
    c.output()?;
    if c.num_vars() != p.arity() {
        return Err(Error::ArityMismatch {
            expected: p.arity(),
            got: c.num_vars(),
        });
    }
    Ok(())
}

/// The structural half of the check on an explicit produced set.
pub fn structural_approximation(b: &ExpVecSet, p: &MinProblem, k: &Rational) -> bool {
    let a = p.solutions();
    if !b.is_in_upward_closure_of(a) {
        return false;
    }
    if k.is_one() && !a.is_subset(b) {
        return false;
    }
    a.iter().all(|a| {
        let size = Rational::from_integer((a.support_len() as i64).into());
        b.iter()
            .filter(|v| v.is_shadow_of(a))
            .any(|v| Rational::from_integer((v.degree() as i64).into()) <= k * &size)
    })
}

/// Structural and grid comparison of `F` against `f_A` for factor `k ≥ 1`.
pub fn check_approximation(
    c: &Circuit,
    p: &MinProblem,
    k: &Rational,
    grid: GridOptions,
    caps: &Caps,
) -> Result<ApproxReport> {
    check_inputs(c, p)?;
    check_factor(k)?;
    let full_caps = Caps {
        max_degree: None,
        ..*caps
    };
    let b = produced_exponent_set(c, &full_caps)?;
    let structural_pass = structural_approximation(&b, p, k);

    let n = p.arity();
    let ceil_k = k.ceil().to_integer().to_u64().ok_or_else(|| {
        Error::InvalidArgument(format!("approximation factor {k} is too large"))
    })?;
    let max_weight = match grid.max_weight {
        Some(w) => w,
        None => ceil_k
            .checked_mul(n as u64)
            .and_then(|v| v.checked_add(1))
            .ok_or_else(|| Error::BudgetExceeded("weight grid bound overflows".into()))?,
    };
    let base = max_weight + 1;
    let masks = p.support_masks()?;
    let checker = PointChecker {
        c,
        p,
        masks: &masks,
        num: k.numer().to_u128(),
        den: k.denom().to_u128(),
        k,
    };

    let (grid_pass, grid_points, sampled_seed) = match grid.mode {
        GridMode::Exhaustive => {
            let len = grid_len(base, n)
                .filter(|&l| l <= APPROX_GRID_BUDGET)
                .ok_or_else(|| {
                    Error::BudgetExceeded(format!(
                        "weight grid {{0..{max_weight}}}^{n} exceeds {APPROX_GRID_BUDGET} points"
                    ))
                })?;
            let pass = (0..len)
                .into_par_iter()
                .map_init(
                    || (NatEvaluator::new(c, Semiring::Tropical), vec![0u64; n]),
                    |(eval, x), idx| {
                        grid_point(idx, base, x);
                        checker.holds(eval, x)
                    },
                )
                .all(|ok| ok);
            (pass, len, None)
        }
        GridMode::Sampled { count, seed } => {
            let points = sample_points(n, max_weight, ceil_k, count, seed);
            let pass = points
                .par_iter()
                .map_init(
                    || NatEvaluator::new(c, Semiring::Tropical),
                    |eval, x| checker.holds(eval, x),
                )
                .all(|ok| ok);
            (pass, points.len() as u64, Some(seed))
        }
    };

    Ok(ApproxReport {
        structural_pass,
        exact: structural_pass && k.is_one(),
        grid_pass,
        grid_points,
        max_weight,
        sampled_seed,
    })
}

fn sample_points(n: usize, max_weight: u64, ceil_k: u64, count: u64, seed: u64) -> Vec<Vec<u64>> {
    let mut points = Vec::new();
    if n <= CORNER_ARITY {
        let heavy = (ceil_k * n as u64 + 1).min(max_weight);
        for (lo, hi) in [(0, 1.min(max_weight)), (1.min(max_weight), heavy)] {
            for mask in 0u64..1 << n {
                points.push((0..n).map(|i| if mask >> i & 1 == 1 { hi } else { lo }).collect());
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        points.push((0..n).map(|_| rng.random_range(0..=max_weight)).collect());
    }
    points
}

struct PointChecker<'a> {
    c: &'a Circuit,
    p: &'a MinProblem,
    masks: &'a [u64],
    num: Option<u128>,
    den: Option<u128>,
    k: &'a Rational,
}

impl PointChecker<'_> {
    fn holds(&self, eval: &mut Option<NatEvaluator>, x: &[u64]) -> bool {
        let fast = eval.as_mut().and_then(|e| e.eval(x)).map(|v| v[0]);
        let opt = self
            .masks
            .iter()
            .map(|&m| {
                (0..x.len())
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| x[i] as u128)
                    .sum::<u128>()
            })
            .min()
            .expect("nonempty");
        if let (Some(value), Some(num), Some(den)) = (fast, self.num, self.den) {
            if let (Some(lhs), Some(rhs)) = (value.checked_mul(den), opt.checked_mul(num)) {
                return opt <= value && lhs <= rhs;
            }
        }
        let xs: Vec<Rational> = x.iter().map(|&v| integer(v as i64)).collect();
        let value = evaluate(self.c, Semiring::Tropical, &xs).expect("validated circuit");
        let opt = self.p.solve_brute_force(&xs).expect("validated problem");
        opt <= value && value <= self.k * opt
    }
}

/// Reinterprets a read-`k` Boolean circuit for monotone `f` over (min,+); the result
/// approximates the problem on `Low f` within factor `k`.
pub fn boolean_read_k_to_tropical(
    c: &Circuit,
    f: &BooleanFunction,
    k: u64,
    caps: &Caps,
) -> Result<Circuit> {
    c.require_semiring(Semiring::Boolean)?;
    let rk = classify_read_k(c, f, caps)?;
    match rk.semantic {
        Some(s) if s <= k && !rk.truncated => retarget(c, Semiring::Tropical),
        _ => Err(Error::NotReadK(k)),
    }
}

/// `(k − 1)·m + 1`.
pub fn read_bound(k: u64, m: usize) -> u64 {
    (k - 1) * m as u64 + 1
}

/// Boolean version of the constant-free version of a factor-`k` approximator. The
/// result computes `⋁_{a∈A} ⋀_{i∈supp a} x_i` and is read-`(k−1)m+1`.
pub fn tropical_to_boolean_read_r(
    c: &Circuit,
    p: &MinProblem,
    k: u64,
    caps: &Caps,
) -> Result<Circuit> {
    if k == 0 {
        return Err(Error::InvalidArgument("approximation factor 0".into()));
    }
    let cf = constant_free_version(c)?;
    check_inputs(&cf, p)?;
    let full_caps = Caps {
        max_degree: None,
        ..*caps
    };
    let b = produced_exponent_set(&cf, &full_caps)?;
    if !structural_approximation(&b, p, &Rational::from_integer((k as i64).into())) {
        return Err(Error::NotApproximating);
    }
    retarget(&cf, Semiring::Boolean)
}

/// Largest `F(x)/f_A(x)` over the grid points where `f_A(x) > 0`, together with whether
/// `F(x) ≥ f_A(x)` held everywhere. Constants are allowed.
pub fn measured_factor(
    c: &Circuit,
    p: &MinProblem,
    max_weight: u64,
) -> Result<(Option<Rational>, bool)> {
    c.require_semiring(Semiring::Tropical)?;
    c.output()?;
    let n = p.arity();
    let len = grid_len(max_weight + 1, n)
        .filter(|&l| l <= APPROX_GRID_BUDGET)
        .ok_or_else(|| Error::BudgetExceeded("measurement grid too large".into()))?;
    let mut worst: Option<Rational> = None;
    let mut lower_ok = true;
    let mut x = vec![0u64; n];
    for idx in 0..len {
        grid_point(idx, max_weight + 1, &mut x);
        let xs: Vec<Rational> = x.iter().map(|&v| integer(v as i64)).collect();
        let value = evaluate(c, Semiring::Tropical, &xs)?;
        let opt = p.solve_brute_force(&xs)?;
        lower_ok &= opt <= value;
        if !opt.is_zero() {
            let ratio = value / opt;
            if worst.as_ref().is_none_or(|w| &ratio > w) {
                worst = Some(ratio);
            }
        } else if !value.is_zero() {
            return Ok((None, lower_ok));
        }
    }
    Ok((Some(worst.unwrap_or_else(Rational::one)), lower_ok))
}
