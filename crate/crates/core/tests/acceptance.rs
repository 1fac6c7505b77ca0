//! Acceptance suite: runs every criterion, prints one PASS/FAIL line each and exits
//! non-zero when any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sck::boolfun::{
    classify_read_k, compute_function, verify_structure, BooleanFunction,
};
use sck::circuit::{integer, Circuit, CircuitBuilder, Node, NodeId, Op, Semiring};
use sck::families::{gap_report, permanent_circuit, permanent_var};
use sck::multilinear::{
    impedes_zero_terms, independent, is_semantically_multilinear, is_syntactically_multilinear,
};
use sck::poly::{
    brute_force_expand, brute_force_expand_truncated, individual_degree_bound,
    polynomial_identity_by_grid, produced_polynomial, Caps, ExpVec, ExpVecSet, FormalPolynomial,
};
use sck::random;
use sck::transforms::{
    decompose, homogeneous_parts, lower_envelope_circuit, matching_lower_bound_report,
    or_of_prime_implicants, replace_negated_literals,
};
use sck::tropical::{
    boolean_read_k_to_tropical, check_approximation, tropical_to_boolean_read_r, GridMode,
    GridOptions, MinProblem,
};
use sck::Error;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
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

fn poly(n: usize, terms: &[(&[u64], u32)]) -> FormalPolynomial {
    FormalPolynomial::from_terms(
        n,
        terms
            .iter()
            .map(|(e, k)| (ExpVec::from_dense(e), BigUint::from(*k))),
    )
}

fn example_one() -> Outcome {
    let caps = Caps::default();
    let expected = poly(
        3,
        &[
            (&[2, 1, 0], 1),
            (&[1, 2, 0], 1),
            (&[2, 0, 1], 1),
            (&[0, 2, 1], 1),
            (&[1, 0, 2], 1),
            (&[0, 1, 2], 1),
            (&[1, 1, 1], 2),
        ],
    );
    let cnf = maj3_cnf();
    let p = produced_polynomial(&cnf, &caps).map_err(err)?;
    ensure(p == expected, || format!("produced polynomial {p}"))?;
    ensure(brute_force_expand(&cnf, &caps).map_err(err)? == expected, || {
        "brute-force expansion differs".into()
    })?;
    let maj = BooleanFunction::from_fn(3, |x| x.count_ones() >= 2).unwrap();
    let k_cnf = classify_read_k(&cnf, &maj, &caps).map_err(err)?;
    let k_dnf = classify_read_k(&maj3_dnf(), &maj, &caps).map_err(err)?;
    ensure(k_cnf.semantic == Some(2), || format!("CNF semanticK {:?}", k_cnf.semantic))?;
    ensure(k_dnf.semantic == Some(1), || format!("DNF semanticK {:?}", k_dnf.semantic))?;
    Ok("7 terms, coefficient 2 at xyz, semanticK CNF=2 DNF=1".into())
}

fn structure_suite() -> Outcome {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let trials = 10_000;
    let mut equal = 0;
    for t in 0..trials {
        let n = rng.random_range(1..=4);
        let gates = rng.random_range(1..=8);
        let c = random::monotone_circuit(&mut rng, Semiring::Boolean, n, gates);
        let fc = compute_function(&c).map_err(err)?;
        let f = match rng.random_range(0..4) {
            0 => fc.clone(),
            1 => random::monotone_function(&mut rng, n),
            2 => BooleanFunction::constant(n, rng.random_bool(0.5)).unwrap(),
            _ => {
                // Add or drop one minimal support.
                let mut low = fc.lowest_ones().vecs().clone();
                let extra = ExpVec::from_support((0..n).filter(|_| rng.random_bool(0.5)));
                if !low.remove(&extra) {
                    low.insert(extra);
                }
                BooleanFunction::from_supports(n, &ExpVecSet::from_vecs(n, low)).unwrap()
            }
        };
        let verdict = verify_structure(&c, &f, &caps).map_err(err)?;
        equal += usize::from(fc == f);
        ensure(verdict == (fc == f), || {
            format!("trial {t}: verdict {verdict} but truth tables equal = {}", fc == f)
        })?;
    }
    Ok(format!("{trials} circuits, {equal} computing f, 100% agreement"))
}

/// Structural minimum degree: inputs 1, constants 0, min at +, sum at ×.
fn min_degree(c: &Circuit) -> u64 {
    let mut d: Vec<u64> = Vec::new();
    for node in c.nodes() {
        d.push(match node {
            Node::Input(_) | Node::Literal { .. } => 1,
            Node::Const(_) => 0,
            Node::Gate { op: Op::Add, left, right } => d[*left].min(d[*right]),
            Node::Gate { op: Op::Mul, left, right } => d[*left] + d[*right],
        });
    }
    d[c.output().unwrap()]
}

/// Random arithmetic circuits with at most 20 gates over at most 5 variables; with
/// `constants` the leaves also include 1, 2 and 3.
fn arithmetic_corpus(seed: u64, count: usize, constants: bool) -> Vec<Circuit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = [integer(1), integer(2), integer(3)];
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=5);
            let gates = rng.random_range(1..=20);
            if constants {
                random::circuit_with_constants(&mut rng, Semiring::Arithmetic, n, gates, &k)
            } else {
                random::monotone_circuit(&mut rng, Semiring::Arithmetic, n, gates)
            }
        })
        .collect()
}

fn homogenization() -> Outcome {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut corpus = arithmetic_corpus(3, 1_000, false);
    corpus.extend(arithmetic_corpus(4, 500, true));
    for (i, c) in corpus.iter().enumerate() {
        let r = rng.random_range(0..=6);
        let h = homogeneous_parts(c, r).map_err(err)?;
        let s = c.size();
        ensure(h.circuit.size() <= s * (r + 1) * (r + 1), || {
            format!("circuit {i}: {} gates > s(r+1)^2 = {}", h.circuit.size(), s * (r + 1) * (r + 1))
        })?;
        let oracle = brute_force_expand_truncated(c, r as u64, &caps).map_err(err)?;
        let parts = h.polynomials(&caps).map_err(err)?;
        for (d, p) in parts.iter().enumerate() {
            ensure(*p == oracle.homogeneous_part(d as u64), || {
                format!("circuit {i}: degree-{d} part differs")
            })?;
        }
    }
    Ok(format!(
        "{} circuits (500 with constants), r in 0..=6, all parts match, size ≤ s(r+1)^2",
        corpus.len()
    ))
}

fn envelope() -> Outcome {
    let caps = Caps::default();
    let corpus = arithmetic_corpus(3, 1_000, false);
    let mut checked = 0;
    for (i, c) in corpus.iter().enumerate() {
        let e = lower_envelope_circuit(c).map_err(err)?;
        ensure(e.size() <= c.size(), || format!("circuit {i}: size grew"))?;
        let d = min_degree(c);
        let slice = brute_force_expand_truncated(c, d, &caps).map_err(err)?;
        let produced = brute_force_expand(&e, &caps).map_err(err)?;
        ensure(produced == slice, || format!("circuit {i}: envelope expansion differs"))?;
        checked += 1;
    }
    Ok(format!("{checked} circuits, expansion equals the lenv slice, size never grows"))
}

fn all_monotone_functions(n: usize) -> Vec<BooleanFunction> {
    (0u64..1 << (1 << n))
        .map(|t| BooleanFunction::from_fn(n, |x| t >> x & 1 == 1).unwrap())
        .filter(|f| f.is_monotone())
        .collect()
}

fn tropical_round_trip() -> Outcome {
    let caps = Caps::default();
    let monotone = all_monotone_functions(3);
    ensure(monotone.len() == 20, || format!("{} monotone functions", monotone.len()))?;
    let nonconstant: Vec<_> = monotone.into_iter().filter(|f| !f.is_constant()).collect();
    for f in &nonconstant {
        let c = or_of_prime_implicants(f).map_err(err)?;
        let t = boolean_read_k_to_tropical(&c, f, 1, &caps).map_err(err)?;
        let p = MinProblem::from_function(f).map_err(err)?;
        let grid = GridOptions {
            mode: GridMode::Exhaustive,
            max_weight: Some(7),
        };
        let report = check_approximation(&t, &p, &integer(1), grid, &caps).map_err(err)?;
        ensure(report.exact && report.grid_pass && report.grid_points == 512, || {
            format!("{f:?}: {report:?}")
        })?;
        let back = tropical_to_boolean_read_r(&t, &p, 1, &caps).map_err(err)?;
        ensure(back.size() == c.size() && t.size() == c.size(), || format!("{f:?}: size changed"))?;
        ensure(compute_function(&back).map_err(err)? == *f, || format!("{f:?}: not recomputed"))?;
        let k = classify_read_k(&back, f, &caps).map_err(err)?;
        ensure(k.semantic == Some(1), || format!("{f:?}: semanticK {:?}", k.semantic))?;
    }
    Ok(format!(
        "{} non-constant of 20 monotone functions, exact on {{0..7}}^3, size kept, semanticK=1",
        nonconstant.len()
    ))
}

fn gap_table() -> Outcome {
    let r = gap_report(3, 0).map_err(err)?;
    ensure(r.read2_size == 17 && r.size_bound == 18, || format!("sizes {r:?}"))?;
    let failures = r.failures();
    let detail = format!(
        "read-2 size 17 ≤ 18, syntacticK {}, dual size {} semanticK {:?}, envelope {} vectors, factor-2 grid {} points",
        r.read2_syntactic_k, r.dual_size, r.dual_semantic_k, r.envelope_size, r.tropical_grid_points
    );
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("failing verdicts {failures:?}; {detail}"))
    }
}

fn permanent_oracle(n: usize) -> FormalPolynomial {
    FormalPolynomial::from_terms(
        n * n,
        (0..n).permutations(n).map(|p| {
            let e = ExpVec::from_support(p.iter().enumerate().map(|(i, &j)| permanent_var(n, i, j)));
            (e, BigUint::from(1u8))
        }),
    )
}

fn permanent_counts() -> Outcome {
    let caps = Caps::default();
    for (n, muls) in [(2, 2), (3, 9), (4, 28), (5, 75)] {
        let c = permanent_circuit(n).map_err(err)?;
        ensure(c.count_gates(Op::Mul) == muls, || {
            format!("n={n}: {} multiplication gates", c.count_gates(Op::Mul))
        })?;
        ensure(muls == n * ((1 << (n - 1)) - 1), || "formula".into())?;
        if n <= 4 {
            let p = brute_force_expand(&c, &caps).map_err(err)?;
            ensure(p == permanent_oracle(n), || format!("n={n}: expansion differs"))?;
            let fact: usize = (1..=n).product();
            ensure(p.len() == fact, || format!("n={n}: {} monomials", p.len()))?;
        }
    }
    Ok("multiplication gates 2, 9, 28, 75; 2, 6, 24 unit monomials".into())
}

fn decomposition() -> Outcome {
    let caps = Caps::default();
    let c = permanent_circuit(3).map_err(err)?;
    let d = decompose(&c, &caps).map_err(err)?;
    ensure(d.pairs.len() <= c.size(), || format!("{} pairs > size {}", d.pairs.len(), c.size()))?;
    for p in &d.pairs {
        let deg = p.g.degree().unwrap_or(0);
        ensure((1..=2).contains(&deg), || format!("deg g = {deg}"))?;
    }
    ensure(d.reassemble(9, &caps).map_err(err)? == permanent_oracle(3), || {
        "Σ g_i h_i differs from perm_3".into()
    })?;
    let report = matching_lower_bound_report(3).map_err(err)?;
    ensure(report.analytic_bound == 3, || format!("analytic bound {}", report.analytic_bound))?;
    Ok(format!(
        "{} pairs for {} gates, reassembles perm_3, analytic bound C(3,1) = 3",
        d.pairs.len(),
        c.size()
    ))
}

fn multilinear_suite() -> Outcome {
    let caps = Caps::default();
    let cap = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(9);

    // Positive versions of multilinear circuits compute the upward closure.
    let mut pos_checked = 0;
    let mut read1_checked = 0;
    let mut attempts = 0;
    while pos_checked < 1_000 || read1_checked < 1_000 {
        attempts += 1;
        ensure(attempts < 100_000, || "generator starved".into())?;
        let n = rng.random_range(1..=4);
        let gates = rng.random_range(0..=8);
        let negation = if rng.random_bool(0.5) { 0.0 } else { 0.4 };
        let c = match rng.random_range(0..3) {
            0 => random::demorgan_circuit(&mut rng, n, gates),
            1 => random::monotone_circuit(&mut rng, Semiring::Boolean, n, gates),
            _ => random::multilinear_circuit(&mut rng, n, gates, negation),
        };
        if !is_semantically_multilinear(&c).map_err(err)? {
            continue;
        }
        let f = compute_function(&c).map_err(err)?;
        let pos = compute_function(&replace_negated_literals(&c).map_err(err)?).map_err(err)?;
        ensure(pos == f.upward_closure(), || format!("pos(F) ≠ ↑f for {c:?}"))?;
        pos_checked += 1;
        if c.is_monotone() {
            let k = classify_read_k(&c, &f, &caps).map_err(err)?;
            ensure(k.semantic == Some(1), || format!("monotone multilinear semanticK {:?}", k.semantic))?;
            read1_checked += 1;
        }
    }

    // Zero-term impediment characterises positive versions computing ↑f.
    let mut impede_checked = 0;
    let mut impeding = 0;
    while impede_checked < 1_000 {
        let n = rng.random_range(1..=4);
        let gates = rng.random_range(0..=8);
        let c = random::demorgan_circuit(&mut rng, n, gates);
        let f = compute_function(&c).map_err(err)?;
        if f.eval(0) {
            continue;
        }
        let pos = compute_function(&replace_negated_literals(&c).map_err(err)?).map_err(err)?;
        let imp = impedes_zero_terms(&c, &f, cap).map_err(err)?;
        ensure(imp == (pos == f.upward_closure()), || format!("impediment mismatch for {c:?}"))?;
        impede_checked += 1;
        impeding += usize::from(imp);
    }

    // The dependent pairs where the independence-based claims fail.
    let func = |s: &str| sck::boolfun::parse_function(&format!("dnf:{s}"), 3).unwrap();
    for (g, h) in [("x&!y&!z|x&y", "!x&!y&z|y&z"), ("x&!y|z", "!x&y|z")] {
        let (g, h) = (func(g), func(h));
        let both = g.and(&h);
        let sum = g
            .lowest_ones()
            .minkowski_sum(&h.lowest_ones(), &caps)
            .map_err(err)?;
        ensure(!independent(&g, &h), || "pinned pair is independent".into())?;
        ensure(!both.lowest_ones().is_subset(&sum), || "Low(g∧h) ⊆ Low g + Low h held".into())?;
        ensure(both.upward_closure() != g.upward_closure().and(&h.upward_closure()), || {
            "↑(g∧h) = ↑g ∧ ↑h held".into()
        })?;
    }
    let syntactic = random::multilinear_circuit(&mut rng, 4, 6, 0.3);
    ensure(is_syntactically_multilinear(&syntactic).map_err(err)?, || "generator".into())?;

    Ok(format!(
        "{pos_checked} multilinear (pos = ↑f), {read1_checked} monotone read-1, {impede_checked} impediment checks ({impeding} impeding), 2 pinned counterexamples"
    ))
}

/// Rebuilds `c` with random commutations and distributions; the produced polynomial
/// is unchanged.
fn equivalent_rewrite(c: &Circuit, rng: &mut ChaCha8Rng) -> Circuit {
    let mut b = CircuitBuilder::new(c.semiring(), c.num_vars());
    let mut map: Vec<NodeId> = Vec::new();
    let mut sums: Vec<Option<(NodeId, NodeId)>> = Vec::new();
    for node in c.nodes() {
        let (id, sum) = match node {
            Node::Input(i) => (b.input(*i), None),
            Node::Literal { var, negated } => (b.literal(*var, *negated), None),
            Node::Const(k) => (b.constant(k.clone()), None),
            Node::Gate { op, left, right } => {
                let (mut l, mut r) = (*left, *right);
                if rng.random_bool(0.5) {
                    std::mem::swap(&mut l, &mut r);
                }
                match op {
                    Op::Add => (b.add(map[l], map[r]), Some((map[l], map[r]))),
                    Op::Mul => match sums[r] {
                        Some((a, s)) if rng.random_bool(0.5) => {
                            let la = b.mul(map[l], a);
                            let ls = b.mul(map[l], s);
                            (b.add(la, ls), None)
                        }
                        _ => (b.mul(map[l], map[r]), None),
                    },
                }
            }
        };
        map.push(id);
        sums.push(sum);
    }
    b.build_single(map[c.output().unwrap()]).unwrap()
}

fn grid_identity() -> Outcome {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut same, mut differ) = (0, 0);
    let pairs = 1_000;
    for t in 0..pairs {
        let n = rng.random_range(1..=4);
        let (g1, g2) = (rng.random_range(1..=6), rng.random_range(1..=6));
        let c1 = random::monotone_circuit(&mut rng, Semiring::Arithmetic, n, g1);
        let c2 = match rng.random_range(0..3) {
            0 => equivalent_rewrite(&c1, &mut rng),
            1 => random::monotone_circuit(&mut rng, Semiring::Arithmetic, n, g2),
            _ => {
                let other = random::monotone_circuit(&mut rng, Semiring::Arithmetic, n, 1);
                // A fresh one-gate circuit or c1 with an input renamed.
                let mut nodes = c1.nodes().to_vec();
                if let Some(pos) = nodes.iter().position(|x| matches!(x, Node::Input(_))) {
                    nodes[pos] = Node::Input(rng.random_range(0..n));
                }
                let renamed = Circuit::from_parts(Semiring::Arithmetic, n, nodes, c1.outputs().to_vec())
                    .unwrap();
                if rng.random_bool(0.5) { renamed } else { other }
            }
        };
        let d = individual_degree_bound(&c1).max(individual_degree_bound(&c2));
        let grid = polynomial_identity_by_grid(&c1, &c2, d);
        let verdict = match grid {
            Ok(v) => v,
            Err(Error::BudgetExceeded(_)) => return Err(format!("pair {t}: grid over budget at d = {d}")),
            Err(e) => return Err(err(e)),
        };
        let truth = brute_force_expand(&c1, &caps).map_err(err)? == brute_force_expand(&c2, &caps).map_err(err)?;
        ensure(verdict == truth, || format!("pair {t}: grid {verdict}, expansion {truth}"))?;
        if truth {
            same += 1;
        } else {
            differ += 1;
        }
    }
    Ok(format!("{pairs} pairs ({same} identical, {differ} different), 100% agreement"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "example-1 reproduction", limit: Some(Duration::from_secs(1)), run: example_one },
        Criterion { id: 2, name: "structure check vs truth tables", limit: Some(Duration::from_secs(60)), run: structure_suite },
        Criterion { id: 3, name: "homogenization", limit: Some(Duration::from_secs(120)), run: homogenization },
        Criterion { id: 4, name: "lower envelope", limit: None, run: envelope },
        Criterion { id: 5, name: "tropical round trip at k=1", limit: Some(Duration::from_secs(60)), run: tropical_round_trip },
        Criterion { id: 6, name: "gap table m=3", limit: Some(Duration::from_secs(30)), run: gap_table },
        Criterion { id: 7, name: "permanent circuit counts", limit: Some(Duration::from_secs(30)), run: permanent_counts },
        Criterion { id: 8, name: "decomposition of perm_3", limit: Some(Duration::from_secs(10)), run: decomposition },
        Criterion { id: 9, name: "multilinear suite", limit: Some(Duration::from_secs(120)), run: multilinear_suite },
        Criterion { id: 10, name: "grid identity oracle agreement", limit: None, run: grid_identity },
    ];
    let mut failed = BTreeSet::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {} ({elapsed:.2?}): {detail}", c.id, c.name),
            Err(why) => {
                println!("criterion {:>2} FAIL {} ({elapsed:.2?}): {why}", c.id, c.name);
                failed.insert(c.id);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed.len(),
        criteria.len()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
