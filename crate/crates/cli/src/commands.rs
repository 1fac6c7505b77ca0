//! Subcommand handlers. Each returns a report; verification failures are verdicts,
//! everything else is an error.

use std::fs;
use std::path::{Path, PathBuf};

use num_traits::One;

use sck::boolfun::{classify_read_k, compute_function, is_tight, parse_function, verify_structure, BooleanFunction};
use sck::circuit::{evaluate_all, parse_circuit, print_circuit, retarget, Circuit, Op, Rational, Semiring};
use sck::families::{
    cov_family, dual_lines_read1_circuit, gap_report, lines_family, matching_function,
    permanent_circuit, read2_lines_circuit, LineFamily,
};
use sck::multilinear::{impedes_zero_terms, is_semantically_multilinear, is_syntactically_multilinear};
use sck::poly::{max_individual_degree, produced_polynomials, Caps};
use sck::transforms::{
    arithmetic_to_read1, degree_reduce_read_k, eliminate_constants, homogeneous_parts,
    lower_envelope_circuit, matching_lower_bound_report, positive_version,
};
use sck::tropical::{
    boolean_read_k_to_tropical, check_approximation, constant_free_version, parse_problem,
    print_problem, tropical_to_boolean_read_r, GridMode, GridOptions, MinProblem,
};

use crate::report::{InputsDigest, Provenance, Report};
use crate::{
    Cli, CliError, Command, FunctionArgs, GenCommand, GenOutput, MlinArgs, MlinCommand,
    ReportCommand, TransformArgs, TropArgs, TropCommand, VerifyCommand,
};

pub const MAX_SET_SIZE_ENV: &str = "SCK_MAX_SET_SIZE";

type Result<T> = std::result::Result<T, CliError>;

struct Ctx {
    caps: Caps,
    seed: u64,
    digest: InputsDigest,
    report: Report,
}

impl Ctx {
    fn read(&mut self, label: &str, path: &Path) -> Result<String> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
        self.digest.add(label, text.as_bytes());
        Ok(text)
    }

    fn circuit(&mut self, path: &Path) -> Result<Circuit> {
        let text = self.read("circuit", path)?;
        Ok(parse_circuit(&text)?)
    }

    fn problem(&mut self, path: &Path) -> Result<MinProblem> {
        let text = self.read("problem", path)?;
        Ok(parse_problem(&text)?)
    }

    /// The given literal, or the function `c` computes.
    fn function(&mut self, c: &Circuit, literal: Option<&str>) -> Result<BooleanFunction> {
        match literal {
            Some(lit) => {
                self.digest.add("function", lit.as_bytes());
                let f = parse_function(lit, c.num_vars())?;
                if f.arity() != c.num_vars() {
                    return Err(sck::Error::ArityMismatch {
                        expected: c.num_vars(),
                        got: f.arity(),
                    }
                    .into());
                }
                Ok(f)
            }
            None => Ok(compute_function(c)?),
        }
    }

    /// Writes `text` to `path`, or makes it the report's artifact.
    fn emit(&mut self, text: String, path: Option<&PathBuf>) -> Result<()> {
        match path {
            Some(p) => {
                fs::write(p, &text).map_err(|source| CliError::Io {
                    path: p.clone(),
                    source,
                })?;
                self.report.value("written", p.display());
            }
            None => self.report.output = Some(text),
        }
        Ok(())
    }

    fn write_side(&mut self, text: String, path: &Path, name: &str) -> Result<()> {
        fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
        self.report.value(name, path.display());
        Ok(())
    }

    fn describe(&mut self, c: &Circuit) {
        self.report.count("size", c.size() as u64);
        self.report.count("add_gates", c.count_gates(Op::Add) as u64);
        self.report.count("mul_gates", c.count_gates(Op::Mul) as u64);
        self.report.count("vars", c.num_vars() as u64);
    }
}

fn max_set_size(flag: Option<usize>) -> Result<usize> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(MAX_SET_SIZE_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{MAX_SET_SIZE_ENV} must be a count, got `{v}`"))),
        Err(_) => Ok(Caps::DEFAULT_MAX_SET_SIZE),
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("`{s}` is not an integer or p/q")))
}

fn parse_pass_arg(pass: &str, arg: Option<&str>) -> Result<u64> {
    let arg = arg.ok_or_else(|| CliError::Usage(format!("pass `{pass}` needs `:<number>`")))?;
    arg.parse()
        .map_err(|_| CliError::Usage(format!("pass `{pass}`: `{arg}` is not a number")))
}

pub fn run(cli: Cli, echo: Vec<String>) -> Result<Report> {
    let caps = Caps {
        max_set_size: max_set_size(cli.max_set_size)?,
        max_degree: cli.max_degree,
    };
    let provenance = Provenance {
        seed: cli.seed,
        max_set_size: caps.max_set_size,
        max_degree: caps.max_degree,
    };
    let mut ctx = Ctx {
        caps,
        seed: cli.seed,
        digest: InputsDigest::default(),
        report: Report::new(echo, provenance),
    };
    match cli.command {
        Command::Gen { family } => gen(&mut ctx, family)?,
        Command::Eval { circuit, at, semiring } => eval(&mut ctx, &circuit, &at, semiring.as_deref())?,
        Command::Expand { circuit } => expand(&mut ctx, &circuit)?,
        Command::Classify(args) => classify(&mut ctx, &args)?,
        Command::Transform(args) => transform(&mut ctx, &args)?,
        Command::Verify { check } => match check {
            VerifyCommand::Struct(args) => verify_struct(&mut ctx, &args, false)?,
            VerifyCommand::Tight(args) => verify_struct(&mut ctx, &args, true)?,
            VerifyCommand::Mlin(args) => mlin(&mut ctx, &args, true)?,
            VerifyCommand::Impede(args) => mlin(&mut ctx, &args, false)?,
            VerifyCommand::Trop(args) => trop(&mut ctx, &args)?,
        },
        Command::Mlin {
            check: MlinCommand::Check(args),
        } => mlin(&mut ctx, &args, true)?,
        Command::Trop {
            check: TropCommand::Check(args),
        } => trop(&mut ctx, &args)?,
        Command::Report { report } => match report {
            ReportCommand::Gap { m } => report_gap(&mut ctx, m)?,
            ReportCommand::Matching { n } => report_matching(&mut ctx, n)?,
        },
    }
    let Ctx { digest, mut report, .. } = ctx;
    report.inputs_digest = digest.finish();
    Ok(report)
}

fn gen(ctx: &mut Ctx, family: GenCommand) -> Result<()> {
    let params = format!("{family:?}");
    ctx.digest.add("parameters", params.as_bytes());
    let (circuit, low, out) = match family {
        GenCommand::Lines { m, k, out } => {
            let fam = lines_family(m, k)?;
            let low = family_low(ctx, &fam, out.problem.is_some())?;
            (fam.blocking_circuit(), low, out)
        }
        GenCommand::Cov { m, k, out } => {
            let fam = cov_family(m, k)?;
            let low = family_low(ctx, &fam, out.problem.is_some())?;
            (fam.blocking_circuit(), low, out)
        }
        GenCommand::Perm { n, out } => {
            let c = permanent_circuit(n)?;
            let low = match out.problem {
                Some(_) => Some(matching_function(n)?),
                None => None,
            };
            (c, low, out)
        }
        GenCommand::Gap { m, out, dual } => {
            let c = read2_lines_circuit(m)?;
            if let Some(path) = &dual {
                let d = dual_lines_read1_circuit(m)?;
                ctx.write_side(print_circuit(&d), path, "dual_written")?;
            }
            let low = match out.problem {
                Some(_) => Some(compute_function(&c)?),
                None => None,
            };
            (c, low, out)
        }
    };
    let GenOutput { output, problem } = out;
    if let (Some(f), Some(path)) = (low, problem) {
        let p = MinProblem::new(f.arity(), f.lowest_ones())?;
        ctx.report.count("feasible_solutions", p.solutions().len() as u64);
        ctx.write_side(print_problem(&p), &path, "problem_written")?;
    }
    ctx.describe(&circuit);
    ctx.emit(print_circuit(&circuit), output.as_ref())
}

fn family_low(ctx: &mut Ctx, fam: &LineFamily, wanted: bool) -> Result<Option<BooleanFunction>> {
    ctx.report.count("points", fam.point_count as u64);
    ctx.report.count("lines", fam.lines.len() as u64);
    ctx.report.count("uniformity", fam.uniformity as u64);
    ctx.report.count("regularity", fam.regularity as u64);
    Ok(if wanted { Some(fam.blocking_function()?) } else { None })
}

fn eval(ctx: &mut Ctx, path: &Path, at: &[String], semiring: Option<&str>) -> Result<()> {
    let c = ctx.circuit(path)?;
    let s = match semiring {
        Some(name) => Semiring::from_name(name)
            .ok_or_else(|| CliError::Usage(format!("unknown semiring `{name}`")))?,
        None => c.semiring(),
    };
    let x = at.iter().map(|v| parse_rational(v)).collect::<Result<Vec<_>>>()?;
    ctx.digest.add("point", at.join(",").as_bytes());
    let values = evaluate_all(&c, s, &x)?;
    ctx.report.value("semiring", s.name());
    let mut text = String::new();
    for (i, v) in values.iter().enumerate() {
        ctx.report.value(&format!("output_{i}"), v);
        text.push_str(&format!("{v}\n"));
    }
    ctx.report.output = Some(text);
    Ok(())
}

fn expand(ctx: &mut Ctx, path: &Path) -> Result<()> {
    let c = ctx.circuit(path)?;
    let polys = produced_polynomials(&c, &ctx.caps)?;
    let mut text = String::new();
    let mut terms = 0u64;
    let mut degree = 0u64;
    let mut individual = 0u64;
    for (i, p) in polys.iter().enumerate() {
        if polys.len() > 1 {
            text.push_str(&format!("# output {i}\n"));
        }
        text.push_str(&p.to_string());
        terms += p.len() as u64;
        degree = degree.max(p.degree().unwrap_or(0));
        individual = individual.max(max_individual_degree(p));
    }
    ctx.report.count("terms", terms);
    ctx.report.count("degree", degree);
    ctx.report.count("max_individual_degree", individual);
    ctx.report.output = Some(text);
    Ok(())
}

fn classify(ctx: &mut Ctx, args: &FunctionArgs) -> Result<()> {
    let c = ctx.circuit(&args.circuit)?;
    let f = ctx.function(&c, args.function.as_deref())?;
    let rk = classify_read_k(&c, &f, &ctx.caps)?;
    match rk.semantic {
        Some(k) => ctx.report.count("semantic_k", k),
        None => ctx.report.value("semantic_k", "unbounded"),
    }
    ctx.report.count("syntactic_k", rk.syntactic);
    ctx.report.value("truncated", rk.truncated);
    ctx.describe(&c);
    Ok(())
}

fn transform(ctx: &mut Ctx, args: &TransformArgs) -> Result<()> {
    let c = ctx.circuit(&args.circuit)?;
    let (pass, arg) = match args.pass.split_once(':') {
        Some((p, a)) => (p, Some(a)),
        None => (args.pass.as_str(), None),
    };
    ctx.digest.add("pass", args.pass.as_bytes());
    let out = match pass {
        "elim-const" => eliminate_constants(&c)?,
        "homparts" => {
            let r = parse_pass_arg(pass, arg)? as usize;
            let hp = homogeneous_parts(&c, r)?;
            let present: Vec<String> = hp
                .parts
                .iter()
                .enumerate()
                .filter_map(|(i, p)| p.map(|pos| format!("{i}:{pos}")))
                .collect();
            ctx.report.value("parts", present.join(" "));
            hp.circuit
        }
        "envelope" => lower_envelope_circuit(&c)?,
        "pos" => positive_version(&c)?,
        "degree-reduce" => {
            let k = parse_pass_arg(pass, arg)?;
            let f = ctx.function(&c, args.function.as_deref())?;
            degree_reduce_read_k(&c, k, &f, &ctx.caps)?
        }
        "read1-from-arith" => {
            let f = ctx.function(&c, args.function.as_deref())?;
            arithmetic_to_read1(&c, &f, &ctx.caps)?
        }
        "const-free" => constant_free_version(&c)?,
        "to-tropical" => {
            let k = parse_pass_arg(pass, arg)?;
            let f = ctx.function(&c, args.function.as_deref())?;
            boolean_read_k_to_tropical(&c, &f, k, &ctx.caps)?
        }
        "from-tropical" => {
            let k = parse_pass_arg(pass, arg)?;
            let path = args
                .problem
                .as_ref()
                .ok_or_else(|| CliError::Usage("from-tropical needs --problem".into()))?;
            let p = ctx.problem(path)?;
            tropical_to_boolean_read_r(&c, &p, k, &ctx.caps)?
        }
        "retarget" => {
            let name = arg.ok_or_else(|| CliError::Usage("retarget needs `:<semiring>`".into()))?;
            let s = Semiring::from_name(name)
                .ok_or_else(|| CliError::Usage(format!("unknown semiring `{name}`")))?;
            retarget(&c, s)?
        }
        other => return Err(CliError::Usage(format!("unknown pass `{other}`"))),
    };
    ctx.report.count("input_size", c.size() as u64);
    ctx.describe(&out);
    ctx.emit(print_circuit(&out), args.output.as_ref())
}

fn verify_struct(ctx: &mut Ctx, args: &FunctionArgs, tight: bool) -> Result<()> {
    let c = ctx.circuit(&args.circuit)?;
    let f = ctx.function(&c, args.function.as_deref())?;
    let bool_c = retarget(&c, Semiring::Boolean)?;
    if tight {
        let computes = compute_function(&bool_c)? == f;
        ctx.report.verdict("computes_function", computes);
        if computes {
            ctx.report.verdict("tight", is_tight(&bool_c, &f, &ctx.caps)?);
        }
    } else {
        ctx.report.verdict("structure", verify_structure(&bool_c, &f, &ctx.caps)?);
    }
    ctx.describe(&c);
    Ok(())
}

fn mlin(ctx: &mut Ctx, args: &MlinArgs, all: bool) -> Result<()> {
    let c = ctx.circuit(&args.target.circuit)?;
    let f = ctx.function(&c, args.target.function.as_deref())?;
    if all {
        ctx.report.verdict("syntactic", is_syntactically_multilinear(&c)?);
        ctx.report.verdict("semantic", is_semantically_multilinear(&c)?);
    }
    ctx.report.verdict("impedes", impedes_zero_terms(&c, &f, args.term_cap)?);
    ctx.describe(&c);
    Ok(())
}

fn trop(ctx: &mut Ctx, args: &TropArgs) -> Result<()> {
    let c = ctx.circuit(&args.circuit)?;
    let p = ctx.problem(&args.problem)?;
    let factor = parse_rational(&args.factor)?;
    if factor < Rational::one() {
        return Err(CliError::Usage(format!("factor must be at least 1, got {factor}")));
    }
    ctx.digest.add("factor", factor.to_string().as_bytes());
    let mode = match args.samples {
        Some(count) => GridMode::Sampled {
            count,
            seed: ctx.seed,
        },
        None => GridMode::Exhaustive,
    };
    let options = GridOptions {
        mode,
        max_weight: args.max_weight,
    };
    let rep = check_approximation(&c, &p, &factor, options, &ctx.caps)?;
    ctx.report.verdict("structural", rep.structural_pass);
    ctx.report.verdict("grid", rep.grid_pass);
    ctx.report.value("exact", rep.exact);
    ctx.report.value("factor", &factor);
    ctx.report.count("grid_points", rep.grid_points);
    ctx.report.count("max_weight", rep.max_weight);
    if let Some(seed) = rep.sampled_seed {
        ctx.report.count("sampled_seed", seed);
    }
    ctx.describe(&c);
    Ok(())
}

fn report_gap(ctx: &mut Ctx, m: usize) -> Result<()> {
    ctx.digest.add("m", m.to_string().as_bytes());
    let r = gap_report(m, ctx.seed)?;
    for (name, ok) in r.verdicts() {
        ctx.report.verdict(name, ok);
    }
    let report = &mut ctx.report;
    report.count("m", r.m as u64);
    report.count("n", r.n as u64);
    report.count("read2_size", r.read2_size as u64);
    report.count("dual_size", r.dual_size as u64);
    report.count("size_bound", r.size_bound as u64);
    report.count("read2_syntactic_k", r.read2_syntactic_k);
    if let Some(k) = r.read2_semantic_k {
        report.count("read2_semantic_k", k);
    }
    if let Some(k) = r.dual_semantic_k {
        report.count("dual_semantic_k", k);
    }
    report.count("envelope_size", r.envelope_size as u64);
    report.count("expected_envelope_size", r.expected_envelope_size);
    report.count("tropical_grid_points", r.tropical_grid_points);
    if let Some(seed) = r.tropical_sampled_seed {
        report.count("tropical_sampled_seed", seed);
    }
    Ok(())
}

fn report_matching(ctx: &mut Ctx, n: usize) -> Result<()> {
    ctx.digest.add("n", n.to_string().as_bytes());
    let r = matching_lower_bound_report(n)?;
    let report = &mut ctx.report;
    report.count("n", r.n as u64);
    report.count("circuit_size", r.circuit_size as u64);
    report.count("pairs", r.pairs as u64);
    report.count("max_pair_monomials", r.max_pair_monomials);
    report.count("implied_size_bound", r.implied_size_bound);
    report.count("analytic_bound", r.analytic_bound);
    report.verdict("pairs_within_size", r.pairs <= r.circuit_size);
    Ok(())
}
