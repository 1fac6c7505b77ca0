//! Line-oriented circuit files.
//!
//! ```text
//! vars 3
//! semiring boolean        # optional, defaults to boolean
//! 0 input 1
//! 1 input 2
//! 2 lit 3 neg
//! 3 const 1/2
//! 4 add 0 1
//! 5 mul 4 2
//! output 5
//! ```
//!
//! Variables are numbered from 1, node ids from 0 and must appear in order.

use std::fmt::Write;

use num_bigint::BigInt;

use super::{Circuit, Node, Op, Rational, Semiring};
use crate::error::{Error, Result};

pub fn print_circuit(c: &Circuit) -> String {
    let mut s = String::new();
    writeln!(s, "vars {}", c.num_vars()).unwrap();
    writeln!(s, "semiring {}", c.semiring().name()).unwrap();
    for (id, node) in c.nodes().iter().enumerate() {
        match node {
            Node::Input(v) => writeln!(s, "{id} input {}", v + 1),
            Node::Const(r) => writeln!(s, "{id} const {}/{}", r.numer(), r.denom()),
            Node::Literal { var, negated } => {
                let suffix = if *negated { " neg" } else { "" };
                writeln!(s, "{id} lit {}{suffix}", var + 1)
            }
            Node::Gate { op, left, right } => {
                let name = match op {
                    Op::Add => "add",
                    Op::Mul => "mul",
                };
                writeln!(s, "{id} {name} {left} {right}")
            }
        }
        .unwrap();
    }
    let outs: Vec<String> = c.outputs().iter().map(|o| o.to_string()).collect();
    writeln!(s, "output {}", outs.join(" ")).unwrap();
    s
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut num_vars: Option<usize> = None;
    let mut semiring = Semiring::Boolean;
    let mut nodes = Vec::new();
    let mut outputs: Option<Vec<usize>> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        if outputs.is_some() {
            return Err(err("content after the output line".into()));
        }
        match tokens[0] {
            "vars" => {
                if num_vars.is_some() || !nodes.is_empty() {
                    return Err(err("`vars` must appear once, before any node".into()));
                }
                let [_, n] = tokens[..] else {
                    return Err(err("expected `vars <n>`".into()));
                };
                num_vars = Some(parse_usize(n).map_err(err)?);
            }
            "semiring" => {
                let [_, name] = tokens[..] else {
                    return Err(err("expected `semiring <name>`".into()));
                };
                if !nodes.is_empty() {
                    return Err(err("`semiring` must precede the nodes".into()));
                }
                semiring = Semiring::from_name(name)
                    .ok_or_else(|| err(format!("unknown semiring `{name}`")))?;
            }
            "output" => {
                if tokens.len() < 2 {
                    return Err(err("expected at least one output id".into()));
                }
                let ids = tokens[1..]
                    .iter()
                    .map(|t| parse_usize(t))
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(err)?;
                outputs = Some(ids);
            }
            id => {
                let n = num_vars.ok_or_else(|| err("node before `vars` header".into()))?;
                let id = parse_usize(id).map_err(err)?;
                if id != nodes.len() {
                    return Err(err(format!("expected node id {}, found {id}", nodes.len())));
                }
                let var = |t: &str| -> std::result::Result<usize, String> {
                    let v = parse_usize(t)?;
                    if v == 0 || v > n {
                        Err(format!("variable {v} outside 1..={n}"))
                    } else {
                        Ok(v - 1)
                    }
                };
                let node = match tokens[1..] {
                    ["input", v] => Node::Input(var(v).map_err(err)?),
                    ["lit", v] => Node::Literal {
                        var: var(v).map_err(err)?,
                        negated: false,
                    },
                    ["lit", v, "neg"] => Node::Literal {
                        var: var(v).map_err(err)?,
                        negated: true,
                    },
                    ["const", r] => Node::Const(parse_rational(r).map_err(err)?),
                    [op @ ("add" | "mul"), l, r] => Node::Gate {
                        op: if op == "add" { Op::Add } else { Op::Mul },
                        left: parse_usize(l).map_err(err)?,
                        right: parse_usize(r).map_err(err)?,
                    },
                    _ => return Err(err(format!("unrecognised node line `{}`", content.trim()))),
                };
                nodes.push(node);
            }
        }
    }
    let num_vars = num_vars.ok_or(Error::Parse {
        line: 0,
        message: "missing `vars` header".into(),
    })?;
    let outputs = outputs.ok_or(Error::Parse {
        line: 0,
        message: "missing `output` line".into(),
    })?;
    Circuit::from_parts(semiring, num_vars, nodes, outputs)
}

fn parse_usize(t: &str) -> std::result::Result<usize, String> {
    t.parse::<usize>()
        .map_err(|_| format!("`{t}` is not a natural number"))
}

pub(crate) fn parse_rational(t: &str) -> std::result::Result<Rational, String> {
    let bad = || format!("`{t}` is not a rational p/q");
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p, q),
        None => (t, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q == BigInt::from(0) {
        return Err(format!("`{t}` has a zero denominator"));
    }
    Ok(Rational::new(p, q))
}
