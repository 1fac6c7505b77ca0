//! Function literals: `table <n> <hex>` or `dnf x1&x2 | !x3`.
//!
//! The hex bitmap is the `2^n`-bit number whose bit `x` is `f(x)`, most significant
//! digit first. In DNF literals variables are `x1, x2, ...` or the letters `x, y, z, w`
//! for the first four; `!` or `~` negates, `1` is the empty term.

use super::{dnf_function, BooleanFunction, Term};
use crate::error::{Error, Result};

/// Prints `table <n> <hex>`.
pub fn print_table(f: &BooleanFunction) -> String {
    let digits = ((f.table_len() / 4) as usize).max(1);
    let hex: String = (0..digits)
        .rev()
        .map(|j| {
            let nibble = f.words()[j / 16] >> (4 * (j % 16)) & 0xF;
            char::from_digit(nibble as u32, 16).expect("nibble")
        })
        .collect();
    format!("table {} {hex}", f.arity())
}

/// Parses a function literal. The arity is at least `min_arity` and at least the
/// largest variable mentioned in a DNF.
pub fn parse_function(text: &str, min_arity: usize) -> Result<BooleanFunction> {
    let text = text.trim();
    let bad = |m: String| Error::InvalidArgument(format!("function literal: {m}"));
    if let Some(rest) = strip_keyword(text, "table") {
        let mut it = rest.split_whitespace();
        let (Some(n), Some(hex), None) = (it.next(), it.next(), it.next()) else {
            return Err(bad("expected `table <n> <hex>`".into()));
        };
        let n: usize = n.parse().map_err(|_| bad(format!("bad arity `{n}`")))?;
        let f = parse_hex(n, hex).map_err(bad)?;
        return if n < min_arity { f.extend_arity(min_arity) } else { Ok(f) };
    }
    if let Some(rest) = strip_keyword(text, "dnf") {
        let rest = rest.trim().trim_matches('"').trim_matches('\'');
        let terms = parse_dnf(rest).map_err(bad)?;
        let n = terms
            .iter()
            .flat_map(|t| t.positives.iter().chain(&t.negatives))
            .map(|&i| i + 1)
            .max()
            .unwrap_or(0)
            .max(min_arity);
        return dnf_function(n, &terms);
    }
    Err(bad(format!("expected `table` or `dnf`, found `{text}`")))
}

fn strip_keyword<'a>(text: &'a str, kw: &str) -> Option<&'a str> {
    let rest = text.strip_prefix(kw)?;
    if let Some(r) = rest.strip_prefix(':') {
        Some(r)
    } else if rest.starts_with(char::is_whitespace) {
        Some(rest)
    } else {
        None
    }
}

fn parse_hex(n: usize, hex: &str) -> std::result::Result<BooleanFunction, String> {
    let hex = hex.trim_start_matches("0x");
    let mut f = BooleanFunction::constant(n, false).map_err(|e| e.to_string())?;
    let max_digits = ((f.table_len() / 4) as usize).max(1);
    if hex.is_empty() || hex.len() > max_digits {
        return Err(format!("expected at most {max_digits} hex digits"));
    }
    for (j, ch) in hex.chars().rev().enumerate() {
        let d = ch.to_digit(16).ok_or(format!("`{ch}` is not a hex digit"))? as u64;
        for b in 0..4 {
            if d >> b & 1 == 1 {
                let x = 4 * j as u64 + b;
                if x >= f.table_len() {
                    return Err("bitmap has bits beyond 2^n".into());
                }
                f.set(x, true);
            }
        }
    }
    Ok(f)
}

fn parse_dnf(text: &str) -> std::result::Result<Vec<Term>, String> {
    let mut terms = Vec::new();
    for raw in text.split('|') {
        let raw = raw.trim();
        match raw {
            "" => return Err("empty term".into()),
            "0" => continue,
            "1" => {
                terms.push(Term::default());
                continue;
            }
            _ => {}
        }
        let mut term = Term::default();
        for lit in raw.split('&') {
            let lit = lit.trim();
            let (neg, name) = match lit.strip_prefix(['!', '~']) {
                Some(rest) => (true, rest.trim()),
                None => (false, lit),
            };
            let var = parse_var(name)?;
            if neg {
                term.negatives.insert(var);
            } else {
                term.positives.insert(var);
            }
        }
        terms.push(term);
    }
    Ok(terms)
}

fn parse_var(name: &str) -> std::result::Result<usize, String> {
    match name {
        "x" => return Ok(0),
        "y" => return Ok(1),
        "z" => return Ok(2),
        "w" => return Ok(3),
        _ => {}
    }
    name.strip_prefix('x')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&i| i >= 1)
        .map(|i| i - 1)
        .ok_or_else(|| format!("unknown variable `{name}`"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dnf_letters_and_indices() {
        let maj = parse_function("dnf:x&y|x&z|y&z", 0).unwrap();
        assert_eq!(maj, BooleanFunction::from_fn(3, |x| x.count_ones() >= 2).unwrap());
        assert_eq!(
            parse_function("dnf x1&x2 | x3", 0).unwrap(),
            BooleanFunction::from_fn(3, |x| x & 3 == 3 || x & 4 != 0).unwrap()
        );
        let f = parse_function("dnf \"x1 & !x2\"", 3).unwrap();
        assert_eq!(f.arity(), 3);
        assert!(f.eval(0b001) && !f.eval(0b011) && f.eval(0b101));
        assert!(parse_function("dnf 0", 2).unwrap().is_zero());
        assert_eq!(parse_function("dnf 1", 1).unwrap().count_ones(), 2);
    }

    #[test]
    fn table_round_trip() {
        for n in 0..8 {
            let f = BooleanFunction::from_fn(n, |x| (x * 7 + 3) % 5 < 2).unwrap();
            let printed = print_table(&f);
            assert_eq!(parse_function(&printed, 0).unwrap(), f);
        }
        let maj = parse_function("table 3 e8", 0).unwrap();
        assert_eq!(maj, BooleanFunction::from_fn(3, |x| x.count_ones() >= 2).unwrap());
        assert_eq!(print_table(&maj), "table 3 e8");
    }

    #[test]
    fn literal_errors() {
        assert!(parse_function("table 2 1f", 0).is_err());
        assert!(parse_function("table 2 g", 0).is_err());
        assert!(parse_function("dnf x1 | | x2", 0).is_err());
        assert!(parse_function("dnf x0", 0).is_err());
        assert!(parse_function("cnf x1", 0).is_err());
    }
}
