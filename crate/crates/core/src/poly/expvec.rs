use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exponent vector of a monomial, stored sparsely as sorted `(variable, degree)` pairs
/// with nonzero degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExpVec {
    entries: Vec<(usize, u64)>,
}

impl ExpVec {
    /// The all-zero vector.
    pub fn zero() -> Self {
        ExpVec::default()
    }

    /// Unit vector `e_i`.
    pub fn unit(i: usize) -> Self {
        ExpVec {
            entries: vec![(i, 1)],
        }
    }

    pub fn from_dense(degrees: &[u64]) -> Self {
        ExpVec {
            entries: degrees
                .iter()
                .enumerate()
                .filter(|(_, &d)| d != 0)
                .map(|(i, &d)| (i, d))
                .collect(),
        }
    }

    /// 0/1 vector with the given support.
    pub fn from_support(support: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = support.into_iter().collect();
        ExpVec {
            entries: set.into_iter().map(|i| (i, 1)).collect(),
        }
    }

    /// Builds from arbitrary `(variable, degree)` pairs; duplicates are summed.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let mut map: BTreeMap<usize, u64> = BTreeMap::new();
        for (i, d) in pairs {
            *map.entry(i).or_default() += d;
        }
        ExpVec {
            entries: map.into_iter().filter(|&(_, d)| d != 0).collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<u64> {
        let mut v = vec![0; n];
        for &(i, d) in &self.entries {
            v[i] = d;
        }
        v
    }

    pub fn entries(&self) -> &[(usize, u64)] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u64 {
        self.entries
            .binary_search_by_key(&i, |&(j, _)| j)
            .map(|k| self.entries[k].1)
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of entries.
    pub fn degree(&self) -> u64 {
        self.entries.iter().map(|&(_, d)| d).sum()
    }

    /// Largest entry (the individual degree); 0 for the zero vector.
    pub fn max_entry(&self) -> u64 {
        self.entries.iter().map(|&(_, d)| d).max().unwrap_or(0)
    }

    pub fn support(&self) -> Vec<usize> {
        self.entries.iter().map(|&(i, _)| i).collect()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Same set of nonzero positions.
    pub fn is_shadow_of(&self, other: &ExpVec) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.0 == b.0)
    }

    pub fn is_k_bounded(&self, k: u64) -> bool {
        self.max_entry() <= k
    }

    pub fn is_binary(&self) -> bool {
        self.max_entry() <= 1
    }

    /// Componentwise `self ≤ other`.
    pub fn is_below(&self, other: &ExpVec) -> bool {
        self.entries.iter().all(|&(i, d)| other.get(i) >= d)
    }

    /// Componentwise sum; `None` on degree overflow.
    pub fn checked_add(&self, other: &ExpVec) -> Option<ExpVec> {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, x)), Some(&&(j, y))) => {
                    if i == j {
                        out.push((i, x.checked_add(y)?));
                        a.next();
                        b.next();
                    } else if i < j {
                        out.push((i, x));
                        a.next();
                    } else {
                        out.push((j, y));
                        b.next();
                    }
                }
                (Some(&&e), None) => {
                    out.push(e);
                    a.next();
                }
                (None, Some(&&e)) => {
                    out.push(e);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Some(ExpVec { entries: out })
    }

    /// Scalar product ⟨self, other⟩.
    pub fn dot(&self, other: &ExpVec) -> u128 {
        self.entries
            .iter()
            .map(|&(i, d)| d as u128 * other.get(i) as u128)
            .sum()
    }

    /// Renders as `x3^2*x7` with 1-based variable names; `1` for the zero vector.
    pub fn monomial(&self) -> String {
        if self.entries.is_empty() {
            return "1".to_string();
        }
        self.entries
            .iter()
            .map(|&(i, d)| {
                if d == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{d}", i + 1)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.monomial())
    }
}

/// Production limits: a cap on set sizes and an optional degree truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_set_size: usize,
    pub max_degree: Option<u64>,
}

impl Caps {
    pub const DEFAULT_MAX_SET_SIZE: usize = 1_000_000;

    pub fn with_max_degree(self, d: u64) -> Self {
        Caps {
            max_degree: Some(d),
            ..self
        }
    }

    pub(crate) fn admits(&self, v: &ExpVec) -> bool {
        self.max_degree.is_none_or(|d| v.degree() <= d)
    }
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_set_size: Caps::DEFAULT_MAX_SET_SIZE,
            max_degree: None,
        }
    }
}

/// Finite set of exponent vectors of a common arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpVecSet {
    arity: usize,
    vecs: BTreeSet<ExpVec>,
}

impl ExpVecSet {
    pub fn new(arity: usize) -> Self {
        ExpVecSet {
            arity,
            vecs: BTreeSet::new(),
        }
    }

    pub fn from_vecs(arity: usize, vecs: impl IntoIterator<Item = ExpVec>) -> Self {
        ExpVecSet {
            arity,
            vecs: vecs.into_iter().collect(),
        }
    }

    pub fn from_dense(arity: usize, rows: &[&[u64]]) -> Self {
        ExpVecSet::from_vecs(arity, rows.iter().map(|r| ExpVec::from_dense(r)))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.vecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vecs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ExpVec> {
        self.vecs.iter()
    }

    pub fn contains(&self, v: &ExpVec) -> bool {
        self.vecs.contains(v)
    }

    pub fn insert(&mut self, v: ExpVec) -> bool {
        self.vecs.insert(v)
    }

    pub fn vecs(&self) -> &BTreeSet<ExpVec> {
        &self.vecs
    }

    pub fn is_subset(&self, other: &ExpVecSet) -> bool {
        self.vecs.is_subset(&other.vecs)
    }

    /// The support family `Supp(A)`.
    pub fn supports(&self) -> BTreeSet<Vec<usize>> {
        self.vecs.iter().map(|v| v.support()).collect()
    }

    pub fn union(&self, other: &ExpVecSet) -> ExpVecSet {
        ExpVecSet {
            arity: self.arity.max(other.arity),
            vecs: self.vecs.union(&other.vecs).cloned().collect(),
        }
    }

    /// Minkowski sum `{a + b}` honouring the caps.
    pub fn minkowski_sum(&self, other: &ExpVecSet, caps: &Caps) -> Result<ExpVecSet> {
        let mut out = BTreeSet::new();
        for a in &self.vecs {
            for b in &other.vecs {
                let s = a.checked_add(b).ok_or(Error::DegreeOverflow)?;
                if caps.admits(&s) {
                    out.insert(s);
                    if out.len() > caps.max_set_size {
                        return Err(Error::CapExceeded(caps.max_set_size));
                    }
                }
            }
        }
        Ok(ExpVecSet {
            arity: self.arity.max(other.arity),
            vecs: out,
        })
    }

    pub fn min_degree(&self) -> Option<u64> {
        self.vecs.iter().map(|v| v.degree()).min()
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.vecs.iter().map(|v| v.degree()).max()
    }

    /// Largest entry over all vectors.
    pub fn max_entry(&self) -> u64 {
        self.vecs.iter().map(|v| v.max_entry()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    /// Minimum-degree vectors.
    pub fn lower_envelope(&self) -> Result<ExpVecSet> {
        let d = self.min_degree().ok_or(Error::EmptySet)?;
        Ok(ExpVecSet {
            arity: self.arity,
            vecs: self.vecs.iter().filter(|v| v.degree() == d).cloned().collect(),
        })
    }

    /// Whether every vector dominates some vector of `base` (membership in `↑base`).
    pub fn is_in_upward_closure_of(&self, base: &ExpVecSet) -> bool {
        self.vecs.iter().all(|b| base.iter().any(|a| a.is_below(b)))
    }
}

/// Polynomial with unbounded positive integer coefficients, keyed by exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalPolynomial {
    arity: usize,
    terms: BTreeMap<ExpVec, BigUint>,
}

impl FormalPolynomial {
    pub fn zero(arity: usize) -> Self {
        FormalPolynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: BigUint) -> Self {
        FormalPolynomial::from_terms(arity, [(ExpVec::zero(), c)])
    }

    pub fn variable(arity: usize, i: usize) -> Self {
        FormalPolynomial::from_terms(arity, [(ExpVec::unit(i), BigUint::one())])
    }

    /// Sums coefficients of repeated monomials and drops zero coefficients.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (ExpVec, BigUint)>) -> Self {
        let mut map: BTreeMap<ExpVec, BigUint> = BTreeMap::new();
        for (e, c) in terms {
            if !c.is_zero() {
                *map.entry(e).or_default() += c;
            }
        }
        FormalPolynomial { arity, terms: map }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<ExpVec, BigUint> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, e: &ExpVec) -> BigUint {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn exponent_set(&self) -> ExpVecSet {
        ExpVecSet::from_vecs(self.arity, self.terms.keys().cloned())
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    /// Terms of degree at most `d`.
    pub fn truncate_to_degree(&self, d: u64) -> FormalPolynomial {
        self.filter_degree(|deg| deg <= d)
    }

    /// Terms of degree exactly `d`.
    pub fn homogeneous_part(&self, d: u64) -> FormalPolynomial {
        self.filter_degree(|deg| deg == d)
    }

    fn filter_degree(&self, keep: impl Fn(u64) -> bool) -> FormalPolynomial {
        FormalPolynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e.degree()))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &FormalPolynomial) -> FormalPolynomial {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            *terms.entry(e.clone()).or_default() += c;
        }
        FormalPolynomial {
            arity: self.arity.max(other.arity),
            terms,
        }
    }

    /// Product, honouring the caps on term count and degree.
    pub fn mul(&self, other: &FormalPolynomial, caps: &Caps) -> Result<FormalPolynomial> {
        let mut terms: BTreeMap<ExpVec, BigUint> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = a.checked_add(b).ok_or(Error::DegreeOverflow)?;
                if !caps.admits(&e) {
                    continue;
                }
                *terms.entry(e).or_default() += ca * cb;
                if terms.len() > caps.max_set_size {
                    return Err(Error::CapExceeded(caps.max_set_size));
                }
            }
        }
        Ok(FormalPolynomial {
            arity: self.arity.max(other.arity),
            terms,
        })
    }

    /// Same terms with every coefficient set to 1.
    pub fn support_polynomial(&self) -> FormalPolynomial {
        FormalPolynomial {
            arity: self.arity,
            terms: self.terms.keys().map(|e| (e.clone(), BigUint::one())).collect(),
        }
    }
}

/// One term per line, `coeff monomial`, in exponent-vector order.
impl fmt::Display for FormalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in &self.terms {
            writeln!(f, "{c} {e}")?;
        }
        Ok(())
    }
}
