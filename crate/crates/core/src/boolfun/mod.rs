//! Explicit Boolean functions as packed truth tables.
//!
//! Bit `x` of the table holds `f(x)`, where bit `i` of the index `x` is the value of
//! variable `i`.

mod literal;
mod structure;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{ExpVec, ExpVecSet};

pub use literal::{parse_function, print_table};
pub use structure::{
    classify_read_k, compute_function, is_cover_free, is_tight, node_functions, verify_structure,
    ReadK,
};

/// Default arity cap for truth tables.
pub const TRUTH_TABLE_CAP: usize = 20;

/// Positions whose bit `i` is zero, for `i < 6`.
const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: usize,
    words: Vec<u64>,
}

impl BooleanFunction {
    fn blank(n: usize) -> Result<Self> {
        if n > TRUTH_TABLE_CAP {
            return Err(Error::ArityTooLarge {
                n,
                cap: TRUTH_TABLE_CAP,
            });
        }
        Ok(BooleanFunction {
            n,
            words: vec![0; word_count(n)],
        })
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        let mut f = BooleanFunction::blank(n)?;
        if value {
            f.words.iter_mut().for_each(|w| *w = u64::MAX);
            f.clear_padding();
        }
        Ok(f)
    }

    /// The projection `x_i`.
    pub fn projection(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::InvalidArgument(format!("variable {i} outside arity {n}")));
        }
        BooleanFunction::from_fn(n, |x| x >> i & 1 == 1)
    }

    pub fn from_fn(n: usize, f: impl Fn(u64) -> bool) -> Result<Self> {
        let mut out = BooleanFunction::blank(n)?;
        for x in 0..out.table_len() {
            if f(x) {
                out.set(x, true);
            }
        }
        Ok(out)
    }

    /// Builds from raw words; bits beyond `2^n` are ignored.
    pub fn from_words(n: usize, mut words: Vec<u64>) -> Result<Self> {
        let mut f = BooleanFunction::blank(n)?;
        words.resize(f.words.len(), 0);
        f.words = words;
        f.clear_padding();
        Ok(f)
    }

    /// Monotone function whose lowest ones are the minimal supports in `a`: accepts `x`
    /// iff some vector of `a` has its support inside `x`.
    pub fn from_supports(n: usize, a: &ExpVecSet) -> Result<Self> {
        let mut f = BooleanFunction::blank(n)?;
        for v in a.iter() {
            f.set(support_mask(v, n)?, true);
        }
        f.zeta();
        Ok(f)
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn table_len(&self) -> u64 {
        1u64 << self.n
    }

    pub fn eval(&self, x: u64) -> bool {
        self.words[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    pub fn eval_bits(&self, x: &[bool]) -> bool {
        let idx = x
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (b as u64) << i);
        self.eval(idx)
    }

    pub(crate) fn set(&mut self, x: u64, v: bool) {
        let (w, b) = ((x >> 6) as usize, x & 63);
        if v {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_constant(&self) -> bool {
        let ones = self.count_ones();
        ones == 0 || ones == self.table_len()
    }

    pub fn is_zero(&self) -> bool {
        self.count_ones() == 0
    }

    pub fn is_monotone(&self) -> bool {
        *self == self.upward_closure()
    }

    fn clear_padding(&mut self) {
        if self.n < 6 {
            self.words[0] &= (1u64 << (1 << self.n)) - 1;
        }
    }

    fn check_arity(&self, other: &BooleanFunction) {
        assert_eq!(self.n, other.n, "Boolean functions of different arity");
    }

    pub fn and(&self, other: &BooleanFunction) -> BooleanFunction {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(&self, other: &BooleanFunction) -> BooleanFunction {
        self.zip(other, |a, b| a | b)
    }

    pub fn not(&self) -> BooleanFunction {
        let mut f = BooleanFunction {
            n: self.n,
            words: self.words.iter().map(|w| !w).collect(),
        };
        f.clear_padding();
        f
    }

    fn zip(&self, other: &BooleanFunction, op: impl Fn(u64, u64) -> u64) -> BooleanFunction {
        self.check_arity(other);
        BooleanFunction {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    /// Pointwise `self ≤ other`.
    pub fn implies(&self, other: &BooleanFunction) -> bool {
        self.check_arity(other);
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    /// In-place superset-sum transform: `f(x) := ⋁_{z ≤ x} f(z)`.
    fn zeta(&mut self) {
        for (i, &mask) in LOW_MASKS.iter().enumerate().take(self.n) {
            let shift = 1u32 << i;
            for w in &mut self.words {
                *w |= (*w & mask) << shift;
            }
        }
        for i in 6..self.n {
            let stride = 1usize << (i - 6);
            for w in 0..self.words.len() {
                if w & stride != 0 {
                    self.words[w] |= self.words[w ^ stride];
                }
            }
        }
    }

    /// Upward closure `↑f(x) = ⋁_{z ≤ x} f(z)`.
    pub fn upward_closure(&self) -> BooleanFunction {
        let mut f = self.clone();
        f.zeta();
        f
    }

    /// Dual `f^d(x) = ¬f(x̄)`.
    pub fn dual(&self) -> BooleanFunction {
        let full = self.table_len() - 1;
        let mut out = BooleanFunction {
            n: self.n,
            words: vec![0; self.words.len()],
        };
        for x in 0..self.table_len() {
            if !self.eval(full ^ x) {
                out.set(x, true);
            }
        }
        out
    }

    /// Minimal ones: `f(a) = 1` and `f(b) = 0` for every `b < a`. For monotone `f`
    /// these are the characteristic vectors of the prime implicants.
    pub fn lowest_ones(&self) -> ExpVecSet {
        let up = self.upward_closure();
        let mut out = ExpVecSet::new(self.n);
        for x in 0..self.table_len() {
            if !self.eval(x) {
                continue;
            }
            let minimal = (0..self.n)
                .filter(|i| x >> i & 1 == 1)
                .all(|i| !up.eval(x ^ (1 << i)));
            if minimal {
                out.insert(mask_to_expvec(x));
            }
        }
        out
    }

    pub fn depends_on_var(&self, i: usize) -> bool {
        if i >= self.n {
            return false;
        }
        if i < 6 {
            let shift = 1u32 << i;
            self.words
                .iter()
                .any(|&w| ((w >> shift) ^ w) & LOW_MASKS[i] != 0)
        } else {
            let stride = 1usize << (i - 6);
            (0..self.words.len())
                .filter(|w| w & stride == 0)
                .any(|w| self.words[w] != self.words[w | stride])
        }
    }

    /// Variables the function depends on.
    pub fn depends_on(&self) -> BTreeSet<usize> {
        (0..self.n).filter(|&i| self.depends_on_var(i)).collect()
    }

    /// Same function over `m ≥ n` variables, ignoring the new ones.
    pub fn extend_arity(&self, m: usize) -> Result<BooleanFunction> {
        if m < self.n {
            return Err(Error::InvalidArgument(format!(
                "cannot shrink arity {} to {m}",
                self.n
            )));
        }
        let mask = self.table_len() - 1;
        BooleanFunction::from_fn(m, |x| self.eval(x & mask))
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction({})", print_table(self))
    }
}

fn word_count(n: usize) -> usize {
    if n < 6 {
        1
    } else {
        1 << (n - 6)
    }
}

/// Bitmask of a 0/1 vector's support.
pub(crate) fn support_mask(v: &ExpVec, n: usize) -> Result<u64> {
    let mut m = 0u64;
    for i in v.support() {
        if i >= n || i >= 64 {
            return Err(Error::InvalidArgument(format!("variable {i} outside arity {n}")));
        }
        m |= 1 << i;
    }
    Ok(m)
}

pub(crate) fn mask_to_expvec(x: u64) -> ExpVec {
    ExpVec::from_support((0..64).filter(|i| x >> i & 1 == 1))
}

/// Whether no vector of `a` lies componentwise below another.
pub fn is_antichain(a: &ExpVecSet) -> bool {
    a.iter()
        .all(|u| a.iter().all(|v| u == v || !u.is_below(v)))
}

/// Conjunction of literals: `positives` and `negatives` are variable sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Term {
    pub positives: BTreeSet<usize>,
    pub negatives: BTreeSet<usize>,
}

impl Term {
    pub fn positive(i: usize) -> Self {
        Term {
            positives: [i].into(),
            negatives: BTreeSet::new(),
        }
    }

    pub fn negative(i: usize) -> Self {
        Term {
            positives: BTreeSet::new(),
            negatives: [i].into(),
        }
    }

    /// Contains a variable together with its negation.
    pub fn is_zero_term(&self) -> bool {
        !self.positives.is_disjoint(&self.negatives)
    }

    pub fn conjoin(&self, other: &Term) -> Term {
        Term {
            positives: self.positives.union(&other.positives).copied().collect(),
            negatives: self.negatives.union(&other.negatives).copied().collect(),
        }
    }

    /// The term with every negated literal replaced by the constant 1.
    pub fn positive_factor(&self) -> Term {
        Term {
            positives: self.positives.clone(),
            negatives: BTreeSet::new(),
        }
    }

    pub fn eval(&self, x: u64) -> bool {
        self.positives.iter().all(|&i| x >> i & 1 == 1)
            && self.negatives.iter().all(|&i| x >> i & 1 == 0)
    }

    pub fn to_function(&self, n: usize) -> Result<BooleanFunction> {
        BooleanFunction::from_fn(n, |x| self.eval(x))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lits: Vec<(usize, bool)> = self
            .positives
            .iter()
            .map(|&i| (i, false))
            .chain(self.negatives.iter().map(|&i| (i, true)))
            .collect();
        lits.sort();
        if lits.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = lits
            .iter()
            .map(|&(i, neg)| format!("{}x{}", if neg { "!" } else { "" }, i + 1))
            .collect();
        f.write_str(&parts.join("&"))
    }
}

/// Disjunction of terms as a truth table.
pub fn dnf_function(n: usize, terms: &[Term]) -> Result<BooleanFunction> {
    BooleanFunction::from_fn(n, |x| terms.iter().any(|t| t.eval(x)))
}
