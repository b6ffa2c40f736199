//! Subshifts of finite type given by 0/1 transition matrices.

use std::collections::VecDeque;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

use crate::group::{ActionSystem, GroupKind, GroupSpec, Permutation};
use crate::metric::FiniteMetricSpace;

/// Alphabets (after higher-block recoding) are limited to one word of bits.
pub const MAX_ALPHABET: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SftError {
    #[error("alphabet size must be between 1 and {MAX_ALPHABET}, got {0}")]
    AlphabetSize(usize),
    #[error("forbidden word {word:?} uses symbol {symbol} outside the alphabet")]
    BadSymbol { word: Vec<u8>, symbol: u8 },
    #[error("forbidden words must be non-empty")]
    EmptyWord,
    #[error("transition matrix is malformed: {0}")]
    MatrixShape(String),
    #[error("the shift space is empty: every symbol is pruned")]
    EmptyLanguage,
    #[error("no points of period dividing {period}: trace of the matrix power is {trace}")]
    NoPeriodicPoints { period: usize, trace: u64 },
    #[error("period must be at least 1")]
    ZeroPeriod,
    #[error("cylinder word {0:?} is not allowed")]
    ForbiddenCylinder(Vec<u8>),
}

/// A square 0/1 matrix; bit `b` of `rows[a]` is set when `ab` is allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TransitionMatrix {
    k: usize,
    rows: Vec<u64>,
}

impl fmt::Debug for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl TransitionMatrix {
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, SftError> {
        let k = rows.len();
        if k == 0 || k > MAX_ALPHABET {
            return Err(SftError::AlphabetSize(k));
        }
        let mut bits = Vec::with_capacity(k);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(SftError::MatrixShape(format!(
                    "row {a} has {} entries, expected {k}",
                    row.len()
                )));
            }
            let mut r = 0u64;
            for (b, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 => r |= 1 << b,
                    _ => {
                        return Err(SftError::MatrixShape(format!(
                            "entry ({a},{b}) is {x}, expected 0 or 1"
                        )))
                    }
                }
            }
            bits.push(r);
        }
        Ok(Self { k, rows: bits })
    }

    pub fn full(k: usize) -> Self {
        let row = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        Self {
            k,
            rows: vec![row; k],
        }
    }

    pub fn size(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn allowed(&self, a: usize, b: usize) -> bool {
        self.rows[a] >> b & 1 == 1
    }

    /// Successors of `a` as a bitmask.
    #[inline]
    pub fn row(&self, a: usize) -> u64 {
        self.rows[a]
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.k)
            .map(|a| (0..self.k).map(|b| u8::from(self.allowed(a, b))).collect())
            .collect()
    }

    /// Boolean product: `(self * other)[a][c] = OR_b self[a][b] & other[b][c]`.
    pub fn bool_mul(&self, other: &Self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                let mut out = 0u64;
                let mut bits = r;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    out |= other.rows[b];
                }
                out
            })
            .collect();
        Self { k: self.k, rows }
    }

    pub fn identity(k: usize) -> Self {
        Self {
            k,
            rows: (0..k).map(|a| 1u64 << a).collect(),
        }
    }

    fn all_positive(&self) -> bool {
        let full = if self.k == 64 {
            u64::MAX
        } else {
            (1u64 << self.k) - 1
        };
        self.rows.iter().all(|&r| r == full)
    }

    /// Integer powers, entry `(a, b)` counts paths of the given length.
    pub fn count_power(&self, p: usize) -> Vec<Vec<u128>> {
        let k = self.k;
        let m: Vec<Vec<u128>> = (0..k)
            .map(|a| (0..k).map(|b| u128::from(self.allowed(a, b))).collect())
            .collect();
        let mut acc: Vec<Vec<u128>> = (0..k)
            .map(|a| (0..k).map(|b| u128::from(a == b)).collect())
            .collect();
        for _ in 0..p {
            acc = (0..k)
                .map(|a| {
                    (0..k)
                        .map(|c| (0..k).map(|b| acc[a][b] * m[b][c]).sum())
                        .collect()
                })
                .collect();
        }
        acc
    }

    /// Restriction to the symbols in `keep`, re-indexed in order.
    fn restrict(&self, keep: &[usize]) -> Self {
        let rows = keep
            .iter()
            .map(|&a| {
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &b)| self.allowed(a, b))
                    .fold(0u64, |r, (j, _)| r | 1 << j)
            })
            .collect();
        Self {
            k: keep.len(),
            rows,
        }
    }
}

/// A two-sided subshift of finite type with the shift map as the `Z` action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sft {
    name: String,
    matrix: TransitionMatrix,
    /// Original word spelled by each symbol: single letters, or blocks after
    /// higher-block recoding.
    labels: Vec<Vec<u8>>,
}

impl Sft {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn matrix(&self) -> &TransitionMatrix {
        &self.matrix
    }

    pub fn alphabet_size(&self) -> usize {
        self.matrix.size()
    }

    pub fn labels(&self) -> &[Vec<u8>] {
        &self.labels
    }

    /// Builds an SFT from an explicit matrix, pruning inessential symbols.
    pub fn from_matrix(name: impl Into<String>, rows: &[Vec<u8>]) -> Result<Self, SftError> {
        let m = TransitionMatrix::from_rows(rows)?;
        let labels = (0..m.size()).map(|a| vec![a as u8]).collect();
        prune(name.into(), m, labels)
    }

    /// As [`Sft::from_matrix`], keeping the given spelling of each symbol.
    pub fn from_matrix_with_labels(
        name: impl Into<String>,
        rows: &[Vec<u8>],
        labels: Vec<Vec<u8>>,
    ) -> Result<Self, SftError> {
        let m = TransitionMatrix::from_rows(rows)?;
        if labels.len() != m.size() {
            return Err(SftError::MatrixShape(format!(
                "{} labels for {} symbols",
                labels.len(),
                m.size()
            )));
        }
        prune(name.into(), m, labels)
    }

    pub fn full_shift(k: usize) -> Result<Self, SftError> {
        sft_from_forbidden_words(k, &[]).map(|s| s.with_name(format!("full_shift({k})")))
    }

    pub fn golden_mean() -> Self {
        sft_from_forbidden_words(2, &[vec![1, 1]])
            .expect("valid")
            .with_name("golden_mean")
    }

    /// The 2-cycle `0 -> 1 -> 0`: irreducible with period 2.
    pub fn swap() -> Self {
        Self::from_matrix("swap_shift", &[vec![0, 1], vec![1, 0]]).expect("valid")
    }

    /// Two fixed points, no transitions between them.
    pub fn split() -> Self {
        Self::from_matrix("split_shift", &[vec![1, 0], vec![0, 1]]).expect("valid")
    }

    pub fn word_allowed(&self, word: &[u8]) -> bool {
        word.iter().all(|&a| (a as usize) < self.alphabet_size())
            && word
                .windows(2)
                .all(|w| self.matrix.allowed(w[0] as usize, w[1] as usize))
    }
}

/// Removes symbols that cannot be extended both ways until none remain.
fn prune(name: String, m: TransitionMatrix, labels: Vec<Vec<u8>>) -> Result<Sft, SftError> {
    let mut alive: Vec<usize> = (0..m.size()).collect();
    loop {
        let mask = alive.iter().fold(0u64, |r, &a| r | 1 << a);
        let next: Vec<usize> = alive
            .iter()
            .copied()
            .filter(|&a| m.row(a) & mask != 0 && alive.iter().any(|&b| m.allowed(b, a)))
            .collect();
        if next.len() == alive.len() {
            break;
        }
        alive = next;
    }
    if alive.is_empty() {
        return Err(SftError::EmptyLanguage);
    }
    let matrix = m.restrict(&alive);
    let labels = alive.iter().map(|&a| labels[a].clone()).collect();
    Ok(Sft {
        name,
        matrix,
        labels,
    })
}

fn contains_forbidden(word: &[u8], forbidden: &[Vec<u8>]) -> bool {
    forbidden
        .iter()
        .any(|f| f.len() <= word.len() && word.windows(f.len()).any(|w| w == f.as_slice()))
}

/// SFT over `k` symbols avoiding the given words. Words longer than two are
/// handled by recoding onto blocks of length `max_len - 1`.
pub fn sft_from_forbidden_words(k: usize, words: &[Vec<u8>]) -> Result<Sft, SftError> {
    if k == 0 || k > MAX_ALPHABET {
        return Err(SftError::AlphabetSize(k));
    }
    for w in words {
        if w.is_empty() {
            return Err(SftError::EmptyWord);
        }
        if let Some(&s) = w.iter().find(|&&s| s as usize >= k) {
            return Err(SftError::BadSymbol {
                word: w.clone(),
                symbol: s,
            });
        }
    }
    let name = if words.is_empty() {
        format!("full_shift({k})")
    } else {
        let ws: Vec<String> = words.iter().map(|w| spell(w)).collect();
        format!("sft({k};{})", ws.join(","))
    };
    let block = words
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(1)
        .saturating_sub(1)
        .max(1);
    // Enumerate admissible blocks in lexicographic order.
    let mut blocks: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..block {
        let mut next = Vec::new();
        for b in &blocks {
            for s in 0..k as u8 {
                let mut w = b.clone();
                w.push(s);
                if !contains_forbidden(&w, words) {
                    next.push(w);
                }
            }
        }
        blocks = next;
        if blocks.len() > 1 << 16 {
            return Err(SftError::AlphabetSize(blocks.len()));
        }
    }
    if blocks.is_empty() {
        return Err(SftError::EmptyLanguage);
    }
    if blocks.len() > MAX_ALPHABET {
        return Err(SftError::AlphabetSize(blocks.len()));
    }
    let rows: Vec<Vec<u8>> = blocks
        .iter()
        .map(|a| {
            blocks
                .iter()
                .map(|b| {
                    let overlap = a[1..] == b[..block - 1];
                    let mut w = a.clone();
                    w.push(*b.last().expect("non-empty block"));
                    u8::from(overlap && !contains_forbidden(&w, words))
                })
                .collect()
        })
        .collect();
    let m = TransitionMatrix::from_rows(&rows)?;
    prune(name, m, blocks)
}

fn spell(word: &[u8]) -> String {
    if word.iter().all(|&s| s < 10) {
        word.iter().map(|s| char::from(b'0' + s)).collect()
    } else {
        format!("{word:?}")
    }
}

/// Strong connectivity of the transition graph.
pub fn is_irreducible(m: &TransitionMatrix) -> bool {
    let k = m.size();
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let reach_from = |start: usize, forward: bool| {
        let mut seen = 1u64 << start;
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for b in 0..k {
                let edge = if forward {
                    m.allowed(a, b)
                } else {
                    m.allowed(b, a)
                };
                if edge && seen >> b & 1 == 0 {
                    seen |= 1 << b;
                    queue.push_back(b);
                }
            }
        }
        seen
    };
    reach_from(0, true) == full && reach_from(0, false) == full
}

/// Outcome of the primitivity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "primitive", rename_all = "snake_case")]
pub enum Primitivity {
    /// Least `e` with `m^e > 0`.
    Primitive { exponent: usize },
    /// Period of an irreducible matrix; `None` when the graph is reducible.
    Imprimitive { period: Option<usize> },
}

impl Primitivity {
    pub fn is_primitive(&self) -> bool {
        matches!(self, Self::Primitive { .. })
    }
}

/// Searches powers up to the Wielandt bound `(k-1)^2 + 1`.
pub fn primitivity(m: &TransitionMatrix) -> Primitivity {
    let k = m.size();
    let bound = (k - 1) * (k - 1) + 1;
    let mut power = m.clone();
    for e in 1..=bound {
        if power.all_positive() {
            return Primitivity::Primitive { exponent: e };
        }
        power = power.bool_mul(m);
    }
    if !is_irreducible(m) {
        return Primitivity::Imprimitive { period: None };
    }
    // Period = gcd over edges a->b of level(a) + 1 - level(b).
    let mut level = vec![usize::MAX; k];
    level[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    let mut g = 0usize;
    while let Some(a) = queue.pop_front() {
        for b in 0..k {
            if !m.allowed(a, b) {
                continue;
            }
            if level[b] == usize::MAX {
                level[b] = level[a] + 1;
                queue.push_back(b);
            } else {
                g = g.gcd(&(level[a] + 1).abs_diff(level[b]));
            }
        }
    }
    Primitivity::Imprimitive { period: Some(g) }
}

/// Points of period dividing `p`, as a finite system under the shift.
///
/// Points are the length-`p` cyclic words in lexicographic order; the metric
/// is `2^{-min{|i| : x_i != y_i}}`.
pub fn periodic_subsystem(sft: &Sft, p: usize) -> Result<ActionSystem, SftError> {
    if p == 0 {
        return Err(SftError::ZeroPeriod);
    }
    let m = sft.matrix();
    let k = m.size();
    let mut words: Vec<Vec<u8>> = Vec::new();
    let mut stack: Vec<Vec<u8>> = (0..k as u8).rev().map(|a| vec![a]).collect();
    while let Some(w) = stack.pop() {
        if w.len() == p {
            if m.allowed(*w.last().unwrap() as usize, w[0] as usize) {
                words.push(w);
            }
            continue;
        }
        let last = *w.last().unwrap() as usize;
        for b in (0..k).rev() {
            if m.allowed(last, b) {
                let mut next = w.clone();
                next.push(b as u8);
                stack.push(next);
            }
        }
    }
    if words.is_empty() {
        return Err(SftError::NoPeriodicPoints {
            period: p,
            trace: 0,
        });
    }
    let rows = words
        .iter()
        .map(|x| words.iter().map(|y| shift_distance(x, y)).collect())
        .collect();
    let space = FiniteMetricSpace::from_rows(rows).expect("shift metric is an ultrametric");
    let shift: Vec<usize> = words
        .iter()
        .map(|w| {
            let mut r = w[1..].to_vec();
            r.push(w[0]);
            words
                .binary_search(&r)
                .expect("rotation stays in the subsystem")
        })
        .collect();
    let group = GroupSpec::new(
        GroupKind::FreeAbelian,
        vec![Permutation::new(shift).expect("rotation is a bijection")],
        true,
        words.len(),
    )
    .expect("single generator");
    Ok(ActionSystem::new(
        format!("periodic_subsystem({},{p})", sft.name()),
        space,
        group,
    )
    .expect("valid system"))
}

fn shift_distance(x: &[u8], y: &[u8]) -> Rational64 {
    let p = x.len();
    let m = (0..p).filter(|&r| x[r] != y[r]).map(|r| r.min(p - r)).min();
    match m {
        None => Rational64::from_integer(0),
        Some(m) => Rational64::new(1, 1i64 << m),
    }
}

/// A cylinder `[w]_a = {x : x_a … x_{a+|w|-1} = w}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cylinder {
    pub anchor: i64,
    pub word: Vec<u8>,
}

impl Cylinder {
    pub fn new(sft: &Sft, word: Vec<u8>, anchor: i64) -> Result<Self, SftError> {
        if word.is_empty() || !sft.word_allowed(&word) {
            return Err(SftError::ForbiddenCylinder(word));
        }
        Ok(Self { anchor, word })
    }
}

/// Allowed words of length `1..=max_len` anchored at 0, ordered by length
/// and then lexicographically.
pub fn cylinders_up_to(sft: &Sft, max_len: usize) -> Vec<Cylinder> {
    let m = sft.matrix();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u8>> = (0..m.size() as u8).map(|a| vec![a]).collect();
    for len in 1..=max_len {
        if len > 1 {
            layer = layer
                .iter()
                .flat_map(|w| {
                    let last = *w.last().unwrap() as usize;
                    (0..m.size())
                        .filter(move |&b| m.allowed(last, b))
                        .map(move |b| {
                            let mut x = w.clone();
                            x.push(b as u8);
                            x
                        })
                })
                .collect();
        }
        out.extend(layer.iter().map(|w| Cylinder {
            anchor: 0,
            word: w.clone(),
        }));
    }
    out
}
