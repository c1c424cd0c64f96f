//! Permutations of `{1, ..., n}`, ordinal inverses, adjacent transpositions,
//! and the discordance/inversion machinery everything else is built on.
//!
//! Positions are 1-indexed throughout the public interface. All types are
//! immutable after construction and every operation is a pure function.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("empty value sequence")]
    Empty,
    #[error("not a bijection of 1..={n}: value {value} at position {position}")]
    NotABijection {
        n: usize,
        value: usize,
        position: usize,
    },
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("invalid index pair ({i},{j}): positions must be distinct and 1-based")]
    InvalidPair { i: usize, j: usize },
    #[error("index pair ({i},{j}) out of range for order {n}")]
    PairOutOfRange { i: usize, j: usize, n: usize },
    #[error("values at positions {i},{j} are {vi},{vj}, which are not consecutive")]
    NotAdjacentValues {
        i: usize,
        j: usize,
        vi: usize,
        vj: usize,
    },
    #[error("cannot parse permutation from {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A permutation of `{1, ..., n}`, stored as its value sequence:
/// `values[k]` is the image of position `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its value sequence, validating that every
    /// value in `1..=n` appears exactly once.
    pub fn new(values: Vec<usize>) -> Result<Self, PermError> {
        if values.is_empty() {
            return Err(PermError::Empty);
        }
        let n = values.len();
        let mut seen = vec![false; n];
        for (k, &v) in values.iter().enumerate() {
            if v < 1 || v > n || seen[v - 1] {
                return Err(PermError::NotABijection {
                    n,
                    value: v,
                    position: k + 1,
                });
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutation order must be at least 1");
        Permutation {
            values: (1..=n).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// The ordinal inverse: position `k` maps to `n + 1 - values[k]`.
    /// It is the unique point at distance 1 under any strict weight.
    pub fn ordinal_inverse(&self) -> Permutation {
        let n = self.order();
        Permutation {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// Right composition: `(self ∘ tau)(k) = self(tau(k))`.
    pub fn compose(&self, tau: &Permutation) -> Result<Permutation, PermError> {
        check_orders(self, tau)?;
        Ok(Permutation {
            values: tau.values.iter().map(|&t| self.values[t - 1]).collect(),
        })
    }

    /// The permutation with the values at positions `pair.i()` and `pair.j()`
    /// exchanged. No adjacency requirement; see [`Permutation::adjacent_transposition`]
    /// for the edge move of the permutohedron graph.
    pub fn swapped(&self, pair: IndexPair) -> Result<Permutation, PermError> {
        if !pair.in_range(self.order()) {
            return Err(PermError::PairOutOfRange {
                i: pair.i(),
                j: pair.j(),
                n: self.order(),
            });
        }
        let mut values = self.values.clone();
        values.swap(pair.i() - 1, pair.j() - 1);
        Ok(Permutation { values })
    }

    /// Swaps the values at positions `i < j`, allowed only when those values
    /// are consecutive integers. This is exactly an edge move in the
    /// permutohedron edge-graph, and the discordance set between input and
    /// output is the singleton `{(i,j)}`.
    pub fn adjacent_transposition(&self, pair: IndexPair) -> Result<Permutation, PermError> {
        if !pair.in_range(self.order()) {
            return Err(PermError::PairOutOfRange {
                i: pair.i(),
                j: pair.j(),
                n: self.order(),
            });
        }
        let vi = self.values[pair.i() - 1];
        let vj = self.values[pair.j() - 1];
        if vi.abs_diff(vj) != 1 {
            return Err(PermError::NotAdjacentValues {
                i: pair.i(),
                j: pair.j(),
                vi,
                vj,
            });
        }
        self.swapped(pair)
    }

    /// The set of inversions: index pairs `i < j` with `values[i] > values[j]`,
    /// i.e. the discordance set against the identity.
    pub fn inversion_set(&self) -> PairSet {
        discordance_set(self, &Permutation::identity(self.order()))
            .expect("orders agree by construction")
    }

    /// Rank of this permutation in the lexicographic order of its symmetric
    /// group, via the Lehmer code.
    pub fn lex_rank(&self) -> u128 {
        let n = self.order();
        let mut rank: u128 = 0;
        let mut factorial: u128 = (1..n as u128).product::<u128>().max(1);
        for k in 0..n {
            let smaller_later = self.values[k + 1..]
                .iter()
                .filter(|&&v| v < self.values[k])
                .count() as u128;
            rank += smaller_later * factorial;
            if n - k > 1 {
                factorial /= (n - k - 1) as u128;
            }
        }
        rank
    }

    /// All permutations of order `n` in lexicographic order.
    pub fn all(n: usize) -> Permutations {
        assert!(n >= 1, "permutation order must be at least 1");
        Permutations {
            next: Some((1..=n).collect()),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut values = Vec::new();
        for token in s.split_whitespace() {
            let v: usize = token.parse().map_err(|_| PermError::Parse {
                input: s.to_string(),
                reason: format!("token {token:?} is not a positive integer"),
            })?;
            values.push(v);
        }
        if values.is_empty() {
            return Err(PermError::Parse {
                input: s.to_string(),
                reason: "no values".to_string(),
            });
        }
        Permutation::new(values)
    }
}

/// Lexicographic enumeration of a symmetric group.
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let item = Permutation {
            values: current.clone(),
        };
        let mut v = current;
        // Standard next-permutation step.
        let n = v.len();
        let mut i = n.saturating_sub(1);
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            self.next = None;
        } else {
            let mut j = n - 1;
            while v[j] <= v[i - 1] {
                j -= 1;
            }
            v.swap(i - 1, j);
            v[i..].reverse();
            self.next = Some(v);
        }
        Some(item)
    }
}

/// An index pair `(i, j)` with `1 <= i < j`. Constructors reorder the inputs
/// and reject `i == j` or 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexPair {
    i: usize,
    j: usize,
}

impl IndexPair {
    pub fn new(i: usize, j: usize) -> Result<Self, PermError> {
        if i == 0 || j == 0 || i == j {
            return Err(PermError::InvalidPair { i, j });
        }
        Ok(IndexPair {
            i: i.min(j),
            j: i.max(j),
        })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn in_range(&self, n: usize) -> bool {
        self.j <= n
    }

    /// All pairs for order `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = IndexPair> {
        (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| IndexPair { i, j }))
    }

    /// Position of this pair in the lexicographic enumeration for order `n`.
    pub fn lex_index(&self, n: usize) -> usize {
        debug_assert!(self.in_range(n));
        let before_i: usize = (1..self.i).map(|a| n - a).sum();
        before_i + (self.j - self.i - 1)
    }

    /// Number of pairs for order `n`, i.e. `n(n-1)/2`.
    pub fn count(n: usize) -> usize {
        n * (n - 1) / 2
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// A set of index pairs for a fixed ambient order; houses discordance sets
/// and inversion sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSet {
    n: usize,
    pairs: BTreeSet<IndexPair>,
}

impl PairSet {
    pub fn empty(n: usize) -> Self {
        PairSet {
            n,
            pairs: BTreeSet::new(),
        }
    }

    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self, PermError>
    where
        I: IntoIterator<Item = IndexPair>,
    {
        let mut set = BTreeSet::new();
        for pair in pairs {
            if !pair.in_range(n) {
                return Err(PermError::PairOutOfRange {
                    i: pair.i(),
                    j: pair.j(),
                    n,
                });
            }
            set.insert(pair);
        }
        Ok(PairSet { n, pairs: set })
    }

    /// The complete set of all `n(n-1)/2` pairs.
    pub fn complete(n: usize) -> Self {
        PairSet {
            n,
            pairs: IndexPair::all(n).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: IndexPair) -> bool {
        self.pairs.contains(&pair)
    }

    pub fn iter(&self) -> impl Iterator<Item = IndexPair> + '_ {
        self.pairs.iter().copied()
    }

    pub fn union(&self, other: &PairSet) -> Result<PairSet, PermError> {
        self.check_order(other)?;
        Ok(PairSet {
            n: self.n,
            pairs: self.pairs.union(&other.pairs).copied().collect(),
        })
    }

    pub fn intersection(&self, other: &PairSet) -> Result<PairSet, PermError> {
        self.check_order(other)?;
        Ok(PairSet {
            n: self.n,
            pairs: self.pairs.intersection(&other.pairs).copied().collect(),
        })
    }

    pub fn is_disjoint(&self, other: &PairSet) -> bool {
        self.pairs.is_disjoint(&other.pairs)
    }

    fn check_order(&self, other: &PairSet) -> Result<(), PermError> {
        if self.n != other.n {
            return Err(PermError::OrderMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for pair in &self.pairs {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{pair}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

fn check_orders(p: &Permutation, q: &Permutation) -> Result<(), PermError> {
    if p.order() != q.order() {
        return Err(PermError::OrderMismatch {
            left: p.order(),
            right: q.order(),
        });
    }
    Ok(())
}

/// Whether `p` and `q` order positions `pair.i()` and `pair.j()` oppositely:
/// `(p_j - p_i)(q_j - q_i) < 0`. Symmetric in `p, q` and in the positions.
pub fn discordance_indicator(
    p: &Permutation,
    q: &Permutation,
    pair: IndexPair,
) -> Result<bool, PermError> {
    check_orders(p, q)?;
    if !pair.in_range(p.order()) {
        return Err(PermError::PairOutOfRange {
            i: pair.i(),
            j: pair.j(),
            n: p.order(),
        });
    }
    let dp = p.values()[pair.j() - 1] as i64 - p.values()[pair.i() - 1] as i64;
    let dq = q.values()[pair.j() - 1] as i64 - q.values()[pair.i() - 1] as i64;
    Ok(dp * dq < 0)
}

/// The set of all discordant pairs of `p` and `q`.
pub fn discordance_set(p: &Permutation, q: &Permutation) -> Result<PairSet, PermError> {
    check_orders(p, q)?;
    let n = p.order();
    let mut pairs = BTreeSet::new();
    for pair in IndexPair::all(n) {
        if discordance_indicator(p, q, pair)? {
            pairs.insert(pair);
        }
    }
    Ok(PairSet { n, pairs })
}

/// Number of discordant pairs; as fast as the set but without allocating it.
pub fn discordance_count(p: &Permutation, q: &Permutation) -> Result<usize, PermError> {
    check_orders(p, q)?;
    let n = p.order();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            let dp = p.values()[j] as i64 - p.values()[i] as i64;
            let dq = q.values()[j] as i64 - q.values()[i] as i64;
            if dp * dq < 0 {
                count += 1;
            }
        }
    }
    Ok(count)
}
