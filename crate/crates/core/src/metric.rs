//! Weight matrices and the weighted Kendall distance.
//!
//! A [`WeightMatrix`] assigns a nonnegative rational weight to every index
//! pair `i < j` (absent pairs weigh 0). The distance between two permutations
//! is the weight of their discordant pairs divided by the total weight, an
//! exact rational in `[0, 1]`. The space is always a pseudometric space; it is
//! a metric space exactly when every pair has positive weight.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::sync::OnceLock;

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use thiserror::Error;

use crate::perm::{discordance_indicator, IndexPair, PermError, Permutation};
use crate::rational::{parse_ratio, Ratio};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum MetricError {
    #[error("negative weight {weight} at pair {pair}")]
    NegativeWeight { pair: IndexPair, weight: Ratio },
    #[error("total weight is zero; at least one pair must have positive weight")]
    ZeroTotal,
    #[error("pair {pair} out of range for order {n}")]
    PairOutOfRange { pair: IndexPair, n: usize },
    #[error("duplicate pair {pair}")]
    DuplicatePair { pair: IndexPair },
    #[error("factor {index} is not positive")]
    NonpositiveFactor { index: usize },
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("weight file, line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl From<PermError> for MetricError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::OrderMismatch { left, right } => MetricError::OrderMismatch { left, right },
            other => MetricError::Parse {
                line: 0,
                message: other.to_string(),
            },
        }
    }
}

/// A strictly upper triangular matrix of nonnegative rational weights with
/// positive total. Immutable after construction.
#[derive(Debug)]
pub struct WeightMatrix {
    n: usize,
    entries: BTreeMap<IndexPair, Ratio>,
    total: Ratio,
    strict: bool,
    distinct_subset_sums: OnceLock<bool>,
}

impl Clone for WeightMatrix {
    fn clone(&self) -> Self {
        WeightMatrix {
            n: self.n,
            entries: self.entries.clone(),
            total: self.total.clone(),
            strict: self.strict,
            distinct_subset_sums: self.distinct_subset_sums.clone(),
        }
    }
}

impl PartialEq for WeightMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl WeightMatrix {
    /// Builds a weight matrix of order `n` from explicit entries. Pairs left
    /// out weigh 0; listing a pair twice is an error.
    pub fn new(
        n: usize,
        entries: impl IntoIterator<Item = (IndexPair, Ratio)>,
    ) -> Result<Self, MetricError> {
        assert!(n >= 2, "weight matrix order must be at least 2");
        let mut map = BTreeMap::new();
        let mut total = Ratio::zero();
        let mut positive = 0usize;
        for (pair, weight) in entries {
            if !pair.in_range(n) {
                return Err(MetricError::PairOutOfRange { pair, n });
            }
            if weight.is_negative() {
                return Err(MetricError::NegativeWeight { pair, weight });
            }
            if map.contains_key(&pair) {
                return Err(MetricError::DuplicatePair { pair });
            }
            if weight.is_zero() {
                map.insert(pair, weight);
                continue;
            }
            total += &weight;
            positive += 1;
            map.insert(pair, weight);
        }
        if total.is_zero() {
            return Err(MetricError::ZeroTotal);
        }
        // Zero entries are dropped: an absent pair already means weight 0.
        map.retain(|_, w| !w.is_zero());
        let strict = positive == IndexPair::count(n);
        Ok(WeightMatrix {
            n,
            entries: map,
            total,
            strict,
            distinct_subset_sums: OnceLock::new(),
        })
    }

    /// The all-ones matrix; the distance under it is the normalized Kendall
    /// tau ranking distance.
    pub fn kendall_tau(n: usize) -> Self {
        WeightMatrix::new(n, IndexPair::all(n).map(|p| (p, Ratio::one())))
            .expect("all-ones weights are valid for n >= 2")
    }

    /// Product weights: the pair `(i, j)` weighs `factors[i-1] * factors[j-1]`.
    pub fn product(factors: &[Ratio]) -> Result<Self, MetricError> {
        for (index, f) in factors.iter().enumerate() {
            if !f.is_positive() {
                return Err(MetricError::NonpositiveFactor { index: index + 1 });
            }
        }
        if factors.len() < 2 {
            return Err(MetricError::ZeroTotal);
        }
        let n = factors.len();
        WeightMatrix::new(
            n,
            IndexPair::all(n).map(|p| (p, &factors[p.i() - 1] * &factors[p.j() - 1])),
        )
    }

    /// Pairwise-distinct powers of two in lexicographic pair order, so any two
    /// distinct subsets of the entries have distinct sums.
    pub fn generic(n: usize) -> Self {
        assert!(n >= 2, "weight matrix order must be at least 2");
        WeightMatrix::new(
            n,
            IndexPair::all(n).map(|p| {
                let weight = Ratio::from_integer(BigInt::one() << p.lex_index(n));
                (p, weight)
            }),
        )
        .expect("powers of two are valid weights")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// The weight of a pair; absent pairs weigh 0.
    pub fn weight(&self, pair: IndexPair) -> Ratio {
        self.entries.get(&pair).cloned().unwrap_or_else(Ratio::zero)
    }

    /// The positive entries, in lexicographic pair order.
    pub fn positive_entries(&self) -> impl Iterator<Item = (IndexPair, &Ratio)> {
        self.entries.iter().map(|(p, w)| (*p, w))
    }

    pub fn total(&self) -> &Ratio {
        &self.total
    }

    /// True exactly when every pair has positive weight, i.e. when the
    /// distance is a metric rather than only a pseudometric.
    pub fn is_metric(&self) -> bool {
        self.strict
    }

    /// Entrywise scaling. The distance is invariant under positive scaling.
    pub fn scale(&self, a: &Ratio) -> Result<Self, MetricError> {
        WeightMatrix::new(
            self.n,
            self.entries.iter().map(|(p, w)| (*p, w * a)),
        )
    }

    /// Entrywise sum of two matrices of the same order.
    pub fn add(&self, other: &Self) -> Result<Self, MetricError> {
        if self.n != other.n {
            return Err(MetricError::OrderMismatch {
                left: self.n,
                right: other.n,
            });
        }
        WeightMatrix::new(
            self.n,
            IndexPair::all(self.n).map(|p| (p, self.weight(p) + other.weight(p))),
        )
    }

    /// For a matrix with some zero-weight pair, a pair of distinct
    /// permutations at distance exactly 0: place consecutive values at the
    /// zero pair's positions and swap them. Returns nothing exactly when the
    /// matrix is strict.
    pub fn zero_distance_witness(&self) -> Option<(Permutation, Permutation)> {
        if self.strict {
            return None;
        }
        let pair = IndexPair::all(self.n).find(|p| !self.entries.contains_key(p))?;
        let mut values = vec![0usize; self.n];
        values[pair.i() - 1] = 1;
        values[pair.j() - 1] = 2;
        let mut next = 3;
        for v in values.iter_mut() {
            if *v == 0 {
                *v = next;
                next += 1;
            }
        }
        let p = Permutation::new(values).expect("constructed values form a bijection");
        let q = p.swapped(pair).expect("pair is in range");
        Some((p, q))
    }

    /// Whether every two distinct subsets of the upper-triangular entries have
    /// distinct sums (e.g. pairwise-distinct powers of two). Enumerates all
    /// subset sums, so the cost is exponential in `n(n-1)/2`; intended for the
    /// small orders where the quadruple machinery applies. Memoized.
    pub fn has_distinct_subset_sums(&self) -> bool {
        *self.distinct_subset_sums.get_or_init(|| {
            let weights: Vec<Ratio> = IndexPair::all(self.n).map(|p| self.weight(p)).collect();
            let mut sums = BTreeSet::new();
            sums.insert(Ratio::zero());
            for w in &weights {
                let extended: Vec<Ratio> = sums.iter().map(|s| s + w).collect();
                for s in extended {
                    if !sums.insert(s) {
                        return false;
                    }
                }
            }
            true
        })
    }

    /// Parses the weight file format: a header `n <order>`, then lines
    /// `i j w` with `1 <= i < j <= n` and `w` a nonnegative rational literal.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, MetricError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, line)| (k + 1, line.trim()))
            .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));
        let (header_line, header) = lines.next().ok_or(MetricError::Parse {
            line: 0,
            message: "empty weight file".to_string(),
        })?;
        let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["n", order] => order.parse::<usize>().map_err(|_| MetricError::Parse {
                line: header_line,
                message: format!("bad order {order:?}"),
            })?,
            _ => {
                return Err(MetricError::Parse {
                    line: header_line,
                    message: format!("expected header \"n <order>\", got {header:?}"),
                })
            }
        };
        if n < 2 {
            return Err(MetricError::Parse {
                line: header_line,
                message: format!("order must be at least 2, got {n}"),
            });
        }
        let mut entries = Vec::new();
        let mut seen = BTreeSet::new();
        for (line_no, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [i, j, w] = fields[..] else {
                return Err(MetricError::Parse {
                    line: line_no,
                    message: format!("expected \"i j w\", got {line:?}"),
                });
            };
            let i: usize = i.parse().map_err(|_| MetricError::Parse {
                line: line_no,
                message: format!("bad index {i:?}"),
            })?;
            let j: usize = j.parse().map_err(|_| MetricError::Parse {
                line: line_no,
                message: format!("bad index {j:?}"),
            })?;
            if i >= j {
                return Err(MetricError::Parse {
                    line: line_no,
                    message: format!("pair must satisfy i < j, got ({i},{j})"),
                });
            }
            let pair = IndexPair::new(i, j).map_err(|e| MetricError::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
            if !pair.in_range(n) {
                return Err(MetricError::PairOutOfRange { pair, n });
            }
            if !seen.insert(pair) {
                return Err(MetricError::DuplicatePair { pair });
            }
            let weight = parse_ratio(w).map_err(|e| MetricError::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
            entries.push((pair, weight));
        }
        WeightMatrix::new(n, entries)
    }

    /// Writes the weight file format read by [`WeightMatrix::parse`].
    pub fn to_file_string(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (pair, weight) in &self.entries {
            out.push_str(&format!(
                "{} {} {}/{}\n",
                pair.i(),
                pair.j(),
                weight.numer(),
                weight.denom()
            ));
        }
        out
    }
}

fn check_query_orders(
    w: &WeightMatrix,
    p: &Permutation,
    q: &Permutation,
) -> Result<(), MetricError> {
    if p.order() != q.order() {
        return Err(MetricError::OrderMismatch {
            left: p.order(),
            right: q.order(),
        });
    }
    if w.order() != p.order() {
        return Err(MetricError::OrderMismatch {
            left: w.order(),
            right: p.order(),
        });
    }
    Ok(())
}

/// The total weight of the discordant pairs of `p` and `q` (the unnormalized
/// numerator of the distance).
pub fn discordant_weight(
    w: &WeightMatrix,
    p: &Permutation,
    q: &Permutation,
) -> Result<Ratio, MetricError> {
    check_query_orders(w, p, q)?;
    let mut sum = Ratio::zero();
    for (pair, weight) in w.positive_entries() {
        if discordance_indicator(p, q, pair)? {
            sum += weight;
        }
    }
    Ok(sum)
}

/// The weighted Kendall distance: discordant weight divided by total weight,
/// an exact rational in `[0, 1]`.
pub fn distance(w: &WeightMatrix, p: &Permutation, q: &Permutation) -> Result<Ratio, MetricError> {
    Ok(discordant_weight(w, p, q)? / w.total())
}

/// The normalized Kendall tau ranking distance: the number of discordant
/// pairs divided by `n(n-1)/2`. Equals the distance under the all-ones matrix.
pub fn normalized_kendall(p: &Permutation, q: &Permutation) -> Result<Ratio, MetricError> {
    if p.order() != q.order() {
        return Err(MetricError::OrderMismatch {
            left: p.order(),
            right: q.order(),
        });
    }
    assert!(p.order() >= 2, "normalized Kendall distance needs order >= 2");
    let discordant = crate::perm::discordance_count(p, q)?;
    Ok(Ratio::new(
        BigInt::from(discordant),
        BigInt::from(IndexPair::count(p.order())),
    ))
}

/// Kendall's correlation coefficient, `1 - 2 * normalized_kendall`, in
/// `[-1, 1]`; 1 exactly for equal permutations and -1 exactly for ordinal
/// inverses.
pub fn kendall_correlation(p: &Permutation, q: &Permutation) -> Result<Ratio, MetricError> {
    let d = normalized_kendall(p, q)?;
    Ok(Ratio::one() - d * Ratio::from_integer(BigInt::from(2)))
}
