//! Seeded random generators for permutations and weight matrices, used by the
//! verification suites and property sweeps.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::metric::WeightMatrix;
use crate::perm::{IndexPair, Permutation};
use crate::rational::{ratio, Ratio};

pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut values: Vec<usize> = (1..=n).collect();
    values.shuffle(rng);
    Permutation::new(values).expect("shuffled identity is a bijection")
}

/// A positive rational with small numerator and denominator.
pub fn random_positive_ratio<R: Rng + ?Sized>(rng: &mut R) -> Ratio {
    ratio(rng.gen_range(1..=12), rng.gen_range(1..=9))
}

/// A strict matrix with independent random positive rational weights.
pub fn random_strict_weights<R: Rng + ?Sized>(n: usize, rng: &mut R) -> WeightMatrix {
    WeightMatrix::new(
        n,
        IndexPair::all(n)
            .map(|p| (p, random_positive_ratio(rng)))
            .collect::<Vec<_>>(),
    )
    .expect("positive weights are valid")
}

/// A nonnegative matrix with at least one zero weight and at least one
/// positive weight.
pub fn random_weights_with_zero<R: Rng + ?Sized>(n: usize, rng: &mut R) -> WeightMatrix {
    let pairs: Vec<IndexPair> = IndexPair::all(n).collect();
    loop {
        let zeroed: Vec<bool> = pairs.iter().map(|_| rng.gen_bool(0.4)).collect();
        let zero_count = zeroed.iter().filter(|&&z| z).count();
        if zero_count == 0 || zero_count == pairs.len() {
            continue;
        }
        let entries: Vec<(IndexPair, Ratio)> = pairs
            .iter()
            .zip(&zeroed)
            .filter(|(_, &z)| !z)
            .map(|(&p, _)| (p, random_positive_ratio(rng)))
            .collect();
        return WeightMatrix::new(n, entries).expect("some weight is positive");
    }
}
