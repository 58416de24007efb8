//! Seeded generators for complete 2-colourings of `K_n^(3)`.
//!
//! Randomness comes from SplitMix64 used as a counter-based generator: the
//! word for counter `i` under seed `s` is the SplitMix64 finaliser applied to
//! `s + (i + 1) * 0x9E3779B97F4A7C15` (wrapping). Triples are coloured in
//! colex order with counter = colex index, and the triple is red iff
//! `(word >> 11) * 2^-53 < p`. Any language with 64-bit wrapping arithmetic
//! reproduces the same instances.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{Color, Coloring, Hypergraph3};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output for `counter` under `seed`.
#[inline]
pub fn splitmix64(seed: u64, counter: u64) -> u64 {
    let mut z = seed.wrapping_add(counter.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform double in `[0, 1)` from the top 53 bits.
#[inline]
pub fn unit_f64(seed: u64, counter: u64) -> f64 {
    (splitmix64(seed, counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[derive(Debug, Error, PartialEq)]
pub enum GenerateError {
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("planted class sizes sum to {sum}, expected n = {n}")]
    PlantedSizes { sum: usize, n: usize },
    #[error("n = {0} is below the minimum of 4")]
    TooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// Each triple red independently with probability `p`.
    Uniform(f64),
    /// Consecutive id blocks of the given sizes; triples inside a block are
    /// red, all others blue.
    PlantedPartition(Vec<usize>),
    Monochromatic(Color),
}

pub fn generate(model: &Model, n: usize, seed: u64) -> Result<Coloring, GenerateError> {
    if n < 4 {
        return Err(GenerateError::TooSmall(n));
    }
    let host = Hypergraph3::complete(n);
    match model {
        Model::Uniform(p) => {
            if !(0.0..=1.0).contains(p) {
                return Err(GenerateError::Probability(*p));
            }
            Ok(Coloring::from_fn(host, |t| {
                if unit_f64(seed, t.colex_index()) < *p {
                    Color::Red
                } else {
                    Color::Blue
                }
            }))
        }
        Model::PlantedPartition(sizes) => {
            let sum: usize = sizes.iter().sum();
            if sum != n {
                return Err(GenerateError::PlantedSizes { sum, n });
            }
            let mut class = Vec::with_capacity(n);
            for (i, &s) in sizes.iter().enumerate() {
                class.extend(std::iter::repeat(i).take(s));
            }
            Ok(Coloring::from_fn(host, |t| {
                let [a, b, c] = t.vertices();
                if class[a] == class[b] && class[b] == class[c] {
                    Color::Red
                } else {
                    Color::Blue
                }
            }))
        }
        Model::Monochromatic(color) => Ok(Coloring::monochromatic(host, *color)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // Stream values of the reference SplitMix64 seeded with 0.
        assert_eq!(splitmix64(0, 0), 0xE220_A839_7B1D_CDAF);
        assert_eq!(splitmix64(0, 1), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn monochromatic_red_n6() {
        let col = generate(&Model::Monochromatic(Color::Red), 6, 0).unwrap();
        assert_eq!(col.colors().len(), 20);
        assert!(col.colors().iter().all(|&c| c == Color::Red));
    }

    #[test]
    fn uniform_one_is_all_red() {
        let a = generate(&Model::Uniform(1.0), 8, 17).unwrap();
        let b = generate(&Model::Monochromatic(Color::Red), 8, 0).unwrap();
        assert_eq!(a, b);
        let z = generate(&Model::Uniform(0.0), 8, 17).unwrap();
        assert!(z.colors().iter().all(|&c| c == Color::Blue));
    }

    #[test]
    fn same_seed_same_instance() {
        let a = generate(&Model::Uniform(0.5), 12, 99).unwrap();
        let b = generate(&Model::Uniform(0.5), 12, 99).unwrap();
        let c = generate(&Model::Uniform(0.5), 12, 100).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn planted_partition_colours_blocks_red() {
        let col = generate(&Model::PlantedPartition(vec![3, 4]), 7, 0).unwrap();
        let red: Vec<_> = col
            .host()
            .edges()
            .iter()
            .zip(col.colors())
            .filter(|(_, &c)| c == Color::Red)
            .map(|(t, _)| *t)
            .collect();
        // {0,1,2} plus the 4 triples of {3,4,5,6}
        assert_eq!(red.len(), 5);
        assert_eq!(
            generate(&Model::PlantedPartition(vec![3, 3]), 7, 0),
            Err(GenerateError::PlantedSizes { sum: 6, n: 7 })
        );
    }

    #[test]
    fn invalid_specs() {
        assert_eq!(generate(&Model::Uniform(1.5), 6, 0), Err(GenerateError::Probability(1.5)));
        assert_eq!(generate(&Model::Uniform(0.5), 3, 0), Err(GenerateError::TooSmall(3)));
    }
}
