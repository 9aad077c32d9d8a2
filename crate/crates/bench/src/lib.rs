//! Fixtures shared by the benchmarks.

use lauricella::kernel::{int, rat};
use lauricella::{BlockConfig, Rational};

/// A mixed configuration with one block of each size from `largest` down to 1.
pub fn staircase(largest: usize) -> BlockConfig {
    let sizes: Vec<usize> = (1..=largest).rev().collect();
    let weights = (0..sizes.len()).map(|b| rat(2 * b as i64 + 1, 3)).collect();
    BlockConfig::new(sizes, weights).expect("valid configuration")
}

/// A fixed point with distinct block leaders and nonzero subleading coordinates.
pub fn point(config: &BlockConfig) -> Vec<Rational> {
    (0..config.dim()).map(|f| int(3 * f as i64 + 2) / int(f as i64 % 3 + 1)).collect()
}
