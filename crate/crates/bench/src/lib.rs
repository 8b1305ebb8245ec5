//! Shared fixtures for the benchmarks.

use circulus::polygon::{ladder, PolygonLadder};
use circulus::{Enclosure, Precision};

pub fn bits(b: u32) -> Precision {
    Precision::new(b).expect("at least 8 bits")
}

/// Hexagon ladder with `doublings` rungs past the seed.
pub fn hexagon_ladder(doublings: usize, b: u32) -> PolygonLadder {
    ladder(6, doublings, bits(b)).expect("valid seed")
}

/// Central angles spread over (0, pi).
pub fn sample_angles(b: u32) -> Vec<Enclosure> {
    [1, 5, 10, 20, 30].iter().map(|&k| Enclosure::ratio(k, 10, bits(b))).collect()
}
