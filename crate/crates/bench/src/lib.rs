//! Shared fixtures for the benchmarks.

use bayerkit::{add_noise, gen_scene, mosaic, BayerPattern, NoiseParams, RawImage};

/// Noisy synthetic mosaic of `size x size`.
pub fn noisy_mosaic(size: usize, pattern: BayerPattern, seed: u64) -> RawImage {
    let clean = mosaic(
        &gen_scene(seed, size, size).expect("even size >= 8"),
        pattern,
    );
    add_noise(
        &clean,
        NoiseParams::new(0.02, 0.04).expect("valid noise"),
        seed + 1,
    )
}
