//! Deterministic random number generation for reproducible experiments.
//!
//! All randomness in a simulation battery flows from a single root seed.
//! Streams for (budget, run, design) triples are derived by chaining
//! [`derive_stream`], so every stream is an independent, stateless function
//! of the root seed and its coordinates. Runs can therefore execute in any
//! order (including in parallel) and still produce bit-identical output.
//!
//! The generator is SplitMix64 (Steele, Lea, Flood 2014): a 64-bit counter
//! sequence passed through an avalanching finalizer. It is not cryptographic;
//! it is fast, has no observed statistical defects at this scale, and its
//! output is fully specified by this file, which keeps serialized results
//! stable across reruns, thread schedules, and dependency upgrades. The
//! integer stream is identical everywhere; the Gaussian transform goes
//! through libm, so float draws are pinned per target rather than across
//! architectures.

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// Derive a child stream seed from a parent seed and a tag.
///
/// Chaining calls partitions the seed space: `derive_stream(derive_stream(root,
/// a), b)` and `derive_stream(derive_stream(root, a'), b')` collide only if the
/// underlying 64-bit mix collides.
pub fn derive_stream(seed: u64, tag: u64) -> u64 {
    mix64(seed ^ mix64(tag.wrapping_add(GOLDEN_GAMMA)))
}

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// SplitMix64 stream with a cached Box-Muller spare for Gaussian draws.
#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
    spare_gaussian: Option<f64>,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng {
            state: seed,
            spare_gaussian: None,
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in [0, 1), using the high 53 bits.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal via Box-Muller. Draws come in pairs; the second value
    /// is cached so consecutive calls consume exactly one pair per two draws.
    pub fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare_gaussian.take() {
            return z;
        }
        // u1 in (0, 1] so the logarithm is finite.
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        self.spare_gaussian = Some(r * s);
        r * c
    }

    /// Standard Gaussian vector of length `dim`.
    pub fn gaussian_vec(&mut self, dim: usize) -> Vec<f64> {
        (0..dim).map(|_| self.gaussian()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let mut a = Rng::new(derive_stream(7, 3));
        let mut b = Rng::new(derive_stream(7, 3));
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn sibling_streams_differ() {
        let mut a = Rng::new(derive_stream(7, 3));
        let mut b = Rng::new(derive_stream(7, 4));
        let same = (0..64).filter(|_| a.next_u64() == b.next_u64()).count();
        assert_eq!(same, 0);
    }

    #[test]
    fn uniform_range_and_mean() {
        let mut rng = Rng::new(42);
        let n = 100_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let u = rng.uniform();
            assert!((0.0..1.0).contains(&u));
            sum += u;
        }
        let mean = sum / n as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean={mean}");
    }

    #[test]
    fn gaussian_moments() {
        let mut rng = Rng::new(4242);
        let n = 200_000;
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for _ in 0..n {
            let z = rng.gaussian();
            sum += z;
            sum_sq += z * z;
        }
        let mean = sum / n as f64;
        let var = sum_sq / n as f64 - mean * mean;
        assert!(mean.abs() < 0.01, "mean={mean}");
        assert!((var - 1.0).abs() < 0.02, "var={var}");
    }
}
