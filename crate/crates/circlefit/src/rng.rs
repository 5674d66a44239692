//! Seeded PRNG used by every stochastic component (RANSAC, LMedS, the
//! synthetic-data generators). xorshift64* with the multiplier
//! 0x2545F4914F6CDD1D; Gaussians come from Box-Muller on the same stream.
//! Keeping this in-crate makes results reproducible across platforms.

const STAR: u64 = 0x2545_F491_4F6C_DD1D;
const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// xorshift64* generator. State is never zero.
#[derive(Debug, Clone)]
pub struct XorShiftStar {
    state: u64,
}

impl XorShiftStar {
    /// Seed the generator. Seed 0 (invalid xorshift state) maps to a fixed
    /// nonzero constant.
    pub fn new(seed: u64) -> Self {
        XorShiftStar {
            state: if seed == 0 { GOLDEN } else { seed },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(STAR)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in (0, 1]; safe to feed into a logarithm.
    pub fn next_f64_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform index in [0, n) via the multiply-shift reduction.
    pub fn next_index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Uniform integer in [lo, hi] inclusive.
    pub fn range_usize(&mut self, lo: usize, hi: usize) -> usize {
        debug_assert!(hi >= lo);
        lo + self.next_index(hi - lo + 1)
    }

    /// Standard normal via Box-Muller. Consumes two uniforms per sample.
    pub fn normal(&mut self) -> f64 {
        let u1 = self.next_f64_open();
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive an independent stream seed from a base seed, e.g. one per dataset
/// part. splitmix64 of the base offset by the stream index decorrelates
/// consecutive streams.
pub fn mix_seed(seed: u64, stream: u64) -> u64 {
    splitmix64(seed ^ stream.wrapping_add(1).wrapping_mul(GOLDEN))
}
