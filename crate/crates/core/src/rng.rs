//! Counter-based random numbers (Philox4x64-10).
//!
//! Every draw is a pure function of a 256-bit counter and a 128-bit key, so a
//! Bernoulli trial can be addressed directly by `(seed, trial, layer, rank)`
//! without threading generator state through the sampler.

const M0: u64 = 0xD2E7_470E_E14C_6C93;
const M1: u64 = 0xCA5A_8263_9512_1157;
const W0: u64 = 0x9E37_79B9_7F4A_7C15;
const W1: u64 = 0xBB67_AE85_84CA_A73B;

#[inline]
fn mulhilo(a: u64, b: u64) -> (u64, u64) {
    let prod = (a as u128) * (b as u128);
    ((prod >> 64) as u64, prod as u64)
}

/// One Philox4x64 block with ten rounds.
#[inline]
pub fn philox4x64(counter: [u64; 4], key: [u64; 2]) -> [u64; 4] {
    let mut c = counter;
    let mut k = key;
    for _ in 0..10 {
        let (hi0, lo0) = mulhilo(M0, c[0]);
        let (hi1, lo1) = mulhilo(M1, c[2]);
        c = [hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0];
        k = [k[0].wrapping_add(W0), k[1].wrapping_add(W1)];
    }
    c
}

/// Maps 64 random bits to a double in `[0, 1)` with 53 bits of precision.
#[inline]
pub fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

const STREAM_TAG: u64 = 0x7261_6e64_636d_706c;
const DERIVE_TAG: u64 = 0x6465_7269_7665_7365;

/// The per-run key of the sampler; each trial and layer addresses its own counter block.
#[derive(Clone, Copy, Debug)]
pub struct TrialStream {
    seed: u64,
    trial: u64,
}

impl TrialStream {
    pub fn new(seed: u64, trial: u64) -> Self {
        TrialStream { seed, trial }
    }

    /// Uniform draw for the simplex of dimension `layer` with colexicographic rank `rank`.
    #[inline]
    pub fn uniform(&self, layer: u64, rank: u128) -> f64 {
        let out = philox4x64(
            [rank as u64, (rank >> 64) as u64, self.trial, layer],
            [self.seed, STREAM_TAG],
        );
        unit_f64(out[0])
    }

    #[inline]
    pub fn bernoulli(&self, layer: u64, rank: u128, p: f64) -> bool {
        self.uniform(layer, rank) < p
    }
}

/// Derives an independent 64-bit seed for a sub-experiment (e.g. one sweep cell).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    philox4x64([stream, 0, 0, 0], [seed, DERIVE_TAG])[0]
}
