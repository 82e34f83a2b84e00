//! Deterministic, splittable pseudo-random streams.
//!
//! Every simulation iteration owns its own [`RngStream`], derived O(1) from
//! a `(master_seed, stream_id)` pair, so results are a pure function of the
//! seed and configuration no matter how work is scheduled across threads.
//! SplitMix64 underneath; not cryptographic.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const STREAM_SALT: u64 = 0x6A09_E667_F3BC_C909;
const INV_2_53: f64 = 1.0 / (1u64 << 53) as f64;

/// SplitMix64 finalizer: full-avalanche 64-bit mix.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One independent random stream. Identical `(master_seed, stream_id)`
/// pairs replay the identical variate sequence on every run of a build.
#[derive(Debug, Clone)]
pub struct RngStream {
    state: u64,
    stream_id: u64,
    spare_normal: Option<f64>,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        // Hash seed and id separately before combining so that nearby ids
        // land far apart in SplitMix64's counter sequence.
        let state = mix64(
            mix64(master_seed ^ GOLDEN_GAMMA) ^ mix64(stream_id.wrapping_mul(GOLDEN_GAMMA) ^ STREAM_SALT),
        );
        RngStream {
            state,
            stream_id,
            spare_normal: None,
        }
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform variate in [0, 1) with 53 bits of precision.
    #[inline]
    pub fn next_uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * INV_2_53
    }

    /// Standard normal variate via the Box-Muller transform. The sine
    /// partner of each pair is cached, so normals cost one transform per two.
    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        // u1 in (0, 1] keeps the log finite.
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * INV_2_53;
        let u2 = self.next_uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        self.spare_normal = Some(r * s);
        r * c
    }
}
