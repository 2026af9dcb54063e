//! Deterministic sample generation for runtime certificates and test suites.
//!
//! A fixed-algorithm generator (ChaCha8) keeps every sampled certificate
//! reproducible across platforms and thread counts.

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub struct SampleRng(ChaCha8Rng);

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        SampleRng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn angle(&mut self) -> f64 {
        2.0 * core::f64::consts::PI * self.unit()
    }

    pub fn on_circle(&mut self, radius: f64) -> Complex64 {
        Complex64::from_polar(radius, self.angle())
    }

    /// Area-uniform in the closed disc of the given radius.
    pub fn in_disc(&mut self, radius: f64) -> Complex64 {
        Complex64::from_polar(radius * self.unit().sqrt(), self.angle())
    }

    /// Modulus uniform in `(r_lo, r_hi]`.
    pub fn in_annulus(&mut self, r_lo: f64, r_hi: f64) -> Complex64 {
        let r = r_hi - (r_hi - r_lo) * self.unit();
        Complex64::from_polar(r, self.angle())
    }
}
