use henon_core::{Complex64, MonicCenteredHenon};
use henon_core::sampling::SampleRng;

/// Random map with coefficients in the closed unit disc and
/// `1/2 <= |delta| <= 2`.
pub fn random_map(rng: &mut SampleRng, degree: usize) -> MonicCenteredHenon {
    let coeffs = (0..degree - 1).map(|_| rng.in_disc(1.0)).collect();
    let delta = rng.in_annulus(0.5, 2.0);
    MonicCenteredHenon::new(coeffs, delta).unwrap()
}

#[allow(dead_code)]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
