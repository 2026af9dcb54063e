//! Lifted dynamics on the cover `C x (C \ closed unit disc)` of the
//! escaping set: the lift `(z, zeta) -> ((delta/d) z + Q(zeta), zeta^d)`,
//! the deck transformations indexed by classes `k/d^n` of `Z[1/d]/Z`, and
//! the cocycle increments their first coordinates carry.
//!
//! Rotations are materialised from the reduced integer pair `(k, n)`,
//! never by repeated multiplication; evaluation noise comes only from `Q`.
//! `zeta^{d^l}` grows doubly exponentially, so check domains stay inside
//! `1 < |zeta| <= 2` with depth `n <= 3`.

use num_complex::Complex64;

use crate::bottcher::QPolynomial;
use crate::error::{Error, Result};
use crate::report::{residual, VerificationReport};
use crate::sampling::SampleRng;
use crate::scalar::root_of_unity;

/// A point `(z, zeta)` of the cover, `|zeta| > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverPoint {
    z: Complex64,
    zeta: Complex64,
}

impl CoverPoint {
    pub fn new(z: Complex64, zeta: Complex64) -> Result<Self> {
        if !(zeta.norm() > 1.0) {
            return Err(Error::InvalidParameter("cover point needs |zeta| > 1"));
        }
        Ok(CoverPoint { z, zeta })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn zeta(&self) -> Complex64 {
        self.zeta
    }
}

/// The class `k/d^n` of `Z[1/d]/Z` in reduced form: `0 <= k < d^n` and
/// `d` does not divide `k` unless `k = 0` (which forces `n = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DeckIndex {
    k: u64,
    n: u32,
}

impl DeckIndex {
    pub fn identity() -> Self {
        DeckIndex { k: 0, n: 0 }
    }

    /// Reduces `k/d^n` into canonical form.
    pub fn new(k: u64, n: u32, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter("deck index needs d >= 2"));
        }
        let dpow = (d as u64)
            .checked_pow(n)
            .filter(|p| *p <= (1 << 53))
            .ok_or(Error::InvalidParameter("deck denominator overflows"))?;
        let mut k = k % dpow;
        let mut n = n;
        while n > 0 && k % d as u64 == 0 {
            if k == 0 {
                n = 0;
                break;
            }
            k /= d as u64;
            n -= 1;
        }
        Ok(DeckIndex { k, n })
    }

    pub fn numerator(&self) -> u64 {
        self.k
    }

    pub fn depth(&self) -> u32 {
        self.n
    }

    pub fn is_identity(&self) -> bool {
        self.n == 0
    }

    /// Group law of `Z[1/d]/Z`.
    pub fn compose(&self, other: &DeckIndex, d: usize) -> Result<DeckIndex> {
        let n = self.n.max(other.n);
        let lift = |idx: &DeckIndex| -> Option<u64> {
            (d as u64)
                .checked_pow(n - idx.n)
                .and_then(|s| idx.k.checked_mul(s))
        };
        let (a, b) = lift(self)
            .zip(lift(other))
            .ok_or(Error::InvalidParameter("deck composition overflows"))?;
        DeckIndex::new(a + b, n, d)
    }

    /// The index of the deck transformation conjugate under the lift:
    /// `k/d^n` maps to `k/d^{n-1}` (reduced); depth 0 stays the identity.
    pub fn shift_down(&self, d: usize) -> DeckIndex {
        if self.n == 0 {
            return *self;
        }
        DeckIndex::new(self.k, self.n - 1, d).expect("reducing an already-reduced index")
    }

    /// `e^{2 pi i k / d^n}`.
    pub fn rotation(&self, d: usize) -> Complex64 {
        let denom = (d as u64).checked_pow(self.n).expect("reduced denominator fits");
        root_of_unity(self.k as i64, denom)
    }
}

/// The lifted dynamics `(z, zeta) -> ((delta/d) z + Q(zeta), zeta^d)` and
/// its deck transformations.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverDynamics {
    q: QPolynomial,
    delta: Complex64,
}

impl CoverDynamics {
    pub fn new(q: QPolynomial, delta: Complex64) -> Result<Self> {
        if delta == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidParameter("delta must be nonzero"));
        }
        Ok(CoverDynamics { q, delta })
    }

    pub fn degree(&self) -> usize {
        self.q.map_degree()
    }

    pub fn q(&self) -> &QPolynomial {
        &self.q
    }

    pub fn delta(&self) -> Complex64 {
        self.delta
    }

    /// One application of the lift; the second coordinate keeps `|zeta| > 1`.
    pub fn lift(&self, p: &CoverPoint) -> CoverPoint {
        let d = self.degree();
        CoverPoint {
            z: self.delta / d as f64 * p.z + self.q.eval(p.zeta),
            zeta: p.zeta.powu(d as u32),
        }
    }

    /// First-coordinate increment of the deck transformation at `(0, zeta)`:
    /// `(d/delta) sum_{l=0}^{n-1} (d/delta)^l [Q(zeta^{d^l}) - Q((e zeta)^{d^l})]`
    /// with `e = e^{2 pi i k / d^n}`.
    ///
    /// Each difference is evaluated in the expanded form
    /// `sum_j A_j w^j (1 - r^j)` with the rotation powers `r^j` taken from
    /// exact index arithmetic, so terms whose rotation index reduces to
    /// zero vanish identically instead of as a difference of two huge
    /// polynomial values.
    pub fn cocycle_delta(&self, zeta: Complex64, idx: &DeckIndex) -> Complex64 {
        self.cocycle_with_magnitude(zeta, idx).0
    }

    /// [`CoverDynamics::cocycle_delta`] together with the total magnitude
    /// that flowed through the sums (the triangle-inequality bound on the
    /// evaluated terms), used to condition-scale residuals.
    pub fn cocycle_with_magnitude(&self, zeta: Complex64, idx: &DeckIndex) -> (Complex64, f64) {
        let d = self.degree();
        let denom = (d as u64).pow(idx.depth()) as u128;
        let ratio = d as f64 / self.delta;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut magnitude = 0.0_f64;
        let mut weight = ratio;
        let mut w = zeta;
        let mut rot_index = idx.numerator() as u128; // k d^l mod d^n
        for l in 0..idx.depth() {
            let mut w_pow = Complex64::new(1.0, 0.0);
            let mut level = Complex64::new(0.0, 0.0);
            let mut level_mag = 0.0_f64;
            for j in 0..=d + 1 {
                let a_j = if j == d + 1 {
                    Complex64::new(1.0, 0.0)
                } else {
                    self.q.coeff_a(j)
                };
                if a_j != Complex64::new(0.0, 0.0) {
                    let r_idx = (rot_index * j as u128) % denom;
                    if r_idx != 0 {
                        let r = root_of_unity(r_idx as i64, denom as u64);
                        let term = a_j * w_pow * (Complex64::new(1.0, 0.0) - r);
                        level += term;
                        level_mag += term.norm();
                    }
                }
                if j <= d {
                    w_pow *= w;
                }
            }
            sum += weight * level;
            magnitude += weight.norm() * level_mag;
            if l + 1 < idx.depth() {
                w = w.powu(d as u32);
                rot_index = (rot_index * d as u128) % denom;
                weight *= ratio;
            }
        }
        (sum, magnitude)
    }

    /// The deck transformation `gamma_{k/d^n}`; index 0 is the identity.
    pub fn deck(&self, idx: &DeckIndex, p: &CoverPoint) -> CoverPoint {
        let e = idx.rotation(self.degree());
        CoverPoint {
            z: p.z + self.cocycle_delta(p.zeta, idx),
            zeta: e * p.zeta,
        }
    }

    /// Magnitude of the lift's first coordinate by the triangle inequality.
    fn lift_magnitude(&self, z_mag: f64, zeta: Complex64) -> f64 {
        let d = self.degree();
        self.delta.norm() / d as f64 * z_mag + self.q.magnitude(zeta.norm())
    }

    /// Residual of two first coordinates, scaled by the magnitude that
    /// flowed through the evaluations. `zeta^{d^l}` reaches `2^16` on the
    /// check domain and `Q` another power `d + 1` on top, so comparing the
    /// outputs against 1 would measure nothing but that growth.
    fn scaled_residual(a: Complex64, b: Complex64, magnitude: f64) -> f64 {
        (a - b).norm() / magnitude.max(a.norm()).max(b.norm()).max(1.0)
    }

    /// Verifies `lift ∘ gamma_{k/d^n} = gamma_{k/d^{n-1}} ∘ lift` on sampled
    /// cover points; reports the worst residual (condition-scaled in the
    /// first coordinate).
    pub fn conjugacy_check(&self, idx: &DeckIndex, samples: usize, tol: f64) -> VerificationReport {
        let mut rng = SampleRng::new(0x0dec_0de5);
        let mut worst = 0.0_f64;
        let down = idx.shift_down(self.degree());
        for _ in 0..samples {
            let p = sample_cover_point(&mut rng, 2.0);
            worst = worst.max(self.conjugacy_residual(idx, &down, &p));
        }
        let mut report = VerificationReport::new();
        report.push("deck_lift_conjugacy", worst, tol);
        report
    }

    fn conjugacy_residual(&self, idx: &DeckIndex, down: &DeckIndex, p: &CoverPoint) -> f64 {
        let deck_p = self.deck(idx, p);
        let lhs = self.lift(&deck_p);
        let lift_p = self.lift(p);
        let rhs = self.deck(down, &lift_p);

        let (_, mag_in) = self.cocycle_with_magnitude(p.zeta, idx);
        let (_, mag_out) = self.cocycle_with_magnitude(lift_p.zeta, down);
        let mag = self
            .lift_magnitude(p.z.norm() + mag_in, deck_p.zeta)
            .max(self.lift_magnitude(p.z.norm(), p.zeta) + mag_out);
        Self::scaled_residual(lhs.z, rhs.z, mag).max(residual(lhs.zeta, rhs.zeta))
    }

    /// The deck property suite: identity, group law, rotation-preservation,
    /// and lift-conjugacy, sampled at depths up to 3 on `1 < |zeta| <= 2`.
    pub fn deck_suite(&self, samples: usize, tol: f64) -> VerificationReport {
        let d = self.degree();
        let mut rng = SampleRng::new(0xdec0_5eed);
        let mut report = VerificationReport::new();

        let mut worst_id = 0.0_f64;
        let id = DeckIndex::identity();
        for _ in 0..samples {
            let p = sample_cover_point(&mut rng, 2.0);
            let q = self.deck(&id, &p);
            worst_id = worst_id
                .max(residual(q.z, p.z))
                .max(residual(q.zeta, p.zeta));
        }
        report.push("deck_identity", worst_id, 0.0);

        let mut worst_group = 0.0_f64;
        let mut worst_rot = 0.0_f64;
        let mut worst_conj = 0.0_f64;
        for n in 1..=3u32 {
            let denom = (d as u64).pow(n);
            for _ in 0..samples {
                let ka = rng.range(0.0, denom as f64) as u64 % denom;
                let kb = rng.range(0.0, denom as f64) as u64 % denom;
                let ia = DeckIndex::new(ka, n, d).unwrap();
                let ib = DeckIndex::new(kb, n, d).unwrap();
                let iab = ia.compose(&ib, d).unwrap();
                let p = sample_cover_point(&mut rng, 2.0);

                let mid = self.deck(&ib, &p);
                let lhs = self.deck(&ia, &mid);
                let rhs = self.deck(&iab, &p);
                let (_, mag_b) = self.cocycle_with_magnitude(p.zeta, &ib);
                let (_, mag_a) = self.cocycle_with_magnitude(mid.zeta, &ia);
                let (_, mag_ab) = self.cocycle_with_magnitude(p.zeta, &iab);
                let mag = (p.z.norm() + mag_a + mag_b).max(p.z.norm() + mag_ab);
                worst_group = worst_group
                    .max(Self::scaled_residual(lhs.z, rhs.z, mag))
                    .max(residual(lhs.zeta, rhs.zeta));

                let q = self.deck(&ia, &p);
                worst_rot = worst_rot.max((q.zeta.norm() - p.zeta.norm()).abs());
                let e = ia.rotation(d);
                worst_rot = worst_rot.max(residual(q.zeta, e * p.zeta));

                worst_conj = worst_conj.max(self.conjugacy_residual(&ia, &ia.shift_down(d), &p));
            }
        }
        report.push("deck_group_law", worst_group, tol);
        report.push("deck_rotation_preserved", worst_rot, tol);
        report.push("deck_lift_conjugacy", worst_conj, tol);
        report
    }
}

pub(crate) fn sample_cover_point(rng: &mut SampleRng, zeta_max: f64) -> CoverPoint {
    let zeta = rng.in_annulus(1.0 + 1e-9, zeta_max);
    let z = rng.in_disc(2.0);
    CoverPoint { z, zeta }
}
