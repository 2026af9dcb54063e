//! Root-of-unity parameter triples, partner-map construction, and the
//! verification suites for the coefficient relations the partner
//! construction must satisfy.
//!
//! A degree-`d` map has `(d^2 - 1)(d - 1)` parameter triples
//! `(alpha, beta, gamma)` with `alpha^{d^2-1} = 1`, `beta = alpha^{d+1}`
//! (hence `beta^{d-1} = 1`) and `gamma^{d-1} = 1`. Parameters are stored
//! as integer indices; complex values are materialised only at evaluation
//! boundaries, so all parameter identities are exact.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::bottcher::{q_polynomial_with, q_tilde, QPolynomial};
use crate::cover::{CoverDynamics, CoverPoint, DeckIndex};
use crate::error::{Error, Result};
use crate::henon::{AffineCoordMap, MonicCenteredHenon};
use crate::report::{residual, VerificationReport};
use crate::sampling::SampleRng;
use crate::scalar::{root_of_unity, Precision};
use crate::series::TailSeries;

/// Exact root-of-unity triple: `alpha = e^{2 pi i a/(d^2-1)}`,
/// `gamma = e^{2 pi i g/(d-1)}`, `beta = alpha^{d+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RigidityParams {
    d: usize,
    alpha_index: u64,
    gamma_index: u64,
}

impl RigidityParams {
    pub fn new(d: usize, alpha_index: u64, gamma_index: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter("parameters need d >= 2"));
        }
        let am = (d * d - 1) as u64;
        let gm = (d - 1) as u64;
        Ok(RigidityParams {
            d,
            alpha_index: alpha_index % am,
            gamma_index: if gm == 0 { 0 } else { gamma_index % gm },
        })
    }

    pub fn identity(d: usize) -> Result<Self> {
        RigidityParams::new(d, 0, 0)
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn alpha_index(&self) -> u64 {
        self.alpha_index
    }

    pub fn gamma_index(&self) -> u64 {
        self.gamma_index
    }

    pub fn beta_index(&self) -> u64 {
        (self.alpha_index * (self.d as u64 + 1)) % (self.d * self.d - 1) as u64
    }

    /// `alpha^e`, exact in the index.
    pub fn alpha_pow(&self, e: i64) -> Complex64 {
        let m = (self.d * self.d - 1) as u64;
        root_of_unity(self.alpha_index as i64 * e, m)
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha_pow(1)
    }

    pub fn beta(&self) -> Complex64 {
        self.alpha_pow(self.d as i64 + 1)
    }

    pub fn gamma(&self) -> Complex64 {
        if self.d == 2 {
            Complex64::new(1.0, 0.0)
        } else {
            root_of_unity(self.gamma_index as i64, (self.d - 1) as u64)
        }
    }

    pub fn has_equal_jacobian(&self) -> bool {
        self.gamma_index == 0
    }

    pub fn is_identity(&self) -> bool {
        self.alpha_index == 0 && self.gamma_index == 0
    }

    /// Index-level product of two parameter triples of the same degree.
    pub fn compose(&self, other: &RigidityParams) -> Result<RigidityParams> {
        if self.d != other.d {
            return Err(Error::InvalidParameter("parameter degrees differ"));
        }
        RigidityParams::new(
            self.d,
            self.alpha_index + other.alpha_index,
            self.gamma_index + other.gamma_index,
        )
    }
}

/// All `(d^2 - 1)(d - 1)` parameter triples for degree `d`.
pub fn enumerate_rigidity_params(d: usize) -> Vec<RigidityParams> {
    let mut out = Vec::new();
    for a in 0..(d * d - 1) as u64 {
        for g in 0..(d - 1) as u64 {
            out.push(RigidityParams {
                d,
                alpha_index: a,
                gamma_index: g,
            });
        }
    }
    out
}

/// The partner map `F` with `p_F(y) = (beta/alpha) p_H(y/alpha)` and
/// `delta_F = gamma delta_H`; equivalently `a^F_{d-k} = alpha^k a^H_{d-k}`.
/// Monic and centered by construction: the leading coefficient picks up
/// `beta alpha^{-(d+1)} = 1`.
pub fn construct_partner(h: &MonicCenteredHenon, params: &RigidityParams) -> MonicCenteredHenon {
    let d = h.degree();
    debug_assert_eq!(d, params.degree());
    let coeffs = h
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &a)| params.alpha_pow((d - i) as i64) * a)
        .collect();
    MonicCenteredHenon::new(coeffs, params.gamma() * h.delta())
        .expect("partner of a valid map is valid")
}

/// The diagonal factors of the composition identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineFactors {
    /// `L(x, y) = (gamma^{-1} beta x, beta y)`
    pub l: AffineCoordMap,
    /// `B(x, y) = (gamma alpha beta^{-1} x, alpha^{-1} y)`
    pub b: AffineCoordMap,
    /// `A = L ∘ B = (alpha x, beta alpha^{-1} y)`
    pub a: AffineCoordMap,
}

/// Materialises `L`, `B` and `A = L ∘ B`. The identity `A = L ∘ B` (with
/// `mu_1 = gamma^{-1} beta`, `mu_2 = beta`) is asserted at the exact index
/// level.
pub fn affine_factors(params: &RigidityParams) -> AffineFactors {
    let d = params.degree() as i64;
    let m = (params.degree() * params.degree() - 1) as u64;
    let a_idx = params.alpha_index() as i64;
    // gamma as a (d^2-1)-th root: index g (d+1)
    let g_idx = params.gamma_index() as i64 * (d + 1);
    let root = |i: i64| root_of_unity(i, m);

    let b_x = g_idx + a_idx - a_idx * (d + 1);
    let b_y = -a_idx;
    let l_x = -g_idx + a_idx * (d + 1);
    let l_y = a_idx * (d + 1);
    let a_x = a_idx;
    let a_y = a_idx * d;

    // A = L ∘ B, exactly in the indices
    let rm = |i: i64| i.rem_euclid(m as i64);
    assert_eq!(rm(l_x + b_x), rm(a_x));
    assert_eq!(rm(l_y + b_y), rm(a_y));
    // A_i = mu_i B_i with mu_1 = gamma^{-1} beta, mu_2 = beta
    let mu1 = -g_idx + a_idx * (d + 1);
    let mu2 = a_idx * (d + 1);
    assert_eq!(rm(mu1 + b_x), rm(a_x));
    assert_eq!(rm(mu2 + b_y), rm(a_y));

    AffineFactors {
        l: AffineCoordMap::diagonal(root(l_x), root(l_y)).expect("roots of unity are nonzero"),
        b: AffineCoordMap::diagonal(root(b_x), root(b_y)).expect("roots of unity are nonzero"),
        a: AffineCoordMap::diagonal(root(a_x), root(a_y)).expect("roots of unity are nonzero"),
    }
}

/// Expands `L ∘ B ∘ H ∘ B` symbolically (diagonal maps compose with `p` by
/// coefficient scaling) and compares every coefficient with `F`.
pub fn verify_composition_identity(
    h: &MonicCenteredHenon,
    f: &MonicCenteredHenon,
    params: &RigidityParams,
) -> VerificationReport {
    let d = h.degree();
    let factors = affine_factors(params);
    let bx = factors.b.scale_x;
    let by = factors.b.scale_y;
    let ly = factors.l.scale_y;
    let lx = factors.l.scale_x;

    // L ∘ B ∘ H ∘ B (x, y) = (lx bx by y, ly by p_H(by y) - ly by delta bx x)
    let mut worst = residual(lx * bx * by, Complex64::new(1.0, 0.0));
    let lead = ly * by.powu(d as u32 + 1);
    worst = worst.max(residual(lead, Complex64::new(1.0, 0.0)));
    for (i, &a) in h.coeffs().iter().enumerate() {
        let comp = ly * by.powu(i as u32 + 1) * a;
        worst = worst.max(residual(comp, f.coeffs()[i]));
    }
    let delta_comp = ly * by * h.delta() * bx;
    worst = worst.max(residual(delta_comp, f.delta()));

    let mut report = VerificationReport::new();
    report.push("composition_identity", worst, 1e-12);
    report
}

fn require_equal_jacobian(params: &RigidityParams) -> Result<()> {
    if params.has_equal_jacobian() {
        Ok(())
    } else {
        Err(Error::UnequalJacobians {
            gamma_index: params.gamma_index(),
        })
    }
}

/// Checks `A^H_{d-k} = alpha^{-(k+1)} A^F_{d-k}` for `1 <= k <= d-1`.
/// The constant terms are deliberately not compared: no relation between
/// them follows from the cocycle comparison. Requires equal Jacobians.
pub fn verify_q_relation(
    h: &MonicCenteredHenon,
    f: &MonicCenteredHenon,
    params: &RigidityParams,
    order: usize,
    tol: f64,
    precision: Precision,
) -> Result<VerificationReport> {
    require_equal_jacobian(params)?;
    let d = h.degree();
    let qh = q_polynomial_with(h, order, precision)?;
    let qf = q_polynomial_with(f, order, precision)?;
    let mut worst = 0.0_f64;
    for k in 1..d {
        let scale = params.alpha_pow(-(k as i64 + 1));
        worst = worst.max(residual(qh.coeff_a(d - k), scale * qf.coeff_a(d - k)));
    }
    let mut report = VerificationReport::new();
    report.push("q_coefficient_relation", worst, tol);
    Ok(report)
}

/// Checks the tail-coefficient relations `D_k^H = alpha^{-(k+1)} D_k^F` and
/// `L_k^H = alpha^{-(k+1)} L_k^F` for `1 <= k <= d-1`, and the vanishing of
/// `alpha zeta_H(y) - zeta_F(alpha y)` through order `d-1`. Requires equal
/// Jacobians.
pub fn verify_series_relations(
    h: &MonicCenteredHenon,
    f: &MonicCenteredHenon,
    params: &RigidityParams,
    order: usize,
    tol: f64,
    precision: Precision,
) -> Result<VerificationReport> {
    require_equal_jacobian(params)?;
    let d = h.degree();
    if order < d - 1 {
        return Err(Error::InsufficientOrder {
            required: d - 1,
            available: order,
        });
    }
    let zh = crate::bottcher::zeta_series_with(h, order, precision)?;
    let zf = crate::bottcher::zeta_series_with(f, order, precision)?;
    let yh = zh.revert(order)?;
    let yf = zf.revert(order)?;
    let alpha = params.alpha();

    let mut worst_d = 0.0_f64;
    let mut worst_l = 0.0_f64;
    for k in 1..d {
        let scale = params.alpha_pow(-(k as i64 + 1));
        worst_d = worst_d.max(residual(yh.coeff(k), scale * yf.coeff(k)));
        worst_l = worst_l.max(residual(zh.coeff(k), scale * zf.coeff(k)));
    }

    // alpha zeta_H(y) and zeta_F(alpha y) share the leading term alpha y;
    // their tails must agree through order d-1
    let scaled_h = zh.scale_values(alpha);
    let scaled_f = zf.scale_argument(alpha);
    let mut worst_z = 0.0_f64;
    for k in 1..d {
        worst_z = worst_z.max(residual(scaled_h[k - 1], scaled_f[k - 1]));
    }

    let mut report = VerificationReport::new();
    report.push("series_d_relation", worst_d, tol);
    report.push("series_l_relation", worst_l, tol);
    report.push("series_scaled_zeta_vanishing", worst_z, tol);
    Ok(report)
}

/// Sample radius for the lifted-iterate check; `zeta^{d^{d-1}}` must stay
/// inside double range.
fn lift_sample_radius(d: usize) -> f64 {
    match d {
        2 | 3 | 4 => 1.3,
        5 => 1.05,
        _ => 1.01,
    }
}

fn lift_closed_form_residual(map: &MonicCenteredHenon, q: &QPolynomial) -> f64 {
    let d = map.degree();
    let cov = CoverDynamics::new(q.clone(), map.delta()).expect("delta nonzero");
    let qt = q_tilde(q, map.delta());
    let ratio = map.delta() / d as f64;
    let mut weight = Complex64::new(1.0, 0.0);
    for _ in 0..(d - 1) {
        weight *= ratio;
    }
    let top = (d as u64).pow(d as u32 - 1);

    let mut rng = SampleRng::new(0x11f7_5eed);
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let zeta = rng.in_annulus(1.0 + 1e-9, lift_sample_radius(d));
        let z = rng.in_disc(2.0);
        let mut p = CoverPoint::new(z, zeta).expect("sampled |zeta| > 1");
        for _ in 0..(d - 1) {
            p = cov.lift(&p);
        }
        let z_closed = weight * z + qt.eval(zeta);
        let zeta_closed = pow_u64(zeta, top);
        // scaled by the magnitude flowing through the weighted Q sums
        let mag = (weight.norm() * z.norm() + qt.magnitude(zeta.norm()))
            .max(p.z().norm())
            .max(z_closed.norm())
            .max(1.0);
        worst = worst
            .max((p.z() - z_closed).norm() / mag)
            .max(residual(p.zeta(), zeta_closed));
    }
    worst
}

fn pow_u64(z: Complex64, mut e: u64) -> Complex64 {
    let mut base = z;
    let mut acc = Complex64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        e >>= 1;
        if e > 0 {
            base *= base;
        }
    }
    acc
}

/// The unequal-Jacobian suite:
/// (i) `delta_F^{d-1} = delta_H^{d-1}`;
/// (ii) existence of a `(d^2-1)`-th root of unity `alpha~` with
/// `A^H_{d-k} = alpha~^{-(k+1)} A^F_{d-k}` for `1 <= k <= d-1`, found by
/// exhaustive search over all candidates;
/// (iii) the `(d-1)`-fold lifted iterate of each map matches its closed
/// form `((delta/d)^{d-1} z + Q~(zeta), zeta^{d^{d-1}})`.
pub fn verify_unequal_jacobian(
    h: &MonicCenteredHenon,
    f: &MonicCenteredHenon,
    params: &RigidityParams,
    tol: f64,
    precision: Precision,
) -> Result<VerificationReport> {
    let d = h.degree();
    let _ = params;
    let mut report = VerificationReport::new();

    let dh = pow_u64(h.delta(), d as u64 - 1);
    let df = pow_u64(f.delta(), d as u64 - 1);
    report.push("jacobian_power", residual(dh, df), 1e-12);

    let qh = q_polynomial_with(h, d, precision)?;
    let qf = q_polynomial_with(f, d, precision)?;
    let m = (d * d - 1) as u64;
    let mut best = f64::INFINITY;
    for t in 0..m {
        let mut worst = 0.0_f64;
        for k in 1..d {
            let scale = root_of_unity(-(t as i64) * (k as i64 + 1), m);
            worst = worst.max(residual(qh.coeff_a(d - k), scale * qf.coeff_a(d - k)));
        }
        best = best.min(worst);
    }
    report.push("alpha_tilde_search", best, tol);

    let worst_lift = lift_closed_form_residual(h, &qh).max(lift_closed_form_residual(f, &qf));
    report.push("lift_iterate_closed_form", worst_lift, 1e-10);
    Ok(report)
}

/// Samples `zeta` on the circle `|zeta| = 1.5` and checks
/// `beta Delta_H(zeta, e zeta) = Delta_F(alpha zeta, e alpha zeta)` with
/// `e = e^{2 pi i / d}`, via the raw cocycle increments of the index `1/d`
/// deck transformation. Requires equal Jacobians.
pub fn verify_cocycle_relation(
    h: &MonicCenteredHenon,
    f: &MonicCenteredHenon,
    params: &RigidityParams,
    samples: usize,
    tol: f64,
    precision: Precision,
) -> Result<VerificationReport> {
    require_equal_jacobian(params)?;
    let d = h.degree();
    let qh = q_polynomial_with(h, d, precision)?;
    let qf = q_polynomial_with(f, d, precision)?;
    let cov_h = CoverDynamics::new(qh, h.delta())?;
    let cov_f = CoverDynamics::new(qf, f.delta())?;
    let idx = DeckIndex::new(1, 1, d)?;
    let alpha = params.alpha();
    let beta = params.beta();

    let mut worst = 0.0_f64;
    for j in 0..samples.max(1) {
        let zeta = Complex64::from_polar(
            1.5,
            2.0 * core::f64::consts::PI * j as f64 / samples.max(1) as f64,
        );
        let lhs = beta * cov_h.cocycle_delta(zeta, &idx);
        let rhs = cov_f.cocycle_delta(alpha * zeta, &idx);
        worst = worst.max(residual(lhs, rhs));
    }
    let mut report = VerificationReport::new();
    report.push("cocycle_relation", worst, tol);
    Ok(report)
}

/// Options for [`full_suite`].
#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub order: usize,
    pub tol: f64,
    pub samples: usize,
    pub precision: Precision,
}

impl SuiteOptions {
    pub fn for_degree(d: usize) -> Self {
        SuiteOptions {
            order: 2 * d,
            tol: 1e-9,
            samples: 64,
            precision: Precision::Double,
        }
    }
}

/// Runs every suite applicable to the pair: the composition identity and
/// the unequal-Jacobian checks always, the Q/series/cocycle relations when
/// the Jacobians agree (`gamma` index 0).
pub fn full_suite(
    h: &MonicCenteredHenon,
    f: &MonicCenteredHenon,
    params: &RigidityParams,
    opts: &SuiteOptions,
) -> Result<VerificationReport> {
    let mut report = verify_composition_identity(h, f, params);
    report.merge(verify_unequal_jacobian(h, f, params, opts.tol.max(1e-12), opts.precision)?);
    if params.has_equal_jacobian() {
        report.merge(verify_q_relation(h, f, params, opts.order, opts.tol, opts.precision)?);
        report.merge(verify_series_relations(
            h,
            f,
            params,
            opts.order,
            opts.tol,
            opts.precision,
        )?);
        report.merge(verify_cocycle_relation(
            h,
            f,
            params,
            opts.samples,
            opts.tol,
            opts.precision,
        )?);
    }
    Ok(report)
}

/// Scaled-coordinate view of a tail series used by the relation checks;
/// re-exported here for the CLI.
pub fn scaled_zeta_difference(
    zeta_h: &TailSeries,
    zeta_f: &TailSeries,
    alpha: Complex64,
    through: usize,
) -> Vec<Complex64> {
    let a = zeta_h.scale_values(alpha);
    let b = zeta_f.scale_argument(alpha);
    (0..through).map(|k| a[k] - b[k]).collect()
}
