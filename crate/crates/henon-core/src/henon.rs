//! Hénon maps `(x, y) -> (y, p(y) - delta x)`: evaluation, iteration,
//! filtration radii, escape classification, and normalisation of general
//! maps to monic centered form.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sampling::SampleRng;

/// Coordinates above which iteration aborts: any orbit reaching this size
/// is certified escaping, and pressing on risks floating overflow.
pub const OVERFLOW_GUARD: f64 = 1e150;

const CERTIFICATE_SAMPLES: usize = 10_000;
const CERTIFICATE_SEED: u64 = 0x00c0_ffee;

/// A point of C^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: Complex64,
    pub y: Complex64,
}

impl Point2 {
    pub fn new(x: Complex64, y: Complex64) -> Self {
        Point2 { x, y }
    }

    pub fn from_re(x: f64, y: f64) -> Self {
        Point2::new(Complex64::new(x, 0.0), Complex64::new(y, 0.0))
    }

    /// Strict membership in `V_R^+ = { |x| < |y|, |y| > R }`.
    pub fn in_v_plus(&self, radius: f64) -> bool {
        let ny = self.y.norm();
        ny > radius && ny > self.x.norm()
    }
}

/// Hénon map with `p` monic and centered: `p(y) = y^d + sum a_i y^i`,
/// `i <= d - 2`, and `delta != 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicCenteredHenon {
    /// `a_0, ..., a_{d-2}`; index `i` is the coefficient of `y^i`.
    coeffs: Vec<Complex64>,
    delta: Complex64,
}

impl MonicCenteredHenon {
    /// `coeffs[i]` is the coefficient of `y^i`, `i = 0..=d-2`; the leading
    /// coefficient is 1 and the `y^{d-1}` coefficient 0 by construction.
    pub fn new(coeffs: Vec<Complex64>, delta: Complex64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidMap("degree must be at least 2"));
        }
        if delta == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidMap("delta must be nonzero"));
        }
        Ok(MonicCenteredHenon { coeffs, delta })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() + 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `y^i` in `p`, any `i <= d`.
    pub fn coeff(&self, i: usize) -> Complex64 {
        let d = self.degree();
        if i == d {
            Complex64::new(1.0, 0.0)
        } else if i == d - 1 {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[i]
        }
    }

    pub fn delta(&self) -> Complex64 {
        self.delta
    }

    /// Horner evaluation of `p`.
    pub fn poly(&self, y: Complex64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        acc = acc * y; // the absent y^{d-1} slot
        for i in (0..self.coeffs.len()).rev() {
            acc = acc * y + self.coeffs[i];
        }
        acc
    }

    pub fn coeff_abs_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }
}

/// Hénon map whose polynomial is not necessarily monic or centered.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralHenon {
    /// `c_0, ..., c_d` with `c_d != 0`.
    coeffs: Vec<Complex64>,
    delta: Complex64,
}

impl GeneralHenon {
    pub fn new(coeffs: Vec<Complex64>, delta: Complex64) -> Result<Self> {
        if coeffs.len() < 3 {
            return Err(Error::InvalidMap("degree must be at least 2"));
        }
        if coeffs[coeffs.len() - 1] == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidMap("leading coefficient must be nonzero"));
        }
        if delta == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidMap("delta must be nonzero"));
        }
        Ok(GeneralHenon { coeffs, delta })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn delta(&self) -> Complex64 {
        self.delta
    }

    pub fn poly(&self, y: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * y + c;
        }
        acc
    }
}

/// Invertible affine map of one variable applied diagonally to C^2,
/// `(x, y) -> (sx x + ox, sy y + oy)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineCoordMap {
    pub scale_x: Complex64,
    pub offset_x: Complex64,
    pub scale_y: Complex64,
    pub offset_y: Complex64,
}

impl AffineCoordMap {
    pub fn new(
        scale_x: Complex64,
        offset_x: Complex64,
        scale_y: Complex64,
        offset_y: Complex64,
    ) -> Result<Self> {
        if scale_x == Complex64::new(0.0, 0.0) || scale_y == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidParameter("affine scales must be nonzero"));
        }
        Ok(AffineCoordMap {
            scale_x,
            offset_x,
            scale_y,
            offset_y,
        })
    }

    pub fn identity() -> Self {
        AffineCoordMap {
            scale_x: Complex64::new(1.0, 0.0),
            offset_x: Complex64::new(0.0, 0.0),
            scale_y: Complex64::new(1.0, 0.0),
            offset_y: Complex64::new(0.0, 0.0),
        }
    }

    /// Diagonal linear map `(x, y) -> (sx x, sy y)`.
    pub fn diagonal(scale_x: Complex64, scale_y: Complex64) -> Result<Self> {
        AffineCoordMap::new(
            scale_x,
            Complex64::new(0.0, 0.0),
            scale_y,
            Complex64::new(0.0, 0.0),
        )
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        Point2::new(
            self.scale_x * p.x + self.offset_x,
            self.scale_y * p.y + self.offset_y,
        )
    }

    /// `self` after `other`: `(self ∘ other)(p) = self(other(p))`.
    pub fn compose(&self, other: &AffineCoordMap) -> AffineCoordMap {
        AffineCoordMap {
            scale_x: self.scale_x * other.scale_x,
            offset_x: self.scale_x * other.offset_x + self.offset_x,
            scale_y: self.scale_y * other.scale_y,
            offset_y: self.scale_y * other.offset_y + self.offset_y,
        }
    }

    pub fn inverse(&self) -> AffineCoordMap {
        AffineCoordMap {
            scale_x: 1.0 / self.scale_x,
            offset_x: -self.offset_x / self.scale_x,
            scale_y: 1.0 / self.scale_y,
            offset_y: -self.offset_y / self.scale_y,
        }
    }
}

/// Certified filtration radius: `V_R^+` is forward invariant for this `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiltrationRadius {
    pub value: f64,
    pub certificate_samples: usize,
}

/// Forward-orbit classification against the filtration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitClassification {
    /// The orbit enters `V_R^+` at this step (step 0 means the point
    /// itself already lies there). Points past the overflow guard are
    /// reported escaping at the step the guard trips.
    Escaping { entry_step: usize },
    /// The iteration budget ran out without reaching `V_R^+`.
    Undecided { iterations_used: usize },
}

/// One forward step `(x, y) -> (y, p(y) - delta x)`.
pub fn eval_forward(map: &MonicCenteredHenon, p: Point2) -> Point2 {
    Point2::new(p.y, map.poly(p.y) - map.delta * p.x)
}

/// One inverse step `(x, y) -> ((p(x) - y)/delta, x)`.
pub fn eval_inverse(map: &MonicCenteredHenon, p: Point2) -> Point2 {
    Point2::new((map.poly(p.x) - p.y) / map.delta, p.x)
}

fn past_guard(p: Point2) -> bool {
    // Written so NaN coordinates also count as diverged.
    !(p.x.norm() <= OVERFLOW_GUARD && p.y.norm() <= OVERFLOW_GUARD)
}

/// `n`-fold forward (`n > 0`) or inverse (`n < 0`) composition; `n = 0` is
/// the identity. Aborts with [`Error::Diverged`] when an intermediate point
/// passes the overflow guard.
pub fn iterate(map: &MonicCenteredHenon, p: Point2, n: i64) -> Result<Point2> {
    let mut cur = p;
    for step in 0..n.unsigned_abs() {
        if past_guard(cur) {
            return Err(Error::Diverged {
                step: step as usize,
            });
        }
        cur = if n > 0 {
            eval_forward(map, cur)
        } else {
            eval_inverse(map, cur)
        };
    }
    Ok(cur)
}

/// Closed-form filtration radius `R = 2 + |delta| + sum |a_i|`.
///
/// For `|y| >= R` and `|x| <= |y|` the image satisfies
/// `|p(y) - delta x| >= |y|^{d-1}(|y| - |delta|) - sum|a_i| |y|^{d-2} >= 2|y|`,
/// so `V_R^+` is forward invariant.
pub fn filtration_radius_value(map: &MonicCenteredHenon) -> f64 {
    2.0 + map.delta.norm() + map.coeff_abs_sum()
}

/// The closed-form radius together with a sampled invariance certificate.
///
/// Panics on certificate failure: that indicates an implementation bug,
/// not bad input data.
pub fn filtration_radius(map: &MonicCenteredHenon) -> FiltrationRadius {
    let r = filtration_radius_value(map);
    let mut rng = SampleRng::new(CERTIFICATE_SEED);
    for _ in 0..CERTIFICATE_SAMPLES {
        let y = rng.on_circle(r + 1.0);
        let x = rng.in_disc(r + 1.0);
        let q = eval_forward(map, Point2::new(x, y));
        assert!(
            q.y.norm() > q.x.norm() && q.y.norm() > r,
            "filtration certificate failed: image of a sampled V_R^+ point left V_R^+"
        );
    }
    FiltrationRadius {
        value: r,
        certificate_samples: CERTIFICATE_SAMPLES,
    }
}

/// Escape classification with an explicit filtration radius.
pub fn classify_point_with_radius(
    map: &MonicCenteredHenon,
    p: Point2,
    max_iter: usize,
    radius: f64,
) -> OrbitClassification {
    let mut cur = p;
    for step in 0..=max_iter {
        if past_guard(cur) || cur.in_v_plus(radius) {
            return OrbitClassification::Escaping { entry_step: step };
        }
        if step < max_iter {
            cur = eval_forward(map, cur);
        }
    }
    OrbitClassification::Undecided {
        iterations_used: max_iter,
    }
}

/// Iterates forward and reports the first entry into `V_R^+` within the
/// budget, with `R` from [`filtration_radius_value`].
pub fn classify_point(
    map: &MonicCenteredHenon,
    p: Point2,
    max_iter: usize,
) -> OrbitClassification {
    classify_point_with_radius(map, p, max_iter, filtration_radius_value(map))
}

/// Conjugates a general Hénon map to monic centered form.
///
/// Returns the normalised map together with `A(x, y) = (sigma(x), sigma(y))`
/// where `sigma(x) = u x + v`, `u` the (d-1)-th root of `1/c_d` with
/// smallest non-negative argument and `v = -c_{d-1} / (d c_d)`. Any other
/// root of `1/c_d` would give an equally valid normalisation. The constant
/// `-delta v / u` produced by the conjugation is folded into the constant
/// term of the normalised polynomial.
pub fn normalize(map: &GeneralHenon) -> (MonicCenteredHenon, AffineCoordMap) {
    let d = map.degree();
    let c = map.coeffs();
    let cd = c[d];
    let lead_inv = 1.0 / cd;
    // root with smallest non-negative argument
    let theta = {
        let t = lead_inv.arg();
        if t < 0.0 {
            t + 2.0 * core::f64::consts::PI
        } else {
            t
        }
    };
    let u = Complex64::from_polar(lead_inv.norm().powf(1.0 / (d as f64 - 1.0)), theta / (d as f64 - 1.0));
    let v = -c[d - 1] / (cd * d as f64);

    // q(y) = (p(u y + v) - v) / u, assembled by Horner with the affine input
    let mut q: Vec<Complex64> = alloc::vec![c[d]];
    for j in (0..d).rev() {
        // q <- q * (u y + v) + c_j
        let mut next = alloc::vec![Complex64::new(0.0, 0.0); q.len() + 1];
        for (k, qk) in q.iter().enumerate() {
            next[k + 1] += qk * u;
            next[k] += qk * v;
        }
        next[0] += c[j];
        q = next;
    }
    q[0] -= v;
    for qk in q.iter_mut() {
        *qk = *qk / u;
    }
    // fold the conjugation constant into the constant term
    q[0] -= map.delta() * v / u;

    let lead_res = (q[d] - Complex64::new(1.0, 0.0)).norm();
    let center_res = q[d - 1].norm();
    assert!(
        lead_res <= 1e-12 && center_res <= 1e-12,
        "normalisation lost monic/centered form (lead {lead_res:e}, center {center_res:e})"
    );
    q.truncate(d - 1);
    let normalized = MonicCenteredHenon::new(q, map.delta()).expect("normalised map is valid");
    let sigma = AffineCoordMap {
        scale_x: u,
        offset_x: v,
        scale_y: u,
        offset_y: v,
    };

    // A^{-1} ∘ H ∘ A agrees with the normalised map: spot-check on a circle,
    // which pins every coefficient of a degree-d polynomial map.
    let inv = sigma.inverse();
    for j in 0..(2 * d + 2) {
        let theta = 2.0 * core::f64::consts::PI * j as f64 / (2 * d + 2) as f64;
        let p = Point2::new(Complex64::from_polar(1.5, theta), Complex64::from_polar(2.5, -theta));
        let lhs = inv.apply(general_eval(map, sigma.apply(p)));
        let rhs = eval_forward(&normalized, p);
        let res = (lhs.x - rhs.x).norm() + (lhs.y - rhs.y).norm();
        assert!(
            res <= 1e-9,
            "normalisation conjugacy check failed (residual {res:e})"
        );
    }

    (normalized, sigma)
}

fn general_eval(map: &GeneralHenon, p: Point2) -> Point2 {
    Point2::new(p.y, map.poly(p.y) - map.delta() * p.x)
}
