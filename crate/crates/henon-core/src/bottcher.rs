//! Böttcher and Green functions, numerically with error control, and the
//! Laurent-tail data they generate: the coordinate `zeta(0, y)` with
//! coefficients `L_k`, its inverse `y(0, zeta)` with coefficients `D_k`,
//! the monic centered polynomial `Q` of degree `d + 1`, and the weighted
//! sum `Q~` governing the `(d-1)`-fold lifted iterate.
//!
//! The series computation follows the exact orbit recurrence
//! `y_{n+1} = p(y_n) - delta x_n` (with `x_0 = 0`), telescoping
//! `phi(0, y) = y * prod_n (y_{n+1} / y_n^d)^{1/d^{n+1}}` as unit series in
//! `t = 1/y`. Factor `n` first deviates from 1 at order
//! `min(2 d^n, d^{n+1} - d^{n-1})`, so only about `log_d N` factors ever
//! matter.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::henon::{filtration_radius_value, MonicCenteredHenon, Point2};
use crate::scalar::{Coeff, ComplexDd, Precision};
use crate::series::{TailSeries, UnitSeries};

/// Green's function value with a geometric-tail error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenValue {
    pub value: f64,
    pub error_bound: f64,
    /// The constant `L = log(2 + sum |a_i| + |delta|)` of the logarithmic
    /// growth sandwich `log+|y| - L <= G <= log+|y| + L` on `V_R^+`.
    pub growth_constant: f64,
}

/// The monic centered polynomial `Q(z) = z^{d+1} + A_{d-1} z^{d-1} + ... + A_0`.
///
/// The leading coefficient 1 and the vanishing `z^d` coefficient are
/// implicit; only `A_{d-1}, ..., A_0` are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct QPolynomial {
    coeffs: Vec<Complex64>,
}

impl QPolynomial {
    /// Builds from `A_{d-1}, ..., A_1, A_0` (highest first, length `d`).
    pub fn from_lower_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("Q needs degree at least 3"));
        }
        Ok(QPolynomial { coeffs })
    }

    /// Degree `d` of the Hénon map this `Q` belongs to.
    pub fn map_degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Degree of `Q` itself, `d + 1`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() + 1
    }

    /// `A_k` for `0 <= k <= d` (`A_d` is identically zero).
    pub fn coeff_a(&self, k: usize) -> Complex64 {
        let d = self.map_degree();
        assert!(k <= d);
        if k == d {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[d - 1 - k]
        }
    }

    /// Stored coefficients `A_{d-1}, ..., A_0`.
    pub fn lower_coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        acc = acc * z; // vanishing z^d slot
        for c in self.coeffs.iter() {
            acc = acc * z + c;
        }
        acc
    }

    /// Triangle-inequality bound `r^{d+1} + sum |A_k| r^k` on `|Q|` over
    /// `|z| = r`; the conditioning scale of an evaluation.
    pub fn magnitude(&self, r: f64) -> f64 {
        let mut acc = 1.0_f64;
        acc *= r;
        for c in self.coeffs.iter() {
            acc = acc * r + c.norm();
        }
        acc
    }
}

/// Dense polynomial, ascending coefficients; result type of [`q_tilde`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensePoly {
    coeffs: Vec<Complex64>,
}

impl DensePoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        DensePoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Triangle-inequality bound `sum |c_k| r^k`.
    pub fn magnitude(&self, r: f64) -> f64 {
        let mut acc = 0.0_f64;
        for c in self.coeffs.iter().rev() {
            acc = acc * r + c.norm();
        }
        acc
    }
}

/// Radius guarding the numeric Böttcher product:
/// `R' = max(R, 10 (1 + sum |a_i| + |delta|))`. On `V_{R'}^+` every
/// telescoping factor stays within 1/10 of 1, so principal roots are
/// unambiguous.
pub fn bottcher_radius(map: &MonicCenteredHenon) -> f64 {
    let r = filtration_radius_value(map);
    r.max(10.0 * (1.0 + map.coeff_abs_sum() + map.delta().norm()))
}

const PRODUCT_GUARD: f64 = 1e40;
const MAX_PRODUCT_FACTORS: usize = 64;

/// Telescoping product `phi(x, y) = y * prod (y_{n+1}/y_n^d)^{1/d^{n+1}}`
/// with principal branches, terminated when the next factor differs from 1
/// by less than `precision`.
pub fn bottcher_numeric(
    map: &MonicCenteredHenon,
    p: Point2,
    precision: f64,
) -> Result<Complex64> {
    let rp = bottcher_radius(map);
    if !p.in_v_plus(rp) {
        return Err(Error::OutsideBottcherDomain {
            required_radius: rp,
        });
    }
    let precision = precision.max(1e-16);
    let d = map.degree();
    // On V_{R'}^+ every factor obeys |w_n - 1| <= scale / |y_n|, and |y_n|
    // at least doubles per step, so the bound below covers the whole
    // remaining product. A factor can be accidentally 1 (for p = y^d the
    // first one always is), so the observed deviation alone cannot
    // terminate the product.
    let scale = map.coeff_abs_sum() + map.delta().norm();
    let mut x = p.x;
    let mut y = p.y;
    let mut phi = y;
    let mut root_exp = d as f64;
    for _ in 0..MAX_PRODUCT_FACTORS {
        if y.norm() > PRODUCT_GUARD {
            break; // remaining factors differ from 1 by < 1e-39
        }
        let yd = y.powu(d as u32);
        let y_next = map.poly(y) - map.delta() * x;
        let w = y_next / yd;
        let factor = (w.ln() / root_exp).exp();
        phi *= factor;
        x = y;
        y = y_next;
        root_exp *= d as f64;
        let remaining = 4.0 * scale / (y.norm() * root_exp);
        if remaining < precision {
            break;
        }
    }
    debug_assert!(phi.norm() > 1.0);
    Ok(phi)
}

/// Green's function `lim d^{-n} log|y_n|`, evaluated once the orbit enters
/// `V_R^+` and refined until successive estimates differ by less than
/// `tol (d-1)/d`; the reported error bound is the geometric tail
/// `(last difference) * d/(d-1)`. Returns value 0 with error 0 when the
/// budget expires without escape.
pub fn green_numeric(
    map: &MonicCenteredHenon,
    p: Point2,
    tol: f64,
    max_iter: usize,
) -> GreenValue {
    let r = filtration_radius_value(map);
    let growth_constant = r.ln();
    let d = map.degree() as f64;

    let mut cur = p;
    let mut entry = None;
    for step in 0..=max_iter {
        let esc = !(cur.x.norm() <= crate::henon::OVERFLOW_GUARD
            && cur.y.norm() <= crate::henon::OVERFLOW_GUARD);
        if esc || cur.in_v_plus(r) {
            entry = Some(step);
            break;
        }
        if step < max_iter {
            cur = crate::henon::eval_forward(map, cur);
        }
    }
    let Some(n0) = entry else {
        return GreenValue {
            value: 0.0,
            error_bound: 0.0,
            growth_constant,
        };
    };

    let mut pw = d.powi(n0 as i32);
    let mut value = cur.y.norm().ln() / pw;
    let mut error_bound = 0.0;
    // |G_{n+1} - G_n| = |log|w_n|| / d^{n+1} <= 2 scale / (|y_n| d^{n+1});
    // a difference can be accidentally zero, so the structural bound joins
    // the observed one in the termination test.
    let scale = map.coeff_abs_sum() + map.delta().norm();
    for _ in 0..300 {
        if cur.y.norm() > PRODUCT_GUARD {
            error_bound = 2.0 * scale / (cur.y.norm() * pw) * d / (d - 1.0);
            break;
        }
        let yd = cur.y.powu(map.degree() as u32);
        let y_next = map.poly(cur.y) - map.delta() * cur.x;
        let w = y_next / yd;
        pw *= d;
        let diff = (w.norm().ln() / pw).abs();
        value += w.norm().ln() / pw;
        cur = Point2::new(cur.y, y_next);
        let bound = diff.max(2.0 * scale / (cur.y.norm() * pw));
        error_bound = bound * d / (d - 1.0);
        if bound < tol * (d - 1.0) / d {
            break;
        }
    }

    if p.in_v_plus(r) {
        let logp = p.y.norm().ln().max(0.0);
        debug_assert!(
            value >= logp - growth_constant - error_bound - 1e-9
                && value <= logp + growth_constant + error_bound + 1e-9,
            "Green value escaped the logarithmic growth sandwich"
        );
    }

    GreenValue {
        value,
        error_bound,
        growth_constant,
    }
}

fn checked_d_pow(d: usize, e: u32) -> Option<u64> {
    (d as u64).checked_pow(e)
}

fn zeta_series_in<C: Coeff>(map: &MonicCenteredHenon, order: usize) -> Result<TailSeries<C>> {
    if order == 0 {
        return Err(Error::InsufficientOrder {
            required: 1,
            available: 0,
        });
    }
    let d = map.degree();
    let m = order + 1; // working order in t = 1/y
    let delta = C::from_c64(map.delta());
    let a: Vec<C> = map.coeffs().iter().map(|&c| C::from_c64(c)).collect();

    let mut product = UnitSeries::<C>::one(m);
    let mut v_prev = UnitSeries::<C>::one(m); // v_{n-1}
    let mut v_cur = UnitSeries::<C>::one(m); // v_n, with y_n = y^{d^n} v_n(1/y)
    let mut n: u32 = 0;
    loop {
        let threshold = if n == 0 {
            2u64
        } else {
            let two_dn = checked_d_pow(d, n).map(|p| 2 * p);
            let delta_ord = checked_d_pow(d, n + 1)
                .zip(checked_d_pow(d, n - 1))
                .map(|(hi, lo)| hi - lo);
            match (two_dn, delta_ord) {
                (Some(x), Some(y)) => x.min(y),
                _ => break,
            }
        };
        if threshold > m as u64 {
            break;
        }

        let dn = checked_d_pow(d, n).expect("factor exponent fits u64");
        let dn1 = checked_d_pow(d, n + 1).expect("factor exponent fits u64");
        let vd = v_cur.pow(d as u64, m)?;
        let w_inv = vd.reciprocal(m)?;

        // u_n = 1 + sum_i a_i t^{d^{n+1} - i d^n} v_n^i / v_n^d
        //         - delta t^{d^{n+1} - d^{n-1}} v_{n-1} / v_n^d   (n >= 1)
        let mut tail = vec![C::zero(); m];
        let mut v_pow = w_inv.clone(); // v_n^i * w_inv, starting at i = 0
        for (i, &ai) in a.iter().enumerate() {
            let e = dn1 - (i as u64) * dn;
            if e <= m as u64 && !ai.is_zero() {
                let e = e as usize;
                tail[e - 1] = tail[e - 1] + ai;
                for j in 1..=(m - e) {
                    tail[e + j - 1] = tail[e + j - 1] + ai * v_pow.coeff(j);
                }
            }
            if i + 1 < a.len() {
                v_pow = v_pow.mul(&v_cur, m)?;
            }
        }
        if n >= 1 {
            let e = dn1 - checked_d_pow(d, n - 1).expect("exponent fits");
            if e <= m as u64 {
                let q = v_prev.mul(&w_inv, m)?;
                let e = e as usize;
                tail[e - 1] = tail[e - 1] - delta;
                for j in 1..=(m - e) {
                    tail[e + j - 1] = tail[e + j - 1] - delta * q.coeff(j);
                }
            }
        }
        let u_n = UnitSeries::new(tail);
        let root = u_n.principal_root(dn1, m)?;
        product = product.mul(&root, m)?;
        let v_next = vd.mul(&u_n, m)?;
        v_prev = v_cur;
        v_cur = v_next;
        n += 1;
    }

    TailSeries::from_unit_form(&product)
}

/// Coefficients `L_1, ..., L_N` of the Böttcher coordinate
/// `zeta(0, y) = y + L_1/y + L_2/y^2 + ...`.
pub fn zeta_series(map: &MonicCenteredHenon, order: usize) -> Result<TailSeries> {
    zeta_series_in::<Complex64>(map, order)
}

/// [`zeta_series`] at a chosen coefficient precision.
pub fn zeta_series_with(
    map: &MonicCenteredHenon,
    order: usize,
    precision: Precision,
) -> Result<TailSeries> {
    match precision {
        Precision::Double => zeta_series_in::<Complex64>(map, order),
        Precision::Extended => {
            Ok(zeta_series_in::<ComplexDd>(map, order)?.map_coeffs(|c| c.to_c64()))
        }
    }
}

/// Coefficients `D_1, ..., D_N` of the inverse coordinate
/// `y(0, zeta) = zeta + D_1/zeta + D_2/zeta^2 + ...`; the reversion of
/// [`zeta_series`]. The representation carries no constant term, matching
/// the vanishing `D_0`.
pub fn y_series(map: &MonicCenteredHenon, order: usize) -> Result<TailSeries> {
    zeta_series(map, order)?.revert(order)
}

pub fn y_series_with(
    map: &MonicCenteredHenon,
    order: usize,
    precision: Precision,
) -> Result<TailSeries> {
    match precision {
        Precision::Double => y_series(map, order),
        Precision::Extended => Ok(zeta_series_in::<ComplexDd>(map, order)?
            .revert(order)?
            .map_coeffs(|c| c.to_c64())),
    }
}

/// `Q(z) = z^{d+1} + D_1 z^{d-1} + ... + D_{d-1} z + D_d`, the polynomial
/// part of `z^d y(0, z)`. Requires `order >= d`; the extracted coefficients
/// do not depend on the extra order.
pub fn q_polynomial(map: &MonicCenteredHenon, order: usize) -> Result<QPolynomial> {
    q_polynomial_with(map, order, Precision::Double)
}

pub fn q_polynomial_with(
    map: &MonicCenteredHenon,
    order: usize,
    precision: Precision,
) -> Result<QPolynomial> {
    let d = map.degree();
    if order < d {
        return Err(Error::InsufficientOrder {
            required: d,
            available: order,
        });
    }
    let ys = y_series_with(map, order, precision)?;
    QPolynomial::from_lower_coeffs((1..=d).map(|k| ys.coeff(k)).collect())
}

/// The weighted sum
/// `Q~(z) = (delta/d)^{d-2} Q(z) + (delta/d)^{d-3} Q(z^d) + ... + Q(z^{d^{d-2}})`,
/// expanded as a dense polynomial of degree `(d+1) d^{d-2}`. Composing the
/// lifted map `d - 1` times gives `((delta/d)^{d-1} z + Q~(zeta), zeta^{d^{d-1}})`.
pub fn q_tilde(q: &QPolynomial, delta: Complex64) -> DensePoly {
    let d = q.map_degree();
    let top = checked_d_pow(d, (d - 2) as u32).expect("q_tilde degree fits u64") as usize;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); (d + 1) * top + 1];
    let ratio = delta / d as f64;
    for l in 0..=(d - 2) {
        let weight = {
            let mut w = Complex64::new(1.0, 0.0);
            for _ in 0..(d - 2 - l) {
                w *= ratio;
            }
            w
        };
        let stride = checked_d_pow(d, l as u32).expect("stride fits") as usize;
        coeffs[(d + 1) * stride] += weight; // leading 1 of Q
        for k in 0..=(d - 1) {
            coeffs[k * stride] += weight * q.coeff_a(k);
        }
    }
    DensePoly::new(coeffs)
}

/// [`q_tilde`] computed from the map itself.
pub fn q_tilde_of_map(map: &MonicCenteredHenon, precision: Precision) -> Result<DensePoly> {
    let q = q_polynomial_with(map, map.degree(), precision)?;
    Ok(q_tilde(&q, map.delta()))
}

/// Newton solve of `phi(0, y) = zeta` starting from `y = zeta`, with a
/// numeric derivative. Bypasses the series engine entirely, so it serves
/// as an independent cross-check of [`q_polynomial`].
pub fn solve_bottcher_inverse(
    map: &MonicCenteredHenon,
    zeta: Complex64,
    tol: f64,
) -> Result<Complex64> {
    let mut y = zeta;
    let zero = Complex64::new(0.0, 0.0);
    for _ in 0..60 {
        let phi = bottcher_numeric(map, Point2::new(zero, y), 1e-15)?;
        let f = phi - zeta;
        if f.norm() <= tol * zeta.norm().max(1.0) {
            return Ok(y);
        }
        let h = 1e-6 * y.norm().max(1.0);
        let hp = Complex64::new(h, 0.0);
        let fp = bottcher_numeric(map, Point2::new(zero, y + hp), 1e-15)?;
        let fm = bottcher_numeric(map, Point2::new(zero, y - hp), 1e-15)?;
        let dphi = (fp - fm) / (2.0 * h);
        y -= f / dphi;
    }
    Err(Error::InvalidParameter(
        "Böttcher inverse Newton iteration did not converge",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn map_d2(a0: Complex64, delta: Complex64) -> MonicCenteredHenon {
        MonicCenteredHenon::new(vec![a0], delta).unwrap()
    }

    #[test]
    fn zeta_series_worked_example() {
        // d = 2, a0 = 0, delta = 1: zeta = y - y^{-2}/4 - 7 y^{-5}/32 + ...
        let h = map_d2(c(0.0, 0.0), c(1.0, 0.0));
        let z = zeta_series(&h, 8).unwrap();
        let expect = [0.0, -0.25, 0.0, 0.0, -7.0 / 32.0];
        for (k, e) in expect.iter().enumerate() {
            assert!(
                (z.coeff(k + 1) - c(*e, 0.0)).norm() < 1e-14,
                "L_{} = {:?}, want {}",
                k + 1,
                z.coeff(k + 1),
                e
            );
        }
    }

    #[test]
    fn zeta_series_general_delta() {
        // d = 2, a0 = 0: L_2 = -delta/4
        let delta = c(0.7, -0.3);
        let h = map_d2(c(0.0, 0.0), delta);
        let z = zeta_series(&h, 3).unwrap();
        assert!((z.coeff(1)).norm() < 1e-15);
        assert!((z.coeff(2) + delta / 4.0).norm() < 1e-15);
    }

    #[test]
    fn zeta_series_matches_numeric_phi() {
        let h = MonicCenteredHenon::new(vec![c(0.3, 0.1), c(-0.2, 0.4)], c(0.8, 0.1)).unwrap();
        let z = zeta_series(&h, 10).unwrap();
        let y = c(100.0, 30.0);
        let phi = bottcher_numeric(&h, Point2::new(c(0.0, 0.0), y), 1e-15).unwrap();
        let approx = z.eval(y);
        // truncation error ~ |y|^{-(N+1)}
        assert!((phi - approx).norm() < 1e-18);
    }

    #[test]
    fn y_series_examples() {
        let h = map_d2(c(0.0, 0.0), c(1.0, 0.0));
        let ys = y_series(&h, 6).unwrap();
        assert!(ys.coeff(1).norm() < 1e-15);
        assert!((ys.coeff(2) - c(0.25, 0.0)).norm() < 1e-15);
        // general delta: D_2 = delta/4
        let delta = c(-0.4, 0.9);
        let hd = map_d2(c(0.0, 0.0), delta);
        let ysd = y_series(&hd, 4).unwrap();
        assert!((ysd.coeff(2) - delta / 4.0).norm() < 1e-15);
        // zeta(y(z)) = z through the computed order
        let z = zeta_series(&h, 6).unwrap();
        let comp = z.compose(&ys, 6).unwrap();
        for k in 1..=6 {
            assert!(comp.coeff(k).norm() < 1e-13);
        }
    }

    #[test]
    fn q_polynomial_worked_example() {
        let h = map_d2(c(0.0, 0.0), c(1.0, 0.0));
        let q = q_polynomial(&h, 8).unwrap();
        assert_eq!(q.degree(), 3);
        assert!((q.coeff_a(1)).norm() < 1e-14);
        assert!((q.coeff_a(0) - c(0.25, 0.0)).norm() < 1e-14);
        // Q(2) = 8 + 1/4
        assert!((q.eval(c(2.0, 0.0)) - c(8.25, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn q_extraction_stable_in_order() {
        let h = MonicCenteredHenon::new(vec![c(0.2, -0.6), c(0.1, 0.3), c(-0.5, 0.0)], c(1.3, 0.2))
            .unwrap();
        let q1 = q_polynomial(&h, 5).unwrap();
        for order in [6, 9, 14] {
            let q2 = q_polynomial(&h, order).unwrap();
            for k in 0..4 {
                assert!((q1.coeff_a(k) - q2.coeff_a(k)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn q_polynomial_rejects_low_order() {
        let h = map_d2(c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(
            q_polynomial(&h, 1).unwrap_err(),
            Error::InsufficientOrder {
                required: 2,
                available: 1
            }
        );
    }

    #[test]
    fn extended_precision_agrees_with_double() {
        let h = MonicCenteredHenon::new(vec![c(0.4, 0.2), c(-0.3, 0.7), c(0.9, -0.1)], c(0.6, 0.5))
            .unwrap();
        let a = y_series(&h, 10).unwrap();
        let b = y_series_with(&h, 10, Precision::Extended).unwrap();
        for k in 1..=10 {
            assert!((a.coeff(k) - b.coeff(k)).norm() <= 1e-12 * a.coeff(k).norm().max(1.0));
        }
    }

    #[test]
    fn bottcher_numeric_worked_value() {
        // phi(0, 100) for (y, y^2 - x): first factors 1, (1 - 1e-6)^{1/4},
        // (1 - 10^4/(10^8 - 100)^2)^{1/8}
        let h = map_d2(c(0.0, 0.0), c(1.0, 0.0));
        let phi = bottcher_numeric(&h, Point2::from_re(0.0, 100.0), 1e-15).unwrap();
        let f1 = (1.0_f64 - 1e-6).powf(0.25);
        let y2: f64 = 1e8 - 100.0;
        let f2 = (1.0 - 1e4 / (y2 * y2)).powf(1.0 / 8.0);
        let y3 = y2 * y2 - 1e4;
        let f3 = (1.0 - y2 / (y3 * y3)).powf(1.0 / 16.0);
        let oracle = 100.0 * f1 * f2 * f3;
        assert!((phi.re - oracle).abs() < 1e-11 && phi.im.abs() < 1e-12);
        assert!((phi.re - 99.99997500).abs() < 1e-6);
    }

    #[test]
    fn bottcher_rejects_outside_domain() {
        let h = map_d2(c(0.0, 0.0), c(1.0, 0.0));
        let err = bottcher_numeric(&h, Point2::from_re(0.0, 5.0), 1e-12).unwrap_err();
        assert!(matches!(err, Error::OutsideBottcherDomain { .. }));
    }

    #[test]
    fn green_fixed_point_is_zero() {
        let h = map_d2(c(0.0, 0.0), c(1.0, 0.0));
        let g = green_numeric(&h, Point2::from_re(0.0, 0.0), 1e-10, 100);
        assert_eq!(g.value, 0.0);
        assert_eq!(g.error_bound, 0.0);
        assert!((g.growth_constant - 3.0_f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn green_large_point_is_log_y() {
        let h = map_d2(c(0.0, 0.0), c(1.0, 0.0));
        let g = green_numeric(&h, Point2::from_re(0.0, 1e6), 1e-12, 100);
        assert!((g.value - 1e6_f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn q_tilde_is_q_for_degree_two() {
        let h = map_d2(c(0.0, 0.0), c(1.0, 0.0));
        let q = q_polynomial(&h, 4).unwrap();
        let qt = q_tilde(&q, h.delta());
        assert_eq!(qt.degree(), 3);
        assert!((qt.coeff(3) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((qt.coeff(0) - c(0.25, 0.0)).norm() < 1e-15);
        assert!(qt.coeff(1).norm() < 1e-15 && qt.coeff(2).norm() < 1e-15);
    }

    #[test]
    fn q_tilde_degree_three_monomial() {
        // d = 3, Q = z^4: Q~ = (delta/3) z^4 + z^12
        let q = QPolynomial::from_lower_coeffs(vec![c(0.0, 0.0); 3]).unwrap();
        let delta = c(2.1, -0.3);
        let qt = q_tilde(&q, delta);
        assert_eq!(qt.degree(), 12);
        assert!((qt.coeff(4) - delta / 3.0).norm() < 1e-15);
        assert!((qt.coeff(12) - c(1.0, 0.0)).norm() < 1e-15);
        for k in [0usize, 1, 2, 3, 5, 6, 7, 8, 9, 10, 11] {
            assert!(qt.coeff(k).norm() < 1e-15);
        }
    }
}
