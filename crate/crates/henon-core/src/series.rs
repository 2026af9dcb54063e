//! Truncated series arithmetic over complex coefficients.
//!
//! Two shapes cover everything the Laurent-tail computations need:
//!
//! * [`UnitSeries`]: `1 + c_1 t + ... + c_N t^N + O(t^{N+1})`, the form the
//!   telescoping Böttcher factors take in `t = 1/y`;
//! * [`TailSeries`]: `y + c_1/y + ... + c_N/y^N + O(1/y^{N+1})`, the form of
//!   the Böttcher coordinate and its compositional inverse.
//!
//! Truncation order is an explicit argument everywhere. An operation asked
//! for more order than its inputs carry fails with
//! [`Error::InsufficientOrder`] instead of silently returning fewer terms.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Coeff;

fn check_order(required: usize, available: usize) -> Result<()> {
    if available < required {
        Err(Error::InsufficientOrder {
            required,
            available,
        })
    } else {
        Ok(())
    }
}

/// `1 + sum_{k=1}^{N} c_k t^k`; the unit constant term is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitSeries<C: Coeff = Complex64> {
    coeffs: Vec<C>,
}

impl<C: Coeff> UnitSeries<C> {
    /// Builds from tail coefficients `c_1, ..., c_N`.
    pub fn new(coeffs: Vec<C>) -> Self {
        UnitSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        UnitSeries {
            coeffs: vec![C::zero(); order],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `t^k`, `k >= 1`.
    pub fn coeff(&self, k: usize) -> C {
        assert!(k >= 1 && k <= self.coeffs.len());
        self.coeffs[k - 1]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }


    pub fn truncated(&self, order: usize) -> Result<Self> {
        check_order(order, self.order())?;
        Ok(UnitSeries {
            coeffs: self.coeffs[..order].to_vec(),
        })
    }

    /// Cauchy product through `t^order`.
    pub fn mul(&self, other: &Self, order: usize) -> Result<Self> {
        check_order(order, self.order())?;
        check_order(order, other.order())?;
        let a = &self.coeffs;
        let b = &other.coeffs;
        let mut out = vec![C::zero(); order];
        for n in 1..=order {
            let mut s = a[n - 1] + b[n - 1];
            for j in 1..n {
                s = s + a[j - 1] * b[n - j - 1];
            }
            out[n - 1] = s;
        }
        Ok(UnitSeries { coeffs: out })
    }

    /// Multiplicative inverse: `self.mul(&self.reciprocal(N), N)` is 1
    /// exactly in the convolution recurrences.
    pub fn reciprocal(&self, order: usize) -> Result<Self> {
        check_order(order, self.order())?;
        let a = &self.coeffs;
        let mut r = vec![C::zero(); order];
        for n in 1..=order {
            let mut s = -a[n - 1];
            for j in 1..n {
                s = s - a[j - 1] * r[n - j - 1];
            }
            r[n - 1] = s;
        }
        Ok(UnitSeries { coeffs: r })
    }

    /// `log(1 + A)` via the recurrence `n l_n = n a_n - sum j l_j a_{n-j}`.
    pub(crate) fn ln(&self, order: usize) -> Result<Vec<C>> {
        check_order(order, self.order())?;
        let a = &self.coeffs;
        let mut l = vec![C::zero(); order];
        for n in 1..=order {
            let mut s = C::from_u64(n as u64) * a[n - 1];
            for j in 1..n {
                s = s - C::from_u64(j as u64) * l[j - 1] * a[n - j - 1];
            }
            l[n - 1] = s / C::from_u64(n as u64);
        }
        Ok(l)
    }

    /// `exp` of a series with zero constant term, given as raw coefficients.
    pub(crate) fn exp(l: &[C], order: usize) -> Result<Self> {
        check_order(order, l.len())?;
        let mut e = vec![C::zero(); order];
        for n in 1..=order {
            // n e_n = sum_{j=1}^{n} j l_j e_{n-j}, with e_0 = 1
            let mut s = C::from_u64(n as u64) * l[n - 1];
            for j in 1..n {
                s = s + C::from_u64(j as u64) * l[j - 1] * e[n - j - 1];
            }
            e[n - 1] = s / C::from_u64(n as u64);
        }
        Ok(UnitSeries { coeffs: e })
    }

    /// Principal `m`-th root: the unique unit series `b` with `b^m = self`
    /// through `t^order` (the branch at 1).
    pub fn principal_root(&self, m: u64, order: usize) -> Result<Self> {
        check_order(order, self.order())?;
        let mut l = self.ln(order)?;
        let m_c = C::from_u64(m);
        for c in l.iter_mut() {
            *c = *c / m_c;
        }
        Self::exp(&l, order)
    }

    /// Integer power by binary exponentiation.
    pub fn pow(&self, mut e: u64, order: usize) -> Result<Self> {
        check_order(order, self.order())?;
        let mut base = self.truncated(order)?;
        let mut acc = UnitSeries::one(order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, order)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, order)?;
            }
        }
        Ok(acc)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(C) -> D) -> UnitSeries<D> {
        UnitSeries {
            coeffs: self.coeffs.iter().map(|&c| f(c)).collect(),
        }
    }
}

/// `y + sum_{k=1}^{N} c_k y^{-k}`: unit leading behaviour, no constant term.
#[derive(Debug, Clone, PartialEq)]
pub struct TailSeries<C: Coeff = Complex64> {
    coeffs: Vec<C>,
}

impl<C: Coeff> TailSeries<C> {
    /// Builds from tail coefficients `c_1, ..., c_N`.
    pub fn new(coeffs: Vec<C>) -> Self {
        TailSeries { coeffs }
    }

    /// The identity `y` truncated at the given order.
    pub fn identity(order: usize) -> Self {
        TailSeries {
            coeffs: vec![C::zero(); order],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `y^{-k}`, `k >= 1`.
    pub fn coeff(&self, k: usize) -> C {
        assert!(k >= 1 && k <= self.coeffs.len());
        self.coeffs[k - 1]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn truncated(&self, order: usize) -> Result<Self> {
        check_order(order, self.order())?;
        Ok(TailSeries {
            coeffs: self.coeffs[..order].to_vec(),
        })
    }

    /// The unit series `W` with `f(y) = y W(1/y)`; its `t^1` coefficient is
    /// zero because a tail series has no constant term.
    pub fn unit_form(&self) -> UnitSeries<C> {
        let mut w = vec![C::zero(); self.coeffs.len() + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            w[k + 1] = c;
        }
        UnitSeries::new(w)
    }

    /// Inverse of [`TailSeries::unit_form`]. Fails when the unit series
    /// carries a nonzero `t^1` coefficient, which would mean a constant
    /// term in the tail.
    pub fn from_unit_form(w: &UnitSeries<C>) -> Result<Self> {
        if w.order() < 1 {
            return Err(Error::InsufficientOrder {
                required: 1,
                available: 0,
            });
        }
        let c1 = w.coeff(1).to_c64();
        if num_complex::Complex64::norm(c1) > 1e-13 {
            return Err(Error::InvalidParameter(
                "unit form carries a constant tail term",
            ));
        }
        Ok(TailSeries {
            coeffs: w.coeffs()[1..].to_vec(),
        })
    }

    /// Evaluates `y + sum c_k y^{-k}` at a numeric point.
    pub fn eval(&self, y: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let inv = 1.0 / y;
        for &c in self.coeffs.iter().rev() {
            acc = (acc + c.to_c64()) * inv;
        }
        acc + y
    }

    /// Composition `self(inner(y))` through the given order.
    pub fn compose(&self, inner: &Self, order: usize) -> Result<Self> {
        check_order(order, self.order())?;
        check_order(order, inner.order())?;
        let w = inner.unit_form().truncated(order)?;
        let winv = w.reciprocal(order)?;
        let mut out = inner.coeffs[..order].to_vec();
        // accumulate c_k * zeta^{-k} * W^{-k}
        let mut wpow = UnitSeries::<C>::one(order);
        for k in 1..=order {
            wpow = wpow.mul(&winv, order)?;
            let ck = self.coeffs[k - 1];
            if ck.is_zero() {
                continue;
            }
            out[k - 1] = out[k - 1] + ck; // constant term of W^{-k}
            for j in 1..=(order - k) {
                out[k + j - 1] = out[k + j - 1] + ck * wpow.coeff(j);
            }
        }
        Ok(TailSeries { coeffs: out })
    }

    /// Compositional inverse: returns `g` with `g(self(y)) = y` and
    /// `self(g(z)) = z` through the given order. The inverse never acquires
    /// a constant term; the representation enforces that.
    pub fn revert(&self, order: usize) -> Result<Self> {
        check_order(order, self.order())?;
        let f = self.truncated(order)?;
        let mut g = TailSeries::identity(order);
        for m in 1..=order {
            let r = f.compose(&g, order)?;
            g.coeffs[m - 1] = g.coeffs[m - 1] - r.coeffs[m - 1];
        }
        Ok(g)
    }

    /// Coefficients of `alpha * f(y)` (tail part; the leading term becomes
    /// `alpha y`).
    pub fn scale_values(&self, alpha: C) -> Vec<C> {
        self.coeffs.iter().map(|&c| alpha * c).collect()
    }

    /// Coefficients of `f(alpha y)` (tail part; the leading term becomes
    /// `alpha y`): `c_k alpha^{-k}`.
    pub fn scale_argument(&self, alpha: C) -> Vec<C> {
        let inv = C::one() / alpha;
        let mut p = C::one();
        self.coeffs
            .iter()
            .map(|&c| {
                p = p * inv;
                c * p
            })
            .collect()
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(C) -> D) -> TailSeries<D> {
        TailSeries {
            coeffs: self.coeffs.iter().map(|&c| f(c)).collect(),
        }
    }
}

impl TailSeries<Complex64> {
    /// Largest coefficient magnitude, handy for residual scaling.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn unit(cs: &[f64]) -> UnitSeries {
        UnitSeries::new(cs.iter().map(|&x| re(x)).collect())
    }

    fn close(a: Complex64, b: f64) -> bool {
        (a - re(b)).norm() < 1e-13
    }

    #[test]
    fn mul_examples() {
        // (1+t)(1-t) = 1 - t^2
        let p = unit(&[1.0, 0.0]).mul(&unit(&[-1.0, 0.0]), 2).unwrap();
        assert!(close(p.coeff(1), 0.0) && close(p.coeff(2), -1.0));
        // (1+t) * 1 = 1+t
        let p = unit(&[1.0, 0.0, 0.0]).mul(&UnitSeries::one(3), 3).unwrap();
        assert!(close(p.coeff(1), 1.0) && close(p.coeff(2), 0.0) && close(p.coeff(3), 0.0));
        // (1+t+t^2)^2 = 1 + 2t + 3t^2 + ...
        let a = unit(&[1.0, 1.0]);
        let p = a.mul(&a, 2).unwrap();
        assert!(close(p.coeff(1), 2.0) && close(p.coeff(2), 3.0));
    }

    #[test]
    fn mul_rejects_insufficient_order() {
        let a = unit(&[1.0]);
        let err = a.mul(&a, 2).unwrap_err();
        assert_eq!(
            err,
            Error::InsufficientOrder {
                required: 2,
                available: 1
            }
        );
    }

    #[test]
    fn reciprocal_examples() {
        // 1/(1+t) = 1 - t + t^2 - t^3
        let r = unit(&[1.0, 0.0, 0.0]).reciprocal(3).unwrap();
        assert!(close(r.coeff(1), -1.0) && close(r.coeff(2), 1.0) && close(r.coeff(3), -1.0));
        // 1/1 = 1
        let r = UnitSeries::<Complex64>::one(4).reciprocal(4).unwrap();
        assert!(r.coeffs().iter().all(|c| c.norm() == 0.0));
        // 1/(1+2t+t^2) = 1 - 2t + 3t^2 + ...
        let r = unit(&[2.0, 1.0]).reciprocal(2).unwrap();
        assert!(close(r.coeff(1), -2.0) && close(r.coeff(2), 3.0));
    }

    #[test]
    fn principal_root_examples() {
        // (1 - t^3)^{1/4} = 1 - t^3/4 - 3 t^6/32 + O(t^9)
        let a = unit(&[0.0, 0.0, -1.0, 0.0, 0.0, 0.0]);
        let b = a.principal_root(4, 6).unwrap();
        assert!(close(b.coeff(3), -0.25));
        assert!(close(b.coeff(6), -3.0 / 32.0));
        assert!(close(b.coeff(1), 0.0) && close(b.coeff(2), 0.0));
        // root of 1 is 1
        let b = UnitSeries::<Complex64>::one(5).principal_root(7, 5).unwrap();
        assert!(b.coeffs().iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn root_round_trip() {
        let a = UnitSeries::new(
            [0.3, -0.2, 0.05, 0.7, -0.4, 0.11]
                .iter()
                .map(|&x| Complex64::new(x, 0.3 * x))
                .collect(),
        );
        let b = a.principal_root(2, 6).unwrap();
        let sq = b.mul(&b, 6).unwrap();
        for k in 1..=6 {
            assert!((sq.coeff(k) - a.coeff(k)).norm() < 1e-12);
        }
    }

    #[test]
    fn revert_examples() {
        // identity reverts to identity
        let id = TailSeries::<Complex64>::identity(5);
        assert_eq!(id.revert(5).unwrap(), id);
        // f = y - (1/4) y^{-2}  ->  g = z + (1/4) z^{-2} + O(z^{-4})
        let f = TailSeries::new(alloc::vec![re(0.0), re(-0.25), re(0.0)]);
        let g = f.revert(3).unwrap();
        assert!(close(g.coeff(1), 0.0));
        assert!(close(g.coeff(2), 0.25));
        assert!(close(g.coeff(3), 0.0));
        let back = g.compose(&f, 3).unwrap();
        for k in 1..=3 {
            assert!(back.coeff(k).norm() < 1e-13);
        }
    }

    #[test]
    fn scale_examples() {
        // alpha = 1 leaves everything unchanged
        let f = TailSeries::new(alloc::vec![re(0.5), re(-0.25)]);
        assert_eq!(f.scale_values(re(1.0)), f.coeffs().to_vec());
        assert_eq!(f.scale_argument(re(1.0)), f.coeffs().to_vec());
        // f = y + c/y, alpha = -1: f(-y) and -f(y) share the y^{-1} coefficient
        let f = TailSeries::new(alloc::vec![re(0.7)]);
        let sv = f.scale_values(re(-1.0));
        let sa = f.scale_argument(re(-1.0));
        assert!(close(sv[0], -0.7) && close(sa[0], -0.7));
        // f = y + c/y^2, alpha = i: coefficient picks up i^{-2} = -1
        let f = TailSeries::new(alloc::vec![re(0.0), re(0.7)]);
        let sa = f.scale_argument(Complex64::new(0.0, 1.0));
        assert!((sa[1] - re(-0.7)).norm() < 1e-15);
    }

    #[test]
    fn unit_form_round_trip() {
        let f = TailSeries::new(alloc::vec![re(0.1), re(-0.2), re(0.3)]);
        let w = f.unit_form();
        assert_eq!(w.order(), 4);
        assert!(close(w.coeff(1), 0.0));
        let back = TailSeries::from_unit_form(&w).unwrap();
        assert_eq!(back, f);
    }
}
