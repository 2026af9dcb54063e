//! Coefficient scalars for the series engine.
//!
//! Series arithmetic runs over any [`Coeff`]: IEEE doubles
//! ([`Complex64`]) by default, or the double-double type [`ComplexDd`]
//! (~106 mantissa bits) when relation checks at high degree need the
//! headroom. Precision is a configuration knob ([`Precision`]), not an
//! API change: every public entry point returns `Complex64` data.

use core::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Coefficient precision for series computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    /// IEEE double (53 mantissa bits).
    #[default]
    Double,
    /// Unevaluated double-double sums (~106 mantissa bits).
    Extended,
}

impl Precision {
    /// Selects the smallest tier holding at least `bits` mantissa bits.
    /// Anything above 53 selects the ~106-bit extended tier.
    pub fn from_bits(bits: u32) -> Self {
        if bits <= 53 {
            Precision::Double
        } else {
            Precision::Extended
        }
    }
}

/// Field operations required of a series coefficient.
pub trait Coeff:
    Copy
    + PartialEq
    + core::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_c64(c: Complex64) -> Self;
    fn to_c64(self) -> Complex64;
    /// Exact embedding of a small integer (used for root exponents).
    fn from_u64(n: u64) -> Self;
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

impl Coeff for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_c64(c: Complex64) -> Self {
        c
    }
    fn to_c64(self) -> Complex64 {
        self
    }
    fn from_u64(n: u64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}

// ---------------------------------------------------------------------------
// Double-double arithmetic (Dekker/Knuth error-free transforms).
// ---------------------------------------------------------------------------

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    // 2^27 + 1; valid for |a| < 2^996, far beyond the coefficient sizes here
    let t = 134_217_729.0 * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

/// A real number stored as an unevaluated sum `hi + lo` of two doubles.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    pub fn new(hi: f64, lo: f64) -> Self {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn add(self, o: Dd) -> Dd {
        let (s1, e1) = two_sum(self.hi, o.hi);
        let (s2, e2) = two_sum(self.lo, o.lo);
        let (s1, e1) = quick_two_sum(s1, e1 + s2);
        let (s, e) = quick_two_sum(s1, e1 + e2);
        Dd { hi: s, lo: e }
    }

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (s, e) = quick_two_sum(p, e);
        Dd { hi: s, lo: e }
    }

    fn mul_f64(self, o: f64) -> Dd {
        let (p, e) = two_prod(self.hi, o);
        let e = e + self.lo * o;
        let (s, e) = quick_two_sum(p, e);
        Dd { hi: s, lo: e }
    }

    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul_f64(q1));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul_f64(q2));
        let q3 = r.hi / o.hi;
        let (s, e) = two_sum(q1, q2);
        Dd { hi: s, lo: e }.add(Dd::from_f64(q3))
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexDd {
    pub re: Dd,
    pub im: Dd,
}

impl ComplexDd {
    pub fn new(re: Dd, im: Dd) -> Self {
        ComplexDd { re, im }
    }
}

impl Add for ComplexDd {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ComplexDd::new(self.re.add(o.re), self.im.add(o.im))
    }
}

impl Sub for ComplexDd {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        ComplexDd::new(self.re.sub(o.re), self.im.sub(o.im))
    }
}

impl Neg for ComplexDd {
    type Output = Self;
    fn neg(self) -> Self {
        ComplexDd::new(self.re.neg(), self.im.neg())
    }
}

impl Mul for ComplexDd {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        ComplexDd::new(
            self.re.mul(o.re).sub(self.im.mul(o.im)),
            self.re.mul(o.im).add(self.im.mul(o.re)),
        )
    }
}

impl Div for ComplexDd {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let den = o.re.mul(o.re).add(o.im.mul(o.im));
        let re = self.re.mul(o.re).add(self.im.mul(o.im));
        let im = self.im.mul(o.re).sub(self.re.mul(o.im));
        ComplexDd::new(re.div(den), im.div(den))
    }
}

impl Coeff for ComplexDd {
    fn zero() -> Self {
        ComplexDd::default()
    }
    fn one() -> Self {
        ComplexDd::new(Dd::from_f64(1.0), Dd::from_f64(0.0))
    }
    fn from_c64(c: Complex64) -> Self {
        ComplexDd::new(Dd::from_f64(c.re), Dd::from_f64(c.im))
    }
    fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
    fn from_u64(n: u64) -> Self {
        ComplexDd::from_c64(Complex64::new(n as f64, 0.0))
    }
}

// ---------------------------------------------------------------------------
// Roots of unity
// ---------------------------------------------------------------------------

/// `e^{2 pi i k / n}` materialised from the reduced integer pair, never by
/// repeated multiplication. Quarter turns are returned exactly.
pub fn root_of_unity(k: i64, n: u64) -> Complex64 {
    debug_assert!(n > 0);
    let n_i = n as i64;
    let k = k.rem_euclid(n_i) as u64;
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * k == n {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * k == n {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * k == 3 * n {
        return Complex64::new(0.0, -1.0);
    }
    let theta = 2.0 * core::f64::consts::PI * (k as f64) / (n as f64);
    Complex64::from_polar(1.0, theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_recovers_tiny_tail() {
        let a = Dd::from_f64(1.0).add(Dd::from_f64(1e-20));
        let b = a.sub(Dd::from_f64(1.0));
        assert_eq!(b.to_f64(), 1e-20);
    }

    #[test]
    fn dd_division_round_trip() {
        let a = Dd::from_f64(1.0).div(Dd::from_f64(3.0));
        let b = a.mul_f64(3.0);
        assert!((b.to_f64() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn complex_dd_matches_f64_on_exact_inputs() {
        let a = ComplexDd::from_c64(Complex64::new(1.5, -2.25));
        let b = ComplexDd::from_c64(Complex64::new(-0.5, 4.0));
        let p = (a * b).to_c64();
        let q = Complex64::new(1.5, -2.25) * Complex64::new(-0.5, 4.0);
        assert_eq!(p, q);
        let d = (a / b).to_c64();
        let e = Complex64::new(1.5, -2.25) / Complex64::new(-0.5, 4.0);
        assert!((d - e).norm() < 1e-16);
    }

    #[test]
    fn quarter_turns_are_exact() {
        assert_eq!(root_of_unity(0, 4), Complex64::new(1.0, 0.0));
        assert_eq!(root_of_unity(1, 4), Complex64::new(0.0, 1.0));
        assert_eq!(root_of_unity(2, 4), Complex64::new(-1.0, 0.0));
        assert_eq!(root_of_unity(3, 4), Complex64::new(0.0, -1.0));
        assert_eq!(root_of_unity(1, 2), Complex64::new(-1.0, 0.0));
        assert_eq!(root_of_unity(-1, 4), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn cube_roots_multiply_to_one()  {
        let w = root_of_unity(1, 3);
        let p = w * w * w;
        assert!((p - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
