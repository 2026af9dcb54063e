//! Escaping-set dynamics of complex Hénon maps `(x, y) -> (y, p(y) - delta x)`.
//!
//! The crate computes, for a monic centered map of degree `d >= 2`:
//!
//! * numeric Böttcher and Green functions on the forward-invariant region
//!   `V_R^+` ([`bottcher`]), with certified filtration radii and escape
//!   classification ([`henon`]);
//! * the Laurent tails `zeta(0, y) = y + L_1/y + ...` and
//!   `y(0, zeta) = zeta + D_1/zeta + ...` and the monic centered polynomial
//!   `Q` of degree `d + 1` they determine, via truncated series arithmetic
//!   ([`series`]);
//! * the lifted dynamics `((delta/d) z + Q(zeta), zeta^d)` on the cover of
//!   the escaping set and its deck transformations ([`cover`]);
//! * partner maps `F = L ∘ B ∘ H ∘ B` built from exact root-of-unity
//!   parameter triples, together with verification suites for all the
//!   coefficient relations the construction must satisfy ([`rigidity`]).
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live
//! in the companion `henon-cli` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bottcher;
pub mod cover;
pub mod error;
pub mod henon;
pub mod report;
pub mod rigidity;
pub mod sampling;
pub mod scalar;
pub mod series;

pub use bottcher::{
    bottcher_numeric, bottcher_radius, green_numeric, q_polynomial, q_polynomial_with, q_tilde,
    q_tilde_of_map, solve_bottcher_inverse, y_series, y_series_with, zeta_series,
    zeta_series_with, DensePoly, GreenValue, QPolynomial,
};
pub use cover::{CoverDynamics, CoverPoint, DeckIndex};
pub use error::{Error, Result};
pub use henon::{
    classify_point, classify_point_with_radius, eval_forward, eval_inverse, filtration_radius,
    filtration_radius_value, iterate, normalize, AffineCoordMap, FiltrationRadius, GeneralHenon,
    MonicCenteredHenon, OrbitClassification, Point2,
};
pub use report::{residual, Check, VerificationReport};
pub use rigidity::{
    affine_factors, construct_partner, enumerate_rigidity_params, full_suite,
    verify_cocycle_relation, verify_composition_identity, verify_q_relation,
    verify_series_relations, verify_unequal_jacobian, AffineFactors, RigidityParams, SuiteOptions,
};
pub use scalar::{root_of_unity, Coeff, ComplexDd, Precision};
pub use series::{TailSeries, UnitSeries};

pub use num_complex::Complex64;
