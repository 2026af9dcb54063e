//! JSON and CSV wire formats.
//!
//! Map spec: `{"degree": d, "coeffs": [[re, im], ...], "delta": [re, im]}`
//! with `coeffs[i]` the coefficient of `y^i` (length `d - 1`). A map that
//! is not monic and centered uses `"general_coeffs"` of length `d + 1`
//! instead and is normalised on ingestion.
//!
//! Pair spec: `{"H": <map>, "F": <map>, "alpha_index": a, "gamma_index": g}`.
//!
//! Series CSV rows are `k,re(c_k),im(c_k)`.

use std::io::Write;

use henon_core::{
    normalize, AffineCoordMap, Complex64, GeneralHenon, MonicCenteredHenon, QPolynomial,
    RigidityParams, TailSeries, VerificationReport,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

fn c64(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

fn pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapSpec {
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub general_coeffs: Option<Vec<[f64; 2]>>,
    pub delta: [f64; 2],
}

impl MapSpec {
    pub fn from_map(map: &MonicCenteredHenon) -> Self {
        MapSpec {
            degree: map.degree(),
            coeffs: Some(map.coeffs().iter().map(|&c| pair(c)).collect()),
            general_coeffs: None,
            delta: pair(map.delta()),
        }
    }

    /// Produces a monic centered map, normalising a general one. The
    /// returned coordinate change is `Some` exactly when normalisation ran.
    pub fn to_monic(&self) -> Result<(MonicCenteredHenon, Option<AffineCoordMap>), CliError> {
        match (&self.coeffs, &self.general_coeffs) {
            (Some(coeffs), None) => {
                if coeffs.len() + 1 != self.degree {
                    return Err(CliError::Usage(format!(
                        "map spec degree {} does not match {} coefficients",
                        self.degree,
                        coeffs.len()
                    )));
                }
                let map =
                    MonicCenteredHenon::new(coeffs.iter().map(|&v| c64(v)).collect(), c64(self.delta))?;
                Ok((map, None))
            }
            (None, Some(coeffs)) => {
                if coeffs.len() != self.degree + 1 {
                    return Err(CliError::Usage(format!(
                        "general map spec degree {} does not match {} coefficients",
                        self.degree,
                        coeffs.len()
                    )));
                }
                let general =
                    GeneralHenon::new(coeffs.iter().map(|&v| c64(v)).collect(), c64(self.delta))?;
                let (map, sigma) = normalize(&general);
                Ok((map, Some(sigma)))
            }
            _ => Err(CliError::Usage(
                "map spec needs exactly one of \"coeffs\" or \"general_coeffs\"".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairSpec {
    #[serde(rename = "H")]
    pub h: MapSpec,
    #[serde(rename = "F")]
    pub f: MapSpec,
    pub alpha_index: u64,
    pub gamma_index: u64,
}

impl PairSpec {
    pub fn load(
        &self,
    ) -> Result<(MonicCenteredHenon, MonicCenteredHenon, RigidityParams), CliError> {
        let (h, _) = self.h.to_monic()?;
        let (f, _) = self.f.to_monic()?;
        if h.degree() != f.degree() {
            return Err(CliError::Usage(format!(
                "pair degrees differ: {} vs {}",
                h.degree(),
                f.degree()
            )));
        }
        let params = RigidityParams::new(h.degree(), self.alpha_index, self.gamma_index)?;
        Ok((h, f, params))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportJson {
    pub checks: Vec<CheckJson>,
    pub overall: bool,
}

impl ReportJson {
    pub fn from_report(report: &VerificationReport) -> Self {
        ReportJson {
            checks: report
                .checks
                .iter()
                .map(|c| CheckJson {
                    name: c.name.clone(),
                    max_residual: c.max_residual,
                    tolerance: c.tolerance,
                    passed: c.passed,
                })
                .collect(),
            overall: report.overall,
        }
    }
}

/// `q-poly` output: `Q` as the full descending coefficient list of length
/// `d + 2` (leading 1 and the vanishing `z^d` slot included), plus the
/// `L_k` and `D_k` tails.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QSummaryJson {
    #[serde(rename = "Q")]
    pub q: Vec<[f64; 2]>,
    #[serde(rename = "L")]
    pub l: Vec<[f64; 2]>,
    #[serde(rename = "D")]
    pub d: Vec<[f64; 2]>,
}

impl QSummaryJson {
    pub fn new(q: &QPolynomial, zeta: &TailSeries, y: &TailSeries) -> Self {
        let mut qc = vec![pair(Complex64::new(1.0, 0.0)), pair(Complex64::new(0.0, 0.0))];
        qc.extend(q.lower_coeffs().iter().map(|&c| pair(c)));
        QSummaryJson {
            q: qc,
            l: zeta.coeffs().iter().map(|&c| pair(c)).collect(),
            d: y.coeffs().iter().map(|&c| pair(c)).collect(),
        }
    }
}

pub fn write_series_csv<W: Write>(mut w: W, series: &TailSeries) -> std::io::Result<()> {
    for (k, c) in series.coeffs().iter().enumerate() {
        writeln!(w, "{},{},{}", k + 1, c.re, c.im)?;
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SliceSpecJson {
    pub base: [[f64; 2]; 2],
    pub dir_u: [[f64; 2]; 2],
    pub dir_v: [[f64; 2]; 2],
    /// `[s_min, s_max, t_min, t_max]`
    pub bounds: [f64; 4],
    /// `[width, height]` in pixels
    pub resolution: [u32; 2],
}

impl SliceSpecJson {
    pub fn to_slice(&self) -> Result<crate::render::SliceSpec, CliError> {
        crate::render::SliceSpec::new(
            henon_core::Point2::new(c64(self.base[0]), c64(self.base[1])),
            henon_core::Point2::new(c64(self.dir_u[0]), c64(self.dir_u[1])),
            henon_core::Point2::new(c64(self.dir_v[0]), c64(self.dir_v[1])),
            self.bounds,
            self.resolution[0],
            self.resolution[1],
        )
    }
}
