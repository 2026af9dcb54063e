//! Check reports shared by the verification suites.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

/// Mixed absolute/relative residual used throughout the crate:
/// `|a - b| / max(1, |a|, |b|)`. Equals the absolute difference for
/// order-one quantities and the relative difference for large ones.
pub fn residual(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / 1.0_f64.max(a.norm()).max(b.norm())
}

/// One named check with its worst observed residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Outcome of a verification suite; `overall` is the conjunction of the
/// individual `passed` flags.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport {
            checks: Vec::new(),
            overall: true,
        }
    }

    pub fn push(&mut self, name: &str, max_residual: f64, tolerance: f64) {
        let passed = max_residual <= tolerance;
        self.checks.push(Check {
            name: String::from(name),
            max_residual,
            tolerance,
            passed,
        });
        self.overall = self.overall && passed;
    }

    pub fn merge(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.overall = self.overall && c.passed;
            self.checks.push(c);
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().fold(0.0, |m, c| m.max(c.max_residual))
    }
}
