//! Escape-time and Green level-set renders of affine `C^2` slices.
//!
//! Output is deterministic for fixed inputs: pixels are pure functions of
//! their coordinates, rows are computed in parallel into pre-assigned
//! slots, and the files are assembled in index order. The escape layer
//! colours by entry step mod 256 (bounded pixels black); the Green layer
//! scales the observed value range linearly to 0..255. Both scalings are
//! recorded in the PPM header comments.

use henon_core::{
    classify_point_with_radius, filtration_radius_value, green_numeric, MonicCenteredHenon,
    OrbitClassification, Point2,
};
use rayon::prelude::*;
use std::fmt::Write as _;

use crate::CliError;

/// Affine 2-real-parameter embedding `(s, t) -> base + s dir_u + t dir_v`
/// sampled at pixel centers over `bounds = [s_min, s_max, t_min, t_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceSpec {
    pub base: Point2,
    pub dir_u: Point2,
    pub dir_v: Point2,
    pub bounds: [f64; 4],
    pub width: u32,
    pub height: u32,
}

impl SliceSpec {
    pub fn new(
        base: Point2,
        dir_u: Point2,
        dir_v: Point2,
        bounds: [f64; 4],
        width: u32,
        height: u32,
    ) -> Result<Self, CliError> {
        if width == 0 || height == 0 {
            return Err(CliError::Usage("slice resolution must be at least 1x1".into()));
        }
        if bounds[0] >= bounds[1] || bounds[2] >= bounds[3] {
            return Err(CliError::Usage("slice bounds must be non-degenerate".into()));
        }
        Ok(SliceSpec {
            base,
            dir_u,
            dir_v,
            bounds,
            width,
            height,
        })
    }

    /// Embedded point at the center of pixel `(col, row)`; row 0 carries
    /// `t_min`.
    pub fn point_at(&self, col: u32, row: u32) -> Point2 {
        let s = self.bounds[0]
            + (col as f64 + 0.5) * (self.bounds[1] - self.bounds[0]) / self.width as f64;
        let t = self.bounds[2]
            + (row as f64 + 0.5) * (self.bounds[3] - self.bounds[2]) / self.height as f64;
        Point2::new(
            self.base.x + s * self.dir_u.x + t * self.dir_v.x,
            self.base.y + s * self.dir_u.y + t * self.dir_v.y,
        )
    }
}

#[derive(Debug, Clone)]
pub struct RenderOutput {
    pub width: u32,
    pub height: u32,
    /// Entry step per pixel, -1 for bounded-at-budget, row-major.
    pub steps: Vec<i64>,
    pub greens: Vec<f64>,
    pub green_errors: Vec<f64>,
    pub ppm_escape: Vec<u8>,
    pub ppm_green: Vec<u8>,
    pub csv: Vec<u8>,
    pub checksum: u64,
}

fn fnv1a(bytes: &[u8], mut hash: u64) -> u64 {
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100_0000_01b3);
    }
    hash
}

fn gray_ppm(header_note: &str, width: u32, height: u32, gray: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(gray.len() * 3 + 128);
    out.extend_from_slice(format!("P6\n# {header_note}\n{width} {height}\n255\n").as_bytes());
    for &g in gray {
        out.extend_from_slice(&[g, g, g]);
    }
    out
}

/// Renders the slice: per-pixel escape classification and Green value.
/// `radius_override` substitutes the filtration radius used by the
/// classification layer.
pub fn render_slice(
    map: &MonicCenteredHenon,
    slice: &SliceSpec,
    max_iter: usize,
    tol: f64,
    radius_override: Option<f64>,
) -> RenderOutput {
    let radius = radius_override.unwrap_or_else(|| filtration_radius_value(map));
    let width = slice.width as usize;
    let height = slice.height as usize;
    let mut cells = vec![(0i64, 0.0f64, 0.0f64); width * height];

    cells
        .par_chunks_mut(width)
        .enumerate()
        .for_each(|(row, out)| {
            for (col, cell) in out.iter_mut().enumerate() {
                let p = slice.point_at(col as u32, row as u32);
                let step = match classify_point_with_radius(map, p, max_iter, radius) {
                    OrbitClassification::Escaping { entry_step } => entry_step as i64,
                    OrbitClassification::Undecided { .. } => -1,
                };
                let g = green_numeric(map, p, tol, max_iter);
                *cell = (step, g.value, g.error_bound);
            }
        });

    let steps: Vec<i64> = cells.iter().map(|c| c.0).collect();
    let greens: Vec<f64> = cells.iter().map(|c| c.1).collect();
    let green_errors: Vec<f64> = cells.iter().map(|c| c.2).collect();

    let escape_gray: Vec<u8> = steps
        .iter()
        .map(|&s| if s < 0 { 0 } else { (s % 256) as u8 })
        .collect();
    let (gmin, gmax) = greens
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &g| {
            (lo.min(g), hi.max(g))
        });
    let span = gmax - gmin;
    let green_gray: Vec<u8> = greens
        .iter()
        .map(|&g| {
            if span > 0.0 {
                (255.0 * (g - gmin) / span).round().clamp(0.0, 255.0) as u8
            } else {
                0
            }
        })
        .collect();

    let ppm_escape = gray_ppm(
        "escape layer: entry step mod 256, bounded pixels black",
        slice.width,
        slice.height,
        &escape_gray,
    );
    let ppm_green = gray_ppm(
        &format!("green layer: linear scale over [{gmin}, {gmax}]"),
        slice.width,
        slice.height,
        &green_gray,
    );

    let mut csv = String::with_capacity(cells.len() * 24);
    csv.push_str("row,col,entry_step,green,green_error\n");
    for row in 0..height {
        for col in 0..width {
            let i = row * width + col;
            let _ = writeln!(
                csv,
                "{row},{col},{},{},{}",
                steps[i], greens[i], green_errors[i]
            );
        }
    }
    let csv = csv.into_bytes();

    let mut checksum = 0xcbf2_9ce4_8422_2325u64;
    checksum = fnv1a(&ppm_escape, checksum);
    checksum = fnv1a(&ppm_green, checksum);
    checksum = fnv1a(&csv, checksum);

    RenderOutput {
        width: slice.width,
        height: slice.height,
        steps,
        greens,
        green_errors,
        ppm_escape,
        ppm_green,
        csv,
        checksum,
    }
}

impl RenderOutput {
    /// 8-bit grayscale planes (escape, green) for the optional PNG path.
    pub fn gray_planes(&self) -> (Vec<u8>, Vec<u8>) {
        let unppm = |ppm: &[u8]| {
            // payload starts after 4 header lines
            let mut newlines = 0;
            let mut start = 0;
            for (i, &b) in ppm.iter().enumerate() {
                if b == b'\n' {
                    newlines += 1;
                    if newlines == 4 {
                        start = i + 1;
                        break;
                    }
                }
            }
            ppm[start..].iter().step_by(3).copied().collect::<Vec<u8>>()
        };
        (unppm(&self.ppm_escape), unppm(&self.ppm_green))
    }
}
