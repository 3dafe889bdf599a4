//! Raster classification of a planar window against the tropical variety.

use std::fmt::Write as _;

use amoeba_core::cert::{certify_point, distance_to_tropical, DEFAULT_CERT_TOL};
use amoeba_core::ExponentialSum;
use thiserror::Error;

pub const TROPICAL: u8 = 0;
pub const OUTSIDE: u8 = 1;
pub const UNCERTIFIED: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Window {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Self {
        Self {
            xmin,
            xmax,
            ymin,
            ymax,
        }
    }
}

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("render requires d = 2 (got d = {0})")]
    Dimension(usize),
    #[error("window must be finite with xmin < xmax and ymin < ymax")]
    Window,
    #[error("resolution must be at least 2 in each direction")]
    Resolution,
    #[error(transparent)]
    Core(#[from] amoeba_core::Error),
}

/// Per-cell codes, row-major with row 0 at the top (`y` near `ymax`).
#[derive(Debug, Clone, PartialEq)]
pub struct GridClassification {
    pub window: Window,
    pub resolution: (usize, usize),
    pub cells: Vec<u8>,
}

impl GridClassification {
    /// Center of the cell in column `i`, row `j`.
    pub fn center(&self, i: usize, j: usize) -> (f64, f64) {
        cell_center(&self.window, self.resolution, i, j)
    }

    pub fn code(&self, i: usize, j: usize) -> u8 {
        self.cells[j * self.resolution.0 + i]
    }

    pub fn count(&self, code: u8) -> usize {
        self.cells.iter().filter(|&&c| c == code).count()
    }

    /// Plain PPM (P3): tropical black, outside white, uncertified gray.
    pub fn to_ppm(&self) -> String {
        let (nx, ny) = self.resolution;
        let mut out = format!("P3\n{nx} {ny}\n255\n");
        for row in self.cells.chunks(nx) {
            let pixels: Vec<&str> = row
                .iter()
                .map(|&c| match c {
                    TROPICAL => "0 0 0",
                    OUTSIDE => "255 255 255",
                    _ => "128 128 128",
                })
                .collect();
            out.push_str(&pixels.join(" "));
            out.push('\n');
        }
        out
    }

    /// `x,y,code` per cell center, in raster order.
    pub fn to_csv(&self) -> String {
        let (nx, ny) = self.resolution;
        let mut out = String::from("x,y,code\n");
        for j in 0..ny {
            for i in 0..nx {
                let (x, y) = self.center(i, j);
                let _ = writeln!(out, "{x},{y},{}", self.code(i, j));
            }
        }
        out
    }
}

fn cell_center(w: &Window, (nx, ny): (usize, usize), i: usize, j: usize) -> (f64, f64) {
    let hx = (w.xmax - w.xmin) / nx as f64;
    let hy = (w.ymax - w.ymin) / ny as f64;
    (
        w.xmin + (i as f64 + 0.5) * hx,
        w.ymax - (j as f64 + 0.5) * hy,
    )
}

/// Classifies every cell center of `window`.
///
/// A cell is tropical when its center lies within half a cell diagonal of the
/// variety, outside when [`certify_point`] proves the center is off the
/// amoeba, and uncertified otherwise.
pub fn render_grid(
    f: &ExponentialSum,
    window: Window,
    resolution: (usize, usize),
) -> Result<GridClassification, RenderError> {
    if f.dim() != 2 {
        return Err(RenderError::Dimension(f.dim()));
    }
    let Window {
        xmin,
        xmax,
        ymin,
        ymax,
    } = window;
    if ![xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite()) || !(xmin < xmax) || !(ymin < ymax) {
        return Err(RenderError::Window);
    }
    let (nx, ny) = resolution;
    if nx < 2 || ny < 2 {
        return Err(RenderError::Resolution);
    }
    let half_diagonal = 0.5 * ((xmax - xmin) / nx as f64).hypot((ymax - ymin) / ny as f64);
    let mut cells = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let (x, y) = cell_center(&window, resolution, i, j);
            let p = [x, y];
            let code = if distance_to_tropical(f, &p)?.distance <= half_diagonal {
                TROPICAL
            } else if certify_point(f, &p, DEFAULT_CERT_TOL)?.status.is_outside() {
                OUTSIDE
            } else {
                UNCERTIFIED
            };
            cells.push(code);
        }
    }
    Ok(GridClassification {
        window,
        resolution,
        cells,
    })
}
