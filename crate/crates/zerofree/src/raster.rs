//! Parameter-plane sweeps: classify each pixel of a window against the
//! known zero-free disks, the limit cardioid, and the orbit-hull membership
//! test; emit deterministic PPM images and CSV tables.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cardioid::{cardioid_contains, CardioidSpec, Containment};
use crate::gamma::gamma_point;
use crate::orbit::{classify_membership_detailed, Membership, OrbitConfig};

/// Which shortcut classes participate in the precedence chain; a disabled
/// class falls through to the next rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassFilter {
    pub shearer: bool,
    pub semidisk: bool,
    pub outside_cardioid: bool,
}

impl Default for ClassFilter {
    fn default() -> ClassFilter {
        ClassFilter {
            shearer: true,
            semidisk: true,
            outside_cardioid: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RasterConfig {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub width: usize,
    pub height: usize,
    pub orbit: OrbitConfig,
    pub classes_enabled: ClassFilter,
}

impl RasterConfig {
    /// Window enclosing the full cardioid at the working resolution.
    pub fn default_window(width: usize, height: usize) -> RasterConfig {
        RasterConfig {
            re_min: -0.6,
            re_max: 3.0,
            im_min: -1.6,
            im_max: 1.6,
            width,
            height,
            orbit: OrbitConfig::default(),
            classes_enabled: ClassFilter::default(),
        }
    }

    pub fn validate(&self) -> Result<(), RasterError> {
        if !(self.re_min < self.re_max) || !(self.im_min < self.im_max) {
            return Err(RasterError::BadWindow);
        }
        if self.width == 0 || self.height == 0 {
            return Err(RasterError::BadSize);
        }
        Ok(())
    }

    /// Center of pixel `(x, y)`; row 0 is the top of the window.
    pub fn pixel_center(&self, x: usize, y: usize) -> Complex64 {
        let re = self.re_min + (self.re_max - self.re_min) * (x as f64 + 0.5) / self.width as f64;
        let im = self.im_max - (self.im_max - self.im_min) * (y as f64 + 0.5) / self.height as f64;
        Complex64::new(re, im)
    }

    /// Nearest pixel to a point, if it falls inside the window.
    pub fn pixel_of(&self, z: Complex64) -> Option<(usize, usize)> {
        let fx = (z.re - self.re_min) / (self.re_max - self.re_min) * self.width as f64 - 0.5;
        let fy = (self.im_max - z.im) / (self.im_max - self.im_min) * self.height as f64 - 0.5;
        let x = fx.round();
        let y = fy.round();
        if x < 0.0 || y < 0.0 || x >= self.width as f64 || y >= self.height as f64 {
            None
        } else {
            Some((x as usize, y as usize))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RasterError {
    BadWindow,
    BadSize,
}

impl std::fmt::Display for RasterError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RasterError::BadWindow => write!(f, "window bounds must satisfy min < max"),
            RasterError::BadSize => write!(f, "raster dimensions must be positive"),
        }
    }
}

impl std::error::Error for RasterError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PixelClass {
    Shearer,
    SemiDisk,
    Member,
    GrayExcluded,
    EscapeExcluded,
    OutsideCardioid,
    Undecided,
}

impl PixelClass {
    pub fn name(&self) -> &'static str {
        match self {
            PixelClass::Shearer => "SHEARER",
            PixelClass::SemiDisk => "SEMIDISK",
            PixelClass::Member => "MEMBER",
            PixelClass::GrayExcluded => "GRAY_EXCLUDED",
            PixelClass::EscapeExcluded => "ESCAPE_EXCLUDED",
            PixelClass::OutsideCardioid => "OUTSIDE_CARDIOID",
            PixelClass::Undecided => "UNDECIDED",
        }
    }

    pub fn is_excluded(&self) -> bool {
        matches!(self, PixelClass::GrayExcluded | PixelClass::EscapeExcluded)
    }
}

/// Per-pixel classification result with the orbit diagnostics when the
/// membership test ran.
#[derive(Debug, Clone, Copy)]
pub struct PixelOutcome {
    pub class: PixelClass,
    /// Origin clearance of the final hull; NaN when no orbit ran.
    pub clearance: f64,
    pub iterations: u32,
}

/// Classifies one parameter with the precedence chain: Shearer disk, then
/// the right-half-plane semi-disk, then the outside-cardioid shortcut, then
/// the orbit-hull membership test.
pub fn classify_pixel(lambda: Complex64, cfg: &RasterConfig) -> PixelClass {
    classify_pixel_detailed(lambda, cfg).class
}

pub fn classify_pixel_detailed(lambda: Complex64, cfg: &RasterConfig) -> PixelOutcome {
    let filter = &cfg.classes_enabled;
    let modulus = lambda.norm();
    if filter.shearer && modulus < (-1.0f64).exp() {
        return PixelOutcome {
            class: PixelClass::Shearer,
            clearance: f64::NAN,
            iterations: 0,
        };
    }
    if filter.semidisk && lambda.re > 0.0 && modulus < 7.0 * std::f64::consts::PI / 16.0 {
        return PixelOutcome {
            class: PixelClass::SemiDisk,
            clearance: f64::NAN,
            iterations: 0,
        };
    }
    if filter.outside_cardioid {
        let on_real_trace = lambda.im == 0.0 && lambda.re >= -(-1.0f64).exp();
        if !on_real_trace
            && !matches!(
                cardioid_contains(CardioidSpec::Infinity, lambda),
                Containment::Inside
            )
        {
            return PixelOutcome {
                class: PixelClass::OutsideCardioid,
                clearance: f64::NAN,
                iterations: 0,
            };
        }
    }
    let (membership, hull) = classify_membership_detailed(lambda, &cfg.orbit);
    let class = match membership {
        Membership::Member => PixelClass::Member,
        Membership::ExcludedInterior => PixelClass::GrayExcluded,
        Membership::ExcludedEscape => PixelClass::EscapeExcluded,
        Membership::Undecided => PixelClass::Undecided,
    };
    match hull {
        Some(h) => PixelOutcome {
            class,
            clearance: h.origin_clearance,
            iterations: h.iterations as u32,
        },
        None => PixelOutcome {
            class,
            clearance: f64::NAN,
            iterations: 0,
        },
    }
}

/// Classified window, row-major with row 0 at the top (`im_max`).
#[derive(Debug, Clone)]
pub struct RasterGrid {
    pub cfg: RasterConfig,
    pub outcomes: Vec<PixelOutcome>,
}

impl RasterGrid {
    pub fn class_at(&self, x: usize, y: usize) -> PixelClass {
        self.outcomes[y * self.cfg.width + x].class
    }
}

/// Sweeps the window with pixel-center sampling. Pixels are independent and
/// pure, so the grid is identical for any parallel schedule.
pub fn raster(cfg: &RasterConfig) -> Result<RasterGrid, RasterError> {
    cfg.validate()?;
    cfg.orbit.validate().map_err(|_| RasterError::BadSize)?;
    let total = cfg.width * cfg.height;
    let outcomes: Vec<PixelOutcome> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let x = idx % cfg.width;
            let y = idx / cfg.width;
            classify_pixel_detailed(cfg.pixel_center(x, y), cfg)
        })
        .collect();
    Ok(RasterGrid {
        cfg: *cfg,
        outcomes,
    })
}

/// RGB palette for rendering; defaults follow the fixed class colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Palette {
    pub shearer: [u8; 3],
    pub semidisk: [u8; 3],
    pub member: [u8; 3],
    pub gray_excluded: [u8; 3],
    pub escape_excluded: [u8; 3],
    pub outside_cardioid: [u8; 3],
    pub undecided: [u8; 3],
    pub overlay: [u8; 3],
}

impl Default for Palette {
    fn default() -> Palette {
        Palette {
            shearer: [255, 220, 0],
            semidisk: [0, 170, 0],
            member: [235, 235, 235],
            gray_excluded: [128, 128, 128],
            escape_excluded: [200, 200, 200],
            outside_cardioid: [255, 255, 255],
            undecided: [255, 0, 255],
            overlay: [255, 0, 0],
        }
    }
}

impl Palette {
    pub fn color(&self, class: PixelClass) -> [u8; 3] {
        match class {
            PixelClass::Shearer => self.shearer,
            PixelClass::SemiDisk => self.semidisk,
            PixelClass::Member => self.member,
            PixelClass::GrayExcluded => self.gray_excluded,
            PixelClass::EscapeExcluded => self.escape_excluded,
            PixelClass::OutsideCardioid => self.outside_cardioid,
            PixelClass::Undecided => self.undecided,
        }
    }
}

/// Binary PPM (P6) encoding of the grid.
pub fn render(grid: &RasterGrid, palette: &Palette) -> Vec<u8> {
    let mut out = Vec::with_capacity(32 + 3 * grid.outcomes.len());
    out.extend_from_slice(format!("P6\n{} {}\n255\n", grid.cfg.width, grid.cfg.height).as_bytes());
    for outcome in &grid.outcomes {
        out.extend_from_slice(&palette.color(outcome.class));
    }
    out
}

/// Pixel positions covered by the boundary curve overlay for angles in
/// `[0, theta_max]`, together with the conjugate mirror.
pub fn gamma_overlay_pixels(cfg: &RasterConfig, theta_max: f64) -> Vec<(usize, usize)> {
    let samples = 8 * (cfg.width + cfg.height);
    let mut pixels = Vec::new();
    for k in 0..=samples {
        let theta = theta_max * k as f64 / samples as f64;
        if let Ok(p) = gamma_point(theta) {
            for z in [p.lambda_hat, p.lambda_hat.conj()] {
                if let Some(xy) = cfg.pixel_of(z) {
                    pixels.push(xy);
                }
            }
        }
    }
    pixels.sort_unstable();
    pixels.dedup();
    pixels
}

/// Paints the overlay into an already rendered P6 buffer.
pub fn draw_overlay(image: &mut [u8], grid: &RasterGrid, pixels: &[(usize, usize)], color: [u8; 3]) {
    let header_len = format!("P6\n{} {}\n255\n", grid.cfg.width, grid.cfg.height).len();
    for &(x, y) in pixels {
        let offset = header_len + 3 * (y * grid.cfg.width + x);
        image[offset..offset + 3].copy_from_slice(&color);
    }
}

/// CSV rows `re,im,class,clearance,iterations`, one per pixel, no header;
/// clearance is empty when no orbit ran for the pixel.
pub fn export_csv(grid: &RasterGrid) -> String {
    let mut out = String::with_capacity(grid.outcomes.len() * 40);
    for y in 0..grid.cfg.height {
        for x in 0..grid.cfg.width {
            let z = grid.cfg.pixel_center(x, y);
            let o = &grid.outcomes[y * grid.cfg.width + x];
            let clearance = if o.clearance.is_nan() {
                String::new()
            } else {
                format!("{:.12e}", o.clearance)
            };
            out.push_str(&format!(
                "{:.12},{:.12},{},{},{}\n",
                z.re,
                z.im,
                o.class.name(),
                clearance,
                o.iterations
            ));
        }
    }
    out
}
