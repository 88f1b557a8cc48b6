//! Grayscale images, Sobel gradients and keypoint selection.

use std::f64::consts::TAU;
use std::path::Path;

use crate::error::{Error, Result};
use crate::mesh::Point2;

pub const ORIENTATION_BINS: usize = 36;
pub const MAGNITUDE_BINS: usize = 32;

/// Row-major intensities in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    intensity: Vec<f64>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, intensity: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage("image has no pixels".into()));
        }
        if intensity.len() != width * height {
            return Err(Error::InvalidImage(format!(
                "{} intensities for a {width}x{height} image",
                intensity.len()
            )));
        }
        if let Some(i) = intensity.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidImage(format!(
                "intensity {} at pixel {i} outside [0, 1]",
                intensity[i]
            )));
        }
        Ok(Self {
            width,
            height,
            intensity,
        })
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::new(width, height, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[f64] {
        &self.intensity
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.intensity[y * self.width + x]
    }

    /// Intensity of the pixel nearest to `p`, clamped to the image.
    pub fn sample_nearest(&self, p: Point2) -> f64 {
        let x = (p.x.round().max(0.0) as usize).min(self.width - 1);
        let y = (p.y.round().max(0.0) as usize).min(self.height - 1);
        self.get(x, y)
    }

    /// Corner pixel coordinates, counterclockwise from the origin.
    pub fn corners(&self) -> [Point2; 4] {
        let (w, h) = ((self.width - 1) as f64, (self.height - 1) as f64);
        [
            Point2::new(0.0, 0.0),
            Point2::new(w, 0.0),
            Point2::new(w, h),
            Point2::new(0.0, h),
        ]
    }
}

/// Reads a raster image. Color is reduced with luma `0.299R + 0.587G + 0.114B`.
pub fn load_grayscale(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    let decoded = ::image::open(path).map_err(|e| match e {
        ::image::ImageError::IoError(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        other => Error::Decode {
            path: path.to_path_buf(),
            message: other.to_string(),
        },
    })?;
    let (width, height) = (decoded.width() as usize, decoded.height() as usize);
    let intensity: Vec<f64> = if decoded.color().has_color() {
        decoded
            .to_rgb32f()
            .pixels()
            .map(|p| {
                let [r, g, b] = p.0.map(f64::from);
                (0.299 * r + 0.587 * g + 0.114 * b).clamp(0.0, 1.0)
            })
            .collect()
    } else {
        decoded
            .to_luma32f()
            .pixels()
            .map(|p| f64::from(p.0[0]).clamp(0.0, 1.0))
            .collect()
    };
    GrayImage::new(width, height, intensity)
}

/// Writes an 8-bit grayscale PNG.
pub fn save_png(image: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes: Vec<u8> = image
        .pixels()
        .iter()
        .map(|v| (v * 255.0).round() as u8)
        .collect();
    let buffer = ::image::GrayImage::from_raw(image.width() as u32, image.height() as u32, bytes)
        .ok_or_else(|| Error::InvalidImage("buffer size mismatch".into()))?;
    buffer.save(path).map_err(|e| Error::Decode {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradientField {
    pub width: usize,
    pub height: usize,
    pub magnitude: Vec<f64>,
    /// Radians in `[0, 2π)`; `y` grows downward.
    pub orientation: Vec<f64>,
}

impl GradientField {
    pub fn at(&self, x: usize, y: usize) -> (f64, f64) {
        let i = y * self.width + x;
        (self.magnitude[i], self.orientation[i])
    }
}

/// Sobel 3x3 gradients. Border pixels get magnitude 0.
pub fn gradient_field(img: &GrayImage) -> Result<GradientField> {
    let (w, h) = (img.width(), img.height());
    if w < 3 || h < 3 {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
        });
    }
    let mut magnitude = vec![0.0; w * h];
    let mut orientation = vec![0.0; w * h];
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            let p = |dx: isize, dy: isize| {
                img.get((x as isize + dx) as usize, (y as isize + dy) as usize)
            };
            let gx = (p(1, -1) + 2.0 * p(1, 0) + p(1, 1)) - (p(-1, -1) + 2.0 * p(-1, 0) + p(-1, 1));
            let gy = (p(-1, 1) + 2.0 * p(0, 1) + p(1, 1)) - (p(-1, -1) + 2.0 * p(0, -1) + p(1, -1));
            let i = y * w + x;
            magnitude[i] = gx.hypot(gy);
            orientation[i] = normalize_angle(gy.atan2(gx));
        }
    }
    Ok(GradientField {
        width: w,
        height: h,
        magnitude,
        orientation,
    })
}

fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Keypoint {
    pub position: Point2,
    pub magnitude: f64,
    pub orientation: f64,
}

/// Minimum spacing between accepted keypoints: `max(2, ⌊√(W·H / 4k)⌋)`.
pub fn min_spacing(width: usize, height: usize, k: usize) -> f64 {
    let area = (width * height) as f64;
    ((area / (4.0 * k.max(1) as f64)).sqrt().floor()).max(2.0)
}

/// Greedy salience-ordered keypoint selection.
///
/// Pixels are visited by descending gradient magnitude (ties by row-major
/// index). A pixel is accepted when its magnitude is positive, it lies at
/// least [`min_spacing`] from every accepted keypoint, and its quantized
/// (orientation, magnitude) bin is still unused. Magnitude bins span
/// `[0, max magnitude]` of the image.
pub fn select_keypoints(img: &GrayImage, k: usize) -> Result<Vec<Keypoint>> {
    if k == 0 {
        return Err(Error::InvalidArgument("keypoint count must be positive".into()));
    }
    let field = gradient_field(img)?;
    let (w, h) = (field.width, field.height);
    let max_mag = field.magnitude.iter().copied().fold(0.0, f64::max);
    if max_mag <= 0.0 {
        return Ok(Vec::new());
    }
    let mut order: Vec<usize> = (0..w * h).filter(|&i| field.magnitude[i] > 0.0).collect();
    order.sort_by(|&i, &j| field.magnitude[j].total_cmp(&field.magnitude[i]).then(i.cmp(&j)));

    let d_min = min_spacing(w, h, k);
    let cell = d_min;
    let grid_w = (w as f64 / cell).ceil() as usize + 1;
    let grid_h = (h as f64 / cell).ceil() as usize + 1;
    let mut grid: Vec<Vec<Point2>> = vec![Vec::new(); grid_w * grid_h];
    let mut used = vec![false; ORIENTATION_BINS * MAGNITUDE_BINS];
    let mut out = Vec::new();

    for i in order {
        if out.len() == k {
            break;
        }
        let (mag, theta) = (field.magnitude[i], field.orientation[i]);
        let obin = ((theta / TAU * ORIENTATION_BINS as f64) as usize).min(ORIENTATION_BINS - 1);
        let mbin = ((mag / max_mag * MAGNITUDE_BINS as f64) as usize).min(MAGNITUDE_BINS - 1);
        let bin = obin * MAGNITUDE_BINS + mbin;
        if used[bin] {
            continue;
        }
        let p = Point2::new((i % w) as f64, (i / w) as f64);
        let (gx, gy) = ((p.x / cell) as usize, (p.y / cell) as usize);
        let crowded = (gy.saturating_sub(1)..=(gy + 1).min(grid_h - 1)).any(|cy| {
            (gx.saturating_sub(1)..=(gx + 1).min(grid_w - 1))
                .any(|cx| grid[cy * grid_w + cx].iter().any(|q| q.distance(p) < d_min))
        });
        if crowded {
            continue;
        }
        used[bin] = true;
        grid[gy * grid_w + gx].push(p);
        out.push(Keypoint {
            position: p,
            magnitude: mag,
            orientation: theta,
        });
    }
    Ok(out)
}
