//! The framed little 2-disks operad: elements as tuples of affine embeddings
//! `z -> a*z + b` of the closed unit disk with disjoint images, composition
//! by substitution, the action on point configurations, and the symbolic
//! action on surface invariants.
//!
//! The framing is carried by the complex scale (rotation and dilation
//! together). Geometry is checked with a fixed tolerance; the surface-level
//! action is exact integer Euler-characteristic bookkeeping.

use num_complex::Complex64;
use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::invariants::genus_dm;

/// Slack applied to the strict validity inequalities.
pub const VALIDITY_TOLERANCE: f64 = 1e-9;

/// One embedding `z -> scale*z + offset` with `scale != 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub scale: Complex64,
    pub offset: Complex64,
}

impl AffineMap {
    pub fn new(scale: Complex64, offset: Complex64) -> Self {
        AffineMap { scale, offset }
    }

    pub fn identity() -> Self {
        AffineMap {
            scale: Complex64::new(1.0, 0.0),
            offset: Complex64::new(0.0, 0.0),
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.scale * z + self.offset
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap {
            scale: self.scale * inner.scale,
            offset: self.scale * inner.offset + self.offset,
        }
    }
}

/// Why an element fails validity, if it does.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Validity {
    Valid,
    /// Disk `slot` leaves the unit disk by `excess`.
    NotContained {
        slot: usize,
        excess: f64,
    },
    /// Disks `first` and `second` overlap; `gap` is the (non-positive up to
    /// tolerance) distance between them.
    Overlapping {
        first: usize,
        second: usize,
        gap: f64,
    },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// An element of the framed little 2-disks operad in arity `maps.len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct FramedDisksElement {
    maps: Vec<AffineMap>,
}

impl FramedDisksElement {
    pub fn new(maps: Vec<AffineMap>) -> Self {
        FramedDisksElement { maps }
    }

    /// The operad identity: arity one, the identity embedding.
    pub fn identity() -> Self {
        FramedDisksElement {
            maps: vec![AffineMap::identity()],
        }
    }

    pub fn arity(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[AffineMap] {
        &self.maps
    }

    /// Checks containment `|b_i| + |a_i| <= 1` and pairwise disjointness
    /// `|b_i - b_j| > |a_i| + |a_j|`, both up to [`VALIDITY_TOLERANCE`].
    pub fn validate(&self) -> Validity {
        for (i, m) in self.maps.iter().enumerate() {
            let reach = m.offset.norm() + m.scale.norm();
            if reach > 1.0 + VALIDITY_TOLERANCE {
                return Validity::NotContained {
                    slot: i,
                    excess: reach - 1.0,
                };
            }
        }
        for i in 0..self.maps.len() {
            for j in (i + 1)..self.maps.len() {
                let centers = (self.maps[i].offset - self.maps[j].offset).norm();
                let radii = self.maps[i].scale.norm() + self.maps[j].scale.norm();
                if centers - radii <= VALIDITY_TOLERANCE {
                    return Validity::Overlapping {
                        first: i,
                        second: j,
                        gap: centers - radii,
                    };
                }
            }
        }
        Validity::Valid
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Operad composition: substitutes `parts[i]` into the `i`-th disk.
    /// The result has arity `sum_i arity(parts[i])`.
    pub fn compose(&self, parts: &[FramedDisksElement]) -> Result<FramedDisksElement> {
        if parts.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                actual: parts.len(),
            });
        }
        let mut maps = Vec::with_capacity(parts.iter().map(|p| p.arity()).sum());
        for (outer, part) in self.maps.iter().zip(parts) {
            for inner in &part.maps {
                maps.push(outer.compose(inner));
            }
        }
        Ok(FramedDisksElement { maps })
    }
}

impl Serialize for FramedDisksElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<[f64; 4]> = self
            .maps
            .iter()
            .map(|m| [m.scale.re, m.scale.im, m.offset.re, m.offset.im])
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FramedDisksElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<[f64; 4]>::deserialize(deserializer)?;
        let maps = rows
            .into_iter()
            .map(|[sre, sim, ore, oim]| {
                let scale = Complex64::new(sre, sim);
                if scale.norm() == 0.0 {
                    return Err(D::Error::custom("zero scale in framed disks element"));
                }
                Ok(AffineMap::new(scale, Complex64::new(ore, oim)))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(FramedDisksElement { maps })
    }
}

/// An unordered tuple of distinct points in the open unit disk.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    points: Vec<Complex64>,
}

impl Configuration {
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        for (i, z) in points.iter().enumerate() {
            if z.norm() >= 1.0 {
                return Err(Error::InvalidParameter(format!(
                    "configuration point {i} is not strictly inside the unit disk"
                )));
            }
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(Error::InvalidParameter(format!(
                        "configuration points {i} and {j} coincide"
                    )));
                }
            }
        }
        Ok(Configuration { points })
    }

    pub fn empty() -> Self {
        Configuration { points: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }
}

/// The operad action on configurations: each configuration is pushed through
/// its disk and the images are merged. Cardinalities add exactly.
pub fn act_on_configurations(
    f: &FramedDisksElement,
    configs: &[Configuration],
) -> Result<Configuration> {
    if configs.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            actual: configs.len(),
        });
    }
    let mut points = Vec::with_capacity(configs.iter().map(|c| c.len()).sum());
    for (map, config) in f.maps().iter().zip(configs) {
        points.extend(config.points().iter().map(|&z| map.apply(z)));
    }
    Configuration::new(points)
}

/// A surface operand for the symbolic operad action: either `d` bare disks
/// (the arity-zero filler) or a connected surface with `d` boundary circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceOperand {
    Disks { boundary: usize },
    Surface { genus: usize, boundary: usize },
}

impl SurfaceOperand {
    pub fn boundary(&self) -> usize {
        match *self {
            SurfaceOperand::Disks { boundary } => boundary,
            SurfaceOperand::Surface { boundary, .. } => boundary,
        }
    }

    pub fn euler(&self) -> i64 {
        match *self {
            SurfaceOperand::Disks { boundary } => boundary as i64,
            SurfaceOperand::Surface { genus, boundary } => 2 - 2 * genus as i64 - boundary as i64,
        }
    }
}

/// The operad action on surfaces, computed through Euler characteristics:
/// gluing `k` operands with `d` boundary circles each onto the `d` pair-of-
/// pants-like pieces cut out by `f` gives
/// `chi_out = sum_i chi_i + d*(1 - k)` and again `d` boundary circles.
/// Disks glue away without effect; all-disk input returns disks.
pub fn act_on_surfaces(
    f: &FramedDisksElement,
    operands: &[SurfaceOperand],
) -> Result<SurfaceOperand> {
    if operands.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            actual: operands.len(),
        });
    }
    let k = operands.len();
    if k == 0 {
        return Err(Error::InvalidParameter(
            "surface action needs arity >= 1".to_string(),
        ));
    }
    let d = operands[0].boundary();
    if d == 0 {
        return Err(Error::InvalidParameter(
            "operands need at least one boundary".to_string(),
        ));
    }
    if operands.iter().any(|op| op.boundary() != d) {
        return Err(Error::InvalidParameter(
            "operands must share one boundary multiplicity".to_string(),
        ));
    }
    if operands
        .iter()
        .all(|op| matches!(op, SurfaceOperand::Disks { .. }))
    {
        return Ok(SurfaceOperand::Disks { boundary: d });
    }
    let chi_out: i64 =
        operands.iter().map(|op| op.euler()).sum::<i64>() + d as i64 * (1 - k as i64);
    let doubled_genus = 2 - d as i64 - chi_out;
    assert!(
        doubled_genus >= 0 && doubled_genus % 2 == 0,
        "invalid glued Euler characteristic"
    );
    Ok(SurfaceOperand::Surface {
        genus: (doubled_genus / 2) as usize,
        boundary: d,
    })
}

/// The surface a configuration of `d*m` points corresponds to under the
/// `d`-fold covering family: `d` bare disks for `m = 0`, otherwise the cover
/// with genus `g(d, m)` and `d` boundary circles.
pub fn predicted_surface(d: u64, m: u64) -> Result<SurfaceOperand> {
    if m == 0 {
        return Ok(SurfaceOperand::Disks {
            boundary: d as usize,
        });
    }
    Ok(SurfaceOperand::Surface {
        genus: genus_dm(d, m)? as usize,
        boundary: d as usize,
    })
}

/// Samples a uniformly-spread valid element of the given arity: disk centers
/// on a jittered ring with radii well below both the containment and the
/// disjointness bounds. The validity margins stay far above
/// [`VALIDITY_TOLERANCE`].
pub fn sample_valid_element<R: Rng + ?Sized>(rng: &mut R, arity: usize) -> FramedDisksElement {
    let rotation = |rng: &mut R| {
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        Complex64::new(theta.cos(), theta.sin())
    };
    let maps = match arity {
        0 => Vec::new(),
        1 => {
            let radius = rng.random_range(0.2..0.8);
            let center = rng.random_range(0.0..0.8) * (1.0 - radius);
            vec![AffineMap::new(
                radius * rotation(rng),
                center * rotation(rng),
            )]
        }
        k => {
            let ring = rng.random_range(0.45..0.62);
            let phase = rng.random_range(0.0..1.0);
            let slot_max = 0.8 * (ring * (std::f64::consts::PI / k as f64).sin()).min(1.0 - ring);
            (0..k)
                .map(|i| {
                    let angle = std::f64::consts::TAU * (i as f64 + phase) / k as f64;
                    let center = ring * Complex64::new(angle.cos(), angle.sin());
                    let radius = rng.random_range(0.25..0.95) * slot_max;
                    AffineMap::new(radius * rotation(rng), center)
                })
                .collect()
        }
    };
    let element = FramedDisksElement::new(maps);
    debug_assert!(element.is_valid());
    element
}

/// Samples `size` distinct points on a spiral inside the unit disk.
pub fn sample_configuration<R: Rng + ?Sized>(rng: &mut R, size: usize) -> Configuration {
    let phase = rng.random_range(0.0..std::f64::consts::TAU);
    let points = (0..size)
        .map(|t| {
            let radius = 0.05 + 0.9 * (t as f64 + rng.random_range(0.1..0.9)) / (size as f64 + 1.0);
            let angle = phase + 2.399963229728653 * t as f64;
            Complex64::new(radius * angle.cos(), radius * angle.sin())
        })
        .collect();
    Configuration::new(points).expect("spiral points are distinct and contained")
}
