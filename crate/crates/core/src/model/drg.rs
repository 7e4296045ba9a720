use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::barcode::Barcode;
use crate::model::metric::CondensedMatrix;

/// Gaussian-smoothed birth/persistence grid.
///
/// Row `r` covers persistence bin `r` (low to high), column `c` covers birth
/// bin `c`; `pixels` is row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PersistenceImage {
    pub resolution: (usize, usize),
    pub birth_range: (f64, f64),
    pub pers_range: (f64, f64),
    pub sigma: f64,
    pub pixels: Vec<f64>,
}

impl PersistenceImage {
    pub fn validate(&self) -> Result<()> {
        let (rows, cols) = self.resolution;
        if self.pixels.len() != rows * cols {
            return Err(Error::Schema(format!(
                "image has {} pixels, resolution {rows}x{cols}",
                self.pixels.len()
            )));
        }
        if self.pixels.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::Schema(
                "image pixels must be finite and nonnegative".into(),
            ));
        }
        if !(self.sigma > 0.0) {
            return Err(Error::Schema("image sigma must be positive".into()));
        }
        Ok(())
    }

    pub fn total_mass(&self) -> f64 {
        self.pixels.iter().sum()
    }

    pub fn l2_distance(&self, other: &PersistenceImage) -> f64 {
        self.pixels
            .iter()
            .zip(&other.pixels)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decoration {
    Barcode(Barcode),
    Image(PersistenceImage),
}

impl Decoration {
    pub fn as_barcode(&self) -> Option<&Barcode> {
        match self {
            Decoration::Barcode(b) => Some(b),
            Decoration::Image(_) => None,
        }
    }

    pub fn as_image(&self) -> Option<&PersistenceImage> {
        match self {
            Decoration::Image(i) => Some(i),
            Decoration::Barcode(_) => None,
        }
    }
}

/// Parameters a decorated Reeb graph was built with.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DrgParams {
    pub epsilon: f64,
    pub round_step: Option<f64>,
    pub lambda: Option<f64>,
    pub c: Option<f64>,
    pub k: Option<usize>,
    pub r_max: Option<f64>,
}

/// Quotient of a function graph by Reeb (or smoothed Reeb) equivalence,
/// metrized through class representatives, with optional per-class
/// decorations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecoratedReebGraph {
    #[serde(rename = "classes")]
    pub class_count: usize,
    pub representative: Vec<usize>,
    pub class_of: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub metric: CondensedMatrix,
    pub decorations: Vec<Option<Decoration>>,
    pub params: DrgParams,
}

impl DecoratedReebGraph {
    pub fn distance(&self, a: usize, b: usize) -> f64 {
        self.metric.get(self.class_count, a, b)
    }

    pub fn members(&self, class: usize) -> Vec<usize> {
        self.class_of
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == class)
            .map(|(v, _)| v)
            .collect()
    }

    /// Class partition as sorted member lists, ordered by smallest member.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.class_count];
        for (v, &c) in self.class_of.iter().enumerate() {
            parts[c].push(v);
        }
        parts.sort();
        parts
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.class_count;
        if k == 0 {
            return Err(Error::Schema(
                "a decorated Reeb graph needs at least one class".into(),
            ));
        }
        if self.representative.len() != k || self.decorations.len() != k {
            return Err(Error::Schema(
                "per-class arrays must have one entry per class".into(),
            ));
        }
        let mut hit = vec![false; k];
        for (v, &c) in self.class_of.iter().enumerate() {
            if c >= k {
                return Err(Error::Schema(format!("node {v} maps to missing class {c}")));
            }
            hit[c] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(Error::Schema("class_of is not surjective".into()));
        }
        for (c, &r) in self.representative.iter().enumerate() {
            if self.class_of.get(r) != Some(&c) {
                return Err(Error::Schema(format!(
                    "representative of class {c} is not a member"
                )));
            }
        }
        if self.metric.as_slice().len() != k * (k - 1) / 2 {
            return Err(Error::Schema(
                "metric has the wrong condensed length".into(),
            ));
        }
        if self
            .metric
            .as_slice()
            .iter()
            .any(|d| !(d.is_finite() && *d >= 0.0))
        {
            return Err(Error::Schema(
                "metric entries must be finite and nonnegative".into(),
            ));
        }
        for &(a, b) in &self.edges {
            if a >= k || b >= k || a == b {
                return Err(Error::Schema(format!("invalid quotient edge [{a},{b}]")));
            }
        }
        for d in self.decorations.iter().flatten() {
            if let Decoration::Image(img) = d {
                img.validate()?;
            }
        }
        Ok(())
    }
}
