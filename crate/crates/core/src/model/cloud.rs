use crate::error::{Error, Result};
use crate::model::metric::{euclidean, PointMetric};

/// A nonempty set of points in `R^d`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
}

impl PointCloud {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = points
            .first()
            .map(|p| p.len())
            .ok_or_else(|| Error::InvalidInput("point cloud is empty".into()))?;
        if dim == 0 {
            return Err(Error::InvalidInput(
                "points must have at least one coordinate".into(),
            ));
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "point {i} has dimension {} (expected {dim})",
                    p.len()
                )));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "point {i} has a non-finite coordinate"
                )));
            }
            coords.extend_from_slice(p);
        }
        Ok(PointCloud { dim, coords })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.coords.chunks(self.dim)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.points().map(|p| p.to_vec()).collect()
    }

    /// Sub-cloud with the given point indices, in order.
    pub fn select(&self, indices: &[usize]) -> PointCloud {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        PointCloud {
            dim: self.dim,
            coords,
        }
    }

    /// Appends the points of `other`, which must have the same dimension.
    pub fn extend(&mut self, other: &PointCloud) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::InvalidInput("dimension mismatch".into()));
        }
        self.coords.extend_from_slice(&other.coords);
        Ok(())
    }
}

impl PointMetric for PointCloud {
    fn len(&self) -> usize {
        PointCloud::len(self)
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> f64 {
        euclidean(self.point(i), self.point(j))
    }
}
