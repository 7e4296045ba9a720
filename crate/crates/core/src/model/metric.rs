use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for metric axiom checks on user supplied matrices.
pub const METRIC_TOLERANCE: f64 = 1e-9;

/// A finite metric on points `0..len()`.
pub trait PointMetric: Sync {
    fn len(&self) -> usize;

    fn dist(&self, i: usize, j: usize) -> f64;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn diameter(&self) -> f64 {
        let n = self.len();
        let mut diam: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                diam = diam.max(self.dist(i, j));
            }
        }
        diam
    }
}

/// Distance between two values of a field in the codomain `M`.
pub trait ValueMetric: Sync {
    fn distance(&self, a: &[f64], b: &[f64]) -> f64;
}

/// Euclidean metric on `R^m`. For `m = 1` this is exactly `|a - b|`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Euclidean;

impl ValueMetric for Euclidean {
    #[inline]
    fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        euclidean(a, b)
    }
}

impl<F> ValueMetric for F
where
    F: Fn(&[f64], &[f64]) -> f64 + Sync,
{
    fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        self(a, b)
    }
}

#[inline]
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    if a.len() == 1 {
        return (a[0] - b[0]).abs();
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Dense symmetric distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn zeros(n: usize) -> Self {
        DistanceMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Builds a matrix from rows without validation beyond shape.
    pub fn from_rows_unchecked(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Schema(format!(
                    "metric row {i} has length {} (expected {n})",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(DistanceMatrix { n, data })
    }

    /// Builds a matrix from rows and checks the metric axioms up to
    /// [`METRIC_TOLERANCE`].
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = Self::from_rows_unchecked(rows)?;
        m.validate()?;
        Ok(m)
    }

    pub fn from_metric<M: PointMetric + ?Sized>(metric: &M) -> Self {
        let n = metric.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in (i + 1)..n {
                m.set(i, j, metric.dist(i, j));
            }
        }
        m
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            if self.get(i, i).abs() > METRIC_TOLERANCE {
                return Err(Error::Schema(format!(
                    "metric diagonal entry {i} is nonzero"
                )));
            }
            for j in 0..n {
                let d = self.get(i, j);
                if !d.is_finite() || d < -METRIC_TOLERANCE {
                    return Err(Error::Schema(format!(
                        "metric entry ({i},{j}) = {d} is invalid"
                    )));
                }
                if (d - self.get(j, i)).abs() > METRIC_TOLERANCE {
                    return Err(Error::Schema(format!(
                        "metric is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let dij = self.get(i, j);
                for k in 0..n {
                    if self.get(i, k) > dij + self.get(j, k) + METRIC_TOLERANCE {
                        return Err(Error::Schema(format!(
                            "triangle inequality fails for ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, d: f64) {
        self.data[i * self.n + j] = d;
        self.data[j * self.n + i] = d;
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

impl PointMetric for DistanceMatrix {
    fn len(&self) -> usize {
        self.n
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> f64 {
        self.get(i, j)
    }
}

/// Restriction of a metric to a subset of its points.
pub struct SubMetric<'a, M: ?Sized> {
    pub parent: &'a M,
    pub indices: &'a [usize],
}

impl<M: PointMetric + ?Sized> PointMetric for SubMetric<'_, M> {
    fn len(&self) -> usize {
        self.indices.len()
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> f64 {
        self.parent.dist(self.indices[i], self.indices[j])
    }
}

/// Upper-triangular storage of a symmetric matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CondensedMatrix {
    data: Vec<f64>,
}

impl CondensedMatrix {
    pub fn zeros(n: usize) -> Self {
        CondensedMatrix {
            data: vec![0.0; n * n.saturating_sub(1) / 2],
        }
    }

    pub fn from_vec(data: Vec<f64>) -> Self {
        CondensedMatrix { data }
    }

    /// Number of points `n` such that `n (n - 1) / 2 == len`, if any.
    pub fn points(&self) -> Option<usize> {
        let len = self.data.len();
        let mut n = 1;
        while n * (n - 1) / 2 < len {
            n += 1;
        }
        (n * (n - 1) / 2 == len).then_some(n)
    }

    #[inline]
    fn index(n: usize, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn get(&self, n: usize, i: usize, j: usize) -> f64 {
        if i == j {
            0.0
        } else {
            self.data[Self::index(n, i, j)]
        }
    }

    pub fn set(&mut self, n: usize, i: usize, j: usize, v: f64) {
        assert_ne!(i, j, "diagonal of a condensed matrix is fixed at zero");
        self.data[Self::index(n, i, j)] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_square(&self, n: usize) -> DistanceMatrix {
        let mut m = DistanceMatrix::zeros(n);
        for i in 0..n {
            for j in (i + 1)..n {
                m.set(i, j, self.get(n, i, j));
            }
        }
        m
    }
}
