use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::model::DistanceMatrix;

/// Classical multidimensional scaling. Axes follow decreasing eigenvalues of
/// the double-centred squared distances; each axis is signed so its first
/// nonzero coordinate is positive. Axes beyond the positive spectrum are zero.
pub fn mds_embed(dist: &DistanceMatrix, dims: usize) -> Result<Vec<Vec<f64>>> {
    let n = dist.size();
    if dims == 0 {
        return Err(Error::InvalidInput("dims must be positive".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let sq = DMatrix::from_fn(n, n, |i, j| dist.get(i, j) * dist.get(i, j));
    let row_mean: Vec<f64> = (0..n).map(|i| sq.row(i).sum() / n as f64).collect();
    let total = row_mean.iter().sum::<f64>() / n as f64;
    let b = DMatrix::from_fn(n, n, |i, j| {
        -0.5 * (sq[(i, j)] - row_mean[i] - row_mean[j] + total)
    });
    let eig = SymmetricEigen::new(b);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        eig.eigenvalues[y]
            .total_cmp(&eig.eigenvalues[x])
            .then(x.cmp(&y))
    });
    let mut coords = vec![vec![0.0; dims]; n];
    let scale_tol = 1e-12
        * eig
            .eigenvalues
            .iter()
            .fold(0.0f64, |a, &v| a.max(v.abs()))
            .max(1.0);
    for (axis, &k) in order.iter().take(dims).enumerate() {
        let lambda = eig.eigenvalues[k];
        if lambda <= scale_tol {
            continue;
        }
        let s = lambda.sqrt();
        let col = eig.eigenvectors.column(k);
        let sign = col
            .iter()
            .find(|x| x.abs() > 1e-12)
            .map(|&x| if x < 0.0 { -1.0 } else { 1.0 })
            .unwrap_or(1.0);
        for (i, row) in coords.iter_mut().enumerate() {
            row[axis] = sign * col[i] * s;
        }
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let d = DistanceMatrix::from_rows(&[vec![0.0, 3.0], vec![3.0, 0.0]]).unwrap();
        let x = mds_embed(&d, 1).unwrap();
        assert!((x[0][0] - 1.5).abs() < 1e-12);
        assert!((x[1][0] + 1.5).abs() < 1e-12);
    }

    #[test]
    fn zero_matrix_collapses() {
        let x = mds_embed(&DistanceMatrix::zeros(3), 2).unwrap();
        assert!(x.iter().flatten().all(|&c| c == 0.0));
    }

    #[test]
    fn equilateral_triangle() {
        let d = DistanceMatrix::from_rows(&[
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap();
        let x = mds_embed(&d, 2).unwrap();
        for i in 0..3 {
            for j in (i + 1)..3 {
                let e = ((x[i][0] - x[j][0]).powi(2) + (x[i][1] - x[j][1]).powi(2)).sqrt();
                assert!((e - 1.0).abs() < 1e-9);
            }
        }
    }
}
