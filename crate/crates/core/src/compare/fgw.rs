//! Fused Gromov-Wasserstein between decorated Reeb graphs.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{DecoratedReebGraph, DistanceMatrix};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FgwConfig {
    /// Weight of the structure term; `1` is plain Gromov-Wasserstein.
    pub alpha: f64,
    /// Entropic regularization, relative to the largest entry of the
    /// linearized cost.
    pub ot_eps: f64,
    pub max_outer: usize,
    pub tol: f64,
    /// Largest size at which all permutation couplings are also tried.
    pub exhaustive_up_to: usize,
}

impl Default for FgwConfig {
    fn default() -> Self {
        FgwConfig {
            alpha: 0.5,
            ot_eps: 1e-2,
            max_outer: 500,
            tol: 1e-7,
            exhaustive_up_to: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FgwResult {
    pub value: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// One side of a comparison: structure matrix and per-node features.
#[derive(Debug, Clone, PartialEq)]
pub struct FgwInput {
    pub structure: DMatrix<f64>,
    pub features: Vec<Vec<f64>>,
}

impl FgwInput {
    /// Quotient metric and image pixels of a decorated Reeb graph. With
    /// `with_features == false` the decorations are ignored.
    pub fn from_drg(drg: &DecoratedReebGraph, with_features: bool) -> Result<Self> {
        let k = drg.class_count;
        let structure = DMatrix::from_fn(k, k, |i, j| drg.distance(i, j));
        let features = if with_features {
            drg.decorations
                .iter()
                .enumerate()
                .map(|(c, d)| {
                    d.as_ref()
                        .and_then(|d| d.as_image())
                        .map(|img| img.pixels.clone())
                        .ok_or_else(|| {
                            Error::InvalidInput(format!("class {c} has no image decoration"))
                        })
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            vec![Vec::new(); k]
        };
        Ok(FgwInput {
            structure,
            features,
        })
    }

    fn len(&self) -> usize {
        self.structure.nrows()
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| cmp_slices(self.structure.as_slice(), other.structure.as_slice()))
            .then_with(|| {
                self.features
                    .iter()
                    .zip(&other.features)
                    .map(|(a, b)| a.len().cmp(&b.len()).then_with(|| cmp_slices(a, b)))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }
}

fn cmp_slices(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(a.len().cmp(&b.len()))
}

/// FGW between image-decorated quotients with uniform node weights.
pub fn fgw(a: &DecoratedReebGraph, b: &DecoratedReebGraph, cfg: &FgwConfig) -> Result<FgwResult> {
    let with_features = cfg.alpha < 1.0;
    fgw_inputs(
        &FgwInput::from_drg(a, with_features)?,
        &FgwInput::from_drg(b, with_features)?,
        cfg,
    )
}

/// Gromov-Wasserstein between the bare quotient metrics.
pub fn gw(a: &DecoratedReebGraph, b: &DecoratedReebGraph, cfg: &FgwConfig) -> Result<FgwResult> {
    let cfg = FgwConfig { alpha: 1.0, ..*cfg };
    fgw_inputs(
        &FgwInput::from_drg(a, false)?,
        &FgwInput::from_drg(b, false)?,
        &cfg,
    )
}

/// Objective `(1 - alpha) <M, T> + alpha sum (C1_ik - C2_jl)^2 T_ij T_kl`,
/// minimized by entropic mirror descent: each step solves an entropic OT
/// problem on the linearized cost. The value reported is the smallest exact
/// objective among the iterates, the rounding of the final plan to a
/// permutation (equal sizes), and for tiny equal sizes every permutation.
/// Inputs are put in a canonical order first, so the result is symmetric.
pub fn fgw_inputs(a: &FgwInput, b: &FgwInput, cfg: &FgwConfig) -> Result<FgwResult> {
    if !(0.0..=1.0).contains(&cfg.alpha) {
        return Err(Error::InvalidInput(format!(
            "alpha must lie in [0,1], got {}",
            cfg.alpha
        )));
    }
    if !(cfg.ot_eps > 0.0) {
        return Err(Error::InvalidInput("ot_eps must be positive".into()));
    }
    let (a, b) = if a.canonical_cmp(b) == Ordering::Greater {
        (b, a)
    } else {
        (a, b)
    };
    let (n, m) = (a.len(), b.len());
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("empty graph in comparison".into()));
    }
    let feature = if cfg.alpha < 1.0 {
        let dims: Vec<usize> = a.features.iter().chain(&b.features).map(Vec::len).collect();
        if dims.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::InvalidInput(
                "decorations have different resolutions".into(),
            ));
        }
        DMatrix::from_fn(n, m, |i, j| {
            a.features[i]
                .iter()
                .zip(&b.features[j])
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt()
        })
    } else {
        DMatrix::zeros(n, m)
    };
    let problem = Problem::new(&a.structure, &b.structure, feature, cfg.alpha);

    let mut t = DMatrix::from_element(n, m, 1.0 / (n * m) as f64);
    let mut best = problem.objective(&t);
    let mut prev = best;
    let mut converged = false;
    let mut iterations = 0;
    for it in 1..=cfg.max_outer {
        iterations = it;
        let grad = problem.gradient(&t);
        t = sinkhorn_log(&grad, cfg.ot_eps);
        let value = problem.objective(&t);
        best = best.min(value);
        if (value - prev).abs() < cfg.tol {
            converged = true;
            break;
        }
        prev = value;
    }
    if n == m {
        let assignment = hungarian(&t.map(|x| -x));
        best = best.min(problem.permutation_objective(&assignment));
        if n <= cfg.exhaustive_up_to {
            best = best.min(best_permutation(&problem, n));
        }
    }
    Ok(FgwResult {
        value: best.max(0.0),
        converged,
        iterations,
    })
}

struct Problem {
    c1: DMatrix<f64>,
    c2: DMatrix<f64>,
    feature: DMatrix<f64>,
    alpha: f64,
    /// `(C1^2 p) 1^T + 1 (C2^2 q)^T`
    const_c: DMatrix<f64>,
}

impl Problem {
    fn new(c1: &DMatrix<f64>, c2: &DMatrix<f64>, feature: DMatrix<f64>, alpha: f64) -> Self {
        let (n, m) = (c1.nrows(), c2.nrows());
        let p = 1.0 / n as f64;
        let q = 1.0 / m as f64;
        let r1: Vec<f64> = (0..n)
            .map(|i| c1.row(i).iter().map(|x| x * x).sum::<f64>() * p)
            .collect();
        let r2: Vec<f64> = (0..m)
            .map(|j| c2.row(j).iter().map(|x| x * x).sum::<f64>() * q)
            .collect();
        let const_c = DMatrix::from_fn(n, m, |i, j| r1[i] + r2[j]);
        Problem {
            c1: c1.clone(),
            c2: c2.clone(),
            feature,
            alpha,
            const_c,
        }
    }

    /// `L(C1, C2) (x) T` for the squared loss.
    fn tensor(&self, t: &DMatrix<f64>) -> DMatrix<f64> {
        &self.const_c - (&self.c1 * t * self.c2.transpose()) * 2.0
    }

    fn objective(&self, t: &DMatrix<f64>) -> f64 {
        let lin = self.feature.component_mul(t).sum();
        let quad = self.tensor(t).component_mul(t).sum();
        (1.0 - self.alpha) * lin + self.alpha * quad
    }

    fn gradient(&self, t: &DMatrix<f64>) -> DMatrix<f64> {
        &self.feature * (1.0 - self.alpha) + self.tensor(t) * (2.0 * self.alpha)
    }

    fn permutation_objective(&self, perm: &[usize]) -> f64 {
        let n = perm.len();
        let w = 1.0 / n as f64;
        let lin: f64 = (0..n).map(|i| self.feature[(i, perm[i])]).sum::<f64>() * w;
        let mut quad = 0.0;
        for i in 0..n {
            for k in 0..n {
                let d = self.c1[(i, k)] - self.c2[(perm[i], perm[k])];
                quad += d * d;
            }
        }
        (1.0 - self.alpha) * lin + self.alpha * quad * w * w
    }
}

fn best_permutation(problem: &Problem, n: usize) -> f64 {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = problem.permutation_objective(&perm);
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(problem.permutation_objective(&perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

fn log_sum_exp(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = values.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + values.map(|v| (v - max).exp()).sum::<f64>().ln()
}

/// Entropic OT plan between uniform marginals, log-domain Sinkhorn with
/// regularization `rel_eps * max |cost|`.
fn sinkhorn_log(cost: &DMatrix<f64>, rel_eps: f64) -> DMatrix<f64> {
    let (n, m) = cost.shape();
    let shift = cost.min();
    let scale = (cost.max() - shift).max(1e-300);
    let eps = rel_eps * scale;
    let log_p = -(n as f64).ln();
    let log_q = -(m as f64).ln();
    let c = cost.map(|x| x - shift);
    let mut f = vec![0.0; n];
    let mut g = vec![0.0; m];
    for _ in 0..2000 {
        for (i, fi) in f.iter_mut().enumerate() {
            *fi = eps * log_p - eps * log_sum_exp((0..m).map(|j| (g[j] - c[(i, j)]) / eps));
        }
        let mut err = 0.0;
        for (j, gj) in g.iter_mut().enumerate() {
            let new = eps * log_q - eps * log_sum_exp((0..n).map(|i| (f[i] - c[(i, j)]) / eps));
            *gj = new;
        }
        for i in 0..n {
            let row: f64 = (0..m)
                .map(|j| ((f[i] + g[j] - c[(i, j)]) / eps).exp())
                .sum();
            err += (row - 1.0 / n as f64).abs();
        }
        if err < 1e-10 {
            break;
        }
    }
    DMatrix::from_fn(n, m, |i, j| ((f[i] + g[j] - c[(i, j)]) / eps).exp())
}

/// Minimum-cost perfect assignment of a square matrix (Kuhn-Munkres with
/// potentials). Returns `perm` with row `i` assigned to column `perm[i]`.
pub fn hungarian(cost: &DMatrix<f64>) -> Vec<usize> {
    let n = cost.nrows();
    assert_eq!(n, cost.ncols(), "assignment needs a square matrix");
    let inf = f64::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut col_row = vec![0usize; n + 1];
    for i in 1..=n {
        col_row[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = col_row[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[(i0 - 1, j - 1)] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[col_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if col_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            col_row[j0] = col_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut perm = vec![0; n];
    for j in 1..=n {
        if col_row[j] > 0 {
            perm[col_row[j] - 1] = j - 1;
        }
    }
    perm
}

/// Pairwise distances between all inputs, computed in parallel. Returns the
/// matrix and the number of pairs whose solver did not converge.
pub fn distance_matrix<F>(count: usize, dist: F) -> Result<(DistanceMatrix, usize)>
where
    F: Fn(usize, usize) -> Result<FgwResult> + Sync,
{
    let pairs: Vec<(usize, usize)> = (0..count)
        .flat_map(|i| ((i + 1)..count).map(move |j| (i, j)))
        .collect();
    let results: Vec<Result<FgwResult>> = pairs.par_iter().map(|&(i, j)| dist(i, j)).collect();
    let mut m = DistanceMatrix::zeros(count);
    let mut unconverged = 0;
    for (&(i, j), r) in pairs.iter().zip(results) {
        let r = r?;
        if !r.converged {
            unconverged += 1;
        }
        m.set(i, j, r.value);
    }
    Ok((m, unconverged))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(structure: &[&[f64]], features: &[&[f64]]) -> FgwInput {
        let n = structure.len();
        FgwInput {
            structure: DMatrix::from_fn(n, n, |i, j| structure[i][j]),
            features: features.iter().map(|f| f.to_vec()).collect(),
        }
    }

    #[test]
    fn singletons_use_feature_cost_only() {
        let a = input(&[&[0.0]], &[&[0.0, 0.0]]);
        let b = input(&[&[0.0]], &[&[2.0, 0.0]]);
        let r = fgw_inputs(&a, &b, &FgwConfig::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identical_inputs_are_at_distance_zero() {
        let a = input(
            &[
                &[0.0, 1.0, 2.0, 3.0],
                &[1.0, 0.0, 1.5, 2.0],
                &[2.0, 1.5, 0.0, 1.0],
                &[3.0, 2.0, 1.0, 0.0],
            ],
            &[&[0.1, 0.2], &[0.3, 0.0], &[0.0, 0.5], &[0.2, 0.2]],
        );
        let r = fgw_inputs(
            &a,
            &a,
            &FgwConfig {
                exhaustive_up_to: 0,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(r.value < 1e-6, "{}", r.value);
    }

    #[test]
    fn swapping_inputs_gives_the_same_value() {
        let a = input(&[&[0.0, 1.0], &[1.0, 0.0]], &[&[0.0], &[1.0]]);
        let b = input(
            &[&[0.0, 2.0, 1.0], &[2.0, 0.0, 1.5], &[1.0, 1.5, 0.0]],
            &[&[0.5], &[0.0], &[2.0]],
        );
        let cfg = FgwConfig::default();
        assert_eq!(
            fgw_inputs(&a, &b, &cfg).unwrap(),
            fgw_inputs(&b, &a, &cfg).unwrap()
        );
    }

    #[test]
    fn pure_gw_ignores_features_on_isometric_inputs() {
        let a = input(
            &[&[0.0, 1.0, 2.0], &[1.0, 0.0, 1.0], &[2.0, 1.0, 0.0]],
            &[&[0.0], &[0.0], &[0.0]],
        );
        let b = input(
            &[&[0.0, 1.0, 1.0], &[1.0, 0.0, 2.0], &[1.0, 2.0, 0.0]],
            &[&[5.0], &[1.0], &[3.0]],
        );
        let cfg = FgwConfig {
            alpha: 1.0,
            ..Default::default()
        };
        assert!(fgw_inputs(&a, &b, &cfg).unwrap().value < 1e-6);
    }

    #[test]
    fn hungarian_finds_optimum() {
        let c = DMatrix::from_row_slice(3, 3, &[4.0, 1.0, 3.0, 2.0, 0.0, 5.0, 3.0, 2.0, 2.0]);
        assert_eq!(hungarian(&c), vec![1, 0, 2]);
    }
}
