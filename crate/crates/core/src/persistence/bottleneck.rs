//! Bottleneck distance between barcodes.

use crate::error::{Error, Result};
use crate::model::{Barcode, Interval};

/// Bottleneck distance, taken degree by degree and maximized.
///
/// Finite bars are matched to finite bars or to the diagonal; open bars are
/// matched only to open bars, so the distance is infinite (an error) when
/// the open-bar counts differ in some degree.
pub fn bottleneck(a: &Barcode, b: &Barcode) -> Result<f64> {
    let max_dim = a
        .intervals()
        .iter()
        .chain(b.intervals())
        .map(|i| i.dim)
        .max();
    let Some(max_dim) = max_dim else {
        return Ok(0.0);
    };
    let mut worst: f64 = 0.0;
    for dim in 0..=max_dim {
        worst = worst.max(bottleneck_single(&a.in_dim(dim), &b.in_dim(dim))?);
    }
    Ok(worst)
}

fn split(b: &Barcode) -> (Vec<(f64, f64)>, Vec<(f64, f64)>) {
    let mut finite = Vec::new();
    let mut open = Vec::new();
    for i in b.intervals() {
        let p = (i.birth, i.death.value());
        if i.death.is_open() {
            open.push(p);
        } else {
            finite.push(p);
        }
    }
    (finite, open)
}

fn bottleneck_single(a: &Barcode, b: &Barcode) -> Result<f64> {
    let (fa, mut oa) = split(a);
    let (fb, mut ob) = split(b);
    if oa.len() != ob.len() {
        return Err(Error::InfiniteDistance {
            left: oa.len(),
            right: ob.len(),
        });
    }
    // in one dimension, sorted order gives an optimal bottleneck matching
    oa.sort_by(|x, y| x.0.total_cmp(&y.0));
    ob.sort_by(|x, y| x.0.total_cmp(&y.0));
    let open_cost = oa
        .iter()
        .zip(&ob)
        .map(|(p, q)| linf(*p, *q))
        .fold(0.0, f64::max);
    Ok(open_cost.max(finite_bottleneck(&fa, &fb)))
}

#[inline]
fn linf(p: (f64, f64), q: (f64, f64)) -> f64 {
    (p.0 - q.0).abs().max((p.1 - q.1).abs())
}

#[inline]
fn half_persistence(p: (f64, f64)) -> f64 {
    (p.1 - p.0) / 2.0
}

/// Exact bottleneck between finite diagrams: binary search over candidate
/// values, testing for a perfect matching in the diagonal-augmented
/// bipartite graph.
pub fn finite_bottleneck(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let mut candidates: Vec<f64> = Vec::with_capacity(a.len() * b.len() + a.len() + b.len() + 1);
    candidates.push(0.0);
    for &p in a {
        candidates.push(half_persistence(p));
        for &q in b {
            candidates.push(linf(p, q));
        }
    }
    candidates.extend(b.iter().map(|&q| half_persistence(q)));
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if has_perfect_matching(a, b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Left side: points of `a`, then diagonal copies of `b`. Right side: points
/// of `b`, then diagonal copies of `a`.
fn has_perfect_matching(a: &[(f64, f64)], b: &[(f64, f64)], t: f64) -> bool {
    let (m, n) = (a.len(), b.len());
    let size = m + n;
    let adjacency: Vec<Vec<usize>> = (0..size)
        .map(|l| {
            if l < m {
                let mut adj: Vec<usize> = (0..n).filter(|&j| linf(a[l], b[j]) <= t).collect();
                if half_persistence(a[l]) <= t {
                    adj.push(n + l);
                }
                adj
            } else {
                let j = l - m;
                let mut adj = Vec::new();
                if half_persistence(b[j]) <= t {
                    adj.push(j);
                }
                adj.extend(n..n + m);
                adj
            }
        })
        .collect();
    let mut match_right = vec![usize::MAX; size];
    for l in 0..size {
        let mut seen = vec![false; size];
        if !augment(l, &adjacency, &mut match_right, &mut seen) {
            return false;
        }
    }
    true
}

fn augment(
    l: usize,
    adjacency: &[Vec<usize>],
    match_right: &mut [usize],
    seen: &mut [bool],
) -> bool {
    for &r in &adjacency[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if match_right[r] == usize::MAX || augment(match_right[r], adjacency, match_right, seen) {
            match_right[r] = l;
            return true;
        }
    }
    false
}

/// Convenience for tests and examples: bars of one degree as a barcode.
pub fn finite_barcode(dim: usize, bars: &[(f64, f64)]) -> Barcode {
    Barcode::new(
        bars.iter()
            .map(|&(b, d)| Interval::finite(dim, b, d))
            .collect(),
    )
    .expect("bars must satisfy 0 <= birth <= death")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_barcodes() {
        let b = finite_barcode(1, &[(0.0, 1.0), (0.5, 3.0)]);
        assert_eq!(bottleneck(&b, &b).unwrap(), 0.0);
    }

    #[test]
    fn single_bar_against_empty() {
        assert_eq!(
            bottleneck(&finite_barcode(0, &[(1.0, 3.0)]), &Barcode::empty()).unwrap(),
            1.0
        );
    }

    #[test]
    fn shifted_birth() {
        let a = finite_barcode(0, &[(0.0, 2.0)]);
        let b = finite_barcode(0, &[(0.5, 2.0)]);
        assert_eq!(bottleneck(&a, &b).unwrap(), 0.5);
    }

    #[test]
    fn open_bar_mismatch_is_infinite() {
        let a = Barcode::new(vec![Interval::open(0, 0.0, 2.0)]).unwrap();
        assert!(matches!(
            bottleneck(&a, &Barcode::empty()),
            Err(Error::InfiniteDistance { left: 1, right: 0 })
        ));
        let b = Barcode::new(vec![Interval::open(0, 0.25, 2.0)]).unwrap();
        assert_eq!(bottleneck(&a, &b).unwrap(), 0.25);
    }

    #[test]
    fn degrees_are_compared_separately() {
        let a = finite_barcode(0, &[(0.0, 1.0)]);
        let b = finite_barcode(1, &[(0.0, 1.0)]);
        assert_eq!(bottleneck(&a, &b).unwrap(), 0.5);
    }
}
