//! Column reduction of the boundary matrix over Z/2, with clearing.

use std::collections::HashMap;

use crate::model::{Barcode, Interval};
use crate::persistence::filtration::FilteredComplex;

const NONE: u32 = u32::MAX;

/// A persistence pair in filtration values; `death == None` for classes
/// still alive at the end of the filtration. Zero-length pairs included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistencePair {
    pub dim: usize,
    pub birth: f64,
    pub death: Option<f64>,
}

fn binomial_table(n: usize, k: usize) -> Vec<Vec<u128>> {
    let mut t = vec![vec![0u128; k + 1]; n + 1];
    for row in t.iter_mut() {
        row[0] = 1;
    }
    for i in 1..=n {
        for j in 1..=k.min(i) {
            t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
        }
    }
    t
}

fn simplex_key(vertices: &[u32], binom: &[Vec<u128>]) -> u128 {
    vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| binom[v as usize][i + 1])
        .sum()
}

fn symmetric_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Persistence pairs in homological degrees `lo..=hi`. Requires
/// `hi < complex.max_dim` so that every degree-`hi` class can die.
pub fn persistence_pairs(complex: &FilteredComplex, lo: usize, hi: usize) -> Vec<PersistencePair> {
    assert!(
        lo <= hi && hi < complex.max_dim.max(1),
        "degrees {lo}..={hi} need max_dim > {hi}"
    );
    let simplices = &complex.simplices;
    let total = simplices.len();
    let max_vertex = simplices
        .iter()
        .flat_map(|s| s.vertices.iter())
        .copied()
        .max()
        .unwrap_or(0) as usize;
    let binom = binomial_table(max_vertex + 1, hi + 2);
    let mut index: HashMap<u128, u32> = HashMap::new();
    for (i, s) in simplices.iter().enumerate() {
        let d = s.dim();
        if d + 1 >= lo.max(1) && d <= hi {
            // faces of every reduced column; the dimension tag keeps keys unique
            index.insert(
                simplex_key(&s.vertices, &binom) * (hi as u128 + 2) + d as u128,
                i as u32,
            );
        }
    }
    let lookup = |verts: &[u32]| -> u32 {
        let d = verts.len() - 1;
        index[&(simplex_key(verts, &binom) * (hi as u128 + 2) + d as u128)]
    };

    let mut pivot_col = vec![NONE; total];
    let mut columns: Vec<Vec<u32>> = Vec::new();
    let mut cleared = vec![false; total];
    let mut zero_column = vec![false; total];
    let mut pairs = Vec::new();

    for d in (lo.max(1)..=hi + 1).rev() {
        for idx in 0..total {
            let s = &simplices[idx];
            if s.dim() != d || cleared[idx] {
                continue;
            }
            let mut col: Vec<u32> = (0..s.vertices.len())
                .map(|skip| {
                    let face: smallvec::SmallVec<[u32; 4]> = s
                        .vertices
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    lookup(&face)
                })
                .collect();
            col.sort_unstable();
            while let Some(&pivot) = col.last() {
                let owner = pivot_col[pivot as usize];
                if owner == NONE {
                    break;
                }
                col = symmetric_difference(&col, &columns[owner as usize]);
            }
            match col.last() {
                Some(&pivot) => {
                    let pivot = pivot as usize;
                    cleared[pivot] = true;
                    if d > lo {
                        pairs.push(PersistencePair {
                            dim: d - 1,
                            birth: simplices[pivot].value,
                            death: Some(s.value),
                        });
                    }
                    pivot_col[pivot] = columns.len() as u32;
                    columns.push(col);
                }
                None => zero_column[idx] = true,
            }
        }
    }
    for (idx, s) in simplices.iter().enumerate() {
        let d = s.dim();
        if d < lo || d > hi || cleared[idx] {
            continue;
        }
        if d == 0 || zero_column[idx] {
            pairs.push(PersistencePair {
                dim: d,
                birth: s.value,
                death: None,
            });
        }
    }
    pairs
}

/// Degree-`k` barcode; zero-length bars are dropped and surviving classes
/// are reported open at the truncation scale.
pub fn reduce_and_extract(complex: &FilteredComplex, k: usize) -> Barcode {
    barcode_range(complex, k, k)
}

/// Barcode in every degree below `max_dim`.
pub fn reduce_all(complex: &FilteredComplex) -> Barcode {
    barcode_range(complex, 0, complex.max_dim.max(1) - 1)
}

fn barcode_range(complex: &FilteredComplex, lo: usize, hi: usize) -> Barcode {
    let mut intervals: Vec<Interval> = persistence_pairs(complex, lo, hi)
        .into_iter()
        .filter_map(|p| match p.death {
            Some(d) if d > p.birth => Some(Interval::finite(p.dim, p.birth, d)),
            Some(_) => None,
            None => Some(Interval::open(p.dim, p.birth, complex.r_max)),
        })
        .collect();
    intervals.sort_by(|a, b| {
        a.dim
            .cmp(&b.dim)
            .then(a.birth.total_cmp(&b.birth))
            .then(a.death.is_open().cmp(&b.death.is_open()))
            .then(a.death.value().total_cmp(&b.death.value()))
    });
    Barcode::new(intervals).expect("filtration values are finite and ordered")
}
