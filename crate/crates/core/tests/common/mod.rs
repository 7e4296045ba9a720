//! Random instances and brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use reebdeco::{Barcode, DistanceMatrix, FunctionGraph, Interval, NodeMetric, PointCloud};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random spanning tree plus each remaining pair with probability `p`.
pub fn random_edges<R: Rng>(r: &mut R, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(r);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = r.gen_range(0..i);
        let (a, b) = (order[i], order[j]);
        edges.push((a.min(b), a.max(b)));
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if !edges.contains(&(a, b)) && r.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// Multiples of 1/8 in [-4, 4]: sums, differences and doubling stay exact.
pub fn dyadic<R: Rng>(r: &mut R) -> f64 {
    r.gen_range(-32i32..=32) as f64 / 8.0
}

pub fn random_graph<R: Rng>(
    r: &mut R,
    n: usize,
    p: f64,
    value: impl Fn(&mut R) -> f64,
) -> FunctionGraph {
    let edges = random_edges(r, n, p);
    let values: Vec<f64> = (0..n).map(|_| value(r)).collect();
    FunctionGraph::scalar(n, edges, &values).unwrap()
}

pub fn random_cloud<R: Rng>(r: &mut R, n: usize, dim: usize) -> PointCloud {
    PointCloud::new(
        (0..n)
            .map(|_| (0..dim).map(|_| r.gen_range(0.0..1.0)).collect())
            .collect(),
    )
    .unwrap()
}

/// Complete graph on random planar points with random scalar values.
pub fn complete_field<R: Rng>(r: &mut R, n: usize) -> FunctionGraph {
    let cloud = random_cloud(r, n, 2);
    let edges = (0..n)
        .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
        .collect();
    let values: Vec<f64> = (0..n).map(|_| r.gen_range(0.0..1.0)).collect();
    FunctionGraph::scalar(n, edges, &values)
        .unwrap()
        .with_metric(NodeMetric::Euclidean(cloud))
        .unwrap()
}

/// Partition into connected components of the subgraph of edges joining
/// equal values, labelled by first appearance.
pub fn level_set_components(graph: &FunctionGraph) -> Vec<usize> {
    let n = graph.node_count();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in graph.neighbors(v) {
                if label[w] == usize::MAX && graph.value(w) == graph.value(v) {
                    label[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    label
}

/// Relabels a partition by order of first appearance.
pub fn canonical(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let k = map.len();
            *map.entry(l).or_insert(k)
        })
        .collect()
}

/// Rank over Z/2 of a 0/1 matrix given as rows of bit vectors.
pub fn rank_z2(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c]) else {
            continue;
        };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && rows[i][c] {
                let pivot = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All simplices of the Rips complex of `metric` at scale `t`, up to
/// dimension `max_dim`, found by brute force over vertex subsets.
pub fn rips_simplices(metric: &DistanceMatrix, t: f64, max_dim: usize) -> Vec<Vec<Vec<usize>>> {
    let n = metric.size();
    let mut by_dim = vec![Vec::new(); max_dim + 1];
    for mask in 1u32..(1 << n) {
        let verts: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let d = verts.len() - 1;
        if d > max_dim {
            continue;
        }
        let ok = verts
            .iter()
            .all(|&a| verts.iter().all(|&b| metric.get(a, b) <= t));
        if ok {
            by_dim[d].push(verts);
        }
    }
    by_dim
}

/// Betti number in degree `k` of the Rips complex at scale `t`, from ranks
/// of boundary matrices.
pub fn rips_betti(metric: &DistanceMatrix, t: f64, k: usize) -> usize {
    let s = rips_simplices(metric, t, k + 1);
    let boundary_rank = |d: usize| -> usize {
        if d == 0 || s[d].is_empty() || s[d - 1].is_empty() {
            return 0;
        }
        let rows: Vec<Vec<bool>> = s[d]
            .iter()
            .map(|sigma| {
                s[d - 1]
                    .iter()
                    .map(|tau| tau.iter().all(|v| sigma.contains(v)))
                    .collect()
            })
            .collect();
        rank_z2(rows)
    };
    s[k].len() - boundary_rank(k) - boundary_rank(k + 1)
}

fn linf(a: &Interval, b: &Interval) -> f64 {
    (a.birth - b.birth)
        .abs()
        .max((a.death.value() - b.death.value()).abs())
}

/// Bottleneck distance by trying every partial matching. Open bars may only
/// be matched to open bars of the same degree.
pub fn exhaustive_bottleneck(a: &Barcode, b: &Barcode) -> f64 {
    fn go(
        i: usize,
        a: &[Interval],
        b: &[Interval],
        used: &mut Vec<bool>,
        cur: f64,
        best: &mut f64,
    ) {
        if cur >= *best {
            return;
        }
        if i == a.len() {
            let rest = b
                .iter()
                .zip(used.iter())
                .filter(|(_, &u)| !u)
                .map(|(y, _)| {
                    if y.death.is_open() {
                        f64::INFINITY
                    } else {
                        y.persistence() / 2.0
                    }
                })
                .fold(cur, f64::max);
            *best = best.min(rest);
            return;
        }
        let x = &a[i];
        if !x.death.is_open() {
            go(i + 1, a, b, used, cur.max(x.persistence() / 2.0), best);
        }
        for j in 0..b.len() {
            let y = &b[j];
            if used[j] || y.dim != x.dim || y.death.is_open() != x.death.is_open() {
                continue;
            }
            used[j] = true;
            go(i + 1, a, b, used, cur.max(linf(x, y)), best);
            used[j] = false;
        }
    }
    let mut best = f64::INFINITY;
    go(
        0,
        a.intervals(),
        b.intervals(),
        &mut vec![false; b.len()],
        0.0,
        &mut best,
    );
    best
}

/// Random barcode with up to `max_bars` bars in degree 0 and 1, `open`
/// of them essential at scale 10.
pub fn random_barcode<R: Rng>(r: &mut R, max_bars: usize, open: usize) -> Barcode {
    let count = r.gen_range(0..=max_bars.saturating_sub(open));
    let mut bars: Vec<Interval> = (0..count)
        .map(|_| {
            let b = r.gen_range(0.0..5.0);
            Interval::finite(r.gen_range(0..2), b, b + r.gen_range(0.0..3.0))
        })
        .collect();
    for _ in 0..open {
        bars.push(Interval::open(0, r.gen_range(0.0..5.0), 10.0));
    }
    Barcode::new(bars).unwrap()
}
