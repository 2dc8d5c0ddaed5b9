//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use contourgraph::shapes::Point;
use contourgraph::{Contour, ThresholdGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const INF: usize = usize::MAX;

pub fn random_graph(seed: u64, max_n: usize) -> ThresholdGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n);
    let p: f64 = rng.gen_range(0.0..1.0);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    ThresholdGraph::from_edges(n, &edges)
}

pub fn adjacency(g: &ThresholdGraph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut a = vec![vec![false; n]; n];
    for (i, j) in g.edges() {
        a[i][j] = true;
        a[j][i] = true;
    }
    a
}

pub fn floyd(g: &ThresholdGraph) -> Vec<Vec<usize>> {
    let n = g.n();
    let a = adjacency(g);
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if a[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != INF && d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn degrees(g: &ThresholdGraph) -> Vec<usize> {
    adjacency(g).iter().map(|r| r.iter().filter(|&&x| x).count()).collect()
}

/// Per-node clustering from explicit neighbour triples.
pub fn clustering(g: &ThresholdGraph) -> Vec<f64> {
    let a = adjacency(g);
    let n = g.n();
    (0..n)
        .map(|i| {
            let nb: Vec<usize> = (0..n).filter(|&j| a[i][j]).collect();
            let k = nb.len();
            if k < 2 {
                return 0.0;
            }
            let mut links = 0;
            for x in 0..k {
                for y in x + 1..k {
                    if a[nb[x]][nb[y]] {
                        links += 1;
                    }
                }
            }
            2.0 * links as f64 / (k * (k - 1)) as f64
        })
        .collect()
}

pub fn sorted_mean(v: &[f64]) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    s.iter().sum::<f64>() / s.len() as f64
}

/// Mean over ordered pairs; missing paths cost `n`.
pub fn path_length(g: &ThresholdGraph) -> f64 {
    let n = g.n();
    if n < 2 {
        return 0.0;
    }
    let d = floyd(g);
    let mut total = 0usize;
    for (i, row) in d.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if i != j {
                total += if x == INF { n } else { x };
            }
        }
    }
    total as f64 / (n * (n - 1)) as f64
}

/// Pearson correlation of endpoint degrees over both orientations of
/// every edge, in exact integer arithmetic.
pub fn assortativity(g: &ThresholdGraph) -> f64 {
    let k = degrees(g);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (i, j) in g.edges() {
        xs.push(k[i] as i128);
        ys.push(k[j] as i128);
        xs.push(k[j] as i128);
        ys.push(k[i] as i128);
    }
    let m = xs.len() as i128;
    if m == 0 {
        return 0.0;
    }
    let sx: i128 = xs.iter().sum();
    let sy: i128 = ys.iter().sum();
    let sxy: i128 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let sxx: i128 = xs.iter().map(|x| x * x).sum();
    let num = m * sxy - sx * sy;
    let den = m * sxx - sx * sx;
    if den == 0 {
        return 0.0;
    }
    num as f64 / den as f64
}

fn geodesics(a: &[Vec<bool>], d: &[Vec<usize>], s: usize, t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let v = *path.last().unwrap();
    if v == t {
        out.push(path.clone());
        return;
    }
    for w in 0..a.len() {
        if a[v][w] && d[s][w] == d[s][v] + 1 && d[w][t] != INF && d[s][w] + d[w][t] == d[s][t] {
            path.push(w);
            geodesics(a, d, s, t, path, out);
            path.pop();
        }
    }
}

/// Betweenness by listing every shortest path of every ordered pair.
pub fn betweenness(g: &ThresholdGraph) -> Vec<f64> {
    let n = g.n();
    let a = adjacency(g);
    let d = floyd(g);
    let mut b = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            if s == t || d[s][t] == INF {
                continue;
            }
            let mut paths = Vec::new();
            geodesics(&a, &d, s, t, &mut vec![s], &mut paths);
            let mut hits = vec![0usize; n];
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    hits[v] += 1;
                }
            }
            for v in 0..n {
                b[v] += hits[v] as f64 / paths.len() as f64;
            }
        }
    }
    b.iter().map(|x| x / (n * n) as f64).collect()
}

/// Sum of degrees of the nodes exactly `h - 1` hops away.
pub fn ring_degree(g: &ThresholdGraph, h: usize) -> Vec<u64> {
    let d = floyd(g);
    let k = degrees(g);
    (0..g.n())
        .map(|i| (0..g.n()).filter(|&j| d[i][j] == h - 1).map(|j| k[j] as u64).sum())
        .collect()
}

/// Star-like closed contour with random radial jitter; points are distinct.
pub fn random_contour(seed: u64, n: usize) -> Contour {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lobes = rng.gen_range(2..7) as f64;
    let depth: f64 = rng.gen_range(0.0..0.5);
    let scale: f64 = rng.gen_range(5.0..100.0);
    let pts = (0..n)
        .map(|i| {
            let th = std::f64::consts::TAU * i as f64 / n as f64;
            let r = scale * (1.0 + depth * (lobes * th).sin()) * rng.gen_range(0.9..1.1);
            Point::new(r * th.cos() + 3.0, r * th.sin() - 7.0)
        })
        .collect();
    Contour::new(pts).unwrap()
}
