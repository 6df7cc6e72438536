//! Desk-scale benchmark harness.
//!
//! Random clouds are drawn uniformly from the unit cube with ChaCha8
//! (`rand_chacha::ChaCha8Rng::seed_from_u64`), so a seed names the same
//! cloud on every platform. Repeat `r` of a run with seed `S` uses seed
//! `S + r`.

use std::io::Write;
use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coboundary::Coboundary;
use crate::error::{Error, Result};
use crate::metric::{DistanceMatrix, NeighborhoodLists, PointCloud};
use crate::simplex::{canonical_cmp, Simplex};
use crate::stream::{baseline_simplex_stream, edge_stream, SimplexStream};

pub fn random_cloud(n: usize, ambient_dim: usize, seed: u64) -> PointCloud {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_cloud_with(&mut rng, n, ambient_dim)
}

fn random_cloud_with(rng: &mut ChaCha8Rng, n: usize, ambient_dim: usize) -> PointCloud {
    let points = (0..n)
        .map(|_| (0..ambient_dim).map(|_| rng.random::<f64>()).collect())
        .collect();
    PointCloud::new(points).expect("random cloud is well formed")
}

#[derive(Clone, Debug)]
pub struct StreamBenchConfig {
    pub sizes: Vec<usize>,
    pub ambient_dim: usize,
    pub dims: Vec<usize>,
    pub repeat: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StreamRow {
    pub seed: u64,
    pub n: usize,
    pub dim: usize,
    pub algorithm: &'static str,
    pub seconds: f64,
    pub simplices: usize,
    pub max_stack_depth: usize,
    pub equal: bool,
}

/// Times in-order generation against generate-then-sort for every
/// `(n, repeat, dim)`, at the enclosing radius. Both outputs are compared
/// after canonical sorting.
pub fn run_stream_bench(cfg: &StreamBenchConfig) -> Result<Vec<StreamRow>> {
    if let Some(&d) = cfg.dims.iter().find(|&&d| d < 2) {
        return Err(Error::Contract(format!(
            "stream benchmarks start at dimension 2, got {d}"
        )));
    }
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        for r in 0..cfg.repeat {
            let seed = cfg.seed.wrapping_add(r as u64);
            let m = DistanceMatrix::from_points(&random_cloud(n, cfg.ambient_dim, seed));
            let threshold = m.enclosing_radius();
            for &dim in &cfg.dims {
                let start = Instant::now();
                let nl = NeighborhoodLists::new(&m);
                let mut stream = SimplexStream::new(&m, &nl, dim, threshold, false);
                let mut inorder: Vec<Simplex> = stream.by_ref().collect();
                let inorder_secs = start.elapsed().as_secs_f64();
                let depth = stream.stats().max_stack_depth;

                let start = Instant::now();
                let colex = baseline_simplex_stream(&m, dim, threshold);
                let colex_secs = start.elapsed().as_secs_f64();

                inorder.sort_by(canonical_cmp);
                let equal = inorder == colex;
                rows.push(StreamRow {
                    seed,
                    n,
                    dim,
                    algorithm: "inorder",
                    seconds: inorder_secs,
                    simplices: inorder.len(),
                    max_stack_depth: depth,
                    equal,
                });
                rows.push(StreamRow {
                    seed,
                    n,
                    dim,
                    algorithm: "colex",
                    seconds: colex_secs,
                    simplices: colex.len(),
                    max_stack_depth: 0,
                    equal,
                });
            }
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug)]
pub struct ApparentBenchConfig {
    pub sizes: Vec<usize>,
    pub ambient_dim: usize,
    pub repeat: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApparentRow {
    pub seed: u64,
    pub n: usize,
    pub simplex: String,
    pub init_pops: u64,
    pub baseline_visits: u64,
    pub ratio: f64,
}

/// For each cloud, picks a random edge or triangle within the enclosing
/// radius and compares the queue pops needed to reach its apparent-pair
/// candidate with the `n - w` vertices a descending index scan visits.
pub fn run_apparent_bench(cfg: &ApparentBenchConfig) -> Result<Vec<ApparentRow>> {
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        if n < 2 {
            return Err(Error::Contract(
                "apparent benchmark needs at least 2 points".into(),
            ));
        }
        for r in 0..cfg.repeat {
            let seed = cfg.seed.wrapping_add(r as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = DistanceMatrix::from_points(&random_cloud_with(&mut rng, n, cfg.ambient_dim));
            let nl = NeighborhoodLists::new(&m);
            let threshold = m.enclosing_radius();
            let sigma = random_simplex(&mut rng, &m, threshold);
            let mut cob = Coboundary::new(sigma.clone(), &nl, &m, Some(threshold))?;
            cob.find_candidate();
            let stats = cob.stats();
            let mut label = String::new();
            crate::simplex::write_vertices(&mut label, sigma.vertices()).unwrap();
            rows.push(ApparentRow {
                seed,
                n,
                simplex: label,
                init_pops: stats.init_pops,
                baseline_visits: stats.baseline_visits,
                ratio: stats.init_pops as f64 / stats.baseline_visits as f64,
            });
        }
    }
    Ok(rows)
}

fn random_simplex(rng: &mut ChaCha8Rng, m: &DistanceMatrix, threshold: f64) -> Simplex {
    let edges = edge_stream(m, threshold);
    let edge = edges[rng.random_range(0..edges.len())].clone();
    if rng.random::<bool>() {
        let extra: Vec<_> = (0..m.len())
            .filter(|&w| {
                !edge.contains(w) && edge.vertices().iter().all(|&u| m.get(u, w) <= threshold)
            })
            .collect();
        if !extra.is_empty() {
            let w = extra[rng.random_range(0..extra.len())];
            return edge.with_vertex(w, m).expect("w is new");
        }
    }
    edge
}

pub fn write_csv<W: Write, R: Serialize>(out: W, rows: &[R]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clouds_are_reproducible() {
        assert_eq!(random_cloud(10, 3, 42), random_cloud(10, 3, 42));
        assert_ne!(random_cloud(10, 3, 42), random_cloud(10, 3, 43));
        let c = random_cloud(20, 5, 1);
        assert!(c.points().flatten().all(|&x| (0.0..1.0).contains(&x)));
    }

    #[test]
    fn stream_bench_rows() {
        let cfg = StreamBenchConfig {
            sizes: vec![8, 10],
            ambient_dim: 2,
            dims: vec![2, 3],
            repeat: 2,
            seed: 7,
        };
        let rows = run_stream_bench(&cfg).unwrap();
        assert_eq!(rows.len(), 2 * 2 * 2 * 2);
        assert!(rows.iter().all(|r| r.equal));
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("seed,n,dim,algorithm,seconds,simplices,max_stack_depth,equal\n"));
        assert_eq!(text.lines().count(), rows.len() + 1);
    }

    #[test]
    fn apparent_bench_ratio() {
        let cfg = ApparentBenchConfig {
            sizes: vec![25],
            ambient_dim: 5,
            repeat: 1,
            seed: 1,
        };
        let rows = run_apparent_bench(&cfg).unwrap();
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert_eq!(r.ratio, r.init_pops as f64 / r.baseline_visits as f64);
    }
}
