//! Brute-force reference answers.
//!
//! Nothing here touches neighborhood lists, cached lead edges or the case
//! analysis: every diameter comes from a full pair scan over the matrix.
//! Meant for small inputs (tens of points).

use crate::metric::DistanceMatrix;
use crate::simplex::{canonical_cmp, Edge, Simplex, Vertex};

/// Max pairwise distance, by exhaustive scan.
pub fn brute_diameter(vertices: &[Vertex], m: &DistanceMatrix) -> f64 {
    let mut d = 0.0_f64;
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[..i] {
            d = d.max(m.get(a, b));
        }
    }
    d
}

/// First full-length edge `[s, t]`, `s > t`, minimizing `(s, t)`.
pub fn brute_lead_edge(vertices: &[Vertex], m: &DistanceMatrix) -> Option<Edge> {
    let diam = brute_diameter(vertices, m);
    let mut best: Option<(Vertex, Vertex)> = None;
    for &a in vertices {
        for &b in vertices {
            if a > b && m.get(a, b) == diam && best.is_none_or(|e| (a, b) < e) {
                best = Some((a, b));
            }
        }
    }
    best.map(|(s, t)| Edge { s, t, length: diam })
}

fn brute_simplex(mut vertices: Vec<Vertex>, m: &DistanceMatrix) -> Simplex {
    vertices.sort_unstable_by(|a, b| b.cmp(a));
    let diameter = brute_diameter(&vertices, m);
    let lead = brute_lead_edge(&vertices, m);
    Simplex::from_parts(vertices, diameter, lead)
}

fn for_each_subset(n: usize, size: usize, mut f: impl FnMut(&[Vertex])) {
    fn rec(
        start: usize,
        n: usize,
        size: usize,
        buf: &mut Vec<Vertex>,
        f: &mut impl FnMut(&[Vertex]),
    ) {
        if buf.len() == size {
            f(buf);
            return;
        }
        for v in start..n {
            buf.push(v);
            rec(v + 1, n, size, buf, f);
            buf.pop();
        }
    }
    rec(0, n, size, &mut Vec::with_capacity(size), &mut f);
}

/// Every `dim`-simplex with diameter `<= threshold`, canonically sorted.
pub fn brute_simplices(m: &DistanceMatrix, dim: usize, threshold: f64) -> Vec<Simplex> {
    let mut out = Vec::new();
    for_each_subset(m.len(), dim + 1, |vs| {
        if brute_diameter(vs, m) <= threshold {
            out.push(brute_simplex(vs.to_vec(), m));
        }
    });
    out.sort_by(canonical_cmp);
    out
}

/// Every `(w, diam(sigma + w))` within `threshold`, sorted by diameter then vertex.
pub fn brute_cofacets(sigma: &Simplex, m: &DistanceMatrix, threshold: f64) -> Vec<(Vertex, f64)> {
    let mut out: Vec<(Vertex, f64)> = (0..m.len())
        .filter(|w| !sigma.vertices().contains(w))
        .map(|w| {
            let mut vs = sigma.vertices().to_vec();
            vs.push(w);
            (w, brute_diameter(&vs, m))
        })
        .filter(|&(_, d)| d <= threshold)
        .collect();
    out.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    out
}

/// Among the facets of `tau` with `tau`'s diameter, the lexicographically
/// smallest decreasing vertex tuple.
pub fn brute_first_full_diameter_facet(tau: &Simplex, m: &DistanceMatrix) -> Simplex {
    let diam = brute_diameter(tau.vertices(), m);
    let vs = tau.vertices();
    (0..vs.len())
        .map(|skip| {
            vs.iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect::<Vec<_>>()
        })
        .filter(|f| brute_diameter(f, m) == diam)
        .min()
        .map(|f| brute_simplex(f, m))
        .expect("some facet keeps the diameter")
}

/// Every apparent pair `(sigma, tau)` with `sigma` of dimension `dim` and
/// diameter `<= threshold`.
pub fn brute_apparent_pairs(
    m: &DistanceMatrix,
    dim: usize,
    threshold: f64,
) -> Vec<(Simplex, Simplex)> {
    let mut out = Vec::new();
    for sigma in brute_simplices(m, dim, threshold) {
        let diam = sigma.diameter();
        let last = (0..m.len()).rev().find(|w| {
            if sigma.vertices().contains(w) {
                return false;
            }
            let mut vs = sigma.vertices().to_vec();
            vs.push(*w);
            brute_diameter(&vs, m) == diam
        });
        let Some(w) = last else { continue };
        let mut vs = sigma.vertices().to_vec();
        vs.push(w);
        let tau = brute_simplex(vs, m);
        if brute_first_full_diameter_facet(&tau, m).vertices() == sigma.vertices() {
            out.push((sigma, tau));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::circle8;

    fn s(vs: &[Vertex]) -> Simplex {
        brute_simplex(vs.to_vec(), &circle8())
    }

    #[test]
    fn simplex_counts() {
        let m = circle8();
        assert_eq!(brute_simplices(&m, 2, 2.0).len(), 56);
        assert_eq!(brute_simplices(&m, 1, 1.0).len(), 8);
        assert_eq!(brute_simplices(&m, 0, 0.0).len(), 8);
    }

    #[test]
    fn cofacet_examples() {
        let m = circle8();
        let mut got = brute_cofacets(&s(&[4, 6, 7]), &m, f64::INFINITY);
        got.sort_by_key(|&(w, _)| w);
        assert_eq!(
            got,
            vec![(0, 2.0), (1, 1.85), (2, 2.0), (3, 2.0), (5, 1.85)]
        );
        assert!(brute_cofacets(&s(&[0, 1]), &m, 0.77).is_empty());
        assert!(brute_cofacets(&s(&[0, 1, 2, 3, 4, 5, 6, 7]), &m, f64::INFINITY).is_empty());
    }

    #[test]
    fn first_facet_examples() {
        let m = circle8();
        let f = |vs: &[Vertex]| {
            brute_first_full_diameter_facet(&s(vs), &m)
                .vertices()
                .to_vec()
        };
        assert_eq!(f(&[1, 4, 7]), vec![4, 1]);
        assert_eq!(f(&[0, 1, 2, 3]), vec![3, 1, 0]);
        assert_eq!(f(&[0, 1, 7]), vec![7, 1]);
    }

    #[test]
    fn apparent_pair_examples() {
        let m = circle8();
        let pairs = brute_apparent_pairs(&m, 1, 2.0);
        let has = |a: &[Vertex], b: &[Vertex]| {
            pairs
                .iter()
                .any(|(x, y)| x.vertices() == a && y.vertices() == b)
        };
        assert!(has(&[7, 5], &[7, 6, 5]));
        assert!(has(&[7, 1], &[7, 1, 0]));
        assert!(!pairs.iter().any(|(x, _)| x.vertices() == [1, 0]));

        let two = DistanceMatrix::from_lower_triangle(&[1.0]).unwrap();
        assert!(brute_apparent_pairs(&two, 1, 1.0).is_empty());
    }

    #[test]
    fn repeated_calls_agree() {
        let m = circle8();
        assert_eq!(
            brute_apparent_pairs(&m, 2, 2.0),
            brute_apparent_pairs(&m, 2, 2.0)
        );
    }
}
