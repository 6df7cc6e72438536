//! Simplex streams in filtration order.
//!
//! [`SimplexStream`] produces the `d`-simplices of a Vietoris-Rips complex
//! without sorting: edges are visited in filtration order and each edge
//! roots a depth-first search over same-diameter cofacets. At most `d - 1`
//! enumerators are alive at any time.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::cofacet::{baseline_cofacets_colex, CofacetEnumerator};
use crate::metric::{DistanceMatrix, NeighborhoodLists};
use crate::simplex::{canonical_cmp, Edge, Simplex, Vertex};

/// Counters collected while a stream runs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StreamStats {
    /// Indexed by dimension.
    pub emitted_per_dim: Vec<u64>,
    pub max_stack_depth: usize,
    pub candidate_checks: u64,
    pub apparent_skipped: u64,
}

/// The vertices `0..n`, each with diameter 0.
pub fn vertex_stream(m: &DistanceMatrix) -> impl Iterator<Item = Simplex> {
    (0..m.len()).map(Simplex::vertex)
}

/// All edges of length `<= threshold`, sorted by [`canonical_cmp`].
pub fn edge_stream(m: &DistanceMatrix, threshold: f64) -> Vec<Simplex> {
    let n = m.len();
    let mut edges = Vec::new();
    for s in 1..n {
        for t in 0..s {
            let length = m.get(s, t);
            if length <= threshold {
                edges.push(Simplex::from_parts(
                    vec![s, t],
                    length,
                    Some(Edge { s, t, length }),
                ));
            }
        }
    }
    edges.sort_unstable_by(canonical_cmp);
    edges
}

struct Frame<'a> {
    cofacets: CofacetEnumerator<'a>,
    /// Set on frames one dimension below the target when apparent pairs
    /// are skipped: the largest vertex that keeps the diameter.
    apparent_vertex: Option<Vertex>,
}

/// Lazy stream of all `target_dim`-simplices with diameter `<= threshold`,
/// in non-decreasing diameter order.
pub struct SimplexStream<'a> {
    m: &'a DistanceMatrix,
    nl: &'a NeighborhoodLists,
    target_dim: usize,
    skip_apparent: bool,
    edges: std::vec::IntoIter<Simplex>,
    stack: Vec<Frame<'a>>,
    stats: StreamStats,
    retired_checks: u64,
}

impl<'a> SimplexStream<'a> {
    /// # Panics
    /// If `target_dim < 2`; lower dimensions are served by [`vertex_stream`]
    /// and [`edge_stream`].
    pub fn new(
        m: &'a DistanceMatrix,
        nl: &'a NeighborhoodLists,
        target_dim: usize,
        threshold: f64,
        skip_apparent: bool,
    ) -> Self {
        assert!(target_dim >= 2, "simplex streams start at dimension 2");
        SimplexStream {
            m,
            nl,
            target_dim,
            skip_apparent,
            edges: edge_stream(m, threshold).into_iter(),
            stack: Vec::with_capacity(target_dim),
            stats: StreamStats {
                emitted_per_dim: vec![0; target_dim + 1],
                ..StreamStats::default()
            },
            retired_checks: 0,
        }
    }

    pub fn stats(&self) -> StreamStats {
        let live: u64 = self
            .stack
            .iter()
            .map(|f| f.cofacets.candidate_checks())
            .sum();
        StreamStats {
            candidate_checks: self.retired_checks + live,
            ..self.stats.clone()
        }
    }

    /// Current number of live enumerators.
    pub fn depth(&self) -> usize {
        self.stack.len()
    }

    fn push(&mut self, sigma: Simplex, neighborhood: Vec<Vertex>) {
        let apparent_vertex = if self.skip_apparent && sigma.dim() + 1 == self.target_dim {
            neighborhood
                .iter()
                .rev()
                .copied()
                .find(|&w| !sigma.contains(w))
        } else {
            None
        };
        self.stack.push(Frame {
            cofacets: CofacetEnumerator::with_neighborhood(sigma, neighborhood, self.m),
            apparent_vertex,
        });
        self.stats.max_stack_depth = self.stats.max_stack_depth.max(self.stack.len());
    }

    fn push_root(&mut self, edge: Simplex) {
        let alpha = edge.diameter();
        let (s, t) = (edge.vertices()[0], edge.vertices()[1]);
        let mut neighborhood: Vec<Vertex> = self
            .nl
            .closed_ball(s, alpha)
            .iter()
            .map(|nb| nb.vertex)
            .filter(|&w| self.m.get(t, w) <= alpha)
            .collect();
        neighborhood.sort_unstable();
        self.push(edge, neighborhood);
    }
}

impl Iterator for SimplexStream<'_> {
    type Item = Simplex;

    fn next(&mut self) -> Option<Simplex> {
        loop {
            let Some(frame) = self.stack.last_mut() else {
                let edge = self.edges.next()?;
                self.push_root(edge);
                continue;
            };
            let Some((v, tau)) = frame.cofacets.next() else {
                let done = self.stack.pop().expect("non-empty");
                self.retired_checks += done.cofacets.candidate_checks();
                continue;
            };
            if tau.dim() == self.target_dim {
                if frame.apparent_vertex == Some(v) {
                    self.stats.apparent_skipped += 1;
                    continue;
                }
                self.stats.emitted_per_dim[self.target_dim] += 1;
                return Some(tau);
            }
            let alpha = tau.diameter();
            let child: Vec<Vertex> = frame
                .cofacets
                .neighborhood()
                .iter()
                .copied()
                .filter(|&w| self.m.get(v, w) <= alpha)
                .collect();
            self.push(tau, child);
        }
    }
}

/// Buffers one diameter class at a time and releases it in canonical order.
struct CanonicalClasses<I: Iterator<Item = Simplex>> {
    inner: std::iter::Peekable<I>,
    buffer: std::vec::IntoIter<Simplex>,
}

impl<I: Iterator<Item = Simplex>> Iterator for CanonicalClasses<I> {
    type Item = Simplex;

    fn next(&mut self) -> Option<Simplex> {
        if let Some(s) = self.buffer.next() {
            return Some(s);
        }
        let first = self.inner.next()?;
        let diameter = first.diameter();
        let mut class = vec![first];
        while let Some(s) = self.inner.next_if(|s| s.diameter() == diameter) {
            class.push(s);
        }
        class.sort_unstable_by(canonical_cmp);
        self.buffer = class.into_iter();
        self.buffer.next()
    }
}

struct Head {
    simplex: Simplex,
    source: usize,
}

impl PartialEq for Head {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Head {}

impl PartialOrd for Head {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Head {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(&other.simplex, &self.simplex).then(other.source.cmp(&self.source))
    }
}

/// k-way merge of canonically sorted simplex streams.
pub struct MergedStream<'a> {
    sources: Vec<Box<dyn Iterator<Item = Simplex> + 'a>>,
    heads: BinaryHeap<Head>,
}

impl<'a> MergedStream<'a> {
    pub fn new(mut sources: Vec<Box<dyn Iterator<Item = Simplex> + 'a>>) -> Self {
        let heads = sources
            .iter_mut()
            .enumerate()
            .filter_map(|(source, it)| it.next().map(|simplex| Head { simplex, source }))
            .collect();
        MergedStream { sources, heads }
    }
}

impl Iterator for MergedStream<'_> {
    type Item = Simplex;

    fn next(&mut self) -> Option<Simplex> {
        let Head { simplex, source } = self.heads.pop()?;
        if let Some(next) = self.sources[source].next() {
            self.heads.push(Head {
                simplex: next,
                source,
            });
        }
        Some(simplex)
    }
}

/// Every simplex of dimension `<= max_dim` and diameter `<= threshold`, in
/// canonical order (faces before cofaces).
pub fn full_filtration_stream<'a>(
    m: &'a DistanceMatrix,
    nl: &'a NeighborhoodLists,
    max_dim: usize,
    threshold: f64,
) -> MergedStream<'a> {
    let mut sources: Vec<Box<dyn Iterator<Item = Simplex> + 'a>> = vec![Box::new(vertex_stream(m))];
    if max_dim >= 1 {
        sources.push(Box::new(edge_stream(m, threshold).into_iter()));
    }
    for dim in 2..=max_dim {
        sources.push(Box::new(CanonicalClasses {
            inner: SimplexStream::new(m, nl, dim, threshold, false).peekable(),
            buffer: Vec::new().into_iter(),
        }));
    }
    MergedStream::new(sources)
}

/// Ripser-style generation: build every layer up to `target_dim` from top
/// cofacets of the layer below, then sort.
pub fn baseline_simplex_stream(
    m: &DistanceMatrix,
    target_dim: usize,
    threshold: f64,
) -> Vec<Simplex> {
    let mut layer: Vec<Simplex> = vertex_stream(m).collect();
    for _ in 0..target_dim {
        layer = layer
            .iter()
            .flat_map(|sigma| baseline_cofacets_colex(sigma, m, threshold).map(|(_, tau)| tau))
            .collect();
    }
    layer.sort_unstable_by(canonical_cmp);
    layer
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::circle8;

    fn diameter_histogram(simplices: &[Simplex]) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for s in simplices {
            match out.last_mut() {
                Some((d, c)) if *d == s.diameter() => *c += 1,
                _ => out.push((s.diameter(), 1)),
            }
        }
        out
    }

    #[test]
    fn vertex_stream_lists_vertices() {
        let v: Vec<_> = vertex_stream(&circle8()).map(|s| s.vertices()[0]).collect();
        assert_eq!(v, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn edge_stream_on_circle8() {
        let m = circle8();
        let edges = edge_stream(&m, 2.0);
        assert_eq!(edges.len(), 28);
        assert_eq!(
            diameter_histogram(&edges),
            vec![(0.77, 8), (1.41, 8), (1.85, 8), (2.0, 4)]
        );
        let head: Vec<_> = edges[..8].iter().map(|e| e.vertices().to_vec()).collect();
        assert_eq!(
            head,
            vec![
                [1, 0],
                [7, 0],
                [2, 1],
                [3, 2],
                [4, 3],
                [5, 4],
                [6, 5],
                [7, 6]
            ]
        );
        assert_eq!(edge_stream(&m, 1.0).len(), 8);
        assert!(edge_stream(&m, 0.0).is_empty());
    }

    #[test]
    fn triangles_on_circle8() {
        let m = circle8();
        let nl = NeighborhoodLists::new(&m);
        let mut stream = SimplexStream::new(&m, &nl, 2, 2.0, false);
        let tri: Vec<_> = stream.by_ref().collect();
        assert_eq!(tri.len(), 56);
        assert!(tri.windows(2).all(|w| w[0].diameter() <= w[1].diameter()));
        assert_eq!(
            diameter_histogram(&tri),
            vec![(1.41, 8), (1.85, 24), (2.0, 24)]
        );
        let mut first: Vec<Vec<Vertex>> = tri[..8].iter().map(|s| s.vertices().to_vec()).collect();
        first.sort();
        let mut consecutive: Vec<Vec<Vertex>> = (0..8)
            .map(|i| {
                let mut v = vec![i, (i + 1) % 8, (i + 2) % 8];
                v.sort_by(|a, b| b.cmp(a));
                v
            })
            .collect();
        consecutive.sort();
        assert_eq!(first, consecutive);
        let stats = stream.stats();
        assert_eq!(stats.max_stack_depth, 1);
        assert_eq!(stats.emitted_per_dim[2], 56);

        assert_eq!(SimplexStream::new(&m, &nl, 2, 1.41, false).count(), 8);
    }

    #[test]
    fn single_triangle() {
        let m = DistanceMatrix::from_lower_triangle(&[1.0, 2.0, 3.0]).unwrap();
        let nl = NeighborhoodLists::new(&m);
        let tri: Vec<_> = SimplexStream::new(&m, &nl, 2, 3.0, false).collect();
        assert_eq!(tri.len(), 1);
        assert_eq!(
            (tri[0].vertices(), tri[0].diameter()),
            (&[2, 1, 0][..], 3.0)
        );
        assert_eq!(baseline_simplex_stream(&m, 2, 3.0), tri);
    }

    #[test]
    fn baseline_matches_inorder_on_circle8() {
        let m = circle8();
        let nl = NeighborhoodLists::new(&m);
        let mut inorder: Vec<_> = SimplexStream::new(&m, &nl, 2, 2.0, false).collect();
        inorder.sort_by(canonical_cmp);
        assert_eq!(baseline_simplex_stream(&m, 2, 2.0), inorder);
        assert!(baseline_simplex_stream(&m, 3, 1.41).is_empty());
        assert!(SimplexStream::new(&m, &nl, 3, 1.41, false).next().is_none());
    }

    #[test]
    fn merged_stream_orders_faces_first() {
        let m = circle8();
        let nl = NeighborhoodLists::new(&m);
        let all: Vec<_> = full_filtration_stream(&m, &nl, 1, 2.0).collect();
        assert_eq!(all.len(), 36);
        assert!(all[..8].iter().all(|s| s.dim() == 0));
        assert_eq!(all[8..].to_vec(), edge_stream(&m, 2.0));

        let all: Vec<_> = full_filtration_stream(&m, &nl, 2, 1.41).collect();
        assert_eq!(all.len(), 8 + 16 + 8);
        assert!(all
            .windows(2)
            .all(|w| canonical_cmp(&w[0], &w[1]) == Ordering::Less));

        let only_vertices: Vec<_> = full_filtration_stream(&m, &nl, 0, 2.0).collect();
        assert_eq!(only_vertices, vertex_stream(&m).collect::<Vec<_>>());
    }
}
