//! Coboundaries in filtration order from sorted neighborhood lists, with
//! early detection of apparent pairs.
//!
//! For a simplex `sigma` of diameter `alpha` the iterator runs in three
//! phases:
//!
//! 1. Walk the prefix of each `N(v)`, `v` in `sigma`, with distance strictly
//!    below `alpha`, pushing every vertex seen onto a priority queue keyed by
//!    vertex (largest first).
//! 2. Drain the queue, counting sightings per vertex. A non-member seen
//!    `|sigma|` times is a cofacet of diameter `alpha`. The first such
//!    vertex is the apparent-pair candidate.
//! 3. Repeatedly advance whichever list pointer has the smallest next
//!    distance (ties go to the larger `sigma` vertex). A vertex is emitted on
//!    its `|sigma|`-th sighting, tagged with that distance.

use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::metric::{DistanceMatrix, NeighborhoodLists};
use crate::simplex::{classify_first_full_diameter_facet, Simplex, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Init,
    SameDiameter,
    Expanding,
    Done,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CoboundaryStats {
    /// Queue pops up to and including the apparent candidate (all pops if
    /// there is none).
    pub init_pops: u64,
    /// What a descending index scan from `n - 1` would visit to reach the
    /// candidate: `n - candidate`, or `n` without a candidate.
    pub baseline_visits: u64,
    pub emissions: u64,
}

/// Lazy coboundary of one simplex. Yields `(w, diam(sigma + w))`.
pub struct Coboundary<'a> {
    nl: &'a NeighborhoodLists,
    sigma: Simplex,
    threshold: f64,
    pointers: Vec<usize>,
    counts: HashMap<Vertex, usize>,
    queue: BinaryHeap<Vertex>,
    pending: VecDeque<Vertex>,
    candidate: Option<Vertex>,
    phase: Phase,
    stats: CoboundaryStats,
}

impl<'a> Coboundary<'a> {
    /// Runs the initial traversal. `threshold = None` means unbounded.
    pub fn new(
        sigma: Simplex,
        nl: &'a NeighborhoodLists,
        m: &DistanceMatrix,
        threshold: Option<f64>,
    ) -> Result<Self> {
        if sigma.dim() == 0 {
            return Err(Error::Contract("coboundary needs an edge or larger".into()));
        }
        if nl.len() != m.len() || sigma.top() >= m.len() {
            return Err(Error::InvalidSimplex(
                "simplex does not fit the metric".into(),
            ));
        }
        let alpha = sigma.diameter();
        let mut queue = BinaryHeap::new();
        let pointers = sigma
            .vertices()
            .iter()
            .map(|&v| {
                let prefix = nl.open_ball(v, alpha);
                queue.extend(prefix.iter().map(|nb| nb.vertex));
                prefix.len()
            })
            .collect();
        Ok(Coboundary {
            nl,
            sigma,
            threshold: threshold.unwrap_or(f64::INFINITY),
            pointers,
            counts: HashMap::new(),
            queue,
            pending: VecDeque::new(),
            candidate: None,
            phase: Phase::Init,
            stats: CoboundaryStats::default(),
        })
    }

    pub fn simplex(&self) -> &Simplex {
        &self.sigma
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn stats(&self) -> CoboundaryStats {
        self.stats
    }

    /// Position of each list pointer, paired with its `sigma` vertex.
    pub fn pointers(&self) -> Vec<(Vertex, usize)> {
        self.sigma
            .vertices()
            .iter()
            .copied()
            .zip(self.pointers.iter().copied())
            .collect()
    }

    /// Current sighting count of `w`. Vertices are dropped from the table
    /// once they reach `|sigma|`.
    pub fn count(&self, w: Vertex) -> usize {
        self.counts.get(&w).copied().unwrap_or(0)
    }

    fn see(&mut self, w: Vertex) -> bool {
        let k = self.sigma.vertices().len();
        match self.counts.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += 1;
                if *e.get() == k {
                    e.remove();
                    return !self.sigma.contains(w);
                }
                false
            }
            Entry::Vacant(e) => {
                e.insert(1);
                false
            }
        }
    }

    /// Drains the queue until the first non-member reaches full count.
    /// Idempotent; later calls return the same answer.
    pub fn find_candidate(&mut self) -> Option<Vertex> {
        if self.phase != Phase::Init {
            return self.candidate;
        }
        while let Some(w) = self.queue.pop() {
            self.stats.init_pops += 1;
            if self.see(w) {
                self.candidate = Some(w);
                self.pending.push_back(w);
                break;
            }
        }
        let n = self.nl.len() as u64;
        self.stats.baseline_visits = self.candidate.map_or(n, |w| n - w as u64);
        self.phase = Phase::SameDiameter;
        self.candidate
    }

    fn emit(&mut self, w: Vertex, diameter: f64) -> Option<(Vertex, f64)> {
        self.stats.emissions += 1;
        Some((w, diameter))
    }

    fn step_expanding(&mut self) -> Option<(Vertex, f64)> {
        loop {
            let mut best: Option<(usize, f64)> = None;
            for (i, &v) in self.sigma.vertices().iter().enumerate() {
                let Some(nb) = self.nl.list(v).get(self.pointers[i]) else {
                    continue;
                };
                // vertices are descending, so strict `<` keeps the larger one on ties
                if best.is_none_or(|(_, d)| nb.distance < d) {
                    best = Some((i, nb.distance));
                }
            }
            let Some((i, distance)) = best else {
                self.phase = Phase::Done;
                return None;
            };
            if distance > self.threshold {
                self.phase = Phase::Done;
                return None;
            }
            let v = self.sigma.vertices()[i];
            let w = self.nl.list(v)[self.pointers[i]].vertex;
            self.pointers[i] += 1;
            if self.see(w) {
                return self.emit(w, distance);
            }
        }
    }
}

impl Iterator for Coboundary<'_> {
    type Item = (Vertex, f64);

    fn next(&mut self) -> Option<(Vertex, f64)> {
        loop {
            match self.phase {
                Phase::Init => {
                    self.find_candidate();
                    if self.sigma.diameter() > self.threshold {
                        self.phase = Phase::Done;
                    }
                }
                Phase::SameDiameter => {
                    if let Some(w) = self.pending.pop_front() {
                        return self.emit(w, self.sigma.diameter());
                    }
                    if self.queue.is_empty() {
                        self.phase = Phase::Expanding;
                        continue;
                    }
                    // count everything left, then release the full entries
                    while let Some(w) = self.queue.pop() {
                        if self.see(w) {
                            self.pending.push_back(w);
                        }
                    }
                }
                Phase::Expanding => return self.step_expanding(),
                Phase::Done => return None,
            }
        }
    }
}

/// All cofacets `(w, diam(sigma + w))` with diameter `<= threshold`, in
/// non-decreasing diameter order.
pub fn coboundary<'a>(
    sigma: &Simplex,
    nl: &'a NeighborhoodLists,
    m: &DistanceMatrix,
    threshold: Option<f64>,
) -> Result<Coboundary<'a>> {
    Coboundary::new(sigma.clone(), nl, m, threshold)
}

/// Runs only the first two phases: the vertex that may complete an apparent
/// pair, with the work it took to find it.
pub fn apparent_candidate(
    sigma: &Simplex,
    nl: &NeighborhoodLists,
    m: &DistanceMatrix,
) -> Result<Option<(Vertex, CoboundaryStats)>> {
    let mut cob = Coboundary::new(sigma.clone(), nl, m, None)?;
    Ok(cob.find_candidate().map(|w| (w, cob.stats())))
}

/// Largest vertex `w` outside `sigma` with `diam(sigma + w) == diam(sigma)`,
/// found by scanning the matrix.
fn last_same_diameter_vertex(sigma: &Simplex, m: &DistanceMatrix) -> Option<Vertex> {
    let alpha = sigma.diameter();
    (0..m.len())
        .rev()
        .find(|&w| !sigma.contains(w) && sigma.vertices().iter().all(|&u| m.get(u, w) <= alpha))
}

/// `sigma` is the first full-diameter facet of `tau` and `tau` is the last
/// same-diameter cofacet of `sigma` (largest added vertex).
pub fn is_apparent_pair(sigma: &Simplex, tau: &Simplex, m: &DistanceMatrix) -> Result<bool> {
    if tau.dim() != sigma.dim() + 1 || !sigma.vertices().iter().all(|&v| tau.contains(v)) {
        return Err(Error::Contract(
            "first simplex is not a facet of the second".into(),
        ));
    }
    if sigma.dim() == 0 {
        return Err(Error::Contract("apparent pairs start at edges".into()));
    }
    if tau.diameter() != sigma.diameter() {
        return Ok(false);
    }
    if classify_first_full_diameter_facet(tau)?.facet.vertices() != sigma.vertices() {
        return Ok(false);
    }
    let added = tau
        .vertices()
        .iter()
        .copied()
        .find(|&v| !sigma.contains(v))
        .expect("tau has one extra vertex");
    Ok(last_same_diameter_vertex(sigma, m) == Some(added))
}

/// The apparent cofacet of `sigma`, if `sigma` is the facet of an apparent
/// pair. Uses closed neighborhoods, so exact-`alpha` ties are decided
/// correctly.
pub fn apparent_cofacet(
    sigma: &Simplex,
    nl: &NeighborhoodLists,
    m: &DistanceMatrix,
) -> Result<Option<Simplex>> {
    if sigma.dim() == 0 {
        return Err(Error::Contract("apparent pairs start at edges".into()));
    }
    let alpha = sigma.diameter();
    let shortest = sigma
        .vertices()
        .iter()
        .copied()
        .min_by_key(|&v| nl.closed_ball(v, alpha).len())
        .expect("non-empty");
    let last = nl
        .closed_ball(shortest, alpha)
        .iter()
        .map(|nb| nb.vertex)
        .filter(|&w| !sigma.contains(w) && sigma.vertices().iter().all(|&u| m.get(u, w) <= alpha))
        .max();
    let Some(w) = last else {
        return Ok(None);
    };
    let tau = sigma.with_vertex(w, m)?;
    let first = classify_first_full_diameter_facet(&tau)?;
    Ok((first.facet.vertices() == sigma.vertices()).then_some(tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::circle8;

    fn setup() -> (DistanceMatrix, NeighborhoodLists) {
        let m = circle8();
        let nl = NeighborhoodLists::new(&m);
        (m, nl)
    }

    fn s(vs: &[Vertex]) -> Simplex {
        Simplex::new(vs.iter().copied(), &circle8()).unwrap()
    }

    #[test]
    fn mirrored_worked_example() {
        let (m, nl) = setup();
        let mut cob = coboundary(&s(&[4, 6, 7]), &nl, &m, None).unwrap();
        let out: Vec<_> = cob.by_ref().collect();
        assert_eq!(
            out,
            vec![(5, 1.85), (1, 1.85), (3, 2.0), (2, 2.0), (0, 2.0)]
        );
        assert_eq!(cob.stats().init_pops, 8);
        assert_eq!(cob.stats().emissions, 5);
        assert!(cob.pointers().iter().all(|&(_, p)| p == 8));
        assert_eq!(cob.phase(), Phase::Done);
    }

    #[test]
    fn threshold_cuts_the_coboundary() {
        let (m, nl) = setup();
        let out: Vec<_> = coboundary(&s(&[0, 1]), &nl, &m, Some(0.77))
            .unwrap()
            .collect();
        assert!(out.is_empty());
        let mut out: Vec<_> = coboundary(&s(&[0, 1]), &nl, &m, Some(1.41))
            .unwrap()
            .collect();
        assert!(out.windows(2).all(|w| w[0].1 <= w[1].1));
        out.sort_by_key(|&(w, _)| w);
        assert_eq!(out, vec![(2, 1.41), (7, 1.41)]);
    }

    #[test]
    fn candidate_examples() {
        let (m, nl) = setup();
        let (w, stats) = apparent_candidate(&s(&[4, 6, 7]), &nl, &m)
            .unwrap()
            .unwrap();
        assert_eq!((w, stats.init_pops, stats.baseline_visits), (5, 8, 3));
        assert_eq!(
            apparent_candidate(&s(&[5, 7]), &nl, &m).unwrap().unwrap().0,
            6
        );
        assert_eq!(
            apparent_candidate(&s(&[0, 4]), &nl, &m).unwrap().unwrap().0,
            7
        );
        assert!(apparent_candidate(&s(&[0, 1]), &nl, &m).unwrap().is_none());
    }

    #[test]
    fn apparent_pair_predicate() {
        let m = circle8();
        assert!(is_apparent_pair(&s(&[5, 7]), &s(&[5, 6, 7]), &m).unwrap());
        assert!(!is_apparent_pair(&s(&[4, 6, 7]), &s(&[4, 5, 6, 7]), &m).unwrap());
        assert!(is_apparent_pair(&s(&[1, 7]), &s(&[0, 1, 7]), &m).unwrap());
        assert!(is_apparent_pair(&s(&[1, 7]), &s(&[0, 2, 3]), &m).is_err());
    }

    #[test]
    fn apparent_cofacet_examples() {
        let (m, nl) = setup();
        let got = apparent_cofacet(&s(&[5, 7]), &nl, &m).unwrap().unwrap();
        assert_eq!(got, s(&[5, 6, 7]));
        assert!(apparent_cofacet(&s(&[0, 1]), &nl, &m).unwrap().is_none());
        assert!(apparent_cofacet(&s(&[4, 6, 7]), &nl, &m).unwrap().is_none());
        assert_eq!(
            apparent_cofacet(&s(&[1, 7]), &nl, &m).unwrap().unwrap(),
            s(&[0, 1, 7])
        );
    }

    #[test]
    fn vertex_has_no_coboundary_here() {
        let (m, nl) = setup();
        assert!(coboundary(&Simplex::vertex(0), &nl, &m, None).is_err());
    }
}
