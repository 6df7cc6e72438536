//! Same-diameter cofacet enumeration.
//!
//! Every simplex `tau` of dimension at least 2 and diameter `alpha` has a
//! unique responsible facet, its first full-diameter facet (see
//! [`classify_first_full_diameter_facet`](crate::simplex::classify_first_full_diameter_facet)).
//! Conversely, for a simplex `sigma = [v_d, ..., v_0]` of diameter `alpha`
//! the vertices `v` for which `sigma` is responsible for `sigma + v` are:
//!
//! 1. `v > v_d` with `d(v, v_i) <= alpha` for all `i`;
//! 2. `v_d > v > v_{d-1}`, if every full-length edge of `sigma` touches
//!    `v_d`, with `d(v, v_d) <= alpha` and `d(v, v_j) < alpha` for `j < d`;
//! 3. `v_{d-1} > v > v_{d-2}` (no lower bound for an edge), if
//!    `(v_d, v_{d-1})` is the only full-length edge, with `d(v, v_i) < alpha`
//!    for all `i`.
//!
//! All three are subsets of the closed `alpha`-neighborhood intersection of
//! `sigma`'s vertices, which is what [`CofacetEnumerator`] walks.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::metric::{DistanceMatrix, NeighborhoodLists};
use crate::simplex::{CaseId, Simplex, Vertex};

/// Whether `sigma` is the responsible facet of `sigma + v`.
pub fn is_responsible(sigma: &Simplex, v: Vertex, m: &DistanceMatrix) -> Result<bool> {
    if sigma.contains(v) {
        return Err(Error::Contract(format!("vertex {v} already in simplex")));
    }
    if sigma.dim() == 0 {
        return Err(Error::Contract(
            "responsibility needs an edge or larger".into(),
        ));
    }
    Ok(responsible_case(sigma, v, m).is_some())
}

/// The case under which `(sigma, v)` is a responsible pair, if any.
pub fn responsible_case(sigma: &Simplex, v: Vertex, m: &DistanceMatrix) -> Option<CaseId> {
    let vs = sigma.vertices();
    let alpha = sigma.diameter();
    let lead = sigma.lead_edge()?;
    let dist = |u: Vertex| m.get(u, v);
    if v > vs[0] {
        vs.iter()
            .all(|&u| dist(u) <= alpha)
            .then_some(CaseId::Case1)
    } else if v > vs[1] {
        (lead.s == vs[0] && dist(vs[0]) <= alpha && vs[1..].iter().all(|&u| dist(u) < alpha))
            .then_some(CaseId::Case2)
    } else if vs.get(2).is_none_or(|&lower| v > lower) {
        (lead.key() == (vs[0], vs[1]) && vs.iter().all(|&u| dist(u) < alpha))
            .then_some(CaseId::Case3)
    } else {
        None
    }
}

/// Closed `alpha`-neighborhood intersection of `sigma`'s vertices, sorted by
/// vertex. Includes the vertices of `sigma` itself.
pub fn neighborhood_intersection(
    sigma: &Simplex,
    nl: &NeighborhoodLists,
    m: &DistanceMatrix,
) -> Vec<Vertex> {
    let alpha = sigma.diameter();
    let shortest = sigma
        .vertices()
        .iter()
        .copied()
        .min_by_key(|&v| nl.closed_ball(v, alpha).len())
        .expect("simplex is non-empty");
    let mut out: Vec<Vertex> = nl
        .closed_ball(shortest, alpha)
        .iter()
        .map(|nb| nb.vertex)
        .filter(|&w| sigma.vertices().iter().all(|&u| m.get(u, w) <= alpha))
        .collect();
    out.sort_unstable();
    out
}

/// Walks the responsible cofacets of one simplex: Case 1 vertices in
/// increasing order, then Case 2, then Case 3.
#[derive(Clone, Debug)]
pub struct CofacetEnumerator<'a> {
    m: &'a DistanceMatrix,
    sigma: Simplex,
    neighborhood: Vec<Vertex>,
    ranges: [(CaseId, Range<usize>); 3],
    active: usize,
    candidate_checks: u64,
}

impl<'a> CofacetEnumerator<'a> {
    pub fn new(sigma: Simplex, nl: &NeighborhoodLists, m: &'a DistanceMatrix) -> Result<Self> {
        if sigma.dim() == 0 {
            return Err(Error::Contract(
                "cofacet enumeration needs an edge or larger".into(),
            ));
        }
        let neighborhood = neighborhood_intersection(&sigma, nl, m);
        Ok(Self::with_neighborhood(sigma, neighborhood, m))
    }

    /// `neighborhood` must be the sorted closed `alpha`-neighborhood
    /// intersection of `sigma`.
    pub(crate) fn with_neighborhood(
        sigma: Simplex,
        neighborhood: Vec<Vertex>,
        m: &'a DistanceMatrix,
    ) -> Self {
        let vs = sigma.vertices();
        let lead = sigma.lead_edge().expect("dimension >= 1");
        // index of the first vertex > x
        let above = |x: Vertex| neighborhood.partition_point(|&w| w <= x);
        let top = above(vs[0]);
        let case1 = top..neighborhood.len();
        let case2 = if lead.s == vs[0] {
            above(vs[1])..top - 1
        } else {
            0..0
        };
        let case3 = if lead.key() == (vs[0], vs[1]) {
            let lo = vs.get(2).map_or(0, |&x| above(x));
            lo..above(vs[1]) - 1
        } else {
            0..0
        };
        CofacetEnumerator {
            m,
            sigma,
            neighborhood,
            ranges: [
                (CaseId::Case1, case1),
                (CaseId::Case2, case2),
                (CaseId::Case3, case3),
            ],
            active: 0,
            candidate_checks: 0,
        }
    }

    pub fn simplex(&self) -> &Simplex {
        &self.sigma
    }

    pub fn neighborhood(&self) -> &[Vertex] {
        &self.neighborhood
    }

    /// Candidate vertices examined so far.
    pub fn candidate_checks(&self) -> u64 {
        self.candidate_checks
    }

    /// Like `next`, but also reports the case of each emission.
    pub fn next_with_case(&mut self) -> Option<(CaseId, Vertex, Simplex)> {
        let alpha = self.sigma.diameter();
        while self.active < self.ranges.len() {
            let (case, range) = &mut self.ranges[self.active];
            let Some(idx) = range.next() else {
                self.active += 1;
                continue;
            };
            let v = self.neighborhood[idx];
            self.candidate_checks += 1;
            let vs = self.sigma.vertices();
            let ok = match case {
                CaseId::Case1 => true,
                CaseId::Case2 => vs[1..].iter().all(|&u| self.m.get(u, v) < alpha),
                CaseId::Case3 => vs.iter().all(|&u| self.m.get(u, v) < alpha),
            };
            if ok {
                return Some((*case, v, self.sigma.same_diameter_cofacet(v)));
            }
        }
        None
    }
}

impl Iterator for CofacetEnumerator<'_> {
    type Item = (Vertex, Simplex);

    fn next(&mut self) -> Option<Self::Item> {
        self.next_with_case().map(|(_, v, s)| (v, s))
    }
}

/// All `(v, sigma + v)` for which `sigma` is the responsible facet.
pub fn same_diameter_cofacets<'a>(
    sigma: &Simplex,
    nl: &NeighborhoodLists,
    m: &'a DistanceMatrix,
) -> Result<CofacetEnumerator<'a>> {
    CofacetEnumerator::new(sigma.clone(), nl, m)
}

/// Ripser-style top cofacets: every `v` above `sigma`'s largest vertex with
/// `diam(sigma + v) <= threshold`, in decreasing order of `v`.
pub fn baseline_cofacets_colex<'a>(
    sigma: &'a Simplex,
    m: &'a DistanceMatrix,
    threshold: f64,
) -> impl Iterator<Item = (Vertex, Simplex)> + 'a {
    (sigma.top() + 1..m.len()).rev().filter_map(move |v| {
        let reach = sigma
            .vertices()
            .iter()
            .map(|&u| m.get(u, v))
            .fold(0.0, f64::max);
        if sigma.diameter().max(reach) <= threshold {
            Some((v, sigma.with_vertex(v, m).expect("v is above every vertex")))
        } else {
            None
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::circle8;

    fn s(vs: &[Vertex]) -> Simplex {
        Simplex::new(vs.iter().copied(), &circle8()).unwrap()
    }

    fn emitted(vs: &[Vertex]) -> Vec<(Vertex, Vec<Vertex>)> {
        let m = circle8();
        let nl = NeighborhoodLists::new(&m);
        same_diameter_cofacets(&s(vs), &nl, &m)
            .unwrap()
            .map(|(v, t)| (v, t.vertices().to_vec()))
            .collect()
    }

    #[test]
    fn responsibility_examples() {
        let m = circle8();
        assert!(is_responsible(&s(&[1, 4]), 7, &m).unwrap());
        assert!(!is_responsible(&s(&[4, 7]), 1, &m).unwrap());
        assert!(is_responsible(&s(&[1, 7]), 0, &m).unwrap());
        assert_eq!(responsible_case(&s(&[1, 7]), 0, &m), Some(CaseId::Case3));
        assert!(is_responsible(&s(&[1, 7]), 7, &m).is_err());
    }

    #[test]
    fn same_diameter_examples() {
        assert_eq!(emitted(&[5, 7]), vec![(6, vec![7, 6, 5])]);
        assert_eq!(emitted(&[0, 1]), vec![]);
        assert_eq!(emitted(&[1, 7]), vec![(0, vec![7, 1, 0])]);
    }

    #[test]
    fn emissions_keep_diameter_and_lead_edge() {
        let m = circle8();
        let nl = NeighborhoodLists::new(&m);
        let sigma = s(&[1, 4]);
        for (v, tau) in same_diameter_cofacets(&sigma, &nl, &m).unwrap() {
            let fresh = sigma.with_vertex(v, &m).unwrap();
            assert_eq!(tau, fresh);
        }
    }

    #[test]
    fn vertex_input_is_rejected() {
        let m = circle8();
        let nl = NeighborhoodLists::new(&m);
        assert!(same_diameter_cofacets(&Simplex::vertex(2), &nl, &m).is_err());
    }

    #[test]
    fn baseline_examples() {
        let m = circle8();
        let order = |vs: &[Vertex], thr| {
            let sigma = s(vs);
            baseline_cofacets_colex(&sigma, &m, thr)
                .map(|(v, _)| v)
                .collect::<Vec<_>>()
        };
        assert_eq!(order(&[1, 2], 2.0), vec![7, 6, 5, 4, 3]);
        assert_eq!(order(&[6, 7], 2.0), vec![]);
        assert_eq!(order(&[1, 2], 1.41), vec![3]);
        assert_eq!(order(&[3], 0.77), vec![4]);
    }
}
