//! Simplices with cached diameter and lead edge.
//!
//! Vertices are stored in strictly decreasing order, `[v_d, ..., v_0]`. The
//! lead edge of a simplex is its first full-length edge in the order
//! `(s, t) < (s', t')` iff `s < s'`, or `s == s'` and `t < t'`, where every
//! edge is written `s > t`. Two facts about it drive cofacet enumeration:
//!
//! * `lead.s == v_d` iff every full-length edge is incident to `v_d`;
//! * `lead == (v_d, v_{d-1})` iff that edge is the only full-length edge.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;

pub type Vertex = usize;

/// An edge `[s, t]` with `s > t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub s: Vertex,
    pub t: Vertex,
    pub length: f64,
}

impl Edge {
    /// Position in the edge order; lengths are ignored.
    pub fn key(&self) -> (Vertex, Vertex) {
        (self.s, self.t)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Simplex {
    vertices: Vec<Vertex>,
    diameter: f64,
    lead_edge: Option<Edge>,
}

impl Simplex {
    /// Builds a simplex from any arrangement of distinct vertices.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>, m: &DistanceMatrix) -> Result<Self> {
        let mut vertices: Vec<Vertex> = vertices.into_iter().collect();
        if vertices.is_empty() {
            return Err(Error::InvalidSimplex("no vertices".into()));
        }
        vertices.sort_unstable_by(|a, b| b.cmp(a));
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplex(format!("duplicate vertex {}", w[0])));
        }
        if vertices[0] >= m.len() {
            return Err(Error::InvalidSimplex(format!(
                "vertex {} out of range for {} points",
                vertices[0],
                m.len()
            )));
        }
        let (diameter, lead_edge) = scan_edges(&vertices, m);
        Ok(Simplex {
            vertices,
            diameter,
            lead_edge,
        })
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex {
            vertices: vec![v],
            diameter: 0.0,
            lead_edge: None,
        }
    }

    /// Assembles a simplex from precomputed parts. `vertices` must be
    /// strictly decreasing.
    pub(crate) fn from_parts(
        vertices: Vec<Vertex>,
        diameter: f64,
        lead_edge: Option<Edge>,
    ) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] > w[1]));
        Simplex {
            vertices,
            diameter,
            lead_edge,
        }
    }

    /// Vertices in decreasing order.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn lead_edge(&self) -> Option<Edge> {
        self.lead_edge
    }

    /// Largest vertex, `v_d`.
    pub fn top(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    /// `self + v` with diameter and lead edge updated in `O(d)`.
    pub fn with_vertex(&self, v: Vertex, m: &DistanceMatrix) -> Result<Simplex> {
        if self.contains(v) {
            return Err(Error::InvalidSimplex(format!("vertex {v} already present")));
        }
        if v >= m.len() {
            return Err(Error::InvalidSimplex(format!("vertex {v} out of range")));
        }
        let reach = self
            .vertices
            .iter()
            .map(|&u| m.get(u, v))
            .fold(0.0, f64::max);
        let diameter = self.diameter.max(reach);
        // new edges (v, u) can only become the lead edge if nothing older
        // is full length
        let mut lead = self.lead_edge.filter(|_| self.diameter == diameter);
        for &u in &self.vertices {
            if m.get(u, v) == diameter {
                let e = if u > v {
                    Edge {
                        s: u,
                        t: v,
                        length: diameter,
                    }
                } else {
                    Edge {
                        s: v,
                        t: u,
                        length: diameter,
                    }
                };
                if lead.is_none_or(|l| e.key() < l.key()) {
                    lead = Some(e);
                }
            }
        }
        Ok(Simplex {
            vertices: insert_descending(&self.vertices, v),
            diameter,
            lead_edge: lead,
        })
    }

    /// `self + v` for a cofacet known to keep the diameter and lead edge.
    pub(crate) fn same_diameter_cofacet(&self, v: Vertex) -> Simplex {
        Simplex {
            vertices: insert_descending(&self.vertices, v),
            diameter: self.diameter,
            lead_edge: self.lead_edge,
        }
    }

    /// The `d + 1` facets, removing `v_0` first and `v_d` last.
    pub fn facets(&self, m: &DistanceMatrix) -> Vec<Simplex> {
        (0..self.vertices.len())
            .rev()
            .map(|skip| {
                let vertices: Vec<Vertex> = self
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let (diameter, lead_edge) = scan_edges(&vertices, m);
                Simplex {
                    vertices,
                    diameter,
                    lead_edge,
                }
            })
            .collect()
    }

    fn without_index(&self, skip: usize) -> Vec<Vertex> {
        let mut v = self.vertices.clone();
        v.remove(skip);
        v
    }
}

fn insert_descending(vertices: &[Vertex], v: Vertex) -> Vec<Vertex> {
    let pos = vertices.partition_point(|&u| u > v);
    let mut out = Vec::with_capacity(vertices.len() + 1);
    out.extend_from_slice(&vertices[..pos]);
    out.push(v);
    out.extend_from_slice(&vertices[pos..]);
    out
}

fn scan_edges(vertices: &[Vertex], m: &DistanceMatrix) -> (f64, Option<Edge>) {
    let mut diameter = 0.0;
    let mut lead: Option<Edge> = None;
    for (i, &s) in vertices.iter().enumerate() {
        for &t in &vertices[i + 1..] {
            let d = m.get(s, t);
            let e = Edge { s, t, length: d };
            match lead {
                Some(l) if d < diameter || (d == diameter && l.key() < e.key()) => {}
                _ => {
                    diameter = d;
                    lead = Some(e);
                }
            }
        }
    }
    (diameter, lead)
}

impl fmt::Display for Simplex {
    /// `dim diameter v_d,...,v_0`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} ", self.dim(), self.diameter)?;
        write_vertices(f, &self.vertices)
    }
}

pub(crate) fn write_vertices(f: &mut impl fmt::Write, vertices: &[Vertex]) -> fmt::Result {
    for (i, v) in vertices.iter().enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Filtration order refined to a total order: diameter, then dimension,
/// then lexicographic order of the vertices written in increasing order.
pub fn canonical_cmp(a: &Simplex, b: &Simplex) -> Ordering {
    a.diameter
        .total_cmp(&b.diameter)
        .then(a.vertices.len().cmp(&b.vertices.len()))
        .then_with(|| a.vertices.iter().rev().cmp(b.vertices.iter().rev()))
}

/// Which of the three possible shapes a simplex's first full-diameter facet has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    /// `[v_{d-1}, ..., v_0]`
    Case1,
    /// `[v_d, v_{d-2}, ..., v_0]`
    Case2,
    /// `[v_d, v_{d-1}, v_{d-3}, ..., v_0]`
    Case3,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FacetCase {
    pub case: CaseId,
    pub facet: Simplex,
}

/// Finds the facet responsible for generating `tau` in a same-diameter
/// stream: its first full-diameter facet, comparing decreasing vertex
/// tuples lexicographically. Only the cached lead edge is consulted.
pub fn classify_first_full_diameter_facet(tau: &Simplex) -> Result<FacetCase> {
    if tau.dim() < 2 {
        return Err(Error::Contract(format!(
            "facet classification needs dimension >= 2, got {}",
            tau.dim()
        )));
    }
    let lead = tau.lead_edge.expect("dimension >= 1 has a lead edge");
    let v = &tau.vertices;
    let (case, skip) = if lead.s != v[0] {
        (CaseId::Case1, 0)
    } else if lead.t != v[1] {
        (CaseId::Case2, 1)
    } else {
        (CaseId::Case3, 2)
    };
    // the lead edge survives the removal in all three cases
    let facet = Simplex::from_parts(tau.without_index(skip), tau.diameter, Some(lead));
    Ok(FacetCase { case, facet })
}

/// Lead edge of `sigma + v` for a responsible pair `(sigma, v)`: always
/// `sigma`'s own lead edge.
pub fn inherit_lead_edge(sigma: &Simplex, v: Vertex, m: &DistanceMatrix) -> Result<Edge> {
    let lead = sigma
        .lead_edge
        .ok_or_else(|| Error::Contract("a vertex has no lead edge".into()))?;
    if sigma.contains(v) {
        return Err(Error::Contract(format!("vertex {v} already in simplex")));
    }
    if sigma.vertices.iter().any(|&u| m.get(u, v) > sigma.diameter) {
        return Err(Error::Contract(format!(
            "adding {v} increases the diameter"
        )));
    }
    Ok(lead)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::circle8;

    fn s(vs: &[Vertex]) -> Simplex {
        Simplex::new(vs.iter().copied(), &circle8()).unwrap()
    }

    #[test]
    fn make_simplex_examples() {
        let x = s(&[0, 1, 3]);
        assert_eq!(x.vertices(), &[3, 1, 0]);
        assert_eq!(x.diameter(), 1.85);
        assert_eq!(x.lead_edge().unwrap().key(), (3, 0));

        let v = s(&[5]);
        assert_eq!((v.diameter(), v.lead_edge()), (0.0, None));

        let y = s(&[0, 3, 5]);
        assert_eq!(y.diameter(), 1.85);
        assert_eq!(y.lead_edge().unwrap().key(), (3, 0));
    }

    #[test]
    fn make_simplex_rejects_bad_vertices() {
        let m = circle8();
        assert!(Simplex::new([1, 1], &m).is_err());
        assert!(Simplex::new([1, 8], &m).is_err());
        assert!(Simplex::new([], &m).is_err());
    }

    #[test]
    fn canonical_order_examples() {
        assert_eq!(canonical_cmp(&s(&[0, 1]), &s(&[0, 7])), Ordering::Less);
        assert_eq!(canonical_cmp(&s(&[6, 7]), &s(&[0, 2])), Ordering::Less);
        assert_eq!(canonical_cmp(&s(&[0, 2]), &s(&[0, 1, 2])), Ordering::Less);
        assert_eq!(canonical_cmp(&s(&[0, 2]), &s(&[2, 0])), Ordering::Equal);
    }

    #[test]
    fn classification_examples() {
        let c = classify_first_full_diameter_facet(&s(&[1, 4, 7])).unwrap();
        assert_eq!((c.case, c.facet.vertices()), (CaseId::Case1, &[4, 1][..]));
        let c = classify_first_full_diameter_facet(&s(&[0, 1, 2, 3])).unwrap();
        assert_eq!(
            (c.case, c.facet.vertices()),
            (CaseId::Case2, &[3, 1, 0][..])
        );
        let c = classify_first_full_diameter_facet(&s(&[0, 1, 7])).unwrap();
        assert_eq!((c.case, c.facet.vertices()), (CaseId::Case3, &[7, 1][..]));
        assert_eq!(c.facet.diameter(), 1.41);
    }

    #[test]
    fn classification_needs_dim_two() {
        assert!(classify_first_full_diameter_facet(&s(&[3])).is_err());
        assert!(classify_first_full_diameter_facet(&s(&[3, 4])).is_err());
    }

    #[test]
    fn facets_examples() {
        let m = circle8();
        let f = s(&[0, 1]).facets(&m);
        assert_eq!(f, vec![Simplex::vertex(1), Simplex::vertex(0)]);

        let f = s(&[0, 1, 3]).facets(&m);
        let got: Vec<_> = f
            .iter()
            .map(|x| (x.vertices().to_vec(), x.diameter()))
            .collect();
        assert_eq!(
            got,
            vec![(vec![3, 1], 1.41), (vec![3, 0], 1.85), (vec![1, 0], 0.77)]
        );

        let t = s(&[5, 6, 7]);
        let full: Vec<_> = t
            .facets(&m)
            .into_iter()
            .filter(|f| f.diameter() == t.diameter())
            .map(|f| f.vertices().to_vec())
            .collect();
        assert_eq!(full, vec![vec![7, 5]]);
    }

    #[test]
    fn inherit_lead_edge_examples() {
        let m = circle8();
        assert_eq!(inherit_lead_edge(&s(&[1, 4]), 7, &m).unwrap().key(), (4, 1));
        assert_eq!(inherit_lead_edge(&s(&[0, 2]), 1, &m).unwrap().key(), (2, 0));
        assert_eq!(inherit_lead_edge(&s(&[1, 7]), 0, &m).unwrap().key(), (7, 1));
        // {0,1} + 4 grows the diameter
        assert!(inherit_lead_edge(&s(&[0, 1]), 4, &m).is_err());
    }

    #[test]
    fn with_vertex_matches_fresh_construction() {
        let m = circle8();
        for base in [vec![0], vec![0, 1], vec![1, 4], vec![2, 5, 6], vec![0, 3]] {
            let sigma = s(&base);
            for v in 0..8 {
                if sigma.contains(v) {
                    continue;
                }
                let mut all = base.clone();
                all.push(v);
                assert_eq!(sigma.with_vertex(v, &m).unwrap(), s(&all), "{base:?} + {v}");
            }
        }
    }

    #[test]
    fn display_format() {
        assert_eq!(s(&[0, 1]).to_string(), "1 0.77 1,0");
        assert_eq!(s(&[0, 4]).to_string(), "1 2 4,0");
        assert_eq!(Simplex::vertex(3).to_string(), "0 0 3");
    }
}
