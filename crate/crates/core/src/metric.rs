//! Point clouds, distance matrices and sorted neighborhood lists.
//!
//! Everything downstream reads distances from a [`DistanceMatrix`]; the
//! [`NeighborhoodLists`] are a per-vertex index over the same values, sorted
//! by `(distance, vertex)` with the vertex itself at the head.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::simplex::Vertex;

/// A finite set of points in a Euclidean space of fixed dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
}

impl PointCloud {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = match points.first() {
            Some(p) => p.len(),
            None => return Err(Error::InvalidMatrix("point cloud is empty".into())),
        };
        if dim == 0 {
            return Err(Error::InvalidMatrix(
                "points must have at least one coordinate".into(),
            ));
        }
        let mut coords = Vec::with_capacity(dim * points.len());
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidMatrix(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            if let Some(x) = p.iter().find(|x| !x.is_finite()) {
                return Err(Error::InvalidMatrix(format!(
                    "point {i} has non-finite coordinate {x}"
                )));
            }
            coords.extend_from_slice(p);
        }
        Ok(PointCloud { dim, coords })
    }

    /// Parses CSV text: one point per line, comma separated reals.
    /// Blank lines are skipped; LF and CRLF endings are both accepted.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut dim = None;
        let mut coords = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let raw = raw.trim();
            if raw.is_empty() {
                continue;
            }
            let row = raw
                .split(',')
                .map(|field| parse_real(field.trim(), line))
                .collect::<Result<Vec<f64>>>()?;
            match dim {
                None => dim = Some(row.len()),
                Some(d) if d != row.len() => {
                    return Err(Error::parse(
                        line,
                        format!("expected {d} fields, found {}", row.len()),
                    ))
                }
                Some(_) => {}
            }
            coords.extend(row);
        }
        match dim {
            None => Err(Error::parse(1, "no points in input")),
            Some(dim) => Ok(PointCloud { dim, coords }),
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }
}

fn parse_real(token: &str, line: usize) -> Result<f64> {
    match token.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(_) => Err(Error::parse(line, format!("non-finite value `{token}`"))),
        Err(_) => Err(Error::parse(line, format!("not a number: `{token}`"))),
    }
}

/// Symmetric matrix of pairwise distances with zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds a matrix from full rows, validating symmetry, the zero
    /// diagonal and that every entry is finite and non-negative.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("matrix has no rows".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        let m = DistanceMatrix { n, entries };
        m.validate()?;
        Ok(m)
    }

    /// Reconstructs the matrix from its strict lower triangle given row by row:
    /// `d(1,0), d(2,0), d(2,1), ...`.
    pub fn from_lower_triangle(values: &[f64]) -> Result<Self> {
        let n = triangular_root(values.len()).ok_or_else(|| {
            Error::InvalidMatrix(format!(
                "{} entries do not form a strict lower triangle",
                values.len()
            ))
        })?;
        let mut entries = vec![0.0; n * n];
        let mut it = values.iter();
        for i in 1..n {
            for j in 0..i {
                let d = *it.next().expect("entry count checked");
                entries[i * n + j] = d;
                entries[j * n + i] = d;
            }
        }
        let m = DistanceMatrix { n, entries };
        m.validate()?;
        Ok(m)
    }

    /// Parses a lower-distance-matrix text file. Entries may be separated by
    /// commas and/or whitespace; line breaks carry no structure.
    pub fn parse_lower(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            for token in line.split(|c: char| c == ',' || c.is_whitespace()) {
                if token.is_empty() {
                    continue;
                }
                let x = parse_real(token, idx + 1)?;
                if x < 0.0 {
                    return Err(Error::parse(idx + 1, format!("negative distance {token}")));
                }
                values.push(x);
            }
        }
        Self::from_lower_triangle(&values)
    }

    /// Parses a full square matrix, one row per non-blank line.
    pub fn parse_full(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let row = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| parse_real(t, idx + 1))
                .collect::<Result<Vec<_>>>()?;
            if !row.is_empty() {
                rows.push(row);
            }
        }
        Self::from_rows(rows)
    }

    /// Euclidean distances. Coordinates are summed in a fixed order so that
    /// `d(i, j)` and `d(j, i)` are the same bits.
    pub fn from_points(cloud: &PointCloud) -> Self {
        let n = cloud.len();
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..i {
                let d = euclidean(cloud.point(i), cloud.point(j));
                entries[i * n + j] = d;
                entries[j * n + i] = d;
            }
        }
        DistanceMatrix { n, entries }
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            if self.entries[i * n + i] != 0.0 {
                return Err(Error::InvalidMatrix(format!(
                    "nonzero diagonal entry at {i}"
                )));
            }
            for j in 0..i {
                let (a, b) = (self.entries[i * n + j], self.entries[j * n + i]);
                if !a.is_finite() || a < 0.0 {
                    return Err(Error::InvalidMatrix(format!("entry ({i},{j}) = {a}")));
                }
                if a.to_bits() != b.to_bits() {
                    return Err(Error::InvalidMatrix(format!(
                        "asymmetric entries ({i},{j}) = {a}, ({j},{i}) = {b}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: Vertex, j: Vertex) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: Vertex) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn max_entry(&self) -> f64 {
        self.entries.iter().copied().fold(0.0, f64::max)
    }

    /// `min_v max_u d(u, v)`: past this radius the complex is a cone and no
    /// new topology appears. Used as the default threshold.
    pub fn enclosing_radius(&self) -> f64 {
        (0..self.n)
            .map(|v| self.row(v).iter().copied().fold(0.0, f64::max))
            .fold(f64::INFINITY, f64::min)
    }

    /// Serializes the strict lower triangle, one matrix row per line, using
    /// shortest round-trip decimals.
    pub fn to_lower_string(&self) -> String {
        let mut out = String::new();
        for i in 1..self.n {
            for j in 0..i {
                if j > 0 {
                    out.push(',');
                }
                write!(out, "{}", self.get(i, j)).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    let mut sum = 0.0;
    for (x, y) in a.iter().zip(b) {
        let t = x - y;
        sum += t * t;
    }
    sum.sqrt()
}

fn triangular_root(k: usize) -> Option<usize> {
    // n(n-1)/2 = k
    let mut n = ((1.0 + (1.0 + 8.0 * k as f64).sqrt()) / 2.0) as usize;
    while n * n.saturating_sub(1) / 2 > k {
        n -= 1;
    }
    while (n + 1) * n / 2 <= k {
        n += 1;
    }
    (n * (n - 1) / 2 == k).then_some(n)
}

/// One entry of a neighborhood list.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Neighbor {
    pub distance: f64,
    pub vertex: Vertex,
}

impl Neighbor {
    fn cmp_key(&self, other: &Self) -> Ordering {
        self.distance
            .total_cmp(&other.distance)
            .then(self.vertex.cmp(&other.vertex))
    }
}

/// For every vertex, all vertices sorted by distance from it.
///
/// `lists[v][0]` is always `(0, v)`; the remaining entries are sorted by
/// `(distance, vertex)`.
#[derive(Clone, Debug)]
pub struct NeighborhoodLists {
    lists: Vec<Vec<Neighbor>>,
}

impl NeighborhoodLists {
    pub fn new(m: &DistanceMatrix) -> Self {
        let lists = (0..m.len())
            .map(|v| {
                let mut list: Vec<Neighbor> = m
                    .row(v)
                    .iter()
                    .enumerate()
                    .filter(|&(w, _)| w != v)
                    .map(|(vertex, &distance)| Neighbor { distance, vertex })
                    .collect();
                list.sort_unstable_by(Neighbor::cmp_key);
                list.insert(
                    0,
                    Neighbor {
                        distance: 0.0,
                        vertex: v,
                    },
                );
                list
            })
            .collect();
        NeighborhoodLists { lists }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: Vertex) -> &[Neighbor] {
        &self.lists[v]
    }

    /// The prefix of `v`'s list with distance `<= radius`.
    pub fn closed_ball(&self, v: Vertex, radius: f64) -> &[Neighbor] {
        let list = &self.lists[v];
        // self sits at the head even when other distance-0 entries follow
        let end = 1 + list[1..].partition_point(|nb| nb.distance <= radius);
        &list[..end]
    }

    /// The prefix of `v`'s list with distance `< radius`.
    pub fn open_ball(&self, v: Vertex, radius: f64) -> &[Neighbor] {
        let list = &self.lists[v];
        if radius <= 0.0 {
            return &list[..0];
        }
        let end = 1 + list[1..].partition_point(|nb| nb.distance < radius);
        &list[..end]
    }
}
