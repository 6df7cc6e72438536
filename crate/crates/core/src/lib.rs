//! In-order Vietoris-Rips enumeration.
//!
//! * [`stream`] generates the simplices of each dimension already sorted by
//!   diameter, by chaining same-diameter cofacets off each edge
//!   ([`cofacet`]) instead of building and sorting whole layers.
//! * [`coboundary`] lists the cofacets of a single simplex in filtration
//!   order from per-vertex sorted neighbor lists, and finds apparent-pair
//!   candidates before doing any other work.
//! * [`oracle`] holds brute-force versions of all of the above for testing.
//!
//! ```
//! use ripstream::fixtures::circle8;
//! use ripstream::metric::NeighborhoodLists;
//! use ripstream::stream::SimplexStream;
//!
//! let m = circle8();
//! let nl = NeighborhoodLists::new(&m);
//! let triangles: Vec<_> = SimplexStream::new(&m, &nl, 2, m.enclosing_radius(), false).collect();
//! assert_eq!(triangles.len(), 56);
//! assert!(triangles.windows(2).all(|w| w[0].diameter() <= w[1].diameter()));
//! ```

pub mod bench;
pub mod cli;
pub mod coboundary;
pub mod cofacet;
pub mod error;
pub mod fixtures;
pub mod metric;
pub mod oracle;
pub mod simplex;
pub mod stream;

pub use error::{Error, Result};
pub use metric::{DistanceMatrix, NeighborhoodLists, PointCloud};
pub use simplex::{Simplex, Vertex};
