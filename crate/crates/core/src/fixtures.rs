//! Small reference inputs shared by tests, docs and the CLI.

use crate::metric::DistanceMatrix;

/// Distances between 8 points evenly spaced on the unit circle, rounded to
/// two decimals. Vertex `k` sits at angle `k * 45°`.
pub const CIRCLE8_ROWS: [[f64; 8]; 8] = [
    [0.00, 0.77, 1.41, 1.85, 2.00, 1.85, 1.41, 0.77],
    [0.77, 0.00, 0.77, 1.41, 1.85, 2.00, 1.85, 1.41],
    [1.41, 0.77, 0.00, 0.77, 1.41, 1.85, 2.00, 1.85],
    [1.85, 1.41, 0.77, 0.00, 0.77, 1.41, 1.85, 2.00],
    [2.00, 1.85, 1.41, 0.77, 0.00, 0.77, 1.41, 1.85],
    [1.85, 2.00, 1.85, 1.41, 0.77, 0.00, 0.77, 1.41],
    [1.41, 1.85, 2.00, 1.85, 1.41, 0.77, 0.00, 0.77],
    [0.77, 1.41, 1.85, 2.00, 1.85, 1.41, 0.77, 0.00],
];

pub fn circle8() -> DistanceMatrix {
    DistanceMatrix::from_rows(CIRCLE8_ROWS.iter().map(|r| r.to_vec()).collect())
        .expect("fixture is a valid metric")
}
