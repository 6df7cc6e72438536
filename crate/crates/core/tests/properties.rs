use proptest::prelude::*;

use ripstream::bench::random_cloud;
use ripstream::coboundary::{apparent_cofacet, coboundary, is_apparent_pair};
use ripstream::cofacet::is_responsible;
use ripstream::oracle;
use ripstream::simplex::{canonical_cmp, classify_first_full_diameter_facet};
use ripstream::stream::{baseline_simplex_stream, full_filtration_stream, SimplexStream};
use ripstream::{DistanceMatrix, NeighborhoodLists, Simplex, Vertex};

fn instance() -> impl Strategy<Value = (DistanceMatrix, f64)> {
    (
        4usize..=10,
        2usize..=4,
        any::<u64>(),
        prop_oneof![Just(1.0), Just(0.8), Just(0.5)],
    )
        .prop_map(|(n, ambient, seed, scale)| {
            let m = DistanceMatrix::from_points(&random_cloud(n, ambient, seed));
            let threshold = m.enclosing_radius() * scale;
            (m, threshold)
        })
}

/// Points on a coarse integer grid, so distances tie a lot.
fn tied_instance() -> impl Strategy<Value = (DistanceMatrix, f64)> {
    prop::collection::vec((0u8..3, 0u8..3), 4..=9).prop_map(|pts| {
        let rows: Vec<Vec<f64>> = pts
            .iter()
            .map(|&(ax, ay)| {
                pts.iter()
                    .map(|&(bx, by)| f64::from(ax.abs_diff(bx)) + f64::from(ay.abs_diff(by)))
                    .collect()
            })
            .collect();
        let m = DistanceMatrix::from_rows(rows).unwrap();
        let t = m.enclosing_radius();
        (m, t)
    })
}

fn any_instance() -> impl Strategy<Value = (DistanceMatrix, f64)> {
    prop_oneof![instance(), tied_instance()]
}

fn sorted(mut v: Vec<Simplex>) -> Vec<Simplex> {
    v.sort_by(canonical_cmp);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stream_matches_brute_force((m, t) in any_instance(), dim in 2usize..=4) {
        let nl = NeighborhoodLists::new(&m);
        let mut stream = SimplexStream::new(&m, &nl, dim, t, false);
        let got: Vec<Simplex> = stream.by_ref().collect();
        prop_assert!(got.windows(2).all(|w| w[0].diameter() <= w[1].diameter()));
        prop_assert!(stream.stats().max_stack_depth < dim);
        for s in &got {
            prop_assert_eq!(s.lead_edge(), oracle::brute_lead_edge(s.vertices(), &m));
            prop_assert_eq!(s.diameter(), oracle::brute_diameter(s.vertices(), &m));
        }
        let expected = oracle::brute_simplices(&m, dim, t);
        prop_assert_eq!(sorted(got), expected.clone());
        prop_assert_eq!(baseline_simplex_stream(&m, dim, t), expected);
    }

    #[test]
    fn exactly_one_responsible_facet((m, t) in any_instance(), dim in 2usize..=4) {
        for tau in oracle::brute_simplices(&m, dim, t) {
            let owners: Vec<Simplex> = tau
                .facets(&m)
                .into_iter()
                .filter(|f| {
                    let v = *tau.vertices().iter().find(|&&v| !f.contains(v)).unwrap();
                    is_responsible(f, v, &m).unwrap()
                })
                .collect();
            prop_assert_eq!(owners.len(), 1, "tau {}", tau);
            let first = oracle::brute_first_full_diameter_facet(&tau, &m);
            prop_assert_eq!(owners[0].vertices(), first.vertices());
            let classified = classify_first_full_diameter_facet(&tau).unwrap().facet;
            prop_assert_eq!(classified.vertices(), first.vertices());
        }
    }

    #[test]
    fn coboundaries_match_brute_force((m, t) in any_instance(), dim in 1usize..=3, bounded in any::<bool>()) {
        let nl = NeighborhoodLists::new(&m);
        let limit = if bounded { t } else { f64::INFINITY };
        for sigma in oracle::brute_simplices(&m, dim, t) {
            let got: Vec<(Vertex, f64)> =
                coboundary(&sigma, &nl, &m, bounded.then_some(t)).unwrap().collect();
            prop_assert!(got.windows(2).all(|w| w[0].1 <= w[1].1));
            let mut got = got;
            got.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
            prop_assert_eq!(got, oracle::brute_cofacets(&sigma, &m, limit));
        }
    }

    #[test]
    fn apparent_pairs_match_brute_force((m, t) in any_instance(), dim in 1usize..=3) {
        let nl = NeighborhoodLists::new(&m);
        let pairs = oracle::brute_apparent_pairs(&m, dim, t);
        for sigma in oracle::brute_simplices(&m, dim, t) {
            let got = apparent_cofacet(&sigma, &nl, &m).unwrap();
            let want = pairs.iter().find(|(s, _)| s == &sigma).map(|(_, tau)| tau.clone());
            prop_assert_eq!(&got, &want, "sigma {}", sigma);
            if let Some(tau) = got {
                prop_assert!(is_apparent_pair(&sigma, &tau, &m).unwrap());
            }
        }
    }

    #[test]
    fn skipping_apparent_cofacets((m, t) in any_instance(), dim in 2usize..=4) {
        let nl = NeighborhoodLists::new(&m);
        let cofacets: Vec<Simplex> =
            oracle::brute_apparent_pairs(&m, dim - 1, t).into_iter().map(|(_, tau)| tau).collect();
        let expected: Vec<Simplex> = oracle::brute_simplices(&m, dim, t)
            .into_iter()
            .filter(|s| !cofacets.contains(s))
            .collect();
        let mut stream = SimplexStream::new(&m, &nl, dim, t, true);
        let got: Vec<Simplex> = stream.by_ref().collect();
        prop_assert_eq!(stream.stats().apparent_skipped as usize, cofacets.len());
        prop_assert_eq!(sorted(got), expected);
    }

    #[test]
    fn merged_filtration_is_canonical((m, t) in any_instance(), max_dim in 0usize..=3) {
        let nl = NeighborhoodLists::new(&m);
        let got: Vec<Simplex> = full_filtration_stream(&m, &nl, max_dim, t).collect();
        let expected: Vec<Simplex> =
            sorted((0..=max_dim).flat_map(|d| oracle::brute_simplices(&m, d, t)).collect());
        prop_assert_eq!(got, expected);
    }
}
