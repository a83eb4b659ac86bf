use infcwf_core::simplex::{binomial, compose_monotone, face_map, horn, standard_simplex};
use infcwf_core::sset::corpus::from_triangles;
use infcwf_core::sset::{induced_composition, segal_report, FinSSet};
use proptest::prelude::*;

const NAMES: [&str; 3] = ["a", "b", "c"];

fn associative(k: usize, table: &[usize]) -> bool {
    (0..k).all(|h| {
        (0..k).all(|g| (0..k).all(|f| table[table[h * k + g] * k + f] == table[h * k + table[g * k + f]]))
    })
}

/// One vertex, `k` loops, and a 2-cell `(g, f, gf)` for each listed triple.
fn one_object(k: usize, triples: &[(usize, usize, usize)]) -> FinSSet {
    let edges: Vec<_> = NAMES[..k].iter().map(|n| (*n, "x", "x")).collect();
    let tris: Vec<_> = triples.iter().map(|&(g, f, h)| (NAMES[g], NAMES[f], NAMES[h])).collect();
    from_triangles(&["x"], &edges, &tris)
}

fn table_strategy() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (1usize..=3).prop_flat_map(|k| (Just(k), prop::collection::vec(0..k, k * k)))
}

#[test]
fn simplex_and_horn_counts() {
    for n in 1..=4 {
        let d = standard_simplex(n, n);
        assert!(d.validate().is_valid());
        assert!(segal_report(&d, n).unwrap().passes());
        for m in 0..=n {
            assert_eq!(d.count(m), binomial(n + 1, m + 1));
        }
        for k in 0..=n {
            let h = horn(n, k, n).unwrap();
            assert!(h.validate().is_valid());
            assert_eq!(h.count(n), 0);
            assert_eq!(h.count(n - 1), n);
        }
    }
}

proptest! {
    #[test]
    fn cosimplicial_identities(n in 2usize..7, i in 0usize..7, j in 0usize..7) {
        prop_assume!(i < j && j <= n);
        let lhs = compose_monotone(&face_map(n, j).unwrap(), &face_map(n - 1, i).unwrap()).unwrap();
        let rhs = compose_monotone(&face_map(n, i).unwrap(), &face_map(n - 1, j - 1).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn segal_iff_table_is_associative((k, table) in table_strategy()) {
        let triples: Vec<_> = (0..k * k).map(|gf| (gf / k, gf % k, table[gf])).collect();
        let a = one_object(k, &triples);
        prop_assert!(a.validate().is_valid());
        let segal = segal_report(&a, 3).unwrap().passes();
        prop_assert_eq!(segal, associative(k, &table));
    }

    #[test]
    fn segal_agrees_with_induced_composition(
        k in 1usize..=3,
        raw in prop::collection::vec((0usize..3, 0usize..3, 0usize..3), 0..12),
    ) {
        let triples: Vec<_> = raw.into_iter().map(|(g, f, h)| (g % k, f % k, h % k)).collect();
        let a = one_object(k, &triples);
        prop_assert!(a.validate().is_valid());
        let induced = induced_composition(&a);
        let segal = segal_report(&a, 3).unwrap().passes();
        prop_assert_eq!(segal, induced.total && induced.associative);
    }

    #[test]
    fn opposite_is_an_involution_preserving_segal((k, table) in table_strategy()) {
        let triples: Vec<_> = (0..k * k).map(|gf| (gf / k, gf % k, table[gf])).collect();
        let a = one_object(k, &triples);
        let op = a.opposite();
        prop_assert!(op.validate().is_valid());
        prop_assert_eq!(&op.opposite(), &a);
        prop_assert_eq!(segal_report(&op, 3).unwrap().passes(), segal_report(&a, 3).unwrap().passes());
    }
}
