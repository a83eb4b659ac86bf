use infcwf_core::semicat::{
    check_id_characterisation, enumerate_semicats, enumerate_with_hom_sizes, good_identities,
    i_of, identity_structure, is_equivalence, nerve, slice, EnumSpec, FinSemicat,
};
use infcwf_core::sset::{
    composition_from_segal, equivalence_edges, identity_structure as sset_identities, segal_report,
};

/// Count associative binary operations on an `n`-element set by brute force.
fn associative_tables(n: usize) -> usize {
    let cells = n * n;
    let total = n.pow(cells as u32);
    (0..total)
        .filter(|&code| {
            let mut t = vec![0; cells];
            let mut c = code;
            for slot in t.iter_mut() {
                *slot = c % n;
                c /= n;
            }
            let op = |a: usize, b: usize| t[a * n + b];
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| op(op(a, b), c) == op(a, op(b, c)))))
        })
        .count()
}

#[test]
fn one_object_counts_match_brute_force() {
    for n in 0..=3 {
        let expected = if n == 0 { 1 } else { associative_tables(n) };
        assert_eq!(enumerate_with_hom_sizes(1, &[n]).len(), expected, "hom size {n}");
    }
    assert_eq!(associative_tables(2), 8);
    assert_eq!(associative_tables(3), 113);
}

fn all_small() -> Vec<FinSemicat> {
    up_to(4)
}

fn up_to(total: usize) -> Vec<FinSemicat> {
    enumerate_semicats(EnumSpec {
        max_objects: 2,
        max_total_morphisms: total,
    })
    .unwrap()
    .collect()
}

/// Bijectivity of pre/post composition, computed from the table by counting
/// preimages.
fn oracle_equivalence(c: &FinSemicat, e: usize) -> bool {
    let (x, y) = (c.src(e), c.dst(e));
    (0..c.object_count()).all(|z| {
        let pre_ok = c.hom(x, z).iter().all(|&t| {
            c.hom(y, z).iter().filter(|&&g| c.compose(g, e) == Some(t)).count() == 1
        }) && c.hom(y, z).len() == c.hom(x, z).len();
        let post_ok = c.hom(z, y).iter().all(|&t| {
            c.hom(z, x).iter().filter(|&&f| c.compose(e, f) == Some(t)).count() == 1
        }) && c.hom(z, x).len() == c.hom(z, y).len();
        pre_ok && post_ok
    })
}

#[test]
fn identity_theory_on_enumeration() {
    let all = all_small();
    assert!(all.len() > 100);
    for c in &all {
        for x in 0..c.object_count() {
            assert!(good_identities(c, x).len() <= 1);
        }
        assert!(check_id_characterisation(c).passes(), "{c}");
        for e in 0..c.morphism_count() {
            assert_eq!(is_equivalence(c, e), oracle_equivalence(c, e));
            if is_equivalence(c, e) {
                let i = i_of(c, e).unwrap();
                assert!(good_identities(c, c.src(e)).contains(&i));
                let idempotent = c.compose(e, e) == Some(e);
                assert_eq!(e == i, idempotent);
            }
        }
    }
}

#[test]
fn nerve_invariants_on_enumeration() {
    for c in up_to(3) {
        let n = nerve(&c, 4);
        assert!(n.validate().is_valid());
        assert!(segal_report(&n, 4).unwrap().passes(), "{c}");
        if c.morphism_count() == 0 {
            continue;
        }
        let table = composition_from_segal(&n).unwrap();
        for (g, f, h) in c.composites() {
            assert_eq!(table.compose(g, f), Some(h));
        }
        assert_eq!(table.composites.len(), c.composites().len());
        let eq = equivalence_edges(&n).unwrap();
        for (e, &flag) in eq.iter().enumerate() {
            assert_eq!(flag, is_equivalence(&c, e));
        }
        assert_eq!(sset_identities(&n).unwrap().structure, identity_structure(&c));
    }
}

#[test]
fn opposite_preserves_identity_theory() {
    for c in all_small() {
        let op = c.opposite();
        for e in 0..c.morphism_count() {
            assert_eq!(is_equivalence(&c, e), is_equivalence(&op, e));
        }
        for x in 0..c.object_count() {
            assert_eq!(good_identities(&c, x), good_identities(&op, x));
        }
        assert_eq!(identity_structure(&c), identity_structure(&op));
        assert_eq!(op.opposite(), c);
        assert_eq!(nerve(&c, 3).opposite().counts(), nerve(&op, 3).counts());
    }
}

#[test]
fn slices_keep_identities() {
    for c in all_small() {
        for g in 0..c.object_count() {
            let s = slice(&c, g);
            assert!(s.identity_lift.passes(), "{c}");
            for (k, m) in s.semicat.morphisms().iter().enumerate() {
                let base = s.base_of[k];
                assert_eq!(c.compose(s.over[m.dst], base), Some(s.over[m.src]));
            }
        }
    }
}
