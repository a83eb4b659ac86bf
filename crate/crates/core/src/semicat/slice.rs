//! Slicing over an object.

use serde::Serialize;

use super::identity::identity_structure;
use super::{FinSemicat, Morphism};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityLiftReport {
    pub base_has_identities: bool,
    pub slice_has_identities: bool,
    /// The identity over `(a, f)` is the identity of `a`, for every slice object.
    pub lifted_agree: bool,
}

impl IdentityLiftReport {
    pub fn passes(&self) -> bool {
        !self.base_has_identities || (self.slice_has_identities && self.lifted_agree)
    }
}

#[derive(Debug, Clone)]
pub struct Slice {
    pub semicat: FinSemicat,
    /// The base morphism `f : a -> g` of each slice object.
    pub over: Vec<usize>,
    /// The base morphism underlying each slice morphism.
    pub base_of: Vec<usize>,
    pub identity_lift: IdentityLiftReport,
}

/// Objects are the morphisms into `g`; a morphism `(a, f) -> (b, h)` is an
/// `m : a -> b` with `h ∘ m = f`.
pub fn slice(c: &FinSemicat, g: usize) -> Slice {
    let over: Vec<usize> = (0..c.morphism_count()).filter(|&f| c.dst(f) == g).collect();
    let objects: Vec<String> = over.iter().map(|&f| c.name(f).to_string()).collect();
    let mut morphisms = Vec::new();
    let mut base_of = Vec::new();
    for (i, &f) in over.iter().enumerate() {
        for (j, &h) in over.iter().enumerate() {
            for m in c.hom(c.src(f), c.src(h)) {
                if c.compose(h, m) == Some(f) {
                    morphisms.push(Morphism {
                        name: format!("{}@{}>{}", c.name(m), c.name(f), c.name(h)),
                        src: i,
                        dst: j,
                    });
                    base_of.push(m);
                }
            }
        }
    }
    let semicat = FinSemicat::from_fn(objects, morphisms.clone(), |y, x| {
        let m = c.compose(base_of[y], base_of[x]).unwrap();
        (0..morphisms.len())
            .find(|&k| {
                base_of[k] == m && morphisms[k].src == morphisms[x].src && morphisms[k].dst == morphisms[y].dst
            })
            .expect("slice composite exists")
    })
    .expect("slice of a valid semicategory is valid");

    let base_ids = identity_structure(c);
    let slice_ids = identity_structure(&semicat);
    let lifted_agree = match (&base_ids, &slice_ids) {
        (Some(b), Some(s)) => s
            .iter()
            .enumerate()
            .all(|(i, &k)| base_of[k] == b[c.src(over[i])]),
        _ => false,
    };
    Slice {
        identity_lift: IdentityLiftReport {
            base_has_identities: base_ids.is_some(),
            slice_has_identities: slice_ids.is_some(),
            lifted_agree,
        },
        semicat,
        over,
        base_of,
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;

    #[test]
    fn codiscrete_slice() {
        let c = codiscrete2();
        for g in 0..2 {
            let s = slice(&c, g);
            assert_eq!(s.semicat.object_count(), 2);
            for a in 0..2 {
                for b in 0..2 {
                    assert_eq!(s.semicat.hom(a, b).len(), 1);
                }
            }
            assert!(s.identity_lift.slice_has_identities);
            assert!(s.identity_lift.passes());
        }
    }

    #[test]
    fn empty_and_trivial_slices() {
        let arrow = FinSemicat::from_names(&["a", "b"], &[("a", "b", "f")], &[]).unwrap();
        let s = slice(&arrow, 0);
        assert_eq!(s.semicat.object_count(), 0);
        let t = slice(&trivial(), 0);
        assert_eq!(t.semicat.object_count(), 1);
        assert_eq!(t.semicat.morphism_count(), 1);
    }
}
