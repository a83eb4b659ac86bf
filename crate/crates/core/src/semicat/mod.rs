//! Finite semicategories: objects, disjoint hom sets, and a total associative
//! composition table.
//!
//! Associativity is checked when a [`FinSemicat`] is built; an inconsistent
//! table never becomes a value of this type.

mod enumerate;
mod functor;
mod identity;
mod nerve;
mod slice;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use enumerate::{enumerate_semicats, enumerate_with_hom_sizes, hom_size_vectors, EnumSpec};
pub use functor::{
    category_of_elements, enumerate_functors, functor_id_preserving, identity_preservation,
    representation_check, Elements, FinSetFunctor, IdPreservationFailure, IdPreservationReport,
};
pub use identity::{
    check_id_characterisation, good_identities, i_of, identity_structure, is_equivalence,
    IdCharacterisationReport, IdCounterexample,
};
pub use nerve::{nerve, nerve_chains};
pub use slice::{slice, IdentityLiftReport, Slice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemicatError {
    #[error("duplicate object {0:?}")]
    DuplicateObject(String),
    #[error("duplicate morphism {0:?}")]
    DuplicateMorphism(String),
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("unknown morphism {0:?}")]
    UnknownMorphism(String),
    #[error("{g} and {f} are not composable")]
    NotComposable { g: String, f: String },
    #[error("composite {g} ∘ {f} = {h} has the wrong endpoints")]
    BadComposite { g: String, f: String, h: String },
    #[error("composite {g} ∘ {f} is given twice")]
    DuplicateComposite { g: String, f: String },
    #[error("composite {g} ∘ {f} is missing")]
    MissingComposite { g: String, f: String },
    #[error("composition is not associative at ({h} ∘ {g}) ∘ {f}")]
    NotAssociative { h: String, g: String, f: String },
    #[error("enumeration bounds too large: {0}")]
    EnumerationTooLarge(String),
    #[error("{0} is not an equivalence")]
    NotEquivalence(String),
    #[error("base semicategory has no identity structure")]
    NoIdentityStructure,
    #[error("functor: {0}")]
    Functor(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinSemicat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    /// `comp[g * m + f]`, present exactly when `dst(f) == src(g)`.
    comp: Vec<Option<usize>>,
}

impl FinSemicat {
    /// Build from a composite function given on every composable pair.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        mut composite: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self, SemicatError> {
        let m = morphisms.len();
        let mut comp = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                if morphisms[f].dst == morphisms[g].src {
                    comp[g * m + f] = Some(composite(g, f));
                }
            }
        }
        Self::from_table(objects, morphisms, comp)
    }

    /// Build from a raw table `comp[g * m + f]`, checking everything.
    pub fn from_table(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        comp: Vec<Option<usize>>,
    ) -> Result<Self, SemicatError> {
        let mut seen = HashMap::new();
        for o in &objects {
            if seen.insert(o.as_str(), ()).is_some() {
                return Err(SemicatError::DuplicateObject(o.clone()));
            }
        }
        let mut seen = HashMap::new();
        for f in &morphisms {
            if seen.insert(f.name.as_str(), ()).is_some() {
                return Err(SemicatError::DuplicateMorphism(f.name.clone()));
            }
            if f.src >= objects.len() || f.dst >= objects.len() {
                return Err(SemicatError::UnknownObject(format!(
                    "endpoint of {}",
                    f.name
                )));
            }
        }
        let m = morphisms.len();
        assert_eq!(comp.len(), m * m, "composition table has the wrong size");
        let c = FinSemicat {
            objects,
            morphisms,
            comp,
        };
        for g in 0..m {
            for f in 0..m {
                let composable = c.morphisms[f].dst == c.morphisms[g].src;
                match (composable, c.comp[g * m + f]) {
                    (true, None) => {
                        return Err(SemicatError::MissingComposite {
                            g: c.name(g).into(),
                            f: c.name(f).into(),
                        })
                    }
                    (false, Some(_)) => {
                        return Err(SemicatError::NotComposable {
                            g: c.name(g).into(),
                            f: c.name(f).into(),
                        })
                    }
                    (true, Some(h)) => {
                        let ok = h < m
                            && c.morphisms[h].src == c.morphisms[f].src
                            && c.morphisms[h].dst == c.morphisms[g].dst;
                        if !ok {
                            return Err(SemicatError::BadComposite {
                                g: c.name(g).into(),
                                f: c.name(f).into(),
                                h: c.morphisms.get(h).map_or("?".into(), |x| x.name.clone()),
                            });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        if let Some((h, g, f)) = c.associativity_counterexample() {
            return Err(SemicatError::NotAssociative {
                h: c.name(h).into(),
                g: c.name(g).into(),
                f: c.name(f).into(),
            });
        }
        Ok(c)
    }

    /// Build from names: `homs` are `(src, dst, name)`, `composites` are
    /// `(g, f, g∘f)`.
    pub fn from_names(
        objects: &[&str],
        homs: &[(&str, &str, &str)],
        composites: &[(&str, &str, &str)],
    ) -> Result<Self, SemicatError> {
        let objects: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let obj = |n: &str| {
            objects
                .iter()
                .position(|o| o == n)
                .ok_or_else(|| SemicatError::UnknownObject(n.into()))
        };
        let morphisms = homs
            .iter()
            .map(|&(s, d, name)| {
                Ok(Morphism {
                    name: name.into(),
                    src: obj(s)?,
                    dst: obj(d)?,
                })
            })
            .collect::<Result<Vec<_>, SemicatError>>()?;
        let mor = |n: &str| {
            morphisms
                .iter()
                .position(|f| f.name == n)
                .ok_or_else(|| SemicatError::UnknownMorphism(n.into()))
        };
        let m = morphisms.len();
        let mut comp = vec![None; m * m];
        for &(g, f, h) in composites {
            let (gi, fi, hi) = (mor(g)?, mor(f)?, mor(h)?);
            if comp[gi * m + fi].is_some() {
                return Err(SemicatError::DuplicateComposite {
                    g: g.into(),
                    f: f.into(),
                });
            }
            comp[gi * m + fi] = Some(hi);
        }
        Self::from_table(objects, morphisms, comp)
    }

    fn associativity_counterexample(&self) -> Option<(usize, usize, usize)> {
        let m = self.morphisms.len();
        for f in 0..m {
            for g in 0..m {
                let Some(gf) = self.compose(g, f) else { continue };
                for h in 0..m {
                    let Some(hg) = self.compose(h, g) else { continue };
                    if self.compose(hg, f) != self.compose(h, gf) {
                        return Some((h, g, f));
                    }
                }
            }
        }
        None
    }

    pub fn empty() -> Self {
        FinSemicat {
            objects: Vec::new(),
            morphisms: Vec::new(),
            comp: Vec::new(),
        }
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn name(&self, f: usize) -> &str {
        &self.morphisms[f].name
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn dst(&self, f: usize) -> usize {
        self.morphisms[f].dst
    }

    pub fn find_object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn find_morphism(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|f| f.name == name)
    }

    /// Morphisms `a -> b` in index order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f].src == a && self.morphisms[f].dst == b)
            .collect()
    }

    /// `g ∘ f`, or `None` when `f` does not end where `g` starts.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.morphisms.len() + f]
    }

    /// The composition table as `(g, f, g∘f)` triples.
    pub fn composites(&self) -> Vec<(usize, usize, usize)> {
        let m = self.morphisms.len();
        let mut out = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = self.compose(g, f) {
                    out.push((g, f, h));
                }
            }
        }
        out
    }

    /// Reverse every hom set and swap the arguments of composition.
    pub fn opposite(&self) -> FinSemicat {
        let m = self.morphisms.len();
        let morphisms = self
            .morphisms
            .iter()
            .map(|f| Morphism {
                name: f.name.clone(),
                src: f.dst,
                dst: f.src,
            })
            .collect();
        let mut comp = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                comp[g * m + f] = self.compose(f, g);
            }
        }
        FinSemicat {
            objects: self.objects.clone(),
            morphisms,
            comp,
        }
    }
}

impl fmt::Display for FinSemicat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "objects {}", self.objects.join(" "))?;
        for m in &self.morphisms {
            writeln!(
                f,
                "hom {} {} {}",
                self.objects[m.src], self.objects[m.dst], m.name
            )?;
        }
        for (g, x, h) in self.composites() {
            writeln!(f, "comp {} {} {}", self.name(g), self.name(x), self.name(h))?;
        }
        Ok(())
    }
}

/// Small named instances used throughout the tests and documentation.
pub mod examples {
    use super::FinSemicat;

    /// One object, one morphism `f` with `f ∘ f = f`.
    pub fn trivial() -> FinSemicat {
        FinSemicat::from_names(&["x"], &[("x", "x", "f")], &[("f", "f", "f")]).unwrap()
    }

    /// The group of order two: `e` neutral, `g ∘ g = e`.
    pub fn z2() -> FinSemicat {
        FinSemicat::from_names(
            &["x"],
            &[("x", "x", "e"), ("x", "x", "g")],
            &[
                ("e", "e", "e"),
                ("e", "g", "g"),
                ("g", "e", "g"),
                ("g", "g", "e"),
            ],
        )
        .unwrap()
    }

    /// The cyclic group of order three as a one-object semicategory.
    pub fn z3() -> FinSemicat {
        let names = ["r0", "r1", "r2"];
        let mut comps = Vec::new();
        for (i, g) in names.iter().enumerate() {
            for (j, f) in names.iter().enumerate() {
                comps.push((*g, *f, names[(i + j) % 3]));
            }
        }
        FinSemicat::from_names(
            &["x"],
            &[("x", "x", "r0"), ("x", "x", "r1"), ("x", "x", "r2")],
            &comps,
        )
        .unwrap()
    }

    /// One object, hom `{a, b}`, every composite equal to `a`.
    pub fn constant() -> FinSemicat {
        FinSemicat::from_names(
            &["x"],
            &[("x", "x", "a"), ("x", "x", "b")],
            &[
                ("a", "a", "a"),
                ("a", "b", "a"),
                ("b", "a", "a"),
                ("b", "b", "a"),
            ],
        )
        .unwrap()
    }

    /// Two objects with exactly one morphism between any ordered pair.
    pub fn codiscrete2() -> FinSemicat {
        let homs = [("x", "x", "xx"), ("x", "y", "xy"), ("y", "x", "yx"), ("y", "y", "yy")];
        let mut comps = Vec::new();
        for &(a, b, g) in &homs {
            for &(c, d, f) in &homs {
                if d == a {
                    let h = homs.iter().find(|h| h.0 == c && h.1 == b).unwrap().2;
                    comps.push((g, f, h));
                }
            }
        }
        FinSemicat::from_names(&["x", "y"], &homs, &comps).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn examples_build() {
        assert_eq!(z2().morphism_count(), 2);
        assert_eq!(z3().morphism_count(), 3);
        assert_eq!(codiscrete2().composites().len(), 8);
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // x∘y = y for x = a, swap otherwise: (b∘b)∘a = a∘a... pick a known failure
        let r = FinSemicat::from_names(
            &["x"],
            &[("x", "x", "a"), ("x", "x", "b")],
            &[
                ("a", "a", "b"),
                ("a", "b", "a"),
                ("b", "a", "a"),
                ("b", "b", "a"),
            ],
        );
        assert!(matches!(r, Err(SemicatError::NotAssociative { .. })));
    }

    #[test]
    fn missing_and_ill_typed_composites() {
        let r = FinSemicat::from_names(&["x"], &[("x", "x", "f")], &[]);
        assert!(matches!(r, Err(SemicatError::MissingComposite { .. })));
        let r = FinSemicat::from_names(
            &["x", "y"],
            &[("x", "y", "f"), ("x", "x", "i")],
            &[("f", "i", "i"), ("i", "i", "i")],
        );
        assert!(matches!(r, Err(SemicatError::BadComposite { .. })));
        let r = FinSemicat::from_names(
            &["x", "y"],
            &[("x", "y", "f")],
            &[("f", "f", "f")],
        );
        assert!(matches!(r, Err(SemicatError::NotComposable { .. })));
    }

    #[test]
    fn opposite_examples() {
        for c in [z2(), z3(), constant(), codiscrete2(), trivial()] {
            assert_eq!(c.opposite().opposite(), c);
        }
        assert_eq!(z2().opposite(), z2());
        let arrow = FinSemicat::from_names(&["a", "b"], &[("a", "b", "f")], &[]).unwrap();
        let op = arrow.opposite();
        assert_eq!(arrow.hom(0, 1).len(), 1);
        assert_eq!(op.hom(0, 1).len(), 0);
        assert_eq!(op.hom(1, 0).len(), 1);
    }
}
