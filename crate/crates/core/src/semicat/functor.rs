//! Functors into finite sets, their categories of elements and representations.

use std::collections::HashMap;

use serde::Serialize;

use super::identity::identity_structure;
use super::nerve::{nerve, nerve_chains};
use super::{FinSemicat, Morphism, SemicatError};
use crate::sset::SSetMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSetFunctor {
    base: FinSemicat,
    carriers: Vec<Vec<String>>,
    actions: Vec<Vec<usize>>,
}

impl FinSetFunctor {
    /// `actions[f][x]` is the image of element `x` of the source carrier of `f`.
    pub fn new(
        base: FinSemicat,
        carriers: Vec<Vec<String>>,
        actions: Vec<Vec<usize>>,
    ) -> Result<Self, SemicatError> {
        if carriers.len() != base.object_count() {
            return Err(SemicatError::Functor(format!(
                "{} carriers for {} objects",
                carriers.len(),
                base.object_count()
            )));
        }
        if actions.len() != base.morphism_count() {
            return Err(SemicatError::Functor(format!(
                "{} actions for {} morphisms",
                actions.len(),
                base.morphism_count()
            )));
        }
        for (f, act) in actions.iter().enumerate() {
            let (a, b) = (base.src(f), base.dst(f));
            if act.len() != carriers[a].len() || act.iter().any(|&y| y >= carriers[b].len()) {
                return Err(SemicatError::Functor(format!(
                    "action of {} is not a function {} -> {}",
                    base.name(f),
                    base.objects()[a],
                    base.objects()[b]
                )));
            }
        }
        for (g, f, h) in base.composites() {
            for x in 0..carriers[base.src(f)].len() {
                if actions[g][actions[f][x]] != actions[h][x] {
                    return Err(SemicatError::Functor(format!(
                        "action does not preserve {} ∘ {} = {} at {}",
                        base.name(g),
                        base.name(f),
                        base.name(h),
                        carriers[base.src(f)][x]
                    )));
                }
            }
        }
        Ok(FinSetFunctor {
            base,
            carriers,
            actions,
        })
    }

    pub fn base(&self) -> &FinSemicat {
        &self.base
    }

    pub fn carriers(&self) -> &[Vec<String>] {
        &self.carriers
    }

    pub fn carrier(&self, a: usize) -> &[String] {
        &self.carriers[a]
    }

    pub fn action(&self, f: usize) -> &[usize] {
        &self.actions[f]
    }

    pub fn apply(&self, f: usize, x: usize) -> usize {
        self.actions[f][x]
    }
}

#[derive(Debug, Clone)]
pub struct Elements {
    pub semicat: FinSemicat,
    /// `(object, element)` for each object of the category of elements.
    pub elements: Vec<(usize, usize)>,
    /// The base morphism under each morphism.
    pub base_of: Vec<usize>,
    /// Nerve-level projection to the nerve of the base.
    pub projection: SSetMap,
}

/// Objects are pairs `(a, x ∈ F a)`; a morphism `(a, x) -> (b, y)` is an
/// `f : a -> b` with `F f x = y`.
pub fn category_of_elements(func: &FinSetFunctor, cap: usize) -> Elements {
    let base = &func.base;
    let mut elements = Vec::new();
    let mut index = HashMap::new();
    for a in 0..base.object_count() {
        for x in 0..func.carriers[a].len() {
            index.insert((a, x), elements.len());
            elements.push((a, x));
        }
    }
    let objects = elements
        .iter()
        .map(|&(a, x)| format!("{}:{}", base.objects()[a], func.carriers[a][x]))
        .collect();
    let mut morphisms = Vec::new();
    let mut base_of = Vec::new();
    let mut src_elem = Vec::new();
    let mut mindex = HashMap::new();
    for f in 0..base.morphism_count() {
        let (a, b) = (base.src(f), base.dst(f));
        for x in 0..func.carriers[a].len() {
            mindex.insert((f, x), morphisms.len());
            morphisms.push(Morphism {
                name: format!("{}:{}", base.name(f), func.carriers[a][x]),
                src: index[&(a, x)],
                dst: index[&(b, func.actions[f][x])],
            });
            base_of.push(f);
            src_elem.push(x);
        }
    }
    let semicat = FinSemicat::from_fn(objects, morphisms, |g, f| {
        let h = base.compose(base_of[g], base_of[f]).unwrap();
        mindex[&(h, src_elem[f])]
    })
    .expect("category of elements of a valid functor is valid");

    let total = nerve(&semicat, cap);
    let target = nerve(base, cap);
    let base_chains = nerve_chains(base, cap);
    let total_chains = nerve_chains(&semicat, cap);
    let mut level_maps = vec![elements.iter().map(|&(a, _)| a).collect::<Vec<_>>()];
    for n in 1..=cap {
        let lookup: HashMap<&[usize], usize> = base_chains[n]
            .iter()
            .enumerate()
            .map(|(i, ch)| (ch.as_slice(), i))
            .collect();
        level_maps.push(
            total_chains[n]
                .iter()
                .map(|ch| {
                    let image: Vec<usize> = ch.iter().map(|&m| base_of[m]).collect();
                    lookup[image.as_slice()]
                })
                .collect(),
        );
    }
    let projection = SSetMap::new(total, target, level_maps).expect("projection commutes with faces");
    Elements {
        semicat,
        elements,
        base_of,
        projection,
    }
}

/// `(x, u)` represents the functor: every `v ∈ F y` is reached from `u` by
/// exactly one `f : x -> y`.
pub fn representation_check(func: &FinSetFunctor, x: usize, u: usize) -> bool {
    let base = &func.base;
    (0..base.object_count()).all(|y| {
        let hom = base.hom(x, y);
        (0..func.carriers[y].len())
            .all(|v| hom.iter().filter(|&&f| func.actions[f][u] == v).count() == 1)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdPreservationFailure {
    pub object: String,
    pub identity: String,
    pub values: Vec<String>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct IdPreservationReport {
    pub failures: Vec<IdPreservationFailure>,
}

impl IdPreservationReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check that every good identity acts bijectively.
pub fn identity_preservation(func: &FinSetFunctor) -> Result<IdPreservationReport, SemicatError> {
    let base = &func.base;
    let ids = identity_structure(base).ok_or(SemicatError::NoIdentityStructure)?;
    let mut report = IdPreservationReport::default();
    for (a, &i) in ids.iter().enumerate() {
        let act = &func.actions[i];
        let mut seen = vec![false; act.len()];
        let bijective = act.iter().all(|&y| !std::mem::replace(&mut seen[y], true));
        if !bijective {
            let idempotent = act.iter().all(|&y| act[y] == y);
            let reason = if idempotent {
                format!(
                    "{} is sent to an idempotent function, as functoriality forces, which is not a bijection",
                    base.name(i)
                )
            } else {
                format!("{} is sent to a non-bijective function", base.name(i))
            };
            report.failures.push(IdPreservationFailure {
                object: base.objects()[a].clone(),
                identity: base.name(i).to_string(),
                values: act.iter().map(|&y| func.carriers[a][y].clone()).collect(),
                reason,
            });
        }
    }
    Ok(report)
}

pub fn functor_id_preserving(func: &FinSetFunctor) -> Result<bool, SemicatError> {
    Ok(identity_preservation(func)?.passes())
}

/// All functors with carriers `{0, …, k-1}`, `k ≤ max_carrier`, in a fixed order.
pub fn enumerate_functors(base: &FinSemicat, max_carrier: usize) -> Vec<FinSetFunctor> {
    let n = base.object_count();
    let mut out = Vec::new();
    let mut sizes = vec![0usize; n];
    loop {
        let carriers: Vec<Vec<String>> = sizes
            .iter()
            .map(|&k| (0..k).map(|x| x.to_string()).collect())
            .collect();
        let mut actions: Vec<Vec<usize>> = (0..base.morphism_count())
            .map(|f| vec![0; sizes[base.src(f)]])
            .collect();
        functions(base, &sizes, 0, &mut actions, &mut |acts| {
            if let Ok(f) = FinSetFunctor::new(base.clone(), carriers.clone(), acts.to_vec()) {
                out.push(f);
            }
        });
        // next size vector
        let mut k = 0;
        while k < n {
            if sizes[k] < max_carrier {
                sizes[k] += 1;
                break;
            }
            sizes[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    out
}

fn functions(
    base: &FinSemicat,
    sizes: &[usize],
    f: usize,
    actions: &mut Vec<Vec<usize>>,
    emit: &mut dyn FnMut(&[Vec<usize>]),
) {
    if f == actions.len() {
        emit(actions);
        return;
    }
    let cod = sizes[base.dst(f)];
    let len = actions[f].len();
    if len > 0 && cod == 0 {
        return;
    }
    let mut digits = vec![0usize; len];
    loop {
        actions[f].copy_from_slice(&digits);
        functions(base, sizes, f + 1, actions, emit);
        let mut k = 0;
        while k < len {
            if digits[k] + 1 < cod {
                digits[k] += 1;
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == len {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;
    use crate::sset::fibration_kind;

    fn swap() -> FinSetFunctor {
        FinSetFunctor::new(z2(), vec![vec!["0".into(), "1".into()]], vec![vec![0, 1], vec![1, 0]])
            .unwrap()
    }

    #[test]
    fn elements_examples() {
        let t = FinSetFunctor::new(trivial(), vec![vec!["u".into()]], vec![vec![0]]).unwrap();
        let el = category_of_elements(&t, 2);
        assert_eq!(el.semicat.object_count(), 1);
        assert_eq!(el.semicat.morphism_count(), 1);

        let el = category_of_elements(&swap(), 3);
        assert_eq!(el.semicat.object_count(), 2);
        let h = el.semicat.hom(0, 1);
        assert_eq!(h.len(), 1);
        assert_eq!(el.base_of[h[0]], 1);
        assert!(fibration_kind(&el.projection, 3).unwrap().is_left());

        let arrow = FinSemicat::from_names(&["a", "b"], &[("a", "b", "f")], &[]).unwrap();
        let f = FinSetFunctor::new(arrow, vec![vec![], vec!["y".into()]], vec![vec![]]).unwrap();
        let el = category_of_elements(&f, 2);
        assert_eq!(el.semicat.object_count(), 1);
        assert_eq!(el.semicat.morphism_count(), 0);
    }

    #[test]
    fn representation_examples() {
        let t = FinSetFunctor::new(trivial(), vec![vec!["u".into()]], vec![vec![0]]).unwrap();
        assert!(representation_check(&t, 0, 0));
        assert!(representation_check(&swap(), 0, 0));
        let collapse =
            FinSetFunctor::new(z2(), vec![vec!["0".into(), "1".into()]], vec![vec![0, 1], vec![0, 1]])
                .unwrap();
        assert!(!representation_check(&collapse, 0, 0));
    }

    #[test]
    fn identity_preservation_examples() {
        assert_eq!(functor_id_preserving(&swap()), Ok(true));
        let konst =
            FinSetFunctor::new(trivial(), vec![vec!["0".into(), "1".into()]], vec![vec![0, 0]])
                .unwrap();
        let report = identity_preservation(&konst).unwrap();
        assert!(!report.passes());
        assert!(report.failures[0].reason.contains("idempotent"));
        for f in enumerate_functors(&codiscrete2(), 1) {
            assert_eq!(functor_id_preserving(&f), Ok(true));
        }
        let no_ids = FinSetFunctor::new(constant(), vec![vec![]], vec![vec![], vec![]]).unwrap();
        assert!(functor_id_preserving(&no_ids).is_err());
    }

    #[test]
    fn functor_enumeration() {
        // size 2: e acts as the identity (g as identity or swap) or e, g both
        // act as the same constant
        let fs = enumerate_functors(&z2(), 2);
        assert_eq!(fs.len(), 1 + 1 + 4);
        let broken = FinSetFunctor::new(z2(), vec![vec!["0".into(), "1".into()]], vec![vec![1, 0], vec![1, 0]]);
        assert!(broken.is_err());
    }
}
