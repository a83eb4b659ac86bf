//! Exhaustive enumeration of small labeled semicategories.

use serde::{Deserialize, Serialize};

use super::{FinSemicat, Morphism, SemicatError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumSpec {
    pub max_objects: usize,
    pub max_total_morphisms: usize,
}

/// Largest bounds accepted by [`enumerate_semicats`].
pub const MAX_OBJECTS: usize = 4;
pub const MAX_TOTAL_MORPHISMS: usize = 4;

/// All hom-size vectors (row-major over ordered object pairs) summing to
/// `total`, in lexicographic order.
pub fn hom_size_vectors(objects: usize, total: usize) -> Vec<Vec<usize>> {
    fn go(slots: usize, total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for k in 0..=total {
            prefix.push(k);
            go(slots - 1, total - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(objects * objects, total, &mut Vec::new(), &mut out);
    out
}

/// Every semicategory within the bounds: by object count, then total
/// morphism count, then hom-size vector, then composition table.
pub fn enumerate_semicats(
    spec: EnumSpec,
) -> Result<impl Iterator<Item = FinSemicat>, SemicatError> {
    if spec.max_objects > MAX_OBJECTS || spec.max_total_morphisms > MAX_TOTAL_MORPHISMS {
        return Err(SemicatError::EnumerationTooLarge(format!(
            "max_objects {} (limit {MAX_OBJECTS}), max_total_morphisms {} (limit {MAX_TOTAL_MORPHISMS})",
            spec.max_objects, spec.max_total_morphisms
        )));
    }
    let configs: Vec<(usize, Vec<usize>)> = (0..=spec.max_objects)
        .flat_map(|n| {
            (0..=spec.max_total_morphisms)
                .flat_map(move |t| hom_size_vectors(n, t).into_iter().map(move |v| (n, v)))
        })
        .collect();
    Ok(configs
        .into_iter()
        .flat_map(|(n, sizes)| enumerate_with_hom_sizes(n, &sizes)))
}

/// All associative composition tables for fixed hom sizes.
pub fn enumerate_with_hom_sizes(objects: usize, sizes: &[usize]) -> Vec<FinSemicat> {
    assert_eq!(sizes.len(), objects * objects, "one hom size per ordered pair");
    let object_names: Vec<String> = (0..objects).map(|i| format!("x{i}")).collect();
    let mut morphisms = Vec::new();
    for a in 0..objects {
        for b in 0..objects {
            for _ in 0..sizes[a * objects + b] {
                morphisms.push(Morphism {
                    name: format!("m{}", morphisms.len()),
                    src: a,
                    dst: b,
                });
            }
        }
    }
    let m = morphisms.len();
    let mut pairs = Vec::new();
    let mut candidates = Vec::new();
    for g in 0..m {
        for f in 0..m {
            if morphisms[f].dst == morphisms[g].src {
                pairs.push((g, f));
                let (a, c) = (morphisms[f].src, morphisms[g].dst);
                candidates.push(
                    (0..m)
                        .filter(|&h| morphisms[h].src == a && morphisms[h].dst == c)
                        .collect::<Vec<_>>(),
                );
            }
        }
    }
    if candidates.iter().any(|c| c.is_empty()) {
        return Vec::new();
    }

    let mut out = Vec::new();
    let mut table = vec![None; m * m];
    search(&morphisms, &pairs, &candidates, 0, &mut table, &mut |t| {
        out.push(
            FinSemicat::from_table(object_names.clone(), morphisms.clone(), t.to_vec())
                .expect("enumerated tables are associative"),
        )
    });
    out
}

fn consistent(morphisms: &[Morphism], table: &[Option<usize>], g: usize, f: usize) -> bool {
    let m = morphisms.len();
    let at = |x: usize, y: usize| table[x * m + y];
    let gf = at(g, f).unwrap();
    // (h ∘ g) ∘ f = h ∘ (g ∘ f)
    for h in 0..m {
        if morphisms[h].src != morphisms[g].dst {
            continue;
        }
        if let (Some(hg), Some(hgf)) = (at(h, g), at(h, gf)) {
            if let Some(l) = at(hg, f) {
                if l != hgf {
                    return false;
                }
            }
        }
    }
    // (g ∘ f) ∘ e = g ∘ (f ∘ e)
    for e in 0..m {
        if morphisms[e].dst != morphisms[f].src {
            continue;
        }
        if let (Some(fe), Some(l)) = (at(f, e), at(gf, e)) {
            if let Some(r) = at(g, fe) {
                if l != r {
                    return false;
                }
            }
        }
    }
    // the new entry as an outer composite: (x ∘ y) ∘ z or x ∘ (y ∘ z)
    for x in 0..m {
        for y in 0..m {
            if at(x, y) == Some(g) {
                // (x ∘ y) ∘ f = x ∘ (y ∘ f)
                if let Some(yz) = at(y, f) {
                    if let Some(r) = at(x, yz) {
                        if r != gf {
                            return false;
                        }
                    }
                }
            }
            if at(x, y) == Some(f) {
                // g ∘ (x ∘ y) = (g ∘ x) ∘ y
                if let Some(gx) = at(g, x) {
                    if let Some(l) = at(gx, y) {
                        if l != gf {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

fn search(
    morphisms: &[Morphism],
    pairs: &[(usize, usize)],
    candidates: &[Vec<usize>],
    k: usize,
    table: &mut Vec<Option<usize>>,
    emit: &mut dyn FnMut(&[Option<usize>]),
) {
    if k == pairs.len() {
        emit(table);
        return;
    }
    let m = morphisms.len();
    let (g, f) = pairs[k];
    for &h in &candidates[k] {
        table[g * m + f] = Some(h);
        if consistent(morphisms, table, g, f) {
            search(morphisms, pairs, candidates, k + 1, table, emit);
        }
    }
    table[g * m + f] = None;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_object_counts() {
        assert_eq!(enumerate_with_hom_sizes(1, &[0]).len(), 1);
        assert_eq!(enumerate_with_hom_sizes(1, &[1]).len(), 1);
        assert_eq!(enumerate_with_hom_sizes(1, &[2]).len(), 8);
        assert_eq!(enumerate_with_hom_sizes(1, &[3]).len(), 113);
    }

    #[test]
    fn guard() {
        assert!(enumerate_semicats(EnumSpec {
            max_objects: 1,
            max_total_morphisms: 5
        })
        .is_err());
    }

    #[test]
    fn size_vectors() {
        assert_eq!(hom_size_vectors(1, 2), vec![vec![2]]);
        assert_eq!(hom_size_vectors(2, 1).len(), 4);
        assert_eq!(hom_size_vectors(0, 0), vec![Vec::<usize>::new()]);
        assert!(hom_size_vectors(0, 1).is_empty());
    }
}
