//! Horn instances, fillers and the Segal condition.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{FinSSet, SSetError};
use crate::simplex::HornShape;

/// A face-commuting assignment `Λⁿₖ -> A`; `assignment[m][c]` is the image of
/// the `c`-th `m`-cell of the horn (cells in lexicographic vertex order).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct HornInstance {
    pub n: usize,
    pub k: usize,
    pub assignment: Vec<Vec<usize>>,
}

/// A filler for a horn: the cell in the missing face and the top cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Filler {
    pub missing_face: usize,
    pub top: usize,
}

/// Cell placement order for backtracking: a cell is placed as soon as all of
/// its faces are, preferring higher levels, so constraints prune early.
fn placement_order(source: &FinSSet, top: usize) -> Vec<(usize, usize)> {
    let mut placed: Vec<Vec<bool>> = (0..=top).map(|l| vec![false; source.count(l)]).collect();
    let total: usize = (0..=top).map(|l| source.count(l)).sum();
    let mut order = Vec::with_capacity(total);
    while order.len() < total {
        let mut pick = None;
        'search: for level in (0..=top).rev() {
            for idx in 0..source.count(level) {
                if placed[level][idx] {
                    continue;
                }
                let ready = level == 0
                    || source
                        .faces(level, idx)
                        .iter()
                        .all(|&f| placed[level - 1][f]);
                if ready {
                    pick = Some((level, idx));
                    break 'search;
                }
            }
        }
        let (level, idx) = pick.expect("valid semisimplicial set has a placement order");
        placed[level][idx] = true;
        order.push((level, idx));
    }
    order
}

/// All face-commuting maps `source -> target` (on levels up to
/// `target.max_level()`) that agree with `fixed` wherever it is `Some`.
/// Results are sorted lexicographically, level-major.
pub fn extensions(
    source: &FinSSet,
    target: &FinSSet,
    fixed: Option<&[Vec<Option<usize>>]>,
) -> Vec<Vec<Vec<usize>>> {
    let top = source.max_level().min(target.max_level());
    let order = placement_order(source, top);
    let mut current: Vec<Vec<usize>> = (0..=top)
        .map(|l| vec![usize::MAX; source.count(l)])
        .collect();
    let mut out = Vec::new();
    extend_rec(source, target, fixed, &order, 0, &mut current, &mut out);
    out.sort();
    out
}

fn extend_rec(
    source: &FinSSet,
    target: &FinSSet,
    fixed: Option<&[Vec<Option<usize>>]>,
    order: &[(usize, usize)],
    pos: usize,
    current: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    let Some(&(level, idx)) = order.get(pos) else {
        out.push(current.clone());
        return;
    };
    let pinned = fixed.and_then(|f| f.get(level).and_then(|l| l.get(idx).copied().flatten()));
    if level == 0 {
        let candidates: Vec<usize> = match pinned {
            Some(v) if v < target.count(0) => vec![v],
            Some(_) => vec![],
            None => (0..target.count(0)).collect(),
        };
        for c in candidates {
            current[0][idx] = c;
            extend_rec(source, target, fixed, order, pos + 1, current, out);
        }
        current[0][idx] = usize::MAX;
        return;
    }
    let boundary: Vec<usize> = source
        .faces(level, idx)
        .iter()
        .map(|&f| current[level - 1][f])
        .collect();
    let over = target.cells_over(level, &boundary);
    let candidates: Vec<usize> = match pinned {
        Some(v) => over.iter().copied().filter(|&c| c == v).collect(),
        None => over.to_vec(),
    };
    for c in candidates {
        current[level][idx] = c;
        extend_rec(source, target, fixed, order, pos + 1, current, out);
    }
    current[level][idx] = usize::MAX;
}

fn check_level(a: &FinSSet, n: usize) -> Result<(), SSetError> {
    if n > a.max_level() {
        return Err(SSetError::LevelOutOfRange {
            level: n,
            max_level: a.max_level(),
        });
    }
    Ok(())
}

pub(crate) fn horn_shape(n: usize, k: usize) -> Result<HornShape, SSetError> {
    HornShape::new(n, k, n).map_err(|e| SSetError::MalformedMap(e.to_string()))
}

pub(crate) fn instances_for(a: &FinSSet, shape: &HornShape) -> Vec<HornInstance> {
    let horn = shape.to_sset();
    extensions(&horn, a, None)
        .into_iter()
        .map(|mut assignment| {
            assignment.truncate(shape.n);
            HornInstance {
                n: shape.n,
                k: shape.k,
                assignment,
            }
        })
        .collect()
}

/// All maps `Λⁿₖ -> A`, in lexicographic order of their cell assignments.
pub fn horn_instances(a: &FinSSet, n: usize, k: usize) -> Result<Vec<HornInstance>, SSetError> {
    check_level(a, n)?;
    let shape = horn_shape(n, k)?;
    Ok(instances_for(a, &shape))
}

/// Horn assignment re-indexed by the cells of `Δⁿ` (missing cells are `None`).
fn on_simplex(shape: &HornShape, h: &HornInstance) -> Vec<Vec<Option<usize>>> {
    let mut out: Vec<Vec<Option<usize>>> = (0..=shape.n)
        .map(|l| vec![None; shape.simplex.count(l)])
        .collect();
    for (level, incl) in shape.inclusion.iter().enumerate().take(shape.n) {
        for (c, &s) in incl.iter().enumerate() {
            out[level][s] = Some(h.assignment[level][c]);
        }
    }
    out
}

pub(crate) fn fillers_with(a: &FinSSet, shape: &HornShape, h: &HornInstance) -> Vec<Filler> {
    let n = shape.n;
    let assigned = on_simplex(shape, h);
    let missing = shape.missing_face;
    let face_candidates: Vec<usize> = if n == 1 {
        (0..a.count(0)).collect()
    } else {
        let boundary: Vec<usize> = shape
            .simplex
            .faces(n - 1, missing)
            .iter()
            .map(|&f| assigned[n - 2][f].expect("horn contains all (n-2)-cells"))
            .collect();
        a.cells_over(n - 1, &boundary).to_vec()
    };
    let top_faces = shape.simplex.faces(n, 0);
    let mut out = Vec::new();
    for mf in face_candidates {
        let boundary: Vec<usize> = top_faces
            .iter()
            .map(|&f| if f == missing { mf } else { assigned[n - 1][f].expect("horn face") })
            .collect();
        for &top in a.cells_over(n, &boundary) {
            out.push(Filler {
                missing_face: mf,
                top,
            });
        }
    }
    out
}

/// All extensions of a horn instance to the full simplex.
pub fn fillers(a: &FinSSet, h: &HornInstance) -> Result<Vec<Filler>, SSetError> {
    check_level(a, h.n)?;
    let shape = horn_shape(h.n, h.k)?;
    Ok(fillers_with(a, &shape, h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SegalFailure {
    /// No filler.
    Existence,
    /// Two or more fillers.
    Uniqueness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HornVerdict {
    pub n: usize,
    pub k: usize,
    pub instances: usize,
    pub existence_failures: usize,
    pub uniqueness_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegalResult {
    pub n: usize,
    pub k: usize,
    pub failure: SegalFailure,
    pub fillers: usize,
    /// Cell names of the offending horn instance, level by level.
    pub horn: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegalReport {
    pub up_to: usize,
    pub horns: Vec<HornVerdict>,
    pub failures: Vec<SegalResult>,
}

impl SegalReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn existence_failures(&self) -> usize {
        self.horns.iter().map(|h| h.existence_failures).sum()
    }

    pub fn uniqueness_failures(&self) -> usize {
        self.horns.iter().map(|h| h.uniqueness_failures).sum()
    }

    pub fn passes_at(&self, n: usize) -> bool {
        self.failures.iter().all(|f| f.n != n)
    }
}

/// Check that every inner horn `Λⁿₖ`, `2 <= n <= up_to`, `0 < k < n`, has
/// exactly one filler.
pub fn segal_report(a: &FinSSet, up_to: usize) -> Result<SegalReport, SSetError> {
    check_level(a, up_to)?;
    let mut horns = Vec::new();
    let mut failures = Vec::new();
    for n in 2..=up_to {
        for k in 1..n {
            let shape = horn_shape(n, k)?;
            let instances = instances_for(a, &shape);
            let mut verdict = HornVerdict {
                n,
                k,
                instances: instances.len(),
                existence_failures: 0,
                uniqueness_failures: 0,
            };
            for h in &instances {
                let count = fillers_with(a, &shape, h).len();
                let failure = match count {
                    1 => continue,
                    0 => {
                        verdict.existence_failures += 1;
                        SegalFailure::Existence
                    }
                    _ => {
                        verdict.uniqueness_failures += 1;
                        SegalFailure::Uniqueness
                    }
                };
                failures.push(SegalResult {
                    n,
                    k,
                    failure,
                    fillers: count,
                    horn: name_assignment(a, &h.assignment),
                });
            }
            horns.push(verdict);
        }
    }
    Ok(SegalReport {
        up_to,
        horns,
        failures,
    })
}

pub(crate) fn name_assignment(a: &FinSSet, assignment: &[Vec<usize>]) -> Vec<Vec<String>> {
    assignment
        .iter()
        .enumerate()
        .map(|(l, cells)| cells.iter().map(|&c| a.name(l, c).to_string()).collect())
        .collect()
}

/// Composition of edges read off a semisimplicial set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionTable {
    /// `(g, f) -> g ∘ f` for every composable pair of edges `f` then `g`.
    pub composites: BTreeMap<(usize, usize), usize>,
    /// Associativity of the table, checked directly.
    pub associative: bool,
    /// Unique fillers for `Λ³₁` and `Λ³₂`, when level 3 is present.
    pub level3_segal: Option<bool>,
}

impl CompositionTable {
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composites.get(&(g, f)).copied()
    }
}

fn table_associative(a: &FinSSet, composites: &BTreeMap<(usize, usize), usize>) -> bool {
    composites.iter().all(|(&(g, f), &gf)| {
        // for every h after g: (h∘g)∘f = h∘(g∘f)
        (0..a.count(1))
            .filter(|&h| a.source(h) == a.target(g))
            .all(|h| {
                let hg = composites.get(&(h, g));
                let lhs = hg.and_then(|&hg| composites.get(&(hg, f)));
                let rhs = composites.get(&(h, gf));
                lhs.is_some() && lhs == rhs
            })
    })
}

/// Recover the composition operator from unique `Λ²₁` fillers.
pub fn composition_from_segal(a: &FinSSet) -> Result<CompositionTable, SSetError> {
    if a.max_level() < 2 {
        return Err(SSetError::LevelOutOfRange {
            level: 2,
            max_level: a.max_level(),
        });
    }
    let shape = horn_shape(2, 1)?;
    let mut composites = BTreeMap::new();
    for h in instances_for(a, &shape) {
        let fill = fillers_with(a, &shape, &h);
        if fill.len() != 1 {
            return Err(SSetError::NotSegal(2));
        }
        // horn edges in vertex order: 01 then 12
        let (f, g) = (h.assignment[1][0], h.assignment[1][1]);
        composites.insert((g, f), fill[0].missing_face);
    }
    let associative = table_associative(a, &composites);
    let level3_segal = if a.max_level() >= 3 {
        Some(segal_report(a, 3)?.passes_at(3))
    } else {
        None
    };
    Ok(CompositionTable {
        composites,
        associative,
        level3_segal,
    })
}

/// The composition relation read directly from the 2-cells: for every
/// composable pair, the third edges of the 2-cells lying over it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedComposition {
    pub relation: BTreeMap<(usize, usize), Vec<usize>>,
    /// Every composable pair carries exactly one 2-cell.
    pub total: bool,
    /// The relation is a function and is associative.
    pub associative: bool,
}

/// Compute the composition relation straight from face lists, without the
/// horn machinery.
pub fn induced_composition(a: &FinSSet) -> InducedComposition {
    let mut relation: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for f in 0..a.count(1) {
        for g in 0..a.count(1) {
            if a.source(g) == a.target(f) {
                relation.insert((g, f), Vec::new());
            }
        }
    }
    if a.max_level() >= 2 {
        for c in &a.levels()[2] {
            let (g, gf, f) = (c.faces[0], c.faces[1], c.faces[2]);
            relation.entry((g, f)).or_default().push(gf);
        }
    }
    let total = relation.values().all(|v| v.len() == 1);
    let associative = total && {
        let table: BTreeMap<(usize, usize), usize> =
            relation.iter().map(|(&k, v)| (k, v[0])).collect();
        table_associative(a, &table)
    };
    InducedComposition {
        relation,
        total,
        associative,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::standard_simplex;
    use crate::sset::Cell;

    /// Two vertices, no edges.
    fn two_points() -> FinSSet {
        let mut s = FinSSet::new(2);
        s.push_cell(0, "x", vec![]).unwrap();
        s.push_cell(0, "y", vec![]).unwrap();
        s
    }

    #[test]
    fn instances_in_simplex() {
        let s = standard_simplex(2, 2);
        let hs = horn_instances(&s, 2, 1).unwrap();
        // the identity-like inclusion plus degenerate-free alternatives: only one
        // pair of composable edges exists (01 then 12)
        assert_eq!(hs.len(), 1);
        assert!(horn_instances(&two_points(), 2, 1).unwrap().is_empty());
    }

    #[test]
    fn filler_counts() {
        let s = standard_simplex(2, 2);
        let h = &horn_instances(&s, 2, 1).unwrap()[0];
        assert_eq!(fillers(&s, h).unwrap().len(), 1);

        // duplicate the 2-cell
        let mut levels = s.levels().to_vec();
        let dup = levels[2][0].clone();
        levels[2].push(Cell::new("012b", dup.faces));
        let d = FinSSet::from_levels(levels);
        let h = &horn_instances(&d, 2, 1).unwrap()[0];
        assert_eq!(fillers(&d, h).unwrap().len(), 2);

        let bare = standard_simplex(2, 1).extend_with_empty_level();
        let h = &horn_instances(&bare, 2, 1).unwrap()[0];
        assert!(fillers(&bare, h).unwrap().is_empty());
    }

    #[test]
    fn segal_on_simplex() {
        let r = segal_report(&standard_simplex(3, 3), 3).unwrap();
        assert!(r.passes());
        let t = composition_from_segal(&standard_simplex(2, 2)).unwrap();
        assert_eq!(t.composites.len(), 1);
        assert_eq!(t.compose(2, 0), Some(1)); // 12 ∘ 01 = 02
    }

    #[test]
    fn level_above_max_is_an_error() {
        assert!(horn_instances(&standard_simplex(1, 1), 2, 1).is_err());
    }

    impl FinSSet {
        fn extend_with_empty_level(&self) -> FinSSet {
            let mut levels = self.levels().to_vec();
            levels.push(Vec::new());
            FinSSet::from_levels(levels)
        }
    }
}
