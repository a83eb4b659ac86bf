//! Equivalences, identities, terminal objects and univalence, all read off
//! horn fillers of a semisimplicial set.

use serde::Serialize;

use super::horn::{extensions, fillers_with, horn_shape};
use super::{segal_report, FinSSet, SSetError};

fn require_segal(a: &FinSSet) -> Result<(), SSetError> {
    if a.max_level() < 2 {
        return Err(SSetError::LevelOutOfRange {
            level: 2,
            max_level: a.max_level(),
        });
    }
    let up_to = a.max_level().min(3);
    if !segal_report(a, up_to)?.passes() {
        return Err(SSetError::NotSegal(up_to));
    }
    Ok(())
}

/// Whether every `Λ²ₖ` horn (`k` outer) with `edge` in position `position`
/// has exactly one filler.
fn outer_horns_unique(a: &FinSSet, k: usize, position: usize, edge: usize) -> Result<bool, SSetError> {
    let shape = horn_shape(2, k)?;
    let horn = shape.to_sset();
    let mut fixed: Vec<Vec<Option<usize>>> = vec![vec![None; 3], vec![None; 2], vec![]];
    fixed[1][position] = Some(edge);
    for assignment in extensions(&horn, a, Some(&fixed)) {
        let mut assignment = assignment;
        assignment.truncate(2);
        let h = super::HornInstance {
            n: 2,
            k,
            assignment,
        };
        if fillers_with(a, &shape, &h).len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn equivalence_unchecked(a: &FinSSet, e: usize) -> Result<bool, SSetError> {
    // Λ²₀ has edges 01, 02: e sits at 01 and fillers are g with g ∘ e = f.
    // Λ²₂ has edges 02, 12: e sits at 12 and fillers are g with e ∘ g = f.
    Ok(outer_horns_unique(a, 0, 0, e)? && outer_horns_unique(a, 2, 1, e)?)
}

/// An edge `e` is an equivalence when every horn `1 <-e- 0 -> 2` and every
/// horn `0 -> 2 <-e- 1` has exactly one filler.
pub fn is_equivalence_edge(a: &FinSSet, e: usize) -> Result<bool, SSetError> {
    require_segal(a)?;
    if e >= a.count(1) {
        return Err(SSetError::MalformedMap(format!("no edge {e}")));
    }
    equivalence_unchecked(a, e)
}

/// Equivalence flag for every edge.
pub fn equivalence_edges(a: &FinSSet) -> Result<Vec<bool>, SSetError> {
    require_segal(a)?;
    (0..a.count(1)).map(|e| equivalence_unchecked(a, e)).collect()
}

fn is_idempotent(a: &FinSSet, i: usize) -> bool {
    !a.cells_over(2, &[i, i, i]).is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    /// Idempotent equivalence self-edges, per vertex.
    pub good_identities: Vec<Vec<usize>>,
    /// One identity per vertex, when every vertex has exactly one.
    pub structure: Option<Vec<usize>>,
    /// Vertices with two or more good identities. Always empty unless the
    /// input breaks the uniqueness of identities, i.e. indicates a bug.
    pub conflicts: Vec<usize>,
}

pub fn identity_structure(a: &FinSSet) -> Result<IdentityReport, SSetError> {
    let eqv = equivalence_edges(a)?;
    let good_identities: Vec<Vec<usize>> = (0..a.count(0))
        .map(|x| {
            a.edges_between(x, x)
                .into_iter()
                .filter(|&i| eqv[i] && is_idempotent(a, i))
                .collect()
        })
        .collect();
    let conflicts = good_identities
        .iter()
        .enumerate()
        .filter(|(_, ids)| ids.len() >= 2)
        .map(|(x, _)| x)
        .collect();
    let structure = good_identities
        .iter()
        .map(|ids| (ids.len() == 1).then(|| ids[0]))
        .collect();
    Ok(IdentityReport {
        good_identities,
        structure,
        conflicts,
    })
}

/// Every vertex has exactly one edge into `x`.
pub fn is_terminal(a: &FinSSet, x: usize) -> bool {
    (0..a.count(0)).all(|y| a.edges_between(y, x).len() == 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnivalenceViolation {
    pub from: String,
    pub to: String,
    pub equivalences: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnivalenceReport {
    pub violations: Vec<UnivalenceViolation>,
}

impl UnivalenceReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Set-level univalence: the only equivalences are the identities.
pub fn univalence_check(a: &FinSSet) -> Result<UnivalenceReport, SSetError> {
    let ids = identity_structure(a)?;
    let Some(structure) = ids.structure else {
        let missing = ids
            .good_identities
            .iter()
            .position(|g| g.len() != 1)
            .unwrap_or(0);
        return Err(SSetError::NoIdentityStructure(missing));
    };
    let eqv = equivalence_edges(a)?;
    let mut violations = Vec::new();
    for x in 0..a.count(0) {
        for y in 0..a.count(0) {
            let equivalences: Vec<usize> = a
                .edges_between(x, y)
                .into_iter()
                .filter(|&e| eqv[e])
                .collect();
            let ok = if x == y {
                equivalences == [structure[x]]
            } else {
                equivalences.is_empty()
            };
            if !ok {
                violations.push(UnivalenceViolation {
                    from: a.name(0, x).to_string(),
                    to: a.name(0, y).to_string(),
                    equivalences: equivalences
                        .iter()
                        .map(|&e| a.name(1, e).to_string())
                        .collect(),
                });
            }
        }
    }
    Ok(UnivalenceReport { violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::standard_simplex;

    #[test]
    fn terminal_in_simplex() {
        // in Δ¹ vertex 1 receives 01 from 0 but nothing from itself
        let s = standard_simplex(1, 1);
        assert!(!is_terminal(&s, 1));
        assert!(!is_terminal(&s, 0));
    }

    #[test]
    fn needs_level_two() {
        assert!(is_equivalence_edge(&standard_simplex(1, 1), 0).is_err());
    }
}
