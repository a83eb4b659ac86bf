//! Finite truncated semisimplicial sets.
//!
//! A [`FinSSet`] stores, for every level `n`, an indexed family of named
//! cells. Each cell of level `n >= 1` lists its `n + 1` faces; face `i` is
//! the `(n-1)`-cell obtained by omitting vertex `i`. For an edge this means
//! `faces[0]` is its target and `faces[1]` its source.
//!
//! Cells with identical boundaries are allowed. They are how Segal failures
//! (non-unique fillers) are represented, so they are not validation errors.

pub mod corpus;
mod fibration;
mod horn;
mod structure;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

pub use fibration::{fibration_kind, lifting_profile, FibrationKind, LiftingProfile};
pub use horn::{
    composition_from_segal, extensions, fillers, horn_instances, induced_composition, InducedComposition,
    segal_report, CompositionTable, Filler, HornInstance, HornVerdict, SegalFailure,
    SegalReport, SegalResult,
};
pub use structure::{
    equivalence_edges, identity_structure, is_equivalence_edge, is_terminal, univalence_check,
    IdentityReport, UnivalenceReport, UnivalenceViolation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SSetError {
    #[error("level {level} exceeds max level {max_level}")]
    LevelOutOfRange { level: usize, max_level: usize },
    #[error("cell {name:?} at level {level} needs {expected} faces, got {found}")]
    BadArity {
        level: usize,
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("cell {name:?} at level {level} refers to missing face {face}")]
    DanglingFace {
        level: usize,
        name: String,
        face: usize,
    },
    #[error("duplicate cell name {name:?} at level {level}")]
    DuplicateName { level: usize, name: String },
    #[error("semisimplicial set is not valid: {0}")]
    Invalid(String),
    #[error("map does not commute with faces at level {level}, cell {cell}, face {face}")]
    NotFaceCommuting {
        level: usize,
        cell: usize,
        face: usize,
    },
    #[error("map is malformed: {0}")]
    MalformedMap(String),
    #[error("Segal condition fails below level {0}")]
    NotSegal(usize),
    #[error("vertex {0} has no unique good identity")]
    NoIdentityStructure(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Cell {
    pub name: String,
    pub faces: Vec<usize>,
}

impl Cell {
    pub fn new(name: impl Into<String>, faces: Vec<usize>) -> Self {
        Cell {
            name: name.into(),
            faces,
        }
    }
}

type BoundaryIndex = Vec<HashMap<Vec<usize>, Vec<usize>>>;

#[derive(Debug, Clone, Default)]
pub struct FinSSet {
    levels: Vec<Vec<Cell>>,
    boundary: OnceLock<BoundaryIndex>,
}

impl PartialEq for FinSSet {
    fn eq(&self, other: &Self) -> bool {
        self.levels == other.levels
    }
}

impl Eq for FinSSet {}

impl FinSSet {
    /// An empty semisimplicial set truncated at `max_level`.
    pub fn new(max_level: usize) -> Self {
        FinSSet {
            levels: vec![Vec::new(); max_level + 1],
            boundary: OnceLock::new(),
        }
    }

    /// Build from raw levels without any checks; call [`FinSSet::validate`]
    /// before handing the result to the algorithms in this module.
    pub fn from_levels(levels: Vec<Vec<Cell>>) -> Self {
        let levels = if levels.is_empty() {
            vec![Vec::new()]
        } else {
            levels
        };
        FinSSet {
            levels,
            boundary: OnceLock::new(),
        }
    }

    pub fn push_cell(
        &mut self,
        level: usize,
        name: impl Into<String>,
        faces: Vec<usize>,
    ) -> Result<usize, SSetError> {
        let name = name.into();
        if level > self.max_level() {
            return Err(SSetError::LevelOutOfRange {
                level,
                max_level: self.max_level(),
            });
        }
        let expected = if level == 0 { 0 } else { level + 1 };
        if faces.len() != expected {
            return Err(SSetError::BadArity {
                level,
                name,
                expected,
                found: faces.len(),
            });
        }
        if level > 0 {
            if let Some(&face) = faces.iter().find(|&&f| f >= self.levels[level - 1].len()) {
                return Err(SSetError::DanglingFace { level, name, face });
            }
        }
        if self.levels[level].iter().any(|c| c.name == name) {
            return Err(SSetError::DuplicateName { level, name });
        }
        self.boundary = OnceLock::new();
        self.levels[level].push(Cell { name, faces });
        Ok(self.levels[level].len() - 1)
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[Vec<Cell>] {
        &self.levels
    }

    pub fn count(&self, level: usize) -> usize {
        self.levels.get(level).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn cell(&self, level: usize, idx: usize) -> &Cell {
        &self.levels[level][idx]
    }

    pub fn name(&self, level: usize, idx: usize) -> &str {
        &self.levels[level][idx].name
    }

    pub fn faces(&self, level: usize, idx: usize) -> &[usize] {
        &self.levels[level][idx].faces
    }

    pub fn find(&self, level: usize, name: &str) -> Option<usize> {
        self.levels.get(level)?.iter().position(|c| c.name == name)
    }

    /// Source vertex of an edge.
    pub fn source(&self, edge: usize) -> usize {
        self.levels[1][edge].faces[1]
    }

    /// Target vertex of an edge.
    pub fn target(&self, edge: usize) -> usize {
        self.levels[1][edge].faces[0]
    }

    /// Edges `x -> y`, in index order.
    pub fn edges_between(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.count(1))
            .filter(|&e| self.source(e) == x && self.target(e) == y)
            .collect()
    }

    /// Cells at `level` whose face list is exactly `faces`.
    pub fn cells_over(&self, level: usize, faces: &[usize]) -> &[usize] {
        let index = self.boundary.get_or_init(|| {
            self.levels
                .iter()
                .map(|cells| {
                    let mut map: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
                    for (i, c) in cells.iter().enumerate() {
                        map.entry(c.faces.clone()).or_default().push(i);
                    }
                    map
                })
                .collect()
        });
        index
            .get(level)
            .and_then(|m| m.get(faces))
            .map_or(&[], Vec::as_slice)
    }

    /// Keep levels `0..=level`.
    pub fn truncate(&self, level: usize) -> FinSSet {
        FinSSet::from_levels(self.levels.iter().take(level + 1).cloned().collect())
    }

    /// Check face references and the semisimplicial identities
    /// `d_i d_j = d_{j-1} d_i` for `i < j`.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (level, cells) in self.levels.iter().enumerate() {
            let mut seen: HashMap<&str, usize> = HashMap::new();
            for (idx, c) in cells.iter().enumerate() {
                if seen.insert(c.name.as_str(), idx).is_some() {
                    violations.push(Violation::DuplicateName {
                        level,
                        name: c.name.clone(),
                    });
                }
                let expected = if level == 0 { 0 } else { level + 1 };
                if c.faces.len() != expected {
                    violations.push(Violation::BadArity {
                        level,
                        cell: c.name.clone(),
                        expected,
                        found: c.faces.len(),
                    });
                    continue;
                }
                if level == 0 {
                    continue;
                }
                let below = self.levels[level - 1].len();
                let mut dangling = false;
                for (i, &f) in c.faces.iter().enumerate() {
                    if f >= below {
                        dangling = true;
                        violations.push(Violation::DanglingFace {
                            level,
                            cell: c.name.clone(),
                            face_index: i,
                            target: f,
                        });
                    }
                }
                if dangling || level < 2 {
                    continue;
                }
                let lower = &self.levels[level - 1];
                let face_ok = |f: usize| lower[f].faces.len() == level;
                if !c.faces.iter().all(|&f| face_ok(f)) {
                    // arity problems of the faces are reported at their own level
                    continue;
                }
                for j in 1..=level {
                    for i in 0..j {
                        let a = lower[c.faces[j]].faces[i];
                        let b = lower[c.faces[i]].faces[j - 1];
                        if a != b {
                            violations.push(Violation::SimplicialIdentity {
                                level,
                                cell: c.name.clone(),
                                i,
                                j,
                            });
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn ensure_valid(&self) -> Result<(), SSetError> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(SSetError::Invalid(v.to_string())),
        }
    }

    /// Reverse vertex order: face `i` of a new `n`-cell is face `n - i` of the
    /// original. Involutive.
    pub fn opposite(&self) -> FinSSet {
        let levels = self
            .levels
            .iter()
            .map(|cells| {
                cells
                    .iter()
                    .map(|c| Cell {
                        name: c.name.clone(),
                        faces: c.faces.iter().rev().copied().collect(),
                    })
                    .collect()
            })
            .collect();
        FinSSet::from_levels(levels)
    }

    /// Add one level on top containing exactly one cell for every compatible
    /// boundary (every face tuple satisfying the semisimplicial identities).
    pub fn extend_coskeletal(&self) -> FinSSet {
        let top = self.max_level();
        let n = top + 1;
        let mut levels = self.levels.clone();
        let lower = &self.levels[top];
        let mut new_cells = Vec::new();
        if n == 1 {
            for t in 0..lower.len() {
                for s in 0..lower.len() {
                    new_cells.push(Cell::new(
                        format!("<{},{}>", lower[s].name, lower[t].name),
                        vec![t, s],
                    ));
                }
            }
        } else {
            let mut faces = Vec::with_capacity(n + 1);
            extend_rec(lower, n, &mut faces, &mut new_cells);
        }
        levels.push(new_cells);
        FinSSet::from_levels(levels)
    }
}

fn extend_rec(lower: &[Cell], n: usize, faces: &mut Vec<usize>, out: &mut Vec<Cell>) {
    let j = faces.len();
    if j == n + 1 {
        let name = format!(
            "<{}>",
            faces
                .iter()
                .map(|&f| lower[f].name.as_str())
                .collect::<Vec<_>>()
                .join(",")
        );
        out.push(Cell::new(name, faces.clone()));
        return;
    }
    for cand in 0..lower.len() {
        // identities d_i d_j = d_{j-1} d_i for all i < j
        let ok = (0..j).all(|i| lower[cand].faces[i] == lower[faces[i]].faces[j - 1]);
        if ok {
            faces.push(cand);
            extend_rec(lower, n, faces, out);
            faces.pop();
        }
    }
}

impl fmt::Display for FinSSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (level, cells) in self.levels.iter().enumerate() {
            write!(f, "level {level}:")?;
            for c in cells {
                write!(f, " {}", c.name)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    DuplicateName {
        level: usize,
        name: String,
    },
    BadArity {
        level: usize,
        cell: String,
        expected: usize,
        found: usize,
    },
    DanglingFace {
        level: usize,
        cell: String,
        face_index: usize,
        target: usize,
    },
    SimplicialIdentity {
        level: usize,
        cell: String,
        i: usize,
        j: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateName { level, name } => {
                write!(f, "duplicate name {name:?} at level {level}")
            }
            Violation::BadArity {
                level,
                cell,
                expected,
                found,
            } => write!(
                f,
                "cell {cell:?} at level {level} has {found} faces, expected {expected}"
            ),
            Violation::DanglingFace {
                level,
                cell,
                face_index,
                target,
            } => write!(
                f,
                "cell {cell:?} at level {level}: face {face_index} points to missing cell {target}"
            ),
            Violation::SimplicialIdentity { level, cell, i, j } => write!(
                f,
                "cell {cell:?} at level {level}: d{i} d{j} != d{} d{i}",
                j - 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A level-wise map of cells commuting with faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSetMap {
    source: FinSSet,
    target: FinSSet,
    level_maps: Vec<Vec<usize>>,
}

impl SSetMap {
    /// Checks that the level maps are total, in range, and commute with faces
    /// up to `min(source.max_level, target.max_level)`.
    pub fn new(
        source: FinSSet,
        target: FinSSet,
        level_maps: Vec<Vec<usize>>,
    ) -> Result<Self, SSetError> {
        let top = source.max_level().min(target.max_level());
        if level_maps.len() != top + 1 {
            return Err(SSetError::MalformedMap(format!(
                "expected {} level maps, got {}",
                top + 1,
                level_maps.len()
            )));
        }
        for (level, map) in level_maps.iter().enumerate() {
            if map.len() != source.count(level) {
                return Err(SSetError::MalformedMap(format!(
                    "level {level} maps {} cells, source has {}",
                    map.len(),
                    source.count(level)
                )));
            }
            if let Some(&bad) = map.iter().find(|&&t| t >= target.count(level)) {
                return Err(SSetError::MalformedMap(format!(
                    "level {level} maps to missing target cell {bad}"
                )));
            }
            if level == 0 {
                continue;
            }
            for (cell, &image) in map.iter().enumerate() {
                let sf = source.faces(level, cell);
                let tf = target.faces(level, image);
                for face in 0..=level {
                    if level_maps[level - 1][sf[face]] != tf[face] {
                        return Err(SSetError::NotFaceCommuting { level, cell, face });
                    }
                }
            }
        }
        Ok(SSetMap {
            source,
            target,
            level_maps,
        })
    }

    pub fn source(&self) -> &FinSSet {
        &self.source
    }

    pub fn target(&self) -> &FinSSet {
        &self.target
    }

    pub fn level_maps(&self) -> &[Vec<usize>] {
        &self.level_maps
    }

    pub fn apply(&self, level: usize, cell: usize) -> usize {
        self.level_maps[level][cell]
    }

    pub fn top_level(&self) -> usize {
        self.level_maps.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::{horn, standard_simplex, HornShape};

    #[test]
    fn standard_simplex_validates() {
        assert!(standard_simplex(3, 3).validate().is_valid());
        assert!(horn(3, 1, 3).unwrap().validate().is_valid());
    }

    #[test]
    fn bad_two_cell_is_reported_once() {
        // vertices a b c; edges ab, bc, ac, and a stray edge ca
        let mut s = FinSSet::new(2);
        for v in ["a", "b", "c"] {
            s.push_cell(0, v, vec![]).unwrap();
        }
        let ab = s.push_cell(1, "ab", vec![1, 0]).unwrap();
        let bc = s.push_cell(1, "bc", vec![2, 1]).unwrap();
        let _ac = s.push_cell(1, "ac", vec![2, 0]).unwrap();
        let ca = s.push_cell(1, "ca", vec![0, 2]).unwrap();
        // faces [bc, ca, ab]: d0 d2 = d1 d0 needs source(bc) = target(ab) (ok),
        // d0 d1 = d0 d0 fails (target(ca)=a vs target(bc)=c), d1 d2 = d1 d1 fails
        let mut levels = s.levels().to_vec();
        levels[2].push(Cell::new("bad", vec![bc, ca, ab]));
        let bad = FinSSet::from_levels(levels);
        let report = bad.validate();
        assert!(!report.is_valid());
        // only the identities involving the bad face fail
        assert!(report
            .violations
            .iter()
            .all(|v| matches!(v, Violation::SimplicialIdentity { cell, .. } if cell == "bad")));
    }

    #[test]
    fn single_identity_violation() {
        // a 2-cell whose faces fail d0 d2 = d1 d0 only
        let mut s = FinSSet::new(2);
        for v in ["a", "b", "c", "d"] {
            s.push_cell(0, v, vec![]).unwrap();
        }
        let ab = s.push_cell(1, "ab", vec![1, 0]).unwrap();
        let dc = s.push_cell(1, "dc", vec![2, 3]).unwrap();
        let ac = s.push_cell(1, "ac", vec![2, 0]).unwrap();
        let mut levels = s.levels().to_vec();
        levels[2].push(Cell::new("t", vec![dc, ac, ab]));
        let report = FinSSet::from_levels(levels).validate();
        assert_eq!(
            report.violations,
            vec![Violation::SimplicialIdentity {
                level: 2,
                cell: "t".into(),
                i: 0,
                j: 2
            }]
        );
    }

    #[test]
    fn push_cell_rejects_garbage() {
        let mut s = FinSSet::new(1);
        s.push_cell(0, "a", vec![]).unwrap();
        assert!(matches!(
            s.push_cell(1, "e", vec![0]),
            Err(SSetError::BadArity { .. })
        ));
        assert!(matches!(
            s.push_cell(1, "e", vec![0, 4]),
            Err(SSetError::DanglingFace { .. })
        ));
        assert!(matches!(
            s.push_cell(0, "a", vec![]),
            Err(SSetError::DuplicateName { .. })
        ));
        assert!(matches!(
            s.push_cell(2, "x", vec![0, 0, 0]),
            Err(SSetError::LevelOutOfRange { .. })
        ));
    }

    #[test]
    fn opposite_is_involutive_and_valid() {
        let s = standard_simplex(3, 3);
        assert_eq!(s.opposite().opposite(), s);
        assert!(standard_simplex(2, 2).opposite().validate().is_valid());
    }

    #[test]
    fn horn_inclusion_is_a_map() {
        for n in 1..=4 {
            for k in 0..=n {
                let shape = HornShape::new(n, k, n).unwrap();
                let m = SSetMap::new(shape.to_sset(), standard_simplex(n, n), shape.inclusion.clone());
                assert!(m.is_ok(), "n={n} k={k}");
                for level in &shape.inclusion {
                    let mut sorted = level.clone();
                    sorted.dedup();
                    assert_eq!(sorted.len(), level.len());
                }
            }
        }
    }

    #[test]
    fn coskeletal_extension_of_simplex_boundary() {
        // the 2-skeleton of Δ² extended coskeletally gets back exactly one 2-cell
        let s = standard_simplex(2, 1).extend_coskeletal();
        assert_eq!(s.counts(), vec![3, 3, 1]);
        assert!(s.validate().is_valid());
    }

    #[test]
    fn non_commuting_map_is_rejected() {
        let s = standard_simplex(1, 1);
        // swap the vertices but keep the edge: faces no longer match
        let r = SSetMap::new(s.clone(), s, vec![vec![1, 0], vec![0]]);
        assert!(matches!(r, Err(SSetError::NotFaceCommuting { .. })));
    }
}
