//! Lifting properties of maps of semisimplicial sets.

use std::collections::BTreeMap;

use serde::Serialize;

use super::horn::{fillers_with, horn_shape, instances_for, name_assignment};
use super::{HornInstance, SSetError, SSetMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FibrationKind {
    /// Unique lifts against every horn.
    Kan,
    /// Unique lifts for `0 <= k < n`.
    Left,
    /// Unique lifts for `0 < k <= n`.
    Right,
    /// Unique lifts for `0 < k < n`.
    Inner,
    None,
}

impl FibrationKind {
    pub fn is_inner(self) -> bool {
        !matches!(self, FibrationKind::None)
    }

    pub fn is_left(self) -> bool {
        matches!(self, FibrationKind::Left | FibrationKind::Kan)
    }

    pub fn is_right(self) -> bool {
        matches!(self, FibrationKind::Right | FibrationKind::Kan)
    }
}

/// A lifting square without exactly one lift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftingFailure {
    pub n: usize,
    pub k: usize,
    pub horn: Vec<Vec<String>>,
    pub lifts: usize,
}

/// Which horn inclusions `Λⁿₖ -> Δⁿ` have unique lifts, for `1 <= n <= up_to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftingProfile {
    pub up_to: usize,
    pub unique: BTreeMap<(usize, usize), bool>,
    pub failures: Vec<LiftingFailure>,
}

impl LiftingProfile {
    fn all(&self, pred: impl Fn(usize, usize) -> bool) -> bool {
        self.unique
            .iter()
            .filter(|((n, k), _)| pred(*n, *k))
            .all(|(_, &ok)| ok)
    }

    pub fn kind(&self) -> FibrationKind {
        let inner = self.all(|n, k| 0 < k && k < n);
        let left = inner && self.all(|_, k| k == 0);
        let right = inner && self.all(|n, k| k == n);
        match (inner, left, right) {
            (true, true, true) => FibrationKind::Kan,
            (true, true, false) => FibrationKind::Left,
            (true, false, true) => FibrationKind::Right,
            (true, false, false) => FibrationKind::Inner,
            _ => FibrationKind::None,
        }
    }
}

/// For every horn `h` in the source and every filler of its image in the
/// target (i.e. every commuting square), count lifts.
pub fn lifting_profile(m: &SSetMap, up_to: usize) -> Result<LiftingProfile, SSetError> {
    if up_to > m.top_level() {
        return Err(SSetError::LevelOutOfRange {
            level: up_to,
            max_level: m.top_level(),
        });
    }
    let (e, b) = (m.source(), m.target());
    let mut unique = BTreeMap::new();
    let mut failures = Vec::new();
    for n in 1..=up_to {
        for k in 0..=n {
            let shape = horn_shape(n, k)?;
            let mut ok = true;
            for h in instances_for(e, &shape) {
                let image = HornInstance {
                    n,
                    k,
                    assignment: h
                        .assignment
                        .iter()
                        .enumerate()
                        .map(|(l, cells)| cells.iter().map(|&c| m.apply(l, c)).collect())
                        .collect(),
                };
                let lifts = fillers_with(e, &shape, &h);
                for square in fillers_with(b, &shape, &image) {
                    let count = lifts
                        .iter()
                        .filter(|l| {
                            m.apply(n - 1, l.missing_face) == square.missing_face
                                && m.apply(n, l.top) == square.top
                        })
                        .count();
                    if count != 1 {
                        ok = false;
                        failures.push(LiftingFailure {
                            n,
                            k,
                            horn: name_assignment(e, &h.assignment),
                            lifts: count,
                        });
                    }
                }
            }
            unique.insert((n, k), ok);
        }
    }
    Ok(LiftingProfile {
        up_to,
        unique,
        failures,
    })
}

/// Classify a map by its unique-lifting properties up to `up_to`.
pub fn fibration_kind(m: &SSetMap, up_to: usize) -> Result<FibrationKind, SSetError> {
    Ok(lifting_profile(m, up_to)?.kind())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::standard_simplex;
    use crate::sset::FinSSet;

    fn identity_map(s: &FinSSet) -> SSetMap {
        let maps = (0..=s.max_level()).map(|l| (0..s.count(l)).collect()).collect();
        SSetMap::new(s.clone(), s.clone(), maps).unwrap()
    }

    #[test]
    fn identity_lifts_uniquely() {
        let s = standard_simplex(2, 2);
        assert_eq!(fibration_kind(&identity_map(&s), 2).unwrap(), FibrationKind::Kan);
    }

    #[test]
    fn projection_to_point_of_simplex() {
        // Δ¹ -> Δ⁰: the lone vertex has two lifts for Λ¹₀ squares? No: the base has no
        // edges, so there are no squares at n = 1; at n = 2 the base has no 2-cells.
        let s = standard_simplex(1, 2);
        let point = standard_simplex(0, 2);
        let m = SSetMap::new(s, point, vec![vec![0, 0], vec![], vec![]]);
        // edge 01 has nowhere to go
        assert!(m.is_err());
    }

    #[test]
    fn level_bound_is_checked() {
        let s = standard_simplex(1, 1);
        assert!(fibration_kind(&identity_map(&s), 2).is_err());
    }
}
