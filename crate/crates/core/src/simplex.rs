//! The semi-simplex category: strictly monotone maps between finite ordinals,
//! face maps, standard simplexes and horns.
//!
//! Cells of a standard simplex are identified with their vertex sets, so cell
//! names are canonical (`"012"` is the 2-cell spanned by vertices 0, 1, 2) and
//! enumeration order is lexicographic in the vertex sequence.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::sset::{Cell, FinSSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplexError {
    #[error("values {values:?} are not strictly increasing")]
    NotMonotone { values: Vec<usize> },
    #[error("map [{dom}] -> [{cod}] needs {expected} values, got {found}")]
    WrongLength {
        dom: usize,
        cod: usize,
        expected: usize,
        found: usize,
    },
    #[error("value {value} exceeds codomain [{cod}]")]
    ValueOutOfRange { value: usize, cod: usize },
    #[error("cannot compose: inner map lands in [{inner_cod}], outer map starts at [{outer_dom}]")]
    DomainMismatch { inner_cod: usize, outer_dom: usize },
    #[error("index {index} out of range for [{n}]")]
    IndexOutOfRange { n: usize, index: usize },
    #[error("face maps need n >= 1")]
    NoFaces,
}

/// A strictly increasing map `[dom] -> [cod]`, where `[n] = {0, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonotoneMap {
    dom: usize,
    cod: usize,
    values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(dom: usize, cod: usize, values: Vec<usize>) -> Result<Self, SimplexError> {
        if values.len() != dom + 1 {
            return Err(SimplexError::WrongLength {
                dom,
                cod,
                expected: dom + 1,
                found: values.len(),
            });
        }
        if let Some(&value) = values.iter().find(|&&v| v > cod) {
            return Err(SimplexError::ValueOutOfRange { value, cod });
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SimplexError::NotMonotone { values });
        }
        Ok(MonotoneMap { dom, cod, values })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap {
            dom: n,
            cod: n,
            values: (0..=n).collect(),
        }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &MonotoneMap) -> Result<MonotoneMap, SimplexError> {
        compose_monotone(self, inner)
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}]:{:?}", self.dom, self.cod, self.values)
    }
}

/// All strictly monotone maps `[i] -> [j]` in lexicographic order of their
/// value sequences. There are `C(j+1, i+1)` of them.
pub fn enumerate_monotone(i: usize, j: usize) -> Vec<MonotoneMap> {
    let len = i + 1;
    let universe = j + 1;
    let mut out = Vec::new();
    if len > universe {
        return out;
    }
    let mut current: Vec<usize> = (0..len).collect();
    loop {
        out.push(MonotoneMap {
            dom: i,
            cod: j,
            values: current.clone(),
        });
        // advance to the next combination in lexicographic order
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if current[pos] < universe - len + pos {
                break;
            }
        }
        current[pos] += 1;
        for q in pos + 1..len {
            current[q] = current[q - 1] + 1;
        }
    }
}

/// Pointwise composite `g ∘ f`.
pub fn compose_monotone(g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap, SimplexError> {
    if f.cod != g.dom {
        return Err(SimplexError::DomainMismatch {
            inner_cod: f.cod,
            outer_dom: g.dom,
        });
    }
    Ok(MonotoneMap {
        dom: f.dom,
        cod: g.cod,
        values: f.values.iter().map(|&v| g.values[v]).collect(),
    })
}

/// The coface `[n-1] -> [n]` that skips `i`.
pub fn face_map(n: usize, i: usize) -> Result<MonotoneMap, SimplexError> {
    if n == 0 {
        return Err(SimplexError::NoFaces);
    }
    if i > n {
        return Err(SimplexError::IndexOutOfRange { n, index: i });
    }
    Ok(MonotoneMap {
        dom: n - 1,
        cod: n,
        values: (0..=n).filter(|&v| v != i).collect(),
    })
}

/// Canonical cell name for a vertex set.
pub(crate) fn vertex_name(values: &[usize]) -> String {
    if values.iter().all(|&v| v < 10) {
        values.iter().map(|v| v.to_string()).collect()
    } else {
        values
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("_")
    }
}

/// The cells of `Δⁿ` truncated at `cap`, as vertex sets, level by level.
pub fn simplex_cells(n: usize, cap: usize) -> Vec<Vec<MonotoneMap>> {
    (0..=cap).map(|m| enumerate_monotone(m, n)).collect()
}

fn sset_from_cells(cells: &[Vec<MonotoneMap>]) -> FinSSet {
    let index: Vec<HashMap<&[usize], usize>> = cells
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, c)| (c.values(), i))
                .collect()
        })
        .collect();
    let levels = cells
        .iter()
        .enumerate()
        .map(|(m, level)| {
            level
                .iter()
                .map(|c| {
                    let faces = if m == 0 {
                        Vec::new()
                    } else {
                        (0..=m)
                            .map(|i| {
                                let mut face = c.values().to_vec();
                                face.remove(i);
                                index[m - 1][face.as_slice()]
                            })
                            .collect()
                    };
                    Cell::new(vertex_name(c.values()), faces)
                })
                .collect()
        })
        .collect();
    FinSSet::from_levels(levels)
}

/// `Δⁿ` truncated at level `cap`; its `m`-cells are the monotone maps `[m] -> [n]`.
pub fn standard_simplex(n: usize, cap: usize) -> FinSSet {
    sset_from_cells(&simplex_cells(n, cap))
}

/// A horn `Λⁿₖ` together with its inclusion into `Δⁿ`.
#[derive(Debug, Clone)]
pub struct HornShape {
    pub n: usize,
    pub k: usize,
    /// Vertex sets of the horn's cells, level by level.
    pub cells: Vec<Vec<MonotoneMap>>,
    /// `inclusion[m][c]` is the index in `Δⁿ` of horn cell `c` at level `m`.
    pub inclusion: Vec<Vec<usize>>,
    /// Index (at level `n-1` of `Δⁿ`) of the face opposite vertex `k`.
    pub missing_face: usize,
    /// `Δⁿ` truncated at `n`.
    pub simplex: FinSSet,
}

impl HornShape {
    pub fn new(n: usize, k: usize, cap: usize) -> Result<Self, SimplexError> {
        if n == 0 {
            return Err(SimplexError::NoFaces);
        }
        if k > n {
            return Err(SimplexError::IndexOutOfRange { n, index: k });
        }
        let removed_face = face_map(n, k)?;
        let full = simplex_cells(n, cap);
        let mut cells = Vec::with_capacity(full.len());
        let mut inclusion = Vec::with_capacity(full.len());
        let mut missing_face = 0;
        for (m, level) in full.into_iter().enumerate() {
            let mut kept = Vec::new();
            let mut incl = Vec::new();
            for (idx, c) in level.into_iter().enumerate() {
                if m == n {
                    continue;
                }
                if m + 1 == n && c.values() == removed_face.values() {
                    missing_face = idx;
                    continue;
                }
                kept.push(c);
                incl.push(idx);
            }
            cells.push(kept);
            inclusion.push(incl);
        }
        Ok(HornShape {
            n,
            k,
            cells,
            inclusion,
            missing_face,
            simplex: standard_simplex(n, n),
        })
    }

    pub fn to_sset(&self) -> FinSSet {
        sset_from_cells(&self.cells)
    }
}

/// `Λⁿₖ` truncated at `cap`: `Δⁿ` without its top cell and without the face
/// opposite vertex `k`.
pub fn horn(n: usize, k: usize, cap: usize) -> Result<FinSSet, SimplexError> {
    Ok(HornShape::new(n, k, cap)?.to_sset())
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
