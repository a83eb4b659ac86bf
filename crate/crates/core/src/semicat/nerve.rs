//! The nerve of a finite semicategory.

use std::collections::HashMap;

use super::FinSemicat;
use crate::sset::{Cell, FinSSet};

/// Composable chains `(f₁, …, fₙ)` per level `1..=cap`, in lexicographic order.
/// Index 0 holds one empty chain per object for convenience.
pub fn nerve_chains(c: &FinSemicat, cap: usize) -> Vec<Vec<Vec<usize>>> {
    let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..c.object_count()).map(|_| Vec::new()).collect()];
    if cap >= 1 {
        levels.push((0..c.morphism_count()).map(|f| vec![f]).collect());
    }
    for _ in 2..=cap {
        let prev = levels.last().unwrap();
        let mut next = Vec::new();
        for chain in prev {
            let end = c.dst(*chain.last().unwrap());
            for f in 0..c.morphism_count() {
                if c.src(f) == end {
                    let mut ch = chain.clone();
                    ch.push(f);
                    next.push(ch);
                }
            }
        }
        levels.push(next);
    }
    levels
}

/// Level 0 are the objects, level `n` the composable chains of length `n`.
/// Face `0` drops the first morphism, face `n` the last, and an inner face `i`
/// replaces `fᵢ, fᵢ₊₁` with `fᵢ₊₁ ∘ fᵢ`.
pub fn nerve(c: &FinSemicat, cap: usize) -> FinSSet {
    let chains = nerve_chains(c, cap);
    let mut levels: Vec<Vec<Cell>> = Vec::with_capacity(cap + 1);
    levels.push(
        c.objects()
            .iter()
            .map(|o| Cell {
                name: o.clone(),
                faces: Vec::new(),
            })
            .collect(),
    );
    if cap >= 1 {
        levels.push(
            c.morphisms()
                .iter()
                .map(|m| Cell {
                    name: m.name.clone(),
                    faces: vec![m.dst, m.src],
                })
                .collect(),
        );
    }
    for n in 2..=cap {
        let index: HashMap<&[usize], usize> = chains[n - 1]
            .iter()
            .enumerate()
            .map(|(i, ch)| (ch.as_slice(), i))
            .collect();
        let cells = chains[n]
            .iter()
            .map(|ch| {
                let faces = (0..=n)
                    .map(|i| {
                        let face: Vec<usize> = if i == 0 {
                            ch[1..].to_vec()
                        } else if i == n {
                            ch[..n - 1].to_vec()
                        } else {
                            let mut v = ch[..i - 1].to_vec();
                            v.push(c.compose(ch[i], ch[i - 1]).unwrap());
                            v.extend_from_slice(&ch[i + 1..]);
                            v
                        };
                        index[face.as_slice()]
                    })
                    .collect();
                let name = ch
                    .iter()
                    .map(|&f| c.name(f))
                    .collect::<Vec<_>>()
                    .join(".");
                Cell { name, faces }
            })
            .collect();
        levels.push(cells);
    }
    FinSSet::from_levels(levels)
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;

    #[test]
    fn z2_counts() {
        assert_eq!(nerve(&z2(), 3).counts(), vec![1, 2, 4, 8]);
        assert!(nerve(&z2(), 4).validate().is_valid());
    }

    #[test]
    fn empty_nerve() {
        assert_eq!(nerve(&FinSemicat::empty(), 3).counts(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn two_cells_are_composites() {
        let c = z3();
        let n = nerve(&c, 2);
        for (k, cell) in n.levels()[2].iter().enumerate() {
            let ch = &nerve_chains(&c, 2)[2][k];
            assert_eq!(cell.faces, vec![ch[1], c.compose(ch[1], ch[0]).unwrap(), ch[0]]);
        }
    }
}
