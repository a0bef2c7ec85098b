//! Exhaustive check of the Kan filling condition for open boxes.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::tensor::monos_of;
use super::{enumerate_maps, open_box, CellRef, CubicalSet, FaceOracle};
use crate::error::Result;

/// Boxes of one shape and how many of them have a filler.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KanEntry {
    pub n: usize,
    pub k: usize,
    pub eps: u8,
    pub boxes: usize,
    pub filled: usize,
}

/// An open box without a filler: the images of the box's cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftingWitness {
    pub n: usize,
    pub k: usize,
    pub eps: u8,
    pub assignment: Vec<CellRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KanReport {
    pub passed: bool,
    pub entries: Vec<KanEntry>,
    pub witness: Option<LiftingWitness>,
}

/// Enumerates every map `⊓ⁿ_(k,ε) → X` for `1 ≤ n ≤ max_dim` and looks for
/// an `n`-element of `X` (degenerate ones included) restricting to it.
pub fn kan_check(x: &Arc<CubicalSet>, max_dim: usize, limit: u64) -> Result<KanReport> {
    let mut entries = Vec::new();
    let mut witness = None;
    for n in 1..=max_dim {
        let fillers = x.all_refs(n);
        let monos = monos_of(n)?;
        for k in 1..=n {
            for eps in 0..2u8 {
                let inclusion = open_box(n, k, eps)?;
                let walls: Vec<(usize, usize)> = inclusion
                    .source()
                    .cells_of_dim(n - 1)
                    .into_iter()
                    .map(|c| (c, inclusion.image_of(c).base))
                    .collect();
                let boxes = enumerate_maps(inclusion.source(), x, limit)?;
                let filled: Vec<bool> = boxes
                    .par_iter()
                    .map(|b| {
                        fillers.iter().any(|z| {
                            walls.iter().all(|&(c, cube_cell)| {
                                x.act(z, &monos[cube_cell]).map(|r| &r == b.image_of(c)).unwrap_or(false)
                            })
                        })
                    })
                    .collect();
                if witness.is_none() {
                    if let Some(i) = filled.iter().position(|f| !f) {
                        witness = Some(LiftingWitness { n, k, eps, assignment: boxes[i].assignment().to_vec() });
                    }
                }
                entries.push(KanEntry {
                    n,
                    k,
                    eps,
                    boxes: boxes.len(),
                    filled: filled.iter().filter(|f| **f).count(),
                });
            }
        }
    }
    Ok(KanReport { passed: witness.is_none(), entries, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{boundary, standard_cube, MAP_SEARCH_LIMIT};

    #[test]
    fn the_interval_fills_one_dimensional_boxes() {
        let x = Arc::new(standard_cube(1).unwrap());
        let r = kan_check(&x, 1, MAP_SEARCH_LIMIT).unwrap();
        // ⊓¹ is a vertex, and every vertex extends to a 1-element, if need
        // be a degenerate one.
        let e = &r.entries[0];
        assert_eq!((e.n, e.k, e.eps, e.boxes), (1, 1, 0, 2));
        assert_eq!(e.filled, 2);
    }

    #[test]
    fn a_point_is_kan() {
        let x = Arc::new(standard_cube(0).unwrap());
        let r = kan_check(&x, 3, MAP_SEARCH_LIMIT).unwrap();
        assert!(r.passed);
        assert!(r.entries.iter().all(|e| e.boxes == 1 && e.filled == 1));
    }

    #[test]
    fn square_boundary_is_not_kan() {
        let b = boundary(2).unwrap();
        let r = kan_check(b.source(), 2, MAP_SEARCH_LIMIT).unwrap();
        assert!(!r.passed);
        assert!(r.witness.is_some());
    }
}
