//! Enumeration of all maps between finite cubical sets.

use std::sync::Arc;

use super::{CellRef, CubicalMap, CubicalSet, FaceOracle};
use crate::cube::CubeMap;
use crate::error::{Error, Result};

/// Default bound on candidate tests during a map search.
pub const MAP_SEARCH_LIMIT: u64 = 10_000_000;

fn image_under(partial: &[Option<CellRef>], source: &CubicalSet, target: &CubicalSet, r: &CellRef) -> Result<CellRef> {
    let fx = partial[r.base].as_ref().expect("faces are assigned before their cofaces");
    if r.degeneracies.is_empty() {
        return Ok(fx.clone());
    }
    let d = source.dim_of(r.base) + r.degeneracies.len();
    target.act(fx, &CubeMap::degeneracy(d, &r.degeneracies))
}

/// Every map `source → target`, by backtracking over source cells in
/// dimension order. Each candidate image tested counts one search node;
/// exceeding `limit` nodes is a resource-guard error.
pub fn enumerate_maps(source: &Arc<CubicalSet>, target: &Arc<CubicalSet>, limit: u64) -> Result<Vec<CubicalMap>> {
    let order = source.cells_by_dim();
    let max_dim = source.dim().unwrap_or(0);
    let pools: Vec<Vec<CellRef>> = (0..=max_dim).map(|d| target.all_refs(d)).collect();
    let mut partial: Vec<Option<CellRef>> = vec![None; source.num_cells()];
    let mut out = Vec::new();
    let mut nodes = 0u64;
    // next candidate index at each depth of the search
    let mut stack: Vec<usize> = vec![0];
    if order.is_empty() {
        return Ok(vec![CubicalMap::from_parts_unchecked(source.clone(), target.clone(), Vec::new())]);
    }
    while !stack.is_empty() {
        let depth = stack.len() - 1;
        let next = &mut stack[depth];
        let cell = order[depth];
        partial[cell] = None;
        let d = source.dim_of(cell);
        let pool = &pools[d];
        let mut chosen = None;
        while *next < pool.len() {
            let candidate = &pool[*next];
            *next += 1;
            nodes += 1;
            if nodes > limit {
                return Err(Error::guard("map search nodes", limit));
            }
            let mut ok = true;
            'faces: for k in 1..=d {
                for eps in 0..2u8 {
                    let want = image_under(&partial, source, target, source.face(cell, k, eps))?;
                    if target.face_of(candidate, k, eps)? != want {
                        ok = false;
                        break 'faces;
                    }
                }
            }
            if ok {
                chosen = Some(candidate.clone());
                break;
            }
        }
        match chosen {
            None => {
                stack.pop();
            }
            Some(c) => {
                partial[cell] = Some(c);
                if depth + 1 == order.len() {
                    let assignment = partial.iter().map(|r| r.clone().unwrap()).collect();
                    out.push(CubicalMap::from_parts_unchecked(source.clone(), target.clone(), assignment));
                } else {
                    stack.push(0);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::hom_count;
    use crate::cubical::{boundary, standard_cube};

    #[test]
    fn maps_out_of_a_representable_are_elements() {
        for n in 0..=2 {
            for m in 0..=2 {
                let a = Arc::new(standard_cube(n).unwrap());
                let b = Arc::new(standard_cube(m).unwrap());
                let maps = enumerate_maps(&a, &b, MAP_SEARCH_LIMIT).unwrap();
                assert_eq!(maps.len() as u64, hom_count(n, m));
                for f in &maps {
                    f.validate().unwrap();
                }
            }
        }
    }

    #[test]
    fn maps_from_square_boundary() {
        // A map ∂□² → □¹ is a monotone labelling of the four corners by
        // {0, 1}: each edge is then forced (identity or degenerate).
        let b = boundary(2).unwrap();
        let target = Arc::new(standard_cube(1).unwrap());
        let maps = enumerate_maps(b.source(), &target, MAP_SEARCH_LIMIT).unwrap();
        let monotone = (0u8..16)
            .filter(|m| {
                let c = |x: u8, y: u8| (m >> (2 * x + y)) & 1;
                c(0, 0) <= c(0, 1) && c(0, 0) <= c(1, 0) && c(0, 1) <= c(1, 1) && c(1, 0) <= c(1, 1)
            })
            .count();
        assert_eq!(maps.len(), monotone);
        for f in &maps {
            f.validate().unwrap();
        }
    }

    #[test]
    fn guard_fires() {
        let a = Arc::new(standard_cube(2).unwrap());
        let err = enumerate_maps(&a, &a, 3).unwrap_err();
        assert!(err.is_resource_guard());
    }

    #[test]
    fn empty_source_has_one_map() {
        let e = Arc::new(CubicalSet::new());
        let t = Arc::new(standard_cube(1).unwrap());
        assert_eq!(enumerate_maps(&e, &t, 10).unwrap().len(), 1);
    }
}
