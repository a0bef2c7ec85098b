//! The realization `□ⁿ ↦ (Δ¹)ⁿ`, extended to all finite cubical sets.
//!
//! A non-degenerate simplex of `(Δ¹)ⁿ` is a strictly increasing chain of
//! vertices of `{0,1}ⁿ`; it lies in no proper face exactly when it runs from
//! `0…0` to `1…1`, and such chains are the ordered set partitions of the
//! coordinates (block `b` holds the coordinates that flip at step `b`). Each
//! non-degenerate `n`-cube of `X` contributes these interior simplices, and
//! faces are found by reading them back through the cubical face data.

use std::collections::HashMap;

use super::simplicial::SimplicialSet;
use crate::cube::{CubeMap, Slot};
use crate::cubical::{CubicalSet, FaceOracle, Ref};
use crate::error::Result;

/// Ordered set partitions of `{1..n}` into `k` non-empty blocks, as block
/// numbers `1..=k` per coordinate.
pub fn ordered_partitions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            let mut seen = vec![false; k + 1];
            for &b in cur.iter() {
                seen[b] = true;
            }
            if seen[1..].iter().all(|&s| s) {
                out.push(cur.clone());
            }
            return;
        }
        for b in 1..=k {
            cur.push(b);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    if k >= 1 && k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn block_label(blocks: &[usize]) -> String {
    blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("")
}

/// The triangulated simplicial set, with the `(cube cell, partition)` behind
/// every simplex.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub simplicial: SimplicialSet,
    pub origin: Vec<(usize, Vec<usize>)>,
}

pub fn triangulate(x: &CubicalSet) -> Result<SimplicialSet> {
    Ok(triangulate_with_origin(x)?.simplicial)
}

pub fn triangulate_with_origin(x: &CubicalSet) -> Result<Triangulation> {
    let top = x.dim().unwrap_or(0);
    let mut index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let mut out = SimplicialSet::new();
    let mut origin = Vec::new();
    for k in 0..=top {
        for cell in 0..x.num_cells() {
            let n = x.dim_of(cell);
            for blocks in ordered_partitions(n, k) {
                let faces = if k == 0 {
                    Vec::new()
                } else {
                    (0..=k).map(|i| face_of(x, &index, cell, &blocks, k, i)).collect::<Result<Vec<_>>>()?
                };
                let label = if n == 0 { x.label(cell).to_string() } else { format!("{}|{}", x.label(cell), block_label(&blocks)) };
                let id = out.add_cell(k, faces, label)?;
                index.insert((cell, blocks.clone()), id);
                origin.push((cell, blocks));
            }
        }
    }
    Ok(Triangulation { simplicial: out, origin })
}

/// `d_i` of the interior simplex `(cell, blocks)` with `k` blocks.
fn face_of(
    x: &CubicalSet,
    index: &HashMap<(usize, Vec<usize>), usize>,
    cell: usize,
    blocks: &[usize],
    k: usize,
    i: usize,
) -> Result<crate::cubical::CellRef> {
    let n = blocks.len();
    // block per coordinate after deleting vertex i; None = constant coordinate
    let mut slots = Vec::with_capacity(n);
    let mut free_blocks = Vec::new();
    for &b in blocks {
        let (slot, nb) = if i == 0 && b == 1 {
            (Some(1u8), None)
        } else if i == k && b == k {
            (Some(0u8), None)
        } else {
            let nb = if i == 0 || b > i { b - 1 } else { b };
            (None, Some(nb))
        };
        slots.push(slot);
        if let Some(nb) = nb {
            free_blocks.push(nb);
        }
    }
    let mut var = 0;
    let mono_slots = slots
        .iter()
        .map(|s| match s {
            Some(e) => Slot::Const(*e),
            None => {
                var += 1;
                Slot::Var(var)
            }
        })
        .collect();
    let mono = CubeMap::new(var, mono_slots)?;
    let z = x.act(&Ref::cell(cell), &mono)?;
    // project out the degenerate coordinates of z
    let kept: Vec<usize> = (1..=var)
        .filter(|c| !z.degeneracies.contains(c))
        .map(|c| free_blocks[c - 1])
        .collect();
    let face_dim = k - 1;
    let mut present = vec![false; face_dim + 1];
    for &b in &kept {
        present[b] = true;
    }
    // an empty block b means vertices b − 1 and b coincide
    let collapse: Vec<usize> = (1..=face_dim).filter(|&b| !present[b]).map(|b| b - 1).collect();
    let mut renumber = vec![0; face_dim + 1];
    let mut next = 0;
    for b in 1..=face_dim {
        if present[b] {
            next += 1;
            renumber[b] = next;
        }
    }
    let base_blocks: Vec<usize> = kept.iter().map(|&b| renumber[b]).collect();
    let base = index[&(z.base, base_blocks)];
    Ok(Ref::new(base, collapse))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{find_isomorphism, standard_cube};
    use crate::homology::standard_simplex;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn partitions_count_fubini() {
        let fubini: Vec<usize> = (0..=4).map(|n| (0..=n).map(|k| ordered_partitions(n, k).len()).sum()).collect();
        assert_eq!(fubini, vec![1, 1, 3, 13, 75]);
    }

    #[test]
    fn interval_and_square() {
        let t1 = triangulate(&standard_cube(1).unwrap()).unwrap();
        assert!(find_isomorphism(&t1, &standard_simplex(1).unwrap()).is_some());
        let t2 = triangulate(&standard_cube(2).unwrap()).unwrap();
        assert_eq!(t2.counts(), vec![4, 5, 2]);
        t2.validate().unwrap();
    }

    #[test]
    fn top_simplices_of_cubes() {
        for n in 0..=4 {
            let t = triangulate(&standard_cube(n).unwrap()).unwrap();
            assert_eq!(t.counts()[n], factorial(n));
            t.validate().unwrap();
        }
    }
}
