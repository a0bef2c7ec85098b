use std::collections::HashMap;
use std::sync::Arc;

use super::{CellRef, CubicalMap, CubicalSet, Ref};
use crate::cube::{enumerate_injective, CubeMap, Slot};
use crate::error::{Error, Result};

/// Largest representable cube built by default.
pub const DIMENSION_GUARD: usize = 8;

fn mono_label(m: &CubeMap) -> String {
    m.slots()
        .iter()
        .map(|s| match s {
            Slot::Const(e) => char::from(b'0' + e),
            Slot::Var(_) => '*',
        })
        .collect()
}

/// The representable `□ⁿ`. Its non-degenerate `k`-cells are the injective
/// cube maps `□ᵏ → □ⁿ`; cell labels spell the map, e.g. `0*` for the edge
/// `x ↦ (0, x)`.
pub fn standard_cube(n: usize) -> Result<CubicalSet> {
    if n > DIMENSION_GUARD {
        return Err(Error::guard(format!("standard_cube({n})"), DIMENSION_GUARD as u64));
    }
    let mut index: HashMap<CubeMap, usize> = HashMap::new();
    let mut out = CubicalSet::new();
    for k in 0..=n {
        for m in enumerate_injective(k, n) {
            let mut faces = Vec::with_capacity(2 * k);
            for j in 1..=k {
                for eps in 0..2u8 {
                    let f = m.compose_unchecked(&CubeMap::face(k, j, eps)?);
                    faces.push(Ref::cell(index[&f]));
                }
            }
            let id = out.add_cell(k, faces, mono_label(&m))?;
            index.insert(m, id);
        }
    }
    Ok(out)
}

/// Index of the cell of `standard_cube(n)` corresponding to an injective map.
pub(crate) fn cube_cell_index(n: usize, mono: &CubeMap) -> usize {
    let k = mono.source_dim();
    let mut offset = 0;
    for j in 0..k {
        offset += enumerate_injective(j, n).len();
    }
    offset + enumerate_injective(k, n).iter().position(|m| m == mono).expect("injective map")
}

/// `n` isolated points.
pub fn discrete(n: usize) -> CubicalSet {
    let mut out = CubicalSet::new();
    for i in 0..n {
        out.add_cell(0, Vec::new(), format!("p{i}")).expect("points");
    }
    out
}

/// A coproduct together with its two injections.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub object: Arc<CubicalSet>,
    pub left: CubicalMap,
    pub right: CubicalMap,
}

/// Disjoint union; the cells of `y` follow those of `x`.
pub fn coproduct(x: &Arc<CubicalSet>, y: &Arc<CubicalSet>) -> Coproduct {
    let mut out = (**x).clone();
    let shift = x.num_cells();
    for c in 0..y.num_cells() {
        let faces = y.faces(c).iter().map(|f| Ref::new(f.base + shift, f.degeneracies.clone())).collect();
        out.add_cell(y.dim_of(c), faces, y.label(c).to_string()).expect("coproduct");
    }
    let object = Arc::new(out);
    let left_assignment: Vec<CellRef> = (0..shift).map(Ref::cell).collect();
    let right_assignment: Vec<CellRef> = (0..y.num_cells()).map(|c| Ref::cell(c + shift)).collect();
    Coproduct {
        left: CubicalMap::from_parts_unchecked(x.clone(), object.clone(), left_assignment),
        right: CubicalMap::from_parts_unchecked(y.clone(), object.clone(), right_assignment),
        object,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::hom_count;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn representable_cell_counts() {
        assert_eq!(standard_cube(0).unwrap().counts(), vec![1]);
        assert_eq!(standard_cube(2).unwrap().counts(), vec![4, 4, 1]);
        assert_eq!(standard_cube(3).unwrap().counts(), vec![8, 12, 6, 1]);
        for n in 0..=5 {
            let counts = standard_cube(n).unwrap().counts();
            for (k, &c) in counts.iter().enumerate() {
                assert_eq!(c, binom(n, k) << (n - k));
            }
        }
    }

    #[test]
    fn representables_validate() {
        for n in 0..=4 {
            standard_cube(n).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn representable_elements_match_hom_sets() {
        // Yoneda: elements of □ⁿ in dimension k are the maps □ᵏ → □ⁿ.
        for n in 0..=3 {
            let cube = standard_cube(n).unwrap();
            for k in 0..=3 {
                assert_eq!(cube.all_refs(k).len() as u64, hom_count(k, n));
            }
        }
    }

    #[test]
    fn dimension_guard() {
        assert!(standard_cube(DIMENSION_GUARD + 1).unwrap_err().is_resource_guard());
    }

    #[test]
    fn cell_index_lookup() {
        let cube = standard_cube(2).unwrap();
        let top = cube_cell_index(2, &CubeMap::identity(2));
        assert_eq!(cube.dim_of(top), 2);
        let edge = cube_cell_index(2, &CubeMap::face(2, 1, 1).unwrap());
        assert_eq!(cube.label(edge), "1*");
    }

    #[test]
    fn coproduct_counts_add() {
        let a = Arc::new(standard_cube(1).unwrap());
        let b = Arc::new(standard_cube(2).unwrap());
        let c = coproduct(&a, &b);
        assert_eq!(c.object.counts(), vec![6, 5, 1]);
        c.left.validate().unwrap();
        c.right.validate().unwrap();
        let empty = Arc::new(CubicalSet::new());
        assert_eq!(coproduct(&empty, &a).object.as_ref(), a.as_ref());
        let p = Arc::new(standard_cube(0).unwrap());
        assert_eq!(coproduct(&p, &p).object.counts(), vec![2]);
    }
}
