//! Day convolution of cubical sets and the pushout-product of maps.
//!
//! The non-degenerate `d`-cells of `X ⊗ Y` are the pairs `(x, y)` with
//! `dim x + dim y = d`. The first `dim x` coordinates belong to `x`, the
//! rest to `y`, so a face in the first block is taken in `x` and a face in
//! the second block in `y`, with degeneracies shifted into place.

use std::sync::Arc;

use super::builders::cube_cell_index;
use super::{pushout, CellRef, CubicalMap, CubicalSet, Ref};
use crate::cube::CubeMap;
use crate::error::Result;

/// `X ⊗ Y` with its pair indexing.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub object: Arc<CubicalSet>,
    right_cells: usize,
}

impl Tensor {
    pub fn pair(&self, x: usize, y: usize) -> usize {
        x * self.right_cells + y
    }

    pub fn unpair(&self, cell: usize) -> (usize, usize) {
        (cell / self.right_cells, cell % self.right_cells)
    }
}

/// Combines `x' · π₁` and `y' · π₂` into the element `(x', y') · (π₁ ⊗ π₂)`.
fn pair_ref(t: &Tensor, left_dim: usize, a: &CellRef, b: &CellRef) -> CellRef {
    let mut degeneracies = a.degeneracies.clone();
    degeneracies.extend(b.degeneracies.iter().map(|&i| i + left_dim));
    Ref::new(t.pair(a.base, b.base), degeneracies)
}

pub fn tensor(x: &CubicalSet, y: &CubicalSet) -> Tensor {
    let ny = y.num_cells();
    let mut out = CubicalSet::new();
    let t = Tensor { object: Arc::new(CubicalSet::new()), right_cells: ny };
    for a in 0..x.num_cells() {
        let da = x.dim_of(a);
        for b in 0..ny {
            let db = y.dim_of(b);
            let mut faces = Vec::with_capacity(2 * (da + db));
            for f in x.faces(a) {
                faces.push(pair_ref(&t, da - 1, f, &Ref::cell(b)));
            }
            for f in y.faces(b) {
                faces.push(pair_ref(&t, da, &Ref::cell(a), f));
            }
            out.add_cell(da + db, faces, format!("{}⊗{}", x.label(a), y.label(b)))
                .expect("tensor faces precede cells");
        }
    }
    Tensor { object: Arc::new(out), right_cells: ny }
}

/// `f ⊗ g : X ⊗ Y → X' ⊗ Y'`, with the computed source and target tensors.
pub fn tensor_maps(f: &CubicalMap, g: &CubicalMap) -> Result<(Tensor, Tensor, CubicalMap)> {
    let src = tensor(f.source(), g.source());
    let tgt = tensor(f.target(), g.target());
    let mut assignment = Vec::with_capacity(src.object.num_cells());
    for c in 0..src.object.num_cells() {
        let (a, b) = src.unpair(c);
        let fa = f.image_of(a);
        let gb = g.image_of(b);
        assignment.push(pair_ref(&tgt, f.source().dim_of(a), fa, gb));
    }
    let map = CubicalMap::new(src.object.clone(), tgt.object.clone(), assignment)?;
    Ok((src, tgt, map))
}

/// The canonical isomorphism `□ⁿ ⊗ □ᵐ → □ⁿ⁺ᵐ` sending a pair of injective
/// maps to their tensor product.
pub fn tensor_cube_iso(n: usize, m: usize) -> Result<CubicalMap> {
    let a = super::standard_cube(n)?;
    let b = super::standard_cube(m)?;
    let target = Arc::new(super::standard_cube(n + m)?);
    let t = tensor(&a, &b);
    let monos_a = monos_of(n)?;
    let monos_b = monos_of(m)?;
    let assignment = (0..t.object.num_cells())
        .map(|c| {
            let (x, y) = t.unpair(c);
            Ref::cell(cube_cell_index(n + m, &monos_a[x].tensor(&monos_b[y])))
        })
        .collect();
    CubicalMap::new(t.object.clone(), target, assignment)
}

/// The injective maps indexing the cells of `standard_cube(n)`, in cell order.
pub(crate) fn monos_of(n: usize) -> Result<Vec<CubeMap>> {
    let mut out = Vec::new();
    for k in 0..=n {
        out.extend(crate::cube::enumerate_injective(k, n));
    }
    Ok(out)
}

/// The pushout-product `f ⊠ g : A₁⊗B₂ ⊔_{A₁⊗A₂} B₁⊗A₂ → B₁⊗B₂`.
#[derive(Clone, Debug)]
pub struct PushoutProduct {
    pub map: CubicalMap,
}

impl PushoutProduct {
    pub fn source(&self) -> &Arc<CubicalSet> {
        self.map.source()
    }
}

pub fn pushout_product(f: &CubicalMap, g: &CubicalMap) -> Result<PushoutProduct> {
    let id_a1 = CubicalMap::identity(f.source().clone());
    let id_a2 = CubicalMap::identity(g.source().clone());
    let id_b1 = CubicalMap::identity(f.target().clone());
    let id_b2 = CubicalMap::identity(g.target().clone());
    // A₁⊗A₂ → A₁⊗B₂ and A₁⊗A₂ → B₁⊗A₂
    let (_, _, to_left) = tensor_maps(&id_a1, g)?;
    let (_, _, to_right) = tensor_maps(f, &id_a2)?;
    let p = pushout(&to_left, &to_right)?;
    let (_, _, left_out) = tensor_maps(f, &id_b2)?;
    let (_, _, right_out) = tensor_maps(&id_b1, g)?;
    let map = p.induced(&left_out, &right_out)?;
    Ok(PushoutProduct { map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{find_isomorphism, point_pair_inclusion, standard_cube};

    #[test]
    fn cube_tensor_is_a_cube() {
        for n in 0..=2 {
            for m in 0..=2 {
                let iso = tensor_cube_iso(n, m).unwrap();
                assert!(iso.is_mono());
                assert_eq!(iso.source().num_cells(), iso.target().num_cells());
            }
        }
    }

    #[test]
    fn tensor_validates_and_unit_laws() {
        let sq = standard_cube(2).unwrap();
        let pt = standard_cube(0).unwrap();
        let t = tensor(&sq, &pt);
        t.object.validate().unwrap();
        assert!(find_isomorphism(t.object.as_ref(), &sq).is_some());
        assert!(find_isomorphism(tensor(&pt, &sq).object.as_ref(), &sq).is_some());
    }

    #[test]
    fn tensor_of_point_pairs() {
        let i = point_pair_inclusion().unwrap();
        let t = tensor(i.source(), i.source());
        assert_eq!(t.object.counts(), vec![4]);
    }

    #[test]
    fn pushout_product_of_i_with_itself_is_the_square_boundary() {
        let i = point_pair_inclusion().unwrap();
        let pp = pushout_product(&i, &i).unwrap();
        assert_eq!(pp.source().counts(), vec![4, 4]);
        assert!(pp.map.is_mono());
        pp.source().validate().unwrap();
    }
}
