//! The generating (acyclic) cofibrations `∂□ⁿ → □ⁿ` and `⊓ⁿ_(k,ε) → □ⁿ`,
//! built as iterated pushout-products of `i` and `j^ε`.

use std::sync::Arc;

use super::builders::cube_cell_index;
use super::{coproduct, pushout_product, standard_cube, tensor_cube_iso, CubicalMap, CubicalSet, Ref};
use crate::cube::CubeMap;
use crate::error::{Error, Result};

/// `i = j⁰ ⊔ j¹ : □⁰ ⊔ □⁰ → □¹`.
pub fn point_pair_inclusion() -> Result<CubicalMap> {
    let point = Arc::new(standard_cube(0)?);
    let sum = coproduct(&point, &point);
    let interval = Arc::new(standard_cube(1)?);
    let j0 = cube_cell_index(1, &CubeMap::endpoint(0)?);
    let j1 = cube_cell_index(1, &CubeMap::endpoint(1)?);
    CubicalMap::new(sum.object, interval, vec![Ref::cell(j0), Ref::cell(j1)])
}

/// `j^ε : □⁰ → □¹`.
pub fn endpoint_inclusion(eps: u8) -> Result<CubicalMap> {
    let point = Arc::new(standard_cube(0)?);
    let interval = Arc::new(standard_cube(1)?);
    let j = cube_cell_index(1, &CubeMap::endpoint(eps)?);
    CubicalMap::new(point, interval, vec![Ref::cell(j)])
}

/// A factor in an iterated pushout-product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `i : ∂□¹ → □¹`
    Boundary,
    /// `j^ε : □⁰ → □¹`
    Endpoint(u8),
}

/// `f₁ ⊠ … ⊠ fₙ`, bracketed from the left, landing in `standard_cube(n)`.
/// The empty product is `∅ → □⁰`.
pub fn iterated_pushout_product(factors: &[Factor]) -> Result<CubicalMap> {
    let mut current = CubicalMap::from_empty(Arc::new(standard_cube(0)?));
    for (p, factor) in factors.iter().enumerate() {
        let g = match factor {
            Factor::Boundary => point_pair_inclusion()?,
            Factor::Endpoint(eps) => endpoint_inclusion(*eps)?,
        };
        let pp = pushout_product(&current, &g)?;
        current = pp.map.then(&tensor_cube_iso(p, 1)?)?;
    }
    Ok(current)
}

/// `∂□ⁿ → □ⁿ` as the `n`-fold pushout-product `i ⊠ … ⊠ i`.
pub fn boundary(n: usize) -> Result<CubicalMap> {
    iterated_pushout_product(&vec![Factor::Boundary; n])
}

/// `⊓ⁿ_(k,ε) → □ⁿ` as `i ⊠ … ⊠ j^ε ⊠ … ⊠ i` with `j^ε` in position `k`.
pub fn open_box(n: usize, k: usize, eps: u8) -> Result<CubicalMap> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange(format!("open box index {k} outside 1..={n}")));
    }
    if eps > 1 {
        return Err(Error::OutOfRange(format!("endpoint {eps} is not 0 or 1")));
    }
    let factors: Vec<Factor> =
        (1..=n).map(|p| if p == k { Factor::Endpoint(eps) } else { Factor::Boundary }).collect();
    iterated_pushout_product(&factors)
}

/// The subobject of `□ⁿ` of all cells except the top one.
pub fn boundary_subobject(n: usize) -> Result<CubicalMap> {
    let cube = Arc::new(standard_cube(n)?);
    let top = cube_cell_index(n, &CubeMap::identity(n));
    let keep: Vec<usize> = (0..cube.num_cells()).filter(|&c| c != top).collect();
    Ok(cube.subcomplex_inclusion(&keep))
}

/// The subobject of `□ⁿ` missing the top cell and the `(k, 1−ε)` face.
pub fn open_box_subobject(n: usize, k: usize, eps: u8) -> Result<CubicalMap> {
    let cube = Arc::new(standard_cube(n)?);
    let top = cube_cell_index(n, &CubeMap::identity(n));
    let open = cube_cell_index(n, &CubeMap::face(n, k, 1 - eps)?);
    let keep: Vec<usize> = (0..cube.num_cells()).filter(|&c| c != top && c != open).collect();
    Ok(cube.subcomplex_inclusion(&keep))
}

impl CubicalSet {
    /// Convenience: the source of [`boundary`].
    pub fn boundary_of_cube(n: usize) -> Result<Arc<CubicalSet>> {
        Ok(boundary(n)?.source().clone())
    }
}
