//! Finite cubical sets.
//!
//! Only non-degenerate cells are stored. Every element of the presheaf is a
//! [`Ref`]: a non-degenerate base cell together with the sorted list of
//! coordinates it is degenerated along. Faces of non-degenerate cells are
//! stored explicitly; the action of an arbitrary cube map on any element is
//! derived from them by [`FaceOracle::act`].

mod builders;
mod generators;
mod iso;
mod kan;
mod maps;
mod quotient;
mod tensor;

use std::collections::HashSet;
use std::hash::Hash;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cube::{CubeMap, Slot};
use crate::error::{Error, Result};

pub use builders::{coproduct, discrete, standard_cube, Coproduct, DIMENSION_GUARD};
pub use generators::{
    boundary, boundary_subobject, endpoint_inclusion, iterated_pushout_product, open_box,
    open_box_subobject, point_pair_inclusion, Factor,
};
pub use iso::{find_isomorphism, CellStructure};
pub use kan::{kan_check, KanEntry, KanReport, LiftingWitness};
pub use maps::{enumerate_maps, MAP_SEARCH_LIMIT};
pub use quotient::{pushout, Pushout, Quotient};
pub use tensor::{pushout_product, tensor, tensor_cube_iso, tensor_maps, PushoutProduct, Tensor};

/// An element of a presheaf: `base · π` where `π` forgets the listed
/// (1-based, strictly increasing) coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ref<C> {
    pub base: C,
    pub degeneracies: Vec<usize>,
}

pub type CellRef = Ref<usize>;

impl<C> Ref<C> {
    pub fn cell(base: C) -> Self {
        Ref { base, degeneracies: Vec::new() }
    }

    pub fn new(base: C, degeneracies: Vec<usize>) -> Self {
        Ref { base, degeneracies }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degeneracies.is_empty()
    }

    pub fn map_base<D>(self, f: impl FnOnce(C) -> D) -> Ref<D> {
        Ref { base: f(self.base), degeneracies: self.degeneracies }
    }
}

/// Degeneracies of the composite `(y · π_inner) · π_outer`, where
/// `π_outer: □ᵏ → □ᵐ` forgets `outer` and `π_inner` forgets `inner ⊆ 1..=m`.
pub fn compose_degeneracies(inner: &[usize], outer: &[usize], k: usize) -> Vec<usize> {
    if inner.is_empty() {
        return outer.to_vec();
    }
    let kept: Vec<usize> = (1..=k).filter(|i| !outer.contains(i)).collect();
    let mut dropped: Vec<usize> = outer.to_vec();
    dropped.extend(inner.iter().map(|&j| kept[j - 1]));
    dropped.sort_unstable();
    dropped
}

/// Anything with cells and cube-face data. The presheaf action of an
/// arbitrary cube map is derived from faces alone.
pub trait FaceOracle {
    type Cell: Clone + Eq + Hash + std::fmt::Debug;

    fn cell_dim(&self, cell: &Self::Cell) -> usize;

    /// The image of `cell` under `face(dim, k, eps)`.
    fn cell_face(&self, cell: &Self::Cell, k: usize, eps: u8) -> Result<Ref<Self::Cell>>;

    fn ref_dim(&self, r: &Ref<Self::Cell>) -> usize {
        self.cell_dim(&r.base) + r.degeneracies.len()
    }

    /// `r · g` for any cube map `g` into `□^{dim r}`.
    fn act(&self, r: &Ref<Self::Cell>, g: &CubeMap) -> Result<Ref<Self::Cell>> {
        let d = self.ref_dim(r);
        if g.target_dim() != d {
            return Err(Error::DimensionMismatch(format!(
                "acting by {g} on a {d}-dimensional element"
            )));
        }
        let h = CubeMap::degeneracy(d, &r.degeneracies).compose_unchecked(g);
        let (mono, epi) = h.factor();
        let k = g.source_dim();
        let used = epi.used_vars();
        let dropped: Vec<usize> = (1..=k).filter(|i| !used.contains(i)).collect();
        let z = self.apply_mono(&r.base, &mono)?;
        Ok(Ref { degeneracies: compose_degeneracies(&z.degeneracies, &dropped, k), base: z.base })
    }

    /// `cell · mono` for an injective cube map, peeling off the last
    /// constant slot first.
    fn apply_mono(&self, cell: &Self::Cell, mono: &CubeMap) -> Result<Ref<Self::Cell>> {
        let slots = mono.slots();
        let last_const = slots.iter().rposition(|s| matches!(s, Slot::Const(_)));
        match last_const {
            None => Ok(Ref::cell(cell.clone())),
            Some(p) => {
                let eps = match slots[p] {
                    Slot::Const(e) => e,
                    Slot::Var(_) => unreachable!(),
                };
                let mut rest = slots.to_vec();
                rest.remove(p);
                let rest = CubeMap::from_slots_unchecked(mono.source_dim(), rest);
                let f = self.cell_face(cell, p + 1, eps)?;
                self.act(&f, &rest)
            }
        }
    }

    fn face_of(&self, r: &Ref<Self::Cell>, k: usize, eps: u8) -> Result<Ref<Self::Cell>> {
        let d = self.ref_dim(r);
        self.act(r, &CubeMap::face(d, k, eps)?)
    }
}

/// A finite cubical set presented by its non-degenerate cells.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CubicalSet {
    dims: Vec<usize>,
    faces: Vec<Vec<CellRef>>,
    labels: Vec<String>,
}

#[inline]
pub(crate) fn face_slot(k: usize, eps: u8) -> usize {
    2 * (k - 1) + eps as usize
}

impl CubicalSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a non-degenerate cell. `faces` lists the `(k, ε)` faces in the
    /// order `(1,0), (1,1), (2,0), …`; every face must already exist.
    pub fn add_cell(&mut self, dim: usize, faces: Vec<CellRef>, label: impl Into<String>) -> Result<usize> {
        if faces.len() != 2 * dim {
            return Err(Error::invalid(format!(
                "a {dim}-cell needs {} faces, got {}",
                2 * dim,
                faces.len()
            )));
        }
        for f in &faces {
            if f.base >= self.dims.len() {
                return Err(Error::invalid(format!("face refers to unknown cell {}", f.base)));
            }
            if !is_valid_degeneracy_word(&f.degeneracies, dim - 1) {
                return Err(Error::invalid(format!("bad degeneracy word {:?}", f.degeneracies)));
            }
            if self.dims[f.base] + f.degeneracies.len() + 1 != dim {
                return Err(Error::DimensionMismatch(format!(
                    "face of a {dim}-cell has dimension {}",
                    self.dims[f.base] + f.degeneracies.len()
                )));
            }
        }
        self.dims.push(dim);
        self.faces.push(faces);
        self.labels.push(label.into());
        Ok(self.dims.len() - 1)
    }

    pub fn num_cells(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim_of(&self, cell: usize) -> usize {
        self.dims[cell]
    }

    pub fn label(&self, cell: usize) -> &str {
        &self.labels[cell]
    }

    pub fn set_label(&mut self, cell: usize, label: impl Into<String>) {
        self.labels[cell] = label.into();
    }

    pub fn faces(&self, cell: usize) -> &[CellRef] {
        &self.faces[cell]
    }

    pub fn face(&self, cell: usize, k: usize, eps: u8) -> &CellRef {
        &self.faces[cell][face_slot(k, eps)]
    }

    /// Largest dimension carrying a cell, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.dims.iter().copied().max()
    }

    /// Number of non-degenerate cells in each dimension `0..=dim`.
    pub fn counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.dim().map_or(0, |d| d + 1)];
        for &d in &self.dims {
            out[d] += 1;
        }
        out
    }

    pub fn cells_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.dims.len()).filter(|&c| self.dims[c] == d).collect()
    }

    /// Cells sorted by dimension, ties broken by index.
    pub fn cells_by_dim(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.dims.len()).collect();
        order.sort_by_key(|&c| (self.dims[c], c));
        order
    }

    /// Every element of dimension `d`, degenerate ones included.
    pub fn all_refs(&self, d: usize) -> Vec<CellRef> {
        let mut out = Vec::new();
        for cell in 0..self.dims.len() {
            let e = self.dims[cell];
            if e > d {
                continue;
            }
            for degen in subsets(d, d - e) {
                out.push(Ref::new(cell, degen));
            }
        }
        out
    }

    /// Checks face references and the cubical identities: taking two faces
    /// in succession agrees with acting by the composite cube map.
    pub fn validate(&self) -> Result<()> {
        for cell in 0..self.num_cells() {
            let d = self.dims[cell];
            if self.faces[cell].len() != 2 * d {
                return Err(Error::invalid(format!("cell {cell} has the wrong number of faces")));
            }
            for f in &self.faces[cell] {
                if f.base >= self.num_cells()
                    || !is_valid_degeneracy_word(&f.degeneracies, d - 1)
                    || self.dims[f.base] + f.degeneracies.len() + 1 != d
                {
                    return Err(Error::invalid(format!("cell {cell} has a malformed face {f:?}")));
                }
            }
            if d < 2 {
                continue;
            }
            let x = Ref::cell(cell);
            for k in 1..=d {
                for eps in 0..2u8 {
                    let outer = CubeMap::face(d, k, eps)?;
                    let first = self.act(&x, &outer)?;
                    for k2 in 1..d {
                        for eps2 in 0..2u8 {
                            let inner = CubeMap::face(d - 1, k2, eps2)?;
                            let stepwise = self.act(&first, &inner)?;
                            let direct = self.act(&x, &outer.compose(&inner)?)?;
                            if stepwise != direct {
                                return Err(Error::invalid(format!(
                                    "cubical identity fails at cell {cell} ({k},{eps}) then ({k2},{eps2}): {stepwise:?} vs {direct:?}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The smallest subobject containing `cells`, with the old-to-new index map.
    pub fn subcomplex(&self, cells: &[usize]) -> (CubicalSet, Vec<Option<usize>>) {
        let mut keep = vec![false; self.num_cells()];
        let mut stack: Vec<usize> = cells.to_vec();
        while let Some(c) = stack.pop() {
            if keep[c] {
                continue;
            }
            keep[c] = true;
            stack.extend(self.faces[c].iter().map(|f| f.base));
        }
        let mut renumber = vec![None; self.num_cells()];
        let mut out = CubicalSet::new();
        for c in self.cells_by_dim() {
            if !keep[c] {
                continue;
            }
            let faces = self.faces[c]
                .iter()
                .map(|f| Ref::new(renumber[f.base].expect("faces precede cells"), f.degeneracies.clone()))
                .collect();
            renumber[c] = Some(out.add_cell(self.dims[c], faces, self.labels[c].clone()).expect("subcomplex"));
        }
        (out, renumber)
    }

    /// Inclusion of a subcomplex built by [`CubicalSet::subcomplex`].
    pub fn subcomplex_inclusion(self: &Arc<Self>, cells: &[usize]) -> CubicalMap {
        let (sub, renumber) = self.subcomplex(cells);
        let mut assignment = vec![Ref::cell(0); sub.num_cells()];
        for (old, new) in renumber.iter().enumerate() {
            if let Some(n) = new {
                assignment[*n] = Ref::cell(old);
            }
        }
        CubicalMap::from_parts_unchecked(Arc::new(sub), self.clone(), assignment)
    }
}

impl FaceOracle for CubicalSet {
    type Cell = usize;

    fn cell_dim(&self, cell: &usize) -> usize {
        self.dims[*cell]
    }

    fn cell_face(&self, cell: &usize, k: usize, eps: u8) -> Result<CellRef> {
        let d = self.dims[*cell];
        if k == 0 || k > d || eps > 1 {
            return Err(Error::OutOfRange(format!("face ({k},{eps}) of a {d}-cell")));
        }
        Ok(self.faces[*cell][face_slot(k, eps)].clone())
    }
}

pub(crate) fn is_valid_degeneracy_word(word: &[usize], dim: usize) -> bool {
    word.windows(2).all(|w| w[0] < w[1]) && word.iter().all(|&i| i >= 1 && i <= dim)
}

/// All `size`-element subsets of `1..=n`, in lexicographic order.
pub(crate) fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n - i + 1 < size - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= n {
        go(1, n, size, &mut Vec::new(), &mut out);
    }
    out
}

/// A natural transformation between finite cubical sets, recorded by the
/// image of every non-degenerate source cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalMap {
    source: Arc<CubicalSet>,
    target: Arc<CubicalSet>,
    assignment: Vec<CellRef>,
}

impl CubicalMap {
    /// Builds a map and checks that it commutes with every face operator.
    pub fn new(source: Arc<CubicalSet>, target: Arc<CubicalSet>, assignment: Vec<CellRef>) -> Result<Self> {
        let map = Self::from_parts_unchecked(source, target, assignment);
        map.validate()?;
        Ok(map)
    }

    pub(crate) fn from_parts_unchecked(
        source: Arc<CubicalSet>,
        target: Arc<CubicalSet>,
        assignment: Vec<CellRef>,
    ) -> Self {
        CubicalMap { source, target, assignment }
    }

    pub fn identity(x: Arc<CubicalSet>) -> Self {
        let assignment = (0..x.num_cells()).map(Ref::cell).collect();
        CubicalMap { source: x.clone(), target: x, assignment }
    }

    /// The unique map out of the empty cubical set.
    pub fn from_empty(target: Arc<CubicalSet>) -> Self {
        CubicalMap { source: Arc::new(CubicalSet::new()), target, assignment: Vec::new() }
    }

    pub fn source(&self) -> &Arc<CubicalSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CubicalSet> {
        &self.target
    }

    pub fn assignment(&self) -> &[CellRef] {
        &self.assignment
    }

    pub fn image_of(&self, cell: usize) -> &CellRef {
        &self.assignment[cell]
    }

    /// Image of an arbitrary source element.
    pub fn apply(&self, r: &CellRef) -> Result<CellRef> {
        let fx = &self.assignment[r.base];
        if r.degeneracies.is_empty() {
            return Ok(fx.clone());
        }
        let d = self.source.dim_of(r.base) + r.degeneracies.len();
        self.target.act(fx, &CubeMap::degeneracy(d, &r.degeneracies))
    }

    pub fn validate(&self) -> Result<()> {
        if self.assignment.len() != self.source.num_cells() {
            return Err(Error::invalid("assignment does not cover the source"));
        }
        for (cell, image) in self.assignment.iter().enumerate() {
            if image.base >= self.target.num_cells() {
                return Err(Error::invalid(format!("cell {cell} maps to a missing cell")));
            }
            let d = self.source.dim_of(cell);
            if self.target.ref_dim(image) != d {
                return Err(Error::DimensionMismatch(format!("cell {cell} maps across dimensions")));
            }
            for k in 1..=d {
                for eps in 0..2u8 {
                    let lhs = self.apply(self.source.face(cell, k, eps))?;
                    let rhs = self.target.face_of(image, k, eps)?;
                    if lhs != rhs {
                        return Err(Error::invalid(format!(
                            "map does not commute with face ({k},{eps}) at cell {cell}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &CubicalMap) -> Result<CubicalMap> {
        if self.target.as_ref() != g.source.as_ref() {
            return Err(Error::DimensionMismatch("composing maps with different middle objects".into()));
        }
        let assignment = self.assignment.iter().map(|r| g.apply(r)).collect::<Result<Vec<_>>>()?;
        Ok(CubicalMap { source: self.source.clone(), target: g.target.clone(), assignment })
    }

    /// Monomorphism: every non-degenerate cell goes to a distinct
    /// non-degenerate cell.
    pub fn is_mono(&self) -> bool {
        let mut seen = HashSet::new();
        self.assignment.iter().all(|r| !r.is_degenerate() && seen.insert(r.base))
    }

    /// Target cells hit non-degenerately.
    pub fn image_cells(&self) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.assignment.iter().filter(|r| !r.is_degenerate()).map(|r| r.base).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degeneracy_composition() {
        // y·π_{2} on □² then π_{1} on □³: forgets 1 then (old 2 → new 3)
        assert_eq!(compose_degeneracies(&[2], &[1], 3), vec![1, 3]);
        assert_eq!(compose_degeneracies(&[], &[2], 3), vec![2]);
        assert_eq!(compose_degeneracies(&[1], &[], 2), vec![1]);
    }

    #[test]
    fn subsets_enumerate() {
        assert_eq!(subsets(3, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(1, 2).is_empty());
    }

    #[test]
    fn add_cell_rejects_bad_faces() {
        let mut x = CubicalSet::new();
        let v = x.add_cell(0, vec![], "v").unwrap();
        assert!(x.add_cell(1, vec![Ref::cell(v)], "e").is_err());
        assert!(x.add_cell(1, vec![Ref::cell(v), Ref::cell(7)], "e").is_err());
        assert!(x.add_cell(2, vec![Ref::cell(v); 4], "s").is_err());
        let e = x.add_cell(1, vec![Ref::cell(v), Ref::cell(v)], "loop").unwrap();
        // a square with every face the degenerate edge on v
        let dv = Ref::new(v, vec![1]);
        x.add_cell(2, vec![Ref::cell(e), Ref::cell(e), dv.clone(), dv], "s").unwrap();
        x.validate().unwrap();
    }

    #[test]
    fn validate_catches_broken_identity() {
        let mut x = CubicalSet::new();
        let a = x.add_cell(0, vec![], "a").unwrap();
        let b = x.add_cell(0, vec![], "b").unwrap();
        let e = x.add_cell(1, vec![Ref::cell(a), Ref::cell(b)], "e").unwrap();
        let f = x.add_cell(1, vec![Ref::cell(a), Ref::cell(a)], "f").unwrap();
        // faces (1,0)=e and (2,0)=f would need e's 0-end = f's 0-end: fine;
        // (1,1)=e, (2,0)=f need e's 0-end (a) = f's 1-end (a) and so on; make it fail:
        x.add_cell(2, vec![Ref::cell(e), Ref::cell(e), Ref::cell(f), Ref::cell(f)], "bad").unwrap();
        assert!(x.validate().is_err());
    }
}
