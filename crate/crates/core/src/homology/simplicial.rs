//! Finite simplicial sets, stored like cubical sets: non-degenerate
//! simplices with their faces as references `base · σ`, where the
//! degeneracy `σ: [d] → [e]` is recorded by its collapse positions
//! `{ j : σ(j) = σ(j+1) }` (0-based, strictly increasing).

use crate::cubical::{CellRef, CellStructure, Ref};
use crate::error::{Error, Result};

/// Values of the surjection `[d] → [d − |collapse|]` with the given collapse positions.
pub fn surjection_values(d: usize, collapse: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(d + 1);
    let mut value = 0;
    for i in 0..=d {
        if i > 0 && !collapse.contains(&(i - 1)) {
            value += 1;
        }
        out.push(value);
    }
    out
}

/// Collapse positions of a monotone surjection given by its values.
pub fn collapse_positions(values: &[usize]) -> Vec<usize> {
    values.windows(2).enumerate().filter(|(_, w)| w[0] == w[1]).map(|(j, _)| j).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialSet {
    dims: Vec<usize>,
    faces: Vec<Vec<CellRef>>,
    labels: Vec<String>,
}

impl SimplicialSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a non-degenerate simplex; `faces[i]` is `d_i`.
    pub fn add_cell(&mut self, dim: usize, faces: Vec<CellRef>, label: impl Into<String>) -> Result<usize> {
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(Error::invalid(format!("a {dim}-simplex needs {expected} faces, got {}", faces.len())));
        }
        for f in &faces {
            if f.base >= self.dims.len() {
                return Err(Error::invalid(format!("face refers to unknown simplex {}", f.base)));
            }
            let ok = f.degeneracies.windows(2).all(|w| w[0] < w[1]) && f.degeneracies.iter().all(|&j| j + 1 < dim);
            if !ok || self.dims[f.base] + f.degeneracies.len() + 1 != dim {
                return Err(Error::invalid(format!("malformed face {f:?} of a {dim}-simplex")));
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

    pub fn faces(&self, cell: usize) -> &[CellRef] {
        &self.faces[cell]
    }

    pub fn dim(&self) -> Option<usize> {
        self.dims.iter().copied().max()
    }

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

    pub fn ref_dim(&self, r: &CellRef) -> usize {
        self.dims[r.base] + r.degeneracies.len()
    }

    /// Every `d`-simplex, degenerate ones included.
    pub fn all_refs(&self, d: usize) -> Vec<CellRef> {
        let mut out = Vec::new();
        for cell in 0..self.dims.len() {
            let e = self.dims[cell];
            if e > d {
                continue;
            }
            for collapse in subsets0(d, d - e) {
                out.push(Ref::new(cell, collapse));
            }
        }
        out
    }

    /// `r · θ` for a monotone `θ: [k] → [dim r]` given by its values.
    pub fn act(&self, r: &CellRef, theta: &[usize]) -> Result<CellRef> {
        let d = self.ref_dim(r);
        if theta.is_empty() || theta.windows(2).any(|w| w[0] > w[1]) || theta.iter().any(|&v| v > d) {
            return Err(Error::invalid(format!("{theta:?} is not a monotone map into [{d}]")));
        }
        let sigma = surjection_values(d, &r.degeneracies);
        let h: Vec<usize> = theta.iter().map(|&i| sigma[i]).collect();
        let mut image = h.clone();
        image.dedup();
        let tau: Vec<usize> = h.iter().map(|v| image.binary_search(v).unwrap()).collect();
        let z = self.apply_injection(r.base, &image)?;
        let zsigma = surjection_values(self.ref_dim(&z), &z.degeneracies);
        let composite: Vec<usize> = tau.iter().map(|&i| zsigma[i]).collect();
        Ok(Ref::new(z.base, collapse_positions(&composite)))
    }

    fn apply_injection(&self, cell: usize, iota: &[usize]) -> Result<CellRef> {
        let e = self.dims[cell];
        if iota.len() == e + 1 {
            return Ok(Ref::cell(cell));
        }
        let missing = (0..=e).rev().find(|v| iota.binary_search(v).is_err()).expect("a missing vertex");
        let rest: Vec<usize> = iota.iter().map(|&v| if v > missing { v - 1 } else { v }).collect();
        let f = self.faces[cell][missing].clone();
        self.act(&f, &rest)
    }

    /// `d_i r`.
    pub fn face_of(&self, r: &CellRef, i: usize) -> Result<CellRef> {
        let d = self.ref_dim(r);
        if d == 0 || i > d {
            return Err(Error::OutOfRange(format!("face {i} of a {d}-simplex")));
        }
        let theta: Vec<usize> = (0..=d).filter(|&v| v != i).collect();
        self.act(r, &theta)
    }

    /// Checks `d_i d_j = d_{j−1} d_i` for `i < j` against the derived action.
    pub fn validate(&self) -> Result<()> {
        for cell in 0..self.num_cells() {
            let d = self.dims[cell];
            if d < 2 {
                continue;
            }
            let x = Ref::cell(cell);
            for j in 0..=d {
                let dj = self.face_of(&x, j)?;
                for i in 0..j {
                    let lhs = self.face_of(&dj, i)?;
                    let rhs = self.face_of(&self.face_of(&x, i)?, j - 1)?;
                    if lhs != rhs {
                        return Err(Error::invalid(format!(
                            "simplicial identity fails at simplex {cell}: d{i}d{j} = {lhs:?}, d{}d{i} = {rhs:?}",
                            j - 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// All `size`-element subsets of `0..n`, in lexicographic order.
pub(crate) fn subsets0(n: usize, size: usize) -> Vec<Vec<usize>> {
    crate::cubical::subsets(n, size).into_iter().map(|s| s.into_iter().map(|i| i - 1).collect()).collect()
}

impl CellStructure for SimplicialSet {
    fn cell_count(&self) -> usize {
        self.num_cells()
    }

    fn dimension_of(&self, cell: usize) -> usize {
        self.dim_of(cell)
    }

    fn face_keys(&self, cell: usize) -> Vec<(usize, Vec<usize>)> {
        self.faces(cell).iter().map(|f| (f.base, f.degeneracies.clone())).collect()
    }
}

/// `Δⁿ`: non-degenerate simplices are the non-empty subsets of `{0,…,n}`.
pub fn standard_simplex(n: usize) -> Result<SimplicialSet> {
    if n > crate::cubical::DIMENSION_GUARD {
        return Err(Error::guard(format!("standard_simplex({n})"), crate::cubical::DIMENSION_GUARD as u64));
    }
    let mut out = SimplicialSet::new();
    let mut index = std::collections::HashMap::new();
    for k in 0..=n {
        for s in subsets0(n + 1, k + 1) {
            let faces = if k == 0 {
                Vec::new()
            } else {
                (0..=k)
                    .map(|i| {
                        let mut t = s.clone();
                        t.remove(i);
                        Ref::cell(index[&t])
                    })
                    .collect()
            };
            let label: String = s.iter().map(|v| v.to_string()).collect();
            let id = out.add_cell(k, faces, label)?;
            index.insert(s, id);
        }
    }
    Ok(out)
}

/// `Δ¹/∂Δ¹`: one vertex (the base, cell 0) and one loop.
pub fn circle() -> SimplicialSet {
    let mut out = SimplicialSet::new();
    let v = out.add_cell(0, vec![], "*").unwrap();
    out.add_cell(1, vec![Ref::cell(v), Ref::cell(v)], "s").unwrap();
    out
}

/// `Δ¹ ∨ … ∨ Δ¹` (`k` copies) wedged at their 1-ends. Cell 0 is the base
/// vertex; the `i`-th interval (1-based) runs from `g_i` to the base.
pub fn wedge_of_intervals(k: usize) -> SimplicialSet {
    let mut out = SimplicialSet::new();
    let e = out.add_cell(0, vec![], "e").unwrap();
    for i in 1..=k {
        let g = out.add_cell(0, vec![], format!("g{i}")).unwrap();
        out.add_cell(1, vec![Ref::cell(e), Ref::cell(g)], format!("p{i}")).unwrap();
    }
    out
}

/// A single vertex.
pub fn point() -> SimplicialSet {
    let mut out = SimplicialSet::new();
    out.add_cell(0, vec![], "*").unwrap();
    out
}

/// Disjoint union; cells of `y` follow those of `x`.
pub fn simplicial_coproduct(x: &SimplicialSet, y: &SimplicialSet) -> SimplicialSet {
    let mut out = x.clone();
    let shift = x.num_cells();
    for c in 0..y.num_cells() {
        let faces = y.faces(c).iter().map(|f| Ref::new(f.base + shift, f.degeneracies.clone())).collect();
        out.add_cell(y.dim_of(c), faces, y.label(c).to_string()).expect("coproduct");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_round_trip() {
        assert_eq!(surjection_values(3, &[1]), vec![0, 1, 1, 2]);
        assert_eq!(collapse_positions(&[0, 1, 1, 2]), vec![1]);
        assert_eq!(surjection_values(2, &[0, 1]), vec![0, 0, 0]);
    }

    #[test]
    fn simplex_counts_and_identities() {
        let s = standard_simplex(3).unwrap();
        assert_eq!(s.counts(), vec![4, 6, 4, 1]);
        s.validate().unwrap();
    }

    #[test]
    fn degenerate_faces() {
        let s = standard_simplex(1).unwrap();
        let edge = s.cells_of_dim(1)[0];
        // s_0 of the edge is a 2-simplex whose d_0 and d_1 are the edge
        let x = Ref::new(edge, vec![0]);
        assert_eq!(s.face_of(&x, 0).unwrap(), Ref::cell(edge));
        assert_eq!(s.face_of(&x, 1).unwrap(), Ref::cell(edge));
        let v0 = s.faces(edge)[1].clone();
        assert_eq!(s.face_of(&x, 2).unwrap(), Ref::new(v0.base, vec![0]));
    }

    #[test]
    fn element_counts_are_monotone_maps() {
        // there are d + 2 monotone maps [d] → [1]
        let s = standard_simplex(1).unwrap();
        for d in 0..5 {
            assert_eq!(s.all_refs(d).len(), d + 2);
        }
    }

    #[test]
    fn small_examples_validate() {
        circle().validate().unwrap();
        wedge_of_intervals(2).validate().unwrap();
        assert_eq!(wedge_of_intervals(2).counts(), vec![3, 2]);
    }
}
