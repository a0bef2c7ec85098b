//! Quotients of finite cubical sets by generated identifications, and the
//! pushouts built from them.

use std::collections::VecDeque;
use std::sync::Arc;

use super::{coproduct, CellRef, CubicalMap, CubicalSet, FaceOracle, Ref};
use crate::cube::{CubeMap, Slot};
use crate::error::{Error, Result};

const QUOTIENT_STEP_LIMIT: u64 = 10_000_000;

/// A cubical set with a growing set of identifications between elements.
///
/// Identified non-degenerate cells are merged; a non-degenerate cell
/// identified with a degenerate element is re-pointed at that element, so
/// the result again stores only non-degenerate cells.
#[derive(Clone, Debug)]
pub struct Quotient {
    base: CubicalSet,
    subst: Vec<Option<CellRef>>,
    steps: u64,
}

impl FaceOracle for Quotient {
    type Cell = usize;

    fn cell_dim(&self, cell: &usize) -> usize {
        self.base.dim_of(*cell)
    }

    fn cell_face(&self, cell: &usize, k: usize, eps: u8) -> Result<CellRef> {
        let raw = self.base.cell_face(cell, k, eps)?;
        self.resolve(&raw)
    }
}

fn section(d: usize, degeneracies: &[usize]) -> CubeMap {
    let mut next = 0;
    let slots = (1..=d)
        .map(|i| {
            if degeneracies.contains(&i) {
                Slot::Const(0)
            } else {
                next += 1;
                Slot::Var(next)
            }
        })
        .collect();
    CubeMap::from_slots_unchecked(d - degeneracies.len(), slots)
}

impl Quotient {
    pub fn new(base: CubicalSet) -> Self {
        let n = base.num_cells();
        Quotient { base, subst: vec![None; n], steps: 0 }
    }

    /// Rewrites an element until its base cell survives.
    pub fn resolve(&self, r: &CellRef) -> Result<CellRef> {
        let mut current = r.clone();
        while let Some(target) = &self.subst[current.base] {
            let target = self.resolve(target)?;
            if current.degeneracies.is_empty() {
                current = target;
            } else {
                let d = self.base.dim_of(current.base) + current.degeneracies.len();
                current = self.act(&target, &CubeMap::degeneracy(d, &current.degeneracies))?;
            }
        }
        Ok(current)
    }

    /// Identifies two elements of equal dimension, together with everything
    /// the identification forces.
    pub fn identify(&mut self, a: CellRef, b: CellRef) -> Result<()> {
        let mut queue = VecDeque::from([(a, b)]);
        while let Some((a, b)) = queue.pop_front() {
            self.steps += 1;
            if self.steps > QUOTIENT_STEP_LIMIT {
                return Err(Error::guard("quotient identification steps", QUOTIENT_STEP_LIMIT));
            }
            let a = self.resolve(&a)?;
            let b = self.resolve(&b)?;
            if a == b {
                continue;
            }
            let (da, db) = (self.ref_dim(&a), self.ref_dim(&b));
            if da != db {
                return Err(Error::DimensionMismatch(format!(
                    "identifying a {da}-element with a {db}-element"
                )));
            }
            match (a.is_degenerate(), b.is_degenerate()) {
                (false, false) => {
                    let (keep, drop) = if a.base < b.base { (a.base, b.base) } else { (b.base, a.base) };
                    self.subst[drop] = Some(Ref::cell(keep));
                    for k in 1..=da {
                        for eps in 0..2u8 {
                            queue.push_back((self.base.face(drop, k, eps).clone(), self.base.face(keep, k, eps).clone()));
                        }
                    }
                }
                (false, true) | (true, false) => {
                    let (x, r) = if a.is_degenerate() { (b.base, a) } else { (a.base, b) };
                    let mut forced = Vec::with_capacity(2 * da);
                    for k in 1..=da {
                        for eps in 0..2u8 {
                            forced.push((self.base.face(x, k, eps).clone(), self.face_of(&r, k, eps)?));
                        }
                    }
                    self.subst[x] = Some(r);
                    queue.extend(forced);
                }
                (true, true) => {
                    if a.degeneracies == b.degeneracies {
                        queue.push_back((Ref::cell(a.base), Ref::cell(b.base)));
                    } else {
                        let sa = section(da, &a.degeneracies);
                        let sb = section(db, &b.degeneracies);
                        queue.push_back((Ref::cell(a.base), self.act(&b, &sa)?));
                        queue.push_back((Ref::cell(b.base), self.act(&a, &sb)?));
                        queue.push_back((a, b));
                    }
                }
            }
        }
        Ok(())
    }

    /// The quotient object and the image of every original cell. Surviving
    /// cells keep their relative order and labels.
    pub fn finish(self) -> Result<(CubicalSet, Vec<CellRef>, Vec<usize>)> {
        let n = self.base.num_cells();
        let mut renumber = vec![usize::MAX; n];
        let mut survivors = Vec::new();
        for c in self.base.cells_by_dim() {
            if self.subst[c].is_none() {
                renumber[c] = survivors.len();
                survivors.push(c);
            }
        }
        let mut out = CubicalSet::new();
        for &c in &survivors {
            let d = self.base.dim_of(c);
            let mut faces = Vec::with_capacity(2 * d);
            for k in 1..=d {
                for eps in 0..2u8 {
                    let f = self.cell_face(&c, k, eps)?;
                    faces.push(Ref::new(renumber[f.base], f.degeneracies));
                }
            }
            out.add_cell(d, faces, self.base.label(c).to_string())?;
        }
        let images = (0..n)
            .map(|c| self.resolve(&Ref::cell(c)).map(|r| Ref::new(renumber[r.base], r.degeneracies)))
            .collect::<Result<Vec<_>>>()?;
        Ok((out, images, survivors))
    }
}

/// A pushout `X ⊔_A Y` with its legs.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: Arc<CubicalSet>,
    pub left: CubicalMap,
    pub right: CubicalMap,
    left_cells: usize,
    survivors: Vec<usize>,
}

impl Pushout {
    /// The map out of the pushout induced by maps out of both legs that
    /// agree on the shared source.
    pub fn induced(&self, from_left: &CubicalMap, from_right: &CubicalMap) -> Result<CubicalMap> {
        if from_left.source().as_ref() != self.left.source().as_ref()
            || from_right.source().as_ref() != self.right.source().as_ref()
        {
            return Err(Error::DimensionMismatch("induced map sources do not match the legs".into()));
        }
        let assignment = self
            .survivors
            .iter()
            .map(|&c| {
                if c < self.left_cells {
                    from_left.image_of(c).clone()
                } else {
                    from_right.image_of(c - self.left_cells).clone()
                }
            })
            .collect();
        CubicalMap::new(self.object.clone(), from_left.target().clone(), assignment)
    }
}

/// The pushout of `f: A → X` and `g: A → Y`.
pub fn pushout(f: &CubicalMap, g: &CubicalMap) -> Result<Pushout> {
    if f.source().as_ref() != g.source().as_ref() {
        return Err(Error::DimensionMismatch("pushout legs need a common source".into()));
    }
    let sum = coproduct(f.target(), g.target());
    let mut q = Quotient::new((*sum.object).clone());
    for a in f.source().cells_by_dim() {
        let fa = sum.left.apply(f.image_of(a))?;
        let ga = sum.right.apply(g.image_of(a))?;
        q.identify(fa, ga)?;
    }
    let (object, images, survivors) = q.finish()?;
    let object = Arc::new(object);
    let nx = f.target().num_cells();
    let left = CubicalMap::from_parts_unchecked(f.target().clone(), object.clone(), images[..nx].to_vec());
    let right = CubicalMap::from_parts_unchecked(g.target().clone(), object.clone(), images[nx..].to_vec());
    Ok(Pushout { object, left, right, left_cells: nx, survivors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{point_pair_inclusion, standard_cube};

    #[test]
    fn pushout_of_identities() {
        let x = Arc::new(standard_cube(2).unwrap());
        let id = CubicalMap::identity(x.clone());
        let p = pushout(&id, &id).unwrap();
        assert_eq!(p.object.counts(), x.counts());
        p.left.validate().unwrap();
        p.right.validate().unwrap();
    }

    #[test]
    fn gluing_interval_ends_gives_a_loop() {
        let i = point_pair_inclusion().unwrap();
        let point = Arc::new(standard_cube(0).unwrap());
        let collapse = CubicalMap::new(i.source().clone(), point, vec![Ref::cell(0), Ref::cell(0)]).unwrap();
        let p = pushout(&i, &collapse).unwrap();
        assert_eq!(p.object.counts(), vec![1, 1]);
        p.object.validate().unwrap();
        p.left.validate().unwrap();
        p.right.validate().unwrap();
    }

    #[test]
    fn collapsing_an_edge_makes_the_square_degenerate_on_one_side() {
        // □² with its edge x₂ = 0 collapsed to a point: that face becomes degenerate.
        let sq = Arc::new(standard_cube(2).unwrap());
        let edge_cell = sq.cells_of_dim(1).into_iter().find(|&c| sq.label(c) == "*0").unwrap();
        let edge = sq.subcomplex_inclusion(&[edge_cell]);
        edge.validate().unwrap();
        let point = Arc::new(standard_cube(0).unwrap());
        let to_point = CubicalMap::new(edge.source().clone(), point, vec![Ref::new(0, vec![]); 2].into_iter().chain(std::iter::once(Ref::new(0, vec![1]))).collect()).unwrap();
        let p = pushout(&edge, &to_point).unwrap();
        p.object.validate().unwrap();
        assert_eq!(p.object.counts(), vec![3, 3, 1]);
        let top = p.object.cells_of_dim(2)[0];
        assert!(p.object.face(top, 2, 0).is_degenerate());
    }

    #[test]
    fn induced_map_out_of_pushout() {
        let i = point_pair_inclusion().unwrap();
        let p = pushout(&i, &i).unwrap();
        assert_eq!(p.object.counts(), vec![2, 2]);
        let id1 = CubicalMap::identity(i.target().clone());
        let fold = p.induced(&id1, &id1).unwrap();
        assert_eq!(fold.target().counts(), vec![2, 1]);
    }
}
