//! Isomorphism search between finite presheaves presented by their
//! non-degenerate cells.
//!
//! Cells are unlabeled, so an isomorphism is a dimension-preserving
//! bijection of non-degenerate cells carrying every face reference
//! `(base, degeneracy word)` to the corresponding reference. The search
//! refines cell colours by face/coface structure, then backtracks along an
//! order in which every cell is followed by its faces, so most choices are
//! forced.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use super::CubicalSet;

/// Minimal view of a presheaf needed for isomorphism search.
pub trait CellStructure {
    fn cell_count(&self) -> usize;
    fn dimension_of(&self, cell: usize) -> usize;
    /// Face references in a fixed positional order.
    fn face_keys(&self, cell: usize) -> Vec<(usize, Vec<usize>)>;
}

impl CellStructure for CubicalSet {
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

struct Side {
    faces: Vec<Vec<(usize, Vec<usize>)>>,
    cofaces: Vec<Vec<(usize, usize)>>,
    dims: Vec<usize>,
}

impl Side {
    fn of<S: CellStructure + ?Sized>(s: &S) -> Side {
        let n = s.cell_count();
        let faces: Vec<_> = (0..n).map(|c| s.face_keys(c)).collect();
        let mut cofaces = vec![Vec::new(); n];
        for (c, fs) in faces.iter().enumerate() {
            for (pos, (b, _)) in fs.iter().enumerate() {
                cofaces[*b].push((c, pos));
            }
        }
        Side { faces, cofaces, dims: (0..n).map(|c| s.dimension_of(c)).collect() }
    }
}

type Signature = (u32, Vec<(u32, Vec<usize>)>, Vec<(u32, usize)>);

fn refine(x: &Side, y: &Side) -> (Vec<u32>, Vec<u32>) {
    let mut table: HashMap<(usize, Vec<Vec<usize>>), u32> = HashMap::new();
    let mut initial = |s: &Side| -> Vec<u32> {
        (0..s.dims.len())
            .map(|c| {
                let key = (s.dims[c], s.faces[c].iter().map(|(_, d)| d.clone()).collect());
                let next = table.len() as u32;
                *table.entry(key).or_insert(next)
            })
            .collect()
    };
    let mut cx = initial(x);
    let mut cy = initial(y);
    let mut classes = table.len();
    for _ in 0..32 {
        let mut table: HashMap<Signature, u32> = HashMap::new();
        let mut step = |s: &Side, col: &[u32]| -> Vec<u32> {
            (0..s.dims.len())
                .map(|c| {
                    let faces = s.faces[c].iter().map(|(b, d)| (col[*b], d.clone())).collect();
                    let mut cof: Vec<(u32, usize)> = s.cofaces[c].iter().map(|&(z, p)| (col[z], p)).collect();
                    cof.sort_unstable();
                    let next = table.len() as u32;
                    *table.entry((col[c], faces, cof)).or_insert(next)
                })
                .collect()
        };
        let nx = step(x, &cx);
        let ny = step(y, &cy);
        let new_classes = table.len();
        cx = nx;
        cy = ny;
        if new_classes == classes {
            break;
        }
        classes = new_classes;
    }
    (cx, cy)
}

/// Search order: after each cell come its faces (which are then forced),
/// and the next free choice is the highest-dimensional coface of something
/// already placed.
fn search_order(x: &Side, colors: &[u32]) -> Vec<usize> {
    let n = x.dims.len();
    let mut freq: HashMap<u32, usize> = HashMap::new();
    for &c in colors {
        *freq.entry(c).or_default() += 1;
    }
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&c| (std::cmp::Reverse(x.dims[c]), freq[&colors[c]], c));
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut seq = 0usize;
    for s in starts {
        if seen[s] {
            continue;
        }
        let mut frontier: BinaryHeap<(usize, Reverse<usize>, usize)> = BinaryHeap::new();
        frontier.push((x.dims[s], Reverse(seq), s));
        while let Some((_, _, c)) = frontier.pop() {
            if seen[c] {
                continue;
            }
            let mut forced = vec![c];
            while let Some(f) = forced.pop() {
                if seen[f] {
                    continue;
                }
                seen[f] = true;
                order.push(f);
                for (b, _) in &x.faces[f] {
                    if !seen[*b] {
                        forced.push(*b);
                    }
                }
                for &(z, _) in &x.cofaces[f] {
                    if !seen[z] {
                        seq += 1;
                        frontier.push((x.dims[z], Reverse(seq), z));
                    }
                }
            }
        }
    }
    order
}

/// Finds a structure-preserving bijection `x → y` (as a vector indexed by
/// the cells of `x`), or `None` when the two are not isomorphic.
pub fn find_isomorphism<A, B>(x: &A, y: &B) -> Option<Vec<usize>>
where
    A: CellStructure + ?Sized,
    B: CellStructure + ?Sized,
{
    let sx = Side::of(x);
    let sy = Side::of(y);
    let n = sx.dims.len();
    if n != sy.dims.len() {
        return None;
    }
    let (cx, cy) = refine(&sx, &sy);
    let mut hist: HashMap<u32, i64> = HashMap::new();
    for &c in &cx {
        *hist.entry(c).or_default() += 1;
    }
    for &c in &cy {
        *hist.entry(c).or_default() -= 1;
    }
    if hist.values().any(|&v| v != 0) {
        return None;
    }
    let mut by_color: HashMap<u32, Vec<usize>> = HashMap::new();
    for (c, &col) in cy.iter().enumerate() {
        by_color.entry(col).or_default().push(c);
    }
    let order = search_order(&sx, &cx);
    let mut phi: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];

    let consistent = |phi: &[Option<usize>], xc: usize, yc: usize| -> bool {
        for (pos, (b, d)) in sx.faces[xc].iter().enumerate() {
            if let Some(fb) = phi[*b] {
                let (yb, yd) = &sy.faces[yc][pos];
                if *yb != fb || yd != d {
                    return false;
                }
            }
        }
        for &(z, pos) in &sx.cofaces[xc] {
            if let Some(fz) = phi[z] {
                let (yb, yd) = &sy.faces[fz][pos];
                if *yb != yc || *yd != sx.faces[z][pos].1 {
                    return false;
                }
            }
        }
        true
    };

    let candidates = |phi: &[Option<usize>], used: &[bool], xc: usize| -> Vec<usize> {
        let pool: Vec<usize> = if let Some(&(z, pos)) = sx.cofaces[xc].iter().find(|(z, _)| phi[*z].is_some()) {
            vec![sy.faces[phi[z].unwrap()][pos].0]
        } else if let Some((pos, (b, _))) =
            sx.faces[xc].iter().enumerate().find(|(_, (b, _))| phi[*b].is_some())
        {
            let fb = phi[*b].unwrap();
            sy.cofaces[fb].iter().filter(|&&(_, p)| p == pos).map(|&(z, _)| z).collect()
        } else {
            by_color.get(&cx[xc]).cloned().unwrap_or_default()
        };
        pool.into_iter()
            .filter(|&yc| !used[yc] && cy[yc] == cx[xc] && consistent(phi, xc, yc))
            .collect()
    };

    let mut stack: Vec<(Vec<usize>, usize)> = Vec::with_capacity(n);
    if n == 0 {
        return Some(Vec::new());
    }
    stack.push((candidates(&phi, &used, order[0]), 0));
    loop {
        let depth = stack.len() - 1;
        let xc = order[depth];
        if let Some(prev) = phi[xc].take() {
            used[prev] = false;
        }
        let frame = stack.last_mut().unwrap();
        if frame.1 >= frame.0.len() {
            stack.pop();
            if stack.is_empty() {
                return None;
            }
            continue;
        }
        let yc = frame.0[frame.1];
        frame.1 += 1;
        phi[xc] = Some(yc);
        used[yc] = true;
        if depth + 1 == n {
            return Some(phi.into_iter().map(|p| p.unwrap()).collect());
        }
        let next = candidates(&phi, &used, order[depth + 1]);
        stack.push((next, 0));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{coproduct, standard_cube, Ref};
    use std::sync::Arc;

    #[test]
    fn cube_is_isomorphic_to_itself_and_not_to_others() {
        let a = standard_cube(3).unwrap();
        let phi = find_isomorphism(&a, &a).unwrap();
        assert_eq!(phi.len(), a.num_cells());
        let b = standard_cube(2).unwrap();
        assert!(find_isomorphism(&a, &b).is_none());
    }

    #[test]
    fn orientation_matters() {
        // two edges between two points: parallel vs. a 2-cycle are iso as
        // graphs but not as cubical sets.
        let mut par = CubicalSet::new();
        let p = par.add_cell(0, vec![], "p").unwrap();
        let q = par.add_cell(0, vec![], "q").unwrap();
        par.add_cell(1, vec![Ref::cell(p), Ref::cell(q)], "e").unwrap();
        par.add_cell(1, vec![Ref::cell(p), Ref::cell(q)], "f").unwrap();
        let mut cyc = CubicalSet::new();
        let p = cyc.add_cell(0, vec![], "p").unwrap();
        let q = cyc.add_cell(0, vec![], "q").unwrap();
        cyc.add_cell(1, vec![Ref::cell(p), Ref::cell(q)], "e").unwrap();
        cyc.add_cell(1, vec![Ref::cell(q), Ref::cell(p)], "f").unwrap();
        assert!(find_isomorphism(&par, &cyc).is_none());
        assert!(find_isomorphism(&cyc, &cyc).is_some());
    }

    #[test]
    fn coproduct_order_does_not_matter() {
        let a = Arc::new(standard_cube(1).unwrap());
        let b = Arc::new(standard_cube(2).unwrap());
        let ab = coproduct(&a, &b).object;
        let ba = coproduct(&b, &a).object;
        let phi = find_isomorphism(ab.as_ref(), ba.as_ref()).unwrap();
        for (c, &d) in phi.iter().enumerate() {
            assert_eq!(ab.dim_of(c), ba.dim_of(d));
        }
    }
}
