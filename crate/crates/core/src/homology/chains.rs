//! Normalized chains of cubical and simplicial sets.

use super::chain::{ChainComplex, SparseMatrix};
use super::simplicial::SimplicialSet;
use crate::cubical::CubicalSet;

/// Position of every cell within the basis of its dimension.
fn positions(dims: impl Iterator<Item = usize>, top: usize) -> (Vec<usize>, Vec<usize>) {
    let mut ranks = vec![0; top];
    let pos = dims
        .map(|d| {
            ranks[d] += 1;
            ranks[d] - 1
        })
        .collect();
    (pos, ranks)
}

/// Basis in degree `d`: the non-degenerate `d`-cells in index order.
/// `∂x = Σₖ (−1)ᵏ (∂_{k,1}x − ∂_{k,0}x)`, degenerate faces dropped.
pub fn cubical_chains(x: &CubicalSet) -> ChainComplex {
    let top = x.dim().map_or(0, |d| d + 1);
    let (pos, ranks) = positions((0..x.num_cells()).map(|c| x.dim_of(c)), top);
    let mut triples: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); top];
    for c in 0..x.num_cells() {
        let d = x.dim_of(c);
        for k in 1..=d {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            for (eps, s) in [(1u8, sign), (0u8, -sign)] {
                let f = x.face(c, k, eps);
                if !f.is_degenerate() {
                    triples[d].push((pos[f.base], pos[c], s));
                }
            }
        }
    }
    build(ranks, triples)
}

/// `∂x = Σᵢ (−1)ⁱ dᵢx`, degenerate faces dropped.
pub fn simplicial_chains(s: &SimplicialSet) -> ChainComplex {
    let top = s.dim().map_or(0, |d| d + 1);
    let (pos, ranks) = positions((0..s.num_cells()).map(|c| s.dim_of(c)), top);
    let mut triples: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); top];
    for c in 0..s.num_cells() {
        let d = s.dim_of(c);
        for (i, f) in s.faces(c).iter().enumerate() {
            if !f.is_degenerate() {
                triples[d].push((pos[f.base], pos[c], if i % 2 == 0 { 1 } else { -1 }));
            }
        }
    }
    build(ranks, triples)
}

fn build(ranks: Vec<usize>, triples: Vec<Vec<(usize, usize, i64)>>) -> ChainComplex {
    let diffs = (1..ranks.len())
        .map(|d| SparseMatrix::from_triples(ranks[d - 1], ranks[d], triples[d].iter().copied()))
        .collect();
    ChainComplex::new(ranks, diffs).expect("normalized chains square to zero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{boundary, standard_cube};
    use crate::homology::{circle, homology, standard_simplex};

    #[test]
    fn cubes_are_points() {
        for n in 0..=4 {
            let h = homology(&cubical_chains(&standard_cube(n).unwrap())).unwrap();
            assert!(h.is_point(), "□{n}: {}", h.summary());
        }
    }

    #[test]
    fn square_boundary_is_a_circle() {
        let b = boundary(2).unwrap();
        let h = homology(&cubical_chains(b.source())).unwrap();
        assert_eq!(h.betti_numbers(), vec![1, 1]);
    }

    #[test]
    fn simplices_and_circle() {
        for n in 0..=4 {
            assert!(homology(&simplicial_chains(&standard_simplex(n).unwrap())).unwrap().is_point());
        }
        assert_eq!(homology(&simplicial_chains(&circle())).unwrap().betti_numbers(), vec![1, 1]);
    }
}
