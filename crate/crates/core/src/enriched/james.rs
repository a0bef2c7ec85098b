//! The word-length truncation `J_L(X)` of the James construction on a based
//! simplicial set: the free monoid on `X` with the base point as unit.
//!
//! A `d`-simplex is a word of non-base `d`-simplices of `X`; faces act
//! letterwise and drop letters that land on the base point. A word is
//! degenerate exactly when one degeneracy `s_j` divides every letter, so the
//! non-degenerate words are those whose letters' collapse sets have empty
//! intersection.

use std::collections::{BTreeSet, HashMap};

use crate::cubical::{CellRef, CubicalSet, Ref};
use crate::error::{Error, Result};
use crate::homology::{collapse_positions, surjection_values, triangulate, SimplicialSet};

/// Most candidate words `james` will look at.
pub const JAMES_LIMIT: u64 = 20_000_000;

fn letter_label(x: &SimplicialSet, r: &CellRef) -> String {
    if r.degeneracies.is_empty() {
        x.label(r.base).to_string()
    } else {
        let s: Vec<String> = r.degeneracies.iter().map(|j| j.to_string()).collect();
        format!("s{}{}", s.join(""), x.label(r.base))
    }
}

fn common_collapse(word: &[CellRef]) -> Vec<usize> {
    let mut it = word.iter();
    let Some(first) = it.next() else { return Vec::new() };
    let mut common: BTreeSet<usize> = first.degeneracies.iter().copied().collect();
    for r in it {
        let other: BTreeSet<usize> = r.degeneracies.iter().copied().collect();
        common = common.intersection(&other).copied().collect();
    }
    common.into_iter().collect()
}

/// Writes a word of `d`-simplices as `w′ · σ_J` with `w′` non-degenerate.
fn normalize(word: Vec<CellRef>, d: usize) -> (Vec<CellRef>, Vec<usize>) {
    let common = common_collapse(&word);
    if common.is_empty() {
        return (word, common);
    }
    let outer = surjection_values(d, &common);
    let e = d - common.len();
    // first preimage of each vertex of [e]
    let mut section = vec![usize::MAX; e + 1];
    for (i, &v) in outer.iter().enumerate() {
        if section[v] == usize::MAX {
            section[v] = i;
        }
    }
    let reduced = word
        .into_iter()
        .map(|r| {
            let sigma = surjection_values(d, &r.degeneracies);
            let tau: Vec<usize> = section.iter().map(|&i| sigma[i]).collect();
            Ref::new(r.base, collapse_positions(&tau))
        })
        .collect();
    (reduced, common)
}

/// `J_L(X)` for `X` based at the 0-simplex `base`. The empty word is cell 0.
pub fn james(x: &SimplicialSet, base: usize, bound: usize) -> Result<SimplicialSet> {
    if base >= x.num_cells() || x.dim_of(base) != 0 {
        return Err(Error::invalid(format!("base {base} is not a vertex")));
    }
    let top = x.dim().unwrap_or(0) * bound;
    let mut out = SimplicialSet::new();
    let mut index: HashMap<Vec<CellRef>, usize> = HashMap::new();
    let unit = out.add_cell(0, Vec::new(), "()")?;
    index.insert(Vec::new(), unit);
    let mut visited = 0u64;
    for d in 0..=top {
        let letters: Vec<CellRef> = x.all_refs(d).into_iter().filter(|r| r.base != base).collect();
        if letters.is_empty() {
            continue;
        }
        let mut word: Vec<usize> = Vec::new();
        // odometer over words of length 1..=bound in lexicographic order
        loop {
            if word.len() < bound {
                word.push(0);
            } else {
                while let Some(last) = word.last_mut() {
                    if *last + 1 < letters.len() {
                        *last += 1;
                        break;
                    }
                    word.pop();
                }
                if word.is_empty() {
                    break;
                }
            }
            visited += 1;
            if visited > JAMES_LIMIT {
                return Err(Error::guard("James words", JAMES_LIMIT));
            }
            let w: Vec<CellRef> = word.iter().map(|&i| letters[i].clone()).collect();
            if !common_collapse(&w).is_empty() {
                continue;
            }
            let faces = if d == 0 {
                Vec::new()
            } else {
                (0..=d)
                    .map(|i| {
                        let mut face = Vec::with_capacity(w.len());
                        for r in &w {
                            let f = x.face_of(r, i)?;
                            if f.base != base {
                                face.push(f);
                            }
                        }
                        let (nondeg, collapse) = normalize(face, d - 1);
                        let id = *index.get(&nondeg).expect("faces precede cofaces");
                        Ok(Ref::new(id, collapse))
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            let label: Vec<String> = w.iter().map(|r| letter_label(x, r)).collect();
            let id = out.add_cell(d, faces, label.join("*"))?;
            index.insert(w, id);
        }
    }
    Ok(out)
}

/// `J_L` of the triangulation of a based cubical set.
pub fn james_cubical(x: &CubicalSet, base: usize, bound: usize) -> Result<SimplicialSet> {
    if base >= x.num_cells() || x.dim_of(base) != 0 {
        return Err(Error::invalid(format!("base {base} is not a vertex")));
    }
    // vertices of the triangulation come first, in cell order
    let t = triangulate(x)?;
    let vertex = x.cells_of_dim(0).iter().position(|&c| c == base).expect("base is a vertex");
    james(&t, vertex, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{circle, homology, point, simplicial_chains, standard_simplex, wedge_of_intervals};

    #[test]
    fn james_of_a_point_is_a_point() {
        for l in 0..4 {
            assert_eq!(james(&point(), 0, l).unwrap().counts(), vec![1]);
        }
    }

    #[test]
    fn small_truncations_validate() {
        let j = james(&wedge_of_intervals(2), 0, 3).unwrap();
        j.validate().unwrap();
        // J_1 is X itself
        assert_eq!(james(&wedge_of_intervals(2), 0, 1).unwrap().counts(), vec![3, 2]);
        james(&circle(), 0, 3).unwrap().validate().unwrap();
    }

    #[test]
    fn circle_word_counts() {
        // s and ss in dimension 1, the two shuffles of s₀s and s₁s in dimension 2
        let j = james(&circle(), 0, 2).unwrap();
        assert_eq!(j.counts(), vec![1, 2, 2]);
    }

    #[test]
    fn interval_james_is_contractible_low() {
        let x = standard_simplex(1).unwrap();
        let j = james(&x, 0, 3).unwrap();
        let h = homology(&simplicial_chains(&j)).unwrap();
        assert!(h.is_point());
    }

    #[test]
    fn cubical_input_is_triangulated() {
        let sq = crate::cubical::standard_cube(1).unwrap();
        let j = james_cubical(&sq, 0, 2).unwrap();
        assert_eq!(j.counts(), james(&standard_simplex(1).unwrap(), 0, 2).unwrap().counts());
    }
}
