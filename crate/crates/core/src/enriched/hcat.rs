//! Homotopy categories: `π₀` of the mapping spaces, read off a truncation.

use std::collections::HashMap;

use serde::Serialize;

use super::mapping::{truncated_words, TruncationOptions};
use super::presentation::{EnrichedPresentation, Word};
use crate::cubical::FaceOracle;
use crate::error::{Error, Result};

/// A finite ordinary category whose morphisms are classes of vertices of
/// mapping spaces under the relation generated by edges.
#[derive(Clone, Debug, Serialize)]
pub struct HomotopyCategory {
    pub objects: Vec<String>,
    pub word_bound: usize,
    /// `homs[x][y]`: a lightest representative of every class.
    pub homs: Vec<Vec<Vec<Word>>>,
    /// `homs_text[x][y]`: the same, as generator names.
    pub homs_text: Vec<Vec<Vec<String>>>,
    #[serde(skip)]
    classes: Vec<Vec<HashMap<Word, usize>>>,
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

/// Connected components of the 0-cells of a 1-skeleton truncation, as a
/// class index per vertex word.
fn components(c: &EnrichedPresentation, x: usize, y: usize, bound: usize) -> Result<HashMap<Word, usize>> {
    let opts = TruncationOptions { max_dim: Some(1), ..TruncationOptions::default() };
    let words = truncated_words(c, x, y, bound, &opts)?;
    let vertices: Vec<&Word> = words.iter().filter(|w| c.word_dim(w) == 0).collect();
    let index: HashMap<&Word, usize> = vertices.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    for w in words.iter().filter(|w| c.word_dim(w) == 1) {
        let a = index[&c.cell_face(w, 1, 0)?.base];
        let b = index[&c.cell_face(w, 1, 1)?.base];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    Ok(vertices.iter().enumerate().map(|(i, w)| ((*w).clone(), find(&mut parent, i))).collect())
}

/// The homotopy category from vertices of weight at most `L`. Components are
/// computed on the 1-skeleton at bound `2L + 2` and again at `2L + 3`; the
/// call fails unless the two agree on every vertex of weight at most `2L`
/// and every composite of representatives lands in a class that already
/// has a representative of weight at most `L`.
pub fn homotopy_category(c: &EnrichedPresentation, bound: usize) -> Result<HomotopyCategory> {
    let n = c.objects().len();
    let window = 2 * bound + 2;
    let mut classes = vec![vec![HashMap::new(); n]; n];
    let mut homs = vec![vec![Vec::new(); n]; n];
    for x in 0..n {
        for y in 0..n {
            let comp = components(c, x, y, window)?;
            let check = components(c, x, y, window + 1)?;
            // same partition on all vertices of weight ≤ 2L
            let mut forward: HashMap<usize, usize> = HashMap::new();
            let mut backward: HashMap<usize, usize> = HashMap::new();
            for (w, &k) in &comp {
                if c.word_weight(w) > 2 * bound {
                    continue;
                }
                let k2 = check[w];
                if *forward.entry(k).or_insert(k2) != k2 || *backward.entry(k2).or_insert(k) != k {
                    return Err(Error::NotStable(format!(
                        "components of Map({}, {}) change between bounds {window} and {}",
                        c.objects()[x],
                        c.objects()[y],
                        window + 1
                    )));
                }
            }
            // representatives: lightest member of weight ≤ L of each class
            let mut reps: HashMap<usize, Word> = HashMap::new();
            for (w, &k) in &comp {
                if c.word_weight(w) <= bound {
                    let better = reps.get(&k).is_none_or(|r| (c.word_weight(w), w) < (c.word_weight(r), r));
                    if better {
                        reps.insert(k, w.clone());
                    }
                }
            }
            let mut ordered: Vec<(usize, Word)> = reps.into_iter().collect();
            ordered.sort_by(|a, b| (c.word_weight(&a.1), &a.1).cmp(&(c.word_weight(&b.1), &b.1)));
            let class_index: HashMap<usize, usize> = ordered.iter().enumerate().map(|(i, (k, _))| (*k, i)).collect();
            for (w, k) in &comp {
                if c.word_weight(w) <= 2 * bound {
                    if let Some(&i) = class_index.get(k) {
                        classes[x][y].insert(w.clone(), i);
                    }
                }
            }
            homs[x][y] = ordered.into_iter().map(|(_, w)| w).collect();
        }
    }
    let homs_text = homs
        .iter()
        .map(|row| row.iter().map(|hs| hs.iter().map(|w| c.word_text(w)).collect()).collect())
        .collect();
    let h = HomotopyCategory { objects: c.objects().to_vec(), word_bound: bound, homs, homs_text, classes };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for i in 0..h.homs[x][y].len() {
                    for j in 0..h.homs[y][z].len() {
                        let mut w = h.homs[x][y][i].clone();
                        w.extend_from_slice(&h.homs[y][z][j]);
                        if h.class_of(x, z, &c.reduce(&w)).is_none() {
                            return Err(Error::NotStable(format!(
                                "composite {} has no representative of weight at most {bound}",
                                c.word_text(&w)
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(h)
}

impl HomotopyCategory {
    pub fn hom_size(&self, x: usize, y: usize) -> usize {
        self.homs[x][y].len()
    }

    /// Class of a (reduced) vertex word of weight at most `2L`.
    pub fn class_of(&self, x: usize, y: usize, w: &[usize]) -> Option<usize> {
        self.classes[x][y].get(w).copied()
    }

    pub fn identity(&self, x: usize) -> usize {
        self.class_of(x, x, &[]).expect("identity is in the window")
    }

    /// `j ∘ i` for `i: x → y`, `j: y → z`.
    pub fn compose(&self, c: &EnrichedPresentation, x: usize, y: usize, z: usize, i: usize, j: usize) -> usize {
        let mut w = self.homs[x][y][i].clone();
        w.extend_from_slice(&self.homs[y][z][j]);
        self.class_of(x, z, &c.reduce(&w)).expect("composites checked at construction")
    }

    /// Whether class `i: x → y` has a two-sided inverse.
    pub fn is_iso(&self, c: &EnrichedPresentation, x: usize, y: usize, i: usize) -> bool {
        (0..self.hom_size(y, x))
            .any(|j| self.compose(c, x, y, x, i, j) == self.identity(x) && self.compose(c, y, x, y, j, i) == self.identity(y))
    }

    /// Every hom-set has exactly one element.
    pub fn is_chaotic(&self) -> bool {
        self.homs.iter().all(|row| row.iter().all(|h| h.len() == 1))
    }

    pub fn hom_sizes(&self) -> Vec<Vec<usize>> {
        self.homs.iter().map(|row| row.iter().map(Vec::len).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriched::presentation::{build_e, build_h, build_p, interval_tilde, point};

    #[test]
    fn point_is_terminal() {
        let h = homotopy_category(&point(), 2).unwrap();
        assert_eq!(h.hom_sizes(), vec![vec![1]]);
    }

    #[test]
    fn h_inverts_on_one_side() {
        let c = build_h().unwrap();
        let hc = homotopy_category(&c, 2).unwrap();
        let (x, y) = (c.object("c").unwrap(), c.object("c'").unwrap());
        assert_eq!(hc.hom_sizes(), vec![vec![1, 1], vec![1, 2]]);
        // v ∘ u = id_c but u ∘ v ≠ id_c′
        assert_eq!(hc.compose(&c, x, y, x, 0, 0), hc.identity(x));
        assert_ne!(hc.compose(&c, y, x, y, 0, 0), hc.identity(y));
        assert!(!hc.is_iso(&c, x, y, 0));
    }

    #[test]
    fn e_and_tilde_are_chaotic() {
        assert!(homotopy_category(&build_e().unwrap(), 2).unwrap().is_chaotic());
        let t = homotopy_category(&interval_tilde().unwrap(), 2).unwrap();
        assert!(t.is_chaotic());
        assert_eq!(t.objects.len(), 2);
    }

    #[test]
    fn free_category_is_refused() {
        assert!(matches!(homotopy_category(&build_p().unwrap(), 2), Err(Error::NotStable(_))));
    }
}
