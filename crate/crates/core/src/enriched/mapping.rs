//! Word-length truncations of mapping spaces.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::presentation::{EnrichedPresentation, Word};
use crate::cubical::{CubicalMap, CubicalSet, FaceOracle, Ref};
use crate::error::{Error, Result};

/// Longest word the enumeration will follow.
pub const MAX_LETTERS: usize = 64;
/// Most words a single truncation may contain.
pub const WORD_LIMIT: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationOptions {
    /// Keep only cells of dimension at most this.
    pub max_dim: Option<usize>,
    pub max_letters: usize,
    pub word_limit: u64,
}

impl Default for TruncationOptions {
    fn default() -> Self {
        TruncationOptions { max_dim: None, max_letters: MAX_LETTERS, word_limit: WORD_LIMIT }
    }
}

/// The subobject of `Map(x, y)` generated by reduced words of weight at
/// most `word_bound` (faces of such words are included whatever their
/// weight, so the truncation is a cubical set).
#[derive(Clone, Debug, Serialize)]
pub struct MappingSpaceTruncation {
    pub source: usize,
    pub target: usize,
    pub word_bound: usize,
    #[serde(skip)]
    pub space: Arc<CubicalSet>,
    /// The word behind every cell.
    #[serde(skip)]
    pub words: Vec<Word>,
    /// Dimensions whose cell count does not change from `L` to `L + 1`.
    pub stable_dims: Vec<usize>,
    pub counts: Vec<usize>,
    pub next_counts: Vec<usize>,
}

impl MappingSpaceTruncation {
    pub fn cell_of(&self, w: &[usize]) -> Option<usize> {
        self.words.iter().position(|v| v == w)
    }

    /// The inclusion into a truncation of the same space at a larger bound,
    /// built by looking every word up.
    pub fn inclusion_into(&self, larger: &MappingSpaceTruncation) -> Result<CubicalMap> {
        let index: HashMap<&Word, usize> = larger.words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let assignment = self
            .words
            .iter()
            .map(|w| index.get(w).map(|&i| Ref::cell(i)).ok_or_else(|| Error::invalid("truncations are not nested")))
            .collect::<Result<Vec<_>>>()?;
        CubicalMap::new(self.space.clone(), larger.space.clone(), assignment)
    }
}

/// Reduced paths `x → y` of weight at most `bound`, closed under faces,
/// sorted by dimension and then by word.
pub fn truncated_words(
    c: &EnrichedPresentation,
    x: usize,
    y: usize,
    bound: usize,
    opts: &TruncationOptions,
) -> Result<Vec<Word>> {
    if x >= c.objects().len() || y >= c.objects().len() {
        return Err(Error::NotFound("mapping space endpoints".into()));
    }
    let mut found: BTreeSet<(usize, Word)> = BTreeSet::new();
    let mut visited = 0u64;
    // depth-first over (word, current object, weight, dim)
    let mut stack: Vec<(Word, usize, usize, usize)> = vec![(Vec::new(), x, 0, 0)];
    while let Some((w, at, weight, dim)) = stack.pop() {
        visited += 1;
        if visited > opts.word_limit {
            return Err(Error::guard("mapping-space words", opts.word_limit));
        }
        if at == y {
            found.insert((dim, w.clone()));
        }
        if w.len() >= opts.max_letters {
            if (0..c.generators().len()).any(|g| {
                let gen = c.generator(g);
                gen.source == at && weight + gen.weight <= bound
            }) {
                return Err(Error::guard("letters per word", opts.max_letters as u64));
            }
            continue;
        }
        for (g, gen) in c.generators().iter().enumerate().rev() {
            if gen.source != at || weight + gen.weight > bound {
                continue;
            }
            if opts.max_dim.is_some_and(|m| dim + gen.dim > m) {
                continue;
            }
            if let Some(&last) = w.last() {
                if c.reduce(&[last, g]).len() < 2 {
                    continue;
                }
            }
            let mut next = w.clone();
            next.push(g);
            stack.push((next, gen.target, weight + gen.weight, dim + gen.dim));
        }
    }
    // close under faces
    let mut queue: Vec<Word> = found.iter().map(|(_, w)| w.clone()).collect();
    while let Some(w) = queue.pop() {
        let d = c.word_dim(&w);
        for k in 1..=d {
            for eps in 0..2u8 {
                let f = c.cell_face(&w, k, eps)?;
                let key = (c.word_dim(&f.base), f.base);
                if !found.contains(&key) {
                    queue.push(key.1.clone());
                    found.insert(key);
                }
            }
        }
    }
    Ok(found.into_iter().map(|(_, w)| w).collect())
}

/// The cubical set on the given face-closed, dimension-sorted words.
pub fn space_of_words(c: &EnrichedPresentation, words: &[Word]) -> Result<CubicalSet> {
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut out = CubicalSet::new();
    for w in words {
        let d = c.word_dim(w);
        let mut faces = Vec::with_capacity(2 * d);
        for k in 1..=d {
            for eps in 0..2u8 {
                let f = c.cell_face(w, k, eps)?;
                let base = *index.get(&f.base).ok_or_else(|| Error::invalid("word list is not face-closed"))?;
                faces.push(Ref::new(base, f.degeneracies));
            }
        }
        out.add_cell(d, faces, c.word_text(w))?;
    }
    Ok(out)
}

fn counts_of(c: &EnrichedPresentation, words: &[Word]) -> Vec<usize> {
    let mut out = Vec::new();
    for w in words {
        let d = c.word_dim(w);
        if out.len() <= d {
            out.resize(d + 1, 0);
        }
        out[d] += 1;
    }
    out
}

pub fn mapping_space_with(
    c: &EnrichedPresentation,
    x: usize,
    y: usize,
    bound: usize,
    opts: &TruncationOptions,
) -> Result<MappingSpaceTruncation> {
    let words = truncated_words(c, x, y, bound, opts)?;
    let next = truncated_words(c, x, y, bound + 1, opts)?;
    let counts = counts_of(c, &words);
    let next_counts = counts_of(c, &next);
    let top = counts.len().max(next_counts.len());
    let stable_dims = (0..top)
        .filter(|&d| counts.get(d).copied().unwrap_or(0) == next_counts.get(d).copied().unwrap_or(0))
        .collect();
    let space = Arc::new(space_of_words(c, &words)?);
    Ok(MappingSpaceTruncation { source: x, target: y, word_bound: bound, space, words, stable_dims, counts, next_counts })
}

/// `Map(x, y)` truncated at word bound `L`.
pub fn mapping_space(c: &EnrichedPresentation, x: usize, y: usize, bound: usize) -> Result<MappingSpaceTruncation> {
    mapping_space_with(c, x, y, bound, &TruncationOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriched::presentation::{build_h, build_p, point};

    #[test]
    fn point_mapping_space() {
        let p = point();
        for l in 0..3 {
            let m = mapping_space(&p, 0, 0, l).unwrap();
            assert_eq!(m.space.counts(), vec![1]);
        }
    }

    #[test]
    fn paths_in_p() {
        let p = build_p().unwrap();
        let (c, c1) = (p.object("c").unwrap(), p.object("c'").unwrap());
        let m = mapping_space(&p, c, c, 4).unwrap();
        let names: Vec<String> = m.words.iter().map(|w| p.word_text(w)).collect();
        assert_eq!(names, vec!["[]", "[u,v]", "[u,v,u,v]"]);
        let m = mapping_space(&p, c, c1, 3).unwrap();
        let names: Vec<String> = m.words.iter().map(|w| p.word_text(w)).collect();
        assert_eq!(names, vec!["[u]", "[u,v,u]"]);
    }

    #[test]
    fn homotopy_cell_in_h() {
        let h = build_h().unwrap();
        let c = h.object("c").unwrap();
        let m = mapping_space(&h, c, c, 2).unwrap();
        m.space.validate().unwrap();
        let cell = m.cell_of(&h.parse_word("H").unwrap()).unwrap();
        assert_eq!(m.space.dim_of(cell), 1);
        assert_eq!(m.space.label(m.space.face(cell, 1, 0).base), "[u,v]");
        assert_eq!(m.space.label(m.space.face(cell, 1, 1).base), "[]");
        let bigger = mapping_space(&h, c, c, 3).unwrap();
        assert!(m.inclusion_into(&bigger).unwrap().is_mono());
    }
}
