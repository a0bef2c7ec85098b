//! Extending a morphism to a map out of `E` by searching for homotopy
//! inverses inside truncated mapping spaces.

use std::collections::HashMap;

use serde::Serialize;

use super::hcat::homotopy_category;
use super::mapping::{truncated_words, TruncationOptions};
use super::presentation::{build_e, EnrichedPresentation, PresentationMorphism, Word, WordRef};
use crate::cubical::{FaceOracle, Ref};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStatus {
    Found,
    /// Nothing within the truncation. Not a proof that no inverse exists.
    Inconclusive,
}

/// A one-sided inverse with the 1-cell from the composite to the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InverseWitness {
    pub inverse: String,
    pub homotopy: String,
    pub degenerate: bool,
    #[serde(skip)]
    pub inverse_word: Word,
    #[serde(skip)]
    pub homotopy_cell: WordRef,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub edge: String,
    pub source: String,
    pub target: String,
    pub word_bound: usize,
    /// `None` when the homotopy category could not be read off the truncation.
    pub iso_in_homotopy_category: Option<bool>,
    pub left: Option<InverseWitness>,
    pub right: Option<InverseWitness>,
    pub status: SearchStatus,
    /// The assembled map `E → C`, when both sides were found.
    #[serde(skip)]
    pub morphism: Option<PresentationMorphism>,
}

/// 1-cells of `Map(x, x)` indexed by their `(1,0)` face, when the `(1,1)`
/// face is the identity.
fn homotopies_to_identity(c: &EnrichedPresentation, x: usize, bound: usize) -> Result<HashMap<Word, Word>> {
    let opts = TruncationOptions { max_dim: Some(1), ..TruncationOptions::default() };
    let mut out = HashMap::new();
    for w in truncated_words(c, x, x, bound, &opts)? {
        if c.word_dim(&w) != 1 {
            continue;
        }
        let (from, to) = (c.cell_face(&w, 1, 0)?, c.cell_face(&w, 1, 1)?);
        if to.base.is_empty() && to.degeneracies.is_empty() {
            out.entry(from.base).or_insert(w);
        }
    }
    Ok(out)
}

/// First `g: y → x` (by weight, then word) such that `[prefix, g, suffix]`
/// is connected to the identity by a single 1-cell.
fn search(
    c: &EnrichedPresentation,
    f: &[usize],
    around: usize,
    from: usize,
    to: usize,
    bound: usize,
    left: bool,
) -> Result<Option<InverseWitness>> {
    let opts = TruncationOptions { max_dim: Some(0), ..TruncationOptions::default() };
    let mut candidates = truncated_words(c, from, to, bound, &opts)?;
    candidates.sort_by(|a, b| (c.word_weight(a), a).cmp(&(c.word_weight(b), b)));
    let cells = homotopies_to_identity(c, around, bound)?;
    for g in candidates {
        let mut w = Vec::new();
        if left {
            w.extend_from_slice(f);
            w.extend_from_slice(&g);
        } else {
            w.extend_from_slice(&g);
            w.extend_from_slice(f);
        }
        let composite = c.reduce(&w);
        let found = if composite.is_empty() {
            Some((Ref::new(Vec::new(), vec![1]), true))
        } else {
            cells.get(&composite).map(|h| (Ref::cell(h.clone()), false))
        };
        if let Some((cell, degenerate)) = found {
            let homotopy = if degenerate { "[]·s1".to_string() } else { c.word_text(&cell.base) };
            return Ok(Some(InverseWitness {
                inverse: c.word_text(&g),
                homotopy,
                degenerate,
                inverse_word: g,
                homotopy_cell: cell,
            }));
        }
    }
    Ok(None)
}

/// Looks for `g` with `g ∘ f ≃ id` and `g′` with `f ∘ g′ ≃ id`, each via a
/// single explicit 1-cell, among words of weight at most `bound`. When both
/// exist they assemble into a validated map `E → C`.
pub fn extend_inverse(c: &EnrichedPresentation, f: &str, bound: usize) -> Result<ExtensionReport> {
    let fw = c.parse_word(f)?;
    let fw = c.reduce(&fw);
    if fw.is_empty() || c.word_dim(&fw) != 0 {
        return Err(Error::invalid(format!("{f} is not a non-identity vertex word")));
    }
    let x = c.generator(fw[0]).source;
    let y = c.generator(*fw.last().unwrap()).target;
    let iso = homotopy_category(c, bound)
        .ok()
        .and_then(|h| h.class_of(x, y, &fw).map(|i| h.is_iso(c, x, y, i)));
    let left = search(c, &fw, x, y, x, bound, true)?;
    let right = search(c, &fw, y, y, x, bound, false)?;
    let morphism = match (&left, &right) {
        (Some(l), Some(r)) => {
            let e = build_e()?;
            let mut images = vec![None; e.generators().len()];
            for (name, img) in [
                ("f", Ref::cell(fw.clone())),
                ("g", Ref::cell(l.inverse_word.clone())),
                ("H1", l.homotopy_cell.clone()),
                ("g'", Ref::cell(r.inverse_word.clone())),
                ("H2", r.homotopy_cell.clone()),
            ] {
                images[e.generator_id(name)?] = Some(img);
            }
            let mut objects = vec![0; 2];
            objects[e.object("c")?] = x;
            objects[e.object("c'")?] = y;
            let m = PresentationMorphism { objects, generators: images.into_iter().map(Option::unwrap).collect() };
            m.validate(&e, c)?;
            Some(m)
        }
        _ => None,
    };
    let status = if morphism.is_some() { SearchStatus::Found } else { SearchStatus::Inconclusive };
    Ok(ExtensionReport {
        edge: c.word_text(&fw),
        source: c.objects()[x].clone(),
        target: c.objects()[y].clone(),
        word_bound: bound,
        iso_in_homotopy_category: iso,
        left,
        right,
        status,
        morphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriched::presentation::{build_h, interval_tilde};

    #[test]
    fn tilde_extends_with_degenerate_homotopies() {
        let r = extend_inverse(&interval_tilde().unwrap(), "f", 2).unwrap();
        assert_eq!(r.status, SearchStatus::Found);
        assert_eq!(r.iso_in_homotopy_category, Some(true));
        assert!(r.left.as_ref().unwrap().degenerate && r.right.as_ref().unwrap().degenerate);
        assert_eq!(r.left.unwrap().inverse, "[f']");
    }

    #[test]
    fn e_extends_to_itself() {
        let e = build_e().unwrap();
        let r = extend_inverse(&e, "f", 2).unwrap();
        assert_eq!(r.status, SearchStatus::Found);
        assert_eq!(r.morphism.unwrap(), PresentationMorphism::identity(&e));
    }

    #[test]
    fn h_has_only_a_left_inverse() {
        let h = build_h().unwrap();
        for bound in 1..=4 {
            let r = extend_inverse(&h, "u", bound).unwrap();
            let left = r.left.unwrap();
            assert_eq!((left.inverse.as_str(), left.homotopy.as_str()), ("[v]", "[H]"));
            assert!(r.right.is_none());
            assert_eq!(r.status, SearchStatus::Inconclusive);
        }
    }
}
