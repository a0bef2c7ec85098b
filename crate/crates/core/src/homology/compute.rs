//! Integral homology of a chain complex.
//!
//! Each boundary matrix is first reduced by sparse elimination on unit
//! pivots in machine integers, which handles nearly everything arising from
//! cell complexes. Whatever is left (pivots of absolute value > 1, or a
//! block where arithmetic would overflow) goes to the exact Smith normal
//! form.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use rayon::prelude::*;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::chain::{ChainComplex, SparseMatrix};
use super::snf::smith_normal_form;
use crate::error::Result;

/// Homology in one degree: `ℤ^betti ⊕ ⊕ ℤ/t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologyReport {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyReport {
    pub fn betti(&self, d: usize) -> usize {
        self.degrees.get(d).map_or(0, |h| h.betti)
    }

    pub fn torsion(&self, d: usize) -> &[u64] {
        self.degrees.get(d).map_or(&[], |h| h.torsion.as_slice())
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().map(|h| h.betti).collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.iter().all(|h| h.torsion.is_empty())
    }

    /// Zero in every degree.
    pub fn is_acyclic(&self) -> bool {
        self.degrees.iter().all(|h| h.betti == 0 && h.torsion.is_empty())
    }

    /// `ℤ` in degree 0 and nothing else.
    pub fn is_point(&self) -> bool {
        self.degrees.iter().all(|h| h.torsion.is_empty() && h.betti == usize::from(h.degree == 0))
            && self.betti(0) == 1
    }

    /// Compact text form such as `H0=Z H2=Z`.
    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .degrees
            .iter()
            .filter(|h| h.betti > 0 || !h.torsion.is_empty())
            .map(|h| {
                let mut terms = Vec::new();
                match h.betti {
                    0 => {}
                    1 => terms.push("Z".to_string()),
                    b => terms.push(format!("Z^{b}")),
                }
                terms.extend(h.torsion.iter().map(|t| format!("Z/{t}")));
                format!("H{}={}", h.degree, terms.join("+"))
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ")
        }
    }
}

/// Rank and the invariant factors greater than one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

/// Rank and nontrivial invariant factors of an integer matrix.
pub fn eliminate(m: &SparseMatrix) -> Elimination {
    // row-major working copy
    let mut rows: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); m.rows()];
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); m.cols()];
    for (r, c, v) in m.triples() {
        rows[r].insert(c, v);
        col_rows[c].insert(r);
    }
    let mut alive_row = vec![true; m.rows()];
    let mut alive_col = vec![true; m.cols()];
    let mut rank = 0usize;
    let mut overflow = false;
    loop {
        let mut progress = false;
        let mut order: Vec<usize> = (0..m.cols()).filter(|&c| alive_col[c] && !col_rows[c].is_empty()).collect();
        order.sort_by_key(|&c| (col_rows[c].len(), c));
        for c in order {
            if !alive_col[c] || col_rows[c].is_empty() {
                continue;
            }
            let pivot_row = col_rows[c]
                .iter()
                .copied()
                .filter(|&r| rows[r].get(&c).is_some_and(|v| v.abs() == 1))
                .min_by_key(|&r| (rows[r].len(), r));
            let Some(p) = pivot_row else { continue };
            let pv = rows[p][&c];
            let pivot: Vec<(usize, i64)> = rows[p].iter().map(|(&k, &v)| (k, v)).collect();
            let others: Vec<usize> = col_rows[c].iter().copied().filter(|&r| r != p).collect();
            let mut failed = false;
            for r in others {
                // row_r −= (a_rc / pv) · row_p, with pv = ±1; computed in full
                // before anything is written so an overflow leaves it intact
                let factor = rows[r][&c] * pv;
                let mut updates = Vec::with_capacity(pivot.len());
                for &(k, v) in &pivot {
                    let old = rows[r].get(&k).copied().unwrap_or(0);
                    match factor.checked_mul(v).and_then(|delta| old.checked_sub(delta)) {
                        Some(x) => updates.push((k, x)),
                        None => {
                            failed = true;
                            break;
                        }
                    }
                }
                if failed {
                    break;
                }
                for (k, x) in updates {
                    if x == 0 {
                        rows[r].remove(&k);
                        col_rows[k].remove(&r);
                    } else {
                        rows[r].insert(k, x);
                        col_rows[k].insert(r);
                    }
                }
            }
            if failed {
                overflow = true;
                break;
            }
            for &(k, _) in &pivot {
                col_rows[k].remove(&p);
            }
            rows[p].clear();
            alive_row[p] = false;
            alive_col[c] = false;
            rank += 1;
            progress = true;
        }
        if overflow || !progress {
            break;
        }
    }
    let keep_rows: Vec<usize> = (0..m.rows()).filter(|&r| alive_row[r] && !rows[r].is_empty()).collect();
    let keep_cols: Vec<usize> = (0..m.cols()).filter(|&c| alive_col[c] && !col_rows[c].is_empty()).collect();
    let mut torsion = Vec::new();
    if !keep_rows.is_empty() {
        let mut col_pos = vec![usize::MAX; m.cols()];
        for (j, &c) in keep_cols.iter().enumerate() {
            col_pos[c] = j;
        }
        let mut dense = vec![vec![BigInt::zero(); keep_cols.len()]; keep_rows.len()];
        for (i, &r) in keep_rows.iter().enumerate() {
            for (&c, &v) in &rows[r] {
                dense[i][col_pos[c]] = BigInt::from(v);
            }
        }
        let snf = smith_normal_form(&dense);
        for f in snf.invariant_factors() {
            rank += 1;
            if !f.is_one() {
                torsion.push(f.abs());
            }
        }
    }
    Elimination { rank, torsion }
}

/// `H_d = ker ∂_d / im ∂_{d+1}` in every degree carrying generators.
pub fn homology(c: &ChainComplex) -> Result<HomologyReport> {
    c.check_square_zero()?;
    let top = c.len();
    let elims: Vec<Elimination> = (0..=top)
        .into_par_iter()
        .map(|d| c.differential_ref(d).map_or(Elimination { rank: 0, torsion: vec![] }, eliminate))
        .collect();
    let degrees = (0..top)
        .map(|d| {
            let kernel = c.rank(d) - elims[d].rank;
            let next = &elims[d + 1];
            let mut torsion: Vec<u64> =
                next.torsion.iter().map(|t| t.to_u64().expect("torsion coefficient fits in u64")).collect();
            torsion.sort_unstable();
            DegreeHomology { degree: d, betti: kernel - next.rank, torsion }
        })
        .collect();
    Ok(HomologyReport { degrees })
}
