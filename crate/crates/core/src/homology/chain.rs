//! Free integer chain complexes with sparse boundary matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A column-major sparse integer matrix; each column is sorted by row and
/// holds no zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Builds from `(row, col, value)` triples; repeated positions add up.
    pub fn from_triples(rows: usize, cols: usize, triples: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in triples {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *acc[c].entry(r).or_insert(0) += v;
        }
        let columns = acc.into_iter().map(|m| m.into_iter().filter(|&(_, v)| v != 0).collect()).collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let triples = rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, v)));
        Self::from_triples(r, c, triples)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triples(n, n, (0..n).map(|i| (i, i, 1)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, i64)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.columns[c].binary_search_by_key(&r, |e| e.0).map_or(0, |i| self.columns[c][i].1)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                out[r][c] = v;
            }
        }
        out
    }

    pub fn to_dense_big(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::from(0); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                out[r][c] = BigInt::from(v);
            }
        }
        out
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triples(self.cols, self.rows, self.triples().map(|(r, c, v)| (c, r, v)))
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "multiplying {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut triples = Vec::new();
        for (c, col) in other.columns.iter().enumerate() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(k, b) in col {
                for &(r, a) in &self.columns[k] {
                    let e = acc.entry(r).or_insert(0);
                    *e = e
                        .checked_add(a.checked_mul(b).ok_or_else(|| Error::invalid("matrix product overflow"))?)
                        .ok_or_else(|| Error::invalid("matrix product overflow"))?;
                }
            }
            triples.extend(acc.into_iter().map(|(r, v)| (r, c, v)));
        }
        Ok(Self::from_triples(self.rows, other.cols, triples))
    }

    pub fn neg(&self) -> SparseMatrix {
        Self::from_triples(self.rows, self.cols, self.triples().map(|(r, c, v)| (r, c, -v)))
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("subtracting matrices of different shapes".into()));
        }
        Ok(Self::from_triples(self.rows, self.cols, self.triples().chain(other.neg().triples())))
    }

    /// Rows and columns restricted to the given index lists, in that order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut row_pos = vec![usize::MAX; self.rows];
        for (i, &r) in rows.iter().enumerate() {
            row_pos[r] = i;
        }
        let triples = cols.iter().enumerate().flat_map(|(j, &c)| {
            let row_pos = &row_pos;
            self.columns[c].iter().filter(move |(r, _)| row_pos[*r] != usize::MAX).map(move |&(r, v)| (row_pos[r], j, v))
        });
        Self::from_triples(rows.len(), cols.len(), triples.collect::<Vec<_>>())
    }
}

/// A bounded, non-negatively graded complex of finitely generated free
/// abelian groups. `differential(d)` maps degree `d` to degree `d − 1`;
/// `differential(0)` is the zero map to the zero group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    differentials: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// `differentials[d − 1]` is the boundary out of degree `d ≥ 1`.
    pub fn new(ranks: Vec<usize>, differentials: Vec<SparseMatrix>) -> Result<Self> {
        let mut ranks = ranks;
        while ranks.last() == Some(&0) {
            ranks.pop();
        }
        let top = ranks.len();
        let mut all = vec![SparseMatrix::zero(0, ranks.first().copied().unwrap_or(0))];
        for d in 1..top {
            let m = differentials.get(d - 1).cloned().unwrap_or_else(|| SparseMatrix::zero(ranks[d - 1], ranks[d]));
            if m.rows() != ranks[d - 1] || m.cols() != ranks[d] {
                return Err(Error::DimensionMismatch(format!(
                    "differential out of degree {d} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    ranks[d - 1],
                    ranks[d]
                )));
            }
            all.push(m);
        }
        if differentials.iter().skip(top.saturating_sub(1)).any(|m| !m.is_zero()) {
            return Err(Error::invalid("nonzero differential beyond the top degree"));
        }
        let c = ChainComplex { ranks, differentials: all };
        c.check_square_zero()?;
        Ok(c)
    }

    /// The complex `ℤ` concentrated in degree 0.
    pub fn unit() -> Self {
        ChainComplex { ranks: vec![1], differentials: vec![SparseMatrix::zero(0, 1)] }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, d: usize) -> usize {
        self.ranks.get(d).copied().unwrap_or(0)
    }

    /// Number of degrees carrying generators (the top degree plus one).
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn differential(&self, d: usize) -> SparseMatrix {
        if d < self.differentials.len() {
            self.differentials[d].clone()
        } else if d == 0 {
            SparseMatrix::zero(0, 0)
        } else {
            SparseMatrix::zero(self.rank(d - 1), self.rank(d))
        }
    }

    pub(crate) fn differential_ref(&self, d: usize) -> Option<&SparseMatrix> {
        self.differentials.get(d)
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for d in 2..self.differentials.len() {
            let dd = self.differentials[d - 1].mul(&self.differentials[d])?;
            if !dd.is_zero() {
                return Err(Error::invalid(format!("boundary squared is nonzero out of degree {d}")));
            }
        }
        Ok(())
    }
}

/// A degreewise map of chain complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    /// `components[d]`: rank(target, d) × rank(source, d).
    pub components: Vec<SparseMatrix>,
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, components: Vec<SparseMatrix>) -> Result<Self> {
        let top = source.len().max(target.len());
        let mut all = Vec::with_capacity(top);
        for d in 0..top {
            let m = components.get(d).cloned().unwrap_or_else(|| SparseMatrix::zero(target.rank(d), source.rank(d)));
            if m.rows() != target.rank(d) || m.cols() != source.rank(d) {
                return Err(Error::DimensionMismatch(format!("chain map component in degree {d} has the wrong shape")));
            }
            all.push(m);
        }
        Ok(ChainMap { source, target, components: all })
    }

    pub fn component(&self, d: usize) -> SparseMatrix {
        self.components
            .get(d)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(self.target.rank(d), self.source.rank(d)))
    }

    /// Whether `∂ f = f ∂` in every degree.
    pub fn commutes_with_differentials(&self) -> Result<bool> {
        for d in 1..self.components.len() {
            let lhs = self.target.differential(d).mul(&self.component(d))?;
            let rhs = self.component(d - 1).mul(&self.source.differential(d))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
