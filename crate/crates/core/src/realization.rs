//! Realizing cubical sets as integer chain complexes from a cylinder on the
//! unit `ℤ[0]`, and checking that the realization sends the generating
//! (acyclic) cofibrations to (acyclic) cofibrations.
//!
//! The realization of `□ⁿ` is the `n`-fold tensor power of the cylinder;
//! its basis is the cells of `□ⁿ` (each coordinate an endpoint or free),
//! degenerate cells realize to zero, and a general `X` is the colimit over
//! its cells. With `∂e = a[0] + b[1]` the differential of an `n`-cell is
//! `Σₖ (−1)^{k−1} (a ∂_{k,0} + b ∂_{k,1})`, the Koszul sign of the `k`-th
//! tensor factor.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cubical::{boundary, open_box, CubicalMap, CubicalSet};
use crate::error::{Error, Result};
use crate::homology::{homology, smith_normal_form, BigMatrix, ChainComplex, ChainMap, HomologyReport, SparseMatrix};

/// A cylinder on the unit: a complex with two degree-0 basis vectors
/// (`inclusions`) and one degree-1 vector, and a collapse to `ℤ[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CylinderDatum {
    pub name: String,
    pub complex: ChainComplex,
    pub inclusions: [usize; 2],
    /// Degree-0 coefficients of the collapse map.
    pub collapse: Vec<i64>,
}

/// `[0], [1]` in degree 0, `e` in degree 1, `∂e = [1] − [0]`.
pub fn standard_cylinder() -> CylinderDatum {
    interval_like("standard", -1, 1)
}

/// The same shape with `∂e = [1] + [0]`.
pub fn broken_cylinder() -> CylinderDatum {
    interval_like("broken", 1, 1)
}

fn interval_like(name: &str, a: i64, b: i64) -> CylinderDatum {
    let d = SparseMatrix::from_dense(&[vec![a], vec![b]]);
    CylinderDatum {
        name: name.to_string(),
        complex: ChainComplex::new(vec![2, 1], vec![d]).expect("one differential"),
        inclusions: [0, 1],
        collapse: vec![1, 1],
    }
}

impl CylinderDatum {
    /// `(a, b)` with `∂e = a[0] + b[1]`.
    pub fn edge_boundary(&self) -> Result<(i64, i64)> {
        if self.complex.ranks() != [2, 1] || self.inclusions[0] == self.inclusions[1] || self.inclusions.iter().any(|&i| i > 1) {
            return Err(Error::invalid("a cylinder must have the cell shape of the interval"));
        }
        let d = self.complex.differential(1);
        Ok((d.get(self.inclusions[0], 0), d.get(self.inclusions[1], 0)))
    }

    /// The endpoint inclusion `ℤ[0] → C`.
    pub fn inclusion(&self, eps: u8) -> Result<ChainMap> {
        let m = SparseMatrix::from_triples(2, 1, [(self.inclusions[eps as usize], 0, 1)]);
        ChainMap::new(ChainComplex::unit(), self.complex.clone(), vec![m])
    }

    /// `ℤ ⊕ ℤ → C`.
    pub fn combined_inclusion(&self) -> Result<ChainMap> {
        let m = SparseMatrix::from_triples(2, 2, [(self.inclusions[0], 0, 1), (self.inclusions[1], 1, 1)]);
        let source = ChainComplex::new(vec![2], vec![])?;
        ChainMap::new(source, self.complex.clone(), vec![m])
    }

    /// `C → ℤ[0]`, not necessarily commuting with differentials.
    pub fn collapse_map(&self) -> Result<ChainMap> {
        let m = SparseMatrix::from_triples(1, 2, self.collapse.iter().enumerate().map(|(j, &v)| (0, j, v)));
        ChainMap::new(self.complex.clone(), ChainComplex::unit(), vec![m])
    }
}

/// Basis of each degree: the non-degenerate cells, in index order.
fn basis_positions(x: &CubicalSet) -> (Vec<usize>, Vec<usize>) {
    let top = x.dim().map_or(0, |d| d + 1);
    let mut ranks = vec![0; top];
    let pos = (0..x.num_cells())
        .map(|c| {
            let d = x.dim_of(c);
            ranks[d] += 1;
            ranks[d] - 1
        })
        .collect();
    (pos, ranks)
}

pub fn chain_realize(x: &CubicalSet, cyl: &CylinderDatum) -> Result<ChainComplex> {
    let (a, b) = cyl.edge_boundary()?;
    let (pos, ranks) = basis_positions(x);
    let mut triples: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); ranks.len()];
    for c in 0..x.num_cells() {
        let d = x.dim_of(c);
        for k in 1..=d {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            for (eps, coeff) in [(0u8, a), (1u8, b)] {
                let f = x.face(c, k, eps);
                if !f.is_degenerate() && coeff != 0 {
                    triples[d].push((pos[f.base], pos[c], sign * coeff));
                }
            }
        }
    }
    let diffs = (1..ranks.len())
        .map(|d| SparseMatrix::from_triples(ranks[d - 1], ranks[d], triples[d].iter().copied()))
        .collect();
    ChainComplex::new(ranks, diffs)
}

/// The realization of a cubical map: a cell goes to its image cell, or to
/// zero when the image is degenerate.
pub fn realize_map(f: &CubicalMap, cyl: &CylinderDatum) -> Result<ChainMap> {
    let source = chain_realize(f.source(), cyl)?;
    let target = chain_realize(f.target(), cyl)?;
    let (spos, _) = basis_positions(f.source());
    let (tpos, _) = basis_positions(f.target());
    let mut triples: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); source.len()];
    for (c, r) in f.assignment().iter().enumerate() {
        if !r.is_degenerate() {
            triples[f.source().dim_of(c)].push((tpos[r.base], spos[c], 1));
        }
    }
    let components = (0..source.len())
        .map(|d| SparseMatrix::from_triples(target.rank(d), source.rank(d), triples[d].iter().copied()))
        .collect();
    ChainMap::new(source, target, components)
}

/// Per degree, the `(p, i, j)` labels of a tensor basis.
pub type TensorBasis = Vec<Vec<(usize, usize, usize)>>;

/// `A ⊗ B` with `∂(a ⊗ b) = ∂a ⊗ b + (−1)^{|a|} a ⊗ ∂b`. The basis of
/// degree `n` lists pairs `(p, i, j)` (`i` in degree `p` of `A`, `j` in degree
/// `n − p` of `B`) in lexicographic order; it is returned alongside.
pub fn tensor_complexes(a: &ChainComplex, b: &ChainComplex) -> Result<(ChainComplex, TensorBasis)> {
    if a.is_empty() || b.is_empty() {
        return Ok((ChainComplex::new(vec![], vec![])?, Vec::new()));
    }
    let top = a.len() + b.len() - 1;
    let mut basis: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); top];
    for (n, slot) in basis.iter_mut().enumerate() {
        for p in 0..=n {
            for i in 0..a.rank(p) {
                for j in 0..b.rank(n - p) {
                    slot.push((p, i, j));
                }
            }
        }
    }
    let index = |n: usize, key: (usize, usize, usize)| basis[n].binary_search(&key).expect("basis element");
    let mut diffs = Vec::new();
    for n in 1..top {
        let mut triples = Vec::new();
        for (col, &(p, i, j)) in basis[n].iter().enumerate() {
            let q = n - p;
            if p > 0 {
                for &(r, v) in a.differential(p).column(i) {
                    triples.push((index(n - 1, (p - 1, r, j)), col, v));
                }
            }
            if q > 0 {
                let sign = if p % 2 == 0 { 1 } else { -1 };
                for &(r, v) in b.differential(q).column(j) {
                    triples.push((index(n - 1, (p, i, r)), col, sign * v));
                }
            }
        }
        diffs.push(SparseMatrix::from_triples(basis[n - 1].len(), basis[n].len(), triples));
    }
    let ranks = basis.iter().map(Vec::len).collect();
    Ok((ChainComplex::new(ranks, diffs)?, basis))
}

/// `Cone(f)_n = A_{n−1} ⊕ B_n`, `∂(a, b) = (−∂a, f a + ∂b)`. Fails when `f`
/// is not a chain map, since the result would not square to zero.
pub fn mapping_cone(f: &ChainMap) -> Result<ChainComplex> {
    let (a, b) = (&f.source, &f.target);
    let top = (a.len() + 1).max(b.len());
    let ranks: Vec<usize> = (0..top).map(|n| if n == 0 { b.rank(0) } else { a.rank(n - 1) + b.rank(n) }).collect();
    let mut diffs = Vec::new();
    for n in 1..top {
        let (src_a, tgt_a) = (a.rank(n - 1), if n >= 2 { a.rank(n - 2) } else { 0 });
        let mut triples = Vec::new();
        for j in 0..src_a {
            if n >= 2 {
                for &(r, v) in a.differential(n - 1).column(j) {
                    triples.push((r, j, -v));
                }
            }
            for &(r, v) in f.component(n - 1).column(j) {
                triples.push((tgt_a + r, j, v));
            }
        }
        for j in 0..b.rank(n) {
            for &(r, v) in b.differential(n).column(j) {
                triples.push((tgt_a + r, src_a + j, v));
            }
        }
        diffs.push(SparseMatrix::from_triples(ranks[n - 1], ranks[n], triples));
    }
    ChainComplex::new(ranks, diffs)
}

/// Degreewise injectivity and freeness of the cokernel, with the cokernel
/// complex when both hold.
#[derive(Clone, Debug)]
pub struct CokernelAnalysis {
    pub injective: bool,
    pub cokernel_free: bool,
    pub cokernel: Option<ChainComplex>,
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::guard("64-bit cokernel coefficients", i64::MAX as u64))
}

pub fn analyze_cokernel(f: &ChainMap) -> Result<CokernelAnalysis> {
    let top = f.target.len().max(f.source.len());
    let mut injective = true;
    let mut free = true;
    // per degree: projection onto the cokernel and a section of it
    let mut proj: Vec<BigMatrix> = Vec::with_capacity(top);
    let mut sect: Vec<BigMatrix> = Vec::with_capacity(top);
    for d in 0..top {
        let m = f.component(d);
        let cols = m.cols();
        let snf = smith_normal_form(&m.to_dense_big());
        let factors = snf.invariant_factors();
        injective &= factors.len() == cols;
        free &= factors.iter().all(|x| x.abs().is_one());
        let r = factors.len();
        proj.push(snf.u[r..].to_vec());
        sect.push(snf.u_inv.iter().map(|row| row[r..].to_vec()).collect());
    }
    if !(injective && free) {
        return Ok(CokernelAnalysis { injective, cokernel_free: free, cokernel: None });
    }
    let ranks: Vec<usize> = proj.iter().map(Vec::len).collect();
    let mut diffs = Vec::new();
    for d in 1..top {
        let dt = f.target.differential(d).to_dense_big();
        let step = crate::homology::mat_mul(&proj[d - 1], &crate::homology::mat_mul(&dt, &sect[d]));
        let mut triples = Vec::new();
        for (i, row) in step.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    triples.push((i, j, to_i64(v)?));
                }
            }
        }
        diffs.push(SparseMatrix::from_triples(ranks[d - 1], ranks[d], triples));
    }
    Ok(CokernelAnalysis { injective, cokernel_free: free, cokernel: Some(ChainComplex::new(ranks, diffs)?) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Cofibration,
    AcyclicCofibration,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCheck {
    pub name: String,
    pub kind: GeneratorKind,
    pub injective: bool,
    pub cokernel_free: bool,
    pub cokernel_ranks: Vec<usize>,
    pub cokernel_homology: Option<HomologyReport>,
    pub passed: bool,
}

/// The conditions on the cylinder itself.
#[derive(Clone, Debug, Serialize)]
pub struct CylinderChecks {
    /// `∅ → □⁰` realizes to a cofibration `0 → ℤ[0]`.
    pub unit_cofibrant: bool,
    /// `ℤ ⊕ ℤ → C` is injective with free cokernel.
    pub inclusions_cofibration: bool,
    /// Both endpoint inclusions are quasi-isomorphisms.
    pub inclusions_weak_equivalences: bool,
    /// The collapse commutes with the differentials.
    pub collapse_chain_map: bool,
    /// `collapse ∘ inclusion = id` for both inclusions.
    pub collapse_retracts: bool,
    /// The collapse is a quasi-isomorphism (only checked for chain maps).
    pub collapse_weak_equivalence: bool,
}

impl CylinderChecks {
    pub fn passed(&self) -> bool {
        self.unit_cofibrant
            && self.inclusions_cofibration
            && self.inclusions_weak_equivalences
            && self.collapse_chain_map
            && self.collapse_retracts
            && self.collapse_weak_equivalence
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuillenReport {
    pub cylinder: String,
    pub max_dim: usize,
    pub cylinder_checks: CylinderChecks,
    pub generators: Vec<GeneratorCheck>,
    pub passed: bool,
}

pub const QUILLEN_MAX_DIM: usize = 4;

fn cone_acyclic(f: &ChainMap) -> Result<bool> {
    match mapping_cone(f) {
        Ok(c) => Ok(homology(&c)?.is_acyclic()),
        Err(Error::Invalid(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn check_generator(name: String, kind: GeneratorKind, f: &CubicalMap, cyl: &CylinderDatum) -> Result<GeneratorCheck> {
    let realized = realize_map(f, cyl)?;
    let analysis = analyze_cokernel(&realized)?;
    let (ranks, h) = match &analysis.cokernel {
        Some(c) => (c.ranks().to_vec(), Some(homology(c)?)),
        None => (Vec::new(), None),
    };
    let mut passed = analysis.injective && analysis.cokernel_free;
    if kind == GeneratorKind::AcyclicCofibration {
        passed &= h.as_ref().is_some_and(HomologyReport::is_acyclic);
    }
    Ok(GeneratorCheck {
        name,
        kind,
        injective: analysis.injective,
        cokernel_free: analysis.cokernel_free,
        cokernel_ranks: ranks,
        cokernel_homology: h,
        passed,
    })
}

pub fn check_cylinder(cyl: &CylinderDatum) -> Result<CylinderChecks> {
    cyl.edge_boundary()?;
    let unit = check_generator("unit".into(), GeneratorKind::Cofibration, &boundary(0)?, cyl)?;
    let both = analyze_cokernel(&cyl.combined_inclusion()?)?;
    let inclusions_weak_equivalences = cone_acyclic(&cyl.inclusion(0)?)? && cone_acyclic(&cyl.inclusion(1)?)?;
    let collapse = cyl.collapse_map()?;
    let collapse_chain_map = collapse.commutes_with_differentials()?;
    let mut collapse_retracts = true;
    for eps in 0..2u8 {
        let composite = collapse.component(0).mul(&cyl.inclusion(eps)?.component(0))?;
        collapse_retracts &= composite == SparseMatrix::identity(1);
    }
    let collapse_weak_equivalence = collapse_chain_map && cone_acyclic(&collapse)?;
    Ok(CylinderChecks {
        unit_cofibrant: unit.passed,
        inclusions_cofibration: both.injective && both.cokernel_free,
        inclusions_weak_equivalences,
        collapse_chain_map,
        collapse_retracts,
        collapse_weak_equivalence,
    })
}

/// Realizes every `∂□ⁿ → □ⁿ` (`n ≤ max_dim`, including `∅ → □⁰`) and every
/// `⊓ⁿ_(k,ε) → □ⁿ` (`1 ≤ n ≤ max_dim`) and checks them, in parallel.
pub fn check_quillen(cyl: &CylinderDatum, max_dim: usize) -> Result<QuillenReport> {
    if max_dim > QUILLEN_MAX_DIM {
        return Err(Error::guard("quillen max_dim", QUILLEN_MAX_DIM as u64));
    }
    let cylinder_checks = check_cylinder(cyl)?;
    let mut jobs: Vec<(String, GeneratorKind, usize, usize, u8)> = Vec::new();
    for n in 0..=max_dim {
        jobs.push((format!("boundary({n})"), GeneratorKind::Cofibration, n, 0, 0));
    }
    for n in 1..=max_dim {
        for k in 1..=n {
            for eps in 0..2u8 {
                jobs.push((format!("open_box({n},{k},{eps})"), GeneratorKind::AcyclicCofibration, n, k, eps));
            }
        }
    }
    let generators = jobs
        .into_par_iter()
        .map(|(name, kind, n, k, eps)| {
            let f = match kind {
                GeneratorKind::Cofibration => boundary(n)?,
                GeneratorKind::AcyclicCofibration => open_box(n, k, eps)?,
            };
            check_generator(name, kind, &f, cyl)
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = cylinder_checks.passed() && generators.iter().all(|g| g.passed);
    Ok(QuillenReport { cylinder: cyl.name.clone(), max_dim, cylinder_checks, generators, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::standard_cube;

    #[test]
    fn standard_cylinder_is_the_interval() {
        let cyl = standard_cylinder();
        let h = homology(&cyl.complex).unwrap();
        assert!(h.is_point());
        let r = chain_realize(&standard_cube(1).unwrap(), &cyl).unwrap();
        assert_eq!(r, cyl.complex);
        let collapse = cyl.collapse_map().unwrap();
        for eps in 0..2 {
            let c = collapse.component(0).mul(&cyl.inclusion(eps).unwrap().component(0)).unwrap();
            assert_eq!(c, SparseMatrix::identity(1));
        }
        assert!(homology(&mapping_cone(&cyl.inclusion(0).unwrap()).unwrap()).unwrap().is_acyclic());
    }

    #[test]
    fn boundary_of_the_square() {
        let g = check_generator("b2".into(), GeneratorKind::Cofibration, &boundary(2).unwrap(), &standard_cylinder()).unwrap();
        assert!(g.injective && g.cokernel_free);
        assert_eq!(g.cokernel_ranks, vec![0, 0, 1]);
        let h = g.cokernel_homology.unwrap();
        assert_eq!(h.betti_numbers(), vec![0, 0, 1]);
    }

    #[test]
    fn open_box_of_the_square_is_acyclic() {
        let g = check_generator("box".into(), GeneratorKind::AcyclicCofibration, &open_box(2, 1, 0).unwrap(), &standard_cylinder())
            .unwrap();
        assert!(g.passed);
        assert!(g.cokernel_homology.unwrap().is_acyclic());
    }

    #[test]
    fn unit_is_cofibrant() {
        let checks = check_cylinder(&standard_cylinder()).unwrap();
        assert!(checks.unit_cofibrant);
        assert!(checks.passed());
    }

    #[test]
    fn cokernel_detects_non_split_maps() {
        // ℤ --2--> ℤ is injective with cokernel ℤ/2
        let m = ChainMap::new(ChainComplex::unit(), ChainComplex::unit(), vec![SparseMatrix::from_dense(&[vec![2]])]).unwrap();
        let a = analyze_cokernel(&m).unwrap();
        assert!(a.injective && !a.cokernel_free);
    }

    #[test]
    fn tensor_of_intervals() {
        let i = standard_cylinder().complex;
        let (t, basis) = tensor_complexes(&i, &i).unwrap();
        assert_eq!(t.ranks(), &[4, 4, 1]);
        assert_eq!(basis[2], vec![(1, 0, 0)]);
        assert!(homology(&t).unwrap().is_point());
    }
}
