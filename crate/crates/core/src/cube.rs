//! The cube category: objects are the cubes `□ⁿ`, morphisms are composites
//! of face inclusions and coordinate projections.
//!
//! A morphism `□ⁿ → □ᵐ` is stored in normal form as one slot per output
//! coordinate. A slot either holds a constant endpoint or copies one of the
//! input coordinates; copied coordinates appear at most once and in strictly
//! increasing order. Composition is substitution, so every composite of
//! generators lands on exactly one normal form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the number of morphisms `enumerate_hom` will produce.
pub const HOM_ENUMERATION_LIMIT: u64 = 1_000_000;

/// One output coordinate of a cube map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slot {
    /// The constant endpoint `0` or `1`.
    Const(u8),
    /// Copy of the input coordinate with this 1-based index.
    Var(usize),
}

/// A morphism `□^source_dim → □^target_dim` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CubeMap {
    source_dim: usize,
    slots: Vec<Slot>,
}

impl CubeMap {
    /// Builds a map from raw slots, checking the normal-form invariants.
    pub fn new(source_dim: usize, slots: Vec<Slot>) -> Result<Self> {
        let mut last = 0usize;
        for slot in &slots {
            match *slot {
                Slot::Const(e) if e > 1 => {
                    return Err(Error::OutOfRange(format!("endpoint {e} is not 0 or 1")))
                }
                Slot::Const(_) => {}
                Slot::Var(i) => {
                    if i == 0 || i > source_dim {
                        return Err(Error::OutOfRange(format!(
                            "variable {i} outside 1..={source_dim}"
                        )));
                    }
                    if i <= last {
                        return Err(Error::invalid(format!(
                            "variables must be strictly increasing, got {i} after {last}"
                        )));
                    }
                    last = i;
                }
            }
        }
        Ok(CubeMap { source_dim, slots })
    }

    pub(crate) fn from_slots_unchecked(source_dim: usize, slots: Vec<Slot>) -> Self {
        CubeMap { source_dim, slots }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// The identity of `□ⁿ`.
    pub fn identity(n: usize) -> Self {
        CubeMap { source_dim: n, slots: (1..=n).map(Slot::Var).collect() }
    }

    /// The face inclusion `□ⁿ⁻¹ → □ⁿ` inserting `eps` at coordinate `k`.
    pub fn face(n: usize, k: usize, eps: u8) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::OutOfRange(format!("face index {k} outside 1..={n}")));
        }
        if eps > 1 {
            return Err(Error::OutOfRange(format!("endpoint {eps} is not 0 or 1")));
        }
        let mut slots: Vec<Slot> = (1..k).map(Slot::Var).collect();
        slots.push(Slot::Const(eps));
        slots.extend((k..n).map(Slot::Var));
        Ok(CubeMap { source_dim: n - 1, slots })
    }

    /// The projection `□ⁿ → □ⁿ⁻¹` forgetting coordinate `k`.
    pub fn projection(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::OutOfRange(format!("projection index {k} outside 1..={n}")));
        }
        let slots = (1..=n).filter(|&i| i != k).map(Slot::Var).collect();
        Ok(CubeMap { source_dim: n, slots })
    }

    /// `j⁰`, `j¹`: the two endpoint inclusions `□⁰ → □¹`.
    pub fn endpoint(eps: u8) -> Result<Self> {
        Self::face(1, 1, eps)
    }

    /// `r`: the collapse `□¹ → □⁰`.
    pub fn collapse() -> Self {
        CubeMap { source_dim: 1, slots: Vec::new() }
    }

    /// The composite `self ∘ f`.
    pub fn compose(&self, f: &CubeMap) -> Result<CubeMap> {
        if f.target_dim() != self.source_dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source_dim,
                self.target_dim(),
                f.source_dim,
                f.target_dim()
            )));
        }
        Ok(self.compose_unchecked(f))
    }

    pub(crate) fn compose_unchecked(&self, f: &CubeMap) -> CubeMap {
        let slots = self
            .slots
            .iter()
            .map(|s| match *s {
                Slot::Const(e) => Slot::Const(e),
                Slot::Var(i) => f.slots[i - 1],
            })
            .collect();
        CubeMap { source_dim: f.source_dim, slots }
    }

    /// The monoidal product `□ⁿ ⊗ □ᵐ = □ⁿ⁺ᵐ` on morphisms.
    pub fn tensor(&self, g: &CubeMap) -> CubeMap {
        let shift = self.source_dim;
        let mut slots = self.slots.clone();
        slots.extend(g.slots.iter().map(|s| match *s {
            Slot::Const(e) => Slot::Const(e),
            Slot::Var(i) => Slot::Var(i + shift),
        }));
        CubeMap { source_dim: self.source_dim + g.source_dim, slots }
    }

    /// Input coordinates that are copied to some output slot.
    pub fn used_vars(&self) -> Vec<usize> {
        self.slots
            .iter()
            .filter_map(|s| match *s {
                Slot::Var(i) => Some(i),
                Slot::Const(_) => None,
            })
            .collect()
    }

    /// Injective maps use every input coordinate.
    pub fn is_injective(&self) -> bool {
        self.used_vars().len() == self.source_dim
    }

    /// Surjective maps have no constant slots.
    pub fn is_surjective(&self) -> bool {
        self.slots.iter().all(|s| matches!(s, Slot::Var(_)))
    }

    /// Splits `self` as `mono ∘ epi` with `epi` a projection and `mono` a
    /// composite of faces.
    pub fn factor(&self) -> (CubeMap, CubeMap) {
        let used = self.used_vars();
        let epi = CubeMap { source_dim: self.source_dim, slots: used.iter().map(|&i| Slot::Var(i)).collect() };
        let mut next = 0;
        let mono_slots = self
            .slots
            .iter()
            .map(|s| match *s {
                Slot::Const(e) => Slot::Const(e),
                Slot::Var(_) => {
                    next += 1;
                    Slot::Var(next)
                }
            })
            .collect();
        (CubeMap { source_dim: used.len(), slots: mono_slots }, epi)
    }

    /// The projection `□ⁿ → □ⁿ⁻ˡ` forgetting the (sorted, 1-based)
    /// coordinates in `dropped`.
    pub fn degeneracy(n: usize, dropped: &[usize]) -> CubeMap {
        let slots = (1..=n).filter(|i| !dropped.contains(i)).map(Slot::Var).collect();
        CubeMap { source_dim: n, slots }
    }

    /// Applies the underlying function `[0,1]ⁿ → [0,1]ᵐ` to a corner point.
    pub fn eval_corner(&self, point: &[u8]) -> Vec<u8> {
        self.slots
            .iter()
            .map(|s| match *s {
                Slot::Const(e) => e,
                Slot::Var(i) => point[i - 1],
            })
            .collect()
    }

    /// Applies the underlying function to an arbitrary real point.
    pub fn eval(&self, point: &[f64]) -> Vec<f64> {
        self.slots
            .iter()
            .map(|s| match *s {
                Slot::Const(e) => f64::from(e),
                Slot::Var(i) => point[i - 1],
            })
            .collect()
    }
}

impl fmt::Display for CubeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "□{}→□{} [", self.source_dim, self.target_dim())?;
        for (idx, s) in self.slots.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            match s {
                Slot::Const(e) => write!(f, "{e}")?,
                Slot::Var(i) => write!(f, "x{i}")?,
            }
        }
        write!(f, "]")
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of cube maps `□ⁿ → □ᵐ`.
pub fn hom_count(n: usize, m: usize) -> u64 {
    (0..=n.min(m) as u64)
        .map(|j| binomial(n as u64, j) * binomial(m as u64, j) * (1u64 << (m as u64 - j)))
        .sum()
}

/// All cube maps `□ⁿ → □ᵐ`, each exactly once.
pub fn enumerate_hom(n: usize, m: usize) -> Result<Vec<CubeMap>> {
    if m >= 63 || hom_count(n, m) > HOM_ENUMERATION_LIMIT {
        return Err(Error::guard(format!("enumerate_hom({n}, {m})"), HOM_ENUMERATION_LIMIT));
    }
    let mut out = Vec::new();
    let mut slots = Vec::with_capacity(m);
    fill_slots(n, m, 0, &mut slots, &mut out);
    Ok(out)
}

fn fill_slots(n: usize, m: usize, last_var: usize, slots: &mut Vec<Slot>, out: &mut Vec<CubeMap>) {
    if slots.len() == m {
        out.push(CubeMap { source_dim: n, slots: slots.clone() });
        return;
    }
    for e in 0..2 {
        slots.push(Slot::Const(e));
        fill_slots(n, m, last_var, slots, out);
        slots.pop();
    }
    for i in last_var + 1..=n {
        slots.push(Slot::Var(i));
        fill_slots(n, m, i, slots, out);
        slots.pop();
    }
}

/// The injective maps `□ᵏ → □ⁿ`; these index the non-degenerate cells of
/// the representable `□ⁿ`.
pub fn enumerate_injective(k: usize, n: usize) -> Vec<CubeMap> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut slots = Vec::with_capacity(n);
    fill_injective(k, n, 0, &mut slots, &mut out);
    out
}

fn fill_injective(k: usize, n: usize, last_var: usize, slots: &mut Vec<Slot>, out: &mut Vec<CubeMap>) {
    let remaining_slots = n - slots.len();
    let remaining_vars = k - last_var;
    if remaining_slots == 0 {
        out.push(CubeMap { source_dim: k, slots: slots.clone() });
        return;
    }
    if remaining_slots > remaining_vars {
        for e in 0..2 {
            slots.push(Slot::Const(e));
            fill_injective(k, n, last_var, slots, out);
            slots.pop();
        }
    }
    if remaining_vars > 0 {
        slots.push(Slot::Var(last_var + 1));
        fill_injective(k, n, last_var + 1, slots, out);
        slots.pop();
    }
}
