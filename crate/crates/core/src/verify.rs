//! The acceptance suite: nine checks, each returning pass/fail with a short
//! account of what was compared.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::Serialize;

use crate::cube::{enumerate_hom, CubeMap};
use crate::cubical::{
    boundary, boundary_subobject, find_isomorphism, open_box, open_box_subobject, standard_cube, tensor,
    tensor_cube_iso, CubicalMap, CubicalSet, Ref,
};
use crate::enriched::{
    build_e, build_h, extend_inverse, homotopy_category, interval_tilde, james, localize, mapping_space, SearchStatus,
};
use crate::error::Result;
use crate::homology::{circle, cubical_homology, homology, simplicial_chains, triangulate, wedge_of_intervals, Pipeline};
use crate::json::SCHEMA;
use crate::realization::{broken_cylinder, check_quillen, standard_cylinder};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: String,
    /// Seconds since the Unix epoch; the only field that varies between runs.
    pub generated_at: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
}

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "cube category soundness"),
    (2, "generator geometry"),
    (3, "tensor unit, associativity and cubes"),
    (4, "homology pipelines agree"),
    (5, "Quillen generator checks"),
    (6, "James contractibility"),
    (7, "James negative control"),
    (8, "localization shadow"),
    (9, "inverse-extension search"),
];

type Check = Result<(bool, String)>;

/// Closure of identities, faces and projections under composition, among
/// cubes of dimension at most `top`.
fn generator_closure(top: usize) -> Result<HashSet<CubeMap>> {
    let mut all: HashSet<CubeMap> = HashSet::new();
    for n in 0..=top {
        all.insert(CubeMap::identity(n));
        for k in 1..=n {
            all.insert(CubeMap::projection(n, k)?);
            for eps in 0..2 {
                all.insert(CubeMap::face(n, k, eps)?);
            }
        }
    }
    loop {
        let list: Vec<CubeMap> = all.iter().cloned().collect();
        let mut fresh = Vec::new();
        for g in &list {
            for f in &list {
                if f.target_dim() == g.source_dim() {
                    let h = g.compose(f)?;
                    if !all.contains(&h) {
                        fresh.push(h);
                    }
                }
            }
        }
        if fresh.is_empty() {
            return Ok(all);
        }
        all.extend(fresh);
    }
}

fn criterion_1() -> Check {
    let closure = generator_closure(3)?;
    let mut total = 0;
    for n in 0..=3 {
        for m in 0..=3 {
            let listed: HashSet<CubeMap> = enumerate_hom(n, m)?.into_iter().collect();
            let generated: HashSet<CubeMap> =
                closure.iter().filter(|f| f.source_dim() == n && f.target_dim() == m).cloned().collect();
            if listed != generated {
                return Ok((false, format!("Hom(□{n}, □{m}): {} listed, {} generated", listed.len(), generated.len())));
            }
            total += listed.len();
        }
    }
    let r = CubeMap::collapse();
    let retracts = (0..2).all(|eps| {
        CubeMap::endpoint(eps).and_then(|j| r.compose(&j)).is_ok_and(|c| c == CubeMap::identity(0))
    });
    Ok((retracts, format!("{total} maps agree for n, m ≤ 3; r j⁰ = r j¹ = id: {retracts}")))
}

fn criterion_2() -> Check {
    let mut checked = 0;
    for n in 0..=4 {
        let (pp, direct) = (boundary(n)?, boundary_subobject(n)?);
        if find_isomorphism(pp.source().as_ref(), direct.source().as_ref()).is_none() || pp.image_cells() != direct.image_cells() {
            return Ok((false, format!("boundary({n}) differs from ∂□{n}")));
        }
        checked += 1;
        for k in 1..=n {
            for eps in 0..2 {
                let (pp, direct) = (open_box(n, k, eps)?, open_box_subobject(n, k, eps)?);
                if find_isomorphism(pp.source().as_ref(), direct.source().as_ref()).is_none()
                    || pp.image_cells() != direct.image_cells()
                {
                    return Ok((false, format!("open_box({n},{k},{eps}) differs from its subobject")));
                }
                checked += 1;
            }
        }
    }
    Ok((true, format!("{checked} pushout-product sources match ∂□ⁿ and ⊓ⁿ_(k,ε), n ≤ 4")))
}

fn is_isomorphism(f: &CubicalMap) -> bool {
    f.is_mono() && f.source().num_cells() == f.target().num_cells()
}

fn criterion_3() -> Check {
    let point = standard_cube(0)?;
    let mut shapes: Vec<(String, Arc<CubicalSet>)> = Vec::new();
    for n in 0..=2 {
        shapes.push((format!("□{n}"), Arc::new(standard_cube(n)?)));
    }
    shapes.push(("∂□2".into(), boundary(2)?.source().clone()));
    let mut checks = 0;
    // unit laws for every shape, as explicit maps x ↦ (∗, x) and x ↦ (x, ∗)
    for (name, x) in &shapes {
        let left = tensor(&point, x);
        let right = tensor(x, &point);
        let l = CubicalMap::new(x.clone(), left.object.clone(), (0..x.num_cells()).map(|c| Ref::cell(left.pair(0, c))).collect())?;
        let r = CubicalMap::new(x.clone(), right.object.clone(), (0..x.num_cells()).map(|c| Ref::cell(right.pair(c, 0))).collect())?;
        if !is_isomorphism(&l) || !is_isomorphism(&r) {
            return Ok((false, format!("unit law fails for {name}")));
        }
        checks += 2;
    }
    // associator ((x, y), z) ↦ (x, (y, z)) with total dimension ≤ 4
    for (xn, x) in &shapes {
        for (yn, y) in &shapes {
            for (zn, z) in &shapes {
                let dims = x.dim().unwrap_or(0) + y.dim().unwrap_or(0) + z.dim().unwrap_or(0);
                if dims > 4 {
                    continue;
                }
                let (xy, yz) = (tensor(x, y), tensor(y, z));
                let (l, r) = (tensor(&xy.object, z), tensor(x, &yz.object));
                let assignment = (0..l.object.num_cells())
                    .map(|c| {
                        let (ab, cz) = l.unpair(c);
                        let (ax, by) = xy.unpair(ab);
                        Ref::cell(r.pair(ax, yz.pair(by, cz)))
                    })
                    .collect();
                let a = CubicalMap::new(l.object.clone(), r.object.clone(), assignment)?;
                if !is_isomorphism(&a) {
                    return Ok((false, format!("associator fails for {xn}, {yn}, {zn}")));
                }
                checks += 1;
            }
        }
    }
    for p in 0..=4 {
        for q in 0..=4 - p {
            if !is_isomorphism(&tensor_cube_iso(p, q)?) {
                return Ok((false, format!("□{p} ⊗ □{q} → □{} is not an isomorphism", p + q)));
            }
            checks += 1;
        }
    }
    Ok((true, format!("{checks} explicit isomorphisms verified")))
}

/// Test shapes for the homology pipelines.
pub fn homology_corpus() -> Result<Vec<(String, Arc<CubicalSet>)>> {
    let mut out = Vec::new();
    for n in 0..=4 {
        out.push((format!("cube{n}"), Arc::new(standard_cube(n)?)));
    }
    for n in 1..=4 {
        out.push((format!("boundary{n}"), boundary(n)?.source().clone()));
        out.push((format!("box{n}_1_0"), open_box(n, 1, 0)?.source().clone()));
        out.push((format!("box{n}_{n}_1"), open_box(n, n, 1)?.source().clone()));
    }
    let b2 = boundary(2)?.source().clone();
    out.push(("torus".into(), tensor(&b2, &b2).object));
    out.push(("cylinder".into(), tensor(&b2, &standard_cube(1)?).object));
    Ok(out)
}

fn criterion_4() -> Check {
    let corpus = homology_corpus()?;
    let results = corpus
        .par_iter()
        .map(|(name, x)| {
            let a = cubical_homology(x, Pipeline::Cubical)?;
            let b = cubical_homology(x, Pipeline::Triangulated)?;
            Ok((name.clone(), a == b, a))
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some((name, _, _)) = results.iter().find(|r| !r.1) {
        return Ok((false, format!("pipelines disagree on {name}")));
    }
    for (name, _, h) in &results {
        if let Some(n) = name.strip_prefix("boundary").and_then(|n| n.parse::<usize>().ok()) {
            let mut sphere = vec![0; n];
            sphere[0] += 1;
            sphere[n - 1] += 1;
            if h.betti_numbers() != sphere || !h.is_torsion_free() {
                return Ok((false, format!("{name} has {} instead of a sphere", h.summary())));
            }
        }
    }
    Ok((true, format!("{} shapes agree; ∂□ⁿ has the homology of S^(n−1) for n ≤ 4", results.len())))
}

fn criterion_5() -> Check {
    let standard = check_quillen(&standard_cylinder(), 4)?;
    let broken = check_quillen(&broken_cylinder(), 4)?;
    let failing: Vec<&str> = standard.generators.iter().filter(|g| !g.passed).map(|g| g.name.as_str()).collect();
    Ok((
        standard.passed && !broken.passed,
        format!(
            "standard: {}/{} generators pass, cylinder {}; broken cylinder rejected: {}{}",
            standard.generators.len() - failing.len(),
            standard.generators.len(),
            if standard.cylinder_checks.passed() { "ok" } else { "fails" },
            !broken.passed,
            if failing.is_empty() { String::new() } else { format!("; failing {failing:?}") }
        ),
    ))
}

fn criterion_6() -> Check {
    let j = james(&wedge_of_intervals(2), 0, 5)?;
    let h = homology(&simplicial_chains(&j))?;
    let ok = h.betti(0) == 1 && h.torsion(0).is_empty() && (1..=4).all(|d| h.betti(d) == 0 && h.torsion(d).is_empty());
    Ok((ok, format!("J5(Δ¹∨Δ¹): {} cells, {}", j.num_cells(), h.summary())))
}

fn criterion_7() -> Check {
    let j = james(&circle(), 0, 5)?;
    let h = homology(&simplicial_chains(&j))?;
    let ok = (0..=4).all(|d| h.betti(d) == 1 && h.torsion(d).is_empty());
    Ok((ok, format!("J5(S¹): {}", h.summary())))
}

fn criterion_8() -> Check {
    let e = localize(&build_e()?, "f")?;
    let hc = homotopy_category(&e, 2)?;
    let tilde = homotopy_category(&interval_tilde()?, 2)?;
    let shadow = hc.objects.len() == 2 && hc.is_chaotic() && tilde.is_chaotic() && tilde.objects.len() == 2;
    if !shadow {
        return Ok((false, format!("h(E⟨f⁻¹⟩) hom sizes {:?}", hc.hom_sizes())));
    }
    let c = e.object("c")?;
    let mut sizes = Vec::new();
    for bound in 0..=5 {
        let m = mapping_space(&e, c, c, bound)?;
        let tri = triangulate(&m.space)?;
        let j = james(&wedge_of_intervals(2), 0, bound)?;
        if find_isomorphism(&tri, &j).is_none() {
            return Ok((false, format!("no isomorphism at L = {bound}")));
        }
        sizes.push(j.num_cells());
    }
    Ok((true, format!("two objects, singleton homs; Map(c,c) ≅ J_L for L ≤ 5 (cells {sizes:?})")))
}

fn criterion_9() -> Check {
    let tilde = extend_inverse(&interval_tilde()?, "f", 2)?;
    let e = extend_inverse(&build_e()?, "f", 2)?;
    let h = build_h()?;
    let mut h_ok = true;
    for bound in 1..=4 {
        let r = extend_inverse(&h, "u", bound)?;
        h_ok &= r.left.is_some() && r.right.is_none() && r.status == SearchStatus::Inconclusive;
    }
    let ok = tilde.status == SearchStatus::Found && e.status == SearchStatus::Found && h_ok;
    let left = extend_inverse(&h, "u", 2)?.left.map(|w| format!("{} via {}", w.inverse, w.homotopy));
    Ok((
        ok,
        format!(
            "[1]~: {:?}, E: {:?}, H with u: left {} only, right inconclusive for L ≤ 4",
            tilde.status,
            e.status,
            left.unwrap_or_else(|| "none".into())
        ),
    ))
}

pub fn run_criterion(id: u8) -> CriterionResult {
    let outcome = match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let name = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1).to_string();
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult { id, name, passed, detail }
}

/// Runs the given criteria (all when empty), in parallel, ordered by id.
pub fn run(ids: &[u8]) -> VerifyReport {
    let ids: Vec<u8> = if ids.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { ids.to_vec() };
    let mut criteria: Vec<CriterionResult> = ids.par_iter().map(|&id| run_criterion(id)).collect();
    criteria.sort_by_key(|c| c.id);
    let generated_at = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    VerifyReport { schema: SCHEMA.to_string(), generated_at, passed: criteria.iter().all(|c| c.passed), criteria }
}

impl CriterionResult {
    /// `PASS  3 tensor unit, associativity and cubes: detail`
    pub fn line(&self) -> String {
        format!("{} {} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.name, self.detail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_low_dimensional_generators() {
        let c = generator_closure(1).unwrap();
        // Hom(□⁰,□⁰), Hom(□⁰,□¹), Hom(□¹,□⁰), Hom(□¹,□¹)
        assert_eq!(c.len(), 1 + 2 + 1 + 3);
    }

    #[test]
    fn unknown_criterion_fails() {
        assert!(!run_criterion(42).passed);
    }
}
