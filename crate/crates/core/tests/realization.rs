use std::collections::BTreeSet;
use std::sync::Arc;

use cubeworks::cubical::{boundary, iterated_pushout_product, open_box, standard_cube, tensor, CubicalSet, Factor, Ref};
use cubeworks::homology::{cubical_chains, homology, ChainComplex};
use cubeworks::realization::{
    broken_cylinder, chain_realize, check_quillen, realize_map, standard_cylinder, tensor_complexes,
};

fn corpus() -> Vec<(String, Arc<CubicalSet>)> {
    let mut out = Vec::new();
    for n in 0..=3 {
        out.push((format!("cube{n}"), Arc::new(standard_cube(n).unwrap())));
    }
    for n in 1..=3 {
        out.push((format!("boundary{n}"), boundary(n).unwrap().source().clone()));
        out.push((format!("box{n}"), open_box(n, 1, 0).unwrap().source().clone()));
    }
    out
}

/// Reorders `c` along a per-degree bijection `perm[d][i] = j` (basis `i` of
/// `c` is basis `j` of the other complex) and compares differentials.
fn isomorphic_along(c: &ChainComplex, other: &ChainComplex, perm: &[Vec<usize>]) -> bool {
    if c.ranks() != other.ranks() {
        return false;
    }
    for d in 1..c.len() {
        let m = c.differential(d);
        let n = other.differential(d);
        for col in 0..m.cols() {
            for row in 0..m.rows() {
                if m.get(row, col) != n.get(perm[d - 1][row], perm[d][col]) {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn realization_matches_cubical_chains_in_homology() {
    let cyl = standard_cylinder();
    for (name, x) in corpus() {
        let a = homology(&chain_realize(&x, &cyl).unwrap()).unwrap();
        let b = homology(&cubical_chains(&x)).unwrap();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn realization_is_monoidal() {
    let cyl = standard_cylinder();
    let pieces: Vec<(String, Arc<CubicalSet>)> = (0..=2)
        .flat_map(|n| {
            let mut v = vec![(format!("cube{n}"), Arc::new(standard_cube(n).unwrap()))];
            if n > 0 {
                v.push((format!("boundary{n}"), boundary(n).unwrap().source().clone()));
            }
            v
        })
        .collect();
    for (xn, x) in &pieces {
        for (yn, y) in &pieces {
            let t = tensor(x, y);
            let rt = chain_realize(&t.object, &cyl).unwrap();
            let (rx, ry) = (chain_realize(x, &cyl).unwrap(), chain_realize(y, &cyl).unwrap());
            let (prod, basis) = tensor_complexes(&rx, &ry).unwrap();
            // basis position of every cell of x, y and x ⊗ y within its degree
            let pos = |s: &CubicalSet| -> Vec<usize> {
                let mut seen = vec![0; s.dim().map_or(0, |d| d + 1)];
                (0..s.num_cells())
                    .map(|c| {
                        seen[s.dim_of(c)] += 1;
                        seen[s.dim_of(c)] - 1
                    })
                    .collect()
            };
            let (px, py, pt) = (pos(x), pos(y), pos(&t.object));
            let mut perm: Vec<Vec<usize>> = (0..prod.len()).map(|d| vec![0; prod.rank(d)]).collect();
            for cell in 0..t.object.num_cells() {
                let (a, b) = t.unpair(cell);
                let d = t.object.dim_of(cell);
                let key = (x.dim_of(a), px[a], py[b]);
                perm[d][pt[cell]] = basis[d].binary_search(&key).unwrap();
            }
            assert!(isomorphic_along(&rt, &prod, &perm), "{xn} ⊗ {yn}");
        }
    }
}

#[test]
fn pushout_products_are_transported() {
    // the image of f₁ ⊠ … ⊠ fₙ in □ⁿ is the set of cells with some
    // coordinate in the image of the corresponding fᵢ, computed from the
    // realized factors
    let cyl = standard_cylinder();
    let factors = [Factor::Boundary, Factor::Endpoint(0), Factor::Endpoint(1)];
    let mut lists: Vec<Vec<Factor>> = vec![vec![]];
    for _ in 0..3 {
        let next: Vec<Vec<Factor>> = lists
            .iter()
            .flat_map(|l| factors.iter().map(move |f| [l.clone(), vec![*f]].concat()))
            .collect();
        lists.extend(next.into_iter().filter(|l| l.len() <= 3));
        lists.sort_by_key(|l| format!("{l:?}"));
        lists.dedup();
    }
    for list in lists.iter().filter(|l| !l.is_empty()) {
        let n = list.len();
        let f = iterated_pushout_product(list).unwrap();
        let realized = realize_map(&f, &cyl).unwrap();
        let cube = standard_cube(n).unwrap();
        // letters per coordinate in the realized image of each factor
        let images: Vec<BTreeSet<char>> = list
            .iter()
            .map(|fac| {
                let g = iterated_pushout_product(&[*fac]).unwrap();
                g.image_cells().iter().map(|&c| cube_slots(&standard_cube(1).unwrap(), c)[0]).collect()
            })
            .collect();
        let expected: BTreeSet<usize> = (0..cube.num_cells())
            .filter(|&c| {
                let slots = cube_slots(&cube, c);
                slots.iter().zip(&images).any(|(s, im)| im.contains(s))
            })
            .collect();
        let got: BTreeSet<usize> = f.image_cells().into_iter().collect();
        assert_eq!(got, expected, "{list:?}");
        assert!(realized.commutes_with_differentials().unwrap());
        for d in 0..=n {
            let in_degree = expected.iter().filter(|&&c| cube.dim_of(c) == d).count();
            assert_eq!(realized.source.rank(d), in_degree, "{list:?} degree {d}");
        }
    }
}

/// Coordinates of a cell of a standard cube, read from its label
/// (`0`, `1`, or free).
fn cube_slots(cube: &CubicalSet, cell: usize) -> Vec<char> {
    cube.label(cell).chars().collect()
}

#[test]
fn standard_cylinder_passes_through_dimension_four() {
    let report = check_quillen(&standard_cylinder(), 4).unwrap();
    assert!(report.passed);
    assert_eq!(report.generators.len(), 5 + 2 * (1 + 2 + 3 + 4));
}

#[test]
fn broken_cylinder_fails() {
    let report = check_quillen(&broken_cylinder(), 4).unwrap();
    assert!(!report.passed);
    // the sign change is invisible to subcomplexes of cubes; what breaks is
    // the collapse, which no longer commutes with the differential
    let c = &report.cylinder_checks;
    assert!(!c.collapse_chain_map && !c.collapse_weak_equivalence);
    assert!(c.inclusions_cofibration && c.inclusions_weak_equivalences);
    assert!(report.generators.iter().all(|g| g.passed));
    // and a loop realizes with ∂e = 2v
    let mut circle = CubicalSet::new();
    let v = circle.add_cell(0, vec![], "v").unwrap();
    circle.add_cell(1, vec![Ref::cell(v), Ref::cell(v)], "e").unwrap();
    let h = homology(&chain_realize(&circle, &broken_cylinder()).unwrap()).unwrap();
    assert_eq!(h.summary(), "H0=Z/2");
}
