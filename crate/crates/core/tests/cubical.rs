use std::collections::HashMap;
use std::sync::Arc;

use cubeworks::cube::enumerate_hom;
use cubeworks::cubical::{boundary, discrete, kan_check, open_box, standard_cube, tensor, CubicalSet, MAP_SEARCH_LIMIT};
use cubeworks::enriched::{build_e, build_h, james, localize};
use cubeworks::homology::{circle, cubical_homology, Pipeline};
use cubeworks::json::{self, Artifact, Workspace};

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn open_box_cell_counts() {
    for n in 1..=4 {
        for k in 1..=n {
            for eps in 0..2 {
                let counts = open_box(n, k, eps).unwrap().source().counts();
                let expected: Vec<usize> = (0..n)
                    .map(|d| if d + 1 == n { 2 * n - 1 } else { binomial(n, d) << (n - d) })
                    .collect();
                assert_eq!(counts, expected, "box({n},{k},{eps})");
            }
        }
    }
}

fn corners(n: usize) -> Vec<Vec<u8>> {
    (0..1u32 << n).map(|bits| (0..n).map(|i| ((bits >> i) & 1) as u8).collect()).collect()
}

/// Box maps into `□ᵐ` and how many extend, counted from compatible
/// families of face maps agreeing on corners.
fn box_oracle(n: usize, k: usize, eps: u8, m: usize) -> (usize, usize) {
    let faces: Vec<(usize, u8)> =
        (1..=n).flat_map(|i| [(i, 0u8), (i, 1)]).filter(|&f| f != (k, 1 - eps)).collect();
    let face_maps = enumerate_hom(n - 1, m).unwrap();
    let fillers: Vec<HashMap<Vec<u8>, Vec<u8>>> = enumerate_hom(n, m)
        .unwrap()
        .iter()
        .map(|h| corners(n).into_iter().map(|p| (p.clone(), h.eval_corner(&p))).collect())
        .collect();
    let (mut boxes, mut filled) = (0, 0);
    let mut choice = vec![0usize; faces.len()];
    'outer: loop {
        let mut values: HashMap<Vec<u8>, Vec<u8>> = HashMap::new();
        let mut ok = true;
        for (&(i, d), &c) in faces.iter().zip(&choice) {
            for p in corners(n - 1) {
                let mut q = p.clone();
                q.insert(i - 1, d);
                let v = face_maps[c].eval_corner(&p);
                if values.get(&q).is_some_and(|w| *w != v) {
                    ok = false;
                }
                values.insert(q, v);
            }
        }
        if ok {
            boxes += 1;
            if fillers.iter().any(|h| values.iter().all(|(p, v)| h[p] == *v)) {
                filled += 1;
            }
        }
        for slot in choice.iter_mut() {
            *slot += 1;
            if *slot < face_maps.len() {
                continue 'outer;
            }
            *slot = 0;
        }
        return (boxes, filled);
    }
}

#[test]
fn kan_counts_on_cubes_match_the_corner_oracle() {
    for (m, top) in [(1, 3), (2, 3)] {
        let x = Arc::new(standard_cube(m).unwrap());
        let r = kan_check(&x, top, MAP_SEARCH_LIMIT).unwrap();
        for e in &r.entries {
            assert_eq!((e.boxes, e.filled), box_oracle(e.n, e.k, e.eps, m), "□{m}, box({},{},{})", e.n, e.k, e.eps);
        }
        assert!(!r.passed);
    }
}

#[test]
fn kan_goldens() {
    let x = Arc::new(standard_cube(1).unwrap());
    let r = kan_check(&x, 2, MAP_SEARCH_LIMIT).unwrap();
    let got: Vec<(usize, usize, u8, usize, usize)> = r.entries.iter().map(|e| (e.n, e.k, e.eps, e.boxes, e.filled)).collect();
    assert_eq!(
        got,
        vec![(1, 1, 0, 2, 2), (1, 1, 1, 2, 2), (2, 1, 0, 7, 4), (2, 1, 1, 7, 4), (2, 2, 0, 7, 4), (2, 2, 1, 7, 4)]
    );
    let w = r.witness.unwrap();
    assert_eq!((w.n, w.k, w.eps), (2, 1, 0));
}

fn betti(x: &CubicalSet) -> Vec<usize> {
    let h = cubical_homology(x, Pipeline::Cubical).unwrap();
    assert!(h.is_torsion_free());
    let mut b = h.betti_numbers();
    while b.len() > 1 && b.last() == Some(&0) {
        b.pop();
    }
    b
}

fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

#[test]
fn kunneth_for_torsion_free_factors() {
    let shapes: Vec<CubicalSet> = vec![
        discrete(2),
        standard_cube(1).unwrap(),
        boundary(2).unwrap().source().as_ref().clone(),
        boundary(3).unwrap().source().as_ref().clone(),
        open_box(2, 1, 0).unwrap().source().as_ref().clone(),
    ];
    for x in &shapes {
        for y in &shapes {
            let t = tensor(x, y);
            assert_eq!(betti(&t.object), convolve(&betti(x), &betti(y)));
        }
    }
}

#[test]
fn tensor_pipelines_agree() {
    let b2 = boundary(2).unwrap().source().clone();
    let t = tensor(&b2, &tensor(&b2, &discrete(2)).object).object;
    assert_eq!(cubical_homology(&t, Pipeline::Cubical).unwrap(), cubical_homology(&t, Pipeline::Triangulated).unwrap());
}

fn artifacts() -> Vec<Artifact> {
    let e = build_e().unwrap();
    vec![
        Artifact::Cubical(standard_cube(3).unwrap()),
        Artifact::Cubical(open_box(3, 2, 1).unwrap().source().as_ref().clone()),
        Artifact::Cubical(tensor(&boundary(2).unwrap().source().clone(), &standard_cube(1).unwrap()).object.as_ref().clone()),
        Artifact::Simplicial(james(&circle(), 0, 3).unwrap()),
        Artifact::Presentation(build_h().unwrap()),
        Artifact::Presentation(localize(&e, "f").unwrap()),
        Artifact::Presentation(e),
        json::report(&cubical_homology(&standard_cube(2).unwrap(), Pipeline::Cubical).unwrap()),
    ]
}

#[test]
fn every_artifact_round_trips() {
    for a in artifacts() {
        let text = json::emit(&a);
        let back = json::parse(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(json::emit(&back), text);
        assert_eq!(json::from_value(&json::to_value(&a)).unwrap(), a);
    }
}

#[test]
fn workspace_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let mut ws = Workspace::open(dir.path()).unwrap();
    let all = artifacts();
    for (i, a) in all.iter().enumerate() {
        ws.store(&format!("a{i}"), a).unwrap();
    }
    let reopened = Workspace::open(dir.path()).unwrap();
    assert_eq!(reopened.names().len(), all.len());
    for (i, a) in all.iter().enumerate() {
        assert_eq!(reopened.load(&format!("a{i}")).unwrap(), *a);
        assert_eq!(reopened.kind_of(&format!("a{i}")), Some(a.kind()));
    }
    assert!(ws.store("manifest", &all[0]).is_err());
    assert!(ws.store("../escape", &all[0]).is_err());
}

#[test]
fn malformed_documents_are_rejected() {
    let good = json::to_value(&Artifact::Cubical(standard_cube(1).unwrap()));
    let mut wrong_schema = good.clone();
    wrong_schema["schema"] = "cubeworks/0".into();
    assert!(json::from_value(&wrong_schema).is_err());
    let mut dangling = good.clone();
    dangling["cells"][2]["faces"][0]["cell"] = "c9".into();
    assert!(json::from_value(&dangling).is_err());
    assert!(json::parse("{").is_err());
}

#[test]
fn shipped_schemas_list_every_kind() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schemas/artifact.schema.json");
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(schema["properties"]["schema"]["const"], json::SCHEMA);
    let kinds: Vec<&str> =
        schema["properties"]["kind"]["enum"].as_array().unwrap().iter().map(|k| k.as_str().unwrap()).collect();
    for a in artifacts() {
        assert!(kinds.contains(&a.kind()));
        assert_eq!(json::to_value(&a)["kind"], a.kind());
    }
}
