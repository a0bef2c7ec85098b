use proptest::prelude::*;

use cubeworks::cube::{enumerate_hom, hom_count, CubeMap};

fn map_between(n: usize, m: usize) -> impl Strategy<Value = CubeMap> {
    let all = enumerate_hom(n, m).unwrap();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn composable_triple() -> impl Strategy<Value = (CubeMap, CubeMap, CubeMap)> {
    (0usize..4, 0usize..4, 0usize..4, 0usize..4)
        .prop_flat_map(|(a, b, c, d)| (map_between(a, b), map_between(b, c), map_between(c, d)))
}

fn corners(n: usize) -> Vec<Vec<u8>> {
    (0..1u32 << n).map(|bits| (0..n).map(|i| ((bits >> i) & 1) as u8).collect()).collect()
}

proptest! {
    #[test]
    fn composition_is_associative((f, g, h) in composable_triple()) {
        let left = h.compose(&g).unwrap().compose(&f).unwrap();
        let right = h.compose(&g.compose(&f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(f.compose(&CubeMap::identity(f.source_dim())).unwrap(), f.clone());
        prop_assert_eq!(CubeMap::identity(f.target_dim()).compose(&f).unwrap(), f);
    }

    #[test]
    fn composition_is_composition_of_functions((f, g, _h) in composable_triple()) {
        let gf = g.compose(&f).unwrap();
        for p in corners(f.source_dim()) {
            prop_assert_eq!(gf.eval_corner(&p), g.eval_corner(&f.eval_corner(&p)));
        }
    }

    #[test]
    fn tensor_is_a_bifunctor(
        (f, g, _) in composable_triple(),
        (f2, g2, _) in composable_triple(),
    ) {
        let left = g.compose(&f).unwrap().tensor(&g2.compose(&f2).unwrap());
        let right = g.tensor(&g2).compose(&f.tensor(&f2)).unwrap();
        prop_assert_eq!(left, right);
        let ids = CubeMap::identity(2).tensor(&CubeMap::identity(1));
        prop_assert_eq!(ids, CubeMap::identity(3));
    }

    #[test]
    fn every_map_factors_as_epi_then_mono(f in (0usize..4, 0usize..4).prop_flat_map(|(n, m)| map_between(n, m))) {
        let (mono, epi) = f.factor();
        prop_assert!(epi.is_surjective());
        prop_assert!(mono.is_injective());
        prop_assert_eq!(mono.compose(&epi).unwrap(), f);
    }
}

#[test]
fn hom_sets_are_distinct_functions_on_corners() {
    // distinct normal forms give distinct maps: different corner functions
    // or, for constant-free differences, different variable choices
    for n in 0..=3 {
        for m in 0..=3 {
            let all = enumerate_hom(n, m).unwrap();
            assert_eq!(all.len() as u64, hom_count(n, m));
            let points: Vec<Vec<f64>> =
                (0..=2u32.pow(n as u32)).map(|s| (0..n).map(|i| f64::from((s + i as u32) % 3) / 2.0).collect()).collect();
            let images: std::collections::HashSet<String> =
                all.iter().map(|f| format!("{:?}", points.iter().map(|p| f.eval(p)).collect::<Vec<_>>())).collect();
            assert_eq!(images.len(), all.len(), "Hom(□{n}, □{m})");
        }
    }
}
