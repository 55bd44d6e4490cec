use proptest::prelude::*;
use sl_orbits::{
    act, closure, crt_matrix_split, crt_split, factorize, generators, orbit_label, same_orbit,
    Budget, GroupSpec, MatrixModN, VectorModN,
};

fn sl_elements(m: usize, n: u64) -> Vec<MatrixModN> {
    let spec = GroupSpec::new(m, n).unwrap();
    closure(&spec, &generators(&spec).unwrap(), Budget::DEFAULT).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn label_is_invariant_under_action(
        n in 2u64..=12,
        seed in any::<u64>(),
        comps in prop::collection::vec(any::<u32>(), 2),
    ) {
        let group = sl_elements(2, n);
        let a = VectorModN::new(&factorize(n).unwrap(), comps.iter().map(|&c| c as i128)).unwrap();
        let g = &group[(seed % group.len() as u64) as usize];
        let b = act(&a, g).unwrap();
        prop_assert_eq!(orbit_label(&b), orbit_label(&a));
        prop_assert!(same_orbit(&a, &b).unwrap());
    }

    #[test]
    fn crt_split_is_equivariant(
        (p, q) in prop::sample::select(vec![(2u64, 3u64), (3, 5), (4, 3), (2, 5)]),
        seed in any::<u64>(),
        comps in prop::collection::vec(any::<u32>(), 2),
    ) {
        let n = p * q;
        let (np, nq) = (factorize(p).unwrap(), factorize(q).unwrap());
        let group = sl_elements(2, n);
        let g = &group[(seed % group.len() as u64) as usize];
        let a = VectorModN::new(&factorize(n).unwrap(), comps.iter().map(|&c| c as i128)).unwrap();
        let (ap, aq) = crt_split(&a, &np, &nq).unwrap();
        let (gp, gq) = crt_matrix_split(g, &np, &nq).unwrap();
        let (bp, bq) = crt_split(&act(&a, g).unwrap(), &np, &nq).unwrap();
        prop_assert_eq!(bp, act(&ap, &gp).unwrap());
        prop_assert_eq!(bq, act(&aq, &gq).unwrap());
    }
}

#[test]
fn sampled_sl6_splits_into_sl2_and_sl3() {
    let (n2, n3) = (factorize(2).unwrap(), factorize(3).unwrap());
    for g in sl_elements(2, 6).iter().step_by(7) {
        let (a, b) = crt_matrix_split(g, &n2, &n3).unwrap();
        assert!(a.is_special() && b.is_special());
    }
}
