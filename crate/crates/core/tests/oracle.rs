use std::collections::BTreeSet;

use sl_orbits::{
    bfs_orbit, census, generators, orbit_members, verify_group_counts, verify_partition, Budget,
    GroupSpec, VectorModN,
};

#[test]
fn partition_verification_range() {
    let mut cases: Vec<(usize, u64)> = (2..=12).map(|n| (2, n)).collect();
    cases.extend([(3, 2), (3, 3), (3, 4)]);
    for (m, n) in cases {
        let r = verify_partition(&GroupSpec::new(m, n).unwrap(), Budget::DEFAULT).unwrap();
        assert!(r.passed(), "{}", r.to_table());
    }
}

#[test]
fn group_count_verification_range() {
    let mut cases: Vec<(usize, u64)> = (2..=6).map(|n| (2, n)).collect();
    cases.push((3, 2));
    for (m, n) in cases {
        let r = verify_group_counts(&GroupSpec::new(m, n).unwrap(), Budget::DEFAULT).unwrap();
        assert!(r.passed(), "{}", r.to_table());
    }
}

#[test]
fn orbit_of_each_representative_is_its_stratum_m3() {
    for n in 2..=12u64 {
        let spec = GroupSpec::new(3, n).unwrap();
        let gens = generators(&spec).unwrap();
        for o in census(&spec).unwrap().orbits {
            let searched = bfs_orbit(&o.representative, &gens, Budget::DEFAULT).unwrap();
            let stratum: BTreeSet<VectorModN> = orbit_members(&spec, o.divisor, Budget::DEFAULT)
                .unwrap()
                .collect();
            assert_eq!(searched, stratum, "n={n} d={}", o.divisor);
        }
    }
}

#[test]
fn refusals_name_the_budget() {
    let spec = GroupSpec::new(3, 8).unwrap();
    let err = verify_group_counts(&spec, Budget::DEFAULT).unwrap_err();
    assert_eq!(
        err.to_string(),
        "refusing to enumerate 8^9 candidates: budget is 100000000"
    );
    let err = verify_partition(&spec, Budget::new(100).unwrap()).unwrap_err();
    assert!(err.to_string().contains("budget is 100"));
}
