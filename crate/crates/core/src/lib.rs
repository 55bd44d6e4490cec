//! Orbits of `Z_n^m` under the right action of `SL(m, Z_n)`.
//!
//! The orbits are exactly the gcd strata `{a : gcd(a_1, ..., a_m, n) = d}`
//! for `d | n` (when `m >= 2`), of size `φ_m(n/d)` where `φ_m` is the Jordan
//! totient. [`orbits`] computes these answers directly; [`oracle`] recovers
//! them by breadth-first search and exhaustive enumeration so they can be
//! checked at small sizes.
//!
//! ```
//! use sl_orbits::{census, GroupSpec};
//!
//! let report = census(&GroupSpec::new(2, 4).unwrap()).unwrap();
//! let sizes: Vec<u64> = report.orbits.iter().map(|o| o.size).collect();
//! assert_eq!(sizes, [12, 3, 1]);
//! assert_eq!(report.total, 16);
//! ```

pub mod arith;
pub mod budget;
pub mod cli;
pub mod error;
pub mod group;
pub mod linalg;
pub mod oracle;
pub mod orbits;

pub use arith::{
    divisors, factorize, gcd_with_modulus, jordan_divisor_sum, jordan_totient, Divisor, Modulus,
};
pub use budget::Budget;
pub use error::{Error, Result};
pub use group::{
    closure, complete_row_prime, enumerate_group, generators, group_order, orbit_size_by_lagrange,
    stabilizer_order, GroupSpec,
};
pub use linalg::{
    act, act_unchecked, adjugate, det_mod, mat_mul, scale_map, sl_inverse, MatrixModN, VectorModN,
};
pub use oracle::{
    bfs_orbit, bfs_partition, find_transform, verify_group_counts, verify_partition, Check,
    VerificationReport,
};
pub use orbits::{
    census, crt_join, crt_matrix_split, crt_split, orbit_label, orbit_members, orbit_product_check,
    same_orbit, CensusReport, OrbitDescriptor,
};
