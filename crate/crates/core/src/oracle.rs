//! Brute-force verification of the closed forms.
//!
//! Orbits are recovered by breadth-first search over the vector space `Z_n^m`
//! using the transvection generators; group and stabilizer orders come from
//! enumerating every candidate matrix. Nothing in this module consults the
//! gcd classification except to compare against it.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::arith::{divisors, jordan_totient, Divisor};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{
    closure, enumerate_group, generators, group_order, stabilizer_order, GroupSpec,
};
use crate::linalg::{act_unchecked, det_mod, mat_mul_unchecked, MatrixModN, VectorModN};
use crate::orbits::{census, orbit_members};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
    /// An offending element, when the check failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, expected: impl ToString, observed: impl ToString) -> Self {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        Self {
            name: name.into(),
            passed: expected == observed,
            expected,
            observed,
            witness: None,
        }
    }

    fn with_witness(mut self, witness: Option<String>) -> Self {
        if !self.passed {
            self.witness = witness;
        }
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub m: usize,
    pub n: u64,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    fn new(spec: &GroupSpec) -> Self {
        Self {
            m: spec.dim(),
            n: spec.n(),
            checks: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.elapsed += other.elapsed;
    }

    /// Aligned table; excludes timing so output is reproducible.
    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "SL({}, Z_{}) acting on Z_{}^{}",
            self.m, self.n, self.n, self.m
        );
        for c in &self.checks {
            let _ = write!(
                out,
                "{}  {:<width$}  expected {}  observed {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.expected,
                c.observed,
            );
            if let Some(w) = &c.witness {
                let _ = write!(out, "  witness {w}");
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{} checks, {} passed, {} failed",
            self.checks.len(),
            self.checks.len() - failed,
            failed
        );
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            #[serde(flatten)]
            report: &'a VerificationReport,
            passed: bool,
        }
        serde_json::to_string(&Doc {
            report: self,
            passed: self.passed(),
        })
        .expect("report serializes")
    }
}

/// Reachability search over `Z_n^m` indexed by base-`n` encoding.
struct Explorer<'a> {
    spec: &'a GroupSpec,
    gens: &'a [MatrixModN],
    /// `(parent index, generator index)` for every visited non-root point,
    /// kept only when witnesses are wanted.
    parent: Option<Vec<Option<(u64, usize)>>>,
    visited: Vec<bool>,
}

impl<'a> Explorer<'a> {
    fn new(
        spec: &'a GroupSpec,
        gens: &'a [MatrixModN],
        budget: Budget,
        track_parents: bool,
    ) -> Result<Self> {
        let size = budget.admit(spec.n(), spec.dim_u32()?)?;
        for g in gens {
            if g.modulus().value() != spec.n() || g.dim() != spec.dim() {
                return Err(Error::Structural(format!(
                    "generator {g:?} is not over {spec}"
                )));
            }
            let det = det_mod(g);
            if det != 1 {
                return Err(Error::NotInSl {
                    m: spec.dim(),
                    n: spec.n(),
                    det,
                });
            }
        }
        let size = usize::try_from(size).map_err(|_| Error::Overflow("state space".into()))?;
        Ok(Self {
            spec,
            gens,
            parent: track_parents.then(|| vec![None; size]),
            visited: vec![false; size],
        })
    }

    /// Visits everything reachable from `start`, stopping early at `target`.
    /// Returns the visited indices in discovery order.
    fn search(&mut self, start: u64, target: Option<u64>) -> Vec<u64> {
        let (nn, m) = (self.spec.modulus(), self.spec.dim());
        self.visited[start as usize] = true;
        let mut found = vec![start];
        let mut queue = VecDeque::from([start]);
        if target == Some(start) {
            return found;
        }
        while let Some(idx) = queue.pop_front() {
            let v = VectorModN::from_index(nn, m, idx);
            for (gi, g) in self.gens.iter().enumerate() {
                let w = act_unchecked(&v, g).index();
                if !self.visited[w as usize] {
                    self.visited[w as usize] = true;
                    if let Some(parent) = self.parent.as_mut() {
                        parent[w as usize] = Some((idx, gi));
                    }
                    found.push(w);
                    if target == Some(w) {
                        return found;
                    }
                    queue.push_back(w);
                }
            }
        }
        found
    }

    /// Product of generators along the parent chain from the root to `idx`.
    fn witness(&self, mut idx: u64) -> MatrixModN {
        let parent = self.parent.as_ref().expect("search tracked parents");
        let mut path = Vec::new();
        while let Some((prev, gi)) = parent[idx as usize] {
            path.push(gi);
            idx = prev;
        }
        path.iter().rev().fold(
            MatrixModN::identity(self.spec.modulus(), self.spec.dim()),
            |acc, &gi| mat_mul_unchecked(&acc, &self.gens[gi]),
        )
    }
}

fn spec_of(a: &VectorModN) -> Result<GroupSpec> {
    GroupSpec::with_modulus(a.dim(), a.modulus().clone())
}

/// The orbit of `a` under the group generated by `gens`.
pub fn bfs_orbit(
    a: &VectorModN,
    gens: &[MatrixModN],
    budget: Budget,
) -> Result<BTreeSet<VectorModN>> {
    let spec = spec_of(a)?;
    let mut ex = Explorer::new(&spec, gens, budget, false)?;
    Ok(ex
        .search(a.index(), None)
        .into_iter()
        .map(|i| VectorModN::from_index(spec.modulus(), spec.dim(), i))
        .collect())
}

/// A matrix `W` in the group generated by `gens` with `aW = b`, if one exists.
pub fn find_transform(
    a: &VectorModN,
    b: &VectorModN,
    gens: &[MatrixModN],
    budget: Budget,
) -> Result<Option<MatrixModN>> {
    let spec = spec_of(a)?;
    if spec_of(b)? != spec {
        return Err(Error::Structural("vectors live in different spaces".into()));
    }
    let mut ex = Explorer::new(&spec, gens, budget, true)?;
    let target = b.index();
    ex.search(a.index(), Some(target));
    if !ex.visited[target as usize] {
        return Ok(None);
    }
    let w = ex.witness(target);
    if det_mod(&w) != 1 || act_unchecked(a, &w) != *b {
        return Err(Error::Consistency(format!(
            "witness {w:?} does not carry {a:?} to {b:?}"
        )));
    }
    Ok(Some(w))
}

/// Partition of `Z_n^m` into orbits found by search, each block sorted,
/// blocks ordered by their smallest index.
pub fn bfs_partition(spec: &GroupSpec, budget: Budget) -> Result<Vec<BTreeSet<VectorModN>>> {
    let gens = if spec.dim() >= 2 {
        generators(spec)?
    } else {
        Vec::new()
    };
    let mut ex = Explorer::new(spec, &gens, budget, false)?;
    let total = ex.visited.len() as u64;
    let mut blocks = Vec::new();
    for idx in 0..total {
        if !ex.visited[idx as usize] {
            let block = ex
                .search(idx, None)
                .into_iter()
                .map(|i| VectorModN::from_index(spec.modulus(), spec.dim(), i))
                .collect();
            blocks.push(block);
        }
    }
    Ok(blocks)
}

fn points(k: usize) -> String {
    if k == 1 {
        "1 point".to_string()
    } else {
        format!("{k} points")
    }
}

fn first_difference(a: &BTreeSet<VectorModN>, b: &BTreeSet<VectorModN>) -> Option<String> {
    a.symmetric_difference(b).next().map(|v| format!("({v})"))
}

/// Compares the searched orbit partition with the gcd strata and their
/// closed-form sizes.
pub fn verify_partition(spec: &GroupSpec, budget: Budget) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new(spec);
    let blocks = bfs_partition(spec, budget)?;
    let expected = census(spec)?;

    report.checks.push(Check::new(
        "orbit count",
        expected.orbits.len(),
        blocks.len(),
    ));

    if spec.dim() == 1 {
        let largest = blocks.iter().map(BTreeSet::len).max().unwrap_or(0);
        report
            .checks
            .push(Check::new("largest orbit (m = 1)", 1, largest));
        report.elapsed = started.elapsed();
        return Ok(report);
    }

    for orbit in &expected.orbits {
        let d = orbit.divisor;
        let block = blocks
            .iter()
            .find(|b| b.contains(&orbit.representative))
            .cloned()
            .unwrap_or_default();
        let stratum: BTreeSet<VectorModN> = orbit_members(spec, d, budget)?.collect();
        report.checks.push(
            Check::new(
                format!("orbit d={d} equals gcd stratum"),
                points(stratum.len()),
                format!(
                    "{}{}",
                    points(block.len()),
                    if block == stratum {
                        ""
                    } else {
                        ", sets differ"
                    }
                ),
            )
            .with_witness(first_difference(&block, &stratum)),
        );
        report.checks.push(Check::new(
            format!("orbit d={d} size"),
            orbit.size,
            block.len(),
        ));
    }
    report.elapsed = started.elapsed();
    Ok(report)
}

/// Counts `SL(m, Z_n)` and the stabilizer of `(0, ..., 0, 1)` exhaustively and
/// checks the order formulas, the orbit-stabilizer quotient and that the
/// transvections generate the whole group.
pub fn verify_group_counts(spec: &GroupSpec, budget: Budget) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new(spec);
    let m = spec.dim();
    let e = VectorModN::last_axis(spec.modulus(), m, 1);

    let mut group_keys = HashSet::new();
    let mut stabilizer = 0u64;
    let mut bad_shape: Option<String> = None;
    for a in enumerate_group(spec, budget)? {
        if m >= 2 && act_unchecked(&e, &a) == e {
            stabilizer += 1;
            if bad_shape.is_none() && !stabilizer_shape_ok(&a) {
                bad_shape = Some(format!("[{a}]"));
            }
        }
        group_keys.insert(a.key());
    }
    let order = group_keys.len() as u64;
    report
        .checks
        .push(Check::new("group order", group_order(spec)?, order));
    if m < 2 {
        report.elapsed = started.elapsed();
        return Ok(report);
    }

    let stab_formula = stabilizer_order(spec)?;
    report
        .checks
        .push(Check::new("stabilizer order", stab_formula, stabilizer));
    report.checks.push(
        Check::new(
            "stabilizer block in SL(m-1)",
            "all",
            if bad_shape.is_none() {
                "all"
            } else {
                "not all"
            },
        )
        .with_witness(bad_shape),
    );
    let quotient = if stabilizer != 0 && order.is_multiple_of(stabilizer) {
        (order / stabilizer).to_string()
    } else {
        format!("{order}/{stabilizer}")
    };
    report.checks.push(Check::new(
        "orbit-stabilizer quotient",
        jordan_totient(spec.dim_u32()?, spec.modulus())?,
        quotient,
    ));

    let closed = closure(spec, &generators(spec)?, budget)?;
    let closed_keys: HashSet<Vec<u8>> = closed.iter().map(MatrixModN::key).collect();
    let missing = group_keys
        .difference(&closed_keys)
        .next()
        .map(|k| format!("{k:?}"));
    report.checks.push(
        Check::new(
            "transvection closure",
            format!("{order} elements"),
            format!(
                "{} elements{}",
                closed_keys.len(),
                if closed_keys == group_keys {
                    ""
                } else {
                    ", sets differ"
                }
            ),
        )
        .with_witness(missing),
    );
    report.elapsed = started.elapsed();
    Ok(report)
}

/// Last row `(0, ..., 0, 1)` and top-left `(m-1) × (m-1)` block of determinant 1.
fn stabilizer_shape_ok(a: &MatrixModN) -> bool {
    let m = a.dim();
    let last_ok = a
        .row(m - 1)
        .iter()
        .enumerate()
        .all(|(j, &x)| x == u64::from(j == m - 1));
    let block: Vec<u64> = (0..m - 1)
        .flat_map(|i| a.row(i)[..m - 1].to_vec())
        .collect();
    let block = MatrixModN::from_reduced(a.modulus(), m - 1, block);
    last_ok && det_mod(&block) == 1
}

/// All label classes of the space as a map from divisor to searched block,
/// for callers that want to inspect the partition directly.
pub fn partition_by_label(
    spec: &GroupSpec,
    budget: Budget,
) -> Result<Vec<(Divisor, BTreeSet<VectorModN>)>> {
    let blocks = bfs_partition(spec, budget)?;
    Ok(divisors(spec.modulus())
        .into_iter()
        .filter_map(|d| {
            let rep = VectorModN::last_axis(spec.modulus(), spec.dim(), d.value());
            blocks
                .iter()
                .find(|b| b.contains(&rep))
                .map(|b| (d, b.clone()))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;
    use crate::linalg::act;

    fn v(n: u64, lit: &str) -> VectorModN {
        VectorModN::parse(&factorize(n).unwrap(), lit).unwrap()
    }

    fn gens(m: usize, n: u64) -> Vec<MatrixModN> {
        generators(&GroupSpec::new(m, n).unwrap()).unwrap()
    }

    #[test]
    fn bfs_examples() {
        let zero = bfs_orbit(&v(5, "0,0"), &gens(2, 5), Budget::DEFAULT).unwrap();
        assert_eq!(zero.into_iter().collect::<Vec<_>>(), vec![v(5, "0,0")]);
        let units = bfs_orbit(&v(5, "0,1"), &gens(2, 5), Budget::DEFAULT).unwrap();
        assert_eq!(units.len(), 24);
        assert!(!units.contains(&v(5, "0,0")));
        let twos = bfs_orbit(&v(4, "0,2"), &gens(2, 4), Budget::DEFAULT).unwrap();
        assert_eq!(
            twos.into_iter().collect::<Vec<_>>(),
            vec![v(4, "0,2"), v(4, "2,0"), v(4, "2,2")]
        );
    }

    #[test]
    fn bfs_rejects_non_sl_generator() {
        let bad = vec![MatrixModN::parse(&factorize(4).unwrap(), "2,0;0,2").unwrap()];
        assert!(matches!(
            bfs_orbit(&v(4, "1,0"), &bad, Budget::DEFAULT),
            Err(Error::NotInSl { .. })
        ));
    }

    #[test]
    fn partition_examples() {
        let sizes = |m, n| {
            let mut s: Vec<usize> = bfs_partition(&GroupSpec::new(m, n).unwrap(), Budget::DEFAULT)
                .unwrap()
                .iter()
                .map(BTreeSet::len)
                .collect();
            s.sort_unstable();
            s
        };
        assert_eq!(sizes(2, 7), vec![1, 48]);
        assert_eq!(sizes(2, 8), vec![1, 3, 12, 48]);
        assert_eq!(sizes(2, 6), vec![1, 3, 8, 24]);
    }

    #[test]
    fn verify_partition_passes() {
        for n in [6, 7, 8] {
            let r = verify_partition(&GroupSpec::new(2, n).unwrap(), Budget::DEFAULT).unwrap();
            assert!(r.passed(), "{}", r.to_table());
        }
        let r = verify_partition(&GroupSpec::new(1, 4).unwrap(), Budget::DEFAULT).unwrap();
        assert!(r.passed(), "{}", r.to_table());
    }

    #[test]
    fn group_count_examples() {
        let get = |r: &VerificationReport, name: &str| {
            r.checks
                .iter()
                .find(|c| c.name == name)
                .unwrap()
                .observed
                .clone()
        };
        for (m, n, order, stab, quotient) in [
            (2, 2, "6", "2", "3"),
            (2, 3, "24", "3", "8"),
            (3, 2, "168", "24", "7"),
        ] {
            let r = verify_group_counts(&GroupSpec::new(m, n).unwrap(), Budget::DEFAULT).unwrap();
            assert!(r.passed(), "{}", r.to_table());
            assert_eq!(get(&r, "group order"), order);
            assert_eq!(get(&r, "stabilizer order"), stab);
            assert_eq!(get(&r, "orbit-stabilizer quotient"), quotient);
        }
    }

    #[test]
    fn transform_examples() {
        let g = gens(2, 4);
        let a = v(4, "3,1");
        let id = find_transform(&a, &a, &g, Budget::DEFAULT)
            .unwrap()
            .unwrap();
        assert_eq!(id, MatrixModN::identity(&factorize(4).unwrap(), 2));
        let (x, y) = (v(4, "1,0"), v(4, "0,1"));
        let w = find_transform(&x, &y, &g, Budget::DEFAULT)
            .unwrap()
            .unwrap();
        assert_eq!(act(&x, &w).unwrap(), y);
        assert!(
            find_transform(&v(4, "2,0"), &v(4, "1,0"), &g, Budget::DEFAULT)
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn search_is_deterministic() {
        let s = GroupSpec::new(2, 9).unwrap();
        assert_eq!(
            bfs_partition(&s, Budget::DEFAULT).unwrap(),
            bfs_partition(&s, Budget::DEFAULT).unwrap()
        );
        let g = gens(2, 9);
        let (a, b) = (v(9, "1,4"), v(9, "7,7"));
        assert_eq!(
            find_transform(&a, &b, &g, Budget::DEFAULT).unwrap(),
            find_transform(&a, &b, &g, Budget::DEFAULT).unwrap()
        );
    }

    #[test]
    fn label_partition_lookup() {
        let s = GroupSpec::new(2, 12).unwrap();
        let parts = partition_by_label(&s, Budget::DEFAULT).unwrap();
        assert_eq!(parts.len(), 6);
        assert_eq!(parts.iter().map(|(_, b)| b.len()).sum::<usize>(), 144);
    }

    #[test]
    fn report_rendering() {
        let r = verify_group_counts(&GroupSpec::new(2, 2).unwrap(), Budget::DEFAULT).unwrap();
        let table = r.to_table();
        assert!(table.contains("PASS  group order"));
        assert!(table.contains("expected 6  observed 6"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["passed"], true);
        assert_eq!(json["checks"][0]["name"], "group order");
    }
}
