//! Closed-form orbit decomposition of `Z_n^m` under `SL(m, Z_n)`.
//!
//! For `m >= 2` the orbits are exactly the gcd strata
//! `{a : gcd(a_1, ..., a_m, n) = d}`, one per divisor `d | n`, with
//! `φ_m(n/d)` points each. Nothing here searches; the [`crate::oracle`]
//! module exists to check these answers by brute force.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::arith::{
    divisors, ext_gcd, gcd, gcd_of_components, gcd_with_modulus, jordan_totient_u64, Divisor,
    Modulus,
};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::linalg::{det_mod, MatrixModN, VectorModN};

/// One orbit: label `d`, representative `(0, ..., 0, d mod n)` and size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDescriptor {
    pub divisor: Divisor,
    pub representative: VectorModN,
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub spec: GroupSpec,
    pub orbits: Vec<OrbitDescriptor>,
    pub total: u64,
    /// Set when the closed form does not apply (`m = 1`).
    pub warning: Option<String>,
}

#[derive(Serialize)]
struct OrbitRecord<'a> {
    d: u64,
    size: u64,
    rep: &'a [u64],
}

#[derive(Serialize)]
struct TotalRecord {
    m: usize,
    n: u64,
    total: u64,
}

impl CensusReport {
    /// Tab-separated `d  size  representative` rows, then `total = N = n^m`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for o in &self.orbits {
            let _ = writeln!(out, "{}\t{}\t{}", o.divisor, o.size, o.representative);
        }
        let _ = writeln!(
            out,
            "total = {} = {}^{}",
            self.total,
            self.spec.n(),
            self.spec.dim()
        );
        out
    }

    /// One `{"d":..,"size":..,"rep":[..]}` object per line, then a
    /// `{"m":..,"n":..,"total":..}` checksum line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for o in &self.orbits {
            let rec = OrbitRecord {
                d: o.divisor.value(),
                size: o.size,
                rep: o.representative.components(),
            };
            out.push_str(&serde_json::to_string(&rec).expect("plain record serializes"));
            out.push('\n');
        }
        let total = TotalRecord {
            m: self.spec.dim(),
            n: self.spec.n(),
            total: self.total,
        };
        out.push_str(&serde_json::to_string(&total).expect("plain record serializes"));
        out.push('\n');
        out
    }
}

/// The orbit label of `a`: `gcd(a_1, ..., a_m, n)`.
pub fn orbit_label(a: &VectorModN) -> Divisor {
    gcd_with_modulus(a)
}

fn same_space(a: &VectorModN, b: &VectorModN) -> Result<()> {
    if a.modulus().value() != b.modulus().value() || a.dim() != b.dim() {
        return Err(Error::Structural(format!(
            "vectors live in different spaces: Z_{}^{} vs Z_{}^{}",
            a.modulus().value(),
            a.dim(),
            b.modulus().value(),
            b.dim()
        )));
    }
    Ok(())
}

/// Whether `b` lies in the orbit of `a`. Decided by the gcd label when
/// `m >= 2`; for `m = 1` the group is trivial and orbits are singletons.
pub fn same_orbit(a: &VectorModN, b: &VectorModN) -> Result<bool> {
    same_space(a, b)?;
    if a.dim() == 1 {
        return Ok(a == b);
    }
    Ok(orbit_label(a) == orbit_label(b))
}

/// Census of all orbits, ascending by label.
pub fn census(spec: &GroupSpec) -> Result<CensusReport> {
    let m = spec.dim_u32()?;
    let nn = spec.modulus();
    let n = nn.value();
    if spec.dim() == 1 {
        // SL(1, Z_n) = {(1)}: every point is its own orbit.
        let orbits: Vec<OrbitDescriptor> = (0..n)
            .map(|x| {
                let rep = VectorModN::last_axis(nn, 1, x);
                OrbitDescriptor {
                    divisor: gcd_with_modulus(&rep),
                    representative: rep,
                    size: 1,
                }
            })
            .collect();
        return Ok(CensusReport {
            spec: spec.clone(),
            total: n,
            orbits,
            warning: Some(format!(
                "m = 1: SL(1, Z_{n}) is trivial, so each of the {n} points is its own orbit \
                 and the gcd classification does not apply"
            )),
        });
    }
    let orbits = divisors(nn)
        .into_iter()
        .map(|d| {
            Ok(OrbitDescriptor {
                size: jordan_totient_u64(m, d.cofactor())?,
                representative: VectorModN::last_axis(nn, spec.dim(), d.value()),
                divisor: d,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = orbits.iter().map(|o| o.size).sum::<u64>();
    let expected = nn.pow(m)?;
    if total != expected {
        return Err(Error::Consistency(format!(
            "orbit sizes sum to {total}, expected {expected}"
        )));
    }
    Ok(CensusReport {
        spec: spec.clone(),
        orbits,
        total,
        warning: None,
    })
}

/// Every vector of `Z_n^m` whose gcd label is `d`, in index order.
pub fn orbit_members(
    spec: &GroupSpec,
    d: Divisor,
    budget: Budget,
) -> Result<impl Iterator<Item = VectorModN>> {
    let nn = spec.modulus().clone();
    let n = nn.value();
    if d.value() * d.cofactor() != n {
        return Err(Error::Domain(format!("{d} is not a divisor of {n}")));
    }
    let total = budget.admit(n, spec.dim_u32()?)?;
    let m = spec.dim();
    Ok((0..total).filter_map(move |idx| {
        let v = VectorModN::from_index(&nn, m, idx);
        (gcd_of_components(v.components(), n) == d.value()).then_some(v)
    }))
}

fn coprime_pair(p: &Modulus, q: &Modulus) -> Result<u64> {
    let (pv, qv) = (p.value(), q.value());
    if gcd(pv, qv) != 1 {
        return Err(Error::Domain(format!("{pv} and {qv} are not coprime")));
    }
    pv.checked_mul(qv)
        .ok_or_else(|| Error::Overflow(format!("{pv}·{qv} does not fit in 64 bits")))
}

/// `a ↦ (a mod p, a mod q)` on `Z_{pq}^m`.
pub fn crt_split(a: &VectorModN, p: &Modulus, q: &Modulus) -> Result<(VectorModN, VectorModN)> {
    let pq = coprime_pair(p, q)?;
    if pq != a.modulus().value() {
        return Err(Error::Domain(format!(
            "{}·{} = {pq} is not the modulus {}",
            p.value(),
            q.value(),
            a.modulus().value()
        )));
    }
    Ok((a.reduce_to(p)?, a.reduce_to(q)?))
}

/// The unique `a ∈ Z_{pq}^m` with `a ≡ a1 (mod p)` and `a ≡ a2 (mod q)`.
pub fn crt_join(a1: &VectorModN, a2: &VectorModN) -> Result<VectorModN> {
    let (p, q) = (a1.modulus(), a2.modulus());
    let pq = coprime_pair(p, q)?;
    if a1.dim() != a2.dim() {
        return Err(Error::Structural(format!(
            "dimension mismatch: {} vs {}",
            a1.dim(),
            a2.dim()
        )));
    }
    let target = Modulus::new(pq)?;
    let (pv, qv) = (p.value() as i128, q.value() as i128);
    // p·s + q·t = 1, so p·s ≡ 1 (mod q).
    let (_, s, _) = ext_gcd(pv, qv);
    let comps = a1
        .components()
        .iter()
        .zip(a2.components())
        .map(|(&x1, &x2)| {
            let lift = ((x2 as i128 - x1 as i128) * s).rem_euclid(qv);
            x1 as i128 + pv * lift
        });
    VectorModN::new(&target, comps)
}

/// `A ↦ (A mod p, A mod q)` on `SL(m, Z_{pq})`.
pub fn crt_matrix_split(
    a: &MatrixModN,
    p: &Modulus,
    q: &Modulus,
) -> Result<(MatrixModN, MatrixModN)> {
    let pq = coprime_pair(p, q)?;
    if pq != a.modulus().value() {
        return Err(Error::Domain(format!(
            "{}·{} = {pq} is not the modulus {}",
            p.value(),
            q.value(),
            a.modulus().value()
        )));
    }
    let det = det_mod(a);
    if det != 1 {
        return Err(Error::NotInSl {
            m: a.dim(),
            n: pq,
            det,
        });
    }
    Ok((a.reduce_to(p)?, a.reduce_to(q)?))
}

/// Exhaustively compares `crt_join(stratum_p(d1) × stratum_q(d2))` with the
/// stratum of label `d1·d2` in `Z_{pq}^m`.
pub fn orbit_product_check(
    m: usize,
    p: &Modulus,
    q: &Modulus,
    d1: Divisor,
    d2: Divisor,
    budget: Budget,
) -> Result<bool> {
    let pq = coprime_pair(p, q)?;
    let spec_p = GroupSpec::with_modulus(m, p.clone())?;
    let spec_q = GroupSpec::with_modulus(m, q.clone())?;
    let spec_pq = GroupSpec::new(m, pq)?;
    let left: Vec<VectorModN> =
        orbit_members(&spec_p, Divisor::of(d1.value(), p)?, budget)?.collect();
    let right: Vec<VectorModN> =
        orbit_members(&spec_q, Divisor::of(d2.value(), q)?, budget)?.collect();
    let mut joined = BTreeSet::new();
    for a1 in &left {
        for a2 in &right {
            joined.insert(crt_join(a1, a2)?);
        }
    }
    let label = Divisor::of(d1.value() * d2.value(), spec_pq.modulus())?;
    let stratum: BTreeSet<VectorModN> = orbit_members(&spec_pq, label, budget)?.collect();
    Ok(joined == stratum)
}
