//! `SL(m, Z_n)` as a computational object.

use std::collections::HashSet;
use std::collections::VecDeque;
use std::fmt;

use crate::arith::{checked_mul, checked_pow, inv_mod, jordan_totient, Modulus};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::{det_mod, mat_mul_unchecked, MatrixModN, VectorModN};

/// The pair `(m, n)` naming `SL(m, Z_n)` acting on `Z_n^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    m: usize,
    modulus: Modulus,
}

impl GroupSpec {
    pub fn new(m: usize, n: u64) -> Result<Self> {
        Self::with_modulus(m, Modulus::new(n)?)
    }

    pub fn with_modulus(m: usize, modulus: Modulus) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        Ok(Self { m, modulus })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn n(&self) -> u64 {
        self.modulus.value()
    }

    pub(crate) fn dim_u32(&self) -> Result<u32> {
        u32::try_from(self.m).map_err(|_| Error::Overflow(format!("dimension {}", self.m)))
    }

    fn require_dim_at_least(&self, lo: usize) -> Result<()> {
        if self.m < lo {
            return Err(Error::Domain(format!(
                "dimension must be at least {lo}, got {}",
                self.m
            )));
        }
        Ok(())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SL({}, Z_{})", self.m, self.modulus.value())
    }
}

/// `∏_{p^k || n} p^{k·e_full - e_drop} ∏_{j=2}^{top} (p^j - 1)`.
///
/// This is `n^{e_full} ∏_p ∏_{j=2}^{top} (1 - p^{-j})` with the powers of `p`
/// in the denominators cancelled first, so everything stays integral.
fn order_product(modulus: &Modulus, e_full: u32, top: u32) -> Result<u64> {
    // ∑_{j=2}^{top} j
    let e_drop = if top >= 2 { top * (top + 1) / 2 - 1 } else { 0 };
    modulus.factors().iter().try_fold(1u64, |acc, &(p, k)| {
        let exp = (k * e_full)
            .checked_sub(e_drop)
            .ok_or_else(|| Error::Consistency("negative exponent in order formula".into()))?;
        let mut local = checked_pow(p, exp)?;
        for j in 2..=top {
            local = checked_mul(local, checked_pow(p, j)? - 1)?;
        }
        checked_mul(acc, local)
    })
}

/// `|SL(m, Z_n)| = n^{m²-1} ∏_{p|n} ∏_{j=2}^{m} (1 - p^{-j})`.
pub fn group_order(spec: &GroupSpec) -> Result<u64> {
    let m = spec.dim_u32()?;
    let e_full = m
        .checked_mul(m)
        .ok_or_else(|| Error::Overflow(format!("m = {m}")))?
        - 1;
    order_product(spec.modulus(), e_full, m)
}

/// Order of the stabilizer of `(0, ..., 0, 1)`:
/// `n^{m²-m-1} ∏_{p|n} ∏_{j=2}^{m-1} (1 - p^{-j})`.
pub fn stabilizer_order(spec: &GroupSpec) -> Result<u64> {
    spec.require_dim_at_least(2)?;
    let m = spec.dim_u32()?;
    let e_full = m
        .checked_mul(m)
        .ok_or_else(|| Error::Overflow(format!("m = {m}")))?
        - m
        - 1;
    order_product(spec.modulus(), e_full, m - 1)
}

/// Orbit size of `(0, ..., 0, 1)` as `|SL| / |S|`, cross-checked against `φ_m(n)`.
pub fn orbit_size_by_lagrange(spec: &GroupSpec) -> Result<u64> {
    spec.require_dim_at_least(2)?;
    let order = group_order(spec)?;
    let stab = stabilizer_order(spec)?;
    if order % stab != 0 {
        return Err(Error::Consistency(format!(
            "stabilizer order {stab} does not divide group order {order}"
        )));
    }
    let size = order / stab;
    let jordan = jordan_totient(spec.dim_u32()?, spec.modulus())?;
    if size != jordan {
        return Err(Error::Consistency(format!(
            "|SL|/|S| = {size} but the Jordan totient is {jordan}"
        )));
    }
    Ok(size)
}

/// Elementary transvections `I + E_{ij}` and `I + (n-1)E_{ij}` for every
/// ordered pair `i != j`, row-major over `(i, j)`.
///
/// Always `2·m·(m-1)` matrices; over `Z_2` the two offsets coincide.
pub fn generators(spec: &GroupSpec) -> Result<Vec<MatrixModN>> {
    spec.require_dim_at_least(2)?;
    let m = spec.dim();
    let n = spec.n();
    let mut gens = Vec::with_capacity(2 * m * (m - 1));
    for i in 0..m {
        for j in (0..m).filter(|&j| j != i) {
            gens.push(MatrixModN::transvection(spec.modulus(), m, i, j, 1));
            gens.push(MatrixModN::transvection(spec.modulus(), m, i, j, n - 1));
        }
    }
    Ok(gens)
}

/// Breadth-first closure of `gens` under right multiplication, starting at
/// the identity. The result is in discovery order, which is deterministic.
pub fn closure(spec: &GroupSpec, gens: &[MatrixModN], budget: Budget) -> Result<Vec<MatrixModN>> {
    let m = spec.dim_u32()?;
    let limit = budget.admit(spec.n(), m * m)?;
    let start = MatrixModN::identity(spec.modulus(), spec.dim());
    let mut seen: HashSet<Vec<u8>> = HashSet::from([start.key()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(a) = queue.pop_front() {
        for g in gens {
            let b = mat_mul_unchecked(&a, g);
            if seen.insert(b.key()) {
                if order.len() as u64 >= limit {
                    return Err(Error::Consistency(
                        "closure is larger than the full matrix ring".into(),
                    ));
                }
                order.push(b.clone());
                queue.push_back(b);
            }
        }
    }
    Ok(order)
}

/// Streams every matrix with `det ≡ 1 (mod n)` in lexicographic entry order.
pub struct GroupEnumerator {
    modulus: Modulus,
    dim: usize,
    entries: Vec<u64>,
    done: bool,
}

impl GroupEnumerator {
    fn advance(&mut self) -> bool {
        let n = self.modulus.value();
        for e in self.entries.iter_mut().rev() {
            *e += 1;
            if *e < n {
                return true;
            }
            *e = 0;
        }
        false
    }
}

impl Iterator for GroupEnumerator {
    type Item = MatrixModN;

    fn next(&mut self) -> Option<MatrixModN> {
        let one = 1 % self.modulus.value();
        while !self.done {
            let candidate = MatrixModN::from_reduced(&self.modulus, self.dim, self.entries.clone());
            self.done = !self.advance();
            if det_mod(&candidate) == one {
                return Some(candidate);
            }
        }
        None
    }
}

/// Exhaustive enumeration of `SL(m, Z_n)` over all `n^{m²}` candidates.
pub fn enumerate_group(spec: &GroupSpec, budget: Budget) -> Result<GroupEnumerator> {
    let m = spec.dim_u32()?;
    budget.admit(spec.n(), m.saturating_mul(m))?;
    Ok(GroupEnumerator {
        modulus: spec.modulus().clone(),
        dim: spec.dim(),
        entries: vec![0; spec.dim() * spec.dim()],
        done: false,
    })
}

/// Builds an `SL(m, Z_p)` matrix whose last row is `a`, for prime `p` and
/// nonzero `a`.
///
/// With `j` the first index where `a_j != 0`, the upper rows have zeros in
/// column `j` and `diag(1, ..., 1, c)` in the remaining columns, where
/// `c = (-1)^{j+m} a_j^{-1}` (1-based `j`). Expanding along column `j` gives
/// `det = (-1)^{j+m} a_j c = 1`.
pub fn complete_row_prime(a: &VectorModN) -> Result<MatrixModN> {
    let nn = a.modulus();
    if !nn.is_prime() {
        return Err(Error::Domain(format!(
            "row completion is only constructed for prime moduli, got {}",
            nn.value()
        )));
    }
    let Some(pivot) = a.components().iter().position(|&c| c != 0) else {
        return Err(Error::Domain("zero vector is a fixed point".into()));
    };
    let p = nn.value();
    let m = a.dim();
    if m == 1 {
        return if a.components()[0] == 1 {
            Ok(MatrixModN::identity(nn, 1))
        } else {
            Err(Error::Domain(format!(
                "SL(1, Z_{p}) = {{(1)}} has no row ({a})"
            )))
        };
    }
    let inv = inv_mod(a.components()[pivot], p).expect("nonzero residue mod a prime is a unit");
    let c = if (pivot + 1 + m).is_multiple_of(2) {
        inv
    } else {
        (p - inv) % p
    };

    let mut entries = vec![0u64; m * m];
    let free_cols: Vec<usize> = (0..m).filter(|&col| col != pivot).collect();
    for (row, &col) in free_cols.iter().enumerate() {
        entries[row * m + col] = if row == m - 2 { c } else { 1 };
    }
    entries[(m - 1) * m..].copy_from_slice(a.components());
    let out = MatrixModN::from_reduced(nn, m, entries);
    debug_assert_eq!(det_mod(&out), 1);
    Ok(out)
}
