//! Exact linear algebra over `Z_n`: products, determinants, adjugates and the
//! right action of matrices on row vectors.
//!
//! Determinants are always computed over the integers and reduced at the end.
//! `Z_n` has zero divisors, so field-style elimination modulo `n` is never used.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{checked_pow, Modulus};
use crate::error::{Error, Result};

/// A row vector in `Z_n^m` with every component in `[0, n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorModN {
    modulus: Modulus,
    components: Vec<u64>,
}

impl VectorModN {
    /// Reduces each component into `[0, n)`.
    pub fn new<I>(modulus: &Modulus, components: I) -> Result<Self>
    where
        I: IntoIterator<Item = i128>,
    {
        let components: Vec<u64> = components.into_iter().map(|c| modulus.reduce(c)).collect();
        if components.is_empty() {
            return Err(Error::Structural(
                "vector must have at least one component".into(),
            ));
        }
        Ok(Self {
            modulus: modulus.clone(),
            components,
        })
    }

    pub(crate) fn from_reduced(modulus: &Modulus, components: Vec<u64>) -> Self {
        debug_assert!(!components.is_empty());
        debug_assert!(components.iter().all(|&c| c < modulus.value()));
        Self {
            modulus: modulus.clone(),
            components,
        }
    }

    pub fn zero(modulus: &Modulus, m: usize) -> Self {
        Self::from_reduced(modulus, vec![0; m])
    }

    /// `(0, ..., 0, x mod n)`.
    pub fn last_axis(modulus: &Modulus, m: usize, x: u64) -> Self {
        let mut components = vec![0; m];
        components[m - 1] = x % modulus.value();
        Self::from_reduced(modulus, components)
    }

    /// Parses a literal such as `"1,2,3"`.
    pub fn parse(modulus: &Modulus, literal: &str) -> Result<Self> {
        Self::new(modulus, parse_row(literal)?)
    }

    /// Decodes a base-`n` index (least significant component first).
    pub(crate) fn from_index(modulus: &Modulus, m: usize, mut idx: u64) -> Self {
        let n = modulus.value();
        let components = (0..m)
            .map(|_| {
                let c = idx % n;
                idx /= n;
                c
            })
            .collect();
        Self::from_reduced(modulus, components)
    }

    /// Inverse of [`VectorModN::from_index`].
    pub(crate) fn index(&self) -> u64 {
        let n = self.modulus.value();
        self.components.iter().rev().fold(0, |acc, &c| acc * n + c)
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn components(&self) -> &[u64] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|&c| c == 0)
    }

    /// Reduces every component modulo a divisor `k` of `n`.
    pub fn reduce_to(&self, target: &Modulus) -> Result<Self> {
        if !self.modulus.value().is_multiple_of(target.value()) {
            return Err(Error::Structural(format!(
                "{} does not divide {}",
                target.value(),
                self.modulus.value()
            )));
        }
        let k = target.value();
        Ok(Self::from_reduced(
            target,
            self.components.iter().map(|c| c % k).collect(),
        ))
    }
}

impl PartialOrd for VectorModN {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VectorModN {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modulus
            .value()
            .cmp(&other.modulus.value())
            .then_with(|| self.components.cmp(&other.components))
    }
}

impl fmt::Debug for VectorModN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) mod {}", self, self.modulus.value())
    }
}

impl fmt::Display for VectorModN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_row(f, &self.components)
    }
}

/// An `m × m` matrix over `Z_n`, row-major, entries in `[0, n)`.
///
/// Carries no determinant guarantee.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixModN {
    modulus: Modulus,
    dim: usize,
    entries: Vec<u64>,
}

impl MatrixModN {
    pub fn new<I>(modulus: &Modulus, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = i128>,
    {
        let entries: Vec<u64> = entries.into_iter().map(|c| modulus.reduce(c)).collect();
        if dim == 0 {
            return Err(Error::Structural(
                "matrix dimension must be at least 1".into(),
            ));
        }
        if entries.len() != dim * dim {
            return Err(Error::Structural(format!(
                "expected {} entries for a {dim}×{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(Self {
            modulus: modulus.clone(),
            dim,
            entries,
        })
    }

    pub fn from_rows<R>(modulus: &Modulus, rows: &[R]) -> Result<Self>
    where
        R: AsRef<[i128]>,
    {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.as_ref().len() != dim) {
            return Err(Error::Structural(format!(
                "matrix is not square: {dim} rows but a row of length {}",
                bad.as_ref().len()
            )));
        }
        Self::new(
            modulus,
            dim,
            rows.iter().flat_map(|r| r.as_ref().iter().copied()),
        )
    }

    pub(crate) fn from_reduced(modulus: &Modulus, dim: usize, entries: Vec<u64>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Self {
            modulus: modulus.clone(),
            dim,
            entries,
        }
    }

    pub fn identity(modulus: &Modulus, dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1 % modulus.value();
        }
        Self::from_reduced(modulus, dim, entries)
    }

    /// `I + c·E_{row,col}` for `row != col`.
    pub fn transvection(modulus: &Modulus, dim: usize, row: usize, col: usize, c: u64) -> Self {
        assert!(row != col && row < dim && col < dim);
        let mut a = Self::identity(modulus, dim);
        a.entries[row * dim + col] = c % modulus.value();
        a
    }

    /// Parses a literal such as `"1,1;0,1"`: comma-separated entries,
    /// semicolon-separated rows.
    pub fn parse(modulus: &Modulus, literal: &str) -> Result<Self> {
        let rows = literal
            .split(';')
            .map(parse_row)
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(modulus, &rows)
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[u64] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    /// Entrywise reduction modulo a divisor of `n`.
    pub fn reduce_to(&self, target: &Modulus) -> Result<Self> {
        if !self.modulus.value().is_multiple_of(target.value()) {
            return Err(Error::Structural(format!(
                "{} does not divide {}",
                target.value(),
                self.modulus.value()
            )));
        }
        let k = target.value();
        Ok(Self::from_reduced(
            target,
            self.dim,
            self.entries.iter().map(|c| c % k).collect(),
        ))
    }

    /// A compact byte key for visited sets; not a stable format.
    pub(crate) fn key(&self) -> Vec<u8> {
        self.entries.iter().flat_map(|e| e.to_le_bytes()).collect()
    }

    pub fn is_special(&self) -> bool {
        det_mod(self) == 1 % self.modulus.value()
    }
}

impl fmt::Debug for MatrixModN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod {}", self, self.modulus.value())
    }
}

impl fmt::Display for MatrixModN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            if i > 0 {
                f.write_str(";")?;
            }
            write_row(f, self.row(i))?;
        }
        Ok(())
    }
}

fn write_row(f: &mut fmt::Formatter<'_>, row: &[u64]) -> fmt::Result {
    for (j, x) in row.iter().enumerate() {
        if j > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn parse_row(literal: &str) -> Result<Vec<i128>> {
    literal
        .split(',')
        .map(|s| {
            let s = s.trim();
            i128::from_str(s).map_err(|_| Error::Parse(format!("invalid integer {s:?}")))
        })
        .collect()
}

fn same_ring(a: &Modulus, b: &Modulus) -> Result<()> {
    if a.value() != b.value() {
        return Err(Error::Structural(format!(
            "modulus mismatch: {} vs {}",
            a.value(),
            b.value()
        )));
    }
    Ok(())
}

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Structural(format!("dimension mismatch: {a} vs {b}")));
    }
    Ok(())
}

/// `(AB) mod n`.
pub fn mat_mul(a: &MatrixModN, b: &MatrixModN) -> Result<MatrixModN> {
    same_ring(&a.modulus, &b.modulus)?;
    same_dim(a.dim, b.dim)?;
    Ok(mat_mul_unchecked(a, b))
}

pub(crate) fn mat_mul_unchecked(a: &MatrixModN, b: &MatrixModN) -> MatrixModN {
    let m = a.dim;
    let n = a.modulus.value() as u128;
    let mut entries = vec![0u64; m * m];
    for i in 0..m {
        for j in 0..m {
            let mut acc = 0u128;
            for k in 0..m {
                acc = (acc + a.entries[i * m + k] as u128 * b.entries[k * m + j] as u128) % n;
            }
            entries[i * m + j] = acc as u64;
        }
    }
    MatrixModN::from_reduced(&a.modulus, m, entries)
}

/// Determinant over the integers of a row-major square matrix.
///
/// Uses closed forms / cofactor expansion up to `4 × 4` and falls back to
/// Bareiss elimination with big integers for larger matrices or when the
/// fixed-width expansion would overflow.
pub fn det_integer(entries: &[u64], dim: usize) -> BigInt {
    if dim <= 4 {
        if let Some(d) = det_cofactor(entries, dim) {
            return BigInt::from(d);
        }
    }
    det_bareiss(entries, dim)
}

fn det_cofactor(e: &[u64], dim: usize) -> Option<i128> {
    let at = |i: usize| -> Option<i128> { Some(i128::from(e[i])) };
    match dim {
        0 => Some(1),
        1 => at(0),
        2 => at(0)?
            .checked_mul(at(3)?)?
            .checked_sub(at(1)?.checked_mul(at(2)?)?),
        3 => {
            let t0 = at(4)?
                .checked_mul(at(8)?)?
                .checked_sub(at(5)?.checked_mul(at(7)?)?)?;
            let t1 = at(3)?
                .checked_mul(at(8)?)?
                .checked_sub(at(5)?.checked_mul(at(6)?)?)?;
            let t2 = at(3)?
                .checked_mul(at(7)?)?
                .checked_sub(at(4)?.checked_mul(at(6)?)?)?;
            at(0)?
                .checked_mul(t0)?
                .checked_sub(at(1)?.checked_mul(t1)?)?
                .checked_add(at(2)?.checked_mul(t2)?)
        }
        _ => {
            // Laplace expansion along the first row.
            let mut acc = 0i128;
            for col in 0..dim {
                let a0 = at(col)?;
                if a0 == 0 {
                    continue;
                }
                let minor = minor_entries(e, dim, 0, col);
                let term = a0.checked_mul(det_cofactor(&minor, dim - 1)?)?;
                acc = if col % 2 == 0 {
                    acc.checked_add(term)?
                } else {
                    acc.checked_sub(term)?
                };
            }
            Some(acc)
        }
    }
}

fn det_bareiss(e: &[u64], dim: usize) -> BigInt {
    if dim == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<BigInt> = e.iter().map(|&x| BigInt::from(x)).collect();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..dim - 1 {
        if a[k * dim + k].is_zero() {
            let Some(pivot) = (k + 1..dim).find(|&r| !a[r * dim + k].is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..dim {
                a.swap(k * dim + c, pivot * dim + c);
            }
            sign = -sign;
        }
        for i in k + 1..dim {
            for j in k + 1..dim {
                let num = &a[i * dim + j] * &a[k * dim + k] - &a[i * dim + k] * &a[k * dim + j];
                // Exact by Sylvester's identity.
                a[i * dim + j] = num / &prev;
            }
        }
        prev = a[k * dim + k].clone();
    }
    let det = a[dim * dim - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

fn minor_entries(e: &[u64], dim: usize, skip_row: usize, skip_col: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity((dim - 1) * (dim - 1));
    for i in (0..dim).filter(|&i| i != skip_row) {
        for j in (0..dim).filter(|&j| j != skip_col) {
            out.push(e[i * dim + j]);
        }
    }
    out
}

fn reduce_big(x: &BigInt, n: u64) -> u64 {
    let r = x % BigInt::from(n);
    let r = if r.is_negative() {
        r + BigInt::from(n)
    } else {
        r
    };
    r.to_u64().expect("residue fits in u64")
}

/// Determinant modulo `n`, in `[0, n)`.
pub fn det_mod(a: &MatrixModN) -> u64 {
    let n = a.modulus.value();
    if a.dim <= 3 {
        if let Some(d) = det_cofactor(&a.entries, a.dim) {
            return d.rem_euclid(n as i128) as u64;
        }
    }
    reduce_big(&det_integer(&a.entries, a.dim), n)
}

/// Classical adjugate: `adj(A)_{i,j} = (-1)^{i+j} det A(j,i) mod n`, where
/// `A(j,i)` drops row `j` and column `i`. For `1 × 1` matrices this is `[[1]]`.
pub fn adjugate(a: &MatrixModN) -> MatrixModN {
    let m = a.dim;
    let n = a.modulus.value();
    if m == 1 {
        return MatrixModN::identity(&a.modulus, 1);
    }
    let mut entries = vec![0u64; m * m];
    for i in 0..m {
        for j in 0..m {
            let minor = minor_entries(&a.entries, m, j, i);
            let d = reduce_big(&det_integer(&minor, m - 1), n);
            entries[i * m + j] = if (i + j) % 2 == 0 { d } else { (n - d) % n };
        }
    }
    MatrixModN::from_reduced(&a.modulus, m, entries)
}

fn require_special(a: &MatrixModN) -> Result<()> {
    let det = det_mod(a);
    if det != 1 % a.modulus.value() {
        return Err(Error::NotInSl {
            m: a.dim,
            n: a.modulus.value(),
            det,
        });
    }
    Ok(())
}

/// Inverse of an `SL(m, Z_n)` element, which is its adjugate.
pub fn sl_inverse(a: &MatrixModN) -> Result<MatrixModN> {
    require_special(a)?;
    Ok(adjugate(a))
}

/// The right action `a ↦ (aA) mod n`, defined only for `A ∈ SL(m, Z_n)`.
pub fn act(a: &VectorModN, m: &MatrixModN) -> Result<VectorModN> {
    same_ring(&a.modulus, &m.modulus)?;
    same_dim(a.dim(), m.dim)?;
    require_special(m)?;
    Ok(act_unchecked(a, m))
}

/// [`act`] without the determinant check. The caller guarantees matching
/// ring, dimension and `det ≡ 1`.
pub fn act_unchecked(a: &VectorModN, m: &MatrixModN) -> VectorModN {
    let dim = m.dim;
    let n = m.modulus.value() as u128;
    let components = (0..dim)
        .map(|i| {
            let mut acc = 0u128;
            for (j, &aj) in a.components.iter().enumerate() {
                acc = (acc + aj as u128 * m.entries[j * dim + i] as u128) % n;
            }
            acc as u64
        })
        .collect();
    VectorModN::from_reduced(&m.modulus, components)
}

/// `F^j(a) = (p^j · a) mod p^k` on `Z_{p^k}^m`.
pub fn scale_map(j: u32, a: &VectorModN) -> Result<VectorModN> {
    let nn = a.modulus();
    let Some((p, k)) = nn.prime_power() else {
        return Err(Error::Domain(format!(
            "scaling map needs a prime-power modulus, got {}",
            nn.value()
        )));
    };
    if j > k {
        return Err(Error::Domain(format!(
            "exponent {j} exceeds {k} for modulus {p}^{k}"
        )));
    }
    let factor = checked_pow(p, j)? as u128;
    let n = nn.value() as u128;
    Ok(VectorModN::from_reduced(
        nn,
        a.components
            .iter()
            .map(|&c| (c as u128 * factor % n) as u64)
            .collect(),
    ))
}
