//! C ABI for `sl-orbits`.
//!
//! Every fallible function returns an [`SloStatus`] and writes its result
//! through an out-pointer. Census and verification results are returned as
//! opaque handles that must be released with the matching `*_free` function.
//! Vectors and matrices are passed as `uint64_t` arrays; matrices are
//! row-major. Entries may be unreduced; they are reduced modulo `n`.
//!
//! The header `include/sl_orbits.h` is regenerated by the build script.

#![allow(clippy::missing_safety_doc)]

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use sl_orbits::{
    act, census, crt_join, crt_split, det_mod, group_order, jordan_totient, orbit_label,
    sl_inverse, stabilizer_order, verify_group_counts, verify_partition, Budget, CensusReport,
    Error, GroupSpec, MatrixModN, Modulus, VectorModN, VerificationReport,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SloStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Structural = 3,
    NotInSl = 4,
    Overflow = 5,
    BudgetExceeded = 6,
    Parse = 7,
    Consistency = 8,
    OutOfRange = 9,
    Panic = 10,
}

impl From<&Error> for SloStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => SloStatus::Domain,
            Error::Structural(_) => SloStatus::Structural,
            Error::NotInSl { .. } => SloStatus::NotInSl,
            Error::Overflow(_) => SloStatus::Overflow,
            Error::BudgetExceeded { .. } => SloStatus::BudgetExceeded,
            Error::Parse(_) => SloStatus::Parse,
            Error::Consistency(_) => SloStatus::Consistency,
        }
    }
}

/// Opaque census of all orbits for one `(m, n)`.
pub struct SloCensus {
    report: CensusReport,
}

/// Opaque result of the exhaustive verification for one `(m, n)`.
pub struct SloReport {
    report: VerificationReport,
}

fn guard(f: impl FnOnce() -> Result<(), SloStatus>) -> SloStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SloStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => SloStatus::Panic,
    }
}

fn lift<T>(r: sl_orbits::Result<T>) -> Result<T, SloStatus> {
    r.map_err(|e| SloStatus::from(&e))
}

unsafe fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, SloStatus> {
    p.as_mut().ok_or(SloStatus::NullPointer)
}

unsafe fn in_slice<'a>(p: *const u64, len: usize) -> Result<&'a [u64], SloStatus> {
    if p.is_null() {
        return Err(SloStatus::NullPointer);
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn out_slice<'a>(p: *mut u64, len: usize) -> Result<&'a mut [u64], SloStatus> {
    if p.is_null() {
        return Err(SloStatus::NullPointer);
    }
    Ok(slice::from_raw_parts_mut(p, len))
}

unsafe fn read_vector(nn: &Modulus, p: *const u64, dim: usize) -> Result<VectorModN, SloStatus> {
    let comps = in_slice(p, dim)?;
    lift(VectorModN::new(nn, comps.iter().map(|&c| c as i128)))
}

unsafe fn read_matrix(nn: &Modulus, p: *const u64, dim: usize) -> Result<MatrixModN, SloStatus> {
    let entries = in_slice(p, dim.checked_mul(dim).ok_or(SloStatus::Overflow)?)?;
    lift(MatrixModN::new(nn, dim, entries.iter().map(|&c| c as i128)))
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn slo_status_message(status: SloStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        SloStatus::Ok => b"ok\0",
        SloStatus::NullPointer => b"null pointer argument\0",
        SloStatus::Domain => b"argument outside the domain of the operation\0",
        SloStatus::Structural => b"modulus or dimension mismatch\0",
        SloStatus::NotInSl => b"matrix determinant is not 1 modulo n\0",
        SloStatus::Overflow => b"result does not fit in 64 bits\0",
        SloStatus::BudgetExceeded => b"enumeration budget exceeded\0",
        SloStatus::Parse => b"malformed literal\0",
        SloStatus::Consistency => b"internal consistency check failed\0",
        SloStatus::OutOfRange => b"index out of range\0",
        SloStatus::Panic => b"internal panic\0",
    };
    msg.as_ptr().cast()
}

/// Jordan totient `φ_m(n)`.
#[no_mangle]
pub unsafe extern "C" fn slo_jordan_totient(m: u32, n: u64, out: *mut u64) -> SloStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = lift(jordan_totient(m, &lift(Modulus::new(n))?))?;
        Ok(())
    })
}

/// `|SL(m, Z_n)|`.
#[no_mangle]
pub unsafe extern "C" fn slo_group_order(m: usize, n: u64, out: *mut u64) -> SloStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = lift(group_order(&lift(GroupSpec::new(m, n))?))?;
        Ok(())
    })
}

/// Order of the stabilizer of `(0, ..., 0, 1)`; needs `m >= 2`.
#[no_mangle]
pub unsafe extern "C" fn slo_stabilizer_order(m: usize, n: u64, out: *mut u64) -> SloStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = lift(stabilizer_order(&lift(GroupSpec::new(m, n))?))?;
        Ok(())
    })
}

/// Orbit label `gcd(a_1, ..., a_dim, n)` of a vector.
#[no_mangle]
pub unsafe extern "C" fn slo_orbit_label(
    n: u64,
    vector: *const u64,
    dim: usize,
    out: *mut u64,
) -> SloStatus {
    guard(|| {
        let out = out_ref(out)?;
        let nn = lift(Modulus::new(n))?;
        *out = orbit_label(&read_vector(&nn, vector, dim)?).value();
        Ok(())
    })
}

/// Determinant modulo `n` of a `dim × dim` matrix.
#[no_mangle]
pub unsafe extern "C" fn slo_det_mod(
    n: u64,
    dim: usize,
    matrix: *const u64,
    out: *mut u64,
) -> SloStatus {
    guard(|| {
        let out = out_ref(out)?;
        let nn = lift(Modulus::new(n))?;
        *out = det_mod(&read_matrix(&nn, matrix, dim)?);
        Ok(())
    })
}

/// `out = (vector · matrix) mod n`; `out` holds `dim` entries. Fails with
/// `NOT_IN_SL` unless the matrix has determinant 1.
#[no_mangle]
pub unsafe extern "C" fn slo_act(
    n: u64,
    dim: usize,
    vector: *const u64,
    matrix: *const u64,
    out: *mut u64,
) -> SloStatus {
    guard(|| {
        let nn = lift(Modulus::new(n))?;
        let a = read_vector(&nn, vector, dim)?;
        let m = read_matrix(&nn, matrix, dim)?;
        let b = lift(act(&a, &m))?;
        out_slice(out, dim)?.copy_from_slice(b.components());
        Ok(())
    })
}

/// Inverse of an `SL(dim, Z_n)` matrix; `out` holds `dim * dim` entries.
#[no_mangle]
pub unsafe extern "C" fn slo_sl_inverse(
    n: u64,
    dim: usize,
    matrix: *const u64,
    out: *mut u64,
) -> SloStatus {
    guard(|| {
        let nn = lift(Modulus::new(n))?;
        let inv = lift(sl_inverse(&read_matrix(&nn, matrix, dim)?))?;
        out_slice(out, dim * dim)?.copy_from_slice(inv.entries());
        Ok(())
    })
}

/// Splits a vector over `Z_{pq}` into its residues over `Z_p` and `Z_q`.
#[no_mangle]
pub unsafe extern "C" fn slo_crt_split(
    p: u64,
    q: u64,
    dim: usize,
    vector: *const u64,
    out_p: *mut u64,
    out_q: *mut u64,
) -> SloStatus {
    guard(|| {
        let (np, nq) = (lift(Modulus::new(p))?, lift(Modulus::new(q))?);
        let pq = p.checked_mul(q).ok_or(SloStatus::Overflow)?;
        let a = read_vector(&lift(Modulus::new(pq))?, vector, dim)?;
        let (x, y) = lift(crt_split(&a, &np, &nq))?;
        out_slice(out_p, dim)?.copy_from_slice(x.components());
        out_slice(out_q, dim)?.copy_from_slice(y.components());
        Ok(())
    })
}

/// Joins residues over `Z_p` and `Z_q` into the unique vector over `Z_{pq}`.
#[no_mangle]
pub unsafe extern "C" fn slo_crt_join(
    p: u64,
    q: u64,
    dim: usize,
    residue_p: *const u64,
    residue_q: *const u64,
    out: *mut u64,
) -> SloStatus {
    guard(|| {
        let x = read_vector(&lift(Modulus::new(p))?, residue_p, dim)?;
        let y = read_vector(&lift(Modulus::new(q))?, residue_q, dim)?;
        let joined = lift(crt_join(&x, &y))?;
        out_slice(out, dim)?.copy_from_slice(joined.components());
        Ok(())
    })
}

/// Computes the orbit census for `(m, n)`. Release with [`slo_census_free`].
#[no_mangle]
pub unsafe extern "C" fn slo_census_new(m: usize, n: u64, out: *mut *mut SloCensus) -> SloStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        let report = lift(census(&lift(GroupSpec::new(m, n))?))?;
        *out = Box::into_raw(Box::new(SloCensus { report }));
        Ok(())
    })
}

/// Number of orbits; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn slo_census_len(census: *const SloCensus) -> usize {
    census.as_ref().map_or(0, |c| c.report.orbits.len())
}

/// Sum of all orbit sizes (`n^m`); 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn slo_census_total(census: *const SloCensus) -> u64 {
    census.as_ref().map_or(0, |c| c.report.total)
}

/// Label and size of the orbit at `index` (ascending by label).
#[no_mangle]
pub unsafe extern "C" fn slo_census_get(
    census: *const SloCensus,
    index: usize,
    label: *mut u64,
    size: *mut u64,
) -> SloStatus {
    guard(|| {
        let c = census.as_ref().ok_or(SloStatus::NullPointer)?;
        let (label, size) = (out_ref(label)?, out_ref(size)?);
        let o = c.report.orbits.get(index).ok_or(SloStatus::OutOfRange)?;
        *label = o.divisor.value();
        *size = o.size;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn slo_census_free(census: *mut SloCensus) {
    if !census.is_null() {
        drop(Box::from_raw(census));
    }
}

/// Runs the exhaustive verification for `(m, n)`. A `budget` of 0 selects the
/// default. Release with [`slo_report_free`].
#[no_mangle]
pub unsafe extern "C" fn slo_verify_new(
    m: usize,
    n: u64,
    budget: u64,
    out: *mut *mut SloReport,
) -> SloStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        let budget = if budget == 0 {
            Budget::default()
        } else {
            lift(Budget::new(budget))?
        };
        let spec = lift(GroupSpec::new(m, n))?;
        let mut report = lift(verify_partition(&spec, budget))?;
        report.merge(lift(verify_group_counts(&spec, budget))?);
        *out = Box::into_raw(Box::new(SloReport { report }));
        Ok(())
    })
}

/// Whether every check passed; false for a null handle.
#[no_mangle]
pub unsafe extern "C" fn slo_report_passed(report: *const SloReport) -> bool {
    report.as_ref().is_some_and(|r| r.report.passed())
}

#[no_mangle]
pub unsafe extern "C" fn slo_report_len(report: *const SloReport) -> usize {
    report.as_ref().map_or(0, |r| r.report.checks.len())
}

/// Whether the check at `index` passed.
#[no_mangle]
pub unsafe extern "C" fn slo_report_check_passed(
    report: *const SloReport,
    index: usize,
    passed: *mut bool,
) -> SloStatus {
    guard(|| {
        let r = report.as_ref().ok_or(SloStatus::NullPointer)?;
        let passed = out_ref(passed)?;
        *passed = r
            .report
            .checks
            .get(index)
            .ok_or(SloStatus::OutOfRange)?
            .passed;
        Ok(())
    })
}

/// The report as a JSON document. Release with [`slo_string_free`].
/// Returns null for a null handle.
#[no_mangle]
pub unsafe extern "C" fn slo_report_to_json(report: *const SloReport) -> *mut c_char {
    let Some(r) = report.as_ref() else {
        return ptr::null_mut();
    };
    CString::new(r.report.to_json()).map_or(ptr::null_mut(), CString::into_raw)
}

#[no_mangle]
pub unsafe extern "C" fn slo_report_free(report: *mut SloReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

#[no_mangle]
pub unsafe extern "C" fn slo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
