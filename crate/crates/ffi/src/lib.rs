//! C ABI over `zonoehr`.
//!
//! Zonotopes are opaque handles created by `zonoehr_zonotope_new` or
//! `zonoehr_zonotope_from_json` and released with `zonoehr_zonotope_free`.
//! Every fallible function returns a [`ZonoStatus`]; on failure the message is
//! available from `zonoehr_last_error_message` on the same thread. Output
//! buffers are caller-allocated with an explicit length; rationals are written
//! as separate numerator and denominator arrays.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use zonoehr::classify::{check_with_witness, classify_3d_deg2, Degree2Class, Scheme};
use zonoehr::cli::cmd_ehrhart_report;
use zonoehr::document::ZonotopeDocument;
use zonoehr::ehrhart::{
    degree_of, ehrhart_oracle, ehrhart_stanley, eulerian_aj, hstar_from_poly, interior_count_reciprocity,
    to_cbasis,
};
use zonoehr::zonotope::DEFAULT_CELL_BUDGET;
use zonoehr::{Error, IntMatrix, IntVector, Zonotope};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZonoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BufferTooSmall = 3,
    Overflow = 4,
    Degenerate = 5,
    NonLatticeTranslate = 6,
    BudgetExceeded = 7,
    Contradiction = 8,
    Mismatch = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZonoDegree2Class {
    Width1Product = 0,
    Exceptional = 1,
    NotDegree2 = 2,
}

/// Opaque zonotope handle.
pub struct ZonoZonotope(Zonotope);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(ZonoStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Overflow(_) => ZonoStatus::Overflow,
            Error::Degenerate { .. } => ZonoStatus::Degenerate,
            Error::NonLatticeTranslate => ZonoStatus::NonLatticeTranslate,
            Error::BudgetExceeded { .. } => ZonoStatus::BudgetExceeded,
            Error::ClassificationContradiction(_) => ZonoStatus::Contradiction,
            Error::Mismatch(_) => ZonoStatus::Mismatch,
            _ => ZonoStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

fn fail<T>(status: ZonoStatus, msg: impl Into<String>) -> FfiResult<T> {
    Err(Failure(status, msg.into()))
}

fn guard(f: impl FnOnce() -> FfiResult<()>) -> ZonoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            ZonoStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ZonoStatus::Panic
        }
    }
}

unsafe fn handle<'a>(z: *const ZonoZonotope) -> FfiResult<&'a Zonotope> {
    match z.as_ref() {
        Some(h) => Ok(&h.0),
        None => fail(ZonoStatus::NullPointer, "null zonotope handle"),
    }
}

unsafe fn out_slice<'a, T>(p: *mut T, len: usize, needed: usize, what: &str) -> FfiResult<&'a mut [T]> {
    if p.is_null() {
        return fail(ZonoStatus::NullPointer, format!("null {what} buffer"));
    }
    if len < needed {
        return fail(ZonoStatus::BufferTooSmall, format!("{what} needs {needed} entries, got {len}"));
    }
    Ok(slice::from_raw_parts_mut(p, len))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> FfiResult<&'a mut T> {
    p.as_mut()
        .map_or_else(|| fail(ZonoStatus::NullPointer, format!("null {what} pointer")), Ok)
}

fn to_i64(x: &BigInt) -> FfiResult<i64> {
    x.to_i64()
        .map_or_else(|| fail(ZonoStatus::Overflow, format!("{x} does not fit in 64 bits")), Ok)
}

fn write_rationals(values: &[BigRational], num: &mut [i64], den: &mut [i64]) -> FfiResult<()> {
    for (i, v) in values.iter().enumerate() {
        num[i] = to_i64(v.numer())?;
        den[i] = to_i64(v.denom())?;
    }
    Ok(())
}

unsafe fn read_rationals(num: *const i64, den: *const i64, n: usize) -> FfiResult<Vec<BigRational>> {
    if n > 0 && (num.is_null() || den.is_null()) {
        return fail(ZonoStatus::NullPointer, "null rational input");
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let (num, den) = (slice::from_raw_parts(num, n), slice::from_raw_parts(den, n));
    num.iter()
        .zip(den)
        .map(|(&p, &q)| {
            if q == 0 {
                fail(ZonoStatus::InvalidArgument, "zero denominator")
            } else {
                Ok(BigRational::new(p.into(), q.into()))
            }
        })
        .collect()
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> FfiResult<&'a str> {
    if s.is_null() {
        return fail(ZonoStatus::NullPointer, format!("null {what}"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_or_else(|_| fail(ZonoStatus::InvalidArgument, format!("{what} is not UTF-8")), Ok)
}

fn into_c_string(s: String) -> FfiResult<*mut c_char> {
    CString::new(s)
        .map(CString::into_raw)
        .map_or_else(|_| fail(ZonoStatus::InvalidArgument, "string contains NUL"), Ok)
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn zonoehr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn zonoehr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a zonotope from `num_generators` generators of length `dim`, stored
/// row after row in `generators`. `translate_num`/`translate_den` may both be
/// null for the origin.
///
/// # Safety
/// Pointers must be valid for the stated lengths; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_zonotope_new(
    dim: usize,
    generators: *const i64,
    num_generators: usize,
    translate_num: *const i64,
    translate_den: *const i64,
    out: *mut *mut ZonoZonotope,
) -> ZonoStatus {
    guard(|| {
        let out = out_ref(out, "output handle")?;
        if dim == 0 {
            return fail(ZonoStatus::InvalidArgument, "dim must be positive");
        }
        if num_generators > 0 && generators.is_null() {
            return fail(ZonoStatus::NullPointer, "null generators");
        }
        let flat = if num_generators == 0 {
            &[][..]
        } else {
            slice::from_raw_parts(generators, dim * num_generators)
        };
        let gens = flat.chunks(dim).map(IntVector::from_i64s).collect();
        let translate = if translate_num.is_null() && translate_den.is_null() {
            None
        } else {
            Some(read_rationals(translate_num, translate_den, dim)?)
        };
        let z = Zonotope::new(dim, gens, translate)?;
        *out = Box::into_raw(Box::new(ZonoZonotope(z)));
        Ok(())
    })
}

/// Creates a zonotope from a JSON document
/// `{"dim": d, "generators": [[...], ...], "translate": ["p/q", ...], "merge_parallel": bool}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_zonotope_from_json(json: *const c_char, out: *mut *mut ZonoZonotope) -> ZonoStatus {
    guard(|| {
        let out = out_ref(out, "output handle")?;
        let z = ZonotopeDocument::from_json(c_str(json, "json")?)?.to_zonotope(false)?;
        *out = Box::into_raw(Box::new(ZonoZonotope(z)));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `z` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_zonotope_free(z: *mut ZonoZonotope) {
    if !z.is_null() {
        drop(Box::from_raw(z));
    }
}

/// Ambient dimension, or 0 for a null handle.
///
/// # Safety
/// `z` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_zonotope_dim(z: *const ZonoZonotope) -> usize {
    z.as_ref().map_or(0, |h| h.0.dim())
}

/// Number of (nonzero) generators, or 0 for a null handle.
///
/// # Safety
/// `z` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_zonotope_num_generators(z: *const ZonoZonotope) -> usize {
    z.as_ref().map_or(0, |h| h.0.num_generators())
}

/// Ehrhart polynomial from the gcd-of-minors formula: `dim + 1` ascending
/// integer coefficients. Requires an integer translate.
///
/// # Safety
/// `coeffs` must hold `len` entries.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_ehrhart(z: *const ZonoZonotope, coeffs: *mut i64, len: usize) -> ZonoStatus {
    guard(|| {
        let z = handle(z)?;
        let out = out_slice(coeffs, len, z.dim() + 1, "coefficient")?;
        let p = ehrhart_stanley(z)?;
        for (k, slot) in out.iter_mut().enumerate().take(z.dim() + 1) {
            *slot = to_i64(&p.coeff(k).to_integer())?;
        }
        Ok(())
    })
}

/// Interpolant through brute-force lattice-point counts of the dilates
/// `0..=dim`: `dim + 1` ascending rational coefficients. `budget` 0 means the
/// default cell budget.
///
/// # Safety
/// `num` and `den` must hold `len` entries.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_ehrhart_oracle(
    z: *const ZonoZonotope,
    budget: u64,
    num: *mut i64,
    den: *mut i64,
    len: usize,
) -> ZonoStatus {
    guard(|| {
        let z = handle(z)?;
        let n = z.dim() + 1;
        let (num, den) = (out_slice(num, len, n, "numerator")?, out_slice(den, len, n, "denominator")?);
        let p = ehrhart_oracle(z, budget_or_default(budget))?;
        let coeffs: Vec<BigRational> = (0..n).map(|k| p.coeff(k)).collect();
        write_rationals(&coeffs, num, den)
    })
}

fn budget_or_default(budget: u64) -> u128 {
    if budget == 0 {
        DEFAULT_CELL_BUDGET
    } else {
        budget as u128
    }
}

/// `c`-vector `(c_1, ..., c_dim)`; `valid` receives whether all entries are
/// nonnegative integers.
///
/// # Safety
/// `num` and `den` must hold `len` entries; `valid` may be null.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_cvector(
    z: *const ZonoZonotope,
    num: *mut i64,
    den: *mut i64,
    len: usize,
    valid: *mut bool,
) -> ZonoStatus {
    guard(|| {
        let z = handle(z)?;
        let d = z.dim();
        let (num, den) = (out_slice(num, len, d, "numerator")?, out_slice(den, len, d, "denominator")?);
        let c = to_cbasis(&ehrhart_stanley(z)?, d)?;
        write_rationals(&c.c, num, den)?;
        if let Some(v) = valid.as_mut() {
            *v = c.is_valid();
        }
        Ok(())
    })
}

/// `h*`-vector `(h*_0, ..., h*_dim)`.
///
/// # Safety
/// `num` and `den` must hold `len` entries; `valid` may be null.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_hstar(
    z: *const ZonoZonotope,
    num: *mut i64,
    den: *mut i64,
    len: usize,
    valid: *mut bool,
) -> ZonoStatus {
    guard(|| {
        let z = handle(z)?;
        let n = z.dim() + 1;
        let (num, den) = (out_slice(num, len, n, "numerator")?, out_slice(den, len, n, "denominator")?);
        let h = hstar_from_poly(&ehrhart_stanley(z)?, z.dim())?;
        write_rationals(&h.h, num, den)?;
        if let Some(v) = valid.as_mut() {
            *v = h.is_valid();
        }
        Ok(())
    })
}

/// Degree of the `h*`-polynomial.
///
/// # Safety
/// `degree` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_degree(z: *const ZonoZonotope, degree: *mut usize) -> ZonoStatus {
    guard(|| {
        let z = handle(z)?;
        let out = out_ref(degree, "degree")?;
        *out = degree_of(&ehrhart_stanley(z)?, z.dim())?;
        Ok(())
    })
}

/// Interior lattice points: `|ehr(-1)|` when `count` is false, brute-force
/// enumeration within `budget` (0 for the default) when true.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_interior_count(
    z: *const ZonoZonotope,
    count: bool,
    budget: u64,
    out: *mut u64,
) -> ZonoStatus {
    guard(|| {
        let z = handle(z)?;
        let out = out_ref(out, "count")?;
        if !z.is_full_dimensional() {
            return fail(ZonoStatus::Degenerate, "interior of a lower-dimensional zonotope");
        }
        *out = if count {
            z.count_interior_lattice_points(1, budget_or_default(budget))?
        } else {
            let n = interior_count_reciprocity(&ehrhart_stanley(z)?)?;
            n.to_u64()
                .map_or_else(|| fail(ZonoStatus::Overflow, n.to_string()), Ok)?
        };
        Ok(())
    })
}

/// Lattice width and the lexicographically smallest primitive direction
/// attaining it (`len >= dim`).
///
/// # Safety
/// `width` must be writable; `witness` must hold `len` entries.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_lattice_width(
    z: *const ZonoZonotope,
    budget: u64,
    width: *mut i64,
    witness: *mut i64,
    len: usize,
) -> ZonoStatus {
    guard(|| {
        let z = handle(z)?;
        let width = out_ref(width, "width")?;
        let witness = out_slice(witness, len, z.dim(), "witness")?;
        let lw = z.lattice_width_with_budget(budget_or_default(budget))?;
        *width = to_i64(&lw.width)?;
        for (slot, x) in witness.iter_mut().zip(lw.witness.entries()) {
            *slot = to_i64(x)?;
        }
        Ok(())
    })
}

fn write_map(m: &IntMatrix, s: &IntVector, transform: *mut i64, shift: *mut i64) -> FfiResult<()> {
    unsafe {
        if let Some(t) = transform.as_mut() {
            let t = slice::from_raw_parts_mut(t as *mut i64, 9);
            for i in 0..3 {
                for j in 0..3 {
                    t[3 * i + j] = to_i64(m.entry(i, j))?;
                }
            }
        }
        if let Some(p) = shift.as_mut() {
            let p = slice::from_raw_parts_mut(p as *mut i64, 3);
            for (slot, x) in p.iter_mut().zip(s.entries()) {
                *slot = to_i64(x)?;
            }
        }
    }
    Ok(())
}

/// Degree-2 classification of a full-dimensional 3D lattice zonotope (after
/// merging parallel generators). When non-null, `transform` (9 entries, row
/// major) and `shift` (3 entries) receive the unimodular map `x -> Ux + s`
/// onto `Q x [0,1]` or onto the exceptional parallelepiped.
///
/// # Safety
/// `class_out` must be writable; `transform` and `shift` must be null or hold
/// 9 and 3 entries.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_classify_3d_deg2(
    z: *const ZonoZonotope,
    budget: u64,
    class_out: *mut ZonoDegree2Class,
    transform: *mut i64,
    shift: *mut i64,
) -> ZonoStatus {
    guard(|| {
        let z = handle(z)?;
        let class_out = out_ref(class_out, "class")?;
        let c = classify_3d_deg2(z, budget_or_default(budget))?;
        *class_out = match &c.class {
            Degree2Class::Width1Product(dec) => {
                write_map(&dec.transform, &dec.shift, transform, shift)?;
                ZonoDegree2Class::Width1Product
            }
            Degree2Class::Exceptional(eq) => {
                write_map(&eq.transform, &eq.shift, transform, shift)?;
                ZonoDegree2Class::Exceptional
            }
            Degree2Class::NotDegree2 { .. } => ZonoDegree2Class::NotDegree2,
        };
        Ok(())
    })
}

/// Runs the checker named `scheme` (`scott`, `treutlein`, `zono2d`,
/// `zono3d-deg2`, `hstar2d`, `hstar3d-deg2`) on `n` rational coefficients.
///
/// # Safety
/// `scheme` must be NUL-terminated; `num`/`den` must hold `n` entries;
/// `accepted` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_check(
    scheme: *const c_char,
    num: *const i64,
    den: *const i64,
    n: usize,
    strict_treutlein: bool,
    accepted: *mut bool,
) -> ZonoStatus {
    guard(|| {
        let accepted = out_ref(accepted, "accepted")?;
        let scheme: Scheme = c_str(scheme, "scheme")?.parse()?;
        let args = read_rationals(num, den, n)?;
        *accepted = scheme.check(&args, strict_treutlein)?.accepted;
        Ok(())
    })
}

/// Like [`zonoehr_check`], returning the verdict as a JSON object with
/// `accepted`, `case_label`, `reason` and `witness`. Free the string with
/// `zonoehr_string_free`.
///
/// # Safety
/// As for [`zonoehr_check`]; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_check_json(
    scheme: *const c_char,
    num: *const i64,
    den: *const i64,
    n: usize,
    strict_treutlein: bool,
    out: *mut *mut c_char,
) -> ZonoStatus {
    guard(|| {
        let out = out_ref(out, "output string")?;
        let scheme: Scheme = c_str(scheme, "scheme")?.parse()?;
        let args = read_rationals(num, den, n)?;
        let v = check_with_witness(scheme, &args, strict_treutlein)?;
        let witness = match &v.witness {
            Some(zonoehr::classify::Witness::Zonotope(z)) => Some(ZonotopeDocument::from_zonotope(z)?),
            _ => None,
        };
        let witness = witness.map(serde_json::to_value).transpose().map_err(|e| Failure(ZonoStatus::Panic, e.to_string()))?;
        let text = serde_json::json!({
            "accepted": v.accepted,
            "case_label": v.case_label,
            "reason": v.reason,
            "witness": witness,
        })
        .to_string();
        *out = into_c_string(text)?;
        Ok(())
    })
}

/// `A^d_j(t)`: `d` ascending integer coefficients (degree below `d`).
///
/// # Safety
/// `coeffs` must hold `len` entries.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_eulerian(d: usize, j: usize, coeffs: *mut i64, len: usize) -> ZonoStatus {
    guard(|| {
        let out = out_slice(coeffs, len, d.max(1), "coefficient")?;
        let p = eulerian_aj(d, j)?;
        for (k, slot) in out.iter_mut().enumerate().take(d) {
            *slot = to_i64(&p.coeff(k).to_integer())?;
        }
        Ok(())
    })
}

/// The full Ehrhart report (the CLI's `ehrhart --json` output without
/// timings). Free the string with `zonoehr_string_free`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_ehrhart_report_json(
    z: *const ZonoZonotope,
    verify: bool,
    budget: u64,
    out: *mut *mut c_char,
) -> ZonoStatus {
    guard(|| {
        let z = handle(z)?;
        let out = out_ref(out, "output string")?;
        let (report, _) = cmd_ehrhart_report(z, verify, budget_or_default(budget))?;
        *out = into_c_string(report.to_string())?;
        Ok(())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn zonoehr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
