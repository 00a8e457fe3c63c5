//! C ABI for `cubic-congruence`.
//!
//! Every fallible function returns a [`CcStatus`] and writes results through
//! out-pointers. Lists are returned as opaque handles that the caller frees
//! with the matching `*_free` function. Integers that do not fit in 64 bits
//! produce `CC_STATUS_OVERFLOW`. The message for the most recent failure on
//! the calling thread is available from [`cc_last_error_message`].
//!
//! Pointer arguments must be NULL or valid for the access the function
//! documents; handles must come from this library and be freed once.

// Exported functions are safe to call from Rust with null pointers; the
// remaining pointer contract is the C one stated above.
#![allow(clippy::not_unsafe_ptr_arg_deref)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cubic_congruence::parametrization::{self, GammaData, RationalPoint};
use cubic_congruence::root_finder::{self, RootPair};
use cubic_congruence::sieve_check::{self, CoeffSeq};
use cubic_congruence::torus_geometry::{self, TorsionPoint};
use cubic_congruence::{Error, ErrorKind};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    /// Invalid argument, such as a zero modulus.
    Argument = 1,
    /// Mathematically invalid input, such as a residue that is not a root.
    Domain = 2,
    /// Internal invariant violation.
    Internal = 3,
    NullPointer = 4,
    /// A value does not fit the 64-bit C representation.
    Overflow = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcSeqKind {
    Ones = 0,
    /// `a_{k,l} = e(-(k nu0 + l nu0^2)/m0)`.
    Spike = 1,
    /// Seeded independent +-1 entries.
    Random = 2,
}

/// Generator `a + b 2^{1/3} + c 2^{2/3}`, Bezout data and root pair.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CcGamma {
    pub m: u64,
    pub nu: u64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub u: i64,
    pub v: i64,
    pub w: i64,
}

/// The point `(n1/den, n2/den)`, unreduced.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CcRationalPoint {
    pub n1: i64,
    pub n2: i64,
    pub den: i64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CcSieveReport {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub pair_count: u64,
}

/// Opaque list of residues.
pub struct CcRootList {
    roots: Vec<u64>,
}

/// Opaque list of generators.
pub struct CcGeneratorTable {
    rows: Vec<CcGamma>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CcStatus {
    match (e, e.kind()) {
        (Error::Overflow(_), _) => CcStatus::Overflow,
        (_, ErrorKind::Argument) => CcStatus::Argument,
        (_, ErrorKind::Domain) => CcStatus::Domain,
        (_, ErrorKind::Internal) => CcStatus::Internal,
    }
}

fn fail(status: CcStatus, msg: &str) -> CcStatus {
    set_last_error(msg);
    status
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), CcStatus>) -> CcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(CcStatus::Internal, "panic inside the library"),
    }
}

fn lib<T>(r: cubic_congruence::Result<T>) -> Result<T, CcStatus> {
    r.map_err(|e| fail(status_of(&e), &e.to_string()))
}

fn narrow(x: i128) -> Result<i64, CcStatus> {
    i64::try_from(x).map_err(|_| fail(CcStatus::Overflow, &format!("{x} does not fit in 64 bits")))
}

fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, CcStatus> {
    // SAFETY: the caller passes either NULL or a valid, writable pointer.
    unsafe { p.as_mut() }.ok_or_else(|| fail(CcStatus::NullPointer, "null output pointer"))
}

fn in_ref<'a, T>(p: *const T) -> Result<&'a T, CcStatus> {
    // SAFETY: the caller passes either NULL or a valid pointer.
    unsafe { p.as_ref() }.ok_or_else(|| fail(CcStatus::NullPointer, "null input pointer"))
}

fn to_c_gamma(g: &GammaData) -> Result<CcGamma, CcStatus> {
    Ok(CcGamma {
        m: g.m,
        nu: g.nu,
        a: narrow(g.a)?,
        b: narrow(g.b)?,
        c: narrow(g.c)?,
        u: narrow(g.u)?,
        v: narrow(g.v)?,
        w: narrow(g.w)?,
    })
}

fn from_c_gamma(g: &CcGamma) -> Result<GammaData, CcStatus> {
    let x = cubic_congruence::CubicInt::new(g.a.into(), g.b.into(), g.c.into());
    let data = lib(GammaData::with_uvw(&x, g.u.into(), g.v.into(), g.w.into()))?;
    if (data.m, data.nu) != (g.m, g.nu) {
        return Err(fail(
            CcStatus::Domain,
            "m and nu disagree with the generator data",
        ));
    }
    Ok(data)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn cc_status_message(status: CcStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        CcStatus::Ok => b"ok\0",
        CcStatus::Argument => b"invalid argument\0",
        CcStatus::Domain => b"domain error\0",
        CcStatus::Internal => b"internal error\0",
        CcStatus::NullPointer => b"null pointer\0",
        CcStatus::Overflow => b"integer overflow\0",
    };
    s.as_ptr().cast()
}

/// Message of the last failure on this thread; valid until the next call
/// into the library from the same thread.
#[no_mangle]
pub extern "C" fn cc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// All roots of `x^3 = 2 (mod m)`, ascending. Free with `cc_root_list_free`.
#[no_mangle]
pub extern "C" fn cc_roots(m: u64, out: *mut *mut CcRootList) -> CcStatus {
    guard(|| {
        let out = out_ref(out)?;
        let roots = lib(root_finder::roots_fast(m))?;
        *out = Box::into_raw(Box::new(CcRootList { roots }));
        Ok(())
    })
}

/// Number of roots in `list`; 0 for NULL.
#[no_mangle]
pub extern "C" fn cc_root_list_len(list: *const CcRootList) -> usize {
    // SAFETY: NULL or a handle from `cc_roots`.
    unsafe { list.as_ref() }.map_or(0, |l| l.roots.len())
}

#[no_mangle]
pub extern "C" fn cc_root_list_get(
    list: *const CcRootList,
    index: usize,
    out_nu: *mut u64,
) -> CcStatus {
    guard(|| {
        let list = in_ref(list)?;
        let out = out_ref(out_nu)?;
        *out = *list
            .roots
            .get(index)
            .ok_or_else(|| fail(CcStatus::Argument, "index out of range"))?;
        Ok(())
    })
}

/// Releases a list from `cc_roots`; NULL is ignored.
#[no_mangle]
pub extern "C" fn cc_root_list_free(list: *mut CcRootList) {
    if !list.is_null() {
        // SAFETY: produced by `Box::into_raw` in `cc_roots` and freed once.
        drop(unsafe { Box::from_raw(list) });
    }
}

/// One domain generator per root pair with `M < m <= 2M`, ordered by
/// `(m, nu)`. Free with `cc_generator_table_free`.
#[no_mangle]
pub extern "C" fn cc_enumerate_generators(big_m: u64, out: *mut *mut CcGeneratorTable) -> CcStatus {
    guard(|| {
        let out = out_ref(out)?;
        let rows = lib(parametrization::enumerate_generators(big_m))?
            .iter()
            .map(to_c_gamma)
            .collect::<Result<Vec<_>, _>>()?;
        *out = Box::into_raw(Box::new(CcGeneratorTable { rows }));
        Ok(())
    })
}

/// Number of rows in `table`; 0 for NULL.
#[no_mangle]
pub extern "C" fn cc_generator_table_len(table: *const CcGeneratorTable) -> usize {
    // SAFETY: NULL or a handle from `cc_enumerate_generators`.
    unsafe { table.as_ref() }.map_or(0, |t| t.rows.len())
}

#[no_mangle]
pub extern "C" fn cc_generator_table_get(
    table: *const CcGeneratorTable,
    index: usize,
    out: *mut CcGamma,
) -> CcStatus {
    guard(|| {
        let table = in_ref(table)?;
        let out = out_ref(out)?;
        *out = *table
            .rows
            .get(index)
            .ok_or_else(|| fail(CcStatus::Argument, "index out of range"))?;
        Ok(())
    })
}

/// Releases a table from `cc_enumerate_generators`; NULL is ignored.
#[no_mangle]
pub extern "C" fn cc_generator_table_free(table: *mut CcGeneratorTable) {
    if !table.is_null() {
        // SAFETY: produced by `Box::into_raw` and freed once.
        drop(unsafe { Box::from_raw(table) });
    }
}

/// The domain generator of the ideal attached to `(m, nu)`, with Bezout data.
#[no_mangle]
pub extern "C" fn cc_generator_from_root(m: u64, nu: u64, out: *mut CcGamma) -> CcStatus {
    guard(|| {
        let out = out_ref(out)?;
        let root = lib(RootPair::new(m, nu))?;
        let x = lib(parametrization::generator_from_root(&root))?;
        *out = to_c_gamma(&lib(GammaData::from_generator(&x))?)?;
        Ok(())
    })
}

/// Writes the three approximation points to `out[0..3]`.
#[no_mangle]
pub extern "C" fn cc_approximations(gamma: *const CcGamma, out: *mut CcRationalPoint) -> CcStatus {
    guard(|| {
        let g = from_c_gamma(in_ref(gamma)?)?;
        if out.is_null() {
            return Err(fail(CcStatus::NullPointer, "null output pointer"));
        }
        let points = lib(parametrization::approximations(&g))?;
        for (i, p) in points.iter().enumerate() {
            let c = CcRationalPoint {
                n1: narrow(p.n1)?,
                n2: narrow(p.n2)?,
                den: narrow(p.den)?,
            };
            // SAFETY: the caller provides room for three points.
            unsafe { out.add(i).write(c) };
        }
        Ok(())
    })
}

/// Rebuilds generator data from the three approximation points, given in
/// the order produced by `cc_approximations`.
#[no_mangle]
pub extern "C" fn cc_recover_root(points: *const CcRationalPoint, out: *mut CcGamma) -> CcStatus {
    guard(|| {
        let out = out_ref(out)?;
        if points.is_null() {
            return Err(fail(CcStatus::NullPointer, "null input pointer"));
        }
        // SAFETY: the caller provides three readable points.
        let pts = unsafe { std::slice::from_raw_parts(points, 3) };
        let conv =
            |p: &CcRationalPoint| lib(RationalPoint::new(p.n1.into(), p.n2.into(), p.den.into()));
        let pts = [conv(&pts[0])?, conv(&pts[1])?, conv(&pts[2])?];
        let g = lib(parametrization::recover_root(
            &parametrization::columns_from_points(&pts),
        ))?;
        *out = to_c_gamma(&g)?;
        Ok(())
    })
}

/// Shortest integral line through `(r/q, s/q)`, as a Euclidean length.
#[no_mangle]
pub extern "C" fn cc_min_line_norm(r: i64, s: i64, q: i64, out: *mut f64) -> CcStatus {
    guard(|| {
        let out = out_ref(out)?;
        let t = lib(TorsionPoint::new(r, s, q))?;
        *out = torus_geometry::min_line_norm(&t);
        Ok(())
    })
}

/// Both sides of the large sieve inequality. `seed` is used by
/// `CC_SEQ_KIND_RANDOM`; `m0, nu0` by `CC_SEQ_KIND_SPIKE`.
#[no_mangle]
pub extern "C" fn cc_sieve_ratio(
    big_m: u64,
    k: usize,
    l: usize,
    kind: CcSeqKind,
    seed: u64,
    m0: u64,
    nu0: u64,
    out: *mut CcSieveReport,
) -> CcStatus {
    guard(|| {
        let out = out_ref(out)?;
        let seq = lib(match kind {
            CcSeqKind::Ones => CoeffSeq::make_ones(k, l),
            CcSeqKind::Spike => CoeffSeq::make_spike(m0, nu0, k, l),
            CcSeqKind::Random => CoeffSeq::make_random(k, l, seed),
        })?;
        let r = lib(sieve_check::sieve_ratio(big_m, &seq))?;
        *out = CcSieveReport {
            lhs: r.lhs,
            rhs: r.rhs,
            ratio: r.ratio,
            pair_count: r.pair_count as u64,
        };
        Ok(())
    })
}
