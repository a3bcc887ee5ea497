//! C ABI over `coxcone`.
//!
//! A system is loaded once into an opaque `CoxconeSystem` and queried through
//! functions that return a [`CoxconeStatus`]. Subsets are 64-bit masks with bit
//! `i` standing for index `i + 1`; Coxeter words use 1-based letters.
//! `coxcone_run` gives access to every command line report.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use coxcone::titscone::TitsCone;
use coxcone::{Error, Subset, SystemSpec};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoxconeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    Precondition = 5,
    BoundExceeded = 6,
    NotFound = 7,
    BufferTooSmall = 8,
    Internal = 9,
}

impl From<&Error> for CoxconeStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => CoxconeStatus::Parse,
            Error::DimensionMismatch(_)
            | Error::NotGcm { .. }
            | Error::RootBaseViolation(_)
            | Error::InvalidCharacteristic(_) => CoxconeStatus::Validation,
            Error::Precondition(_) => CoxconeStatus::Precondition,
            Error::DimensionBound(_) | Error::SizeBound(_) => CoxconeStatus::BoundExceeded,
            Error::NotFound(_) => CoxconeStatus::NotFound,
            Error::Internal(_) => CoxconeStatus::Internal,
        }
    }
}

/// A validated root base with its Coxeter group and facial sets.
pub struct CoxconeSystem {
    tits: TitsCone,
}

fn guard(f: impl FnOnce() -> Result<(), CoxconeStatus>) -> CoxconeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CoxconeStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => CoxconeStatus::Internal,
    }
}

fn lib<T>(r: coxcone::Result<T>) -> Result<T, CoxconeStatus> {
    r.map_err(|e| CoxconeStatus::from(&e))
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, CoxconeStatus> {
    if p.is_null() {
        return Err(CoxconeStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| CoxconeStatus::InvalidUtf8)
}

unsafe fn system<'a>(p: *const CoxconeSystem) -> Result<&'a CoxconeSystem, CoxconeStatus> {
    p.as_ref().ok_or(CoxconeStatus::NullPointer)
}

unsafe fn word<'a>(p: *const u32, len: usize) -> Result<&'a [u32], CoxconeStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(CoxconeStatus::NullPointer);
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn mask(sys: &CoxconeSystem, m: u64) -> Result<Subset, CoxconeStatus> {
    let s = Subset(m);
    if !s.is_subset(Subset::full(sys.tits.rb.n())) {
        return Err(CoxconeStatus::Precondition);
    }
    Ok(s)
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn coxcone_status_message(status: CoxconeStatus) -> *const c_char {
    let s: &'static CStr = match status {
        CoxconeStatus::Ok => c"ok",
        CoxconeStatus::NullPointer => c"null pointer argument",
        CoxconeStatus::InvalidUtf8 => c"string argument is not UTF-8",
        CoxconeStatus::Parse => c"malformed input",
        CoxconeStatus::Validation => c"input fails validation",
        CoxconeStatus::Precondition => c"precondition violated",
        CoxconeStatus::BoundExceeded => c"size or dimension bound exceeded",
        CoxconeStatus::NotFound => c"not found within the step bound",
        CoxconeStatus::BufferTooSmall => c"output buffer too small",
        CoxconeStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Loads a system from its JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer. On success
/// `*out` must later be released with [`coxcone_system_free`].
#[no_mangle]
pub unsafe extern "C" fn coxcone_system_from_json(json: *const c_char, out: *mut *mut CoxconeSystem) -> CoxconeStatus {
    guard(|| {
        if out.is_null() {
            return Err(CoxconeStatus::NullPointer);
        }
        let text = str_arg(json)?;
        let rb = lib(SystemSpec::from_json(text).and_then(|s| s.root_base()))?;
        let tits = lib(TitsCone::new(&rb))?;
        *out = Box::into_raw(Box::new(CoxconeSystem { tits }));
        Ok(())
    })
}

/// # Safety
/// `sys` must come from [`coxcone_system_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn coxcone_system_free(sys: *mut CoxconeSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Number of simple reflections.
///
/// # Safety
/// `sys` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn coxcone_system_rank(sys: *const CoxconeSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.tits.rb.n())
}

/// Dimension of the realization space.
///
/// # Safety
/// `sys` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn coxcone_system_dim(sys: *const CoxconeSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.tits.rb.dim)
}

/// Writes all facial sets (`special == 0`) or the special ones as masks.
///
/// `*len` receives the number of sets; when it exceeds `cap` nothing is written
/// and `BufferTooSmall` is returned, so callers may probe with `cap = 0`.
///
/// # Safety
/// `sys` must be a live handle, `buf` valid for `cap` writes and `len` valid.
#[no_mangle]
pub unsafe extern "C" fn coxcone_facial_sets(
    sys: *const CoxconeSystem,
    special: i32,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> CoxconeStatus {
    guard(|| {
        let s = system(sys)?;
        if len.is_null() {
            return Err(CoxconeStatus::NullPointer);
        }
        let fam = &s.tits.family;
        let list = if special != 0 { &fam.special } else { &fam.all };
        *len = list.len();
        if list.len() > cap {
            return Err(CoxconeStatus::BufferTooSmall);
        }
        if buf.is_null() && !list.is_empty() {
            return Err(CoxconeStatus::NullPointer);
        }
        for (i, j) in list.iter().enumerate() {
            *buf.add(i) = j.0;
        }
        Ok(())
    })
}

/// Whether the subset `j` is facial.
///
/// # Safety
/// `sys` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn coxcone_is_facial(sys: *const CoxconeSystem, j: u64, out: *mut bool) -> CoxconeStatus {
    guard(|| {
        let s = system(sys)?;
        let j = mask(s, j)?;
        *out.as_mut().ok_or(CoxconeStatus::NullPointer)? = s.tits.family.contains(j);
        Ok(())
    })
}

/// Whether `σ_a R(Θ_a) ⊆ σ_b R(Θ_b)` in the Tits cone.
///
/// # Safety
/// `sys` must be a live handle, the words valid for their lengths and `out` valid.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn coxcone_tits_leq(
    sys: *const CoxconeSystem,
    theta_a: u64,
    word_a: *const u32,
    len_a: usize,
    theta_b: u64,
    word_b: *const u32,
    len_b: usize,
    out: *mut bool,
) -> CoxconeStatus {
    guard(|| {
        let s = system(sys)?;
        let t = &s.tits;
        let handle = |theta: u64, w: &[u32]| -> Result<_, CoxconeStatus> {
            let letters: Vec<usize> = w.iter().map(|&i| (i as usize).wrapping_sub(1)).collect();
            let sigma = lib(t.group.from_word(&letters))?;
            lib(t.handle(mask(s, theta)?, &sigma))
        };
        let a = handle(theta_a, word(word_a, len_a)?)?;
        let b = handle(theta_b, word(word_b, len_b)?)?;
        *out.as_mut().ok_or(CoxconeStatus::NullPointer)? = t.leq(&a, &b);
        Ok(())
    })
}

/// Runs a command line (`argv[0]` is the program name) and returns its exit
/// code; the report is stored in `*out`, to be released with [`coxcone_string_free`].
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn coxcone_run(argc: usize, argv: *const *const c_char, out: *mut *mut c_char) -> i32 {
    let res = catch_unwind(AssertUnwindSafe(|| -> Result<i32, CoxconeStatus> {
        if out.is_null() || (argv.is_null() && argc > 0) {
            return Err(CoxconeStatus::NullPointer);
        }
        let args: Vec<String> =
            (0..argc).map(|i| str_arg(*argv.add(i)).map(str::to_owned)).collect::<Result<_, _>>()?;
        let o = coxcone::cli::run(args);
        let text = if o.code == 0 || !o.stdout.is_empty() { o.stdout } else { o.stderr };
        *out = CString::new(text).map_err(|_| CoxconeStatus::Internal)?.into_raw();
        Ok(o.code)
    }));
    match res {
        Ok(Ok(code)) => code,
        Ok(Err(_)) => 2,
        Err(_) => 1,
    }
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn coxcone_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
