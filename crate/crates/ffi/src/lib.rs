//! C ABI over the transform library: opaque handles, status codes, and flat
//! double buffers. Every constructor has a matching `_free`; output handles
//! are written through out-parameters only on `NLFT_STATUS_OK`.

use std::os::raw::c_char;

use num_complex::Complex64 as C64;

use nlft_core::delta::{self, DeltaDistribution, Pole};
use nlft_core::dual;
use nlft_core::euler::{self, DiscreteSignal, GridMat};
use nlft_core::exppoly::{ExpMat, ExpPoly, Term};
use nlft_core::su2::QMat;
use nlft_core::{complexity, Error, Tolerances};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NlftStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was out of range or inconsistent.
    InvalidArgument = 2,
    /// The input data violates the type's invariants.
    InvalidInput = 3,
    /// The input is valid but not in the transform's image.
    NotInImage = 4,
    /// The samples do not come from a constant-mass configuration.
    NotConstMass = 5,
    /// A brute-force size cap was exceeded.
    TooLarge = 6,
    /// A numerical floor was hit (singular matrix, vanishing read-off).
    NumericalFailure = 7,
    /// The caller-provided buffer is too small.
    BufferTooSmall = 8,
}

/// Tolerance bundle; pass null wherever accepted to use the defaults
/// (1e-9, 1e-12, 1e-8, 1e-7).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct NlftTolerances {
    pub eps_f: f64,
    pub eps_c: f64,
    pub eps_peel: f64,
    pub eps_member: f64,
}

/// Dirac comb with strictly increasing poles in (0, 1).
pub struct NlftComb(DeltaDistribution);

/// Matrix-valued exponential polynomial (the comb transform's value).
pub struct NlftExpMat(ExpMat);

/// Sampled matrices of the uniform-grid transform at z = 0, ..., N-1.
pub struct NlftGrid(GridMat);

fn status_of(err: &Error) -> NlftStatus {
    match err {
        Error::NotInImage(_) => NlftStatus::NotInImage,
        Error::NotConstMass(_) => NlftStatus::NotConstMass,
        Error::TooLarge { .. } => NlftStatus::TooLarge,
        Error::SingularMatrix { .. }
        | Error::VanishingDiagonal { .. }
        | Error::VanishingC { .. }
        | Error::EmptyOffDiagonal
        | Error::EmptyPoly => NlftStatus::NumericalFailure,
        Error::LengthMismatch { .. } | Error::EpsilonTooLarge { .. } | Error::BadConstraints(_) => {
            NlftStatus::InvalidArgument
        }
        _ => NlftStatus::InvalidInput,
    }
}

unsafe fn tolerances(ptr: *const NlftTolerances) -> Tolerances {
    if ptr.is_null() {
        Tolerances::default()
    } else {
        let t = &*ptr;
        Tolerances {
            eps_f: t.eps_f,
            eps_c: t.eps_c,
            eps_peel: t.eps_peel,
            eps_member: t.eps_member,
        }
    }
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> NlftStatus {
    if out.is_null() {
        return NlftStatus::NullPointer;
    }
    *out = Box::into_raw(Box::new(value));
    NlftStatus::Ok
}

/// Builds a comb from parallel arrays of pole positions and weight parts.
///
/// # Safety
/// `x`, `re`, `im` must point to `len` readable doubles; `out` must be a
/// valid location for a handle.
#[no_mangle]
pub unsafe extern "C" fn nlft_comb_new(
    x: *const f64,
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut *mut NlftComb,
) -> NlftStatus {
    if (x.is_null() || re.is_null() || im.is_null()) && len > 0 {
        return NlftStatus::NullPointer;
    }
    let mut poles = Vec::with_capacity(len);
    for i in 0..len {
        poles.push(Pole {
            x: *x.add(i),
            u: C64::new(*re.add(i), *im.add(i)),
        });
    }
    match DeltaDistribution::new(poles) {
        Ok(d) => write_out(out, NlftComb(d)),
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `ptr` must have come from `nlft_comb_new` or `nlft_inverse_comb` and not
/// have been freed.
#[no_mangle]
pub unsafe extern "C" fn nlft_comb_free(ptr: *mut NlftComb) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// # Safety
/// `ptr` must be a live comb handle.
#[no_mangle]
pub unsafe extern "C" fn nlft_comb_len(ptr: *const NlftComb) -> usize {
    if ptr.is_null() {
        0
    } else {
        (*ptr).0.len()
    }
}

/// Reads one pole.
///
/// # Safety
/// `ptr` must be a live comb handle; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn nlft_comb_get(
    ptr: *const NlftComb,
    index: usize,
    x: *mut f64,
    re: *mut f64,
    im: *mut f64,
) -> NlftStatus {
    if ptr.is_null() || x.is_null() || re.is_null() || im.is_null() {
        return NlftStatus::NullPointer;
    }
    let poles = (*ptr).0.poles();
    if index >= poles.len() {
        return NlftStatus::InvalidArgument;
    }
    *x = poles[index].x;
    *re = poles[index].u.re;
    *im = poles[index].u.im;
    NlftStatus::Ok
}

/// Transforms a comb; `reduced` drops the leading phase factor (the form the
/// inverse expects).
///
/// # Safety
/// `comb` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nlft_forward_comb(
    comb: *const NlftComb,
    reduced: bool,
    out: *mut *mut NlftExpMat,
) -> NlftStatus {
    if comb.is_null() {
        return NlftStatus::NullPointer;
    }
    let m = delta::forward(&(*comb).0);
    let m = if reduced { delta::reduce(&m) } else { m };
    write_out(out, NlftExpMat(m))
}

/// Builds an exponential-polynomial matrix from term arrays (frequencies
/// with complex coefficients for the diagonal and off-diagonal entries).
/// Terms are normalized with the default tolerances.
///
/// # Safety
/// The six array pointers must match their length arguments; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn nlft_expmat_new(
    a_freq: *const f64,
    a_re: *const f64,
    a_im: *const f64,
    a_len: usize,
    b_freq: *const f64,
    b_re: *const f64,
    b_im: *const f64,
    b_len: usize,
    out: *mut *mut NlftExpMat,
) -> NlftStatus {
    if ((a_freq.is_null() || a_re.is_null() || a_im.is_null()) && a_len > 0)
        || ((b_freq.is_null() || b_re.is_null() || b_im.is_null()) && b_len > 0)
    {
        return NlftStatus::NullPointer;
    }
    let gather = |freq: *const f64, re: *const f64, im: *const f64, len: usize| {
        let mut terms = Vec::with_capacity(len);
        for i in 0..len {
            terms.push(Term::new(*freq.add(i), C64::new(*re.add(i), *im.add(i))));
        }
        ExpPoly::from_terms(terms)
    };
    let m = ExpMat::new(
        gather(a_freq, a_re, a_im, a_len),
        gather(b_freq, b_re, b_im, b_len),
    );
    write_out(out, NlftExpMat(m))
}

/// # Safety
/// `ptr` must have come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn nlft_expmat_free(ptr: *mut NlftExpMat) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// Term count of the diagonal entry.
///
/// # Safety
/// `ptr` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nlft_expmat_len_a(ptr: *const NlftExpMat) -> usize {
    if ptr.is_null() {
        0
    } else {
        (*ptr).0.a.len()
    }
}

/// Term count of the off-diagonal entry.
///
/// # Safety
/// `ptr` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nlft_expmat_len_b(ptr: *const NlftExpMat) -> usize {
    if ptr.is_null() {
        0
    } else {
        (*ptr).0.b.len()
    }
}

unsafe fn get_term(
    poly: &ExpPoly,
    index: usize,
    freq: *mut f64,
    re: *mut f64,
    im: *mut f64,
) -> NlftStatus {
    if freq.is_null() || re.is_null() || im.is_null() {
        return NlftStatus::NullPointer;
    }
    match poly.terms().get(index) {
        Some(t) => {
            *freq = t.freq;
            *re = t.coeff.re;
            *im = t.coeff.im;
            NlftStatus::Ok
        }
        None => NlftStatus::InvalidArgument,
    }
}

/// Reads one diagonal term.
///
/// # Safety
/// `ptr` must be a live handle; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn nlft_expmat_term_a(
    ptr: *const NlftExpMat,
    index: usize,
    freq: *mut f64,
    re: *mut f64,
    im: *mut f64,
) -> NlftStatus {
    if ptr.is_null() {
        return NlftStatus::NullPointer;
    }
    get_term(&(*ptr).0.a, index, freq, re, im)
}

/// Reads one off-diagonal term.
///
/// # Safety
/// `ptr` must be a live handle; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn nlft_expmat_term_b(
    ptr: *const NlftExpMat,
    index: usize,
    freq: *mut f64,
    re: *mut f64,
    im: *mut f64,
) -> NlftStatus {
    if ptr.is_null() {
        return NlftStatus::NullPointer;
    }
    get_term(&(*ptr).0.b, index, freq, re, im)
}

/// Evaluates the matrix at a real spectral point.
///
/// # Safety
/// `ptr` must be a live handle; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn nlft_expmat_eval(
    ptr: *const NlftExpMat,
    z: f64,
    a_re: *mut f64,
    a_im: *mut f64,
    b_re: *mut f64,
    b_im: *mut f64,
) -> NlftStatus {
    if ptr.is_null() || a_re.is_null() || a_im.is_null() || b_re.is_null() || b_im.is_null() {
        return NlftStatus::NullPointer;
    }
    let q = (*ptr).0.eval(z);
    *a_re = q.a.re;
    *a_im = q.a.im;
    *b_re = q.b.re;
    *b_im = q.b.im;
    NlftStatus::Ok
}

/// Layer-peeling inversion of a reduced comb transform with at most `n_max`
/// poles.
///
/// # Safety
/// `m` must be a live handle; `tol` may be null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nlft_inverse_comb(
    m: *const NlftExpMat,
    n_max: usize,
    tol: *const NlftTolerances,
    out: *mut *mut NlftComb,
) -> NlftStatus {
    if m.is_null() {
        return NlftStatus::NullPointer;
    }
    match delta::inverse(&(*m).0, n_max, &tolerances(tol)) {
        Ok(d) => write_out(out, NlftComb(d)),
        Err(e) => status_of(&e),
    }
}

/// Membership test for the comb transform's image with exactly `n` poles.
///
/// # Safety
/// `m` must be a live handle; `tol` may be null; `member` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nlft_membership_comb(
    m: *const NlftExpMat,
    n: usize,
    tol: *const NlftTolerances,
    member: *mut bool,
) -> NlftStatus {
    if m.is_null() || member.is_null() {
        return NlftStatus::NullPointer;
    }
    *member = delta::membership(&(*m).0, n, &tolerances(tol));
    NlftStatus::Ok
}

/// Transforms a uniform-grid signal given as parallel real/imaginary arrays.
///
/// # Safety
/// `re`, `im` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nlft_forward_grid(
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut *mut NlftGrid,
) -> NlftStatus {
    if re.is_null() || im.is_null() {
        return NlftStatus::NullPointer;
    }
    let mut u = Vec::with_capacity(len);
    for i in 0..len {
        u.push(C64::new(*re.add(i), *im.add(i)));
    }
    match DiscreteSignal::new(u) {
        Ok(s) => write_out(out, NlftGrid(euler::forward(&s))),
        Err(e) => status_of(&e),
    }
}

/// Builds a grid from per-sample matrix entries.
///
/// # Safety
/// The four array pointers must point to `len` readable doubles; `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn nlft_grid_new(
    a_re: *const f64,
    a_im: *const f64,
    b_re: *const f64,
    b_im: *const f64,
    len: usize,
    out: *mut *mut NlftGrid,
) -> NlftStatus {
    if a_re.is_null() || a_im.is_null() || b_re.is_null() || b_im.is_null() {
        return NlftStatus::NullPointer;
    }
    let mut samples = Vec::with_capacity(len);
    for i in 0..len {
        samples.push(QMat::new(
            C64::new(*a_re.add(i), *a_im.add(i)),
            C64::new(*b_re.add(i), *b_im.add(i)),
        ));
    }
    match GridMat::new(samples) {
        Ok(g) => write_out(out, NlftGrid(g)),
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `ptr` must have come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn nlft_grid_free(ptr: *mut NlftGrid) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// # Safety
/// `ptr` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nlft_grid_len(ptr: *const NlftGrid) -> usize {
    if ptr.is_null() {
        0
    } else {
        (*ptr).0.len()
    }
}

/// Reads the sample at one grid point.
///
/// # Safety
/// `ptr` must be a live handle; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn nlft_grid_sample(
    ptr: *const NlftGrid,
    z: usize,
    a_re: *mut f64,
    a_im: *mut f64,
    b_re: *mut f64,
    b_im: *mut f64,
) -> NlftStatus {
    if ptr.is_null() || a_re.is_null() || a_im.is_null() || b_re.is_null() || b_im.is_null() {
        return NlftStatus::NullPointer;
    }
    match (*ptr).0.samples().get(z) {
        Some(q) => {
            *a_re = q.a.re;
            *a_im = q.a.im;
            *b_re = q.b.re;
            *b_im = q.b.im;
            NlftStatus::Ok
        }
        None => NlftStatus::InvalidArgument,
    }
}

/// Recovers the signal behind a sampled transform into caller buffers of
/// length `nlft_grid_len`.
///
/// # Safety
/// `g` must be a live handle; `tol` may be null; `out_re`, `out_im` must
/// point to `nlft_grid_len(g)` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn nlft_inverse_grid(
    g: *const NlftGrid,
    tol: *const NlftTolerances,
    out_re: *mut f64,
    out_im: *mut f64,
) -> NlftStatus {
    if g.is_null() || out_re.is_null() || out_im.is_null() {
        return NlftStatus::NullPointer;
    }
    match euler::inverse(&(*g).0, &tolerances(tol)) {
        Ok(signal) => {
            for (i, v) in signal.values().iter().enumerate() {
                *out_re.add(i) = v.re;
                *out_im.add(i) = v.im;
            }
            NlftStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Membership test for the grid transform's image.
///
/// # Safety
/// `g` must be a live handle; `tol` may be null; `member` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nlft_membership_grid(
    g: *const NlftGrid,
    tol: *const NlftTolerances,
    member: *mut bool,
) -> NlftStatus {
    if g.is_null() || member.is_null() {
        return NlftStatus::NullPointer;
    }
    *member = euler::membership(&(*g).0, &tolerances(tol));
    NlftStatus::Ok
}

/// Recovers the gap vector of a constant-mass configuration from `m` dual
/// transform samples (entries given as parallel arrays) into a caller buffer
/// of `m` doubles.
///
/// # Safety
/// The four array pointers must point to `m` readable doubles; `tol` may be
/// null; `xi_out` must point to `m` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn nlft_dual_inverse_const_mass(
    a_re: *const f64,
    a_im: *const f64,
    b_re: *const f64,
    b_im: *const f64,
    m: usize,
    tol: *const NlftTolerances,
    xi_out: *mut f64,
) -> NlftStatus {
    if a_re.is_null() || a_im.is_null() || b_re.is_null() || b_im.is_null() || xi_out.is_null() {
        return NlftStatus::NullPointer;
    }
    let mut samples = Vec::with_capacity(m);
    for i in 0..m {
        samples.push(QMat::new(
            C64::new(*a_re.add(i), *a_im.add(i)),
            C64::new(*b_re.add(i), *b_im.add(i)),
        ));
    }
    match dual::inverse_const_mass(&samples, m, &tolerances(tol)) {
        Ok(gap) => {
            for (i, g) in gap.gaps().iter().enumerate() {
                *xi_out.add(i) = *g;
            }
            NlftStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Writes the exact stratum size C(l, k-1)·C(N-l-1, k-1) as a NUL-terminated
/// decimal string.
///
/// # Safety
/// `buf` must point to `buf_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn nlft_stratum_count(
    n: usize,
    k: usize,
    l: usize,
    buf: *mut c_char,
    buf_len: usize,
) -> NlftStatus {
    if buf.is_null() {
        return NlftStatus::NullPointer;
    }
    let decimal = euler::stratum_count(n, k, l).to_string();
    if decimal.len() + 1 > buf_len {
        return NlftStatus::BufferTooSmall;
    }
    for (i, byte) in decimal.bytes().enumerate() {
        *buf.add(i) = byte as c_char;
    }
    *buf.add(decimal.len()) = 0;
    NlftStatus::Ok
}

/// Operation counts of the two inversion strategies at size `n`.
///
/// # Safety
/// Output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn nlft_complexity_report(
    n: usize,
    full: *mut f64,
    modified: *mut f64,
    difference: *mut f64,
) -> NlftStatus {
    if full.is_null() || modified.is_null() || difference.is_null() {
        return NlftStatus::NullPointer;
    }
    let r = complexity::report(n);
    *full = r.full;
    *modified = r.modified;
    *difference = r.difference;
    NlftStatus::Ok
}
