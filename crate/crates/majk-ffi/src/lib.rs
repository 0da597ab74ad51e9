//! C ABI for the majk library.
//!
//! Conventions: handles are opaque pointers owned by the caller and released
//! with the matching `_free` function; fallible calls return [`MajkStatus`]
//! and write results through out-pointers, which are touched only on
//! `MAJK_STATUS_OK`; on failure a human-readable message is available from
//! [`majk_last_error`] until the next failing call on the same thread.
//! Strings returned through out-pointers are NUL-terminated, heap-allocated,
//! and must be released with [`majk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use majk::{
    boundary_edges, circuit_from_json, circuit_to_json, majority_truth_table, solve_adjustable,
    solve_fixed, synthesize, trivial_circuit, verify_exhaustive, AdversaryOracle, BitVector,
    DepthTwoCircuit, Error, HonestOracle, IndexSet, Oracle, SolveReport, VerifyOutcome,
};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MajkStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// Arguments violate a documented precondition.
    InvalidArgument = 2,
    /// A query set was empty or larger than the oracle's limit.
    QueryRejected = 3,
    /// The oracle contradicted itself (or the solver hit its step limit).
    InconsistentOracle = 4,
    /// Malformed JSON, bitstring, or schema violation.
    ParseError = 5,
    /// The operation does not apply to this handle (e.g. completions of an
    /// honest oracle).
    Unsupported = 6,
    /// An internal panic was caught at the boundary.
    Panic = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let owned = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(owned));
}

fn fail(err: &Error) -> MajkStatus {
    set_last_error(&err.to_string());
    match err {
        Error::QueryRejected { .. } => MajkStatus::QueryRejected,
        Error::InconsistentOracle(_) | Error::StepLimit { .. } => MajkStatus::InconsistentOracle,
        Error::Schema { .. } | Error::Json(_) | Error::BadBitChar { .. } => MajkStatus::ParseError,
        _ => MajkStatus::InvalidArgument,
    }
}

fn null_pointer(what: &str) -> MajkStatus {
    set_last_error(&format!("{what} must not be NULL"));
    MajkStatus::NullPointer
}

fn guarded<F: FnOnce() -> MajkStatus>(body: F) -> MajkStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic caught at the FFI boundary");
            MajkStatus::Panic
        }
    }
}

fn export_string(s: &str, out: *mut *mut c_char) -> MajkStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    let owned = CString::new(s.replace('\0', " ")).unwrap_or_default();
    unsafe { *out = owned.into_raw() };
    MajkStatus::Ok
}

/// Message describing the most recent failure on this thread, or NULL if no
/// call has failed yet. The pointer stays valid until the next failing call
/// on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn majk_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |msg| msg.as_ptr())
    })
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn majk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned through an out-pointer.
///
/// # Safety
/// `s` must be a pointer previously returned by this library and not freed
/// since; NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn majk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

// ---------------------------------------------------------------------------
// circuits

/// Opaque depth-two circuit handle.
pub struct MajkCircuit {
    inner: DepthTwoCircuit,
}

fn export_circuit(circuit: DepthTwoCircuit, out: *mut *mut MajkCircuit) -> MajkStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    unsafe { *out = Box::into_raw(Box::new(MajkCircuit { inner: circuit })) };
    MajkStatus::Ok
}

/// Builds the bounded-fan-in majority circuit for n inputs.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn majk_circuit_synthesize(
    n: usize,
    out: *mut *mut MajkCircuit,
) -> MajkStatus {
    guarded(|| match synthesize(n) {
        Ok(circuit) => export_circuit(circuit, out),
        Err(err) => fail(&err),
    })
}

/// Builds the fan-in-n baseline circuit.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn majk_circuit_trivial(n: usize, out: *mut *mut MajkCircuit) -> MajkStatus {
    guarded(|| match trivial_circuit(n) {
        Ok(circuit) => export_circuit(circuit, out),
        Err(err) => fail(&err),
    })
}

/// Parses a circuit from its JSON representation.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn majk_circuit_from_json(
    text: *const c_char,
    out: *mut *mut MajkCircuit,
) -> MajkStatus {
    guarded(|| {
        if text.is_null() {
            return null_pointer("text");
        }
        let text = match unsafe { CStr::from_ptr(text) }.to_str() {
            Ok(t) => t,
            Err(_) => {
                set_last_error("circuit JSON is not valid UTF-8");
                return MajkStatus::ParseError;
            }
        };
        match circuit_from_json(text) {
            Ok(circuit) => export_circuit(circuit, out),
            Err(err) => fail(&err),
        }
    })
}

/// Serializes a circuit to JSON; release the string with majk_string_free.
///
/// # Safety
/// `circuit` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn majk_circuit_to_json(
    circuit: *const MajkCircuit,
    out: *mut *mut c_char,
) -> MajkStatus {
    guarded(|| {
        let Some(circuit) = (unsafe { circuit.as_ref() }) else {
            return null_pointer("circuit");
        };
        export_string(&circuit_to_json(&circuit.inner), out)
    })
}

/// Releases a circuit handle; NULL is a no-op.
///
/// # Safety
/// `circuit` must be a live handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn majk_circuit_free(circuit: *mut MajkCircuit) {
    if !circuit.is_null() {
        drop(unsafe { Box::from_raw(circuit) });
    }
}

/// Number of circuit inputs, or 0 for NULL.
///
/// # Safety
/// `circuit` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn majk_circuit_input_len(circuit: *const MajkCircuit) -> usize {
    unsafe { circuit.as_ref() }.map_or(0, |c| c.inner.n())
}

/// Number of first-level gates, or 0 for NULL.
///
/// # Safety
/// `circuit` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn majk_circuit_gate_count(circuit: *const MajkCircuit) -> usize {
    unsafe { circuit.as_ref() }.map_or(0, |c| c.inner.gate_count())
}

/// Largest fan-in anywhere in the circuit, or 0 for NULL.
///
/// # Safety
/// `circuit` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn majk_circuit_fan_in(circuit: *const MajkCircuit) -> u64 {
    unsafe { circuit.as_ref() }.map_or(0, |c| c.inner.fan_in())
}

/// Evaluates the circuit on a bitstring like "10110" (x0 leftmost).
///
/// # Safety
/// `circuit` must be a live handle, `bits` a valid NUL-terminated string,
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn majk_circuit_eval(
    circuit: *const MajkCircuit,
    bits: *const c_char,
    out: *mut bool,
) -> MajkStatus {
    guarded(|| {
        let Some(circuit) = (unsafe { circuit.as_ref() }) else {
            return null_pointer("circuit");
        };
        if bits.is_null() {
            return null_pointer("bits");
        }
        if out.is_null() {
            return null_pointer("out");
        }
        let text = match unsafe { CStr::from_ptr(bits) }.to_str() {
            Ok(t) => t,
            Err(_) => {
                set_last_error("bitstring is not valid UTF-8");
                return MajkStatus::ParseError;
            }
        };
        let x = match BitVector::from_bitstring(text) {
            Ok(x) => x,
            Err(err) => return fail(&err),
        };
        match circuit.inner.eval(&x) {
            Ok(value) => {
                unsafe { *out = value };
                MajkStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// Exhaustively compares the circuit against MAJ_n (refusing more than
/// `limit` inputs). On success `*out_equivalent` says whether they agree;
/// when they do not and `out_counterexample` is non-NULL, it receives the
/// lexicographically first differing input as a bitstring.
///
/// # Safety
/// `circuit` must be a live handle, `out_equivalent` a valid pointer, and
/// `out_counterexample` a valid pointer or NULL.
#[no_mangle]
pub unsafe extern "C" fn majk_circuit_verify(
    circuit: *const MajkCircuit,
    limit: usize,
    out_equivalent: *mut bool,
    out_counterexample: *mut *mut c_char,
) -> MajkStatus {
    guarded(|| {
        let Some(circuit) = (unsafe { circuit.as_ref() }) else {
            return null_pointer("circuit");
        };
        if out_equivalent.is_null() {
            return null_pointer("out_equivalent");
        }
        match verify_exhaustive(&circuit.inner, limit) {
            Ok(VerifyOutcome::Equivalent) => {
                unsafe { *out_equivalent = true };
                if !out_counterexample.is_null() {
                    unsafe { *out_counterexample = std::ptr::null_mut() };
                }
                MajkStatus::Ok
            }
            Ok(VerifyOutcome::Counterexample(x)) => {
                unsafe { *out_equivalent = false };
                if !out_counterexample.is_null() {
                    return export_string(&x.to_string(), out_counterexample);
                }
                MajkStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// Boundary edges of MAJ_n on the hypercube (n <= 20).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn majk_majority_boundary_edges(n: usize, out: *mut u64) -> MajkStatus {
    guarded(|| {
        if out.is_null() {
            return null_pointer("out");
        }
        let table = match majority_truth_table(n) {
            Ok(t) => t,
            Err(err) => return fail(&err),
        };
        match boundary_edges(&table, n) {
            Ok(count) => {
                unsafe { *out = count };
                MajkStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

// ---------------------------------------------------------------------------
// oracles and solvers

enum OracleImpl {
    Honest(HonestOracle),
    Adversary(AdversaryOracle),
}

/// Opaque oracle handle (honest or adversarial).
pub struct MajkOracle {
    inner: OracleImpl,
}

impl MajkOracle {
    fn as_dyn(&mut self) -> &mut dyn Oracle {
        match &mut self.inner {
            OracleImpl::Honest(o) => o,
            OracleImpl::Adversary(o) => o,
        }
    }

    fn as_dyn_ref(&self) -> &dyn Oracle {
        match &self.inner {
            OracleImpl::Honest(o) => o,
            OracleImpl::Adversary(o) => o,
        }
    }
}

fn export_oracle(oracle: OracleImpl, out: *mut *mut MajkOracle) -> MajkStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    unsafe { *out = Box::into_raw(Box::new(MajkOracle { inner: oracle })) };
    MajkStatus::Ok
}

/// Creates an honest oracle over the hidden bitstring, answering queries
/// about sets of at most k indices.
///
/// # Safety
/// `bits` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn majk_oracle_honest(
    bits: *const c_char,
    k: usize,
    out: *mut *mut MajkOracle,
) -> MajkStatus {
    guarded(|| {
        if bits.is_null() {
            return null_pointer("bits");
        }
        let text = match unsafe { CStr::from_ptr(bits) }.to_str() {
            Ok(t) => t,
            Err(_) => {
                set_last_error("bitstring is not valid UTF-8");
                return MajkStatus::ParseError;
            }
        };
        let hidden = match BitVector::from_bitstring(text) {
            Ok(x) => x,
            Err(err) => return fail(&err),
        };
        match HonestOracle::new(hidden, k) {
            Ok(oracle) => export_oracle(OracleImpl::Honest(oracle), out),
            Err(err) => fail(&err),
        }
    })
}

/// Creates the adversarial oracle over n bits with set-size limit k.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn majk_oracle_adversary(
    n: usize,
    k: usize,
    out: *mut *mut MajkOracle,
) -> MajkStatus {
    guarded(|| match AdversaryOracle::new(n, k) {
        Ok(oracle) => export_oracle(OracleImpl::Adversary(oracle), out),
        Err(err) => fail(&err),
    })
}

/// Releases an oracle handle; NULL is a no-op.
///
/// # Safety
/// `oracle` must be a live handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn majk_oracle_free(oracle: *mut MajkOracle) {
    if !oracle.is_null() {
        drop(unsafe { Box::from_raw(oracle) });
    }
}

/// Number of oracle input bits, or 0 for NULL.
///
/// # Safety
/// `oracle` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn majk_oracle_input_len(oracle: *const MajkOracle) -> usize {
    unsafe { oracle.as_ref() }.map_or(0, |o| o.as_dyn_ref().input_len())
}

/// Largest accepted query set size, or 0 for NULL.
///
/// # Safety
/// `oracle` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn majk_oracle_set_limit(oracle: *const MajkOracle) -> usize {
    unsafe { oracle.as_ref() }.map_or(0, |o| o.as_dyn_ref().set_limit())
}

/// Number of answered queries so far, or 0 for NULL.
///
/// # Safety
/// `oracle` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn majk_oracle_query_count(oracle: *const MajkOracle) -> usize {
    unsafe { oracle.as_ref() }.map_or(0, |o| o.as_dyn_ref().query_count())
}

unsafe fn read_index_set(indices: *const usize, len: usize) -> Result<IndexSet, MajkStatus> {
    if len > 0 && indices.is_null() {
        return Err(null_pointer("indices"));
    }
    let slice = if len == 0 {
        &[][..]
    } else {
        unsafe { std::slice::from_raw_parts(indices, len) }
    };
    IndexSet::from_unsorted(slice.to_vec()).map_err(|err| fail(&err))
}

/// Asks for the majority of the given index set (duplicates rejected).
///
/// # Safety
/// `oracle` must be a live handle, `indices` must point to `len` readable
/// elements (or be NULL when `len` is 0), and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn majk_oracle_query_fixed(
    oracle: *mut MajkOracle,
    indices: *const usize,
    len: usize,
    out: *mut bool,
) -> MajkStatus {
    guarded(|| {
        let Some(oracle) = (unsafe { oracle.as_mut() }) else {
            return null_pointer("oracle");
        };
        if out.is_null() {
            return null_pointer("out");
        }
        let set = match unsafe { read_index_set(indices, len) } {
            Ok(set) => set,
            Err(status) => return status,
        };
        match oracle.as_dyn().query_fixed(&set) {
            Ok(answer) => {
                unsafe { *out = answer };
                MajkStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// Asks whether the index set holds at least `threshold` ones.
///
/// # Safety
/// Same contract as [`majk_oracle_query_fixed`].
#[no_mangle]
pub unsafe extern "C" fn majk_oracle_query_adjustable(
    oracle: *mut MajkOracle,
    indices: *const usize,
    len: usize,
    threshold: i64,
    out: *mut bool,
) -> MajkStatus {
    guarded(|| {
        let Some(oracle) = (unsafe { oracle.as_mut() }) else {
            return null_pointer("oracle");
        };
        if out.is_null() {
            return null_pointer("out");
        }
        let set = match unsafe { read_index_set(indices, len) } {
            Ok(set) => set,
            Err(status) => return status,
        };
        match oracle.as_dyn().query_adjustable(&set, threshold) {
            Ok(answer) => {
                unsafe { *out = answer };
                MajkStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// For adversarial oracles: the two completions (committed bits extended by
/// all zeros / all ones) as bitstrings. Honest oracles return UNSUPPORTED.
///
/// # Safety
/// `oracle` must be a live handle; `out_zeros` and `out_ones` must be valid
/// pointers.
#[no_mangle]
pub unsafe extern "C" fn majk_oracle_completions(
    oracle: *const MajkOracle,
    out_zeros: *mut *mut c_char,
    out_ones: *mut *mut c_char,
) -> MajkStatus {
    guarded(|| {
        let Some(oracle) = (unsafe { oracle.as_ref() }) else {
            return null_pointer("oracle");
        };
        let OracleImpl::Adversary(adversary) = &oracle.inner else {
            set_last_error("completions are only defined for adversarial oracles");
            return MajkStatus::Unsupported;
        };
        let (zeros, ones) = adversary.completions();
        let status = export_string(&zeros.to_string(), out_zeros);
        if status != MajkStatus::Ok {
            return status;
        }
        let status = export_string(&ones.to_string(), out_ones);
        if status != MajkStatus::Ok {
            // roll back the first allocation so the caller frees nothing
            unsafe { majk_string_free(*out_zeros) };
            unsafe { *out_zeros = std::ptr::null_mut() };
        }
        status
    })
}

/// For adversarial oracles: whether the overall majority is still
/// undetermined. Honest oracles return UNSUPPORTED.
///
/// # Safety
/// `oracle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn majk_oracle_is_ambiguous(
    oracle: *const MajkOracle,
    out: *mut bool,
) -> MajkStatus {
    guarded(|| {
        let Some(oracle) = (unsafe { oracle.as_ref() }) else {
            return null_pointer("oracle");
        };
        if out.is_null() {
            return null_pointer("out");
        }
        let OracleImpl::Adversary(adversary) = &oracle.inner else {
            set_last_error("ambiguity is only defined for adversarial oracles");
            return MajkStatus::Unsupported;
        };
        unsafe { *out = adversary.is_ambiguous() };
        MajkStatus::Ok
    })
}

/// What a solver run produced. `bound` is meaningful only when `has_bound`
/// is true (the fixed-threshold bound is undefined for k < 5).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MajkSolveReport {
    pub answer: bool,
    pub queries: u64,
    pub has_bound: bool,
    pub bound: f64,
}

fn export_report(report: SolveReport, out: *mut MajkSolveReport) -> MajkStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    unsafe {
        *out = MajkSolveReport {
            answer: report.answer,
            queries: report.queries as u64,
            has_bound: report.bound.is_some(),
            bound: report.bound.unwrap_or(0.0),
        };
    }
    MajkStatus::Ok
}

/// Runs the fixed-threshold solver over the oracle's full index range,
/// using the oracle's own n and k.
///
/// # Safety
/// `oracle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn majk_solve_fixed(
    oracle: *mut MajkOracle,
    out: *mut MajkSolveReport,
) -> MajkStatus {
    guarded(|| {
        let Some(oracle) = (unsafe { oracle.as_mut() }) else {
            return null_pointer("oracle");
        };
        let (n, k) = (
            oracle.as_dyn_ref().input_len(),
            oracle.as_dyn_ref().set_limit(),
        );
        match solve_fixed(oracle.as_dyn(), n, k) {
            Ok(report) => export_report(report, out),
            Err(err) => fail(&err),
        }
    })
}

/// Runs the adjustable-threshold solver, as [`majk_solve_fixed`].
///
/// # Safety
/// `oracle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn majk_solve_adjustable(
    oracle: *mut MajkOracle,
    out: *mut MajkSolveReport,
) -> MajkStatus {
    guarded(|| {
        let Some(oracle) = (unsafe { oracle.as_mut() }) else {
            return null_pointer("oracle");
        };
        let (n, k) = (
            oracle.as_dyn_ref().input_len(),
            oracle.as_dyn_ref().set_limit(),
        );
        match solve_adjustable(oracle.as_dyn(), n, k) {
            Ok(report) => export_report(report, out),
            Err(err) => fail(&err),
        }
    })
}
