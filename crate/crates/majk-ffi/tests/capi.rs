//! Exercises the C ABI end to end from Rust: handle lifecycles, happy
//! paths, and the error contract (status codes plus last-error messages).

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use majk_ffi::{
    majk_circuit_eval, majk_circuit_fan_in, majk_circuit_free, majk_circuit_from_json,
    majk_circuit_gate_count, majk_circuit_input_len, majk_circuit_synthesize, majk_circuit_to_json,
    majk_circuit_trivial, majk_circuit_verify, majk_last_error, majk_majority_boundary_edges,
    majk_oracle_adversary, majk_oracle_completions, majk_oracle_free, majk_oracle_honest,
    majk_oracle_input_len, majk_oracle_is_ambiguous, majk_oracle_query_adjustable,
    majk_oracle_query_count, majk_oracle_query_fixed, majk_oracle_set_limit, majk_solve_adjustable,
    majk_solve_fixed, majk_string_free, majk_version, MajkCircuit, MajkOracle, MajkSolveReport,
    MajkStatus,
};

fn cstring(s: &str) -> CString {
    CString::new(s).unwrap()
}

/// Copies and frees a string written through an out-pointer.
unsafe fn grab_string(p: *mut c_char) -> String {
    assert!(!p.is_null(), "expected an exported string");
    let copied = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { majk_string_free(p) };
    copied
}

fn last_error() -> String {
    let p = majk_last_error();
    assert!(!p.is_null(), "expected an error message");
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn empty_report() -> MajkSolveReport {
    MajkSolveReport {
        answer: false,
        queries: 0,
        has_bound: false,
        bound: 0.0,
    }
}

unsafe fn synth(n: usize) -> *mut MajkCircuit {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { majk_circuit_synthesize(n, &mut out) },
        MajkStatus::Ok
    );
    assert!(!out.is_null());
    out
}

unsafe fn honest(bits: &str, k: usize) -> *mut MajkOracle {
    let bits = cstring(bits);
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { majk_oracle_honest(bits.as_ptr(), k, &mut out) },
        MajkStatus::Ok
    );
    assert!(!out.is_null());
    out
}

unsafe fn adversary(n: usize, k: usize) -> *mut MajkOracle {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { majk_oracle_adversary(n, k, &mut out) },
        MajkStatus::Ok
    );
    assert!(!out.is_null());
    out
}

fn bitstring_majority(bits: &str) -> bool {
    2 * bits.chars().filter(|&c| c == '1').count() >= bits.len()
}

#[test]
fn version_is_exported() {
    let p = majk_version();
    assert!(!p.is_null());
    let version = unsafe { CStr::from_ptr(p) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}

#[test]
fn circuit_lifecycle_eval_verify_roundtrip() {
    unsafe {
        let circuit = synth(6);
        assert_eq!(majk_circuit_input_len(circuit), 6);
        assert_eq!(majk_circuit_gate_count(circuit), 5);
        assert_eq!(majk_circuit_fan_in(circuit), 5);

        let mut value = false;
        let hit = cstring("101100"); // three of six ones: inclusive tie
        assert_eq!(
            majk_circuit_eval(circuit, hit.as_ptr(), &mut value),
            MajkStatus::Ok
        );
        assert!(value);
        let miss = cstring("000100");
        assert_eq!(
            majk_circuit_eval(circuit, miss.as_ptr(), &mut value),
            MajkStatus::Ok
        );
        assert!(!value);

        let mut equivalent = false;
        let mut counterexample: *mut c_char = ptr::null_mut();
        assert_eq!(
            majk_circuit_verify(circuit, 24, &mut equivalent, &mut counterexample),
            MajkStatus::Ok
        );
        assert!(equivalent);
        assert!(
            counterexample.is_null(),
            "no counterexample for a correct circuit"
        );

        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(majk_circuit_to_json(circuit, &mut json), MajkStatus::Ok);
        let text = grab_string(json);
        let reparsed_c = cstring(&text);
        let mut reparsed = ptr::null_mut();
        assert_eq!(
            majk_circuit_from_json(reparsed_c.as_ptr(), &mut reparsed),
            MajkStatus::Ok
        );
        assert_eq!(majk_circuit_gate_count(reparsed), 5);
        assert_eq!(majk_circuit_fan_in(reparsed), 5);
        majk_circuit_free(reparsed);
        majk_circuit_free(circuit);
    }
}

#[test]
fn trivial_circuit_shape() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(majk_circuit_trivial(5, &mut out), MajkStatus::Ok);
        assert_eq!(majk_circuit_gate_count(out), 5);
        assert_eq!(majk_circuit_fan_in(out), 5);
        majk_circuit_free(out);
    }
}

#[test]
fn verify_surfaces_the_counterexample() {
    // raise the output threshold by one through the public library API, then
    // feed the JSON through the C parser
    let good = majk::synthesize(6).unwrap();
    let tampered = majk::DepthTwoCircuit::new(
        good.n(),
        good.first_level().to_vec(),
        majk::ThresholdGate::unit(
            good.output().inputs().clone(),
            good.output().threshold() + 1,
        ),
        good.declared_k(),
    )
    .unwrap();
    let text = cstring(&majk::circuit_to_json(&tampered));
    unsafe {
        let mut circuit = ptr::null_mut();
        assert_eq!(
            majk_circuit_from_json(text.as_ptr(), &mut circuit),
            MajkStatus::Ok
        );
        let mut equivalent = true;
        let mut counterexample: *mut c_char = ptr::null_mut();
        assert_eq!(
            majk_circuit_verify(circuit, 24, &mut equivalent, &mut counterexample),
            MajkStatus::Ok
        );
        assert!(!equivalent);
        let bits = grab_string(counterexample);
        let x = majk::BitVector::from_bitstring(&bits).unwrap();
        assert_ne!(tampered.eval(&x).unwrap(), x.majority());
        majk_circuit_free(circuit);
    }
}

#[test]
fn honest_oracle_answers_and_counts() {
    unsafe {
        let oracle = honest("1100", 2);
        assert_eq!(majk_oracle_input_len(oracle), 4);
        assert_eq!(majk_oracle_set_limit(oracle), 2);
        assert_eq!(majk_oracle_query_count(oracle), 0);

        let mut answer = false;
        let head = [0usize, 1];
        assert_eq!(
            majk_oracle_query_fixed(oracle, head.as_ptr(), head.len(), &mut answer),
            MajkStatus::Ok
        );
        assert!(answer, "bits 0 and 1 are both ones");
        let tail = [2usize, 3];
        assert_eq!(
            majk_oracle_query_adjustable(oracle, tail.as_ptr(), tail.len(), 1, &mut answer),
            MajkStatus::Ok
        );
        assert!(!answer, "bits 2 and 3 hold no ones");
        assert_eq!(majk_oracle_query_count(oracle), 2);

        // rejected queries report an error and do not count
        assert_eq!(
            majk_oracle_query_fixed(oracle, ptr::null(), 0, &mut answer),
            MajkStatus::QueryRejected
        );
        assert!(!last_error().is_empty());
        let oversized = [0usize, 1, 2];
        assert_eq!(
            majk_oracle_query_fixed(oracle, oversized.as_ptr(), oversized.len(), &mut answer),
            MajkStatus::QueryRejected
        );
        let out_of_range = [9usize];
        assert_eq!(
            majk_oracle_query_fixed(oracle, out_of_range.as_ptr(), 1, &mut answer),
            MajkStatus::InvalidArgument
        );
        let duplicated = [1usize, 1];
        assert_eq!(
            majk_oracle_query_fixed(oracle, duplicated.as_ptr(), 2, &mut answer),
            MajkStatus::InvalidArgument
        );
        assert_eq!(majk_oracle_query_count(oracle), 2, "rejections never count");

        // completions and ambiguity are adversary-only concepts
        let mut flag = false;
        assert_eq!(
            majk_oracle_is_ambiguous(oracle, &mut flag),
            MajkStatus::Unsupported
        );
        let (mut zeros, mut ones): (*mut c_char, *mut c_char) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(
            majk_oracle_completions(oracle, &mut zeros, &mut ones),
            MajkStatus::Unsupported
        );
        majk_oracle_free(oracle);
    }
}

#[test]
fn solvers_report_answers_and_bounds() {
    unsafe {
        let oracle = honest("1100", 2);
        let mut report = empty_report();
        assert_eq!(majk_solve_fixed(oracle, &mut report), MajkStatus::Ok);
        assert!(report.answer, "two of four ones is an inclusive tie");
        assert_eq!(report.queries, 4);
        assert!(!report.has_bound, "fixed-model budget needs k >= 5");
        majk_oracle_free(oracle);

        let oracle = honest("101100", 3);
        let mut report = empty_report();
        assert_eq!(majk_solve_adjustable(oracle, &mut report), MajkStatus::Ok);
        assert!(report.answer);
        assert!(report.queries <= 4, "queries = {}", report.queries);
        assert!(report.has_bound);
        assert_eq!(report.bound, 4.0); // ceil(6/3) * ceil(log2(4))
        majk_oracle_free(oracle);
    }
}

#[test]
fn adversary_runs_stay_consistent() {
    unsafe {
        let oracle = adversary(5, 2);
        let mut ambiguous = false;
        assert_eq!(
            majk_oracle_is_ambiguous(oracle, &mut ambiguous),
            MajkStatus::Ok
        );
        assert!(ambiguous, "no queries yet: majority still open");

        let mut report = empty_report();
        assert_eq!(majk_solve_adjustable(oracle, &mut report), MajkStatus::Ok);
        assert!(
            report.queries >= 3,
            "ceil(5/2) floor, got {}",
            report.queries
        );

        assert_eq!(
            majk_oracle_is_ambiguous(oracle, &mut ambiguous),
            MajkStatus::Ok
        );
        assert!(!ambiguous);
        let (mut zeros, mut ones): (*mut c_char, *mut c_char) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(
            majk_oracle_completions(oracle, &mut zeros, &mut ones),
            MajkStatus::Ok
        );
        let zeros = grab_string(zeros);
        let ones = grab_string(ones);
        assert_eq!(zeros.len(), 5);
        assert_eq!(ones.len(), 5);
        assert_eq!(bitstring_majority(&zeros), report.answer);
        assert_eq!(bitstring_majority(&ones), report.answer);
        majk_oracle_free(oracle);
    }
}

#[test]
fn error_paths_set_status_and_message() {
    unsafe {
        let mut circuit = ptr::null_mut();
        assert_eq!(
            majk_circuit_synthesize(0, &mut circuit),
            MajkStatus::InvalidArgument
        );
        assert!(!last_error().is_empty());
        assert_eq!(
            majk_circuit_synthesize(5, ptr::null_mut()),
            MajkStatus::NullPointer
        );
        assert_eq!(
            majk_circuit_from_json(ptr::null(), &mut circuit),
            MajkStatus::NullPointer
        );
        let broken = cstring("{");
        assert_eq!(
            majk_circuit_from_json(broken.as_ptr(), &mut circuit),
            MajkStatus::ParseError
        );
        let wrong_shape = cstring(r#"{"x": 1}"#);
        assert_eq!(
            majk_circuit_from_json(wrong_shape.as_ptr(), &mut circuit),
            MajkStatus::ParseError
        );

        let circuit = synth(6);
        let mut value = false;
        let non_bits = cstring("1012");
        assert_eq!(
            majk_circuit_eval(circuit, non_bits.as_ptr(), &mut value),
            MajkStatus::ParseError
        );
        let short = cstring("101");
        assert_eq!(
            majk_circuit_eval(circuit, short.as_ptr(), &mut value),
            MajkStatus::InvalidArgument
        );
        let mut equivalent = false;
        assert_eq!(
            majk_circuit_verify(circuit, 3, &mut equivalent, ptr::null_mut()),
            MajkStatus::InvalidArgument,
        );
        assert!(!last_error().is_empty());
        majk_circuit_free(circuit);

        let mut oracle = ptr::null_mut();
        let bits = cstring("1100");
        assert_eq!(
            majk_oracle_honest(bits.as_ptr(), 0, &mut oracle),
            MajkStatus::InvalidArgument
        );
        assert_eq!(
            majk_oracle_honest(ptr::null(), 2, &mut oracle),
            MajkStatus::NullPointer
        );

        let oracle = honest("1100", 2);
        let mut answer = false;
        let set = [0usize, 1];
        assert_eq!(
            majk_oracle_query_fixed(oracle, ptr::null(), 2, &mut answer),
            MajkStatus::NullPointer
        );
        assert_eq!(
            majk_oracle_query_fixed(oracle, set.as_ptr(), set.len(), ptr::null_mut()),
            MajkStatus::NullPointer
        );
        majk_oracle_free(oracle);

        let mut report = empty_report();
        assert_eq!(
            majk_solve_fixed(ptr::null_mut(), &mut report),
            MajkStatus::NullPointer
        );

        // NULL frees are no-ops
        majk_circuit_free(ptr::null_mut());
        majk_oracle_free(ptr::null_mut());
        majk_string_free(ptr::null_mut());
    }
}

#[test]
fn boundary_edges_through_the_abi() {
    unsafe {
        let mut count = 0u64;
        assert_eq!(majk_majority_boundary_edges(3, &mut count), MajkStatus::Ok);
        assert_eq!(count, 6);
        assert_eq!(
            majk_majority_boundary_edges(25, &mut count),
            MajkStatus::InvalidArgument
        );
    }
}

#[test]
fn generated_header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/majk.h"))
        .expect("cbindgen header exists");
    for needle in [
        "typedef struct MajkCircuit MajkCircuit;",
        "typedef struct MajkOracle MajkOracle;",
        "MAJK_STATUS_OK",
        "MAJK_STATUS_QUERY_REJECTED",
        "typedef struct MajkSolveReport",
        "majk_circuit_synthesize",
        "majk_oracle_query_adjustable",
        "majk_solve_fixed",
        "majk_last_error",
    ] {
        assert!(header.contains(needle), "header is missing {needle:?}");
    }
}
