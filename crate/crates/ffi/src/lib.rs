//! C ABI over `vqdist`.
//!
//! Circuits and training traces are opaque heap handles released with their
//! `*_free` function. Every call returns a [`VqStatus`]; on failure the
//! message is available from [`vq_last_error`] on the same thread. Output
//! arrays are caller-allocated and their lengths are checked.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vqdist::{CircuitTemplate, CostKind, Error, InitScheme, ProbDist, TargetKind, TargetSpec, TrainConfig, TrainTrace};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Output buffer length does not match the required size.
    BufferSize = 3,
    InvalidCircuit = 4,
    /// KL support mismatch or a non-finite cost during training.
    Numerical = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VqCost {
    Lse = 0,
    Kl = 1,
    Js = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VqTarget {
    Uniform = 0,
    Normal = 1,
    /// `param` is the success probability.
    Binomial = 2,
    /// `param` is the rate.
    Poisson = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VqInit {
    Zeros = 0,
    UniformAngles = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VqTrainConfig {
    pub stepsize: f64,
    pub iterations: usize,
    pub momentum: f64,
    pub cost: VqCost,
    pub init: VqInit,
    pub seed: u64,
}

/// Opaque circuit handle.
pub struct VqCircuit(CircuitTemplate);

/// Opaque training result handle.
pub struct VqTrace(TrainTrace);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> VqStatus {
    match err {
        Error::KlDomain { .. } | Error::NonFiniteCost { .. } => VqStatus::Numerical,
        Error::InvalidTemplate { .. }
        | Error::InvalidGate(_)
        | Error::UnknownCircuit(_)
        | Error::QubitOutOfRange { .. }
        | Error::Parse { .. } => VqStatus::InvalidCircuit,
        _ => VqStatus::InvalidArgument,
    }
}

struct Failure(VqStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> VqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VqStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            VqStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(VqStatus::NullPointer, format!("{what} is null"))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn copy_out(src: &[f64], out: *mut f64, len: usize, what: &str) -> Result<(), Failure> {
    if len != src.len() {
        return Err(Failure(
            VqStatus::BufferSize,
            format!("{what} needs length {}, got {len}", src.len()),
        ));
    }
    if len > 0 {
        if out.is_null() {
            return Err(null(what));
        }
        ptr::copy_nonoverlapping(src.as_ptr(), out, len);
    }
    Ok(())
}

unsafe fn circuit<'a>(c: *const VqCircuit) -> Result<&'a CircuitTemplate, Failure> {
    c.as_ref().map(|c| &c.0).ok_or_else(|| null("circuit"))
}

unsafe fn trace<'a>(t: *const VqTrace) -> Result<&'a TrainTrace, Failure> {
    t.as_ref().map(|t| &t.0).ok_or_else(|| null("trace"))
}

fn cost_kind(c: VqCost) -> CostKind {
    match c {
        VqCost::Lse => CostKind::Lse,
        VqCost::Kl => CostKind::Kl,
        VqCost::Js => CostKind::Js,
    }
}

fn distribution(values: &[f64]) -> Result<ProbDist, Failure> {
    Ok(ProbDist::new(values.to_vec())?)
}

/// Message for the last failed call on this thread. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn vq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn vq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Number of circuits in the built-in catalog; ids run from 1.
#[no_mangle]
pub extern "C" fn vq_catalog_size() -> u32 {
    vqdist::CATALOG_SIZE
}

/// Builds catalog circuit `id` into `*out`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn vq_catalog_get(id: u32, out: *mut *mut VqCircuit) -> VqStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let t = vqdist::catalog_get(id)?;
        *out = Box::into_raw(Box::new(VqCircuit(t)));
        Ok(())
    })
}

/// Parses an ansatz JSON document into `*out`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vq_circuit_from_json(json: *const c_char, out: *mut *mut VqCircuit) -> VqStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(VqStatus::InvalidArgument, format!("json is not UTF-8: {e}")))?;
        let t = vqdist::load_template(text)?;
        *out = Box::into_raw(Box::new(VqCircuit(t)));
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vq_circuit_free(c: *mut VqCircuit) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Qubit count, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vq_circuit_n_qubits(c: *const VqCircuit) -> usize {
    c.as_ref().map_or(0, |c| c.0.n_qubits())
}

/// Trainable parameter count, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vq_circuit_n_params(c: *const VqCircuit) -> usize {
    c.as_ref().map_or(0, |c| c.0.n_params())
}

/// Writes the `2^n` outcome probabilities at `params` into `probs`.
///
/// # Safety
/// `params` must hold `n_params` values and `probs` `probs_len` slots.
#[no_mangle]
pub unsafe extern "C" fn vq_evaluate(
    c: *const VqCircuit,
    params: *const f64,
    n_params: usize,
    probs: *mut f64,
    probs_len: usize,
) -> VqStatus {
    guard(|| {
        let t = circuit(c)?;
        let p = vqdist::evaluate(t, slice(params, n_params, "params")?)?;
        copy_out(&p, probs, probs_len, "probs")
    })
}

/// Writes the target pmf over `2^n_qubits` outcomes into `out`. `param` is
/// ignored for uniform and normal targets.
///
/// # Safety
/// `out` must hold `out_len` slots.
#[no_mangle]
pub unsafe extern "C" fn vq_target_pmf(
    kind: VqTarget,
    param: f64,
    n_qubits: usize,
    out: *mut f64,
    out_len: usize,
) -> VqStatus {
    guard(|| {
        let kind = match kind {
            VqTarget::Uniform => TargetKind::Uniform,
            VqTarget::Normal => TargetKind::Normal,
            VqTarget::Binomial => TargetKind::Binomial { p: param },
            VqTarget::Poisson => TargetKind::Poisson { lambda: param },
        };
        let q = vqdist::target_pmf(&TargetSpec::new(kind, n_qubits))?;
        copy_out(&q, out, out_len, "out")
    })
}

/// `cost(P, Q)` over two arrays of length `len`.
///
/// # Safety
/// `p` and `q` must hold `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vq_cost(kind: VqCost, p: *const f64, q: *const f64, len: usize, out: *mut f64) -> VqStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = vqdist::cost(cost_kind(kind), slice(p, len, "p")?, slice(q, len, "q")?)?;
        Ok(())
    })
}

/// Parameter-shift gradient of the cost against `target` at `params`.
///
/// # Safety
/// Array arguments must hold the stated number of values.
#[no_mangle]
pub unsafe extern "C" fn vq_cost_gradient(
    c: *const VqCircuit,
    params: *const f64,
    n_params: usize,
    kind: VqCost,
    target: *const f64,
    target_len: usize,
    grad: *mut f64,
    grad_len: usize,
) -> VqStatus {
    guard(|| {
        let t = circuit(c)?;
        let q = distribution(slice(target, target_len, "target")?)?;
        let g = vqdist::cost_gradient(t, slice(params, n_params, "params")?, cost_kind(kind), &q)?;
        copy_out(&g, grad, grad_len, "grad")
    })
}

/// Default training settings: stepsize 0.1, 1000 iterations, no momentum,
/// JS cost, uniform random angles from seed 0.
#[no_mangle]
pub extern "C" fn vq_train_config_default() -> VqTrainConfig {
    let d = TrainConfig::default();
    VqTrainConfig {
        stepsize: d.stepsize,
        iterations: d.iterations,
        momentum: d.momentum,
        cost: VqCost::Js,
        init: VqInit::UniformAngles,
        seed: d.seed,
    }
}

/// Trains `c` against `target` and stores the result in `*out`.
///
/// # Safety
/// `target` must hold `target_len` values; `config` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn vq_train(
    c: *const VqCircuit,
    target: *const f64,
    target_len: usize,
    config: *const VqTrainConfig,
    out: *mut *mut VqTrace,
) -> VqStatus {
    guard(|| {
        let t = circuit(c)?;
        let cfg = config.as_ref().ok_or_else(|| null("config"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let q = distribution(slice(target, target_len, "target")?)?;
        let train_config = TrainConfig {
            stepsize: cfg.stepsize,
            iterations: cfg.iterations,
            momentum: cfg.momentum,
            cost: cost_kind(cfg.cost),
            init: match cfg.init {
                VqInit::Zeros => InitScheme::Zeros,
                VqInit::UniformAngles => InitScheme::UniformAngles,
            },
            seed: cfg.seed,
            ..Default::default()
        };
        let trace = vqdist::train(t, &q, &train_config)?;
        *out = Box::into_raw(Box::new(VqTrace(trace)));
        Ok(())
    })
}

/// # Safety
/// `t` must be null or a handle from [`vq_train`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vq_trace_free(t: *mut VqTrace) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Final cost, or NaN for a null handle.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vq_trace_final_cost(t: *const VqTrace) -> f64 {
    t.as_ref().map_or(f64::NAN, |t| t.0.final_cost())
}

/// Length of the cost history (iterations + 1).
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vq_trace_history_len(t: *const VqTrace) -> usize {
    t.as_ref().map_or(0, |t| t.0.cost_history.len())
}

/// # Safety
/// `out` must hold `len` slots.
#[no_mangle]
pub unsafe extern "C" fn vq_trace_cost_history(t: *const VqTrace, out: *mut f64, len: usize) -> VqStatus {
    guard(|| copy_out(&trace(t)?.cost_history, out, len, "out"))
}

/// # Safety
/// `out` must hold `len` slots.
#[no_mangle]
pub unsafe extern "C" fn vq_trace_final_params(t: *const VqTrace, out: *mut f64, len: usize) -> VqStatus {
    guard(|| copy_out(&trace(t)?.final_params, out, len, "out"))
}

/// # Safety
/// `out` must hold `len` slots.
#[no_mangle]
pub unsafe extern "C" fn vq_trace_final_dist(t: *const VqTrace, out: *mut f64, len: usize) -> VqStatus {
    guard(|| copy_out(&trace(t)?.final_dist, out, len, "out"))
}
