//! C ABI over the conv-energy library.
//!
//! Every fallible function returns a [`CeStatus`] and writes its result
//! through an out-pointer that is left untouched on failure. The message of
//! the most recent failure on the calling thread is available from
//! [`ce_last_error_message`]. Handles are opaque and must be released with
//! their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use conv_energy::netmodel::{network_costs, parse_network, NetError, NetworkSpec};
use conv_energy::predictor::{
    chain_predict, fit_origin_1d, fit_origin_2d, EnergyModel, FitError, OriginModel,
};
use conv_energy::tracelab::{integrate, parse_trace, pearson, Channel, PowerTrace, TraceError};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CeStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Malformed input: bad text, unknown names, wrong lengths.
    InvalidInput = 2,
    /// Well-formed input that cannot be evaluated: overflow, singular fit,
    /// window outside the trace.
    Compute = 3,
    /// The library panicked; this is a bug.
    Panic = 4,
}

/// A parsed network description.
pub struct CeNetwork {
    spec: NetworkSpec,
}

/// A parsed power trace.
pub struct CeTrace {
    trace: PowerTrace,
}

/// A two-regressor energy model, `energy_mj = x1 * bus + x2 * simd`.
pub struct CeEnergyModel {
    model: EnergyModel,
}

/// Output of [`ce_chain_predict`].
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CeChainPrediction {
    pub simd: f64,
    pub bus: f64,
    pub energy_mj: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(CeStatus, String);

impl From<NetError> for Failure {
    fn from(e: NetError) -> Self {
        let status = match e {
            NetError::Overflow(_) => CeStatus::Compute,
            _ => CeStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

impl From<TraceError> for Failure {
    fn from(e: TraceError) -> Self {
        let status = if e.is_out_of_span() || e == TraceError::ZeroVariance {
            CeStatus::Compute
        } else {
            CeStatus::InvalidInput
        };
        Failure(status, e.to_string())
    }
}

impl From<FitError> for Failure {
    fn from(e: FitError) -> Self {
        let status = if e.is_numerical() {
            CeStatus::Compute
        } else {
            CeStatus::InvalidInput
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

/// Runs `body`, records any failure and converts it to a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CeStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            CeStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            CeStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(CeStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(CeStatus::InvalidInput, format!("`{what}` is not UTF-8")))
}

unsafe fn slice<'a>(p: *const f64, n: usize, what: &str) -> Result<&'a [f64], Failure> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn store<T>(out: *mut T, value: T) {
    ptr::write(out, value);
}

/// Message of the last failure on this thread, or an empty string after a
/// success. The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn ce_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses a JSON network description.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ce_network_parse(
    json: *const c_char,
    out: *mut *mut CeNetwork,
) -> CeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = parse_network(text(json, "json")?)?;
        store(out, Box::into_raw(Box::new(CeNetwork { spec })));
        Ok(())
    })
}

/// Number of layers in the network.
///
/// # Safety
/// `net` must come from [`ce_network_parse`]; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ce_network_layer_count(
    net: *const CeNetwork,
    out: *mut usize,
) -> CeStatus {
    guard(|| {
        let net = handle(net, "net")?;
        if out.is_null() {
            return Err(null("out"));
        }
        store(out, net.spec.layers.len());
        Ok(())
    })
}

/// Sum of MACs over the conv and depthwise-separable layers, batch included.
///
/// # Safety
/// `net` must come from [`ce_network_parse`]; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ce_network_total_conv_mac(
    net: *const CeNetwork,
    out: *mut u64,
) -> CeStatus {
    guard(|| {
        let net = handle(net, "net")?;
        if out.is_null() {
            return Err(null("out"));
        }
        store(out, network_costs(&net.spec)?.total_conv_mac);
        Ok(())
    })
}

/// Sum of storage bytes over all layers, batch included.
///
/// # Safety
/// `net` must come from [`ce_network_parse`]; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ce_network_total_storage_bytes(
    net: *const CeNetwork,
    out: *mut u64,
) -> CeStatus {
    guard(|| {
        let net = handle(net, "net")?;
        if out.is_null() {
            return Err(null("out"));
        }
        store(out, network_costs(&net.spec)?.total_storage_bytes);
        Ok(())
    })
}

/// Releases a network. Null is ignored.
///
/// # Safety
/// `net` must come from [`ce_network_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ce_network_free(net: *mut CeNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Parses a trace CSV: `t_s` followed by channel columns in mW.
///
/// # Safety
/// `csv` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ce_trace_parse_csv(
    csv: *const c_char,
    out: *mut *mut CeTrace,
) -> CeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let trace = parse_trace(text(csv, "csv")?)?;
        store(out, Box::into_raw(Box::new(CeTrace { trace })));
        Ok(())
    })
}

/// Energy in mJ on `channel` over `[t0, t1]`. A null `channel` selects the
/// trace's default rail.
///
/// # Safety
/// `trace` must come from [`ce_trace_parse_csv`]; `channel` is null or a
/// NUL-terminated string; `out_mj` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ce_trace_integrate(
    trace: *const CeTrace,
    channel: *const c_char,
    t0: f64,
    t1: f64,
    out_mj: *mut f64,
) -> CeStatus {
    guard(|| {
        let trace = &handle(trace, "trace")?.trace;
        if out_mj.is_null() {
            return Err(null("out_mj"));
        }
        let channel = if channel.is_null() {
            trace.default_channel()
        } else {
            text(channel, "channel")?.parse::<Channel>()?
        };
        store(out_mj, integrate(trace, channel, t0, t1)?);
        Ok(())
    })
}

/// First and last timestamps of the trace, in seconds.
///
/// # Safety
/// `trace` must come from [`ce_trace_parse_csv`]; both outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn ce_trace_span(
    trace: *const CeTrace,
    start: *mut f64,
    end: *mut f64,
) -> CeStatus {
    guard(|| {
        let trace = &handle(trace, "trace")?.trace;
        if start.is_null() || end.is_null() {
            return Err(null("start/end"));
        }
        store(start, trace.start());
        store(end, trace.end());
        Ok(())
    })
}

/// Releases a trace. Null is ignored.
///
/// # Safety
/// `trace` must come from [`ce_trace_parse_csv`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ce_trace_free(trace: *mut CeTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}

/// Least-squares slope of `y = c * x` through the origin.
///
/// # Safety
/// `x` and `y` must each hold `n` values; `out_slope` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ce_fit_origin_1d(
    x: *const f64,
    y: *const f64,
    n: usize,
    out_slope: *mut f64,
) -> CeStatus {
    guard(|| {
        let (x, y) = (slice(x, n, "x")?, slice(y, n, "y")?);
        if out_slope.is_null() {
            return Err(null("out_slope"));
        }
        let pairs: Vec<(f64, f64)> = x.iter().copied().zip(y.iter().copied()).collect();
        store(out_slope, fit_origin_1d(&pairs)?.slope);
        Ok(())
    })
}

/// Fits `energy = x1 * bus + x2 * simd` through the origin.
///
/// # Safety
/// `bus`, `simd` and `energy` must each hold `n` values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ce_fit_origin_2d(
    bus: *const f64,
    simd: *const f64,
    energy: *const f64,
    n: usize,
    out: *mut *mut CeEnergyModel,
) -> CeStatus {
    guard(|| {
        let (bus, simd, energy) = (
            slice(bus, n, "bus")?,
            slice(simd, n, "simd")?,
            slice(energy, n, "energy")?,
        );
        if out.is_null() {
            return Err(null("out"));
        }
        let rows: Vec<(f64, f64, f64)> = (0..n).map(|i| (bus[i], simd[i], energy[i])).collect();
        let model = fit_origin_2d(&rows)?;
        store(out, Box::into_raw(Box::new(CeEnergyModel { model })));
        Ok(())
    })
}

/// Builds an energy model from known coefficients.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ce_energy_model_new(
    x1: f64,
    x2: f64,
    out: *mut *mut CeEnergyModel,
) -> CeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if !x1.is_finite() || !x2.is_finite() {
            return Err(Failure(
                CeStatus::InvalidInput,
                "coefficients must be finite".into(),
            ));
        }
        store(
            out,
            Box::into_raw(Box::new(CeEnergyModel {
                model: EnergyModel::new(x1, x2),
            })),
        );
        Ok(())
    })
}

/// Reads the bus (`x1`) and SIMD (`x2`) coefficients.
///
/// # Safety
/// `model` must be a live handle; both outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn ce_energy_model_coefficients(
    model: *const CeEnergyModel,
    x1: *mut f64,
    x2: *mut f64,
) -> CeStatus {
    guard(|| {
        let m = &handle(model, "model")?.model;
        if x1.is_null() || x2.is_null() {
            return Err(null("x1/x2"));
        }
        store(x1, m.bus_coef);
        store(x2, m.simd_coef);
        Ok(())
    })
}

/// Energy in mJ for the given counters.
///
/// # Safety
/// `model` must be a live handle; `out_mj` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ce_energy_model_predict(
    model: *const CeEnergyModel,
    bus: f64,
    simd: f64,
    out_mj: *mut f64,
) -> CeStatus {
    guard(|| {
        let m = &handle(model, "model")?.model;
        if out_mj.is_null() {
            return Err(null("out_mj"));
        }
        store(out_mj, m.predict(bus, simd));
        Ok(())
    })
}

/// Releases an energy model. Null is ignored.
///
/// # Safety
/// `model` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ce_energy_model_free(model: *mut CeEnergyModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Chains MAC -> SIMD (slope `c1`) -> bus (slope `c2`) -> energy.
///
/// # Safety
/// `model` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ce_chain_predict(
    mac: u64,
    c1: f64,
    c2: f64,
    model: *const CeEnergyModel,
    out: *mut CeChainPrediction,
) -> CeStatus {
    guard(|| {
        let m = &handle(model, "model")?.model;
        if out.is_null() {
            return Err(null("out"));
        }
        let p = chain_predict(mac, &OriginModel::new(c1), &OriginModel::new(c2), m);
        store(
            out,
            CeChainPrediction {
                simd: p.simd,
                bus: p.bus,
                energy_mj: p.energy_mj,
            },
        );
        Ok(())
    })
}

/// Pearson correlation of two series of length `n`.
///
/// # Safety
/// `x` and `y` must each hold `n` values; `out_r` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ce_pearson(
    x: *const f64,
    y: *const f64,
    n: usize,
    out_r: *mut f64,
) -> CeStatus {
    guard(|| {
        let (x, y) = (slice(x, n, "x")?, slice(y, n, "y")?);
        if out_r.is_null() {
            return Err(null("out_r"));
        }
        store(out_r, pearson(x, y)?);
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_classes_follow_error_kind() {
        assert_eq!(
            Failure::from(NetError::Overflow("c".into())).0,
            CeStatus::Compute
        );
        assert_eq!(
            Failure::from(NetError::EmptyNetwork).0,
            CeStatus::InvalidInput
        );
        assert_eq!(Failure::from(TraceError::ZeroVariance).0, CeStatus::Compute);
        assert_eq!(
            Failure::from(TraceError::TooFewPoints(1)).0,
            CeStatus::InvalidInput
        );
        assert_eq!(Failure::from(FitError::Singular(0.0)).0, CeStatus::Compute);
        assert_eq!(Failure::from(FitError::Empty).0, CeStatus::InvalidInput);
    }

    #[test]
    fn panics_become_a_status() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, CeStatus::Panic);
        let msg = unsafe { CStr::from_ptr(ce_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "internal panic");
    }

    #[test]
    fn interior_nul_in_message_is_replaced() {
        set_last_error("a\0b");
        let msg = unsafe { CStr::from_ptr(ce_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "a b");
    }
}
