//! C interface to `hyperbolica`.
//!
//! Functions that can fail return an [`HbStatus`] and write results through
//! out-pointers. The message of the most recent failure on the calling
//! thread is available from [`hb_last_error_message`]. Objects built by the
//! library are opaque handles released with their `_free` function.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hyperbolica::expr::NaturalFunction;
use hyperbolica::integration::{rs_integral, RsOptions, SumMode, TagRule};
use hyperbolica::intervals::{merge_real_partitions, HInterval, MergeMode, StrongPartition};
use hyperbolica::variation::{total_variation, variation_sum};
use hyperbolica::{Error, Hyperbolic, OrderRelation};

/// A hyperbolic number by its coefficients on the idempotent basis.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HbHyperbolic {
    pub e1: f64,
    pub e2: f64,
}

impl From<Hyperbolic> for HbHyperbolic {
    fn from(h: Hyperbolic) -> Self {
        HbHyperbolic { e1: h.a1, e2: h.a2 }
    }
}

impl From<HbHyperbolic> for Hyperbolic {
    fn from(h: HbHyperbolic) -> Self {
        Hyperbolic::new(h.e1, h.e2)
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// A partition or interval failed validation.
    ValidationFailed = 3,
    /// An expression did not parse.
    SyntaxError = 4,
    /// Division by zero or overflow while evaluating a function.
    EvaluationError = 5,
    /// The result was written but the estimator did not settle.
    NotConverged = 6,
    ZeroDivisor = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HbOrder {
    Less = 0,
    StrictlyLess = 1,
    Equal = 2,
    Greater = 3,
    StrictlyGreater = 4,
    Incomparable = 5,
}

pub const HB_MERGE_DIAGONAL: c_int = 0;
pub const HB_MERGE_E1_FIRST: c_int = 1;
pub const HB_MERGE_E2_FIRST: c_int = 2;

pub const HB_TAGS_LEFT: c_int = 0;
pub const HB_TAGS_RIGHT: c_int = 1;
pub const HB_TAGS_MIDPOINT: c_int = 2;

pub const HB_MODE_PAPER_ABS: c_int = 0;
pub const HB_MODE_SIGNED: c_int = 1;

/// Opaque natural function `F1(x) e1 + F2(y) e2`.
pub struct HbNaturalFunction(NaturalFunction);

/// Opaque validated strong partition.
pub struct HbPartition(StrongPartition);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HbVariation {
    pub value: HbHyperbolic,
    pub partitions_used: usize,
    pub converged: bool,
    pub lower_bound_only: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HbIntegral {
    pub value: HbHyperbolic,
    pub error_estimate: HbHyperbolic,
    pub tag_gap: HbHyperbolic,
    pub refinements: usize,
    pub converged: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<(CString, CString)> = RefCell::new((CString::default(), CString::default()));
}

fn set_error(code: &str, message: &str) {
    let clean = |s: &str| CString::new(s.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = (clean(code), clean(message)));
}

fn status_of(e: &Error) -> HbStatus {
    match e {
        Error::Syntax { .. } | Error::UnknownIdentifier { .. } => HbStatus::SyntaxError,
        Error::DivByZero { .. } | Error::Overflow { .. } => HbStatus::EvaluationError,
        Error::ZeroDivisor(_) | Error::ZeroValue => HbStatus::ZeroDivisor,
        e if e.is_validation() => HbStatus::ValidationFailed,
        _ => HbStatus::InvalidArgument,
    }
}

/// Runs `body`, converting library errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<HbStatus, Error>) -> HbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(e)) => {
            set_error(e.code(), &e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("Panic", "internal panic");
            HbStatus::Panic
        }
    }
}

fn null_pointer(what: &str) -> HbStatus {
    set_error("NullPointer", &format!("{what} is null"));
    HbStatus::NullPointer
}

unsafe fn slice<'a, T>(data: *const T, len: usize) -> Option<&'a [T]> {
    if len == 0 {
        Some(&[])
    } else if data.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(data, len))
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Error> {
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Error::InvalidArgument("expression is not UTF-8".into()))
}

/// Message of the last failure on this thread, or an empty string. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().1.as_ptr())
}

/// Stable code of the last failure on this thread, such as
/// `"LengthMismatch"`, or an empty string.
#[no_mangle]
pub extern "C" fn hb_last_error_code() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().0.as_ptr())
}

#[no_mangle]
pub extern "C" fn hb_from_canonical(t: f64, s: f64) -> HbHyperbolic {
    Hyperbolic::from_canonical(t, s).into()
}

#[no_mangle]
pub extern "C" fn hb_add(x: HbHyperbolic, y: HbHyperbolic) -> HbHyperbolic {
    (Hyperbolic::from(x) + Hyperbolic::from(y)).into()
}

#[no_mangle]
pub extern "C" fn hb_mul(x: HbHyperbolic, y: HbHyperbolic) -> HbHyperbolic {
    (Hyperbolic::from(x) * Hyperbolic::from(y)).into()
}

#[no_mangle]
pub extern "C" fn hb_metric(x: HbHyperbolic, y: HbHyperbolic) -> HbHyperbolic {
    Hyperbolic::from(x).metric(y.into()).into()
}

#[no_mangle]
pub extern "C" fn hb_compare(x: HbHyperbolic, y: HbHyperbolic) -> HbOrder {
    match Hyperbolic::from(x).compare(y.into()) {
        OrderRelation::Less { strict: false } => HbOrder::Less,
        OrderRelation::Less { strict: true } => HbOrder::StrictlyLess,
        OrderRelation::Equal => HbOrder::Equal,
        OrderRelation::Greater { strict: false } => HbOrder::Greater,
        OrderRelation::Greater { strict: true } => HbOrder::StrictlyGreater,
        OrderRelation::Incomparable => HbOrder::Incomparable,
    }
}

#[no_mangle]
pub unsafe extern "C" fn hb_inverse(x: HbHyperbolic, out: *mut HbHyperbolic) -> HbStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    guard(|| {
        *out = Hyperbolic::from(x).inverse()?.into();
        Ok(HbStatus::Ok)
    })
}

/// Parses `f1` (in `x`) and `f2` (in `y`).
#[no_mangle]
pub unsafe extern "C" fn hb_natural_new(
    f1: *const c_char,
    f2: *const c_char,
    out: *mut *mut HbNaturalFunction,
) -> HbStatus {
    if f1.is_null() || f2.is_null() || out.is_null() {
        return null_pointer("argument");
    }
    guard(|| {
        let f = NaturalFunction::parse(text(f1)?, text(f2)?)?;
        *out = Box::into_raw(Box::new(HbNaturalFunction(f)));
        Ok(HbStatus::Ok)
    })
}

#[no_mangle]
pub extern "C" fn hb_natural_identity() -> *mut HbNaturalFunction {
    Box::into_raw(Box::new(HbNaturalFunction(NaturalFunction::identity())))
}

#[no_mangle]
pub unsafe extern "C" fn hb_natural_eval(
    f: *const HbNaturalFunction,
    xi: HbHyperbolic,
    out: *mut HbHyperbolic,
) -> HbStatus {
    if f.is_null() || out.is_null() {
        return null_pointer("argument");
    }
    guard(|| {
        *out = hyperbolica::expr::eval_natural(&(*f).0, xi.into())?.into();
        Ok(HbStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn hb_natural_free(f: *mut HbNaturalFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

fn closed(lo: HbHyperbolic, hi: HbHyperbolic) -> Result<HInterval, Error> {
    HInterval::closed(lo.into(), hi.into())
}

/// Validates `points` as a strong partition of `[lo, hi]`.
#[no_mangle]
pub unsafe extern "C" fn hb_partition_validate(
    lo: HbHyperbolic,
    hi: HbHyperbolic,
    points: *const HbHyperbolic,
    len: usize,
    out: *mut *mut HbPartition,
) -> HbStatus {
    let Some(points) = slice(points, len) else {
        return null_pointer("points");
    };
    if out.is_null() {
        return null_pointer("out");
    }
    guard(|| {
        let pts = points.iter().map(|&p| p.into()).collect();
        let p = StrongPartition::validate(pts, closed(lo, hi)?)?;
        *out = Box::into_raw(Box::new(HbPartition(p)));
        Ok(HbStatus::Ok)
    })
}

/// Merges two strictly increasing real partitions into a strong one.
#[no_mangle]
pub unsafe extern "C" fn hb_partition_merge(
    p: *const f64,
    p_len: usize,
    q: *const f64,
    q_len: usize,
    mode: c_int,
    out: *mut *mut HbPartition,
) -> HbStatus {
    let (Some(p), Some(q)) = (slice(p, p_len), slice(q, q_len)) else {
        return null_pointer("partition");
    };
    if out.is_null() {
        return null_pointer("out");
    }
    guard(|| {
        let mode = match mode {
            HB_MERGE_DIAGONAL => MergeMode::Diagonal,
            HB_MERGE_E1_FIRST => MergeMode::E1First,
            HB_MERGE_E2_FIRST => MergeMode::E2First,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown merge mode {other}"
                )))
            }
        };
        let merged = merge_real_partitions(p, q, mode)?;
        *out = Box::into_raw(Box::new(HbPartition(merged)));
        Ok(HbStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn hb_partition_uniform(
    lo: HbHyperbolic,
    hi: HbHyperbolic,
    n: usize,
    out: *mut *mut HbPartition,
) -> HbStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    guard(|| {
        let p = StrongPartition::uniform(closed(lo, hi)?, n)?;
        *out = Box::into_raw(Box::new(HbPartition(p)));
        Ok(HbStatus::Ok)
    })
}

/// Number of points, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn hb_partition_len(p: *const HbPartition) -> usize {
    p.as_ref().map_or(0, |p| p.0.points().len())
}

/// Copies up to `cap` points into `buf` and returns the total count.
#[no_mangle]
pub unsafe extern "C" fn hb_partition_points(
    p: *const HbPartition,
    buf: *mut HbHyperbolic,
    cap: usize,
) -> usize {
    let Some(p) = p.as_ref() else { return 0 };
    let points = p.0.points();
    if !buf.is_null() {
        for (i, &pt) in points.iter().take(cap).enumerate() {
            *buf.add(i) = pt.into();
        }
    }
    points.len()
}

#[no_mangle]
pub unsafe extern "C" fn hb_partition_diameter(p: *const HbPartition) -> HbHyperbolic {
    p.as_ref()
        .map_or(HbHyperbolic { e1: 0.0, e2: 0.0 }, |p| p.0.diameter().into())
}

#[no_mangle]
pub unsafe extern "C" fn hb_partition_free(p: *mut HbPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

#[no_mangle]
pub unsafe extern "C" fn hb_variation_sum(
    f: *const HbNaturalFunction,
    p: *const HbPartition,
    out: *mut HbHyperbolic,
) -> HbStatus {
    if f.is_null() || p.is_null() || out.is_null() {
        return null_pointer("argument");
    }
    guard(|| {
        *out = variation_sum(&(*f).0, &(*p).0)?.into();
        Ok(HbStatus::Ok)
    })
}

/// Total variation on `[lo, hi]`. Returns `NotConverged` with the lower
/// bound written when refinement ran out of depth.
#[no_mangle]
pub unsafe extern "C" fn hb_total_variation(
    f: *const HbNaturalFunction,
    lo: HbHyperbolic,
    hi: HbHyperbolic,
    tol: f64,
    max_depth: usize,
    out: *mut HbVariation,
) -> HbStatus {
    if f.is_null() || out.is_null() {
        return null_pointer("argument");
    }
    guard(|| {
        let v = total_variation(&(*f).0, &closed(lo, hi)?, tol, max_depth)?;
        *out = HbVariation {
            value: v.value.into(),
            partitions_used: v.partitions_used,
            converged: v.converged,
            lower_bound_only: v.lower_bound_only,
        };
        Ok(if v.converged {
            HbStatus::Ok
        } else {
            HbStatus::NotConverged
        })
    })
}

/// `∫ F d_k G` on `[lo, hi]`. `tags` is one of the `HB_TAGS_*` constants and
/// `mode` one of `HB_MODE_*`.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn hb_rs_integral(
    f: *const HbNaturalFunction,
    g: *const HbNaturalFunction,
    lo: HbHyperbolic,
    hi: HbHyperbolic,
    tol: f64,
    tags: c_int,
    mode: c_int,
    max_refinements: usize,
    out: *mut HbIntegral,
) -> HbStatus {
    if f.is_null() || g.is_null() || out.is_null() {
        return null_pointer("argument");
    }
    guard(|| {
        let tags = match tags {
            HB_TAGS_LEFT => TagRule::Left,
            HB_TAGS_RIGHT => TagRule::Right,
            HB_TAGS_MIDPOINT => TagRule::Midpoint,
            other => return Err(Error::InvalidArgument(format!("unknown tag rule {other}"))),
        };
        let mode = match mode {
            HB_MODE_PAPER_ABS => SumMode::PaperAbs,
            HB_MODE_SIGNED => SumMode::Signed,
            other => return Err(Error::InvalidArgument(format!("unknown sum mode {other}"))),
        };
        let options = RsOptions {
            tol,
            tags,
            mode,
            max_refinements,
        };
        let r = rs_integral(&(*f).0, &(*g).0, &closed(lo, hi)?, &options)?;
        *out = HbIntegral {
            value: r.value.into(),
            error_estimate: r.error_estimate.into(),
            tag_gap: r.tag_gap.into(),
            refinements: r.refinements,
            converged: r.converged,
        };
        Ok(if r.converged {
            HbStatus::Ok
        } else {
            HbStatus::NotConverged
        })
    })
}
