//! C ABI for `groupalg`.
//!
//! Objects are opaque handles created by `*_from_json` style constructors and
//! released with the matching `*_free`. Every fallible call returns a
//! [`GroupalgStatus`]; on failure [`groupalg_last_error`] describes it until
//! the next call on the same thread. Strings returned by the library are
//! freed with [`groupalg_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use groupalg::coarse::CoarseSpace;
use groupalg::crosscheck::theorem_crosscheck;
use groupalg::graph::{DirectedGraph, GraphVerdict};
use groupalg::groupoid::{validate, FiniteGroupoid};
use groupalg::io;
use groupalg::scalar::{Field, Gauss};
use groupalg::selfsim::{validate_cocycle_identities, Conclusion, SelfSimilarAction};
use groupalg::semigroup::{validate_semigroup, FiniteInverseSemigroup};
use groupalg::twisted::{validate_cocycle, TwoCocycle};
use groupalg::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupalgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// Input parsed but violates an axiom.
    Invalid = 4,
    Unsupported = 5,
    CapExceeded = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupalgGraphVerdict {
    NotSimple = 0,
    SimpleAf = 1,
    SimplePurelyInfinite = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupalgConclusion {
    SimplePurelyInfinite = 0,
    HypothesisFails = 1,
    Undetermined = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GroupalgCrossCheck {
    pub simple: bool,
    pub diagonal_maximal_abelian: bool,
    pub topologically_free: bool,
    pub minimal: bool,
    pub agree: bool,
}

pub struct GroupalgGroupoid(FiniteGroupoid);
pub struct GroupalgGraph(DirectedGraph);
pub struct GroupalgSemigroup(FiniteInverseSemigroup);
pub struct GroupalgSelfSimilar(SelfSimilarAction);
pub struct GroupalgCoarse(CoarseSpace);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> GroupalgStatus {
    match e {
        Error::Json(_) | Error::Parse(_) | Error::UnknownLabel(_) | Error::DuplicateLabel(_) => GroupalgStatus::Parse,
        Error::UnsupportedP(_) | Error::RealField | Error::Twisted => GroupalgStatus::Unsupported,
        Error::CapExceeded { .. } => GroupalgStatus::CapExceeded,
        _ => GroupalgStatus::Invalid,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (GroupalgStatus, String)>) -> GroupalgStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GroupalgStatus::Ok,
        Ok(Err((s, m))) => {
            set_error(&m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            GroupalgStatus::Panic
        }
    }
}

fn lib<T>(r: groupalg::Result<T>) -> Result<T, (GroupalgStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, (GroupalgStatus, String)> {
    if s.is_null() {
        return Err((GroupalgStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (GroupalgStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, (GroupalgStatus, String)> {
    p.as_ref().ok_or((GroupalgStatus::NullPointer, "null handle".into()))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), (GroupalgStatus, String)> {
    if out.is_null() {
        return Err((GroupalgStatus::NullPointer, "null output pointer".into()));
    }
    out.write(v);
    Ok(())
}

fn check(rep: groupalg::verdict::ValidationReport) -> Result<(), (GroupalgStatus, String)> {
    match rep.violations.first() {
        None => Ok(()),
        Some(v) => Err((GroupalgStatus::Invalid, format!("{}: {}", v.kind, v.message))),
    }
}

/// Message for the last failed call on this thread; empty after success.
/// Owned by the library; valid until the next call.
#[no_mangle]
pub extern "C" fn groupalg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn groupalg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub unsafe extern "C" fn groupalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a groupoid.
#[no_mangle]
pub unsafe extern "C" fn groupalg_groupoid_from_json(
    json: *const c_char,
    out: *mut *mut GroupalgGroupoid,
) -> GroupalgStatus {
    guard(|| {
        let g = lib(io::groupoid_from_json(text(json)?))?;
        check(validate(&g))?;
        write(out, Box::into_raw(Box::new(GroupalgGroupoid(g))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn groupalg_groupoid_free(g: *mut GroupalgGroupoid) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

#[no_mangle]
pub unsafe extern "C" fn groupalg_groupoid_arrow_count(g: *const GroupalgGroupoid) -> usize {
    g.as_ref().map_or(0, |g| g.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn groupalg_groupoid_unit_count(g: *const GroupalgGroupoid) -> usize {
    g.as_ref().map_or(0, |g| g.0.units().len())
}

/// Groupoid as JSON; free with [`groupalg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn groupalg_groupoid_to_json(
    g: *const GroupalgGroupoid,
    out: *mut *mut c_char,
) -> GroupalgStatus {
    guard(|| {
        let s = io::groupoid_to_json(&handle(g)?.0);
        write(out, CString::new(s).expect("json has no NUL").into_raw())
    })
}

#[no_mangle]
pub unsafe extern "C" fn groupalg_groupoid_is_topologically_free(
    g: *const GroupalgGroupoid,
    out: *mut bool,
) -> GroupalgStatus {
    guard(|| write(out, handle(g)?.0.is_topologically_free().holds))
}

#[no_mangle]
pub unsafe extern "C" fn groupalg_groupoid_is_minimal(g: *const GroupalgGroupoid, out: *mut bool) -> GroupalgStatus {
    guard(|| write(out, handle(g)?.0.is_minimal().holds))
}

/// Burnside simplicity and the diagonal test against freeness and
/// minimality. `cocycle_json` may be null for the trivial cocycle.
#[no_mangle]
pub unsafe extern "C" fn groupalg_groupoid_crosscheck(
    g: *const GroupalgGroupoid,
    cocycle_json: *const c_char,
    out: *mut GroupalgCrossCheck,
) -> GroupalgStatus {
    guard(|| {
        let g = &handle(g)?.0;
        let s: TwoCocycle<Gauss> = if cocycle_json.is_null() {
            TwoCocycle::trivial(Field::Complex)
        } else {
            lib(io::cocycle_from_json(g, text(cocycle_json)?))?
        };
        check(validate_cocycle(g, &s))?;
        let c = lib(theorem_crosscheck(g, &s))?;
        write(
            out,
            GroupalgCrossCheck {
                simple: c.simple,
                diagonal_maximal_abelian: c.diagonal_maximal_abelian,
                topologically_free: c.topologically_free,
                minimal: c.minimal,
                agree: c.agree,
            },
        )
    })
}

/// Graph from JSON (text starting with `{`) or DOT.
#[no_mangle]
pub unsafe extern "C" fn groupalg_graph_parse(source: *const c_char, out: *mut *mut GroupalgGraph) -> GroupalgStatus {
    guard(|| {
        let q = lib(groupalg::cli::load_graph(text(source)?))?;
        write(out, Box::into_raw(Box::new(GroupalgGraph(q))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn groupalg_graph_free(q: *mut GroupalgGraph) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

#[no_mangle]
pub unsafe extern "C" fn groupalg_graph_verdict(
    q: *const GroupalgGraph,
    out: *mut GroupalgGraphVerdict,
) -> GroupalgStatus {
    guard(|| {
        let v = match handle(q)?.0.simplicity_verdict() {
            GraphVerdict::NotSimple { .. } => GroupalgGraphVerdict::NotSimple,
            GraphVerdict::SimpleAf => GroupalgGraphVerdict::SimpleAf,
            GraphVerdict::SimplePurelyInfinite => GroupalgGraphVerdict::SimplePurelyInfinite,
        };
        write(out, v)
    })
}

/// Parses and validates an inverse semigroup.
#[no_mangle]
pub unsafe extern "C" fn groupalg_semigroup_from_json(
    json: *const c_char,
    out: *mut *mut GroupalgSemigroup,
) -> GroupalgStatus {
    guard(|| {
        let s = lib(io::semigroup_from_json(text(json)?))?;
        check(validate_semigroup(&s))?;
        write(out, Box::into_raw(Box::new(GroupalgSemigroup(s))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn groupalg_semigroup_free(s: *mut GroupalgSemigroup) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of tight filters, which here are the ultrafilters.
#[no_mangle]
pub unsafe extern "C" fn groupalg_semigroup_tight_filter_count(
    s: *const GroupalgSemigroup,
    out: *mut usize,
) -> GroupalgStatus {
    guard(|| write(out, handle(s)?.0.tight_filters().len()))
}

/// The tight groupoid as a new groupoid handle.
#[no_mangle]
pub unsafe extern "C" fn groupalg_semigroup_tight_groupoid(
    s: *const GroupalgSemigroup,
    out: *mut *mut GroupalgGroupoid,
) -> GroupalgStatus {
    guard(|| {
        let g = handle(s)?.0.tight_groupoid().groupoid;
        write(out, Box::into_raw(Box::new(GroupalgGroupoid(g))))
    })
}

/// Parses a self-similar action and checks its cocycle identities.
#[no_mangle]
pub unsafe extern "C" fn groupalg_selfsim_from_json(
    json: *const c_char,
    out: *mut *mut GroupalgSelfSimilar,
) -> GroupalgStatus {
    guard(|| {
        let a = lib(io::selfsim_from_json(text(json)?))?;
        check(validate_cocycle_identities(&a))?;
        write(out, Box::into_raw(Box::new(GroupalgSelfSimilar(a))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn groupalg_selfsim_free(a: *mut GroupalgSelfSimilar) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Conclusions for the essential and the reduced algebra at search depth
/// `depth`.
#[no_mangle]
pub unsafe extern "C" fn groupalg_selfsim_verdict(
    a: *const GroupalgSelfSimilar,
    depth: usize,
    essential: *mut GroupalgConclusion,
    reduced: *mut GroupalgConclusion,
) -> GroupalgStatus {
    let conv = |c: Conclusion| match c {
        Conclusion::SimplePurelyInfinite => GroupalgConclusion::SimplePurelyInfinite,
        Conclusion::HypothesisFails => GroupalgConclusion::HypothesisFails,
        Conclusion::Undetermined => GroupalgConclusion::Undetermined,
    };
    guard(|| {
        let r = lib(handle(a)?.0.verdict(depth))?;
        write(essential, conv(r.essential))?;
        write(reduced, conv(r.reduced))
    })
}

#[no_mangle]
pub unsafe extern "C" fn groupalg_coarse_from_json(
    json: *const c_char,
    out: *mut *mut GroupalgCoarse,
) -> GroupalgStatus {
    guard(|| {
        let f = lib(io::coarse_from_json::<Gauss>(text(json)?))?;
        write(out, Box::into_raw(Box::new(GroupalgCoarse(f.space))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn groupalg_coarse_free(c: *mut GroupalgCoarse) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

#[no_mangle]
pub unsafe extern "C" fn groupalg_coarse_is_simple(c: *const GroupalgCoarse, out: *mut bool) -> GroupalgStatus {
    guard(|| write(out, lib(handle(c)?.0.is_simple_coarse())?.holds))
}

/// Runs the command line with `argv[0..argc]` (program name first). Output
/// and error text are returned as new strings; either pointer may be null
/// to discard it.
#[no_mangle]
pub unsafe extern "C" fn groupalg_run(
    argc: c_int,
    argv: *const *const c_char,
    exit_code: *mut c_int,
    stdout_text: *mut *mut c_char,
    stderr_text: *mut *mut c_char,
) -> GroupalgStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err((GroupalgStatus::NullPointer, "null argv".into()));
        }
        let mut args = Vec::new();
        for i in 0..argc.max(0) as usize {
            args.push(text(*argv.add(i))?.to_string());
        }
        let o = groupalg::cli::run(args);
        write(exit_code, o.code)?;
        let own = |s: String| CString::new(s.replace('\0', " ")).expect("no NUL").into_raw();
        if !stdout_text.is_null() {
            stdout_text.write(own(o.stdout));
        }
        if !stderr_text.is_null() {
            stderr_text.write(own(o.stderr));
        }
        Ok(())
    })
}
