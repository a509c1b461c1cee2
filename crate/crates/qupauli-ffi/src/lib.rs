// Copyright 2026 the qupauli authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! C ABI for the qupauli library.
//!
//! Conventions: every object crosses the boundary as an opaque handle
//! allocated by this crate and released with the matching `_free` function;
//! every fallible call returns a [`QupauliStatus`] and writes results
//! through out-pointers; strings are NUL-terminated UTF-8 copied into
//! caller-supplied buffers. All functions are panic-safe: a Rust panic is
//! caught and reported as `QUPAULI_STATUS_INTERNAL`.
//!
//! The matching C header is generated into `include/qupauli.h` at build
//! time.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qupauli::groups::{identity_subgroup_generator, subgroup_order};
use qupauli::pauli::{
    comm_phase, format_pauli, parse_pauli, pauli_order, pmul, ppow, PauliElement, PauliList,
};
use qupauli::relations::{achieve_relation, RelationTuple};
use qupauli::zring::{totients, Dimension};
use qupauli::Error;

/// Status codes returned by every fallible call.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QupauliStatus {
    /// Success.
    Ok = 0,
    /// A dimension `d < 2` was supplied.
    InvalidDimension = 1,
    /// Matrix or vector shapes are incompatible.
    ShapeMismatch = 2,
    /// Operands live over different rings.
    RingMismatch = 3,
    /// Operands disagree in `d` or `n`.
    DimensionMismatch = 4,
    /// Text input failed to parse.
    ParseError = 5,
    /// A relation tuple is malformed or unachievable as stated.
    InvalidRelation = 6,
    /// An element is outside the relevant span or group.
    NotInSpan = 7,
    /// A search cap or size limit was exceeded.
    TooLarge = 8,
    /// A NULL pointer was passed where an object was required.
    NullPointer = 9,
    /// A caller-supplied buffer is too small; retry with the reported size.
    BufferTooSmall = 10,
    /// Input bytes are not valid UTF-8.
    InvalidUtf8 = 11,
    /// Any other library error.
    Domain = 12,
    /// An internal invariant failed (caught panic).
    Internal = 13,
}

fn status_of(e: &Error) -> QupauliStatus {
    match e {
        Error::InvalidDimension(_) => QupauliStatus::InvalidDimension,
        Error::ShapeMismatch(_) | Error::NotSquare { .. } | Error::OutOfRange { .. } => {
            QupauliStatus::ShapeMismatch
        }
        Error::RingMismatch(_) => QupauliStatus::RingMismatch,
        Error::DimensionMismatch(_) => QupauliStatus::DimensionMismatch,
        Error::Parse { .. } => QupauliStatus::ParseError,
        Error::InvalidRelation(_) | Error::InvalidScaling(_) => QupauliStatus::InvalidRelation,
        Error::NotInSpan(_) => QupauliStatus::NotInSpan,
        Error::CapExceeded { .. } | Error::TooLarge(_) => QupauliStatus::TooLarge,
        _ => QupauliStatus::Domain,
    }
}

/// Opaque handle to a Pauli element.
pub struct QupauliPauli(PauliElement);

/// Opaque handle to a list of Pauli elements sharing one `(d, n)`.
pub struct QupauliList(PauliList);

/// Run `f` with panics converted to `Internal`.
fn guarded(f: impl FnOnce() -> QupauliStatus) -> QupauliStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(QupauliStatus::Internal)
}

/// Copy `s` plus a NUL terminator into `buf` of capacity `cap`; `*needed`
/// always receives the required capacity.
unsafe fn write_str(
    s: &str,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> QupauliStatus {
    let bytes = s.as_bytes();
    if !needed.is_null() {
        *needed = bytes.len() + 1;
    }
    if buf.is_null() || cap < bytes.len() + 1 {
        return QupauliStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, bytes.len());
    *buf.add(bytes.len()) = 0;
    QupauliStatus::Ok
}

/// A static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn qupauli_status_message(status: QupauliStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        QupauliStatus::Ok => b"ok\0",
        QupauliStatus::InvalidDimension => b"invalid dimension\0",
        QupauliStatus::ShapeMismatch => b"shape mismatch\0",
        QupauliStatus::RingMismatch => b"ring mismatch\0",
        QupauliStatus::DimensionMismatch => b"dimension mismatch\0",
        QupauliStatus::ParseError => b"parse error\0",
        QupauliStatus::InvalidRelation => b"invalid relation\0",
        QupauliStatus::NotInSpan => b"element not in span\0",
        QupauliStatus::TooLarge => b"instance too large\0",
        QupauliStatus::NullPointer => b"null pointer\0",
        QupauliStatus::BufferTooSmall => b"buffer too small\0",
        QupauliStatus::InvalidUtf8 => b"invalid utf-8\0",
        QupauliStatus::Domain => b"domain error\0",
        QupauliStatus::Internal => b"internal error\0",
    };
    msg.as_ptr() as *const c_char
}

// ---------------------------------------------------------------------------
// Pauli elements.
// ---------------------------------------------------------------------------

/// Create a Pauli from a phase and a length-`2n` exponent vector
/// (X-exponents first). On success `*out` owns the new handle.
///
/// # Safety
/// `vec` must point to `2 * n` readable `uint64_t`s and `out` must be a
/// valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qupauli_pauli_new(
    d: u64,
    n: usize,
    phase: u64,
    vec: *const u64,
    out: *mut *mut QupauliPauli,
) -> QupauliStatus {
    if out.is_null() || (vec.is_null() && n > 0) {
        return QupauliStatus::NullPointer;
    }
    guarded(|| {
        let entries = std::slice::from_raw_parts(vec, 2 * n).to_vec();
        let dim = match Dimension::new(d) {
            Ok(dim) => dim,
            Err(e) => return status_of(&e),
        };
        match PauliElement::new(dim, n, phase, entries) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(QupauliPauli(p)));
                QupauliStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Parse a Pauli from its text form `w<j> X<a>Z<b> ...`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qupauli_pauli_parse(
    text: *const c_char,
    d: u64,
    n: usize,
    out: *mut *mut QupauliPauli,
) -> QupauliStatus {
    if text.is_null() || out.is_null() {
        return QupauliStatus::NullPointer;
    }
    guarded(|| {
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return QupauliStatus::InvalidUtf8;
        };
        let dim = match Dimension::new(d) {
            Ok(dim) => dim,
            Err(e) => return status_of(&e),
        };
        match parse_pauli(text, &dim, n) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(QupauliPauli(p)));
                QupauliStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Release a Pauli handle. NULL is ignored.
///
/// # Safety
/// `p` must be a handle returned by this library, released at most once.
#[no_mangle]
pub unsafe extern "C" fn qupauli_pauli_free(p: *mut QupauliPauli) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Write the text form of `p` into `buf`; `*needed` receives the required
/// capacity including the NUL terminator.
///
/// # Safety
/// `p` must be a live handle; `buf` (if non-NULL) must have capacity `cap`.
#[no_mangle]
pub unsafe extern "C" fn qupauli_pauli_format(
    p: *const QupauliPauli,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> QupauliStatus {
    if p.is_null() {
        return QupauliStatus::NullPointer;
    }
    guarded(|| write_str(&format_pauli(&(*p).0), buf, cap, needed))
}

/// Product `a · b`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qupauli_pauli_mul(
    a: *const QupauliPauli,
    b: *const QupauliPauli,
    out: *mut *mut QupauliPauli,
) -> QupauliStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return QupauliStatus::NullPointer;
    }
    guarded(|| match pmul(&(*a).0, &(*b).0) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(QupauliPauli(p)));
            QupauliStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Power `p^t` by the closed form.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qupauli_pauli_pow(
    p: *const QupauliPauli,
    t: u64,
    out: *mut *mut QupauliPauli,
) -> QupauliStatus {
    if p.is_null() || out.is_null() {
        return QupauliStatus::NullPointer;
    }
    guarded(|| {
        *out = Box::into_raw(Box::new(QupauliPauli(ppow(&(*p).0, t))));
        QupauliStatus::Ok
    })
}

/// Multiplicative order of `p`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qupauli_pauli_order(
    p: *const QupauliPauli,
    out: *mut u64,
) -> QupauliStatus {
    if p.is_null() || out.is_null() {
        return QupauliStatus::NullPointer;
    }
    guarded(|| {
        *out = pauli_order(&(*p).0);
        QupauliStatus::Ok
    })
}

/// Commutator phase `⟦a, b⟧` with `[a, b] = ω^c I`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qupauli_comm_phase(
    a: *const QupauliPauli,
    b: *const QupauliPauli,
    out: *mut u64,
) -> QupauliStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return QupauliStatus::NullPointer;
    }
    guarded(|| match comm_phase(&(*a).0, &(*b).0) {
        Ok(c) => {
            *out = c;
            QupauliStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

// ---------------------------------------------------------------------------
// Pauli lists.
// ---------------------------------------------------------------------------

/// Create an empty list of Paulis on `n` qudits of dimension `d`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qupauli_list_new(
    d: u64,
    n: usize,
    out: *mut *mut QupauliList,
) -> QupauliStatus {
    if out.is_null() {
        return QupauliStatus::NullPointer;
    }
    guarded(|| {
        let dim = match Dimension::new(d) {
            Ok(dim) => dim,
            Err(e) => return status_of(&e),
        };
        *out = Box::into_raw(Box::new(QupauliList(PauliList::empty(dim, n))));
        QupauliStatus::Ok
    })
}

/// Append a copy of `p` to the list.
///
/// # Safety
/// `list` and `p` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn qupauli_list_push(
    list: *mut QupauliList,
    p: *const QupauliPauli,
) -> QupauliStatus {
    if list.is_null() || p.is_null() {
        return QupauliStatus::NullPointer;
    }
    guarded(|| match (*list).0.push((*p).0.clone()) {
        Ok(()) => QupauliStatus::Ok,
        Err(e) => status_of(&e),
    })
}

/// Number of elements in the list.
///
/// # Safety
/// `list` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qupauli_list_len(
    list: *const QupauliList,
    out: *mut usize,
) -> QupauliStatus {
    if list.is_null() || out.is_null() {
        return QupauliStatus::NullPointer;
    }
    *out = (*list).0.len();
    QupauliStatus::Ok
}

/// Copy element `i` out of the list as a fresh handle.
///
/// # Safety
/// `list` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qupauli_list_get(
    list: *const QupauliList,
    i: usize,
    out: *mut *mut QupauliPauli,
) -> QupauliStatus {
    if list.is_null() || out.is_null() {
        return QupauliStatus::NullPointer;
    }
    guarded(|| {
        if i >= (*list).0.len() {
            return QupauliStatus::ShapeMismatch;
        }
        *out = Box::into_raw(Box::new(QupauliPauli((*list).0.get(i).clone())));
        QupauliStatus::Ok
    })
}

/// Release a list handle. NULL is ignored.
///
/// # Safety
/// `list` must be a handle returned by this library, released at most once.
#[no_mangle]
pub unsafe extern "C" fn qupauli_list_free(list: *mut QupauliList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

// ---------------------------------------------------------------------------
// Group and relation queries.
// ---------------------------------------------------------------------------

/// The exponent `μ` with `I_S = ⟨ω^μ I⟩` for the group generated by `list`.
///
/// # Safety
/// `list` must be a live, non-empty handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qupauli_identity_generator_mu(
    list: *const QupauliList,
    out: *mut u64,
) -> QupauliStatus {
    if list.is_null() || out.is_null() {
        return QupauliStatus::NullPointer;
    }
    guarded(|| {
        if (*list).0.is_empty() {
            return QupauliStatus::ShapeMismatch;
        }
        *out = identity_subgroup_generator(&(*list).0).mu();
        QupauliStatus::Ok
    })
}

/// Order of the group generated by `list`, split as
/// `order = hi·2^64 + lo`.
///
/// # Safety
/// `list` must be a live, non-empty handle; `hi` and `lo` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qupauli_subgroup_order(
    list: *const QupauliList,
    hi: *mut u64,
    lo: *mut u64,
) -> QupauliStatus {
    if list.is_null() || hi.is_null() || lo.is_null() {
        return QupauliStatus::NullPointer;
    }
    guarded(|| {
        if (*list).0.is_empty() {
            return QupauliStatus::ShapeMismatch;
        }
        let order = subgroup_order(&(*list).0);
        *hi = (order >> 64) as u64;
        *lo = order as u64;
        QupauliStatus::Ok
    })
}

/// Maximum size of a pairwise non-commuting set of single-qudit Paulis
/// (the Dedekind psi function of `d`).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qupauli_max_noncomm_set_size(
    d: u64,
    out: *mut u64,
) -> QupauliStatus {
    if out.is_null() {
        return QupauliStatus::NullPointer;
    }
    guarded(|| {
        let dim = match Dimension::new(d) {
            Ok(dim) => dim,
            Err(e) => return status_of(&e),
        };
        *out = totients(&dim).0;
        QupauliStatus::Ok
    })
}

/// Build CSS pairs with the prescribed commutator phases `f[0..k]` on the
/// minimum number of qudits; `*out_s` and `*out_t` receive the two lists.
///
/// # Safety
/// `f` must point to `k` readable `uint64_t`s; `out_s` and `out_t` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qupauli_achieve_relation(
    d: u64,
    f: *const u64,
    k: usize,
    out_s: *mut *mut QupauliList,
    out_t: *mut *mut QupauliList,
) -> QupauliStatus {
    if f.is_null() || out_s.is_null() || out_t.is_null() {
        return QupauliStatus::NullPointer;
    }
    guarded(|| {
        let dim = match Dimension::new(d) {
            Ok(dim) => dim,
            Err(e) => return status_of(&e),
        };
        let entries = std::slice::from_raw_parts(f, k).to_vec();
        let tuple = match RelationTuple::new(entries, dim) {
            Ok(t) => t,
            Err(e) => return status_of(&e),
        };
        match achieve_relation(&tuple) {
            Ok(pairs) => {
                *out_s = Box::into_raw(Box::new(QupauliList(pairs.s().clone())));
                *out_t = Box::into_raw(Box::new(QupauliList(pairs.t().clone())));
                QupauliStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}
