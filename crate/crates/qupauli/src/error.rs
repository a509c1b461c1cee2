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

//! Crate-wide error type.
//!
//! Every fallible operation returns one of these variants; the CLI maps
//! [`Error::Parse`] to exit code 2 and everything else to exit code 1.

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A dimension `d < 2` (or otherwise malformed) was supplied.
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    /// Matrix shapes are incompatible for the requested operation.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    /// Operands live over different rings.
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    /// A square matrix was required.
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    /// Minor order outside `0..=min(rows, cols)`.
    #[error("minor order {j} out of range for {rows}x{cols} matrix")]
    OutOfRange { j: usize, rows: usize, cols: usize },
    /// `a` is not a unit modulo `d`.
    #[error("{a} is not a unit modulo {d}")]
    NotAUnit { a: u64, d: u64 },
    /// The matrix is not alternating (A = -A^T with zero diagonal).
    #[error("matrix is not alternating: {0}")]
    NotAlternating(String),
    /// Pauli operands disagree in `d` or `n`.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// Text input failed to parse; `pos` is a byte offset into the input.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// A relation tuple contains an entry `≡ 0 (mod d)` or is otherwise
    /// unachievable as stated.
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    /// A scaling would send some relation entry to `0 (mod d)`.
    #[error("invalid scaling: {0}")]
    InvalidScaling(String),
    /// The supplied transformation matrix is not invertible over `Z_d`.
    #[error("matrix is not invertible over Z_{d}")]
    NotInvertible { d: u64 },
    /// The element does not decompose over the supplied pair basis.
    #[error("element is not in the span of the supplied pairs: {0}")]
    NotInSpan(String),
    /// The supplied lists do not form non-commuting pairs.
    #[error("not a collection of non-commuting pairs: {0}")]
    NotPairs(String),
    /// An input set fails pairwise non-commutation.
    #[error("not a non-commuting set: {0}")]
    NotNonCommuting(String),
    /// A brute-force enumeration exceeded its cap.
    #[error("enumeration cap of {cap} exceeded")]
    CapExceeded { cap: usize },
    /// A brute-force search instance is too large for the oracle.
    #[error("instance too large for brute-force search: {0}")]
    TooLarge(String),
}
