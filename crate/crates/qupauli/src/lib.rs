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

//! Exact computational algebra for the qudit Pauli group over arbitrary
//! (including composite) dimension `d`.
//!
//! The crate represents an `n`-qudit Pauli operator as a pair `(j, v)` of a
//! phase exponent `j ∈ Z_d` and a symplectic vector `v ∈ Z_d^{2n}` (the first
//! `n` entries are X-exponents, the last `n` are Z-exponents), and builds on
//! three exact matrix decompositions:
//!
//! * the Smith normal form over `Z` and `Z_d` ([`normal_forms::snf`]),
//! * the alternating Smith normal form `A = L·B·L^T` ([`normal_forms::asnf`]),
//! * the Howell normal form over `Z_d` with kernel generators and congruence
//!   solving ([`normal_forms::hnf`], [`normal_forms::solve_in_span`]).
//!
//! On top of these, [`relations`] synthesizes non-commuting pairs and sets with
//! prescribed commutation relations on a provably minimal number of qudits,
//! and [`groups`] analyzes subgroups given by generating sets: identity
//! subgroups, near-minimal and minimal generating sets, Gram–Schmidt
//! (pairs + center) generating sets, orders, centers, and decomposition in a
//! pair basis.
//!
//! The [`oracle`] module contains deliberately naive brute-force reference
//! implementations (group closure, exhaustive clique and pair search) used by
//! the test suite to validate every analytic construction at desk scale.
//!
//! All arithmetic is exact; there is no floating point anywhere.

// Index-heavy matrix elimination reads better with explicit ranges.
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod groups;
pub mod normal_forms;
pub mod oracle;
pub mod pauli;
pub mod relations;
pub mod zmatrix;
pub mod zring;

pub use error::Error;

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
