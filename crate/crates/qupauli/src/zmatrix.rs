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

//! Dense exact matrices over `Z` and `Z_d` with arbitrary-precision entries:
//! products, determinants (fraction-free Bareiss elimination), gcds of all
//! `j×j` minors, invertibility and inverses over `Z_d`, and the text/JSON
//! serialization formats used by the CLI.

use std::fmt::Write as _;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::zring::{associate_unit, unit_inverse, Dimension};
use crate::{Error, Result};

/// The coefficient ring of a matrix: the integers or `Z_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    /// The ring of integers `Z`.
    Z,
    /// The residue ring `Z_d`.
    Mod(u64),
}

impl Ring {
    /// Modulus if this is `Mod(d)`.
    pub fn modulus(&self) -> Option<u64> {
        match self {
            Ring::Z => None,
            Ring::Mod(d) => Some(*d),
        }
    }

    /// Text tag used by the matrix formats: `Z` or `Z<d>`.
    pub fn tag(&self) -> String {
        match self {
            Ring::Z => "Z".to_string(),
            Ring::Mod(d) => format!("Z{d}"),
        }
    }

    /// Parse a ring tag produced by [`Ring::tag`].
    pub fn parse_tag(tag: &str) -> Result<Ring> {
        if tag == "Z" {
            return Ok(Ring::Z);
        }
        if let Some(rest) = tag.strip_prefix('Z') {
            if let Ok(d) = rest.parse::<u64>() {
                if d >= 2 {
                    return Ok(Ring::Mod(d));
                }
            }
        }
        Err(Error::Parse {
            pos: 0,
            msg: format!("invalid ring tag {tag:?} (expected \"Z\" or \"Z<d>\" with d >= 2)"),
        })
    }
}

/// A dense `rows × cols` matrix with arbitrary-precision integer entries,
/// tagged with its coefficient [`Ring`]. Entries of a `Mod(d)` matrix are
/// kept reduced in `[0, d)` at all times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    ring: Ring,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    /// Zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize, ring: Ring) -> Self {
        ExactMatrix {
            rows,
            cols,
            ring,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize, ring: Ring) -> Self {
        let mut m = ExactMatrix::zero(n, n, ring);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build from row-major entries; entries are reduced into the ring.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        ring: Ring,
        entries: Vec<BigInt>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let mut m = ExactMatrix {
            rows,
            cols,
            ring,
            entries,
        };
        m.reduce_entries();
        Ok(m)
    }

    /// Build from rows of `i64` values (test and construction convenience).
    pub fn from_rows(ring: Ring, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".to_string()));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&v| BigInt::from(v))
            .collect();
        ExactMatrix::from_entries(r, c, ring, entries)
    }

    /// Row count.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Column count.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Coefficient ring.
    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Entry at `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    /// Set entry at `(i, j)`, reducing into the ring.
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = self.reduce_value(v);
    }

    /// Canonical representative of `v` in this matrix's ring (identity over
    /// `Z`, reduction into `[0, d)` over `Mod(d)`).
    pub fn reduce_into_ring(&self, v: BigInt) -> BigInt {
        self.reduce_value(v)
    }

    fn reduce_value(&self, v: BigInt) -> BigInt {
        match self.ring {
            Ring::Z => v,
            Ring::Mod(d) => v.mod_floor(&BigInt::from(d)),
        }
    }

    fn reduce_entries(&mut self) {
        if let Ring::Mod(d) = self.ring {
            let d = BigInt::from(d);
            for e in &mut self.entries {
                *e = e.mod_floor(&d);
            }
        }
    }

    /// Reinterpret over another ring (lift `Mod(d) → Z`, or reduce
    /// `Z → Mod(d)`, or change modulus). Entries are re-reduced.
    pub fn with_ring(&self, ring: Ring) -> ExactMatrix {
        let mut m = self.clone();
        m.ring = ring;
        m.reduce_entries();
        m
    }

    /// Transposed matrix.
    pub fn transpose(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zero(self.cols, self.rows, self.ring);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    /// Negated matrix.
    pub fn neg(&self) -> ExactMatrix {
        let mut m = self.clone();
        for e in &mut m.entries {
            *e = -std::mem::take(e);
        }
        m.reduce_entries();
        m
    }

    /// True iff all entries are zero.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// True iff square, `A = −A^T`, and the diagonal is zero. (Over `Z_d` the
    /// zero-diagonal condition is not implied by `A = −A^T` when `d` is even,
    /// so it is checked separately.)
    pub fn is_alternating(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            if !self.get(i, i).is_zero() {
                return false;
            }
            for j in 0..i {
                let neg = self.reduce_value(-self.get(j, i));
                if *self.get(i, j) != neg {
                    return false;
                }
            }
        }
        true
    }

    /// A column vector holding column `j`.
    pub fn column(&self, j: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zero(self.rows, 1, self.ring);
        for i in 0..self.rows {
            m.set(i, 0, self.get(i, j).clone());
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot concatenate {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                "cannot concatenate matrices over different rings".to_string(),
            ));
        }
        let mut m = ExactMatrix::zero(self.rows, self.cols + other.cols, self.ring);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }

    /// Submatrix of the first `r` rows and `c` columns.
    pub fn top_left(&self, r: usize, c: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zero(r, c, self.ring);
        for i in 0..r {
            for j in 0..c {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        m
    }
}

/// Exact matrix product, reduced mod `d` when the ring is `Mod(d)`.
pub fn mat_mul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch(format!(
            "cannot multiply {} matrix by {} matrix",
            a.ring.tag(),
            b.ring.tag()
        )));
    }
    if a.cols != b.rows {
        return Err(Error::ShapeMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut m = ExactMatrix::zero(a.rows, b.cols, a.ring);
    for i in 0..a.rows {
        for j in 0..b.cols {
            let mut acc = BigInt::zero();
            for k in 0..a.cols {
                acc += a.get(i, k) * b.get(k, j);
            }
            m.set(i, j, acc);
        }
    }
    Ok(m)
}

/// Determinant over `Z` of the lifted entries, by fraction-free (Bareiss)
/// elimination. Exact for any size; all divisions are exact.
fn det_z(a: &ExactMatrix) -> BigInt {
    let n = a.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j).clone()).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Exact determinant: over `Z` directly; over `Mod(d)` computed on the lifted
/// entries and reduced.
pub fn det(a: &ExactMatrix) -> Result<BigInt> {
    if a.rows != a.cols {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let d = det_z(a);
    Ok(match a.ring {
        Ring::Z => d,
        Ring::Mod(m) => d.mod_floor(&BigInt::from(m)),
    })
}

/// Nonnegative gcd over `Z` of all `j×j` minors of `A` (viewing entries as
/// integers), with the convention `minors_gcd(A, 0) = 1`.
///
/// Combinatorial (`C(rows,j)·C(cols,j)` minors); intended as an oracle and
/// uniqueness check for the normal forms, not a hot path.
pub fn minors_gcd(a: &ExactMatrix, j: usize) -> Result<BigInt> {
    if j > a.rows.min(a.cols) {
        return Err(Error::OutOfRange {
            j,
            rows: a.rows,
            cols: a.cols,
        });
    }
    if j == 0 {
        return Ok(BigInt::one());
    }
    let mut g = BigInt::zero();
    for row_set in (0..a.rows).combinations(j) {
        for col_set in (0..a.cols).combinations(j) {
            let mut sub = ExactMatrix::zero(j, j, Ring::Z);
            for (si, &i) in row_set.iter().enumerate() {
                for (sj, &c) in col_set.iter().enumerate() {
                    sub.set(si, sj, a.get(i, c).clone());
                }
            }
            g = g.gcd(&det_z(&sub));
            if g.is_one() {
                return Ok(g);
            }
        }
    }
    Ok(g.abs())
}

/// True iff the square matrix over `Z_d` is invertible, i.e. its determinant
/// is a unit of `Z_d`.
pub fn is_invertible(a: &ExactMatrix) -> Result<bool> {
    let d = match a.ring {
        Ring::Mod(d) => d,
        Ring::Z => {
            // Over Z invertibility means det = ±1.
            return Ok(det(a)?.abs().is_one());
        }
    };
    let dt = det(a)?;
    Ok(dt.gcd(&BigInt::from(d)).is_one())
}

/// Two-sided inverse of an invertible matrix over `Z_d`, via the adjugate
/// scaled by the unit inverse of the determinant.
pub fn inverse_mod(a: &ExactMatrix, dim: &Dimension) -> Result<ExactMatrix> {
    if a.rows != a.cols {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let d = dim.d();
    debug_assert_eq!(a.ring, Ring::Mod(d));
    let n = a.rows;
    let dt = det(a)?;
    let dt_u64: u64 = dt
        .mod_floor(&BigInt::from(d))
        .try_into()
        .expect("reduced determinant fits u64");
    let dt_inv = unit_inverse(dt_u64, dim).map_err(|_| Error::NotInvertible { d })?;
    let mut inv = ExactMatrix::zero(n, n, Ring::Mod(d));
    for i in 0..n {
        for j in 0..n {
            // Cofactor C_{ji} (note the transpose for the adjugate).
            let mut sub = ExactMatrix::zero(n.saturating_sub(1), n.saturating_sub(1), Ring::Z);
            let mut si = 0;
            for r in 0..n {
                if r == j {
                    continue;
                }
                let mut sj = 0;
                for c in 0..n {
                    if c == i {
                        continue;
                    }
                    sub.set(si, sj, a.get(r, c).clone());
                    sj += 1;
                }
                si += 1;
            }
            let mut cof = det_z(&sub);
            if (i + j) % 2 == 1 {
                cof = -cof;
            }
            inv.set(i, j, cof * BigInt::from(dt_inv));
        }
    }
    Ok(inv)
}

/// Unit `u` of `Z_d` with `u · gcd(a, d) ≡ a (mod d)`, as a matrix-friendly
/// helper: used when normalizing diagonal entries to the canonical positive
/// divisor of `d` in their associate class.
pub fn associate_unit_of(a: &BigInt, dim: &Dimension) -> u64 {
    let reduced: u64 = a
        .mod_floor(&BigInt::from(dim.d()))
        .try_into()
        .expect("reduced entry fits u64");
    associate_unit(reduced, dim)
}

// ---------------------------------------------------------------------------
// Serialization: text and JSON formats.
// ---------------------------------------------------------------------------

/// JSON shape of a matrix: `{ "rows", "cols", "ring", "entries" }` with the
/// ring as a tag string and entries as decimal strings (arbitrary precision).
#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub ring: String,
    pub entries: Vec<String>,
}

impl ExactMatrix {
    /// Text format: first line `"<rows> <cols> <ring>"` with ring `Z` or
    /// `Z<d>`, followed by one space-separated line per row.
    pub fn format_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.ring.tag());
        for i in 0..self.rows {
            let row = (0..self.cols)
                .map(|j| self.get(i, j).to_string())
                .join(" ");
            let _ = writeln!(out, "{row}");
        }
        out
    }

    /// Parse the text format produced by [`ExactMatrix::format_text`].
    pub fn parse_text(text: &str) -> Result<ExactMatrix> {
        let mut offset = 0usize;
        let mut lines = Vec::new();
        for line in text.lines() {
            if !line.trim().is_empty() {
                lines.push((offset, line));
            }
            offset += line.len() + 1;
        }
        let Some(&(hpos, header)) = lines.first() else {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty matrix input".to_string(),
            });
        };
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::Parse {
                pos: hpos,
                msg: format!("expected header \"rows cols ring\", got {header:?}"),
            });
        }
        let rows: usize = parts[0].parse().map_err(|_| Error::Parse {
            pos: hpos,
            msg: format!("invalid row count {:?}", parts[0]),
        })?;
        let cols: usize = parts[1].parse().map_err(|_| Error::Parse {
            pos: hpos,
            msg: format!("invalid column count {:?}", parts[1]),
        })?;
        let ring = Ring::parse_tag(parts[2]).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { pos: hpos, msg },
            other => other,
        })?;
        if lines.len() != rows + 1 {
            return Err(Error::Parse {
                pos: hpos,
                msg: format!("expected {rows} row lines, got {}", lines.len() - 1),
            });
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for &(lpos, line) in &lines[1..] {
            let row: Vec<&str> = line.split_whitespace().collect();
            if row.len() != cols {
                return Err(Error::Parse {
                    pos: lpos,
                    msg: format!("expected {cols} entries in row, got {}", row.len()),
                });
            }
            for tok in row {
                let v: BigInt = tok.parse().map_err(|_| Error::Parse {
                    pos: lpos,
                    msg: format!("invalid integer {tok:?}"),
                })?;
                entries.push(v);
            }
        }
        ExactMatrix::from_entries(rows, cols, ring, entries)
    }

    /// JSON-serializable view.
    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            ring: self.ring.tag(),
            entries: self.entries.iter().map(|e| e.to_string()).collect(),
        }
    }

    /// Rebuild from the JSON view.
    pub fn from_json(j: &MatrixJson) -> Result<ExactMatrix> {
        let ring = Ring::parse_tag(&j.ring)?;
        let entries = j
            .entries
            .iter()
            .map(|s| {
                s.parse::<BigInt>().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("invalid integer {s:?} in JSON entries"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ExactMatrix::from_entries(j.rows, j.cols, ring, entries)
    }
}
