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

//! Phase-tracked qudit Pauli algebra on the `(j, v) ∈ Z_d × Z_d^{2n}`
//! representation: an `n`-qudit Pauli is `ω^j P(v)` where the first `n`
//! entries of `v` are X-exponents and the last `n` are Z-exponents
//! (`ω = e^{2πi/d}`). Qudit index 0 is the leftmost tensor factor.
//!
//! The group law never needs the `d^n`-dimensional matrix representation:
//!
//! * product: `(j, v)·(k, w) = (j + k + Σ_i v_{n+i}·w_i,  v + w) mod d`;
//! * power:   `(j, v)^t = (t·j + t(t−1)/2 · Σ_i v_{n+i}·v_i,  t·v) mod d`;
//! * commutator phase: `⟦p, q⟧_d = u^T Λ v mod d` with `Λ = [[0, −I], [I, 0]]`,
//!   so `[p, q] = ω^{⟦p,q⟧} I` and `⟦X, Z⟧_d = −1 ≡ d−1`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::zmatrix::{ExactMatrix, Ring};
use crate::zring::{gcd_u64, Dimension};
use crate::{Error, Result};

/// A single `n`-qudit Pauli operator `ω^{phase} P(vec)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliElement {
    dim: Dimension,
    n: usize,
    phase: u64,
    vec: Vec<u64>,
}

impl PauliElement {
    /// Construct from a phase exponent and a symplectic vector of length
    /// `2n`; all components are reduced into `[0, d)`.
    pub fn new(dim: Dimension, n: usize, phase: u64, vec: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension(
                "qudit count n must be >= 1".to_string(),
            ));
        }
        if vec.len() != 2 * n {
            return Err(Error::DimensionMismatch(format!(
                "symplectic vector must have length {}, got {}",
                2 * n,
                vec.len()
            )));
        }
        let d = dim.d();
        Ok(PauliElement {
            phase: phase % d,
            vec: vec.into_iter().map(|c| c % d).collect(),
            dim,
            n,
        })
    }

    /// The identity operator on `n` qudits.
    pub fn identity(dim: Dimension, n: usize) -> Self {
        PauliElement {
            phase: 0,
            vec: vec![0; 2 * n],
            dim,
            n,
        }
    }

    /// Single-qudit-style constructor: X-exponents `x` and Z-exponents `z`.
    pub fn from_xz(dim: Dimension, phase: u64, x: &[u64], z: &[u64]) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch(format!(
                "X and Z exponent lists differ in length: {} vs {}",
                x.len(),
                z.len()
            )));
        }
        let mut vec = x.to_vec();
        vec.extend_from_slice(z);
        PauliElement::new(dim, x.len(), phase, vec)
    }

    /// The modulus `d`.
    pub fn d(&self) -> u64 {
        self.dim.d()
    }

    /// The factored dimension.
    pub fn dim(&self) -> &Dimension {
        &self.dim
    }

    /// Qudit count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Phase exponent `j = π_1(p)`.
    pub fn phase(&self) -> u64 {
        self.phase
    }

    /// Symplectic vector `v = π_2(p)`, length `2n`.
    pub fn vec(&self) -> &[u64] {
        &self.vec
    }

    /// X-exponents (first `n` entries of `vec`).
    pub fn x_part(&self) -> &[u64] {
        &self.vec[..self.n]
    }

    /// Z-exponents (last `n` entries of `vec`).
    pub fn z_part(&self) -> &[u64] {
        &self.vec[self.n..]
    }

    /// True iff `π_2(p) = 0`, i.e. `p` is a phase multiple of the identity.
    pub fn is_phase_only(&self) -> bool {
        self.vec.iter().all(|&c| c == 0)
    }

    /// True iff `p` is exactly the identity.
    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.is_phase_only()
    }

    /// Same operator with the phase replaced.
    pub fn with_phase(&self, phase: u64) -> Self {
        let mut p = self.clone();
        p.phase = phase % self.d();
        p
    }

    /// Group inverse.
    pub fn inverse(&self) -> Self {
        let d = self.d() as u128;
        let cross: u128 = (0..self.n)
            .map(|i| self.vec[self.n + i] as u128 * self.vec[i] as u128)
            .sum();
        // (j, v)·(k, −v) = (j + k + Σ v_{n+i}(−v_i), 0): solve for k.
        let k = ((cross % d) + d - self.phase as u128 % d) % d;
        PauliElement {
            dim: self.dim.clone(),
            n: self.n,
            phase: k as u64,
            vec: self.vec.iter().map(|&c| (self.d() - c) % self.d()).collect(),
        }
    }

    fn check_compatible(&self, other: &PauliElement) -> Result<()> {
        if self.dim != other.dim || self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "operands disagree: (d={}, n={}) vs (d={}, n={})",
                self.d(),
                self.n,
                other.d(),
                other.n
            )));
        }
        Ok(())
    }
}

/// Product `p·q = (j + k + Σ_i v_{n+i}·w_i, v + w) mod d`.
pub fn pmul(p: &PauliElement, q: &PauliElement) -> Result<PauliElement> {
    p.check_compatible(q)?;
    let d = p.d() as u128;
    let n = p.n;
    let mut cross: u128 = 0;
    for i in 0..n {
        cross += p.vec[n + i] as u128 * q.vec[i] as u128 % d;
    }
    let phase = ((p.phase as u128 + q.phase as u128 + cross) % d) as u64;
    let vec = p
        .vec
        .iter()
        .zip(&q.vec)
        .map(|(&a, &b)| ((a as u128 + b as u128) % d) as u64)
        .collect();
    Ok(PauliElement {
        dim: p.dim.clone(),
        n,
        phase,
        vec,
    })
}

/// Power by the closed form `(t·j + t(t−1)/2 · Σ_i v_{n+i}·v_i, t·v) mod d`;
/// `ppow(p, 0)` is the identity.
pub fn ppow(p: &PauliElement, t: u64) -> PauliElement {
    let d = p.d() as u128;
    let n = p.n;
    let t = t as u128;
    let mut self_cross: u128 = 0;
    for i in 0..n {
        self_cross = (self_cross + p.vec[n + i] as u128 * p.vec[i] as u128) % d;
    }
    // t(t−1) is always even; divide before reducing.
    let binom = t * t.saturating_sub(1) / 2 % d;
    let phase = ((t % d) * (p.phase as u128 % d) % d + binom * self_cross % d) % d;
    let vec = p
        .vec
        .iter()
        .map(|&c| ((t % d) * (c as u128) % d) as u64)
        .collect();
    PauliElement {
        dim: p.dim.clone(),
        n,
        phase: phase as u64,
        vec,
    }
}

/// Commutator phase `⟦p, q⟧_d = u^T Λ v = Σ_i (u_{n+i}·v_i − u_i·v_{n+i})`
/// mod `d`, where `u = π_2(p)`, `v = π_2(q)`. Zero iff `p` and `q` commute.
pub fn comm_phase(p: &PauliElement, q: &PauliElement) -> Result<u64> {
    p.check_compatible(q)?;
    let d = p.d() as i128;
    let n = p.n;
    let mut acc: i128 = 0;
    for i in 0..n {
        acc += p.vec[n + i] as i128 * q.vec[i] as i128 % d;
        acc -= p.vec[i] as i128 * q.vec[n + i] as i128 % d;
    }
    Ok(((acc % d + d) % d) as u64)
}

/// Smallest `t ≥ 1` with `p^t = I`; at most `d` for odd `d`, at most `2d`
/// for even `d`.
pub fn pauli_order(p: &PauliElement) -> u64 {
    let d = p.d();
    if p.is_phase_only() {
        return d / gcd_u64(p.phase, d);
    }
    // The vector part vanishes exactly at multiples of its additive order.
    let vec_gcd = p.vec.iter().fold(0u64, |acc, &c| gcd_u64(acc, c));
    let t_vec = d / gcd_u64(vec_gcd, d);
    let mut t = t_vec;
    loop {
        if ppow(p, t).is_identity() {
            return t;
        }
        t += t_vec;
        assert!(t <= 2 * d, "order exceeds the 2d bound");
    }
}

/// Ordered product `Π_j s_j^{e_j}` (ascending `j`).
pub fn prod_pow(s: &PauliList, exponents: &[u64]) -> Result<PauliElement> {
    if exponents.len() != s.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} exponents for {} generators",
            exponents.len(),
            s.len()
        )));
    }
    let mut acc = PauliElement::identity(s.dim().clone(), s.n());
    for (p, &e) in s.iter().zip(exponents) {
        acc = pmul(&acc, &ppow(p, e))?;
    }
    Ok(acc)
}

/// An ordered multiset of Pauli operators sharing `(d, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliList {
    dim: Dimension,
    n: usize,
    elems: Vec<PauliElement>,
}

impl PauliList {
    /// Build from elements; all must share `(d, n)` and at least one is
    /// required (it pins the shared dimension).
    pub fn new(elems: Vec<PauliElement>) -> Result<Self> {
        let Some(first) = elems.first() else {
            return Err(Error::DimensionMismatch(
                "empty Pauli list: use PauliList::empty(dim, n)".to_string(),
            ));
        };
        let dim = first.dim().clone();
        let n = first.n();
        for e in &elems {
            if *e.dim() != dim || e.n() != n {
                return Err(Error::DimensionMismatch(format!(
                    "list elements disagree: (d={}, n={}) vs (d={}, n={})",
                    dim.d(),
                    n,
                    e.d(),
                    e.n()
                )));
            }
        }
        Ok(PauliList { dim, n, elems })
    }

    /// Empty list with explicit dimension data.
    pub fn empty(dim: Dimension, n: usize) -> Self {
        PauliList {
            dim,
            n,
            elems: Vec::new(),
        }
    }

    /// Shared dimension.
    pub fn dim(&self) -> &Dimension {
        &self.dim
    }

    /// Shared modulus `d`.
    pub fn d(&self) -> u64 {
        self.dim.d()
    }

    /// Shared qudit count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of elements `k`.
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// True iff the list has no elements.
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Element access.
    pub fn get(&self, i: usize) -> &PauliElement {
        &self.elems[i]
    }

    /// Iterate over elements.
    pub fn iter(&self) -> std::slice::Iter<'_, PauliElement> {
        self.elems.iter()
    }

    /// Underlying elements.
    pub fn elems(&self) -> &[PauliElement] {
        &self.elems
    }

    /// Append an element (must match `(d, n)`).
    pub fn push(&mut self, p: PauliElement) -> Result<()> {
        if *p.dim() != self.dim || p.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot push (d={}, n={}) into (d={}, n={}) list",
                p.d(),
                p.n(),
                self.d(),
                self.n
            )));
        }
        self.elems.push(p);
        Ok(())
    }

    /// Concatenation (dimensions must agree).
    pub fn concat(&self, other: &PauliList) -> Result<PauliList> {
        let mut out = self.clone();
        for e in other.iter() {
            out.push(e.clone())?;
        }
        Ok(out)
    }

    /// The `2n × k` matrix `π_2(S)` over `Z_d` whose columns are the
    /// symplectic vectors of the elements.
    pub fn pi2_matrix(&self) -> ExactMatrix {
        let k = self.len();
        let mut m = ExactMatrix::zero(2 * self.n, k, Ring::Mod(self.d()));
        for (j, e) in self.iter().enumerate() {
            for (i, &c) in e.vec().iter().enumerate() {
                m.set(i, j, BigInt::from(c));
            }
        }
        m
    }
}

/// The `k×k` alternating matrix `A_{ij} = ⟦s_i, s_j⟧_d` over `Z_d`.
pub fn commutation_matrix(s: &PauliList) -> ExactMatrix {
    let k = s.len();
    let mut m = ExactMatrix::zero(k, k, Ring::Mod(s.d()));
    for i in 0..k {
        for j in 0..k {
            if i != j {
                let c = comm_phase(s.get(i), s.get(j)).expect("shared (d, n)");
                m.set(i, j, BigInt::from(c));
            }
        }
    }
    m
}

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------

/// JSON shape of a Pauli: `{ "d", "n", "phase", "x": [...], "z": [...] }`.
#[derive(Debug, Serialize, Deserialize)]
pub struct PauliJson {
    pub d: u64,
    pub n: usize,
    pub phase: u64,
    pub x: Vec<u64>,
    pub z: Vec<u64>,
}

impl PauliElement {
    /// JSON-serializable view.
    pub fn to_json(&self) -> PauliJson {
        PauliJson {
            d: self.d(),
            n: self.n,
            phase: self.phase,
            x: self.x_part().to_vec(),
            z: self.z_part().to_vec(),
        }
    }

    /// Rebuild from the JSON view.
    pub fn from_json(j: &PauliJson) -> Result<Self> {
        let dim = Dimension::new(j.d)?;
        if j.x.len() != j.n || j.z.len() != j.n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} X and Z exponents, got {} and {}",
                j.n,
                j.x.len(),
                j.z.len()
            )));
        }
        PauliElement::from_xz(dim, j.phase, &j.x, &j.z)
    }
}

/// Format a Pauli in the text grammar `w<j> X<a>Z<b> …` with one `X<a>Z<b>`
/// factor per qudit.
pub fn format_pauli(p: &PauliElement) -> String {
    let mut out = format!("w{}", p.phase());
    for i in 0..p.n() {
        out.push_str(&format!(" X{}Z{}", p.x_part()[i], p.z_part()[i]));
    }
    out
}

/// Parse the text grammar `w<j> X<a>Z<b> …`; `d` and `n` are supplied out of
/// band. Exponents are reduced into `[0, d)`.
pub fn parse_pauli(text: &str, dim: &Dimension, n: usize) -> Result<PauliElement> {
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    let mut offset = 0usize;
    for part in text.split(' ') {
        if !part.trim().is_empty() {
            tokens.push((offset, part.trim()));
        }
        offset += part.len() + 1;
    }
    if tokens.len() != n + 1 {
        return Err(Error::Parse {
            pos: 0,
            msg: format!(
                "expected phase token plus {n} qudit factors, got {} tokens",
                tokens.len()
            ),
        });
    }
    let (ppos, ptok) = tokens[0];
    let phase: u64 = ptok
        .strip_prefix('w')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse {
            pos: ppos,
            msg: format!("expected phase token \"w<j>\", got {ptok:?}"),
        })?;
    let mut x = Vec::with_capacity(n);
    let mut z = Vec::with_capacity(n);
    for &(pos, tok) in &tokens[1..] {
        let parsed = tok
            .strip_prefix('X')
            .and_then(|rest| rest.split_once('Z'))
            .and_then(|(a, b)| Some((a.parse::<u64>().ok()?, b.parse::<u64>().ok()?)));
        let Some((a, b)) = parsed else {
            return Err(Error::Parse {
                pos,
                msg: format!("expected factor \"X<a>Z<b>\", got {tok:?}"),
            });
        };
        x.push(a);
        z.push(b);
    }
    PauliElement::from_xz(dim.clone(), phase, &x, &z)
}

/// Parse one Pauli per non-empty line.
pub fn parse_pauli_list(text: &str, dim: &Dimension, n: usize) -> Result<PauliList> {
    let mut elems = Vec::new();
    let mut offset = 0usize;
    for line in text.lines() {
        if !line.trim().is_empty() {
            let p = parse_pauli(line, dim, n).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse {
                    pos: offset + pos,
                    msg,
                },
                other => other,
            })?;
            elems.push(p);
        }
        offset += line.len() + 1;
    }
    if elems.is_empty() {
        return Ok(PauliList::empty(dim.clone(), n));
    }
    PauliList::new(elems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dim(d: u64) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn pauli(d: u64, phase: u64, x: &[u64], z: &[u64]) -> PauliElement {
        PauliElement::from_xz(dim(d), phase, x, z).unwrap()
    }

    fn all_elements(d: u64, n: usize) -> Vec<PauliElement> {
        let dm = dim(d);
        let total = d.pow(2 * n as u32 + 1);
        (0..total)
            .map(|code| {
                let mut c = code;
                let phase = c % d;
                c /= d;
                let vec: Vec<u64> = (0..2 * n)
                    .map(|_| {
                        let v = c % d;
                        c /= d;
                        v
                    })
                    .collect();
                PauliElement::new(dm.clone(), n, phase, vec).unwrap()
            })
            .collect()
    }

    #[test]
    fn pmul_reference_values() {
        // d=2: Z·X = ω XZ (the cross term fires), X·Z = XZ.
        let x = pauli(2, 0, &[1], &[0]);
        let z = pauli(2, 0, &[0], &[1]);
        let zx = pmul(&z, &x).unwrap();
        assert_eq!((zx.phase(), zx.vec()), (1, &[1, 1][..]));
        let xz = pmul(&x, &z).unwrap();
        assert_eq!((xz.phase(), xz.vec()), (0, &[1, 1][..]));
        // Identity is neutral.
        let id = PauliElement::identity(dim(2), 1);
        assert_eq!(pmul(&x, &id).unwrap(), x);
        // d=10: (ωX⁶)² = ω²X².
        let p = pauli(10, 1, &[6], &[0]);
        let sq = pmul(&p, &p).unwrap();
        assert_eq!((sq.phase(), sq.vec()), (2, &[2, 0][..]));
        // Mismatched dimensions are rejected.
        assert!(pmul(&x, &p).is_err());
    }

    #[test]
    fn ppow_reference_values() {
        // d even: (XZ)^d = ω^{d/2} I = −I.
        for d in [2u64, 4, 6, 10, 12] {
            let p = pauli(d, 0, &[1], &[1]);
            let pd = ppow(&p, d);
            assert_eq!((pd.phase(), pd.is_phase_only()), (d / 2, true));
        }
        // t = 0 gives the identity.
        let p = pauli(12, 7, &[3], &[5]);
        assert!(ppow(&p, 0).is_identity());
        // d=10: (ωX⁶)⁵ = ω⁵I.
        let p = pauli(10, 1, &[6], &[0]);
        let p5 = ppow(&p, 5);
        assert_eq!((p5.phase(), p5.is_phase_only()), (5, true));
    }

    #[test]
    fn ppow_matches_repeated_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in [2u64, 3, 5, 6, 8, 12, 15] {
            let dm = dim(d);
            for _ in 0..20 {
                let n = rng.gen_range(1..=2);
                let p = PauliElement::new(
                    dm.clone(),
                    n,
                    rng.gen_range(0..d),
                    (0..2 * n).map(|_| rng.gen_range(0..d)).collect(),
                )
                .unwrap();
                let mut acc = PauliElement::identity(dm.clone(), n);
                for t in 0..=(2 * d).min(40) {
                    assert_eq!(ppow(&p, t), acc, "d={d} t={t}");
                    acc = pmul(&acc, &p).unwrap();
                }
            }
        }
    }

    #[test]
    fn pmul_associative_exhaustive_small() {
        for d in [2u64, 3] {
            let elems = all_elements(d, 1);
            for a in &elems {
                for b in &elems {
                    let ab = pmul(a, b).unwrap();
                    for c in &elems {
                        let bc = pmul(b, c).unwrap();
                        assert_eq!(pmul(&ab, c).unwrap(), pmul(a, &bc).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_is_two_sided() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for d in [2u64, 4, 6, 9, 12] {
            let dm = dim(d);
            for _ in 0..50 {
                let n = rng.gen_range(1..=3);
                let p = PauliElement::new(
                    dm.clone(),
                    n,
                    rng.gen_range(0..d),
                    (0..2 * n).map(|_| rng.gen_range(0..d)).collect(),
                )
                .unwrap();
                let inv = p.inverse();
                assert!(pmul(&p, &inv).unwrap().is_identity());
                assert!(pmul(&inv, &p).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn comm_phase_reference_values() {
        // ⟦X, Z⟧_d = d−1.
        for d in [2u64, 3, 6, 10, 15] {
            let x = pauli(d, 0, &[1], &[0]);
            let z = pauli(d, 0, &[0], &[1]);
            assert_eq!(comm_phase(&x, &z).unwrap(), d - 1);
            assert_eq!(comm_phase(&x, &x).unwrap(), 0);
        }
        // d=6: ⟦X³, Z³⟧ = −9 ≡ 3.
        let x3 = pauli(6, 0, &[3], &[0]);
        let z3 = pauli(6, 0, &[0], &[3]);
        assert_eq!(comm_phase(&x3, &z3).unwrap(), 3);
    }

    #[test]
    fn comm_phase_antisymmetric_bilinear_and_matches_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in [2u64, 5, 6, 12, 16] {
            let dm = dim(d);
            for _ in 0..40 {
                let n = rng.gen_range(1..=2);
                let rand_pauli = |rng: &mut ChaCha8Rng| {
                    PauliElement::new(
                        dm.clone(),
                        n,
                        rng.gen_range(0..d),
                        (0..2 * n).map(|_| rng.gen_range(0..d)).collect(),
                    )
                    .unwrap()
                };
                let p = rand_pauli(&mut rng);
                let q = rand_pauli(&mut rng);
                let c = comm_phase(&p, &q).unwrap();
                // Antisymmetry.
                assert_eq!((c + comm_phase(&q, &p).unwrap()) % d, 0);
                // pq and qp differ exactly by the commutator phase.
                let pq = pmul(&p, &q).unwrap();
                let qp = pmul(&q, &p).unwrap();
                assert_eq!(pq.vec(), qp.vec());
                assert_eq!((qp.phase() + c) % d, pq.phase());
                // Bilinearity on powers.
                let a = rng.gen_range(0..d);
                let b = rng.gen_range(0..d);
                assert_eq!(
                    comm_phase(&ppow(&p, a), &ppow(&q, b)).unwrap(),
                    a as u128 as u64 * b % d * c % d
                );
            }
        }
    }

    #[test]
    fn pauli_order_values() {
        assert_eq!(pauli_order(&PauliElement::identity(dim(9), 1)), 1);
        // XZ has order 2d when d is even.
        assert_eq!(pauli_order(&pauli(4, 0, &[1], &[1])), 8);
        // X has order d.
        for d in [2u64, 5, 6, 12] {
            assert_eq!(pauli_order(&pauli(d, 0, &[1], &[0])), d);
        }
        // Exhaustive cross-check against repeated multiplication.
        for d in [2u64, 3, 4, 6] {
            for p in all_elements(d, 1) {
                let t = pauli_order(&p);
                assert!(ppow(&p, t).is_identity());
                for s in 1..t {
                    assert!(!ppow(&p, s).is_identity(), "d={d} p={p:?} s={s}");
                }
                if d % 2 == 1 {
                    assert!(t <= d);
                } else {
                    assert!(t <= 2 * d);
                }
            }
        }
    }

    #[test]
    fn max_degree_branches() {
        // d odd: p^d = I always; d even: p^d ∈ {I, ω^{d/2}I} matching the
        // parity of Σ v_{n+i}·v_i.
        for d in [3u64, 5, 9, 2, 4, 6, 8] {
            for p in all_elements(d, 1) {
                let pd = ppow(&p, d);
                assert!(pd.is_phase_only());
                if d % 2 == 1 {
                    assert!(pd.is_identity());
                } else {
                    let parity = (p.vec()[1] * p.vec()[0]) % 2;
                    let expect = if parity == 1 { d / 2 } else { 0 };
                    assert_eq!(pd.phase(), expect);
                }
            }
        }
    }

    #[test]
    fn commutation_matrix_values() {
        let s = PauliList::new(vec![pauli(2, 0, &[1], &[0]), pauli(2, 0, &[0], &[1])]).unwrap();
        let m = commutation_matrix(&s);
        assert_eq!(
            m,
            ExactMatrix::from_rows(Ring::Mod(2), &[vec![0, 1], vec![1, 0]]).unwrap()
        );
        let single = PauliList::new(vec![pauli(5, 0, &[2], &[3])]).unwrap();
        assert!(commutation_matrix(&single).is_zero());
        // d=6 triple on three qudits: all off-diagonal entries 3.
        let x3 = pauli(6, 0, &[1, 1, 1], &[0, 0, 0]);
        let z3 = pauli(6, 0, &[0, 0, 0], &[1, 1, 1]);
        let xz3 = pauli(6, 1, &[1, 1, 1], &[1, 1, 1]);
        let s = PauliList::new(vec![x3, z3, xz3]).unwrap();
        let m = commutation_matrix(&s);
        let expect =
            ExactMatrix::from_rows(Ring::Mod(6), &[vec![0, 3, 3], vec![3, 0, 3], vec![3, 3, 0]])
                .unwrap();
        assert_eq!(m, expect);
        assert!(m.is_alternating());
    }

    #[test]
    fn parse_format_round_trip() {
        let dm = dim(10);
        let p = parse_pauli("w1 X6Z0", &dm, 1).unwrap();
        assert_eq!((p.phase(), p.vec()), (1, &[6, 0][..]));
        assert!(parse_pauli("w0 X0Z0", &dm, 1).unwrap().is_identity());
        let dm6 = dim(6);
        let q = parse_pauli("w2 X1Z1 X0Z3", &dm6, 2).unwrap();
        assert_eq!((q.phase(), q.vec()), (2, &[1, 0, 1, 3][..]));

        // Round trip on random elements.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for d in [2u64, 7, 12] {
            let dm = dim(d);
            for _ in 0..30 {
                let n = rng.gen_range(1..=3);
                let p = PauliElement::new(
                    dm.clone(),
                    n,
                    rng.gen_range(0..d),
                    (0..2 * n).map(|_| rng.gen_range(0..d)).collect(),
                )
                .unwrap();
                assert_eq!(parse_pauli(&format_pauli(&p), &dm, n).unwrap(), p);
                let j = serde_json::to_string(&p.to_json()).unwrap();
                let back: PauliJson = serde_json::from_str(&j).unwrap();
                assert_eq!(PauliElement::from_json(&back).unwrap(), p);
            }
        }

        // Errors carry positions.
        assert!(matches!(
            parse_pauli("v1 X0Z0", &dm, 1),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(matches!(
            parse_pauli("w1 X0Y0", &dm, 1),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(matches!(
            parse_pauli("w1 X0Z0 X1Z1", &dm, 1),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn pauli_list_enforces_shared_dimensions() {
        let a = pauli(6, 0, &[1], &[0]);
        let b = pauli(10, 0, &[1], &[0]);
        assert!(PauliList::new(vec![a.clone(), b]).is_err());
        let list = PauliList::new(vec![a.clone(), a.clone()]).unwrap();
        assert_eq!(list.len(), 2);
        let m = list.pi2_matrix();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert_eq!(*m.get(0, 0), BigInt::from(1));
        assert_eq!(*m.get(1, 0), BigInt::from(0));
    }

    #[test]
    fn prod_pow_orders_ascending() {
        // Π s_j^{e_j} multiplies in ascending index order; with
        // non-commuting generators the order matters, so pin it.
        let x = pauli(3, 0, &[1], &[0]);
        let z = pauli(3, 0, &[0], &[1]);
        let s = PauliList::new(vec![x.clone(), z.clone()]).unwrap();
        let p = prod_pow(&s, &[2, 1]).unwrap();
        let manual = pmul(&ppow(&x, 2), &ppow(&z, 1)).unwrap();
        assert_eq!(p, manual);
    }
}
