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

//! Extremal counts and constructions for commutation structure: collections
//! of non-commuting pairs, achievable commutator tuples, realization of
//! alternating commutation matrices on a minimal number of qudits, and
//! maximum non-commuting sets on a single qudit.
//!
//! Throughout, `d = p_0^{α_0} ⋯ p_{m−1}^{α_{m−1}}` and a *non-commuting
//! pair collection* is a pair of lists `S = {s_i}`, `T = {t_i}` where all
//! `s`'s commute, all `t`'s commute, and `s_i` fails to commute with `t_j`
//! exactly when `i = j`. The tuple `f_i = ⟦s_i, t_i⟧_d` of diagonal
//! commutator phases is the *relation* the collection achieves.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::pauli::{comm_phase, PauliElement, PauliList};
use crate::zmatrix::{mat_mul, ExactMatrix, Ring};
use crate::zring::{gcd_u64, solve_congruence, Dimension};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Domain types.
// ---------------------------------------------------------------------------

/// A validated collection of non-commuting pairs `(s_i, t_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCollection {
    s: PauliList,
    t: PauliList,
}

impl PairCollection {
    /// Validate and wrap two lists as a non-commuting pair collection.
    pub fn new(s: PauliList, t: PauliList) -> Result<Self> {
        match verify_pairs(&s, &t)? {
            None => Ok(PairCollection { s, t }),
            Some(v) => Err(Error::NotPairs(v.describe())),
        }
    }

    /// The `s_i` list.
    pub fn s(&self) -> &PauliList {
        &self.s
    }

    /// The `t_i` list.
    pub fn t(&self) -> &PauliList {
        &self.t
    }

    /// Number of pairs `k`.
    pub fn len(&self) -> usize {
        self.s.len()
    }

    /// True iff the collection has no pairs.
    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// Qudit count.
    pub fn n(&self) -> usize {
        self.s.n()
    }

    /// Shared modulus.
    pub fn d(&self) -> u64 {
        self.s.d()
    }

    /// The achieved relation `f_i = ⟦s_i, t_i⟧_d`.
    pub fn commutators(&self) -> Vec<u64> {
        (0..self.len())
            .map(|i| comm_phase(self.s.get(i), self.t.get(i)).expect("validated collection"))
            .collect()
    }
}

/// A tuple `f = (f_0, …, f_{k−1})` of commutator phases, each a nonzero
/// residue mod `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTuple {
    f: Vec<u64>,
    dim: Dimension,
}

impl RelationTuple {
    /// Validate: entries are reduced mod `d` and must all be nonzero.
    pub fn new(f: Vec<u64>, dim: Dimension) -> Result<Self> {
        if f.is_empty() {
            return Err(Error::InvalidRelation("empty relation tuple".to_string()));
        }
        let d = dim.d();
        let f: Vec<u64> = f.into_iter().map(|x| x % d).collect();
        if let Some(i) = f.iter().position(|&x| x == 0) {
            return Err(Error::InvalidRelation(format!(
                "entry {i} is congruent to 0 mod {d}"
            )));
        }
        Ok(RelationTuple { f, dim })
    }

    /// The residues.
    pub fn f(&self) -> &[u64] {
        &self.f
    }

    /// Tuple length `k`.
    pub fn len(&self) -> usize {
        self.f.len()
    }

    /// True iff the tuple is empty (never holds for a validated tuple).
    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    /// The dimension.
    pub fn dim(&self) -> &Dimension {
        &self.dim
    }

    /// The modulus.
    pub fn d(&self) -> u64 {
        self.dim.d()
    }
}

// ---------------------------------------------------------------------------
// Verification.
// ---------------------------------------------------------------------------

/// Which condition of the pair pattern failed, and where.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairsViolation {
    /// Row index of the first offending pair.
    pub i: usize,
    /// Column index of the first offending pair.
    pub j: usize,
    /// Which condition broke, e.g. `"s_i and s_j must commute"`.
    pub condition: String,
    /// The offending commutator phase.
    pub phase: u64,
}

impl PairsViolation {
    /// Human-readable one-liner.
    pub fn describe(&self) -> String {
        format!(
            "(i={}, j={}): {} but the phase is {}",
            self.i, self.j, self.condition, self.phase
        )
    }
}

/// Check the non-commuting pair pattern; `Ok(None)` means the lists form a
/// valid collection, otherwise the first violation is returned.
pub fn verify_pairs(s: &PauliList, t: &PauliList) -> Result<Option<PairsViolation>> {
    if s.len() != t.len() {
        return Err(Error::ShapeMismatch(format!(
            "pair lists have different lengths: {} vs {}",
            s.len(),
            t.len()
        )));
    }
    if !s.is_empty() && !t.is_empty() && (s.dim() != t.dim() || s.n() != t.n()) {
        return Err(Error::DimensionMismatch(format!(
            "pair lists disagree: (d={}, n={}) vs (d={}, n={})",
            s.d(),
            s.n(),
            t.d(),
            t.n()
        )));
    }
    let k = s.len();
    for i in 0..k {
        for j in 0..k {
            let ss = comm_phase(s.get(i), s.get(j))?;
            if ss != 0 {
                return Ok(Some(PairsViolation {
                    i,
                    j,
                    condition: "s_i and s_j must commute".to_string(),
                    phase: ss,
                }));
            }
            let tt = comm_phase(t.get(i), t.get(j))?;
            if tt != 0 {
                return Ok(Some(PairsViolation {
                    i,
                    j,
                    condition: "t_i and t_j must commute".to_string(),
                    phase: tt,
                }));
            }
            let st = comm_phase(s.get(i), t.get(j))?;
            if i != j && st != 0 {
                return Ok(Some(PairsViolation {
                    i,
                    j,
                    condition: "s_i and t_j must commute for i != j".to_string(),
                    phase: st,
                }));
            }
            if i == j && st == 0 {
                return Ok(Some(PairsViolation {
                    i,
                    j,
                    condition: "s_i and t_i must not commute".to_string(),
                    phase: st,
                }));
            }
        }
    }
    Ok(None)
}

/// Check pairwise non-commutation; `None` means the list is a non-commuting
/// set, otherwise the first commuting pair of distinct indices is returned.
pub fn verify_noncomm_set(s: &PauliList) -> Option<(usize, usize)> {
    let k = s.len();
    for i in 0..k {
        for j in (i + 1)..k {
            if comm_phase(s.get(i), s.get(j)).expect("shared (d, n)") == 0 {
                return Some((i, j));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Extremal counts and example constructions.
// ---------------------------------------------------------------------------

/// Maximum size of a non-commuting pair collection on `n` qudits: `n·m`
/// where `m` is the number of distinct primes of `d`.
pub fn max_pairs_count(n: usize, dim: &Dimension) -> u64 {
    n as u64 * dim.num_primes() as u64
}

/// The standard maximum collection: on each qudit `h` and for each prime
/// power `p_i^{α_i}` of `d`, the CSS pair `(X^{d/p_i^{α_i}}, Z^{d/p_i^{α_i}})`
/// supported on qudit `h` alone. Size `n·m`.
pub fn example_max_pairs(n: usize, dim: &Dimension) -> PairCollection {
    let d = dim.d();
    let mut s = PauliList::empty(dim.clone(), n);
    let mut t = PauliList::empty(dim.clone(), n);
    for h in 0..n {
        for &(p, a) in dim.factorization() {
            let e = d / p.pow(a);
            let mut x = vec![0u64; n];
            let mut z = vec![0u64; n];
            x[h] = e;
            z[h] = e;
            let zero = vec![0u64; n];
            s.push(PauliElement::from_xz(dim.clone(), 0, &x, &zero).unwrap())
                .unwrap();
            t.push(PauliElement::from_xz(dim.clone(), 0, &zero, &z).unwrap())
                .unwrap();
        }
    }
    PairCollection::new(s, t).expect("construction satisfies the pair pattern")
}

/// For each prime index `j`, the rows `i` with `f_i ≢ 0 (mod p_j^{α_j})`
/// (the multiset `F_j` by index).
fn f_classes(f: &RelationTuple) -> Vec<Vec<usize>> {
    f.dim()
        .factorization()
        .iter()
        .map(|&(p, a)| {
            let q = p.pow(a);
            (0..f.len()).filter(|&i| !f.f()[i].is_multiple_of(q)).collect()
        })
        .collect()
}

/// Minimum number of qudits on which `f` is achievable: `max_j |F_j|`.
pub fn min_qudits_for_relation(f: &RelationTuple) -> usize {
    f_classes(f).iter().map(Vec::len).max().unwrap_or(0)
}

/// Build CSS non-commuting pairs on exactly `min_qudits_for_relation(f)`
/// qudits whose diagonal commutators reproduce `f` entry for entry.
///
/// Construction: a `k×m` label matrix `Q` assigns each row `i` a qudit label
/// `Q_{ij} ∈ {1..n}` in every prime column `j` with `f_i ∈ F_j` (labels
/// `1..|F_j|` in row order, zero elsewhere). With
/// `S̄_{ih} = {j : Q_{ij} ≠ h}`, set `(u_i)_{h−1} = Π_{j∈S̄_{ih}} p_j^{α_j}`
/// and `v_i = −β·u_i`, where `β = γ·β′`, `γ = f_i / Π_{j: Q_{ij}=0} p_j^{α_j}`
/// and `β′` solves `β′·(f_i·d″) ≡ f_i (mod d)` for the auxiliary modulus
/// `d″ = (Π_{Q_{ij}=0} p_j^{α_j}) · Σ_h Π_{j∈S̄_{ih}, Q_{ij}≠0} p_j^{2α_j}`.
/// Then `⟦X(u_i), Z(v_j)⟧_d = δ_{ij} f_i`.
pub fn achieve_relation(f: &RelationTuple) -> Result<PairCollection> {
    let dim = f.dim().clone();
    let d = dim.d();
    let d128 = d as u128;
    let k = f.len();
    let m = dim.num_primes();
    let n = min_qudits_for_relation(f);
    let prime_powers: Vec<u64> = dim.factorization().iter().map(|&(p, a)| p.pow(a)).collect();

    // Label matrix: q[i][j] in 0..=n, nonzero iff f_i ∈ F_j, unique per column.
    let mut q = vec![vec![0usize; m]; k];
    for (j, rows) in f_classes(f).iter().enumerate() {
        for (label0, &i) in rows.iter().enumerate() {
            q[i][j] = label0 + 1;
        }
    }

    let mut s = PauliList::empty(dim.clone(), n);
    let mut t = PauliList::empty(dim.clone(), n);
    for i in 0..k {
        let fi = f.f()[i];
        // ℓ = product of prime powers dividing f_i (the label-0 columns).
        let mut ell: u64 = 1;
        for j in 0..m {
            if q[i][j] == 0 {
                ell *= prime_powers[j];
            }
        }
        debug_assert_eq!(fi % ell, 0);
        let gamma = fi / ell;

        // X-exponents u and the auxiliary modulus d″, all reduced mod d.
        let mut u = vec![0u64; n];
        let mut dpp: u128 = 0;
        for h in 1..=n {
            let mut prod: u128 = 1;
            let mut aux: u128 = 1;
            for j in 0..m {
                if q[i][j] != h {
                    let pw = prime_powers[j] as u128;
                    prod = prod * pw % d128;
                    if q[i][j] != 0 {
                        aux = aux * (pw * pw % d128) % d128;
                    }
                }
            }
            u[h - 1] = prod as u64;
            dpp = (dpp + aux) % d128;
        }
        dpp = dpp * (ell as u128) % d128;

        // β′·(f_i·d″) ≡ f_i (mod d) is solvable by construction.
        let coeff = (fi as u128 * dpp % d128) as u64;
        let bp = solve_congruence(coeff, fi, &dim).ok_or_else(|| {
            Error::InvalidRelation(format!(
                "no solution for entry {i}: {coeff}·x ≡ {fi} (mod {d})"
            ))
        })?;
        let beta = (gamma as u128 * bp as u128 % d128) as u64;
        let v: Vec<u64> = u
            .iter()
            .map(|&c| (d - (beta as u128 * c as u128 % d128) as u64) % d)
            .collect();

        let zero = vec![0u64; n];
        s.push(PauliElement::from_xz(dim.clone(), 0, &u, &zero)?)?;
        t.push(PauliElement::from_xz(dim.clone(), 0, &zero, &v)?)?;
    }
    PairCollection::new(s, t)
}

/// Membership in the set of achievable relations of maximum length `n·m`.
///
/// Each `f_i ∈ Z_d^*` is divisible by `d/p_j^{α_j}` for at most one prime
/// index `j` (two such divisibilities force `d | f_i`), so `f` of length
/// `nm` is achievable iff every entry has such a `j` and each prime index
/// receives exactly `n` entries.
pub fn is_achievable_max_relation(f: &RelationTuple, n: usize) -> Result<bool> {
    let dim = f.dim();
    let m = dim.num_primes();
    if f.len() != n * m {
        return Err(Error::ShapeMismatch(format!(
            "relation length {} is not n·m = {}·{}",
            f.len(),
            n,
            m
        )));
    }
    let d = dim.d();
    let cofactors: Vec<u64> = dim
        .factorization()
        .iter()
        .map(|&(p, a)| d / p.pow(a))
        .collect();
    let mut counts = vec![0usize; m];
    for &fi in f.f() {
        let Some(j) = (0..m).find(|&j| fi % cofactors[j] == 0) else {
            return Ok(false);
        };
        counts[j] += 1;
    }
    Ok(counts.iter().all(|&c| c == n))
}

/// Entry-wise unit scaling `f_i ← β_i·f_i mod d`; fails if any product
/// becomes `0 mod d` (the scaled tuple would leave `Z_d^*`).
pub fn scale_relation(f: &RelationTuple, beta: &[u64]) -> Result<RelationTuple> {
    if beta.len() != f.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} scale factors for {} entries",
            beta.len(),
            f.len()
        )));
    }
    let d = f.d() as u128;
    let scaled: Vec<u64> = f
        .f()
        .iter()
        .zip(beta)
        .map(|(&fi, &b)| (fi as u128 * b as u128 % d) as u64)
        .collect();
    if let Some(i) = scaled.iter().position(|&x| x == 0) {
        return Err(Error::InvalidScaling(format!(
            "beta_{i}·f_{i} = {}·{} ≡ 0 (mod {})",
            beta[i],
            f.f()[i],
            f.d()
        )));
    }
    RelationTuple::new(scaled, f.dim().clone())
}

/// Reorder the tuple: output entry `i` is `f_{σ(i)}`; `σ` must be a
/// permutation of `0..k`.
pub fn permute_relation(f: &RelationTuple, sigma: &[usize]) -> Result<RelationTuple> {
    let k = f.len();
    if sigma.len() != k {
        return Err(Error::ShapeMismatch(format!(
            "permutation of length {} for {} entries",
            sigma.len(),
            k
        )));
    }
    let mut seen = vec![false; k];
    for &i in sigma {
        if i >= k || seen[i] {
            return Err(Error::InvalidScaling(format!(
                "{sigma:?} is not a permutation of 0..{k}"
            )));
        }
        seen[i] = true;
    }
    RelationTuple::new(sigma.iter().map(|&i| f.f()[i]).collect(), f.dim().clone())
}

// ---------------------------------------------------------------------------
// Realizing a commutation matrix.
// ---------------------------------------------------------------------------

/// The `2n×2n` symplectic form `Λ = [[0, −I], [I, 0]]` so that
/// `u^T Λ v = ⟦P(u), P(v)⟧`.
pub fn lambda_matrix(n: usize, ring: Ring) -> ExactMatrix {
    let mut m = ExactMatrix::zero(2 * n, 2 * n, ring);
    for i in 0..n {
        m.set(i, n + i, BigInt::from(-1));
        m.set(n + i, i, BigInt::from(1));
    }
    m
}

/// Result of [`realize_commutation_matrix`].
#[derive(Debug, Clone)]
pub struct Realization {
    /// `k×2n` matrix over `Z_d` whose rows are symplectic vectors with
    /// `P·Λ·P^T = C`.
    pub p: ExactMatrix,
    /// The minimum qudit count `n = snf_rank(C)/2`.
    pub n: usize,
}

/// Find Paulis realizing a prescribed alternating commutation matrix `C`
/// over `Z_d` on the minimum number of qudits.
///
/// Via the alternating normal form `C = L·B·L^T` with `B = ⊕ [[0,β_i],
/// [−β_i,0]]`: the `β_i` form a divisibility chain, so they are achievable
/// as a pair relation on `r = snf_rank(C)/2` qudits; the resulting pair
/// vectors populate rows `2i, 2i+1` of a matrix `Q` with `Q·Λ·Q^T = B`, and
/// `P = L·Q`.
pub fn realize_commutation_matrix(c: &ExactMatrix) -> Result<Realization> {
    let Ring::Mod(d) = c.ring() else {
        return Err(Error::RingMismatch(
            "commutation matrices live over Z_d".to_string(),
        ));
    };
    let dim = Dimension::new(d)?;
    let k = c.rows();
    let nf = crate::normal_forms::asnf(c)?;
    let r = nf.betas.len();
    if r == 0 {
        return Ok(Realization {
            p: ExactMatrix::zero(k, 0, Ring::Mod(d)),
            n: 0,
        });
    }
    let betas: Vec<u64> = nf
        .betas
        .iter()
        .map(|b| u64::try_from(b).expect("betas are reduced residues"))
        .collect();
    let f = RelationTuple::new(betas, dim)?;
    let pairs = achieve_relation(&f)?;
    let n = pairs.n();
    debug_assert_eq!(n, r, "chained betas share a prime class");

    let mut q = ExactMatrix::zero(k, 2 * n, Ring::Mod(d));
    for i in 0..r {
        for (col, &e) in pairs.s().get(i).vec().iter().enumerate() {
            q.set(2 * i, col, BigInt::from(e));
        }
        for (col, &e) in pairs.t().get(i).vec().iter().enumerate() {
            q.set(2 * i + 1, col, BigInt::from(e));
        }
    }
    let p = mat_mul(&nf.l, &q)?;
    debug_assert_eq!(
        mat_mul(&mat_mul(&p, &lambda_matrix(n, Ring::Mod(d))).unwrap(), &p.transpose()).unwrap(),
        *c
    );
    Ok(Realization { p, n })
}

/// Interpret the rows of a realization matrix as phaseless Paulis.
pub fn rows_as_paulis(p: &ExactMatrix, dim: &Dimension) -> Result<PauliList> {
    if !p.cols().is_multiple_of(2) || p.cols() == 0 {
        return Err(Error::ShapeMismatch(format!(
            "row length {} is not a positive even number",
            p.cols()
        )));
    }
    let n = p.cols() / 2;
    let mut out = PauliList::empty(dim.clone(), n);
    for i in 0..p.rows() {
        let vec: Vec<u64> = (0..p.cols())
            .map(|j| u64::try_from(p.get(i, j)).expect("reduced residue"))
            .collect();
        out.push(PauliElement::new(dim.clone(), n, 0, vec)?)?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Maximum non-commuting sets.
// ---------------------------------------------------------------------------

/// A maximum non-commuting set of phaseless single-qudit Paulis, of size
/// `Ψ(d)` (the Dedekind psi function).
///
/// The vectors `(a, b)` with `gcd(a, b, d) = 1` fall into unit-scaling
/// classes; two such vectors commute iff they are in the same class, so one
/// representative per class (the lexicographic minimum) gives a maximum
/// pairwise non-commuting set.
pub fn max_noncomm_set_single_qudit(dim: &Dimension) -> PauliList {
    let d = dim.d();
    let units: Vec<u64> = (1..d).filter(|&u| gcd_u64(u, d) == 1).collect();
    let mut taken = vec![false; (d * d) as usize];
    let mut out = PauliList::empty(dim.clone(), 1);
    for a in 0..d {
        for b in 0..d {
            if taken[(a * d + b) as usize] || gcd_u64(gcd_u64(a, b), d) != 1 {
                continue;
            }
            for &u in &units {
                taken[((u * a % d) * d + u * b % d) as usize] = true;
            }
            out.push(PauliElement::from_xz(dim.clone(), 0, &[a], &[b]).unwrap())
                .unwrap();
        }
    }
    out
}

/// Jordan-Wigner composition of two non-commuting sets over the same `d`:
/// `{s_i ⊗ I : i ≥ 1} ∪ {s_0 ⊗ s′_i}`, a non-commuting set of size
/// `|S| + |S′| − 1` on `n + n′` qudits.
pub fn jordan_wigner_compose(s: &PauliList, sp: &PauliList) -> Result<PauliList> {
    if s.dim() != sp.dim() {
        return Err(Error::DimensionMismatch(format!(
            "sets disagree in d: {} vs {}",
            s.d(),
            sp.d()
        )));
    }
    if s.is_empty() || sp.is_empty() {
        return Err(Error::NotNonCommuting("empty input set".to_string()));
    }
    for (name, set) in [("first", s), ("second", sp)] {
        if let Some((i, j)) = verify_noncomm_set(set) {
            return Err(Error::NotNonCommuting(format!(
                "{name} set: elements {i} and {j} commute"
            )));
        }
    }
    let (n, np) = (s.n(), sp.n());
    let dim = s.dim().clone();
    let tensor = |a: &PauliElement, b: &PauliElement| -> PauliElement {
        let mut x = a.x_part().to_vec();
        x.extend_from_slice(b.x_part());
        let mut z = a.z_part().to_vec();
        z.extend_from_slice(b.z_part());
        PauliElement::from_xz(dim.clone(), (a.phase() + b.phase()) % dim.d(), &x, &z).unwrap()
    };
    let id_np = PauliElement::identity(dim.clone(), np);
    let mut out = PauliList::empty(dim.clone(), n + np);
    for i in 1..s.len() {
        out.push(tensor(s.get(i), &id_np))?;
    }
    for i in 0..sp.len() {
        out.push(tensor(s.get(0), sp.get(i)))?;
    }
    Ok(out)
}
