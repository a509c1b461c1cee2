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

//! Generating-set analysis of Pauli subgroups: the phase subgroup
//! `I_S = {g ∈ ⟨S⟩ : π_2(g) = 0}` and its single generator, generator
//! transformations, near-minimal and minimal generating sets, Gram-Schmidt
//! generating sets, subgroup orders, centers of pair collections, and
//! decomposition over a pair basis.

use num_bigint::BigInt;

use crate::normal_forms::{hnf, snf, solve_in_span};
use crate::pauli::{
    comm_phase, commutation_matrix, pmul, ppow, prod_pow, PauliElement, PauliList,
};
use crate::relations::PairCollection;
use crate::zmatrix::{inverse_mod, is_invertible, ExactMatrix, Ring};
use crate::zring::{gcd_u64, Dimension};
use crate::{Error, Result};

fn to_u64(b: &BigInt) -> u64 {
    u64::try_from(b).expect("reduced residue")
}

// ---------------------------------------------------------------------------
// The phase subgroup I_S.
// ---------------------------------------------------------------------------

/// The single generator `ω^μ I` of `I_S`, with `μ | d` over the integers;
/// `μ = d` means `I_S = {I}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityGenerator {
    mu: u64,
    dim: Dimension,
    n: usize,
}

impl IdentityGenerator {
    /// The phase exponent `μ ∈ {1, …, d}`; divides `d`.
    pub fn mu(&self) -> u64 {
        self.mu
    }

    /// `|I_S| = d/μ`.
    pub fn order(&self) -> u64 {
        self.dim.d() / self.mu
    }

    /// True iff `I_S = {I}`.
    pub fn is_trivial(&self) -> bool {
        self.mu == self.dim.d()
    }

    /// The generator as a Pauli element (`ω^{μ mod d} I`).
    pub fn element(&self) -> PauliElement {
        PauliElement::identity(self.dim.clone(), self.n).with_phase(self.mu % self.dim.d())
    }

    /// True iff `ω^j I ∈ I_S`, i.e. `μ | j` over the integers (with `j`
    /// reduced mod `d`; `j = 0` always holds).
    pub fn contains_phase(&self, j: u64) -> bool {
        (j % self.dim.d()).is_multiple_of(self.mu)
    }
}

/// Compute `μ` with `⟨ω^μ I⟩ = I_S` by folding gcds of phase-only elements:
/// `d`-th powers of generators (even `d` only), pairwise group-commutator
/// phases, and products along a generating set of `Ker(π_2(S))`.
pub fn identity_subgroup_generator(s: &PauliList) -> IdentityGenerator {
    let d = s.d();
    let k = s.len();
    let mut mu = d;

    // Stage 1: d-th powers are ±I; detect −I.
    if d.is_multiple_of(2) {
        for j in 0..k {
            if ppow(s.get(j), d).phase() == d / 2 {
                mu = d / 2;
                break;
            }
        }
    }
    let done = |mu: u64| IdentityGenerator {
        mu,
        dim: s.dim().clone(),
        n: s.n(),
    };
    if mu == 1 {
        return done(1);
    }

    // Stage 2: group commutators [q_j, q_ℓ] = ω^{⟦q_j, q_ℓ⟧} I for j < ℓ.
    for j in 0..k {
        for l in (j + 1)..k {
            let t = comm_phase(s.get(j), s.get(l)).expect("shared (d, n)");
            mu = gcd_u64(t, mu);
            if mu == 1 {
                return done(1);
            }
        }
    }

    // Stage 3: kernel products. For each generating column v of
    // Ker(π_2(S)), the product Π q_ℓ^{v_ℓ} is a phase-only element.
    let ker = hnf(&s.pi2_matrix()).kernel_of_input(k);
    for j in 0..ker.cols() {
        let exps: Vec<u64> = (0..k).map(|l| to_u64(ker.get(l, j))).collect();
        let q = prod_pow(s, &exps).expect("lengths match");
        debug_assert!(q.is_phase_only());
        mu = gcd_u64(q.phase(), mu);
        if mu == 1 {
            return done(1);
        }
    }
    done(mu)
}

// ---------------------------------------------------------------------------
// Generator transformations.
// ---------------------------------------------------------------------------

/// Replace generators by `q′_i = Π_j q_j^{A_{ij}}` (ascending `j`) for an
/// invertible `A` over `Z_d`; the generated group is unchanged.
pub fn transform_generators(s: &PauliList, a: &ExactMatrix) -> Result<PauliList> {
    let d = s.d();
    if a.ring() != Ring::Mod(d) {
        return Err(Error::RingMismatch(format!(
            "transformation must be over Z_{d}, got {}",
            a.ring().tag()
        )));
    }
    if a.rows() != s.len() || a.cols() != s.len() {
        return Err(Error::ShapeMismatch(format!(
            "transformation is {}x{} for {} generators",
            a.rows(),
            a.cols(),
            s.len()
        )));
    }
    if !is_invertible(a)? {
        return Err(Error::NotInvertible { d });
    }
    let mut out = PauliList::empty(s.dim().clone(), s.n());
    for i in 0..s.len() {
        let exps: Vec<u64> = (0..s.len()).map(|j| to_u64(a.get(i, j))).collect();
        out.push(prod_pow(s, &exps)?)?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Near-minimal and minimal generating sets.
// ---------------------------------------------------------------------------

/// A generating set `T′ ∪ {p}` with `|T′| = r` (the invariant-factor count
/// of `π_2(S)`) and `⟨p⟩ = I_S`.
#[derive(Debug, Clone)]
pub struct NearMinimal {
    /// The `r` vector-part generators.
    pub t_prime: PauliList,
    /// The phase generator `ω^μ I`.
    pub p: IdentityGenerator,
    /// Invariant-factor count of `π_2(S)`.
    pub r: usize,
}

/// Compute a near-minimal generating set of `⟨S⟩` from the Smith normal
/// form of `π_2(S)`: with `left·π_2(S)·right = D` of rank `r`, the elements
/// `u_i = Π_j s_j^{right_{ji}}` for `i < r` generate everything modulo
/// phases. When `r = |S|` the input itself is returned.
pub fn near_minimal_generating_set(s: &PauliList) -> NearMinimal {
    let p = identity_subgroup_generator(s);
    let k = s.len();
    let nf = snf(&s.pi2_matrix());
    let r = nf.invariant_factors.len();
    if r == k {
        return NearMinimal {
            t_prime: s.clone(),
            p,
            r,
        };
    }
    let mut t_prime = PauliList::empty(s.dim().clone(), s.n());
    for i in 0..r {
        let exps: Vec<u64> = (0..k).map(|j| to_u64(nf.right.get(j, i))).collect();
        t_prime
            .push(prod_pow(s, &exps).expect("lengths match"))
            .expect("shared (d, n)");
    }
    NearMinimal { t_prime, p, r }
}

/// How a minimal-generating-set search concluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinGenStatus {
    /// The returned set is a certified minimal generating set.
    Minimal,
    /// Size `r+1`, certified minimal: the full `γ`-search was exhausted
    /// without finding a size-`r` set.
    ExhaustedNearMinimal,
    /// Size `r+1`, uncertified: the `γ`-search hit its budget.
    BudgetCappedNearMinimal,
}

/// Result of [`minimal_generating_set`].
#[derive(Debug, Clone)]
pub struct MinGenResult {
    /// The generating set.
    pub set: PauliList,
    /// Invariant-factor count of `π_2(S)` (lower bound on the size).
    pub r: usize,
    /// Certification status.
    pub status: MinGenStatus,
}

/// Default `γ`-tuple budget for [`minimal_generating_set`].
pub const DEFAULT_MIN_GEN_BUDGET: u64 = 1_000_000;

/// Search for a minimal generating set of `⟨S⟩`.
///
/// Starting from the near-minimal set `T′ ∪ {p}` with `p = ω^δ I`, the
/// candidates `T″ = {p^{γ_i} q_i}` for `γ ∈ Z_d^r` are tested: `T″`
/// generates `⟨S⟩` iff `p ∈ I_{T″}`, i.e. iff the `I_{T″}` exponent `β`
/// divides `δ`. The commutator and `d`-th-power gcd stages and the kernel
/// of `π_2(T″)` do not depend on `γ`, so they are computed once; each
/// kernel product folds in as a fixed phase plus `δ·Σ_ℓ γ_ℓ K̄_{ℓj}`.
/// Prime `d` is resolved without any search.
pub fn minimal_generating_set(s: &PauliList, budget: u64) -> MinGenResult {
    let d = s.d();
    let nm = near_minimal_generating_set(s);
    let (r, delta) = (nm.r, nm.p.mu());

    // ⟨S⟩ is pure phase: {p} is the smallest non-empty generating set.
    if r == 0 {
        let mut set = PauliList::empty(s.dim().clone(), s.n());
        set.push(nm.p.element()).unwrap();
        return MinGenResult {
            set,
            r,
            status: MinGenStatus::Minimal,
        };
    }
    // r = |S|: no generating set can be smaller than S itself.
    if r == s.len() {
        return MinGenResult {
            set: s.clone(),
            r,
            status: MinGenStatus::Minimal,
        };
    }
    // p = I: the phase generator is useless and T′ alone is minimal.
    if nm.p.is_trivial() {
        return MinGenResult {
            set: nm.t_prime,
            r,
            status: MinGenStatus::Minimal,
        };
    }

    let with_p = |nm: &NearMinimal| {
        let mut set = nm.t_prime.clone();
        set.push(nm.p.element()).unwrap();
        set
    };

    // Prime d: T′ ∪ {p} is minimal iff ⟨T′⟩ is a stabilizer group (I_{T′}
    // trivial); otherwise ωI ∈ ⟨T′⟩ ⊇ I_S and T′ alone suffices.
    if s.dim().factorization().len() == 1 && s.dim().factorization()[0].1 == 1 {
        let ip = identity_subgroup_generator(&nm.t_prime);
        return if ip.is_trivial() {
            MinGenResult {
                set: with_p(&nm),
                r,
                status: MinGenStatus::ExhaustedNearMinimal,
            }
        } else {
            MinGenResult {
                set: nm.t_prime,
                r,
                status: MinGenStatus::Minimal,
            }
        };
    }

    // Precompute the γ-independent parts of IDENTITY_GENERATOR on T″.
    let t_prime = &nm.t_prime;
    let mut mu0 = d;
    if d.is_multiple_of(2) {
        for j in 0..r {
            if ppow(t_prime.get(j), d).phase() == d / 2 {
                mu0 = d / 2;
                break;
            }
        }
    }
    for j in 0..r {
        for l in (j + 1)..r {
            let t = comm_phase(t_prime.get(j), t_prime.get(l)).expect("shared (d, n)");
            mu0 = gcd_u64(t, mu0);
        }
    }
    let accepted = |gamma: &[u64]| {
        let mut set = PauliList::empty(s.dim().clone(), s.n());
        for (i, &g) in gamma.iter().enumerate() {
            let q = t_prime.get(i);
            set.push(q.with_phase((q.phase() + g * delta) % d)).unwrap();
        }
        MinGenResult {
            set,
            r,
            status: MinGenStatus::Minimal,
        }
    };
    if mu0 == 1 {
        // β = 1 divides δ for every γ; γ = 0 already works.
        return accepted(&vec![0; r]);
    }
    let ker = hnf(&t_prime.pi2_matrix()).kernel_of_input(r);
    let kernel_cols: Vec<Vec<u64>> = (0..ker.cols())
        .map(|j| (0..r).map(|l| to_u64(ker.get(l, j))).collect())
        .collect();
    let base_phases: Vec<u64> = kernel_cols
        .iter()
        .map(|col| prod_pow(t_prime, col).expect("lengths match").phase())
        .collect();

    // Enumerate γ ∈ Z_d^r in lexicographic order, γ_0 most significant.
    let mut gamma = vec![0u64; r];
    let mut tried: u64 = 0;
    loop {
        if tried >= budget {
            return MinGenResult {
                set: with_p(&nm),
                r,
                status: MinGenStatus::BudgetCappedNearMinimal,
            };
        }
        tried += 1;
        let mut beta = mu0;
        for (col, &base) in kernel_cols.iter().zip(&base_phases) {
            let shift: u64 = col
                .iter()
                .zip(&gamma)
                .map(|(&kc, &g)| kc as u128 * g as u128 % d as u128)
                .sum::<u128>() as u64;
            let phase = (base + (shift % d) * delta) % d;
            beta = gcd_u64(phase, beta);
            if beta == 1 {
                break;
            }
        }
        if delta % beta == 0 {
            return accepted(&gamma);
        }
        // Next tuple, least-significant digit last.
        let mut pos = r;
        loop {
            if pos == 0 {
                return MinGenResult {
                    set: with_p(&nm),
                    r,
                    status: MinGenStatus::ExhaustedNearMinimal,
                };
            }
            pos -= 1;
            gamma[pos] += 1;
            if gamma[pos] < d {
                break;
            }
            gamma[pos] = 0;
        }
    }
}

// ---------------------------------------------------------------------------
// Gram-Schmidt generating sets.
// ---------------------------------------------------------------------------

/// A Gram-Schmidt generating set `S1 ∪ S2 ∪ U` plus the phase generator.
#[derive(Debug, Clone)]
pub struct GenSetDecomposition {
    /// First members of the non-commuting pairs, `|S1| = r`.
    pub s1: PauliList,
    /// Second members; `⟦s1_i, s2_i⟧_d = β_i`.
    pub s2: PauliList,
    /// Central remainder (commutes with everything in `S1 ∪ S2 ∪ U`).
    pub u: PauliList,
    /// Generator of `I_S` for the source set.
    pub identity_gen: IdentityGenerator,
    /// The pair commutators `β_1 | β_2 | … | β_r`.
    pub betas: Vec<u64>,
}

/// Compute a Gram-Schmidt generating set of `⟨S⟩` with the minimum number
/// of non-commuting pairs.
///
/// With `A = commutation_matrix(S)` and its alternating normal form
/// `A = L·B·L^T`, the transformed generators `s′_i = Π_j s_j^{(L⁻¹)_{ij}}`
/// have commutation matrix `B`: the first `2r` interleave into pairs and
/// the rest are central. With `prune`, trailing central elements whose
/// vector part lies in the span of the kept generators (with a phase
/// correctable inside the kept set's `I`-subgroup) are dropped.
pub fn gram_schmidt_generating_set(s: &PauliList, prune: bool) -> Result<GenSetDecomposition> {
    let a = commutation_matrix(s);
    let nf = crate::normal_forms::asnf(&a)?;
    let k = s.len();
    let r = nf.betas.len();
    let l_inv = inverse_mod(&nf.l, s.dim())?;

    let mut transformed = Vec::with_capacity(k);
    for i in 0..k {
        let exps: Vec<u64> = (0..k).map(|j| to_u64(l_inv.get(i, j))).collect();
        transformed.push(prod_pow(s, &exps)?);
    }
    let dim = s.dim().clone();
    let mut s1 = PauliList::empty(dim.clone(), s.n());
    let mut s2 = PauliList::empty(dim.clone(), s.n());
    for i in 0..r {
        s1.push(transformed[2 * i].clone())?;
        s2.push(transformed[2 * i + 1].clone())?;
    }
    let mut u = PauliList::empty(dim.clone(), s.n());
    for t in transformed.into_iter().skip(2 * r) {
        u.push(t)?;
    }

    if prune && !u.is_empty() {
        let mut kept = s1.concat(&s2)?;
        let mut u_kept = PauliList::empty(dim.clone(), s.n());
        for cand in u.iter() {
            let mut redundant = false;
            if !kept.is_empty() {
                let span = kept.pi2_matrix();
                let mut rhs = ExactMatrix::zero(2 * s.n(), 1, Ring::Mod(dim.d()));
                for (i, &c) in cand.vec().iter().enumerate() {
                    rhs.set(i, 0, BigInt::from(c));
                }
                if let Some(x) = solve_in_span(&span, &rhs)? {
                    let exps: Vec<u64> = (0..kept.len()).map(|j| to_u64(x.get(j, 0))).collect();
                    let g = prod_pow(&kept, &exps)?;
                    debug_assert_eq!(g.vec(), cand.vec());
                    let resid = (cand.phase() + dim.d() - g.phase()) % dim.d();
                    if identity_subgroup_generator(&kept).contains_phase(resid) {
                        redundant = true;
                    }
                }
            } else if cand.is_phase_only() {
                // No kept generators yet: only the exact identity is
                // redundant.
                redundant = cand.is_identity();
            }
            if !redundant {
                u_kept.push(cand.clone())?;
                kept.push(cand.clone())?;
            }
        }
        u = u_kept;
    }

    let betas = nf.betas.iter().map(to_u64).collect();
    Ok(GenSetDecomposition {
        s1,
        s2,
        u,
        identity_gen: identity_subgroup_generator(s),
        betas,
    })
}

// ---------------------------------------------------------------------------
// Orders, centers, decomposition.
// ---------------------------------------------------------------------------

/// `|⟨S⟩| = |I_S| · Π_i d/gcd(d_i, d)` over the invariant factors `d_i` of
/// `π_2(S)`.
pub fn subgroup_order(s: &PauliList) -> u128 {
    let d = s.d();
    let ident = identity_subgroup_generator(s);
    let mut order = ident.order() as u128;
    for f in &snf(&s.pi2_matrix()).invariant_factors {
        order *= (d / gcd_u64(to_u64(f), d)) as u128;
    }
    order
}

/// Generators of the center of `⟨S, T⟩` for a pair collection: for each
/// pair, `ω^{f_i} I`, `s_i^{a_i}`, and `t_i^{a_i}` with `a_i` the additive
/// order of `f_i` in `Z_d`. Elements that reduce to the exact identity are
/// omitted.
pub fn center_of_pairs(pairs: &PairCollection) -> PauliList {
    let d = pairs.d();
    let mut out = PauliList::empty(pairs.s().dim().clone(), pairs.n());
    for i in 0..pairs.len() {
        let f = comm_phase(pairs.s().get(i), pairs.t().get(i)).expect("validated");
        let a = d / gcd_u64(f, d);
        let phase_gen = PauliElement::identity(out.dim().clone(), out.n()).with_phase(f);
        for g in [phase_gen, ppow(pairs.s().get(i), a), ppow(pairs.t().get(i), a)] {
            if !g.is_identity() {
                out.push(g).unwrap();
            }
        }
    }
    out
}

/// Exponents of `p = ω^c Π_i s_i^{a_i} t_i^{b_i}` over a pair basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDecomposition {
    /// `s`-exponents.
    pub a: Vec<u64>,
    /// `t`-exponents.
    pub b: Vec<u64>,
    /// Leading phase exponent.
    pub c: u64,
}

/// Decompose `p` over a pair basis: `a_i` solves `x·⟦s_i,t_i⟧ ≡ ⟦p,t_i⟧`
/// and `b_i` solves `x·⟦s_i,t_i⟧ ≡ ⟦s_i,p⟧` (smallest solutions); if the
/// vector parts fail to reconstruct — possible when some `f_i` is not a
/// unit — a direct solve of `π_2(p)` over the span of the pair vectors is
/// used instead. The phase `c` makes the reconstruction exact.
pub fn decompose_in_pair_basis(
    p: &PauliElement,
    pairs: &PairCollection,
) -> Result<PairDecomposition> {
    let d = pairs.d();
    let dim = pairs.s().dim().clone();
    let k = pairs.len();
    let mut a = Vec::with_capacity(k);
    let mut b = Vec::with_capacity(k);
    for i in 0..k {
        let (si, ti) = (pairs.s().get(i), pairs.t().get(i));
        let f = comm_phase(si, ti)?;
        let pa = comm_phase(p, ti)?;
        let pb = comm_phase(si, p)?;
        let ai = crate::zring::solve_congruence(f, pa, &dim);
        let bi = crate::zring::solve_congruence(f, pb, &dim);
        match (ai, bi) {
            (Some(ai), Some(bi)) => {
                a.push(ai);
                b.push(bi);
            }
            _ => {
                return Err(Error::NotInSpan(format!(
                    "pair {i}: commutator {f} does not divide ({pa}, {pb}) in Z_{d}"
                )))
            }
        }
    }

    let reconstruct = |a: &[u64], b: &[u64]| -> Result<PauliElement> {
        let mut acc = PauliElement::identity(dim.clone(), pairs.n());
        for i in 0..k {
            acc = pmul(&acc, &ppow(pairs.s().get(i), a[i]))?;
            acc = pmul(&acc, &ppow(pairs.t().get(i), b[i]))?;
        }
        Ok(acc)
    };

    let mut g = reconstruct(&a, &b)?;
    if g.vec() != p.vec() {
        // Non-unit commutators can leave the congruence solutions short of
        // the right vector part; solve for it directly.
        let span = pairs.s().concat(pairs.t())?;
        let m = span.pi2_matrix();
        let mut rhs = ExactMatrix::zero(2 * pairs.n(), 1, Ring::Mod(d));
        for (i, &c) in p.vec().iter().enumerate() {
            rhs.set(i, 0, BigInt::from(c));
        }
        let Some(x) = solve_in_span(&m, &rhs)? else {
            return Err(Error::NotInSpan(
                "vector part is outside the span of the pair vectors".to_string(),
            ));
        };
        a = (0..k).map(|i| to_u64(x.get(i, 0))).collect();
        b = (0..k).map(|i| to_u64(x.get(k + i, 0))).collect();
        g = reconstruct(&a, &b)?;
        if g.vec() != p.vec() {
            return Err(Error::NotInSpan(
                "reconstruction failed to match the vector part".to_string(),
            ));
        }
    }
    let c = (p.phase() + d - g.phase()) % d;
    Ok(PairDecomposition { a, b, c })
}

/// Lower bound `Π_i a_i²` on `|⟨S,T⟩/I_{S∪T}|`, with `a_i` the additive
/// order of `f_i = ⟦s_i,t_i⟧_d` in `Z_d`.
pub fn pair_group_order_bound(pairs: &PairCollection) -> u128 {
    let d = pairs.d();
    pairs
        .commutators()
        .iter()
        .map(|&f| {
            let a = (d / gcd_u64(f, d)) as u128;
            a * a
        })
        .product()
}

/// True iff the pairs generate the full phase-tracked Pauli group on `n`
/// qudits, i.e. `|⟨S ∪ T⟩| = d^{2n+1}`.
pub fn is_full_group(pairs: &PairCollection) -> bool {
    let all = pairs
        .s()
        .concat(pairs.t())
        .expect("validated collection shares (d, n)");
    let d = pairs.d() as u128;
    subgroup_order(&all) == d.pow(2 * pairs.n() as u32 + 1)
}
