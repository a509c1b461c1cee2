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

//! Independent brute-force reference implementations used for testing:
//! group enumeration by closure, exact maximum-clique and
//! maximum-pair-collection searches, and a naive center computation. These
//! deliberately share no algorithmic machinery with the analytic modules
//! they validate.

use std::collections::HashSet;

use crate::pauli::{comm_phase, pmul, PauliElement, PauliList};
use crate::zring::Dimension;
use crate::{Error, Result};

/// Default element cap for enumerations.
pub const DEFAULT_ENUM_CAP: usize = 100_000;

/// An extensionally enumerated subgroup: the set of `(phase, vector)`
/// residue pairs of its elements.
#[derive(Debug, Clone)]
pub struct EnumeratedGroup {
    dim: Dimension,
    n: usize,
    elements: HashSet<(u64, Vec<u64>)>,
}

impl EnumeratedGroup {
    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Never true: every group contains the identity.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Membership test.
    pub fn contains(&self, p: &PauliElement) -> bool {
        self.elements.contains(&(p.phase(), p.vec().to_vec()))
    }

    /// True iff both enumerations hold exactly the same elements.
    pub fn same_elements(&self, other: &EnumeratedGroup) -> bool {
        self.elements == other.elements
    }

    /// Elements in sorted `(vector, phase)` order, for deterministic output.
    pub fn sorted_elements(&self) -> Vec<PauliElement> {
        let mut keys: Vec<&(u64, Vec<u64>)> = self.elements.iter().collect();
        keys.sort_by(|a, b| (&a.1, a.0).cmp(&(&b.1, b.0)));
        keys.into_iter()
            .map(|(phase, vec)| {
                PauliElement::new(self.dim.clone(), self.n, *phase, vec.clone())
                    .expect("stored residues are valid")
            })
            .collect()
    }
}

/// Breadth-first closure of `⟨S⟩` under multiplication by the generators;
/// fails once more than `cap` elements are found.
pub fn enumerate_group(s: &PauliList, cap: usize) -> Result<EnumeratedGroup> {
    let key = |p: &PauliElement| (p.phase(), p.vec().to_vec());
    let mut elements = HashSet::new();
    let identity = PauliElement::identity(s.dim().clone(), s.n());
    elements.insert(key(&identity));
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in s.iter() {
            let q = pmul(&p, g)?;
            if elements.insert(key(&q)) {
                if elements.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                frontier.push(q);
            }
        }
    }
    Ok(EnumeratedGroup {
        dim: s.dim().clone(),
        n: s.n(),
        elements,
    })
}

/// Elements of `⟨S⟩` commuting with every element of `⟨S⟩` (equivalently,
/// with every generator), in sorted order.
pub fn brute_center(s: &PauliList, cap: usize) -> Result<Vec<PauliElement>> {
    let group = enumerate_group(s, cap)?;
    Ok(group
        .sorted_elements()
        .into_iter()
        .filter(|p| s.iter().all(|g| comm_phase(p, g).unwrap() == 0))
        .collect())
}

// ---------------------------------------------------------------------------
// Maximum clique of the single-qudit non-commutation graph.
// ---------------------------------------------------------------------------

const WORD_BITS: usize = 64;

fn bit_get(row: &[u64], j: usize) -> bool {
    row[j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1
}

fn bit_set(row: &mut [u64], j: usize) {
    row[j / WORD_BITS] |= 1 << (j % WORD_BITS);
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x & !y == 0)
}

/// Exact maximum clique size of the graph on `Z_d² \ {0}` with an edge
/// between `(a, b)` and `(a′, b′)` iff `a·b′ − a′·b ≢ 0 (mod d)`.
///
/// The search first removes dominated vertices (a vertex `u` with a
/// non-neighbor `v` whose neighborhood contains `N(u)` can never be needed)
/// and then runs branch-and-bound on the remainder.
pub fn brute_max_clique(dim: &Dimension) -> Result<u64> {
    let d = dim.d();
    if d > 12 {
        return Err(Error::TooLarge(format!(
            "clique graph for d={d} has {} vertices",
            d * d - 1
        )));
    }
    let verts: Vec<(u64, u64)> = (0..d)
        .flat_map(|a| (0..d).map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (0, 0))
        .collect();
    let v = verts.len();
    let words = v.div_ceil(WORD_BITS);
    let mut adj = vec![vec![0u64; words]; v];
    for i in 0..v {
        for j in 0..v {
            let (a, b) = verts[i];
            let (ap, bp) = verts[j];
            let det = ((a as i128 * bp as i128 - ap as i128 * b as i128) % d as i128
                + d as i128)
                % d as i128;
            if det != 0 {
                bit_set(&mut adj[i], j);
            }
        }
    }

    // Dominance reduction to a fixed point.
    let mut alive: Vec<bool> = vec![true; v];
    loop {
        let mut removed = false;
        'outer: for u in 0..v {
            if !alive[u] {
                continue;
            }
            for w in 0..v {
                if w == u || !alive[w] || bit_get(&adj[u], w) {
                    continue;
                }
                if is_subset(&adj[u], &adj[w]) {
                    alive[u] = false;
                    // Clear u from every adjacency row.
                    for row in adj.iter_mut() {
                        row[u / WORD_BITS] &= !(1 << (u % WORD_BITS));
                    }
                    removed = true;
                    continue 'outer;
                }
            }
        }
        if !removed {
            break;
        }
    }

    let mut candidates = vec![0u64; words];
    for (u, &ok) in alive.iter().enumerate() {
        if ok {
            bit_set(&mut candidates, u);
        }
    }

    fn bb(adj: &[Vec<u64>], cand: &[u64], size: u64, best: &mut u64) {
        let remaining: u64 = cand.iter().map(|w| w.count_ones() as u64).sum();
        if size + remaining <= *best {
            return;
        }
        if remaining == 0 {
            *best = (*best).max(size);
            return;
        }
        let mut cand = cand.to_vec();
        // Take the lowest-index candidate; branch on include/exclude.
        let word = cand.iter().position(|&w| w != 0).unwrap();
        let u = word * WORD_BITS + cand[word].trailing_zeros() as usize;
        cand[word] &= !(1 << (u % WORD_BITS));
        // Include u.
        let with_u: Vec<u64> = cand.iter().zip(&adj[u]).map(|(&c, &a)| c & a).collect();
        bb(adj, &with_u, size + 1, best);
        // Exclude u.
        bb(adj, &cand, size, best);
    }

    let mut best = 0;
    bb(&adj, &candidates, 0, &mut best);
    Ok(best)
}

// ---------------------------------------------------------------------------
// Maximum pair-collection search.
// ---------------------------------------------------------------------------

/// Exact maximum `k` for which a collection of `k` non-commuting pairs of
/// phaseless Paulis exists on `n` qudits, found by exhaustive depth-first
/// search (bounded above by `cap_k`).
///
/// Pairs are explored with the `s`-vectors in strictly increasing
/// lexicographic order, which rules out permutations of the same collection.
pub fn brute_max_pairs(dim: &Dimension, n: usize, cap_k: usize) -> Result<usize> {
    let d = dim.d();
    let space = (d as u128).checked_pow(2 * n as u32);
    match space {
        Some(sz) if sz <= 1_000_000 => {}
        _ => {
            return Err(Error::TooLarge(format!(
                "search space d^(2n) = {d}^{} exceeds 10^6 vectors",
                2 * n
            )))
        }
    }
    let total = (d as usize).pow(2 * n as u32);
    let vecs: Vec<Vec<u64>> = (0..total)
        .map(|code| {
            let mut c = code as u64;
            (0..2 * n)
                .map(|_| {
                    let e = c % d;
                    c /= d;
                    e
                })
                .collect()
        })
        .collect();
    // comm[i][j] true iff vectors i and j fail to commute.
    let words = total.div_ceil(WORD_BITS);
    let mut noncomm = vec![vec![0u64; words]; total];
    for i in 0..total {
        for j in 0..total {
            let mut acc: i128 = 0;
            for h in 0..n {
                acc += vecs[i][n + h] as i128 * vecs[j][h] as i128;
                acc -= vecs[i][h] as i128 * vecs[j][n + h] as i128;
            }
            if acc.rem_euclid(d as i128) != 0 {
                bit_set(&mut noncomm[i], j);
            }
        }
    }

    struct Search<'a> {
        noncomm: &'a [Vec<u64>],
        total: usize,
        cap_k: usize,
        best: usize,
        s_stack: Vec<usize>,
        t_stack: Vec<usize>,
    }
    impl Search<'_> {
        fn extend(&mut self) {
            self.best = self.best.max(self.s_stack.len());
            if self.s_stack.len() >= self.cap_k {
                return;
            }
            let start = self.s_stack.last().map_or(0, |&s| s + 1);
            for s in start..self.total {
                // s must commute with all prior s's and t's.
                if self
                    .s_stack
                    .iter()
                    .chain(&self.t_stack)
                    .any(|&x| bit_get(&self.noncomm[x], s))
                {
                    continue;
                }
                for t in 0..self.total {
                    // t must not commute with s, and commute with the rest.
                    if !bit_get(&self.noncomm[s], t) {
                        continue;
                    }
                    if self
                        .s_stack
                        .iter()
                        .chain(&self.t_stack)
                        .any(|&x| bit_get(&self.noncomm[x], t))
                    {
                        continue;
                    }
                    self.s_stack.push(s);
                    self.t_stack.push(t);
                    self.extend();
                    self.s_stack.pop();
                    self.t_stack.pop();
                    if self.best >= self.cap_k {
                        return;
                    }
                }
            }
        }
    }
    let mut search = Search {
        noncomm: &noncomm,
        total,
        cap_k,
        best: 0,
        s_stack: Vec::new(),
        t_stack: Vec::new(),
    };
    search.extend();
    Ok(search.best)
}
