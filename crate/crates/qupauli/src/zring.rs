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

//! Elementary integer and modular arithmetic: extended gcd with the tie-break
//! needed by the alternating-Smith pivoting, units and inverses in `Z_d`,
//! additive orders, prime factorization, and the totient functions
//! `Ψ` (Dedekind psi), `φ` (Euler), and `J_2` (second Jordan totient).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A modulus `d ≥ 2` together with its prime factorization
/// `d = p_0^{α_0} · p_1^{α_1} ⋯ p_{m-1}^{α_{m-1}}`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dimension {
    d: u64,
    factorization: Vec<(u64, u32)>,
}

impl Dimension {
    /// Factor `d` by trial division. `d` is desk-scale (≤ 10^9 in practice),
    /// so nothing fancier is warranted.
    pub fn new(d: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(format!("d must be >= 2, got {d}")));
        }
        let mut factorization = Vec::new();
        let mut rest = d;
        let mut p = 2u64;
        while p * p <= rest {
            if rest.is_multiple_of(p) {
                let mut alpha = 0u32;
                while rest.is_multiple_of(p) {
                    rest /= p;
                    alpha += 1;
                }
                factorization.push((p, alpha));
            }
            p += 1;
        }
        if rest > 1 {
            factorization.push((rest, 1));
        }
        Ok(Dimension { d, factorization })
    }

    /// The modulus itself.
    pub fn d(&self) -> u64 {
        self.d
    }

    /// `(p_i, α_i)` pairs with primes strictly increasing.
    pub fn factorization(&self) -> &[(u64, u32)] {
        &self.factorization
    }

    /// Number `m` of distinct primes dividing `d`.
    pub fn num_primes(&self) -> usize {
        self.factorization.len()
    }

    /// The maximal prime powers `p_i^{α_i}`, in prime order.
    pub fn prime_powers(&self) -> Vec<u64> {
        self.factorization
            .iter()
            .map(|&(p, a)| p.pow(a))
            .collect()
    }

    /// True iff no prime divides `d` more than once.
    pub fn is_square_free(&self) -> bool {
        self.factorization.iter().all(|&(_, a)| a == 1)
    }

    /// Canonical representative of `a` in `[0, d)`.
    pub fn reduce_i128(&self, a: i128) -> u64 {
        let d = self.d as i128;
        (((a % d) + d) % d) as u64
    }
}

/// Extended gcd: returns `(g, x, y)` with `g = gcd(a, b) ≥ 0`,
/// `a·x + b·y = g`, and `gcd(0,0) = 0`.
///
/// Tie-breaking among the Bezout solutions `x = x₀ + t·(b/g)`,
/// `y = y₀ − t·(a/g)`: `|y|` is minimized; in particular when `g = |a|` the
/// choice `y = 0` is made, which is what makes the alternating-Smith zeroing
/// subroutines terminate.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if a == 0 && b == 0 {
        return (0, 0, 0);
    }
    // Standard iterative extended Euclid on (|a|, |b|); fix signs afterwards.
    let (mut old_r, mut r) = (a.abs(), b.abs());
    let (mut old_x, mut x) = (1i128, 0i128);
    let (mut old_y, mut y) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
        (old_y, y) = (y, old_y - q * y);
    }
    let g = old_r;
    let mut bx = old_x * a.signum();
    let mut by = old_y * b.signum();
    // Normalize: minimize |y| over the solution family, preferring the
    // nonnegative representative on ties. When g = |a| this forces y = 0.
    if a != 0 {
        let step = (a / g).abs();
        if step > 0 {
            // Reduce y into (-step/2, step/2], preferring the nonnegative
            // representative on ties, then recover x exactly from the
            // identity a·x = g − b·y.
            by = by.rem_euclid(step);
            if 2 * by > step {
                by -= step;
            }
            debug_assert_eq!((g - b * by) % a, 0);
            bx = (g - b * by) / a;
        }
    }
    debug_assert_eq!(a * bx + b * by, g);
    (g, bx, by)
}

/// `gcd(a, b) ≥ 0` for `u64`.
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Multiplicative inverse of the unit `a` in `Z_d`, in `[0, d)`.
pub fn unit_inverse(a: u64, dim: &Dimension) -> Result<u64> {
    let d = dim.d();
    let a = a % d;
    let (g, x, _) = ext_gcd(a as i128, d as i128);
    if g != 1 {
        return Err(Error::NotAUnit { a, d });
    }
    Ok(dim.reduce_i128(x))
}

/// Additive order of `a` in `Z_d`: the smallest `t ≥ 1` with `t·a ≡ 0`,
/// i.e. `d / gcd(a, d)`. By this convention `order_mod(0) = 1`.
pub fn order_mod(a: u64, dim: &Dimension) -> u64 {
    let d = dim.d();
    d / gcd_u64(a % d, d)
}

/// The three totients of `d`: Dedekind `Ψ(d) = d·∏(1 + 1/p)`, Euler
/// `φ(d) = d·∏(1 − 1/p)`, and the second Jordan totient
/// `J_2(d) = d²·∏(1 − 1/p²)`. They satisfy `Ψ·φ = J_2`.
pub fn totients(dim: &Dimension) -> (u64, u64, u64) {
    let d = dim.d();
    let mut psi = d;
    let mut phi = d;
    let mut jordan2 = d * d;
    for &(p, _) in dim.factorization() {
        psi = psi / p * (p + 1);
        phi = phi / p * (p - 1);
        jordan2 = jordan2 / (p * p) * (p * p - 1);
    }
    (psi, phi, jordan2)
}

/// Smallest nonnegative solution `x` of `a·x ≡ b (mod d)`, if one exists.
///
/// Solvable iff `gcd(a, d) | b`; the solution set is then
/// `x₀ + (d/gcd(a,d))·Z_d` and the representative in `[0, d/gcd(a,d))` is
/// returned.
pub fn solve_congruence(a: u64, b: u64, dim: &Dimension) -> Option<u64> {
    let d = dim.d();
    let (a, b) = (a % d, b % d);
    let (g, x, _) = ext_gcd(a as i128, d as i128);
    let g = g as u64;
    if g == 0 {
        return if b == 0 { Some(0) } else { None };
    }
    if b % g != 0 {
        return None;
    }
    let step = d / g;
    let x0 = dim.reduce_i128(x * (b / g) as i128);
    Some(x0 % step)
}

/// Lift `a` (with `gcd(a, d) = g`) to a unit: returns a unit `u` of `Z_d` with
/// `u · g ≡ a (mod d)`.
///
/// Such a unit exists because `a` and `g` generate the same ideal of `Z_d`.
/// Used to normalize normal-form diagonal entries to the canonical positive
/// divisor of `d` in their associate class.
pub fn associate_unit(a: u64, dim: &Dimension) -> u64 {
    let d = dim.d();
    let a = a % d;
    if a == 0 {
        return 1;
    }
    let g = gcd_u64(a, d);
    // a/g is coprime to d/g; shift by multiples of d/g until coprime to d.
    // A suitable representative exists within the first few multiples (it is
    // a classical fact that every residue coprime to d/g lifts to a residue
    // coprime to d in any window of d/g consecutive representatives).
    let base = a / g;
    let step = d / g;
    let mut u = base % d;
    loop {
        if gcd_u64(u % d, d) == 1 {
            return u % d;
        }
        u = (u + step) % d;
    }
}

/// Big-integer extended gcd with the same conventions as [`ext_gcd`]:
/// `g ≥ 0`, `a·x + b·y = g`, `|y|` minimized (so `y = 0` whenever `g = |a|`).
pub fn ext_gcd_big(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if a.is_zero() && b.is_zero() {
        return (BigInt::zero(), BigInt::zero(), BigInt::zero());
    }
    let e = a.extended_gcd(b);
    let (g, mut x, mut y) = (e.gcd, e.x, e.y);
    debug_assert!(!g.is_negative());
    if !a.is_zero() {
        let step = (a / &g).abs();
        if !step.is_zero() {
            // Reduce y into (-step/2, step/2], then recompute x exactly.
            y = y.mod_floor(&step);
            if &y * 2 > step {
                y -= &step;
            }
            x = (&g - b * &y) / a;
        }
    }
    debug_assert_eq!(a * &x + b * &y, g);
    (g, x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn dim(d: u64) -> Dimension {
        Dimension::new(d).unwrap()
    }

    #[test]
    fn factorization_is_exact_and_sorted() {
        let d = dim(360);
        assert_eq!(d.factorization(), &[(2, 3), (3, 2), (5, 1)]);
        let product: u64 = d
            .factorization()
            .iter()
            .map(|&(p, a)| p.pow(a))
            .product();
        assert_eq!(product, 360);
        assert!(Dimension::new(1).is_err());
        assert!(Dimension::new(0).is_err());
    }

    #[test]
    fn ext_gcd_reference_values() {
        // 6·2 + 10·(−1) = 2.
        assert_eq!(ext_gcd(6, 10), (2, 2, -1));
        // gcd(0,0) = 0 by convention.
        assert_eq!(ext_gcd(0, 0), (0, 0, 0));
        // g = |a| forces y = 0.
        assert_eq!(ext_gcd(4, 8), (4, 1, 0));
    }

    #[test]
    fn ext_gcd_identity_holds_broadly() {
        for a in -40i128..=40 {
            for b in -40i128..=40 {
                let (g, x, y) = ext_gcd(a, b);
                assert!(g >= 0);
                assert_eq!(a * x + b * y, g);
                if a != 0 || b != 0 {
                    assert_eq!(g, a.abs().gcd(&b.abs()));
                    assert_eq!(a % g, 0);
                    assert_eq!(b % g, 0);
                }
                // Tie-break: y = 0 whenever g = |a| > 0.
                if g > 0 && g == a.abs() {
                    assert_eq!(y, 0, "ext_gcd({a},{b})");
                }
                // |y| minimal: |y| <= |a/g| / 2 when a != 0.
                if a != 0 && g > 0 {
                    assert!(2 * y.abs() <= (a / g).abs());
                }
            }
        }
    }

    #[test]
    fn ext_gcd_big_matches_small() {
        for a in -30i128..=30 {
            for b in -30i128..=30 {
                let (g, x, y) = ext_gcd(a, b);
                let (gb, xb, yb) =
                    ext_gcd_big(&BigInt::from(a), &BigInt::from(b));
                assert_eq!(gb, BigInt::from(g));
                assert_eq!(BigInt::from(a) * &xb + BigInt::from(b) * &yb, gb);
                assert_eq!(yb, BigInt::from(y), "y for ({a},{b})");
                assert_eq!(xb, BigInt::from(x));
            }
        }
        let big = BigInt::one() << 200u32;
        let (g, x, y) = ext_gcd_big(&big, &(&big + 1));
        assert_eq!(g, BigInt::one());
        assert_eq!(&big * x + (&big + 1) * y, BigInt::one());
    }

    #[test]
    fn unit_inverse_values() {
        assert_eq!(unit_inverse(3, &dim(10)).unwrap(), 7);
        assert_eq!(unit_inverse(1, &dim(17)).unwrap(), 1);
        assert_eq!(
            unit_inverse(2, &dim(6)),
            Err(Error::NotAUnit { a: 2, d: 6 })
        );
        for d in 2..40 {
            let dm = dim(d);
            for a in 1..d {
                if gcd_u64(a, d) == 1 {
                    let inv = unit_inverse(a, &dm).unwrap();
                    assert_eq!(a * inv % d, 1);
                }
            }
        }
    }

    #[test]
    fn order_mod_values() {
        assert_eq!(order_mod(6, &dim(10)), 5);
        assert_eq!(order_mod(0, &dim(7)), 1);
        assert_eq!(order_mod(4, &dim(12)), 3);
        // order_mod(a) is the least t >= 1 with t*a ≡ 0.
        for d in 2..30 {
            let dm = dim(d);
            for a in 0..d {
                let t = order_mod(a, &dm);
                assert_eq!(t * a % d, 0);
                for s in 1..t {
                    assert_ne!(s * a % d, 0);
                }
            }
        }
    }

    #[test]
    fn totient_values_and_identity() {
        assert_eq!(totients(&dim(6)).0, 12);
        assert_eq!(totients(&dim(2)).0, 3);
        assert_eq!(totients(&dim(10)), (18, 4, 72));
        for d in 2..1000 {
            let dm = dim(d);
            let (psi, phi, j2) = totients(&dm);
            assert_eq!(psi * phi, j2, "Ψ·φ = J_2 at d={d}");
            assert!(psi > d);
            assert_eq!(psi == d + 1, dm.factorization().len() == 1
                && dm.factorization()[0].1 == 1);
        }
    }

    #[test]
    fn jordan2_counts_coprime_vector_pairs() {
        // J_2(d) = |{(a,b) ∈ Z_d² : gcd(a,b,d)=1}| by direct enumeration.
        for d in 2..=60u64 {
            let dm = dim(d);
            let count = (0..d)
                .flat_map(|a| (0..d).map(move |b| (a, b)))
                .filter(|&(a, b)| gcd_u64(gcd_u64(a, b), d) == 1)
                .count() as u64;
            assert_eq!(count, totients(&dm).2, "d={d}");
        }
    }

    #[test]
    fn solve_congruence_is_smallest_solution() {
        for d in 2..=24u64 {
            let dm = dim(d);
            for a in 0..d {
                for b in 0..d {
                    match solve_congruence(a, b, &dm) {
                        Some(x) => {
                            assert_eq!(a * x % d, b);
                            for smaller in 0..x {
                                assert_ne!(a * smaller % d, b);
                            }
                        }
                        None => {
                            for x in 0..d {
                                assert_ne!(a * x % d, b);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn associate_unit_reaches_canonical_divisor() {
        for d in 2..=36u64 {
            let dm = dim(d);
            for a in 1..d {
                let g = gcd_u64(a, d);
                let u = associate_unit(a, &dm);
                assert_eq!(gcd_u64(u, d), 1, "u unit, d={d} a={a}");
                assert_eq!(u * g % d, a, "u·gcd ≡ a, d={d} a={a}");
            }
        }
    }
}
