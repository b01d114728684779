//! Character-sum dimension formula, independent of the genus route.
//!
//! `dim S_k(Gamma1(N)) = sum over Dirichlet characters chi mod N with
//! chi(-1) = (-1)^k of dim S_k(Gamma0(N), chi)`, with the per-character
//! dimension given by the Cohen-Oesterle closed form
//!
//! ```text
//! dim S_k(N, chi) - dim M_{2-k}(N, chi)
//!   = (k-1)/12 psi(N) - (1/2) prod_{p|N} lambda(r_p, s_p, p)
//!     + c4(k) eps2(N, chi) + c3(k) eps3(N, chi)
//! ```
//!
//! where psi(N) = N prod(1 + 1/p), r_p = v_p(N), s_p = v_p(cond chi),
//! eps2/eps3 sum chi over the roots of x^2 + 1 and x^2 + x + 1 mod N, and
//! c4, c3 depend on k mod 4 and k mod 3. Character values enter only at
//! elements of order dividing 4 or 3, so the whole computation stays in
//! exact rational arithmetic (angles as Q/Z).
//!
//! This module deliberately shares nothing with the genus/cusp route in
//! [`super`] beyond basic integer factorisation; the two are compared
//! exhaustively in the test suite.

use std::collections::HashMap;

use num_rational::Ratio;

use super::DimError;
use crate::arith;

/// One cyclic component of the unit group `(Z/N)^*`.
#[derive(Debug, Clone)]
struct Component {
    /// Prime of the p^r block this component belongs to.
    prime: u64,
    /// Cyclic order of the component.
    order: u64,
    kind: ComponentKind,
    /// Residue mod the block modulus -> exponent in this component.
    dlog: HashMap<u64, u64>,
    /// Modulus of the block (p^r).
    block_modulus: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ComponentKind {
    /// (Z/p^r)^* for odd p, cyclic of order phi(p^r).
    OddPrimePower { r: u32 },
    /// The order-2 group (Z/4)^*.
    TwoMod4,
    /// The {+-1} part of (Z/2^r)^*, r >= 3.
    TwoSign,
    /// The cyclic part generated by 5 in (Z/2^r)^*, r >= 3.
    TwoFive,
}

/// The full group of Dirichlet characters mod N, with enough precomputed
/// data to evaluate parities, conductors and the elliptic sums exactly.
pub struct CharacterGroup {
    modulus: u64,
    comps: Vec<Component>,
    /// Prime-power blocks of N as (p, r).
    blocks: Vec<(u64, u32)>,
    /// Units solving x^2 + 1 == 0 mod N.
    fourth_roots: Vec<u64>,
    /// Units solving x^2 + x + 1 == 0 mod N.
    third_roots: Vec<u64>,
}

/// Angle in Q/Z represented as a reduced rational in [0, 1).
type Angle = Ratio<i64>;

fn angle(num: i64, den: i64) -> Angle {
    let a = Ratio::new(num, den);
    a - a.floor()
}

fn multiplicative_order(x: u64, modulus: u64, group_order: u64) -> u64 {
    let mut ord = 1u64;
    let mut acc = x % modulus;
    while acc != 1 {
        acc = (acc as u128 * x as u128 % modulus as u128) as u64;
        ord += 1;
        if ord > group_order {
            break;
        }
    }
    ord
}

impl CharacterGroup {
    pub fn new(n: u64) -> Result<Self, DimError> {
        if n == 0 {
            return Err(DimError::ZeroLevel);
        }
        let f = arith::factor(n)?;
        let blocks: Vec<(u64, u32)> = f.factors().iter().map(|&(p, e)| (p, e)).collect();
        let mut comps = Vec::new();
        for &(p, r) in &blocks {
            let pr = p.pow(r);
            if p == 2 {
                match r {
                    1 => {}
                    2 => {
                        let mut dlog = HashMap::new();
                        dlog.insert(1u64, 0u64);
                        dlog.insert(3u64, 1u64);
                        comps.push(Component {
                            prime: 2,
                            order: 2,
                            kind: ComponentKind::TwoMod4,
                            dlog,
                            block_modulus: 4,
                        });
                    }
                    _ => {
                        // (Z/2^r)^* = {+-1} x <5>
                        let five_order = pr / 4;
                        let mut sign_dlog = HashMap::new();
                        let mut five_dlog = HashMap::new();
                        let mut x = 1u64;
                        for b in 0..five_order {
                            sign_dlog.insert(x, 0);
                            five_dlog.insert(x, b);
                            let neg = pr - x;
                            sign_dlog.insert(neg, 1);
                            five_dlog.insert(neg, b);
                            x = (x as u128 * 5 % pr as u128) as u64;
                        }
                        comps.push(Component {
                            prime: 2,
                            order: 2,
                            kind: ComponentKind::TwoSign,
                            dlog: sign_dlog,
                            block_modulus: pr,
                        });
                        comps.push(Component {
                            prime: 2,
                            order: five_order,
                            kind: ComponentKind::TwoFive,
                            dlog: five_dlog,
                            block_modulus: pr,
                        });
                    }
                }
            } else {
                let order = pr / p * (p - 1);
                let gen = (2..pr)
                    .find(|&g| g % p != 0 && multiplicative_order(g, pr, order) == order)
                    .expect("primitive root exists for odd prime powers");
                let mut dlog = HashMap::new();
                let mut x = 1u64;
                for j in 0..order {
                    dlog.insert(x, j);
                    x = (x as u128 * gen as u128 % pr as u128) as u64;
                }
                comps.push(Component {
                    prime: p,
                    order,
                    kind: ComponentKind::OddPrimePower { r },
                    dlog,
                    block_modulus: pr,
                });
            }
        }
        let mut fourth_roots = Vec::new();
        let mut third_roots = Vec::new();
        for x in 0..n.max(1) {
            if arith::gcd(x, n) != 1 {
                continue;
            }
            if (x * x + 1) % n == 0 {
                fourth_roots.push(x);
            }
            if (x * x + x + 1) % n == 0 {
                third_roots.push(x);
            }
        }
        Ok(CharacterGroup {
            modulus: n,
            comps,
            blocks,
            fourth_roots,
            third_roots,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn char_count(&self) -> u64 {
        self.comps.iter().map(|c| c.order).product()
    }

    /// Exponent vector -> angle of chi at the unit x.
    fn chi_angle(&self, exps: &[u64], x: u64) -> Angle {
        let mut t = angle(0, 1);
        for (c, &a) in self.comps.iter().zip(exps) {
            let res = x % c.block_modulus;
            let d = *c.dlog.get(&res).expect("unit has a discrete log");
            // a * d / order, exactly
            t += angle(((a as u128 * d as u128) % c.order as u128) as i64, c.order as i64);
        }
        t - t.floor()
    }

    fn chi_is_even(&self, exps: &[u64]) -> bool {
        if self.modulus <= 2 {
            return true;
        }
        let t = self.chi_angle(exps, self.modulus - 1);
        if t == angle(0, 1) {
            true
        } else {
            assert_eq!(t, angle(1, 2), "chi(-1) must be +-1");
            false
        }
    }

    /// v_p of the conductor of chi, for each prime block of N.
    fn conductor_exponents(&self, exps: &[u64]) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        for &(p, _) in &self.blocks {
            let mut s: u32 = 0;
            if p == 2 {
                let mut sign_nontrivial = false;
                for (c, &a) in self.comps.iter().zip(exps) {
                    if c.prime != 2 {
                        continue;
                    }
                    match c.kind {
                        ComponentKind::TwoMod4 | ComponentKind::TwoSign => {
                            if a % c.order != 0 {
                                sign_nontrivial = true;
                            }
                        }
                        ComponentKind::TwoFive => {
                            let m = c.order / num_gcd(c.order, a);
                            if m > 1 {
                                s = s.max(m.trailing_zeros() + 2);
                            }
                        }
                        ComponentKind::OddPrimePower { .. } => unreachable!(),
                    }
                }
                if s == 0 && sign_nontrivial {
                    s = 2;
                }
            } else {
                for (c, &a) in self.comps.iter().zip(exps) {
                    if c.prime != p {
                        continue;
                    }
                    let m = c.order / num_gcd(c.order, a);
                    if m > 1 {
                        let mut j = 0u32;
                        let mut mm = m;
                        while mm % p == 0 {
                            mm /= p;
                            j += 1;
                        }
                        s = 1 + j;
                    }
                }
            }
            out.push((p, s));
        }
        out
    }

    /// `sum chi(x)` over solutions of x^2 + 1 == 0; zero for odd chi, a plain
    /// signed count for even chi (the values are then +-1).
    fn eps2(&self, exps: &[u64], even: bool) -> i64 {
        if !even {
            return 0;
        }
        let mut s = 0i64;
        for &x in &self.fourth_roots {
            let t = self.chi_angle(exps, x);
            if t == angle(0, 1) {
                s += 1;
            } else {
                assert_eq!(t, angle(1, 2), "order-4 unit must map to +-1 under even chi");
                s -= 1;
            }
        }
        s
    }

    /// `sum chi(x)` over solutions of x^2 + x + 1 == 0; the solution set is
    /// closed under inversion so the cube-root values pair up to an integer.
    fn eps3(&self, exps: &[u64]) -> i64 {
        let mut s: Ratio<i64> = Ratio::new(0, 1);
        for &x in &self.third_roots {
            let t = self.chi_angle(exps, x);
            if t == angle(0, 1) {
                s += Ratio::new(1, 1);
            } else {
                assert!(
                    t == angle(1, 3) || t == angle(2, 3),
                    "cube root must map to a cube root of unity"
                );
                s += Ratio::new(-1, 2);
            }
        }
        assert!(s.is_integer(), "eps3 must be an integer");
        s.to_integer()
    }

    /// `dim S_k(Gamma1(N))` as the parity-filtered character sum.
    pub fn dim_cusp(&self, k: u32) -> Result<u128, DimError> {
        if k < 2 {
            return Err(DimError::WeightOutOfScope(k));
        }
        let want_even = k % 2 == 0;
        // psi(N) = prod p^{r-1}(p+1)
        let mut psi: u128 = 1;
        for &(p, r) in &self.blocks {
            psi *= (p as u128).pow(r - 1) * (p as u128 + 1);
        }
        let radices: Vec<u64> = self.comps.iter().map(|c| c.order).collect();
        let mut exps = vec![0u64; radices.len()];
        let mut total: i128 = 0;
        for _ in 0..self.char_count() {
            let even = self.chi_is_even(&exps);
            if even == want_even {
                total += self.cohen_oesterle(k, psi, &exps, even);
            }
            // next exponent tuple (mixed radix increment)
            for (e, &r) in exps.iter_mut().zip(&radices) {
                *e += 1;
                if *e < r {
                    break;
                }
                *e = 0;
            }
        }
        assert!(total >= 0);
        Ok(total as u128)
    }

    fn cohen_oesterle(&self, k: u32, psi: u128, exps: &[u64], even: bool) -> i128 {
        let n = self.modulus;
        let cond = self.conductor_exponents(exps);
        let mut lambda_prod: i128 = 1;
        for (&(p, r), &(_, s)) in self.blocks.iter().zip(&cond) {
            lambda_prod *= lambda(p, r, s);
        }
        let c4 = match k % 4 {
            0 => Ratio::new(1i128, 4),
            2 => Ratio::new(-1i128, 4),
            _ => Ratio::new(0i128, 1),
        };
        let c3 = match k % 3 {
            0 => Ratio::new(1i128, 3),
            2 => Ratio::new(-1i128, 3),
            _ => Ratio::new(0i128, 1),
        };
        let eps2 = self.eps2(exps, even) as i128;
        let eps3 = self.eps3(exps) as i128;
        let mut dim: Ratio<i128> = Ratio::new((k as i128 - 1) * psi as i128, 12)
            - Ratio::new(lambda_prod, 2)
            + c4 * Ratio::from_integer(eps2)
            + c3 * Ratio::from_integer(eps3);
        if k == 2 {
            // dim M_0(N, chi) = 1 exactly for the principal character.
            let trivial = exps.iter().all(|&a| a == 0);
            if trivial {
                dim += Ratio::from_integer(1);
            }
        }
        assert!(
            dim.is_integer(),
            "character dimension not integral at N = {n}, k = {k}"
        );
        let d = dim.to_integer();
        assert!(d >= 0, "negative character dimension at N = {n}, k = {k}");
        d
    }
}

fn num_gcd(a: u64, b: u64) -> u64 {
    arith::gcd(a, b)
}

fn lambda(p: u64, r: u32, s: u32) -> i128 {
    let p = p as i128;
    if 2 * s <= r {
        if r % 2 == 0 {
            let rh = r / 2;
            p.pow(rh) + p.pow(rh - 1)
        } else {
            2 * p.pow((r - 1) / 2)
        }
    } else {
        2 * p.pow(r - s)
    }
}

/// `dim S_k(Gamma1(N))` by the character route; independent of
/// [`super::dim_cusp`] and not memoized.
pub fn dim_cusp_by_characters(k: u32, n: u64) -> Result<u128, DimError> {
    CharacterGroup::new(n)?.dim_cusp(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_values() {
        assert_eq!(dim_cusp_by_characters(12, 1).unwrap(), 1);
        assert_eq!(dim_cusp_by_characters(2, 1).unwrap(), 0);
        assert_eq!(dim_cusp_by_characters(16, 1).unwrap(), 1);
        assert_eq!(dim_cusp_by_characters(26, 1).unwrap(), 1);
        assert_eq!(dim_cusp_by_characters(11, 1).unwrap(), 0);
    }

    #[test]
    fn classical_small_spaces() {
        // dim S_2(Gamma0(11)) = 1 and mod-11 odd characters add nothing at k=2.
        assert_eq!(dim_cusp_by_characters(2, 11).unwrap(), 1);
        // Genus of X_1(25).
        assert_eq!(dim_cusp_by_characters(2, 25).unwrap(), 12);
        // First odd-weight space at level 4.
        assert_eq!(dim_cusp_by_characters(3, 4).unwrap(), 0);
        assert_eq!(dim_cusp_by_characters(5, 4).unwrap(), 1);
        // The weight-3 CM form of level 7.
        assert_eq!(dim_cusp_by_characters(3, 7).unwrap(), 1);
        assert_eq!(dim_cusp_by_characters(3, 8).unwrap(), 1);
    }

    #[test]
    fn agrees_with_genus_route_small() {
        for n in 1..=40u64 {
            for k in 2..=10u32 {
                assert_eq!(
                    dim_cusp_by_characters(k, n).unwrap(),
                    super::super::dim_cusp(k, n).unwrap(),
                    "routes disagree at k={k} N={n}"
                );
            }
        }
    }

    #[test]
    fn group_sizes() {
        for n in 1..=120u64 {
            let g = CharacterGroup::new(n).unwrap();
            assert_eq!(g.char_count(), arith::euler_phi(n).unwrap(), "phi({n})");
        }
    }
}
