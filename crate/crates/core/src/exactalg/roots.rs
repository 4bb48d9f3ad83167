//! Rational roots of a squarefree polynomial over ℚ.
//!
//! The polynomial is scaled to a primitive integer polynomial `P` with leading
//! coefficient `a`; the substitution `t = u / a` turns it into a monic integer
//! polynomial `Q` whose integer roots are bounded by the Cauchy bound
//! `1 + max |qᵢ|`. Roots of `Q` modulo a prime `p` for which `Q mod p` stays
//! squarefree are lifted by Newton iteration until `p^k` exceeds twice the
//! bound, then every symmetric representative is checked exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Rat, UniPoly};

pub(crate) fn squarefree_rational_roots(u: &UniPoly) -> Vec<Rat> {
    let Some(n) = u.degree() else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let prim = u.primitive();
    let ints: Vec<BigInt> = prim
        .coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect();
    let lead = ints[n].clone();
    if n == 1 {
        return vec![Rat::new(-ints[0].clone(), lead)];
    }
    // Q(u) = lead^(n-1) P(u / lead)
    let mut q = Vec::with_capacity(n + 1);
    for (i, c) in ints.iter().enumerate().take(n) {
        q.push(c * num_traits::pow(lead.clone(), n - 1 - i));
    }
    q.push(BigInt::one());

    let bound: BigInt = q[..n].iter().map(|c| c.abs()).max().unwrap() + 1u32;
    let prime = choose_prime(&q);
    let p = BigInt::from(prime);
    let modp: Vec<u64> = q.iter().map(|c| mod_u64(c, prime)).collect();
    let dq: Vec<BigInt> = q
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();

    let target = &bound * 2u32;
    let mut out = Vec::new();
    for r0 in 0..prime {
        if eval_mod_u64(&modp, r0, prime) != 0 {
            continue;
        }
        let mut modulus = p.clone();
        let mut r = BigInt::from(r0);
        while modulus <= target {
            modulus = &modulus * &modulus;
            let fv = eval_big(&q, &r).mod_floor(&modulus);
            let dv = eval_big(&dq, &r).mod_floor(&modulus);
            let inv = dv
                .modinv(&modulus)
                .expect("simple root modulo p has invertible derivative");
            r = (&r - fv * inv).mod_floor(&modulus);
        }
        let half = &modulus / 2u32;
        let cand = if r > half { &r - &modulus } else { r };
        if eval_big(&q, &cand).is_zero() {
            out.push(Rat::new(cand, lead.clone()));
        }
    }
    out
}

fn eval_big(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn mod_u64(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn eval_mod_u64(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % p as u128) as u64
}

/// Smallest odd prime modulo which the monic polynomial stays squarefree.
fn choose_prime(q: &[BigInt]) -> u64 {
    let mut candidate = 3u64;
    loop {
        if is_prime(candidate) {
            let f: Vec<u64> = q.iter().map(|c| mod_u64(c, candidate)).collect();
            let df: Vec<u64> = f
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| ((i as u128 * c as u128) % candidate as u128) as u64)
                .collect();
            if fp::degree(&fp::gcd(f, df, candidate)) == Some(0) {
                return candidate;
            }
        }
        candidate += 2;
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense polynomial arithmetic over 𝔽ₚ, lowest degree first.
mod fp {
    pub fn degree(f: &[u64]) -> Option<usize> {
        f.iter().rposition(|&c| c != 0)
    }

    fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
        let m = p as u128;
        let mut acc = 1u128;
        let mut base = b as u128 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        acc as u64
    }

    fn rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
        let db = degree(b).expect("nonzero divisor");
        let inv = pow_mod(b[db], p - 2, p) as u128;
        let m = p as u128;
        while let Some(da) = degree(&a) {
            if da < db {
                break;
            }
            let c = a[da] as u128 * inv % m;
            for (j, &bj) in b[..=db].iter().enumerate() {
                let idx = da - db + j;
                a[idx] = ((a[idx] as u128 + m - c * bj as u128 % m) % m) as u64;
            }
        }
        a
    }

    pub fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
        while degree(&b).is_some() {
            let r = rem(a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_frac};

    #[test]
    fn finds_negative_and_fractional_roots() {
        // (2t - 3)(5t - 7)(2t + 3)
        let p = UniPoly::from_ints(&[-3, 2])
            .mul(&UniPoly::from_ints(&[-7, 5]))
            .mul(&UniPoly::from_ints(&[3, 2]));
        let mut r = squarefree_rational_roots(&p);
        r.sort();
        assert_eq!(r, vec![rat_frac(-3, 2), rat_frac(7, 5), rat_frac(3, 2)]);
        let q = UniPoly::from_ints(&[100, -1]).mul(&UniPoly::from_ints(&[1, 1]));
        let mut r = squarefree_rational_roots(&q);
        r.sort();
        assert_eq!(r, vec![rat(-1), rat(100)]);
    }

    #[test]
    fn irreducible_has_no_roots() {
        assert!(squarefree_rational_roots(&UniPoly::from_ints(&[-2, 0, 1])).is_empty());
        assert!(squarefree_rational_roots(&UniPoly::from_ints(&[1, 1, 1])).is_empty());
    }
}
