//! Factorization of squarefree polynomials over Q by the Zassenhaus method.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{internal, Result};
use crate::exact::factor::{distinct_degree, equal_degree};
use crate::exact::field::{Field, Scalar};
use crate::exact::poly::Poly;

type ZPoly = Vec<BigInt>;

const CANDIDATE_PRIMES: usize = 6;

fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let mut out: ZPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect();
    trim(&mut out);
    out
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut out);
    out
}

fn symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half: BigInt = m / 2;
    let mut out: ZPoly = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Exact division by a monic integer polynomial, `None` if it leaves a remainder.
fn zdiv_monic(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut rem = a.clone();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for k in (db..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            rem[k - db + j] -= &c * y;
        }
        quot[k - db] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut quot);
    Some(quot)
}

fn to_fp(a: &ZPoly, fp: &Field) -> Poly {
    Poly::new(fp, a.iter().map(|c| fp.from_bigint(c)).collect())
}

fn from_fp(a: &Poly) -> ZPoly {
    a.coeffs()
        .iter()
        .map(|c| match c {
            Scalar::Mod(v) => BigInt::from(*v),
            _ => unreachable!("prime field coefficient"),
        })
        .collect()
}

fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive_part(a: &ZPoly) -> ZPoly {
    let c = content(a);
    let mut out: ZPoly = a.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|x| x.is_negative()) {
        out.iter_mut().for_each(|x| *x = -x.clone());
    }
    out
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| crate::exact::field::is_prime_u64(n))
}

/// Lift `G = g0 * h0 (mod p)` to `G = g * h (mod p^k)`; all inputs monic.
fn lift_two(big: &ZPoly, g0: &Poly, h0: &Poly, p: &BigInt, k: u32) -> (ZPoly, ZPoly) {
    let fp = g0.field().clone();
    let (one, s, t) = g0.ext_gcd(h0);
    debug_assert!(one.is_one());
    let modulus = p.pow(k);
    let mut g = from_fp(g0);
    let mut h = from_fp(h0);
    let mut pj = p.clone();
    for _ in 1..k {
        let diff = zmod(&zsub(big, &zmul(&g, &h)), &modulus);
        let e_int: ZPoly = diff.iter().map(|c| c / &pj).collect();
        let e = to_fp(&e_int, &fp);
        let (quot, tau) = t.mul(&e).div_rem(g0);
        let sigma = s.mul(&e).add(&quot.mul(h0));
        let tau = from_fp(&tau);
        let sigma = from_fp(&sigma);
        for (i, c) in tau.iter().enumerate() {
            g[i] += c * &pj;
        }
        for (i, c) in sigma.iter().enumerate() {
            h[i] += c * &pj;
        }
        pj *= p;
    }
    (zmod(&g, &modulus), zmod(&h, &modulus))
}

fn hensel_lift(big: &ZPoly, factors: &[Poly], p: &BigInt, k: u32) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![zmod(big, &p.pow(k))];
    }
    let fp = factors[0].field().clone();
    let mid = factors.len() / 2;
    let g0 = factors[..mid].iter().fold(Poly::one(&fp), |a, b| a.mul(b));
    let h0 = factors[mid..].iter().fold(Poly::one(&fp), |a, b| a.mul(b));
    let (g, h) = lift_two(big, &g0, &h0, p, k);
    let mut out = hensel_lift(&g, &factors[..mid], p, k);
    out.extend(hensel_lift(&h, &factors[mid..], p, k));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Factor a monic integer polynomial that is squarefree over Q.
fn factor_monic_squarefree(big: &ZPoly, seed: u64) -> Result<Vec<ZPoly>> {
    let n = big.len() - 1;
    if n <= 1 {
        return Ok(vec![big.clone()]);
    }
    // choose among several good primes the one with the fewest modular factors
    let mut best: Option<(u64, Vec<Poly>)> = None;
    let mut tried = 0;
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    for p in small_primes() {
        let fp = Field::prime(p)?;
        let f = to_fp(big, &fp);
        if f.deg() != n || !f.gcd(&f.derivative()).is_one() {
            continue;
        }
        let mut local = Vec::new();
        for (g, d) in distinct_degree(&f) {
            local.extend(equal_degree(&g, d, &mut rng));
        }
        if best.as_ref().is_none_or(|(_, b)| local.len() < b.len()) {
            best = Some((p, local));
        }
        tried += 1;
        if tried >= CANDIDATE_PRIMES || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, local) = best.ok_or_else(|| internal!("no good prime found"))?;
    if local.len() == 1 {
        return Ok(vec![big.clone()]);
    }
    // coefficient bound for any factor: 2^n (n+1) max|c|
    let maxc = big
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::one);
    let bound: BigInt = (BigInt::one() << n) * BigInt::from(n + 1) * maxc;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    while pb.pow(k) <= &bound * 2 {
        k += 1;
    }
    let modulus = pb.pow(k);
    let mut lifted = hensel_lift(big, &local, &pb, k);
    let mut rest = big.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for combo in combinations(lifted.len(), size) {
            let prod = combo
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| zmul(&acc, &lifted[i]));
            let cand = symmetric(&prod, &modulus);
            let c0 = &cand[0];
            let r0 = &rest[0];
            if !r0.is_zero() && (c0.is_zero() || !(r0 % c0).is_zero()) {
                continue;
            }
            if let Some(q) = zdiv_monic(&rest, &cand) {
                hit = Some((combo, cand, q));
                break;
            }
        }
        match hit {
            Some((combo, cand, q)) => {
                found.push(cand);
                rest = q;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, f)| f)
                    .collect();
            }
            None => size += 1,
        }
    }
    if rest.len() > 1 {
        found.push(rest);
    }
    Ok(found)
}

/// Monic irreducible factors over Q of a monic squarefree rational polynomial.
pub fn factor_squarefree_rational(f: &Poly) -> Result<Vec<Poly>> {
    let q = f.field().clone();
    let n = f.deg();
    if n <= 1 {
        return Ok(vec![f.monic()]);
    }
    // clear denominators
    let mut lcm = BigInt::one();
    for c in f.coeffs() {
        lcm = lcm.lcm(q.as_rational(c).denom());
    }
    let ints: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| (q.as_rational(c) * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let prim = primitive_part(&ints);
    let a = prim[n].clone();
    // G(x) = a^(n-1) F(x / a) is monic with integer coefficients
    let monic: ZPoly = (0..=n)
        .map(|i| {
            if i == n {
                BigInt::one()
            } else {
                &prim[i] * a.pow((n - 1 - i) as u32)
            }
        })
        .collect();
    let seed = n as u64 ^ prim[0].to_u64().unwrap_or(0);
    let mut out = Vec::new();
    for g in factor_monic_squarefree(&monic, seed)? {
        // F-factor = primitive part of g(a x)
        let scaled: ZPoly = g
            .iter()
            .enumerate()
            .map(|(i, c)| c * a.pow(i as u32))
            .collect();
        let pf = primitive_part(&scaled);
        let poly = Poly::new(
            &q,
            pf.iter()
                .map(|c| Scalar::Rat(BigRational::from_integer(c.clone())))
                .collect(),
        );
        out.push(poly.monic());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qpoly(c: &[i64]) -> Poly {
        Poly::from_i64(&Field::rationals(), c)
    }

    #[test]
    fn combination_enumeration() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(5, 1).len(), 5);
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits into quadratics mod every prime
        let f = qpoly(&[1, 0, -10, 0, 1]);
        let r = factor_squarefree_rational(&f).unwrap();
        assert_eq!(r, vec![f]);
    }

    #[test]
    fn cyclotomic_product() {
        // x^12 - 1 = prod Phi_d, d | 12: six irreducible factors
        let f = qpoly(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let r = factor_squarefree_rational(&f).unwrap();
        assert_eq!(r.len(), 6);
        let prod = r.iter().fold(qpoly(&[1]), |a, b| a.mul(b));
        assert_eq!(prod, f);
    }

    #[test]
    fn non_monic_input() {
        // (2x + 3)(3x^2 - 5) scaled to monic
        let f = qpoly(&[3, 2]).mul(&qpoly(&[-5, 0, 3])).monic();
        let r = factor_squarefree_rational(&f).unwrap();
        assert_eq!(r.len(), 2);
        let prod = r.iter().fold(qpoly(&[1]), |a, b| a.mul(b));
        assert_eq!(prod, f);
    }

    #[test]
    fn split_degree_eight() {
        let q = Field::rationals();
        let f = (1..=8).fold(qpoly(&[1]), |acc, r| acc.mul(&qpoly(&[-r, 1])));
        let r = factor_squarefree_rational(&f).unwrap();
        assert_eq!(r.len(), 8);
        assert!(r.iter().all(|p| p.deg() == 1 && p.is_monic()));
        let _ = q;
    }
}
