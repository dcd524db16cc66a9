//! Multimodular reduced row echelon form over `Q`.
//!
//! The matrix is reduced modulo a sequence of 62-bit primes, the residues of
//! the echelon form are lifted by CRT and rational reconstruction, and the
//! candidate is checked exactly: its kernel vectors must be annihilated by
//! the input. Since the rank modulo a prime never exceeds the rank over `Q`,
//! a verified candidate is the rational echelon form.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::field::{is_prime_u64, Field, Scalar};

const MAX_PRIMES: usize = 96;

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(MAX_PRIMES);
        let mut n = (1u64 << 62) - 1;
        while out.len() < MAX_PRIMES {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut e, mut base, mut acc) = (p - 2, a, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits")
}

/// Gauss-Jordan modulo `p`; returns the pivot columns, rows reduced in place.
fn rref_mod(rows: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r][c..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if y != 0 {
                    *x = (*x + p - mul_mod(factor, y, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// `r/s ≡ a (mod m)` with `|r|, s ≤ sqrt(m/2)`.
fn rational_reconstruction(a: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), a.clone());
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > *bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

/// Exact echelon form of a rational matrix given as rows, or `None` if the
/// prime budget is exhausted without a verified candidate.
pub(crate) fn rref_rational(
    field: &Field,
    rows: &[Vec<Scalar>],
    cols: usize,
) -> Option<(Vec<Vec<Scalar>>, Vec<usize>)> {
    // Clearing denominators row by row does not change the echelon form.
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let qs: Vec<&BigRational> = row.iter().map(|x| field.as_rational(x)).collect();
            let lcm = qs.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            qs.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect();

    let mut best: Option<Vec<usize>> = None;
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut used: usize = 0;
    let mut next_attempt = 1;
    for &p in primes() {
        let mut local: Vec<Vec<u64>> = ints
            .iter()
            .map(|row| row.iter().map(|x| reduce(x, p)).collect())
            .collect();
        let piv = rref_mod(&mut local, cols, p);
        let free: Vec<usize> = free_columns(&piv, cols);
        let values: Vec<u64> = (0..piv.len())
            .flat_map(|i| free.iter().map(move |&c| (i, c)))
            .map(|(i, c)| local[i][c])
            .collect();
        match &best {
            Some(b) if !better(&piv, b) && piv != *b => continue,
            Some(b) if piv == *b => {
                let pb = BigInt::from(p);
                let m_inv = BigInt::from(inv_mod(reduce(&modulus, p), p));
                for (x, &v) in residues.iter_mut().zip(&values) {
                    let delta = (BigInt::from(v) - reduce(x, p)).mod_floor(&pb) * &m_inv % &pb;
                    *x += &modulus * delta;
                }
                modulus *= p;
                used += 1;
            }
            _ => {
                best = Some(piv.clone());
                residues = values.into_iter().map(BigInt::from).collect();
                modulus = BigInt::from(p);
                used = 1;
                next_attempt = 1;
            }
        }
        if used < next_attempt {
            continue;
        }
        next_attempt = used + used.div_ceil(2);
        let piv = best.as_ref().expect("set above");
        if let Some(out) = lift(field, &ints, cols, piv, &residues, &modulus) {
            return Some(out);
        }
    }
    None
}

fn free_columns(piv: &[usize], cols: usize) -> Vec<usize> {
    let mut is_pivot = vec![false; cols];
    for &c in piv {
        is_pivot[c] = true;
    }
    (0..cols).filter(|&c| !is_pivot[c]).collect()
}

/// Higher rank, or equal rank with earlier pivots.
fn better(a: &[usize], b: &[usize]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a < b)
}

fn lift(
    field: &Field,
    ints: &[Vec<BigInt>],
    cols: usize,
    piv: &[usize],
    residues: &[BigInt],
    modulus: &BigInt,
) -> Option<(Vec<Vec<Scalar>>, Vec<usize>)> {
    let free = free_columns(piv, cols);
    let bound = (modulus / BigInt::from(2)).sqrt();
    let values: Vec<BigRational> = residues
        .iter()
        .map(|a| rational_reconstruction(a, modulus, &bound))
        .collect::<Option<_>>()?;
    let entry = |i: usize, k: usize| &values[i * free.len() + k];

    // Each free column gives a kernel vector; all must be annihilated.
    for (k, &fc) in free.iter().enumerate() {
        let mut v: Vec<BigRational> = vec![BigRational::zero(); cols];
        v[fc] = BigRational::one();
        for (i, &pc) in piv.iter().enumerate() {
            v[pc] = -entry(i, k).clone();
        }
        let lcm = v.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let iv: Vec<BigInt> = v.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
        for row in ints {
            let dot: BigInt = row
                .iter()
                .zip(&iv)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .sum();
            if !dot.is_zero() {
                return None;
            }
        }
    }

    let mut out = vec![vec![field.zero(); cols]; ints.len()];
    for (i, &pc) in piv.iter().enumerate() {
        out[i][pc] = field.one();
        for (k, &fc) in free.iter().enumerate() {
            if fc > pc {
                out[i][fc] = Scalar::Rat(entry(i, k).clone());
            }
        }
    }
    Some((out, piv.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reconstruction_inverts_residue() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(999_983u64);
        let bound = (&m / BigInt::from(2)).sqrt();
        let q = BigRational::new(BigInt::from(-355), BigInt::from(113));
        let a = (q.numer() * BigInt::from(inv_mod(113, 1_000_003)))
            .mod_floor(&BigInt::from(1_000_003u64));
        // residue modulo the product via CRT of both primes
        let a2 =
            (q.numer() * BigInt::from(inv_mod(113, 999_983))).mod_floor(&BigInt::from(999_983u64));
        let p1 = BigInt::from(1_000_003u64);
        let p2 = BigInt::from(999_983u64);
        let t =
            ((&a2 - &a).mod_floor(&p2) * BigInt::from(inv_mod(1_000_003 % 999_983, 999_983))) % &p2;
        let x = &a + &p1 * t;
        assert_eq!(rational_reconstruction(&x, &m, &bound), Some(q));
    }

    #[test]
    fn agrees_with_direct_elimination() {
        let q = Field::rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..40 {
            let rows = rng.gen_range(1..9);
            let cols = rng.gen_range(1..9);
            let rank_cap = rng.gen_range(1..=rows.min(cols));
            let left: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..rank_cap).map(|_| rng.gen_range(-9..10)).collect())
                .collect();
            let right: Vec<Vec<i64>> = (0..rank_cap)
                .map(|_| (0..cols).map(|_| rng.gen_range(-9..10)).collect())
                .collect();
            let m = Matrix::from_i64(&q, &left).mul(&Matrix::from_i64(&q, &right));
            let m = m.scale(&q.div(&q.one(), &q.from_i64(trial + 2)));
            let (direct, dp) = m.rref_direct();
            let (modular, mp) = rref_rational(&q, &m.to_rows(), cols).unwrap();
            assert_eq!(dp, mp);
            assert_eq!(direct.to_rows(), modular);
        }
    }
}
