//! Univariate factorization.
//!
//! Finite fields: squarefree decomposition, distinct-degree splitting, and
//! Cantor-Zassenhaus equal-degree splitting driven by a seeded stream.
//! Rationals: Zassenhaus (reduction mod a good prime, Hensel lifting,
//! factor recombination) in [`crate::exact::zfactor`].

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{capacity, domain, Result};
use crate::exact::field::{Field, Scalar};
use crate::exact::poly::Poly;
use crate::exact::zfactor;

/// Knobs for factorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorConfig {
    /// Seed for the equal-degree splitting stream.
    pub seed: u64,
    /// Largest degree accepted over Q.
    pub max_rational_degree: usize,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            seed: 0x5eed,
            max_rational_degree: 24,
        }
    }
}

/// `f = unit * prod(factor^multiplicity)`, factors monic irreducible and
/// sorted by degree, then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Scalar,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self, field: &Field) -> Poly {
        let mut acc = Poly::constant(field, self.unit.clone());
        for (p, m) in &self.factors {
            acc = acc.mul(&p.pow(*m));
        }
        acc
    }

    /// Distinct irreducible factors.
    pub fn irreducibles(&self) -> impl Iterator<Item = &Poly> {
        self.factors.iter().map(|(p, _)| p)
    }
}

pub fn factor_polynomial(f: &Poly, cfg: &FactorConfig) -> Result<Factorization> {
    let field = f.field().clone();
    let Some(lc) = f.leading().cloned() else {
        return Err(domain!("cannot factor the zero polynomial"));
    };
    let monic = f.monic();
    let mut factors = Vec::new();
    if field.is_finite() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for (part, mult) in squarefree_finite(&monic) {
            for (g, d) in distinct_degree(&part) {
                for h in equal_degree(&g, d, &mut rng) {
                    factors.push((h, mult));
                }
            }
        }
    } else {
        if monic.deg() > cfg.max_rational_degree {
            return Err(capacity!(
                "rational factorization limited to degree {}, got {}",
                cfg.max_rational_degree,
                monic.deg()
            ));
        }
        for (part, mult) in squarefree_char0(&monic) {
            for h in zfactor::factor_squarefree_rational(&part)? {
                factors.push((h, mult));
            }
        }
    }
    Ok(Factorization {
        unit: lc,
        factors: normalize(factors),
    })
}

fn normalize(mut factors: Vec<(Poly, usize)>) -> Vec<(Poly, usize)> {
    factors.sort_by(|a, b| (a.0.deg(), a.0.coeffs()).cmp(&(b.0.deg(), b.0.coeffs())));
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (p, m) in factors {
        match out.last_mut() {
            Some((q, n)) if *q == p => *n += m,
            _ => out.push((p, m)),
        }
    }
    out
}

/// Irreducibility over a finite field.
pub fn is_irreducible_finite(f: &Poly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let f = f.monic();
    let df = f.derivative();
    if df.is_zero() || !f.gcd(&df).is_one() {
        return false;
    }
    let dd = distinct_degree(&f);
    dd.len() == 1 && dd[0].1 == n
}

fn field_order(f: &Field) -> BigUint {
    f.order().expect("finite field")
}

fn pth_root_poly(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.characteristic() as usize;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| field.pth_root(c))
        .collect();
    Poly::new(field, coeffs)
}

/// Squarefree decomposition of a monic polynomial over a finite field.
pub fn squarefree_finite(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let p = field.characteristic() as usize;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (h, m) in squarefree_finite(&pth_root_poly(f)) {
            out.push((h, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if !c.is_one() {
        for (h, m) in squarefree_finite(&pth_root_poly(&c)) {
            out.push((h, m * p));
        }
    }
    out
}

/// Yun's squarefree decomposition in characteristic zero.
pub fn squarefree_char0(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0);
    let mut c = df.exact_div(&a0);
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while !b.is_one() {
        let a = b.gcd(&d);
        if !a.is_one() {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a);
        c = d.exact_div(&a);
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Splits a monic squarefree polynomial into products of irreducibles of
/// equal degree: `(product, degree)`.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let q = field_order(field);
    let x = Poly::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&q, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.exact_div(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let n = rest.deg();
        out.push((rest, n));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of irreducibles of degree `d`.
pub fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.deg();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let q = field_order(field);
    let p = field.characteristic();
    loop {
        let a = Poly::new(field, (0..n).map(|_| field.random(rng)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace to F_2: a + a^2 + ... + a^(2^(m d - 1))
            let m = field.prime_degree() * d;
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..m {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e: BigUint = (q.pow(d as u32) - 1u32) / 2u32;
            a.pow_mod(&e, f).sub(&Poly::one(field))
        };
        let g = b.gcd(f);
        if g.deg() > 0 && g.deg() < n {
            let h = f.exact_div(&g);
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Roots (without multiplicity) of a polynomial, via its linear factors.
pub fn roots(f: &Poly, cfg: &FactorConfig) -> Result<Vec<Scalar>> {
    let field = f.field();
    let fac = factor_polynomial(f, cfg)?;
    Ok(fac
        .irreducibles()
        .filter(|p| p.deg() == 1)
        .map(|p| field.neg(&p.coeff(0)))
        .collect())
}
