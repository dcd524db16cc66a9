//! Dense univariate polynomials over a [`Field`] and minimal polynomials.

use num_bigint::BigUint;

use crate::error::{usage, Result};
use crate::exact::field::{Field, Scalar};
use crate::exact::matrix::{DependencyFinder, Matrix};

/// Little-endian coefficient vector; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<Scalar>) -> Poly {
        let mut p = Poly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn from_i64(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Scalar) -> Poly {
        Poly::new(field, vec![c])
    }

    /// `x`.
    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    /// `x - a`.
    pub fn linear(field: &Field, root: &Scalar) -> Poly {
        Poly::new(field, vec![field.neg(root), field.one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            f,
            (0..n)
                .map(|i| f.add(&self.coeff(i), &other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            f,
            (0..n)
                .map(|i| f.sub(&self.coeff(i), &other.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                f.mul_add_assign(&mut out[i + j], a, b);
            }
        }
        Poly::new(f, out)
    }

    /// Quotient and remainder; panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let f = &self.field;
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv_lc = f.inv(divisor.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if f.is_zero(&rem[k]) {
                continue;
            }
            let c = f.mul(&rem[k], &inv_lc);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !f.is_zero(d) {
                    let t = f.mul(&c, d);
                    rem[k - dd + j] = f.sub(&rem[k - dd + j], &t);
                }
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Poly::new(f, quot), Poly::new(f, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = f.inv(lc).unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Poly) -> Poly {
        let base = self.rem(modulus);
        let mut result = Poly::one(&self.field).rem(modulus);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(modulus);
            if e.bit(i) {
                result = result.mul(&base).rem(modulus);
            }
        }
        result
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut r = Poly::one(&self.field);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Evaluate at a square matrix (Horner).
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let f = &self.field;
        let n = m.rows();
        let mut acc = Matrix::zeros(f, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.format(c);
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            terms.push(match (i, cs.as_str()) {
                (0, _) => cs,
                (_, "1") => mono,
                _ => format!("{cs}*{mono}"),
            });
        }
        terms.join(" + ")
    }
}

/// Monic annihilating polynomial of least degree of a square matrix.
pub fn minimal_polynomial(m: &Matrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(usage!(
            "minimal polynomial of a {}x{} matrix",
            m.rows(),
            m.cols()
        ));
    }
    let f = m.field();
    let n = m.rows();
    let flatten = |a: &Matrix| -> Vec<Scalar> { a.to_rows().into_iter().flatten().collect() };
    let mut finder = DependencyFinder::new(f);
    let mut power = Matrix::identity(f, n);
    loop {
        if let Some(rel) = finder.push(&flatten(&power)) {
            let mut coeffs: Vec<Scalar> = rel.iter().map(|c| f.neg(c)).collect();
            coeffs.push(f.one());
            return Ok(Poly::new(f, coeffs));
        }
        power = power.mul(m);
    }
}

/// Characteristic polynomial `det(xI - M)` by the division-free Berkowitz recursion.
pub fn characteristic_polynomial(m: &Matrix) -> Poly {
    assert!(m.is_square());
    let f = m.field();
    let n = m.rows();
    // Berkowitz: build the Toeplitz products.
    let mut vect: Vec<Scalar> = vec![f.one()];
    for r in 0..n {
        // submatrix m[0..=r][0..=r], with the last row/col split off
        let a = m.get(r, r).clone();
        let row: Vec<Scalar> = (0..r).map(|j| m.get(r, j).clone()).collect();
        let col: Vec<Scalar> = (0..r).map(|i| m.get(i, r).clone()).collect();
        let sub = {
            let mut s = Matrix::zeros(f, r, r);
            for i in 0..r {
                for j in 0..r {
                    s.set(i, j, m.get(i, j).clone());
                }
            }
            s
        };
        // coefficients: 1, -a, -R C, -R A C, -R A^2 C, ...
        let mut t = vec![f.one(), f.neg(&a)];
        let mut c = col.clone();
        for _ in 0..r {
            let rc = row
                .iter()
                .zip(&c)
                .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)));
            t.push(f.neg(&rc));
            c = sub.apply(&c);
        }
        // new = Toeplitz(t) * vect
        let mut next = vec![f.zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, v) in vect.iter().enumerate() {
                if i >= j && i - j < t.len() {
                    f.mul_add_assign(slot, &t[i - j], v);
                }
            }
        }
        vect = next;
    }
    // vect holds coefficients from x^n downwards
    vect.reverse();
    Poly::new(f, vect)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_polynomial_basic_cases() {
        let f2 = Field::prime(2).unwrap();
        let z = Matrix::zeros(&f2, 3, 3);
        assert_eq!(minimal_polynomial(&z).unwrap(), Poly::x(&f2));
        let i = Matrix::identity(&f2, 3);
        assert_eq!(
            minimal_polynomial(&i).unwrap(),
            Poly::from_i64(&f2, &[-1, 1])
        );
        // companion matrix of x^2 + x + 1
        let c = Matrix::from_i64(&f2, &[vec![0, 1], vec![1, 1]]);
        assert_eq!(
            minimal_polynomial(&c).unwrap(),
            Poly::from_i64(&f2, &[1, 1, 1])
        );
        assert!(minimal_polynomial(&Matrix::zeros(&f2, 2, 3)).is_err());
    }

    /// Brute-force oracle: smallest-degree monic polynomial over F_2 that
    /// annihilates the matrix, by enumerating all candidates.
    #[test]
    fn minimal_polynomial_matches_enumeration_over_f2() {
        let f2 = Field::prime(2).unwrap();
        let m = Matrix::from_i64(&f2, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 0]]);
        let mut found = None;
        'outer: for d in 1..=3usize {
            for mask in 0..(1u32 << d) {
                let mut c: Vec<i64> = (0..d).map(|i| ((mask >> i) & 1) as i64).collect();
                c.push(1);
                let p = Poly::from_i64(&f2, &c);
                if p.eval_matrix(&m).is_zero() {
                    found = Some(p);
                    break 'outer;
                }
            }
        }
        let mp = minimal_polynomial(&m).unwrap();
        assert_eq!(Some(mp.clone()), found);
        assert!(mp.divides(&characteristic_polynomial(&m)));
    }

    #[test]
    fn charpoly_of_companion() {
        let q = Field::rationals();
        // companion of x^3 - 2x + 5
        let m = Matrix::from_i64(&q, &[vec![0, 0, -5], vec![1, 0, 2], vec![0, 1, 0]]);
        assert_eq!(
            characteristic_polynomial(&m),
            Poly::from_i64(&q, &[5, -2, 0, 1])
        );
    }

    #[test]
    fn gcd_and_ext_gcd() {
        let q = Field::rationals();
        let a = Poly::from_i64(&q, &[-1, 0, 1]); // x^2 - 1
        let b = Poly::from_i64(&q, &[1, 2, 1]); // (x+1)^2
        let g = a.gcd(&b);
        assert_eq!(g, Poly::from_i64(&q, &[1, 1]));
        let (g2, s, t) = a.ext_gcd(&b);
        assert_eq!(g2, g);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }
}
