//! Primitive idempotent decomposition of commutative algebras.

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::alg::structure::{StructureAlgebra, Vector};
use crate::config::Config;
use crate::error::{capacity, internal, usage, Result};
use crate::exact::matrix::DependencyFinder;
use crate::exact::{factor_polynomial, Echelon, Matrix, Poly, Scalar};

/// Complete set of primitive orthogonal idempotents, sorted by coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentDecomposition {
    pub idempotents: Vec<Vector>,
}

impl IdempotentDecomposition {
    pub fn len(&self) -> usize {
        self.idempotents.len()
    }
    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }
}

/// Minimal polynomial of `x` inside the algebra `one · A`, where `one` is an
/// idempotent acting as identity on `x`.
pub fn element_minimal_polynomial(a: &StructureAlgebra, x: &[Scalar], one: &[Scalar]) -> Poly {
    let f = a.field();
    let mut finder = DependencyFinder::new(f);
    let mut power = one.to_vec();
    loop {
        if let Some(rel) = finder.push(&power) {
            let mut coeffs: Vec<Scalar> = rel.iter().map(|c| f.neg(c)).collect();
            coeffs.push(f.one());
            return Poly::new(f, coeffs);
        }
        power = a.mul(&power, x);
    }
}

/// The nilradical: iterated Frobenius kernel in characteristic p, trace-form
/// radical in characteristic 0.
pub fn nilradical(a: &StructureAlgebra) -> Echelon {
    let f = a.field();
    let n = a.dim();
    if f.characteristic() == 0 {
        let kernel = a.trace_form().kernel();
        return Echelon::from_vectors(f, n, &kernel);
    }
    let q: BigUint = f.order().expect("finite field");
    let cols: Vec<Vector> = (0..n).map(|i| a.pow(&a.basis(i), &q)).collect();
    let frob = Matrix::from_columns(f, n, &cols);
    let mut power = frob.clone();
    let mut kernel = power.kernel();
    loop {
        power = power.mul(&frob);
        let next = power.kernel();
        if next.len() == kernel.len() {
            return Echelon::from_vectors(f, n, &kernel);
        }
        kernel = next;
    }
}

/// CRT idempotents of `x` inside `one · A` from a squarefree factorization of
/// its minimal polynomial; a single entry means no split.
fn split_by_element(
    a: &StructureAlgebra,
    x: &[Scalar],
    one: &[Scalar],
    cfg: &Config,
) -> Result<(Poly, Vec<Vector>)> {
    let m = element_minimal_polynomial(a, x, one);
    split_with_polynomial(a, x, one, m, cfg)
}

fn split_with_polynomial(
    a: &StructureAlgebra,
    x: &[Scalar],
    one: &[Scalar],
    m: Poly,
    cfg: &Config,
) -> Result<(Poly, Vec<Vector>)> {
    let fac = factor_polynomial(&m, &cfg.factor())?;
    if fac.factors.iter().any(|(_, e)| *e > 1) {
        return Err(internal!(
            "minimal polynomial in a reduced algebra is not squarefree"
        ));
    }
    if fac.factors.len() == 1 {
        return Ok((m, vec![one.to_vec()]));
    }
    let mut out = Vec::new();
    for (mi, _) in &fac.factors {
        let cofactor = m.exact_div(mi);
        let (g, s, _) = cofactor.ext_gcd(mi);
        if !g.is_one() {
            return Err(internal!(
                "factors of a squarefree polynomial are not coprime"
            ));
        }
        let poly = cofactor.mul(&s).rem(&m);
        out.push(a.eval_poly(&poly, x, one));
    }
    Ok((m, out))
}

/// Idempotents of a reduced algebra over a finite field via the fixed
/// subalgebra of Frobenius.
fn reduced_idempotents_finite(r: &StructureAlgebra, cfg: &Config) -> Result<Vec<Vector>> {
    let f = r.field();
    let n = r.dim();
    let q: BigUint = f.order().expect("finite field");
    let cols: Vec<Vector> = (0..n)
        .map(|i| r.sub(&r.pow(&r.basis(i), &q), &r.basis(i)))
        .collect();
    let fixed = Matrix::from_columns(f, n, &cols).kernel();
    let target = fixed.len();
    let mut current = vec![r.unit().clone()];
    for s in &fixed {
        if current.len() == target {
            break;
        }
        let mut next = Vec::new();
        for g in &current {
            let x = r.mul(g, s);
            next.extend(split_by_element(r, &x, g, cfg)?.1);
        }
        current = next;
    }
    if current.len() != target {
        return Err(internal!(
            "Frobenius-fixed subalgebra has dimension {target} but {} idempotents were found",
            current.len()
        ));
    }
    Ok(current)
}

/// Idempotents of a reduced algebra in characteristic 0, by splitting along
/// minimal polynomials of the basis vectors and then of seeded random
/// elements. Candidates whose minimal polynomial is too long to factor are
/// skipped.
fn reduced_idempotents_char0(r: &StructureAlgebra, cfg: &Config) -> Result<Vec<Vector>> {
    const ATTEMPTS: usize = 64;
    let f = r.field();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut done = Vec::new();
    let mut pending = vec![r.unit().clone()];
    while let Some(g) = pending.pop() {
        let (_, _, ech) = r.corner(&g)?;
        let comp_dim = ech.rank();
        let mut settled = false;
        let mut too_long = false;
        for attempt in 0..r.dim() + ATTEMPTS {
            let x = if attempt < r.dim() {
                r.mul(&g, &r.basis(attempt))
            } else {
                let bound = 3 + (attempt - r.dim()) as i64;
                let v: Vector = (0..r.dim())
                    .map(|_| f.random_small(&mut rng, bound))
                    .collect();
                r.mul(&g, &v)
            };
            let m = element_minimal_polynomial(r, &x, &g);
            if m.deg() > cfg.max_rational_degree {
                too_long = true;
                continue;
            }
            let (m, parts) = split_with_polynomial(r, &x, &g, m, cfg)?;
            if parts.len() > 1 {
                pending.extend(parts);
                settled = true;
                break;
            }
            if m.deg() == comp_dim {
                done.push(g.clone());
                settled = true;
                break;
            }
        }
        if !settled && too_long {
            return Err(capacity!(
                "splitting a {comp_dim}-dimensional component needs factoring beyond degree {}",
                cfg.max_rational_degree
            ));
        }
        if !settled {
            return Err(internal!(
                "no primitive element found for a {comp_dim}-dimensional component"
            ));
        }
    }
    Ok(done)
}

/// Complete set of primitive orthogonal idempotents of a commutative algebra.
pub fn primitive_idempotents(
    a: &StructureAlgebra,
    cfg: &Config,
) -> Result<IdempotentDecomposition> {
    if a.is_graded() && a.field().characteristic() != 2 && (0..a.dim()).any(|i| a.parity(i) == 1) {
        return Err(usage!(
            "idempotent decomposition expects an ungraded commutative algebra"
        ));
    }
    a.ensure_commutative()?;
    if a.is_zero_algebra() {
        return Ok(IdempotentDecomposition {
            idempotents: Vec::new(),
        });
    }
    let f = a.field();
    let nil = nilradical(a);
    let (r, _) = a.quotient(&nil);
    let reduced = if f.characteristic() == 0 {
        reduced_idempotents_char0(&r, cfg)?
    } else {
        reduced_idempotents_finite(&r, cfg)?
    };
    let free = nil.free_columns();
    let lift = |v: &Vector| -> Vector {
        let mut out = a.zero_vec();
        for (c, x) in free.iter().zip(v) {
            out[*c] = x.clone();
        }
        out
    };
    let three = f.from_i64(3);
    let two = f.from_i64(2);
    let mut idempotents = Vec::with_capacity(reduced.len());
    for eps in &reduced {
        let mut e = lift(eps);
        let mut steps = 0;
        loop {
            let e2 = a.mul(&e, &e);
            if e2 == e {
                break;
            }
            let e3 = a.mul(&e2, &e);
            e = a.sub(&a.scale(&three, &e2), &a.scale(&two, &e3));
            steps += 1;
            if steps > 64 {
                return Err(internal!("idempotent lifting did not converge"));
            }
        }
        idempotents.push(e);
    }
    idempotents.sort();
    check_decomposition(a, &idempotents)?;
    Ok(IdempotentDecomposition { idempotents })
}

fn check_decomposition(a: &StructureAlgebra, es: &[Vector]) -> Result<()> {
    let mut sum = a.zero_vec();
    for (i, e) in es.iter().enumerate() {
        if a.is_zero(e) {
            return Err(internal!("zero idempotent in decomposition"));
        }
        for other in &es[i + 1..] {
            if !a.is_zero(&a.mul(e, other)) {
                return Err(internal!("idempotents are not orthogonal"));
            }
        }
        sum = a.add(&sum, e);
    }
    if sum != *a.unit() {
        return Err(internal!("idempotents do not sum to the unit"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Field;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn f3_x2_minus_1_splits_into_two() {
        let f = Field::prime(3).unwrap();
        let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[-1, 0, 1])).unwrap();
        let d = primitive_idempotents(&a, &cfg()).unwrap();
        let expected: Vec<Vector> = vec![
            vec![f.from_i64(2), f.from_i64(1)],
            vec![f.from_i64(2), f.from_i64(2)],
        ];
        assert_eq!(d.idempotents, expected);
    }

    #[test]
    fn local_algebra_is_connected() {
        let f = Field::prime(2).unwrap();
        let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[0, 0, 1])).unwrap();
        let d = primitive_idempotents(&a, &cfg()).unwrap();
        assert_eq!(d.idempotents, vec![a.unit().clone()]);
    }

    #[test]
    fn f4_tensor_f4_has_two_factors() {
        let f = Field::prime(2).unwrap();
        let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[1, 1, 1])).unwrap();
        let t = a.tensor_product(&a).unwrap();
        assert_eq!(primitive_idempotents(&t, &cfg()).unwrap().len(), 2);
    }

    #[test]
    fn lifting_through_nilpotents() {
        // F5[x]/(x^2 (x-1)^2): two factors, each with nilpotents
        let f = Field::prime(5).unwrap();
        let p = Poly::from_i64(&f, &[0, 0, 1]).mul(&Poly::from_i64(&f, &[1, -2, 1]));
        let a = StructureAlgebra::from_polynomial(&p).unwrap();
        assert_eq!(nilradical(&a).rank(), 2);
        assert_eq!(primitive_idempotents(&a, &cfg()).unwrap().len(), 2);
    }

    #[test]
    fn rational_split_and_field_components() {
        let q = Field::rationals();
        // Q[x]/((x^2 - 2)(x - 1)^2 (x + 3))
        let p = Poly::from_i64(&q, &[-2, 0, 1])
            .mul(&Poly::from_i64(&q, &[1, -2, 1]))
            .mul(&Poly::from_i64(&q, &[3, 1]));
        let a = StructureAlgebra::from_polynomial(&p).unwrap();
        let d = primitive_idempotents(&a, &cfg()).unwrap();
        assert_eq!(d.len(), 3);
        let s = StructureAlgebra::split(&q, 5);
        assert_eq!(primitive_idempotents(&s, &cfg()).unwrap().len(), 5);
    }
}
