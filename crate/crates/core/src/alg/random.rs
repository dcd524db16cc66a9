//! Seeded random algebras for property checks.
//!
//! Every generator returns an algebra in a randomly changed basis so that
//! nothing downstream can rely on the structured basis it was built in.

use rand::Rng;

use crate::alg::structure::StructureAlgebra;
use crate::exact::factor::is_irreducible_finite;
use crate::exact::{Field, Matrix, Poly};

const COEFF_BOUND: i64 = 3;

fn random_scalar<R: Rng>(field: &Field, rng: &mut R) -> crate::exact::Scalar {
    if field.is_finite() {
        field.random(rng)
    } else {
        field.random_small(rng, COEFF_BOUND)
    }
}

/// A random invertible `n x n` matrix.
pub fn random_invertible<R: Rng>(field: &Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| random_scalar(field, rng)).collect())
            .collect();
        let m = Matrix::from_rows(field, rows);
        if n == 0 || !field.is_zero(&m.determinant()) {
            return m;
        }
    }
}

/// A random invertible matrix preserving the even/odd split of `grading`.
pub fn random_homogeneous_invertible<R: Rng>(field: &Field, grading: &[u8], rng: &mut R) -> Matrix {
    let n = grading.len();
    loop {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                if grading[i] == grading[j] {
                    m.set(i, j, random_scalar(field, rng));
                }
            }
        }
        if n == 0 || !field.is_zero(&m.determinant()) {
            return m;
        }
    }
}

fn random_monic<R: Rng>(field: &Field, d: usize, rng: &mut R) -> Poly {
    let mut coeffs: Vec<_> = (0..d).map(|_| random_scalar(field, rng)).collect();
    coeffs.push(field.one());
    Poly::new(field, coeffs)
}

/// `k[x, y]` modulo all monomials outside a staircase; `widths[i]` is the
/// number of allowed powers of `y` next to `x^i` (non-increasing).
pub fn monomial_algebra(field: &Field, widths: &[usize]) -> StructureAlgebra {
    let monos: Vec<(usize, usize)> = widths
        .iter()
        .enumerate()
        .flat_map(|(i, &w)| (0..w).map(move |j| (i, j)))
        .collect();
    let index = |i: usize, j: usize| -> Option<usize> {
        (i < widths.len() && j < widths[i])
            .then(|| monos.iter().position(|&m| m == (i, j)).expect("listed"))
    };
    let n = monos.len();
    let mut unit = vec![field.zero(); n];
    if n > 0 {
        unit[0] = field.one();
    }
    let a = StructureAlgebra::from_fn(field, n, unit, |p, q| {
        let mut v = vec![field.zero(); n];
        let (i, j) = (monos[p].0 + monos[q].0, monos[p].1 + monos[q].1);
        if let Some(k) = index(i, j) {
            v[k] = field.one();
        }
        v
    });
    let labels = monos.iter().map(|&(i, j)| format!("x^{i}y^{j}")).collect();
    a.with_labels(labels).expect("label count")
}

fn random_staircase<R: Rng>(max_dim: usize, rng: &mut R) -> Vec<usize> {
    loop {
        let rows = rng.gen_range(1..=3usize);
        let mut widths = Vec::with_capacity(rows);
        let mut w = rng.gen_range(1..=3usize);
        for _ in 0..rows {
            widths.push(w);
            w = rng.gen_range(1..=w);
        }
        let total: usize = widths.iter().sum();
        if total <= max_dim {
            return widths;
        }
    }
}

fn random_structured<R: Rng>(field: &Field, max_dim: usize, rng: &mut R) -> StructureAlgebra {
    let choice = if max_dim >= 2 { rng.gen_range(0..4) } else { 0 };
    match choice {
        1 => {
            let d1 = rng.gen_range(1..max_dim);
            let a = random_structured(field, d1, rng);
            let b = random_structured(field, max_dim - a.dim(), rng);
            a.direct_product(&b).expect("same field")
        }
        2 => {
            let a = random_structured(field, max_dim / 2, rng);
            let b = random_structured(field, max_dim / a.dim(), rng);
            a.tensor_product(&b).expect("same field")
        }
        3 => monomial_algebra(field, &random_staircase(max_dim, rng)),
        _ => {
            let d = rng.gen_range(1..=max_dim);
            StructureAlgebra::from_polynomial(&random_monic(field, d, rng))
                .expect("nonzero polynomial")
        }
    }
}

/// A random commutative algebra of dimension `1..=max_dim`: quotients of
/// `k[x]`, monomial algebras in two variables, and products and tensor
/// products of those.
pub fn random_commutative<R: Rng>(field: &Field, max_dim: usize, rng: &mut R) -> StructureAlgebra {
    let a = random_structured(field, max_dim.max(1), rng);
    let p = random_invertible(field, a.dim(), rng);
    a.change_basis(&p).expect("invertible")
}

/// A random monic irreducible polynomial of degree `d` over a finite field.
pub fn random_irreducible<R: Rng>(field: &Field, d: usize, rng: &mut R) -> Poly {
    loop {
        let f = random_monic(field, d, rng);
        if is_irreducible_finite(&f) {
            return f;
        }
    }
}

/// A random étale algebra over a finite field: a product of fields of
/// degree 1, 2 or 3 with total dimension `1..=max_dim`.
pub fn random_etale<R: Rng>(field: &Field, max_dim: usize, rng: &mut R) -> StructureAlgebra {
    let target = rng.gen_range(1..=max_dim.max(1));
    let mut a = StructureAlgebra::zero(field);
    while a.dim() < target {
        let d = rng.gen_range(1..=3usize.min(target - a.dim()));
        let factor =
            StructureAlgebra::from_polynomial(&random_irreducible(field, d, rng)).expect("nonzero");
        a = a.direct_product(&factor).expect("same field");
    }
    let p = random_invertible(field, a.dim(), rng);
    a.change_basis(&p).expect("invertible")
}

/// Exterior algebra on `r` odd generators.
pub fn exterior_algebra(field: &Field, r: usize) -> StructureAlgebra {
    let n = 1usize << r;
    let mut unit = vec![field.zero(); n];
    unit[0] = field.one();
    let a = StructureAlgebra::from_fn(field, n, unit, |s, t| {
        let mut v = vec![field.zero(); n];
        if s & t == 0 {
            // sign of merging the ordered generator sets s and t
            let mut swaps = 0;
            for i in 0..r {
                if t >> i & 1 == 1 {
                    swaps += (s >> (i + 1)).count_ones();
                }
            }
            v[s | t] = if swaps % 2 == 0 {
                field.one()
            } else {
                field.from_i64(-1)
            };
        }
        v
    });
    let grading = (0..n).map(|s| (s.count_ones() % 2) as u8).collect();
    a.with_grading(grading).expect("grading length")
}

/// `C ⋉ C·θ` with `θ` odd and `θ² = 0`: even part `C`, odd part a free
/// rank-one `C`-module with zero product.
pub fn odd_square_zero_extension(c: &StructureAlgebra) -> StructureAlgebra {
    let f = c.field();
    let m = c.dim();
    let n = 2 * m;
    let mut unit = c.unit().clone();
    unit.extend(vec![f.zero(); m]);
    let a = StructureAlgebra::from_fn(f, n, unit, |i, j| {
        let mut v = vec![f.zero(); n];
        if i >= m && j >= m {
            return v;
        }
        let prod = c.mul(&c.basis(i % m), &c.basis(j % m));
        let offset = if i >= m || j >= m { m } else { 0 };
        for (k, x) in prod.into_iter().enumerate() {
            v[offset + k] = x;
        }
        v
    });
    let grading = (0..n).map(|i| u8::from(i >= m)).collect();
    a.with_grading(grading).expect("grading length")
}

/// `k[θ]/(θ² - c)` with `θ` odd; graded-commutative only in characteristic 2.
pub fn odd_quadratic(field: &Field, c: crate::exact::Scalar) -> StructureAlgebra {
    let unit = vec![field.one(), field.zero()];
    let a = StructureAlgebra::from_fn(field, 2, unit, |i, j| match (i, j) {
        (1, 1) => vec![c.clone(), field.zero()],
        (0, k) | (k, 0) => {
            let mut v = vec![field.zero(); 2];
            v[k] = field.one();
            v
        }
        _ => unreachable!(),
    });
    a.with_grading(vec![0, 1]).expect("grading length")
}

fn even(c: StructureAlgebra) -> StructureAlgebra {
    let n = c.dim();
    c.with_grading(vec![0; n]).expect("grading length")
}

/// A random graded-commutative algebra with nonzero odd part, dimension at
/// most `max_dim` (at least 2), in a random homogeneous basis.
pub fn random_graded<R: Rng>(field: &Field, max_dim: usize, rng: &mut R) -> StructureAlgebra {
    let max_dim = max_dim.max(2);
    let kinds = if field.characteristic() == 2 { 3 } else { 2 };
    let a = match rng.gen_range(0..kinds) {
        0 => {
            let r = if max_dim >= 4 && rng.gen_bool(0.3) {
                2
            } else {
                1
            };
            let ext = exterior_algebra(field, r);
            let c = random_commutative(field, max_dim >> r, rng);
            even(c).tensor_product(&ext).expect("same field")
        }
        1 => odd_square_zero_extension(&random_commutative(field, max_dim / 2, rng)),
        _ => {
            let c = random_commutative(field, max_dim / 2, rng);
            let q = odd_quadratic(field, random_scalar(field, rng));
            even(c).tensor_product(&q).expect("same field")
        }
    };
    let grading = a.grading().expect("graded").to_vec();
    let p = random_homogeneous_invertible(field, &grading, rng);
    a.change_basis(&p).expect("invertible")
}
