//! Splitting off a retract of a separable algebra.

use crate::alg::idempotents::primitive_idempotents;
use crate::alg::separable::separability_idempotent;
use crate::alg::structure::{is_algebra_map, StructureAlgebra, Vector};
use crate::config::Config;
use crate::error::{internal, usage, Result};
use crate::exact::Matrix;

/// `b ≅ a × complement`, with `g` restricting to an isomorphism `e b -> a`.
#[derive(Clone, Debug)]
pub struct Retraction {
    pub idempotent: Vector,
    pub complement: StructureAlgebra,
    /// Columns are the complement's basis in `b` coordinates.
    pub inclusion: Matrix,
}

/// Given algebra maps `f: a -> b` and `g: b -> a` with `g f = id`, find the
/// idempotent `e` of `b` with `g(e) = 1` and return `(1 - e) b`.
pub fn split_retraction(
    b: &StructureAlgebra,
    a: &StructureAlgebra,
    g: &Matrix,
    f: &Matrix,
    cfg: &Config,
) -> Result<Retraction> {
    if g.rows() != a.dim() || g.cols() != b.dim() || f.rows() != b.dim() || f.cols() != a.dim() {
        return Err(usage!("retraction matrices have the wrong shape"));
    }
    if !is_algebra_map(b, a, g) || !is_algebra_map(a, b, f) {
        return Err(usage!("retraction data are not algebra maps"));
    }
    if a.dim() > 0 && !g.mul(f).is_identity() {
        return Err(usage!("g ∘ f is not the identity"));
    }
    if separability_idempotent(b)?.is_none() {
        return Err(usage!("split retraction needs a separable algebra"));
    }
    let comps = primitive_idempotents(b, cfg)?;
    let mut e = b.zero_vec();
    for p in &comps.idempotents {
        if !a.is_zero(&g.apply(p)) {
            e = b.add(&e, p);
        }
    }
    if g.apply(&e) != *a.unit() {
        return Err(internal!("no idempotent maps to the unit"));
    }
    let (eb, incl, _) = b.corner(&e)?;
    if eb.dim() != a.dim() || g.mul(&incl).rank() != a.dim() {
        return Err(internal!("g does not restrict to an isomorphism on e·b"));
    }
    let one_minus_e = b.sub(b.unit(), &e);
    let (complement, inclusion, _) = b.corner(&one_minus_e)?;
    Ok(Retraction {
        idempotent: e,
        complement,
        inclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Field, Poly};

    #[test]
    fn projection_off_k_times_k() {
        let f = Field::prime(3).unwrap();
        let b = StructureAlgebra::split(&f, 2);
        let a = StructureAlgebra::ground(&f);
        let g = Matrix::from_i64(&f, &[vec![1, 0]]);
        let s = Matrix::from_i64(&f, &[vec![1], vec![1]]);
        let r = split_retraction(&b, &a, &g, &s, &Config::default()).unwrap();
        assert_eq!(r.complement.dim(), 1);
        assert_eq!(r.idempotent, vec![f.one(), f.zero()]);
    }

    #[test]
    fn identity_leaves_nothing() {
        let f = Field::prime(2).unwrap();
        let a = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[1, 1, 1])).unwrap();
        let id = Matrix::identity(&f, 2);
        let r = split_retraction(&a, &a, &id, &id, &Config::default()).unwrap();
        assert!(r.complement.is_zero_algebra());
    }

    #[test]
    fn f4_times_f2_onto_f2() {
        let f = Field::prime(2).unwrap();
        let f4 = StructureAlgebra::from_polynomial(&Poly::from_i64(&f, &[1, 1, 1])).unwrap();
        let b = f4.direct_product(&StructureAlgebra::ground(&f)).unwrap();
        let a = StructureAlgebra::ground(&f);
        let g = Matrix::from_i64(&f, &[vec![0, 0, 1]]);
        let s = Matrix::from_i64(&f, &[vec![1], vec![0], vec![1]]);
        let r = split_retraction(&b, &a, &g, &s, &Config::default()).unwrap();
        assert_eq!(r.complement.dim(), 2);
        assert!(
            primitive_idempotents(&r.complement, &Config::default())
                .unwrap()
                .len()
                == 1
        );
    }

    #[test]
    fn non_retraction_is_rejected() {
        let f = Field::prime(2).unwrap();
        let b = StructureAlgebra::split(&f, 2);
        let g = Matrix::from_i64(&f, &[vec![1, 0], vec![0, 1]]);
        let swap = Matrix::from_i64(&f, &[vec![0, 1], vec![1, 0]]);
        let e = split_retraction(&b, &b, &g, &swap, &Config::default()).unwrap_err();
        assert_eq!(e.exit_code(), 1);
    }
}
