//! Exact scalar fields: prime fields, small extensions of prime fields, and
//! the rationals.
//!
//! A [`Field`] is a cheap, shareable handle; [`Scalar`] values carry no field
//! pointer and must always be combined through the field that produced them.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};

/// Largest supported extension degree.
pub const MAX_EXTENSION_DEGREE: usize = 8;

/// Description of a field, as it appears in input files.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime {
        p: u64,
    },
    /// `modulus` is monic, little-endian, of length `deg + 1`.
    Extension {
        p: u64,
        modulus: Vec<u64>,
    },
    Rationals,
}

#[derive(Serialize, Deserialize)]
struct FieldSpecJson {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    deg: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    modulus: Option<Vec<u64>>,
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = match self {
            FieldSpec::Prime { p } => FieldSpecJson {
                kind: "prime".into(),
                p: Some(*p),
                deg: None,
                modulus: None,
            },
            FieldSpec::Extension { p, modulus } => FieldSpecJson {
                kind: "extension".into(),
                p: Some(*p),
                deg: Some(modulus.len() - 1),
                modulus: Some(modulus.clone()),
            },
            FieldSpec::Rationals => FieldSpecJson {
                kind: "rationals".into(),
                p: None,
                deg: None,
                modulus: None,
            },
        };
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = FieldSpecJson::deserialize(d)?;
        match raw.kind.as_str() {
            "prime" => Ok(FieldSpec::Prime {
                p: raw.p.ok_or_else(|| D::Error::missing_field("p"))?,
            }),
            "extension" => {
                let p = raw.p.ok_or_else(|| D::Error::missing_field("p"))?;
                let modulus = raw
                    .modulus
                    .ok_or_else(|| D::Error::missing_field("modulus"))?;
                if let Some(deg) = raw.deg {
                    if deg + 1 != modulus.len() {
                        return Err(D::Error::custom(format!(
                            "extension degree {deg} does not match modulus length {}",
                            modulus.len()
                        )));
                    }
                }
                Ok(FieldSpec::Extension { p, modulus })
            }
            "rationals" => Ok(FieldSpec::Rationals),
            other => Err(D::Error::custom(format!("unknown field kind {other:?}"))),
        }
    }
}

/// An element of some [`Field`], in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    /// Residue in `[0, p)`.
    Mod(u64),
    /// Coefficients (little-endian, exactly `deg` entries) modulo the defining polynomial.
    Ext(Vec<u64>),
    /// Reduced fraction with positive denominator.
    Rat(BigRational),
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct Inner {
    spec: FieldSpec,
}

/// Shareable handle to a validated field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= p {
        s.wrapping_sub(p)
    } else {
        s
    }
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let (g, x, _) = egcd(a as i128, p as i128);
    debug_assert_eq!(g, 1);
    Some(x.rem_euclid(p as i128) as u64)
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime_u64(p) {
            return Err(usage!("{p} is not prime"));
        }
        Ok(Field(Arc::new(Inner {
            spec: FieldSpec::Prime { p },
        })))
    }

    /// `modulus` is little-endian and must be monic and irreducible over F_p.
    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Field> {
        let base = Field::prime(p)?;
        let deg = modulus.len().saturating_sub(1);
        if deg == 0 || deg > MAX_EXTENSION_DEGREE {
            return Err(usage!(
                "extension degree must be in 1..={MAX_EXTENSION_DEGREE}, got {deg}"
            ));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(usage!("modulus coefficients must lie in [0, {p})"));
        }
        if modulus[deg] != 1 {
            return Err(usage!("extension modulus must be monic"));
        }
        let poly =
            crate::exact::poly::Poly::new(&base, modulus.iter().map(|&c| Scalar::Mod(c)).collect());
        if !crate::exact::factor::is_irreducible_finite(&poly) {
            return Err(usage!("modulus {modulus:?} is reducible over F_{p}"));
        }
        Ok(Field(Arc::new(Inner {
            spec: FieldSpec::Extension { p, modulus },
        })))
    }

    pub fn rationals() -> Field {
        Field(Arc::new(Inner {
            spec: FieldSpec::Rationals,
        }))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        match spec {
            FieldSpec::Prime { p } => Field::prime(*p),
            FieldSpec::Extension { p, modulus } => Field::extension(*p, modulus.clone()),
            FieldSpec::Rationals => Ok(Field::rationals()),
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn name(&self) -> String {
        match self.spec() {
            FieldSpec::Prime { p } => format!("F_{p}"),
            FieldSpec::Extension { p, modulus } => format!("F_{p}^{}", modulus.len() - 1),
            FieldSpec::Rationals => "Q".to_string(),
        }
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self.spec() {
            FieldSpec::Prime { p } | FieldSpec::Extension { p, .. } => *p,
            FieldSpec::Rationals => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.spec(), FieldSpec::Rationals)
    }

    /// Degree over the prime field (1 for F_p and Q).
    pub fn prime_degree(&self) -> usize {
        match self.spec() {
            FieldSpec::Extension { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    /// Number of elements, `None` for Q.
    pub fn order(&self) -> Option<BigUint> {
        match self.spec() {
            FieldSpec::Rationals => None,
            FieldSpec::Prime { p } => Some(BigUint::from(*p)),
            FieldSpec::Extension { p, modulus } => {
                Some(BigUint::from(*p).pow((modulus.len() - 1) as u32))
            }
        }
    }

    /// Number of elements if it fits in a u64.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().and_then(|o| o.to_u64())
    }

    pub fn zero(&self) -> Scalar {
        match self.spec() {
            FieldSpec::Prime { .. } => Scalar::Mod(0),
            FieldSpec::Extension { modulus, .. } => Scalar::Ext(vec![0; modulus.len() - 1]),
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.spec() {
            FieldSpec::Prime { p } => Scalar::Mod((v as i128).rem_euclid(*p as i128) as u64),
            FieldSpec::Extension { p, modulus } => {
                let mut c = vec![0; modulus.len() - 1];
                c[0] = (v as i128).rem_euclid(*p as i128) as u64;
                Scalar::Ext(c)
            }
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self.spec() {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
            FieldSpec::Prime { p } | FieldSpec::Extension { p, .. } => {
                let r = v
                    .mod_floor(&BigInt::from(*p))
                    .to_u64()
                    .expect("residue fits");
                self.embed_prime(r)
            }
        }
    }

    /// Embed an element of the prime field given as residue.
    pub fn embed_prime(&self, r: u64) -> Scalar {
        match self.spec() {
            FieldSpec::Prime { p } => Scalar::Mod(r % p),
            FieldSpec::Extension { p, modulus } => {
                let mut c = vec![0; modulus.len() - 1];
                c[0] = r % p;
                Scalar::Ext(c)
            }
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(r))),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(x) => *x == 0,
            Scalar::Ext(c) => c.iter().all(|&x| x == 0),
            Scalar::Rat(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(x) => *x == 1,
            Scalar::Ext(c) => c[0] == 1 && c[1..].iter().all(|&x| x == 0),
            Scalar::Rat(q) => q.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.spec(), a, b) {
            (FieldSpec::Prime { p }, Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(add_mod(*x, *y, *p))
            }
            (FieldSpec::Extension { p, .. }, Scalar::Ext(x), Scalar::Ext(y)) => {
                Scalar::Ext(x.iter().zip(y).map(|(&u, &v)| add_mod(u, v, *p)).collect())
            }
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar does not belong to {}", self.name()),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.spec(), a, b) {
            (FieldSpec::Prime { p }, Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(sub_mod(*x, *y, *p))
            }
            (FieldSpec::Extension { p, .. }, Scalar::Ext(x), Scalar::Ext(y)) => {
                Scalar::Ext(x.iter().zip(y).map(|(&u, &v)| sub_mod(u, v, *p)).collect())
            }
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            _ => panic!("scalar does not belong to {}", self.name()),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self.spec(), a) {
            (FieldSpec::Prime { p }, Scalar::Mod(x)) => Scalar::Mod(sub_mod(0, *x, *p)),
            (FieldSpec::Extension { p, .. }, Scalar::Ext(x)) => {
                Scalar::Ext(x.iter().map(|&u| sub_mod(0, u, *p)).collect())
            }
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("scalar does not belong to {}", self.name()),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.spec(), a, b) {
            (FieldSpec::Prime { p }, Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(mul_mod(*x, *y, *p))
            }
            (FieldSpec::Extension { p, modulus }, Scalar::Ext(x), Scalar::Ext(y)) => {
                Scalar::Ext(ext_mul(x, y, modulus, *p))
            }
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar does not belong to {}", self.name()),
        }
    }

    /// `acc += a * b`.
    pub fn mul_add_assign(&self, acc: &mut Scalar, a: &Scalar, b: &Scalar) {
        match (self.spec(), acc, a, b) {
            (FieldSpec::Prime { p }, Scalar::Mod(s), Scalar::Mod(x), Scalar::Mod(y)) => {
                *s = add_mod(*s, mul_mod(*x, *y, *p), *p);
            }
            (FieldSpec::Rationals, Scalar::Rat(s), Scalar::Rat(x), Scalar::Rat(y)) => {
                if !x.is_zero() && !y.is_zero() {
                    *s += x * y;
                }
            }
            (_, acc, a, b) => {
                let t = self.mul(a, b);
                *acc = self.add(acc, &t);
            }
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self.spec(), a) {
            (FieldSpec::Prime { p }, Scalar::Mod(x)) => inv_mod(*x, *p).map(Scalar::Mod),
            (FieldSpec::Extension { .. }, Scalar::Ext(_)) => {
                let e = self.order().expect("finite") - 2u32;
                Some(self.pow(a, &e))
            }
            (FieldSpec::Rationals, Scalar::Rat(x)) => Some(Scalar::Rat(x.recip())),
            _ => panic!("scalar does not belong to {}", self.name()),
        }
    }

    /// Panics on division by zero.
    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let inv = self.inv(b).expect("division by zero");
        self.mul(a, &inv)
    }

    pub fn pow(&self, a: &Scalar, e: &BigUint) -> Scalar {
        let mut result = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = self.mul(&result, &result);
            if e.bit(i) {
                result = self.mul(&result, a);
            }
        }
        result
    }

    pub fn pow_u64(&self, a: &Scalar, e: u64) -> Scalar {
        self.pow(a, &BigUint::from(e))
    }

    /// The unique `p`-th root in a finite field.
    pub fn pth_root(&self, a: &Scalar) -> Scalar {
        let p = self.characteristic();
        assert!(p > 0, "p-th root only exists in positive characteristic");
        let d = self.prime_degree() as u32;
        self.pow(a, &BigUint::from(p).pow(d - 1))
    }

    /// Uniform element of a finite field, or a small fraction in Q.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self.spec() {
            FieldSpec::Prime { p } => Scalar::Mod(rng.gen_range(0..*p)),
            FieldSpec::Extension { p, modulus } => Scalar::Ext(
                (0..modulus.len() - 1)
                    .map(|_| rng.gen_range(0..*p))
                    .collect(),
            ),
            FieldSpec::Rationals => {
                let num: i64 = rng.gen_range(-9..=9);
                let den: i64 = if rng.gen_bool(0.8) {
                    1
                } else {
                    rng.gen_range(1..=4)
                };
                Scalar::Rat(BigRational::new(num.into(), den.into()))
            }
        }
    }

    /// Small random integer, in any field.
    pub fn random_small<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Scalar {
        self.from_i64(rng.gen_range(-bound..=bound))
    }

    /// Enumerate the `index`-th element of a finite field, base-p digits as coefficients.
    pub fn element_at(&self, mut index: u64) -> Scalar {
        match self.spec() {
            FieldSpec::Prime { p } => Scalar::Mod(index % p),
            FieldSpec::Extension { p, modulus } => {
                let mut c = vec![0; modulus.len() - 1];
                for slot in c.iter_mut() {
                    *slot = index % p;
                    index /= p;
                }
                Scalar::Ext(c)
            }
            FieldSpec::Rationals => panic!("Q is not enumerable"),
        }
    }

    /// Canonical text form: residues and fractions as decimals, extension
    /// elements as `[c0,c1,...]` unless they lie in the prime field.
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Mod(x) => x.to_string(),
            Scalar::Ext(c) => {
                if c[1..].iter().all(|&x| x == 0) {
                    c[0].to_string()
                } else {
                    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                    format!("[{}]", parts.join(","))
                }
            }
            Scalar::Rat(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
        }
    }

    /// Inverse of [`Field::format`]; integers and fractions are reduced into the field.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let FieldSpec::Extension { p, modulus } = self.spec() else {
                return Err(usage!(
                    "coefficient vector {t:?} only valid in extension fields"
                ));
            };
            let d = modulus.len() - 1;
            let mut c = vec![0u64; d];
            let parts: Vec<&str> = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            if parts.len() > d {
                return Err(usage!("too many coefficients in {t:?} for degree {d}"));
            }
            for (slot, part) in c.iter_mut().zip(parts) {
                let v: BigInt = part
                    .parse()
                    .map_err(|_| usage!("bad coefficient {part:?}"))?;
                *slot = v.mod_floor(&BigInt::from(*p)).to_u64().expect("residue");
            }
            return Ok(Scalar::Ext(c));
        }
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| usage!("bad scalar {t:?}"))?;
        let den: BigInt = den.parse().map_err(|_| usage!("bad scalar {t:?}"))?;
        if den.is_zero() {
            return Err(usage!("zero denominator in {t:?}"));
        }
        match self.spec() {
            FieldSpec::Rationals => Ok(Scalar::Rat(BigRational::new(num, den))),
            _ => {
                let d = self.from_bigint(&den);
                if self.is_zero(&d) {
                    return Err(usage!("denominator of {t:?} vanishes in {}", self.name()));
                }
                Ok(self.div(&self.from_bigint(&num), &d))
            }
        }
    }

    /// Numerator/denominator for a rational scalar.
    pub fn as_rational<'a>(&self, a: &'a Scalar) -> &'a BigRational {
        match a {
            Scalar::Rat(q) => q,
            _ => panic!("not a rational scalar"),
        }
    }

    /// Absolute size of a rational scalar, used for heuristics only.
    pub fn height(&self, a: &Scalar) -> u64 {
        match a {
            Scalar::Rat(q) => q.numer().abs().bits().max(q.denom().bits()),
            _ => 0,
        }
    }
}

fn ext_mul(x: &[u64], y: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let d = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * d - 1];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            prod[i + j] = add_mod(prod[i + j], mul_mod(a, b, p), p);
        }
    }
    for k in (d..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for (j, &m) in modulus.iter().enumerate().take(d) {
            let idx = k - d + j;
            prod[idx] = sub_mod(prod[idx], mul_mod(c, m, p), p);
        }
        prod[k] = 0;
    }
    prod.truncate(d);
    prod
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn axioms(f: &Field, trials: usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..trials {
            let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
            assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            assert_eq!(
                f.mul(&a, &f.add(&b, &c)),
                f.add(&f.mul(&a, &b), &f.mul(&a, &c))
            );
            assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
            if let Some(ai) = f.inv(&a) {
                assert!(f.is_one(&f.mul(&a, &ai)));
            } else {
                assert!(f.is_zero(&a));
            }
        }
    }

    #[test]
    fn field_axioms_hold_on_random_triples() {
        axioms(&Field::prime(2).unwrap(), 10_000);
        axioms(&Field::prime(5).unwrap(), 10_000);
        axioms(&Field::prime(1_000_000_007).unwrap(), 10_000);
        axioms(&Field::extension(2, vec![1, 1, 1]).unwrap(), 10_000);
        axioms(&Field::extension(3, vec![1, 0, 1]).unwrap(), 10_000);
        axioms(
            &Field::extension(2, vec![1, 1, 0, 1, 1, 0, 0, 0, 1]).unwrap(),
            10_000,
        );
        axioms(&Field::rationals(), 10_000);
    }

    #[test]
    fn rejects_composite_and_reducible() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        // x^2 + 1 = (x+1)^2 over F_2
        assert!(Field::extension(2, vec![1, 0, 1]).is_err());
        // not monic
        assert!(Field::extension(3, vec![1, 0, 2]).is_err());
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn parse_and_format_are_inverse() {
        let q = Field::rationals();
        let x = q.parse("-6/4").unwrap();
        assert_eq!(q.format(&x), "-3/2");
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.parse("1/2").unwrap(), Scalar::Mod(3));
        assert_eq!(f5.parse("-1").unwrap(), Scalar::Mod(4));
        assert!(f5.parse("1/5").is_err());
        let f4 = Field::extension(2, vec![1, 1, 1]).unwrap();
        let t = f4.parse("[0,1]").unwrap();
        assert_eq!(f4.format(&t), "[0,1]");
        // t^2 = t + 1
        assert_eq!(f4.mul(&t, &t), Scalar::Ext(vec![1, 1]));
    }

    #[test]
    fn json_spec_roundtrip() {
        for text in [
            r#"{"kind":"prime","p":5}"#,
            r#"{"kind":"extension","p":2,"deg":2,"modulus":[1,1,1]}"#,
            r#"{"kind":"rationals"}"#,
        ] {
            let spec: FieldSpec = serde_json::from_str(text).unwrap();
            assert_eq!(serde_json::to_string(&spec).unwrap(), text);
        }
    }
}
