//! Elements of the cyclotomic field Q(zeta_N).
//!
//! An element is stored as its coordinates in the power basis
//! `1, z, ..., z^(phi(N)-1)` after reduction modulo the N-th cyclotomic
//! polynomial, so two elements are equal exactly when their coordinate
//! vectors are equal.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::divisors;
use crate::error::{Error, Result};

struct FieldData {
    order: usize,
    phi: usize,
    /// Coefficients of Phi_N, ascending, length phi + 1, monic.
    modulus: Vec<BigRational>,
}

/// Handle to Q(zeta_N). Cheap to clone; equal handles have equal order.
#[derive(Clone)]
pub struct CycField(Arc<FieldData>);

fn field_cache() -> &'static Mutex<HashMap<usize, CycField>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, CycField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The N-th cyclotomic polynomial with integer coefficients, ascending.
pub fn cyclotomic_poly(n: usize) -> Vec<BigInt> {
    assert!(n > 0, "cyclotomic_poly: order must be positive");
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = BigInt::from(-1);
    num[n] = BigInt::one();
    for d in divisors(n as u64) {
        let d = d as usize;
        if d == n {
            continue;
        }
        num = exact_div_monic(&num, &cyclotomic_poly_cached(d));
    }
    num
}

fn cyclotomic_poly_cached(n: usize) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let p = cyclotomic_poly(n);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

impl CycField {
    /// Returns the (cached) field Q(zeta_order).
    pub fn new(order: usize) -> Result<CycField> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        if let Some(f) = field_cache().lock().unwrap().get(&order) {
            return Ok(f.clone());
        }
        let modulus: Vec<BigRational> = cyclotomic_poly_cached(order)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let field = CycField(Arc::new(FieldData {
            order,
            phi: modulus.len() - 1,
            modulus,
        }));
        field_cache()
            .lock()
            .unwrap()
            .insert(order, field.clone());
        Ok(field)
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    /// Degree of the field over Q, i.e. phi(N).
    pub fn degree(&self) -> usize {
        self.0.phi
    }

    pub fn zero(&self) -> CycQ {
        CycQ {
            field: self.clone(),
            coeffs: vec![BigRational::zero(); self.0.phi],
        }
    }

    pub fn one(&self) -> CycQ {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, value: i64) -> CycQ {
        self.from_rational(BigRational::from_integer(value.into()))
    }

    pub fn from_rational(&self, value: BigRational) -> CycQ {
        let mut x = self.zero();
        x.coeffs[0] = value;
        x
    }

    /// zeta_N^k for any integer k.
    pub fn zeta_pow(&self, k: i64) -> CycQ {
        let n = self.0.order as i64;
        let k = k.rem_euclid(n) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        self.reduce(raw)
    }

    /// Reduces a raw coefficient vector (a polynomial in zeta) modulo Phi_N.
    pub fn reduce(&self, mut raw: Vec<BigRational>) -> CycQ {
        let phi = self.0.phi;
        let modulus = &self.0.modulus;
        for i in (phi..raw.len()).rev() {
            let c = std::mem::replace(&mut raw[i], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for (j, mj) in modulus[..phi].iter().enumerate() {
                if !mj.is_zero() {
                    raw[i - phi + j] -= &c * mj;
                }
            }
        }
        raw.resize(phi, BigRational::zero());
        CycQ {
            field: self.clone(),
            coeffs: raw,
        }
    }
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.0.order == other.0.order
    }
}

impl Eq for CycField {}

impl Hash for CycField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.order.hash(state);
    }
}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.0.order)
    }
}

/// Reduces `raw_coeffs`, read as a polynomial in zeta_N, to canonical form.
pub fn cyclo_reduce(raw_coeffs: &[BigRational], order: usize) -> Result<CycQ> {
    Ok(CycField::new(order)?.reduce(raw_coeffs.to_vec()))
}

/// An element of Q(zeta_N) in reduced power-basis form.
#[derive(Clone)]
pub struct CycQ {
    field: CycField,
    coeffs: Vec<BigRational>,
}

impl CycQ {
    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.field.order()
    }

    /// Coordinates in the basis `1, z, ..., z^(phi-1)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if this element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same(&self, other: &CycQ) {
        assert!(
            self.field == other.field,
            "mixing elements of Q(zeta_{}) and Q(zeta_{})",
            self.order(),
            other.order()
        );
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<CycQ> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(self.field.from_rational(q.recip()));
        }
        let s = qpoly::inverse_mod(&self.coeffs, &self.field.0.modulus)?;
        Some(self.field.reduce(s))
    }

    pub fn pow(&self, mut exp: u64) -> CycQ {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> CycQ {
        CycQ {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplicative order if this element is a root of unity.
    ///
    /// Roots of unity in Q(zeta_N) have order dividing N for even N and 2N
    /// for odd N, so it suffices to test those divisors by exact powering.
    pub fn root_of_unity_order(&self) -> Result<Option<u64>> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.order() as u64;
        let bound = if n % 2 == 0 { n } else { 2 * n };
        if !self.pow(bound).is_one() {
            return Ok(None);
        }
        Ok(divisors(bound).into_iter().find(|&d| self.pow(d).is_one()))
    }
}

/// Free-function form of [`CycQ::root_of_unity_order`].
pub fn root_of_unity_order(a: &CycQ) -> Result<Option<u64>> {
    a.root_of_unity_order()
}

impl PartialEq for CycQ {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for CycQ {}

impl Hash for CycQ {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Display for CycQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Serialized as its display string, e.g. `"1/2 - z^3"`.
impl serde::Serialize for CycQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for CycQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [N={}]", self, self.order())
    }
}

impl<'a> Add<&'a CycQ> for &'a CycQ {
    type Output = CycQ;
    fn add(self, rhs: &'a CycQ) -> CycQ {
        self.check_same(rhs);
        CycQ {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CycQ> for &'a CycQ {
    type Output = CycQ;
    fn sub(self, rhs: &'a CycQ) -> CycQ {
        self.check_same(rhs);
        CycQ {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a CycQ> for &'a CycQ {
    type Output = CycQ;
    fn mul(self, rhs: &'a CycQ) -> CycQ {
        self.check_same(rhs);
        let phi = self.coeffs.len();
        if phi == 1 {
            return CycQ {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let mut raw = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        self.field.reduce(raw)
    }
}

impl Neg for &CycQ {
    type Output = CycQ;
    fn neg(self) -> CycQ {
        CycQ {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Neg for CycQ {
    type Output = CycQ;
    fn neg(self) -> CycQ {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycQ> for CycQ {
            type Output = CycQ;
            fn $m(self, rhs: CycQ) -> CycQ {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycQ> for CycQ {
            type Output = CycQ;
            fn $m(self, rhs: &'a CycQ) -> CycQ {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&CycQ> for CycQ {
    fn add_assign(&mut self, rhs: &CycQ) {
        self.check_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&CycQ> for CycQ {
    fn sub_assign(&mut self, rhs: &CycQ) {
        self.check_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

/// Dense polynomials over Q, used only for inversion modulo Phi_N.
mod qpoly {
    use num_rational::BigRational;
    use num_traits::Zero;

    fn trim(p: &mut Vec<BigRational>) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = a.to_vec();
        trim(&mut rem);
        let db = b.len() - 1;
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let lead_inv = b[db].recip();
        let mut quot = vec![BigRational::zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + db] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
            quot[i] = c;
        }
        rem.truncate(db);
        trim(&mut rem);
        (quot, rem)
    }

    fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let mut out: Vec<BigRational> = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
                match b.get(i) {
                    Some(y) => x - y,
                    None => x,
                }
            })
            .collect();
        trim(&mut out);
        out
    }

    /// `s` with `s * a = 1 (mod m)`, or `None` if `gcd(a, m) != 1`.
    pub fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
        let mut r0 = m.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r1);
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1 = vec![BigRational::from_integer(1.into())];
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].recip();
        Some(s0.into_iter().map(|x| x * &c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |n| -> Vec<i64> {
            cyclotomic_poly(n)
                .iter()
                .map(|c| i64::try_from(c).unwrap())
                .collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        // first order with a coefficient outside {-1, 0, 1}
        assert!(as_i64(105).contains(&-2));
    }

    #[test]
    fn reduce_examples() {
        // z_4^2 = -1
        let a = cyclo_reduce(&ints(&[0, 0, 1]), 4).unwrap();
        assert_eq!(a.coeffs(), &ints(&[-1, 0])[..]);
        // z_3^2 = -1 - z_3
        let b = cyclo_reduce(&ints(&[0, 0, 1]), 3).unwrap();
        assert_eq!(b.coeffs(), &ints(&[-1, -1])[..]);
        // constants in Q are untouched
        let c = cyclo_reduce(&[q(7, 2)], 1).unwrap();
        assert_eq!(c.coeffs(), &[q(7, 2)][..]);
        assert_eq!(cyclo_reduce(&[q(1, 1)], 0).unwrap_err(), Error::ZeroOrder);
    }

    #[test]
    fn zeta_powers_wrap() {
        let f = CycField::new(5).unwrap();
        assert!(f.zeta_pow(5).is_one());
        assert_eq!(f.zeta_pow(-1), f.zeta_pow(4));
        assert_eq!(&f.zeta_pow(2) * &f.zeta_pow(4), f.zeta_pow(1));
    }

    #[test]
    fn roots_of_unity() {
        let f1 = CycField::new(1).unwrap();
        assert_eq!(f1.from_int(-1).root_of_unity_order().unwrap(), Some(2));
        assert_eq!(f1.from_int(2).root_of_unity_order().unwrap(), None);
        assert_eq!(f1.one().root_of_unity_order().unwrap(), Some(1));
        assert!(f1.zero().root_of_unity_order().is_err());
        let f5 = CycField::new(5).unwrap();
        assert_eq!(f5.zeta_pow(1).root_of_unity_order().unwrap(), Some(5));
        // -z_5 has order 10 in Q(zeta_5)
        assert_eq!((-f5.zeta_pow(1)).root_of_unity_order().unwrap(), Some(10));
        let f4 = CycField::new(4).unwrap();
        assert_eq!(f4.zeta_pow(1).root_of_unity_order().unwrap(), Some(4));
        // (1 + i)/sqrt(2) is not in Q(i); 1 + i is not a root of unity
        let one_plus_i = &f4.one() + &f4.zeta_pow(1);
        assert_eq!(one_plus_i.root_of_unity_order().unwrap(), None);
    }

    #[test]
    fn display_forms() {
        let f3 = CycField::new(3).unwrap();
        assert_eq!(f3.zeta_pow(2).to_string(), "-1 - z");
        assert_eq!(f3.zero().to_string(), "0");
        let f1 = CycField::new(1).unwrap();
        assert_eq!(f1.from_rational(q(-7, 2)).to_string(), "-7/2");
    }

    fn arb_elem(order: usize) -> impl Strategy<Value = CycQ> {
        let phi = CycField::new(order).unwrap().degree();
        proptest::collection::vec((-6i64..=6, 1i64..=4), phi).prop_map(move |v| {
            let raw = v.into_iter().map(|(n, d)| q(n, d)).collect::<Vec<_>>();
            cyclo_reduce(&raw, order).unwrap()
        })
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in prop::sample::select(vec![1usize, 3, 4, 5, 8, 12])
            .prop_flat_map(|o| (arb_elem(o), arb_elem(o), arb_elem(o)))) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            match a.inv() {
                Some(ai) => prop_assert!((&a * &ai).is_one()),
                None => prop_assert!(a.is_zero()),
            }
        }
    }
}
