//! Univariate polynomials over Q(zeta_N) and the monic characteristic
//! polynomial type.

use std::fmt;

use super::cyclo::{CycField, CycQ};
use crate::error::{Error, Result};

/// Dense polynomial over Q(zeta_N), ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycPoly {
    field: CycField,
    coeffs: Vec<CycQ>,
}

impl CycPoly {
    pub fn new(field: &CycField, mut coeffs: Vec<CycQ>) -> CycPoly {
        while coeffs.last().is_some_and(CycQ::is_zero) {
            coeffs.pop();
        }
        CycPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &CycField) -> CycPoly {
        CycPoly::new(field, Vec::new())
    }

    pub fn constant(c: CycQ) -> CycPoly {
        let field = c.field().clone();
        CycPoly::new(&field, vec![c])
    }

    /// The monomial x^k.
    pub fn x_pow(field: &CycField, k: usize) -> CycPoly {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = field.one();
        CycPoly::new(field, coeffs)
    }

    /// Embeds an integer polynomial (ascending coefficients).
    pub fn from_ints<I: Into<num_bigint::BigInt> + Clone>(field: &CycField, ints: &[I]) -> CycPoly {
        let coeffs = ints
            .iter()
            .map(|c| field.from_rational(num_rational::BigRational::from_integer(c.clone().into())))
            .collect();
        CycPoly::new(field, coeffs)
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn coeffs(&self) -> &[CycQ] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> CycQ {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&CycQ> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &CycPoly) -> CycPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        CycPoly::new(&self.field, coeffs)
    }

    pub fn sub(&self, other: &CycPoly) -> CycPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        CycPoly::new(&self.field, coeffs)
    }

    pub fn mul(&self, other: &CycPoly) -> CycPoly {
        if self.is_zero() || other.is_zero() {
            return CycPoly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        CycPoly::new(&self.field, out)
    }

    pub fn scale(&self, c: &CycQ) -> CycPoly {
        CycPoly::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn divrem(&self, divisor: &CycPoly) -> Result<(CycPoly, CycPoly)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let lead_inv = lead.inv().ok_or(Error::DivisionByZero)?;
        let db = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((CycPoly::zero(&self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + db] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in divisor.coeffs.iter().enumerate() {
                if !bj.is_zero() {
                    rem[i + j] -= &(&c * bj);
                }
            }
            quot[i] = c;
        }
        rem.truncate(db);
        Ok((CycPoly::new(&self.field, quot), CycPoly::new(&self.field, rem)))
    }

    pub fn rem(&self, divisor: &CycPoly) -> Result<CycPoly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Scales to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> CycPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &CycPoly) -> CycPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("divisor is nonzero");
            a = std::mem::replace(&mut b, r.monic());
        }
        a.monic()
    }

    pub fn derivative(&self) -> CycPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_int(i as i64))
            .collect();
        CycPoly::new(&self.field, coeffs)
    }

    /// `x^exp mod modulus` by repeated squaring.
    pub fn x_pow_mod(exp: u64, modulus: &CycPoly) -> Result<CycPoly> {
        let field = modulus.field.clone();
        let x = CycPoly::x_pow(&field, 1).rem(modulus)?;
        let mut acc = CycPoly::constant(field.one()).rem(modulus)?;
        // left-to-right binary powering keeps the multiplier equal to x
        for bit in (0..64 - exp.leading_zeros()).rev() {
            acc = acc.mul(&acc).rem(modulus)?;
            if (exp >> bit) & 1 == 1 {
                acc = acc.mul(&x).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, at: &CycQ) -> CycQ {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }
}

impl fmt::Debug for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*x^{i}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Monic characteristic polynomial `x^n + a_{n-1} x^{n-1} + ... + a_0`.
///
/// Only `a_0, ..., a_{n-1}` are stored. The elementary symmetric values of
/// the roots are `e_i = (-1)^i a_{n-i}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CharPoly {
    field: CycField,
    coeffs: Vec<CycQ>,
}

impl CharPoly {
    /// Builds from the non-leading coefficients `a_0..a_{n-1}`.
    pub fn from_lower_coeffs(field: &CycField, coeffs: Vec<CycQ>) -> Result<CharPoly> {
        if let Some(c) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::OrderMismatch(field.order(), c.order()));
        }
        Ok(CharPoly {
            field: field.clone(),
            coeffs,
        })
    }

    /// Converts a monic polynomial; errors if the leading coefficient is not 1.
    pub fn from_poly(p: &CycPoly) -> Result<CharPoly> {
        match p.leading() {
            Some(l) if l.is_one() => {
                let n = p.coeffs().len() - 1;
                Ok(CharPoly {
                    field: p.field().clone(),
                    coeffs: p.coeffs()[..n].to_vec(),
                })
            }
            _ => Err(Error::NotMonic),
        }
    }

    pub fn to_poly(&self) -> CycPoly {
        let mut c = self.coeffs.clone();
        c.push(self.field.one());
        CycPoly::new(&self.field, c)
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_0, ..., a_{n-1}`.
    pub fn lower_coeffs(&self) -> &[CycQ] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, including the implicit leading 1 and zeros above.
    pub fn coeff(&self, i: usize) -> CycQ {
        let n = self.degree();
        match i.cmp(&n) {
            std::cmp::Ordering::Less => self.coeffs[i].clone(),
            std::cmp::Ordering::Equal => self.field.one(),
            std::cmp::Ordering::Greater => self.field.zero(),
        }
    }

    /// `e_i`, the i-th elementary symmetric function of the roots; zero for `i > n`.
    pub fn elementary(&self, i: usize) -> CycQ {
        let n = self.degree();
        if i > n {
            return self.field.zero();
        }
        let a = self.coeff(n - i);
        if i % 2 == 1 {
            -a
        } else {
            a
        }
    }

    pub fn trace(&self) -> CycQ {
        self.elementary(1)
    }

    pub fn det(&self) -> CycQ {
        self.elementary(self.degree())
    }

    /// Multiplicity of 0 as a root.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }
}

impl fmt::Debug for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f1() -> CycField {
        CycField::new(1).unwrap()
    }

    #[test]
    fn divrem_reconstructs() {
        let f = f1();
        let a = CycPoly::from_ints(&f, &[3, -1, 0, 2, 5]);
        let b = CycPoly::from_ints(&f, &[1, 0, 2]);
        let (q, r) = a.divrem(&b).unwrap();
        assert!(r.degree().map_or(true, |d| d < 2));
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(a.divrem(&CycPoly::zero(&f)).is_err());
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f = f1();
        // (x-1)(x+2) and (x-1)(x-3)
        let a = CycPoly::from_ints(&f, &[-2, 1, 1]);
        let b = CycPoly::from_ints(&f, &[3, -4, 1]);
        assert_eq!(a.gcd(&b), CycPoly::from_ints(&f, &[-1, 1]));
        assert_eq!(a.gcd(&CycPoly::zero(&f)), a);
    }

    #[test]
    fn x_pow_mod_small() {
        let f = f1();
        let m = CycPoly::from_ints(&f, &[1, 0, 1]); // x^2 + 1
        assert_eq!(CycPoly::x_pow_mod(2, &m).unwrap(), CycPoly::from_ints(&f, &[-1]));
        assert_eq!(CycPoly::x_pow_mod(4, &m).unwrap(), CycPoly::from_ints(&f, &[1]));
        assert_eq!(CycPoly::x_pow_mod(0, &m).unwrap(), CycPoly::from_ints(&f, &[1]));
        assert_eq!(CycPoly::x_pow_mod(1, &m).unwrap(), CycPoly::from_ints(&f, &[0, 1]));
    }

    #[test]
    fn elementary_signs() {
        let f = f1();
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        let p = CharPoly::from_poly(&CycPoly::from_ints(&f, &[-6, 11, -6, 1])).unwrap();
        assert_eq!(p.elementary(1), f.from_int(6));
        assert_eq!(p.elementary(2), f.from_int(11));
        assert_eq!(p.elementary(3), f.from_int(6));
        assert_eq!(p.elementary(4), f.from_int(0));
        assert_eq!(p.elementary(0), f.from_int(1));
        assert!(CharPoly::from_poly(&CycPoly::from_ints(&f, &[1, 2])).is_err());
    }
}
