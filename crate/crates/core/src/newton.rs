//! Power sums as integral combinations of exterior-power characters.
//!
//! For a tuple `r = (r_1, ..., r_n)` of nonnegative integers the weighted
//! degree is `d(r) = r_1 + 2 r_2 + ... + n r_n`. The trace of `g^m` is
//!
//! ```text
//! Tr(g^m) = sum_{d(r) = m} c(r) * prod_i e_i^{r_i},
//! c(r)    = (-1)^m * m * (s-1)! / (r_1! ... r_n!) * (-1)^s,   s = sum r_i,
//! ```
//!
//! where `e_i = Tr(Lambda^i g)` is the i-th elementary symmetric function of
//! the eigenvalues of `g`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::exact_algebra::{CharPoly, CycQ};

/// A tuple `r = (r_1, ..., r_n)` together with its weighted degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Composition {
    parts: Vec<u32>,
    degree: u64,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Composition {
        let degree = weighted_degree(&parts);
        Composition { parts, degree }
    }

    /// Ambient dimension `n` (number of parts).
    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// `r_1 + ... + r_n`.
    pub fn total(&self) -> u64 {
        self.parts.iter().map(|&r| u64::from(r)).sum()
    }
}

fn weighted_degree(parts: &[u32]) -> u64 {
    parts
        .iter()
        .enumerate()
        .map(|(i, &r)| (i as u64 + 1) * u64::from(r))
        .sum()
}

/// All `r` of length `n` with `d(r) = m`, in descending lexicographic order.
pub fn compositions(n: usize, m: u64) -> Vec<Composition> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut parts = vec![0u32; n];
    fill(0, m, &mut parts, &mut out);
    out
}

fn fill(i: usize, remaining: u64, parts: &mut Vec<u32>, out: &mut Vec<Composition>) {
    let n = parts.len();
    let weight = i as u64 + 1;
    if i + 1 == n {
        if remaining % weight == 0 {
            parts[i] = (remaining / weight) as u32;
            out.push(Composition::new(parts.clone()));
        }
        return;
    }
    for r in (0..=remaining / weight).rev() {
        parts[i] = r as u32;
        fill(i + 1, remaining - r * weight, parts, out);
    }
    parts[i] = 0;
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// The integer coefficient `c(r)` of `prod_i e_i^{r_i}` in `Tr(g^{d(r)})`.
pub fn newton_coefficient(r: &Composition) -> Result<BigInt> {
    let m = r.degree();
    if m == 0 {
        return Err(Error::InvalidArgument(
            "newton_coefficient needs a nonzero composition".into(),
        ));
    }
    let s = r.total();
    let num = BigInt::from(m) * factorial(s - 1);
    let den = r
        .parts()
        .iter()
        .fold(BigInt::one(), |acc, &ri| acc * factorial(u64::from(ri)));
    let (q, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        // m (s-1)! / prod r_i! is a multinomial-type count and always integral
        return Err(Error::InvalidArgument(format!(
            "non-integral Newton coefficient for {:?}",
            r.parts()
        )));
    }
    let negative = (m + s) % 2 == 1;
    Ok(if negative { -q } else { q })
}

/// `Tr(g^m)` computed from the characteristic polynomial of `g` alone.
pub fn m_trace_from_charpoly(p: &CharPoly, m: u64) -> Result<CycQ> {
    if m == 0 {
        return Err(Error::ZeroExponent);
    }
    let field = p.field();
    let n = p.degree();
    if n == 0 {
        return Ok(field.zero());
    }
    let e: Vec<CycQ> = (1..=n).map(|i| p.elementary(i)).collect();
    let mut total = field.zero();
    for r in compositions(n, m) {
        let c = newton_coefficient(&r)?;
        let mut term = field.from_rational(num_rational::BigRational::from_integer(c));
        for (ei, &ri) in e.iter().zip(r.parts()) {
            if ri > 0 {
                term = &term * &ei.pow(u64::from(ri));
            }
        }
        total += &term;
    }
    Ok(total)
}

/// Dimension of `V^{(x) r_1} (x) (Lambda^2 V)^{(x) r_2} (x) ... ` for `dim V = n`.
pub fn dim_lambda(n: usize, r: &Composition) -> Result<BigUint> {
    if r.n() != n {
        return Err(Error::DimensionMismatch(n, r.n()));
    }
    Ok(r.parts()
        .iter()
        .enumerate()
        .fold(BigUint::one(), |acc, (i, &ri)| {
            acc * binomial(n as u64, i as u64 + 1).pow(ri)
        }))
}

/// `d_m = 2 * sum_{d(r) = m} dim(r, V)^2`.
pub fn d_m(n: usize, m: u64) -> Result<BigUint> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("d_m needs n, m >= 1".into()));
    }
    let mut sum = BigUint::zero();
    for r in compositions(n, m) {
        let d = dim_lambda(n, &r)?;
        sum += &d * &d;
    }
    Ok(sum * 2u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{CycField, CycPoly};

    fn parts(cs: &[Composition]) -> Vec<Vec<u32>> {
        cs.iter().map(|c| c.parts().to_vec()).collect()
    }

    #[test]
    fn composition_examples() {
        assert_eq!(parts(&compositions(2, 2)), vec![vec![2, 0], vec![0, 1]]);
        assert_eq!(parts(&compositions(1, 3)), vec![vec![3]]);
        assert_eq!(
            parts(&compositions(3, 3)),
            vec![vec![3, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]
        );
        // partitions of 6 with parts <= 4: 11 - 2 (parts 5 and 6)
        assert_eq!(compositions(4, 6).len(), 9);
    }

    #[test]
    fn coefficient_examples() {
        let c = |p: &[u32]| newton_coefficient(&Composition::new(p.to_vec())).unwrap();
        assert_eq!(c(&[2, 0]), BigInt::from(1));
        assert_eq!(c(&[0, 1]), BigInt::from(-2));
        assert_eq!(c(&[1, 1, 0]), BigInt::from(-3));
        assert_eq!(c(&[3, 0, 0]), BigInt::from(1));
        assert_eq!(c(&[0, 0, 1]), BigInt::from(3));
        assert!(newton_coefficient(&Composition::new(vec![0, 0])).is_err());
    }

    #[test]
    fn trace_examples() {
        let f = CycField::new(1).unwrap();
        let p = CharPoly::from_poly(&CycPoly::from_ints(&f, &[1, 0, 1])).unwrap();
        assert_eq!(m_trace_from_charpoly(&p, 2).unwrap(), f.from_int(-2));
        assert_eq!(m_trace_from_charpoly(&p, 1).unwrap(), p.elementary(1));
        // (x - 1)^3
        let u = CharPoly::from_poly(&CycPoly::from_ints(&f, &[-1, 3, -3, 1])).unwrap();
        for m in 1..8 {
            assert_eq!(m_trace_from_charpoly(&u, m).unwrap(), f.from_int(3));
        }
    }

    #[test]
    fn dimension_examples() {
        let dim = |n, p: &[u32]| dim_lambda(n, &Composition::new(p.to_vec())).unwrap();
        assert_eq!(dim(2, &[2, 0]), BigUint::from(4u32));
        assert_eq!(dim(2, &[0, 1]), BigUint::from(1u32));
        assert_eq!(dim(3, &[1, 1, 0]), BigUint::from(9u32));
        assert!(dim_lambda(3, &Composition::new(vec![1, 0])).is_err());
        assert_eq!(d_m(2, 2).unwrap(), BigUint::from(34u32));
        assert_eq!(d_m(2, 1).unwrap(), BigUint::from(8u32));
        for m in 1..6 {
            assert_eq!(d_m(1, m).unwrap(), BigUint::from(2u32));
        }
    }

    #[test]
    fn stored_degree_matches_parts() {
        for n in 1..=4 {
            for m in 1..=7 {
                let cs = compositions(n, m);
                let mut sorted = cs.clone();
                sorted.dedup();
                assert_eq!(sorted.len(), cs.len());
                for c in &cs {
                    assert_eq!(c.degree(), m);
                    assert_eq!(weighted_degree(c.parts()), c.degree());
                }
            }
        }
    }
}
