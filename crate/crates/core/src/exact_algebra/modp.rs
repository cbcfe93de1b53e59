//! Reduction of `Q(zeta_N)` into a prime field `F_p` with `p = 1 mod N`.
//!
//! Used only as a one-sided filter: if a monic polynomial with algebraic
//! integer factor `G` reduces cleanly, the reduction of `G` divides the
//! reduced polynomial, so degrees of gcds can only grow mod `p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::cyclo::CycQ;
use super::poly::CycPoly;
use crate::arith::{factor_u64, is_prime};

const START: u64 = 1 << 31;

pub(crate) struct Reduction {
    p: u64,
    zeta_powers: Vec<u64>,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

impl Reduction {
    /// The `skip`-th prime above `2^31` that is `1 mod N`.
    pub(crate) fn new(order: usize, skip: usize) -> Reduction {
        let n = order as u64;
        let mut p = (START / n + 1) * n + 1;
        let mut seen = 0;
        loop {
            if is_prime(p) {
                if seen == skip {
                    break;
                }
                seen += 1;
            }
            p += n;
        }
        let primes: Vec<u64> = factor_u64(n).into_iter().map(|(q, _)| q).collect();
        let w = (2..)
            .map(|g| pow_mod(g, (p - 1) / n, p))
            .find(|&w| primes.iter().all(|q| pow_mod(w, n / q, p) != 1))
            .expect("F_p^* is cyclic of order divisible by N");
        let degree = order.max(1);
        let zeta_powers = (0..degree as u64).map(|k| pow_mod(w, k, p)).collect();
        Reduction { p, zeta_powers }
    }

    fn rational(&self, c: &BigRational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let den = c.denom().mod_floor(&p).to_u64()?;
        if den == 0 {
            return None;
        }
        let num = c.numer().mod_floor(&p).to_u64()?;
        Some(num * inv_mod(den, self.p) % self.p)
    }

    pub(crate) fn element(&self, a: &CycQ) -> Option<u64> {
        let mut acc = 0u64;
        for (c, w) in a.coeffs().iter().zip(&self.zeta_powers) {
            if !c.is_zero() {
                acc = (acc + self.rational(c)? * w) % self.p;
            }
        }
        Some(acc)
    }

    pub(crate) fn integers(&self, c: &[BigInt]) -> Vec<u64> {
        let p = BigInt::from(self.p);
        c.iter()
            .map(|x| x.mod_floor(&p).to_u64().expect("reduced below p"))
            .collect()
    }

    pub(crate) fn poly(&self, f: &CycPoly) -> Option<Vec<u64>> {
        f.coeffs().iter().map(|c| self.element(c)).collect()
    }

    /// Degree of `gcd(a, b)` over `F_p`; both inputs ascending.
    pub(crate) fn gcd_degree(&self, a: &[u64], b: &[u64]) -> usize {
        let p = self.p;
        let trim = |mut v: Vec<u64>| {
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let lead_inv = inv_mod(*b.last().unwrap(), p);
            let db = b.len() - 1;
            while a.len() > db {
                let top = a.len() - 1;
                let c = a[top] * lead_inv % p;
                let shift = top - db;
                for (j, bj) in b.iter().enumerate() {
                    a[shift + j] = (a[shift + j] + p - c * bj % p) % p;
                }
                a = trim(a);
                if a.len() <= db {
                    break;
                }
            }
            std::mem::swap(&mut a, &mut b);
        }
        a.len().saturating_sub(1)
    }
}
