//! Power bounds for coefficient fields that are finite extensions of `Q_l`.
//!
//! A finite extension `F / Q_l` is described by its ramification index `e`
//! and residue degree `f`. The roots of unity of order `M = u l^t` with
//! `gcd(u, l) = 1` generate an extension of `Q_l` of degree
//! `ord_u(l) * phi(l^t)`, so every root of unity of degree at most `n^2`
//! over `F` has order dividing
//!
//! ```text
//! K0 = lcm{ u l^t : ord_u(l) phi(l^t) <= n^2 e f }
//!    = l^{t_max} * lcm{ l^j - 1 : j <= n^2 e f }.
//! ```

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_prime::factor::pollard_rho;
use num_prime::nt_funcs::{factorize64, is_prime, primes};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{big_decimal, is_prime as is_small_prime};
use crate::error::{Error, Result};
use crate::exact_algebra::cyclotomic_poly;

/// Degree bounds above this are refused rather than computed.
pub const MAX_DEGREE_BOUND: u64 = 4096;

/// Trial division limit used while splitting `Phi_d(l)`.
const TRIAL_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LocalFieldParams {
    pub ell: u64,
    pub e: u64,
    pub f: u64,
}

impl LocalFieldParams {
    pub fn new(ell: u64, e: u64, f: u64) -> Result<LocalFieldParams> {
        if !is_small_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        if e == 0 || f == 0 {
            return Err(Error::InvalidArgument(
                "ramification index and residue degree must be at least 1".into(),
            ));
        }
        Ok(LocalFieldParams { ell, e, f })
    }
}

fn phi_ell_power(ell: u64, t: u32) -> BigUint {
    if t == 0 {
        BigUint::one()
    } else {
        BigUint::from(ell - 1) * BigUint::from(ell).pow(t - 1)
    }
}

/// `(l^f - 1) * l^t` with `t` the largest exponent such that `phi(l^t)`
/// divides `e`.
pub fn roots_of_unity_bound(params: &LocalFieldParams) -> Result<BigUint> {
    let ell = BigUint::from(params.ell);
    let f = u32::try_from(params.f).map_err(|_| Error::Overflow("l^f"))?;
    let e = BigUint::from(params.e);
    let mut t = 0u32;
    let mut probe = 1u32;
    loop {
        let phi = phi_ell_power(params.ell, probe);
        if phi > e {
            break;
        }
        if (&e % &phi).is_zero() {
            t = probe;
        }
        probe += 1;
    }
    Ok((ell.pow(f) - 1u32) * BigUint::from(params.ell).pow(t))
}

fn degree_bound(n: usize, params: &LocalFieldParams) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let b = (n as u64)
        .checked_mul(n as u64)
        .and_then(|x| x.checked_mul(params.e))
        .and_then(|x| x.checked_mul(params.f))
        .ok_or(Error::Overflow("n^2 e f"))?;
    if b > MAX_DEGREE_BOUND {
        return Err(Error::BudgetExceeded {
            candidates: u128::from(b),
            budget: u128::from(MAX_DEGREE_BOUND),
        });
    }
    Ok(b)
}

/// Largest `t` with `phi(l^t) <= bound`.
fn ell_exponent(ell: u64, bound: u64) -> u32 {
    let bound = BigUint::from(bound);
    let mut t = 0;
    while phi_ell_power(ell, t + 1) <= bound {
        t += 1;
    }
    t
}

/// The bound `K0` for `n x n` matrices over `F`, in factored form.
///
/// `factors` lists `(p, k)` with `p` a (probable) prime; `cofactor` is the
/// part of `value` that could not be split with bounded effort, and is 1
/// when the factorization is complete.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaperBound {
    pub n: usize,
    pub params: LocalFieldParams,
    pub degree_bound: u64,
    pub ell_exponent: u32,
    #[serde(serialize_with = "big_decimal::serialize")]
    pub value: BigUint,
    #[serde(serialize_with = "big_decimal::serialize_factors")]
    pub factors: Vec<(BigUint, u32)>,
    #[serde(serialize_with = "big_decimal::serialize")]
    pub cofactor: BigUint,
}

impl PaperBound {
    pub fn is_fully_factored(&self) -> bool {
        self.cofactor.is_one()
    }

    /// Product of the listed prime powers times the cofactor.
    pub fn expand(&self) -> BigUint {
        self.factors
            .iter()
            .fold(self.cofactor.clone(), |acc, (p, k)| acc * p.pow(*k))
    }
}

/// `K0` as an integer, without factoring.
pub fn paper_m_bound_value(n: usize, params: &LocalFieldParams) -> Result<BigUint> {
    let b = degree_bound(n, params)?;
    Ok(value_for(params.ell, b))
}

fn value_for(ell: u64, b: u64) -> BigUint {
    let base = BigUint::from(ell);
    let mut acc = base.pow(ell_exponent(ell, b));
    let mut power = BigUint::one();
    for _ in 1..=b {
        power *= &base;
        acc = acc.lcm(&(&power - 1u32));
    }
    acc
}

pub fn paper_m_bound(n: usize, params: &LocalFieldParams) -> Result<PaperBound> {
    let b = degree_bound(n, params)?;
    let value = value_for(params.ell, b);
    let t = ell_exponent(params.ell, b);

    let mut found: BTreeSet<BigUint> = BTreeSet::new();
    let small_primes = primes(TRIAL_LIMIT);
    for d in 1..=b {
        split_cyclotomic_value(params.ell, d, &small_primes, &mut found);
    }
    if t > 0 {
        found.insert(BigUint::from(params.ell));
    }

    let mut rest = value.clone();
    let mut factor_list = Vec::new();
    for p in found {
        let mut k = 0u32;
        loop {
            let (q, r) = rest.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            k += 1;
        }
        if k > 0 {
            factor_list.push((p, k));
        }
    }
    Ok(PaperBound {
        n,
        params: *params,
        degree_bound: b,
        ell_exponent: t,
        value,
        factors: factor_list,
        cofactor: rest,
    })
}

fn insert_u64_factors(x: u64, out: &mut BTreeSet<BigUint>) {
    for p in factorize64(x).into_keys() {
        out.insert(BigUint::from(p));
    }
}

/// Collects prime divisors of `Phi_d(l)`. Every such prime divides `d` or is
/// `1 mod d`, which keeps trial division cheap.
fn split_cyclotomic_value(ell: u64, d: u64, small_primes: &[u64], out: &mut BTreeSet<BigUint>) {
    let coeffs = cyclotomic_poly(d as usize);
    let x = BigInt::from(ell);
    let value = coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * &x + c);
    let mut rest = value.to_biguint().expect("Phi_d(l) > 0 for l >= 2");
    if let Some(small) = rest.to_u64() {
        if small > 1 {
            insert_u64_factors(small, out);
        }
        return;
    }
    for &q in small_primes {
        if q % d != 1 && d % q != 0 {
            continue;
        }
        let qb = BigUint::from(q);
        let mut hit = false;
        loop {
            let (quot, r) = rest.div_rem(&qb);
            if !r.is_zero() {
                break;
            }
            rest = quot;
            hit = true;
        }
        if hit {
            out.insert(qb);
        }
    }
    split_remaining(rest, out);
}

/// Iterations per deterministic Pollard rho attempt on a large cofactor.
const RHO_ITERATIONS: usize = 1 << 13;

fn split_remaining(rest: BigUint, out: &mut BTreeSet<BigUint>) {
    if rest.is_one() {
        return;
    }
    if let Some(small) = rest.to_u64() {
        insert_u64_factors(small, out);
        return;
    }
    if is_prime(&rest, None).probably() {
        out.insert(rest);
        return;
    }
    // fixed starting points keep the output reproducible; a number that
    // resists every attempt is left for the cofactor
    for offset in 1u32..=3 {
        let (found, _) = pollard_rho(
            &rest,
            BigUint::from(2u32),
            BigUint::from(offset),
            RHO_ITERATIONS,
        );
        if let Some(d) = found {
            let other = &rest / &d;
            split_remaining(d, out);
            split_remaining(other, out);
            return;
        }
    }
}
