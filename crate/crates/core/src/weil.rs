//! Weil polynomials: monic integer polynomials whose complex roots all have
//! absolute value `q^{w/2}`.
//!
//! Coefficient lists are written leading coefficient first, constant term
//! last. Throughout, `Q = q^w`.
//!
//! Certification. After removing the real factors `x - sqrt(Q)`,
//! `x + sqrt(Q)` (or `x^2 - Q` when `Q` is not a square), a Weil polynomial
//! `p` of degree `2k` satisfies `x^{2k} p(Q/x) = Q^k p(x)`, and then
//! `p(x) = x^k h(x + Q/x)` for an integer polynomial `h` of degree `k`. The
//! roots of `p` lie on the circle exactly when every root of `h` is real and
//! lies in `[-2 sqrt(Q), 2 sqrt(Q)]`, which a Sturm sequence decides. Signs at
//! the irrational endpoints are computed exactly in `Q(sqrt(Q))`.
//!
//! Enumeration. Every Weil polynomial satisfies `c_i Q^i = c_0 c_{d-i}` with
//! `c_0 = +-Q^{d/2}`, so only the upper half of the coefficients and a sign
//! are free. Each free coefficient obeys `|a_{d-i}| <= C(d,i) Q^{i/2}`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binomial, prime_power};
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u128 = 10_000_000;
/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "GALREP_BUDGET";

/// Candidate budget from [`BUDGET_ENV`], or the default.
pub fn budget_from_env() -> Result<u128> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{BUDGET_ENV}={s:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WeilPoly {
    pub q: u64,
    pub w: u32,
    pub d: usize,
    /// Leading coefficient first.
    pub coeffs: Vec<i128>,
}

impl PartialOrd for WeilPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeilPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.q, self.w, self.d, &self.coeffs).cmp(&(other.q, other.w, other.d, &other.coeffs))
    }
}

fn check_q(q: u64) -> Result<()> {
    match prime_power(q) {
        Some(_) => Ok(()),
        None => Err(Error::NotPrimePower(q)),
    }
}

/// Whether every root of the monic polynomial `coeffs` (leading first) has
/// absolute value `q^{w/2}`.
pub fn is_weil_poly(coeffs: &[i128], q: u64, w: u32) -> Result<bool> {
    let lead = coeffs
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty coefficient list".into()))?;
    if *lead != 1 {
        return Err(Error::NotMonic);
    }
    check_q(q)?;
    let big_q = BigInt::from(q).pow(w);
    let ascending: Vec<BigInt> = coeffs.iter().rev().map(|&c| BigInt::from(c)).collect();
    Ok(certify(ascending, &big_q))
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Quotient of `p` by a monic `divisor` if the division is exact.
fn divide_exact(p: &[BigInt], divisor: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = divisor.len() - 1;
    if p.len() <= db {
        return None;
    }
    let mut rem = p.to_vec();
    let mut quot = vec![BigInt::zero(); p.len() - db];
    for i in (0..quot.len()).rev() {
        let c = rem[i + db].clone();
        if !c.is_zero() {
            for (j, b) in divisor.iter().enumerate() {
                rem[i + j] -= &c * b;
            }
        }
        quot[i] = c;
    }
    rem[..db].iter().all(Zero::is_zero).then_some(quot)
}

fn strip_factor(mut p: Vec<BigInt>, factor: &[BigInt]) -> Vec<BigInt> {
    while let Some(q) = divide_exact(&p, factor) {
        p = q;
    }
    p
}

/// Exact root-on-circle decision for an ascending monic integer polynomial.
fn certify(p: Vec<BigInt>, big_q: &BigInt) -> bool {
    let mut p = strip_factor(p, &[-big_q.clone(), BigInt::zero(), BigInt::one()]);
    if let Some(r) = exact_sqrt(big_q) {
        p = strip_factor(p, &[-r.clone(), BigInt::one()]);
        p = strip_factor(p, &[r, BigInt::one()]);
    }
    let d = p.len() - 1;
    if d == 0 {
        return true;
    }
    // no real roots remain on the circle, so roots pair up as a, Q/a = conj(a)
    if d % 2 == 1 {
        return false;
    }
    let k = d / 2;
    let q_pows: Vec<BigInt> = (0..=d).map(|i| big_q.pow(i as u32)).collect();
    for i in 0..=d {
        if &p[i] * &q_pows[i] != &q_pows[k] * &p[d - i] {
            return false;
        }
    }
    let h = trace_polynomial(&p, &q_pows, k);
    let h: Vec<BigRational> = h.into_iter().map(BigRational::from_integer).collect();
    let g = squarefree(&h);
    roots_in_window(&g, big_q) == g.len() - 1
}

/// `h` with `p(x) = x^k h(x + Q/x)`, for self-inversive `p` of degree `2k`.
fn trace_polynomial(p: &[BigInt], q_pows: &[BigInt], k: usize) -> Vec<BigInt> {
    let mut rest = p.to_vec();
    let mut h = vec![BigInt::zero(); k + 1];
    for j in (0..=k).rev() {
        let c = rest[k + j].clone();
        if !c.is_zero() {
            // x^k (x + Q/x)^j = sum_t C(j,t) Q^t x^{k+j-2t}
            for t in 0..=j {
                let term = &c * BigInt::from(binomial(j as u64, t as u64)) * &q_pows[t];
                rest[k + j - 2 * t] -= term;
            }
        }
        h[j] = c;
    }
    debug_assert!(rest.iter().all(Zero::is_zero));
    h
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn is_zero_poly(p: &[BigRational]) -> bool {
    p.iter().all(Zero::is_zero)
}

fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (vec![BigRational::zero()], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
        }
        quot[i] = c;
    }
    rem.truncate(db.max(1));
    (trim(quot), trim(rem))
}

fn derivative(p: &[BigRational]) -> Vec<BigRational> {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !is_zero_poly(&b) {
        let r = divrem(&a, &b).1;
        a = std::mem::replace(&mut b, r);
    }
    a
}

fn squarefree(h: &[BigRational]) -> Vec<BigRational> {
    let g = gcd(h, &derivative(h));
    divrem(h, &g).0
}

/// Sign of `a + b sqrt(q)` for `q > 0`.
fn sign_with_root(a: &BigRational, b: &BigRational, q: &BigInt) -> i8 {
    let sa = a.signum();
    let sb = b.signum();
    let s = |x: &BigRational| -> i8 {
        if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        }
    };
    if sb.is_zero() || sa == sb {
        return if sa.is_zero() { s(&sb) } else { s(&sa) };
    }
    if sa.is_zero() {
        return s(&sb);
    }
    // opposite signs: compare a^2 with b^2 q
    let lhs = a * a;
    let rhs = b * b * BigRational::from_integer(q.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => s(&sa),
        Ordering::Less => s(&sb),
        Ordering::Equal => 0,
    }
}

/// Sign of `g(sign * 2 sqrt(Q))`.
fn sign_at_edge(g: &[BigRational], big_q: &BigInt, negative: bool) -> i8 {
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    for (j, c) in g.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // (2 sqrt Q)^j = 2^j Q^{j/2}
        let mut scale = BigInt::from(2).pow(j as u32) * big_q.pow((j / 2) as u32);
        if negative && j % 2 == 1 {
            scale = -scale;
        }
        let term = c * BigRational::from_integer(scale);
        if j % 2 == 0 {
            a += term;
        } else {
            b += term;
        }
    }
    sign_with_root(&a, &b, big_q)
}

/// Number of distinct roots of the squarefree `g` in `[-2 sqrt Q, 2 sqrt Q]`.
fn roots_in_window(g: &[BigRational], big_q: &BigInt) -> usize {
    let mut chain = vec![g.to_vec(), derivative(g)];
    loop {
        let n = chain.len();
        if is_zero_poly(&chain[n - 1]) {
            chain.pop();
            break;
        }
        if chain[n - 1].len() == 1 {
            break;
        }
        let r = divrem(&chain[n - 2], &chain[n - 1]).1;
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    let variations = |negative: bool| {
        let signs: Vec<i8> = chain
            .iter()
            .map(|p| sign_at_edge(p, big_q, negative))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let left_root = sign_at_edge(g, big_q, true) == 0;
    variations(true) - variations(false) + usize::from(left_root)
}

/// Exact bounds and shape of the search space for given `(q, w, d)`.
struct SearchSpace {
    d: usize,
    big_q: i128,
    /// `Q^{d/2}`, an integer whenever candidates exist.
    top: i128,
    /// Bounds on the free coefficients `a_{d-1}, ..., a_{d - floor(d/2)}`.
    bounds: Vec<i128>,
}

impl SearchSpace {
    fn new(q: u64, w: u32, d: usize) -> Result<Option<SearchSpace>> {
        if d == 0 {
            return Err(Error::InvalidArgument("degree must be at least 1".into()));
        }
        check_q(q)?;
        let big_q = i128::from(q)
            .checked_pow(w)
            .ok_or(Error::Overflow("q^w"))?;
        let root = exact_sqrt(&BigInt::from(big_q)).and_then(|r| r.to_i128());
        let top = if d % 2 == 0 {
            big_q.checked_pow((d / 2) as u32)
        } else {
            match root {
                Some(r) => r.checked_pow(d as u32),
                // the constant term would be +-Q^{d/2}, which is irrational
                None => return Ok(None),
            }
        }
        .ok_or(Error::Overflow("Q^{d/2}"))?;
        let mut bounds = Vec::with_capacity(d / 2);
        for i in 1..=d / 2 {
            // floor(C(d,i) Q^{i/2}) = isqrt(C(d,i)^2 Q^i)
            let c = BigInt::from(binomial(d as u64, i as u64));
            let square = &c * &c * BigInt::from(big_q).pow(i as u32);
            bounds.push(square.sqrt().to_i128().ok_or(Error::Overflow("coefficient bound"))?);
        }
        Ok(Some(SearchSpace {
            d,
            big_q,
            top,
            bounds,
        }))
    }

    /// Candidate count: `prod (2B_i + 1)` for each sign of the constant
    /// term, with the middle coefficient forced to 0 for the negative sign.
    fn candidates(&self) -> u128 {
        let widths: Vec<u128> = self.bounds.iter().map(|&b| 2 * b as u128 + 1).collect();
        let all: u128 = widths.iter().product();
        let negative = if self.d % 2 == 0 && !widths.is_empty() {
            all / widths[widths.len() - 1]
        } else {
            all
        };
        all + negative
    }

    /// Fills the lower coefficients from the upper half; `None` if one is
    /// not an integer or violates its bound.
    fn complete(&self, upper: &[i128], sign: i128) -> Option<Vec<i128>> {
        let d = self.d;
        let mut asc = vec![0i128; d + 1];
        asc[d] = 1;
        for (i, &a) in upper.iter().enumerate() {
            asc[d - 1 - i] = a;
        }
        let c0 = sign * self.top;
        // c_j Q^j = c_0 c_{d-j} for the lower half
        for j in 0..=d / 2 {
            if 2 * j == d {
                if sign < 0 && asc[j] != 0 {
                    return None;
                }
                continue;
            }
            let num = c0.checked_mul(asc[d - j])?;
            let den = self.big_q.checked_pow(j as u32)?;
            if num % den != 0 {
                return None;
            }
            asc[j] = num / den;
        }
        Some(asc)
    }
}

/// Necessary condition `|p_k| <= d Q^{k/2}` on power sums of the roots,
/// checked as `p_k^2 <= d^2 Q^k`. Returns true when it cannot be evaluated.
fn power_sums_plausible(asc: &[i128], big_q: i128) -> bool {
    let d = asc.len() - 1;
    let e = |i: usize| -> i128 {
        // e_i = (-1)^i c_{d-i}
        let c = asc[d - i];
        if i % 2 == 0 {
            c
        } else {
            -c
        }
    };
    let mut p: Vec<i128> = vec![d as i128];
    for k in 1..=d {
        // p_k = sum_{i<k} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
        let mut acc: i128 = 0;
        for i in 1..k {
            let Some(t) = e(i).checked_mul(p[k - i]) else {
                return true;
            };
            acc = if i % 2 == 1 { acc.checked_add(t) } else { acc.checked_sub(t) }
                .unwrap_or(i128::MAX);
        }
        let last = (k as i128) * e(k);
        acc = if k % 2 == 1 { acc + last } else { acc - last };
        let bound = (d as i128)
            .checked_mul(d as i128)
            .and_then(|dd| big_q.checked_pow(k as u32).and_then(|qk| dd.checked_mul(qk)));
        match (acc.checked_mul(acc), bound) {
            (Some(lhs), Some(rhs)) if lhs > rhs => return false,
            (None, _) | (_, None) => return true,
            _ => {}
        }
        p.push(acc);
    }
    true
}

/// All Weil polynomials of degree `d` for `(q, w)` in lexicographic order of
/// their coefficient lists, using the budget from the environment.
pub fn enumerate_weil(q: u64, w: u32, d: usize) -> Result<Vec<WeilPoly>> {
    enumerate_weil_with_budget(q, w, d, budget_from_env()?)
}

pub fn enumerate_weil_with_budget(q: u64, w: u32, d: usize, budget: u128) -> Result<Vec<WeilPoly>> {
    let Some(space) = SearchSpace::new(q, w, d)? else {
        return Ok(Vec::new());
    };
    let candidates = space.candidates();
    if candidates > budget {
        return Err(Error::BudgetExceeded { candidates, budget });
    }
    let big_q_big = BigInt::from(space.big_q);
    let test = |upper: &[i128], sign: i128| -> Option<Vec<i128>> {
        let asc = space.complete(upper, sign)?;
        if !power_sums_plausible(&asc, space.big_q) {
            return None;
        }
        let big: Vec<BigInt> = asc.iter().map(|&c| BigInt::from(c)).collect();
        certify(big, &big_q_big).then(|| asc.into_iter().rev().collect())
    };

    let mut found: Vec<Vec<i128>> = if space.bounds.is_empty() {
        [-1i128, 1].iter().filter_map(|&s| test(&[], s)).collect()
    } else {
        let b0 = space.bounds[0];
        (-b0..=b0)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut out = Vec::new();
                let rest = &space.bounds[1..];
                let mut upper: Vec<i128> = std::iter::once(first)
                    .chain(rest.iter().map(|&b| -b))
                    .collect();
                loop {
                    for sign in [-1i128, 1] {
                        if let Some(c) = test(&upper, sign) {
                            out.push(c);
                        }
                    }
                    // odometer over the remaining free coefficients
                    let mut i = upper.len();
                    loop {
                        if i == 1 {
                            return out;
                        }
                        i -= 1;
                        if upper[i] < rest[i - 1] {
                            upper[i] += 1;
                            break;
                        }
                        upper[i] = -rest[i - 1];
                    }
                }
            })
            .collect()
    };
    found.sort();
    found.dedup();
    Ok(found
        .into_iter()
        .map(|coeffs| WeilPoly { q, w, d, coeffs })
        .collect())
}

pub fn weil_count(q: u64, w: u32, d: usize) -> Result<usize> {
    Ok(enumerate_weil(q, w, d)?.len())
}

/// `weil_count(q, w, d)^places`: how many tuples of Frobenius characteristic
/// polynomials a set of `places` test places can distinguish. An upper bound
/// on the classes separated by traces at those places, not a sharp count.
pub fn trace_class_bound(q: u64, w: u32, d: usize, places: u32) -> Result<BigUint> {
    Ok(BigUint::from(weil_count(q, w, d)?).pow(places))
}

/// Number of candidates the enumerator would test for `(q, w, d)`.
pub fn candidate_count(q: u64, w: u32, d: usize) -> Result<u128> {
    Ok(SearchSpace::new(q, w, d)?.map_or(0, |s| s.candidates()))
}
