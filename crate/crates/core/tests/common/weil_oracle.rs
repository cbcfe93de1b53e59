//! Independent Weil-polynomial oracle: a pruned box scan of candidates and
//! a numerical root test certified by inclusion disks.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

type QPoly = Vec<BigRational>;

pub fn q_from(c: &[i128]) -> QPoly {
    c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

pub fn trim(mut p: QPoly) -> QPoly {
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
    }
    p
}

/// Remainder of `a` by `b`, both leading coefficient first.
pub fn rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut a = trim(a.clone());
    let b = trim(b.clone());
    while a.len() >= b.len() && !(a.len() == 1 && a[0].is_zero()) {
        let c = &a[0] / &b[0];
        for (i, bi) in b.iter().enumerate() {
            a[i] -= &c * bi;
        }
        a.remove(0);
        if a.is_empty() {
            a.push(BigRational::zero());
        }
        a = trim(a);
    }
    a
}

pub fn quo(a: &QPoly, b: &QPoly) -> QPoly {
    let mut a = a.clone();
    let mut out = Vec::new();
    while a.len() >= b.len() {
        let c = &a[0] / &b[0];
        for (i, bi) in b.iter().enumerate() {
            a[i] -= &c * bi;
        }
        a.remove(0);
        out.push(c);
    }
    out
}

pub fn squarefree(p: &QPoly) -> QPoly {
    let d = p.len() - 1;
    let dp: QPoly = p[..d]
        .iter()
        .enumerate()
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(d - i)))
        .collect();
    let (mut a, mut b) = (p.clone(), dp);
    while !(b.len() == 1 && b[0].is_zero()) {
        let r = rem(&a, &b);
        a = std::mem::replace(&mut b, r);
    }
    quo(p, &a)
}

pub fn eval(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

pub fn derivative(p: &[Complex64]) -> Vec<Complex64> {
    let d = p.len() - 1;
    p[..d].iter().enumerate().map(|(i, c)| c * (d - i) as f64).collect()
}

/// Simultaneous Aberth iteration for a monic polynomial with simple roots.
pub fn aberth(p: &[Complex64], radius: f64) -> Vec<Complex64> {
    let m = p.len() - 1;
    let dp = derivative(p);
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| Complex64::from_polar(radius * 1.1, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / m as f64))
        .collect();
    for _ in 0..400 {
        let prev = z.clone();
        for i in 0..m {
            let ratio = eval(p, prev[i]) / eval(&dp, prev[i]);
            if !ratio.is_finite() {
                continue;
            }
            let repulsion: Complex64 = (0..m).filter(|&j| j != i).map(|j| 1.0 / (prev[i] - prev[j])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.is_finite() {
                z[i] = prev[i] - step;
            }
        }
    }
    z
}

/// Independent decision of "every root has modulus sqrt(Q)" from certified
/// inclusion disks around numerical roots of the squarefree part.
pub fn on_circle_oracle(coeffs: &[i128], big_q: i128) -> bool {
    let g = squarefree(&q_from(coeffs));
    let m = g.len() - 1;
    if m == 0 {
        return true;
    }
    // simple roots on the circle form a set closed under z -> Q / conj(z),
    // which forces x^m g(Q/x) to be a multiple of g
    let a: QPoly = g.iter().rev().cloned().collect();
    if a[0].is_zero() {
        return false;
    }
    let qq = BigRational::from_integer(BigInt::from(big_q));
    let lambda = &a[m] * qq.pow(m as i32) / &a[0];
    let reflected_multiple = (0..=m).all(|j| &a[j] * qq.pow(j as i32) == &lambda * &a[m - j]);
    if !reflected_multiple {
        return false;
    }
    let lead = g[0].to_f64().unwrap();
    let gc: Vec<Complex64> = g.iter().map(|c| Complex64::new(c.to_f64().unwrap() / lead, 0.0)).collect();
    let dg = derivative(&gc);
    let r = (big_q as f64).sqrt();
    let roots = aberth(&gc, r);
    let disks: Vec<(Complex64, f64)> = roots
        .iter()
        .map(|&z| {
            let rad = m as f64 * (eval(&gc, z) / eval(&dg, z)).norm();
            (z, rad * 1.01 + 1e-9)
        })
        .collect();
    for i in 0..m {
        for j in 0..i {
            assert!(
                (disks[i].0 - disks[j].0).norm() > disks[i].1 + disks[j].1,
                "overlapping inclusion disks for {coeffs:?}"
            );
        }
    }
    for (i, &(c, rho)) in disks.iter().enumerate() {
        if (c.norm() - r).abs() > rho {
            return false;
        }
        let n2 = c.norm_sqr();
        assert!(rho * rho < n2 * 0.25, "disk too large for {coeffs:?}");
        let center = c * (big_q as f64 / (n2 - rho * rho));
        let radius = big_q as f64 * rho / (n2 - rho * rho) * 1.01;
        for (j, &(c2, rho2)) in disks.iter().enumerate() {
            let meets = (center - c2).norm() <= radius + rho2;
            if j == i {
                assert!(meets, "reflected disk misses its source for {coeffs:?}");
            } else {
                assert!(!meets, "ambiguous reflection for {coeffs:?}");
            }
        }
    }
    true
}

pub fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// All monic integer polynomials of degree `d` whose roots could lie on the
/// circle: constant term `+-Q^{d/2}`, coefficients within the binomial box,
/// and power sums bounded by `d Q^{k/2}`.
pub fn box_scan(big_q: i128, d: usize) -> Vec<Vec<i128>> {
    let top_sq = big_q.pow(d as u32);
    let root = (top_sq as f64).sqrt().round() as i128;
    if root * root != top_sq {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut coeffs = vec![1i128];
    let mut sums: Vec<i128> = vec![d as i128];
    scan(big_q, d, root, &mut coeffs, &mut sums, &mut out);
    out
}

pub fn scan(big_q: i128, d: usize, root: i128, coeffs: &mut Vec<i128>, sums: &mut Vec<i128>, out: &mut Vec<Vec<i128>>) {
    let k = coeffs.len();
    if k == d + 1 {
        out.push(coeffs.clone());
        return;
    }
    let choices: Vec<i128> = if k == d {
        vec![-root, root]
    } else {
        let b = (binom(d, k) * (big_q as f64).powf(k as f64 / 2.0)).floor() as i128;
        (-b..=b).collect()
    };
    for a in choices {
        // Newton: p_k = -(sum_{i<k} a_i p_{k-i}) - k a_k
        let mut pk = -(k as i128) * a;
        for i in 1..k {
            pk -= coeffs[i] * sums[k - i];
        }
        if pk * pk > (d * d) as i128 * big_q.pow(k as u32) {
            continue;
        }
        coeffs.push(a);
        sums.push(pk);
        scan(big_q, d, root, coeffs, sums, out);
        coeffs.pop();
        sums.pop();
    }
}
