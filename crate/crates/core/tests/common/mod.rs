#![allow(dead_code)]

pub mod groups;
pub mod weil_oracle;

use galrep_core::exact_algebra::{CycField, CycQ, Matrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> BigRational {
    let num: i64 = rng.gen_range(-3..=3);
    let den: i64 = rng.gen_range(1..=2);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A random element with small rational coordinates, often sparse.
pub fn small_elem(field: &CycField, rng: &mut impl Rng) -> CycQ {
    let mut acc = field.zero();
    for k in 0..field.degree() {
        if k == 0 || rng.gen_bool(0.4) {
            let c = small_rational(rng);
            acc += &field.zeta_pow(k as i64).scale(&c);
        }
    }
    acc
}

pub fn random_matrix(field: &CycField, n: usize, rng: &mut impl Rng) -> Matrix {
    let rows = (0..n)
        .map(|_| (0..n).map(|_| small_elem(field, rng)).collect())
        .collect();
    Matrix::from_rows(field, rows).unwrap()
}

pub fn random_invertible(field: &CycField, n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let m = random_matrix(field, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Upper triangular with the given diagonal and small random entries above it.
pub fn upper_triangular(field: &CycField, diag: &[CycQ], rng: &mut impl Rng) -> Matrix {
    let n = diag.len();
    let mut m = Matrix::zeros(field, n);
    for i in 0..n {
        m.set(i, i, diag[i].clone());
        for j in i + 1..n {
            m.set(i, j, small_elem(field, rng));
        }
    }
    m
}

pub fn nonzero_elem(field: &CycField, rng: &mut impl Rng) -> CycQ {
    loop {
        let e = small_elem(field, rng);
        if !e.is_zero() {
            return e;
        }
    }
}

/// A random root of unity of `Q(zeta_N)`, returned with its order.
pub fn random_unit_root(field: &CycField, rng: &mut impl Rng) -> (CycQ, u64) {
    let k = rng.gen_range(0..2 * field.order() as i64);
    let sign = if k % 2 == 0 { field.one() } else { field.from_int(-1) };
    let z = &sign * &field.zeta_pow(k / 2);
    let order = z.root_of_unity_order().unwrap().unwrap();
    (z, order)
}
