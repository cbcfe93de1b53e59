//! Square matrices over Q(zeta_N).

use std::fmt;

use super::cyclo::{CycField, CycQ};
use super::poly::{CharPoly, CycPoly};
use crate::error::{Error, Result};

/// An `n x n` matrix over a single cyclotomic field, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: CycField,
    n: usize,
    entries: Vec<CycQ>,
}

impl Matrix {
    pub fn from_rows(field: &CycField, rows: Vec<Vec<CycQ>>) -> Result<Matrix> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare);
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::OrderMismatch(field.order(), e.order()));
                }
                entries.push(e);
            }
        }
        Ok(Matrix {
            field: field.clone(),
            n,
            entries,
        })
    }

    /// Integer matrix embedded in Q(zeta_N).
    pub fn from_int_rows(field: &CycField, rows: &[Vec<i64>]) -> Result<Matrix> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        Matrix::from_rows(field, rows)
    }

    pub fn identity(field: &CycField, n: usize) -> Matrix {
        Matrix::scalar(field, n, &field.one())
    }

    pub fn zeros(field: &CycField, n: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            n,
            entries: vec![field.zero(); n * n],
        }
    }

    pub fn scalar(field: &CycField, n: usize, c: &CycQ) -> Matrix {
        let mut m = Matrix::zeros(field, n);
        for i in 0..n {
            m.entries[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(field: &CycField, diag: &[CycQ]) -> Matrix {
        let n = diag.len();
        let mut m = Matrix::zeros(field, n);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d.clone();
        }
        m
    }

    /// Companion matrix whose characteristic polynomial is `p`.
    pub fn companion(p: &CharPoly) -> Result<Matrix> {
        let n = p.degree();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let field = p.field();
        let mut m = Matrix::zeros(field, n);
        for i in 1..n {
            m.entries[i * n + (i - 1)] = field.one();
        }
        for (i, a) in p.lower_coeffs().iter().enumerate() {
            m.entries[i * n + (n - 1)] = -a;
        }
        Ok(m)
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.field.order()
    }

    pub fn get(&self, i: usize, j: usize) -> &CycQ {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: CycQ) {
        assert!(value.field() == &self.field);
        self.entries[i * self.n + j] = value;
    }

    pub fn rows(&self) -> Vec<Vec<CycQ>> {
        self.entries.chunks(self.n).map(<[CycQ]>::to_vec).collect()
    }

    fn check_compatible(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        let n = self.n;
        let mut out = Matrix::zeros(&self.field, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        Ok(Matrix {
            field: self.field.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        Ok(Matrix {
            field: self.field.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &CycQ) -> Matrix {
        Matrix {
            field: self.field.clone(),
            n: self.n,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.n);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same shape");
            }
        }
        acc
    }

    pub fn trace(&self) -> CycQ {
        let mut t = self.field.zero();
        for i in 0..self.n {
            t += self.get(i, i);
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycQ::is_zero)
    }

    /// Determinant by Gaussian elimination with row swaps.
    pub fn det(&self) -> CycQ {
        let n = self.n;
        let mut a = self.rows();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return self.field.zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] * &inv;
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= &delta;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    /// Inverse by Gauss-Jordan elimination, `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = Matrix::identity(&self.field, n).rows();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(p, col);
            inv.swap(p, col);
            let pinv = a[col][col].inv()?;
            for c in 0..n {
                a[col][c] = &a[col][c] * &pinv;
                inv[col][c] = &inv[col][c] * &pinv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let d1 = &factor * &a[col][c];
                    a[r][c] -= &d1;
                    let d2 = &factor * &inv[col][c];
                    inv[r][c] -= &d2;
                }
            }
        }
        Some(Matrix::from_rows(&self.field, inv).expect("square"))
    }

    /// Kronecker product `self (x) other`.
    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        let (n, m) = (self.n, other.n);
        let mut out = Matrix::zeros(&self.field, n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out.entries[(i * m + k) * (n * m) + (j * m + l)] = a * other.get(k, l);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `p(self)` for a polynomial `p`, by Horner's rule.
    pub fn eval_poly(&self, p: &CycPoly) -> Matrix {
        let mut acc = Matrix::zeros(&self.field, self.n);
        for c in p.coeffs().iter().rev() {
            acc = acc
                .mul(self)
                .expect("same shape")
                .add(&Matrix::scalar(&self.field, self.n, c))
                .expect("same shape");
        }
        acc
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over Q(zeta_{}) [", self.n, self.n, self.order())?;
        for row in self.entries.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Characteristic polynomial via reduction to upper Hessenberg form.
pub fn char_poly(m: &Matrix) -> CharPoly {
    let n = m.dim();
    let field = m.field().clone();
    let mut h = m.rows();

    // similarity transform to upper Hessenberg form
    for col in 0..n.saturating_sub(2) {
        let Some(p) = (col + 1..n).find(|&r| !h[r][col].is_zero()) else {
            continue;
        };
        if p != col + 1 {
            h.swap(p, col + 1);
            for row in h.iter_mut() {
                row.swap(p, col + 1);
            }
        }
        let pinv = h[col + 1][col].inv().expect("pivot is nonzero");
        for r in col + 2..n {
            if h[r][col].is_zero() {
                continue;
            }
            let u = &h[r][col] * &pinv;
            for c in 0..n {
                let d = &u * &h[col + 1][c];
                h[r][c] -= &d;
            }
            for row in h.iter_mut() {
                let d = &u * &row[r];
                row[col + 1] += &d;
            }
        }
    }

    // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1}^{k} h_{j,j-1}) p_{i-1}
    let x = CycPoly::x_pow(&field, 1);
    let mut ps: Vec<CycPoly> = vec![CycPoly::constant(field.one())];
    for k in 0..n {
        let mut next = x
            .sub(&CycPoly::constant(h[k][k].clone()))
            .mul(&ps[k]);
        let mut prod = field.one();
        for i in (0..k).rev() {
            prod = &prod * &h[i + 1][i];
            if prod.is_zero() {
                break;
            }
            let c = &h[i][k] * &prod;
            if !c.is_zero() {
                next = next.sub(&ps[i].scale(&c));
            }
        }
        ps.push(next);
    }
    CharPoly::from_poly(&ps[n]).expect("characteristic polynomial is monic")
}

/// Characteristic polynomial whose roots are the `k`-th powers of the roots
/// of `p`, with multiplicity.
///
/// Computes `r = x^k mod p` and returns the characteristic polynomial of
/// multiplication by `r` on `F[x]/(p)`.
pub fn power_charpoly(p: &CharPoly, k: u64) -> Result<CharPoly> {
    if k == 0 {
        return Err(Error::ZeroExponent);
    }
    let n = p.degree();
    if n == 0 || k == 1 {
        return Ok(p.clone());
    }
    let field = p.field().clone();
    let modulus = p.to_poly();
    let r = CycPoly::x_pow_mod(k, &modulus)?;
    let x = CycPoly::x_pow(&field, 1);
    let mut mult = Matrix::zeros(&field, n);
    let mut col = r;
    for j in 0..n {
        for i in 0..n {
            mult.set(i, j, col.coeff(i));
        }
        if j + 1 < n {
            col = col.mul(&x).rem(&modulus)?;
        }
    }
    Ok(char_poly(&mult))
}

/// Invariant factors of `m` over Q(zeta_N): the non-constant monic diagonal
/// entries of the Smith normal form of `xI - m`, each dividing the next.
pub fn invariant_factors(m: &Matrix) -> Vec<CycPoly> {
    let n = m.dim();
    let field = m.field().clone();
    let mut a: Vec<Vec<CycPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = CycPoly::constant(-m.get(i, j));
                    if i == j {
                        c.add(&CycPoly::x_pow(&field, 1))
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();

    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            // pivot: nonzero entry of least degree in the trailing block
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, e) in row.iter().enumerate().skip(t) {
                    if let Some(d) = e.degree() {
                        if best.map_or(true, |(_, _, bd)| d < bd) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..n {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].divrem(&a[t][t]).expect("pivot is nonzero");
                for j in t..n {
                    let d = q.mul(&a[t][j]);
                    a[i][j] = a[i][j].sub(&d);
                }
                clean &= r.is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].divrem(&a[t][t]).expect("pivot is nonzero");
                for row in a.iter_mut().skip(t) {
                    let d = q.mul(&row[t]);
                    row[j] = row[j].sub(&d);
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole trailing block
            let offender = (t + 1..n).find(|&i| {
                (t + 1..n).any(|j| !a[i][j].rem(&a[t][t]).expect("nonzero").is_zero())
            });
            match offender {
                Some(i) => {
                    for j in t..n {
                        let s = a[t][j].add(&a[i][j]);
                        a[t][j] = s;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].monic());
    }
    diag.into_iter()
        .filter(|d| d.degree().is_some_and(|d| d > 0))
        .collect()
}

/// Whether `a` and `b` are conjugate in GL_n(Q(zeta_N)).
pub fn are_conjugate(a: &Matrix, b: &Matrix) -> Result<bool> {
    a.check_compatible(b)?;
    if a == b {
        return Ok(true);
    }
    if char_poly(a) != char_poly(b) {
        return Ok(false);
    }
    Ok(invariant_factors(a) == invariant_factors(b))
}
