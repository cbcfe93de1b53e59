//! Potential equivalence of matrix representations.
//!
//! Two representations are potentially equivalent when they agree after
//! restriction to a finite-index subgroup. For a single matrix (a
//! representation of the integers) this happens exactly when some power of
//! the two semisimple parts have the same characteristic polynomial.
//!
//! Eigenvalue ratios that are roots of unity have bounded degree over the
//! coefficient field `Q(zeta_N)`, so their orders all divide
//! `K0 = lcm{ M : phi(M) <= n^2 phi(N) }` (see [`uniform_m_bound`]).

use std::collections::{HashMap, VecDeque};
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::arith::{checked_lcm, divisors, euler_phi};
use crate::error::{Error, Result};
use crate::exact_algebra::modp::Reduction;
use crate::exact_algebra::{
    char_poly, cyclotomic_poly, power_charpoly, CharPoly, CycField, CycPoly, CycQ, Matrix,
};

pub const DEFAULT_CLOSURE_CAP: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RepKind {
    /// A representation of the integers, given by the image of 1.
    Single,
    /// A representation of a free group, given on generators.
    Free,
    /// A representation with finite image, given on generators.
    Finite,
}

impl RepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RepKind::Single => "single",
            RepKind::Free => "free",
            RepKind::Finite => "finite",
        }
    }
}

impl FromStr for RepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<RepKind> {
        match s {
            "single" => Ok(RepKind::Single),
            "free" => Ok(RepKind::Free),
            "finite" => Ok(RepKind::Finite),
            other => Err(Error::InvalidArgument(format!("unknown kind {other:?}"))),
        }
    }
}

/// A representation given by generator images in `GL_n(Q(zeta_N))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatRep {
    kind: RepKind,
    field: CycField,
    n: usize,
    generators: Vec<Matrix>,
}

impl MatRep {
    pub fn new(kind: RepKind, generators: Vec<Matrix>) -> Result<MatRep> {
        let first = generators
            .first()
            .ok_or_else(|| Error::InvalidArgument("a representation needs a generator".into()))?;
        let field = first.field().clone();
        let n = first.dim();
        for g in &generators[1..] {
            if g.field() != &field {
                return Err(Error::OrderMismatch(field.order(), g.order()));
            }
            if g.dim() != n {
                return Err(Error::DimensionMismatch(n, g.dim()));
            }
        }
        if kind == RepKind::Single && generators.len() != 1 {
            return Err(Error::InvalidArgument(format!(
                "kind single takes exactly one generator, got {}",
                generators.len()
            )));
        }
        if kind == RepKind::Finite {
            if let Some(i) = generators.iter().position(|g| !g.is_invertible()) {
                return Err(Error::SingularGenerator(i));
            }
        }
        Ok(MatRep {
            kind,
            field,
            n,
            generators,
        })
    }

    pub fn kind(&self) -> RepKind {
        self.kind
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

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    /// Product of the generators named by `word`, left to right.
    pub fn word_matrix(&self, word: &[usize]) -> Result<Matrix> {
        let mut acc = Matrix::identity(&self.field, self.n);
        for &i in word {
            let g = self.generators.get(i).ok_or(Error::InvalidIndex {
                index: i,
                count: self.generators.len(),
            })?;
            acc = acc.mul(g)?;
        }
        Ok(acc)
    }

    fn check_comparable(&self, other: &MatRep) -> Result<()> {
        if self.field != other.field {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if self.kind != other.kind {
            return Err(Error::IncompatibleReps(format!(
                "kinds differ: {} vs {}",
                self.kind.as_str(),
                other.kind.as_str()
            )));
        }
        if self.generators.len() != other.generators.len() {
            return Err(Error::IncompatibleReps(format!(
                "generator counts differ: {} vs {}",
                self.generators.len(),
                other.generators.len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeConfig {
    pub closure_cap: usize,
}

impl Default for PeConfig {
    fn default() -> Self {
        PeConfig {
            closure_cap: DEFAULT_CLOSURE_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PEStatus {
    EquivalentWithWitness,
    NotEquivalent,
    UndecidedAtDepth,
}

/// Evidence that two matrices are not potentially equivalent.
///
/// Group the eigenvalues into classes modulo roots of unity and let `a_C`,
/// `b_C` count those of each input in class `C`. Then `first_self_pairs =
/// sum a_C^2`, `second_self_pairs = sum b_C^2`, `cross_pairs = sum a_C b_C`,
/// and the inputs are potentially equivalent iff `sum (a_C - b_C)^2 = 0`.
/// The counts cover nonzero eigenvalues only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioCertificate {
    pub zero_eigenvalues: [usize; 2],
    pub first_self_pairs: u64,
    pub second_self_pairs: u64,
    pub cross_pairs: u64,
}

impl RatioCertificate {
    /// `sum_C (a_C - b_C)^2`, plus the zero-eigenvalue discrepancy.
    pub fn imbalance(&self) -> u64 {
        let [z1, z2] = self.zero_eigenvalues;
        (self.first_self_pairs + self.second_self_pairs - 2 * self.cross_pairs)
            + (z1.abs_diff(z2) as u64).pow(2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PEVerdict {
    pub status: PEStatus,
    pub witness_m: Option<u64>,
    pub counterexample: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<RatioCertificate>,
}

impl PEVerdict {
    fn equivalent(m: u64) -> PEVerdict {
        PEVerdict {
            status: PEStatus::EquivalentWithWitness,
            witness_m: Some(m),
            counterexample: None,
            certificate: None,
        }
    }

    fn not_equivalent(word: Vec<usize>, certificate: Option<RatioCertificate>) -> PEVerdict {
        PEVerdict {
            status: PEStatus::NotEquivalent,
            witness_m: None,
            counterexample: Some(word),
            certificate,
        }
    }

    pub fn is_equivalent(&self) -> bool {
        self.status == PEStatus::EquivalentWithWitness
    }
}

/// `Tr(rho(w)^m)` for the word `w`.
pub fn m_character(rep: &MatRep, word: &[usize], m: u64) -> Result<CycQ> {
    if m == 0 {
        return Err(Error::ZeroExponent);
    }
    Ok(rep.word_matrix(word)?.pow(m).trace())
}

fn primes_up_to(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut sieve = vec![true; limit + 1];
    let mut out = Vec::new();
    for p in 2..=limit {
        if sieve[p] {
            out.push(p as u64);
            let mut q = p * p;
            while q <= limit {
                sieve[q] = false;
                q += p;
            }
        }
    }
    out
}

/// All `M >= 1` with `phi(M) <= bound`, ascending.
pub fn moduli_with_phi_at_most(bound: u64) -> Vec<u64> {
    fn walk(primes: &[u64], start: usize, m: u64, phi: u64, bound: u64, out: &mut Vec<u64>) {
        out.push(m);
        for (i, &p) in primes.iter().enumerate().skip(start) {
            if phi * (p - 1) > bound {
                break;
            }
            let (mut pk, mut phik) = (p, p - 1);
            while phi * phik <= bound {
                walk(primes, i + 1, m * pk, phi * phik, bound, out);
                pk *= p;
                phik *= p;
            }
        }
    }
    let mut out = Vec::new();
    if bound == 0 {
        return out;
    }
    let primes = primes_up_to(bound + 1);
    walk(&primes, 0, 1, 1, bound, &mut out);
    out.sort_unstable();
    out
}

fn phi_budget(n: usize, order: usize) -> Result<u64> {
    if n == 0 || order == 0 {
        return Err(Error::InvalidArgument(
            "uniform_m_bound needs n >= 1 and N >= 1".into(),
        ));
    }
    (n as u64)
        .checked_mul(n as u64)
        .and_then(|s| s.checked_mul(euler_phi(order as u64)))
        .ok_or(Error::Overflow("n^2 phi(N)"))
}

/// `K0 = lcm{ M : phi(M) <= n^2 phi(N) }`.
pub fn uniform_m_bound(n: usize, order: usize) -> Result<BigUint> {
    let bound = phi_budget(n, order)?;
    // the lcm is the product over primes of the largest admissible power
    let mut k0 = BigUint::one();
    for p in primes_up_to(bound + 1) {
        let mut pk = 1u64;
        let mut phik = p - 1;
        while phik <= bound {
            pk *= p;
            phik *= p;
        }
        k0 *= BigUint::from(pk);
    }
    Ok(k0)
}

/// Count roots of `s` that are roots of unity of the given orders, with
/// multiplicity. Returns the count and the orders that occur.
fn root_of_unity_roots(s: &CycPoly, orders: &[u64]) -> (u64, Vec<u64>) {
    let field = s.field().clone();
    let mut rest = s.clone();
    let mut count = 0u64;
    let mut seen = Vec::new();
    let filter = (0..3).find_map(|k| {
        let r = Reduction::new(field.order(), k);
        r.poly(s).map(|image| (r, image))
    });
    for &m in orders {
        if rest.degree().unwrap_or(0) == 0 {
            break;
        }
        if let Some((r, image)) = &filter {
            let phi_p = r.integers(&cyclotomic_poly(m as usize));
            if r.gcd_degree(image, &phi_p) == 0 {
                continue;
            }
        }
        let phi_m = CycPoly::from_ints(&field, &cyclotomic_poly(m as usize));
        let mut g = rest.gcd(&phi_m);
        let mut hit = false;
        while g.degree().unwrap_or(0) > 0 {
            hit = true;
            count += g.degree().unwrap() as u64;
            rest = rest.divrem(&g).expect("gcd is nonzero").0;
            g = rest.gcd(&g);
        }
        if hit {
            seen.push(m);
        }
    }
    (count, seen)
}

fn strip_zero_roots(p: &CharPoly) -> (usize, CharPoly) {
    let z = p.zero_root_multiplicity();
    let lower = p.lower_coeffs()[z..].to_vec();
    let q = CharPoly::from_lower_coeffs(p.field(), lower).expect("same field");
    (z, q)
}

fn ratio_poly(a: &Matrix, b_inv: &Matrix) -> CycPoly {
    char_poly(&a.kronecker(b_inv).expect("same field")).to_poly()
}

/// Decides whether some power of `g1` and of `g2` have conjugate semisimple
/// parts, returning the least such power as the witness.
pub fn elementwise_pe(g1: &Matrix, g2: &Matrix) -> Result<PEVerdict> {
    if g1.field() != g2.field() {
        return Err(Error::OrderMismatch(g1.order(), g2.order()));
    }
    if g1.dim() != g2.dim() {
        return Err(Error::DimensionMismatch(g1.dim(), g2.dim()));
    }
    let p1 = char_poly(g1);
    let p2 = char_poly(g2);
    charpoly_pe(&p1, &p2)
}

/// [`elementwise_pe`] on characteristic polynomials.
pub fn charpoly_pe(p1: &CharPoly, p2: &CharPoly) -> Result<PEVerdict> {
    if p1.field() != p2.field() {
        return Err(Error::OrderMismatch(p1.field().order(), p2.field().order()));
    }
    if p1.degree() != p2.degree() {
        return Err(Error::DimensionMismatch(p1.degree(), p2.degree()));
    }
    if p1 == p2 {
        return Ok(PEVerdict::equivalent(1));
    }
    let field = p1.field().clone();
    let (z1, q1) = strip_zero_roots(p1);
    let (z2, q2) = strip_zero_roots(p2);
    if z1 != z2 {
        let certificate = RatioCertificate {
            zero_eigenvalues: [z1, z2],
            first_self_pairs: 0,
            second_self_pairs: 0,
            cross_pairs: 0,
        };
        return Ok(PEVerdict::not_equivalent(vec![0], Some(certificate)));
    }
    let k = q1.degree();
    let c1 = Matrix::companion(&q1)?;
    let c2 = Matrix::companion(&q2)?;
    let c1_inv = c1.inverse().expect("constant term is nonzero");
    let c2_inv = c2.inverse().expect("constant term is nonzero");

    // a ratio of two roots has degree <= k^2 over Q(zeta_N), so a root of
    // unity ratio of order M has phi(lcm(M, N)) <= k^2 phi(N)
    let n_field = field.order() as u64;
    let budget = phi_budget(k, field.order())?;
    let orders: Vec<u64> = moduli_with_phi_at_most(budget)
        .into_iter()
        .filter(|&m| euler_phi(m / m.gcd(&n_field) * n_field) <= budget)
        .collect();

    let (self1, seen1) = root_of_unity_roots(&ratio_poly(&c1, &c1_inv), &orders);
    let (self2, seen2) = root_of_unity_roots(&ratio_poly(&c2, &c2_inv), &orders);
    let (cross, seen12) = root_of_unity_roots(&ratio_poly(&c1, &c2_inv), &orders);
    if self1 + self2 != 2 * cross {
        let certificate = RatioCertificate {
            zero_eigenvalues: [z1, z2],
            first_self_pairs: self1,
            second_self_pairs: self2,
            cross_pairs: cross,
        };
        return Ok(PEVerdict::not_equivalent(vec![0], Some(certificate)));
    }

    // validity of a power k depends only on gcd(k, L)
    let mut l = 1u64;
    for m in seen1.iter().chain(&seen2).chain(&seen12) {
        l = checked_lcm(l, *m).ok_or(Error::Overflow("witness period"))?;
    }
    for d in divisors(l) {
        if power_charpoly(p1, d)? == power_charpoly(p2, d)? {
            return Ok(PEVerdict::equivalent(d));
        }
    }
    unreachable!("the period of all root-of-unity ratios is itself a witness")
}

/// Decides potential equivalence of two representations.
///
/// For `single` the answer is exact. For `finite` the answer is always
/// equivalent, and the witness is the least `m` with equal m-power characters
/// on the whole image. For `free` every word of length `1..=depth` is tested
/// elementwise; a failing word is a counterexample, otherwise the verdict is
/// `undecided_at_depth`.
pub fn pe_decide(rep1: &MatRep, rep2: &MatRep, depth: usize) -> Result<PEVerdict> {
    pe_decide_with(rep1, rep2, depth, &PeConfig::default())
}

pub fn pe_decide_with(
    rep1: &MatRep,
    rep2: &MatRep,
    depth: usize,
    config: &PeConfig,
) -> Result<PEVerdict> {
    rep1.check_comparable(rep2)?;
    if rep1.generators == rep2.generators {
        return Ok(PEVerdict::equivalent(1));
    }
    match rep1.kind {
        RepKind::Single => elementwise_pe(&rep1.generators[0], &rep2.generators[0]),
        RepKind::Finite => finite_pe(rep1, rep2, config),
        RepKind::Free => free_pe(rep1, rep2, depth),
    }
}

fn free_pe(rep1: &MatRep, rep2: &MatRep, depth: usize) -> Result<PEVerdict> {
    let r = rep1.generators.len();
    for len in 1..=depth {
        let mut word = vec![0usize; len];
        loop {
            let verdict = elementwise_pe(&rep1.word_matrix(&word)?, &rep2.word_matrix(&word)?)?;
            if !verdict.is_equivalent() {
                return Ok(PEVerdict::not_equivalent(word, verdict.certificate));
            }
            if !next_word(&mut word, r) {
                break;
            }
        }
    }
    Ok(PEVerdict {
        status: PEStatus::UndecidedAtDepth,
        witness_m: None,
        counterexample: None,
        certificate: None,
    })
}

/// Advances `word` to its lexicographic successor; false after the last.
fn next_word(word: &mut [usize], alphabet: usize) -> bool {
    for i in (0..word.len()).rev() {
        if word[i] + 1 < alphabet {
            word[i] += 1;
            for w in &mut word[i + 1..] {
                *w = 0;
            }
            return true;
        }
    }
    false
}

/// The group generated by the pairs `(rho1(s), rho2(s))`, in BFS order.
#[derive(Debug, Clone)]
pub struct PairedClosure {
    /// `(rho1(g), rho2(g))`; index 0 is the identity.
    pub elements: Vec<(Matrix, Matrix)>,
    /// A shortest generator word reaching each element.
    pub words: Vec<Vec<usize>>,
    /// `edges[i][s]` is the index of `elements[i] * generator s`.
    pub edges: Vec<Vec<usize>>,
}

impl PairedClosure {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Order of element `i` in the group.
    pub fn element_order(&self, i: usize) -> u64 {
        let (a, b) = &self.elements[i];
        let (mut x, mut y) = (a.clone(), b.clone());
        let mut k = 1;
        while !(x.is_identity() && y.is_identity()) {
            x = x.mul(a).expect("same shape");
            y = y.mul(b).expect("same shape");
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> Result<u64> {
        let mut e = 1u64;
        for i in 0..self.len() {
            e = checked_lcm(e, self.element_order(i)).ok_or(Error::Overflow("group exponent"))?;
        }
        Ok(e)
    }
}

pub fn paired_closure(rep1: &MatRep, rep2: &MatRep, cap: usize) -> Result<PairedClosure> {
    if rep1.generators.len() != rep2.generators.len() {
        return Err(Error::ClosureMismatch(format!(
            "{} generators vs {}",
            rep1.generators.len(),
            rep2.generators.len()
        )));
    }
    if rep1.field != rep2.field {
        return Err(Error::OrderMismatch(rep1.order(), rep2.order()));
    }
    let gens: Vec<(&Matrix, &Matrix)> = rep1.generators.iter().zip(&rep2.generators).collect();
    let identity = (
        Matrix::identity(&rep1.field, rep1.n),
        Matrix::identity(&rep2.field, rep2.n),
    );
    let mut index = HashMap::new();
    index.insert(identity.clone(), 0usize);
    let mut closure = PairedClosure {
        elements: vec![identity],
        words: vec![Vec::new()],
        edges: Vec::new(),
    };
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let mut row = Vec::with_capacity(gens.len());
        for (s, (g1, g2)) in gens.iter().enumerate() {
            let (a, b) = &closure.elements[i];
            let next = (a.mul(g1)?, b.mul(g2)?);
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    let j = closure.elements.len();
                    if j >= cap {
                        return Err(Error::ClosureCapExceeded(cap));
                    }
                    let mut word = closure.words[i].clone();
                    word.push(s);
                    index.insert(next.clone(), j);
                    closure.elements.push(next);
                    closure.words.push(word);
                    queue.push_back(j);
                    j
                }
            };
            row.push(j);
        }
        closure.edges.push(row);
    }
    Ok(closure)
}

fn finite_pe(rep1: &MatRep, rep2: &MatRep, config: &PeConfig) -> Result<PEVerdict> {
    let closure = paired_closure(rep1, rep2, config.closure_cap)?;
    let e = closure.exponent()?;
    for m in divisors(e) {
        let agree = closure
            .elements
            .iter()
            .all(|(a, b)| a.pow(m).trace() == b.pow(m).trace());
        if agree {
            return Ok(PEVerdict::equivalent(m));
        }
    }
    unreachable!("every element raised to the exponent is the identity")
}

/// A linear character of a finite group, valued in the `root_order`-th roots
/// of unity of the coefficient field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearCharacter {
    pub root_order: u64,
    /// `chi(s_i) = zeta^{generator_exponents[i]}`.
    pub generator_exponents: Vec<u64>,
    /// `chi(g) = zeta^{exponents[g]}` over the paired closure.
    pub exponents: Vec<u64>,
    pub values: Vec<CycQ>,
    /// Generator words for the closure elements, aligned with `values`.
    pub words: Vec<Vec<usize>>,
}

/// A generator of the roots of unity in `Q(zeta_N)`, of order `lcm(2, N)`.
fn field_unit_root(field: &CycField) -> (u64, CycQ) {
    let n = field.order() as u64;
    if n % 2 == 0 {
        (n, field.zeta_pow(1))
    } else {
        (2 * n, -field.zeta_pow(n.div_ceil(2) as i64))
    }
}

/// Searches the linear characters `chi` of the common finite image for one
/// with `Tr rho2(g) = chi(g) Tr rho1(g)` for every `g`.
///
/// Characters are enumerated by their generator exponents in lexicographic
/// order, so the trivial character is tried first.
pub fn twist_equivalent_finite(
    rep1: &MatRep,
    rep2: &MatRep,
    config: &PeConfig,
) -> Result<Option<LinearCharacter>> {
    for rep in [rep1, rep2] {
        if rep.kind != RepKind::Finite {
            return Err(Error::IncompatibleReps(format!(
                "twists need kind finite, got {}",
                rep.kind.as_str()
            )));
        }
    }
    if rep1.n != rep2.n {
        return Err(Error::DimensionMismatch(rep1.n, rep2.n));
    }
    let closure = paired_closure(rep1, rep2, config.closure_cap)?;
    let (root_order, zeta) = field_unit_root(&rep1.field);
    let r = rep1.generators.len();
    let steps: Vec<u64> = (0..r)
        .map(|s| {
            let g = closure.edges[0][s];
            let ord = closure.element_order(g);
            root_order / root_order.gcd(&ord)
        })
        .collect();
    let tr1: Vec<CycQ> = closure.elements.iter().map(|(a, _)| a.trace()).collect();
    let tr2: Vec<CycQ> = closure.elements.iter().map(|(_, b)| b.trace()).collect();
    let powers: Vec<CycQ> = (0..root_order).map(|k| zeta.pow(k)).collect();

    let mut gen_exps = vec![0u64; r];
    loop {
        if let Some(exps) = propagate(&closure, &gen_exps, root_order) {
            let matches = (0..closure.len())
                .all(|g| tr2[g] == &powers[exps[g] as usize] * &tr1[g]);
            if matches {
                return Ok(Some(LinearCharacter {
                    root_order,
                    generator_exponents: gen_exps,
                    values: exps.iter().map(|&k| powers[k as usize].clone()).collect(),
                    exponents: exps,
                    words: closure.words,
                }));
            }
        }
        // odometer over multiples of each step, last generator fastest
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            gen_exps[i] += steps[i];
            if gen_exps[i] < root_order {
                break;
            }
            gen_exps[i] = 0;
        }
    }
}

/// Extends generator exponents to the closure; `None` if inconsistent.
fn propagate(closure: &PairedClosure, gen_exps: &[u64], root_order: u64) -> Option<Vec<u64>> {
    let mut exps: Vec<Option<u64>> = vec![None; closure.len()];
    exps[0] = Some(0);
    // BFS order guarantees each element is assigned before it is expanded
    for i in 0..closure.len() {
        let base = exps[i].expect("assigned by an earlier element");
        for (s, &j) in closure.edges[i].iter().enumerate() {
            let value = (base + gen_exps[s]) % root_order;
            match exps[j] {
                None => exps[j] = Some(value),
                Some(v) if v != value => return None,
                Some(_) => {}
            }
        }
    }
    Some(exps.into_iter().map(|e| e.expect("closure is connected")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> CycField {
        CycField::new(1).unwrap()
    }

    fn ints(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_int_rows(&q(), rows).unwrap()
    }

    #[test]
    fn m_character_examples() {
        let rot = MatRep::new(RepKind::Single, vec![ints(&[vec![0, -1], vec![1, 0]])]).unwrap();
        assert_eq!(m_character(&rot, &[0], 2).unwrap(), q().from_int(-2));
        let d = MatRep::new(RepKind::Single, vec![ints(&[vec![1, 0], vec![0, 2]])]).unwrap();
        assert_eq!(m_character(&d, &[0], 3).unwrap(), q().from_int(9));
        let id = MatRep::new(RepKind::Free, vec![ints(&[vec![1, 0], vec![0, 1]])]).unwrap();
        assert_eq!(m_character(&id, &[0, 0, 0], 5).unwrap(), q().from_int(2));
        assert!(matches!(
            m_character(&id, &[1], 1),
            Err(Error::InvalidIndex { index: 1, count: 1 })
        ));
    }

    #[test]
    fn uniform_bound_examples() {
        assert_eq!(uniform_m_bound(1, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(uniform_m_bound(2, 1).unwrap(), BigUint::from(120u32));
        assert_eq!(uniform_m_bound(1, 4).unwrap(), BigUint::from(12u32));
        assert_eq!(
            moduli_with_phi_at_most(4),
            vec![1, 2, 3, 4, 5, 6, 8, 10, 12]
        );
    }

    #[test]
    fn elementwise_examples() {
        let rot = ints(&[vec![0, -1], vec![1, 0]]);
        let id = ints(&[vec![1, 0], vec![0, 1]]);
        let v = elementwise_pe(&rot, &id).unwrap();
        assert_eq!(v.status, PEStatus::EquivalentWithWitness);
        assert_eq!(v.witness_m, Some(4));

        let v = elementwise_pe(&ints(&[vec![1, 0], vec![0, 2]]), &ints(&[vec![1, 0], vec![0, 3]]))
            .unwrap();
        assert_eq!(v.status, PEStatus::NotEquivalent);
        assert!(v.certificate.unwrap().imbalance() > 0);

        assert_eq!(elementwise_pe(&rot, &rot).unwrap().witness_m, Some(1));
    }

    #[test]
    fn zero_eigenvalues_must_match() {
        let a = ints(&[vec![0, 0], vec![0, 1]]);
        let b = ints(&[vec![1, 0], vec![0, 1]]);
        let v = elementwise_pe(&a, &b).unwrap();
        assert_eq!(v.status, PEStatus::NotEquivalent);
        assert_eq!(v.certificate.unwrap().zero_eigenvalues, [1, 0]);
        let c = ints(&[vec![0, 0], vec![0, -1]]);
        assert_eq!(elementwise_pe(&a, &c).unwrap().witness_m, Some(2));
    }

    #[test]
    fn single_i_versus_minus_i() {
        let f = CycField::new(4).unwrap();
        let i = Matrix::from_rows(&f, vec![vec![f.zeta_pow(1)]]).unwrap();
        let mi = Matrix::from_rows(&f, vec![vec![-f.zeta_pow(1)]]).unwrap();
        let r1 = MatRep::new(RepKind::Single, vec![i]).unwrap();
        let r2 = MatRep::new(RepKind::Single, vec![mi]).unwrap();
        let v = pe_decide(&r1, &r2, 0).unwrap();
        assert_eq!(v.status, PEStatus::EquivalentWithWitness);
        assert_eq!(v.witness_m, Some(2));
    }

    #[test]
    fn free_unipotent_is_undecided() {
        let u = MatRep::new(RepKind::Free, vec![ints(&[vec![1, 1], vec![0, 1]])]).unwrap();
        let id = MatRep::new(RepKind::Free, vec![ints(&[vec![1, 0], vec![0, 1]])]).unwrap();
        let v = pe_decide(&u, &id, 3).unwrap();
        assert_eq!(v.status, PEStatus::UndecidedAtDepth);
        assert!(pe_decide(&u, &u, 3).unwrap().is_equivalent());
    }

    #[test]
    fn free_counterexample_is_first_in_order() {
        let a = ints(&[vec![1, 0], vec![0, 1]]);
        let b = ints(&[vec![2, 0], vec![0, 1]]);
        let r1 = MatRep::new(RepKind::Free, vec![a.clone(), a.clone()]).unwrap();
        let r2 = MatRep::new(RepKind::Free, vec![a, b]).unwrap();
        let v = pe_decide(&r1, &r2, 2).unwrap();
        assert_eq!(v.status, PEStatus::NotEquivalent);
        assert_eq!(v.counterexample, Some(vec![1]));
    }

    #[test]
    fn finite_exponent_witness() {
        let rot = ints(&[vec![0, -1], vec![1, 0]]);
        let flip = ints(&[vec![-1, 0], vec![0, -1]]);
        let r1 = MatRep::new(RepKind::Finite, vec![rot]).unwrap();
        let r2 = MatRep::new(RepKind::Finite, vec![flip]).unwrap();
        let v = pe_decide(&r1, &r2, 0).unwrap();
        // squares are -I and I
        assert_eq!(v.witness_m, Some(4));
        let cap = PeConfig { closure_cap: 3 };
        assert_eq!(
            pe_decide_with(&r1, &r2, 0, &cap),
            Err(Error::ClosureCapExceeded(3))
        );
    }

    #[test]
    fn twist_examples() {
        let f = CycField::new(4).unwrap();
        let one = |c: CycQ| MatRep::new(RepKind::Finite, vec![Matrix::from_rows(&f, vec![vec![c]]).unwrap()]).unwrap();
        let i = one(f.zeta_pow(1));
        let mi = one(-f.zeta_pow(1));
        let chi = twist_equivalent_finite(&i, &mi, &PeConfig::default())
            .unwrap()
            .unwrap();
        assert_eq!(chi.generator_exponents, vec![2]);
        assert_eq!(chi.values[1], f.from_int(-1));

        let same = twist_equivalent_finite(&i, &i, &PeConfig::default())
            .unwrap()
            .unwrap();
        assert!(same.values.iter().all(|v| v.is_one()));

        let triv = one(f.one());
        let sign = one(f.from_int(-1));
        let chi = twist_equivalent_finite(&triv, &sign, &PeConfig::default())
            .unwrap()
            .unwrap();
        assert_eq!(chi.values, vec![f.one(), f.from_int(-1)]);
    }

    #[test]
    fn unit_root_generates() {
        for n in 1..=12 {
            let f = CycField::new(n).unwrap();
            let (order, z) = field_unit_root(&f);
            assert_eq!(z.root_of_unity_order().unwrap(), Some(order));
        }
    }
}
