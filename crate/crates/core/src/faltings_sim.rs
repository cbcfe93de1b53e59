//! Finite-quotient simulation of test-set selection: a finite group standing
//! in for a Galois image, a table assigning group elements to places,
//! greedy covering of conjugacy classes, and trace/span checks for
//! representations over `Z / l^k`.

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;
use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Groups above this order get a sampled rather than exhaustive
/// homomorphism check.
pub const EXHAUSTIVE_CHECK_LIMIT: usize = 200;
/// Largest group produced by [`FiniteGroup::from_permutations`].
pub const MAX_GROUP_ORDER: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    permutations: Option<Vec<Vec<usize>>>,
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table, `table[a][b] = a*b`,
    /// checking closure, identity, inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not a closed square array".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverses,
            generators: (0..n).collect(),
            permutations: None,
        })
    }

    /// The permutation group generated by `gens`, each a permutation of
    /// `0..d` in one-line notation. Products act right to left:
    /// `(g h)(x) = g(h(x))`. Elements are numbered in breadth-first order
    /// from the identity, and element `i + 1` is generator `i` when the
    /// generators are distinct and nontrivial.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<FiniteGroup> {
        let degree = gens.first().map_or(0, Vec::len);
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(Error::InvalidGroup("permutations of unequal degree".into()));
            }
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::InvalidGroup(format!("{g:?} is not a permutation")));
                }
                seen[x] = true;
            }
        }
        let compose = |g: &[usize], h: &[usize]| -> Vec<usize> { h.iter().map(|&x| g[x]).collect() };
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        let mut generators = Vec::with_capacity(gens.len());
        for g in gens {
            let i = *index.entry(g.clone()).or_insert_with(|| {
                elements.push(g.clone());
                queue.push_back(elements.len() - 1);
                elements.len() - 1
            });
            generators.push(i);
        }
        while let Some(a) = queue.pop_front() {
            for g in gens {
                let next = compose(&elements[a], g);
                if !index.contains_key(&next) {
                    if elements.len() >= MAX_GROUP_ORDER {
                        return Err(Error::ClosureCapExceeded(MAX_GROUP_ORDER));
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        let n = elements.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| index[&compose(&elements[a], &elements[b])]).collect())
            .collect();
        let inverses = (0..n)
            .map(|a| {
                let mut inv = vec![0; degree];
                for (x, &y) in elements[a].iter().enumerate() {
                    inv[y] = x;
                }
                index[&inv]
            })
            .collect();
        Ok(FiniteGroup {
            table,
            identity: 0,
            inverses,
            generators,
            permutations: Some(elements),
        })
    }

    /// The cyclic group of order `n`, with element `i` the `i`-th power of
    /// the generator `1`.
    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::InvalidGroup("order must be at least 1".into()));
        }
        let mut g = FiniteGroup::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())?;
        g.generators = vec![1 % n];
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// A generating set: the generators given at construction, or every
    /// element for groups built from a table.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// The permutation of element `a`, for permutation groups.
    pub fn permutation(&self, a: usize) -> Option<&[usize]> {
        self.permutations.as_ref().map(|p| p[a].as_slice())
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    fn check(&self, a: usize) -> Result<()> {
        if a < self.order() {
            Ok(())
        } else {
            Err(Error::InvalidElement(a))
        }
    }
}

/// Conjugacy classes, each sorted, ordered by least element.
pub fn conjugacy_classes(group: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = group.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for g in 0..n {
            let c = group.mul(group.mul(g, a), group.inv(g));
            if class_of[c] == usize::MAX {
                class_of[c] = id;
                members.push(c);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

fn class_index(classes: &[Vec<usize>], order: usize) -> Vec<usize> {
    let mut out = vec![0; order];
    for (i, class) in classes.iter().enumerate() {
        for &a in class {
            out[a] = i;
        }
    }
    out
}

/// An assignment of group elements (Frobenius classes) to labelled places.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaceTable {
    places: Vec<(String, usize)>,
}

impl PlaceTable {
    pub fn new(group: &FiniteGroup, places: Vec<(String, usize)>) -> Result<PlaceTable> {
        let mut labels = std::collections::HashSet::new();
        for (label, g) in &places {
            group.check(*g)?;
            if !labels.insert(label.as_str()) {
                return Err(Error::InvalidArgument(format!("duplicate place label {label:?}")));
            }
        }
        Ok(PlaceTable { places })
    }

    pub fn places(&self) -> &[(String, usize)] {
        &self.places
    }

    pub fn element(&self, label: &str) -> Result<usize> {
        self.places
            .iter()
            .find(|(l, _)| l == label)
            .map(|&(_, g)| g)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown place {label:?}")))
    }
}

fn uncovered(classes: &[Vec<usize>], hit: &[bool]) -> Option<Error> {
    hit.iter().position(|h| !h).map(|class| Error::UncoverableClass {
        class,
        element: classes[class][0],
    })
}

/// Greedy choice of places whose elements meet every conjugacy class.
///
/// Each step takes the place that meets the most still-uncovered classes,
/// the earliest such place on ties, so `|T|` never exceeds the number of
/// classes.
pub fn frobenius_cover(group: &FiniteGroup, places: &PlaceTable) -> Result<Vec<String>> {
    let classes = conjugacy_classes(group);
    let class_of = class_index(&classes, group.order());
    let mut reachable = vec![false; classes.len()];
    for (_, g) in places.places() {
        reachable[class_of[*g]] = true;
    }
    if let Some(err) = uncovered(&classes, &reachable) {
        return Err(err);
    }
    let mut covered = vec![false; classes.len()];
    let mut chosen = Vec::new();
    let mut used = vec![false; places.places().len()];
    while covered.iter().any(|c| !c) {
        let mut best: Option<(usize, usize)> = None;
        for (i, (_, g)) in places.places().iter().enumerate() {
            if used[i] {
                continue;
            }
            let gain = usize::from(!covered[class_of[*g]]);
            if gain > 0 && best.is_none_or(|(_, b)| gain > b) {
                best = Some((i, gain));
            }
        }
        let (i, _) = best.expect("every class is reachable");
        used[i] = true;
        covered[class_of[places.places()[i].1]] = true;
        chosen.push(places.places()[i].0.clone());
    }
    Ok(chosen)
}

/// Checks that the places in `cover` meet every conjugacy class.
pub fn covers_all_classes(group: &FiniteGroup, places: &PlaceTable, cover: &[String]) -> Result<bool> {
    let classes = conjugacy_classes(group);
    let class_of = class_index(&classes, group.order());
    let mut hit = vec![false; classes.len()];
    for label in cover {
        hit[class_of[places.element(label)?]] = true;
    }
    Ok(hit.iter().all(|&h| h))
}

/// Arithmetic in `Z / l^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ResidueRing {
    pub ell: u64,
    pub k: u32,
    pub modulus: u64,
}

impl ResidueRing {
    pub fn new(ell: u64, k: u32) -> Result<ResidueRing> {
        if !is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("exponent k must be at least 1".into()));
        }
        let modulus = ell
            .checked_pow(k)
            .filter(|&m| m <= u64::from(u32::MAX))
            .ok_or(Error::Overflow("l^k"))?;
        Ok(ResidueRing { ell, k, modulus })
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.modulus
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.modulus - b) % self.modulus
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.modulus
    }

    /// `l`-adic valuation, `k` for zero.
    fn valuation(&self, mut a: u64) -> u32 {
        if a == 0 {
            return self.k;
        }
        let mut v = 0;
        while a % self.ell == 0 {
            a /= self.ell;
            v += 1;
        }
        v
    }

    fn unit_inverse(&self, a: u64) -> u64 {
        let g = (a as i128).extended_gcd(&(self.modulus as i128));
        debug_assert_eq!(g.gcd, 1);
        g.x.rem_euclid(self.modulus as i128) as u64
    }

    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.modulus as i64) as u64
    }
}

/// Row-major square matrix over a residue ring.
pub type ModMatrix = Vec<u64>;

fn mat_mul(ring: &ResidueRing, n: usize, a: &[u64], b: &[u64]) -> ModMatrix {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = ring.add(out[i * n + j], ring.mul(x, b[k * n + j]));
            }
        }
    }
    out
}

fn mat_identity(n: usize) -> ModMatrix {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// Whether the matrix is invertible over `Z / l^k`, i.e. its reduction mod
/// `l` is nonsingular.
fn invertible(ring: &ResidueRing, n: usize, a: &[u64]) -> bool {
    let p = ring.ell;
    let mut m: Vec<u64> = a.iter().map(|x| x % p).collect();
    let inv = |x: u64| -> u64 {
        let g = (x as i128).extended_gcd(&(p as i128));
        g.x.rem_euclid(p as i128) as u64
    };
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| m[r * n + c] != 0) else {
            return false;
        };
        for j in 0..n {
            m.swap(c * n + j, r * n + j);
        }
        let pivot_inv = inv(m[c * n + c]);
        for r in c + 1..n {
            let f = m[r * n + c] * pivot_inv % p;
            if f != 0 {
                for j in c..n {
                    m[r * n + j] = (m[r * n + j] + p * p - f * m[c * n + j] % p) % p;
                }
            }
        }
    }
    true
}

/// A representation of a finite group by invertible matrices over
/// `Z / l^k`, stored as one matrix per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModRep {
    ring: ResidueRing,
    dim: usize,
    matrices: Vec<ModMatrix>,
}

impl ModRep {
    /// Builds the representation from one matrix per element and verifies
    /// invertibility and multiplicativity.
    pub fn from_matrices(
        group: &FiniteGroup,
        ring: ResidueRing,
        dim: usize,
        matrices: Vec<ModMatrix>,
    ) -> Result<ModRep> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if matrices.len() != group.order() {
            return Err(Error::DimensionMismatch(matrices.len(), group.order()));
        }
        for (g, m) in matrices.iter().enumerate() {
            if m.len() != dim * dim {
                return Err(Error::NotSquare);
            }
            if m.iter().any(|&x| x >= ring.modulus) {
                return Err(Error::InvalidArgument(format!(
                    "entries of element {g} are not reduced mod {}",
                    ring.modulus
                )));
            }
            if !invertible(&ring, dim, m) {
                return Err(Error::NotInvertibleMod(g, ring.modulus));
            }
        }
        let rep = ModRep { ring, dim, matrices };
        rep.check_homomorphism(group)?;
        Ok(rep)
    }

    /// Extends images of the group's generators to every element by
    /// breadth-first search, then verifies the result.
    pub fn from_generator_images(
        group: &FiniteGroup,
        ring: ResidueRing,
        dim: usize,
        images: &[ModMatrix],
    ) -> Result<ModRep> {
        let gens = group.generators();
        if images.len() != gens.len() {
            return Err(Error::DimensionMismatch(images.len(), gens.len()));
        }
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if images.iter().any(|m| m.len() != dim * dim) {
            return Err(Error::NotSquare);
        }
        let mut slots: Vec<Option<ModMatrix>> = vec![None; group.order()];
        slots[group.identity()] = Some(mat_identity(dim));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(a) = queue.pop_front() {
            let ma = slots[a].clone().expect("queued elements are assigned");
            for (&s, img) in gens.iter().zip(images) {
                let b = group.mul(a, s);
                if slots[b].is_none() {
                    slots[b] = Some(mat_mul(&ring, dim, &ma, img));
                    queue.push_back(b);
                }
            }
        }
        let matrices = slots
            .into_iter()
            .enumerate()
            .map(|(g, m)| {
                m.ok_or_else(|| Error::InvalidGroup(format!("element {g} is not generated")))
            })
            .collect::<Result<Vec<_>>>()?;
        ModRep::from_matrices(group, ring, dim, matrices)
    }

    fn check_homomorphism(&self, group: &FiniteGroup) -> Result<()> {
        let n = group.order();
        // large groups: every element against an evenly spaced sample
        let step = n.div_ceil(EXHAUSTIVE_CHECK_LIMIT).max(1);
        for g in 0..n {
            for h in (0..n).step_by(step) {
                let lhs = &self.matrices[group.mul(g, h)];
                let rhs = mat_mul(&self.ring, self.dim, &self.matrices[g], &self.matrices[h]);
                if *lhs != rhs {
                    return Err(Error::NotHomomorphism(g, h));
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &[u64] {
        &self.matrices[g]
    }

    pub fn trace(&self, g: usize) -> u64 {
        let m = &self.matrices[g];
        (0..self.dim).fold(0, |acc, i| self.ring.add(acc, m[i * self.dim + i]))
    }
}

/// `log_l` of the size of the submodule of `(Z / l^k)^width` spanned by
/// `rows`, computed by elimination with minimal-valuation pivots.
fn span_log_size(ring: &ResidueRing, mut rows: Vec<Vec<u64>>) -> u64 {
    let mut total = 0u64;
    loop {
        let mut best: Option<(usize, usize, u32)> = None;
        for (r, row) in rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                let v = ring.valuation(x);
                if v < ring.k && best.is_none_or(|(_, _, bv)| v < bv) {
                    best = Some((r, c, v));
                }
            }
        }
        let Some((r, c, v)) = best else {
            return total;
        };
        total += u64::from(ring.k - v);
        let mut pivot = rows.swap_remove(r);
        let unit = pivot[c] / ring.ell.pow(v);
        let scale = ring.unit_inverse(unit);
        for x in pivot.iter_mut() {
            *x = ring.mul(*x, scale);
        }
        // pivot[c] = l^v, and every entry of every row has valuation >= v
        let step = ring.ell.pow(v);
        for row in rows.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = row[c] / step;
            for (x, &p) in row.iter_mut().zip(&pivot) {
                *x = ring.sub(*x, ring.mul(f, p));
            }
        }
        // remaining entries of the pivot row are cleared by column moves,
        // which do not change the isomorphism type of the span
    }
}

/// Outcome of [`trace_determination_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceCheck {
    /// Agreement on the places of `T` implies agreement on all of `G`.
    pub holds: bool,
    pub traces_agree_on_cover: bool,
    pub traces_agree_everywhere: bool,
    /// First place of `T` whose class separates the two traces.
    pub distinguishing_place: Option<String>,
    /// Index (in [`conjugacy_classes`] order) of the first class on which
    /// the traces differ.
    pub distinguishing_class: Option<usize>,
    /// Whether `rho1(g) + rho2(g)` for `g` in the classes meeting `T` span
    /// the same module as all `g`.
    pub spans_equal: bool,
    pub span_log_size_cover: u64,
    pub span_log_size_all: u64,
    /// Same comparison using only the elements assigned to the places of
    /// `T`. Reported for information; no implication is claimed.
    pub single_representative_spans_equal: bool,
    pub span_log_size_representatives: u64,
}

pub fn trace_determination_check(
    group: &FiniteGroup,
    rho1: &ModRep,
    rho2: &ModRep,
    cover: &[String],
    places: &PlaceTable,
) -> Result<TraceCheck> {
    let order = group.order();
    if rho1.matrices.len() != order || rho2.matrices.len() != order {
        return Err(Error::IncompatibleReps("representations of different groups".into()));
    }
    if rho1.ring != rho2.ring {
        return Err(Error::IncompatibleReps(format!(
            "moduli differ: {} vs {}",
            rho1.ring.modulus, rho2.ring.modulus
        )));
    }
    let classes = conjugacy_classes(group);
    let class_of = class_index(&classes, order);
    let mut meets = vec![false; classes.len()];
    let mut reps = Vec::with_capacity(cover.len());
    for label in cover {
        let g = places.element(label)?;
        meets[class_of[g]] = true;
        reps.push((label.clone(), g));
    }
    if let Some(err) = uncovered(&classes, &meets) {
        return Err(err);
    }

    let differs = |g: usize| rho1.trace(g) != rho2.trace(g);
    let distinguishing_place = reps.iter().find(|(_, g)| differs(*g)).map(|(l, _)| l.clone());
    let distinguishing_class = classes.iter().position(|c| differs(c[0]));
    let traces_agree_on_cover = distinguishing_place.is_none();
    let traces_agree_everywhere = (0..order).all(|g| !differs(g));

    let ring = rho1.ring;
    let row = |g: usize| -> Vec<u64> { rho1.matrix(g).iter().chain(rho2.matrix(g)).copied().collect() };
    let cover_rows: Vec<Vec<u64>> = (0..order).filter(|&g| meets[class_of[g]]).map(row).collect();
    let all_rows: Vec<Vec<u64>> = (0..order).map(row).collect();
    let rep_rows: Vec<Vec<u64>> = reps.iter().map(|&(_, g)| row(g)).collect();
    let span_log_size_cover = span_log_size(&ring, cover_rows);
    let span_log_size_all = span_log_size(&ring, all_rows);
    let span_log_size_representatives = span_log_size(&ring, rep_rows);

    Ok(TraceCheck {
        holds: !traces_agree_on_cover || traces_agree_everywhere,
        traces_agree_on_cover,
        traces_agree_everywhere,
        distinguishing_place,
        distinguishing_class,
        // a submodule of a finite module with the same size is the module
        spans_equal: span_log_size_cover == span_log_size_all,
        span_log_size_cover,
        span_log_size_all,
        single_representative_spans_equal: span_log_size_representatives == span_log_size_all,
        span_log_size_representatives,
    })
}
