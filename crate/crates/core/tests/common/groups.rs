//! Small groups with integral representations, randomized into
//! representations over `Z / l^k`.

use galrep_core::faltings_sim::{FiniteGroup, ModRep, PlaceTable, ResidueRing};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Integer generator images of a representation, row-major.
#[derive(Clone)]
pub struct Block {
    pub dim: usize,
    pub images: Vec<Vec<i64>>,
}

pub struct Case {
    pub name: &'static str,
    pub group: FiniteGroup,
    pub blocks: Vec<Block>,
}

pub fn scalar(images: &[i64]) -> Block {
    Block { dim: 1, images: images.iter().map(|&x| vec![x]).collect() }
}

pub fn permutation_block(group: &FiniteGroup) -> Block {
    let gens = group.generators();
    let d = group.permutation(gens[0]).unwrap().len();
    let images = gens
        .iter()
        .map(|&g| {
            let p = group.permutation(g).unwrap();
            let mut m = vec![0; d * d];
            for (x, &y) in p.iter().enumerate() {
                m[y * d + x] = 1;
            }
            m
        })
        .collect();
    Block { dim: d, images }
}

pub fn cases() -> Vec<Case> {
    let s3 = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
    let c6 = FiniteGroup::from_permutations(&[vec![1, 2, 3, 4, 5, 0]]).unwrap();
    let d4 = FiniteGroup::from_permutations(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap();
    let s3_blocks = vec![
        scalar(&[1, 1]),
        scalar(&[-1, 1]),
        Block { dim: 2, images: vec![vec![-1, 1, 0, 1], vec![0, -1, 1, -1]] },
        permutation_block(&s3),
    ];
    let c6_blocks = vec![
        scalar(&[1]),
        scalar(&[-1]),
        Block { dim: 2, images: vec![vec![1, -1, 1, 0]] },
        Block { dim: 2, images: vec![vec![0, -1, 1, -1]] },
        permutation_block(&c6),
    ];
    let d4_blocks = vec![
        scalar(&[1, 1]),
        scalar(&[1, -1]),
        scalar(&[-1, 1]),
        scalar(&[-1, -1]),
        Block { dim: 2, images: vec![vec![0, -1, 1, 0], vec![1, 0, 0, -1]] },
        permutation_block(&d4),
    ];
    vec![
        Case { name: "S3", group: s3, blocks: s3_blocks },
        Case { name: "Z/6", group: c6, blocks: c6_blocks },
        Case { name: "D4", group: d4, blocks: d4_blocks },
    ]
}

pub fn mat_mul(m: u64, n: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + a[i * n + k] * b[k * n + j]) % m;
            }
        }
    }
    out
}

/// A random change of basis and its inverse, as a product of elementary
/// matrices.
pub fn random_basis_change(m: u64, n: usize, rng: &mut ChaCha8Rng) -> (Vec<u64>, Vec<u64>) {
    let mut p = vec![0; n * n];
    let mut q = vec![0; n * n];
    for i in 0..n {
        p[i * n + i] = 1;
        q[i * n + i] = 1;
    }
    if n == 1 {
        return (p, q);
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = rng.gen_range(1..m);
        let mut e = vec![0; n * n];
        let mut e_inv = vec![0; n * n];
        for k in 0..n {
            e[k * n + k] = 1;
            e_inv[k * n + k] = 1;
        }
        e[i * n + j] = c;
        e_inv[i * n + j] = m - c;
        p = mat_mul(m, n, &e, &p);
        q = mat_mul(m, n, &q, &e_inv);
    }
    (p, q)
}

/// Direct sum of the chosen blocks in the given order, conjugated by a
/// random change of basis.
pub fn assemble(
    group: &FiniteGroup,
    ring: ResidueRing,
    blocks: &[Block],
    rng: &mut ChaCha8Rng,
) -> ModRep {
    let n: usize = blocks.iter().map(|b| b.dim).sum();
    let m = ring.modulus;
    let (p, p_inv) = random_basis_change(m, n, rng);
    let images: Vec<Vec<u64>> = (0..group.generators().len())
        .map(|s| {
            let mut big = vec![0u64; n * n];
            let mut at = 0;
            for b in blocks {
                for i in 0..b.dim {
                    for j in 0..b.dim {
                        big[(at + i) * n + at + j] = ring.reduce(b.images[s][i * b.dim + j]);
                    }
                }
                at += b.dim;
            }
            mat_mul(m, n, &mat_mul(m, n, &p, &big), &p_inv)
        })
        .collect();
    ModRep::from_generator_images(group, ring, n, &images).unwrap()
}

pub fn random_blocks(case: &Case, rng: &mut ChaCha8Rng) -> Vec<Block> {
    let count = rng.gen_range(1..=3);
    (0..count).map(|_| case.blocks.choose(rng).unwrap().clone()).collect()
}

/// Every element gets at least one place; extra places repeat random
/// elements; the order is shuffled.
pub fn random_places(group: &FiniteGroup, rng: &mut ChaCha8Rng) -> PlaceTable {
    let mut elements: Vec<usize> = (0..group.order()).collect();
    for _ in 0..rng.gen_range(0..group.order()) {
        elements.push(rng.gen_range(0..group.order()));
    }
    elements.shuffle(rng);
    PlaceTable::new(
        group,
        elements.into_iter().enumerate().map(|(i, g)| (format!("v{i}"), g)).collect(),
    )
    .unwrap()
}

pub fn conjugate(group: &FiniteGroup, a: usize, b: usize) -> bool {
    (0..group.order()).any(|g| group.mul(group.mul(g, a), group.inv(g)) == b)
}

pub fn trace(rep: &ModRep, g: usize) -> u64 {
    let n = rep.dim();
    let m = rep.matrix(g);
    (0..n).map(|i| m[i * n + i]).sum::<u64>() % rep.ring().modulus
}
