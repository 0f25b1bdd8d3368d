//! Seeded generators and an independent small-integer oracle shared by the
//! integration tests. The oracle never calls the library's HNF/SNF code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use affine_char::lattice::{IntMat, IntVec};
use affine_char::torus::{pullback_level, Level, TorusMorphism};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub type Small = Vec<Vec<i128>>;

pub fn small(m: &IntMat) -> Small {
    m.to_rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i128().expect("fits in i128"))
                .collect()
        })
        .collect()
}

pub fn small_vec(v: &[BigInt]) -> Vec<i128> {
    v.iter()
        .map(|x| x.to_i128().expect("fits in i128"))
        .collect()
}

pub fn big_vec(v: &[i128]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn big_mat(m: &Small, cols: usize) -> IntMat {
    let rows: Vec<IntVec> = m.iter().map(|r| big_vec(r)).collect();
    if rows.is_empty() {
        return IntMat::zeros(0, cols);
    }
    IntMat::from_big_rows(&rows).unwrap()
}

/// Determinant by cofactor expansion.
pub fn det(m: &Small) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => (0..n)
            .map(|j| {
                let minor = minor(m, 0, j);
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn minor(m: &Small, i: usize, j: usize) -> Small {
    m.iter()
        .enumerate()
        .filter(|(r, _)| *r != i)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(c, _)| *c != j)
                .map(|(_, x)| *x)
                .collect()
        })
        .collect()
}

pub fn adjugate(m: &Small) -> Small {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                    sign * det(&minor(m, j, i))
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(m: &Small, v: &[i128]) -> Vec<i128> {
    m.iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn transpose(m: &Small, cols: usize) -> Small {
    (0..cols)
        .map(|j| m.iter().map(|r| r[j]).collect())
        .collect()
}

pub fn mat_mul(a: &Small, b: &Small, b_cols: usize) -> Small {
    a.iter()
        .map(|r| {
            (0..b_cols)
                .map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum())
                .collect()
        })
        .collect()
}

/// Canonical key of the class of `v` in `Z^n / K Z^n`: `adj(K) v mod |det K|`.
/// `v` lies in `K Z^n` exactly when `adj(K) v` is divisible by `det K`.
pub struct ClassKey {
    adj: Small,
    modulus: i128,
}

impl ClassKey {
    pub fn new(k: &Small) -> Self {
        let d = det(k);
        assert!(d != 0, "singular lattice");
        ClassKey {
            adj: adjugate(k),
            modulus: d.abs(),
        }
    }

    pub fn key(&self, v: &[i128]) -> Vec<i128> {
        mat_vec(&self.adj, v)
            .into_iter()
            .map(|x| x.rem_euclid(self.modulus))
            .collect()
    }

    pub fn index(&self) -> i128 {
        self.modulus
    }
}

/// Classes of `F^T (lambda + K n)` for all `n`, by closing `F^T lambda` under
/// the columns of `F^T K` modulo `K' = F^T K F`.
pub fn oracle_image(
    f: &Small,
    k: &Small,
    source_rank: usize,
    lambda: &[i128],
) -> BTreeSet<Vec<i128>> {
    let n = k.len();
    let ft = transpose(f, source_rank);
    let ftk = mat_mul(&ft, k, n);
    let kp = mat_mul(&ftk, f, source_rank);
    let keys = ClassKey::new(&kp);
    let gens: Vec<Vec<i128>> = (0..n).map(|j| ftk.iter().map(|r| r[j]).collect()).collect();
    let start = mat_vec(&ft, lambda);
    let mut seen: BTreeSet<Vec<i128>> = BTreeSet::from([keys.key(&start)]);
    let mut frontier = vec![start];
    while let Some(v) = frontier.pop() {
        for g in &gens {
            let w: Vec<i128> = v.iter().zip(g).map(|(a, b)| a + b).collect();
            if seen.insert(keys.key(&w)) {
                frontier.push(w);
            }
        }
    }
    seen
}

/// Positive level: `-(B^T B + D)` or a diagonally dominant matrix with
/// negative diagonal, resampled until `1 <= |det| <= max_det`.
pub fn random_positive_level(rng: &mut TestRng, rank: usize, max_det: i128) -> Level {
    loop {
        let m: Small = if rng.gen_bool(0.5) {
            let b: Small = (0..rank)
                .map(|_| (0..rank).map(|_| rng.gen_range(-2..=2)).collect())
                .collect();
            let btb = mat_mul(&transpose(&b, rank), &b, rank);
            (0..rank)
                .map(|i| {
                    (0..rank)
                        .map(|j| -btb[i][j] - if i == j { rng.gen_range(1..=2) } else { 0 })
                        .collect()
                })
                .collect()
        } else {
            let mut m = vec![vec![0i128; rank]; rank];
            for i in 0..rank {
                for j in (i + 1)..rank {
                    let x = rng.gen_range(-1..=1);
                    m[i][j] = x;
                    m[j][i] = x;
                }
            }
            for i in 0..rank {
                let off: i128 = (0..rank).filter(|&j| j != i).map(|j| m[i][j].abs()).sum();
                m[i][i] = -(off + rng.gen_range(1..=3));
            }
            m
        };
        let d = det(&m).abs();
        if d >= 1 && d <= max_det {
            return Level::new(big_mat(&m, rank)).unwrap();
        }
    }
}

/// A local injection `Z^k -> Z^n` (entries in `[-2, 2]`) together with a
/// positive level on the target, such that `|det F^T K F| <= max_pulled`.
pub struct InjectionCase {
    pub f: TorusMorphism,
    pub level: Level,
}

pub fn random_local_injection(
    rng: &mut TestRng,
    max_source: usize,
    max_target: usize,
    max_det: i128,
    max_pulled: i128,
) -> InjectionCase {
    loop {
        let n = rng.gen_range(1..=max_target);
        let k = rng.gen_range(1..=max_source.min(n));
        let level = random_positive_level(rng, n, max_det);
        let f: Small = (0..n)
            .map(|_| (0..k).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        let fm = big_mat(&f, k);
        if fm.rank() < k {
            continue;
        }
        let fm = TorusMorphism::new(fm);
        let Ok(pulled) = pullback_level(&fm, &level) else {
            continue;
        };
        let d = small(pulled.matrix());
        if det(&d).abs() <= max_pulled {
            return InjectionCase { f: fm, level };
        }
    }
}

/// Product of random elementary column operations.
pub fn random_unimodular(rng: &mut TestRng, n: usize) -> IntMat {
    let mut m: Small = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    if n == 0 {
        return IntMat::identity(0);
    }
    for _ in 0..(3 * n) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            if rng.gen_bool(0.3) {
                for row in m.iter_mut() {
                    row[i] = -row[i];
                }
            }
            continue;
        }
        let c = rng.gen_range(-2..=2);
        for row in m.iter_mut() {
            row[i] += c * row[j];
        }
    }
    big_mat(&m, n)
}
