//! Independent brute-force oracles shared by the integration tests.
//!
//! Everything here works with plain integers: a dual vector is stored as
//! `n = G x`, so `x = adj(G) n / det` and `(x, x) = nᵀ adj(G) n / det`.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use vlplus::{DualVector, EvenLattice};

pub fn lattice(rows: &[&[i64]]) -> EvenLattice {
    EvenLattice::from_rows(rows).unwrap()
}

/// Every test lattice of rank at most 3 with determinant at most 16.
pub fn small_lattices() -> Vec<Vec<Vec<i64>>> {
    vec![
        vec![vec![2]],
        vec![vec![4]],
        vec![vec![6]],
        vec![vec![8]],
        vec![vec![2, 0], vec![0, 2]],
        vec![vec![2, 0], vec![0, 4]],
        vec![vec![2, 1], vec![1, 2]],
        vec![vec![2, 1], vec![1, 4]],
        vec![vec![4, 1], vec![1, 4]],
        vec![vec![4, 2], vec![2, 4]],
        vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        vec![vec![2, 1, 0], vec![1, 2, 0], vec![0, 0, 2]],
        vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]],
        vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 4]],
    ]
}

pub fn build(rows: &[Vec<i64>]) -> EvenLattice {
    EvenLattice::from_rows(rows).unwrap()
}

pub struct Brute {
    pub g: Vec<Vec<i64>>,
    pub adj: Vec<Vec<i64>>,
    pub det: i64,
}

fn det3(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => panic!("rank at most 3"),
    }
}

fn minor(m: &[Vec<i64>], r: usize, c: usize) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| *x).collect())
        .collect()
}

impl Brute {
    pub fn new(g: &[Vec<i64>]) -> Brute {
        let d = g.len();
        let det = det3(g);
        let adj = if d == 1 {
            vec![vec![1]]
        } else {
            (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| {
                            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                            s * det3(&minor(g, j, i))
                        })
                        .collect()
                })
                .collect()
        };
        Brute { g: g.to_vec(), adj, det }
    }

    pub fn rank(&self) -> usize {
        self.g.len()
    }

    /// `det · x` for `x = G^{-1} n`.
    pub fn scaled(&self, n: &[i64]) -> Vec<i64> {
        self.adj.iter().map(|r| r.iter().zip(n).map(|(a, b)| a * b).sum()).collect()
    }

    /// `det · (x, x)`.
    pub fn scaled_norm(&self, n: &[i64]) -> i64 {
        let y = self.scaled(n);
        y.iter().zip(n).map(|(a, b)| a * b).sum()
    }

    pub fn dual_vector(&self, n: &[i64]) -> DualVector {
        DualVector(
            self.scaled(n)
                .into_iter()
                .map(|x| BigRational::new(BigInt::from(x), BigInt::from(self.det)))
                .collect(),
        )
    }

    pub fn in_lattice(&self, n: &[i64]) -> bool {
        self.scaled(n).iter().all(|x| x % self.det == 0)
    }

    fn shift(&self, n: &[i64], l: &[i64]) -> Vec<i64> {
        (0..self.rank())
            .map(|i| n[i] + (0..self.rank()).map(|j| self.g[i][j] * l[j]).sum::<i64>())
            .collect()
    }

    /// All `n + G l` with `det·norm ≤ det·bound`, found by scanning a box.
    pub fn coset_vectors(&self, n: &[i64], bound: i64) -> Vec<Vec<i64>> {
        let d = self.rank();
        let x: Vec<f64> = self.scaled(n).iter().map(|v| *v as f64 / self.det as f64).collect();
        let ranges: Vec<(i64, i64)> = (0..d)
            .map(|i| {
                let r = ((bound as f64) * self.adj[i][i] as f64 / self.det as f64).sqrt() + 1.0;
                ((-x[i] - r).floor() as i64, (-x[i] + r).ceil() as i64)
            })
            .collect();
        let mut out = Vec::new();
        let mut l = ranges.iter().map(|r| r.0).collect::<Vec<_>>();
        loop {
            let v = self.shift(n, &l);
            if self.scaled_norm(&v) <= bound * self.det {
                out.push(v);
            }
            let mut k = 0;
            loop {
                if k == d {
                    return out;
                }
                l[k] += 1;
                if l[k] <= ranges[k].1 {
                    break;
                }
                l[k] = ranges[k].0;
                k += 1;
            }
        }
    }

    /// One `n` per class of `L°/L`.
    pub fn cosets(&self) -> Vec<Vec<i64>> {
        let d = self.rank();
        let mut reps: Vec<Vec<i64>> = Vec::new();
        let m = self.det;
        let mut n = vec![0i64; d];
        loop {
            if !reps.iter().any(|r| {
                let diff: Vec<i64> = r.iter().zip(&n).map(|(a, b)| a - b).collect();
                self.in_lattice(&diff)
            }) {
                reps.push(n.clone());
            }
            let mut k = 0;
            loop {
                if k == d {
                    return reps;
                }
                n[k] += 1;
                if n[k] < m {
                    break;
                }
                n[k] = 0;
                k += 1;
            }
        }
    }

    /// `(det · min norm, number of vectors of minimal norm)` in the coset of `n`.
    pub fn minimum(&self, n: &[i64]) -> (i64, usize) {
        let mut bound = 1;
        loop {
            let vs = self.coset_vectors(n, bound);
            if let Some(min) = vs.iter().map(|v| self.scaled_norm(v)).min() {
                let count = vs.iter().filter(|v| self.scaled_norm(v) == min).count();
                return (min, count);
            }
            bound *= 2;
        }
    }

    pub fn self_paired(&self, n: &[i64]) -> bool {
        let twice: Vec<i64> = n.iter().map(|x| 2 * x).collect();
        self.in_lattice(&twice)
    }

    pub fn norm2_count(&self) -> usize {
        let zero = vec![0; self.rank()];
        self.coset_vectors(&zero, 2).iter().filter(|v| self.scaled_norm(v) == 2 * self.det).count()
    }

    /// Rank of the radical of `G mod 2`.
    pub fn r2(&self) -> usize {
        let d = self.rank();
        let mut m: Vec<Vec<i64>> = self.g.iter().map(|r| r.iter().map(|x| x.rem_euclid(2)).collect()).collect();
        let mut rank = 0;
        for c in 0..d {
            if let Some(p) = (rank..d).find(|&r| m[r][c] == 1) {
                m.swap(rank, p);
                for r in 0..d {
                    if r != rank && m[r][c] == 1 {
                        for k in 0..d {
                            m[r][k] = (m[r][k] + m[rank][k]) % 2;
                        }
                    }
                }
                rank += 1;
            }
        }
        d - rank
    }

    /// The pairs `{λ, -λ}` of cosets with `2λ ∉ L`, each as one representative.
    pub fn unpaired_orbits(&self) -> Vec<Vec<i64>> {
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut out = Vec::new();
        let cosets = self.cosets();
        let class = |n: &[i64]| -> Vec<i64> {
            cosets
                .iter()
                .find(|r| {
                    let diff: Vec<i64> = r.iter().zip(n).map(|(a, b)| a - b).collect();
                    self.in_lattice(&diff)
                })
                .unwrap()
                .clone()
        };
        for c in &cosets {
            if self.self_paired(c) || seen.contains(c) {
                continue;
            }
            let neg: Vec<i64> = c.iter().map(|x| -x).collect();
            seen.insert(c.clone());
            seen.insert(class(&neg));
            out.push(c.clone());
        }
        out
    }
}
