//! Smith normal form over the integers with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `left · A · right = diag(diagonal)` with `diagonal[i] | diagonal[i+1]`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: Vec<Vec<BigInt>>,
    pub right: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Smith normal form of a square integer matrix.
pub fn smith_normal_form(a: &[Vec<BigInt>]) -> SmithForm {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut left = identity(n);
    let mut right = identity(n);

    // row r <- row r - f * row t (applied to m and left)
    fn row_op(m: &mut [Vec<BigInt>], t: usize, r: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        let (src, dst) = if t < r {
            let (lo, hi) = m.split_at_mut(r);
            (&lo[t], &mut hi[0])
        } else {
            let (lo, hi) = m.split_at_mut(t);
            (&hi[0], &mut lo[r])
        };
        for (d, s) in dst.iter_mut().zip(src.iter()) {
            *d -= f * s;
        }
    }
    fn col_op(m: &mut [Vec<BigInt>], t: usize, c: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for row in m.iter_mut() {
            let v = f * &row[t];
            row[c] -= v;
        }
    }
    fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }

    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !m[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            m.swap(t, pi);
            left.swap(t, pi);
            swap_cols(&mut m, t, pj);
            swap_cols(&mut right, t, pj);

            let mut clean = true;
            for r in (t + 1)..n {
                let q = m[r][t].div_floor(&m[t][t]);
                row_op(&mut m, t, r, &q);
                row_op(&mut left, t, r, &q);
                if !m[r][t].is_zero() {
                    clean = false;
                }
            }
            for c in (t + 1)..n {
                let q = m[t][c].div_floor(&m[t][t]);
                col_op(&mut m, t, c, &q);
                col_op(&mut right, t, c, &q);
                if !m[t][c].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the rest of the block by the pivot
            let bad = ((t + 1)..n)
                .flat_map(|i| ((t + 1)..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_multiple_of(&m[t][t]));
            match bad {
                Some((i, _)) => {
                    let minus_one = -BigInt::one();
                    row_op(&mut m, i, t, &minus_one);
                    row_op(&mut left, i, t, &minus_one);
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -x.clone();
            }
            for x in left[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }

    SmithForm {
        diagonal: (0..n).map(|i| m[i][i].clone()).collect(),
        left,
        right,
    }
}
