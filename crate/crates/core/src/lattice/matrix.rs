//! Dense exact matrices over `Q` and `Z`.
//!
//! Sizes here are tiny (at most a few dozen rows), so everything is plain
//! row-major `Vec<Vec<_>>` with elimination that skips zero entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

pub type QMatrix = Vec<Vec<Q>>;
pub type ZMatrix = Vec<Vec<BigInt>>;

pub fn to_q(m: &[Vec<i64>]) -> QMatrix {
    m.iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
        .collect()
}

pub fn identity_z(n: usize) -> ZMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Determinant by Gaussian elimination with partial pivoting on nonzero
/// entries.
pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        let pivot_row: Vec<(usize, Q)> = (col + 1..n)
            .filter(|&k| !a[col][k].is_zero())
            .map(|k| (k, a[col][k].clone()))
            .collect();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for (k, v) in &pivot_row {
                let delta = &f * v;
                a[r][*k] -= delta;
            }
            a[r][col] = Q::zero();
        }
    }
    det
}

/// Solves `m x = rhs`; `None` when `m` is singular.
pub fn solve(m: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let n = m.len();
    let mut a: QMatrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        let pivot_row: Vec<(usize, Q)> = (col..=n)
            .filter(|&k| !a[col][k].is_zero())
            .map(|k| (k, &a[col][k] / &p))
            .collect();
        for (k, v) in &pivot_row {
            a[col][*k] = v.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for (k, v) in &pivot_row {
                let delta = &f * v;
                a[r][*k] -= delta;
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn inverse(m: &[Vec<Q>]) -> Option<QMatrix> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Q> = (0..n).map(|i| if i == j { Q::one() } else { Q::zero() }).collect();
        cols.push(solve(m, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

pub fn bilinear(gram: &[Vec<Q>], x: &[Q], y: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() || gram[i][j].is_zero() {
                continue;
            }
            acc += xi * &gram[i][j] * yj;
        }
    }
    acc
}

/// Smith normal form `u * a * v = diag(d)` with `d_1 | d_2 | ...`, `d_i >= 0`
/// and `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub u: ZMatrix,
    pub v: ZMatrix,
}

pub fn smith_normal_form(a: &[Vec<BigInt>]) -> Smith {
    let n = a.len();
    let mut m = a.to_vec();
    let mut u = identity_z(n);
    let mut v = identity_z(n);

    fn row_op(m: &mut ZMatrix, dst: usize, src: usize, f: &BigInt) {
        // row_dst -= f * row_src
        let src_row = m[src].clone();
        for (x, s) in m[dst].iter_mut().zip(&src_row) {
            *x -= f * s;
        }
    }
    fn col_op(m: &mut ZMatrix, dst: usize, src: usize, f: &BigInt) {
        for row in m.iter_mut() {
            let s = row[src].clone();
            row[dst] -= f * s;
        }
    }
    fn swap_cols(m: &mut ZMatrix, i: usize, j: usize) {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    }

    for t in 0..n {
        // choose the smallest nonzero entry in the trailing block as pivot
        loop {
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
            let Some((pi, pj)) = best else { break };
            m.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut m, t, pj);
            swap_cols(&mut v, t, pj);

            let mut done = true;
            for i in t + 1..n {
                if !m[i][t].is_zero() {
                    let f = m[i][t].div_floor(&m[t][t]);
                    row_op(&mut m, i, t, &f);
                    row_op(&mut u, i, t, &f);
                    if !m[i][t].is_zero() {
                        done = false;
                    }
                }
            }
            for j in t + 1..n {
                if !m[t][j].is_zero() {
                    let f = m[t][j].div_floor(&m[t][t]);
                    col_op(&mut m, j, t, &f);
                    col_op(&mut v, j, t, &f);
                    if !m[t][j].is_zero() {
                        done = false;
                    }
                }
            }
            if !done {
                continue;
            }
            // divisibility: pivot must divide the trailing block
            let bad = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_multiple_of(&m[t][t]));
            match bad {
                Some((i, _)) => {
                    // row_t += row_i brings the offending entry into row t
                    let minus_one = -BigInt::one();
                    row_op(&mut m, t, i, &minus_one);
                    row_op(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let diag = (0..n).map(|i| m[i][i].clone()).collect();
    Smith { diag, u, v }
}

/// A basis (in echelon form) of the Z-span of integer row vectors.
pub fn row_basis(vectors: &[Vec<BigInt>]) -> ZMatrix {
    let Some(dim) = vectors.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut rows: ZMatrix = vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut basis = Vec::new();
    for col in 0..dim {
        // Euclid on column `col` among the remaining rows
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            for &i in &nz {
                if i == piv {
                    continue;
                }
                let f = rows[i][col].div_floor(&rows[piv][col]);
                let p = rows[piv].clone();
                for (x, s) in rows[i].iter_mut().zip(&p) {
                    *x -= &f * s;
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| !rows[i][col].is_zero()) {
            basis.push(rows.swap_remove(i));
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    basis
}

pub fn mat_mul_z(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> ZMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for (k, aik) in a[i].iter().enumerate() {
                        if !aik.is_zero() {
                            acc += aik * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}
