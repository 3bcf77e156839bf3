//! Independent oracles for the integration tests: plain Gaussian
//! elimination over `BigRational`, written without the crate's helpers.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_q(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

/// Determinant by elimination with row swaps.
pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

/// Solves `m x = rhs` for nonsingular `m` by Gauss-Jordan elimination.
pub fn solve(m: &[Vec<Q>], rhs: &[Q]) -> Vec<Q> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.iter().zip(rhs).map(|(r, b)| {
        let mut r = r.clone();
        r.push(b.clone());
        r
    }).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("nonsingular");
        a.swap(p, c);
        let piv = a[c][c].clone();
        for k in c..=n {
            a[c][k] = &a[c][k] / &piv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in c..=n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n].clone()).collect()
}

/// Diagonal of the Gram-Schmidt orthogonalization in the given basis order:
/// ratios of consecutive leading principal minors.
pub fn gram_schmidt_diagonal(m: &[Vec<Q>]) -> Vec<Q> {
    let mut prev = Q::one();
    (1..=m.len())
        .map(|k| {
            let minor: Vec<Vec<Q>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            let d = det(&minor);
            let out = &d / &prev;
            prev = d;
            out
        })
        .collect()
}

/// Discrepancies `a` with `G a = (2 + G_ii)` and `D^2 = a . (2 + G_ii)`.
pub fn discrepancy(g: &[Vec<i64>]) -> (Vec<Q>, Q) {
    let rhs: Vec<Q> = (0..g.len()).map(|i| q(2 + g[i][i])).collect();
    let a = solve(&to_q(g), &rhs);
    let d2 = a.iter().zip(&rhs).map(|(x, y)| x * y).fold(Q::zero(), |s, t| s + t);
    (a, d2)
}

/// Gram matrix of a chain with self-intersections `-n_i`.
pub fn chain(ns: &[u32]) -> Vec<Vec<i64>> {
    let l = ns.len();
    let mut g = vec![vec![0i64; l]; l];
    for i in 0..l {
        g[i][i] = -i64::from(ns[i]);
        if i + 1 < l {
            g[i][i + 1] = 1;
            g[i + 1][i] = 1;
        }
    }
    g
}

/// Continuant of a chain, by the three-term recurrence.
pub fn continuant(ns: &[u32]) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for &n in ns {
        let c = BigInt::from(n) * &b - &a;
        a = b;
        b = c;
    }
    b
}

/// Hilbert symbol from the textbook formulas, on `i128` values with
/// Euler's criterion for the Legendre symbol. `p = 0` is the real place.
pub fn hilbert_oracle(a: i128, b: i128, p: u64) -> i8 {
    assert!(a != 0 && b != 0);
    if p == 0 {
        return if a < 0 && b < 0 { -1 } else { 1 };
    }
    let p = i128::from(p);
    let split = |mut x: i128| {
        let mut v = 0;
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        (v, x)
    };
    let (alpha, u) = split(a);
    let (beta, v) = split(b);
    if p == 2 {
        let eps = |x: i128| ((x.rem_euclid(8) - 1) / 2) % 2;
        let omega = |x: i128| {
            let r = x.rem_euclid(8);
            ((r * r - 1) / 8) % 2
        };
        let e = eps(u) * eps(v) + (alpha % 2) * omega(v) + (beta % 2) * omega(u);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let legendre = |x: i128| {
        let mut r = 1i128;
        let mut base = x.rem_euclid(p);
        let mut e = (p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        if r == 1 { 1 } else { -1 }
    };
    let mut s = if (alpha % 2) * (beta % 2) * (((p - 1) / 2) % 2) == 1 { -1 } else { 1 };
    if beta % 2 == 1 {
        s *= legendre(u);
    }
    if alpha % 2 == 1 {
        s *= legendre(v);
    }
    s
}
