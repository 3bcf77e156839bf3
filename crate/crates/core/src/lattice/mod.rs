//! Integral lattices given by Gram matrices.

mod disc;
pub mod matrix;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::hjcf::{prefix_continuants, HjString};
use crate::rational::{q_int, Q};
use crate::{Error, Result};

pub use crate::padic::DiagonalForm;
pub use disc::{DiscElement, DiscriminantGroup, Subgroup};

/// A symmetric integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GramLattice {
    gram: Vec<Vec<i64>>,
}

impl GramLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::InvalidLattice("rank 0".into()));
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidLattice(format!("row {i} has length {}", row.len())));
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice(format!("not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self { gram })
    }

    /// Rank-1 lattice `<k>`.
    pub fn diag(k: i64) -> Self {
        Self { gram: vec![vec![k]] }
    }

    /// The string lattice `M(-n_1, ..., -n_l)`.
    pub fn from_hj(s: &HjString) -> Self {
        let l = s.len();
        let mut gram = vec![vec![0; l]; l];
        for (i, &n) in s.entries().iter().enumerate() {
            gram[i][i] = -i64::from(n);
            if i + 1 < l {
                gram[i][i + 1] = 1;
                gram[i + 1][i] = 1;
            }
        }
        Self { gram }
    }

    /// Negative definite `A_n`.
    pub fn a(n: usize) -> Self {
        Self::from_hj(&HjString::a_type(n))
    }

    /// Negative definite `D_n` (`n >= 4`): a path of `n - 1` vertices with one
    /// extra vertex on the second-to-last one.
    pub fn d(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::UnknownName(format!("D{n}")));
        }
        let mut edges: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
        edges.push((n - 3, n - 1));
        Ok(Self::from_graph(n, -2, &edges))
    }

    /// Negative definite `E_6`, `E_7`, `E_8`: a path of `n - 1` vertices with
    /// one extra vertex on the third one.
    pub fn e(n: usize) -> Result<Self> {
        if !(6..=8).contains(&n) {
            return Err(Error::UnknownName(format!("E{n}")));
        }
        let mut edges: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
        edges.push((2, n - 1));
        Ok(Self::from_graph(n, -2, &edges))
    }

    /// Hyperbolic plane.
    pub fn h() -> Self {
        Self { gram: vec![vec![0, 1], vec![1, 0]] }
    }

    /// `I_{1,m} = <1> + m<-1>`.
    pub fn i1m(m: usize) -> Self {
        let mut gram = vec![vec![0; m + 1]; m + 1];
        gram[0][0] = 1;
        for (i, row) in gram.iter_mut().enumerate().skip(1) {
            row[i] = -1;
        }
        Self { gram }
    }

    /// `II_{1,8k+1} = H + k E_8`.
    pub fn ii1(k: usize) -> Self {
        let e8 = Self::e(8).unwrap();
        (0..k).fold(Self::h(), |acc, _| acc.direct_sum(&e8))
    }

    fn from_graph(n: usize, self_int: i64, edges: &[(usize, usize)]) -> Self {
        let mut gram = vec![vec![0; n]; n];
        for (i, row) in gram.iter_mut().enumerate() {
            row[i] = self_int;
        }
        for &(i, j) in edges {
            gram[i][j] = 1;
            gram[j][i] = 1;
        }
        Self { gram }
    }

    /// Standard lattices by name: `A<n>`, `D<n>`, `E6`..`E8`, `H`, `I(1,m)`,
    /// `II(1,9)`.
    pub fn named(name: &str) -> Result<Self> {
        let name = name.trim();
        let unknown = || Error::UnknownName(name.to_string());
        let index = |rest: &str| rest.parse::<usize>().map_err(|_| unknown());
        match name {
            "H" => return Ok(Self::h()),
            "II(1,9)" => return Ok(Self::ii1(1)),
            _ => {}
        }
        if let Some(m) = name.strip_prefix("I(1,").and_then(|r| r.strip_suffix(')')) {
            return Ok(Self::i1m(index(m.trim())?));
        }
        if let Some(m) = name.strip_prefix("II(1,").and_then(|r| r.strip_suffix(')')) {
            let m = index(m.trim())?;
            if m % 8 != 1 {
                return Err(unknown());
            }
            return Ok(Self::ii1(m / 8));
        }
        if let Some(rest) = name.strip_prefix('A') {
            let n = index(rest)?;
            return if n >= 1 { Ok(Self::a(n)) } else { Err(unknown()) };
        }
        if let Some(rest) = name.strip_prefix('D') {
            return Self::d(index(rest)?);
        }
        if let Some(rest) = name.strip_prefix('E') {
            return Self::e(index(rest)?);
        }
        Err(unknown())
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }

    pub fn q_gram(&self) -> Vec<Vec<Q>> {
        matrix::to_q(&self.gram)
    }

    pub fn z_gram(&self) -> Vec<Vec<BigInt>> {
        self.gram.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        Self { gram }
    }

    pub fn direct_sum_all<'a>(parts: impl IntoIterator<Item = &'a GramLattice>) -> Option<Self> {
        parts.into_iter().fold(None, |acc: Option<Self>, p| {
            Some(match acc {
                Some(a) => a.direct_sum(p),
                None => p.clone(),
            })
        })
    }

    /// Signed determinant.
    pub fn det(&self) -> BigInt {
        let d = matrix::det(&self.q_gram());
        debug_assert!(d.is_integer());
        d.to_integer()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    /// Diagonal entries, i.e. the self-intersections of the basis curves.
    pub fn self_intersections(&self) -> Vec<i64> {
        (0..self.rank()).map(|i| self.gram[i][i]).collect()
    }

    /// Rational diagonalization by symmetric Gaussian elimination.
    ///
    /// No pivoting happens when every leading principal minor is nonzero
    /// (e.g. for definite lattices); then the entries are the successive
    /// ratios of leading minors, in basis order.
    pub fn diagonalize(&self) -> Result<DiagonalForm> {
        let mut a = self.q_gram();
        let n = a.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            if a[i][i].is_zero() {
                if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                    a.swap(i, j);
                    for row in a.iter_mut() {
                        row.swap(i, j);
                    }
                } else if let Some(j) = (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                    // e_i <- e_i + e_j
                    for k in 0..n {
                        let add = a[j][k].clone();
                        a[i][k] += add;
                    }
                    for row in a.iter_mut() {
                        let add = row[j].clone();
                        row[i] += add;
                    }
                } else {
                    return Err(Error::Degenerate);
                }
            }
            let p = a[i][i].clone();
            let pivot_row: Vec<(usize, Q)> =
                (i + 1..n).filter(|&k| !a[i][k].is_zero()).map(|k| (k, a[i][k].clone())).collect();
            for (j, aij) in &pivot_row {
                let f = aij / &p;
                for (k, aik) in &pivot_row {
                    let delta = &f * aik;
                    a[*j][*k] -= delta;
                }
            }
            for (j, _) in &pivot_row {
                a[*j][i] = Q::zero();
                a[i][*j] = Q::zero();
            }
            out.push(p);
        }
        DiagonalForm::new(out)
    }

    /// `(positive, negative)` inertia.
    pub fn signature(&self) -> Result<(usize, usize)> {
        Ok(self.diagonalize()?.signature())
    }

    pub fn is_negative_definite(&self) -> bool {
        matches!(self.signature(), Ok((0, n)) if n == self.rank())
    }
}

impl fmt::Display for GramLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.gram {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for GramLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.gram.serialize(s)
    }
}

/// Diagonal form of a string lattice in the Gram-Schmidt basis: entries
/// `-[n_i, ..., n_1] = -y_i / y_{i-1}`.
pub fn hj_diagonal(s: &HjString) -> DiagonalForm {
    let ys = prefix_continuants(s.entries());
    let coeffs = ys.windows(2).map(|w| -Q::new(w[1].clone(), w[0].clone())).collect();
    DiagonalForm::new(coeffs).expect("string lattices are nondegenerate")
}

/// Gram matrix of `tau(s)` in the basis `e_1, ..., e_l, e_{l+1}` where
/// `e_1..e_l` carry `-n_1, ..., -n_{l-1}, -(n_l + 1)` and the new `(-2)`-curve
/// `e_{l+1}` meets `e_1`.
pub fn tau_gram(s: &HjString) -> GramLattice {
    let l = s.len();
    let mut gram = GramLattice::from_hj(s).gram;
    gram[l - 1][l - 1] -= 1;
    for row in gram.iter_mut() {
        row.push(0);
    }
    let mut last = vec![0; l + 1];
    last[0] = 1;
    last[l] = -2;
    gram.push(last);
    gram[0][l] = 1;
    GramLattice { gram }
}

/// Closed-form diagonalization of the lattice of `tau(s)` in the basis of
/// [`tau_gram`]: `d_i = c_i` for `i < l`, `d_l = c_l - 1` and
/// `d_{l+1} = -2 + (q_1 + q_{1,l}) / (q + q_l)`.
pub fn tau_diagonal(s: &HjString) -> Result<DiagonalForm> {
    if s.len() < 2 {
        return Err(Error::InvalidString(format!("{s}: tau diagonalization needs length >= 2")));
    }
    let c = hj_diagonal(s).coefficients().to_vec();
    let l = s.len();
    let mut d = c;
    d[l - 1] -= Q::one();
    let (q, q1, ql, q1l) = (s.det(), s.q1(), s.ql(), s.q1l());
    d.push(q_int(-2) + Q::new(q1 + q1l, q + ql));
    DiagonalForm::new(d)
}

/// `-6(n + b)^2 / (6n^2 + 6nb - 1)` for a `T_6` witness.
pub fn t6_last_diagonal(n: &BigInt, b: &BigInt) -> Q {
    let six = BigInt::from(6);
    let nb = n + b;
    Q::new(-(&six * &nb * &nb), &six * n * n + &six * n * b - 1)
}

/// Outcome of adjoining the formal canonical class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    /// The formal canonical class lies in `R (x) Q`.
    NumericallyTrivial,
    Lattice(GramLattice),
}

/// `R + <K>` built from formal data: `K^2` and the products `K . E_i`.
#[derive(Clone, Debug)]
pub struct ExtendedLattice {
    pub base: GramLattice,
    pub k_sq: BigInt,
    pub k_dot: Vec<i64>,
    /// `sum D_p^2 = (K - f^*K)^2`, the square of the projection of `K` to `R (x) Q`.
    pub dp2_total: Q,
    pub result: Extension,
}

impl ExtendedLattice {
    /// Adjoins `K` with `K^2 = 9 - rank(R)` and `K . E_i = -2 - E_i^2`.
    pub fn by_canonical_class(base: &GramLattice) -> Result<Self> {
        if !base.is_negative_definite() {
            return Err(Error::NotNegativeDefinite);
        }
        let k_sq = BigInt::from(9) - BigInt::from(base.rank());
        let k_dot = base.self_intersections().iter().map(|e| -2 - e).collect();
        Self::with_data(base, k_sq, k_dot)
    }

    /// Adjoins a class with arbitrary formal `K^2` and `K . E_i`.
    pub fn with_data(base: &GramLattice, k_sq: BigInt, k_dot: Vec<i64>) -> Result<Self> {
        if k_dot.len() != base.rank() {
            return Err(Error::InvalidLattice("K.E vector has the wrong length".into()));
        }
        let k: Vec<Q> = k_dot.iter().map(|&x| q_int(x)).collect();
        let minus_k: Vec<Q> = k.iter().map(|x| -x).collect();
        let a = matrix::solve(&base.q_gram(), &minus_k).ok_or(Error::Degenerate)?;
        // D = sum a_i E_i with D . E_i = -K . E_i, so D^2 = -a . k
        let dp2_total = -a.iter().zip(&k).map(|(x, y)| x * y).sum::<Q>();
        let k_sq_i64 = i64::try_from(&k_sq)
            .map_err(|_| Error::InvalidLattice("K^2 out of range".into()))?;
        let mut gram = base.gram.clone();
        for (row, &kd) in gram.iter_mut().zip(&k_dot) {
            row.push(kd);
        }
        let mut last = k_dot.clone();
        last.push(k_sq_i64);
        gram.push(last);
        let ext = GramLattice { gram };
        let result = if matrix::det(&ext.q_gram()).is_zero() {
            Extension::NumericallyTrivial
        } else {
            Extension::Lattice(ext)
        };
        Ok(Self { base: base.clone(), k_sq, k_dot, dp2_total, result })
    }

    /// `K_S^2 = K^2 - sum D_p^2`.
    pub fn ks2(&self) -> Q {
        Q::from_integer(self.k_sq.clone()) - &self.dp2_total
    }

    pub fn lattice(&self) -> Option<&GramLattice> {
        match &self.result {
            Extension::Lattice(l) => Some(l),
            Extension::NumericallyTrivial => None,
        }
    }

    pub fn is_numerically_trivial(&self) -> bool {
        matches!(self.result, Extension::NumericallyTrivial)
    }
}
