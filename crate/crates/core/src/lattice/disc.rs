//! Discriminant groups `L^* / L` and their quadratic forms.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::matrix::{self, QMatrix};
use super::GramLattice;
use crate::rational::{q_int, Q};
use crate::{Error, Result};

/// Largest group the subgroup enumeration will touch.
pub const ENUMERATION_CAP: u64 = 1 << 16;

/// Coordinates of an element with respect to the invariant-factor
/// generators.
pub type DiscElement = Vec<u64>;

/// `L^* / L` with generators `g_i = V e_i / d_i` coming from the Smith form
/// `U G V = diag(d)`.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    /// Nontrivial invariant factors `d_1 | d_2 | ...`.
    pub invariant_factors: Vec<u64>,
    /// Generators as dual vectors in the coordinates of the lattice basis.
    pub generators: Vec<Vec<Q>>,
    /// `q(g_i)` reduced to `[0, 2)`; only for even lattices.
    pub q_values: Option<Vec<Q>>,
    gram: QMatrix,
    /// Rows of `U` for the nontrivial factors.
    coord_rows: Vec<Vec<BigInt>>,
    /// `b(g_i, g_j)` as exact rationals (not reduced).
    pairing: QMatrix,
    even: bool,
}

/// A subgroup, as the sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    pub elements: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.elements.binary_search(&idx).is_ok()
    }
}

/// Reduces into `[0, m)`.
fn reduce_mod(x: &Q, m: i64) -> Q {
    let m = q_int(m);
    let k = (x / &m).floor();
    x - k * m
}

impl DiscriminantGroup {
    pub fn of(lattice: &GramLattice) -> Result<Self> {
        if lattice.det().is_zero() {
            return Err(Error::Degenerate);
        }
        let smith = matrix::smith_normal_form(&lattice.z_gram());
        let gram = lattice.q_gram();
        let n = lattice.rank();
        let mut invariant_factors = Vec::new();
        let mut generators = Vec::new();
        let mut coord_rows = Vec::new();
        for i in 0..n {
            let d = &smith.diag[i];
            if d.is_one() {
                continue;
            }
            invariant_factors.push(
                d.to_u64()
                    .ok_or_else(|| Error::CapExceeded(d.to_string()))?,
            );
            generators.push(
                (0..n)
                    .map(|r| Q::new(smith.v[r][i].clone(), d.clone()))
                    .collect::<Vec<_>>(),
            );
            coord_rows.push(smith.u[i].clone());
        }
        let pairing: QMatrix = generators
            .iter()
            .map(|x| generators.iter().map(|y| matrix::bilinear(&gram, x, y)).collect())
            .collect();
        let even = lattice.is_even();
        let q_values = even.then(|| {
            (0..generators.len())
                .map(|i| reduce_mod(&pairing[i][i], 2))
                .collect()
        });
        Ok(Self {
            invariant_factors,
            generators,
            q_values,
            gram,
            coord_rows,
            pairing,
            even,
        })
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// `l(L)`, the minimal number of generators.
    pub fn min_generators(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    /// Group coordinates of a dual vector `x` (`G x` must be integral).
    pub fn coords_of(&self, dual: &[Q]) -> Result<DiscElement> {
        let y: Vec<Q> = self.gram.iter().map(|row| row.iter().zip(dual).map(|(a, b)| a * b).sum()).collect();
        if y.iter().any(|v| !v.is_integer()) {
            return Err(Error::InvalidLattice("vector is not in the dual lattice".into()));
        }
        let y: Vec<BigInt> = y.into_iter().map(|v| v.to_integer()).collect();
        Ok(self
            .coord_rows
            .iter()
            .zip(&self.invariant_factors)
            .map(|(row, &d)| {
                let c: BigInt = row.iter().zip(&y).map(|(a, b)| a * b).sum();
                c.mod_floor(&BigInt::from(d)).to_u64().unwrap()
            })
            .collect())
    }

    /// A dual vector representing the element.
    pub fn dual_vector(&self, c: &[u64]) -> Vec<Q> {
        let n = self.gram.len();
        let mut out = vec![Q::zero(); n];
        for (g, &k) in self.generators.iter().zip(c) {
            if k == 0 {
                continue;
            }
            for (o, gi) in out.iter_mut().zip(g) {
                *o += gi * q_int(k as i64);
            }
        }
        out
    }

    /// `q(x)` in `[0, 2)`.
    pub fn q(&self, c: &[u64]) -> Result<Q> {
        if !self.even {
            return Err(Error::OddLattice);
        }
        Ok(reduce_mod(&self.raw_form(c, c), 2))
    }

    /// `b(x, y)` in `[0, 1)`.
    pub fn b(&self, x: &[u64], y: &[u64]) -> Q {
        reduce_mod(&self.raw_form(x, y), 1)
    }

    fn raw_form(&self, x: &[u64], y: &[u64]) -> Q {
        let mut acc = Q::zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                acc += &self.pairing[i][j] * q_int((xi * yj) as i64);
            }
        }
        acc
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> DiscElement {
        x.iter()
            .zip(y)
            .zip(&self.invariant_factors)
            .map(|((a, b), d)| (a + b) % d)
            .collect()
    }

    pub fn index(&self, c: &[u64]) -> usize {
        let mut idx = 0usize;
        for (&x, &d) in c.iter().zip(&self.invariant_factors) {
            idx = idx * d as usize + x as usize;
        }
        idx
    }

    pub fn element(&self, mut idx: usize) -> DiscElement {
        let mut c = vec![0; self.invariant_factors.len()];
        for (slot, &d) in c.iter_mut().zip(&self.invariant_factors).rev() {
            *slot = (idx % d as usize) as u64;
            idx /= d as usize;
        }
        c
    }

    fn check_cap(&self) -> Result<usize> {
        let order = self.order();
        if order > ENUMERATION_CAP {
            return Err(Error::CapExceeded(order.to_string()));
        }
        Ok(order as usize)
    }

    /// Subgroup generated by a set of elements.
    pub fn span(&self, gens: &[DiscElement]) -> Subgroup {
        let zero = vec![0; self.invariant_factors.len()];
        let mut seen: HashSet<usize> = HashSet::from([self.index(&zero)]);
        let mut stack = vec![zero];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(self.index(&y)) {
                    stack.push(y);
                }
            }
        }
        let mut elements: Vec<usize> = seen.into_iter().collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn is_isotropic(&self, a: &Subgroup) -> Result<bool> {
        for &i in &a.elements {
            if !self.q(&self.element(i))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All isotropic subgroups of the given order.
    pub fn isotropic_subgroups(&self, order: usize) -> Result<Vec<Subgroup>> {
        let total = self.check_cap()?;
        if !self.even {
            return Err(Error::OddLattice);
        }
        let isotropic: Vec<usize> = (0..total)
            .filter(|&i| self.q(&self.element(i)).map(|q| q.is_zero()).unwrap_or(false))
            .collect();
        let trivial = self.span(&[]);
        let mut found: HashSet<Subgroup> = HashSet::new();
        let mut seen: HashSet<Subgroup> = HashSet::from([trivial.clone()]);
        let mut frontier = vec![trivial];
        while let Some(h) = frontier.pop() {
            if h.order() == order {
                found.insert(h);
                continue;
            }
            for &x in &isotropic {
                if h.contains(x) {
                    continue;
                }
                let mut gens: Vec<DiscElement> = h.elements.iter().map(|&i| self.element(i)).collect();
                gens.push(self.element(x));
                let bigger = self.span(&gens);
                if bigger.order() > order || !order.is_multiple_of(bigger.order()) {
                    continue;
                }
                if !self.is_isotropic(&bigger)? {
                    continue;
                }
                if seen.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        let mut out: Vec<Subgroup> = found.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// `A^perp` with respect to the discriminant bilinear form.
    pub fn orthogonal(&self, a: &Subgroup) -> Result<Subgroup> {
        let total = self.check_cap()?;
        let a_elems: Vec<DiscElement> = a.elements.iter().map(|&i| self.element(i)).collect();
        let elements = (0..total)
            .filter(|&i| {
                let x = self.element(i);
                a_elems.iter().all(|y| self.b(&x, y).is_zero())
            })
            .collect();
        Ok(Subgroup { elements })
    }

    /// Whether `big / small` is cyclic (`small` must be a subgroup of `big`).
    pub fn quotient_is_cyclic(&self, big: &Subgroup, small: &Subgroup) -> bool {
        let target = big.order() / small.order();
        big.elements.iter().any(|&i| {
            let x = self.element(i);
            let mut k = 1;
            let mut y = x.clone();
            while !small.contains(self.index(&y)) {
                y = self.add(&y, &x);
                k += 1;
            }
            k == target
        })
    }

    /// The over-lattice `M = L + A` inside `L^*`, in a new integral basis.
    pub fn overlattice(&self, a: &Subgroup) -> Result<GramLattice> {
        if !self.is_isotropic(a)? {
            return Err(Error::NotIsotropic);
        }
        let n = self.gram.len();
        let mut vectors: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
        vectors.extend(a.elements.iter().map(|&i| self.dual_vector(&self.element(i))));
        let mut denom = BigInt::one();
        for v in &vectors {
            for x in v {
                denom = denom.lcm(x.denom());
            }
        }
        let scaled: Vec<Vec<BigInt>> = vectors
            .iter()
            .map(|v| v.iter().map(|x| (x * Q::from_integer(denom.clone())).to_integer()).collect())
            .collect();
        let basis: Vec<Vec<Q>> = matrix::row_basis(&scaled)
            .into_iter()
            .map(|r| r.into_iter().map(|x| Q::new(x, denom.clone())).collect())
            .collect();
        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = matrix::bilinear(&self.gram, &basis[i], &basis[j]);
                if !v.is_integer() {
                    return Err(Error::InvalidLattice("over-lattice is not integral".into()));
                }
                gram[i][j] = v
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::InvalidLattice("entry out of range".into()))?;
            }
        }
        let m = GramLattice::new(gram)?;
        if !m.is_even() {
            return Err(Error::InvalidLattice("over-lattice is not even".into()));
        }
        Ok(m)
    }
}
