//! Hirzebruch-Jung continued fractions `[n_1, ..., n_l]`.
//!
//! A string of smooth rational curves with self-intersections `-n_i` has the
//! tridiagonal intersection matrix `M(-n_1, ..., -n_l)`. All determinants
//! here are absolute values of minors of that matrix, computed with the
//! continuant recurrence `y_0 = 1, y_1 = n_1, y_j = n_j y_{j-1} - y_{j-2}`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::rational::{q_int, Q};
use crate::{Error, Result};

/// A continued fraction with integer entries `>= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct HjString(Vec<u32>);

/// Continuant of a run of entries: `|det M(-n_a, ..., -n_b)|`.
pub fn continuant(entries: &[u32]) -> BigInt {
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    for &n in entries {
        let next = &cur * n - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Prefix continuants `y_0, ..., y_l`.
pub fn prefix_continuants(entries: &[u32]) -> Vec<BigInt> {
    let mut ys = Vec::with_capacity(entries.len() + 1);
    ys.push(BigInt::one());
    let mut prev = BigInt::zero();
    for &n in entries {
        let cur = ys.last().unwrap().clone();
        let next = &cur * n - &prev;
        prev = cur;
        ys.push(next);
    }
    ys
}

fn rational_continuant(entries: &[Q]) -> Q {
    let (mut prev, mut cur) = (Q::zero(), Q::one());
    for n in entries {
        let next = &cur * n - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Solves `M(-n_1, ..., -n_l) a = -(n_1 - 2 + u, n_2 - 2, ..., n_l - 2 + v)`
/// in closed form for rational entries.
///
/// The minors are signed continuants, which coincide with the absolute
/// determinants whenever all leading continuants are positive.
pub fn solve_string_equation(entries: &[Q], u: &Q, v: &Q) -> Result<Vec<Q>> {
    let q = rational_continuant(entries);
    if q.is_zero() {
        return Err(Error::SingularSystem);
    }
    let one = Q::one();
    let l = entries.len();
    Ok((0..l)
        .map(|i| {
            let tail = rational_continuant(&entries[i + 1..]);
            let head = rational_continuant(&entries[..i]);
            &one - (&one - u) * tail / &q - (&one - v) * head / &q
        })
        .collect())
}

/// Outcome of [`HjString::classify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Classification {
    /// All entries are 2: the rational double point `A_l`.
    Rdp { rank: usize },
    /// Class `T_d` with its witness.
    T(TdWitness),
    Other,
}

/// Witness `(d, n, a)` with `q = d n^2`, `q_1 = d n a - 1`; `b = n - a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TdWitness {
    pub d: u64,
    #[serde(serialize_with = "ser_bigint")]
    pub n: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub a: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub b: BigInt,
}

fn ser_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl HjString {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidString("empty string".into()));
        }
        if let Some(bad) = entries.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidString(format!("entry {bad} < 2")));
        }
        Ok(Self(entries))
    }

    /// `[2, 2, ..., 2]` of length `l`, the rational double point `A_l`.
    pub fn a_type(l: usize) -> Self {
        Self(vec![2; l.max(1)])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entry_sum(&self) -> u64 {
        self.0.iter().map(|&n| u64::from(n)).sum()
    }

    /// `q`, the order of the local fundamental group.
    pub fn det(&self) -> BigInt {
        continuant(&self.0)
    }

    /// `q_{a_1, ..., a_m}` for 1-based deleted indices. Deleting rows of a
    /// tridiagonal matrix splits it into independent runs.
    pub fn det_deleting(&self, deleted: &BTreeSet<usize>) -> Result<BigInt> {
        if let Some(&i) = deleted.iter().find(|&&i| i == 0 || i > self.len()) {
            return Err(Error::InvalidString(format!(
                "deleted index {i} outside 1..={}",
                self.len()
            )));
        }
        let mut det = BigInt::one();
        let mut start = 0;
        for i in 0..=self.len() {
            if i == self.len() || deleted.contains(&(i + 1)) {
                det *= continuant(&self.0[start..i]);
                start = i + 1;
            }
        }
        Ok(det)
    }

    /// `q_1`: the string with the first entry removed (1 when `l = 1`).
    pub fn q1(&self) -> BigInt {
        continuant(&self.0[1..])
    }

    /// `q_l`: the string with the last entry removed (1 when `l = 1`).
    pub fn ql(&self) -> BigInt {
        continuant(&self.0[..self.len() - 1])
    }

    /// `q_{1,l}`: both ends removed (0 when `l = 1`, so that
    /// `q_1 q_l = q_{1,l} q + 1` holds for every length).
    pub fn q1l(&self) -> BigInt {
        if self.len() < 2 {
            return BigInt::zero();
        }
        continuant(&self.0[1..self.len() - 1])
    }

    /// `[n_1, ..., n_l] = q / q_1`.
    pub fn value(&self) -> BigRational {
        BigRational::new(self.det(), self.q1())
    }

    /// Inverse of [`HjString::value`]: the expansion of `q / q1`.
    pub fn expand(q: &BigInt, q1: &BigInt) -> Result<Self> {
        let bad = |reason| Error::InvalidExpansion {
            q: q.to_string(),
            q1: q1.to_string(),
            reason,
        };
        if q1 < &BigInt::one() || q <= q1 {
            return Err(bad("need q > q1 >= 1"));
        }
        if !q.gcd(q1).is_one() {
            return Err(bad("q and q1 are not coprime"));
        }
        let (mut num, mut den) = (q.clone(), q1.clone());
        let mut entries = Vec::new();
        while !den.is_zero() {
            // ceil(num / den)
            let n = (&num + &den - 1u32).div_floor(&den);
            let rem = &n * &den - &num;
            entries.push(
                n.to_u32()
                    .ok_or_else(|| bad("entry does not fit in u32"))?,
            );
            num = den;
            den = rem;
        }
        Self::new(entries)
    }

    /// `[2, n_1, ..., n_{l-1}, n_l + 1]`.
    pub fn tau(&self) -> Self {
        let mut entries = Vec::with_capacity(self.len() + 1);
        entries.push(2);
        entries.extend_from_slice(&self.0);
        *entries.last_mut().unwrap() += 1;
        Self(entries)
    }

    pub fn reverse(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    /// The orientation-independent representative (lexicographic maximum of
    /// the string and its reverse).
    pub fn canonical(&self) -> Self {
        let r = self.reverse();
        if r > *self {
            r
        } else {
            self.clone()
        }
    }

    /// `q_1 + q_l - q`.
    pub fn t_invariant(&self) -> BigInt {
        self.q1() + self.ql() - self.det()
    }

    pub fn is_rdp(&self) -> bool {
        self.0.iter().all(|&n| n == 2)
    }

    pub fn classify(&self) -> Result<Classification> {
        let q = self.det();
        let s = self.q1() + self.ql() + 2u32;
        if s == &q * 2u32 {
            return Ok(Classification::Rdp { rank: self.len() });
        }
        if s != q {
            return Ok(Classification::Other);
        }
        let inconsistent = |why: &str| Error::Inconsistency(format!("{self}: {why}"));
        let d = 3 * self.len() as i64 + 2 - self.entry_sum() as i64;
        if d <= 0 {
            return Err(inconsistent("T-type string with non-positive d"));
        }
        let d_big = BigInt::from(d);
        let (n_sq, r) = q.div_rem(&d_big);
        let n = n_sq.sqrt();
        if !r.is_zero() || &n * &n != n_sq {
            return Err(inconsistent("q is not d times a square"));
        }
        let (a, r) = (self.q1() + 1u32).div_rem(&(&d_big * &n));
        if !r.is_zero() || !a.is_positive() || a >= n || !a.gcd(&n).is_one() {
            return Err(inconsistent("no admissible a"));
        }
        let b = &n - &a;
        Ok(Classification::T(TdWitness { d: d as u64, n, a, b }))
    }

    /// The `T_d` class index, if any.
    pub fn td_class(&self) -> Option<u64> {
        match self.classify() {
            Ok(Classification::T(w)) => Some(w.d),
            _ => None,
        }
    }

    /// Closed-form solution of the string equation with boundary terms
    /// `u`, `v`.
    pub fn discrepancies_with(&self, u: &Q, v: &Q) -> Result<Vec<Q>> {
        let entries: Vec<Q> = self.0.iter().map(|&n| q_int(n)).collect();
        solve_string_equation(&entries, u, v)
    }

    /// Discrepancies `a_1, ..., a_l` of the cyclic quotient singularity.
    pub fn discrepancies(&self) -> Vec<Q> {
        let q = self.det();
        let ys = prefix_continuants(&self.0);
        let l = self.len();
        (0..l)
            .map(|i| {
                let tail = continuant(&self.0[i + 1..]);
                let head = &ys[i];
                Q::one() - Q::new(tail + head, q.clone())
            })
            .collect()
    }

    /// `D_p^2` of the cyclic singularity.
    pub fn dp_squared(&self) -> Q {
        if self.len() == 1 {
            let n = i64::from(self.0[0]);
            return Q::new(BigInt::from(-(n - 2) * (n - 2)), BigInt::from(n));
        }
        let l = self.len() as i64;
        let lin = q_int(2 * l - self.entry_sum() as i64 + 2);
        lin - Q::new(self.q1() + self.ql() + 2u32, self.det())
    }
}

impl fmt::Display for HjString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "]")
    }
}

impl std::str::FromStr for HjString {
    type Err = Error;

    /// Parses `n1,n2,...`, optionally wrapped in brackets.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let entries = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

/// The seed string of class `T_d`.
pub fn td_seed(d: u32) -> HjString {
    match d {
        1 => HjString(vec![4]),
        2 => HjString(vec![3, 3]),
        _ => {
            let mut v = vec![2; d as usize];
            v[0] = 3;
            v[d as usize - 1] = 3;
            HjString(v)
        }
    }
}

/// All `T_d` strings of length `<= max_len`, both orientations, sorted by
/// length then lexicographically.
pub fn generate_td(d: u32, max_len: usize) -> Vec<HjString> {
    assert!(d >= 1, "d must be positive");
    let seed = td_seed(d);
    let mut seen = BTreeSet::new();
    if seed.len() > max_len {
        return Vec::new();
    }
    let mut queue = VecDeque::from([seed.clone()]);
    seen.insert(seed);
    while let Some(s) = queue.pop_front() {
        let mut next = vec![s.reverse()];
        if s.len() < max_len {
            next.push(s.tau());
        }
        for t in next {
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Result of the exhaustive check of the `V_l` lemma.
#[derive(Clone, Debug, Default, Serialize)]
pub struct VLemmaReport {
    pub max_len: usize,
    /// Bound on `sum (n_j - 2)` used for parts (1) and (2).
    pub excess_bound: u32,
    pub checked_end_two: u64,
    pub checked_end_three: u64,
    pub checked_sum_3l_minus_4: u64,
    pub violations: Vec<String>,
}

impl VLemmaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Incremental continuants along a depth-first walk: `y` for the string
/// itself and `z` for the string without its first entry.
#[derive(Clone)]
struct Walk {
    y_prev: BigInt,
    y: BigInt,
    z_prev: BigInt,
    z: BigInt,
}

impl Walk {
    fn start(n1: u32) -> Self {
        Walk {
            y_prev: BigInt::one(),
            y: BigInt::from(n1),
            z_prev: BigInt::zero(),
            z: BigInt::one(),
        }
    }

    fn push(&self, n: u32) -> Self {
        Walk {
            y_prev: self.y.clone(),
            y: &self.y * n - &self.y_prev,
            z_prev: self.z.clone(),
            z: &self.z * n - &self.z_prev,
        }
    }

    /// `q_1 + q_l - q`.
    fn t_invariant(&self) -> BigInt {
        &self.z + &self.y_prev - &self.y
    }
}

fn in_v(t: &BigInt) -> bool {
    t.abs() <= BigInt::one()
}

fn walk_strings(
    prefix: &mut Vec<u32>,
    walk: &Walk,
    len: usize,
    budget: u32,
    exact: bool,
    visit: &mut dyn FnMut(&[u32], &Walk),
) {
    if prefix.len() == len {
        if !exact || budget == 0 {
            visit(prefix, walk);
        }
        return;
    }
    for extra in 0..=budget {
        let n = 2 + extra;
        prefix.push(n);
        let next = walk.push(n);
        walk_strings(prefix, &next, len, budget - extra, exact, visit);
        prefix.pop();
    }
}

fn for_each_string(len: usize, budget: u32, exact: bool, mut visit: impl FnMut(&[u32], &Walk)) {
    let mut prefix = Vec::with_capacity(len);
    for extra in 0..=budget {
        let n = 2 + extra;
        prefix.push(n);
        walk_strings(&mut prefix, &Walk::start(n), len, budget - extra, exact, &mut visit);
        prefix.pop();
    }
}

/// All strings of length `<= max_len` that classify as `T_d`, found by
/// scanning every string with `sum n_j = 3l + 2 - d` (a necessary condition);
/// same order as [`generate_td`].
pub fn td_by_classification(d: u32, max_len: usize) -> Vec<HjString> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        let Some(budget) = (len as u32 + 2).checked_sub(d) else {
            continue;
        };
        let mut found = Vec::new();
        for_each_string(len, budget, true, |s, w| {
            // q_1 + q_l + 2 = q
            if w.t_invariant() == BigInt::from(-2) {
                found.push(HjString(s.to_vec()));
            }
        });
        for s in found {
            if s.td_class() == Some(u64::from(d)) {
                out.push(s);
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Exhaustively checks the three parts of the `V_l` lemma for
/// `3 <= l <= max_len`: strings with both ends 2 and strings with both ends
/// `>= 3` (excess bounded by `excess_bound`) never satisfy
/// `|q_1 + q_l - q| <= 1`, and neither does any string with
/// `sum n_j = 3l - 4`.
pub fn check_v_lemma(max_len: usize, excess_bound: u32) -> VLemmaReport {
    let mut report = VLemmaReport {
        max_len,
        excess_bound,
        ..Default::default()
    };
    for len in 3..=max_len {
        for_each_string(len, excess_bound, false, |s, w| {
            let (first, last) = (s[0], s[len - 1]);
            let both_two = first == 2 && last == 2;
            let both_three = first >= 3 && last >= 3;
            if both_two {
                report.checked_end_two += 1;
            }
            if both_three {
                report.checked_end_three += 1;
            }
            if (both_two || both_three) && in_v(&w.t_invariant()) {
                report.violations.push(format!("part (1)/(2): {s:?}"));
            }
        });
        if len >= 4 {
            let budget = (len - 4) as u32;
            for_each_string(len, budget, true, |s, w| {
                report.checked_sum_3l_minus_4 += 1;
                if in_v(&w.t_invariant()) {
                    report.violations.push(format!("part (3): {s:?}"));
                }
            });
        }
    }
    report
}
