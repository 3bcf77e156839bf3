//! Cyclic, dihedral and polyhedral quotient singularities.
//!
//! A non-cyclic singularity has a star-shaped dual graph `<b; s1,t1; s2,t2; s3,t3>`:
//! a central `-b` curve with three arms, arm `<s,t>` being the string of the
//! cyclic singularity `s/t` with its first entry next to the center.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::hjcf::HjString;
use crate::lattice::{matrix, GramLattice};
use crate::rational::{fmt_q, q_frac, q_int, Q};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PolyKind {
    T,
    O,
    I,
}

impl PolyKind {
    /// `|G| / m`.
    pub fn order_factor(self) -> u64 {
        match self {
            PolyKind::T => 24,
            PolyKind::O => 48,
            PolyKind::I => 120,
        }
    }

    /// Period of `m` in `b`: `m = period (b - 2) + offset`.
    pub fn m_period(self) -> u64 {
        match self {
            PolyKind::T => 6,
            PolyKind::O => 12,
            PolyKind::I => 30,
        }
    }
}

impl fmt::Display for PolyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            PolyKind::T => "T",
            PolyKind::O => "O",
            PolyKind::I => "I",
        };
        f.write_str(c)
    }
}

impl std::str::FromStr for PolyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "T" => Ok(PolyKind::T),
            "O" => Ok(PolyKind::O),
            "I" => Ok(PolyKind::I),
            other => Err(Error::UnknownRow(other.to_string())),
        }
    }
}

/// One polyhedral row of the Brieskorn table.
#[derive(Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StarRow {
    pub id: &'static str,
    pub kind: PolyKind,
    /// 1-based position within its kind.
    pub index: u32,
    pub arms: [(u32, u32); 3],
    pub m_offset: u64,
}

const fn row(
    id: &'static str,
    kind: PolyKind,
    index: u32,
    a2: (u32, u32),
    a3: (u32, u32),
    m_offset: u64,
) -> StarRow {
    StarRow { id, kind, index, arms: [(2, 1), a2, a3], m_offset }
}

pub static STAR_ROWS: [StarRow; 15] = [
    row("T1", PolyKind::T, 1, (3, 2), (3, 2), 1),
    row("T2", PolyKind::T, 2, (3, 1), (3, 1), 5),
    row("T3", PolyKind::T, 3, (3, 1), (3, 2), 3),
    row("O1", PolyKind::O, 1, (3, 2), (4, 3), 1),
    row("O2", PolyKind::O, 2, (3, 1), (4, 3), 5),
    row("O3", PolyKind::O, 3, (3, 2), (4, 1), 7),
    row("O4", PolyKind::O, 4, (3, 1), (4, 1), 11),
    row("I1", PolyKind::I, 1, (3, 2), (5, 4), 1),
    row("I2", PolyKind::I, 2, (3, 2), (5, 3), 7),
    row("I3", PolyKind::I, 3, (3, 1), (5, 4), 11),
    row("I4", PolyKind::I, 4, (3, 2), (5, 2), 13),
    row("I5", PolyKind::I, 5, (3, 1), (5, 3), 17),
    row("I6", PolyKind::I, 6, (3, 2), (5, 1), 19),
    row("I7", PolyKind::I, 7, (3, 1), (5, 2), 23),
    row("I8", PolyKind::I, 8, (3, 1), (5, 1), 29),
];

impl StarRow {
    pub fn lookup(kind: PolyKind, index: u32) -> Result<&'static StarRow> {
        STAR_ROWS
            .iter()
            .find(|r| r.kind == kind && r.index == index)
            .ok_or_else(|| Error::UnknownRow(format!("{kind}{index}")))
    }

    pub fn by_id(id: &str) -> Result<&'static StarRow> {
        STAR_ROWS.iter().find(|r| r.id == id).ok_or_else(|| Error::UnknownRow(id.to_string()))
    }

    /// Finds the row whose arms are the given pairs in some order.
    pub fn matching(arms: &[(u32, u32)]) -> Result<&'static StarRow> {
        let mut want = arms.to_vec();
        want.sort_unstable();
        STAR_ROWS
            .iter()
            .find(|r| {
                let mut have = r.arms.to_vec();
                have.sort_unstable();
                have == want
            })
            .ok_or_else(|| Error::UnknownRow(format!("{arms:?}")))
    }

    pub fn m(&self, b: u32) -> BigInt {
        BigInt::from(self.kind.m_period()) * (i64::from(b) - 2) + self.m_offset
    }

    pub fn arm_strings(&self) -> [HjString; 3] {
        self.arms.map(|(s, t)| {
            HjString::expand(&BigInt::from(s), &BigInt::from(t)).expect("table arms are valid")
        })
    }
}

/// A quotient surface singularity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QuotientSingularity {
    Cyclic(HjString),
    /// `<b; 2,1; 2,1; q,q1>` with `arm = <q,q1>`.
    Dihedral { b: u32, arm: HjString },
    Polyhedral { row: &'static StarRow, b: u32 },
}

/// Local invariants of one singular point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityInvariants {
    #[serde(serialize_with = "ser_display")]
    pub group_order: BigInt,
    pub rank: usize,
    #[serde(serialize_with = "ser_display")]
    pub det_r: BigInt,
    #[serde(serialize_with = "ser_q_vec")]
    pub discrepancy: Vec<Q>,
    #[serde(serialize_with = "ser_q")]
    pub dp2: Q,
}

pub(crate) fn ser_display<T: fmt::Display, S: serde::Serializer>(
    x: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub(crate) fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

pub(crate) fn ser_q_vec<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_q))
}

impl QuotientSingularity {
    pub fn cyclic(q: i64, q1: i64) -> Result<Self> {
        Ok(Self::Cyclic(HjString::expand(&q.into(), &q1.into())?))
    }

    pub fn dihedral(b: u32, arm: HjString) -> Result<Self> {
        if b < 2 {
            return Err(Error::InvalidSingularity(format!("dihedral center b = {b} < 2")));
        }
        let s = Self::Dihedral { b, arm };
        if !s.m().is_some_and(|m| m.is_positive()) {
            return Err(Error::InvalidSingularity(format!("{s}: m < 1")));
        }
        Ok(s)
    }

    pub fn polyhedral(kind: PolyKind, index: u32, b: u32) -> Result<Self> {
        if b < 2 {
            return Err(Error::InvalidSingularity(format!("star center b = {b} < 2")));
        }
        Ok(Self::Polyhedral { row: StarRow::lookup(kind, index)?, b })
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, Self::Cyclic(_))
    }

    /// The Brieskorn `m`; `None` for cyclic points.
    pub fn m(&self) -> Option<BigInt> {
        match self {
            Self::Cyclic(_) => None,
            Self::Dihedral { b, arm } => Some(BigInt::from(b - 1) * arm.det() - arm.q1()),
            Self::Polyhedral { row, b } => Some(row.m(*b)),
        }
    }

    pub fn group_order(&self) -> BigInt {
        match self {
            Self::Cyclic(s) => s.det(),
            Self::Dihedral { arm, .. } => BigInt::from(4) * self.m().unwrap() * arm.det(),
            Self::Polyhedral { row, b } => BigInt::from(row.kind.order_factor()) * row.m(*b),
        }
    }

    fn star_arms(&self) -> Option<(u32, [HjString; 3])> {
        match self {
            Self::Cyclic(_) => None,
            Self::Dihedral { b, arm } => {
                let two = HjString::a_type(1);
                Some((*b, [two.clone(), two, arm.clone()]))
            }
            Self::Polyhedral { row, b } => Some((*b, row.arm_strings())),
        }
    }

    pub fn rank(&self) -> usize {
        match self.star_arms() {
            None => match self {
                Self::Cyclic(s) => s.len(),
                _ => unreachable!(),
            },
            Some((_, arms)) => 1 + arms.iter().map(HjString::len).sum::<usize>(),
        }
    }

    /// Negative-definite intersection matrix of the exceptional curves.
    ///
    /// Star graphs are ordered arm 1, arm 2, center, arm 3, each arm listed
    /// from the center outward.
    pub fn gram(&self) -> GramLattice {
        let Some((b, arms)) = self.star_arms() else {
            let Self::Cyclic(s) = self else { unreachable!() };
            return GramLattice::from_hj(s);
        };
        let n = self.rank();
        let mut g = vec![vec![0i64; n]; n];
        let center = arms[0].len() + arms[1].len();
        g[center][center] = -i64::from(b);
        let mut place = |start: usize, arm: &HjString| {
            for (k, &e) in arm.entries().iter().enumerate() {
                let v = start + k;
                g[v][v] = -i64::from(e);
                let prev = if k == 0 { center } else { v - 1 };
                g[v][prev] = 1;
                g[prev][v] = 1;
            }
        };
        place(0, &arms[0]);
        place(arms[0].len(), &arms[1]);
        place(center + 1, &arms[2]);
        GramLattice::new(g).expect("star graph is symmetric")
    }

    /// Discrepancies per dual-graph vertex (in [`Self::gram`] order) and
    /// `D_p^2`, from the exact linear system `G a = (2 + E_i^2)_i`.
    ///
    /// Where a closed form applies it is evaluated too, and any disagreement
    /// is reported as an error.
    pub fn discrepancy_and_dp2(&self) -> Result<(Vec<Q>, Q)> {
        let (a, dp2) = generic_discrepancy(&self.gram())?;
        match self {
            Self::Cyclic(s) => {
                if s.discrepancies() != a || s.dp_squared() != dp2 {
                    return Err(Error::Inconsistency(format!("{s}: closed-form discrepancy mismatch")));
                }
            }
            Self::Dihedral { b, arm } if arm.len() >= 2 => {
                let (al, d2) = dihedral_closed_form(*b, arm);
                if a.last() != Some(&al) || d2 != dp2 {
                    return Err(Error::Inconsistency(format!("{self}: dihedral closed form mismatch")));
                }
            }
            _ => {}
        }
        Ok((a, dp2))
    }

    pub fn invariants(&self) -> Result<SingularityInvariants> {
        let (discrepancy, dp2) = self.discrepancy_and_dp2()?;
        Ok(SingularityInvariants {
            group_order: self.group_order(),
            rank: self.rank(),
            det_r: self.gram().det(),
            discrepancy,
            dp2,
        })
    }

    /// Lattice name: `A<n>`, `D<n>`, `E<n>` for rational double points,
    /// `diag(-n)` for a single curve, otherwise the singularity spec.
    pub fn lattice_name(&self) -> String {
        match self {
            Self::Cyclic(s) if s.is_rdp() => format!("A{}", s.len()),
            Self::Cyclic(s) if s.len() == 1 => format!("diag(-{})", s.entries()[0]),
            Self::Cyclic(s) => format!("HJ{s}"),
            Self::Dihedral { b: 2, arm } if arm.is_rdp() => format!("D{}", arm.len() + 3),
            Self::Polyhedral { row, b: 2 } if row.m_offset == 1 => {
                format!("E{}", self.rank())
            }
            other => other.to_string(),
        }
    }
}

impl fmt::Display for QuotientSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Cyclic(s) => write!(f, "HJ{s}"),
            Self::Dihedral { b, arm } => write!(f, "D(b={b};{arm})"),
            Self::Polyhedral { row, b } => {
                write!(f, "Star(kind={}; b={b}; row={})", row.kind, row.index)
            }
        }
    }
}

impl Serialize for QuotientSingularity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Solves `G a = (2 + G_ii)_i` and returns `(a, D^2)` with `D^2 = a^T G a`.
pub fn generic_discrepancy(g: &GramLattice) -> Result<(Vec<Q>, Q)> {
    let rhs: Vec<Q> = g.self_intersections().iter().map(|&e| q_int(2 + e)).collect();
    let a = matrix::solve(&g.q_gram(), &rhs).ok_or(Error::SingularSystem)?;
    let dp2 = a.iter().zip(&rhs).map(|(x, y)| x * y).sum();
    Ok((a, dp2))
}

/// `det(R_p) = (-1)^(l+3) 4 ((b-1) q - q_1)` for the dihedral graph.
pub fn det_r_dihedral(b: u32, arm: &HjString) -> BigInt {
    let m = BigInt::from(b - 1) * arm.det() - arm.q1();
    let sign = if (arm.len() + 3).is_multiple_of(2) { 1 } else { -1 };
    BigInt::from(4 * sign) * m
}

/// `(a_l, D_p^2)` for a dihedral point with arm length `l >= 2`:
/// `a_l = 1 - ((b-1) q_l - q_{1,l}) / ((b-1) q - q_1)` and
/// `D_p^2 = 2l - sum n_j + a_l - (b - 2)`.
pub fn dihedral_closed_form(b: u32, arm: &HjString) -> (Q, Q) {
    let bm1 = BigInt::from(b - 1);
    let num = &bm1 * arm.ql() - arm.q1l();
    let den = &bm1 * arm.det() - arm.q1();
    let al = Q::one() - Q::new(num, den);
    let l = arm.len() as i64;
    let dp2 = q_int(2 * l - arm.entry_sum() as i64) + &al - q_int(i64::from(b) - 2);
    (al, dp2)
}

/// One representative (the lexicographic maximum) of each `{s, reverse(s)}`
/// pair of strings with determinant `q`.
pub fn enumerate_cyclic_of_order(q: u64) -> Vec<HjString> {
    let mut out = BTreeSet::new();
    let qb = BigInt::from(q);
    for q1 in 1..q {
        if q1.gcd(&q) == 1 {
            out.insert(HjString::expand(&qb, &q1.into()).expect("coprime pair").canonical());
        }
    }
    out.into_iter().collect()
}

/// Dihedral points with group order at most `max_order`, all `b >= 2` and
/// both arm orientations.
pub fn enumerate_dihedral(max_order: u64) -> Vec<QuotientSingularity> {
    let mut out = Vec::new();
    // m >= q - q1 >= 1, so 4q <= |G|
    for q in 2..=max_order / 4 {
        let qb = BigInt::from(q);
        for q1 in 1..q {
            if q1.gcd(&q) != 1 {
                continue;
            }
            let arm = HjString::expand(&qb, &q1.into()).expect("coprime pair");
            for b in 2u32.. {
                let m = u64::from(b - 1) * q - q1;
                if 4 * m * q > max_order {
                    break;
                }
                out.push(QuotientSingularity::Dihedral { b, arm: arm.clone() });
            }
        }
    }
    out
}

/// Every polyhedral row with `2 <= b <= max_b`.
pub fn enumerate_polyhedral(max_b: u32) -> Vec<QuotientSingularity> {
    STAR_ROWS
        .iter()
        .flat_map(|row| (2..=max_b).map(move |b| QuotientSingularity::Polyhedral { row, b }))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    AtLeast,
    Equal,
}

/// A printed bound on `K_S^2` over a range of `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub b_from: u32,
    /// Inclusive; `None` is unbounded.
    pub b_to: Option<u32>,
    pub relation: Relation,
    pub bound: (i64, i64),
}

impl Claim {
    pub fn applies(&self, b: u32) -> bool {
        b >= self.b_from && self.b_to.is_none_or(|t| b <= t)
    }

    pub fn holds(&self, value: &Q) -> bool {
        let bound = q_frac(self.bound.0, self.bound.1);
        match self.relation {
            Relation::AtMost => *value <= bound,
            Relation::AtLeast => *value >= bound,
            Relation::Equal => *value == bound,
        }
    }
}

/// `K_S^2 = (c2 b^2 + c1 b + c0) / (d1 b + d0)` for a polyhedral point in
/// the `(2,2,2,2,h)` setting, with the printed bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KsFormula {
    pub row: &'static str,
    pub numerator: [i64; 3],
    pub denominator: [i64; 2],
    pub claims: Vec<Claim>,
}

const fn le(b_to: u32, n: i64, d: i64) -> Claim {
    Claim { b_from: 2, b_to: Some(b_to), relation: Relation::AtMost, bound: (n, d) }
}
const fn ge(b_from: u32, n: i64, d: i64) -> Claim {
    Claim { b_from, b_to: None, relation: Relation::AtLeast, bound: (n, d) }
}
const fn eq2(n: i64, d: i64) -> Claim {
    Claim { b_from: 2, b_to: Some(2), relation: Relation::Equal, bound: (n, d) }
}

pub fn ks_formulas() -> Vec<KsFormula> {
    let f = |row, numerator, denominator, claims: &[Claim]| KsFormula {
        row,
        numerator,
        denominator,
        claims: claims.to_vec(),
    };
    vec![
        f("T1", [6, -30, 35], [6, -11], &[le(3, -1, 7), ge(4, 11, 13)]),
        f("T2", [6, -6, -1], [6, -7], &[ge(2, 11, 5)]),
        f("T3", [18, -54, 41], [18, -27], &[ge(2, 5, 9)]),
        f("O1", [12, -72, 94], [12, -23], &[le(4, -2, 25), ge(5, 34, 37)]),
        f("O2", [12, -48, 46], [12, -19], &[eq2(-2, 5), ge(3, 10, 17)]),
        f("O3", [12, -24, 10], [12, -17], &[ge(2, 10, 7)]),
        f("O4", [12, 0, -14], [12, -13], &[ge(2, 34, 11)]),
        f("I1", [30, -210, 297], [30, -59], &[le(5, -3, 91), ge(6, 117, 121)]),
        f("I2", [30, -126, 129], [30, -53], &[eq2(-3, 7), ge(3, 21, 37)]),
        f("I3", [30, -150, 165], [30, -49], &[le(3, -15, 41), ge(4, 45, 71)]),
        f("I4", [30, -114, 105], [30, -47], &[eq2(-3, 13), ge(3, 33, 43)]),
        f("I5", [30, -66, 33], [30, -43], &[ge(2, 21, 17)]),
        f("I6", [30, -30, -15], [30, -41], &[ge(2, 45, 19)]),
        f("I7", [30, -54, 21], [30, -37], &[ge(2, 33, 23)]),
        f("I8", [30, 30, -63], [30, -31], &[ge(2, 117, 29)]),
    ]
}

impl KsFormula {
    pub fn eval(&self, b: u32) -> Q {
        let b = i64::from(b);
        let [c2, c1, c0] = self.numerator;
        let [d1, d0] = self.denominator;
        q_frac(c2 * b * b + c1 * b + c0, d1 * b + d0)
    }
}

/// `K_S^2` from the closed form for a polyhedral row.
pub fn ks2_star(row_id: &str, b: u32) -> Result<Q> {
    let formula = ks_formulas()
        .into_iter()
        .find(|f| f.row == row_id)
        .ok_or_else(|| Error::UnknownRow(row_id.to_string()))?;
    Ok(formula.eval(b))
}

/// `K_S^2 = 5 - rank(R_p) - D_p^2` for `4A_1` plus the given point.
pub fn ks2_with_four_nodes(p: &QuotientSingularity) -> Result<Q> {
    let (_, dp2) = p.discrepancy_and_dp2()?;
    Ok(q_int(5 - p.rank() as i64) - dp2)
}

impl QuotientSingularity {
    /// `|G| / |det R_p|`: 1 for cyclic, `q` for dihedral, 8/24/120 for
    /// the polyhedral kinds.
    pub fn order_over_det(&self) -> Q {
        let det = self.gram().det().abs();
        Q::new(self.group_order(), det)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn hj(s: &str) -> HjString {
        s.parse().unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(QuotientSingularity::cyclic(5, 2).unwrap().group_order(), 5.into());
        let d5 = QuotientSingularity::dihedral(2, hj("2,2")).unwrap();
        assert_eq!(d5.group_order(), 12.into());
        let e6 = QuotientSingularity::polyhedral(PolyKind::T, 1, 2).unwrap();
        assert_eq!(e6.group_order(), 24.into());
        assert_eq!(e6.lattice_name(), "E6");
        assert_eq!(d5.lattice_name(), "D5");
        assert_eq!(QuotientSingularity::polyhedral(PolyKind::I, 1, 2).unwrap().lattice_name(), "E8");
    }

    #[test]
    fn grams() {
        let c = QuotientSingularity::cyclic(5, 3).unwrap();
        assert_eq!(c.gram().rows(), &[vec![-2, 1], vec![1, -3]]);
        let d5 = QuotientSingularity::dihedral(2, hj("2,2")).unwrap().gram();
        assert_eq!(d5.det(), BigInt::from(-4));
        assert_eq!(d5.rows()[2], vec![1, 1, -2, 1, 0]);
        let e6 = QuotientSingularity::polyhedral(PolyKind::T, 1, 2).unwrap().gram();
        assert_eq!(e6.det(), BigInt::from(3));
        assert!(e6.self_intersections().iter().all(|&x| x == -2));
    }

    #[test]
    fn dihedral_determinants() {
        assert_eq!(det_r_dihedral(2, &hj("2,2")), BigInt::from(-4));
        assert_eq!(det_r_dihedral(3, &hj("2,2")), BigInt::from(-16));
        assert_eq!(det_r_dihedral(2, &hj("2")), BigInt::from(4));
        let d = QuotientSingularity::dihedral(3, hj("2,2")).unwrap();
        assert_eq!(d.gram().det(), BigInt::from(-16));
    }

    #[test]
    fn dihedral_discrepancy() {
        let d5 = QuotientSingularity::dihedral(2, hj("2,2")).unwrap();
        let (a, dp2) = d5.discrepancy_and_dp2().unwrap();
        assert!(a.iter().all(Zero::is_zero));
        assert!(dp2.is_zero());
        let d = QuotientSingularity::dihedral(3, hj("2,2")).unwrap();
        let (a, dp2) = d.discrepancy_and_dp2().unwrap();
        assert_eq!(a.last().unwrap(), &q_frac(1, 4));
        assert_eq!(dp2, q_frac(-3, 4));
    }

    #[test]
    fn table2_spot_values() {
        assert_eq!(ks2_star("T1", 2).unwrap(), q_int(-1));
        assert_eq!(ks2_star("O2", 2).unwrap(), q_frac(-2, 5));
        assert_eq!(ks2_star("I4", 2).unwrap(), q_frac(-3, 13));
        assert!(ks2_star("X9", 2).is_err());
        let e6 = QuotientSingularity::polyhedral(PolyKind::T, 1, 2).unwrap();
        assert_eq!(ks2_with_four_nodes(&e6).unwrap(), q_int(-1));
    }

    #[test]
    fn cyclic_enumeration() {
        let show = |q| enumerate_cyclic_of_order(q).iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(show(2), ["[2]"]);
        assert_eq!(show(4), ["[2,2,2]", "[4]"]);
        assert_eq!(show(5), ["[2,2,2,2]", "[3,2]", "[5]"]);
    }

    #[test]
    fn dihedral_enumeration_contains_d5() {
        let all = enumerate_dihedral(12);
        assert!(all.contains(&QuotientSingularity::dihedral(2, hj("2,2")).unwrap()));
        assert!(all.iter().all(|p| p.group_order() <= 12.into()));
    }

    #[test]
    fn star_row_lookup() {
        assert_eq!(StarRow::matching(&[(4, 3), (2, 1), (3, 2)]).unwrap().id, "O1");
        assert!(StarRow::matching(&[(2, 1), (2, 1), (7, 3)]).is_err());
        assert_eq!(StarRow::by_id("I4").unwrap().m(2), 13.into());
    }
}
