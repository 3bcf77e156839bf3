//! Embedding obstructions into unimodular lattices of signature `(1, m)`.
//!
//! Every test here is a necessary condition: `NotObstructed` never claims
//! that an integral embedding exists.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::hjcf::{self, Classification, HjString};
use crate::lattice::{hj_diagonal, t6_last_diagonal, tau_diagonal, DiscriminantGroup, ExtendedLattice, GramLattice};
use crate::padic::{rationally_equivalent, square_class, DiagonalForm, Equivalence, Place, SquareClass};
use crate::rational::{fmt_q, is_square, q_int, Q};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    /// `place` is `None` for the global (determinant) test.
    Obstructed { place: Option<Place>, reason: String },
    NotObstructed,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionVerdict {
    pub test: String,
    pub target: String,
    pub result: Outcome,
    pub details: BTreeMap<String, String>,
}

impl ObstructionVerdict {
    pub fn is_obstructed(&self) -> bool {
        matches!(self.result, Outcome::Obstructed { .. })
    }

    pub fn failing_place(&self) -> Option<Place> {
        match &self.result {
            Outcome::Obstructed { place, .. } => *place,
            Outcome::NotObstructed => None,
        }
    }
}

impl fmt::Display for ObstructionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.result {
            Outcome::NotObstructed => write!(f, "{} vs {}: not obstructed", self.test, self.target),
            Outcome::Obstructed { place: Some(p), reason } => {
                write!(f, "{} vs {}: obstructed at {p} ({reason})", self.test, self.target)
            }
            Outcome::Obstructed { place: None, reason } => {
                write!(f, "{} vs {}: obstructed ({reason})", self.test, self.target)
            }
        }
    }
}

/// Diagonal form of `I_{1,m} = <1> + m<-1>`.
pub fn i1m_form(m: usize) -> DiagonalForm {
    let mut v = vec![1i64];
    v.extend(std::iter::repeat_n(-1, m));
    DiagonalForm::from_ints(&v).expect("nonzero entries")
}

fn record_places(details: &mut BTreeMap<String, String>, eq: &Equivalence) {
    for c in &eq.places {
        details.insert(format!("eps_{}", c.place), format!("{} vs {}", c.lhs.epsilon, c.rhs.epsilon));
    }
}

fn verdict_from(test: &str, target: String, eq: &Equivalence, mut details: BTreeMap<String, String>) -> ObstructionVerdict {
    record_places(&mut details, eq);
    let failing: Vec<String> = eq.failing_places().iter().map(Place::to_string).collect();
    if !failing.is_empty() {
        details.insert("failing_places".into(), failing.join(","));
    }
    let result = match eq.first_failure() {
        None => Outcome::NotObstructed,
        Some(c) => Outcome::Obstructed {
            place: Some(c.place),
            reason: format!("{} mismatch", c.mismatch.as_ref().unwrap()),
        },
    };
    ObstructionVerdict { test: test.into(), target, result, details }
}

/// `|det(R + <K>)|` must be a perfect square.
pub fn square_index_test(ext: &ExtendedLattice) -> Result<ObstructionVerdict> {
    let lat = ext.lattice().ok_or(Error::WrongBranch("square test needs a nondegenerate extension"))?;
    let det = lat.det();
    let mut details = BTreeMap::new();
    details.insert("det".into(), det.to_string());
    details.insert("det_R".into(), ext.base.det().to_string());
    details.insert("K_S^2".into(), fmt_q(&ext.ks2()));
    let result = if is_square(&det.abs()) {
        Outcome::NotObstructed
    } else {
        Outcome::Obstructed { place: None, reason: format!("|det| = {} is not a square", det.abs()) }
    };
    Ok(ObstructionVerdict { test: "square_index".into(), target: "unimodular".into(), result, details })
}

/// Rank-`m` negative-definite `N` inside `I_{1,m}` with a rank-1 complement
/// `<r>`; unimodularity forces `r = |det N|` up to squares.
pub fn equal_rank_embed_test(n: &GramLattice) -> Result<ObstructionVerdict> {
    if !n.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let m = n.rank();
    let det = n.det();
    let r = Q::from_integer(det.abs());
    let lhs = n.diagonalize()?.direct_sum(&DiagonalForm::new(vec![r.clone()])?);
    let eq = rationally_equivalent(&lhs, &i1m_form(m))?;
    let mut details = BTreeMap::new();
    details.insert("det_N".into(), det.to_string());
    details.insert("complement".into(), format!("<{}>", fmt_q(&r)));
    Ok(verdict_from("equal_rank_embed", format!("I(1,{m})"), &eq, details))
}

/// `R + <K>` of rank `m + 1` and signature `(1, m)` against `I_{1,m}`:
/// the square test, then rational equivalence.
pub fn finite_index_embed_test(ext: &ExtendedLattice) -> Result<ObstructionVerdict> {
    let lat = ext.lattice().ok_or(Error::WrongBranch("finite-index test needs a nondegenerate extension"))?;
    let m = ext.base.rank();
    let sig = lat.signature()?;
    if sig != (1, m) {
        return Err(Error::WrongSignature { expected: format!("(1,{m})"), found: format!("{sig:?}") });
    }
    let square = square_index_test(ext)?;
    let target = format!("I(1,{m})");
    if square.is_obstructed() {
        return Ok(ObstructionVerdict { test: "finite_index_embed".into(), target, ..square });
    }
    let eq = rationally_equivalent(&lat.diagonalize()?, &i1m_form(m))?;
    Ok(verdict_from("finite_index_embed", target, &eq, square.details))
}

pub fn epsilon3(f: &DiagonalForm) -> i8 {
    f.epsilon(Place::Prime(3)).expect("nonzero coefficients")
}

/// `2 * 3^odd` at `p = 3`.
const TWO_THREE_ODD: SquareClass = SquareClass::Odd { odd_valuation: true, unit_is_square: false };

/// Per-string record of the `T_6` sweep.
#[derive(Clone, Debug, Serialize)]
pub struct T6Check {
    pub string: HjString,
    pub eps3: i8,
    pub eps3_tau: i8,
    pub last_diagonal: String,
    pub sign_ok: bool,
    pub flip_ok: bool,
    pub sum_ok: bool,
    pub class_ok: bool,
    pub closed_form_ok: bool,
}

impl T6Check {
    pub fn passed(&self) -> bool {
        self.sign_ok && self.flip_ok && self.sum_ok && self.class_ok && self.closed_form_ok
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct T6Sweep {
    pub max_len: usize,
    pub strings: usize,
    pub passed: usize,
    pub failures: Vec<T6Check>,
    /// Generated strings agree with the classification scan.
    pub generation_matches_classification: bool,
    pub closure: &'static str,
}

impl T6Sweep {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.generation_matches_classification && self.strings == self.passed
    }
}

pub fn t6_check(s: &HjString) -> Result<T6Check> {
    let l = s.len();
    let eps3 = epsilon3(&hj_diagonal(s));
    let tau = tau_diagonal(s)?;
    let eps3_tau = epsilon3(&tau);
    let last = tau.coefficients().last().unwrap().clone();
    let closed_form_ok = match s.classify()? {
        Classification::T(w) if w.d == 6 => t6_last_diagonal(&w.n, &w.b) == last,
        _ => false,
    };
    Ok(T6Check {
        string: s.clone(),
        eps3,
        eps3_tau,
        last_diagonal: fmt_q(&last),
        sign_ok: eps3 == if l.is_multiple_of(2) { 1 } else { -1 },
        flip_ok: eps3 * eps3_tau == -1,
        sum_ok: s.entry_sum() + 4 == 3 * l as u64,
        class_ok: square_class(&last, Place::Prime(3))? == TWO_THREE_ODD,
        closed_form_ok,
    })
}

/// Checks every `T_6` string of length `<= max_len` (both orientations).
pub fn t6_epsilon_sweep(max_len: usize) -> Result<T6Sweep> {
    let strings = hjcf::generate_td(6, max_len);
    let checks: Vec<T6Check> = strings.par_iter().map(t6_check).collect::<Result<_>>()?;
    let passed = checks.iter().filter(|c| c.passed()).count();
    let failures = checks.into_iter().filter(|c| !c.passed()).collect();
    Ok(T6Sweep {
        max_len,
        strings: strings.len(),
        passed,
        failures,
        generation_matches_classification: hjcf::td_by_classification(6, max_len) == strings,
        closure: "by induction lemma, step verified computationally",
    })
}

/// Element of `disc(4A_1 + D_5)` written as `a_1 e_1 + ... + a_4 e_4 + k v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Labelled {
    pub e: [u8; 4],
    pub v: u8,
}

impl fmt::Display for Labelled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = (0..4).filter(|&i| self.e[i] == 1).map(|i| format!("e{}", i + 1)).collect();
        match self.v {
            0 => {}
            1 => terms.push("v".into()),
            k => terms.push(format!("{k}v")),
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnriquesDiscReport {
    pub lattice: String,
    pub invariant_factors: Vec<u64>,
    pub min_generators: usize,
    pub q_v: String,
    pub q_e_sum: String,
    pub q_e1_e2: String,
    pub isotropic_order4: usize,
    /// Subgroups `A` of order 4 with `A^perp / A` cyclic, as element lists.
    pub admissible: Vec<Vec<String>>,
    pub all_contain_e_sum: bool,
    pub overlattice_dets: Vec<String>,
    pub conclusion: String,
    pub citation: String,
}

impl EnriquesDiscReport {
    pub fn ok(&self) -> bool {
        self.invariant_factors == [2, 2, 2, 2, 4]
            && self.q_v == "3/4"
            && self.all_contain_e_sum
            && !self.admissible.is_empty()
    }
}

/// Discriminant-form half of the `4A_1 + D_5` exclusion: every even
/// overlattice with cyclic discriminant of order 4 contains `e_1+e_2+e_3+e_4`.
pub fn enriques_disc_analysis() -> Result<EnriquesDiscReport> {
    let a1 = GramLattice::a(1);
    let d5 = GramLattice::d(5)?;
    let r = GramLattice::direct_sum_all([&a1, &a1, &a1, &a1, &d5]).unwrap();
    let disc = DiscriminantGroup::of(&r)?;
    let n = r.rank();
    let unit = |i: usize, x: Q| {
        let mut v = vec![Q::zero(); n];
        v[i] = x;
        v
    };
    let e: Vec<_> = (0..4).map(|i| disc.coords_of(&unit(i, Q::new(1.into(), 2.into())))).collect::<Result<_>>()?;
    // v: a dual vector of the D_5 summand of order 4
    let d5_inv = crate::lattice::matrix::inverse(&d5.q_gram()).ok_or(Error::Degenerate)?;
    let v = (0..5)
        .find_map(|j| {
            let mut x = vec![Q::zero(); n];
            for i in 0..5 {
                x[4 + i] = d5_inv[i][j].clone();
            }
            let c = disc.coords_of(&x).ok()?;
            let twice = disc.add(&c, &c);
            (twice.iter().any(|&t| t != 0)).then_some(c)
        })
        .ok_or_else(|| Error::Inconsistency("D5 has no element of order 4".into()))?;

    // label every element
    let mut labels = BTreeMap::new();
    let zero = vec![0u64; disc.invariant_factors.len()];
    for mask in 0u8..16 {
        for k in 0u8..4 {
            let mut x = zero.clone();
            for (i, ei) in e.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    x = disc.add(&x, ei);
                }
            }
            for _ in 0..k {
                x = disc.add(&x, &v);
            }
            let e_bits = [mask & 1, mask >> 1 & 1, mask >> 2 & 1, mask >> 3 & 1];
            labels.insert(disc.index(&x), Labelled { e: e_bits, v: k });
        }
    }
    if labels.len() as u64 != disc.order() {
        return Err(Error::Inconsistency("e_i and v do not generate the discriminant group".into()));
    }
    let e_sum = e.iter().fold(zero.clone(), |acc, x| disc.add(&acc, x));
    let e12 = disc.add(&e[0], &e[1]);
    let e_sum_idx = disc.index(&e_sum);

    let iso = disc.isotropic_subgroups(4)?;
    let mut admissible = Vec::new();
    let mut dets = Vec::new();
    let mut all_contain = true;
    for a in &iso {
        let perp = disc.orthogonal(a)?;
        if !disc.quotient_is_cyclic(&perp, a) {
            continue;
        }
        all_contain &= a.contains(e_sum_idx);
        let mut names: Vec<&Labelled> = a.elements.iter().map(|i| &labels[i]).collect();
        names.sort();
        admissible.push(names.iter().map(|l| l.to_string()).collect());
        dets.push(disc.overlattice(a)?.det().to_string());
    }
    admissible.sort();
    dets.sort();
    Ok(EnriquesDiscReport {
        lattice: "4A1+D5".into(),
        invariant_factors: disc.invariant_factors.clone(),
        min_generators: disc.min_generators(),
        q_v: fmt_q(&disc.q(&v)?),
        q_e_sum: fmt_q(&disc.q(&e_sum)?),
        q_e1_e2: fmt_q(&disc.q(&e12)?),
        isotropic_order4: iso.len(),
        all_contain_e_sum: all_contain && !admissible.is_empty(),
        admissible,
        overlattice_dets: dets,
        conclusion: "every admissible overlattice contains e1+e2+e3+e4, so the four A1 curves \
                     sum to a class divisible by 2"
            .into(),
        citation: "exclusion of 4A1+D5 completed by the K3 double-cover argument (geometric fact, cited)".into(),
    })
}

/// `q` reduced into `[0, 2)` as a plain rational; `-5/4` becomes `3/4`.
pub fn q_mod2(x: &Q) -> Q {
    let two = q_int(2);
    let k = (x / &two).floor();
    x - k * two
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    fn lat(parts: &[GramLattice]) -> GramLattice {
        GramLattice::direct_sum_all(parts).unwrap()
    }

    #[test]
    fn square_examples() {
        let r = lat(&[GramLattice::a(1), GramLattice::a(1), GramLattice::diag(-3), GramLattice::diag(-3), GramLattice::diag(-3)]);
        let v = square_index_test(&ExtendedLattice::by_canonical_class(&r).unwrap()).unwrap();
        assert!(v.is_obstructed());
        assert_eq!(v.details["det"], "-540");
        let r = lat(&[GramLattice::a(1), GramLattice::a(1), GramLattice::a(1), GramLattice::a(2), GramLattice::diag(-5)]);
        assert!(!square_index_test(&ExtendedLattice::by_canonical_class(&r).unwrap()).unwrap().is_obstructed());
        let six = lat(&vec![GramLattice::a(1); 6]);
        let v = square_index_test(&ExtendedLattice::by_canonical_class(&six).unwrap()).unwrap();
        assert!(v.is_obstructed());
        assert_eq!(v.details["det"], "192");
    }

    #[test]
    fn wrong_branch() {
        let r = lat(&[GramLattice::a(1), GramLattice::a(1), GramLattice::a(1), GramLattice::a(3), GramLattice::a(3)]);
        let ext = ExtendedLattice::by_canonical_class(&r).unwrap();
        assert!(matches!(square_index_test(&ext), Err(Error::WrongBranch(_))));
        assert!(matches!(finite_index_embed_test(&ext), Err(Error::WrongBranch(_))));
        assert!(matches!(equal_rank_embed_test(&GramLattice::h()), Err(Error::NotNegativeDefinite)));
    }

    #[test]
    fn equal_rank_examples() {
        let four = [GramLattice::a(1), GramLattice::a(1), GramLattice::a(1), GramLattice::a(1)];
        let mut parts = four.to_vec();
        parts.push(GramLattice::a(5));
        let v = equal_rank_embed_test(&lat(&parts)).unwrap();
        assert_eq!(v.failing_place(), Some(Place::Prime(3)));
        let mut parts = four.to_vec();
        parts.push(GramLattice::from_hj(&"3,2,2,2,2,3".parse().unwrap()));
        assert_eq!(equal_rank_embed_test(&lat(&parts)).unwrap().failing_place(), Some(Place::Prime(3)));
        let r = lat(&[GramLattice::a(1), GramLattice::a(1), GramLattice::a(1), GramLattice::a(3), GramLattice::a(3)]);
        assert!(!equal_rank_embed_test(&r).unwrap().is_obstructed());
        assert!(!equal_rank_embed_test(&GramLattice::e(8).unwrap()).unwrap().is_obstructed());
    }

    #[test]
    fn finite_index_examples() {
        let r = lat(&[GramLattice::a(1), GramLattice::a(1), GramLattice::a(1), GramLattice::a(2), GramLattice::diag(-5)]);
        let v = finite_index_embed_test(&ExtendedLattice::by_canonical_class(&r).unwrap()).unwrap();
        assert_eq!(v.failing_place(), Some(Place::Prime(3)));
        let r = lat(&[GramLattice::a(1), GramLattice::a(1), GramLattice::a(1), GramLattice::a(2), GramLattice::a(2)]);
        let ext = ExtendedLattice::by_canonical_class(&r).unwrap();
        assert!(finite_index_embed_test(&ext).unwrap().is_obstructed());
        let k_dot = ext.k_dot.clone();
        let perturbed = ExtendedLattice::with_data(&r, 1.into(), k_dot).unwrap();
        let v = finite_index_embed_test(&perturbed).unwrap();
        assert_eq!(v.failing_place(), None);
        assert_eq!(v.details["det"].trim_start_matches('-'), "72");
    }

    #[test]
    fn t6_small_sweep() {
        let c = t6_check(&"3,2,2,2,2,3".parse().unwrap()).unwrap();
        assert_eq!((c.eps3, c.eps3_tau), (1, -1));
        assert_eq!(c.last_diagonal, "-54/35");
        assert!(c.passed());
        assert!(t6_epsilon_sweep(8).unwrap().ok());
    }

    #[test]
    fn enriques_disc() {
        let r = enriques_disc_analysis().unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.min_generators, 5);
        assert_eq!(r.q_e_sum, "0");
        assert_eq!(r.q_e1_e2, "1");
        assert_eq!(q_mod2(&q_frac(-5, 4)), q_frac(3, 4));
    }
}
