//! End-to-end census of five-point configurations.
//!
//! Each candidate configuration `R` is run through, in order: the sign of
//! `K_S^2` (together with the orbifold BMY upper bound for the
//! `(2,2,2,2,q)` family when `nef` is set), then either the square-index and
//! finite-index embedding tests or, when the canonical class is numerically
//! trivial, the equal-rank embedding test.

mod enumerate;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::lattice::{ExtendedLattice, GramLattice};
use crate::obstruction::{equal_rank_embed_test, finite_index_embed_test, square_index_test, ObstructionVerdict};
use crate::rational::{fmt_q, q_int, Q};
use crate::singularity::{ser_q, ser_q_vec, QuotientSingularity};
use crate::{Error, Result};

pub use enumerate::{
    canonicalize, component_key, config_name, e_orb, enumerate_configs, enumerate_tuples, printed_tuples, Candidates,
    Config, OrderTuple,
};
pub use report::{
    run_census, six_point_precheck, structural_sweeps, verify_lemmas, Citation, Golden, Report, Summary, Sweeps,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Table,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            other => Err(Error::Config(format!("unknown format {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusConfig {
    /// Bound on the free order of the `(2,2,2,2,q)` family.
    pub max_q: u64,
    /// Bound on the length of cyclic strings.
    pub max_len: usize,
    /// Apply the orbifold BMY upper bound `K_S^2 <= 3 e_orb`.
    pub nef: bool,
    /// Length bound for the structural sweeps (`T_6`, `V_l`).
    pub sweep_len: usize,
    /// Polyhedral points are enumerated for `2 <= b <= max_b`.
    pub max_b: u32,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl Default for CensusConfig {
    fn default() -> Self {
        Self { max_q: 200, max_len: 24, nef: true, sweep_len: 12, max_b: 12, format: Format::Json, out: None }
    }
}

impl CensusConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_q < 8 {
            return Err(Error::Config(format!("max_q = {} < 8", self.max_q)));
        }
        if self.max_len < 6 {
            return Err(Error::Config(format!("max_len = {} < 6", self.max_len)));
        }
        if self.sweep_len < 6 {
            return Err(Error::Config(format!("sweep_len = {} < 6", self.sweep_len)));
        }
        if self.max_b < 2 {
            return Err(Error::Config(format!("max_b = {} < 2", self.max_b)));
        }
        Ok(())
    }
}

/// Which part of the argument a filter belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    /// Sign, BMY and square tests.
    Reduction,
    /// Rational embedding tests.
    Embedding,
}

#[derive(Clone, Debug, Serialize)]
pub struct FilterRecord {
    pub step: usize,
    pub stage: Stage,
    pub pass: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<ObstructionVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Excluded { filter: String, reason: String },
    Survivor { annotations: Vec<String> },
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusCase {
    pub case_id: String,
    pub name: String,
    pub tuple: Vec<u64>,
    /// The case belongs to the `(2,2,2,2,q)` family.
    pub family: bool,
    pub config: Vec<QuotientSingularity>,
    pub rank_r: usize,
    pub ks2_surface: i64,
    #[serde(serialize_with = "ser_q_vec")]
    pub dp2_list: Vec<Q>,
    #[serde(serialize_with = "ser_q")]
    pub ks2: Q,
    #[serde(serialize_with = "ser_q")]
    pub e_orb: Q,
    pub numerically_trivial: bool,
    pub filters: BTreeMap<String, FilterRecord>,
    pub verdict: Verdict,
    /// Survived every reduction-stage filter.
    pub passed_reduction: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citation: Option<Citation>,
}

impl CensusCase {
    pub fn is_survivor(&self) -> bool {
        matches!(self.verdict, Verdict::Survivor { .. })
    }

    pub fn is_cyclic(&self) -> bool {
        self.config.iter().all(QuotientSingularity::is_cyclic)
    }

    pub fn excluded_by(&self) -> Option<&str> {
        match &self.verdict {
            Verdict::Excluded { filter, .. } => Some(filter),
            Verdict::Survivor { .. } => None,
        }
    }

    /// The free point of a family case.
    pub fn special_point(&self) -> Option<&QuotientSingularity> {
        self.family.then(|| special_point(&self.config)).flatten()
    }
}

/// The point that is not one of the four fixed `A_1` points (for `5A_1`,
/// any of them).
fn special_point(config: &[QuotientSingularity]) -> Option<&QuotientSingularity> {
    config.iter().find(|p| p.lattice_name() != "A1").or(config.last())
}

pub fn lattice_of(config: &[QuotientSingularity]) -> GramLattice {
    let grams: Vec<GramLattice> = config.iter().map(QuotientSingularity::gram).collect();
    GramLattice::direct_sum_all(&grams).expect("nonempty configuration")
}

/// Which branch of the reduction argument a family case falls into.
pub fn family_subcase(p: &QuotientSingularity) -> String {
    match p {
        QuotientSingularity::Cyclic(s) if s.len() == 1 => "l = 1: K_S^2 >= 4".into(),
        QuotientSingularity::Cyclic(s) => {
            let l = s.len() as i64;
            let excess = s.entry_sum() as i64 - 3 * l;
            match excess {
                -5 => "sum n_j = 3l-5".into(),
                -4 => "sum n_j = 3l-4".into(),
                -3 => "sum n_j = 3l-3".into(),
                _ => format!("sum n_j = 3l{excess:+}, outside 3l-5..3l-3"),
            }
        }
        QuotientSingularity::Dihedral { b, arm } => {
            if arm.len() == 1 {
                return "dihedral, l = 1: K_S'^2 = 1".into();
            }
            let v = arm.entry_sum() as i64 - 3 * arm.len() as i64 + i64::from(*b);
            format!("dihedral, sum n_j - 3l + b = {v}")
        }
        QuotientSingularity::Polyhedral { row, b } => format!("polyhedral row {} at b = {b}", row.id),
    }
}

fn record(filters: &mut BTreeMap<String, FilterRecord>, name: &str, stage: Stage, pass: bool, detail: String, verdict: Option<ObstructionVerdict>) {
    let step = filters.len() + 1;
    filters.insert(name.into(), FilterRecord { step, stage, pass, detail, verdict });
}

/// Builds and evaluates one case.
pub fn evaluate_case(orders: &[u64], config: Config, family: bool, cfg: &CensusConfig) -> Result<CensusCase> {
    let config = canonicalize(config);
    let name = config_name(&config);
    let tuple_str = orders.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let case_id = format!("{name}@({tuple_str})");
    let r = lattice_of(&config);
    let rank_r = r.rank();
    let ks2_surface = 9 - rank_r as i64;
    let dp2_list: Vec<Q> = config.iter().map(|p| p.discrepancy_and_dp2().map(|(_, d)| d)).collect::<Result<_>>()?;
    let ks2 = q_int(ks2_surface) - dp2_list.iter().sum::<Q>();
    let e = e_orb(orders);

    let ext = ExtendedLattice::by_canonical_class(&r)?;
    if ext.ks2() != ks2 {
        return Err(Error::Inconsistency(format!("{case_id}: K_S^2 from the lattice differs from the local sum")));
    }
    if let Some(l) = ext.lattice() {
        if Q::new(l.det(), r.det()) != ks2 {
            return Err(Error::Inconsistency(format!("{case_id}: det(R+K) != det(R) K_S^2")));
        }
    }
    let trivial = ext.is_numerically_trivial();
    if trivial != ks2.is_zero() {
        return Err(Error::Inconsistency(format!("{case_id}: degeneracy does not match K_S^2 = 0")));
    }

    let mut filters = BTreeMap::new();
    let mut notes = Vec::new();
    let mut failed: Option<(String, String)> = None;
    let fail = |name: &str, reason: String, failed: &mut Option<(String, String)>| {
        if failed.is_none() {
            *failed = Some((name.to_string(), reason));
        }
    };

    if family {
        if let Some(p) = special_point(&config) {
            notes.push(family_subcase(p));
        }
    }

    // (i) sign of K_S^2, and the BMY window for the family
    let upper = family && cfg.nef;
    let (fname, pass, detail) = if upper {
        let bound = q_int(3) * &e;
        let pass = !ks2.is_negative() && ks2 <= bound;
        (
            "bmy_window",
            pass,
            format!("0 <= K_S^2 = {} <= 3 e_orb = {}", fmt_q(&ks2), fmt_q(&bound)),
        )
    } else {
        ("ks2_nonnegative", !ks2.is_negative(), format!("K_S^2 = {}", fmt_q(&ks2)))
    };
    if !pass {
        let reason = if ks2.is_negative() {
            format!("K_S^2 = {} < 0", fmt_q(&ks2))
        } else {
            format!("K_S^2 = {} > 3 e_orb = {}", fmt_q(&ks2), fmt_q(&(q_int(3) * &e)))
        };
        fail(fname, reason, &mut failed);
    }
    record(&mut filters, fname, Stage::Reduction, pass, detail, None);

    // (ii)/(iii) lattice tests, only while nothing has failed
    if failed.is_none() {
        if trivial {
            let v = equal_rank_embed_test(&r)?;
            let pass = !v.is_obstructed();
            if !pass {
                fail("equal_rank_embed", v.to_string(), &mut failed);
            }
            record(&mut filters, "equal_rank_embed", Stage::Embedding, pass, v.to_string(), Some(v));
        } else {
            let sq = square_index_test(&ext)?;
            let pass = !sq.is_obstructed();
            let det = sq.details["det"].clone();
            if !pass {
                fail("square_index", format!("|det(R+K)| = {} is not a square", det.trim_start_matches('-')), &mut failed);
            }
            record(&mut filters, "square_index", Stage::Reduction, pass, format!("det(R+K) = {det}"), Some(sq));
            if pass {
                let v = finite_index_embed_test(&ext)?;
                let pass = !v.is_obstructed();
                if !pass {
                    fail("finite_index_embed", v.to_string(), &mut failed);
                }
                record(&mut filters, "finite_index_embed", Stage::Embedding, pass, v.to_string(), Some(v));
            }
        }
    }

    let passed_reduction = filters.values().filter(|f| f.stage == Stage::Reduction).all(|f| f.pass);
    let verdict = match failed {
        Some((filter, reason)) => Verdict::Excluded { filter, reason },
        None => Verdict::Survivor { annotations: Vec::new() },
    };
    Ok(CensusCase {
        case_id,
        name,
        tuple: orders.to_vec(),
        family,
        config,
        rank_r,
        ks2_surface,
        dp2_list,
        ks2,
        e_orb: e,
        numerically_trivial: trivial,
        filters,
        verdict,
        passed_reduction,
        notes,
        citation: None,
    })
}

/// The five configurations that survive the reduction stage apart from the
/// `T_6` family, as printed.
pub fn printed_cyclic_reduction_survivors() -> Vec<&'static str> {
    vec!["3A1+2A3", "3A1+A2+diag(-5)", "3A1+A2+A4", "3A1+2A2", "4A1+A5"]
}

/// Evaluates every candidate in parallel and sorts by `case_id`.
pub fn evaluate_all(cfg: &CensusConfig) -> Result<(Vec<CensusCase>, usize)> {
    let mut jobs = Vec::new();
    let mut skipped = 0;
    for t in enumerate_tuples() {
        let family = matches!(t, OrderTuple::Family(_));
        let c = enumerate_configs(&t, cfg);
        skipped += c.skipped_by_len;
        jobs.extend(c.configs.into_iter().map(|(o, c)| (o, c, family)));
    }
    let mut cases: Vec<CensusCase> =
        jobs.into_par_iter().map(|(o, c, family)| evaluate_case(&o, c, family, cfg)).collect::<Result<_>>()?;
    cases.sort_by(|a, b| a.case_id.cmp(&b.case_id));
    Ok((cases, skipped))
}
