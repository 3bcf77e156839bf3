//! Order tuples and candidate configurations.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::hjcf::HjString;
use crate::rational::{q_frac, q_int, Q};
use crate::singularity::{enumerate_cyclic_of_order, enumerate_dihedral, enumerate_polyhedral, QuotientSingularity};

use super::CensusConfig;

/// Orders of the local fundamental groups at five points, sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderTuple {
    Finite(Vec<u64>),
    /// The fixed orders followed by a free order `q >= ` the last fixed one.
    Family(Vec<u64>),
}

impl fmt::Display for OrderTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (fixed, free) = match self {
            OrderTuple::Finite(v) => (v, false),
            OrderTuple::Family(v) => (v, true),
        };
        let mut parts: Vec<String> = fixed.iter().map(u64::to_string).collect();
        if free {
            parts.push("q".into());
        }
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for OrderTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Solves `sum 1/q_i >= 2` over sorted 5-tuples of orders `>= 2`, i.e.
/// `e_orb >= 0`. A last slot with no remaining constraint becomes a family.
pub fn enumerate_tuples() -> Vec<OrderTuple> {
    fn search(prefix: &mut Vec<u64>, need: Q, out: &mut Vec<OrderTuple>) {
        let k = 5 - prefix.len() as i64;
        let lo = prefix.last().copied().unwrap_or(2);
        if k == 1 && !need.is_positive() {
            out.push(OrderTuple::Family(prefix.clone()));
            return;
        }
        assert!(need.is_positive(), "unbounded slot before the last position");
        // the remaining k terms are each at most 1/q
        let hi = (q_int(k) / &need).floor().to_integer().to_u64().unwrap();
        for q in lo..=hi {
            let rest = &need - q_frac(1, q as i64);
            prefix.push(q);
            if k == 1 {
                if !rest.is_positive() {
                    out.push(OrderTuple::Finite(prefix.clone()));
                }
            } else {
                search(prefix, rest, out);
            }
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    search(&mut Vec::new(), q_int(2), &mut out);
    out.sort();
    out
}

/// The tuples as printed, for golden comparison.
pub fn printed_tuples() -> Vec<OrderTuple> {
    let mut v: Vec<OrderTuple> = [[2, 2, 3, 3, 3], [2, 2, 2, 4, 4], [2, 2, 2, 3, 3], [2, 2, 2, 3, 4], [2, 2, 2, 3, 5], [2, 2, 2, 3, 6]]
        .iter()
        .map(|t| OrderTuple::Finite(t.to_vec()))
        .collect();
    v.push(OrderTuple::Family(vec![2, 2, 2, 2]));
    v.sort();
    v
}

/// `e_orb = 3 - sum (1 - 1/|G_p|)`.
pub fn e_orb(orders: &[u64]) -> Q {
    orders.iter().fold(q_int(3), |acc, &q| acc - (Q::one() - q_frac(1, q as i64)))
}

/// A configuration: one singularity per point, canonically ordered.
pub type Config = Vec<QuotientSingularity>;

/// Sort key: `A_n`, `D_n`, `E_n`, single curves, other strings, then
/// non-cyclic points that are not rational double points.
pub fn component_key(p: &QuotientSingularity) -> (u8, u64, String) {
    let name = p.lattice_name();
    let num = |prefix: &str| name[prefix.len()..].parse::<u64>().unwrap_or(0);
    match p {
        QuotientSingularity::Cyclic(s) if s.is_rdp() => (0, s.len() as u64, name),
        QuotientSingularity::Cyclic(s) if s.len() == 1 => (3, u64::from(s.entries()[0]), name),
        QuotientSingularity::Cyclic(_) => (4, 0, name),
        _ if name.starts_with('D') && !name.contains('(') => (1, num("D"), name),
        _ if name.starts_with('E') => (2, num("E"), name),
        _ => (5, 0, name),
    }
}

pub fn canonicalize(mut config: Config) -> Config {
    config.sort_by_cached_key(component_key);
    config
}

/// `3A1+A2+diag(-5)`: equal components grouped with a multiplicity prefix.
pub fn config_name(config: &[QuotientSingularity]) -> String {
    let mut parts: Vec<(String, usize)> = Vec::new();
    for p in config {
        let name = p.lattice_name();
        match parts.last_mut() {
            Some((last, k)) if *last == name => *k += 1,
            _ => parts.push((name, 1)),
        }
    }
    parts
        .into_iter()
        .map(|(n, k)| if k == 1 { n } else { format!("{k}{n}") })
        .collect::<Vec<_>>()
        .join("+")
}

/// Cyclic options per order, capped by the string length bound.
fn cyclic_options(q: u64, max_len: usize) -> (Vec<QuotientSingularity>, usize) {
    let all = enumerate_cyclic_of_order(q);
    let total = all.len();
    let kept: Vec<_> = all
        .into_iter()
        .filter(|s: &HjString| s.len() <= max_len)
        .map(QuotientSingularity::Cyclic)
        .collect();
    let skipped = total - kept.len();
    (kept, skipped)
}

/// Candidate configurations with their actual order tuples.
#[derive(Clone, Debug, Default)]
pub struct Candidates {
    pub configs: Vec<(Vec<u64>, Config)>,
    /// Strings of admissible order dropped by `max_len`.
    pub skipped_by_len: usize,
}

/// All configurations realizing a tuple. For the family, `q` runs up to
/// `max_q` over cyclic points, non-cyclic points of order at most `max_q`
/// are added, and polyhedral points for `b <= max_b`.
pub fn enumerate_configs(tuple: &OrderTuple, cfg: &CensusConfig) -> Candidates {
    let mut out = Candidates::default();
    match tuple {
        OrderTuple::Finite(orders) => {
            let mut seen = BTreeSet::new();
            let mut partial: Vec<Config> = vec![Vec::new()];
            for &q in orders {
                let (opts, skipped) = cyclic_options(q, cfg.max_len);
                out.skipped_by_len += skipped;
                partial = partial
                    .into_iter()
                    .flat_map(|c| {
                        opts.iter().map(move |o| {
                            let mut c = c.clone();
                            c.push(o.clone());
                            c
                        })
                    })
                    .collect();
            }
            for c in partial {
                let c = canonicalize(c);
                if seen.insert(config_name(&c)) {
                    out.configs.push((orders.clone(), c));
                }
            }
        }
        OrderTuple::Family(fixed) => {
            let base: Config = fixed
                .iter()
                .map(|&q| {
                    let (opts, _) = cyclic_options(q, cfg.max_len);
                    assert_eq!(opts.len(), 1, "family prefix must be rigid");
                    opts[0].clone()
                })
                .collect();
            let lo = fixed.last().copied().unwrap_or(2);
            let mut push = |p: QuotientSingularity| {
                let h = p.group_order().to_u64().expect("order fits in u64");
                let mut orders = fixed.clone();
                orders.push(h);
                let mut c = base.clone();
                c.push(p);
                out.configs.push((orders, canonicalize(c)));
            };
            let mut skipped = 0;
            for q in lo..=cfg.max_q {
                let (opts, s) = cyclic_options(q, cfg.max_len);
                skipped += s;
                opts.into_iter().for_each(&mut push);
            }
            enumerate_dihedral(cfg.max_q).into_iter().for_each(&mut push);
            enumerate_polyhedral(cfg.max_b).into_iter().for_each(&mut push);
            out.skipped_by_len = skipped;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn tuples_match_printed_list() {
        let t = enumerate_tuples();
        assert_eq!(t, printed_tuples());
        assert!(!t.contains(&OrderTuple::Finite(vec![2, 2, 2, 3, 7])));
        assert_eq!(OrderTuple::Family(vec![2, 2, 2, 2]).to_string(), "(2,2,2,2,q)");
    }

    #[test]
    fn orbifold_euler() {
        assert_eq!(e_orb(&[2, 2, 2, 4, 4]), Q::zero());
        assert_eq!(e_orb(&[2, 2, 2, 2, 2]), q_frac(1, 2));
        assert_eq!(e_orb(&[2; 6]), Q::zero());
    }

    #[test]
    fn finite_configs() {
        let cfg = CensusConfig::default();
        let names = |t: &[u64]| -> Vec<String> {
            let mut v: Vec<String> = enumerate_configs(&OrderTuple::Finite(t.to_vec()), &cfg)
                .configs
                .iter()
                .map(|(_, c)| config_name(c))
                .collect();
            v.sort();
            v
        };
        assert_eq!(names(&[2, 2, 2, 4, 4]), ["3A1+2A3", "3A1+2diag(-4)", "3A1+A3+diag(-4)"]);
        assert_eq!(names(&[2, 2, 3, 3, 3]).len(), 4);
        assert!(names(&[2, 2, 2, 3, 5]).contains(&"3A1+A2+diag(-5)".to_string()));
        assert!(names(&[2, 2, 2, 3, 5]).contains(&"3A1+A2+HJ[3,2]".to_string()));
    }

    #[test]
    fn family_includes_d5() {
        let cfg = CensusConfig { max_q: 12, ..CensusConfig::default() };
        let c = enumerate_configs(&OrderTuple::Family(vec![2, 2, 2, 2]), &cfg);
        assert!(c.configs.iter().any(|(o, c)| o[4] == 12 && config_name(c) == "4A1+D5"));
    }
}
