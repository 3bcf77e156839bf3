//! One PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use common::{chain, discrepancy, gram_schmidt_diagonal, hilbert_oracle, q, qf, to_q};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rhpp::census::{enumerate_tuples, run_census, CensusConfig, CensusCase, OrderTuple, Report};
use rhpp::hjcf::{check_v_lemma, generate_td, td_by_classification};
use rhpp::lattice::{hj_diagonal, tau_diagonal, tau_gram, ExtendedLattice, GramLattice};
use rhpp::obstruction::{enriques_disc_analysis, epsilon3, i1m_form, t6_epsilon_sweep};
use rhpp::padic::{hilbert, prime_divisors, DiagonalForm, Place};
use rhpp::rational::Q;
use rhpp::singularity::{dihedral_closed_form, ks2_star, ks_formulas, QuotientSingularity, StarRow, STAR_ROWS};
use rhpp::spec::parse_lattice;
use rhpp::HjString;
use serde_json::Value;

type Outcome = Result<(), String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn find<'a>(r: &'a Report, name: &str) -> Result<&'a CensusCase, String> {
    r.cases.iter().find(|c| c.name == name).ok_or_else(|| format!("{name} not in census"))
}

fn det_detail(c: &CensusCase) -> Option<String> {
    let v = c.filters.get("square_index")?.verdict.as_ref()?;
    Some(v.details.get("det")?.trim_start_matches('-').to_string())
}

fn lattice(spec: &str) -> GramLattice {
    parse_lattice(spec).unwrap().lattice()
}

fn tuples() -> Outcome {
    let fin = |t: &[u64]| OrderTuple::Finite(t.to_vec());
    let mut expected = vec![
        fin(&[2, 2, 3, 3, 3]),
        fin(&[2, 2, 2, 4, 4]),
        fin(&[2, 2, 2, 3, 3]),
        fin(&[2, 2, 2, 3, 4]),
        fin(&[2, 2, 2, 3, 5]),
        fin(&[2, 2, 2, 3, 6]),
        OrderTuple::Family(vec![2, 2, 2, 2]),
    ];
    expected.sort();
    let got = enumerate_tuples();
    ensure(got == expected, || format!("got {got:?}"))
}

fn star_table() -> Outcome {
    let formulas = ks_formulas();
    ensure(formulas.len() == STAR_ROWS.len(), || format!("{} formulas", formulas.len()))?;
    for f in &formulas {
        let row = StarRow::by_id(f.row).map_err(|e| e.to_string())?;
        for b in 2..=100 {
            let p = QuotientSingularity::polyhedral(row.kind, row.index, b).map_err(|e| e.to_string())?;
            let (_, dp2) = discrepancy(p.gram().rows());
            let pipeline = q(5 - p.rank() as i64) - dp2;
            ensure(f.eval(b) == pipeline, || format!("{} at b = {b}: {} vs {pipeline}", f.row, f.eval(b)))?;
        }
    }
    let o2 = StarRow::matching(&[(2, 1), (3, 1), (4, 3)]).map_err(|e| e.to_string())?;
    let i4 = StarRow::matching(&[(2, 1), (3, 2), (5, 2)]).map_err(|e| e.to_string())?;
    ensure(ks2_star(o2.id, 2).unwrap() == qf(-2, 5), || "O2 at b = 2".into())?;
    ensure(ks2_star(i4.id, 2).unwrap() == qf(-3, 13), || "I4 at b = 2".into())
}

fn intermediate(r: &Report) -> Outcome {
    // the T6 strings of q = 24, 54, 96, 150 with length <= 24, one per orientation pair
    let t6 = ["[3,2,2,2,2,3]", "[3,3,2,2,2,2,4,2]", "[4,2,2,2,2,3,2]", "[5,2,2,2,2,3,2,2]", "[6,2,2,2,2,3,2,2,2]"];
    let mut expected: BTreeSet<String> =
        ["3A1+2A3", "3A1+A2+diag(-5)", "3A1+A2+A4", "3A1+2A2", "4A1+A5"].iter().map(|s| s.to_string()).collect();
    expected.extend(t6.iter().map(|s| format!("4A1+HJ{s}")));
    let got: BTreeSet<String> = r.summary.intermediate_survivors.iter().cloned().collect();
    ensure(got == expected, || format!("intermediate survivors {got:?}"))?;

    let sq = find(r, "2A1+3diag(-3)")?;
    ensure(sq.excluded_by() == Some("square_index") && det_detail(sq).as_deref() == Some("540"), || {
        format!("2A1+3diag(-3): {:?} {:?}", sq.excluded_by(), det_detail(sq))
    })?;
    let a5 = find(r, "3A1+A2+A5")?;
    ensure(a5.excluded_by() == Some("ks2_nonnegative") && a5.ks2 == q(-1), || format!("3A1+A2+A5: K^2 = {}", a5.ks2))?;
    for c in r.cases.iter().filter(|c| !c.family && !c.passed_reduction) {
        let by = c.excluded_by();
        ensure(matches!(by, Some("square_index" | "ks2_nonnegative")), || format!("{} excluded by {by:?}", c.case_id))?;
        if by == Some("ks2_nonnegative") {
            ensure(c.ks2.is_negative(), || format!("{} has K^2 = {}", c.case_id, c.ks2))?;
        }
    }
    Ok(())
}

fn noncyclic(r: &Report) -> Outcome {
    let mut rows_seen = BTreeSet::new();
    let mut dihedral = 0;
    let mut lattice_survivors = BTreeSet::new();
    for c in r.cases.iter().filter(|c| c.family) {
        match c.special_point() {
            Some(QuotientSingularity::Polyhedral { row, .. }) => {
                rows_seen.insert(row.id);
                ensure(c.excluded_by() == Some("bmy_window"), || format!("{} excluded by {:?}", c.case_id, c.excluded_by()))?;
            }
            Some(QuotientSingularity::Dihedral { b, arm }) => {
                dihedral += 1;
                if *b == 2 && arm.entries() == [2, 2] {
                    ensure(c.filters["bmy_window"].pass, || "D5 fails the window".into())?;
                    if c.excluded_by().is_none() {
                        lattice_survivors.insert(c.name.clone());
                    }
                } else {
                    ensure(c.excluded_by() == Some("bmy_window"), || format!("{} excluded by {:?}", c.case_id, c.excluded_by()))?;
                }
            }
            _ => {}
        }
    }
    ensure(rows_seen.len() == STAR_ROWS.len(), || format!("rows seen {rows_seen:?}"))?;
    ensure(dihedral > 0, || "no dihedral cases".into())?;
    ensure(lattice_survivors.iter().eq(["4A1+D5"].iter()), || format!("{lattice_survivors:?}"))
}

fn epsilons() -> Outcome {
    for m in 1..=30 {
        ensure(epsilon3(&i1m_form(m)) == 1, || format!("I_(1,{m})"))?;
    }
    let e8 = DiagonalForm::new(vec![q(-2), qf(-3, 2), qf(-4, 3), qf(-5, 4), qf(-6, 5), qf(-7, 6), qf(-8, 7), qf(-1, 8)]).unwrap();
    ensure(epsilon3(&e8) == 1, || "E8 diagonal".into())?;
    ensure(epsilon3(&lattice("H+E8").diagonalize().unwrap()) == 1, || "H+E8".into())?;
    ensure(epsilon3(&lattice("3A1+A2+A4").diagonalize().unwrap()) == -1, || "3A1+A2+A4".into())?;
    for spec in ["3A1+A2+diag(-5)", "3A1+2A2"] {
        let ext = ExtendedLattice::by_canonical_class(&lattice(spec)).unwrap();
        ensure(epsilon3(&ext.lattice().unwrap().diagonalize().unwrap()) == -1, || format!("{spec} + K"))?;
    }
    Ok(())
}

fn t6_sweep() -> Outcome {
    let sweep = t6_epsilon_sweep(12).map_err(|e| e.to_string())?;
    ensure(sweep.ok() && sweep.strings > 0, || format!("{} strings, {} failures", sweep.strings, sweep.failures.len()))?;
    // both orientations are present
    let strings = generate_td(6, 12);
    ensure(strings.iter().all(|s| strings.contains(&s.reverse())), || "generation is not closed under reversal".into())?;
    ensure(strings == td_by_classification(6, 12), || "generation and classification disagree".into())
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-2000i64..=-1, 1i64..=2000]
}

fn hj_string(max_len: usize) -> impl Strategy<Value = HjString> {
    proptest::collection::vec(2u32..=9, 1..=max_len).prop_map(|v| HjString::new(v).unwrap())
}

fn run<S: Strategy>(name: &str, s: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome {
    let mut runner = TestRunner::new(Config { cases: 256, failure_persistence: None, ..Config::default() });
    runner.run(&s, test).map_err(|e| format!("{name}: {e}"))
}

fn structural() -> Outcome {
    let v = check_v_lemma(12, 8);
    ensure(v.passed(), || format!("V lemma: {:?}", v.violations.first()))?;

    run("t-invariance", hj_string(12), |s| {
        let t = s.t_invariant();
        prop_assert_eq!(s.tau().t_invariant(), t.clone());
        prop_assert_eq!(s.reverse().t_invariant(), t);
        Ok(())
    })?;
    run("continuant identity", hj_string(12), |s| {
        prop_assert_eq!(s.q1() * s.ql(), s.q1l() * s.det() + BigInt::one());
        Ok(())
    })?;
    run("cyclic discrepancies", hj_string(10), |s| {
        let (a, d2) = discrepancy(&chain(s.entries()));
        prop_assert_eq!(s.discrepancies(), a);
        prop_assert_eq!(s.dp_squared(), d2);
        Ok(())
    })?;
    run("dihedral discrepancies", (2u32..7, hj_string(6)), |(b, s)| {
        prop_assume!(s.len() >= 2);
        let p = QuotientSingularity::dihedral(b, s.clone()).unwrap();
        let (a, d2) = discrepancy(p.gram().rows());
        let (al, cd2) = dihedral_closed_form(b, &s);
        prop_assert_eq!(a.last().unwrap(), &al);
        prop_assert_eq!(cd2, d2);
        Ok(())
    })?;
    run("diagonalization", hj_string(10), |s| {
        let oracle = gram_schmidt_diagonal(&to_q(GramLattice::from_hj(&s).rows()));
        prop_assert_eq!(hj_diagonal(&s).coefficients().to_vec(), oracle);
        if s.len() >= 2 {
            let oracle = gram_schmidt_diagonal(&to_q(tau_gram(&s).rows()));
            prop_assert_eq!(tau_diagonal(&s).unwrap().coefficients().to_vec(), oracle);
        }
        Ok(())
    })?;

    let qi = |n: i64| Q::from_integer(n.into());
    let h = move |a: i64, b: i64, p: Place| hilbert(&qi(a), &qi(b), p).unwrap();
    run("hilbert vs oracle", (nonzero(), nonzero(), 0u64..4), |(a, b, i)| {
        let p = [0u64, 2, 3, 5][i as usize];
        let place = if p == 0 { Place::Real } else { Place::Prime(p) };
        prop_assert_eq!(h(a, b, place), hilbert_oracle(a.into(), b.into(), p));
        Ok(())
    })?;
    run("product formula", (nonzero(), nonzero()), |(a, b)| {
        let prod = prime_divisors(&BigInt::from(2 * a * b)).into_iter().fold(h(a, b, Place::Real), |acc, p| acc * h(a, b, Place::Prime(p)));
        prop_assert_eq!(prod, 1);
        Ok(())
    })?;
    run("bimultiplicativity", (nonzero(), nonzero(), nonzero(), 0u64..4), |(a, a2, b, i)| {
        let p = [0u64, 2, 3, 7][i as usize];
        let place = if p == 0 { Place::Real } else { Place::Prime(p) };
        prop_assert_eq!(hilbert(&(qi(a) * qi(a2)), &qi(b), place).unwrap(), h(a, b, place) * h(a2, b, place));
        Ok(())
    })?;
    let basis = (proptest::collection::vec(-3i64..=3, 9), proptest::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..8));
    run("basis change", basis, |(a, ops)| {
        let n = 3;
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                g[i][j] = -(0..n).map(|k| a[k * n + i] * a[k * n + j]).sum::<i64>();
            }
            g[i][i] -= 1;
        }
        let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for (i, j, c) in ops.into_iter().filter(|(i, j, _)| i != j) {
            for k in 0..n {
                u[i][k] += c * u[j][k];
            }
        }
        let g2: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).flat_map(|k| (0..n).map(move |l| (k, l))).map(|(k, l)| u[i][k] * g[k][l] * u[j][l]).sum()).collect())
            .collect();
        let d1 = GramLattice::new(g).unwrap().diagonalize().unwrap();
        let d2 = GramLattice::new(g2).unwrap().diagonalize().unwrap();
        for p in [2u64, 3, 5, 7] {
            let pl = Place::Prime(p);
            prop_assert_eq!(d1.d(pl).unwrap(), d2.d(pl).unwrap());
            prop_assert_eq!(d1.epsilon(pl).unwrap(), d2.epsilon(pl).unwrap());
        }
        Ok(())
    })
}

fn discriminant() -> Outcome {
    let a = enriques_disc_analysis().map_err(|e| e.to_string())?;
    ensure(a.invariant_factors == [2, 2, 2, 2, 4], || format!("{:?}", a.invariant_factors))?;
    // -5/4 is 3/4 modulo 2
    ensure(a.q_v == "3/4" && qf(-5, 4) + q(2) == qf(3, 4), || format!("q(v) = {}", a.q_v))?;
    ensure(!a.admissible.is_empty(), || "no admissible subgroups".into())?;
    for sub in &a.admissible {
        ensure(sub.iter().any(|x| x == "e1+e2+e3+e4"), || format!("{sub:?}"))?;
    }
    Ok(())
}

fn end_to_end(json: &Result<(i32, Value), String>, r: &Report) -> Outcome {
    let (code, v) = json.as_ref().map_err(Clone::clone)?;
    ensure(*code == 0, || format!("census run exited {code}"))?;
    let s = &v["summary"];
    ensure(s["survivors_lattice"] == serde_json::json!(["3A1+2A3", "4A1+D5"]), || s["survivors_lattice"].to_string())?;
    ensure(s["survivors_final"] == serde_json::json!(["3A1+2A3"]), || s["survivors_final"].to_string())?;
    let cited = s["citations"].as_array().into_iter().flatten().any(|c| {
        c["case"] == "4A1+D5" && c["kind"] == "exclusion" && c["provenance"].as_str().is_some_and(|p| p.contains("cited"))
    });
    ensure(cited, || "4A1+D5 exclusion is not tagged as cited".into())?;

    let pre = &r.precheck;
    let ext = ExtendedLattice::by_canonical_class(&lattice("6A1")).unwrap();
    let det = ext.lattice().unwrap().det();
    let root = det.abs().sqrt();
    ensure(det.abs() == BigInt::from(192) && &root * &root != det.abs(), || format!("det = {det}"))?;
    ensure(pre.excluded_by() == Some("square_index") && det_detail(pre).as_deref() == Some("192"), || {
        format!("six points: {:?} {:?}", pre.excluded_by(), det_detail(pre))
    })
}

fn census_run_json() -> Result<(i32, Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_rhpp")).args(["census", "run", "--format", "json"]).output().map_err(|e| e.to_string())?;
    let v = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), v))
}

fn main() {
    let cli = std::thread::spawn(census_run_json);
    let report = run_census(&CensusConfig::default()).expect("default census runs");
    let json = cli.join().unwrap_or_else(|_| Err("census run panicked".into()));

    let criteria: Vec<Criterion> = vec![
        ("order tuples", Box::new(tuples)),
        ("polyhedral K^2 table", Box::new(star_table)),
        ("intermediate survivors and exclusion types", Box::new(|| intermediate(&report))),
        ("non-cyclic branch", Box::new(|| noncyclic(&report))),
        ("epsilon invariants", Box::new(epsilons)),
        ("T6 sweep to length 12", Box::new(t6_sweep)),
        ("structural suites", Box::new(structural)),
        ("4A1+D5 discriminant analysis", Box::new(discriminant)),
        ("end to end", Box::new(|| end_to_end(&json, &report))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("PASS {}: {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
