//! Command handlers behind the `rhpp` binary. Each returns a JSON value and
//! whether its checks held (the process exit status).

use serde_json::{json, Value};

use crate::census::{run_census, verify_lemmas, CensusConfig};
use crate::hjcf::{generate_td, td_by_classification, HjString};
use crate::lattice::{hj_diagonal, DiscriminantGroup};
use crate::obstruction::{
    enriques_disc_analysis, equal_rank_embed_test, finite_index_embed_test, square_index_test, t6_epsilon_sweep,
};
use crate::padic::{rationally_equivalent, Place};
use crate::rational::fmt_q;
use crate::singularity::{ks2_with_four_nodes, ks_formulas, StarRow, STAR_ROWS};
use crate::spec::{parse_form, parse_lattice, parse_singularity};
use crate::Result;

pub struct Output {
    pub value: Value,
    pub ok: bool,
}

impl Output {
    fn ok(value: Value) -> Self {
        Self { value, ok: true }
    }

    fn checked(value: Value, ok: bool) -> Self {
        Self { value, ok }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn qs(v: &[crate::rational::Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

pub fn hjcf_eval(s: &str) -> Result<Output> {
    let s: HjString = s.parse()?;
    Ok(Output::ok(json!({
        "string": s.to_string(),
        "q": s.det().to_string(),
        "q1": s.q1().to_string(),
        "ql": s.ql().to_string(),
        "q1l": s.q1l().to_string(),
        "value": fmt_q(&s.value()),
        "t_invariant": s.t_invariant().to_string(),
        "discrepancies": qs(&s.discrepancies()),
        "dp2": fmt_q(&s.dp_squared()),
    })))
}

pub fn hjcf_classify(s: &str) -> Result<Output> {
    let s: HjString = s.parse()?;
    Ok(Output::ok(json!({
        "string": s.to_string(),
        "classification": to_value(&s.classify()?)?,
        "t_invariant": s.t_invariant().to_string(),
    })))
}

pub fn hjcf_tau(s: &str) -> Result<Output> {
    let s: HjString = s.parse()?;
    let t = s.tau();
    Ok(Output::ok(json!({
        "string": s.to_string(),
        "tau": t.to_string(),
        "q": s.det().to_string(),
        "q_tau": t.det().to_string(),
        "t_invariant": s.t_invariant().to_string(),
        "t_invariant_tau": t.t_invariant().to_string(),
    })))
}

/// Above this length the exhaustive cross-check is skipped.
const GEN_TD_CROSSCHECK_LEN: usize = 14;

pub fn hjcf_gen_td(d: u32, max_len: usize) -> Result<Output> {
    if d == 0 {
        return Err(crate::Error::Config("d must be positive".into()));
    }
    let strings = generate_td(d, max_len);
    let agrees = (max_len <= GEN_TD_CROSSCHECK_LEN).then(|| td_by_classification(d, max_len) == strings);
    Ok(Output::checked(
        json!({
            "d": d,
            "max_len": max_len,
            "count": strings.len(),
            "strings": strings.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "agrees_with_classification": agrees,
        }),
        agrees != Some(false),
    ))
}

pub fn sing_info(spec: &str) -> Result<Output> {
    let p = parse_singularity(spec)?;
    Ok(Output::ok(json!({
        "spec": p.to_string(),
        "lattice": p.lattice_name(),
        "cyclic": p.is_cyclic(),
        "m": p.m().map(|m| m.to_string()),
        "invariants": to_value(&p.invariants()?)?,
        "ks2_with_four_nodes": fmt_q(&ks2_with_four_nodes(&p)?),
        "gram": to_value(&p.gram())?,
    })))
}

/// Every polyhedral row: closed form against `5 - rank - D^2` for
/// `2 <= b <= b_max`, and the printed bounds.
pub fn sing_table2(b_max: u32) -> Result<Output> {
    if b_max < 2 {
        return Err(crate::Error::Config("b_max must be at least 2".into()));
    }
    let mut rows = Vec::new();
    let mut all_ok = true;
    for f in ks_formulas() {
        let row: &StarRow = StarRow::by_id(f.row)?;
        let mut values = Vec::new();
        let mut agree = true;
        let mut claims_hold = true;
        for b in 2..=b_max {
            let p = crate::singularity::QuotientSingularity::Polyhedral { row, b };
            let closed = f.eval(b);
            let pipeline = ks2_with_four_nodes(&p)?;
            agree &= closed == pipeline;
            claims_hold &= f.claims.iter().filter(|c| c.applies(b)).all(|c| c.holds(&closed));
            values.push(json!({ "b": b, "closed_form": fmt_q(&closed), "pipeline": fmt_q(&pipeline) }));
        }
        all_ok &= agree && claims_hold;
        rows.push(json!({
            "row": row.id,
            "kind": row.kind.to_string(),
            "index": row.index,
            "arms": row.arms,
            "numerator": f.numerator,
            "denominator": f.denominator,
            "claims": to_value(&f.claims)?,
            "agree": agree,
            "claims_hold": claims_hold,
            "values": values,
        }));
    }
    debug_assert_eq!(rows.len(), STAR_ROWS.len());
    Ok(Output::checked(json!({ "b_max": b_max, "rows": rows, "ok": all_ok }), all_ok))
}

pub fn lattice_det(spec: &str) -> Result<Output> {
    let s = parse_lattice(spec)?;
    let l = s.lattice();
    let mut v = json!({
        "spec": spec,
        "rank": l.rank(),
        "det": l.det().to_string(),
        "signature": l.signature()?,
        "even": l.is_even(),
    });
    if s.with_k {
        let ext = s.extended()?;
        v["extension"] = json!({
            "ks2": fmt_q(&ext.ks2()),
            "numerically_trivial": ext.is_numerically_trivial(),
            "det": ext.lattice().map(|m| m.det().to_string()),
            "signature": ext.lattice().map(|m| m.signature()).transpose()?,
        });
    }
    Ok(Output::ok(v))
}

pub fn lattice_disc(spec: &str) -> Result<Output> {
    let s = parse_lattice(spec)?;
    let g = DiscriminantGroup::of(&s.lattice())?;
    Ok(Output::ok(json!({
        "spec": spec,
        "order": g.order(),
        "invariant_factors": g.invariant_factors,
        "min_generators": g.min_generators(),
        "even": g.is_even(),
        "generators": g.generators.iter().map(|v| qs(v)).collect::<Vec<_>>(),
        "q_values": g.q_values.as_ref().map(|v| qs(v)),
    })))
}

pub fn lattice_diag(spec: &str) -> Result<Output> {
    let s = parse_lattice(spec)?;
    let l = if s.with_k {
        s.extended()?.lattice().cloned().ok_or(crate::Error::Degenerate)?
    } else {
        s.lattice()
    };
    let d = l.diagonalize()?;
    let mut v = json!({
        "spec": spec,
        "diagonal": d.to_strings(),
        "product": fmt_q(&d.product()),
        "det": l.det().to_string(),
    });
    // a single string lattice also has the closed-form diagonal
    if let [(1, crate::spec::Term::Lattice { name, .. })] = s.terms.as_slice() {
        if let (Some(body), false) = (name.strip_prefix("HJ"), s.with_k) {
            let h: HjString = body.parse()?;
            v["closed_form_agrees"] = json!(hj_diagonal(&h) == d);
        }
    }
    Ok(Output::ok(v))
}

fn local_json(f: &crate::padic::DiagonalForm, place: Place) -> Result<Value> {
    let inv = f.local_invariants(place)?;
    Ok(json!({
        "place": place.to_string(),
        "rank": inv.rank,
        "d_class": to_value(&inv.d_class)?,
        "epsilon": inv.epsilon,
        "signature": inv.signature,
    }))
}

/// `p = None` lists every place relevant to the form.
pub fn qform_eps(p: Option<&str>, diag: &str) -> Result<Output> {
    let f = parse_form(diag)?;
    let places: Vec<Place> = match p {
        Some(p) => vec![p.parse()?],
        None => std::iter::once(Place::Real)
            .chain(f.primes().into_iter().chain([2]).collect::<std::collections::BTreeSet<_>>().into_iter().map(Place::Prime))
            .collect(),
    };
    let locals = places.iter().map(|&pl| local_json(&f, pl)).collect::<Result<Vec<_>>>()?;
    let mut v = json!({ "form": f.to_string(), "rank": f.rank(), "verdict": Value::Null, "places": locals });
    if let [one] = places.as_slice() {
        let inv = f.local_invariants(*one)?;
        v["place"] = json!(one.to_string());
        v["d_class"] = to_value(&inv.d_class)?;
        v["epsilon"] = json!(inv.epsilon);
    }
    Ok(Output::ok(v))
}

pub fn qform_equiv(lhs: &str, rhs: &str) -> Result<Output> {
    let f = parse_form(lhs)?;
    let g = parse_form(rhs)?;
    let e = rationally_equivalent(&f, &g)?;
    let verdict = match e.first_failure() {
        None => "equivalent".to_string(),
        Some(c) => format!("not equivalent at {}", c.place),
    };
    Ok(Output::ok(json!({
        "lhs": f.to_string(),
        "rhs": g.to_string(),
        "rank": [f.rank(), g.rank()],
        "verdict": verdict,
        "equivalent": e.equivalent,
        "failing_places": e.failing_places().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "places": to_value(&e.places)?,
    })))
}

/// Equal-rank test for a plain spec, finite-index test for a `+K` spec.
pub fn obstruct_embed(spec: &str) -> Result<Output> {
    let s = parse_lattice(spec)?;
    let v = if s.with_k { finite_index_embed_test(&s.extended()?)? } else { equal_rank_embed_test(&s.lattice())? };
    Ok(Output::ok(to_value(&v)?))
}

pub fn obstruct_square(spec: &str) -> Result<Output> {
    let s = parse_lattice(spec)?;
    Ok(Output::ok(to_value(&square_index_test(&s.extended()?)?)?))
}

pub fn obstruct_t6_sweep(max_len: usize) -> Result<Output> {
    let sweep = t6_epsilon_sweep(max_len)?;
    Ok(Output::checked(to_value(&sweep)?, sweep.ok()))
}

pub fn obstruct_enriques_d5() -> Result<Output> {
    let r = enriques_disc_analysis()?;
    Ok(Output::checked(to_value(&r)?, r.ok()))
}

/// Runs the census; the report is rendered by the caller.
pub fn census_run(cfg: &CensusConfig) -> Result<(crate::census::Report, bool)> {
    let report = run_census(cfg)?;
    let ok = report.summary.golden_ok();
    Ok((report, ok))
}

pub fn census_verify_lemmas(max_len: usize) -> Result<Output> {
    let s = verify_lemmas(max_len)?;
    Ok(Output::checked(to_value(&s)?, s.ok()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_tau() {
        let o = hjcf_eval("3,3").unwrap().value;
        assert_eq!(o["q"], "8");
        assert_eq!(o["value"], "8/3");
        let t = hjcf_tau("3,3").unwrap().value;
        assert_eq!(t["tau"], "[2,3,4]");
        assert_eq!(t["t_invariant_tau"], "-2");
    }

    #[test]
    fn table2_small() {
        let o = sing_table2(6).unwrap();
        assert!(o.ok);
        assert_eq!(o.value["rows"].as_array().unwrap().len(), 15);
    }

    #[test]
    fn qform() {
        let o = qform_eps(Some("3"), "-3,-5/3,-7/5,-9/7,-11/9,-24/11").unwrap().value;
        assert_eq!(o["rank"], 6);
        let e = qform_equiv("E8", "-1,-1,-1,-1,-1,-1,-1,-1").unwrap().value;
        assert_eq!(e["verdict"], "equivalent");
    }

    #[test]
    fn obstructions() {
        let v = obstruct_embed("4A1+A5").unwrap().value;
        assert_eq!(v["result"]["kind"], "obstructed");
        assert_eq!(v["result"]["place"], "3");
        let v = obstruct_square("2A1+3diag(-3)+K").unwrap().value;
        assert_eq!(v["details"]["det"], "-540");
    }
}
