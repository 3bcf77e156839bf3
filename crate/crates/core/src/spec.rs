//! Text specs for singularities, lattices and diagonal forms.
//!
//! Singularities: `A(q,q1)`, `HJ[n1,...]`, `D(b=B;[arm])`,
//! `Star(kind=T|O|I; b=B; row=K)`, and the rational double point names
//! `A<n>`, `D<n>`, `E6`, `E7`, `E8`.
//!
//! Lattices: terms joined by `+`, each optionally prefixed by a
//! multiplicity (`3A1`, `2diag(-3)`). A term is a named lattice (`A<n>`,
//! `D<n>`, `E<n>`, `H`, `I(1,m)`, `II(1,9)`), `diag(k)`, `HJ[...]` or a
//! singularity spec. A trailing `+K` adjoins the formal canonical class.

use num_traits::Zero;

use crate::hjcf::HjString;
use crate::lattice::{ExtendedLattice, GramLattice};
use crate::padic::DiagonalForm;
use crate::rational::{parse_q, Q};
use crate::singularity::{PolyKind, QuotientSingularity, STAR_ROWS};
use crate::{Error, Result};

fn parse_err(what: &str, s: &str) -> Error {
    Error::Parse(format!("bad {what}: {s:?}"))
}

/// Splits on `sep` outside brackets and parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '<' => depth += 1,
            ')' | ']' | '>' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_int<T: std::str::FromStr>(s: &str, whole: &str) -> Result<T> {
    s.trim().parse().map_err(|_| parse_err("integer", whole))
}

/// `key=value` fields separated by `;`.
fn fields<'a>(body: &'a str, whole: &str) -> Result<Vec<(&'a str, &'a str)>> {
    split_top(body, ';')
        .into_iter()
        .map(|f| f.split_once('=').map(|(k, v)| (k.trim(), v.trim())).ok_or_else(|| parse_err("field", whole)))
        .collect()
}

fn rdp(name: &str) -> Option<Result<QuotientSingularity>> {
    let (head, rest) = name.split_at(1);
    let n: usize = rest.parse().ok()?;
    Some(match head {
        "A" if n >= 1 => Ok(QuotientSingularity::Cyclic(HjString::a_type(n))),
        "D" if n >= 4 => HjString::new(vec![2; n - 3]).and_then(|arm| QuotientSingularity::dihedral(2, arm)),
        "E" if (6..=8).contains(&n) => STAR_ROWS
            .iter()
            .map(|row| QuotientSingularity::Polyhedral { row, b: 2 })
            .find(|p| p.lattice_name() == name)
            .ok_or_else(|| parse_err("singularity", name)),
        _ => return None,
    })
}

pub fn parse_singularity(s: &str) -> Result<QuotientSingularity> {
    let t = s.trim();
    let bad = || parse_err("singularity", s);
    if let Some(body) = t.strip_prefix("A(").and_then(|r| r.strip_suffix(')')) {
        let (q, q1) = body.split_once(',').ok_or_else(bad)?;
        return QuotientSingularity::cyclic(parse_int(q, s)?, parse_int(q1, s)?);
    }
    if let Some(body) = t.strip_prefix("HJ") {
        return Ok(QuotientSingularity::Cyclic(body.parse()?));
    }
    if let Some(body) = t.strip_prefix("D(").and_then(|r| r.strip_suffix(')')) {
        let mut b = None;
        let mut arm = None;
        for part in split_top(body, ';') {
            let part = part.trim();
            if let Some(v) = part.strip_prefix("b=") {
                b = Some(parse_int::<u32>(v, s)?);
            } else if part.starts_with('[') {
                arm = Some(part.parse::<HjString>()?);
            } else {
                return Err(bad());
            }
        }
        return QuotientSingularity::dihedral(b.ok_or_else(bad)?, arm.ok_or_else(bad)?);
    }
    if let Some(body) = t.strip_prefix("Star(").and_then(|r| r.strip_suffix(')')) {
        let (mut kind, mut b, mut row) = (None, None, None);
        for (k, v) in fields(body, s)? {
            match k {
                "kind" => kind = Some(v.parse::<PolyKind>()?),
                "b" => b = Some(parse_int::<u32>(v, s)?),
                "row" => row = Some(parse_int::<u32>(v, s)?),
                _ => return Err(bad()),
            }
        }
        return QuotientSingularity::polyhedral(kind.ok_or_else(bad)?, row.ok_or_else(bad)?, b.ok_or_else(bad)?);
    }
    rdp(t).unwrap_or_else(|| Err(bad()))
}

/// One summand of a lattice spec.
#[derive(Clone, Debug)]
pub enum Term {
    Lattice { name: String, lattice: GramLattice },
    Point(QuotientSingularity),
}

impl Term {
    pub fn lattice(&self) -> GramLattice {
        match self {
            Term::Lattice { lattice, .. } => lattice.clone(),
            Term::Point(p) => p.gram(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LatticeSpec {
    pub terms: Vec<(usize, Term)>,
    pub with_k: bool,
}

impl LatticeSpec {
    /// The direct sum of the terms (without `K`).
    pub fn lattice(&self) -> GramLattice {
        let parts: Vec<GramLattice> =
            self.terms.iter().flat_map(|(k, t)| std::iter::repeat_n(t.lattice(), *k)).collect();
        GramLattice::direct_sum_all(&parts).expect("at least one term")
    }

    pub fn extended(&self) -> Result<ExtendedLattice> {
        ExtendedLattice::by_canonical_class(&self.lattice())
    }

    /// The singular points, when every term is one.
    pub fn points(&self) -> Option<Vec<QuotientSingularity>> {
        let mut out = Vec::new();
        for (k, t) in &self.terms {
            let p = match t {
                Term::Point(p) => p.clone(),
                Term::Lattice { name, .. } => parse_singularity(name).ok()?,
            };
            out.extend(std::iter::repeat_n(p, *k));
        }
        Some(out)
    }
}

fn parse_term(t: &str, whole: &str) -> Result<Term> {
    if let Some(k) = t.strip_prefix("diag(").and_then(|r| r.strip_suffix(')')) {
        let k: i64 = parse_int(k, whole)?;
        if k == 0 {
            return Err(parse_err("diag entry", whole));
        }
        return Ok(Term::Lattice { name: t.into(), lattice: GramLattice::diag(k) });
    }
    if t.starts_with("A(") || t.starts_with("D(") || t.starts_with("Star(") {
        return parse_singularity(t).map(Term::Point);
    }
    if let Some(body) = t.strip_prefix("HJ") {
        let s: HjString = body.parse()?;
        return Ok(Term::Lattice { name: t.into(), lattice: GramLattice::from_hj(&s) });
    }
    Ok(Term::Lattice { name: t.into(), lattice: GramLattice::named(t)? })
}

pub fn parse_lattice(s: &str) -> Result<LatticeSpec> {
    let mut terms = Vec::new();
    let mut with_k = false;
    let parts: Vec<&str> = split_top(s, '+').into_iter().map(str::trim).collect();
    for (i, part) in parts.iter().enumerate() {
        if *part == "K" {
            if i + 1 != parts.len() || i == 0 {
                return Err(parse_err("lattice spec (K must come last)", s));
            }
            with_k = true;
            continue;
        }
        if part.is_empty() {
            return Err(parse_err("lattice spec", s));
        }
        let digits = part.len() - part.trim_start_matches(|c: char| c.is_ascii_digit()).len();
        let (mult, rest) = part.split_at(digits);
        let mult = if mult.is_empty() { 1 } else { parse_int::<usize>(mult, s)? };
        if mult == 0 {
            return Err(parse_err("multiplicity", s));
        }
        terms.push((mult, parse_term(rest, s)?));
    }
    Ok(LatticeSpec { terms, with_k })
}

/// `-3,-5/3,...`, optionally wrapped in `<...>`.
pub fn parse_diagonal(s: &str) -> Result<DiagonalForm> {
    let inner = s.trim().trim_start_matches('<').trim_end_matches('>');
    let coeffs = inner.split(',').map(|x| parse_q(x.trim())).collect::<Result<Vec<Q>>>()?;
    if coeffs.iter().any(Zero::is_zero) {
        return Err(parse_err("diagonal form (zero entry)", s));
    }
    DiagonalForm::new(coeffs)
}

/// A diagonal form, or a lattice spec diagonalized over `Q` (with `+K`
/// the extension is used).
pub fn parse_form(s: &str) -> Result<DiagonalForm> {
    let t = s.trim();
    let looks_numeric = t.starts_with('<') || t.chars().all(|c| c.is_ascii_digit() || "-/, ".contains(c));
    if looks_numeric {
        return parse_diagonal(t);
    }
    let spec = parse_lattice(t)?;
    if spec.with_k {
        let ext = spec.extended()?;
        ext.lattice().ok_or(Error::Degenerate)?.diagonalize()
    } else {
        spec.lattice().diagonalize()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn singularities() {
        assert_eq!(parse_singularity("A(5,3)").unwrap().to_string(), "HJ[2,3]");
        assert_eq!(parse_singularity("D(b=3;[2,2])").unwrap().to_string(), "D(b=3;[2,2])");
        let p = parse_singularity("Star(kind=O; b=2; row=2)").unwrap();
        assert_eq!(p.to_string(), "Star(kind=O; b=2; row=2)");
        assert_eq!(parse_singularity("D5").unwrap().lattice_name(), "D5");
        assert_eq!(parse_singularity("E8").unwrap().lattice_name(), "E8");
        assert!(parse_singularity("D(b=1;[2])").is_err());
        assert!(parse_singularity("Q7").is_err());
    }

    #[test]
    fn lattices() {
        let s = parse_lattice("3A1+2A3").unwrap();
        assert_eq!(s.lattice().rank(), 9);
        assert_eq!(s.lattice().det(), BigInt::from(-8 * 16));
        let s = parse_lattice("2A1+3diag(-3)+K").unwrap();
        assert!(s.with_k);
        assert_eq!(s.extended().unwrap().lattice().unwrap().det(), BigInt::from(-540));
        let s = parse_lattice("4A1+D(b=2;[2,2])").unwrap();
        assert_eq!(s.lattice().det(), parse_lattice("4A1+D5").unwrap().lattice().det());
        assert_eq!(parse_lattice("H+E8").unwrap().lattice().rank(), 10);
        assert!(parse_lattice("K+A1").is_err());
        assert!(parse_lattice("A1++A2").is_err());
        assert!(parse_lattice("0A1").is_err());
    }

    #[test]
    fn forms() {
        let f = parse_form("<-3,-5/3>").unwrap();
        assert_eq!(f.rank(), 2);
        assert_eq!(parse_form("-1,-1").unwrap().rank(), 2);
        assert_eq!(parse_form("E8").unwrap().rank(), 8);
        assert!(parse_form("1,0").is_err());
    }
}
