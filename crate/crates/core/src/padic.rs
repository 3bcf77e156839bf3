//! Local invariants of rational quadratic forms.
//!
//! Hilbert symbols at odd `p` use valuations and Legendre symbols; at `p = 2`
//! the usual `epsilon`/`omega` supplement; at infinity the sign rule.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::rational::{fmt_q, Q};
use crate::{Error, Result};

/// A place of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Prime(u64),
}

impl Place {
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || !num_prime::nt_funcs::is_prime64(p) {
            return Err(Error::InvalidPlace(p.to_string()));
        }
        Ok(Place::Prime(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl std::str::FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "oo" | "R" => Ok(Place::Real),
            t => {
                let p = t.parse::<u64>().map_err(|_| Error::InvalidPlace(t.to_string()))?;
                Place::prime(p)
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Square class of a nonzero rational at a place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "place_kind", rename_all = "snake_case")]
pub enum SquareClass {
    Real { positive: bool },
    /// Odd `p`: valuation parity and whether the unit part is a square mod `p`.
    Odd { odd_valuation: bool, unit_is_square: bool },
    /// `p = 2`: valuation parity and the unit part mod 8.
    Two { odd_valuation: bool, unit_mod8: u8 },
}

fn valuation(n: &BigInt, p: u64) -> (i64, BigInt) {
    let p = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return (v, m);
        }
        m = q;
        v += 1;
    }
}

/// `x = p^alpha * u` with `u` a p-adic unit; returns `alpha` and `u mod p^k`
/// where `k = 3` for `p = 2` and `k = 1` otherwise.
pub fn p_adic_parts(x: &Q, p: u64) -> Result<(i64, u64)> {
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let (vn, un) = valuation(x.numer(), p);
    let (vd, ud) = valuation(x.denom(), p);
    let modulus = if p == 2 { 8 } else { p };
    let m = BigInt::from(modulus);
    let un = un.mod_floor(&m);
    let ud = ud.mod_floor(&m);
    // u = un / ud mod modulus
    let inv = ud
        .extended_gcd(&m)
        .x
        .mod_floor(&m);
    let u = (un * inv).mod_floor(&m);
    Ok((vn - vd, u.to_u64().unwrap()))
}

/// Legendre symbol `(u / p)` for odd prime `p` and `u` coprime to `p`.
pub fn legendre(u: u64, p: u64) -> i8 {
    let u = BigUint::from(u % p);
    let e = BigUint::from((p - 1) / 2);
    let r = u.modpow(&e, &BigUint::from(p));
    if r.is_one() {
        1
    } else {
        -1
    }
}

pub fn square_class(x: &Q, place: Place) -> Result<SquareClass> {
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(match place {
        Place::Real => SquareClass::Real { positive: x.is_positive() },
        Place::Prime(2) => {
            let (a, u) = p_adic_parts(x, 2)?;
            SquareClass::Two { odd_valuation: a.rem_euclid(2) == 1, unit_mod8: u as u8 }
        }
        Place::Prime(p) => {
            let (a, u) = p_adic_parts(x, p)?;
            SquareClass::Odd {
                odd_valuation: a.rem_euclid(2) == 1,
                unit_is_square: legendre(u, p) == 1,
            }
        }
    })
}

/// The Hilbert symbol `(a, b)_v`.
pub fn hilbert(a: &Q, b: &Q, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(match place {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = p_adic_parts(a, 2)?;
            let (beta, v) = p_adic_parts(b, 2)?;
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omega = |x: u64| ((x * x - 1) / 8) % 2;
            let e = eps(u) * eps(v)
                + (alpha.rem_euclid(2) as u64) * omega(v)
                + (beta.rem_euclid(2) as u64) * omega(u);
            if e.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = p_adic_parts(a, p)?;
            let (beta, v) = p_adic_parts(b, p)?;
            let (alpha, beta) = (alpha.rem_euclid(2), beta.rem_euclid(2));
            let rho = ((p - 1) / 2) % 2;
            let mut s: i8 = if (alpha * beta) as u64 * rho % 2 == 1 { -1 } else { 1 };
            if beta == 1 {
                s *= legendre(u, p);
            }
            if alpha == 1 {
                s *= legendre(v, p);
            }
            s
        }
    })
}

/// `a_1 X_1^2 + ... + a_n X_n^2` over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalForm {
    coefficients: Vec<Q>,
}

/// Rank, discriminant class and `epsilon` at one place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalInvariants {
    pub place: Place,
    pub rank: usize,
    pub d_class: SquareClass,
    pub epsilon: i8,
    /// `(positive, negative)`; recorded at the real place only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<(usize, usize)>,
}

impl DiagonalForm {
    pub fn new(coefficients: Vec<Q>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidLattice("empty diagonal form".into()));
        }
        if coefficients.iter().any(Zero::is_zero) {
            return Err(Error::Degenerate);
        }
        Ok(Self { coefficients })
    }

    pub fn from_ints(v: &[i64]) -> Result<Self> {
        Self::new(v.iter().map(|&x| Q::from_integer(x.into())).collect())
    }

    pub fn coefficients(&self) -> &[Q] {
        &self.coefficients
    }

    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn product(&self) -> Q {
        self.coefficients.iter().product()
    }

    pub fn signature(&self) -> (usize, usize) {
        let pos = self.coefficients.iter().filter(|x| x.is_positive()).count();
        (pos, self.rank() - pos)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut c = self.coefficients.clone();
        c.extend(other.coefficients.iter().cloned());
        Self { coefficients: c }
    }

    pub fn d(&self, place: Place) -> Result<SquareClass> {
        square_class(&self.product(), place)
    }

    /// `prod_{i<j} (a_i, a_j)_v`, accumulated as
    /// `eps(f + <a>) = eps(f) (d(f), a)`.
    pub fn epsilon(&self, place: Place) -> Result<i8> {
        let mut eps = 1i8;
        let mut d = self.coefficients[0].clone();
        for a in &self.coefficients[1..] {
            eps *= hilbert(&d, a, place)?;
            d *= a;
        }
        Ok(eps)
    }

    pub fn local_invariants(&self, place: Place) -> Result<LocalInvariants> {
        Ok(LocalInvariants {
            place,
            rank: self.rank(),
            d_class: self.d(place)?,
            epsilon: self.epsilon(place)?,
            signature: (place == Place::Real).then(|| self.signature()),
        })
    }

    /// Primes dividing the numerator or denominator of some coefficient.
    pub fn primes(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for c in &self.coefficients {
            for n in [c.numer(), c.denom()] {
                out.extend(prime_divisors(n));
            }
        }
        out
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coefficients.iter().map(fmt_q).collect()
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.to_strings().join(", "))
    }
}

pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    let m = n.abs();
    if m <= BigInt::one() {
        return Vec::new();
    }
    if let Some(small) = m.to_u128() {
        return num_prime::nt_funcs::factorize128(small)
            .into_keys()
            .map(|p| u64::try_from(p).expect("prime factor exceeds u64"))
            .collect();
    }
    let (_, mag) = m.into_parts();
    num_prime::nt_funcs::factorize(mag)
        .into_keys()
        .map(|p| p.to_u64().expect("prime factor exceeds u64"))
        .collect()
}

/// Why two forms differ at a place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mismatch {
    Rank,
    Signature,
    Discriminant,
    Epsilon,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mismatch::Rank => "rank",
            Mismatch::Signature => "signature",
            Mismatch::Discriminant => "discriminant",
            Mismatch::Epsilon => "epsilon",
        };
        f.write_str(s)
    }
}

/// Compares rank, discriminant and `epsilon` (and the signature at the real
/// place); `None` means the forms are equivalent over `Q_v`.
pub fn local_mismatch(f: &DiagonalForm, g: &DiagonalForm, place: Place) -> Result<Option<Mismatch>> {
    if f.rank() != g.rank() {
        return Ok(Some(Mismatch::Rank));
    }
    if place == Place::Real {
        return Ok((f.signature() != g.signature()).then_some(Mismatch::Signature));
    }
    if f.d(place)? != g.d(place)? {
        return Ok(Some(Mismatch::Discriminant));
    }
    if f.epsilon(place)? != g.epsilon(place)? {
        return Ok(Some(Mismatch::Epsilon));
    }
    Ok(None)
}

pub fn locally_equivalent(f: &DiagonalForm, g: &DiagonalForm, place: Place) -> Result<bool> {
    Ok(local_mismatch(f, g, place)?.is_none())
}

/// Per-place comparison record.
#[derive(Clone, Debug, Serialize)]
pub struct PlaceComparison {
    pub place: Place,
    pub lhs: LocalInvariants,
    pub rhs: LocalInvariants,
    pub mismatch: Option<Mismatch>,
}

/// Result of the Hasse-Minkowski test.
#[derive(Clone, Debug, Serialize)]
pub struct Equivalence {
    pub equivalent: bool,
    pub places: Vec<PlaceComparison>,
}

impl Equivalence {
    pub fn first_failure(&self) -> Option<&PlaceComparison> {
        self.places.iter().find(|c| c.mismatch.is_some())
    }

    pub fn failing_places(&self) -> Vec<Place> {
        self.places.iter().filter(|c| c.mismatch.is_some()).map(|c| c.place).collect()
    }
}

/// The places where two forms can differ: infinity, the odd primes dividing
/// some coefficient of either form, and 2 (listed last: by reciprocity an
/// epsilon mismatch at an odd prime comes paired with another place, usually 2).
pub fn relevant_places(f: &DiagonalForm, g: &DiagonalForm) -> Vec<Place> {
    let mut primes = f.primes();
    primes.extend(g.primes());
    primes.remove(&2);
    let mut places = vec![Place::Real];
    places.extend(primes.into_iter().map(Place::Prime));
    places.push(Place::Prime(2));
    places
}

pub fn rationally_equivalent(f: &DiagonalForm, g: &DiagonalForm) -> Result<Equivalence> {
    let mut places = Vec::new();
    for place in relevant_places(f, g) {
        let mismatch = local_mismatch(f, g, place)?;
        places.push(PlaceComparison {
            place,
            lhs: f.local_invariants(place)?,
            rhs: g.local_invariants(place)?,
            mismatch,
        });
    }
    let equivalent = places.iter().all(|c| c.mismatch.is_none());
    Ok(Equivalence { equivalent, places })
}

/// Helper for callers holding a `BigInt` sign decomposition.
pub fn sign_of(n: &BigInt) -> i8 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q_frac, q_int};

    const P3: Place = Place::Prime(3);

    #[test]
    fn square_classes() {
        assert_eq!(p_adic_parts(&q_frac(-54, 35), 3).unwrap(), (3, 2));
        assert_eq!(
            square_class(&q_frac(-54, 35), P3).unwrap(),
            SquareClass::Odd { odd_valuation: true, unit_is_square: false }
        );
        assert_eq!(
            square_class(&q_frac(4, 9), P3).unwrap(),
            SquareClass::Odd { odd_valuation: false, unit_is_square: true }
        );
        assert_eq!(p_adic_parts(&q_int(6), 3).unwrap(), (1, 2));
        assert_eq!(square_class(&q_int(-3), Place::Real).unwrap(), SquareClass::Real { positive: false });
        assert_eq!(
            square_class(&q_frac(3, 4), Place::Prime(2)).unwrap(),
            SquareClass::Two { odd_valuation: false, unit_mod8: 3 }
        );
        assert!(matches!(square_class(&Q::zero(), P3), Err(Error::ZeroArgument)));
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert(&q_int(3), &q_int(3), P3).unwrap(), -1);
        assert_eq!(hilbert(&q_int(3), &q_int(-1), P3).unwrap(), -1);
        for l in 1..8i64 {
            let a = q_int(if l % 2 == 0 { 6 } else { -6 });
            let want = if (l + 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(hilbert(&a, &q_int(6), P3).unwrap(), want, "l = {l}");
        }
        assert_eq!(hilbert(&q_int(2), &q_int(5), P3).unwrap(), 1);
        assert_eq!(hilbert(&q_int(-1), &q_int(-1), Place::Real).unwrap(), -1);
        assert_eq!(hilbert(&q_int(-1), &q_int(-1), Place::Prime(2)).unwrap(), -1);
        assert_eq!(hilbert(&q_int(2), &q_int(3), Place::Prime(2)).unwrap(), -1);
        assert!(hilbert(&Q::zero(), &q_int(1), P3).is_err());
    }

    #[test]
    fn epsilon_examples() {
        for m in 1..=30 {
            let mut v = vec![1];
            v.extend(std::iter::repeat_n(-1, m));
            assert_eq!(DiagonalForm::from_ints(&v).unwrap().epsilon(P3).unwrap(), 1);
        }
        let one = DiagonalForm::from_ints(&[7]).unwrap();
        assert_eq!(one.epsilon(P3).unwrap(), 1);
    }

    #[test]
    fn equivalence_examples() {
        let f = DiagonalForm::from_ints(&[1, -1]).unwrap();
        let g = DiagonalForm::from_ints(&[2, -2]).unwrap();
        assert!(rationally_equivalent(&f, &f).unwrap().equivalent);
        assert!(rationally_equivalent(&f, &g).unwrap().equivalent);
        let h = DiagonalForm::from_ints(&[1, 1]).unwrap();
        let e = rationally_equivalent(&f, &h).unwrap();
        assert!(!e.equivalent);
        assert_eq!(e.first_failure().unwrap().place, Place::Real);
        let r = DiagonalForm::from_ints(&[1, -1, -1]).unwrap();
        assert_eq!(local_mismatch(&f, &r, P3).unwrap(), Some(Mismatch::Rank));
    }

    #[test]
    fn places_parse() {
        assert_eq!("3".parse::<Place>().unwrap(), P3);
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Real);
        assert!("4".parse::<Place>().is_err());
        assert_eq!(prime_divisors(&BigInt::from(-60)), vec![2, 3, 5]);
    }
}
