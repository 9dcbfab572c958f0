//! Truncated Laurent series in `t` with an explicit trust floor.

use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::laurent::{QPoly, Rational};

/// `Σ c_e t^e` where every coefficient at an exponent `>= floor` is exact.
/// Coefficients below the floor are unknown and not stored. `floor = None`
/// means the series is exact everywhere (a Laurent polynomial).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: BTreeMap<i64, QPoly>,
    floor: Option<i64>,
}

impl TruncatedSeries {
    pub fn new<I: IntoIterator<Item = (i64, QPoly)>>(terms: I, floor: Option<i64>) -> Self {
        let mut out = Self { coeffs: BTreeMap::new(), floor };
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    pub fn exact<I: IntoIterator<Item = (i64, QPoly)>>(terms: I) -> Self {
        Self::new(terms, None)
    }

    /// `t^e`, exact.
    pub fn monomial(e: i64) -> Self {
        Self::exact([(e, QPoly::one())])
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    fn add_term(&mut self, e: i64, c: &QPoly) {
        if c.is_zero() || self.floor.is_some_and(|f| e < f) {
            return;
        }
        let slot = self.coeffs.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn top(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_trusted(&self, e: i64) -> bool {
        self.floor.is_none_or(|f| e >= f)
    }

    /// Exact coefficient of `t^e`, refusing exponents below the floor.
    pub fn coeff(&self, e: i64) -> Result<QPoly> {
        match self.floor {
            Some(floor) if e < floor => Err(Error::Untrusted { exponent: e, floor }),
            _ => Ok(self.coeffs.get(&e).cloned().unwrap_or_default()),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &QPoly)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Raise the floor to at least `min`, discarding coefficients below it.
    pub fn truncate_below(&self, min: i64) -> Self {
        let floor = Some(self.floor.map_or(min, |f| f.max(min)));
        Self::new(self.coeffs.iter().map(|(e, c)| (*e, c.clone())), floor)
    }

    pub fn scale(&self, c: &QPoly) -> Self {
        Self::new(self.coeffs.iter().map(|(e, v)| (*e, v * c)), self.floor)
    }

    /// Largest exponent that may carry a nonzero coefficient, known or not.
    fn reach(&self) -> Option<i64> {
        match (self.top(), self.floor) {
            (Some(t), Some(f)) => Some(t.max(f - 1)),
            (t, None) => t,
            (None, Some(f)) => Some(f - 1),
        }
    }

    /// Product, exact on every exponent `>= floor` of the result. A missing
    /// coefficient `x < fa` of `self` can only reach `x + reach(other) < fa + reach(other)`,
    /// so the result's floor is the larger of the two such bounds. `min`
    /// optionally raises it further to skip unwanted low-order work.
    pub fn multiply(&self, other: &Self, min: Option<i64>) -> Self {
        let mut floor: Option<i64> = None;
        let mut raise = |f: i64| floor = Some(floor.map_or(f, |g: i64| g.max(f)));
        if let (Some(fa), Some(rb)) = (self.floor, other.reach()) {
            raise(fa + rb);
        }
        if let (Some(fb), Some(ra)) = (other.floor, self.reach()) {
            raise(fb + ra);
        }
        if let Some(m) = min {
            raise(m);
        }
        let mut out = Self { coeffs: BTreeMap::new(), floor };
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in other.coeffs.iter().rev() {
                let e = ea + eb;
                if floor.is_some_and(|f| e < f) {
                    break;
                }
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }
}

fn merged_floor(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) | (None, x) => x,
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let floor = merged_floor(self.floor, rhs.floor);
        let mut out = TruncatedSeries::new(self.terms().map(|(e, c)| (e, c.clone())), floor);
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self + &rhs.scale(&QPoly::from_int(-1))
    }
}

/// `N_p = t^p + Σ_{i>0} a_i t^{-i}` with `a_i = i·N_{p,i}`, trusted for `i <= valid_to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSeries {
    p: u32,
    tail: BTreeMap<u32, QPoly>,
    valid_to: Option<u32>,
}

impl ThetaSeries {
    /// `N_0 = 1`, exact.
    pub fn identity() -> Self {
        Self { p: 0, tail: BTreeMap::new(), valid_to: None }
    }

    /// `t^p` with no tail, exact.
    pub fn trivial(p: u32) -> Self {
        Self { p, tail: BTreeMap::new(), valid_to: None }
    }

    pub fn new(p: u32, tail: BTreeMap<u32, QPoly>, valid_to: Option<u32>) -> Self {
        let tail = tail
            .into_iter()
            .filter(|(i, a)| *i > 0 && !a.is_zero() && valid_to.is_none_or(|v| *i <= v))
            .collect();
        Self { p, tail, valid_to }
    }

    /// Reads `N_p` back from a series, checking the leading form `t^p` and that
    /// nothing sits at exponents in `(0, p) ∪ {0}` (or above `p`).
    pub fn from_series(p: u32, s: &TruncatedSeries) -> Result<Self> {
        let lead = s.coeff(p as i64)?;
        if !lead.is_one() {
            return Err(Error::ReconstructionInconsistency(format!(
                "coefficient of t^{p} in N_{p} is {lead}, expected 1"
            )));
        }
        let mut tail = BTreeMap::new();
        for (e, c) in s.terms() {
            if e == p as i64 {
                continue;
            }
            if e >= 0 {
                return Err(Error::ReconstructionInconsistency(format!(
                    "N_{p} has a stray term {c} t^{e}"
                )));
            }
            tail.insert((-e) as u32, c.clone());
        }
        let valid_to = match s.floor() {
            Some(f) if f > 0 => return Err(Error::Untrusted { exponent: 0, floor: f }),
            Some(f) => Some((-f) as u32),
            None => None,
        };
        Ok(Self::new(p, tail, valid_to))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn valid_to(&self) -> Option<u32> {
        self.valid_to
    }

    fn check(&self, i: u32) -> Result<()> {
        match self.valid_to {
            Some(v) if i > v => Err(Error::Untrusted { exponent: -(i as i64), floor: -(v as i64) }),
            _ => Ok(()),
        }
    }

    /// `a_i`, the coefficient of `t^{-i}`.
    pub fn tail_coeff(&self, i: u32) -> Result<QPoly> {
        self.check(i)?;
        Ok(self.tail.get(&i).cloned().unwrap_or_default())
    }

    /// `N_{p,i} = a_i / i` for `i > 0`.
    pub fn two_point(&self, i: u32) -> Result<QPoly> {
        if i == 0 {
            return Err(Error::Invalid("two-point invariants are indexed by i > 0".into()));
        }
        Ok(self.tail_coeff(i)?.scale(&(Rational::from_integer(1.into()) / Rational::from_integer(i.into()))))
    }

    pub fn tail(&self) -> impl Iterator<Item = (u32, &QPoly)> {
        self.tail.iter().map(|(i, a)| (*i, a))
    }

    pub fn to_series(&self) -> TruncatedSeries {
        let terms = std::iter::once((self.p as i64, QPoly::one()))
            .chain(self.tail.iter().map(|(i, a)| (-(*i as i64), a.clone())));
        TruncatedSeries::new(terms, self.valid_to.map(|v| -(v as i64)))
    }

    pub fn is_exact(&self) -> bool {
        self.valid_to.is_none()
    }

    pub fn is_zero_tail(&self) -> bool {
        self.tail.values().all(QPoly::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn t_times_t() {
        let t = TruncatedSeries::monomial(1);
        let sq = t.multiply(&t, None);
        assert_eq!(sq, TruncatedSeries::monomial(2));
        assert_eq!(sq.floor(), None);
    }

    #[test]
    fn square_with_tail() {
        // t + a t^-1 trusted down to t^-1
        let s = TruncatedSeries::new([(1, q("1")), (-1, q("5"))], Some(-1));
        let sq = s.multiply(&s, None);
        assert_eq!(sq.floor(), Some(0));
        assert_eq!(sq.coeff(2).unwrap(), q("1"));
        assert_eq!(sq.coeff(0).unwrap(), q("10"));
        assert!(matches!(sq.coeff(-2), Err(Error::Untrusted { exponent: -2, floor: 0 })));
        // the exact polynomial squares fully
        let e = TruncatedSeries::exact([(1, q("1")), (-1, q("5"))]);
        assert_eq!(e.multiply(&e, None).coeff(-2).unwrap(), q("25"));
    }

    #[test]
    fn theta_roundtrip() {
        let mut tail = BTreeMap::new();
        tail.insert(2, q("2q"));
        tail.insert(5, q("5q^2"));
        let n = ThetaSeries::new(1, tail, Some(6));
        let back = ThetaSeries::from_series(1, &n.to_series()).unwrap();
        assert_eq!(back, n);
        assert_eq!(n.two_point(2).unwrap(), q("q"));
        assert_eq!(n.two_point(5).unwrap(), q("q^2"));
        assert!(n.two_point(3).unwrap().is_zero());
        assert!(n.two_point(7).is_err());
    }

    #[test]
    fn leading_form_is_checked() {
        let bad = TruncatedSeries::exact([(2, q("1")), (1, q("3"))]);
        assert!(matches!(ThetaSeries::from_series(2, &bad), Err(Error::ReconstructionInconsistency(_))));
        let bad = TruncatedSeries::exact([(2, q("2"))]);
        assert!(ThetaSeries::from_series(2, &bad).is_err());
        let bad = TruncatedSeries::exact([(2, q("1")), (0, q("1"))]);
        assert!(ThetaSeries::from_series(2, &bad).is_err());
    }
}
