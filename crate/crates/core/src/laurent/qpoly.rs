//! Univariate polynomials in the Novikov parameter `q` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Parse `"7"`, `"-3"` or `"3/2"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical string form used by every file format: `"7"`, `"-3/2"`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A polynomial `Σ c_j q^j`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoly {
    coeffs: BTreeMap<u32, Rational>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    /// `c q^power`.
    pub fn monomial(c: Rational, power: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(power, c);
        }
        Self { coeffs }
    }

    pub fn q_power(power: u32) -> Self {
        Self::monomial(Rational::one(), power)
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (p, c) in terms {
            out.add_term(p, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// Coefficient of `q^power`.
    pub fn coeff(&self, power: u32) -> Rational {
        self.coeffs.get(&power).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(p, c)| (*p, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_power(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// The coefficient when `self` is a pure constant, `None` otherwise.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    /// All coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// All coefficients are integers `>= 0`.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer() && !c.is_negative())
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> Rational {
        self.coeffs.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn add_term(&mut self, power: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(power).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&power);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(p, v)| (*p, v * c)).collect(),
        }
    }

    pub fn shift(&self, by: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(p, v)| (p + by, v.clone())).collect(),
        }
    }

    /// Drop every term with `q` power above `max_power`.
    pub fn truncate(&self, max_power: u32) -> Self {
        Self {
            coeffs: self.coeffs.range(..=max_power).map(|(p, v)| (*p, v.clone())).collect(),
        }
    }
}

impl From<i64> for QPoly {
    fn from(c: i64) -> Self {
        QPoly::from_int(c)
    }
}

impl From<Rational> for QPoly {
    fn from(c: Rational) -> Self {
        QPoly::constant(c)
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        for (p, c) in &rhs.coeffs {
            self.add_term(*p, c);
        }
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (p, c) in &rhs.coeffs {
            out.add_term(*p, &-c);
        }
        out
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|(p, c)| (*p, -c)).collect(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (p, a) in &self.coeffs {
            for (r, b) in &rhs.coeffs {
                out.add_term(p + r, &(a * b));
            }
        }
        out
    }
}

impl fmt::Display for QPoly {
    /// Descending powers: `90q^2 + 6q - 1/2`, fractions before `q` get a `*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let body = format_rational(&abs);
            match p {
                0 => write!(f, "{body}")?,
                _ => {
                    if !abs.is_one() {
                        if abs.is_integer() {
                            write!(f, "{body}")?;
                        } else {
                            write!(f, "{body}*")?;
                        }
                    }
                    if *p == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{p}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for QPoly {
    type Err = Error;

    /// Accepts the [`Display`](fmt::Display) form as well as looser input like
    /// `"6"`, `"3/2"`, `"q^2"`, `"-2*q + 1"`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty coefficient string".into()));
        }
        let mut out = QPoly::zero();
        let mut start = 0;
        let bytes = compact.as_bytes();
        let mut pieces = Vec::new();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        for piece in pieces {
            let (sign, body) = match piece.as_bytes().first() {
                Some(b'-') => (-1, &piece[1..]),
                Some(b'+') => (1, &piece[1..]),
                _ => (1, piece),
            };
            let (coef, power) = match body.find('q') {
                None => (parse_rational(body)?, 0u32),
                Some(at) => {
                    let head = body[..at].trim_end_matches('*');
                    let coef = if head.is_empty() { Rational::one() } else { parse_rational(head)? };
                    let tail = &body[at + 1..];
                    let power = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .and_then(|e| e.parse::<u32>().ok())
                            .ok_or_else(|| Error::Parse(format!("bad q exponent in `{piece}`")))?
                    };
                    (coef, power)
                }
            };
            let coef = if sign < 0 { -coef } else { coef };
            out.add_term(power, &coef);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn zero_terms_are_purged() {
        let mut a = QPoly::from_int(3);
        a.add_term(0, &r(-3, 1));
        assert!(a.is_zero());
        assert_eq!(a.num_terms(), 0);
    }

    #[test]
    fn display_forms() {
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(QPoly::monomial(r(3, 1), 1).to_string(), "3q");
        assert_eq!(QPoly::monomial(r(1, 8), 2).to_string(), "1/8*q^2");
        let p = QPoly::from_terms([(2, r(90, 1)), (1, r(6, 1)), (0, r(-1, 2))]);
        assert_eq!(p.to_string(), "90q^2 + 6q - 1/2");
        assert_eq!(QPoly::monomial(r(-1, 1), 3).to_string(), "-q^3");
    }

    #[test]
    fn parse_roundtrip_examples() {
        for s in ["0", "6", "-3/2", "q", "3q", "1/8*q^2", "90q^2 + 6q - 1/2", "-q^3 + 2"] {
            let p: QPoly = s.parse().unwrap();
            assert_eq!(p.to_string().parse::<QPoly>().unwrap(), p, "{s}");
        }
        assert_eq!("2 q".parse::<QPoly>().unwrap(), QPoly::monomial(r(2, 1), 1));
        assert!("q^x".parse::<QPoly>().is_err());
        assert!("1/0".parse::<QPoly>().is_err());
    }

    #[test]
    fn product() {
        let a: QPoly = "q + 1".parse().unwrap();
        let b: QPoly = "q - 1".parse().unwrap();
        assert_eq!(&a * &b, "q^2 - 1".parse().unwrap());
    }
}
