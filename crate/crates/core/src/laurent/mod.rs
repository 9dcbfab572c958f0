//! Sparse multivariate Laurent polynomials over `Q[q]`.

mod io;
mod qpoly;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::par;

pub use io::{PolyFile, TermRecord};
pub use qpoly::{format_rational, parse_rational, QPoly, Rational};

/// One signed exponent per ambient variable.
pub type ExponentVector = Vec<i64>;

/// `Σ c_e x^e` with `c_e ∈ Q[q]`. Terms are kept in lexicographic exponent
/// order and zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    vars: Vec<String>,
    terms: BTreeMap<ExponentVector, QPoly>,
}

impl LaurentPolynomial {
    /// The zero polynomial in the given variables.
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::Invalid("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Self { vars, terms: BTreeMap::new() })
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<S, I>(vars: &[S], terms: I) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (ExponentVector, QPoly)>,
    {
        let mut out = Self::zero(vars)?;
        for (e, c) in terms {
            out.check_exponent(&e)?;
            out.add_term(e, &c);
        }
        Ok(out)
    }

    /// Shorthand for integer coefficients without `q`.
    pub fn from_int_terms<S: AsRef<str>>(vars: &[S], terms: &[(&[i64], i64)]) -> Result<Self> {
        Self::from_terms(vars, terms.iter().map(|(e, c)| (e.to_vec(), QPoly::from_int(*c))))
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: QPoly) -> Result<Self> {
        let zero_exp = vec![0; vars.len()];
        Self::from_terms(vars, [(zero_exp, c)])
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Result<Self> {
        Self::constant(vars, QPoly::one())
    }

    /// The unit polynomial sharing `self`'s variables.
    pub fn unit_like(&self) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; self.rank()], QPoly::one());
        Self { vars: self.vars.clone(), terms }
    }

    fn zero_like(&self) -> Self {
        Self { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    fn check_exponent(&self, e: &[i64]) -> Result<()> {
        if e.len() != self.rank() {
            return Err(Error::Dimension(format!(
                "exponent of length {} in a polynomial of rank {}",
                e.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::Dimension(format!(
                "variables {:?} and {:?} differ",
                self.vars, other.vars
            )));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &QPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i64]) -> QPoly {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Single term `c x^e`, if the polynomial is one.
    pub fn as_monomial(&self) -> Option<(&ExponentVector, &QPoly)> {
        match self.terms.len() {
            1 => self.terms.iter().next(),
            _ => None,
        }
    }

    fn add_term(&mut self, e: ExponentVector, c: &QPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&QPoly::from_int(-1)))
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &QPoly) -> Self {
        let mut out = self.zero_like();
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &(v * c));
        }
        out
    }

    /// Exact product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let left: Vec<(&ExponentVector, &QPoly)> = self.terms.iter().collect();
        const CHUNK: usize = 16;
        let chunks: Vec<&[(&ExponentVector, &QPoly)]> = left.chunks(CHUNK).collect();
        let partials = par::map(&chunks, |chunk| {
            let mut acc: BTreeMap<ExponentVector, QPoly> = BTreeMap::new();
            for (ea, ca) in chunk.iter() {
                for (eb, cb) in &other.terms {
                    let e: ExponentVector = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                    *acc.entry(e).or_default() += &(*ca * cb);
                }
            }
            acc
        });
        let mut out = self.zero_like();
        for part in partials {
            for (e, c) in part {
                out.add_term(e, &c);
            }
        }
        Ok(out)
    }

    /// `f^d` by repeated multiplication; `f^0 = 1` even for `f = 0`.
    pub fn power(&self, d: u32) -> Self {
        let mut acc = self.unit_like();
        for _ in 0..d {
            acc = acc.multiply(self).expect("same variables");
        }
        acc
    }

    /// Coefficient at the zero exponent.
    pub fn constant_term(&self) -> QPoly {
        self.coeff(&vec![0; self.rank()])
    }

    /// `(c_0, …, c_D)` with `c_d` the constant term of `f^d`.
    pub fn classical_periods(&self, max_degree: u32) -> Vec<QPoly> {
        let mut out = Vec::with_capacity(max_degree as usize + 1);
        let mut acc = self.unit_like();
        for d in 0..=max_degree {
            out.push(acc.constant_term());
            if d < max_degree {
                acc = acc.multiply(self).expect("same variables");
            }
        }
        out
    }

    /// Min-plus tropicalization `min_e ⟨e, v⟩` over the support.
    pub fn tropical_value(&self, v: &[Rational]) -> Result<Rational> {
        if v.len() != self.rank() {
            return Err(Error::Dimension(format!(
                "point of length {} for a polynomial of rank {}",
                v.len(),
                self.rank()
            )));
        }
        self.terms
            .keys()
            .map(|e| e.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + b * Rational::from_integer((*a).into())))
            .min()
            .ok_or(Error::EmptyTropicalization)
    }

    /// Tropical value at an integer point.
    pub fn tropical_value_int(&self, v: &[i64]) -> Result<i64> {
        self.check_exponent(v)?;
        self.terms
            .keys()
            .map(|e| e.iter().zip(v).map(|(a, b)| a * b).sum())
            .min()
            .ok_or(Error::EmptyTropicalization)
    }

    /// Exponent vectors with nonzero coefficient, in canonical order.
    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    /// Componentwise minimum over the support, and whether that vector is
    /// itself in the support.
    pub fn min_exponent_vector(&self) -> Result<(ExponentVector, bool)> {
        let mut keys = self.terms.keys();
        let first = keys.next().ok_or(Error::EmptyPolynomial)?;
        let mut min = first.clone();
        for e in keys {
            for (m, x) in min.iter_mut().zip(e) {
                *m = (*m).min(*x);
            }
        }
        let attained = self.terms.contains_key(&min);
        Ok((min, attained))
    }

    /// Substitute `q = 1`.
    pub fn specialize_q_one(&self) -> Self {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &QPoly::constant(c.eval_one()));
        }
        out
    }

    /// Exact quotient by a monomial `c x^e` whose coefficient is a nonzero constant.
    /// Returns `None` when `divisor` is not of that shape.
    pub fn div_monomial(&self, divisor: &Self) -> Option<Self> {
        if self.vars != divisor.vars {
            return None;
        }
        let (de, dc) = divisor.as_monomial()?;
        let dc = dc.as_constant()?;
        if dc.is_zero() {
            return None;
        }
        let inv = Rational::one() / dc;
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let shifted = e.iter().zip(de).map(|(a, b)| a - b).collect();
            out.add_term(shifted, &c.scale(&inv));
        }
        Some(out)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(e)
                .filter(|(_, x)| **x != 0)
                .map(|(v, x)| if *x == 1 { v.clone() } else { format!("{v}^{x}") })
                .collect();
            let coef = if c.num_terms() > 1 { format!("({c})") } else { c.to_string() };
            match (mono.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{coef}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{coef}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> LaurentPolynomial {
        LaurentPolynomial::from_int_terms(&["x", "y"], &[(&[1, 0], 1), (&[0, 1], 1), (&[-1, -1], 1)]).unwrap()
    }

    fn int(c: i64) -> QPoly {
        QPoly::from_int(c)
    }

    #[test]
    fn inverse_monomials_multiply_to_one() {
        let x = LaurentPolynomial::from_int_terms(&["x"], &[(&[1], 1)]).unwrap();
        let xi = LaurentPolynomial::from_int_terms(&["x"], &[(&[-1], 1)]).unwrap();
        assert_eq!(x.multiply(&xi).unwrap(), x.unit_like());
    }

    #[test]
    fn difference_of_squares() {
        let a = LaurentPolynomial::from_int_terms(&["x", "y"], &[(&[1, 0], 1), (&[0, 1], 1)]).unwrap();
        let b = LaurentPolynomial::from_int_terms(&["x", "y"], &[(&[1, 0], 1), (&[0, 1], -1)]).unwrap();
        let want = LaurentPolynomial::from_int_terms(&["x", "y"], &[(&[2, 0], 1), (&[0, 2], -1)]).unwrap();
        assert_eq!(a.multiply(&b).unwrap(), want);
    }

    #[test]
    fn square_of_p2_mirror() {
        let want = LaurentPolynomial::from_int_terms(
            &["x", "y"],
            &[(&[2, 0], 1), (&[0, 2], 1), (&[-2, -2], 1), (&[1, 1], 2), (&[0, -1], 2), (&[-1, 0], 2)],
        )
        .unwrap();
        assert_eq!(p2().power(2), want);
    }

    #[test]
    fn mismatched_variables_rejected() {
        let a = LaurentPolynomial::from_int_terms(&["x"], &[(&[1], 1)]).unwrap();
        let b = LaurentPolynomial::from_int_terms(&["y"], &[(&[1], 1)]).unwrap();
        assert!(matches!(a.multiply(&b), Err(Error::Dimension(_))));
        assert!(LaurentPolynomial::from_int_terms(&["x"], &[(&[1, 2], 1)]).is_err());
    }

    #[test]
    fn power_and_constant_term() {
        let f = LaurentPolynomial::from_int_terms(&["x"], &[(&[1], 1), (&[-1], 1)]).unwrap();
        assert_eq!(f.power(0), f.unit_like());
        let want = LaurentPolynomial::from_int_terms(&["x"], &[(&[2], 1), (&[0], 2), (&[-2], 1)]).unwrap();
        assert_eq!(f.power(2), want);
        assert!(f.constant_term().is_zero());
        assert_eq!(p2().power(3).constant_term(), int(6));
        assert_eq!(p2().power(6).constant_term(), int(90));
        let g = LaurentPolynomial::from_int_terms(&["x"], &[(&[0], 5), (&[1], 1)]).unwrap();
        assert_eq!(g.constant_term(), int(5));
    }

    #[test]
    fn periods_of_zero_and_binomial() {
        let zero = LaurentPolynomial::zero(&["x"]).unwrap();
        assert_eq!(zero.classical_periods(3), vec![int(1), int(0), int(0), int(0)]);
        let f = LaurentPolynomial::from_int_terms(&["x"], &[(&[1], 1), (&[-1], 1)]).unwrap();
        let c = f.classical_periods(6);
        assert_eq!(c, vec![int(1), int(0), int(2), int(0), int(6), int(0), int(20)]);
    }

    #[test]
    fn tropical_values() {
        let r = |n: i64| Rational::from_integer(n.into());
        assert_eq!(p2().tropical_value(&[r(0), r(0)]).unwrap(), r(0));
        assert_eq!(p2().tropical_value(&[r(1), r(1)]).unwrap(), r(-2));
        assert_eq!(p2().tropical_value(&[r(-1), r(-1)]).unwrap(), r(-1));
        let zero = LaurentPolynomial::zero(&["x", "y"]).unwrap();
        assert_eq!(zero.tropical_value(&[r(0), r(0)]), Err(Error::EmptyTropicalization));
    }

    #[test]
    fn supports_and_minima() {
        assert_eq!(p2().support(), vec![vec![-1, -1], vec![0, 1], vec![1, 0]]);
        let s = LaurentPolynomial::from_int_terms(&["x", "y"], &[(&[1, 0], 1), (&[0, 1], 1)]).unwrap();
        assert_eq!(s.power(2).support(), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(s.min_exponent_vector().unwrap(), (vec![0, 0], false));
        let t = LaurentPolynomial::from_int_terms(&["x", "y"], &[(&[1, 0], 1), (&[1, 1], 1)]).unwrap();
        assert_eq!(t.min_exponent_vector().unwrap(), (vec![1, 0], true));
        let m = LaurentPolynomial::from_int_terms(&["x", "y"], &[(&[2, -1], 1)]).unwrap();
        assert_eq!(m.min_exponent_vector().unwrap(), (vec![2, -1], true));
        assert!(LaurentPolynomial::zero(&["x"]).unwrap().min_exponent_vector().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p2().to_string(), "x + y + x^-1*y^-1");
    }
}
