//! Standard Laurent mirrors of small Fano varieties.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::frobenius::PeriodSequence;
use crate::laurent::{LaurentPolynomial, QPoly, Rational};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub fano_index: u32,
    pub mirror: LaurentPolynomial,
    /// `c_0, …, c_6` as recorded from this tool's own computation.
    pub expected_head: [u64; 7],
}

impl CatalogEntry {
    /// Periods through `order`, each `c_d` placed in `q^{d/index}`.
    pub fn graded_periods(&self, order: u32) -> Result<PeriodSequence> {
        let coeffs = self
            .mirror
            .classical_periods(order)
            .into_iter()
            .enumerate()
            .map(|(d, c)| {
                let v = c.eval_one();
                if (d as u32).is_multiple_of(self.fano_index) {
                    QPoly::monomial(v, d as u32 / self.fano_index)
                } else {
                    QPoly::constant(v)
                }
            })
            .collect();
        PeriodSequence::new(coeffs, Some(self.fano_index))
    }
}

fn entry(name: &'static str, description: &'static str, index: u32, vars: &[&str], exps: &[&[i64]], head: [u64; 7]) -> CatalogEntry {
    let terms = exps.iter().map(|e| (e.to_vec(), QPoly::one()));
    CatalogEntry {
        name,
        description,
        fano_index: index,
        mirror: LaurentPolynomial::from_terms(vars, terms).expect("well-formed catalog entry"),
        expected_head: head,
    }
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![
        entry("p1", "projective line, x + 1/x", 2, &["x"], &[&[1], &[-1]], [1, 0, 2, 0, 6, 0, 20]),
        entry(
            "p2",
            "projective plane, x + y + 1/(xy)",
            3,
            &["x", "y"],
            &[&[1, 0], &[0, 1], &[-1, -1]],
            [1, 0, 0, 6, 0, 0, 90],
        ),
        entry(
            "p1xp1",
            "product of two projective lines, x + 1/x + y + 1/y",
            2,
            &["x", "y"],
            &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
            [1, 0, 4, 0, 36, 0, 400],
        ),
        entry(
            "p3",
            "projective 3-space, x + y + z + 1/(xyz)",
            4,
            &["x", "y", "z"],
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]],
            [1, 0, 0, 0, 24, 0, 0],
        ),
    ]
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCatalogEntry(name.to_string()))
}

/// Checks that periods are non-negative integers vanishing off the index grading.
pub fn integrality_failures(entry: &CatalogEntry, order: u32) -> Vec<String> {
    let mut out = Vec::new();
    for (d, c) in entry.mirror.classical_periods(order).iter().enumerate() {
        if !c.is_nonnegative_integral() {
            out.push(format!("{}: c_{d} = {c} is not a non-negative integer", entry.name));
        }
        if !(d as u32).is_multiple_of(entry.fano_index) && !c.is_zero() {
            out.push(format!("{}: c_{d} = {c} is nonzero off the index grading", entry.name));
        }
    }
    for (d, want) in entry.expected_head.iter().enumerate() {
        let got = entry.mirror.classical_periods(6)[d].eval_one();
        if got != Rational::from_integer(BigInt::from(*want)) {
            out.push(format!("{}: c_{d} = {got}, recorded {want}", entry.name));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        assert_eq!(lookup("p2").unwrap().mirror.to_string(), "x + y + x^-1*y^-1");
        assert_eq!(lookup("p1").unwrap().fano_index, 2);
        assert!(entries().len() >= 4);
        assert_eq!(lookup("nope").unwrap_err(), Error::UnknownCatalogEntry("nope".into()));
    }

    #[test]
    fn heads_and_integrality() {
        for e in entries() {
            assert!(integrality_failures(&e, 12).is_empty(), "{}", e.name);
        }
    }

    #[test]
    fn graded() {
        let seq = lookup("p2").unwrap().graded_periods(6).unwrap();
        assert_eq!(seq.coeffs()[6].to_string(), "90q^2");
        assert!(seq.grading_warnings().is_empty());
    }
}
