//! Theta series `N_p` and structure constants `N_{p,q}^r` reconstructed from a
//! regularized period sequence.
//!
//! `N_1` is fixed by requiring `N_1^d[t^0] = c_d`. Higher `N_n` follow from
//! `θ_n = θ_1 θ_{n-1} - Σ_{j<n} N_{1,n-1}^j θ_j`, and the structure constants
//! from `N_{p,q}^r = [p-r] N_{q,p-r} + [q-r] N_{p,q-r}` with `[b] = max(b, 0)`
//! and `N_{p,q}^{p+q} = 1`.

mod io;
mod series;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::laurent::{QPoly, Rational};
use crate::par;

pub use io::{PeriodFile, SeriesRecord, TableRecord, TailRecord};
pub use series::{ThetaSeries, TruncatedSeries};

/// `(c_0, …, c_T)` with `c_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodSequence {
    coeffs: Vec<QPoly>,
    index: Option<u32>,
}

impl PeriodSequence {
    pub fn new(coeffs: Vec<QPoly>, index: Option<u32>) -> Result<Self> {
        match coeffs.first() {
            Some(c0) if c0.is_one() => Ok(Self { coeffs, index }),
            Some(c0) => Err(Error::InconsistentPeriods(format!("c_0 = {c0}, expected 1"))),
            None => Err(Error::InconsistentPeriods("empty period sequence".into())),
        }
    }

    pub fn coeffs(&self) -> &[QPoly] {
        &self.coeffs
    }

    pub fn index(&self) -> Option<u32> {
        self.index
    }

    /// Truncation order `T`.
    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    /// Warnings for coefficients not concentrated in `q^{d/index}`.
    pub fn grading_warnings(&self) -> Vec<String> {
        let Some(index) = self.index.filter(|i| *i > 0) else { return Vec::new() };
        let mut out = Vec::new();
        for (d, c) in self.coeffs.iter().enumerate() {
            let d = d as u32;
            let ok = if d.is_multiple_of(index) {
                c.terms().all(|(p, _)| p == d / index)
            } else {
                c.is_zero()
            };
            if !ok {
                out.push(format!("c_{d} = {c} is not concentrated in q^{} for index {index}", d as f64 / index as f64));
            }
        }
        out
    }
}

/// The unique `N_1 = t + Σ a_i t^{-i}` whose powers have constant terms `c_d`,
/// trusted through `a_{T-1}`.
pub fn reconstruct_n1(periods: &PeriodSequence) -> Result<ThetaSeries> {
    let c = periods.coeffs();
    let t = periods.order();
    if t >= 1 && !c[1].is_zero() {
        return Err(Error::InconsistentPeriods(format!("c_1 = {}, but N_1 has no t^0 term", c[1])));
    }
    let mut tail: BTreeMap<u32, QPoly> = BTreeMap::new();
    for i in 1..t {
        // N_1^{i+1}[t^0] = (i+1) a_i + (terms in a_1 .. a_{i-1})
        let partial = ThetaSeries::new(1, tail.clone(), None).to_series();
        let lower = constant_term_of_power(&partial, i + 1)?;
        let a = (&c[i as usize + 1] - &lower).scale(&(Rational::one() / Rational::from_integer((i + 1).into())));
        tail.insert(i, a);
    }
    Ok(ThetaSeries::new(1, tail, Some(t.saturating_sub(1))))
}

/// `s^d[t^0]`, computing only what can still reach `t^0`.
fn constant_term_of_power(s: &TruncatedSeries, d: u32) -> Result<QPoly> {
    let top = s.top().unwrap_or(0).max(0);
    let mut acc = TruncatedSeries::one();
    for step in 1..=d {
        let remaining = (d - step) as i64;
        acc = acc.multiply(s, Some(-remaining * top));
    }
    acc.coeff(0)
}

/// `N_1^d[t^0]` for `d = 0..=order`.
pub fn periods_from_n1(n1: &ThetaSeries, order: u32) -> Result<Vec<QPoly>> {
    let s = n1.to_series();
    let mut acc = TruncatedSeries::one();
    let mut out = vec![QPoly::one()];
    for _ in 1..=order {
        acc = acc.multiply(&s, Some(-(order as i64)));
        out.push(acc.coeff(0)?);
    }
    Ok(out)
}

fn bracket_term(b: i64, series: &ThetaSeries) -> Result<QPoly> {
    if b <= 0 {
        return Ok(QPoly::zero());
    }
    Ok(series.two_point(b as u32)?.scale(&Rational::from_integer(BigInt::from(b))))
}

/// `N_{p,q}^r` from the theta series `N_p` and `N_q`.
pub fn structure_constant(np: &ThetaSeries, nq: &ThetaSeries, r: u32) -> Result<QPoly> {
    let (p, q) = (np.p(), nq.p());
    if r == p + q {
        return Ok(QPoly::one());
    }
    if r > p + q {
        return Ok(QPoly::zero());
    }
    let (p, q, r) = (p as i64, q as i64, r as i64);
    Ok(&bracket_term(p - r, nq)? + &bracket_term(q - r, np)?)
}

/// `N_{1,q}^r`. For `r >= 1` this is `(q-r) N_{1,q-r}`; at `r = 0` the general
/// formula also contributes `N_{q,1}`, so `N_q` is required.
pub fn one_step_constant(n1: &ThetaSeries, nq: &ThetaSeries, r: u32) -> Result<QPoly> {
    if n1.p() != 1 {
        return Err(Error::Invalid(format!("expected N_1, got N_{}", n1.p())));
    }
    structure_constant(n1, nq, r)
}

/// `N_n = N_1 N_{n-1} - Σ_{j<n} N_{1,n-1}^j N_j`, given `N_0, …, N_{n-1}`.
pub fn extend_series(series: &[ThetaSeries]) -> Result<ThetaSeries> {
    let n = series.len() as u32;
    if n < 2 {
        return Err(Error::Invalid("extend_series needs N_0 and N_1".into()));
    }
    for (j, s) in series.iter().enumerate() {
        if s.p() != j as u32 {
            return Err(Error::Invalid(format!("series {j} has leading exponent {}", s.p())));
        }
    }
    let n1 = &series[1];
    let prev = &series[n as usize - 1];
    let mut acc = n1.to_series().multiply(&prev.to_series(), None);
    for (j, nj) in series.iter().enumerate() {
        let c = one_step_constant(n1, prev, j as u32)?;
        if !c.is_zero() {
            acc = &acc - &nj.to_series().scale(&c);
        }
    }
    ThetaSeries::from_series(n, &acc)
}

/// `N_0, …, N_max_p` from a period sequence.
pub fn build_series(periods: &PeriodSequence, max_p: u32) -> Result<Vec<ThetaSeries>> {
    let mut series = vec![ThetaSeries::identity()];
    if max_p == 0 {
        return Ok(series);
    }
    series.push(reconstruct_n1(periods)?);
    while (series.len() as u32) <= max_p {
        let next = extend_series(&series)?;
        series.push(next);
    }
    Ok(series)
}

/// `N_{p,q}^r` for every `p + q <= P` and `0 <= r <= p + q`, zeros included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    max_p: u32,
    entries: BTreeMap<(u32, u32, u32), QPoly>,
}

impl StructureTable {
    pub fn max_p(&self) -> u32 {
        self.max_p
    }

    /// Entry `(p, q, r)`; zero for `r > p + q`.
    pub fn entry(&self, p: u32, q: u32, r: u32) -> QPoly {
        self.entries.get(&(p, q, r)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32, u32), &QPoly)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Overwrites one entry; used for negative controls.
    pub fn set(&mut self, p: u32, q: u32, r: u32, value: QPoly) {
        self.entries.insert((p, q, r), value);
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|(&(p, q, r), v)| self.entry(q, p, r) == *v)
    }
}

pub fn structure_table(series: &[ThetaSeries], max_p: u32) -> Result<StructureTable> {
    if (series.len() as u32) <= max_p {
        return Err(Error::Invalid(format!("need N_0..N_{max_p}, got {} series", series.len())));
    }
    let cells: Vec<(u32, u32)> = (0..=max_p).flat_map(|p| (0..=max_p - p).map(move |q| (p, q))).collect();
    let computed = par::map(&cells, |&(p, q)| {
        (0..=p + q)
            .map(|r| Ok(((p, q, r), structure_constant(&series[p as usize], &series[q as usize], r)?)))
            .collect::<Result<Vec<_>>>()
    });
    let mut entries = BTreeMap::new();
    for cell in computed {
        entries.extend(cell?);
    }
    Ok(StructureTable { max_p, entries })
}

/// `(N_{p_1} ⋯ N_{p_d})[t^0]`.
pub fn residue_product(series: &[&ThetaSeries]) -> Result<QPoly> {
    let mut acc = TruncatedSeries::one();
    for s in series {
        acc = acc.multiply(&s.to_series(), None);
    }
    acc.coeff(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativityViolation {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub u: u32,
    pub lhs: QPoly,
    pub rhs: QPoly,
}

/// Compares `(θ_p θ_q) θ_r` with `θ_p (θ_q θ_r)` coefficientwise for all
/// `p + q + r <= P`, ignoring `q` powers above `q_window` when given.
pub fn associativity_check(
    table: &StructureTable,
    max_p: u32,
    q_window: Option<u32>,
) -> Vec<AssociativityViolation> {
    let max_p = max_p.min(table.max_p());
    let triples: Vec<(u32, u32, u32)> = (0..=max_p)
        .flat_map(|p| (0..=max_p - p).flat_map(move |q| (0..=max_p - p - q).map(move |r| (p, q, r))))
        .collect();
    let cut = |x: QPoly| match q_window {
        Some(w) => x.truncate(w),
        None => x,
    };
    let found = par::map(&triples, |&(p, q, r)| {
        let mut bad = Vec::new();
        for u in 0..=p + q + r {
            let mut lhs = QPoly::zero();
            for s in 0..=p + q {
                lhs += &(&table.entry(p, q, s) * &table.entry(s, r, u));
            }
            let mut rhs = QPoly::zero();
            for s in 0..=q + r {
                rhs += &(&table.entry(q, r, s) * &table.entry(p, s, u));
            }
            let (lhs, rhs) = (cut(lhs), cut(rhs));
            if lhs != rhs {
                bad.push(AssociativityViolation { p, q, r, u, lhs, rhs });
            }
        }
        bad
    });
    found.into_iter().flatten().collect()
}

/// `n_d = c_d / d!`, the coefficients of the unregularized series `g(t)`.
pub fn unregularize(periods: &PeriodSequence) -> Vec<QPoly> {
    let mut factorial = BigInt::one();
    periods
        .coeffs()
        .iter()
        .enumerate()
        .map(|(d, c)| {
            if d > 0 {
                factorial *= d;
            }
            c.scale(&(Rational::one() / Rational::from_integer(factorial.clone())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    fn p2_periods(order: u32) -> PeriodSequence {
        let mut coeffs = vec![QPoly::zero(); order as usize + 1];
        let fact = |n: u32| (1..=n).fold(BigInt::one(), |a, x| a * x);
        for m in 0..=order / 3 {
            let c = fact(3 * m) / (fact(m) * fact(m) * fact(m));
            coeffs[3 * m as usize] = QPoly::monomial(Rational::from_integer(c), m);
        }
        PeriodSequence::new(coeffs, Some(3)).unwrap()
    }

    fn trivial_periods(order: u32) -> PeriodSequence {
        let mut coeffs = vec![QPoly::zero(); order as usize + 1];
        coeffs[0] = QPoly::one();
        PeriodSequence::new(coeffs, None).unwrap()
    }

    #[test]
    fn sequence_validation() {
        assert!(PeriodSequence::new(vec![], None).is_err());
        assert!(PeriodSequence::new(vec![q("2")], None).is_err());
        let bad = PeriodSequence::new(vec![q("1"), q("1")], None).unwrap();
        assert!(matches!(reconstruct_n1(&bad), Err(Error::InconsistentPeriods(_))));
    }

    #[test]
    fn trivial_reconstruction() {
        let n1 = reconstruct_n1(&trivial_periods(8)).unwrap();
        assert!(n1.is_zero_tail());
        let series = build_series(&trivial_periods(8), 5).unwrap();
        for (p, s) in series.iter().enumerate() {
            assert_eq!(s.p(), p as u32);
            assert!(s.is_zero_tail());
        }
        let table = structure_table(&series, 5).unwrap();
        for ((p, q, r), v) in table.entries() {
            assert_eq!(v.is_one(), r == p + q);
            assert_eq!(v.is_zero(), r != p + q);
        }
        assert!(residue_product(&[&series[2], &series[3]]).unwrap().is_zero());
    }

    #[test]
    fn p2_first_coefficients() {
        let n1 = reconstruct_n1(&p2_periods(12)).unwrap();
        assert!(n1.tail_coeff(1).unwrap().is_zero());
        assert_eq!(n1.tail_coeff(2).unwrap(), q("2q"));
        assert_eq!(n1.two_point(2).unwrap(), q("q"));
        assert_eq!(n1.valid_to(), Some(11));
        assert_eq!(periods_from_n1(&n1, 12).unwrap(), p2_periods(12).coeffs());
    }

    #[test]
    fn one_step_examples() {
        let series = build_series(&p2_periods(12), 3).unwrap();
        let n1 = &series[1];
        assert_eq!(one_step_constant(n1, &series[3], 1).unwrap(), n1.two_point(2).unwrap().scale(&Rational::from_integer(2.into())));
        assert!(one_step_constant(n1, &series[2], 1).unwrap().is_zero());
        let trivial = build_series(&trivial_periods(6), 3).unwrap();
        for r in 0..4 {
            assert!(one_step_constant(&trivial[1], &trivial[3], r).unwrap().is_zero());
        }
    }

    #[test]
    fn p2_n2_leading_form() {
        let series = build_series(&p2_periods(12), 2).unwrap();
        assert_eq!(series[2].p(), 2);
        assert_eq!(series[2].valid_to(), Some(10));
    }

    #[test]
    fn p2_table_entry_zero() {
        let series = build_series(&p2_periods(12), 4).unwrap();
        let table = structure_table(&series, 4).unwrap();
        assert!(table.entry(1, 1, 0).is_zero());
        assert!(table.is_symmetric());
        for p in 0..=4u32 {
            for q in 0..=4 - p {
                assert!(table.entry(p, q, p + q).is_one());
                let via = residue_product(&[&series[p as usize], &series[q as usize]]).unwrap();
                assert_eq!(table.entry(p, q, 0), via, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn associativity_and_negative_control() {
        let trivial = structure_table(&build_series(&trivial_periods(12), 6).unwrap(), 6).unwrap();
        assert!(associativity_check(&trivial, 6, None).is_empty());
        let series = build_series(&p2_periods(12), 4).unwrap();
        let mut table = structure_table(&series, 4).unwrap();
        assert!(associativity_check(&table, 4, Some(2)).is_empty());
        table.set(1, 1, 0, q("1"));
        assert!(!associativity_check(&table, 4, Some(2)).is_empty());
    }

    #[test]
    fn unregularized() {
        let g = unregularize(&p2_periods(6));
        assert_eq!(g[3], q("q"));
        assert_eq!(g[6], q("1/8*q^2"));
        assert_eq!(unregularize(&trivial_periods(0)), vec![q("1")]);
    }
}
