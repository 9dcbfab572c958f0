//! The rectangles-seed chart of a Grassmannian: Plücker flow polynomials, the
//! superpotential `Σ p_{μ_i^□} / p_{μ_i}`, valuations, and the polar polytope.

mod network;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPolynomial, QPoly};
use crate::par;
use crate::polytope::RationalPolytope;
use crate::young::{
    boundary_rectangle, boundary_rectangle_box, valuation_vector, BoxContext, Direction, StepSet, YoungDiagram,
};

pub use network::{var_name, GridNetwork};

pub fn build_rectangles_network(ctx: BoxContext) -> GridNetwork {
    GridNetwork::rectangles(ctx)
}

/// Plücker coordinate `p_J` for a `k`-subset `J ⊆ [n]` of west steps.
pub fn plucker(net: &GridNetwork, west: &[usize]) -> Result<LaurentPolynomial> {
    let steps = StepSet::new(Direction::West, west.iter().copied(), net.context());
    Ok(net.flow_polynomial(&YoungDiagram::from_steps(&steps)?))
}

/// The summands `(μ_i^□, μ_i)` and the index carrying `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperpotentialTerms {
    pub context: BoxContext,
    pub terms: Vec<(YoungDiagram, YoungDiagram)>,
    pub q_index: usize,
}

impl SuperpotentialTerms {
    pub fn new(ctx: BoxContext) -> Self {
        let terms = (0..ctx.n()).map(|i| (boundary_rectangle_box(i, ctx), boundary_rectangle(i, ctx))).collect();
        Self { context: ctx, terms, q_index: ctx.rows() }
    }
}

/// `p_{μ_i^□} / p_{μ_i}` in the chart, without `q`.
pub fn theta_restriction(net: &GridNetwork, i: usize) -> Result<LaurentPolynomial> {
    let ctx = net.context();
    if i >= ctx.n() {
        return Err(Error::Invalid(format!("boundary index {i} out of range 0..{}", ctx.n())));
    }
    let num = net.flow_polynomial(&boundary_rectangle_box(i, ctx));
    let den = net.flow_polynomial(&boundary_rectangle(i, ctx));
    num.div_monomial(&den).ok_or_else(|| {
        Error::ChartRestriction(format!("p(μ_{i}) = {den} is not a monomial, so p(μ_{i}^□) = {num} does not divide"))
    })
}

/// `W = Σ_i θ_i` with `q` on the `i = n-k` summand.
pub fn superpotential_chart(net: &GridNetwork) -> Result<LaurentPolynomial> {
    let spec = SuperpotentialTerms::new(net.context());
    let idx: Vec<usize> = (0..spec.terms.len()).collect();
    let thetas = par::map(&idx, |&i| theta_restriction(net, i));
    let mut w = LaurentPolynomial::zero(net.var_names())?;
    for (i, theta) in thetas.into_iter().enumerate() {
        let theta = theta?;
        let theta = if i == spec.q_index { theta.scale(&QPoly::q_power(1)) } else { theta };
        w = w.add(&theta)?;
    }
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationRow {
    pub lambda: Vec<usize>,
    pub expected: Vec<i64>,
    pub got: Vec<i64>,
    pub attained: bool,
}

impl ValuationRow {
    pub fn is_match(&self) -> bool {
        self.attained && self.expected == self.got
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaPairing {
    pub i: usize,
    pub j: usize,
    pub expected: i64,
    pub got: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationReport {
    pub rows: Vec<ValuationRow>,
    pub pairings: Vec<ThetaPairing>,
}

impl ValuationReport {
    pub fn row_mismatches(&self) -> Vec<&ValuationRow> {
        self.rows.iter().filter(|r| !r.is_match()).collect()
    }

    pub fn pairing_mismatches(&self) -> Vec<&ThetaPairing> {
        self.pairings.iter().filter(|p| p.expected != p.got).collect()
    }

    pub fn is_clean(&self) -> bool {
        self.row_mismatches().is_empty() && self.pairing_mismatches().is_empty()
    }
}

/// Compares the minimal exponent of every flow polynomial with the MaxDiag
/// valuation vector, and the tropical pairing of each `θ_i` with each
/// boundary cocharacter against `δ_{ij} - δ_{i,n-k}`.
pub fn verify_valuations(net: &GridNetwork) -> Result<ValuationReport> {
    let ctx = net.context();
    let diagrams = ctx.diagrams();
    let rows = par::map(&diagrams, |lambda| {
        let flow = net.flow_polynomial(lambda);
        let expected = valuation_vector(lambda, net.face_labels());
        let (got, attained) = flow.min_exponent_vector().expect("flow polynomials are nonzero");
        ValuationRow { lambda: lambda.rows().to_vec(), expected, got, attained }
    });
    let n = ctx.n();
    let thetas = (0..n).map(|i| theta_restriction(net, i)).collect::<Result<Vec<_>>>()?;
    let mut pairings = Vec::with_capacity(n * n);
    for (i, theta) in thetas.iter().enumerate() {
        for j in 0..n {
            let got = match net.variable_of(&boundary_rectangle(j, ctx)) {
                Some(var) => {
                    let mut e = vec![0i64; theta.rank()];
                    e[var] = 1;
                    theta.tropical_value_int(&e)?
                }
                None => 0,
            };
            let expected = (i == j) as i64 - (i == ctx.rows()) as i64;
            pairings.push(ThetaPairing { i, j, expected, got });
        }
    }
    Ok(ValuationReport { rows, pairings })
}

/// A failed three-term relation `p_{Sac} p_{Sbd} = p_{Sab} p_{Scd} + p_{Sad} p_{Sbc}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerFailure {
    pub common: Vec<usize>,
    pub indices: [usize; 4],
}

/// Checks every three-term Plücker relation; returns the failures and the number checked.
pub fn check_short_plucker_relations(net: &GridNetwork) -> Result<(Vec<PluckerFailure>, usize)> {
    let ctx = net.context();
    if ctx.k() < 2 || ctx.n() < ctx.k() + 2 {
        return Ok((Vec::new(), 0));
    }
    let mut cases = Vec::new();
    for quad in (1..=ctx.n()).combinations(4) {
        let rest: Vec<usize> = (1..=ctx.n()).filter(|x| !quad.contains(x)).collect();
        for common in rest.into_iter().combinations(ctx.k() - 2) {
            cases.push((common, [quad[0], quad[1], quad[2], quad[3]]));
        }
    }
    let results = par::map(&cases, |(common, [a, b, c, d])| -> Result<bool> {
        let p = |x: usize, y: usize| {
            let mut j = common.clone();
            j.extend([x, y]);
            plucker(net, &j)
        };
        let lhs = p(*a, *c)?.multiply(&p(*b, *d)?)?;
        let rhs = p(*a, *b)?.multiply(&p(*c, *d)?)?.add(&p(*a, *d)?.multiply(&p(*b, *c)?)?)?;
        Ok(lhs == rhs)
    });
    let mut failures = Vec::new();
    for ((common, indices), ok) in cases.iter().zip(results) {
        if !ok? {
            failures.push(PluckerFailure { common: common.clone(), indices: *indices });
        }
    }
    Ok((failures, cases.len()))
}

/// `{v : Trop(θ_i)(v) ≥ -1 for all i}` at `q = 1`.
pub fn nobody_polytope(net: &GridNetwork) -> Result<RationalPolytope> {
    let mut support = Vec::new();
    for i in 0..net.context().n() {
        support.extend(theta_restriction(net, i)?.support());
    }
    support.sort();
    support.dedup();
    RationalPolytope::polar_from_support(&support)
}

/// Classical periods of the superpotential.
pub fn grass_periods(net: &GridNetwork, max_degree: u32) -> Result<Vec<QPoly>> {
    Ok(superpotential_chart(net)?.classical_periods(max_degree))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(k: usize, n: usize) -> BoxContext {
        BoxContext::new(k, n).unwrap()
    }

    #[test]
    fn face_counts() {
        assert_eq!(build_rectangles_network(ctx(2, 4)).num_faces(), 5);
        assert_eq!(build_rectangles_network(ctx(1, 2)).num_faces(), 2);
        assert_eq!(build_rectangles_network(ctx(2, 5)).num_faces(), 7);
        let net = build_rectangles_network(ctx(2, 4));
        assert_eq!(net.var_names(), &["r0x0", "r1x1", "r1x2", "r2x1"]);
    }

    #[test]
    fn empty_flow_is_one() {
        for (k, n) in [(1, 2), (2, 4), (3, 5)] {
            let net = build_rectangles_network(ctx(k, n));
            let f = net.flow_polynomial(&YoungDiagram::empty(net.context()));
            assert_eq!(f, f.unit_like());
        }
    }

    #[test]
    fn boundary_flows_are_monomials() {
        let c = ctx(2, 4);
        let net = build_rectangles_network(c);
        for i in 0..4 {
            let mu = boundary_rectangle(i, c);
            assert_eq!(net.flow_count(&mu), 1);
            assert!(net.flow_polynomial(&mu).as_monomial().is_some());
        }
    }

    #[test]
    fn plucker_gr24() {
        let net = build_rectangles_network(ctx(2, 4));
        let p = |j: &[usize]| plucker(&net, j).unwrap();
        let lhs = p(&[1, 3]).multiply(&p(&[2, 4])).unwrap();
        let rhs = p(&[1, 2]).multiply(&p(&[3, 4])).unwrap().add(&p(&[1, 4]).multiply(&p(&[2, 3])).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn superpotential_gr24() {
        let net = build_rectangles_network(ctx(2, 4));
        let w = superpotential_chart(&net).unwrap();
        let at_one = w.specialize_q_one();
        let want = LaurentPolynomial::from_int_terms(
            net.var_names(),
            &[
                (&[1, 0, 0, 0], 1),
                (&[0, 0, 1, 0], 1),
                (&[0, 0, 0, 1], 1),
                (&[0, 1, 1, 0], 1),
                (&[0, 1, 0, 1], 1),
                (&[-1, -1, -1, -1], 1),
            ],
        )
        .unwrap();
        assert_eq!(at_one, want);
        let with_q: Vec<_> = w.terms().filter(|(_, c)| c.degree() != Some(0)).collect();
        assert_eq!(with_q.len(), 1);
        assert_eq!(with_q[0].1, &QPoly::q_power(1));
    }

    #[test]
    fn smallest_case() {
        let net = build_rectangles_network(ctx(1, 2));
        let w = superpotential_chart(&net).unwrap();
        assert_eq!(w.rank(), 1);
        assert_eq!(w.num_terms(), 2);
        assert_eq!(w.classical_periods(4)[2], QPoly::monomial(crate::Rational::from_integer(2.into()), 1));
    }

    #[test]
    fn theta_zero_is_numerator() {
        let c = ctx(2, 4);
        let net = build_rectangles_network(c);
        assert_eq!(theta_restriction(&net, 0).unwrap(), net.flow_polynomial(&boundary_rectangle_box(0, c)));
        for i in 0..4 {
            assert!(theta_restriction(&net, i).unwrap().min_exponent_vector().unwrap().1);
        }
        assert!(theta_restriction(&net, 4).is_err());
    }

    #[test]
    fn valuations_gr24() {
        let net = build_rectangles_network(ctx(2, 4));
        let report = verify_valuations(&net).unwrap();
        assert!(report.is_clean());
        assert_eq!(report.rows[0].lambda, Vec::<usize>::new());
        assert_eq!(report.rows[0].got, vec![0; 4]);
    }

    #[test]
    fn gr24_polytope() {
        let net = build_rectangles_network(ctx(2, 4));
        let p = nobody_polytope(&net).unwrap();
        assert!(p.geometry_flags().all());
        assert_eq!(p.lattice_point_count(0).unwrap(), 1);
        assert_eq!(p.lattice_point_count(1).unwrap(), 105);
    }
}
