//! The acceptance battery: each check recomputes a known identity from scratch
//! and compares it against an independent closed form or a second route.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::catalog;
use crate::frobenius::{
    associativity_check, build_series, periods_from_n1, reconstruct_n1, residue_product, structure_table,
    PeriodSequence,
};
use crate::grassmannian::{
    build_rectangles_network, check_short_plucker_relations, grass_periods, nobody_polytope, verify_valuations,
};
use crate::laurent::{LaurentPolynomial, QPoly, Rational};
use crate::young::{max_diag, schur_dimension, theta_valuation_delta, BoxContext};

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub id: u32,
    pub title: &'static str,
    pub correct: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl CheckOutcome {
    pub fn within_limit(&self) -> bool {
        self.limit.is_none_or(|l| self.elapsed <= l)
    }

    pub fn passed(&self) -> bool {
        self.correct && self.within_limit()
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let limit = self.limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
        format!(
            "{status} criterion {:>2}: {} [{:.3}s{limit}] {}",
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

type Check = fn() -> (bool, String);

const CHECKS: [(u32, &str, Option<u64>, Check); 10] = [
    (1, "P2 period identity", Some(1), p2_periods),
    (2, "valuation lemma battery, n <= 8", Some(5), valuation_deltas),
    (3, "MaxDiag reflection symmetry, n <= 6", None, reflection_symmetry),
    (4, "flow polynomial soundness, Gr(2,4) and Gr(2,5)", Some(30), flow_soundness),
    (5, "val_G realization, (2,4) (2,5) (3,5)", None, valuation_realization),
    (6, "lattice counts and geometry of the Gr(2,4) polytope", Some(60), gr24_polytope),
    (7, "Gr(2,4) period grading, integrality and quadric closed form", None, gr24_periods),
    (8, "round trip of N_1 on P2 periods", Some(1), frobenius_round_trip),
    (9, "residue product against table at r = 0", None, two_routes),
    (10, "associativity with negative control", None, associativity),
];

pub fn criterion_ids() -> impl Iterator<Item = u32> {
    CHECKS.iter().map(|c| c.0)
}

pub fn run_criterion(id: u32) -> Option<CheckOutcome> {
    let (id, title, limit, check) = *CHECKS.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (correct, detail) = check();
    Some(CheckOutcome {
        id,
        title,
        correct,
        detail,
        elapsed: start.elapsed(),
        limit: limit.map(Duration::from_secs),
    })
}

pub fn run_all() -> Vec<CheckOutcome> {
    criterion_ids().filter_map(run_criterion).collect()
}

/// Catalog integrality: non-negative integer periods, zero off the index grading.
pub fn catalog_failures(order: u32) -> Vec<String> {
    catalog::entries()
        .iter()
        .flat_map(|e| catalog::integrality_failures(e, order))
        .collect()
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, x| acc * x)
}

fn int(n: BigInt) -> QPoly {
    QPoly::constant(Rational::from_integer(n))
}

fn p2_mirror() -> LaurentPolynomial {
    catalog::lookup("p2").expect("catalog entry").mirror
}

fn p2_graded(order: u32) -> PeriodSequence {
    catalog::lookup("p2").and_then(|e| e.graded_periods(order)).expect("P2 periods")
}

fn p2_periods() -> (bool, String) {
    let c = p2_mirror().classical_periods(15);
    let mut bad = Vec::new();
    for (d, got) in c.iter().enumerate() {
        let d = d as u32;
        let want = if d.is_multiple_of(3) {
            let m = d / 3;
            int(factorial(3 * m) / (factorial(m) * factorial(m) * factorial(m)))
        } else {
            QPoly::zero()
        };
        if *got != want {
            bad.push(format!("c_{d} = {got}, expected {want}"));
        }
    }
    let head: Vec<String> = (1..=5).map(|m| c[3 * m].to_string()).collect();
    (bad.is_empty(), if bad.is_empty() { format!("c_3m = {}", head.join(", ")) } else { bad.join("; ") })
}

fn valuation_deltas() -> (bool, String) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 2..=8 {
        for k in 1..n {
            let ctx = BoxContext::new(k, n).expect("0 < k < n");
            for i in 0..n {
                for j in 0..n {
                    checked += 1;
                    let want = (i == j) as i64 - (i == n - k) as i64;
                    let got = theta_valuation_delta(i, j, ctx);
                    if got != want {
                        bad.push(format!("(k={k},n={n},i={i},j={j}): {got} != {want}"));
                    }
                }
            }
        }
    }
    summarize(checked, bad)
}

fn reflection_symmetry() -> (bool, String) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 2..=6 {
        for k in 1..n {
            let ctx = BoxContext::new(k, n).expect("0 < k < n");
            let diagrams = ctx.diagrams();
            let reflected: Vec<_> = diagrams.iter().map(|d| d.sigma_reflect()).collect();
            for (mu, s_mu) in diagrams.iter().zip(&reflected) {
                for (lambda, s_lambda) in diagrams.iter().zip(&reflected) {
                    checked += 1;
                    if max_diag(mu, lambda) != max_diag(s_lambda, s_mu) {
                        bad.push(format!("(k={k},n={n}) mu={mu} lambda={lambda}"));
                    }
                }
            }
        }
    }
    summarize(checked, bad)
}

fn flow_soundness() -> (bool, String) {
    let mut bad = Vec::new();
    let mut relations = 0;
    let mut flows = 0;
    for (k, n) in [(2, 4), (2, 5)] {
        let ctx = BoxContext::new(k, n).expect("0 < k < n");
        let net = build_rectangles_network(ctx);
        match check_short_plucker_relations(&net) {
            Ok((failures, count)) => {
                relations += count;
                bad.extend(failures.iter().map(|f| format!("Gr({k},{n}) relation {:?} {:?}", f.common, f.indices)));
            }
            Err(e) => bad.push(format!("Gr({k},{n}): {e}")),
        }
        for lambda in ctx.diagrams() {
            flows += 1;
            let f = net.flow_polynomial(&lambda);
            if lambda.is_empty() && f != f.unit_like() {
                bad.push(format!("Gr({k},{n}) flow of the empty diagram is {f}"));
            }
            if f.terms().any(|(_, c)| !c.is_one()) {
                bad.push(format!("Gr({k},{n}) flow of {lambda} has a coefficient other than 1"));
            }
            if net.path_matrix_minor(&lambda) != f {
                bad.push(format!("Gr({k},{n}) flow of {lambda} disagrees with the path-matrix minor"));
            }
        }
    }
    let ok = bad.is_empty();
    (ok, if ok { format!("{relations} relations, {flows} flow polynomials") } else { bad.join("; ") })
}

fn valuation_realization() -> (bool, String) {
    let mut bad = Vec::new();
    let mut rows = 0;
    for (k, n) in [(2, 4), (2, 5), (3, 5)] {
        let net = build_rectangles_network(BoxContext::new(k, n).expect("0 < k < n"));
        match verify_valuations(&net) {
            Ok(report) => {
                rows += report.rows.len() + report.pairings.len();
                for r in report.row_mismatches() {
                    bad.push(format!("Gr({k},{n}) lambda={:?}: got {:?}, expected {:?}", r.lambda, r.got, r.expected));
                }
                for p in report.pairing_mismatches() {
                    bad.push(format!("Gr({k},{n}) theta {} on {}: {} != {}", p.i, p.j, p.got, p.expected));
                }
            }
            Err(e) => bad.push(format!("Gr({k},{n}): {e}")),
        }
    }
    summarize(rows, bad)
}

fn gr24_polytope() -> (bool, String) {
    let net = build_rectangles_network(BoxContext::new(2, 4).expect("valid"));
    let p = match nobody_polytope(&net) {
        Ok(p) => p,
        Err(e) => return (false, e.to_string()),
    };
    let flags = p.geometry_flags();
    let mut bad = Vec::new();
    if !flags.all() {
        bad.push(format!("{flags:?}"));
    }
    let mut counts = Vec::new();
    for r in 1..=2usize {
        let want = schur_dimension(&[4 * r, 4 * r], 4).expect("two rows");
        match p.lattice_point_count(r as u32) {
            Ok(got) => {
                counts.push(got.to_string());
                if BigUint::from(got) != want {
                    bad.push(format!("r={r}: {got} lattice points, hook-content gives {want}"));
                }
            }
            Err(e) => bad.push(e.to_string()),
        }
    }
    let ok = bad.is_empty();
    (ok, if ok { format!("counts {}, flags all true", counts.join(", ")) } else { bad.join("; ") })
}

fn gr24_periods() -> (bool, String) {
    let net = build_rectangles_network(BoxContext::new(2, 4).expect("valid"));
    let c = match grass_periods(&net, 12) {
        Ok(c) => c,
        Err(e) => return (false, e.to_string()),
    };
    let mut bad = Vec::new();
    for (d, cd) in c.iter().enumerate() {
        let d = d as u32;
        if !d.is_multiple_of(4) {
            if !cd.is_zero() {
                bad.push(format!("c_{d} = {cd} off the grading"));
            }
            continue;
        }
        let concentrated = cd.terms().all(|(p, _)| p == d / 4);
        if !concentrated || !cd.is_nonnegative_integral() || cd.is_zero() {
            bad.push(format!("c_{d} = {cd}"));
        }
        // Gr(2,4) is the quadric 4-fold: c_4m = (4m)! (2m)! / (m!)^6
        let m = d / 4;
        let want = factorial(4 * m) * factorial(2 * m) / factorial(m).pow(6);
        if *cd != QPoly::monomial(Rational::from_integer(want.clone()), m) {
            bad.push(format!("c_{d} = {cd}, quadric formula gives {want}q^{m}"));
        }
    }
    let ok = bad.is_empty();
    let head: Vec<String> = c.iter().step_by(4).map(|x| x.to_string()).collect();
    (ok, if ok { format!("c_4m = {}", head.join(", ")) } else { bad.join("; ") })
}

fn frobenius_round_trip() -> (bool, String) {
    let periods = p2_graded(12);
    let n1 = match reconstruct_n1(&periods) {
        Ok(n) => n,
        Err(e) => return (false, e.to_string()),
    };
    let mut bad = Vec::new();
    match periods_from_n1(&n1, 12) {
        Ok(back) if back == periods.coeffs() => {}
        Ok(_) => bad.push("reconstructed N_1 does not reproduce the periods".to_string()),
        Err(e) => bad.push(e.to_string()),
    }
    if !n1.tail_coeff(1).map(|a| a.is_zero()).unwrap_or(false) {
        bad.push("a_1 != 0".into());
    }
    if n1.tail_coeff(2).ok() != Some("2q".parse().expect("literal")) {
        bad.push("a_2 != 2q".into());
    }
    for i in 1..12 {
        if i % 3 != 2 && !n1.two_point(i).map(|v| v.is_zero()).unwrap_or(false) {
            bad.push(format!("N_1,{i} != 0"));
        }
    }
    let ok = bad.is_empty();
    (ok, if ok { "order 12 reproduced, a_2 = 2q".into() } else { bad.join("; ") })
}

fn two_routes() -> (bool, String) {
    let periods = p2_graded(12);
    let result = build_series(&periods, 6).and_then(|s| structure_table(&s, 6).map(|t| (s, t)));
    let (series, table) = match result {
        Ok(x) => x,
        Err(e) => return (false, e.to_string()),
    };
    let mut checked = 0;
    let mut bad = Vec::new();
    for p in 0..=6u32 {
        for q in 0..=6 - p {
            checked += 1;
            match residue_product(&[&series[p as usize], &series[q as usize]]) {
                Ok(v) if v == table.entry(p, q, 0) => {}
                Ok(v) => bad.push(format!("(p={p},q={q}): {v} != {}", table.entry(p, q, 0))),
                Err(e) => bad.push(format!("(p={p},q={q}): {e}")),
            }
        }
    }
    summarize(checked, bad)
}

fn associativity() -> (bool, String) {
    let trivial = PeriodSequence::new(
        std::iter::once(QPoly::one()).chain(std::iter::repeat_n(QPoly::zero(), 12)).collect(),
        None,
    )
    .expect("c_0 = 1");
    let tables = build_series(&trivial, 6)
        .and_then(|s| structure_table(&s, 6))
        .and_then(|t| build_series(&p2_graded(12), 4).and_then(|s| structure_table(&s, 4)).map(|p| (t, p)));
    let (trivial_table, p2_table) = match tables {
        Ok(x) => x,
        Err(e) => return (false, e.to_string()),
    };
    let v_trivial = associativity_check(&trivial_table, 6, None).len();
    let v_p2 = associativity_check(&p2_table, 4, Some(2)).len();
    let mut corrupted = p2_table.clone();
    corrupted.set(1, 2, 1, &corrupted.entry(1, 2, 1) + &QPoly::one());
    let v_bad = associativity_check(&corrupted, 4, Some(2)).len();
    let ok = v_trivial == 0 && v_p2 == 0 && v_bad > 0;
    (ok, format!("violations: trivial {v_trivial}, P2 {v_p2}, corrupted {v_bad}"))
}

fn summarize(checked: usize, bad: Vec<String>) -> (bool, String) {
    if bad.is_empty() {
        (true, format!("{checked} cases"))
    } else {
        let shown: Vec<_> = bad.iter().take(5).cloned().collect();
        (false, format!("{} of {checked} cases fail: {}", bad.len(), shown.join("; ")))
    }
}
