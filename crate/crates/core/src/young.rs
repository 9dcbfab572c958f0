//! Young diagrams in an `(n-k) × k` box and their boundary-path encodings.
//!
//! The lower border of a diagram is traced from the north-east corner of the
//! box to the south-west corner in `n` unit steps, numbered `1..=n`. A diagram
//! is determined by which of those steps go west (`k` of them) or, equally,
//! which go south (`n-k` of them).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxContext {
    k: usize,
    n: usize,
}

impl BoxContext {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::Invalid(format!("need 0 < k < n, got k={k}, n={n}")));
        }
        Ok(Self { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rows, `n - k`.
    pub fn rows(&self) -> usize {
        self.n - self.k
    }

    /// Row length bound, `k`.
    pub fn cols(&self) -> usize {
        self.k
    }

    /// The `k × (n-k)` box.
    pub fn transpose(&self) -> Self {
        Self { k: self.n - self.k, n: self.n }
    }

    /// Every diagram in the box, in lexicographic order of west-step sets.
    pub fn diagrams(&self) -> Vec<YoungDiagram> {
        (1..=self.n)
            .combinations(self.k)
            .map(|west| {
                let steps = StepSet { direction: Direction::West, members: west.into_iter().collect(), ctx: *self };
                YoungDiagram::from_steps(&steps).expect("valid step set")
            })
            .collect()
    }

    /// The `a × b` rectangle (`a` rows of length `b`).
    pub fn rectangle(&self, a: usize, b: usize) -> YoungDiagram {
        let rows = if b == 0 { Vec::new() } else { vec![b; a] };
        YoungDiagram::new(rows, *self).expect("rectangle fits")
    }

    pub fn full_box(&self) -> YoungDiagram {
        self.rectangle(self.rows(), self.cols())
    }

    fn cyclic(&self, x: usize) -> usize {
        (x - 1) % self.n + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    rows: Vec<usize>,
    ctx: BoxContext,
}

impl YoungDiagram {
    /// Validates shape and box bounds; trailing zero rows are dropped.
    pub fn new(mut rows: Vec<usize>, ctx: BoxContext) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidDiagram(format!("rows {rows:?} are not weakly decreasing")));
        }
        if rows.len() > ctx.rows() {
            return Err(Error::InvalidDiagram(format!("{} rows exceed the box height {}", rows.len(), ctx.rows())));
        }
        if rows.first().is_some_and(|r| *r > ctx.cols()) {
            return Err(Error::InvalidDiagram(format!("row length {} exceeds the box width {}", rows[0], ctx.cols())));
        }
        Ok(Self { rows, ctx })
    }

    pub fn empty(ctx: BoxContext) -> Self {
        Self { rows: Vec::new(), ctx }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn context(&self) -> BoxContext {
        self.ctx
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Cells as 1-indexed `(row, column)`.
    pub fn cells(&self) -> BTreeSet<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| (i + 1, j)))
            .collect()
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        row >= 1 && self.rows.get(row - 1).is_some_and(|&len| col >= 1 && col <= len)
    }

    pub fn to_steps(&self, direction: Direction) -> StepSet {
        let mut west = BTreeSet::new();
        let mut t = 0;
        let mut col = self.ctx.cols();
        for r in 0..self.ctx.rows() {
            let len = self.rows.get(r).copied().unwrap_or(0);
            while col > len {
                t += 1;
                west.insert(t);
                col -= 1;
            }
            t += 1;
        }
        while col > 0 {
            t += 1;
            west.insert(t);
            col -= 1;
        }
        let members = match direction {
            Direction::West => west,
            Direction::South => (1..=self.ctx.n).filter(|s| !west.contains(s)).collect(),
        };
        StepSet { direction, members, ctx: self.ctx }
    }

    pub fn from_steps(steps: &StepSet) -> Result<Self> {
        let ctx = steps.ctx;
        let expected = match steps.direction {
            Direction::West => ctx.k,
            Direction::South => ctx.rows(),
        };
        if steps.members.len() != expected {
            return Err(Error::StepCardinality { expected, got: steps.members.len() });
        }
        if steps.members.iter().any(|&s| s == 0 || s > ctx.n) {
            return Err(Error::InvalidDiagram(format!("step positions must lie in 1..={}", ctx.n)));
        }
        let is_west = |t: usize| steps.members.contains(&t) == (steps.direction == Direction::West);
        let mut rows = Vec::new();
        let mut col = ctx.cols();
        for t in 1..=ctx.n {
            if is_west(t) {
                col -= 1;
            } else {
                rows.push(col);
            }
        }
        Self::new(rows, ctx)
    }

    /// Complement in the box, reflected across the antidiagonal; lives in the transposed box.
    pub fn sigma_reflect(&self) -> Self {
        let (r, c) = (self.ctx.rows(), self.ctx.cols());
        let target = self.ctx.transpose();
        let mut rows = vec![0; c];
        for i in 1..=r {
            for j in 1..=c {
                if !self.contains_cell(i, j) {
                    rows[c - j] += 1;
                    debug_assert!(r + 1 - i >= 1);
                }
            }
        }
        Self::new(rows, target).expect("reflection of a diagram is a diagram")
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            write!(f, "()")
        } else {
            write!(f, "({})", self.rows.iter().map(|r| r.to_string()).join(","))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    West,
    South,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepSet {
    pub direction: Direction,
    pub members: BTreeSet<usize>,
    pub ctx: BoxContext,
}

impl StepSet {
    pub fn new<I: IntoIterator<Item = usize>>(direction: Direction, members: I, ctx: BoxContext) -> Self {
        Self { direction, members: members.into_iter().collect(), ctx }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.iter().copied().collect()
    }
}

/// `μ_i`: west steps on the cyclic interval `[i+1, i+k]`.
pub fn boundary_rectangle(i: usize, ctx: BoxContext) -> YoungDiagram {
    let west = (i + 1..=i + ctx.k).map(|x| ctx.cyclic(x));
    YoungDiagram::from_steps(&StepSet::new(Direction::West, west, ctx)).expect("k distinct steps")
}

/// `μ_i^□`: west steps `[i+1, i+k-1] ∪ {i+k+1}`, cyclically.
pub fn boundary_rectangle_box(i: usize, ctx: BoxContext) -> YoungDiagram {
    let west = (i + 1..i + ctx.k).chain([i + ctx.k + 1]).map(|x| ctx.cyclic(x));
    YoungDiagram::from_steps(&StepSet::new(Direction::West, west, ctx)).expect("k distinct steps")
}

/// Largest number of cells of `μ ∖ λ` on one diagonal. Both diagrams are
/// top-left justified and `λ ⊆ μ` is not required.
pub fn max_diag(mu: &YoungDiagram, lambda: &YoungDiagram) -> usize {
    let mut per_diag: BTreeMap<isize, usize> = BTreeMap::new();
    for (i, j) in mu.cells() {
        if !lambda.contains_cell(i, j) {
            *per_diag.entry(i as isize - j as isize).or_default() += 1;
        }
    }
    per_diag.values().copied().max().unwrap_or(0)
}

/// `(max_diag(λ, μ))_{μ ∈ seed}`.
pub fn valuation_vector(lambda: &YoungDiagram, seed: &[YoungDiagram]) -> Vec<i64> {
    seed.iter().map(|mu| max_diag(lambda, mu) as i64).collect()
}

/// `max_diag(μ_i^□, μ_j) - max_diag(μ_i, μ_j)`.
pub fn theta_valuation_delta(i: usize, j: usize, ctx: BoxContext) -> i64 {
    let mu_j = boundary_rectangle(j, ctx);
    max_diag(&boundary_rectangle_box(i, ctx), &mu_j) as i64 - max_diag(&boundary_rectangle(i, ctx), &mu_j) as i64
}

/// `s_λ(1, …, 1)` with `n` ones, by the hook-content formula.
pub fn schur_dimension(partition: &[usize], n: usize) -> Result<BigUint> {
    let rows: Vec<usize> = partition.iter().copied().filter(|r| *r > 0).collect();
    if rows.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidDiagram(format!("{partition:?} is not a partition")));
    }
    if rows.len() > n {
        return Err(Error::TooManyRows { rows: rows.len(), n });
    }
    let col_len = |j: usize| rows.iter().filter(|&&r| r >= j).count();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (i, &len) in rows.iter().enumerate() {
        let i = i + 1;
        for j in 1..=len {
            num *= n + j - i;
            den *= (len - j) + (col_len(j) - i) + 1;
        }
    }
    Ok(num / den)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramFile {
    pub k: usize,
    pub n: usize,
    pub rows: Vec<usize>,
}

impl DiagramFile {
    pub fn from_diagram(d: &YoungDiagram) -> Self {
        Self { k: d.ctx.k, n: d.ctx.n, rows: d.rows.clone() }
    }

    pub fn to_diagram(&self) -> Result<YoungDiagram> {
        YoungDiagram::new(self.rows.clone(), BoxContext::new(self.k, self.n)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepFile {
    pub direction: Direction,
    pub steps: Vec<usize>,
}

impl StepFile {
    pub fn from_steps(s: &StepSet) -> Self {
        Self { direction: s.direction, steps: s.to_vec() }
    }
}
