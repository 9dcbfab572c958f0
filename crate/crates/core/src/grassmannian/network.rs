//! Grid network for the rectangles seed.
//!
//! Vertices form an `(n-k) × k` grid, `(row, col)` with row 1 at the top and
//! col 1 at the west edge. Boundary label `s ∈ 1..=k` is a source entering
//! column `k+1-s` from the north; boundary label `k+r` is a sink leaving row `r`
//! to the west. Paths only step south or west.
//!
//! A grid face `(a, b)` sits between vertex rows `a, a+1` and vertex columns
//! `b, b+1` (row 0 and column 0 being the outer boundary strips). A path picks
//! up every face lying above it. Face weights are monomials in the
//! rectangle variables chosen so that each flow's minimal monomial records the
//! MaxDiag valuation of its Plücker coordinate.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::laurent::{ExponentVector, LaurentPolynomial, QPoly};
use crate::par;
use crate::young::{BoxContext, Direction, YoungDiagram};

#[derive(Clone, Debug)]
struct Path {
    mask: u128,
    weight: ExponentVector,
}

#[derive(Clone, Debug)]
pub struct GridNetwork {
    ctx: BoxContext,
    labels: Vec<YoungDiagram>,
    names: Vec<String>,
    face_weights: Vec<ExponentVector>,
    // paths[s-1][r-1]: every path from source s to the sink in row r
    paths: Vec<Vec<Vec<Path>>>,
}

impl GridNetwork {
    pub fn rectangles(ctx: BoxContext) -> Self {
        let (rows, cols) = (ctx.rows(), ctx.cols());
        assert!(rows * cols <= 128, "grid too large for the vertex mask");
        let mut labels = vec![YoungDiagram::empty(ctx)];
        for a in 1..=rows {
            for b in 1..=cols {
                if (a, b) != (rows, cols) {
                    labels.push(ctx.rectangle(a, b));
                }
            }
        }
        let names = labels.iter().map(var_name).collect();
        let index: BTreeMap<YoungDiagram, usize> = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let var = |a: usize, b: usize| index[&ctx.rectangle(a, b)];
        let mut face_weights = Vec::with_capacity(rows * cols);
        for a in 0..rows {
            for b in 0..cols {
                let mut w = vec![0i64; labels.len()];
                match (a, b) {
                    (0, 0) => w[var(0, 0)] += 1,
                    (0, b) => (1..=rows).for_each(|i| w[var(i, b)] += 1),
                    (a, 0) => (1..=cols).for_each(|j| w[var(a, j)] += 1),
                    (a, b) => w[var(a, b)] -= 1,
                }
                face_weights.push(w);
            }
        }
        let mut net = Self { ctx, labels, names, face_weights, paths: Vec::new() };
        net.paths = (1..=cols)
            .map(|s| (1..=rows).map(|r| net.enumerate_paths(s, r)).collect())
            .collect();
        net
    }

    pub fn context(&self) -> BoxContext {
        self.ctx
    }

    /// Rectangle labelling each face variable, in variable order. The full box
    /// labels the base face and carries no variable.
    pub fn face_labels(&self) -> &[YoungDiagram] {
        &self.labels
    }

    pub fn var_names(&self) -> &[String] {
        &self.names
    }

    /// Faces including the base face: `k(n-k) + 1`.
    pub fn num_faces(&self) -> usize {
        self.labels.len() + 1
    }

    pub fn num_vertices(&self) -> usize {
        self.ctx.rows() * self.ctx.cols()
    }

    /// Variable index of a face label, `None` for the base face.
    pub fn variable_of(&self, label: &YoungDiagram) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn vertex_bit(&self, row: usize, col: usize) -> u128 {
        1u128 << ((row - 1) * self.ctx.cols() + (col - 1))
    }

    fn enumerate_paths(&self, source: usize, sink_row: usize) -> Vec<Path> {
        let start_col = self.ctx.cols() + 1 - source;
        let mut out = Vec::new();
        let mut trail = Vec::new();
        self.walk(1, start_col, sink_row, &mut trail, &mut out);
        out
    }

    fn walk(&self, row: usize, col: usize, sink_row: usize, trail: &mut Vec<(usize, usize)>, out: &mut Vec<Path>) {
        trail.push((row, col));
        if (row, col) == (sink_row, 1) {
            out.push(self.finish_path(trail, sink_row));
        } else {
            if row < sink_row {
                self.walk(row + 1, col, sink_row, trail, out);
            }
            if col > 1 {
                self.walk(row, col - 1, sink_row, trail, out);
            }
        }
        trail.pop();
    }

    fn finish_path(&self, trail: &[(usize, usize)], sink_row: usize) -> Path {
        let cols = self.ctx.cols();
        let mask = trail.iter().fold(0u128, |m, &(r, c)| m | self.vertex_bit(r, c));
        // crossing[b]: row at which the path crosses between vertex columns b and b+1
        let mut crossing = vec![None; cols];
        crossing[0] = Some(sink_row);
        for w in trail.windows(2) {
            let ((r1, c1), (r2, c2)) = (w[0], w[1]);
            if r1 == r2 && c2 + 1 == c1 {
                crossing[c2] = Some(r1);
            }
        }
        let mut weight = vec![0i64; self.labels.len()];
        for (b, cross) in crossing.iter().enumerate() {
            let Some(cross) = *cross else { continue };
            for a in 0..cross {
                for (x, y) in weight.iter_mut().zip(&self.face_weights[a * cols + b]) {
                    *x += y;
                }
            }
        }
        Path { mask, weight }
    }

    /// Sources (descending) and sinks (ascending rows) for a west-step set.
    fn endpoints(&self, lambda: &YoungDiagram) -> (Vec<usize>, Vec<usize>) {
        let k = self.ctx.k();
        let west = lambda.to_steps(Direction::West).members;
        let sources: Vec<usize> = (1..=k).rev().filter(|s| !west.contains(s)).collect();
        let sinks: Vec<usize> = west.iter().filter(|&&t| t > k).map(|t| t - k).collect();
        (sources, sinks)
    }

    /// Sum over vertex-disjoint path families, each weighted by the faces above it.
    pub fn flow_polynomial(&self, lambda: &YoungDiagram) -> LaurentPolynomial {
        assert_eq!(lambda.context(), self.ctx, "diagram from another box");
        let (sources, sinks) = self.endpoints(lambda);
        let mut acc: BTreeMap<ExponentVector, i64> = BTreeMap::new();
        let mut weight = vec![0i64; self.labels.len()];
        self.families(&sources, &sinks, 0, 0, &mut weight, &mut acc);
        let terms = acc.into_iter().map(|(e, c)| (e, QPoly::from_int(c)));
        LaurentPolynomial::from_terms(&self.names, terms).expect("consistent rank")
    }

    fn families(
        &self,
        sources: &[usize],
        sinks: &[usize],
        depth: usize,
        used: u128,
        weight: &mut ExponentVector,
        acc: &mut BTreeMap<ExponentVector, i64>,
    ) {
        if depth == sources.len() {
            *acc.entry(weight.clone()).or_default() += 1;
            return;
        }
        for path in &self.paths[sources[depth] - 1][sinks[depth] - 1] {
            if path.mask & used != 0 {
                continue;
            }
            add_into(weight, &path.weight, 1);
            self.families(sources, sinks, depth + 1, used | path.mask, weight, acc);
            add_into(weight, &path.weight, -1);
        }
    }

    /// Number of non-intersecting families (the flow count).
    pub fn flow_count(&self, lambda: &YoungDiagram) -> u64 {
        let (sources, sinks) = self.endpoints(lambda);
        let mut acc = BTreeMap::new();
        let mut weight = vec![0i64; self.labels.len()];
        self.families(&sources, &sinks, 0, 0, &mut weight, &mut acc);
        acc.values().map(|c| *c as u64).sum()
    }

    /// Determinant of the path-weight matrix between the same endpoints.
    /// Independent of [`flow_polynomial`](Self::flow_polynomial), and equal to it by
    /// the Lindström–Gessel–Viennot lemma.
    pub fn path_matrix_minor(&self, lambda: &YoungDiagram) -> LaurentPolynomial {
        let (sources, sinks) = self.endpoints(lambda);
        let m = sources.len();
        let entry = |i: usize, j: usize| {
            let terms = self.paths[sources[i] - 1][sinks[j] - 1]
                .iter()
                .map(|p| (p.weight.clone(), QPoly::one()));
            LaurentPolynomial::from_terms(&self.names, terms).expect("consistent rank")
        };
        let matrix: Vec<Vec<LaurentPolynomial>> = (0..m).map(|i| (0..m).map(|j| entry(i, j)).collect()).collect();
        let perms: Vec<Vec<usize>> = (0..m).permutations(m).collect();
        let unit = LaurentPolynomial::one(&self.names).expect("names");
        let terms = par::map(&perms, |perm| {
            let inversions = (0..m).tuple_combinations().filter(|&(a, b)| perm[a] > perm[b]).count();
            let mut prod = unit.clone();
            for (i, &j) in perm.iter().enumerate() {
                prod = prod.multiply(&matrix[i][j]).expect("same vars");
            }
            if inversions % 2 == 1 {
                prod.scale(&QPoly::from_int(-1))
            } else {
                prod
            }
        });
        terms.iter().fold(LaurentPolynomial::zero(&self.names).expect("names"), |acc, t| acc.add(t).expect("same vars"))
    }
}

fn add_into(acc: &mut [i64], v: &[i64], sign: i64) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += sign * b;
    }
}

/// `r{a}x{b}` for the rectangle with `a` rows of length `b`; `r0x0` is the empty diagram.
pub fn var_name(rect: &YoungDiagram) -> String {
    let a = rect.rows().len();
    let b = rect.rows().first().copied().unwrap_or(0);
    format!("r{a}x{b}")
}
