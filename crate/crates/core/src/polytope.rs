//! Exact rational polytopes `{v : ⟨a, v⟩ ≥ b}`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{format_rational, parse_rational, Rational};
use crate::par;

/// `⟨normal, v⟩ ≥ offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfspaceSystem {
    dim: usize,
    facets: Vec<Facet>,
}

impl HalfspaceSystem {
    pub fn new(dim: usize, facets: Vec<Facet>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("dimension must be positive".into()));
        }
        for f in &facets {
            if f.normal.len() != dim {
                return Err(Error::Dimension(format!("normal {:?} in dimension {dim}", f.normal)));
            }
            if f.normal.iter().all(|x| *x == 0) {
                return Err(Error::Invalid("zero facet normal".into()));
            }
        }
        Ok(Self { dim, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, v) >= f.offset)
    }

    /// Every basic feasible solution, sorted and deduplicated.
    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        if self.facets.len() < self.dim {
            return Vec::new();
        }
        let subsets: Vec<Vec<usize>> = (0..self.facets.len()).combinations(self.dim).collect();
        let found = par::map(&subsets, |idx| {
            let rows: Vec<Vec<Rational>> = idx.iter().map(|&i| to_rational_row(&self.facets[i].normal)).collect();
            let rhs: Vec<Rational> = idx.iter().map(|&i| self.facets[i].offset.clone()).collect();
            solve_square(rows, rhs).filter(|v| self.contains(v))
        });
        let mut out: Vec<Vec<Rational>> = found.into_iter().flatten().collect();
        out.sort();
        out.dedup();
        out
    }

    /// Recession cone `{d : ⟨a, d⟩ ≥ 0}` is `{0}`.
    pub fn is_bounded(&self) -> bool {
        let normals: Vec<Vec<Rational>> = self.facets.iter().map(|f| to_rational_row(&f.normal)).collect();
        if rank(normals.clone()) < self.dim {
            return false;
        }
        if self.dim == 1 {
            let pos = self.facets.iter().any(|f| f.normal[0] > 0);
            let neg = self.facets.iter().any(|f| f.normal[0] < 0);
            return pos && neg;
        }
        // A pointed cone other than {0} has an extreme ray cut out by dim-1 independent facets.
        let subsets: Vec<Vec<usize>> = (0..normals.len()).combinations(self.dim - 1).collect();
        let rays = par::map(&subsets, |idx| {
            let rows: Vec<Vec<Rational>> = idx.iter().map(|&i| normals[i].clone()).collect();
            let Some(d) = kernel_line(rows, self.dim) else { return false };
            let neg: Vec<Rational> = d.iter().map(|x| -x).collect();
            [d, neg].iter().any(|dir| normals.iter().all(|a| !dot_r(a, dir).is_negative()))
        });
        !rays.into_iter().any(|r| r)
    }

    /// Some point satisfies every inequality strictly.
    pub fn has_interior(&self) -> bool {
        let rows: Vec<(Vec<Rational>, Rational)> = self
            .facets
            .iter()
            .map(|f| (to_rational_row(&f.normal), f.offset.clone()))
            .collect();
        strictly_feasible(rows, self.dim)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    halfspaces: HalfspaceSystem,
    vertices: Vec<Vec<Rational>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryFlags {
    pub bounded: bool,
    pub full_dimensional: bool,
    pub origin_interior: bool,
}

impl GeometryFlags {
    pub fn all(&self) -> bool {
        self.bounded && self.full_dimensional && self.origin_interior
    }
}

impl RationalPolytope {
    pub fn new(halfspaces: HalfspaceSystem) -> Self {
        let vertices = halfspaces.vertices();
        Self { halfspaces, vertices }
    }

    /// `{v : ⟨e, v⟩ ≥ -1}` for each exponent `e`.
    pub fn polar_from_support(exponents: &[Vec<i64>]) -> Result<Self> {
        let first = exponents.first().ok_or_else(|| Error::Invalid("empty support".into()))?;
        let dim = first.len();
        let mut normals: Vec<Vec<i64>> = exponents.to_vec();
        normals.sort();
        normals.dedup();
        let facets = normals
            .into_iter()
            .map(|normal| Facet { normal, offset: -Rational::one() })
            .collect();
        Ok(Self::new(HalfspaceSystem::new(dim, facets)?))
    }

    pub fn dim(&self) -> usize {
        self.halfspaces.dim
    }

    pub fn halfspaces(&self) -> &HalfspaceSystem {
        &self.halfspaces
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn geometry_flags(&self) -> GeometryFlags {
        let bounded = self.halfspaces.is_bounded();
        let full_dimensional = if bounded {
            !self.vertices.is_empty() && affine_rank(&self.vertices) == self.dim()
        } else {
            self.halfspaces.has_interior()
        };
        let origin_interior = self.halfspaces.facets.iter().all(|f| f.offset.is_negative());
        GeometryFlags { bounded, full_dimensional, origin_interior }
    }

    /// Integer points of the dilation `{v : ⟨a, v⟩ ≥ r·b}`.
    pub fn lattice_point_count(&self, r: u32) -> Result<u64> {
        if !self.halfspaces.is_bounded() {
            return Err(Error::Unbounded);
        }
        if self.vertices.is_empty() {
            return Ok(0);
        }
        let dim = self.dim();
        let scale = Rational::from_integer(r.into());
        let mut lo = vec![i64::MAX; dim];
        let mut hi = vec![i64::MIN; dim];
        for v in &self.vertices {
            for i in 0..dim {
                let x = &v[i] * &scale;
                lo[i] = lo[i].min(x.floor().to_integer().to_i64().expect("small"));
                hi[i] = hi[i].max(x.ceil().to_integer().to_i64().expect("small"));
            }
        }
        let normals: Vec<&[i64]> = self.halfspaces.facets.iter().map(|f| f.normal.as_slice()).collect();
        let thresholds: Vec<i64> = self
            .halfspaces
            .facets
            .iter()
            .map(|f| (&f.offset * &scale).ceil().to_integer().to_i64().expect("small"))
            .collect();
        let first = (lo[0]..=hi[0]).collect::<Vec<_>>();
        let counts = par::map(&first, |&x0| {
            let mut v = lo.clone();
            v[0] = x0;
            count_box(&normals, &thresholds, &lo, &hi, &mut v, 1)
        });
        Ok(counts.into_iter().sum())
    }
}

fn count_box(normals: &[&[i64]], thresholds: &[i64], lo: &[i64], hi: &[i64], v: &mut [i64], i: usize) -> u64 {
    if i == v.len() {
        let ok = normals
            .iter()
            .zip(thresholds)
            .all(|(a, t)| a.iter().zip(v.iter()).map(|(x, y)| x * y).sum::<i64>() >= *t);
        return ok as u64;
    }
    let mut total = 0;
    for x in lo[i]..=hi[i] {
        v[i] = x;
        total += count_box(normals, thresholds, lo, hi, v, i + 1);
    }
    total
}

fn to_rational_row(a: &[i64]) -> Vec<Rational> {
    a.iter().map(|x| Rational::from_integer((*x).into())).collect()
}

fn dot(a: &[i64], v: &[Rational]) -> Rational {
    a.iter()
        .zip(v)
        .fold(Rational::zero(), |acc, (x, y)| acc + y * Rational::from_integer((*x).into()))
}

fn dot_r(a: &[Rational], v: &[Rational]) -> Rational {
    a.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Row-reduces in place, returning pivot columns.
fn row_reduce(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = Rational::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &factor * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    row_reduce(&mut m, cols).len()
}

fn affine_rank(points: &[Vec<Rational>]) -> usize {
    let base = &points[0];
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() {
        0
    } else {
        rank(diffs)
    }
}

/// Unique solution of a square system, if the matrix is invertible.
fn solve_square(rows: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = rows.len();
    let mut aug: Vec<Vec<Rational>> = rows
        .into_iter()
        .zip(rhs)
        .map(|(mut r, b)| {
            r.push(b);
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// Spanning vector of the kernel when it is exactly one-dimensional.
fn kernel_line(mut rows: Vec<Vec<Rational>>, dim: usize) -> Option<Vec<Rational>> {
    let pivots = row_reduce(&mut rows, dim);
    if pivots.len() + 1 != dim {
        return None;
    }
    let free = (0..dim).find(|c| !pivots.contains(c))?;
    let mut d = vec![Rational::zero(); dim];
    d[free] = Rational::one();
    for (r, &c) in pivots.iter().enumerate() {
        d[c] = -rows[r][free].clone();
    }
    Some(d)
}

/// Fourier–Motzkin test for `⟨a, v⟩ > b` for every row.
fn strictly_feasible(mut rows: Vec<(Vec<Rational>, Rational)>, dim: usize) -> bool {
    for var in 0..dim {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for (a, b) in rows {
            match a[var].cmp(&Rational::zero()) {
                std::cmp::Ordering::Greater => pos.push((a, b)),
                std::cmp::Ordering::Less => neg.push((a, b)),
                std::cmp::Ordering::Equal => rest.push((a, b)),
            }
        }
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                let sp = Rational::one() / &ap[var];
                let sn = Rational::one() / -&an[var];
                let a: Vec<Rational> = ap.iter().zip(an).map(|(x, y)| x * &sp + y * &sn).collect();
                rest.push((a, bp * &sp + bn * &sn));
            }
        }
        rest.sort();
        rest.dedup();
        rows = rest;
    }
    rows.iter().all(|(_, b)| b.is_negative())
}

/// Polytope file: facets, vertices and optional lattice counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub dim: usize,
    pub facets: Vec<FacetRecord>,
    pub vertices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lattice_counts: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetRecord {
    pub normal: Vec<i64>,
    pub offset: String,
}

impl PolytopeFile {
    pub fn from_polytope(p: &RationalPolytope, counts: &[(u32, u64)]) -> Self {
        Self {
            dim: p.dim(),
            facets: p
                .halfspaces
                .facets
                .iter()
                .map(|f| FacetRecord { normal: f.normal.clone(), offset: format_rational(&f.offset) })
                .collect(),
            vertices: p.vertices.iter().map(|v| v.iter().map(format_rational).collect()).collect(),
            lattice_counts: counts.iter().map(|(r, c)| (r.to_string(), *c)).collect(),
        }
    }

    /// Rebuilds the polytope from its facets; stored vertices must agree.
    pub fn to_polytope(&self) -> Result<RationalPolytope> {
        let facets = self
            .facets
            .iter()
            .map(|f| Ok(Facet { normal: f.normal.clone(), offset: parse_rational(&f.offset)? }))
            .collect::<Result<Vec<_>>>()?;
        let p = RationalPolytope::new(HalfspaceSystem::new(self.dim, facets)?);
        let mut stored = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        stored.sort();
        if stored != p.vertices {
            return Err(Error::Invalid("stored vertices disagree with the facets".into()));
        }
        Ok(p)
    }
}

/// Number of degree-`d` monomials in `m` variables, `binomial(d + m - 1, m - 1)`.
pub fn monomial_count(d: u64, m: u64) -> u64 {
    let mut acc = num_bigint::BigUint::one();
    for i in 1..m {
        acc = acc * (d + i) / i;
    }
    acc.to_u64().expect("fits")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn pt(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|x| r(*x)).collect()
    }

    fn p2() -> RationalPolytope {
        RationalPolytope::polar_from_support(&[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap()
    }

    fn square() -> RationalPolytope {
        RationalPolytope::polar_from_support(&[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]).unwrap()
    }

    #[test]
    fn p2_triangle() {
        let p = p2();
        assert_eq!(p.vertices(), &[pt(&[-1, -1]), pt(&[-1, 2]), pt(&[2, -1])]);
        assert_eq!(p.lattice_point_count(1).unwrap(), 10);
        assert_eq!(p.lattice_point_count(0).unwrap(), 1);
        let flags = p.geometry_flags();
        assert!(flags.all(), "{flags:?}");
    }

    #[test]
    fn segment_and_square() {
        let seg = RationalPolytope::polar_from_support(&[vec![1], vec![-1]]).unwrap();
        assert_eq!(seg.vertices(), &[pt(&[-1]), pt(&[1])]);
        let sq = square();
        assert_eq!(sq.vertices().len(), 4);
        assert_eq!(sq.lattice_point_count(1).unwrap(), 9);
    }

    #[test]
    fn infeasible_has_no_vertices() {
        let sys = HalfspaceSystem::new(
            1,
            vec![Facet { normal: vec![1], offset: r(1) }, Facet { normal: vec![-1], offset: r(1) }],
        )
        .unwrap();
        assert!(sys.vertices().is_empty());
        assert!(!sys.has_interior());
    }

    #[test]
    fn flat_and_unbounded() {
        // -1 <= x <= 1 and 0 <= y <= 0
        let flat = RationalPolytope::new(
            HalfspaceSystem::new(
                2,
                vec![
                    Facet { normal: vec![1, 0], offset: r(-1) },
                    Facet { normal: vec![-1, 0], offset: r(-1) },
                    Facet { normal: vec![0, 1], offset: r(0) },
                    Facet { normal: vec![0, -1], offset: r(0) },
                ],
            )
            .unwrap(),
        );
        let flags = flat.geometry_flags();
        assert!(flags.bounded);
        assert!(!flags.full_dimensional);
        assert!(!flags.origin_interior);

        let half = RationalPolytope::new(
            HalfspaceSystem::new(2, vec![Facet { normal: vec![1, 0], offset: r(-1) }]).unwrap(),
        );
        let flags = half.geometry_flags();
        assert!(!flags.bounded);
        assert!(flags.full_dimensional);
        assert_eq!(half.lattice_point_count(1), Err(Error::Unbounded));

        // a cone with apex: x >= -1, y >= -1, rank 2 but unbounded
        let cone = RationalPolytope::polar_from_support(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(!cone.geometry_flags().bounded);
    }

    #[test]
    fn p2_counts_match_binomial() {
        let p = p2();
        for k in 0..=3u32 {
            assert_eq!(p.lattice_point_count(k).unwrap(), monomial_count(3 * k as u64, 3));
        }
    }

    #[test]
    fn polar_involution_on_p2() {
        let verts: Vec<Vec<i64>> = p2()
            .vertices()
            .iter()
            .map(|v| v.iter().map(|x| x.to_integer().to_i64().unwrap()).collect())
            .collect();
        let back = RationalPolytope::polar_from_support(&verts).unwrap();
        assert_eq!(back.vertices(), &[pt(&[-1, -1]), pt(&[0, 1]), pt(&[1, 0])]);
    }

    #[test]
    fn file_roundtrip() {
        let p = p2();
        let file = PolytopeFile::from_polytope(&p, &[(1, 10)]);
        let text = serde_json::to_string(&file).unwrap();
        let back: PolytopeFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_polytope().unwrap(), p);
    }
}
