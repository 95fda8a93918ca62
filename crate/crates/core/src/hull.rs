//! Exact convex hulls of small point sets (affine dimension ≤ 4).
//!
//! Facets are found by brute force: every affinely independent d-subset spans
//! a hyperplane, which supports a facet iff no two points lie strictly on
//! opposite sides of it. Lower-dimensional faces are obtained by
//! closing the facet point-sets under intersection. The main client is the
//! polytope `Q_n`, the hull of the first-family boundary points lying in one
//! face (all distinct permutations of the within-face coordinates of `m_0`).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exactla::{dot, kernel_basis, proportional, rat, Rat, RatMatrix};
use crate::families::{m_point, p_point};
use crate::finder::combinations;

/// Largest affine dimension handled by [`hull_report`].
pub const MAX_HULL_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HullError {
    #[error("affine dimension {0} exceeds the supported maximum of 4")]
    DimensionTooHigh(usize),
    #[error("degenerate point set: no points")]
    Degenerate,
    #[error("points have different lengths ({expected} vs {found})")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Distinct points of a common ambient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Vec<Rat>>,
}

impl PointSet {
    /// Duplicate points are dropped (first occurrence kept).
    pub fn new(points: Vec<Vec<Rat>>) -> Result<Self, HullError> {
        let len = points.first().map_or(0, Vec::len);
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(points.len());
        for p in points {
            if p.len() != len {
                return Err(HullError::DimensionMismatch {
                    expected: len,
                    found: p.len(),
                });
            }
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
        Ok(Self { points: out })
    }

    pub fn from_ints(points: &[Vec<i64>]) -> Result<Self, HullError> {
        Self::new(
            points
                .iter()
                .map(|p| p.iter().copied().map(rat).collect())
                .collect(),
        )
    }

    /// All distinct permutations of a multiset, in lexicographic order.
    pub fn permutations_of(values: &[i64]) -> Self {
        let mut current: Vec<i64> = values.to_vec();
        current.sort_unstable();
        let mut out = Vec::new();
        loop {
            out.push(current.iter().copied().map(rat).collect());
            let len = current.len();
            let Some(i) = (1..len).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..len)
                .rev()
                .find(|&j| current[j] > current[i - 1])
                .unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        Self { points: out }
    }

    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    /// Apply the same coordinate permutation to every point
    /// (`new[sigma[i]] = old[i]`).
    pub fn permute_coordinates(&self, sigma: &[usize]) -> PointSet {
        PointSet {
            points: self
                .points
                .iter()
                .map(|p| {
                    let mut q = vec![Rat::zero(); p.len()];
                    for (i, x) in p.iter().enumerate() {
                        q[sigma[i]] = x.clone();
                    }
                    q
                })
                .collect(),
        }
    }

    pub fn scaled(&self, c: &Rat) -> PointSet {
        PointSet {
            points: self
                .points
                .iter()
                .map(|p| p.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    pub fn affine_dim(&self) -> usize {
        affine_rank(&self.points, &(0..self.points.len()).collect::<Vec<_>>())
    }
}

fn squared_distance(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .fold(Rat::zero(), |acc, (x, y)| acc + (x - y) * (x - y))
}

/// Affine dimension of the points with the given indices.
fn affine_rank(points: &[Vec<Rat>], idx: &[usize]) -> usize {
    if idx.len() <= 1 {
        return 0;
    }
    let origin = &points[idx[0]];
    let rows: Vec<Vec<Rat>> = idx[1..]
        .iter()
        .map(|&i| points[i].iter().zip(origin).map(|(a, b)| a - b).collect())
        .collect();
    RatMatrix::from_rows(rows).expect("equal lengths").rank()
}

/// Within-face coordinates of the first-family points: all distinct
/// permutations of the last n coordinates of `m_0`.
pub fn qn_points(n: usize) -> PointSet {
    PointSet::permutations_of(&face_tail(&m_point(n, 0)))
}

/// The second-family points `p_1, …, p_n` on face 0, coordinate 0 dropped.
pub fn second_family_face_points(n: usize) -> PointSet {
    let pts: Vec<Vec<i64>> = (1..=n).map(|i| face_tail(&p_point(n, i))).collect();
    PointSet::from_ints(&pts).expect("equal lengths")
}

/// Closure of [`second_family_face_points`] under the permutations of the
/// labels `1..n` (the stabilizer of face 0).
pub fn second_family_face_closure(n: usize) -> PointSet {
    PointSet::permutations_of(&face_tail(&p_point(n, 1)))
}

fn face_tail(p: &crate::simplex::BaryPoint) -> Vec<i64> {
    p.coords()[1..]
        .iter()
        .map(|c| c.to_i64().expect("small coordinates"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullReport {
    pub points: Vec<Vec<Rat>>,
    pub affine_dim: usize,
    /// Face counts by dimension: vertices, edges, …, facets.
    pub f_vector: Vec<usize>,
    /// Indices of the points that are hull vertices.
    pub vertices: Vec<usize>,
    /// Vertex-index sets of the facets, sorted lexicographically.
    pub facets: Vec<Vec<usize>>,
    /// Outward normal of each facet, in the chart coordinates.
    pub facet_normals: Vec<Vec<Rat>>,
    /// Offsets: facet `k` is `{y : normal·y = offset}` with all points `≤`.
    pub facet_offsets: Vec<Rat>,
    /// Vertex-index sets of all faces, grouped by dimension.
    pub faces_by_dim: Vec<Vec<Vec<usize>>>,
    /// Squared length of every edge, sorted.
    pub squared_edge_lengths: Vec<Rat>,
    /// Ambient coordinates used as the affine chart.
    pub chart: Vec<usize>,
}

impl HullReport {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges_equal(&self) -> bool {
        self.squared_edge_lengths.windows(2).all(|w| w[0] == w[1])
    }

    /// Every vertex sees the same multiset of squared distances to the other
    /// vertices.
    pub fn distance_transitive(&self) -> bool {
        let profile = |v: usize| {
            let mut d: Vec<Rat> = self
                .vertices
                .iter()
                .filter(|&&w| w != v)
                .map(|&w| squared_distance(&self.points[v], &self.points[w]))
                .collect();
            d.sort();
            d
        };
        let Some(&first) = self.vertices.first() else {
            return true;
        };
        let reference = profile(first);
        self.vertices.iter().all(|&v| profile(v) == reference)
    }

    /// Equal edges and vertex-transitive distance profiles.
    pub fn is_regular(&self) -> bool {
        self.edges_equal() && self.distance_transitive()
    }

    /// Number of vertices of each facet, in facet order.
    pub fn facet_sizes(&self) -> Vec<usize> {
        self.facets.iter().map(Vec::len).collect()
    }

    /// `V − E + F` for a 3-dimensional hull.
    pub fn euler_characteristic(&self) -> Option<i64> {
        (self.affine_dim == 3)
            .then(|| self.f_vector[0] as i64 - self.f_vector[1] as i64 + self.f_vector[2] as i64)
    }

    fn chart_point(&self, i: usize) -> Vec<Rat> {
        self.chart
            .iter()
            .map(|&c| self.points[i][c].clone())
            .collect()
    }

    /// Every facet hyperplane has all points weakly on its inner side and
    /// passes through exactly the facet's points.
    pub fn facets_are_supporting(&self) -> bool {
        self.facet_normals
            .iter()
            .zip(&self.facet_offsets)
            .zip(&self.facets)
            .all(|((a, b), verts)| {
                (0..self.points.len()).all(|i| {
                    let v = dot(a, &self.chart_point(i)) - b;
                    !v.is_positive() && (v.is_zero() || !verts.contains(&i))
                })
            })
    }
}

/// Convex hull of `ps` by exhaustive facet enumeration.
pub fn hull_report(ps: &PointSet) -> Result<HullReport, HullError> {
    if ps.is_empty() {
        return Err(HullError::Degenerate);
    }
    let points = ps.points().to_vec();
    let origin = &points[0];
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(origin).map(|(a, b)| a - b).collect())
        .collect();
    let (dim, chart) = if diffs.is_empty() {
        (0, Vec::new())
    } else {
        let (_, pivots) = RatMatrix::from_rows(diffs).expect("equal lengths").rref();
        (pivots.len(), pivots)
    };
    if dim > MAX_HULL_DIM {
        return Err(HullError::DimensionTooHigh(dim));
    }
    if dim == 0 {
        return Ok(HullReport {
            points,
            affine_dim: 0,
            f_vector: vec![1],
            vertices: vec![0],
            facets: Vec::new(),
            facet_normals: Vec::new(),
            facet_offsets: Vec::new(),
            faces_by_dim: vec![vec![vec![0]]],
            squared_edge_lengths: Vec::new(),
            chart,
        });
    }

    let charted: Vec<Vec<Rat>> = points
        .iter()
        .map(|p| chart.iter().map(|&c| p[c].clone()).collect())
        .collect();

    let supports: BTreeMap<Hyperplane, Vec<usize>> = combinations(charted.len(), dim)
        .into_par_iter()
        .filter_map(|subset| supporting_hyperplane(&charted, &subset))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();

    let facet_sets: Vec<Vec<usize>> = supports.values().cloned().collect();
    let faces = close_under_intersection(&facet_sets);

    let mut faces_by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim];
    for face in &faces {
        let k = affine_rank(&charted, face);
        if k < dim {
            faces_by_dim[k].push(face.clone());
        }
    }
    let vertices: Vec<usize> = {
        let mut v: Vec<usize> = faces_by_dim[0].iter().map(|f| f[0]).collect();
        v.sort_unstable();
        v
    };
    let vertex_set: BTreeSet<usize> = vertices.iter().copied().collect();
    for level in &mut faces_by_dim {
        for face in level.iter_mut() {
            face.retain(|i| vertex_set.contains(i));
        }
        level.sort();
    }
    let f_vector = faces_by_dim.iter().map(Vec::len).collect();

    // Facets in lexicographic order of their vertex sets, normals alongside.
    let mut facet_rows: Vec<(Vec<usize>, Vec<Rat>, Rat)> = supports
        .into_iter()
        .map(|((a, b), pts)| {
            let verts = pts.into_iter().filter(|i| vertex_set.contains(i)).collect();
            (verts, a, b)
        })
        .collect();
    facet_rows.sort();
    let mut facets = Vec::with_capacity(facet_rows.len());
    let mut facet_normals = Vec::with_capacity(facet_rows.len());
    let mut facet_offsets = Vec::with_capacity(facet_rows.len());
    for (v, a, b) in facet_rows {
        facets.push(v);
        facet_normals.push(a);
        facet_offsets.push(b);
    }

    let mut squared_edge_lengths: Vec<Rat> = if dim >= 2 {
        faces_by_dim[1]
            .iter()
            .map(|e| squared_distance(&points[e[0]], &points[e[1]]))
            .collect()
    } else {
        // a segment: its only edge is the hull itself
        vec![squared_distance(&points[vertices[0]], &points[vertices[1]])]
    };
    squared_edge_lengths.sort();

    Ok(HullReport {
        points,
        affine_dim: dim,
        f_vector,
        vertices,
        facets,
        facet_normals,
        facet_offsets,
        faces_by_dim,
        squared_edge_lengths,
        chart,
    })
}

/// `(normal, offset)` in chart coordinates.
type Hyperplane = (Vec<Rat>, Rat);

/// Hyperplane through the chart points `subset`, if they are affinely
/// independent and every point lies weakly on one side. Returned normalized:
/// all points satisfy `a·y ≤ b`, the first nonzero entry of `a` is ±1.
fn supporting_hyperplane(
    charted: &[Vec<Rat>],
    subset: &[usize],
) -> Option<(Hyperplane, Vec<usize>)> {
    let base = &charted[subset[0]];
    let rows: Vec<Vec<Rat>> = subset[1..]
        .iter()
        .map(|&i| charted[i].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let dim = base.len();
    let matrix = if rows.is_empty() {
        RatMatrix::zeros(0, dim)
    } else {
        RatMatrix::from_rows(rows).expect("equal lengths")
    };
    let kernel = kernel_basis(&matrix);
    if kernel.len() != 1 {
        return None;
    }
    let mut a = kernel.into_iter().next().unwrap();
    let mut b = dot(&a, base);
    let mut above = false;
    let mut below = false;
    let mut on = Vec::new();
    for (i, p) in charted.iter().enumerate() {
        let v = dot(&a, p) - &b;
        if v.is_positive() {
            above = true;
        } else if v.is_negative() {
            below = true;
        } else {
            on.push(i);
        }
        if above && below {
            return None;
        }
    }
    if above {
        a = a.iter().map(|x| -x).collect();
        b = -b;
    }
    // kernel vectors lead with 1, so a leads with ±1 already
    Some(((a, b), on))
}

fn close_under_intersection(facets: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let mut faces: BTreeSet<Vec<usize>> = facets.iter().cloned().collect();
    let mut queue: VecDeque<Vec<usize>> = facets.iter().cloned().collect();
    while let Some(face) = queue.pop_front() {
        for facet in facets {
            let meet: Vec<usize> = face
                .iter()
                .filter(|i| facet.binary_search(i).is_ok())
                .copied()
                .collect();
            if !meet.is_empty() && faces.insert(meet.clone()) {
                queue.push_back(meet);
            }
        }
    }
    faces
}

/// Pairs of facets (indices into `report.facets`) with proportional normals.
pub fn parallel_facet_pairs(report: &HullReport) -> Vec<(usize, usize)> {
    let normals = &report.facet_normals;
    let mut out = Vec::new();
    for i in 0..normals.len() {
        for j in i + 1..normals.len() {
            if proportional(&normals[i], &normals[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Similarity {
    /// `σ` with `|b_π(i) − b_π(j)|² = σ·|a_i − a_j|²`.
    pub ratio: Rat,
    /// `π`: index in `b` matched to each index in `a`.
    pub bijection: Vec<usize>,
}

/// Exact similarity test: a positive `σ` and a bijection matching all squared
/// pairwise distances, confirmed on the centered Gram matrices.
pub fn similarity(a: &PointSet, b: &PointSet) -> Option<Similarity> {
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    if n <= 1 {
        return Some(Similarity {
            ratio: rat(1),
            bijection: (0..n).collect(),
        });
    }
    let da = distance_matrix(a.points());
    let db = distance_matrix(b.points());
    let max_a = da.iter().flatten().max().cloned().unwrap_or_else(Rat::zero);
    let max_b = db.iter().flatten().max().cloned().unwrap_or_else(Rat::zero);
    if max_a.is_zero() || max_b.is_zero() {
        return None;
    }
    let ratio = &max_b / &max_a;

    let sorted_rows = |d: &[Vec<Rat>], scale: &Rat| -> Vec<Vec<Rat>> {
        d.iter()
            .map(|row| {
                let mut r: Vec<Rat> = row.iter().map(|x| x * scale).collect();
                r.sort();
                r
            })
            .collect()
    };
    let rows_a = sorted_rows(&da, &ratio);
    let rows_b = sorted_rows(&db, &rat(1));
    let mut all_a: Vec<&Vec<Rat>> = rows_a.iter().collect();
    let mut all_b: Vec<&Vec<Rat>> = rows_b.iter().collect();
    all_a.sort();
    all_b.sort();
    if all_a != all_b {
        return None;
    }

    let mut assignment = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !extend_match(
        0,
        &da,
        &db,
        &ratio,
        &rows_a,
        &rows_b,
        &mut assignment,
        &mut used,
    ) {
        return None;
    }
    let ga = centered_gram(a.points());
    let gb = centered_gram(b.points());
    for i in 0..n {
        for j in 0..n {
            if gb[assignment[i]][assignment[j]] != &ga[i][j] * &ratio {
                return None;
            }
        }
    }
    Some(Similarity {
        ratio,
        bijection: assignment,
    })
}

pub fn similarity_check(a: &PointSet, b: &PointSet) -> bool {
    similarity(a, b).is_some()
}

#[allow(clippy::too_many_arguments)]
fn extend_match(
    i: usize,
    da: &[Vec<Rat>],
    db: &[Vec<Rat>],
    ratio: &Rat,
    rows_a: &[Vec<Rat>],
    rows_b: &[Vec<Rat>],
    assignment: &mut [usize],
    used: &mut [bool],
) -> bool {
    if i == da.len() {
        return true;
    }
    for cand in 0..db.len() {
        if used[cand] || rows_a[i] != rows_b[cand] {
            continue;
        }
        let consistent = (0..i).all(|k| db[assignment[k]][cand] == &da[k][i] * ratio);
        if !consistent {
            continue;
        }
        assignment[i] = cand;
        used[cand] = true;
        if extend_match(i + 1, da, db, ratio, rows_a, rows_b, assignment, used) {
            return true;
        }
        used[cand] = false;
    }
    assignment[i] = usize::MAX;
    false
}

fn distance_matrix(points: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    points
        .iter()
        .map(|p| points.iter().map(|q| squared_distance(p, q)).collect())
        .collect()
}

fn centered_gram(points: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = rat(points.len() as i64);
    let dim = points[0].len();
    let centroid: Vec<Rat> = (0..dim)
        .map(|k| points.iter().fold(Rat::zero(), |acc, p| acc + &p[k]) / &n)
        .collect();
    let centered: Vec<Vec<Rat>> = points
        .iter()
        .map(|p| p.iter().zip(&centroid).map(|(x, c)| x - c).collect())
        .collect();
    centered
        .iter()
        .map(|p| centered.iter().map(|q| dot(p, q)).collect())
        .collect()
}

/// Cyclic vertex order of a 2-dimensional face, walking its edges.
fn polygon_order(face: &[usize], edges: &[Vec<usize>]) -> Vec<usize> {
    let inside: Vec<&Vec<usize>> = edges
        .iter()
        .filter(|e| e.iter().all(|v| face.contains(v)))
        .collect();
    let Some(&start) = face.first() else {
        return Vec::new();
    };
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut current = start;
    while order.len() < face.len() {
        let next = inside.iter().find_map(|e| {
            let other = if e[0] == current {
                e[1]
            } else if e[1] == current {
                e[0]
            } else {
                return None;
            };
            (other != prev && !order.contains(&other)).then_some(other)
        });
        let Some(next) = next else { break };
        order.push(next);
        prev = current;
        current = next;
    }
    order
}

/// OFF text for the hull: a counts line `V F E`, one line per vertex and one
/// per 2-dimensional face (cyclically ordered vertex indices). Coordinates
/// are taken in an orthonormal frame of the affine hull, as decimals; a
/// 4-dimensional hull is written with a `4OFF` header.
pub fn to_off(report: &HullReport) -> String {
    let dim = report.affine_dim;
    let frame_dim = dim.max(3);
    let header = if dim <= 3 { "OFF" } else { "4OFF" };
    let coords = orthonormal_coordinates(report);
    let index_of: BTreeMap<usize, usize> = report
        .vertices
        .iter()
        .enumerate()
        .map(|(k, &v)| (v, k))
        .collect();
    let polygons: Vec<Vec<usize>> = if dim >= 2 {
        let edges = &report.faces_by_dim[1];
        let two_faces: Vec<Vec<usize>> = if dim == 2 {
            vec![report.vertices.clone()]
        } else {
            report.faces_by_dim[2].clone()
        };
        two_faces.iter().map(|f| polygon_order(f, edges)).collect()
    } else {
        Vec::new()
    };
    let edge_count = if dim >= 2 {
        report.faces_by_dim[1].len()
    } else {
        report.squared_edge_lengths.len()
    };

    let mut out = String::new();
    writeln!(out, "{header}").unwrap();
    writeln!(
        out,
        "{} {} {}",
        report.vertices.len(),
        polygons.len(),
        edge_count
    )
    .unwrap();
    for &v in &report.vertices {
        let mut row: Vec<String> = coords[v].iter().map(|x| format_decimal(*x)).collect();
        while row.len() < frame_dim {
            row.push("0".to_string());
        }
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    for poly in polygons {
        let idx: Vec<String> = poly.iter().map(|v| index_of[v].to_string()).collect();
        writeln!(out, "{} {}", poly.len(), idx.join(" ")).unwrap();
    }
    out
}

/// Twelve significant digits, trailing zeros trimmed.
pub fn format_decimal(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let s = format!("{:.*e}", 11, x);
    let v: f64 = s.parse().unwrap_or(x);
    let plain = format!("{v}");
    if plain == "-0" {
        "0".to_string()
    } else {
        plain
    }
}

/// Coordinates of every point in an orthonormal frame of the affine hull,
/// anchored at the first point. The frame comes from exact Gram–Schmidt; only
/// the final division by the basis norms is done in floating point.
fn orthonormal_coordinates(report: &HullReport) -> Vec<Vec<f64>> {
    let origin = &report.points[0];
    let diffs: Vec<Vec<Rat>> = report
        .points
        .iter()
        .map(|p| p.iter().zip(origin).map(|(a, b)| a - b).collect())
        .collect();
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for d in &diffs {
        let mut v = d.clone();
        for b in &basis {
            let c = dot(&v, b) / dot(b, b);
            v = v.iter().zip(b).map(|(x, y)| x - &c * y).collect();
        }
        if v.iter().any(|x| !x.is_zero()) {
            basis.push(v);
        }
        if basis.len() == report.affine_dim {
            break;
        }
    }
    diffs
        .iter()
        .map(|d| {
            basis
                .iter()
                .map(|b| {
                    let num = dot(d, b).to_f64().unwrap_or(f64::NAN);
                    let norm = dot(b, b).to_f64().unwrap_or(f64::NAN).sqrt();
                    num / norm
                })
                .collect()
        })
        .collect()
}
