//! Closed-form boundary points of the two periodic orbit families in Δⁿ and
//! exact verification of the mirror-law identities they satisfy.
//!
//! * First family, word `01…n`: boundary points `m_0, …, m_n`, where
//!   `m_0` has coordinates `−i² + (n+1)i` and `m_i` is its i-fold cyclic right
//!   shift.
//! * Second family, word `0102…0n`: boundary points `p_1, r_1, p_2, r_2, …`,
//!   where `p_i` lies on face 0 and `r_i` on face `i`; `p_i`/`r_i` are
//!   obtained by cyclically shifting the last n coordinates of `p_1`/`r_1`.
//!
//! An orbit visiting `x_{k−1}, x_k, x_{k+1}` obeys the mirror law at `x_k`
//! (face `f`) iff the mirror image of `x_{k−1}` through `f` and `x_{k+1}` have
//! `x_k` as their Cartesian midpoint. The check rescales the two
//! barycentric representatives to a common coordinate sum before averaging.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactla::Rat;
use crate::simplex::{face_interior_test, BaryPoint, FaceLabel, RegularSimplex, SimplexError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// Word `01…n`, period n+1.
    First,
    /// Word `0102…0n`, period 2n.
    Second,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::First => write!(f, "first"),
            FamilyKind::Second => write!(f, "second"),
        }
    }
}

/// Boundary points of one of the two families, in orbit order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitFamily {
    pub kind: FamilyKind,
    pub n: usize,
    pub points: Vec<BaryPoint>,
}

impl OrbitFamily {
    pub fn first(n: usize) -> Result<Self, SimplexError> {
        RegularSimplex::new(n)?;
        Ok(Self {
            kind: FamilyKind::First,
            n,
            points: (0..=n).map(|i| m_point(n, i)).collect(),
        })
    }

    /// Points ordered `p_1, r_1, p_2, r_2, …, p_n, r_n`.
    pub fn second(n: usize) -> Result<Self, SimplexError> {
        RegularSimplex::new(n)?;
        let points = (1..=n)
            .flat_map(|i| [p_point(n, i), r_point(n, i)])
            .collect();
        Ok(Self {
            kind: FamilyKind::Second,
            n,
            points,
        })
    }

    pub fn new(kind: FamilyKind, n: usize) -> Result<Self, SimplexError> {
        match kind {
            FamilyKind::First => Self::first(n),
            FamilyKind::Second => Self::second(n),
        }
    }

    /// Face label hit at each boundary point.
    pub fn faces(&self) -> Vec<FaceLabel> {
        family_word(self.kind, self.n)
    }
}

/// The coding word of a family: `01…n` or `0102…0n`.
pub fn family_word(kind: FamilyKind, n: usize) -> Vec<FaceLabel> {
    match kind {
        FamilyKind::First => (0..=n).collect(),
        FamilyKind::Second => (1..=n).flat_map(|i| [0, i]).collect(),
    }
}

fn canonical(coords: Vec<i64>) -> BaryPoint {
    BaryPoint::from_ints(&coords).expect("family points have positive coordinate sum")
}

/// `k`-fold cyclic right shift: `(x_0,…,x_m) ↦ (x_m, x_0, …, x_{m−1})` applied k times.
fn right_shift<T: Clone>(xs: &[T], k: usize) -> Vec<T> {
    let len = xs.len();
    (0..len)
        .map(|i| xs[(i + len - k % len) % len].clone())
        .collect()
}

/// Shift only the last n coordinates, keeping coordinate 0 in place.
fn shift_tail(xs: &[i64], k: usize) -> Vec<i64> {
    let mut out = vec![xs[0]];
    out.extend(right_shift(&xs[1..], k));
    out
}

fn m0_raw(n: usize) -> Vec<i64> {
    let n = n as i64;
    (0..=n).map(|i| -i * i + (n + 1) * i).collect()
}

fn p1_raw(n: usize) -> Vec<i64> {
    let n = n as i64;
    (0..=n)
        .map(|i| {
            if i == 0 {
                0
            } else {
                -2 * (n + 1) * i * i + 2 * (n + 1) * (n + 1) * i - n * (n + 2)
            }
        })
        .collect()
}

fn r1_raw(n: usize) -> Vec<i64> {
    let n = n as i64;
    (0..=n)
        .map(|i| {
            if i == 0 {
                n
            } else {
                2 * (n + 1) * (n - i + 1) * (i - 1)
            }
        })
        .collect()
}

/// Boundary point `m_i` of the first family (canonical). Panics unless
/// `n ≥ 2` and `i ≤ n`.
pub fn m_point(n: usize, i: usize) -> BaryPoint {
    assert!(n >= 2 && i <= n, "m_point({n}, {i}) out of range");
    canonical(right_shift(&m0_raw(n), i))
}

/// Boundary point `p_i` (on face 0) of the second family, `1 ≤ i ≤ n`.
pub fn p_point(n: usize, i: usize) -> BaryPoint {
    assert!(
        n >= 2 && (1..=n).contains(&i),
        "p_point({n}, {i}) out of range"
    );
    canonical(shift_tail(&p1_raw(n), i - 1))
}

/// Boundary point `r_i` (on face i) of the second family, `1 ≤ i ≤ n`.
pub fn r_point(n: usize, i: usize) -> BaryPoint {
    assert!(
        n >= 2 && (1..=n).contains(&i),
        "r_point({n}, {i}) out of range"
    );
    canonical(shift_tail(&r1_raw(n), i - 1))
}

/// Cartesian midpoint of two points, computed on barycentric representatives
/// rescaled to a common coordinate sum. Returns the midpoint and the factor
/// applied to `b`'s canonical representative.
pub fn projective_midpoint(a: &BaryPoint, b: &BaryPoint) -> Result<(BaryPoint, Rat), SimplexError> {
    if a.len() != b.len() {
        return Err(SimplexError::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let factor = Rat::new(a.coord_sum(), b.coord_sum());
    let sum: Vec<Rat> = a
        .as_rats()
        .into_iter()
        .zip(b.as_rats())
        .map(|(x, y)| x + y * &factor)
        .collect();
    Ok((BaryPoint::from_rats(&sum)?, factor))
}

/// One mirror-law identity `x_k = (x_{k+1} + s_f(x_{k−1}))/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    /// Position of `x_k` in the orbit.
    pub index: usize,
    pub face: FaceLabel,
    pub point: BaryPoint,
    pub next: BaryPoint,
    /// Mirror image of the previous point through `face`.
    pub mirrored_prev: BaryPoint,
    /// Factor applied to `mirrored_prev` so both representatives share a
    /// coordinate sum.
    pub rescale: Rat,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorCheck {
    pub index: usize,
    pub face: FaceLabel,
    pub point: BaryPoint,
    pub interior: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub kind: Option<FamilyKind>,
    pub n: usize,
    pub word: Vec<FaceLabel>,
    pub identities: Vec<IdentityCheck>,
    pub interior: Vec<InteriorCheck>,
    /// Indices into `identities` of the identities written out explicitly in
    /// the closed-form proof (`m_0 = (m_1 + m'_n)/2`, or
    /// `p_1 = (r_1 + r'_n)/2` and `r_1 = (p_1 + p'_2)/2`).
    pub base_identities: Vec<usize>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(|c| c.holds) && self.interior.iter().all(|c| c.interior)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in self.identities.iter().filter(|c| !c.holds) {
            out.push(format!(
                "mirror identity at index {} (face {})",
                c.index, c.face
            ));
        }
        for c in self.interior.iter().filter(|c| !c.interior) {
            out.push(format!("point {} not interior to face {}", c.point, c.face));
        }
        out
    }
}

/// Check the mirror-law midpoint identity at every point of a closed orbit
/// given by its boundary points and faces (cyclically), plus interiority.
pub fn verify_orbit(
    simplex: &RegularSimplex,
    faces: &[FaceLabel],
    points: &[BaryPoint],
) -> Result<VerificationReport, SimplexError> {
    if faces.len() != points.len() {
        return Err(SimplexError::DimensionMismatch {
            expected: faces.len(),
            found: points.len(),
        });
    }
    let len = points.len();
    let mut identities = Vec::with_capacity(len);
    let mut interior = Vec::with_capacity(len);
    for k in 0..len {
        let face = faces[k];
        let prev = &points[(k + len - 1) % len];
        let next = &points[(k + 1) % len];
        let mirrored_prev = simplex.reflect_point(face, prev)?;
        let (mid, rescale) = projective_midpoint(next, &mirrored_prev)?;
        identities.push(IdentityCheck {
            index: k,
            face,
            point: points[k].clone(),
            next: next.clone(),
            mirrored_prev,
            rescale,
            holds: mid == points[k],
        });
        interior.push(InteriorCheck {
            index: k,
            face,
            point: points[k].clone(),
            interior: face_interior_test(&points[k], face),
        });
    }
    Ok(VerificationReport {
        kind: None,
        n: simplex.dim(),
        word: faces.to_vec(),
        identities,
        interior,
        base_identities: Vec::new(),
    })
}

pub fn verify_first_family(n: usize) -> Result<VerificationReport, SimplexError> {
    let simplex = RegularSimplex::new(n)?;
    let family = OrbitFamily::first(n)?;
    let mut report = verify_orbit(&simplex, &family.faces(), &family.points)?;
    report.kind = Some(FamilyKind::First);
    report.base_identities = vec![0];
    Ok(report)
}

/// Verifies the identity at every orbit position. Positions 0 (`p_1`, face 0)
/// and 1 (`r_1`, face 1) are the two base identities; the rest are their
/// images under relabelings of faces `1..n`.
pub fn verify_second_family(n: usize) -> Result<VerificationReport, SimplexError> {
    let simplex = RegularSimplex::new(n)?;
    let family = OrbitFamily::second(n)?;
    let mut report = verify_orbit(&simplex, &family.faces(), &family.points)?;
    report.kind = Some(FamilyKind::Second);
    report.base_identities = vec![0, 1];
    Ok(report)
}

/// The identity `r_1 = (p_1 + p'_2)/2` exactly as written, with `p'_2` the
/// mirror of `p_2` through face 1 (the orbit traversed backwards).
pub fn second_family_reverse_identity(n: usize) -> Result<bool, SimplexError> {
    let simplex = RegularSimplex::new(n)?;
    let mirrored = simplex.reflect_point(1, &p_point(n, 2))?;
    let (mid, _) = projective_midpoint(&p_point(n, 1), &mirrored)?;
    Ok(mid == r_point(n, 1))
}

/// Inner products of each second-family segment `r_i → p_i` with the edge
/// vectors `e_a − e_b` of face `i` (a, b ≠ i). All zero means the segment
/// hits face `i` perpendicularly.
pub fn second_family_face_products(n: usize, i: usize) -> Result<Vec<Rat>, SimplexError> {
    let simplex = RegularSimplex::new(n)?;
    simplex.check_label(i)?;
    let dir = p_point(n, i).to_cart().diff(&r_point(n, i).to_cart());
    let labels: Vec<usize> = (0..=n).filter(|&l| l != i).collect();
    let mut out = Vec::new();
    for (idx, &a) in labels.iter().enumerate() {
        for &b in &labels[idx + 1..] {
            out.push(dir.comps()[a].clone() - dir.comps()[b].clone());
        }
    }
    Ok(out)
}

/// Raw midplane data for a boundary point: which edge mid-hyperplanes
/// `λ_j = λ_k` it lies on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MidplaneReport {
    /// All unordered pairs `{j, k}` (j < k) with equal coordinates.
    pub pairs: Vec<(usize, usize)>,
    /// No label appears in two pairs.
    pub is_matching: bool,
    /// Labels not covered by any pair.
    pub unmatched: Vec<usize>,
    /// For even n: whether the point, the vertex of smallest coordinate and
    /// the centroid of the matched labels are collinear.
    pub collinear_with_vertex: Option<bool>,
}

/// Edge mid-hyperplanes containing `p`; the hyperplane orthogonal to edge
/// `P_jP_k` through its midpoint is `{λ_j = λ_k}` for normalized coordinates.
pub fn corollary_predicate(p: &BaryPoint, n: usize) -> MidplaneReport {
    let c = p.coords();
    let mut pairs = Vec::new();
    for j in 0..c.len() {
        for k in j + 1..c.len() {
            if c[j] == c[k] {
                pairs.push((j, k));
            }
        }
    }
    let mut count = vec![0usize; c.len()];
    for &(j, k) in &pairs {
        count[j] += 1;
        count[k] += 1;
    }
    let is_matching = count.iter().all(|&x| x <= 1);
    let unmatched: Vec<usize> = (0..c.len()).filter(|&l| count[l] == 0).collect();
    let collinear_with_vertex = n.is_multiple_of(2).then(|| collinear_report(p, &pairs));
    MidplaneReport {
        pairs,
        is_matching,
        unmatched,
        collinear_with_vertex,
    }
}

fn collinear_report(p: &BaryPoint, pairs: &[(usize, usize)]) -> bool {
    let c = p.coords();
    let Some(vertex) = (0..c.len()).min_by(|&a, &b| c[a].cmp(&c[b])) else {
        return false;
    };
    let mut matched: Vec<usize> = pairs.iter().flat_map(|&(j, k)| [j, k]).collect();
    matched.sort_unstable();
    matched.dedup();
    if matched.is_empty() {
        return false;
    }
    let centroid: Vec<BigInt> = (0..c.len())
        .map(|l| BigInt::from(matched.contains(&l) as i64))
        .collect();
    // p, e_vertex and the centroid are collinear iff p's normalized
    // coordinates are an affine combination of the other two, i.e. the
    // coordinates of p outside `vertex` are proportional to the centroid's.
    let mut factor: Option<(BigInt, BigInt)> = None;
    for l in (0..c.len()).filter(|&l| l != vertex) {
        let (x, y) = (&c[l], &centroid[l]);
        if y.is_zero() {
            if !x.is_zero() {
                return false;
            }
            continue;
        }
        match &factor {
            None => factor = Some((x.clone(), y.clone())),
            Some((fx, fy)) => {
                if x * fy != fx * y {
                    return false;
                }
            }
        }
    }
    true
}
