//! Search for a periodic orbit with a prescribed coding word.
//!
//! For a word `v = v_0 … v_{k−1}` let `s_v = s_{v_{k−1}} ∘ … ∘ s_{v_0}` be the
//! composed affine mirror maps and `S_v` its linear part. A periodic orbit
//! coded by `v` through a point `m` of face `v_0` arrives at `m` with
//! direction `u = m − s_v(m)`, and `S_v·u = u`. The finder therefore
//!
//! 1. computes the 1-eigenspace of `S_v` on tangent vectors,
//! 2. solves the linear system `m − s_v(m) ∈ span(eigenspace)`,
//!    `Σmᵢ = 1`, `m_{v_0} = 0`,
//! 3. picks a sample point of the solution set inside the face and certifies
//!    it with the exact tracer.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactla::{
    kernel_basis, rat, solve_affine, AffineSolution, LinAlgError, Rat, RatMatrix,
};
use crate::simplex::{BaryPoint, CartPoint, CartVector, Permutation, RegularSimplex, SimplexError};
use crate::tracer::{
    certify_periodic, BilliardState, BilliardWord, CertifyError, OrbitCertificate, TracerError,
    WordError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinderError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("infeasible: {0}")]
    Infeasible(&'static str),
}

/// `s_v` and `S_v` for a word, in the standard (n+1)-dimensional embedding:
/// `s_v(x) = linear·x + translation` for points of the hyperplane `Σx = 1`,
/// `S_v(u) = linear·u` for tangent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposedReflection {
    pub word: BilliardWord,
    pub linear: RatMatrix,
    pub translation: Vec<Rat>,
}

impl ComposedReflection {
    pub fn apply_point(&self, x: &CartPoint) -> CartPoint {
        let mut y = self
            .linear
            .mul_vec(x.coords())
            .expect("composed map has the simplex's dimension");
        for (yi, ti) in y.iter_mut().zip(&self.translation) {
            *yi += ti;
        }
        CartPoint::new(y).expect("mirror maps preserve the hyperplane")
    }

    pub fn apply_vector(&self, u: &CartVector) -> CartVector {
        CartVector::new(
            self.linear
                .mul_vec(u.comps())
                .expect("composed map has the simplex's dimension"),
        )
        .expect("mirror maps preserve tangent vectors")
    }

    /// True iff `S_v` is the identity on tangent vectors.
    pub fn is_identity_on_tangent(&self) -> bool {
        let size = self.linear.rows();
        (0..size - 1).all(|i| {
            let mut e = vec![Rat::zero(); size];
            e[i] = Rat::one();
            e[i + 1] = -Rat::one();
            self.linear.mul_vec(&e).expect("square") == e
        })
    }
}

/// Compose the mirror maps along `word`, applying `word[0]` first. Labels must
/// be in range and no two adjacent labels may coincide.
pub fn compose(
    simplex: &RegularSimplex,
    word: &BilliardWord,
) -> Result<ComposedReflection, FinderError> {
    let labels = word.labels();
    if labels.is_empty() {
        return Err(WordError::Empty.into());
    }
    if let Some(&label) = labels.iter().find(|&&l| l > simplex.dim()) {
        return Err(WordError::OutOfRange {
            label,
            n: simplex.dim(),
        }
        .into());
    }
    if let Some(i) = (1..labels.len()).find(|&i| labels[i] == labels[i - 1]) {
        return Err(WordError::RepeatedLabel(i - 1, i).into());
    }
    let size = simplex.vertex_count();
    let mut linear = RatMatrix::identity(size);
    let mut translation = vec![Rat::zero(); size];
    for &j in labels {
        let reflection = simplex.reflection_matrix(j);
        linear = reflection.mul(&linear)?;
        translation = reflection.mul_vec(&translation)?;
        for (t, tj) in translation
            .iter_mut()
            .zip(simplex.reflection_translation(j))
        {
            *t += tj;
        }
    }
    Ok(ComposedReflection {
        word: word.clone(),
        linear,
        translation,
    })
}

/// Basis of `{u : Σuᵢ = 0, S_v·u = u}`, each vector scaled so its first
/// nonzero entry is 1.
pub fn fixed_directions(
    simplex: &RegularSimplex,
    word: &BilliardWord,
) -> Result<Vec<CartVector>, FinderError> {
    let composed = compose(simplex, word)?;
    Ok(fixed_directions_of(&composed))
}

fn fixed_directions_of(composed: &ComposedReflection) -> Vec<CartVector> {
    let size = composed.linear.rows();
    let system = composed
        .linear
        .sub(&RatMatrix::identity(size))
        .and_then(|m| m.vstack(&RatMatrix::from_rows(vec![vec![Rat::one(); size]])?))
        .expect("square system");
    kernel_basis(&system)
        .into_iter()
        .map(|k| CartVector::new(k).expect("kernel vectors sum to zero"))
        .collect()
}

/// Solution set of the periodic-point conditions for one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicSolutionSet {
    pub word: BilliardWord,
    pub fixed_directions: Vec<CartVector>,
    /// Particular solution of the linear conditions (Cartesian, may lie
    /// outside the simplex).
    pub particular: CartPoint,
    /// Directions spanning the solution family inside face `v_0`.
    pub parameters: Vec<CartVector>,
    pub family_dim: usize,
    /// Centroid of the vertices of the solution set clipped to the closed
    /// face `v_0`; `None` when the clipped set is empty.
    pub base: Option<BaryPoint>,
    /// `base − s_v(base)`: the direction arriving at `base`.
    pub arrival_direction: Option<CartVector>,
    pub admissible_sample: Option<OrbitCertificate>,
    /// Why the sample could not be certified, when it could not.
    pub sample_failure: Option<String>,
    /// The sample trajectory hit a lower-dimensional face.
    pub sample_singular: bool,
}

impl PeriodicSolutionSet {
    /// True iff `p` (a point of face `v_0`) satisfies the linear conditions.
    pub fn contains(&self, p: &BaryPoint) -> bool {
        let x = p.to_cart();
        let rhs: Vec<Rat> = x
            .coords()
            .iter()
            .zip(self.particular.coords())
            .map(|(a, b)| a - b)
            .collect();
        if self.parameters.is_empty() {
            return rhs.iter().all(Zero::is_zero);
        }
        let cols: Vec<Vec<Rat>> = self.parameters.iter().map(|v| v.comps().to_vec()).collect();
        let m = RatMatrix::from_rows(cols)
            .expect("equal lengths")
            .transpose();
        matches!(solve_affine(&m, &rhs), Ok(AffineSolution::Feasible(_)))
    }
}

/// Solve for periodic points of `word`, then try to certify the base point.
pub fn solve_periodic(
    simplex: &RegularSimplex,
    word: &BilliardWord,
) -> Result<PeriodicSolutionSet, FinderError> {
    word.validate(simplex.dim())?;
    let composed = compose(simplex, word)?;
    let fixed = fixed_directions_of(&composed);
    if fixed.is_empty() {
        return Err(FinderError::Infeasible(
            "S_v has no fixed tangent direction",
        ));
    }
    let size = simplex.vertex_count();
    let start_face = word.labels()[0];
    let f = fixed.len();

    // unknowns: m (size entries), then one coefficient per fixed direction
    let i_minus_s = RatMatrix::identity(size).sub(&composed.linear)?;
    let mut rows = Vec::with_capacity(size + 2);
    let mut rhs = Vec::with_capacity(size + 2);
    for r in 0..size {
        let mut row = i_minus_s.row(r).to_vec();
        row.extend(fixed.iter().map(|u| -u.comps()[r].clone()));
        rows.push(row);
        rhs.push(composed.translation[r].clone());
    }
    let mut sum_row = vec![Rat::one(); size];
    sum_row.extend(std::iter::repeat_n(Rat::zero(), f));
    rows.push(sum_row);
    rhs.push(Rat::one());
    let mut face_row = vec![Rat::zero(); size + f];
    face_row[start_face] = Rat::one();
    rows.push(face_row);
    rhs.push(Rat::zero());

    let system = RatMatrix::from_rows(rows)?;
    let solution = solve_affine(&system, &rhs)?
        .feasible()
        .ok_or(FinderError::Infeasible(
            "no point of the face satisfies the fixed-point conditions",
        ))?;

    let particular = CartPoint::new(solution.particular[..size].to_vec())?;
    let parameters = independent_m_parts(&solution.kernel, size);
    let family_dim = parameters.len();

    let base_cart = clipped_centroid(&particular, &parameters, start_face);
    let base = base_cart
        .as_ref()
        .map(|c| simplex.cart_to_bary(c))
        .transpose()?;

    let mut result = PeriodicSolutionSet {
        word: word.clone(),
        fixed_directions: fixed,
        particular,
        parameters,
        family_dim,
        base: base.clone(),
        arrival_direction: None,
        admissible_sample: None,
        sample_failure: None,
        sample_singular: false,
    };
    let (Some(base), Some(base_cart)) = (base, base_cart) else {
        result.sample_failure = Some("solution set does not meet the face".to_string());
        return Ok(result);
    };
    let arrival = base_cart.diff(&composed.apply_point(&base_cart));
    result.arrival_direction = Some(arrival.clone());
    if arrival.is_zero() {
        result.sample_failure = Some("base point is fixed by s_v".to_string());
        return Ok(result);
    }
    let leaving = simplex.reflect_vector(start_face, &arrival)?;
    let certified = BilliardState::new(simplex, base, start_face, leaving)
        .map_err(CertifyError::from)
        .and_then(|st| certify_periodic(simplex, word, &st));
    match certified {
        Ok(cert) => result.admissible_sample = Some(cert),
        Err(e) => {
            result.sample_singular = matches!(e, CertifyError::Trace(TracerError::Singular { .. }));
            result.sample_failure = Some(e.to_string());
        }
    }
    Ok(result)
}

/// Project kernel vectors onto the point coordinates and keep an independent
/// subset.
fn independent_m_parts(kernel: &[Vec<Rat>], size: usize) -> Vec<CartVector> {
    let projected: Vec<Vec<Rat>> = kernel
        .iter()
        .map(|k| k[..size].to_vec())
        .filter(|k| k.iter().any(|x| !x.is_zero()))
        .collect();
    if projected.is_empty() {
        return Vec::new();
    }
    let (reduced, pivots) = RatMatrix::from_rows(projected)
        .expect("equal lengths")
        .rref();
    (0..pivots.len())
        .map(|r| CartVector::new(reduced.row(r).to_vec()).expect("tangent"))
        .collect()
}

/// Centroid of the vertices of `{particular + Σ tᵢ·paramᵢ}` intersected with
/// the closed face (`x_i ≥ 0` for all i, `x_face = 0` holds already).
fn clipped_centroid(
    particular: &CartPoint,
    params: &[CartVector],
    face: usize,
) -> Option<CartPoint> {
    let d = params.len();
    let size = particular.coords().len();
    let constraints: Vec<usize> = (0..size).filter(|&i| i != face).collect();
    let value_at = |t: &[Rat]| -> Vec<Rat> {
        (0..size)
            .map(|i| {
                let mut v = particular.coords()[i].clone();
                for (tk, p) in t.iter().zip(params) {
                    v += tk * &p.comps()[i];
                }
                v
            })
            .collect()
    };
    let feasible = |x: &[Rat]| x.iter().all(|v| !v.is_negative());

    if d == 0 {
        let x = particular.coords().to_vec();
        return feasible(&x).then(|| particular.clone());
    }

    let mut vertices: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for subset in combinations(constraints.len(), d) {
        // coordinates in `subset` vanish: Σ_k t_k·param_k[i] = −particular[i]
        let rows: Vec<Vec<Rat>> = subset
            .iter()
            .map(|&s| {
                params
                    .iter()
                    .map(|p| p.comps()[constraints[s]].clone())
                    .collect()
            })
            .collect();
        let rhs: Vec<Rat> = subset
            .iter()
            .map(|&s| -particular.coords()[constraints[s]].clone())
            .collect();
        let m = RatMatrix::from_rows(rows).expect("equal lengths");
        let Ok(AffineSolution::Feasible(sol)) = solve_affine(&m, &rhs) else {
            continue;
        };
        if !sol.kernel.is_empty() {
            continue;
        }
        let x = value_at(&sol.particular);
        if feasible(&x) {
            vertices.insert(x);
        }
    }
    if vertices.is_empty() {
        return None;
    }
    let count = rat(vertices.len() as i64);
    let mut centroid = vec![Rat::zero(); size];
    for v in &vertices {
        for (c, x) in centroid.iter_mut().zip(v) {
            *c += x;
        }
    }
    let centroid = centroid.into_iter().map(|c| c / &count).collect();
    CartPoint::new(centroid).ok()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Sufficient stability criterion: `S_v` differs from the identity on
/// tangent vectors.
pub fn stability_check(simplex: &RegularSimplex, word: &BilliardWord) -> Result<bool, FinderError> {
    Ok(!compose(simplex, word)?.is_identity_on_tangent())
}

/// Canonical representative of a word up to rotation and reversal.
pub fn cyclic_class(word: &BilliardWord) -> BilliardWord {
    let rev = word.reversed();
    (0..word.len())
        .flat_map(|k| [word.rotated(k), rev.rotated(k)])
        .min()
        .unwrap_or_else(|| word.clone())
}

/// Distinct words `σ(v)`, σ ∈ 𝔖_{n+1}, up to rotation and reversal.
pub fn symmetry_orbit_classes(word: &BilliardWord, n: usize) -> BTreeSet<BilliardWord> {
    Permutation::all(n + 1)
        .iter()
        .map(|sigma| {
            let image: Vec<usize> = word
                .labels()
                .iter()
                .map(|&l| sigma.apply_label(l))
                .collect();
            cyclic_class(&BilliardWord::new(image))
        })
        .collect()
}

pub fn symmetry_orbit_count(word: &BilliardWord, n: usize) -> usize {
    symmetry_orbit_classes(word, n).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{m_point, p_point};

    fn w(s: &str) -> BilliardWord {
        s.parse().unwrap()
    }

    #[test]
    fn single_reflection_is_involution() {
        let s = RegularSimplex::new(2).unwrap();
        let c = compose(&s, &w("0")).unwrap();
        assert!(c.linear.mul(&c.linear).unwrap().is_identity());
    }

    #[test]
    fn two_reflections_rotate() {
        let s = RegularSimplex::new(2).unwrap();
        let c = compose(&s, &w("01")).unwrap();
        // restricted to tangent vectors, in the basis e0−e1, e1−e2
        let basis = [vec![rat(1), rat(-1), rat(0)], vec![rat(0), rat(1), rat(-1)]];
        let images: Vec<Vec<Rat>> = basis.iter().map(|b| c.linear.mul_vec(b).unwrap()).collect();
        // express images in the basis: v = a(e0−e1) + b(e1−e2) → a = v0, b = v0 + v1
        let coords = RatMatrix::from_rows(
            images
                .iter()
                .map(|v| vec![v[0].clone(), &v[0] + &v[1]])
                .collect(),
        )
        .unwrap()
        .transpose();
        assert_eq!(coords.determinant(), rat(1));
        assert!(!c.is_identity_on_tangent());
        assert!(fixed_directions(&s, &w("01")).unwrap().is_empty());
    }

    #[test]
    fn triangle_first_word_fixed_line() {
        let s = RegularSimplex::new(2).unwrap();
        assert_eq!(fixed_directions(&s, &w("012")).unwrap().len(), 1);
    }

    #[test]
    fn compose_rejects_repeats() {
        let s = RegularSimplex::new(2).unwrap();
        assert!(matches!(
            compose(&s, &w("00")),
            Err(FinderError::Word(WordError::RepeatedLabel(0, 1)))
        ));
        assert!(compose(&s, &w("03")).is_err());
    }

    #[test]
    fn tetrahedron_direction_is_fixed() {
        let s = RegularSimplex::new(3).unwrap();
        // S_v fixes the direction arriving at m_0 ...
        let dirs = fixed_directions(&s, &w("0123")).unwrap();
        assert_eq!(dirs.len(), 1);
        let arriving = m_point(3, 0).to_cart().diff(&m_point(3, 3).to_cart());
        assert!(crate::exactla::proportional(
            arriving.comps(),
            dirs[0].comps()
        ));
        // ... and the rotated word fixes the direction leaving it
        let dirs = fixed_directions(&s, &w("1230")).unwrap();
        let leaving = m_point(3, 1).to_cart().diff(&m_point(3, 0).to_cart());
        assert!(crate::exactla::proportional(
            leaving.comps(),
            dirs[0].comps()
        ));
    }

    #[test]
    fn triangle_second_word_normal() {
        let s = RegularSimplex::new(2).unwrap();
        let dirs = fixed_directions(&s, &w("0102")).unwrap();
        let nu = s.face_normal(1);
        // the face-1 normal lies in the fixed space
        let mut rows: Vec<Vec<Rat>> = dirs.iter().map(|d| d.comps().to_vec()).collect();
        let before = RatMatrix::from_rows(rows.clone()).unwrap().rank();
        rows.push(nu.comps().to_vec());
        assert_eq!(RatMatrix::from_rows(rows).unwrap().rank(), before);
    }

    #[test]
    fn rediscover_first_family() {
        let s = RegularSimplex::new(3).unwrap();
        let sol = solve_periodic(&s, &w("0123")).unwrap();
        assert_eq!(sol.family_dim, 0);
        assert_eq!(sol.base, Some(m_point(3, 0)));
        assert!(sol.admissible_sample.is_some(), "{:?}", sol.sample_failure);
    }

    #[test]
    fn triangle_second_family_is_one_parameter() {
        let s = RegularSimplex::new(2).unwrap();
        let sol = solve_periodic(&s, &w("0102")).unwrap();
        assert_eq!(sol.family_dim, 1);
        assert_eq!(sol.base, Some(p_point(2, 1)));
        assert!(sol.admissible_sample.is_some());
        for p in [[0, 1, 2], [0, 7, 1]] {
            assert!(sol.contains(&BaryPoint::from_ints(&p).unwrap()));
        }
    }

    #[test]
    fn second_family_n4_base() {
        let s = RegularSimplex::new(4).unwrap();
        let sol = solve_periodic(&s, &w("01020304")).unwrap();
        assert_eq!(
            sol.base,
            Some(BaryPoint::from_ints(&[0, 16, 36, 36, 16]).unwrap())
        );
        assert!(sol.admissible_sample.is_some(), "{:?}", sol.sample_failure);
    }

    #[test]
    fn rotation_word_is_infeasible() {
        let s = RegularSimplex::new(2).unwrap();
        assert!(matches!(
            solve_periodic(&s, &w("01")),
            Err(FinderError::Infeasible(_))
        ));
    }

    #[test]
    fn stability() {
        let s3 = RegularSimplex::new(3).unwrap();
        assert!(stability_check(&s3, &w("0123")).unwrap());
        assert!(stability_check(&s3, &w("010203")).unwrap());
        let s2 = RegularSimplex::new(2).unwrap();
        assert!(stability_check(&s2, &w("01")).unwrap());
        // an even word that returns to the identity: S_0 S_1 S_0 S_1 S_0 S_1 is a
        // rotation by 3·(2π/3)
        assert!(!stability_check(&s2, &w("010101")).unwrap());
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(symmetry_orbit_count(&w("012"), 2), 1);
        assert_eq!(symmetry_orbit_count(&w("0123"), 3), 3);
        assert_eq!(symmetry_orbit_count(&w("0102"), 2), 3);
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
