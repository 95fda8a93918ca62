//! The regular simplex Δⁿ embedded in (n+1)-space.
//!
//! Vertex `i` is the standard basis vector `eᵢ`, so every vertex is rational
//! in every dimension and the simplex lies in the hyperplane `Σxᵢ = 1`. With
//! this embedding the Cartesian coordinates of a point are exactly its
//! normalized barycentric coordinates. The face labeled `j` is the facet
//! opposite vertex `j`, i.e. `{x : xⱼ = 0}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactla::{dot, rat, sum, Rat, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplexError {
    #[error("simplex dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("coordinates sum to zero: point at infinity")]
    PointAtInfinity,
    #[error("expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Cartesian point does not lie on the hyperplane sum(x) = 1 (sum is {0})")]
    NotOnHyperplane(Rat),
    #[error("vector is not tangent to the simplex (component sum is {0})")]
    NotTangent(Rat),
    #[error("face label {label} out of range for dimension {n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
}

/// Label of a hyperface; face `j` is opposite vertex `j`.
pub type FaceLabel = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RegularSimplex {
    n: usize,
}

impl RegularSimplex {
    pub fn new(n: usize) -> Result<Self, SimplexError> {
        if n < 2 {
            return Err(SimplexError::DimensionTooSmall(n));
        }
        Ok(Self { n })
    }

    /// Dimension n of Δⁿ.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of vertices (= number of faces), n+1.
    pub fn vertex_count(&self) -> usize {
        self.n + 1
    }

    pub fn vertex(&self, i: usize) -> CartPoint {
        let mut c = vec![Rat::zero(); self.n + 1];
        c[i] = Rat::one();
        CartPoint(c)
    }

    pub fn check_label(&self, j: FaceLabel) -> Result<(), SimplexError> {
        if j > self.n {
            Err(SimplexError::LabelOutOfRange {
                label: j,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn check_len(&self, len: usize) -> Result<(), SimplexError> {
        if len != self.n + 1 {
            Err(SimplexError::DimensionMismatch {
                expected: self.n + 1,
                found: len,
            })
        } else {
            Ok(())
        }
    }

    /// Inward normal of face `j` inside the hyperplane: `eⱼ − (1/n)Σ_{i≠j} eᵢ`.
    pub fn face_normal(&self, j: FaceLabel) -> CartVector {
        let off = -Rat::new(BigInt::one(), BigInt::from(self.n));
        CartVector(
            (0..=self.n)
                .map(|i| if i == j { Rat::one() } else { off.clone() })
                .collect(),
        )
    }

    /// Matrix of the orthogonal reflection `I − 2ννᵀ/⟨ν,ν⟩` for face `j`.
    ///
    /// Acts on tangent vectors as the mirror law and fixes `(1,…,1)`.
    pub fn reflection_matrix(&self, j: FaceLabel) -> RatMatrix {
        let nu = self.face_normal(j).0;
        let nn = dot(&nu, &nu);
        let proj = RatMatrix::outer(&nu, &nu).scale(&(rat(2) / nn));
        RatMatrix::identity(self.n + 1)
            .sub(&proj)
            .expect("square matrices of equal size")
    }

    /// Translation of the affine reflection through face `j`, so that the
    /// mirror image of a point `x` is `reflection_matrix(j)·x + translation`.
    pub fn reflection_translation(&self, j: FaceLabel) -> Vec<Rat> {
        // The face passes through any vertex eₖ with k ≠ j, and ⟨eₖ, ν⟩ = −1/n.
        let nu = self.face_normal(j).0;
        let nn = dot(&nu, &nu);
        let k = if j == 0 { 1 } else { 0 };
        let offset = dot(&self.vertex(k).0, &nu);
        let c = rat(2) * offset / nn;
        nu.iter().map(|x| x * &c).collect()
    }

    /// Barycentric coordinates of the mirror image of vertex `j` through face
    /// `j`: entry `j` is −1, every other entry 2/n.
    pub fn reflected_vertex(&self, j: FaceLabel) -> Result<BaryPoint, SimplexError> {
        self.check_label(j)?;
        let n = self.n as i64;
        let coords: Vec<i64> = (0..=self.n).map(|i| if i == j { -n } else { 2 }).collect();
        BaryPoint::from_ints(&coords)
    }

    pub fn bary_to_cart(&self, p: &BaryPoint) -> Result<CartPoint, SimplexError> {
        self.check_len(p.len())?;
        Ok(p.to_cart())
    }

    pub fn cart_to_bary(&self, c: &CartPoint) -> Result<BaryPoint, SimplexError> {
        self.check_len(c.0.len())?;
        let s = sum(&c.0);
        if !s.is_one() {
            return Err(SimplexError::NotOnHyperplane(s));
        }
        canonicalize(&c.0)
    }

    /// Mirror image of `p` through face `j`, in barycentric coordinates.
    ///
    /// Works on the n-scaled integer representative
    /// `outᵢ = n·λᵢ + 2·λⱼ (i ≠ j)`, `outⱼ = −n·λⱼ`.
    pub fn reflect_point(&self, j: FaceLabel, p: &BaryPoint) -> Result<BaryPoint, SimplexError> {
        self.check_label(j)?;
        self.check_len(p.len())?;
        let n = BigInt::from(self.n);
        let lj = &p.coords[j];
        let two_lj = lj * BigInt::from(2);
        let out: Vec<BigInt> = p
            .coords
            .iter()
            .enumerate()
            .map(|(i, li)| {
                if i == j {
                    -(&n * lj)
                } else {
                    &n * li + &two_lj
                }
            })
            .collect();
        BaryPoint::from_bigints(out)
    }

    /// Mirror image of a Cartesian point through face `j`, computed directly
    /// from the face hyperplane (independent of the barycentric closed form).
    pub fn reflect_cart_point(
        &self,
        j: FaceLabel,
        x: &CartPoint,
    ) -> Result<CartPoint, SimplexError> {
        self.check_label(j)?;
        self.check_len(x.0.len())?;
        let nu = self.face_normal(j).0;
        let base = self.vertex(if j == 0 { 1 } else { 0 }).0;
        let rel: Vec<Rat> = x.0.iter().zip(&base).map(|(a, b)| a - b).collect();
        let c = rat(2) * dot(&rel, &nu) / dot(&nu, &nu);
        Ok(CartPoint(
            x.0.iter().zip(&nu).map(|(a, v)| a - &c * v).collect(),
        ))
    }

    /// Linear part of the mirror law at face `j`:
    /// `u − 2(⟨u,ν⟩/⟨ν,ν⟩)ν`.
    pub fn reflect_vector(&self, j: FaceLabel, u: &CartVector) -> Result<CartVector, SimplexError> {
        self.check_label(j)?;
        self.check_len(u.0.len())?;
        let nu = self.face_normal(j).0;
        let c = rat(2) * dot(&u.0, &nu) / dot(&nu, &nu);
        Ok(CartVector(
            u.0.iter().zip(&nu).map(|(a, v)| a - &c * v).collect(),
        ))
    }
}

/// Unnormalized barycentric coordinates, stored in canonical form: integer
/// entries with content 1 and a positive sum. Two points are equal iff their
/// canonical coordinates are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaryPoint {
    coords: Vec<BigInt>,
}

/// Canonical representative of the point with (possibly rational, possibly
/// unscaled) barycentric coordinates `coords`.
pub fn canonicalize(coords: &[Rat]) -> Result<BaryPoint, SimplexError> {
    let lcm = coords
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coords
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    BaryPoint::from_bigints(ints)
}

impl BaryPoint {
    pub fn from_bigints(mut coords: Vec<BigInt>) -> Result<Self, SimplexError> {
        let total: BigInt = coords.iter().sum();
        if total.is_zero() {
            return Err(SimplexError::PointAtInfinity);
        }
        let content = coords.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let content = if total.is_negative() {
            -content
        } else {
            content
        };
        for c in &mut coords {
            *c = &*c / &content;
        }
        Ok(Self { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, SimplexError> {
        Self::from_bigints(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_rats(coords: &[Rat]) -> Result<Self, SimplexError> {
        canonicalize(coords)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord_sum(&self) -> BigInt {
        self.coords.iter().sum()
    }

    pub fn as_rats(&self) -> Vec<Rat> {
        self.coords.iter().cloned().map(Rat::from_integer).collect()
    }

    /// Normalized coordinates λ/Σλ, i.e. the Cartesian point in the standard
    /// embedding.
    pub fn to_cart(&self) -> CartPoint {
        let s = self.coord_sum();
        CartPoint(
            self.coords
                .iter()
                .map(|c| Rat::new(c.clone(), s.clone()))
                .collect(),
        )
    }

    /// Labels whose coordinate is zero.
    pub fn zero_labels(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

impl fmt::Display for BaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for BaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BaryPoint{self}")
    }
}

/// True iff `p` lies in the relative interior of face `j`: coordinate `j` is
/// zero and every other coordinate is positive.
pub fn face_interior_test(p: &BaryPoint, j: FaceLabel) -> bool {
    j < p.len()
        && p.coords
            .iter()
            .enumerate()
            .all(|(i, c)| if i == j { c.is_zero() } else { c.is_positive() })
}

/// Point of the hyperplane `Σxᵢ = 1` in the standard embedding.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CartPoint(pub(crate) Vec<Rat>);

impl CartPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self, SimplexError> {
        let s = sum(&coords);
        if !s.is_one() {
            return Err(SimplexError::NotOnHyperplane(s));
        }
        Ok(Self(coords))
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn translate(&self, u: &CartVector, t: &Rat) -> CartPoint {
        CartPoint(self.0.iter().zip(&u.0).map(|(x, d)| x + d * t).collect())
    }

    /// `self − other`.
    pub fn diff(&self, other: &CartPoint) -> CartVector {
        CartVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn squared_distance(&self, other: &CartPoint) -> Rat {
        self.diff(other).norm_squared()
    }
}

impl fmt::Debug for CartPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "CartPoint({})", parts.join(", "))
    }
}

/// Vector tangent to the simplex's hyperplane (components sum to zero).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CartVector(pub(crate) Vec<Rat>);

impl CartVector {
    pub fn new(comps: Vec<Rat>) -> Result<Self, SimplexError> {
        let s = sum(&comps);
        if !s.is_zero() {
            return Err(SimplexError::NotTangent(s));
        }
        Ok(Self(comps))
    }

    pub fn comps(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn norm_squared(&self) -> Rat {
        dot(&self.0, &self.0)
    }

    pub fn dot(&self, other: &CartVector) -> Rat {
        dot(&self.0, &other.0)
    }

    pub fn neg(&self) -> CartVector {
        CartVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, c: &Rat) -> CartVector {
        CartVector(self.0.iter().map(|x| x * c).collect())
    }

    /// True iff `self = c·other` for some rational `c > 0`.
    pub fn same_direction(&self, other: &CartVector) -> bool {
        match crate::exactla::proportionality_factor(&self.0, &other.0) {
            Some(c) => c.is_positive() && !other.is_zero(),
            None => false,
        }
    }

    /// Scaled so the first nonzero entry is 1.
    pub fn canonical(&self) -> CartVector {
        CartVector(crate::exactla::normalize_leading(&self.0))
    }
}

impl fmt::Debug for CartVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "CartVector({})", parts.join(", "))
    }
}

/// Permutation of the labels `0..=n`; `sigma[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, SimplexError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(SimplexError::InvalidPermutation(images.len()));
            }
            seen[i] = true;
        }
        Ok(Self(images))
    }

    pub fn identity(size: usize) -> Self {
        Self((0..size).collect())
    }

    /// `i ↦ i + k (mod size)`: applied to coordinates this is a k-fold cyclic
    /// right shift.
    pub fn cyclic_shift(size: usize, k: usize) -> Self {
        Self((0..size).map(|i| (i + k) % size).collect())
    }

    pub fn transposition(size: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..size).collect();
        images.swap(a, b);
        Self(images)
    }

    /// Every permutation of `0..size` in lexicographic order.
    pub fn all(size: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..size).collect();
        loop {
            out.push(Permutation(current.clone()));
            // next lexicographic permutation
            let Some(i) = (1..size).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..size)
                .rev()
                .find(|&j| current[j] > current[i - 1])
                .unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply_label(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &s) in self.0.iter().enumerate() {
            inv[s] = i;
        }
        Permutation(inv)
    }
}

/// Relabel vertices: coordinate `i` of `p` moves to position `sigma(i)`.
pub fn apply_permutation(sigma: &Permutation, p: &BaryPoint) -> Result<BaryPoint, SimplexError> {
    if sigma.size() != p.len() {
        return Err(SimplexError::DimensionMismatch {
            expected: p.len(),
            found: sigma.size(),
        });
    }
    let mut out = vec![BigInt::zero(); p.len()];
    for (i, c) in p.coords.iter().enumerate() {
        out[sigma.0[i]] = c.clone();
    }
    // A permutation of a canonical vector is canonical.
    Ok(BaryPoint { coords: out })
}

/// Relabel the components of a tangent vector the same way.
pub fn permute_vector(sigma: &Permutation, u: &CartVector) -> CartVector {
    let mut out = vec![Rat::zero(); u.0.len()];
    for (i, c) in u.0.iter().enumerate() {
        out[sigma.0[i]] = c.clone();
    }
    CartVector(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ratio;

    fn bp(c: &[i64]) -> BaryPoint {
        BaryPoint::from_ints(c).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(bp(&[0, 4, 4]), bp(&[0, 1, 1]));
        assert_eq!(bp(&[0, 4, 4]).coords(), bp(&[0, 1, 1]).coords());
        assert_eq!(bp(&[-9, 18, 15, 6]).to_string(), "(-3,6,5,2)");
        let half = canonicalize(&[rat(0), ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(half.to_string(), "(0,1,1)");
        // negative sum flips the sign
        assert_eq!(bp(&[0, -2, -2]).to_string(), "(0,1,1)");
    }

    #[test]
    fn canonicalize_zero_sum() {
        assert_eq!(
            BaryPoint::from_ints(&[1, -1, 0]),
            Err(SimplexError::PointAtInfinity)
        );
    }

    #[test]
    fn canonicalize_idempotent() {
        let p = bp(&[-9, 18, 15, 6]);
        assert_eq!(canonicalize(&p.as_rats()).unwrap(), p);
    }

    #[test]
    fn dimension_check() {
        assert_eq!(
            RegularSimplex::new(1),
            Err(SimplexError::DimensionTooSmall(1))
        );
    }

    #[test]
    fn bary_to_cart_examples() {
        let s = RegularSimplex::new(2).unwrap();
        assert_eq!(s.bary_to_cart(&bp(&[1, 0, 0])).unwrap(), s.vertex(0));
        assert_eq!(
            s.bary_to_cart(&bp(&[0, 2, 2])).unwrap().coords(),
            &[rat(0), ratio(1, 2), ratio(1, 2)]
        );
        let s3 = RegularSimplex::new(3).unwrap();
        assert_eq!(
            s3.bary_to_cart(&bp(&[3, 0, 3, 4])).unwrap().coords(),
            &[ratio(3, 10), rat(0), ratio(3, 10), ratio(2, 5)]
        );
        assert!(s3.bary_to_cart(&bp(&[1, 1, 1])).is_err());
    }

    #[test]
    fn cart_to_bary_examples() {
        let s = RegularSimplex::new(2).unwrap();
        assert_eq!(s.cart_to_bary(&s.vertex(0)).unwrap(), bp(&[1, 0, 0]));
        let c = CartPoint::new(vec![ratio(1, 2), ratio(1, 2), rat(0)]).unwrap();
        assert_eq!(s.cart_to_bary(&c).unwrap().to_string(), "(1,1,0)");
        let bad = CartPoint(vec![rat(1), rat(1), rat(0)]);
        assert!(matches!(
            s.cart_to_bary(&bad),
            Err(SimplexError::NotOnHyperplane(_))
        ));
        let s3 = RegularSimplex::new(3).unwrap();
        let p = bp(&[0, 3, 4, 3]);
        assert_eq!(s3.cart_to_bary(&s3.bary_to_cart(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn reflected_vertices() {
        let s3 = RegularSimplex::new(3).unwrap();
        // (−1, 2/3, 2/3, 2/3) scaled by 3
        assert_eq!(s3.reflected_vertex(0).unwrap().to_string(), "(-3,2,2,2)");
        for n in 2..7 {
            let s = RegularSimplex::new(n).unwrap();
            let expected: Vec<Rat> = (0..=n)
                .map(|i| if i == 1 { rat(-1) } else { ratio(2, n as i64) })
                .collect();
            assert_eq!(
                s.reflected_vertex(1).unwrap(),
                canonicalize(&expected).unwrap()
            );
        }
        let s2 = RegularSimplex::new(2).unwrap();
        assert_eq!(s2.reflected_vertex(0).unwrap(), bp(&[-1, 1, 1]));
        assert!(s2.reflected_vertex(3).is_err());
    }

    #[test]
    fn reflected_vertex_matches_cartesian_mirror() {
        for n in 2..6 {
            let s = RegularSimplex::new(n).unwrap();
            for j in 0..=n {
                let mirrored = s.reflect_cart_point(j, &s.vertex(j)).unwrap();
                assert_eq!(
                    s.cart_to_bary(&mirrored).unwrap(),
                    s.reflected_vertex(j).unwrap()
                );
            }
        }
    }

    #[test]
    fn reflect_point_examples() {
        let s3 = RegularSimplex::new(3).unwrap();
        assert_eq!(
            s3.reflect_point(0, &bp(&[3, 4, 3, 0])).unwrap(),
            bp(&[-3, 6, 5, 2])
        );
        assert_eq!(
            s3.reflect_point(1, &bp(&[0, 9, 17, 9])).unwrap(),
            bp(&[6, -9, 23, 15])
        );
        // points on the mirror are fixed
        assert_eq!(
            s3.reflect_point(0, &bp(&[0, 3, 4, 3])).unwrap(),
            bp(&[0, 3, 4, 3])
        );
    }

    #[test]
    fn reflect_vector_examples() {
        let s = RegularSimplex::new(2).unwrap();
        let nu = s.face_normal(1);
        assert_eq!(s.reflect_vector(1, &nu).unwrap(), nu.neg());
        // e0 − e2 is tangent to face 1
        let t = CartVector::new(vec![rat(1), rat(0), rat(-1)]).unwrap();
        assert_eq!(s.reflect_vector(1, &t).unwrap(), t);
        let u = CartVector::new(vec![rat(1), rat(-1), rat(0)]).unwrap();
        let image = s.reflect_vector(1, &u).unwrap();
        assert_eq!(image.comps(), &[rat(0), rat(1), rat(-1)]);
        assert_eq!(image.norm_squared(), rat(2));
    }

    #[test]
    fn reflection_matrix_matches_vector_form() {
        let s = RegularSimplex::new(4).unwrap();
        let u = CartVector::new(vec![rat(3), rat(-1), rat(2), rat(-5), rat(1)]).unwrap();
        for j in 0..=4 {
            let via_matrix = s.reflection_matrix(j).mul_vec(u.comps()).unwrap();
            assert_eq!(via_matrix, s.reflect_vector(j, &u).unwrap().0);
        }
    }

    #[test]
    fn permutations() {
        let p = bp(&[0, 3, 4, 3]);
        assert_eq!(apply_permutation(&Permutation::identity(4), &p).unwrap(), p);
        assert_eq!(
            apply_permutation(&Permutation::cyclic_shift(4, 1), &p).unwrap(),
            bp(&[3, 0, 3, 4])
        );
        assert_eq!(
            apply_permutation(&Permutation::transposition(4, 1, 2), &p).unwrap(),
            bp(&[0, 4, 3, 3])
        );
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert_eq!(Permutation::all(4).len(), 24);
        let sigma = Permutation::new(vec![2, 0, 3, 1]).unwrap();
        assert_eq!(sigma.compose(&sigma.inverse()), Permutation::identity(4));
    }

    #[test]
    fn interior_test() {
        assert!(face_interior_test(&bp(&[0, 2, 2]), 0));
        assert!(!face_interior_test(&bp(&[1, 0, 0]), 1));
        assert!(face_interior_test(&bp(&[2, 0, 6]), 1));
        assert!(!face_interior_test(&bp(&[2, 0, 6]), 0));
        assert!(!face_interior_test(&bp(&[2, 0, 6]), 7));
    }
}
