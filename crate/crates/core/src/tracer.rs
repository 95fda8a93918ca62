//! Billiard flow inside Δⁿ.
//!
//! The exact tracer moves along `x + t·u` in normalized Cartesian
//! coordinates, finds the first face with `xⱼ + t·uⱼ = 0`, and reflects the
//! direction there. Directions are never normalized, so every quantity stays
//! rational. A second tracer runs the same algorithm in `f64` and serves as an
//! independent cross-check.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::exactla::Rat;
use crate::simplex::{
    face_interior_test, BaryPoint, CartVector, FaceLabel, RegularSimplex, SimplexError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TracerError {
    #[error("invalid billiard state: {0}")]
    InvalidState(&'static str),
    #[error("singular orbit at step {step}: faces {faces:?} are hit simultaneously")]
    Singular { step: usize, faces: Vec<FaceLabel> },
    #[error("direction at step {step} never leaves the simplex")]
    NoExit { step: usize },
    #[error(transparent)]
    Simplex(#[from] SimplexError),
}

impl TracerError {
    fn at_step(self, step: usize) -> Self {
        match self {
            TracerError::Singular { faces, .. } => TracerError::Singular { step, faces },
            TracerError::NoExit { .. } => TracerError::NoExit { step },
            other => other,
        }
    }
}

/// Finite sequence of face labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BilliardWord(Vec<FaceLabel>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("invalid label {0:?}")]
    BadLabel(String),
    #[error("label {label} out of range for dimension {n}")]
    OutOfRange { label: FaceLabel, n: usize },
    #[error("labels at positions {0} and {1} are equal and consecutive")]
    RepeatedLabel(usize, usize),
}

impl BilliardWord {
    pub fn new(labels: Vec<FaceLabel>) -> Self {
        Self(labels)
    }

    pub fn labels(&self) -> &[FaceLabel] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// First pair of cyclically consecutive equal labels, if any.
    pub fn repeated_label(&self) -> Option<(usize, usize)> {
        let len = self.0.len();
        if len < 2 {
            return None;
        }
        (0..len)
            .map(|i| (i, (i + 1) % len))
            .find(|&(i, j)| self.0[i] == self.0[j])
    }

    /// Nonempty, labels in `0..=n`, no cyclically consecutive repeats.
    pub fn validate(&self, n: usize) -> Result<(), WordError> {
        if self.0.is_empty() {
            return Err(WordError::Empty);
        }
        if let Some(&label) = self.0.iter().find(|&&l| l > n) {
            return Err(WordError::OutOfRange { label, n });
        }
        if let Some((i, j)) = self.repeated_label() {
            return Err(WordError::RepeatedLabel(i, j));
        }
        Ok(())
    }

    pub fn rotated(&self, k: usize) -> BilliardWord {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        BilliardWord(v)
    }

    pub fn reversed(&self) -> BilliardWord {
        BilliardWord(self.0.iter().rev().copied().collect())
    }
}

impl From<Vec<FaceLabel>> for BilliardWord {
    fn from(v: Vec<FaceLabel>) -> Self {
        Self(v)
    }
}

/// Either one digit per label (`"0102"`) or comma-separated labels
/// (`"0,10,0,11"`).
impl FromStr for BilliardWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(WordError::Empty);
        }
        let labels = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| WordError::BadLabel(t.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| WordError::BadLabel(c.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        Ok(Self(labels))
    }
}

impl fmt::Display for BilliardWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&l| l < 10) {
            for l in &self.0 {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for BilliardWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BilliardWord({self})")
    }
}

/// A boundary point together with the direction leaving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilliardState {
    pub point: BaryPoint,
    pub face: FaceLabel,
    pub direction: CartVector,
}

impl BilliardState {
    /// Checks that `point` is interior to `face` and that `direction` points
    /// into the simplex.
    pub fn new(
        simplex: &RegularSimplex,
        point: BaryPoint,
        face: FaceLabel,
        direction: CartVector,
    ) -> Result<Self, TracerError> {
        simplex.check_label(face)?;
        if point.len() != simplex.vertex_count()
            || direction.comps().len() != simplex.vertex_count()
        {
            return Err(SimplexError::DimensionMismatch {
                expected: simplex.vertex_count(),
                found: point.len(),
            }
            .into());
        }
        if !face_interior_test(&point, face) {
            return Err(TracerError::InvalidState(
                "point is not interior to its face",
            ));
        }
        if !direction.comps()[face].is_positive() {
            return Err(TracerError::InvalidState(
                "direction does not enter the simplex",
            ));
        }
        Ok(Self {
            point,
            face,
            direction,
        })
    }

    /// Same point and face, direction equal up to a positive factor.
    pub fn same_state(&self, other: &BilliardState) -> bool {
        self.face == other.face
            && self.point == other.point
            && self.direction.same_direction(&other.direction)
    }
}

/// Advance to the next face hit.
pub fn step(simplex: &RegularSimplex, st: &BilliardState) -> Result<BilliardState, TracerError> {
    let x = simplex.bary_to_cart(&st.point)?;
    let u = st.direction.comps();
    let mut best: Option<(Rat, Vec<FaceLabel>)> = None;
    for (j, uj) in u.iter().enumerate() {
        if !uj.is_negative() {
            continue;
        }
        let t = -(&x.coords()[j]) / uj;
        match &mut best {
            None => best = Some((t, vec![j])),
            Some((bt, faces)) => {
                if t < *bt {
                    *bt = t;
                    *faces = vec![j];
                } else if t == *bt {
                    faces.push(j);
                }
            }
        }
    }
    let Some((t, faces)) = best else {
        return Err(TracerError::NoExit { step: 0 });
    };
    if faces.len() > 1 {
        return Err(TracerError::Singular { step: 0, faces });
    }
    let exit = faces[0];
    let hit = x.translate(&st.direction, &t);
    let point = simplex.cart_to_bary(&hit)?;
    let direction = simplex.reflect_vector(exit, &st.direction)?;
    Ok(BilliardState {
        point,
        face: exit,
        direction,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceResult {
    /// States visited before each step, starting with the initial state.
    pub states: Vec<BilliardState>,
    /// Face label of each visited state.
    pub word: BilliardWord,
    /// State after the last step.
    pub final_state: BilliardState,
    /// `final_state` equals the initial state.
    pub closed: bool,
    /// Step counts after which the trajectory was back at the initial state.
    pub closures: Vec<usize>,
}

pub fn trace(
    simplex: &RegularSimplex,
    start: &BilliardState,
    steps: usize,
) -> Result<TraceResult, TracerError> {
    if steps == 0 {
        return Err(TracerError::InvalidState("at least one step is required"));
    }
    let mut states = Vec::with_capacity(steps);
    let mut closures = Vec::new();
    let mut current = start.clone();
    for k in 0..steps {
        let next = step(simplex, &current).map_err(|e| e.at_step(k))?;
        states.push(current);
        if next.same_state(start) {
            closures.push(k + 1);
        }
        current = next;
    }
    let word = BilliardWord(states.iter().map(|s| s.face).collect());
    Ok(TraceResult {
        closed: closures.last() == Some(&steps),
        states,
        word,
        final_state: current,
        closures,
    })
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FloatTraceError {
    #[error("singular orbit at step {step}: faces {faces:?} are hit within tolerance")]
    Singular { step: usize, faces: Vec<FaceLabel> },
    #[error("direction at step {step} never leaves the simplex")]
    NoExit { step: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FloatState {
    pub point: Vec<f64>,
    pub face: FaceLabel,
    pub direction: Vec<f64>,
}

impl FloatState {
    pub fn from_exact(st: &BilliardState) -> Self {
        let point = st
            .point
            .to_cart()
            .coords()
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect();
        let direction = st
            .direction
            .comps()
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect();
        Self {
            point,
            face: st.face,
            direction,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FloatTraceResult {
    pub states: Vec<FloatState>,
    pub word: BilliardWord,
    pub final_state: FloatState,
}

/// Relative tolerance for treating two exit times as equal.
pub const FLOAT_TIE_TOLERANCE: f64 = 1e-12;

/// Floating-point counterpart of [`trace`]; used only for cross-checks.
pub fn float_trace(
    n: usize,
    start: &FloatState,
    steps: usize,
) -> Result<FloatTraceResult, FloatTraceError> {
    let inv_n = 1.0 / n as f64;
    let nu_sq = 1.0 + inv_n;
    let mut states = Vec::with_capacity(steps);
    let mut current = start.clone();
    for k in 0..steps {
        let mut best: Option<(f64, FaceLabel)> = None;
        let mut ties = Vec::new();
        for (j, &uj) in current.direction.iter().enumerate() {
            if j == current.face || uj >= 0.0 {
                continue;
            }
            let t = -current.point[j] / uj;
            match best {
                None => {
                    best = Some((t, j));
                    ties = vec![j];
                }
                Some((bt, _)) => {
                    let scale = bt.abs().max(t.abs()).max(1.0);
                    if (t - bt).abs() <= FLOAT_TIE_TOLERANCE * scale {
                        ties.push(j);
                        if t < bt {
                            best = Some((t, j));
                        }
                    } else if t < bt {
                        best = Some((t, j));
                        ties = vec![j];
                    }
                }
            }
        }
        let Some((t, exit)) = best else {
            return Err(FloatTraceError::NoExit { step: k });
        };
        if ties.len() > 1 {
            return Err(FloatTraceError::Singular {
                step: k,
                faces: ties,
            });
        }
        let mut point: Vec<f64> = current
            .point
            .iter()
            .zip(&current.direction)
            .map(|(x, u)| x + t * u)
            .collect();
        point[exit] = 0.0;
        // u − 2(⟨u,ν⟩/⟨ν,ν⟩)ν with ν = e_exit − (1/n)Σ_{i≠exit} eᵢ
        let u = &current.direction;
        let others: f64 = u
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != exit)
            .map(|(_, v)| v)
            .sum();
        let dot = u[exit] - inv_n * others;
        let c = 2.0 * dot / nu_sq;
        let direction = u
            .iter()
            .enumerate()
            .map(|(i, v)| if i == exit { v - c } else { v + c * inv_n })
            .collect();
        let next = FloatState {
            point,
            face: exit,
            direction,
        };
        states.push(std::mem::replace(&mut current, next));
    }
    let word = BilliardWord(states.iter().map(|s| s.face).collect());
    Ok(FloatTraceResult {
        states,
        word,
        final_state: current,
    })
}

pub fn euclidean_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Proof that a state traces a periodic orbit with a given fundamental word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCertificate {
    pub word: BilliardWord,
    pub start: BilliardState,
    /// Canonical boundary points in word order.
    pub points: Vec<BaryPoint>,
    /// Direction leaving each boundary point.
    pub directions: Vec<CartVector>,
    /// Step count after which the state first recurs (= word length).
    pub period: usize,
    /// Proper divisors of the period at which the state was checked not to recur.
    pub checked_divisors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("not periodic: empty word")]
    EmptyWord,
    #[error("not periodic: labels at positions {0} and {1} are consecutive and equal")]
    RepeatedLabel(usize, usize),
    #[error("not periodic: start state lies on face {found}, word starts with {expected}")]
    StartFaceMismatch {
        expected: FaceLabel,
        found: FaceLabel,
    },
    #[error("not periodic: step {step} hits face {found}, word expects {expected}")]
    CodingMismatch {
        step: usize,
        expected: FaceLabel,
        found: FaceLabel,
    },
    #[error("not periodic: trajectory does not close after {0} steps")]
    NotClosed(usize),
    #[error("not periodic: trajectory already closes after {0} steps")]
    NotMinimal(usize),
    #[error("not periodic: {0}")]
    Trace(#[from] TracerError),
}

/// Check that `start` traces `word` and closes after exactly `|word|` steps,
/// with `|word|` minimal among step counts dividing it.
pub fn certify_periodic(
    simplex: &RegularSimplex,
    word: &BilliardWord,
    start: &BilliardState,
) -> Result<OrbitCertificate, CertifyError> {
    if word.is_empty() {
        return Err(CertifyError::EmptyWord);
    }
    if let Some((i, j)) = word.repeated_label() {
        return Err(CertifyError::RepeatedLabel(i, j));
    }
    let labels = word.labels();
    if labels[0] != start.face {
        return Err(CertifyError::StartFaceMismatch {
            expected: labels[0],
            found: start.face,
        });
    }
    let len = labels.len();
    let result = trace(simplex, start, len)?;
    for (k, st) in result.states.iter().enumerate() {
        if st.face != labels[k] {
            return Err(CertifyError::CodingMismatch {
                step: k,
                expected: labels[k],
                found: st.face,
            });
        }
    }
    if !result.closed {
        return Err(CertifyError::NotClosed(len));
    }
    let checked_divisors: Vec<usize> = (1..len).filter(|d| len.is_multiple_of(*d)).collect();
    if let Some(&d) = checked_divisors
        .iter()
        .find(|d| result.closures.contains(d))
    {
        return Err(CertifyError::NotMinimal(d));
    }
    Ok(OrbitCertificate {
        word: word.clone(),
        start: start.clone(),
        points: result.states.iter().map(|s| s.point.clone()).collect(),
        directions: result.states.iter().map(|s| s.direction.clone()).collect(),
        period: len,
        checked_divisors,
    })
}

/// Direction from `from` to `to` in Cartesian coordinates.
pub fn direction_between(from: &BaryPoint, to: &BaryPoint) -> CartVector {
    to.to_cart().diff(&from.to_cart())
}

/// Starting state of a closed orbit given by its boundary points: first point,
/// its face, and the direction towards the second point.
pub fn state_from_points(
    simplex: &RegularSimplex,
    points: &[BaryPoint],
    faces: &[FaceLabel],
) -> Result<BilliardState, TracerError> {
    if points.len() < 2 || faces.is_empty() {
        return Err(TracerError::InvalidState(
            "need at least two boundary points",
        ));
    }
    BilliardState::new(
        simplex,
        points[0].clone(),
        faces[0],
        direction_between(&points[0], &points[1]),
    )
}

/// Start state of a family orbit (closed-form points, first segment).
pub fn family_state(
    kind: crate::families::FamilyKind,
    n: usize,
) -> Result<BilliardState, TracerError> {
    let simplex = RegularSimplex::new(n)?;
    let family = crate::families::OrbitFamily::new(kind, n)?;
    state_from_points(&simplex, &family.points, &family.faces())
}

/// Squared norm of every direction along a trace; constant for a valid trace.
pub fn direction_norms(result: &TraceResult) -> Vec<Rat> {
    result
        .states
        .iter()
        .chain(std::iter::once(&result.final_state))
        .map(|s| s.direction.norm_squared())
        .collect()
}
