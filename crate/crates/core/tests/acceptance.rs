//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use simplex_billiards::exactla::{proportional, rat, Rat};
use simplex_billiards::families::{
    family_word, m_point, p_point, r_point, second_family_face_products, verify_orbit, FamilyKind,
    OrbitFamily,
};
use simplex_billiards::finder::{compose, solve_periodic, stability_check};
use simplex_billiards::hull::{hull_report, parallel_facet_pairs, qn_points, PointSet};
use simplex_billiards::simplex::{
    apply_permutation, BaryPoint, CartVector, Permutation, RegularSimplex,
};
use simplex_billiards::tracer::{
    euclidean_distance, family_state, float_trace, trace, BilliardWord, FloatState,
};

const PROPERTY_CASES: u32 = 1000;

struct Verdict {
    pass: bool,
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict {
            pass: true,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.notes.push(what.into());
        }
    }

    fn within(&mut self, elapsed: Duration, limit: Duration) {
        self.check(
            elapsed < limit,
            format!("took {elapsed:.2?}, limit {limit:.0?}"),
        );
    }
}

fn closure_criterion(kind: FamilyKind, limit: Duration) -> Verdict {
    let mut v = Verdict::new();
    let start_time = Instant::now();
    for n in 2..=10 {
        let simplex = RegularSimplex::new(n).unwrap();
        let start = family_state(kind, n).unwrap();
        let word = family_word(kind, n);
        match trace(&simplex, &start, word.len()) {
            Ok(r) => {
                v.check(r.word.labels() == word, format!("n={n}: coding {}", r.word));
                v.check(
                    r.final_state.point == start.point
                        && r.final_state.face == start.face
                        && r.final_state.direction == start.direction,
                    format!("n={n}: final state differs from the start"),
                );
                v.check(
                    r.closures == [word.len()],
                    format!("n={n}: closures {:?}", r.closures),
                );
            }
            Err(e) => v.check(false, format!("n={n}: {e}")),
        }
    }
    v.within(start_time.elapsed(), limit);
    v
}

fn criterion_1() -> Verdict {
    closure_criterion(FamilyKind::First, Duration::from_secs(1))
}

fn criterion_2() -> Verdict {
    closure_criterion(FamilyKind::Second, Duration::from_secs(2))
}

fn criterion_3() -> Verdict {
    let mut v = Verdict::new();
    let table: [(&str, usize, Vec<i64>); 12] = [
        ("m_0", 2, vec![0, 2, 2]),
        ("m_0", 3, vec![0, 3, 4, 3]),
        ("m_0", 4, vec![0, 2, 3, 3, 2]),
        ("m_0", 5, vec![0, 5, 8, 9, 8, 5]),
        ("p_1", 2, vec![0, 4, 4]),
        ("p_1", 3, vec![0, 9, 17, 9]),
        ("p_1", 4, vec![0, 16, 36, 36, 16]),
        ("p_1", 5, vec![0, 25, 61, 73, 61, 25]),
        ("r_1", 2, vec![2, 0, 6]),
        ("r_1", 3, vec![3, 0, 16, 16]),
        ("r_1", 4, vec![4, 0, 30, 40, 30]),
        ("r_1", 5, vec![5, 0, 48, 72, 72, 48]),
    ];
    for (name, n, coords) in &table {
        let expected = BaryPoint::from_ints(coords).unwrap();
        let got = match *name {
            "m_0" => m_point(*n, 0),
            "p_1" => p_point(*n, 1),
            _ => r_point(*n, 1),
        };
        v.check(
            got == expected,
            format!("{name}(n={n}) = {got}, expected {expected}"),
        );
    }
    v
}

/// Midpoint through normalized Cartesian coordinates.
fn cart_midpoint(a: &BaryPoint, b: &BaryPoint) -> BaryPoint {
    let (a, b) = (a.to_cart(), b.to_cart());
    let mid: Vec<Rat> = a
        .coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| (x + y) / rat(2))
        .collect();
    BaryPoint::from_rats(&mid).unwrap()
}

fn criterion_4() -> Verdict {
    let mut v = Verdict::new();
    for n in 2..=12 {
        let s = RegularSimplex::new(n).unwrap();
        let m_n_mirror = s.reflect_point(0, &m_point(n, n)).unwrap();
        v.check(
            cart_midpoint(&m_point(n, 1), &m_n_mirror) == m_point(n, 0),
            format!("n={n}: m_0 = (m_1 + m'_n)/2"),
        );
        let r_n_mirror = s.reflect_point(0, &r_point(n, n)).unwrap();
        v.check(
            cart_midpoint(&r_point(n, 1), &r_n_mirror) == p_point(n, 1),
            format!("n={n}: p_1 = (r_1 + r'_n)/2"),
        );
        let p_2_mirror = s.reflect_point(1, &p_point(n, 2)).unwrap();
        v.check(
            cart_midpoint(&p_point(n, 1), &p_2_mirror) == r_point(n, 1),
            format!("n={n}: r_1 = (p_1 + p'_2)/2"),
        );
    }
    v
}

fn criterion_5() -> Verdict {
    let mut v = Verdict::new();
    for n in 3..=8 {
        let s = RegularSimplex::new(n).unwrap();
        let word = BilliardWord::new((0..=n).collect());
        match solve_periodic(&s, &word) {
            Ok(set) => {
                v.check(
                    set.family_dim == 0,
                    format!("n={n}: dimension {}", set.family_dim),
                );
                v.check(
                    set.base.as_ref() == Some(&m_point(n, 0)),
                    format!(
                        "n={n}: base {:?}",
                        set.base.as_ref().map(ToString::to_string)
                    ),
                );
            }
            Err(e) => v.check(false, format!("n={n}: {e}")),
        }
    }
    let s = RegularSimplex::new(2).unwrap();
    match solve_periodic(&s, &"0102".parse().unwrap()) {
        Ok(set) => v.check(
            set.family_dim == 1,
            format!("0102: dimension {}", set.family_dim),
        ),
        Err(e) => v.check(false, format!("0102: {e}")),
    }
    v
}

/// The segment hitting face i is perpendicular to that face: zero inner
/// product with the edge of face i, parallel to the face normal.
fn criterion_6() -> Verdict {
    let mut v = Verdict::new();
    let s = RegularSimplex::new(2).unwrap();
    for face in 1..=2 {
        let products = second_family_face_products(2, face).unwrap();
        v.check(
            products.iter().all(Zero::is_zero),
            format!("face {face}: edge products {products:?}"),
        );
        let dir = p_point(2, face).to_cart().diff(&r_point(2, face).to_cart());
        v.check(
            proportional(dir.comps(), s.face_normal(face).comps()),
            format!("face {face}: segment not parallel to the face normal"),
        );
    }
    v
}

fn criterion_7() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();

    let q2 = hull_report(&qn_points(2)).unwrap();
    v.check(
        q2.vertex_count() == 1 && q2.affine_dim == 0,
        "Q_2 is not a single point",
    );

    let q3 = hull_report(&qn_points(3)).unwrap();
    v.check(
        q3.f_vector == [3, 3],
        format!("Q_3 f-vector {:?}", q3.f_vector),
    );
    v.check(q3.edges_equal(), "Q_3 edges differ");

    let q4 = hull_report(&qn_points(4)).unwrap();
    v.check(
        q4.f_vector == [6, 12, 8],
        format!("Q_4 f-vector {:?}", q4.f_vector),
    );
    v.check(
        q4.facet_sizes().iter().all(|&k| k == 3),
        "Q_4 facets not all triangles",
    );
    let pairs = parallel_facet_pairs(&q4).len();
    v.check(pairs == 4, format!("Q_4 has {pairs} parallel facet pairs"));

    let q5 = hull_report(&qn_points(5)).unwrap();
    v.check(
        q5.vertex_count() == 30,
        format!("Q_5 has {} vertices", q5.vertex_count()),
    );
    let three_faces = q5.f_vector.get(3).copied().unwrap_or(0);
    v.check(
        three_faces == 15,
        format!("Q_5 has {three_faces} three-dimensional faces, expected 15"),
    );

    let a = hull_report(&PointSet::permutations_of(&[5, 5, 8, 8])).unwrap();
    v.check(
        a.f_vector == [6, 12, 8],
        format!("(5,5,8,8) f-vector {:?}", a.f_vector),
    );
    let b = hull_report(&PointSet::permutations_of(&[5, 8, 8, 9])).unwrap();
    v.check(
        b.f_vector == [12, 24, 14],
        format!("(5,8,8,9) f-vector {:?}", b.f_vector),
    );
    let c = hull_report(&PointSet::permutations_of(&[5, 5, 8, 9])).unwrap();
    let sizes: BTreeSet<usize> = c.facet_sizes().into_iter().collect();
    v.check(
        sizes == BTreeSet::from([3, 6]),
        format!("(5,5,8,9) facet sizes {sizes:?}"),
    );

    v.within(start.elapsed(), Duration::from_secs(60));
    v
}

fn criterion_8() -> Verdict {
    let mut v = Verdict::new();
    let s = RegularSimplex::new(3).unwrap();
    for w in ["0123", "010203"] {
        let stable = stability_check(&s, &w.parse().unwrap());
        v.check(stable == Ok(true), format!("{w}: {stable:?}"));
    }
    v
}

fn criterion_9() -> Verdict {
    let mut v = Verdict::new();
    for n in 2..=8 {
        let s = RegularSimplex::new(n).unwrap();
        for kind in [FamilyKind::First, FamilyKind::Second] {
            let start = family_state(kind, n).unwrap();
            let steps = family_word(kind, n).len();
            let exact = trace(&s, &start, steps).unwrap();
            match float_trace(n, &FloatState::from_exact(&start), steps) {
                Ok(f) => {
                    let end = FloatState::from_exact(&exact.final_state);
                    let d = euclidean_distance(&end.point, &f.final_state.point);
                    v.check(d < 1e-9, format!("n={n} {kind}: deviation {d:e}"));
                    v.check(
                        f.word == exact.word,
                        format!("n={n} {kind}: codings differ"),
                    );
                }
                Err(e) => v.check(false, format!("n={n} {kind}: {e}")),
            }
        }
    }
    v
}

fn runner() -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases: PROPERTY_CASES,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn record<T: std::fmt::Debug>(
    v: &mut Verdict,
    name: &str,
    result: Result<(), proptest::test_runner::TestError<T>>,
) {
    if let Err(e) = result {
        v.check(false, format!("{name}: {e}"));
    }
}

/// Plane through three integer points, normalized so that all points satisfy
/// `a·x ≤ b` and the first nonzero entry of `a` is ±1; `None` unless the
/// plane supports the set.
fn oracle_plane(pts: &[[i64; 3]], i: usize, j: usize, k: usize) -> Option<(Vec<Rat>, Rat)> {
    let (p, q, r) = (pts[i], pts[j], pts[k]);
    let u = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
    let w = [r[0] - p[0], r[1] - p[1], r[2] - p[2]];
    let mut a = [
        u[1] * w[2] - u[2] * w[1],
        u[2] * w[0] - u[0] * w[2],
        u[0] * w[1] - u[1] * w[0],
    ];
    if a == [0, 0, 0] {
        return None;
    }
    let side = |x: &[i64; 3], a: &[i64; 3]| {
        a[0] * (x[0] - p[0]) + a[1] * (x[1] - p[1]) + a[2] * (x[2] - p[2])
    };
    let pos = pts.iter().any(|x| side(x, &a) > 0);
    let neg = pts.iter().any(|x| side(x, &a) < 0);
    if pos && neg {
        return None;
    }
    if pos {
        a = [-a[0], -a[1], -a[2]];
    }
    let lead = a.iter().find(|x| **x != 0).unwrap().abs();
    let normal: Vec<Rat> = a.iter().map(|&x| Rat::new(x.into(), lead.into())).collect();
    let offset = normal
        .iter()
        .zip(p)
        .fold(Rat::zero(), |acc, (c, x)| acc + c * rat(x));
    Some((normal, offset))
}

fn criterion_10() -> Verdict {
    let mut v = Verdict::new();

    // reflection involution on points and vectors
    let strat = (2usize..=7).prop_flat_map(|n| {
        (
            Just(n),
            0..=n,
            proptest::collection::vec(1i64..60, n + 1),
            proptest::collection::vec(-20i64..20, n),
        )
    });
    let res = runner().run(&strat, |(n, j, coords, dir)| {
        let s = RegularSimplex::new(n).unwrap();
        let p = BaryPoint::from_ints(&coords).unwrap();
        let twice = s
            .reflect_point(j, &s.reflect_point(j, &p).unwrap())
            .unwrap();
        prop_assert_eq!(&twice, &p);
        let mut comps: Vec<Rat> = dir.iter().map(|&x| rat(x)).collect();
        comps.push(-dir.iter().map(|&x| rat(x)).fold(Rat::zero(), |a, b| a + b));
        let u = CartVector::new(comps).unwrap();
        let back = s
            .reflect_vector(j, &s.reflect_vector(j, &u).unwrap())
            .unwrap();
        prop_assert_eq!(back, u);
        Ok(())
    });
    record(&mut v, "reflection involution", res);

    // relabeled family orbits still satisfy every identity
    let strat = (2usize..=8, any::<bool>()).prop_flat_map(|(n, second)| {
        (
            Just(n),
            Just(second),
            Just((0..=n).collect::<Vec<usize>>()).prop_shuffle(),
        )
    });
    let res = runner().run(&strat, |(n, second, images)| {
        let s = RegularSimplex::new(n).unwrap();
        let kind = if second {
            FamilyKind::Second
        } else {
            FamilyKind::First
        };
        let family = OrbitFamily::new(kind, n).unwrap();
        let sigma = Permutation::new(images).unwrap();
        let points: Vec<BaryPoint> = family
            .points
            .iter()
            .map(|p| apply_permutation(&sigma, p).unwrap())
            .collect();
        let faces: Vec<usize> = family
            .faces()
            .iter()
            .map(|&f| sigma.apply_label(f))
            .collect();
        let report = verify_orbit(&s, &faces, &points).unwrap();
        prop_assert!(report.passed(), "failures: {:?}", report.failures());
        Ok(())
    });
    record(&mut v, "permutation equivariance", res);

    // S_v is orthogonal and preserves the zero-sum subspace
    let strat = (2usize..=5).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec((0..=n, 1..=n), 1..8),
            proptest::collection::vec(-9i64..10, n),
        )
    });
    let res = runner().run(&strat, |(n, steps, dir)| {
        // each step moves to a different label, so no letter repeats
        let mut labels = vec![steps[0].0];
        for &(_, jump) in &steps {
            let last = *labels.last().unwrap();
            labels.push((last + jump) % (n + 1));
        }
        let s = RegularSimplex::new(n).unwrap();
        let composed = compose(&s, &BilliardWord::new(labels)).unwrap();
        let l = &composed.linear;
        prop_assert!(l.transpose().mul(l).unwrap().is_identity());
        let mut comps: Vec<Rat> = dir.iter().map(|&x| rat(x)).collect();
        comps.push(-dir.iter().map(|&x| rat(x)).fold(Rat::zero(), |a, b| a + b));
        let u = CartVector::new(comps).unwrap();
        let image = l.mul_vec(u.comps()).unwrap();
        let image = CartVector::new(image);
        prop_assert!(image.is_ok(), "image left the zero-sum subspace");
        prop_assert_eq!(image.unwrap().norm_squared(), u.norm_squared());
        Ok(())
    });
    record(&mut v, "S_v orthogonality", res);

    // hull facets against an independent cross-product oracle
    let strat = proptest::collection::vec(proptest::array::uniform3(0i64..=5), 10);
    let res = runner().run(&strat, |raw| {
        let mut seen = BTreeSet::new();
        let pts: Vec<[i64; 3]> = raw.into_iter().filter(|p| seen.insert(*p)).collect();
        let ps = PointSet::from_ints(&pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap();
        let report = hull_report(&ps).unwrap();
        prop_assume!(report.affine_dim == 3);
        let mut oracle = BTreeSet::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    if let Some(plane) = oracle_plane(&pts, i, j, k) {
                        oracle.insert(plane);
                    }
                }
            }
        }
        let reported: BTreeSet<(Vec<Rat>, Rat)> = report
            .facet_normals
            .iter()
            .cloned()
            .zip(report.facet_offsets.iter().cloned())
            .collect();
        prop_assert_eq!(&reported, &oracle);
        prop_assert!(report.facets_are_supporting());
        prop_assert_eq!(report.euler_characteristic(), Some(2));
        for facet in &report.facets {
            prop_assert!(facet.len() >= 3);
        }
        Ok(())
    });
    record(&mut v, "hull oracle", res);

    v
}

fn main() {
    type Criterion = (&'static str, fn() -> Verdict);
    let criteria: [Criterion; 10] = [
        ("exact closure, first family, n = 2..10", criterion_1),
        ("exact closure, second family, n = 2..10", criterion_2),
        ("coordinate fixtures m_0, p_1, r_1, n = 2..5", criterion_3),
        ("proof identities, n = 2..12", criterion_4),
        ("finder rediscovery", criterion_5),
        ("n = 2 segments perpendicular to edges 1 and 2", criterion_6),
        ("hull propositions Q_2..Q_5", criterion_7),
        ("stability of 0123 and 010203 in dimension 3", criterion_8),
        ("float tracer within 1e-9 of exact, n <= 8", criterion_9),
        ("property suites, 1000 cases each", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let status = if verdict.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2}: {status}  {name}  ({:.2?})",
            k + 1,
            start.elapsed()
        );
        for note in &verdict.notes {
            println!("    {note}");
        }
        if !verdict.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
