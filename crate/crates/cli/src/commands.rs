use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};
use simplex_billiards::exactla::Rat;
use simplex_billiards::families::{
    corollary_predicate, second_family_face_products, second_family_reverse_identity,
    verify_first_family, verify_second_family, FamilyKind, OrbitFamily, VerificationReport,
};
use simplex_billiards::finder::{
    fixed_directions, solve_periodic, stability_check, symmetry_orbit_count, FinderError,
};
use simplex_billiards::hull::{
    hull_report, parallel_facet_pairs, qn_points, second_family_face_closure,
    second_family_face_points, similarity, to_off, HullReport, PointSet, MAX_HULL_DIM,
};
use simplex_billiards::simplex::{BaryPoint, CartVector, RegularSimplex};
use simplex_billiards::tracer::{family_state, trace, BilliardState, BilliardWord, TracerError};

use crate::render::{self, decimal_tuple, pass, tuple};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_SINGULAR: i32 = 4;
pub const EXIT_DIMENSION: i32 = 5;

/// Largest n for which the brute-force symmetry count is attempted.
const SYMMETRY_COUNT_MAX_N: usize = 6;

pub struct Outcome {
    pub code: i32,
    pub json: Value,
    pub text: String,
    pub csv: Option<String>,
    pub off: Option<String>,
}

impl Outcome {
    fn new(
        command: &str,
        n: usize,
        word: Option<String>,
        status: &str,
        results: Vec<Value>,
    ) -> Self {
        Outcome {
            code: EXIT_OK,
            json: json!({
                "command": command,
                "n": n,
                "word": word,
                "exact": true,
                "status": status,
                "results": results,
            }),
            text: String::new(),
            csv: None,
            off: None,
        }
    }

    pub fn input_error(command: &str, n: usize, message: String) -> Self {
        let mut out = Outcome::new(command, n, None, "ERROR", Vec::new());
        out.json["error"] = json!(message);
        out.text = String::new();
        out.code = EXIT_INPUT;
        out
    }
}

fn simplex_or_error(command: &str, n: usize) -> Result<RegularSimplex, Box<Outcome>> {
    RegularSimplex::new(n).map_err(|e| Box::new(Outcome::input_error(command, n, e.to_string())))
}

fn point_name(kind: FamilyKind, idx: usize) -> String {
    match kind {
        FamilyKind::First => format!("m_{idx}"),
        FamilyKind::Second => {
            let letter = if idx.is_multiple_of(2) { 'p' } else { 'r' };
            format!("{letter}_{}", idx / 2 + 1)
        }
    }
}

fn verify(kind: FamilyKind, n: usize) -> VerificationReport {
    match kind {
        FamilyKind::First => verify_first_family(n),
        FamilyKind::Second => verify_second_family(n),
    }
    .expect("n already validated")
}

pub fn families(n: usize, kinds: &[FamilyKind]) -> Outcome {
    if let Err(e) = simplex_or_error("families", n) {
        return *e;
    }
    let mut results = Vec::new();
    let mut text = String::new();
    let mut all_pass = true;
    for &kind in kinds {
        let family = OrbitFamily::new(kind, n).expect("n already validated");
        let report = verify(kind, n);
        let names: Vec<String> = (0..family.points.len())
            .map(|i| point_name(kind, i))
            .collect();
        let word = BilliardWord::new(family.faces());

        let mut base = Vec::new();
        match kind {
            FamilyKind::First => {
                base.push((
                    "m_0 = (m_1 + m'_n)/2".to_string(),
                    report.identities[0].holds,
                ));
            }
            FamilyKind::Second => {
                base.push((
                    "p_1 = (r_1 + r'_n)/2".to_string(),
                    report.identities[0].holds,
                ));
                let reverse = second_family_reverse_identity(n).expect("n already validated");
                base.push(("r_1 = (p_1 + p'_2)/2".to_string(), reverse));
            }
        }
        let passed = report.passed() && base.iter().all(|(_, ok)| *ok);
        all_pass &= passed;

        let _ = writeln!(text, "{kind} family, n = {n}, word {word}");
        for (name, (p, face)) in names.iter().zip(family.points.iter().zip(family.faces())) {
            let _ = writeln!(text, "  {name} = {p}  face {face}");
        }
        for (c, name) in report.identities.iter().zip(&names) {
            let _ = writeln!(
                text,
                "  mirror identity at {name} (face {}): {}",
                c.face,
                pass(c.holds)
            );
        }
        for (c, name) in report.interior.iter().zip(&names) {
            let _ = writeln!(
                text,
                "  {name} interior to face {}: {}",
                c.face,
                pass(c.interior)
            );
        }
        for (label, ok) in &base {
            let _ = writeln!(text, "  {label}: {}", pass(*ok));
        }

        let points: Vec<Value> = names
            .iter()
            .zip(family.points.iter().zip(family.faces()))
            .map(|(name, (p, face))| {
                let mid = corollary_predicate(p, n);
                json!({
                    "name": name,
                    "face": face,
                    "point": render::point(p),
                    "midplanes": {
                        "pairs": mid.pairs,
                        "is_matching": mid.is_matching,
                        "unmatched": mid.unmatched,
                        "collinear_with_vertex": mid.collinear_with_vertex,
                    },
                })
            })
            .collect();
        let identities: Vec<Value> = report
            .identities
            .iter()
            .zip(&names)
            .map(|(c, name)| {
                json!({
                    "at": name,
                    "face": c.face,
                    "next": c.next.to_string(),
                    "mirrored_prev": c.mirrored_prev.to_string(),
                    "rescale": render::rat(&c.rescale),
                    "holds": c.holds,
                })
            })
            .collect();
        let interior: Vec<Value> = report
            .interior
            .iter()
            .zip(&names)
            .map(|(c, name)| json!({ "at": name, "face": c.face, "interior": c.interior }))
            .collect();
        let base_json: Vec<Value> = base
            .iter()
            .map(|(label, ok)| json!({ "identity": label, "holds": ok }))
            .collect();

        let mut entry = json!({
            "kind": kind.to_string(),
            "word": word.to_string(),
            "points": points,
            "identities": identities,
            "interior": interior,
            "proof_identities": base_json,
            "passed": passed,
        });
        if kind == FamilyKind::Second && n == 2 {
            let note = "extremal case: every interior point of edge 0 is a periodic point \
                        (1-parameter family)";
            let mut perp = Vec::new();
            for face in 1..=2 {
                let products = second_family_face_products(n, face).expect("valid face");
                let ok = products.iter().all(|x| x == &Rat::from_integer(0.into()));
                let _ = writeln!(
                    text,
                    "  segment r_{face} -> p_{face} perpendicular to edge {face}: {}",
                    pass(ok)
                );
                perp.push(json!({ "face": face, "edge_products": render::rats(&products), "perpendicular": ok }));
            }
            let _ = writeln!(text, "  note: {note}");
            entry["note"] = json!(note);
            entry["perpendicular_segments"] = json!(perp);
        }
        let _ = writeln!(text, "  result: {}", pass(passed));
        results.push(entry);
    }
    let word = match kinds {
        [kind] => {
            Some(BilliardWord::new(simplex_billiards::families::family_word(*kind, n)).to_string())
        }
        _ => None,
    };
    let status = pass(all_pass);
    let mut out = Outcome::new("families", n, word, status, results);
    out.text = text;
    if !all_pass {
        out.code = EXIT_VERIFICATION;
    }
    out
}

pub fn find(n: usize, word_text: &str) -> Outcome {
    let simplex = match simplex_or_error("find", n) {
        Ok(s) => s,
        Err(e) => return *e,
    };
    let word: BilliardWord = match word_text.parse() {
        Ok(w) => w,
        Err(e) => return Outcome::input_error("find", n, format!("invalid word: {e}")),
    };
    if let Err(e) = word.validate(n) {
        return Outcome::input_error("find", n, format!("invalid word: {e}"));
    }
    let word_str = Some(word.to_string());
    let stable = stability_check(&simplex, &word).ok();
    let fixed = fixed_directions(&simplex, &word).unwrap_or_default();
    let fixed_json: Vec<Value> = fixed.iter().map(render::vector).collect();

    let set = match solve_periodic(&simplex, &word) {
        Ok(set) => set,
        Err(FinderError::Infeasible(reason)) => {
            let mut out = Outcome::new(
                "find",
                n,
                word_str,
                "INFEASIBLE",
                vec![json!({
                    "status": "INFEASIBLE",
                    "reason": reason,
                    "fixed_directions": fixed_json,
                    "stable": stable,
                })],
            );
            out.text = format!("word {word} in dimension {n}: INFEASIBLE ({reason})\n");
            out.code = EXIT_INFEASIBLE;
            return out;
        }
        Err(e) => return Outcome::input_error("find", n, e.to_string()),
    };

    let status = if set.admissible_sample.is_some() {
        "CERTIFIED"
    } else if set.sample_singular {
        "SINGULAR"
    } else {
        "UNCERTIFIED"
    };
    let orbit_count = (n <= SYMMETRY_COUNT_MAX_N).then(|| symmetry_orbit_count(&word, n));
    let certificate = set.admissible_sample.as_ref().map(|c| {
        json!({
            "period": c.period,
            "checked_divisors": c.checked_divisors,
            "points": c.points.iter().map(render::point).collect::<Vec<_>>(),
            "directions": c.directions.iter().map(render::vector).collect::<Vec<_>>(),
        })
    });
    let result = json!({
        "status": status,
        "fixed_directions": fixed_json,
        "solution_dimension": set.family_dim,
        "particular": render::rats(set.particular.coords()),
        "parameters": set.parameters.iter().map(render::vector).collect::<Vec<_>>(),
        "base": set.base.as_ref().map(render::point),
        "arrival_direction": set.arrival_direction.as_ref().map(render::vector),
        "certificate": certificate,
        "failure": set.sample_failure,
        "stable": stable,
        "symmetry_orbit_count": orbit_count,
    });

    let mut text = String::new();
    let _ = writeln!(text, "word {word} in dimension {n}");
    for (k, u) in fixed.iter().enumerate() {
        let _ = writeln!(text, "  fixed direction {k}: {}", tuple(u.comps()));
    }
    let _ = writeln!(text, "  solution dimension: {}", set.family_dim);
    match &set.base {
        Some(b) => {
            let _ = writeln!(text, "  base point: {b}");
        }
        None => {
            let _ = writeln!(text, "  base point: none");
        }
    }
    let _ = writeln!(text, "  status: {status}");
    if let Some(reason) = &set.sample_failure {
        let _ = writeln!(text, "  reason: {reason}");
    }
    if let Some(s) = stable {
        let _ = writeln!(text, "  stable: {}", if s { "yes" } else { "no" });
    }
    if let Some(c) = orbit_count {
        let _ = writeln!(text, "  geometric orbits under relabeling: {c}");
    }

    let mut out = Outcome::new("find", n, word_str, status, vec![result]);
    out.text = text;
    if set.sample_singular {
        out.code = EXIT_SINGULAR;
    }
    out
}

pub enum TraceStart<'a> {
    Family(FamilyKind),
    Explicit { point: &'a str, direction: &'a str },
}

fn parse_rats(s: &str) -> Result<Vec<Rat>, String> {
    s.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<Rat>()
                .map_err(|_| format!("not a rational: {t:?}"))
        })
        .collect()
}

fn explicit_state(
    simplex: &RegularSimplex,
    point: &str,
    direction: &str,
) -> Result<BilliardState, String> {
    let coords = parse_rats(point)?;
    let p = BaryPoint::from_rats(&coords).map_err(|e| e.to_string())?;
    let zeros = p.zero_labels();
    let [face] = zeros[..] else {
        return Err(format!(
            "start point must lie in exactly one face, it has zero coordinates {zeros:?}"
        ));
    };
    let u = CartVector::new(parse_rats(direction)?).map_err(|e| e.to_string())?;
    BilliardState::new(simplex, p, face, u).map_err(|e| e.to_string())
}

pub fn trace_cmd(n: usize, start: TraceStart<'_>, steps: Option<usize>) -> Outcome {
    let simplex = match simplex_or_error("trace", n) {
        Ok(s) => s,
        Err(e) => return *e,
    };
    let (state, default_steps) = match start {
        TraceStart::Family(kind) => (
            family_state(kind, n).expect("n already validated"),
            Some(simplex_billiards::families::family_word(kind, n).len()),
        ),
        TraceStart::Explicit { point, direction } => {
            match explicit_state(&simplex, point, direction) {
                Ok(st) => (st, None),
                Err(e) => return Outcome::input_error("trace", n, e),
            }
        }
    };
    let Some(steps) = steps.or(default_steps) else {
        return Outcome::input_error(
            "trace",
            n,
            "--steps is required for an explicit start".into(),
        );
    };
    let result = match trace(&simplex, &state, steps) {
        Ok(r) => r,
        Err(TracerError::Singular { step, faces }) => {
            let mut out = Outcome::new(
                "trace",
                n,
                None,
                "SINGULAR",
                vec![json!({ "status": "SINGULAR", "step": step, "faces": faces })],
            );
            out.text = format!("singular hit at step {step}: faces {faces:?}\n");
            out.csv = Some("step,face,point,decimal,direction\n".to_string());
            out.code = EXIT_SINGULAR;
            return out;
        }
        Err(e) => return Outcome::input_error("trace", n, e.to_string()),
    };

    let states: Vec<&BilliardState> = result
        .states
        .iter()
        .chain(std::iter::once(&result.final_state))
        .collect();
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut csv = String::from("step,face,point,decimal,direction\n");
    for (k, st) in states.iter().enumerate() {
        let cart = st.point.to_cart();
        rows.push(json!({
            "step": k,
            "face": st.face,
            "point": render::point(&st.point),
            "direction": render::vector(&st.direction),
        }));
        let _ = writeln!(
            text,
            "{k:>4}  face {}  {}  {}",
            st.face,
            st.point,
            decimal_tuple(cart.coords())
        );
        let _ = writeln!(
            csv,
            "{k},{},\"{}\",\"{}\",\"{}\"",
            st.face,
            tuple(cart.coords()),
            decimal_tuple(cart.coords()),
            tuple(st.direction.comps())
        );
    }
    let _ = writeln!(text, "word {}", result.word);
    let _ = writeln!(
        text,
        "closed after {steps} steps: {}; returns to start after steps {:?}",
        if result.closed { "yes" } else { "no" },
        result.closures
    );
    let status = if result.closed { "CLOSED" } else { "OPEN" };
    let mut out = Outcome::new(
        "trace",
        n,
        Some(result.word.to_string()),
        status,
        vec![json!({
            "steps": steps,
            "closed": result.closed,
            "closures": result.closures,
            "states": rows,
        })],
    );
    out.text = text;
    out.csv = Some(csv);
    out
}

/// Affine dimension of the distinct permutations of a multiset.
fn permutation_dim(values: &[i64]) -> usize {
    if values.windows(2).all(|w| w[0] == w[1]) {
        0
    } else {
        values.len() - 1
    }
}

fn classify(r: &HullReport) -> String {
    let v = r.vertex_count();
    match (r.affine_dim, r.is_regular()) {
        (0, _) => "SINGLE POINT".into(),
        (1, _) => "SEGMENT".into(),
        (2, true) if v == 3 => "REGULAR TRIANGLE".into(),
        (2, true) => format!("REGULAR {v}-GON"),
        (2, false) => format!("{v}-GON"),
        (3, true) if v == 4 => "REGULAR TETRAHEDRON".into(),
        (3, true) if r.f_vector == [6, 12, 8] => "REGULAR OCTAHEDRON".into(),
        (3, true) if r.f_vector == [8, 12, 6] => "CUBE".into(),
        (3, _) => "POLYHEDRON".into(),
        (_, true) => "REGULAR 4-POLYTOPE".into(),
        _ => "4-POLYTOPE".into(),
    }
}

fn hull_json(r: &HullReport) -> Value {
    let mut facet_types: BTreeMap<usize, usize> = BTreeMap::new();
    for s in r.facet_sizes() {
        *facet_types.entry(s).or_default() += 1;
    }
    let mut lengths: BTreeMap<Rat, usize> = BTreeMap::new();
    for l in &r.squared_edge_lengths {
        *lengths.entry(l.clone()).or_default() += 1;
    }
    let parallel = (r.affine_dim == 3).then(|| parallel_facet_pairs(r));
    json!({
        "affine_dim": r.affine_dim,
        "f_vector": r.f_vector,
        "vertex_count": r.vertex_count(),
        "vertices": r.vertices.iter().map(|&v| tuple(&r.points[v])).collect::<Vec<_>>(),
        "facets": r.facets,
        "facet_types": facet_types
            .iter()
            .map(|(size, count)| json!({ "vertices": size, "count": count }))
            .collect::<Vec<_>>(),
        "squared_edge_lengths": lengths
            .iter()
            .map(|(l, count)| json!({ "length": render::rat(l), "count": count }))
            .collect::<Vec<_>>(),
        "edges_equal": r.edges_equal(),
        "distance_transitive": r.distance_transitive(),
        "regular": r.is_regular(),
        "classification": classify(r),
        "parallel_facet_pairs": parallel,
        "euler_characteristic": r.euler_characteristic(),
    })
}

fn hull_text(label: &str, r: &HullReport, text: &mut String) {
    let _ = writeln!(text, "{label}: {} points", r.points.len());
    let _ = writeln!(text, "  affine dimension: {}", r.affine_dim);
    let _ = writeln!(text, "  f-vector: {:?}", r.f_vector);
    let _ = writeln!(text, "  facet sizes: {:?}", r.facet_sizes());
    let _ = writeln!(
        text,
        "  edges equal: {}, distance-transitive: {}",
        r.edges_equal(),
        r.distance_transitive()
    );
    if r.affine_dim == 3 {
        let _ = writeln!(
            text,
            "  parallel facet pairs: {}",
            parallel_facet_pairs(r).len()
        );
    }
    let _ = writeln!(text, "  classification: {}", classify(r));
}

fn is_sub_multiset(sub: &[i64], of: &[i64]) -> bool {
    let mut pool: Vec<i64> = of.to_vec();
    sub.iter().all(|x| match pool.iter().position(|y| y == x) {
        Some(i) => {
            pool.swap_remove(i);
            true
        }
        None => false,
    })
}

fn too_high(n: usize, dim: usize) -> Outcome {
    let mut out = Outcome::new(
        "hull",
        n,
        None,
        "DIMENSION_TOO_HIGH",
        vec![json!({ "status": "DIMENSION_TOO_HIGH", "affine_dim": dim, "max": MAX_HULL_DIM })],
    );
    out.text = format!("affine dimension {dim} exceeds {MAX_HULL_DIM}\n");
    out.off = Some(String::new());
    out.code = EXIT_DIMENSION;
    out
}

pub fn hull(n: usize, subset: Option<&str>, second: bool) -> Outcome {
    if let Err(e) = simplex_or_error("hull", n) {
        return *e;
    }
    let m0_tail: Vec<i64> = {
        let m0 = simplex_billiards::families::m_point(n, 0);
        m0.coords()[1..]
            .iter()
            .map(|c| i64::try_from(c).expect("small coordinates"))
            .collect()
    };
    let values: Vec<i64> = match subset {
        None => m0_tail.clone(),
        Some(s) => {
            let parsed: Result<Vec<i64>, _> =
                s.split(',').map(|t| t.trim().parse::<i64>()).collect();
            match parsed {
                Ok(v) if !v.is_empty() && is_sub_multiset(&v, &m0_tail) => v,
                Ok(_) => {
                    return Outcome::input_error(
                        "hull",
                        n,
                        format!("subset must be a sub-multiset of {m0_tail:?}"),
                    )
                }
                Err(_) => return Outcome::input_error("hull", n, format!("invalid subset {s:?}")),
            }
        }
    };
    let dim = permutation_dim(&values);
    if dim > MAX_HULL_DIM {
        return too_high(n, dim);
    }
    let q = PointSet::permutations_of(&values);
    let report = hull_report(&q).expect("dimension checked");
    let mut text = String::new();
    let label = match subset {
        None => format!("Q_{n}"),
        Some(_) => format!("permutations of {values:?}"),
    };
    hull_text(&label, &report, &mut text);
    let mut main = hull_json(&report);
    main["label"] = json!(label);
    main["values"] = json!(values);
    let mut results = vec![main];
    let mut off = to_off(&report);

    if second && n - 1 > MAX_HULL_DIM {
        return too_high(n, n - 1);
    }
    if second {
        let qn = qn_points(n);
        let face_points = second_family_face_points(n);
        let closure = second_family_face_closure(n);
        for (label, ps) in [
            ("second-family points on face 0", &face_points),
            ("their closure under relabeling", &closure),
        ] {
            let sim = similarity(ps, &qn);
            let mut entry = match hull_report(ps) {
                Ok(r) => {
                    hull_text(label, &r, &mut text);
                    if std::ptr::eq(ps, &closure) {
                        off = to_off(&r);
                    }
                    hull_json(&r)
                }
                Err(_) => json!({ "affine_dim": ps.affine_dim() }),
            };
            let _ = writeln!(
                text,
                "  similar to Q_{n}: {}",
                if sim.is_some() { "yes" } else { "no" }
            );
            entry["label"] = json!(label);
            entry["points"] = json!(ps.points().iter().map(|p| tuple(p)).collect::<Vec<_>>());
            entry["similar_to_qn"] = json!(sim.is_some());
            entry["similarity_ratio"] = json!(sim.map(|s| render::rat(&s.ratio)));
            results.push(entry);
        }
    }

    let mut out = Outcome::new("hull", n, None, "OK", results);
    out.text = text;
    out.off = Some(off);
    out
}
