//! Runs every acceptance criterion and prints one pass/fail line each.

mod common;

use std::time::{Duration, Instant};

use common::{decomposition_is_sound, random_point, triangles};
use magoglab::bijection::{column_partial_sums, magog_triangle_to_matrix, matrix_to_magog_triangle};
use magoglab::btp::{btp_decompose, btp_facet_audit, split_step, worked_example_point};
use magoglab::certificate::{verify_vertex_certificates, Polytope};
use magoglab::ehrhart::{ehrhart, DilatePolytope};
use magoglab::enumerate::{count, magog_matrices, magog_triangles, ObjectKind};
use magoglab::golden::{parse_polynomial, reproduce_tables, TableSelector};
use magoglab::hull::{lp_membership, vertex_dimension, Membership};
use magoglab::rational::{int, ratio};
use magoglab::suites::{conjecture_suite, theorem_suite};
use magoglab::tables::{binomial, product_formula_u64};
use magoglab::tsscpp::{check_magog_relaxation, check_necessary_inequalities, half_integer_relaxation_vertices, tsscpp3_vertex_audit};
use magoglab::{BooleanTriangle, Constraint, SignMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok { Ok(()) } else { Err(what.into()) }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, format!("{what} took {elapsed:.1?}, limit {limit:?}"))
}

fn counting() -> Outcome {
    let start = Instant::now();
    for n in 1..=6 {
        let expected = product_formula_u64(n).ok_or("product formula overflow")?;
        for kind in [ObjectKind::MagogMatrix, ObjectKind::Asm, ObjectKind::BooleanTriangle] {
            let c = count(kind, n).map_err(|e| e.to_string())?;
            ensure(c == expected, format!("{kind} n={n}: {c} != {expected}"))?;
        }
    }
    let small = start.elapsed();
    within(small, Duration::from_secs(10), "n <= 6")?;
    let seven = Instant::now();
    let formula = product_formula_u64(7).ok_or("product formula overflow")?;
    ensure(formula == 218_348, format!("product formula at 7 gave {formula}"))?;
    for kind in [ObjectKind::MagogMatrix, ObjectKind::Asm, ObjectKind::BooleanTriangle] {
        let c = count(kind, 7).map_err(|e| e.to_string())?;
        ensure(c == formula, format!("{kind} n=7: {c}"))?;
    }
    within(seven.elapsed(), Duration::from_secs(300), "n = 7")?;
    Ok(format!("1, 2, 7, 42, 429, 7436 in {small:.1?}; n=7 gives 218348 in {:.1?}", seven.elapsed()))
}

fn square_sign() -> Outcome {
    for n in 1..=5 {
        let c = count(ObjectKind::SquareSign, n).map_err(|e| e.to_string())?;
        ensure(c == 1 << binomial(n as u64, 2), format!("n={n}: {c}"))?;
    }
    Ok("2^C(n,2) for n <= 5".into())
}

fn tables() -> Outcome {
    let start = Instant::now();
    let mut cells = 0;
    for t in 1..=6 {
        let r = reproduce_tables(TableSelector::Table(t), 6).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(r.diff_report());
        }
        cells += r.cells.iter().filter(|c| c.record.n >= 3).count();
    }
    let t1 = reproduce_tables(TableSelector::Table(1), 5).map_err(|e| e.to_string())?;
    ensure(t1.tables[0].csv.contains("5,magog-matrix,neg-ones,4,8\n"), "table 1 n=5 csv")?;
    within(start.elapsed(), Duration::from_secs(120), "tables")?;
    Ok(format!("{cells} rows of tables 1-6 at n = 3..6 match exactly in {:.1?}", start.elapsed()))
}

fn theorems() -> Outcome {
    let r = theorem_suite(6).map_err(|e| e.to_string())?;
    ensure(r.all_passed(), r.failures().map(|c| format!("{} n={}", c.claim, c.n)).collect::<Vec<_>>().join("; "))?;
    Ok(format!("{} checks, zero failures", r.checks.len()))
}

fn bijection() -> Outcome {
    let a = SignMatrix::from_rows(&[[0, 0, 0, 1], [0, 1, 1, -1], [1, 0, 0, 0], [0, 0, 0, 1]]).map_err(|e| e.to_string())?;
    let partial = column_partial_sums(&a).map_err(|e| e.to_string())?.to_rows();
    ensure(partial == [[0, 0, 0, 1], [0, 1, 1, 0], [1, 1, 1, 0], [1, 1, 1, 1]], "worked example partial sums")?;
    let t = matrix_to_magog_triangle(&a).map_err(|e| e.to_string())?;
    ensure(t.to_rows() == vec![vec![4], vec![2, 3], vec![1, 2, 3], vec![1, 2, 3, 4]], "worked example triangle")?;
    let mut checked = 0;
    for n in 1..=5 {
        for m in magog_matrices(n).map_err(|e| e.to_string())? {
            let t = matrix_to_magog_triangle(&m).map_err(|e| e.to_string())?;
            ensure(magog_triangle_to_matrix(&t) == m, format!("matrix round trip failed at n={n}"))?;
            checked += 1;
        }
        for t in magog_triangles(n).map_err(|e| e.to_string())? {
            let back = matrix_to_magog_triangle(&magog_triangle_to_matrix(&t)).map_err(|e| e.to_string())?;
            ensure(back == t, format!("triangle round trip failed at n={n}"))?;
        }
    }
    Ok(format!("{checked} matrices round-trip; worked example exact"))
}

fn certificates() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for p in [Polytope::Tsscpp, Polytope::Btp] {
        for (n, v) in [(3, 7), (4, 42), (5, 429)] {
            let r = verify_vertex_certificates(p, n).map_err(|e| e.to_string())?;
            ensure(r.passed() && r.vertices == v, r.to_string())?;
            parts.push(format!("{}/{}", r.separated, r.vertices));
        }
    }
    within(start.elapsed(), Duration::from_secs(120), "certificates")?;
    Ok(format!("tsscpp {} and btp {}", parts[..3].join(", "), parts[3..].join(", ")))
}

fn decomposition() -> Outcome {
    let start = Instant::now();
    let p = worked_example_point();
    let step = split_step(&p).map_err(|e| e.to_string())?.ok_or("worked example is integral")?;
    ensure(step.k_plus == ratio(1, 5) && step.k_minus == ratio(1, 10), "k' and k''")?;
    ensure(step.upper_weight() == ratio(1, 3) && step.lower_weight() == ratio(2, 3), "weights")?;
    let tenths = |rows: &[&[i64]]| rows.iter().map(|r| r.iter().map(|&v| ratio(v, 10)).collect()).collect::<Vec<Vec<_>>>();
    let upper = tenths(&[&[7], &[10, 0], &[3, 0, 10], &[10, 7, 10, 3], &[3, 3, 3, 3, 10]]);
    let lower = tenths(&[&[4], &[7, 0], &[0, 3, 10], &[10, 10, 10, 6], &[0, 0, 0, 0, 10]]);
    ensure(step.upper.to_rows() == upper && step.lower.to_rows() == lower, "printed triangles")?;

    let mut rng = ChaCha8Rng::seed_from_u64(20_240_611);
    let mut max_terms = 0;
    for k in 0..1000 {
        let n = 3 + k % 4;
        let (point, _) = random_point(&mut rng, n, 5);
        let d = btp_decompose(&point).map_err(|e| e.to_string())?;
        let terms: Vec<(_, BooleanTriangle)> = d.terms().iter().map(|t| (t.weight.clone(), t.vertex.clone())).collect();
        ensure(decomposition_is_sound(&point, &terms), format!("unsound decomposition at order {n}"))?;
        ensure(lp_membership(point.entries(), triangles(n)).map_err(|e| e.to_string())?.is_inside(), "lp disagrees")?;
        max_terms = max_terms.max(terms.len());
    }
    within(start.elapsed(), Duration::from_secs(300), "decomposition")?;
    Ok(format!("worked example exact; 1000 random points sound and LP-confirmed (at most {max_terms} terms) in {:.1?}", start.elapsed()))
}

fn facets() -> Outcome {
    let mut found = Vec::new();
    for (n, expected) in [(3, 7), (4, 15), (5, 26), (6, 40)] {
        let audit = btp_facet_audit(n).map_err(|e| e.to_string())?;
        ensure(audit.passed() && audit.certified == expected && audit.expected == expected, audit.to_string())?;
        found.push(audit.certified.to_string());
    }
    Ok(format!("{} facets for n = 3..6", found.join(", ")))
}

fn ehrhart_volumes() -> Outcome {
    let start = Instant::now();
    let cases = [
        (DilatePolytope::Btp(3), 5, "(5/6)t^3 + (5/2)t^2 + (8/3)t + 1", 5),
        (DilatePolytope::Btp(4), 7, "(41/72)t^6 + (41/12)t^5 + (319/36)t^4 + (38/3)t^3 + (761/72)t^2 + (59/12)t + 1", 410),
        (DilatePolytope::Tsscpp3, 6, "(1/8)t^4 + (11/12)t^3 + (19/8)t^2 + (31/12)t + 1", 3),
    ];
    for (p, tmax, poly, volume) in cases {
        let (_, fit) = ehrhart(p, tmax).map_err(|e| e.to_string())?;
        ensure(fit.polynomial == parse_polynomial(poly).map_err(|e| e.to_string())?, format!("{p}: {}", fit.polynomial))?;
        ensure(fit.normalized_volume == int(volume), format!("{p}: volume {}", fit.normalized_volume))?;
    }
    within(start.elapsed(), Duration::from_secs(300), "ehrhart")?;
    Ok(format!("btp(3), btp(4), tsscpp3 exact; volumes 5, 410, 3 in {:.1?}", start.elapsed()))
}

fn dimensions() -> Outcome {
    for (n, d) in [(3, 4), (4, 9), (5, 16)] {
        let vertices: Vec<SignMatrix> = magog_matrices(n).map_err(|e| e.to_string())?.collect();
        ensure(vertex_dimension(&vertices) == Some(d), format!("magog n={n}"))?;
    }
    for n in 1..=5 {
        ensure(vertex_dimension(triangles(n)) == Some(n * (n - 1) / 2), format!("btp n={n}"))?;
    }
    Ok("4, 9, 16 and C(n,2)".into())
}

fn negative() -> Outcome {
    let magog: Vec<SignMatrix> = magog_matrices(3).map_err(|e| e.to_string())?.collect();
    for p in half_integer_relaxation_vertices() {
        ensure(check_magog_relaxation(&p).is_valid(), "relaxation should hold")?;
        let first = check_necessary_inequalities(&p).first().map(|v| v.constraint);
        ensure(first == Some(Constraint::LShape), format!("first failure {first:?}"))?;
        match lp_membership(p.entries(), &magog).map_err(|e| e.to_string())? {
            Membership::NotInHull(f) => ensure(f.separates(p.entries(), &magog), "functional does not separate")?,
            Membership::Inside(_) => return Err("half-integer point reported inside".into()),
        }
    }
    let audit = tsscpp3_vertex_audit().map_err(|e| e.to_string())?;
    ensure(audit.passed() && audit.vertices.len() == 7, "vertex audit")?;
    Ok("both half-integer points separated; audit recovers the 7 magog matrices".into())
}

fn conjectures() -> Outcome {
    let r = conjecture_suite(6).map_err(|e| e.to_string())?;
    print!("{}", r.to_csv("agree", "disagree"));
    let disagreements = r.failures().count();
    Ok(format!("{} comparisons, {disagreements} disagreements", r.checks.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("counting", counting),
        ("square sign count", square_sign),
        ("table reproduction", tables),
        ("theorem suite", theorems),
        ("bijection", bijection),
        ("vertex certificates", certificates),
        ("decomposition", decomposition),
        ("facets", facets),
        ("ehrhart and volume", ehrhart_volumes),
        ("dimension", dimensions),
        ("negative acceptance", negative),
        ("conjecture suite", conjectures),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:2} PASS {name} ({elapsed:.2?}): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:2} FAIL {name} ({elapsed:.2?}): {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
