//! Acceptance criteria 1-8, one PASS/FAIL line each.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rbpair_core::group::{endomorphisms, fixture_groups};
use rbpair_core::lie::{aff1, heisenberg, sl2, LieAlgebra};
use rbpair_core::linalg::{int, q, unit_vec, Matrix, Subspace};
use rbpair_core::matched_group::group_decomposition;
use rbpair_core::matched_lie::{
    bicrossed_product, decompose_bicrossed, iso_g1, iso_g2_quotient, matched_pair_from_decomposition,
    matched_pair_from_rb, projections_fl, rb_from_projection, split_isomorphism_check,
};
use rbpair_core::quadratic::{build_sprime, check_compatibility, cotangent_fixture, quadratic_decompose, validate_quadratic};
use rbpair_core::rb_group::{enumerate_rb_operators, RotaBaxterGroup, SearchMode};
use rbpair_core::rb_lie::{
    abelian_half_fixture, check_rota_baxter, projection_along, quotient_rb, scalar_half_fixture,
    sl2_projection_fixture, RotaBaxterLie,
};
use rbpair_core::Check;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

/// Name, algebra and the two index sets of a subalgebra split.
type Split = (&'static str, LieAlgebra, Vec<usize>, Vec<usize>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ensure_checks(what: &str, checks: &[Check]) -> Result<(), String> {
    match checks.iter().find(|c| !c.holds) {
        None => Ok(()),
        Some(c) => Err(format!("{what}: {}", c.line())),
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < budget, || format!("took {spent:?}, budget {budget:?}"))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let rb = sl2_projection_fixture();
    ensure_checks("rota-baxter", &[check_rota_baxter(&rb.algebra, &rb.operator, &rb.weight).map_err(err)?])?;
    let rmp = matched_pair_from_rb(&rb).map_err(err)?;
    ensure_checks("matched pair", &rmp.checks)?;
    let bc = bicrossed_product(&rmp.pair).map_err(err)?;
    ensure_checks("bicrossed", &bc.checks)?;
    let fl = projections_fl(&rb).map_err(err)?;
    ensure_checks("projections", &fl.checks)?;
    let d = decompose_bicrossed(&rb).map_err(err)?;
    ensure_checks("decompose", &d.certificates)?;
    let g1 = iso_g1(&rb).map_err(err)?;
    ensure_checks("iso g1", &g1.checks)?;
    let g2 = iso_g2_quotient(&rb).map_err(err)?;
    ensure_checks("iso g2", &g2.checks)?;
    let dims = (d.g1_dim, d.g2_dim, g2.source_dim);
    ensure(dims == (3, 0, 0), || format!("dims (g1, g2, quotient) = {dims:?}"))?;
    within(start, Duration::from_secs(1))?;
    Ok("sl2 pipeline: g1_dim 3, g2_dim 0, quotient dim 0".into())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let rb = abelian_half_fixture();
    let d = decompose_bicrossed(&rb).map_err(err)?;
    ensure_checks("decompose", &d.certificates)?;
    ensure(d.bicrossed_dim == 3, || format!("bicrossed dim {}", d.bicrossed_dim))?;
    ensure(d.g2_dim == 1 && d.intersection_dim == 1, || format!("g2 {} intersection {}", d.g2_dim, d.intersection_dim))?;
    let quot = quotient_rb(&rb).map_err(err)?;
    ensure_checks("quotient", &quot.checks)?;
    ensure(quot.quotient.operator == Matrix::diagonal(&[q(1, 2)]), || {
        format!("quotient operator {:?}", quot.quotient.operator)
    })?;
    let g2 = iso_g2_quotient(&rb).map_err(err)?;
    ensure_checks("quotient isomorphism", &g2.checks)?;
    ensure(g2.source_dim == 1 && g2.target_dim == 1, || "quotient isomorphism dims".into())?;
    within(start, Duration::from_secs(1))?;
    Ok("abelian diag(1/2,1): bicrossed dim 3, g2_dim 1 = dim of intersection, quotient operator 1/2".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let qrb = cotangent_fixture(&aff1());
    ensure(qrb.dim() == 4, || format!("dimension {}", qrb.dim()))?;
    ensure_checks("quadratic", &validate_quadratic(&qrb.rb.algebra, &qrb.form).map_err(err)?)?;
    ensure_checks("compatibility", &check_compatibility(&qrb))?;
    let mt = build_sprime(&qrb).map_err(err)?;
    ensure_checks("induced form", &mt.checks)?;
    let iso = mt.isotropy();
    ensure(iso == (true, true), || format!("isotropy {iso:?}"))?;
    let report = quadratic_decompose(&qrb).map_err(err)?;
    ensure_checks("quadratic decomposition", &report.decomposition.certificates)?;
    ensure(
        report.decomposition.certificates.iter().any(|c| c.name.contains("orthogonal")),
        || "no orthogonality certificate".into(),
    )?;
    within(start, Duration::from_secs(1))?;
    Ok("aff(1) cotangent: form, compatibility, induced form, isotropy and orthogonality hold".into())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let expected = [("Z2", 2), ("Z3", 3), ("Z4", 4), ("Z2xZ2", 16)];
    let groups = fixture_groups();
    let mut summary = Vec::new();
    for (name, count) in expected {
        let g = &groups.iter().find(|(n, _)| *n == name).ok_or("missing fixture")?.1;
        let naive = enumerate_rb_operators(g, SearchMode::Naive, 1).map_err(err)?;
        let pruned = enumerate_rb_operators(g, SearchMode::Pruned, 1).map_err(err)?;
        ensure(naive == pruned, || format!("{name}: naive and pruned differ"))?;
        ensure(naive.len() == count, || format!("{name}: {} operators, expected {count}", naive.len()))?;
        let mut endo = endomorphisms(g);
        endo.sort();
        ensure(endo == naive, || format!("{name}: census differs from endomorphism list"))?;
        summary.push(format!("{name} {count}"));
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("census counts {}; naive = pruned = endomorphisms", summary.join(", ")))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut operators = 0;
    let mut stated_failures = 0;
    for (name, g) in fixture_groups() {
        for v in enumerate_rb_operators(&g, SearchMode::Pruned, 1).map_err(err)? {
            let rbg = RotaBaxterGroup::new(g.clone(), v.clone()).map_err(err)?;
            let d = group_decomposition(&rbg).map_err(|e| format!("{name} {v:?}: {e}"))?;
            ensure_checks(&format!("{name} {v:?}"), &d.certificates)?;
            stated_failures += d
                .findings
                .iter()
                .filter(|c| !c.holds && (c.name == "dagger-inverse-as-stated" || c.name == "descendent-inverse-as-stated"))
                .count();
            operators += 1;
        }
    }
    within(start, Duration::from_secs(300))?;
    println!(
        "NOTE criterion 5: the dagger and descendent-inverse identities as literally stated fail {stated_failures} times; the corrected forms are the ones checked"
    );
    Ok(format!("universal group suite holds for all {operators} operators on groups of order at most 8"))
}

fn lie_fixtures() -> Vec<(&'static str, RotaBaxterLie)> {
    let span = |n: usize, idx: &[usize]| Subspace::span(n, &idx.iter().map(|&i| unit_vec(n, i)).collect::<Vec<_>>()).unwrap();
    let proj = |g: LieAlgebra, a: &[usize], b: &[usize]| {
        let n = g.dim();
        let m = projection_along(&span(n, a), &span(n, b)).unwrap();
        RotaBaxterLie::new(g, m, int(-1)).unwrap()
    };
    vec![
        ("sl2 projection", sl2_projection_fixture()),
        ("abelian diag(1/2,1)", abelian_half_fixture()),
        ("scalar 1/2", scalar_half_fixture()),
        ("sl2 identity", RotaBaxterLie::new(sl2(), Matrix::identity(3), int(-1)).unwrap()),
        ("sl2 zero", RotaBaxterLie::new(sl2(), Matrix::zeros(3, 3), int(-1)).unwrap()),
        ("aff1 split", proj(aff1(), &[0], &[1])),
        ("heisenberg split", proj(heisenberg(), &[0, 2], &[1])),
        ("aff1 cotangent", cotangent_fixture(&aff1()).rb),
    ]
}

fn criterion_6() -> Outcome {
    let mut names = Vec::new();
    for (name, rb) in lie_fixtures() {
        let fl = projections_fl(&rb).map_err(|e| format!("{name}: {e}"))?;
        let (c, ct) = (&fl.c, &fl.c_tilde);
        let n = c.rows();
        ensure(c.add(ct) == Matrix::identity(n), || format!("{name}: C + C~ is not the identity"))?;
        ensure(c.mul(c) == *c, || format!("{name}: C is not idempotent"))?;
        ensure(c.mul(ct).is_zero(), || format!("{name}: C C~ is not zero"))?;
        let ops = rb_from_projection(&fl.bicrossed, ct).map_err(|e| format!("{name}: {e}"))?;
        let k = &ops.kernel.induced;
        for (label, op) in [("B", &ops.b), ("B~", &ops.b_tilde)] {
            let chk = check_rota_baxter(k, &op.operator, &int(-1)).map_err(err)?;
            ensure_checks(&format!("{name} {label}"), &[chk])?;
        }
        ensure(ops.b.operator.add(&ops.b_tilde.operator) == Matrix::identity(k.dim()), || {
            format!("{name}: B + B~ is not the identity")
        })?;
        names.push(name);
    }
    Ok(format!("projection identities exact on {} fixtures", names.len()))
}

fn criterion_7() -> Outcome {
    let span = |n: usize, idx: &[usize]| Subspace::span(n, &idx.iter().map(|&i| unit_vec(n, i)).collect::<Vec<_>>()).unwrap();
    let splits: Vec<Split> = vec![
        ("sl2 (h,f | e)", sl2(), vec![1, 2], vec![0]),
        ("sl2 (e,h | f)", sl2(), vec![0, 1], vec![2]),
        ("sl2 (e | h,f)", sl2(), vec![0], vec![1, 2]),
        ("aff1 (a | b)", aff1(), vec![0], vec![1]),
        ("aff1 (b | a)", aff1(), vec![1], vec![0]),
        ("heisenberg (x,z | y)", heisenberg(), vec![0, 2], vec![1]),
        ("heisenberg (y | x,z)", heisenberg(), vec![1], vec![0, 2]),
        ("abelian (x1 | x2)", LieAlgebra::abelian(2), vec![0], vec![1]),
    ];
    for (name, g, a, b) in &splits {
        let n = g.dim();
        let (sa, sb) = (span(n, a), span(n, b));
        let from_split = matched_pair_from_decomposition(g, &sa, &sb).map_err(|e| format!("{name}: {e}"))?;
        let rb = RotaBaxterLie::new(g.clone(), projection_along(&sa, &sb).map_err(err)?, int(-1)).map_err(err)?;
        let from_rb = matched_pair_from_rb(&rb).map_err(|e| format!("{name}: {e}"))?.pair;
        ensure(from_split == from_rb, || format!("{name}: action tensors differ"))?;
        ensure_checks(name, &split_isomorphism_check(g, &sa, &sb).map_err(err)?)?;
    }
    Ok(format!("decomposition and operator routes agree tensor-for-tensor on {} splits; sum map is an isomorphism", splits.len()))
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn criterion_8() -> Outcome {
    let suite: Vec<Vec<String>> = vec![
        vec!["check".into(), "lie".into(), fixture("sl2.json")],
        vec!["check".into(), "rb-lie".into(), fixture("sl2_projection.json")],
        vec!["check".into(), "quadratic".into(), fixture("aff1_cotangent.json")],
        vec!["check".into(), "group".into(), fixture("group_d4.json")],
        vec!["check".into(), "rb-group".into(), fixture("group_z4.json"), fixture("z4_squaring.json")],
        vec!["construct".into(), "matched-pair".into(), fixture("sl2_projection.json")],
        vec!["construct".into(), "bicrossed".into(), fixture("abelian_half.json")],
        vec!["construct".into(), "manin".into(), fixture("aff1_cotangent.json")],
        vec!["construct".into(), "descend".into(), fixture("sl2_projection.json")],
        vec!["construct".into(), "group-matched-pair".into(), fixture("group_z4.json"), fixture("z4_squaring.json")],
        vec!["decompose".into(), "lie".into(), fixture("sl2_projection.json")],
        vec!["decompose".into(), "group".into(), fixture("group_z4.json"), fixture("z4_squaring.json")],
        vec!["search".into(), fixture("group_s3.json"), "--verify-all".into()],
    ];
    let run = |args: &[String]| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_rbpair"))
            .args(args)
            .env_remove("RBPAIR_MAX_GROUP_ORDER")
            .output()
            .map_err(err)?;
        Ok(out.stdout)
    };
    for args in &suite {
        for format in ["json", "text"] {
            let mut full = vec!["--report".to_string(), format.to_string()];
            full.extend(args.iter().cloned());
            ensure(run(&full)? == run(&full)?, || format!("{full:?} differs between runs"))?;
        }
    }
    for group in ["group_d4.json", "group_q8.json", "group_z8.json"] {
        let with_jobs = |jobs: &str| run(&["search".into(), fixture(group), "--verify-all".into(), "--jobs".into(), jobs.into()]);
        ensure(with_jobs("1")? == with_jobs("4")?, || format!("search {group} differs between 1 and 4 jobs"))?;
    }
    Ok(format!("{} CLI invocations byte-identical across runs; search identical for jobs 1 and 4", suite.len() * 2))
}

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("1", criterion_1),
        ("2", criterion_2),
        ("3", criterion_3),
        ("4", criterion_4),
        ("5", criterion_5),
        ("6", criterion_6),
        ("7", criterion_7),
        ("8", criterion_8),
    ];
    let mut failed = 0;
    for (id, run) in criteria {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {id} PASS {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id} FAIL {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
