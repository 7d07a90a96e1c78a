//! Acceptance criteria. Prints one PASS/FAIL line per criterion with its wall time.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use bsf_core::blowup::blowup_rees;
use bsf_core::bsf::{bsf_pipeline, bsf_structure, matches_classical, pipeline_ring, verify_small_resolution_fixture};
use bsf_core::family::StratumLabel;
use bsf_core::fixtures;
use bsf_core::ideal::{intersect, saturate, Ideal};
use bsf_core::poly::Ring;
use bsf_core::scheme::AffineChart;
use bsf_core::weil::FiniteAlgebra;

#[path = "../../bsf-core/tests/properties.rs"]
mod properties;

type Outcome = Result<(), String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, what: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn saturation_fixtures() -> Outcome {
    let r = Ring::grevlex(&["x", "y"]);
    let y = Ideal::of(&r, &["y"]);
    ensure(saturate(&Ideal::of(&r, &["x*y"]), &r.p("x")).map_err(err)?.equals(&y).map_err(err)?, "saturate(xy, x) != (y)")?;
    let zero_of_a = Ideal::of(&r, &["y^2", "x*y"]);
    ensure(saturate(&zero_of_a, &r.p("x")).map_err(err)?.equals(&y).map_err(err)?, "saturate(y^2, xy; x) != (y)")?;
    // Inside A = Q[x,y]/(y^2, xy): the principal piece V(x) and the saturated piece V(y).
    let w_e = zero_of_a.with(&[r.p("x")]).map_err(err)?;
    let w_prime = zero_of_a.with(&[r.p("y")]).map_err(err)?;
    let union = intersect(&w_e, &w_prime).map_err(err)?;
    ensure(union.equals(&zero_of_a).map_err(err)?, format!("union ideal {union} is not the zero ideal of A"))?;
    // Closure of the complement of V(y): kernel of A -> A_y.
    let closure = saturate(&zero_of_a, &r.p("y")).map_err(err)?;
    ensure(closure.is_unit().map_err(err)?, format!("closure of the complement is {closure}, expected the unit ideal"))
}

fn graph_example() -> Outcome {
    let atlas = fixtures::graph_atlas();
    let res = bsf_structure(&atlas, &fixtures::projective_line()).map_err(err)?;
    ensure(res.components.len() == 2, format!("{} components", res.components.len()))?;
    ensure(!res.partial, "result flagged partial")?;
    for c in &res.core {
        ensure(c.is_empty().map_err(err)?, format!("core on {} is nonempty", c.ambient.name))?;
    }
    let labels: Vec<_> = res.components.iter().map(|c| c.label).collect();
    ensure(labels == vec![Some(StratumLabel::Empty), Some(StratumLabel::Length(1))], format!("labels {labels:?}"))?;
    let (open, line) = (&res.components[0], &res.components[1]);
    // Chartwise: the line component is V(z) on the charts meeting it, the other is D(z).
    for (chart, zvars) in [("P2_x", ["y", "z"]), ("P2_y", ["x", "z"])] {
        let r = Ring::grevlex(&zvars);
        let l = line.charts.iter().find(|c| c.map.target.name == chart).ok_or(format!("no line chart on {chart}"))?;
        ensure(l.chart.modulus().equals(&Ideal::of(&r, &["z"])).map_err(err)?, format!("line on {chart} is not V(z)"))?;
        let o = open.charts.iter().find(|c| c.map.target.name == chart).ok_or(format!("no open chart on {chart}"))?;
        ensure(o.chart.modulus().is_zero(), format!("open piece on {chart} is not the whole chart"))?;
        let frontier = o.open.as_ref().ok_or("open piece without a frontier")?;
        ensure(frontier.contains(&r.p("z^2")).map_err(err)? && !frontier.contains(&r.p("z")).map_err(err)?, format!("frontier on {chart} is {frontier}"))?;
    }
    ensure(!line.charts.iter().any(|c| c.map.target.name == "P2_z"), "line component meets the chart z = 1")?;
    let o = open.charts.iter().find(|c| c.map.target.name == "P2_z").ok_or("no open chart on P2_z")?;
    ensure(o.open.as_ref().map(|f| f.is_unit().unwrap_or(false)).unwrap_or(true), "chart z = 1 is not fully in the open piece")
}

fn small_resolution() -> Outcome {
    let checks = verify_small_resolution_fixture().map_err(err)?;
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
    ensure(checks.len() >= 3 && failed.is_empty(), format!("failed: {failed:?}"))
}

fn pipeline_vs_classical() -> Outcome {
    let x = AffineChart::affine_space("X", &Ring::grevlex(&["x", "y"]));
    let classical = blowup_rees(&x, &Ideal::of(x.ring(), &["x", "y"])).map_err(err)?;
    for b in [FiniteAlgebra::rationals(), FiniteAlgebra::dual_numbers(), FiniteAlgebra::split_pair()] {
        let over = pipeline_ring(&x, &b).map_err(err)?;
        let res = bsf_pipeline(&x, &b, &[over.ring.p("x"), over.ring.p("y")]).map_err(err)?;
        ensure(res.components.len() == 1, format!("{}: {} components", b.name, res.components.len()))?;
        let m = matches_classical(&res, &classical).map_err(err)?;
        ensure(m == vec![(0, true), (1, true)], format!("{}: chart comparison {m:?}", b.name))?;
    }
    Ok(())
}

fn property_suite() -> Outcome {
    properties::buchberger_criterion_on_every_basis();
    properties::saturation_stabilizes();
    properties::extension_commutes_with_finite_intersections();
    properties::iso_locus_is_maximal();
    properties::iso_and_constfy_commute();
    properties::rees_charts_carry_cartier_exceptional_divisors();
    Ok(())
}

fn factorization_banks() -> Outcome {
    let mut outcomes = Vec::new();
    for b in [FiniteAlgebra::rationals(), FiniteAlgebra::dual_numbers(), FiniteAlgebra::split_pair()] {
        outcomes.push((format!("plane over {}", b.name), fixtures::run_pipeline_bank(&b).map_err(err)?));
    }
    let fib = fixtures::projective_line();
    outcomes.push((
        "graph".into(),
        fixtures::run_structure_bank(&fixtures::graph_atlas(), &fib, &fixtures::graph_bank().map_err(err)?).map_err(err)?,
    ));
    let (atlas, fib) = fixtures::determinantal_atlas();
    outcomes.push((
        "determinantal".into(),
        fixtures::run_structure_bank(&atlas, &fib, &fixtures::determinantal_bank().map_err(err)?).map_err(err)?,
    ));
    let (atlas, fib) = fixtures::constant_section_atlas();
    outcomes.push((
        "constant section".into(),
        fixtures::run_structure_bank(&atlas, &fib, &fixtures::constant_section_bank().map_err(err)?).map_err(err)?,
    ));
    for (name, out) in &outcomes {
        ensure(out.len() >= 10, format!("{name}: only {} maps", out.len()))?;
        let wrong: Vec<_> = out.iter().filter(|o| !o.correct).map(|o| o.map.clone()).collect();
        ensure(wrong.is_empty(), format!("{name}: misclassified {wrong:?}"))?;
    }
    Ok(())
}

fn deterministic_corpus() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_bsf-kit"))
            .args(["corpus", "run", "all", "--format", "json"])
            .output()
            .map_err(err)
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success(), "corpus run reported failing entries")?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, "outputs differ between runs")
}

/// Written straight to stdout so the lines show up even when test output is captured.
fn report(line: String) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 7] = [
        ("saturations on the node and the fattened line, union of pieces, empty closure", 1, saturation_fixtures),
        ("graph example: two components, empty core", 10, graph_example),
        ("small resolution fixture", 30, small_resolution),
        ("product center pipeline equals the classical blow-up", 10, pipeline_vs_classical),
        ("property suite", 300, property_suite),
        ("factorization test-map banks", 600, factorization_banks),
        ("corpus output is byte-identical across runs", 600, deterministic_corpus),
    ];
    let mut failures = 0;
    for (k, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        let result = result.and_then(|_| ensure(took <= Duration::from_secs(*limit), format!("over the {limit} s limit")));
        match result {
            Ok(()) => report(format!("PASS criterion {}: {name} ({:.2} s)", k + 1, took.as_secs_f64())),
            Err(e) => {
                failures += 1;
                report(format!("FAIL criterion {}: {name} ({:.2} s): {e}", k + 1, took.as_secs_f64()));
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
