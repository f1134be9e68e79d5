//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cadaudit::arith::{isolate_upoly, rat, resultant, Monomial, MultiPoly, Rational, UPoly};
use cadaudit::cadbuild::{build_cad, compute_subadjacency, Formula, Region, TrackConfig};
use cadaudit::decomp::{fixture_names, load_fixture, DecompGraph};
use cadaudit::props::{
    audit_polyline_extension, audit_section_extension, check_closure_finite, check_lbc_report, check_well_based,
    check_well_bordered, lemma_violations, LbcConfig, Status, StrongSource,
};
use cadaudit::topo::{check_poset_iso, homology, order_complex, realize, regularity_audit};
use cadaudit::Error;
use common::*;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

const BUILD_LIMIT: Duration = Duration::from_secs(10);
const MATRIX_LIMIT: Duration = Duration::from_secs(5);
const HOMOLOGY_LIMIT: Duration = Duration::from_secs(10);
const EXTENSION_ERR: f64 = 1e-9;
const POLYLINE_TOL: f64 = 1e-6;
const ORACLE_TRIALS: usize = 100;
const ORACLE_SEED: u64 = 20240917;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed_build(src: &str, n: usize) -> Result<(cadaudit::cadbuild::CadTree, Duration), String> {
    let t = Instant::now();
    let mut c = build_cad(&polys(&[src], n), n).map_err(|e| e.to_string())?;
    compute_subadjacency(&mut c, &TrackConfig::default()).map_err(|e| e.to_string())?;
    Ok((c, t.elapsed()))
}

fn cell_counts() -> Outcome {
    let (circle, tc) = timed_build(CIRCLE, 2)?;
    let (sphere, ts) = timed_build(SPHERE, 3)?;
    let counts = [
        circle.top_cells().len(),
        selection(&circle, "f1 <= 0").len(),
        sphere.top_cells().len(),
        selection(&sphere, "f1 <= 0").len(),
    ];
    ensure(counts == [13, 5, 25, 7], format!("counts {counts:?}, want [13, 5, 25, 7]"))?;
    ensure(tc < BUILD_LIMIT && ts < BUILD_LIMIT, format!("builds took {tc:?} and {ts:?}"))?;
    Ok(format!("counts {counts:?}; builds {:.2}s, {:.2}s", tc.as_secs_f64(), ts.as_secs_f64()))
}

fn property_matrix() -> Outcome {
    let t = Instant::now();
    let e = |x: Error| x.to_string();
    let noncf = load_fixture("noncf").map_err(e)?;
    let cf = check_closure_finite(&noncf);
    ensure(cf.holds("ooo") == Some(Status::True), "noncf cube should be closure finite")?;
    ensure(cf.holds("seg") == Some(Status::False), "noncf segment should not be closure finite")?;

    let g = load_fixture("cfsubadj").map_err(e)?;
    let cf = check_closure_finite(&g);
    ensure(
        cf.holds("C1") == Some(Status::False) && cf.holds("C2") == Some(Status::False),
        "cfsubadj cells should not be closure finite",
    )?;
    let (a, b) = (g.index_of("C1").map_err(e)?, g.index_of("C2").map_err(e)?);
    ensure(g.leq(a, b) && g.leq(b, a), "cfsubadj cells should be mutually subadjacent")?;

    let g = load_fixture("wbnotcf").map_err(e)?;
    let (cf, wb) = (check_closure_finite(&g), check_well_bordered(&g));
    ensure(wb.holds("ooo") == Some(Status::True), "wbnotcf cube should be well-bordered")?;
    ensure(cf.holds("ooo") == Some(Status::False), "wbnotcf cube should not be closure finite")?;
    for face in ["0oo", "o0o"] {
        ensure(wb.holds(face) == Some(Status::False), format!("wbnotcf face {face} should not be well-bordered"))?;
    }

    let g = load_fixture("sphere_minus_point").map_err(e)?;
    ensure(check_well_bordered(&g).overall == Status::False, "punctured sphere should not be well-bordered")?;

    let g = load_fixture("whitney").map_err(e)?;
    ensure(check_closure_finite(&g).overall == Status::True, "whitney should be closure finite")?;
    ensure(check_well_bordered(&g).overall == Status::True, "whitney should be well-bordered")?;
    let lbc = check_lbc_report(&g, StrongSource::Graph, &LbcConfig::default()).map_err(e)?;
    ensure(lbc.holds("W") == Some(Status::False), "whitney W should fail LBC")?;
    let failures = lbc.witness("W").and_then(|w| w["lbc_failures"].as_array().cloned()).unwrap_or_default();
    let at_z = failures.iter().find(|f| f["at"] == json!("Z")).ok_or("no LBC failure at Z")?;
    ensure(at_z["stable_count"] == json!(2), format!("LBC at Z: {at_z}"))?;

    let took = t.elapsed();
    ensure(took < MATRIX_LIMIT, format!("matrix took {took:?}"))?;
    Ok(format!("5 fixtures match; {:.2}s", took.as_secs_f64()))
}

fn lemma_suite() -> Outcome {
    let corpus = corpus();
    let mut bad = Vec::new();
    for (name, g) in &corpus {
        let (v, _) = lemma_violations(g);
        bad.extend(v.into_iter().map(|v| format!("{name}: {} {:?}", v.lemma, v.cells)));
    }
    ensure(bad.is_empty(), bad.join("; "))?;
    Ok(format!("{} graphs, 0 violations", corpus.len()))
}

fn poset_iso() -> Outcome {
    let circle = cad(&[CIRCLE], 2);
    let sphere = cad(&[SPHERE], 3);
    let graphs = [
        ("circle bounded", DecompGraph::from_cad(&circle, None).map_err(|e| e.to_string())?),
        ("disk", graph_of(&circle, "f1 <= 0")),
        ("ball", graph_of(&sphere, "f1 <= 0")),
        ("sphere surface", graph_of(&sphere, "f1 = 0")),
    ];
    for (name, g) in &graphs {
        let r = check_poset_iso(g).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.holds, format!("{name}: witness {:?}", r.witness))?;
    }
    Ok("4 graphs, 0 witnesses".into())
}

fn homology_audits() -> Outcome {
    let t = Instant::now();
    let circle = cad(&[CIRCLE], 2);
    let sphere = cad(&[SPHERE], 3);
    let disk = graph_of(&circle, "f1 <= 0");
    let ball = graph_of(&sphere, "f1 <= 0");
    let surface = graph_of(&sphere, "f1 = 0");
    let betti = |g: &DecompGraph, subset: Vec<usize>| -> Result<Vec<usize>, String> {
        let cx = order_complex(g, &subset).map_err(|e| e.to_string())?;
        Ok(homology(&cx, None, false).betti)
    };
    let strict = |g: &DecompGraph, id: &str| -> Result<Vec<usize>, String> {
        let c = g.index_of(id).map_err(|e| e.to_string())?;
        betti(g, g.downset(c, true).into_iter().collect())
    };
    let checks: [(&str, Vec<usize>, Vec<usize>); 5] = [
        ("disk", betti(&disk, all_cells(&disk))?, vec![1, 0, 0]),
        ("disk 2-sector boundary", strict(&disk, "3.3")?, vec![1, 1]),
        ("ball", betti(&ball, all_cells(&ball))?, vec![1, 0, 0, 0]),
        ("3-cell boundary", strict(&ball, "3.3.3")?, vec![1, 0, 1]),
        ("sphere surface", betti(&surface, all_cells(&surface))?, vec![1, 0, 1]),
    ];
    for (name, got, want) in &checks {
        ensure(got == want, format!("{name}: betti {got:?}, want {want:?}"))?;
    }
    let w = load_fixture("whitney").map_err(|e| e.to_string())?;
    let cfg = LbcConfig::default();
    let audit = regularity_audit(&w, &all_cells(&w), Some((StrongSource::Graph, &cfg))).map_err(|e| e.to_string())?;
    let wb = &audit.cells["W"].boundary.betti;
    ensure(*wb == vec![1, 1], format!("whitney boundary betti {wb:?}"))?;
    let verdict = audit.overall().as_str();
    ensure(
        verdict == "homology proxies passed; regularity refuted by LBC",
        format!("whitney verdict '{verdict}'"),
    )?;
    let took = t.elapsed();
    ensure(took < HOMOLOGY_LIMIT, format!("audits took {took:?}"))?;
    Ok(format!("6 complexes match; whitney '{verdict}'; {:.2}s", took.as_secs_f64()))
}

fn well_based() -> Outcome {
    let e = |x: Error| x.to_string();
    let f = polys(&["x1*x2", "x2"], 2);
    let r = check_well_based(&build_cad(&f, 2).map_err(e)?, &f).map_err(e)?;
    ensure(r.overall == Status::False, "{x1*x2, x2} should not be well-based")?;
    // base cell 2 is x1 = 0; its first section is x2 = 0
    let w = r.witness("2.2").ok_or("no witness on section 2.2")?;
    ensure(
        w["base"] == json!("2") && w["poly"] == json!(f[0].to_string()) && w["section"] == json!("2.2"),
        format!("witness {w}"),
    )?;
    let g = polys(&["x1*x2"], 2);
    let r = check_well_based(&build_cad(&g, 2).map_err(e)?, &g).map_err(e)?;
    ensure(r.overall == Status::True && !r.notes.is_empty(), "{x1*x2} should be vacuously well-based")?;
    let c = polys(&[CIRCLE], 2);
    let r = check_well_based(&build_cad(&c, 2).map_err(e)?, &c).map_err(e)?;
    ensure(r.overall == Status::True, "circle should be well-based")?;
    Ok("witness (D=x1=0, f=x1*x2, section x2=0); vacuous; circle".into())
}

fn section_extension() -> Outcome {
    let mut sections = 0;
    let mut worst = 0f64;
    for (src, n) in [(CIRCLE, 2), (SPHERE, 3)] {
        let c = cad(&[src], n);
        for cell in c.top_cells().into_iter().filter(|x| x.is_section() && x.bounded) {
            let a = audit_section_extension(&c, &cell.index, 2, EXTENSION_ERR).map_err(|e| e.to_string())?;
            ensure(a.extendable, format!("section {} not extendable: {}", cell.id(), a.to_json()))?;
            ensure(a.max_error() < EXTENSION_ERR, format!("section {} error {}", cell.id(), a.max_error()))?;
            worst = worst.max(a.max_error());
            sections += 1;
        }
    }
    let h = polys(&["x1^2*x3 - x2^2"], 3).remove(0);
    let region = Region {
        formula: Formula::parse("f1 > 0 & f2 < 0 & f3 > 0 & f4 > 0").map_err(|e| e.to_string())?,
        polys: polys(&["x1", "x1 - 1", "x2 + x1", "x1 - x2"], 3),
    };
    let origin = vec![rat(0, 1), rat(0, 1)];
    let paths = vec![
        vec![vec![rat(1, 2), rat(0, 1)], origin.clone()],
        vec![vec![rat(1, 2), rat(1, 4)], origin],
    ];
    let a = audit_polyline_extension(&h, 0, Some(&region), &paths, POLYLINE_TOL).map_err(|e| e.to_string())?;
    let (_, l0, l1) = a.witness.clone().ok_or("whitney section reported extendable")?;
    ensure(
        l0.abs() < POLYLINE_TOL && (l1 - 0.25).abs() < POLYLINE_TOL,
        format!("whitney limits {l0} and {l1}"),
    )?;
    Ok(format!("{sections} sections extend (max error {worst:.1e}); whitney limits {l0:.2e}, {l1:.6}"))
}

fn realization() -> Outcome {
    let e = |x: Error| x.to_string();
    let lz = load_fixture("lazard_q_points").map_err(e)?;
    let r = realize(&order_complex(&lz, &all_cells(&lz)).map_err(e)?, None).map_err(e)?;
    ensure(!r.improper_pairs.is_empty(), "lazard points realize properly")?;
    let circle = cad(&[CIRCLE], 2);
    let disk = graph_of(&circle, "f1 <= 0");
    let d = realize(&order_complex(&disk, &all_cells(&disk)).map_err(e)?, None).map_err(e)?;
    ensure(d.improper_pairs.is_empty(), format!("disk improper pairs {:?}", d.improper_pairs))?;
    Ok(format!("lazard {} improper pairs; disk 0", r.improper_pairs.len()))
}

fn random_poly(rng: &mut ChaCha8Rng, max_x1: u32, max_x2: u32) -> MultiPoly {
    let mut terms: Vec<(Monomial, Rational)> = Vec::new();
    for a in 0..=max_x1 {
        for b in 0..=max_x2 {
            if rng.gen_bool(0.6) {
                terms.push((vec![a, b], rat(rng.gen_range(-5..=5), 1)));
            }
        }
    }
    MultiPoly::from_terms(2, terms)
}

fn oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let mut pairs = 0;
    while pairs < ORACLE_TRIALS {
        let (dx, dy) = (rng.gen_range(0..=3), rng.gen_range(0..=2));
        let f = random_poly(&mut rng, 2, dx);
        let g = random_poly(&mut rng, 2, dy);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let got = resultant(&f, &g, 1).map_err(|e| e.to_string())?;
        let want = sylvester_resultant(&f, &g, 1);
        ensure(got == want, format!("res({f}, {g}) = {got}, oracle {want}"))?;
        pairs += 1;
    }
    for _ in 0..ORACLE_TRIALS {
        let deg = rng.gen_range(1..=7);
        let mut c: Vec<Rational> = (0..=deg).map(|_| rat(rng.gen_range(-9..=9), 1)).collect();
        if c[deg].is_zero() {
            c[deg] = rat(1, 1);
        }
        let mut p = UPoly::new(c);
        if rng.gen_bool(0.3) {
            // force a repeated root
            let r = UPoly::from_ints(&[rng.gen_range(-3..=3), 1]);
            p = p.mul(&r).mul(&r);
        }
        let got = isolate_upoly(&p).len();
        let want = sturm_root_count(p.coeffs());
        ensure(got == want, format!("{p}: {got} roots isolated, Sturm says {want}"))?;
    }
    let mut complexes = 0;
    for name in fixture_names() {
        let g = load_fixture(name).map_err(|e| e.to_string())?;
        let mut subsets = vec![all_cells(&g)];
        for c in 0..g.len() {
            subsets.push(g.downset(c, false).into_iter().collect());
            subsets.push(g.downset(c, true).into_iter().collect());
        }
        for s in subsets {
            let cx = match order_complex(&g, &s) {
                Ok(cx) => cx,
                Err(Error::NotPoset(_)) => continue,
                Err(e) => return Err(e.to_string()),
            };
            let h = homology(&cx, None, false);
            if !h.torsion_free() {
                continue;
            }
            let want = betti_mod3(&cx);
            ensure(h.betti == want, format!("{name}: betti {:?}, mod 3 {want:?}", h.betti))?;
            complexes += 1;
        }
    }
    Ok(format!("{ORACLE_TRIALS} resultants, {ORACLE_TRIALS} root counts, {complexes} complexes agree"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("cell counts", cell_counts),
        ("fixture property matrix", property_matrix),
        ("lemma suite", lemma_suite),
        ("poset isomorphism", poset_iso),
        ("homology audits", homology_audits),
        ("well-based discrimination", well_based),
        ("section extension", section_extension),
        ("realization", realization),
        ("oracle cross-checks", oracles),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
