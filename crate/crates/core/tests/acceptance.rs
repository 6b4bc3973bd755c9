use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use silting_core::algebra::Algebra;
use silting_core::complex::{cone, ChainMap, Complex, DEFAULT_LENGTH_CAP};
use silting_core::dg::{dg_cohomology, dg_end, h0_algebra};
use silting_core::fixtures;
use silting_core::hom::hom_complex;
use silting_core::instance::Instance;
use silting_core::matrix::axpy;
use silting_core::module::{hom_space, Module};
use silting_core::semifree::DegreeWindow;
use silting_core::silting::{coresolve_a, goodify, is_presilting, silting_equivalent, DEFAULT_MAX_STEPS};
use silting_core::verifier::{
    default_probes, verify_counit, verify_delta, verify_fully_faithful, verify_tilting_theorem, CheckRecord, Context, Settings,
    Verdict, VerificationReport,
};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(stem: &str) -> Instance {
    let file = fixtures::all().into_iter().find(|(s, _)| *s == stem).expect("known fixture").1;
    Instance::build(file).expect("fixture builds")
}

fn window() -> DegreeWindow {
    DegreeWindow::new(-3, 3).unwrap()
}

fn passes(rec: &CheckRecord) -> Outcome {
    ensure(rec.passed(), || format!("{} on {} did not pass: {:?}", rec.name, rec.subject, rec.witness))
}

fn no_margin_witness(rec: &CheckRecord) -> Outcome {
    let bad = rec.witness.as_ref().is_some_and(|w| w.quantity.starts_with("margin:"));
    ensure(!bad, || format!("{} on {} changed under a larger cutoff: {:?}", rec.name, rec.subject, rec.witness))
}

/// `dim H^n(cone f) = (h^n Y - rk H^n f) + (h^{n+1} X - rk H^{n+1} f)` in every degree.
fn cone_identity(f: &ChainMap, c: &Complex) -> Outcome {
    let (x, y) = (f.source(), f.target());
    let lo = c.lo().min(x.lo() - 1).min(y.lo()) - 1;
    let hi = c.hi().max(x.hi()).max(y.hi()) + 1;
    for n in lo..=hi {
        let rk = |m: i32| f.induced_map(m).rank();
        let expected = (y.cohomology_dim(n) - rk(n)) + (x.cohomology_dim(n + 1) - rk(n + 1));
        let found = c.cohomology_dim(n);
        ensure(found == expected, || format!("cone identity fails in degree {n}: {found} != {expected}"))?;
    }
    Ok(())
}

fn complex_invariants(c: &Complex) -> Outcome {
    for n in c.lo()..c.hi() {
        let d = c.diff(n);
        if n + 1 < c.hi() {
            ensure(c.diff(n + 1).mul(&d).is_zero(), || format!("d^2 != 0 at degree {n}"))?;
        }
        ensure(d.rank() + d.kernel_basis().cols() == d.cols(), || format!("rank-nullity fails at degree {n}"))?;
    }
    ensure(c.euler_characteristic() == c.cohomology_euler_characteristic(), || "Euler characteristics differ".into())
}

fn random_two_term(a: &Arc<Algebra>, rng: &mut ChaCha8Rng, lo: i32) -> Complex {
    let f = a.field();
    let pick = |rng: &mut ChaCha8Rng| -> Vec<usize> { (0..rng.gen_range(0..3)).map(|_| rng.gen_range(0..2)).collect() };
    let p = Module::projective_sum(a, &pick(rng)).unwrap();
    let q = Module::projective_sum(a, &pick(rng)).unwrap();
    let h = hom_space(a, &p, &q);
    let coeffs: Vec<_> = (0..h.dim()).map(|_| f.from_i64(rng.gen_range(-3..4))).collect();
    Complex::new(a.clone(), lo, vec![p, q], vec![h.element(f, &coeffs)]).unwrap()
}

fn random_chain_map(x: &Complex, y: &Complex, rng: &mut ChaCha8Rng) -> ChainMap {
    let f = x.field();
    let h = hom_complex(x, y);
    let mut v = vec![f.zero(); h.dim(0)];
    for col in h.diff(0).kernel_basis().columns() {
        axpy(f, &mut v, &f.from_i64(rng.gen_range(-3..4)), &col);
    }
    h.chain_map(&v)
}

fn small(c: &Complex) -> bool {
    let width = c.support().map_or(0, |(lo, hi)| hi - lo);
    width <= 3 && c.terms().iter().all(|m| m.dim() <= 4)
}

/// Cones of random maps between random two-term complexes of projectives over `A2`,
/// kept when every term has dimension at most 4 and the support width is at most 3.
fn random_complexes(a: &Arc<Algebra>, count: usize) -> Vec<(ChainMap, Complex)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let mut out = Vec::new();
    while out.len() < count {
        let lo = rng.gen_range(-2..2);
        let x = random_two_term(a, &mut rng, lo);
        let ylo = lo + rng.gen_range(0..2);
        let y = random_two_term(a, &mut rng, ylo);
        let f = random_chain_map(&x, &y, &mut rng);
        let c = cone(&f).0;
        if small(&c) {
            out.push((f, c));
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let a2 = fixture("fix-a2");
    for (k, (f, c)) in random_complexes(&a2.algebra, 100).iter().enumerate() {
        for x in [f.source(), f.target(), c] {
            complex_invariants(x).map_err(|e| format!("random complex {k}: {e}"))?;
        }
        cone_identity(f, c).map_err(|e| format!("random complex {k}: {e}"))?;
        if !c.is_zero() {
            dg_end(c).unwrap().algebra.check_invariants().map_err(|e| format!("random complex {k}: {e}"))?;
        }
    }
    for (stem, _) in fixtures::all() {
        let inst = fixture(stem);
        for name in inst.names() {
            let x = inst.object(name).unwrap();
            complex_invariants(&x).map_err(|e| format!("{stem}/{name}: {e}"))?;
            let id = ChainMap::identity(&x);
            let (c, _) = cone(&id);
            cone_identity(&id, &c).map_err(|e| format!("{stem}/{name}: {e}"))?;
            if !x.is_projective() || x.is_zero() {
                continue;
            }
            let end = dg_end(&x).unwrap();
            end.algebra.check_invariants().map_err(|e| format!("{stem}/{name}: {e}"))?;
            if is_presilting(&x).unwrap().holds {
                let ctx = Context::new(&x).unwrap();
                ctx.left().check_invariants().map_err(|e| format!("{stem}/{name} left module: {e}"))?;
                for p in default_probes(&x).unwrap() {
                    let m = ctx.hom_module(&p.complex).unwrap();
                    m.check_invariants().map_err(|e| format!("{stem}/{name} RHom(U, {}): {e}", p.name))?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let u = fixture("fix-silt2").object("U").unwrap();
    let b = dg_end(&u).unwrap().algebra;
    for n in b.lo()..=b.hi() {
        let expected = match n {
            -1 => 1,
            0 => 2,
            n if n > 0 => 0,
            _ => continue,
        };
        let d = dg_cohomology(&b, n);
        ensure(d == expected, || format!("dim H^{n}(B) = {d}, expected {expected}"))?;
    }
    let h0 = h0_algebra(&b).map_err(|e| e.to_string())?;
    ensure(h0.algebra.is_commutative(), || "H^0(B) is not commutative".into())?;
    match h0.algebra.split_idempotent_basis() {
        Some(Ok(e)) => ensure(e.len() == 2, || format!("{} orthogonal idempotents, expected 2", e.len())),
        other => Err(format!("H^0(B) is not split semisimple: {other:?}")),
    }
}

fn derived_checks(stem: &str, margin: i32) -> Outcome {
    let u = fixture(stem).object("U").unwrap();
    let ctx = Context::new(&u).unwrap();
    let probes = default_probes(&u).unwrap();
    let mut records = Vec::new();
    for p in &probes {
        records.push(verify_counit(&ctx, &p.name, &p.complex, window(), margin).unwrap());
    }
    records.push(verify_delta(&ctx, window(), margin).unwrap());
    let range = DegreeWindow::new(-2, 2).unwrap();
    for p in &probes {
        for q in &probes {
            records.push(verify_fully_faithful(&ctx, (&p.name, &p.complex), (&q.name, &q.complex), range, DEFAULT_LENGTH_CAP, margin).unwrap());
        }
    }
    for rec in &records {
        passes(rec).map_err(|e| format!("{stem}: {e}"))?;
        no_margin_witness(rec).map_err(|e| format!("{stem}: {e}"))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    derived_checks("fix-tilt", 0)?;
    derived_checks("fix-silt2", 0)
}

fn criterion_4() -> Outcome {
    for stem in ["fix-tilt", "fix-silt2"] {
        let u = fixture(stem).object("U").unwrap();
        let c = coresolve_a(&u, DEFAULT_MAX_STEPS).unwrap().ok_or(format!("{stem}: coresolution did not finish"))?;
        ensure(c.n() <= 1, || format!("{stem}: n = {}", c.n()))?;
        for (i, step) in c.steps.iter().enumerate() {
            cone_identity(&step.triangle.map, step.cone()).map_err(|e| format!("{stem} triangle {i}: {e}"))?;
        }
        ensure(c.steps.last().unwrap().cone().is_acyclic(), || format!("{stem}: final cone not acyclic"))?;
        let g = goodify(&u, DEFAULT_MAX_STEPS).unwrap();
        ensure(is_presilting(&g).unwrap().holds, || format!("{stem}: goodified complex is not presilting"))?;
        ensure(silting_equivalent(&u, &g, DEFAULT_MAX_STEPS).unwrap(), || format!("{stem}: goodified complex not equivalent"))?;
    }
    Ok(())
}

fn tilting_report(margin: i32) -> VerificationReport {
    let inst = fixture("fix-tilt");
    let a = inst.algebra.clone();
    let mut probes: Vec<(String, Module)> = Vec::new();
    for v in 0..2 {
        probes.push((format!("S{}", v + 1), Module::simple(&a, v).unwrap()));
    }
    for v in 0..2 {
        probes.push((format!("P{}", v + 1), Module::projective(&a, v).unwrap()));
    }
    let t = inst.module("T").unwrap().clone();
    let settings = Settings { window: window(), margin, ..Settings::default() };
    verify_tilting_theorem("FIX-TILT", "T", &t, &a, &probes, settings).unwrap()
}

fn tilting_checks(report: &VerificationReport) -> Outcome {
    let a_dim = fixture("fix-tilt").algebra.dim();
    for name in ["tilting", "end_concentrated", "delta"] {
        passes(report.check(name).next().ok_or(format!("missing {name}"))?)?;
    }
    let delta = report.check("delta").next().unwrap();
    let r = delta.tables["rank H0(δ)"][&0];
    ensure(r == a_dim, || format!("rank H0(δ) = {r}, dim A = {a_dim}"))?;
    ensure(report.classification.len() == 4, || "four indecomposables classified".into())?;
    for c in &report.classification {
        ensure(matches!(c.class, Some(0 | 1)), || format!("{} lies in no X_i: {:?}", c.object, c.dims))?;
    }
    let roundtrips: Vec<&CheckRecord> = report.checks.iter().filter(|c| c.name == "ext_tor_roundtrip").collect();
    ensure(roundtrips.len() == 4, || format!("{} roundtrip checks", roundtrips.len()))?;
    for rec in report.checks.iter() {
        passes(rec)?;
        no_margin_witness(rec)?;
    }
    ensure(report.verdict == Verdict::Pass, || format!("verdict {:?}", report.verdict))
}

fn criterion_5() -> Outcome {
    tilting_checks(&tilting_report(0))
}

fn criterion_6() -> Outcome {
    derived_checks("fix-tilt", 3)?;
    derived_checks("fix-silt2", 3)?;
    tilting_checks(&tilting_report(3))
}

const DUAL: &str = r#"{
  "schema": 1,
  "name": "dual numbers",
  "field": {"prime": 101},
  "quiver": {
    "vertices": ["1"],
    "arrows": [{"label": "x", "source": 0, "target": 0}],
    "relations": [[{"coeff": 1, "path": ["x", "x"]}]]
  },
  "modules": {"k": {"dims": [1], "arrows": [[[0]]]}}
}"#;

fn criterion_7() -> Outcome {
    let wrong = fixture("fix-a2").object("silt2-wrong-orientation").unwrap();
    let p = is_presilting(&wrong).unwrap();
    ensure(!p.holds, || "wrong orientation reported presilting".into())?;
    ensure(matches!(p.witness, Some((1, d)) if d >= 1), || format!("witness {:?}", p.witness))?;

    let dual = Instance::parse(DUAL).unwrap();
    let k = dual.module("k").unwrap().clone();
    let settings = Settings { cap: 6, ..Settings::default() };
    let report = verify_tilting_theorem("dual numbers", "k", &k, &dual.algebra, &[("k".into(), k.clone())], settings).unwrap();
    ensure(report.verdict == Verdict::Inconclusive, || format!("verdict {:?}", report.verdict))?;
    let noted = report.checks.iter().flat_map(|c| &c.notes).any(|n| n.contains("not tilting"));
    ensure(noted, || "no \"not tilting\" note".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1 invariants on fixtures and random complexes", criterion_1),
        ("2 weak non-positivity and H0 of the two-term complex", criterion_2),
        ("3 counit, fully faithful and delta on the fixtures", criterion_3),
        ("4 goodify and the coresolution contract", criterion_4),
        ("5 tilting pipeline", criterion_5),
        ("6 stability under a larger cutoff", criterion_6),
        ("7 negative controls", criterion_7),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(()) => println!("PASS criterion {name} ({secs:.1}s)"),
            Err(e) => {
                println!("FAIL criterion {name} ({secs:.1}s): {e}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn random_complexes_are_reproducible() {
    let a = fixture("fix-a2").algebra;
    let dims = |v: Vec<(ChainMap, Complex)>| v.iter().map(|(_, c)| c.total_dim()).collect::<Vec<_>>();
    assert_eq!(dims(random_complexes(&a, 20)), dims(random_complexes(&a, 20)));
}

