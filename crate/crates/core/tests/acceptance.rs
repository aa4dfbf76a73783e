//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any criterion fails.

mod common;

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use branchloc::cli::{parse_scenario, run_properties, Context};
use branchloc::differentials::{imperfection, kaehler, pulled_cotangent, relative_kaehler};
use branchloc::groebner::{AffineRing, Budget, Ideal};
use branchloc::loci::{branch_scheme, critical_scheme, LocusReport};
use branchloc::polyring::{parse_poly, Poly, PolyRing};
use branchloc::resolve::{module_contains, torsion_submodule, Matrix};
use branchloc::verify::{
    check_dci, check_duality, check_purity_branch, cutkosky_bound_report, defects, Clause, DciMode, Quantity, Tri,
    Verdict, VerificationReport,
};
use common::invariants::*;
use common::*;
use proptest::test_runner::{TestError, TestRunner};

const CASES: u32 = 100;

/// Collects the checks of one criterion; any failed check fails the criterion.
struct Criterion {
    failures: Vec<String>,
    start: Instant,
}

impl Criterion {
    fn new() -> Self {
        Criterion { failures: Vec::new(), start: Instant::now() }
    }

    fn check(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn within(&mut self, limit: Duration) {
        let t = self.start.elapsed();
        self.check(&format!("runtime {:.2}s < {}s", t.as_secs_f64(), limit.as_secs()), t < limit);
    }
}

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn load(path: &Path, b: &Budget) -> Context {
    let src = std::fs::read_to_string(path).unwrap();
    parse_scenario(&src).unwrap().context(b).unwrap()
}

fn ideal_of(ring: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
    Ideal::new(ring, gens.iter().map(|g| parse_poly(g, ring).unwrap()).collect())
}

fn radical_is(l: &LocusReport, gens: &[&str]) -> bool {
    l.codim.certified && l.codim.radical.as_deref() == Some(&gens.iter().map(|s| s.to_string()).collect::<Vec<_>>()[..])
}

fn clause<'a>(r: &'a VerificationReport, prefix: &str) -> Option<&'a Clause> {
    r.clauses.iter().find(|c| c.name.starts_with(prefix))
}

/// Every column of `x` lies in the span of `y` modulo `rel`.
fn spanned_by(base: &AffineRing, x: &Matrix, y: &Matrix, rel: &Matrix, budget: &Budget) -> bool {
    let span = y.hcat(rel);
    x.cols().iter().all(|c| module_contains(base, &span, c, budget).unwrap())
}

fn fold() -> Criterion {
    let mut c = Criterion::new();
    let b = Budget::default();
    let ctx = load(&corpus("a3_fold.plc"), &b);
    let pi = &ctx.maps["pi"];
    let ring = &pi.target.ring;
    let branch = branch_scheme(pi, 0, &b).unwrap();
    c.check("B = (x1 + x2*x3)", branch.ideal.same_as(&ideal_of(ring, &["x1 + x2*x3"]), &b).unwrap());
    c.check("codim+ B = 1 certified", branch.codim_plus() == Some(1));
    let crit = critical_scheme(pi, 0, &b).unwrap();
    let f = parse_poly("x1 + x2*x3", ring).unwrap();
    c.check(
        "rad F_0(C) = (x1 + x2*x3)",
        radical_is(&crit, &["x2*x3 + x1"]) && crit.ideal.radical_contains(&f, &b).unwrap(),
    );
    let dual = check_duality(pi, 2, &ctx.assertions, &b).unwrap();
    let indices: Vec<&str> = dual.clauses.iter().map(|c| &c.name[..3]).collect();
    c.check("duality F_i(C) = F_i(Omega) for i = 0..2", indices == ["F_0", "F_1", "F_2"]);
    c.check(
        "duality verified",
        dual.verdict == Verdict::Verified && dual.clauses.iter().all(|c| c.verdict == Verdict::Verified),
    );
    c.within(Duration::from_secs(5));
    c
}

fn whitney() -> Criterion {
    let mut c = Criterion::new();
    let b = Budget::default();
    let ctx = load(&corpus("whitney.plc"), &b);
    let w = &ctx.maps["w"];
    let branch = branch_scheme(w, 0, &b).unwrap();
    c.check("rad F_0(Omega_X/Y) = (s, t)", radical_is(&branch, &["s", "t"]));
    c.check("codim+ B = 2", branch.codim_plus() == Some(2));
    c.check("F_0(C) = (1)", critical_scheme(w, 0, &b).unwrap().ideal.is_unit(&b).unwrap());
    let rel = check_dci(&relative_kaehler(w, &b).unwrap(), DciMode::AtOrigin, &b).unwrap();
    c.check("dci(Omega_X/Y) = no", rel.answer == Tri::No);
    c.check("beta(Omega_X/Y) = (2, 3, 1)", rel.betti.as_deref() == Some(&[2, 3, 1][..]));
    let y = check_dci(&kaehler(&w.source, &b).unwrap(), DciMode::Global, &b).unwrap();
    c.check("dci(Omega_Y) = yes", y.answer == Tri::Yes);
    let cut = cutkosky_bound_report(w, &ctx.assertions, &b).unwrap();
    c.check("cutkosky verified", cut.verdict == Verdict::Verified);
    c.check(
        "cutkosky 2 <= 2",
        cut.clauses
            .iter()
            .any(|c| c.lhs == Quantity::Int(2) && c.rhs == Quantity::Int(2) && c.verdict == Verdict::Verified),
    );
    c.within(Duration::from_secs(10));
    c
}

fn birational() -> Criterion {
    let mut c = Criterion::new();
    let b = Budget::default();
    let ctx = load(&corpus("birational.plc"), &b);
    let h = &ctx.maps["h"];
    let branch = branch_scheme(h, 0, &b).unwrap();
    c.check("rad B = (y1, y2)", radical_is(&branch, &["y1", "y2"]));
    c.check("codim+ B = 2", branch.codim_plus() == Some(2));
    c.check("C empty", critical_scheme(h, 0, &b).unwrap().empty);
    c.check("delta_Y = 1", defects(&h.source, &b).unwrap().delta == 1);
    let p = check_purity_branch(h, 0, &ctx.assertions, &b).unwrap();
    let one = clause(&p, "(1)");
    c.check(
        "clause (1): 2 <= 2 with delta_Y = 1",
        one.is_some_and(|k| {
            k.lhs == Quantity::Int(2)
                && k.rhs == Quantity::Int(2)
                && k.verdict == Verdict::Verified
                && k.note.as_deref().is_some_and(|n| n.contains("delta_Y = 1"))
        }),
    );
    c.within(Duration::from_secs(20));
    c
}

fn cusp_chart() -> Criterion {
    let mut c = Criterion::new();
    let b = Budget::default();
    let ctx = load(&corpus("cusp_chart.plc"), &b);
    let chart = &ctx.maps["c"];
    let a = &ctx.rings["A"];
    let ra = &a.ring;
    let x: Poly = parse_poly("x", ra).unwrap();
    let omega = kaehler(a, &b).unwrap();
    let t = torsion_submodule(&omega, &x, &b).unwrap();
    let gens = t.embedding.clone().unwrap();
    c.check("torsion is cyclic", gens.ncols() == 1);
    let tau = Matrix::from_cols(ra, 2, vec![vec![parse_poly("2*y", ra).unwrap(), parse_poly("-3*x", ra).unwrap()]]);
    let rel = omega.full_relations();
    c.check(
        "torsion generated by 2y dx - 3x dy",
        spanned_by(a, &gens, &tau, &rel, &b) && spanned_by(a, &tau, &gens, &rel, &b),
    );

    let gamma = imperfection(chart, &b).unwrap();
    let pulled = tau.map_entries(|p| chart.pull_back(p).unwrap());
    let full = pulled_cotangent(chart, &b).unwrap().full_relations();
    let g = gamma.embedding.as_ref().unwrap();
    c.check("pullback(2y dx - 3x dy) in Gamma", spanned_by(&chart.target, &pulled, g, &full, &b));
    c.check("Gamma inside B * pullback(2y dx - 3x dy)", spanned_by(&chart.target, g, &pulled, &full, &b));
    c.within(Duration::from_secs(10));
    c
}

fn s<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| format!("{e:?}"))
}

fn properties() -> Criterion {
    let mut c = Criterion::new();
    let mut run = |name: &str, r: Result<(), String>| {
        let ok = r.is_ok();
        c.check(&format!("{name}: {}", r.err().unwrap_or_default()), ok)
    };
    let runner = || TestRunner::new(config(CASES));
    run("dual-fitting identity", s(runner().run(&linear_matrix(), |v| dual_fitting(&v))));
    run("fitting chain", s(runner().run(&chain_input(), |v| fitting_chain(&v))));
    run("auslander-buchsbaum", s(runner().run(&linear_matrix(), |v| auslander_buchsbaum(&v))));
    run("eagon-northcott", s(runner().run(&linear_matrix(), |v| eagon_northcott(&v))));
    run("groebner canonical", s(runner().run(&gb_input(), |v| groebner_canonical(&v))));
    run("polynomial round trip", s(runner().run(&small_poly(), |v| poly_round_trip(&v))));
    run("scenario round trip", s(runner().run(&scenario_input(), |v| scenario_round_trip(&v))));
    for o in run_properties(SEED, CASES as usize, &Budget::default()) {
        let msg = o.first_failure.clone().unwrap_or_default();
        run(&format!("seeded {}: {msg}", o.name), if o.passed() && o.cases >= 100 { Ok(()) } else { Err(msg) });
    }
    c
}

fn corpus_alarm() -> Criterion {
    let mut c = Criterion::new();
    let bin = env!("CARGO_BIN_EXE_branchloc");
    let dir = corpus("");
    let out = Command::new(bin).args(["corpus", dir.to_str().unwrap(), "--format", "structured"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let violated = v["verdicts"]["violated"].as_u64().unwrap_or(0);
    c.check(&format!("corpus has zero violated verdicts (found {violated})"), violated == 0);
    c.check(&format!("corpus exits 0 (got {:?})", out.status.code()), out.status.code() == Some(0));

    let mutated = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/whitney_mutated.plc");
    let run = |p: &Path| {
        let o = Command::new(bin).args(["run", p.to_str().unwrap(), "--format", "structured"]).output().unwrap();
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        let cut =
            v["tasks"].as_array().unwrap().iter().find(|t| t["task"] == "cutkosky(w)").unwrap()["verdict"].clone();
        (o.status.code(), cut)
    };
    let (clean_code, clean) = run(&corpus("whitney.plc"));
    let (code, flipped) = run(&mutated);
    c.check("unperturbed whitney is clean", clean_code == Some(0) && clean == "verified");
    c.check("mutation flips the cutkosky verdict", flipped == "violated");
    c.check("mutation exits 2", code == Some(2));
    c
}

type Run = fn() -> Criterion;

fn main() {
    let criteria: [(&str, Run); 6] = [
        ("1 fold of affine 3-space", fold),
        ("2 whitney quotient", whitney),
        ("3 birational map onto the cone", birational),
        ("4 cusp chart torsion and Gamma", cusp_chart),
        ("5 property suites, 100 cases, fixed seed", properties),
        ("6 corpus alarm contract", corpus_alarm),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let c = run();
        if c.failures.is_empty() {
            println!("PASS criterion {name}");
        } else {
            failed += 1;
            println!("FAIL criterion {name}: {}", c.failures.join("; "));
        }
    }
    println!("acceptance: {} passed, {failed} failed", 6 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
