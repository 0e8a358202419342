//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

mod support;

use fusionlab::check::corpus::{self, ModuleChoice};
use fusionlab::check::{acceptance_manifest, run_check, CheckReport, CheckSpec, Verdict};
use fusionlab::cohom::bar_cohomology;
use std::process::ExitCode;
use std::time::{Duration, Instant};

/// Dimension comparisons are exact.
const DIM_TOLERANCE: usize = 0;
/// Per-instance wall-clock ceilings, single-threaded.
const LIMIT_CARTAN_EILENBERG: Duration = Duration::from_secs(5 * 60);
const LIMIT_THEOREM_A: Duration = Duration::from_secs(10 * 60);
const LIMIT_PSOLVABLE: Duration = Duration::from_secs(30 * 60);
const LIMIT_OTHER: Duration = Duration::from_secs(30 * 60);
/// Bar-complex oracles are computed for groups up to this order.
const BAR_ORACLE_MAX_ORDER: usize = 12;
/// Least number of admitted randomized instances per property suite.
const PROPERTY_INSTANCES: usize = 100;

struct Run {
    spec: CheckSpec,
    report: Result<CheckReport, String>,
    elapsed: Duration,
}

fn close(a: usize, b: usize) -> bool {
    a.abs_diff(b) <= DIM_TOLERANCE
}

fn bar_dims(inst: &str, m: ModuleChoice, n: usize) -> Option<Vec<usize>> {
    let inst = corpus::instance(inst).ok()?;
    if inst.group.order() > BAR_ORACLE_MAX_ORDER {
        return None;
    }
    let module = inst.module(m);
    Some(bar_cohomology(&module, &inst.group.whole(), n).ok()?.iter().map(|b| b.dim()).collect())
}

fn module_of(spec: &CheckSpec) -> ModuleChoice {
    match &spec.module {
        Some(fusionlab::check::ModuleSpec::Choice(m)) => *m,
        _ => ModuleChoice::Trivial,
    }
}

/// Problems with one run: verdict, exact rows, time ceiling.
fn problems(r: &Run, limit: Duration) -> Vec<String> {
    let label = format!("{} {}", r.spec.check, r.spec.instance.as_deref().unwrap_or("-"));
    let rep = match &r.report {
        Ok(rep) => rep,
        Err(e) => return vec![format!("{label}: error {e}")],
    };
    let mut out = Vec::new();
    if rep.verdict != Verdict::Pass {
        out.push(format!("{label}: {} {}", rep.verdict.label(), rep.witness.as_deref().unwrap_or("")));
    }
    if rep.degrees.is_empty() {
        out.push(format!("{label}: no rows"));
    }
    for d in &rep.degrees {
        if d.equal && !close(d.lhs_dim, d.rhs_dim) {
            out.push(format!("{label}: n={} {} vs {}", d.n, d.lhs_dim, d.rhs_dim));
        }
    }
    if r.elapsed > limit {
        out.push(format!("{label}: {:.1?} over {:?}", r.elapsed, limit));
    }
    out
}

fn line(ok: bool, n: usize, title: &str, detail: &str) -> bool {
    println!("[{}] criterion {n}: {title} ({detail})", if ok { "PASS" } else { "FAIL" });
    ok
}

fn main() -> ExitCode {
    let start = Instant::now();
    let runs: Vec<Run> = acceptance_manifest()
        .checks
        .into_iter()
        .map(|spec| {
            let t = Instant::now();
            let report = run_check(&spec.check, &spec).map_err(|e| e.to_string());
            Run { spec, report, elapsed: t.elapsed() }
        })
        .collect();
    let of = |name: &'static str| runs.iter().filter(move |r| r.spec.check == name);
    let mut all = true;

    // 1: stable elements for the full family against H^*(G, M), with a bar oracle on small groups
    let mut p1 = Vec::new();
    let mut oracles = 0;
    for r in of("cartan-eilenberg") {
        p1.extend(problems(r, LIMIT_CARTAN_EILENBERG));
        let (Ok(rep), Some(inst)) = (&r.report, r.spec.instance.as_deref()) else { continue };
        if let Some(bar) = bar_dims(inst, module_of(&r.spec), r.spec.max_degree) {
            oracles += 1;
            let lhs: Vec<usize> = rep.degrees.iter().map(|d| d.lhs_dim).collect();
            if lhs != bar {
                p1.push(format!("{inst}: stable {lhs:?}, bar {bar:?}"));
            }
        }
    }
    let n1 = of("cartan-eilenberg").count();
    all &= line(p1.is_empty() && n1 == 14, 1, "Cartan-Eilenberg stable elements", &format!("{n1} instances, {oracles} bar oracles, n<=3 {}", p1.join("; ")));

    let simple = |name: &'static str, limit: Duration, expected: usize| -> (bool, String) {
        let p: Vec<String> = of(name).flat_map(|r| problems(r, limit)).collect();
        let count = of(name).count();
        (p.is_empty() && count == expected, format!("{count} instances {}", p.join("; ")))
    };

    let (ok, d) = simple("theorem-a", LIMIT_THEOREM_A, 3);
    all &= line(ok, 2, "nerve of T^c against stable(centric), delta full rank", &d);

    let (ok, d) = simple("constrained", LIMIT_OTHER, 2);
    all &= line(ok, 3, "constrained case: model, H(G), stable(centric), constrained nerve", &d);

    // 4: both sides against the bar complex of S3 with sign coefficients
    let (mut ok, mut d) = simple("coprime", LIMIT_OTHER, 1);
    if let (Some(Ok(rep)), Some(bar)) = (of("coprime").next().map(|r| &r.report), bar_dims("S3@3", ModuleChoice::Twisted, 3)) {
        let lhs: Vec<usize> = rep.degrees.iter().map(|x| x.lhs_dim).collect();
        let rhs: Vec<usize> = rep.degrees.iter().map(|x| x.rhs_dim).collect();
        ok &= lhs == bar && rhs == bar;
        d = format!("nerve {lhs:?}, stable {rhs:?}, bar {bar:?} {d}");
    } else {
        ok = false;
    }
    all &= line(ok, 4, "coprime action, S3 at 3 with sign", &d);

    let (ok, d) = simple("fixed-point-lemma", LIMIT_OTHER, 7);
    all &= line(ok, 5, "fixed points of Aut_F(S) on stable(O^p'(F))", &d);

    let (ok, d) = simple("psolvable", LIMIT_PSOLVABLE, 1);
    all &= line(ok, 6, "p-solvable action, S4 at 2", &d);

    let (ok, d) = simple("grodal", LIMIT_OTHER, 3);
    all &= line(ok, 7, "Grodal family equals full family", &d);

    // 8: exactly one essential class, the base, of type E1
    let (mut ok, mut d) = simple("wreath", LIMIT_OTHER, 1);
    match of("wreath").next().map(|r| &r.report) {
        Some(Ok(rep)) => {
            let ess = rep.details.as_ref().and_then(|v| v["essentials"].as_array().cloned()).unwrap_or_default();
            let base = ess.len() == 1 && ess[0]["is_base"] == true && ess[0]["kind"] == "E1" && ess[0]["matches"] == true;
            ok &= base;
            d = format!("{} essential class(es), base E1: {base} {d}", ess.len());
        }
        _ => ok = false,
    }
    all &= line(ok, 8, "wreath S3 at 3: essentials, Shapiro and coinduction", &d);

    // 9: every property suite on at least PROPERTY_INSTANCES admitted draws, with a floor on nontrivial subchecks
    let mut p9 = Vec::new();
    let mut counts = Vec::new();
    for (i, s) in support::SUITES.iter().enumerate() {
        let want = s.instances.max(PROPERTY_INSTANCES);
        let r = support::run_suite(s, 0xacce_0000 + ((i as u64) << 20), want);
        counts.push(format!("{}: {}", s.name, r.admitted));
        if let Some(f) = r.failure {
            p9.push(format!("{}: {f}", s.name));
        } else if r.admitted < want {
            p9.push(format!("{}: {} admitted of {} draws", s.name, r.admitted, r.draws));
        } else if r.weight < s.min_weight {
            p9.push(format!("{}: {} nontrivial subchecks", s.name, r.weight));
        }
    }
    all &= line(p9.is_empty(), 9, "structural property suites", &format!("{} {}", counts.join(", "), p9.join("; ")));

    println!("acceptance: {} in {:.1?}", if all { "all criteria pass" } else { "FAILED" }, start.elapsed());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
