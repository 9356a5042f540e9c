//! End-to-end acceptance run: one line per criterion.
//!
//! Built without the libtest harness so the table is always printed.

use std::time::{Duration, Instant};

use qsmzv::harness::{run_suite, Params};
use qsmzv::report::{Report, Status};

struct Criterion {
    n: u32,
    what: &'static str,
    suites: &'static [(&'static str, &'static [(&'static str, &'static str)])],
    limit: Option<Duration>,
}

const MIN: Duration = Duration::from_secs(60);

const CRITERIA: &[Criterion] = &[
    Criterion {
        n: 1,
        what: "truncated q-double-shuffle (wt <= 5, depth <= 3, q = 1/2, M = 2..6)",
        suites: &[("q-truncated-ds", &[("wt_max", "5"), ("depth_max", "3"), ("q", "1/2")])],
        limit: Some(Duration::from_secs(120)),
    },
    Criterion {
        n: 2,
        what: "truncated harmonic and shuffle product relations",
        suites: &[("products", &[("wt_max", "5"), ("q", "1/2")])],
        limit: None,
    },
    Criterion {
        n: 3,
        what: "iota is a homomorphism on 200 seeded pairs, both products",
        suites: &[("iota", &[("pairs", "200"), ("wt_max", "5")])],
        limit: None,
    },
    Criterion {
        n: 4,
        what: "evaluator cross-oracles (Kontsevich order, T, L_q)",
        suites: &[("cross-oracles", &[])],
        limit: None,
    },
    Criterion {
        n: 5,
        what: "generating-series identity catalog at order 5",
        suites: &[("identities", &[("order", "5")])],
        limit: Some(Duration::from_secs(120)),
    },
    Criterion {
        n: 6,
        what: "structure theorems and E-closure",
        suites: &[("structure", &[]), ("e-closure", &[]), ("shuffle-relation", &[])],
        limit: None,
    },
    Criterion {
        n: 7,
        what: "closed forms, depth-two reduction, Ohno instances",
        suites: &[("closed-forms", &[("M", "20")])],
        limit: None,
    },
    Criterion {
        n: 8,
        what: "numerical limits as q -> 1",
        suites: &[("limits", &[])],
        limit: Some(MIN),
    },
    Criterion {
        n: 9,
        what: "appendix bounds (grid inequality, domination)",
        suites: &[("bounds", &[])],
        limit: None,
    },
    Criterion {
        n: 10,
        what: "classical truncated double shuffle and Ohno machinery",
        suites: &[("classical-ds", &[("wt_max", "5"), ("M", "6")])],
        limit: None,
    },
];

/// Cases that fail because the stated property is false for the values the
/// library computes (confirmed against an independent evaluation):
/// `Z_q((e1-g1)g2)` is 0.0214, 0.0849, 0.0292, 0.0052 at q = 0.5, 0.9, 0.99,
/// 0.999, so it rises before it decays and is not decreasing on that grid.
const KNOWN_FALSE: &[(u32, &str)] = &[(8, "(e1-g1)g2 decreasing")];

fn run(c: &Criterion) -> (Vec<Report>, Duration) {
    let t = Instant::now();
    let reports = c
        .suites
        .iter()
        .map(|(name, ps)| {
            let params: Params = ps.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
            run_suite(name, &params).unwrap_or_else(|e| panic!("suite {name}: {e}"))
        })
        .collect();
    (reports, t.elapsed())
}

fn main() {
    let mut unexpected = Vec::new();
    for c in CRITERIA {
        let (reports, took) = run(c);
        let cases = reports.iter().flat_map(|r| r.cases.iter());
        let total = cases.clone().count();
        let failed: Vec<_> = cases.clone().filter(|x| x.status == Status::Fail).collect();
        let skipped = cases.filter(|x| x.status == Status::Skip).count();
        let slow = c.limit.is_some_and(|l| took > l);
        let ok = failed.is_empty() && skipped == 0 && !slow;

        let mut line = format!(
            "criterion {:>2}: {} - {} ({} cases, {} failed, {} skipped, {:.1}s",
            c.n,
            if ok { "PASS" } else { "FAIL" },
            c.what,
            total,
            failed.len(),
            skipped,
            took.as_secs_f64()
        );
        if let Some(l) = c.limit {
            line += &format!(", limit {}s", l.as_secs());
        }
        line += ")";
        println!("{line}");
        for f in &failed {
            println!("    failed: {}: {} vs {}", f.id, f.lhs, f.rhs);
        }

        for f in &failed {
            if !KNOWN_FALSE.contains(&(c.n, f.id.as_str())) {
                unexpected.push(format!("criterion {}: {}", c.n, f.id));
            }
        }
        if skipped > 0 {
            unexpected.push(format!("criterion {}: {skipped} skipped cases", c.n));
        }
        if slow {
            unexpected.push(format!("criterion {}: took {:.1}s", c.n, took.as_secs_f64()));
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:#?}");
        std::process::exit(1);
    }
}
