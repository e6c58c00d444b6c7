//! Acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so every line reaches the terminal. The
//! process fails if any criterion fails other than the known-false weight
//! lattice description of the integral Weyl group, which is reported but
//! expected to fail.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use linkage::oracle::{self, Report};
use linkage::{Engine, Exec, RootSystem, Weight};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn from_reports(reports: &[Report]) -> Outcome {
        let checked: usize = reports.iter().map(|r| r.checked).sum();
        let failures: usize = reports.iter().map(|r| r.failures).sum();
        let first = reports
            .iter()
            .find_map(|r| r.first_counterexample().map(|c| format!("; first: {c}")))
            .unwrap_or_default();
        Outcome {
            passed: failures == 0 && checked > 0,
            detail: format!("{checked} checked, {failures} failed{first}"),
        }
    }

    fn from_problems(checked: usize, problems: Vec<String>) -> Outcome {
        let first = problems
            .first()
            .map(|c| format!("; first: {c}"))
            .unwrap_or_default();
        Outcome {
            passed: problems.is_empty() && checked > 0,
            detail: format!("{checked} checked, {} failed{first}", problems.len()),
        }
    }
}

fn rs(label: &str) -> RootSystem {
    RootSystem::from_label(label).unwrap()
}

fn w(s: &str) -> Weight {
    s.parse().unwrap()
}

fn rank_one() -> Outcome {
    let a1 = rs("A1");
    let engine = Engine::new(&a1);
    let e = a1.identity();
    let targets = ["-3", "-2", "-1", "0", "1", "2", "3", "1/2", "-1/2"];
    let sources = oracle::test_grid(1, 4);
    let mut checked = 0;
    let mut problems = Vec::new();
    for m in targets {
        let mu2 = w(&format!("({m})"));
        let m = mu2.coords()[0];
        let mut expected: BTreeSet<Weight> = [mu2.clone()].into();
        if m.is_integer() && m > 0.into() {
            expected.insert(a1.reflect_idx(0, &mu2));
        }
        let mut candidates: BTreeSet<Weight> = sources.iter().cloned().collect();
        candidates.extend(expected.iter().cloned());
        for mu1 in &candidates {
            checked += 1;
            let v = engine.hom_twisted_verma(&e, mu1, &e, &mu2).unwrap();
            if v.hom_nonzero != expected.contains(mu1) {
                problems.push(format!("mu1={mu1} mu2={mu2}: got {}", v.hom_nonzero));
            }
        }
    }
    Outcome::from_problems(checked, problems)
}

fn bgg_equivalence() -> Outcome {
    let mut reports = Vec::new();
    for label in ["A1", "A2", "B2"] {
        let r = rs(label);
        let pairs = oracle::all_pairs(&oracle::integral_box(r.rank(), 2));
        reports.push(oracle::check_bgg_equivalence(&r, &pairs, Exec::Parallel));
    }
    let a3 = rs("A3");
    // Every seventh pair of the A3 box: 2233 of 15625.
    let sampled: Vec<_> = oracle::all_pairs(&oracle::integral_box(3, 2))
        .into_iter()
        .step_by(7)
        .collect();
    reports.push(oracle::check_bgg_equivalence(&a3, &sampled, Exec::Parallel));
    for label in ["A1", "A2", "B2", "A3"] {
        let r = rs(label);
        let pairs = oracle::random_pairs(&r, 1000, 2024).unwrap();
        reports.push(oracle::check_bgg_equivalence(&r, &pairs, Exec::Parallel));
    }
    Outcome::from_reports(&reports)
}

const A_SET_TYPES: [&str; 5] = ["A2", "B2", "G2", "A3", "B3"];

fn word_independence() -> Outcome {
    let reports: Vec<Report> = A_SET_TYPES
        .iter()
        .map(|l| {
            let r = rs(l);
            let grid = oracle::test_grid(r.rank(), 2);
            oracle::check_word_independence(&r, &grid, 16, Exec::Parallel, &oracle::reference_a_set)
        })
        .collect();
    Outcome::from_reports(&reports)
}

fn concatenation() -> Outcome {
    let reports: Vec<Report> = A_SET_TYPES
        .iter()
        .map(|l| {
            let r = rs(l);
            let grid = oracle::test_grid(r.rank(), 2);
            oracle::check_concatenation(&r, &grid, Exec::Parallel, &oracle::reference_a_set)
        })
        .collect();
    Outcome::from_reports(&reports)
}

fn worked_example() -> Outcome {
    let a2 = rs("A2");
    let engine = Engine::new(&a2);
    let w0 = a2.longest_element();
    let word = a2.canonical_reduced_word(&w0);
    let orbit: BTreeSet<Weight> = a2
        .enumerate_group(1000)
        .unwrap()
        .iter()
        .map(|g| g.apply(&w("(1,1)")))
        .collect();
    let cases = [("(-1,-1)", orbit), ("(1,1)", [w("(1,1)")].into())];
    let mut problems = Vec::new();
    for (mu, expected) in &cases {
        let mu = w(mu);
        let set = engine.a_set(engine.full_data(), &w0, &mu).unwrap();
        if &set.element_set() != expected {
            problems.push(format!("A_w0({mu}) = {set}"));
        }
        let brute = oracle::brute_force_a_set(&a2, word.letters(), &mu);
        if &brute != expected {
            problems.push(format!(
                "brute force A_w0({mu}) has {} elements",
                brute.len()
            ));
        }
        if let Err(e) = set.replay(&a2) {
            problems.push(format!("A_w0({mu}): {e}"));
        }
        for x in expected {
            if set.certificate(&a2, x).is_none() {
                problems.push(format!("A_w0({mu}): no certificate for {x}"));
            }
        }
    }
    Outcome::from_problems(cases.len(), problems)
}

fn invariances() -> Outcome {
    let mut reports = Vec::new();
    for label in ["A1", "A2", "B2", "G2", "A1xA1"] {
        let r = rs(label);
        let grid = oracle::test_grid(r.rank(), 2);
        let lambdas = oracle::dominant_only(&r, &oracle::test_grid(r.rank(), 1));
        reports.push(oracle::check_verma_reflexivity(&r, &grid, Exec::Parallel));
        reports.push(oracle::check_ps_reflexivity(
            &r,
            &lambdas,
            1,
            Exec::Parallel,
        ));
        reports.push(oracle::check_a2_invariance(&r, &grid, Exec::Parallel));
    }
    let a2 = rs("A2");
    let singular = [w("(0,1)"), w("(1,0)"), w("(0,0)")];
    reports.push(oracle::check_stabilizer_invariance(
        &a2,
        &singular,
        2,
        Exec::Parallel,
    ));
    Outcome::from_reports(&reports)
}

fn reduce_parameters() -> Outcome {
    let reports: Vec<Report> = ["A2", "B2"]
        .iter()
        .map(|l| {
            let r = rs(l);
            oracle::check_reduce_parameters(&r, &oracle::test_grid(r.rank(), 2), Exec::Parallel)
        })
        .collect();
    Outcome::from_reports(&reports)
}

const STRUCTURE_TYPES: [&str; 11] = [
    "A1", "A1xA1", "A2", "B2", "G2", "A3", "B3", "C3", "A2xA1", "B2xA1", "A1xA1xA1",
];

fn integral_structure() -> Outcome {
    let reports: Vec<Report> = STRUCTURE_TYPES
        .iter()
        .map(|l| {
            let r = rs(l);
            oracle::check_integral_structure(&r, &oracle::test_grid(r.rank(), 1), Exec::Parallel)
        })
        .collect();
    Outcome::from_reports(&reports)
}

fn weight_lattice_description() -> Outcome {
    let reports: Vec<Report> = STRUCTURE_TYPES
        .iter()
        .map(|l| {
            let r = rs(l);
            oracle::check_weight_lattice_description(
                &r,
                &oracle::test_grid(r.rank(), 1),
                Exec::Parallel,
            )
        })
        .collect();
    Outcome::from_reports(&reports)
}

fn scratch_dir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("linkage-acceptance-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn linkage(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkage"))
        .args(args)
        .env("LINKAGE_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn cli_determinism() -> Outcome {
    let cache = scratch_dir("cli");
    let queries: [&[&str]; 6] = [
        &[
            "hom-verma",
            "A2",
            "e",
            "(1,1)",
            "e",
            "(1,1)",
            "--certificates",
        ],
        &["hom-verma", "B2", "s1 s2", "(-1,1/2)", "s2", "(1,-1/2)"],
        &[
            "hom-ps",
            "A1",
            "--lambda",
            "(1)",
            "e",
            "(1)",
            "e",
            "(-1)",
            "--certificates",
        ],
        &["aset", "A2", "s1 s2 s1", "(-1,-1)", "--format", "tsv"],
        &["integral", "B2", "(1/2,1)", "--format", "human"],
        &["table", "A2", "--mu-orbit", "(1,1)", "--w-all"],
    ];
    let mut checked = 0;
    let mut problems = Vec::new();
    for q in queries {
        let first = linkage(&cache, q);
        let again = linkage(&cache, q);
        let uncached = linkage(&cache, &[q, &["--no-cache"]].concat());
        checked += 1;
        if first.status.code() != Some(0) {
            problems.push(format!("{q:?} exited {:?}", first.status.code()));
        } else if first.stdout != again.stdout || first.stdout != uncached.stdout {
            problems.push(format!("{q:?} output differs between runs"));
        }
    }

    // |W|^2 * |orbit|^2 rows: 6 * 6 * 6 * 6.
    let table = linkage(
        &cache,
        &[
            "table",
            "A2",
            "--mu-orbit",
            "(1,1)",
            "--w-all",
            "--format",
            "tsv",
        ],
    );
    let rows = String::from_utf8_lossy(&table.stdout)
        .lines()
        .count()
        .saturating_sub(1);
    checked += 1;
    if rows != 1296 {
        problems.push(format!("A2 orbit table has {rows} rows"));
    }
    let small = linkage(&cache, &["table", "B2", "--grid-radius", "1"]);
    let text = String::from_utf8_lossy(&small.stdout);
    checked += 1;
    if !text.contains("\"row_count\": 81") {
        problems.push("B2 radius-one table does not report 81 rows".into());
    }

    let reference = linkage(&cache, queries[0]).stdout;
    std::fs::write(cache.join("aset-cache.json"), "{ damaged").unwrap();
    let recovered = linkage(&cache, queries[0]);
    checked += 1;
    if recovered.stdout != reference
        || !String::from_utf8_lossy(&recovered.stderr).contains("warning")
    {
        problems.push("damaged cache changed the output or went unreported".into());
    }

    let mutant = linkage(&cache, &["selfcheck", "--mutant", "--samples", "20"]);
    checked += 1;
    if mutant.status.code() != Some(1) {
        problems.push(format!(
            "mutant selfcheck exited {:?}",
            mutant.status.code()
        ));
    }
    let _ = std::fs::remove_dir_all(&cache);
    Outcome::from_problems(checked, problems)
}

struct Criterion {
    id: &'static str,
    name: &'static str,
    budget: Option<Duration>,
    expected_to_fail: bool,
    run: fn() -> Outcome,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            id: "1",
            name: "rank-one twisted Verma criterion",
            budget: secs(1),
            expected_to_fail: false,
            run: rank_one,
        },
        Criterion {
            id: "2",
            name: "strong-linkage oracle equivalence",
            budget: secs(60),
            expected_to_fail: false,
            run: bgg_equivalence,
        },
        Criterion {
            id: "3",
            name: "reduced-word independence",
            budget: secs(120),
            expected_to_fail: false,
            run: word_independence,
        },
        Criterion {
            id: "4",
            name: "concatenation identity",
            budget: None,
            expected_to_fail: false,
            run: concatenation,
        },
        Criterion {
            id: "5",
            name: "A2 longest-element example",
            budget: None,
            expected_to_fail: false,
            run: worked_example,
        },
        Criterion {
            id: "6",
            name: "criterion invariances",
            budget: secs(60),
            expected_to_fail: false,
            run: invariances,
        },
        Criterion {
            id: "7",
            name: "parameter reduction postcondition",
            budget: None,
            expected_to_fail: false,
            run: reduce_parameters,
        },
        Criterion {
            id: "8",
            name: "integral system structure",
            budget: None,
            expected_to_fail: false,
            run: integral_structure,
        },
        Criterion {
            id: "8b",
            name: "W_lambda as {w : w lambda - lambda in P}",
            budget: None,
            expected_to_fail: true,
            run: weight_lattice_description,
        },
        Criterion {
            id: "9",
            name: "CLI determinism and cache transparency",
            budget: None,
            expected_to_fail: false,
            run: cli_determinism,
        },
    ];
    let mut unexpected = 0;
    for c in &criteria {
        let start = Instant::now();
        let out = (c.run)();
        let took = start.elapsed();
        let in_time = c.budget.is_none_or(|b| took <= b);
        let passed = out.passed && in_time;
        let budget = c
            .budget
            .map(|b| format!(" (budget {}s)", b.as_secs()))
            .unwrap_or_default();
        let note = if !passed && c.expected_to_fail {
            " [known false, see README]"
        } else {
            ""
        };
        println!(
            "{} criterion {}: {}: {} in {:.2}s{}{}",
            if passed { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            out.detail,
            took.as_secs_f64(),
            budget,
            note
        );
        if passed == c.expected_to_fail {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria did not meet expectations");
        std::process::exit(1);
    }
}
