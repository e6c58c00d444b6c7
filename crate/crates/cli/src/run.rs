//! Query execution.

use std::path::PathBuf;

use linkage::oracle::{self, SweepConfig};
use linkage::par::{self, Exec};
use linkage::weyl::DEFAULT_GROUP_BOUND;
use linkage::{
    ASet, ASetStore, Engine, Error, HomVerdict, IntegralData, Parameters, RootSystem, Weight,
    WeylElem, WitnessSource,
};

use crate::cache::FileCache;
use crate::output::*;
use crate::query::{Command, Query};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

/// Largest rank `selfcheck` sweeps.
pub const SELFCHECK_MAX_RANK: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Where the A-set cache lives, if anywhere.
#[derive(Clone, Debug)]
pub struct Settings {
    pub cache_dir: Option<PathBuf>,
    pub exec: Exec,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            cache_dir: crate::cache::default_dir(),
            exec: Exec::Parallel,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BoundExceeded(_) => EXIT_BOUND,
        _ => EXIT_PRECONDITION,
    }
}

pub fn run(q: &Query) -> Outcome {
    run_with(q, &Settings::default())
}

pub fn run_with(q: &Query, settings: &Settings) -> Outcome {
    let mut stderr = String::new();
    let result = match q.command.system() {
        None => selfcheck(q, settings),
        Some(spec) => {
            let rs = RootSystem::new(spec);
            check_rank(&rs, q.rank_bound).and_then(|()| {
                let cache = match (&settings.cache_dir, q.no_cache) {
                    (Some(dir), false) => Some(FileCache::open(dir, &rs)),
                    _ => None,
                };
                let mut engine = Engine::new(&rs);
                if let Some(c) = &cache {
                    engine = engine.with_store(c as &dyn ASetStore);
                }
                let out = dispatch(q, &engine, settings.exec);
                if let Some(c) = &cache {
                    if out.is_ok() {
                        if let Err(e) = c.save() {
                            stderr.push_str(&format!(
                                "warning: could not write cache {}: {e}\n",
                                c.path().display()
                            ));
                        }
                    }
                    for w in c.take_warnings() {
                        stderr.push_str(&format!("warning: {w}\n"));
                    }
                    if c.hits() + c.misses() > 0 {
                        stderr.push_str(&format!(
                            "cache: {} hits, {} misses\n",
                            c.hits(),
                            c.misses()
                        ));
                    }
                }
                out
            })
        }
    };
    match result {
        Ok(out) => {
            let code = match &out {
                Output::Selfcheck(s) if !s.passed => EXIT_COUNTEREXAMPLE,
                _ => EXIT_OK,
            };
            Outcome {
                code,
                stdout: out.render(q.format),
                stderr,
            }
        }
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            Outcome {
                code: exit_code(&e),
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn check_rank(rs: &RootSystem, bound: Option<usize>) -> linkage::Result<()> {
    match bound {
        Some(b) if rs.rank() > b => Err(Error::BoundExceeded(format!(
            "{} has rank {}, above --rank-bound {b}",
            rs.spec(),
            rs.rank()
        ))),
        _ => Ok(()),
    }
}

fn dispatch(q: &Query, engine: &Engine, exec: Exec) -> linkage::Result<Output> {
    let rs = engine.root_system();
    match &q.command {
        Command::Aset {
            word, mu, lambda, ..
        } => {
            mu.check_rank(rs.rank())?;
            let ctx = match lambda {
                Some(l) => IntegralData::new(rs, l)?,
                None => engine.full_data().clone(),
            };
            let set = engine.a_set_positions(&ctx, word.letters(), mu)?;
            Ok(Output::ASet(aset_out(
                rs,
                &ctx,
                lambda.as_ref(),
                word,
                &set,
                q.certificates,
            )))
        }
        Command::HomVerma {
            w1, mu1, w2, mu2, ..
        } => {
            let (w1, w2) = (rs.from_word(w1)?, rs.from_word(w2)?);
            let (mu1, mu2) = (checked(rs, mu1)?, checked(rs, mu2)?);
            let v = engine.hom_twisted_verma(&w1, &mu1, &w2, &mu2)?;
            let certs = match (&v.witness, q.certificates) {
                (Some(x), true) => explain(rs, engine.explain_verma(&w1, &mu1, &w2, &mu2, x)?),
                _ => None,
            };
            Ok(Output::Verdict(verdict_out(&v, certs)))
        }
        Command::HomPs {
            lambda,
            w1,
            mu1,
            w2,
            mu2,
            ..
        } => {
            let lambda = checked(rs, lambda)?;
            let (w1, w2) = (rs.from_word(w1)?, rs.from_word(w2)?);
            let (mu1, mu2) = (checked(rs, mu1)?, checked(rs, mu2)?);
            let ctx = engine.principal_series_context(&lambda)?;
            let v = engine.hom_principal_series_in(&ctx, &w1, &mu1, &w2, &mu2)?;
            let certs = match (&v.witness, q.certificates) {
                (Some(x), true) => explain(
                    rs,
                    engine.explain_principal_series(&ctx, &w1, &mu1, &w2, &mu2, x)?,
                ),
                _ => None,
            };
            Ok(Output::Verdict(verdict_out(&v, certs)))
        }
        Command::Integral { lambda, .. } => {
            let lambda = checked(rs, lambda)?;
            let d = IntegralData::new(rs, &lambda)?;
            let order = d.elements(rs, DEFAULT_GROUP_BOUND)?.len();
            let stab = d.stabilizer_elements(rs, DEFAULT_GROUP_BOUND)?.len();
            let word = d.canonical_word(rs, d.longest())?;
            Ok(Output::Integral(IntegralOut {
                system: rs.spec().to_string(),
                lambda: lambda.to_string(),
                dominant: rs.is_dominant(&lambda),
                positive_roots: d.positive_roots(rs).map(|r| r.to_string()).collect(),
                simple_roots: d.simple_roots(rs).map(|r| r.to_string()).collect(),
                longest: rs.elem_to_string(d.longest()),
                longest_integral_word: linkage::Word(word).to_string(),
                order,
                stabilizer_generators: d
                    .stabilizer_gens()
                    .iter()
                    .map(|&i| rs.root(i).to_string())
                    .collect(),
                stabilizer_order: stab,
            }))
        }
        Command::Table {
            mu_orbit,
            grid_radius,
            w_all,
            ..
        } => table(engine, mu_orbit.as_ref(), *grid_radius, *w_all, exec),
        Command::Selfcheck { .. } => unreachable!("selfcheck has no root system"),
    }
}

fn checked(rs: &RootSystem, w: &Weight) -> linkage::Result<Weight> {
    w.check_rank(rs.rank())?;
    Ok(w.clone())
}

fn cert_out(rs: &RootSystem, set: &ASet, element: &Weight, translate: &WeylElem) -> CertificateOut {
    let c = set.certificate(rs, element).expect("element of the set");
    CertificateOut {
        element: element.to_string(),
        translate: rs.elem_to_string(translate),
        positions: c.indices.iter().map(|i| i + 1).collect(),
        betas: c.betas.iter().map(|b| b.to_string()).collect(),
    }
}

fn explain(
    rs: &RootSystem,
    (l, r): (Option<WitnessSource>, Option<WitnessSource>),
) -> Option<WitnessCertificates> {
    let (l, r) = (l?, r?);
    Some(WitnessCertificates {
        left: cert_out(rs, &l.set, &l.element, &l.translate),
        right: cert_out(rs, &r.set, &r.element, &r.translate),
    })
}

fn strings(ws: &[Weight]) -> Vec<String> {
    ws.iter().map(|w| w.to_string()).collect()
}

fn verdict_out(v: &HomVerdict, certificates: Option<WitnessCertificates>) -> VerdictOut {
    let parameters = match &v.parameters {
        Parameters::TwistedVerma {
            system,
            w1,
            mu1,
            w2,
            mu2,
        } => ParametersOut {
            kind: "twisted_verma",
            system: system.clone(),
            lambda: None,
            w1: w1.to_string(),
            mu1: mu1.to_string(),
            w2: w2.to_string(),
            mu2: mu2.to_string(),
            lattice_mismatch: v.lattice_mismatch,
        },
        Parameters::PrincipalSeries {
            system,
            lambda,
            w1,
            mu1,
            w2,
            mu2,
        } => ParametersOut {
            kind: "principal_series",
            system: system.clone(),
            lambda: Some(lambda.to_string()),
            w1: w1.to_string(),
            mu1: mu1.to_string(),
            w2: w2.to_string(),
            mu2: mu2.to_string(),
            lattice_mismatch: v.lattice_mismatch,
        },
    };
    VerdictOut {
        hom_nonzero: v.hom_nonzero,
        ext_all_vanish: v.ext_all_vanish,
        witness: v.witness.as_ref().map(|w| w.to_string()),
        left_set: strings(&v.left_set),
        right_set: strings(&v.right_set),
        parameters,
        certificates,
    }
}

fn aset_out(
    rs: &RootSystem,
    ctx: &IntegralData,
    lambda: Option<&Weight>,
    word: &linkage::Word,
    set: &ASet,
    certificates: bool,
) -> ASetOut {
    let id = rs.identity();
    ASetOut {
        system: rs.spec().to_string(),
        lambda: lambda.map(|l| l.to_string()),
        word: word.to_string(),
        mu: set.mu().to_string(),
        letters: ctx
            .word_roots(word.letters())
            .iter()
            .map(|&i| rs.root(i).to_string())
            .collect(),
        betas: set
            .betas()
            .iter()
            .map(|&i| rs.root(i).to_string())
            .collect(),
        elements: set.elements().map(|w| w.to_string()).collect(),
        certificates: certificates
            .then(|| set.elements().map(|w| cert_out(rs, set, w, &id)).collect()),
    }
}

/// Elements sorted by length, then canonical word.
fn sorted_group(rs: &RootSystem) -> linkage::Result<Vec<WeylElem>> {
    let mut g = rs.enumerate_group(DEFAULT_GROUP_BOUND)?;
    g.sort_by_cached_key(|w| {
        let word = rs.canonical_reduced_word(w);
        (word.len(), word)
    });
    Ok(g)
}

fn table(
    engine: &Engine,
    mu_orbit: Option<&Weight>,
    grid_radius: Option<i64>,
    w_all: bool,
    exec: Exec,
) -> linkage::Result<Output> {
    let rs = engine.root_system();
    let group = sorted_group(rs)?;
    let weights: Vec<Weight> = match (mu_orbit, grid_radius) {
        (Some(m), _) => {
            let m = checked(rs, m)?;
            let orbit: std::collections::BTreeSet<Weight> =
                group.iter().map(|u| u.apply(&m)).collect();
            orbit.into_iter().collect()
        }
        (None, Some(r)) if r >= 0 => oracle::integral_box(rs.rank(), r),
        (None, Some(r)) => return Err(Error::Parse(format!("negative grid radius {r}"))),
        (None, None) => {
            return Err(Error::Parse(
                "table needs --mu-orbit or --grid-radius".into(),
            ))
        }
    };
    let elems: Vec<WeylElem> = if w_all { group } else { vec![rs.identity()] };
    let slots: Vec<(usize, usize)> = (0..elems.len())
        .flat_map(|i| (0..weights.len()).map(move |j| (i, j)))
        .collect();
    let lefts = par::map(exec, &slots, |&(i, j)| {
        engine.verma_left_set(&elems[i], &weights[j])
    });
    let rights = par::map(exec, &slots, |&(i, j)| {
        engine.verma_right_set(&elems[i], &weights[j])
    });
    let lefts = lefts.into_iter().collect::<linkage::Result<Vec<_>>>()?;
    let rights = rights.into_iter().collect::<linkage::Result<Vec<_>>>()?;
    let names: Vec<String> = elems.iter().map(|w| rs.elem_to_string(w)).collect();
    let rows = par::flat_map(exec, &slots, |&(i1, j1)| {
        let l = &lefts[i1 * weights.len() + j1];
        slots
            .iter()
            .enumerate()
            .map(|(k, &(i2, j2))| {
                let witness = l.intersection(&rights[k]).next().map(|w| w.to_string());
                RowOut {
                    w1: names[i1].clone(),
                    mu1: weights[j1].to_string(),
                    w2: names[i2].clone(),
                    mu2: weights[j2].to_string(),
                    hom_nonzero: witness.is_some(),
                    witness,
                }
            })
            .collect()
    });
    Ok(Output::Table(TableOut {
        system: rs.spec().to_string(),
        elements: names,
        weights: strings(&weights),
        row_count: rows.len(),
        rows,
    }))
}

/// Types swept by `selfcheck`, by rank.
pub fn selfcheck_types(max_rank: usize) -> Vec<&'static str> {
    [
        ("A1", 1),
        ("A2", 2),
        ("B2", 2),
        ("G2", 2),
        ("A3", 3),
        ("B3", 3),
        ("C3", 3),
    ]
    .into_iter()
    .filter(|&(_, r)| r <= max_rank)
    .map(|(t, _)| t)
    .collect()
}

fn selfcheck(q: &Query, settings: &Settings) -> linkage::Result<Output> {
    let Command::Selfcheck {
        grid_radius,
        samples,
        seed,
        mutant,
    } = &q.command
    else {
        unreachable!("only selfcheck lacks a root system");
    };
    let max_rank = q.rank_bound.unwrap_or(2);
    if max_rank > SELFCHECK_MAX_RANK {
        return Err(Error::BoundExceeded(format!(
            "selfcheck sweeps rank at most {SELFCHECK_MAX_RANK}, got --rank-bound {max_rank}"
        )));
    }
    if *grid_radius < 0 {
        return Err(Error::Parse(format!("negative grid radius {grid_radius}")));
    }
    let cfg = SweepConfig {
        grid_radius: *grid_radius,
        exec: settings.exec,
        ..SweepConfig::default()
    };
    let a_set: oracle::ASetFn = if *mutant {
        &oracle::mutant_a_set
    } else {
        &oracle::reference_a_set
    };
    let mut reports = Vec::new();
    for label in selfcheck_types(max_rank) {
        let rs = RootSystem::from_label(label)?;
        reports.extend(oracle::check_a_sets(&rs, &cfg, a_set));
        reports.extend(oracle::check_structure(&rs, &cfg));
        reports.extend(oracle::check_linkage(&rs, &cfg, *samples, *seed)?);
        if rs.rank() <= 2 {
            reports.extend(oracle::check_invariances(&rs, &cfg));
        }
    }
    let reports: Vec<ReportOut> = reports
        .into_iter()
        .map(|r| ReportOut {
            passed: r.passed(),
            name: r.name,
            checked: r.checked,
            failures: r.failures,
            counterexamples: r.counterexamples,
        })
        .collect();
    Ok(Output::Selfcheck(SelfcheckOut {
        passed: reports.iter().all(|r| r.passed),
        reports,
    }))
}
