//! Independent validators.
//!
//! * The classical strong-linkage criterion for Verma modules, by breadth-first
//!   search, with replayable chain certificates.
//! * A subsequence-enumerating A-set evaluator sharing no code with
//!   [`crate::aset`].
//! * Sweeps over weight grids that check reduced-word independence, the
//!   concatenation identity, criterion invariances, integral-system structure
//!   and parameter reduction. Failures are collected in a [`Report`], never
//!   raised as errors.
//!
//! Every sweep takes an [`Exec`] policy and produces the same report under
//! either policy.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_traits::Signed;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aset::a_set_roots;
use crate::criteria::Engine;
use crate::error::Result;
use crate::integral::IntegralData;
use crate::par::{self, Exec};
use crate::rootsystem::{Root, RootSystem};
use crate::weight::{Weight, Q};
use crate::weyl::{WeylElem, DEFAULT_GROUP_BOUND};

/// Counterexamples kept per report; the count of failures is still exact.
pub const MAX_RECORDED: usize = 20;

/// A descending chain of reflections `mu_2 = nu_0 > nu_1 > ... > nu_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkageChain {
    pub start: Weight,
    /// The reflecting positive root and the weight after reflecting.
    pub steps: Vec<(Root, Weight)>,
}

impl LinkageChain {
    pub fn end(&self) -> &Weight {
        self.steps.last().map(|(_, w)| w).unwrap_or(&self.start)
    }

    /// Replays the chain: each root is positive, pairs with the current weight
    /// to a positive integer, and the step lowers the weight by a nonnegative
    /// integer combination of simple roots.
    pub fn validate(&self, rs: &RootSystem) -> std::result::Result<(), String> {
        let mut cur = self.start.clone();
        for (k, (beta, next)) in self.steps.iter().enumerate() {
            let idx = rs
                .root_index(beta)
                .ok_or_else(|| format!("step {k}: {beta} is not a root"))?;
            if !rs.is_positive_index(idx) {
                return Err(format!("step {k}: {beta} is not positive"));
            }
            let p = rs.pairing_idx(idx, &cur);
            if !(p.is_integer() && p.is_positive()) {
                return Err(format!("step {k}: pairing {p} is not a positive integer"));
            }
            let img = rs.reflect_idx(idx, &cur);
            if &img != next {
                return Err(format!(
                    "step {k}: reflection gives {img}, chain says {next}"
                ));
            }
            let drop = rs.weight_to_root_coords(&(&cur - next));
            if drop.iter().any(|c| !c.is_integer() || c.is_negative()) {
                return Err(format!("step {k}: {cur} -> {next} does not descend"));
            }
            cur = img;
        }
        Ok(())
    }
}

/// Breadth-first search from `mu2`: parent pointers of every weight reachable
/// by reflections at positive-integer pairings.
fn bgg_search(rs: &RootSystem, mu2: &Weight) -> BTreeMap<Weight, Option<(usize, Weight)>> {
    let mut seen: BTreeMap<Weight, Option<(usize, Weight)>> = BTreeMap::new();
    seen.insert(mu2.clone(), None);
    let mut queue = VecDeque::from([mu2.clone()]);
    while let Some(cur) = queue.pop_front() {
        for b in 0..rs.num_positive() {
            let p = rs.pairing_idx(b, &cur);
            if p.is_integer() && p.is_positive() {
                let next = rs.reflect_idx(b, &cur);
                if !seen.contains_key(&next) {
                    seen.insert(next.clone(), Some((b, cur.clone())));
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// Highest weights (rho-shifted) of the Verma submodules of `M(mu2)`.
pub fn bgg_reachable(rs: &RootSystem, mu2: &Weight) -> BTreeSet<Weight> {
    bgg_search(rs, mu2).into_keys().collect()
}

/// Whether `M(mu1)` embeds in `M(mu2)` by the strong-linkage criterion,
/// with a shortest chain when it does.
pub fn bgg_verma_hom(rs: &RootSystem, mu1: &Weight, mu2: &Weight) -> (bool, Option<LinkageChain>) {
    let tree = bgg_search(rs, mu2);
    if !tree.contains_key(mu1) {
        return (false, None);
    }
    let mut steps = Vec::new();
    let mut cur = mu1.clone();
    while let Some(Some((b, parent))) = tree.get(&cur) {
        steps.push((rs.root(*b).clone(), cur.clone()));
        cur = parent.clone();
    }
    steps.reverse();
    (
        true,
        Some(LinkageChain {
            start: mu2.clone(),
            steps,
        }),
    )
}

fn int_coords(w: &Weight) -> Option<Vec<i64>> {
    w.coords()
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

/// A-set of a word of root indices by enumerating all `2^l` subsequences.
pub fn brute_force_a_set(rs: &RootSystem, letters: &[usize], mu: &Weight) -> BTreeSet<Weight> {
    chains(rs, &betas_by(rs, letters, true), mu)
}

/// `beta_i` as root indices, reflecting `alpha_i` through the preceding
/// letters as weights. `nested` applies the last preceding letter first, which
/// is correct.
fn betas_by(rs: &RootSystem, letters: &[usize], nested: bool) -> Vec<usize> {
    (0..letters.len())
        .map(|i| {
            let mut v = rs.root_weight(letters[i]);
            let before = &letters[..i];
            let order: Vec<usize> = if nested {
                before.iter().rev().copied().collect()
            } else {
                before.to_vec()
            };
            for a in order {
                v = rs.reflect_idx(a, &v);
            }
            let c = int_coords(&v).expect("roots have integral weight coordinates");
            rs.index_of_weight(&c).expect("image of a root is a root")
        })
        .collect()
}

/// An A-set evaluator on root-index words. Sweeps take one of these so that a
/// deliberately broken evaluator can be substituted.
pub type ASetFn<'a> = &'a (dyn Fn(&RootSystem, &[usize], &Weight) -> BTreeSet<Weight> + Sync);

/// The production evaluator.
pub fn reference_a_set(rs: &RootSystem, letters: &[usize], mu: &Weight) -> BTreeSet<Weight> {
    a_set_roots(rs, letters, mu).element_set()
}

/// A broken evaluator: `beta_i` is formed by applying the preceding
/// reflections in the wrong order. Used to show the sweeps detect errors.
pub fn mutant_a_set(rs: &RootSystem, letters: &[usize], mu: &Weight) -> BTreeSet<Weight> {
    chains(rs, &betas_by(rs, letters, false), mu)
}

fn chains(rs: &RootSystem, roots: &[usize], mu: &Weight) -> BTreeSet<Weight> {
    assert!(
        roots.len() < 24,
        "word too long for subsequence enumeration"
    );
    let mut out = BTreeSet::new();
    'subsets: for mask in 0u32..(1 << roots.len()) {
        let mut cur = mu.clone();
        for (i, &b) in roots.iter().enumerate() {
            if mask & (1 << i) != 0 {
                let p = rs.pairing_idx(b, &cur);
                if !(p.is_integer() && p.is_negative()) {
                    continue 'subsets;
                }
                cur = rs.reflect_idx(b, &cur);
            }
        }
        out.insert(cur);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
    /// The first [`MAX_RECORDED`] failures in sweep order.
    pub counterexamples: Vec<String>,
}

impl Report {
    fn collect(name: &str, parts: Vec<(usize, Vec<String>)>) -> Report {
        let mut checked = 0;
        let mut failures = 0;
        let mut counterexamples = Vec::new();
        for (n, bad) in parts {
            checked += n;
            failures += bad.len();
            for b in bad {
                if counterexamples.len() < MAX_RECORDED {
                    counterexamples.push(b);
                }
            }
        }
        Report {
            name: name.to_string(),
            checked,
            failures,
            counterexamples,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn first_counterexample(&self) -> Option<&str> {
        self.counterexamples.first().map(String::as_str)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} checked, {} failed",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.checked,
            self.failures
        )?;
        if let Some(c) = self.first_counterexample() {
            write!(f, "; first: {c}")?;
        }
        Ok(())
    }
}

/// Weights whose coordinates are `k / denom` with `|k| <= numerator_bound`.
pub fn fraction_box(rank: usize, denom: i64, numerator_bound: i64) -> Vec<Weight> {
    let vals: Vec<Q> = (-numerator_bound..=numerator_bound)
        .map(|k| Q::new(k, denom))
        .collect();
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Q>| {
                vals.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(*v);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Weight::new).collect()
}

/// Integral weights with coordinates in `[-radius, radius]`.
pub fn integral_box(rank: usize, radius: i64) -> Vec<Weight> {
    fraction_box(rank, 1, radius)
}

/// Half-integral and third-integral samples: coordinates in
/// `{-1, -1/2, 0, 1/2, 1}` and in `{-2/3, -1/3, 0, 1/3, 2/3}`. These exercise
/// proper integral subsystems.
pub fn fractional_samples(rank: usize) -> Vec<Weight> {
    let mut s: BTreeSet<Weight> = fraction_box(rank, 2, 2).into_iter().collect();
    s.extend(fraction_box(rank, 3, 2));
    s.into_iter().collect()
}

/// The standard test grid: [`integral_box`] together with
/// [`fractional_samples`], sorted and deduplicated.
pub fn test_grid(rank: usize, radius: i64) -> Vec<Weight> {
    let mut s: BTreeSet<Weight> = integral_box(rank, radius).into_iter().collect();
    s.extend(fractional_samples(rank));
    s.into_iter().collect()
}

fn random_weight(rng: &mut ChaCha8Rng, rank: usize) -> Weight {
    Weight::new(
        (0..rank)
            .map(|_| {
                let d = *[1i64, 1, 2, 3, 4].choose(rng).expect("nonempty");
                Q::new(rng.random_range(-3 * d..=3 * d), d)
            })
            .collect(),
    )
}

/// Seeded random rational weight pairs. About three quarters of the pairs are
/// Weyl-conjugate, so both answers occur often.
pub fn random_pairs(rs: &RootSystem, count: usize, seed: u64) -> Result<Vec<(Weight, Weight)>> {
    let group = rs.enumerate_group(DEFAULT_GROUP_BOUND)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let mu2 = random_weight(&mut rng, rs.rank());
            let mu1 = if rng.random_bool(0.75) {
                group.choose(&mut rng).expect("nonempty").apply(&mu2)
            } else {
                random_weight(&mut rng, rs.rank())
            };
            (mu1, mu2)
        })
        .collect())
}

/// All pairs drawn from one list.
pub fn all_pairs(ws: &[Weight]) -> Vec<(Weight, Weight)> {
    ws.iter()
        .flat_map(|a| ws.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

/// `hom_twisted_verma(e, mu1, e, mu2)` against [`bgg_verma_hom`], replaying
/// every chain.
pub fn check_bgg_equivalence(rs: &RootSystem, pairs: &[(Weight, Weight)], exec: Exec) -> Report {
    let engine = Engine::new(rs);
    let e = rs.identity();
    // One reachable set per distinct target.
    let targets: Vec<Weight> = pairs
        .iter()
        .map(|(_, m)| m.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let reach: HashMap<Weight, BTreeSet<Weight>> = targets
        .iter()
        .cloned()
        .zip(par::map(exec, &targets, |m| bgg_reachable(rs, m)))
        .collect();
    let parts = par::map(exec, pairs, |(mu1, mu2)| {
        let mut bad = Vec::new();
        let v = match engine.hom_twisted_verma(&e, mu1, &e, mu2) {
            Ok(v) => v.hom_nonzero,
            Err(err) => return (1, vec![format!("{mu1} -> {mu2}: {err}")]),
        };
        let oracle = reach[mu2].contains(mu1);
        if v != oracle {
            bad.push(format!("{mu1} -> {mu2}: criterion {v}, linkage {oracle}"));
        } else if oracle {
            let (_, chain) = bgg_verma_hom(rs, mu1, mu2);
            match chain {
                Some(c) if c.end() == mu1 => {
                    if let Err(msg) = c.validate(rs) {
                        bad.push(format!("{mu1} -> {mu2}: bad chain: {msg}"));
                    }
                }
                _ => bad.push(format!("{mu1} -> {mu2}: missing chain")),
            }
        }
        (1, bad)
    });
    Report::collect(&format!("bgg-equivalence {}", rs.spec()), parts)
}

/// The full integral system plus every distinct proper integral system met by
/// the fractional samples.
pub fn integral_contexts(rs: &RootSystem) -> Vec<IntegralData> {
    let mut out = vec![IntegralData::full(rs)];
    let mut seen: HashSet<Vec<usize>> = HashSet::from([out[0].simple_indices().to_vec()]);
    for lam in fractional_samples(rs.rank()) {
        let d = IntegralData::new(rs, &lam).expect("rank matches");
        if !d.simple_indices().is_empty() && seen.insert(d.simple_indices().to_vec()) {
            out.push(d);
        }
    }
    out
}

fn context_elements(rs: &RootSystem, ctxs: &[IntegralData]) -> Vec<(usize, WeylElem)> {
    ctxs.iter()
        .enumerate()
        .flat_map(|(k, c)| {
            c.elements(rs, DEFAULT_GROUP_BOUND)
                .expect("integral Weyl group within bound")
                .into_iter()
                .map(move |w| (k, w))
        })
        .collect()
}

fn fmt_word(word: &[usize]) -> String {
    if word.is_empty() {
        "e".into()
    } else {
        word.iter()
            .map(|p| (p + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// All reduced words of every element of every integral Weyl group in
/// [`integral_contexts`] give the same A-set at every grid weight.
pub fn check_word_independence(
    rs: &RootSystem,
    grid: &[Weight],
    max_word_len: usize,
    exec: Exec,
    a_set: ASetFn,
) -> Report {
    let ctxs = integral_contexts(rs);
    let items = context_elements(rs, &ctxs);
    let parts = par::map(exec, &items, |(k, w)| {
        let ctx = &ctxs[*k];
        let words = match ctx.all_reduced_words(rs, w, max_word_len) {
            Ok(ws) => ws,
            Err(_) => return (0, Vec::new()),
        };
        let words: Vec<Vec<usize>> = words.into_iter().collect();
        let mut checked = 0;
        let mut bad = Vec::new();
        for mu in grid {
            let first = a_set(rs, &ctx.word_roots(&words[0]), mu);
            for word in &words[1..] {
                checked += 1;
                let other = a_set(rs, &ctx.word_roots(word), mu);
                if other != first {
                    bad.push(format!(
                        "Pi_lambda for lambda={}: words [{}] and [{}] disagree at mu={}",
                        ctx.lambda(),
                        fmt_word(&words[0]),
                        fmt_word(word),
                        mu
                    ));
                }
            }
        }
        (checked, bad)
    });
    Report::collect(&format!("word-independence {}", rs.spec()), parts)
}

/// `A_{uv}(mu)` is the union over `mu'` in `A_u(mu)` of `u A_v(u^{-1} mu')`
/// for every split of every canonical word.
pub fn check_concatenation(rs: &RootSystem, grid: &[Weight], exec: Exec, a_set: ASetFn) -> Report {
    let ctxs = integral_contexts(rs);
    let items = context_elements(rs, &ctxs);
    let parts = par::map(exec, &items, |(k, w)| {
        let ctx = &ctxs[*k];
        let word = ctx.canonical_word(rs, w).expect("element of the group");
        let letters = ctx.word_roots(&word);
        let mut checked = 0;
        let mut bad = Vec::new();
        for mu in grid {
            let whole = a_set(rs, &letters, mu);
            for split in 0..=letters.len() {
                checked += 1;
                let u = ctx.word_elem(rs, &word[..split]);
                let u_inv = u.inverse();
                let mut joined = BTreeSet::new();
                for m in a_set(rs, &letters[..split], mu) {
                    let tail = a_set(rs, &letters[split..], &u_inv.apply(&m));
                    joined.extend(tail.iter().map(|x| u.apply(x)));
                }
                if joined != whole {
                    bad.push(format!(
                        "lambda={}: word [{}] split at {} fails at mu={}",
                        ctx.lambda(),
                        fmt_word(&word),
                        split,
                        mu
                    ));
                }
            }
        }
        (checked, bad)
    });
    Report::collect(&format!("concatenation {}", rs.spec()), parts)
}

fn disjoint(a: &BTreeSet<Weight>, b: &BTreeSet<Weight>) -> bool {
    a.intersection(b).next().is_none()
}

/// `hom_twisted_verma(w, mu, w, mu)` holds for all `w` and grid weights.
pub fn check_verma_reflexivity(rs: &RootSystem, grid: &[Weight], exec: Exec) -> Report {
    let engine = Engine::new(rs);
    let group = rs
        .enumerate_group(DEFAULT_GROUP_BOUND)
        .expect("group within bound");
    let parts = par::map(exec, &group, |w| {
        let bad = grid
            .iter()
            .filter(|mu| {
                !engine
                    .hom_twisted_verma(w, mu, w, mu)
                    .map(|v| v.hom_nonzero)
                    .unwrap_or(false)
            })
            .map(|mu| format!("w={} mu={}", rs.elem_to_string(w), mu))
            .collect();
        (grid.len(), bad)
    });
    Report::collect(&format!("verma-reflexivity {}", rs.spec()), parts)
}

/// Dominant weights among `lambdas`.
pub fn dominant_only(rs: &RootSystem, lambdas: &[Weight]) -> Vec<Weight> {
    lambdas
        .iter()
        .filter(|l| rs.is_dominant(l))
        .cloned()
        .collect()
}

/// `hom_principal_series(lambda, w, mu, w, mu)` holds for every dominant
/// `lambda`, `w` in the integral Weyl group and `mu` in `lambda + box`.
pub fn check_ps_reflexivity(
    rs: &RootSystem,
    lambdas: &[Weight],
    radius: i64,
    exec: Exec,
) -> Report {
    let engine = Engine::new(rs);
    let shifts = integral_box(rs.rank(), radius);
    let lambdas = dominant_only(rs, lambdas);
    let parts = par::map(exec, &lambdas, |lam| {
        let ctx = match engine.principal_series_context(lam) {
            Ok(c) => c,
            Err(err) => return (1, vec![format!("lambda={lam}: {err}")]),
        };
        let elems = ctx
            .data()
            .elements(rs, DEFAULT_GROUP_BOUND)
            .expect("within bound");
        let mut checked = 0;
        let mut bad = Vec::new();
        for w in &elems {
            for s in &shifts {
                checked += 1;
                let mu = lam + s;
                let ok = engine
                    .hom_principal_series_in(&ctx, w, &mu, w, &mu)
                    .map(|v| v.hom_nonzero)
                    .unwrap_or(false);
                if !ok {
                    bad.push(format!(
                        "lambda={} w={} mu={}",
                        lam,
                        rs.elem_to_string(w),
                        mu
                    ));
                }
            }
        }
        (checked, bad)
    });
    Report::collect(&format!("ps-reflexivity {}", rs.spec()), parts)
}

/// The principal series verdict is unchanged under `w1 -> w1 u` and
/// `w2 -> w2 v` for `u, v` in the stabilizer of `lambda`, exhaustively over
/// `w1, w2` in the integral Weyl group and `mu1, mu2` in `lambda + box`.
pub fn check_stabilizer_invariance(
    rs: &RootSystem,
    lambdas: &[Weight],
    radius: i64,
    exec: Exec,
) -> Report {
    let engine = Engine::new(rs);
    let shifts = integral_box(rs.rank(), radius);
    let mut parts = Vec::new();
    for lam in lambdas {
        let ctx = match engine.principal_series_context(lam) {
            Ok(c) => c,
            Err(err) => {
                parts.push((1, vec![format!("lambda={lam}: {err}")]));
                continue;
            }
        };
        let elems = ctx
            .data()
            .elements(rs, DEFAULT_GROUP_BOUND)
            .expect("within bound");
        let mus: Vec<Weight> = shifts.iter().map(|s| lam + s).collect();
        let index: HashMap<&WeylElem, usize> =
            elems.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let slots: Vec<(usize, usize)> = (0..elems.len())
            .flat_map(|i| (0..mus.len()).map(move |j| (i, j)))
            .collect();
        let left = par::map(exec, &slots, |&(i, j)| {
            engine
                .ps_left_set(&ctx, &elems[i], &mus[j])
                .expect("valid slot")
        });
        let right = par::map(exec, &slots, |&(i, j)| {
            engine
                .ps_right_set(&ctx, &elems[i], &mus[j])
                .expect("valid slot")
        });
        let nm = mus.len();
        let verdict = |i1: usize, j1: usize, i2: usize, j2: usize| {
            !disjoint(&left[i1 * nm + j1], &right[i2 * nm + j2])
        };
        let stab = ctx.stabilizer();
        // right_mult[i][k] = index of elems[i] * stab[k]
        let right_mult: Vec<Vec<usize>> = elems
            .iter()
            .map(|w| stab.iter().map(|u| index[&(w * u)]).collect())
            .collect();
        parts.extend(par::map(exec, &slots, |&(i1, j1)| {
            let mut checked = 0;
            let mut bad = Vec::new();
            for i2 in 0..elems.len() {
                for j2 in 0..nm {
                    let base = verdict(i1, j1, i2, j2);
                    for (ku, &a) in right_mult[i1].iter().enumerate() {
                        for (kv, &b) in right_mult[i2].iter().enumerate() {
                            checked += 1;
                            if verdict(a, j1, b, j2) != base {
                                bad.push(format!(
                                    "lambda={} w1={} mu1={} w2={} mu2={} u={} v={}",
                                    lam,
                                    rs.elem_to_string(&elems[i1]),
                                    mus[j1],
                                    rs.elem_to_string(&elems[i2]),
                                    mus[j2],
                                    rs.elem_to_string(&stab[ku]),
                                    rs.elem_to_string(&stab[kv])
                                ));
                            }
                        }
                    }
                }
            }
            (checked, bad)
        }));
    }
    Report::collect(&format!("stabilizer-invariance {}", rs.spec()), parts)
}

/// Side sets of `crit(w1, mu1, w2, mu2) = hom_twisted_verma(w1^{-1} w0, w0 mu1,
/// w2^{-1} w0, w0 mu2)`.
struct Crit<'a> {
    engine: Engine<'a>,
    w0: WeylElem,
}

impl Crit<'_> {
    fn left(&self, w1: &WeylElem, mu1: &Weight) -> BTreeSet<Weight> {
        self.engine
            .verma_left_set(&(&w1.inverse() * &self.w0), &self.w0.apply(mu1))
            .expect("same system")
    }

    fn right(&self, w2: &WeylElem, mu2: &Weight) -> BTreeSet<Weight> {
        self.engine
            .verma_right_set(&(&w2.inverse() * &self.w0), &self.w0.apply(mu2))
            .expect("same system")
    }
}

fn is_neg_int(p: &Q) -> bool {
    p.is_integer() && p.is_negative()
}

fn is_pos_int(p: &Q) -> bool {
    p.is_integer() && p.is_positive()
}

/// Condition (A2) for the twisted Verma criterion in the form
/// `crit(., ., s w2, mu2) = crit(., ., w2, s mu2)` for simple `s` with
/// `s w2 > w2` and `<coroot(alpha), mu2>` not a negative integer, and the
/// mirrored first-slot statement `crit(w1, mu1, .) = crit(s w1, s mu1, .)`
/// for `s w1 > w1` and `<coroot(alpha), mu1>` not a positive integer. The
/// untouched slot ranges over all of `W` and the grid.
pub fn check_a2_invariance(rs: &RootSystem, grid: &[Weight], exec: Exec) -> Report {
    let crit = Crit {
        engine: Engine::new(rs),
        w0: rs.longest_element(),
    };
    let group = rs
        .enumerate_group(DEFAULT_GROUP_BOUND)
        .expect("group within bound");
    let slots: Vec<(usize, usize)> = (0..group.len())
        .flat_map(|i| (0..grid.len()).map(move |j| (i, j)))
        .collect();
    let lefts = par::map(exec, &slots, |&(i, j)| crit.left(&group[i], &grid[j]));
    let rights = par::map(exec, &slots, |&(i, j)| crit.right(&group[i], &grid[j]));
    let mut parts = par::map(exec, &slots, |&(i, j)| {
        let (w2, mu2) = (&group[i], &grid[j]);
        let mut checked = 0;
        let mut bad = Vec::new();
        for a in 0..rs.rank() {
            let s = rs.reflection(a);
            let sw = &s * w2;
            if rs.length(&sw) < rs.length(w2) || is_neg_int(&rs.pairing_idx(a, mu2)) {
                continue;
            }
            let r1 = crit.right(&sw, mu2);
            let r2 = crit.right(w2, &rs.reflect_idx(a, mu2));
            for (k, l) in lefts.iter().enumerate() {
                checked += 1;
                if disjoint(l, &r1) != disjoint(l, &r2) {
                    let (i1, j1) = slots[k];
                    bad.push(format!(
                        "slot 2, alpha_{}: w1={} mu1={} w2={} mu2={}",
                        a + 1,
                        rs.elem_to_string(&group[i1]),
                        grid[j1],
                        rs.elem_to_string(w2),
                        mu2
                    ));
                }
            }
        }
        (checked, bad)
    });
    parts.extend(par::map(exec, &slots, |&(i, j)| {
        let (w1, mu1) = (&group[i], &grid[j]);
        let mut checked = 0;
        let mut bad = Vec::new();
        for a in 0..rs.rank() {
            let s = rs.reflection(a);
            let sw = &s * w1;
            if rs.length(&sw) < rs.length(w1) || is_pos_int(&rs.pairing_idx(a, mu1)) {
                continue;
            }
            let l1 = &lefts[i * grid.len() + j];
            let l2 = crit.left(&sw, &rs.reflect_idx(a, mu1));
            for (k, r) in rights.iter().enumerate() {
                checked += 1;
                if disjoint(l1, r) != disjoint(&l2, r) {
                    let (i2, j2) = slots[k];
                    bad.push(format!(
                        "slot 1, alpha_{}: w1={} mu1={} w2={} mu2={}",
                        a + 1,
                        rs.elem_to_string(w1),
                        mu1,
                        rs.elem_to_string(&group[i2]),
                        grid[j2]
                    ));
                }
            }
        }
        (checked, bad)
    }));
    Report::collect(&format!("a2-invariance {}", rs.spec()), parts)
}

/// Both criteria answer false when `mu1` is not in the orbit `W mu2`.
pub fn check_generic_vanishing(rs: &RootSystem, grid: &[Weight], exec: Exec) -> Report {
    let engine = Engine::new(rs);
    let group = rs
        .enumerate_group(DEFAULT_GROUP_BOUND)
        .expect("group within bound");
    let orbit = |m: &Weight| -> BTreeSet<Weight> { group.iter().map(|u| u.apply(m)).collect() };
    let slots: Vec<(usize, usize)> = (0..group.len())
        .flat_map(|i| (0..grid.len()).map(move |j| (i, j)))
        .collect();
    let lefts = par::map(exec, &slots, |&(i, j)| {
        engine
            .verma_left_set(&group[i], &grid[j])
            .expect("same system")
    });
    let rights = par::map(exec, &slots, |&(i, j)| {
        engine
            .verma_right_set(&group[i], &grid[j])
            .expect("same system")
    });
    let orbits: Vec<BTreeSet<Weight>> = grid.iter().map(orbit).collect();
    let mut parts = par::map(exec, &slots, |&(i1, j1)| {
        let mut checked = 0;
        let mut bad = Vec::new();
        for (k, &(i2, j2)) in slots.iter().enumerate() {
            if orbits[j2].contains(&grid[j1]) {
                continue;
            }
            checked += 1;
            if !disjoint(&lefts[i1 * grid.len() + j1], &rights[k]) {
                bad.push(format!(
                    "twisted Verma w1={} mu1={} w2={} mu2={}",
                    rs.elem_to_string(&group[i1]),
                    grid[j1],
                    rs.elem_to_string(&group[i2]),
                    grid[j2]
                ));
            }
        }
        (checked, bad)
    });
    // Principal series at the dominant grid points, mu in lambda + {0, rho}.
    let lambdas = dominant_only(rs, grid);
    parts.extend(par::map(exec, &lambdas, |lam| {
        let ctx = engine.principal_series_context(lam).expect("dominant");
        let elems = ctx
            .data()
            .elements(rs, DEFAULT_GROUP_BOUND)
            .expect("within bound");
        let mus = [lam.clone(), lam + &rs.rho(), lam - &rs.rho()];
        let mut checked = 0;
        let mut bad = Vec::new();
        for (m1, m2) in mus.iter().flat_map(|a| mus.iter().map(move |b| (a, b))) {
            if orbit(m2).contains(m1) {
                continue;
            }
            for w1 in &elems {
                for w2 in &elems {
                    checked += 1;
                    let v = engine
                        .hom_principal_series_in(&ctx, w1, m1, w2, m2)
                        .expect("valid");
                    if v.hom_nonzero {
                        bad.push(format!(
                            "principal series lambda={} w1={} mu1={} w2={} mu2={}",
                            lam,
                            rs.elem_to_string(w1),
                            m1,
                            rs.elem_to_string(w2),
                            m2
                        ));
                    }
                }
            }
        }
        (checked, bad)
    }));
    Report::collect(&format!("generic-vanishing {}", rs.spec()), parts)
}

/// Structure of the integral root system at each weight:
/// reflection closure of the integral roots, indecomposability and spanning
/// of the integral simple system, the two descriptions of the stabilizer for
/// dominant weights, and `{w : w lambda - lambda in Q}` against the group
/// generated by integral reflections.
pub fn check_integral_structure(rs: &RootSystem, lambdas: &[Weight], exec: Exec) -> Report {
    let group = rs
        .enumerate_group(DEFAULT_GROUP_BOUND)
        .expect("group within bound");
    let parts = par::map(exec, lambdas, |lam| {
        let mut checked = 0;
        let mut bad = Vec::new();
        let mut fail = |what: String| bad.push(format!("lambda={lam}: {what}"));
        let data = IntegralData::new(rs, lam).expect("rank matches");
        let integral: BTreeSet<usize> = (0..rs.num_roots())
            .filter(|&i| rs.pairing_idx(i, lam).is_integer())
            .collect();
        let positive: BTreeSet<usize> = integral
            .iter()
            .copied()
            .filter(|&i| rs.is_positive_index(i))
            .collect();
        checked += 1;
        if positive.iter().copied().collect::<Vec<_>>() != data.positive_indices() {
            fail("integral positive roots differ".into());
        }
        for &b in &integral {
            let s = rs.reflection(b);
            for &g in &integral {
                checked += 1;
                if !integral.contains(&rs.act_root(&s, g)) {
                    fail(format!(
                        "s_{} {} leaves the integral roots",
                        rs.root(b),
                        rs.root(g)
                    ));
                }
            }
        }
        // Indecomposable: not a sum of two integral positive roots.
        let coords: BTreeSet<&[i64]> = positive.iter().map(|&i| rs.root(i).coords()).collect();
        for &s in data.simple_indices() {
            checked += 1;
            let c = rs.root(s).coords();
            let split = positive.iter().any(|&j| {
                let rest: Vec<i64> = c
                    .iter()
                    .zip(rs.root(j).coords())
                    .map(|(a, b)| a - b)
                    .collect();
                coords.contains(rest.as_slice())
            });
            if split {
                fail(format!("{} is decomposable", rs.root(s)));
            }
        }
        // Spanning: every integral positive root is a nonnegative integer
        // combination of the simple system, found by peeling simple roots.
        for &p in &positive {
            checked += 1;
            if !peels_to_zero(rs, rs.root(p).coords(), data.simple_indices(), &coords) {
                fail(format!(
                    "{} is not in the cone of the integral simple roots",
                    rs.root(p)
                ));
            }
        }
        // W_lambda two ways.
        let by_lattice: BTreeSet<&WeylElem> =
            group.iter().filter(|w| data.contains(rs, w)).collect();
        let generated = data
            .elements(rs, DEFAULT_GROUP_BOUND)
            .expect("within bound");
        let all_refl: Vec<WeylElem> = positive.iter().map(|&b| rs.reflection(b)).collect();
        let generated_all = rs
            .generate(&all_refl, DEFAULT_GROUP_BOUND)
            .expect("within bound");
        checked += 2;
        if generated.iter().collect::<BTreeSet<_>>() != by_lattice {
            fail("root-lattice description differs from the simple-reflection subgroup".into());
        }
        if generated_all.iter().collect::<BTreeSet<_>>() != by_lattice {
            fail("root-lattice description differs from the integral-reflection subgroup".into());
        }
        if rs.is_dominant(lam) {
            checked += 1;
            let a: BTreeSet<WeylElem> = data
                .stabilizer_by_generators(rs, DEFAULT_GROUP_BOUND)
                .expect("bound")
                .into_iter()
                .collect();
            let b: BTreeSet<WeylElem> = data
                .stabilizer_by_filter(rs, DEFAULT_GROUP_BOUND)
                .expect("bound")
                .into_iter()
                .collect();
            if a != b {
                fail(format!(
                    "stabilizer: {} generated vs {} fixing",
                    a.len(),
                    b.len()
                ));
            }
        }
        (checked, bad)
    });
    Report::collect(&format!("integral-structure {}", rs.spec()), parts)
}

/// `{w : w lambda - lambda in P}` against the group generated by integral
/// reflections. The lattice set always contains the group; every element
/// outside it is a counterexample.
pub fn check_weight_lattice_description(rs: &RootSystem, lambdas: &[Weight], exec: Exec) -> Report {
    let group = rs
        .enumerate_group(DEFAULT_GROUP_BOUND)
        .expect("group within bound");
    let parts = par::map(exec, lambdas, |lam| {
        let data = IntegralData::new(rs, lam).expect("rank matches");
        let bad = group
            .iter()
            .filter(|w| data.satisfies_weight_lattice_condition(w) != data.contains(rs, w))
            .map(|w| {
                format!(
                    "lambda={lam}: w={} has w lambda - lambda = {} in P, group membership {}",
                    rs.elem_to_string(w),
                    &w.apply(lam) - lam,
                    data.contains(rs, w)
                )
            })
            .collect();
        (group.len(), bad)
    });
    Report::collect(&format!("weight-lattice-description {}", rs.spec()), parts)
}

fn peels_to_zero(
    rs: &RootSystem,
    c: &[i64],
    simple: &[usize],
    positive: &BTreeSet<&[i64]>,
) -> bool {
    if c.iter().all(|&x| x == 0) {
        return true;
    }
    simple.iter().any(|&s| {
        let rest: Vec<i64> = c
            .iter()
            .zip(rs.root(s).coords())
            .map(|(a, b)| a - b)
            .collect();
        (rest.iter().all(|&x| x == 0) || positive.contains(rest.as_slice()))
            && peels_to_zero(rs, &rest, simple, positive)
    })
}

/// For every weight and every `w` in `W`, the reduced element `w'` lies in the
/// integral Weyl group and `w^{-1} Delta^+ ∩ Delta_lambda` equals
/// `w'^{-1} Delta_lambda^+`.
pub fn check_reduce_parameters(rs: &RootSystem, lambdas: &[Weight], exec: Exec) -> Report {
    let group = rs
        .enumerate_group(DEFAULT_GROUP_BOUND)
        .expect("group within bound");
    let parts = par::map(exec, lambdas, |lam| {
        let mut bad = Vec::new();
        let data = IntegralData::new(rs, lam).expect("rank matches");
        let integral: Vec<Weight> = (0..rs.num_roots())
            .filter(|&i| rs.pairing_idx(i, lam).is_integer())
            .map(|i| rs.root_weight(i))
            .collect();
        let positive_w: BTreeSet<Weight> =
            (0..rs.num_positive()).map(|i| rs.root_weight(i)).collect();
        let integral_pos: Vec<&Weight> =
            integral.iter().filter(|r| positive_w.contains(r)).collect();
        for w in &group {
            let wp = match data.reduce_parameters(rs, w) {
                Ok(x) => x,
                Err(err) => {
                    bad.push(format!("lambda={lam} w={}: {err}", rs.elem_to_string(w)));
                    continue;
                }
            };
            if !data.contains(rs, &wp) {
                bad.push(format!(
                    "lambda={lam} w={}: w' not in W_lambda",
                    rs.elem_to_string(w)
                ));
                continue;
            }
            // Weyl elements act on root weights as on any weight.
            let lhs: BTreeSet<Weight> = integral
                .iter()
                .filter(|g| positive_w.contains(&w.apply(g)))
                .cloned()
                .collect();
            let wp_inv = wp.inverse();
            let rhs: BTreeSet<Weight> = integral_pos.iter().map(|g| wp_inv.apply(g)).collect();
            if lhs != rhs {
                bad.push(format!(
                    "lambda={lam} w={}: w'={} gives a different positive system",
                    rs.elem_to_string(w),
                    rs.elem_to_string(&wp)
                ));
            }
        }
        (group.len(), bad)
    });
    Report::collect(&format!("reduce-parameters {}", rs.spec()), parts)
}

/// Sweep bounds.
#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    pub grid_radius: i64,
    pub max_word_len: usize,
    pub exec: Exec,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            grid_radius: 2,
            max_word_len: crate::weyl::DEFAULT_WORD_LENGTH_BOUND,
            exec: Exec::Parallel,
        }
    }
}

/// The A-set sweeps: reduced-word independence and concatenation.
pub fn check_a_sets(rs: &RootSystem, cfg: &SweepConfig, a_set: ASetFn) -> Vec<Report> {
    let grid = test_grid(rs.rank(), cfg.grid_radius);
    vec![
        check_word_independence(rs, &grid, cfg.max_word_len, cfg.exec, a_set),
        check_concatenation(rs, &grid, cfg.exec, a_set),
    ]
}

/// Criterion invariances: reflexivity of both criteria, stabilizer invariance
/// at the singular dominant grid points, condition (A2) and generic
/// vanishing.
pub fn check_invariances(rs: &RootSystem, cfg: &SweepConfig) -> Vec<Report> {
    let grid = test_grid(rs.rank(), cfg.grid_radius);
    let lambdas = dominant_only(rs, &test_grid(rs.rank(), 1));
    let singular: Vec<Weight> = lambdas
        .iter()
        .filter(|l| {
            IntegralData::new(rs, l)
                .map(|d| !d.stabilizer_gens().is_empty())
                .unwrap_or(false)
        })
        .cloned()
        .collect();
    vec![
        check_verma_reflexivity(rs, &grid, cfg.exec),
        check_ps_reflexivity(rs, &lambdas, 1, cfg.exec),
        check_stabilizer_invariance(rs, &singular, 1, cfg.exec),
        check_a2_invariance(rs, &grid, cfg.exec),
        check_generic_vanishing(rs, &grid, cfg.exec),
    ]
}

/// Integral structure and parameter reduction over the fractional samples and
/// the radius-one integral box.
pub fn check_structure(rs: &RootSystem, cfg: &SweepConfig) -> Vec<Report> {
    let lambdas = test_grid(rs.rank(), 1);
    vec![
        check_integral_structure(rs, &lambdas, cfg.exec),
        check_reduce_parameters(rs, &lambdas, cfg.exec),
    ]
}

/// Strong-linkage equivalence on the integral box and on seeded random pairs.
pub fn check_linkage(
    rs: &RootSystem,
    cfg: &SweepConfig,
    random: usize,
    seed: u64,
) -> Result<Vec<Report>> {
    let boxed = all_pairs(&integral_box(rs.rank(), cfg.grid_radius));
    let rand = random_pairs(rs, random, seed)?;
    let mut sampled = check_bgg_equivalence(rs, &rand, cfg.exec);
    sampled.name = format!("bgg-equivalence-random {}", rs.spec());
    Ok(vec![check_bgg_equivalence(rs, &boxed, cfg.exec), sampled])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn linkage_examples() {
        let a1 = rs("A1");
        let (ok, chain) = bgg_verma_hom(&a1, &w("(2)"), &w("(2)"));
        assert!(ok);
        assert!(chain.unwrap().steps.is_empty());
        assert_eq!(bgg_reachable(&a1, &w("(3)")), [w("(3)"), w("(-3)")].into());
        assert_eq!(bgg_reachable(&a1, &w("(-3)")), [w("(-3)")].into());
        assert_eq!(bgg_reachable(&a1, &w("(1/2)")), [w("(1/2)")].into());

        let a2 = rs("A2");
        assert_eq!(bgg_reachable(&a2, &a2.rho()).len(), 6);
        let (ok, chain) = bgg_verma_hom(&a2, &w("(-1,-1)"), &a2.rho());
        assert!(ok);
        let chain = chain.unwrap();
        assert_eq!(chain.end(), &w("(-1,-1)"));
        chain.validate(&a2).unwrap();
    }

    #[test]
    fn bad_chains_are_rejected() {
        let a1 = rs("A1");
        let up = LinkageChain {
            start: w("(-3)"),
            steps: vec![(Root(vec![1]), w("(3)"))],
        };
        assert!(up.validate(&a1).is_err());
        let wrong = LinkageChain {
            start: w("(3)"),
            steps: vec![(Root(vec![1]), w("(-1)"))],
        };
        assert!(wrong.validate(&a1).is_err());
    }

    // Direction calibration: in rank one the criterion gives M(s mu) in M(mu)
    // exactly for positive integral pairings, and the search must agree.
    #[test]
    fn direction_matches_rank_one() {
        let a1 = rs("A1");
        let pairs = all_pairs(&fraction_box(1, 2, 8));
        let r = check_bgg_equivalence(&a1, &pairs, Exec::Sequential);
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, pairs.len());
    }

    #[test]
    fn brute_force_matches_recursion() {
        for label in ["A2", "B2", "G2"] {
            let r = rs(label);
            let ctx = IntegralData::full(&r);
            let w0 = r.longest_element();
            let word = ctx.canonical_word(&r, &w0).unwrap();
            let letters = ctx.word_roots(&word);
            for mu in test_grid(2, 2) {
                assert_eq!(
                    brute_force_a_set(&r, &letters, &mu),
                    reference_a_set(&r, &letters, &mu),
                    "{label} {mu}"
                );
            }
        }
    }

    #[test]
    fn a2_worked_example_by_brute_force() {
        let a2 = rs("A2");
        let letters = [0, 1, 0];
        let all = brute_force_a_set(&a2, &letters, &w("(-1,-1)"));
        let orbit: BTreeSet<Weight> = a2
            .enumerate_group(10)
            .unwrap()
            .iter()
            .map(|u| u.apply(&w("(-1,-1)")))
            .collect();
        assert_eq!(all, orbit);
        assert_eq!(
            brute_force_a_set(&a2, &letters, &w("(1,1)")),
            [w("(1,1)")].into()
        );
    }

    #[test]
    fn grids() {
        assert_eq!(integral_box(2, 2).len(), 25);
        assert_eq!(
            fraction_box(1, 2, 2),
            vec![w("(-1)"), w("(-1/2)"), w("(0)"), w("(1/2)"), w("(1)")]
        );
        let g = test_grid(2, 2);
        assert!(g.windows(2).all(|p| p[0] < p[1]));
        assert!(g.contains(&w("(1/3,-2/3)")));
    }

    #[test]
    fn random_pairs_are_seeded() {
        let a2 = rs("A2");
        let a = random_pairs(&a2, 50, 7).unwrap();
        assert_eq!(a, random_pairs(&a2, 50, 7).unwrap());
        assert_ne!(a, random_pairs(&a2, 50, 8).unwrap());
    }

    #[test]
    fn a2_sweeps_pass() {
        let a2 = rs("A2");
        let cfg = SweepConfig::default();
        for r in check_a_sets(&a2, &cfg, &reference_a_set)
            .into_iter()
            .chain(check_structure(&a2, &cfg))
        {
            assert!(r.passed(), "{r}");
            assert!(r.checked > 0, "{r}");
        }
    }

    #[test]
    fn weight_lattice_description_is_too_large() {
        let a2 = rs("A2");
        let r = check_weight_lattice_description(&a2, &[w("(-2/3,-2/3)")], Exec::Sequential);
        assert!(!r.passed());
        assert!(
            check_weight_lattice_description(&a2, &integral_box(2, 1), Exec::Sequential).passed()
        );
        assert!(
            check_weight_lattice_description(&a2, &fraction_box(2, 2, 2), Exec::Sequential)
                .passed()
        );
    }

    #[test]
    fn mutant_is_caught() {
        let a2 = rs("A2");
        let grid = test_grid(2, 2);
        let r = check_word_independence(&a2, &grid, 16, Exec::Parallel, &mutant_a_set);
        assert!(!r.passed());
        assert!(r.first_counterexample().is_some());
    }

    #[test]
    fn reports_are_policy_independent() {
        let b2 = rs("B2");
        let grid = test_grid(2, 1);
        let seq = check_word_independence(&b2, &grid, 16, Exec::Sequential, &mutant_a_set);
        let par = check_word_independence(&b2, &grid, 16, Exec::Parallel, &mutant_a_set);
        assert_eq!(seq, par);
    }
}
