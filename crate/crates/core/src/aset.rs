//! The sets `A_{(s_1,...,s_l)}(mu)`.
//!
//! For a word in integral simple reflections with letters `alpha_1..alpha_l`,
//! put `beta_i = s_{alpha_1} ... s_{alpha_{i-1}} (alpha_i)`. The set collects
//! every `s_{beta_{i_r}} ... s_{beta_{i_1}} mu` over subsequences
//! `i_1 < ... < i_r` along which each successive pairing
//! `<coroot(beta_{i_k}), s_{beta_{i_{k-1}}} ... s_{beta_{i_1}} mu>` is a
//! negative integer. The empty subsequence is allowed, so `mu` is always a
//! member.
//!
//! Evaluation peels the first letter:
//! `A_(s, rest)(mu) = s A_rest(s mu) ∪ s A_rest(mu)`, the second part only
//! when `<coroot(alpha_1), mu>` is a negative integer. Intermediate results
//! are memoized per call on (suffix position, weight).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::integral::IntegralData;
use crate::rootsystem::{Root, RootSystem};
use crate::weight::{Weight, Q};
use crate::weyl::WeylElem;

/// One realizing subsequence for an element: zero-based positions into the
/// word and the corresponding roots `beta_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub indices: Vec<usize>,
    pub betas: Vec<Root>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASet {
    mu: Weight,
    letters: Vec<usize>,
    betas: Vec<usize>,
    elements: BTreeMap<Weight, Vec<usize>>,
}

impl ASet {
    pub fn mu(&self) -> &Weight {
        &self.mu
    }

    /// Root indices of the letters of the word.
    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// Root indices of `beta_1, ..., beta_l`.
    pub fn betas(&self) -> &[usize] {
        &self.betas
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.elements.contains_key(w)
    }

    /// Elements in ascending lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = &Weight> + '_ {
        self.elements.keys()
    }

    pub fn element_set(&self) -> BTreeSet<Weight> {
        self.elements.keys().cloned().collect()
    }

    /// Element with its certificate positions.
    pub fn entries(&self) -> impl Iterator<Item = (&Weight, &[usize])> + '_ {
        self.elements.iter().map(|(w, c)| (w, c.as_slice()))
    }

    pub fn certificate(&self, rs: &RootSystem, w: &Weight) -> Option<Certificate> {
        self.elements.get(w).map(|idx| Certificate {
            indices: idx.clone(),
            betas: idx
                .iter()
                .map(|&i| rs.root(self.betas[i]).clone())
                .collect(),
        })
    }

    /// Rebuilds a set from stored parts (used by persistent caches). Every
    /// certificate is replayed; a set that fails replay is rejected.
    pub fn from_parts(
        rs: &RootSystem,
        letters: Vec<usize>,
        mu: Weight,
        elements: Vec<(Weight, Vec<usize>)>,
    ) -> Result<ASet> {
        if letters.iter().any(|&i| i >= rs.num_roots()) {
            return Err(Error::Parse("letter index out of range".into()));
        }
        mu.check_rank(rs.rank())?;
        let set = ASet {
            betas: beta_sequence(rs, &letters),
            letters,
            mu,
            elements: elements.into_iter().collect(),
        };
        set.replay(rs).map_err(Error::Parse)?;
        Ok(set)
    }

    /// Checks every certificate against the defining chain condition.
    pub fn replay(&self, rs: &RootSystem) -> std::result::Result<(), String> {
        if !self.elements.contains_key(&self.mu) {
            return Err(format!("{} is missing from its own set", self.mu));
        }
        for (target, idx) in &self.elements {
            if idx.windows(2).any(|p| p[0] >= p[1]) {
                return Err(format!("certificate {idx:?} is not increasing"));
            }
            let mut cur = self.mu.clone();
            for &i in idx {
                let b = *self
                    .betas
                    .get(i)
                    .ok_or_else(|| format!("certificate index {i} out of range"))?;
                let p = rs.pairing_idx(b, &cur);
                if !(p.is_integer() && p < Q::zero()) {
                    return Err(format!(
                        "pairing {p} with beta_{} is not a negative integer",
                        i + 1
                    ));
                }
                cur = rs.reflect_idx(b, &cur);
            }
            if &cur != target {
                return Err(format!("certificate {idx:?} reaches {cur}, not {target}"));
            }
        }
        Ok(())
    }

    /// Image of the set under `w`.
    pub fn translate(&self, w: &WeylElem) -> BTreeSet<Weight> {
        self.elements.keys().map(|x| w.apply(x)).collect()
    }
}

impl fmt::Display for ASet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.keys().map(|w| w.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `beta_i = s_{alpha_1} ... s_{alpha_{i-1}} (alpha_i)` for root indices.
pub fn beta_sequence(rs: &RootSystem, letters: &[usize]) -> Vec<usize> {
    let mut prefix = rs.identity();
    letters
        .iter()
        .map(|&a| {
            let b = rs.act_root(&prefix, a);
            prefix = &prefix * &rs.reflection(a);
            b
        })
        .collect()
}

type Partial = Rc<BTreeMap<Weight, Vec<usize>>>;

struct Evaluator<'a> {
    rs: &'a RootSystem,
    letters: &'a [usize],
    memo: HashMap<(usize, Weight), Partial>,
}

impl Evaluator<'_> {
    fn eval(&mut self, pos: usize, nu: &Weight) -> Partial {
        if pos == self.letters.len() {
            return Rc::new(BTreeMap::from([(nu.clone(), Vec::new())]));
        }
        let key = (pos, nu.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let a = self.letters[pos];
        let s_nu = self.rs.reflect_idx(a, nu);
        let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (x, cert) in self.eval(pos + 1, &s_nu).iter() {
            out.insert(self.rs.reflect_idx(a, x), cert.clone());
        }
        let p = self.rs.pairing_idx(a, nu);
        if p.is_integer() && p < Q::zero() {
            for (x, cert) in self.eval(pos + 1, nu).iter() {
                let mut c = Vec::with_capacity(cert.len() + 1);
                c.push(pos);
                c.extend_from_slice(cert);
                let y = self.rs.reflect_idx(a, x);
                match out.get_mut(&y) {
                    Some(old) if *old <= c => {}
                    Some(old) => *old = c,
                    None => {
                        out.insert(y, c);
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.memo.insert(key, out.clone());
        out
    }
}

/// A-set of a word given by root indices of its letters. No membership check
/// is made on the letters.
pub fn a_set_roots(rs: &RootSystem, letters: &[usize], mu: &Weight) -> ASet {
    let mut ev = Evaluator {
        rs,
        letters,
        memo: HashMap::new(),
    };
    let elements = ev.eval(0, mu);
    drop(ev);
    ASet {
        mu: mu.clone(),
        letters: letters.to_vec(),
        betas: beta_sequence(rs, letters),
        elements: Rc::try_unwrap(elements).unwrap_or_else(|rc| (*rc).clone()),
    }
}

/// A-set of a word whose letters are integral simple roots of `ctx`.
pub fn a_set_word(
    rs: &RootSystem,
    ctx: &IntegralData,
    letters: &[Root],
    mu: &Weight,
) -> Result<ASet> {
    mu.check_rank(rs.rank())?;
    let idx = letters
        .iter()
        .map(|r| {
            let p = ctx.simple_position(rs, r)?;
            Ok(ctx.simple_indices()[p])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(a_set_roots(rs, &idx, mu))
}

/// A-set of a word given as positions into the integral simple system.
pub fn a_set_positions(
    rs: &RootSystem,
    ctx: &IntegralData,
    word: &[usize],
    mu: &Weight,
) -> Result<ASet> {
    mu.check_rank(rs.rank())?;
    if let Some(&p) = word.iter().find(|&&p| p >= ctx.simple_indices().len()) {
        return Err(Error::IndexOutOfRange {
            index: p + 1,
            rank: ctx.simple_indices().len(),
        });
    }
    Ok(a_set_roots(rs, &ctx.word_roots(word), mu))
}

/// `A_w(mu)` through the canonical reduced word of `w` in the integral Weyl
/// group.
pub fn a_set(rs: &RootSystem, ctx: &IntegralData, w: &WeylElem, mu: &Weight) -> Result<ASet> {
    mu.check_rank(rs.rank())?;
    let word = ctx.canonical_word(rs, w)?;
    Ok(a_set_roots(rs, &ctx.word_roots(&word), mu))
}

/// One A-set per reduced word of `w` in the integral Weyl group, keyed by the
/// word (positions into the integral simple system).
pub fn a_set_all_words(
    rs: &RootSystem,
    ctx: &IntegralData,
    w: &WeylElem,
    mu: &Weight,
    max_len: usize,
) -> Result<Vec<(Vec<usize>, ASet)>> {
    mu.check_rank(rs.rank())?;
    Ok(ctx
        .all_reduced_words(rs, w, max_len)?
        .into_iter()
        .map(|word| {
            let set = a_set_roots(rs, &ctx.word_roots(&word), mu);
            (word, set)
        })
        .collect())
}

/// Content key of an A-set computation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ASetKey {
    pub system: String,
    pub letters: Vec<Root>,
    pub mu: Weight,
}

impl ASetKey {
    pub fn new(rs: &RootSystem, letters: &[usize], mu: &Weight) -> Self {
        ASetKey {
            system: rs.spec().to_string(),
            letters: letters.iter().map(|&i| rs.root(i).clone()).collect(),
            mu: mu.clone(),
        }
    }

    /// Stable textual form, suitable for content addressing.
    pub fn canonical(&self) -> String {
        let letters: Vec<String> = self.letters.iter().map(|r| r.to_string()).collect();
        format!("{}|{}|{}", self.system, letters.join(" "), self.mu)
    }
}

/// A shared store of computed A-sets. Implementations must be transparent:
/// a stored set is exactly what [`a_set_roots`] would return.
pub trait ASetStore: Sync {
    fn get(&self, key: &ASetKey) -> Option<ASet>;
    fn put(&self, key: &ASetKey, value: &ASet);
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

    fn set(items: &[&str]) -> BTreeSet<Weight> {
        items.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn rank_one() {
        let a1 = rs("A1");
        let ctx = IntegralData::full(&a1);
        let s = a1.longest_element();
        let a = a_set(&a1, &ctx, &s, &w("(-3)")).unwrap();
        assert_eq!(a.element_set(), set(&["(-3)", "(3)"]));
        for m in ["(3)", "(-1/2)", "(0)"] {
            assert_eq!(
                a_set(&a1, &ctx, &s, &w(m)).unwrap().element_set(),
                set(&[m])
            );
        }
    }

    #[test]
    fn a2_longest_word() {
        let a2 = rs("A2");
        let ctx = IntegralData::full(&a2);
        let w0 = a2.longest_element();
        let full = a_set(&a2, &ctx, &w0, &w("(-1,-1)")).unwrap();
        assert_eq!(
            full.element_set(),
            set(&["(-1,-1)", "(1,-2)", "(1,1)", "(-2,1)", "(2,-1)", "(-1,2)"])
        );
        full.replay(&a2).unwrap();
        let beta: Vec<Vec<i64>> = full.betas().iter().map(|&b| a2.root(b).0.clone()).collect();
        assert_eq!(beta, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        assert_eq!(
            a_set(&a2, &ctx, &w0, &w("(1,1)")).unwrap().element_set(),
            set(&["(1,1)"])
        );
        assert_eq!(
            a_set(&a2, &ctx, &a2.identity(), &w("(-1,-1)"))
                .unwrap()
                .element_set(),
            set(&["(-1,-1)"])
        );
    }

    #[test]
    fn certificates_are_lexicographically_first() {
        let a2 = rs("A2");
        let ctx = IntegralData::full(&a2);
        let a = a_set(&a2, &ctx, &a2.longest_element(), &w("(-1,-1)")).unwrap();
        // s_{beta_1} (-1,-1) = (1,-2)
        let c = a.certificate(&a2, &w("(1,-2)")).unwrap();
        assert_eq!(c.indices, vec![0]);
        assert_eq!(c.betas, vec![Root(vec![1, 0])]);
        assert_eq!(
            a.certificate(&a2, &w("(-1,-1)")).unwrap().indices,
            Vec::<usize>::new()
        );
    }

    #[test]
    fn letters_must_be_integral_simple() {
        let a2 = rs("A2");
        let ctx = IntegralData::new(&a2, &w("(1/2,1/2)")).unwrap();
        let err = a_set_word(&a2, &ctx, &[Root(vec![1, 0])], &w("(0,0)")).unwrap_err();
        assert!(matches!(err, Error::NotIntegralSimple(_)));
        let ok = a_set_word(&a2, &ctx, &[Root(vec![1, 1])], &w("(-1/2,-1/2)")).unwrap();
        assert_eq!(ok.element_set(), set(&["(-1/2,-1/2)", "(1/2,1/2)"]));
        let s1 = a2.parse_elem("s1").unwrap();
        assert!(matches!(
            a_set(&a2, &ctx, &s1, &w("(0,0)")),
            Err(Error::NotInIntegralWeylGroup(_))
        ));
    }

    #[test]
    fn both_words_of_a2_longest_agree() {
        let a2 = rs("A2");
        let ctx = IntegralData::full(&a2);
        let sets = a_set_all_words(&a2, &ctx, &a2.longest_element(), &w("(-1,-1)"), 16).unwrap();
        assert_eq!(sets.len(), 2);
        assert_eq!(sets[0].1.element_set(), sets[1].1.element_set());
        assert_eq!(sets[0].1.len(), 6);
        let beta: Vec<Vec<i64>> = sets[1]
            .1
            .betas()
            .iter()
            .map(|&b| a2.root(b).0.clone())
            .collect();
        assert_eq!(beta, vec![vec![0, 1], vec![1, 1], vec![1, 0]]);
    }

    #[test]
    fn non_integral_weight_is_isolated() {
        let b2 = rs("B2");
        let ctx = IntegralData::full(&b2);
        let mu = w("(1/3,-2/5)");
        for u in b2.enumerate_group(100).unwrap() {
            for (_, s) in a_set_all_words(&b2, &ctx, &u, &mu, 16).unwrap() {
                assert_eq!(s.element_set(), set(&["(1/3,-2/5)"]));
            }
        }
    }

    #[test]
    fn from_parts_rejects_bad_certificates() {
        let a2 = rs("A2");
        let ctx = IntegralData::full(&a2);
        let a = a_set(&a2, &ctx, &a2.longest_element(), &w("(-1,-1)")).unwrap();
        let parts: Vec<(Weight, Vec<usize>)> =
            a.entries().map(|(x, c)| (x.clone(), c.to_vec())).collect();
        let back =
            ASet::from_parts(&a2, a.letters().to_vec(), a.mu().clone(), parts.clone()).unwrap();
        assert_eq!(back, a);
        let mut bad = parts;
        bad[0].1 = vec![2, 1];
        assert!(ASet::from_parts(&a2, a.letters().to_vec(), a.mu().clone(), bad).is_err());
    }

    #[test]
    fn key_canonical_form() {
        let a2 = rs("A2");
        let k = ASetKey::new(&a2, &[0, 1, 0], &w("(-1,-1)"));
        assert_eq!(k.canonical(), "A2|[1,0] [0,1] [1,0]|(-1,-1)");
    }
}
