//! Weyl group elements as exact integer matrices on weight coordinates.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rootsystem::{RootSystem, SystemTag};
use crate::weight::{Weight, Q};

/// Default cap on enumerated group orders (|S_10|).
pub const DEFAULT_GROUP_BOUND: usize = 3_628_800;

/// Default cap on the length of elements whose reduced words are enumerated.
pub const DEFAULT_WORD_LENGTH_BOUND: usize = 16;

/// A word in simple reflections. Indices are zero-based internally; the text
/// form is one-based (`"s1 s2 s1"`, `"121"`, or `"e"` for the empty word).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// Space-free one-based form (`"s1s2s1"`), unambiguous at every rank.
    pub fn token(&self) -> String {
        if self.0.is_empty() {
            return "e".into();
        }
        self.0.iter().map(|i| format!("s{}", i + 1)).collect()
    }

    /// Compact one-based form (`"121"`), only unambiguous below rank 10.
    pub fn compact(&self) -> String {
        if self.0.is_empty() {
            return "e".into();
        }
        self.0.iter().map(|i| (i + 1).to_string()).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "e" {
            return Ok(Word::empty());
        }
        let one_based = |tok: &str| -> Result<usize> {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("invalid letter {tok:?} in word {s:?}")))?;
            if v == 0 {
                return Err(Error::Parse(format!(
                    "letters are one-based, got 0 in {s:?}"
                )));
            }
            Ok(v - 1)
        };
        let spaced = t.contains(['s', 'S', ' ', ',', '\t']);
        let letters = if spaced {
            t.split(|c: char| c == 's' || c == 'S' || c == ',' || c.is_whitespace())
                .filter(|tok| !tok.is_empty())
                .map(one_based)
                .collect::<Result<Vec<_>>>()?
        } else {
            t.chars()
                .map(|c| one_based(&c.to_string()))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word(letters))
    }
}

/// A Weyl group element, stored as its matrix on fundamental-weight
/// coordinates. Equality and hashing use the matrix only; the cached word is a
/// witness, not part of the identity.
#[derive(Clone, Debug)]
pub struct WeylElem {
    tag: SystemTag,
    rank: usize,
    m: Vec<i64>,
    word: Option<Arc<Word>>,
}

impl PartialEq for WeylElem {
    fn eq(&self, other: &Self) -> bool {
        self.tag == other.tag && self.m == other.m
    }
}

impl Eq for WeylElem {}

impl Hash for WeylElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.tag.hash(state);
        self.m.hash(state);
    }
}

impl PartialOrd for WeylElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.m.cmp(&other.m)
    }
}

impl WeylElem {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn tag(&self) -> SystemTag {
        self.tag
    }

    /// Row-major matrix acting on fundamental-weight coordinates.
    pub fn matrix(&self) -> &[i64] {
        &self.m
    }

    pub fn cached_word(&self) -> Option<&Word> {
        self.word.as_deref()
    }

    pub fn is_identity(&self) -> bool {
        let n = self.rank;
        (0..n).all(|i| (0..n).all(|j| self.m[i * n + j] == i64::from(i == j)))
    }

    /// Linear action on a weight.
    pub fn apply(&self, mu: &Weight) -> Weight {
        let n = self.rank;
        assert_eq!(mu.rank(), n, "weight rank does not match the Weyl group");
        let c = mu.coords();
        Weight::new(
            (0..n)
                .map(|i| {
                    (0..n).fold(Q::zero(), |acc, j| {
                        let a = self.m[i * n + j];
                        if a == 0 {
                            acc
                        } else {
                            acc + c[j] * Q::from_integer(a)
                        }
                    })
                })
                .collect(),
        )
    }

    fn apply_int(&self, v: &[i64]) -> Vec<i64> {
        let n = self.rank;
        (0..n)
            .map(|i| (0..n).map(|j| self.m[i * n + j] * v[j]).sum())
            .collect()
    }

    pub fn try_mul(&self, other: &WeylElem) -> Result<WeylElem> {
        if self.tag != other.tag {
            return Err(Error::MixedSystems);
        }
        let n = self.rank;
        let mut m = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.m[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    m[i * n + j] += a * other.m[k * n + j];
                }
            }
        }
        Ok(WeylElem {
            tag: self.tag,
            rank: n,
            m,
            word: None,
        })
    }

    pub fn inverse(&self) -> WeylElem {
        let n = self.rank;
        // Gauss-Jordan over Q; the inverse of a Weyl matrix is integral.
        let mut a: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let mut row: Vec<Q> = (0..n).map(|j| Q::from_integer(self.m[i * n + j])).collect();
                row.extend((0..n).map(|j| Q::from_integer(i64::from(i == j))));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .expect("Weyl group matrices are invertible");
            a.swap(col, piv);
            let p = a[col][col];
            for x in a[col].iter_mut() {
                *x /= p;
            }
            let pivot = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col];
                    for (x, v) in row.iter_mut().zip(&pivot) {
                        *x -= f * v;
                    }
                }
            }
        }
        let m = (0..n)
            .flat_map(|i| {
                let row = &a[i];
                (0..n).map(move |j| {
                    debug_assert!(row[n + j].is_integer());
                    row[n + j].to_integer()
                })
            })
            .collect();
        WeylElem {
            tag: self.tag,
            rank: n,
            m,
            word: self
                .word
                .as_ref()
                .map(|w| Arc::new(Word(w.0.iter().rev().copied().collect()))),
        }
    }
}

impl Mul for &WeylElem {
    type Output = WeylElem;

    /// Panics on elements of different root systems; use [`WeylElem::try_mul`]
    /// for the checked version.
    fn mul(self, rhs: &WeylElem) -> WeylElem {
        self.try_mul(rhs)
            .expect("multiplying elements of different root systems")
    }
}

impl RootSystem {
    pub fn identity(&self) -> WeylElem {
        let n = self.rank();
        let mut m = vec![0i64; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        WeylElem {
            tag: self.tag(),
            rank: n,
            m,
            word: Some(Arc::new(Word::empty())),
        }
    }

    /// The reflection in the root with index `idx`.
    pub fn reflection(&self, idx: usize) -> WeylElem {
        let n = self.rank();
        let beta = self.root_weight_coords(idx);
        let co = self.coroot_coords(idx);
        let mut m = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = i64::from(i == j) - beta[i] * co[j];
            }
        }
        WeylElem {
            tag: self.tag(),
            rank: n,
            m,
            word: None,
        }
    }

    /// Simple reflection `s_{i+1}` (zero-based index).
    pub fn simple_reflection(&self, i: usize) -> Result<WeylElem> {
        if i >= self.rank() {
            return Err(Error::IndexOutOfRange {
                index: i + 1,
                rank: self.rank(),
            });
        }
        let mut s = self.reflection(i);
        s.word = Some(Arc::new(Word(vec![i])));
        Ok(s)
    }

    pub fn from_word(&self, word: &Word) -> Result<WeylElem> {
        let mut u = self.identity();
        for &i in word.letters() {
            u = &u * &self.simple_reflection(i)?;
        }
        u.word = Some(Arc::new(word.clone()));
        Ok(u)
    }

    pub fn parse_elem(&self, s: &str) -> Result<WeylElem> {
        self.from_word(&s.parse()?)
    }

    fn check(&self, u: &WeylElem) -> Result<()> {
        if u.tag != self.tag() {
            Err(Error::MixedSystems)
        } else {
            Ok(())
        }
    }

    pub fn multiply(&self, u: &WeylElem, v: &WeylElem) -> Result<WeylElem> {
        self.check(u)?;
        u.try_mul(v)
    }

    pub fn inverse(&self, u: &WeylElem) -> Result<WeylElem> {
        self.check(u)?;
        Ok(u.inverse())
    }

    pub fn act(&self, u: &WeylElem, mu: &Weight) -> Result<Weight> {
        self.check(u)?;
        mu.check_rank(self.rank())?;
        Ok(u.apply(mu))
    }

    /// Index of `u(beta)` for the root with index `idx`.
    pub fn act_root(&self, u: &WeylElem, idx: usize) -> usize {
        let img = u.apply_int(self.root_weight_coords(idx));
        self.index_of_weight(&img)
            .expect("Weyl group elements permute the roots")
    }

    /// Positive roots sent to negative roots by `u`.
    pub fn inversions(&self, u: &WeylElem) -> Vec<usize> {
        (0..self.num_positive())
            .filter(|&i| !self.is_positive_index(self.act_root(u, i)))
            .collect()
    }

    pub fn length(&self, u: &WeylElem) -> usize {
        self.inversions(u).len()
    }

    /// Left descents: simple indices `i` with `l(s_i u) < l(u)`.
    pub fn left_descents(&self, u: &WeylElem) -> Vec<usize> {
        let inv = u.inverse();
        (0..self.rank())
            .filter(|&i| !self.is_positive_index(self.act_root(&inv, i)))
            .collect()
    }

    /// Right descents: simple indices `i` with `l(u s_i) < l(u)`.
    pub fn right_descents(&self, u: &WeylElem) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| !self.is_positive_index(self.act_root(u, i)))
            .collect()
    }

    /// Reduced word obtained by repeatedly peeling the smallest left descent.
    pub fn canonical_reduced_word(&self, u: &WeylElem) -> Word {
        let mut cur = u.clone();
        let mut inv = u.inverse();
        let mut word = Vec::new();
        loop {
            let next = (0..self.rank()).find(|&i| !self.is_positive_index(self.act_root(&inv, i)));
            match next {
                Some(i) => {
                    let s = self.reflection(i);
                    cur = &s * &cur;
                    inv = &inv * &s;
                    word.push(i);
                }
                None => break,
            }
        }
        debug_assert!(cur.is_identity());
        Word(word)
    }

    /// Display form of an element via its canonical reduced word.
    pub fn elem_to_string(&self, u: &WeylElem) -> String {
        self.canonical_reduced_word(u).to_string()
    }

    /// Every reduced word of `u`, in lexicographic order.
    pub fn all_reduced_words(&self, u: &WeylElem, max_len: usize) -> Result<BTreeSet<Word>> {
        let len = self.length(u);
        if len > max_len {
            return Err(Error::BoundExceeded(format!(
                "element of length {len} exceeds the reduced-word length bound {max_len}"
            )));
        }
        let mut memo: HashMap<WeylElem, Vec<Vec<usize>>> = HashMap::new();
        let words = self.reduced_words_rec(u, &mut memo);
        Ok(words.into_iter().map(Word).collect())
    }

    fn reduced_words_rec(
        &self,
        u: &WeylElem,
        memo: &mut HashMap<WeylElem, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if let Some(w) = memo.get(u) {
            return w.clone();
        }
        let descents = self.left_descents(u);
        let out = if descents.is_empty() {
            vec![Vec::new()]
        } else {
            let mut out = Vec::new();
            for i in descents {
                let rest = &self.reflection(i) * u;
                for tail in self.reduced_words_rec(&rest, memo) {
                    let mut w = Vec::with_capacity(tail.len() + 1);
                    w.push(i);
                    w.extend(tail);
                    out.push(w);
                }
            }
            out
        };
        memo.insert(u.clone(), out.clone());
        out
    }

    /// Longest element of the reflection subgroup with the given simple
    /// system (root indices). The result sends those positive roots of the
    /// subsystem to negative roots.
    pub fn longest_in(&self, simple: &[usize]) -> WeylElem {
        let mut u = self.identity();
        loop {
            let next = simple
                .iter()
                .copied()
                .find(|&b| self.is_positive_index(self.act_root(&u, b)));
            match next {
                Some(b) => u = &u * &self.reflection(b),
                None => return u,
            }
        }
    }

    pub fn longest_element(&self) -> WeylElem {
        let simple: Vec<usize> = (0..self.rank()).collect();
        self.longest_in(&simple)
    }

    /// Bruhat order via the subword property: `u <= v` iff `u` is the product
    /// of some subword of a reduced word of `v`.
    pub fn bruhat_leq(&self, u: &WeylElem, v: &WeylElem) -> bool {
        let word = self.canonical_reduced_word(v);
        let mut below: HashSet<WeylElem> = HashSet::new();
        below.insert(self.identity());
        for &i in word.letters() {
            let s = self.reflection(i);
            let extended: Vec<WeylElem> = below.iter().map(|x| x * &s).collect();
            below.extend(extended);
        }
        below.contains(u)
    }

    /// Closure of a generating set under multiplication, in breadth-first order.
    pub fn generate(&self, gens: &[WeylElem], bound: usize) -> Result<Vec<WeylElem>> {
        let e = self.identity();
        let mut seen: HashSet<WeylElem> = HashSet::new();
        seen.insert(e.clone());
        let mut order = vec![e.clone()];
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = &x * g;
                if !seen.contains(&y) {
                    if seen.len() >= bound {
                        return Err(Error::BoundExceeded(format!(
                            "group order exceeds the enumeration bound {bound}"
                        )));
                    }
                    seen.insert(y.clone());
                    order.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(order)
    }

    /// All elements of W, breadth-first from the identity.
    pub fn enumerate_group(&self, bound: usize) -> Result<Vec<WeylElem>> {
        let gens: Vec<WeylElem> = (0..self.rank()).map(|i| self.reflection(i)).collect();
        self.generate(&gens, bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    fn word(v: &[usize]) -> Word {
        Word(v.to_vec())
    }

    #[test]
    fn word_parsing() {
        let w: Word = "s1 s2 s1".parse().unwrap();
        assert_eq!(w, word(&[0, 1, 0]));
        assert_eq!("121".parse::<Word>().unwrap(), w);
        assert_eq!("s1s2s1".parse::<Word>().unwrap(), w);
        assert_eq!("e".parse::<Word>().unwrap(), Word::empty());
        assert_eq!(w.to_string(), "s1 s2 s1");
        assert_eq!(w.compact(), "121");
        assert_eq!(w.token(), "s1s2s1");
        assert_eq!(w.token().parse::<Word>().unwrap(), w);
        assert_eq!(
            Word(vec![9, 0]).token().parse::<Word>().unwrap(),
            Word(vec![9, 0])
        );
        assert!("s0".parse::<Word>().is_err());
        assert!("1x".parse::<Word>().is_err());
    }

    #[test]
    fn simple_reflections() {
        let a2 = rs("A2");
        let s1 = a2.simple_reflection(0).unwrap();
        assert!((&s1 * &s1).is_identity());
        assert_eq!(a2.length(&s1), 1);
        // s1(alpha2) = alpha1 + alpha2
        let img = a2.act_root(&s1, 1);
        assert_eq!(a2.root(img).coords(), &[1, 1]);
        assert!(matches!(
            a2.simple_reflection(2),
            Err(Error::IndexOutOfRange { index: 3, rank: 2 })
        ));
    }

    #[test]
    fn group_structure() {
        let a2 = rs("A2");
        let u = a2.parse_elem("s1 s2").unwrap();
        assert!((&u * &u.inverse()).is_identity());
        let w0 = a2.parse_elem("121").unwrap();
        assert_eq!(a2.act(&w0, &a2.rho()).unwrap(), "(-1,-1)".parse().unwrap());
        let mu: Weight = "(2/3,-5)".parse().unwrap();
        assert_eq!(a2.act(&a2.identity(), &mu).unwrap(), mu);
        let b2 = rs("B2");
        assert_eq!(a2.multiply(&u, &b2.identity()), Err(Error::MixedSystems));
        assert!(a2.act(&b2.identity(), &mu).is_err());
    }

    #[test]
    fn lengths() {
        let a2 = rs("A2");
        assert_eq!(a2.length(&a2.identity()), 0);
        assert_eq!(a2.length(&a2.parse_elem("12").unwrap()), 2);
        assert_eq!(a2.length(&a2.longest_element()), 3);
    }

    #[test]
    fn canonical_words() {
        let a2 = rs("A2");
        assert_eq!(a2.canonical_reduced_word(&a2.identity()), Word::empty());
        assert_eq!(
            a2.canonical_reduced_word(&a2.simple_reflection(0).unwrap()),
            word(&[0])
        );
        assert_eq!(
            a2.canonical_reduced_word(&a2.longest_element()),
            word(&[0, 1, 0])
        );
        // s2 s1 s2 is w0 too
        assert_eq!(
            a2.canonical_reduced_word(&a2.parse_elem("212").unwrap()),
            word(&[0, 1, 0])
        );
    }

    #[test]
    fn reduced_word_sets() {
        let a2 = rs("A2");
        let w0 = a2.longest_element();
        let all = a2.all_reduced_words(&w0, 16).unwrap();
        assert_eq!(
            all.into_iter().collect::<Vec<_>>(),
            vec![word(&[0, 1, 0]), word(&[1, 0, 1])]
        );
        let s1 = a2.simple_reflection(0).unwrap();
        assert_eq!(a2.all_reduced_words(&s1, 16).unwrap().len(), 1);
        let e = a2.all_reduced_words(&a2.identity(), 16).unwrap();
        assert_eq!(e.into_iter().collect::<Vec<_>>(), vec![Word::empty()]);
        assert!(matches!(
            a2.all_reduced_words(&w0, 2),
            Err(Error::BoundExceeded(_))
        ));
        // 16 reduced words for the longest element of A3, 42 for B3
        let a3 = rs("A3");
        assert_eq!(
            a3.all_reduced_words(&a3.longest_element(), 16)
                .unwrap()
                .len(),
            16
        );
        let b3 = rs("B3");
        assert_eq!(
            b3.all_reduced_words(&b3.longest_element(), 16)
                .unwrap()
                .len(),
            42
        );
    }

    #[test]
    fn longest_elements() {
        let a1 = rs("A1");
        assert_eq!(a1.longest_element(), a1.simple_reflection(0).unwrap());
        let a2 = rs("A2");
        assert_eq!(a2.longest_element(), a2.parse_elem("s1 s2 s1").unwrap());
        let theta = a2.root_index(&crate::Root(vec![1, 1])).unwrap();
        assert_eq!(a2.longest_in(&[theta]), a2.reflection(theta));
        for label in ["A3", "B3", "C3", "G2", "D4", "F4"] {
            let r = rs(label);
            let w0 = r.longest_element();
            assert_eq!(r.length(&w0), r.num_positive(), "{label}");
            for i in 0..r.num_positive() {
                assert!(!r.is_positive_index(r.act_root(&w0, i)));
            }
        }
    }

    #[test]
    fn bruhat_order() {
        let a2 = rs("A2");
        let all = a2.enumerate_group(DEFAULT_GROUP_BOUND).unwrap();
        let e = a2.identity();
        for v in &all {
            assert!(a2.bruhat_leq(&e, v));
            assert!(a2.bruhat_leq(v, &a2.longest_element()));
        }
        let s1 = a2.parse_elem("1").unwrap();
        let s2 = a2.parse_elem("2").unwrap();
        assert!(a2.bruhat_leq(&s1, &a2.parse_elem("12").unwrap()));
        assert!(!a2.bruhat_leq(&s1, &s2));
        assert!(!a2.bruhat_leq(&a2.parse_elem("12").unwrap(), &a2.parse_elem("21").unwrap()));
    }

    #[test]
    fn group_orders() {
        for (label, order) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 24),
            ("B2", 8),
            ("B3", 48),
            ("G2", 12),
            ("A1xA1", 4),
            ("C3", 48),
            ("D4", 192),
        ] {
            let r = rs(label);
            let all = r.enumerate_group(DEFAULT_GROUP_BOUND).unwrap();
            assert_eq!(all.len(), order, "{label}");
            let uniq: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(uniq.len(), order);
        }
        assert!(matches!(
            rs("A3").enumerate_group(10),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn exchange_property_and_word_lengths() {
        for label in ["A3", "B3", "G2", "A1xA1"] {
            let r = rs(label);
            for u in r.enumerate_group(DEFAULT_GROUP_BOUND).unwrap() {
                let l = r.length(&u);
                for i in 0..r.rank() {
                    let su = &r.reflection(i) * &u;
                    let ls = r.length(&su);
                    assert!(ls + 1 == l || ls == l + 1);
                }
                let words = r.all_reduced_words(&u, 16).unwrap();
                for w in words {
                    assert_eq!(w.len(), l);
                    assert_eq!(r.from_word(&w).unwrap(), u);
                }
                assert_eq!(r.canonical_reduced_word(&u).len(), l);
            }
        }
    }

    #[test]
    fn action_is_a_group_action() {
        let b3 = rs("B3");
        let mu: Weight = "(1/2,-2,7/3)".parse().unwrap();
        let all = b3.enumerate_group(DEFAULT_GROUP_BOUND).unwrap();
        for u in all.iter().step_by(5) {
            for v in all.iter().step_by(7) {
                assert_eq!((u * v).apply(&mu), u.apply(&v.apply(&mu)));
            }
            // <coroot(beta), u^{-1} mu> = <coroot(u beta), mu>
            for b in 0..b3.num_roots() {
                assert_eq!(
                    b3.pairing_idx(b, &u.inverse().apply(&mu)),
                    b3.pairing_idx(b3.act_root(u, b), &mu)
                );
            }
        }
    }
}
