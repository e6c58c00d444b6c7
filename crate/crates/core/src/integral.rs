//! Integral root systems and integral Weyl groups attached to a weight.
//!
//! For a weight `lambda`, the integral roots are those `beta` with
//! `<coroot(beta), lambda>` an integer. They form a root subsystem whose
//! reflection group `W_lambda` is realized inside `W`; nothing here builds an
//! abstract Coxeter group. Lengths in `W_lambda` are inversion counts over the
//! integral positive roots.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rootsystem::{Root, RootSystem};
use crate::weight::{Weight, Q};
use crate::weyl::WeylElem;

#[derive(Clone, Debug)]
pub struct IntegralData {
    lambda: Weight,
    positive: Vec<usize>,
    simple: Vec<usize>,
    longest: WeylElem,
    stabilizer_gens: Vec<usize>,
}

impl IntegralData {
    pub fn new(rs: &RootSystem, lambda: &Weight) -> Result<Self> {
        lambda.check_rank(rs.rank())?;
        let positive: Vec<usize> = (0..rs.num_positive())
            .filter(|&i| rs.pairing_idx(i, lambda).is_integer())
            .collect();
        let simple = indecomposables(rs, &positive);
        let longest = rs.longest_in(&simple);
        let stabilizer_gens = simple
            .iter()
            .copied()
            .filter(|&b| rs.pairing_idx(b, lambda).is_zero())
            .collect();
        Ok(IntegralData {
            lambda: lambda.clone(),
            positive,
            simple,
            longest,
            stabilizer_gens,
        })
    }

    /// Data for an integral regular weight: the whole root system.
    pub fn full(rs: &RootSystem) -> Self {
        Self::new(rs, &rs.rho()).expect("rho has the right rank")
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    /// Root indices of the integral positive roots.
    pub fn positive_indices(&self) -> &[usize] {
        &self.positive
    }

    /// Root indices of the simple system of the integral roots, in canonical
    /// order (root coordinates, lexicographically descending).
    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn positive_roots<'a>(&'a self, rs: &'a RootSystem) -> impl Iterator<Item = &'a Root> + 'a {
        self.positive.iter().map(move |&i| rs.root(i))
    }

    pub fn simple_roots<'a>(&'a self, rs: &'a RootSystem) -> impl Iterator<Item = &'a Root> + 'a {
        self.simple.iter().map(move |&i| rs.root(i))
    }

    /// Longest element of the integral Weyl group.
    pub fn longest(&self) -> &WeylElem {
        &self.longest
    }

    /// Integral simple roots orthogonal to lambda.
    pub fn stabilizer_gens(&self) -> &[usize] {
        &self.stabilizer_gens
    }

    pub fn is_integral_root(&self, rs: &RootSystem, idx: usize) -> bool {
        self.positive.binary_search(&rs.abs_index(idx)).is_ok()
    }

    /// Position of a root in the integral simple system.
    pub fn simple_position(&self, rs: &RootSystem, root: &Root) -> Result<usize> {
        rs.root_index(root)
            .and_then(|i| self.simple.iter().position(|&s| s == i))
            .ok_or_else(|| Error::NotIntegralSimple(root.to_string()))
    }

    /// Membership in the integral Weyl group: `w lambda - lambda` lies in the
    /// root lattice.
    pub fn contains(&self, rs: &RootSystem, w: &WeylElem) -> bool {
        rs.weight_to_root_coords(&(&w.apply(&self.lambda) - &self.lambda))
            .iter()
            .all(|c| c.is_integer())
    }

    /// `w lambda - lambda` lies in the weight lattice. Every element of the
    /// integral Weyl group passes, but so can others: in A2 with
    /// `lambda = -2/3 rho` the group is trivial while `s1 s2` passes.
    pub fn satisfies_weight_lattice_condition(&self, w: &WeylElem) -> bool {
        (&w.apply(&self.lambda) - &self.lambda).is_integral()
    }

    pub(crate) fn require(&self, rs: &RootSystem, w: &WeylElem) -> Result<()> {
        if w.tag() != rs.tag() {
            return Err(Error::MixedSystems);
        }
        if self.contains(rs, w) {
            Ok(())
        } else {
            Err(Error::NotInIntegralWeylGroup(rs.elem_to_string(w)))
        }
    }

    /// Length of `w` in the integral Weyl group.
    pub fn length(&self, rs: &RootSystem, w: &WeylElem) -> Result<usize> {
        self.require(rs, w)?;
        Ok(self
            .positive
            .iter()
            .filter(|&&b| !rs.is_positive_index(rs.act_root(w, b)))
            .count())
    }

    fn left_descent_positions(&self, rs: &RootSystem, inv: &WeylElem) -> Vec<usize> {
        (0..self.simple.len())
            .filter(|&p| !rs.is_positive_index(rs.act_root(inv, self.simple[p])))
            .collect()
    }

    /// Canonical reduced word of `w` over the integral simple system, as
    /// positions into [`simple_indices`](Self::simple_indices): repeatedly
    /// peel the first left descent.
    pub fn canonical_word(&self, rs: &RootSystem, w: &WeylElem) -> Result<Vec<usize>> {
        self.require(rs, w)?;
        let mut inv = w.inverse();
        let mut word = Vec::new();
        while let Some(&p) = self.left_descent_positions(rs, &inv).first() {
            inv = &inv * &rs.reflection(self.simple[p]);
            word.push(p);
        }
        Ok(word)
    }

    /// All reduced words of `w` over the integral simple system.
    pub fn all_reduced_words(
        &self,
        rs: &RootSystem,
        w: &WeylElem,
        max_len: usize,
    ) -> Result<BTreeSet<Vec<usize>>> {
        let len = self.length(rs, w)?;
        if len > max_len {
            return Err(Error::BoundExceeded(format!(
                "integral length {len} exceeds the reduced-word length bound {max_len}"
            )));
        }
        let mut memo = HashMap::new();
        Ok(self.words_rec(rs, w, &mut memo).into_iter().collect())
    }

    fn words_rec(
        &self,
        rs: &RootSystem,
        w: &WeylElem,
        memo: &mut HashMap<WeylElem, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if let Some(v) = memo.get(w) {
            return v.clone();
        }
        let descents = self.left_descent_positions(rs, &w.inverse());
        let out = if descents.is_empty() {
            vec![Vec::new()]
        } else {
            let mut out = Vec::new();
            for p in descents {
                let rest = &rs.reflection(self.simple[p]) * w;
                for tail in self.words_rec(rs, &rest, memo) {
                    let mut v = vec![p];
                    v.extend(tail);
                    out.push(v);
                }
            }
            out
        };
        memo.insert(w.clone(), out.clone());
        out
    }

    /// Root indices of the letters of a word given as simple positions.
    pub fn word_roots(&self, word: &[usize]) -> Vec<usize> {
        word.iter().map(|&p| self.simple[p]).collect()
    }

    /// Product of the reflections named by a word of simple positions.
    pub fn word_elem(&self, rs: &RootSystem, word: &[usize]) -> WeylElem {
        word.iter().fold(rs.identity(), |acc, &p| {
            &acc * &rs.reflection(self.simple[p])
        })
    }

    /// Every element of the integral Weyl group.
    pub fn elements(&self, rs: &RootSystem, bound: usize) -> Result<Vec<WeylElem>> {
        let gens: Vec<WeylElem> = self.simple.iter().map(|&b| rs.reflection(b)).collect();
        rs.generate(&gens, bound)
    }

    /// The stabilizer of lambda in the integral Weyl group.
    ///
    /// For dominant lambda this is the subgroup generated by the reflections in
    /// [`stabilizer_gens`](Self::stabilizer_gens); otherwise the integral Weyl
    /// group is enumerated and filtered.
    pub fn stabilizer_elements(&self, rs: &RootSystem, bound: usize) -> Result<Vec<WeylElem>> {
        if rs.is_dominant(&self.lambda) {
            self.stabilizer_by_generators(rs, bound)
        } else {
            self.stabilizer_by_filter(rs, bound)
        }
    }

    pub fn stabilizer_by_generators(&self, rs: &RootSystem, bound: usize) -> Result<Vec<WeylElem>> {
        let gens: Vec<WeylElem> = self
            .stabilizer_gens
            .iter()
            .map(|&b| rs.reflection(b))
            .collect();
        rs.generate(&gens, bound)
    }

    pub fn stabilizer_by_filter(&self, rs: &RootSystem, bound: usize) -> Result<Vec<WeylElem>> {
        Ok(self
            .elements(rs, bound)?
            .into_iter()
            .filter(|w| w.apply(&self.lambda) == self.lambda)
            .collect())
    }

    /// The element `w'` of the integral Weyl group with
    /// `w^{-1} Delta^+ ∩ Delta_lambda = w'^{-1} Delta_lambda^+`.
    pub fn reduce_parameters(&self, rs: &RootSystem, w: &WeylElem) -> Result<WeylElem> {
        if w.tag() != rs.tag() {
            return Err(Error::MixedSystems);
        }
        // The positive system w^{-1} Delta^+ ∩ Delta_lambda of Delta_lambda.
        let target: Vec<usize> = self
            .positive
            .iter()
            .map(|&b| {
                let img = rs.act_root(w, b);
                if rs.is_positive_index(img) {
                    b
                } else {
                    rs.neg_index(b)
                }
            })
            .collect();
        // Move that positive system onto Delta_lambda^+ by integral simple
        // reflections; each step fixes one negative root.
        let mut x = rs.identity();
        loop {
            let image: HashSet<usize> = target.iter().map(|&b| rs.act_root(&x, b)).collect();
            let bad = self
                .simple
                .iter()
                .copied()
                .find(|&a| image.contains(&rs.neg_index(a)));
            match bad {
                Some(a) => x = &rs.reflection(a) * &x,
                None => return Ok(x),
            }
        }
    }
}

/// Elements of a positive system that are not sums of two others, sorted by
/// root coordinates in descending lexicographic order so that an integral
/// weight reproduces the Bourbaki order of the simple roots.
fn indecomposables(rs: &RootSystem, positive: &[usize]) -> Vec<usize> {
    let coords: HashSet<&[i64]> = positive.iter().map(|&i| rs.root(i).coords()).collect();
    let mut simple: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&i| {
            let c = rs.root(i).coords();
            !positive.iter().any(|&j| {
                let d = rs.root(j).coords();
                let rest: Vec<i64> = c.iter().zip(d).map(|(a, b)| a - b).collect();
                j != i && coords.contains(rest.as_slice())
            })
        })
        .collect();
    simple.sort_by(|&a, &b| rs.root(b).cmp(rs.root(a)));
    simple
}

/// Integral data for `lambda` (free-function form).
pub fn integral_data(rs: &RootSystem, lambda: &Weight) -> Result<IntegralData> {
    IntegralData::new(rs, lambda)
}

/// Membership in the integral Weyl group.
pub fn is_in_w_lambda(rs: &RootSystem, w: &WeylElem, data: &IntegralData) -> bool {
    data.contains(rs, w)
}

/// See [`IntegralData::reduce_parameters`].
pub fn reduce_parameters(rs: &RootSystem, w: &WeylElem, lambda: &Weight) -> Result<WeylElem> {
    IntegralData::new(rs, lambda)?.reduce_parameters(rs, w)
}

/// A `W_lambda`-conjugate `y lambda` of `lambda` that is dominant, together with
/// `y`.
pub fn dominant_conjugate(rs: &RootSystem, lambda: &Weight) -> Result<(Weight, WeylElem)> {
    let data = IntegralData::new(rs, lambda)?;
    let mut cur = lambda.clone();
    let mut y = rs.identity();
    // Reflections in W_lambda preserve the integral system, so the same
    // integral simple roots apply at every step; each step raises `cur`.
    loop {
        let neg = data
            .simple
            .iter()
            .copied()
            .find(|&b| rs.pairing_idx(b, &cur) < Q::zero());
        match neg {
            Some(b) => {
                cur = rs.reflect_idx(b, &cur);
                y = &rs.reflection(b) * &y;
            }
            None => break,
        }
    }
    debug_assert!(rs.is_dominant(&cur));
    Ok((cur, y))
}
