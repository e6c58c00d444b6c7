//! Hom-existence criteria.
//!
//! *Twisted Verma modules.* `Hom(T_{w1} M(mu1), T_{w2} M(mu2))` is nonzero iff
//! `w1 A_{w1^{-1}}(mu1)` meets `w2 w0 A_{w0 w2^{-1}}(w0 mu2)`, with A-sets over
//! the full simple system.
//!
//! *Principal series.* For dominant `lambda`, `w1, w2` in the integral Weyl
//! group and `mu1, mu2` in `lambda + P`, the space of homomorphisms from
//! `L(M(w1 lambda), dM(mu1))` to `L(M(w2 lambda), dM(mu2))` is nonzero iff
//! `w1^{-1} w_lambda A_{w_lambda w1}(w_lambda mu1)` meets
//! `W_lambda^0 w2^{-1} A_{w2}(mu2)`, with A-sets over the integral simple
//! system.
//!
//! In both cases a vanishing Hom forces every Ext group to vanish, and a
//! nonvanishing Hom is a nonvanishing Ext^0, so the Ext answer is always the
//! negation of the Hom answer.
//!
//! Modules use the rho-shifted convention: `M(mu)` has highest weight
//! `mu - rho`.

use std::collections::BTreeSet;

use crate::aset::{a_set_roots, ASet, ASetKey, ASetStore};
use crate::error::{Error, Result};
use crate::integral::{dominant_conjugate, IntegralData};
use crate::rootsystem::RootSystem;
use crate::weight::Weight;
use crate::weyl::{WeylElem, Word, DEFAULT_GROUP_BOUND};

/// Echo of the parameters a verdict was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parameters {
    TwistedVerma {
        system: String,
        w1: Word,
        mu1: Weight,
        w2: Word,
        mu2: Weight,
    },
    PrincipalSeries {
        system: String,
        lambda: Weight,
        w1: Word,
        mu1: Weight,
        w2: Word,
        mu2: Weight,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomVerdict {
    pub hom_nonzero: bool,
    /// Every Ext group vanishes; always `!hom_nonzero`.
    pub ext_all_vanish: bool,
    /// Lexicographically smallest weight in the intersection.
    pub witness: Option<Weight>,
    /// The translated left set, sorted.
    pub left_set: Vec<Weight>,
    /// The translated right set, sorted.
    pub right_set: Vec<Weight>,
    pub parameters: Parameters,
    /// Twisted Verma queries only: `mu1 - mu2` is not in the weight lattice.
    /// The formula is still evaluated as written.
    pub lattice_mismatch: bool,
}

impl HomVerdict {
    fn decide(
        left: BTreeSet<Weight>,
        right: BTreeSet<Weight>,
        parameters: Parameters,
        lattice_mismatch: bool,
    ) -> Self {
        let witness = left.intersection(&right).next().cloned();
        let hom_nonzero = witness.is_some();
        HomVerdict {
            hom_nonzero,
            ext_all_vanish: !hom_nonzero,
            witness,
            left_set: left.into_iter().collect(),
            right_set: right.into_iter().collect(),
            parameters,
            lattice_mismatch,
        }
    }
}

/// Principal series parameters `(lambda, w, mu)` standing for
/// `L(M(w lambda), dM(w mu))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedPs {
    pub lambda: Weight,
    pub w: WeylElem,
    pub mu: Weight,
}

impl NormalizedPs {
    /// The `(w, mu)` pair in the form taken by
    /// [`Engine::hom_principal_series`]: the module `L(M(w lambda), dM(mu))`.
    pub fn hom_parameters(&self) -> (WeylElem, Weight) {
        (self.w.clone(), self.w.apply(&self.mu))
    }
}

/// A query against the Ext contract.
#[derive(Clone, Debug)]
pub enum ExtQuery {
    TwistedVerma {
        w1: WeylElem,
        mu1: Weight,
        w2: WeylElem,
        mu2: Weight,
    },
    PrincipalSeries {
        lambda: Weight,
        w1: WeylElem,
        mu1: Weight,
        w2: WeylElem,
        mu2: Weight,
    },
}

/// How a weight arises on one side of a criterion: `weight = translate
/// element` with `element` in `set`.
#[derive(Clone, Debug)]
pub struct WitnessSource {
    pub translate: WeylElem,
    pub set: ASet,
    pub element: Weight,
}

/// Precomputed data for principal series queries at a fixed dominant lambda.
#[derive(Clone, Debug)]
pub struct PsContext {
    data: IntegralData,
    stabilizer: Vec<WeylElem>,
}

impl PsContext {
    pub fn data(&self) -> &IntegralData {
        &self.data
    }

    pub fn lambda(&self) -> &Weight {
        self.data.lambda()
    }

    pub fn stabilizer(&self) -> &[WeylElem] {
        &self.stabilizer
    }
}

/// Evaluates the criteria over one root system, optionally backed by a shared
/// A-set store.
pub struct Engine<'a> {
    rs: &'a RootSystem,
    full: IntegralData,
    w0: WeylElem,
    store: Option<&'a dyn ASetStore>,
    bound: usize,
}

impl<'a> Engine<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        Engine {
            rs,
            full: IntegralData::full(rs),
            w0: rs.longest_element(),
            store: None,
            bound: DEFAULT_GROUP_BOUND,
        }
    }

    pub fn with_store(mut self, store: &'a dyn ASetStore) -> Self {
        self.store = Some(store);
        self
    }

    /// Cap on enumerated stabilizer sizes.
    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = bound;
        self
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    fn word_set(&self, letters: &[usize], mu: &Weight) -> ASet {
        match self.store {
            None => a_set_roots(self.rs, letters, mu),
            Some(store) => {
                let key = ASetKey::new(self.rs, letters, mu);
                if let Some(hit) = store.get(&key) {
                    return hit;
                }
                let set = a_set_roots(self.rs, letters, mu);
                store.put(&key, &set);
                set
            }
        }
    }

    /// `A_w(mu)` over the integral simple system of `ctx`.
    pub fn a_set(&self, ctx: &IntegralData, w: &WeylElem, mu: &Weight) -> Result<ASet> {
        mu.check_rank(self.rs.rank())?;
        let word = ctx.canonical_word(self.rs, w)?;
        Ok(self.word_set(&ctx.word_roots(&word), mu))
    }

    /// A-set of an explicit word given as positions into the integral simple
    /// system of `ctx`. The word need not be reduced.
    pub fn a_set_positions(&self, ctx: &IntegralData, word: &[usize], mu: &Weight) -> Result<ASet> {
        mu.check_rank(self.rs.rank())?;
        let n = ctx.simple_indices().len();
        if let Some(&p) = word.iter().find(|&&p| p >= n) {
            return Err(Error::IndexOutOfRange {
                index: p + 1,
                rank: n,
            });
        }
        Ok(self.word_set(&ctx.word_roots(word), mu))
    }

    pub fn full_data(&self) -> &IntegralData {
        &self.full
    }

    pub fn longest(&self) -> &WeylElem {
        &self.w0
    }

    fn source(&self, translate: WeylElem, set: ASet, x: &Weight) -> Option<WitnessSource> {
        let element = translate.inverse().apply(x);
        set.contains(&element).then_some(WitnessSource {
            translate,
            set,
            element,
        })
    }

    /// Sources of `x` in the left and right sets of the twisted Verma
    /// criterion; `None` on a side that does not contain `x`.
    pub fn explain_verma(
        &self,
        w1: &WeylElem,
        mu1: &Weight,
        w2: &WeylElem,
        mu2: &Weight,
        x: &Weight,
    ) -> Result<(Option<WitnessSource>, Option<WitnessSource>)> {
        self.check_elem(w1)?;
        self.check_elem(w2)?;
        let left = self.a_set(&self.full, &w1.inverse(), mu1)?;
        let right = self.a_set(&self.full, &(&self.w0 * &w2.inverse()), &self.w0.apply(mu2))?;
        Ok((
            self.source(w1.clone(), left, x),
            self.source(w2 * &self.w0, right, x),
        ))
    }

    /// Sources of `x` in the left and right sets of the principal series
    /// criterion. On the right the translate is `u w2^{-1}` for the first
    /// stabilizer element `u` that works.
    pub fn explain_principal_series(
        &self,
        ctx: &PsContext,
        w1: &WeylElem,
        mu1: &Weight,
        w2: &WeylElem,
        mu2: &Weight,
        x: &Weight,
    ) -> Result<(Option<WitnessSource>, Option<WitnessSource>)> {
        self.check_ps_slot(ctx, w1, mu1)?;
        self.check_ps_slot(ctx, w2, mu2)?;
        let wl = ctx.data.longest();
        let left = self.a_set(&ctx.data, &(wl * w1), &wl.apply(mu1))?;
        let left = self.source(&w1.inverse() * wl, left, x);
        let right_set = self.a_set(&ctx.data, w2, mu2)?;
        let w2_inv = w2.inverse();
        let right = ctx
            .stabilizer
            .iter()
            .find_map(|u| self.source(u * &w2_inv, right_set.clone(), x));
        Ok((left, right))
    }

    fn check_elem(&self, w: &WeylElem) -> Result<()> {
        if w.tag() != self.rs.tag() {
            Err(Error::MixedSystems)
        } else {
            Ok(())
        }
    }

    /// `w1 A_{w1^{-1}}(mu1)`.
    pub fn verma_left_set(&self, w1: &WeylElem, mu1: &Weight) -> Result<BTreeSet<Weight>> {
        self.check_elem(w1)?;
        Ok(self.a_set(&self.full, &w1.inverse(), mu1)?.translate(w1))
    }

    /// `w2 w0 A_{w0 w2^{-1}}(w0 mu2)`.
    pub fn verma_right_set(&self, w2: &WeylElem, mu2: &Weight) -> Result<BTreeSet<Weight>> {
        self.check_elem(w2)?;
        let inner = &self.w0 * &w2.inverse();
        let set = self.a_set(&self.full, &inner, &self.w0.apply(mu2))?;
        Ok(set.translate(&(w2 * &self.w0)))
    }

    pub fn hom_twisted_verma(
        &self,
        w1: &WeylElem,
        mu1: &Weight,
        w2: &WeylElem,
        mu2: &Weight,
    ) -> Result<HomVerdict> {
        let left = self.verma_left_set(w1, mu1)?;
        let right = self.verma_right_set(w2, mu2)?;
        let params = Parameters::TwistedVerma {
            system: self.rs.spec().to_string(),
            w1: self.rs.canonical_reduced_word(w1),
            mu1: mu1.clone(),
            w2: self.rs.canonical_reduced_word(w2),
            mu2: mu2.clone(),
        };
        let mismatch = !(mu1 - mu2).is_integral();
        Ok(HomVerdict::decide(left, right, params, mismatch))
    }

    /// Integral data and stabilizer for a dominant lambda.
    pub fn principal_series_context(&self, lambda: &Weight) -> Result<PsContext> {
        lambda.check_rank(self.rs.rank())?;
        if !self.rs.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let data = IntegralData::new(self.rs, lambda)?;
        let stabilizer = data.stabilizer_elements(self.rs, self.bound)?;
        Ok(PsContext { data, stabilizer })
    }

    fn check_ps_slot(&self, ctx: &PsContext, w: &WeylElem, mu: &Weight) -> Result<()> {
        mu.check_rank(self.rs.rank())?;
        ctx.data.require(self.rs, w)?;
        if !(mu - ctx.lambda()).is_integral() {
            return Err(Error::NotInCoset(mu.to_string()));
        }
        Ok(())
    }

    /// `w1^{-1} w_lambda A_{w_lambda w1}(w_lambda mu1)`.
    pub fn ps_left_set(
        &self,
        ctx: &PsContext,
        w1: &WeylElem,
        mu1: &Weight,
    ) -> Result<BTreeSet<Weight>> {
        self.check_ps_slot(ctx, w1, mu1)?;
        let wl = ctx.data.longest();
        let set = self.a_set(&ctx.data, &(wl * w1), &wl.apply(mu1))?;
        Ok(set.translate(&(&w1.inverse() * wl)))
    }

    /// `W_lambda^0 w2^{-1} A_{w2}(mu2)`.
    pub fn ps_right_set(
        &self,
        ctx: &PsContext,
        w2: &WeylElem,
        mu2: &Weight,
    ) -> Result<BTreeSet<Weight>> {
        self.check_ps_slot(ctx, w2, mu2)?;
        let base = self.a_set(&ctx.data, w2, mu2)?.translate(&w2.inverse());
        Ok(ctx
            .stabilizer
            .iter()
            .flat_map(|u| base.iter().map(move |x| u.apply(x)))
            .collect())
    }

    pub fn hom_principal_series_in(
        &self,
        ctx: &PsContext,
        w1: &WeylElem,
        mu1: &Weight,
        w2: &WeylElem,
        mu2: &Weight,
    ) -> Result<HomVerdict> {
        let left = self.ps_left_set(ctx, w1, mu1)?;
        let right = self.ps_right_set(ctx, w2, mu2)?;
        let params = Parameters::PrincipalSeries {
            system: self.rs.spec().to_string(),
            lambda: ctx.lambda().clone(),
            w1: self.rs.canonical_reduced_word(w1),
            mu1: mu1.clone(),
            w2: self.rs.canonical_reduced_word(w2),
            mu2: mu2.clone(),
        };
        Ok(HomVerdict::decide(left, right, params, false))
    }

    pub fn hom_principal_series(
        &self,
        lambda: &Weight,
        w1: &WeylElem,
        mu1: &Weight,
        w2: &WeylElem,
        mu2: &Weight,
    ) -> Result<HomVerdict> {
        let ctx = self.principal_series_context(lambda)?;
        self.hom_principal_series_in(&ctx, w1, mu1, w2, mu2)
    }

    /// Rewrites `L(M(w lambda), dM(w mu))` for arbitrary `lambda` as an
    /// isomorphic principal series with dominant lambda and `w` in the
    /// integral Weyl group. The output uses the same `(lambda, w, mu)`
    /// convention as the input.
    pub fn normalize_principal_series(
        &self,
        lambda: &Weight,
        w: &WeylElem,
        mu: &Weight,
    ) -> Result<NormalizedPs> {
        self.check_elem(w)?;
        mu.check_rank(self.rs.rank())?;
        let (dom, y) = dominant_conjugate(self.rs, lambda)?;
        // w lambda = (w y^{-1}) dom and w mu = (w y^{-1}) (y mu).
        let moved = w * &y.inverse();
        let data = IntegralData::new(self.rs, &dom)?;
        let reduced = data.reduce_parameters(self.rs, &moved)?;
        Ok(NormalizedPs {
            lambda: dom,
            w: reduced,
            mu: y.apply(mu),
        })
    }

    /// Whether some Ext group between the two modules is nonzero. This is
    /// exactly the Hom answer.
    pub fn ext_query(&self, q: &ExtQuery) -> Result<bool> {
        let v = match q {
            ExtQuery::TwistedVerma { w1, mu1, w2, mu2 } => {
                self.hom_twisted_verma(w1, mu1, w2, mu2)?
            }
            ExtQuery::PrincipalSeries {
                lambda,
                w1,
                mu1,
                w2,
                mu2,
            } => self.hom_principal_series(lambda, w1, mu1, w2, mu2)?,
        };
        Ok(v.hom_nonzero)
    }
}

pub fn hom_twisted_verma(
    rs: &RootSystem,
    w1: &WeylElem,
    mu1: &Weight,
    w2: &WeylElem,
    mu2: &Weight,
) -> Result<HomVerdict> {
    Engine::new(rs).hom_twisted_verma(w1, mu1, w2, mu2)
}

pub fn hom_principal_series(
    rs: &RootSystem,
    lambda: &Weight,
    w1: &WeylElem,
    mu1: &Weight,
    w2: &WeylElem,
    mu2: &Weight,
) -> Result<HomVerdict> {
    Engine::new(rs).hom_principal_series(lambda, w1, mu1, w2, mu2)
}

pub fn normalize_principal_series(
    rs: &RootSystem,
    lambda: &Weight,
    w: &WeylElem,
    mu: &Weight,
) -> Result<NormalizedPs> {
    Engine::new(rs).normalize_principal_series(lambda, w, mu)
}

pub fn ext_query(rs: &RootSystem, q: &ExtQuery) -> Result<bool> {
    Engine::new(rs).ext_query(q)
}
