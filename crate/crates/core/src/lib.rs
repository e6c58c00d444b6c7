//! Exact root-system combinatorics and decision procedures for the existence of
//! nonzero homomorphisms between twisted Verma modules and between principal
//! series representations of a complex semisimple group.
//!
//! Weights are exact rational vectors in the fundamental-weight basis, roots are
//! integer vectors in the simple-root basis, and Weyl group elements are integer
//! matrices acting on weight coordinates. Nothing in this crate uses floating
//! point.
//!
//! The layers build on each other:
//!
//! * [`rootsystem`]: Cartan types, roots, pairings, reflections, dominance.
//! * [`weyl`]: group elements, lengths, reduced words, Bruhat order.
//! * [`integral`]: integral root subsystems, integral Weyl groups, stabilizers.
//! * [`aset`]: the reflection-chain sets `A_w(mu)` that drive both criteria.
//! * [`criteria`]: the two Hom-existence criteria and their Ext contract.
//! * [`oracle`]: the classical strong-linkage criterion and invariance sweeps.

pub mod aset;
pub mod criteria;
mod error;
pub mod integral;
pub mod oracle;
pub mod par;
pub mod parse;
pub mod rootsystem;
mod weight;
pub mod weyl;

pub use aset::{ASet, ASetKey, ASetStore, Certificate};
pub use criteria::{Engine, ExtQuery, HomVerdict, Parameters, PsContext, WitnessSource};
pub use error::{Error, Result};
pub use integral::IntegralData;
pub use par::Exec;
pub use rootsystem::{CartanType, Root, RootSystem, RootSystemSpec};
pub use weight::{Weight, Q};
pub use weyl::{WeylElem, Word};
