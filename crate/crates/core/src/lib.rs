//! Finite commutative monoids with group actions.
//!
//! A [`GammaStructure`] bundles a commutative monoid (a Cayley table with the
//! identity at index 0) with a finite group acting on it by additive
//! bijections. On top of that the crate provides
//!
//! * order-theoretic properties of the monoid ([`monoid`]),
//! * order-ideals that are closed under the action, their lattice and the
//!   sum/intersection closure results ([`ideals`]),
//! * quotients by such ideals, homomorphisms, isomorphism search and
//!   canonical forms, plus executable versions of the isomorphism theorems
//!   ([`quotient`], [`iso`], [`theorems`]),
//! * series, composition series, Schreier refinements and the Jordan-Hölder
//!   factor multiset ([`series`]),
//! * an exhaustive generator of small instances and a set of named families
//!   ([`corpus`]),
//! * a plain-text instance format and the reports behind the command line
//!   tool ([`format`], [`report`]).

pub mod action;
pub mod corpus;
pub mod elemset;
pub mod format;
pub mod group;
pub mod ideals;
pub mod iso;
pub mod monoid;
pub mod quotient;
pub mod report;
pub mod series;
pub mod theorems;

use thiserror::Error;

pub use action::{automorphism_group, ActionError, GammaStructure, SubStructure};
pub use elemset::ElemSet;
pub use group::{Group, GroupError};
pub use ideals::{Ideal, IdealLattice};
pub use iso::{canonical_form, find_gamma_isomorphism, CanonicalKey};
pub use monoid::{MinimalityMode, Monoid, MonoidError};
pub use quotient::{HomMap, Partition, QuotientPresentation};
pub use series::{FactorDescriptor, Series, SeriesType, TypeTag};


/// Element index into a carrier `0..n`.
pub type Elem = usize;

/// Size caps for the exponential searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest structure passed to isomorphism search.
    pub max_iso: usize,
    /// Largest structure that gets an exact canonical form.
    pub max_canonical: usize,
    /// Largest carrier for the exhaustive subset filter over ideals.
    pub max_exhaustive_ideals: usize,
    /// Largest size for exhaustive monoid enumeration.
    pub max_enumeration: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_iso: 10,
            max_canonical: 8,
            max_exhaustive_ideals: 20,
            max_enumeration: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("{0:?} is not a sub-Γ-monoid")]
    NotSubmonoid(Vec<Elem>),
    #[error("{elements:?} is not a Γ-order-ideal: {violation}")]
    NotAnIdeal {
        elements: Vec<Elem>,
        violation: ideals::IdealViolation,
    },
    #[error("quotient is not well defined: {0}")]
    WellDefinednessFailure(String),
    #[error("not a Γ-homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("structures are acted on by different groups")]
    GroupMismatch,
    #[error("size {size} exceeds the limit {limit} for {what}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("not a refinement monoid: {0:?} cannot be refined")]
    NotRefinementMonoid([Elem; 4]),
    #[error("not a Γ-series: {0}")]
    NotGammaSeries(String),
    #[error("not a composition series: {0}")]
    NotCompositionSeries(String),
    #[error("entry {0} is not an atom of the ideal lattice")]
    NotAtom(usize),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
