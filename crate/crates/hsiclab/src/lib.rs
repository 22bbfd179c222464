//! # hsiclab
//!
//! Kernel dependence measures over finite discrete distributions, computed
//! exactly, plus the feature-selection procedures built on them and a
//! certification suite for the numerical claims behind a selection
//! counterexample.
//!
//! ## What lives where
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`kernel`] | Radial feature kernels and response kernels |
//! | [`dist`] | Finite joint distributions, the planted two-signal law, conditional expectations, sampling |
//! | [`hsic`] | Exact and empirical dependence values, the closed-form objective, proportionality constants |
//! | [`select`] | Subset and continuous-weight dependence maximization, the elimination inequality |
//! | [`verify`] | Structured certification of every claim, with witnesses and a JSON report |
//!
//! ## The headline computation
//!
//! A response on `{-1, +1}` is planted with two informative features of
//! strengths `d1 > d2 > 0`. Both features are needed to explain the response
//! (conditioning on either one alone leaves a positive L2 gap), yet when the
//! elimination inequality holds, maximizing the kernel dependence measure
//! over feature subsets or over weight vectors in an lq ball selects the
//! dominant feature alone:
//!
//! ```
//! use hsiclab::{
//!     select_subset, DeltaParams, FiniteJointDistribution, RadialXKernel, ResponseKernel,
//! };
//!
//! let law = FiniteJointDistribution::counterexample(&DeltaParams::new(0.9, 0.1, 2).unwrap());
//! let picked = select_subset(&law, &RadialXKernel::Gaussian, &ResponseKernel::ProductIdentity)
//!     .unwrap();
//! assert_eq!(picked.subset.indices(), &[1]); // the weaker feature is gone
//! assert!(law.l2_gap(&picked.subset).unwrap() > 1e-6); // but it was needed
//! ```
//!
//! All arithmetic is plain `f64`; every value in scope is of order one and
//! identities are asserted at 1e-12 unless a check states otherwise.

pub mod dist;
pub mod error;
pub mod hsic;
pub mod kernel;
pub mod select;
pub mod verify;

pub use dist::{Atom, Dataset, DeltaParams, FiniteJointDistribution};
pub use error::{Error, Result};
pub use hsic::{
    closed_form_objective, empirical_hsic, exact_hsic_centered_pm1, exact_hsic_subset,
    exact_hsic_weighted, proportionality_constant, HsicValue, WeightVector,
};
pub use kernel::{ExponentialMixture, RadialXKernel, ResponseKernel};
pub use select::{
    check_elimination_condition, pick_delta, select_continuous, select_subset, AuditEntry,
    ContinuousSearchConfig, EliminationCheck, FeatureSubset, LqNorm, SelectionResult,
};
pub use verify::{
    check_lemma_suite, check_theorem1, check_theorem1_at, check_theorem2, check_theorem2_with,
    run_all, CheckOutcome, CheckStatus, VerificationReport, VerifyConfig,
};
