//! Hard-core model on the even discrete torus `T_{L,d}`.
//!
//! The crate covers the torus graph itself, independent sets and their
//! balance classes, single-site Glauber dynamics, exact analysis of small
//! instances (partition function, transition matrix, mixing time,
//! conductance bounds), and the contour and shift constructions used to
//! argue that the dynamics mixes slowly at high activity.
//!
//! Numeric routines are generic over [`Scalar`], implemented for `f32`,
//! `f64` and the exact [`Rational`].

pub mod cutsets;
pub mod error;
pub mod exact;
pub mod glauber;
pub mod graph;
pub mod hardcore;
pub mod peierls;
pub mod scalar;
pub mod torus;

pub use cutsets::{gamma_family, gamma_family_for, ContourFamily, Cutset};
pub use error::{Error, Result};
pub use exact::{exact_mixing_time, ExactModel, MixingOptions, MixingReport};
pub use glauber::{ChainParams, Trajectory};
pub use graph::{BipartiteGraph, Parity, SimpleGraph};
pub use hardcore::{classify, BalanceClass, OccupancySet, Rho};
pub use peierls::{Approximation, FlowLayout};
pub use scalar::{ExactParam, ExactValue, Scalar};
pub use torus::{Direction, TorusGraph};

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
/// Exact model with rational weights and transition probabilities.
pub type ExactModelQ = ExactModel<Rational>;
pub type ExactModelF64 = ExactModel<f64>;
pub type ExactModelF32 = ExactModel<f32>;
