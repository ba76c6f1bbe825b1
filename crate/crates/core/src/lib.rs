//! Contraction coefficients, Doeblin coefficients and channel partial orders
//! for binary-input channels.
//!
//! The crate is organised around two channel representations, the general
//! [`Channel`] (a 2×n row-stochastic matrix) and the paired
//! [`BisoChannel`] for binary-input symmetric-output channels.
//!
//! - [`coefficients`]: η_KL, η_TV, Doeblin α, α_max, maximal leakage, capacity.
//! - [`divergence`]: f-divergences with explicit boundary conventions.
//! - [`orders`]: degradability (LP feasibility), less-noisy and
//!   more-capable decisions, guessing probabilities.
//! - [`extremal`]: BSC/BEC representatives of a coefficient class and the
//!   explicit degrading maps relating them.
//! - [`applications`]: wiretap secrecy capacities, output f-divergence
//!   bounds, and F_I-curve bounds.

pub mod applications;
pub mod channel;
pub mod coefficients;
pub mod divergence;
pub mod error;
pub mod extremal;
pub mod io;
pub mod optimize;
pub mod orders;
pub mod sample;

pub use channel::{BisoChannel, Channel, DegradingMap, InputDistribution};
pub use coefficients::CoefficientReport;
pub use error::{Error, Result};
pub use orders::{OrderVerdict, Relation, Witness};
