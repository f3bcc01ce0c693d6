//! Inner bounds, outer bounds and capacity regions of the cognitive
//! interference channel with a common cognitive message.
//!
//! The transmitter pair (1, 2) shares a channel; encoder 1 (cognitive) knows
//! both messages and both receivers decode the cognitive message `W1`.
//!
//! - [`region`]: halfspace rate regions, hulls, containment, gap and ratio.
//! - [`fme`]: symbolic Fourier–Motzkin elimination over rate variables.
//! - [`dmc`]: finite-alphabet channels, information measures and grid searches.
//! - [`gaussian`]: closed-form and covariance-based bounds for the Gaussian model.
//! - [`verify`]: the end-to-end checks run by `ccm verify-all` and the
//!   acceptance test target.

pub mod dmc;
pub mod error;
pub mod fme;
pub mod format;
pub mod gaussian;
pub mod region;
pub mod verify;

pub use error::{Error, Result};
pub use region::{Halfspace, RatePoint, RateRegion};
