//! Pricing engine for a LIBOR market model whose normalized bond prices are
//! conditional expectations of `cosh(u X_T)` under the terminal measure,
//! driven by a one-dimensional real-valued affine process.
//!
//! The crate covers the full pipeline:
//!
//! * [`process`] — driving affine processes (Brownian, jump-diffusion OU)
//!   with their characteristic exponents and mgf domains;
//! * [`curve`] — tenor structures and initial discount curves;
//! * [`model`] — calibration of the decreasing `u`-sequence and forward
//!   rates with their lower bounds;
//! * [`unimodal`] — extremum and payoff-region root finding for the
//!   unimodal ratio functions the pricing formulas rely on;
//! * [`fourier`] — semi-analytic floorlet/caplet/swaption prices by
//!   one-dimensional Fourier inversion;
//! * [`brownian`] — closed-form Brownian benchmark prices;
//! * [`mc`] — exact-law Monte Carlo simulation as a model-independent
//!   cross-check;
//! * [`surface`] / [`black76`] — Black-76 implied volatility surfaces.

pub mod black76;
pub mod brownian;
pub mod curve;
pub mod error;
pub mod fourier;
pub mod mc;
pub mod model;
mod numeric;
pub mod process;
pub mod surface;
pub mod unimodal;

pub use black76::{black76_price, implied_vol, ImpliedVol, OptionSide};
pub use curve::{DiscountCurve, TenorStructure};
pub use error::{Error, Result};
pub use fourier::{
    choose_dampening, integrate_inversion, price_caplet, price_floorlet, price_payer_swaption,
    price_put_swaption, InversionOptions, PricingResult,
};
pub use mc::{McEstimate, SimulationPlan};
pub use model::CalibratedModel;
pub use numeric::norm_cdf;
pub use process::{AffineProcessSpec, BrownianParams, JumpOuParams, MgfDomain, ProcessKind};
pub use surface::{CellStatus, ColumnAxis, VolSurfaceGrid};
pub use unimodal::PayoffRegion;
