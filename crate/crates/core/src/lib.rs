//! Frequency modes coupling anti-plane seismic waves with an idealized tall
//! building.
//!
//! The building foundation is the unit segment `[-1/2, 1/2] x {0}`. For a
//! wavenumber `k > 0` the ground displacement solves a Helmholtz problem whose
//! boundary density `f_k` satisfies a first-kind integral equation on the
//! segment. The total flux `I(k) = int f_k` enters the coupling gap
//! `F(k) = q(k^2) + p(k^2) Re I(k)`, and coupling modes are the roots of `F`.
//!
//! * [`specfun`]: Bessel, Hankel and Struve functions.
//! * [`dtn`]: modal Dirichlet-to-Neumann coefficients on the unit circle.
//! * [`screen_bie`]: the segment integral equation, flux and field.
//! * [`coupling`]: the gap `F(k)`, scans and root refinement.
//! * [`cli`]: the command-line front end.
//!
//! Every numerical routine is generic over [`Real`]; the aliases below fix the
//! scalar to `f64`, which is what the command-line tool uses.

pub mod cli;
pub mod coupling;
pub mod dtn;
pub mod error;
pub mod scalar;
pub mod screen_bie;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::Real;

pub type SpecialValue = specfun::SpecialValue<f64>;
pub type DtnCoefficient = dtn::DtnCoefficient<f64>;
pub type ChebDensity = screen_bie::ChebDensity<f64>;
pub type LinearSystem = screen_bie::LinearSystem<f64>;
pub type FieldSample = screen_bie::FieldSample<f64>;
pub type FluxValue = screen_bie::FluxValue<f64>;
pub type CityConstants = coupling::CityConstants<f64>;
pub type CouplingSample = coupling::CouplingSample<f64>;
pub type CouplingMode = coupling::CouplingMode<f64>;
