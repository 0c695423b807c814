//! Numerical toolkit for higher-derivative (Podolsky-type) electrodynamics
//! at laboratory scales.
//!
//! The theory adds a single length parameter `a` to Maxwell's equations,
//! equivalent to a heavy partner mode of mass `hbar / (a c)`. Two
//! laboratory handles on `a` are implemented end to end:
//!
//! * **Nested-cylinder ion interferometry** ([`interferometry`], [`fields`]):
//!   inside a pulsed cylinder the potential is not flat but sags toward the
//!   axis with a modified-Bessel profile of decay length `a`. Two ion beams
//!   at different radii pick up a differential phase; measuring it (or
//!   bounding it) inverts into an estimate of (or bound on) `a`.
//! * **Hydrogen ground-state spectroscopy** ([`hydrogen`]): the regularized
//!   point-charge potential shifts the variational ground-state energy by
//!   `8 (a / r_B)^2` at leading order, so the spectroscopic uncertainty of
//!   the hydrogen ground level caps `a` from above.
//!
//! Supporting machinery is deliberately self-contained: exponentially
//! scaled modified Bessel functions built for extreme arguments
//! ([`bessel`]), a small numerics layer ([`numeric`]), and independent
//! re-derivations of the closed forms from their differential equations
//! ([`oracle`]). Everything fallible returns a typed [`Error`] instead of a
//! NaN.
//!
//! ```
//! use podolsky::interferometry::{self, preset};
//! use podolsky::fields::Epsilon;
//!
//! let exp = preset("H+")?;
//! let plan = interferometry::DrivePlan::new(
//!     exp.delta_v,
//!     1e-2,                              // measured phase, radians
//!     Epsilon::from_one_minus(1e-8)?,    // shielding quality
//! )?;
//! let a = interferometry::estimate_a(&exp.geometry, &exp.beam, &plan)?;
//! let mass = interferometry::photon_mass(a)?;
//! assert!((a - 6.92e-4).abs() < 1e-6);            // metres
//! assert!(mass.mass_ev < 3e-4);                   // far below any bound on light
//! # Ok::<(), podolsky::Error>(())
//! ```

pub mod bessel;
pub mod constants;
pub mod error;
pub mod fields;
pub mod hydrogen;
pub mod interferometry;
pub mod numeric;
pub mod oracle;
pub mod units;

pub use error::{Error, Result};

// The guide chapters double as doc-tests so their code blocks can never
// drift out of sync with the crate.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            pub struct $name;
        };
    }

    chapter!(Introduction, "../../../book/src/introduction.md");
    chapter!(SpecialFunctions, "../../../book/src/special-functions.md");
    chapter!(CylinderPotential, "../../../book/src/cylinder-potential.md");
    chapter!(Interferometry, "../../../book/src/interferometry.md");
    chapter!(HydrogenBound, "../../../book/src/hydrogen-bound.md");
    chapter!(Verification, "../../../book/src/verification.md");
    chapter!(CommandLine, "../../../book/src/cli.md");
}
