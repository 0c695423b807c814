//! Small numerical building blocks: real polynomial roots, step-doubling
//! adaptive quadrature, and a derivative-free bracketing minimizer.

pub mod minimize;
pub mod poly;
pub mod quad;
