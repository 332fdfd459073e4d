//! Planar analysis layer: Gaussian test functions on the plane, the
//! metaplectic-free two-variable representation, theta transforms, and the
//! distribution calculus the verification commands are built on.

pub mod atom;
pub mod checks;
pub mod dist;
pub mod gauss;
pub mod pairing;
pub mod poincare;
pub mod poly;
pub mod quadrature;
pub mod rep;
pub mod sample;
pub mod scans;
pub mod sums;

pub use atom::{GaussAtom, TestFunction};
pub use poly::Poly2;
pub use rep::{GroupElement, Generator, RepError};
