//! Exact-arithmetic Apollonian gaskets.
//!
//! This crate builds integral Apollonian circle packings and studies their
//! kaleidoscopic and self-similar structure entirely in exact arithmetic:
//! arbitrary-precision rationals for all geometry, quadratic surds for the
//! scaling constants, and periodic continued fractions for their expansions.
//!
//! The main pieces:
//!
//! - [`numerics`]: rationals, Gaussian rationals, quadratic surds,
//!   continued fractions.
//! - [`geometry`]: exact generalized circles (circles and lines), tangency
//!   predicates, circumcircles and inversion mirrors.
//! - [`mobius`]: Möbius and anti-Möbius transformations, built from point
//!   triples, applied to points and circles.
//! - [`descartes`]: Descartes quadruple algebra, fourth-circle solutions,
//!   reflections, duality and the Apollonian group generators.
//! - [`ford`]: Farey fractions, friendly triplets and Ford circles.
//! - [`selfsim`]: the recursion matrix of a hierarchy, scaling surds and
//!   boundary conjugation.
//! - [`kaleido`]: Pappus chains and mirrors, symmetric partners and the
//!   three-fold self-similar descent.
//! - [`pythagoras`]: the Pythagorean-tree correspondence and Lorentz
//!   quadruples.
//! - [`gasket`]: exact enumeration of a packing from a root quadruple.
//! - [`render`]: deterministic SVG output.
//! - [`cli`]: the `apollonian` command-line front end.
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod cli;
pub mod descartes;
pub mod error;
pub mod ford;
pub mod gasket;
pub mod geometry;
pub mod kaleido;
pub mod mobius;
pub mod numerics;
pub mod pythagoras;
pub mod render;
pub mod selfsim;

pub use error::{Error, Result};
