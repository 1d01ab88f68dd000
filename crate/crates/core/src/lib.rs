//! Exact-arithmetic checks for canonical genus-5 curves and the symbolic
//! Chern-class calculus of their tautological classes.
//!
//! * [`exactmath`]: prime fields, rationals, dense matrices.
//! * [`projgeom`]: projective points, evaluation matrices, seven-point classifier.
//! * [`cigeom`]: nets of quadrics, base loci over F_p, curve sampling and the
//!   verification sweeps.
//! * [`tautcalc`]: truncated graded polynomials in psi, lambda and kappa classes.
//! * [`cli`]: the `ciql` command-line front end and its run log.

pub mod exactmath;
pub mod projgeom;
pub mod cigeom;
pub mod tautcalc;
pub mod cli;
