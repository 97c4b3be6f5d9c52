//! Exact-arithmetic library for Hecke triangle group orbits in the plane.
//!
//! The Hecke triangle group H_q (q >= 3) is the subgroup of SL(2, R)
//! generated by the rotation S = [[0,-1],[1,0]] and the shear
//! T = [[1,lambda_q],[0,1]] with lambda_q = 2cos(pi/q); H_3 = SL(2, Z).
//! The orbit V_q = H_q . (1,0)^T is a discrete set of planar vectors
//! generalizing the primitive integer vectors, and the asymptotic density
//! of V_q and of its fixed-determinant vector pairs is governed by the
//! Siegel-Veech constant c(q) = (1/2 - 1/q) pi^2.
//!
//! The crate provides:
//!
//! - [`ring`]: exact arithmetic in Z[lambda_q] with certified sign
//!   determination through interval refinement of the real embedding;
//! - [`orbit`]: generation of V_q inside a disk by the generalized Farey
//!   fan construction, with exact membership lookup and witness matrices;
//! - [`moments`]: the pair/tuple machinery — c(q), the geometric totient
//!   phi_q, realizable determinants N_q, canonical forms [[1,m],[0,n]],
//!   determinant-locus pair counting, and k-tuple classification;
//! - [`oracle3`]: an independent integer-arithmetic brute-force reference
//!   for q = 3 used by the test suites.

pub mod error;
pub mod moments;
pub mod oracle3;
pub mod orbit;
pub mod ring;

pub use error::Error;
pub use orbit::{generate_orbit, hecke_generators, Mat2, OrbitSet, Vec2};
pub use ring::{minimal_polynomial, MinimalPolynomial, RealInterval, RingElement};
