//! Exact computation of Chen iterated integrals, the reduced bar complex
//! with its Hodge and weight filtrations, and the classification of
//! unipotent flat connections against their Higgs data on square complex
//! tori X = ℂ^g/(ℤ^g + iℤ^g).
//!
//! Everything is computed over ℚ(i) with arbitrary-precision rationals;
//! there is no floating point and no tolerance anywhere. The headline
//! operation, `connection::verify_theorems`, checks on any nilpotent
//! flat connection that
//!
//! * the monodromy kills the ideal I exactly when the connection matrix
//!   has no (0,1)-part (trivial underlying holomorphic bundle), and
//! * the monodromy kills the conjugate ideal Ī exactly when the matrix
//!   has no (1,0)-part (zero Higgs field).

pub mod scalar;
pub mod linalg;
pub mod torus;
pub mod path;
pub mod group_algebra;
pub mod chen;
pub mod bar;
pub mod connection;
pub mod sampler;
pub mod report;
