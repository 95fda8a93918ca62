//! Exact construction, verification and search of periodic billiard orbits in
//! regular simplices.
//!
//! All geometry is done over the rationals in the standard embedding of Δⁿ
//! (vertices are the unit vectors of (n+1)-space), so closure of an orbit is
//! checked by exact equality rather than a tolerance.

pub mod exactla;
pub mod families;
pub mod finder;
pub mod hull;
pub mod simplex;
pub mod tracer;
