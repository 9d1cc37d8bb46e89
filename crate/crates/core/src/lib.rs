//! Exact algebra over prime fields for actions of infinitesimal group schemes on curves.

pub mod coaction;
pub mod curve;
pub mod derivation;
pub mod error;
pub mod field;
pub mod fraction;
pub mod groebner;
pub mod gnormal;
pub mod group;
pub mod ideal;
pub mod linalg;
pub mod matrix;
pub mod module;
pub mod order;
pub mod points;
pub mod poly;
pub mod quotient;

pub use error::{Error, Result};
pub use field::{PrimeField, UniPoly};
pub use groebner::{engine_stats, reset_engine_stats, set_spair_limit, EngineStats, SpairLimitExceeded};
pub use ideal::{kernel_of_ring_map, Dim, Ideal, QuotientRing, RingMap};
pub use order::MonomialOrder;
pub use poly::{MultiPoly, PolyRing};
