//! Group charts, developing maps, étale representations and geodesics.

pub mod catalog;
pub mod chart;
pub mod connection;
pub mod geodesic;
pub mod verify;

pub use catalog::{pairing, planar_rep_for_lsa, DevelopingMap, EtaleRep, Pairing};
pub use chart::GroupChart;
pub use connection::{christoffels_from_lsa, Christoffel, Connection, LeftInvariantConnection};
pub use geodesic::{exp_map, geodesic, GeodesicPath};
pub use verify::{check_affine_immersion, check_develops_to_line, induced_rep, verify_equivariance, InducedRep};
