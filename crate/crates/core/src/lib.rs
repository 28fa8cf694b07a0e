//! Rowmotion on order ideals, K-jeu-de-taquin on increasing tableaux, and the
//! rectangle/trapezoid bijection that intertwines them.
//!
//! Everything is exact: integers for tableaux and ideals, big rationals for
//! distributions, polytope points and linear programs.

pub mod error;
pub mod poset;
pub mod knuth;
pub mod shapes;
pub mod tableau;
pub mod phi;
pub mod stats;
pub mod lp;
pub mod audit;

pub use error::{Error, Result};
pub use poset::{
    build_poset, orbits_of, Antichain, ElementSet, Ideal, OrbitDecomposition, Poset, PosetSpec,
    RowmotionMethod, DEFAULT_IDEAL_CAP,
};
