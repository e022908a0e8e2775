//! Population dynamics over Cayley graphs of finite groups, and the
//! `Z4`-decoration that turns complex group-algebra dynamics into
//! positive population dynamics on `Z4 x G`.
//!
//! - [`groups`]: cyclic and product groups, generator sets, Cayley graphs.
//! - [`semiring`]: `R+Z4`, formal sums over a group, `chi` and its section.
//! - [`dynamics`]: states, dynamical matrices, exact and chip evolution.
//! - [`oracle`]: dense brute-force spectra and time evolution for checking.

pub mod dynamics;
pub mod error;
pub mod groups;
pub mod oracle;
pub mod semiring;

pub use error::{Error, Result};
pub use groups::{
    cayley_digraph, cayley_graph, decorate, direct_product, free_group_ball, make_cyclic,
    CayleyDigraph, CayleyGraph, FiniteGroup, FreeGroupBall, GeneratorSet, GroupElement, GroupSpec,
};
pub use num_complex::Complex64;
pub use semiring::{
    chi_elem, chi_quad, lift_to_decorated, lower_from_decorated, section_elem, section_scalar,
    AlgebraElement, ComplexNum, PosQuad, SemiringElement,
};
