//! Deformed Heisenberg algebras and their deformed-oscillator realizations.
//!
//! * [`qp`]: deformation parameters, q,p-numbers, generalized factorials.
//! * [`structure`]: structure-function catalog, the H/G recipe and the H/G
//!   pairs of the one-, two- and three-parameter algebras.
//! * [`fock`]: truncated Fock-space matrices for `a+`, `a-`, `N`, `X`, `P`.
//! * [`verify`]: interior residuals of the defining relations.
//! * [`link`]: linkage of the two-sided algebra with the `q,p`-oscillator.
//! * [`limits`]: reduction and classical-limit checks.
//!
//! `hbar = 1` throughout.

pub mod error;
pub mod fock;
pub mod limits;
pub mod link;
pub mod qp;
pub mod structure;
pub mod verify;

pub use error::{Error, HgSide, Result};
pub use fock::{build_ladder, build_xp, hamiltonian, profile_q, profile_qp, profile_two_sided, CoefficientProfile, FockRep};
pub use qp::{generalized_factorial, qp_number, DeformationParams};
pub use structure::{
    equal_hg_special_case, hg_for_q_ha, hg_for_qp_ha, hg_for_qp_oscillator, hg_for_two_sided, sf_eval, sf_from_hg,
    spectrum, two_sided_equal_sf, HgPair, SfModel,
};
pub use verify::{Check, Mu, ResidualReport};
