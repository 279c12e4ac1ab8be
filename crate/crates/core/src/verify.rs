//! Residual checks of deformed Heisenberg and oscillator relations on the
//! interior of a truncated Fock space.
//!
//! Products of two operators that each shift the level by one are exact on
//! `|0>, ..., |dim-1-m>` for any margin `m >= 1`; the top `m` levels carry
//! truncation artifacts and are excluded from every residual.

use std::fmt;

use num_complex::Complex64;

use crate::error::{require_finite, Error, Result};
use crate::fock::{build_ladder, build_xp, hamiltonian, profile_q, profile_qp, profile_two_sided, CMatrix, FockRep};
use crate::structure::{hg_for_two_sided_levels, level_fn, sf_table_from_hg, HgPair, LevelFn, SfModel};

pub const DEFAULT_MARGIN: usize = 2;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Tolerance and interior margin of a residual check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Check {
    pub tol: f64,
    pub margin: usize,
}

impl Check {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            margin: DEFAULT_MARGIN,
        }
    }

    pub fn with_margin(self, margin: usize) -> Self {
        Self { margin, ..self }
    }
}

impl Default for Check {
    fn default() -> Self {
        Self::new(DEFAULT_TOLERANCE)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub relation: String,
    pub dim: usize,
    pub margin: usize,
    pub max_abs_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Largest residual in each interior row.
    pub per_state: Option<Vec<(usize, f64)>>,
}

impl ResidualReport {
    pub fn new(
        relation: impl Into<String>,
        dim: usize,
        margin: usize,
        max_abs_residual: f64,
        tolerance: f64,
        per_state: Option<Vec<(usize, f64)>>,
    ) -> Self {
        Self {
            relation: relation.into(),
            dim,
            margin,
            max_abs_residual,
            tolerance,
            pass: max_abs_residual <= tolerance,
            per_state,
        }
    }
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} dim={} margin={} max|R|={:.3e} tol={:.1e} {}",
            self.relation,
            self.dim,
            self.margin,
            self.max_abs_residual,
            self.tolerance,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

/// NaN-propagating maximum.
pub(crate) fn nan_max(acc: f64, x: f64) -> f64 {
    if x.is_nan() || x > acc {
        x
    } else {
        acc
    }
}

/// Max-abs-entry report of `residual` restricted to the interior block.
pub fn interior_report(relation: impl Into<String>, residual: &CMatrix, check: Check) -> Result<ResidualReport> {
    let dim = residual.nrows();
    if residual.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: residual.ncols(),
        });
    }
    if check.margin >= dim {
        return Err(Error::DimensionMismatch {
            expected: check.margin + 1,
            found: dim,
        });
    }
    let window = dim - check.margin;
    let per_state: Vec<(usize, f64)> = (0..window)
        .map(|i| (i, (0..window).map(|j| residual[(i, j)].norm()).fold(0.0, nan_max)))
        .collect();
    let max = per_state.iter().map(|&(_, r)| r).fold(0.0, nan_max);
    Ok(ResidualReport::new(relation, dim, check.margin, max, check.tol, Some(per_state)))
}

fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

fn xp(rep: &FockRep) -> (&CMatrix, &CMatrix) {
    (
        rep.x_op().expect("position operator attached by build_xp"),
        rep.p_op().expect("momentum operator attached by build_xp"),
    )
}

/// `H(N) a- a+ - G(N) a+ a- - 1` on the interior.
pub fn verify_hg(rep: &FockRep, hg: &HgPair, check: Check) -> Result<ResidualReport> {
    let h = rep.number_fn(|n| hg.h(n));
    let g = rep.number_fn(|n| hg.g(n));
    let mp = rep.a_minus() * rep.a_plus();
    let pm = rep.a_plus() * rep.a_minus();
    let residual = &h * &mp - &g * &pm - identity(rep.dim());
    interior_report(format!("hg[{}]", hg.label()), &residual, check)
}

/// `left X P - right P X - i` on the interior; `rep` must carry `X` and `P`.
pub fn verify_deformed_commutator(
    rep: &FockRep,
    left: f64,
    right: f64,
    relation: impl Into<String>,
    check: Check,
) -> Result<ResidualReport> {
    let (x, p) = xp(rep);
    let residual = x * p * Complex64::new(left, 0.0)
        - p * x * Complex64::new(right, 0.0)
        - identity(rep.dim()) * Complex64::i();
    interior_report(relation, &residual, check)
}

/// Realization of `XP - qPX = i` by the nonstandard one-parameter oscillator.
pub fn q_ha_rep(q: f64, dim: usize) -> Result<FockRep> {
    Ok(build_xp(build_ladder(&SfModel::NonstdQ { q }, dim)?, &profile_q(q)?))
}

/// Realization of `pXP - qPX = i` by the nonstandard two-parameter oscillator.
pub fn qp_ha_rep(q: f64, p: f64, dim: usize) -> Result<FockRep> {
    Ok(build_xp(build_ladder(&SfModel::NonstdQP { q, p }, dim)?, &profile_qp(q, p)?))
}

pub fn verify_q_ha(q: f64, dim: usize, check: Check) -> Result<ResidualReport> {
    let rep = q_ha_rep(q, dim)?;
    verify_deformed_commutator(&rep, 1.0, q, format!("q-ha(q={q})"), check)
}

pub fn verify_qp_ha(q: f64, p: f64, dim: usize, check: Check) -> Result<ResidualReport> {
    let rep = qp_ha_rep(q, p, dim)?;
    verify_deformed_commutator(&rep, p, q, format!("qp-ha(q={q},p={p})"), check)
}

/// `[a-, a+] - (Phi(N+1) - Phi(N))` on the interior.
pub fn verify_commutator_sf(rep: &FockRep, check: Check) -> Result<ResidualReport> {
    let phi = rep.phi();
    let expected = rep.number_fn(|n| phi[n + 1] - phi[n]);
    let residual = rep.a_minus() * rep.a_plus() - rep.a_plus() * rep.a_minus() - expected;
    interior_report("commutator-sf", &residual, check)
}

/// Pre-factor of the Hamiltonian on the right-hand side of the two-sided relation.
#[derive(Clone)]
pub enum Mu {
    Constant(f64),
    /// Level-dependent `mu(N)`, acting as a diagonal operator.
    Levels(LevelFn),
}

impl Mu {
    pub fn at(&self, n: usize) -> f64 {
        match self {
            Mu::Constant(v) => *v,
            Mu::Levels(f) => f(n),
        }
    }

    fn level_fn(&self) -> Result<LevelFn> {
        Ok(match self {
            Mu::Constant(v) => {
                let v = require_finite("mu", *v)?;
                level_fn(move |_| v)
            }
            Mu::Levels(f) => f.clone(),
        })
    }
}

impl fmt::Debug for Mu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mu::Constant(v) => write!(f, "Mu::Constant({v})"),
            Mu::Levels(_) => f.write_str("Mu::Levels(..)"),
        }
    }
}

impl fmt::Display for Mu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mu::Constant(v) => write!(f, "{v}"),
            Mu::Levels(_) => f.write_str("mu(N)"),
        }
    }
}

/// Which form of the two-sided relation is checked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TwoSidedForm {
    /// `X~ P~ - Qb P~ X~ = i (1 + mu H)` with `X~ = sqrt(pb) X`, `P~ = sqrt(pb) P`.
    Rescaled,
    /// `qb X P - pb P X = i (1 + mu H)`.
    Displayed,
    /// The rescaled form with the sign of the `mu H` term flipped.
    FlippedMu,
    /// The rescaled form with `delta` added to the coefficient of `P X`.
    ShiftedRight(f64),
}

/// Oscillator realization of the two-sided algebra: structure function from
/// the recipe over `(H, G)` with the given `mu`, and the `Qb` coefficient profile.
pub fn two_sided_rep(qb: f64, pb: f64, mu: &Mu, dim: usize) -> Result<FockRep> {
    let hg = hg_for_two_sided_levels(qb, pb, mu.level_fn()?)?;
    let phi = sf_table_from_hg(&hg, dim)?;
    Ok(build_xp(FockRep::from_phi(phi)?, &profile_two_sided(qb, pb)?))
}

pub fn verify_two_sided(qb: f64, pb: f64, mu: &Mu, dim: usize, check: Check) -> Result<ResidualReport> {
    verify_two_sided_form(qb, pb, mu, dim, TwoSidedForm::Rescaled, check)
}

pub fn verify_two_sided_form(
    qb: f64,
    pb: f64,
    mu: &Mu,
    dim: usize,
    form: TwoSidedForm,
    check: Check,
) -> Result<ResidualReport> {
    let rep = two_sided_rep(qb, pb, mu, dim)?;
    let (x, p) = xp(&rep);
    let mu_op = rep.number_fn(|n| mu.at(n));
    let sign = if form == TwoSidedForm::FlippedMu { -1.0 } else { 1.0 };
    let rhs = (identity(dim) + mu_op * hamiltonian(&rep) * Complex64::new(sign, 0.0)) * Complex64::i();
    let (left, right) = match form {
        TwoSidedForm::Rescaled | TwoSidedForm::FlippedMu => (pb, qb),
        TwoSidedForm::Displayed => (qb, pb),
        TwoSidedForm::ShiftedRight(delta) => (pb, qb + delta),
    };
    let residual = x * p * Complex64::new(left, 0.0) - p * x * Complex64::new(right, 0.0) - rhs;
    let label = match form {
        TwoSidedForm::Rescaled => "two-sided",
        TwoSidedForm::Displayed => "two-sided-displayed",
        TwoSidedForm::FlippedMu => "two-sided-flipped-mu",
        TwoSidedForm::ShiftedRight(_) => "two-sided-shifted",
    };
    interior_report(format!("{label}(qb={qb},pb={pb},mu={mu})"), &residual, check)
}
