//! Truncated Fock-space matrices for deformed oscillators.
//!
//! Functions of the number operator are realized as diagonal matrices
//! `diag(F(0), ..., F(dim-1))` multiplying from the left, which reproduces
//! `F(N) a± = a± F(N±1)` by ordinary matrix multiplication.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{require_positive, Error, Result};
use crate::structure::{level_fn, sf_table, LevelFn, SfModel};

pub type CMatrix = DMatrix<Complex64>;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// `diag(f(0), ..., f(dim-1))`.
pub fn diag_matrix<F: Fn(usize) -> f64>(dim: usize, f: F) -> CMatrix {
    CMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            Complex64::new(f(i), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Largest entry modulus.
pub fn max_modulus(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, |acc, x| if x.is_nan() || x > acc { x } else { acc })
}

/// Coefficient functions dressing the ladder operators in
/// `X = f(N) a- + g(N) a+` and `P = i (k(N) a+ - h(N) a-)`.
#[derive(Clone)]
pub struct CoefficientProfile {
    pub f: LevelFn,
    pub g: LevelFn,
    pub h: LevelFn,
    pub k: LevelFn,
    /// Deformation ratio entering the constraints
    /// `f(N+1)/f(N) = r^-1 h(N+1)/h(N)` and `g(N-1)/g(N) = r^-1 k(N-1)/k(N)`.
    pub ratio: f64,
    pub label: String,
}

impl fmt::Debug for CoefficientProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientProfile")
            .field("label", &self.label)
            .field("ratio", &self.ratio)
            .finish()
    }
}

impl CoefficientProfile {
    fn geometric(ratio: f64, label: String) -> Self {
        let single = move |n: usize| FRAC_1_SQRT_2 * ratio.powi(n as i32);
        let double = move |n: usize| FRAC_1_SQRT_2 * ratio.powi(2 * n as i32);
        Self {
            f: level_fn(single),
            k: level_fn(single),
            g: level_fn(double),
            h: level_fn(double),
            ratio,
            label,
        }
    }

    /// Largest relative violation of the two ratio constraints on levels `1..=n_max`.
    pub fn ratio_constraint_residual(&self, n_max: usize) -> f64 {
        let inv = self.ratio.recip();
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
        (0..n_max)
            .flat_map(|n| {
                let up = rel(
                    (self.f)(n + 1) / (self.f)(n),
                    inv * (self.h)(n + 1) / (self.h)(n),
                );
                let down = rel(
                    (self.g)(n) / (self.g)(n + 1),
                    inv * (self.k)(n) / (self.k)(n + 1),
                );
                [up, down]
            })
            .fold(0.0, f64::max)
    }
}

/// Profile of the one-parameter algebra: `f = k = q^N/sqrt2`, `h = g = q^(2N)/sqrt2`.
pub fn profile_q(q: f64) -> Result<CoefficientProfile> {
    require_positive("q", q)?;
    Ok(CoefficientProfile::geometric(q, format!("q(q={q})")))
}

/// Profile of the two-parameter algebra, in `Q = q/p`.
pub fn profile_qp(q: f64, p: f64) -> Result<CoefficientProfile> {
    require_positive("q", q)?;
    require_positive("p", p)?;
    Ok(CoefficientProfile::geometric(q / p, format!("qp(q={q},p={p})")))
}

/// Profile of the two-sided algebra, in `Q = qb/pb`.
pub fn profile_two_sided(qb: f64, pb: f64) -> Result<CoefficientProfile> {
    require_positive("qb", qb)?;
    require_positive("pb", pb)?;
    Ok(CoefficientProfile::geometric(qb / pb, format!("two-sided(qb={qb},pb={pb})")))
}

/// Matrix realization on the levels `|0>, ..., |dim-1>`.
#[derive(Debug, Clone)]
pub struct FockRep {
    dim: usize,
    phi: Vec<f64>,
    a_plus: CMatrix,
    a_minus: CMatrix,
    n_op: CMatrix,
    x_op: Option<CMatrix>,
    p_op: Option<CMatrix>,
}

impl FockRep {
    /// Build from a table `Phi(0..=dim)`; the entry `Phi(dim)` is only used by
    /// the Hamiltonian.
    pub fn from_phi(phi: Vec<f64>) -> Result<Self> {
        if phi.len() < 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: phi.len(),
            });
        }
        if let Some((level, &value)) = phi.iter().enumerate().find(|(_, v)| !(**v >= 0.0)) {
            return Err(Error::NegativePhi { level, value });
        }
        let dim = phi.len() - 1;
        let zero = Complex64::new(0.0, 0.0);
        // <n+1| a+ |n> = sqrt(Phi(n+1))
        let a_plus = CMatrix::from_fn(dim, dim, |i, j| {
            if i == j + 1 {
                Complex64::new(phi[i].sqrt(), 0.0)
            } else {
                zero
            }
        });
        let a_minus = a_plus.transpose();
        let n_op = diag_matrix(dim, |n| n as f64);
        Ok(Self {
            dim,
            phi,
            a_plus,
            a_minus,
            n_op,
            x_op: None,
            p_op: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Phi(0..=dim)`.
    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub fn a_plus(&self) -> &CMatrix {
        &self.a_plus
    }

    pub fn a_minus(&self) -> &CMatrix {
        &self.a_minus
    }

    pub fn n_op(&self) -> &CMatrix {
        &self.n_op
    }

    pub fn x_op(&self) -> Option<&CMatrix> {
        self.x_op.as_ref()
    }

    pub fn p_op(&self) -> Option<&CMatrix> {
        self.p_op.as_ref()
    }

    /// `diag(F(0), ..., F(dim-1))` on this space.
    pub fn number_fn<F: Fn(usize) -> f64>(&self, f: F) -> CMatrix {
        diag_matrix(self.dim, f)
    }
}

pub fn build_ladder(model: &SfModel, dim: usize) -> Result<FockRep> {
    if dim < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: dim,
        });
    }
    FockRep::from_phi(sf_table(model, dim)?)
}

/// Attach `X = f(N) a- + g(N) a+` and `P = i (k(N) a+ - h(N) a-)`.
pub fn build_xp(mut rep: FockRep, profile: &CoefficientProfile) -> FockRep {
    let f = rep.number_fn(|n| (profile.f)(n));
    let g = rep.number_fn(|n| (profile.g)(n));
    let h = rep.number_fn(|n| (profile.h)(n));
    let k = rep.number_fn(|n| (profile.k)(n));
    let x = &f * &rep.a_minus + &g * &rep.a_plus;
    let p = (&k * &rep.a_plus - &h * &rep.a_minus) * Complex64::i();
    rep.x_op = Some(x);
    rep.p_op = Some(p);
    rep
}

/// `diag((Phi(n+1) + Phi(n))/2)`, taken from the table rather than from the
/// truncated product `a- a+`, whose last diagonal entry is wrong.
pub fn hamiltonian(rep: &FockRep) -> CMatrix {
    rep.number_fn(|n| 0.5 * (rep.phi[n + 1] + rep.phi[n]))
}
