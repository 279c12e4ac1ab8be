//! Deformation parameters and q,p-number arithmetic.
//!
//! Everything here works on strictly positive real parameters. The q,p-number
//! `[m]_{q,p} = (q^m - p^m)/(q - p)` has a removable singularity on the line
//! `q = p`; near it the value is computed from a cancellation-free form and,
//! inside a relative band of `SINGULAR_THRESHOLD`, replaced by its limit.

use crate::error::{require_finite, require_positive, Result};

/// Relative width of the band around `q = p` where the analytic limit is used.
pub const SINGULAR_THRESHOLD: f64 = 1e-9;

/// Reduced Planck constant. Fixed to one throughout.
pub const HBAR: f64 = 1.0;

/// Parameter tuple shared by the one-, two- and three-parameter deformations.
///
/// The one-parameter algebra uses `q` alone (`p = 1`), the two-parameter
/// algebra uses `(q, p)` and the two-sided algebra uses `(q, p, mu)` where
/// `q`, `p` play the role of the breve parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationParams {
    q: f64,
    p: f64,
    mu: f64,
}

impl DeformationParams {
    pub fn one(q: f64) -> Result<Self> {
        Self::three(q, 1.0, 0.0)
    }

    pub fn two(q: f64, p: f64) -> Result<Self> {
        Self::three(q, p, 0.0)
    }

    pub fn three(q: f64, p: f64, mu: f64) -> Result<Self> {
        Ok(Self {
            q: require_positive("q", q)?,
            p: require_positive("p", p)?,
            mu: require_finite("mu", mu)?,
        })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn hbar(&self) -> f64 {
        HBAR
    }

    /// The ratio `Q = q/p`.
    pub fn ratio(&self) -> f64 {
        self.q / self.p
    }
}

/// True when `a` and `b` lie inside the singular band `|a - b| < thr * max(a, b)`.
pub(crate) fn near(a: f64, b: f64, threshold: f64) -> bool {
    (a - b).abs() < threshold * a.abs().max(b.abs())
}

/// The q,p-number `[m]_{q,p} = (q^m - p^m)/(q - p)`.
///
/// Symmetric in `q` and `p`; `[m]_{1,1} = m`. Inside the singular band the
/// limit `m * s^(m-1)` at the midpoint `s = (q + p)/2` is returned.
pub fn qp_number(m: u32, q: f64, p: f64) -> Result<f64> {
    require_positive("q", q)?;
    require_positive("p", p)?;
    Ok(qp_number_unchecked(m, q, p))
}

pub(crate) fn qp_number_unchecked(m: u32, q: f64, p: f64) -> f64 {
    if m == 0 {
        return 0.0;
    }
    if near(q, p, SINGULAR_THRESHOLD) {
        let mid = 0.5 * (q + p);
        return f64::from(m) * mid.powi(m as i32 - 1);
    }
    // log(q/p) without forming the ratio's rounding error when q ~ p
    let t = ((q - p) / p).ln_1p();
    if t.abs() < 0.5 {
        let m_f = f64::from(m);
        p.powi(m as i32 - 1) * (m_f * t).exp_m1() / t.exp_m1()
    } else {
        (q.powi(m as i32) - p.powi(m as i32)) / (q - p)
    }
}

/// Generalized factorial `F(n)! = F(n) F(n-1) ... F(1)`, with `F(0)! = 1`.
pub fn generalized_factorial<F>(f: F, n: usize) -> f64
where
    F: Fn(usize) -> f64,
{
    (1..=n).map(f).product()
}
