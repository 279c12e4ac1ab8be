//! Linkage of the two-sided algebra with the `q,p`-oscillator
//! `a- a+ - q a+ a- = p^N`.
//!
//! Equating the two-sided pair `(H, G)` with `(p^-N, q p^-N)` level by level
//! forces both `mu` and `q` to depend on the level `N`. Every formula here is
//! evaluated at an integer level; `p` stays a constant parameter.
//!
//! Several of these expressions subtract nearly equal quantities once
//! `Qb = qb/pb` is far from one (the denominator of the `(q, p^N)` inversion
//! cancels down to `2 p^-N` against terms of size `Qb^(4N)`). Consistency
//! residuals are therefore measured against the running magnitude of each
//! computation: the same expression evaluated with every term replaced by its
//! absolute value. Without cancellation this is the ordinary relative error.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{require_finite, require_positive, Error, Result};
use crate::qp::qp_number;
use crate::structure::{hg_for_two_sided_levels, level_fn, sf_from_hg};
use crate::verify::{nan_max, ResidualReport};

/// Parameters of the two-sided algebra together with the target `(q, p)` at a level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkInput {
    pub qb: f64,
    pub pb: f64,
    pub q: f64,
    pub p: f64,
    pub level: u32,
}

impl LinkInput {
    pub fn new(qb: f64, pb: f64, q: f64, p: f64, level: u32) -> Result<Self> {
        require_positive("qb", qb)?;
        require_positive("pb", pb)?;
        require_positive("p", p)?;
        require_finite("q", q)?;
        if q == -1.0 {
            return Err(Error::Domain {
                name: "q",
                value: q,
                requirement: "q != -1",
            });
        }
        Ok(Self { qb, pb, q, p, level })
    }

    pub fn ratio(&self) -> f64 {
        self.qb / self.pb
    }
}

/// A value paired with its running magnitude.
#[derive(Debug, Clone, Copy)]
struct Tracked {
    v: f64,
    m: f64,
}

impl Tracked {
    fn exact(v: f64) -> Self {
        Self { v, m: v.abs() }
    }
}

impl Add for Tracked {
    type Output = Tracked;
    fn add(self, o: Tracked) -> Tracked {
        Tracked {
            v: self.v + o.v,
            m: self.m + o.m,
        }
    }
}

impl Sub for Tracked {
    type Output = Tracked;
    fn sub(self, o: Tracked) -> Tracked {
        Tracked {
            v: self.v - o.v,
            m: self.m + o.m,
        }
    }
}

impl Neg for Tracked {
    type Output = Tracked;
    fn neg(self) -> Tracked {
        Tracked { v: -self.v, m: self.m }
    }
}

impl Mul for Tracked {
    type Output = Tracked;
    fn mul(self, o: Tracked) -> Tracked {
        Tracked {
            v: self.v * o.v,
            m: self.m * o.m,
        }
    }
}

impl Div for Tracked {
    type Output = Tracked;
    fn div(self, o: Tracked) -> Tracked {
        let v = self.v / o.v;
        // first-order magnitude of a quotient
        Tracked {
            v,
            m: self.m / o.v.abs() + v.abs() * o.m / o.v.abs(),
        }
    }
}

fn t(v: f64) -> Tracked {
    Tracked::exact(v)
}

/// Residual of `a` against `b`, relative to the larger running magnitude.
fn residual(a: Tracked, b: Tracked) -> f64 {
    let scale = a.m.max(b.m);
    if scale == 0.0 {
        (a.v - b.v).abs()
    } else {
        (a.v - b.v).abs() / scale
    }
}

fn powi(x: f64, k: i64) -> f64 {
    x.powi(k as i32)
}

/// Pole test for a denominator formed from terms of magnitude `scale`.
fn pole(formula: &'static str, den: Tracked) -> Result<()> {
    if den.v == 0.0 || den.v.abs() <= 64.0 * f64::EPSILON * den.m {
        Err(Error::Pole {
            formula,
            denominator: den.v,
        })
    } else {
        Ok(())
    }
}

fn mu_42(qb: f64, pb: f64, p: f64, n: i64) -> Tracked {
    let r = qb / pb;
    t(qb * powi(r, 2 * n)) * (t(1.0) + t(powi(r, 2 * n + 2))) - t(2.0 * powi(p, -n))
}

fn mu_43(qb: f64, pb: f64, q: Tracked, p: f64, n: i64) -> Tracked {
    let r = qb / pb;
    t(2.0) * q * t(powi(p, -n)) - t(pb * powi(r, 2 * n)) * (t(1.0) + t(powi(r, 2 * n - 2)))
}

fn mu_44(qb: f64, pb: f64, q: Tracked, n: i64) -> Result<Tracked> {
    let den = t(1.0) + q;
    pole("mu from (qb, pb, q)", den)?;
    Ok(mu_44_raw(qb, pb, q, n))
}

fn mu_44_raw(qb: f64, pb: f64, q: Tracked, n: i64) -> Tracked {
    let r = qb / pb;
    let den = t(1.0) + q;
    let bracket = t(powi(r, 2 * n - 2)) * (q * t(powi(r, 5)) - t(1.0)) + q * t(r) - t(1.0);
    t(pb * powi(r, 2 * n)) * bracket / den
}

fn q_45(qb: f64, pb: f64, p: f64, n: i64) -> Tracked {
    let r = qb / pb;
    let bracket = t(1.0) + t(r) + t(powi(r, 2 * n - 2)) * (t(1.0) + t(powi(r, 5)));
    t(0.5 * pb * powi(p, n) * powi(r, 2 * n)) * bracket - t(1.0)
}

fn q_46(qb: f64, pb: f64, p: f64, mu: Tracked, n: i64) -> Tracked {
    let r = qb / pb;
    t(0.5 * powi(p, n)) * (mu + t(pb * powi(r, 2 * n)) * (t(1.0) + t(powi(r, 2 * n - 2))))
}

fn qp_47_den(qb: f64, pb: f64, mu: Tracked, n: i64) -> Tracked {
    let r = qb / pb;
    t(pb * powi(r, 2 * n + 1)) * (t(1.0) + t(powi(r, 2 * n + 2))) - mu
}

fn qp_47(qb: f64, pb: f64, mu: Tracked, n: i64) -> Result<(Tracked, Tracked)> {
    pole("(q, p^N) from (qb, pb, mu)", qp_47_den(qb, pb, mu, n))?;
    Ok(qp_47_raw(qb, pb, mu, n))
}

fn qp_47_raw(qb: f64, pb: f64, mu: Tracked, n: i64) -> (Tracked, Tracked) {
    let r = qb / pb;
    let den = qp_47_den(qb, pb, mu, n);
    let num = t(pb * powi(r, 2 * n)) * (t(1.0) + t(powi(r, 2 * n - 2))) + mu;
    (num / den, t(2.0) / den)
}

/// Rejects only an exactly vanishing denominator; cancellation is carried by the magnitude.
fn exact_pole(formula: &'static str, den: Tracked) -> Result<()> {
    if den.v == 0.0 {
        Err(Error::Pole {
            formula,
            denominator: den.v,
        })
    } else {
        Ok(())
    }
}

/// `mu = qb Qb^(2N) (1 + Qb^(2N+2)) - 2 p^-N`.
pub fn mu_via_42(input: &LinkInput) -> f64 {
    mu_42(input.qb, input.pb, input.p, input.level.into()).v
}

/// `mu = 2 q p^-N - pb Qb^(2N) (1 + Qb^(2N-2))`.
pub fn mu_via_43(input: &LinkInput) -> f64 {
    mu_43(input.qb, input.pb, t(input.q), input.p, input.level.into()).v
}

/// `mu` with `p` eliminated; pole at `q = -1`.
pub fn mu_via_44(qb: f64, pb: f64, q: f64, level: u32) -> Result<f64> {
    require_positive("qb", qb)?;
    require_positive("pb", pb)?;
    require_finite("q", q)?;
    Ok(mu_44(qb, pb, t(q), level.into())?.v)
}

/// `q = -1 + (pb/2) p^N Qb^(2N) [1 + Qb + Qb^(2N-2)(1 + Qb^5)]`, free of `mu`.
pub fn q_via_45(qb: f64, pb: f64, p: f64, level: u32) -> Result<f64> {
    require_positive("qb", qb)?;
    require_positive("pb", pb)?;
    require_positive("p", p)?;
    Ok(q_45(qb, pb, p, level.into()).v)
}

/// `q = (p^N/2) [mu + pb Qb^(2N)(1 + Qb^(2N-2))]`.
pub fn q_via_46(qb: f64, pb: f64, p: f64, mu: f64, level: u32) -> Result<f64> {
    require_positive("qb", qb)?;
    require_positive("pb", pb)?;
    require_positive("p", p)?;
    require_finite("mu", mu)?;
    Ok(q_46(qb, pb, p, t(mu), level.into()).v)
}

/// `(q, p^N)` expressed through the three parameters of the two-sided algebra.
pub fn qp_via_47(qb: f64, pb: f64, mu: f64, level: u32) -> Result<(f64, f64)> {
    require_positive("qb", qb)?;
    require_positive("pb", pb)?;
    require_finite("mu", mu)?;
    let (q, pn) = qp_47(qb, pb, t(mu), level.into())?;
    Ok((q.v, pn.v))
}

/// `mu` realizing the two-sided algebra by the Arik-Coon oscillator (`H = 1`, `G = q`).
pub fn reduced_case_arik_coon(qb: f64, pb: f64, level: u32) -> Result<f64> {
    require_positive("qb", qb)?;
    require_positive("pb", pb)?;
    let r = qb / pb;
    let n = i64::from(level);
    Ok(-2.0 + pb * powi(r, 2 * n + 1) * (1.0 + powi(r, 2 * n + 2)))
}

/// Closed forms of the reduced cases.
pub mod reduced {
    /// `Qb = 1`: `mu = 2 qb (q - 1)/(q + 1)`.
    pub fn unit_ratio_mu(qb: f64, q: f64) -> f64 {
        2.0 * qb * (q - 1.0) / (q + 1.0)
    }

    /// `Qb = 1`: `q = -1 + 2 qb p^N`.
    pub fn unit_ratio_q(qb: f64, p: f64, level: u32) -> f64 {
        -1.0 + 2.0 * qb * p.powi(level as i32)
    }

    /// `Qb = 1`: `mu = 2 (qb - p^-N)`.
    pub fn unit_ratio_mu_from_p(qb: f64, p: f64, level: u32) -> f64 {
        2.0 * (qb - p.powi(-(level as i32)))
    }

    /// `q = 1/Qb`: `mu = qb (Qb - 1)(Qb^2 + 1) Qb^(4N-2)`.
    pub fn inverse_ratio_mu(qb: f64, pb: f64, level: u32) -> f64 {
        let r = qb / pb;
        qb * (r - 1.0) * (r * r + 1.0) * r.powi(4 * level as i32 - 2)
    }
}

/// All linkage quantities at one level, with `q` from the `mu`-free formula
/// and `mu` from the `p`-explicit one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkRow {
    pub level: u32,
    pub q: f64,
    pub mu_42: f64,
    pub mu_43: f64,
    pub mu_44: f64,
    pub q_46: f64,
    pub q_47: f64,
    pub p_n_47: f64,
    /// False when the inversion to `(q, p^N)` cancels below double precision;
    /// `q_47`, `p_n_47` are then not compared.
    pub inversion_resolved: bool,
    /// Largest magnitude-relative discrepancy among the redundant formulas.
    pub residual: f64,
}

impl LinkRow {
    pub fn consistent(&self, tol: f64) -> bool {
        self.residual <= tol
    }
}

pub fn link_row(qb: f64, pb: f64, p: f64, level: u32) -> Result<LinkRow> {
    require_positive("qb", qb)?;
    require_positive("pb", pb)?;
    require_positive("p", p)?;
    let n = i64::from(level);
    let q = q_45(qb, pb, p, n);
    let mu = mu_42(qb, pb, p, n);
    let mu43 = mu_43(qb, pb, q, p, n);
    exact_pole("mu from (qb, pb, q)", t(1.0) + q)?;
    let mu44 = mu_44_raw(qb, pb, q, n);
    let q46 = q_46(qb, pb, p, mu, n);
    // the inversion back to (q, p^N) is skipped once its denominator has no significant digits left
    let inversion_resolved = pole("(q, p^N) from (qb, pb, mu)", qp_47_den(qb, pb, mu, n)).is_ok();
    let (q47, pn47) = qp_47_raw(qb, pb, mu, n);
    let mut worst = [residual(mu43, mu), residual(mu44, mu), residual(q46, q)]
        .into_iter()
        .fold(0.0, nan_max);
    if inversion_resolved {
        worst = nan_max(worst, residual(q47, q));
        worst = nan_max(worst, residual(pn47, t(powi(p, n))));
    }
    Ok(LinkRow {
        level,
        q: q.v,
        mu_42: mu.v,
        mu_43: mu43.v,
        mu_44: mu44.v,
        q_46: q46.v,
        q_47: q47.v,
        p_n_47: pn47.v,
        inversion_resolved,
        residual: worst,
    })
}

/// Outcome of closing the linkage loop on the levels `0..=max_level`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkConsistency {
    pub report: ResidualReport,
    pub rows: Vec<LinkRow>,
    /// Levels `n` whose structure function `Phi(n+1)` was not compared because
    /// some `H(j)` or `G(j)`, `j <= n`, vanishes or cancels below double precision.
    pub unresolved_phi: Vec<usize>,
}

/// Closes the algebraic loop on every level `0..=max_level` and checks the
/// structure-function consequence.
///
/// With `mu(n)` and `q(n)` tabulated per level, the two-sided pair must equal
/// `(p^-n, q(n) p^-n)`, and its recipe structure function must obey the
/// `q,p`-oscillator recursion `Phi(n+1) = p^n + q(n) Phi(n)`. When `q(n)` is
/// the same on every level, that recursion is `[n]_{q,p}` and the result is
/// compared with [`qp_number`] as well.
pub fn check_link_consistency(qb: f64, pb: f64, p: f64, max_level: u32, tol: f64) -> Result<ResidualReport> {
    Ok(link_consistency(qb, pb, p, max_level, tol)?.report)
}

/// [`check_link_consistency`] together with the per-level rows and the skipped levels.
pub fn link_consistency(qb: f64, pb: f64, p: f64, max_level: u32, tol: f64) -> Result<LinkConsistency> {
    let rows = (0..=max_level)
        .map(|n| link_row(qb, pb, p, n))
        .collect::<Result<Vec<_>>>()?;

    let mu_table: Vec<f64> = rows.iter().map(|r| r.mu_42).collect();
    let q_table: Vec<Tracked> = (0..=i64::from(max_level)).map(|n| q_45(qb, pb, p, n)).collect();
    let hg = {
        let mu_table = mu_table.clone();
        hg_for_two_sided_levels(qb, pb, level_fn(move |n| mu_table[n]))?
    };
    let r = qb / pb;
    let q_constant = rows.iter().all(|row| row.q == rows[0].q) && rows[0].q > 0.0;

    let mut per_state = Vec::with_capacity(rows.len());
    let mut unresolved_phi = Vec::new();
    // recursion Phi(n+1) = p^n + q(n) Phi(n), and the running-magnitude recipe
    let mut phi_rec = t(0.0);
    let mut h_tracked = Vec::with_capacity(rows.len());
    let mut g_tracked = Vec::with_capacity(rows.len());
    let mut resolved = true;
    for (idx, row) in rows.iter().enumerate() {
        let n = idx as i64;
        let mu = mu_42(qb, pb, p, n);
        let h = t(0.5 * qb * powi(r, 2 * n)) * (t(1.0) + t(powi(r, 2 * n + 2))) - t(0.5) * mu;
        let g = t(0.5 * pb * powi(r, 2 * n)) * (t(1.0) + t(powi(r, 2 * n - 2))) + t(0.5) * mu;
        let pn_inv = t(powi(p, -n));
        let q = q_table[idx];
        let mut worst = row.residual;
        worst = nan_max(worst, residual(t(hg.h(idx)).with_m(h.m), pn_inv));
        worst = nan_max(worst, residual(t(hg.g(idx)).with_m(g.m), q * pn_inv));
        resolved &= pole("H", h).is_ok() && (idx == 0 || pole("G", g).is_ok());
        h_tracked.push(h);
        g_tracked.push(g);

        phi_rec = t(powi(p, n)) + q * phi_rec;
        if resolved {
            let phi_recipe = sf_from_hg(&hg, idx + 1)?;
            let magnitude = recipe_magnitude(&h_tracked, &g_tracked);
            worst = nan_max(worst, residual(t(phi_recipe).with_m(magnitude), phi_rec));
            if q_constant {
                let closed = qp_number(idx as u32 + 1, rows[0].q, p)?;
                worst = nan_max(worst, residual(t(phi_recipe).with_m(magnitude), t(closed)));
            }
        } else {
            unresolved_phi.push(idx);
        }
        per_state.push((idx, worst));
    }
    let max = per_state.iter().map(|&(_, w)| w).fold(0.0, nan_max);
    let report = ResidualReport::new(
        format!("link-consistency(qb={qb},pb={pb},p={p})"),
        rows.len(),
        0,
        max,
        tol,
        Some(per_state),
    );
    Ok(LinkConsistency {
        report,
        rows,
        unresolved_phi,
    })
}

impl Tracked {
    fn with_m(self, m: f64) -> Self {
        Self { v: self.v, m: m.max(self.v.abs()) }
    }
}

/// Running magnitude of the recipe `sum_{j<n} (1/H(j)) prod_{i>j} G(i)/H(i)`.
fn recipe_magnitude(h: &[Tracked], g: &[Tracked]) -> f64 {
    let mut sum = t(0.0);
    let mut carry = t(1.0);
    for j in (0..h.len()).rev() {
        sum = sum + carry / h[j];
        if j >= 1 {
            carry = carry * (g[j] / h[j]);
        }
    }
    sum.m
}
