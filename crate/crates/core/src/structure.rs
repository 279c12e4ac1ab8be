//! Structure functions of deformed oscillators.
//!
//! A structure function `Phi(n)` fixes the bilinears `a+ a- = Phi(N)` and
//! `a- a+ = Phi(N+1)`. It is either taken from the closed-form catalog
//! ([`SfModel`]) or reconstructed from an H/G pair, i.e. from the defining
//! relation `H(N) a- a+ - G(N) a+ a- = 1`, by [`sf_from_hg`].

use std::fmt;
use std::sync::Arc;

use crate::error::{require_finite, require_positive, Error, HgSide, Result};
use crate::qp::{near, qp_number_unchecked, SINGULAR_THRESHOLD};

/// A real function of the number-operator eigenvalue.
pub type LevelFn = Arc<dyn Fn(usize) -> f64 + Send + Sync>;

/// Wrap a closure as a [`LevelFn`].
pub fn level_fn<F>(f: F) -> LevelFn
where
    F: Fn(usize) -> f64 + Send + Sync + 'static,
{
    Arc::new(f)
}

/// The pair `(H, G)` of the relation `H(N) a- a+ - G(N) a+ a- = 1`.
#[derive(Clone)]
pub struct HgPair {
    h: LevelFn,
    g: LevelFn,
    label: String,
}

impl HgPair {
    pub fn new(label: impl Into<String>, h: LevelFn, g: LevelFn) -> Self {
        Self {
            h,
            g,
            label: label.into(),
        }
    }

    pub fn h(&self, n: usize) -> f64 {
        (self.h)(n)
    }

    pub fn g(&self, n: usize) -> f64 {
        (self.g)(n)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for HgPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HgPair").field("label", &self.label).finish()
    }
}

/// Catalog of structure functions.
///
/// Breve parameters of the two-sided algebra are spelled `qb`, `pb`.
#[derive(Debug, Clone)]
pub enum SfModel {
    /// `Phi(n) = n`.
    Harmonic,
    /// `(q^n - 1)/(q - 1)`.
    ArikCoon { q: f64 },
    /// `(q^n - q^-n)/(q - q^-1)`.
    BiedenharnMacfarlane { q: f64 },
    /// `[n]_{q,p}`.
    ChakrabartiJagannathan { q: f64, p: f64 },
    /// `n/(1 + mu n)`.
    JannussisMu { mu: f64 },
    /// Nonstandard one-parameter oscillator realizing `XP - qPX = i`.
    NonstdQ { q: f64 },
    /// Nonstandard two-parameter oscillator realizing `pXP - qPX = i`.
    NonstdQP { q: f64, p: f64 },
    /// Two-sided algebra restricted to `H = G`.
    TwoSidedEqualHg { qb: f64, pb: f64 },
    /// Any H/G pair, evaluated through the recipe.
    CustomHg(HgPair),
}

impl SfModel {
    pub fn label(&self) -> String {
        match self {
            SfModel::Harmonic => "harmonic".into(),
            SfModel::ArikCoon { .. } => "arik-coon".into(),
            SfModel::BiedenharnMacfarlane { .. } => "biedenharn-macfarlane".into(),
            SfModel::ChakrabartiJagannathan { .. } => "chakrabarti-jagannathan".into(),
            SfModel::JannussisMu { .. } => "jannussis-mu".into(),
            SfModel::NonstdQ { .. } => "nonstd-q".into(),
            SfModel::NonstdQP { .. } => "nonstd-qp".into(),
            SfModel::TwoSidedEqualHg { .. } => "two-sided-equal".into(),
            SfModel::CustomHg(hg) => format!("custom-hg:{}", hg.label()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            SfModel::Harmonic | SfModel::CustomHg(_) => Ok(()),
            SfModel::ArikCoon { q }
            | SfModel::BiedenharnMacfarlane { q }
            | SfModel::NonstdQ { q } => require_positive("q", q).map(drop),
            SfModel::ChakrabartiJagannathan { q, p } | SfModel::NonstdQP { q, p } => {
                require_positive("q", q)?;
                require_positive("p", p).map(drop)
            }
            SfModel::JannussisMu { mu } => require_finite("mu", mu).map(drop),
            SfModel::TwoSidedEqualHg { qb, pb } => {
                require_positive("qb", qb)?;
                require_positive("pb", pb).map(drop)
            }
        }
    }

    /// The H/G pair whose recipe reproduces this model, where one is known.
    pub fn hg_pair(&self) -> Result<Option<HgPair>> {
        self.validate()?;
        Ok(match *self {
            SfModel::Harmonic => Some(HgPair::new(
                "harmonic",
                level_fn(|_| 1.0),
                level_fn(|_| 1.0),
            )),
            SfModel::ArikCoon { q } => Some(HgPair::new(
                format!("arik-coon(q={q})"),
                level_fn(|_| 1.0),
                level_fn(move |_| q),
            )),
            SfModel::BiedenharnMacfarlane { q } => Some(HgPair::new(
                format!("biedenharn-macfarlane(q={q})"),
                level_fn(move |n| q.powi(n as i32)),
                level_fn(move |n| q.powi(n as i32 + 1)),
            )),
            SfModel::ChakrabartiJagannathan { q, p } => Some(hg_for_qp_oscillator(q, p)?),
            SfModel::JannussisMu { .. } => None,
            SfModel::NonstdQ { q } => Some(hg_for_q_ha(q)?),
            SfModel::NonstdQP { q, p } => Some(hg_for_qp_ha(q, p)?),
            SfModel::TwoSidedEqualHg { qb, pb } => {
                let case = equal_hg_special_case(qb, pb)?;
                Some(HgPair::new(
                    format!("two-sided-equal(qb={qb},pb={pb})"),
                    case.hg_value.clone(),
                    case.hg_value,
                ))
            }
            SfModel::CustomHg(ref hg) => Some(hg.clone()),
        })
    }
}

fn finite(what: &'static str, level: usize, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Overflow { what, level })
    }
}

/// Evaluate `Phi(n)` for a catalog model.
pub fn sf_eval(model: &SfModel, n: usize) -> Result<f64> {
    model.validate()?;
    if n == 0 {
        return Ok(0.0);
    }
    let m = n as u32;
    let nf = n as f64;
    let value = match *model {
        SfModel::Harmonic => nf,
        SfModel::ArikCoon { q } => qp_number_unchecked(m, q, 1.0),
        SfModel::BiedenharnMacfarlane { q } => qp_number_unchecked(m, q, q.recip()),
        SfModel::ChakrabartiJagannathan { q, p } => qp_number_unchecked(m, q, p),
        SfModel::JannussisMu { mu } => {
            let denom = 1.0 + mu * nf;
            if denom <= 0.0 {
                return Err(Error::Domain {
                    name: "mu",
                    value: mu,
                    requirement: "1 + mu*n > 0 on the evaluated levels",
                });
            }
            nf / denom
        }
        SfModel::NonstdQ { q } => nonstd_q_sf(q, n)?,
        SfModel::NonstdQP { q, p } => nonstd_qp_sf(q, p, n)?,
        SfModel::TwoSidedEqualHg { qb, pb } => two_sided_equal_sf(qb, pb, n)?,
        SfModel::CustomHg(ref hg) => return sf_from_hg(hg, n),
    };
    finite("structure function", n, value)
}

/// `Phi(0..=n_max)` as a table.
pub fn sf_table(model: &SfModel, n_max: usize) -> Result<Vec<f64>> {
    (0..=n_max).map(|n| sf_eval(model, n)).collect()
}

/// Energy levels `E(n) = (Phi(n+1) + Phi(n))/2` for `n = 0..=n_max`.
pub fn spectrum(model: &SfModel, n_max: usize) -> Result<Vec<f64>> {
    let phi = sf_table(model, n_max + 1)?;
    Ok(phi.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect())
}

/// Structure function reconstructed from an H/G pair.
///
/// `Phi(n) = G(n-1)!/H(n-1)! * (1/H(0) + sum_{j=1}^{n-1} H(j-1)!/G(j)!)`,
/// evaluated as `sum_{j<n} (1/H(j)) prod_{i=j+1}^{n-1} G(i)/H(i)` with the
/// ratio product carried downward from `j = n-1`, so no factorial is ever
/// formed on its own. `Phi(0) = 0`.
pub fn sf_from_hg(hg: &HgPair, n: usize) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    let mut carry = 1.0;
    for j in (0..n).rev() {
        let h = finite("H", j, hg.h(j))?;
        if h == 0.0 {
            return Err(Error::DivisionByZero {
                side: HgSide::H,
                level: j,
            });
        }
        sum += carry / h;
        if j >= 1 {
            let g = finite("G", j, hg.g(j))?;
            if g == 0.0 {
                return Err(Error::DivisionByZero {
                    side: HgSide::G,
                    level: j,
                });
            }
            carry *= g / h;
        }
    }
    finite("recipe structure function", n, sum)
}

/// `Phi(0..=n_max)` from an H/G pair.
pub fn sf_table_from_hg(hg: &HgPair, n_max: usize) -> Result<Vec<f64>> {
    (0..=n_max).map(|n| sf_from_hg(hg, n)).collect()
}

/// H/G pair of the one-parameter algebra `XP - qPX = i`.
pub fn hg_for_q_ha(q: f64) -> Result<HgPair> {
    require_positive("q", q)?;
    Ok(HgPair::new(
        format!("q-ha(q={q})"),
        level_fn(move |n| {
            let n = n as i32;
            0.5 * q * q.powi(2 * n) * (1.0 + q.powi(2 * n + 2))
        }),
        level_fn(move |n| {
            let n = n as i32;
            0.5 * q.powi(2 * n) * (1.0 + q.powi(2 * n - 2))
        }),
    ))
}

/// H/G pair of the two-parameter algebra `pXP - qPX = i`, in terms of `Q = q/p`.
pub fn hg_for_qp_ha(q: f64, p: f64) -> Result<HgPair> {
    require_positive("q", q)?;
    require_positive("p", p)?;
    let r = q / p;
    Ok(HgPair::new(
        format!("qp-ha(q={q},p={p})"),
        level_fn(move |n| {
            let n = n as i32;
            0.5 * q * r.powi(2 * n) * (1.0 + r.powi(2 * n + 2))
        }),
        level_fn(move |n| {
            let n = n as i32;
            0.5 * p * r.powi(2 * n) * (1.0 + r.powi(2 * n - 2))
        }),
    ))
}

/// H/G pair of the two-sided algebra with a constant `mu`.
pub fn hg_for_two_sided(qb: f64, pb: f64, mu: f64) -> Result<HgPair> {
    require_finite("mu", mu)?;
    hg_for_two_sided_levels(qb, pb, level_fn(move |_| mu))
}

/// H/G pair of the two-sided algebra with `mu` given level by level.
pub fn hg_for_two_sided_levels(qb: f64, pb: f64, mu: LevelFn) -> Result<HgPair> {
    require_positive("qb", qb)?;
    require_positive("pb", pb)?;
    let r = qb / pb;
    let mu_h = mu.clone();
    Ok(HgPair::new(
        format!("two-sided(qb={qb},pb={pb})"),
        level_fn(move |n| {
            let k = n as i32;
            0.5 * qb * r.powi(2 * k) * (1.0 + r.powi(2 * k + 2)) - 0.5 * mu_h(n)
        }),
        level_fn(move |n| {
            let k = n as i32;
            0.5 * pb * r.powi(2 * k) * (1.0 + r.powi(2 * k - 2)) + 0.5 * mu(n)
        }),
    ))
}

/// H/G pair of the `q,p`-oscillator `a- a+ - q a+ a- = p^N`: `H = p^-N`, `G = q p^-N`.
pub fn hg_for_qp_oscillator(q: f64, p: f64) -> Result<HgPair> {
    require_finite("q", q)?;
    require_positive("p", p)?;
    Ok(HgPair::new(
        format!("qp-oscillator(q={q},p={p})"),
        level_fn(move |n| p.powi(-(n as i32))),
        level_fn(move |n| q * p.powi(-(n as i32))),
    ))
}

/// Level-dependent `mu(N)` forcing `H = G` in the two-sided algebra, and the common value.
#[derive(Clone)]
pub struct EqualHgCase {
    pub mu: LevelFn,
    pub hg_value: LevelFn,
}

impl fmt::Debug for EqualHgCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EqualHgCase").finish_non_exhaustive()
    }
}

pub fn equal_hg_special_case(qb: f64, pb: f64) -> Result<EqualHgCase> {
    require_positive("qb", qb)?;
    require_positive("pb", pb)?;
    if near(qb, pb, SINGULAR_THRESHOLD) {
        return Err(Error::Degenerate(
            "qb = pb makes mu vanish identically; use the Q = 1 branch",
        ));
    }
    let r = qb / pb;
    let r5 = r.powi(5);
    Ok(EqualHgCase {
        mu: level_fn(move |n| {
            let k = n as i32;
            0.5 * pb * r.powi(2 * k) * (r - 1.0 + r.powi(2 * k - 2) * (r5 - 1.0))
        }),
        hg_value: level_fn(move |n| {
            let k = n as i32;
            0.25 * pb * r.powi(2 * k) * (r + 1.0 + r.powi(2 * k - 2) * (r5 + 1.0))
        }),
    })
}

/// Closed-form structure function of the two-sided algebra with `H = G`.
///
/// Inside the singular band around `Q = 1` the limit `n/qb` is returned.
/// Elsewhere the geometric bracket `(1 - Q^(2-2n))/(1 - Q^2)` is evaluated as
/// `-Q^-2 [n-1]_{Q^-2,1}` so it stays accurate close to the band.
pub fn two_sided_equal_sf(qb: f64, pb: f64, n: usize) -> Result<f64> {
    require_positive("qb", qb)?;
    require_positive("pb", pb)?;
    if n == 0 {
        return Ok(0.0);
    }
    if near(qb, pb, SINGULAR_THRESHOLD) {
        return Ok(n as f64 / qb);
    }
    let r = qb / pb;
    let r2 = r * r;
    let r5 = r.powi(5);
    let lead = 4.0 * r2 / (pb * (1.0 + r2) * (1.0 + r * r2));
    let inv_r2 = r2.recip();
    let geometric = -inv_r2 * qp_number_unchecked(n as u32 - 1, inv_r2, 1.0);
    let tail: f64 = (1..n)
        .map(|j| (1.0 + r5) / (r2 * (1.0 + r) + r.powi(2 * j as i32) * (1.0 + r5)))
        .sum();
    let value = lead - 4.0 / (pb * (1.0 + r)) * (geometric + tail);
    finite("two-sided equal-HG structure function", n, value)
}

/// One-parameter nonstandard structure function.
fn nonstd_q_sf(q: f64, n: usize) -> Result<f64> {
    let k = n as i32;
    // (q^n - q^(1-n))/(q - 1) = q^(1-n) [2n-1]_{q,1}
    let bracket = q.powi(1 - k) * qp_number_unchecked(2 * n as u32 - 1, q, 1.0);
    let denom = (1.0 + q.powi(2 * k - 2)) * (1.0 + q.powi(2 * k));
    let numer = 2.0 * q.powi(-k);
    finite("q^n powers", n, denom)?;
    finite("q^n powers", n, numer)?;
    finite("q^n powers", n, bracket)?;
    Ok(numer / denom * (1.0 + bracket))
}

/// Two-parameter nonstandard structure function, written in `Q = q/p`.
fn nonstd_qp_sf(q: f64, p: f64, n: usize) -> Result<f64> {
    let k = n as i32;
    let r = q / p;
    let bracket = r.powi(1 - k) * qp_number_unchecked(2 * n as u32 - 1, r, 1.0);
    let denom = (1.0 + r.powi(2 * k - 2)) * (1.0 + r.powi(2 * k));
    let numer = 2.0 * r.powi(-k) / p;
    finite("Q^n powers", n, denom)?;
    finite("Q^n powers", n, numer)?;
    finite("Q^n powers", n, bracket)?;
    Ok(numer / denom * (1.0 + bracket))
}

/// The same two-parameter structure function in its explicit `q, p` form,
/// `2 q^-n p^(5n-3) / ((q^(2n-2) + p^(2n-2))(q^(2n) + p^(2n))) * (1 + [2n-1]_{q,p}/(qp)^(n-1))`.
pub fn nonstd_qp_sf_explicit(q: f64, p: f64, n: usize) -> Result<f64> {
    require_positive("q", q)?;
    require_positive("p", p)?;
    if n == 0 {
        return Ok(0.0);
    }
    let k = n as i32;
    let numer = 2.0 * q.powi(-k) * p.powi(5 * k - 3);
    let denom = (q.powi(2 * k - 2) + p.powi(2 * k - 2)) * (q.powi(2 * k) + p.powi(2 * k));
    let bracket = 1.0 + qp_number_unchecked(2 * n as u32 - 1, q, p) / (q * p).powi(k - 1);
    finite("explicit q,p form", n, numer / denom * bracket)
}
