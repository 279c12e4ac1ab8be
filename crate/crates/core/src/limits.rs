//! Reduction and classical-limit checks across the catalog.
//!
//! Each check reports the largest relative deviation between a deformed
//! quantity and its limit. Checks at the limit point itself run over levels
//! `0..=EXACT_LEVELS`; checks at parameters offset by `OFFSET` run over
//! `0..=OFFSET_LEVELS`, where the first-order drift `~ n * OFFSET` stays well
//! below the default tolerance.

use num_complex::Complex64;

use crate::error::Result;
use crate::fock::{build_ladder, build_xp, max_modulus, profile_q, CMatrix};
use crate::structure::{
    hg_for_q_ha, hg_for_qp_ha, hg_for_two_sided, sf_eval, sf_from_hg, spectrum, two_sided_equal_sf, SfModel,
};
use crate::verify::nan_max;

pub const OFFSET: f64 = 1e-8;
pub const OFFSET_LEVELS: usize = 10;
pub const EXACT_LEVELS: usize = 30;
pub const DEFAULT_LIMIT_TOLERANCE: f64 = 1e-6;
pub const GRID: [f64; 4] = [0.5, 0.9, 1.1, 2.0];

#[derive(Debug, Clone, PartialEq)]
pub struct LimitCheck {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn matrix_rel(a: &CMatrix, b: &CMatrix) -> f64 {
    let scale = max_modulus(a).max(max_modulus(b));
    if scale == 0.0 {
        0.0
    } else {
        max_modulus(&(a - b)) / scale
    }
}

fn offsets(x: f64) -> [f64; 2] {
    [x * (1.0 + OFFSET), x * (1.0 - OFFSET)]
}

fn max_over<I: IntoIterator<Item = Result<f64>>>(it: I) -> Result<f64> {
    it.into_iter().try_fold(0.0, |acc, d| Ok(nan_max(acc, d?)))
}

fn sf_deviation(model: &SfModel, levels: usize, target: impl Fn(usize) -> f64) -> Result<f64> {
    max_over((0..=levels).map(|n| Ok(rel(sf_eval(model, n)?, target(n)))))
}

/// `p -> 1`: the two-parameter algebra reduces to the one-parameter one.
pub fn p_to_one() -> Result<f64> {
    let mut dev = 0.0;
    for &q in &GRID {
        let q_model = SfModel::NonstdQ { q };
        let at_one = SfModel::NonstdQP { q, p: 1.0 };
        for n in 0..=EXACT_LEVELS {
            dev = nan_max(dev, rel(sf_eval(&at_one, n)?, sf_eval(&q_model, n)?));
        }
        for p in offsets(1.0) {
            let m = SfModel::NonstdQP { q, p };
            for n in 0..=OFFSET_LEVELS {
                dev = nan_max(dev, rel(sf_eval(&m, n)?, sf_eval(&q_model, n)?));
            }
        }
        let (a, b) = (hg_for_qp_ha(q, 1.0)?, hg_for_q_ha(q)?);
        for n in 0..=EXACT_LEVELS {
            dev = nan_max(dev, rel(a.h(n), b.h(n)));
            dev = nan_max(dev, rel(a.g(n), b.g(n)));
        }
    }
    Ok(dev)
}

/// `q = p`: `Phi(n) = n/q`.
pub fn q_equals_p() -> Result<f64> {
    let mut dev = 0.0;
    for &q in &GRID {
        let target = |n: usize| n as f64 / q;
        dev = nan_max(dev, sf_deviation(&SfModel::NonstdQP { q, p: q }, EXACT_LEVELS, target)?);
        for p in offsets(q) {
            dev = nan_max(dev, sf_deviation(&SfModel::NonstdQP { q, p }, OFFSET_LEVELS, target)?);
        }
    }
    Ok(dev)
}

/// `q = p`: equidistant spectrum with spacing `1/q`.
pub fn q_equals_p_spacing() -> Result<f64> {
    let mut dev = 0.0;
    for &q in &GRID {
        let e = spectrum(&SfModel::NonstdQP { q, p: q }, EXACT_LEVELS)?;
        for w in e.windows(2) {
            dev = nan_max(dev, rel(w[1] - w[0], 1.0 / q));
        }
    }
    Ok(dev)
}

/// `Qb -> 1` with `mu = 0`: `Phi(n) = n/qb`, from the closed form and from the recipe.
pub fn unit_ratio_two_sided() -> Result<f64> {
    let mut dev = 0.0;
    for &qb in &GRID {
        let target = |n: usize| n as f64 / qb;
        let hg = hg_for_two_sided(qb, qb, 0.0)?;
        for n in 0..=EXACT_LEVELS {
            dev = nan_max(dev, rel(two_sided_equal_sf(qb, qb, n)?, target(n)));
            dev = nan_max(dev, rel(sf_from_hg(&hg, n)?, target(n)));
        }
        for pb in offsets(qb) {
            for n in 0..=OFFSET_LEVELS {
                dev = nan_max(dev, rel(two_sided_equal_sf(qb, pb, n)?, target(n)));
            }
        }
    }
    Ok(dev)
}

/// `mu = 0`: the two-sided pair is the two-parameter pair.
pub fn mu_zero() -> Result<f64> {
    let mut dev = 0.0;
    for &qb in &GRID {
        for &pb in &GRID {
            let (a, b) = (hg_for_two_sided(qb, pb, 0.0)?, hg_for_qp_ha(qb, pb)?);
            for n in 0..=EXACT_LEVELS {
                dev = nan_max(dev, rel(a.h(n), b.h(n)));
                dev = nan_max(dev, rel(a.g(n), b.g(n)));
            }
        }
    }
    Ok(dev)
}

/// `q -> 1`: the nonstandard oscillator becomes the ordinary one.
pub fn q_to_one_structure() -> Result<f64> {
    let target = |n: usize| n as f64;
    let mut dev = sf_deviation(&SfModel::NonstdQ { q: 1.0 }, EXACT_LEVELS, target)?;
    for q in offsets(1.0) {
        dev = nan_max(dev, sf_deviation(&SfModel::NonstdQ { q }, OFFSET_LEVELS, target)?);
    }
    Ok(dev)
}

/// `q -> 1`: `X = (a+ + a-)/sqrt2`, `P = i(a+ - a-)/sqrt2`.
pub fn q_to_one_position_momentum() -> Result<f64> {
    let dim = OFFSET_LEVELS + 1;
    let classical = build_ladder(&SfModel::Harmonic, dim)?;
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let x_ref = (classical.a_plus() + classical.a_minus()) * s;
    let p_ref = (classical.a_plus() - classical.a_minus()) * (Complex64::i() * s);
    let mut dev = 0.0;
    for q in [1.0, 1.0 + OFFSET, 1.0 - OFFSET] {
        let rep = build_xp(build_ladder(&SfModel::NonstdQ { q }, dim)?, &profile_q(q)?);
        dev = nan_max(dev, matrix_rel(rep.x_op().expect("built"), &x_ref));
        dev = nan_max(dev, matrix_rel(rep.p_op().expect("built"), &p_ref));
    }
    Ok(dev)
}

/// Every catalog variant tends to `Phi(n) = n` as its parameters tend to one.
pub fn catalog_classical() -> Result<f64> {
    let target = |n: usize| n as f64;
    let mut dev = 0.0;
    for x in offsets(1.0) {
        let y = 2.0 - x;
        let models = [
            SfModel::ArikCoon { q: x },
            SfModel::BiedenharnMacfarlane { q: x },
            SfModel::ChakrabartiJagannathan { q: x, p: y },
            SfModel::ChakrabartiJagannathan { q: x, p: x },
            SfModel::JannussisMu { mu: x - 1.0 },
            SfModel::NonstdQ { q: x },
            SfModel::NonstdQP { q: x, p: y },
            SfModel::TwoSidedEqualHg { qb: x, pb: y },
            SfModel::TwoSidedEqualHg { qb: x, pb: 1.0 },
        ];
        for m in &models {
            dev = nan_max(dev, sf_deviation(m, OFFSET_LEVELS, target)?);
        }
    }
    Ok(dev)
}

type LimitFn = fn() -> Result<f64>;

const SUITE: [(&str, LimitFn); 8] = [
    ("p->1 reduces the q,p-deformed algebra to the q-deformed one", p_to_one),
    ("q=p gives Phi(n)=n/q", q_equals_p),
    ("q=p gives energy spacing 1/q", q_equals_p_spacing),
    ("Qb->1 with mu=0 gives Phi(n)=n/qb", unit_ratio_two_sided),
    ("mu=0 reduces the two-sided pair to the q,p pair", mu_zero),
    ("q->1 gives Phi(n)=n", q_to_one_structure),
    ("q->1 gives the classical X and P", q_to_one_position_momentum),
    ("catalog variants tend to Phi(n)=n", catalog_classical),
];

/// Run the whole suite against one tolerance.
pub fn run_limit_suite(tolerance: f64) -> Result<Vec<LimitCheck>> {
    SUITE
        .iter()
        .map(|&(name, f)| {
            let max_deviation = f()?;
            Ok(LimitCheck {
                name,
                max_deviation,
                tolerance,
                pass: max_deviation <= tolerance,
            })
        })
        .collect()
}
