//! Independent reference evaluations used by the integration tests.
#![allow(dead_code)]

pub const GRID: [f64; 4] = [0.5, 0.9, 1.1, 2.0];

/// `|a - b| / max(1, |b|)`.
pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// `sum_{k<m} q^(m-1-k) p^k`.
pub fn qp_sum(m: u32, q: f64, p: f64) -> f64 {
    (0..m).map(|k| q.powi((m - 1 - k) as i32) * p.powi(k as i32)).sum()
}

/// Forward recursion `H(n) Phi(n+1) - G(n) Phi(n) = 1` from `Phi(0) = 0`.
pub fn forward_phi(h: impl Fn(usize) -> f64, g: impl Fn(usize) -> f64, n_max: usize) -> Vec<f64> {
    let mut phi = vec![0.0; n_max + 1];
    for n in 0..n_max {
        phi[n + 1] = (1.0 + g(n) * phi[n]) / h(n);
    }
    phi
}

/// One-parameter nonstandard structure function, literal form.
pub fn nonstd_q(q: f64, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let k = n as i32;
    let bracket = if q == 1.0 {
        (2 * n - 1) as f64
    } else {
        (q.powi(k) - q.powi(1 - k)) / (q - 1.0)
    };
    2.0 * q.powi(-k) / ((1.0 + q.powi(2 * k - 2)) * (1.0 + q.powi(2 * k))) * (1.0 + bracket)
}

/// Two-parameter nonstandard structure function, literal `q, p` form.
pub fn nonstd_qp(q: f64, p: f64, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let k = n as i32;
    let numer = 2.0 * q.powi(-k) * p.powi(5 * k - 3);
    let denom = (q.powi(2 * k - 2) + p.powi(2 * k - 2)) * (q.powi(2 * k) + p.powi(2 * k));
    numer / denom * (1.0 + qp_sum(2 * n as u32 - 1, q, p) / (q * p).powi(k - 1))
}

/// Common value of `H = G` in the two-sided algebra, from the defining pair.
pub fn equal_hg(qb: f64, pb: f64, n: usize) -> f64 {
    let r = qb / pb;
    let k = n as i32;
    let h0 = 0.5 * qb * r.powi(2 * k) * (1.0 + r.powi(2 * k + 2));
    let g0 = 0.5 * pb * r.powi(2 * k) * (1.0 + r.powi(2 * k - 2));
    0.5 * (h0 + g0)
}

/// Two-sided pair with constant `mu`, literal form.
pub fn two_sided_h(qb: f64, pb: f64, mu: f64, n: usize) -> f64 {
    let r = qb / pb;
    let k = n as i32;
    0.5 * qb * r.powi(2 * k) * (1.0 + r.powi(2 * k + 2)) - 0.5 * mu
}

pub fn two_sided_g(qb: f64, pb: f64, mu: f64, n: usize) -> f64 {
    let r = qb / pb;
    let k = n as i32;
    0.5 * pb * r.powi(2 * k) * (1.0 + r.powi(2 * k - 2)) + 0.5 * mu
}
