mod common;

use common::GRID;
use deformed_ha::link::{
    check_link_consistency, link_row, mu_via_42, mu_via_44, q_via_45, qp_via_47, reduced, reduced_case_arik_coon,
    LinkInput,
};

#[test]
fn worked_point_by_substitution() {
    // qb = 2, pb = 1, p = 1, N = 0: q = -1 + (1/2)(1 + 2 + 1/4 * 33) = 37/8
    let q = -1.0 + 0.5 * (1.0 + 2.0 + 0.25 * 33.0);
    assert_eq!(q, 37.0 / 8.0);
    // mu = qb (1 + Qb^2) - 2 = 8
    let mu = 2.0 * (1.0 + 4.0) - 2.0;
    assert_eq!(q_via_45(2.0, 1.0, 1.0, 0).unwrap(), q);
    assert_eq!(mu_via_42(&LinkInput::new(2.0, 1.0, q, 1.0, 0).unwrap()), mu);
    assert_eq!(qp_via_47(2.0, 1.0, mu, 0).unwrap(), (q, 1.0));
    assert!(check_link_consistency(2.0, 1.0, 1.0, 0, 1e-10).unwrap().pass);
}

#[test]
fn loop_closes_on_the_grid() {
    for &qb in &GRID {
        for &pb in &GRID {
            for &p in &GRID {
                let r = check_link_consistency(qb, pb, p, 8, 1e-10).unwrap();
                assert!(r.pass, "{r}");
            }
        }
    }
}

#[test]
fn mu_depends_on_the_level() {
    for &qb in &GRID {
        for &pb in &GRID {
            for &p in &GRID {
                let mu = |n| link_row(qb, pb, p, n).unwrap().mu_42;
                if qb != pb {
                    assert!((mu(1) - mu(0)).abs() > 1e-6, "qb={qb} pb={pb} p={p}");
                }
            }
        }
    }
}

#[test]
fn unit_ratio_reductions() {
    for &qb in &GRID {
        for eps in [1e-8, -1e-8] {
            let pb = qb / (1.0 + eps);
            for &p in &GRID {
                // first-order drift grows like (4N + 2) qb eps, so stay at low levels
                for level in 0..=4 {
                    let q = q_via_45(qb, pb, p, level).unwrap();
                    let q_red = reduced::unit_ratio_q(qb, p, level);
                    assert!((q - q_red).abs() <= 1e-6 * q_red.abs().max(1.0));
                    if (q + 1.0).abs() > 1e-3 {
                        let mu = mu_via_44(qb, pb, q, level).unwrap();
                        let mu_red = reduced::unit_ratio_mu(qb, q);
                        assert!((mu - mu_red).abs() <= 1e-6 * mu_red.abs().max(1.0), "qb={qb} p={p} N={level} q={q} {mu} {mu_red}");
                    }
                    let mu = mu_via_42(&LinkInput::new(qb, pb, q, p, level).unwrap());
                    let mu_red = reduced::unit_ratio_mu_from_p(qb, p, level);
                    assert!((mu - mu_red).abs() <= 1e-6 * mu_red.abs().max(1.0), "qb={qb} p={p} N={level} {mu} {mu_red}");
                }
            }
        }
    }
}

#[test]
fn inverse_ratio_and_arik_coon_reductions() {
    for &qb in &GRID {
        for &pb in &GRID {
            if qb == pb {
                continue;
            }
            let r = qb / pb;
            for level in 0..=8 {
                let mu = mu_via_44(qb, pb, r.recip(), level).unwrap();
                let want = reduced::inverse_ratio_mu(qb, pb, level);
                assert!((mu - want).abs() <= 1e-6 * want.abs().max(1.0), "qb={qb} pb={pb} N={level}");
                let ac = reduced_case_arik_coon(qb, pb, level).unwrap();
                let mu42 = mu_via_42(&LinkInput::new(qb, pb, 1.0, 1.0, level).unwrap());
                assert!((ac - mu42).abs() <= 1e-12 * ac.abs().max(1.0));
            }
        }
    }
}

#[test]
fn almost_every_level_is_resolved() {
    use deformed_ha::link::link_consistency;
    let (mut inversions, mut phis, mut total) = (0, 0, 0);
    for &qb in &GRID {
        for &pb in &GRID {
            for &p in &GRID {
                let c = link_consistency(qb, pb, p, 8, 1e-10).unwrap();
                total += c.rows.len();
                inversions += c.rows.iter().filter(|r| !r.inversion_resolved).count();
                phis += c.unresolved_phi.len();
            }
        }
    }
    assert_eq!(total, 576);
    assert!(inversions * 20 < total && phis * 20 < total, "{inversions} {phis}");
    // q(2) = -1 + 2 qb p^2 vanishes here, so G(2) = 0 and the recipe stops
    let c = link_consistency(2.0, 2.0, 0.5, 8, 1e-10).unwrap();
    assert_eq!(c.rows[2].q, 0.0);
    assert_eq!(c.unresolved_phi.first(), Some(&2));
}
