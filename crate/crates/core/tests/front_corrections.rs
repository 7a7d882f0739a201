use proptest::prelude::*;
use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI};

use vdwshock_core::geometry::SelfSimilarPoint;
use vdwshock_core::linear_acoustics::{kb_density, near_front_coefficient};
use vdwshock_core::nonlinear_front::*;
use vdwshock_core::thermo::{GasModel, ReferenceState};
use vdwshock_core::Error;

fn setup(b: f64) -> (GasModel, ReferenceState) {
    let gas = GasModel::new(1.4, b).unwrap();
    let reference = ReferenceState::new(1.0, 1.0, &gas).unwrap();
    (gas, reference)
}

fn btilde_sweep() -> Vec<f64> {
    (0..=14).map(|k| 0.05 * k as f64).collect()
}

#[test]
fn amplitude_mirrors_near_front_coefficient() {
    let alpha = FRAC_PI_4;
    for beta in [FRAC_PI_8, 3.0 * FRAC_PI_8, 0.1, 1.9] {
        let c = c_beta(beta, alpha).unwrap();
        let nf = near_front_coefficient(alpha + beta, alpha).unwrap();
        assert!((c + nf).abs() <= 1e-12 * nf.abs().max(1.0));
        assert_eq!(matched_amplitude(beta, alpha).unwrap(), -c);
    }
    assert!(c_beta(FRAC_PI_8, alpha).unwrap() * c_beta(3.0 * FRAC_PI_8, alpha).unwrap() < 0.0);
    assert!(matches!(c_beta(alpha, alpha), Err(Error::Singular(_))));
}

#[test]
fn geometric_classification() {
    let alpha = 0.6;
    assert_eq!(
        classify_front(0.3, alpha).unwrap().kind,
        FrontKind::Rarefaction
    );
    assert_eq!(classify_front(1.2, alpha).unwrap().kind, FrontKind::Shock);
    assert!(classify_front(alpha, alpha).is_err());
    assert!(classify_front(PI - alpha, alpha).is_err());
    let (gas, reference) = setup(0.1);
    assert!(matches!(
        rarefaction_profile(0.5, 1.0, 1.2, alpha, 0.1, &gas, &reference),
        Err(Error::Classification(_))
    ));
    assert!(matches!(
        shock_locus(1.0, 0.3, alpha, 0.1, &gas, &reference),
        Err(Error::Classification(_))
    ));
    assert!(matches!(
        shock_strength(0.3, alpha, 0.1, &gas),
        Err(Error::Classification(_))
    ));
}

/// Field built from the characteristic solution of the transport law:
/// `a = lambda(chi) / sqrt(r)` with `tau = chi + 2 k lambda(chi) sqrt(r)`.
fn characteristic_field(
    lambda: fn(f64) -> f64,
    lambda_prime: fn(f64) -> f64,
    k: f64,
) -> impl Fn(f64, f64) -> f64 {
    move |r: f64, tau: f64| {
        let mut chi = tau;
        for _ in 0..60 {
            let g = chi + 2.0 * k * lambda(chi) * r.sqrt() - tau;
            let dg = 1.0 + 2.0 * k * lambda_prime(chi) * r.sqrt();
            chi -= g / dg;
        }
        lambda(chi) / r.sqrt()
    }
}

#[test]
fn transport_residual_orders() {
    for b in [0.0, 0.4] {
        let (gas, _) = setup(b);
        let k = gas.nonlinearity();
        let steady = |r: f64, _tau: f64| 0.7 / r.sqrt();
        let wave = characteristic_field(|c: f64| 0.2 * c.sin(), |c: f64| 0.2 * c.cos(), k);
        for (r, tau) in [(1.0, 0.3), (2.5, -0.4), (0.6, 1.1)] {
            for field in [&steady as &dyn Fn(f64, f64) -> f64, &wave] {
                let res: Vec<f64> = [1e-2, 5e-3, 2.5e-3]
                    .iter()
                    .map(|&h| transport_residual(field, r, tau, h, &gas).unwrap().abs())
                    .collect();
                for w in res.windows(2) {
                    assert!((w[0] / w[1]).log2() >= 1.9, "b={b} ({r}, {tau}): {res:?}");
                }
            }
        }
        assert_eq!(
            transport_residual(|_, _| 0.0, 1.0, 0.0, 1e-3, &gas).unwrap(),
            0.0
        );
        let bad = transport_residual(|r, _| r, 1.0, 0.0, 1e-3, &gas).unwrap();
        assert!((bad - 1.5).abs() < 1e-9);
    }
    assert_eq!(GasModel::new(1.4, 0.0).unwrap().nonlinearity(), 1.2);
}

#[test]
fn phase_root_generates_transport_solution() {
    // With unit strength the shifted phase plays the role of the
    // characteristic label and -A sqrt(psi / r) solves the transport law.
    let (gas, _) = setup(0.2);
    let amp = -0.8;
    let field =
        |r: f64, phase: f64| -amp * (psi_root(phase, r, amp, 1.0, &gas).unwrap() / r).sqrt();
    let res: Vec<f64> = [1e-2, 5e-3, 2.5e-3]
        .iter()
        .map(|&h| transport_residual(field, 1.3, 2.0, h, &gas).unwrap().abs())
        .collect();
    for w in res.windows(2) {
        assert!((w[0] / w[1]).log2() >= 1.9, "{res:?}");
    }
}

#[test]
fn amplitude_conserved_along_characteristics() {
    let (gas, _) = setup(0.3);
    let k = gas.nonlinearity();
    let field = characteristic_field(
        |c: f64| 0.3 * (1.0 + c).sqrt(),
        |c: f64| 0.15 / (1.0 + c).sqrt(),
        k,
    );
    // RK4 for d tau / d r = k a(r, tau).
    let (mut r, mut tau) = (0.5, 0.4);
    let invariant = field(r, tau) * r.sqrt();
    let h = 1e-3;
    while r < 3.0 {
        let f = |r: f64, t: f64| k * field(r, t);
        let k1 = f(r, tau);
        let k2 = f(r + 0.5 * h, tau + 0.5 * h * k1);
        let k3 = f(r + 0.5 * h, tau + 0.5 * h * k2);
        let k4 = f(r + h, tau + h * k3);
        tau += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
        r += h;
        assert!((field(r, tau) * r.sqrt() - invariant).abs() < 1e-10);
    }
}

#[test]
fn psi_examples() {
    let (gas, _) = setup(0.1);
    let psi = psi_root(0.1, 0.9, 0.5, 0.1, &gas).unwrap();
    assert!(phase_residual(psi, 0.1, 0.9, 0.5, 0.1, &gas) <= 1e-12);
    assert!((psi_root(0.37, 0.6, -0.5, 0.0, &gas).unwrap() - 0.37).abs() < 1e-15);
    assert_eq!(psi_root(0.0, 1.0, -0.5, 0.1, &gas).unwrap(), 0.0);
    let fold = fold_phase(1.0, -0.5, 0.1, &gas);
    assert!(psi_root(fold * 1.01, 1.0, -0.5, 0.1, &gas).is_err());
}

#[test]
fn rarefaction_continuity_and_gradient_jump() {
    let alpha = FRAC_PI_4;
    let beta = FRAC_PI_8;
    for b in [0.0, 0.2, 0.5] {
        let (gas, reference) = setup(b);
        let t = 2.0;
        let front = reference.front_speed() * t;
        let at = |r: f64| rarefaction_profile(r, t, beta, alpha, 0.1, &gas, &reference).unwrap();
        let inside = at(front * (1.0 - 1e-14));
        let outside = at(front * (1.0 + 1e-14));
        assert!((inside.rho - outside.rho).abs() <= 1e-10);
        assert!((inside.u - outside.u).abs() <= 1e-10);
        assert_eq!(
            at(front * 1.5),
            state_two(beta, alpha, 0.1, &gas, &reference)
        );

        let h = 1e-8 * front;
        let slope_in = (at(front).rho - at(front - h).rho) / h;
        let slope_out = (at(front + 2.0 * h).rho - at(front + h).rho) / h;
        let jump = gradient_jump(front, &gas, reference.rho0).unwrap();
        assert!(
            (slope_in - slope_out - jump).abs() < 1e-5 * jump,
            "b={b}: {} vs {jump}",
            slope_in - slope_out
        );
        // Density decreases into the expansion.
        assert!(at(0.9 * front).rho < outside.rho);
    }
    let (gas, _) = setup(0.0);
    assert!((gradient_jump(1.0, &gas, 1.0).unwrap() - 1.0 / 2.4).abs() < 1e-15);
    assert!((gradient_jump(2.0, &gas, 1.0).unwrap() * 2.0 - 1.0 / 2.4).abs() < 1e-15);
}

#[test]
fn unperturbed_without_nonlinearity() {
    let (gas, reference) = setup(0.2);
    for r in [0.2, 0.7, 1.5] {
        let s = rarefaction_profile(r, 1.0, 0.3, 0.7, 0.0, &gas, &reference).unwrap();
        assert_eq!(s.rho, reference.rho0);
        assert_eq!(s.u, 0.0);
    }
}

#[test]
fn profile_matches_linear_asymptote() {
    // In the overlap just behind the front, the first-order profile equals
    // the square-root behaviour of the closed-form linear field.
    let alpha = FRAC_PI_4;
    let beta = FRAC_PI_8;
    let (gas, reference) = setup(0.25);
    let t = 1.0;
    let front = reference.front_speed() * t;
    let gap = 1e-4;
    let r = front * (1.0 - gap);
    let linear = kb_density(
        &SelfSimilarPoint::new(r / t, alpha + beta, &reference),
        alpha,
        &reference,
    )
    .unwrap()
    .rho1
        - 2.0;
    let mut errs = Vec::new();
    for eps in [1e-4, 1e-5, 1e-6] {
        let s = rarefaction_profile(r, t, beta, alpha, eps, &gas, &reference).unwrap();
        let base = state_two(beta, alpha, eps, &gas, &reference).rho;
        let scaled = (s.rho - base) / (eps * reference.rho0);
        errs.push((scaled / linear - 1.0).abs());
    }
    // Residual mismatch: O(gap) from the outer expansion plus
    // O(eps / sqrt(gap)) from the nonlinear phase shift.
    assert!(errs[2] < errs[0]);
    assert!(errs[2] < 5.0 * gap, "{errs:?}");
}

#[test]
fn hand_evaluated_shock_quantities() {
    let (gas, _) = setup(0.0);
    assert!((shock_locus_coefficient(1.0, 0.2, &gas) - 0.04 * 5.76 / 4.0).abs() < 1e-15);
    assert!((shock_strength_from_coefficient(1.0, 0.2, &gas) - 0.048).abs() < 1e-15);
    assert_eq!(shock_strength_from_coefficient(1.0, 0.0, &gas), 0.0);
    let (gas, reference) = setup(0.1);
    let r = shock_locus(1.0, 1.5, FRAC_PI_4, 0.0, &gas, &reference).unwrap();
    assert!((r - reference.front_speed()).abs() < 1e-15);
}

#[test]
fn shock_advance_equals_fold_offset() {
    let (gas, reference) = setup(0.3);
    let alpha = 0.5;
    let beta = 1.4;
    let eps = 0.1;
    let c = c_beta(beta, alpha).unwrap();
    for t in [0.5, 1.0, 4.0] {
        let front = reference.front_speed() * t;
        let advance = shock_locus(t, beta, alpha, eps, &gas, &reference).unwrap() - front;
        let fold = -fold_phase(front, c, eps, &gas);
        assert!((advance - fold).abs() <= 1e-14 * front);
    }
}

#[test]
fn covolume_trends() {
    let alpha = FRAC_PI_4;
    let beta = 3.0 * FRAC_PI_8;
    let eps = 0.1;
    let mut last: Option<(f64, f64, f64, f64)> = None;
    for b in btilde_sweep() {
        let (gas, reference) = setup(b);
        let jump = gradient_jump(1.0, &gas, 1.0).unwrap();
        let c = c_beta(beta, alpha).unwrap();
        let coef = shock_locus_coefficient(c, eps, &gas);
        let speed = shock_locus(1.0, beta, alpha, eps, &gas, &reference).unwrap();
        let strength = shock_strength(beta, alpha, eps, &gas).unwrap();
        if let Some((j0, c0, v0, s0)) = last {
            assert!(
                jump < j0 && coef > c0 && speed > v0 && strength > s0,
                "b = {b}"
            );
        }
        last = Some((jump, coef, speed, strength));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn phase_relation_holds(
        phi in 0.0f64..2.0,
        r in 0.01f64..5.0,
        amp in -3.0f64..3.0,
        eps in 0.0f64..0.3,
        b in 0.0f64..0.8,
        g in 1.05f64..2.0,
    ) {
        let gas = GasModel::new(g, b).unwrap();
        let psi = psi_root(phi, r, amp, eps, &gas).unwrap();
        prop_assert!(phase_residual(psi, phi, r, amp, eps, &gas) <= 1e-12);
    }

    #[test]
    fn shock_strength_grows_with_covolume(b in 0.0f64..0.6, db in 1e-3f64..0.2, beta in 0.9f64..2.2) {
        let alpha = 0.7;
        let lo = shock_strength(beta, alpha, 0.1, &GasModel::new(1.4, b).unwrap()).unwrap();
        let hi = shock_strength(beta, alpha, 0.1, &GasModel::new(1.4, b + db).unwrap()).unwrap();
        prop_assert!(hi > lo);
    }
}
