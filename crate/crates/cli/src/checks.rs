//! Verification report: one entry per release criterion plus the measured
//! residuals of relations known not to hold exactly.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use vdwshock_core::fixtures::reference_thresholds;
use vdwshock_core::geometry::{reflected_line, SelfSimilarPoint};
use vdwshock_core::inner_singular::*;
use vdwshock_core::linear_acoustics::{degenerate_elliptic_residual, kb_density};
use vdwshock_core::nonlinear_front::*;
use vdwshock_core::regular_reflection::*;
use vdwshock_core::shock_relations::{
    admissible_beta_bounds, incident_oblique, is_admissible, reflected_oblique, IncidentShockInput,
    ReflectedShockInput,
};
use vdwshock_core::thermo::{GasModel, ReferenceState};

use crate::commands::{self, Command};
use crate::config::RunConfig;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    DiscrepancyDocumented,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    pub measured: f64,
    pub tolerance: f64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub gamma: f64,
    pub btilde: f64,
    pub alpha_deg: f64,
    pub epsilon: f64,
    pub checks: Vec<CheckEntry>,
    pub failures: usize,
}

fn gated(name: &str, measured: f64, tolerance: f64, note: impl Into<String>) -> CheckEntry {
    CheckEntry {
        name: name.into(),
        status: if measured <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        },
        measured,
        tolerance,
        note: note.into(),
    }
}

fn documented(name: &str, measured: f64, tolerance: f64, note: impl Into<String>) -> CheckEntry {
    CheckEntry {
        name: name.into(),
        status: Status::DiscrepancyDocumented,
        measured,
        tolerance,
        note: note.into(),
    }
}

fn gas(g: f64, b: f64) -> GasModel {
    GasModel {
        gamma: g,
        btilde: b,
    }
}

/// Worst `residual / tolerance` over the admissible grid.
fn cubic_self_consistency() -> CheckEntry {
    let mut worst: f64 = 0.0;
    let mut cells = 0;
    for g in [1.1, 1.4, 5.0 / 3.0] {
        for jb in 0..=14 {
            let b = 0.05 * jb as f64;
            for ib in 1..=29 {
                let beta = 1.0 + 0.1 * ib as f64;
                let gm = gas(g, b);
                if !is_admissible(&gm, beta) {
                    continue;
                }
                cells += 1;
                let c = cubic_coefficients(beta, &gm);
                let x = cardano_root(&c);
                let f_ratio = c.eval(x).abs() / (1e-9 * c.h3 * x.powi(3));
                let root_ratio = (x - bisection_root(&c)).abs() / 1e-10;
                let f0 = detachment_function(beta, 0.0, &gm);
                let sum = c.h0 + c.h1 + c.h2 + c.h3;
                let sum_ratio = (sum - f0).abs() / (1e-12 * f0.abs().max(sum.abs()));
                worst = worst.max(f_ratio).max(root_ratio).max(sum_ratio);
            }
        }
    }
    gated(
        "1_cubic_self_consistency",
        worst,
        1.0,
        format!("worst residual-to-tolerance ratio over {cells} admissible cells"),
    )
}

fn table_trends() -> Vec<CheckEntry> {
    let (betas, btildes) = default_table_axes();
    let reference = reference_thresholds();
    let grid = match table_generate(&reference.beta_i, &reference.btilde, 1.4) {
        Ok(g) => g,
        Err(e) => return vec![gated("2_table_trends", f64::INFINITY, 0.0, e.to_string())],
    };
    debug_assert_eq!(
        (betas.len(), btildes.len()),
        (reference.beta_i.len(), reference.btilde.len())
    );
    let mut violations = Vec::new();
    for (k, b) in reference.btilde.iter().enumerate() {
        let col: Vec<(f64, f64)> = grid
            .iter()
            .zip(&reference.beta_i)
            .filter_map(|(row, beta)| row[k].j.map(|j| (*beta, j)))
            .collect();
        for w in col.windows(2) {
            if w[1].1 <= w[0].1 {
                violations.push(format!("beta_i={} at btilde={b}", w[1].0));
            }
        }
    }
    for (row, beta) in grid.iter().zip(&reference.beta_i) {
        let vals: Vec<f64> = row.iter().filter_map(|c| c.j).collect();
        if vals.windows(2).any(|w| w[1] <= w[0]) {
            violations.push(format!("row beta_i={beta}"));
        }
    }
    let mut blank_mismatch = 0;
    let (mut worst_true, mut worst_unshifted): (f64, f64) = (0.0, 0.0);
    for (i, row) in grid.iter().enumerate() {
        for (k, cell) in row.iter().enumerate() {
            if cell.admissible == reference.is_blank(i, k) {
                blank_mismatch += 1;
            }
            if let (Some(j), Some(r)) = (cell.j, reference.cells[i][k]) {
                worst_true = worst_true.max((j - r).abs() / r.abs());
                let u = unshifted_threshold(reference.beta_i[i], &gas(1.4, reference.btilde[k]))
                    .unwrap_or(f64::NAN);
                worst_unshifted = worst_unshifted.max((u - r).abs() / r.abs());
            }
        }
    }
    if blank_mismatch > 0 {
        violations.push(format!("{blank_mismatch} blank-pattern mismatches"));
    }
    let note = if violations.is_empty() {
        "monotone in both axes; blank pattern identical".to_string()
    } else {
        format!("not monotone: {}", violations.join("; "))
    };
    vec![
        gated("2_table_trends", violations.len() as f64, 0.0, note),
        documented(
            "2a_reference_absolute_values",
            worst_true,
            0.0,
            "largest relative gap between the zeros of F and the stored grid",
        ),
        documented(
            "2b_reference_unshifted_root",
            worst_unshifted,
            2e-4,
            "stored grid agrees with the depressed-cubic root taken without its shift",
        ),
    ]
}

fn branch_limits() -> CheckEntry {
    let gm = gas(1.4, 0.2);
    let mut worst: f64 = 0.0;
    for deg in [15.0f64, 30.0, 45.0, 60.0] {
        let t = deg.to_radians().tan();
        match tan_phi_r_branches(1.0 + 1e-8, t, &gm) {
            Ok(br) => worst = worst.max((br.minus + t).abs()).max(br.plus.abs()),
            Err(_) => worst = f64::INFINITY,
        }
    }
    gated(
        "3_branch_limits",
        worst,
        1e-6,
        "largest branch offset at beta_i = 1 + 1e-8",
    )
}

/// Most negative zero of `delta_i + delta_r` over `phi_r in (-pi/2, 0)`.
fn wall_scan(beta_i: f64, t_i: f64, gm: &GasModel) -> Option<f64> {
    let delta_i = ((beta_i - 1.0) * t_i / (1.0 + beta_i * t_i * t_i)).atan();
    let residual = |phi: f64| {
        let t = phi.tan();
        let br = beta_r_from_angles(beta_i, t_i, t, gm).ok()?;
        Some(delta_i + ((br - 1.0) * t / (1.0 + br * t * t)).atan())
    };
    let n = 20000;
    let lo = -FRAC_PI_2 + 1e-7;
    let step = (FRAC_PI_2 - 2e-7) / n as f64;
    let mut prev = (lo, residual(lo)?);
    for k in 1..=n {
        let x = lo + k as f64 * step;
        let fx = residual(x)?;
        if prev.1.signum() != fx.signum() {
            let (mut a, mut b) = (prev.0, x);
            for _ in 0..100 {
                let m = 0.5 * (a + b);
                if residual(m)?.signum() == prev.1.signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            return Some((0.5 * (a + b)).tan());
        }
        prev = (x, fx);
    }
    None
}

fn reflection_solve() -> CheckEntry {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < 200 {
        let g = rng.gen_range(1.1..5.0 / 3.0);
        let b = rng.gen_range(0.0..0.5);
        let gm = gas(g, b);
        let Ok((_, upper)) = admissible_beta_bounds(&gm, None) else {
            continue;
        };
        let beta = 1.0 + rng.gen_range(0.02..0.95) * (upper.min(4.0) - 1.0);
        let Ok(report) = criterion(beta, &gm) else {
            continue;
        };
        let Some(j) = report.j else { continue };
        let t_i = (j * (1.0 + rng.gen_range(0.05..1.0))).sqrt();
        done += 1;
        let sol = match solve_regular_reflection(&IncidentShockInput::from_tan(beta, t_i), 0.5, &gm)
        {
            Ok(s) => s,
            Err(_) => {
                worst = f64::INFINITY;
                continue;
            }
        };
        let wall = (sol.delta_i + sol.delta_r).abs() / 1e-10;
        let scan = wall_scan(beta, t_i, &gm).map_or(f64::INFINITY, |s| {
            (s - sol.tan_phi_r).abs() / (1e-9 * (1.0 + s.abs()))
        });
        let inc =
            incident_oblique(&IncidentShockInput::from_tan(beta, t_i), &gm).map(|j| j.m_down_sq);
        let refl = ReflectedShockInput {
            beta_r: sol.beta_r,
            tan_phi_r: sol.tan_phi_r,
        };
        let ahead = reflected_oblique(beta, &refl, &gm).map(|j| j.m_up_sq);
        let mach = match (inc, ahead) {
            (Ok(m), Ok(a)) => (m - a).abs() / (1e-10 * m),
            _ => f64::INFINITY,
        };
        worst = worst.max(wall).max(scan).max(mach);
    }
    gated(
        "4_regular_reflection_solve",
        worst,
        1.0,
        "worst ratio over 200 samples of wall residual (1e-10), scan agreement (1e-9) and Mach balance (1e-10)",
    )
}

fn geometry_incidence() -> CheckEntry {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa1fa);
    let mut worst: f64 = 0.0;
    let mut monotone = true;
    for _ in 0..50 {
        let alpha = rng.gen_range(0.05..1.5);
        let g = rng.gen_range(1.05..2.0);
        let b = rng.gen_range(0.01..0.8);
        let r = ReferenceState::new(1.0, 1.0, &gas(g, b)).expect("valid sample");
        let (Ok(wall), Ok(merge)) = (
            reflected_line(alpha, alpha, &r),
            reflected_line(2.0 * alpha, alpha, &r),
        ) else {
            return gated(
                "5_geometry_incidence",
                f64::INFINITY,
                1e-12,
                "reflected line undefined",
            );
        };
        worst = worst
            .max((wall * alpha.cos() / r.a0 - 1.0).abs())
            .max((merge / r.a0 - 1.0).abs());
        let theta = alpha * rng.gen_range(1.0..2.0);
        let h = 1e-6;
        let at = |bb: f64| {
            let rr = ReferenceState::new(1.0, 1.0, &gas(g, bb)).expect("valid sample");
            reflected_line(theta, alpha, &rr).unwrap_or(f64::NAN)
        };
        monotone &= at(b + h) > at(b - h);
    }
    let measured = if monotone { worst } else { f64::INFINITY };
    gated(
        "5_geometry_incidence",
        measured,
        1e-12,
        "worst relative error of the reflected line at A and B over 50 samples; outward drift with btilde",
    )
}

fn linear_field() -> CheckEntry {
    let mut worst: f64 = 0.0;
    let r = ReferenceState::new(1.0, 1.0, &gas(1.4, 0.2)).expect("valid gas");
    let ideal = ReferenceState::new(1.0, 1.0, &gas(1.4, 0.0)).expect("valid gas");
    let rho = |x: f64, th: f64, a: f64, rf: &ReferenceState| {
        kb_density(&SelfSimilarPoint::from_scaled(x, th, rf), a, rf).map_or(f64::NAN, |s| s.rho1)
    };
    let s_arc = 1.0 - 1e-6;
    let x_arc = 2.0 * s_arc / (1.0 + s_arc * s_arc);
    for deg in [30.0f64, 45.0, 60.0] {
        let a = deg.to_radians();
        worst = worst.max((rho(2e-8, 0.5 * (a + PI), a, &r) - PI / (PI - a)).abs() / 1e-6);
        worst = worst.max((rho(x_arc, 1.3 * a, a, &r) - 2.0).abs() / 1e-3);
        worst = worst.max((rho(x_arc, 0.5 * (2.0 * a + PI), a, &r) - 1.0).abs() / 1e-3);
        for i in 1..10 {
            for j in 0..=10 {
                let (x, th) = (0.1 * i as f64, a + (PI - a) * j as f64 / 10.0);
                worst = worst
                    .max((rho(x, th, a, &r) - rho(x, th, a, &ideal)).abs() / (4.0 * f64::EPSILON));
            }
        }
    }
    let a = std::f64::consts::FRAC_PI_4;
    let k = r.kappa0;
    let field = |xi: f64, th: f64| rho(xi / k, th, a, &r);
    for (x, th) in [
        (0.5, 0.5 * (a + PI)),
        (0.3, 1.2),
        (0.6, 2.2),
        (0.7, 2.8),
        (0.4, 1.9),
    ] {
        let res: Vec<f64> = [1e-2, 5e-3, 2.5e-3]
            .iter()
            .map(|&h| {
                degenerate_elliptic_residual(field, x * k, th, h, a, k).map_or(f64::NAN, f64::abs)
            })
            .collect();
        for w in res.windows(2) {
            let order = (w[0] / w[1]).log2();
            if !(order >= 1.9) {
                worst = f64::INFINITY;
            }
        }
    }
    gated(
        "6_linear_field",
        worst,
        1.0,
        "worst ratio of centre, arc and ideal-reduction errors to tolerance; residual order >= 1.9",
    )
}

fn front_corrections(eps: f64) -> CheckEntry {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf207);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let gm = gas(rng.gen_range(1.05..2.0), rng.gen_range(0.0..0.8));
        let (phi, r, amp, e) = (
            rng.gen_range(0.0..2.0),
            rng.gen_range(0.01..5.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(0.0..0.3),
        );
        let res = psi_root(phi, r, amp, e, &gm).map_or(f64::INFINITY, |psi| {
            phase_residual(psi, phi, r, amp, e, &gm)
        });
        worst = worst.max(res / 1e-12);
    }
    let (alpha, beta) = (
        std::f64::consts::FRAC_PI_4,
        3.0 * std::f64::consts::FRAC_PI_8,
    );
    let mut prev: Option<[f64; 3]> = None;
    for k in 0..=14 {
        let gm = gas(1.4, 0.05 * k as f64);
        let c = c_beta(beta, alpha).unwrap_or(f64::NAN);
        let now = [
            gradient_jump(1.0, &gm, 1.0).unwrap_or(f64::NAN),
            shock_locus_coefficient(c, eps, &gm),
            shock_strength(beta, alpha, eps, &gm).unwrap_or(f64::NAN),
        ];
        if let Some(p) = prev {
            if !(now[0] < p[0] && now[1] > p[1] && now[2] > p[2]) {
                worst = f64::INFINITY;
            }
        }
        prev = Some(now);
    }
    let gm = gas(1.4, 0.2);
    let r = ReferenceState::new(1.0, 1.0, &gm).expect("valid gas");
    let front = r.front_speed();
    let at = |x: f64| {
        rarefaction_profile(x, 1.0, std::f64::consts::FRAC_PI_8, alpha, eps, &gm, &r)
            .map_or(f64::NAN, |s| s.rho)
    };
    worst = worst.max((at(front * (1.0 - 1e-14)) - at(front * (1.0 + 1e-14))).abs() / 1e-10);
    gated(
        "7_front_corrections",
        worst,
        1.0,
        "worst ratio of phase residual (1e-12) and front continuity (1e-10); covolume trends strict",
    )
}

fn inner_region(theta0: f64) -> Vec<CheckEntry> {
    let mut worst: f64 = 0.0;
    let ideal = inner_geometry(&gas(1.4, 0.0), theta0).expect("valid gas");
    if ideal.vartheta != 1.2 || ideal.sonic_r - ideal.sonic_s != ideal.vartheta {
        worst = f64::INFINITY;
    }
    let g = inner_geometry(&gas(1.4, 0.2), theta0).expect("valid gas");
    let k = g.kappa0;
    let far = 1e3;
    let (s, _) = g.reflected_shock(theta0 + far);
    worst = worst.max((s / (0.5 * k * far * far) - 1.0).abs() / 1e-3);
    let t = 1e4;
    let at = |eta: f64| InnerPoint::new(0.5 * eta * k * t * t, t, k);
    for (eta, expected) in [(2.0, 1.0), (0.5, 2.0)] {
        let u = inner_weak_solution(&at(eta), &g, InnerWave::Reflected).unwrap_or(f64::NAN);
        worst = worst.max((u - expected).abs() / 1e-6);
    }
    let fan = expansion_fan(at(0.5).r_prime / (t * t), t, &g).unwrap_or(f64::NAN);
    worst = worst.max((fan - 2.0).abs() / 1e-6);
    let eta = -2.0f64;
    let expected = 1.0 + (-eta).sqrt().atan() / PI;
    let d = inner_weak_solution(&at(eta), &g, InnerWave::Diffracted).unwrap_or(f64::NAN);
    let fan = expansion_fan(at(eta).r_prime / (t * t), t, &g).unwrap_or(f64::NAN);
    worst = worst
        .max((d - expected).abs() / 1e-6)
        .max((fan - expected).abs() / 1e-6);
    let vertex = inner_rh_residual(&g, theta0, 1.0, 2.0, 0.0);
    worst = worst.max(vertex.momentum.abs() / 1e-12);

    let off = inner_rh_residual(
        &g,
        theta0 + 1.0,
        1.0,
        2.0,
        implied_v_jump(&g, theta0 + 1.0, 1e-2),
    )
    .momentum;
    let off_expected = -2.0 * k * k;
    let x = 1.0;
    let sim = similarity_residual(1.0, 0.5, -0.25, x, 0.7, &g);
    let sim_expected = k * (1.0 - g.vartheta) / (2.0 * x);
    let gap_measured =
        expansion_fan(2.0 * g.vartheta * (1.0 - 1e-12), 1.0, &g).unwrap_or(f64::NAN) - 2.0;
    let gap_expected = fan_edge_gap(1.0, &g);
    for (m, e) in [
        (off, off_expected),
        (sim, sim_expected),
        (gap_measured, gap_expected),
    ] {
        worst = worst.max((m - e).abs() / 1e-9);
    }
    vec![
        gated(
            "8_inner_region",
            worst,
            1.0,
            "worst ratio over sonic gap, parabola asymptote, far-field data, vertex identity and documented residual forms",
        ),
        documented(
            "8a_momentum_jump_off_vertex",
            off,
            1e-9,
            format!("at theta' - theta0 = 1 the reflected parabola misses the momentum jump by {off_expected} = -2 kappa0^2"),
        ),
        documented(
            "8b_similarity_sqrt_profile",
            sim,
            1e-9,
            format!("sqrt(x) leaves kappa0 (1 - vartheta) / (2x) = {sim_expected} at x = 1"),
        ),
        documented(
            "8c_fan_mid_branch_gap",
            gap_measured,
            1e-9,
            format!("middle fan branch meets the value 2 with gap {gap_expected} at theta' = 1"),
        ),
    ]
}

fn cli_determinism(cfg: &RunConfig) -> Result<CheckEntry> {
    let mut mismatches = 0;
    for cmd in Command::ALL.into_iter().filter(|c| *c != Command::Check) {
        let a = commands::run(cmd, cfg)?;
        let b = commands::run(cmd, cfg)?;
        if a.bytes != b.bytes {
            mismatches += 1;
        }
    }
    Ok(gated(
        "9_cli_determinism",
        mismatches as f64,
        0.0,
        "commands whose repeated output differs; the exit status of check itself is judged by the caller",
    ))
}

pub fn verify(cfg: &RunConfig) -> Result<VerificationReport> {
    let mut checks = vec![cubic_self_consistency()];
    checks.extend(table_trends());
    checks.push(branch_limits());
    checks.push(reflection_solve());
    checks.push(geometry_incidence());
    checks.push(linear_field());
    checks.push(front_corrections(cfg.epsilon));
    checks.extend(inner_region(cfg.theta0));
    checks.push(cli_determinism(cfg)?);
    let failures = checks.iter().filter(|c| c.status == Status::Fail).count();
    Ok(VerificationReport {
        gamma: cfg.gamma,
        btilde: cfg.btilde,
        alpha_deg: cfg.alpha_deg,
        epsilon: cfg.epsilon,
        checks,
        failures,
    })
}
