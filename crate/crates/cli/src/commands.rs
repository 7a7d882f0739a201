//! One function per sub-command; each returns the bytes it would emit.

use std::f64::consts::PI;

use clap::ValueEnum;
use csv::Writer;

use vdwshock_core::fixtures::reference_thresholds;
use vdwshock_core::geometry::SelfSimilarPoint;
use vdwshock_core::inner_singular::{
    inner_geometry, inner_linear, inner_weak_solution, mixed_type_classify, shock_loci,
    InnerFlowType, InnerPoint, InnerWave,
};
use vdwshock_core::linear_acoustics::outer_field;
use vdwshock_core::nonlinear_front::{
    c_beta, gradient_jump, shock_locus, shock_locus_coefficient, shock_strength,
};
use vdwshock_core::regular_reflection::{criterion, table_generate, unshifted_threshold};
use vdwshock_core::thermo::{GasModel, ReferenceState};
use vdwshock_core::Error as CoreError;

use crate::checks;
use crate::config::{linspace, RunConfig};
use crate::error::Result;
use crate::format::{num, opt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Criterion,
    Table,
    Field,
    Front,
    Inner,
    Check,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Criterion,
        Command::Table,
        Command::Field,
        Command::Front,
        Command::Inner,
        Command::Check,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Command::Criterion => "criterion",
            Command::Table => "table",
            Command::Field => "field",
            Command::Front => "front",
            Command::Inner => "inner",
            Command::Check => "check",
        }
    }
}

/// Bytes produced by a command and the number of failed checks it found.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub bytes: Vec<u8>,
    pub failures: usize,
}

impl Output {
    fn clean(bytes: Vec<u8>) -> Self {
        Self { bytes, failures: 0 }
    }
}

pub fn run(command: Command, cfg: &RunConfig) -> Result<Output> {
    match command {
        Command::Criterion => criterion_json(cfg).map(Output::clean),
        Command::Table => table_csv(cfg).map(Output::clean),
        Command::Field => field_csv(cfg).map(Output::clean),
        Command::Front => front_csv(cfg).map(Output::clean),
        Command::Inner => inner_csv(cfg).map(Output::clean),
        Command::Check => {
            let report = checks::verify(cfg)?;
            let mut bytes = serde_json::to_vec_pretty(&report).expect("report serialises");
            bytes.push(b'\n');
            Ok(Output {
                bytes,
                failures: report.failures,
            })
        }
    }
}

fn writer() -> Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: Writer<Vec<u8>>) -> Result<Vec<u8>> {
    w.into_inner()
        .map_err(|e| std::io::Error::other(e.to_string()).into())
}

pub fn criterion_json(cfg: &RunConfig) -> Result<Vec<u8>> {
    let report = criterion(cfg.beta_i, &cfg.gas())?;
    let mut bytes = serde_json::to_vec_pretty(&report).expect("report serialises");
    bytes.push(b'\n');
    Ok(bytes)
}

/// Long-format threshold grid next to the stored reference values.
pub fn table_csv(cfg: &RunConfig) -> Result<Vec<u8>> {
    let grid = table_generate(&cfg.table_beta_i, &cfg.table_btilde, cfg.gamma)?;
    let reference = reference_thresholds();
    let mut w = writer();
    w.write_record([
        "beta_i",
        "btilde",
        "admissible",
        "j",
        "phi_star_deg",
        "fixture_j",
        "unshifted_j",
    ])?;
    for (row, beta) in grid.iter().zip(&cfg.table_beta_i) {
        for (cell, b) in row.iter().zip(&cfg.table_btilde) {
            let gas = GasModel::new(cfg.gamma, *b)?;
            w.write_record([
                num(*beta),
                num(*b),
                cell.admissible.to_string(),
                opt(cell.j),
                opt(cell.phi_star_deg),
                opt(reference.lookup(*beta, *b)),
                opt(unshifted_threshold(*beta, &gas)),
            ])?;
        }
    }
    finish(w)
}

/// First-order density over an `(xi/kappa0, theta)` grid, `theta` in
/// degrees from the wedge face `alpha` to the wall at 180.
pub fn field_csv(cfg: &RunConfig) -> Result<Vec<u8>> {
    let reference = cfg.reference()?;
    let alpha = cfg.alpha();
    let mut w = writer();
    w.write_record(["xi_over_kappa0", "theta", "region", "rho1", "formula_tag"])?;
    for x in linspace(cfg.field_x_min, cfg.field_x_max, cfg.field_x_count) {
        for theta in linspace(alpha, PI, cfg.field_theta_count) {
            let pt = SelfSimilarPoint::from_scaled(x, theta, &reference);
            let (region, rho1, tag) = match outer_field(&pt, alpha, &reference) {
                Ok(s) => (
                    s.region.to_string(),
                    num(s.rho1),
                    s.formula_tag.name().to_string(),
                ),
                // The merge point carries two limits; it is reported, not
                // resolved.
                Err(CoreError::Singular(_)) => (
                    "boundary:reflected_line+sonic_arc".into(),
                    String::new(),
                    "singular".into(),
                ),
                Err(e) => return Err(e.into()),
            };
            w.write_record([num(x), num(theta.to_degrees()), region, rho1, tag])?;
        }
    }
    finish(w)
}

/// Covolume sweep of the diffracted-front quantities on one shock ray.
pub fn front_csv(cfg: &RunConfig) -> Result<Vec<u8>> {
    let alpha = cfg.alpha();
    let ray = cfg.front_ray_deg.to_radians();
    let c = c_beta(ray, alpha)?;
    let mut w = writer();
    w.write_record([
        "btilde",
        "gradient_jump",
        "shock_locus_coefficient",
        "shock_speed",
        "shock_strength",
    ])?;
    for b in linspace(
        cfg.front_btilde_min,
        cfg.front_btilde_max,
        cfg.front_btilde_count,
    ) {
        let gas = GasModel::new(cfg.gamma, b)?;
        let reference = ReferenceState::new(cfg.rho0, cfg.p0, &gas)?;
        let t = cfg.front_time;
        w.write_record([
            num(b),
            num(gradient_jump(cfg.front_radius, &gas, cfg.rho0)?),
            num(shock_locus_coefficient(c, cfg.epsilon, &gas)),
            num(shock_locus(t, ray, alpha, cfg.epsilon, &gas, &reference)? / t),
            num(shock_strength(ray, alpha, cfg.epsilon, &gas)?),
        ])?;
    }
    finish(w)
}

fn flow_name(t: InnerFlowType) -> &'static str {
    match t {
        InnerFlowType::Elliptic => "elliptic",
        InnerFlowType::Hyperbolic => "hyperbolic",
        InnerFlowType::Sonic => "sonic",
    }
}

/// Inner shock loci, sonic lines and weak-solution values over a
/// `(r', theta')` grid. Cells a branch does not cover are left empty.
pub fn inner_csv(cfg: &RunConfig) -> Result<Vec<u8>> {
    let geom = inner_geometry(&cfg.gas(), cfg.theta0)?;
    let k = geom.kappa0;
    let mut w = writer();
    w.write_record([
        "r_prime",
        "theta_prime",
        "eta",
        "s_r",
        "s_d",
        "sonic_s",
        "sonic_r",
        "u_reflected",
        "u_diffracted",
        "u_linear",
        "flow_type",
    ])?;
    for r in linspace(cfg.inner_r_min, cfg.inner_r_max, cfg.inner_r_count) {
        for t in linspace(
            cfg.inner_theta_min,
            cfg.inner_theta_max,
            cfg.inner_theta_count,
        ) {
            let ip = InnerPoint::new(r, t, k);
            let (s_r, _) = geom.reflected_shock(t);
            let s_d = ip
                .eta
                .and_then(|e| shock_loci(t, e, &geom).ok())
                .map(|l| l.s_d);
            let u_reflected = inner_weak_solution(&ip, &geom, InnerWave::Reflected)?;
            let u_diffracted = inner_weak_solution(&ip, &geom, InnerWave::Diffracted).ok();
            let u_linear = inner_linear(&ip, k).ok();
            w.write_record([
                num(r),
                num(t),
                opt(ip.eta),
                num(s_r),
                opt(s_d),
                num(geom.sonic_s),
                num(geom.sonic_r),
                num(u_reflected),
                opt(u_diffracted),
                opt(u_linear),
                flow_name(mixed_type_classify(&ip, u_reflected, &geom)).to_string(),
            ])?;
        }
    }
    finish(w)
}
