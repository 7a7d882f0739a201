//! Covolume (van der Waals) closure.
//!
//! The equation of state carries only the excluded-volume correction:
//! `p (V - b) = R T`, with internal energy `e = p (V - b) / (gamma - 1)`.
//! Every downstream formula depends on the gas only through the pair
//! `(gamma, btilde)` where `btilde = b * rho0` is the covolume scaled by the
//! upstream density.

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Ratio of specific heats and scaled covolume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GasModel {
    pub gamma: f64,
    pub btilde: f64,
}

impl GasModel {
    /// Builds a gas and checks its invariants.
    pub fn new(gamma: f64, btilde: f64) -> Result<Self> {
        Self { gamma, btilde }.validate()
    }

    /// Ideal gas with the given `gamma`.
    pub fn ideal(gamma: f64) -> Result<Self> {
        Self::new(gamma, 0.0)
    }

    /// Returns the gas unchanged when `gamma > 1` and `0 <= btilde < 1`.
    pub fn validate(self) -> Result<Self> {
        if !(self.gamma.is_finite() && self.gamma > 1.0) {
            return Err(Error::InvalidGas("gamma must exceed 1".into()));
        }
        if !(self.btilde.is_finite() && self.btilde >= 0.0) {
            return Err(Error::InvalidGas("btilde must be non-negative".into()));
        }
        if self.btilde >= 1.0 {
            return Err(Error::InvalidGas("btilde must be below 1".into()));
        }
        Ok(self)
    }

    /// `kappa0 = (1 - btilde)^(-(gamma + 1) / 2)`.
    pub fn kappa0(&self) -> f64 {
        (1.0 - self.btilde).powf(-0.5 * (self.gamma + 1.0))
    }

    /// Nonlinearity coefficient `(gamma + 1) / (2 (1 - btilde))` of the
    /// amplitude transport equation.
    pub fn nonlinearity(&self) -> f64 {
        (self.gamma + 1.0) / (2.0 * (1.0 - self.btilde))
    }

    /// Equation of state with the dimensional covolume `b = btilde / rho0`.
    pub fn eos(&self, rho0: f64) -> Result<Eos> {
        if !(rho0.is_finite() && rho0 > 0.0) {
            return Err(domain("reference density must be positive"));
        }
        Ok(Eos {
            gas: self.validate()?,
            rho0,
        })
    }
}

/// Density and pressure of a gas parcel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermoState {
    pub rho: f64,
    pub p: f64,
}

impl ThermoState {
    pub fn new(rho: f64, p: f64) -> Self {
        Self { rho, p }
    }

    pub fn specific_volume(&self) -> f64 {
        1.0 / self.rho
    }
}

/// Internal energy, enthalpy and entropy offset of a state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermoEval {
    pub e: f64,
    pub h: f64,
    /// `(S - S_ref) / c_v`.
    pub entropy: f64,
}

/// Gas model bound to a reference density, which fixes the dimensional
/// covolume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eos {
    pub gas: GasModel,
    pub rho0: f64,
}

impl Eos {
    /// Dimensional covolume `b`.
    pub fn covolume(&self) -> f64 {
        self.gas.btilde / self.rho0
    }

    fn check(&self, state: &ThermoState) -> Result<()> {
        if !(state.rho.is_finite() && state.rho > 0.0) {
            return Err(domain(format!("density {} must be positive", state.rho)));
        }
        if !(state.p.is_finite() && state.p > 0.0) {
            return Err(domain(format!("pressure {} must be positive", state.p)));
        }
        if state.rho * self.covolume() >= 1.0 {
            return Err(domain(format!(
                "packing fraction b*rho = {} must be below 1",
                state.rho * self.covolume()
            )));
        }
        Ok(())
    }

    /// `a = sqrt(gamma p / (rho (1 - b rho)))`.
    pub fn sound_speed(&self, state: &ThermoState) -> Result<f64> {
        self.check(state)?;
        let packing = 1.0 - self.covolume() * state.rho;
        Ok((self.gas.gamma * state.p / (state.rho * packing)).sqrt())
    }

    /// Energy, enthalpy and the entropy offset of `state` relative to
    /// `reference`.
    pub fn eval(&self, state: &ThermoState, reference: &ThermoState) -> Result<ThermoEval> {
        self.check(state)?;
        self.check(reference)?;
        let b = self.covolume();
        let g = self.gas.gamma;
        let v = state.specific_volume();
        let e = state.p * (v - b) / (g - 1.0);
        let h = state.p * (g * v - b) / (g - 1.0);
        let log_pv = |s: &ThermoState| s.p.ln() + g * (s.specific_volume() - b).ln();
        Ok(ThermoEval {
            e,
            h,
            entropy: log_pv(state) - log_pv(reference),
        })
    }
}

/// Upstream reference quantities shared by the asymptotic modules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferenceState {
    pub rho0: f64,
    pub p0: f64,
    pub a0: f64,
    pub kappa0: f64,
    /// Reduced speed `c0 = a0 / kappa0`.
    pub c0: f64,
}

impl ReferenceState {
    pub fn new(rho0: f64, p0: f64, gas: &GasModel) -> Result<Self> {
        let eos = gas.eos(rho0)?;
        let a0 = eos.sound_speed(&ThermoState::new(rho0, p0))?;
        let kappa0 = gas.kappa0();
        Ok(Self {
            rho0,
            p0,
            a0,
            kappa0,
            c0: a0 / kappa0,
        })
    }

    /// `c0 * kappa0`, equal to `a0` up to one rounding.
    pub fn front_speed(&self) -> f64 {
        self.c0 * self.kappa0
    }
}

/// Free-function form of [`GasModel::validate`].
pub fn validate_gas(gas: GasModel) -> Result<GasModel> {
    gas.validate()
}

/// Free-function form of [`ReferenceState::new`].
pub fn reference_constants(rho0: f64, p0: f64, gas: &GasModel) -> Result<ReferenceState> {
    ReferenceState::new(rho0, p0, gas)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal_sound_speed(gamma: f64, rho: f64, p: f64) -> f64 {
        (gamma * p / rho).sqrt()
    }

    #[test]
    fn sound_speed_examples() {
        let s = ThermoState::new(1.0, 1.0);
        let ideal = GasModel::new(1.4, 0.0).unwrap().eos(1.0).unwrap();
        assert!((ideal.sound_speed(&s).unwrap() - 1.4f64.sqrt()).abs() < 1e-15);
        assert_eq!(
            ideal.sound_speed(&s).unwrap(),
            ideal_sound_speed(1.4, 1.0, 1.0)
        );

        let dense = GasModel::new(1.4, 0.5).unwrap().eos(1.0).unwrap();
        assert!((dense.sound_speed(&s).unwrap() - 2.8f64.sqrt()).abs() < 1e-15);

        let g2 = GasModel::new(2.0, 0.0).unwrap().eos(1.0).unwrap();
        let a = g2.sound_speed(&ThermoState::new(2.0, 2.0)).unwrap();
        assert!((a - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sound_speed_rejects_packed_states() {
        let eos = GasModel::new(1.4, 0.5).unwrap().eos(1.0).unwrap();
        assert!(matches!(
            eos.sound_speed(&ThermoState::new(2.0, 1.0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            eos.sound_speed(&ThermoState::new(1.0, 0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn energy_and_enthalpy_examples() {
        let s = ThermoState::new(1.0, 1.0);
        let ev = GasModel::new(1.4, 0.0)
            .unwrap()
            .eos(1.0)
            .unwrap()
            .eval(&s, &s)
            .unwrap();
        assert!((ev.e - 2.5).abs() < 1e-14);
        assert!((ev.h - 3.5).abs() < 1e-14);
        assert_eq!(ev.entropy, 0.0);

        // b = 0.5 with V = 1.
        let ev = GasModel::new(1.4, 0.5)
            .unwrap()
            .eos(1.0)
            .unwrap()
            .eval(&s, &s)
            .unwrap();
        assert!((ev.e - 1.25).abs() < 1e-14);
        assert!((ev.h - 2.25).abs() < 1e-14);
        assert!((ev.h - ev.e - 1.0).abs() < 1e-14);
    }

    #[test]
    fn entropy_is_zero_on_reference_adiabat() {
        let eos = GasModel::new(1.4, 0.2).unwrap().eos(1.0).unwrap();
        let reference = ThermoState::new(1.0, 1.0);
        let b = eos.covolume();
        // p (V - b)^gamma held fixed while V changes.
        let v = 0.7;
        let p = (1.0 - b).powf(1.4) / (v - b).powf(1.4);
        let ev = eos.eval(&ThermoState::new(1.0 / v, p), &reference).unwrap();
        assert!(ev.entropy.abs() < 1e-14);
    }

    #[test]
    fn kappa0_examples() {
        let g = GasModel::new(1.4, 0.0).unwrap();
        assert_eq!(g.kappa0(), 1.0);
        let r = ReferenceState::new(1.0, 1.0, &g).unwrap();
        assert_eq!(r.c0, r.a0);

        let k = GasModel::new(1.4, 0.3).unwrap().kappa0();
        assert!((k - 0.7f64.powf(-1.2)).abs() < 1e-14);
        assert!((k - 1.5342).abs() < 1e-4);
        let k = GasModel::new(1.4, 0.6).unwrap().kappa0();
        assert!((k - 3.00281).abs() < 1e-5);
    }

    #[test]
    fn reference_speed_product() {
        let g = GasModel::new(1.4, 0.37).unwrap();
        let r = ReferenceState::new(1.3, 0.8, &g).unwrap();
        assert!((r.front_speed() - r.a0).abs() <= 1e-15 * r.a0);
        let expected = (1.4f64 * 0.8 / (1.3 * (1.0 - 0.37))).sqrt();
        assert!((r.a0 - expected).abs() < 1e-14);
    }

    #[test]
    fn validation_messages() {
        assert!(GasModel::new(1.4, 0.0).is_ok());
        assert_eq!(
            GasModel::new(1.0, 0.0),
            Err(Error::InvalidGas("gamma must exceed 1".into()))
        );
        assert_eq!(
            GasModel::new(1.4, 1.0),
            Err(Error::InvalidGas("btilde must be below 1".into()))
        );
        assert!(GasModel::new(1.4, -0.1).is_err());
        assert!(matches!(
            GasModel::new(1.4, 1.2).unwrap_err(),
            Error::InvalidGas(m) if m.contains("below 1")
        ));
    }
}
