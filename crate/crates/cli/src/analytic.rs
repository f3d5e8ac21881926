//! `analytic`: closed-form curves on a frequency grid.
//!
//! Noise curves are written as dimensionless D·N(Ω) (S/D − 1) so they line
//! up with the `relative_noise.csv` produced by `analyze`; the pendulum
//! curve is the absolute density and lines up with `spectrum.csv`.

use std::path::Path;

use quietlight::analytic::{
    darkroom_noise, diode_relaxation_frequency, diode_relative_noise, general_gain_relative_noise,
    highpower_relative_noise, jump_rate_spectrum, pendulum_spectrum, rateeq_relative_noise, single_electron_noise,
    PendulumParams, RateEqParams, WaitParams,
};
use quietlight::circuits::st_linewidth;

use crate::io::Table;
use crate::params::{check_open, check_positive, ParamSet};
use crate::{CliError, Result};

pub const ANALYTIC_MODELS: [&str; 8] =
    ["pendulum", "darkroom", "highpower", "rateeq", "general-gain", "diode", "single-electron", "st"];

/// Columns and rows of an analytic result plus its units line.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub units: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Curve {
    fn omega_value(units: String, omegas: &[f64], f: impl Fn(f64) -> Result<f64>) -> Result<Self> {
        let rows = omegas.iter().map(|&w| Ok(vec![w, f(w)?])).collect::<Result<Vec<_>>>()?;
        Ok(Self { units, columns: vec!["omega", "value"], rows })
    }
}

/// Grid from `grid` (a CSV with an `omega` column) or from
/// `omega_min`, `omega_max`, `points` (linear, default 200 points).
fn grid(ps: &mut ParamSet, default_max: f64) -> Result<Vec<f64>> {
    if let Some(path) = ps.string_opt("grid")? {
        let p = Path::new(&path);
        return Table::read(p)?.column("omega", p);
    }
    let n = ps.usize("points", 200)?;
    let hi = ps.f64("omega_max", default_max)?;
    let lo = ps.f64("omega_min", hi / n.max(1) as f64)?;
    if n == 0 {
        return Err(CliError::validation(ps.field("points"), "must be at least 1"));
    }
    if !(lo >= 0.0 && hi >= lo) {
        return Err(CliError::validation(ps.field("omega_max"), format!("need 0 <= omega_min <= omega_max, got {lo}, {hi}")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect())
}

pub fn cmd_analytic(model: &str, mut ps: ParamSet) -> Result<Curve> {
    let ps = &mut ps;
    let (curve, keys): (Curve, &[&str]) = match model {
        "pendulum" => {
            let p = PendulumParams { w: ps.f64("w", 1e-3)?, delta: ps.f64("delta", 1e-5)?, p: ps.f64("p", 0.01)? };
            check_open(ps, "p", p.p, 0.0, 1.0)?;
            check_positive(ps, "w", p.w)?;
            let g = grid(ps, 100.0 * p.p * p.w)?;
            let c = Curve::omega_value("omega [rad/period], value = S(omega) [energy^2/period]".into(), &g, |w| {
                Ok(pendulum_spectrum(&p, w))
            })?;
            (c, &["w", "delta", "p"])
        }
        "darkroom" => {
            let tau_r = ps.require("tau_r")?;
            check_positive(ps, "tau_r", tau_r)?;
            let g = grid(ps, 20.0 / tau_r)?;
            let c = Curve::omega_value("omega [rad/t], value = D*N [dimensionless], unit rate".into(), &g, |w| {
                Ok(darkroom_noise(w, tau_r))
            })?;
            (c, &["tau_r"])
        }
        "highpower" => {
            let tau_p = ps.require("tau_p")?;
            let d = ps.require("d")?;
            check_positive(ps, "tau_p", tau_p)?;
            check_positive(ps, "d", d)?;
            let g = grid(ps, 5.0 / tau_p)?;
            let c = Curve::omega_value("omega [rad/t], value = D*N [dimensionless]".into(), &g, |w| {
                Ok(d * highpower_relative_noise(w, tau_p, d))
            })?;
            (c, &["tau_p", "d"])
        }
        "rateeq" => {
            let p = RateEqParams::steady_state(ps.require("n")?, ps.require("tau_p")?, ps.require("m")?)?;
            let g = grid(ps, 4.0 * (2.0 * p.m / p.tau_p).sqrt())?;
            let c = Curve::omega_value("omega [rad/t], value = Q*N [dimensionless]".into(), &g, |w| {
                Ok(rateeq_relative_noise(w, &p)?)
            })?;
            (c, &["n", "tau_p", "m"])
        }
        "general-gain" => {
            let b = ps.require("b")?;
            let n_p = ps.require("n_p")?;
            check_positive(ps, "b", b)?;
            let g = grid(ps, 4.0 * b.sqrt())?;
            let c = Curve::omega_value("omega [dimensionless, omega*tau_p], value = Q*N [dimensionless]".into(), &g, |w| {
                Ok(general_gain_relative_noise(w, b, n_p))
            })?;
            (c, &["b", "n_p"])
        }
        "diode" => {
            let tau_p = ps.f64("tau_p", 2.0)?;
            let j = ps.f64("j", 5.0)?;
            let e = ps.f64("eps_over_t", -(0.891f64.ln()))?;
            let wr = diode_relaxation_frequency(j, tau_p, e)?;
            let g = grid(ps, 4.0 * wr)?;
            let c = Curve::omega_value("omega [rad/ns], value = J*N [dimensionless]".into(), &g, |w| {
                Ok(diode_relative_noise(w, j, tau_p, e)?)
            })?;
            (c, &["tau_p", "j", "eps_over_t"])
        }
        "single-electron" => {
            if let Some(gamma) = ps.f64_opt("gamma")? {
                let p = WaitParams::new(gamma, ps.require("omega_r")?);
                check_positive(ps, "gamma", gamma)?;
                let g = grid(ps, 4.0 * gamma)?;
                let c = Curve::omega_value("omega [rad/t], value = S_r/R [dimensionless]".into(), &g, |w| {
                    Ok(jump_rate_spectrum(w, &p))
                })?;
                (c, &["gamma", "omega_r"])
            } else {
                let a = ps.require("a")?;
                let c = Curve {
                    units: "omega [rad/t], value = S_dD/D at low frequency [dimensionless]".into(),
                    columns: vec!["omega", "value"],
                    rows: vec![vec![0.0, single_electron_noise(a)]],
                };
                (c, &["a"])
            }
        }
        "st" => {
            let q = ps.require("q")?;
            let tau_p = ps.require("tau_p")?;
            let n_p = ps.f64("n_p", 1.0)?;
            check_positive(ps, "q", q)?;
            check_positive(ps, "tau_p", tau_p)?;
            let c = Curve {
                units: "delta_omega [rad per unit of tau_p]".into(),
                columns: vec!["delta_omega"],
                rows: vec![vec![st_linewidth(q, tau_p, n_p)]],
            };
            (c, &["q", "tau_p", "n_p"])
        }
        other => {
            return Err(CliError::UnknownModel { name: other.to_string(), expected: ANALYTIC_MODELS.join(", ") });
        }
    };
    let mut all: Vec<&str> = keys.to_vec();
    all.extend(["grid", "points", "omega_min", "omega_max"]);
    std::mem::take(ps).finish(&all)?;
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(a: &[&str]) -> ParamSet {
        ParamSet::from_args(&a.iter().map(|s| s.to_string()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn diode_starts_at_minus_one() {
        let c = cmd_analytic("diode", args(&["--tau_p", "2", "--J", "5", "--eps_over_T", "0.1154", "--omega_min", "0"])).unwrap();
        assert_eq!(c.rows[0], vec![0.0, -1.0]);
        assert_eq!(c.rows.len(), 200);
    }

    #[test]
    fn single_electron_and_st() {
        let c = cmd_analytic("single-electron", args(&["--a", "0.25"])).unwrap();
        assert!((c.rows[0][1] - 0.875).abs() < 1e-15);
        let c = cmd_analytic("st", args(&["--Q", "1e9", "--tau_p", "1e-9"])).unwrap();
        assert!((c.rows[0][0] / 1e9 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unknown_model_and_param() {
        assert!(matches!(cmd_analytic("maser", ParamSet::default()), Err(CliError::UnknownModel { .. })));
        assert!(cmd_analytic("darkroom", args(&["--tau_r", "1", "--bogus", "2"])).is_err());
    }
}
