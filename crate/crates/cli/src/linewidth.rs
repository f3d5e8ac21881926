//! `linewidth`: catalog of linewidth formulas with built-in cross-checks.
//!
//! The JSON record carries `product_checks`: each compares the result with
//! an independent expression of the same quantity.

use quietlight::circuits::{
    combined_alpha_k, general_linewidth, inhomogeneous_linewidth_rinf, multi_element_linewidth,
    series_load_enhancement, st_linewidth, GainElement, LinewidthInputs, MultiReading, Network, SeriesLoad,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::params::{check_positive, ParamSet};
use crate::{CliError, Result};

pub const LINEWIDTH_MODELS: [&str; 6] = ["st", "general", "alpha-k", "series-rlc", "multi", "inhomogeneous"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductCheck {
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub rel_err: f64,
}

impl ProductCheck {
    fn new(name: &str, value: f64, expected: f64) -> Self {
        let rel_err = if expected == 0.0 { value.abs() } else { ((value - expected) / expected).abs() };
        Self { name: name.to_string(), value, expected, rel_err }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinewidthRecord {
    pub model: String,
    pub params: Value,
    pub delta_omega: f64,
    pub product_checks: Vec<ProductCheck>,
}

pub fn cmd_linewidth(model: &str, mut ps: ParamSet) -> Result<LinewidthRecord> {
    let ps = &mut ps;
    let (params, delta_omega, checks, keys): (Value, f64, Vec<ProductCheck>, &[&str]) = match model {
        "st" => {
            let (q, tau_p, n_p) = (ps.require("q")?, ps.require("tau_p")?, ps.f64("n_p", 1.0)?);
            check_positive(ps, "q", q)?;
            check_positive(ps, "tau_p", tau_p)?;
            let dw = st_linewidth(q, tau_p, n_p);
            // Q = ω₀τ_p: δω·Q·τ_p² recovers n_p
            let checks = vec![ProductCheck::new("delta_omega*Q*tau_p^2", dw * q * tau_p * tau_p, n_p)];
            (json!({"q": q, "tau_p": tau_p, "n_p": n_p}), dw, checks, &["q", "tau_p", "n_p"])
        }
        "general" => {
            let inp = LinewidthInputs {
                g_n: ps.require("g_n")?,
                b_n: ps.require("b_n")?,
                g_w: ps.require("g_w")?,
                b_w: ps.require("b_w")?,
                s_c: ps.require("s_c")?,
            };
            let dw = general_linewidth(&inp)?;
            // rescaling both n-partials
            let scaled = general_linewidth(&LinewidthInputs { g_n: 3.0 * inp.g_n, b_n: 3.0 * inp.b_n, ..inp })?;
            let alpha = inp.b_n / inp.g_n;
            let h = inp.g_w / inp.b_w;
            let mut checks = vec![ProductCheck::new("n-rescaled", scaled, dw)];
            if inp.g_n != 0.0 && inp.b_w != 0.0 && (1.0 - alpha * h).abs() > 1e-12 {
                // S_C(1 + α²)/(B_ω²(1 − αh)²) rearranged from the partials
                let closed = inp.s_c * (1.0 + alpha * alpha) / (inp.b_w * inp.b_w * (1.0 - alpha * h).powi(2));
                checks.push(ProductCheck::new("alpha-h form", dw, closed));
            }
            let p = json!({"g_n": inp.g_n, "b_n": inp.b_n, "g_w": inp.g_w, "b_w": inp.b_w, "s_c": inp.s_c});
            (p, dw, checks, &["g_n", "b_n", "g_w", "b_w", "s_c"])
        }
        "alpha-k" => {
            let (lin, alpha, h) = (ps.require("delta_omega_linear")?, ps.f64("alpha", 0.0)?, ps.f64("h", 0.0)?);
            let dw = combined_alpha_k(lin, alpha, h)?;
            // 1 + α_A² = (1 + α²)(1 + h²)/(1 − αh)²
            let checks = vec![ProductCheck::new(
                "expanded alpha_A",
                dw,
                lin * (1.0 + alpha * alpha) * (1.0 + h * h).powi(2) / (2.0 * (1.0 - alpha * h).powi(2)),
            )];
            (json!({"delta_omega_linear": lin, "alpha": alpha, "h": h}), dw, checks, &["delta_omega_linear", "alpha", "h"])
        }
        "series-rlc" => {
            let load = SeriesLoad { r_a: ps.require("r_a")?, l: ps.require("l")?, c: ps.require("c")? };
            let (g_n, s_c) = (ps.f64("g_n", 1.0)?, ps.f64("s_c", 1.0)?);
            check_positive(ps, "l", load.l)?;
            check_positive(ps, "c", load.c)?;
            let (g_w, b_w) = load.partials();
            let dw = general_linewidth(&LinewidthInputs { g_n, b_n: 0.0, g_w, b_w, s_c })?;
            let k = series_load_enhancement(&load, g_n, s_c)?;
            let w = load.omega_o();
            let net = Network::Parallel(vec![
                Network::Capacitance(load.c),
                Network::Series(vec![Network::Inductance(load.l), Network::Resistance(load.r_a)]),
            ]);
            let step = 1e-4 * w;
            let dy = (net.admittance(w + step) - net.admittance(w - step)) / (2.0 * step);
            let checks = vec![
                ProductCheck::new("K from general linewidth", k, load.k_factor()),
                ProductCheck::new("1 + h^2", 1.0 + load.h().powi(2), load.k_factor()),
                ProductCheck::new("network dB/domega", dy.im, b_w),
            ];
            let p = json!({"r_a": load.r_a, "l": load.l, "c": load.c, "g_n": g_n, "s_c": s_c, "omega_o": w, "k": k});
            (p, dw, checks, &["r_a", "l", "c", "g_n", "s_c"])
        }
        "multi" => {
            let j = ps.f64_list("j")?.ok_or_else(|| CliError::validation("j", "required"))?;
            let n = j.len();
            let alpha = ps.f64_list("alpha")?.unwrap_or_else(|| vec![0.0; n]);
            let n_p = ps.f64_list("n_p")?.unwrap_or_else(|| vec![1.0; n]);
            if alpha.len() != n || n_p.len() != n {
                return Err(CliError::validation("alpha", "j, alpha and n_p need equal lengths"));
            }
            let (h, tau_p, d) = (ps.f64("h", 0.0)?, ps.require("tau_p")?, ps.require("d")?);
            let reading = match ps.string_opt("reading")?.as_deref() {
                None | Some("product") => MultiReading::Product,
                Some("quotient") => MultiReading::Quotient,
                Some(o) => return Err(CliError::validation("reading", format!("`{o}`: expected product or quotient"))),
            };
            let els: Vec<GainElement> = (0..n).map(|k| GainElement { j: j[k], alpha: alpha[k], n_p: n_p[k] }).collect();
            let dw = multi_element_linewidth(&els, h, tau_p, d, reading)?;
            let mut checks = Vec::new();
            if n > 0 && reading == MultiReading::Product && els.iter().all(|e| e.alpha == els[0].alpha && e.n_p == els[0].n_p) {
                let one = multi_element_linewidth(&els[..1], h, tau_p, d, reading)?;
                checks.push(ProductCheck::new("identical elements equal one element", dw, one));
            }
            let reading_name = if reading == MultiReading::Product { "product" } else { "quotient" };
            let p = json!({"j": j, "alpha": alpha, "n_p": n_p, "h": h, "tau_p": tau_p, "d": d, "reading": reading_name});
            (p, dw, checks, &["j", "alpha", "n_p", "h", "tau_p", "d", "reading"])
        }
        "inhomogeneous" => {
            let (n, d, tau_p) = (ps.require("n")?, ps.require("d")?, ps.require("tau_p")?);
            check_positive(ps, "n", n)?;
            let dw = inhomogeneous_linewidth_rinf(n, d, tau_p);
            let checks = vec![ProductCheck::new("delta_omega*D*tau_p^2*32 - 1/n^2", dw * d * tau_p * tau_p * 32.0 - 1.0 / (n * n), 10.0 + 5.0 * n * n)];
            (json!({"n": n, "d": d, "tau_p": tau_p}), dw, checks, &["n", "d", "tau_p"])
        }
        other => {
            return Err(CliError::UnknownModel { name: other.to_string(), expected: LINEWIDTH_MODELS.join(", ") });
        }
    };
    std::mem::take(ps).finish(keys)?;
    Ok(LinewidthRecord { model: model.to_string(), params, delta_omega, product_checks: checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(a: &[&str]) -> ParamSet {
        ParamSet::from_args(&a.iter().map(|s| s.to_string()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn every_model_checks_out() {
        let cases: [(&str, &[&str]); 6] = [
            ("st", &["--Q", "1e9", "--tau_p", "1e-9", "--n_p", "1.5"]),
            ("general", &["--g_n", "1", "--b_n", "3", "--g_w", "0.2", "--b_w", "-2", "--s_c", "0.5"]),
            ("alpha-k", &["--delta_omega_linear", "2", "--alpha", "3", "--h", "0.1"]),
            ("series-rlc", &["--r_a", "0.6", "--l", "1", "--c", "1.2"]),
            ("multi", &["--j", "1,2", "--alpha", "2,2", "--n_p", "1.5,1.5", "--tau_p", "2", "--d", "5"]),
            ("inhomogeneous", &["--n", "2", "--d", "1", "--tau_p", "1"]),
        ];
        for (m, a) in cases {
            let r = cmd_linewidth(m, args(a)).unwrap();
            assert!(r.delta_omega > 0.0, "{m}");
            assert!(!r.product_checks.is_empty(), "{m}");
            for c in &r.product_checks {
                assert!(c.rel_err < 1e-6, "{m}: {c:?}");
            }
        }
    }

    #[test]
    fn unknown() {
        assert!(matches!(cmd_linewidth("x", ParamSet::default()), Err(CliError::UnknownModel { .. })));
    }
}
