//! Scenario files: which model to run, its parameters, analysis settings,
//! output directory, seed and run count.

use std::path::{Path, PathBuf};

use quietlight::montecarlo::{CavityConfig, DiodeConfig, FourLevelConfig, PendulumConfig};
use serde_json::{json, Map, Value};

use crate::params::{check_open, check_positive, ParamSet};
use crate::{CliError, Result};

pub const MODELS: [&str; 4] = ["pendulum", "cavity", "diode", "fourlevel"];
pub const DEFAULT_RUNS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub enum ModelConfig {
    Pendulum(PendulumConfig),
    Cavity(CavityConfig),
    Diode(DiodeConfig),
    FourLevel(FourLevelConfig),
}

impl ModelConfig {
    #[must_use]
    pub fn name(&self) -> &'static str {
        match self {
            ModelConfig::Pendulum(_) => "pendulum",
            ModelConfig::Cavity(_) => "cavity",
            ModelConfig::Diode(_) => "diode",
            ModelConfig::FourLevel(_) => "fourlevel",
        }
    }

    /// Time unit of event files and spectra.
    #[must_use]
    pub fn time_unit(&self) -> &'static str {
        match self {
            ModelConfig::Pendulum(_) => "period",
            ModelConfig::Cavity(_) => "1/g",
            ModelConfig::Diode(_) => "ns",
            ModelConfig::FourLevel(_) => "t",
        }
    }

    fn set_runs_seed(&mut self, runs: usize, seed: u64) {
        match self {
            ModelConfig::Pendulum(c) => (c.runs, c.seed) = (runs, seed),
            ModelConfig::Cavity(c) => (c.runs, c.seed) = (runs, seed),
            ModelConfig::Diode(c) => (c.runs, c.seed) = (runs, seed),
            ModelConfig::FourLevel(c) => (c.runs, c.seed) = (runs, seed),
        }
    }

    /// Fully resolved parameters, suitable for re-parsing.
    #[must_use]
    pub fn params_json(&self) -> Value {
        match self {
            ModelConfig::Pendulum(c) => json!({"w": c.w, "delta": c.delta, "p": c.p, "periods": c.periods}),
            ModelConfig::Cavity(c) => json!({
                "n_atoms": c.n_atoms, "n0": c.n0, "m0": c.m0, "duration": c.duration,
                "warmup": c.warmup, "sample_interval": c.sample_interval,
            }),
            ModelConfig::Diode(c) => json!({
                "b": c.b, "gap": c.gap, "temperature": c.temperature, "q": c.q, "p_therm": c.p_therm,
                "pump_period": c.pump_period, "tau_p": finite_or_str(c.tau_p), "duration": c.duration,
                "transient": c.transient, "initial_cb": c.initial_cb,
            }),
            ModelConfig::FourLevel(c) => json!({
                "n_atoms": c.n_atoms, "pump": c.pump, "tau_u": c.tau_u, "tau_d": c.tau_d, "tau_p": c.tau_p,
                "duration": c.duration, "warmup": c.warmup, "m0": c.m0,
            }),
        }
    }
}

fn finite_or_str(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!("inf")
    }
}

/// Estimator settings shared by `simulate` and `analyze`.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub n_max: usize,
    /// Longest correlation lag; `None` picks duration/20.
    pub tau_max: Option<f64>,
    pub bins: usize,
    /// Counting windows for V(T); empty picks a default ladder.
    pub window: Vec<f64>,
}

impl Default for Analysis {
    fn default() -> Self {
        Self { n_max: 300, tau_max: None, bins: 100, window: Vec::new() }
    }
}

impl Analysis {
    #[must_use]
    pub fn to_json(&self) -> Value {
        json!({"n_max": self.n_max, "tau_max": self.tau_max, "bins": self.bins, "window": self.window})
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub model: ModelConfig,
    pub analysis: Analysis,
    pub output: PathBuf,
    pub seed: u64,
    pub runs: usize,
}

impl Scenario {
    /// Command-line overrides of seed and run count.
    pub fn override_with(&mut self, seed: Option<u64>, runs: Option<usize>) -> Result<()> {
        if let Some(s) = seed {
            self.seed = s;
        }
        if let Some(r) = runs {
            if r == 0 {
                return Err(CliError::validation("runs", "must be at least 1"));
            }
            self.runs = r;
        }
        self.model.set_runs_seed(self.runs, self.seed);
        Ok(())
    }

    /// Resolved scenario; parsing it back gives the same scenario.
    #[must_use]
    pub fn to_json(&self) -> Value {
        json!({
            "model": self.model.name(),
            "params": self.model.params_json(),
            "analysis": self.analysis.to_json(),
            "output": self.output,
            "seed": self.seed,
            "runs": self.runs,
        })
    }
}

pub fn parse_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Parse { path: path.to_path_buf(), msg: e.to_string() })?;
    let mut scenario = scenario_from_json(&value)?;
    if scenario.output.is_relative() {
        if let Some(dir) = path.parent() {
            scenario.output = dir.join(&scenario.output);
        }
    }
    Ok(scenario)
}

pub fn scenario_from_json(value: &Value) -> Result<Scenario> {
    let obj = value.as_object().ok_or_else(|| CliError::validation("<root>", "expected a JSON object"))?;
    let mut top = ParamSet::from_json("", obj);
    let model = match top.take("model") {
        Some(Value::String(s)) => s,
        Some(v) => return Err(CliError::validation("model", format!("expected a string, got {v}"))),
        None => return Err(CliError::validation("model", format!("required; one of: {}", MODELS.join(", ")))),
    };
    let seed = top.u64("seed", 1)?;
    let runs = top.usize("runs", DEFAULT_RUNS)?;
    if runs == 0 {
        return Err(CliError::validation("runs", "must be at least 1"));
    }
    let output = PathBuf::from(top.string_opt("output")?.unwrap_or_else(|| format!("out/{model}")));
    let params = object_or_empty(top.take("params"), "params")?;
    let analysis = object_or_empty(top.take("analysis"), "analysis")?;
    top.finish(&["model", "params", "analysis", "output", "seed", "runs"])?;

    let mut ps = ParamSet::from_json("params", &params);
    let mut config = match model.as_str() {
        "pendulum" => ModelConfig::Pendulum(pendulum(&mut ps)?),
        "cavity" => ModelConfig::Cavity(cavity(&mut ps)?),
        "diode" => ModelConfig::Diode(diode(&mut ps)?),
        "fourlevel" => ModelConfig::FourLevel(fourlevel(&mut ps)?),
        other => {
            return Err(CliError::validation("model", format!("`{other}` is not a model; expected one of: {}", MODELS.join(", "))))
        }
    };
    config.set_runs_seed(runs, seed);

    let mut ap = ParamSet::from_json("analysis", &analysis);
    let d = Analysis::default();
    let a = Analysis {
        n_max: ap.usize("n_max", d.n_max)?,
        tau_max: ap.f64_opt("tau_max")?,
        bins: ap.usize("bins", d.bins)?,
        window: ap.f64_list("window")?.unwrap_or_default(),
    };
    if a.n_max == 0 {
        return Err(CliError::validation("analysis.n_max", "must be at least 1"));
    }
    if a.bins == 0 {
        return Err(CliError::validation("analysis.bins", "must be at least 1"));
    }
    if let Some(t) = a.tau_max {
        check_positive(&ap, "tau_max", t)?;
    }
    if a.window.iter().any(|w| !(*w > 0.0)) {
        return Err(CliError::validation("analysis.window", "windows must be positive"));
    }
    ap.finish(&["n_max", "tau_max", "bins", "window"])?;
    Ok(Scenario { model: config, analysis: a, output, seed, runs })
}

fn object_or_empty(v: Option<Value>, field: &str) -> Result<Map<String, Value>> {
    match v {
        None | Some(Value::Null) => Ok(Map::new()),
        Some(Value::Object(m)) => Ok(m),
        Some(v) => Err(CliError::validation(field, format!("expected an object, got {v}"))),
    }
}

fn pendulum(ps: &mut ParamSet) -> Result<PendulumConfig> {
    let c = PendulumConfig {
        w: ps.f64("w", 1e-3)?,
        delta: ps.f64("delta", 1e-5)?,
        p: ps.f64("p", 0.01)?,
        periods: ps.u64("periods", 100_000)?,
        runs: DEFAULT_RUNS,
        seed: 1,
    };
    check_positive(ps, "w", c.w)?;
    check_positive(ps, "delta", c.delta)?;
    check_open(ps, "p", c.p, 0.0, 1.0)?;
    if (c.periods as f64) < 10.0 / c.p {
        return Err(CliError::validation(ps.field("periods"), format!("{} is below 10/p", c.periods)));
    }
    ps.clone().finish(&["w", "delta", "p", "periods"])?;
    Ok(c)
}

fn cavity(ps: &mut ParamSet) -> Result<CavityConfig> {
    let n_atoms = ps.u64("n_atoms", 100)?;
    let c = CavityConfig {
        n_atoms,
        n0: ps.u64("n0", n_atoms)?,
        m0: ps.u64("m0", 0)?,
        duration: ps.f64("duration", 20.0)?,
        warmup: ps.f64("warmup", 1.0)?,
        sample_interval: ps.f64("sample_interval", 0.01)?,
        runs: DEFAULT_RUNS,
        seed: 1,
    };
    if c.n_atoms == 0 {
        return Err(CliError::validation(ps.field("n_atoms"), "must be at least 1"));
    }
    if c.n0 > c.n_atoms {
        return Err(CliError::validation(ps.field("n0"), format!("{} exceeds n_atoms = {}", c.n0, c.n_atoms)));
    }
    check_positive(ps, "duration", c.duration)?;
    if !(c.warmup >= 0.0) {
        return Err(CliError::validation(ps.field("warmup"), "must be non-negative"));
    }
    if !(c.sample_interval >= 0.0) {
        return Err(CliError::validation(ps.field("sample_interval"), "must be non-negative"));
    }
    ps.clone().finish(&["n_atoms", "n0", "m0", "duration", "warmup", "sample_interval"])?;
    Ok(c)
}

fn diode(ps: &mut ParamSet) -> Result<DiodeConfig> {
    let d = DiodeConfig::default();
    let pump_period = match ps.take("pump_period") {
        Some(Value::Null) => None,
        Some(v) => {
            let mut one = ParamSet::from_json("params", &Map::from_iter([("pump_period".to_string(), v)]));
            one.f64_opt("pump_period")?
        }
        None => d.pump_period,
    };
    let c = DiodeConfig {
        b: ps.usize("b", d.b)?,
        gap: ps.usize("gap", d.gap)?,
        temperature: ps.f64("temperature", d.temperature)?,
        q: ps.f64("q", d.q)?,
        p_therm: ps.f64("p_therm", d.p_therm)?,
        pump_period,
        tau_p: ps.f64("tau_p", d.tau_p)?,
        duration: ps.f64("duration", d.duration)?,
        transient: ps.f64("transient", d.transient)?,
        initial_cb: ps.usize("initial_cb", d.initial_cb)?,
        ..d
    };
    if !(2..=128).contains(&c.b) {
        return Err(CliError::validation(ps.field("b"), format!("{} must lie in 2..=128", c.b)));
    }
    check_open(ps, "q", c.q, 0.0, 1.0)?;
    check_positive(ps, "p_therm", c.p_therm)?;
    if let Some(dt) = c.pump_period {
        check_positive(ps, "pump_period", dt)?;
    }
    check_positive(ps, "tau_p", c.tau_p)?;
    check_positive(ps, "duration", c.duration)?;
    if !(c.transient >= 0.0) {
        return Err(CliError::validation(ps.field("transient"), "must be non-negative"));
    }
    if c.initial_cb > c.b {
        return Err(CliError::validation(ps.field("initial_cb"), "exceeds b"));
    }
    ps.clone().finish(&[
        "b", "gap", "temperature", "q", "p_therm", "pump_period", "tau_p", "duration", "transient", "initial_cb",
    ])?;
    Ok(c)
}

fn fourlevel(ps: &mut ParamSet) -> Result<FourLevelConfig> {
    let d = FourLevelConfig::default();
    let c = FourLevelConfig {
        n_atoms: ps.u64("n_atoms", d.n_atoms)?,
        pump: ps.f64("pump", d.pump)?,
        tau_u: ps.f64("tau_u", d.tau_u)?,
        tau_d: ps.f64("tau_d", d.tau_d)?,
        tau_p: ps.f64("tau_p", d.tau_p)?,
        duration: ps.f64("duration", d.duration)?,
        warmup: ps.f64("warmup", d.warmup)?,
        m0: ps.u64("m0", d.m0)?,
        ..d
    };
    if c.n_atoms == 0 {
        return Err(CliError::validation(ps.field("n_atoms"), "must be at least 1"));
    }
    if !(c.pump >= 0.0) {
        return Err(CliError::validation(ps.field("pump"), "must be non-negative"));
    }
    for (k, x) in [("tau_u", c.tau_u), ("tau_d", c.tau_d), ("tau_p", c.tau_p), ("duration", c.duration)] {
        check_positive(ps, k, x)?;
    }
    if !(c.warmup >= 0.0) {
        return Err(CliError::validation(ps.field("warmup"), "must be non-negative"));
    }
    ps.clone().finish(&["n_atoms", "pump", "tau_u", "tau_d", "tau_p", "duration", "warmup", "m0"])?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_pendulum_gets_defaults() {
        let s = scenario_from_json(&json!({"model": "pendulum"})).unwrap();
        assert_eq!(s.runs, 20);
        let ModelConfig::Pendulum(c) = &s.model else { panic!() };
        assert_eq!((c.w, c.delta, c.p, c.periods, c.runs), (1e-3, 1e-5, 0.01, 100_000, 20));
    }

    #[test]
    fn bad_q_names_the_field() {
        let err = scenario_from_json(&json!({"model": "diode", "params": {"q": 1.5}})).unwrap_err();
        assert!(matches!(&err, CliError::Validation { field, .. } if field == "params.q"), "{err}");
    }

    #[test]
    fn unknown_model_lists_valid_ones() {
        let err = scenario_from_json(&json!({"model": "maser"})).unwrap_err().to_string();
        for m in MODELS {
            assert!(err.contains(m), "{err}");
        }
    }

    #[test]
    fn unknown_param_rejected() {
        let err = scenario_from_json(&json!({"model": "cavity", "params": {"atoms": 3}})).unwrap_err();
        assert!(err.to_string().contains("params.atoms"));
    }

    #[test]
    fn resolved_json_round_trips() {
        for m in MODELS {
            let s = scenario_from_json(&json!({"model": m, "seed": 7, "runs": 3, "analysis": {"window": [1.0]}})).unwrap();
            assert_eq!(scenario_from_json(&s.to_json()).unwrap(), s);
        }
        let s = scenario_from_json(&json!({"model": "diode", "params": {"tau_p": "inf", "pump_period": null}})).unwrap();
        assert_eq!(scenario_from_json(&s.to_json()).unwrap(), s);
    }
}
