use num_complex::Complex64;

use super::PointProcError;
use crate::mathkit::{poly, quad};

/// Ratio of real polynomials in p, ascending coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalLaplace {
    pub numerator: Vec<f64>,
    pub denominator: Vec<f64>,
}

impl RationalLaplace {
    #[must_use]
    pub fn new(numerator: Vec<f64>, denominator: Vec<f64>) -> Self {
        Self { numerator, denominator }
    }

    #[must_use]
    pub fn eval(&self, p: Complex64) -> Complex64 {
        poly::eval_c(&self.numerator, p) / poly::eval_c(&self.denominator, p)
    }

    /// −w′(0); the mean waiting time when w is a proper transform.
    #[must_use]
    pub fn mean(&self) -> f64 {
        let (n0, d0) = (coef(&self.numerator, 0), coef(&self.denominator, 0));
        let (n1, d1) = (coef(&self.numerator, 1), coef(&self.denominator, 1));
        (n0 * d1 - n1 * d0) / (d0 * d0)
    }

    /// Checks degree, w(0) = 1 and a positive finite mean.
    pub fn validate(&self) -> Result<(), PointProcError> {
        let dn = poly::degree(&self.numerator);
        let dd = poly::degree(&self.denominator);
        if coef(&self.denominator, 0) == 0.0 {
            return Err(PointProcError::ImproperWaitingTime("denominator vanishes at p = 0".into()));
        }
        if dn > dd {
            return Err(PointProcError::ImproperWaitingTime(
                "numerator degree exceeds denominator degree".into(),
            ));
        }
        let w0 = coef(&self.numerator, 0) / coef(&self.denominator, 0);
        if (w0 - 1.0).abs() > 1e-10 {
            return Err(PointProcError::ImproperWaitingTime(format!("w(0) = {w0}, expected 1")));
        }
        let m = self.mean();
        if !(m > 0.0 && m.is_finite()) {
            return Err(PointProcError::ImproperWaitingTime(format!("mean waiting time {m}")));
        }
        Ok(())
    }
}

fn coef(c: &[f64], k: usize) -> f64 {
    c.get(k).copied().unwrap_or(0.0)
}

/// S(Ω)/R for the renewal process with waiting-time transform `w`.
///
/// With w = A/B and B − A = p·Q, G = w/(1−w) = A/(pQ) has residue R = A(0)/Q(0)
/// at the origin. Removing it leaves H = (A − R·Q)/(pQ), an exact polynomial
/// quotient, and S/R = 1 + 2 Re H(jΩ).
pub fn renewal_spectrum(w: &RationalLaplace, rate: f64, omegas: &[f64]) -> Result<Vec<f64>, PointProcError> {
    w.validate()?;
    if !(rate > 0.0) {
        return Err(PointProcError::ZeroRate);
    }
    let a = poly::trim(&w.numerator);
    let b = poly::trim(&w.denominator);
    let scale = b[0];
    let a: Vec<f64> = a.iter().map(|x| x / scale).collect();
    let b: Vec<f64> = b.iter().map(|x| x / scale).collect();
    let diff = poly::add(&b, &poly::scale(&a, -1.0));
    // diff(0) = 0 up to rounding; drop it to divide by p
    let q: Vec<f64> = diff.iter().skip(1).copied().collect();
    let residue = a[0] / q[0];
    if (residue - rate).abs() > 1e-8 * rate {
        return Err(PointProcError::ImproperWaitingTime(format!(
            "rate {rate} disagrees with 1/mean = {residue}"
        )));
    }
    let top = poly::add(&a, &poly::scale(&q, -residue));
    let nr: Vec<f64> = top.iter().skip(1).copied().collect();
    Ok(omegas
        .iter()
        .map(|&om| {
            let p = Complex64::new(0.0, om);
            let h = poly::eval_c(&nr, p) / poly::eval_c(&q, p);
            1.0 + 2.0 * h.re
        })
        .collect())
}

/// Piecewise-linear rate λ(t) on a grid, held at its last value beyond it.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedRate {
    ts: Vec<f64>,
    values: Vec<f64>,
    cumulative: Vec<f64>,
}

impl TabulatedRate {
    pub fn new(ts: Vec<f64>, values: Vec<f64>) -> Result<Self, PointProcError> {
        if ts.is_empty() || ts.len() != values.len() || ts[0] != 0.0 {
            return Err(PointProcError::InvalidArgument("grid must start at 0 and match values".into()));
        }
        if ts.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(PointProcError::InvalidArgument("grid must be strictly increasing".into()));
        }
        if let Some(&v) = values.iter().find(|v| !(**v >= 0.0)) {
            return Err(PointProcError::NegativeDensity(v));
        }
        if *values.last().expect("nonempty") == 0.0 {
            return Err(PointProcError::InvalidArgument("rate must not vanish at large t".into()));
        }
        let mut cumulative = vec![0.0];
        for i in 1..ts.len() {
            let c = cumulative[i - 1] + 0.5 * (values[i] + values[i - 1]) * (ts[i] - ts[i - 1]);
            cumulative.push(c);
        }
        Ok(Self { ts, values, cumulative })
    }

    #[must_use]
    pub fn grid(&self) -> &[f64] {
        &self.ts
    }

    #[must_use]
    pub fn rate(&self, t: f64) -> f64 {
        let i = self.ts.partition_point(|&x| x <= t);
        if i >= self.ts.len() {
            return *self.values.last().expect("nonempty");
        }
        let (t0, t1) = (self.ts[i - 1], self.ts[i]);
        let (v0, v1) = (self.values[i - 1], self.values[i]);
        v0 + (v1 - v0) * (t - t0) / (t1 - t0)
    }

    /// ∫₀ᵗ λ, exact for the interpolant.
    #[must_use]
    pub fn integral(&self, t: f64) -> f64 {
        let i = self.ts.partition_point(|&x| x <= t).max(1);
        let t0 = self.ts[i - 1];
        let v0 = self.values[i - 1];
        let v = self.rate(t);
        self.cumulative[i - 1] + 0.5 * (v0 + v) * (t - t0)
    }
}

/// w(t) = λ(t)·exp(−∫₀ᵗ λ).
pub fn inhom_poisson_waiting(lambda: &TabulatedRate, t: f64) -> Result<f64, PointProcError> {
    if !(t >= 0.0) {
        return Err(PointProcError::InvalidArgument(format!("time must be nonnegative, got {t}")));
    }
    Ok(lambda.rate(t) * (-lambda.integral(t)).exp())
}

/// λ(t) = w(t)/(1 − ∫₀ᵗ w), the inverse map. `breakpoints` are points where
/// w may have kinks; the quadrature is split there.
pub fn inhom_poisson_rate(
    w: impl Fn(f64) -> f64,
    t: f64,
    breakpoints: &[f64],
) -> Result<f64, PointProcError> {
    if !(t >= 0.0) {
        return Err(PointProcError::InvalidArgument(format!("time must be nonnegative, got {t}")));
    }
    let mut edges = vec![0.0];
    edges.extend(breakpoints.iter().copied().filter(|&b| b > 0.0 && b < t));
    edges.push(t);
    let mut mass = 0.0;
    for e in edges.windows(2) {
        mass += quad::integrate(&w, e[0], e[1], 1e-15, 1e-13)
            .map_err(|e| PointProcError::InvalidArgument(e.to_string()))?;
    }
    let v = w(t);
    if v < 0.0 {
        return Err(PointProcError::NegativeDensity(v));
    }
    Ok(v / (1.0 - mass))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poisson_is_flat() {
        for r in [1.0, 3.5] {
            let w = RationalLaplace::new(vec![r], vec![r, 1.0]);
            assert!((w.mean() - 1.0 / r).abs() < 1e-15);
            let s = renewal_spectrum(&w, r, &[0.0, 0.5, 4.0]).unwrap();
            for v in s {
                assert!((v - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn gamma_two_against_closed_form() {
        // w = (2/(2+p))², rate 1: S/R = 1 − 2·4/(16+Ω²)... checked against 1 + 2Re[w/(1−w) − 1/p]
        let w = RationalLaplace::new(vec![4.0], vec![4.0, 4.0, 1.0]);
        let oms = [0.1, 1.0, 3.0];
        let s = renewal_spectrum(&w, 1.0, &oms).unwrap();
        for (om, v) in oms.iter().zip(s) {
            let p = Complex64::new(0.0, *om);
            let wp = w.eval(p);
            let g = wp / (1.0 - wp) - 1.0 / p;
            assert!((v - (1.0 + 2.0 * g.re)).abs() < 1e-12);
        }
        // Ω → 0: squared coefficient of variation 1/2
        let s0 = renewal_spectrum(&w, 1.0, &[0.0]).unwrap()[0];
        assert!((s0 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn improper_transforms() {
        let bad = RationalLaplace::new(vec![2.0], vec![1.0, 1.0]);
        assert!(matches!(renewal_spectrum(&bad, 1.0, &[1.0]), Err(PointProcError::ImproperWaitingTime(_))));
        let ok = RationalLaplace::new(vec![1.0], vec![1.0, 1.0]);
        assert!(matches!(renewal_spectrum(&ok, 2.0, &[1.0]), Err(PointProcError::ImproperWaitingTime(_))));
    }

    #[test]
    fn constant_rate_waiting_time() {
        for c in [1.0, 2.5] {
            let l = TabulatedRate::new(vec![0.0, 1.0], vec![c, c]).unwrap();
            for t in [0.0, 0.3, 2.0] {
                let w = inhom_poisson_waiting(&l, t).unwrap();
                assert!((w - c * (-c * t).exp()).abs() < 1e-15);
            }
            let mean = quad::integrate_semi(|t| t * inhom_poisson_waiting(&l, t).unwrap(), 0.0, 1e-13, 1e-11).unwrap();
            assert!((mean - 1.0 / c).abs() < 1e-9);
        }
    }

    #[test]
    fn round_trip_on_grid() {
        let ts: Vec<f64> = (0..=40).map(|k| k as f64 * 0.1).collect();
        let vals: Vec<f64> = ts.iter().map(|t| 0.5 + t * t * (-t).exp() + 0.3 * (3.0 * t).sin().abs()).collect();
        let l = TabulatedRate::new(ts.clone(), vals.clone()).unwrap();
        for (t, v) in ts.iter().zip(&vals) {
            let back = inhom_poisson_rate(|s| inhom_poisson_waiting(&l, s).unwrap(), *t, &ts).unwrap();
            assert!((back - v).abs() < 1e-8, "t={t}: {back} vs {v}");
        }
        assert!(matches!(
            TabulatedRate::new(vec![0.0, 1.0], vec![1.0, -0.1]),
            Err(PointProcError::NegativeDensity(_))
        ));
    }
}
