//! Adaptive Gauss–Kronrod (7/15) quadrature with global error bisection.

use super::MathError;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Integrate `f` over the finite interval [a, b].
///
/// Stops when the summed error estimate is below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64, MathError> {
    if a == b {
        return Ok(0.0);
    }
    let mut segs = vec![{
        let (v, e) = gk15(&f, a, b);
        (a, b, v, e)
    }];
    for _ in 0..5000 {
        let total: f64 = segs.iter().map(|s| s.2).sum();
        let err: f64 = segs.iter().map(|s| s.3).sum();
        if !total.is_finite() {
            return Err(MathError::QuadratureFailure { error: f64::INFINITY });
        }
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(total);
        }
        let (idx, _) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .unwrap();
        let (lo, hi, _, _) = segs.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        segs.push((lo, mid, v1, e1));
        segs.push((mid, hi, v2, e2));
    }
    let total: f64 = segs.iter().map(|s| s.2).sum();
    let err: f64 = segs.iter().map(|s| s.3).sum();
    if err <= abs_tol.max(rel_tol * total.abs()) {
        Ok(total)
    } else {
        Err(MathError::QuadratureFailure { error: err })
    }
}

/// Integrate over [a, ∞) with the map x = a + t/(1−t).
pub fn integrate_semi<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64, MathError> {
    integrate(
        |t: f64| {
            if t >= 1.0 {
                return 0.0;
            }
            let u = 1.0 - t;
            let v = f(a + t / u) / (u * u);
            if v.is_finite() { v } else { 0.0 }
        },
        0.0,
        1.0,
        abs_tol,
        rel_tol,
    )
}

/// Integrate over the whole real line, split at `center`.
pub fn integrate_line<F: Fn(f64) -> f64>(
    f: F,
    center: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64, MathError> {
    let right = integrate_semi(&f, center, abs_tol / 2.0, rel_tol)?;
    let left = integrate_semi(|x| f(2.0 * center - x), center, abs_tol / 2.0, rel_tol)?;
    Ok(left + right)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_transcendental() {
        let v = integrate(|x| x * x, 0.0, 3.0, 1e-13, 1e-13).unwrap();
        assert!((v - 9.0).abs() < 1e-12);
        let v = integrate(f64::sin, 0.0, std::f64::consts::PI, 1e-12, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-11);
        let v = integrate(|x: f64| x.sqrt(), 0.0, 1.0, 1e-10, 1e-10).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn infinite_ranges() {
        let v = integrate_semi(|x: f64| (-x).exp(), 0.0, 1e-12, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
        let v = integrate_line(|x| 1.0 / (1.0 + x * x), 0.3, 1e-11, 1e-11).unwrap();
        assert!((v - std::f64::consts::PI).abs() < 1e-9);
    }
}
