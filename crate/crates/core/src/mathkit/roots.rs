use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{poly, MathError};

/// Roots of a real polynomial, repeated according to multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRoots {
    pub roots: Vec<Complex64>,
    /// `repeated[k]` is true when root k coincides (within 1e-6 relative)
    /// with another listed root.
    pub repeated: Vec<bool>,
    /// Largest |f(root)| over the roots.
    pub residual: f64,
    /// True when the closed form was rejected in favour of the eigen solve.
    pub used_fallback: bool,
}

impl PolyRoots {
    fn build(coeffs: &[f64], roots: Vec<Complex64>, used_fallback: bool) -> Self {
        let residual = roots
            .iter()
            .map(|r| poly::eval_c(coeffs, *r).norm())
            .fold(0.0, f64::max);
        let repeated = (0..roots.len())
            .map(|i| {
                (0..roots.len()).any(|j| {
                    j != i && (roots[i] - roots[j]).norm() <= 1e-6 * roots[i].norm().max(1.0)
                })
            })
            .collect();
        Self { roots, repeated, residual, used_fallback }
    }

    /// Real parts of roots whose imaginary part is negligible.
    #[must_use]
    pub fn real_roots(&self, tol: f64) -> Vec<f64> {
        let mut v: Vec<f64> =
            self.roots.iter().filter(|r| r.im.abs() <= tol).map(|r| r.re).collect();
        v.sort_by(f64::total_cmp);
        v
    }
}

/// Roots of `a p² + b p + c`.
pub fn solve_quadratic(a: f64, b: f64, c: f64) -> Result<PolyRoots, MathError> {
    if a == 0.0 {
        return Err(MathError::DegenerateLeadingCoefficient);
    }
    let disc = Complex64::new(b * b - 4.0 * a * c, 0.0).sqrt();
    // Pick the sign that avoids cancellation, then recover the partner root
    // from the product c/a.
    let q = if b >= 0.0 { -(b + disc) / 2.0 } else { -(b - disc) / 2.0 };
    let (r1, r2) = if q.norm() == 0.0 {
        (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    } else {
        (q / a, Complex64::new(c, 0.0) / q)
    };
    let mut roots = vec![r1, r2];
    roots.sort_by(|x, y| x.re.total_cmp(&y.re).then(y.im.total_cmp(&x.im)));
    Ok(PolyRoots::build(&[c, b, a], roots, false))
}

/// Roots of monic `p³ + a2 p² + a1 p + a0` through the Cardano sequence
/// q, r, s, s1, s2. The result is residual-checked and replaced by a
/// companion-matrix eigen solve when the closed form is inaccurate.
pub fn solve_cubic(a2: f64, a1: f64, a0: f64) -> Result<PolyRoots, MathError> {
    let coeffs = [a0, a1, a2, 1.0];
    let q = a1 / 3.0 - a2 * a2 / 9.0;
    let r = a1 * a2 / 6.0 - a0 / 2.0 - a2 * a2 * a2 / 27.0;
    let s = Complex64::new(q * q * q + r * r, 0.0).sqrt();
    let s1 = (s + r).powf(1.0 / 3.0);
    let mut s2 = (s - r).powf(1.0 / 3.0);
    // s1·s2 must equal q for the three combinations below to be roots;
    // principal cube roots can land on the wrong branch of s2.
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    if s1.norm() > 0.0 {
        let target = Complex64::new(q, 0.0) / s1;
        let cands = [s2, s2 * w, s2 * w * w];
        s2 = *cands
            .iter()
            .min_by(|x, y| (**x - target).norm().total_cmp(&(**y - target).norm()))
            .unwrap();
    }
    let shift = a2 / 3.0;
    // Depressed cubic x³ + 3qx − 2r = 0 with x = u − q/u, u³ = r + s.
    let roots: Vec<Complex64> = [Complex64::new(1.0, 0.0), w, w * w]
        .iter()
        .map(|k| s1 * k - s2 * k.conj() - shift)
        .collect();
    let out = PolyRoots::build(&coeffs, sort_roots(roots), false);
    if out.residual <= 1e-8 * poly::norm_inf(&coeffs).max(1.0) {
        return Ok(out);
    }
    let r = companion_roots(&coeffs)?;
    Ok(PolyRoots { used_fallback: true, ..r })
}

fn sort_roots(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|x, y| x.re.total_cmp(&y.re).then(y.im.total_cmp(&x.im)));
    v
}

/// Eigenvalues of the companion matrix of a real polynomial (ascending
/// coefficients), followed by two Newton polishing steps per root.
pub fn companion_roots(coeffs: &[f64]) -> Result<PolyRoots, MathError> {
    let c = poly::trim(coeffs);
    let n = c.len() - 1;
    if n == 0 {
        return Err(MathError::InvalidArgument("constant polynomial has no roots".into()));
    }
    let lead = c[n];
    if lead == 0.0 {
        return Err(MathError::DegenerateLeadingCoefficient);
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    let dc = poly::derivative(&c);
    let roots: Vec<Complex64> = m
        .complex_eigenvalues()
        .iter()
        .map(|z0| {
            let mut z = *z0;
            for _ in 0..2 {
                let fz = poly::eval_c(&c, z);
                let step = fz / poly::eval_c(&dc, z);
                // near a multiple root f′ is rounding noise; keep only improving steps
                if step.is_finite() && poly::eval_c(&c, z - step).norm() < fz.norm() {
                    z -= step;
                }
            }
            z
        })
        .collect();
    Ok(PolyRoots::build(&c, sort_roots(roots), true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Complex64, re: f64, im: f64) -> bool {
        (a - Complex64::new(re, im)).norm() < 1e-9
    }

    #[test]
    fn quadratic_examples() {
        let r = solve_quadratic(1.0, 0.0, -1.0).unwrap();
        assert!(close(r.roots[0], -1.0, 0.0) && close(r.roots[1], 1.0, 0.0));
        let r = solve_quadratic(1.0, -3.0, 2.0).unwrap();
        assert_eq!(r.real_roots(1e-12), vec![1.0, 2.0]);
        let r = solve_quadratic(1.0, 0.0, 1.0).unwrap();
        assert!(close(r.roots[0], 0.0, 1.0) && close(r.roots[1], 0.0, -1.0));
        assert_eq!(solve_quadratic(0.0, 1.0, 1.0), Err(MathError::DegenerateLeadingCoefficient));
    }

    #[test]
    fn cubic_examples() {
        let r = solve_cubic(0.0, 0.0, -1.0).unwrap();
        let h = 3f64.sqrt() / 2.0;
        assert!(r.roots.iter().any(|z| close(*z, 1.0, 0.0)));
        assert!(r.roots.iter().any(|z| close(*z, -0.5, h)));
        assert!(r.roots.iter().any(|z| close(*z, -0.5, -h)));

        let c = poly::from_roots(&[1.0, 2.0, 3.0]);
        let r = solve_cubic(c[2], c[1], c[0]).unwrap();
        let re = r.real_roots(1e-7);
        for (got, want) in re.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-7, "{re:?}");
        }

        let r = solve_cubic(0.0, 0.0, 0.0).unwrap();
        assert!(r.roots.iter().all(|z| z.norm() < 1e-12));
        assert!(r.repeated.iter().all(|&f| f));
    }

    #[test]
    fn cubic_closed_form_is_fast_path_for_generic_input() {
        let r = solve_cubic(3.0, 2.5, 0.7).unwrap();
        assert!(!r.used_fallback);
        assert!(r.residual < 1e-12);
    }

    #[test]
    fn companion_matches_known_roots() {
        let c = poly::from_roots(&[-4.0, -1.0, 0.5, 2.0]);
        let r = companion_roots(&c).unwrap();
        let re = r.real_roots(1e-9);
        for (got, want) in re.iter().zip([-4.0, -1.0, 0.5, 2.0]) {
            assert!((got - want).abs() < 1e-10);
        }
    }

    proptest! {
        #[test]
        fn cubic_residuals(a2 in -20.0..20.0f64, a1 in -20.0..20.0f64, a0 in -20.0..20.0f64) {
            let r = solve_cubic(a2, a1, a0).unwrap();
            prop_assert_eq!(r.roots.len(), 3);
            let tol = 1e-9 * [a0, a1, a2, 1.0f64].iter().fold(1.0f64, |m, v| m.max(v.abs()));
            for z in &r.roots {
                prop_assert!(poly::eval_c(&[a0, a1, a2, 1.0], *z).norm() <= tol);
            }
        }

        #[test]
        fn quadratic_residuals(a in 0.1..10.0f64, b in -20.0..20.0f64, c in -20.0..20.0f64) {
            let r = solve_quadratic(a, b, c).unwrap();
            let tol = 1e-9 * [a, b, c, 1.0f64].iter().fold(1.0f64, |m, v| m.max(v.abs()));
            for z in &r.roots {
                prop_assert!(poly::eval_c(&[c, b, a], *z).norm() <= tol);
            }
        }
    }
}
