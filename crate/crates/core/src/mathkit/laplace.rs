use super::{companion_roots, poly, MathError};

/// Inverse Laplace transform of `1/f(p)` at time `t` by the Heaviside
/// expansion `sum_k exp(p_k t) / f'(p_k)` over the simple roots of `f`.
///
/// `f` holds ascending coefficients. Fails when two roots are closer than
/// 1e-6 relative (a double root splits by about √ε once computed).
pub fn heaviside_inverse_laplace(f: &[f64], t: f64) -> Result<f64, MathError> {
    let f = poly::trim(f);
    if f.len() < 2 {
        return Err(MathError::InvalidArgument("f must have degree at least 1".into()));
    }
    let roots = companion_roots(&f)?.roots;
    let mut sep = f64::INFINITY;
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            let scale = roots[i].norm().max(roots[j].norm()).max(1.0);
            sep = sep.min((roots[i] - roots[j]).norm() / scale);
        }
    }
    if sep < 1e-6 {
        return Err(MathError::RepeatedRoots { separation: sep });
    }
    let df = poly::derivative(&f);
    let sum = roots
        .iter()
        .map(|p| (p * t).exp() / poly::eval_c(&df, *p))
        .fold(num_complex::Complex64::new(0.0, 0.0), |a, b| a + b);
    let tol = 1e-8 * sum.norm().max(1.0);
    if sum.im.abs() > tol {
        return Err(MathError::InvalidArgument(format!(
            "imaginary residue {:e} exceeds tolerance",
            sum.im
        )));
    }
    Ok(sum.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let v = heaviside_inverse_laplace(&[1.0, 1.0], 0.7).unwrap();
        assert!((v - (-0.7f64).exp()).abs() < 1e-14);
        // (p+1)(p+2) = p² + 3p + 2
        let v = heaviside_inverse_laplace(&[2.0, 3.0, 1.0], 0.0).unwrap();
        assert!(v.abs() < 1e-14);
        let v = heaviside_inverse_laplace(&[1.0, 0.0, 1.0], std::f64::consts::FRAC_PI_2).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        assert!(matches!(
            heaviside_inverse_laplace(&[1.0, 2.0, 1.0], 1.0),
            Err(MathError::RepeatedRoots { .. })
        ));
    }

    proptest! {
        #[test]
        fn single_pole(lambda in 0.01..20.0f64) {
            for k in 0..10 {
                let t = 0.3 * k as f64;
                let v = heaviside_inverse_laplace(&[lambda, 1.0], t).unwrap();
                prop_assert!((v - (-lambda * t).exp()).abs() < 1e-10);
            }
        }
    }
}
