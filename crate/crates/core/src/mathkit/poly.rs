//! Dense real polynomials stored in ascending powers: `c[0] + c[1] p + ...`.

use num_complex::Complex64;

/// Drop trailing (highest-power) zero coefficients.
#[must_use]
pub fn trim(c: &[f64]) -> Vec<f64> {
    let mut v = c.to_vec();
    while v.len() > 1 && *v.last().unwrap() == 0.0 {
        v.pop();
    }
    v
}

#[must_use]
pub fn degree(c: &[f64]) -> usize {
    trim(c).len().saturating_sub(1)
}

#[must_use]
pub fn eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * x + k)
}

#[must_use]
pub fn eval_c(c: &[f64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &k| acc * z + k)
}

#[must_use]
pub fn derivative(c: &[f64]) -> Vec<f64> {
    if c.len() <= 1 {
        return vec![0.0];
    }
    c.iter().enumerate().skip(1).map(|(i, &k)| k * i as f64).collect()
}

#[must_use]
pub fn add(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len().max(y.len());
    (0..n)
        .map(|i| x.get(i).copied().unwrap_or(0.0) + y.get(i).copied().unwrap_or(0.0))
        .collect()
}

#[must_use]
pub fn scale(x: &[f64], k: f64) -> Vec<f64> {
    x.iter().map(|v| v * k).collect()
}

#[must_use]
pub fn mul(x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Expand `prod (p - r_k)` for real roots.
#[must_use]
pub fn from_roots(roots: &[f64]) -> Vec<f64> {
    roots.iter().fold(vec![1.0], |acc, &r| mul(&acc, &[-r, 1.0]))
}

/// Divide by `p` after removing the constant term; used when a polynomial is
/// known to vanish at the origin. Returns the quotient and the dropped constant.
#[must_use]
pub fn deflate_origin(c: &[f64]) -> (Vec<f64>, f64) {
    if c.len() <= 1 {
        return (vec![0.0], c.first().copied().unwrap_or(0.0));
    }
    (c[1..].to_vec(), c[0])
}

#[must_use]
pub fn norm_inf(c: &[f64]) -> f64 {
    c.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_and_eval() {
        let c = from_roots(&[1.0, 2.0, 3.0]);
        assert_eq!(c, vec![-6.0, 11.0, -6.0, 1.0]);
        assert_eq!(eval(&c, 2.0), 0.0);
        assert_eq!(derivative(&c), vec![11.0, -12.0, 3.0]);
        assert_eq!(degree(&[1.0, 2.0, 0.0, 0.0]), 1);
    }
}
