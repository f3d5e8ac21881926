use std::f64::consts::PI;

use super::{quad, MathError};

/// Index pairs with a tabulated closed form.
pub const IMN_PAIRS: [(u32, u32); 9] =
    [(1, 0), (1, 2), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2), (3, 3), (3, 4)];

/// Closed forms of I_mn = 8(g²+y²)^m ∫ w(x−y) xⁿ/(1+x²)^m dx with the
/// Lorentzian weight w(x) = ((g−1)/π)/((g−1)² + x²).
pub fn imn_integral(m: u32, n: u32, g: f64, y: f64) -> Result<f64, MathError> {
    if !(g > 1.0) {
        return Err(MathError::InvalidArgument(format!("g must exceed 1, got {g}")));
    }
    let (g2, g3, y2) = (g * g, g * g * g, y * y);
    let y4 = y2 * y2;
    let v = match (m, n) {
        (1, 0) => 8.0 * g,
        (1, 2) => 8.0 * y2 + 8.0 * g * (g - 1.0),
        (2, 0) => 4.0 * y2 * (g - 1.0) + 4.0 * g2 * (g + 1.0),
        (2, 1) => 8.0 * g * y,
        (3, 0) => {
            3.0 * (g - 1.0) * y4 + 6.0 * g * (g2 - 1.0) * y2 + g3 * (3.0 * g2 + 3.0 * g + 2.0)
        }
        (3, 1) => 2.0 * y * (y2 * (g - 1.0) + g2 * (g + 3.0)),
        (3, 2) => (g - 1.0) * y4 + 2.0 * g * (g2 + 3.0) * y2 + g3 * (g - 1.0) * (g + 2.0),
        (3, 3) => 2.0 * y * ((3.0 * g + 1.0) * y2 + 3.0 * g2 * (g - 1.0)),
        (3, 4) => {
            (3.0 * g + 5.0) * y4 + 6.0 * g * (g2 - 1.0) * y2 + g3 * (3.0 * g - 2.0) * (g - 1.0)
        }
        _ => return Err(MathError::UnsupportedIndexPair { m, n }),
    };
    Ok(v)
}

/// Direct adaptive quadrature of the defining integral, any m ≥ 1, n < 2m+1.
pub fn imn_quadrature(m: u32, n: u32, g: f64, y: f64) -> Result<f64, MathError> {
    if !(g > 1.0) {
        return Err(MathError::InvalidArgument(format!("g must exceed 1, got {g}")));
    }
    if m == 0 || n >= 2 * m + 1 {
        return Err(MathError::UnsupportedIndexPair { m, n });
    }
    let h = g - 1.0;
    let f = |x: f64| {
        let w = (h / PI) / (h * h + (x - y) * (x - y));
        w * x.powi(n as i32) / (1.0 + x * x).powi(m as i32)
    };
    let body = quad::integrate_line(f, y, 1e-13, 1e-12)?;
    Ok(8.0 * (g * g + y * y).powi(m as i32) * body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_entries() {
        assert_eq!(imn_integral(1, 0, 1.7, 0.4).unwrap(), 8.0 * 1.7);
        assert_eq!(imn_integral(2, 1, 1.7, 0.4).unwrap(), 8.0 * 1.7 * 0.4);
        assert!(matches!(imn_integral(2, 2, 1.7, 0.4), Err(MathError::UnsupportedIndexPair { .. })));
        assert!(imn_integral(1, 0, 1.0, 0.4).is_err());
    }

    #[test]
    fn closed_forms_agree_with_quadrature() {
        for &(m, n) in &IMN_PAIRS {
            for &(g, y) in &[(1.5, 0.3), (2.7, -1.2), (1.1, 2.0)] {
                let a = imn_integral(m, n, g, y).unwrap();
                let b = imn_quadrature(m, n, g, y).unwrap();
                assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0), "I{m}{n}({g},{y}): {a} vs {b}");
            }
        }
    }
}
