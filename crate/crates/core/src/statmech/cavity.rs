use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::StatMechError;

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// p(m) = C(N, m)/2^N as exact rationals.
pub fn isolated_cavity_pmf_exact(big_n: usize) -> Result<Vec<BigRational>, StatMechError> {
    if big_n == 0 {
        return Err(StatMechError::InvalidArgument("N must be at least 1".into()));
    }
    let denom = BigInt::one() << big_n;
    Ok(binomial_row(big_n).into_iter().map(|c| BigRational::new(c, denom.clone())).collect())
}

pub fn isolated_cavity_pmf(big_n: usize) -> Result<Vec<f64>, StatMechError> {
    Ok(isolated_cavity_pmf_exact(big_n)?
        .iter()
        .map(|r| r.to_f64().unwrap_or(0.0))
        .collect())
}

/// Photon-number law after adding u quanta to N ground-state atoms, with
/// the Boltzmann comparison built from the fitted temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct AddedEnergyPmf {
    pub pmf: Vec<f64>,
    pub mean_m: f64,
    /// From e^{1/T} = (N − ⟨n⟩)/⟨n⟩; infinite when ⟨n⟩ ≥ N/2, zero when u = 0.
    pub temperature: f64,
    /// (1 − q)q^m with q = e^{−1/T}, same support as `pmf`.
    pub boltzmann: Vec<f64>,
}

pub fn added_energy_pmf(big_n: usize, u: usize) -> Result<AddedEnergyPmf, StatMechError> {
    if u > big_n {
        return Err(StatMechError::InvalidArgument(format!("need u ≤ N, got u={u}, N={big_n}")));
    }
    let row = binomial_row(big_n);
    // weight of m is C(N, u − m)
    let weights: Vec<&BigInt> = (0..=u).map(|m| &row[u - m]).collect();
    let z: BigInt = weights.iter().copied().sum();
    let pmf: Vec<f64> = weights
        .iter()
        .map(|w| BigRational::new((*w).clone(), z.clone()).to_f64().unwrap_or(0.0))
        .collect();
    let mean_m: f64 = pmf.iter().enumerate().map(|(m, p)| m as f64 * p).sum();
    let n_mean = u as f64 - mean_m;
    let (temperature, q) = if u == 0 || n_mean <= 0.0 {
        (0.0, 0.0)
    } else {
        let x = ((big_n as f64 - n_mean) / n_mean).ln();
        if x > 0.0 {
            (1.0 / x, (-x).exp())
        } else {
            (f64::INFINITY, 1.0)
        }
    };
    let boltzmann = (0..=u).map(|m| if q == 0.0 { f64::from(u8::from(m == 0)) } else { (1.0 - q) * q.powi(m as i32) }).collect();
    Ok(AddedEnergyPmf { pmf, mean_m, temperature, boltzmann })
}

#[cfg(test)]
fn exact_moments(p: &[BigRational]) -> (BigRational, BigRational, BigRational) {
    use num_traits::Zero;
    let mut s0 = BigRational::zero();
    let mut s1 = BigRational::zero();
    let mut s2 = BigRational::zero();
    for (m, v) in p.iter().enumerate() {
        let k = BigRational::from_integer(BigInt::from(m));
        s0 += v;
        s1 += v * &k;
        s2 += v * &k * &k;
    }
    (s0, s1, s2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_atoms() {
        let p = isolated_cavity_pmf_exact(2).unwrap();
        assert_eq!(p[0], BigRational::new(1.into(), 4.into()));
        assert_eq!(p[1], BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn exact_moments_up_to_64() {
        for n in [1usize, 7, 30, 64, 100] {
            let p = isolated_cavity_pmf_exact(n).unwrap();
            let (s0, s1, s2) = exact_moments(&p);
            assert!(s0.is_one());
            let mean = BigRational::new(BigInt::from(n), 2.into());
            assert_eq!(s1, mean);
            let var = &s2 - &s1 * &s1;
            assert_eq!(var, BigRational::new(BigInt::from(n), 4.into()));
            // p(0) = 4^{−⟨m⟩}
            let f = isolated_cavity_pmf(n).unwrap();
            assert!((f[0] - 4f64.powf(-(n as f64) / 2.0)).abs() <= 1e-15 * f[0]);
        }
    }

    #[test]
    fn added_energy_table() {
        let a = added_energy_pmf(100, 20).unwrap();
        let want = [0.7578, 0.187, 0.043, 0.009];
        for (p, w) in a.pmf.iter().zip(want) {
            assert!((p - w).abs() < 5e-4, "{p} vs {w}");
        }
        let want_b = [0.754, 0.185, 0.045, 0.01];
        for (p, w) in a.boltzmann.iter().zip(want_b) {
            assert!((p - w).abs() < 1.5e-3, "{p} vs {w}");
        }
        let z = added_energy_pmf(100, 0).unwrap();
        assert_eq!(z.pmf, vec![1.0]);
        assert!(added_energy_pmf(3, 4).is_err());
    }
}
