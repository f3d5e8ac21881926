use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

/// Exact partition counts p(0..=r_max).
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionTable {
    pub r_max: usize,
    pub values: Vec<BigUint>,
}

impl PartitionTable {
    #[must_use]
    pub fn get(&self, r: usize) -> &BigUint {
        &self.values[r]
    }

    #[must_use]
    pub fn get_f64(&self, r: usize) -> f64 {
        self.values[r].to_f64().unwrap_or(f64::INFINITY)
    }
}

/// p(r) for r ≤ r_max from the pentagonal-number recurrence
/// p(r) = Σ_k (−1)^{k+1} [p(r − k(3k−1)/2) + p(r − k(3k+1)/2)].
#[must_use]
pub fn partitions(r_max: usize) -> PartitionTable {
    let mut p: Vec<BigInt> = Vec::with_capacity(r_max + 1);
    p.push(BigInt::one());
    for r in 1..=r_max {
        let mut acc = BigInt::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > r {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[r - g1].clone();
            if g2 <= r {
                term += &p[r - g2];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
            k += 1;
        }
        p.push(acc);
    }
    PartitionTable {
        r_max,
        values: p.into_iter().map(|v| v.to_biguint().expect("partition counts are positive")).collect(),
    }
}

/// Large-r estimate exp(π√(2r/3)) / (4r√3).
#[must_use]
pub fn partition_asymptotic(r: f64) -> f64 {
    (std::f64::consts::PI * (2.0 * r / 3.0).sqrt()).exp() / (4.0 * r * 3f64.sqrt())
}

/// Coefficients of the gaussian polynomial ∏_{n=1}^{b} (1 − x^{a+n})/(1 − x^n).
/// Coefficient r counts partitions of r into at most a parts none exceeding b.
#[must_use]
pub fn gaussian_polynomial(a: usize, b: usize) -> Vec<BigUint> {
    let len = a * b + 1;
    let mut c: Vec<BigInt> = vec![BigInt::zero(); len];
    c[0] = BigInt::one();
    for n in 1..=b {
        // multiply by (1 − x^{a+n}); the degree stays within a·b overall
        let s = a + n;
        for k in (s..len).rev() {
            let t = c[k - s].clone();
            c[k] -= t;
        }
        // divide by (1 − x^n): c'[k] = c[k] + c'[k − n]
        for k in n..len {
            let t = c[k - n].clone();
            c[k] += t;
        }
    }
    c.into_iter().map(|v| v.to_biguint().expect("gaussian coefficients are nonnegative")).collect()
}

#[must_use]
pub fn bounded_partitions(a: usize, b: usize, r: usize) -> BigUint {
    if r > a * b {
        return BigUint::zero();
    }
    gaussian_polynomial(a, b).swap_remove(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent count: at most `a` parts, each ≤ `b`, via
    /// P(a,b) = P(a−1,b) + x^a P(a,b−1).
    fn pascal(a: usize, b: usize, r: usize) -> u64 {
        if r == 0 {
            return 1;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let mut v = pascal(a - 1, b, r);
        if r >= a {
            v += pascal(a, b - 1, r - a);
        }
        v
    }

    #[test]
    fn small_values() {
        let t = partitions(100);
        assert_eq!(t.get(6), &BigUint::from(11u32));
        assert_eq!(t.get(0), &BigUint::one());
        assert_eq!(t.get(100), &"190569292".parse::<BigUint>().unwrap());
        let ratio = t.get_f64(100) / partition_asymptotic(100.0);
        assert!(ratio > 0.95 && ratio < 1.05, "{ratio}");
    }

    #[test]
    fn beyond_u64() {
        let t = partitions(500);
        assert!(t.get(500).bits() > 64);
        assert_eq!(
            t.get(500),
            &"2300165032574323995027".parse::<BigUint>().unwrap()
        );
    }

    #[test]
    fn euler_recurrence_holds() {
        let t = partitions(300);
        let p: Vec<BigInt> = t.values.iter().map(|v| BigInt::from(v.clone())).collect();
        for r in 1..=300usize {
            let mut acc = BigInt::zero();
            for k in 1..=r {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                let g1 = k * (3 * k - 1) / 2;
                let g2 = k * (3 * k + 1) / 2;
                if g1 <= r {
                    acc += sign * &p[r - g1];
                }
                if g2 <= r {
                    acc += sign * &p[r - g2];
                }
            }
            assert_eq!(acc, p[r]);
        }
    }

    #[test]
    fn bounded_examples() {
        assert_eq!(bounded_partitions(3, 3, 3), BigUint::from(3u32));
        for r in 0..8 {
            let want = if r <= 5 { 1u32 } else { 0 };
            assert_eq!(bounded_partitions(1, 5, r), BigUint::from(want));
        }
        for a in 0..6 {
            for b in 0..6 {
                let g = gaussian_polynomial(a, b);
                for (r, c) in g.iter().enumerate() {
                    assert_eq!(c.to_u64().unwrap(), pascal(a, b, r), "a={a} b={b} r={r}");
                }
            }
        }
    }

    #[test]
    fn moments_match_closed_form() {
        for (n, big_b) in [(3usize, 8usize), (5, 12), (7, 14)] {
            let g = gaussian_polynomial(n, big_b - n);
            let (mut s0, mut s1, mut s2) = (BigUint::zero(), BigUint::zero(), BigUint::zero());
            for (r, c) in g.iter().enumerate() {
                s0 += c;
                s1 += c * BigUint::from(r);
                s2 += c * BigUint::from(r * r);
            }
            // mean = N(B−N)/2 and var = mean·(B+1)/6, checked in integers
            let mean_num = n * (big_b - n);
            assert_eq!(&s1 * 2u32, &s0 * BigUint::from(mean_num));
            // var·s0² = s2·s0 − s1²; var = N(B−N)(B+1)/12
            let lhs = (&s2 * &s0 - &s1 * &s1) * 12u32;
            let rhs = &s0 * &s0 * BigUint::from(mean_num * (big_b + 1));
            assert_eq!(lhs, rhs);
        }
    }
}
