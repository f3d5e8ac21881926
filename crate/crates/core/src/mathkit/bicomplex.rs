use std::ops::{Add, Mul, Neg, Sub};

use super::MathError;

/// `a + b i1 + c i2 + d i1 i2` with `i1^2 = i2^2 = -1` and `i1 i2 = i2 i1`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Bicomplex {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Bicomplex {
    pub const ONE: Bicomplex = Bicomplex { a: 1.0, b: 0.0, c: 0.0, d: 0.0 };
    pub const I1: Bicomplex = Bicomplex { a: 0.0, b: 1.0, c: 0.0, d: 0.0 };
    pub const I2: Bicomplex = Bicomplex { a: 0.0, b: 0.0, c: 1.0, d: 0.0 };

    #[must_use]
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    /// The pair (A, B) with A = a²+b²+c²+d², B = 2(ad − bc). The element is
    /// invertible unless A = ±B.
    #[must_use]
    pub fn norms(&self) -> (f64, f64) {
        let s = self;
        (
            s.a * s.a + s.b * s.b + s.c * s.c + s.d * s.d,
            2.0 * (s.a * s.d - s.b * s.c),
        )
    }

    /// Conjugate flipping the sign of both imaginary units.
    #[must_use]
    pub fn conj(&self) -> Self {
        Self::new(self.a, -self.b, -self.c, self.d)
    }

    #[must_use]
    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }

    #[must_use]
    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        [self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d]
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

#[must_use]
pub fn bicomplex_mul(x: Bicomplex, y: Bicomplex) -> Bicomplex {
    // i1 i1 = -1, i2 i2 = -1, (i1 i2)^2 = 1, i1 (i1 i2) = -i2, i2 (i1 i2) = -i1.
    Bicomplex {
        a: x.a * y.a - x.b * y.b - x.c * y.c + x.d * y.d,
        b: x.a * y.b + x.b * y.a - x.c * y.d - x.d * y.c,
        c: x.a * y.c + x.c * y.a - x.b * y.d - x.d * y.b,
        d: x.a * y.d + x.d * y.a + x.b * y.c + x.c * y.b,
    }
}

/// Inverse via x·conj(x) = A + B i1i2 and (A + B j)(A − B j) = A² − B².
pub fn bicomplex_invert(x: Bicomplex) -> Result<Bicomplex, MathError> {
    let (a, b) = x.norms();
    if a == 0.0 || (a - b.abs()).abs() < 1e-12 * a {
        return Err(MathError::SingularBicomplex { a, b });
    }
    let k = Bicomplex::new(a, 0.0, 0.0, -b).scale(1.0 / (a * a - b * b));
    Ok(bicomplex_mul(x.conj(), k))
}

impl Mul for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, rhs: Bicomplex) -> Bicomplex {
        bicomplex_mul(self, rhs)
    }
}

impl Add for Bicomplex {
    type Output = Bicomplex;
    fn add(self, o: Bicomplex) -> Bicomplex {
        Bicomplex::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;
    fn sub(self, o: Bicomplex) -> Bicomplex {
        Bicomplex::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Bicomplex {
    type Output = Bicomplex;
    fn neg(self) -> Bicomplex {
        self.scale(-1.0)
    }
}
