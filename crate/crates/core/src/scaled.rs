//! Complex numbers carried as `mantissa * exp(exponent)`.
//!
//! Bessel and Hankel values of large order behave like `exp(-nu*rho)` and
//! `exp(+nu*rho)`; their products are O(1) but the factors do not fit in an
//! `f64`. Everything that touches such values goes through this type.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

const LN_2: f64 = std::f64::consts::LN_2;

/// A complex value `mantissa * e^exponent` with `|mantissa|` kept in `[1/2, 2]`.
#[derive(Clone, Copy, PartialEq)]
pub struct ScaledComplex {
    mantissa: Complex64,
    exponent: f64,
}

impl ScaledComplex {
    pub const ZERO: ScaledComplex = ScaledComplex {
        mantissa: Complex64::new(0.0, 0.0),
        exponent: 0.0,
    };

    pub const ONE: ScaledComplex = ScaledComplex {
        mantissa: Complex64::new(1.0, 0.0),
        exponent: 0.0,
    };

    /// Builds `mantissa * e^exponent` and renormalizes.
    pub fn new(mantissa: Complex64, exponent: f64) -> Self {
        let mut s = ScaledComplex { mantissa, exponent };
        s.normalize();
        s
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z, 0.0)
    }

    /// `e^w` without ever forming the (possibly overflowing) modulus.
    pub fn exp(w: Complex64) -> Self {
        Self::new(Complex64::from_polar(1.0, w.im), w.re)
    }

    pub fn mantissa(&self) -> Complex64 {
        self.mantissa
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.re == 0.0 && self.mantissa.im == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.mantissa.re.is_finite() && self.mantissa.im.is_finite() && self.exponent.is_finite()
    }

    /// Natural log of the modulus; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mantissa.norm().ln() + self.exponent
        }
    }

    pub fn arg(&self) -> f64 {
        self.mantissa.arg()
    }

    /// Plain `f64` value; overflows to infinity / underflows to zero outside range.
    pub fn value(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        self.mantissa * self.exponent.exp()
    }

    /// Modulus as a plain `f64` (may be `inf` or `0`).
    pub fn abs(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.mantissa.norm() * self.exponent.exp()
        }
    }

    pub fn conj(&self) -> Self {
        ScaledComplex {
            mantissa: self.mantissa.conj(),
            exponent: self.exponent,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.mantissa * c, self.exponent)
    }

    pub fn recip(&self) -> Self {
        Self::new(self.mantissa.inv(), -self.exponent)
    }

    fn normalize(&mut self) {
        let m = self.mantissa.norm();
        if m == 0.0 {
            self.mantissa = Complex64::new(0.0, 0.0);
            self.exponent = 0.0;
            return;
        }
        if !m.is_finite() {
            // Split huge components before taking the norm.
            let big = self.mantissa.re.abs().max(self.mantissa.im.abs());
            if big.is_finite() {
                self.mantissa /= big;
                self.exponent += big.ln();
                self.normalize();
            }
            return;
        }
        let l = m.ln();
        if l.abs() > LN_2 {
            self.mantissa /= m;
            self.exponent += l;
        }
    }
}

impl From<Complex64> for ScaledComplex {
    fn from(z: Complex64) -> Self {
        Self::from_complex(z)
    }
}

impl From<f64> for ScaledComplex {
    fn from(x: f64) -> Self {
        Self::from_complex(Complex64::new(x, 0.0))
    }
}

impl Mul for ScaledComplex {
    type Output = ScaledComplex;
    fn mul(self, rhs: ScaledComplex) -> ScaledComplex {
        if self.is_zero() || rhs.is_zero() {
            return ScaledComplex::ZERO;
        }
        ScaledComplex::new(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Mul<Complex64> for ScaledComplex {
    type Output = ScaledComplex;
    fn mul(self, rhs: Complex64) -> ScaledComplex {
        self.scale(rhs)
    }
}

impl Mul<f64> for ScaledComplex {
    type Output = ScaledComplex;
    fn mul(self, rhs: f64) -> ScaledComplex {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

impl Div for ScaledComplex {
    type Output = ScaledComplex;
    fn div(self, rhs: ScaledComplex) -> ScaledComplex {
        if self.is_zero() {
            return ScaledComplex::ZERO;
        }
        ScaledComplex::new(self.mantissa / rhs.mantissa, self.exponent - rhs.exponent)
    }
}

impl Add for ScaledComplex {
    type Output = ScaledComplex;
    fn add(self, rhs: ScaledComplex) -> ScaledComplex {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let e = self.exponent.max(rhs.exponent);
        let a = self.mantissa * (self.exponent - e).exp();
        let b = rhs.mantissa * (rhs.exponent - e).exp();
        ScaledComplex::new(a + b, e)
    }
}

impl Sub for ScaledComplex {
    type Output = ScaledComplex;
    fn sub(self, rhs: ScaledComplex) -> ScaledComplex {
        self + (-rhs)
    }
}

impl Neg for ScaledComplex {
    type Output = ScaledComplex;
    fn neg(self) -> ScaledComplex {
        ScaledComplex {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl fmt::Debug for ScaledComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)*e^{}", self.mantissa.re, self.mantissa.im, self.exponent)
    }
}
