//! Airy function `Ai` and its derivative.
//!
//! Maclaurin series in double-double arithmetic for `|w| <= 8`; the
//! exponential asymptotic expansion for larger `|w|` with `|arg w| <= 2pi/3`;
//! the connection formula `Ai(w) = -omega Ai(omega w) - omega^2 Ai(omega^2 w)`
//! near the negative real axis.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Result};

/// Largest `|w|` accepted by [`airy_ai`] / [`airy_ai_prime`].
pub const AIRY_MAX_ABS: f64 = 100.0;
const MACLAURIN_RADIUS: f64 = 8.0;

// Ai(0) and -Ai'(0) as double-double pairs.
const AI0: Dd = Dd::new(0.3550280538878172, 2.05233632436212e-17);
const MINUS_AIP0: Dd = Dd::new(0.2588194037928068, -2.522243111610832e-17);

/// `w` together with `xi = (2/3) w^{3/2}` (principal branch).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryArgument {
    pub w: Complex64,
    pub xi: Complex64,
}

impl AiryArgument {
    pub fn new(w: Complex64) -> Self {
        let xi = if w.norm() == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            (2.0 / 3.0) * (1.5 * w.ln()).exp()
        };
        AiryArgument { w, xi }
    }
}

/// Coefficients of the exponential asymptotic series of `Ai` and `Ai'`.
#[derive(Clone, Debug, PartialEq)]
pub struct AiryCoefficients {
    pub c: Vec<f64>,
    pub d: Vec<f64>,
}

impl AiryCoefficients {
    /// `c_j, d_j` for `j = 0..count`.
    ///
    /// `c_j = (-1)^j (2j+1)(2j+3)...(6j-1) / (j! 216^j)`, `d_j = -(6j+1)/(6j-1) c_j`.
    pub fn new(count: usize) -> Self {
        let mut c = Vec::with_capacity(count);
        let mut d = Vec::with_capacity(count);
        for j in 0..count {
            let mut cj = if j % 2 == 0 { 1.0 } else { -1.0 };
            let mut odd = 2 * j + 1;
            while odd < 6 * j {
                cj *= odd as f64;
                odd += 2;
            }
            for i in 1..=j {
                cj /= i as f64 * 216.0;
            }
            c.push(cj);
            d.push(if j == 0 {
                1.0
            } else {
                -((6 * j + 1) as f64) / ((6 * j - 1) as f64) * cj
            });
        }
        AiryCoefficients { c, d }
    }
}

/// Partial sums of the exponential expansion of `(Ai(w), Ai'(w))`, keeping
/// the powers `xi^0 .. xi^-terms`.
pub fn airy_asymptotic(arg: AiryArgument, terms: usize) -> Result<(Complex64, Complex64)> {
    if terms > 6 {
        return Err(domain(format!("at most 6 correction terms supported, got {terms}")));
    }
    if arg.w.norm() == 0.0 || arg.w.arg().abs() >= PI - 0.1 {
        return Err(domain(format!(
            "w = {} is too close to the negative real axis",
            arg.w
        )));
    }
    let coef = AiryCoefficients::new(terms + 1);
    let (f, g) = partial_sums(&coef.c, &coef.d, arg.xi);
    let (ai, aip) = leading(arg);
    Ok((ai * f, aip * g))
}

fn partial_sums(c: &[f64], d: &[f64], xi: Complex64) -> (Complex64, Complex64) {
    let inv = xi.inv();
    let mut p = Complex64::new(1.0, 0.0);
    let mut f = Complex64::new(0.0, 0.0);
    let mut g = Complex64::new(0.0, 0.0);
    for (cj, dj) in c.iter().zip(d) {
        f += p * cj;
        g += p * dj;
        p *= inv;
    }
    (f, g)
}

fn leading(arg: AiryArgument) -> (Complex64, Complex64) {
    let w14 = (0.25 * arg.w.ln()).exp();
    let e = (-arg.xi).exp();
    let k = 2.0 * PI.sqrt();
    (e / (k * w14), -w14 * e / k)
}

/// Optimally truncated asymptotic series; `|arg w| <= 2pi/3`, `|w| >= 8`.
fn asymptotic_full(w: Complex64) -> (Complex64, Complex64) {
    let arg = AiryArgument::new(w);
    let inv = arg.xi.inv();
    let mut c = 1.0f64;
    let mut p = Complex64::new(1.0, 0.0);
    let mut f = Complex64::new(1.0, 0.0);
    let mut g = Complex64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for j in 1..60 {
        let jf = j as f64;
        // c_j / c_{j-1} = -(6j-5)(6j-3)(6j-1) / (216 j (2j-1))
        c *= -(6.0 * jf - 5.0) * (6.0 * jf - 3.0) * (6.0 * jf - 1.0) / (216.0 * jf * (2.0 * jf - 1.0));
        let d = -(6.0 * jf + 1.0) / (6.0 * jf - 1.0) * c;
        p *= inv;
        let tf = p * c;
        let size = tf.norm();
        if size > last {
            break;
        }
        f += tf;
        g += p * d;
        last = size;
        if size < 1e-17 {
            break;
        }
    }
    let (ai, aip) = leading(arg);
    (ai * f, aip * g)
}

fn check(w: Complex64) -> Result<()> {
    if !(w.norm() <= AIRY_MAX_ABS) {
        return Err(domain(format!("|w| = {} exceeds {AIRY_MAX_ABS}", w.norm())));
    }
    Ok(())
}

fn airy_pair(w: Complex64) -> (Complex64, Complex64) {
    if w.norm() <= MACLAURIN_RADIUS {
        return maclaurin(w);
    }
    if w.arg().abs() <= 2.0 * PI / 3.0 {
        return asymptotic_full(w);
    }
    let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let omega2 = omega * omega;
    let (a1, p1) = asymptotic_full(omega * w);
    let (a2, p2) = asymptotic_full(omega2 * w);
    (-omega * a1 - omega2 * a2, -omega2 * p1 - omega * p2)
}

/// `Ai(w)`.
pub fn airy_ai(w: Complex64) -> Result<Complex64> {
    check(w)?;
    Ok(airy_pair(w).0)
}

/// `Ai'(w)`.
pub fn airy_ai_prime(w: Complex64) -> Result<Complex64> {
    check(w)?;
    Ok(airy_pair(w).1)
}

fn maclaurin(w: Complex64) -> (Complex64, Complex64) {
    let wd = DdComplex::from(w);
    let w3 = wd.mul(&wd).mul(&wd);
    // f = sum t_k, t_k = t_{k-1} w^3 / ((3k-1) 3k); g = sum s_k, s_0 = w,
    // s_k = s_{k-1} w^3 / (3k (3k+1)). tw_k = t_k / w and v_k = s_k / w for
    // the derivatives f' = sum 3k tw_k, g' = sum (3k+1) v_k.
    let mut f = DdComplex::one();
    let mut g = wd;
    let mut fp = DdComplex::zero();
    let mut gp = DdComplex::one();
    let mut t = DdComplex::one();
    let mut s = wd;
    let mut tw = DdComplex::zero();
    let mut v = DdComplex::one();
    for k in 1..200 {
        let kf = k as f64;
        t = t.mul(&w3).div_f64((3.0 * kf - 1.0) * 3.0 * kf);
        s = s.mul(&w3).div_f64(3.0 * kf * (3.0 * kf + 1.0));
        tw = if k == 1 {
            wd.mul(&wd).div_f64(6.0)
        } else {
            tw.mul(&w3).div_f64((3.0 * kf - 1.0) * 3.0 * kf)
        };
        v = v.mul(&w3).div_f64(3.0 * kf * (3.0 * kf + 1.0));
        f = f.add(&t);
        g = g.add(&s);
        fp = fp.add(&tw.mul_f64(3.0 * kf));
        gp = gp.add(&v.mul_f64(3.0 * kf + 1.0));
        if t.approx_norm() + s.approx_norm() < 1e-34 * (f.approx_norm() + g.approx_norm()) {
            break;
        }
    }
    let ai = f.mul_dd(AI0).sub(&g.mul_dd(MINUS_AIP0));
    let aip = fp.mul_dd(AI0).sub(&gp.mul_dd(MINUS_AIP0));
    (ai.to_complex(), aip.to_complex())
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        quick_two_sum(s, e)
    }

    fn neg(self) -> Dd {
        Dd::new(-self.hi, -self.lo)
    }

    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        quick_two_sum(p, e)
    }

    fn mul_f64(self, x: f64) -> Dd {
        let (p, e) = two_prod(self.hi, x);
        quick_two_sum(p, e + self.lo * x)
    }

    fn div_f64(self, x: f64) -> Dd {
        let q1 = self.hi / x;
        let (p, e) = two_prod(q1, x);
        let r = (self.hi - p - e + self.lo) / x;
        quick_two_sum(q1, r)
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd::new(s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[derive(Clone, Copy, Debug)]
struct DdComplex {
    re: Dd,
    im: Dd,
}

impl DdComplex {
    fn zero() -> Self {
        DdComplex {
            re: Dd::from_f64(0.0),
            im: Dd::from_f64(0.0),
        }
    }

    fn one() -> Self {
        DdComplex {
            re: Dd::from_f64(1.0),
            im: Dd::from_f64(0.0),
        }
    }

    fn add(&self, o: &DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    fn sub(&self, o: &DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.add(o.re.neg()),
            im: self.im.add(o.im.neg()),
        }
    }

    fn mul(&self, o: &DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.mul(o.re).add(self.im.mul(o.im).neg()),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    fn mul_dd(&self, x: Dd) -> DdComplex {
        DdComplex {
            re: self.re.mul(x),
            im: self.im.mul(x),
        }
    }

    fn mul_f64(&self, x: f64) -> DdComplex {
        DdComplex {
            re: self.re.mul_f64(x),
            im: self.im.mul_f64(x),
        }
    }

    fn div_f64(&self, x: f64) -> DdComplex {
        DdComplex {
            re: self.re.div_f64(x),
            im: self.im.div_f64(x),
        }
    }

    fn approx_norm(&self) -> f64 {
        self.re.hi.abs() + self.im.hi.abs()
    }

    fn to_complex(self) -> Complex64 {
        Complex64::new(self.re.hi + self.re.lo, self.im.hi + self.im.lo)
    }
}

impl From<Complex64> for DdComplex {
    fn from(z: Complex64) -> Self {
        DdComplex {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }
}
