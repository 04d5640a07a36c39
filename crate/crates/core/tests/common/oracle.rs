//! Slow arbitrary-precision reference evaluators.
//!
//! Binary floating point on top of `BigInt` with a per-call precision; power
//! series for `J_n`, the Neumann series for `Y_n`, the Maclaurin series for
//! `Ai`. Only integer orders are covered; half-integer orders have closed forms.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use resonance_core::ScaledComplex;

const EULER_GAMMA_DIGITS: &str =
    "57721566490153286060651209008240243104215933593992359880576723488486772677766467";

#[derive(Clone, Debug)]
struct Bf {
    m: BigInt,
    e: i64,
}

#[derive(Clone, Copy)]
struct Ctx {
    p: u64,
}

#[derive(Clone, Debug)]
struct Bc {
    re: Bf,
    im: Bf,
}

impl Ctx {
    fn new(p: u64) -> Self {
        Ctx { p }
    }

    fn norm(&self, m: BigInt, e: i64) -> Bf {
        if m.is_zero() {
            return Bf { m, e: 0 };
        }
        let b = m.bits();
        if b > self.p {
            let s = b - self.p;
            Bf { m: m >> s, e: e + s as i64 }
        } else {
            let s = self.p - b;
            Bf { m: m << s, e: e - s as i64 }
        }
    }

    fn zero(&self) -> Bf {
        Bf { m: BigInt::zero(), e: 0 }
    }

    fn int(&self, n: i64) -> Bf {
        self.norm(BigInt::from(n), 0)
    }

    fn f64(&self, x: f64) -> Bf {
        if x == 0.0 {
            return self.zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        self.norm(BigInt::from(mant) * sign, e)
    }

    fn ratio(&self, a: i64, b: i64) -> Bf {
        self.div(&self.int(a), &self.int(b))
    }

    /// Decimal fraction `0.digits`.
    fn decimal_fraction(&self, digits: &str) -> Bf {
        let num: BigInt = digits.parse().unwrap();
        let den = BigInt::from(10).pow(digits.len() as u32);
        let shift = self.p + 8;
        self.norm((num << shift) / den, -(shift as i64))
    }

    fn add(&self, a: &Bf, b: &Bf) -> Bf {
        if a.m.is_zero() {
            return b.clone();
        }
        if b.m.is_zero() {
            return a.clone();
        }
        let (hi, lo) = if a.e >= b.e { (a, b) } else { (b, a) };
        let diff = (hi.e - lo.e) as u64;
        if diff > 2 * self.p + 64 {
            return hi.clone();
        }
        self.norm((hi.m.clone() << diff) + &lo.m, lo.e)
    }

    fn neg(&self, a: &Bf) -> Bf {
        Bf { m: -a.m.clone(), e: a.e }
    }

    fn sub(&self, a: &Bf, b: &Bf) -> Bf {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &Bf, b: &Bf) -> Bf {
        self.norm(&a.m * &b.m, a.e + b.e)
    }

    fn div(&self, a: &Bf, b: &Bf) -> Bf {
        assert!(!b.m.is_zero(), "oracle division by zero");
        let s = self.p + 4 + b.m.bits();
        self.norm((a.m.clone() << s) / &b.m, a.e - b.e - s as i64)
    }

    fn div_int(&self, a: &Bf, n: i64) -> Bf {
        self.div(a, &self.int(n))
    }

    fn scale2(&self, a: &Bf, k: i64) -> Bf {
        Bf { m: a.m.clone(), e: a.e + k }
    }

    fn sqrt(&self, a: &Bf) -> Bf {
        assert!(!a.m.is_negative());
        if a.m.is_zero() {
            return self.zero();
        }
        let mut s = 2 * self.p as i64 + 4 - a.m.bits() as i64;
        if (a.e - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let m = if s >= 0 { a.m.clone() << s as u64 } else { a.m.clone() >> (-s) as u64 };
        self.norm(m.sqrt(), (a.e - s) / 2)
    }

    fn is_tiny(&self, a: &Bf, reference: &Bf) -> bool {
        a.m.is_zero() || (!reference.m.is_zero() && mag(a) < mag(reference) - self.p as i64 - 8)
    }

    fn to_f64(&self, a: &Bf) -> f64 {
        let (m, e) = to_f64_parts(a);
        ldexp(m, e)
    }

    fn ln2(&self) -> Bf {
        // ln 2 = 2 atanh(1/3)
        self.scale2(&self.atanh_series(&self.ratio(1, 3)), 1)
    }

    fn atanh_series(&self, t: &Bf) -> Bf {
        let t2 = self.mul(t, t);
        let mut pow = t.clone();
        let mut acc = t.clone();
        let mut k = 1i64;
        loop {
            pow = self.mul(&pow, &t2);
            let term = self.div_int(&pow, 2 * k + 1);
            if self.is_tiny(&term, &acc) {
                break;
            }
            acc = self.add(&acc, &term);
            k += 1;
        }
        acc
    }

    fn ln(&self, x: &Bf) -> Bf {
        assert!(x.m.is_positive(), "ln of nonpositive value");
        // x = y 2^k with y in [1, 2)
        let k = x.e + x.m.bits() as i64 - 1;
        let y = Bf { m: x.m.clone(), e: x.e - k };
        let one = self.int(1);
        let t = self.div(&self.sub(&y, &one), &self.add(&y, &one));
        let ln_y = self.scale2(&self.atanh_series(&t), 1);
        self.add(&ln_y, &self.mul(&self.int(k), &self.ln2()))
    }

    fn exp(&self, x: &Bf) -> Bf {
        let ln2 = self.ln2();
        let k = self.to_f64(&self.div(x, &ln2)).round() as i64;
        let r = self.sub(x, &self.mul(&self.int(k), &ln2));
        // further halve r 16 times and square back
        let r = self.scale2(&r, -16);
        let mut term = self.int(1);
        let mut acc = self.int(1);
        let mut j = 1i64;
        loop {
            term = self.div_int(&self.mul(&term, &r), j);
            if self.is_tiny(&term, &acc) {
                break;
            }
            acc = self.add(&acc, &term);
            j += 1;
        }
        for _ in 0..16 {
            acc = self.mul(&acc, &acc);
        }
        self.scale2(&acc, k)
    }

    fn atan_small(&self, t: &Bf) -> Bf {
        let t2 = self.mul(t, t);
        let mut pow = t.clone();
        let mut acc = t.clone();
        let mut k = 1i64;
        loop {
            pow = self.neg(&self.mul(&pow, &t2));
            let term = self.div_int(&pow, 2 * k + 1);
            if self.is_tiny(&term, &acc) {
                break;
            }
            acc = self.add(&acc, &term);
            k += 1;
        }
        acc
    }

    fn pi(&self) -> Bf {
        // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
        let a = self.atan_small(&self.ratio(1, 5));
        let b = self.atan_small(&self.ratio(1, 239));
        self.sub(&self.scale2(&a, 4), &self.scale2(&b, 2))
    }

    /// `atan(t)` for any real `t`.
    fn atan(&self, t: &Bf) -> Bf {
        if t.m.is_zero() {
            return self.zero();
        }
        let one = self.int(1);
        if mag(t) > 0 && self.to_f64(t).abs() > 1.0 {
            let half_pi = self.scale2(&self.pi(), -1);
            let inv = self.atan(&self.div(&one, t));
            return if t.m.is_positive() {
                self.sub(&half_pi, &inv)
            } else {
                self.sub(&self.neg(&half_pi), &inv)
            };
        }
        // atan t = 2 atan(t / (1 + sqrt(1 + t^2))), applied three times
        let mut u = t.clone();
        for _ in 0..3 {
            let root = self.sqrt(&self.add(&one, &self.mul(&u, &u)));
            u = self.div(&u, &self.add(&one, &root));
        }
        self.scale2(&self.atan_small(&u), 3)
    }

    /// Argument of `x + iy` in `(-pi, pi]`.
    fn atan2(&self, y: &Bf, x: &Bf) -> Bf {
        let pi = self.pi();
        if x.m.is_zero() {
            let h = self.scale2(&pi, -1);
            return if y.m.is_negative() { self.neg(&h) } else { h };
        }
        let a = self.atan(&self.div(y, x));
        if x.m.is_positive() {
            a
        } else if y.m.is_negative() {
            self.sub(&a, &pi)
        } else {
            self.add(&a, &pi)
        }
    }

    fn euler_gamma(&self) -> Bf {
        self.decimal_fraction(EULER_GAMMA_DIGITS)
    }

    // complex helpers

    fn c(&self, z: Complex64) -> Bc {
        Bc { re: self.f64(z.re), im: self.f64(z.im) }
    }

    fn c_real(&self, x: Bf) -> Bc {
        Bc { re: x, im: self.zero() }
    }

    fn cadd(&self, a: &Bc, b: &Bc) -> Bc {
        Bc { re: self.add(&a.re, &b.re), im: self.add(&a.im, &b.im) }
    }

    fn csub(&self, a: &Bc, b: &Bc) -> Bc {
        Bc { re: self.sub(&a.re, &b.re), im: self.sub(&a.im, &b.im) }
    }

    fn cmul(&self, a: &Bc, b: &Bc) -> Bc {
        Bc {
            re: self.sub(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im)),
            im: self.add(&self.mul(&a.re, &b.im), &self.mul(&a.im, &b.re)),
        }
    }

    fn cscale(&self, a: &Bc, x: &Bf) -> Bc {
        Bc { re: self.mul(&a.re, x), im: self.mul(&a.im, x) }
    }

    fn cdiv_int(&self, a: &Bc, n: i64) -> Bc {
        Bc { re: self.div_int(&a.re, n), im: self.div_int(&a.im, n) }
    }

    fn cdiv(&self, a: &Bc, b: &Bc) -> Bc {
        let den = self.add(&self.mul(&b.re, &b.re), &self.mul(&b.im, &b.im));
        let num = self.cmul(a, &Bc { re: b.re.clone(), im: self.neg(&b.im) });
        Bc { re: self.div(&num.re, &den), im: self.div(&num.im, &den) }
    }

    fn ctiny(&self, a: &Bc, reference: &Bc) -> bool {
        let r = cmag(reference);
        let m = cmag(a);
        m == i64::MIN || (r != i64::MIN && m < r - self.p as i64 - 8)
    }

    fn cln(&self, z: &Bc) -> Bc {
        let r2 = self.add(&self.mul(&z.re, &z.re), &self.mul(&z.im, &z.im));
        Bc { re: self.scale2(&self.ln(&r2), -1), im: self.atan2(&z.im, &z.re) }
    }

    fn to_scaled(&self, z: &Bc) -> ScaledComplex {
        let er = if z.re.m.is_zero() { i64::MIN } else { mag(&z.re) };
        let ei = if z.im.m.is_zero() { i64::MIN } else { mag(&z.im) };
        let top = er.max(ei);
        if top == i64::MIN {
            return ScaledComplex::ZERO;
        }
        let part = |x: &Bf| {
            if x.m.is_zero() {
                0.0
            } else {
                let (m, e) = to_f64_parts(x);
                ldexp(m, e - top)
            }
        };
        let mant = Complex64::new(part(&z.re), part(&z.im));
        if top.abs() < 1000 {
            ScaledComplex::from(mant * ldexp(1.0, top))
        } else {
            ScaledComplex::new(mant, top as f64 * std::f64::consts::LN_2)
        }
    }
}

/// Binary magnitude: `|x| ~ 2^mag`.
fn mag(x: &Bf) -> i64 {
    if x.m.is_zero() {
        i64::MIN
    } else {
        x.e + x.m.bits() as i64
    }
}

fn cmag(z: &Bc) -> i64 {
    mag(&z.re).max(mag(&z.im))
}

fn to_f64_parts(a: &Bf) -> (f64, i64) {
    let b = a.m.bits() as i64;
    let s = (b - 60).max(0);
    let m = (a.m.clone() >> s as u64).to_f64().unwrap();
    (m, a.e + s)
}

fn ldexp(mut m: f64, mut e: i64) -> f64 {
    while e > 900 {
        m *= 2f64.powi(900);
        e -= 900;
    }
    while e < -900 {
        m *= 2f64.powi(-900);
        e += 900;
    }
    m * 2f64.powi(e as i32)
}

fn bits_for(z: Complex64) -> u64 {
    256 + (2.0 * (z.norm() + 2.0 * z.im.abs())) as u64
}

/// `J_n(z) (z/2)^{-n} n!`-free series value with its prefactor applied.
fn j_series(ctx: &Ctx, n: i64, z: &Bc) -> Bc {
    let half = ctx.cdiv_int(z, 2);
    let w = ctx.neg_c(&ctx.cmul(&half, &half));
    // prefactor (z/2)^n / n!
    let mut pre = ctx.c_real(ctx.int(1));
    for k in 1..=n {
        pre = ctx.cdiv_int(&ctx.cmul(&pre, &half), k);
    }
    let mut term = pre.clone();
    let mut acc = pre;
    let mut k = 1i64;
    loop {
        term = ctx.cdiv_int(&ctx.cmul(&term, &w), k * (n + k));
        acc = ctx.cadd(&acc, &term);
        if k as f64 > ctx.to_f64(&ctx.sqrt(&ctx.add(&ctx.mul(&w.re, &w.re), &ctx.mul(&w.im, &w.im)))).sqrt() + 2.0
            && ctx.ctiny(&term, &acc)
        {
            break;
        }
        k += 1;
    }
    acc
}

impl Ctx {
    fn neg_c(&self, a: &Bc) -> Bc {
        Bc { re: self.neg(&a.re), im: self.neg(&a.im) }
    }
}

/// Neumann series for `Y_n(z)`, integer `n >= 0`.
fn y_series(ctx: &Ctx, n: i64, z: &Bc, jn: &Bc) -> Bc {
    let pi = ctx.pi();
    let gamma = ctx.euler_gamma();
    let half = ctx.cdiv_int(z, 2);
    let w = ctx.neg_c(&ctx.cmul(&half, &half));
    let log_half = ctx.cln(&half);

    // (2/pi) ln(z/2) J_n
    let mut acc = ctx.cscale(&ctx.cmul(&log_half, jn), &ctx.div(&ctx.int(2), &pi));

    // -(1/pi) sum_{k<n} (n-k-1)!/k! (z/2)^{2k-n}
    if n > 0 {
        let inv_half = ctx.cdiv(&ctx.c_real(ctx.int(1)), &half);
        // k = 0 term: (n-1)! (z/2)^{-n}
        let mut fact = ctx.int(1);
        for j in 1..n {
            fact = ctx.mul(&fact, &ctx.int(j));
        }
        let mut pw = ctx.c_real(ctx.int(1));
        for _ in 0..n {
            pw = ctx.cmul(&pw, &inv_half);
        }
        let mut term = ctx.cscale(&pw, &fact);
        let mut sum = term.clone();
        for k in 1..n {
            // ratio: (z/2)^2 / (k (n-k))
            term = ctx.cdiv_int(&ctx.cmul(&term, &ctx.cmul(&half, &half)), k * (n - k));
            sum = ctx.cadd(&sum, &term);
        }
        acc = ctx.csub(&acc, &ctx.cscale(&sum, &ctx.div(&ctx.int(1), &pi)));
    }

    // -(1/pi) (z/2)^n sum_k [psi(k+1) + psi(n+k+1)] w^k / (k! (n+k)!)
    let mut pre = ctx.c_real(ctx.int(1));
    for k in 1..=n {
        pre = ctx.cdiv_int(&ctx.cmul(&pre, &half), k);
    }
    let mut h_k = ctx.zero();
    let mut h_nk = ctx.zero();
    for j in 1..=n {
        h_nk = ctx.add(&h_nk, &ctx.ratio(1, j));
    }
    let two_gamma = ctx.scale2(&gamma, 1);
    let mut term = pre;
    let mut sum = ctx.cscale(&term, &ctx.sub(&ctx.add(&h_k, &h_nk), &two_gamma));
    let wmag = ctx.to_f64(&ctx.sqrt(&ctx.add(&ctx.mul(&w.re, &w.re), &ctx.mul(&w.im, &w.im))));
    let mut k = 1i64;
    loop {
        term = ctx.cdiv_int(&ctx.cmul(&term, &w), k * (n + k));
        h_k = ctx.add(&h_k, &ctx.ratio(1, k));
        h_nk = ctx.add(&h_nk, &ctx.ratio(1, n + k));
        let t = ctx.cscale(&term, &ctx.sub(&ctx.add(&h_k, &h_nk), &two_gamma));
        sum = ctx.cadd(&sum, &t);
        if k as f64 > wmag.sqrt() + 2.0 && ctx.ctiny(&t, &sum) {
            break;
        }
        k += 1;
    }
    ctx.csub(&acc, &ctx.cscale(&sum, &ctx.div(&ctx.int(1), &pi)))
}

/// `J_n(z)`.
pub fn bessel_j(n: u32, z: Complex64) -> ScaledComplex {
    let ctx = Ctx::new(bits_for(z));
    ctx.to_scaled(&j_series(&ctx, n as i64, &ctx.c(z)))
}

/// `J_n'(z)`.
pub fn bessel_j_prime(n: u32, z: Complex64) -> ScaledComplex {
    let ctx = Ctx::new(bits_for(z));
    let zc = ctx.c(z);
    let n = n as i64;
    let v = if n == 0 {
        ctx.neg_c(&j_series(&ctx, 1, &zc))
    } else {
        ctx.cdiv_int(&ctx.csub(&j_series(&ctx, n - 1, &zc), &j_series(&ctx, n + 1, &zc)), 2)
    };
    ctx.to_scaled(&v)
}

fn hankel_big(ctx: &Ctx, n: i64, z: &Bc) -> Bc {
    let j = j_series(ctx, n, z);
    let y = y_series(ctx, n, z, &j);
    Bc { re: ctx.sub(&j.re, &y.im), im: ctx.add(&j.im, &y.re) }
}

/// `H^(1)_n(z) = J_n(z) + i Y_n(z)` (principal branch, `z` off the negative axis).
pub fn hankel1(n: u32, z: Complex64) -> ScaledComplex {
    let ctx = Ctx::new(bits_for(z));
    ctx.to_scaled(&hankel_big(&ctx, n as i64, &ctx.c(z)))
}

/// `Y_n(z)`.
pub fn bessel_y(n: u32, z: Complex64) -> ScaledComplex {
    let ctx = Ctx::new(bits_for(z));
    let zc = ctx.c(z);
    let j = j_series(&ctx, n as i64, &zc);
    ctx.to_scaled(&y_series(&ctx, n as i64, &zc, &j))
}

/// `H^(1)_n'(z) = H_{n-1} - (n/z) H_n`, `H_0' = -H_1`.
pub fn hankel1_prime(n: u32, z: Complex64) -> ScaledComplex {
    let ctx = Ctx::new(bits_for(z));
    let zc = ctx.c(z);
    let n = n as i64;
    let v = if n == 0 {
        ctx.neg_c(&hankel_big(&ctx, 1, &zc))
    } else {
        let hn = hankel_big(&ctx, n, &zc);
        let hm = hankel_big(&ctx, n - 1, &zc);
        let ratio = ctx.cdiv(&ctx.c_real(ctx.int(n)), &zc);
        ctx.csub(&hm, &ctx.cmul(&ratio, &hn))
    };
    ctx.to_scaled(&v)
}

/// `ln Gamma(x)` for rational `x = num/den > 0`, by Stirling after shifting by 1000.
fn ln_gamma_rational(ctx: &Ctx, num: i64, den: i64) -> Bf {
    const SHIFT: i64 = 1000;
    let x0 = ctx.ratio(num, den);
    let x = ctx.add(&x0, &ctx.int(SHIFT));
    let mut prod = ctx.int(1);
    for j in 0..SHIFT {
        prod = ctx.mul(&prod, &ctx.add(&x0, &ctx.int(j)));
    }
    let ln_x = ctx.ln(&x);
    let half = ctx.ratio(1, 2);
    let two_pi = ctx.scale2(&ctx.pi(), 1);
    let mut acc = ctx.sub(&ctx.mul(&ctx.sub(&x, &half), &ln_x), &x);
    acc = ctx.add(&acc, &ctx.scale2(&ctx.ln(&two_pi), -1));
    // B_2k / (2k (2k-1) x^{2k-1})
    const BERNOULLI: [(i64, i64); 10] = [
        (1, 6),
        (-1, 30),
        (1, 42),
        (-1, 30),
        (5, 66),
        (-691, 2730),
        (7, 6),
        (-3617, 510),
        (43867, 798),
        (-174611, 330),
    ];
    let x2 = ctx.mul(&x, &x);
    let mut xpow = x.clone();
    for (i, &(bn, bd)) in BERNOULLI.iter().enumerate() {
        let k = i as i64 + 1;
        let coef = ctx.ratio(bn, bd * 2 * k * (2 * k - 1));
        acc = ctx.add(&acc, &ctx.div(&coef, &xpow));
        xpow = ctx.mul(&xpow, &x2);
    }
    ctx.sub(&acc, &ctx.ln(&prod))
}

/// `(Ai(w), Ai'(w))` by the Maclaurin series.
pub fn airy(w: Complex64) -> (Complex64, Complex64) {
    let ctx = Ctx::new(256 + (4.0 * w.norm().powf(1.5)) as u64);
    let ln3 = ctx.ln(&ctx.int(3));
    // Ai(0) = 3^{-2/3} / Gamma(2/3), -Ai'(0) = 3^{-1/3} / Gamma(1/3)
    let c1 = ctx.exp(&ctx.neg(&ctx.add(&ctx.mul(&ctx.ratio(2, 3), &ln3), &ln_gamma_rational(&ctx, 2, 3))));
    let c2 = ctx.exp(&ctx.neg(&ctx.add(&ctx.mul(&ctx.ratio(1, 3), &ln3), &ln_gamma_rational(&ctx, 1, 3))));
    let wc = ctx.c(w);
    let w3 = ctx.cmul(&ctx.cmul(&wc, &wc), &wc);
    let one = ctx.c_real(ctx.int(1));
    let (mut f, mut g) = (one.clone(), wc.clone());
    let (mut fp, mut gp) = (ctx.c_real(ctx.zero()), one.clone());
    let (mut t, mut s) = (one.clone(), wc.clone());
    let mut k = 1i64;
    loop {
        let tn = ctx.cdiv_int(&ctx.cmul(&t, &w3), (3 * k - 1) * 3 * k);
        let sn = ctx.cdiv_int(&ctx.cmul(&s, &w3), 3 * k * (3 * k + 1));
        // d/dw t_k = t_{k-1} w^2 / (3k-1), d/dw s_k = s_{k-1} w^2 / (3k)
        let w2 = ctx.cmul(&wc, &wc);
        fp = ctx.cadd(&fp, &ctx.cdiv_int(&ctx.cmul(&t, &w2), 3 * k - 1));
        gp = ctx.cadd(&gp, &ctx.cdiv_int(&ctx.cmul(&s, &w2), 3 * k));
        f = ctx.cadd(&f, &tn);
        g = ctx.cadd(&g, &sn);
        t = tn;
        s = sn;
        if k > 4 && ctx.ctiny(&t, &f) && ctx.ctiny(&s, &g) && ctx.ctiny(&t, &one) {
            break;
        }
        k += 1;
    }
    let ai = ctx.csub(&ctx.cscale(&f, &c1), &ctx.cscale(&g, &c2));
    let aip = ctx.csub(&ctx.cscale(&fp, &c1), &ctx.cscale(&gp, &c2));
    (ctx.to_scaled(&ai).value(), ctx.to_scaled(&aip).value())
}

/// `ln((1 + sqrt(1 - x^2)) / x) - sqrt(1 - x^2)` for real `0 < x < 1`.
pub fn rho_real(x: f64) -> f64 {
    let ctx = Ctx::new(256);
    let xb = ctx.f64(x);
    let one = ctx.int(1);
    let s = ctx.sqrt(&ctx.sub(&one, &ctx.mul(&xb, &xb)));
    let v = ctx.sub(&ctx.ln(&ctx.div(&ctx.add(&one, &s), &xb)), &s);
    ctx.to_f64(&v)
}

/// `pi` and Euler's constant to double precision, for sanity checks.
pub fn constants() -> (f64, f64) {
    let ctx = Ctx::new(200);
    (ctx.to_f64(&ctx.pi()), ctx.to_f64(&ctx.euler_gamma()))
}

/// `|a/b - 1|` for scaled values.
pub fn rel_err(a: ScaledComplex, b: ScaledComplex) -> f64 {
    ((a - b) / b).abs()
}

