//! Truncated Taylor series in one variable.
//!
//! A [`Taylor`] holds the normalized coefficients `c_k = f^(k)(t) / k!` of a
//! function around a base point, truncated after degree [`DEGREE`]. Arithmetic
//! and elementary functions propagate the coefficients exactly (up to
//! rounding), which is how catalog curves, metrics and generator functions get
//! closed-form derivatives without hand-written derivative tables.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

/// Highest retained degree.
pub const DEGREE: usize = 4;
const LEN: usize = DEGREE + 1;

const FACTORIAL: [f64; LEN] = [1.0, 1.0, 2.0, 6.0, 24.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Taylor {
    c: [f64; LEN],
}

impl Taylor {
    pub const ZERO: Taylor = Taylor { c: [0.0; LEN] };

    pub fn constant(value: f64) -> Self {
        let mut c = [0.0; LEN];
        c[0] = value;
        Self { c }
    }

    /// The independent variable expanded around `t`.
    pub fn variable(t: f64) -> Self {
        let mut c = [0.0; LEN];
        c[0] = t;
        c[1] = 1.0;
        Self { c }
    }

    /// Builds a series from derivative values `f, f', f'', ...`.
    pub fn from_derivatives(d: &[f64]) -> Self {
        let mut c = [0.0; LEN];
        for (k, v) in d.iter().take(LEN).enumerate() {
            c[k] = v / FACTORIAL[k];
        }
        Self { c }
    }

    pub fn coefficients(&self) -> &[f64; LEN] {
        &self.c
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// `k`-th derivative at the base point.
    pub fn derivative(&self, k: usize) -> f64 {
        self.c[k] * FACTORIAL[k]
    }

    pub fn derivatives(&self) -> [f64; LEN] {
        let mut d = [0.0; LEN];
        for (k, v) in d.iter_mut().enumerate() {
            *v = self.derivative(k);
        }
        d
    }

    /// Series of the derivative function. The top coefficient is lost.
    pub fn differentiate(&self) -> Self {
        let mut c = [0.0; LEN];
        for k in 0..DEGREE {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Self { c }
    }

    /// Evaluates the truncated polynomial at offset `h` from the base point.
    pub fn eval_offset(&self, h: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, &a| acc * h + a)
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|v| v.is_finite())
    }

    pub fn recip(self) -> Self {
        Taylor::constant(1.0) / self
    }

    pub fn exp(self) -> Self {
        let a = &self.c;
        let mut e = [0.0; LEN];
        e[0] = a[0].exp();
        for k in 1..LEN {
            let s: f64 = (1..=k).map(|j| j as f64 * a[j] * e[k - j]).sum();
            e[k] = s / k as f64;
        }
        Self { c: e }
    }

    pub fn ln(self) -> Self {
        let a = &self.c;
        let mut l = [0.0; LEN];
        l[0] = a[0].ln();
        for k in 1..LEN {
            let s: f64 = (1..k).map(|j| j as f64 * l[j] * a[k - j]).sum();
            l[k] = (a[k] - s / k as f64) / a[0];
        }
        Self { c: l }
    }

    pub fn sin_cos(self) -> (Self, Self) {
        let a = &self.c;
        let mut s = [0.0; LEN];
        let mut c = [0.0; LEN];
        s[0] = a[0].sin();
        c[0] = a[0].cos();
        for k in 1..LEN {
            let mut ss = 0.0;
            let mut cc = 0.0;
            for j in 1..=k {
                ss += j as f64 * a[j] * c[k - j];
                cc += j as f64 * a[j] * s[k - j];
            }
            s[k] = ss / k as f64;
            c[k] = -cc / k as f64;
        }
        (Self { c: s }, Self { c })
    }

    pub fn sin(self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(self) -> Self {
        self.sin_cos().1
    }

    pub fn tan(self) -> Self {
        let (s, c) = self.sin_cos();
        s / c
    }

    pub fn sinh_cosh(self) -> (Self, Self) {
        let a = &self.c;
        let mut s = [0.0; LEN];
        let mut c = [0.0; LEN];
        s[0] = a[0].sinh();
        c[0] = a[0].cosh();
        for k in 1..LEN {
            let mut ss = 0.0;
            let mut cc = 0.0;
            for j in 1..=k {
                ss += j as f64 * a[j] * c[k - j];
                cc += j as f64 * a[j] * s[k - j];
            }
            s[k] = ss / k as f64;
            c[k] = cc / k as f64;
        }
        (Self { c: s }, Self { c })
    }

    pub fn sinh(self) -> Self {
        self.sinh_cosh().0
    }

    pub fn cosh(self) -> Self {
        self.sinh_cosh().1
    }

    /// Real power; the base value must be positive unless `p` is a
    /// non-negative integer.
    pub fn powf(self, p: f64) -> Self {
        if p.fract() == 0.0 && (0.0..=16.0).contains(&p) {
            return self.powi(p as u32);
        }
        let a = &self.c;
        let mut b = [0.0; LEN];
        b[0] = a[0].powf(p);
        for k in 1..LEN {
            let s: f64 = (1..=k)
                .map(|j| ((p + 1.0) * j as f64 - k as f64) * a[j] * b[k - j])
                .sum();
            b[k] = s / (k as f64 * a[0]);
        }
        Self { c: b }
    }

    pub fn powi(self, n: u32) -> Self {
        let mut acc = Taylor::constant(1.0);
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    pub fn sqrt(self) -> Self {
        self.powf(0.5)
    }
}

impl From<f64> for Taylor {
    fn from(v: f64) -> Self {
        Taylor::constant(v)
    }
}

impl Add for Taylor {
    type Output = Taylor;
    fn add(mut self, rhs: Taylor) -> Taylor {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a += b;
        }
        self
    }
}

impl AddAssign for Taylor {
    fn add_assign(&mut self, rhs: Taylor) {
        *self = *self + rhs;
    }
}

impl Sub for Taylor {
    type Output = Taylor;
    fn sub(mut self, rhs: Taylor) -> Taylor {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a -= b;
        }
        self
    }
}

impl Neg for Taylor {
    type Output = Taylor;
    fn neg(mut self) -> Taylor {
        for a in self.c.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl Mul for Taylor {
    type Output = Taylor;
    fn mul(self, rhs: Taylor) -> Taylor {
        let mut c = [0.0; LEN];
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = (0..=k).map(|j| self.c[j] * rhs.c[k - j]).sum();
        }
        Taylor { c }
    }
}

impl Div for Taylor {
    type Output = Taylor;
    fn div(self, rhs: Taylor) -> Taylor {
        let b = &rhs.c;
        let mut q = [0.0; LEN];
        for k in 0..LEN {
            let s: f64 = (1..=k).map(|j| b[j] * q[k - j]).sum();
            q[k] = (self.c[k] - s) / b[0];
        }
        Taylor { c: q }
    }
}

impl Add<f64> for Taylor {
    type Output = Taylor;
    fn add(mut self, rhs: f64) -> Taylor {
        self.c[0] += rhs;
        self
    }
}

impl Sub<f64> for Taylor {
    type Output = Taylor;
    fn sub(mut self, rhs: f64) -> Taylor {
        self.c[0] -= rhs;
        self
    }
}

impl Mul<f64> for Taylor {
    type Output = Taylor;
    fn mul(mut self, rhs: f64) -> Taylor {
        for a in self.c.iter_mut() {
            *a *= rhs;
        }
        self
    }
}

impl Div<f64> for Taylor {
    type Output = Taylor;
    fn div(self, rhs: f64) -> Taylor {
        Taylor {
            c: self.c.map(|x| x / rhs),
        }
    }
}

impl Add<Taylor> for f64 {
    type Output = Taylor;
    fn add(self, rhs: Taylor) -> Taylor {
        rhs + self
    }
}

impl Sub<Taylor> for f64 {
    type Output = Taylor;
    fn sub(self, rhs: Taylor) -> Taylor {
        -rhs + self
    }
}

impl Mul<Taylor> for f64 {
    type Output = Taylor;
    fn mul(self, rhs: Taylor) -> Taylor {
        rhs * self
    }
}

impl Div<Taylor> for f64 {
    type Output = Taylor;
    fn div(self, rhs: Taylor) -> Taylor {
        Taylor::constant(self) / rhs
    }
}
