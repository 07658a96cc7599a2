//! Finite-difference derivatives of scalar and vector functions of one
//! parameter.
//!
//! The main entry point is [`central_derivative`]: second-order central
//! stencils for orders 1 to 3, improved by one Richardson extrapolation level
//! (so the result is fourth-order accurate in the step). The base step for
//! order `k` is `scale * eps^(1/(k+4))`.

use std::ops::{Add, Mul, Sub};

use nalgebra::{Matrix3, Vector3};

use crate::error::{GeometryError, Result};

/// Values that can be combined by difference stencils.
pub trait FdValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn all_finite(&self) -> bool;
}

impl FdValue for f64 {
    fn all_finite(&self) -> bool {
        self.is_finite()
    }
}

impl FdValue for Vector3<f64> {
    fn all_finite(&self) -> bool {
        self.iter().all(|v| v.is_finite())
    }
}

impl FdValue for Matrix3<f64> {
    fn all_finite(&self) -> bool {
        self.iter().all(|v| v.is_finite())
    }
}

/// Base step used for a derivative of the given order.
pub fn base_step(order: usize, scale: f64) -> f64 {
    scale * f64::EPSILON.powf(1.0 / (order as f64 + 4.0))
}

/// Largest distance from `t` at which [`central_derivative`] samples.
pub fn stencil_radius(order: usize, scale: f64) -> f64 {
    let h = base_step(order, scale);
    if order >= 3 {
        2.0 * h
    } else {
        h
    }
}

fn sample<T: FdValue, F: FnMut(f64) -> Result<T>>(f: &mut F, x: f64) -> Result<T> {
    let v = f(x)?;
    if v.all_finite() {
        Ok(v)
    } else {
        Err(GeometryError::DifferentiationFailure(format!(
            "non-finite value at stencil point {x}"
        )))
    }
}

fn plain_central<T: FdValue, F: FnMut(f64) -> Result<T>>(
    f: &mut F,
    t: f64,
    order: usize,
    h: f64,
    center: Option<T>,
) -> Result<T> {
    match order {
        1 => {
            let p = sample(f, t + h)?;
            let m = sample(f, t - h)?;
            Ok((p - m) * (0.5 / h))
        }
        2 => {
            let c = match center {
                Some(c) => c,
                None => sample(f, t)?,
            };
            let p = sample(f, t + h)?;
            let m = sample(f, t - h)?;
            Ok((p + m - c * 2.0) * (1.0 / (h * h)))
        }
        3 => {
            let p2 = sample(f, t + 2.0 * h)?;
            let p1 = sample(f, t + h)?;
            let m1 = sample(f, t - h)?;
            let m2 = sample(f, t - 2.0 * h)?;
            Ok((p2 - p1 * 2.0 + m1 * 2.0 - m2) * (0.5 / (h * h * h)))
        }
        _ => Err(GeometryError::DifferentiationFailure(format!(
            "unsupported derivative order {order}"
        ))),
    }
}

/// Richardson-extrapolated central derivative of a fallible function.
pub fn central_derivative<T, F>(mut f: F, t: f64, order: usize, scale: f64) -> Result<T>
where
    T: FdValue,
    F: FnMut(f64) -> Result<T>,
{
    let h = base_step(order, scale);
    if !(h > 0.0 && h.is_finite()) {
        return Err(GeometryError::DifferentiationFailure(format!(
            "invalid step {h} for scale {scale}"
        )));
    }
    let center = if order == 2 { Some(sample(&mut f, t)?) } else { None };
    let coarse = plain_central(&mut f, t, order, h, center)?;
    let fine = plain_central(&mut f, t, order, 0.5 * h, center)?;
    Ok((fine * 4.0 - coarse) * (1.0 / 3.0))
}

/// Derivative of order 1..=3 of a plain scalar function.
pub fn scalar_derivative<F: Fn(f64) -> f64>(f: F, t: f64, order: usize, scale: f64) -> Result<f64> {
    central_derivative(|x| Ok(f(x)), t, order, scale)
}

/// Fourth-order five-point first derivative with step `h`.
pub fn five_point_first<T, F>(mut f: F, t: f64, h: f64) -> Result<T>
where
    T: FdValue,
    F: FnMut(f64) -> Result<T>,
{
    let p2 = sample(&mut f, t + 2.0 * h)?;
    let p1 = sample(&mut f, t + h)?;
    let m1 = sample(&mut f, t - h)?;
    let m2 = sample(&mut f, t - 2.0 * h)?;
    Ok((m2 - p2 + (p1 - m1) * 8.0) * (1.0 / (12.0 * h)))
}

/// Fourth-order five-point second derivative with step `h`.
pub fn five_point_second<T, F>(mut f: F, t: f64, h: f64) -> Result<T>
where
    T: FdValue,
    F: FnMut(f64) -> Result<T>,
{
    let p2 = sample(&mut f, t + 2.0 * h)?;
    let p1 = sample(&mut f, t + h)?;
    let c = sample(&mut f, t)?;
    let m1 = sample(&mut f, t - h)?;
    let m2 = sample(&mut f, t - 2.0 * h)?;
    Ok(((p1 + m1) * 16.0 - (p2 + m2) - c * 30.0) * (1.0 / (12.0 * h * h)))
}
