//! Adaptive Gauss–Kronrod quadrature and bracketed Newton inversion of
//! monotone parameter maps.

use std::collections::BinaryHeap;

use crate::error::{GeometryError, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 4000;

#[derive(PartialEq)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}
/// One 15-point Kronrod estimate with its embedded 7-point Gauss error bound.
fn gk15<F: FnMut(f64) -> Result<f64>>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).abs();
    if !value.is_finite() {
        return Err(GeometryError::QuadratureFailure(format!(
            "non-finite integrand on [{a}, {b}]"
        )));
    }
    Ok((value, err))
}

/// Integrates `f` over `[a, b]` (either orientation) to absolute tolerance
/// `abs_tol` plus relative tolerance `rel_tol` of the running estimate.
///
/// Globally adaptive: the piece with the largest error estimate is bisected
/// until the summed estimate meets the tolerance.
pub fn integrate<F>(mut f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return integrate(f, b, a, abs_tol, rel_tol).map(|v| -v);
    }
    let (value, err) = gk15(&mut f, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value, err });
    let (mut total, mut total_err) = (value, err);
    loop {
        if total_err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(heap.iter().map(|p| p.value).sum());
        }
        let worst = heap.pop().expect("heap is never empty");
        let m = 0.5 * (worst.a + worst.b);
        if heap.len() >= MAX_INTERVALS || m <= worst.a || m >= worst.b {
            // Cannot refine further; accept if the remaining error is at
            // round-off level relative to the result.
            if total_err <= 1e3 * f64::EPSILON * total.abs().max(abs_tol) {
                return Ok(heap.iter().map(|p| p.value).sum::<f64>() + worst.value);
            }
            return Err(GeometryError::QuadratureFailure(format!(
                "no convergence on [{a}, {b}] (error estimate {total_err:e})"
            )));
        }
        let left = gk15(&mut f, worst.a, m)?;
        let right = gk15(&mut f, m, worst.b)?;
        total += left.0 + right.0 - worst.value;
        total_err += left.1 + right.1 - worst.err;
        heap.push(Piece {
            a: worst.a,
            b: m,
            value: left.0,
            err: left.1,
        });
        heap.push(Piece {
            a: m,
            b: worst.b,
            value: right.0,
            err: right.1,
        });
    }
}

/// Solves `map(t) = target` for a strictly increasing `map` whose derivative
/// is `slope`, with `t` bracketed by `[lo, hi]`. Newton steps that leave the
/// bracket fall back to bisection.
pub fn invert_increasing<M, D>(
    mut map: M,
    mut slope: D,
    target: f64,
    mut lo: f64,
    mut hi: f64,
    guess: f64,
    tol: f64,
) -> Result<f64>
where
    M: FnMut(f64) -> Result<f64>,
    D: FnMut(f64) -> Result<f64>,
{
    let mut t = guess.clamp(lo, hi);
    for _ in 0..100 {
        let r = map(t)? - target;
        if r.abs() <= tol {
            return Ok(t);
        }
        if r > 0.0 {
            hi = t;
        } else {
            lo = t;
        }
        let d = slope(t)?;
        let mut next = t - r / d;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - t).abs() <= 4.0 * f64::EPSILON * t.abs().max(1.0) {
            return Ok(next);
        }
        t = next;
    }
    Err(GeometryError::InversionFailure { s: target })
}
