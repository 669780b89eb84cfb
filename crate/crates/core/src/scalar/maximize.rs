//! Derivative-free maximization of a smooth function on a closed interval.

use crate::error::{Error, Result};

/// Uniform grid size used to bracket the maximum.
pub const GRID_POINTS: usize = 4097;

/// Golden-section refinement stops once the bracket is this fraction of the interval.
pub const REL_WIDTH: f64 = 1e-12;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub arg: f64,
    pub value: f64,
}

/// Maximizes `f` over `[lo, hi]`.
///
/// The objective is sampled on a [`GRID_POINTS`]-point uniform grid, then the
/// bracket around the best sample is shrunk by golden-section search to
/// width `REL_WIDTH * (hi - lo)`. The result is never below the best grid
/// sample, so the interval endpoints are always included.
pub fn maximize<F>(f: F, lo: f64, hi: f64) -> Result<Maximum>
where
    F: Fn(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::NumericalDegeneracy(format!(
            "invalid maximization interval [{lo}, {hi}]"
        )));
    }
    let eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NumericalDegeneracy(format!(
                "objective is {v} at x = {x}"
            )))
        }
    };
    if lo == hi {
        return Ok(Maximum {
            arg: lo,
            value: eval(lo)?,
        });
    }

    let width = hi - lo;
    let step = width / (GRID_POINTS - 1) as f64;
    let grid_x = |i: usize| {
        if i == GRID_POINTS - 1 {
            hi
        } else {
            lo + step * i as f64
        }
    };

    let mut best = Maximum {
        arg: lo,
        value: eval(lo)?,
    };
    let mut best_idx = 0;
    for i in 1..GRID_POINTS {
        let x = grid_x(i);
        let v = eval(x)?;
        if v > best.value {
            best = Maximum { arg: x, value: v };
            best_idx = i;
        }
    }

    let mut a = grid_x(best_idx.saturating_sub(1));
    let mut b = grid_x((best_idx + 1).min(GRID_POINTS - 1));
    let tol = REL_WIDTH * width;

    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    while (b - a) > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d)?;
        }
    }
    let (x, v) = if fc >= fd { (c, fc) } else { (d, fd) };
    if v > best.value {
        best = Maximum { arg: x, value: v };
    }
    Ok(best)
}
