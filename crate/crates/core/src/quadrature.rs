//! Composite quadrature on sampled data.

use std::ops::{Add, Mul};

use crate::model::FrequencyGrid;

/// Integrate samples over `grid`: composite Simpson on uniform grids (with a
/// 3/8 panel at the end when the interval count is odd), trapezoid on
/// non-uniform grids.
pub fn integrate<T>(grid: &FrequencyGrid, values: &[T]) -> T
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
{
    assert_eq!(grid.len(), values.len(), "samples must match the grid");
    match grid.spacing() {
        Some(h) => simpson(values, h),
        None => trapezoid(grid.points(), values),
    }
}

fn sum<T: Copy + Default + Add<Output = T>>(values: impl Iterator<Item = T>) -> T {
    values.fold(T::default(), |acc, v| acc + v)
}

pub fn trapezoid<T>(x: &[f64], y: &[T]) -> T
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
{
    sum(x
        .windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| (ys[0] + ys[1]) * (0.5 * (xs[1] - xs[0]))))
}

/// Uniform-spacing Simpson rule.
pub fn simpson<T>(y: &[T], h: f64) -> T
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
{
    let intervals = y.len() - 1;
    match intervals {
        0 => T::default(),
        1 => (y[0] + y[1]) * (0.5 * h),
        _ if intervals.is_multiple_of(2) => simpson_even(y, h),
        3 => three_eighths(y, h),
        _ => {
            let split = intervals - 3;
            simpson_even(&y[..=split], h) + three_eighths(&y[split..], h)
        }
    }
}

fn simpson_even<T>(y: &[T], h: f64) -> T
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
{
    let n = y.len() - 1;
    let odd = sum((1..n).step_by(2).map(|i| y[i]));
    let even = sum((2..n).step_by(2).map(|i| y[i]));
    (y[0] + y[n] + odd * 4.0 + even * 2.0) * (h / 3.0)
}

fn three_eighths<T>(y: &[T], h: f64) -> T
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
{
    (y[0] + y[3] + (y[1] + y[2]) * 3.0) * (3.0 * h / 8.0)
}
