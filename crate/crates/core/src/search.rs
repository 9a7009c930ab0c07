//! Derivative-free maximization over a box: a coarse grid scan followed by
//! golden-section refinement along each axis through the best grid point.
//!
//! Deterministic for a given objective. On exact ties the lexicographically
//! lowest parameter vector wins.

use crate::error::{Error, Result};

/// Default grid resolution per axis.
pub const DEFAULT_POINTS_PER_AXIS: usize = 33;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// A named parameter with finite bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Bound {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
}

impl Bound {
    pub fn new(name: impl Into<String>, lo: f64, hi: f64) -> Self {
        Self {
            name: name.into(),
            lo,
            hi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub points_per_axis: usize,
    /// Golden-section stops when the bracket is narrower than this fraction
    /// of the axis span.
    pub relative_tolerance: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            points_per_axis: DEFAULT_POINTS_PER_AXIS,
            relative_tolerance: 1e-9,
        }
    }
}

/// One objective evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub stage: Stage,
    pub params: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Grid,
    Refine,
}

impl Stage {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stage::Grid => "grid",
            Stage::Refine => "refine",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best: Vec<f64>,
    pub value: f64,
    pub trace: Vec<Evaluation>,
}

fn check_bounds(bounds: &[Bound]) -> Result<()> {
    if bounds.is_empty() || bounds.len() > 3 {
        return Err(Error::InvalidParameter {
            field: "free",
            reason: format!("need 1 to 3 free parameters, got {}", bounds.len()),
        });
    }
    for b in bounds {
        if !(b.lo.is_finite() && b.hi.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "free",
                reason: format!("parameter `{}` is unbounded", b.name),
            });
        }
        if b.lo > b.hi {
            return Err(Error::InvalidParameter {
                field: "free",
                reason: format!("parameter `{}` has lo > hi", b.name),
            });
        }
    }
    Ok(())
}

/// `true` if `candidate` should replace `incumbent`.
fn better(candidate: (&[f64], f64), incumbent: (&[f64], f64)) -> bool {
    if candidate.1 > incumbent.1 {
        return true;
    }
    if candidate.1 < incumbent.1 {
        return false;
    }
    candidate
        .0
        .iter()
        .zip(incumbent.0)
        .find(|(a, b)| a != b)
        .is_some_and(|(a, b)| a < b)
}

/// Maximize `objective` over the box `bounds`.
pub fn maximize<F>(
    bounds: &[Bound],
    options: SearchOptions,
    mut objective: F,
) -> Result<SearchResult>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    check_bounds(bounds)?;
    let per_axis = options.points_per_axis.max(2);
    let axes: Vec<Vec<f64>> = bounds
        .iter()
        .map(|b| {
            if b.lo == b.hi {
                vec![b.lo]
            } else {
                (0..per_axis)
                    .map(|i| {
                        if i + 1 == per_axis {
                            b.hi
                        } else {
                            b.lo + (b.hi - b.lo) * i as f64 / (per_axis - 1) as f64
                        }
                    })
                    .collect()
            }
        })
        .collect();

    let mut trace = Vec::new();
    let mut eval = |params: &[f64], stage: Stage, trace: &mut Vec<Evaluation>| -> Result<f64> {
        let value = objective(params)?;
        if value.is_nan() {
            return Err(Error::NonFinite("objective"));
        }
        trace.push(Evaluation {
            stage,
            params: params.to_vec(),
            value,
        });
        Ok(value)
    };

    // grid scan, row-major over the axes
    let total: usize = axes.iter().map(Vec::len).product();
    let mut best_index = vec![0usize; axes.len()];
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut index = vec![0usize; axes.len()];
    for flat in 0..total {
        let mut rem = flat;
        for (d, axis) in axes.iter().enumerate().rev() {
            index[d] = rem % axis.len();
            rem /= axis.len();
        }
        let params: Vec<f64> = index.iter().zip(&axes).map(|(&i, a)| a[i]).collect();
        let value = eval(&params, Stage::Grid, &mut trace)?;
        let replace = match &best {
            None => true,
            Some((bp, bv)) => better((&params, value), (bp, *bv)),
        };
        if replace {
            best = Some((params, value));
            best_index.clone_from(&index);
        }
    }
    let (mut best_params, mut best_value) = best.expect("grid has at least one point");

    // golden-section along each axis within one grid step of the best point
    for (d, axis) in axes.iter().enumerate() {
        if axis.len() < 2 {
            continue;
        }
        let i = best_index[d];
        let mut a = axis[i.saturating_sub(1)];
        let mut b = axis[(i + 1).min(axis.len() - 1)];
        let tol = options.relative_tolerance * (bounds[d].hi - bounds[d].lo);
        let mut probe = best_params.clone();
        let mut at = |x: f64, trace: &mut Vec<Evaluation>| -> Result<f64> {
            probe[d] = x;
            eval(&probe, Stage::Refine, trace)
        };
        let mut c = b - INV_PHI * (b - a);
        let mut e = a + INV_PHI * (b - a);
        let mut fc = at(c, &mut trace)?;
        let mut fe = at(e, &mut trace)?;
        for _ in 0..300 {
            if (b - a).abs() <= tol {
                break;
            }
            if fc >= fe {
                b = e;
                e = c;
                fe = fc;
                c = b - INV_PHI * (b - a);
                fc = at(c, &mut trace)?;
            } else {
                a = c;
                c = e;
                fc = fe;
                e = a + INV_PHI * (b - a);
                fe = at(e, &mut trace)?;
            }
        }
        for (x, v) in [(c, fc), (e, fe)] {
            let mut candidate = best_params.clone();
            candidate[d] = x;
            if better((&candidate, v), (&best_params, best_value)) {
                best_params = candidate;
                best_value = v;
            }
        }
    }

    Ok(SearchResult {
        best: best_params,
        value: best_value,
        trace,
    })
}
