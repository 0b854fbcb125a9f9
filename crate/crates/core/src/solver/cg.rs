use serde::{Deserialize, Serialize};

use super::system::PoissonSystem;
use crate::error::{Error, Result};

/// Iteration cap used when [`SolverParams::max_iter`] is `None`.
pub const MAX_ITER_CAP: usize = 100_000;

pub fn default_max_iter(unknowns: usize) -> usize {
    unknowns.saturating_mul(10).clamp(1, MAX_ITER_CAP)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverParams {
    /// Target relative residual `‖b − A x‖ / ‖b‖`.
    pub tol: f64,
    /// `None` means `10 × |Ω|`, capped at 100 000.
    pub max_iter: Option<usize>,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            tol: 1e-6,
            max_iter: None,
        }
    }
}

impl SolverParams {
    pub fn with_tol(tol: f64) -> Self {
        SolverParams {
            tol,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "solver tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == Some(0) {
            return Err(Error::InvalidConfig(
                "max_iter must be at least 1".to_string(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub iterations: usize,
    /// Relative residual recomputed from the returned solution.
    pub relative_residual: f64,
    pub converged: bool,
}

/// A solver result paired with its convergence report.
///
/// Non-convergence is not an error at this level: `value` then holds the last
/// iterate and `report.converged` is false. Use
/// [`into_converged`](Self::into_converged) to turn that case into
/// [`Error::NotConverged`].
#[derive(Debug, Clone, PartialEq)]
pub struct Solved<T> {
    pub value: T,
    pub report: SolveReport,
}

impl<T> Solved<T> {
    pub fn into_converged(self) -> Result<T> {
        if self.report.converged {
            Ok(self.value)
        } else {
            Err(Error::NotConverged(self.report))
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Solved<U> {
        Solved {
            value: f(self.value),
            report: self.report,
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Jacobi-preconditioned conjugate gradient on an assembled [`PoissonSystem`].
///
/// Starts from zero. When the recurrence residual drops below `tol` the true
/// residual is recomputed; if rounding drift left it above `tol`, iteration
/// restarts from the true residual. A zero right-hand side returns the zero
/// vector, converged, after zero iterations.
pub fn solve(system: &PoissonSystem, params: &SolverParams) -> Result<Solved<Vec<f64>>> {
    params.validate()?;
    let n = system.len();
    if n == 0 {
        return Err(Error::EmptyRegion);
    }
    let tol = params.tol;
    let max_iter = params.max_iter.unwrap_or_else(|| default_max_iter(n));
    let b = system.rhs();
    let b_norm = norm(b);
    let mut x = vec![0.0; n];
    if b_norm == 0.0 {
        return Ok(Solved {
            value: x,
            report: SolveReport {
                iterations: 0,
                relative_residual: 0.0,
                converged: true,
            },
        });
    }

    let inv_diag: Vec<f64> = (0..n).map(|i| 1.0 / system.diagonal(i)).collect();
    let precondition = |r: &[f64], z: &mut [f64]| {
        for ((zi, ri), di) in z.iter_mut().zip(r).zip(&inv_diag) {
            *zi = ri * di;
        }
    };

    let mut r = b.to_vec();
    let mut z = vec![0.0; n];
    precondition(&r, &mut z);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; n];
    let mut iterations = 0;

    while iterations < max_iter {
        system.apply(&p, &mut ap);
        let pap = dot(&p, &ap);
        if !(pap > 0.0) {
            break;
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        iterations += 1;

        if norm(&r) / b_norm <= tol {
            system.apply(&x, &mut ap);
            for i in 0..n {
                r[i] = b[i] - ap[i];
            }
            if norm(&r) / b_norm <= tol {
                break;
            }
            precondition(&r, &mut z);
            p.copy_from_slice(&z);
            rz = dot(&r, &z);
            continue;
        }

        precondition(&r, &mut z);
        let rz_next = dot(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }

    let relative_residual = system.residual_norm(&x) / b_norm;
    Ok(Solved {
        value: x,
        report: SolveReport {
            iterations,
            relative_residual,
            converged: relative_residual <= tol,
        },
    })
}
