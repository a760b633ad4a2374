//! Incremental SPD precision matrices.
//!
//! Maintains `H = lambda*I + sum_s (phi_s/sigma_s)(phi_s/sigma_s)^T` together
//! with its inverse (Sherman–Morrison rank-one updates) and log-determinant,
//! and provides the weighted norms `‖x‖_H` and `‖x‖_{H^{-1}}` used by every
//! confidence-set computation in the crate.

use nalgebra::{Cholesky, DMatrix, DVector};

use crate::error::{Error, Result};

/// Default number of rank-one updates between dense refactorizations.
pub const DEFAULT_RECONDITION_INTERVAL: u64 = 512;

/// An SPD shape matrix with maintained inverse and log-determinant.
///
/// The inverse is kept current through rank-one updates; a dense Cholesky
/// refactorization runs every `recondition_interval` updates to bound
/// floating-point drift. Plain value semantics: clone to snapshot, move
/// between threads freely.
#[derive(Debug, Clone)]
pub struct PrecisionState {
    dim: usize,
    lambda: f64,
    matrix: DMatrix<f64>,
    inverse: DMatrix<f64>,
    log_det: f64,
    update_count: u64,
    recondition_interval: u64,
}

impl PrecisionState {
    /// `lambda * I` with inverse `I / lambda` and log-det `d * ln(lambda)`.
    pub fn new(dim: usize, lambda: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("dimension must be at least 1"));
        }
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::domain(format!("lambda must be positive and finite, got {lambda}")));
        }
        Ok(Self {
            dim,
            lambda,
            matrix: DMatrix::from_diagonal_element(dim, dim, lambda),
            inverse: DMatrix::from_diagonal_element(dim, dim, 1.0 / lambda),
            log_det: dim as f64 * lambda.ln(),
            update_count: 0,
            recondition_interval: DEFAULT_RECONDITION_INTERVAL,
        })
    }

    /// Overrides the refactorization cadence; 0 disables periodic reconditioning.
    pub fn with_recondition_interval(mut self, interval: u64) -> Self {
        self.recondition_interval = interval;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn inverse(&self) -> &DMatrix<f64> {
        &self.inverse
    }

    pub fn log_det(&self) -> f64 {
        self.log_det
    }

    pub fn update_count(&self) -> u64 {
        self.update_count
    }

    /// Adds `(phi/sigma)(phi/sigma)^T`, updating the inverse by the rank-one
    /// identity and the log-determinant by `ln(1 + ‖phi/sigma‖_{H^{-1}}^2)`.
    pub fn rank_one_update(&mut self, phi: &DVector<f64>, sigma: f64) -> Result<()> {
        if phi.len() != self.dim {
            return Err(Error::domain(format!(
                "dimension mismatch: state is {}, vector is {}",
                self.dim,
                phi.len()
            )));
        }
        if phi.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("non-finite feature vector"));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::domain(format!("sigma must be positive and finite, got {sigma}")));
        }
        let v = phi / sigma;
        let hv = &self.inverse * &v;
        let denom = 1.0 + v.dot(&hv);
        self.matrix.ger(1.0, &v, &v, 1.0);
        self.inverse.ger(-1.0 / denom, &hv, &hv, 1.0);
        symmetrize(&mut self.matrix);
        symmetrize(&mut self.inverse);
        self.log_det += denom.ln();
        self.update_count += 1;
        if self.recondition_interval > 0 && self.update_count % self.recondition_interval == 0 {
            self.recondition()?;
        }
        Ok(())
    }

    /// `sqrt(x^T H^{-1} x)`.
    pub fn weighted_norm_inv(&self, x: &DVector<f64>) -> f64 {
        quad_form(&self.inverse, x).max(0.0).sqrt()
    }

    /// `sqrt(x^T H x)`.
    pub fn weighted_norm(&self, x: &DVector<f64>) -> f64 {
        quad_form(&self.matrix, x).max(0.0).sqrt()
    }

    /// Recomputes the inverse and log-determinant from `matrix` by dense
    /// Cholesky factorization; the matrix itself is untouched.
    pub fn recondition(&mut self) -> Result<()> {
        let chol = Cholesky::new(self.matrix.clone())
            .ok_or_else(|| Error::numerical("precision matrix is not positive definite"))?;
        self.log_det = 2.0 * chol.l_dirty().diagonal().iter().map(|d| d.ln()).sum::<f64>();
        self.inverse = chol.inverse();
        symmetrize(&mut self.inverse);
        Ok(())
    }

    /// Test and oracle hook: deliberately overwrite the maintained inverse.
    #[doc(hidden)]
    pub fn perturb_inverse(&mut self, delta: &DMatrix<f64>) {
        self.inverse += delta;
    }
}

fn symmetrize(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
}

fn quad_form(m: &DMatrix<f64>, x: &DVector<f64>) -> f64 {
    // x^T M x without allocating M*x is not worth it at these sizes
    x.dot(&(m * x))
}
