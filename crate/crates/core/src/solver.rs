//! Accelerated projected-gradient minimization over a Euclidean ball.
//!
//! Minimizes a strongly convex, smooth objective subject to `‖x‖ <= radius`
//! using Nesterov acceleration with function-value restarts. Termination is
//! judged by the norm of the gradient mapping
//! `G(x) = (x - P_B(x - grad f(x)/L)) * L` with `L` the smoothness constant
//! and `P_B` the ball projection, which vanishes exactly at constrained
//! minimizers.

use nalgebra::DVector;

use crate::error::{Error, Result};

/// A smooth strongly convex objective restricted to a Euclidean ball.
pub struct BallObjective<F>
where
    F: Fn(&DVector<f64>) -> (f64, DVector<f64>),
{
    pub dim: usize,
    /// Ball radius; feasible set is `{x : ‖x‖ <= radius}`.
    pub radius: f64,
    /// Lower bound on the Hessian spectrum.
    pub strong_convexity: f64,
    /// Upper bound on the Hessian spectrum; the step size is its reciprocal.
    pub smoothness: f64,
    /// Returns `(f(x), grad f(x))`; must be deterministic.
    pub value_and_grad: F,
}

/// Outcome of a ball-constrained solve.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub solution: DVector<f64>,
    pub iterations: usize,
    pub final_gradient_mapping_norm: f64,
    /// False when the iteration budget ran out first; the solution is then
    /// the best iterate seen and the caller decides how to proceed.
    pub converged: bool,
}

/// Euclidean projection onto the ball of the given radius: `y * min(1, r/‖y‖)`.
pub fn project_to_ball(y: &DVector<f64>, radius: f64) -> DVector<f64> {
    let norm = y.norm();
    if norm <= radius || norm == 0.0 {
        y.clone()
    } else {
        y * (radius / norm)
    }
}

/// Runs accelerated projected gradient descent from `start` until the
/// gradient-mapping norm drops below `tol` or `max_iters` steps elapse.
pub fn minimize_on_ball<F>(
    obj: &BallObjective<F>,
    start: &DVector<f64>,
    tol: f64,
    max_iters: usize,
) -> Result<SolveReport>
where
    F: Fn(&DVector<f64>) -> (f64, DVector<f64>),
{
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    if !(obj.smoothness > 0.0) || !obj.smoothness.is_finite() {
        return Err(Error::domain(format!("smoothness must be positive and finite, got {}", obj.smoothness)));
    }
    if !(obj.radius > 0.0) {
        return Err(Error::domain(format!("radius must be positive, got {}", obj.radius)));
    }
    let eta = 1.0 / obj.smoothness;
    let eval = |x: &DVector<f64>| -> Result<(f64, DVector<f64>)> {
        let (value, grad) = (obj.value_and_grad)(x);
        if !value.is_finite() || grad.iter().any(|g| !g.is_finite()) {
            return Err(Error::numerical("objective returned a non-finite value or gradient"));
        }
        Ok((value, grad))
    };

    let mut x = project_to_ball(start, obj.radius);
    let (mut fx, gx) = eval(&x)?;

    // check the start point before doing any work
    let x_step = project_to_ball(&(&x - eta * &gx), obj.radius);
    let mut gmap = (&x - &x_step).norm() / eta;
    if gmap <= tol {
        return Ok(SolveReport { solution: x, iterations: 0, final_gradient_mapping_norm: gmap, converged: true });
    }

    // momentum coefficient for the strongly convex regime
    let kappa = (obj.smoothness / obj.strong_convexity.max(f64::MIN_POSITIVE)).max(1.0);
    let mix = (kappa.sqrt() - 1.0) / (kappa.sqrt() + 1.0);

    let mut y = x.clone();
    let mut best = x.clone();
    let mut best_value = fx;
    let mut best_gmap = gmap;

    for iter in 1..=max_iters {
        let (_, gy) = eval(&y)?;
        let x_next = project_to_ball(&(&y - eta * &gy), obj.radius);
        let (fx_next, gx_next) = eval(&x_next)?;

        gmap = {
            let step = project_to_ball(&(&x_next - eta * &gx_next), obj.radius);
            (&x_next - step).norm() / eta
        };
        if fx_next < best_value {
            best = x_next.clone();
            best_value = fx_next;
            best_gmap = gmap;
        }
        if gmap <= tol {
            return Ok(SolveReport {
                solution: x_next,
                iterations: iter,
                final_gradient_mapping_norm: gmap,
                converged: true,
            });
        }

        // Function-value restart with an ulp-sized slack: a genuine increase
        // kills the momentum, while sub-resolution noise near the optimum
        // must not freeze the iteration.
        let slack = 8.0 * f64::EPSILON * fx.abs().max(1.0);
        if fx_next > fx + slack {
            y = x_next.clone();
        } else {
            y = &x_next + (&x_next - &x) * mix;
            if y.norm() > obj.radius {
                y = project_to_ball(&y, obj.radius);
            }
        }
        x = x_next;
        fx = fx_next;
    }

    Ok(SolveReport {
        solution: best,
        iterations: max_iters,
        final_gradient_mapping_norm: best_gmap,
        converged: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use approx::assert_relative_eq;
    use nalgebra::DMatrix;
    use rand::Rng;
    use rand_distr::StandardNormal;

    fn quadratic(center: DVector<f64>, scales: DVector<f64>) -> BallObjective<impl Fn(&DVector<f64>) -> (f64, DVector<f64>)> {
        let dim = center.len();
        let mu = scales.min();
        let l = scales.max();
        BallObjective {
            dim,
            radius: 1.0,
            strong_convexity: mu,
            smoothness: l,
            value_and_grad: move |x: &DVector<f64>| {
                let diff = x - &center;
                let scaled = diff.component_mul(&scales);
                (0.5 * diff.dot(&scaled), scaled)
            },
        }
    }

    #[test]
    fn interior_optimum_is_immediate() {
        let obj = quadratic(DVector::zeros(2), DVector::from_element(2, 1.0));
        let report = minimize_on_ball(&obj, &DVector::zeros(2), 1e-10, 100).unwrap();
        assert!(report.converged);
        assert_eq!(report.iterations, 0);
        assert!(report.solution.norm() < 1e-12);
    }

    #[test]
    fn exterior_optimum_projects_onto_boundary() {
        // f(x) = ||x - (2,0)||^2 / 2 over the unit ball -> (1, 0)
        let obj = quadratic(DVector::from_vec(vec![2.0, 0.0]), DVector::from_element(2, 1.0));
        let report = minimize_on_ball(&obj, &DVector::zeros(2), 1e-10, 1000).unwrap();
        assert!(report.converged);
        assert_relative_eq!(report.solution[0], 1.0, epsilon = 1e-8);
        assert!(report.solution[1].abs() < 1e-8);
        assert!(report.solution.norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn projection_is_idempotent() {
        let mut rng = stream(3, "solver-test");
        for _ in 0..100 {
            let y = DVector::from_fn(4, |_, _| rng.sample::<f64, _>(StandardNormal) * 3.0);
            let once = project_to_ball(&y, 1.3);
            let twice = project_to_ball(&once, 1.3);
            assert!((once - twice).norm() < 1e-15);
        }
    }

    /// Plain projected gradient descent, used as a long-run oracle.
    fn pgd_oracle<F>(obj: &BallObjective<F>, steps: usize) -> DVector<f64>
    where
        F: Fn(&DVector<f64>) -> (f64, DVector<f64>),
    {
        let eta = 1.0 / obj.smoothness;
        let mut x = DVector::zeros(obj.dim);
        for _ in 0..steps {
            let (_, g) = (obj.value_and_grad)(&x);
            x = project_to_ball(&(&x - eta * &g), obj.radius);
        }
        x
    }

    fn huber_regression_objective(
        data: Vec<(DVector<f64>, f64)>,
        lambda: f64,
        tau: f64,
        radius: f64,
    ) -> BallObjective<impl Fn(&DVector<f64>) -> (f64, DVector<f64>)> {
        let dim = data[0].0.len();
        let smoothness = lambda + data.len() as f64;
        BallObjective {
            dim,
            radius,
            strong_convexity: lambda,
            smoothness,
            value_and_grad: move |theta: &DVector<f64>| {
                let mut value = 0.5 * lambda * theta.norm_squared();
                let mut grad = lambda * theta;
                for (phi, y) in &data {
                    let z = y - phi.dot(theta);
                    value += crate::robust_loss::pseudo_huber_raw(z, tau);
                    grad -= phi * crate::robust_loss::pseudo_huber_deriv_raw(z, tau);
                }
                (value, grad)
            },
        }
    }

    #[test]
    fn matches_long_run_pgd_on_huber_regression() {
        // 30 synthetic points, d = 3, B = 5; compare in the Hessian metric of
        // the data Gram matrix against a 1e6-step projected-GD oracle
        let mut rng = stream(7, "solver-test");
        let theta_star = DVector::from_vec(vec![1.5, -2.0, 0.5]);
        let mut data = Vec::new();
        for _ in 0..30 {
            let phi = DVector::from_fn(3, |_, _| rng.sample::<f64, _>(StandardNormal));
            let noise: f64 = rng.sample(StandardNormal);
            let y = phi.dot(&theta_star) + noise;
            data.push((phi, y));
        }
        let lambda = 0.5;
        let mut h = DMatrix::from_diagonal_element(3, 3, lambda);
        for (phi, _) in &data {
            h += phi * phi.transpose();
        }

        let obj = huber_regression_objective(data.clone(), lambda, 1.0, 5.0);
        let oracle = pgd_oracle(&obj, 1_000_000);
        let report = minimize_on_ball(&obj, &DVector::zeros(3), 1e-9, 50_000).unwrap();
        assert!(report.converged);
        let diff = &report.solution - &oracle;
        let h_dist = diff.dot(&(&h * &diff)).sqrt();
        assert!(h_dist < 1e-5, "H-metric distance {h_dist}");
    }

    #[test]
    fn variational_inequality_at_solution() {
        // <grad f(x), x - z> <= tol * (||x - z|| + 1) for random feasible z
        let mut rng = stream(15, "solver-test");
        let center = DVector::from_vec(vec![0.9, -0.4, 1.4]);
        let scales = DVector::from_vec(vec![1.0, 4.0, 9.0]);
        let obj = quadratic(center, scales);
        let tol = 1e-8;
        let report = minimize_on_ball(&obj, &DVector::zeros(3), tol, 100_000).unwrap();
        assert!(report.converged);
        let (_, g) = (obj.value_and_grad)(&report.solution);
        for _ in 0..100 {
            let mut z = DVector::from_fn(3, |_, _| rng.sample::<f64, _>(StandardNormal));
            z = project_to_ball(&(z * rng.gen_range(0.0..1.0)), 1.0);
            let slack = g.dot(&(&report.solution - &z));
            assert!(slack <= tol * ((&report.solution - &z).norm() + 1.0) * 2.0);
        }
    }

    #[test]
    fn iteration_count_scales_with_sqrt_condition_number() {
        // on quadratics, iterations stay within a factor of 10 of
        // sqrt(L/mu) * log(1/tol)
        let tol = 1e-8;
        for &cond in &[100.0f64, 10_000.0] {
            let scales = DVector::from_vec(vec![1.0, cond.sqrt(), cond]);
            let center = DVector::from_vec(vec![0.3, 0.2, 0.1]);
            let obj = quadratic(center, scales);
            let report = minimize_on_ball(&obj, &DVector::zeros(3), tol, 2_000_000).unwrap();
            assert!(report.converged);
            let budget = 10.0 * cond.sqrt() * (1.0 / tol).ln() + 50.0;
            assert!(
                (report.iterations as f64) < budget,
                "cond {cond}: {} iterations exceeded budget {budget}",
                report.iterations
            );
        }
    }

    #[test]
    fn exhausted_budget_reports_non_convergence() {
        let obj = quadratic(DVector::from_vec(vec![0.5, 0.5]), DVector::from_vec(vec![1.0, 5000.0]));
        let report = minimize_on_ball(&obj, &DVector::from_vec(vec![-0.9, 0.1]), 1e-12, 3).unwrap();
        assert!(!report.converged);
        assert_eq!(report.iterations, 3);
        assert!(report.solution.norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn non_finite_gradient_is_an_error() {
        let obj = BallObjective {
            dim: 1,
            radius: 1.0,
            strong_convexity: 1.0,
            smoothness: 1.0,
            value_and_grad: |_: &DVector<f64>| (f64::NAN, DVector::from_vec(vec![f64::NAN])),
        };
        assert!(minimize_on_ball(&obj, &DVector::zeros(1), 1e-6, 10).is_err());
    }
}
