// quick diagnostic: run the variational-inequality objective and print progress
use adahuber::solver::*;
use nalgebra::DVector;
fn main() {
    let center = DVector::from_vec(vec![0.9, -0.4, 1.4]);
    let scales = DVector::from_vec(vec![1.0, 4.0, 9.0]);
    let obj = BallObjective {
        dim: 3, radius: 1.0, strong_convexity: 1.0, smoothness: 9.0,
        value_and_grad: move |x: &DVector<f64>| {
            let diff = x - &center;
            let scaled = diff.component_mul(&scales);
            (0.5 * diff.dot(&scaled), scaled)
        },
    };
    for iters in [100, 1000, 10000, 100000] {
        let r = minimize_on_ball(&obj, &DVector::zeros(3), 1e-8, iters).unwrap();
        println!("iters={} converged={} gmap={:.3e} sol={:?}", r.iterations, r.converged, r.final_gradient_mapping_norm, r.solution.as_slice());
    }
}
