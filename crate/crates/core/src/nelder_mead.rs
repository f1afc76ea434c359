//! Nelder-Mead simplex search in `R^d`, minimizing.

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    /// Edge length of the initial simplex along each axis.
    pub initial_step: f64,
    /// Stop when `f(worst) - f(best)` drops below this.
    pub f_tol: f64,
    /// Stop when every vertex is within this distance of the best one.
    pub x_tol: f64,
    pub max_iterations: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.05,
            f_tol: 1e-13,
            x_tol: 1e-10,
            max_iterations: 2000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimize `f` starting from `start`. `on_iteration` receives the best value
/// after each iteration.
pub fn minimize(
    f: impl Fn(&[f64]) -> f64,
    start: &[f64],
    opts: &NelderMeadOptions,
    mut on_iteration: impl FnMut(f64),
) -> NelderMeadResult {
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let d = start.len();
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(d + 1);
    pts.push(start.to_vec());
    for i in 0..d {
        let mut p = start.to_vec();
        p[i] += opts.initial_step;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| f(p)).collect();

    let affine = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
    };

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        // order best..worst, stable on ties
        let mut order: Vec<usize> = (0..=d).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let spread = vals[d] - vals[0];
        let diameter = pts[1..]
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&pts[0])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if spread < opts.f_tol || diameter < opts.x_tol {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; d];
        for p in &pts[..d] {
            centroid.iter_mut().zip(p).for_each(|(c, x)| *c += x / d as f64);
        }
        let worst = pts[d].clone();
        // x_r = c + REFLECT (c - worst)
        let xr = affine(&centroid, &worst, -REFLECT);
        let fr = f(&xr);
        if fr < vals[0] {
            let xe = affine(&centroid, &worst, -EXPAND);
            let fe = f(&xe);
            if fe < fr {
                pts[d] = xe;
                vals[d] = fe;
            } else {
                pts[d] = xr;
                vals[d] = fr;
            }
        } else if fr < vals[d - 1] {
            pts[d] = xr;
            vals[d] = fr;
        } else {
            let (xc, fc) = if fr < vals[d] {
                let xc = affine(&centroid, &xr, CONTRACT);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = affine(&centroid, &worst, CONTRACT);
                let fc = f(&xc);
                (xc, fc)
            };
            if fc < vals[d].min(fr) {
                pts[d] = xc;
                vals[d] = fc;
            } else {
                let best = pts[0].clone();
                for i in 1..=d {
                    pts[i] = affine(&best, &pts[i], SHRINK);
                    vals[i] = f(&pts[i]);
                }
            }
        }
        let best = vals.iter().copied().fold(f64::INFINITY, f64::min);
        on_iteration(best);
    }
    let (bi, _) = vals
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty simplex");
    NelderMeadResult {
        x: pts[bi].clone(),
        value: vals[bi],
        iterations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 0.5).powi(2);
        let r = minimize(f, &[0.0, 0.0], &NelderMeadOptions::default(), |_| {});
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-5 && (r.x[1] + 0.5).abs() < 1e-5);
        assert!(r.value < 1e-12);
    }

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let opts = NelderMeadOptions {
            initial_step: 0.5,
            max_iterations: 5000,
            ..Default::default()
        };
        let r = minimize(f, &[-1.2, 1.0], &opts, |_| {});
        assert!((r.x[0] - 1.0).abs() < 1e-4 && (r.x[1] - 1.0).abs() < 1e-4);
    }

    #[test]
    fn one_dimensional_and_trace() {
        let mut trace = Vec::new();
        let r = minimize(
            |x: &[f64]| (x[0] - 0.25).powi(2),
            &[0.0],
            &NelderMeadOptions::default(),
            |v| trace.push(v),
        );
        assert!((r.x[0] - 0.25).abs() < 1e-6);
        assert_eq!(trace.len(), r.iterations);
        assert!(trace.windows(2).all(|w| w[1] <= w[0]));
    }
}
