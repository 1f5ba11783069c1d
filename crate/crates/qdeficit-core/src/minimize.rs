//! A compact Nelder–Mead simplex minimizer in two variables, used to refine
//! the angle-grid minimum of the measurement objective. Standard coefficients
//! (reflect 1, expand 2, contract 0.5, shrink 0.5); terminates when the
//! simplex diameter drops below the requested tolerance.

/// Minimize `f` starting from `start`, with the other two initial vertices
/// offset by `steps` along each axis. Returns (argmin, min value).
pub fn nelder_mead_2d<F: FnMut(f64, f64) -> f64>(
    mut f: F,
    start: (f64, f64),
    steps: (f64, f64),
    diameter_tol: f64,
    max_iter: usize,
) -> ((f64, f64), f64) {
    const ALPHA: f64 = 1.0; // reflection
    const GAMMA: f64 = 2.0; // expansion
    const RHO: f64 = 0.5; // contraction
    const SIGMA: f64 = 0.5; // shrink

    let mut pts = [
        start,
        (start.0 + steps.0, start.1),
        (start.0, start.1 + steps.1),
    ];
    let mut vals = pts.map(|(a, b)| f(a, b));

    let dist = |p: (f64, f64), q: (f64, f64)| ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt();

    for _ in 0..max_iter {
        // Order best → worst.
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        let [best, mid, worst] = order;

        let diameter = dist(pts[best], pts[mid])
            .max(dist(pts[best], pts[worst]))
            .max(dist(pts[mid], pts[worst]));
        if diameter < diameter_tol {
            break;
        }

        let centroid = (
            (pts[best].0 + pts[mid].0) / 2.0,
            (pts[best].1 + pts[mid].1) / 2.0,
        );
        let reflected = (
            centroid.0 + ALPHA * (centroid.0 - pts[worst].0),
            centroid.1 + ALPHA * (centroid.1 - pts[worst].1),
        );
        let fr = f(reflected.0, reflected.1);

        if fr < vals[best] {
            let expanded = (
                centroid.0 + GAMMA * (reflected.0 - centroid.0),
                centroid.1 + GAMMA * (reflected.1 - centroid.1),
            );
            let fe = f(expanded.0, expanded.1);
            if fe < fr {
                pts[worst] = expanded;
                vals[worst] = fe;
            } else {
                pts[worst] = reflected;
                vals[worst] = fr;
            }
        } else if fr < vals[mid] {
            pts[worst] = reflected;
            vals[worst] = fr;
        } else {
            let contracted = (
                centroid.0 + RHO * (pts[worst].0 - centroid.0),
                centroid.1 + RHO * (pts[worst].1 - centroid.1),
            );
            let fc = f(contracted.0, contracted.1);
            if fc < vals[worst] {
                pts[worst] = contracted;
                vals[worst] = fc;
            } else {
                for i in [mid, worst] {
                    pts[i] = (
                        pts[best].0 + SIGMA * (pts[i].0 - pts[best].0),
                        pts[best].1 + SIGMA * (pts[i].1 - pts[best].1),
                    );
                    vals[i] = f(pts[i].0, pts[i].1);
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..3 {
        if vals[i] < vals[best] {
            best = i;
        }
    }
    (pts[best], vals[best])
}
