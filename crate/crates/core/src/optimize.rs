//! Derivative-free minimization used to refine grid searches over
//! measurement angles, plus a bracketing root finder.

/// Outcome of a Nelder-Mead run.
#[derive(Debug, Clone)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub iterations: usize,
    pub converged: bool,
}

/// Nelder-Mead simplex minimization with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
///
/// The initial simplex is `start` plus one vertex per coordinate offset by
/// `steps[i]`. Iteration stops once the spread of objective values across
/// the simplex is at most `tolerance`, or after `max_iterations`.
pub fn nelder_mead<F>(
    mut objective: F,
    start: &[f64],
    steps: &[f64],
    max_iterations: usize,
    tolerance: f64,
) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    assert_eq!(start.len(), steps.len(), "one step per coordinate");
    let dim = start.len();
    let mut evaluations = 0;
    let mut eval = |x: &[f64]| {
        evaluations += 1;
        objective(x)
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((start.to_vec(), eval(start)));
    for i in 0..dim {
        let mut x = start.to_vec();
        x[i] += steps[i];
        let fx = eval(&x);
        simplex.push((x, fx));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iterations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if simplex[dim].1 - simplex[0].1 <= tolerance {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..dim)
            .map(|j| simplex[..dim].iter().map(|(x, _)| x[j]).sum::<f64>() / dim as f64)
            .collect();
        let toward = |t: f64, worst: &[f64]| -> Vec<f64> {
            centroid
                .iter()
                .zip(worst)
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let worst = simplex[dim].0.clone();
        let f_best = simplex[0].1;
        let f_second_worst = simplex[dim - 1].1;
        let f_worst = simplex[dim].1;

        let reflected = toward(-1.0, &worst);
        let f_reflected = eval(&reflected);
        if f_reflected < f_best {
            let expanded = toward(-2.0, &worst);
            let f_expanded = eval(&expanded);
            simplex[dim] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
            continue;
        }
        if f_reflected < f_second_worst {
            simplex[dim] = (reflected, f_reflected);
            continue;
        }
        let (contracted, f_contracted) = if f_reflected < f_worst {
            let x = toward(-0.5, &worst);
            let fx = eval(&x);
            (x, fx)
        } else {
            let x = toward(0.5, &worst);
            let fx = eval(&x);
            (x, fx)
        };
        if f_contracted < f_worst.min(f_reflected) {
            simplex[dim] = (contracted, f_contracted);
            continue;
        }
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = best
                .iter()
                .zip(&vertex.0)
                .map(|(b, v)| b + 0.5 * (v - b))
                .collect();
            let fx = eval(&x);
            *vertex = (x, fx);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (point, value) = simplex.swap_remove(0);
    Minimum {
        point,
        value,
        evaluations,
        iterations,
        converged,
    }
}

/// Bisection for a sign change of `f` on `[lo, hi]`, stopping when the
/// bracket is narrower than `tolerance`. Returns `None` if `f(lo)` and
/// `f(hi)` share a strict sign.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, tolerance: f64) -> Option<f64>
where
    F: FnMut(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Some(lo);
    }
    if f_hi == 0.0 {
        return Some(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return None;
    }
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Some(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
