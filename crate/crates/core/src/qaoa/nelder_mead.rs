//! Derivative-free simplex minimizer (reflection 1, expansion 2, contraction
//! and shrink 1/2).

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMead {
    pub max_evals: usize,
    pub xtol: f64,
    pub ftol: f64,
    /// Offset of the initial simplex vertices along each axis.
    pub step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub fx: f64,
    pub evals: usize,
    pub converged: bool,
}

impl NelderMead {
    pub fn minimize(&self, mut f: impl FnMut(&[f64]) -> f64, x0: &[f64]) -> Minimum {
        let n = x0.len();
        let evals = std::cell::Cell::new(0usize);
        let mut eval = |x: &[f64]| {
            evals.set(evals.get() + 1);
            let v = f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };
        if n == 0 {
            let fx = eval(x0);
            return Minimum {
                x: vec![],
                fx,
                evals: 1,
                converged: true,
            };
        }

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push((x0.to_vec(), eval(x0)));
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += self.step;
            let fx = eval(&x);
            simplex.push((x, fx));
        }

        let mut converged = false;
        loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let (best_x, best_f) = (&simplex[0].0, simplex[0].1);
            let fspread = simplex.iter().map(|s| (s.1 - best_f).abs()).fold(0.0, f64::max);
            let xspread = simplex
                .iter()
                .flat_map(|s| s.0.iter().zip(best_x).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            if fspread <= self.ftol && xspread <= self.xtol {
                converged = true;
                break;
            }
            if evals.get() >= self.max_evals {
                break;
            }

            let centroid: Vec<f64> = (0..n)
                .map(|j| simplex[..n].iter().map(|s| s.0[j]).sum::<f64>() / n as f64)
                .collect();
            let worst = simplex[n].clone();
            let along = |t: f64, from: &[f64]| -> Vec<f64> {
                centroid.iter().zip(from).map(|(c, w)| c + t * (w - c)).collect()
            };

            let xr = along(-1.0, &worst.0);
            let fr = eval(&xr);
            if fr < simplex[0].1 {
                let xe = along(-2.0, &worst.0);
                let fe = eval(&xe);
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < simplex[n - 1].1 {
                simplex[n] = (xr, fr);
                continue;
            }
            let (xc, fc) = if fr < worst.1 {
                let xc = along(-0.5, &worst.0);
                let fc = eval(&xc);
                (xc, fc)
            } else {
                let xc = along(0.5, &worst.0);
                let fc = eval(&xc);
                (xc, fc)
            };
            if fc < fr.min(worst.1) {
                simplex[n] = (xc, fc);
                continue;
            }
            let anchor = simplex[0].0.clone();
            for s in simplex.iter_mut().skip(1) {
                let x: Vec<f64> = anchor.iter().zip(&s.0).map(|(a, v)| a + 0.5 * (v - a)).collect();
                let fx = eval(&x);
                *s = (x, fx);
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (x, fx) = simplex.swap_remove(0);
        Minimum {
            x,
            fx,
            evals: evals.get(),
            converged,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nm() -> NelderMead {
        NelderMead {
            max_evals: 2000,
            xtol: 1e-8,
            ftol: 1e-10,
            step: 0.5,
        }
    }

    #[test]
    fn quadratic_bowl() {
        let m = nm().minimize(|x| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2), &[0.0, 0.0]);
        assert!(m.converged);
        assert!((m.x[0] - 1.0).abs() < 1e-4 && (m.x[1] + 2.0).abs() < 1e-4, "{:?}", m.x);
    }

    #[test]
    fn rosenbrock() {
        let m = nm().minimize(
            |x| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2),
            &[-1.2, 1.0],
        );
        assert!(m.fx < 1e-8, "{m:?}");
    }

    #[test]
    fn budget_is_respected() {
        let limited = NelderMead { max_evals: 20, ..nm() };
        let m = limited.minimize(|x| x.iter().map(|v| v * v).sum(), &[3.0, -4.0, 1.0]);
        assert!(!m.converged);
        // One iteration may overshoot by at most a shrink (n + 2 evaluations).
        assert!(m.evals <= 20 + 5);
    }

    #[test]
    fn nan_is_treated_as_worst() {
        let m = nm().minimize(|x| if x[0] < 0.0 { f64::NAN } else { (x[0] - 2.0).powi(2) }, &[1.0]);
        assert!((m.x[0] - 2.0).abs() < 1e-3);
    }
}
