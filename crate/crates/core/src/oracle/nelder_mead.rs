//! Nelder–Mead maximization with a projection applied to every candidate.

pub(crate) struct NelderMead {
    pub max_iters: usize,
    /// Initial simplex offset along each coordinate.
    pub step: f64,
}

pub(crate) struct Optimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

impl NelderMead {
    /// Maximizes `f`. `project` maps a candidate into the feasible set in
    /// place and is applied before each evaluation, so every stored vertex is
    /// feasible. The best value never decreases.
    pub fn maximize<P, F>(&self, x0: &[f64], project: P, mut f: F) -> Optimum
    where
        P: Fn(&mut [f64]),
        F: FnMut(&[f64]) -> f64,
    {
        let n = x0.len();
        let mut evaluations = 0;
        // internally minimize the negated objective
        let mut eval = |x: &mut Vec<f64>| {
            project(x);
            evaluations += 1;
            let v = -f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        let mut start = x0.to_vec();
        let v0 = eval(&mut start);
        simplex.push((start, v0));
        for i in 0..n {
            let mut x = simplex[0].0.clone();
            x[i] += self.step;
            let v = eval(&mut x);
            simplex.push((x, v));
        }

        for _ in 0..self.max_iters {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let best = simplex[0].1;
            let worst = simplex[n].1;
            if (worst - best).abs() <= 1e-15 * (1.0 + best.abs()) && diameter(&simplex) < 1e-12 {
                break;
            }

            let mut centroid = vec![0.0; n];
            for (x, _) in &simplex[..n] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi / n as f64;
                }
            }
            let toward = |from: &[f64], coef: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(from)
                    .map(|(c, x)| c + coef * (c - x))
                    .collect()
            };

            let mut xr = toward(&simplex[n].0, REFLECT);
            let fr = eval(&mut xr);
            if fr < best {
                let mut xe: Vec<f64> = centroid
                    .iter()
                    .zip(&xr)
                    .map(|(c, r)| c + EXPAND * (r - c))
                    .collect();
                let fe = eval(&mut xe);
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < simplex[n - 1].1 {
                simplex[n] = (xr, fr);
                continue;
            }
            let (mut xc, accept_below) = if fr < worst {
                let xc = centroid
                    .iter()
                    .zip(&xr)
                    .map(|(c, r)| c + CONTRACT * (r - c))
                    .collect::<Vec<_>>();
                (xc, fr)
            } else {
                (toward(&simplex[n].0, -CONTRACT), worst)
            };
            let fc = eval(&mut xc);
            if fc < accept_below {
                simplex[n] = (xc, fc);
                continue;
            }
            let anchor = simplex[0].0.clone();
            for (x, v) in simplex.iter_mut().skip(1) {
                for (xi, a) in x.iter_mut().zip(&anchor) {
                    *xi = a + SHRINK * (*xi - a);
                }
                *v = eval(x);
            }
        }

        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (x, v) = simplex.swap_remove(0);
        Optimum {
            x,
            value: -v,
            evaluations,
        }
    }
}

fn diameter(simplex: &[(Vec<f64>, f64)]) -> f64 {
    let best = &simplex[0].0;
    simplex[1..]
        .iter()
        .map(|(x, _)| {
            x.iter()
                .zip(best)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}
