//! Bounded derivative-free maximizers for one and two continuous
//! parameters.

/// Settings shared by the maximizers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerOptions {
    /// Relative objective change below which a search has converged.
    pub rel_tol: f64,
    /// Absolute tolerance on the parameters.
    pub x_tol: f64,
    pub max_iter: usize,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        OptimizerOptions {
            rel_tol: 1e-9,
            x_tol: 1e-10,
            max_iter: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum<X> {
    pub x: X,
    pub value: f64,
    pub converged: bool,
    pub evaluations: usize,
}

const GOLDEN: f64 = 0.381_966_011_250_105_1;

/// Brent's method on `[lo, hi]`: golden-section steps with parabolic
/// interpolation. The end points are evaluated too, so a maximum on the
/// boundary is found.
pub fn brent_max<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, opts: &OptimizerOptions) -> Maximum<f64> {
    let mut g = |x: f64| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            -v
        }
    };
    let (mut a, mut b) = (lo, hi);
    let mut x = a + GOLDEN * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = g(x);
    let (mut fw, mut fv) = (fx, fx);
    let (mut d, mut e) = (0.0f64, 0.0f64);
    let mut evals = 1;
    let mut converged = false;

    for _ in 0..opts.max_iter {
        let m = 0.5 * (a + b);
        let tol1 = 1.5e-8 * x.abs() + opts.x_tol / 3.0;
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            converged = true;
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let etemp = e;
            e = d;
            if p.abs() < (0.5 * q * etemp).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if x < m { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x < m { b - x } else { a - x };
            d = GOLDEN * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else if d > 0.0 {
            x + tol1
        } else {
            x - tol1
        };
        let fu = g(u);
        evals += 1;
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    let mut best = (x, fx);
    for end in [lo, hi] {
        let fe = g(end);
        evals += 1;
        if fe < best.1 {
            best = (end, fe);
        }
    }
    Maximum {
        x: best.0,
        value: -best.1,
        converged,
        evaluations: evals,
    }
}

fn clamp2(x: [f64; 2], bounds: &[(f64, f64); 2]) -> [f64; 2] {
    [
        x[0].clamp(bounds[0].0, bounds[0].1),
        x[1].clamp(bounds[1].0, bounds[1].1),
    ]
}

fn nm_run<F: FnMut([f64; 2]) -> f64>(
    f: &mut F,
    x0: [f64; 2],
    bounds: &[(f64, f64); 2],
    opts: &OptimizerOptions,
    budget: usize,
) -> Maximum<[f64; 2]> {
    let mut eval = |x: [f64; 2]| {
        let v = f(x);
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    };
    let x0 = clamp2(x0, bounds);
    let mut simplex: Vec<([f64; 2], f64)> = Vec::with_capacity(3);
    simplex.push((x0, eval(x0)));
    for i in 0..2 {
        let (lo, hi) = bounds[i];
        let mut step = 0.1 * x0[i].abs().max(0.05);
        step = step.min(0.25 * (hi - lo));
        let mut p = x0;
        p[i] = if p[i] + step <= hi { p[i] + step } else { p[i] - step };
        let p = clamp2(p, bounds);
        simplex.push((p, eval(p)));
    }
    let mut evals = 3;
    let mut converged = false;

    while evals < budget {
        // descending by value: best first
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        let (best, worst) = (simplex[0].1, simplex[2].1);
        let spread = (best - worst).abs();
        let scale = best.abs().max(1e-300);
        let size = simplex
            .iter()
            .skip(1)
            .map(|(p, _)| (p[0] - simplex[0].0[0]).abs().max((p[1] - simplex[0].0[1]).abs()))
            .fold(0.0f64, f64::max);
        if best.is_finite() && spread <= opts.rel_tol * scale && size <= opts.x_tol.max(1e-7) {
            converged = true;
            break;
        }
        let c = [
            0.5 * (simplex[0].0[0] + simplex[1].0[0]),
            0.5 * (simplex[0].0[1] + simplex[1].0[1]),
        ];
        let w = simplex[2].0;
        let along = |t: f64| clamp2([c[0] + t * (w[0] - c[0]), c[1] + t * (w[1] - c[1])], bounds);
        let xr = along(-1.0);
        let fr = eval(xr);
        evals += 1;
        if fr > simplex[0].1 {
            let xe = along(-2.0);
            let fe = eval(xe);
            evals += 1;
            simplex[2] = if fe > fr { (xe, fe) } else { (xr, fr) };
        } else if fr > simplex[1].1 {
            simplex[2] = (xr, fr);
        } else {
            let (xc, fc) = if fr > simplex[2].1 {
                let xc = along(-0.5);
                (xc, eval(xc))
            } else {
                let xc = along(0.5);
                (xc, eval(xc))
            };
            evals += 1;
            if fc > simplex[2].1.max(fr) {
                simplex[2] = (xc, fc);
            } else {
                let b = simplex[0].0;
                for s in simplex.iter_mut().skip(1) {
                    let p = clamp2([b[0] + 0.5 * (s.0[0] - b[0]), b[1] + 0.5 * (s.0[1] - b[1])], bounds);
                    *s = (p, eval(p));
                }
                evals += 2;
            }
        }
    }
    simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
    Maximum {
        x: simplex[0].0,
        value: simplex[0].1,
        converged,
        evaluations: evals,
    }
}

/// Nelder-Mead restricted to a box by projecting trial points onto it.
/// Restarts once from the best vertex to escape a collapsed simplex.
pub fn nelder_mead_max<F: FnMut([f64; 2]) -> f64>(
    mut f: F,
    x0: [f64; 2],
    bounds: [(f64, f64); 2],
    opts: &OptimizerOptions,
) -> Maximum<[f64; 2]> {
    let first = nm_run(&mut f, x0, &bounds, opts, opts.max_iter);
    let second = nm_run(&mut f, first.x, &bounds, opts, opts.max_iter);
    let evaluations = first.evaluations + second.evaluations;
    let best = if second.value >= first.value { second } else { first };
    let agree = (second.value - first.value).abs() <= opts.rel_tol * first.value.abs().max(1e-300) * 10.0;
    Maximum {
        converged: second.converged && agree,
        evaluations,
        ..best
    }
}

/// Cyclic coordinate ascent with a Brent search along each axis.
pub fn coordinate_max<F: FnMut([f64; 2]) -> f64>(
    mut f: F,
    x0: [f64; 2],
    bounds: [(f64, f64); 2],
    opts: &OptimizerOptions,
) -> Maximum<[f64; 2]> {
    let mut x = clamp2(x0, &bounds);
    let mut value = f(x);
    let mut evals = 1;
    let mut converged = false;
    for _ in 0..200 {
        let prev = value;
        for i in 0..2 {
            let r = brent_max(
                |t| {
                    let mut p = x;
                    p[i] = t;
                    f(p)
                },
                bounds[i].0,
                bounds[i].1,
                opts,
            );
            evals += r.evaluations;
            if r.value >= value {
                x[i] = r.x;
                value = r.value;
            }
        }
        if (value - prev).abs() <= opts.rel_tol * value.abs().max(1e-300) {
            converged = true;
            break;
        }
    }
    Maximum {
        x,
        value,
        converged,
        evaluations: evals,
    }
}

/// Nelder-Mead, falling back to coordinate ascent when it does not
/// converge; the better of the two is returned.
pub fn maximize_2d<F: FnMut([f64; 2]) -> f64>(
    mut f: F,
    x0: [f64; 2],
    bounds: [(f64, f64); 2],
    opts: &OptimizerOptions,
) -> Maximum<[f64; 2]> {
    let nm = nelder_mead_max(&mut f, x0, bounds, opts);
    if nm.converged {
        return nm;
    }
    let cd = coordinate_max(&mut f, nm.x, bounds, opts);
    let evaluations = nm.evaluations + cd.evaluations;
    if cd.value >= nm.value {
        Maximum { evaluations, ..cd }
    } else {
        Maximum {
            evaluations,
            converged: cd.converged && (cd.value - nm.value).abs() <= opts.rel_tol * nm.value.abs(),
            ..nm
        }
    }
}
