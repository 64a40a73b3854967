//! Gauss-Legendre rules and an adaptive vector-valued integrator.

use std::sync::OnceLock;

use crate::error::{Error, Result};

const ORDER: usize = 10;

/// Nodes and weights of the `n`-point rule on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(ORDER))
}

fn panel<F>(f: &F, a: f64, b: f64, dim: usize) -> Result<Vec<f64>>
where
    F: Fn(f64, &mut [f64]) -> Result<()>,
{
    let (x, w) = rule();
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let mut out = vec![0.0; dim];
    let mut buf = vec![0.0; dim];
    for (xi, wi) in x.iter().zip(w) {
        f(mid + half * xi, &mut buf)?;
        for (o, v) in out.iter_mut().zip(&buf) {
            *o += wi * half * v;
        }
    }
    Ok(out)
}

fn adapt<F>(f: &F, a: f64, b: f64, coarse: Vec<f64>, tol: f64, depth: u32) -> Result<Vec<f64>>
where
    F: Fn(f64, &mut [f64]) -> Result<()>,
{
    let m = 0.5 * (a + b);
    let left = panel(f, a, m, coarse.len())?;
    let right = panel(f, m, b, coarse.len())?;
    let fine: Vec<f64> = left.iter().zip(&right).map(|(l, r)| l + r).collect();
    let err = fine.iter().zip(&coarse).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max);
    if err <= tol {
        return Ok(fine);
    }
    if depth == 0 {
        return Err(Error::Solver { msg: format!("quadrature panel [{a:.4e}, {b:.4e}] did not converge"), residual: err });
    }
    let l = adapt(f, a, m, left, 0.5 * tol, depth - 1)?;
    let r = adapt(f, m, b, right, 0.5 * tol, depth - 1)?;
    Ok(l.iter().zip(&r).map(|(u, v)| u + v).collect())
}

/// Integrates a decaying vector-valued `f` over `[0, inf)`.
///
/// Panels of `width` are laid out from zero. Each is refined by bisection
/// until its 10-point and 2x10-point estimates agree to `rel_tol` times the
/// size of the integral. Marching stops once `tail_panels` consecutive
/// panels each add less than `rel_tol * 1e-3` of it.
pub fn integrate_semi_infinite<F>(f: F, dim: usize, width: f64, rel_tol: f64, max_x: f64) -> Result<Vec<f64>>
where
    F: Fn(f64, &mut [f64]) -> Result<()>,
{
    let tail_panels = 4;
    // Rough scale from a uniform pass over the first few panels.
    let mut scale = 0.0_f64;
    let mut x = 0.0;
    for _ in 0..8 {
        let p = panel(&f, x, x + width, dim)?;
        scale += p.iter().map(|v| v.abs()).fold(0.0, f64::max);
        x += width;
    }
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::Solver { msg: "integrand vanishes or is not finite".into(), residual: scale });
    }
    let tol = rel_tol * scale;
    let mut total = vec![0.0; dim];
    let mut quiet = 0;
    let mut a = 0.0;
    let mut panel_tol = tol / 8.0;
    while quiet < tail_panels {
        if a > max_x {
            return Err(Error::Solver { msg: format!("integrand not decayed by x = {max_x:.3e}"), residual: quiet as f64 });
        }
        let b = a + width;
        let coarse = panel(&f, a, b, dim)?;
        let part = adapt(&f, a, b, coarse, panel_tol, 40)?;
        let size = part.iter().map(|v| v.abs()).fold(0.0, f64::max);
        for (t, p) in total.iter_mut().zip(&part) {
            *t += p;
        }
        if size < tol * 1e-3 {
            quiet += 1;
        } else {
            quiet = 0;
        }
        // Later panels get a geometrically shrinking share of the budget.
        panel_tol = (panel_tol * 0.9).max(tol * 1e-4);
        a = b;
    }
    Ok(total)
}
