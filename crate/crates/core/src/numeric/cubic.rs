//! Real roots of cubic polynomials via the trigonometric/Cardano method.

use std::f64::consts::PI;

/// All real roots of `c3 x^3 + c2 x^2 + c1 x + c0 = 0`, ascending.
///
/// Degenerate leading coefficients fall back to the quadratic/linear case.
/// Roots are polished with two Newton steps on the original polynomial.
pub fn cubic_real_roots(c3: f64, c2: f64, c1: f64, c0: f64) -> Vec<f64> {
    let scale = c3.abs().max(c2.abs()).max(c1.abs()).max(c0.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    if c3.abs() < 1e-14 * scale {
        return quadratic_real_roots(c2, c1, c0);
    }

    // Depress: x = t - c2/(3 c3) gives t^3 + p t + q = 0.
    let b = c2 / c3;
    let c = c1 / c3;
    let d = c0 / c3;
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;

    let mut roots = Vec::with_capacity(3);
    let discriminant = -4.0 * p * p * p - 27.0 * q * q;
    if discriminant > 0.0 {
        // Three distinct real roots.
        let m = 2.0 * (-p / 3.0).sqrt();
        let theta = (3.0 * q / (p * m)).clamp(-1.0, 1.0).acos() / 3.0;
        for k in 0..3 {
            roots.push(m * (theta - 2.0 * PI * k as f64 / 3.0).cos());
        }
    } else {
        // One real root (or a repeated pair on the boundary).
        let half_q = q / 2.0;
        let delta = (half_q * half_q + p * p * p / 27.0).max(0.0).sqrt();
        let u = cbrt(-half_q + delta);
        let v = cbrt(-half_q - delta);
        roots.push(u + v);
        if discriminant == 0.0 && p != 0.0 {
            roots.push(-(u + v) / 2.0);
        }
    }

    for r in roots.iter_mut() {
        let mut x = *r - shift;
        for _ in 0..2 {
            let f = ((c3 * x + c2) * x + c1) * x + c0;
            let df = (3.0 * c3 * x + 2.0 * c2) * x + c1;
            if df != 0.0 {
                let step = f / df;
                if step.is_finite() {
                    x -= step;
                }
            }
        }
        *r = x;
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (a.abs() + b.abs()).max(1e-300));
    roots
}

fn quadratic_real_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        if b == 0.0 {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    // Stable form avoiding cancellation.
    let q = -0.5 * (b + b.signum() * sq);
    let mut roots = if b == 0.0 {
        let r = (-c / a).abs().sqrt();
        vec![-r, r]
    } else {
        vec![q / a, c / q]
    };
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * (x.abs() + y.abs()).max(1e-300));
    roots
}

fn cbrt(x: f64) -> f64 {
    x.cbrt()
}
