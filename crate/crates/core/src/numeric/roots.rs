//! Bracketed scalar root finding and golden-section minimization.

use crate::error::{Error, Result};

/// Root of `f` inside `[lo, hi]` for a sign-changing bracket.
///
/// Bisection localizes the root, then regula-falsi steps (with a bisection
/// safeguard whenever the bracket stalls) polish it. Converges to
/// `rel_tol * |x|` or an absolute width of `rel_tol * (|lo| + |hi|)`.
pub fn find_root_bracketed<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
    max_iter: usize,
) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(lo < hi) {
        return Err(Error::Bracket(format!("empty bracket [{lo}, {hi}]")));
    }
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket(format!(
            "no sign change on [{lo:e}, {hi:e}]: f = {fa:e}, {fb:e}"
        )));
    }

    let width_tol = |a: f64, b: f64| rel_tol * (a.abs() + b.abs()).max(f64::MIN_POSITIVE);

    // Bisect until the bracket is narrow enough for regula falsi to be
    // well-behaved even when |f| varies over many orders of magnitude.
    for _ in 0..max_iter {
        if b - a <= 1e-4 * (a.abs() + b.abs() + 1.0) {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }

    let mut stalled = 0usize;
    for _ in 0..max_iter {
        if b - a <= width_tol(a, b) {
            return Ok(if fa.abs() < fb.abs() { a } else { b });
        }
        let mut x = (a * fb - b * fa) / (fb - fa);
        // Reject endpoints and stalls; fall back to bisection.
        let margin = 0.01 * (b - a);
        if !(x > a + margin && x < b - margin) || stalled >= 2 {
            x = 0.5 * (a + b);
            stalled = 0;
        }
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        let old_width = b - a;
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        if b - a > 0.5 * old_width {
            stalled += 1;
        } else {
            stalled = 0;
        }
    }
    Err(Error::Bracket(format!(
        "did not converge in {max_iter} iterations; bracket [{a:e}, {b:e}]"
    )))
}

/// Minimum of a unimodal function on `[lo, hi]` by golden-section search.
///
/// Returns `(x_min, f(x_min))` once the bracket width falls below
/// `rel_tol * (|lo| + |hi|)` (or after `max_iter` shrink steps).
pub fn golden_minimize<F>(mut f: F, lo: f64, hi: f64, rel_tol: f64, max_iter: usize) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut a = lo;
    let mut b = hi;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let tol = rel_tol * (lo.abs() + hi.abs()).max(f64::MIN_POSITIVE);
    for _ in 0..max_iter {
        if b - a <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_simple_root() {
        let r = find_root_bracketed(|x| x * x - 2.0, 0.0, 2.0, 1e-14, 200).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn handles_wildly_asymmetric_bracket() {
        // Mimics the cavity solve: f blows up like x^-4 near the left end.
        let f = |x: f64| 0.5 * x.powi(-4) + 2.0 / x - 2.5 - 9.5;
        let r = find_root_bracketed(f, 1e-9, 1.0, 1e-14, 300).unwrap();
        assert!((r - 0.5).abs() < 1e-12, "r = {r}");
    }

    #[test]
    fn root_at_endpoint() {
        let r = find_root_bracketed(|x| x - 1.0, 1.0, 2.0, 1e-14, 100).unwrap();
        assert_eq!(r, 1.0);
    }

    #[test]
    fn rejects_unbracketed() {
        assert!(find_root_bracketed(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 100).is_err());
    }

    #[test]
    fn golden_finds_parabola_minimum() {
        // Comparison-based search localizes the argmin to ~sqrt(eps) of the
        // interval scale; the minimum value itself is second-order flat.
        let (x, fx) = golden_minimize(|x| (x - 0.3) * (x - 0.3) + 1.0, -4.0, 5.0, 1e-12, 200);
        assert!((x - 0.3).abs() < 1e-6, "x = {x}");
        assert!((fx - 1.0).abs() < 1e-13);
    }

    #[test]
    fn golden_handles_asymmetric_valley() {
        let (x, fx) = golden_minimize(|x: f64| x.exp() + (-3.0 * x).exp(), -5.0, 5.0, 1e-13, 300);
        let x_true = 3.0f64.ln() / 4.0;
        let f_true = x_true.exp() + (-3.0 * x_true).exp();
        assert!((x - x_true).abs() < 1e-6, "x = {x}");
        assert!((fx - f_true).abs() < 1e-13 * f_true);
    }
}
