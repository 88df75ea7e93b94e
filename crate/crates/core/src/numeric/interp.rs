//! Shape-preserving monotone piecewise-cubic interpolation (Fritsch-Carlson).

use crate::error::{Error, Result};

/// Monotone cubic Hermite interpolant over strictly increasing abscissae.
///
/// Slopes follow the Fritsch-Carlson weighted harmonic mean, which preserves
/// monotonicity of the data, so the interpolant of monotone samples is itself
/// monotone and invertible.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::InvalidParameter(
                "interpolation needs at least two matching samples".into(),
            ));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParameter(
                "interpolation abscissae must be strictly increasing".into(),
            ));
        }
        let n = xs.len();
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();

        let mut slopes = vec![0.0; n];
        for i in 1..n - 1 {
            if delta[i - 1] * delta[i] > 0.0 {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                slopes[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        slopes[0] = end_slope(
            h[0],
            h.get(1).copied().unwrap_or(h[0]),
            delta[0],
            delta.get(1).copied().unwrap_or(delta[0]),
        );
        slopes[n - 1] = end_slope(
            h[n - 2],
            if n >= 3 { h[n - 3] } else { h[n - 2] },
            delta[n - 2],
            if n >= 3 { delta[n - 3] } else { delta[n - 2] },
        );

        Ok(Self { xs, ys, slopes })
    }

    /// Interpolated value; clamps to the end values outside the data range.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => return self.ys[i],
            Err(i) => i - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[i]
            + h10 * h * self.slopes[i]
            + h01 * self.ys[i + 1]
            + h11 * h * self.slopes[i + 1]
    }

    pub fn x_min(&self) -> f64 {
        self.xs[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.xs.last().unwrap()
    }
}

// One-sided three-point end slope, clamped per Fritsch-Carlson so the end
// interval stays monotone.
fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if s * d0 <= 0.0 {
        0.0
    } else if d0 * d1 < 0.0 && s.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_nodes() {
        let xs = vec![0.0, 1.0, 2.5, 4.0];
        let ys = vec![1.0, 2.0, 2.2, 5.0];
        let p = MonotoneCubic::new(xs.clone(), ys.clone()).unwrap();
        for (x, y) in xs.iter().zip(&ys) {
            assert_eq!(p.eval(*x), *y);
        }
    }

    #[test]
    fn preserves_monotonicity() {
        let xs: Vec<f64> = (0..30).map(|i| i as f64 / 29.0).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x.powi(3) + 0.1 * x).collect();
        let p = MonotoneCubic::new(xs, ys).unwrap();
        let mut prev = p.eval(0.0);
        for i in 1..=1000 {
            let v = p.eval(i as f64 / 1000.0);
            assert!(v >= prev - 1e-15, "not monotone at i = {i}");
            prev = v;
        }
    }

    #[test]
    fn handles_decreasing_data() {
        let xs = vec![0.0, 1.0, 2.0, 3.0];
        let ys = vec![10.0, 5.0, 2.0, 1.0];
        let p = MonotoneCubic::new(xs, ys).unwrap();
        let mut prev = p.eval(0.0);
        for i in 1..=300 {
            let v = p.eval(3.0 * i as f64 / 300.0);
            assert!(v <= prev + 1e-15);
            prev = v;
        }
    }

    #[test]
    fn rejects_unsorted() {
        assert!(MonotoneCubic::new(vec![0.0, 0.0, 1.0], vec![1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn near_quadratic_accuracy_on_smooth_data() {
        let xs: Vec<f64> = (0..101).map(|i| i as f64 / 100.0).collect();
        let ys: Vec<f64> = xs.iter().map(|x| (2.0 * x).exp()).collect();
        let p = MonotoneCubic::new(xs, ys).unwrap();
        for i in 0..500 {
            let x = 0.001 + 0.998 * i as f64 / 499.0;
            let err = (p.eval(x) - (2.0 * x).exp()).abs();
            assert!(err < 2e-6 * (2.0 * x).exp(), "err {err:e} at {x}");
        }
    }
}
