//! Gamma distribution of shell thickness-to-mid-radius ratios.

use crate::error::{Error, Result};
use crate::numeric::find_root_bracketed;
use statrs::function::gamma::{gamma_lr, gamma_ur, ln_gamma};

/// Gamma distribution parameterized by shape `k` and mean `Xhat_0`:
///
/// `F(x) = (k / Xhat_0)^k x^{k-1} / Gamma(k) exp(-(k / Xhat_0) x)`.
///
/// Large `k` at fixed mean approaches a delta distribution at the mean.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaDistribution {
    shape: f64,
    mean: f64,
}

impl GammaDistribution {
    pub fn new(shape: f64, mean: f64) -> Result<Self> {
        if !(shape > 0.0) || !shape.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Gamma shape parameter must be positive and finite, got {shape}"
            )));
        }
        if !(mean > 0.0) || !mean.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Gamma mean must be positive and finite, got {mean}"
            )));
        }
        Ok(Self { shape, mean })
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    fn rate(&self) -> f64 {
        self.shape / self.mean
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        if x == 0.0 {
            return if self.shape > 1.0 {
                0.0
            } else if self.shape == 1.0 {
                self.rate()
            } else {
                f64::INFINITY
            };
        }
        let rate = self.rate();
        let log_pdf =
            self.shape * rate.ln() + (self.shape - 1.0) * x.ln() - ln_gamma(self.shape) - rate * x;
        log_pdf.exp()
    }

    /// Cumulative probability, the regularized lower incomplete gamma
    /// function at `rate * x`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        gamma_lr(self.shape, self.rate() * x).clamp(0.0, 1.0)
    }

    /// Quantile by bracketed root solve on the regularized incomplete gamma
    /// function (its upper counterpart for the far tail, where `1 - q` would
    /// lose precision).
    pub fn inverse_cdf(&self, q: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&q) {
            return Err(Error::InvalidParameter(format!(
                "quantile must lie in [0, 1), got {q}"
            )));
        }
        if q == 0.0 {
            return Ok(0.0);
        }
        let rate = self.rate();
        let mut hi = self.mean * 2.0;
        // The incomplete gamma functions exclude x = 0; fill in the limits.
        let goal = |x: f64| {
            if x <= 0.0 {
                return -q.min(1.0 - q);
            }
            if q <= 0.5 {
                gamma_lr(self.shape, rate * x) - q
            } else {
                (1.0 - q) - gamma_ur(self.shape, rate * x)
            }
        };
        let mut expansions = 0;
        while goal(hi) < 0.0 {
            hi *= 2.0;
            expansions += 1;
            if expansions > 200 {
                return Err(Error::Bracket(format!(
                    "quantile {q} not bracketed for shape {}",
                    self.shape
                )));
            }
        }
        find_root_bracketed(goal, 0.0, hi, 1e-13, 400)
    }
}
