//! Adaptive Gauss-Kronrod quadrature (7-15 pair) with worst-interval
//! bisection, in the style of QUADPACK's QAG.

use crate::error::{Error, Result};

// 15-point Kronrod abscissae on [-1, 1] (positive half; index 7 is 0).
// Odd indices are the embedded 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Integral of `f` over `[a, b]` to tolerance `max(abs_tol, rel_tol * |I|)`.
///
/// The integrand may fail; its error aborts the quadrature. Intervals are
/// split at their midpoint, always refining the interval with the largest
/// error estimate first.
pub fn integrate<F>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    if !(a < b) {
        return Err(Error::Integration(format!("inverted interval [{a}, {b}]")));
    }
    let mut evals = 0usize;
    let mut panels = vec![gk15(&mut f, a, b, &mut evals)?];
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(QuadResult {
                value,
                error,
                evaluations: evals,
            });
        }
        if panels.len() >= max_intervals {
            return Err(Error::Integration(format!(
                "error estimate {error:e} above tolerance after {} intervals on [{a:e}, {b:e}]",
                panels.len()
            )));
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.partial_cmp(&y.1.error).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let Panel { a: pa, b: pb, .. } = panels[worst];
        let mid = 0.5 * (pa + pb);
        if !(pa < mid && mid < pb) {
            return Err(Error::Integration(format!(
                "interval [{pa:e}, {pb:e}] too small to subdivide further"
            )));
        }
        panels[worst] = gk15(&mut f, pa, mid, &mut evals)?;
        panels.push(gk15(&mut f, mid, pb, &mut evals)?);
    }
}

fn gk15<F>(f: &mut F, a: f64, b: f64, evals: &mut usize) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    *evals += 15;

    let mut result_gauss = WG[3] * fc;
    let mut result_kronrod = WGK[7] * fc;
    let mut result_abs = WGK[7] * fc.abs();
    let mut values = [(0.0f64, 0.0f64); 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        values[j] = (f1, f2);
        result_kronrod += WGK[j] * (f1 + f2);
        result_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            result_gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = result_kronrod * 0.5;
    let mut result_asc = WGK[7] * (fc - mean).abs();
    for (j, (f1, f2)) in values.iter().enumerate() {
        result_asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }

    let value = result_kronrod * half;
    let abs_half = half.abs();
    let raw_err = ((result_kronrod - result_gauss) * half).abs();
    let error = rescale_error(raw_err, result_abs * abs_half, result_asc * abs_half);
    Ok(Panel { a, b, value, error })
}

// QUADPACK-style conservative error rescaling.
fn rescale_error(err: f64, result_abs: f64, result_asc: f64) -> f64 {
    let mut scaled = err;
    if result_asc != 0.0 && scaled != 0.0 {
        let ratio = (200.0 * scaled / result_asc).powf(1.5);
        scaled = if ratio < 1.0 {
            result_asc * ratio
        } else {
            result_asc
        };
    }
    if result_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * result_abs);
    }
    scaled
}
