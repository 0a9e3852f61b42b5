//! Power deformation `K_c`, the integral operators `I_c`, `J_c`, the
//! Alexander transform `J_1`, and the logarithmic coordinates `Psi`, `Phi`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::{fprime_series, AnalyticFunction, ExactEval, SeriesSource};
use crate::phase::tracked_log;
use crate::quad;
use crate::series::PowerSeries;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Formats a complex number as `a`, `a+bi` or `a-bi`.
pub fn fmt_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.im < 0.0 {
        format!("{}-{}i", c.re, -c.im)
    } else {
        format!("{}+{}i", c.re, c.im)
    }
}

fn check_exponent(c: Complex64) -> Result<()> {
    if c.re.is_finite() && c.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("exponent {c}")))
    }
}

/// Divides coefficient `k` by `k + 1`: the `h` of `int_0^z g`, given `g`.
fn integrate_normalized(g: &PowerSeries) -> PowerSeries {
    let coeffs = g.coeffs().iter().enumerate().map(|(k, &c)| c / (k + 1) as f64).collect();
    PowerSeries::new(coeffs).expect("finite")
}

type SeriesOp = Arc<dyn Fn(&PowerSeries) -> Result<PowerSeries> + Send + Sync>;

fn derive(
    f: &AnalyticFunction,
    label: String,
    op: SeriesOp,
    exact: Option<Arc<dyn ExactEval>>,
) -> Result<AnalyticFunction> {
    let h = op(f.h_series())?;
    let mut out = AnalyticFunction::new(h, label)?;
    if let Some(src) = f.source() {
        let src = src.clone();
        let source: SeriesSource = Arc::new(move |n| op(&src(n)?));
        out = out.with_source(source);
    }
    if let Some(e) = exact {
        out = out.with_exact(e);
    }
    Ok(out)
}

/// `K_c[f](z) = z (f(z)/z)^c`.
pub fn power_deform(f: &AnalyticFunction, c: Complex64) -> Result<AnalyticFunction> {
    check_exponent(c)?;
    let exact = f
        .exact()
        .map(|inner| Arc::new(PowerDeformed { inner: inner.clone(), c }) as Arc<dyn ExactEval>);
    let label = format!("K_{{{}}}[{}]", fmt_complex(c), f.label());
    derive(f, label, Arc::new(move |h: &PowerSeries| h.pow(c)), exact)
}

/// Alexander transform `J_1[f](z) = int_0^z f(t)/t dt`: `a_n -> a_n / n`.
pub fn alexander(f: &AnalyticFunction) -> Result<AnalyticFunction> {
    let exact = f.exact().map(|inner| {
        Arc::new(IntegralDeformed { inner: inner.clone(), c: ONE, kind: IntegralKind::J }) as Arc<dyn ExactEval>
    });
    let label = format!("J_1[{}]", f.label());
    derive(f, label, Arc::new(|h: &PowerSeries| Ok(integrate_normalized(h))), exact)
}

/// `I_c[f](z) = int_0^z f'(t)^c dt`.
pub fn integral_deform_i(f: &AnalyticFunction, c: Complex64) -> Result<AnalyticFunction> {
    check_exponent(c)?;
    let exact = f.exact().map(|inner| {
        Arc::new(IntegralDeformed { inner: inner.clone(), c, kind: IntegralKind::I }) as Arc<dyn ExactEval>
    });
    let label = format!("I_{{{}}}[{}]", fmt_complex(c), f.label());
    derive(
        f,
        label,
        Arc::new(move |h: &PowerSeries| Ok(integrate_normalized(&fprime_series(h).pow(c)?))),
        exact,
    )
}

/// `J_c[f](z) = int_0^z (f(t)/t)^c dt`.
pub fn integral_deform_j(f: &AnalyticFunction, c: Complex64) -> Result<AnalyticFunction> {
    check_exponent(c)?;
    let exact = f.exact().map(|inner| {
        Arc::new(IntegralDeformed { inner: inner.clone(), c, kind: IntegralKind::J }) as Arc<dyn ExactEval>
    });
    let label = format!("J_{{{}}}[{}]", fmt_complex(c), f.label());
    derive(f, label, Arc::new(move |h: &PowerSeries| Ok(integrate_normalized(&h.pow(c)?))), exact)
}

/// `Psi[f] = Log f(z)/z`.
pub fn log_coordinate_psi(f: &AnalyticFunction) -> Result<PowerSeries> {
    f.h_series().log()
}

/// `Phi[f] = Log f'`.
pub fn log_coordinate_phi(f: &AnalyticFunction) -> Result<PowerSeries> {
    fprime_series(f.h_series()).log()
}

/// `z f'(z)/f(z)` as a series, with pointwise evaluation through the
/// function's exact evaluator when it has one.
#[derive(Debug, Clone)]
pub struct LogDerivativeRatio {
    pub series: PowerSeries,
    function: AnalyticFunction,
}

impl LogDerivativeRatio {
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.function.ratio_at(z)
    }

    pub fn has_exact(&self) -> bool {
        self.function.has_exact()
    }
}

pub fn log_derivative_ratio(f: &AnalyticFunction) -> Result<LogDerivativeRatio> {
    let series = f.derived()?.ratio.clone();
    Ok(LogDerivativeRatio { series, function: f.clone() })
}

#[derive(Debug)]
struct PowerDeformed {
    inner: Arc<dyn ExactEval>,
    c: Complex64,
}

impl ExactEval for PowerDeformed {
    fn log_ratio(&self, z: Complex64) -> Complex64 {
        self.c * self.inner.log_ratio(z)
    }

    fn log_derivative_ratio(&self, z: Complex64) -> Complex64 {
        ONE - self.c + self.c * self.inner.log_derivative_ratio(z)
    }

    fn convexity_ratio(&self, z: Complex64) -> Complex64 {
        let p = self.inner.log_derivative_ratio(z);
        let pc = ONE - self.c + self.c * p;
        pc + self.c * p * (self.inner.convexity_ratio(z) - p) / pc
    }

    fn log_derivative(&self, z: Complex64) -> Complex64 {
        let c = self.c;
        let inner = &self.inner;
        c * inner.log_ratio(z) + tracked_log(|t| ONE - c + c * inner.log_derivative_ratio(z * t))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IntegralKind {
    /// integrand `f'(t)^c`
    I,
    /// integrand `(f(t)/t)^c`
    J,
}

#[derive(Debug)]
struct IntegralDeformed {
    inner: Arc<dyn ExactEval>,
    c: Complex64,
    kind: IntegralKind,
}

impl IntegralDeformed {
    /// Log of the integrand at `z`.
    fn log_integrand(&self, z: Complex64) -> Complex64 {
        match self.kind {
            IntegralKind::I => self.c * self.inner.log_derivative(z),
            IntegralKind::J => self.c * self.inner.log_ratio(z),
        }
    }

    /// `g(z)/z = int_0^1 e(tz) dt`.
    fn mean_integrand(&self, z: Complex64) -> Complex64 {
        quad::integrate(|t| self.log_integrand(z * t).exp(), 0.0, 1.0, 1e-12)
    }
}

impl ExactEval for IntegralDeformed {
    fn log_ratio(&self, z: Complex64) -> Complex64 {
        tracked_log(|s| self.mean_integrand(z * s))
    }

    fn log_derivative_ratio(&self, z: Complex64) -> Complex64 {
        self.log_integrand(z).exp() / self.mean_integrand(z)
    }

    fn convexity_ratio(&self, z: Complex64) -> Complex64 {
        let q = match self.kind {
            IntegralKind::I => self.inner.convexity_ratio(z),
            IntegralKind::J => self.inner.log_derivative_ratio(z),
        };
        ONE + self.c * (q - ONE)
    }

    fn log_derivative(&self, z: Complex64) -> Complex64 {
        self.log_integrand(z)
    }
}
