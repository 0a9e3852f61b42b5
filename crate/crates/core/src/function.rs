//! Normalized analytic functions `f(z) = z h(z)` with `h(0) = 1`.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{PowerSeries, DEFAULT_EVAL_RADIUS, MAX_ORDER};

/// Closed-form pointwise evaluation of a normalized function `f`.
///
/// Every quantity is taken on the branch that vanishes (or equals 1) at the
/// origin and is continued along the radius to `z`.
pub trait ExactEval: Send + Sync + fmt::Debug {
    /// `Log f(z)/z`.
    fn log_ratio(&self, z: Complex64) -> Complex64;
    /// `z f'(z) / f(z)`.
    fn log_derivative_ratio(&self, z: Complex64) -> Complex64;
    /// `1 + z f''(z) / f'(z)`.
    fn convexity_ratio(&self, z: Complex64) -> Complex64;
    /// `Log f'(z)`.
    fn log_derivative(&self, z: Complex64) -> Complex64;
}

pub type SeriesSource = Arc<dyn Fn(usize) -> Result<PowerSeries> + Send + Sync>;

/// Series attached to one truncation order.
#[derive(Debug, Clone)]
pub struct DerivedSeries {
    /// `f(z)/z`
    pub h: PowerSeries,
    /// `Log f(z)/z`
    pub psi: PowerSeries,
    /// `Log f'(z)`
    pub phi: PowerSeries,
    /// `z f'/f`
    pub ratio: PowerSeries,
    /// `1 + z f''/f'`
    pub convexity: PowerSeries,
}

impl DerivedSeries {
    fn new(h: PowerSeries) -> Result<Self> {
        let psi = h.log()?;
        let phi = fprime_series(&h).log()?;
        let ratio = one_plus_z_times(&psi.derivative(), psi.order());
        let convexity = one_plus_z_times(&phi.derivative(), phi.order());
        Ok(Self { h, psi, phi, ratio, convexity })
    }
}

/// `1 + z s(z)` at the requested order.
fn one_plus_z_times(s: &PowerSeries, order: usize) -> PowerSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Complex64::new(1.0, 0.0));
    coeffs.extend((0..order).map(|k| s.coeff(k)));
    PowerSeries::new(coeffs).expect("finite")
}

/// Series of `f'` for `f = z h`: coefficients `(k+1) h_k`.
pub fn fprime_series(h: &PowerSeries) -> PowerSeries {
    let coeffs = h.coeffs().iter().enumerate().map(|(k, &c)| c * (k + 1) as f64).collect();
    PowerSeries::new(coeffs).expect("finite")
}

/// A member of the normalized class: `f(0) = 0`, `f'(0) = 1`.
#[derive(Clone)]
pub struct AnalyticFunction {
    h: PowerSeries,
    exact: Option<Arc<dyn ExactEval>>,
    source: Option<SeriesSource>,
    label: String,
    cache: Arc<Mutex<Vec<Arc<DerivedSeries>>>>,
}

impl fmt::Debug for AnalyticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticFunction")
            .field("label", &self.label)
            .field("order", &self.order())
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

impl AnalyticFunction {
    /// Wraps the series of `f(z)/z`, which must start with 1.
    pub fn new(h: PowerSeries, label: impl Into<String>) -> Result<Self> {
        let c0 = h.coeff(0);
        if (c0 - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
            return Err(Error::NotNormalized { expected: "1", found: c0.to_string() });
        }
        Ok(Self { h, exact: None, source: None, label: label.into(), cache: Arc::default() })
    }

    /// The identity `f(z) = z`.
    pub fn identity(order: usize) -> Self {
        Self::new(PowerSeries::one(order), "identity").expect("normalized")
    }

    pub fn with_exact(mut self, exact: Arc<dyn ExactEval>) -> Self {
        self.exact = Some(exact);
        self
    }

    /// Attaches a generator that rebuilds `h` at any order.
    pub fn with_source(mut self, source: SeriesSource) -> Self {
        self.source = Some(source);
        self
    }

    pub fn h_series(&self) -> &PowerSeries {
        &self.h
    }

    pub fn order(&self) -> usize {
        self.h.order()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn exact(&self) -> Option<&Arc<dyn ExactEval>> {
        self.exact.as_ref()
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn source(&self) -> Option<&SeriesSource> {
        self.source.as_ref()
    }

    /// Same function with `h` rebuilt at `order`. Without a series source
    /// only truncation is possible.
    pub fn at_order(&self, order: usize) -> Result<Self> {
        let h = match &self.source {
            Some(src) => src(order)?,
            None if order <= self.order() => self.h.with_order(order),
            None => {
                return Err(Error::InvalidParameter(format!(
                    "{} has no series source; cannot extend order {} to {order}",
                    self.label,
                    self.order()
                )))
            }
        };
        Ok(Self { h, cache: Arc::default(), ..self.clone() })
    }

    /// Coefficients of `f` itself: `[0, 1, a_2, a_3, ...]`.
    pub fn f_coeffs(&self) -> Vec<Complex64> {
        std::iter::once(Complex64::new(0.0, 0.0)).chain(self.h.coeffs().iter().copied()).collect()
    }

    pub fn derived(&self) -> Result<Arc<DerivedSeries>> {
        self.derived_at(self.order())
    }

    fn derived_at(&self, order: usize) -> Result<Arc<DerivedSeries>> {
        let mut cache = self.cache.lock().expect("cache lock");
        if let Some(d) = cache.iter().find(|d| d.h.order() == order) {
            return Ok(d.clone());
        }
        let h = if order == self.order() {
            self.h.clone()
        } else {
            match &self.source {
                Some(src) => src(order)?,
                None => self.h.with_order(order.min(self.order())),
            }
        };
        let d = Arc::new(DerivedSeries::new(h)?);
        cache.push(d.clone());
        Ok(d)
    }

    /// Evaluates one of the attached series at `z`, doubling the order (when a
    /// source is available) until the geometric tail bound is negligible.
    fn series_value(&self, z: Complex64, pick: fn(&DerivedSeries) -> &PowerSeries) -> Result<Complex64> {
        let r = z.norm();
        if r > DEFAULT_EVAL_RADIUS * (1.0 + 1e-12) {
            return Err(Error::OutsideEvalRadius { modulus: r, radius: DEFAULT_EVAL_RADIUS });
        }
        let mut order = self.order();
        loop {
            let d = self.derived_at(order)?;
            let s = pick(&d);
            let value = s.evaluate(z)?;
            let tail = s.tail_bound(r);
            if tail <= 1e-12 * value.norm().max(1.0) || self.source.is_none() || order >= MAX_ORDER {
                return Ok(value);
            }
            order = (order * 2).min(MAX_ORDER);
        }
    }

    /// `Log f(z)/z`.
    pub fn log_ratio_at(&self, z: Complex64) -> Result<Complex64> {
        match &self.exact {
            Some(e) => Ok(e.log_ratio(z)),
            None => self.series_value(z, |d| &d.psi),
        }
    }

    /// `f(z)/z`.
    pub fn h_at(&self, z: Complex64) -> Result<Complex64> {
        match &self.exact {
            Some(e) => Ok(e.log_ratio(z).exp()),
            None => self.series_value(z, |d| &d.h),
        }
    }

    pub fn value_at(&self, z: Complex64) -> Result<Complex64> {
        Ok(z * self.h_at(z)?)
    }

    /// `z f'(z) / f(z)`.
    pub fn ratio_at(&self, z: Complex64) -> Result<Complex64> {
        match &self.exact {
            Some(e) => Ok(e.log_derivative_ratio(z)),
            None => self.series_value(z, |d| &d.ratio),
        }
    }

    /// `1 + z f''(z) / f'(z)`.
    pub fn convexity_at(&self, z: Complex64) -> Result<Complex64> {
        match &self.exact {
            Some(e) => Ok(e.convexity_ratio(z)),
            None => self.series_value(z, |d| &d.convexity),
        }
    }

    /// `Log f'(z)`.
    pub fn log_derivative_at(&self, z: Complex64) -> Result<Complex64> {
        match &self.exact {
            Some(e) => Ok(e.log_derivative(z)),
            None => self.series_value(z, |d| &d.phi),
        }
    }

    /// Largest admissible evaluation radius for this function.
    pub fn max_radius(&self) -> f64 {
        if self.has_exact() {
            1.0
        } else {
            DEFAULT_EVAL_RADIUS
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unnormalized_series() {
        let s = PowerSeries::from_real(&[0.0, 1.0]).unwrap();
        assert!(AnalyticFunction::new(s, "bad").is_err());
    }

    #[test]
    fn derived_series_of_koebe() {
        let f = AnalyticFunction::new(PowerSeries::binomial(Complex64::new(2.0, 0.0), 16), "k").unwrap();
        let d = f.derived().unwrap();
        // zk'/k = (1+z)/(1-z) = 1 + 2z + 2z^2 + ...
        assert!((d.ratio.coeff(0) - 1.0).norm() < 1e-15);
        for k in 1..=16 {
            assert!((d.ratio.coeff(k) - 2.0).norm() < 1e-12);
        }
        // 1 + zk''/k' = (1+4z+z^2)/(1-z^2) = 1 + 4z + 2z^2 + 4z^3 + ...
        let expected = [1.0, 4.0, 2.0, 4.0, 2.0];
        for (k, e) in expected.iter().enumerate() {
            assert!((d.convexity.coeff(k) - e).norm() < 1e-12);
        }
    }

    #[test]
    fn series_evaluation_without_source_is_limited() {
        let f = AnalyticFunction::new(PowerSeries::binomial(Complex64::new(2.0, 0.0), 64), "k").unwrap();
        assert!(f.h_at(Complex64::new(0.97, 0.0)).is_err());
        assert!(f.at_order(128).is_err());
        assert_eq!(f.at_order(32).unwrap().order(), 32);
    }

    #[test]
    fn series_evaluation_doubles_order_with_source() {
        let src: SeriesSource = Arc::new(|n| Ok(PowerSeries::binomial(Complex64::new(2.0, 0.0), n)));
        let f = AnalyticFunction::new(PowerSeries::binomial(Complex64::new(2.0, 0.0), 64), "k")
            .unwrap()
            .with_source(src);
        let v = f.h_at(Complex64::new(0.9, 0.0)).unwrap();
        assert!((v - 100.0).norm() < 1e-8, "{v}");
    }
}
