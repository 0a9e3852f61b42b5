//! Truncated complex power series `c_0 + c_1 z + ... + c_N z^N`.
//!
//! Logarithm, exponential and complex power are computed with the linear
//! recurrence that follows from `h' = v' h`, which costs O(N^2) and never
//! composes with the scalar log/exp series.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default truncation order for series built by the toolkit.
pub const DEFAULT_ORDER: usize = 256;
/// Upper limit for on-demand order doubling.
pub const MAX_ORDER: usize = 4096;
/// Default radius beyond which pure-series evaluation is refused.
pub const DEFAULT_EVAL_RADIUS: f64 = 0.95;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Compensated complex dot-product accumulator (error-free products and
/// sums, rounding once at the end).
struct Dot {
    re: (f64, f64),
    im: (f64, f64),
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

impl Dot {
    fn new(start: Complex64) -> Self {
        Self { re: (start.re, 0.0), im: (start.im, 0.0) }
    }

    fn acc(part: &mut (f64, f64), x: f64, y: f64) {
        let p = x * y;
        let e = x.mul_add(y, -p);
        let (s, t) = two_sum(part.0, p);
        part.0 = s;
        part.1 += t + e;
    }

    fn add_prod(&mut self, a: Complex64, b: Complex64) {
        Self::acc(&mut self.re, a.re, b.re);
        Self::acc(&mut self.re, -a.im, b.im);
        Self::acc(&mut self.im, a.re, b.im);
        Self::acc(&mut self.im, a.im, b.re);
    }

    fn sub_prod(&mut self, a: Complex64, b: Complex64) {
        self.add_prod(-a, b);
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

fn check_finite(coeffs: &[Complex64]) -> Result<()> {
    match coeffs.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
        None => Ok(()),
        Some(k) => Err(Error::NonFinite(format!("series coefficient {k} is {}", coeffs[k]))),
    }
}

impl PowerSeries {
    /// Builds a series from `c_0..c_N`. An empty vector is treated as the zero
    /// series of order 0.
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            coeffs.push(ZERO);
        }
        check_finite(&coeffs)?;
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![ZERO; order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = ONE;
        s
    }

    /// Series of `1/(1-z)^beta` via the binomial recurrence.
    pub fn binomial(beta: Complex64, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = ONE;
        coeffs.push(c);
        for n in 1..=order {
            c = c * (beta + (n - 1) as f64) / n as f64;
            coeffs.push(c);
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    /// Truncates or zero-pads to the given order.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, ZERO);
        Self { coeffs }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&c| c * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self { coeffs: (0..=n).map(|k| self.coeffs[k] + other.coeffs[k]).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-ONE))
    }

    /// Cauchy product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let a = &self.coeffs;
        let b = &other.coeffs;
        let coeffs = (0..=n)
            .map(|k| {
                let mut acc = Dot::new(ZERO);
                for j in 0..=k {
                    acc.add_prod(a[j], b[k - j]);
                }
                acc.value()
            })
            .collect();
        Self { coeffs }
    }

    /// Termwise derivative; the order drops by one (order 0 stays at 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect();
        Self { coeffs }
    }

    /// Termwise antiderivative with zero constant; the order grows by one.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, &c)| c / (k + 1) as f64));
        Self { coeffs }
    }

    /// `z * self`, keeping the order.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(ZERO);
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Self { coeffs }
    }

    /// `(self - c_0) / z`, keeping the order (top coefficient becomes 0).
    pub fn shift_down(&self) -> Self {
        let mut coeffs: Vec<_> = self.coeffs[1..].to_vec();
        coeffs.push(ZERO);
        Self { coeffs }
    }

    /// Branch of `log h` vanishing at 0. Requires `c_0 = 1`.
    pub fn log(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if (c0 - ONE).norm() > 1e-14 {
            return Err(Error::NotNormalized { expected: "1", found: c0.to_string() });
        }
        let h = &self.coeffs;
        let n = self.order();
        // n h_n = sum_{k=1}^{n} k v_k h_{n-k}
        let mut v = vec![ZERO; n + 1];
        let mut kv = vec![ZERO; n + 1];
        for m in 1..=n {
            let mut acc = Dot::new(h[m] * m as f64);
            for k in 1..m {
                acc.sub_prod(kv[k], h[m - k]);
            }
            kv[m] = acc.value();
            v[m] = kv[m] / m as f64;
        }
        check_finite(&v)?;
        Ok(Self { coeffs: v })
    }

    /// Exponential of a series with `c_0 = 0`; the result has `c_0 = 1`.
    pub fn exp(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.norm() > 1e-14 {
            return Err(Error::NotNormalized { expected: "0", found: c0.to_string() });
        }
        let v = &self.coeffs;
        let n = self.order();
        let mut h = vec![ZERO; n + 1];
        h[0] = ONE;
        let kv: Vec<Complex64> = v.iter().enumerate().map(|(k, &c)| c * k as f64).collect();
        for m in 1..=n {
            let mut acc = Dot::new(ZERO);
            for k in 1..=m {
                acc.add_prod(kv[k], h[m - k]);
            }
            h[m] = acc.value() / m as f64;
        }
        check_finite(&h)?;
        Ok(Self { coeffs: h })
    }

    /// `exp(c log h)` for `h` with `c_0 = 1`.
    pub fn pow(&self, c: Complex64) -> Result<Self> {
        if !c.re.is_finite() || !c.im.is_finite() {
            return Err(Error::NonFinite(format!("exponent {c}")));
        }
        self.log()?.scale(c).exp()
    }

    /// Horner evaluation, refusing points outside `DEFAULT_EVAL_RADIUS`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        self.evaluate_within(z, DEFAULT_EVAL_RADIUS)
    }

    pub fn evaluate_within(&self, z: Complex64, r_eval: f64) -> Result<Complex64> {
        let modulus = z.norm();
        if modulus > r_eval * (1.0 + 1e-12) {
            return Err(Error::OutsideEvalRadius { modulus, radius: r_eval });
        }
        Ok(self.horner(z))
    }

    /// Horner's scheme with no radius check.
    pub fn horner(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Geometric bound on the discarded tail `sum_{k>N} |c_k| r^k`.
    ///
    /// Growth rate `q` is the largest `|c_k|^{1/k}` over the upper half of the
    /// stored coefficients; the tail is modelled as `A q^k` with `A` the
    /// smallest constant dominating every stored coefficient.
    pub fn tail_bound(&self, r: f64) -> f64 {
        let n = self.order();
        if n == 0 {
            return 0.0;
        }
        let q = (n / 2).max(1)..=n;
        let q = q
            .filter_map(|k| {
                let m = self.coeffs[k].norm();
                (m > 0.0).then(|| m.powf(1.0 / k as f64))
            })
            .fold(0.0_f64, f64::max);
        if q == 0.0 {
            return 0.0;
        }
        let a = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm() / q.powi(k as i32))
            .fold(0.0_f64, f64::max);
        let ratio = q * r;
        if ratio >= 1.0 {
            return f64::INFINITY;
        }
        a * ratio.powi(n as i32 + 1) / (1.0 - ratio)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.order().max(other.order());
        (0..=n).map(|k| (self.coeff(k) - other.coeff(k)).norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient error measured relative to `max(1, |c_k|)`.
    pub fn max_rel_diff(&self, other: &Self) -> f64 {
        let n = self.order().max(other.order());
        (0..=n)
            .map(|k| {
                let (a, b) = (self.coeff(k), other.coeff(k));
                (a - b).norm() / a.norm().max(b.norm()).max(1.0)
            })
            .fold(0.0, f64::max)
    }

    pub fn to_document(&self) -> SeriesDocument {
        SeriesDocument {
            order: self.order(),
            coeffs: self.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("series document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SeriesDocument = serde_json::from_str(text)?;
        doc.into_series()
    }
}

/// Interchange form: `{"order": N, "coeffs": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub order: usize,
    pub coeffs: Vec<[f64; 2]>,
}

impl SeriesDocument {
    pub fn into_series(self) -> Result<PowerSeries> {
        if self.coeffs.len() != self.order + 1 {
            return Err(Error::MalformedSeries(format!(
                "order {} needs {} coefficients, got {}",
                self.order,
                self.order + 1,
                self.coeffs.len()
            )));
        }
        PowerSeries::new(self.coeffs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn geometric(n: usize) -> PowerSeries {
        PowerSeries::binomial(c(1.0), n)
    }

    #[test]
    fn product_examples() {
        let one = PowerSeries::one(4);
        let one_plus = PowerSeries::from_real(&[1.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(one.mul(&one_plus), one_plus);

        let one_minus = PowerSeries::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0]).unwrap();
        let sq = one_plus.mul(&one_minus);
        assert_eq!(sq, PowerSeries::from_real(&[1.0, 0.0, -1.0, 0.0, 0.0]).unwrap());

        assert_eq!(geometric(4).mul(&one_minus), PowerSeries::one(4));
    }

    #[test]
    fn product_truncates_to_common_order() {
        let a = geometric(3);
        let b = geometric(7);
        assert_eq!(a.mul(&b).order(), 3);
    }

    #[test]
    fn calculus_examples() {
        let v = PowerSeries::from_real(&[0.0, 1.0, 1.0]).unwrap();
        assert_eq!(v.derivative(), PowerSeries::from_real(&[1.0, 2.0]).unwrap());

        let log_series = geometric(3).antiderivative();
        let expected = [0.0, 1.0, 0.5, 1.0 / 3.0, 0.25];
        for (k, e) in expected.iter().enumerate() {
            assert!((log_series.coeff(k) - c(*e)).norm() < 1e-15);
        }

        assert_eq!(v.derivative().antiderivative(), v);
        assert_eq!(PowerSeries::one(0).derivative().order(), 0);
    }

    #[test]
    fn log_examples() {
        assert_eq!(PowerSeries::one(8).log().unwrap(), PowerSeries::zero(8));

        let l = geometric(8).log().unwrap();
        for k in 1..=8 {
            assert!((l.coeff(k) - c(1.0 / k as f64)).norm() < 1e-15);
        }
        let l2 = PowerSeries::binomial(c(2.0), 8).log().unwrap();
        for k in 1..=8 {
            assert!((l2.coeff(k) - c(2.0 / k as f64)).norm() < 1e-14);
        }
        assert!(l.coeff(0).norm() == 0.0);
    }

    #[test]
    fn log_rejects_unnormalized() {
        let s = PowerSeries::from_real(&[2.0, 1.0]).unwrap();
        assert!(matches!(s.log(), Err(Error::NotNormalized { .. })));
        assert!(matches!(PowerSeries::one(3).exp(), Err(Error::NotNormalized { .. })));
        assert!(s.pow(c(0.5)).is_err());
    }

    #[test]
    fn exp_examples() {
        assert_eq!(PowerSeries::zero(5).exp().unwrap(), PowerSeries::one(5));
        let h = geometric(10).antiderivative().with_order(10).exp().unwrap();
        assert!(h.max_abs_diff(&geometric(10)) < 1e-14);
    }

    #[test]
    fn pow_examples() {
        let h = PowerSeries::binomial(c(2.0), 16);
        assert!(h.pow(c(0.0)).unwrap().max_abs_diff(&PowerSeries::one(16)) < 1e-15);
        assert!(h.pow(c(0.5)).unwrap().max_abs_diff(&geometric(16)) < 1e-13);
        assert!(h.pow(c(f64::NAN)).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let g = geometric(64);
        assert_eq!(g.evaluate(c(0.0)).unwrap(), c(1.0));
        assert!((g.evaluate(c(0.5)).unwrap() - c(2.0)).norm() < 1e-12);
        assert!(matches!(g.evaluate(c(0.96)), Err(Error::OutsideEvalRadius { .. })));
    }

    #[test]
    fn tail_bound_drives_order_choice() {
        // 1/(1-z)^2 at z = 0.9: closed form 100.
        let mut n = DEFAULT_ORDER;
        let mut s = PowerSeries::binomial(c(2.0), n);
        while s.tail_bound(0.9) > 1e-12 * 100.0 && n < MAX_ORDER {
            n *= 2;
            s = PowerSeries::binomial(c(2.0), n);
        }
        let value = s.evaluate(c(0.9)).unwrap();
        let declared = s.tail_bound(0.9) + 1e-12;
        assert!(n > DEFAULT_ORDER);
        assert!((value - c(100.0)).norm() <= declared.max(1e-10), "value {value} at N={n}");
        // the bound really dominates the discarded tail
        let exact_tail: f64 = (n + 1..n + 4000).map(|k| (k + 1) as f64 * 0.9f64.powi(k as i32)).sum();
        assert!(s.tail_bound(0.9) >= exact_tail);
    }

    #[test]
    fn tail_bound_zero_for_polynomials() {
        let p = PowerSeries::from_real(&[1.0, 2.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(p.tail_bound(0.9), 0.0);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let s = PowerSeries::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, -0.25)]).unwrap();
        let text = s.to_json();
        assert_eq!(text, r#"{"order":1,"coeffs":[[1.0,0.0],[0.5,-0.25]]}"#);
        assert_eq!(PowerSeries::from_json(&text).unwrap(), s);
        let bad = r#"{"order":2,"coeffs":[[1.0,0.0]]}"#;
        assert!(matches!(PowerSeries::from_json(bad), Err(Error::MalformedSeries(_))));
    }

    #[test]
    fn rejects_non_finite_coefficients() {
        assert!(PowerSeries::from_real(&[1.0, f64::INFINITY]).is_err());
    }
}
