//! Closed-form extremal functions and construction from a prescribed
//! `z f'(z)/f(z)`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::{AnalyticFunction, ExactEval, SeriesSource};
use crate::quad;
use crate::series::PowerSeries;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Named members of the function zoo.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZooSpec {
    Identity,
    /// `z/(1-z)^2`
    Koebe,
    /// `z/(1-z)`
    HalfPlane,
    /// `z/(1-z)^{2(1-alpha)}`
    StarlikeOrder { alpha: f64 },
    /// `z/(1-z)^{2 e^{i lambda} cos lambda}`
    SpiralKoebe { lambda: f64 },
    /// `z f'/f = ((1+z)/(1-z))^alpha`
    StronglyStarlike { alpha: f64 },
    /// `z f'/f = ((1 + z e^{2 i lambda/alpha})/(1-z))^alpha`
    StronglySpirallike { lambda: f64, alpha: f64 },
}

impl ZooSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            ZooSpec::StarlikeOrder { alpha } if !(0.0..1.0).contains(&alpha) => {
                bad(format!("starlike-order needs 0 <= alpha < 1, got {alpha}"))
            }
            ZooSpec::SpiralKoebe { lambda } if !(lambda.abs() < FRAC_PI_2) => {
                bad(format!("spiral-koebe needs |lambda| < pi/2, got {lambda}"))
            }
            ZooSpec::StronglyStarlike { alpha } if !(alpha > 0.0 && alpha < 1.0) => {
                bad(format!("strongly-starlike needs 0 < alpha < 1, got {alpha}"))
            }
            ZooSpec::StronglySpirallike { lambda, alpha }
                if !(alpha > 0.0 && alpha < 1.0 && lambda.abs() < FRAC_PI_2 * alpha) =>
            {
                bad(format!("strongly-spirallike needs |lambda| < pi*alpha/2 < pi/2, got lambda={lambda}, alpha={alpha}"))
            }
            _ => Ok(()),
        }
    }

    /// Exponent `beta` when the function is `z/(1-z)^beta`.
    fn binomial_exponent(&self) -> Option<Complex64> {
        match *self {
            ZooSpec::Identity => Some(Complex64::new(0.0, 0.0)),
            ZooSpec::Koebe => Some(Complex64::new(2.0, 0.0)),
            ZooSpec::HalfPlane => Some(ONE),
            ZooSpec::StarlikeOrder { alpha } => Some(Complex64::new(2.0 * (1.0 - alpha), 0.0)),
            ZooSpec::SpiralKoebe { lambda } => Some(ONE + Complex64::from_polar(1.0, 2.0 * lambda)),
            _ => None,
        }
    }
}

impl fmt::Display for ZooSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZooSpec::Identity => write!(f, "identity"),
            ZooSpec::Koebe => write!(f, "koebe"),
            ZooSpec::HalfPlane => write!(f, "half-plane"),
            ZooSpec::StarlikeOrder { alpha } => write!(f, "starlike-order:{alpha}"),
            ZooSpec::SpiralKoebe { lambda } => write!(f, "spiral-koebe:{lambda}"),
            ZooSpec::StronglyStarlike { alpha } => write!(f, "strongly-starlike:{alpha}"),
            ZooSpec::StronglySpirallike { lambda, alpha } => write!(f, "strongly-spirallike:{lambda},{alpha}"),
        }
    }
}

impl FromStr for ZooSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse { what: "function name", input: s.to_string() };
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let nums: Vec<f64> = match args {
            Some(a) => a.split(',').map(|x| x.trim().parse::<f64>().map_err(|_| err())).collect::<Result<_>>()?,
            None => Vec::new(),
        };
        let spec = match (name.trim(), nums.as_slice()) {
            ("identity", []) => ZooSpec::Identity,
            ("koebe", []) => ZooSpec::Koebe,
            ("half-plane", []) => ZooSpec::HalfPlane,
            ("starlike-order", &[alpha]) => ZooSpec::StarlikeOrder { alpha },
            ("spiral-koebe", &[lambda]) => ZooSpec::SpiralKoebe { lambda },
            ("strongly-starlike", &[alpha]) => ZooSpec::StronglyStarlike { alpha },
            ("strongly-spirallike", &[lambda, alpha]) => ZooSpec::StronglySpirallike { lambda, alpha },
            _ => return Err(err()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Builds a zoo function with its series at `order` and exact evaluators.
pub fn make_named(spec: &ZooSpec, order: usize) -> Result<AnalyticFunction> {
    spec.validate()?;
    let label = spec.to_string();
    if let Some(beta) = spec.binomial_exponent() {
        let source: SeriesSource = Arc::new(move |n| Ok(PowerSeries::binomial(beta, n)));
        return Ok(AnalyticFunction::new(source(order)?, label)?
            .with_source(source)
            .with_exact(Arc::new(Binomial { beta })));
    }
    let ratio = match *spec {
        ZooSpec::StronglyStarlike { alpha } => SectorRatio { alpha, u: ONE },
        ZooSpec::StronglySpirallike { lambda, alpha } => {
            SectorRatio { alpha, u: Complex64::from_polar(1.0, 2.0 * lambda / alpha) }
        }
        _ => unreachable!("binomial members handled above"),
    };
    from_log_ratio(Arc::new(ratio), order, label)
}

/// `f(z) = z (1-z)^{-beta}`.
#[derive(Debug, Clone, Copy)]
pub struct Binomial {
    pub beta: Complex64,
}

impl ExactEval for Binomial {
    fn log_ratio(&self, z: Complex64) -> Complex64 {
        -self.beta * (ONE - z).ln()
    }

    fn log_derivative_ratio(&self, z: Complex64) -> Complex64 {
        ONE + self.beta * z / (ONE - z)
    }

    fn convexity_ratio(&self, z: Complex64) -> Complex64 {
        let b = self.beta;
        ONE + z * ((b + 1.0) / (ONE - z) + (b - 1.0) / (ONE + (b - 1.0) * z))
    }

    fn log_derivative(&self, z: Complex64) -> Complex64 {
        // f' = (1-z)^{-beta-1} (1 + (beta-1) z)
        let b = self.beta;
        let lin = |t: f64| ONE + (b - 1.0) * z * t;
        let log_lin = if (b - 1.0).norm() <= 1.0 {
            lin(1.0).ln()
        } else {
            crate::phase::tracked_log(lin)
        };
        -(b + 1.0) * (ONE - z).ln() + log_lin
    }
}

/// A prescribed value of `z f'(z)/f(z)`: analytic, equal to 1 at the origin.
pub trait RatioFunction: Send + Sync + fmt::Debug {
    fn value(&self, z: Complex64) -> Complex64;
    /// Logarithm on the branch vanishing at 0.
    fn log(&self, z: Complex64) -> Complex64;
    /// `z p'(z) / p(z)`.
    fn z_log_derivative(&self, z: Complex64) -> Complex64;
    fn series(&self, order: usize) -> Result<PowerSeries>;
}

/// `((1 + u z)/(1 - z))^alpha` with `|u| = 1`, principal branch anchored at
/// `z = 0`. Maps the disk onto a sector of half-opening `pi alpha / 2`.
#[derive(Debug, Clone, Copy)]
pub struct SectorRatio {
    pub alpha: f64,
    pub u: Complex64,
}

impl RatioFunction for SectorRatio {
    fn value(&self, z: Complex64) -> Complex64 {
        self.log(z).exp()
    }

    fn log(&self, z: Complex64) -> Complex64 {
        // both factors have positive real part on the disk
        self.alpha * ((ONE + self.u * z).ln() - (ONE - z).ln())
    }

    fn z_log_derivative(&self, z: Complex64) -> Complex64 {
        self.alpha * z * (self.u / (ONE + self.u * z) + ONE / (ONE - z))
    }

    fn series(&self, order: usize) -> Result<PowerSeries> {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        let mut u_pow = ONE;
        for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
            u_pow *= -self.u;
            *c = self.alpha * (ONE - u_pow) / k as f64;
        }
        PowerSeries::new(coeffs)?.exp()
    }
}

/// The ratio `z f'/f` of an existing function, for rebuilding `f` from it.
/// Values outside the function's evaluation radius are NaN.
#[derive(Debug, Clone)]
pub struct RatioOf(pub AnalyticFunction);

impl RatioFunction for RatioOf {
    fn value(&self, z: Complex64) -> Complex64 {
        self.0.ratio_at(z).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }

    fn log(&self, z: Complex64) -> Complex64 {
        crate::phase::tracked_log(|t| self.value(z * t))
    }

    fn z_log_derivative(&self, z: Complex64) -> Complex64 {
        let conv = self.0.convexity_at(z).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        conv - self.value(z)
    }

    fn series(&self, order: usize) -> Result<PowerSeries> {
        Ok(self.0.at_order(order)?.derived()?.ratio.clone())
    }
}

/// `exp(l) - 1` without cancellation for small `l`.
fn exp_m1(l: Complex64) -> Complex64 {
    if l.norm() < 1e-3 {
        l * (ONE + l * (0.5 + l * (1.0 / 6.0 + l * (1.0 / 24.0 + l / 120.0))))
    } else {
        l.exp() - 1.0
    }
}

/// `f(z) = z exp(int_0^z (p(t) - 1)/t dt)`, evaluated by quadrature along the
/// radius.
#[derive(Debug)]
struct FromLogRatio {
    ratio: Arc<dyn RatioFunction>,
}

const LOG_RATIO_REL_TOL: f64 = 1e-11;

impl ExactEval for FromLogRatio {
    fn log_ratio(&self, z: Complex64) -> Complex64 {
        if z.norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        quad::integrate(|t| exp_m1(self.ratio.log(z * t)) / t, 0.0, 1.0, LOG_RATIO_REL_TOL)
    }

    fn log_derivative_ratio(&self, z: Complex64) -> Complex64 {
        self.ratio.value(z)
    }

    fn convexity_ratio(&self, z: Complex64) -> Complex64 {
        self.ratio.value(z) + self.ratio.z_log_derivative(z)
    }

    fn log_derivative(&self, z: Complex64) -> Complex64 {
        self.log_ratio(z) + self.ratio.log(z)
    }
}

/// Builds the normalized function whose `z f'/f` is the given ratio.
pub fn from_log_ratio(ratio: Arc<dyn RatioFunction>, order: usize, label: impl Into<String>) -> Result<AnalyticFunction> {
    let p0 = ratio.value(Complex64::new(0.0, 0.0));
    if (p0 - ONE).norm() > 1e-12 {
        return Err(Error::NotNormalized { expected: "1", found: p0.to_string() });
    }
    let r = ratio.clone();
    let source: SeriesSource = Arc::new(move |n| {
        let p = r.series(n)?;
        if (p.coeff(0) - ONE).norm() > 1e-12 {
            return Err(Error::NotNormalized { expected: "1", found: p.coeff(0).to_string() });
        }
        p.shift_down().antiderivative().with_order(n).exp()
    });
    Ok(AnalyticFunction::new(source(order)?, label)?
        .with_source(source)
        .with_exact(Arc::new(FromLogRatio { ratio })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::{log_derivative_ratio, power_deform};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[derive(Debug)]
    struct Constant(Complex64);

    impl RatioFunction for Constant {
        fn value(&self, _: Complex64) -> Complex64 {
            self.0
        }
        fn log(&self, _: Complex64) -> Complex64 {
            self.0.ln()
        }
        fn z_log_derivative(&self, _: Complex64) -> Complex64 {
            Complex64::new(0.0, 0.0)
        }
        fn series(&self, order: usize) -> Result<PowerSeries> {
            Ok(PowerSeries::one(order).scale(self.0))
        }
    }

    #[test]
    fn named_series() {
        let k = make_named(&ZooSpec::Koebe, 8).unwrap();
        for n in 0..=8 {
            assert!((k.h_series().coeff(n) - (n + 1) as f64).norm() < 1e-12);
        }
        let s = make_named(&ZooSpec::StarlikeOrder { alpha: 0.5 }, 8).unwrap();
        assert!(s.h_series().max_abs_diff(&PowerSeries::binomial(ONE, 8)) < 1e-15);
    }

    #[test]
    fn parse_names() {
        assert_eq!("koebe".parse::<ZooSpec>().unwrap(), ZooSpec::Koebe);
        assert_eq!(
            "strongly-spirallike:0.3,0.6".parse::<ZooSpec>().unwrap(),
            ZooSpec::StronglySpirallike { lambda: 0.3, alpha: 0.6 }
        );
        for spec in [ZooSpec::HalfPlane, ZooSpec::SpiralKoebe { lambda: -0.4 }, ZooSpec::StarlikeOrder { alpha: 0.25 }] {
            assert_eq!(spec.to_string().parse::<ZooSpec>().unwrap(), spec);
        }
        assert!("koebe:1".parse::<ZooSpec>().is_err());
        assert!("starlike-order:1.0".parse::<ZooSpec>().is_err());
        assert!("strongly-spirallike:1.0,0.5".parse::<ZooSpec>().is_err());
        assert!("nonsense".parse::<ZooSpec>().is_err());
    }

    #[test]
    fn spiral_koebe_ratio_in_rotated_half_plane() {
        let lambda = 0.9;
        let f = make_named(&ZooSpec::SpiralKoebe { lambda }, 16).unwrap();
        let rot = Complex64::from_polar(1.0, -lambda);
        for i in 1..=20 {
            for j in 0..64 {
                let z = Complex64::from_polar(0.0499 * i as f64, j as f64 * std::f64::consts::TAU / 64.0);
                assert!((rot * f.ratio_at(z).unwrap()).re > 0.0);
            }
        }
    }

    #[test]
    fn from_constant_ratio_is_identity() {
        let f = from_log_ratio(Arc::new(Constant(ONE)), 16, "one").unwrap();
        assert_eq!(f.h_series(), &PowerSeries::one(16));
        assert_eq!(f.value_at(c(0.5, 0.5)).unwrap(), c(0.5, 0.5));
        assert!(from_log_ratio(Arc::new(Constant(c(2.0, 0.0))), 4, "bad").is_err());
    }

    #[test]
    fn koebe_from_its_ratio() {
        let f = from_log_ratio(Arc::new(SectorRatio { alpha: 1.0, u: ONE }), 64, "k").unwrap();
        let k = make_named(&ZooSpec::Koebe, 64).unwrap();
        assert!(f.h_series().max_rel_diff(k.h_series()) < 1e-10);
        for z in [c(0.5, 0.3), c(-0.9, 0.1), c(0.99, 0.0), c(0.0, -0.999)] {
            let exact = k.log_ratio_at(z).unwrap();
            let via_quad = f.log_ratio_at(z).unwrap();
            assert!((exact - via_quad).norm() < 1e-9 * exact.norm().max(1.0), "{z}: {exact} vs {via_quad}");
        }
    }

    #[test]
    fn strongly_starlike_sector() {
        let f = make_named(&ZooSpec::StronglyStarlike { alpha: 0.5 }, 32).unwrap();
        for i in 1..=10 {
            for j in 0..128 {
                let z = Complex64::from_polar(0.0999 * i as f64, j as f64 * std::f64::consts::TAU / 128.0);
                assert!(f.ratio_at(z).unwrap().arg().abs() < std::f64::consts::FRAC_PI_4);
            }
        }
    }

    #[test]
    fn eq_11_and_12_at_extremals() {
        let k = make_named(&ZooSpec::Koebe, 64).unwrap();
        for alpha in [0.0, 0.25, 0.5, 0.9] {
            let direct = make_named(&ZooSpec::StarlikeOrder { alpha }, 64).unwrap();
            let deformed = power_deform(&k, c(1.0 - alpha, 0.0)).unwrap();
            assert!(direct.h_series().max_rel_diff(deformed.h_series()) < 1e-12);
        }
        for lambda in [-1.2, -0.5, 0.3, 1.0] {
            let direct = make_named(&ZooSpec::SpiralKoebe { lambda }, 64).unwrap();
            let b = Complex64::from_polar(lambda.cos(), lambda);
            let deformed = power_deform(&k, b).unwrap();
            assert!(direct.h_series().max_rel_diff(deformed.h_series()) < 1e-12);
        }
    }

    #[test]
    fn ratio_round_trip_on_grid() {
        for spec in [ZooSpec::StronglyStarlike { alpha: 0.3 }, ZooSpec::StronglySpirallike { lambda: -0.5, alpha: 0.8 }] {
            let f = make_named(&spec, 64).unwrap();
            let p = log_derivative_ratio(&f).unwrap();
            for z in [c(0.1, 0.2), c(-0.3, 0.3)] {
                assert!((p.series.horner(z) - p.eval(z).unwrap()).norm() < 1e-9);
            }
        }
    }
}
