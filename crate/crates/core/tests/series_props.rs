use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;

use unideform::phase::unwrap_arg_along_ray;
use unideform::PowerSeries;

const N: usize = 64;

fn complex(max: f64) -> impl Strategy<Value = Complex64> {
    (0.0..=1.0f64, 0.0..TAU).prop_map(move |(r, t)| Complex64::from_polar(max * r.sqrt(), t))
}

/// `h` with `h_0 = 1` and the other coefficients of modulus at most 1/2.
fn normalized() -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(complex(0.5), N).prop_map(|tail| {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        coeffs.extend(tail);
        PowerSeries::new(coeffs).unwrap()
    })
}

fn sup(s: &PowerSeries) -> f64 {
    s.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max)
}

/// Rounding floor of the log recurrence on `s`.
fn floor(s: &PowerSeries) -> f64 {
    64.0 * f64::EPSILON * sup(s) * sup(&s.pow(Complex64::new(-1.0, 0.0)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn exp_inverts_log(h in normalized()) {
        let err = h.log().unwrap().exp().unwrap().max_abs_diff(&h);
        prop_assert!(err <= 1e-12f64.max(floor(&h)), "error {err:e}");
    }

    #[test]
    fn power_semigroup(h in normalized(), c in complex(2.0), d in complex(2.0)) {
        let hc = h.pow(c).unwrap();
        let chained = hc.pow(d).unwrap();
        let direct = h.pow(c * d).unwrap();
        let tol = [&h, &hc, &chained, &direct].iter().map(|s| floor(s)).fold(1e-10, f64::max);
        prop_assert!(chained.max_rel_diff(&direct) <= tol);
    }

    #[test]
    fn power_adds_exponents(c in complex(2.0), d in complex(2.0)) {
        // on (1-z)^{-1}, where the binomial recurrence is an independent oracle
        let g = PowerSeries::binomial(Complex64::new(1.0, 0.0), N);
        let lhs = g.pow(c).unwrap().mul(&g.pow(d).unwrap());
        prop_assert!(lhs.max_rel_diff(&PowerSeries::binomial(c + d, N)) <= 1e-10);
    }

    #[test]
    fn evaluation_is_linear(a in normalized(), b in normalized(), s in complex(2.0), t in complex(2.0), z in complex(0.9)) {
        let lhs = a.scale(s).add(&b.scale(t)).evaluate(z).unwrap();
        let rhs = s * a.evaluate(z).unwrap() + t * b.evaluate(z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0) * 10.0);
    }

    #[test]
    fn unwrapping_only_adds_whole_turns(beta in 0.5..12.0f64, theta in 0.0..TAU, r in 0.2..0.95f64) {
        let dir = Complex64::from_polar(1.0, theta);
        let values: Vec<Complex64> = (0..400)
            .map(|k| (Complex64::new(1.0, 0.0) - dir * (r * k as f64 / 399.0)).powf(-beta))
            .collect();
        let args = unwrap_arg_along_ray(&values).unwrap();
        for (a, v) in args.iter().zip(&values) {
            let turns = (a - v.arg()) / TAU;
            prop_assert!((turns - turns.round()).abs() < 1e-9);
        }
        // and it tracks the closed-form branch
        let last = -beta * (Complex64::new(1.0, 0.0) - dir * r).arg();
        prop_assert!((args[399] - last).abs() < 1e-9);
    }

    #[test]
    fn json_roundtrip(h in normalized()) {
        prop_assert_eq!(PowerSeries::from_json(&h.to_json()).unwrap(), h);
    }
}
