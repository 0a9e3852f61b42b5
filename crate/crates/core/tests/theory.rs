use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use unideform::deform::{alexander, integral_deform_i, integral_deform_j, power_deform};
use unideform::region::{closed_form_variability, mobius_t, mobius_t_inv, ClassSpec, ExtPoint};
use unideform::verify::{run_suite, RunConfig, Suite, OPERATIONS};
use unideform::zoo::{from_log_ratio, make_named, RatioFunction, ZooSpec};
use unideform::{AnalyticFunction, PowerSeries};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn koebe(n: usize) -> AnalyticFunction {
    make_named(&ZooSpec::Koebe, n).unwrap()
}

#[test]
fn verify_all_covers_every_operation() {
    let out = run_suite(Suite::All, &RunConfig { seed: 7, ..RunConfig::default() }).unwrap();
    assert!(out.passed(), "{:?}", out.failures);
    let expected: BTreeSet<&str> = OPERATIONS.iter().copied().collect();
    assert_eq!(out.coverage, expected);
}

#[test]
fn factorizations_on_koebe() {
    let k = koebe(64);
    let c = Complex64::new(0.3, 0.0);
    let lhs = integral_deform_i(&alexander(&k).unwrap(), c).unwrap();
    assert!(lhs.h_series().max_rel_diff(integral_deform_j(&k, c).unwrap().h_series()) <= 1e-10);
    let c = Complex64::new(0.5, 0.25);
    let lhs = alexander(&power_deform(&k, c).unwrap()).unwrap();
    assert!(lhs.h_series().max_rel_diff(integral_deform_j(&k, c).unwrap().h_series()) <= 1e-10);
}

#[test]
fn transported_ratio_on_koebe() {
    let k = koebe(256);
    for c in [Complex64::new(0.5, 0.0), Complex64::new(-1.0, 0.7), Complex64::new(1.9, -0.4)] {
        let g = power_deform(&k, c).unwrap();
        for r in [0.1, 0.5, 0.9, 0.99, 0.999] {
            for j in 0..64 {
                let z = Complex64::from_polar(r, TAU * j as f64 / 64.0);
                let want = 1.0 - c + c * (1.0 + z) / (1.0 - z);
                assert!((g.ratio_at(z).unwrap() - want).norm() <= 1e-10 * want.norm().max(1.0));
            }
        }
    }
}

/// `(1+z)/(1-z)`, written out so the rebuild does not use library ratios.
#[derive(Debug)]
struct Cayley;

impl RatioFunction for Cayley {
    fn value(&self, z: Complex64) -> Complex64 {
        (1.0 + z) / (1.0 - z)
    }
    fn log(&self, z: Complex64) -> Complex64 {
        ((1.0 + z) / (1.0 - z)).ln()
    }
    fn z_log_derivative(&self, z: Complex64) -> Complex64 {
        2.0 * z / ((1.0 - z) * (1.0 + z))
    }
    fn series(&self, n: usize) -> unideform::Result<PowerSeries> {
        let mut coeffs = vec![Complex64::new(2.0, 0.0); n + 1];
        coeffs[0] = ONE;
        PowerSeries::new(coeffs)
    }
}

#[test]
fn rebuilding_koebe_from_its_ratio() {
    let f = from_log_ratio(Arc::new(Cayley), 64, "rebuilt").unwrap();
    let want: Vec<Complex64> = (1..=65).map(|n| Complex64::new(n as f64, 0.0)).collect();
    let err = f.h_series().coeffs().iter().zip(&want).map(|(a, b)| (a - b).norm() / b.norm()).fold(0.0, f64::max);
    assert!(err <= 1e-10, "{err:e}");
    // exact evaluation near the boundary through the radial integral
    let z = Complex64::from_polar(0.99, 2.0);
    assert!((f.log_ratio_at(z).unwrap() + 2.0 * (1.0 - z).ln()).norm() < 1e-9);
}

#[test]
fn mobius_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let c = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let w = 1.0 - 1.0 / c;
        match mobius_t(ExtPoint::Finite(w)) {
            ExtPoint::Finite(back) => assert!((back - c).norm() <= 1e-14 * c.norm().max(1.0)),
            ExtPoint::Infinity => panic!("finite expected"),
        }
        match mobius_t_inv(ExtPoint::Finite(c)) {
            ExtPoint::Finite(v) => assert!((v - w).norm() <= 1e-14 * w.norm().max(1.0)),
            ExtPoint::Infinity => panic!("finite expected"),
        }
    }
}

/// Every point of `region` with `0.05 <= |w| <= 5` should lie within 0.05 of
/// the image of a 512 x 2048 polar grid (radii up to 0.999) under `z f'/f`,
/// after one Newton step on the nearest grid point.
fn check_density(spec: ZooSpec, cls: ClassSpec, rng: &mut ChaCha8Rng) {
    let f = make_named(&spec, 256).unwrap();
    let region = closed_form_variability(&cls).unwrap();
    let (nr, na) = (512, 2048);
    let mut pts = Vec::with_capacity(nr * na);
    for i in 1..=nr {
        let r = 0.999 * i as f64 / nr as f64;
        for j in 0..na {
            let z = Complex64::from_polar(r, TAU * j as f64 / na as f64);
            pts.push((z, f.ratio_at(z).unwrap()));
        }
    }
    let mut targets = Vec::new();
    while targets.len() < 100 {
        let w = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        if region.contains(w) && (0.05..=5.0).contains(&w.norm()) {
            targets.push(w);
        }
    }
    for w in targets {
        let &(z0, p0) = pts.iter().min_by(|a, b| (a.1 - w).norm().total_cmp(&(b.1 - w).norm())).unwrap();
        let h = 1e-6;
        let dp = (f.ratio_at(z0 + h).unwrap() - f.ratio_at(z0 - h).unwrap()) / (2.0 * h);
        let mut z1 = z0 - (p0 - w) / dp;
        if z1.norm() > 0.999 {
            z1 *= 0.999 / z1.norm();
        }
        let d = (p0 - w).norm().min((f.ratio_at(z1).unwrap() - w).norm());
        assert!(d < 0.05, "{spec}: target {w} missed by {d}");
    }
}

#[test]
fn extremal_ratios_fill_their_regions() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cases = [
        (ZooSpec::Koebe, ClassSpec::Starlike),
        (ZooSpec::StarlikeOrder { alpha: 0.25 }, ClassSpec::StarlikeOrder { alpha: 0.25 }),
        (ZooSpec::HalfPlane, ClassSpec::Convex),
        (ZooSpec::SpiralKoebe { lambda: 0.5 }, ClassSpec::Spirallike { lambda: 0.5 }),
        (ZooSpec::StronglyStarlike { alpha: 0.5 }, ClassSpec::StronglyStarlike { alpha: 0.5 }),
        (ZooSpec::StronglySpirallike { lambda: 0.3, alpha: 0.6 }, ClassSpec::StronglySpirallike { lambda: 0.3, alpha: 0.6 }),
    ];
    for (spec, cls) in cases {
        check_density(spec, cls, &mut rng);
    }
}
