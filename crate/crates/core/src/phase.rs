//! Continuous arguments and logarithms along rays from the origin.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest neighbour-to-neighbour phase change accepted by the unwrapper.
pub const MAX_PHASE_JUMP: f64 = FRAC_PI_2;

/// Continuous argument of a densely sampled sequence.
///
/// The first element is the principal argument of the first value; every
/// later one adds the principal argument of the ratio to its predecessor.
pub fn unwrap_arg_along_ray(values: &[Complex64]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(values.len());
    let Some(first) = values.first() else {
        return Ok(out);
    };
    if first.norm() == 0.0 {
        return Err(Error::ZeroValue(0));
    }
    let mut acc = first.arg();
    out.push(acc);
    for (i, pair) in values.windows(2).enumerate() {
        if pair[1].norm() == 0.0 {
            return Err(Error::ZeroValue(i + 1));
        }
        let jump = (pair[1] / pair[0]).arg();
        if jump.abs() >= MAX_PHASE_JUMP {
            return Err(Error::UnwrapJump { index: i + 1, jump });
        }
        acc += jump;
        out.push(acc);
    }
    Ok(out)
}

/// Continuous argument of `eval(r e^{i theta})` at each of `radii`, refining
/// the ray until neighbouring samples differ by less than the jump limit.
///
/// The ray starts at `z = 0`, where `eval` is expected to be close to 1.
pub fn arguments_on_ray<F>(eval: F, theta: f64, radii: &[f64]) -> Result<Vec<f64>>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    const MAX_SAMPLES: usize = 1 << 14;
    let dir = Complex64::from_polar(1.0, theta);
    let mut ts: Vec<f64> = std::iter::once(0.0).chain(radii.iter().copied()).collect();
    let mut values = ts.iter().map(|&t| eval(dir * t)).collect::<Result<Vec<_>>>()?;
    loop {
        // a large modulus change between neighbours can hide a full turn
        let coarse = values
            .windows(2)
            .position(|w| (w[1].norm() / w[0].norm()).ln().abs() >= MAX_PHASE_JUMP)
            .map(|i| Err(Error::UnwrapJump { index: i + 1, jump: f64::NAN }));
        match coarse.unwrap_or_else(|| unwrap_arg_along_ray(&values)) {
            Ok(args) => {
                // pick out the requested radii (they keep their relative order)
                let mut out = Vec::with_capacity(radii.len());
                let mut j = 0;
                for &r in radii {
                    while ts[j] != r {
                        j += 1;
                    }
                    out.push(args[j]);
                }
                return Ok(out);
            }
            Err(Error::UnwrapJump { index, jump }) if ts.len() < MAX_SAMPLES => {
                let mid = 0.5 * (ts[index - 1] + ts[index]);
                if mid <= ts[index - 1] || mid >= ts[index] {
                    return Err(Error::UnwrapJump { index, jump });
                }
                values.insert(index, eval(dir * mid)?);
                ts.insert(index, mid);
            }
            Err(e) => return Err(e),
        }
    }
}

/// Logarithm of `value(1)` on the branch obtained by continuing from
/// `value(0)` (principal) along `t` in `[0, 1]`.
pub fn tracked_log<F>(value: F) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    fn walk<F: Fn(f64) -> Complex64>(value: &F, t0: f64, v0: Complex64, t1: f64, v1: Complex64, depth: u32) -> f64 {
        let jump = (v1 / v0).arg();
        if jump.abs() < 0.25 * MAX_PHASE_JUMP || depth == 0 {
            return jump;
        }
        let tm = 0.5 * (t0 + t1);
        let vm = value(tm);
        walk(value, t0, v0, tm, vm, depth - 1) + walk(value, tm, vm, t1, v1, depth - 1)
    }
    const STEPS: usize = 8;
    let mut prev = value(0.0);
    let mut arg = prev.arg();
    for k in 1..=STEPS {
        let t0 = (k - 1) as f64 / STEPS as f64;
        let t1 = k as f64 / STEPS as f64;
        let next = value(t1);
        arg += walk(&value, t0, prev, t1, next, 30);
        prev = next;
    }
    Complex64::new(prev.norm().ln(), arg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sequence() {
        let ones = vec![Complex64::new(1.0, 0.0); 3];
        assert_eq!(unwrap_arg_along_ray(&ones).unwrap(), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn positive_reals_have_zero_argument() {
        let vals: Vec<_> = [0.0, 0.3, 0.6, 0.9]
            .iter()
            .map(|&r| (Complex64::new(1.0, 0.0) - r).powi(-2))
            .collect();
        assert!(unwrap_arg_along_ray(&vals).unwrap().iter().all(|&a| a == 0.0));
    }

    #[test]
    fn koebe_factor_on_imaginary_ray() {
        let vals: Vec<_> = (0..=99)
            .map(|k| {
                let z = Complex64::new(0.0, 0.01 * k as f64);
                (Complex64::new(1.0, 0.0) - z).powi(-2)
            })
            .collect();
        let args = unwrap_arg_along_ray(&vals).unwrap();
        let expected = 2.0 * 0.99f64.atan2(1.0);
        assert!((args.last().unwrap() - expected).abs() < 1e-9);
    }

    #[test]
    fn coarse_sampling_is_reported() {
        let vals = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.1)];
        assert!(matches!(unwrap_arg_along_ray(&vals), Err(Error::UnwrapJump { index: 1, .. })));
        let vals = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        assert!(matches!(unwrap_arg_along_ray(&vals), Err(Error::ZeroValue(1))));
    }

    #[test]
    fn ray_refinement_recovers_large_winding() {
        // (1-z)^-8 winds past pi near z = 1 along a ray close to the real axis
        let eval = |z: Complex64| Ok((Complex64::new(1.0, 0.0) - z).powi(-8));
        let theta = 0.003;
        let args = arguments_on_ray(eval, theta, &[0.5, 0.999]).unwrap();
        let z = Complex64::from_polar(0.999, theta);
        let expected = -8.0 * (Complex64::new(1.0, 0.0) - z).arg();
        assert!((args[1] - expected).abs() < 1e-9, "{} vs {}", args[1], expected);
        assert!(expected.abs() > std::f64::consts::PI);
    }

    #[test]
    fn tracked_log_follows_branch() {
        let z = Complex64::from_polar(0.999, 0.003);
        let l = tracked_log(|t| (Complex64::new(1.0, 0.0) - z * t).powi(-8));
        let expected = -8.0 * (Complex64::new(1.0, 0.0) - z).ln();
        assert!((l - expected).norm() < 1e-9);
    }
}
