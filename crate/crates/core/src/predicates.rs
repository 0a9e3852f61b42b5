//! Grid-based membership predicates for the classical subclasses, a numerical
//! univalence test on subdisks, Goodman's argument bound and the growth probe
//! for `Log f(z)/z`.
//!
//! Open conditions such as `Re p > 0 on the disk` are only checked on a
//! compact grid. Each report carries the extreme value of the defining
//! quantity and the grid point where it occurs.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::function::AnalyticFunction;
use crate::phase::arguments_on_ray;

pub use crate::grid::SampleGrid;

/// Default strictness margin: values above it count as positive, values
/// within `+-DEFAULT_MARGIN` of zero are inconclusive.
pub const DEFAULT_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Classifies a slack value with a symmetric tie band.
    pub fn from_slack(slack: f64, band: f64) -> Self {
        if slack.is_nan() {
            Verdict::Inconclusive
        } else if slack > band {
            Verdict::Pass
        } else if slack < -band {
            Verdict::Fail
        } else {
            Verdict::Inconclusive
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub z: Complex64,
    pub value: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredicateReport {
    pub predicate: &'static str,
    pub verdict: Verdict,
    /// extreme value of the defining quantity minus its threshold
    pub margin: f64,
    /// worst grid point (always present on failure)
    pub witness: Option<Witness>,
    /// the verdict only covers `|z| <= scope`
    pub scope: f64,
    pub note: Option<String>,
}

impl PredicateReport {
    fn new(predicate: &'static str, verdict: Verdict, margin: f64, witness: Option<Witness>, scope: f64) -> Self {
        Self { predicate, verdict, margin, witness, scope, note: None }
    }

    fn inconclusive(predicate: &'static str, scope: f64, note: String) -> Self {
        Self { predicate, verdict: Verdict::Inconclusive, margin: f64::NAN, witness: None, scope, note: Some(note) }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    /// `predicate,function_label,param,verdict,margin,witness_re,witness_im`
    pub fn csv_row(&self, label: &str, param: &str) -> String {
        let (re, im) = match self.witness {
            Some(w) => (format!("{:.12e}", w.z.re), format!("{:.12e}", w.z.im)),
            None => (String::new(), String::new()),
        };
        format!("{},{},{},{},{:.12e},{},{}", self.predicate, csv_field(label), csv_field(param), self.verdict, self.margin, re, im)
    }
}

pub const CSV_HEADER: &str = "predicate,function_label,param,verdict,margin,witness_re,witness_im";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Evaluates `eval` at every grid point (radius-major order).
fn grid_values<F>(g: &SampleGrid, eval: F) -> Result<Vec<(Complex64, Complex64)>>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    g.points().into_par_iter().map(|z| eval(z).map(|v| (z, v))).collect()
}

/// Grid point minimizing `key`, ties resolved by grid order.
fn arg_min<K: Fn(Complex64) -> f64>(values: &[(Complex64, Complex64)], key: K) -> (f64, Witness) {
    let mut best = (f64::INFINITY, Witness { z: Complex64::new(0.0, 0.0), value: Complex64::new(f64::NAN, 0.0) });
    for &(z, v) in values {
        let k = key(v);
        if k < best.0 || k.is_nan() && !best.0.is_nan() {
            best = (k, Witness { z, value: v });
        }
    }
    best
}

fn check_grid(f: &AnalyticFunction, g: &SampleGrid) -> Result<()> {
    if g.max_radius() > f.max_radius() {
        return Err(Error::OutsideEvalRadius { modulus: g.max_radius(), radius: f.max_radius() });
    }
    Ok(())
}

/// Newton iteration for a zero of `p = z f'/f`, using
/// `z p'(z) = p (1 + z f''/f' - p)`. Steps are damped to stay in the disk.
pub fn newton_ratio_root(f: &AnalyticFunction, start: Complex64) -> Option<Witness> {
    let limit = f.max_radius() * (1.0 - 1e-9);
    let mut z = start;
    for _ in 0..80 {
        let p = f.ratio_at(z).ok()?;
        if p.norm() < 1e-14 && z.norm() < 1.0 - 1e-6 {
            return Some(Witness { z, value: p });
        }
        let q = f.convexity_at(z).ok()? - p;
        if q.norm() == 0.0 || !q.is_finite() {
            return None;
        }
        let mut step = z / q;
        let mut next = z - step;
        let mut halvings = 0;
        while next.norm() >= limit {
            step *= 0.5;
            next = z - step;
            halvings += 1;
            if halvings > 60 {
                return None;
            }
        }
        if (next - z).norm() < 1e-16 * z.norm().max(1e-300) {
            break;
        }
        z = next;
    }
    let p = f.ratio_at(z).ok()?;
    // a zero on the unit circle is approached only through damping
    (p.norm() < 1e-10 && z.norm() < 1.0 - 1e-6).then_some(Witness { z, value: p })
}

/// Locally univalent on the grid: `|f'| = |z f'/f| |f/z|` stays above `tol`,
/// and Newton started from the smallest values of `|z f'/f|` finds no zero.
pub fn is_locally_univalent(f: &AnalyticFunction, g: &SampleGrid, tol: f64) -> Result<PredicateReport> {
    const NAME: &str = "locally_univalent";
    check_grid(f, g)?;
    let ratios = grid_values(g, |z| f.ratio_at(z))?;
    let mut order: Vec<usize> = (0..ratios.len()).collect();
    order.sort_by(|&a, &b| ratios[a].1.norm().total_cmp(&ratios[b].1.norm()).then(a.cmp(&b)));
    for &k in order.iter().take(4) {
        if let Some(w) = newton_ratio_root(f, ratios[k].0) {
            let mut r = PredicateReport::new(NAME, Verdict::Fail, -tol, Some(w), g.max_radius());
            r.note = Some("z f'/f vanishes at the witness".into());
            return Ok(r);
        }
    }
    let values = grid_values(g, |z| Ok(f.ratio_at(z)? * f.log_ratio_at(z)?.exp()))?;
    let (min_fp, worst) = arg_min(&values, |v| v.norm());
    let verdict = if min_fp > tol { Verdict::Pass } else { Verdict::Fail };
    Ok(PredicateReport::new(NAME, verdict, min_fp - tol, Some(worst), g.max_radius()))
}

/// `Re(e^{-i lambda} z f'/f) > margin` on the grid.
pub fn is_spirallike(f: &AnalyticFunction, lambda: f64, g: &SampleGrid, margin: f64) -> Result<PredicateReport> {
    check_grid(f, g)?;
    let values = grid_values(g, |z| f.ratio_at(z))?;
    Ok(spirallike_from_values(&values, lambda, margin, g.max_radius()))
}

fn spirallike_from_values(values: &[(Complex64, Complex64)], lambda: f64, margin: f64, scope: f64) -> PredicateReport {
    let rot = Complex64::from_polar(1.0, -lambda);
    let (min, worst) = arg_min(values, |v| (rot * v).re);
    PredicateReport::new("spirallike", Verdict::from_slack(min, margin), min, Some(worst), scope)
}

/// Best `lambda` from `lambdas` for the spirallike predicate, returned with
/// its report. Ties keep the first `lambda`.
pub fn spirallike_for_some_lambda(
    f: &AnalyticFunction,
    lambdas: &[f64],
    g: &SampleGrid,
    margin: f64,
) -> Result<(f64, PredicateReport)> {
    check_grid(f, g)?;
    if lambdas.is_empty() {
        return Err(Error::InvalidParameter("empty lambda grid".into()));
    }
    let values = grid_values(g, |z| f.ratio_at(z))?;
    let mut best: Option<(f64, PredicateReport)> = None;
    for &lambda in lambdas {
        let r = spirallike_from_values(&values, lambda, margin, g.max_radius());
        if best.as_ref().is_none_or(|(_, b)| r.margin > b.margin) {
            best = Some((lambda, r));
        }
    }
    Ok(best.expect("non-empty"))
}

/// The uniform grid `-pi/2 + pi (k + 1/2) / n`, `k = 0..n`.
pub fn lambda_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| -FRAC_PI_2 + std::f64::consts::PI * (k as f64 + 0.5) / n as f64).collect()
}

/// `|arg(z f'/f) - lambda| < pi alpha / 2 - margin` on the grid, with the
/// argument continued along each ray from `z = 0`.
pub fn is_strongly_spirallike(f: &AnalyticFunction, lambda: f64, alpha: f64, g: &SampleGrid, margin: f64) -> Result<PredicateReport> {
    const NAME: &str = "strongly_spirallike";
    if !(lambda.abs() < FRAC_PI_2 && alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("need |lambda| < pi/2 and 0 < alpha < 1, got {lambda}, {alpha}")));
    }
    check_grid(f, g)?;
    let bound = FRAC_PI_2 * alpha;
    let rays: Vec<Result<(f64, Witness)>> = g
        .thetas()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|theta| {
            let args = arguments_on_ray(|z| f.ratio_at(z), theta, &g.radii)?;
            let mut worst = (f64::INFINITY, Witness { z: Complex64::new(0.0, 0.0), value: Complex64::new(0.0, 0.0) });
            for (&r, &a) in g.radii.iter().zip(&args) {
                let slack = bound - (a - lambda).abs();
                if slack < worst.0 {
                    let z = Complex64::from_polar(r, theta);
                    worst = (slack, Witness { z, value: Complex64::new(a, 0.0) });
                }
            }
            Ok(worst)
        })
        .collect();
    let mut best = (f64::INFINITY, None);
    for ray in rays {
        match ray {
            Ok((slack, w)) if slack < best.0 => best = (slack, Some(w)),
            Ok(_) => {}
            Err(e) => return Ok(PredicateReport::inconclusive(NAME, g.max_radius(), e.to_string())),
        }
    }
    Ok(PredicateReport::new(NAME, Verdict::from_slack(best.0, margin), best.0, best.1, g.max_radius()))
}

/// `Re(1 + z f''/f') > margin` on the grid.
pub fn is_convex(f: &AnalyticFunction, g: &SampleGrid, margin: f64) -> Result<PredicateReport> {
    check_grid(f, g)?;
    let values = grid_values(g, |z| f.convexity_at(z))?;
    let (min, worst) = arg_min(&values, |v| v.re);
    Ok(PredicateReport::new("convex", Verdict::from_slack(min, margin), min, Some(worst), g.max_radius()))
}

fn segments_intersect(a: Complex64, b: Complex64, c: Complex64, d: Complex64, tol: f64) -> Option<Complex64> {
    let cross = |u: Complex64, v: Complex64| u.re * v.im - u.im * v.re;
    let (r, s) = (b - a, d - c);
    let denom = cross(r, s);
    if denom.abs() <= f64::EPSILON * r.norm() * s.norm() {
        // parallel: collision only if the segments nearly overlap
        let dist = |p: Complex64, x: Complex64, y: Complex64| {
            let e = y - x;
            let t = if e.norm_sqr() == 0.0 { 0.0 } else { (((p - x) * e.conj()).re / e.norm_sqr()).clamp(0.0, 1.0) };
            (p - (x + e * t)).norm()
        };
        return [(a, c, d), (b, c, d), (c, a, b), (d, a, b)].into_iter().find(|&(p, x, y)| dist(p, x, y) <= tol).map(|x| x.0);
    }
    let t = cross(c - a, s) / denom;
    let u = cross(c - a, r) / denom;
    let (lo_t, hi_t) = (-tol / r.norm().max(1e-300), 1.0 + tol / r.norm().max(1e-300));
    let (lo_u, hi_u) = (-tol / s.norm().max(1e-300), 1.0 + tol / s.norm().max(1e-300));
    (t >= lo_t && t <= hi_t && u >= lo_u && u <= hi_u).then(|| a + r * t)
}

/// Winding number of a closed polygon about `p`.
fn polygon_winding(poly: &[Complex64], p: Complex64) -> i64 {
    let n = poly.len();
    let mut w = 0;
    for k in 0..n {
        let (a, b) = (poly[k], poly[(k + 1) % n]);
        if (a.im <= p.im) != (b.im <= p.im) {
            let x = a.re + (p.im - a.im) * (b.re - a.re) / (b.im - a.im);
            if x > p.re {
                w += if b.im > a.im { 1 } else { -1 };
            }
        }
    }
    w
}

/// Injectivity of `f` on `|z| <= r`, judged from `n` samples of the circle:
/// the sampled image must be a simple closed polygon, and it must wind once
/// about `f(0)` and about the images of 10 seeded random interior points.
pub fn is_univalent_numeric(f: &AnalyticFunction, r: f64, n: usize) -> Result<PredicateReport> {
    const NAME: &str = "univalent_numeric";
    if !(r > 0.0 && r < 1.0) || n < 8 {
        return Err(Error::InvalidParameter(format!("need 0 < r < 1 and n >= 8, got r = {r}, n = {n}")));
    }
    if r > f.max_radius() {
        return Err(Error::OutsideEvalRadius { modulus: r, radius: f.max_radius() });
    }
    let zs: Vec<Complex64> = (0..n).map(|k| Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / n as f64)).collect();
    let ws = zs.par_iter().map(|&z| f.value_at(z)).collect::<Result<Vec<_>>>()?;

    let (mut lo, mut hi) = (ws[0], ws[0]);
    for w in &ws {
        lo = Complex64::new(lo.re.min(w.re), lo.im.min(w.im));
        hi = Complex64::new(hi.re.max(w.re), hi.im.max(w.im));
    }
    let diameter = (hi - lo).norm();
    let max_step = (0..n).map(|k| (ws[(k + 1) % n] - ws[k]).norm()).fold(0.0, f64::max);
    let tol = 1e-9 * diameter;

    // self-intersection of non-adjacent edges
    let hits: Vec<Option<Witness>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let (a, b) = (ws[i], ws[(i + 1) % n]);
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (c, d) = (ws[j], ws[(j + 1) % n]);
                if let Some(p) = segments_intersect(a, b, c, d, tol) {
                    return Some(Witness { z: zs[i], value: p });
                }
            }
            None
        })
        .collect();
    if let Some(w) = hits.into_iter().flatten().next() {
        let mut rep = PredicateReport::new(NAME, Verdict::Fail, -1.0, Some(w), r);
        rep.note = Some("image of the circle self-intersects".into());
        return Ok(rep);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x756e_6976);
    let mut seeds = vec![Complex64::new(0.0, 0.0)];
    for _ in 0..10 {
        let rho = r * 0.9 * rng.gen::<f64>().sqrt();
        let phi = rng.gen::<f64>() * std::f64::consts::TAU;
        seeds.push(Complex64::from_polar(rho, phi));
    }
    for z in seeds {
        let w = f.value_at(z)?;
        let wind = polygon_winding(&ws, w);
        if wind != 1 {
            let mut rep = PredicateReport::new(NAME, Verdict::Fail, -1.0, Some(Witness { z, value: w }), r);
            rep.note = Some(format!("winding number {wind} about f(z)"));
            return Ok(rep);
        }
    }
    if max_step > 0.2 * diameter {
        return Ok(PredicateReport::inconclusive(NAME, r, format!("adjacent samples {max_step:.3e} apart, image diameter {diameter:.3e}")));
    }
    Ok(PredicateReport::new(NAME, Verdict::Pass, 1.0, None, r))
}

/// `|Arg f(z)/z| <= 2 arcsin|z| + 1e-9` at every grid point, with the
/// argument taken from the branch of `Log f(z)/z` vanishing at the origin.
pub fn goodman_check(f: &AnalyticFunction, g: &SampleGrid) -> Result<PredicateReport> {
    const NAME: &str = "goodman";
    check_grid(f, g)?;
    let values = grid_values(g, |z| f.log_ratio_at(z))?;
    let mut best = (f64::INFINITY, None);
    for &(z, l) in &values {
        let slack = 2.0 * z.norm().asin() - l.im.abs();
        if slack < best.0 {
            best = (slack, Some(Witness { z, value: Complex64::new(l.im, 0.0) }));
        }
    }
    // cross-check the branch on each ray with the unwrapper
    for theta in g.thetas() {
        let unwrapped = arguments_on_ray(|z| Ok(f.log_ratio_at(z)?.exp()), theta, &g.radii);
        match unwrapped {
            Ok(args) => {
                for (&r, a) in g.radii.iter().zip(args) {
                    let l = f.log_ratio_at(Complex64::from_polar(r, theta))?;
                    if (l.im - a).abs() > 1e-6 {
                        return Err(Error::NonFinite(format!("branch mismatch of Log f(z)/z at r = {r}, theta = {theta}")));
                    }
                }
            }
            Err(e) => return Ok(PredicateReport::inconclusive(NAME, g.max_radius(), e.to_string())),
        }
    }
    let verdict = if best.0 >= -1e-9 { Verdict::Pass } else { Verdict::Fail };
    Ok(PredicateReport::new(NAME, verdict, best.0, best.1, g.max_radius()))
}

/// `max_theta |Arg f/z|` against `2 arcsin r` for each radius.
pub fn argument_profile(f: &AnalyticFunction, g: &SampleGrid) -> Result<Vec<(f64, f64, f64)>> {
    check_grid(f, g)?;
    g.radii
        .iter()
        .map(|&r| {
            let max = g
                .thetas()
                .map(|t| f.log_ratio_at(Complex64::from_polar(r, t)).map(|l| l.im.abs()))
                .try_fold(0.0f64, |m, v| v.map(|v| m.max(v)))?;
            Ok((r, max, 2.0 * r.asin()))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Growth {
    BoundedPlateau,
    Growing,
    Inconclusive,
}

impl fmt::Display for Growth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Growth::BoundedPlateau => "bounded-plateau",
            Growth::Growing => "growing",
            Growth::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundednessProfile {
    pub radii: Vec<f64>,
    /// `M(r) = max_theta |Log f(r e^{i theta}) / (r e^{i theta})|`
    pub m: Vec<f64>,
    pub growth: Growth,
}

/// Radii `1 - 10^{-t}` for `t = 0.5, 0.75, ..., 3`.
pub fn default_probe_radii() -> Vec<f64> {
    (0..=10).map(|k| 1.0 - 10f64.powf(-(0.5 + 0.25 * k as f64))).collect()
}

/// Classifies a profile on log-spaced radii.
///
/// Plateau: the second half of the profile adds less than 5% of the final
/// value, or each of the last three increments is at most 0.95 times its
/// predecessor (geometric decay, so the increments sum to a finite limit).
/// Growing: the last three increments are positive and non-decreasing up to
/// 1%.
pub fn classify_growth(m: &[f64]) -> Growth {
    let n = m.len();
    if n < 5 {
        return Growth::Inconclusive;
    }
    let last = m[n - 1];
    if last.abs() < 1e-12 || last - m[n / 2] < 0.05 * last {
        return Growth::BoundedPlateau;
    }
    let d: Vec<f64> = m.windows(2).map(|w| w[1] - w[0]).collect();
    let k = d.len();
    let tail = &d[k - 4..];
    if tail.iter().all(|&x| x > 0.0) && tail.windows(2).all(|w| w[1] <= 0.95 * w[0]) {
        return Growth::BoundedPlateau;
    }
    let tail = &d[k - 3..];
    if tail.iter().all(|&x| x > 0.0) && tail.windows(2).all(|w| w[1] >= 0.99 * w[0]) {
        return Growth::Growing;
    }
    Growth::Inconclusive
}

/// Maximum of `|Log f/z|` on the circle of radius `r`: a scan over `angles`
/// directions followed by golden-section refinement around the three best.
fn circle_max(f: &AnalyticFunction, r: f64, angles: usize) -> Result<f64> {
    let h = std::f64::consts::TAU / angles as f64;
    let val = |t: f64| f.log_ratio_at(Complex64::from_polar(r, t)).map(|l| l.norm());
    let scan = (0..angles).into_par_iter().map(|k| val(k as f64 * h)).collect::<Result<Vec<_>>>()?;
    let mut idx: Vec<usize> = (0..angles).collect();
    idx.sort_by(|&a, &b| scan[b].total_cmp(&scan[a]).then(a.cmp(&b)));
    let mut best = scan[idx[0]];
    for &k in idx.iter().take(3) {
        let (mut a, mut b) = ((k as f64 - 1.0) * h, (k as f64 + 1.0) * h);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let (mut x1, mut x2) = (b - g * (b - a), a + g * (b - a));
        let (mut f1, mut f2) = (val(x1)?, val(x2)?);
        for _ in 0..40 {
            if f1 > f2 {
                b = x2;
                (x2, f2) = (x1, f1);
                x1 = b - g * (b - a);
                f1 = val(x1)?;
            } else {
                a = x1;
                (x1, f1) = (x2, f2);
                x2 = a + g * (b - a);
                f2 = val(x2)?;
            }
        }
        best = best.max(f1).max(f2);
    }
    Ok(best)
}

/// Profile of `M(r)` for radii increasing towards 1. Needs an exact
/// evaluator, since truncated series are unreliable near the boundary.
pub fn boundedness_probe(f: &AnalyticFunction, radii: &[f64], angles: usize) -> Result<BoundednessProfile> {
    if !f.has_exact() {
        return Err(Error::InvalidParameter(format!("{} has no exact evaluator; the growth probe needs one", f.label())));
    }
    if radii.is_empty() || radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("probe radii must increase strictly inside (0, 1)".into()));
    }
    let m = radii.iter().map(|&r| circle_max(f, r, angles.max(8))).collect::<Result<Vec<_>>>()?;
    let growth = classify_growth(&m);
    Ok(BoundednessProfile { radii: radii.to_vec(), m, growth })
}
