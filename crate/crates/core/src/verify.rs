//! Verification suites behind `unideform verify`.
//!
//! Every check becomes one CSV row in the predicate report format. A suite
//! passes when every check meets its expectation; negative controls (a
//! predicate that must fail) are recorded with the predicate's own verdict.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::path::PathBuf;

use clap::ValueEnum;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

use crate::deform::{
    alexander, fmt_complex, integral_deform_i, integral_deform_j, log_coordinate_phi, log_coordinate_psi, log_derivative_ratio,
    power_deform,
};
use crate::error::Result;
use crate::function::{fprime_series, AnalyticFunction};
use crate::phase::{arguments_on_ray, unwrap_arg_along_ray};
use crate::predicates::{
    argument_profile, boundedness_probe, default_probe_radii, goodman_check, is_convex, is_locally_univalent, is_spirallike,
    is_strongly_spirallike, is_univalent_numeric, lambda_grid, spirallike_for_some_lambda, Growth, PredicateReport, SampleGrid,
    Verdict, CSV_HEADER, DEFAULT_MARGIN,
};
use crate::region::{
    closed_form_exponent_region, closed_form_variability, complement_of_t_image, hausdorff_to_samples, mobius_t, mobius_t_inv,
    sampled_exponent_region, ClassSpec, Containment, ExponentRegion, ExtPoint, RasterSpec,
};
use crate::series::PowerSeries;
use crate::zoo::{from_log_ratio, make_named, RatioOf, ZooSpec};

/// Every public operation the suites are expected to exercise.
pub const OPERATIONS: &[&str] = &[
    "series_mul",
    "series_diff_int",
    "series_log",
    "series_exp",
    "series_pow",
    "evaluate",
    "unwrap_arg_along_ray",
    "power_deform",
    "alexander",
    "integral_deform_I",
    "integral_deform_J",
    "log_coordinate_psi",
    "log_coordinate_phi",
    "log_derivative_ratio",
    "make_named",
    "from_log_ratio",
    "mobius_T",
    "closed_form_variability",
    "closed_form_exponent_region",
    "complement_of_T_image",
    "region_contains",
    "scale_region",
    "sampled_exponent_region",
    "is_locally_univalent",
    "is_spirallike",
    "is_strongly_spirallike",
    "is_convex",
    "is_univalent_numeric",
    "goodman_check",
    "boundedness_probe",
    "cmd_verify",
    "cmd_region",
    "cmd_deform",
    "cmd_probe",
];

/// Functions used by the operator suite.
pub const ZOO: [ZooSpec; 7] = [
    ZooSpec::Identity,
    ZooSpec::Koebe,
    ZooSpec::HalfPlane,
    ZooSpec::StarlikeOrder { alpha: 0.25 },
    ZooSpec::SpiralKoebe { lambda: 0.5 },
    ZooSpec::StronglyStarlike { alpha: 0.5 },
    ZooSpec::StronglySpirallike { lambda: 0.3, alpha: 0.6 },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Operators,
    Regions,
    Theorem12,
    Theorem13,
    Goodman,
    All,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Operators => "operators",
            Suite::Regions => "regions",
            Suite::Theorem12 => "theorem12",
            Suite::Theorem13 => "theorem13",
            Suite::Goodman => "goodman",
            Suite::All => "all",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Format {
    Svg,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub order: usize,
    pub seed: u64,
    /// cap on the outermost grid radius
    pub r_max: Option<f64>,
    pub angles: usize,
    pub out: PathBuf,
    pub formats: Vec<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            order: crate::series::DEFAULT_ORDER,
            seed: 0,
            r_max: None,
            angles: crate::grid::DEFAULT_ANGLES,
            out: PathBuf::from("."),
            formats: vec![Format::Svg, Format::Csv, Format::Json],
        }
    }
}

impl RunConfig {
    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }

    /// Standard grid for `f`, honouring the radius cap and angle count.
    pub fn grid(&self, f: &AnalyticFunction) -> SampleGrid {
        let r = self.r_max.map_or(f.max_radius(), |m| m.min(f.max_radius()));
        SampleGrid::standard_to(r, self.angles)
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOutcome {
    /// CSV rows without the header
    pub rows: Vec<String>,
    pub failures: Vec<String>,
    /// one line per suite: name, checks, failures
    pub summary: Vec<String>,
    pub coverage: BTreeSet<&'static str>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn csv(&self) -> String {
        let mut s = String::with_capacity(64 * (self.rows.len() + 1));
        s.push_str(CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            s.push_str(r);
            s.push('\n');
        }
        s
    }

    pub fn summary_text(&self) -> String {
        let mut s = String::new();
        for line in &self.summary {
            s.push_str(line);
            s.push('\n');
        }
        for f in &self.failures {
            s.push_str("FAILED ");
            s.push_str(f);
            s.push('\n');
        }
        s.push_str(if self.passed() { "result: pass\n" } else { "result: fail\n" });
        s
    }

    pub fn json(&self) -> serde_json::Value {
        serde_json::json!({
            "summary": self.summary,
            "failures": self.failures,
            "checks": self.rows.len(),
            "coverage": self.coverage.iter().collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    out: VerifyOutcome,
    checks: usize,
    failed: usize,
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn fmt_num(x: f64) -> String {
    format!("{x:.6}").trim_end_matches('0').trim_end_matches('.').to_string()
}

fn fmt_c(c: Complex64) -> String {
    fmt_complex(c64((c.re * 1e9).round() / 1e9, (c.im * 1e9).round() / 1e9))
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a RunConfig) -> Self {
        Self { cfg, out: VerifyOutcome::default(), checks: 0, failed: 0 }
    }

    fn hit(&mut self, ops: &[&'static str]) {
        self.out.coverage.extend(ops.iter().copied());
    }

    #[allow(clippy::too_many_arguments)]
    fn row(&mut self, check: &str, label: &str, param: &str, verdict: Verdict, margin: f64, witness: Option<Complex64>, ok: bool, detail: &str) {
        let rep = PredicateReport {
            predicate: "",
            verdict,
            margin,
            witness: witness.map(|z| crate::predicates::Witness { z, value: z }),
            scope: 0.0,
            note: None,
        };
        let row = rep.csv_row(label, param);
        // swap in the check name for the empty predicate column
        self.out.rows.push(format!("{check}{row}"));
        self.checks += 1;
        if !ok {
            self.failed += 1;
            let w = witness.map(|z| format!(" witness z={}", fmt_complex(z))).unwrap_or_default();
            let d = if detail.is_empty() { String::new() } else { format!(" ({detail})") };
            self.out.failures.push(format!("{check} {label} {param}: {verdict} margin={margin:.3e}{w}{d}"));
        }
    }

    /// Error-versus-tolerance check.
    fn within(&mut self, check: &str, label: &str, param: &str, err: f64, tol: f64) -> bool {
        let ok = err <= tol;
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        self.row(check, label, param, verdict, tol - err, None, ok, &format!("error {err:.3e} > {tol:.0e}"));
        ok
    }

    /// Like [`Ctx::within`], with the tolerance widened to the rounding floor
    /// `COND_FACTOR * eps * scale` of an identity whose intermediate series
    /// have coefficients up to `scale`.
    fn within_scaled(&mut self, check: &str, label: &str, param: &str, err: f64, tol: f64, scale: f64) -> bool {
        let floor = COND_FACTOR * f64::EPSILON * scale;
        self.within(check, label, param, err, tol.max(floor))
    }

    /// A predicate report that must have the expected verdict.
    fn expect(&mut self, check: &str, label: &str, param: &str, rep: &PredicateReport, expected: Verdict) -> bool {
        let ok = rep.verdict == expected;
        let detail = format!("expected {expected}{}", rep.note.as_ref().map(|n| format!("; {n}")).unwrap_or_default());
        self.row(check, label, param, rep.verdict, rep.margin, rep.witness.map(|w| w.z), ok, &detail);
        ok
    }

    fn require(&mut self, check: &str, label: &str, param: &str, ok: bool, margin: f64, detail: &str) -> bool {
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        self.row(check, label, param, verdict, margin, None, ok, detail);
        ok
    }

    fn close_suite(&mut self, name: &str) {
        self.out.summary.push(format!("suite {name}: {} checks, {} failed", self.checks, self.failed));
        self.checks = 0;
        self.failed = 0;
    }
}

/// Runs a suite (or all of them) and collects rows, failures and coverage.
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<VerifyOutcome> {
    let mut ctx = Ctx::new(cfg);
    ctx.hit(&["cmd_verify"]);
    type SuiteFn = fn(&mut Ctx) -> Result<()>;
    let run: &[(Suite, SuiteFn)] = &[
        (Suite::Operators, operators),
        (Suite::Regions, regions),
        (Suite::Theorem12, theorem12),
        (Suite::Theorem13, theorem13),
        (Suite::Goodman, goodman),
    ];
    for &(s, f) in run {
        if suite == s || suite == Suite::All {
            f(&mut ctx)?;
            ctx.close_suite(&s.to_string());
        }
    }
    if suite == Suite::All {
        commands(&mut ctx)?;
        ctx.close_suite("commands");
    }
    Ok(ctx.out)
}

fn random_c(rng: &mut ChaCha8Rng, max_modulus: f64) -> Complex64 {
    let rho = max_modulus * rng.gen::<f64>().sqrt();
    Complex64::from_polar(rho, TAU * rng.gen::<f64>())
}

/// Random `h` with `h_0 = 1` and `|h_k| <= bound`.
fn random_series(rng: &mut ChaCha8Rng, order: usize, bound: f64) -> PowerSeries {
    let mut coeffs = vec![c64(1.0, 0.0)];
    coeffs.extend((0..order).map(|_| random_c(rng, bound)));
    PowerSeries::new(coeffs).expect("finite")
}

/// Rounding-error multiplier for identities through series with large
/// coefficients (one unit per coefficient of the N = 64 truncation).
const COND_FACTOR: f64 = 64.0;

/// Conditioning of the logarithm recurrence on `s`: `max|s_k| * max|(1/s)_k|`.
fn log_condition(s: &PowerSeries) -> f64 {
    let sup = |s: &PowerSeries| s.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max);
    sup(s) * s.pow(c64(-1.0, 0.0)).map_or(f64::INFINITY, |r| sup(&r))
}

/// [`log_condition`] over the `h` series (or the `f'` series when
/// `derivative` is set) of `fs`.
fn coeff_scale(fs: &[&AnalyticFunction], derivative: bool) -> f64 {
    fs.iter()
        .map(|f| if derivative { log_condition(&fprime_series(f.h_series())) } else { log_condition(f.h_series()) })
        .fold(1.0, f64::max)
}

fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn operators(ctx: &mut Ctx) -> Result<()> {
    const N: usize = 64;
    const TOL: f64 = 1e-10;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);

    // series layer
    ctx.hit(&["series_mul", "series_diff_int", "series_log", "series_exp", "series_pow", "evaluate", "unwrap_arg_along_ray"]);
    for case in 0..100 {
        let param = format!("case={case}");
        let h = random_series(&mut rng, N, 0.5);
        let g = random_series(&mut rng, N, 0.5);
        let err = h.log()?.exp()?.max_abs_diff(&h);
        ctx.within_scaled("exp_log_roundtrip", "random", &param, err, 1e-12, log_condition(&h));
        // product rule
        let lhs = h.mul(&g).derivative();
        let rhs = h.derivative().mul(&g.with_order(N - 1)).add(&h.with_order(N - 1).mul(&g.derivative()));
        ctx.within("product_rule", "random", &param, lhs.max_rel_diff(&rhs), 1e-12);
        let err = h.antiderivative().derivative().max_abs_diff(&h);
        ctx.within("diff_int_inverse", "random", &param, err, 1e-15);
        // linearity of evaluation, and exactness on the polynomial itself
        let z = random_c(&mut rng, 0.9);
        let (a, b) = (random_c(&mut rng, 2.0), random_c(&mut rng, 2.0));
        let combo = h.scale(a).add(&g.scale(b));
        let err = rel_err(combo.evaluate(z)?, a * h.evaluate(z)? + b * g.evaluate(z)?);
        ctx.within("evaluate_linear", "random", &param, err, 1e-12);
        let direct: Complex64 = h.coeffs().iter().enumerate().map(|(k, &c)| c * z.powu(k as u32)).sum();
        ctx.within("evaluate_polynomial", "random", &param, rel_err(h.evaluate(z)?, direct), 1e-12);
        // unwrapped arguments differ from principal ones by whole turns
        let zs: Vec<Complex64> = (0..200).map(|k| z * (k as f64 / 199.0)).collect();
        let vals: Vec<Complex64> = zs.iter().map(|&w| (c64(1.0, 0.0) - w).powf(-8.0)).collect();
        let args = unwrap_arg_along_ray(&vals)?;
        let off = args
            .iter()
            .zip(&vals)
            .map(|(a, v)| {
                let k = (a - v.arg()) / TAU;
                (k - k.round()).abs()
            })
            .fold(0.0, f64::max);
        ctx.within("unwrap_whole_turns", "random", &param, off, 1e-12);
    }

    // binomial power series: (1-z)^{-a} (1-z)^{-b} = (1-z)^{-(a+b)}, pow semigroup
    for case in 0..20 {
        let param = format!("case={case}");
        let (c, d) = (random_c(&mut rng, 2.0), random_c(&mut rng, 2.0));
        let k = PowerSeries::binomial(c64(2.0, 0.0), N);
        let (kc, kcd) = (k.pow(c)?, k.pow(c * d)?);
        let chained = kc.pow(d)?;
        let scale = [&k, &kc, &kcd, &chained].iter().map(|s| log_condition(s)).fold(1.0, f64::max);
        ctx.within_scaled("pow_semigroup", "koebe_h", &param, chained.max_rel_diff(&kcd), TOL, scale);
        let err = PowerSeries::binomial(c, N).mul(&PowerSeries::binomial(d, N)).max_rel_diff(&PowerSeries::binomial(c + d, N));
        ctx.within("binomial_product", "binomial", &param, err, TOL);
    }

    let pairs: Vec<(Complex64, Complex64)> = (0..100).map(|_| (random_c(&mut rng, 2.0), random_c(&mut rng, 2.0))).collect();
    ctx.hit(&[
        "make_named",
        "power_deform",
        "alexander",
        "integral_deform_I",
        "integral_deform_J",
        "log_coordinate_psi",
        "log_coordinate_phi",
        "log_derivative_ratio",
        "is_spirallike",
    ]);
    for spec in ZOO {
        let f = make_named(&spec, N)?;
        let label = f.label().to_string();
        let psi = log_coordinate_psi(&f)?;
        let phi = log_coordinate_phi(&f)?;
        let j1 = alexander(&f)?;
        ctx.require("alexander_normalized", &label, "", (j1.h_series().coeff(0) - 1.0).norm() < 1e-15, 0.0, "h_0 != 1");
        let p_series = log_derivative_ratio(&f)?;
        for (idx, &(c, d)) in pairs.iter().enumerate() {
            let param = format!("c={};c'={}", fmt_c(c), fmt_c(d));
            let kc = power_deform(&f, c)?;
            let (kcd, k_cd) = (power_deform(&kc, d)?, power_deform(&f, c * d)?);
            let scale = coeff_scale(&[&kc, &kcd, &k_cd], false);
            ctx.within_scaled("K_semigroup", &label, &param, kcd.h_series().max_rel_diff(k_cd.h_series()), TOL, scale);
            let ic = integral_deform_i(&f, c)?;
            let (icd, i_cd) = (integral_deform_i(&ic, d)?, integral_deform_i(&f, c * d)?);
            let scale = coeff_scale(&[&f, &ic, &icd, &i_cd], true);
            ctx.within_scaled("I_semigroup", &label, &param, icd.h_series().max_rel_diff(i_cd.h_series()), TOL, scale);
            let jc = integral_deform_j(&f, c)?;
            let ij = integral_deform_i(&j1, c)?;
            let scale = coeff_scale(&[&j1, &ij, &jc], true);
            ctx.within_scaled("J_eq_I_J1", &label, &param, ij.h_series().max_rel_diff(jc.h_series()), TOL, scale);
            let jk = alexander(&kc)?;
            let scale = coeff_scale(&[&kc, &jk, &jc], false);
            ctx.within_scaled("J_eq_J1_K", &label, &param, jk.h_series().max_rel_diff(jc.h_series()), TOL, scale);
            let scale = coeff_scale(&[&kc], false);
            let err = log_coordinate_psi(&kc)?.max_rel_diff(&psi.scale(c));
            ctx.within_scaled("psi_linear_K", &label, &param, err, TOL, scale);
            let scale = coeff_scale(&[&ic], true);
            let err = log_coordinate_phi(&ic)?.max_rel_diff(&phi.scale(c));
            ctx.within_scaled("phi_linear_I", &label, &param, err, TOL, scale);

            // z f'/f of the deformation from its own series against the
            // transported ratio of f
            let pc_series = log_derivative_ratio(&kc)?.series;
            let mut err: f64 = 0.0;
            for k in 0..8 {
                let z = Complex64::from_polar(if k % 2 == 0 { 0.3 } else { 0.55 }, TAU * (k as f64 + 0.1 * idx as f64) / 8.0);
                let transported = 1.0 - c + c * p_series.eval(z)?;
                err = err.max(rel_err(pc_series.evaluate(z)?, transported));
                err = err.max(rel_err(kc.ratio_at(z)?, transported));
            }
            ctx.within("ratio_transport", &label, &param, err, TOL);

            if idx < 3 {
                // spirallike margin through both computation paths
                let g = SampleGrid::standard_to(f.max_radius(), 64);
                let lambda = (c.arg() * 0.5).clamp(-1.2, 1.2);
                let m1 = is_spirallike(&kc, lambda, &g, DEFAULT_MARGIN)?.margin;
                let rot = Complex64::from_polar(1.0, -lambda);
                let mut m2 = f64::INFINITY;
                for z in g.points() {
                    m2 = m2.min((rot * (1.0 - c + c * f.ratio_at(z)?)).re);
                }
                ctx.within("spirallike_margin_transport", &label, &format!("{param};lambda={}", fmt_num(lambda)), (m1 - m2).abs(), TOL);
            }
        }
    }

    // named extremals as deformations of the Koebe function
    let koebe = make_named(&ZooSpec::Koebe, N)?;
    for alpha in [0.0, 0.25, 0.5, 0.75] {
        let direct = make_named(&ZooSpec::StarlikeOrder { alpha }, N)?;
        let err = power_deform(&koebe, c64(1.0 - alpha, 0.0))?.h_series().max_rel_diff(direct.h_series());
        ctx.within("starlike_order_is_K", direct.label(), &format!("alpha={alpha}"), err, 1e-12);
    }
    for lambda in [-1.2, -0.5, 0.3, 1.0] {
        let direct = make_named(&ZooSpec::SpiralKoebe { lambda }, N)?;
        let b = Complex64::from_polar(f64::cos(lambda), lambda);
        let err = power_deform(&koebe, b)?.h_series().max_rel_diff(direct.h_series());
        ctx.within("spiral_koebe_is_K", direct.label(), &format!("lambda={lambda}"), err, 1e-12);
    }

    // rebuilding each function from its own z f'/f
    ctx.hit(&["from_log_ratio"]);
    for spec in ZOO {
        let f = make_named(&spec, N)?;
        let label = f.label().to_string();
        let g = from_log_ratio(Arc::new(RatioOf(f.clone())), N, format!("rebuilt[{label}]"))?;
        ctx.within("rebuild_series", &label, "", g.h_series().max_rel_diff(f.h_series()), 1e-10);
        let grid = ctx.cfg.grid(&f);
        let p_g = log_derivative_ratio(&g)?;
        let mut err: f64 = 0.0;
        for z in grid.points() {
            err = err.max(rel_err(p_g.eval(z)?, f.ratio_at(z)?));
        }
        ctx.within("rebuild_ratio", &label, "", err, 1e-9);
        let coarse = SampleGrid::standard_to(grid.max_radius().min(0.99), 16);
        let mut err: f64 = 0.0;
        for z in coarse.points() {
            err = err.max(rel_err(g.log_ratio_at(z)?, f.log_ratio_at(z)?));
        }
        ctx.within("rebuild_log_ratio", &label, "", err, 1e-9);
    }
    Ok(())
}

fn class_grid() -> Vec<ClassSpec> {
    let alphas: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    let lambdas: Vec<f64> = (-12..=12).map(|k| k as f64 / 10.0).collect();
    let mut out = vec![ClassSpec::Univalent, ClassSpec::CloseToConvex, ClassSpec::Starlike, ClassSpec::Convex, ClassSpec::SpirallikeAll];
    out.extend(alphas.iter().map(|&alpha| ClassSpec::StarlikeOrder { alpha }));
    out.extend(lambdas.iter().map(|&lambda| ClassSpec::Spirallike { lambda }));
    out.extend(alphas.iter().map(|&alpha| ClassSpec::StronglyStarlike { alpha }));
    for &alpha in &alphas {
        for &lambda in &lambdas {
            if lambda.abs() < FRAC_PI_2 * alpha {
                out.push(ClassSpec::StronglySpirallike { lambda, alpha });
            }
        }
    }
    out
}

fn regions(ctx: &mut Ctx) -> Result<()> {
    ctx.hit(&[
        "mobius_T",
        "closed_form_variability",
        "closed_form_exponent_region",
        "complement_of_T_image",
        "region_contains",
        "scale_region",
        "sampled_exponent_region",
    ]);
    let t = |w: Complex64| match mobius_t(ExtPoint::Finite(w)) {
        ExtPoint::Finite(c) => c,
        ExtPoint::Infinity => c64(f64::INFINITY, 0.0),
    };
    ctx.require("mobius_T", "T", "w=0", t(c64(0.0, 0.0)) == c64(1.0, 0.0), 0.0, "");
    ctx.require("mobius_T", "T", "w=-1", t(c64(-1.0, 0.0)) == c64(0.5, 0.0), 0.0, "");
    ctx.require("mobius_T", "T", "w=1", mobius_t(ExtPoint::Finite(c64(1.0, 0.0))) == ExtPoint::Infinity, 0.0, "");
    ctx.require("mobius_T", "T", "w=inf", mobius_t(ExtPoint::Infinity) == ExtPoint::Finite(c64(0.0, 0.0)), 0.0, "");
    let w = c64(0.3, -1.7);
    let back = match mobius_t_inv(mobius_t(ExtPoint::Finite(w))) {
        ExtPoint::Finite(v) => (v - w).norm(),
        ExtPoint::Infinity => f64::INFINITY,
    };
    ctx.within("mobius_T_inverse", "T", "w=0.3-1.7i", back, 1e-15);

    let zero_one = [c64(0.0, 0.0), c64(1.0, 0.0)];
    for cls in class_grid() {
        let label = cls.to_string();
        let closed = closed_form_exponent_region(&cls)?;
        let rebuilt = complement_of_t_image(&closed_form_variability(&cls)?)?;
        ctx.within("complement_matches_closed_form", &label, "", rebuilt.component_error(&closed), 1e-12);
        ctx.require("region_bounded", &label, "", closed.is_bounded(), closed.extent(), "");
        let has = zero_one.iter().all(|&p| closed.contains(p, 1e-9) != Containment::Outside);
        ctx.require("contains_0_and_1", &label, "", has, 0.0, "");
        if let ClassSpec::StronglySpirallike { lambda, alpha } = cls {
            let shift = PI * (1.0 - alpha) / 2.0;
            let mut union = closed_form_exponent_region(&ClassSpec::Spirallike { lambda: lambda + shift })?;
            union.disks.extend(closed_form_exponent_region(&ClassSpec::Spirallike { lambda: lambda - shift })?.disks);
            ctx.within("sector_region_is_union", &label, "", closed.component_error(&union), 1e-12);
        }
    }

    // monotonicity: a smaller class has a larger exponent region
    let disk_of = |cls: ClassSpec| closed_form_exponent_region(&cls).map(|r| r.disks[0]);
    let (k, s) = (disk_of(ClassSpec::Convex)?, disk_of(ClassSpec::Starlike)?);
    ctx.require("region_K_contains_S*", "K", "", k.contains_disk(&s, 1e-12), 0.0, "");
    let alphas: Vec<f64> = (0..=9).map(|k| k as f64 / 10.0).collect();
    for w in alphas.windows(2) {
        let (lo, hi) = (disk_of(ClassSpec::StarlikeOrder { alpha: w[0] })?, disk_of(ClassSpec::StarlikeOrder { alpha: w[1] })?);
        ctx.require("region_S*_alpha_increasing", "S*(alpha)", &format!("{}<{}", w[0], w[1]), hi.contains_disk(&lo, 1e-12), 0.0, "");
    }

    // scaling by the deformation exponent of the extremal
    let base = closed_form_exponent_region(&ClassSpec::Starlike)?;
    for &alpha in &alphas {
        let scaled = base.scale(c64(1.0 / (1.0 - alpha), 0.0))?;
        let direct = closed_form_exponent_region(&ClassSpec::StarlikeOrder { alpha })?;
        ctx.within("scale_S*_alpha", "S*", &format!("alpha={alpha}"), scaled.component_error(&direct), 1e-12);
    }
    for k in -12..=12 {
        let lambda = k as f64 / 10.0;
        let scaled = base.scale(c64(1.0, -lambda.tan()))?;
        let direct = closed_form_exponent_region(&ClassSpec::Spirallike { lambda })?;
        ctx.within("scale_Sp_lambda", "S*", &format!("lambda={lambda}"), scaled.component_error(&direct), 1e-12);
    }
    let half = ExponentRegion::disk(c64(0.5, 0.0), 0.5);
    for (c, want) in [(c64(0.5, 0.0), Containment::Inside), (c64(1.0, 0.0), Containment::Boundary), (c64(1.1, 0.0), Containment::Outside)] {
        ctx.require("region_contains", "D(1/2,1/2)", &format!("c={}", fmt_c(c)), half.contains(c, 1e-12) == want, 0.0, "");
    }

    // sampled regions
    let koebe = make_named(&ZooSpec::Koebe, ctx.cfg.order)?;
    let grid = SampleGrid::standard_to(ctx.cfg.grid(&koebe).max_radius(), ctx.cfg.angles.max(2048));
    let sampled = sampled_exponent_region(&koebe, &grid, &RasterSpec::default())?;
    let circle = half.boundary_samples(8192);
    let d = hausdorff_to_samples(&sampled.boundary, &circle);
    ctx.within("sampled_koebe_hausdorff", "koebe", &format!("r={}", grid.max_radius()), d, 0.01);
    let coarse = RasterSpec { resolution: 150, half_width: 3.0 };
    for spec in ZOO.iter().skip(1) {
        let f = make_named(spec, ctx.cfg.order)?;
        let s = sampled_exponent_region(&f, &ctx.cfg.grid(&f), &coarse)?;
        ctx.require("sampled_region_bounded", f.label(), "", s.bounded, s.area_pixels() as f64, "estimate reaches the window edge");
    }
    Ok(())
}

/// Picks `n` entries spread evenly over `v`.
fn spread<T: Copy>(v: &[T], n: usize) -> Vec<T> {
    if v.len() <= n {
        return v.to_vec();
    }
    (0..n).map(|j| v[j * v.len() / n]).collect()
}

/// Points of `|c - a| = 0.96 |a|` on the rays `arg c = arg a + lambda`,
/// for `lambda` on the grid, with their certifying `lambda`.
fn inward_aligned(a: Complex64, lambdas: &[f64], n: usize) -> Vec<(Complex64, f64)> {
    let r = 0.96 * a.norm();
    let mut cands = Vec::new();
    for &lambda in lambdas {
        let b = a.norm() * lambda.cos();
        let disc = b * b - (a.norm_sqr() - r * r);
        if b <= 0.0 || disc <= 0.0 {
            continue;
        }
        let dir = Complex64::from_polar(1.0, a.arg() + lambda);
        for t in [b - disc.sqrt(), b + disc.sqrt()] {
            cands.push((dir * t, lambda));
        }
    }
    cands.sort_by(|x, y| (x.0 - a).arg().total_cmp(&(y.0 - a).arg()));
    spread(&cands, n)
}

/// Points of the boundary arcs of a union of disks, moved radially by
/// `factor` about each disk's own center.
fn offset_arcs(region: &ExponentRegion, factor: f64, per_disk: usize) -> Vec<Complex64> {
    let mut out = Vec::new();
    for d in &region.disks {
        for k in 0..per_disk {
            let u = Complex64::from_polar(1.0, TAU * (k as f64 + 0.5) / per_disk as f64);
            if region.contains(d.center + u * d.radius, 1e-9) == Containment::Inside {
                continue;
            }
            let p = d.center + u * (d.radius * factor);
            if factor > 1.0 && region.contains(p, 1e-9) != Containment::Outside {
                continue;
            }
            out.push(p);
        }
    }
    out
}

/// Grid `mu` for which `1 - c + c w` stays in `Re(e^{-i mu} .) > 0` for every
/// `w` in the sector `|arg w - lambda0| < pi alpha / 2`: the rotated sector
/// edges must point into the half-plane and its vertex `1 - c` must lie
/// inside. Returns the one with the largest vertex margin.
fn sector_grid_lambda(c: Complex64, lambda0: f64, alpha: f64, lambdas: &[f64]) -> Option<f64> {
    let open = PI * (1.0 - alpha) / 2.0;
    let mid = c.arg() + lambda0;
    let vertex = |mu: f64| (Complex64::from_polar(1.0, -mu) * (1.0 - c)).re;
    lambdas
        .iter()
        .copied()
        .filter(|&mu| {
            let d = (mu - mid + PI).rem_euclid(TAU) - PI;
            d.abs() <= open && vertex(mu) > 1e-3
        })
        .max_by(|&a, &b| vertex(a).total_cmp(&vertex(b)))
}

/// `lambda` on the grid for which `w` lies deepest in `Re(e^{-i lambda} w) > 0`.
fn best_lambda_for(w: Complex64, lambdas: &[f64]) -> f64 {
    let score = |l: f64| (Complex64::from_polar(1.0, -l) * w).re / w.norm();
    lambdas.iter().copied().fold(lambdas[0], |best, l| if score(l) > score(best) { l } else { best })
}

/// `K_c[f]` must fail local univalence with a polished zero of
/// `1 - c + c p_f(z)`, checked against `f`'s own ratio.
fn outward_check(ctx: &mut Ctx, f: &AnalyticFunction, c: Complex64, class_label: &str) -> Result<()> {
    let g = power_deform(f, c)?;
    let grid = ctx.cfg.grid(&g);
    let rep = is_locally_univalent(&g, &grid, DEFAULT_MARGIN)?;
    let param = format!("c={};f={}", fmt_c(c), f.label());
    let ok = ctx.expect("outward_not_locally_univalent", class_label, &param, &rep, Verdict::Fail);
    if ok {
        let residual = match rep.witness {
            Some(w) => (1.0 - c + c * f.ratio_at(w.z)?).norm(),
            None => f64::INFINITY,
        };
        ctx.within("outward_witness_residual", class_label, &param, residual, 1e-6);
    }
    Ok(())
}

fn theorem12(ctx: &mut Ctx) -> Result<()> {
    ctx.hit(&["is_locally_univalent", "is_spirallike", "is_convex", "is_strongly_spirallike", "is_univalent_numeric"]);
    let lambdas = lambda_grid(64);
    let disk_classes = [
        ClassSpec::Starlike,
        ClassSpec::StarlikeOrder { alpha: 0.25 },
        ClassSpec::StarlikeOrder { alpha: 0.5 },
        ClassSpec::Convex,
        ClassSpec::Spirallike { lambda: -0.7 },
        ClassSpec::Spirallike { lambda: 0.4 },
    ];
    let sector_classes = [
        ClassSpec::StronglyStarlike { alpha: 0.5 },
        ClassSpec::StronglySpirallike { lambda: 0.3, alpha: 0.6 },
        ClassSpec::StronglySpirallike { lambda: -0.2, alpha: 0.5 },
    ];
    for cls in disk_classes.iter().chain(&sector_classes) {
        let label = cls.to_string();
        let f = make_named(&cls.extremal().expect("extremal"), ctx.cfg.order)?;
        let region = closed_form_exponent_region(cls)?;
        let inward: Vec<Complex64> = if region.disks.len() == 1 {
            inward_aligned(region.disks[0].center, &lambdas, 32).into_iter().map(|x| x.0).collect()
        } else {
            let (lambda0, alpha) = match *cls {
                ClassSpec::StronglyStarlike { alpha } => (0.0, alpha),
                ClassSpec::StronglySpirallike { lambda, alpha } => (lambda, alpha),
                _ => unreachable!("sector classes only"),
            };
            let cands: Vec<Complex64> = offset_arcs(&region, 0.96, 4096)
                .into_iter()
                .filter(|&c| sector_grid_lambda(c, lambda0, alpha, &lambdas).is_some())
                .collect();
            spread(&cands, 32)
        };
        for c in inward {
            let g = power_deform(&f, c)?;
            let (lambda, rep) = spirallike_for_some_lambda(&g, &lambdas, &ctx.cfg.grid(&g), DEFAULT_MARGIN)?;
            let param = format!("c={};lambda={}", fmt_c(c), fmt_num(lambda));
            ctx.expect("inward_spirallike", &label, &param, &rep, Verdict::Pass);
        }
        for c in spread(&offset_arcs(&region, 1.04, 256), 32) {
            outward_check(ctx, &f, c, &label)?;
        }
    }

    // all spirallike functions: the segment [0, 1]
    let label = ClassSpec::SpirallikeAll.to_string();
    for j in 0..32 {
        let c = c64(0.02 + 0.96 * (j as f64 + 0.5) / 32.0, 0.0);
        let lambda0 = lambdas[(2 * j) % lambdas.len()];
        let f = make_named(&ZooSpec::SpiralKoebe { lambda: lambda0 }, ctx.cfg.order)?;
        let g = power_deform(&f, c)?;
        let (lambda, rep) = spirallike_for_some_lambda(&g, &lambdas, &ctx.cfg.grid(&g), DEFAULT_MARGIN)?;
        let param = format!("c={};f={};lambda={}", fmt_c(c), f.label(), fmt_num(lambda));
        ctx.expect("inward_spirallike", &label, &param, &rep, Verdict::Pass);
    }
    let segment_outward: Vec<Complex64> =
        (0..32).map(|k| TAU * (k as f64 + 0.5) / 32.0).map(|t| c64(0.5 + 0.52 * t.cos(), 0.04 * t.sin())).collect();
    // all univalent (and close-to-convex) functions: the points 0 and 1
    let point_outward: Vec<Complex64> = (0..32)
        .map(|k| {
            let center = if k < 16 { 0.0 } else { 1.0 };
            c64(center, 0.0) + Complex64::from_polar(0.04, TAU * ((k % 16) as f64 + 0.5) / 16.0)
        })
        .collect();
    for (label, points) in [(label.clone(), segment_outward), (ClassSpec::Univalent.to_string(), point_outward)] {
        for c in points {
            let lambda = best_lambda_for(1.0 - 1.0 / c, &lambdas);
            let f = make_named(&ZooSpec::SpiralKoebe { lambda }, ctx.cfg.order)?;
            outward_check(ctx, &f, c, &label)?;
        }
    }
    let koebe = make_named(&ZooSpec::Koebe, ctx.cfg.order)?;
    for c in [0.0, 1.0] {
        let g = power_deform(&koebe, c64(c, 0.0))?;
        let rep = is_univalent_numeric(&g, 0.9, 1024)?;
        ctx.expect("endpoint_univalent", "S", &format!("c={c}"), &rep, Verdict::Pass);
    }

    // convex implies starlike of order 1/2, at the half-plane map
    let l = make_named(&ZooSpec::HalfPlane, ctx.cfg.order)?;
    let grid = ctx.cfg.grid(&l);
    let rep = is_convex(&l, &grid, 0.0)?;
    ctx.expect("convex", l.label(), "", &rep, Verdict::Pass);
    let rep = is_spirallike(&l, 0.0, &grid, 0.5 - 1e-6)?;
    ctx.expect("starlike_order_half", l.label(), "margin=0.5-1e-6", &rep, Verdict::Pass);
    let rep = is_convex(&koebe, &grid, DEFAULT_MARGIN)?;
    ctx.expect("convex", koebe.label(), "", &rep, Verdict::Fail);

    // strongly spirallike = spirallike at both edge directions
    let cases = [
        (ZooSpec::StronglyStarlike { alpha: 0.5 }, 0.0, 0.5),
        (ZooSpec::StronglySpirallike { lambda: 0.3, alpha: 0.6 }, 0.3, 0.6),
        (ZooSpec::StronglyStarlike { alpha: 0.3 }, 0.0, 0.5),
        (ZooSpec::StronglyStarlike { alpha: 0.5 }, 0.2, 0.5),
        (ZooSpec::Koebe, 0.0, 0.5),
        (ZooSpec::HalfPlane, 0.0, 0.5),
    ];
    for (spec, lambda, alpha) in cases {
        let f = make_named(&spec, ctx.cfg.order)?;
        let grid = ctx.cfg.grid(&f);
        let strong = is_strongly_spirallike(&f, lambda, alpha, &grid, 0.0)?;
        let shift = PI * (1.0 - alpha) / 2.0;
        let plus = is_spirallike(&f, lambda + shift, &grid, 0.0)?;
        let minus = is_spirallike(&f, lambda - shift, &grid, 0.0)?;
        let same = strong.passed() == (plus.passed() && minus.passed()) && strong.verdict != Verdict::Inconclusive;
        let param = format!("lambda={lambda};alpha={alpha};strong={}", strong.verdict);
        ctx.require("sector_two_sided", f.label(), &param, same, strong.margin, "");
    }
    Ok(())
}

fn theorem13(ctx: &mut Ctx) -> Result<()> {
    ctx.hit(&["boundedness_probe", "is_strongly_spirallike", "is_univalent_numeric"]);
    let radii = default_probe_radii();
    for (lambda, alpha) in [(0.0, 0.5), (0.3, 0.6), (-0.5, 0.8)] {
        let f = make_named(&ZooSpec::StronglySpirallike { lambda, alpha }, ctx.cfg.order)?;
        let p = boundedness_probe(&f, &radii, ctx.cfg.angles)?;
        let m_last = *p.m.last().expect("radii");
        ctx.require("bounded_log_ratio", f.label(), &format!("growth={}", p.growth), p.growth == Growth::BoundedPlateau, m_last, "");
        let grid = ctx.cfg.grid(&f);
        let rep = is_strongly_spirallike(&f, lambda, alpha + 1e-6, &grid, 0.0)?;
        ctx.expect("strongly_spirallike", f.label(), &format!("lambda={lambda};alpha={alpha}+1e-6"), &rep, Verdict::Pass);
    }
    let koebe = make_named(&ZooSpec::Koebe, ctx.cfg.order)?;
    let p = boundedness_probe(&koebe, &radii, ctx.cfg.angles)?;
    let m_last = *p.m.last().expect("radii");
    ctx.require("growing_log_ratio", koebe.label(), &format!("growth={}", p.growth), p.growth == Growth::Growing, m_last, "");
    ctx.require(
        "koebe_growth_value",
        koebe.label(),
        &format!("M={}", fmt_num(m_last)),
        (13.0..=14.5).contains(&m_last),
        m_last - 2.0 * 1000f64.ln(),
        "",
    );
    let rep = is_strongly_spirallike(&koebe, 0.0, 0.9, &ctx.cfg.grid(&koebe), DEFAULT_MARGIN)?;
    ctx.expect("strongly_spirallike", koebe.label(), "lambda=0;alpha=0.9", &rep, Verdict::Fail);

    // negative real part of the exponent destroys univalence
    for c in [c64(-0.1, 0.0), c64(-0.1, 0.5)] {
        let g = power_deform(&koebe, c)?;
        let rep = is_univalent_numeric(&g, 0.99, 2048)?;
        ctx.expect("univalent_numeric", g.label(), "r=0.99", &rep, Verdict::Fail);
    }
    let rep = is_univalent_numeric(&koebe, 0.9, 1024)?;
    ctx.expect("univalent_numeric", koebe.label(), "r=0.9", &rep, Verdict::Pass);
    Ok(())
}

fn goodman(ctx: &mut Ctx) -> Result<()> {
    ctx.hit(&["goodman_check"]);
    let specs = [
        ZooSpec::Identity,
        ZooSpec::Koebe,
        ZooSpec::StarlikeOrder { alpha: 0.25 },
        ZooSpec::StarlikeOrder { alpha: 0.5 },
        ZooSpec::HalfPlane,
        ZooSpec::StronglyStarlike { alpha: 0.5 },
    ];
    for spec in specs {
        let f = make_named(&spec, ctx.cfg.order)?;
        let rep = goodman_check(&f, &ctx.cfg.grid(&f))?;
        ctx.expect("goodman", f.label(), "", &rep, Verdict::Pass);
    }
    let koebe = make_named(&ZooSpec::Koebe, ctx.cfg.order)?;
    let g = power_deform(&koebe, c64(2.0, 0.0))?;
    let rep = goodman_check(&g, &SampleGrid::standard_to(0.99, ctx.cfg.angles))?;
    ctx.expect("goodman", g.label(), "not starlike", &rep, Verdict::Fail);
    let profile = argument_profile(&koebe, &ctx.cfg.grid(&koebe))?;
    let worst = profile.iter().map(|&(_, arg, bound)| arg - bound).fold(f64::NEG_INFINITY, f64::max);
    ctx.require("argument_profile", koebe.label(), "", worst <= 1e-9, -worst, "");
    // unwrapped argument of f(z)/z on one ray against the closed form
    let theta = 2.0;
    let args = arguments_on_ray(|z| koebe.h_at(z), theta, &[0.5, 0.9, 0.99])?;
    let err = [0.5, 0.9, 0.99]
        .iter()
        .zip(&args)
        .map(|(&r, a)| (a + 2.0 * (c64(1.0, 0.0) - Complex64::from_polar(r, theta)).arg()).abs())
        .fold(0.0, f64::max);
    ctx.within("ray_argument", koebe.label(), "theta=2", err, 1e-12);
    Ok(())
}

/// Smoke runs of the other subcommands' artifact producers.
fn commands(ctx: &mut Ctx) -> Result<()> {
    use crate::cli::{deform_artifacts, probe_artifacts, region_artifacts, DeformOp, ProbeKind, RegionTarget};
    ctx.hit(&["cmd_region", "cmd_deform", "cmd_probe"]);
    let cfg = RunConfig { angles: ctx.cfg.angles.min(256), ..ctx.cfg.clone() };
    let run = region_artifacts(&RegionTarget::Class(ClassSpec::StronglyStarlike { alpha: 0.5 }), &cfg)?;
    let svg = run.artifacts.iter().find(|a| a.name.ends_with(".svg")).map(|a| a.contents.clone()).unwrap_or_default();
    ctx.require("cmd_region", "SS(0.5)", "", svg.contains("cx=\"0.5\" cy=\"-0.5\""), 0.0, "missing disk");
    let run = deform_artifacts("koebe", DeformOp::J1, None, &cfg)?;
    ctx.require("cmd_deform", "koebe", "op=J1", run.stdout.contains("1, 1, 1"), 0.0, "unexpected coefficients");
    let run = probe_artifacts("koebe", ProbeKind::Argument, &cfg)?;
    ctx.require("cmd_probe", "koebe", "kind=argument", run.success, 0.0, "");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inward_points_are_aligned_and_inside() {
        let lambdas = lambda_grid(64);
        for a in [c64(0.5, 0.0), c64(1.0, 0.0), c64(0.5, -0.5 * 0.4f64.tan())] {
            let pts = inward_aligned(a, &lambdas, 32);
            assert_eq!(pts.len(), 32);
            for (c, lambda) in pts {
                assert!(((c - a).norm() - 0.96 * a.norm()).abs() < 1e-12);
                let arg = (c / a).arg();
                assert!((arg - lambda).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn offsets_avoid_region() {
        let r = closed_form_exponent_region(&ClassSpec::StronglyStarlike { alpha: 0.5 }).unwrap();
        let out = offset_arcs(&r, 1.04, 64);
        assert!(!out.is_empty());
        assert!(out.iter().all(|&c| r.contains(c, 1e-9) == Containment::Outside));
        let inn = offset_arcs(&r, 0.96, 64);
        assert!(inn.iter().all(|&c| r.contains(c, 1e-9) == Containment::Inside));
    }
}
