//! Command-line front end: `verify`, `region`, `deform` and `probe`.
//!
//! Each command is split into a producer returning in-memory artifacts (so
//! tests and the verify suite can call it) and the file writing done by
//! [`run`].

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::deform::{alexander, integral_deform_i, integral_deform_j, power_deform};
use crate::error::{Error, Result};
use crate::function::AnalyticFunction;
use crate::predicates::{argument_profile, boundedness_probe, default_probe_radii, Growth};
use crate::region::svg::{closed_form_csv, render_svg, sampled_csv};
use crate::region::{
    closed_form_exponent_region, closed_form_variability, complement_of_t_image, hausdorff_to_samples, sampled_exponent_region,
    ClassSpec, RasterSpec,
};
use crate::series::PowerSeries;
use crate::verify::{run_suite, Format, RunConfig, Suite};
use crate::zoo::{make_named, ZooSpec};

#[derive(Debug, Parser)]
#[command(name = "unideform", version, about = "Power deformations of univalent functions: checks, regions and probes")]
pub struct Cli {
    /// Output directory (UNIDEFORM_OUT takes precedence)
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Seed for the randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Series truncation order
    #[arg(long, global = true, default_value_t = crate::series::DEFAULT_ORDER)]
    pub order: usize,
    /// Largest grid radius
    #[arg(long, global = true)]
    pub rmax: Option<f64>,
    /// Angles per grid circle
    #[arg(long, global = true, default_value_t = crate::grid::DEFAULT_ANGLES)]
    pub angles: usize,
    /// Output formats; all of them when omitted
    #[arg(long = "format", global = true, value_enum)]
    pub formats: Vec<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Draw an exponent region for a class or a function
    #[command(group(ArgGroup::new("target").required(true).args(["class", "function"])))]
    Region {
        /// S, C, K, S*, SS or Sp
        #[arg(long)]
        class: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        /// Zoo name or @file.json
        #[arg(long = "fn")]
        function: Option<String>,
    },
    /// Apply a deformation and dump the series
    Deform {
        #[arg(long = "fn")]
        function: String,
        #[arg(long, value_enum)]
        op: DeformOp,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex_arg)]
        c: Option<Complex64>,
    },
    /// Profile growth or argument of f(z)/z
    Probe {
        #[arg(long = "fn")]
        function: String,
        #[arg(long, value_enum)]
        kind: ProbeKind,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DeformOp {
    #[value(name = "K")]
    K,
    #[value(name = "I")]
    I,
    #[value(name = "J")]
    J,
    #[value(name = "J1")]
    J1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProbeKind {
    Boundedness,
    Argument,
}

impl ProbeKind {
    fn name(self) -> &'static str {
        match self {
            ProbeKind::Boundedness => "boundedness",
            ProbeKind::Argument => "argument",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RegionTarget {
    Class(ClassSpec),
    Function(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

impl Artifact {
    fn new(name: String, contents: String) -> Self {
        Self { name, contents }
    }

    fn format(&self) -> Option<Format> {
        match Path::new(&self.name).extension()?.to_str()? {
            "svg" => Some(Format::Svg),
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

/// Result of one command before anything touches the disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandRun {
    pub artifacts: Vec<Artifact>,
    pub stdout: String,
    pub success: bool,
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, optionally in parentheses.
pub fn parse_complex(input: &str) -> Result<Complex64> {
    let err = || Error::Parse { what: "complex number", input: input.to_string() };
    let mut s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.starts_with('(') && s.ends_with(')') {
        s = s[1..s.len() - 1].to_string();
    }
    if s.is_empty() {
        return Err(err());
    }
    let real = |t: &str| -> Result<f64> {
        // the float parser would also take "inf" and "nan"
        if t.is_empty() || !t.chars().all(|c| c.is_ascii_digit() || "+-.eE".contains(c)) {
            return Err(err());
        }
        t.parse::<f64>().map_err(|_| err())
    };
    let imag = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => real(t),
        }
    };
    let bytes = s.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let value = match (s.strip_suffix('i'), split) {
        (Some(body), Some(k)) => Complex64::new(real(&s[..k])?, imag(&body[k..])?),
        (Some(body), None) => Complex64::new(0.0, imag(body)?),
        (None, None) => Complex64::new(real(&s)?, 0.0),
        (None, Some(_)) => return Err(err()),
    };
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::InvalidParameter(format!("non-finite complex value {input:?}")));
    }
    Ok(value)
}

fn parse_complex_arg(s: &str) -> std::result::Result<Complex64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

/// A zoo name (e.g. `starlike-order:0.25`) or `@path` to a JSON series.
pub fn parse_function(spec: &str, order: usize) -> Result<AnalyticFunction> {
    if let Some(path) = spec.strip_prefix('@') {
        let path = PathBuf::from(path);
        let text = fs::read_to_string(&path).map_err(|source| Error::Io { path: path.clone(), source })?;
        let label = path.file_stem().map_or_else(|| "series".into(), |s| s.to_string_lossy().into_owned());
        return AnalyticFunction::new(PowerSeries::from_json(&text)?, label);
    }
    make_named(&spec.parse::<ZooSpec>()?, order)
}

/// File-name fragment: runs of anything but letters, digits and dots become
/// one hyphen.
pub fn slug(s: &str) -> String {
    let mut out = String::new();
    for ch in s.chars() {
        match ch {
            c if c.is_ascii_alphanumeric() || c == '.' => out.push(c),
            '*' => out.push_str("star"),
            _ if !out.ends_with('-') => out.push('-'),
            _ => {}
        }
    }
    out.trim_matches('-').to_string()
}

fn function_slug(spec: &str) -> String {
    match spec.strip_prefix('@') {
        Some(p) => slug(&Path::new(p).file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()),
        None => slug(spec),
    }
}

/// Coefficient rounded to 12 decimals for display.
fn fmt_coeff(c: Complex64) -> String {
    let r = |x: f64| {
        let v = (x * 1e12).round() / 1e12;
        if v == 0.0 {
            0.0
        } else {
            v
        }
    };
    crate::deform::fmt_complex(Complex64::new(r(c.re), r(c.im)))
}

/// Class whose extremal function is `spec`.
fn class_of_extremal(spec: &ZooSpec) -> Option<ClassSpec> {
    Some(match *spec {
        ZooSpec::Identity => return None,
        ZooSpec::Koebe => ClassSpec::Starlike,
        ZooSpec::HalfPlane => ClassSpec::Convex,
        ZooSpec::StarlikeOrder { alpha } => ClassSpec::StarlikeOrder { alpha },
        ZooSpec::SpiralKoebe { lambda } => ClassSpec::Spirallike { lambda },
        ZooSpec::StronglyStarlike { alpha } => ClassSpec::StronglyStarlike { alpha },
        ZooSpec::StronglySpirallike { lambda, alpha } => ClassSpec::StronglySpirallike { lambda, alpha },
    })
}

fn region_json(r: &crate::region::ExponentRegion) -> serde_json::Value {
    let pair = |c: Complex64| serde_json::json!([c.re, c.im]);
    serde_json::json!({
        "disks": r.disks.iter().map(|d| serde_json::json!({"center": pair(d.center), "radius": d.radius})).collect::<Vec<_>>(),
        "segments": r.segments.iter().map(|&(a, b)| serde_json::json!([pair(a), pair(b)])).collect::<Vec<_>>(),
        "points": r.points.iter().map(|&p| pair(p)).collect::<Vec<_>>(),
    })
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

pub fn region_artifacts(target: &RegionTarget, cfg: &RunConfig) -> Result<CommandRun> {
    let mut stdout = String::new();
    let mut success = true;
    let mut artifacts = Vec::new();
    match target {
        RegionTarget::Class(cls) => {
            cls.validate()?;
            let name = format!("region-{}", slug(&cls.to_string()));
            let closed = closed_form_exponent_region(cls)?;
            let rebuilt = closed_form_variability(cls).and_then(|v| complement_of_t_image(&v));
            let _ = writeln!(stdout, "class {cls}: {} disk(s), {} segment(s), {} point(s)", closed.disks.len(), closed.segments.len(), closed.points.len());
            for d in &closed.disks {
                let _ = writeln!(stdout, "  disk center {} radius {}", fmt_coeff(d.center), fmt_coeff(Complex64::new(d.radius, 0.0)));
            }
            for (a, b) in &closed.segments {
                let _ = writeln!(stdout, "  segment [{}, {}]", fmt_coeff(*a), fmt_coeff(*b));
            }
            for p in &closed.points {
                let _ = writeln!(stdout, "  point {}", fmt_coeff(*p));
            }
            let mut json = serde_json::json!({ "class": cls.to_string(), "closed_form": region_json(&closed) });
            let overlay = match rebuilt {
                Ok(r) => {
                    let err = r.component_error(&closed);
                    let _ = writeln!(stdout, "reconstruction from the variability region: max component error {err:.3e}");
                    json["reconstruction"] = region_json(&r);
                    json["reconstruction_error"] = serde_json::json!(err);
                    Some(r)
                }
                Err(e) => {
                    let _ = writeln!(stdout, "reconstruction obstructed: {e}");
                    json["obstruction"] = serde_json::json!(e.to_string());
                    success = false;
                    None
                }
            };
            artifacts.push(Artifact::new(format!("{name}.svg"), render_svg(Some(&closed), overlay.as_ref(), None)));
            artifacts.push(Artifact::new(format!("{name}.csv"), closed_form_csv(&closed, 121, 3.0, 1e-9)));
            artifacts.push(Artifact::new(format!("{name}.json"), pretty(&json)));
        }
        RegionTarget::Function(spec) => {
            let f = parse_function(spec, cfg.order)?;
            let name = format!("region-{}", function_slug(spec));
            let grid = cfg.grid(&f);
            let sampled = sampled_exponent_region(&f, &grid, &RasterSpec::default())?;
            let overlay_cls = spec.parse::<ZooSpec>().ok().as_ref().and_then(class_of_extremal);
            let overlay = overlay_cls.as_ref().map(closed_form_exponent_region).transpose()?;
            let _ = writeln!(
                stdout,
                "function {}: sampled at r <= {} with {} angles; {} pixels inside, {}",
                f.label(),
                grid.max_radius(),
                grid.angles,
                sampled.area_pixels(),
                if sampled.bounded { "bounded" } else { "reaches the window edge" }
            );
            let mut json = serde_json::json!({
                "function": f.label(),
                "grid_radius": grid.max_radius(),
                "angles": grid.angles,
                "bounded": sampled.bounded,
                "area_pixels": sampled.area_pixels(),
                "boundary_vertices": sampled.boundary.iter().map(Vec::len).sum::<usize>(),
            });
            if let (Some(cls), Some(r)) = (&overlay_cls, &overlay) {
                let d = hausdorff_to_samples(&sampled.boundary, &r.boundary_samples(8192));
                let _ = writeln!(stdout, "overlay {cls}: Hausdorff distance {d:.4e}");
                json["overlay"] = serde_json::json!({ "class": cls.to_string(), "region": region_json(r), "hausdorff": d });
            }
            artifacts.push(Artifact::new(format!("{name}.svg"), render_svg(overlay.as_ref(), None, Some(&sampled))));
            artifacts.push(Artifact::new(format!("{name}.csv"), sampled_csv(&sampled)));
            artifacts.push(Artifact::new(format!("{name}.json"), pretty(&json)));
        }
    }
    Ok(CommandRun { artifacts, stdout, success })
}

pub fn deform_artifacts(spec: &str, op: DeformOp, c: Option<Complex64>, cfg: &RunConfig) -> Result<CommandRun> {
    let f = parse_function(spec, cfg.order)?;
    let need_c = || c.ok_or_else(|| Error::InvalidParameter(format!("--op {op:?} needs --c")));
    let (g, tag) = match op {
        DeformOp::K => {
            let c = need_c()?;
            (power_deform(&f, c)?, format!("K-{}", slug(&crate::deform::fmt_complex(c))))
        }
        DeformOp::I => {
            let c = need_c()?;
            (integral_deform_i(&f, c)?, format!("I-{}", slug(&crate::deform::fmt_complex(c))))
        }
        DeformOp::J => {
            let c = need_c()?;
            (integral_deform_j(&f, c)?, format!("J-{}", slug(&crate::deform::fmt_complex(c))))
        }
        DeformOp::J1 => (alexander(&f)?, "J1".to_string()),
    };
    let coeffs: Vec<String> = g.f_coeffs().iter().skip(1).take(10).map(|&a| fmt_coeff(a)).collect();
    let stdout = format!("{}\ncoeffs: [{}, ...]\n", g.label(), coeffs.join(", "));
    let name = format!("deform-{}-{tag}.json", function_slug(spec));
    let mut json = g.h_series().to_json();
    json.push('\n');
    Ok(CommandRun { artifacts: vec![Artifact::new(name, json)], stdout, success: true })
}

pub fn probe_artifacts(spec: &str, kind: ProbeKind, cfg: &RunConfig) -> Result<CommandRun> {
    let f = parse_function(spec, cfg.order)?;
    let name = format!("probe-{}-{}.csv", kind.name(), function_slug(spec));
    let mut csv = String::new();
    let mut stdout = String::new();
    let success;
    match kind {
        ProbeKind::Boundedness => {
            let mut radii = default_probe_radii();
            if let Some(r) = cfg.r_max {
                radii.retain(|&x| x <= r);
            }
            let p = boundedness_probe(&f, &radii, cfg.angles)?;
            csv.push_str("r,M\n");
            for (r, m) in p.radii.iter().zip(&p.m) {
                let _ = writeln!(csv, "{r:.12e},{m:.12e}");
                let _ = writeln!(stdout, "r = {r:.6}  M = {m:.6}");
            }
            let _ = writeln!(stdout, "{}", p.growth);
            success = p.growth != Growth::Inconclusive;
        }
        ProbeKind::Argument => {
            let grid = cfg.grid(&f);
            let profile = argument_profile(&f, &grid)?;
            csv.push_str("r,max_abs_arg,bound,excess\n");
            let mut worst = f64::NEG_INFINITY;
            for &(r, a, b) in &profile {
                let _ = writeln!(csv, "{r:.12e},{a:.12e},{b:.12e},{:.12e}", a - b);
                worst = worst.max(a - b);
            }
            success = worst <= 1e-9;
            let _ = writeln!(
                stdout,
                "max over r <= {} of max|Arg f/z| - 2 arcsin r = {worst:.6e} ({})",
                grid.max_radius(),
                if success { "within bound" } else { "bound exceeded" }
            );
        }
    }
    Ok(CommandRun { artifacts: vec![Artifact::new(name, csv)], stdout, success })
}

pub fn verify_artifacts(suite: Suite, cfg: &RunConfig) -> Result<CommandRun> {
    let outcome = run_suite(suite, cfg)?;
    let name = format!("verify-{suite}");
    let summary = outcome.summary_text();
    Ok(CommandRun {
        artifacts: vec![
            Artifact::new(format!("{name}.csv"), outcome.csv()),
            Artifact::new(format!("{name}.json"), pretty(&outcome.json())),
            Artifact::new(format!("{name}.txt"), summary.clone()),
        ],
        stdout: summary,
        success: outcome.passed(),
    })
}

/// Writes each artifact through a temporary file and a rename. Artifacts of
/// an unselected format are skipped; other extensions are always written.
pub fn write_artifacts(dir: &Path, artifacts: &[Artifact], cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| Error::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    let mut written = Vec::new();
    for a in artifacts {
        if a.format().is_some_and(|f| !cfg.wants(f)) {
            continue;
        }
        let path = dir.join(&a.name);
        let tmp = dir.join(format!(".{}.tmp", a.name));
        fs::write(&tmp, &a.contents).map_err(io(&tmp))?;
        fs::rename(&tmp, &path).map_err(io(&path))?;
        written.push(path);
    }
    Ok(written)
}

fn config(cli: &Cli) -> RunConfig {
    let out = std::env::var_os("UNIDEFORM_OUT").filter(|v| !v.is_empty()).map_or_else(|| cli.out.clone(), PathBuf::from);
    let formats = if cli.formats.is_empty() { vec![Format::Svg, Format::Csv, Format::Json] } else { cli.formats.clone() };
    RunConfig { order: cli.order, seed: cli.seed, r_max: cli.rmax, angles: cli.angles, out, formats }
}

fn execute(cli: &Cli, cfg: &RunConfig) -> Result<CommandRun> {
    if cfg.order == 0 || cfg.angles == 0 {
        return Err(Error::InvalidParameter("--order and --angles must be positive".into()));
    }
    if let Some(r) = cfg.r_max {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::InvalidParameter(format!("--rmax must lie in (0, 1), got {r}")));
        }
    }
    match &cli.command {
        Command::Verify { suite } => verify_artifacts(*suite, cfg),
        Command::Region { class, lambda, alpha, function } => {
            let target = match (class, function) {
                (Some(name), _) => RegionTarget::Class(ClassSpec::from_parts(name, *lambda, *alpha)?),
                (None, Some(spec)) => RegionTarget::Function(spec.clone()),
                (None, None) => unreachable!("clap requires one target"),
            };
            region_artifacts(&target, cfg)
        }
        Command::Deform { function, op, c } => deform_artifacts(function, *op, *c, cfg),
        Command::Probe { function, kind } => probe_artifacts(function, *kind, cfg),
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code:
/// 0 on success, 1 when a check fails or a computation errors, 2 on usage
/// errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let cfg = config(&cli);
    let result = execute(&cli, &cfg).and_then(|run| {
        let written = write_artifacts(&cfg.out, &run.artifacts, &cfg)?;
        Ok((run, written))
    });
    match result {
        Ok((run, written)) => {
            print!("{}", run.stdout);
            for p in written {
                println!("wrote {}", p.display());
            }
            if run.success {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::InvalidParameter(_) => 2,
                _ => 1,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.5").unwrap(), c(0.5, 0.0));
        assert_eq!(parse_complex("1+0i").unwrap(), c(1.0, 0.0));
        assert_eq!(parse_complex("(-0.1+0.5i)").unwrap(), c(-0.1, 0.5));
        assert_eq!(parse_complex("2-3i").unwrap(), c(2.0, -3.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("2.5i").unwrap(), c(0.0, 2.5));
        assert_eq!(parse_complex("1e-3-2E+1i").unwrap(), c(1e-3, -20.0));
        assert_eq!(parse_complex(" 1 + 2i ").unwrap(), c(1.0, 2.0));
        for bad in ["", "1+2", "abc", "1+2j", "inf", "nan", "1++2i", "()"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
        assert!(matches!(parse_complex("1e400"), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn slugs() {
        assert_eq!(slug("SS(0.5)"), "SS-0.5");
        assert_eq!(slug("S*(0.25)"), "Sstar-0.25");
        assert_eq!(slug("strongly-spirallike:0.3,0.6"), "strongly-spirallike-0.3-0.6");
        assert_eq!(function_slug("@/tmp/my series.json"), "my-series");
    }

    #[test]
    fn deform_examples() {
        let cfg = RunConfig::default();
        let run = deform_artifacts("koebe", DeformOp::K, Some(c(0.5, 0.0)), &cfg).unwrap();
        assert!(run.stdout.contains("coeffs: [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, ...]"), "{}", run.stdout);
        let run = deform_artifacts("koebe", DeformOp::K, Some(c(1.0, 0.0)), &cfg).unwrap();
        assert!(run.stdout.contains("coeffs: [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, ...]"), "{}", run.stdout);
        assert_eq!(run.artifacts[0].name, "deform-koebe-K-1.json");
        let run = deform_artifacts("koebe", DeformOp::J1, None, &cfg).unwrap();
        assert!(run.stdout.contains("coeffs: [1, 1, 1,"), "{}", run.stdout);
        let doc = PowerSeries::from_json(&run.artifacts[0].contents).unwrap();
        assert_eq!(doc.order(), cfg.order);
        assert!(matches!(deform_artifacts("koebe", DeformOp::I, None, &cfg), Err(Error::InvalidParameter(_))));
        assert!(matches!(deform_artifacts("nope", DeformOp::J1, None, &cfg), Err(Error::Parse { .. })));
    }

    #[test]
    fn region_for_classes() {
        let cfg = RunConfig::default();
        let run = region_artifacts(&RegionTarget::Class(ClassSpec::StronglyStarlike { alpha: 0.5 }), &cfg).unwrap();
        let svg = &run.artifacts[0].contents;
        assert!(svg.contains("cx=\"0.5\" cy=\"0.5\""));
        assert!(svg.contains("cx=\"0.5\" cy=\"-0.5\""));
        let run = region_artifacts(&RegionTarget::Class(ClassSpec::SpirallikeAll), &cfg).unwrap();
        assert!(run.artifacts[0].contents.contains("<line x1=\"0\" y1=\"0\" x2=\"1\" y2=\"0\""));
        assert!(run.success);
    }
}
