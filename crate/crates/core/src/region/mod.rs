//! Variability regions of `z f'(z)/f(z)`, exponent regions of the power
//! deformation, and the Moebius map `T(w) = 1/(1-w)` linking them.
//!
//! An exponent region is stored as a union of closed disks, closed segments
//! and isolated points. Every region produced here is bounded.

mod sampled;
pub mod svg;

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::zoo::ZooSpec;

pub use sampled::{hausdorff_to_samples, sampled_exponent_region, RasterSpec, SampledRegion};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtPoint {
    Finite(Complex64),
    Infinity,
}

/// `T(w) = 1/(1-w)`, with `T(1) = inf` and `T(inf) = 0`.
pub fn mobius_t(w: ExtPoint) -> ExtPoint {
    match w {
        ExtPoint::Infinity => ExtPoint::Finite(ZERO),
        ExtPoint::Finite(w) if w == ONE => ExtPoint::Infinity,
        ExtPoint::Finite(w) => ExtPoint::Finite(ONE / (ONE - w)),
    }
}

/// `T^{-1}(c) = 1 - 1/c`.
pub fn mobius_t_inv(c: ExtPoint) -> ExtPoint {
    match c {
        ExtPoint::Infinity => ExtPoint::Finite(ONE),
        ExtPoint::Finite(c) if c == ZERO => ExtPoint::Infinity,
        ExtPoint::Finite(c) => ExtPoint::Finite(ONE - ONE / c),
    }
}

/// The classical subclasses of univalent functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassSpec {
    /// all univalent functions
    Univalent,
    /// starlike
    Starlike,
    /// starlike of order alpha, `0 <= alpha < 1`
    StarlikeOrder { alpha: f64 },
    Convex,
    CloseToConvex,
    /// lambda-spirallike, `|lambda| < pi/2`
    Spirallike { lambda: f64 },
    /// union of all lambda-spirallike classes
    SpirallikeAll,
    /// strongly starlike of order alpha, `0 < alpha < 1`
    StronglyStarlike { alpha: f64 },
    /// strongly lambda-spirallike of order alpha, `|lambda| < pi alpha/2 < pi/2`
    StronglySpirallike { lambda: f64, alpha: f64 },
}

impl ClassSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            ClassSpec::StarlikeOrder { alpha } if !(0.0..1.0).contains(&alpha) => {
                bad(format!("S*(alpha) needs 0 <= alpha < 1, got {alpha}"))
            }
            ClassSpec::Spirallike { lambda } if !(lambda.abs() < FRAC_PI_2) => {
                bad(format!("Sp(lambda) needs |lambda| < pi/2, got {lambda}"))
            }
            ClassSpec::StronglyStarlike { alpha } if !(alpha > 0.0 && alpha < 1.0) => {
                bad(format!("SS(alpha) needs 0 < alpha < 1, got {alpha}"))
            }
            ClassSpec::StronglySpirallike { lambda, alpha }
                if !(alpha > 0.0 && alpha < 1.0 && lambda.abs() < FRAC_PI_2 * alpha) =>
            {
                bad(format!("Sp(lambda, alpha) needs |lambda| < pi*alpha/2 < pi/2, got {lambda}, {alpha}"))
            }
            _ => Ok(()),
        }
    }

    /// The zoo function whose `z f'/f` covers the whole variability region.
    pub fn extremal(&self) -> Option<ZooSpec> {
        match *self {
            ClassSpec::Starlike => Some(ZooSpec::Koebe),
            ClassSpec::StarlikeOrder { alpha } => Some(ZooSpec::StarlikeOrder { alpha }),
            ClassSpec::Convex => Some(ZooSpec::HalfPlane),
            ClassSpec::Spirallike { lambda } => Some(ZooSpec::SpiralKoebe { lambda }),
            ClassSpec::StronglyStarlike { alpha } => Some(ZooSpec::StronglyStarlike { alpha }),
            ClassSpec::StronglySpirallike { lambda, alpha } => Some(ZooSpec::StronglySpirallike { lambda, alpha }),
            _ => None,
        }
    }

    /// Builds a class from a CLI-style name and optional parameters:
    /// `S`, `C`, `K`, `S*` (+alpha), `SS` (+alpha), `Sp` (+lambda, +alpha).
    pub fn from_parts(name: &str, lambda: Option<f64>, alpha: Option<f64>) -> Result<Self> {
        let err = || Error::Parse { what: "class name", input: name.to_string() };
        let cls = match (name, lambda, alpha) {
            ("S", None, None) => ClassSpec::Univalent,
            ("C", None, None) => ClassSpec::CloseToConvex,
            ("K", None, None) => ClassSpec::Convex,
            ("S*", None, None) => ClassSpec::Starlike,
            ("S*", None, Some(alpha)) => ClassSpec::StarlikeOrder { alpha },
            ("SS", None, Some(alpha)) => ClassSpec::StronglyStarlike { alpha },
            ("Sp", None, None) => ClassSpec::SpirallikeAll,
            ("Sp", Some(lambda), None) => ClassSpec::Spirallike { lambda },
            ("Sp", Some(lambda), Some(alpha)) => ClassSpec::StronglySpirallike { lambda, alpha },
            _ => return Err(err()),
        };
        cls.validate()?;
        Ok(cls)
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::Univalent => write!(f, "S"),
            ClassSpec::Starlike => write!(f, "S*"),
            ClassSpec::StarlikeOrder { alpha } => write!(f, "S*({alpha})"),
            ClassSpec::Convex => write!(f, "K"),
            ClassSpec::CloseToConvex => write!(f, "C"),
            ClassSpec::Spirallike { lambda } => write!(f, "Sp({lambda})"),
            ClassSpec::SpirallikeAll => write!(f, "Sp"),
            ClassSpec::StronglyStarlike { alpha } => write!(f, "SS({alpha})"),
            ClassSpec::StronglySpirallike { lambda, alpha } => write!(f, "Sp({lambda},{alpha})"),
        }
    }
}

impl FromStr for ClassSpec {
    type Err = Error;

    /// Parses the `Display` form, e.g. `S*(0.5)` or `Sp(0.3,0.6)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.split_once('(') {
            Some((n, rest)) => {
                let inner = rest.strip_suffix(')').ok_or(Error::Parse { what: "class", input: s.into() })?;
                let nums = inner
                    .split(',')
                    .map(|x| x.trim().parse::<f64>().map_err(|_| Error::Parse { what: "class", input: s.into() }))
                    .collect::<Result<Vec<_>>>()?;
                (n, nums)
            }
            None => (s, Vec::new()),
        };
        match (name, args.as_slice()) {
            ("S*" | "SS", &[a]) => ClassSpec::from_parts(name, None, Some(a)),
            ("Sp", &[l]) => ClassSpec::from_parts(name, Some(l), None),
            ("Sp", &[l, a]) => ClassSpec::from_parts(name, Some(l), Some(a)),
            (_, []) => ClassSpec::from_parts(name, None, None),
            _ => Err(Error::Parse { what: "class", input: s.into() }),
        }
    }
}

/// Exact descriptor of an open variability region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionDescriptor {
    /// `{w : Re(normal * w) > offset}` with `|normal| = 1`.
    HalfPlane { normal: Complex64, offset: f64 },
    /// `{w : |arg w - bisector| < half_opening}`.
    Sector { bisector: f64, half_opening: f64 },
    /// `C \ (-inf, 0]`
    SlitPlane,
    /// `C \ {0}`
    PuncturedPlane,
}

impl RegionDescriptor {
    pub fn contains(&self, w: Complex64) -> bool {
        match *self {
            RegionDescriptor::HalfPlane { normal, offset } => (normal * w).re > offset,
            RegionDescriptor::Sector { bisector, half_opening } => {
                w != ZERO && (w * Complex64::from_polar(1.0, -bisector)).arg().abs() < half_opening
            }
            RegionDescriptor::SlitPlane => !(w.im == 0.0 && w.re <= 0.0),
            RegionDescriptor::PuncturedPlane => w != ZERO,
        }
    }
}

/// Variability region of `z f'/f` over the class.
pub fn closed_form_variability(cls: &ClassSpec) -> Result<RegionDescriptor> {
    cls.validate()?;
    let half_plane = |normal: Complex64, offset: f64| RegionDescriptor::HalfPlane { normal, offset };
    Ok(match *cls {
        ClassSpec::Starlike => half_plane(ONE, 0.0),
        ClassSpec::StarlikeOrder { alpha } => half_plane(ONE, alpha),
        ClassSpec::Convex => half_plane(ONE, 0.5),
        ClassSpec::Spirallike { lambda } => half_plane(Complex64::from_polar(1.0, -lambda), 0.0),
        ClassSpec::SpirallikeAll => RegionDescriptor::SlitPlane,
        ClassSpec::StronglyStarlike { alpha } => RegionDescriptor::Sector { bisector: 0.0, half_opening: PI * alpha / 2.0 },
        ClassSpec::StronglySpirallike { lambda, alpha } => {
            RegionDescriptor::Sector { bisector: lambda, half_opening: PI * alpha / 2.0 }
        }
        ClassSpec::Univalent | ClassSpec::CloseToConvex => RegionDescriptor::PuncturedPlane,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
}

impl Disk {
    /// `|c - center| - radius`
    pub fn signed_distance(&self, c: Complex64) -> f64 {
        (c - self.center).norm() - self.radius
    }

    pub fn contains_disk(&self, other: &Disk, tol: f64) -> bool {
        (other.center - self.center).norm() + other.radius <= self.radius + tol
    }
}

/// Closed-disk generated by the Koebe-disk scaling `(1/b) D(1/2, 1/2)`.
fn spiral_disk(lambda: f64) -> Disk {
    Disk { center: Complex64::new(0.5, -0.5 * lambda.tan()), radius: 0.5 / lambda.cos() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

impl fmt::Display for Containment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Containment::Inside => "inside",
            Containment::Boundary => "boundary",
            Containment::Outside => "outside",
        })
    }
}

/// Union of closed disks, closed segments and points.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExponentRegion {
    pub disks: Vec<Disk>,
    pub segments: Vec<(Complex64, Complex64)>,
    pub points: Vec<Complex64>,
}

fn segment_distance(c: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (c - a).norm();
    }
    let t = (((c - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (c - (a + d * t)).norm()
}

impl ExponentRegion {
    pub fn disk(center: Complex64, radius: f64) -> Self {
        Self { disks: vec![Disk { center, radius }], ..Default::default() }
    }

    /// Classifies `c` against the closed union with a boundary band of width
    /// `tol`. Segments and points have empty interior.
    pub fn contains(&self, c: Complex64, tol: f64) -> Containment {
        if self.disks.iter().any(|d| d.signed_distance(c) < -tol) {
            return Containment::Inside;
        }
        let near = self.disks.iter().map(|d| d.signed_distance(c).abs());
        let near = near
            .chain(self.segments.iter().map(|&(a, b)| segment_distance(c, a, b)))
            .chain(self.points.iter().map(|&p| (c - p).norm()))
            .fold(f64::INFINITY, f64::min);
        if near <= tol {
            Containment::Boundary
        } else {
            Containment::Outside
        }
    }

    /// `s * region`.
    pub fn scale(&self, s: Complex64) -> Result<Self> {
        if s == ZERO {
            return Err(Error::InvalidParameter("scale factor must be nonzero".into()));
        }
        Ok(Self {
            disks: self.disks.iter().map(|d| Disk { center: d.center * s, radius: d.radius * s.norm() }).collect(),
            segments: self.segments.iter().map(|&(a, b)| (a * s, b * s)).collect(),
            points: self.points.iter().map(|&p| p * s).collect(),
        })
    }

    /// Component-wise equality up to `tol`, ignoring order.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        fn matched<T, F: Fn(&T, &T) -> bool>(a: &[T], b: &[T], close: F) -> bool {
            a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| close(x, y))) && b.iter().all(|y| a.iter().any(|x| close(x, y)))
        }
        matched(&self.disks, &other.disks, |x, y| {
            (x.center - y.center).norm() <= tol && (x.radius - y.radius).abs() <= tol
        }) && matched(&self.segments, &other.segments, |x, y| {
            ((x.0 - y.0).norm() <= tol && (x.1 - y.1).norm() <= tol) || ((x.0 - y.1).norm() <= tol && (x.1 - y.0).norm() <= tol)
        }) && matched(&self.points, &other.points, |x, y| (x - y).norm() <= tol)
    }

    /// Largest mismatch between matched components, or infinity when the
    /// component counts differ.
    pub fn component_error(&self, other: &Self) -> f64 {
        fn one_way<T, F: Fn(&T, &T) -> f64>(a: &[T], b: &[T], dist: F) -> f64 {
            a.iter().map(|x| b.iter().map(|y| dist(x, y)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
        }
        fn both<T, F: Fn(&T, &T) -> f64 + Copy>(a: &[T], b: &[T], dist: F) -> f64 {
            if a.len() != b.len() {
                return f64::INFINITY;
            }
            one_way(a, b, dist).max(one_way(b, a, dist))
        }
        let disk = |x: &Disk, y: &Disk| (x.center - y.center).norm().max((x.radius - y.radius).abs());
        let seg = |x: &(Complex64, Complex64), y: &(Complex64, Complex64)| {
            ((x.0 - y.0).norm().max((x.1 - y.1).norm())).min((x.0 - y.1).norm().max((x.1 - y.0).norm()))
        };
        let pt = |x: &Complex64, y: &Complex64| (x - y).norm();
        both(&self.disks, &other.disks, disk)
            .max(both(&self.segments, &other.segments, seg))
            .max(both(&self.points, &other.points, pt))
    }

    /// Largest modulus of any point of the region.
    pub fn extent(&self) -> f64 {
        let d = self.disks.iter().map(|d| d.center.norm() + d.radius);
        let s = self.segments.iter().map(|&(a, b)| a.norm().max(b.norm()));
        let p = self.points.iter().map(|p| p.norm());
        d.chain(s).chain(p).fold(0.0, f64::max)
    }

    pub fn is_bounded(&self) -> bool {
        self.extent().is_finite()
    }

    /// Points on the topological boundary of the union, `n` per component.
    pub fn boundary_samples(&self, n: usize) -> Vec<Complex64> {
        let mut out = Vec::new();
        for (i, d) in self.disks.iter().enumerate() {
            for k in 0..n {
                let c = d.center + Complex64::from_polar(d.radius, std::f64::consts::TAU * k as f64 / n as f64);
                let covered = self.disks.iter().enumerate().any(|(j, o)| j != i && o.signed_distance(c) < -1e-12);
                if !covered {
                    out.push(c);
                }
            }
        }
        for &(a, b) in &self.segments {
            out.extend((0..=n).map(|k| a + (b - a) * (k as f64 / n as f64)));
        }
        out.extend(self.points.iter().copied());
        out
    }
}

/// Exponent region `[M, S]_K = [M, Sp]_K` for the class.
pub fn closed_form_exponent_region(cls: &ClassSpec) -> Result<ExponentRegion> {
    cls.validate()?;
    let half = Complex64::new(0.5, 0.0);
    Ok(match *cls {
        ClassSpec::Starlike => ExponentRegion::disk(half, 0.5),
        ClassSpec::StarlikeOrder { alpha } => {
            let r = 1.0 / (2.0 * (1.0 - alpha));
            ExponentRegion::disk(Complex64::new(r, 0.0), r)
        }
        ClassSpec::Convex => ExponentRegion::disk(ONE, 1.0),
        ClassSpec::Spirallike { lambda } => ExponentRegion { disks: vec![spiral_disk(lambda)], ..Default::default() },
        ClassSpec::SpirallikeAll => ExponentRegion { segments: vec![(ZERO, ONE)], ..Default::default() },
        ClassSpec::StronglyStarlike { alpha } => {
            let t = PI * alpha / 2.0;
            let (cot, r) = (1.0 / t.tan(), 1.0 / (2.0 * t.sin()));
            ExponentRegion {
                disks: vec![
                    Disk { center: Complex64::new(0.5, -0.5 * cot), radius: r },
                    Disk { center: Complex64::new(0.5, 0.5 * cot), radius: r },
                ],
                ..Default::default()
            }
        }
        ClassSpec::StronglySpirallike { lambda, alpha } => {
            let shift = PI * (1.0 - alpha) / 2.0;
            ExponentRegion { disks: vec![spiral_disk(lambda + shift), spiral_disk(lambda - shift)], ..Default::default() }
        }
        ClassSpec::Univalent | ClassSpec::CloseToConvex => {
            ExponentRegion { points: vec![ZERO, ONE], ..Default::default() }
        }
    })
}

/// Circle through three distinct, non-collinear points.
fn circumcircle(a: Complex64, b: Complex64, c: Complex64) -> Option<Disk> {
    let (b, c) = (b - a, c - a);
    let d = 2.0 * (b.re * c.im - b.im * c.re);
    if d.abs() < 1e-300 {
        return None;
    }
    let (nb, nc) = (b.norm_sqr(), c.norm_sqr());
    let ux = (c.im * nb - b.im * nc) / d;
    let uy = (b.re * nc - c.re * nb) / d;
    let u = Complex64::new(ux, uy);
    Some(Disk { center: a + u, radius: u.norm() })
}

fn finite_t(w: Complex64) -> Result<Complex64> {
    match mobius_t(ExtPoint::Finite(w)) {
        ExtPoint::Finite(c) => Ok(c),
        ExtPoint::Infinity => Err(Error::Unrepresentable("boundary passes through w = 1".into())),
    }
}

/// `C \ T(H)` for the open half-plane `H` bounded by the line through
/// `anchor` with unit direction `dir`, on the side of `inner`.
///
/// The boundary line (closed by `inf`) maps to a circle through `T(inf) = 0`;
/// the closed complement of `H` maps to the disk it bounds when `1` lies in `H`.
fn complement_of_half_plane(anchor: Complex64, dir: Complex64, inner: Complex64) -> Result<Disk> {
    let side = |w: Complex64| ((w - anchor) * dir.conj()).im;
    let (s_one, s_inner) = (side(ONE), side(inner));
    if s_one.abs() < 1e-15 {
        return Err(Error::Unrepresentable("w = 1 lies on the boundary; the image complement is a half-plane".into()));
    }
    if s_one.signum() != s_inner.signum() {
        return Err(Error::Unrepresentable("w = 1 lies outside the region; the image complement is unbounded".into()));
    }
    let p1 = finite_t(anchor)?;
    let p2 = finite_t(anchor + dir)?;
    let p3 = finite_t(anchor - dir)?;
    circumcircle(p1, p2, p3)
        .or_else(|| circumcircle(ZERO, p1, p2))
        .ok_or_else(|| Error::Unrepresentable("degenerate boundary image".into()))
}

/// Computes `C \ T(V)` from the geometry of the descriptor's boundary.
pub fn complement_of_t_image(v: &RegionDescriptor) -> Result<ExponentRegion> {
    match *v {
        RegionDescriptor::HalfPlane { normal, offset } => {
            if ((normal.norm()) - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidParameter("half-plane normal must have unit modulus".into()));
            }
            // Re(n w) = d  <=>  w = conj(n) (d + i t)
            let anchor = normal.conj() * offset;
            let dir = normal.conj() * Complex64::i();
            let inner = anchor + normal.conj();
            Ok(ExponentRegion { disks: vec![complement_of_half_plane(anchor, dir, inner)?], ..Default::default() })
        }
        RegionDescriptor::Sector { bisector, half_opening } => {
            if !(half_opening > 0.0 && half_opening <= FRAC_PI_2) {
                return Err(Error::Unrepresentable(format!(
                    "sector of half-opening {half_opening} is not an intersection of two half-planes"
                )));
            }
            let inner = Complex64::from_polar(1.0, bisector);
            // each boundary ray spans a line through 0; the sector is the
            // intersection of the two half-planes containing the bisector
            let rays = [bisector - half_opening, bisector + half_opening];
            let mut disks = Vec::with_capacity(2);
            for angle in rays {
                let d = complement_of_half_plane(ZERO, Complex64::from_polar(1.0, angle), inner)?;
                if !disks.iter().any(|o: &Disk| (o.center - d.center).norm() < 1e-14 && (o.radius - d.radius).abs() < 1e-14) {
                    disks.push(d);
                }
            }
            Ok(ExponentRegion { disks, ..Default::default() })
        }
        RegionDescriptor::SlitPlane => {
            // T((-inf, 0] U {inf}) = (0, 1] U {0}
            let end = finite_t(ZERO)?;
            match mobius_t(ExtPoint::Infinity) {
                ExtPoint::Finite(start) => Ok(ExponentRegion { segments: vec![(start, end)], ..Default::default() }),
                ExtPoint::Infinity => unreachable!(),
            }
        }
        RegionDescriptor::PuncturedPlane => {
            let zero_image = finite_t(ZERO)?;
            let inf_image = match mobius_t(ExtPoint::Infinity) {
                ExtPoint::Finite(c) => c,
                ExtPoint::Infinity => unreachable!(),
            };
            Ok(ExponentRegion { points: vec![inf_image, zero_image], ..Default::default() })
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
    fn mobius_examples() {
        assert_eq!(mobius_t(ExtPoint::Finite(ZERO)), ExtPoint::Finite(ONE));
        assert_eq!(mobius_t(ExtPoint::Finite(c(-1.0, 0.0))), ExtPoint::Finite(c(0.5, 0.0)));
        assert_eq!(mobius_t(ExtPoint::Finite(ONE)), ExtPoint::Infinity);
        assert_eq!(mobius_t(ExtPoint::Infinity), ExtPoint::Finite(ZERO));
        assert_eq!(mobius_t_inv(ExtPoint::Finite(ZERO)), ExtPoint::Infinity);
    }

    #[test]
    fn variability_descriptors() {
        assert_eq!(
            closed_form_variability(&ClassSpec::Starlike).unwrap(),
            RegionDescriptor::HalfPlane { normal: ONE, offset: 0.0 }
        );
        assert_eq!(
            closed_form_variability(&ClassSpec::Convex).unwrap(),
            RegionDescriptor::HalfPlane { normal: ONE, offset: 0.5 }
        );
        match closed_form_variability(&ClassSpec::StronglySpirallike { lambda: 0.2, alpha: 0.5 }).unwrap() {
            RegionDescriptor::Sector { bisector, half_opening } => {
                assert_eq!(bisector, 0.2);
                assert!((half_opening - PI / 4.0).abs() < 1e-15);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exponent_region_examples() {
        let s = closed_form_exponent_region(&ClassSpec::Starlike).unwrap();
        assert_eq!(s, ExponentRegion::disk(c(0.5, 0.0), 0.5));

        let sp = closed_form_exponent_region(&ClassSpec::Spirallike { lambda: PI / 4.0 }).unwrap();
        assert!(sp.approx_eq(&ExponentRegion::disk(c(0.5, -0.5), 0.5f64.sqrt()), 1e-15));

        let ss = closed_form_exponent_region(&ClassSpec::StronglyStarlike { alpha: 0.5 }).unwrap();
        let expected = ExponentRegion {
            disks: vec![
                Disk { center: c(0.5, -0.5), radius: 0.5f64.sqrt() },
                Disk { center: c(0.5, 0.5), radius: 0.5f64.sqrt() },
            ],
            ..Default::default()
        };
        assert!(ss.approx_eq(&expected, 1e-15));
    }

    #[test]
    fn complement_examples() {
        let h = RegionDescriptor::HalfPlane { normal: ONE, offset: 0.0 };
        assert!(complement_of_t_image(&h).unwrap().approx_eq(&ExponentRegion::disk(c(0.5, 0.0), 0.5), 1e-15));
        let h = RegionDescriptor::HalfPlane { normal: ONE, offset: 0.5 };
        assert!(complement_of_t_image(&h).unwrap().approx_eq(&ExponentRegion::disk(ONE, 1.0), 1e-15));
        let seg = complement_of_t_image(&RegionDescriptor::SlitPlane).unwrap();
        assert!(seg.approx_eq(&ExponentRegion { segments: vec![(ZERO, ONE)], ..Default::default() }, 0.0));
        let pts = complement_of_t_image(&RegionDescriptor::PuncturedPlane).unwrap();
        assert!(pts.approx_eq(&ExponentRegion { points: vec![ZERO, ONE], ..Default::default() }, 0.0));
    }

    #[test]
    fn complement_obstructions() {
        // 1 on the boundary line
        let h = RegionDescriptor::HalfPlane { normal: ONE, offset: 1.0 };
        assert!(matches!(complement_of_t_image(&h), Err(Error::Unrepresentable(_))));
        // 1 outside
        let h = RegionDescriptor::HalfPlane { normal: -ONE, offset: 0.0 };
        assert!(matches!(complement_of_t_image(&h), Err(Error::Unrepresentable(_))));
        // sector that misses the positive axis
        let s = RegionDescriptor::Sector { bisector: 1.0, half_opening: 0.5 };
        assert!(matches!(complement_of_t_image(&s), Err(Error::Unrepresentable(_))));
        let s = RegionDescriptor::Sector { bisector: 0.0, half_opening: 2.0 };
        assert!(matches!(complement_of_t_image(&s), Err(Error::Unrepresentable(_))));
    }

    #[test]
    fn containment_examples() {
        let d = ExponentRegion::disk(c(0.5, 0.0), 0.5);
        assert_eq!(d.contains(c(0.5, 0.0), 1e-12), Containment::Inside);
        assert_eq!(d.contains(ONE, 1e-12), Containment::Boundary);
        assert_eq!(d.contains(c(1.1, 0.0), 1e-12), Containment::Outside);
        let seg = ExponentRegion { segments: vec![(ZERO, ONE)], ..Default::default() };
        assert_eq!(seg.contains(c(0.5, 0.1), 1e-9), Containment::Outside);
        assert_eq!(seg.contains(c(0.5, 0.0), 1e-9), Containment::Boundary);
    }

    #[test]
    fn scaling_examples() {
        let d = ExponentRegion::disk(c(0.5, 0.0), 0.5);
        assert!(d.scale(c(2.0, 0.0)).unwrap().approx_eq(&ExponentRegion::disk(ONE, 1.0), 1e-15));
        assert!(d.scale(ZERO).is_err());
        for alpha in [0.0, 0.3, 0.7] {
            let scaled = d.scale(c(1.0 / (1.0 - alpha), 0.0)).unwrap();
            let direct = closed_form_exponent_region(&ClassSpec::StarlikeOrder { alpha }).unwrap();
            assert!(scaled.approx_eq(&direct, 1e-14));
        }
        for lambda in [-1.2, 0.4, 1.1] {
            let scaled = d.scale(c(1.0, -f64::tan(lambda))).unwrap();
            let direct = closed_form_exponent_region(&ClassSpec::Spirallike { lambda }).unwrap();
            assert!(scaled.approx_eq(&direct, 1e-14));
        }
    }

    #[test]
    fn class_parsing() {
        assert_eq!(ClassSpec::from_parts("SS", None, Some(0.5)).unwrap(), ClassSpec::StronglyStarlike { alpha: 0.5 });
        assert_eq!(ClassSpec::from_parts("Sp", None, None).unwrap(), ClassSpec::SpirallikeAll);
        assert!(ClassSpec::from_parts("Sp", Some(1.0), Some(0.5)).is_err());
        assert!(ClassSpec::from_parts("SS", None, None).is_err());
        for cls in [ClassSpec::StarlikeOrder { alpha: 0.25 }, ClassSpec::StronglySpirallike { lambda: 0.3, alpha: 0.6 }, ClassSpec::Convex] {
            assert_eq!(cls.to_string().parse::<ClassSpec>().unwrap(), cls);
        }
    }

    #[test]
    fn regions_contain_zero_and_one() {
        let classes = [
            ClassSpec::Univalent,
            ClassSpec::Starlike,
            ClassSpec::StarlikeOrder { alpha: 0.4 },
            ClassSpec::Convex,
            ClassSpec::CloseToConvex,
            ClassSpec::Spirallike { lambda: -0.7 },
            ClassSpec::SpirallikeAll,
            ClassSpec::StronglyStarlike { alpha: 0.3 },
            ClassSpec::StronglySpirallike { lambda: 0.2, alpha: 0.7 },
        ];
        for cls in classes {
            let r = closed_form_exponent_region(&cls).unwrap();
            assert!(r.is_bounded());
            for p in [ZERO, ONE] {
                assert_ne!(r.contains(p, 1e-12), Containment::Outside, "{cls}");
            }
        }
    }
}
