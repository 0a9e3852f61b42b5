//! Raster estimate of the exponent region of a single function.
//!
//! A point `c != 0` lies in the estimate when `w = 1 - 1/c` is not covered by
//! `p(|z| < r)`, `p = z f'/f`, with `r` the outermost grid radius. By the
//! argument principle this is the case exactly when the closed curve
//! `p(r e^{it})` has winding number 0 about `w`. Working in the `c`-plane,
//! `wind(T o gamma, T(w)) = wind(gamma, w) - wind(gamma, 1)`, so each raster
//! row is classified with one sorted list of curve crossings.

use num_complex::Complex64;

use super::{mobius_t, ExtPoint};
use crate::error::{Error, Result};
use crate::function::AnalyticFunction;
use crate::grid::SampleGrid;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RasterSpec {
    /// pixels per side
    pub resolution: usize,
    /// the raster covers `[-half_width, half_width]^2`
    pub half_width: f64,
}

impl Default for RasterSpec {
    fn default() -> Self {
        Self { resolution: 600, half_width: 3.0 }
    }
}

impl RasterSpec {
    pub fn pixel(&self) -> f64 {
        2.0 * self.half_width / self.resolution as f64
    }

    /// Center coordinate of pixel index `i` (may be out of range by one).
    pub fn center(&self, i: isize) -> f64 {
        -self.half_width + (i as f64 + 0.5) * self.pixel()
    }
}

#[derive(Debug, Clone)]
pub struct SampledRegion {
    pub raster: RasterSpec,
    /// radius of the circle whose image bounds the estimate
    pub radius: f64,
    /// row-major (`j * resolution + i`) membership of the pixel centers
    pub mask: Vec<bool>,
    /// closed boundary polylines (first vertex not repeated)
    pub boundary: Vec<Vec<Complex64>>,
    /// false when the estimate reaches the edge of the raster
    pub bounded: bool,
}

impl SampledRegion {
    pub fn is_inside(&self, i: usize, j: usize) -> bool {
        self.mask[j * self.raster.resolution + i]
    }

    pub fn pixel_center(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.raster.center(i as isize), self.raster.center(j as isize))
    }

    /// Number of pixels in the estimate.
    pub fn area_pixels(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }
}

fn t_of(w: Complex64) -> Complex64 {
    match mobius_t(ExtPoint::Finite(w)) {
        ExtPoint::Finite(c) => c,
        ExtPoint::Infinity => Complex64::new(f64::INFINITY, 0.0),
    }
}

/// Image of `|z| = r` under `p`, refined where the chord in either plane is
/// too coarse for the raster.
fn boundary_curve(f: &AnalyticFunction, r: f64, base: usize, raster: &RasterSpec) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    const MAX_DEPTH: u32 = 16;
    let delta = 0.25 * raster.pixel();
    let reach = raster.half_width + 4.0 * raster.pixel();
    let eval = |t: f64| -> Result<(Complex64, Complex64)> {
        let w = f.ratio_at(Complex64::from_polar(r, t))?;
        if !w.is_finite() {
            return Err(Error::NonFinite(format!("z f'/f at radius {r}, angle {t}")));
        }
        Ok((w, t_of(w)))
    };
    let chord_near_box = |a: Complex64, b: Complex64| {
        let (lo_x, hi_x) = (a.re.min(b.re), a.re.max(b.re));
        let (lo_y, hi_y) = (a.im.min(b.im), a.im.max(b.im));
        hi_x >= -reach && lo_x <= reach && hi_y >= -reach && lo_y <= reach
    };
    let coarse = |wa: Complex64, wb: Complex64, ca: Complex64, cb: Complex64| {
        if wa == Complex64::new(0.0, 0.0) || wb == Complex64::new(0.0, 0.0) {
            return false;
        }
        (wb / wa).ln().norm() > 0.2 || ((ca - cb).norm() > delta && chord_near_box(ca, cb))
    };

    let step = std::f64::consts::TAU / base as f64;
    let mut ws = Vec::new();
    let mut cs = Vec::new();
    let (w0, c0) = eval(0.0)?;
    let mut stack: Vec<(f64, Complex64, Complex64, u32)> = Vec::new();
    let (mut ta, mut wa, mut ca) = (0.0, w0, c0);
    for k in 1..=base {
        let tb = step * k as f64;
        let (wb, cb) = if k == base { (w0, c0) } else { eval(tb)? };
        // depth-first subdivision of [ta, tb], emitting left endpoints in order
        stack.push((tb, wb, cb, 0));
        while let Some(&(t1, w1, c1, depth)) = stack.last() {
            if depth < MAX_DEPTH && coarse(wa, w1, ca, c1) {
                let tm = 0.5 * (ta + t1);
                let (wm, cm) = eval(tm)?;
                stack.push((tm, wm, cm, depth + 1));
                // the new midpoint becomes the right end of the active chord;
                // its own depth must reflect the split
                let n = stack.len();
                stack[n - 2].3 = depth + 1;
            } else {
                ws.push(wa);
                cs.push(ca);
                stack.pop();
                (ta, wa, ca) = (t1, w1, c1);
            }
        }
    }
    Ok((ws, cs))
}

/// Winding number of the closed polygon about `p` (ray towards `+x`).
fn winding(poly: &[Complex64], p: Complex64) -> i64 {
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

/// Crossings of every polygon edge with the lines `coord = center(j)`;
/// `horizontal` selects rows (`im`) versus columns (`re`).
fn crossings(poly: &[Complex64], raster: &RasterSpec, horizontal: bool) -> Vec<Vec<(f64, i64)>> {
    let res = raster.resolution;
    let px = raster.pixel();
    let mut lines = vec![Vec::new(); res];
    let n = poly.len();
    for k in 0..n {
        let (a, b) = (poly[k], poly[(k + 1) % n]);
        let (a, b) = if horizontal { (a, b) } else { (Complex64::new(a.im, a.re), Complex64::new(b.im, b.re)) };
        if !(a.is_finite() && b.is_finite()) || a.im == b.im {
            continue;
        }
        let (lo, hi) = (a.im.min(b.im), a.im.max(b.im));
        // lines j with lo <= y_j < hi
        let first = ((lo + raster.half_width) / px - 0.5).ceil().max(0.0);
        let last = ((hi + raster.half_width) / px - 0.5).floor().min(res as f64 - 1.0);
        if first > last {
            continue;
        }
        let dir = if b.im > a.im { 1 } else { -1 };
        for (j, line) in lines.iter_mut().enumerate().take(last as usize + 1).skip(first as usize) {
            let y = raster.center(j as isize);
            if y < lo || y >= hi {
                continue;
            }
            let x = a.re + (y - a.im) * (b.re - a.re) / (b.im - a.im);
            line.push((x, dir));
        }
    }
    for l in &mut lines {
        l.sort_by(|p, q| p.0.total_cmp(&q.0));
    }
    lines
}

/// Point on a sorted crossing list inside `[lo, hi]`, nearest the middle.
fn crossing_between(list: &[(f64, i64)], lo: f64, hi: f64) -> Option<f64> {
    let start = list.partition_point(|&(x, _)| x < lo);
    let mid = 0.5 * (lo + hi);
    list[start..]
        .iter()
        .take_while(|&&(x, _)| x <= hi)
        .map(|&(x, _)| x)
        .min_by(|a, b| (a - mid).abs().total_cmp(&(b - mid).abs()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum EdgeKey {
    /// between pixels `(i, j)` and `(i + 1, j)`
    H(isize, isize),
    /// between pixels `(i, j)` and `(i, j + 1)`
    V(isize, isize),
}

/// Raster estimate of `[f, LU]_K` from the image of the outermost grid circle.
pub fn sampled_exponent_region(f: &AnalyticFunction, grid: &SampleGrid, raster: &RasterSpec) -> Result<SampledRegion> {
    if raster.resolution < 2 || !(raster.half_width > 0.0) {
        return Err(Error::InvalidParameter("raster needs resolution >= 2 and positive width".into()));
    }
    let r = grid.max_radius();
    if r > f.max_radius() {
        return Err(Error::OutsideEvalRadius { modulus: r, radius: f.max_radius() });
    }
    let (ws, cs) = boundary_curve(f, r, grid.angles.max(1024), raster)?;
    let n_one = winding(&ws, Complex64::new(1.0, 0.0));
    let res = raster.resolution;

    let rows = crossings(&cs, raster, true);
    let cols = crossings(&cs, raster, false);
    let mut mask = vec![false; res * res];
    for (j, row) in rows.iter().enumerate() {
        let mut acc = 0;
        let mut next = row.len();
        for i in (0..res).rev() {
            let x = raster.center(i as isize);
            while next > 0 && row[next - 1].0 > x {
                next -= 1;
                acc += row[next].1;
            }
            mask[j * res + i] = acc == -n_one;
        }
    }

    let inside = |i: isize, j: isize| -> bool {
        i >= 0 && j >= 0 && (i as usize) < res && (j as usize) < res && mask[j as usize * res + i as usize]
    };
    let in_range = |i: isize| i >= 0 && (i as usize) < res;
    let edge_point = |key: EdgeKey| -> Complex64 {
        match key {
            EdgeKey::H(i, j) => {
                let (x0, x1, y) = (raster.center(i), raster.center(i + 1), raster.center(j));
                let x = if in_range(i) && in_range(i + 1) && in_range(j) {
                    crossing_between(&rows[j as usize], x0, x1).unwrap_or(0.5 * (x0 + x1))
                } else {
                    0.5 * (x0 + x1)
                };
                Complex64::new(x, y)
            }
            EdgeKey::V(i, j) => {
                let (y0, y1, x) = (raster.center(j), raster.center(j + 1), raster.center(i));
                let y = if in_range(i) && in_range(j) && in_range(j + 1) {
                    crossing_between(&cols[i as usize], y0, y1).unwrap_or(0.5 * (y0 + y1))
                } else {
                    0.5 * (y0 + y1)
                };
                Complex64::new(x, y)
            }
        }
    };

    let mut segments: Vec<(EdgeKey, EdgeKey)> = Vec::new();
    for j in -1..res as isize {
        for i in -1..res as isize {
            let b = [inside(i, j), inside(i + 1, j), inside(i + 1, j + 1), inside(i, j + 1)];
            let bottom = EdgeKey::H(i, j);
            let right = EdgeKey::V(i + 1, j);
            let top = EdgeKey::H(i, j + 1);
            let left = EdgeKey::V(i, j);
            let mut crossed = Vec::with_capacity(4);
            if b[0] != b[1] {
                crossed.push(bottom);
            }
            if b[1] != b[2] {
                crossed.push(right);
            }
            if b[2] != b[3] {
                crossed.push(top);
            }
            if b[3] != b[0] {
                crossed.push(left);
            }
            match crossed.len() {
                0 => {}
                2 => segments.push((crossed[0], crossed[1])),
                4 => {
                    let center = Complex64::new(raster.center(i) + 0.5 * raster.pixel(), raster.center(j) + 0.5 * raster.pixel());
                    let center_in = winding(&cs, center) == -n_one;
                    if center_in == b[0] {
                        segments.push((bottom, right));
                        segments.push((top, left));
                    } else {
                        segments.push((bottom, left));
                        segments.push((right, top));
                    }
                }
                _ => unreachable!("marching squares crosses an even number of edges"),
            }
        }
    }

    let mut by_edge: std::collections::HashMap<EdgeKey, Vec<usize>> = std::collections::HashMap::new();
    for (k, &(a, b)) in segments.iter().enumerate() {
        by_edge.entry(a).or_default().push(k);
        by_edge.entry(b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut boundary = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (first, mut at) = segments[start];
        let mut line = vec![edge_point(first)];
        while at != first {
            line.push(edge_point(at));
            let Some(&next) = by_edge[&at].iter().find(|&&k| !used[k]) else {
                break;
            };
            used[next] = true;
            let (a, b) = segments[next];
            at = if a == at { b } else { a };
        }
        boundary.push(line);
    }

    let bounded = (0..res).all(|k| !mask[k] && !mask[(res - 1) * res + k] && !mask[k * res] && !mask[k * res + res - 1]);
    Ok(SampledRegion { raster: *raster, radius: r, mask, boundary, bounded })
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

/// Hausdorff distance between closed polylines and a dense point sample of
/// another boundary. Distances towards the polylines use their edges.
pub fn hausdorff_to_samples(polylines: &[Vec<Complex64>], samples: &[Complex64]) -> f64 {
    let vertices = polylines.iter().flatten();
    let forward = vertices
        .map(|v| samples.iter().map(|s| (v - s).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let backward = samples
        .iter()
        .map(|&s| {
            polylines
                .iter()
                .flat_map(|l| (0..l.len()).map(move |k| segment_distance(s, l[k], l[(k + 1) % l.len()])))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    forward.max(backward)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{make_named, ZooSpec};

    #[test]
    fn winding_of_square() {
        let sq = [
            Complex64::new(-1.0, -1.0),
            Complex64::new(1.0, -1.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(-1.0, 1.0),
        ];
        assert_eq!(winding(&sq, Complex64::new(0.0, 0.0)), 1);
        assert_eq!(winding(&sq, Complex64::new(2.0, 0.0)), 0);
        let rev: Vec<_> = sq.iter().rev().copied().collect();
        assert_eq!(winding(&rev, Complex64::new(0.3, -0.2)), -1);
    }

    #[test]
    fn koebe_estimate_is_the_half_disk() {
        let f = make_named(&ZooSpec::Koebe, 64).unwrap();
        let grid = SampleGrid::standard(&f);
        let raster = RasterSpec { resolution: 120, half_width: 3.0 };
        let s = sampled_exponent_region(&f, &grid, &raster).unwrap();
        assert!(s.bounded);
        assert_eq!(s.boundary.len(), 1);
        let circle: Vec<_> = (0..2048)
            .map(|k| Complex64::new(0.5, 0.0) + Complex64::from_polar(0.5, std::f64::consts::TAU * k as f64 / 2048.0))
            .collect();
        let d = hausdorff_to_samples(&s.boundary, &circle);
        assert!(d < 0.01, "{d}");
    }

    #[test]
    fn identity_estimate_is_unbounded() {
        let f = AnalyticFunction::identity(8);
        let grid = SampleGrid::standard_to(0.95, 64);
        let raster = RasterSpec { resolution: 40, half_width: 3.0 };
        let s = sampled_exponent_region(&f, &grid, &raster).unwrap();
        assert!(!s.bounded);
        assert_eq!(s.area_pixels(), 40 * 40);
    }
}
