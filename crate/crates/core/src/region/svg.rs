//! SVG and CSV renderings of regions in the window `[-3, 3]^2`.

use std::fmt::Write;

use num_complex::Complex64;

use super::{Containment, ExponentRegion, SampledRegion};

pub const CLOSED_FORM_STROKE: &str = "#1f4e9a";
pub const SAMPLED_STROKE: &str = "#c0392b";

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn region_elements(out: &mut String, region: &ExponentRegion, stroke: &str, dashed: bool) {
    let dash = if dashed { " stroke-dasharray=\"0.04 0.03\"" } else { "" };
    for d in &region.disks {
        let _ = writeln!(
            out,
            "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{stroke}\" fill-opacity=\"0.08\" stroke=\"{stroke}\" stroke-width=\"0.012\"{dash}/>",
            num(d.center.re),
            num(d.center.im),
            num(d.radius)
        );
    }
    for (a, b) in &region.segments {
        let _ = writeln!(
            out,
            "    <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\" stroke-width=\"0.02\"{dash}/>",
            num(a.re),
            num(a.im),
            num(b.re),
            num(b.im)
        );
    }
    for p in &region.points {
        let _ = writeln!(out, "    <circle cx=\"{}\" cy=\"{}\" r=\"0.035\" fill=\"{stroke}\"/>", num(p.re), num(p.im));
    }
}

/// Renders a closed-form region, an optional second closed form drawn dashed
/// (e.g. a reconstruction) and an optional sampled estimate.
pub fn render_svg(closed: Option<&ExponentRegion>, overlay: Option<&ExponentRegion>, sampled: Option<&SampledRegion>) -> String {
    let mut out = String::new();
    out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-3 -3 6 6\" width=\"600\" height=\"600\">\n");
    out.push_str("  <g transform=\"scale(1,-1)\">\n");
    out.push_str("    <line x1=\"-3\" y1=\"0\" x2=\"3\" y2=\"0\" stroke=\"#999999\" stroke-width=\"0.006\"/>\n");
    out.push_str("    <line x1=\"0\" y1=\"-3\" x2=\"0\" y2=\"3\" stroke=\"#999999\" stroke-width=\"0.006\"/>\n");
    if let Some(r) = closed {
        region_elements(&mut out, r, CLOSED_FORM_STROKE, false);
    }
    if let Some(r) = overlay {
        region_elements(&mut out, r, CLOSED_FORM_STROKE, true);
    }
    if let Some(s) = sampled {
        for line in &s.boundary {
            let pts: Vec<String> = line.iter().map(|p| format!("{},{}", num(p.re), num(p.im))).collect();
            let _ = writeln!(
                out,
                "    <polygon points=\"{}\" fill=\"none\" stroke=\"{SAMPLED_STROKE}\" stroke-width=\"0.012\"/>",
                pts.join(" ")
            );
        }
    }
    out.push_str("  </g>\n</svg>\n");
    out
}

/// `re,im,classification` rows for a square lattice of `n x n` points.
pub fn closed_form_csv(region: &ExponentRegion, n: usize, half_width: f64, tol: f64) -> String {
    let mut out = String::from("re,im,classification\n");
    let step = 2.0 * half_width / (n.max(2) - 1) as f64;
    for j in 0..n {
        for i in 0..n {
            let c = Complex64::new(-half_width + i as f64 * step, -half_width + j as f64 * step);
            let cls = region.contains(c, tol);
            let _ = writeln!(out, "{},{},{}", num(c.re), num(c.im), cls);
        }
    }
    out
}

/// `re,im,classification` rows for every pixel of a sampled estimate.
pub fn sampled_csv(s: &SampledRegion) -> String {
    let res = s.raster.resolution;
    let mut out = String::from("re,im,classification\n");
    for j in 0..res {
        for i in 0..res {
            let c = s.pixel_center(i, j);
            let cls = if s.is_inside(i, j) { Containment::Inside } else { Containment::Outside };
            let _ = writeln!(out, "{},{},{}", num(c.re), num(c.im), cls);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svg_has_window_and_flip() {
        let r = ExponentRegion::disk(Complex64::new(0.5, 0.0), 0.5);
        let s = render_svg(Some(&r), None, None);
        assert!(s.contains("viewBox=\"-3 -3 6 6\""));
        assert!(s.contains("scale(1,-1)"));
        assert!(s.contains("cx=\"0.5\" cy=\"0\" r=\"0.5\""));
    }

    #[test]
    fn csv_rows() {
        let r = ExponentRegion::disk(Complex64::new(0.5, 0.0), 0.5);
        let csv = closed_form_csv(&r, 3, 1.0, 1e-12);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "re,im,classification");
        assert_eq!(lines.len(), 10);
        assert!(lines.contains(&"0,0,boundary"));
        assert!(lines.contains(&"1,0,boundary"));
        assert!(lines.contains(&"-1,0,outside"));
    }
}
