//! SVG rendering. Finite places are drawn in a blue keyed by `p`, the
//! generic place in black and the archimedean amoeba as a gray fill.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use adelic_core::archimedean::{arch_membership, ArchVerdict};
use adelic_core::dynamics::{PartKind, SphericalSet};
use adelic_core::polyhedron::Cell;
use adelic_core::rational::rational_to_f64;
use adelic_core::tropical::{tropical_hypersurface, Special};
use adelic_core::{HPolyhedron, LaurentPoly, LinearConstraint, Place, Rational, Sign};

use crate::CliError;

const BLUES: [&str; 6] = ["#08306b", "#2171b5", "#4292c6", "#08519c", "#6baed6", "#3182bd"];
const GENERIC: &str = "#000000";
const ARCH: &str = "#999999";

pub fn place_color(place: Place) -> &'static str {
    match place {
        Place::Finite(p) => BLUES[(p.get() % BLUES.len() as u64) as usize],
        Place::Generic => GENERIC,
        Place::Archimedean => ARCH,
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

struct Canvas {
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    fn new(width: f64, height: f64) -> Self {
        Canvas { width, height, body: String::new() }
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), color: &str, width: f64) {
        let _ = writeln!(
            self.body,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{color}" stroke-width="{width}"/>"#,
            a.0, a.1, b.0, b.1
        );
    }

    fn circle(&mut self, c: (f64, f64), r: f64, fill: &str, stroke: &str) {
        let _ = writeln!(self.body, r#"<circle cx="{:.3}" cy="{:.3}" r="{r}" fill="{fill}" stroke="{stroke}"/>"#, c.0, c.1);
    }

    fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str, opacity: f64) {
        let _ = writeln!(
            self.body,
            r#"<rect x="{x:.3}" y="{y:.3}" width="{w:.3}" height="{h:.3}" fill="{fill}" fill-opacity="{opacity}"/>"#
        );
    }

    fn polygon(&mut self, pts: &[(f64, f64)], fill: &str, opacity: f64) {
        let list: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        let _ = writeln!(
            self.body,
            r#"<polygon points="{}" fill="{fill}" fill-opacity="{opacity}" stroke="{fill}"/>"#,
            list.join(" ")
        );
    }

    fn text(&mut self, x: f64, y: f64, s: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{x:.1}" y="{y:.1}" font-family="sans-serif" font-size="12">{}</text>"#,
            escape(s)
        );
    }

    fn finish(self, title: &str) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<title>{}</title>\n<rect width=\"{w}\" height=\"{h}\" fill=\"#ffffff\"/>\n{}</svg>\n",
            escape(title),
            self.body,
            w = self.width,
            h = self.height,
        )
    }
}

fn exact(x: f64) -> Result<Rational, CliError> {
    Rational::from_float(x).ok_or_else(|| CliError::Invalid(format!("non-finite bound {x}")))
}

/// Box `[-lo_i, hi_i]` constraints in each coordinate.
fn bounding_box(lo: &[Rational], hi: &[Rational]) -> Vec<LinearConstraint> {
    let d = lo.len();
    let mut out = Vec::new();
    for i in 0..d {
        let mut e = vec![Rational::from_integer(0.into()); d];
        e[i] = Rational::from_integer(1.into());
        out.push(LinearConstraint::ge(e.clone(), lo[i].clone()));
        out.push(LinearConstraint::le(e, hi[i].clone()));
    }
    out
}

/// Vertices of `cell ∩ box` in floating point.
fn clipped_vertices(p: &HPolyhedron, lo: &[Rational], hi: &[Rational]) -> Result<Vec<Vec<f64>>, CliError> {
    let clip = p.intersect(&HPolyhedron::new(p.dim(), bounding_box(lo, hi))?)?;
    Ok(clip
        .vertices_and_rays()
        .map(|v| v.vertices.iter().map(|x| x.iter().map(rational_to_f64).collect()).collect())
        .unwrap_or_default())
}

fn sort_by_angle(pts: &mut [(f64, f64)]) {
    let n = pts.len() as f64;
    let cx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let cy = pts.iter().map(|p| p.1).sum::<f64>() / n;
    pts.sort_by(|a, b| {
        let ta = (a.1 - cy).atan2(a.0 - cx);
        let tb = (b.1 - cy).atan2(b.0 - cx);
        ta.total_cmp(&tb)
    });
}

/// Planar picture of the amoebas of a bivariate polynomial over a window.
///
/// With the archimedean place present, coordinates at a finite place `p` are
/// multiplied by `ln p` so that all parts live in natural-log units.
pub fn plot_planar(
    f: &LaurentPoly,
    places: &[Place],
    sign: Sign,
    window: [f64; 4],
    samples: usize,
    tol: f64,
    title: &str,
) -> Result<String, CliError> {
    if f.dim() != 2 {
        return Err(CliError::Invalid(format!("plot needs 2 variables, got {}", f.dim())));
    }
    let [x0, x1, y0, y1] = window;
    if !(x0 < x1 && y0 < y1) {
        return Err(CliError::Invalid("window must satisfy x0 < x1 and y0 < y1".into()));
    }
    if samples == 0 {
        return Err(CliError::Invalid("samples must be positive".into()));
    }
    let (size, margin) = (600.0, 40.0);
    let mut canvas = Canvas::new(size + 2.0 * margin, size + 2.0 * margin + 20.0 * places.len() as f64);
    let to_px = |x: f64, y: f64| (margin + (x - x0) / (x1 - x0) * size, margin + (y1 - y) / (y1 - y0) * size);
    let log_units = places.contains(&Place::Archimedean);

    if x0 < 0.0 && x1 > 0.0 {
        canvas.line(to_px(0.0, y0), to_px(0.0, y1), "#dddddd", 1.0);
    }
    if y0 < 0.0 && y1 > 0.0 {
        canvas.line(to_px(x0, 0.0), to_px(x1, 0.0), "#dddddd", 1.0);
    }

    if log_units {
        let (dx, dy) = ((x1 - x0) / samples as f64, (y1 - y0) / samples as f64);
        for j in 0..samples {
            let y = y0 + (j as f64 + 0.5) * dy;
            let mut run: Option<usize> = None;
            for i in 0..=samples {
                let inside = i < samples && {
                    let x = x0 + (i as f64 + 0.5) * dx;
                    matches!(arch_membership(f, &[x, y], tol)?, ArchVerdict::InAmoeba { .. })
                };
                match (inside, run) {
                    (true, None) => run = Some(i),
                    (false, Some(start)) => {
                        let (px, py) = to_px(x0 + start as f64 * dx, y + 0.5 * dy);
                        canvas.rect(px, py, (i - start) as f64 * dx / (x1 - x0) * size, dy / (y1 - y0) * size, ARCH, 0.6);
                        run = None;
                    }
                    _ => {}
                }
            }
        }
    }

    for &place in places.iter().filter(|p| !p.is_archimedean()) {
        let t = tropical_hypersurface(f, place, sign)?;
        let color = place_color(place);
        let scale = match place {
            Place::Finite(p) if log_units => p.ln(),
            _ => 1.0,
        };
        if t.special() == Special::WholeSpace {
            canvas.polygon(&[to_px(x0, y0), to_px(x1, y0), to_px(x1, y1), to_px(x0, y1)], color, 0.3);
            continue;
        }
        let lo = [exact(x0 / scale)?, exact(y0 / scale)?];
        let hi = [exact(x1 / scale)?, exact(y1 / scale)?];
        for cell in t.cells() {
            let verts = clipped_vertices(&cell.polyhedron, &lo, &hi)?;
            let mut pts: Vec<(f64, f64)> = verts.iter().map(|v| to_px(v[0] * scale, v[1] * scale)).collect();
            match pts.len() {
                0 => {}
                1 => canvas.circle(pts[0], 4.0, color, color),
                2 => canvas.line(pts[0], pts[1], color, 2.5),
                _ => {
                    sort_by_angle(&mut pts);
                    canvas.polygon(&pts, color, 0.3);
                }
            }
        }
    }

    for (k, place) in places.iter().enumerate() {
        let y = size + 2.0 * margin + 20.0 * k as f64;
        canvas.rect(margin, y - 10.0, 12.0, 12.0, place_color(*place), 1.0);
        canvas.text(margin + 18.0, y, &place.to_string());
    }
    let units = if log_units { "log" } else { "valuation" };
    canvas.text(margin, 25.0, &format!("{title} [{sign}, {units} units]"));
    Ok(canvas.finish(title))
}

/// Points of a cell clipped to `[-r, r]^d`, radially projected to the unit sphere.
fn cell_directions(cell: &Cell, r: i64) -> Result<Vec<Vec<f64>>, CliError> {
    let d = cell.polyhedron.dim();
    let lo = vec![Rational::from_integer((-r).into()); d];
    let hi = vec![Rational::from_integer(r.into()); d];
    let verts = clipped_vertices(&cell.polyhedron, &lo, &hi)?;
    if verts.is_empty() {
        return Ok(Vec::new());
    }
    let mut pts = verts.clone();
    let steps = 24;
    let centroid: Vec<f64> = (0..d).map(|i| verts.iter().map(|v| v[i]).sum::<f64>() / verts.len() as f64).collect();
    pts.push(centroid.clone());
    for a in 0..verts.len() {
        for b in a + 1..verts.len() {
            for s in 1..steps {
                let t = s as f64 / steps as f64;
                let edge: Vec<f64> = (0..d).map(|i| verts[a][i] * (1.0 - t) + verts[b][i] * t).collect();
                if cell.dim >= 2 {
                    for k in 1..steps / 2 {
                        let w = k as f64 / (steps / 2) as f64;
                        pts.push((0..d).map(|i| edge[i] * (1.0 - w) + centroid[i] * w).collect());
                    }
                }
                pts.push(edge);
            }
        }
    }
    Ok(pts
        .into_iter()
        .filter_map(|p| {
            let n = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            (n > 1e-9).then(|| p.iter().map(|x| x / n).collect())
        })
        .collect())
}

fn direction_f64(v: &[Rational]) -> Vec<f64> {
    let p: Vec<f64> = v.iter().map(rational_to_f64).collect();
    let n = p.iter().map(|x| x * x).sum::<f64>().sqrt();
    p.iter().map(|x| x / n).collect()
}

/// The set on the circle (d = 2) or on two stereographic hemisphere disks (d = 3).
pub fn plot_spherical(set: &SphericalSet, title: &str) -> Result<String, CliError> {
    let d = set.dim;
    if d != 2 && d != 3 {
        return Err(CliError::Invalid(format!("spherical plots need 2 or 3 variables, got {d}")));
    }
    let radius = 200.0;
    let margin = 50.0;
    let disks = if d == 2 { 1 } else { 2 };
    let width = disks as f64 * (2.0 * radius + 2.0 * margin);
    let height = 2.0 * radius + 2.0 * margin + 20.0 * set.parts.len() as f64 + 20.0;
    let mut canvas = Canvas::new(width, height);
    let centre = |k: usize| (margin + radius + k as f64 * (2.0 * radius + 2.0 * margin), margin + radius);
    for k in 0..disks {
        let c = centre(k);
        canvas.circle(c, radius, "none", "#bbbbbb");
        if d == 3 {
            canvas.text(c.0 - radius, margin - 15.0, if k == 0 { "upper hemisphere, stereographic" } else { "lower hemisphere, stereographic" });
        }
    }
    // (disk index, x, y) in unit-disk coordinates
    let project = |u: &[f64]| -> Vec<(usize, f64, f64)> {
        if d == 2 {
            return vec![(0, u[0], u[1])];
        }
        let mut out = Vec::new();
        if u[2] >= -1e-12 {
            out.push((0, u[0] / (1.0 + u[2]), u[1] / (1.0 + u[2])));
        }
        if u[2] <= 1e-12 {
            out.push((1, u[0] / (1.0 - u[2]), u[1] / (1.0 - u[2])));
        }
        out
    };
    for part in &set.parts {
        let color = place_color(part.place);
        let dirs: Vec<Vec<f64>> = match &part.kind {
            PartKind::Cells(cells) => {
                let mut all = Vec::new();
                for c in cells {
                    all.extend(cell_directions(c, 16)?);
                }
                all
            }
            PartKind::Archimedean { samples, .. } => samples.iter().map(|s| direction_f64(&s.direction)).collect(),
        };
        let mut seen = BTreeSet::new();
        for u in dirs {
            for (k, x, y) in project(&u) {
                let c = centre(k);
                let px = c.0 + x * radius;
                let py = c.1 - y * radius;
                if seen.insert((k, (px * 2.0).round() as i64, (py * 2.0).round() as i64)) {
                    canvas.circle((px, py), 2.0, color, "none");
                }
            }
        }
    }
    for (k, part) in set.parts.iter().enumerate() {
        let y = 2.0 * radius + 2.0 * margin + 20.0 * k as f64;
        canvas.rect(margin, y - 10.0, 12.0, 12.0, place_color(part.place), 1.0);
        canvas.text(margin + 18.0, y, &part.place.to_string());
    }
    canvas.text(margin, height - 8.0, title);
    Ok(canvas.finish(title))
}
