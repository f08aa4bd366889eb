//! Deterministic SVG rendering of disks, region boundaries, eigenvalues and
//! homotopy paths.

use std::f64::consts::PI;
use std::fmt::Write;

use gershgorin::{Complex64, Contour, EigenPath, RegionSet};

pub const CANVAS: f64 = 640.0;
const MARGIN: f64 = 32.0;
const POINT_MARKER_RADIUS: f64 = 3.0;
const CROSS_HALF: f64 = 4.0;

pub struct PlotInput<'a> {
    pub regions: &'a RegionSet,
    pub contours: &'a [Contour],
    pub eigenvalues: &'a [Complex64],
    pub paths: &'a [EigenPath],
}

/// World-to-canvas map with equal scale on both axes, imaginary axis up.
struct View {
    min_re: f64,
    max_im: f64,
    scale: f64,
}

impl View {
    fn fit(input: &PlotInput<'_>) -> Self {
        let mut lo = Complex64::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut include = |z: Complex64, r: f64| {
            lo.re = lo.re.min(z.re - r);
            lo.im = lo.im.min(z.im - r);
            hi.re = hi.re.max(z.re + r);
            hi.im = hi.im.max(z.im + r);
        };
        for d in input.regions.disks() {
            include(d.center, d.radius);
        }
        for arc in input.contours.iter().flat_map(|c| &c.arcs) {
            include(arc.center, arc.radius);
        }
        for &z in input.eigenvalues {
            include(z, 0.0);
        }
        let span = (hi.re - lo.re).max(hi.im - lo.im).max(1e-9) * 1.1;
        let mid = (lo + hi) * 0.5;
        Self {
            min_re: mid.re - span / 2.0,
            max_im: mid.im + span / 2.0,
            scale: (CANVAS - 2.0 * MARGIN) / span,
        }
    }

    fn x(&self, re: f64) -> f64 {
        MARGIN + (re - self.min_re) * self.scale
    }

    fn y(&self, im: f64) -> f64 {
        MARGIN + (self.max_im - im) * self.scale
    }
}

/// Three decimals, never `-0.000`.
fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

fn contour_path(view: &View, contour: &Contour) -> String {
    let mut d = String::new();
    let mut cursor: Option<Complex64> = None;
    for arc in &contour.arcs {
        let start = arc.start_point();
        if cursor.is_none_or(|c| (c - start).norm() > 1e-9 * (1.0 + arc.radius)) {
            if cursor.is_some() {
                d.push('Z');
            }
            let _ = write!(d, "M{} {}", num(view.x(start.re)), num(view.y(start.im)));
        }
        // split so no single SVG arc command spans more than half a turn
        let pieces = (arc.sweep() / PI).ceil().max(1.0) as usize;
        let r = num(arc.radius * view.scale);
        for k in 1..=pieces {
            let theta = arc.start + arc.sweep() * k as f64 / pieces as f64;
            let p = arc.point_at(theta);
            // counterclockwise in the plane is sweep-flag 0 once y points down
            let _ = write!(
                d,
                "A{r} {r} 0 0 0 {} {}",
                num(view.x(p.re)),
                num(view.y(p.im))
            );
        }
        cursor = Some(arc.end_point());
    }
    if cursor.is_some() {
        d.push('Z');
    }
    d
}

pub fn render(input: &PlotInput<'_>) -> String {
    let view = View::fit(input);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
        c = CANVAS
    );
    let _ = writeln!(
        s,
        "<style>.region{{fill:#4a90d9;fill-opacity:0.08;fill-rule:evenodd;stroke:#4a90d9;stroke-dasharray:4 3}}\
.disk{{fill:none;stroke:#333}}.disk-point{{fill:#333}}.path{{fill:none;stroke:#d95f02;stroke-width:1.5}}\
.eig{{stroke:#b00;stroke-width:2}}.axis{{stroke:#bbb}}</style>"
    );
    let _ = writeln!(
        s,
        r##"<rect width="{c}" height="{c}" fill="#fff"/>"##,
        c = CANVAS
    );

    let (x0, y0) = (view.x(0.0), view.y(0.0));
    if (0.0..=CANVAS).contains(&y0) {
        let _ = writeln!(
            s,
            r#"<line class="axis" x1="0" y1="{y}" x2="{c}" y2="{y}"/>"#,
            y = num(y0),
            c = CANVAS
        );
    }
    if (0.0..=CANVAS).contains(&x0) {
        let _ = writeln!(
            s,
            r#"<line class="axis" x1="{x}" y1="0" x2="{x}" y2="{c}"/>"#,
            x = num(x0),
            c = CANVAS
        );
    }

    let _ = writeln!(s, r#"<g id="regions">"#);
    for (r, contour) in input.contours.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<path id="region-{r}" class="region" d="{}"/>"#,
            contour_path(&view, contour)
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="disks">"#);
    for d in input.regions.disks() {
        let (cx, cy) = (num(view.x(d.center.re)), num(view.y(d.center.im)));
        if d.radius > 0.0 {
            let _ = writeln!(
                s,
                r#"<circle id="disk-{}" class="disk" cx="{cx}" cy="{cy}" r="{}"/>"#,
                d.row,
                num(d.radius * view.scale)
            );
        } else {
            let _ = writeln!(
                s,
                r#"<circle id="disk-{}" class="disk-point" cx="{cx}" cy="{cy}" r="{}"/>"#,
                d.row,
                num(POINT_MARKER_RADIUS)
            );
        }
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="paths">"#);
    for p in input.paths {
        let points: Vec<String> = p
            .points
            .iter()
            .map(|(_, z)| format!("{},{}", num(view.x(z.re)), num(view.y(z.im))))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline id="path-{}" class="path" points="{}"/>"#,
            p.index,
            points.join(" ")
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="eigenvalues">"#);
    let h = CROSS_HALF;
    for (k, z) in input.eigenvalues.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<g id="eig-{k}" class="eig" transform="translate({},{})"><path d="M{} {}L{h} {h}M{} {h}L{h} {}"/></g>"#,
            num(view.x(z.re)),
            num(view.y(z.im)),
            -h,
            -h,
            -h,
            -h
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}
