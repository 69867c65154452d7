//! Minimal SVG 1.1 writer for points, lines and conics in the affine chart.

use std::fmt::Write as _;

use dancing_core::{Conic3, HomVec3};

/// World-coordinate window mapped onto the drawing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub width: f64,
    pub height: f64,
}

impl Viewport {
    pub fn square(half: f64, pixels: f64) -> Self {
        Self {
            xmin: -half,
            xmax: half,
            ymin: -half,
            ymax: half,
            width: pixels,
            height: pixels,
        }
    }

    /// The smallest square window holding `points` with a margin.
    pub fn around(points: &[[f64; 2]], pixels: f64) -> Self {
        let mut half: f64 = 1.0;
        for p in points {
            half = half.max(p[0].abs()).max(p[1].abs());
        }
        Self::square(1.3 * half, pixels)
    }

    fn map(&self, p: [f64; 2]) -> [f64; 2] {
        [
            (p[0] - self.xmin) / (self.xmax - self.xmin) * self.width,
            (self.ymax - p[1]) / (self.ymax - self.ymin) * self.height,
        ]
    }

    fn contains(&self, p: [f64; 2], slack: f64) -> bool {
        let dx = slack * (self.xmax - self.xmin);
        let dy = slack * (self.ymax - self.ymin);
        p[0] >= self.xmin - dx && p[0] <= self.xmax + dx && p[1] >= self.ymin - dy && p[1] <= self.ymax + dy
    }
}

pub struct SvgDoc {
    view: Viewport,
    title: String,
    body: String,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl SvgDoc {
    pub fn new(view: Viewport, title: &str) -> Self {
        Self {
            view,
            title: title.to_string(),
            body: String::new(),
        }
    }

    /// Draws the visible part of the line `l₀x + l₁y + l₂ = 0`. Returns
    /// `false` for the line at infinity or a line missing the window.
    pub fn line(&mut self, l: &HomVec3, class: &str, stroke: &str, dashed: bool) -> bool {
        let [a, b, c] = l.c;
        let v = self.view;
        let mut hits: Vec<[f64; 2]> = Vec::new();
        if b.abs() > 1e-12 {
            for x in [v.xmin, v.xmax] {
                hits.push([x, -(a * x + c) / b]);
            }
        }
        if a.abs() > 1e-12 {
            for y in [v.ymin, v.ymax] {
                hits.push([-(b * y + c) / a, y]);
            }
        }
        hits.retain(|p| v.contains(*p, 1e-9));
        let Some(&first) = hits.first() else {
            return false;
        };
        let Some(&last) = hits
            .iter()
            .max_by(|p, q| (p[0] - first[0]).hypot(p[1] - first[1]).total_cmp(&(q[0] - first[0]).hypot(q[1] - first[1])))
        else {
            return false;
        };
        if (last[0] - first[0]).hypot(last[1] - first[1]) == 0.0 {
            return false;
        }
        let p = v.map(first);
        let q = v.map(last);
        let dash = if dashed { r#" stroke-dasharray="6,4""# } else { "" };
        let _ = writeln!(
            self.body,
            r#"  <line class="{class}" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{stroke}" stroke-width="2"{dash}/>"#,
            p[0], p[1], q[0], q[1]
        );
        true
    }

    pub fn point(&mut self, p: [f64; 2], class: &str, fill: &str, radius: f64) {
        let q = self.view.map(p);
        let _ = writeln!(
            self.body,
            r#"  <circle class="{class}" cx="{:.3}" cy="{:.3}" r="{radius:.1}" fill="{fill}" stroke="black" stroke-width="1"/>"#,
            q[0], q[1]
        );
    }

    pub fn label(&mut self, p: [f64; 2], text: &str) {
        let q = self.view.map(p);
        let _ = writeln!(
            self.body,
            r#"  <text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="14">{}</text>"#,
            q[0] + 8.0,
            q[1] - 8.0,
            escape(text)
        );
    }

    pub fn polyline(&mut self, pts: &[[f64; 2]], class: &str, stroke: &str) {
        if pts.len() < 2 {
            return;
        }
        let mut coords = String::new();
        for (i, p) in pts.iter().enumerate() {
            let q = self.view.map(*p);
            if i > 0 {
                coords.push(' ');
            }
            let _ = write!(coords, "{:.3},{:.3}", q[0], q[1]);
        }
        let _ = writeln!(
            self.body,
            r#"  <polyline class="{class}" points="{coords}" fill="none" stroke="{stroke}" stroke-width="2"/>"#
        );
    }

    /// Draws the real affine points of a conic inside the window, as one
    /// `<g>` of polylines. Returns `false` when nothing is visible.
    pub fn conic(&mut self, c: &Conic3, class: &str, stroke: &str) -> bool {
        let pieces = conic_polylines(c, &self.view);
        if pieces.is_empty() {
            return false;
        }
        let _ = writeln!(self.body, r#"  <g class="{class}">"#);
        for piece in &pieces {
            self.polyline(piece, "arc", stroke);
        }
        self.body.push_str("  </g>\n");
        true
    }

    pub fn finish(self) -> String {
        let v = self.view;
        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = v.width,
            h = v.height
        );
        let _ = writeln!(s, "  <title>{}</title>", escape(&self.title));
        let _ = writeln!(
            s,
            r##"  <rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##,
            v.width, v.height
        );
        s.push_str(&self.body);
        s.push_str("</svg>\n");
        s
    }
}

/// A real point of the conic inside the window, from horizontal sections.
fn seed_point(c: &Conic3, view: &Viewport) -> Option<[f64; 2]> {
    let m = c.matrix();
    for k in 0..=64 {
        let y = view.ymin + (view.ymax - view.ymin) * k as f64 / 64.0;
        // m00 x² + 2(m01 y + m02) x + (m11 y² + 2 m12 y + m22) = 0
        let qa = m[(0, 0)];
        let qb = 2.0 * (m[(0, 1)] * y + m[(0, 2)]);
        let qc = m[(1, 1)] * y * y + 2.0 * m[(1, 2)] * y + m[(2, 2)];
        let roots: Vec<f64> = if qa.abs() < 1e-14 {
            if qb.abs() < 1e-14 {
                Vec::new()
            } else {
                vec![-qc / qb]
            }
        } else {
            let disc = qb * qb - 4.0 * qa * qc;
            if disc < 0.0 {
                Vec::new()
            } else {
                vec![(-qb + disc.sqrt()) / (2.0 * qa), (-qb - disc.sqrt()) / (2.0 * qa)]
            }
        };
        if let Some(x) = roots.into_iter().find(|x| view.contains([*x, y], 0.0)) {
            return Some([x, y]);
        }
    }
    None
}

/// Sweeps the pencil of lines through a point `q` of the conic: the line in
/// direction `d` meets it again at `(dᵀMd) q − 2 (qᵀMd) d`.
fn conic_polylines(c: &Conic3, view: &Viewport) -> Vec<Vec<[f64; 2]>> {
    let Some(q0) = seed_point(c, view) else {
        return Vec::new();
    };
    let q = HomVec3::new(q0[0], q0[1], 1.0);
    let steps = 1440;
    let span = (view.xmax - view.xmin).max(view.ymax - view.ymin);
    let mut pieces: Vec<Vec<[f64; 2]>> = Vec::new();
    let mut current: Vec<[f64; 2]> = Vec::new();
    for k in 0..=steps {
        let theta = std::f64::consts::PI * k as f64 / steps as f64;
        let d = HomVec3::new(theta.cos(), theta.sin(), 0.0);
        let p = q.scaled(c.eval(&d)).add(&d.scaled(-2.0 * c.bilinear(&q, &d)));
        let visible = p.c[2].abs() > 1e-12 && {
            let a = [p.c[0] / p.c[2], p.c[1] / p.c[2]];
            view.contains(a, 0.05)
        };
        if visible {
            let a = [p.c[0] / p.c[2], p.c[1] / p.c[2]];
            if let Some(prev) = current.last() {
                if (a[0] - prev[0]).hypot(a[1] - prev[1]) > 0.25 * span {
                    pieces.push(std::mem::take(&mut current));
                }
            }
            current.push(a);
        } else if !current.is_empty() {
            pieces.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        pieces.push(current);
    }
    // θ = 0 and θ = π give the same point; join the ends when both are drawn
    if pieces.len() > 1 {
        let first = pieces[0][0];
        let last = *pieces.last().and_then(|p| p.last()).expect("non-empty");
        if (first[0] - last[0]).hypot(first[1] - last[1]) < 1e-9 * span {
            let head = pieces.remove(0);
            pieces.last_mut().expect("non-empty").extend(head.into_iter().skip(1));
        }
    }
    pieces.retain(|p| p.len() > 1);
    pieces
}
