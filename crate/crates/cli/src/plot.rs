//! SVG renderings of dancing configurations.

use std::path::Path;

use dancing_core::conic::{dancing_conics_residual, pencil_conic_through};
use dancing_core::ellipse::{construct_null_tangent, null_configuration, EllipseZ};
use dancing_core::flat::{alpha_surface_point, dancing_flat_oracle, relative_flat_residual, AlphaSurfaceChart};
use dancing_core::projective::{conic_intersect, cross_join};
use dancing_core::{Conic3, HomVec3};

use crate::svg::{SvgDoc, Viewport};
use crate::CliError;

pub const PLOT_KINDS: [&str; 4] = ["dancing-pair", "alpha-surface", "ellipse-dance", "conic-dance"];

const PIXELS: f64 = 600.0;

/// Parameters of a plot; each kind reads the fields it needs.
#[derive(Debug, Clone, Default)]
pub struct PlotParams {
    pub b: Option<f64>,
    /// Numbers read from a pair file.
    pub values: Option<Vec<f64>>,
}

/// Parses whitespace- or comma-separated numbers; `#` starts a comment.
pub fn parse_numbers(text: &str) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let v: f64 = tok
                .parse()
                .map_err(|_| CliError::InvalidParams(format!("not a number: `{tok}`")))?;
            out.push(v);
        }
    }
    Ok(out)
}

pub fn read_pair_file(path: &Path) -> Result<Vec<f64>, CliError> {
    parse_numbers(&std::fs::read_to_string(path)?)
}

fn take<const N: usize>(values: &[f64], what: &str) -> Result<[f64; N], CliError> {
    values
        .try_into()
        .map_err(|_| CliError::InvalidParams(format!("{what} needs {N} numbers, got {}", values.len())))
}

fn vec3(v: &[f64]) -> HomVec3 {
    HomVec3::new(v[0], v[1], v[2])
}

/// Six entries `A₁₁ A₁₂ A₂₂ A₁₃ A₂₃ A₃₃` of a symmetric matrix.
fn conic6(v: &[f64]) -> Conic3 {
    Conic3::from_rows([[v[0], v[1], v[3]], [v[1], v[2], v[4]], [v[3], v[4], v[5]]])
}

fn affine(p: &HomVec3) -> Option<[f64; 2]> {
    p.to_affine().map(|(x, y)| [x, y])
}

pub fn render(kind: &str, params: &PlotParams) -> Result<String, CliError> {
    match kind {
        "dancing-pair" => dancing_pair(params),
        "alpha-surface" => alpha_surface(params),
        "ellipse-dance" => ellipse_dance(params),
        "conic-dance" => conic_dance(params),
        other => Err(CliError::InvalidParams(format!(
            "unknown plot kind `{other}` (expected one of {})",
            PLOT_KINDS.join(", ")
        ))),
    }
}

pub fn plot(kind: &str, params: &PlotParams, out: &Path) -> Result<(), CliError> {
    let svg = render(kind, params)?;
    std::fs::write(out, svg)?;
    Ok(())
}

/// `P = (0,0,1)`, `L: x = 2`, `L̃: y = 1`, `P̃ = (−1, −½, 1)` on the line
/// through `P` and `L ∩ L̃ = (2, 1)`.
pub const DEFAULT_QUADRUPLE: [f64; 12] = [0.0, 0.0, 1.0, 1.0, 0.0, -2.0, -1.0, -0.5, 1.0, 0.0, 1.0, -1.0];

fn dancing_pair(params: &PlotParams) -> Result<String, CliError> {
    let v: [f64; 12] = match &params.values {
        Some(v) => take(v, "dancing-pair")?,
        None => DEFAULT_QUADRUPLE,
    };
    let (p, l, pt, lt) = (vec3(&v[0..3]), vec3(&v[3..6]), vec3(&v[6..9]), vec3(&v[9..12]));
    let residual = relative_flat_residual(&p, &l, &pt, &lt)?;
    let oracle = dancing_flat_oracle(&p, &l, &pt, &lt)?;
    let meet = cross_join(&l, &lt)?;
    let join = cross_join(&p, &pt)?;
    let marks: Vec<[f64; 2]> = [p, pt, meet].iter().filter_map(affine).collect();
    let title = format!("dancing pair: relative residual {residual:.3e}, collinearity {oracle:.3e}");
    let mut doc = SvgDoc::new(Viewport::around(&marks, PIXELS), &title);
    doc.line(&l, "line", "#1f77b4", false);
    doc.line(&lt, "line", "#d62728", false);
    doc.line(&join, "line", "#555555", true);
    for (pt_, name, fill) in [(p, "P", "#1f77b4"), (pt, "P~", "#d62728"), (meet, "L^L~", "#2ca02c")] {
        if let Some(a) = affine(&pt_) {
            doc.point(a, "point", fill, 6.0);
            doc.label(a, name);
        }
    }
    Ok(doc.finish())
}

/// The line `y = 0` and the point `(½, 0)` on it.
pub const DEFAULT_ALPHA_CHART: [f64; 6] = [0.0, 1.0, 0.0, 0.5, 0.0, 1.0];

fn alpha_surface(params: &PlotParams) -> Result<String, CliError> {
    let v: [f64; 6] = match &params.values {
        Some(v) => take(v, "alpha-surface")?,
        None => DEFAULT_ALPHA_CHART,
    };
    let chart = AlphaSurfaceChart::new(vec3(&v[0..3]), vec3(&v[3..6]))?;
    let params_st = [-1.5, -0.75, 0.75, 1.5];
    let mut pairs = Vec::new();
    for (k, &s) in params_st.iter().enumerate() {
        let t = params_st[params_st.len() - 1 - k];
        if let Ok(pair) = alpha_surface_point(&chart, s, t) {
            pairs.push(pair);
        }
    }
    let mut marks: Vec<[f64; 2]> = pairs.iter().filter_map(|(p, _)| affine(p)).collect();
    marks.extend(affine(&chart.point));
    let mut doc = SvgDoc::new(Viewport::around(&marks, PIXELS), "alpha-surface: points of l paired with lines through p");
    doc.line(&chart.line, "line", "#000000", false);
    for (p, l) in &pairs {
        doc.line(l, "line", "#ff7f0e", true);
        if let Some(a) = affine(p) {
            doc.point(a, "point", "#1f77b4", 5.0);
        }
    }
    if let Some(a) = affine(&chart.point) {
        doc.point(a, "point", "#d62728", 7.0);
        doc.label(a, "p");
    }
    Ok(doc.finish())
}

fn ellipse_conic(z: &EllipseZ) -> Conic3 {
    let [e, f, g] = z.efg();
    Conic3::from_rows([[e, f, 0.0], [f, g, 0.0], [0.0, 0.0, -1.0]])
}

fn ellipse_dance(params: &PlotParams) -> Result<String, CliError> {
    let b = params.b.unwrap_or(2.0);
    let candidates = [[0.6, 0.8, 0.5], [0.8, 0.6, 1.0], [0.3, 1.0, 0.7], [1.0, 1.0, 1.0]];
    let v = candidates
        .iter()
        .find_map(|c| construct_null_tangent(b, c[0], c[1], c[2]))
        .ok_or_else(|| CliError::InvalidParams(format!("no real null tangent found at b = {b}")))?;
    let cfg = null_configuration(b, v)?;
    let section = EllipseZ::new(0.0, b)?;
    let marks = [[1.0, 0.0], cfg.turning_point, [b.sqrt().recip(), b.sqrt()]];
    let title = format!(
        "ellipse dance at b = {b}: null tangent ({:.4}, {:.4}, {:.4}, {:.4})",
        v[0], v[1], v[2], v[3]
    );
    let mut doc = SvgDoc::new(Viewport::around(&marks, PIXELS), &title);
    doc.conic(&ellipse_conic(&section), "ellipse", "#1f77b4");
    doc.conic(&ellipse_conic(&cfg.z_star), "ellipse", "#d62728");
    doc.point([1.0, 0.0], "point", "#000000", 6.0);
    doc.label([1.0, 0.0], "u");
    doc.point(cfg.turning_point, "turning-point", "#2ca02c", 7.0);
    doc.label(cfg.turning_point, "turning point");
    Ok(doc.finish())
}

/// `a = (2,0,1)`, `A = x² + y² − 1`, `b = (√2, √2/2, 1)`, `B = 2x² + y² − 1`.
pub fn default_conic_quadruple() -> [f64; 18] {
    let s = 2f64.sqrt();
    [
        2.0, 0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, -1.0, s, s / 2.0, 1.0, 2.0, 0.0, 1.0, 0.0, 0.0, -1.0,
    ]
}

fn conic_dance(params: &PlotParams) -> Result<String, CliError> {
    let v: [f64; 18] = match &params.values {
        Some(v) => take(v, "conic-dance")?,
        None => default_conic_quadruple(),
    };
    let (a, ca, b, cb) = (vec3(&v[0..3]), conic6(&v[3..9]), vec3(&v[9..12]), conic6(&v[12..18]));
    let residual = dancing_conics_residual(&a, &ca, &b, &cb)?;
    let cc = pencil_conic_through(&a, &ca, &cb)?;
    let meet = conic_intersect(&ca, &cb)?;
    let base: Vec<([f64; 2], usize)> = meet
        .points
        .iter()
        .filter_map(|ip| ip.point.to_real(1e-9).and_then(|p| affine(&p)).map(|q| (q, ip.multiplicity)))
        .collect();
    let mut marks: Vec<[f64; 2]> = base.iter().map(|(p, _)| *p).collect();
    marks.extend(affine(&a));
    marks.extend(affine(&b));
    let title = format!("dancing conics: residual {residual:.3e}; C is the pencil conic through a");
    let mut doc = SvgDoc::new(Viewport::around(&marks, PIXELS), &title);
    doc.conic(&ca, "conic", "#1f77b4");
    doc.conic(&cb, "conic", "#d62728");
    doc.conic(&cc, "conic", "#2ca02c");
    for (p, name) in [(a, "a"), (b, "b")] {
        if let Some(q) = affine(&p) {
            doc.point(q, "point", "#000000", 6.0);
            doc.label(q, name);
        }
    }
    // one marker per intersection, counted with multiplicity
    for (p, mult) in &base {
        for k in 0..*mult {
            doc.point(*p, "point", "#ffbf00", 5.0 + 3.0 * (mult - 1 - k) as f64);
        }
    }
    Ok(doc.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_quadruple_dances() {
        let v = DEFAULT_QUADRUPLE;
        let r = relative_flat_residual(&vec3(&v[0..3]), &vec3(&v[3..6]), &vec3(&v[6..9]), &vec3(&v[9..12])).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn numbers_parse_with_comments() {
        assert_eq!(parse_numbers("1, 2 3 # x\n4").unwrap(), vec![1.0, 2.0, 3.0, 4.0]);
        assert!(matches!(parse_numbers("1 x"), Err(CliError::InvalidParams(_))));
    }
}
