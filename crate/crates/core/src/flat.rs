//! Dancing on the real projective plane.
//!
//! A pair is a point `P` and a line `L` with `P·L ≠ 0`. Two pairs dance when
//! `P`, `P̃` and `L ∩ L̃` are collinear, which after eliminating the pencil
//! parameter reads
//!
//! ```text
//! (P·L)(P̃·L̃) − (P̃·L)(P·L̃) = 0.
//! ```
//!
//! In the affine chart `P = (x⁰, x¹, 1)`, `L = (ζ₀, ζ₁, 1 − x·ζ)` (so that
//! `P·L = 1`) the second-order expansion of that residual is the metric
//! `g = dζ_A dx^A + (ζ·dx)²`.

use crate::error::{Error, Result};
use crate::exact::{dot, product_difference};
use crate::projective::{collinear_det, cross_join, HomVec3, HOM_TOL};

/// Affine coordinates `(x⁰, x¹, ζ₀, ζ₁)` of a non-incident (point, line) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatPairM {
    pub x: [f64; 2],
    pub zeta: [f64; 2],
}

impl FlatPairM {
    pub const fn new(x0: f64, x1: f64, zeta0: f64, zeta1: f64) -> Self {
        Self {
            x: [x0, x1],
            zeta: [zeta0, zeta1],
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.x[0], self.x[1], self.zeta[0], self.zeta[1]]
    }

    pub fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    /// `self + eps * v`, componentwise in the chart.
    pub fn offset(&self, v: &TangentFlat, eps: f64) -> Self {
        Self::new(
            self.x[0] + eps * v.x[0],
            self.x[1] + eps * v.x[1],
            self.zeta[0] + eps * v.zeta[0],
            self.zeta[1] + eps * v.zeta[1],
        )
    }

    /// Chart coordinates of a projective pair. Fails when the point is at
    /// infinity (outside the chart) or the pair is incident.
    pub fn from_pair(p: &HomVec3, l: &HomVec3) -> Result<Self> {
        let pl = p.dot(l);
        if pl.abs() <= HOM_TOL * p.norm() * l.norm() {
            return Err(Error::IncidentPair);
        }
        if p.c[2].abs() <= HOM_TOL * p.norm() {
            return Err(Error::DegenerateConfiguration(
                "point at infinity is outside the affine chart".into(),
            ));
        }
        let x = [p.c[0] / p.c[2], p.c[1] / p.c[2]];
        // L rescaled so that P·L = 1 with P = (x, 1)
        let k = p.c[2] / pl;
        Ok(Self {
            x,
            zeta: [l.c[0] * k, l.c[1] * k],
        })
    }
}

/// Tangent vector `(ẋ⁰, ẋ¹, ζ̇₀, ζ̇₁)` at a [`FlatPairM`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentFlat {
    pub x: [f64; 2],
    pub zeta: [f64; 2],
}

impl TangentFlat {
    pub const fn new(x0: f64, x1: f64, zeta0: f64, zeta1: f64) -> Self {
        Self {
            x: [x0, x1],
            zeta: [zeta0, zeta1],
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.x[0], self.x[1], self.zeta[0], self.zeta[1]]
    }

    pub fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

fn check_pair(p: &HomVec3, l: &HomVec3) -> Result<()> {
    if p.dot(l).abs() <= HOM_TOL * p.norm() * l.norm() {
        Err(Error::IncidentPair)
    } else {
        Ok(())
    }
}

/// `(P·L)(P̃·L̃) − (P̃·L)(P·L̃)` on the raw inputs, evaluated in double-double
/// arithmetic. Zero iff the pairs dance; see [`is_dancing_flat`] for the
/// scale-relative test.
pub fn dancing_flat_residual(
    p: &HomVec3,
    l: &HomVec3,
    pt: &HomVec3,
    lt: &HomVec3,
) -> Result<f64> {
    check_pair(p, l)?;
    check_pair(pt, lt)?;
    Ok(product_difference(dot(&p.c, &l.c), dot(&pt.c, &lt.c), dot(&pt.c, &l.c), dot(&p.c, &lt.c)))
}

/// The residual divided by `|P||L||P̃||L̃|`.
pub fn relative_flat_residual(p: &HomVec3, l: &HomVec3, pt: &HomVec3, lt: &HomVec3) -> Result<f64> {
    let r = dancing_flat_residual(p, l, pt, lt)?;
    Ok(r / (p.norm() * l.norm() * pt.norm() * lt.norm()))
}

pub fn is_dancing_flat(p: &HomVec3, l: &HomVec3, pt: &HomVec3, lt: &HomVec3, tol: f64) -> Result<bool> {
    Ok(relative_flat_residual(p, l, pt, lt)?.abs() <= tol)
}

/// Direct geometric test: is `L ∩ L̃` on the line through `P` and `P̃`?
/// Returns the normalized collinearity determinant.
pub fn dancing_flat_oracle(p: &HomVec3, l: &HomVec3, pt: &HomVec3, lt: &HomVec3) -> Result<f64> {
    check_pair(p, l)?;
    check_pair(pt, lt)?;
    if p.same_as(pt, HOM_TOL) {
        return Err(Error::ProportionalInputs);
    }
    let meet = cross_join(l, lt)?;
    Ok(collinear_det(p, pt, &meet))
}

/// Embedding of the chart into pairs with `P·L = 1`.
pub fn embed_affine(m: &FlatPairM) -> (HomVec3, HomVec3) {
    let [x0, x1] = m.x;
    let [z0, z1] = m.zeta;
    (
        HomVec3::new(x0, x1, 1.0),
        HomVec3::new(z0, z1, 1.0 - x0 * z0 - x1 * z1),
    )
}

/// `g(v, w)` for `g = dζ₀dx⁰ + dζ₁dx¹ + (ζ·dx)²`.
pub fn metric_flat(m: &FlatPairM, v: &TangentFlat, w: &TangentFlat) -> f64 {
    let cross = 0.5
        * (v.zeta[0] * w.x[0] + v.zeta[1] * w.x[1] + w.zeta[0] * v.x[0] + w.zeta[1] * v.x[1]);
    let zv = m.zeta[0] * v.x[0] + m.zeta[1] * v.x[1];
    let zw = m.zeta[0] * w.x[0] + m.zeta[1] * w.x[1];
    cross + zv * zw
}

/// Chart velocity induced by moving a projective pair `(P, L)` with
/// velocity `(Ṗ, L̇)` (both in homogeneous components).
pub fn chart_tangent(p: &HomVec3, l: &HomVec3, dp: &HomVec3, dl: &HomVec3) -> Result<TangentFlat> {
    FlatPairM::from_pair(p, l)?;
    let z = p.c[2];
    let dz = dp.c[2];
    let dx = [
        (dp.c[0] * z - p.c[0] * dz) / (z * z),
        (dp.c[1] * z - p.c[1] * dz) / (z * z),
    ];
    // ζ_A = L_A · z / (P·L)
    let pl = p.dot(l);
    let dpl = dp.dot(l) + p.dot(dl);
    let dk = (dz * pl - z * dpl) / (pl * pl);
    let k = z / pl;
    let dzeta = [dl.c[0] * k + l.c[0] * dk, dl.c[1] * k + l.c[1] * dk];
    Ok(TangentFlat { x: dx, zeta: dzeta })
}

/// An incident (line, point) pair: it labels one α-surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaSurfaceChart {
    pub line: HomVec3,
    pub point: HomVec3,
}

impl AlphaSurfaceChart {
    pub fn new(line: HomVec3, point: HomVec3) -> Result<Self> {
        if point.dot(&line).abs() > HOM_TOL * point.norm() * line.norm() {
            return Err(Error::DegenerateConfiguration(
                "alpha-surface needs an incident (point, line)".into(),
            ));
        }
        Ok(Self { line, point })
    }

    /// `l × p`: a point of `l` distinct from `p`, and also a line through `p`
    /// distinct from `l`.
    fn transversal(&self) -> HomVec3 {
        self.line.cross(&self.point)
    }

    /// `(P(s), L(t))` with `P(s) = (l×p) − s p` on `l` and
    /// `L(t) = l + t (l×p)` through `p`.
    pub fn pair(&self, s: f64, t: f64) -> (HomVec3, HomVec3) {
        let q = self.transversal();
        (q.add(&self.point.scaled(-s)), self.line.add(&q.scaled(t)))
    }

    /// Homogeneous velocities `(∂P/∂s, ∂L/∂t)`.
    pub fn pair_derivatives(&self) -> (HomVec3, HomVec3) {
        (self.point.scaled(-1.0), self.transversal())
    }
}

/// A point of the α-surface; rejects incident output.
pub fn alpha_surface_point(chart: &AlphaSurfaceChart, s: f64, t: f64) -> Result<(HomVec3, HomVec3)> {
    let (p, l) = chart.pair(s, t);
    if p.dot(&l).abs() <= HOM_TOL * p.norm() * l.norm() {
        return Err(Error::IncidentOutput);
    }
    Ok((p, l))
}

/// Chart tangents `(∂/∂s, ∂/∂t)` of the α-surface at `(s, t)`.
pub fn alpha_surface_tangents(chart: &AlphaSurfaceChart, s: f64, t: f64) -> Result<[TangentFlat; 2]> {
    let (p, l) = alpha_surface_point(chart, s, t)?;
    let (dp, dl) = chart.pair_derivatives();
    let zero = HomVec3::new(0.0, 0.0, 0.0);
    Ok([chart_tangent(&p, &l, &dp, &zero)?, chart_tangent(&p, &l, &zero, &dl)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    const O: HomVec3 = HomVec3::new(0., 0., 1.);

    #[test]
    fn residual_examples() {
        let r = dancing_flat_residual(&O, &O, &HomVec3::new(1., 0., 1.), &HomVec3::new(0., 1., 1.)).unwrap();
        assert_eq!(r, 0.0);
        let r = dancing_flat_residual(&O, &O, &HomVec3::new(1., 1., 1.), &HomVec3::new(1., 0., 1.)).unwrap();
        assert_eq!(r, 1.0);
        let (p, l) = (HomVec3::new(0.3, -2., 1.), HomVec3::new(1., 1., 0.5));
        assert_eq!(dancing_flat_residual(&p, &l, &p, &l).unwrap(), 0.0);
    }

    #[test]
    fn incident_pair_is_an_error() {
        let l = HomVec3::new(0., 1., 0.);
        assert_eq!(
            dancing_flat_residual(&O, &l, &O, &O),
            Err(Error::IncidentPair)
        );
    }

    #[test]
    fn oracle_examples() {
        let d = dancing_flat_oracle(&O, &O, &HomVec3::new(1., 0., 1.), &HomVec3::new(0., 1., 1.)).unwrap();
        assert_eq!(d, 0.0);
        let d = dancing_flat_oracle(&O, &O, &HomVec3::new(1., 1., 1.), &HomVec3::new(1., 0., 1.)).unwrap();
        assert!(d.abs() > 0.1);
        assert_eq!(
            dancing_flat_oracle(&O, &O, &O.scaled(2.0), &HomVec3::new(1., 0., 1.)),
            Err(Error::ProportionalInputs)
        );
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(embed_affine(&FlatPairM::new(0., 0., 0., 0.)), (O, O));
        assert_eq!(
            embed_affine(&FlatPairM::new(1., 0., 0., 0.)),
            (HomVec3::new(1., 0., 1.), O)
        );
        let (p, l) = embed_affine(&FlatPairM::new(1., 2., 3., 4.));
        assert_eq!(p, HomVec3::new(1., 2., 1.));
        assert_eq!(l, HomVec3::new(3., 4., -10.));
        assert_eq!(p.dot(&l), 1.0);
    }

    #[test]
    fn chart_round_trip() {
        let m = FlatPairM::new(0.4, -1.1, 2.0, 0.3);
        let (p, l) = embed_affine(&m);
        let back = FlatPairM::from_pair(&p.scaled(-3.0), &l.scaled(0.25)).unwrap();
        for (a, b) in m.as_array().iter().zip(back.as_array()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn metric_examples() {
        let v = TangentFlat::new(1., 0., 1., 0.);
        assert_eq!(metric_flat(&FlatPairM::new(0.7, 0.2, 0., 0.), &v, &v), 1.0);
        let v = TangentFlat::new(1., 0., 0., 0.);
        assert_eq!(metric_flat(&FlatPairM::new(0., 0., 1., 0.), &v, &v), 1.0);
        let v = TangentFlat::new(0., 0., 0.4, -2.);
        assert_eq!(metric_flat(&FlatPairM::new(1., 2., 3., 4.), &v, &v), 0.0);
    }

    #[test]
    fn alpha_chart_example() {
        let chart = AlphaSurfaceChart::new(HomVec3::new(0., 1., 0.), HomVec3::new(-1., 0., 0.)).unwrap();
        let (p, l) = alpha_surface_point(&chart, 2.5, -0.5).unwrap();
        assert_eq!(p, HomVec3::new(2.5, 0., 1.));
        assert_eq!(l, HomVec3::new(0., 1., -0.5));
        assert_eq!(p.dot(&l), -0.5);
        assert_eq!(alpha_surface_point(&chart, 1.0, 0.0), Err(Error::IncidentOutput));
    }

    #[test]
    fn chart_tangent_matches_finite_difference() {
        let chart = AlphaSurfaceChart::new(HomVec3::new(0.3, 1., -0.2), HomVec3::new(-1., 0.5, 1.)).unwrap();
        let (s, t, h) = (0.7, 1.3, 1e-6);
        let tangents = alpha_surface_tangents(&chart, s, t).unwrap();
        let coords = |s: f64, t: f64| {
            let (p, l) = chart.pair(s, t);
            FlatPairM::from_pair(&p, &l).unwrap().as_array()
        };
        let ds: Vec<f64> = (0..4).map(|i| (coords(s + h, t)[i] - coords(s - h, t)[i]) / (2. * h)).collect();
        let dt: Vec<f64> = (0..4).map(|i| (coords(s, t + h)[i] - coords(s, t - h)[i]) / (2. * h)).collect();
        for i in 0..4 {
            assert!((ds[i] - tangents[0].as_array()[i]).abs() < 1e-7);
            assert!((dt[i] - tangents[1].as_array()[i]).abs() < 1e-7);
        }
    }
}
