//! Dancing (point, conic) pairs and the degenerate conformal structure on the
//! seven-dimensional space `N` of non-incident pairs.
//!
//! Chart: `a = (x, y, 1)` and `A` normalised to `A₃₃ = 1`, with tangent
//! coordinates `(ẋ, ẏ, Ȧ₁₁, Ȧ₁₂, Ȧ₂₂, Ȧ₁₃, Ȧ₂₃)`.

use nalgebra::{DMatrix, Matrix3, SymmetricEigen, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{product_difference, DoubleF64};
use crate::projective::{
    conic_condition_det, conic_intersect, veronese_complex, veronese_tangent_complex, CHomVec3, Conic3, HomVec3,
    HOM_TOL,
};

/// Dimension of `N`.
pub const DIM_N: usize = 7;

/// Expansion constant: `residual(a, A, a + εȧ, A + εȦ) = EXPANSION_FACTOR ε² G(v, v) + O(ε³)`.
pub const EXPANSION_FACTOR: f64 = 2.0;

/// A tangent vector to `N` in chart coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentN {
    pub adot: [f64; 2],
    /// `(Ȧ₁₁, Ȧ₁₂, Ȧ₂₂, Ȧ₁₃, Ȧ₂₃)`.
    pub cdot: [f64; 5],
}

impl TangentN {
    pub fn as_array(&self) -> [f64; DIM_N] {
        let [x, y] = self.adot;
        let [c11, c12, c22, c13, c23] = self.cdot;
        [x, y, c11, c12, c22, c13, c23]
    }

    pub fn from_array(v: [f64; DIM_N]) -> Self {
        Self {
            adot: [v[0], v[1]],
            cdot: [v[2], v[3], v[4], v[5], v[6]],
        }
    }

    pub fn point_velocity(&self) -> HomVec3 {
        HomVec3::new(self.adot[0], self.adot[1], 0.0)
    }

    pub fn conic_velocity(&self) -> Conic3 {
        let [c11, c12, c22, c13, c23] = self.cdot;
        Conic3::from_rows([[c11, c12, c13], [c12, c22, c23], [c13, c23, 0.0]])
    }
}

/// A point of `N`: a point and a nonsingular conic not through it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointConicPair {
    pub a: HomVec3,
    pub conic: Conic3,
}

impl PointConicPair {
    pub fn new(a: HomVec3, conic: Conic3) -> Result<Self> {
        if !conic.is_nonsingular() {
            return Err(Error::DegenerateConfiguration("singular conic".into()));
        }
        check_non_incident(&a, &conic)?;
        Ok(Self { a, conic })
    }

    /// Chart coordinates `(x, y, A₁₁, A₁₂, A₂₂, A₁₃, A₂₃)`.
    pub fn from_chart(c: [f64; DIM_N]) -> Result<Self> {
        let [x, y, a11, a12, a22, a13, a23] = c;
        Self::new(
            HomVec3::new(x, y, 1.0),
            Conic3::from_rows([[a11, a12, a13], [a12, a22, a23], [a13, a23, 1.0]]),
        )
    }

    pub fn to_chart(&self) -> Result<[f64; DIM_N]> {
        let (x, y) = self.a.to_affine().ok_or_else(|| Error::DegenerateConfiguration("point at infinity".into()))?;
        let m = self.conic.matrix();
        let k = m[(2, 2)];
        if k.abs() <= HOM_TOL * self.conic.frobenius() {
            return Err(Error::DegenerateConfiguration("conic through the chart origin's polar".into()));
        }
        Ok([x, y, m[(0, 0)] / k, m[(0, 1)] / k, m[(1, 1)] / k, m[(0, 2)] / k, m[(1, 2)] / k])
    }

    /// The same pair in chart normalisation.
    pub fn normalized(&self) -> Result<Self> {
        Self::from_chart(self.to_chart()?)
    }

    /// The pair displaced along `v` by `eps` (chart coordinates).
    pub fn offset(&self, v: &TangentN, eps: f64) -> Result<Self> {
        let c = self.to_chart()?;
        let d = v.as_array();
        Self::from_chart(std::array::from_fn(|i| c[i] + eps * d[i]))
    }
}

fn check_non_incident(a: &HomVec3, conic: &Conic3) -> Result<()> {
    let scale = a.norm().powi(2) * conic.frobenius();
    if scale == 0.0 || conic.eval(a).abs() <= HOM_TOL * scale {
        return Err(Error::IncidentPair);
    }
    Ok(())
}

/// `pᵀ Q p` accumulated in double-double.
fn quadratic_exact(q: &Conic3, p: &HomVec3) -> DoubleF64 {
    let m = q.matrix();
    let mut acc = DoubleF64::ZERO;
    for i in 0..3 {
        for j in 0..3 {
            acc = acc + DoubleF64::product(p.c[i], m[(i, j)]) * p.c[j];
        }
    }
    acc
}

/// `(aᵀAa)(bᵀBb) − (aᵀBa)(bᵀAb)`, evaluated in double-double arithmetic; zero
/// iff the pairs are dancing.
pub fn dancing_conics_residual(a: &HomVec3, ca: &Conic3, b: &HomVec3, cb: &Conic3) -> Result<f64> {
    check_non_incident(a, ca)?;
    check_non_incident(b, cb)?;
    Ok(product_difference(
        quadratic_exact(ca, a),
        quadratic_exact(cb, b),
        quadratic_exact(cb, a),
        quadratic_exact(ca, b),
    ))
}

/// [`dancing_conics_residual`] divided by `|a|²|b|²‖A‖‖B‖`.
pub fn relative_conics_residual(a: &HomVec3, ca: &Conic3, b: &HomVec3, cb: &Conic3) -> Result<f64> {
    let r = dancing_conics_residual(a, ca, b, cb)?;
    Ok(r / (a.norm().powi(2) * b.norm().powi(2) * ca.frobenius() * cb.frobenius()))
}

/// The conic `A + tB` of the pencil through `a`.
pub fn pencil_conic_through(a: &HomVec3, ca: &Conic3, cb: &Conic3) -> Result<Conic3> {
    let ab = cb.eval(a);
    if ab.abs() <= HOM_TOL * a.norm().powi(2) * cb.frobenius() {
        return Err(Error::IncidentPoint);
    }
    Ok(ca.add(&cb.scaled(-ca.eval(a) / ab)))
}

/// Linear conditions on a conic through the base points of `A` and `B`: a
/// simple point gives its Veronese row, a doubled point adds tangency to `A`.
fn base_point_rows(ca: &Conic3, cb: &Conic3) -> Result<Vec<[Complex64; 6]>> {
    let meet = conic_intersect(ca, cb)?;
    let mut rows = Vec::with_capacity(4);
    for ip in &meet.points {
        let p = ip.point.normalized();
        rows.push(veronese_complex(&p));
        match ip.multiplicity {
            1 => {}
            2 => {
                let m = ca.matrix();
                let line = CHomVec3 {
                    c: std::array::from_fn(|i| (0..3).map(|j| p.c[j] * m[(i, j)]).sum()),
                };
                let one = Complex64::new(1.0, 0.0);
                let zero = Complex64::default();
                let candidates = [
                    CHomVec3 { c: p.c.map(|z| z.conj()) },
                    CHomVec3 { c: [one, zero, zero] },
                    CHomVec3 { c: [zero, one, zero] },
                    CHomVec3 { c: [zero, zero, one] },
                ];
                let t = candidates
                    .iter()
                    .map(|r| line.cross(r).normalized())
                    .max_by(|u, v| u.cross(&p).norm().total_cmp(&v.cross(&p).norm()))
                    .ok_or(Error::SplitFailure)?;
                rows.push(veronese_tangent_complex(&p, &t));
            }
            _ => {
                return Err(Error::DegenerateConfiguration(
                    "conics osculate; base points do not fix the pencil".into(),
                ))
            }
        }
    }
    Ok(rows)
}

/// Determinant of the six conditions "through `a`, through `b`, through the
/// base points of `A` and `B`" on a conic; vanishes iff the pairs dance.
pub fn dancing_conics_oracle(a: &HomVec3, ca: &Conic3, b: &HomVec3, cb: &Conic3) -> Result<Complex64> {
    check_non_incident(a, ca)?;
    check_non_incident(b, cb)?;
    let unit = |p: &HomVec3| p.scaled(1.0 / p.norm()).to_complex();
    let mut rows = vec![veronese_complex(&unit(a)), veronese_complex(&unit(b))];
    rows.extend(base_point_rows(ca, cb)?);
    let rows: [[Complex64; 6]; 6] = rows.try_into().map_err(|_| Error::SplitFailure)?;
    Ok(conic_condition_det(&rows))
}

/// The second point where the line through `a` with direction `d` meets
/// the pencil conic through `a`; the result dances with `(a, A)` for `B`.
pub fn dancing_partner(a: &HomVec3, ca: &Conic3, cb: &Conic3, d: &HomVec3) -> Result<HomVec3> {
    let c = pencil_conic_through(a, ca, cb)?;
    let dd = c.eval(d);
    if dd.abs() <= HOM_TOL * d.norm().powi(2) * c.frobenius() {
        return Err(Error::DegenerateConfiguration("direction tangent to the asymptotic cone".into()));
    }
    let s = -2.0 * c.bilinear(a, d) / dd;
    Ok(a.add(&d.scaled(s)))
}

fn quadric_value(a: &HomVec3, ca: &Conic3, v: &[f64; DIM_N]) -> f64 {
    let t = TangentN::from_array(*v);
    let ad = t.point_velocity();
    let cd = t.conic_velocity();
    ca.eval(a) * cd.bilinear(a, &ad) - cd.eval(a) * ca.bilinear(a, &ad)
}

/// Symmetric matrix of `(aᵀAa)(aᵀȦȧ) − (aᵀȦa)(aᵀAȧ)` in chart coordinates.
pub fn infinitesimal_quadric(a: &HomVec3, ca: &Conic3) -> Result<[[f64; DIM_N]; DIM_N]> {
    let pair = PointConicPair::new(*a, *ca)?.normalized()?;
    let e = |i: usize| -> [f64; DIM_N] { std::array::from_fn(|k| (k == i) as u8 as f64) };
    let q = |v: [f64; DIM_N]| quadric_value(&pair.a, &pair.conic, &v);
    let mut g = [[0.0; DIM_N]; DIM_N];
    for i in 0..DIM_N {
        g[i][i] = q(e(i));
        for j in 0..i {
            let sum: [f64; DIM_N] = std::array::from_fn(|k| e(i)[k] + e(j)[k]);
            let v = 0.5 * (q(sum) - g[i][i] - g[j][j]);
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    Ok(g)
}

/// `G(v, w)` for a symmetric matrix.
pub fn quadric_eval(g: &[[f64; DIM_N]; DIM_N], v: &[f64; DIM_N], w: &[f64; DIM_N]) -> f64 {
    (0..DIM_N).map(|i| (0..DIM_N).map(|j| v[i] * g[i][j] * w[j]).sum::<f64>()).sum()
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `(n₊, n₋, n₀)` with `|λ| < tol · max|λ|` counted as zero.
pub fn signature(m: &DMatrix<f64>, tol: f64) -> (usize, usize, usize) {
    let ev = symmetric_eigenvalues(m);
    let scale = ev.iter().fold(0.0_f64, |s, v| s.max(v.abs()));
    let mut out = (0, 0, 0);
    for v in ev {
        if v.abs() <= tol * scale {
            out.2 += 1;
        } else if v > 0.0 {
            out.0 += 1;
        } else {
            out.1 += 1;
        }
    }
    out
}

pub fn to_dmatrix(g: &[[f64; DIM_N]; DIM_N]) -> DMatrix<f64> {
    DMatrix::from_fn(DIM_N, DIM_N, |i, j| g[i][j])
}

/// Orthonormal basis (columns) of the null space of `m`, using the
/// `dim` smallest singular directions.
fn null_space(m: &DMatrix<f64>, dim: usize) -> DMatrix<f64> {
    let n = m.ncols();
    let mut square = DMatrix::zeros(n.max(m.nrows()), n);
    square.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = square.svd(false, true);
    let vt = svd.v_t.expect("requested V");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    DMatrix::from_fn(n, dim, |r, c| vt[(order[c], r)])
}

/// Kernel of the symmetric form `G` as an orthonormal 7×3 basis.
pub fn quadric_kernel(g: &[[f64; DIM_N]; DIM_N]) -> DMatrix<f64> {
    null_space(&to_dmatrix(g), 3)
}

/// The image `(a, Aa)` of a pair in the space of (point, line) pairs together
/// with a basis of the kernel of the projection's derivative.
#[derive(Debug, Clone)]
pub struct PolarProjection {
    pub point: HomVec3,
    pub line: HomVec3,
    /// Orthonormal 7×3 basis (columns) of `ker dπ`.
    pub kernel: DMatrix<f64>,
}

impl PolarProjection {
    pub fn kernel_basis(&self) -> [TangentN; 3] {
        std::array::from_fn(|c| TangentN::from_array(std::array::from_fn(|r| self.kernel[(r, c)])))
    }
}

/// `π(a, A) = (a, Aa)`.
pub fn polar_projection(a: &HomVec3, ca: &Conic3) -> Result<PolarProjection> {
    let pair = PointConicPair::new(*a, *ca)?.normalized()?;
    let av = pair.a.to_vector();
    let line = pair.conic.matrix() * av;
    // v ↦ (ȧ, (Ȧa + Aȧ) × Aa)
    let mut d = DMatrix::zeros(5, DIM_N);
    for i in 0..DIM_N {
        let t = TangentN::from_array(std::array::from_fn(|k| (k == i) as u8 as f64));
        let moved: Vector3<f64> = t.conic_velocity().matrix() * av + pair.conic.matrix() * t.point_velocity().to_vector();
        let cross = moved.cross(&line);
        d[(0, i)] = t.adot[0];
        d[(1, i)] = t.adot[1];
        for k in 0..3 {
            d[(2 + k, i)] = cross[k];
        }
    }
    Ok(PolarProjection {
        point: pair.a,
        line: HomVec3::from_vector(&line),
        kernel: null_space(&d, 3),
    })
}

/// Sine of the largest principal angle between two column spaces with
/// orthonormal bases.
pub fn subspace_distance(q1: &DMatrix<f64>, q2: &DMatrix<f64>) -> f64 {
    let proj = q1 * q1.transpose();
    let resid = q2 - proj * q2;
    resid.singular_values().iter().fold(0.0_f64, |m, v| m.max(*v))
}

/// `(aᵀAa)(bᵀBb) − (aᵀBb)(bᵀAa)`: the flat dancing condition of the images
/// under the polar projection.
pub fn m_condition_residual(a: &HomVec3, ca: &Conic3, b: &HomVec3, cb: &Conic3) -> Result<f64> {
    check_non_incident(a, ca)?;
    check_non_incident(b, cb)?;
    Ok(ca.eval(a) * cb.eval(b) - cb.bilinear(a, b) * ca.bilinear(b, a))
}

/// Random `h ∈ SL(3, ℝ)` action on a pair.
pub fn transform_pair(m: &Matrix3<f64>, a: &HomVec3, ca: &Conic3) -> Result<(HomVec3, Conic3)> {
    Ok((
        crate::projective::transform_point(m, a)?,
        crate::projective::transform_conic(m, ca)?,
    ))
}
