//! Origin-centred ellipses of area π and the dancing condition between
//! (point, ellipse) pairs.
//!
//! An ellipse is `E x² + 2F xy + G y² = 1` with `EG − F² = 1`, parametrised
//! by the upper half plane through `E = (a² + b²)/b`, `F = −a/b`, `G = 1/b`.

use nalgebra::{DMatrix, Matrix2, Vector2};

use crate::error::{Error, Result};
use crate::ode::integrate;

/// A point of the ellipse space in half-plane coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseZ {
    pub a: f64,
    pub b: f64,
}

impl EllipseZ {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if b > 0.0 && b.is_finite() && a.is_finite() {
            Ok(Self { a, b })
        } else {
            Err(Error::DegenerateConfiguration(format!("half-plane point needs b > 0, got {b}")))
        }
    }

    pub fn unit_circle() -> Self {
        Self { a: 0.0, b: 1.0 }
    }

    pub fn efg(&self) -> [f64; 3] {
        let (a, b) = (self.a, self.b);
        [(a * a + b * b) / b, -a / b, 1.0 / b]
    }

    /// Inverse of [`Self::efg`]; requires `E > 0` and `EG − F² = 1`.
    pub fn from_efg(efg: [f64; 3]) -> Result<Self> {
        let [e, f, g] = efg;
        let det = e * g - f * f;
        if !(e > 0.0 && g > 0.0) || (det - 1.0).abs() > 1e-9 {
            return Err(Error::NoRealEllipse);
        }
        Self::new(-f / g, 1.0 / g)
    }

    pub fn q_matrix(&self) -> Matrix2<f64> {
        let [e, f, g] = self.efg();
        Matrix2::new(e, f, f, g)
    }

    pub fn from_q(q: &Matrix2<f64>) -> Result<Self> {
        Self::from_efg([q[(0, 0)], 0.5 * (q[(0, 1)] + q[(1, 0)]), q[(1, 1)]])
    }

    /// `(Ė, Ḟ, Ġ)` as a symmetric matrix for the half-plane velocity `(ȧ, ḃ)`.
    pub fn q_velocity(&self, adot: f64, bdot: f64) -> Matrix2<f64> {
        let (a, b) = (self.a, self.b);
        let e = (2.0 * a * adot + 2.0 * b * bdot) / b - (a * a + b * b) * bdot / (b * b);
        let f = -adot / b + a * bdot / (b * b);
        let g = -bdot / (b * b);
        Matrix2::new(e, f, f, g)
    }

    /// Half-plane velocity of the ellipse velocity `qdot` at this point.
    pub fn z_velocity(&self, qdot: &Matrix2<f64>) -> [f64; 2] {
        let [_, f, g] = self.efg();
        let (fd, gd) = (0.5 * (qdot[(0, 1)] + qdot[(1, 0)]), qdot[(1, 1)]);
        [-fd / g + f * gd / (g * g), -gd / (g * g)]
    }
}

/// `Φ = (a² + b²) x² − 2axy + y² − b`; zero iff `(x, y)` lies on the ellipse.
pub fn incidence_phi(x: f64, y: f64, a: f64, b: f64) -> f64 {
    (a * a + b * b) * x * x - 2.0 * a * x * y + y * y - b
}

/// Which component of the non-incident pairs a state lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Inside,
    Outside,
}

/// A non-incident (point, ellipse) pair with a tangent `(ẋ, ẏ, ȧ, ḃ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseState {
    pub u: [f64; 2],
    pub z: EllipseZ,
    pub v: [f64; 4],
}

impl EllipseState {
    pub fn new(u: [f64; 2], z: EllipseZ, v: [f64; 4]) -> Self {
        Self { u, z, v }
    }

    pub fn phi(&self) -> f64 {
        incidence_phi(self.u[0], self.u[1], self.z.a, self.z.b)
    }

    pub fn component(&self) -> Result<Component> {
        let phi = self.phi();
        let scale = self.z.b * (1.0 + self.u[0].hypot(self.u[1])).powi(2) * (1.0 + self.z.a.abs() + self.z.b);
        if phi.abs() <= 1e-12 * scale {
            Err(Error::IncidentPoint)
        } else if phi < 0.0 {
            Ok(Component::Inside)
        } else {
            Ok(Component::Outside)
        }
    }

    /// Simultaneous action of `h ∈ SL(2,ℝ)`: `u ↦ hu`, `Q ↦ h⁻ᵀ Q h⁻¹`.
    pub fn transformed(&self, h: &Matrix2<f64>) -> Result<Self> {
        let hinv = h.try_inverse().ok_or(Error::SingularMatrix)?;
        let u = h * Vector2::new(self.u[0], self.u[1]);
        let ud = h * Vector2::new(self.v[0], self.v[1]);
        let q = hinv.transpose() * self.z.q_matrix() * hinv;
        let qd = hinv.transpose() * self.z.q_velocity(self.v[2], self.v[3]) * hinv;
        let z = EllipseZ::from_q(&q)?;
        let [ad, bd] = z.z_velocity(&qd);
        Ok(Self {
            u: [u[0], u[1]],
            z,
            v: [ud[0], ud[1], ad, bd],
        })
    }
}

/// Result of moving a state onto the section `{x = 1, y = 0, a = 0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionMove {
    pub h: Matrix2<f64>,
    pub b: f64,
    pub v: [f64; 4],
}

/// The unique `h ∈ SL(2,ℝ)` with `h u = (1, 0)` that also makes the moved
/// ellipse have `a = 0`, together with the moved state.
pub fn move_to_section(state: &EllipseState) -> Result<SectionMove> {
    let [x, y] = state.u;
    let r2 = x * x + y * y;
    if r2 == 0.0 {
        return Err(Error::OriginPoint);
    }
    // h0⁻¹ = [u | u⊥/|u|²] sends e₁ to u
    let h0inv = Matrix2::new(x, -y / r2, y, x / r2);
    let h0 = h0inv.try_inverse().ok_or(Error::SingularMatrix)?;
    let q1 = h0inv.transpose() * state.z.q_matrix() * h0inv;
    let s = q1[(0, 1)] / q1[(0, 0)];
    let h = Matrix2::new(1.0, s, 0.0, 1.0) * h0;
    let moved = state.transformed(&h)?;
    Ok(SectionMove {
        h,
        b: moved.z.b,
        v: moved.v,
    })
}

fn check_section_b(b: f64) -> Result<()> {
    if !(b > 0.0) {
        return Err(Error::DegenerateConfiguration(format!("section needs b > 0, got {b}")));
    }
    if (b - 1.0).abs() <= 1e-12 {
        return Err(Error::IncidentPoint);
    }
    Ok(())
}

/// The dancing sextic at the section point `b`, tangent `(ẋ, ẏ, ȧ, ḃ)`.
pub fn sextic_sigma(b: f64, v: [f64; 4]) -> Result<f64> {
    check_section_b(b)?;
    Ok(sextic_sigma_unchecked(b, v))
}

fn sextic_sigma_unchecked(b: f64, v: [f64; 4]) -> f64 {
    let [xd, yd, ad, bd] = v;
    let bm = b - 1.0;
    b.powi(4) * bd * bd * xd.powi(4) - 4.0 * b.powi(3) * ad * bd * xd.powi(3) * yd
        + 2.0 * b * b * (((b - 2.0) * b - 1.0) * bd * bd - 2.0 * bm * ad * ad) * xd * xd * yd * yd
        + 4.0 * b * (1.0 - b * b) * ad * bd * xd * yd.powi(3)
        + bm * bm * (bm * bm * bd * bd - 4.0 * b * ad * ad) * yd.powi(4)
}

/// Scale used for the relative null test of the sextic.
pub fn sextic_scale(b: f64, v: [f64; 4]) -> f64 {
    let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    b.powi(4) * (1.0 + n).powi(6)
}

/// Sum of the absolute values of the sextic's monomials: the natural scale
/// for rounding error in [`sextic_sigma`].
pub fn sextic_magnitude(b: f64, v: [f64; 4]) -> f64 {
    let [xd, yd, ad, bd] = v.map(f64::abs);
    let bm = (b - 1.0).abs();
    let inner = ((b - 2.0) * b - 1.0).abs();
    b.powi(4) * bd * bd * xd.powi(4)
        + 4.0 * b.powi(3) * ad * bd * xd.powi(3) * yd
        + 2.0 * b * b * (inner * bd * bd + 2.0 * bm * ad * ad) * xd * xd * yd * yd
        + 4.0 * b * (1.0 - b * b).abs() * ad * bd * xd * yd.powi(3)
        + bm * bm * (bm * bm * bd * bd + 4.0 * b * ad * ad) * yd.powi(4)
}

/// Relative null tolerance for [`sextic_sigma`].
pub const SEXTIC_NULL_TOL: f64 = 1e-8;

pub fn is_null_sigma(b: f64, v: [f64; 4]) -> Result<bool> {
    Ok(sextic_sigma(b, v)?.abs() < SEXTIC_NULL_TOL * sextic_scale(b, v))
}

/// Coefficients `(c₀, c₁, c₂)` of the two quadratics in `P` whose common
/// roots encode a null tangent at the section point `b`.
pub fn reduced_quadratics(b: f64, v: [f64; 4]) -> ([f64; 3], [f64; 3]) {
    let [xd, yd, ad, bd] = v;
    let q1 = [-b * (b - 1.0) * yd * yd, -2.0 * b * xd * yd, b * xd * xd + (b - 1.0) * yd * yd];
    let q2 = [-b * b * bd, 2.0 * b * ad, bd];
    (q1, q2)
}

/// Resultant of `a₀ + a₁P + a₂P²` and `b₀ + b₁P + b₂P²`.
pub fn quadratic_resultant(a0: f64, a1: f64, a2: f64, b0: f64, b1: f64, b2: f64) -> f64 {
    let d02 = a0 * b2 - a2 * b0;
    d02 * d02 - (a0 * b1 - a1 * b0) * (a1 * b2 - a2 * b1)
}

/// Outcome of the common-root test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullOracle {
    pub is_null: bool,
    /// Shared root `P`, `±∞` for the point at infinity; `None` when one of
    /// the quadratics vanishes identically or there is no shared root.
    pub common_root: Option<f64>,
}

/// Real projective roots `(p : q)` of `c₀q² + c₁pq + c₂p²`, unit-normalised.
fn binary_quadratic_roots(c: [f64; 3]) -> Vec<[f64; 2]> {
    let [c0, c1, c2] = c;
    let disc = c1 * c1 - 4.0 * c0 * c2;
    if disc < 0.0 {
        return Vec::new();
    }
    let t = -0.5 * (c1 + c1.signum() * disc.sqrt());
    let mut roots = Vec::new();
    if c2 != 0.0 || t != 0.0 {
        roots.push([t, c2]);
    }
    if t != 0.0 || c0 != 0.0 {
        roots.push([c0, t]);
    }
    if c2 == 0.0 && c0 == 0.0 && c1 != 0.0 {
        roots = vec![[1.0, 0.0], [0.0, 1.0]];
    }
    roots
        .into_iter()
        .filter(|r| r[0] != 0.0 || r[1] != 0.0)
        .map(|r| {
            let n = r[0].hypot(r[1]);
            [r[0] / n, r[1] / n]
        })
        .collect()
}

fn eval_binary(c: [f64; 3], r: [f64; 2]) -> f64 {
    c[0] * r[1] * r[1] + c[1] * r[0] * r[1] + c[2] * r[0] * r[0]
}

/// Independent null test: solve the `ż` quadratic and substitute its roots
/// in the `u̇` quadratic.
pub fn null_oracle_sigma(b: f64, v: [f64; 4]) -> NullOracle {
    let (q1, q2) = reduced_quadratics(b, v);
    let n1 = q1.iter().map(|c| c.abs()).sum::<f64>();
    let n2 = q2.iter().map(|c| c.abs()).sum::<f64>();
    if n1 == 0.0 || n2 == 0.0 {
        return NullOracle {
            is_null: true,
            common_root: None,
        };
    }
    for r in binary_quadratic_roots(q2) {
        if eval_binary(q1, r).abs() <= SEXTIC_NULL_TOL * n1 {
            let root = if r[1] == 0.0 { f64::INFINITY } else { r[0] / r[1] };
            return NullOracle {
                is_null: true,
                common_root: Some(root),
            };
        }
    }
    NullOracle {
        is_null: false,
        common_root: None,
    }
}

/// `ȧ` making `(ẋ, ẏ, ȧ, ḃ)` null at `b` with shared root `P₀ ≠ 0`.
pub fn null_adot(b: f64, bdot: f64, p0: f64) -> f64 {
    bdot * (b * b - p0 * p0) / (2.0 * b * p0)
}

/// A null tangent at the section point `b` with the given `(ẋ, ẏ, ḃ)`, built
/// from a real root of the `u̇` quadratic.
pub fn construct_null_tangent(b: f64, xd: f64, yd: f64, bd: f64) -> Option<[f64; 4]> {
    let (q1, _) = reduced_quadratics(b, [xd, yd, 0.0, 0.0]);
    binary_quadratic_roots(q1)
        .into_iter()
        .find(|r| r[1].abs() > 1e-6 && (r[0] / r[1]).abs() > 1e-6)
        .map(|r| [xd, yd, null_adot(b, bd, r[0] / r[1]), bd])
}

/// The sextic at a general state, defined through the canonical section move.
pub fn sextic_general(state: &EllipseState) -> Result<f64> {
    state.component()?;
    let mv = move_to_section(state)?;
    sextic_sigma(mv.b, mv.v)
}

/// Real projective roots of `Σ c_k X^{n−k} Y^k`, unit-normalised.
pub fn binary_form_real_roots(c: &[f64]) -> Vec<[f64; 2]> {
    let n = c.len() - 1;
    let scale = c.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || n == 0 {
        return Vec::new();
    }
    // dehomogenise in the chart whose leading coefficient is larger
    let flip = c[n].abs() > c[0].abs();
    let coeffs: Vec<f64> = if flip { c.iter().rev().copied().collect() } else { c.to_vec() };
    let lead = coeffs[0];
    let mut comp = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        comp[(i, n - 1)] = -coeffs[n - i] / lead;
    }
    let eig = comp.complex_eigenvalues();
    eig.iter()
        .filter(|z| z.im.abs() <= 1e-7 * (1.0 + z.re.abs()))
        .map(|z| {
            let r = if flip { [1.0, z.re] } else { [z.re, 1.0] };
            let nrm = r[0].hypot(r[1]);
            [r[0] / nrm, r[1] / nrm]
        })
        .collect()
}

/// Null directions `(ȧ : ḃ)` for a fixed `u̇` at the section point `b`.
pub fn null_zdot_directions(b: f64, udot: [f64; 2]) -> Vec<[f64; 2]> {
    let [x, y] = udot;
    let bm = b - 1.0;
    let caa = -4.0 * b * bm * y * y * (b * x * x + bm * y * y);
    let cab = -4.0 * b.powi(3) * x.powi(3) * y + 4.0 * b * (1.0 - b * b) * x * y.powi(3);
    let cbb = b.powi(4) * x.powi(4) + 2.0 * b * b * ((b - 2.0) * b - 1.0) * x * x * y * y + bm.powi(4) * y.powi(4);
    binary_form_real_roots(&[caa, cab, cbb])
}

/// Null directions `(ẋ : ẏ)` for a fixed `ż` at the section point `b`.
pub fn null_udot_directions(b: f64, zdot: [f64; 2]) -> Vec<[f64; 2]> {
    let [ad, bd] = zdot;
    let bm = b - 1.0;
    binary_form_real_roots(&[
        b.powi(4) * bd * bd,
        -4.0 * b.powi(3) * ad * bd,
        2.0 * b * b * (((b - 2.0) * b - 1.0) * bd * bd - 2.0 * bm * ad * ad),
        4.0 * b * (1.0 - b * b) * ad * bd,
        bm * bm * (bm * bm * bd * bd - 4.0 * b * ad * ad),
    ])
}

/// Geometry witnessing a null tangent at the section point `(1, 0)`, `(0, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullConfiguration {
    /// The ellipse through `(1, 0)` tangent to `u̇`.
    pub z_star: EllipseZ,
    /// Turning point of the ellipse `(0, b)` along `ż`.
    pub turning_point: [f64; 2],
}

pub fn null_configuration(b: f64, v: [f64; 4]) -> Result<NullConfiguration> {
    check_section_b(b)?;
    let oracle = null_oracle_sigma(b, v);
    let p = oracle
        .common_root
        .filter(|p| p.is_finite())
        .ok_or_else(|| Error::DegenerateConfiguration("tangent is not null with a finite shared root".into()))?;
    let [xd, yd, _, _] = v;
    let n2 = xd * xd + yd * yd;
    if yd == 0.0 {
        return Err(Error::DegenerateConfiguration("radial direction".into()));
    }
    let z_star = EllipseZ::new(xd * yd / n2, yd * yd / n2)?;
    let x = (b / (b * b + p * p)).sqrt();
    Ok(NullConfiguration {
        z_star,
        turning_point: [x, p * x],
    })
}

/// Default bound on `|y′|` for [`path_ode_integrate`].
pub const SLOPE_BOUND: f64 = 1e4;

/// RK4 trajectory `(x, y, y′)` of `y″ = (x y′ − y)³` from `x0` to `x_end`.
pub fn path_ode_integrate(x0: f64, y0: f64, p0: f64, x_end: f64, step: f64) -> Result<Vec<[f64; 3]>> {
    path_ode_integrate_bounded(x0, y0, p0, x_end, step, SLOPE_BOUND)
}

pub fn path_ode_integrate_bounded(
    x0: f64,
    y0: f64,
    p0: f64,
    x_end: f64,
    step: f64,
    bound: f64,
) -> Result<Vec<[f64; 3]>> {
    if !(step > 0.0) {
        return Err(Error::DegenerateConfiguration(format!("step must be positive, got {step}")));
    }
    let f = |x: f64, s: &[f64; 2]| [s[1], (x * s[1] - s[0]).powi(3)];
    let traj = integrate(f, x0, [y0, p0], x_end, step, |x, s| {
        if s[1].is_finite() && s[1].abs() <= bound {
            Ok(())
        } else {
            Err(Error::StepBlowUp { x, bound })
        }
    })?;
    Ok(traj.into_iter().map(|(x, s)| [x, s[0], s[1]]).collect())
}

/// The area-π origin-centred ellipse through `u` tangent to `w`.
pub fn ellipse_fit_direction(u: [f64; 2], w: [f64; 2]) -> Result<EllipseZ> {
    let m = Matrix2::new(u[0], w[0], u[1], w[1]);
    let det = m.determinant();
    let scale = u[0].hypot(u[1]) * w[0].hypot(w[1]);
    if scale == 0.0 || det.abs() <= 1e-12 * scale {
        return Err(Error::NoRealEllipse);
    }
    let minv = m.try_inverse().ok_or(Error::NoRealEllipse)?;
    let q = minv.transpose() * Matrix2::new(1.0, 0.0, 0.0, det * det) * minv;
    EllipseZ::from_q(&q)
}

/// The area-π origin-centred ellipse through `(x0, y0)` with slope `p0`.
pub fn ellipse_fit(x0: f64, y0: f64, p0: f64) -> Result<EllipseZ> {
    if p0.is_infinite() {
        ellipse_fit_direction([x0, y0], [0.0, 1.0])
    } else {
        ellipse_fit_direction([x0, y0], [1.0, p0])
    }
}

/// Branch of the horocycle `Φ(u, a, ·) = 0` over a fixed abscissa `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HorocycleBranch {
    Upper,
    Lower,
}

/// `(b, b′, b″)` along the horocycle of `u` at abscissa `a`.
pub fn horocycle_point(u: [f64; 2], a: f64, branch: HorocycleBranch) -> Result<[f64; 3]> {
    let [x, y] = u;
    let c = a * x - y;
    let b = if x == 0.0 {
        y * y
    } else {
        let disc = 1.0 - 4.0 * x * x * c * c;
        if disc < 0.0 {
            return Err(Error::NoBranch(a));
        }
        let s = disc.sqrt();
        match branch {
            HorocycleBranch::Upper => (1.0 + s) / (2.0 * x * x),
            HorocycleBranch::Lower => 2.0 * c * c / (1.0 + s),
        }
    };
    if !(b > 0.0) {
        return Err(Error::NoBranch(a));
    }
    let fa = 2.0 * a * x * x - 2.0 * x * y;
    let fb = 2.0 * b * x * x - 1.0;
    if fb == 0.0 {
        return Err(Error::NoBranch(a));
    }
    let k = 2.0 * x * x;
    let bp = -fa / fb;
    let bpp = -(k + k * bp * bp) / fb;
    Ok([b, bp, bpp])
}

/// `b″ − ε(√(1 + b′²) − ε)(1 + b′²)/b` on the given branch.
pub fn dual_ode_residual_on(u: [f64; 2], a: f64, branch: HorocycleBranch, eps: f64) -> Result<f64> {
    let [b, bp, bpp] = horocycle_point(u, a, branch)?;
    let w = 1.0 + bp * bp;
    Ok(bpp - eps * (w.sqrt() - eps) * w / b)
}

/// [`dual_ode_residual_on`] for the upper branch.
pub fn dual_ode_residual(u: [f64; 2], a: f64, eps: f64) -> Result<f64> {
    dual_ode_residual_on(u, a, HorocycleBranch::Upper, eps)
}

/// The sign `ε` whose dual equation holds on a branch.
pub fn branch_sign(branch: HorocycleBranch) -> f64 {
    match branch {
        HorocycleBranch::Upper => -1.0,
        HorocycleBranch::Lower => 1.0,
    }
}

/// A geodesic of `dr²/(1+r⁴)² + r² dθ²/(1+r⁴)` in Cartesian form.
#[derive(Debug, Clone)]
pub struct GeodesicTrace {
    pub points: Vec<[f64; 2]>,
    /// Largest `|(ẋÿ − ẏẍ) − (xẏ − yẋ)³| / |v|³` along the curve.
    pub max_residual: f64,
}

fn geodesic_rhs(s: &[f64; 4]) -> [f64; 4] {
    let [r, _th, rd, thd] = *s;
    let r4 = r.powi(4);
    let rdd = 4.0 * r.powi(3) / (1.0 + r4) * rd * rd + (r - r.powi(5)) * thd * thd;
    let thdd = -2.0 * (1.0 - r4) / (r * (1.0 + r4)) * rd * thd;
    [rd, thd, rdd, thdd]
}

fn path_residual(s: &[f64; 4]) -> f64 {
    let [r, th, rd, thd] = *s;
    let [_, _, rdd, thdd] = geodesic_rhs(s);
    let (c, sn) = (th.cos(), th.sin());
    let (x, y) = (r * c, r * sn);
    let xd = rd * c - r * thd * sn;
    let yd = rd * sn + r * thd * c;
    let xdd = rdd * c - 2.0 * rd * thd * sn - r * thdd * sn - r * thd * thd * c;
    let ydd = rdd * sn + 2.0 * rd * thd * c + r * thdd * c - r * thd * thd * sn;
    let speed = xd.hypot(yd);
    ((xd * ydd - yd * xdd) - (x * yd - y * xd).powi(3)) / speed.powi(3)
}

/// Integrates a unit-speed geodesic from polar point `(r0, θ0)` with initial
/// Cartesian direction `dir` for arc length `arc_len`.
pub fn metrisability_geodesic(r0: f64, theta0: f64, dir: [f64; 2], arc_len: f64, step: f64) -> Result<GeodesicTrace> {
    if !(r0 > 0.0) {
        return Err(Error::OriginPoint);
    }
    let (c, s) = (theta0.cos(), theta0.sin());
    let rd = dir[0] * c + dir[1] * s;
    let thd = (-dir[0] * s + dir[1] * c) / r0;
    let r4 = r0.powi(4);
    let speed = (rd * rd / ((1.0 + r4) * (1.0 + r4)) + r0 * r0 * thd * thd / (1.0 + r4)).sqrt();
    if speed == 0.0 {
        return Err(Error::DegenerateConfiguration("zero initial direction".into()));
    }
    let y0 = [r0, theta0, rd / speed, thd / speed];
    let traj = integrate(|_t, y: &[f64; 4]| geodesic_rhs(y), 0.0, y0, arc_len, step, |t, y| {
        if y[0] > 0.0 && y.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::StepBlowUp { x: t, bound: 0.0 })
        }
    })?;
    let mut max_residual: f64 = 0.0;
    let mut points = Vec::with_capacity(traj.len());
    for (_, y) in &traj {
        max_residual = max_residual.max(path_residual(y).abs());
        points.push([y[0] * y[1].cos(), y[0] * y[1].sin()]);
    }
    Ok(GeodesicTrace { points, max_residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incidence_examples() {
        assert_eq!(incidence_phi(1.0, 0.0, 0.0, 1.0), 0.0);
        assert_eq!(incidence_phi(1.0, 0.0, 0.0, 2.0), 2.0);
        assert_eq!(incidence_phi(-0.3, 0.8, 0.4, 1.7), incidence_phi(0.3, -0.8, 0.4, 1.7));
    }

    #[test]
    fn efg_round_trip() {
        let z = EllipseZ::new(-0.7, 2.3).unwrap();
        let [e, f, g] = z.efg();
        assert!((e * g - f * f - 1.0).abs() < 1e-12);
        let back = EllipseZ::from_efg([e, f, g]).unwrap();
        assert!((back.a - z.a).abs() < 1e-12 && (back.b - z.b).abs() < 1e-12);
    }

    #[test]
    fn section_move_examples() {
        let on = EllipseState::new([1.0, 0.0], EllipseZ::new(0.0, 2.0).unwrap(), [0.3, 0.1, 0.2, -0.4]);
        let mv = move_to_section(&on).unwrap();
        assert!((mv.h - Matrix2::identity()).norm() < 1e-15);
        let rotated = EllipseState::new([0.0, 1.0], EllipseZ::new(0.0, 2.0).unwrap(), [0.0; 4]);
        let mv = move_to_section(&rotated).unwrap();
        let rot = Matrix2::new(0.0, 1.0, -1.0, 0.0);
        assert!((mv.h - rot).norm() < 1e-15);
        assert!((mv.b - 0.5).abs() < 1e-15);
        assert!(matches!(
            move_to_section(&EllipseState::new([0.0, 0.0], EllipseZ::unit_circle(), [0.0; 4])),
            Err(Error::OriginPoint)
        ));
    }

    #[test]
    fn sextic_examples() {
        assert_eq!(sextic_sigma(2.0, [1.0, 0.0, 5.0, 0.0]).unwrap(), 0.0);
        assert_eq!(sextic_sigma(2.0, [0.0, 1.0, 0.0, 1.0]).unwrap(), 1.0);
        let p0 = (2.0 + 10f64.sqrt()) / 3.0;
        let v = [1.0, 1.0, (4.0 - p0 * p0) / (4.0 * p0), 1.0];
        assert!(sextic_sigma(2.0, v).unwrap().abs() < 1e-12);
        assert!(matches!(sextic_sigma(1.0, v), Err(Error::IncidentPoint)));
    }

    #[test]
    fn oracle_examples() {
        let o = null_oracle_sigma(2.0, [0.0, 1.0, 0.0, 1.0]);
        assert!(!o.is_null);
        let p0 = (2.0 + 10f64.sqrt()) / 3.0;
        let o = null_oracle_sigma(2.0, [1.0, 1.0, (4.0 - p0 * p0) / (4.0 * p0), 1.0]);
        assert!(o.is_null);
        assert!((o.common_root.unwrap() - p0).abs() < 1e-12);
        let o = null_oracle_sigma(2.0, [0.0; 4]);
        assert!(o.is_null && o.common_root.is_none());
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(quadratic_resultant(-2.0, 0.0, 1.0, -4.0, 0.0, 1.0), 4.0);
        assert_eq!(quadratic_resultant(1.0, 2.0, 3.0, 2.0, 4.0, 6.0), 0.0);
    }

    #[test]
    fn circle_solves_path_ode() {
        let traj = path_ode_integrate(0.0, 1.0, 0.0, 0.5, 1e-3).unwrap();
        let last = traj.last().unwrap();
        assert_eq!(last[0], 0.5);
        assert!((last[1] - 0.75f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn steep_start_blows_up() {
        let r = path_ode_integrate_bounded(0.0, 1.0, 0.0, 2.0, 1e-3, 50.0);
        assert!(matches!(r, Err(Error::StepBlowUp { .. })));
    }

    #[test]
    fn fit_examples() {
        let z = ellipse_fit(0.0, 1.0, 0.0).unwrap();
        assert!(z.a.abs() < 1e-15 && (z.b - 1.0).abs() < 1e-15);
        let z = ellipse_fit(1.0, 0.0, f64::INFINITY).unwrap();
        assert!(z.a.abs() < 1e-15 && (z.b - 1.0).abs() < 1e-15);
        let z = ellipse_fit(1.0, 1.0, -1.0).unwrap();
        assert!(incidence_phi(1.0, 1.0, z.a, z.b).abs() < 1e-12);
        assert!(matches!(ellipse_fit(1.0, 1.0, 1.0), Err(Error::NoRealEllipse)));
    }

    #[test]
    fn dual_ode_example() {
        let [b, bp, bpp] = horocycle_point([1.0, 0.0], 0.3, HorocycleBranch::Upper).unwrap();
        assert!((b - 0.9).abs() < 1e-14 && (bp + 0.75).abs() < 1e-14 && (bpp + 3.90625).abs() < 1e-12);
        assert!(dual_ode_residual([1.0, 0.0], 0.3, -1.0).unwrap().abs() < 1e-12);
        assert!(dual_ode_residual([1.0, 0.0], 0.3, 1.0).unwrap().abs() > 1.0);
        let lower = dual_ode_residual_on([1.0, 0.0], 0.3, HorocycleBranch::Lower, 1.0).unwrap();
        assert!(lower.abs() < 1e-12);
        assert!(matches!(dual_ode_residual([1.0, 0.0], 0.7, -1.0), Err(Error::NoBranch(_))));
    }

    #[test]
    fn unit_circle_is_a_geodesic() {
        let g = metrisability_geodesic(1.0, 0.0, [0.0, 1.0], 3.0, 1e-3).unwrap();
        assert!(g.max_residual < 1e-6);
        for p in &g.points {
            assert!((p[0].hypot(p[1]) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn four_real_null_directions_for_radial_zdot() {
        assert_eq!(null_udot_directions(0.5, [0.0, 1.0]).len(), 4);
        assert_eq!(null_udot_directions(1.5, [0.0, 1.0]).len(), 4);
    }

    #[test]
    fn null_configuration_is_dancing() {
        let v = construct_null_tangent(2.0, 0.6, 0.8, 0.5).unwrap();
        let cfg = null_configuration(2.0, v).unwrap();
        let [x, y] = cfg.turning_point;
        assert!(incidence_phi(x, y, 0.0, 2.0).abs() < 1e-12);
        assert!(incidence_phi(x, y, cfg.z_star.a, cfg.z_star.b).abs() < 1e-12);
        assert!(incidence_phi(1.0, 0.0, cfg.z_star.a, cfg.z_star.b).abs() < 1e-12);
    }
}
