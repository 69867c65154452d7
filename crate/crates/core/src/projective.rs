//! Homogeneous coordinates on the real projective plane and its dual.
//!
//! Points and lines share one representation, [`HomVec3`]; which one is meant
//! is decided by the caller. Conics are symmetric 3x3 matrices ([`Conic3`]).
//! All "is zero" decisions are relative to the product of the input norms.

use nalgebra::{Matrix3, Matrix6, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default relative tolerance for homogeneous zero tests.
pub const HOM_TOL: f64 = 1e-9;

/// Relative distance under which two pencil roots are merged.
pub const ROOT_CLUSTER_TOL: f64 = 1e-6;

/// A point of the projective plane, or (dually) a line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomVec3 {
    pub c: [f64; 3],
}

impl HomVec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { c: [x, y, z] }
    }

    /// Affine point `(x, y)` in the chart `z = 1`.
    pub const fn affine(x: f64, y: f64) -> Self {
        Self::new(x, y, 1.0)
    }

    pub fn from_vector(v: &Vector3<f64>) -> Self {
        Self::new(v[0], v[1], v[2])
    }

    pub fn to_vector(&self) -> Vector3<f64> {
        Vector3::new(self.c[0], self.c[1], self.c[2])
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.c[0] * other.c[0] + self.c[1] * other.c[1] + self.c[2] * other.c[2]
    }

    pub fn cross(&self, other: &Self) -> Self {
        let [a0, a1, a2] = self.c;
        let [b0, b1, b2] = other.c;
        Self::new(a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0)
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.max_abs() == 0.0
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self::new(k * self.c[0], k * self.c[1], k * self.c[2])
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.c[0] + other.c[0],
            self.c[1] + other.c[1],
            self.c[2] + other.c[2],
        )
    }

    /// Canonical representative: the largest-magnitude component becomes
    /// exactly `+1` or `-1` (its sign is kept).
    pub fn normalized(&self) -> Self {
        let m = self.max_abs();
        if m == 0.0 {
            return *self;
        }
        self.scaled(1.0 / m)
    }

    /// Projective equality (up to any nonzero scale, including sign).
    pub fn same_as(&self, other: &Self, tol: f64) -> bool {
        self.cross(other).norm() <= tol * self.norm() * other.norm()
    }

    /// Affine coordinates, if the point is finite.
    pub fn to_affine(&self) -> Option<(f64, f64)> {
        if self.c[2].abs() <= HOM_TOL * self.max_abs() {
            None
        } else {
            Some((self.c[0] / self.c[2], self.c[1] / self.c[2]))
        }
    }

    pub fn to_complex(&self) -> CHomVec3 {
        CHomVec3 {
            c: self.c.map(|v| Complex64::new(v, 0.0)),
        }
    }
}

/// Complex homogeneous triple; conic intersections may be complex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CHomVec3 {
    pub c: [Complex64; 3],
}

impl CHomVec3 {
    pub fn norm(&self) -> f64 {
        self.c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Scale so the component of largest modulus equals one.
    pub fn normalized(&self) -> Self {
        let k = self
            .c
            .iter()
            .copied()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .unwrap_or_default();
        if k.norm() == 0.0 {
            return *self;
        }
        Self {
            c: self.c.map(|z| z / k),
        }
    }

    pub fn cross(&self, other: &Self) -> Self {
        let [a0, a1, a2] = self.c;
        let [b0, b1, b2] = other.c;
        Self {
            c: [a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0],
        }
    }

    pub fn same_as(&self, other: &Self, tol: f64) -> bool {
        self.cross(other).norm() <= tol * self.norm() * other.norm()
    }

    /// `Some` when all imaginary parts vanish after normalization.
    pub fn to_real(&self, tol: f64) -> Option<HomVec3> {
        let n = self.normalized();
        if n.c.iter().all(|z| z.im.abs() <= tol) {
            Some(HomVec3::new(n.c[0].re, n.c[1].re, n.c[2].re))
        } else {
            None
        }
    }
}

/// A conic as a symmetric 3x3 matrix, `{ p : pᵀ Q p = 0 }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conic3 {
    q: Matrix3<f64>,
}

impl Conic3 {
    /// Builds from any 3x3 matrix by symmetrizing it.
    pub fn new(m: Matrix3<f64>) -> Self {
        Self {
            q: (m + m.transpose()) * 0.5,
        }
    }

    pub fn from_rows(rows: [[f64; 3]; 3]) -> Self {
        Self::new(Matrix3::from_fn(|i, j| rows[i][j]))
    }

    pub fn diag(a: f64, b: f64, c: f64) -> Self {
        Self::new(Matrix3::from_diagonal(&Vector3::new(a, b, c)))
    }

    /// Coefficients of `a x² + b xy + c y² + d xz + e yz + f z²`.
    pub fn from_coefficients(k: [f64; 6]) -> Self {
        Self::from_rows([
            [k[0], 0.5 * k[1], 0.5 * k[3]],
            [0.5 * k[1], k[2], 0.5 * k[4]],
            [0.5 * k[3], 0.5 * k[4], k[5]],
        ])
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.q
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.q[(i, j)]
    }

    /// `pᵀ Q p`.
    pub fn eval(&self, p: &HomVec3) -> f64 {
        let v = p.to_vector();
        v.dot(&(self.q * v))
    }

    /// `pᵀ Q r`.
    pub fn bilinear(&self, p: &HomVec3, r: &HomVec3) -> f64 {
        p.to_vector().dot(&(self.q * r.to_vector()))
    }

    pub fn eval_complex(&self, p: &CHomVec3) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                s += p.c[i] * self.q[(i, j)] * p.c[j];
            }
        }
        s
    }

    pub fn det(&self) -> f64 {
        self.q.determinant()
    }

    pub fn frobenius(&self) -> f64 {
        self.q.norm()
    }

    /// Irreducible within the homogeneous tolerance.
    pub fn is_nonsingular(&self) -> bool {
        let n = self.frobenius();
        self.det().abs() > HOM_TOL * n * n * n
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self { q: self.q * k }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { q: self.q + other.q }
    }

    /// Same conic up to scale.
    pub fn same_as(&self, other: &Self, tol: f64) -> bool {
        let a = self.q / self.q.norm();
        let b = other.q / other.q.norm();
        (a - b).norm() <= tol || (a + b).norm() <= tol
    }
}

/// Real cross product join of two points (the line through them) or the
/// meet of two lines (their common point).
pub fn cross_join(v: &HomVec3, w: &HomVec3) -> Result<HomVec3> {
    let c = v.cross(w);
    if c.norm() <= HOM_TOL * v.norm() * w.norm() {
        return Err(Error::ProportionalInputs);
    }
    Ok(c)
}

/// `det[v1 | v2 | v3]` of the canonically normalized triples.
pub fn collinear_det(v1: &HomVec3, v2: &HomVec3, v3: &HomVec3) -> f64 {
    let (a, b, c) = (v1.normalized(), v2.normalized(), v3.normalized());
    a.dot(&b.cross(&c))
}

/// Zero test for [`collinear_det`] under the homogeneous tolerance.
pub fn are_collinear(v1: &HomVec3, v2: &HomVec3, v3: &HomVec3, tol: f64) -> bool {
    let (a, b, c) = (v1.normalized(), v2.normalized(), v3.normalized());
    collinear_det(v1, v2, v3).abs() <= tol * a.norm() * b.norm() * c.norm()
}

/// Polar line `A a`. The incidence value `aᵀAa` is `a · (A a)`.
pub fn conic_apply(conic: &Conic3, a: &HomVec3) -> Result<HomVec3> {
    let polar = HomVec3::from_vector(&(conic.matrix() * a.to_vector()));
    if polar.norm() <= HOM_TOL * conic.frobenius() * a.norm() {
        return Err(Error::ZeroPolar);
    }
    Ok(polar)
}

fn veronese(p: &HomVec3) -> [f64; 6] {
    let [x, y, z] = p.normalized().c;
    [x * x, x * y, y * y, x * z, y * z, z * z]
}

/// Row `(x², xy, y², xz, yz, z²)` of a (normalised) complex point.
pub fn veronese_complex(p: &CHomVec3) -> [Complex64; 6] {
    let [x, y, z] = p.normalized().c;
    [x * x, x * y, y * y, x * z, y * z, z * z]
}

/// Derivative of [`veronese_complex`] at `p` along `t`: the linear condition
/// for a conic through `p` to be tangent there to the line joining `p`, `t`.
pub fn veronese_tangent_complex(p: &CHomVec3, t: &CHomVec3) -> [Complex64; 6] {
    let [x, y, z] = p.normalized().c;
    let [u, v, w] = t.normalized().c;
    let two = Complex64::new(2.0, 0.0);
    [two * x * u, x * v + y * u, two * y * v, x * w + z * u, y * w + z * v, two * z * w]
}

/// The unique conic through five points in general position.
pub fn conic_through_five(points: &[HomVec3; 5]) -> Result<Conic3> {
    // Square 6x6 design matrix with a zero row; generic rank is 5.
    let mut m = Matrix6::<f64>::zeros();
    for (r, p) in points.iter().enumerate() {
        for (c, v) in veronese(p).into_iter().enumerate() {
            m[(r, c)] = v;
        }
    }
    let svd = m.svd(false, true);
    let v_t = svd.v_t.ok_or(Error::SingularMatrix)?;
    let mut order: Vec<usize> = (0..6).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let largest = svd.singular_values[order[5]];
    let second = svd.singular_values[order[1]];
    if second <= 1e-8 * largest {
        return Err(Error::DegenerateConfiguration(
            "five points do not determine a unique conic".into(),
        ));
    }
    let row = v_t.row(order[0]);
    Ok(Conic3::from_coefficients([
        row[0], row[1], row[2], row[3], row[4], row[5],
    ]))
}

/// Determinant of the 6x6 matrix of rows `(x², xy, y², xz, yz, z²)`;
/// vanishes iff one conic passes through all six (complex) points.
pub fn six_point_conic_det(points: &[CHomVec3; 6]) -> Complex64 {
    conic_condition_det(&points.map(|p| veronese_complex(&p)))
}

/// Determinant of six linear conditions on conic coefficients.
pub fn conic_condition_det(rows: &[[Complex64; 6]; 6]) -> Complex64 {
    nalgebra::Matrix6::<Complex64>::from_fn(|r, c| rows[r][c]).determinant()
}

/// Real-input convenience wrapper around [`six_point_conic_det`].
pub fn six_point_conic_det_real(points: &[HomVec3; 6]) -> f64 {
    six_point_conic_det(&points.map(|p| p.to_complex())).re
}

/// Roots of `det(A + λB) = 0` with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct PencilRoots {
    pub roots: Vec<(Complex64, usize)>,
    /// Coefficients `[c0, c1, c2, c3]` of the cubic in `λ`.
    pub cubic: [f64; 4],
}

impl PencilRoots {
    pub fn compute(a: &Conic3, b: &Conic3) -> Self {
        let (am, bm) = (a.matrix(), b.matrix());
        let adj = |m: &Matrix3<f64>| m.try_inverse().map(|inv| inv * m.determinant());
        let adj_a = adj(am).unwrap_or_else(|| adjugate(am));
        let adj_b = adj(bm).unwrap_or_else(|| adjugate(bm));
        let cubic = [
            am.determinant(),
            (adj_a * bm).trace(),
            (am * adj_b).trace(),
            bm.determinant(),
        ];
        let raw = cubic_roots(cubic);
        Self {
            roots: cluster_roots(&raw),
            cubic,
        }
    }

    pub fn residual(&self, lambda: Complex64) -> Complex64 {
        let [c0, c1, c2, c3] = self.cubic;
        ((lambda * c3 + c2) * lambda + c1) * lambda + c0
    }
}

fn adjugate(m: &Matrix3<f64>) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| {
        // cofactor of (j, i)
        let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
        let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
        let minor = m[(rows[0], cols[0])] * m[(rows[1], cols[1])]
            - m[(rows[0], cols[1])] * m[(rows[1], cols[0])];
        if (i + j) % 2 == 0 {
            minor
        } else {
            -minor
        }
    })
}

fn complex_adjugate(m: &[[Complex64; 3]; 3]) -> [[Complex64; 3]; 3] {
    let mut out = [[Complex64::default(); 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let minor = m[rows[0]][cols[0]] * m[rows[1]][cols[1]]
                - m[rows[0]][cols[1]] * m[rows[1]][cols[0]];
            *cell = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    out
}

/// Roots of `c0 + c1 λ + c2 λ² + c3 λ³` via companion-matrix eigenvalues.
/// Lower-degree polynomials are handled when leading terms vanish.
pub fn cubic_roots(c: [f64; 4]) -> Vec<Complex64> {
    let scale = c.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Vec::new();
    }
    let degree = (0..4).rev().find(|&k| c[k].abs() > 1e-14 * scale).unwrap_or(0);
    match degree {
        0 => Vec::new(),
        1 => vec![Complex64::new(-c[0] / c[1], 0.0)],
        2 => quadratic_roots(c[2], c[1], c[0]).to_vec(),
        _ => {
            let (a0, a1, a2) = (c[0] / c[3], c[1] / c[3], c[2] / c[3]);
            let companion = Matrix3::new(0.0, 0.0, -a0, 1.0, 0.0, -a1, 0.0, 1.0, -a2);
            companion.complex_eigenvalues().iter().copied().collect()
        }
    }
}

/// Both roots of `a t² + b t + c` (a ≠ 0), cancellation-free.
pub fn quadratic_roots(a: f64, b: f64, c: f64) -> [Complex64; 2] {
    let disc = b * b - 4.0 * a * c;
    if disc >= 0.0 {
        let s = disc.sqrt();
        let q = -0.5 * (b + b.signum() * s);
        if q == 0.0 {
            return [Complex64::new(0.0, 0.0); 2];
        }
        [Complex64::new(q / a, 0.0), Complex64::new(c / q, 0.0)]
    } else {
        let re = -b / (2.0 * a);
        let im = (-disc).sqrt() / (2.0 * a);
        [Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

fn cluster_roots(raw: &[Complex64]) -> Vec<(Complex64, usize)> {
    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    for &r in raw {
        let hit = groups.iter_mut().find(|(g, _)| {
            let scale = 1.0_f64.max(g.norm()).max(r.norm());
            (*g - r).norm() <= ROOT_CLUSTER_TOL * scale
        });
        match hit {
            Some((g, n)) => {
                *g = (*g * *n as f64 + r) / (*n as f64 + 1.0);
                *n += 1;
            }
            None => groups.push((r, 1)),
        }
    }
    groups
}

/// One intersection point of two conics together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntersectionPoint {
    pub point: CHomVec3,
    pub multiplicity: usize,
}

/// The four intersection points of two conics, counted with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct ConicIntersection {
    pub points: Vec<IntersectionPoint>,
}

impl ConicIntersection {
    /// Four points, repeated according to multiplicity.
    pub fn all_four(&self) -> [CHomVec3; 4] {
        let flat: Vec<CHomVec3> = self
            .points
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.point, p.multiplicity))
            .collect();
        [flat[0], flat[1], flat[2], flat[3]]
    }

    pub fn real_points(&self, tol: f64) -> Vec<HomVec3> {
        self.points
            .iter()
            .filter_map(|p| p.point.to_real(tol))
            .collect()
    }
}

type CMat3 = [[Complex64; 3]; 3];

/// Splits a rank-≤2 symmetric matrix into its two lines `g hᵀ + h gᵀ`.
fn split_degenerate(d: &Matrix3<f64>) -> Option<(CHomVec3, CHomVec3)> {
    let dc: CMat3 = std::array::from_fn(|i| std::array::from_fn(|j| Complex64::new(d[(i, j)], 0.0)));
    let scale = d.norm();
    if scale == 0.0 {
        return None;
    }
    let adj = complex_adjugate(&dc);
    let (k, _) = (0..3)
        .map(|i| (i, adj[i][i].norm()))
        .max_by(|a, b| a.1.total_cmp(&b.1))?;
    let mut b = dc;
    if adj[k][k].norm() > 1e-10 * scale * scale {
        // Line pair meeting at p with -adj(D) = p pᵀ.
        let beta = (-adj[k][k]).sqrt();
        let p: [Complex64; 3] = std::array::from_fn(|i| adj[i][k] / beta);
        // D + [p]_x becomes rank one: g hᵀ.
        b[0][1] += p[2];
        b[1][0] -= p[2];
        b[0][2] -= p[1];
        b[2][0] += p[1];
        b[1][2] += p[0];
        b[2][1] -= p[0];
    }
    // Rank one now (double line, or after the correction above).
    let (mut bi, mut bj, mut best) = (0, 0, 0.0);
    for (i, row) in b.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if v.norm() > best {
                best = v.norm();
                bi = i;
                bj = j;
            }
        }
    }
    if best <= 1e-12 * scale {
        return None;
    }
    let g = CHomVec3 { c: b[bi] };
    let h = CHomVec3 {
        c: [b[0][bj], b[1][bj], b[2][bj]],
    };
    Some((g, h))
}

/// The two points where a (complex) line meets a conic.
fn line_conic_points(line: &CHomVec3, conic: &Conic3) -> [CHomVec3; 2] {
    let l = line.normalized();
    // Two independent points on the line.
    let basis = [
        [Complex64::new(1.0, 0.0), Complex64::default(), Complex64::default()],
        [Complex64::default(), Complex64::new(1.0, 0.0), Complex64::default()],
        [Complex64::default(), Complex64::default(), Complex64::new(1.0, 0.0)],
    ];
    let mut cands: Vec<CHomVec3> = basis.iter().map(|e| l.cross(&CHomVec3 { c: *e })).collect();
    cands.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    let p1 = cands[0].normalized();
    let mut p2 = cands[1].normalized();
    if p1.same_as(&p2, 1e-8) {
        p2 = cands[2].normalized();
    }
    let q = conic.matrix();
    let form = |u: &CHomVec3, v: &CHomVec3| {
        let mut s = Complex64::default();
        for i in 0..3 {
            for j in 0..3 {
                s += u.c[i] * q[(i, j)] * v.c[j];
            }
        }
        s
    };
    let (a, b, c) = (form(&p1, &p1), form(&p1, &p2), form(&p2, &p2));
    // s² a + 2 s t b + t² c = 0
    let disc = (b * b - a * c).sqrt();
    let combo = |s: Complex64, t: Complex64| CHomVec3 {
        c: std::array::from_fn(|i| p1.c[i] * s + p2.c[i] * t),
    };
    if a.norm() >= c.norm() {
        // s/t = (-b ± disc) / a
        [combo(-b + disc, a), combo(-b - disc, a)]
    } else {
        [combo(c, -b + disc), combo(c, -b - disc)]
    }
}

/// Intersection of two nonsingular conics by pencil degeneration: a root of
/// `det(A + λB)` gives a line pair, and each line is cut with `A`.
pub fn conic_intersect(a: &Conic3, b: &Conic3) -> Result<ConicIntersection> {
    if a.same_as(b, 1e-12) {
        return Err(Error::ProportionalConics);
    }
    let (an, bn) = (a.scaled(1.0 / a.frobenius()), b.scaled(1.0 / b.frobenius()));
    let pencil = PencilRoots::compute(&an, &bn);
    let mut candidates: Vec<Matrix3<f64>> = pencil
        .roots
        .iter()
        .filter(|(r, _)| r.im.abs() <= 1e-6 * (1.0 + r.norm()))
        .map(|(r, _)| an.matrix() + bn.matrix() * r.re)
        .collect();
    if bn.det().abs() < 1e-12 {
        // λ = ∞: B itself is degenerate.
        candidates.push(*bn.matrix());
    }
    let mut best: Option<(f64, [CHomVec3; 4])> = None;
    for d in candidates {
        let Some((g, h)) = split_degenerate(&d) else {
            continue;
        };
        let [p1, p2] = line_conic_points(&g, &an);
        let [p3, p4] = line_conic_points(&h, &an);
        let pts = [p1, p2, p3, p4].map(|p| p.normalized());
        let worst = pts
            .iter()
            .map(|p| an.eval_complex(p).norm().max(bn.eval_complex(p).norm()) / p.norm().powi(2))
            .fold(0.0, f64::max);
        if best.as_ref().is_none_or(|(w, _)| worst < *w) {
            best = Some((worst, pts));
        }
    }
    let (_, pts) = best.ok_or(Error::SplitFailure)?;
    let mut points: Vec<IntersectionPoint> = Vec::new();
    for p in pts {
        match points.iter_mut().find(|q| q.point.same_as(&p, ROOT_CLUSTER_TOL)) {
            Some(q) => q.multiplicity += 1,
            None => points.push(IntersectionPoint {
                point: p,
                multiplicity: 1,
            }),
        }
    }
    Ok(ConicIntersection { points })
}

/// Something that SL(3, R) acts on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Projective {
    Point(HomVec3),
    Line(HomVec3),
    Conic(Conic3),
}

/// Points map by `M`, lines by `M⁻ᵀ`, conics by `M⁻ᵀ Q M⁻¹`.
pub fn sl3_transform(m: &Matrix3<f64>, obj: &Projective) -> Result<Projective> {
    let det = m.determinant();
    if det.abs() <= 1e-12 * m.norm().powi(3) {
        return Err(Error::SingularMatrix);
    }
    let inv = m.try_inverse().ok_or(Error::SingularMatrix)?;
    Ok(match obj {
        Projective::Point(p) => Projective::Point(HomVec3::from_vector(&(m * p.to_vector()))),
        Projective::Line(l) => {
            Projective::Line(HomVec3::from_vector(&(inv.transpose() * l.to_vector())))
        }
        Projective::Conic(q) => Projective::Conic(Conic3::new(inv.transpose() * q.matrix() * inv)),
    })
}

/// Convenience wrappers around [`sl3_transform`].
pub fn transform_point(m: &Matrix3<f64>, p: &HomVec3) -> Result<HomVec3> {
    match sl3_transform(m, &Projective::Point(*p))? {
        Projective::Point(q) => Ok(q),
        _ => unreachable!(),
    }
}

pub fn transform_line(m: &Matrix3<f64>, l: &HomVec3) -> Result<HomVec3> {
    match sl3_transform(m, &Projective::Line(*l))? {
        Projective::Line(q) => Ok(q),
        _ => unreachable!(),
    }
}

pub fn transform_conic(m: &Matrix3<f64>, c: &Conic3) -> Result<Conic3> {
    match sl3_transform(m, &Projective::Conic(*c))? {
        Projective::Conic(q) => Ok(q),
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &HomVec3, b: &HomVec3) -> bool {
        a.same_as(b, 1e-12) && a.dot(b) > 0.0
    }

    #[test]
    fn cross_join_examples() {
        let j = cross_join(&HomVec3::new(1., 0., 0.), &HomVec3::new(0., 1., 0.)).unwrap();
        assert_eq!(j, HomVec3::new(0., 0., 1.));
        let j = cross_join(&HomVec3::new(0., 0., 1.), &HomVec3::new(1., 0., 1.)).unwrap();
        assert_eq!(j, HomVec3::new(0., 1., 0.));
        let j = cross_join(&HomVec3::new(0., 0., 1.), &HomVec3::new(0., 1., 1.)).unwrap();
        assert_eq!(j, HomVec3::new(-1., 0., 0.));
        assert_eq!(
            cross_join(&HomVec3::new(1., 2., 3.), &HomVec3::new(-2., -4., -6.)),
            Err(Error::ProportionalInputs)
        );
    }

    #[test]
    fn collinear_det_examples() {
        let e = |x, y, z| HomVec3::new(x, y, z);
        assert_eq!(collinear_det(&e(1., 0., 0.), &e(0., 1., 0.), &e(0., 0., 1.)), 1.0);
        assert_eq!(collinear_det(&e(1., 0., 1.), &e(0., 0., 1.), &e(-1., 0., 1.)), 0.0);
        assert_eq!(collinear_det(&e(0., 0., 1.), &e(1., 0., 1.), &e(-1., 0., 0.)), 0.0);
    }

    #[test]
    fn polar_examples() {
        let circle = Conic3::diag(1., 1., -1.);
        let p = conic_apply(&circle, &HomVec3::new(1., 0., 1.)).unwrap();
        assert_eq!(p, HomVec3::new(1., 0., -1.));
        let p = conic_apply(&circle, &HomVec3::new(0., 0., 1.)).unwrap();
        assert_eq!(p, HomVec3::new(0., 0., -1.));
        let a = HomVec3::new(2., 0., 1.);
        let p = conic_apply(&Conic3::diag(2., 1., -1.), &a).unwrap();
        assert_eq!(p, HomVec3::new(4., 0., -1.));
        assert_eq!(a.dot(&p), 7.0);
        // Singular point of a line pair.
        let pair = Conic3::diag(1., -1., 0.);
        assert_eq!(
            conic_apply(&pair, &HomVec3::new(0., 0., 1.)),
            Err(Error::ZeroPolar)
        );
    }

    #[test]
    fn five_point_conic_unit_circle() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let pts = [
            HomVec3::affine(1., 0.),
            HomVec3::affine(-1., 0.),
            HomVec3::affine(0., 1.),
            HomVec3::affine(0., -1.),
            HomVec3::affine(s, s),
        ];
        let c = conic_through_five(&pts).unwrap();
        assert!(c.same_as(&Conic3::diag(1., 1., -1.), 1e-12));
    }

    #[test]
    fn five_point_conic_ellipse() {
        // x² + 4y² = 4
        let pts = [(2., 0.), (-2., 0.), (0., 1.), (0., -1.), (1.2, 0.8)]
            .map(|(x, y)| HomVec3::affine(x, y));
        let c = conic_through_five(&pts).unwrap();
        assert!(c.same_as(&Conic3::diag(1., 4., -4.), 1e-12));
    }

    #[test]
    fn five_point_conic_rank_deficient() {
        let pts = [(0., 0.), (1., 0.), (1., 1.), (0., 1.), (1., 1.)].map(|(x, y)| HomVec3::affine(x, y));
        assert!(matches!(
            conic_through_five(&pts),
            Err(Error::DegenerateConfiguration(_))
        ));
        // Four collinear points.
        let pts = [(0., 0.), (1., 0.), (2., 0.), (3., 0.), (0., 1.)].map(|(x, y)| HomVec3::affine(x, y));
        assert!(conic_through_five(&pts).is_err());
    }

    #[test]
    fn six_point_determinant() {
        let on_circle: [HomVec3; 6] = std::array::from_fn(|k| {
            let t = 0.4 + k as f64;
            HomVec3::affine(t.cos(), t.sin())
        });
        assert!(six_point_conic_det_real(&on_circle).abs() < 1e-14);
        let generic = [
            HomVec3::new(1., 0., 0.),
            HomVec3::new(0., 1., 0.),
            HomVec3::new(0., 0., 1.),
            HomVec3::new(1., 1., 1.),
            HomVec3::new(1., 2., 3.),
            HomVec3::new(5., 1., 2.),
        ];
        assert!(six_point_conic_det_real(&generic).abs() > 1e-3);
        let mut rep = generic;
        rep[5] = rep[2];
        assert_eq!(six_point_conic_det_real(&rep), 0.0);
    }

    #[test]
    fn intersect_circle_and_ellipse() {
        let a = Conic3::diag(1., 1., -1.);
        let b = Conic3::diag(1., 4., -2.);
        let x = conic_intersect(&a, &b).unwrap();
        let real = x.real_points(1e-10);
        assert_eq!(real.len(), 4);
        assert!(x.points.iter().all(|p| p.multiplicity == 1));
        let (sx, sy) = ((2.0f64 / 3.0).sqrt(), 1.0 / 3.0f64.sqrt());
        for (ex, ey) in [(sx, sy), (sx, -sy), (-sx, sy), (-sx, -sy)] {
            let e = HomVec3::affine(ex, ey);
            assert!(real.iter().any(|p| p.same_as(&e, 1e-10)), "missing {ex},{ey}");
        }
    }

    #[test]
    fn intersect_tangent_conics() {
        let x = conic_intersect(&Conic3::diag(1., 1., -1.), &Conic3::diag(2., 1., -1.)).unwrap();
        assert_eq!(x.points.len(), 2);
        for p in &x.points {
            assert_eq!(p.multiplicity, 2);
            let r = p.point.to_real(1e-6).unwrap();
            assert!(r.same_as(&HomVec3::new(0., 1., 1.), 1e-6) || r.same_as(&HomVec3::new(0., -1., 1.), 1e-6));
        }
    }

    #[test]
    fn intersect_concentric_circles_is_complex() {
        let a = Conic3::diag(1., 1., -1.);
        let b = Conic3::diag(1., 1., -4.);
        let x = conic_intersect(&a, &b).unwrap();
        assert!(x.real_points(1e-8).is_empty());
        for p in x.all_four() {
            assert!(a.eval_complex(&p).norm() < 1e-8);
            assert!(b.eval_complex(&p).norm() < 1e-8);
        }
    }

    #[test]
    fn proportional_conics_rejected() {
        let a = Conic3::diag(1., 2., -1.);
        assert_eq!(conic_intersect(&a, &a.scaled(-3.0)), Err(Error::ProportionalConics));
    }

    #[test]
    fn pencil_roots_of_tangent_pair() {
        // det(A + λB) = -(1 + 2λ)(1 + λ)²
        let r = PencilRoots::compute(&Conic3::diag(1., 1., -1.), &Conic3::diag(2., 1., -1.));
        assert_eq!(r.roots.len(), 2);
        for (lambda, mult) in &r.roots {
            assert!(r.residual(*lambda).norm() < 1e-10);
            if (lambda.re + 1.0).abs() < 1e-6 {
                assert_eq!(*mult, 2);
            } else {
                assert!((lambda.re + 0.5).abs() < 1e-12);
                assert_eq!(*mult, 1);
            }
        }
    }

    #[test]
    fn sl3_examples() {
        let p = HomVec3::new(1., 0., 1.);
        let id = Matrix3::identity();
        assert_eq!(transform_point(&id, &p).unwrap(), p);
        let m = Matrix3::from_diagonal(&Vector3::new(2., 1., 0.5));
        let q = transform_point(&m, &p).unwrap();
        assert!(close(&q, &HomVec3::new(4., 0., 1.)));
        let conic = Conic3::diag(1., 1., -1.);
        let line = HomVec3::new(1., 0., -1.);
        let (q2, c2, l2) = (
            transform_point(&m, &p).unwrap(),
            transform_conic(&m, &conic).unwrap(),
            transform_line(&m, &line).unwrap(),
        );
        // incidences are preserved exactly for det-1 maps
        assert!((c2.eval(&q2) - conic.eval(&p)).abs() < 1e-14);
        assert!((q2.dot(&l2) - p.dot(&line)).abs() < 1e-14);
        assert_eq!(
            sl3_transform(&Matrix3::zeros(), &Projective::Point(p)),
            Err(Error::SingularMatrix)
        );
    }
}
