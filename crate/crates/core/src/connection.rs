//! Two-dimensional projective structures and the Einstein ASD metrics they
//! induce on the bundle of `(x, ζ)`.
//!
//! Conventions for a torsion-free connection on the plane:
//!
//! * `R^A_{BCD} = ∂_C Γ^A_{DB} − ∂_D Γ^A_{CB} + Γ^A_{CE} Γ^E_{DB} − Γ^A_{DE} Γ^E_{CB}`
//! * `Ric_{BD} = R^A_{BAD}`
//! * `P_{AB} = Ric_{(AB)} − ⅓ Ric_{[AB]}`, which is the unique tensor with
//!   `R^A_{BCD} = δ^A_C P_{DB} − δ^A_D P_{CB} − 2 P_{[CD]} δ^A_B`.

use rand::Rng;

use crate::curvature::{curvature, jet_point, MetricField4, Tensor2};
use crate::error::{Error, Result};
use crate::jet::{Dual, Jet2, Scalar};

/// `Γ^C_{AB}` stored as `[C][A][B]`.
pub type Gamma<S> = [[[S; 2]; 2]; 2];
/// Rank-three tensor on the plane, `[A][B][C]`.
pub type Tensor3x2 = [[[f64; 2]; 2]; 2];

/// A torsion-free affine connection on a chart of the plane, written once for
/// any [`Scalar`] so that derivatives come from jet arithmetic.
pub trait ProjConn2D {
    /// Christoffel symbols at `x`; must be symmetric in the lower pair.
    fn gamma<S: Scalar>(&self, x: [S; 2]) -> Gamma<S>;
}

impl<T: ProjConn2D + ?Sized> ProjConn2D for &T {
    fn gamma<S: Scalar>(&self, x: [S; 2]) -> Gamma<S> {
        (**self).gamma(x)
    }
}

/// `Γ ≡ 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FlatConnection;

impl ProjConn2D for FlatConnection {
    fn gamma<S: Scalar>(&self, _x: [S; 2]) -> Gamma<S> {
        [[[S::zero(); 2]; 2]; 2]
    }
}

/// Levi-Civita connection of the round sphere in the gnomonic (Beltrami)
/// chart, `Γ^C_{AB} = −(δ^C_A x_B + δ^C_B x_A) / (1 + |x|²)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RoundSphereConnection;

impl ProjConn2D for RoundSphereConnection {
    fn gamma<S: Scalar>(&self, x: [S; 2]) -> Gamma<S> {
        let w = -(S::one() / (S::one() + x[0] * x[0] + x[1] * x[1]));
        let mut g = [[[S::zero(); 2]; 2]; 2];
        for c in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    let mut v = S::zero();
                    if c == a {
                        v = v + x[b];
                    }
                    if c == b {
                        v = v + x[a];
                    }
                    g[c][a][b] = v * w;
                }
            }
        }
        g
    }
}

/// Number of monomials `1, x⁰, x¹, (x⁰)², x⁰x¹, (x¹)²`.
pub const QUADRATIC_MONOMIALS: usize = 6;

/// Connection whose components are quadratic polynomials.
///
/// `coeffs[C][k][m]` is the coefficient of monomial `m` in `Γ^C_{AB}` where
/// `k` indexes the lower pairs `(0,0), (0,1), (1,1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialConnection {
    pub coeffs: [[[f64; QUADRATIC_MONOMIALS]; 3]; 2],
}

fn pair_index(a: usize, b: usize) -> usize {
    a + b
}

impl PolynomialConnection {
    pub fn zero() -> Self {
        Self {
            coeffs: [[[0.0; QUADRATIC_MONOMIALS]; 3]; 2],
        }
    }

    /// Coefficients uniform in `[−1, 1]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut c = Self::zero();
        for v in c.coeffs.iter_mut().flatten().flatten() {
            *v = rng.random_range(-1.0..=1.0);
        }
        c
    }

    /// `Γ⁰₀₀ = x¹`, all other components zero.
    pub fn single_component() -> Self {
        let mut c = Self::zero();
        c.coeffs[0][pair_index(0, 0)][2] = 1.0;
        c
    }
}

impl ProjConn2D for PolynomialConnection {
    fn gamma<S: Scalar>(&self, x: [S; 2]) -> Gamma<S> {
        let mono = [S::one(), x[0], x[1], x[0] * x[0], x[0] * x[1], x[1] * x[1]];
        let mut g = [[[S::zero(); 2]; 2]; 2];
        for (c, gc) in g.iter_mut().enumerate() {
            for a in 0..2 {
                for b in 0..2 {
                    let k = &self.coeffs[c][pair_index(a, b)];
                    gc[a][b] = mono
                        .iter()
                        .zip(k.iter())
                        .fold(S::zero(), |acc, (&m, &w)| acc + m.scale(w));
                }
            }
        }
        g
    }
}

/// The representative of `conn`'s projective class with `Γ^A_{AB} = 0`.
#[derive(Debug, Clone)]
pub struct TraceFree<C>(pub C);

impl<C: ProjConn2D> ProjConn2D for TraceFree<C> {
    fn gamma<S: Scalar>(&self, x: [S; 2]) -> Gamma<S> {
        let mut g = self.0.gamma(x);
        let tau: [S; 2] = std::array::from_fn(|b| g[0][0][b] + g[1][1][b]);
        let third = 1.0 / 3.0;
        for c in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    let mut shift = S::zero();
                    if c == a {
                        shift = shift + tau[b];
                    }
                    if c == b {
                        shift = shift + tau[a];
                    }
                    g[c][a][b] = g[c][a][b] - shift.scale(third);
                }
            }
        }
        g
    }
}

/// `Γ` and `∂_D Γ^C_{AB}` (as `[D][C][A][B]`) at `x`.
pub fn gamma_with_derivatives<C: ProjConn2D + ?Sized, S: Scalar>(conn: &C, x: [S; 2]) -> (Gamma<S>, [Gamma<S>; 2]) {
    let xd = [Dual::variable(x[0], 0), Dual::variable(x[1], 1)];
    let gd = conn.gamma(xd);
    let g = gd.map(|r| r.map(|s| s.map(|v| v.value)));
    let dg = [0, 1].map(|d| gd.map(|r| r.map(|s| s.map(|v| v.d[d]))));
    (g, dg)
}

/// Curvature `R^A_{BCD}` as `[A][B][C][D]`.
pub fn connection_curvature<C: ProjConn2D + ?Sized, S: Scalar>(conn: &C, x: [S; 2]) -> [[[[S; 2]; 2]; 2]; 2] {
    let (g, dg) = gamma_with_derivatives(conn, x);
    std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            std::array::from_fn(|c| {
                std::array::from_fn(|d| {
                    let mut v = dg[c][a][d][b] - dg[d][a][c][b];
                    for e in 0..2 {
                        v = v + g[a][c][e] * g[e][d][b] - g[a][d][e] * g[e][c][b];
                    }
                    v
                })
            })
        })
    })
}

/// Projective Schouten tensor `P_{AB}` over any scalar type.
pub fn schouten_generic<C: ProjConn2D + ?Sized, S: Scalar>(conn: &C, x: [S; 2]) -> [[S; 2]; 2] {
    let r = connection_curvature(conn, x);
    let ric: [[S; 2]; 2] = std::array::from_fn(|b| std::array::from_fn(|d| r[0][b][0][d] + r[1][b][1][d]));
    std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let sym = (ric[a][b] + ric[b][a]).scale(0.5);
            let skew = (ric[a][b] - ric[b][a]).scale(0.5);
            sym - skew.scale(1.0 / 3.0)
        })
    })
}

/// Projective Schouten tensor at a point (not necessarily symmetric).
pub fn schouten<C: ProjConn2D + ?Sized>(conn: &C, x: [f64; 2]) -> [[f64; 2]; 2] {
    schouten_generic(conn, x)
}

/// `Y_{ABC} = ∇_{[A} P_{B]C}` (with the ½ of the bracket), as `[A][B][C]`.
pub fn flatness_obstruction<C: ProjConn2D + ?Sized>(conn: &C, x: [f64; 2]) -> Tensor3x2 {
    let xd = [Dual::variable(x[0], 0), Dual::variable(x[1], 1)];
    let pd = schouten_generic(conn, xd);
    let p = pd.map(|r| r.map(|v| v.value));
    let g = conn.gamma(x);
    let nabla = |a: usize, b: usize, c: usize| {
        let mut v = pd[b][c].d[a];
        for e in 0..2 {
            v -= g[e][a][b] * p[e][c] + g[e][a][c] * p[b][e];
        }
        v
    };
    std::array::from_fn(|a| std::array::from_fn(|b| std::array::from_fn(|c| 0.5 * (nabla(a, b, c) - nabla(b, a, c)))))
}

/// `max |Y_{ABC}|`.
pub fn obstruction_norm(y: &Tensor3x2) -> f64 {
    y.iter().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

/// `g = dζ_A ⊙ dx^A + Θ_{AB} dx^A ⊙ dx^B` with
/// `Θ_{AB} = ζ_A ζ_B + P_{(AB)} − Γ^C_{AB} ζ_C`, in the chart `(x⁰, x¹, ζ₀, ζ₁)`.
#[derive(Debug, Clone)]
pub struct FamilyMetric<C> {
    pub conn: C,
}

pub fn build_family_metric<C: ProjConn2D>(conn: C) -> FamilyMetric<C> {
    FamilyMetric { conn }
}

impl<C: ProjConn2D> FamilyMetric<C> {
    pub fn theta<S: Scalar>(&self, x: [S; 4]) -> [[S; 2]; 2] {
        let base = [x[0], x[1]];
        let zeta = [x[2], x[3]];
        let g = self.conn.gamma(base);
        let p = schouten_generic(&self.conn, base);
        std::array::from_fn(|a| {
            std::array::from_fn(|b| {
                let mut v = zeta[a] * zeta[b] + (p[a][b] + p[b][a]).scale(0.5);
                for c in 0..2 {
                    v = v - g[c][a][b] * zeta[c];
                }
                v
            })
        })
    }
}

impl<C: ProjConn2D> MetricField4 for FamilyMetric<C> {
    fn metric<S: Scalar>(&self, x: [S; 4]) -> [[S; 4]; 4] {
        let theta = self.theta(x);
        let mut g = [[S::zero(); 4]; 4];
        for a in 0..2 {
            for b in 0..2 {
                g[a][b] = theta[a][b];
            }
            g[a][a + 2] = S::from_f64(0.5);
            g[a + 2][a] = S::from_f64(0.5);
        }
        g
    }
}

/// Normalization between the ratio `∇Σ₁ / Σ₁` and the potential `𝓐`, chosen
/// so that `d𝓐 = dζ_A ∧ dx^A + P_{AB} dx^A ∧ dx^B`.
pub const RECURRENCE_FACTOR: f64 = 3.0;

/// Recurrence data `∇Σ = κ ⊗ Σ` for a parallel-up-to-scale two-form.
#[derive(Debug, Clone)]
pub struct Recurrence {
    /// `κ_μ`, the common ratio `(∇_μ Σ)_{ab} / Σ_{ab}`.
    pub ratio: [f64; 4],
    /// `(dκ)_{μν} = ∂_μ κ_ν − ∂_ν κ_μ`.
    pub d_ratio: Tensor2,
    /// `𝓐 = κ / RECURRENCE_FACTOR`.
    pub potential: [f64; 4],
    pub d_potential: Tensor2,
    /// Coefficient of `dζ_A ∧ dx^A` in `dκ`, averaged over `A`.
    pub measured_factor: f64,
}

/// `Σ₁ = dx⁰ ∧ dx¹` as a component matrix.
pub fn sigma_one() -> Tensor2 {
    let mut s = [[0.0; 4]; 4];
    s[0][1] = 1.0;
    s[1][0] = -1.0;
    s
}

/// Recurrence of the constant-coefficient two-form `sigma`.
pub fn recurrence_of<M: MetricField4 + ?Sized>(field: &M, x: [f64; 4], sigma: &Tensor2) -> Result<Recurrence> {
    let pack = curvature(field, x)?;
    let gam = &pack.christoffel;
    let dgam = &pack.d_christoffel;
    let nabla = |m: usize, a: usize, b: usize| -> f64 {
        (0..4).map(|l| -gam[l][m][a] * sigma[l][b] - gam[l][m][b] * sigma[a][l]).sum()
    };
    let d_nabla = |n: usize, m: usize, a: usize, b: usize| -> f64 {
        (0..4).map(|l| -dgam[n][l][m][a] * sigma[l][b] - dgam[n][l][m][b] * sigma[a][l]).sum()
    };
    let (mut i0, mut j0, mut best) = (0, 0, 0.0);
    for (i, row) in sigma.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v.abs() > best {
                best = v.abs();
                (i0, j0) = (i, j);
            }
        }
    }
    if best == 0.0 {
        return Err(Error::InconsistentRecurrence(f64::INFINITY));
    }
    let s0 = sigma[i0][j0];
    let ratio: [f64; 4] = std::array::from_fn(|m| nabla(m, i0, j0) / s0);
    let mut scale: f64 = 0.0;
    let mut defect: f64 = 0.0;
    for m in 0..4 {
        for a in 0..4 {
            for b in 0..4 {
                let v = nabla(m, a, b);
                scale = scale.max(v.abs());
                defect = defect.max((v - ratio[m] * sigma[a][b]).abs());
            }
        }
    }
    let rel = defect / (scale + best);
    if rel > 1e-8 {
        return Err(Error::InconsistentRecurrence(rel));
    }
    let d_kappa: [[f64; 4]; 4] = std::array::from_fn(|n| std::array::from_fn(|m| d_nabla(n, m, i0, j0) / s0));
    let d_ratio: Tensor2 = std::array::from_fn(|i| std::array::from_fn(|j| d_kappa[i][j] - d_kappa[j][i]));
    Ok(Recurrence {
        ratio,
        d_ratio,
        potential: ratio.map(|v| v / RECURRENCE_FACTOR),
        d_potential: d_ratio.map(|r| r.map(|v| v / RECURRENCE_FACTOR)),
        measured_factor: 0.5 * (d_ratio[2][0] + d_ratio[3][1]),
    })
}

/// Recurrence of `Σ₁ = dx⁰ ∧ dx¹`.
pub fn recurrence_one_form<M: MetricField4 + ?Sized>(field: &M, x: [f64; 4]) -> Result<Recurrence> {
    recurrence_of(field, x, &sigma_one())
}

/// `dζ_A ∧ dx^A + P_{AB} dx^A ∧ dx^B` at `x` as a component matrix.
pub fn expected_symplectic_form<C: ProjConn2D + ?Sized>(conn: &C, x: [f64; 4]) -> Tensor2 {
    let p = schouten(conn, [x[0], x[1]]);
    let mut w = [[0.0; 4]; 4];
    for a in 0..2 {
        w[a + 2][a] = 1.0;
        w[a][a + 2] = -1.0;
    }
    w[0][1] = p[0][1] - p[1][0];
    w[1][0] = -w[0][1];
    w
}

/// Ratio between `dΣ₂ + κ ∧ Σ₂` and `ε^{CD} ∇_{[A} P_{B]C} dx^A ∧ dx^B ∧ dζ_D`.
pub const IDENTITY_FACTOR: f64 = 2.0;

const TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];

/// Both sides of the three-form identity, as components on `dx^μ ∧ dx^ν ∧ dx^ρ`
/// for `μ < ν < ρ` in the order `012, 013, 023, 123`.
#[derive(Debug, Clone)]
pub struct MapleIdentity {
    /// `dΣ₂ + κ ∧ Σ₂`.
    pub lhs: [f64; 4],
    /// `IDENTITY_FACTOR · ε^{CD} Y_{ABC} dx^A ∧ dx^B ∧ dζ_D`.
    pub rhs: [f64; 4],
    /// `max |Y_{ABC}|`.
    pub obstruction: f64,
    /// Largest ratio `lhs / (rhs / IDENTITY_FACTOR)` over nonzero components.
    pub measured_factor: Option<f64>,
}

impl MapleIdentity {
    pub fn residual(&self) -> f64 {
        self.lhs.iter().zip(&self.rhs).fold(0.0, |m, (l, r)| m.max((l - r).abs()))
    }

    pub fn lhs_norm(&self) -> f64 {
        self.lhs.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn rhs_norm(&self) -> f64 {
        self.rhs.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Evaluates the identity for the trace-free representative of `conn`'s
/// projective class at the bundle point `x`.
pub fn maple_identity<C: ProjConn2D + Clone>(conn: &C, x: [f64; 4]) -> Result<MapleIdentity> {
    let tf = TraceFree(conn.clone());
    let metric = build_family_metric(tf.clone());
    let kappa = recurrence_one_form(&metric, x)?.ratio;
    let theta = metric.theta(jet_point(x));
    let theta_row = |a: usize, mu: usize| -> Jet2 {
        if mu < 2 {
            theta[a][mu]
        } else if mu == a + 2 {
            Jet2::one()
        } else {
            Jet2::zero()
        }
    };
    // Σ₂ = ε^{AB} θ_A ∧ θ_B = 2 θ_0 ∧ θ_1
    let sigma2: [[Jet2; 4]; 4] = std::array::from_fn(|m| {
        std::array::from_fn(|n| (theta_row(0, m) * theta_row(1, n) - theta_row(0, n) * theta_row(1, m)).scale(2.0))
    });
    let lhs = TRIPLES.map(|[m, n, p]| {
        sigma2[n][p].grad[m]
            + sigma2[p][m].grad[n]
            + sigma2[m][n].grad[p]
            + kappa[m] * sigma2[n][p].value
            + kappa[n] * sigma2[p][m].value
            + kappa[p] * sigma2[m][n].value
    });
    let y = flatness_obstruction(&tf, [x[0], x[1]]);
    // ε^{01} = 1; summing over ordered (A, B) doubles the (0, 1) term
    let eps = [[0.0, 1.0], [-1.0, 0.0]];
    let stated: [f64; 2] = std::array::from_fn(|d| (0..2).map(|c| 2.0 * eps[c][d] * y[0][1][c]).sum());
    let rhs = [IDENTITY_FACTOR * stated[0], IDENTITY_FACTOR * stated[1], 0.0, 0.0];
    let measured_factor = (0..2)
        .filter(|&d| stated[d].abs() > 1e-12)
        .max_by(|&a, &b| stated[a].abs().total_cmp(&stated[b].abs()))
        .map(|d| lhs[d] / stated[d]);
    Ok(MapleIdentity {
        lhs,
        rhs,
        obstruction: obstruction_norm(&y),
        measured_factor,
    })
}

/// Max-norm difference of the two sides of the identity.
pub fn maple_identity_residual<C: ProjConn2D + Clone>(conn: &C, x: [f64; 4]) -> Result<f64> {
    Ok(maple_identity(conn, x)?.residual())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::DancingMetric;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const X4: [f64; 4] = [0.3, -0.4, 0.7, -1.1];

    #[test]
    fn flat_connection_has_zero_schouten() {
        assert_eq!(schouten(&FlatConnection, [0.2, 0.5]), [[0.0; 2]; 2]);
    }

    #[test]
    fn flat_family_metric_is_the_dancing_metric() {
        let m = build_family_metric(FlatConnection);
        assert_eq!(m.values(X4), DancingMetric.values(X4));
    }

    #[test]
    fn sphere_schouten_is_symmetric_and_nonzero() {
        let p = schouten(&RoundSphereConnection, [0.3, -0.2]);
        assert!((p[0][1] - p[1][0]).abs() < 1e-14);
        assert!(p[0][0].abs() > 0.1);
    }

    #[test]
    fn schouten_decomposes_curvature() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let conn = PolynomialConnection::random(&mut rng);
        let x = [0.4, -0.3];
        let r = connection_curvature(&conn, x);
        let p = schouten(&conn, x);
        let delta = |i: usize, j: usize| (i == j) as u8 as f64;
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        let beta = -(p[c][d] - p[d][c]);
                        let rebuilt = delta(a, c) * p[d][b] - delta(a, d) * p[c][b] + beta * delta(a, b);
                        assert!((rebuilt - r[a][b][c][d]).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn trace_free_representative_is_trace_free_and_same_obstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let conn = PolynomialConnection::random(&mut rng);
        let tf = TraceFree(conn.clone());
        let g = tf.gamma([0.1, 0.6]);
        for b in 0..2 {
            assert!((g[0][0][b] + g[1][1][b]).abs() < 1e-14);
        }
        let y0 = flatness_obstruction(&conn, [0.1, 0.6]);
        let y1 = flatness_obstruction(&tf, [0.1, 0.6]);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    assert!((y0[a][b][c] - y1[a][b][c]).abs() < 1e-10 * (1.0 + obstruction_norm(&y0)));
                }
            }
        }
    }

    #[test]
    fn sphere_is_projectively_flat() {
        let y = flatness_obstruction(&RoundSphereConnection, [0.7, -1.3]);
        assert!(obstruction_norm(&y) < 1e-12);
    }

    #[test]
    fn random_connection_is_not_projectively_flat() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let conn = PolynomialConnection::random(&mut rng);
        assert!(obstruction_norm(&flatness_obstruction(&conn, [0.2, 0.3])) > 1e-3);
    }

    #[test]
    fn family_metric_is_einstein_asd() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let conn = PolynomialConnection::random(&mut rng);
        let pack = curvature(&build_family_metric(conn), X4).unwrap();
        assert!(pack.einstein_residual() < 1e-10, "{}", pack.einstein_residual());
        assert!((pack.lambda() - 6.0).abs() < 1e-9);
        let (wp, wm) = pack.weyl_norms();
        assert!(wp < 1e-9 * (1.0 + wm));
    }

    #[test]
    fn recurrence_potential_has_symplectic_curvature() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let conn = PolynomialConnection::random(&mut rng);
        let rec = recurrence_one_form(&build_family_metric(conn.clone()), X4).unwrap();
        assert!((rec.measured_factor - RECURRENCE_FACTOR).abs() < 1e-10);
        let w = expected_symplectic_form(&conn, X4);
        for i in 0..4 {
            for j in 0..4 {
                assert!((rec.d_potential[i][j] - w[i][j]).abs() < 1e-10, "{i}{j}");
            }
        }
    }

    #[test]
    fn recurrence_is_scale_free() {
        let m = build_family_metric(RoundSphereConnection);
        let a = recurrence_one_form(&m, X4).unwrap();
        let s = sigma_one().map(|r| r.map(|v| -3.5 * v));
        let b = recurrence_of(&m, X4, &s).unwrap();
        for i in 0..4 {
            assert!((a.potential[i] - b.potential[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn identity_holds_for_random_connection() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let conn = PolynomialConnection::random(&mut rng);
        let id = maple_identity(&conn, X4).unwrap();
        assert!(id.residual() < 1e-9, "{:?}", id);
        assert!(id.lhs_norm() > 1e-3);
        assert!((id.measured_factor.unwrap() - IDENTITY_FACTOR).abs() < 1e-8);
    }

    #[test]
    fn identity_sides_vanish_for_sphere() {
        let id = maple_identity(&RoundSphereConnection, X4).unwrap();
        assert!(id.lhs_norm() < 1e-10 && id.rhs_norm() < 1e-10);
    }
}
