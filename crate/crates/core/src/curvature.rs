//! Levi-Civita curvature of four-dimensional metrics given by exact jets.
//!
//! Sign conventions:
//!
//! * `R^ρ_{σμν} = ∂_μ Γ^ρ_{νσ} − ∂_ν Γ^ρ_{μσ} + Γ^ρ_{μλ} Γ^λ_{νσ} − Γ^ρ_{νλ} Γ^λ_{μσ}`
//! * `R_{σν} = R^ρ_{σρν}` (positive scalar curvature on round spheres)
//! * `(*ω)_{μν} = ½ ε_{μνρσ} ω^{ρσ}` with `ε_{0123} = s √|det g|`, where
//!   `s` is the [`Orientation`] sign.

use nalgebra::{Matrix4, SymmetricEigen};

use crate::error::{Error, Result};
use crate::jet::{Jet2, Scalar};

pub type Tensor2 = [[f64; 4]; 4];
pub type Tensor3 = [[[f64; 4]; 4]; 4];
pub type Tensor4 = [[[[f64; 4]; 4]; 4]; 4];
pub type Mat3 = [[f64; 3]; 3];

/// A metric on a chart of ℝ⁴, written once for any [`Scalar`] so that it
/// can be evaluated on plain floats (finite differences) and on jets.
pub trait MetricField4 {
    /// Symmetric components `g_{μν}(x)`.
    fn metric<S: Scalar>(&self, x: [S; 4]) -> [[S; 4]; 4];

    /// Components with exact first and second partials.
    fn components(&self, x: [f64; 4]) -> [[Jet2; 4]; 4] {
        self.metric(jet_point(x))
    }

    fn values(&self, x: [f64; 4]) -> Tensor2 {
        self.metric(x)
    }
}

/// Seeds the four coordinate functions as jets at `x`.
pub fn jet_point(x: [f64; 4]) -> [Jet2; 4] {
    [0, 1, 2, 3].map(|i| Jet2::variable(x[i], i))
}

/// Choice of volume form sign for the Hodge star.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Self::Positive => 1.0,
            Self::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Self::Positive => Self::Negative,
            Self::Negative => Self::Positive,
        }
    }
}

/// Orientation of the chart `(x⁰, x¹, ζ₀, ζ₁)` under which `dx⁰ ∧ dx¹` is
/// anti-self-dual and the dancing metric has vanishing self-dual Weyl part.
pub const MODULE_ORIENTATION: Orientation = Orientation::Negative;

/// `g = dζ₀ dx⁰ + dζ₁ dx¹` in the chart `(x⁰, x¹, ζ₀, ζ₁)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FlatNeutralMetric;

impl MetricField4 for FlatNeutralMetric {
    fn metric<S: Scalar>(&self, _x: [S; 4]) -> [[S; 4]; 4] {
        let mut g = [[S::zero(); 4]; 4];
        for a in 0..2 {
            g[a][a + 2] = S::from_f64(0.5);
            g[a + 2][a] = S::from_f64(0.5);
        }
        g
    }
}

/// The dancing metric `g = dζ₀dx⁰ + dζ₁dx¹ + (ζ₀dx⁰ + ζ₁dx¹)²`.
#[derive(Debug, Clone, Copy, Default)]
pub struct DancingMetric;

impl MetricField4 for DancingMetric {
    fn metric<S: Scalar>(&self, x: [S; 4]) -> [[S; 4]; 4] {
        let mut g = FlatNeutralMetric.metric(x);
        let zeta = [x[2], x[3]];
        for a in 0..2 {
            for b in 0..2 {
                g[a][b] = zeta[a] * zeta[b];
            }
        }
        g
    }
}

/// `(1 + f)² (dζ₀dx⁰ + dζ₁dx¹)` with `f = 0.3 x⁰ − 0.2 x¹ζ₁ + 0.1 ζ₀²`: a
/// conformally flat neutral metric with nonzero Ricci curvature.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConformallyFlatMetric;

impl MetricField4 for ConformallyFlatMetric {
    fn metric<S: Scalar>(&self, x: [S; 4]) -> [[S; 4]; 4] {
        let f = x[0].scale(0.3) - x[1] * x[3].scale(0.2) + x[2] * x[2].scale(0.1);
        let w = (S::one() + f) * (S::one() + f);
        let mut g = FlatNeutralMetric.metric(x);
        for row in g.iter_mut() {
            for c in row.iter_mut() {
                *c = *c * w;
            }
        }
        g
    }
}

/// Round 4-sphere of radius one in stereographic coordinates (Riemannian).
#[derive(Debug, Clone, Copy, Default)]
pub struct RoundSphere4;

impl MetricField4 for RoundSphere4 {
    fn metric<S: Scalar>(&self, x: [S; 4]) -> [[S; 4]; 4] {
        let r2 = x.iter().fold(S::zero(), |acc, &v| acc + v * v);
        let d = S::one() + r2;
        let w = S::from_f64(4.0) / (d * d);
        let mut g = [[S::zero(); 4]; 4];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = w;
        }
        g
    }
}

/// Curvature data at one point.
#[derive(Debug, Clone)]
pub struct CurvaturePack {
    pub point: [f64; 4],
    pub metric: Tensor2,
    pub inverse: Tensor2,
    /// `Γ^μ_{νρ}` as `[μ][ν][ρ]`.
    pub christoffel: Tensor3,
    /// `∂_σ Γ^μ_{νρ}` as `[σ][μ][ν][ρ]`.
    pub d_christoffel: Tensor4,
    /// `R^ρ_{σμν}` as `[ρ][σ][μ][ν]`.
    pub riemann: Tensor4,
    pub ricci: Tensor2,
    pub scalar: f64,
    /// Fully covariant Weyl tensor `C_{abcd}`.
    pub weyl: Tensor4,
    /// Weyl halves under [`MODULE_ORIENTATION`].
    pub self_dual_weyl: Mat3,
    pub anti_self_dual_weyl: Mat3,
}

fn max_abs2(t: &Tensor2) -> f64 {
    t.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

fn max_abs4(t: &Tensor4) -> f64 {
    t.iter().flatten().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn frobenius3(m: &Mat3) -> f64 {
    m.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
}

/// Full curvature evaluation at `x`.
pub fn curvature<M: MetricField4 + ?Sized>(field: &M, x: [f64; 4]) -> Result<CurvaturePack> {
    let jets = field.components(x);
    let g: Tensor2 = std::array::from_fn(|i| std::array::from_fn(|j| jets[i][j].value));
    let gm = Matrix4::from_fn(|i, j| g[i][j]);
    let scale = max_abs2(&g);
    if gm.determinant().abs() <= 1e-12 * scale.powi(4) {
        return Err(Error::DegenerateMetric);
    }
    let inv_m = gm.try_inverse().ok_or(Error::DegenerateMetric)?;
    let inv: Tensor2 = std::array::from_fn(|i| std::array::from_fn(|j| inv_m[(i, j)]));

    // dg[σ][μ][ν] = ∂_σ g_{μν}, ddg[σ][τ][μ][ν]
    let dg: Tensor3 = std::array::from_fn(|s| std::array::from_fn(|m| std::array::from_fn(|n| jets[m][n].grad[s])));
    let ddg: Tensor4 = std::array::from_fn(|s| {
        std::array::from_fn(|t| std::array::from_fn(|m| std::array::from_fn(|n| jets[m][n].hess[s][t])))
    });

    // first kind Γ_{λνρ}
    let first: Tensor3 = std::array::from_fn(|l| {
        std::array::from_fn(|n| std::array::from_fn(|r| 0.5 * (dg[n][l][r] + dg[r][l][n] - dg[l][n][r])))
    });
    let d_first: Tensor4 = std::array::from_fn(|s| {
        std::array::from_fn(|l| {
            std::array::from_fn(|n| {
                std::array::from_fn(|r| 0.5 * (ddg[s][n][l][r] + ddg[s][r][l][n] - ddg[s][l][n][r]))
            })
        })
    });
    // ∂_σ g^{μν} = −g^{μα} ∂_σ g_{αβ} g^{βν}
    let d_inv: Tensor3 = std::array::from_fn(|s| {
        std::array::from_fn(|m| {
            std::array::from_fn(|n| {
                let mut acc = 0.0;
                for a in 0..4 {
                    for b in 0..4 {
                        acc -= inv[m][a] * dg[s][a][b] * inv[b][n];
                    }
                }
                acc
            })
        })
    });
    let christoffel: Tensor3 = std::array::from_fn(|m| {
        std::array::from_fn(|n| std::array::from_fn(|r| (0..4).map(|l| inv[m][l] * first[l][n][r]).sum()))
    });
    let d_christoffel: Tensor4 = std::array::from_fn(|s| {
        std::array::from_fn(|m| {
            std::array::from_fn(|n| {
                std::array::from_fn(|r| {
                    (0..4)
                        .map(|l| d_inv[s][m][l] * first[l][n][r] + inv[m][l] * d_first[s][l][n][r])
                        .sum()
                })
            })
        })
    });
    let gam = &christoffel;
    let riemann: Tensor4 = std::array::from_fn(|rho| {
        std::array::from_fn(|sig| {
            std::array::from_fn(|mu| {
                std::array::from_fn(|nu| {
                    let mut v = d_christoffel[mu][rho][nu][sig] - d_christoffel[nu][rho][mu][sig];
                    for l in 0..4 {
                        v += gam[rho][mu][l] * gam[l][nu][sig] - gam[rho][nu][l] * gam[l][mu][sig];
                    }
                    v
                })
            })
        })
    });
    let ricci: Tensor2 =
        std::array::from_fn(|s| std::array::from_fn(|n| (0..4).map(|r| riemann[r][s][r][n]).sum()));
    let scalar: f64 = (0..4)
        .flat_map(|i| (0..4).map(move |j| (i, j)))
        .map(|(i, j)| inv[i][j] * ricci[i][j])
        .sum();
    let lowered: Tensor4 = std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            std::array::from_fn(|c| std::array::from_fn(|d| (0..4).map(|l| g[a][l] * riemann[l][b][c][d]).sum()))
        })
    });
    let weyl: Tensor4 = std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            std::array::from_fn(|c| {
                std::array::from_fn(|d| {
                    lowered[a][b][c][d]
                        - 0.5
                            * (g[a][c] * ricci[b][d] - g[a][d] * ricci[b][c] - g[b][c] * ricci[a][d]
                                + g[b][d] * ricci[a][c])
                        + scalar / 6.0 * (g[a][c] * g[b][d] - g[a][d] * g[b][c])
                })
            })
        })
    });
    let mut pack = CurvaturePack {
        point: x,
        metric: g,
        inverse: inv,
        christoffel,
        d_christoffel,
        riemann,
        ricci,
        scalar,
        weyl,
        self_dual_weyl: [[0.0; 3]; 3],
        anti_self_dual_weyl: [[0.0; 3]; 3],
    };
    let (plus, minus) = weyl_split(&pack, MODULE_ORIENTATION);
    pack.self_dual_weyl = plus;
    pack.anti_self_dual_weyl = minus;
    Ok(pack)
}

impl CurvaturePack {
    /// `R / 4`, the Einstein constant when the metric is Einstein.
    pub fn lambda(&self) -> f64 {
        self.scalar / 4.0
    }

    pub fn metric_scale(&self) -> f64 {
        max_abs2(&self.metric)
    }

    /// `max |R_{μν} − (R/4) g_{μν}|`, absolute.
    pub fn einstein_defect(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                m = m.max((self.ricci[i][j] - self.lambda() * self.metric[i][j]).abs());
            }
        }
        m
    }

    /// [`Self::einstein_defect`] relative to `max |g_{μν}|`.
    pub fn einstein_residual(&self) -> f64 {
        self.einstein_defect() / self.metric_scale()
    }

    /// `max |R^μ_{[νρσ]}|` relative to `max |R|` (plus one).
    pub fn bianchi_residual(&self) -> f64 {
        let r = &self.riemann;
        let mut m: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        m = m.max((r[a][b][c][d] + r[a][c][d][b] + r[a][d][b][c]).abs());
                    }
                }
            }
        }
        m / (1.0 + max_abs4(r))
    }

    /// Largest trace `g^{ac} C_{abcd}` relative to `max |C|` (plus one).
    pub fn weyl_trace_residual(&self) -> f64 {
        let mut m: f64 = 0.0;
        for b in 0..4 {
            for d in 0..4 {
                let mut t = 0.0;
                for a in 0..4 {
                    for c in 0..4 {
                        t += self.inverse[a][c] * self.weyl[a][b][c][d];
                    }
                }
                m = m.max(t.abs());
            }
        }
        m / (1.0 + max_abs4(&self.weyl))
    }

    pub fn max_riemann(&self) -> f64 {
        max_abs4(&self.riemann)
    }

    /// `‖W⁺‖` and `‖W⁻‖` (Frobenius) under [`MODULE_ORIENTATION`].
    pub fn weyl_norms(&self) -> (f64, f64) {
        (frobenius3(&self.self_dual_weyl), frobenius3(&self.anti_self_dual_weyl))
    }
}

fn perm_sign(p: [usize; 4]) -> f64 {
    let mut s = 1.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if p[i] == p[j] {
                return 0.0;
            }
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// A pseudo-orthonormal frame: `e_a = E[·][a]` with `g(e_a, e_b) = η_a δ_ab`.
fn orthonormal_frame(g: &Tensor2) -> (Matrix4<f64>, [f64; 4]) {
    let eig = SymmetricEigen::new(Matrix4::from_fn(|i, j| g[i][j]));
    let mut frame = eig.eigenvectors;
    let mut eta = [0.0; 4];
    for a in 0..4 {
        let d = eig.eigenvalues[a];
        eta[a] = d.signum();
        let k = 1.0 / d.abs().sqrt();
        for i in 0..4 {
            frame[(i, a)] *= k;
        }
    }
    (frame, eta)
}

/// Hodge star on frame bivectors, as a 6x6 matrix in the basis `PAIRS`.
fn frame_hodge(eta: &[f64; 4], vol_sign: f64) -> [[f64; 6]; 6] {
    let mut s = [[0.0; 6]; 6];
    for (i, &(a, b)) in PAIRS.iter().enumerate() {
        for (j, &(c, d)) in PAIRS.iter().enumerate() {
            s[i][j] = eta[a] * eta[b] * vol_sign * perm_sign([a, b, c, d]);
        }
    }
    s
}

/// Orthonormal (Euclidean) basis of the column space of `(I ± S)/2`.
fn eigenspace(s: &[[f64; 6]; 6], sign: f64) -> Vec<[f64; 6]> {
    let mut basis: Vec<[f64; 6]> = Vec::new();
    for j in 0..6 {
        let mut v: [f64; 6] = std::array::from_fn(|i| 0.5 * ((i == j) as u8 as f64 + sign * s[i][j]));
        for b in &basis {
            let dot: f64 = (0..6).map(|k| v[k] * b[k]).sum();
            for k in 0..6 {
                v[k] -= dot * b[k];
            }
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-8 {
            basis.push(v.map(|x| x / n));
        }
        if basis.len() == 3 {
            break;
        }
    }
    basis
}

/// Weyl halves on the ±1 eigenspaces of the Hodge star, as symmetric 3x3
/// forms `W±_{ij} = C(u_i, u_j)` over orthonormal eigenbases.
pub fn weyl_split(pack: &CurvaturePack, orientation: Orientation) -> (Mat3, Mat3) {
    let (frame, eta) = orthonormal_frame(&pack.metric);
    let vol_sign = orientation.sign() * frame.determinant().signum();
    // frame components of C
    let e = |mu: usize, a: usize| frame[(mu, a)];
    let mut cf = [[[[0.0; 4]; 4]; 4]; 4];
    // contract one index at a time
    let mut t1 = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for n in 0..4 {
            for r in 0..4 {
                for s in 0..4 {
                    t1[a][n][r][s] = (0..4).map(|m| pack.weyl[m][n][r][s] * e(m, a)).sum();
                }
            }
        }
    }
    let mut t2 = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for r in 0..4 {
                for s in 0..4 {
                    t2[a][b][r][s] = (0..4).map(|n| t1[a][n][r][s] * e(n, b)).sum();
                }
            }
        }
    }
    let mut t3 = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for s in 0..4 {
                    t3[a][b][c][s] = (0..4).map(|r| t2[a][b][r][s] * e(r, c)).sum();
                }
            }
        }
    }
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    cf[a][b][c][d] = (0..4).map(|s| t3[a][b][c][s] * e(s, d)).sum();
                }
            }
        }
    }
    let star = frame_hodge(&eta, vol_sign);
    let project = |basis: &[[f64; 6]]| -> Mat3 {
        let mut w = [[0.0; 3]; 3];
        for i in 0..basis.len().min(3) {
            for j in 0..basis.len().min(3) {
                let mut acc = 0.0;
                for (p, &(a, b)) in PAIRS.iter().enumerate() {
                    for (q, &(c, d)) in PAIRS.iter().enumerate() {
                        acc += cf[a][b][c][d] * basis[i][p] * basis[j][q];
                    }
                }
                w[i][j] = acc;
            }
        }
        w
    };
    (project(&eigenspace(&star, 1.0)), project(&eigenspace(&star, -1.0)))
}

/// Coordinate Hodge star of a two-form `ω_{μν}` with the given orientation.
pub fn hodge_two_form(metric: &Tensor2, orientation: Orientation, omega: &Tensor2) -> Tensor2 {
    let gm = Matrix4::from_fn(|i, j| metric[i][j]);
    let inv = gm.try_inverse().unwrap_or_else(Matrix4::zeros);
    let vol = orientation.sign() * gm.determinant().abs().sqrt();
    let mut up = [[0.0; 4]; 4];
    for r in 0..4 {
        for s in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    up[r][s] += inv[(r, a)] * inv[(s, b)] * omega[a][b];
                }
            }
        }
    }
    std::array::from_fn(|m| {
        std::array::from_fn(|n| {
            let mut acc = 0.0;
            for r in 0..4 {
                for s in 0..4 {
                    acc += 0.5 * vol * perm_sign([m, n, r, s]) * up[r][s];
                }
            }
            acc
        })
    })
}

/// Christoffel symbols from central differences of the metric values.
fn christoffel_fd<M: MetricField4 + ?Sized>(field: &M, x: [f64; 4], h: f64) -> Result<Tensor3> {
    let g = field.values(x);
    let inv = Matrix4::from_fn(|i, j| g[i][j]).try_inverse().ok_or(Error::DegenerateMetric)?;
    let shifted = |s: usize, d: f64| {
        let mut y = x;
        y[s] += d;
        field.values(y)
    };
    let dg: Tensor3 = std::array::from_fn(|s| {
        let (p, m) = (shifted(s, h), shifted(s, -h));
        std::array::from_fn(|i| std::array::from_fn(|j| (p[i][j] - m[i][j]) / (2.0 * h)))
    });
    Ok(std::array::from_fn(|m| {
        std::array::from_fn(|n| {
            std::array::from_fn(|r| {
                (0..4)
                    .map(|l| 0.5 * inv[(m, l)] * (dg[n][l][r] + dg[r][l][n] - dg[l][n][r]))
                    .sum()
            })
        })
    }))
}

/// Scalar curvature from nested central differences of metric values only;
/// an independent check on [`curvature`].
pub fn scalar_curvature_fd<M: MetricField4 + ?Sized>(field: &M, x: [f64; 4], h: f64) -> Result<f64> {
    let gam = christoffel_fd(field, x, h)?;
    let at = |s: usize, d: f64| {
        let mut y = x;
        y[s] += d;
        christoffel_fd(field, y, h)
    };
    let mut dgam = [[[[0.0; 4]; 4]; 4]; 4];
    for s in 0..4 {
        let (p, m) = (at(s, h)?, at(s, -h)?);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    dgam[s][a][b][c] = (p[a][b][c] - m[a][b][c]) / (2.0 * h);
                }
            }
        }
    }
    let g = field.values(x);
    let inv = Matrix4::from_fn(|i, j| g[i][j]).try_inverse().ok_or(Error::DegenerateMetric)?;
    let mut scalar = 0.0;
    for s in 0..4 {
        for n in 0..4 {
            let mut ric = 0.0;
            for r in 0..4 {
                ric += dgam[r][r][n][s] - dgam[n][r][r][s];
                for l in 0..4 {
                    ric += gam[r][r][l] * gam[l][n][s] - gam[r][n][l] * gam[l][r][s];
                }
            }
            scalar += inv[(s, n)] * ric;
        }
    }
    Ok(scalar)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: [f64; 4] = [0.3, -0.7, 1.1, 0.4];

    #[test]
    fn flat_metric_has_no_curvature() {
        let pack = curvature(&FlatNeutralMetric, P).unwrap();
        assert_eq!(pack.max_riemann(), 0.0);
    }

    #[test]
    fn round_sphere_has_positive_scalar_curvature() {
        let pack = curvature(&RoundSphere4, [0.2, 0.1, -0.3, 0.5]).unwrap();
        assert!((pack.scalar - 12.0).abs() < 1e-10, "R = {}", pack.scalar);
        assert!(pack.einstein_residual() < 1e-12);
    }

    #[test]
    fn conformally_flat_metric_has_no_weyl_halves() {
        let pack = curvature(&ConformallyFlatMetric, P).unwrap();
        assert!(pack.max_riemann() > 1e-3);
        let (wp, wm) = weyl_split(&pack, Orientation::Positive);
        assert!(frobenius3(&wp) < 1e-12 && frobenius3(&wm) < 1e-12);
    }

    #[test]
    fn degenerate_metric_rejected() {
        struct Zero;
        impl MetricField4 for Zero {
            fn metric<S: Scalar>(&self, _x: [S; 4]) -> [[S; 4]; 4] {
                [[S::zero(); 4]; 4]
            }
        }
        assert!(matches!(curvature(&Zero, P), Err(Error::DegenerateMetric)));
    }

    #[test]
    fn dancing_metric_identities() {
        let pack = curvature(&DancingMetric, P).unwrap();
        assert!(pack.bianchi_residual() < 1e-12);
        assert!(pack.weyl_trace_residual() < 1e-12);
        for i in 0..4 {
            for j in 0..4 {
                assert!((pack.ricci[i][j] - pack.ricci[j][i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dancing_metric_is_einstein_and_half_flat() {
        let pack = curvature(&DancingMetric, P).unwrap();
        assert!(pack.einstein_residual() < 1e-12);
        assert!((pack.lambda() - 6.0).abs() < 1e-12, "Λ = {}", pack.lambda());
        let (wp, wm) = pack.weyl_norms();
        assert!(wp < 1e-12, "W+ = {wp}");
        assert!(wm > 1e-3, "W- = {wm}");
    }

    #[test]
    fn finite_difference_scalar_agrees() {
        for field_point in [[0.1, 0.2, -0.3, 0.4], P] {
            let jet = curvature(&DancingMetric, field_point).unwrap().scalar;
            let fd = scalar_curvature_fd(&DancingMetric, field_point, 1e-3).unwrap();
            assert!((jet - fd).abs() < 1e-5, "{jet} vs {fd}");
        }
        let fd = scalar_curvature_fd(&RoundSphere4, [0.2, 0.1, -0.3, 0.5], 1e-3).unwrap();
        assert!((fd - 12.0).abs() < 1e-4, "{fd}");
    }

    #[test]
    fn orientation_flip_swaps_halves() {
        let pack = curvature(&DancingMetric, P).unwrap();
        let (a, b) = weyl_split(&pack, Orientation::Positive);
        let (c, d) = weyl_split(&pack, Orientation::Negative);
        assert_eq!(a, d);
        assert_eq!(b, c);
    }

    #[test]
    fn module_orientation_makes_sigma_one_anti_self_dual() {
        let g = DancingMetric.values(P);
        let mut sigma = [[0.0; 4]; 4];
        sigma[0][1] = 1.0;
        sigma[1][0] = -1.0;
        let star = hodge_two_form(&g, MODULE_ORIENTATION, &sigma);
        for i in 0..4 {
            for j in 0..4 {
                assert!((star[i][j] + sigma[i][j]).abs() < 1e-12, "{i}{j}: {}", star[i][j]);
            }
        }
    }
}
