//! Reproducible random inputs.
//!
//! Every sample index gets its own ChaCha8 stream: the generator is seeded
//! with `seed` (via `seed_from_u64`) and the stream number is the sample
//! index, so results do not depend on evaluation order or thread count.

use nalgebra::{Matrix2, Matrix3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conic::PointConicPair;
use crate::connection::PolynomialConnection;
use crate::ellipse::{EllipseState, EllipseZ};
use crate::flat::AlphaSurfaceChart;
use crate::projective::{Conic3, HomVec3};

/// Name of the generator, recorded in reports.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha), seed_from_u64(seed), stream = sample index";

/// The generator for sample `index` of a run seeded with `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

pub fn random_point4<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    std::array::from_fn(|_| uniform(rng, -1.0, 1.0))
}

pub fn random_vec3<R: Rng + ?Sized>(rng: &mut R) -> HomVec3 {
    HomVec3::new(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0))
}

/// `(x, y, 1)` with `x, y ∈ [−r, r]`.
pub fn random_affine_point<R: Rng + ?Sized>(rng: &mut R, r: f64) -> HomVec3 {
    HomVec3::new(uniform(rng, -r, r), uniform(rng, -r, r), 1.0)
}

/// A (point, line) pair with `|P·L| ≥ 0.1 |P||L|`.
pub fn random_flat_pair<R: Rng + ?Sized>(rng: &mut R) -> (HomVec3, HomVec3) {
    loop {
        let p = random_affine_point(rng, 2.0);
        let l = HomVec3::new(uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0));
        if p.dot(&l).abs() >= 0.1 * p.norm() * l.norm() {
            return (p, l);
        }
    }
}

/// A second pair dancing with `(p, l)`: a random line `L̃`, and `P̃` on the
/// line through `p` and `l ∩ L̃`.
pub fn random_dancing_partner<R: Rng + ?Sized>(rng: &mut R, p: &HomVec3, l: &HomVec3) -> (HomVec3, HomVec3) {
    loop {
        let (_, lt) = random_flat_pair(rng);
        let meet = l.cross(&lt);
        if meet.norm() < 0.1 * l.norm() * lt.norm() {
            continue;
        }
        let meet = meet.scaled(1.0 / meet.norm());
        let pt = p.scaled(1.0 / p.norm()).add(&meet.scaled(uniform(rng, -2.0, 2.0)));
        let ok = pt.dot(&lt).abs() >= 0.05 * pt.norm() * lt.norm()
            && pt.cross(p).norm() >= 0.05 * pt.norm() * p.norm();
        if ok {
            return (pt, lt);
        }
    }
}

/// An α-surface chart: a random line and a random point on it.
pub fn random_alpha_chart<R: Rng + ?Sized>(rng: &mut R) -> AlphaSurfaceChart {
    loop {
        let line = random_vec3(rng);
        let point = line.cross(&random_vec3(rng));
        if line.norm() > 0.2 && point.norm() > 0.2 {
            if let Ok(c) = AlphaSurfaceChart::new(line, point) {
                return c;
            }
        }
    }
}

/// A matrix of determinant one, away from singular.
pub fn random_sl3<R: Rng + ?Sized>(rng: &mut R) -> Matrix3<f64> {
    loop {
        let m = Matrix3::from_fn(|i, j| (i == j) as u8 as f64 + uniform(rng, -0.8, 0.8));
        let d = m.determinant();
        if d.abs() > 0.2 {
            return m * (1.0 / d.cbrt());
        }
    }
}

pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R) -> Matrix2<f64> {
    loop {
        let m = Matrix2::from_fn(|i, j| (i == j) as u8 as f64 + uniform(rng, -0.8, 0.8));
        let d = m.determinant();
        if d > 0.2 {
            return m * (1.0 / d.sqrt());
        } else if d < -0.2 {
            return Matrix2::new(m[(0, 1)], m[(0, 0)], m[(1, 1)], m[(1, 0)]) * (1.0 / (-d).sqrt());
        }
    }
}

/// A conic in chart normalisation `A₃₃ = 1` with `|det A|` bounded below.
pub fn random_conic<R: Rng + ?Sized>(rng: &mut R) -> Conic3 {
    loop {
        let (a11, a12, a22) = (uniform(rng, -2.0, 2.0), uniform(rng, -1.0, 1.0), uniform(rng, -2.0, 2.0));
        let (a13, a23) = (uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
        let c = Conic3::from_rows([[a11, a12, a13], [a12, a22, a23], [a13, a23, 1.0]]);
        if c.det().abs() > 0.1 {
            return c;
        }
    }
}

/// A non-incident (point, conic) pair in chart normalisation.
pub fn random_conic_pair<R: Rng + ?Sized>(rng: &mut R) -> PointConicPair {
    loop {
        let a = random_affine_point(rng, 1.5);
        let c = random_conic(rng);
        if c.eval(&a).abs() > 0.05 * a.norm().powi(2) * c.frobenius() {
            if let Ok(p) = PointConicPair::new(a, c) {
                return p;
            }
        }
    }
}

/// A section coordinate in `(0.05, 0.95) ∪ (1.05, 4)`.
pub fn random_section_b<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let b = uniform(rng, 0.05, 4.0);
        if (b - 1.0).abs() > 0.05 {
            return b;
        }
    }
}

pub fn random_tangent4<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    std::array::from_fn(|_| uniform(rng, -1.0, 1.0))
}

/// A non-incident (point, ellipse) state with a random tangent.
pub fn random_ellipse_state<R: Rng + ?Sized>(rng: &mut R) -> EllipseState {
    loop {
        let z = EllipseZ {
            a: uniform(rng, -1.0, 1.0),
            b: uniform(rng, 0.3, 2.5),
        };
        let u = [uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5)];
        let s = EllipseState::new(u, z, random_tangent4(rng));
        let rel = s.phi().abs() / (z.b * (1.0 + u[0] * u[0] + u[1] * u[1]));
        if rel > 0.05 && u[0].hypot(u[1]) > 0.1 {
            return s;
        }
    }
}

pub fn random_connection<R: Rng + ?Sized>(rng: &mut R) -> PolynomialConnection {
    PolynomialConnection::random(rng)
}

/// Initial data `(x₀, y₀, y′₀)` on a random area-π ellipse, together with a
/// right end `x_end` that stays clear of the ellipse's vertical tangents.
pub fn random_path_start<R: Rng + ?Sized>(rng: &mut R) -> ([f64; 3], f64) {
    loop {
        let z = EllipseZ {
            a: uniform(rng, -1.0, 1.0),
            b: uniform(rng, 0.5, 2.0),
        };
        let [e, f, g] = z.efg();
        let xmax = 0.85 * g.sqrt();
        let x0 = uniform(rng, -xmax, xmax);
        // upper root of G y² + 2F x₀ y + E x₀² − 1 = 0
        let disc = f * f * x0 * x0 - g * (e * x0 * x0 - 1.0);
        if disc <= 0.0 {
            continue;
        }
        let y0 = (-f * x0 + disc.sqrt()) / g;
        let p0 = -(e * x0 + f * y0) / (f * x0 + g * y0);
        let x_end = (x0 + 0.5).min(xmax);
        if x_end - x0 > 0.05 && p0.is_finite() {
            return ([x0, y0, p0], x_end);
        }
    }
}
