//! Seeded verification suites and their JSON report.
//!
//! Every suite draws sample `i` from its own generator stream
//! ([`rng_for`]`(seed, i)`), evaluates a fixed battery of checks on it, and
//! reduces the results in sample-index order. Samples run in parallel; the
//! report does not depend on the thread count.
//!
//! Every check yields a non-negative residual that is compared against the
//! run tolerance. Indicator checks (classifications, root counts,
//! signatures) report `0` or `1`; slope checks report the shortfall
//! `max(0, 2.9 − slope)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conic::{
    dancing_conics_oracle, dancing_conics_residual, dancing_partner, infinitesimal_quadric, m_condition_residual,
    polar_projection, quadric_eval, quadric_kernel, relative_conics_residual, signature, subspace_distance,
    symmetric_eigenvalues, to_dmatrix, transform_pair, TangentN, EXPANSION_FACTOR,
};
use crate::connection::{
    build_family_metric, expected_symplectic_form, maple_identity, recurrence_one_form, PolynomialConnection,
    RoundSphereConnection,
};
use crate::curvature::{curvature, scalar_curvature_fd, DancingMetric, RoundSphere4};
use crate::ellipse::{
    construct_null_tangent, dual_ode_residual_on, ellipse_fit, horocycle_point, incidence_phi, is_null_sigma,
    metrisability_geodesic, move_to_section, null_oracle_sigma, null_udot_directions, null_zdot_directions,
    path_ode_integrate, quadratic_resultant, reduced_quadratics, sextic_general, sextic_magnitude, sextic_sigma,
    EllipseState, HorocycleBranch,
};
use crate::error::{Error, Result};
use crate::flat::{
    alpha_surface_point, alpha_surface_tangents, dancing_flat_oracle, dancing_flat_residual, embed_affine,
    metric_flat, relative_flat_residual, FlatPairM, TangentFlat,
};
use crate::projective::{conic_intersect, Conic3, HomVec3};
use crate::sampling::{
    random_affine_point, random_alpha_chart, random_conic, random_conic_pair, random_connection,
    random_dancing_partner, random_ellipse_state, random_flat_pair, random_path_start, random_point4,
    random_section_b, random_sl2, random_sl3, random_tangent4, random_vec3, rng_for, uniform,
};

/// Step sizes of the second-order expansion test.
pub const EXPANSION_EPS: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Smallest accepted log–log slope of the expansion remainder.
pub const MIN_EXPANSION_SLOPE: f64 = 2.9;

/// Relative threshold below which a residual or oracle value counts as zero
/// when two classifications are compared.
pub const CLASSIFY_TOL: f64 = 1e-9;

/// Threshold on `|det|` of the six-condition conic oracle.
pub const CONIC_ORACLE_TOL: f64 = 1e-8;

/// Number of random connections in the rigidity suite.
pub const FAMILY_CONNECTIONS: usize = 5;

/// Generator streams for the rigidity suite's connections start here, far
/// from the per-sample streams.
pub const CONNECTION_STREAM: u64 = 1 << 63;

/// Integration step of the path ODE and the geodesic equations.
pub const ODE_STEP: f64 = 1e-3;

/// Arc length of the metrisability geodesics.
pub const GEODESIC_ARC: f64 = 0.1;

/// Residual recorded when a check could not be evaluated.
pub const ERROR_RESIDUAL: f64 = f64::MAX;

/// Point where the reference Einstein constant is measured.
pub const REFERENCE_POINT: [f64; 4] = [0.0; 4];

/// The verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    FlatMetric,
    RigidityIdentity,
    Sextic,
    Ode,
    Conics,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::FlatMetric,
        Suite::RigidityIdentity,
        Suite::Sextic,
        Suite::Ode,
        Suite::Conics,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FlatMetric => "flat-metric",
            Suite::RigidityIdentity => "rigidity-identity",
            Suite::Sextic => "sextic",
            Suite::Ode => "ode",
            Suite::Conics => "conics",
        }
    }

    /// Sample count of the acceptance runs.
    pub fn default_samples(self) -> usize {
        match self {
            Suite::FlatMetric => 1000,
            Suite::RigidityIdentity => 100,
            Suite::Sextic => 10_000,
            Suite::Ode => 100,
            Suite::Conics => 1000,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// One failed check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    /// Sample index; absent for checks on fixed examples.
    pub sample: Option<u64>,
    pub inputs: Vec<f64>,
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Outcome of a suite run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
    pub max_residual: f64,
    pub measured_constants: BTreeMap<String, f64>,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Pretty JSON with a trailing newline. Floats use the shortest
    /// representation that parses back to the same value.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[derive(Debug, Clone)]
struct Check {
    name: &'static str,
    inputs: Vec<f64>,
    residual: f64,
    error: Option<String>,
}

#[derive(Debug, Default)]
struct SampleOut {
    checks: Vec<Check>,
    obs: Vec<(&'static str, f64)>,
}

impl SampleOut {
    fn record(&mut self, name: &'static str, inputs: &[f64], r: Result<f64>) {
        let (residual, error) = match r {
            Ok(v) if v.is_finite() => (v.abs(), None),
            Ok(v) => (ERROR_RESIDUAL, Some(format!("non-finite residual {v}"))),
            Err(e) => (ERROR_RESIDUAL, Some(e.to_string())),
        };
        self.checks.push(Check {
            name,
            inputs: inputs.to_vec(),
            residual,
            error,
        });
    }

    fn observe(&mut self, key: &'static str, v: f64) {
        self.obs.push((key, v));
    }
}

fn indicator(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

/// Least-squares slope of `log err` against `log eps`; infinite when some
/// remainder vanishes exactly.
pub fn loglog_slope(eps: &[f64], err: &[f64]) -> f64 {
    if err.contains(&0.0) {
        return f64::INFINITY;
    }
    let xs: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
    let ys: Vec<f64> = err.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn slope_shortfall(slope: f64) -> f64 {
    (MIN_EXPANSION_SLOPE - slope).max(0.0)
}

fn hom(v: &HomVec3) -> [f64; 3] {
    v.c
}

fn concat(parts: &[&[f64]]) -> Vec<f64> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

fn conic_entries(c: &Conic3) -> [f64; 6] {
    let m = c.matrix();
    [m[(0, 0)], m[(0, 1)], m[(1, 1)], m[(0, 2)], m[(1, 2)], m[(2, 2)]]
}

fn run_samples<F>(seed: u64, samples: usize, f: F) -> Vec<SampleOut>
where
    F: Fn(usize, &mut ChaCha8Rng) -> SampleOut + Sync + Send,
{
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i as u64);
            f(i, &mut rng)
        })
        .collect()
}

fn observed<'a>(outs: &'a [SampleOut], key: &'a str) -> impl Iterator<Item = f64> + 'a {
    outs.iter()
        .flat_map(|o| o.obs.iter())
        .filter(move |(k, _)| *k == key)
        .map(|(_, v)| *v)
}

fn mean_of(outs: &[SampleOut], key: &str) -> f64 {
    let (sum, n) = observed(outs, key).fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    sum / n as f64
}

fn min_of(outs: &[SampleOut], key: &str) -> f64 {
    observed(outs, key).fold(f64::INFINITY, f64::min)
}

fn max_of(outs: &[SampleOut], key: &str) -> f64 {
    observed(outs, key).fold(f64::NEG_INFINITY, f64::max)
}

fn sum_of(outs: &[SampleOut], key: &str) -> f64 {
    observed(outs, key).fold(0.0, |a, x| a + x)
}

struct SuiteRun {
    fixed: SampleOut,
    outs: Vec<SampleOut>,
    constants: Vec<(&'static str, f64)>,
}

/// Runs `suite` on `samples` seeded samples and compares every residual
/// against `tol`.
pub fn run_verify(suite: &str, seed: u64, samples: usize, tol: f64) -> Result<VerificationReport> {
    let suite: Suite = suite.parse()?;
    Ok(run_suite(suite, seed, samples, tol))
}

pub fn run_suite(suite: Suite, seed: u64, samples: usize, tol: f64) -> VerificationReport {
    let run = match suite {
        Suite::FlatMetric => flat_metric_suite(seed, samples),
        Suite::RigidityIdentity => rigidity_suite(seed, samples),
        Suite::Sextic => sextic_suite(seed, samples),
        Suite::Ode => ode_suite(seed, samples),
        Suite::Conics => conics_suite(seed, samples),
    };
    let mut max_residual: f64 = 0.0;
    let mut failures = Vec::new();
    let fixed = std::iter::once((None, &run.fixed));
    let sampled = run.outs.iter().enumerate().map(|(i, o)| (Some(i as u64), o));
    for (sample, out) in fixed.chain(sampled) {
        for c in &out.checks {
            max_residual = max_residual.max(c.residual);
            if !(c.residual <= tol) {
                failures.push(Failure {
                    check: c.name.to_string(),
                    sample,
                    inputs: c.inputs.clone(),
                    residual: c.residual,
                    error: c.error.clone(),
                });
            }
        }
    }
    let measured_constants = run
        .constants
        .into_iter()
        .filter(|(_, v)| v.is_finite())
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    VerificationReport {
        suite: suite.name().to_string(),
        seed,
        samples,
        tol,
        max_residual,
        measured_constants,
        failures,
    }
}

fn flat_metric_suite(seed: u64, samples: usize) -> SuiteRun {
    let mut fixed = SampleOut::default();
    let lambda_hat = curvature(&DancingMetric, REFERENCE_POINT).map(|p| p.lambda());
    let lambda_fd = scalar_curvature_fd(&DancingMetric, REFERENCE_POINT, 1e-3).map(|r| r / 4.0);
    fixed.record(
        "einstein-constant-nonzero",
        &REFERENCE_POINT,
        lambda_hat.clone().map(|l| indicator(l.abs() > 1e-6)),
    );
    let reference = lambda_hat.clone().unwrap_or(f64::NAN);

    let outs = run_samples(seed, samples, |i, rng| {
        let mut out = SampleOut::default();
        flat_curvature_checks(&mut out, rng, reference);
        flat_oracle_checks(&mut out, rng, i % 2 == 0);
        alpha_surface_checks(&mut out, rng);
        flat_expansion_check(&mut out, rng);
        out
    });

    let constants = vec![
        ("lambda", reference),
        ("lambdaFiniteDifference", lambda_fd.unwrap_or(f64::NAN)),
        ("lambdaSampleMean", mean_of(&outs, "lambda")),
        ("maxSelfDualWeylRatio", max_of(&outs, "weylRatio")),
        ("minExpansionSlope", min_of(&outs, "slope")),
    ];
    SuiteRun { fixed, outs, constants }
}

fn flat_curvature_checks(out: &mut SampleOut, rng: &mut ChaCha8Rng, lambda_hat: f64) {
    let x = random_point4(rng).map(|v| 2.0 * v);
    match curvature(&DancingMetric, x) {
        Ok(pack) => {
            let (wp, wm) = pack.weyl_norms();
            out.observe("lambda", pack.lambda());
            out.observe("weylRatio", wp / (wm + 1.0));
            out.record("einstein", &x, Ok(pack.einstein_residual()));
            out.record("einstein-constant", &x, Ok((pack.lambda() - lambda_hat) / lambda_hat.abs().max(1.0)));
            out.record("self-dual-weyl", &x, Ok(wp / (wm + 1.0)));
            out.record("bianchi", &x, Ok(pack.bianchi_residual()));
            out.record("weyl-trace", &x, Ok(pack.weyl_trace_residual()));
        }
        Err(e) => out.record("einstein", &x, Err(e)),
    }
    let sphere = curvature(&RoundSphere4, x).map(|p| (p.scalar - 12.0) / 12.0);
    out.record("sphere-scalar", &x, sphere);
}

fn flat_oracle_checks(out: &mut SampleOut, rng: &mut ChaCha8Rng, dancing: bool) {
    let (p, l) = random_flat_pair(rng);
    let (pt, lt) = if dancing {
        random_dancing_partner(rng, &p, &l)
    } else {
        random_flat_pair(rng)
    };
    let inputs = concat(&[&hom(&p), &hom(&l), &hom(&pt), &hom(&lt)]);
    let algebraic = relative_flat_residual(&p, &l, &pt, &lt);
    let geometric = dancing_flat_oracle(&p, &l, &pt, &lt);
    let agree = match (&algebraic, &geometric) {
        (Ok(a), Ok(g)) => Ok(indicator((a.abs() <= CLASSIFY_TOL) == (g.abs() <= CLASSIFY_TOL))),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    out.record("flat-oracle-agreement", &inputs, agree);
    if dancing {
        out.record("flat-constructed-dancing", &inputs, algebraic);
    }
}

fn alpha_surface_checks(out: &mut SampleOut, rng: &mut ChaCha8Rng) {
    let chart = random_alpha_chart(rng);
    let draw = |rng: &mut ChaCha8Rng| loop {
        let (s, t) = (uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0));
        if let Ok(pair) = alpha_surface_point(&chart, s, t) {
            if FlatPairM::from_pair(&pair.0, &pair.1).is_ok() {
                return (s, t, pair);
            }
        }
    };
    let (s1, t1, (p1, l1)) = draw(rng);
    let (s2, t2, (p2, l2)) = draw(rng);
    let inputs = concat(&[&hom(&chart.line), &hom(&chart.point), &[s1, t1, s2, t2]]);
    out.record("alpha-finite", &inputs, relative_flat_residual(&p1, &l1, &p2, &l2));

    let nullity = (|| {
        let m = FlatPairM::from_pair(&p1, &l1)?;
        let tangents = alpha_surface_tangents(&chart, s1, t1)?;
        let zeta2 = m.zeta[0] * m.zeta[0] + m.zeta[1] * m.zeta[1];
        let norm = |v: &TangentFlat| v.as_array().iter().map(|c| c * c).sum::<f64>().sqrt();
        let mut worst: f64 = 0.0;
        for v in &tangents {
            for w in &tangents {
                let scale = (1.0 + zeta2) * norm(v) * norm(w);
                worst = worst.max(metric_flat(&m, v, w).abs() / scale.max(f64::MIN_POSITIVE));
            }
        }
        Ok(worst)
    })();
    out.record("alpha-infinitesimal", &inputs, nullity);
}

fn flat_expansion_check(out: &mut SampleOut, rng: &mut ChaCha8Rng) {
    let (p, l) = random_flat_pair(rng);
    let v = TangentFlat::from_array(random_tangent4(rng));
    let inputs = concat(&[&hom(&p), &hom(&l), &v.as_array()]);
    let slope = (|| {
        let m = FlatPairM::from_pair(&p, &l)?;
        let (p0, l0) = embed_affine(&m);
        let g = metric_flat(&m, &v, &v);
        let mut errs = [0.0; 3];
        for (k, &eps) in EXPANSION_EPS.iter().enumerate() {
            let (p1, l1) = embed_affine(&m.offset(&v, eps));
            errs[k] = (dancing_flat_residual(&p0, &l0, &p1, &l1)? - eps * eps * g).abs();
        }
        Ok(loglog_slope(&EXPANSION_EPS, &errs))
    })();
    if let Ok(s) = slope {
        out.observe("slope", s);
    }
    out.record("flat-expansion-slope", &inputs, slope.map(slope_shortfall));
}

fn rigidity_suite(seed: u64, samples: usize) -> SuiteRun {
    let conns: Vec<PolynomialConnection> = (0..FAMILY_CONNECTIONS)
        .map(|k| random_connection(&mut rng_for(seed, CONNECTION_STREAM + k as u64)))
        .collect();
    let fixed = SampleOut::default();
    let reference = curvature(&DancingMetric, REFERENCE_POINT).map(|p| p.lambda()).unwrap_or(f64::NAN);

    let outs = run_samples(seed, samples, |i, rng| {
        let mut out = SampleOut::default();
        let k = i % FAMILY_CONNECTIONS;
        let conn = &conns[k];
        let x = random_point4(rng);
        let inputs = concat(&[&[k as f64], &x]);
        let family = build_family_metric(conn.clone());

        match curvature(&family, x) {
            Ok(pack) => {
                let (wp, wm) = pack.weyl_norms();
                out.observe("lambda", pack.lambda());
                out.record("family-einstein", &inputs, Ok(pack.einstein_residual()));
                out.record(
                    "family-einstein-constant",
                    &inputs,
                    Ok((pack.lambda() - reference) / reference.abs().max(1.0)),
                );
                out.record("family-anti-self-dual", &inputs, Ok(wp / (wm + 1.0)));
            }
            Err(e) => out.record("family-einstein", &inputs, Err(e)),
        }

        let recurrence = recurrence_one_form(&family, x).map(|rec| {
            out.observe("recurrenceFactor", rec.measured_factor);
            let w = expected_symplectic_form(conn, x);
            let scale = 1.0 + w.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
            let mut worst: f64 = 0.0;
            for (row_a, row_w) in rec.d_potential.iter().zip(&w) {
                for (a, b) in row_a.iter().zip(row_w) {
                    worst = worst.max((a - b).abs());
                }
            }
            worst / scale
        });
        out.record("recurrence-curvature", &inputs, recurrence);

        match maple_identity(conn, x) {
            Ok(id) => {
                if let Some(f) = id.measured_factor {
                    out.observe("identityFactor", f);
                }
                out.observe("genericObstruction", id.obstruction);
                let flat = id.obstruction < 1e-8;
                let sides_vanish = id.lhs_norm() < 1e-8 && id.rhs_norm() < 1e-8;
                out.record("identity", &inputs, Ok(id.residual() / (1.0 + id.lhs_norm())));
                out.record("identity-equivalence", &inputs, Ok(indicator(flat == sides_vanish)));
                out.record("generic-obstruction", &inputs, Ok(indicator(id.obstruction > 1e-3)));
            }
            Err(e) => out.record("identity", &inputs, Err(e)),
        }

        match maple_identity(&RoundSphereConnection, x) {
            Ok(id) => {
                out.observe("sphereObstruction", id.obstruction);
                let flat = id.obstruction < 1e-8;
                let sides_vanish = id.lhs_norm() < 1e-8 && id.rhs_norm() < 1e-8;
                out.record("sphere-identity", &x, Ok(id.residual()));
                out.record("sphere-obstruction", &x, Ok(id.obstruction));
                out.record("sphere-equivalence", &x, Ok(indicator(flat == sides_vanish)));
            }
            Err(e) => out.record("sphere-identity", &x, Err(e)),
        }
        out
    });

    let constants = vec![
        ("lambda", mean_of(&outs, "lambda")),
        ("recurrenceFactor", mean_of(&outs, "recurrenceFactor")),
        ("identityFactor", mean_of(&outs, "identityFactor")),
        ("connections", FAMILY_CONNECTIONS as f64),
        ("minGenericObstruction", min_of(&outs, "genericObstruction")),
        ("maxSphereObstruction", max_of(&outs, "sphereObstruction")),
    ];
    SuiteRun { fixed, outs, constants }
}

fn resultant_magnitude(q1: [f64; 3], q2: [f64; 3]) -> f64 {
    let [a0, a1, a2] = q1.map(f64::abs);
    let [b0, b1, b2] = q2.map(f64::abs);
    (a0 * b2 + a2 * b0).powi(2) + (a0 * b1 + a1 * b0) * (a1 * b2 + a2 * b1)
}

/// A section coordinate with four real null `u̇` directions for radial `ż`.
fn four_root_section_b(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let b = uniform(rng, 0.1, 1.8);
        if (b - 1.0).abs() > 0.1 {
            return b;
        }
    }
}

/// Scales `(u̇, ż)` to unit length in each factor; nullity is bihomogeneous.
fn unit_bisphere(v: [f64; 4]) -> [f64; 4] {
    let nu = v[0].hypot(v[1]);
    let nz = v[2].hypot(v[3]);
    if nu == 0.0 || nz == 0.0 {
        return v;
    }
    [v[0] / nu, v[1] / nu, v[2] / nz, v[3] / nz]
}

fn sextic_suite(seed: u64, samples: usize) -> SuiteRun {
    let fixed = SampleOut::default();
    let outs = run_samples(seed, samples, |i, rng| {
        let mut out = SampleOut::default();
        let constructed = i % 2 == 1;
        let b = random_section_b(rng);
        let v = if constructed {
            let mut found = None;
            for _ in 0..64 {
                let t = random_tangent4(rng);
                if let Some(v) = construct_null_tangent(b, t[0], t[1], t[3]) {
                    found = Some(v);
                    break;
                }
            }
            found
        } else {
            Some(random_tangent4(rng))
        };
        let Some(v) = v.map(unit_bisphere) else {
            out.record(
                "null-construction",
                &[b],
                Err(Error::DegenerateConfiguration("no real null direction found".into())),
            );
            return out;
        };
        let inputs = concat(&[&[b], &v]);

        let identity = sextic_sigma(b, v).map(|sigma| {
            let (q1, q2) = reduced_quadratics(b, v);
            let res = quadratic_resultant(q1[0], q1[1], q1[2], q2[0], q2[1], q2[2]);
            let scale = b * b * sextic_magnitude(b, v) + resultant_magnitude(q1, q2);
            if scale == 0.0 {
                0.0
            } else {
                (res - b * b * sigma) / scale
            }
        });
        out.record("resultant-identity", &inputs, identity);

        let classification = is_null_sigma(b, v).map(|algebraic| {
            let oracle = null_oracle_sigma(b, v).is_null;
            if algebraic != oracle {
                out.observe("disagreement", 1.0);
            }
            if constructed {
                out.observe("constructedNull", 1.0);
            }
            indicator(algebraic == oracle && (!constructed || algebraic))
        });
        out.record("null-classification", &inputs, classification);

        let nz = null_zdot_directions(b, [v[0], v[1]]).len();
        let nu = null_udot_directions(b, [v[2], v[3]]).len();
        out.observe("zdotRoots", nz as f64);
        out.observe("udotRoots", nu as f64);
        let zdot_ok = if constructed { nz == 2 } else { nz <= 2 };
        out.record("zdot-root-count", &inputs, Ok(indicator(zdot_ok && nu <= 4)));

        let bf = four_root_section_b(rng);
        let zdot = [uniform(rng, -0.01, 0.01) * (bf - 1.0).powi(2), uniform(rng, 0.5, 2.0)];
        let nf = null_udot_directions(bf, zdot).len();
        out.record("udot-root-count", &[bf, zdot[0], zdot[1]], Ok(indicator(nf == 4)));

        let state = random_ellipse_state(rng);
        let (lam, mu) = (uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0));
        let h = random_sl2(rng);
        let state_inputs = concat(&[&state.u, &[state.z.a, state.z.b], &state.v, &[lam, mu], h.as_slice()]);
        let invariance = (|| {
            let s0 = sextic_general(&state)?;
            let mv = move_to_section(&state)?;
            let mag = sextic_magnitude(mv.b, mv.v).max(f64::MIN_POSITIVE);
            let [xd, yd, ad, bd] = state.v;
            let scaled = EllipseState::new(state.u, state.z, [lam * xd, lam * yd, mu * ad, mu * bd]);
            let weight = lam.powi(4) * mu * mu;
            let bidegree = (sextic_general(&scaled)? - weight * s0) / (weight * mag);
            let moved = sextic_general(&state.transformed(&h)?)?;
            Ok((bidegree, (moved - s0) / mag))
        })();
        out.record("bidegree", &state_inputs, invariance.clone().map(|r| r.0));
        out.record("sl2-invariance", &state_inputs, invariance.map(|r| r.1));
        out
    });

    let constants = vec![
        ("classificationDisagreements", sum_of(&outs, "disagreement")),
        ("constructedNullSamples", sum_of(&outs, "constructedNull")),
        ("maxRealZdotRoots", max_of(&outs, "zdotRoots")),
        ("maxRealUdotRoots", max_of(&outs, "udotRoots")),
    ];
    SuiteRun { fixed, outs, constants }
}

fn rotate(v: [f64; 2], angle: f64) -> [f64; 2] {
    let (s, c) = angle.sin_cos();
    [c * v[0] - s * v[1], s * v[0] + c * v[1]]
}

fn ode_suite(seed: u64, samples: usize) -> SuiteRun {
    let mut fixed = SampleOut::default();
    let circle = path_ode_integrate(0.0, 1.0, 0.0, 0.5, ODE_STEP).map(|t| t.last().map_or(f64::NAN, |p| p[1]));
    fixed.record("unit-circle", &[0.0, 1.0, 0.0, 0.5], circle.clone().map(|y| y - 0.75f64.sqrt()));

    let outs = run_samples(seed, samples, |i, rng| {
        let mut out = SampleOut::default();
        path_checks(&mut out, rng);
        let branch = if i % 2 == 0 {
            HorocycleBranch::Upper
        } else {
            HorocycleBranch::Lower
        };
        dual_ode_checks(&mut out, rng, branch);
        geodesic_checks(&mut out, rng);
        out
    });

    let constants = vec![
        ("unitCircleValue", circle.unwrap_or(f64::NAN)),
        ("upperBranchEpsilon", mean_of(&outs, "upperEps")),
        ("lowerBranchEpsilon", mean_of(&outs, "lowerEps")),
        ("maxConservationDrift", max_of(&outs, "drift")),
        ("maxMetrisabilityResidual", max_of(&outs, "metrisability")),
    ];
    SuiteRun { fixed, outs, constants }
}

fn path_checks(out: &mut SampleOut, rng: &mut ChaCha8Rng) {
    let ([x0, y0, p0], x_end) = random_path_start(rng);
    let inputs = [x0, y0, p0, x_end];
    let conservation = (|| {
        let z = ellipse_fit(x0, y0, p0)?;
        let traj = path_ode_integrate(x0, y0, p0, x_end, ODE_STEP)?;
        let mut worst: f64 = 0.0;
        for &[x, y, p] in &traj {
            let refit = ellipse_fit(x, y, p)?;
            worst = worst
                .max(incidence_phi(x, y, z.a, z.b).abs())
                .max((refit.a - z.a).abs() + (refit.b - z.b).abs());
        }
        Ok((worst, traj.last().copied()))
    })();
    if let Ok((drift, _)) = &conservation {
        out.observe("drift", *drift);
    }
    let end = conservation.as_ref().ok().and_then(|r| r.1);
    out.record("path-conservation", &inputs, conservation.map(|r| r.0));
    if let Some([xe, ye, pe]) = end {
        let back = path_ode_integrate(xe, ye, pe, x0, ODE_STEP)
            .map(|t| t.last().map_or(f64::NAN, |s| (s[1] - y0).abs() + (s[2] - p0).abs()));
        out.record("path-reversal", &inputs, back);
    }
}

fn dual_ode_checks(out: &mut SampleOut, rng: &mut ChaCha8Rng, branch: HorocycleBranch) {
    let x = uniform(rng, 0.3, 1.5) * if rng.random::<bool>() { 1.0 } else { -1.0 };
    let y = uniform(rng, -1.5, 1.5);
    let c = uniform(rng, -0.45, 0.45) / x.abs();
    let a = (y + c) / x;
    let u = [x, y];
    let inputs = [x, y, a, if branch == HorocycleBranch::Upper { 1.0 } else { -1.0 }];
    let result = (|| {
        let [_, _, bpp] = horocycle_point(u, a, branch)?;
        let minus = dual_ode_residual_on(u, a, branch, -1.0)?.abs();
        let plus = dual_ode_residual_on(u, a, branch, 1.0)?.abs();
        let eps = if minus <= plus { -1.0 } else { 1.0 };
        Ok((minus.min(plus) / (1.0 + bpp.abs()), eps))
    })();
    if let Ok((_, eps)) = result {
        let key = if branch == HorocycleBranch::Upper { "upperEps" } else { "lowerEps" };
        out.observe(key, eps);
        out.record(
            "dual-ode-branch",
            &inputs,
            Ok(indicator(eps == crate::ellipse::branch_sign(branch))),
        );
    }
    out.record("dual-ode", &inputs, result.map(|r| r.0));
}

fn geodesic_checks(out: &mut SampleOut, rng: &mut ChaCha8Rng) {
    let r0 = uniform(rng, 0.3, 1.0);
    let theta0 = uniform(rng, 0.0, std::f64::consts::TAU);
    let phi = uniform(rng, -1.2, 1.2);
    let psi = uniform(rng, 0.0, std::f64::consts::TAU);
    let dir = [(theta0 + phi).cos(), (theta0 + phi).sin()];
    let inputs = [r0, theta0, dir[0], dir[1], psi];
    let base = metrisability_geodesic(r0, theta0, dir, GEODESIC_ARC, ODE_STEP);
    if let Ok(g) = &base {
        out.observe("metrisability", g.max_residual);
    }
    out.record("metrisability", &inputs, base.as_ref().map(|g| g.max_residual).map_err(Clone::clone));
    let rotated = base.and_then(|g| {
        let turned = metrisability_geodesic(r0, theta0 + psi, rotate(dir, psi), GEODESIC_ARC, ODE_STEP)?;
        Ok(g.points
            .iter()
            .zip(&turned.points)
            .map(|(p, q)| {
                let rp = rotate(*p, psi);
                (rp[0] - q[0]).hypot(rp[1] - q[1])
            })
            .fold(0.0_f64, f64::max))
    });
    out.record("rotation-invariance", &inputs, rotated);
}

/// The dancing pair whose polar images do not dance: `a = (2, 0, 1)` with
/// the unit circle and `b = (√2, √2/2, 1)` with `2x² + y² = 1`.
pub fn non_pullback_example() -> (HomVec3, Conic3, HomVec3, Conic3) {
    let s = 2f64.sqrt();
    (
        HomVec3::new(2.0, 0.0, 1.0),
        Conic3::diag(1.0, 1.0, -1.0),
        HomVec3::new(s, s / 2.0, 1.0),
        Conic3::diag(2.0, 1.0, -1.0),
    )
}

/// `m`-residual of [`non_pullback_example`]: `6√2 − 6.5`.
pub fn non_pullback_expected() -> f64 {
    6.0 * 2f64.sqrt() - 6.5
}

fn conics_suite(seed: u64, samples: usize) -> SuiteRun {
    let mut fixed = SampleOut::default();
    let (a, ca, b, cb) = non_pullback_example();
    let example_inputs = concat(&[&hom(&a), &conic_entries(&ca), &hom(&b), &conic_entries(&cb)]);
    let m = m_condition_residual(&a, &ca, &b, &cb);
    fixed.record("non-pullback-dancing", &example_inputs, dancing_conics_residual(&a, &ca, &b, &cb));
    fixed.record(
        "non-pullback-m-residual",
        &example_inputs,
        m.clone().map(|v| v - non_pullback_expected()),
    );
    let canonical = (HomVec3::new(0.0, 0.0, 1.0), Conic3::diag(-1.0, -1.0, 1.0));
    let eigen = infinitesimal_quadric(&canonical.0, &canonical.1).map(|g| {
        let expect = [-0.5, -0.5, 0.0, 0.0, 0.0, 0.5, 0.5];
        symmetric_eigenvalues(&to_dmatrix(&g))
            .iter()
            .zip(expect)
            .fold(0.0_f64, |w, (x, y)| w.max((x - y).abs()))
    });
    fixed.record("canonical-eigenvalues", &[0.0, 0.0, 1.0, -1.0, -1.0, 1.0], eigen);

    let outs = run_samples(seed, samples, |i, rng| {
        let mut out = SampleOut::default();
        let pair = random_conic_pair(rng);
        let (a, ca) = (pair.a, pair.conic);
        let cb = random_conic(rng);
        let dancing = i % 2 == 0;
        let b = if dancing {
            loop {
                let d = random_vec3(rng);
                if let Ok(b) = dancing_partner(&a, &ca, &cb, &d) {
                    let far = b.cross(&a).norm() > 1e-3 * a.norm() * b.norm();
                    if far && cb.eval(&b).abs() > 1e-3 * b.norm().powi(2) * cb.frobenius() {
                        break b;
                    }
                }
            }
        } else {
            loop {
                let b = random_affine_point(rng, 1.5);
                if cb.eval(&b).abs() > 0.05 * b.norm().powi(2) * cb.frobenius() {
                    break b;
                }
            }
        };
        let inputs = concat(&[&hom(&a), &conic_entries(&ca), &hom(&b), &conic_entries(&cb)]);
        oracle_checks(&mut out, &inputs, (&a, &ca, &b, &cb), dancing);
        quadric_checks(&mut out, rng, &inputs, &a, &ca);

        let scale = a.norm().powi(2) * b.norm().powi(2) * ca.frobenius() * cb.frobenius();
        let h = random_sl3(rng);
        let invariance = (|| {
            let r = dancing_conics_residual(&a, &ca, &b, &cb)?;
            let (a2, ca2) = transform_pair(&h, &a, &ca)?;
            let (b2, cb2) = transform_pair(&h, &b, &cb)?;
            Ok((dancing_conics_residual(&a2, &ca2, &b2, &cb2)? - r) / scale)
        })();
        out.record("sl3-invariance", &concat(&[&inputs, h.as_slice()]), invariance);

        let cross = (|| {
            let la = HomVec3::from_vector(&(ca.matrix() * a.to_vector()));
            let lb = HomVec3::from_vector(&(cb.matrix() * b.to_vector()));
            let flat = dancing_flat_residual(&a, &la, &b, &lb)?;
            Ok((m_condition_residual(&a, &ca, &b, &cb)? - flat) / scale)
        })();
        out.record("m-condition-flat", &inputs, cross);
        out
    });

    let constants = vec![
        ("nonPullbackMResidual", m.unwrap_or(f64::NAN)),
        ("complexCases", sum_of(&outs, "complex")),
        ("dancingSamples", sum_of(&outs, "dancing")),
        ("expansionFactor", mean_of(&outs, "expansionFactor")),
        ("minExpansionSlope", min_of(&outs, "slope")),
    ];
    SuiteRun { fixed, outs, constants }
}

fn oracle_checks(
    out: &mut SampleOut,
    inputs: &[f64],
    (a, ca, b, cb): (&HomVec3, &Conic3, &HomVec3, &Conic3),
    dancing: bool,
) {
    if dancing {
        out.observe("dancing", 1.0);
    }
    match conic_intersect(ca, cb) {
        Ok(meet) if meet.real_points(1e-9).len() < 4 => out.observe("complex", 1.0),
        _ => {}
    }
    let algebraic = relative_conics_residual(a, ca, b, cb);
    let oracle = dancing_conics_oracle(a, ca, b, cb);
    let agree = match (&algebraic, &oracle) {
        (Ok(r), Ok(d)) => Ok(indicator((r.abs() <= CLASSIFY_TOL) == (d.norm() <= CONIC_ORACLE_TOL))),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    out.record("conic-oracle-agreement", inputs, agree);
    if dancing {
        out.record("conic-constructed-dancing", inputs, algebraic);
    }
}

fn quadric_checks(out: &mut SampleOut, rng: &mut ChaCha8Rng, inputs: &[f64], a: &HomVec3, ca: &Conic3) {
    let v = TangentN::from_array(std::array::from_fn(|_| uniform(rng, -1.0, 1.0)));
    let quadric = infinitesimal_quadric(a, ca);
    let g = match quadric {
        Ok(g) => g,
        Err(e) => {
            out.record("quadric-signature", inputs, Err(e));
            return;
        }
    };
    out.record(
        "quadric-signature",
        inputs,
        Ok(indicator(signature(&to_dmatrix(&g), 1e-9) == (2, 2, 3))),
    );
    let kernel = polar_projection(a, ca).map(|p| subspace_distance(&p.kernel, &quadric_kernel(&g)));
    out.record("quadric-kernel", inputs, kernel);

    let slope = (|| {
        let pair = crate::conic::PointConicPair::new(*a, *ca)?.normalized()?;
        let vv = v.as_array();
        let gvv = quadric_eval(&g, &vv, &vv);
        let mut errs = [0.0; 3];
        let mut last_ratio = f64::NAN;
        for (k, &eps) in EXPANSION_EPS.iter().enumerate() {
            let moved = pair.offset(&v, eps)?;
            let r = dancing_conics_residual(&pair.a, &pair.conic, &moved.a, &moved.conic)?;
            errs[k] = (r - EXPANSION_FACTOR * eps * eps * gvv).abs();
            last_ratio = r / (eps * eps * gvv);
        }
        let norm2: f64 = vv.iter().map(|c| c * c).sum();
        Ok((loglog_slope(&EXPANSION_EPS, &errs), (gvv.abs() > 1e-3 * norm2).then_some(last_ratio)))
    })();
    if let Ok((s, ratio)) = &slope {
        out.observe("slope", *s);
        if let Some(r) = ratio {
            out.observe("expansionFactor", *r);
        }
    }
    let mut slope_inputs = inputs.to_vec();
    slope_inputs.extend_from_slice(&v.as_array());
    out.record("quadric-expansion-slope", &slope_inputs, slope.map(|r| slope_shortfall(r.0)));
}
