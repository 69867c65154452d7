//! Seeded CSV samples for external analysis.

use std::io::Write;
use std::path::Path;

use dancing_core::ellipse::{construct_null_tangent, path_ode_integrate};
use dancing_core::sampling::{
    random_conic_pair, random_dancing_partner, random_ellipse_state, random_flat_pair, random_path_start,
    random_section_b, random_tangent4, rng_for,
};

use crate::CliError;

pub const SAMPLE_KINDS: [&str; 6] = [
    "flat-pairs",
    "dancing-quadruples",
    "conic-pairs",
    "ellipse-states",
    "null-tangents",
    "paths",
];

/// Step of the `paths` trajectories.
pub const PATH_STEP: f64 = 1e-2;

fn header(kind: &str) -> Option<&'static [&'static str]> {
    Some(match kind {
        "flat-pairs" => &["p0", "p1", "p2", "l0", "l1", "l2"],
        "dancing-quadruples" => &["p0", "p1", "p2", "l0", "l1", "l2", "q0", "q1", "q2", "m0", "m1", "m2"],
        "conic-pairs" => &["a0", "a1", "a2", "A11", "A12", "A22", "A13", "A23", "A33"],
        "ellipse-states" => &["x", "y", "a", "b", "xdot", "ydot", "adot", "bdot"],
        "null-tangents" => &["b", "xdot", "ydot", "adot", "bdot"],
        "paths" => &["trajectory", "x", "y", "yprime"],
        _ => return None,
    })
}

fn rows(kind: &str, seed: u64, index: u64) -> Vec<Vec<f64>> {
    let mut rng = rng_for(seed, index);
    match kind {
        "flat-pairs" => {
            let (p, l) = random_flat_pair(&mut rng);
            vec![[p.c, l.c].concat()]
        }
        "dancing-quadruples" => {
            let (p, l) = random_flat_pair(&mut rng);
            let (q, m) = random_dancing_partner(&mut rng, &p, &l);
            vec![[p.c, l.c, q.c, m.c].concat()]
        }
        "conic-pairs" => {
            let pair = random_conic_pair(&mut rng);
            let m = pair.conic.matrix();
            let mut row = pair.a.c.to_vec();
            row.extend([m[(0, 0)], m[(0, 1)], m[(1, 1)], m[(0, 2)], m[(1, 2)], m[(2, 2)]]);
            vec![row]
        }
        "ellipse-states" => {
            let s = random_ellipse_state(&mut rng);
            vec![[s.u.to_vec(), vec![s.z.a, s.z.b], s.v.to_vec()].concat()]
        }
        "null-tangents" => loop {
            let b = random_section_b(&mut rng);
            let t = random_tangent4(&mut rng);
            if let Some(v) = construct_null_tangent(b, t[0], t[1], t[3]) {
                break vec![[vec![b], v.to_vec()].concat()];
            }
        },
        "paths" => loop {
            let ([x0, y0, p0], x_end) = random_path_start(&mut rng);
            if let Ok(traj) = path_ode_integrate(x0, y0, p0, x_end, PATH_STEP) {
                break traj.iter().map(|s| vec![index as f64, s[0], s[1], s[2]]).collect();
            }
        },
        _ => unreachable!("kind checked by caller"),
    }
}

/// Writes `count` seeded samples of `kind` as CSV with a header row.
pub fn write_samples<W: Write>(kind: &str, seed: u64, count: usize, out: W) -> Result<(), CliError> {
    let head = header(kind).ok_or_else(|| {
        CliError::InvalidParams(format!("unknown sample kind `{kind}` (expected one of {})", SAMPLE_KINDS.join(", ")))
    })?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(head)?;
    for i in 0..count {
        for row in rows(kind, seed, i as u64) {
            w.write_record(row.iter().map(|v| v.to_string()))?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn sample(kind: &str, seed: u64, count: usize, path: &Path) -> Result<(), CliError> {
    let file = std::fs::File::create(path)?;
    write_samples(kind, seed, count, std::io::BufWriter::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_kind_has_a_header() {
        for k in SAMPLE_KINDS {
            let mut buf = Vec::new();
            write_samples(k, 1, 2, &mut buf).unwrap();
            let text = String::from_utf8(buf).unwrap();
            let cols = header(k).unwrap().len();
            for line in text.lines() {
                assert_eq!(line.split(',').count(), cols, "{k}: {line}");
            }
        }
    }

    #[test]
    fn unknown_kind_is_rejected() {
        assert!(matches!(write_samples("nope", 1, 1, Vec::new()), Err(CliError::InvalidParams(_))));
    }
}
