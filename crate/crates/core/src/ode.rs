//! Classical fourth-order Runge–Kutta on fixed-size real states.

fn axpy<const N: usize>(y: &[f64; N], k: &[f64; N], h: f64) -> [f64; N] {
    std::array::from_fn(|i| y[i] + h * k[i])
}

/// One RK4 step of `y' = f(t, y)` from `t` to `t + h`.
pub fn rk4_step<const N: usize, F>(f: &F, t: f64, y: &[f64; N], h: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &axpy(y, &k1, 0.5 * h));
    let k3 = f(t + 0.5 * h, &axpy(y, &k2, 0.5 * h));
    let k4 = f(t + h, &axpy(y, &k3, h));
    std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

/// Integrates from `t0` to `t1` with steps of size at most `|step|`, landing
/// exactly on `t1`. `guard` is called on every accepted state and may abort
/// the integration by returning an error.
pub fn integrate<const N: usize, F, G, E>(
    f: F,
    t0: f64,
    y0: [f64; N],
    t1: f64,
    step: f64,
    mut guard: G,
) -> Result<Vec<(f64, [f64; N])>, E>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    G: FnMut(f64, &[f64; N]) -> Result<(), E>,
{
    let span = t1 - t0;
    let n = ((span.abs() / step.abs()).ceil() as usize).max(1);
    let h = span / n as f64;
    let mut out = Vec::with_capacity(n + 1);
    let mut y = y0;
    guard(t0, &y)?;
    out.push((t0, y));
    for i in 0..n {
        let t = t0 + i as f64 * h;
        y = rk4_step(&f, t, &y, h);
        let t_next = if i + 1 == n { t1 } else { t0 + (i + 1) as f64 * h };
        guard(t_next, &y)?;
        out.push((t_next, y));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_period() {
        let f = |_t: f64, y: &[f64; 2]| [y[1], -y[0]];
        let tau = std::f64::consts::TAU;
        let traj = integrate(f, 0.0, [1.0, 0.0], tau, 1e-2, |_, _| Ok::<(), ()>(())).unwrap();
        let (t, y) = traj.last().unwrap();
        assert_eq!(*t, tau);
        assert!((y[0] - 1.0).abs() < 1e-9 && y[1].abs() < 1e-9);
    }

    #[test]
    fn fourth_order_convergence() {
        let f = |_t: f64, y: &[f64; 1]| [y[0]];
        let err = |h: f64| {
            let traj = integrate(f, 0.0, [1.0], 1.0, h, |_, _| Ok::<(), ()>(())).unwrap();
            (traj.last().unwrap().1[0] - 1f64.exp()).abs()
        };
        let ratio = err(0.1) / err(0.05);
        assert!(ratio > 14.0 && ratio < 18.0, "ratio {ratio}");
    }

    #[test]
    fn guard_aborts() {
        let f = |_t: f64, y: &[f64; 1]| [y[0] * y[0]];
        let r = integrate(f, 0.0, [1.0], 2.0, 1e-3, |_, y| if y[0] > 100.0 { Err(y[0]) } else { Ok(()) });
        assert!(r.is_err());
    }
}
