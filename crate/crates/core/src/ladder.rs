//! A planar local group with non-discrete associators.
//!
//! The underlying set is the 1/10-thickening of the ladder
//! `B = ({0}×ℝ) ∪ ({1}×ℝ) ∪ ([0,1]×ℤ)`. Two vector fields act on it:
//! `Y = ∂/∂y`, and `X` which is `∂/∂x` everywhere except on the rung
//! bands `y ∈ (n−1/10, n+1/10)`, `x ∈ [1/10, 9/10]` with `n ≥ 1`, where
//! it is scaled by a bump profile `f_n` calibrated so that the time-8/10
//! flow of `f_n·∂/∂x` carries 1/10 to 9/10 + 1/(100n). Group elements
//! are flow compositions applied to the origin; multiplying by a
//! generator applies its flow. Evaluating the commutator-like word
//! `a⁻²⁰ b⁻²⁰ⁿ b²⁰ⁿ a²⁰` inside-out gives the neutral element, while the
//! split evaluation order drifts by exactly the rung-n overshoot,
//! exhibiting `(1/(100n), 0)` as an associator.

use std::collections::BTreeMap;

use thiserror::Error;

/// Half-width of the thickened ladder.
pub const TUBE_RADIUS: f64 = 0.1;

/// Default integrator step.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Calibration target: the residual of the time-8/10 flow condition
/// must drop below this.
pub const CALIBRATION_TOL: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum LadderError {
    #[error("flow entered uncalibrated rung band n = {0}")]
    UncalibratedBand(i64),
    #[error("bisection could not bracket the calibration condition")]
    NoBracket,
}

/// A point of the thickened ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderPoint {
    pub x: f64,
    pub y: f64,
}

impl LadderPoint {
    pub const ORIGIN: LadderPoint = LadderPoint { x: 0.0, y: 0.0 };
}

/// Which vector field to flow along.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowField {
    X,
    Y,
}

/// Calibrated bump amplitudes and integrator parameters.
#[derive(Debug, Clone)]
pub struct LadderConfig {
    /// Highest rung band with a calibrated amplitude.
    pub depth_n_max: i64,
    /// n → cₙ with `f_n(x) = 1 + cₙ·bump((x−1/2)·6)`.
    amplitudes: BTreeMap<i64, f64>,
    pub tube_radius: f64,
    pub step: f64,
}

impl LadderConfig {
    /// Calibrates bands 1..=depth_n_max by bisection.
    pub fn calibrated(depth_n_max: i64, step: f64) -> Result<Self, LadderError> {
        let mut amplitudes = BTreeMap::new();
        for n in 1..=depth_n_max {
            amplitudes.insert(n, calibrate(n, step)?);
        }
        Ok(Self {
            depth_n_max,
            amplitudes,
            tube_radius: TUBE_RADIUS,
            step,
        })
    }

    pub fn amplitude(&self, n: i64) -> Option<f64> {
        self.amplitudes.get(&n).copied()
    }
}

/// Smooth bump supported in [−1, 1] with peak value 1 at 0.
pub fn bump(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - u * u)).exp()
    }
}

/// The rung speed profile `f(x) = 1 + c·bump((x − 1/2)·6)`: equal to 1
/// outside [1/3, 2/3].
pub fn speed_profile(c: f64, x: f64) -> f64 {
    1.0 + c * bump((x - 0.5) * 6.0)
}

/// One-dimensional RK4 flow of `ẋ = speed_profile(c, x)`.
pub fn flow_profile(c: f64, x0: f64, time: f64, step: f64) -> f64 {
    let steps = (time.abs() / step).round().max(1.0) as usize;
    let h = time / steps as f64;
    let mut x = x0;
    for _ in 0..steps {
        let k1 = speed_profile(c, x);
        let k2 = speed_profile(c, x + 0.5 * h * k1);
        let k3 = speed_profile(c, x + 0.5 * h * k2);
        let k4 = speed_profile(c, x + h * k3);
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    x
}

/// Signed calibration residual for band `n` at amplitude `c`: the
/// time-8/10 flow start at 1/10, minus the target 9/10 + 1/(100n).
pub fn calibration_residual(n: i64, c: f64, step: f64) -> f64 {
    flow_profile(c, 0.1, 0.8, step) - (0.9 + 0.01 / n as f64)
}

/// Finds the amplitude cₙ > 0 making the flow condition hold with
/// residual below [`CALIBRATION_TOL`], by bisection.
pub fn calibrate(n: i64, step: f64) -> Result<f64, LadderError> {
    assert!(n >= 1, "only bands n ≥ 1 carry a bump");
    let mut lo = 0.0;
    let mut f_lo = calibration_residual(n, lo, step);
    if f_lo > 0.0 {
        return Err(LadderError::NoBracket);
    }
    let mut hi = 1.0;
    let mut iterations = 0;
    while calibration_residual(n, hi, step) < 0.0 {
        hi *= 2.0;
        iterations += 1;
        if iterations > 60 {
            return Err(LadderError::NoBracket);
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f_mid = calibration_residual(n, mid, step);
        if f_mid.abs() < CALIBRATION_TOL {
            return Ok(mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(LadderError::NoBracket)
}

/// Distance from `p` to the ladder set `B`.
pub fn distance_to_ladder(p: &LadderPoint) -> f64 {
    let d_left = p.x.abs();
    let d_right = (p.x - 1.0).abs();
    let nearest_rung = p.y.round();
    let clamped = p.x.clamp(0.0, 1.0);
    let d_rung = ((p.x - clamped).powi(2) + (p.y - nearest_rung).powi(2)).sqrt();
    d_left.min(d_right).min(d_rung)
}

/// Horizontal speed at a point: the rung profile inside a band crossing
/// the middle of a rung, plain unit speed elsewhere.
fn x_speed(cfg: &LadderConfig, x: f64, y: f64) -> Result<f64, LadderError> {
    if !(0.1..=0.9).contains(&x) {
        return Ok(1.0);
    }
    let band = y.round() as i64;
    if (y - band as f64).abs() >= 0.1 || band < 1 {
        return Ok(1.0);
    }
    match cfg.amplitude(band) {
        Some(c) => Ok(speed_profile(c, x)),
        None => Err(LadderError::UncalibratedBand(band)),
    }
}

/// Fixed-step RK4 flow of `p` along the chosen field. Returns `None` if
/// any integration step leaves the thickened ladder.
pub fn ladder_flow(
    p: &LadderPoint,
    field: FlowField,
    time: f64,
    cfg: &LadderConfig,
) -> Result<Option<LadderPoint>, LadderError> {
    assert!(time.abs() <= 10.0, "flow times are capped at 10");
    if distance_to_ladder(p) >= cfg.tube_radius {
        return Ok(None);
    }
    if time == 0.0 {
        return Ok(Some(*p));
    }
    let steps = (time.abs() / cfg.step).round().max(1.0) as usize;
    let h = time / steps as f64;
    let mut cur = *p;
    for _ in 0..steps {
        match field {
            FlowField::Y => {
                cur.y += h;
            }
            FlowField::X => {
                let k1 = x_speed(cfg, cur.x, cur.y)?;
                let k2 = x_speed(cfg, cur.x + 0.5 * h * k1, cur.y)?;
                let k3 = x_speed(cfg, cur.x + 0.5 * h * k2, cur.y)?;
                let k4 = x_speed(cfg, cur.x + h * k3, cur.y)?;
                cur.x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
        }
        if distance_to_ladder(&cur) >= cfg.tube_radius {
            return Ok(None);
        }
    }
    Ok(Some(cur))
}

/// A word generator: one of a, b, a⁻¹, b⁻¹ with flow time ±1/20.
#[derive(Debug, Clone, Copy)]
struct Generator {
    field: FlowField,
    time: f64,
}

const GEN_TIME: f64 = 0.05;

fn word(n: i64) -> Vec<Generator> {
    let a = Generator {
        field: FlowField::X,
        time: GEN_TIME,
    };
    let b = Generator {
        field: FlowField::Y,
        time: GEN_TIME,
    };
    let a_inv = Generator {
        field: FlowField::X,
        time: -GEN_TIME,
    };
    let b_inv = Generator {
        field: FlowField::Y,
        time: -GEN_TIME,
    };
    let reps = (20 * n) as usize;
    let mut w = Vec::with_capacity(40 + 2 * reps);
    w.extend(std::iter::repeat(a_inv).take(20));
    w.extend(std::iter::repeat(b_inv).take(reps));
    w.extend(std::iter::repeat(b).take(reps));
    w.extend(std::iter::repeat(a).take(20));
    w
}

fn apply(
    g: Generator,
    p: &LadderPoint,
    cfg: &LadderConfig,
) -> Result<Option<LadderPoint>, LadderError> {
    ladder_flow(p, g.field, g.time, cfg)
}

/// Evaluates the word `a⁻²⁰ b⁻²⁰ⁿ b²⁰ⁿ a²⁰` from the inside out: the
/// innermost pair collapses to the neutral element and every further
/// ring multiplies by a generator and its inverse. The result is the
/// origin up to integrator rounding.
pub fn ladder_inside_out(n: i64, cfg: &LadderConfig) -> Result<Option<LadderPoint>, LadderError> {
    assert!(n >= 1);
    let w = word(n);
    let m = w.len();
    let mut i = m / 2 - 1;
    let mut j = m / 2;
    // innermost pair: the point of w[i], right-multiplied by w[j]
    let Some(start) = apply(w[i], &LadderPoint::ORIGIN, cfg)? else {
        return Ok(None);
    };
    let Some(mut acc) = apply(w[j], &start, cfg)? else {
        return Ok(None);
    };
    while i > 0 {
        i -= 1;
        j += 1;
        let Some(left) = apply(w[i], &acc, cfg)? else {
            return Ok(None);
        };
        let Some(both) = apply(w[j], &left, cfg)? else {
            return Ok(None);
        };
        acc = both;
    }
    Ok(Some(acc))
}

/// Evaluates the same word in the order that detects the associator:
/// first the second half `b²⁰ⁿ a²⁰` left to right, then the remaining
/// letters `a⁻²⁰ b⁻²⁰ⁿ` multiplied on from the right to the left. For a
/// calibrated band the result is `(1/(100n), 0)` up to integrator error.
pub fn ladder_associator(n: i64, cfg: &LadderConfig) -> Result<Option<LadderPoint>, LadderError> {
    assert!(n >= 1);
    let w = word(n);
    let m = w.len();
    // second half, left to right: start from the first letter's point
    let Some(mut acc) = apply(w[m / 2], &LadderPoint::ORIGIN, cfg)? else {
        return Ok(None);
    };
    for g in &w[m / 2 + 1..] {
        let Some(next) = apply(*g, &acc, cfg)? else {
            return Ok(None);
        };
        acc = next;
    }
    // the rest, right to left: left-multiplications
    for g in w[..m / 2].iter().rev() {
        let Some(next) = apply(*g, &acc, cfg)? else {
            return Ok(None);
        };
        acc = next;
    }
    Ok(Some(acc))
}
