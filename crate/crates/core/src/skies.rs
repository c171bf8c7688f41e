//! Skies of events in 2+1 Minkowski space and their braid words.
//!
//! A light ray through the event `(p, t)` with direction `u(θ) = (cos θ,
//! sin θ)` meets the slice `t = 0` at `q(θ) = p − t·u(θ)`, so the sky of the
//! event is the curve `θ ↦ (q(θ), θ)` in `R² × S¹`. Two skies are projected
//! onto the annulus with coordinates `(θ, e·q)` and compared in depth along
//! `e⊥`, the direction `e` rotated a quarter turn counterclockwise. The
//! strand moving toward larger `e·q` passes over at a positive crossing, and
//! the larger `e⊥·q` is nearer the viewer.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::causality::{self, Method, Verdict};
use crate::error::{Error, Result};
use crate::linkdiag::{braid_closure, BraidWord};

pub const DEFAULT_EPSILON: f64 = 1e-9;
pub const DEFAULT_DELTA: f64 = 1e-9;
/// Number of rotated projection directions tried after the first.
pub const GENERICITY_ATTEMPTS: usize = 32;

fn golden_angle() -> f64 {
    PI * (3.0 - 5f64.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub p: [f64; 2],
    pub t: f64,
}

impl Event {
    pub fn new(px: f64, py: f64, t: f64) -> Result<Self> {
        if !(px.is_finite() && py.is_finite() && t.is_finite()) {
            return Err(Error::Degenerate(format!("event ({px},{py},{t}) is not finite")));
        }
        Ok(Event { p: [px, py], t })
    }

    pub fn translated(&self, dp: [f64; 2], dt: f64) -> Self {
        Event {
            p: [self.p[0] + dp[0], self.p[1] + dp[1]],
            t: self.t + dt,
        }
    }
}

impl FromStr for Event {
    type Err = Error;

    /// `"px,py,t"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::parse(s, "an event is `px,py,t`"));
        }
        let num = |x: &str| x.parse::<f64>().map_err(|_| Error::parse(x, "not a number"));
        Event::new(num(parts[0])?, num(parts[1])?, num(parts[2])?)
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.p[0], self.p[1], self.t)
    }
}

/// Parses a batch line `"px,py,t;qx,qy,s"`.
pub fn parse_event_pair(s: &str) -> Result<(Event, Event)> {
    let (a, b) = s
        .split_once(';')
        .ok_or_else(|| Error::parse(s, "an event pair is `px,py,t;qx,qy,s`"))?;
    Ok((a.parse()?, b.parse()?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkyCurve {
    pub p: [f64; 2],
    pub t: f64,
}

impl SkyCurve {
    pub fn at(&self, theta: f64) -> [f64; 2] {
        [self.p[0] - self.t * theta.cos(), self.p[1] - self.t * theta.sin()]
    }

    pub fn radius(&self) -> f64 {
        self.t.abs()
    }
}

pub fn sky(e: &Event) -> SkyCurve {
    SkyCurve { p: e.p, t: e.t }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalClass {
    Timelike,
    Null,
    Spacelike,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CausalReport {
    pub class: CausalClass,
    /// `| |Δp| − |Δt| |`
    pub margin: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Null boundary, relative to `|Δt| + |Δp|`.
    pub epsilon: f64,
    /// Minimum crossing speed and strand gap of a generic projection.
    pub delta: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            epsilon: DEFAULT_EPSILON,
            delta: DEFAULT_DELTA,
        }
    }
}

struct Separation {
    dp: [f64; 2],
    dt: f64,
    dist: f64,
    margin: f64,
}

impl Separation {
    fn new(x: &Event, y: &Event) -> Result<Self> {
        let dp = [y.p[0] - x.p[0], y.p[1] - x.p[1]];
        let dt = y.t - x.t;
        let dist = dp[0].hypot(dp[1]);
        if dist == 0.0 && dt == 0.0 {
            return Err(Error::Degenerate(format!("identical events {x}")));
        }
        Ok(Separation {
            dp,
            dt,
            dist,
            margin: (dist - dt.abs()).abs(),
        })
    }

    fn is_null(&self, epsilon: f64) -> bool {
        self.margin <= epsilon * (self.dt.abs() + self.dist)
    }
}

/// Flat-metric causal class: timelike when `|Δp| < |Δt|`.
pub fn classify_metric(x: &Event, y: &Event, epsilon: f64) -> Result<CausalReport> {
    let s = Separation::new(x, y)?;
    let class = if s.is_null(epsilon) {
        CausalClass::Null
    } else if s.dist < s.dt.abs() {
        CausalClass::Timelike
    } else {
        CausalClass::Spacelike
    };
    Ok(CausalReport {
        class,
        margin: s.margin,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum SkyBraid {
    /// Two-strand braid of the disjoint skies, letters ordered by `θ`.
    Braid {
        word: BraidWord,
        direction: [f64; 2],
        thetas: Vec<f64>,
    },
    /// The skies meet along the ray in direction `θ`.
    IntersectionDetected { theta: f64 },
}

fn rotate(v: [f64; 2], angle: f64) -> [f64; 2] {
    let (s, c) = angle.sin_cos();
    [c * v[0] - s * v[1], s * v[0] + c * v[1]]
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// Crossings of the two projected skies along `e`, or `None` when the
/// projection is not generic.
fn project(s: &Separation, e: [f64; 2], delta: f64) -> Option<(Vec<i32>, Vec<f64>)> {
    let e_perp = [-e[1], e[0]];
    let along = dot(e, s.dp);
    let across = dot(e_perp, s.dp);
    let disc = s.dt * s.dt - along * along;
    if disc < 0.0 || s.dt == 0.0 {
        // strands never meet; the gap must stay visible
        return ((along.abs() - s.dt.abs()).abs() >= delta).then(|| (vec![], vec![]));
    }
    let speed = disc.sqrt();
    if speed < delta {
        return None;
    }
    let phi = e[1].atan2(e[0]);
    let half = (along / s.dt).clamp(-1.0, 1.0).acos();
    let mut crossings: Vec<(f64, i32)> = [phi + half, phi - half]
        .into_iter()
        .map(|theta| {
            let theta = theta.rem_euclid(TAU);
            let u = [theta.cos(), theta.sin()];
            // d/dθ of (e·q_y − e·q_x), and depth of y over x
            let drift = s.dt * dot(e_perp, u);
            let depth = across - s.dt * dot(e_perp, u);
            let letter = if (drift > 0.0) == (depth > 0.0) { 1 } else { -1 };
            (theta, letter)
        })
        .collect();
    crossings.sort_by(|a, b| a.0.total_cmp(&b.0));
    if (crossings[1].0 - crossings[0].0).abs() < delta {
        return None;
    }
    Some((
        crossings.iter().map(|c| c.1).collect(),
        crossings.iter().map(|c| c.0).collect(),
    ))
}

pub fn skies_to_braid(x: &Event, y: &Event, direction: [f64; 2], tol: Tolerances) -> Result<SkyBraid> {
    if (direction[0].hypot(direction[1]) - 1.0).abs() > 1e-9 {
        return Err(Error::Degenerate(format!(
            "projection direction ({}, {}) is not a unit vector",
            direction[0], direction[1]
        )));
    }
    let s = Separation::new(x, y)?;
    if s.is_null(tol.epsilon) {
        // Δp = Δt·u(θ) for the shared ray
        let sign = if s.dt < 0.0 { -1.0 } else { 1.0 };
        let theta = (sign * s.dp[1]).atan2(sign * s.dp[0]).rem_euclid(TAU);
        return Ok(SkyBraid::IntersectionDetected { theta });
    }
    for k in 0..=GENERICITY_ATTEMPTS {
        let e = rotate(direction, k as f64 * golden_angle());
        if let Some((letters, thetas)) = project(&s, e, tol.delta) {
            let word = BraidWord::new(2, letters).expect("two-strand letters");
            return Ok(SkyBraid::Braid {
                word,
                direction: e,
                thetas,
            });
        }
    }
    Err(Error::NonGeneric { margin: s.margin })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EndToEnd {
    pub verdict: Verdict,
    pub oracle: CausalReport,
    pub braid: Option<BraidWord>,
}

impl EndToEnd {
    pub fn agrees_with_oracle(&self) -> bool {
        self.verdict.related == (self.oracle.class != CausalClass::Spacelike)
    }
}

pub fn end_to_end(
    x: &Event,
    y: &Event,
    method: Method,
    tol: Tolerances,
    crossing_limit: usize,
) -> Result<EndToEnd> {
    let oracle = classify_metric(x, y, tol.epsilon)?;
    match skies_to_braid(x, y, [1.0, 0.0], tol)? {
        SkyBraid::IntersectionDetected { theta } => Ok(EndToEnd {
            verdict: Verdict::sky_intersection(theta),
            oracle,
            braid: None,
        }),
        SkyBraid::Braid { word, .. } => {
            let verdict = causality::decide(&braid_closure(&word), method, crossing_limit)?;
            Ok(EndToEnd {
                verdict,
                oracle,
                braid: Some(word),
            })
        }
    }
}
