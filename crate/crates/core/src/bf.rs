//! Six box-bounded basic functions with a scalar time parameter `t` and
//! analytically known Pareto sets. Each instance (family, t) is a static
//! multiobjective problem; the multiparty suite assigns different `t` values
//! to different parties.
//!
//! Every family factors into position variables (x1, or x1/x2 for the
//! three-objective families) and a distance term `d >= 1` over the remaining
//! tail variables; `d = 1` exactly on the Pareto set. Tail targets are shared
//! between evaluation and Pareto-set sampling so sampled points hit `d = 1`
//! bit-exactly.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::types::{Bounds, DecisionVector, ObjectiveVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BfFamily {
    Bf1,
    Bf2,
    Bf3,
    Bf4,
    Bf5,
    Bf6,
}

impl BfFamily {
    pub fn all() -> [BfFamily; 6] {
        use BfFamily::*;
        [Bf1, Bf2, Bf3, Bf4, Bf5, Bf6]
    }

    pub fn objective_count(self) -> usize {
        match self {
            BfFamily::Bf1 | BfFamily::Bf2 | BfFamily::Bf3 => 2,
            BfFamily::Bf4 | BfFamily::Bf5 | BfFamily::Bf6 => 3,
        }
    }

    /// Smallest decision-space dimension with a non-empty tail.
    pub fn min_dimension(self) -> usize {
        match self.objective_count() {
            2 => 2,
            _ => 3,
        }
    }

    /// Index of the first tail (distance) variable.
    pub fn tail_start(self) -> usize {
        self.min_dimension() - 1
    }

    /// Number of free position variables on the Pareto set.
    pub fn free_count(self) -> usize {
        self.tail_start()
    }

    pub fn bounds(self, n: usize) -> Result<Bounds> {
        if n < self.min_dimension() {
            return Err(Error::DimensionTooSmall {
                what: self.to_string(),
                n,
                min: self.min_dimension(),
            });
        }
        let (mut lower, mut upper) = (vec![0.0; n], vec![1.0; n]);
        match self {
            BfFamily::Bf1 => {
                lower[0] = 1.0;
                upper[0] = 4.0;
                // tail in [0, 1]
            }
            BfFamily::Bf2 | BfFamily::Bf3 => {
                for i in 1..n {
                    lower[i] = -1.0;
                }
            }
            BfFamily::Bf4 | BfFamily::Bf6 => {
                for i in 2..n {
                    lower[i] = -1.0;
                }
            }
            BfFamily::Bf5 => {}
        }
        Bounds::new(lower, upper)
    }
}

impl std::fmt::Display for BfFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let k = match self {
            BfFamily::Bf1 => 1,
            BfFamily::Bf2 => 2,
            BfFamily::Bf3 => 3,
            BfFamily::Bf4 => 4,
            BfFamily::Bf5 => 5,
            BfFamily::Bf6 => 6,
        };
        write!(f, "BF{k}")
    }
}

/// A (family, t) instance with its derived time-dependent parameters.
/// Meaning per family:
/// - BF1: alpha = 5 cos(pi t / 2)
/// - BF2: alpha = 2.25 + 2 cos(2 pi t), beta = 1, gamma = sin(pi t / 2)
/// - BF3: beta = 1 + floor(10 |sin(pi t / 2)|)  (alpha depends on x1)
/// - BF4: alpha = 2.25 + 2 cos(pi t / 2), beta = sin(pi t / 2)
/// - BF5: alpha = |sin(pi t / 2)|
/// - BF6: alpha = floor(10 sin(pi t)), r = 1 - mod(alpha, 2) in {0, 1}
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BfContext {
    pub family: BfFamily,
    pub t: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub r: f64,
}

impl BfContext {
    pub fn new(family: BfFamily, t: f64) -> Self {
        let half = 0.5 * PI * t;
        let (alpha, beta, gamma, r) = match family {
            BfFamily::Bf1 => (5.0 * half.cos(), 0.0, 0.0, 0.0),
            BfFamily::Bf2 => (2.25 + 2.0 * (2.0 * PI * t).cos(), 1.0, half.sin(), 0.0),
            BfFamily::Bf3 => (0.0, 1.0 + (10.0 * half.sin().abs()).floor(), 0.0, 0.0),
            BfFamily::Bf4 => (2.25 + 2.0 * half.cos(), half.sin(), 0.0, 0.0),
            BfFamily::Bf5 => (half.sin().abs(), 0.0, 0.0, 0.0),
            BfFamily::Bf6 => {
                let a = (10.0 * (PI * t).sin()).floor();
                (a, 0.0, 0.0, 1.0 - a.rem_euclid(2.0))
            }
        };
        Self {
            family,
            t,
            alpha,
            beta,
            gamma,
            r,
        }
    }

    /// Optimal value of tail variable `i` given the position variables (and,
    /// for BF3, the preceding coordinate). Shared by `distance` and
    /// `ps_sample`.
    fn tail_target(&self, x: &[f64], i: usize) -> f64 {
        match self.family {
            BfFamily::Bf1 => 1.0 / (1.0 + (self.alpha * (x[0] - 2.5)).exp()),
            BfFamily::Bf2 => {
                self.gamma * (4.0 * PI * x[0].powf(self.beta)).sin() / (1.0 + self.gamma.abs())
            }
            BfFamily::Bf3 => (4.0 * self.t + x[0] + x[i - 1]).cos(),
            BfFamily::Bf4 => (2.0 * PI * (x[0] + x[1])).sin() / (1.0 + self.beta.abs()),
            BfFamily::Bf5 => 0.5 * self.alpha * x[0],
            BfFamily::Bf6 => (self.t * x[0]).sin(),
        }
    }

    /// BF3's position-dependent offset; zero exactly on the Pareto set.
    fn bf3_offset(&self, x1: f64) -> f64 {
        ((0.5 / self.beta + 0.1) * (2.0 * self.beta * PI * x1).sin()).max(0.0)
    }

    /// BF6's modular plateau penalty: 0 when floor(alpha (2 x_j - r)) is even
    /// for at least one of j = 1, 2, and 1 otherwise.
    fn bf6_penalty(&self, x: &[f64]) -> f64 {
        let k0 = (self.alpha * (2.0 * x[0] - self.r)).floor();
        let k1 = (self.alpha * (2.0 * x[1] - self.r)).floor();
        ((k0 * 0.5 * PI).sin() * (k1 * 0.5 * PI).sin()).abs()
    }

    /// True when (x1, x2) lies on BF6's Pareto-set plateau.
    fn bf6_on_plateau(&self, x0: f64, x1: f64) -> bool {
        let even = |v: f64| {
            let k = (self.alpha * (2.0 * v - self.r)).floor();
            (k.abs() as i64) % 2 == 0
        };
        even(x0) || even(x1)
    }

    /// Distance term: 1 + sum of squared tail deviations (+ BF6's plateau
    /// penalty). Equals 1 exactly on the Pareto set.
    pub fn distance(&self, x: &[f64]) -> f64 {
        let start = self.family.tail_start();
        assert!(x.len() > start, "dimension too small for {}", self.family);
        let mut d = 1.0;
        for i in start..x.len() {
            let e = x[i] - self.tail_target(x, i);
            d += e * e;
        }
        if self.family == BfFamily::Bf6 {
            d += self.bf6_penalty(x);
        }
        d
    }

    pub fn evaluate(&self, x: &DecisionVector) -> ObjectiveVector {
        let x = x.values();
        let d = self.distance(x);
        let half = 0.5 * PI;
        let vals = match self.family {
            BfFamily::Bf1 => vec![d * (1.0 + self.t) / x[0], d * x[0] / (1.0 + self.t)],
            BfFamily::Bf2 => {
                let ripple = 0.1 * (3.0 * PI * x[0]).sin();
                // 1 - x1 + ripple is >= 0 on [0, 1]; clamp rounding noise so
                // the fractional power stays real.
                let base = (1.0 - x[0] + ripple).max(0.0);
                vec![d * (x[0] + ripple), d * base.powf(self.alpha)]
            }
            BfFamily::Bf3 => {
                let off = self.bf3_offset(x[0]);
                vec![d * (x[0] + off), d * (1.0 - x[0] + off)]
            }
            BfFamily::Bf4 => {
                let (s0, c0) = (half * x[0]).sin_cos();
                let (s1, c1) = (half * x[1]).sin_cos();
                vec![
                    d * s0.max(0.0).powf(self.alpha),
                    d * (s1 * c0).max(0.0).powf(self.alpha),
                    d * (c1 * c0).max(0.0).powf(self.alpha),
                ]
            }
            BfFamily::Bf5 => {
                let y = |v: f64| PI / 6.0 * self.alpha + (half - PI / 3.0 * self.alpha) * v;
                let (s0, c0) = y(x[0]).sin_cos();
                let (s1, c1) = y(x[1]).sin_cos();
                vec![d * s0, d * s1 * c0, d * c1 * c0]
            }
            BfFamily::Bf6 => {
                let (s0, c0) = (half * x[0]).sin_cos();
                let (s1, c1) = (half * x[1]).sin_cos();
                vec![d * c0 * c1, d * c0 * s1, d * s0]
            }
        };
        ObjectiveVector::new(vals)
    }

    /// Deterministic Pareto-set sample of `count` points in dimension `n`.
    /// Free position variables sit on a uniform grid over their feasible set
    /// (ceil(count^(1/free)) cells per free dimension, truncated to `count`);
    /// tail variables follow the analytic targets. The grid is independent of
    /// `seed`, which only participates in provenance metadata upstream.
    pub fn ps_sample(&self, count: usize, _seed: u64, n: usize) -> Result<Vec<DecisionVector>> {
        if n < self.family.min_dimension() {
            return Err(Error::DimensionTooSmall {
                what: self.family.to_string(),
                n,
                min: self.family.min_dimension(),
            });
        }
        assert!(count > 0, "sample count must be positive");
        let positions: Vec<Vec<f64>> = match self.family {
            BfFamily::Bf1 => linspace(1.0, 4.0, count).into_iter().map(|v| vec![v]).collect(),
            BfFamily::Bf2 => linspace(0.0, 1.0, count).into_iter().map(|v| vec![v]).collect(),
            BfFamily::Bf3 => self.bf3_positions(count),
            BfFamily::Bf4 | BfFamily::Bf5 => {
                let side = (count as f64).sqrt().ceil() as usize;
                let axis = linspace(0.0, 1.0, side.max(1));
                let mut grid = Vec::with_capacity(side * side);
                'fill: for &a in &axis {
                    for &b in &axis {
                        grid.push(vec![a, b]);
                        if grid.len() == count {
                            break 'fill;
                        }
                    }
                }
                grid
            }
            BfFamily::Bf6 => self.bf6_positions(count),
        };

        Ok(positions
            .into_iter()
            .map(|pos| {
                let mut x = vec![0.0; n];
                x[..pos.len()].copy_from_slice(&pos);
                for i in self.family.tail_start()..n {
                    x[i] = self.tail_target(&x, i);
                }
                DecisionVector::new(x).expect("analytic targets are finite")
            })
            .collect())
    }

    /// BF3's Pareto-optimal x1 values: {0} plus a uniform sweep of the
    /// beta_t disjoint intervals [(2i-1)/(2 beta), i/beta] where the offset
    /// vanishes.
    fn bf3_positions(&self, count: usize) -> Vec<Vec<f64>> {
        let beta = self.beta;
        let mut out = Vec::with_capacity(count);
        out.push(vec![0.0]);
        let k = count - 1;
        for j in 0..k {
            // u sweeps the concatenated intervals (total length 1/2).
            let u = if k == 1 {
                0.0
            } else {
                0.5 * j as f64 / (k - 1) as f64
            };
            let i = ((u * 2.0 * beta).floor() + 1.0).min(beta);
            let x1 = (2.0 * i - 1.0) / (2.0 * beta) + (u - (i - 1.0) / (2.0 * beta));
            out.push(vec![x1.min(1.0)]);
        }
        out
    }

    /// BF6's feasible (x1, x2) plateau sample: grow the grid until enough
    /// points satisfy the modular condition, then truncate row-major.
    fn bf6_positions(&self, count: usize) -> Vec<Vec<f64>> {
        let mut side = (count as f64).sqrt().ceil() as usize;
        side = side.max(2);
        loop {
            let axis = linspace(0.0, 1.0, side);
            let mut hits = Vec::new();
            for &a in &axis {
                for &b in &axis {
                    if self.bf6_on_plateau(a, b) {
                        hits.push(vec![a, b]);
                    }
                }
            }
            if hits.len() >= count {
                hits.truncate(count);
                return hits;
            }
            side *= 2;
            assert!(side < 1 << 20, "plateau sampling failed to fill the grid");
        }
    }
}

fn linspace(lo: f64, hi: f64, m: usize) -> Vec<f64> {
    assert!(m > 0);
    if m == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (m - 1) as f64;
    (0..m).map(|i| lo + step * i as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(values: &[f64]) -> DecisionVector {
        DecisionVector::new(values.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn bf1_hand_values() {
        let ctx = BfContext::new(BfFamily::Bf1, 1.0);
        assert!(close(ctx.distance(&[2.5, 0.5]), 1.0, 0.0));
        let f = ctx.evaluate(&dv(&[2.5, 0.5]));
        assert!(close(f.values()[0], 0.8, 1e-15));
        assert!(close(f.values()[1], 1.25, 1e-15));

        let ctx2 = BfContext::new(BfFamily::Bf1, 2.0);
        assert!(close(ctx2.distance(&[2.5, 0.5]), 1.0, 0.0));
        let g = ctx2.evaluate(&dv(&[2.5, 0.5]));
        assert!(close(g.values()[0], 1.2, 1e-15));
        assert!(close(g.values()[1], 2.5 / 3.0, 1e-15));

        // Off the Pareto set the tail contributes its squared deviation.
        assert!(close(ctx.distance(&[2.5, 0.0]), 1.25, 1e-15));
    }

    #[test]
    fn bf5_distance_and_spherical_identity() {
        let ctx = BfContext::new(BfFamily::Bf5, 0.0);
        assert!(close(ctx.distance(&[0.4, 0.7, 0.0]), 1.0, 0.0));

        for t in [0.0, 0.7, 1.5] {
            let ctx = BfContext::new(BfFamily::Bf5, t);
            for x in [[0.3, 0.9, 0.2, 0.8], [0.0, 1.0, 0.5, 0.5]] {
                let f = ctx.evaluate(&dv(&x));
                let d = ctx.distance(&x);
                let sq: f64 = f.values().iter().map(|v| v * v).sum();
                assert!(close(sq, d * d, 1e-12), "t={t}");
            }
        }
    }

    #[test]
    fn bf3_beta_steps() {
        assert_eq!(BfContext::new(BfFamily::Bf3, 0.0).beta, 1.0);
        assert_eq!(BfContext::new(BfFamily::Bf3, 1.0).beta, 11.0);
        assert_eq!(BfContext::new(BfFamily::Bf3, PI / 2.0).beta, 7.0);
    }

    #[test]
    fn bf6_derived_params() {
        let c0 = BfContext::new(BfFamily::Bf6, 0.0);
        assert_eq!(c0.alpha, 0.0);
        assert_eq!(c0.r, 1.0);
        // sin(pi) rounds to ~1.2e-16, so alpha still floors to zero.
        let c1 = BfContext::new(BfFamily::Bf6, 1.0);
        assert_eq!(c1.alpha, 0.0);
        let c15 = BfContext::new(BfFamily::Bf6, 1.5);
        assert_eq!(c15.alpha, -10.0);
        assert_eq!(c15.r, 1.0);
    }

    #[test]
    fn bf6_penalty_is_binary_on_integer_plateaus() {
        let ctx = BfContext::new(BfFamily::Bf6, 1.5); // alpha = -10, r = 1
        // x = 0.5 gives k = floor(0) = 0 (even): penalty vanishes.
        assert!(ctx.bf6_penalty(&[0.5, 0.5, 0.0]) < 1e-12);
        // k odd for both coordinates: penalty 1. alpha(2x-r) = -10(2x-1);
        // x = 0.52 -> -0.4 -> k = -1; |k| odd.
        let p = ctx.bf6_penalty(&[0.52, 0.52, 0.0]);
        assert!(close(p, 1.0, 1e-9), "penalty {p}");
        // Mixed parity: one even floor kills the product.
        assert!(ctx.bf6_penalty(&[0.5, 0.52, 0.0]) < 1e-12);
    }

    #[test]
    fn bounds_shapes() {
        let b1 = BfFamily::Bf1.bounds(4).unwrap();
        assert_eq!(b1.lower(), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(b1.upper(), &[4.0, 1.0, 1.0, 1.0]);
        let b2 = BfFamily::Bf2.bounds(3).unwrap();
        assert_eq!(b2.lower(), &[0.0, -1.0, -1.0]);
        let b4 = BfFamily::Bf4.bounds(4).unwrap();
        assert_eq!(b4.lower(), &[0.0, 0.0, -1.0, -1.0]);
        let b5 = BfFamily::Bf5.bounds(3).unwrap();
        assert_eq!(b5.lower(), &[0.0, 0.0, 0.0]);
        assert!(BfFamily::Bf1.bounds(1).is_err());
        assert!(BfFamily::Bf4.bounds(2).is_err());
    }

    #[test]
    fn ps_samples_attain_unit_distance_and_stay_feasible() {
        // Every (family, t) pairing used anywhere in the suite, plus extras.
        let cases: &[(BfFamily, &[f64])] = &[
            (BfFamily::Bf1, &[0.0, 1.0, 2.0, 0.3]),
            (BfFamily::Bf2, &[0.0, 1.0, 3.0, 0.8]),
            (BfFamily::Bf3, &[0.0, PI / 2.0, 2.3]),
            (BfFamily::Bf4, &[0.0, 0.5, 1.0, 1.7]),
            (BfFamily::Bf5, &[0.0, 1.0, 1.5, 0.4]),
            (BfFamily::Bf6, &[0.0, 1.0, 1.5, 0.25]),
        ];
        for &(family, ts) in cases {
            for &t in ts {
                let ctx = BfContext::new(family, t);
                let n = family.min_dimension() + 3;
                let bounds = family.bounds(n).unwrap();
                let pts = ctx.ps_sample(500, 0, n).unwrap();
                assert_eq!(pts.len(), 500);
                for p in &pts {
                    assert!(bounds.contains(p.values()), "{family} t={t} out of bounds");
                    let d = ctx.distance(p.values());
                    assert!(close(d, 1.0, 1e-12), "{family} t={t} d={d}");
                }
            }
        }
    }

    #[test]
    fn ps_sampling_is_deterministic() {
        let ctx = BfContext::new(BfFamily::Bf3, 1.0);
        let a = ctx.ps_sample(100, 0, 5).unwrap();
        let b = ctx.ps_sample(100, 42, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn perturbing_tail_strictly_increases_distance() {
        for (family, t) in [
            (BfFamily::Bf1, 1.0),
            (BfFamily::Bf2, 3.0),
            (BfFamily::Bf3, PI / 2.0),
        ] {
            let ctx = BfContext::new(family, t);
            let n = 5;
            for p in ctx.ps_sample(20, 0, n).unwrap() {
                for i in family.tail_start()..n {
                    let mut x = p.values().to_vec();
                    x[i] += 0.01;
                    assert!(
                        ctx.distance(&x) > 1.0,
                        "{family} t={t} tail {i} not strict"
                    );
                }
            }
        }
    }

    #[test]
    fn bf3_positions_cover_all_intervals_and_zero() {
        let ctx = BfContext::new(BfFamily::Bf3, 1.0); // beta = 11
        let beta = ctx.beta as usize;
        let pts = ctx.ps_sample(400, 0, 2).unwrap();
        assert!(pts.iter().any(|p| p.values()[0] == 0.0));
        for i in 1..=beta {
            let lo = (2 * i - 1) as f64 / (2.0 * ctx.beta);
            let hi = i as f64 / ctx.beta;
            assert!(
                pts.iter()
                    .any(|p| p.values()[0] >= lo - 1e-12 && p.values()[0] <= hi + 1e-12),
                "interval {i} uncovered"
            );
        }
        // All positions sit inside the union (or at zero).
        for p in &pts {
            let x1 = p.values()[0];
            if x1 == 0.0 {
                continue;
            }
            let s = (2.0 * ctx.beta * PI * x1).sin();
            assert!(s <= 1e-9, "x1={x1} has positive offset lobe");
        }
    }

    #[test]
    fn bf2_power_base_never_goes_negative() {
        let ctx = BfContext::new(BfFamily::Bf2, 3.0);
        // x1 = 1 makes the base a tiny negative number before clamping; the
        // objective must stay finite and non-negative.
        let f = ctx.evaluate(&dv(&[1.0, 0.0, 0.0]));
        assert!(f.values().iter().all(|v| v.is_finite() && *v >= 0.0));
    }

    #[test]
    fn evaluation_is_finite_across_random_feasible_points() {
        let mut state = 3u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 33) as f64) / (1u64 << 31) as f64
        };
        for family in BfFamily::all() {
            for t in [0.0, 0.5, 1.0, 1.5, 2.0, 3.0] {
                let ctx = BfContext::new(family, t);
                let n = family.min_dimension() + 5;
                let b = family.bounds(n).unwrap();
                for _ in 0..200 {
                    let x: Vec<f64> = b
                        .lower()
                        .iter()
                        .zip(b.upper())
                        .map(|(&l, &u)| l + next() * (u - l))
                        .collect();
                    let f = ctx.evaluate(&dv(&x));
                    assert!(
                        f.values().iter().all(|v| v.is_finite()),
                        "{family} t={t} produced a non-finite objective"
                    );
                    assert!(ctx.distance(&x) >= 1.0);
                }
            }
        }
    }
}
