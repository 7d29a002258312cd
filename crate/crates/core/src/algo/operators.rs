//! Real-coded variation operators: bounded simulated-binary crossover and
//! bounded polynomial mutation.

use rand::Rng;

use crate::types::Bounds;

/// Bounded SBX. With probability `p_crossover` the parents mix; each
/// variable then recombines with probability 0.5 using spread factors drawn
/// around distribution index `eta`. Children always land inside `bounds`.
pub fn sbx_crossover<R: Rng>(
    a: &[f64],
    b: &[f64],
    bounds: &Bounds,
    eta: f64,
    p_crossover: f64,
    rng: &mut R,
) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(a.len(), bounds.dimension(), "parent/bounds mismatch");
    assert_eq!(b.len(), bounds.dimension(), "parent/bounds mismatch");
    let mut c1 = a.to_vec();
    let mut c2 = b.to_vec();
    if rng.gen::<f64>() > p_crossover {
        return (c1, c2);
    }
    let exp = 1.0 / (eta + 1.0);
    for i in 0..a.len() {
        if rng.gen::<f64>() > 0.5 {
            continue;
        }
        let (mut y1, mut y2) = (a[i], b[i]);
        if (y1 - y2).abs() < 1e-14 {
            continue;
        }
        if y1 > y2 {
            std::mem::swap(&mut y1, &mut y2);
        }
        let (yl, yu) = (bounds.lower()[i], bounds.upper()[i]);
        let u = rng.gen::<f64>();

        let spread = |beta: f64| {
            let alpha = 2.0 - beta.powf(-(eta + 1.0));
            if u <= 1.0 / alpha {
                (u * alpha).powf(exp)
            } else {
                (1.0 / (2.0 - u * alpha)).powf(exp)
            }
        };
        let beta_low = 1.0 + 2.0 * (y1 - yl) / (y2 - y1);
        let beta_high = 1.0 + 2.0 * (yu - y2) / (y2 - y1);
        let mut lo = 0.5 * ((y1 + y2) - spread(beta_low) * (y2 - y1));
        let mut hi = 0.5 * ((y1 + y2) + spread(beta_high) * (y2 - y1));
        lo = lo.clamp(yl, yu);
        hi = hi.clamp(yl, yu);
        if rng.gen::<f64>() <= 0.5 {
            c1[i] = hi;
            c2[i] = lo;
        } else {
            c1[i] = lo;
            c2[i] = hi;
        }
    }
    (c1, c2)
}

/// Bounded polynomial mutation: each variable mutates with probability
/// `p_mutation`, perturbed by a polynomial step sized to its distance from
/// the bounds.
pub fn polynomial_mutation<R: Rng>(
    x: &mut [f64],
    bounds: &Bounds,
    eta: f64,
    p_mutation: f64,
    rng: &mut R,
) {
    assert_eq!(x.len(), bounds.dimension(), "point/bounds mismatch");
    let exp = 1.0 / (eta + 1.0);
    for i in 0..x.len() {
        if rng.gen::<f64>() > p_mutation {
            continue;
        }
        let (yl, yu) = (bounds.lower()[i], bounds.upper()[i]);
        let span = yu - yl;
        let y = x[i];
        let u = rng.gen::<f64>();
        let delta = if u <= 0.5 {
            let d = (y - yl) / span;
            (2.0 * u + (1.0 - 2.0 * u) * (1.0 - d).powf(eta + 1.0)).powf(exp) - 1.0
        } else {
            let d = (yu - y) / span;
            1.0 - (2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d).powf(eta + 1.0)).powf(exp)
        };
        x[i] = (y + delta * span).clamp(yl, yu);
    }
}
