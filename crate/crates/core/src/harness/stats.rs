//! The five competition statistics per result cell.

/// Best/median/worst follow the metric direction; mean and stdev do not.
/// Stdev uses the N-1 divisor and is 0 for a single run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellStats {
    pub best: f64,
    pub median: f64,
    pub worst: f64,
    pub mean: f64,
    pub stdev: f64,
}

pub fn aggregate_values(values: &[f64], maximize: bool) -> CellStats {
    assert!(!values.is_empty(), "cannot aggregate an empty cell");
    assert!(
        values.iter().all(|v| v.is_finite()),
        "metric values must be finite"
    );
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    let mean = sorted.iter().sum::<f64>() / n as f64;
    let stdev = if n > 1 {
        (sorted.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    let (lo, hi) = (sorted[0], sorted[n - 1]);
    let (best, worst) = if maximize { (hi, lo) } else { (lo, hi) };
    CellStats {
        best,
        median,
        worst,
        mean,
        stdev,
    }
}
