//! Genome decoding: 88 genes in [0,1] become a 46-point flight path that
//! sweeps the mission columns left to right, so every horizontal projection
//! except possibly the final appended segment has positive length.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::uav::world::World;

/// Decision-space dimension of every path-planning case.
pub const GENOME_LEN: usize = 88;

/// Number of interior columns decoded from the genome.
pub const COLUMNS: usize = GENOME_LEN / 2;

/// Real-coded path genome; 44 (y, z) pairs in [0,1].
#[derive(Debug, Clone, PartialEq)]
pub struct Genome {
    genes: Vec<f64>,
}

impl Genome {
    pub fn new(genes: Vec<f64>) -> Result<Genome> {
        if genes.len() != GENOME_LEN {
            return Err(Error::StructureMismatch(format!(
                "genome needs {GENOME_LEN} genes, got {}",
                genes.len()
            )));
        }
        if !genes.iter().all(|g| g.is_finite()) {
            return Err(Error::NonFinite("genome"));
        }
        Ok(Genome { genes })
    }

    pub fn genes(&self) -> &[f64] {
        &self.genes
    }
}

/// A decoded trajectory: track points (x, y in grid units; z in metres).
#[derive(Debug, Clone, PartialEq)]
pub struct FlightPath {
    points: Vec<[f64; 3]>,
    clamped_genes: usize,
}

impl FlightPath {
    /// Wrap raw track points; x, y in grid units, z in metres.
    pub fn from_points(points: Vec<[f64; 3]>) -> Result<FlightPath> {
        if points.len() < 3 {
            return Err(Error::DimensionTooSmall {
                what: "flight path points".into(),
                n: points.len(),
                min: 3,
            });
        }
        if !points.iter().all(|p| p.iter().all(|v| v.is_finite())) {
            return Err(Error::NonFinite("flight path"));
        }
        Ok(FlightPath {
            points,
            clamped_genes: 0,
        })
    }

    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }

    /// Number of genes that fell outside [0,1] and were clamped while
    /// decoding; 0 for paths built from raw points.
    pub fn clamped_genes(&self) -> usize {
        self.clamped_genes
    }

    /// Segment vectors in metres: horizontal grid deltas scaled by the cell
    /// size, vertical delta as-is.
    pub fn segments_m(&self, world: &World) -> Vec<[f64; 3]> {
        self.points
            .windows(2)
            .map(|w| {
                [
                    (w[1][0] - w[0][0]) * world.cell_size_m,
                    (w[1][1] - w[0][1]) * world.cell_size_m,
                    w[1][2] - w[0][2],
                ]
            })
            .collect()
    }

    /// Tabular export: one `i x y z` row per track point.
    pub fn to_table_text(&self) -> String {
        let mut out = String::from("# i x y z\n");
        for (i, p) in self.points.iter().enumerate() {
            writeln!(out, "{i} {} {} {}", p[0], p[1], p[2]).expect("write to string");
        }
        out
    }
}

/// Decode 88 genes column by column: for column i (1-based),
/// x = 1 + i, y spans [1, 45], z spans [h_min, h_max]; the start point takes
/// the first column's altitude and the goal point the last's. Genes outside
/// [0,1] are clamped and counted.
pub fn decode_path(genome: &Genome, world: &World) -> FlightPath {
    let mut clamped = 0usize;
    let mut gene = |v: f64| {
        if (0.0..=1.0).contains(&v) {
            v
        } else {
            clamped += 1;
            v.clamp(0.0, 1.0)
        }
    };
    let (h_min, h_max) = (world.limits.h_min_m, world.limits.h_max_m);
    let (sx, sy) = world.mission.start;
    let (gx, gy) = world.mission.goal;
    let mut points = Vec::with_capacity(COLUMNS + 2);
    points.push([sx, sy, 0.0]);
    for i in 1..=COLUMNS {
        let y = 1.0 + 44.0 * gene(genome.genes()[2 * i - 2]);
        let z = h_min + (h_max - h_min) * gene(genome.genes()[2 * i - 1]);
        points.push([sx + i as f64, y, z]);
    }
    points[0][2] = points[1][2];
    let z_last = points[COLUMNS][2];
    points.push([gx, gy, z_last]);
    FlightPath {
        points,
        clamped_genes: clamped,
    }
}

/// One repair move toward constraint feasibility: find the turn joint (or
/// slope segment) exceeding its limit the most and smooth the genes behind
/// it toward the neighbour midpoint, under the same gene mapping as
/// `decode_path`. Returns false — genome untouched — once no turn or slope
/// violates; terrain cannot violate on decoded paths. Interior moves
/// strictly shrink the profile's squared-difference energy and the goal
/// joint is aligned at most once, so repeated calls terminate at a
/// feasible genome.
pub fn smooth_worst_violation(genes: &mut [f64], world: &World) -> bool {
    assert_eq!(genes.len(), GENOME_LEN, "repair needs a full genome");
    let limits = &world.limits;
    let span = limits.h_max_m - limits.h_min_m;
    let mut y = vec![world.mission.start.1];
    let mut z = vec![limits.h_min_m + span * genes[1].clamp(0.0, 1.0)];
    for i in 1..=COLUMNS {
        y.push(1.0 + 44.0 * genes[2 * i - 2].clamp(0.0, 1.0));
        z.push(limits.h_min_m + span * genes[2 * i - 1].clamp(0.0, 1.0));
    }
    y.push(world.mission.goal.1);
    z.push(z[COLUMNS]);

    let heading = |k: usize| {
        let dx = if k == COLUMNS { 0.0 } else { 1.0 };
        (y[k + 1] - y[k]).atan2(dx)
    };
    let run_m = |k: usize| {
        let dx = if k == COLUMNS { 0.0 } else { 1.0 };
        (y[k + 1] - y[k]).hypot(dx) * world.cell_size_m
    };

    // (is_turn, joint or segment index) of the worst excess over its limit.
    let mut worst_excess = 0.0;
    let mut worst: Option<(bool, usize)> = None;
    for k in 1..=COLUMNS {
        if run_m(k) == 0.0 || run_m(k - 1) == 0.0 {
            continue;
        }
        let excess = (heading(k) - heading(k - 1)).abs() - limits.alpha_max_rad;
        if excess > worst_excess {
            worst_excess = excess;
            worst = Some((true, k));
        }
    }
    for k in 1..COLUMNS {
        let excess = ((z[k + 1] - z[k]) / run_m(k)).atan().abs() - limits.beta_max_rad;
        if excess > worst_excess {
            worst_excess = excess;
            worst = Some((false, k));
        }
    }
    match worst {
        None => false,
        Some((true, k)) if k == COLUMNS => {
            // Turning into the appended goal segment: align the last column
            // with the goal so the segment degenerates and leaves the angle
            // sums. Nothing moves this gene afterwards.
            genes[2 * k - 2] = 1.0;
            true
        }
        Some((true, k)) => {
            let mid = (y[k - 1] + y[k + 1]) / 2.0;
            genes[2 * k - 2] = ((mid - 1.0) / 44.0).clamp(0.0, 1.0);
            if k >= 2 {
                let zi = 2 * k - 1;
                genes[zi] = ((genes[zi - 2] + genes[zi + 2]) / 2.0).clamp(0.0, 1.0);
            }
            true
        }
        Some((false, k)) => {
            let mid = (genes[2 * k - 1] + genes[2 * k + 1]) / 2.0;
            genes[2 * k - 1] = ((genes[2 * k - 1] + mid) / 2.0).clamp(0.0, 1.0);
            genes[2 * k + 1] = ((genes[2 * k + 1] + mid) / 2.0).clamp(0.0, 1.0);
            true
        }
    }
}
