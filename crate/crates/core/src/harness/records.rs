//! Per-run artifacts: the scored record (structured text) and the archived
//! objective set (tabular text, full precision).

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::PartyObjectives;
use crate::util::fmt17;

/// Metric value of the run's archive at an evaluation checkpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub evaluations: usize,
    pub value: f64,
}

/// Everything needed to audit one run. A record plus the config hash and
/// seed reproduces the metric value bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub problem: String,
    pub dimension: usize,
    pub seed: u64,
    pub algorithm: String,
    /// Scoring metric: `mpigd` or `mphv`.
    pub metric: String,
    pub value: f64,
    /// Per-party mphv average, when the metric is mphv.
    pub mphv_averaged: Option<f64>,
    pub fe_used: usize,
    pub archive_size: usize,
    pub wall_time_s: f64,
    pub config_hash: String,
    /// Version id of the reference front (suite) or world (cases).
    pub reference_version: String,
    pub trace: Vec<TracePoint>,
}

impl RunRecord {
    pub fn write(&self, path: &Path) -> Result<()> {
        let text =
            toml::to_string_pretty(self).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<RunRecord> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Parse {
            path: path.display().to_string(),
            msg: e.to_string(),
        })
    }
}

/// Write an objective set as text: a header with the party arities, then
/// one party-major row per point at full precision.
pub fn write_archive(path: &Path, arities: &[usize], points: &[PartyObjectives]) -> Result<()> {
    let mut out = String::new();
    let arity_list: Vec<String> = arities.iter().map(|a| a.to_string()).collect();
    out.push_str(&format!("# arities {}\n", arity_list.join(",")));
    out.push_str(&format!("# points {}\n", points.len()));
    for p in points {
        let row: Vec<String> = p
            .parties()
            .iter()
            .flat_map(|party| party.values().iter().map(|&v| fmt17(v)))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn read_archive(path: &Path) -> Result<Vec<PartyObjectives>> {
    let text = std::fs::read_to_string(path)?;
    let fail = |msg: String| Error::Parse {
        path: path.display().to_string(),
        msg,
    };
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| fail("empty archive file".into()))?;
    let arities: Vec<usize> = header
        .strip_prefix("# arities ")
        .ok_or_else(|| fail(format!("bad header `{header}`")))?
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| fail(format!("bad arity list: {e}")))?;
    let width: usize = arities.iter().sum();
    let mut points = Vec::new();
    for line in lines {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let values: Vec<f64> = line
            .split_whitespace()
            .map(|s| s.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| fail(format!("bad value: {e}")))?;
        if values.len() != width {
            return Err(fail(format!(
                "row has {} values, expected {width}",
                values.len()
            )));
        }
        let mut parties = Vec::with_capacity(arities.len());
        let mut offset = 0;
        for &a in &arities {
            parties.push(values[offset..offset + a].to_vec());
            offset += a;
        }
        points.push(PartyObjectives::from(parties));
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn temp_dir() -> std::path::PathBuf {
        let dir = std::env::temp_dir().join(format!("mpmo-records-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }

    #[test]
    fn record_round_trips_through_toml() {
        let record = RunRecord {
            problem: "E3".into(),
            dimension: 10,
            seed: 4,
            algorithm: "mpnds".into(),
            metric: "mpigd".into(),
            value: 0.012345678901234567,
            mphv_averaged: None,
            fe_used: 20_000,
            archive_size: 88,
            wall_time_s: 1.25,
            config_hash: "00aabbccddeeff11".into(),
            reference_version: "deadbeef".into(),
            trace: vec![
                TracePoint {
                    evaluations: 10_000,
                    value: 0.5,
                },
                TracePoint {
                    evaluations: 20_000,
                    value: 0.012345678901234567,
                },
            ],
        };
        let path = temp_dir().join("record.toml");
        record.write(&path).unwrap();
        let back = RunRecord::read(&path).unwrap();
        assert_eq!(record, back);
        assert_eq!(record.value.to_bits(), back.value.to_bits());
    }

    #[test]
    fn archive_round_trips_at_full_precision() {
        let points = vec![
            PartyObjectives::from(vec![vec![0.1, 0.2], vec![1.0 / 3.0, 2.0 / 7.0, 0.5]]),
            PartyObjectives::from(vec![vec![f64::MIN_POSITIVE, 1e300], vec![-0.0, 0.0, 9.9]]),
        ];
        let path = temp_dir().join("archive.txt");
        write_archive(&path, &[2, 3], &points).unwrap();
        let back = read_archive(&path).unwrap();
        assert_eq!(points, back);
    }

    #[test]
    fn archive_reader_rejects_ragged_rows() {
        let path = temp_dir().join("bad.txt");
        std::fs::write(&path, "# arities 2,2\n1 2 3\n").unwrap();
        assert!(read_archive(&path).is_err());
    }

    #[test]
    fn empty_archive_round_trips() {
        let path = temp_dir().join("empty.txt");
        write_archive(&path, &[2, 2], &[]).unwrap();
        assert_eq!(read_archive(&path).unwrap(), Vec::<PartyObjectives>::new());
    }
}
