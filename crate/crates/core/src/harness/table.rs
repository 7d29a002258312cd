//! Competition statistics table: three fixed blocks (E1-E6 over d in
//! {10,30,50}, E7-E11 over the same, C1-C6 at d=88) with five statistic
//! rows per dimension section. Emitted as aligned text, CSV (full
//! precision, losslessly parseable), and a LaTeX grid.

use crate::error::{Error, Result};
use crate::harness::records::RunRecord;
use crate::harness::stats::{aggregate_values, CellStats};
use crate::util::fmt17;

pub const STAT_NAMES: [&str; 5] = ["Best", "Median", "Worst", "Mean", "StDev"];

#[derive(Debug, Clone, PartialEq)]
pub struct TableSection {
    pub dimension: usize,
    /// One cell per problem column; `None` renders as an em dash.
    pub cells: Vec<Option<CellStats>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableBlock {
    pub title: String,
    pub metric: String,
    pub problems: Vec<String>,
    pub sections: Vec<TableSection>,
}

impl TableBlock {
    pub fn maximize(&self) -> bool {
        self.metric == "mphv"
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatTable {
    pub algorithm: String,
    pub blocks: Vec<TableBlock>,
}

fn block_layouts() -> [(&'static str, &'static str, Vec<&'static str>, Vec<usize>); 3] {
    [
        (
            "E1-E6",
            "mpigd",
            vec!["E1", "E2", "E3", "E4", "E5", "E6"],
            vec![10, 30, 50],
        ),
        (
            "E7-E11",
            "mpigd",
            vec!["E7", "E8", "E9", "E10", "E11"],
            vec![10, 30, 50],
        ),
        (
            "C1-C6",
            "mphv",
            vec!["C1", "C2", "C3", "C4", "C5", "C6"],
            vec![88],
        ),
    ]
}

/// Aggregate one algorithm's records into the fixed three-block layout.
/// A block's metric follows its records when present, otherwise the default
/// pairing.
pub fn build_table(records: &[RunRecord], algorithm: &str) -> StatTable {
    let mine: Vec<&RunRecord> = records
        .iter()
        .filter(|r| r.algorithm == algorithm)
        .collect();
    let blocks = block_layouts()
        .into_iter()
        .map(|(title, default_metric, problems, dims)| {
            let metric = mine
                .iter()
                .find(|r| problems.contains(&r.problem.as_str()))
                .map(|r| r.metric.clone())
                .unwrap_or_else(|| default_metric.to_string());
            let maximize = metric == "mphv";
            let sections = dims
                .iter()
                .map(|&dimension| {
                    let cells = problems
                        .iter()
                        .map(|&p| {
                            let values: Vec<f64> = mine
                                .iter()
                                .filter(|r| r.problem == p && r.dimension == dimension)
                                .map(|r| r.value)
                                .collect();
                            if values.is_empty() {
                                None
                            } else {
                                Some(aggregate_values(&values, maximize))
                            }
                        })
                        .collect();
                    TableSection { dimension, cells }
                })
                .collect();
            TableBlock {
                title: title.to_string(),
                metric,
                problems: problems.iter().map(|s| s.to_string()).collect(),
                sections,
            }
        })
        .collect();
    StatTable {
        algorithm: algorithm.to_string(),
        blocks,
    }
}

fn stat_value(cell: &CellStats, stat: &str) -> f64 {
    match stat {
        "Best" => cell.best,
        "Median" => cell.median,
        "Worst" => cell.worst,
        "Mean" => cell.mean,
        "StDev" => cell.stdev,
        other => unreachable!("unknown statistic {other}"),
    }
}

fn sig6(v: f64) -> String {
    format!("{v:.5e}")
}

pub fn emit_text(table: &StatTable) -> String {
    let mut out = format!("Results: {}\n", table.algorithm);
    for block in &table.blocks {
        let direction = if block.maximize() {
            "higher is better"
        } else {
            "lower is better"
        };
        out.push_str(&format!(
            "\n== {} ({}, {}) ==\n",
            block.title, block.metric, direction
        ));
        let width = 14usize;
        out.push_str(&format!("{:10}", ""));
        for p in &block.problems {
            out.push_str(&format!("{p:>width$}"));
        }
        out.push('\n');
        for section in &block.sections {
            out.push_str(&format!("d={}\n", section.dimension));
            for stat in STAT_NAMES {
                out.push_str(&format!("  {stat:<8}"));
                for cell in &section.cells {
                    let text = match cell {
                        Some(c) => sig6(stat_value(c, stat)),
                        None => "\u{2014}".to_string(),
                    };
                    out.push_str(&format!("{text:>width$}"));
                }
                out.push('\n');
            }
        }
    }
    out
}

pub fn emit_csv(table: &StatTable) -> String {
    let mut out = String::from("algorithm,block,metric,problem,dimension,stat,value\n");
    for block in &table.blocks {
        for section in &block.sections {
            for stat in STAT_NAMES {
                for (p, cell) in block.problems.iter().zip(&section.cells) {
                    let value = match cell {
                        Some(c) => fmt17(stat_value(c, stat)),
                        None => String::new(),
                    };
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        table.algorithm, block.title, block.metric, p, section.dimension, stat, value
                    ));
                }
            }
        }
    }
    out
}

/// Rebuild a table from its own CSV; `parse_csv(emit_csv(t)) == t`.
pub fn parse_csv(text: &str) -> Result<StatTable> {
    let fail = |msg: String| Error::Parse {
        path: "<csv>".into(),
        msg,
    };
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| fail("empty csv".into()))?;
    if header != "algorithm,block,metric,problem,dimension,stat,value" {
        return Err(fail(format!("unexpected header `{header}`")));
    }
    let mut algorithm: Option<String> = None;
    // (title, metric, problems, sections as (dim, per-problem [Option<f64>;5]))
    type RawSection = (usize, Vec<[Option<f64>; 5]>);
    let mut blocks: Vec<(String, String, Vec<String>, Vec<RawSection>)> = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(fail(format!("line {}: expected 7 fields", lineno + 2)));
        }
        let (algo, title, metric, problem, dim_s, stat, value_s) = (
            fields[0], fields[1], fields[2], fields[3], fields[4], fields[5], fields[6],
        );
        match &algorithm {
            None => algorithm = Some(algo.to_string()),
            Some(a) if a != algo => {
                return Err(fail(format!("mixed algorithms `{a}` and `{algo}`")));
            }
            _ => {}
        }
        let dimension: usize = dim_s
            .parse()
            .map_err(|e| fail(format!("line {}: bad dimension: {e}", lineno + 2)))?;
        let stat_idx = STAT_NAMES
            .iter()
            .position(|s| *s == stat)
            .ok_or_else(|| fail(format!("line {}: unknown stat `{stat}`", lineno + 2)))?;
        let value = if value_s.is_empty() {
            None
        } else {
            Some(
                value_s
                    .parse::<f64>()
                    .map_err(|e| fail(format!("line {}: bad value: {e}", lineno + 2)))?,
            )
        };

        let block = match blocks.iter_mut().find(|(t, ..)| t == title) {
            Some(b) => b,
            None => {
                blocks.push((title.to_string(), metric.to_string(), Vec::new(), Vec::new()));
                blocks.last_mut().expect("just pushed")
            }
        };
        let col = match block.2.iter().position(|p| p == problem) {
            Some(i) => i,
            None => {
                block.2.push(problem.to_string());
                block.2.len() - 1
            }
        };
        let section = match block.3.iter_mut().find(|(d, _)| *d == dimension) {
            Some(s) => s,
            None => {
                block.3.push((dimension, Vec::new()));
                block.3.last_mut().expect("just pushed")
            }
        };
        if section.1.len() <= col {
            section.1.resize(col + 1, [None; 5]);
        }
        section.1[col][stat_idx] = value;
    }

    let blocks = blocks
        .into_iter()
        .map(|(title, metric, problems, raw_sections)| {
            let sections = raw_sections
                .into_iter()
                .map(|(dimension, raw_cells)| {
                    let cells = raw_cells
                        .into_iter()
                        .map(|slots| match slots {
                            [Some(best), Some(median), Some(worst), Some(mean), Some(stdev)] => {
                                Ok(Some(CellStats {
                                    best,
                                    median,
                                    worst,
                                    mean,
                                    stdev,
                                }))
                            }
                            [None, None, None, None, None] => Ok(None),
                            _ => Err(fail(format!(
                                "incomplete statistics for a cell in `{title}` d={dimension}"
                            ))),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(TableSection { dimension, cells })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(TableBlock {
                title,
                metric,
                problems,
                sections,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StatTable {
        algorithm: algorithm.ok_or_else(|| fail("csv has no data rows".into()))?,
        blocks,
    })
}

pub fn emit_latex(table: &StatTable) -> String {
    let mut out = format!("% results for {}\n", table.algorithm);
    for block in &table.blocks {
        let direction = if block.maximize() {
            "higher is better"
        } else {
            "lower is better"
        };
        out.push_str(&format!(
            "% block {} ({}, {})\n",
            block.title, block.metric, direction
        ));
        let cols = "r".repeat(block.problems.len());
        out.push_str(&format!("\\begin{{tabular}}{{ll{cols}}}\n\\hline\n"));
        out.push_str(" & ");
        for p in &block.problems {
            out.push_str(&format!("& {p} "));
        }
        out.push_str("\\\\\n\\hline\n");
        for section in &block.sections {
            for (row, stat) in STAT_NAMES.iter().enumerate() {
                let label = if row == 0 {
                    format!("d={}", section.dimension)
                } else {
                    String::new()
                };
                out.push_str(&format!("{label} & {stat} "));
                for cell in &section.cells {
                    let text = match cell {
                        Some(c) => sig6(stat_value(c, stat)),
                        None => "--".to_string(),
                    };
                    out.push_str(&format!("& {text} "));
                }
                out.push_str("\\\\\n");
            }
            out.push_str("\\hline\n");
        }
        out.push_str("\\end{tabular}\n\n");
    }
    out
}
