//! The analytic multiparty suite E1-E11: each problem assigns one basic
//! function family to M parties, with a different time parameter per party.
//! Biparty problems E1-E6, triparty problems E7-E11.
//!
//! Reference fronts are built by sampling every party's analytic Pareto set,
//! evaluating the union under all parties, and keeping the
//! multiparty-nondominated survivors.

use std::f64::consts::PI;
use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bf::{BfContext, BfFamily};
use crate::dominance::mp_dominates;
use crate::error::{Error, Result};
use crate::types::{Bounds, DecisionVector, MpProblem, ObjectiveVector, PartyObjectives};
use crate::util::{fmt17, fnv1a64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteId {
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
    E8,
    E9,
    E10,
    E11,
}

impl SuiteId {
    pub fn all() -> [SuiteId; 11] {
        use SuiteId::*;
        [E1, E2, E3, E4, E5, E6, E7, E8, E9, E10, E11]
    }

    pub fn name(self) -> &'static str {
        use SuiteId::*;
        match self {
            E1 => "E1",
            E2 => "E2",
            E3 => "E3",
            E4 => "E4",
            E5 => "E5",
            E6 => "E6",
            E7 => "E7",
            E8 => "E8",
            E9 => "E9",
            E10 => "E10",
            E11 => "E11",
        }
    }

    /// (family, t) per party.
    pub fn parties(self) -> Vec<(BfFamily, f64)> {
        use BfFamily::*;
        use SuiteId::*;
        match self {
            E1 => vec![(Bf1, 1.0), (Bf1, 2.0)],
            E2 => vec![(Bf2, 0.0), (Bf2, 3.0)],
            E3 => vec![(Bf3, 0.0), (Bf3, PI / 2.0)],
            E4 => vec![(Bf4, 0.0), (Bf4, 1.0)],
            E5 => vec![(Bf5, 0.0), (Bf5, 1.5)],
            E6 => vec![(Bf6, 0.0), (Bf6, 1.0)],
            E7 => vec![(Bf1, 0.0), (Bf1, 1.0), (Bf1, 2.0)],
            E8 => vec![(Bf2, 0.0), (Bf2, 1.0), (Bf2, 3.0)],
            E9 => vec![(Bf4, 0.0), (Bf4, 0.5), (Bf4, 1.0)],
            E10 => vec![(Bf5, 0.0), (Bf5, 1.0), (Bf5, 1.5)],
            E11 => vec![(Bf6, 0.0), (Bf6, 1.0), (Bf6, 1.5)],
        }
    }

    pub fn party_count(self) -> usize {
        self.parties().len()
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::all()
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownProblem(s.to_string()))
    }
}

/// One suite problem instance at a fixed decision-space dimension.
pub struct SuiteProblem {
    id: SuiteId,
    contexts: Vec<BfContext>,
    arities: Vec<usize>,
    bounds: Bounds,
    dimension: usize,
}

impl SuiteProblem {
    pub fn new(id: SuiteId, n: usize) -> Result<Self> {
        let parties = id.parties();
        // All parties share one family, hence one bound box.
        let bounds = parties[0].0.bounds(n)?;
        let contexts: Vec<BfContext> = parties
            .iter()
            .map(|&(family, t)| BfContext::new(family, t))
            .collect();
        let arities = parties.iter().map(|&(f, _)| f.objective_count()).collect();
        Ok(Self {
            id,
            contexts,
            arities,
            bounds,
            dimension: n,
        })
    }

    pub fn suite_id(&self) -> SuiteId {
        self.id
    }

    pub fn contexts(&self) -> &[BfContext] {
        &self.contexts
    }
}

impl MpProblem for SuiteProblem {
    fn id(&self) -> &str {
        self.id.name()
    }

    fn dimension(&self) -> usize {
        self.dimension
    }

    fn party_count(&self) -> usize {
        self.contexts.len()
    }

    fn arities(&self) -> &[usize] {
        &self.arities
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &DecisionVector) -> PartyObjectives {
        PartyObjectives::new(
            self.contexts
                .iter()
                .map(|ctx| ctx.evaluate(x))
                .collect::<Vec<ObjectiveVector>>(),
        )
    }

    /// Union of every party's Pareto-set sample (`count` points per party),
    /// with exact duplicates collapsed.
    fn pareto_set_sample(&self, count: usize, seed: u64) -> Option<Vec<DecisionVector>> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(count * self.contexts.len());
        for ctx in &self.contexts {
            for p in ctx
                .ps_sample(count, seed, self.dimension)
                .expect("dimension validated at construction")
            {
                let key: Vec<u64> = p.values().iter().map(|v| v.to_bits()).collect();
                if seen.insert(key) {
                    out.push(p);
                }
            }
        }
        Some(out)
    }
}

/// A versioned ground-truth set for MPIGD: the multiparty-nondominated
/// survivors of the per-party Pareto-set samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceFront {
    pub problem_id: String,
    pub arities: Vec<usize>,
    pub dimension: usize,
    pub resolution: usize,
    pub seed: u64,
    pub points: Vec<PartyObjectives>,
}

impl ReferenceFront {
    /// Content-derived id; changes whenever any stored byte changes.
    pub fn version_id(&self) -> String {
        format!("{:016x}", fnv1a64(self.to_text().as_bytes()))
    }

    pub fn standard_filename(&self) -> String {
        format!(
            "{}_d{}_r{}_s{}.txt",
            self.problem_id, self.dimension, self.resolution, self.seed
        )
    }

    fn to_text(&self) -> String {
        let mut s = String::new();
        let arities: Vec<String> = self.arities.iter().map(|a| a.to_string()).collect();
        s.push_str(&format!(
            "{} {} {}\n",
            self.problem_id,
            self.arities.len(),
            arities.join(",")
        ));
        s.push_str(&format!(
            "# n={} resolution={} seed={}\n",
            self.dimension, self.resolution, self.seed
        ));
        for p in &self.points {
            let row: Vec<String> = p.flatten().iter().map(|&v| fmt17(v)).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.to_text().as_bytes())?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let fail = |msg: &str| Error::Parse {
            path: path.display().to_string(),
            msg: msg.to_string(),
        };
        let reader = BufReader::new(std::fs::File::open(path)?);
        let mut lines = reader.lines();

        let header = lines.next().ok_or_else(|| fail("empty file"))??;
        let mut head = header.split_whitespace();
        let problem_id = head.next().ok_or_else(|| fail("missing id"))?.to_string();
        let m: usize = head
            .next()
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| fail("missing party count"))?;
        let arities: Vec<usize> = head
            .next()
            .ok_or_else(|| fail("missing arities"))?
            .split(',')
            .map(|v| v.parse().map_err(|_| fail("bad arity")))
            .collect::<std::result::Result<_, _>>()?;
        if arities.len() != m {
            return Err(fail("party count does not match arities"));
        }

        let meta = lines.next().ok_or_else(|| fail("missing metadata line"))??;
        let mut dimension = 0usize;
        let mut resolution = 0usize;
        let mut seed = 0u64;
        for kv in meta.trim_start_matches('#').split_whitespace() {
            let (k, v) = kv.split_once('=').ok_or_else(|| fail("bad metadata"))?;
            match k {
                "n" => dimension = v.parse().map_err(|_| fail("bad n"))?,
                "resolution" => resolution = v.parse().map_err(|_| fail("bad resolution"))?,
                "seed" => seed = v.parse().map_err(|_| fail("bad seed"))?,
                _ => return Err(fail("unknown metadata key")),
            }
        }

        let width: usize = arities.iter().sum();
        let mut points = Vec::new();
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let vals: Vec<f64> = line
                .split_whitespace()
                .map(|v| v.parse().map_err(|_| fail("bad value")))
                .collect::<std::result::Result<_, _>>()?;
            if vals.len() != width {
                return Err(fail("row width does not match arities"));
            }
            let mut parties = Vec::with_capacity(m);
            let mut offset = 0;
            for &a in &arities {
                parties.push(vals[offset..offset + a].to_vec());
                offset += a;
            }
            points.push(PartyObjectives::from(parties));
        }
        Ok(Self {
            problem_id,
            arities,
            dimension,
            resolution,
            seed,
            points,
        })
    }
}

/// Build the reference front for one suite problem: sample `resolution`
/// Pareto-set points per party, evaluate the union under every party, and
/// keep the multiparty-nondominated subset.
pub fn build_reference_front(
    id: SuiteId,
    n: usize,
    resolution: usize,
    seed: u64,
) -> Result<ReferenceFront> {
    let problem = SuiteProblem::new(id, n)?;
    let candidates = problem
        .pareto_set_sample(resolution, seed)
        .expect("suite problems always sample");
    let objs: Vec<PartyObjectives> = candidates.iter().map(|x| problem.evaluate(x)).collect();

    // Definitional multiparty filter, parallelized over candidates; the
    // survivor set is order-stable and identical to the serial scan.
    let keep: Vec<usize> = (0..objs.len())
        .into_par_iter()
        .filter(|&i| !objs.iter().any(|q| mp_dominates(q, &objs[i])))
        .collect();

    Ok(ReferenceFront {
        problem_id: id.name().to_string(),
        arities: problem.arities().to_vec(),
        dimension: n,
        resolution,
        seed,
        points: keep.into_iter().map(|i| objs[i].clone()).collect(),
    })
}
