//! Shared containers for decision vectors, objective vectors and multiparty
//! problems. Every party sees the same decision space; each party owns its own
//! (possibly differently sized) objective vector.

use crate::error::{Error, Result};

/// A point in decision space. All coordinates are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionVector {
    values: Vec<f64>,
}

impl DecisionVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("decision vector"));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl AsRef<[f64]> for DecisionVector {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// Box constraints with strictly ordered finite endpoints per coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::InvalidBounds(format!(
                "lower has {} coordinates, upper has {}",
                lower.len(),
                upper.len()
            )));
        }
        if lower.is_empty() {
            return Err(Error::InvalidBounds("empty bounds".into()));
        }
        for (i, (&l, &u)) in lower.iter().zip(&upper).enumerate() {
            if !l.is_finite() || !u.is_finite() {
                return Err(Error::InvalidBounds(format!("non-finite endpoint at {i}")));
            }
            if l >= u {
                return Err(Error::InvalidBounds(format!(
                    "lower {l} must be strictly below upper {u} at coordinate {i}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&l, &u))| v >= l && v <= u)
    }

    pub fn clamp(&self, x: &mut [f64]) {
        assert_eq!(x.len(), self.dimension(), "dimension mismatch in clamp");
        for (v, (&l, &u)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            *v = v.clamp(l, u);
        }
    }

    pub fn sample_uniform<R: rand::Rng>(&self, rng: &mut R) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&l, &u)| l + rng.gen::<f64>() * (u - l))
            .collect()
    }
}

/// One party's objective values at a single solution (minimization).
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveVector {
    values: Vec<f64>,
}

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Self {
        assert!(!values.is_empty(), "objective vector must be non-empty");
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl From<Vec<f64>> for ObjectiveVector {
    fn from(values: Vec<f64>) -> Self {
        Self::new(values)
    }
}

impl AsRef<[f64]> for ObjectiveVector {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// All parties' objective vectors at a single solution, indexed by party.
/// Parties may have different objective counts (a ragged layout).
#[derive(Debug, Clone, PartialEq)]
pub struct PartyObjectives {
    parties: Vec<ObjectiveVector>,
}

impl PartyObjectives {
    pub fn new(parties: Vec<ObjectiveVector>) -> Self {
        assert!(!parties.is_empty(), "at least one party required");
        Self { parties }
    }

    pub fn party(&self, j: usize) -> &ObjectiveVector {
        &self.parties[j]
    }

    pub fn parties(&self) -> &[ObjectiveVector] {
        &self.parties
    }

    pub fn party_count(&self) -> usize {
        self.parties.len()
    }

    pub fn arities(&self) -> Vec<usize> {
        self.parties.iter().map(|p| p.len()).collect()
    }

    pub fn same_structure(&self, other: &Self) -> bool {
        self.party_count() == other.party_count()
            && self
                .parties
                .iter()
                .zip(&other.parties)
                .all(|(a, b)| a.len() == b.len())
    }

    /// All objective values concatenated party-major.
    pub fn flatten(&self) -> Vec<f64> {
        self.parties
            .iter()
            .flat_map(|p| p.values().iter().copied())
            .collect()
    }
}

impl From<Vec<Vec<f64>>> for PartyObjectives {
    fn from(parties: Vec<Vec<f64>>) -> Self {
        Self::new(parties.into_iter().map(ObjectiveVector::from).collect())
    }
}

/// A multiparty multiobjective problem: M parties, each owning a full
/// minimization MOP over one shared box-bounded decision space.
pub trait MpProblem: Send + Sync {
    fn id(&self) -> &str;

    /// Decision-space dimension.
    fn dimension(&self) -> usize;

    fn party_count(&self) -> usize;

    /// Objective count per party.
    fn arities(&self) -> &[usize];

    fn bounds(&self) -> &Bounds;

    /// Pure: identical inputs yield identical outputs.
    fn evaluate(&self, x: &DecisionVector) -> PartyObjectives;

    /// Constraint violation magnitudes (all >= 0, 0 = satisfied), or `None`
    /// for unconstrained problems. Total violation is the sum.
    fn constraint_violations(&self, _x: &DecisionVector) -> Option<Vec<f64>> {
        None
    }

    /// Candidate Pareto-set sample: points that are optimal for at least one
    /// party (their distance term attains its minimum for that party), or
    /// `None` when no analytic description is available.
    fn pareto_set_sample(&self, _count: usize, _seed: u64) -> Option<Vec<DecisionVector>> {
        None
    }

    /// Whether `repair` does anything for this problem.
    fn has_repair(&self) -> bool {
        false
    }

    /// One deterministic repair move nudging `x` toward feasibility, in
    /// place and within bounds; returns false when there is nothing left to
    /// repair. Solvers may call it repeatedly. Default: no-op.
    fn repair(&self, _x: &mut [f64]) -> bool {
        false
    }
}
