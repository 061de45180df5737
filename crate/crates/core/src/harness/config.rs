//! Experiment configuration.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::DistributionSpec;

/// Instance family of an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    BasicCube,
    SignCube,
    Restricted,
    TreeGadget,
    Knapsack,
    Wendel,
    Zonotope,
    Projection,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::BasicCube,
        Family::SignCube,
        Family::Restricted,
        Family::TreeGadget,
        Family::Knapsack,
        Family::Wendel,
        Family::Zonotope,
        Family::Projection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::BasicCube => "basic-cube",
            Family::SignCube => "sign-cube",
            Family::Restricted => "restricted",
            Family::TreeGadget => "tree-gadget",
            Family::Knapsack => "knapsack",
            Family::Wendel => "wendel",
            Family::Zonotope => "zonotope",
            Family::Projection => "projection",
        }
    }

    /// Families whose profits come from a fixed construction rather than
    /// the `dist` field.
    pub fn has_fixed_distribution(self) -> bool {
        matches!(self, Family::TreeGadget | Family::Knapsack | Family::Projection)
    }

    pub fn default_distribution(self) -> DistributionSpec {
        match self {
            Family::Wendel | Family::Zonotope | Family::Projection => {
                DistributionSpec::Gaussian { sigma: 1.0 }
            }
            _ => DistributionSpec::SymmetricUniform { halfwidth: 1.0 },
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
                Error::Parse(format!("unknown family {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format {s:?}; expected csv or json"))),
        }
    }
}

/// Point set projected by the `projection` family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectionSet {
    /// The first `k` points around the origin of `{0,1}^n`.
    HammingBall,
    /// All of `{0,1}^n`.
    Cube,
    /// `k` uniformly chosen points, fixed across trials.
    RandomSubset,
}

impl fmt::Display for ProjectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProjectionSet::HammingBall => "hammingball",
            ProjectionSet::Cube => "cube",
            ProjectionSet::RandomSubset => "randomsubset",
        })
    }
}

impl FromStr for ProjectionSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hammingball" => Ok(ProjectionSet::HammingBall),
            "cube" => Ok(ProjectionSet::Cube),
            "randomsubset" => Ok(ProjectionSet::RandomSubset),
            _ => Err(Error::Parse(format!(
                "unknown projection set {s:?}; expected hammingball, cube or randomsubset"
            ))),
        }
    }
}

fn is_false(b: &bool) -> bool {
    !*b
}

fn is_zero(v: &u64) -> bool {
    *v == 0
}

/// One experiment. For `tree-gadget`, `n` is the vertex count `m`; for
/// `restricted` and `projection`, `k` is the feasible-set size parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub family: Family,
    pub n: usize,
    pub d: usize,
    #[serde(default)]
    pub k: Option<usize>,
    pub trials: u64,
    pub seed: u64,
    #[serde(default)]
    pub dist: Option<String>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<ProjectionSet>,
    /// Index of the random subset for `set = randomsubset`.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub subset: u64,
    /// Knapsack runs also check the cardinality-restricted embedding.
    #[serde(default, skip_serializing_if = "is_false")]
    pub verify_embedding: bool,
    /// Record wall-clock milliseconds per trial. Off by default so that
    /// output files are byte-identical across runs.
    #[serde(default, skip_serializing_if = "is_false")]
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(family: Family, n: usize, d: usize, trials: u64, seed: u64) -> Self {
        Self {
            family,
            n,
            d,
            k: None,
            trials,
            seed,
            dist: None,
            out: None,
            format: Format::Csv,
            set: None,
            subset: 0,
            verify_embedding: false,
            timing: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("experiment config: {e}")))
    }

    /// Entry distribution, falling back to the family default.
    pub fn distribution(&self) -> Result<DistributionSpec> {
        match &self.dist {
            Some(s) => s.parse(),
            None => Ok(self.family.default_distribution()),
        }
    }

    /// `k` where the family uses it; `floor(n/2)` when unset.
    pub fn k_or_half(&self) -> usize {
        self.k.unwrap_or(self.n / 2)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        if self.trials == 0 {
            return bad("trials must be >= 1".into());
        }
        if self.n == 0 || self.d == 0 {
            return bad(format!("need n >= 1 and d >= 1, got n={}, d={}", self.n, self.d));
        }
        if self.dist.is_some() && self.family.has_fixed_distribution() {
            return bad(format!("family {} does not take a distribution", self.family));
        }
        self.distribution()?;
        let cube_limit = 26;
        match self.family {
            Family::BasicCube | Family::SignCube | Family::Zonotope if self.n > cube_limit => {
                bad(format!("n={} exceeds the enumeration limit {cube_limit}", self.n))
            }
            Family::Restricted if self.k_or_half() > self.n => {
                bad(format!("k={} exceeds n={}", self.k_or_half(), self.n))
            }
            Family::TreeGadget if self.n < 3 => bad("tree gadget needs m >= 3".into()),
            Family::Knapsack if self.n < 2 => bad("knapsack needs n >= 2".into()),
            Family::Projection => {
                let set = self.set.ok_or_else(|| {
                    Error::InvalidInput("projection needs a point set".into())
                })?;
                if self.d > self.n {
                    return bad(format!("projection dimension {} exceeds n={}", self.d, self.n));
                }
                if set != ProjectionSet::Cube && self.k.is_none() {
                    return bad(format!("projection set {set} needs a size k"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}
