//! The sufficient bigness test `sum h1_omega + s2/6 > 0` for a surface with
//! `A_n` singularities.
//!
//! Config file:
//!
//! ```json
//! {
//!   "name": "sextic with six nodes",
//!   "s2": "-4/5",
//!   "singularities": [{"type": "A", "n": 1, "count": 6}]
//! }
//! ```
//!
//! `s2` may be replaced by `c1sq` and `c2`; if all three are present they
//! must satisfy `s2 = c1sq - c2`. `type` defaults to `"A"`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::invariants::h1_omega;

pub const VERDICT_BIG: &str = "big (criterion satisfied)";
pub const VERDICT_INCONCLUSIVE: &str = "inconclusive";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityCount {
    pub n: i64,
    pub count: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceConfig {
    pub name: String,
    pub s2: Rational,
    pub singularities: Vec<SingularityCount>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSingularity {
    #[serde(rename = "type", default = "default_type")]
    kind: String,
    n: i64,
    count: i64,
}

fn default_type() -> String {
    "A".into()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    name: String,
    s2: Option<Rational>,
    c1sq: Option<Rational>,
    c2: Option<Rational>,
    #[serde(default)]
    singularities: Vec<RawSingularity>,
}

impl SurfaceConfig {
    pub fn new(
        name: impl Into<String>,
        s2: Rational,
        singularities: Vec<SingularityCount>,
    ) -> Result<Self> {
        for s in &singularities {
            if s.n < 1 {
                return Err(Error::Config(format!("singularity A_{} needs n >= 1", s.n)));
            }
            if s.count < 1 {
                return Err(Error::Config(format!(
                    "count {} for A_{} must be >= 1",
                    s.count, s.n
                )));
            }
        }
        Ok(SurfaceConfig {
            name: name.into(),
            s2,
            singularities,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let s2 = match (raw.s2, raw.c1sq, raw.c2) {
            (Some(s2), None, None) => s2,
            (None, Some(a), Some(b)) => a - b,
            (Some(s2), Some(a), Some(b)) => {
                if s2 != &a - &b {
                    return Err(Error::Config(format!(
                        "s2 = {s2} but c1sq - c2 = {}",
                        a - b
                    )));
                }
                s2
            }
            _ => return Err(Error::Config("give either s2 or both c1sq and c2".into())),
        };
        let mut singularities = Vec::with_capacity(raw.singularities.len());
        for s in raw.singularities {
            if !s.kind.eq_ignore_ascii_case("A") {
                return Err(Error::UnsupportedSingularity(format!("{}_{}", s.kind, s.n)));
            }
            singularities.push(SingularityCount {
                n: s.n,
                count: s.count,
            });
        }
        SurfaceConfig::new(raw.name, s2, singularities)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    /// `sum count * h1_omega(n)`.
    pub local: Rational,
    pub s2_over_6: Rational,
    pub t: Rational,
    pub verdict: String,
}

impl Verdict {
    pub fn is_big(&self) -> bool {
        self.t.is_positive()
    }
}

pub fn evaluate_criterion(cfg: &SurfaceConfig) -> Verdict {
    let local: Rational = cfg
        .singularities
        .iter()
        .map(|s| h1_omega(s.n) * s.count)
        .sum();
    let s2_over_6 = &cfg.s2 / 6;
    let t = &local + &s2_over_6;
    let verdict = if t.is_positive() {
        VERDICT_BIG
    } else {
        VERDICT_INCONCLUSIVE
    };
    Verdict {
        name: cfg.name.clone(),
        local,
        s2_over_6,
        t,
        verdict: verdict.to_string(),
    }
}
