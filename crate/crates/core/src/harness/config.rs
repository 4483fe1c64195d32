//! TOML experiment configuration.
//!
//! ```toml
//! preset = "courant"            # or: vectors = [[1, 0], [0, 1], [1, 1]]
//! p = 2.0
//! ladder = [0.25, 0.125, 0.0625]
//! beta = [1, 1]
//!
//! [function]
//! family = "gaussian"           # or "bump"
//! scale = 1.0                   # gaussian width; bump uses `radius`
//!
//! [tolerances]
//! rel_err = 0.05
//! rate = 0.05
//! ```

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::asymptotics::{dyadic_ladder, OuterRule};
use crate::error::{Error, Result};
use crate::functions::{Separable, TestFunction};
use crate::lattice::{DirectionSet, LatticeVector, MultiIndex};

use super::presets::preset;

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Preset name; ignored when `vectors` is given.
    pub preset: Option<String>,
    /// Explicit direction vectors, one per row.
    pub vectors: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub function: FunctionConfig,
    pub p: Option<f64>,
    /// Scales for `converge`.
    pub ladder: Option<Vec<f64>>,
    /// Scale for `project`.
    pub h: Option<f64>,
    /// Multi-index for `lbeta`; every `|β| = ϱ+1` when absent.
    pub beta: Option<Vec<u32>>,
    /// Lattice-series radius for `lbeta`.
    pub series_radius: Option<usize>,
    /// Sample points per axis for `lbeta`.
    pub grid: Option<usize>,
    /// Window padding in cells.
    pub padding: Option<i64>,
    /// Output path; `--out` takes precedence.
    pub out: Option<String>,
    pub outer_cells: Option<usize>,
    pub outer_order: Option<usize>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub check: CheckConfig,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FunctionConfig {
    #[serde(default = "default_family")]
    pub family: String,
    pub scale: Option<f64>,
    pub radius: Option<f64>,
}

fn default_family() -> String {
    "gaussian".into()
}

impl Default for FunctionConfig {
    fn default() -> Self {
        Self {
            family: default_family(),
            scale: None,
            radius: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_band")]
    pub rel_err: f64,
    #[serde(default = "default_band")]
    pub rate: f64,
}

fn default_band() -> f64 {
    0.05
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rel_err: default_band(),
            rate: default_band(),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CheckConfig {
    /// Shifts one Gram entry pair `a(±e₁)` by this amount before the orthogonality check.
    pub perturb_gram: Option<f64>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// The direction set, validated; defaults to `courant`.
    pub fn direction_set(&self) -> Result<DirectionSet> {
        match (&self.vectors, &self.preset) {
            (Some(rows), _) => DirectionSet::new(rows.iter().map(|r| LatticeVector::new(r.clone())).collect()),
            (None, Some(name)) => preset(name),
            (None, None) => preset("courant"),
        }
    }

    pub fn set_label(&self) -> String {
        match (&self.vectors, &self.preset) {
            (Some(rows), _) => format!("{rows:?}").replace(' ', ""),
            (None, Some(name)) => name.clone(),
            (None, None) => "courant".into(),
        }
    }

    pub fn p(&self) -> Result<f64> {
        let p = self.p.unwrap_or(2.0);
        if p >= 1.0 && p.is_finite() {
            Ok(p)
        } else {
            Err(Error::Config(format!("p = {p} must satisfy 1 ≤ p < ∞")))
        }
    }

    pub fn test_function(&self, d: usize) -> Result<Arc<dyn TestFunction>> {
        let f = &self.function;
        match f.family.as_str() {
            "gaussian" => {
                let s = f.scale.unwrap_or(1.0);
                if !(s > 0.0) {
                    return Err(Error::Config(format!("gaussian scale {s} must be positive")));
                }
                Ok(Arc::new(Separable::gaussian(d, s)))
            }
            "bump" => {
                let r = f.radius.unwrap_or(1.0);
                if !(r > 0.0) {
                    return Err(Error::Config(format!("bump radius {r} must be positive")));
                }
                Ok(Arc::new(Separable::bump(d, r)))
            }
            other => Err(Error::Config(format!("unknown function family {other:?} (gaussian, bump)"))),
        }
    }

    /// The configured ladder, or `2^-2 … 2^-6` in one dimension and `2^-2 … 2^-5` in two.
    pub fn ladder(&self, d: usize) -> Result<Vec<f64>> {
        match &self.ladder {
            Some(l) if l.is_empty() => Err(Error::Config("empty h ladder".into())),
            Some(l) => {
                if l.iter().any(|h| !(*h > 0.0 && h.is_finite())) {
                    return Err(Error::Config("ladder entries must be positive".into()));
                }
                Ok(l.clone())
            }
            None => Ok(if d == 1 { dyadic_ladder(2, 6) } else { dyadic_ladder(2, 5) }),
        }
    }

    pub fn beta(&self, d: usize) -> Result<Option<MultiIndex>> {
        match &self.beta {
            None => Ok(None),
            Some(b) if b.len() == d => Ok(Some(MultiIndex::new(b.clone()))),
            Some(b) => Err(Error::Config(format!("beta has {} entries, dimension is {d}", b.len()))),
        }
    }

    pub fn outer_rule(&self) -> OuterRule {
        let def = OuterRule::default();
        OuterRule {
            cells: self.outer_cells.unwrap_or(def.cells),
            order: self.outer_order.unwrap_or(def.order),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let cfg = ExperimentConfig::from_toml(
            r#"
preset = "courant"
p = 2.0
ladder = [0.25, 0.125, 0.0625]
beta = [1, 1]

[function]
family = "gaussian"
scale = 1.0

[tolerances]
rel_err = 0.05
rate = 0.05
"#,
        )
        .unwrap();
        assert_eq!(cfg.direction_set().unwrap().rho(), 1);
        assert_eq!(cfg.ladder(2).unwrap().len(), 3);
        assert_eq!(cfg.beta(2).unwrap(), Some(MultiIndex::new([1, 1])));
    }

    #[test]
    fn explicit_vectors_are_validated() {
        let cfg = ExperimentConfig::from_toml("vectors = [[1, 0], [0, 0]]").unwrap();
        assert!(cfg.direction_set().is_err());
        let cfg = ExperimentConfig::from_toml("vectors = [[1, 0], [2, 0]]").unwrap();
        assert!(cfg.direction_set().is_err());
        let cfg = ExperimentConfig::from_toml("vectors = [[1, 0], [0, 1], [1, 1]]").unwrap();
        assert!(cfg.direction_set().unwrap().is_unimodular());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ExperimentConfig::from_toml("colour = 3").is_err());
        let cfg = ExperimentConfig::from_toml("ladder = []").unwrap();
        assert!(cfg.ladder(1).is_err());
        let cfg = ExperimentConfig::from_toml("p = 0.5").unwrap();
        assert!(cfg.p().is_err());
        let cfg = ExperimentConfig::from_toml("[function]\nfamily = \"sinc\"").unwrap();
        assert!(cfg.test_function(1).is_err());
    }
}
