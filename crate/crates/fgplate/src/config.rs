//! Analysis configuration: a single JSON document, schema-validated, with
//! dotted-path overrides from the command line.
//!
//! Physics parameters live only in the config; the CLI flags select the
//! config path, subcommand, output directory and overrides. Several
//! fields accept either a scalar or an array so one config can sweep a
//! whole table (rows are produced per model × a/h × n combination).

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::element::{LoadShape, LoadSurface, ShearIntegration};
use crate::error::{Error, Result};
use crate::material::{GradingType, HomogenizationScheme, PhaseMaterial, SandwichLayup};
use crate::model::{ModelKind, PlateModel, ShearCorrection};
use crate::report::{EvaluationPoints, E_REF};
use crate::rigidity::DEFAULT_THICKNESS_POINTS;
use crate::stress::ProfileQuantity;

/// Scalar-or-array convenience for sweep fields.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalysisKind {
    Static,
    Modal,
    Convergence,
    Profile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayupConfig {
    pub grading: GradingType,
    /// Layer thickness ratio label, e.g. "1-2-1".
    #[serde(default = "default_ratio")]
    pub ratio: String,
    /// Gradient index n (sweepable).
    pub n: OneOrMany<f64>,
    /// Optional bounds on the graded volume-fraction profile.
    #[serde(default)]
    pub profile_min: Option<f64>,
    #[serde(default)]
    pub profile_max: Option<f64>,
}

fn default_ratio() -> String {
    "1-1-1".into()
}

/// Either a named preset or explicit phase properties.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PhaseConfig {
    Preset(String),
    Explicit(PhaseMaterial),
}

impl PhaseConfig {
    pub fn resolve(&self) -> Result<PhaseMaterial> {
        match self {
            PhaseConfig::Explicit(m) => {
                m.validate()?;
                Ok(*m)
            }
            PhaseConfig::Preset(name) => match name.as_str() {
                "alumina" => Ok(PhaseMaterial::alumina()),
                "aluminum" => Ok(PhaseMaterial::aluminum()),
                "sic" | "silicon_carbide" => Ok(PhaseMaterial::silicon_carbide()),
                other => Err(Error::Config(format!(
                    "unknown material preset '{other}' (expected alumina, aluminum or sic)"
                ))),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialsConfig {
    pub ceramic: PhaseConfig,
    pub metal: PhaseConfig,
    /// Override of the ceramic expansion coefficient (the benchmark's
    /// alumina value is not published; thermal runs record what was used).
    #[serde(default)]
    pub ceramic_thermal_expansion: Option<f64>,
}

impl Default for MaterialsConfig {
    fn default() -> Self {
        MaterialsConfig {
            ceramic: PhaseConfig::Preset("alumina".into()),
            metal: PhaseConfig::Preset("aluminum".into()),
            ceramic_thermal_expansion: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoadConfig {
    #[serde(default = "default_load_kind")]
    pub kind: crate::report::Loading,
    #[serde(default = "one")]
    pub q0: f64,
    #[serde(default = "one")]
    pub t0: f64,
    #[serde(default)]
    pub shape: LoadShape,
    #[serde(default)]
    pub surface: LoadSurface,
}

fn default_load_kind() -> crate::report::Loading {
    crate::report::Loading::Mechanical
}
fn one() -> f64 {
    1.0
}

impl Default for LoadConfig {
    fn default() -> Self {
        LoadConfig {
            kind: crate::report::Loading::Mechanical,
            q0: 1.0,
            t0: 1.0,
            shape: LoadShape::Sinusoidal,
            surface: LoadSurface::Top,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshConfig {
    #[serde(default = "default_mesh_n")]
    pub nx: usize,
    #[serde(default = "default_mesh_n")]
    pub ny: usize,
}

fn default_mesh_n() -> usize {
    8
}

impl Default for MeshConfig {
    fn default() -> Self {
        MeshConfig { nx: 8, ny: 8 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileConfig {
    #[serde(default = "half")]
    pub x_over_a: f64,
    #[serde(default = "half")]
    pub y_over_b: f64,
    #[serde(default = "default_quantities")]
    pub quantities: Vec<ProfileQuantity>,
    #[serde(default = "default_samples")]
    pub samples_per_layer: usize,
    /// 1-based mode number to profile instead of the static solution.
    #[serde(default)]
    pub mode: Option<usize>,
}

fn half() -> f64 {
    0.5
}
fn default_samples() -> usize {
    21
}
fn default_quantities() -> Vec<ProfileQuantity> {
    vec![
        ProfileQuantity::U,
        ProfileQuantity::W,
        ProfileQuantity::SigmaXx,
        ProfileQuantity::SigmaXz,
    ]
}

impl Default for ProfileConfig {
    fn default() -> Self {
        ProfileConfig {
            x_over_a: 0.5,
            y_over_b: 0.5,
            quantities: default_quantities(),
            samples_per_layer: 21,
            mode: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NondimConfig {
    /// Reference modulus for displacement scaling, in GPa.
    #[serde(default = "one")]
    pub e_ref_gpa: f64,
    /// Extra multiplier on stress scalings.
    #[serde(default = "one")]
    pub stress_factor: f64,
}

impl Default for NondimConfig {
    fn default() -> Self {
        NondimConfig {
            e_ref_gpa: 1.0,
            stress_factor: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShearCorrectionConfig {
    /// Constant 5/6 (reproduces the published FSDT rows).
    #[default]
    ClassicalConstant,
    /// Section-dependent energy-equivalence factor.
    EnergyEquivalence,
    /// Explicit value.
    Value(f64),
}

impl ShearCorrectionConfig {
    pub fn to_policy(self, kind: ModelKind) -> Result<ShearCorrection> {
        if kind != ModelKind::Fsdt5 {
            return Ok(ShearCorrection::None);
        }
        Ok(match self {
            ShearCorrectionConfig::ClassicalConstant => ShearCorrection::Constant(5.0 / 6.0),
            ShearCorrectionConfig::EnergyEquivalence => ShearCorrection::EnergyEquivalence,
            ShearCorrectionConfig::Value(v) => {
                if !(v > 0.0) {
                    return Err(Error::Config("shear correction must be positive".into()));
                }
                ShearCorrection::Constant(v)
            }
        })
    }
}

/// Full analysis configuration (one JSON document).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    pub analysis: AnalysisKind,
    #[serde(default)]
    pub title: Option<String>,
    pub layup: LayupConfig,
    #[serde(default)]
    pub materials: MaterialsConfig,
    #[serde(default)]
    pub scheme: HomogenizationScheme,
    /// Kinematic theory (sweepable): HSDT13 | HSDT11 | HSDT9 | FSDT.
    #[serde(default = "default_models")]
    pub model: OneOrMany<String>,
    /// Side-to-thickness ratio S = a/h (sweepable).
    pub a_over_h: OneOrMany<f64>,
    #[serde(default = "one")]
    pub b_over_a: f64,
    #[serde(default)]
    pub mesh: MeshConfig,
    /// Mesh sequence for convergence studies.
    #[serde(default = "default_meshes")]
    pub meshes: Vec<usize>,
    #[serde(default)]
    pub load: LoadConfig,
    /// Number of modes for modal/convergence analyses.
    #[serde(default = "default_modes")]
    pub modes: usize,
    #[serde(default)]
    pub profile: ProfileConfig,
    #[serde(default)]
    pub evaluation: Option<EvaluationPoints>,
    #[serde(default)]
    pub nondim: NondimConfig,
    #[serde(default)]
    pub shear_correction: ShearCorrectionConfig,
    #[serde(default)]
    pub shear_integration: ShearIntegration,
    #[serde(default = "default_thickness_points")]
    pub thickness_points: usize,
}

fn default_models() -> OneOrMany<String> {
    OneOrMany::One("HSDT13".into())
}
fn default_meshes() -> Vec<usize> {
    vec![4, 6, 8, 16]
}
fn default_modes() -> usize {
    1
}
fn default_thickness_points() -> usize {
    DEFAULT_THICKNESS_POINTS
}

impl AnalysisConfig {
    /// Parse and validate a JSON config file.
    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut de = serde_json::Deserializer::from_str(text);
        let config: AnalysisConfig = serde_path_to_error::deserialize(&mut de)
            .map_err(|e| Error::Config(format!("at '{}': {}", e.path(), e.inner())))?;
        config.validate()?;
        Ok(config)
    }

    /// Apply `key=value` overrides (dotted paths into the JSON document),
    /// then revalidate.
    pub fn with_overrides(&self, overrides: &[String]) -> Result<Self> {
        let mut value = serde_json::to_value(self).map_err(|e| Error::Internal(e.to_string()))?;
        for item in overrides {
            let (path, raw) = item
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("override '{item}' is not key=value")))?;
            let parsed: serde_json::Value = serde_json::from_str(raw)
                .unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));
            let mut cursor = &mut value;
            let parts: Vec<&str> = path.split('.').collect();
            for (i, part) in parts.iter().enumerate() {
                if i + 1 == parts.len() {
                    cursor
                        .as_object_mut()
                        .ok_or_else(|| Error::Config(format!("override path '{path}' invalid")))?
                        .insert(part.to_string(), parsed.clone());
                } else {
                    cursor = cursor
                        .as_object_mut()
                        .ok_or_else(|| Error::Config(format!("override path '{path}' invalid")))?
                        .entry(part.to_string())
                        .or_insert_with(|| serde_json::Value::Object(Default::default()));
                }
            }
        }
        let config: AnalysisConfig =
            serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        for n in self.layup.n.to_vec() {
            if n < 0.0 || !n.is_finite() {
                return Err(Error::Config(format!("gradient index n = {n} must be >= 0")));
            }
        }
        for s in self.a_over_h.to_vec() {
            if !(s > 0.0) {
                return Err(Error::Config(format!("a/h = {s} must be positive")));
            }
        }
        if !(self.b_over_a > 0.0) {
            return Err(Error::Config("b/a must be positive".into()));
        }
        for name in self.model.to_vec() {
            if ModelKind::parse(&name).is_none() {
                return Err(Error::Config(format!(
                    "unknown model '{name}' (expected HSDT13, HSDT11, HSDT9 or FSDT)"
                )));
            }
        }
        if self.mesh.nx == 0 || self.mesh.ny == 0 {
            return Err(Error::Config("mesh counts must be at least 1".into()));
        }
        if self.meshes.is_empty() {
            return Err(Error::Config("convergence mesh list must not be empty".into()));
        }
        if self.modes == 0 {
            return Err(Error::Config("mode count must be at least 1".into()));
        }
        if self.thickness_points < 2 {
            return Err(Error::Config("thickness_points must be at least 2".into()));
        }
        self.materials.ceramic.resolve()?;
        self.materials.metal.resolve()?;
        if let (Some(lo), Some(hi)) = (self.layup.profile_min, self.layup.profile_max) {
            if lo >= hi {
                return Err(Error::Config("profile_min must be below profile_max".into()));
            }
        }
        // Building a layup exercises ratio parsing and phase validation.
        self.build_layup(self.layup.n.to_vec()[0], 1.0)?;
        Ok(())
    }

    /// Resolve the ceramic phase including the expansion override.
    pub fn ceramic(&self) -> Result<PhaseMaterial> {
        let mut c = self.materials.ceramic.resolve()?;
        if let Some(alpha) = self.materials.ceramic_thermal_expansion {
            c.thermal_expansion = alpha;
        }
        Ok(c)
    }

    pub fn metal(&self) -> Result<PhaseMaterial> {
        self.materials.metal.resolve()
    }

    /// Construct the layup for one gradient index at unit thickness.
    pub fn build_layup(&self, n: f64, thickness: f64) -> Result<SandwichLayup> {
        let mut layup = SandwichLayup::from_ratio(
            self.layup.grading,
            &self.layup.ratio,
            n,
            thickness,
            self.ceramic()?,
            self.metal()?,
        )?;
        if self.layup.profile_min.is_some() || self.layup.profile_max.is_some() {
            layup = layup.with_profile_bounds(
                self.layup.profile_min.unwrap_or(0.0),
                self.layup.profile_max.unwrap_or(1.0),
            )?;
        }
        Ok(layup)
    }

    pub fn plate_model(&self, kind: ModelKind) -> Result<PlateModel> {
        PlateModel::with_shear_correction(kind, self.shear_correction.to_policy(kind)?)
    }

    pub fn evaluation_points(&self) -> EvaluationPoints {
        self.evaluation.unwrap_or_default()
    }

    pub fn e_ref(&self) -> f64 {
        self.nondim.e_ref_gpa * E_REF
    }

    /// Canonical JSON (sorted keys via serde_json's BTreeMap-backed Value).
    pub fn canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("config serializes");
        serde_json::to_string_pretty(&value).expect("config serializes")
    }

    /// SHA-256 of the canonical JSON, for provenance.
    pub fn hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.canonical_json().as_bytes());
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}
