//! Constituent phases, sandwich layups and through-thickness effective
//! properties.
//!
//! A sandwich plate is a three-layer stack with interface coordinates
//! `z1 < z2 <= z3 < z4`. Grading follows a power law with exponent `n`
//! (the gradient index). Two sandwich constructions are supported plus a
//! monolithic single-layer grading:
//!
//! * `TypeA` — graded face sheets, fully ceramic core. The outer surfaces
//!   are metal rich.
//! * `TypeB` — homogeneous face sheets, graded core. The bottom face is
//!   ceramic, the top face is metal, and the power-law profile in the core
//!   weights the *metal* phase. (The alternative, ceramic-weighted reading
//!   of the profile cannot reproduce the published frequency behaviour of
//!   this construction: stiffening of the core with rising `n` is what
//!   raises the fundamental frequency.)
//! * `MonolithicFgm` — one power law across the whole thickness, metal at
//!   the bottom face, ceramic at the top.
//!
//! The convention `0^0 = 1` is used throughout so `n = 0` degenerates to a
//! homogeneous plate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Isotropic constituent phase (ceramic or metal).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseMaterial {
    /// Young's modulus (Pa).
    pub young_modulus: f64,
    /// Poisson's ratio (dimensionless).
    pub poisson_ratio: f64,
    /// Mass density (kg/m³).
    pub density: f64,
    /// Coefficient of thermal expansion (1/K).
    pub thermal_expansion: f64,
    /// Thermal conductivity (W/(m·K)).
    pub thermal_conductivity: f64,
}

impl PhaseMaterial {
    pub fn new(
        young_modulus: f64,
        poisson_ratio: f64,
        density: f64,
        thermal_expansion: f64,
        thermal_conductivity: f64,
    ) -> Result<Self> {
        let m = PhaseMaterial {
            young_modulus,
            poisson_ratio,
            density,
            thermal_expansion,
            thermal_conductivity,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.young_modulus > 0.0) {
            return Err(Error::InvalidParameter(
                "Young's modulus must be positive".into(),
            ));
        }
        if !(0.0..0.5).contains(&self.poisson_ratio) {
            return Err(Error::InvalidParameter(
                "Poisson's ratio must lie in [0, 0.5)".into(),
            ));
        }
        if !(self.density > 0.0) {
            return Err(Error::InvalidParameter("density must be positive".into()));
        }
        Ok(())
    }

    /// Bulk modulus K = E / (3(1 - 2ν)).
    pub fn bulk_modulus(&self) -> f64 {
        self.young_modulus / (3.0 * (1.0 - 2.0 * self.poisson_ratio))
    }

    /// Shear modulus G = E / (2(1 + ν)).
    pub fn shear_modulus(&self) -> f64 {
        self.young_modulus / (2.0 * (1.0 + self.poisson_ratio))
    }

    /// Alumina (Al₂O₃). E, ρ as published with the benchmark tables; the
    /// expansion coefficient is the value conventional in the FGM
    /// literature and can be overridden through the config.
    pub fn alumina() -> Self {
        PhaseMaterial {
            young_modulus: 380e9,
            poisson_ratio: 0.3,
            density: 3800.0,
            thermal_expansion: 7.4e-6,
            thermal_conductivity: 10.4,
        }
    }

    /// Aluminum.
    pub fn aluminum() -> Self {
        PhaseMaterial {
            young_modulus: 70e9,
            poisson_ratio: 0.3,
            density: 2707.0,
            thermal_expansion: 23.4e-6,
            thermal_conductivity: 233.0,
        }
    }

    /// Silicon carbide (particulate phase of the Al/SiC validation plate).
    pub fn silicon_carbide() -> Self {
        PhaseMaterial {
            young_modulus: 427e9,
            poisson_ratio: 0.17,
            density: 3100.0,
            thermal_expansion: 4.3e-6,
            thermal_conductivity: 65.0,
        }
    }
}

/// Built-in phase presets: (alumina, aluminum, silicon carbide).
pub fn default_materials() -> (PhaseMaterial, PhaseMaterial, PhaseMaterial) {
    (
        PhaseMaterial::alumina(),
        PhaseMaterial::aluminum(),
        PhaseMaterial::silicon_carbide(),
    )
}

/// Through-thickness grading construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GradingType {
    /// FGM face sheets, homogeneous ceramic core.
    TypeA,
    /// Homogeneous face sheets (ceramic bottom, metal top), FGM core.
    TypeB,
    /// Single power law across the full thickness.
    MonolithicFgm,
}

/// Effective-property homogenization scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomogenizationScheme {
    #[default]
    RuleOfMixtures,
    MoriTanaka,
}

/// Property selector for [`SandwichLayup::effective_property`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropertyKind {
    YoungModulus,
    PoissonRatio,
    Density,
    ThermalExpansion,
    ThermalConductivity,
}

/// Three-layer sandwich stack with its grading law and constituent phases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SandwichLayup {
    /// Interface coordinates z1 < z2 <= z3 < z4 with z1 = -h/2, z4 = +h/2.
    pub z_interfaces: [f64; 4],
    pub grading: GradingType,
    /// Power-law exponent n >= 0.
    pub gradient_index: f64,
    /// Layer thickness ratio, e.g. "1-2-1".
    pub ratio_label: String,
    pub ceramic: PhaseMaterial,
    pub metal: PhaseMaterial,
    /// Bounds of the graded profile: the raw power law is rescaled to
    /// [profile_min, profile_max]. The published Al/SiC validation plate
    /// grades the ceramic fraction from 0 to only 0.5; full-range grading
    /// keeps the defaults.
    #[serde(default = "zero")]
    pub profile_min: f64,
    #[serde(default = "one")]
    pub profile_max: f64,
}

fn zero() -> f64 {
    0.0
}
fn one() -> f64 {
    1.0
}

impl SandwichLayup {
    /// Build a layup from a thickness-ratio label like "1-2-1".
    pub fn from_ratio(
        grading: GradingType,
        ratio_label: &str,
        gradient_index: f64,
        thickness: f64,
        ceramic: PhaseMaterial,
        metal: PhaseMaterial,
    ) -> Result<Self> {
        let parts: Vec<f64> = ratio_label
            .split('-')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidParameter(format!("bad ratio label '{ratio_label}'")))
            })
            .collect::<Result<_>>()?;
        if parts.len() != 3 || parts.iter().any(|&p| p < 0.0) || parts.iter().sum::<f64>() <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "ratio label '{ratio_label}' must have three non-negative parts"
            )));
        }
        let total: f64 = parts.iter().sum();
        let h = thickness;
        let z1 = -0.5 * h;
        let z2 = z1 + h * parts[0] / total;
        let z3 = z2 + h * parts[1] / total;
        let z4 = 0.5 * h;
        Self::from_interfaces(
            [z1, z2, z3, z4],
            grading,
            gradient_index,
            ratio_label,
            ceramic,
            metal,
        )
    }

    pub fn from_interfaces(
        z_interfaces: [f64; 4],
        grading: GradingType,
        gradient_index: f64,
        ratio_label: &str,
        ceramic: PhaseMaterial,
        metal: PhaseMaterial,
    ) -> Result<Self> {
        let [z1, z2, z3, z4] = z_interfaces;
        if !(z1 < z2 && z2 <= z3 && z3 < z4) {
            return Err(Error::InvalidParameter(
                "interfaces must satisfy z1 < z2 <= z3 < z4".into(),
            ));
        }
        if gradient_index < 0.0 || !gradient_index.is_finite() {
            return Err(Error::InvalidParameter(
                "gradient index must be finite and non-negative".into(),
            ));
        }
        ceramic.validate()?;
        metal.validate()?;
        Ok(SandwichLayup {
            z_interfaces,
            grading,
            gradient_index,
            ratio_label: ratio_label.to_string(),
            ceramic,
            metal,
            profile_min: 0.0,
            profile_max: 1.0,
        })
    }

    /// Restrict the graded profile to [lo, hi] ⊆ [0, 1].
    pub fn with_profile_bounds(mut self, lo: f64, hi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo >= hi {
            return Err(Error::InvalidParameter(
                "profile bounds must satisfy 0 <= lo < hi <= 1".into(),
            ));
        }
        self.profile_min = lo;
        self.profile_max = hi;
        Ok(self)
    }

    pub fn thickness(&self) -> f64 {
        self.z_interfaces[3] - self.z_interfaces[0]
    }

    /// Bottom/top coordinates of layer `k` (0-based, 0..3).
    pub fn layer_bounds(&self, k: usize) -> (f64, f64) {
        (self.z_interfaces[k], self.z_interfaces[k + 1])
    }

    /// Layer index containing `z`; interior interfaces belong to the upper
    /// layer so the piecewise grading definition is honored there.
    pub fn layer_of(&self, z: f64) -> Result<usize> {
        let [z1, _, _, z4] = self.z_interfaces;
        let tol = 1e-12 * self.thickness();
        if z < z1 - tol || z > z4 + tol {
            return Err(Error::OutOfDomain(format!(
                "z = {z} outside thickness [{z1}, {z4}]"
            )));
        }
        for k in 0..3 {
            if z < self.z_interfaces[k + 1] {
                return Ok(k);
            }
        }
        Ok(2)
    }

    /// Raw power-law profile of the grading law in layer `k` — the
    /// piecewise expression before it is assigned to a phase.
    ///
    /// Type A weights the ceramic phase (faces rise from 0 at the outer
    /// surfaces to 1 at the core). Type B weights the metal phase (core
    /// rises from 0 at the bottom interface to 1 at the top interface).
    /// Monolithic weights the ceramic phase across the full thickness.
    pub fn power_law_profile_in_layer(&self, k: usize, z: f64) -> f64 {
        let n = self.gradient_index;
        let [z1, z2, z3, z4] = self.z_interfaces;
        let raw = match self.grading {
            GradingType::TypeA => match k {
                0 => pow00((z - z1) / (z2 - z1), n),
                1 => 1.0,
                _ => pow00((z - z4) / (z3 - z4), n),
            },
            GradingType::TypeB => match k {
                0 => 0.0,
                1 => pow00((z - z2) / (z3 - z2), n),
                _ => 1.0,
            },
            GradingType::MonolithicFgm => pow00((z - z1) / (z4 - z1), n),
        };
        self.profile_min + (self.profile_max - self.profile_min) * raw
    }

    pub fn power_law_profile(&self, z: f64) -> Result<f64> {
        Ok(self.power_law_profile_in_layer(self.layer_of(z)?, z))
    }

    /// Ceramic volume fraction at `z` within layer `k`.
    pub fn volume_fraction_ceramic_in_layer(&self, k: usize, z: f64) -> f64 {
        let profile = self.power_law_profile_in_layer(k, z);
        match self.grading {
            // Type B's profile weights the metal phase.
            GradingType::TypeB => 1.0 - profile,
            _ => profile,
        }
    }

    /// Ceramic volume fraction V_c(z) in [0, 1]; V_m = 1 - V_c.
    pub fn volume_fraction_ceramic(&self, z: f64) -> Result<f64> {
        Ok(self.volume_fraction_ceramic_in_layer(self.layer_of(z)?, z))
    }

    /// Effective property at `z` under `scheme`.
    pub fn effective_property(
        &self,
        scheme: HomogenizationScheme,
        z: f64,
        which: PropertyKind,
    ) -> Result<f64> {
        let vc = self.volume_fraction_ceramic(z)?;
        Ok(self.effective_property_at_fraction(scheme, vc, which))
    }

    /// Effective property for a given ceramic fraction (no z lookup).
    pub fn effective_property_at_fraction(
        &self,
        scheme: HomogenizationScheme,
        vc: f64,
        which: PropertyKind,
    ) -> f64 {
        let c = &self.ceramic;
        let m = &self.metal;
        match scheme {
            HomogenizationScheme::RuleOfMixtures => {
                let pick = |pc: f64, pm: f64| pc * vc + pm * (1.0 - vc);
                match which {
                    PropertyKind::YoungModulus => pick(c.young_modulus, m.young_modulus),
                    PropertyKind::PoissonRatio => pick(c.poisson_ratio, m.poisson_ratio),
                    PropertyKind::Density => pick(c.density, m.density),
                    PropertyKind::ThermalExpansion => {
                        pick(c.thermal_expansion, m.thermal_expansion)
                    }
                    PropertyKind::ThermalConductivity => {
                        pick(c.thermal_conductivity, m.thermal_conductivity)
                    }
                }
            }
            HomogenizationScheme::MoriTanaka => match which {
                PropertyKind::YoungModulus => mori_tanaka_elastic(c, m, vc).0,
                PropertyKind::PoissonRatio => mori_tanaka_elastic(c, m, vc).1,
                // Mass density mixes linearly regardless of scheme.
                PropertyKind::Density => c.density * vc + m.density * (1.0 - vc),
                PropertyKind::ThermalExpansion => mori_tanaka_expansion(c, m, vc),
                PropertyKind::ThermalConductivity => mori_tanaka_conductivity(c, m, vc),
            },
        }
    }

    /// (E, ν) at a ceramic fraction — the hot path for rigidity integration.
    pub fn elastic_at_fraction(&self, scheme: HomogenizationScheme, vc: f64) -> (f64, f64) {
        match scheme {
            HomogenizationScheme::RuleOfMixtures => (
                self.ceramic.young_modulus * vc + self.metal.young_modulus * (1.0 - vc),
                self.ceramic.poisson_ratio * vc + self.metal.poisson_ratio * (1.0 - vc),
            ),
            HomogenizationScheme::MoriTanaka => mori_tanaka_elastic(&self.ceramic, &self.metal, vc),
        }
    }
}

/// Power with the 0^0 = 1 convention (f64 already satisfies it, made
/// explicit here because the grading law depends on it).
fn pow00(base: f64, exp: f64) -> f64 {
    if exp == 0.0 {
        1.0
    } else {
        base.powf(exp)
    }
}

/// Mori-Tanaka effective (E, ν) for a two-phase particulate composite with
/// the metal as matrix and the ceramic as inclusion: effective bulk and
/// shear moduli of the standard two-phase form, converted back to
/// engineering constants.
pub fn mori_tanaka_elastic(ceramic: &PhaseMaterial, metal: &PhaseMaterial, vc: f64) -> (f64, f64) {
    let km = metal.bulk_modulus();
    let gm = metal.shear_modulus();
    let kc = ceramic.bulk_modulus();
    let gc = ceramic.shear_modulus();

    let k_eff = km + vc * (kc - km) / (1.0 + (1.0 - vc) * (kc - km) / (km + 4.0 * gm / 3.0));
    let f1 = gm * (9.0 * km + 8.0 * gm) / (6.0 * (km + 2.0 * gm));
    let g_eff = gm + vc * (gc - gm) / (1.0 + (1.0 - vc) * (gc - gm) / (gm + f1));

    let e = 9.0 * k_eff * g_eff / (3.0 * k_eff + g_eff);
    let nu = (3.0 * k_eff - 2.0 * g_eff) / (2.0 * (3.0 * k_eff + g_eff));
    (e, nu)
}

/// Levin relation for the effective expansion coefficient, driven by the
/// Mori-Tanaka bulk modulus.
pub fn mori_tanaka_expansion(ceramic: &PhaseMaterial, metal: &PhaseMaterial, vc: f64) -> f64 {
    let km = metal.bulk_modulus();
    let kc = ceramic.bulk_modulus();
    if (kc - km).abs() < 1e-30 * km.abs() {
        return ceramic.thermal_expansion * vc + metal.thermal_expansion * (1.0 - vc);
    }
    let (k_eff, _) = {
        let gm = metal.shear_modulus();
        let k = km + vc * (kc - km) / (1.0 + (1.0 - vc) * (kc - km) / (km + 4.0 * gm / 3.0));
        (k, ())
    };
    metal.thermal_expansion
        + (ceramic.thermal_expansion - metal.thermal_expansion) * (1.0 / k_eff - 1.0 / km)
            / (1.0 / kc - 1.0 / km)
}

/// Effective conductivity of the coated-sphere (Mori-Tanaka) form with the
/// metal as matrix.
pub fn mori_tanaka_conductivity(ceramic: &PhaseMaterial, metal: &PhaseMaterial, vc: f64) -> f64 {
    let km = metal.thermal_conductivity;
    let kc = ceramic.thermal_conductivity;
    km + vc * (kc - km) * 3.0 * km / (3.0 * km + (1.0 - vc) * (kc - km))
}
