//! Plate kinematic theories and their nodal degree-of-freedom sets.
//!
//! The displacement expansion per layer k is
//!
//! ```text
//! u = u0 + z*tx + z^2*bx + z^3*px + S_k*sx
//! v = v0 + z*ty + z^2*by + z^3*py + S_k*sy
//! w = w0 + z*w1 + z^2*gz
//! ```
//!
//! where `S_k` is the piecewise-linear zig-zag function. The four models
//! retain nested subsets of the 13 generalized variables.

use serde::{Deserialize, Serialize};

/// Generalized nodal variables, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DofLabel {
    /// In-plane displacement u0.
    U0,
    /// In-plane displacement v0.
    V0,
    /// Transverse displacement w0.
    W0,
    /// Rotation θx (about y).
    ThetaX,
    /// Rotation θy (about x).
    ThetaY,
    /// Linear thickness-stretch term w1.
    W1,
    /// Quadratic in-plane term βx.
    BetaX,
    /// Quadratic in-plane term βy.
    BetaY,
    /// Quadratic thickness-stretch term Γ.
    Gamma,
    /// Cubic in-plane term φx.
    PhiX,
    /// Cubic in-plane term φy.
    PhiY,
    /// Zig-zag amplitude ψx.
    PsiX,
    /// Zig-zag amplitude ψy.
    PsiY,
}

pub const ALL_DOFS: [DofLabel; 13] = [
    DofLabel::U0,
    DofLabel::V0,
    DofLabel::W0,
    DofLabel::ThetaX,
    DofLabel::ThetaY,
    DofLabel::W1,
    DofLabel::BetaX,
    DofLabel::BetaY,
    DofLabel::Gamma,
    DofLabel::PhiX,
    DofLabel::PhiY,
    DofLabel::PsiX,
    DofLabel::PsiY,
];

impl DofLabel {
    pub fn name(self) -> &'static str {
        match self {
            DofLabel::U0 => "u0",
            DofLabel::V0 => "v0",
            DofLabel::W0 => "w0",
            DofLabel::ThetaX => "theta_x",
            DofLabel::ThetaY => "theta_y",
            DofLabel::W1 => "w1",
            DofLabel::BetaX => "beta_x",
            DofLabel::BetaY => "beta_y",
            DofLabel::Gamma => "gamma",
            DofLabel::PhiX => "phi_x",
            DofLabel::PhiY => "phi_y",
            DofLabel::PsiX => "psi_x",
            DofLabel::PsiY => "psi_y",
        }
    }
}

/// Kinematic theory selector.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(rename_all = "UPPERCASE")]
pub enum ModelKind {
    /// Full higher-order theory with zig-zag and thickness stretch.
    #[default]
    Hsdt13,
    /// Higher-order with thickness stretch, no zig-zag.
    Hsdt11,
    /// Higher-order in-plane only; constant transverse displacement.
    Hsdt9,
    /// First-order shear deformation theory (needs a shear correction).
    Fsdt5,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Hsdt13 => "HSDT13",
            ModelKind::Hsdt11 => "HSDT11",
            ModelKind::Hsdt9 => "HSDT9",
            ModelKind::Fsdt5 => "FSDT",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "HSDT13" => Some(ModelKind::Hsdt13),
            "HSDT11" => Some(ModelKind::Hsdt11),
            "HSDT9" => Some(ModelKind::Hsdt9),
            "FSDT" | "FSDT5" => Some(ModelKind::Fsdt5),
            _ => None,
        }
    }

    pub fn dofs_per_node(self) -> usize {
        self.dof_labels().len()
    }

    /// Active nodal variables, in canonical order.
    pub fn dof_labels(self) -> &'static [DofLabel] {
        use DofLabel::*;
        match self {
            ModelKind::Hsdt13 => &ALL_DOFS,
            ModelKind::Hsdt11 => &[
                U0, V0, W0, ThetaX, ThetaY, W1, BetaX, BetaY, Gamma, PhiX, PhiY,
            ],
            ModelKind::Hsdt9 => &[U0, V0, W0, ThetaX, ThetaY, BetaX, BetaY, PhiX, PhiY],
            ModelKind::Fsdt5 => &[U0, V0, W0, ThetaX, ThetaY],
        }
    }

    pub fn has(self, label: DofLabel) -> bool {
        self.dof_labels().contains(&label)
    }

    /// Position of `label` within this model's per-node block, if active.
    pub fn dof_index(self, label: DofLabel) -> Option<usize> {
        self.dof_labels().iter().position(|&l| l == label)
    }

    /// Whether the theory carries thickness stretch (w1, Γ).
    pub fn has_thickness_stretch(self) -> bool {
        self.has(DofLabel::W1)
    }

    pub fn has_zigzag(self) -> bool {
        self.has(DofLabel::PsiX)
    }
}

/// Shear-correction policy; only meaningful for FSDT.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShearCorrection {
    /// No correction (all higher-order models).
    #[default]
    None,
    /// Factor from equating the FSDT shear energy with the energy of the
    /// equilibrium-consistent through-thickness shear distribution.
    EnergyEquivalence,
    /// Fixed user-supplied factor.
    Constant(f64),
}

/// A kinematic theory plus its shear-correction policy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlateModel {
    pub kind: ModelKind,
    pub shear_correction: ShearCorrection,
}

impl PlateModel {
    /// Default policy. FSDT uses the constant classical factor: the
    /// published benchmark rows are reproduced by a section-independent
    /// 5/6, whereas the grading-dependent energy-equivalence factor
    /// overstiffens strongly graded sections (select it explicitly to
    /// compare).
    pub fn new(kind: ModelKind) -> Self {
        let shear_correction = match kind {
            ModelKind::Fsdt5 => ShearCorrection::Constant(5.0 / 6.0),
            _ => ShearCorrection::None,
        };
        PlateModel {
            kind,
            shear_correction,
        }
    }

    pub fn with_shear_correction(kind: ModelKind, sc: ShearCorrection) -> crate::Result<Self> {
        if kind != ModelKind::Fsdt5 && sc != ShearCorrection::None {
            return Err(crate::Error::InvalidParameter(
                "shear correction applies only to FSDT".into(),
            ));
        }
        Ok(PlateModel {
            kind,
            shear_correction: sc,
        })
    }
}
