//! Nondimensional reporting: benchmark scalings, evaluation-point
//! conventions and serializable result tables.
//!
//! Reference values: E₀ = 1 GPa and ρ₀ = 1 kg/m³. Mechanical results use
//!
//! ```text
//! (ū, v̄) = 100 E_ref (u, v)/(q0 h S³)    w̄ = 100 E_ref w/(q0 h S⁴)
//! σ̄_ip = f σ/(q0 S²)                      σ̄_sh = f σ/(q0 S)
//! ```
//!
//! with E_ref = E₀ and f = 1 by default (the sandwich-table convention;
//! the Al/SiC validation table uses E_ref = E_m and f = 10). Thermal
//! results use û = u/(h α_m T0 S), ŵ = w/(h α_m T0 S²), σ̂ = σ/(E_m α_m T0).
//! The frequency parameter is Ω = ω a²/h √(ρ₀/E₀).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stress::FieldEvaluator;

/// Reference modulus E₀ = 1 GPa.
pub const E_REF: f64 = 1.0e9;
/// Reference density ρ₀ = 1 kg/m³.
pub const RHO_REF: f64 = 1.0;

/// Ω = ω a²/h √(ρ₀/E₀).
pub fn frequency_parameter(omega: f64, a: f64, h: f64) -> f64 {
    omega * a * a / h * (RHO_REF / E_REF).sqrt()
}

/// Loading family of a static analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Loading {
    Mechanical,
    Thermal,
}

/// Where each reported quantity is sampled, in plate-fraction coordinates
/// (x/a, y/b, z/h with z/h in [-1/2, 1/2]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvaluationPoints {
    pub u: (f64, f64, f64),
    pub v: (f64, f64, f64),
    pub w: (f64, f64, f64),
    pub sxx: (f64, f64, f64),
    pub syy: (f64, f64, f64),
    pub sxy: (f64, f64, f64),
    /// (x/a, y/b); the through-thickness extremum is reported.
    pub sxz: (f64, f64),
    pub syz: (f64, f64),
}

impl Default for EvaluationPoints {
    /// Benchmark-table convention: pointwise values at the bottom face.
    fn default() -> Self {
        EvaluationPoints {
            u: (0.0, 0.5, -0.5),
            v: (0.5, 0.0, -0.5),
            w: (0.5, 0.5, -0.5),
            sxx: (0.5, 0.5, -0.5),
            syy: (0.5, 0.5, -0.5),
            sxy: (0.0, 0.0, -0.5),
            sxz: (0.0, 0.5),
            syz: (0.5, 0.0),
        }
    }
}

impl EvaluationPoints {
    /// The 3-D validation-table convention samples the top face instead.
    pub fn top_face() -> Self {
        EvaluationPoints {
            u: (0.0, 0.5, 0.5),
            v: (0.5, 0.0, 0.5),
            w: (0.5, 0.5, 0.5),
            sxx: (0.5, 0.5, 0.5),
            syy: (0.5, 0.5, 0.5),
            sxy: (0.0, 0.0, 0.5),
            sxz: (0.0, 0.5),
            syz: (0.5, 0.0),
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "u({},{},{}) v({},{},{}) w({},{},{}) sxx({},{},{}) syy({},{},{}) sxy({},{},{}) sxz({},{},max) syz({},{},max)",
            self.u.0, self.u.1, self.u.2,
            self.v.0, self.v.1, self.v.2,
            self.w.0, self.w.1, self.w.2,
            self.sxx.0, self.sxx.1, self.sxx.2,
            self.syy.0, self.syy.1, self.syy.2,
            self.sxy.0, self.sxy.1, self.sxy.2,
            self.sxz.0, self.sxz.1,
            self.syz.0, self.syz.1,
        )
    }
}

/// Raw (dimensional) samples taken at the evaluation points.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RawStaticValues {
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub sxx: f64,
    pub syy: f64,
    pub sxy: f64,
    pub sxz: f64,
    pub syz: f64,
}

/// Sample a solved field at the evaluation points.
pub fn measure_static(ev: &FieldEvaluator, points: &EvaluationPoints) -> Result<RawStaticValues> {
    let mesh = ev.mesh;
    let (a, b) = (mesh.a, mesh.b);
    let h = ev.layup.thickness();
    let at = |p: (f64, f64, f64)| (p.0 * a, p.1 * b, p.2 * h);

    let (xu, yu, zu) = at(points.u);
    let (xv, yv, zv) = at(points.v);
    let (xw, yw, zw) = at(points.w);
    let u = ev.displacement(xu, yu, zu)?.0;
    let v = ev.displacement(xv, yv, zv)?.1;
    let w = ev.displacement(xw, yw, zw)?.2;

    let (xs, ys, zs) = at(points.sxx);
    let sxx = ev.in_plane_stress(xs, ys, zs)?[0];
    let (xs, ys, zs) = at(points.syy);
    let syy = ev.in_plane_stress(xs, ys, zs)?[1];
    let (xs, ys, zs) = at(points.sxy);
    let sxy = ev.in_plane_stress(xs, ys, zs)?[3];

    let (sxz, _) = ev.transverse_shear_extremum(points.sxz.0 * a, points.sxz.1 * b)?;
    let (_, syz) = ev.transverse_shear_extremum(points.syz.0 * a, points.syz.1 * b)?;

    Ok(RawStaticValues {
        u,
        v,
        w,
        sxx,
        syy,
        sxy,
        sxz,
        syz,
    })
}

/// Scaling inputs for [`nondimensionalize_static`].
#[derive(Debug, Clone, Copy)]
pub struct NondimParams {
    /// Side-to-thickness ratio S = a/h.
    pub s: f64,
    pub h: f64,
    /// Load amplitude q0 (mechanical) — must be nonzero for mechanical.
    pub q0: f64,
    /// Temperature amplitude T0 (thermal) — must be nonzero for thermal.
    pub t0: f64,
    /// Displacement reference modulus (E₀ by default, E_m for the
    /// validation convention).
    pub e_ref: f64,
    /// Extra multiplier on stresses (1 by default, 10 for the validation
    /// convention).
    pub stress_factor: f64,
    /// Metal modulus and expansion coefficient (thermal scaling).
    pub e_m: f64,
    pub alpha_m: f64,
}

/// Nondimensional deflections and stresses per the benchmark conventions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct NondimensionalStatic {
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub sxx: f64,
    pub syy: f64,
    pub sxy: f64,
    pub sxz: f64,
    pub syz: f64,
}

pub fn nondimensionalize_static(
    raw: &RawStaticValues,
    loading: Loading,
    p: &NondimParams,
) -> Result<NondimensionalStatic> {
    match loading {
        Loading::Mechanical => {
            if p.q0 == 0.0 {
                return Err(Error::InvalidParameter(
                    "q0 = 0: mechanical nondimensionalization undefined".into(),
                ));
            }
            let s = p.s;
            let disp_ip = 100.0 * p.e_ref / (p.q0 * p.h * s * s * s);
            let disp_w = disp_ip / s;
            let sig_ip = p.stress_factor / (p.q0 * s * s);
            let sig_sh = p.stress_factor / (p.q0 * s);
            Ok(NondimensionalStatic {
                u: raw.u * disp_ip,
                v: raw.v * disp_ip,
                w: raw.w * disp_w,
                sxx: raw.sxx * sig_ip,
                syy: raw.syy * sig_ip,
                sxy: raw.sxy * sig_ip,
                sxz: raw.sxz * sig_sh,
                syz: raw.syz * sig_sh,
            })
        }
        Loading::Thermal => {
            if p.t0 == 0.0 {
                return Err(Error::InvalidParameter(
                    "T0 = 0: thermal nondimensionalization undefined".into(),
                ));
            }
            let base = p.h * p.alpha_m * p.t0;
            let sig = 1.0 / (p.e_m * p.alpha_m * p.t0);
            Ok(NondimensionalStatic {
                u: raw.u / (base * p.s),
                v: raw.v / (base * p.s),
                w: raw.w / (base * p.s * p.s),
                sxx: raw.sxx * sig,
                syy: raw.syy * sig,
                sxy: raw.sxy * sig,
                sxz: raw.sxz * sig,
                syz: raw.syz * sig,
            })
        }
    }
}
