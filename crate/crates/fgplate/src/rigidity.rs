//! Through-thickness pre-integration: rigidity, inertia and thermal
//! resultant matrices, plus the FSDT shear-correction factor.
//!
//! Every z-dependent pairing of the displacement expansion is integrated
//! layer by layer with Gauss-Legendre quadrature so the in-plane element
//! loop only sees constant matrices. The grading law makes the integrands
//! non-polynomial for fractional gradient indices, hence the configurable
//! (generous) point count per layer.

use nalgebra::{SMatrix, SVector};

use crate::error::{Error, Result};
use crate::kinematics::{
    bm_z_functions, layer_stiffness, shear_z_functions, ZigZag, BM_COMPS, BM_FAMILIES, BM_SIZE,
    SHEAR_COMPS, SHEAR_FAMILIES, SHEAR_SIZE,
};
use crate::material::{HomogenizationScheme, PropertyKind, SandwichLayup};
use crate::model::{PlateModel, ShearCorrection};
use crate::quadrature::GaussLegendre;

/// Default Gauss points per layer for thickness integration.
pub const DEFAULT_THICKNESS_POINTS: usize = 16;

/// Pre-integrated through-thickness matrices for one (layup, scheme,
/// model) combination.
#[derive(Debug, Clone)]
pub struct RigidityMatrices {
    /// Bending/membrane block: pairings of [1, z, z², z³, S] ⊗ (xx,yy,zz,xy).
    pub bm: SMatrix<f64, BM_SIZE, BM_SIZE>,
    /// Transverse shear block: pairings of [1, z, z², S'] ⊗ (xz, yz).
    pub shear: SMatrix<f64, SHEAR_SIZE, SHEAR_SIZE>,
    /// In-plane inertia: ∫ρ f_i f_j dz over [1, z, z², z³, S].
    pub inertia_uv: SMatrix<f64, BM_FAMILIES, BM_FAMILIES>,
    /// Transverse inertia: ∫ρ w_i w_j dz over [1, z, z²].
    pub inertia_w: SMatrix<f64, 3, 3>,
    /// Thermal resultants per unit load amplitude: ∫ Q α T(z) {1,1,1,0} f_i dz
    /// with the linear profile T(z) = 2z/h.
    pub thermal_bm: SVector<f64, BM_SIZE>,
    /// Shear correction actually applied to the γ0 block (1.0 if none).
    pub shear_correction: [f64; 2],
    /// Gauss points per layer used.
    pub thickness_points: usize,
}

/// Integrate all rigidity/inertia/thermal pairings for `model`.
pub fn integrate_rigidities(
    layup: &SandwichLayup,
    scheme: HomogenizationScheme,
    model: &PlateModel,
    thickness_points: usize,
) -> Result<RigidityMatrices> {
    if thickness_points < 2 {
        return Err(Error::InvalidParameter(
            "thickness quadrature needs at least 2 points per layer".into(),
        ));
    }
    let rule = GaussLegendre::new(thickness_points);
    let h = layup.thickness();

    let mut bm = SMatrix::<f64, BM_SIZE, BM_SIZE>::zeros();
    let mut shear = SMatrix::<f64, SHEAR_SIZE, SHEAR_SIZE>::zeros();
    let mut inertia_uv = SMatrix::<f64, BM_FAMILIES, BM_FAMILIES>::zeros();
    let mut inertia_w = SMatrix::<f64, 3, 3>::zeros();
    let mut thermal_bm = SVector::<f64, BM_SIZE>::zeros();

    for k in 0..3 {
        let (za, zb) = layup.layer_bounds(k);
        if zb - za <= 0.0 {
            continue; // degenerate (empty) layer
        }
        let zz = ZigZag::new(layup, k);
        for (z, w) in rule.mapped(za, zb) {
            let vc = layup.volume_fraction_ceramic_in_layer(k, z);
            let (e, nu) = layup.elastic_at_fraction(scheme, vc);
            let (q_bm, q_s) = layer_stiffness(model.kind, e, nu)?;
            let rho = layup.effective_property_at_fraction(scheme, vc, PropertyKind::Density);
            let alpha =
                layup.effective_property_at_fraction(scheme, vc, PropertyKind::ThermalExpansion);

            let f = bm_z_functions(&zz, z);
            let g = shear_z_functions(&zz, z);
            let wfun = [1.0, z, z * z];

            for i in 0..BM_FAMILIES {
                for j in 0..BM_FAMILIES {
                    let fij = w * f[i] * f[j];
                    for a in 0..BM_COMPS {
                        for b in 0..BM_COMPS {
                            bm[(i * BM_COMPS + a, j * BM_COMPS + b)] += fij * q_bm[(a, b)];
                        }
                    }
                    inertia_uv[(i, j)] += w * rho * f[i] * f[j];
                }
            }
            for i in 0..SHEAR_FAMILIES {
                for j in 0..SHEAR_FAMILIES {
                    let gij = w * g[i] * g[j];
                    for a in 0..SHEAR_COMPS {
                        for b in 0..SHEAR_COMPS {
                            shear[(i * SHEAR_COMPS + a, j * SHEAR_COMPS + b)] += gij * q_s[(a, b)];
                        }
                    }
                }
            }
            for i in 0..3 {
                for j in 0..3 {
                    inertia_w[(i, j)] += w * rho * wfun[i] * wfun[j];
                }
            }
            // Thermal strain α T {1,1,1,0} against each z-family, with the
            // linear through-thickness profile of the applied load.
            let t_profile = 2.0 * z / h;
            let eps_th = [alpha * t_profile, alpha * t_profile, alpha * t_profile, 0.0];
            for i in 0..BM_FAMILIES {
                for a in 0..BM_COMPS {
                    let mut s = 0.0;
                    for b in 0..BM_COMPS {
                        s += q_bm[(a, b)] * eps_th[b];
                    }
                    thermal_bm[i * BM_COMPS + a] += w * f[i] * s;
                }
            }
        }
    }

    let factor = match model.shear_correction {
        ShearCorrection::None => 1.0,
        ShearCorrection::Constant(v) => v,
        ShearCorrection::EnergyEquivalence => shear_correction_factor(layup, scheme)?,
    };
    if factor != 1.0 {
        for a in 0..SHEAR_COMPS {
            for b in 0..SHEAR_COMPS {
                shear[(a, b)] *= factor;
            }
        }
    }

    Ok(RigidityMatrices {
        bm,
        shear,
        inertia_uv,
        inertia_w,
        thermal_bm,
        shear_correction: [factor, factor],
        thickness_points,
    })
}

/// Shear-correction factor by energy equivalence: the transverse shear
/// energy of the constant FSDT strain is matched with the energy of the
/// shear-stress distribution recovered from bending equilibrium of the
/// graded section. Reduces to 5/6 for a homogeneous section.
pub fn shear_correction_factor(
    layup: &SandwichLayup,
    scheme: HomogenizationScheme,
) -> Result<f64> {
    let panels_per_layer = 16;
    let rule = GaussLegendre::new(16);

    let e_flex = |z: f64, k: usize| -> f64 {
        let vc = layup.volume_fraction_ceramic_in_layer(k, z);
        let (e, nu) = layup.elastic_at_fraction(scheme, vc);
        e / (1.0 - nu * nu)
    };
    let g_shear = |z: f64, k: usize| -> f64 {
        let vc = layup.volume_fraction_ceramic_in_layer(k, z);
        let (e, nu) = layup.elastic_at_fraction(scheme, vc);
        e / (2.0 * (1.0 + nu))
    };

    // Panel grid refined within each layer; integrands are smooth there.
    let mut panels: Vec<(f64, f64, usize)> = Vec::new();
    for k in 0..3 {
        let (za, zb) = layup.layer_bounds(k);
        if zb - za <= 0.0 {
            continue;
        }
        for p in 0..panels_per_layer {
            let a = za + (zb - za) * p as f64 / panels_per_layer as f64;
            let b = za + (zb - za) * (p + 1) as f64 / panels_per_layer as f64;
            panels.push((a, b, k));
        }
    }

    let integrate = |f: &dyn Fn(f64, usize) -> f64| -> f64 {
        panels
            .iter()
            .map(|&(a, b, k)| rule.integrate(a, b, |z| f(z, k)))
            .sum()
    };

    let area = integrate(&e_flex);
    let first = integrate(&|z, k| e_flex(z, k) * z);
    let z_neutral = first / area;
    let bending = integrate(&|z, k| e_flex(z, k) * (z - z_neutral) * (z - z_neutral));

    // Prefix integrals of q(z) = E'(z)(z - z_n) at panel boundaries, so the
    // equilibrium shear shape g(z) = -∫ q can be evaluated anywhere.
    let mut prefix = Vec::with_capacity(panels.len() + 1);
    prefix.push(0.0);
    for &(a, b, k) in &panels {
        let inc = rule.integrate(a, b, |z| e_flex(z, k) * (z - z_neutral));
        prefix.push(prefix.last().unwrap() + inc);
    }
    let g_of = |z: f64| -> f64 {
        // Locate panel, then integrate the remainder.
        let mut acc = 0.0;
        for (idx, &(a, b, k)) in panels.iter().enumerate() {
            if z <= b || idx == panels.len() - 1 {
                acc = prefix[idx] + rule.integrate(a, z.min(b), |t| e_flex(t, k) * (t - z_neutral));
                break;
            }
        }
        -acc
    };

    let shear_area = integrate(&g_shear);
    let compliance = integrate(&|z, k| {
        let g = g_of(z);
        g * g / g_shear(z, k)
    });
    if !(compliance > 0.0) || !(shear_area > 0.0) {
        return Err(Error::Internal("degenerate shear-correction integrals".into()));
    }
    Ok(bending * bending / (shear_area * compliance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::{GradingType, PhaseMaterial};
    use crate::model::ModelKind;
    use approx::assert_relative_eq;

    fn layup(grading: GradingType, ratio: &str, n: f64) -> SandwichLayup {
        SandwichLayup::from_ratio(
            grading,
            ratio,
            n,
            1.0,
            PhaseMaterial::alumina(),
            PhaseMaterial::aluminum(),
        )
        .unwrap()
    }

    #[test]
    fn homogeneous_closed_forms() {
        // n = 0 Type A is a homogeneous ceramic plate; membrane and bending
        // pairings have textbook closed forms under the plane-stress law.
        let l = layup(GradingType::TypeA, "1-1-1", 0.0);
        let model = PlateModel::new(ModelKind::Hsdt9);
        let r = integrate_rigidities(&l, HomogenizationScheme::RuleOfMixtures, &model, 16).unwrap();
        let e = 380e9;
        let nu = 0.3;
        let h = 1.0;
        let q = e / (1.0 - nu * nu);
        assert_relative_eq!(r.bm[(0, 0)], q * h, max_relative = 1e-12);
        // Bending pairing (z, z) of the xx component: block (1,1), comp (0,0).
        assert_relative_eq!(
            r.bm[(BM_COMPS, BM_COMPS)],
            q * h * h * h / 12.0,
            max_relative = 1e-12
        );
        // Membrane-bending coupling vanishes for the symmetric section.
        assert_relative_eq!(r.bm[(0, BM_COMPS)], 0.0, epsilon = q * 1e-14);
        // Zig-zag inertia pairing (S, S) for equal homogeneous layers.
        let rho = 3800.0;
        assert_relative_eq!(r.inertia_uv[(4, 4)], rho * h / 3.0, max_relative = 1e-12);
        assert_relative_eq!(r.inertia_uv[(0, 0)], rho * h, max_relative = 1e-13);
        assert_relative_eq!(
            r.inertia_uv[(1, 1)],
            rho * h * h * h / 12.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn blocks_are_symmetric_and_energy_nonnegative() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (grading, ratio, n) in [
            (GradingType::TypeA, "1-2-1", 2.0),
            (GradingType::TypeB, "2-2-1", 0.5),
            (GradingType::MonolithicFgm, "1-1-1", 1.0),
        ] {
            let l = layup(grading, ratio, n);
            let model = PlateModel::new(ModelKind::Hsdt13);
            let r =
                integrate_rigidities(&l, HomogenizationScheme::RuleOfMixtures, &model, 16).unwrap();
            let max = r.bm.amax();
            for i in 0..BM_SIZE {
                for j in 0..BM_SIZE {
                    assert_relative_eq!(r.bm[(i, j)], r.bm[(j, i)], epsilon = 1e-12 * max);
                }
            }
            for _ in 0..20 {
                let v = nalgebra::SVector::<f64, BM_SIZE>::from_fn(|_, _| {
                    rng.random_range(-1.0..1.0)
                });
                let q = (v.transpose() * r.bm * v)[0];
                assert!(q >= -1e-12 * max, "bm energy negative: {q}");
            }
            let smax = r.shear.amax();
            for _ in 0..20 {
                let v = nalgebra::SVector::<f64, SHEAR_SIZE>::from_fn(|_, _| {
                    rng.random_range(-1.0..1.0)
                });
                let q = (v.transpose() * r.shear * v)[0];
                assert!(q >= -1e-12 * smax);
            }
        }
    }

    // Independent adaptive-Simpson reference for every block entry.
    fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
        fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
            (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
        }
        fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let left = simpson(f, a, m);
            let right = simpson(f, m, b);
            if depth > 40 || (left + right - whole).abs() < 15.0 * tol {
                left + right + (left + right - whole) / 15.0
            } else {
                rec(f, a, m, left, 0.5 * tol, depth + 1)
                    + rec(f, m, b, right, 0.5 * tol, depth + 1)
            }
        }
        rec(f, a, b, simpson(f, a, b), tol, 0)
    }

    #[test]
    fn rigidities_match_adaptive_quadrature() {
        let l = layup(GradingType::TypeA, "1-2-1", 2.0);
        let scheme = HomogenizationScheme::RuleOfMixtures;
        let model = PlateModel::new(ModelKind::Hsdt13);
        let r = integrate_rigidities(&l, scheme, &model, 16).unwrap();

        let entry = |i: usize, j: usize| -> f64 {
            let mut total = 0.0;
            for k in 0..3 {
                let (za, zb) = l.layer_bounds(k);
                let zz = ZigZag::new(&l, k);
                let f = |z: f64| {
                    let vc = l.volume_fraction_ceramic_in_layer(k, z);
                    let (e, nu) = l.elastic_at_fraction(scheme, vc);
                    let (q, _) = layer_stiffness(ModelKind::Hsdt13, e, nu).unwrap();
                    let fam = bm_z_functions(&zz, z);
                    fam[i / BM_COMPS] * fam[j / BM_COMPS] * q[(i % BM_COMPS, j % BM_COMPS)]
                };
                total += adaptive_simpson(&f, za, zb, 1e-6);
            }
            total
        };
        let scale = r.bm.amax();
        for i in 0..BM_SIZE {
            for j in i..BM_SIZE {
                let reference = entry(i, j);
                assert_relative_eq!(r.bm[(i, j)], reference, epsilon = 1e-10 * scale);
            }
        }
    }

    #[test]
    fn shear_correction_homogeneous_is_five_sixths() {
        let l = layup(GradingType::TypeA, "1-1-1", 0.0);
        let k = shear_correction_factor(&l, HomogenizationScheme::RuleOfMixtures).unwrap();
        assert_relative_eq!(k, 5.0 / 6.0, epsilon = 1e-10);
    }

    #[test]
    fn shear_correction_identical_phases() {
        let c = PhaseMaterial::aluminum();
        let l = SandwichLayup::from_ratio(GradingType::TypeA, "1-2-1", 3.7, 1.0, c, c).unwrap();
        let k = shear_correction_factor(&l, HomogenizationScheme::RuleOfMixtures).unwrap();
        assert_relative_eq!(k, 5.0 / 6.0, epsilon = 1e-10);
    }

    // Frozen from a separate cumulative-quadrature script evaluating the
    // same energy-equivalence definition (Al/alumina 1-1-1 Type A, n = 1).
    #[test]
    fn shear_correction_sandwich_frozen_value() {
        let l = layup(GradingType::TypeA, "1-1-1", 1.0);
        let k = shear_correction_factor(&l, HomogenizationScheme::RuleOfMixtures).unwrap();
        assert_relative_eq!(k, 0.9332791446810889, epsilon = 1e-9);
    }

    #[test]
    fn fsdt_rigidities_carry_correction() {
        let l = layup(GradingType::TypeA, "1-1-1", 0.0);
        let corrected = integrate_rigidities(
            &l,
            HomogenizationScheme::RuleOfMixtures,
            &PlateModel::new(ModelKind::Fsdt5),
            16,
        )
        .unwrap();
        let plain = integrate_rigidities(
            &l,
            HomogenizationScheme::RuleOfMixtures,
            &PlateModel::with_shear_correction(ModelKind::Fsdt5, ShearCorrection::None).unwrap(),
            16,
        )
        .unwrap();
        assert_relative_eq!(
            corrected.shear[(0, 0)],
            plain.shear[(0, 0)] * 5.0 / 6.0,
            max_relative = 1e-9
        );
    }

    #[test]
    fn empty_core_is_skipped() {
        let l = SandwichLayup::from_interfaces(
            [-0.5, 0.0, 0.0, 0.5],
            GradingType::TypeA,
            1.0,
            "1-0-1",
            PhaseMaterial::alumina(),
            PhaseMaterial::aluminum(),
        )
        .unwrap();
        let model = PlateModel::new(ModelKind::Hsdt13);
        let r = integrate_rigidities(&l, HomogenizationScheme::RuleOfMixtures, &model, 16).unwrap();
        assert!(r.bm[(0, 0)].is_finite());
        assert!(r.bm[(0, 0)] > 0.0);
    }
}
