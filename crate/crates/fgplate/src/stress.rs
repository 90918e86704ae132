//! Field evaluation and stress recovery on a solved displacement vector.
//!
//! In-plane stresses come from the constitutive law at the query point.
//! Transverse shear is recovered by integrating the three-dimensional
//! equilibrium equations through the thickness,
//!
//! ```text
//! σxz(z) = -∫ (∂σxx/∂x + ∂σxy/∂y) dz'     from -h/2, σxz(-h/2) = 0
//! ```
//!
//! The in-plane stress derivatives are sampled at the 2x2 inner Gauss
//! points of the containing element (where the quadratic basis is most
//! accurate) and interpolated bilinearly to the query point.

use nalgebra::DVector;

use crate::element::LoadShape;
use crate::error::Result;
use crate::kinematics::{
    bm_z_functions, displacement_field_in_layer, layer_stiffness, strain_vectors,
    strain_vectors_from, GeneralizedStrains, MidsurfaceState, ZigZag, BM_COMPS, BM_FAMILIES,
};
use crate::material::{HomogenizationScheme, PropertyKind, SandwichLayup};
use crate::mesh::{shape_functions, shape_second_derivatives, Mesh};
use crate::model::ModelKind;
use crate::quadrature::GaussLegendre;

/// Thermal field active during the solve, needed to subtract the thermal
/// strain when converting strains to stresses.
#[derive(Debug, Clone, Copy)]
pub struct ThermalContext {
    pub t0: f64,
    pub shape: LoadShape,
}

/// Second derivatives of the 13 generalized variables at a point.
#[derive(Debug, Clone, Copy, Default)]
pub struct MidsurfaceCurvatures {
    pub dxx: [f64; 13],
    pub dxy: [f64; 13],
    pub dyy: [f64; 13],
}

/// Evaluates displacements, strains and stresses of a solved field.
pub struct FieldEvaluator<'a> {
    pub mesh: &'a Mesh,
    pub model: ModelKind,
    pub layup: &'a SandwichLayup,
    pub scheme: HomogenizationScheme,
    /// Full node-major DOF vector (constrained entries included).
    pub dofs: &'a DVector<f64>,
    pub thermal: Option<ThermalContext>,
}

#[derive(Debug, Clone, Copy)]
pub struct ProfileRow {
    pub z: f64,
    pub layer: usize,
    pub value: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct ShearProfileRow {
    pub z: f64,
    pub layer: usize,
    pub sigma_xz: f64,
    pub sigma_yz: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ProfileQuantity {
    #[serde(rename = "u")]
    U,
    #[serde(rename = "v")]
    V,
    #[serde(rename = "w")]
    W,
    #[serde(rename = "sxx")]
    SigmaXx,
    #[serde(rename = "syy")]
    SigmaYy,
    #[serde(rename = "szz")]
    SigmaZz,
    #[serde(rename = "sxy")]
    SigmaXy,
    #[serde(rename = "sxz")]
    SigmaXz,
    #[serde(rename = "syz")]
    SigmaYz,
}

impl ProfileQuantity {
    pub fn name(self) -> &'static str {
        match self {
            ProfileQuantity::U => "u",
            ProfileQuantity::V => "v",
            ProfileQuantity::W => "w",
            ProfileQuantity::SigmaXx => "sxx",
            ProfileQuantity::SigmaYy => "syy",
            ProfileQuantity::SigmaZz => "szz",
            ProfileQuantity::SigmaXy => "sxy",
            ProfileQuantity::SigmaXz => "sxz",
            ProfileQuantity::SigmaYz => "syz",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "u" => Some(Self::U),
            "v" => Some(Self::V),
            "w" => Some(Self::W),
            "sxx" => Some(Self::SigmaXx),
            "syy" => Some(Self::SigmaYy),
            "szz" => Some(Self::SigmaZz),
            "sxy" => Some(Self::SigmaXy),
            "sxz" => Some(Self::SigmaXz),
            "syz" => Some(Self::SigmaYz),
            _ => None,
        }
    }
}

impl<'a> FieldEvaluator<'a> {
    /// Mid-surface values and first derivatives at (x, y).
    pub fn state_at(&self, x: f64, y: f64) -> Result<MidsurfaceState> {
        let (st, _) = self.state_with_curvatures(x, y)?;
        Ok(st)
    }

    fn state_with_curvatures(
        &self,
        x: f64,
        y: f64,
    ) -> Result<(MidsurfaceState, MidsurfaceCurvatures)> {
        let (e, xi, eta) = self.mesh.locate(x, y)?;
        self.state_in_element(e, xi, eta)
    }

    fn state_in_element(
        &self,
        e: usize,
        xi: f64,
        eta: f64,
    ) -> Result<(MidsurfaceState, MidsurfaceCurvatures)> {
        let labels = self.model.dof_labels();
        let dpn = labels.len();
        let conn = &self.mesh.elements[e];
        let nodes = self.mesh.element_nodes(e);
        // Uniform rectangular elements: the map is affine.
        let hx = nodes[1].x - nodes[0].x;
        let hy = nodes[3].y - nodes[0].y;
        let (sx, sy) = (2.0 / hx, 2.0 / hy);

        let (n, d) = shape_functions(xi, eta);
        let d2 = shape_second_derivatives(xi, eta);
        let mut st = MidsurfaceState::default();
        let mut cv = MidsurfaceCurvatures::default();
        for (i, &node) in conn.iter().enumerate() {
            for (li, &label) in labels.iter().enumerate() {
                let v = self.dofs[node * dpn + li];
                let slot = label as usize;
                st.value[slot] += n[i] * v;
                st.dx[slot] += d[i][0] * sx * v;
                st.dy[slot] += d[i][1] * sy * v;
                cv.dxx[slot] += d2[i][0] * sx * sx * v;
                cv.dxy[slot] += d2[i][1] * sx * sy * v;
                cv.dyy[slot] += d2[i][2] * sy * sy * v;
            }
        }
        Ok((st, cv))
    }

    /// Displacement vector (u, v, w) at a point of the plate volume.
    pub fn displacement(&self, x: f64, y: f64, z: f64) -> Result<(f64, f64, f64)> {
        let layer = self.layup.layer_of(z)?;
        self.displacement_in_layer(x, y, layer, z)
    }

    pub fn displacement_in_layer(
        &self,
        x: f64,
        y: f64,
        layer: usize,
        z: f64,
    ) -> Result<(f64, f64, f64)> {
        let st = self.state_at(x, y)?;
        Ok(displacement_field_in_layer(
            self.model, &st, self.layup, layer, z,
        ))
    }

    /// In-plane stress (σxx, σyy, σzz, σxy) at a volume point.
    pub fn in_plane_stress(&self, x: f64, y: f64, z: f64) -> Result<[f64; 4]> {
        let layer = self.layup.layer_of(z)?;
        self.in_plane_stress_in_layer(x, y, layer, z)
    }

    pub fn in_plane_stress_in_layer(
        &self,
        x: f64,
        y: f64,
        layer: usize,
        z: f64,
    ) -> Result<[f64; 4]> {
        let st = self.state_at(x, y)?;
        let strains = strain_vectors(self.model, &st);
        self.stress_from_strains(&strains, x, y, layer, z)
    }

    fn stress_from_strains(
        &self,
        strains: &GeneralizedStrains,
        x: f64,
        y: f64,
        layer: usize,
        z: f64,
    ) -> Result<[f64; 4]> {
        let zz = ZigZag::new(self.layup, layer);
        let mut eps = strains.bm_at(&zz, z);
        if let Some(th) = self.thermal {
            let alpha = self.thermal_alpha(layer, z);
            let t = th.t0 * (2.0 * z / self.layup.thickness()) * th.shape.eval(self.mesh, x, y);
            for item in eps.iter_mut().take(3) {
                *item -= alpha * t;
            }
        }
        let vc = self.layup.volume_fraction_ceramic_in_layer(layer, z);
        let (e, nu) = self.layup.elastic_at_fraction(self.scheme, vc);
        let (q, _) = layer_stiffness(self.model, e, nu)?;
        let mut sigma = [0.0; 4];
        for r in 0..4 {
            for c in 0..BM_COMPS {
                sigma[r] += q[(r, c)] * eps[c];
            }
        }
        Ok(sigma)
    }

    fn thermal_alpha(&self, layer: usize, z: f64) -> f64 {
        let vc = self.layup.volume_fraction_ceramic_in_layer(layer, z);
        self.layup
            .effective_property_at_fraction(self.scheme, vc, PropertyKind::ThermalExpansion)
    }

    /// Transverse shear from 3-D equilibrium at all sample heights
    /// (`per_layer` points per layer, interfaces included in each layer).
    pub fn transverse_shear_profile(
        &self,
        x: f64,
        y: f64,
        per_layer: usize,
    ) -> Result<Vec<ShearProfileRow>> {
        let (e, xiq, etaq) = self.mesh.locate(x, y)?;

        // Strain x/y-derivatives at the 2x2 Gauss points of the element.
        let g = 1.0 / 3.0f64.sqrt();
        let pts = [(-g, -g), (g, -g), (-g, g), (g, g)];
        let mut dex = [GeneralizedStrains::default(); 4];
        let mut dey = [GeneralizedStrains::default(); 4];
        for (p, &(xi, eta)) in pts.iter().enumerate() {
            let (st, cv) = self.state_in_element(e, xi, eta)?;
            dex[p] = strain_vectors_from(self.model, |l| {
                let i = l as usize;
                (st.dx[i], cv.dxx[i], cv.dxy[i])
            });
            dey[p] = strain_vectors_from(self.model, |l| {
                let i = l as usize;
                (st.dy[i], cv.dxy[i], cv.dyy[i])
            });
        }
        // Bilinear interpolation of each sampled component to the query.
        let interp = |vals: [f64; 4]| -> f64 {
            let c0 = 0.25 * (vals[0] + vals[1] + vals[2] + vals[3]);
            let c1 = 0.25 * (-vals[0] + vals[1] - vals[2] + vals[3]) / g;
            let c2 = 0.25 * (-vals[0] - vals[1] + vals[2] + vals[3]) / g;
            let c3 = 0.25 * (vals[0] - vals[1] - vals[2] + vals[3]) / (g * g);
            c0 + c1 * xiq + c2 * etaq + c3 * xiq * etaq
        };
        let mut dex_q = GeneralizedStrains::default();
        let mut dey_q = GeneralizedStrains::default();
        for fam in 0..BM_FAMILIES {
            for c in 0..BM_COMPS {
                dex_q.bm[fam][c] = interp(std::array::from_fn(|p| dex[p].bm[fam][c]));
                dey_q.bm[fam][c] = interp(std::array::from_fn(|p| dey[p].bm[fam][c]));
            }
        }

        // In-plane divergence (∂σxx/∂x + ∂σxy/∂y, ∂σxy/∂x + ∂σyy/∂y) at z.
        let h = self.layup.thickness();
        let divergence = |layer: usize, z: f64| -> Result<[f64; 2]> {
            let zz = ZigZag::new(self.layup, layer);
            let f = bm_z_functions(&zz, z);
            let mut ex = [0.0; BM_COMPS]; // ∂ε_bm/∂x at z
            let mut ey = [0.0; BM_COMPS];
            for fam in 0..BM_FAMILIES {
                for c in 0..BM_COMPS {
                    ex[c] += f[fam] * dex_q.bm[fam][c];
                    ey[c] += f[fam] * dey_q.bm[fam][c];
                }
            }
            if let Some(th) = self.thermal {
                let alpha = self.thermal_alpha(layer, z);
                let tz = th.t0 * (2.0 * z / h);
                let tdx = tz * th.shape.eval_dx(self.mesh, x, y);
                let tdy = tz * th.shape.eval_dy(self.mesh, x, y);
                for c in 0..3 {
                    ex[c] -= alpha * tdx;
                    ey[c] -= alpha * tdy;
                }
            }
            let vc = self.layup.volume_fraction_ceramic_in_layer(layer, z);
            let (e_mod, nu) = self.layup.elastic_at_fraction(self.scheme, vc);
            let (q, _) = layer_stiffness(self.model, e_mod, nu)?;
            let mut dsxx_dx = 0.0;
            let mut dsyy_dy = 0.0;
            let mut dsxy_dx = 0.0;
            let mut dsxy_dy = 0.0;
            for c in 0..BM_COMPS {
                dsxx_dx += q[(0, c)] * ex[c];
                dsyy_dy += q[(1, c)] * ey[c];
                dsxy_dx += q[(3, c)] * ex[c];
                dsxy_dy += q[(3, c)] * ey[c];
            }
            Ok([dsxx_dx + dsxy_dy, dsxy_dx + dsyy_dy])
        };

        // Cumulative integration from the bottom face.
        let rule = GaussLegendre::new(8);
        let per_layer = per_layer.max(2);
        let mut rows = Vec::with_capacity(3 * per_layer);
        let mut acc = [0.0; 2];
        for layer in 0..3 {
            let (za, zb) = self.layup.layer_bounds(layer);
            if zb - za <= 0.0 {
                continue;
            }
            for i in 0..per_layer {
                let z = za + (zb - za) * i as f64 / (per_layer - 1) as f64;
                if i > 0 {
                    let z_prev = za + (zb - za) * (i - 1) as f64 / (per_layer - 1) as f64;
                    let mut inc = [0.0; 2];
                    for (zq, wq) in rule.mapped(z_prev, z) {
                        let d = divergence(layer, zq)?;
                        inc[0] += wq * d[0];
                        inc[1] += wq * d[1];
                    }
                    acc[0] -= inc[0];
                    acc[1] -= inc[1];
                }
                rows.push(ShearProfileRow {
                    z,
                    layer,
                    sigma_xz: acc[0],
                    sigma_yz: acc[1],
                });
            }
        }
        Ok(rows)
    }

    /// Signed through-thickness extrema of (σxz, σyz) at (x, y).
    pub fn transverse_shear_extremum(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        let rows = self.transverse_shear_profile(x, y, 41)?;
        let mut sxz = 0.0f64;
        let mut syz = 0.0f64;
        for r in &rows {
            if r.sigma_xz.abs() > sxz.abs() {
                sxz = r.sigma_xz;
            }
            if r.sigma_yz.abs() > syz.abs() {
                syz = r.sigma_yz;
            }
        }
        Ok((sxz, syz))
    }

    /// Through-thickness profile of one quantity at (x, y); interface
    /// heights appear once per adjacent layer.
    pub fn through_thickness_profile(
        &self,
        x: f64,
        y: f64,
        quantity: ProfileQuantity,
        per_layer: usize,
    ) -> Result<Vec<ProfileRow>> {
        let per_layer = per_layer.max(2);
        match quantity {
            ProfileQuantity::SigmaXz | ProfileQuantity::SigmaYz => {
                let rows = self.transverse_shear_profile(x, y, per_layer)?;
                Ok(rows
                    .into_iter()
                    .map(|r| ProfileRow {
                        z: r.z,
                        layer: r.layer,
                        value: if quantity == ProfileQuantity::SigmaXz {
                            r.sigma_xz
                        } else {
                            r.sigma_yz
                        },
                    })
                    .collect())
            }
            _ => {
                let mut rows = Vec::with_capacity(3 * per_layer);
                for layer in 0..3 {
                    let (za, zb) = self.layup.layer_bounds(layer);
                    if zb - za <= 0.0 {
                        continue;
                    }
                    for i in 0..per_layer {
                        let z = za + (zb - za) * i as f64 / (per_layer - 1) as f64;
                        let value = match quantity {
                            ProfileQuantity::U => self.displacement_in_layer(x, y, layer, z)?.0,
                            ProfileQuantity::V => self.displacement_in_layer(x, y, layer, z)?.1,
                            ProfileQuantity::W => self.displacement_in_layer(x, y, layer, z)?.2,
                            ProfileQuantity::SigmaXx => {
                                self.in_plane_stress_in_layer(x, y, layer, z)?[0]
                            }
                            ProfileQuantity::SigmaYy => {
                                self.in_plane_stress_in_layer(x, y, layer, z)?[1]
                            }
                            ProfileQuantity::SigmaZz => {
                                self.in_plane_stress_in_layer(x, y, layer, z)?[2]
                            }
                            ProfileQuantity::SigmaXy => {
                                self.in_plane_stress_in_layer(x, y, layer, z)?[3]
                            }
                            _ => unreachable!(),
                        };
                        rows.push(ProfileRow { z, layer, value });
                    }
                }
                Ok(rows)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{LoadCase, PlateProblem};
    use crate::element::LoadSurface;
    use crate::material::{GradingType, PhaseMaterial};
    use crate::mesh::build_mesh;
    use crate::model::PlateModel;
    use crate::solve::solve_static;
    use approx::assert_relative_eq;

    fn solved_homogeneous(
        kind: ModelKind,
        a_over_h: f64,
        nx: usize,
    ) -> (PlateProblem, DVector<f64>) {
        let mesh = build_mesh(a_over_h, a_over_h, nx, nx).unwrap();
        let phase = PhaseMaterial::new(70e9, 0.3, 2707.0, 23.4e-6, 233.0).unwrap();
        let layup =
            SandwichLayup::from_ratio(GradingType::TypeA, "1-1-1", 0.0, 1.0, phase, phase)
                .unwrap();
        let p = PlateProblem::new(
            mesh,
            PlateModel::new(kind),
            layup,
            HomogenizationScheme::RuleOfMixtures,
            16,
        )
        .unwrap();
        let dofs = p.simply_supported_dofs();
        let sys = p
            .assemble(
                &dofs,
                &LoadCase::Mechanical {
                    q0: 1000.0,
                    shape: LoadShape::Sinusoidal,
                    surface: LoadSurface::MidPlane,
                },
            )
            .unwrap();
        let sol = solve_static(&sys).unwrap();
        (p, sol.full)
    }

    #[test]
    fn zero_solution_zero_stress() {
        let (p, _) = solved_homogeneous(ModelKind::Fsdt5, 5.0, 2);
        let zero = DVector::zeros(p.mesh.node_count() * 5);
        let ev = FieldEvaluator {
            mesh: &p.mesh,
            model: ModelKind::Fsdt5,
            layup: &p.layup,
            scheme: p.scheme,
            dofs: &zero,
            thermal: None,
        };
        let s = ev.in_plane_stress(1.0, 1.0, 0.2).unwrap();
        assert_eq!(s, [0.0; 4]);
        let rows = ev.transverse_shear_profile(1.0, 1.0, 5).unwrap();
        for r in rows {
            assert_eq!(r.sigma_xz, 0.0);
        }
    }

    #[test]
    fn homogeneous_bending_stress_linear_in_z() {
        // Center stress of a homogeneous plate: σxx linear in z, zero at
        // the mid-surface, tensile on the face toward which the plate
        // deflects.
        let (p, full) = solved_homogeneous(ModelKind::Fsdt5, 10.0, 4);
        let ev = FieldEvaluator {
            mesh: &p.mesh,
            model: ModelKind::Fsdt5,
            layup: &p.layup,
            scheme: p.scheme,
            dofs: &full,
            thermal: None,
        };
        let (xc, yc) = (5.0, 5.0);
        let top = ev.in_plane_stress(xc, yc, 0.5).unwrap()[0];
        let bottom = ev.in_plane_stress(xc, yc, -0.5).unwrap()[0];
        let mid = ev.in_plane_stress(xc, yc, 0.0).unwrap()[0];
        let quarter = ev.in_plane_stress(xc, yc, 0.25).unwrap()[0];
        assert_relative_eq!(top, -bottom, max_relative = 1e-9);
        assert!(mid.abs() < 1e-9 * top.abs());
        assert_relative_eq!(quarter, 0.5 * top, max_relative = 1e-9);
        assert!(top > 0.0, "deflection-side face should be tensile, got {top}");
    }

    #[test]
    fn fsdt_parabolic_shear_recovery() {
        // Equilibrium recovery on a homogeneous FSDT plate: parabolic
        // profile with max 1.5x the mean, zero at both faces.
        let (p, full) = solved_homogeneous(ModelKind::Fsdt5, 10.0, 8);
        let ev = FieldEvaluator {
            mesh: &p.mesh,
            model: ModelKind::Fsdt5,
            layup: &p.layup,
            scheme: p.scheme,
            dofs: &full,
            thermal: None,
        };
        let rows = ev.transverse_shear_profile(0.0, 5.0, 21).unwrap();
        let max = rows
            .iter()
            .map(|r| r.sigma_xz.abs())
            .fold(0.0f64, f64::max);
        let mean: f64 =
            rows.iter().map(|r| r.sigma_xz).sum::<f64>() / rows.len() as f64;
        assert_relative_eq!(max, 1.5 * mean.abs(), max_relative = 0.02);
        // Traction-free top face.
        let top = rows.last().unwrap();
        assert!(
            top.sigma_xz.abs() <= 0.01 * max,
            "top-face residual {} vs max {max}",
            top.sigma_xz
        );
        // Bottom face is exactly zero by construction.
        assert_eq!(rows[0].sigma_xz, 0.0);
    }

    #[test]
    fn static_bending_u_profile_odd() {
        // Symmetric homogeneous plate: u(z) odd through the thickness.
        let (p, full) = solved_homogeneous(ModelKind::Hsdt13, 5.0, 4);
        let ev = FieldEvaluator {
            mesh: &p.mesh,
            model: ModelKind::Hsdt13,
            layup: &p.layup,
            scheme: p.scheme,
            dofs: &full,
            thermal: None,
        };
        let (x, y) = (0.0, 2.5);
        let scale = ev.displacement(x, y, 0.5).unwrap().0.abs();
        for z in [0.1, 0.25, 0.4, 0.5] {
            let up = ev.displacement(x, y, z).unwrap().0;
            let dn = ev.displacement(x, y, -z).unwrap().0;
            assert_relative_eq!(up, -dn, epsilon = 1e-8 * scale);
        }
    }

    #[test]
    fn fsdt_profile_is_single_linear_segment() {
        let (p, full) = solved_homogeneous(ModelKind::Fsdt5, 5.0, 2);
        let ev = FieldEvaluator {
            mesh: &p.mesh,
            model: ModelKind::Fsdt5,
            layup: &p.layup,
            scheme: p.scheme,
            dofs: &full,
            thermal: None,
        };
        let rows = ev
            .through_thickness_profile(0.0, 2.5, ProfileQuantity::U, 5)
            .unwrap();
        // Fit through first and last: every sample must lie on the line.
        let (z0, u0) = (rows[0].z, rows[0].value);
        let last = rows.last().unwrap();
        let slope = (last.value - u0) / (last.z - z0);
        for r in &rows {
            assert_relative_eq!(r.value, u0 + slope * (r.z - z0), max_relative = 1e-9);
        }
        // Interfaces are duplicated with layer tags.
        assert_eq!(rows.len(), 15);
        assert_eq!(rows[4].z, rows[5].z);
        assert_ne!(rows[4].layer, rows[5].layer);
    }
}
