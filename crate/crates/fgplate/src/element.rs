//! Element-level integration: strain-displacement matrices, stiffness,
//! consistent mass and load vectors for the 8-node quadrilateral.
//!
//! Element DOFs are node-major with the per-node label order of the active
//! model. All in-plane integrals use the full 3x3 Gauss rule.

use nalgebra::{DMatrix, DVector, SMatrix};

use crate::error::{Error, Result};
use crate::kinematics::{BM_SIZE, SHEAR_COMPS};
use crate::mesh::{shape_functions, Mesh};
use crate::model::{DofLabel, ModelKind};
use crate::quadrature::GaussLegendre;
use crate::rigidity::RigidityMatrices;

/// Shape functions and physical-frame derivatives at one point.
#[derive(Debug, Clone, Copy)]
pub struct ShapeData {
    pub n: [f64; 8],
    pub dndx: [f64; 8],
    pub dndy: [f64; 8],
    pub det_j: f64,
    pub x: f64,
    pub y: f64,
}

/// Evaluate the isoparametric map of element `e` at (ξ, η).
pub fn shape_data(mesh: &Mesh, e: usize, xi: f64, eta: f64) -> Result<ShapeData> {
    let (n, d) = shape_functions(xi, eta);
    let nodes = mesh.element_nodes(e);
    let (mut j11, mut j12, mut j21, mut j22) = (0.0, 0.0, 0.0, 0.0);
    let (mut x, mut y) = (0.0, 0.0);
    for i in 0..8 {
        j11 += d[i][0] * nodes[i].x;
        j12 += d[i][0] * nodes[i].y;
        j21 += d[i][1] * nodes[i].x;
        j22 += d[i][1] * nodes[i].y;
        x += n[i] * nodes[i].x;
        y += n[i] * nodes[i].y;
    }
    let det_j = j11 * j22 - j12 * j21;
    if det_j <= 0.0 {
        return Err(Error::Internal(format!(
            "non-positive Jacobian {det_j} in element {e}"
        )));
    }
    let inv = 1.0 / det_j;
    let mut dndx = [0.0; 8];
    let mut dndy = [0.0; 8];
    for i in 0..8 {
        dndx[i] = inv * (j22 * d[i][0] - j12 * d[i][1]);
        dndy[i] = inv * (-j21 * d[i][0] + j11 * d[i][1]);
    }
    Ok(ShapeData {
        n,
        dndx,
        dndy,
        det_j,
        x,
        y,
    })
}

/// Generalized strain-displacement matrix (28 rows) at one point.
///
/// Row layout: five bending/membrane families of four components, then
/// four shear families of two components, matching [`RigidityMatrices`].
pub fn b_matrix(model: ModelKind, sd: &ShapeData) -> DMatrix<f64> {
    let labels = model.dof_labels();
    let dpn = labels.len();
    let mut b = DMatrix::zeros(BM_SIZE + 4 * SHEAR_COMPS, 8 * dpn);
    for i in 0..8 {
        let (n, dx, dy) = (sd.n[i], sd.dndx[i], sd.dndy[i]);
        for (li, &label) in labels.iter().enumerate() {
            let c = i * dpn + li;
            match label {
                DofLabel::U0 => {
                    b[(0, c)] = dx;
                    b[(3, c)] = dy;
                }
                DofLabel::V0 => {
                    b[(1, c)] = dy;
                    b[(3, c)] = dx;
                }
                DofLabel::W0 => {
                    b[(20, c)] = dx;
                    b[(21, c)] = dy;
                }
                DofLabel::ThetaX => {
                    b[(4, c)] = dx;
                    b[(7, c)] = dy;
                    b[(20, c)] = n;
                }
                DofLabel::ThetaY => {
                    b[(5, c)] = dy;
                    b[(7, c)] = dx;
                    b[(21, c)] = n;
                }
                DofLabel::W1 => {
                    b[(2, c)] = n;
                    b[(22, c)] = dx;
                    b[(23, c)] = dy;
                }
                DofLabel::BetaX => {
                    b[(8, c)] = dx;
                    b[(11, c)] = dy;
                    b[(22, c)] = 2.0 * n;
                }
                DofLabel::BetaY => {
                    b[(9, c)] = dy;
                    b[(11, c)] = dx;
                    b[(23, c)] = 2.0 * n;
                }
                DofLabel::Gamma => {
                    b[(6, c)] = 2.0 * n;
                    b[(24, c)] = dx;
                    b[(25, c)] = dy;
                }
                DofLabel::PhiX => {
                    b[(12, c)] = dx;
                    b[(15, c)] = dy;
                    b[(24, c)] = 3.0 * n;
                }
                DofLabel::PhiY => {
                    b[(13, c)] = dy;
                    b[(15, c)] = dx;
                    b[(25, c)] = 3.0 * n;
                }
                DofLabel::PsiX => {
                    b[(16, c)] = dx;
                    b[(19, c)] = dy;
                    b[(26, c)] = n;
                }
                DofLabel::PsiY => {
                    b[(17, c)] = dy;
                    b[(19, c)] = dx;
                    b[(27, c)] = n;
                }
            }
        }
    }
    b
}

/// Assemble the 28x28 generalized constitutive matrix from the rigidity
/// blocks (block diagonal: bending/membrane then shear).
pub fn generalized_rigidity(rig: &RigidityMatrices) -> SMatrix<f64, 28, 28> {
    let mut d = SMatrix::<f64, 28, 28>::zeros();
    d.view_mut((0, 0), (BM_SIZE, BM_SIZE)).copy_from(&rig.bm);
    d.view_mut((BM_SIZE, BM_SIZE), (8, 8)).copy_from(&rig.shear);
    d
}

/// In-plane Gauss rule used everywhere (full integration).
pub fn inplane_rule() -> GaussLegendre {
    GaussLegendre::new(3)
}

/// Integration rule for the transverse-shear energy. The quadratic
/// serendipity element with the shear terms fully integrated stiffens
/// noticeably in the thin regime (a/h around 100 is visibly off at the
/// benchmark mesh); one-order-reduced shear quadrature restores the
/// published thin-plate numbers while the membrane/bending blocks stay
/// fully integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShearIntegration {
    /// 2x2 Gauss on the shear block (selective reduced, the default).
    #[default]
    Reduced,
    /// 3x3 Gauss on everything.
    Full,
}

/// Element stiffness ∫ Bᵀ D B dA, with the shear block integrated by the
/// selected rule.
pub fn element_stiffness(
    mesh: &Mesh,
    e: usize,
    model: ModelKind,
    rig: &RigidityMatrices,
    shear_rule: ShearIntegration,
) -> Result<DMatrix<f64>> {
    let dpn = model.dofs_per_node();
    let mut k = DMatrix::zeros(8 * dpn, 8 * dpn);

    let mut accumulate = |rule: &GaussLegendre, d: &SMatrix<f64, 28, 28>| -> Result<()> {
        for (xi, wx) in rule.nodes.iter().zip(&rule.weights) {
            for (eta, wy) in rule.nodes.iter().zip(&rule.weights) {
                let sd = shape_data(mesh, e, *xi, *eta)?;
                let b = b_matrix(model, &sd);
                let db = d * &b;
                k.gemm_tr(wx * wy * sd.det_j, &b, &db, 1.0);
            }
        }
        Ok(())
    };

    match shear_rule {
        ShearIntegration::Full => {
            accumulate(&inplane_rule(), &generalized_rigidity(rig))?;
        }
        ShearIntegration::Reduced => {
            let mut d_bm = SMatrix::<f64, 28, 28>::zeros();
            d_bm.view_mut((0, 0), (BM_SIZE, BM_SIZE)).copy_from(&rig.bm);
            let mut d_s = SMatrix::<f64, 28, 28>::zeros();
            d_s.view_mut((BM_SIZE, BM_SIZE), (8, 8)).copy_from(&rig.shear);
            accumulate(&inplane_rule(), &d_bm)?;
            accumulate(&GaussLegendre::new(2), &d_s)?;
        }
    }
    Ok(k)
}

/// Index of `label` within its displacement family (u, v or w expansion)
/// paired with which inertia block applies.
enum Family {
    InPlane(usize),
    Transverse(usize),
}

fn family_of(label: DofLabel) -> Family {
    use DofLabel::*;
    match label {
        U0 => Family::InPlane(0),
        ThetaX => Family::InPlane(1),
        BetaX => Family::InPlane(2),
        PhiX => Family::InPlane(3),
        PsiX => Family::InPlane(4),
        V0 => Family::InPlane(0),
        ThetaY => Family::InPlane(1),
        BetaY => Family::InPlane(2),
        PhiY => Family::InPlane(3),
        PsiY => Family::InPlane(4),
        W0 => Family::Transverse(0),
        W1 => Family::Transverse(1),
        Gamma => Family::Transverse(2),
    }
}

fn is_u_family(label: DofLabel) -> bool {
    use DofLabel::*;
    matches!(label, U0 | ThetaX | BetaX | PhiX | PsiX)
}

/// Consistent element mass with in-plane and rotary inertia.
pub fn element_mass(
    mesh: &Mesh,
    e: usize,
    model: ModelKind,
    rig: &RigidityMatrices,
) -> Result<DMatrix<f64>> {
    let labels = model.dof_labels();
    let dpn = labels.len();
    let rule = inplane_rule();
    let mut m = DMatrix::zeros(8 * dpn, 8 * dpn);
    for (xi, wx) in rule.nodes.iter().zip(&rule.weights) {
        for (eta, wy) in rule.nodes.iter().zip(&rule.weights) {
            let sd = shape_data(mesh, e, *xi, *eta)?;
            let w = wx * wy * sd.det_j;
            for i in 0..8 {
                for j in 0..8 {
                    let nn = w * sd.n[i] * sd.n[j];
                    for (li, &la) in labels.iter().enumerate() {
                        for (lj, &lb) in labels.iter().enumerate() {
                            // Kinetic energy has no u-v / u-w cross terms.
                            let coeff = match (family_of(la), family_of(lb)) {
                                (Family::InPlane(fa), Family::InPlane(fb)) => {
                                    if is_u_family(la) == is_u_family(lb) {
                                        rig.inertia_uv[(fa, fb)]
                                    } else {
                                        0.0
                                    }
                                }
                                (Family::Transverse(fa), Family::Transverse(fb)) => {
                                    rig.inertia_w[(fa, fb)]
                                }
                                _ => 0.0,
                            };
                            if coeff != 0.0 {
                                m[(i * dpn + li, j * dpn + lj)] += nn * coeff;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Spatial shape of the applied load.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoadShape {
    /// q0 sin(πx/a) sin(πy/b) (the benchmark load).
    #[default]
    Sinusoidal,
    Uniform,
}

impl LoadShape {
    pub fn eval(self, mesh: &Mesh, x: f64, y: f64) -> f64 {
        match self {
            LoadShape::Sinusoidal => {
                (std::f64::consts::PI * x / mesh.a).sin() * (std::f64::consts::PI * y / mesh.b).sin()
            }
            LoadShape::Uniform => 1.0,
        }
    }

    pub fn eval_dx(self, mesh: &Mesh, x: f64, y: f64) -> f64 {
        match self {
            LoadShape::Sinusoidal => {
                let pi = std::f64::consts::PI;
                (pi / mesh.a) * (pi * x / mesh.a).cos() * (pi * y / mesh.b).sin()
            }
            LoadShape::Uniform => 0.0,
        }
    }

    pub fn eval_dy(self, mesh: &Mesh, x: f64, y: f64) -> f64 {
        match self {
            LoadShape::Sinusoidal => {
                let pi = std::f64::consts::PI;
                (pi / mesh.b) * (pi * x / mesh.a).sin() * (pi * y / mesh.b).cos()
            }
            LoadShape::Uniform => 0.0,
        }
    }
}

/// Surface where the transverse pressure acts. The top surface works
/// through w0, w1 and Γ (the benchmark convention); the reference (mid)
/// surface loads only w0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoadSurface {
    #[default]
    Top,
    MidPlane,
}

/// Consistent nodal loads for a transverse pressure q0 * shape(x, y).
pub fn element_load_mechanical(
    mesh: &Mesh,
    e: usize,
    model: ModelKind,
    q0: f64,
    shape: LoadShape,
    surface: LoadSurface,
    thickness: f64,
) -> Result<DVector<f64>> {
    let labels = model.dof_labels();
    let dpn = labels.len();
    let rule = inplane_rule();
    let mut f = DVector::zeros(8 * dpn);
    for (xi, wx) in rule.nodes.iter().zip(&rule.weights) {
        for (eta, wy) in rule.nodes.iter().zip(&rule.weights) {
            let sd = shape_data(mesh, e, *xi, *eta)?;
            let q = q0 * shape.eval(mesh, sd.x, sd.y) * wx * wy * sd.det_j;
            for i in 0..8 {
                for (li, &label) in labels.iter().enumerate() {
                    let lever = match (surface, label) {
                        (_, DofLabel::W0) => 1.0,
                        (LoadSurface::Top, DofLabel::W1) => 0.5 * thickness,
                        (LoadSurface::Top, DofLabel::Gamma) => 0.25 * thickness * thickness,
                        _ => continue,
                    };
                    f[i * dpn + li] += q * sd.n[i] * lever;
                }
            }
        }
    }
    Ok(f)
}

/// Consistent nodal loads for the thermal field T = t0 (2z/h) shape(x, y),
/// using the pre-integrated thermal resultants.
pub fn element_load_thermal(
    mesh: &Mesh,
    e: usize,
    model: ModelKind,
    rig: &RigidityMatrices,
    t0: f64,
    shape: LoadShape,
) -> Result<DVector<f64>> {
    let dpn = model.dofs_per_node();
    let rule = inplane_rule();
    let mut f = DVector::zeros(8 * dpn);
    for (xi, wx) in rule.nodes.iter().zip(&rule.weights) {
        for (eta, wy) in rule.nodes.iter().zip(&rule.weights) {
            let sd = shape_data(mesh, e, *xi, *eta)?;
            let b = b_matrix(model, &sd);
            let scale = t0 * shape.eval(mesh, sd.x, sd.y) * wx * wy * sd.det_j;
            for c in 0..8 * dpn {
                let mut acc = 0.0;
                for r in 0..BM_SIZE {
                    acc += b[(r, c)] * rig.thermal_bm[r];
                }
                f[c] += scale * acc;
            }
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::{GradingType, HomogenizationScheme, PhaseMaterial, SandwichLayup};
    use crate::mesh::build_mesh;
    use crate::model::PlateModel;
    use crate::rigidity::integrate_rigidities;
    use approx::assert_relative_eq;

    fn homogeneous_layup(e: f64, nu: f64, rho: f64) -> SandwichLayup {
        let phase = PhaseMaterial::new(e, nu, rho, 1e-5, 1.0).unwrap();
        SandwichLayup::from_ratio(GradingType::TypeA, "1-1-1", 0.0, 1.0, phase, phase).unwrap()
    }

    fn rig_for(model: &PlateModel, layup: &SandwichLayup) -> RigidityMatrices {
        integrate_rigidities(layup, HomogenizationScheme::RuleOfMixtures, model, 16).unwrap()
    }

    #[test]
    fn jacobian_constant_on_rectangles() {
        let mesh = build_mesh(2.0, 1.0, 2, 2).unwrap();
        for e in 0..mesh.elements.len() {
            for (xi, eta) in [(0.0, 0.0), (-0.7, 0.3), (0.9, -0.9)] {
                let sd = shape_data(&mesh, e, xi, eta).unwrap();
                assert_relative_eq!(sd.det_j, (1.0 / 2.0) * (0.5 / 2.0), max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn stiffness_symmetric_and_rigid_motion_free() {
        let mesh = build_mesh(1.3, 0.9, 1, 1).unwrap();
        for kind in [
            ModelKind::Hsdt13,
            ModelKind::Hsdt11,
            ModelKind::Hsdt9,
            ModelKind::Fsdt5,
        ] {
            let model = PlateModel::new(kind);
            let layup = homogeneous_layup(200e9, 0.3, 7800.0);
            let rig = rig_for(&model, &layup);
            let k = element_stiffness(&mesh, 0, kind, &rig, ShearIntegration::Full).unwrap();
            let norm = k.amax();
            for i in 0..k.nrows() {
                for j in 0..k.ncols() {
                    assert_relative_eq!(k[(i, j)], k[(j, i)], epsilon = 1e-9 * norm);
                }
            }
            // Uniform u0 translation produces no force.
            let dpn = kind.dofs_per_node();
            let mut d = DVector::zeros(8 * dpn);
            for i in 0..8 {
                d[i * dpn] = 1.0;
            }
            let r = &k * &d;
            assert!(r.amax() <= 1e-9 * norm, "rigid residual {}", r.amax());
        }
    }

    #[test]
    fn zero_modulus_gives_zero_stiffness() {
        // Degenerate modulus is rejected by the constitutive law, so build
        // the scaled-down test through a vanishing load instead: a zeroed
        // rigidity must produce a zero matrix.
        let mesh = build_mesh(1.0, 1.0, 1, 1).unwrap();
        let model = PlateModel::new(ModelKind::Fsdt5);
        let layup = homogeneous_layup(1.0, 0.0, 1.0);
        let mut rig = rig_for(&model, &layup);
        rig.bm.fill(0.0);
        rig.shear.fill(0.0);
        let k = element_stiffness(&mesh, 0, ModelKind::Fsdt5, &rig, ShearIntegration::Full).unwrap();
        assert_eq!(k.amax(), 0.0);
    }

    #[test]
    fn mass_conserves_total_and_is_psd() {
        let rho = 2500.0;
        let (a, b) = (1.7, 1.1);
        let mesh = build_mesh(a, b, 2, 2).unwrap();
        let model = PlateModel::new(ModelKind::Hsdt13);
        let layup = homogeneous_layup(70e9, 0.3, rho);
        let rig = rig_for(&model, &layup);
        let dpn = 13;
        let mut total_w0 = 0.0;
        for e in 0..mesh.elements.len() {
            let m = element_mass(&mesh, e, ModelKind::Hsdt13, &rig).unwrap();
            // Sum of all w0-w0 entries = element mass.
            for i in 0..8 {
                for j in 0..8 {
                    total_w0 += m[(i * dpn + 2, j * dpn + 2)];
                }
            }
            // PSD check via symmetric eigenvalues.
            let sym = nalgebra::SymmetricEigen::new(m.clone());
            let max = sym.eigenvalues.amax();
            for &ev in sym.eigenvalues.iter() {
                assert!(ev >= -1e-12 * max, "mass eigenvalue {ev}");
            }
        }
        assert_relative_eq!(total_w0, rho * a * b * 1.0, max_relative = 1e-12);
    }

    #[test]
    fn sinusoidal_load_total() {
        let (a, b, q0) = (2.0, 1.0, 5.0);
        let mesh = build_mesh(a, b, 8, 8).unwrap();
        let model = ModelKind::Fsdt5;
        let mut total = 0.0;
        for e in 0..mesh.elements.len() {
            let f = element_load_mechanical(
                &mesh,
                e,
                model,
                q0,
                LoadShape::Sinusoidal,
                LoadSurface::MidPlane,
                1.0,
            )
            .unwrap();
            for i in 0..8 {
                total += f[i * 5 + 2];
            }
        }
        let exact = q0 * a * b * 4.0 / std::f64::consts::PI.powi(2);
        assert_relative_eq!(total, exact, max_relative = 1e-3);
    }

    #[test]
    fn zero_amplitude_loads_vanish() {
        let mesh = build_mesh(1.0, 1.0, 1, 1).unwrap();
        let model = PlateModel::new(ModelKind::Hsdt13);
        let layup = homogeneous_layup(70e9, 0.3, 2700.0);
        let rig = rig_for(&model, &layup);
        let f = element_load_mechanical(
            &mesh,
            0,
            ModelKind::Hsdt13,
            0.0,
            LoadShape::Sinusoidal,
            LoadSurface::MidPlane,
            1.0,
        )
        .unwrap();
        assert_eq!(f.amax(), 0.0);
        let f = element_load_thermal(&mesh, 0, ModelKind::Hsdt13, &rig, 0.0, LoadShape::Sinusoidal)
            .unwrap();
        assert_eq!(f.amax(), 0.0);
    }

    #[test]
    fn thermal_load_zero_for_zero_expansion() {
        let phase = PhaseMaterial::new(70e9, 0.3, 2700.0, 0.0, 1.0).unwrap();
        let layup =
            SandwichLayup::from_ratio(GradingType::TypeA, "1-1-1", 0.0, 1.0, phase, phase).unwrap();
        let mesh = build_mesh(1.0, 1.0, 1, 1).unwrap();
        let model = PlateModel::new(ModelKind::Hsdt13);
        let rig = rig_for(&model, &layup);
        let f = element_load_thermal(&mesh, 0, ModelKind::Hsdt13, &rig, 3.0, LoadShape::Sinusoidal)
            .unwrap();
        assert_eq!(f.amax(), 0.0);
    }

    #[test]
    fn over_integration_matches_full_rule() {
        // The integrand is polynomial on affine rectangles, so the 3x3 rule
        // is already exact; a 6x6 rule must agree to round-off.
        let mesh = build_mesh(1.3, 0.7, 1, 1).unwrap();
        let model = PlateModel::new(ModelKind::Hsdt13);
        let layup = homogeneous_layup(200e9, 0.25, 7800.0);
        let rig = rig_for(&model, &layup);
        let k3 = element_stiffness(&mesh, 0, ModelKind::Hsdt13, &rig, ShearIntegration::Full).unwrap();

        let rule = GaussLegendre::new(6);
        let d = generalized_rigidity(&rig);
        let mut k6 = DMatrix::zeros(k3.nrows(), k3.ncols());
        for (xi, wx) in rule.nodes.iter().zip(&rule.weights) {
            for (eta, wy) in rule.nodes.iter().zip(&rule.weights) {
                let sd = shape_data(&mesh, 0, *xi, *eta).unwrap();
                let b = b_matrix(ModelKind::Hsdt13, &sd);
                let db = d * &b;
                k6.gemm_tr(wx * wy * sd.det_j, &b, &db, 1.0);
            }
        }
        let norm = k3.amax();
        for i in 0..k3.nrows() {
            for j in 0..k3.ncols() {
                assert_relative_eq!(k3[(i, j)], k6[(i, j)], epsilon = 1e-10 * norm);
            }
        }
    }

    #[test]
    fn element_nullspace_has_no_spurious_modes() {
        // Full integration: the only zero-energy modes of one element are
        // the strain-free fields of the active DOF set (6 for every model).
        let mesh = build_mesh(0.8, 1.2, 1, 1).unwrap();
        for kind in [
            ModelKind::Hsdt13,
            ModelKind::Hsdt11,
            ModelKind::Hsdt9,
            ModelKind::Fsdt5,
        ] {
            let model = PlateModel::new(kind);
            let layup = homogeneous_layup(200e9, 0.3, 7800.0);
            let rig = rig_for(&model, &layup);
            let k = element_stiffness(&mesh, 0, kind, &rig, ShearIntegration::Full).unwrap();
            let sym = nalgebra::SymmetricEigen::new(k);
            let max = sym.eigenvalues.amax();
            let zeros = sym
                .eigenvalues
                .iter()
                .filter(|&&ev| ev.abs() < 1e-9 * max)
                .count();
            assert_eq!(zeros, 6, "model {kind:?}");
        }
    }
}
