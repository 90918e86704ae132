//! Through-thickness kinematics shared by all plate theories: the zig-zag
//! function, the layerwise displacement expansion, the generalized strain
//! vectors and the layer constitutive matrices.
//!
//! Generalized strain layout. The bending/membrane strain at height z in
//! layer k is
//!
//! ```text
//! e_bm(z) = e0 + z*e1 + z^2*e2 + z^3*e3 + S_k(z)*e4      (4 components)
//! e_s(z)  = g0 + z*g1 + z^2*g2 + S_k'(z)*g3              (2 components)
//! ```
//!
//! with component order (xx, yy, zz, xy) for `e_i` and (xz, yz) for `g_i`.
//! Stacking the nine vectors gives a 28-component generalized strain and a
//! 28x28 pre-integrated rigidity (20 bending/membrane + 8 shear entries).

use nalgebra::{Matrix2, Matrix4, SMatrix};

use crate::error::{Error, Result};
use crate::material::SandwichLayup;
use crate::model::{DofLabel, ModelKind};

/// Number of z-expansion families in the bending/membrane strain.
pub const BM_FAMILIES: usize = 5;
/// Components per bending/membrane family: (xx, yy, zz, xy).
pub const BM_COMPS: usize = 4;
/// Number of z-expansion families in the transverse shear strain.
pub const SHEAR_FAMILIES: usize = 4;
/// Components per shear family: (xz, yz).
pub const SHEAR_COMPS: usize = 2;
/// Stacked bending/membrane generalized strain size.
pub const BM_SIZE: usize = BM_FAMILIES * BM_COMPS;
/// Stacked shear generalized strain size.
pub const SHEAR_SIZE: usize = SHEAR_FAMILIES * SHEAR_COMPS;

/// Piecewise-linear zig-zag function restricted to one layer.
///
/// `S_k(z) = 2 (-1)^k (z - center)/thickness` in the 1-based layer count,
/// which takes the values -1 and +1 alternately at the interfaces.
#[derive(Debug, Clone, Copy)]
pub struct ZigZag {
    /// 0-based layer index.
    pub layer: usize,
    pub center: f64,
    pub thickness: f64,
}

impl ZigZag {
    pub fn new(layup: &SandwichLayup, layer: usize) -> Self {
        let (a, b) = layup.layer_bounds(layer);
        ZigZag {
            layer,
            center: 0.5 * (a + b),
            thickness: b - a,
        }
    }

    fn sign(&self) -> f64 {
        // (-1)^k with k 1-based.
        if self.layer % 2 == 0 {
            -1.0
        } else {
            1.0
        }
    }

    pub fn value(&self, z: f64) -> f64 {
        2.0 * self.sign() * (z - self.center) / self.thickness
    }

    /// dS/dz, constant within the layer.
    pub fn slope(&self) -> f64 {
        2.0 * self.sign() / self.thickness
    }
}

/// The five bending/membrane z-functions [1, z, z^2, z^3, S_k].
pub fn bm_z_functions(zz: &ZigZag, z: f64) -> [f64; BM_FAMILIES] {
    [1.0, z, z * z, z * z * z, zz.value(z)]
}

/// The four shear z-functions [1, z, z^2, dS_k/dz].
pub fn shear_z_functions(zz: &ZigZag, z: f64) -> [f64; SHEAR_FAMILIES] {
    [1.0, z, z * z, zz.slope()]
}

/// Values and first derivatives of the 13 generalized variables at a
/// mid-surface point, indexed by the canonical DOF order.
#[derive(Debug, Clone, Copy, Default)]
pub struct MidsurfaceState {
    pub value: [f64; 13],
    pub dx: [f64; 13],
    pub dy: [f64; 13],
}

impl MidsurfaceState {
    pub fn get(&self, l: DofLabel) -> f64 {
        self.value[l as usize]
    }
    pub fn get_dx(&self, l: DofLabel) -> f64 {
        self.dx[l as usize]
    }
    pub fn get_dy(&self, l: DofLabel) -> f64 {
        self.dy[l as usize]
    }
    pub fn set(&mut self, l: DofLabel, v: f64) {
        self.value[l as usize] = v;
    }
}

/// The nine generalized strain vectors of the expansion.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GeneralizedStrains {
    /// e0..e4, each (xx, yy, zz, xy).
    pub bm: [[f64; BM_COMPS]; BM_FAMILIES],
    /// g0..g3, each (xz, yz).
    pub shear: [[f64; SHEAR_COMPS]; SHEAR_FAMILIES],
}

impl GeneralizedStrains {
    /// Physical bending/membrane strain at height z in layer k.
    pub fn bm_at(&self, zz: &ZigZag, z: f64) -> [f64; BM_COMPS] {
        let f = bm_z_functions(zz, z);
        let mut out = [0.0; BM_COMPS];
        for (fam, zf) in f.iter().enumerate() {
            for c in 0..BM_COMPS {
                out[c] += zf * self.bm[fam][c];
            }
        }
        out
    }

    /// Physical transverse shear strain at height z in layer k.
    pub fn shear_at(&self, zz: &ZigZag, z: f64) -> [f64; SHEAR_COMPS] {
        let f = shear_z_functions(zz, z);
        let mut out = [0.0; SHEAR_COMPS];
        for (fam, zf) in f.iter().enumerate() {
            for c in 0..SHEAR_COMPS {
                out[c] += zf * self.shear[fam][c];
            }
        }
        out
    }

    /// Flattened 28-component vector (bm families first, then shear).
    pub fn stacked(&self) -> SMatrix<f64, 28, 1> {
        let mut v = SMatrix::<f64, 28, 1>::zeros();
        for fam in 0..BM_FAMILIES {
            for c in 0..BM_COMPS {
                v[fam * BM_COMPS + c] = self.bm[fam][c];
            }
        }
        for fam in 0..SHEAR_FAMILIES {
            for c in 0..SHEAR_COMPS {
                v[BM_SIZE + fam * SHEAR_COMPS + c] = self.shear[fam][c];
            }
        }
        v
    }
}

/// Displacement (u, v, w) of the expansion at height z inside layer
/// `layer`, for the DOF subset retained by `model`.
pub fn displacement_field(
    model: ModelKind,
    state: &MidsurfaceState,
    layup: &SandwichLayup,
    z: f64,
) -> Result<(f64, f64, f64)> {
    let [z1, _, _, z4] = layup.z_interfaces;
    if z < z1 - 1e-12 || z > z4 + 1e-12 {
        return Err(Error::OutOfDomain(format!("z = {z} outside thickness")));
    }
    let layer = layup.layer_of(z)?;
    Ok(displacement_field_in_layer(model, state, layup, layer, z))
}

/// Same as [`displacement_field`] with an explicit layer index, so values
/// exactly at an interface can be evaluated from either side.
pub fn displacement_field_in_layer(
    model: ModelKind,
    state: &MidsurfaceState,
    layup: &SandwichLayup,
    layer: usize,
    z: f64,
) -> (f64, f64, f64) {
    use DofLabel::*;
    let zz = ZigZag::new(layup, layer);
    let m = |l: DofLabel| if model.has(l) { state.get(l) } else { 0.0 };
    let s = zz.value(z);
    let u = m(U0) + z * m(ThetaX) + z * z * m(BetaX) + z * z * z * m(PhiX) + s * m(PsiX);
    let v = m(V0) + z * m(ThetaY) + z * z * m(BetaY) + z * z * z * m(PhiY) + s * m(PsiY);
    let w = m(W0) + z * m(W1) + z * z * m(Gamma);
    (u, v, w)
}

/// Generalized strain vectors from mid-surface values and derivatives,
/// masked to the DOF set of `model`.
pub fn strain_vectors(model: ModelKind, st: &MidsurfaceState) -> GeneralizedStrains {
    strain_vectors_from(model, |l| (st.get(l), st.get_dx(l), st.get_dy(l)))
}

/// Strain vectors from an arbitrary (value, ∂x, ∂y) source per variable.
/// Feeding (∂x, ∂xx, ∂xy) instead yields the x-derivative of every strain
/// component, which is what the equilibrium stress recovery integrates.
pub fn strain_vectors_from(
    model: ModelKind,
    get: impl Fn(DofLabel) -> (f64, f64, f64),
) -> GeneralizedStrains {
    use DofLabel::*;
    let v = |l: DofLabel| if model.has(l) { get(l).0 } else { 0.0 };
    let dx = |l: DofLabel| if model.has(l) { get(l).1 } else { 0.0 };
    let dy = |l: DofLabel| if model.has(l) { get(l).2 } else { 0.0 };

    let mut out = GeneralizedStrains::default();
    out.bm[0] = [dx(U0), dy(V0), v(W1), dy(U0) + dx(V0)];
    out.bm[1] = [
        dx(ThetaX),
        dy(ThetaY),
        2.0 * v(Gamma),
        dy(ThetaX) + dx(ThetaY),
    ];
    out.bm[2] = [dx(BetaX), dy(BetaY), 0.0, dy(BetaX) + dx(BetaY)];
    out.bm[3] = [dx(PhiX), dy(PhiY), 0.0, dy(PhiX) + dx(PhiY)];
    out.bm[4] = [dx(PsiX), dy(PsiY), 0.0, dy(PsiX) + dx(PsiY)];

    out.shear[0] = [v(ThetaX) + dx(W0), v(ThetaY) + dy(W0)];
    out.shear[1] = [2.0 * v(BetaX) + dx(W1), 2.0 * v(BetaY) + dy(W1)];
    out.shear[2] = [3.0 * v(PhiX) + dx(Gamma), 3.0 * v(PhiY) + dy(Gamma)];
    out.shear[3] = [v(PsiX), v(PsiY)];
    out
}

/// Plane-stress layer stiffness: 4x4 bending/membrane block in
/// (xx, yy, zz, xy) order with an inert zz row, plus the 2x2 shear block.
///
/// Q11 = Q22 = E/(1-ν²), Q12 = νE/(1-ν²), Q44 = Q55 = Q66 = E/(2(1+ν)).
pub fn constitutive_plane_stress(e: f64, nu: f64) -> Result<(Matrix4<f64>, Matrix2<f64>)> {
    check_elastic(e, nu)?;
    let q = e / (1.0 - nu * nu);
    let g = e / (2.0 * (1.0 + nu));
    let mut bm = Matrix4::zeros();
    bm[(0, 0)] = q;
    bm[(1, 1)] = q;
    bm[(0, 1)] = nu * q;
    bm[(1, 0)] = nu * q;
    bm[(3, 3)] = g;
    Ok((bm, Matrix2::new(g, 0.0, 0.0, g)))
}

/// Full three-dimensional isotropic stiffness restricted to the
/// (xx, yy, zz, xy) block, for theories carrying thickness stretch.
pub fn constitutive_three_dimensional(e: f64, nu: f64) -> Result<(Matrix4<f64>, Matrix2<f64>)> {
    check_elastic(e, nu)?;
    let f = e / ((1.0 + nu) * (1.0 - 2.0 * nu));
    let c11 = f * (1.0 - nu);
    let c12 = f * nu;
    let g = e / (2.0 * (1.0 + nu));
    let mut bm = Matrix4::zeros();
    for i in 0..3 {
        for j in 0..3 {
            bm[(i, j)] = if i == j { c11 } else { c12 };
        }
    }
    bm[(3, 3)] = g;
    Ok((bm, Matrix2::new(g, 0.0, 0.0, g)))
}

/// Layer stiffness for a given theory. Models with thickness stretch
/// (HSDT13/11) use the three-dimensional law — a plane-stress law would
/// leave the stretch terms without a restoring stiffness; models without
/// it reduce to plane stress so classical plate behaviour is recovered.
pub fn layer_stiffness(
    model: ModelKind,
    e: f64,
    nu: f64,
) -> Result<(Matrix4<f64>, Matrix2<f64>)> {
    if model.has_thickness_stretch() {
        constitutive_three_dimensional(e, nu)
    } else {
        constitutive_plane_stress(e, nu)
    }
}

fn check_elastic(e: f64, nu: f64) -> Result<()> {
    if !(e > 0.0) {
        return Err(Error::InvalidParameter("E must be positive".into()));
    }
    if !(0.0..0.5).contains(&nu) {
        return Err(Error::InvalidParameter("ν must lie in [0, 0.5)".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::{GradingType, PhaseMaterial};
    use approx::assert_relative_eq;

    fn layup(ratio: &str) -> SandwichLayup {
        SandwichLayup::from_ratio(
            GradingType::TypeA,
            ratio,
            1.0,
            1.0,
            PhaseMaterial::alumina(),
            PhaseMaterial::aluminum(),
        )
        .unwrap()
    }

    #[test]
    fn zigzag_interface_values_alternate() {
        for ratio in ["1-1-1", "1-2-1", "2-2-1", "2-1-2"] {
            let l = layup(ratio);
            for k in 0..3 {
                let zz = ZigZag::new(&l, k);
                let (a, b) = l.layer_bounds(k);
                // -1 and +1 alternately at interfaces, continuous across them.
                let expected_bottom = if k % 2 == 0 { 1.0 } else { -1.0 };
                assert_relative_eq!(zz.value(a), expected_bottom, epsilon = 1e-14);
                assert_relative_eq!(zz.value(b), -expected_bottom, epsilon = 1e-14);
                // |S| <= 1 inside the layer.
                for i in 0..=10 {
                    let z = a + (b - a) * i as f64 / 10.0;
                    assert!(zz.value(z).abs() <= 1.0 + 1e-14);
                }
            }
            // Continuity at interior interfaces, slope sign flip.
            for k in 0..2 {
                let (_, zi) = l.layer_bounds(k);
                let lo = ZigZag::new(&l, k);
                let hi = ZigZag::new(&l, k + 1);
                assert_relative_eq!(lo.value(zi), hi.value(zi), epsilon = 1e-14);
                assert!(lo.slope() * hi.slope() < 0.0);
            }
        }
    }

    #[test]
    fn fsdt_masks_higher_terms() {
        let l = layup("1-1-1");
        let mut st = MidsurfaceState::default();
        st.set(DofLabel::U0, 0.7);
        st.set(DofLabel::ThetaX, 0.2);
        st.set(DofLabel::W0, 1.5);
        // Higher-order values present in the state but masked by the model.
        st.set(DofLabel::BetaX, 9.0);
        st.set(DofLabel::PsiX, 9.0);
        st.set(DofLabel::W1, 9.0);
        let z = 0.31;
        let (u, _, w) = displacement_field(ModelKind::Fsdt5, &st, &l, z).unwrap();
        assert_relative_eq!(u, 0.7 + z * 0.2, epsilon = 1e-15);
        assert_relative_eq!(w, 1.5, epsilon = 1e-15);
    }

    #[test]
    fn zigzag_unit_amplitude_at_top_of_core() {
        // psi_x = 1, all other DOFs zero: u at the top of layer 2 equals
        // S^2 there, which is +1.
        let l = layup("1-1-1");
        let mut st = MidsurfaceState::default();
        st.set(DofLabel::PsiX, 1.0);
        let (_, z_top) = l.layer_bounds(1);
        let (u, v, w) =
            displacement_field_in_layer(ModelKind::Hsdt13, &st, &l, 1, z_top);
        assert_relative_eq!(u, 1.0, epsilon = 1e-14);
        assert_relative_eq!(v, 0.0);
        assert_relative_eq!(w, 0.0);
    }

    #[test]
    fn kirchhoff_mode_is_shear_free() {
        // theta_x = c with w0,x = -c cancels in g0.
        let mut st = MidsurfaceState::default();
        let c = 0.831;
        st.set(DofLabel::ThetaX, c);
        st.dx[DofLabel::W0 as usize] = -c;
        let s = strain_vectors(ModelKind::Fsdt5, &st);
        assert_relative_eq!(s.shear[0][0], 0.0, epsilon = 1e-15);
        assert_relative_eq!(s.shear[0][1], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn uniaxial_membrane() {
        // u0 = a*x gives e0 = {a, 0, 0, 0}.
        let mut st = MidsurfaceState::default();
        st.dx[DofLabel::U0 as usize] = 0.25;
        let s = strain_vectors(ModelKind::Hsdt13, &st);
        assert_eq!(s.bm[0], [0.25, 0.0, 0.0, 0.0]);
        for fam in 1..BM_FAMILIES {
            assert_eq!(s.bm[fam], [0.0; 4]);
        }
    }

    #[test]
    fn masking_zeroes_unreachable_components() {
        // Fill every slot, then check the components that HSDT9 cannot
        // reach are identically zero.
        let mut st = MidsurfaceState::default();
        for i in 0..13 {
            st.value[i] = 1.0 + i as f64;
            st.dx[i] = 0.1 * (i as f64 + 1.0);
            st.dy[i] = -0.2 * (i as f64 + 1.0);
        }
        let s = strain_vectors(ModelKind::Hsdt9, &st);
        assert_eq!(s.bm[0][2], 0.0); // w1 absent
        assert_eq!(s.bm[1][2], 0.0); // Gamma absent
        assert_eq!(s.bm[4], [0.0; 4]); // zig-zag absent
        assert_eq!(s.shear[3], [0.0; 2]);
        let s11 = strain_vectors(ModelKind::Hsdt11, &st);
        assert_eq!(s11.bm[4], [0.0; 4]);
        assert!(s11.bm[0][2] != 0.0);
    }

    #[test]
    fn plane_stress_values() {
        let (bm, sh) = constitutive_plane_stress(1.0, 0.0).unwrap();
        assert_relative_eq!(bm[(0, 0)], 1.0);
        assert_relative_eq!(bm[(1, 1)], 1.0);
        assert_relative_eq!(bm[(3, 3)], 0.5);
        assert_relative_eq!(sh[(0, 0)], 0.5);
        assert_relative_eq!(bm[(0, 1)], 0.0);

        let (bm, _) = constitutive_plane_stress(380e9, 0.3).unwrap();
        // 380/(1-0.09) GPa.
        assert_relative_eq!(bm[(0, 0)], 417.582417582e9, max_relative = 1e-10);
        // Q12/Q11 = nu exactly.
        assert_relative_eq!(bm[(0, 1)] / bm[(0, 0)], 0.3, epsilon = 1e-15);
    }

    #[test]
    fn three_dimensional_reduces_consistently() {
        // Condensing the zz row of the 3-D law recovers plane stress.
        let (c, _) = constitutive_three_dimensional(200e9, 0.3).unwrap();
        let (q, _) = constitutive_plane_stress(200e9, 0.3).unwrap();
        for i in [0usize, 1] {
            for j in [0usize, 1] {
                let condensed = c[(i, j)] - c[(i, 2)] * c[(2, j)] / c[(2, 2)];
                assert_relative_eq!(condensed, q[(i, j)], max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn invalid_elastic_constants_rejected() {
        assert!(constitutive_plane_stress(-1.0, 0.3).is_err());
        assert!(constitutive_plane_stress(1.0, 0.5).is_err());
        assert!(constitutive_three_dimensional(1.0, 0.62).is_err());
    }

    #[test]
    fn randomized_state_matches_direct_expansion() {
        // Independent evaluation of the displacement expansion for HSDT13,
        // against the masked implementation.
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let l = layup("2-1-2");
        for _ in 0..50 {
            let mut st = MidsurfaceState::default();
            for i in 0..13 {
                st.value[i] = rng.random_range(-1.0..1.0);
            }
            let z = rng.random_range(-0.5..0.5);
            let k = l.layer_of(z).unwrap();
            let zz = ZigZag::new(&l, k);
            let s = zz.value(z);
            let v = &st.value;
            let expect_u = v[0] + z * v[3] + z * z * v[6] + z * z * z * v[9] + s * v[11];
            let expect_v = v[1] + z * v[4] + z * z * v[7] + z * z * z * v[10] + s * v[12];
            let expect_w = v[2] + z * v[5] + z * z * v[8];
            let (u, vv, w) = displacement_field(ModelKind::Hsdt13, &st, &l, z).unwrap();
            assert_relative_eq!(u, expect_u, epsilon = 1e-14);
            assert_relative_eq!(vv, expect_v, epsilon = 1e-14);
            assert_relative_eq!(w, expect_w, epsilon = 1e-14);
        }
    }
}
