//! Degree-of-freedom bookkeeping, boundary conditions and global
//! assembly into symmetric banded storage.
//!
//! Constrained DOFs are eliminated by reduction: the assembled system
//! carries free DOFs only, and prescribed (possibly nonzero) values feed
//! the right-hand side during the element scatter.

use nalgebra::DVector;

use crate::banded::BandedSymmetric;
use crate::element::{
    element_load_mechanical, element_load_thermal, element_mass, element_stiffness, LoadShape,
    LoadSurface, ShearIntegration,
};
use crate::error::{Error, Result};
use crate::material::{HomogenizationScheme, SandwichLayup};
use crate::mesh::Mesh;
use crate::model::{DofLabel, ModelKind, PlateModel};
use crate::rigidity::{integrate_rigidities, RigidityMatrices};

/// Maps (node, label) pairs to free equation numbers and carries
/// prescribed values for the constrained rest.
#[derive(Debug, Clone)]
pub struct DofMap {
    pub model: ModelKind,
    n_nodes: usize,
    dpn: usize,
    constrained: Vec<bool>,
    prescribed: Vec<f64>,
    free_index: Vec<usize>,
    n_free: usize,
}

impl DofMap {
    pub fn new(mesh: &Mesh, model: ModelKind) -> Self {
        let n_nodes = mesh.node_count();
        let dpn = model.dofs_per_node();
        let n_full = n_nodes * dpn;
        let mut map = DofMap {
            model,
            n_nodes,
            dpn,
            constrained: vec![false; n_full],
            prescribed: vec![0.0; n_full],
            free_index: vec![usize::MAX; n_full],
            n_free: 0,
        };
        map.renumber();
        map
    }

    pub fn n_full(&self) -> usize {
        self.n_nodes * self.dpn
    }

    pub fn n_free(&self) -> usize {
        self.n_free
    }

    pub fn n_constrained(&self) -> usize {
        self.n_full() - self.n_free
    }

    pub fn dofs_per_node(&self) -> usize {
        self.dpn
    }

    /// Full (node-major) equation index of an active label.
    pub fn full_index(&self, node: usize, label: DofLabel) -> Option<usize> {
        self.model.dof_index(label).map(|li| node * self.dpn + li)
    }

    pub fn free_of(&self, full: usize) -> Option<usize> {
        if self.constrained[full] {
            None
        } else {
            Some(self.free_index[full])
        }
    }

    /// Constrain one nodal variable to a prescribed value.
    pub fn constrain(&mut self, node: usize, label: DofLabel, value: f64) {
        if let Some(idx) = self.full_index(node, label) {
            self.constrained[idx] = true;
            self.prescribed[idx] = value;
        }
        self.renumber();
    }

    fn constrain_unnumbered(&mut self, node: usize, label: DofLabel, value: f64) {
        if let Some(idx) = self.full_index(node, label) {
            self.constrained[idx] = true;
            self.prescribed[idx] = value;
        }
    }

    /// Hard simply supported conditions on all four edges: tangential
    /// in-plane motion, transverse deflection and the tangential rotation
    /// family vanish on each edge.
    pub fn constrain_simply_supported(&mut self, mesh: &Mesh) {
        use DofLabel::*;
        // y = 0 and y = b edges.
        const Y_EDGE: [DofLabel; 8] = [U0, W0, ThetaX, W1, Gamma, BetaX, PhiX, PsiX];
        // x = 0 and x = a edges.
        const X_EDGE: [DofLabel; 8] = [V0, W0, ThetaY, W1, Gamma, BetaY, PhiY, PsiY];
        for (i, node) in mesh.nodes.iter().enumerate() {
            if node.on_y0 || node.on_yb {
                for &l in &Y_EDGE {
                    self.constrain_unnumbered(i, l, 0.0);
                }
            }
            if node.on_x0 || node.on_xa {
                for &l in &X_EDGE {
                    self.constrain_unnumbered(i, l, 0.0);
                }
            }
        }
        self.renumber();
    }

    /// Constrain a label at every node (model-nesting experiments).
    pub fn constrain_everywhere(&mut self, label: DofLabel, value: f64) {
        for node in 0..self.n_nodes {
            self.constrain_unnumbered(node, label, value);
        }
        self.renumber();
    }

    fn renumber(&mut self) {
        let mut next = 0;
        for i in 0..self.n_full() {
            if !self.constrained[i] {
                self.free_index[i] = next;
                next += 1;
            } else {
                self.free_index[i] = usize::MAX;
            }
        }
        self.n_free = next;
    }

    /// Expand a free-DOF vector to full numbering, inserting prescribed
    /// values.
    pub fn expand(&self, free: &DVector<f64>) -> DVector<f64> {
        let mut full = DVector::zeros(self.n_full());
        for i in 0..self.n_full() {
            full[i] = if self.constrained[i] {
                self.prescribed[i]
            } else {
                free[self.free_index[i]]
            };
        }
        full
    }

    /// Half bandwidth of the free-numbered system for this mesh.
    fn half_bandwidth(&self, mesh: &Mesh) -> usize {
        let mut hbw = 0;
        for conn in &mesh.elements {
            let mut lo = usize::MAX;
            let mut hi = 0;
            for &node in conn {
                for li in 0..self.dpn {
                    let full = node * self.dpn + li;
                    if !self.constrained[full] {
                        let f = self.free_index[full];
                        lo = lo.min(f);
                        hi = hi.max(f);
                    }
                }
            }
            if lo != usize::MAX {
                hbw = hbw.max(hi - lo);
            }
        }
        hbw
    }
}

/// Applied load for one analysis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LoadCase {
    None,
    Mechanical {
        q0: f64,
        shape: LoadShape,
        surface: LoadSurface,
    },
    Thermal {
        t0: f64,
        shape: LoadShape,
    },
}

/// Assembled free-DOF system.
#[derive(Debug, Clone)]
pub struct GlobalSystem {
    pub stiffness: BandedSymmetric,
    pub mass: BandedSymmetric,
    pub force: DVector<f64>,
    pub dofs: DofMap,
}

/// One plate analysis setup: mesh, theory, section and its pre-integrated
/// rigidities.
#[derive(Debug, Clone)]
pub struct PlateProblem {
    pub mesh: Mesh,
    pub model: PlateModel,
    pub layup: SandwichLayup,
    pub scheme: HomogenizationScheme,
    pub rigidities: RigidityMatrices,
    pub shear_rule: ShearIntegration,
}

impl PlateProblem {
    pub fn new(
        mesh: Mesh,
        model: PlateModel,
        layup: SandwichLayup,
        scheme: HomogenizationScheme,
        thickness_points: usize,
    ) -> Result<Self> {
        let rigidities = integrate_rigidities(&layup, scheme, &model, thickness_points)?;
        Ok(PlateProblem {
            mesh,
            model,
            layup,
            scheme,
            rigidities,
            shear_rule: ShearIntegration::default(),
        })
    }

    pub fn with_shear_integration(mut self, rule: ShearIntegration) -> Self {
        self.shear_rule = rule;
        self
    }

    /// DOF map with the (hard) simply supported conditions applied.
    pub fn simply_supported_dofs(&self) -> DofMap {
        let mut dofs = DofMap::new(&self.mesh, self.model.kind);
        dofs.constrain_simply_supported(&self.mesh);
        dofs
    }

    /// Assemble stiffness, mass and load under the given DOF map.
    pub fn assemble(&self, dofs: &DofMap, load: &LoadCase) -> Result<GlobalSystem> {
        let n_free = dofs.n_free();
        if n_free == 0 {
            return Err(Error::Internal("no free DOFs after constraints".into()));
        }
        let hbw = dofs.half_bandwidth(&self.mesh);
        let mut k = BandedSymmetric::zeros(n_free, hbw);
        let mut m = BandedSymmetric::zeros(n_free, hbw);
        let mut f = DVector::zeros(n_free);

        let dpn = dofs.dofs_per_node();
        let kind = self.model.kind;
        let h = self.layup.thickness();

        for (e, conn) in self.mesh.elements.iter().enumerate() {
            let ke = element_stiffness(&self.mesh, e, kind, &self.rigidities, self.shear_rule)?;
            let me = element_mass(&self.mesh, e, kind, &self.rigidities)?;
            let fe = match *load {
                LoadCase::None => None,
                LoadCase::Mechanical { q0, shape, surface } => Some(element_load_mechanical(
                    &self.mesh, e, kind, q0, shape, surface, h,
                )?),
                LoadCase::Thermal { t0, shape } => Some(element_load_thermal(
                    &self.mesh,
                    e,
                    kind,
                    &self.rigidities,
                    t0,
                    shape,
                )?),
            };

            for (p, &node_p) in conn.iter().enumerate() {
                for lp in 0..dpn {
                    let gp = node_p * dpn + lp;
                    let row = p * dpn + lp;
                    let Some(i) = dofs.free_of(gp) else { continue };
                    if let Some(ref fe) = fe {
                        f[i] += fe[row];
                    }
                    for (q, &node_q) in conn.iter().enumerate() {
                        for lq in 0..dpn {
                            let gq = node_q * dpn + lq;
                            let col = q * dpn + lq;
                            match dofs.free_of(gq) {
                                Some(j) => {
                                    if j <= i {
                                        k.add(i, j, ke[(row, col)]);
                                        m.add(i, j, me[(row, col)]);
                                    }
                                }
                                None => {
                                    let v = dofs.prescribed[gq];
                                    if v != 0.0 {
                                        f[i] -= ke[(row, col)] * v;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }

        Ok(GlobalSystem {
            stiffness: k,
            mass: m,
            force: f,
            dofs: dofs.clone(),
        })
    }
}
