//! Structured meshing of the rectangular plate with 8-node serendipity
//! quadrilaterals.
//!
//! Nodes lie on a (2nx+1) x (2ny+1) grid with the element-center positions
//! removed; corner nodes sit at even (i, j) grid indices, mid-side nodes at
//! mixed parity. Element connectivity is corners counter-clockwise from
//! (-1,-1), then mid-sides bottom, right, top, left.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    pub y: f64,
    pub on_x0: bool,
    pub on_xa: bool,
    pub on_y0: bool,
    pub on_yb: bool,
}

#[derive(Debug, Clone)]
pub struct Mesh {
    pub a: f64,
    pub b: f64,
    pub nx: usize,
    pub ny: usize,
    pub nodes: Vec<Node>,
    pub elements: Vec<[usize; 8]>,
}

/// Build a uniform nx x ny mesh of the a x b plate.
pub fn build_mesh(a: f64, b: f64, nx: usize, ny: usize) -> Result<Mesh> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::InvalidParameter("plate dimensions must be positive".into()));
    }
    if nx < 1 || ny < 1 {
        return Err(Error::InvalidParameter("element counts must be at least 1".into()));
    }

    // Grid index -> node id, skipping element centers (odd, odd).
    let cols = 2 * nx + 1;
    let rows = 2 * ny + 1;
    let mut grid_id = vec![usize::MAX; cols * rows];
    let mut nodes = Vec::with_capacity(cols * rows - nx * ny);
    for j in 0..rows {
        for i in 0..cols {
            if i % 2 == 1 && j % 2 == 1 {
                continue;
            }
            grid_id[j * cols + i] = nodes.len();
            nodes.push(Node {
                x: a * i as f64 / (cols - 1) as f64,
                y: b * j as f64 / (rows - 1) as f64,
                on_x0: i == 0,
                on_xa: i == cols - 1,
                on_y0: j == 0,
                on_yb: j == rows - 1,
            });
        }
    }

    let id = |i: usize, j: usize| grid_id[j * cols + i];
    let mut elements = Vec::with_capacity(nx * ny);
    for ey in 0..ny {
        for ex in 0..nx {
            let (i, j) = (2 * ex, 2 * ey);
            elements.push([
                id(i, j),
                id(i + 2, j),
                id(i + 2, j + 2),
                id(i, j + 2),
                id(i + 1, j),
                id(i + 2, j + 1),
                id(i + 1, j + 2),
                id(i, j + 1),
            ]);
        }
    }

    Ok(Mesh {
        a,
        b,
        nx,
        ny,
        nodes,
        elements,
    })
}

impl Mesh {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Element containing (x, y) together with its natural coordinates.
    /// Points on inter-element boundaries resolve to the lower-index
    /// element.
    pub fn locate(&self, x: f64, y: f64) -> Result<(usize, f64, f64)> {
        let tol = 1e-10 * self.a.max(self.b);
        if x < -tol || x > self.a + tol || y < -tol || y > self.b + tol {
            return Err(Error::OutOfDomain(format!("point ({x}, {y}) outside plate")));
        }
        let dx = self.a / self.nx as f64;
        let dy = self.b / self.ny as f64;
        let ex = ((x / dx).floor() as usize).min(self.nx - 1);
        let ey = ((y / dy).floor() as usize).min(self.ny - 1);
        let xc = (ex as f64 + 0.5) * dx;
        let yc = (ey as f64 + 0.5) * dy;
        let xi = 2.0 * (x - xc) / dx;
        let eta = 2.0 * (y - yc) / dy;
        Ok((ey * self.nx + ex, xi.clamp(-1.0, 1.0), eta.clamp(-1.0, 1.0)))
    }

    pub fn element_nodes(&self, e: usize) -> [&Node; 8] {
        let conn = &self.elements[e];
        std::array::from_fn(|i| &self.nodes[conn[i]])
    }
}

/// Natural coordinates of the eight serendipity nodes.
pub const NODE_XI_ETA: [(f64, f64); 8] = [
    (-1.0, -1.0),
    (1.0, -1.0),
    (1.0, 1.0),
    (-1.0, 1.0),
    (0.0, -1.0),
    (1.0, 0.0),
    (0.0, 1.0),
    (-1.0, 0.0),
];

/// Serendipity shape functions and their (ξ, η) gradients.
pub fn shape_functions(xi: f64, eta: f64) -> ([f64; 8], [[f64; 2]; 8]) {
    let mut n = [0.0; 8];
    let mut d = [[0.0; 2]; 8];
    for (i, &(xi_i, eta_i)) in NODE_XI_ETA.iter().enumerate().take(4) {
        let p = 1.0 + xi * xi_i;
        let q = 1.0 + eta * eta_i;
        n[i] = 0.25 * p * q * (xi * xi_i + eta * eta_i - 1.0);
        d[i][0] = 0.25 * xi_i * q * (2.0 * xi * xi_i + eta * eta_i);
        d[i][1] = 0.25 * eta_i * p * (xi * xi_i + 2.0 * eta * eta_i);
    }
    // Mid-sides: bottom, right, top, left.
    n[4] = 0.5 * (1.0 - xi * xi) * (1.0 - eta);
    d[4] = [-xi * (1.0 - eta), -0.5 * (1.0 - xi * xi)];
    n[5] = 0.5 * (1.0 + xi) * (1.0 - eta * eta);
    d[5] = [0.5 * (1.0 - eta * eta), -eta * (1.0 + xi)];
    n[6] = 0.5 * (1.0 - xi * xi) * (1.0 + eta);
    d[6] = [-xi * (1.0 + eta), 0.5 * (1.0 - xi * xi)];
    n[7] = 0.5 * (1.0 - xi) * (1.0 - eta * eta);
    d[7] = [-0.5 * (1.0 - eta * eta), -eta * (1.0 - xi)];
    (n, d)
}

/// Second derivatives (∂²N/∂ξ², ∂²N/∂ξ∂η, ∂²N/∂η²) of the serendipity
/// basis; used by the equilibrium stress recovery.
pub fn shape_second_derivatives(xi: f64, eta: f64) -> [[f64; 3]; 8] {
    let mut d2 = [[0.0; 3]; 8];
    for (i, &(xi_i, eta_i)) in NODE_XI_ETA.iter().enumerate().take(4) {
        d2[i][0] = 0.5 * (1.0 + eta * eta_i);
        d2[i][1] = 0.25 * xi_i * eta_i * (2.0 * xi * xi_i + 2.0 * eta * eta_i + 1.0);
        d2[i][2] = 0.5 * (1.0 + xi * xi_i);
    }
    d2[4] = [-(1.0 - eta), xi, 0.0];
    d2[5] = [0.0, -eta, -(1.0 + xi)];
    d2[6] = [-(1.0 + eta), -xi, 0.0];
    d2[7] = [0.0, eta, -(1.0 - xi)];
    d2
}
