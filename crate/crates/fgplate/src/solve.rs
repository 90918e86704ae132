//! Static and free-vibration solution of the assembled system.
//!
//! Statics: band Cholesky with two refinement passes. Free vibration:
//! subspace iteration on K v = λ M v with the band factorization of K,
//! the projected problem solved densely, and a Sturm-sequence count
//! guarding against missed eigenvalues. Everything is deterministic:
//! identical input produces bit-identical eigenvalue ordering.

use nalgebra::{DMatrix, DVector};

use crate::assembly::GlobalSystem;
use crate::error::{Error, Result};

/// Static displacement solution (free and expanded numbering).
#[derive(Debug, Clone)]
pub struct StaticSolution {
    pub free: DVector<f64>,
    /// Full node-major vector with prescribed values inserted.
    pub full: DVector<f64>,
    /// ‖K δ − f‖ / ‖f‖ (0 when f = 0).
    pub relative_residual: f64,
}

pub fn solve_static(system: &GlobalSystem) -> Result<StaticSolution> {
    let chol = system.stiffness.cholesky().map_err(|e| {
        Error::Solver(format!(
            "static factorization failed ({e}); the boundary conditions may \
             leave a rigid mode unconstrained"
        ))
    })?;
    let mut x = chol.solve(&system.force);
    // Refinement recovers the last digits lost to the factorization.
    for _ in 0..2 {
        let r = &system.force - system.stiffness.mul_vec(&x);
        let dx = chol.solve(&r);
        x += dx;
    }
    let fnorm = system.force.norm();
    let residual = (&system.force - system.stiffness.mul_vec(&x)).norm();
    let relative_residual = if fnorm > 0.0 { residual / fnorm } else { 0.0 };
    let full = system.dofs.expand(&x);
    Ok(StaticSolution {
        free: x,
        full,
        relative_residual,
    })
}

/// Lowest eigenpairs of K v = λ M v.
#[derive(Debug, Clone)]
pub struct ModalSolution {
    /// Ascending eigenvalues λ_i = ω_i².
    pub eigenvalues: Vec<f64>,
    /// Natural circular frequencies ω_i = √λ_i.
    pub omegas: Vec<f64>,
    /// Mass-orthonormal mode vectors (free numbering), one column each,
    /// sign-fixed so the largest-magnitude component is positive.
    pub modes: DMatrix<f64>,
    /// Relative residuals ‖K v − λ M v‖ / ‖K v‖.
    pub residuals: Vec<f64>,
}

pub fn solve_modes(system: &GlobalSystem, count: usize) -> Result<ModalSolution> {
    let n = system.stiffness.dim();
    if count == 0 {
        return Err(Error::InvalidParameter("mode count must be positive".into()));
    }
    if count > n {
        return Err(Error::InvalidParameter(format!(
            "requested {count} modes from a {n}-DOF system"
        )));
    }
    // Positive definiteness of M is part of the contract.
    system
        .mass
        .cholesky()
        .map_err(|_| Error::Solver("mass matrix is not positive definite".into()))?;

    // Retry with a wider subspace if the Sturm count reveals a missed
    // eigenvalue (can happen when the start block misses a cluster).
    let mut q = (2 * count).max(count + 8).min(n);
    let mut last_err = None;
    for _attempt in 0..3 {
        match subspace_iterate(system, count, q) {
            Ok(solution) => return Ok(solution),
            Err(e @ Error::Solver(_)) if q < n => {
                last_err = Some(e);
                q = (2 * q).min(n);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Solver("subspace iteration failed".into())))
}

fn subspace_iterate(system: &GlobalSystem, count: usize, q: usize) -> Result<ModalSolution> {
    let n = system.stiffness.dim();
    let k_chol = system.stiffness.cholesky().map_err(|e| {
        Error::Solver(format!("stiffness factorization failed in eigen solve ({e})"))
    })?;

    // Deterministic start block: the first column excites everything via
    // the mass diagonal, the rest pick the largest m/k diagonal ratios.
    let mut x = DMatrix::zeros(n, q);
    let mut ratios: Vec<(f64, usize)> = (0..n)
        .map(|i| (system.mass.get(i, i) / system.stiffness.get(i, i), i))
        .collect();
    ratios.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    for i in 0..n {
        x[(i, 0)] = system.mass.get(i, i);
    }
    for c in 1..q {
        x[(ratios[c - 1].1, c)] = 1.0;
    }

    let mut prev: Vec<f64> = vec![f64::INFINITY; count];
    let mut converged = false;
    let mut lambda: Vec<f64> = Vec::new();
    let max_iter = 300;
    for _iter in 0..max_iter {
        // Y = M X, Xbar = K^{-1} Y.
        let mut xbar = DMatrix::zeros(n, q);
        for c in 0..q {
            let xc = DVector::from_column_slice(x.column(c).as_slice());
            let y = system.mass.mul_vec(&xc);
            let mut sol = y.clone();
            k_chol.solve_in_place(&mut sol);
            xbar.set_column(c, &sol);
        }
        // Projected operators K* = Xbarᵀ K Xbar = Xbarᵀ (M X) and
        // M* = Xbarᵀ M Xbar.
        let mut mx = DMatrix::zeros(n, q);
        let mut mxbar = DMatrix::zeros(n, q);
        for c in 0..q {
            let xc = DVector::from_column_slice(x.column(c).as_slice());
            mx.set_column(c, &system.mass.mul_vec(&xc));
            let xb = DVector::from_column_slice(xbar.column(c).as_slice());
            mxbar.set_column(c, &system.mass.mul_vec(&xb));
        }
        let mut k_proj = xbar.transpose() * &mx;
        let mut m_proj = xbar.transpose() * &mxbar;
        // Symmetrize round-off.
        k_proj = 0.5 * (&k_proj + k_proj.transpose());
        m_proj = 0.5 * (&m_proj + m_proj.transpose());

        let (values, vectors) = dense_generalized_eigen(&k_proj, &m_proj)?;
        lambda = values;
        x = &xbar * &vectors;

        let rel_change = (0..count)
            .map(|i| ((lambda[i] - prev[i]) / lambda[i]).abs())
            .fold(0.0, f64::max);
        prev[..count].copy_from_slice(&lambda[..count]);
        if rel_change < 1e-13 {
            // Eigenvalues converge ahead of the vectors; require tight
            // residuals on the wanted pairs before stopping.
            let worst = (0..count)
                .map(|c| {
                    let v = DVector::from_column_slice(x.column(c).as_slice());
                    let kv = system.stiffness.mul_vec(&v);
                    let mv = system.mass.mul_vec(&v);
                    (&kv - lambda[c] * &mv).norm() / kv.norm()
                })
                .fold(0.0, f64::max);
            if worst <= 1e-9 {
                converged = true;
                break;
            }
        }
    }
    if !converged {
        return Err(Error::Solver(format!(
            "subspace iteration did not converge in {max_iter} iterations"
        )));
    }

    // Sturm check: no eigenvalue below the verified band may be missing.
    // The shift must sit in a genuine spectral gap — placing it inside a
    // degenerate cluster would make the count ambiguous — so search for
    // the first adequately separated pair at or beyond the wanted count.
    if count < q {
        let mut shift_slot = None;
        for j in (count - 1)..(q - 1) {
            if lambda[j + 1] - lambda[j] > 1e-6 * lambda[j].abs().max(1e-300) {
                shift_slot = Some(j);
                break;
            }
        }
        if let Some(j) = shift_slot {
            let sigma = 0.5 * (lambda[j] + lambda[j + 1]);
            let mut shifted = system.stiffness.clone();
            shifted.axpy(-sigma, &system.mass)?;
            let below = shifted.ldlt_negative_pivots()?;
            let expected = j + 1;
            if below != expected {
                return Err(Error::Solver(format!(
                    "Sturm count mismatch: {below} eigenvalues below shift, iteration \
                     found {expected}; increase the subspace size"
                )));
            }
        }
    }

    // Mass-orthonormalize exactly, fix signs, compute residuals.
    let mut modes = DMatrix::zeros(n, count);
    let mut residuals = Vec::with_capacity(count);
    for c in 0..count {
        let mut v = DVector::from_column_slice(x.column(c).as_slice());
        let mv = system.mass.mul_vec(&v);
        let norm = v.dot(&mv).sqrt();
        v /= norm;
        // Largest-magnitude component positive; first index wins ties.
        let mut imax = 0;
        let mut best = 0.0;
        for (i, &vi) in v.iter().enumerate() {
            if vi.abs() > best {
                best = vi.abs();
                imax = i;
            }
        }
        if v[imax] < 0.0 {
            v = -v;
        }
        let kv = system.stiffness.mul_vec(&v);
        let mv = system.mass.mul_vec(&v);
        let r = (&kv - lambda[c] * &mv).norm() / kv.norm();
        residuals.push(r);
        modes.set_column(c, &v);
    }

    Ok(ModalSolution {
        eigenvalues: lambda[..count].to_vec(),
        omegas: lambda[..count].iter().map(|l| l.max(0.0).sqrt()).collect(),
        modes,
        residuals,
    })
}

/// Dense symmetric generalized eigensolve K φ = λ M φ via Cholesky
/// reduction, ascending order, M-orthonormal vectors.
pub fn dense_generalized_eigen(
    k: &DMatrix<f64>,
    m: &DMatrix<f64>,
) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = k.nrows();
    let chol = nalgebra::Cholesky::new(m.clone())
        .ok_or_else(|| Error::Solver("projected mass matrix not positive definite".into()))?;
    let l = chol.l();
    // A = L^{-1} K L^{-T}, symmetric.
    let mut a = k.clone();
    l.solve_lower_triangular_mut(&mut a);
    a.transpose_mut();
    l.solve_lower_triangular_mut(&mut a);
    let a = 0.5 * (&a + a.transpose());
    let eig = nalgebra::SymmetricEigen::new(a);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let mut values = Vec::with_capacity(n);
    let mut vectors = DMatrix::zeros(n, n);
    for (c, &i) in order.iter().enumerate() {
        values.push(eig.eigenvalues[i]);
        let y = eig.eigenvectors.column(i).clone_owned();
        // φ = L^{-T} y.
        let mut phi = y;
        l.transpose().solve_upper_triangular_mut(&mut phi);
        vectors.set_column(c, &phi);
    }
    Ok((values, vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{DofMap, LoadCase, PlateProblem};
    use crate::element::{LoadShape, LoadSurface};
    use crate::material::{GradingType, HomogenizationScheme, PhaseMaterial, SandwichLayup};
    use crate::mesh::build_mesh;
    use crate::model::{ModelKind, PlateModel};
    use approx::assert_relative_eq;

    fn small_problem(kind: ModelKind, nx: usize, ny: usize) -> PlateProblem {
        let mesh = build_mesh(1.3, 0.7, nx, ny).unwrap();
        let layup = SandwichLayup::from_ratio(
            GradingType::TypeA,
            "1-1-1",
            1.0,
            0.13,
            PhaseMaterial::alumina(),
            PhaseMaterial::aluminum(),
        )
        .unwrap();
        PlateProblem::new(
            mesh,
            PlateModel::new(kind),
            layup,
            HomogenizationScheme::RuleOfMixtures,
            16,
        )
        .unwrap()
    }

    #[test]
    fn zero_load_zero_solution() {
        let p = small_problem(ModelKind::Fsdt5, 2, 2);
        let dofs = p.simply_supported_dofs();
        let sys = p.assemble(&dofs, &LoadCase::None).unwrap();
        let sol = solve_static(&sys).unwrap();
        assert_eq!(sol.free.amax(), 0.0);
        assert_eq!(sol.relative_residual, 0.0);
    }

    #[test]
    fn static_residual_contract() {
        let p = small_problem(ModelKind::Hsdt13, 4, 4);
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
        assert!(
            sol.relative_residual <= 1e-10,
            "residual {}",
            sol.relative_residual
        );
    }

    #[test]
    fn one_by_one_reduced_system_hand_solve() {
        // Single free DOF behaves like a scalar spring: δ = f/k.
        let p = small_problem(ModelKind::Fsdt5, 1, 1);
        let mut dofs = DofMap::new(&p.mesh, ModelKind::Fsdt5);
        dofs.constrain_simply_supported(&p.mesh);
        use crate::model::DofLabel::*;
        // Additionally pin everything except one v0 on a y-edge midside.
        let keep = p
            .mesh
            .nodes
            .iter()
            .position(|n| n.on_y0 && !n.on_x0 && !n.on_xa)
            .unwrap();
        for (i, _) in p.mesh.nodes.iter().enumerate() {
            for &l in ModelKind::Fsdt5.dof_labels() {
                if !(i == keep && l == V0) {
                    dofs.constrain(i, l, 0.0);
                }
            }
        }
        assert_eq!(dofs.n_free(), 1);
        let sys = p
            .assemble(
                &dofs,
                &LoadCase::Mechanical {
                    q0: 1.0,
                    shape: LoadShape::Uniform,
                    surface: LoadSurface::MidPlane,
                },
            )
            .unwrap();
        let sol = solve_static(&sys).unwrap();
        let k = sys.stiffness.get(0, 0);
        let f = sys.force[0];
        assert_relative_eq!(sol.free[0], f / k, max_relative = 1e-14);
    }

    #[test]
    fn modal_matches_dense_solve() {
        let p = small_problem(ModelKind::Fsdt5, 2, 2);
        let dofs = p.simply_supported_dofs();
        let sys = p.assemble(&dofs, &LoadCase::None).unwrap();
        let modal = solve_modes(&sys, 4).unwrap();
        let (dense_vals, _) =
            dense_generalized_eigen(&sys.stiffness.to_dense(), &sys.mass.to_dense()).unwrap();
        for i in 0..4 {
            assert_relative_eq!(modal.eigenvalues[i], dense_vals[i], max_relative = 1e-9);
        }
        for r in &modal.residuals {
            assert!(*r <= 1e-8, "residual {r}");
        }
        // M-orthonormality.
        for i in 0..4 {
            let vi = DVector::from_column_slice(modal.modes.column(i).as_slice());
            let mvi = sys.mass.mul_vec(&vi);
            assert_relative_eq!(vi.dot(&mvi), 1.0, max_relative = 1e-9);
            for j in 0..i {
                let vj = DVector::from_column_slice(modal.modes.column(j).as_slice());
                assert!(vj.dot(&mvi).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn modal_deterministic() {
        let p = small_problem(ModelKind::Hsdt9, 2, 2);
        let dofs = p.simply_supported_dofs();
        let sys = p.assemble(&dofs, &LoadCase::None).unwrap();
        let a = solve_modes(&sys, 3).unwrap();
        let b = solve_modes(&sys, 3).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
        assert_eq!(a.modes, b.modes);
    }

    #[test]
    fn mode_count_validation() {
        let p = small_problem(ModelKind::Fsdt5, 1, 1);
        let dofs = p.simply_supported_dofs();
        let sys = p.assemble(&dofs, &LoadCase::None).unwrap();
        assert!(solve_modes(&sys, 0).is_err());
        assert!(solve_modes(&sys, sys.stiffness.dim() + 1).is_err());
    }
}
