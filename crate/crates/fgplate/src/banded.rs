//! Symmetric banded matrix storage with an in-place band Cholesky
//! factorization — the workhorse for static solves and for the repeated
//! solves inside the eigen iteration.
//!
//! Only the lower band is stored, row by row: entry (i, j) with
//! `i - hbw <= j <= i` lives at `data[i * (hbw + 1) + (hbw - (i - j))]`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct BandedSymmetric {
    n: usize,
    hbw: usize,
    data: Vec<f64>,
}

impl BandedSymmetric {
    pub fn zeros(n: usize, half_bandwidth: usize) -> Self {
        let hbw = half_bandwidth.min(n.saturating_sub(1));
        BandedSymmetric {
            n,
            hbw,
            data: vec![0.0; n * (hbw + 1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn half_bandwidth(&self) -> usize {
        self.hbw
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(j <= i && i - j <= self.hbw);
        i * (self.hbw + 1) + (self.hbw - (i - j))
    }

    /// Symmetric accumulate; callers may pass (i, j) in either order.
    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let (r, c) = if j <= i { (i, j) } else { (j, i) };
        debug_assert!(r - c <= self.hbw, "entry ({i},{j}) outside bandwidth");
        let k = self.idx(r, c);
        self.data[k] += v;
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (r, c) = if j <= i { (i, j) } else { (j, i) };
        if r - c > self.hbw {
            0.0
        } else {
            self.data[self.idx(r, c)]
        }
    }

    /// y = A x (full symmetric product).
    pub fn mul_vec(&self, x: &DVector<f64>) -> DVector<f64> {
        let mut y = DVector::zeros(self.n);
        for i in 0..self.n {
            let j0 = i.saturating_sub(self.hbw);
            let mut acc = 0.0;
            for j in j0..i {
                let v = self.data[self.idx(i, j)];
                acc += v * x[j];
                y[j] += v * x[i];
            }
            acc += self.data[self.idx(i, i)] * x[i];
            y[i] += acc;
        }
        y
    }

    /// Dense copy (test and small-system use).
    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in i.saturating_sub(self.hbw)..=i {
                let v = self.data[self.idx(i, j)];
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    }

    /// Largest absolute diagonal entry.
    pub fn max_diag(&self) -> f64 {
        (0..self.n)
            .map(|i| self.data[self.idx(i, i)].abs())
            .fold(0.0, f64::max)
    }

    /// Band Cholesky A = L Lᵀ.
    pub fn cholesky(&self) -> Result<BandedCholesky> {
        let mut l = self.clone();
        let hbw = l.hbw;
        for j in 0..l.n {
            let j0 = j.saturating_sub(hbw);
            let mut d = l.data[l.idx(j, j)];
            for k in j0..j {
                let v = l.data[l.idx(j, k)];
                d -= v * v;
            }
            if !(d > 0.0) || !d.is_finite() {
                return Err(Error::Solver(format!(
                    "matrix not positive definite at pivot {j} (d = {d}); \
                     check boundary constraints"
                )));
            }
            let dj = d.sqrt();
            let idx_jj = l.idx(j, j);
            l.data[idx_jj] = dj;
            let imax = (j + hbw).min(l.n - 1);
            for i in (j + 1)..=imax {
                let i0 = i.saturating_sub(hbw).max(j0);
                let mut s = l.data[l.idx(i, j)];
                for k in i0..j {
                    s -= l.data[l.idx(i, k)] * l.data[l.idx(j, k)];
                }
                let idx_ij = l.idx(i, j);
                l.data[idx_ij] = s / dj;
            }
        }
        Ok(BandedCholesky { l })
    }

    /// Signs of the LDLᵀ pivots (negative count = eigenvalues below the
    /// shift already applied to the matrix). No pivoting; adequate for the
    /// modest shifts of the Sturm check.
    pub fn ldlt_negative_pivots(&self) -> Result<usize> {
        let mut l = self.clone();
        let hbw = l.hbw;
        let mut dvec = vec![0.0; l.n];
        let mut negatives = 0;
        for j in 0..l.n {
            let j0 = j.saturating_sub(hbw);
            let mut d = l.data[l.idx(j, j)];
            for k in j0..j {
                let v = l.data[l.idx(j, k)];
                d -= v * v * dvec[k];
            }
            if d == 0.0 || !d.is_finite() {
                return Err(Error::Solver(format!("ldlt breakdown at pivot {j}")));
            }
            if d < 0.0 {
                negatives += 1;
            }
            dvec[j] = d;
            let idx_jj = l.idx(j, j);
            l.data[idx_jj] = d;
            let imax = (j + hbw).min(l.n - 1);
            for i in (j + 1)..=imax {
                let i0 = i.saturating_sub(hbw).max(j0);
                let mut s = l.data[l.idx(i, j)];
                for k in i0..j {
                    s -= l.data[l.idx(i, k)] * l.data[l.idx(j, k)] * dvec[k];
                }
                let idx_ij = l.idx(i, j);
                l.data[idx_ij] = s / d;
            }
        }
        Ok(negatives)
    }

    /// self += alpha * other (same layout required).
    pub fn axpy(&mut self, alpha: f64, other: &BandedSymmetric) -> Result<()> {
        if self.n != other.n || self.hbw != other.hbw {
            return Err(Error::Internal("banded axpy shape mismatch".into()));
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += alpha * b;
        }
        Ok(())
    }
}

/// Factored band Cholesky, reusable across many right-hand sides.
#[derive(Debug, Clone)]
pub struct BandedCholesky {
    l: BandedSymmetric,
}

impl BandedCholesky {
    pub fn solve(&self, rhs: &DVector<f64>) -> DVector<f64> {
        let mut x = rhs.clone();
        self.solve_in_place(&mut x);
        x
    }

    pub fn solve_in_place(&self, x: &mut DVector<f64>) {
        let n = self.l.n;
        let hbw = self.l.hbw;
        // Forward substitution L y = b.
        for i in 0..n {
            let j0 = i.saturating_sub(hbw);
            let mut s = x[i];
            for j in j0..i {
                s -= self.l.data[self.l.idx(i, j)] * x[j];
            }
            x[i] = s / self.l.data[self.l.idx(i, i)];
        }
        // Back substitution Lᵀ x = y.
        for i in (0..n).rev() {
            let imax = (i + hbw).min(n - 1);
            let mut s = x[i];
            for j in (i + 1)..=imax {
                s -= self.l.data[self.l.idx(j, i)] * x[j];
            }
            x[i] = s / self.l.data[self.l.idx(i, i)];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::prelude::*;

    fn random_spd(n: usize, hbw: usize, seed: u64) -> BandedSymmetric {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut a = BandedSymmetric::zeros(n, hbw);
        for i in 0..n {
            for j in i.saturating_sub(hbw)..i {
                a.add(i, j, rng.random_range(-1.0..1.0));
            }
            // Diagonal dominance keeps it positive definite.
            a.add(i, i, 2.0 + hbw as f64);
        }
        a
    }

    #[test]
    fn cholesky_solve_roundtrip() {
        let n = 60;
        let a = random_spd(n, 7, 3);
        let chol = a.cholesky().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let x_true = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
        let b = a.mul_vec(&x_true);
        let x = chol.solve(&b);
        assert_relative_eq!(x, x_true, max_relative = 1e-10);
    }

    #[test]
    fn matches_dense_cholesky() {
        let a = random_spd(25, 4, 9);
        let dense = a.to_dense();
        let rhs = DVector::from_element(25, 1.0);
        let x_band = a.cholesky().unwrap().solve(&rhs);
        let x_dense = nalgebra::Cholesky::new(dense).unwrap().solve(&rhs);
        assert_relative_eq!(x_band, x_dense, max_relative = 1e-12);
    }

    #[test]
    fn indefinite_rejected() {
        let mut a = BandedSymmetric::zeros(3, 1);
        a.add(0, 0, 1.0);
        a.add(1, 1, -2.0);
        a.add(2, 2, 1.0);
        assert!(a.cholesky().is_err());
    }

    #[test]
    fn negative_pivot_count_matches_eigenvalues() {
        // Shifted SPD matrix: pivot signs count eigenvalues below the shift.
        let a = random_spd(30, 5, 11);
        let dense = a.to_dense();
        let eig = nalgebra::SymmetricEigen::new(dense);
        let mut evs: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        evs.sort_by(f64::total_cmp);
        let shift = 0.5 * (evs[9] + evs[10]);
        let mut shifted = a.clone();
        let mut identity = BandedSymmetric::zeros(30, 5);
        for i in 0..30 {
            identity.add(i, i, 1.0);
        }
        shifted.axpy(-shift, &identity).unwrap();
        assert_eq!(shifted.ldlt_negative_pivots().unwrap(), 10);
    }

    #[test]
    fn mul_vec_matches_dense() {
        let a = random_spd(40, 6, 5);
        let dense = a.to_dense();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let x = DVector::from_fn(40, |_, _| rng.random_range(-1.0..1.0));
        assert_relative_eq!(a.mul_vec(&x), &dense * &x, max_relative = 1e-13);
    }
}
