//! Real matrix realizations of the catalog algebras, with Killing form and
//! Cartan decomposition.

pub mod catalog;
pub mod expm;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

use crate::elliptic::ChamberPoint;
use crate::error::{Error, Result};
use crate::rootsys::RealRootSystem;

pub use expm::{expm, expm_frechet};

/// Raw description of a model: what the shipped catalog file stores.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelParts {
    pub name: String,
    pub root_system: String,
    pub n: usize,
    /// Basis matrices, row-major.
    pub basis: Vec<Vec<Vec<f64>>>,
    pub k_indices: Vec<usize>,
    pub p_indices: Vec<usize>,
    /// Torus basis `Hc_j` with `α(Hc_j) = i·⟨α, α_j^∨⟩`; a subset of `k_indices`.
    pub torus_indices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct LieModel {
    pub name: String,
    pub root_system: RealRootSystem,
    pub n: usize,
    pub basis: Vec<DMatrix<f64>>,
    pub k_indices: Vec<usize>,
    pub p_indices: Vec<usize>,
    pub torus_indices: Vec<usize>,
    pub killing: DMatrix<f64>,
    pinv: DMatrix<f64>,
    /// `ad[i]` has columns `coords([X_i, X_j])`.
    ad: Vec<DMatrix<f64>>,
    onb: DMatrix<f64>,
    onb_inv: DMatrix<f64>,
    torus_killing_inv: DMatrix<f64>,
}

pub fn bracket(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a * b - b * a
}

fn flatten(m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_iterator(m.len(), m.iter().cloned())
}

fn violation(msg: String) -> Error {
    Error::InvariantViolation(msg)
}

impl LieModel {
    pub fn from_parts(parts: &ModelParts) -> Result<Self> {
        let n = parts.n;
        let d = parts.basis.len();
        let mut basis = Vec::with_capacity(d);
        for (i, rows) in parts.basis.iter().enumerate() {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(violation(format!("basis element {i} is not {n}x{n}")));
            }
            basis.push(DMatrix::from_fn(n, n, |r, c| rows[r][c]));
        }
        let mut split: Vec<usize> = parts.k_indices.iter().chain(&parts.p_indices).cloned().collect();
        split.sort_unstable();
        if split != (0..d).collect::<Vec<_>>() {
            return Err(violation("k and p indices must partition the basis".into()));
        }
        if parts.torus_indices.iter().any(|t| !parts.k_indices.contains(t)) {
            return Err(violation("torus must lie in k".into()));
        }
        let root_system = RealRootSystem::catalog(&parts.root_system)?;
        if parts.torus_indices.len() != root_system.rank {
            return Err(violation("torus dimension differs from the rank".into()));
        }

        let mut vb = DMatrix::zeros(n * n, d);
        for (j, b) in basis.iter().enumerate() {
            vb.set_column(j, &flatten(b));
        }
        let svd = vb.clone().svd(true, true);
        let smax = svd.singular_values.max();
        if svd.singular_values.min() < 1e-10 * smax {
            return Err(violation("basis is linearly dependent".into()));
        }
        let pinv = svd.pseudo_inverse(1e-12).map_err(|e| violation(e.into()))?;

        let mut ad = Vec::with_capacity(d);
        for i in 0..d {
            let mut m = DMatrix::zeros(d, d);
            for j in 0..d {
                let br = bracket(&basis[i], &basis[j]);
                let c = &pinv * flatten(&br);
                let resid = (&vb * &c - flatten(&br)).norm();
                if resid > 1e-10 {
                    return Err(violation(format!("[X_{i}, X_{j}] leaves the span ({resid:e})")));
                }
                m.set_column(j, &c);
            }
            ad.push(m);
        }
        let killing = DMatrix::from_fn(d, d, |i, j| (&ad[i] * &ad[j]).trace());

        let model_k: Vec<bool> = (0..d).map(|i| parts.k_indices.contains(&i)).collect();
        for (i, b) in basis.iter().enumerate() {
            let theta = -b.transpose();
            let want = if model_k[i] { b.clone() } else { -b };
            if (theta - want).norm() > 1e-12 {
                return Err(violation(format!("basis element {i} is not a Cartan involution eigenvector")));
            }
        }
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    let expect_k = model_k[i] == model_k[j];
                    if model_k[l] != expect_k && ad[i][(l, j)].abs() > 1e-10 {
                        return Err(violation(format!("bracket [X_{i}, X_{j}] violates the k/p grading")));
                    }
                }
                if model_k[i] != model_k[j] && killing[(i, j)].abs() > 1e-10 {
                    return Err(violation("Killing form does not split k and p".into()));
                }
            }
        }
        let block = |idx: &[usize]| DMatrix::from_fn(idx.len(), idx.len(), |a, b| killing[(idx[a], idx[b])]);
        let kb = block(&parts.k_indices);
        let pb = block(&parts.p_indices);
        if parts.k_indices.is_empty() || kb.symmetric_eigenvalues().max() >= -1e-9 {
            return Err(violation("Killing form is not negative definite on k".into()));
        }
        if !parts.p_indices.is_empty() && pb.symmetric_eigenvalues().min() <= 1e-9 {
            return Err(violation("Killing form is not positive definite on p".into()));
        }

        let b_theta = DMatrix::from_fn(d, d, |i, j| if model_k[j] { -killing[(i, j)] } else { killing[(i, j)] });
        let chol = b_theta.clone().cholesky().ok_or_else(|| violation("B_theta is not positive definite".into()))?;
        let l = chol.l();
        let onb_inv = l.transpose();
        let onb = onb_inv.clone().try_inverse().ok_or_else(|| violation("singular frame".into()))?;

        let tb = DMatrix::from_fn(root_system.rank, root_system.rank, |a, b| {
            killing[(parts.torus_indices[a], parts.torus_indices[b])]
        });
        let torus_killing_inv = tb.try_inverse().ok_or_else(|| violation("degenerate torus".into()))?;

        let model = LieModel {
            name: parts.name.clone(),
            root_system,
            n,
            basis,
            k_indices: parts.k_indices.clone(),
            p_indices: parts.p_indices.clone(),
            torus_indices: parts.torus_indices.clone(),
            killing,
            pinv,
            ad,
            onb,
            onb_inv,
            torus_killing_inv,
        };
        model.check_root_profile()?;
        Ok(model)
    }

    /// Compares the spectrum of a generic torus element with the root system,
    /// on 𝔤 and on 𝔭 separately.
    fn check_root_profile(&self) -> Result<()> {
        let rs = &self.root_system;
        let t: Vec<f64> = (0..rs.rank).map(|i| libm::sqrt(2.0 + 1.37 * i as f64)).collect();
        let mut h = DVector::zeros(self.dim());
        for (j, &ti) in self.torus_indices.iter().enumerate() {
            h[ti] = t[j];
        }
        let m = &self.onb_inv * self.ad_of(&h) * &self.onb;
        let value = |r: &crate::rootsys::Root| -> f64 {
            let f = r.fundamental();
            let v: f64 = f.iter().zip(&t).map(|(a, b)| *a as f64 * b).sum();
            v * v
        };
        let compare = |m: DMatrix<f64>, mut want: Vec<f64>, what: &str| -> Result<()> {
            let mut got: Vec<f64> = (m.transpose() * &m).symmetric_eigenvalues().iter().cloned().collect();
            got.sort_by(|a, b| a.partial_cmp(b).unwrap());
            want.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let scale = want.iter().cloned().fold(1.0, f64::max);
            if got.len() != want.len() || got.iter().zip(&want).any(|(a, b)| (a - b).abs() > 1e-8 * scale) {
                return Err(violation(format!("torus spectrum on {what} does not match the root system")));
            }
            Ok(())
        };
        let mut want: Vec<f64> = rs.roots.iter().map(value).collect();
        want.extend(core::iter::repeat_n(0.0, rs.rank));
        compare(m.clone(), want, "g")?;
        if !self.p_indices.is_empty() {
            let idx = &self.p_indices;
            let mp = DMatrix::from_fn(idx.len(), idx.len(), |a, b| m[(idx[a], idx[b])]);
            let want: Vec<f64> = rs.roots.iter().filter(|r| r.noncompact).map(value).collect();
            compare(mp, want, "p")?;
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, x: &DMatrix<f64>) -> DVector<f64> {
        &self.pinv * flatten(x)
    }

    pub fn matrix_of(&self, c: &DVector<f64>) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for (ci, b) in c.iter().zip(&self.basis) {
            m += b * *ci;
        }
        m
    }

    /// Matrix of `ad(x)` in basis coordinates.
    pub fn ad_of(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for (xi, a) in x.iter().zip(&self.ad) {
            m += a * *xi;
        }
        m
    }

    pub fn killing_of(&self, a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        (self.coords(a).transpose() * &self.killing * self.coords(b))[(0, 0)]
    }

    /// Columns: coordinates of a basis orthonormal for `−B(X, θY)`, adapted to 𝔨 ⊕ 𝔭.
    pub fn orthonormal(&self) -> &DMatrix<f64> {
        &self.onb
    }

    pub fn orthonormal_inverse(&self) -> &DMatrix<f64> {
        &self.onb_inv
    }

    /// Killing dual in 𝔱 ⊂ 𝔨 of a point of 𝔱*.
    pub fn xi_dual(&self, xi: &ChamberPoint) -> DMatrix<f64> {
        let m = DVector::from_vec(xi.fundamental_f64());
        let z = &self.torus_killing_inv * m;
        let mut c = DVector::zeros(self.dim());
        for (j, &t) in self.torus_indices.iter().enumerate() {
            c[t] = z[j];
        }
        self.matrix_of(&c)
    }

    pub fn k_basis(&self) -> Vec<&DMatrix<f64>> {
        self.k_indices.iter().map(|&i| &self.basis[i]).collect()
    }

    pub fn p_basis(&self) -> Vec<&DMatrix<f64>> {
        self.p_indices.iter().map(|&i| &self.basis[i]).collect()
    }

    /// Splits coordinates into their 𝔨 and 𝔭 parts (full-length vectors).
    pub fn split(&self, c: &DVector<f64>) -> (DVector<f64>, DVector<f64>) {
        let mut k = DVector::zeros(self.dim());
        let mut p = DVector::zeros(self.dim());
        for &i in &self.k_indices {
            k[i] = c[i];
        }
        for &i in &self.p_indices {
            p[i] = c[i];
        }
        (k, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_dimensions() {
        for (name, d, k, p) in [("sl2r", 3, 1, 2), ("su21", 8, 4, 4), ("sp4r", 10, 4, 6), ("su2", 3, 3, 0)] {
            let m = catalog::model(name).unwrap();
            assert_eq!((m.dim(), m.k_indices.len(), m.p_indices.len()), (d, k, p), "{name}");
        }
        assert!(matches!(catalog::model("nosuch"), Err(Error::UnknownModel(_))));
    }

    #[test]
    fn corrupted_parts_are_rejected() {
        let mut parts = catalog::parts("sl2r").unwrap();
        parts.k_indices = alloc::vec![1];
        parts.p_indices = alloc::vec![0, 2];
        assert!(matches!(LieModel::from_parts(&parts), Err(Error::InvariantViolation(_))));
        let mut parts = catalog::parts("su21").unwrap();
        parts.basis[0][3][0] *= 2.0;
        assert!(LieModel::from_parts(&parts).is_err());
    }

    #[test]
    fn sl2_killing() {
        let m = catalog::model("sl2r").unwrap();
        // J, H, E: B(J,J) = −8, B(H,H) = B(E,E) = 8
        let want = DMatrix::from_row_slice(3, 3, &[-8.0, 0.0, 0.0, 0.0, 8.0, 0.0, 0.0, 0.0, 8.0]);
        assert!((&m.killing - want).norm() < 1e-12);
    }
}
