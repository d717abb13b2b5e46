//! Strongly elliptic chamber points and stabilizer subalgebras.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::lie::LieModel;
use crate::rootsys::{RealRootSystem, Subsystem};
use crate::weight::Weight;
use crate::weyl::WeylGroup;

/// Relative singular-value cut below which a direction counts as kernel.
pub const ZERO_CUT: f64 = 1e-8;
/// Upper edge of the band in which a rank decision is refused.
pub const AMBIGUOUS_CUT: f64 = 1e-6;

/// A point of 𝔱* in doubled fundamental coordinates, rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberPoint {
    pub xi: Vec<Ratio<i64>>,
}

impl ChamberPoint {
    pub fn new(xi: Vec<Ratio<i64>>) -> Self {
        ChamberPoint { xi }
    }

    pub fn from_weight(w: &Weight) -> Self {
        ChamberPoint { xi: w.coords().iter().map(|&c| Ratio::from_integer(c)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.xi.len()
    }

    pub fn is_zero(&self) -> bool {
        self.xi.iter().all(|x| *x.numer() == 0)
    }

    /// A positive integer multiple, for scale-invariant sign tests.
    pub fn integer_direction(&self) -> Weight {
        let l = self.xi.iter().fold(1i64, |a, x| a.lcm(x.denom()));
        Weight::new(self.xi.iter().map(|x| (*x * l).to_integer()).collect())
    }

    /// Ordinary fundamental coordinates as floats.
    pub fn fundamental_f64(&self) -> Vec<f64> {
        self.xi.iter().map(|x| *x.numer() as f64 / *x.denom() as f64 / 2.0).collect()
    }

    pub fn scaled(&self, s: Ratio<i64>) -> Self {
        ChamberPoint { xi: self.xi.iter().map(|x| *x * s).collect() }
    }
}

pub fn on_noncompact_wall(rs: &RealRootSystem, xi: &ChamberPoint) -> bool {
    let d = xi.integer_direction();
    rs.roots.iter().any(|r| r.noncompact && rs.inner_scaled(&r.weight, &d) == 0)
}

/// Membership of a 𝔱*-point in the strongly elliptic set: every point of
/// 𝔱* is compact-Weyl conjugate into the closed compact chamber, and the
/// noncompact walls are stable under that group, so the wall test decides.
pub fn strongly_elliptic(rs: &RealRootSystem, xi: &ChamberPoint) -> bool {
    !on_noncompact_wall(rs, xi)
}

/// Applies a compact Weyl element to a chamber point.
pub fn act(w: &WeylGroup, i: usize, xi: &ChamberPoint) -> ChamberPoint {
    let m = &w.elements[i];
    ChamberPoint {
        xi: m.iter().map(|row| row.iter().zip(&xi.xi).fold(Ratio::from_integer(0), |a, (c, x)| a + *x * *c)).collect(),
    }
}

/// Compact-dominant representative of `xi` (exact).
pub fn compact_chamber_rep(rs: &RealRootSystem, xi: &ChamberPoint) -> ChamberPoint {
    let wk = WeylGroup::generate(rs, Subsystem::Compact);
    for i in 0..wk.order() {
        let c = act(&wk, i, xi);
        if rs.dominant(&c.integer_direction(), Subsystem::Compact) {
            return c;
        }
    }
    xi.clone()
}

/// Numerical rank with the ambiguity band enforced. Singular values are taken relative to the largest.
pub fn numerical_rank(m: &DMatrix<f64>) -> Result<usize> {
    let sv = m.clone().svd(false, false).singular_values;
    classify(&sv).map(|zero| sv.len() - zero)
}

fn classify(sv: &DVector<f64>) -> Result<usize> {
    let top = sv.iter().cloned().fold(0.0f64, f64::max);
    if top == 0.0 {
        return Ok(sv.len());
    }
    let mut zero = 0;
    for &s in sv.iter() {
        let r = s / top;
        if r < ZERO_CUT {
            zero += 1;
        } else if r < AMBIGUOUS_CUT {
            return Err(Error::IllConditioned { sigma: r });
        }
    }
    Ok(zero)
}

/// Basis of 𝔤_ξ = ker(X ↦ [X, ξ_dual]).
pub fn stabilizer_algebra(model: &LieModel, xi_dual: &DMatrix<f64>) -> Result<Vec<DMatrix<f64>>> {
    let coords = stabilizer_coords(model, xi_dual)?;
    Ok(coords.iter().map(|c| model.matrix_of(c)).collect())
}

/// Kernel basis in orthonormal 𝔤-coordinates (columns of the result are in basis coordinates).
fn stabilizer_coords(model: &LieModel, xi_dual: &DMatrix<f64>) -> Result<Vec<DVector<f64>>> {
    let d = model.dim();
    let xi = model.coords(xi_dual);
    let ad = model.ad_of(&xi);
    let u = model.orthonormal();
    // ad_ξ in the orthonormal frame: U⁻¹ (−ad_ξ) U
    let m = model.orthonormal_inverse() * (-&ad) * u;
    let svd = nalgebra::linalg::SVD::new(m, false, true);
    let v_t = svd.v_t.unwrap();
    let sv = svd.singular_values;
    classify(&sv)?;
    let top = sv.iter().cloned().fold(0.0f64, f64::max);
    let mut out = Vec::new();
    for k in 0..d {
        if top == 0.0 || sv[k] / top < ZERO_CUT {
            let v: DVector<f64> = v_t.row(k).transpose();
            out.push(u * v);
        }
    }
    Ok(out)
}

/// dim(𝔤_ξ ∩ 𝔭). ξ_dual lies in 𝔨, so 𝔤_ξ splits along 𝔨 ⊕ 𝔭 and the
/// intersection is the kernel of the 𝔨-projection on 𝔤_ξ.
pub fn check_gxi_cap_p(model: &LieModel, xi_dual: &DMatrix<f64>) -> Result<usize> {
    let basis = stabilizer_coords(model, xi_dual)?;
    if basis.is_empty() {
        return Ok(0);
    }
    let kdim = model.k_indices.len();
    let mut proj = DMatrix::zeros(kdim.max(1), basis.len());
    for (c, v) in basis.iter().enumerate() {
        for (r, &i) in model.k_indices.iter().enumerate() {
            proj[(r, c)] = v[i];
        }
    }
    let rank = if kdim == 0 { 0 } else { numerical_rank(&proj)? };
    Ok(basis.len() - rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;
    use alloc::vec;

    fn cp(v: &[i64]) -> ChamberPoint {
        ChamberPoint::from_weight(&Weight::new(v.to_vec()))
    }

    #[test]
    fn wall_predicates() {
        let sl2 = RealRootSystem::catalog("sl2r").unwrap();
        assert!(!on_noncompact_wall(&sl2, &cp(&[2])));
        assert!(on_noncompact_wall(&sl2, &cp(&[0])));
        assert!(strongly_elliptic(&sl2, &ChamberPoint::from_weight(&sl2.rho_n)));
        assert!(!strongly_elliptic(&sl2, &cp(&[0])));

        let su21 = RealRootSystem::catalog("su21").unwrap();
        // (α₂, ξ) = 0 means zero second fundamental coordinate.
        let wall = cp(&[3, 0]);
        assert!(on_noncompact_wall(&su21, &wall));
        assert!(!strongly_elliptic(&su21, &cp(&[1, -1])));
        assert!(strongly_elliptic(&su21, &cp(&[1, 1])));
        assert!(strongly_elliptic(&su21, &cp(&[1, 2])));
        let su2 = RealRootSystem::catalog("su2").unwrap();
        assert!(!on_noncompact_wall(&su2, &cp(&[0])));
    }

    #[test]
    fn compact_weyl_invariance() {
        for name in ["su21", "sp4r"] {
            let rs = RealRootSystem::catalog(name).unwrap();
            let wk = WeylGroup::generate(&rs, Subsystem::Compact);
            for a in -4..5 {
                for b in -4..5 {
                    let xi = ChamberPoint::new(vec![Ratio::new(a, 3), Ratio::new(b, 2)]);
                    for i in 0..wk.order() {
                        assert_eq!(strongly_elliptic(&rs, &xi), strongly_elliptic(&rs, &act(&wk, i, &xi)));
                    }
                    let rep = compact_chamber_rep(&rs, &xi);
                    assert!(rs.dominant(&rep.integer_direction(), Subsystem::Compact));
                }
            }
        }
    }

    #[test]
    fn stabilizer_dimensions() {
        let sl2 = catalog::model("sl2r").unwrap();
        let xi = sl2.xi_dual(&cp(&[2]));
        assert_eq!(stabilizer_algebra(&sl2, &xi).unwrap().len(), 1);
        assert_eq!(check_gxi_cap_p(&sl2, &xi).unwrap(), 0);
        let zero = DMatrix::zeros(2, 2);
        assert_eq!(stabilizer_algebra(&sl2, &zero).unwrap().len(), 3);
        assert_eq!(check_gxi_cap_p(&sl2, &zero).unwrap(), 2);

        let su21 = catalog::model("su21").unwrap();
        let xi = su21.xi_dual(&cp(&[3, 5]));
        assert_eq!(stabilizer_algebra(&su21, &xi).unwrap().len(), 2);
        assert_eq!(check_gxi_cap_p(&su21, &xi).unwrap(), 0);
        let wall = su21.xi_dual(&cp(&[3, 0]));
        assert!(check_gxi_cap_p(&su21, &wall).unwrap() >= 1);
    }

    #[test]
    fn ambiguous_rank_is_refused() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1e-7, 0.0]));
        assert!(matches!(numerical_rank(&m), Err(Error::IllConditioned { .. })));
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1e-3, 1e-12]));
        assert_eq!(numerical_rank(&m).unwrap(), 2);
    }
}
