//! Hamiltonian induction `M = G ×_K N` on the catalog models, checked at
//! base points `[g, ξ]` with `N` either the point `{ξ}` or the orbit `K·ξ`.
//!
//! Conventions: tangent vectors at `[g, ξ]` are represented by `W ∈ 𝔤`
//! through the curve `[g·exp(sW), ξ]`; the fundamental field is
//! `X_M(m) = d/dt exp(−tX)·m`, so `W = −Ad(g⁻¹)X`; and
//! `ω_{[g,ξ]}(W1, W2) = −B(ξ, [W1, W2])`, which restricts to the KKS form
//! on `T_ξ N` and to `−⟨ξ, [X, Y]⟩` on 𝔭.

use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::elliptic::{ChamberPoint, ZERO_CUT};
use crate::error::{Error, Result};
use crate::lie::{bracket, expm, expm_frechet, LieModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NKind {
    Point,
    KOrbit,
}

#[derive(Clone, Debug)]
pub struct InducedPointModel<'a> {
    pub model: &'a LieModel,
    pub kind: NKind,
    pub xi: ChamberPoint,
    pub xi_dual: DMatrix<f64>,
    /// 𝔨-generators `Z` whose infinitesimal action `[Z, ξ]` spans `T_ξ N`.
    pub n_tangent: Vec<DMatrix<f64>>,
    /// `n_tangent` followed by the 𝔭 basis.
    pub generators: Vec<DMatrix<f64>>,
    pub omega_matrix: DMatrix<f64>,
    /// Maps 𝔤-coordinates to generator coordinates, dropping 𝔨_ξ.
    projection: DMatrix<f64>,
}

fn orthonormal_k(model: &LieModel) -> (DMatrix<f64>, DMatrix<f64>) {
    let k = &model.k_indices;
    let neg_b = DMatrix::from_fn(k.len(), k.len(), |a, b| -model.killing[(k[a], k[b])]);
    let l = neg_b.cholesky().expect("validated model").l();
    let inv = l.transpose();
    (inv.clone().try_inverse().expect("validated model"), inv)
}

pub fn build_induced<'a>(model: &'a LieModel, xi: &ChamberPoint, kind: NKind) -> Result<InducedPointModel<'a>> {
    if xi.is_zero() {
        return Err(Error::ZeroXi);
    }
    let xi_dual = model.xi_dual(xi);
    build_from_dual(model, xi.clone(), xi_dual, kind)
}

fn build_from_dual(
    model: &LieModel,
    xi: ChamberPoint,
    xi_dual: DMatrix<f64>,
    kind: NKind,
) -> Result<InducedPointModel<'_>> {
    let d = model.dim();
    let kd = model.k_indices.len();
    let scale = xi_dual.norm();
    let mut tangent_coeffs: Vec<DVector<f64>> = Vec::new();
    let (uk, uk_inv) = orthonormal_k(model);
    match kind {
        NKind::Point => {
            let worst =
                model.k_basis().iter().map(|z| bracket(z, &xi_dual).norm() / (z.norm() * scale)).fold(0.0, f64::max);
            if worst > 1e-10 {
                return Err(Error::NotKFixed(worst));
            }
        }
        NKind::KOrbit => {
            let mut lmat = DMatrix::zeros(d, kd);
            for (a, z) in model.k_basis().iter().enumerate() {
                lmat.set_column(a, &model.coords(&bracket(z, &xi_dual)));
            }
            let a = model.orthonormal_inverse() * lmat * &uk;
            let svd = a.svd(false, true);
            let v_t = svd.v_t.unwrap();
            // ad(ξ) has operator size |ξ| in the orthonormal frame.
            let size = libm::sqrt(-model.killing_of(&xi_dual, &xi_dual));
            for r in 0..svd.singular_values.len() {
                if svd.singular_values[r] > ZERO_CUT * size {
                    tangent_coeffs.push(v_t.row(r).transpose());
                }
            }
        }
    }
    let nt = tangent_coeffs.len();
    let np = model.p_indices.len();
    let mut n_tangent = Vec::with_capacity(nt);
    let mut projection = DMatrix::zeros(nt + np, d);
    for (r, c) in tangent_coeffs.iter().enumerate() {
        let kc = &uk * c;
        let mut z = DMatrix::zeros(model.n, model.n);
        for (a, &i) in model.k_indices.iter().enumerate() {
            z += &model.basis[i] * kc[a];
        }
        n_tangent.push(z);
        let row = c.transpose() * &uk_inv;
        for (a, &i) in model.k_indices.iter().enumerate() {
            projection[(r, i)] = row[a];
        }
    }
    for (r, &i) in model.p_indices.iter().enumerate() {
        projection[(nt + r, i)] = 1.0;
    }
    let mut generators = n_tangent.clone();
    generators.extend(model.p_basis().into_iter().cloned());
    let m = generators.len();
    let omega_matrix =
        DMatrix::from_fn(m, m, |i, j| -model.killing_of(&xi_dual, &bracket(&generators[i], &generators[j])));
    Ok(InducedPointModel { model, kind, xi, xi_dual, n_tangent, generators, omega_matrix, projection })
}

impl<'a> InducedPointModel<'a> {
    /// ω at `[g, ξ]` on tangent vectors given by 𝔤-coordinates.
    pub fn omega(&self, w1: &DVector<f64>, w2: &DVector<f64>) -> f64 {
        let a = &self.projection * w1;
        let b = &self.projection * w2;
        (a.transpose() * &self.omega_matrix * b)[(0, 0)]
    }

    /// Generator coordinates of the fundamental field of `X` at `[g, ξ]`.
    pub fn fundamental_field(&self, g: &DMatrix<f64>, x: &DMatrix<f64>) -> DVector<f64> {
        let ginv = g.clone().try_inverse().expect("group element");
        -self.model.coords(&(&ginv * x * g))
    }

    /// Momentum map at `[g, ξ]`, as an element of 𝔤 via the Killing form.
    pub fn momentum(&self, g: &DMatrix<f64>) -> DMatrix<f64> {
        let ginv = g.clone().try_inverse().expect("group element");
        g * &self.xi_dual * ginv
    }

    /// Largest |ω(X_ξ, Y_ξ) + B(ξ, [X, Y])| over the T_N × T_N block (KKS) and the 𝔭 × 𝔭 block.
    pub fn block_orthogonality(&self) -> f64 {
        let nt = self.n_tangent.len();
        let m = self.generators.len();
        let mut worst = 0.0f64;
        for i in 0..nt {
            for j in nt..m {
                worst = worst.max(self.omega_matrix[(i, j)].abs());
            }
        }
        worst
    }

    pub fn antisymmetry(&self) -> f64 {
        (&self.omega_matrix + self.omega_matrix.transpose()).amax()
    }
}

pub fn smallest_singular_value(m: &InducedPointModel) -> f64 {
    if m.omega_matrix.is_empty() {
        return f64::INFINITY;
    }
    m.omega_matrix.clone().svd(false, false).singular_values.min()
}

pub fn check_nondegenerate(m: &InducedPointModel, tol: f64) -> bool {
    smallest_singular_value(m) > tol
}

fn random_coeffs<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> DVector<f64> {
    DVector::from_fn(n, |_, _| scale * rng.gen_range(-1.0..=1.0))
}

fn random_element<R: Rng + ?Sized>(model: &LieModel, rng: &mut R, scale: f64) -> DMatrix<f64> {
    model.matrix_of(&random_coeffs(rng, model.dim(), scale))
}

fn random_k<R: Rng + ?Sized>(model: &LieModel, rng: &mut R, scale: f64) -> DMatrix<f64> {
    let mut c = DVector::zeros(model.dim());
    for &i in &model.k_indices {
        c[i] = scale * rng.gen_range(-1.0..=1.0);
    }
    model.matrix_of(&c)
}

fn random_p<R: Rng + ?Sized>(model: &LieModel, rng: &mut R, scale: f64) -> DMatrix<f64> {
    let mut c = DVector::zeros(model.dim());
    for &i in &model.p_indices {
        c[i] = scale * rng.gen_range(-1.0..=1.0);
    }
    model.matrix_of(&c)
}

/// `|d⟨Φ, X⟩(v) − ω(X_M, v)|` at `[g, ξ]` with the derivative taken by a
/// central difference of step `h` along `[g·exp(sW), ξ]`.
pub fn momentum_defect(m: &InducedPointModel, g: &DMatrix<f64>, x: &DMatrix<f64>, w: &DMatrix<f64>, h: f64) -> f64 {
    let pair = |s: f64| m.model.killing_of(&m.momentum(&(g * expm(&(w * s)))), x);
    let fd = (pair(h) - pair(-h)) / (2.0 * h);
    let xm = m.fundamental_field(g, x);
    (fd - m.omega(&xm, &m.model.coords(w))).abs()
}

/// Maximum momentum-map defect over random base points near the identity,
/// random `X ∈ 𝔤` and random tangent directions.
pub fn momentum_residual<R: Rng + ?Sized>(m: &InducedPointModel, n_samples: usize, h: f64, rng: &mut R) -> f64 {
    let mut worst = 0.0f64;
    for _ in 0..n_samples {
        let g = expm(&random_element(m.model, rng, 0.3));
        let x = random_element(m.model, rng, 1.0);
        let c = random_coeffs(rng, m.generators.len(), 1.0);
        let mut w = DMatrix::zeros(m.model.n, m.model.n);
        for (ci, gen) in c.iter().zip(&m.generators) {
            w += gen * *ci;
        }
        worst = worst.max(momentum_defect(m, &g, &x, &w, h));
    }
    worst
}

/// `max |ω(X_M, Y_M) + ⟨Φ(m), [X, Y]⟩|` over random points `[g, ξ]` of the orbit model and random X, Y.
pub fn kks_pairing_check<R: Rng + ?Sized>(
    model: &LieModel,
    xi: &ChamberPoint,
    n_samples: usize,
    rng: &mut R,
) -> Result<f64> {
    let m = build_induced(model, xi, NKind::KOrbit)?;
    let mut worst = 0.0f64;
    for _ in 0..n_samples {
        let g = expm(&random_element(model, rng, 0.5));
        let x = random_element(model, rng, 1.0);
        let y = random_element(model, rng, 1.0);
        worst = worst.max(kks_defect(&m, &g, &x, &y));
    }
    Ok(worst)
}

pub fn kks_defect(m: &InducedPointModel, g: &DMatrix<f64>, x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
    let lhs = m.omega(&m.fundamental_field(g, x), &m.fundamental_field(g, y));
    let rhs = -m.model.killing_of(&m.momentum(g), &bracket(x, y));
    (lhs - rhs).abs()
}

/// Pullback of ω to the chart `x ↦ [exp(Σ x_i G_i), ξ]`.
pub fn chart_form(m: &InducedPointModel, x: &DVector<f64>) -> DMatrix<f64> {
    let n = m.model.n;
    let mut a = DMatrix::zeros(n, n);
    for (xi, g) in x.iter().zip(&m.generators) {
        a += g * *xi;
    }
    let mut ws = Vec::with_capacity(m.generators.len());
    let mut ginv = None;
    for g in &m.generators {
        let (e, de) = expm_frechet(&a, g);
        let inv = ginv.get_or_insert_with(|| e.try_inverse().expect("group element"));
        ws.push(&*inv * de);
    }
    let k = ws.len();
    DMatrix::from_fn(k, k, |i, j| -m.model.killing_of(&m.xi_dual, &bracket(&ws[i], &ws[j])))
}

/// Max over coordinate triples of the forward-difference estimate of dω at the chart origin.
pub fn closedness_of(form: impl Fn(&DVector<f64>) -> DMatrix<f64>, dim: usize, h: f64) -> f64 {
    let base = form(&DVector::zeros(dim));
    let deriv: Vec<DMatrix<f64>> = (0..dim)
        .map(|i| {
            let mut e = DVector::zeros(dim);
            e[i] = h;
            (form(&e) - &base) / h
        })
        .collect();
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                let d = deriv[i][(j, k)] - deriv[j][(i, k)] + deriv[k][(i, j)];
                worst = worst.max(d.abs());
            }
        }
    }
    worst
}

pub fn closedness_residual(m: &InducedPointModel, h: f64) -> f64 {
    closedness_of(|x| chart_form(m, x), m.generators.len(), h)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossSectionReport {
    pub samples: usize,
    pub members: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    /// Largest distance to `K·ξ` among points classified as members.
    pub worst_member_distance: f64,
    /// Smallest distance to `K·ξ` among non-members.
    pub min_nonmember_distance: f64,
    /// Smallest 𝔭-pairing among non-members.
    pub min_nonmember_pairing: f64,
}

impl CrossSectionReport {
    pub fn misclassified(&self) -> usize {
        self.false_positives + self.false_negatives
    }
}

/// `max_j |B(η, P_j)|`: distance of η from 𝔨* ≅ 𝔭⁰.
pub fn p_pairing(model: &LieModel, eta: &DMatrix<f64>) -> f64 {
    model.p_basis().iter().map(|p| model.killing_of(eta, p).abs()).fold(0.0, f64::max)
}

/// Distance (Frobenius) from η to the orbit `K·ξ`, by sampling followed by Gauss–Newton.
pub fn distance_to_k_orbit<R: Rng + ?Sized>(
    model: &LieModel,
    xi_dual: &DMatrix<f64>,
    eta: &DMatrix<f64>,
    rng: &mut R,
) -> f64 {
    let conj = |k: &DMatrix<f64>| k * xi_dual * k.transpose();
    let mut starts: Vec<(f64, DMatrix<f64>)> = Vec::new();
    let id = DMatrix::identity(model.n, model.n);
    starts.push(((conj(&id) - eta).norm(), id));
    for _ in 0..48 {
        let k = expm(&random_k(model, rng, PI));
        starts.push(((conj(&k) - eta).norm(), k));
    }
    starts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let kb = model.k_basis();
    let mut best = f64::INFINITY;
    for (_, k0) in starts.into_iter().take(4) {
        let mut k = k0;
        for _ in 0..60 {
            let cur = conj(&k);
            let r = &cur - eta;
            let mut j = DMatrix::zeros(model.n * model.n, kb.len());
            for (a, z) in kb.iter().enumerate() {
                let col = bracket(z, &cur);
                j.set_column(a, &DVector::from_iterator(col.len(), col.iter().cloned()));
            }
            let rv = DVector::from_iterator(r.len(), r.iter().cloned());
            let step = match j.svd(true, true).solve(&(-rv), 1e-12) {
                Ok(s) => s,
                Err(_) => break,
            };
            let mut z = DMatrix::zeros(model.n, model.n);
            for (s, b) in step.iter().zip(&kb) {
                z += *b * *s;
            }
            let cand = expm(&z) * &k;
            if (conj(&cand) - eta).norm() > r.norm() {
                break;
            }
            k = cand;
            if step.norm() < 1e-15 {
                break;
            }
        }
        best = best.min((conj(&k) - eta).norm());
    }
    best
}

/// Samples `η = Ad*(g)ξ` and checks `η ∈ 𝔨*` ⇔ `η ∈ K·ξ`.
pub fn cross_section_check<R: Rng + ?Sized>(
    model: &LieModel,
    xi: &ChamberPoint,
    n_samples: usize,
    tol: f64,
    rng: &mut R,
) -> Result<CrossSectionReport> {
    if xi.is_zero() {
        return Err(Error::ZeroXi);
    }
    let xi_dual = model.xi_dual(xi);
    let mut rep = CrossSectionReport {
        samples: n_samples,
        members: 0,
        false_positives: 0,
        false_negatives: 0,
        worst_member_distance: 0.0,
        min_nonmember_distance: f64::INFINITY,
        min_nonmember_pairing: f64::INFINITY,
    };
    for s in 0..n_samples {
        let g = match s % 3 {
            0 => expm(&random_k(model, rng, 1.0)),
            1 => expm(&random_element(model, rng, 1.0)),
            _ => {
                let k1 = expm(&random_k(model, rng, 1.0));
                let k2 = expm(&random_k(model, rng, 1.0));
                k1 * expm(&random_p(model, rng, 1.0)) * k2
            }
        };
        let ginv = g.clone().try_inverse().expect("group element");
        let eta = &g * &xi_dual * ginv;
        let pairing = p_pairing(model, &eta);
        let member = pairing < tol;
        let dist = distance_to_k_orbit(model, &xi_dual, &eta, rng);
        let on_orbit = dist < tol;
        if member {
            rep.members += 1;
            rep.worst_member_distance = rep.worst_member_distance.max(dist);
        } else {
            rep.min_nonmember_distance = rep.min_nonmember_distance.min(dist);
            rep.min_nonmember_pairing = rep.min_nonmember_pairing.min(pairing);
        }
        match (member, on_orbit) {
            (true, false) => rep.false_positives += 1,
            (false, true) => rep.false_negatives += 1,
            _ => {}
        }
    }
    Ok(rep)
}
