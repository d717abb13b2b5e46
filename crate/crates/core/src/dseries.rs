//! Discrete-series parameters and the Dirac-induction multiplicity map.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed};
use rand::Rng;

use crate::character::{antisymmetrize, root_product, FormalCharacter, VirtualRep};
use crate::error::{Error, Result};
use crate::multiplicity::{decompose, weyl_character};
use crate::rootsys::{RealRootSystem, Subsystem};
use crate::weight::Weight;
use crate::weyl::WeylGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteSeriesParam {
    pub lambda: Weight,
    /// Indices into `rs.roots` of R⁺(λ) = {α : (α, λ) > 0}.
    pub positive_system: Vec<usize>,
    pub q: usize,
    pub lowest_k_type: Weight,
}

impl DiscreteSeriesParam {
    pub fn sign(&self) -> i64 {
        if self.q.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// `sign · numerator / Π_{α ∈ denominator_roots} (e^{α/2} − e^{−α/2})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharFraction {
    pub numerator: FormalCharacter,
    pub denominator_roots: Vec<Weight>,
    pub sign: i64,
}

impl CharFraction {
    pub fn evaluate(&self, theta: &[f64]) -> Result<Complex64> {
        let mut den = Complex64::new(1.0, 0.0);
        for a in &self.denominator_roots {
            den *= root_factor(a, theta);
        }
        Ok(self.numerator.evaluate(theta)? * self.sign as f64 / den)
    }
}

fn root_factor(alpha: &Weight, theta: &[f64]) -> Complex64 {
    let phase: f64 = alpha.coords().iter().zip(theta).map(|(&a, t)| 0.25 * a as f64 * t).sum();
    Complex64::new(0.0, 2.0 * libm::sin(phase))
}

/// Validates a Harish-Chandra parameter: regular, positive on R_c⁺, and
/// λ − ρ in the weight lattice (so λ − ρ_c ∈ Λ + ρ_n is a compact highest weight).
pub fn make_param(rs: &RealRootSystem, lambda: &Weight) -> Result<DiscreteSeriesParam> {
    if lambda.rank() != rs.rank {
        return Err(Error::DimensionMismatch { expected: rs.rank, got: lambda.rank() });
    }
    if rs.roots.iter().any(|r| rs.inner_scaled(&r.weight, lambda) == 0) {
        return Err(Error::Singular(lambda.clone()));
    }
    if rs.positive_roots_of(Subsystem::Compact).any(|r| rs.inner_scaled(&r.weight, lambda) < 0) {
        return Err(Error::NotCompatible(lambda.clone()));
    }
    if !(lambda - &rs.rho).is_integral() {
        return Err(Error::NotIntegral(lambda.clone()));
    }
    let lowest = lambda - &rs.rho_c;
    debug_assert!(rs.dominant(&lowest, Subsystem::Compact) && rs.integral(&lowest, Subsystem::Compact));
    let positive_system: Vec<usize> =
        (0..rs.roots.len()).filter(|&i| rs.inner_scaled(&rs.roots[i].weight, lambda) > 0).collect();
    let q = positive_system.iter().filter(|&&i| rs.roots[i].noncompact).count();
    Ok(DiscreteSeriesParam { lambda: lambda.clone(), positive_system, q, lowest_k_type: lowest })
}

pub fn harish_chandra_numerator(rs: &RealRootSystem, p: &DiscreteSeriesParam) -> CharFraction {
    let wk = WeylGroup::generate(rs, Subsystem::Compact);
    CharFraction {
        numerator: antisymmetrize(&p.lambda, &wk),
        denominator_roots: p.positive_system.iter().map(|&i| rs.roots[i].weight.clone()).collect(),
        sign: p.sign(),
    }
}

/// `Π_{α ∈ R_n⁺} (e^{α/2} − e^{−α/2})` for the standard positive system.
pub fn spinor_difference_char(rs: &RealRootSystem) -> FormalCharacter {
    root_product(rs.rank, rs.positive_roots().filter(|r| r.noncompact).map(|r| &r.weight))
}

/// The same product over the noncompact roots of R⁺(λ).
pub fn spinor_difference_char_for(rs: &RealRootSystem, p: &DiscreteSeriesParam) -> FormalCharacter {
    root_product(rs.rank, p.positive_system.iter().map(|&i| &rs.roots[i]).filter(|r| r.noncompact).map(|r| &r.weight))
}

/// Exact computation of `Θ_λ · χ_{Δ*}` as a virtual K-representation.
pub fn ds_times_spinor_dual(rs: &RealRootSystem, p: &DiscreteSeriesParam) -> Result<VirtualRep> {
    let frac = harish_chandra_numerator(rs, p);
    // The spinor factors cancel the noncompact part of the denominator, leaving R_c⁺.
    let remaining: Vec<&Weight> =
        p.positive_system.iter().map(|&i| &rs.roots[i]).filter(|r| !r.noncompact).map(|r| &r.weight).collect();
    let den = root_product(rs.rank, remaining);
    let quotient = frac
        .numerator
        .exact_divide(&den)
        .map_err(|_| Error::IdentityViolation("compact Weyl denominator does not divide the numerator".into()))?;
    let ch = quotient.scale(&BigInt::from(frac.sign));
    let rep = decompose(rs, &ch, Subsystem::Compact)
        .map_err(|e| Error::IdentityViolation(alloc::format!("quotient is not a K-character: {e}")))?;
    let single = rep.len() == 1 && rep.iter().all(|(_, c)| c.abs().is_one());
    if !single {
        return Err(Error::IdentityViolation("quotient is not plus or minus one irreducible character".into()));
    }
    Ok(rep)
}

/// `(−1)^q` times the multiplicity of `λ − ρ_c` in `rep`.
pub fn dirac_induction_reduce(p: &DiscreteSeriesParam, rep: &VirtualRep) -> BigInt {
    rep.get(&p.lowest_k_type) * BigInt::from(p.sign())
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub lambda: Weight,
    pub samples: usize,
    pub max_residual: f64,
    pub pass: bool,
}

/// Samples regular torus points and compares `Θ_λ χ_{Δ*}` with `(−1)^q χ_{λ−ρ_c}`.
pub fn verify_character_identity<R: Rng + ?Sized>(
    rs: &RealRootSystem,
    p: &DiscreteSeriesParam,
    n_points: usize,
    tol: f64,
    rng: &mut R,
) -> Result<IdentityReport> {
    verify_with_sign(rs, p, n_points, tol, rng, p.sign())
}

#[doc(hidden)]
pub fn verify_with_sign<R: Rng + ?Sized>(
    rs: &RealRootSystem,
    p: &DiscreteSeriesParam,
    n_points: usize,
    tol: f64,
    rng: &mut R,
    rhs_sign: i64,
) -> Result<IdentityReport> {
    let frac = harish_chandra_numerator(rs, p);
    let spinor_roots: Vec<&Weight> =
        p.positive_system.iter().map(|&i| &rs.roots[i]).filter(|r| r.noncompact).map(|r| &r.weight).collect();
    let chi = weyl_character(rs, &p.lowest_k_type, Subsystem::Compact)?;
    let mut max_residual = 0.0f64;
    let mut done = 0;
    while done < n_points {
        let theta: Vec<f64> = (0..rs.rank).map(|_| rng.gen_range(0.0..TAU)).collect();
        if frac.denominator_roots.iter().any(|a| root_factor(a, &theta).norm() < 1e-6) {
            continue;
        }
        let mut spinor = Complex64::new(1.0, 0.0);
        for a in &spinor_roots {
            spinor *= root_factor(a, &theta);
        }
        let lhs = frac.evaluate(&theta)? * spinor;
        let rhs = chi.evaluate(&theta)? * rhs_sign as f64;
        max_residual = max_residual.max((lhs - rhs).norm());
        done += 1;
    }
    Ok(IdentityReport { lambda: p.lambda.clone(), samples: n_points, max_residual, pass: max_residual < tol })
}

/// Random valid parameters `ρ + ν`, ν integral with coordinates in `[-spread, spread]`.
pub fn random_params<R: Rng + ?Sized>(
    rs: &RealRootSystem,
    count: usize,
    spread: i64,
    rng: &mut R,
) -> Vec<DiscreteSeriesParam> {
    let mut out: Vec<DiscreteSeriesParam> = Vec::new();
    while out.len() < count {
        let nu: Vec<i64> = (0..rs.rank).map(|_| 2 * rng.gen_range(-spread..=spread)).collect();
        let lambda = &rs.rho + &Weight::new(nu);
        if let Ok(p) = make_param(rs, &lambda) {
            if p.lambda != rs.rho && out.iter().all(|o| o.lambda != p.lambda) {
                out.push(p);
            }
        }
    }
    out
}
