//! End-to-end multiplicity checks: compact orbit(-product) quantisation
//! against an independent weight-counting oracle, and its induced version
//! through the Dirac-induction reduction map.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::character::VirtualRep;
use crate::dseries::{dirac_induction_reduce, make_param, DiscreteSeriesParam};
use crate::elliptic::{strongly_elliptic, ChamberPoint};
use crate::error::{Error, Result};
use crate::multiplicity::{tensor_decompose, Freudenthal};
use crate::rootsys::{RealRootSystem, Subsystem};
use crate::weight::Weight;
use crate::weyl::WeylGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecKind {
    Orbit,
    OrbitProduct,
}

/// A compact Hamiltonian manifold from the catalog: the orbit through
/// `λ + ρ'`, or a product of two such orbits, for the chosen subsystem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactHamiltonianSpec {
    pub kind: SpecKind,
    pub subsystem: Subsystem,
    pub lambdas: Vec<Weight>,
}

impl CompactHamiltonianSpec {
    pub fn orbit(subsystem: Subsystem, lambda: Weight) -> Self {
        CompactHamiltonianSpec { kind: SpecKind::Orbit, subsystem, lambdas: alloc::vec![lambda] }
    }

    pub fn product(subsystem: Subsystem, l1: Weight, l2: Weight) -> Self {
        CompactHamiltonianSpec { kind: SpecKind::OrbitProduct, subsystem, lambdas: alloc::vec![l1, l2] }
    }

    pub fn validate(&self, rs: &RealRootSystem) -> Result<()> {
        let want = match self.kind {
            SpecKind::Orbit => 1,
            SpecKind::OrbitProduct => 2,
        };
        if self.lambdas.len() != want {
            return Err(Error::InvalidSpec(format!("expected {want} weights, got {}", self.lambdas.len())));
        }
        let rho = rs.rho_of(self.subsystem);
        for l in &self.lambdas {
            if l.rank() != rs.rank {
                return Err(Error::InvalidSpec(format!("weight {l} has rank {}, expected {}", l.rank(), rs.rank)));
            }
            if !rs.dominant(l, self.subsystem) || !rs.integral(l, self.subsystem) {
                return Err(Error::InvalidSpec(format!("weight {l} is not dominant integral")));
            }
            if !rs.regular(&(l + rho), self.subsystem) {
                return Err(Error::InvalidSpec(format!("orbit through {l} + rho is singular")));
            }
        }
        Ok(())
    }
}

/// Character-level quantisation of the spec.
pub fn quantize_compact(rs: &RealRootSystem, spec: &CompactHamiltonianSpec) -> Result<VirtualRep> {
    spec.validate(rs)?;
    match spec.kind {
        SpecKind::Orbit => VirtualRep::single(rs, spec.subsystem, spec.lambdas[0].clone(), 1),
        SpecKind::OrbitProduct => tensor_decompose(rs, &spec.lambdas[0], &spec.lambdas[1], spec.subsystem),
    }
}

/// Weight-counting oracle: the weight multiset of the product, convolved
/// directly from Freudenthal weight systems, then the alternating trace.
#[derive(Clone, Debug)]
pub struct MultiplicityOracle<'a> {
    rs: &'a RealRootSystem,
    sub: Subsystem,
    weyl: WeylGroup,
    weights: BTreeMap<Weight, i64>,
}

impl<'a> MultiplicityOracle<'a> {
    pub fn new(rs: &'a RealRootSystem, spec: &CompactHamiltonianSpec) -> Result<Self> {
        spec.validate(rs)?;
        let mut weights: BTreeMap<Weight, i64> = BTreeMap::new();
        weights.insert(Weight::zero(rs.rank), 1);
        for l in &spec.lambdas {
            let factor = Freudenthal::new(rs, l, spec.subsystem)?.weight_system();
            let mut next: BTreeMap<Weight, i64> = BTreeMap::new();
            for (a, ma) in &weights {
                for (b, mb) in &factor {
                    *next.entry(a + b).or_insert(0) += ma * mb;
                }
            }
            weights = next;
        }
        Ok(MultiplicityOracle { rs, sub: spec.subsystem, weyl: WeylGroup::generate(rs, spec.subsystem), weights })
    }

    pub fn weights(&self) -> &BTreeMap<Weight, i64> {
        &self.weights
    }

    /// `Σ_w ε(w) m(w(μ+ρ') − ρ')`.
    pub fn multiplicity(&self, mu: &Weight) -> Result<i64> {
        if !self.rs.dominant(mu, self.sub) {
            return Err(Error::NotDominant(mu.clone()));
        }
        let rho = self.rs.rho_of(self.sub);
        let top = mu + rho;
        let mut acc = 0;
        for i in 0..self.weyl.order() {
            let nu = &self.weyl.act(i, &top) - rho;
            acc += self.weyl.signs[i] * self.weights.get(&nu).copied().unwrap_or(0);
        }
        Ok(acc)
    }

    pub fn support_box(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = alloc::vec![i64::MAX; self.rs.rank];
        let mut hi = alloc::vec![i64::MIN; self.rs.rank];
        for w in self.weights.keys() {
            for (i, &x) in w.coords().iter().enumerate() {
                lo[i] = lo[i].min(x);
                hi[i] = hi[i].max(x);
            }
        }
        (lo, hi)
    }
}

pub fn reduced_multiplicity_oracle(rs: &RealRootSystem, spec: &CompactHamiltonianSpec, mu: &Weight) -> Result<i64> {
    MultiplicityOracle::new(rs, spec)?.multiplicity(mu)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QrReport {
    pub mu: Weight,
    pub quantized: BigInt,
    pub oracle: i64,
    pub in_support: bool,
    pub pass: bool,
}

/// Compares both sides at every dominant integral μ of the support box,
/// widened by `MARGIN` doubled units on each side.
pub fn verify_qr_compact(rs: &RealRootSystem, spec: &CompactHamiltonianSpec) -> Result<Vec<QrReport>> {
    const MARGIN: i64 = 4;
    let q = quantize_compact(rs, spec)?;
    let oracle = MultiplicityOracle::new(rs, spec)?;
    let (lo, hi) = oracle.support_box();
    let mut out = Vec::new();
    let mut cur: Vec<i64> = lo.iter().map(|x| x - MARGIN).collect();
    loop {
        let mu = Weight::new(cur.clone());
        if rs.dominant(&mu, spec.subsystem) && rs.integral(&mu, spec.subsystem) {
            let left = q.get(&mu);
            let right = oracle.multiplicity(&mu)?;
            out.push(QrReport {
                in_support: oracle.weights.contains_key(&mu),
                pass: left == BigInt::from(right),
                quantized: left,
                oracle: right,
                mu,
            });
        }
        let mut i = 0;
        loop {
            if i == cur.len() {
                return Ok(out);
            }
            cur[i] += 1;
            if cur[i] <= hi[i] + MARGIN {
                break;
            }
            cur[i] = lo[i] - MARGIN;
            i += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GssReport {
    pub lambda: Weight,
    pub lowest_k_type: Weight,
    pub sign: i64,
    /// `R_G(Q_G(G ×_K N))` through Dirac induction of the K-quantisation.
    pub lhs: BigInt,
    /// `(−1)^q` times the oracle multiplicity of `λ − ρ_c`.
    pub rhs: BigInt,
    /// Whether `λ − ρ_c` carries weight in the K-quantisation's weight support.
    pub in_support: bool,
    /// Informational: every orbit `K·(λᵢ + ρ_c)` avoids the noncompact walls.
    pub orbits_strongly_elliptic: bool,
    pub pass: bool,
}

pub fn verify_gss_induced(rs: &RealRootSystem, spec: &CompactHamiltonianSpec, lambda_hc: &Weight) -> Result<GssReport> {
    if spec.subsystem != Subsystem::Compact {
        return Err(Error::InvalidSpec("the induced check needs a spec over the compact subsystem".into()));
    }
    let p: DiscreteSeriesParam = make_param(rs, lambda_hc)?;
    let lhs = dirac_induction_reduce(&p, &quantize_compact(rs, spec)?);
    let oracle = MultiplicityOracle::new(rs, spec)?;
    let rhs = BigInt::from(p.sign() * oracle.multiplicity(&p.lowest_k_type)?);
    let orbits_strongly_elliptic =
        spec.lambdas.iter().all(|l| strongly_elliptic(rs, &ChamberPoint::from_weight(&(l + &rs.rho_c))));
    Ok(GssReport {
        lambda: lambda_hc.clone(),
        in_support: oracle.weights.contains_key(&p.lowest_k_type),
        sign: p.sign(),
        pass: lhs == rhs,
        lowest_k_type: p.lowest_k_type,
        lhs,
        rhs,
        orbits_strongly_elliptic,
    })
}

/// Integrality of λ: the shadow of Spin^c-prequantizability of the orbit through λ + ρ.
pub fn spinc_prequantizable(rs: &RealRootSystem, lambda: &Weight) -> bool {
    lambda.rank() == rs.rank && lambda.is_integral()
}
