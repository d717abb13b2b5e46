//! Irreducible characters and weight multiplicities, by three independent
//! routes: the Weyl quotient, Kostant's alternating sum and Freudenthal's
//! recursion.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::character::{antisymmetrize, FormalCharacter, VirtualRep};
use crate::error::{Error, Result};
use crate::rootsys::{RealRootSystem, Subsystem};
use crate::weight::Weight;
use crate::weyl::WeylGroup;

fn check_highest(rs: &RealRootSystem, lambda: &Weight, sub: Subsystem) -> Result<()> {
    if lambda.rank() != rs.rank {
        return Err(Error::DimensionMismatch { expected: rs.rank, got: lambda.rank() });
    }
    if !rs.dominant(lambda, sub) {
        return Err(Error::NotDominant(lambda.clone()));
    }
    if !rs.integral(lambda, sub) {
        return Err(Error::NotIntegral(lambda.clone()));
    }
    Ok(())
}

/// Character of the irreducible representation of highest weight λ for the
/// chosen subsystem, as the quotient `A_{λ+ρ'} / A_{ρ'}`.
pub fn weyl_character(rs: &RealRootSystem, lambda: &Weight, sub: Subsystem) -> Result<FormalCharacter> {
    let w = WeylGroup::generate(rs, sub);
    weyl_character_with(rs, &w, lambda, sub)
}

/// As [`weyl_character`] with a prebuilt Weyl group for `sub`.
pub fn weyl_character_with(
    rs: &RealRootSystem,
    w: &WeylGroup,
    lambda: &Weight,
    sub: Subsystem,
) -> Result<FormalCharacter> {
    check_highest(rs, lambda, sub)?;
    let rho = rs.rho_of(sub);
    let num = antisymmetrize(&(lambda + rho), w);
    let den = antisymmetrize(rho, w);
    num.exact_divide(&den)
}

/// Number of ways to write μ as a nonnegative integer combination of the
/// positive roots of `sub` (0 off the root lattice).
pub fn kostant_partition(rs: &RealRootSystem, mu: &Weight, sub: Subsystem) -> u64 {
    let target = rs.to_simple_coords(mu);
    if target.iter().any(|x| !x.is_integer()) {
        return 0;
    }
    let target: Vec<i64> = target.iter().map(|x| x.to_integer()).collect();
    let roots: Vec<Vec<i64>> = rs.positive_roots_of(sub).map(|r| r.simple.clone()).collect();
    let mut memo = BTreeMap::new();
    partitions(&roots, 0, target, &mut memo)
}

fn partitions(roots: &[Vec<i64>], k: usize, rem: Vec<i64>, memo: &mut BTreeMap<(usize, Vec<i64>), u64>) -> u64 {
    if rem.iter().any(|&x| x < 0) {
        return 0;
    }
    if k == roots.len() {
        return rem.iter().all(|&x| x == 0) as u64;
    }
    if let Some(&v) = memo.get(&(k, rem.clone())) {
        return v;
    }
    let mut total = 0;
    let mut cur = rem.clone();
    while cur.iter().all(|&x| x >= 0) {
        total += partitions(roots, k + 1, cur.clone(), memo);
        for (c, r) in cur.iter_mut().zip(&roots[k]) {
            *c -= r;
        }
    }
    memo.insert((k, rem), total);
    total
}

/// `Σ_w ε(w) P(w(λ+ρ') − (μ+ρ'))`.
pub fn mult_kostant(rs: &RealRootSystem, lambda: &Weight, mu: &Weight, sub: Subsystem) -> Result<i64> {
    check_highest(rs, lambda, sub)?;
    let w = WeylGroup::generate(rs, sub);
    let rho = rs.rho_of(sub);
    let top = lambda + rho;
    let shifted = mu + rho;
    let mut acc = 0i64;
    for i in 0..w.order() {
        acc += w.signs[i] * kostant_partition(rs, &(&w.act(i, &top) - &shifted), sub) as i64;
    }
    Ok(acc)
}

/// Freudenthal's recursion, memoized on dominant representatives.
pub struct Freudenthal<'a> {
    rs: &'a RealRootSystem,
    sub: Subsystem,
    lambda: Weight,
    norm_top: i64,
    rho: Weight,
    positive: Vec<Weight>,
    memo: BTreeMap<Weight, i64>,
}

impl<'a> Freudenthal<'a> {
    pub fn new(rs: &'a RealRootSystem, lambda: &Weight, sub: Subsystem) -> Result<Self> {
        check_highest(rs, lambda, sub)?;
        let rho = rs.rho_of(sub).clone();
        let top = lambda + &rho;
        Ok(Freudenthal {
            rs,
            sub,
            lambda: lambda.clone(),
            norm_top: rs.inner_scaled(&top, &top),
            rho,
            positive: rs.positive_roots_of(sub).map(|r| r.weight.clone()).collect(),
            memo: BTreeMap::new(),
        })
    }

    pub fn mult(&mut self, mu: &Weight) -> i64 {
        if !self.rs.below(mu, &self.lambda, self.sub) {
            return 0;
        }
        let d = self.rs.dominant_conjugate(mu, self.sub);
        if d == self.lambda {
            return 1;
        }
        if !self.rs.below(&d, &self.lambda, self.sub) {
            return 0;
        }
        if let Some(&m) = self.memo.get(&d) {
            return m;
        }
        let mut rhs = 0i64;
        for a in self.positive.clone() {
            let mut nu = &d + &a;
            while self.rs.below(&nu, &self.lambda, self.sub) {
                let m = self.mult(&nu);
                rhs += 2 * self.rs.inner_scaled(&nu, &a) * m;
                nu = &nu + &a;
            }
        }
        let shifted = &d + &self.rho;
        let lhs = self.norm_top - self.rs.inner_scaled(&shifted, &shifted);
        debug_assert!(lhs > 0 && rhs % lhs == 0);
        let m = rhs / lhs;
        self.memo.insert(d, m);
        m
    }

    /// All weights with nonzero multiplicity, found by descending along the
    /// simple roots of the subsystem.
    pub fn weight_system(&mut self) -> BTreeMap<Weight, i64> {
        let simple: Vec<Weight> = self.rs.simple_roots_of(self.sub).iter().map(|r| r.weight.clone()).collect();
        let mut out = BTreeMap::new();
        let mut stack = alloc::vec![self.lambda.clone()];
        out.insert(self.lambda.clone(), 1);
        while let Some(mu) = stack.pop() {
            for a in &simple {
                let nu = &mu - a;
                if out.contains_key(&nu) {
                    continue;
                }
                let m = self.mult(&nu);
                if m > 0 {
                    out.insert(nu.clone(), m);
                    stack.push(nu);
                }
            }
        }
        out
    }
}

pub fn mult_freudenthal(rs: &RealRootSystem, lambda: &Weight, mu: &Weight, sub: Subsystem) -> Result<i64> {
    Ok(Freudenthal::new(rs, lambda, sub)?.mult(mu))
}

/// Weyl's dimension formula, exactly.
pub fn weyl_dimension(rs: &RealRootSystem, lambda: &Weight, sub: Subsystem) -> BigInt {
    let rho = rs.rho_of(sub);
    let top = lambda + rho;
    let mut acc = Ratio::from_integer(BigInt::from(1));
    for r in rs.positive_roots_of(sub) {
        acc *= Ratio::new(BigInt::from(r.pair_doubled(&top)), BigInt::from(r.pair_doubled(rho)));
    }
    acc.to_integer()
}

/// Writes a W-invariant character as an integer combination of irreducible
/// characters, peeling off the top weight by `(μ, ρ')` level each time.
pub fn decompose(rs: &RealRootSystem, ch: &FormalCharacter, sub: Subsystem) -> Result<VirtualRep> {
    let w = WeylGroup::generate(rs, sub);
    let rho = rs.rho_of(sub);
    let mut rem = ch.clone();
    let mut out = VirtualRep::new(sub);
    while !rem.is_zero() {
        let (top, c) = rem
            .terms()
            .max_by(|(a, _), (b, _)| rs.inner_scaled(a, rho).cmp(&rs.inner_scaled(b, rho)).then_with(|| a.cmp(b)))
            .map(|(a, c)| (a.clone(), c.clone()))
            .unwrap();
        if !rs.dominant(&top, sub) {
            return Err(Error::NotInvariant(top));
        }
        let irr = weyl_character_with(rs, &w, &top, sub)?;
        rem = &rem - &irr.scale(&c);
        out.insert(rs, top, c)?;
    }
    Ok(out)
}

/// Multiplicities of irreducibles in `V_{λ1} ⊗ V_{λ2}`.
pub fn tensor_decompose(rs: &RealRootSystem, l1: &Weight, l2: &Weight, sub: Subsystem) -> Result<VirtualRep> {
    let w = WeylGroup::generate(rs, sub);
    let a = weyl_character_with(rs, &w, l1, sub)?;
    let b = weyl_character_with(rs, &w, l2, sub)?;
    decompose(rs, &(&a * &b), sub)
}

/// Total dimension `Σ_μ N^μ dim V_μ` of a virtual representation.
pub fn virtual_dimension(rs: &RealRootSystem, v: &VirtualRep) -> BigInt {
    v.iter().map(|(w, c)| c * weyl_dimension(rs, w, v.chamber)).sum()
}

pub fn to_i64(c: &BigInt) -> Option<i64> {
    if c.is_zero() {
        Some(0)
    } else {
        c.to_i64()
    }
}
