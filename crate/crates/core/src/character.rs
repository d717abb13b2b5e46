//! Exact exponential sums on the half-weight lattice.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rootsys::{RealRootSystem, Subsystem};
use crate::weight::Weight;
use crate::weyl::WeylGroup;

/// A finite sum `Σ c_μ e^{μ/2}` over doubled weights μ with nonzero integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalCharacter {
    rank: usize,
    terms: BTreeMap<Weight, BigInt>,
}

impl FormalCharacter {
    pub fn zero(rank: usize) -> Self {
        FormalCharacter { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(Weight::zero(rank), 1)
    }

    pub fn monomial(w: Weight, c: impl Into<BigInt>) -> Self {
        let mut f = Self::zero(w.rank());
        f.add_term(w, c.into());
        f
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Weight, BigInt)>) -> Result<Self> {
        let mut f = Self::zero(rank);
        for (w, c) in terms {
            if w.rank() != rank {
                return Err(Error::DimensionMismatch { expected: rank, got: w.rank() });
            }
            f.add_term(w, c);
        }
        Ok(f)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Weight) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<(&Weight, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn trailing(&self) -> Option<(&Weight, &BigInt)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, w: Weight, c: BigInt) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(w.rank(), self.rank);
        let slot = self.terms.entry(w.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: other.rank });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.rank);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    /// Multiplies by the monomial `e^{μ/2}`.
    pub fn shift(&self, mu: &Weight) -> Self {
        FormalCharacter { rank: self.rank, terms: self.terms.iter().map(|(w, c)| (w + mu, c.clone())).collect() }
    }

    /// Applies a linear map to every exponent (pullback along a lattice map).
    pub fn map_weights(&self, f: impl Fn(&Weight) -> Weight) -> Self {
        let mut out = Self::zero(self.rank);
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    /// Quotient by leading-term elimination in the graded-lex order.
    ///
    /// Quotient exponents are confined to the coordinate box implied by the
    /// supports of the operands and to exponents at or above
    /// `trail(numerator) − trail(denominator)`; leaving either region proves
    /// there is no exact quotient.
    pub fn exact_divide(&self, den: &Self) -> Result<Self> {
        self.check_rank(den)?;
        let (dl, dc) = match den.leading() {
            Some((w, c)) => (w.clone(), c.clone()),
            None => return Err(Error::NotDivisible),
        };
        if self.is_zero() {
            return Ok(Self::zero(self.rank));
        }
        let dt = den.trailing().unwrap().0.clone();
        let floor = self.trailing().unwrap().0 - &dt;
        let (nlo, nhi) = self.bounding_box();
        let (dlo, dhi) = den.bounding_box();
        let lo: Vec<i64> = nlo.iter().zip(&dlo).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = nhi.iter().zip(&dhi).map(|(a, b)| a - b).collect();

        let mut rem = self.clone();
        let mut quot = Self::zero(self.rank);
        while let Some((rl, rc)) = rem.leading() {
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            let t = rl - &dl;
            let in_box = t.coords().iter().enumerate().all(|(i, &x)| lo[i] <= x && x <= hi[i]);
            if t < floor || !in_box {
                return Err(Error::NotDivisible);
            }
            for (w, c) in &den.terms {
                rem.add_term(w + &t, -(c * &qc));
            }
            quot.add_term(t, qc);
        }
        Ok(quot)
    }

    /// Coordinate-wise minimum and maximum over the support.
    pub fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = alloc::vec![i64::MAX; self.rank];
        let mut hi = alloc::vec![i64::MIN; self.rank];
        for w in self.terms.keys() {
            for (i, &x) in w.coords().iter().enumerate() {
                lo[i] = lo[i].min(x);
                hi[i] = hi[i].max(x);
            }
        }
        (lo, hi)
    }

    /// `Σ c_μ exp(i Σ_j (μ_j / 2) θ_j)`.
    pub fn evaluate(&self, theta: &[f64]) -> Result<Complex64> {
        if theta.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: theta.len() });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, c) in &self.terms {
            let phase: f64 = w.coords().iter().zip(theta).map(|(&m, t)| 0.5 * m as f64 * t).sum();
            acc += Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), phase);
        }
        Ok(acc)
    }

    /// Sum of coefficients, i.e. the value at the identity.
    pub fn degree(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl Add for &FormalCharacter {
    type Output = FormalCharacter;
    fn add(self, rhs: &FormalCharacter) -> FormalCharacter {
        self.try_add(rhs).expect("rank mismatch")
    }
}

impl Neg for &FormalCharacter {
    type Output = FormalCharacter;
    fn neg(self) -> FormalCharacter {
        self.scale(&-BigInt::one())
    }
}

impl Sub for &FormalCharacter {
    type Output = FormalCharacter;
    fn sub(self, rhs: &FormalCharacter) -> FormalCharacter {
        self + &(-rhs)
    }
}

impl Mul for &FormalCharacter {
    type Output = FormalCharacter;
    fn mul(self, rhs: &FormalCharacter) -> FormalCharacter {
        self.try_mul(rhs).expect("rank mismatch")
    }
}

/// `Σ_w ε(w) e^{wλ}`.
pub fn antisymmetrize(lambda: &Weight, w: &WeylGroup) -> FormalCharacter {
    let mut out = FormalCharacter::zero(lambda.rank());
    for i in 0..w.order() {
        out.add_term(w.act(i, lambda), BigInt::from(w.signs[i]));
    }
    out
}

/// `Π (e^{α/2} − e^{−α/2})` over the given roots (doubled coordinates).
pub fn root_product<'a>(rank: usize, roots: impl IntoIterator<Item = &'a Weight>) -> FormalCharacter {
    let mut out = FormalCharacter::one(rank);
    for a in roots {
        let half = Weight::new(a.coords().iter().map(|c| c / 2).collect());
        let mut factor = FormalCharacter::monomial(half.clone(), 1);
        factor.add_term(-half, -BigInt::one());
        out = &out * &factor;
    }
    out
}

/// Sparse multiplicities over weights dominant for one chamber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualRep {
    pub chamber: Subsystem,
    mults: BTreeMap<Weight, BigInt>,
}

impl VirtualRep {
    pub fn new(chamber: Subsystem) -> Self {
        VirtualRep { chamber, mults: BTreeMap::new() }
    }

    pub fn single(rs: &RealRootSystem, chamber: Subsystem, w: Weight, c: impl Into<BigInt>) -> Result<Self> {
        let mut v = Self::new(chamber);
        v.insert(rs, w, c.into())?;
        Ok(v)
    }

    /// Adds `c` to the multiplicity of `w`, which must be dominant for the chamber.
    pub fn insert(&mut self, rs: &RealRootSystem, w: Weight, c: BigInt) -> Result<()> {
        if w.rank() != rs.rank {
            return Err(Error::DimensionMismatch { expected: rs.rank, got: w.rank() });
        }
        if !rs.dominant(&w, self.chamber) {
            return Err(Error::NotDominant(w));
        }
        let slot = self.mults.entry(w.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.mults.remove(&w);
        }
        Ok(())
    }

    pub fn get(&self, w: &Weight) -> BigInt {
        self.mults.get(w).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.mults.iter()
    }

    pub fn len(&self) -> usize {
        self.mults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.mults {
            let slot = out.mults.entry(w.clone()).or_default();
            *slot += c;
            if slot.is_zero() {
                out.mults.remove(w);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    fn ch(rank: usize, terms: &[(&[i64], i64)]) -> FormalCharacter {
        FormalCharacter::from_terms(rank, terms.iter().map(|(k, c)| (w(k), BigInt::from(*c)))).unwrap()
    }

    #[test]
    fn ring_basics() {
        let a = ch(1, &[(&[2], 3), (&[-1], -1)]);
        assert!((&a + &(-&a)).is_zero());
        assert_eq!(&FormalCharacter::one(1) * &a, a);
        // (e^{α/2} − e^{−α/2})(e^{α/2} + e^{−α/2}) = e^{α} − e^{−α}, α doubled = 4
        let d = ch(1, &[(&[2], 1), (&[-2], -1)]);
        let s = ch(1, &[(&[2], 1), (&[-2], 1)]);
        assert_eq!(&d * &s, ch(1, &[(&[4], 1), (&[-4], -1)]));
        assert!(matches!(a.try_mul(&ch(2, &[(&[0, 0], 1)])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn division() {
        let num = ch(1, &[(&[4], 1), (&[-4], -1)]);
        let den = ch(1, &[(&[2], 1), (&[-2], -1)]);
        assert_eq!(num.exact_divide(&den).unwrap(), ch(1, &[(&[2], 1), (&[-2], 1)]));
        let a = ch(2, &[(&[1, 3], 2), (&[0, -2], 5)]);
        let m = FormalCharacter::monomial(w(&[3, -1]), 1);
        assert_eq!(a.exact_divide(&m).unwrap(), a.shift(&w(&[-3, 1])));
        assert_eq!(num.exact_divide(&ch(1, &[(&[2], 1), (&[0], 2)])), Err(Error::NotDivisible));
        assert_eq!(ch(1, &[(&[0], 3)]).exact_divide(&ch(1, &[(&[0], 2)])), Err(Error::NotDivisible));
    }

    #[test]
    fn antisymmetrize_small() {
        let rs = RealRootSystem::catalog("su2").unwrap();
        let wg = WeylGroup::generate(&rs, Subsystem::Full);
        assert_eq!(antisymmetrize(&rs.rho, &wg), ch(1, &[(&[2], 1), (&[-2], -1)]));
        assert!(antisymmetrize(&w(&[0]), &wg).is_zero());

        let a2 = RealRootSystem::catalog("su3").unwrap();
        let wg = WeylGroup::generate(&a2, Subsystem::Full);
        let a = antisymmetrize(&a2.rho, &wg);
        assert_eq!(a.len(), 6);
        assert_eq!(a.degree(), BigInt::zero());
        assert!(antisymmetrize(&w(&[2, 0]), &wg).is_zero());
    }

    #[test]
    fn evaluate_su2_fundamental() {
        let c = ch(1, &[(&[2], 1), (&[-2], 1)]);
        for t in [0.0, 0.3, 1.7, -2.2] {
            let v = c.evaluate(&[t]).unwrap();
            assert!((v.re - 2.0 * libm::cos(t)).abs() < 1e-14 && v.im.abs() < 1e-14);
        }
        assert_eq!(FormalCharacter::zero(2).evaluate(&[0.1, 0.2]).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn root_product_counts() {
        let rs = RealRootSystem::catalog("su21").unwrap();
        let nc: Vec<&Weight> = rs.positive_roots().filter(|r| r.noncompact).map(|r| &r.weight).collect();
        let p = root_product(2, nc);
        assert_eq!(p.len(), 4);
        assert_eq!(p.degree(), BigInt::zero());
    }

    #[test]
    fn virtual_rep_rejects_non_dominant() {
        let rs = RealRootSystem::catalog("su2").unwrap();
        let mut v = VirtualRep::new(Subsystem::Full);
        assert!(matches!(v.insert(&rs, w(&[-2]), BigInt::one()), Err(Error::NotDominant(_))));
        v.insert(&rs, w(&[2]), BigInt::from(2)).unwrap();
        v.insert(&rs, w(&[2]), BigInt::from(-2)).unwrap();
        assert!(v.is_empty());
    }

    fn arb_char() -> impl Strategy<Value = FormalCharacter> {
        proptest::collection::vec(((-4i64..5, -4i64..5), -3i64..4), 0..6).prop_map(|ts| {
            FormalCharacter::from_terms(2, ts.into_iter().map(|((a, b), c)| (w(&[a, b]), BigInt::from(c)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_char(), b in arb_char(), c in arb_char()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        }

        #[test]
        fn product_divides_back(a in arb_char(), b in arb_char()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
        }

        #[test]
        fn evaluation_is_multiplicative(a in arb_char(), b in arb_char(), t1 in -3.0f64..3.0, t2 in -3.0f64..3.0) {
            let th = [t1, t2];
            let lhs = (&a * &b).evaluate(&th).unwrap();
            let rhs = a.evaluate(&th).unwrap() * b.evaluate(&th).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn not_divisible_terminates_in_rank_three() {
        let num =
            FormalCharacter::from_terms(3, vec![(w(&[0, 0, 0]), BigInt::one()), (w(&[-1, 5, -4]), BigInt::one())])
                .unwrap();
        let den =
            FormalCharacter::from_terms(3, vec![(w(&[1, 0, -1]), BigInt::one()), (w(&[0, 0, 0]), BigInt::from(2))])
                .unwrap();
        assert_eq!(num.exact_divide(&den), Err(Error::NotDivisible));
    }
}
