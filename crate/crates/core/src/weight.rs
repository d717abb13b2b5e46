use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

/// A point of the half-weight lattice, stored in doubled fundamental-weight
/// coordinates: the vector `2μ`. Roots and ρ are therefore always integer
/// vectors, and `e^{α/2}` is just the weight whose stored coordinates are
/// the fundamental coordinates of α.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(doubled: Vec<i64>) -> Self {
        Weight(doubled)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(alloc::vec![0; rank])
    }

    /// From ordinary (undoubled) fundamental-weight coordinates.
    pub fn from_fundamental(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|c| 2 * c).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// True when every doubled coordinate is even, i.e. the weight lies on
    /// the integral weight lattice of the full root system.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c % 2 == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| k * c).collect())
    }

    fn degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// Graded-lexicographic: total coordinate sum first, then lexicographic.
/// Compatible with addition, which is what leading-term division needs.
impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl<'a> Add<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn graded_lex_is_translation_invariant() {
        let a = Weight::new(vec![1, -3]);
        let b = Weight::new(vec![-2, 1]);
        let t = Weight::new(vec![5, 7]);
        assert_eq!(a.cmp(&b), (&a + &t).cmp(&(&b + &t)));
        assert!(Weight::new(vec![0, 1]) > Weight::new(vec![1, -1]));
    }

    #[test]
    fn integrality_is_parity() {
        assert!(Weight::from_fundamental(&[1, 2]).is_integral());
        assert!(!Weight::new(vec![1, 2]).is_integral());
    }
}
