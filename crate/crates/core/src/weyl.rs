use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::rootsys::{RealRootSystem, Root, Subsystem};
use crate::weight::Weight;

/// Integer matrix acting on doubled coordinates, row-major.
pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylGroup {
    pub rank: usize,
    pub elements: Vec<IntMatrix>,
    pub signs: Vec<i64>,
    /// Indices into `rs.roots` of the generating reflections.
    pub generator_roots: Vec<usize>,
}

pub fn reflection_matrix(root: &Root) -> IntMatrix {
    let f = root.fundamental();
    let n = f.len();
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64 - f[i] * root.coroot[j]).collect()).collect()
}

fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn apply(m: &IntMatrix, w: &Weight) -> Weight {
    Weight::new(m.iter().map(|row| row.iter().zip(w.coords()).map(|(a, b)| a * b).sum()).collect())
}

impl WeylGroup {
    /// Closure of the group generated by reflections in the positive roots of `sub`.
    /// Elements are listed in breadth-first order from the identity.
    pub fn generate(rs: &RealRootSystem, sub: Subsystem) -> Self {
        let n = rs.rank;
        let generator_roots: Vec<usize> = rs
            .roots
            .iter()
            .enumerate()
            .filter(|(_, r)| r.positive && (sub == Subsystem::Full || !r.noncompact))
            .map(|(i, _)| i)
            .collect();
        let gens: Vec<IntMatrix> = generator_roots.iter().map(|&i| reflection_matrix(&rs.roots[i])).collect();
        let id: IntMatrix = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        let mut seen: BTreeMap<IntMatrix, usize> = BTreeMap::new();
        seen.insert(id.clone(), 0);
        let mut elements = vec![id];
        let mut signs = vec![1i64];
        let mut head = 0;
        while head < elements.len() {
            let cur = elements[head].clone();
            let s = signs[head];
            head += 1;
            for g in &gens {
                let next = mat_mul(g, &cur);
                if !seen.contains_key(&next) {
                    seen.insert(next.clone(), elements.len());
                    elements.push(next);
                    signs.push(-s);
                }
            }
        }
        WeylGroup { rank: n, elements, signs, generator_roots }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn act(&self, w: usize, mu: &Weight) -> Weight {
        apply(&self.elements[w], mu)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IntMatrix, i64)> {
        self.elements.iter().zip(self.signs.iter().copied())
    }

    /// The orbit of μ, sorted and deduplicated.
    pub fn orbit(&self, mu: &Weight) -> Vec<Weight> {
        let mut out: Vec<Weight> = self.elements.iter().map(|m| apply(m, mu)).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.elements.iter().any(|e| e == m)
    }
}
