//! Hard-coded matrix bases for the catalog models. Each basis lists the
//! torus first, then the rest of 𝔨, then 𝔭.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::{LieModel, ModelParts};
use crate::error::{Error, Result};

pub const NAMES: [&str; 4] = ["sl2r", "su21", "sp4r", "su2"];

type Mat = Vec<Vec<f64>>;

fn unit(n: usize, entries: &[(usize, usize, f64)]) -> Mat {
    let mut m = vec![vec![0.0; n]; n];
    for &(i, j, v) in entries {
        m[i][j] += v;
    }
    m
}

/// Realification `A + iB ↦ [[A, −B], [B, A]]` of a complex matrix given as (re, im) entries.
fn realify(n: usize, entries: &[(usize, usize, f64, f64)]) -> Mat {
    let mut m = vec![vec![0.0; 2 * n]; 2 * n];
    for &(i, j, re, im) in entries {
        m[i][j] += re;
        m[n + i][n + j] += re;
        m[i][n + j] -= im;
        m[n + i][j] += im;
    }
    m
}

/// Block matrix `[[A, B], [C, D]]` of 2×2 blocks given row-major.
fn blocks(a: [f64; 4], b: [f64; 4], c: [f64; 4], d: [f64; 4]) -> Mat {
    let mut m = vec![vec![0.0; 4]; 4];
    for r in 0..2 {
        for s in 0..2 {
            m[r][s] = a[2 * r + s];
            m[r][s + 2] = b[2 * r + s];
            m[r + 2][s] = c[2 * r + s];
            m[r + 2][s + 2] = d[2 * r + s];
        }
    }
    m
}

fn neg(a: [f64; 4]) -> [f64; 4] {
    a.map(|x| -x)
}

pub fn parts(name: &str) -> Result<ModelParts> {
    let (root_system, n, basis, k): (&str, usize, Vec<Mat>, usize) = match name {
        "sl2r" => (
            "sl2r",
            2,
            vec![
                unit(2, &[(0, 1, 1.0), (1, 0, -1.0)]),
                unit(2, &[(0, 0, 1.0), (1, 1, -1.0)]),
                unit(2, &[(0, 1, 1.0), (1, 0, 1.0)]),
            ],
            1,
        ),
        "su2" => (
            "su2",
            3,
            vec![
                unit(3, &[(0, 1, -2.0), (1, 0, 2.0)]),
                unit(3, &[(1, 2, -1.0), (2, 1, 1.0)]),
                unit(3, &[(2, 0, -1.0), (0, 2, 1.0)]),
            ],
            3,
        ),
        "su21" => (
            "su21",
            6,
            vec![
                realify(3, &[(0, 0, 0.0, 1.0), (1, 1, 0.0, -1.0)]),
                realify(3, &[(1, 1, 0.0, 1.0), (2, 2, 0.0, -1.0)]),
                realify(3, &[(0, 1, 1.0, 0.0), (1, 0, -1.0, 0.0)]),
                realify(3, &[(0, 1, 0.0, 1.0), (1, 0, 0.0, 1.0)]),
                realify(3, &[(0, 2, 1.0, 0.0), (2, 0, 1.0, 0.0)]),
                realify(3, &[(0, 2, 0.0, 1.0), (2, 0, 0.0, -1.0)]),
                realify(3, &[(1, 2, 1.0, 0.0), (2, 1, 1.0, 0.0)]),
                realify(3, &[(1, 2, 0.0, 1.0), (2, 1, 0.0, -1.0)]),
            ],
            4,
        ),
        "sp4r" => {
            let z = [0.0; 4];
            let (e11, e22, sym, skew) =
                ([1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0], [0.0, 1.0, 1.0, 0.0], [0.0, 1.0, -1.0, 0.0]);
            let h1 = [-1.0, 0.0, 0.0, 1.0];
            let h2 = [0.0, 0.0, 0.0, -1.0];
            let mut b = vec![
                blocks(z, h1, neg(h1), z),
                blocks(z, h2, neg(h2), z),
                blocks(skew, z, z, skew),
                blocks(z, sym, neg(sym), z),
            ];
            for a in [e11, e22, sym] {
                b.push(blocks(a, z, z, neg(a)));
            }
            for s in [e11, e22, sym] {
                b.push(blocks(z, s, s, z));
            }
            ("sp4r", 4, b, 4)
        }
        _ => return Err(Error::UnknownModel(name.to_string())),
    };
    let d = basis.len();
    let rank = if root_system == "sl2r" || root_system == "su2" { 1 } else { 2 };
    Ok(ModelParts {
        name: name.to_string(),
        root_system: root_system.to_string(),
        n,
        basis,
        k_indices: (0..k).collect(),
        p_indices: (k..d).collect(),
        torus_indices: (0..rank).collect(),
    })
}

pub fn model(name: &str) -> Result<LieModel> {
    LieModel::from_parts(&parts(name)?)
}
