//! Equal-rank real root systems: roots with their compact/noncompact
//! grading, the invariant inner product and chamber predicates.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::weight::Weight;

/// Which reflection subgroup (and positive subsystem) an operation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subsystem {
    Full,
    Compact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Doubled fundamental coordinates of the root.
    pub weight: Weight,
    /// Coefficients in the basis of simple roots.
    pub simple: Vec<i64>,
    /// Coefficients of the coroot in the basis of simple coroots.
    pub coroot: Vec<i64>,
    pub noncompact: bool,
    pub positive: bool,
}

impl Root {
    /// Undoubled fundamental coordinates (the stored doubled vector halved).
    pub fn fundamental(&self) -> Vec<i64> {
        self.weight.coords().iter().map(|c| c / 2).collect()
    }

    /// `2⟨μ, α^∨⟩` for μ given in doubled coordinates.
    pub fn pair_doubled(&self, mu: &Weight) -> i64 {
        self.coroot.iter().zip(mu.coords()).map(|(a, b)| a * b).sum()
    }

    pub fn height(&self) -> i64 {
        self.simple.iter().sum()
    }

    pub fn is_compact(&self) -> bool {
        !self.noncompact
    }

    /// Reflection `s_α` acting on doubled coordinates.
    pub fn reflect(&self, mu: &Weight) -> Weight {
        let k = self.pair_doubled(mu);
        let f = self.fundamental();
        Weight::new(mu.coords().iter().zip(&f).map(|(m, a)| m - k * a).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRootSystem {
    pub label: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizer: Vec<i64>,
    pub noncompact_simple: Vec<bool>,
    /// Positive roots first (by height, then simple coordinates), then their negatives in the same order.
    pub roots: Vec<Root>,
    pub rho: Weight,
    pub rho_c: Weight,
    pub rho_n: Weight,
    pub q: usize,
    gram_num: Vec<Vec<i64>>,
    gram_den: i64,
}

fn bareiss_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Exact determinant of a small integer matrix.
pub fn int_det(m: &[Vec<i64>]) -> i64 {
    let w: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    bareiss_det(&w) as i64
}

fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    let mut comp = vec![usize::MAX; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Ratio::from_integer(1));
        comp[start] = start;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                let dj = d[i].unwrap() * Ratio::new(a[j][i], a[i][j]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        comp[j] = start;
                        stack.push(j);
                    }
                    Some(old) if old != dj => return Err(Error::InvalidCartan("matrix is not symmetrizable".into())),
                    _ => {}
                }
            }
        }
    }
    let mut out = vec![0i64; n];
    for c in 0..n {
        let members: Vec<usize> = (0..n).filter(|&i| comp[i] == c).collect();
        if members.is_empty() {
            continue;
        }
        let l = members.iter().fold(1i64, |acc, &i| acc.lcm(d[i].unwrap().denom()));
        let ints: Vec<i64> = members.iter().map(|&i| (d[i].unwrap() * l).to_integer()).collect();
        let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for (k, &i) in members.iter().enumerate() {
            out[i] = ints[k] / g;
        }
    }
    Ok(out)
}

fn rational_inverse(a: &[Vec<i64>]) -> Option<Vec<Vec<Ratio<i64>>>> {
    let n = a.len();
    let mut m: Vec<Vec<Ratio<i64>>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<i64>> = row.iter().map(|&x| Ratio::from_integer(x)).collect();
            r.extend((0..n).map(|j| Ratio::from_integer((i == j) as i64)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r][col] != Ratio::from_integer(0))?;
        m.swap(col, piv);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && m[r][col] != Ratio::from_integer(0) {
                let f = m[r][col];
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl RealRootSystem {
    /// Builds the graded root system from a Cartan matrix (row i is α_i in
    /// fundamental coordinates) and 0-based indices of noncompact simple roots.
    pub fn build(label: &str, cartan: Vec<Vec<i64>>, noncompact_simple: &[usize]) -> Result<Self> {
        let n = cartan.len();
        if n == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCartan("matrix is not square".into()));
            }
            for (j, &x) in row.iter().enumerate() {
                if i == j && x != 2 {
                    return Err(Error::InvalidCartan(format!("diagonal entry ({i},{j}) is {x}")));
                }
                if i != j && (x > 0 || (x == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::InvalidCartan(format!("bad off-diagonal entry ({i},{j})")));
                }
            }
        }
        let d = symmetrizer(&cartan)?;
        let s: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| cartan[i][j] * d[j]).collect()).collect();
        for k in 1..=n {
            let minor: Vec<Vec<i64>> = s[..k].iter().map(|r| r[..k].to_vec()).collect();
            if int_det(&minor) <= 0 {
                return Err(Error::InvalidCartan("not of finite type".into()));
            }
        }
        let mut marks = vec![false; n];
        for &i in noncompact_simple {
            if i >= n {
                return Err(Error::InvalidCartan(format!("simple index {} out of range", i + 1)));
            }
            marks[i] = true;
        }

        let inv = rational_inverse(&cartan).ok_or_else(|| Error::InvalidCartan("singular".into()))?;
        let g: Vec<Vec<Ratio<i64>>> = (0..n).map(|i| (0..n).map(|j| inv[i][j] * d[j]).collect()).collect();
        let gram_den = g.iter().flatten().fold(1i64, |acc, r| acc.lcm(r.denom()));
        let gram_num: Vec<Vec<i64>> =
            g.iter().map(|r| r.iter().map(|x| (*x * gram_den).to_integer()).collect()).collect();

        // Positive roots by closure under simple reflections.
        let mut positive: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut frontier: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        while let Some(c) = frontier.pop() {
            if !positive.insert(c.clone()) {
                continue;
            }
            for i in 0..n {
                let pair: i64 = (0..n).map(|j| c[j] * cartan[j][i]).sum();
                let mut r = c.clone();
                r[i] -= pair;
                if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && !positive.contains(&r) {
                    frontier.push(r);
                }
            }
            if positive.len() > 10_000 {
                return Err(Error::InvalidCartan("root closure did not terminate".into()));
            }
        }
        let mut pos: Vec<Vec<i64>> = positive.into_iter().collect();
        pos.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then(a.cmp(b)));

        let make = |c: &[i64], positive: bool| -> Root {
            let fund: Vec<i64> = (0..n).map(|k| (0..n).map(|j| c[j] * cartan[j][k]).sum()).collect();
            let len2: i64 = (0..n).map(|i| (0..n).map(|j| c[i] * s[i][j] * c[j]).sum::<i64>()).sum();
            let d_alpha = len2 / 2;
            let coroot = (0..n).map(|i| c[i] * d[i] / d_alpha).collect();
            let parity: i64 = (0..n).filter(|&i| marks[i]).map(|i| c[i]).sum();
            Root {
                weight: Weight::new(fund.iter().map(|x| 2 * x).collect()),
                simple: c.to_vec(),
                coroot,
                noncompact: parity.rem_euclid(2) == 1,
                positive,
            }
        };
        let mut roots: Vec<Root> = pos.iter().map(|c| make(c, true)).collect();
        let negs: Vec<Root> = pos.iter().map(|c| make(&c.iter().map(|x| -x).collect::<Vec<_>>(), false)).collect();
        roots.extend(negs);

        let half_sum = |pred: &dyn Fn(&Root) -> bool| -> Weight {
            let mut acc = vec![0i64; n];
            for r in roots.iter().filter(|r| r.positive && pred(r)) {
                for (a, f) in acc.iter_mut().zip(r.fundamental()) {
                    *a += f;
                }
            }
            Weight::new(acc)
        };
        let rho = half_sum(&|_| true);
        let rho_c = half_sum(&|r| !r.noncompact);
        let rho_n = half_sum(&|r| r.noncompact);
        let q = roots.iter().filter(|r| r.positive && r.noncompact).count();

        let rs = RealRootSystem {
            label: label.to_string(),
            rank: n,
            cartan,
            symmetrizer: d,
            noncompact_simple: marks,
            roots,
            rho,
            rho_c,
            rho_n,
            q,
            gram_num,
            gram_den,
        };
        rs.validate_grading()?;
        Ok(rs)
    }

    /// Checks `grading(α+β) = grading(α) xor grading(β)` over all root pairs.
    pub fn validate_grading(&self) -> Result<()> {
        let index: BTreeMap<&[i64], usize> =
            self.roots.iter().enumerate().map(|(i, r)| (r.simple.as_slice(), i)).collect();
        for a in &self.roots {
            for b in &self.roots {
                let sum: Vec<i64> = a.simple.iter().zip(&b.simple).map(|(x, y)| x + y).collect();
                if let Some(&k) = index.get(sum.as_slice()) {
                    if self.roots[k].noncompact != (a.noncompact ^ b.noncompact) {
                        return Err(Error::GradingInconsistent {
                            alpha: a.weight.clone(),
                            beta: b.weight.clone(),
                            sum: self.roots[k].weight.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The shipped catalog of equal-rank real forms.
    pub fn catalog(name: &str) -> Result<Self> {
        let (ty, nc): (&str, &[usize]) = match name {
            "sl2r" => ("A1", &[0]),
            "su21" => ("A2", &[1]),
            "sp4r" => ("C2", &[1]),
            "su2" => ("A1", &[]),
            "su3" => ("A2", &[]),
            _ => return Err(Error::UnknownModel(name.to_string())),
        };
        Self::build(ty, cartan_of_type(ty)?, nc)
    }

    pub const CATALOG: [&'static str; 5] = ["sl2r", "su21", "sp4r", "su2", "su3"];

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.positive)
    }

    pub fn positive_roots_of(&self, sub: Subsystem) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(move |r| r.positive && (sub == Subsystem::Full || !r.noncompact))
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        self.roots.iter().find(|r| r.positive && r.height() == 1 && r.simple[i] == 1).unwrap()
    }

    /// Simple roots of the positive subsystem: positive roots that are not
    /// sums of two positive roots of the same subsystem.
    pub fn simple_roots_of(&self, sub: Subsystem) -> Vec<&Root> {
        let pos: Vec<&Root> = self.positive_roots_of(sub).collect();
        pos.iter()
            .filter(|r| {
                !pos.iter().any(|a| {
                    pos.iter().any(|b| a.simple.iter().zip(&b.simple).zip(&r.simple).all(|((x, y), z)| x + y == *z))
                })
            })
            .copied()
            .collect()
    }

    pub fn rho_of(&self, sub: Subsystem) -> &Weight {
        match sub {
            Subsystem::Full => &self.rho,
            Subsystem::Compact => &self.rho_c,
        }
    }

    pub fn dim_g_mod_k(&self) -> usize {
        2 * self.q
    }

    fn check_dim(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: w.rank() });
        }
        Ok(())
    }

    /// `sᵀ G t` in doubled coordinates, times the Gram denominator: an exact
    /// integer proportional to the inner product, for sign tests and ratios.
    pub fn inner_scaled(&self, s: &Weight, t: &Weight) -> i64 {
        let (s, t) = (s.coords(), t.coords());
        s.iter().zip(&self.gram_num).map(|(si, row)| si * row.iter().zip(t).map(|(g, tj)| g * tj).sum::<i64>()).sum()
    }

    /// The W-invariant inner product, short roots of squared length 2.
    pub fn inner(&self, mu: &Weight, nu: &Weight) -> Result<Ratio<i64>> {
        self.check_dim(mu)?;
        self.check_dim(nu)?;
        Ok(Ratio::new(self.inner_scaled(mu, nu), 4 * self.gram_den))
    }

    /// Gram matrix of the fundamental weights as floats.
    pub fn gram_f64(&self) -> Vec<Vec<f64>> {
        self.gram_num.iter().map(|r| r.iter().map(|&x| x as f64 / self.gram_den as f64).collect()).collect()
    }

    pub fn dominant(&self, mu: &Weight, sub: Subsystem) -> bool {
        mu.rank() == self.rank && self.positive_roots_of(sub).all(|r| r.pair_doubled(mu) >= 0)
    }

    /// Integrality for the weight lattice of the chosen subsystem: every
    /// coroot of the subsystem pairs integrally.
    pub fn integral(&self, mu: &Weight, sub: Subsystem) -> bool {
        match sub {
            Subsystem::Full => mu.is_integral(),
            Subsystem::Compact => {
                self.positive_roots_of(Subsystem::Compact).all(|r| r.pair_doubled(mu).rem_euclid(2) == 0)
            }
        }
    }

    pub fn regular(&self, mu: &Weight, sub: Subsystem) -> bool {
        self.positive_roots_of(sub).all(|r| r.pair_doubled(mu) != 0)
    }

    pub fn find_root(&self, w: &Weight) -> Option<&Root> {
        self.roots.iter().find(|r| &r.weight == w)
    }

    /// `μ` expressed in simple-root coordinates, exactly. Doubled coordinates in, ordinary out.
    pub fn to_simple_coords(&self, mu: &Weight) -> Vec<Ratio<i64>> {
        // μ = Σ c_i α_i  ⇔  fund(μ) = Cᵀ c  ⇔  c = (Cᵀ)⁻¹ fund(μ)
        let t: Vec<Vec<i64>> = (0..self.rank).map(|i| (0..self.rank).map(|j| self.cartan[j][i]).collect()).collect();
        let inv = rational_inverse(&t).expect("Cartan matrix is invertible");
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| inv[i][j] * Ratio::new(mu.coords()[j], 2))
                    .fold(Ratio::from_integer(0), |a, b| a + b)
            })
            .collect()
    }

    /// Coordinates of μ in the simple roots of `sub` (order of
    /// `simple_roots_of`), or `None` when μ is outside their span.
    pub fn coords_in(&self, mu: &Weight, sub: Subsystem) -> Option<Vec<Ratio<i64>>> {
        let target = self.to_simple_coords(mu);
        if sub == Subsystem::Full {
            return Some(target);
        }
        let basis: Vec<Vec<i64>> = self.simple_roots_of(sub).iter().map(|r| r.simple.clone()).collect();
        let m = basis.len();
        let zero = Ratio::from_integer(0);
        let mut rows: Vec<Vec<Ratio<i64>>> = (0..self.rank)
            .map(|i| {
                let mut r: Vec<Ratio<i64>> = basis.iter().map(|b| Ratio::from_integer(b[i])).collect();
                r.push(target[i]);
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m {
            let Some(p) = (row..rows.len()).find(|&r| rows[r][col] != zero) else { continue };
            rows.swap(row, p);
            let pv = rows[row][col];
            for x in rows[row].iter_mut() {
                *x /= pv;
            }
            for r in 0..rows.len() {
                if r != row && rows[r][col] != zero {
                    let f = rows[r][col];
                    let pr = rows[row].clone();
                    for (x, y) in rows[r].iter_mut().zip(pr) {
                        *x -= f * y;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if rows[row..].iter().any(|r| r[m] != zero) {
            return None;
        }
        let mut out = vec![zero; m];
        for (k, &c) in pivots.iter().enumerate() {
            out[c] = rows[k][m];
        }
        Some(out)
    }

    /// True when `hi − lo` is a nonnegative integer combination of the simple roots of `sub`.
    pub fn below(&self, lo: &Weight, hi: &Weight, sub: Subsystem) -> bool {
        match self.coords_in(&(hi - lo), sub) {
            Some(c) => c.iter().all(|x| x.is_integer() && *x >= Ratio::from_integer(0)),
            None => false,
        }
    }

    /// The unique dominant element of the `sub`-Weyl orbit of μ.
    pub fn dominant_conjugate(&self, mu: &Weight, sub: Subsystem) -> Weight {
        let simple = self.simple_roots_of(sub);
        let mut cur = mu.clone();
        loop {
            match simple.iter().find(|r| r.pair_doubled(&cur) < 0) {
                Some(r) => cur = r.reflect(&cur),
                None => return cur,
            }
        }
    }
}

/// Cartan matrices of the classical types and G2 in the row-is-root convention.
pub fn cartan_of_type(ty: &str) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::UnknownModel(ty.to_string());
    let (letter, rest) = ty.split_at(1);
    let n: usize = rest.parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        if i + 1 < n {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    match letter {
        "A" => {}
        "B" if n >= 2 => a[n - 2][n - 1] = -2,
        "C" if n >= 2 => a[n - 1][n - 2] = -2,
        "D" if n >= 4 => {
            a[n - 2][n - 1] = 0;
            a[n - 1][n - 2] = 0;
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
        "G" if n == 2 => a[1][0] = -3,
        _ => return Err(bad()),
    }
    Ok(a)
}
