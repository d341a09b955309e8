//! Kazhdan–Lusztig polynomials `P_{x,w}(q)` by the classical recursion.

use crate::error::{Error, Result};

use super::CoxeterGroup;

/// Coefficients in increasing degree, without trailing zeros; the zero
/// polynomial is empty.
pub type Poly = Vec<i64>;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add_shifted(acc: &mut Poly, p: &[i64], shift: usize, factor: i64) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, &c) in p.iter().enumerate() {
        acc[i + shift] += factor * c;
    }
}

#[derive(Clone, Debug)]
pub struct KLTable {
    le: Vec<Vec<bool>>,
    /// `polys[w][x] = P_{x,w}`
    polys: Vec<Vec<Poly>>,
    /// Symmetric `μ`; zero unless the pair is Bruhat comparable with odd
    /// length difference.
    mu: Vec<Vec<i64>>,
}

impl KLTable {
    pub fn p(&self, x: usize, w: usize) -> &[i64] {
        &self.polys[w][x]
    }

    pub fn mu(&self, x: usize, y: usize) -> i64 {
        self.mu[x][y]
    }

    pub fn bruhat_le(&self, x: usize, w: usize) -> bool {
        self.le[w][x]
    }

    pub fn size(&self) -> usize {
        self.polys.len()
    }

    /// `P_{w,w} = 1`, vanishing off the Bruhat interval, the degree bound and
    /// nonnegativity.
    pub fn check_invariants(&self, g: &CoxeterGroup) -> Result<()> {
        let n = self.size();
        for w in 0..n {
            for x in 0..n {
                let p = &self.polys[w][x];
                if x == w && p != &vec![1] {
                    return Err(Error::invariant(format!("P_(w,w) ≠ 1 for {:?}", g.word(w))));
                }
                if !self.le[w][x] && !p.is_empty() {
                    return Err(Error::invariant("P_(x,w) ≠ 0 for x not below w"));
                }
                if x != w && self.le[w][x] {
                    let bound = (g.length(w) - g.length(x) - 1) / 2;
                    if p.len() > bound + 1 {
                        return Err(Error::invariant(format!("deg P_(x,w) exceeds {bound}")));
                    }
                    if p.first() != Some(&1) {
                        return Err(Error::invariant("P_(x,w)(0) ≠ 1"));
                    }
                }
                if p.iter().any(|&c| c < 0) {
                    return Err(Error::invariant("negative Kazhdan–Lusztig coefficient"));
                }
            }
        }
        Ok(())
    }
}

/// Builds the full table: for `sw < w` with `v = sw` and `c = [sx < x]`,
/// `P_{x,w} = q^{1-c} P_{sx,v} + q^c P_{x,v} - Σ_{z<v, sz<z} μ(z,v) q^{(l(w)-l(z))/2} P_{x,z}`.
pub fn kl_table(g: &CoxeterGroup) -> Result<KLTable> {
    let n = g.order();
    let le = g.bruhat();
    let mut polys: Vec<Vec<Poly>> = vec![vec![Vec::new(); n]; n];
    let mut mu = vec![vec![0i64; n]; n];
    polys[0][0] = vec![1];
    for w in 1..n {
        let s = g.word(w)[0];
        let v = g.left_mul(s, w);
        let lw = g.length(w);
        let correction: Vec<(usize, i64, usize)> = (0..v)
            .filter(|&z| mu[z][v] != 0 && le[v][z] && g.is_left_descent(s, z))
            .map(|z| (z, mu[z][v], (lw - g.length(z)) / 2))
            .collect();
        for x in 0..=w {
            if !le[w][x] {
                continue;
            }
            let sx = g.left_mul(s, x);
            let c = usize::from(g.length(sx) < g.length(x));
            let mut p = Vec::new();
            add_shifted(&mut p, &polys[v][sx], 1 - c, 1);
            add_shifted(&mut p, &polys[v][x], c, 1);
            for &(z, m, shift) in &correction {
                add_shifted(&mut p, &polys[z][x], shift, -m);
            }
            polys[w][x] = trim(p);
        }
        for x in 0..w {
            if le[w][x] {
                let d = lw - g.length(x);
                if d % 2 == 1 {
                    let top = polys[w][x].get((d - 1) / 2).copied().unwrap_or(0);
                    mu[x][w] = top;
                    mu[w][x] = top;
                }
            }
        }
    }
    let table = KLTable { le, polys, mu };
    table.check_invariants(g)?;
    Ok(table)
}
