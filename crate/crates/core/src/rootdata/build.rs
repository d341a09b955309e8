//! Root data from a Cartan type and an isogeny class, and pinned twists.

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

use super::cartan::{AbstractRootSystem, CartanType, FactorType, SimpleType};
use super::RootDatum;

/// Which lattice between the root lattice and the weight lattice is `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isogeny {
    /// `X` is the weight lattice of the semisimple part.
    SimplyConnected,
    /// `X` is the root lattice of the semisimple part.
    Adjoint,
    /// Every `A_m` factor becomes `GL_{m+1}`; only type A factors allowed.
    Gl,
    /// Rows span `X` inside the weight lattice, in fundamental-weight
    /// coordinates of the semisimple part.
    Custom(Vec<Vec<i64>>),
}

impl Isogeny {
    pub fn label(&self) -> String {
        match self {
            Isogeny::SimplyConnected => "sc".to_string(),
            Isogeny::Adjoint => "ad".to_string(),
            Isogeny::Gl => "GL".to_string(),
            Isogeny::Custom(rows) => format!("{rows:?}"),
        }
    }
}

fn torus_rank(ct: &CartanType) -> usize {
    ct.factors
        .iter()
        .map(|f| match f {
            FactorType::Torus(n) => *n,
            FactorType::Simple(_) => 0,
        })
        .sum()
}

/// Images of the simple roots in `X` and simple coroots in `Y`.
fn simple_images(ct: &CartanType, iso: &Isogeny) -> Result<(usize, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let c = ct.cartan_matrix();
    let n_ss = c.len();
    let tr = torus_rank(ct);
    let pad = |v: Vec<i64>, rank: usize| {
        let mut v = v;
        v.resize(rank, 0);
        v
    };
    match iso {
        Isogeny::SimplyConnected => {
            let rank = n_ss + tr;
            let a = (0..n_ss).map(|i| pad(c[i].clone(), rank)).collect();
            let b = (0..n_ss).map(|i| pad(unit(n_ss, i), rank)).collect();
            Ok((rank, a, b))
        }
        Isogeny::Adjoint => {
            let rank = n_ss + tr;
            let a = (0..n_ss).map(|i| pad(unit(n_ss, i), rank)).collect();
            let b = (0..n_ss).map(|i| pad((0..n_ss).map(|k| c[k][i]).collect(), rank)).collect();
            Ok((rank, a, b))
        }
        Isogeny::Gl => {
            let mut a = Vec::new();
            let mut off = 0;
            let mut rank = tr;
            for t in ct.simple_factors() {
                rank += t.rank() + 1;
                if !matches!(t, SimpleType::A1 | SimpleType::A2) {
                    return Err(Error::config("isogeny", format!("GL isogeny needs type A factors, found {t}")));
                }
            }
            for t in ct.simple_factors() {
                for i in 0..t.rank() {
                    let mut v = vec![0; rank];
                    v[off + i] = 1;
                    v[off + i + 1] = -1;
                    a.push(v);
                }
                off += t.rank() + 1;
            }
            Ok((rank, a.clone(), a))
        }
        Isogeny::Custom(rows) => {
            if rows.len() != n_ss || rows.iter().any(|r| r.len() != n_ss) {
                return Err(Error::config(
                    "isogeny",
                    format!("custom lattice must be a {n_ss}x{n_ss} matrix in fundamental-weight coordinates"),
                ));
            }
            let basis = IntMatrix::from_rows(rows);
            if n_ss > 0 && basis.determinant() == 0 {
                return Err(Error::config("isogeny", "custom lattice rows are linearly dependent"));
            }
            let rank = n_ss + tr;
            let mut a = Vec::new();
            for (i, row) in c.iter().enumerate() {
                let x = basis.solve_row_integral(row).ok_or_else(|| {
                    Error::config("isogeny", format!("custom lattice does not contain the simple root {i}"))
                })?;
                a.push(pad(x, rank));
            }
            let b = (0..n_ss).map(|i| pad((0..n_ss).map(|k| rows[k][i]).collect(), rank)).collect();
            Ok((rank, a, b))
        }
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|k| i64::from(k == i)).collect()
}

/// Builds the datum; simple roots are the first indices, in the order of the
/// Cartan type's factors.
pub(crate) fn build_datum(ct: &CartanType, iso: &Isogeny) -> Result<RootDatum> {
    let (rank, a, b) = simple_images(ct, iso)?;
    let c = ct.cartan_matrix();
    let abs = AbstractRootSystem::from_cartan(&c);
    let combine = |coeffs: &[i64], basis: &[Vec<i64>]| -> Vec<i64> {
        let mut v = vec![0; rank];
        for (k, &ck) in coeffs.iter().enumerate() {
            for j in 0..rank {
                v[j] += ck * basis[k][j];
            }
        }
        v
    };
    let roots = abs.roots.iter().map(|r| combine(r, &a)).collect();
    let coroots = abs.coroots.iter().map(|r| combine(r, &b)).collect();
    let positive = (0..abs.roots.len()).map(|i| i < abs.num_positive).collect();
    RootDatum::new(rank, roots, coroots, positive, (0..c.len()).collect(), ct.label())
}

/// Matrix on `X` of the pinned automorphism permuting simple roots by `perm`
/// (and fixing the torus factors).
pub(crate) fn twist_matrix(ct: &CartanType, iso: &Isogeny, d: &RootDatum, perm: &[usize]) -> Result<IntMatrix> {
    let c = ct.cartan_matrix();
    let n_ss = c.len();
    if perm.len() != n_ss {
        return Err(Error::config("twist", format!("expected a permutation of {n_ss} simple indices")));
    }
    let mut seen = vec![false; n_ss];
    for &p in perm {
        if p >= n_ss || seen[p] {
            return Err(Error::config("twist", format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    for i in 0..n_ss {
        for j in 0..n_ss {
            if c[perm[i]][perm[j]] != c[i][j] {
                return Err(Error::config("twist", format!("{perm:?} is not a diagram automorphism")));
            }
        }
    }
    let rank = d.rank();
    let sigma = match iso {
        Isogeny::Gl => gl_twist(ct, perm, rank)?,
        _ => {
            // σ A = A P on the semisimple block, A = simple roots as columns
            let cols: Vec<Vec<i64>> = (0..n_ss).map(|i| d.roots()[i][..n_ss].to_vec()).collect();
            let a = IntMatrix::from_columns(n_ss, &cols);
            let ap_cols: Vec<Vec<i64>> = (0..n_ss).map(|i| cols[perm[i]].clone()).collect();
            let ap = IntMatrix::from_columns(n_ss, &ap_cols);
            let mut sigma = IntMatrix::identity(rank);
            for r in 0..n_ss {
                let x = a.solve_row_integral(ap.row(r)).ok_or_else(|| {
                    Error::config("twist", "diagram automorphism does not preserve the character lattice")
                })?;
                for (k, v) in x.into_iter().enumerate() {
                    sigma[(r, k)] = v;
                }
            }
            sigma
        }
    };
    for i in 0..n_ss {
        if sigma.mul_vec(&d.roots()[i]) != d.roots()[perm[i]] {
            return Err(Error::config("twist", "twist does not map simple roots as prescribed"));
        }
    }
    Ok(sigma)
}

fn gl_twist(ct: &CartanType, perm: &[usize], rank: usize) -> Result<IntMatrix> {
    // (first simple index, first coordinate, m) per GL_{m+1} block
    let mut blocks = Vec::new();
    let (mut s, mut o) = (0, 0);
    for t in ct.simple_factors() {
        blocks.push((s, o, t.rank()));
        s += t.rank();
        o += t.rank() + 1;
    }
    let mut sigma = IntMatrix::zeros(rank, rank);
    for k in o..rank {
        sigma[(k, k)] = 1;
    }
    for &(sf, of, m) in &blocks {
        let target = perm[sf];
        let &(sg, og, mg) = blocks
            .iter()
            .find(|&&(sg, _, mg)| target >= sg && target < sg + mg)
            .ok_or_else(|| Error::invariant("twist target outside the semisimple part"))?;
        if mg != m {
            return Err(Error::config("twist", "twist maps a factor to one of different rank"));
        }
        let flipped = m > 1 && target != sg;
        for k in 0..=m {
            if flipped {
                sigma[(og + m - k, of + k)] = -1;
            } else {
                sigma[(og + k, of + k)] = 1;
            }
        }
    }
    Ok(sigma)
}
