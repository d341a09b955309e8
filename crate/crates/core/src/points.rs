//! Frobenius-stable torsion points of `X ⊗ Q/Z` and their Weyl orbits.
//!
//! Both pipelines start here. On the dual side a point is a semisimple
//! element `s` of the dual torus (`Y(G*) = X(G)`); on the group side it is
//! a character sheaf `𝓛` on the torus. The encoding is the same, and so is
//! the action of `W` through the `x`-matrices of the group's Weyl group.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lattice::{gcd, kernel_mod_one, IntMatrix, TorsionPoint};
use crate::rootdata::{GroupSpec, WeylGroup};

/// One Smith-form solve: `w` indexes the Weyl group, `determinant` is
/// `det(M_w qσ - I)` and `solutions` the number of distinct points found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithCheck {
    pub w: usize,
    pub determinant: i64,
    pub solutions: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointOrbit {
    /// Lexicographically least member.
    pub rep: TorsionPoint,
    /// Sorted.
    pub members: Vec<TorsionPoint>,
}

/// Matrix of `F = qσ` on `X`.
pub fn frobenius_matrix(g: &GroupSpec) -> IntMatrix {
    g.twist().sigma_x().scale(g.q() as i64)
}

/// All `s` with `w F s = s` for some `w ∈ W°`, with one Smith check per `w`.
pub fn stable_points(g: &GroupSpec, weyl: &WeylGroup) -> Result<(BTreeSet<TorsionPoint>, Vec<SmithCheck>)> {
    let n = g.datum().rank();
    let frob = frobenius_matrix(g);
    let p = g.p() as i64;
    let mut points = BTreeSet::new();
    let mut checks = Vec::new();
    for w in 0..weyl.connected_order() {
        let m = weyl.elements()[w].x().mul(&frob).sub(&IntMatrix::identity(n));
        let det = if n == 0 { 1 } else { m.determinant() };
        if det == 0 || gcd(det.abs(), p) != 1 {
            return Err(Error::invariant(format!("det(wqσ - 1) = {det} is not prime to {p}")));
        }
        let sols: BTreeSet<TorsionPoint> =
            if n == 0 { BTreeSet::from([TorsionPoint::zero(0)]) } else { kernel_mod_one(&m).into_iter().collect() };
        if sols.len() as i64 != det.abs() {
            return Err(Error::invariant(format!("{} solutions but |det| = {}", sols.len(), det.abs())));
        }
        for s in &sols {
            if s.apply(&frob).apply(weyl.elements()[w].x()) != *s {
                return Err(Error::invariant(format!("{s:?} is not fixed by w F")));
            }
        }
        checks.push(SmithCheck { w, determinant: det, solutions: sols.len() });
        points.extend(sols);
    }
    Ok((points, checks))
}

/// Partition of a `W`-stable point set into orbits of `W` (or of `W°` when
/// `connected_only`), ordered by representative.
pub fn orbits(weyl: &WeylGroup, points: &BTreeSet<TorsionPoint>, connected_only: bool) -> Vec<PointOrbit> {
    let limit = if connected_only { weyl.connected_order() } else { weyl.order() };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in points {
        if seen.contains(s) {
            continue;
        }
        let members: BTreeSet<TorsionPoint> = weyl.elements()[..limit].iter().map(|w| s.apply(w.x())).collect();
        seen.extend(members.iter().cloned());
        let members: Vec<TorsionPoint> = members.into_iter().collect();
        out.push(PointOrbit { rep: members[0].clone(), members });
    }
    out.sort_by(|a, b| a.rep.cmp(&b.rep));
    out
}

/// Root indices `i` with `⟨s, α_i∨⟩ ∈ Z`: the roots of the pseudo-Levi of
/// the dual group at `s` (as coroots) or of `Φ_𝓛`.
pub fn integral_roots(g: &GroupSpec, s: &TorsionPoint) -> Vec<usize> {
    let d = g.datum();
    (0..d.num_roots()).filter(|&i| s.pairs_integrally(&d.coroots()[i])).collect()
}

/// Permutation of the roots induced by `σ`.
pub fn sigma_root_permutation(g: &GroupSpec) -> Result<Vec<usize>> {
    let t = g.twist();
    g.datum().root_permutation(t.sigma_x(), t.sigma_y()).ok_or_else(|| Error::invariant("σ does not permute the roots"))
}

/// `π_{wσ} = π_w ∘ π_σ`.
pub fn compose(first: &[usize], then: &[usize]) -> Vec<usize> {
    first.iter().map(|&i| then[i]).collect()
}

/// Index in `weyl` of the element with the given `x`-matrix.
pub fn lookup(weyl: &WeylGroup, x: &IntMatrix) -> Result<usize> {
    weyl.index_of(x).ok_or_else(|| Error::invariant(format!("{x:?} is not in W")))
}

/// `(w σ) a (w σ)⁻¹` for Weyl indices `w`, `a`.
pub fn sigma_conjugate(g: &GroupSpec, weyl: &WeylGroup, w: usize, a: usize) -> Result<usize> {
    let sig = g.twist().sigma_x();
    let (sig_inv, _) =
        sig.finite_order_inverse(1000).ok_or_else(|| Error::invariant("σ does not have finite order"))?;
    let e = weyl.elements();
    let x = e[w].x().mul(sig).mul(e[a].x()).mul(&sig_inv).mul(e[weyl.inverse(w)].x());
    lookup(weyl, &x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{named_group, DEFAULT_ORDER_BOUND};

    fn spec(name: &str, q: u64) -> GroupSpec {
        crate::rootdata::config::group_spec_from_config(&named_group(name, q).unwrap()).unwrap()
    }

    #[test]
    fn sl2_points_over_f3() {
        let g = spec("sl2", 3);
        let w = g.datum().weyl_group(g.component_group(), DEFAULT_ORDER_BOUND).unwrap();
        let (pts, checks) = stable_points(&g, &w).unwrap();
        let labels: Vec<String> = orbits(&w, &pts, false).iter().map(|o| o.rep.label()).collect();
        assert_eq!(labels, vec!["(0)", "(1/4)", "(1/2)"]);
        assert!(checks.iter().all(|c| c.solutions as i64 == c.determinant.abs()));
    }

    #[test]
    fn torus_points() {
        let g = spec("torus1", 5);
        let w = g.datum().weyl_group(&[], DEFAULT_ORDER_BOUND).unwrap();
        let (pts, _) = stable_points(&g, &w).unwrap();
        assert_eq!(pts.len(), 4);
    }
}
