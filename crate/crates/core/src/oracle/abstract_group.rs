//! Finite groups given by a multiplication table, with twisted conjugation.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractFiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

/// One orbit of `b · a = b a f(b)⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedClass {
    pub rep: usize,
    pub members: Vec<usize>,
    /// `{b : b·rep·f(b)⁻¹ = rep}`
    pub centralizer: Vec<usize>,
    /// Number of ordinary conjugacy classes of the centralizer, i.e. its
    /// number of irreducible characters.
    pub centralizer_classes: usize,
}

impl AbstractFiniteGroup {
    /// Checks the group axioms on the table.
    pub fn new(table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<AbstractFiniteGroup> {
        let n = table.len();
        if n == 0 || labels.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::invariant("malformed multiplication table"));
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(Error::invariant("element 0 is not the identity"));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::invariant("multiplication is not associative"));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == 0).ok_or_else(|| Error::invariant("missing inverse")))
            .collect::<Result<Vec<_>>>()?;
        Ok(AbstractFiniteGroup { table, inverse, labels })
    }

    pub fn trivial() -> AbstractFiniteGroup {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> AbstractFiniteGroup {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n).map(|a| a.to_string()).collect();
        Self::new(table, labels).expect("cyclic group")
    }

    /// `S₃` on three letters; elements are permutations in lexicographic
    /// order of their one-line notation.
    pub fn symmetric3() -> AbstractFiniteGroup {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("permutation");
        let table = perms.iter().map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect()).collect();
        let labels = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        Self::new(table, labels).expect("S3")
    }

    /// Looks up a group by its table name: `1`, `Z/n`, `S3`.
    pub fn by_name(name: &str) -> Option<AbstractFiniteGroup> {
        match name {
            "1" => Some(Self::trivial()),
            "S3" => Some(Self::symmetric3()),
            _ => name.strip_prefix("Z/").and_then(|n| n.parse().ok()).filter(|&n| n > 0).map(Self::cyclic),
        }
    }

    /// `(a, b)` is stored at index `a·|h| + b`.
    pub fn direct_product(g: &AbstractFiniteGroup, h: &AbstractFiniteGroup) -> AbstractFiniteGroup {
        let trivial_action = vec![(0..g.order()).collect::<Vec<_>>(); h.order()];
        Self::semidirect(g, h, &trivial_action).expect("direct product")
    }

    /// `N ⋊ H` with `action[h]` the automorphism of `N` by which `h` acts;
    /// `(n, h)` is stored at index `n·|H| + h` and
    /// `(n₁,h₁)(n₂,h₂) = (n₁·action[h₁](n₂), h₁h₂)`.
    pub fn semidirect(
        n: &AbstractFiniteGroup,
        h: &AbstractFiniteGroup,
        action: &[Vec<usize>],
    ) -> Result<AbstractFiniteGroup> {
        if action.len() != h.order() {
            return Err(Error::invariant("action must list one automorphism per element"));
        }
        for (k, a) in action.iter().enumerate() {
            if !n.is_automorphism(a) {
                return Err(Error::NotAutomorphism(format!("action of element {k}")));
            }
        }
        for h1 in 0..h.order() {
            for h2 in 0..h.order() {
                let composed: Vec<usize> = (0..n.order()).map(|x| action[h1][action[h2][x]]).collect();
                if composed != action[h.mul(h1, h2)] {
                    return Err(Error::invariant("action is not a homomorphism"));
                }
            }
        }
        let (nn, nh) = (n.order(), h.order());
        let mut table = vec![vec![0; nn * nh]; nn * nh];
        for n1 in 0..nn {
            for h1 in 0..nh {
                for n2 in 0..nn {
                    for h2 in 0..nh {
                        table[n1 * nh + h1][n2 * nh + h2] = n.mul(n1, action[h1][n2]) * nh + h.mul(h1, h2);
                    }
                }
            }
        }
        let mut labels = Vec::with_capacity(nn * nh);
        for n1 in 0..nn {
            for h1 in 0..nh {
                labels.push(format!("({},{})", n.labels[n1], h.labels[h1]));
            }
        }
        Self::new(table, labels)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn identity_map(&self) -> Vec<usize> {
        (0..self.order()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_automorphism(&self, f: &[usize]) -> bool {
        let n = self.order();
        if f.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &x in f {
            if x >= n || hit[x] {
                return false;
            }
            hit[x] = true;
        }
        (0..n).all(|a| (0..n).all(|b| f[self.mul(a, b)] == self.mul(f[a], f[b])))
    }

    /// Inner automorphism `x ↦ h x h⁻¹`.
    pub fn inner(&self, h: usize) -> Vec<usize> {
        (0..self.order()).map(|x| self.mul(self.mul(h, x), self.inv(h))).collect()
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        self.twisted_orbits(&self.identity_map())
    }

    pub fn class_count(&self) -> usize {
        self.conjugacy_classes().len()
    }

    /// Orbits of `b · a = b a f(b)⁻¹`, ordered by smallest member, with
    /// their stabilizers.
    pub fn twisted_classes(&self, f: &[usize]) -> Result<Vec<TwistedClass>> {
        if !self.is_automorphism(f) {
            return Err(Error::NotAutomorphism("twist is not an automorphism of the group".to_string()));
        }
        let mut out = Vec::new();
        for members in self.twisted_orbits(f) {
            let a = members[0];
            let centralizer = self.twisted_centralizer(a, f);
            let centralizer_classes = self.subgroup(&centralizer)?.class_count();
            out.push(TwistedClass { rep: a, members, centralizer, centralizer_classes });
        }
        Ok(out)
    }

    fn twisted_orbits(&self, f: &[usize]) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let mut members = Vec::new();
            let mut queue = VecDeque::from([a]);
            seen[a] = true;
            while let Some(x) = queue.pop_front() {
                members.push(x);
                for b in 0..n {
                    let y = self.mul(self.mul(b, x), self.inv(f[b]));
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    pub fn twisted_centralizer(&self, x: usize, f: &[usize]) -> Vec<usize> {
        (0..self.order()).filter(|&b| self.mul(self.mul(b, x), self.inv(f[b])) == x).collect()
    }

    /// `Σ` over twisted classes of the number of irreducible characters of
    /// the stabilizer: the number of pairs `(x, ρ)` up to twisted conjugacy.
    pub fn mbar_count(&self, f: &[usize]) -> Result<usize> {
        Ok(self.twisted_classes(f)?.iter().map(|c| c.centralizer_classes).sum())
    }

    /// The subgroup on the given elements (must contain the identity and be
    /// closed), relabelled `0..k` in the given order after the identity.
    pub fn subgroup(&self, elements: &[usize]) -> Result<AbstractFiniteGroup> {
        let mut elts: Vec<usize> = elements.to_vec();
        elts.sort();
        elts.dedup();
        if elts.first() != Some(&0) {
            return Err(Error::invariant("subgroup must contain the identity"));
        }
        let pos = |x: usize| elts.binary_search(&x).map_err(|_| Error::invariant("subset is not closed"));
        let table = elts
            .iter()
            .map(|&a| elts.iter().map(|&b| pos(self.mul(a, b))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let labels = elts.iter().map(|&a| self.labels[a].clone()).collect();
        Self::new(table, labels)
    }

    /// Brute-force isomorphism test by backtracking over order-preserving
    /// assignments. Intended for the small groups stored in tables.
    pub fn is_isomorphic(&self, other: &AbstractFiniteGroup) -> bool {
        let n = self.order();
        if n != other.order() {
            return false;
        }
        let ord_a: Vec<usize> = (0..n).map(|a| self.element_order(a)).collect();
        let ord_b: Vec<usize> = (0..n).map(|a| other.element_order(a)).collect();
        let mut sa = ord_a.clone();
        let mut sb = ord_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return false;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[0] = 0;
        used[0] = true;
        self.extend_iso(other, &ord_a, &ord_b, 1, &mut map, &mut used)
    }

    fn extend_iso(
        &self,
        other: &AbstractFiniteGroup,
        ord_a: &[usize],
        ord_b: &[usize],
        next: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = self.order();
        if next == n {
            return (0..n).all(|a| (0..n).all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])));
        }
        for y in 0..n {
            if used[y] || ord_a[next] != ord_b[y] {
                continue;
            }
            map[next] = y;
            let consistent = (0..=next).all(|a| {
                (0..=next).all(|b| {
                    let ab = self.mul(a, b);
                    ab > next || map[ab] == other.mul(map[a], map[b])
                })
            });
            if consistent {
                used[y] = true;
                if self.extend_iso(other, ord_a, ord_b, next + 1, map, used) {
                    return true;
                }
                used[y] = false;
            }
        }
        map[next] = usize::MAX;
        false
    }
}

/// An iterated direct product with mixed-radix element indices, so that
/// permutations of identical factors act as automorphisms.
#[derive(Clone, Debug)]
pub struct ProductGroup {
    factors: Vec<AbstractFiniteGroup>,
    group: AbstractFiniteGroup,
}

impl ProductGroup {
    pub fn new(factors: Vec<AbstractFiniteGroup>) -> ProductGroup {
        let group =
            factors.iter().fold(AbstractFiniteGroup::trivial(), |acc, f| AbstractFiniteGroup::direct_product(&acc, f));
        ProductGroup { factors, group }
    }

    pub fn group(&self) -> &AbstractFiniteGroup {
        &self.group
    }

    pub fn factors(&self) -> &[AbstractFiniteGroup] {
        &self.factors
    }

    /// Tuple of factor elements of a product element.
    pub fn decode(&self, mut x: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (k, f) in self.factors.iter().enumerate().rev() {
            out[k] = x % f.order();
            x /= f.order();
        }
        out
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        self.factors.iter().zip(tuple).fold(0, |acc, (f, &t)| acc * f.order() + t)
    }

    /// The automorphism moving factor `i` to position `perm[i]`, composed
    /// with the given automorphism of each factor (applied first).
    pub fn permutation_automorphism(&self, perm: &[usize], factor_autos: &[Vec<usize>]) -> Result<Vec<usize>> {
        for (i, &j) in perm.iter().enumerate() {
            if self.factors[i] != self.factors[j] {
                return Err(Error::NotAutomorphism(format!("factor {i} cannot be moved to factor {j}")));
            }
        }
        let f: Vec<usize> = (0..self.group.order())
            .map(|x| {
                let t = self.decode(x);
                let mut image = vec![0; t.len()];
                for i in 0..t.len() {
                    image[perm[i]] = factor_autos[i][t[i]];
                }
                self.encode(&image)
            })
            .collect();
        if !self.group.is_automorphism(&f) {
            return Err(Error::NotAutomorphism("factor permutation".to_string()));
        }
        Ok(f)
    }

    pub fn plain_permutation(&self, perm: &[usize]) -> Result<Vec<usize>> {
        let ids: Vec<Vec<usize>> = self.factors.iter().map(|f| f.identity_map()).collect();
        self.permutation_automorphism(perm, &ids)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twisted_classes_examples() {
        let z2 = AbstractFiniteGroup::cyclic(2);
        assert_eq!(z2.twisted_classes(&z2.identity_map()).unwrap().len(), 2);
        let s3 = AbstractFiniteGroup::symmetric3();
        assert_eq!(s3.class_count(), 3);
        let v = ProductGroup::new(vec![z2.clone(), z2.clone()]);
        let swap = v.plain_permutation(&[1, 0]).unwrap();
        assert_eq!(v.group().twisted_classes(&swap).unwrap().len(), 2);
    }

    #[test]
    fn centralizer_examples() {
        let s3 = AbstractFiniteGroup::symmetric3();
        let transposition = 1;
        assert_eq!(s3.twisted_centralizer(transposition, &s3.identity_map()).len(), 2);
        assert_eq!(s3.twisted_centralizer(0, &s3.identity_map()).len(), 6);
        let z4 = AbstractFiniteGroup::cyclic(4);
        let inversion: Vec<usize> = (0..4).map(|a| z4.inv(a)).collect();
        assert_eq!(z4.twisted_centralizer(1, &inversion), vec![0, 2]);
    }

    #[test]
    fn mbar_counts() {
        assert_eq!(AbstractFiniteGroup::trivial().mbar_count(&[0]).unwrap(), 1);
        let z2 = AbstractFiniteGroup::cyclic(2);
        assert_eq!(z2.mbar_count(&z2.identity_map()).unwrap(), 4);
        let s3 = AbstractFiniteGroup::symmetric3();
        assert_eq!(s3.mbar_count(&s3.identity_map()).unwrap(), 8);
    }

    #[test]
    fn isomorphism() {
        let s3 = AbstractFiniteGroup::symmetric3();
        let z6 = AbstractFiniteGroup::cyclic(6);
        let z2 = AbstractFiniteGroup::cyclic(2);
        let z3 = AbstractFiniteGroup::cyclic(3);
        assert!(!s3.is_isomorphic(&z6));
        assert!(z6.is_isomorphic(&AbstractFiniteGroup::direct_product(&z2, &z3)));
        let inv: Vec<Vec<usize>> = vec![z3.identity_map(), (0..3).map(|a| z3.inv(a)).collect()];
        let d3 = AbstractFiniteGroup::semidirect(&z3, &z2, &inv).unwrap();
        assert!(d3.is_isomorphic(&s3));
    }

    #[test]
    fn non_automorphism_rejected() {
        let z3 = AbstractFiniteGroup::cyclic(3);
        assert!(z3.twisted_classes(&[0, 1, 1]).is_err());
        assert!(z3.twisted_classes(&[1, 2, 0]).is_err());
    }
}
