//! Root data, Frobenius twists, Weyl groups and the centralizer combinatorics
//! of torsion points.
//!
//! A root datum is stored with explicit bases: the character lattice `X` and
//! the cocharacter lattice `Y` are both `Z^rank` and the pairing is the dot
//! product. Roots live in `X`, coroots in `Y`, and index `i` of one list
//! matches index `i` of the other.

pub(crate) mod build;
pub mod cartan;
pub mod config;
mod weyl;

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::lattice::{smith_normal_form, IntMatrix, TorsionPoint};

pub use build::Isogeny;
pub use cartan::{AbstractRootSystem, CartanType, FactorType, SimpleType};
pub use config::{named_group, parse_group_spec, GroupConfig, NAMED_GROUPS};
pub use weyl::{WeylElement, WeylGroup, DEFAULT_ORDER_BOUND};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    positive: Vec<bool>,
    simple: Vec<usize>,
    cartan_label: String,
}

impl RootDatum {
    /// Assembles a datum and checks the root datum axioms.
    pub fn new(
        rank: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        positive: Vec<bool>,
        simple: Vec<usize>,
        cartan_label: String,
    ) -> Result<RootDatum> {
        let d = RootDatum { rank, roots, coroots, positive, simple, cartan_label };
        d.validate()?;
        Ok(d)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive[i]
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&i| self.positive[i])
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple.len()
    }

    pub fn cartan_label(&self) -> &str {
        &self.cartan_label
    }

    pub fn pairing(x: &[i64], y: &[i64]) -> i64 {
        x.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r == v)
    }

    pub fn negative_of(&self, i: usize) -> usize {
        let neg: Vec<i64> = self.roots[i].iter().map(|x| -x).collect();
        self.root_index(&neg).expect("root system is closed under negation")
    }

    /// `C[i][j] = ⟨α_i, α_j^∨⟩` over the simple roots.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.simple
            .iter()
            .map(|&i| self.simple.iter().map(|&j| Self::pairing(&self.roots[i], &self.coroots[j])).collect())
            .collect()
    }

    /// The reflection `s_α` for root index `i`, acting on `X` and on `Y`.
    pub fn reflection(&self, i: usize) -> WeylElement {
        let (a, c) = (&self.roots[i], &self.coroots[i]);
        let n = self.rank;
        let mut x = IntMatrix::identity(n);
        for r in 0..n {
            for col in 0..n {
                x[(r, col)] -= a[r] * c[col];
            }
        }
        // on Y the reflection y ↦ y - ⟨α, y⟩ α^∨ is the transpose
        WeylElement::new(x.clone(), x.transpose())
    }

    /// Permutation of root indices induced by a lattice automorphism of `X`
    /// (with `y` its contragredient), or `None` if it does not preserve the
    /// roots and coroots compatibly.
    pub fn root_permutation(&self, x: &IntMatrix, y: &IntMatrix) -> Option<Vec<usize>> {
        let lookup: HashMap<&Vec<i64>, usize> = self.roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut perm = Vec::with_capacity(self.roots.len());
        for i in 0..self.roots.len() {
            let j = *lookup.get(&x.mul_vec(&self.roots[i]))?;
            if y.mul_vec(&self.coroots[i]) != self.coroots[j] {
                return None;
            }
            perm.push(j);
        }
        Some(perm)
    }

    fn validate(&self) -> Result<()> {
        if self.roots.len() != self.coroots.len() || self.positive.len() != self.roots.len() {
            return Err(Error::invariant("root, coroot and positivity lists differ in length"));
        }
        for (a, c) in self.roots.iter().zip(&self.coroots) {
            if a.len() != self.rank || c.len() != self.rank {
                return Err(Error::invariant("root vector of wrong length"));
            }
            if Self::pairing(a, c) != 2 {
                return Err(Error::invariant(format!("⟨α, α^∨⟩ ≠ 2 for α = {a:?}")));
            }
        }
        for &i in &self.simple {
            let s = self.reflection(i);
            if self.root_permutation(s.x(), s.y()).is_none() {
                return Err(Error::invariant(format!("simple reflection {i} does not permute the roots")));
            }
        }
        Ok(())
    }

    /// Weyl group of the datum extended by extra lattice automorphisms (the
    /// component group of a disconnected group).
    pub fn weyl_group(&self, extra: &[IntMatrix], bound: usize) -> Result<WeylGroup> {
        WeylGroup::generate(self, extra, bound)
    }
}

/// Langlands dual: swaps `X` with `Y` and roots with coroots. Involutive.
pub fn dual_datum(d: &RootDatum) -> RootDatum {
    let dual_label =
        CartanType::parse(&d.cartan_label).map(|t| t.dual().label()).unwrap_or_else(|_| d.cartan_label.clone());
    RootDatum {
        rank: d.rank,
        roots: d.coroots.clone(),
        coroots: d.roots.clone(),
        positive: d.positive.clone(),
        simple: d.simple.clone(),
        cartan_label: dual_label,
    }
}

/// Frobenius structure: `F = q · σ` on `X`, with `σ` a pinned diagram
/// automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusTwist {
    sigma_x: IntMatrix,
    sigma_y: IntMatrix,
    /// Permutation of the simple indices induced by `σ`.
    diagram: Vec<usize>,
    q: u64,
    p: u64,
}

impl FrobeniusTwist {
    pub fn new(d: &RootDatum, sigma_x: IntMatrix, q: u64) -> Result<FrobeniusTwist> {
        let p = prime_of_prime_power(q).ok_or_else(|| Error::config("q", format!("{q} is not a prime power")))?;
        let (sigma_y_t, _) = sigma_x
            .finite_order_inverse(64)
            .ok_or_else(|| Error::config("twist", "twist does not have finite order"))?;
        let sigma_y = sigma_y_t.transpose();
        let perm = d
            .root_permutation(&sigma_x, &sigma_y)
            .ok_or_else(|| Error::config("twist", "twist is not an automorphism of the root datum"))?;
        let simple_pos: HashMap<usize, usize> = d.simple.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let diagram = d
            .simple
            .iter()
            .map(|&i| simple_pos.get(&perm[i]).copied())
            .collect::<Option<Vec<usize>>>()
            .ok_or_else(|| Error::config("twist", "twist does not permute the simple roots"))?;
        Ok(FrobeniusTwist { sigma_x, sigma_y, diagram, q, p })
    }

    pub fn split(d: &RootDatum, q: u64) -> Result<FrobeniusTwist> {
        Self::new(d, IntMatrix::identity(d.rank()), q)
    }

    pub fn sigma_x(&self) -> &IntMatrix {
        &self.sigma_x
    }

    pub fn sigma_y(&self) -> &IntMatrix {
        &self.sigma_y
    }

    pub fn sigma(&self) -> WeylElement {
        WeylElement::new(self.sigma_x.clone(), self.sigma_y.clone())
    }

    pub fn diagram(&self) -> &[usize] {
        &self.diagram
    }

    pub fn is_split(&self) -> bool {
        self.sigma_x.is_identity()
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The twist seen from the dual datum.
    pub fn dual(&self) -> FrobeniusTwist {
        FrobeniusTwist {
            sigma_x: self.sigma_y.clone(),
            sigma_y: self.sigma_x.clone(),
            diagram: self.diagram.clone(),
            q: self.q,
            p: self.p,
        }
    }

    /// `F(s) = q σ(s)` for a point of `X ⊗ Q/Z`.
    pub fn frobenius_on_x(&self, s: &TorsionPoint) -> TorsionPoint {
        s.apply(&self.sigma_x).scale(self.q as i64)
    }

    /// `F(s) = q σ(s)` for a point of `Y ⊗ Q/Z`.
    pub fn frobenius_on_y(&self, s: &TorsionPoint) -> TorsionPoint {
        s.apply(&self.sigma_y).scale(self.q as i64)
    }
}

pub fn prime_of_prime_power(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|p| q % p == 0)?;
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    (r == 1).then_some(p)
}

/// Where a group specification came from, echoed in reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecSource {
    pub type_label: String,
    pub isogeny: String,
    pub twist: Vec<usize>,
    pub component_group: Vec<Vec<Vec<i64>>>,
}

/// A reductive group over `F_q`: root datum, Frobenius twist and the
/// component group `Γ` (empty for connected groups).
#[derive(Clone, Debug)]
pub struct GroupSpec {
    datum: RootDatum,
    twist: FrobeniusTwist,
    component_group: Vec<IntMatrix>,
    cartan_type: CartanType,
    source: SpecSource,
}

impl GroupSpec {
    /// Validates the component-group generators against the datum and twist.
    pub fn new(
        datum: RootDatum,
        twist: FrobeniusTwist,
        component_group: Vec<IntMatrix>,
        cartan_type: CartanType,
        source: SpecSource,
    ) -> Result<GroupSpec> {
        for t in cartan_type.simple_factors() {
            if t.bad_primes().contains(&twist.p) {
                return Err(Error::BadPrime { p: twist.p, type_label: t.label().to_string() });
            }
        }
        let connected = datum.weyl_group(&[], DEFAULT_ORDER_BOUND)?;
        for (k, g) in component_group.iter().enumerate() {
            let field = format!("component_group[{k}]");
            if g.rows() != datum.rank() || !g.is_square() {
                return Err(Error::config(&field, "matrix size does not match the rank"));
            }
            let (inv, _) =
                g.finite_order_inverse(64).ok_or_else(|| Error::config(&field, "matrix does not have finite order"))?;
            if datum.root_permutation(g, &inv.transpose()).is_none() {
                return Err(Error::config(&field, "matrix does not stabilize the roots and coroots"));
            }
            // Frobenius must act trivially on π₀: σ γ σ⁻¹ γ⁻¹ ∈ W°
            let (sigma_inv, _) = twist.sigma_x.finite_order_inverse(64).expect("validated twist");
            let comm = twist.sigma_x.mul(g).mul(&sigma_inv).mul(&inv);
            if connected.index_of(&comm).is_none() {
                return Err(Error::config(&field, "Frobenius acts nontrivially on this component"));
            }
        }
        Ok(GroupSpec { datum, twist, component_group, cartan_type, source })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn twist(&self) -> &FrobeniusTwist {
        &self.twist
    }

    pub fn q(&self) -> u64 {
        self.twist.q
    }

    pub fn p(&self) -> u64 {
        self.twist.p
    }

    pub fn component_group(&self) -> &[IntMatrix] {
        &self.component_group
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn source(&self) -> &SpecSource {
        &self.source
    }

    /// Connected iff the full Weyl group equals the reflection group.
    pub fn is_connected(&self) -> bool {
        match self.datum.weyl_group(&self.component_group, DEFAULT_ORDER_BOUND) {
            Ok(w) => w.elements().len() == w.connected_order(),
            Err(_) => false,
        }
    }
}

/// A closed sub-root-system of a datum given by a set of root indices.
#[derive(Clone, Debug)]
pub struct SubSystem {
    /// Ambient indices of the roots, ascending.
    pub roots: Vec<usize>,
    /// Ambient indices of the simple roots of `roots ∩ Φ⁺`, grouped by
    /// irreducible component, each component in standard order.
    pub simple: Vec<usize>,
    pub components: Vec<Component>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: SimpleType,
    /// Ambient indices of the component's simple roots in standard order.
    pub simple: Vec<usize>,
    /// Ambient indices of all roots of the component.
    pub roots: Vec<usize>,
}

impl SubSystem {
    /// Builds the subsystem on the given root indices (must be closed under
    /// the reflections it contains).
    pub fn new(d: &RootDatum, indices: &[usize]) -> Result<SubSystem> {
        let set: BTreeSet<usize> = indices.iter().copied().collect();
        let positive: Vec<usize> = set.iter().copied().filter(|&i| d.is_positive(i)).collect();
        let pos_set: BTreeSet<usize> = positive.iter().copied().collect();
        // α is simple in Φ'⁺ iff s_α maps Φ'⁺ \ {α} into Φ'⁺
        let mut simple_raw = Vec::new();
        for &a in &positive {
            let s = d.reflection(a);
            let perm = d.root_permutation(s.x(), s.y()).expect("reflection permutes roots");
            if positive.iter().all(|&b| b == a || pos_set.contains(&perm[b])) {
                simple_raw.push(a);
            }
        }
        // connected components of the Coxeter graph
        let n = simple_raw.len();
        let mut comp_of = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if comp_of[start] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp_of[start] = id;
            while let Some(i) = stack.pop() {
                members.push(i);
                for j in 0..n {
                    if comp_of[j] == usize::MAX
                        && RootDatum::pairing(&d.roots[simple_raw[i]], &d.coroots[simple_raw[j]]) != 0
                    {
                        comp_of[j] = id;
                        stack.push(j);
                    }
                }
            }
            members.sort();
            comps.push(members);
        }
        let mut components = Vec::new();
        for members in comps {
            let ambient: Vec<usize> = members.iter().map(|&k| simple_raw[k]).collect();
            let cartan: Vec<Vec<i64>> = ambient
                .iter()
                .map(|&i| ambient.iter().map(|&j| RootDatum::pairing(&d.roots[i], &d.coroots[j])).collect())
                .collect();
            let (kind, order) = SimpleType::classify(&cartan)?;
            let simple: Vec<usize> = order.iter().map(|&k| ambient[k]).collect();
            let roots: Vec<usize> = set
                .iter()
                .copied()
                .filter(|&r| simple.iter().any(|&s| RootDatum::pairing(&d.roots[r], &d.coroots[s]) != 0))
                .collect();
            components.push(Component { kind, simple, roots });
        }
        let simple = components.iter().flat_map(|c| c.simple.iter().copied()).collect();
        Ok(SubSystem { roots: set.into_iter().collect(), simple, components })
    }

    pub fn positive(&self, d: &RootDatum) -> Vec<usize> {
        self.roots.iter().copied().filter(|&i| d.is_positive(i)).collect()
    }

    /// Label such as `A1xA1` (or `T` for the empty system).
    pub fn type_label(&self) -> String {
        if self.components.is_empty() {
            return "T".to_string();
        }
        let parts: Vec<&str> = self.components.iter().map(|c| c.kind.label()).collect();
        parts.join("x")
    }

    /// Which component a root index belongs to.
    pub fn component_of(&self, root: usize) -> Option<usize> {
        self.components.iter().position(|c| c.roots.contains(&root))
    }

    /// Permutation of components induced by a root permutation that
    /// preserves this subsystem.
    pub fn component_permutation(&self, root_perm: &[usize]) -> Option<Vec<usize>> {
        self.components.iter().map(|c| self.component_of(root_perm[c.simple[0]])).collect()
    }

    /// Whether a root permutation maps the positive roots of the subsystem
    /// onto themselves.
    pub fn preserves_positive(&self, d: &RootDatum, root_perm: &[usize]) -> bool {
        self.positive(d).iter().all(|&i| d.is_positive(root_perm[i]) && self.roots.binary_search(&root_perm[i]).is_ok())
    }
}

/// Pseudo-Levi sub-datum attached to a torsion point of `Y ⊗ Q/Z`.
#[derive(Clone, Debug)]
pub struct CentralizerSubdatum {
    /// Same lattices as the ambient datum; roots restricted to the subsystem.
    pub datum: RootDatum,
    /// `root_map[k]` is the ambient index of the sub-datum's root `k`.
    pub root_map: Vec<usize>,
    pub subsystem: SubSystem,
}

/// Roots `α` with `⟨α, s⟩ ∈ Z`.
pub fn centralizer_subdatum(d: &RootDatum, s: &TorsionPoint) -> Result<CentralizerSubdatum> {
    if s.rank() != d.rank() {
        return Err(Error::UnreducedPoint(format!("point {s:?} has rank {} ≠ {}", s.rank(), d.rank())));
    }
    TorsionPoint::from_reduced(s.numerators().to_vec(), s.order())?;
    let indices: Vec<usize> = (0..d.num_roots()).filter(|&i| s.pairs_integrally(&d.roots[i])).collect();
    let subsystem = SubSystem::new(d, &indices)?;
    let local: HashMap<usize, usize> = indices.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let datum = RootDatum::new(
        d.rank,
        indices.iter().map(|&i| d.roots[i].clone()).collect(),
        indices.iter().map(|&i| d.coroots[i].clone()).collect(),
        indices.iter().map(|&i| d.positive[i]).collect(),
        subsystem.simple.iter().map(|i| local[i]).collect(),
        subsystem.type_label(),
    )?;
    Ok(CentralizerSubdatum { datum, root_map: indices, subsystem })
}

/// `{w ∈ W : w(s) = s, w(Φ_s⁺) = Φ_s⁺}` as indices into `weyl`; this is the
/// component group of the centralizer of `s` in the dual group.
pub fn component_group_of_centralizer(d: &RootDatum, weyl: &WeylGroup, s: &TorsionPoint) -> Result<Vec<usize>> {
    let sub = centralizer_subdatum(d, s)?;
    Ok((0..weyl.elements().len())
        .filter(|&w| {
            s.apply(weyl.elements()[w].y()) == *s && sub.subsystem.preserves_positive(d, weyl.root_permutation(w))
        })
        .collect())
}

/// Size of the torsor of Whittaker data: `|ker(F - 1)|` on the prime-to-`p`
/// torsion of `X / ZΦ`, which is the order of the Frobenius coinvariants of
/// the component group of the centre.
pub fn whittaker_torsor_size(g: &GroupSpec) -> Result<u64> {
    let d = g.datum();
    let n = d.rank();
    if d.semisimple_rank() == 0 {
        return Ok(1);
    }
    let cols: Vec<Vec<i64>> = d.simple_indices().iter().map(|&i| d.roots()[i].clone()).collect();
    let m = IntMatrix::from_columns(n, &cols);
    let snf = smith_normal_form(&m);
    let torsion: Vec<(usize, i64)> =
        snf.diagonal.iter().enumerate().filter(|(_, &dd)| dd > 1).map(|(i, &dd)| (i, dd)).collect();
    if torsion.is_empty() {
        return Ok(1);
    }
    let rank = snf.rank();
    let u_inv = unimodular_inverse(&snf.u);
    let q = g.q() as i64;
    let p = g.p() as i64;
    let frob = g.twist().sigma_x().scale(q).sub(&IntMatrix::identity(n));
    let mut count = 0u64;
    let mut counter = vec![0i64; torsion.len()];
    loop {
        let mut coords = vec![0i64; n];
        let mut order = 1i64;
        for (k, &(i, dd)) in torsion.iter().enumerate() {
            coords[i] = counter[k];
            order = crate::lattice::lcm(order, dd / crate::lattice::gcd(counter[k], dd));
        }
        if order % p != 0 {
            let x = u_inv.mul_vec(&coords);
            let image = snf.u.mul_vec(&frob.mul_vec(&x));
            let in_root_lattice =
                (0..n).all(|i| if i < rank { image[i].rem_euclid(snf.diagonal[i]) == 0 } else { image[i] == 0 });
            if in_root_lattice {
                count += 1;
            }
        }
        let mut k = 0;
        loop {
            if k == torsion.len() {
                return Ok(count);
            }
            counter[k] += 1;
            if counter[k] < torsion[k].1 {
                break;
            }
            counter[k] = 0;
            k += 1;
        }
    }
}

/// Inverse of a unimodular matrix via the adjugate.
pub(crate) fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let det = m.determinant();
    assert!(det == 1 || det == -1, "matrix is not unimodular");
    let mut inv = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor_rows: Vec<Vec<i64>> =
                (0..n).filter(|&r| r != j).map(|r| (0..n).filter(|&c| c != i).map(|c| m[(r, c)]).collect()).collect();
            let minor = if n == 1 { 1 } else { IntMatrix::from_rows(&minor_rows).determinant() };
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[(i, j)] = sign * minor * det;
        }
    }
    inv
}

#[cfg(test)]
mod tests;
