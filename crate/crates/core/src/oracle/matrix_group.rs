//! Brute-force finite groups of Lie type as matrix or permutation groups.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::field::{FiniteField, Fq};

pub const DEFAULT_GROUP_BOUND: usize = 1_000_000;

/// How an element code is interpreted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    /// Row-major `n × n` matrix over the field.
    Matrix(usize),
    /// Images of `0..degree`.
    Permutation(usize),
}

/// Named constructions available to the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupName {
    Gl(usize),
    Sl(usize),
    Pgl(usize),
    Sp4,
    So5,
    Torus,
    O2,
}

impl GroupName {
    pub fn parse(s: &str) -> Option<GroupName> {
        let lower = s.to_ascii_lowercase();
        let dim = |prefix: &str| lower.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
        match lower.as_str() {
            "sp4" => Some(GroupName::Sp4),
            "so5" => Some(GroupName::So5),
            "torus" | "torus1" | "gm" => Some(GroupName::Torus),
            "o2" => Some(GroupName::O2),
            _ => {
                if let Some(n) = dim("pgl") {
                    (1..=3).contains(&n).then_some(GroupName::Pgl(n))
                } else if let Some(n) = dim("gl") {
                    (1..=4).contains(&n).then_some(GroupName::Gl(n))
                } else if let Some(n) = dim("sl") {
                    (1..=4).contains(&n).then_some(GroupName::Sl(n))
                } else {
                    None
                }
            }
        }
    }

    /// The classical order formula.
    pub fn expected_order(self, q: u64) -> u64 {
        let gl = |n: u32| (0..n).map(|k| q.pow(n) - q.pow(k)).product::<u64>();
        match self {
            GroupName::Gl(n) => gl(n as u32),
            GroupName::Sl(n) | GroupName::Pgl(n) => gl(n as u32) / (q - 1),
            GroupName::Sp4 | GroupName::So5 => q.pow(4) * (q * q - 1) * (q.pow(4) - 1),
            GroupName::Torus => q - 1,
            GroupName::O2 => 2 * (q - 1),
        }
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupName::Gl(n) => write!(f, "GL{n}"),
            GroupName::Sl(n) => write!(f, "SL{n}"),
            GroupName::Pgl(n) => write!(f, "PGL{n}"),
            GroupName::Sp4 => write!(f, "Sp4"),
            GroupName::So5 => write!(f, "SO5"),
            GroupName::Torus => write!(f, "Gm"),
            GroupName::O2 => write!(f, "O2"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    field: FiniteField,
    rep: Representation,
    generators: Vec<Vec<Fq>>,
    elements: Vec<Vec<Fq>>,
    index: HashMap<Vec<Fq>, u32>,
}

impl FiniteMatrixGroup {
    /// Closes the generators under multiplication, breadth first.
    pub fn generate(field: FiniteField, rep: Representation, generators: Vec<Vec<Fq>>, bound: usize) -> Result<Self> {
        let mut g = FiniteMatrixGroup { field, rep, generators, elements: Vec::new(), index: HashMap::new() };
        let id = g.identity();
        g.index.insert(id.clone(), 0);
        g.elements.push(id);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for k in 0..g.generators.len() {
                let x = g.product(&g.elements[i], &g.generators[k]);
                if !g.index.contains_key(&x) {
                    if g.elements.len() >= bound {
                        return Err(Error::OrderBound { bound });
                    }
                    g.index.insert(x.clone(), g.elements.len() as u32);
                    queue.push_back(g.elements.len());
                    g.elements.push(x);
                }
            }
        }
        g.reduce_generators();
        Ok(g)
    }

    /// Replaces a long generator list by two or three random elements that
    /// generate the same group, which speeds up the class computation.
    fn reduce_generators(&mut self) {
        if self.generators.len() <= 3 {
            return;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.elements.len() as u64);
        for attempt in 0..20 {
            let k = 2 + attempt / 10;
            let candidate: Vec<Vec<Fq>> =
                (0..k).map(|_| self.elements[rng.gen_range(0..self.elements.len())].clone()).collect();
            if self.generated_order(&candidate) == self.elements.len() {
                self.generators = candidate;
                return;
            }
        }
    }

    fn generated_order(&self, gens: &[Vec<Fq>]) -> usize {
        let id = self.identity();
        let mut seen: HashSet<Vec<Fq>> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.product(&x, g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.len()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<Fq>] {
        &self.elements
    }

    pub fn generators(&self) -> &[Vec<Fq>] {
        &self.generators
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn contains(&self, x: &[Fq]) -> bool {
        self.index.contains_key(x)
    }

    pub fn identity(&self) -> Vec<Fq> {
        match self.rep {
            Representation::Matrix(n) => (0..n * n).map(|k| Fq::from(k / n == k % n)).collect(),
            Representation::Permutation(d) => (0..d as Fq).collect(),
        }
    }

    /// `a · b`; permutations compose as functions, `(a·b)(i) = a(b(i))`.
    pub fn product(&self, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        match self.rep {
            Representation::Matrix(n) => {
                let f = &self.field;
                let mut out = vec![0; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let mut s = 0;
                        for k in 0..n {
                            s = f.add(s, f.mul(a[i * n + k], b[k * n + j]));
                        }
                        out[i * n + j] = s;
                    }
                }
                out
            }
            Representation::Permutation(_) => b.iter().map(|&i| a[i as usize]).collect(),
        }
    }

    fn inverse_of(&self, a: &[Fq]) -> Vec<Fq> {
        let id = self.identity();
        let mut prev = id.clone();
        let mut x = a.to_vec();
        while x != id {
            prev = x.clone();
            x = self.product(&x, a);
        }
        prev
    }

    /// Conjugacy classes as sorted index lists, ordered by first element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let pairs: Vec<(Vec<Fq>, Vec<Fq>)> = self.generators.iter().map(|g| (g.clone(), self.inverse_of(g))).collect();
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut class = vec![start];
            let mut k = 0;
            while k < class.len() {
                let x = &self.elements[class[k]];
                for (g, g_inv) in &pairs {
                    let y = self.product(&self.product(g, x), g_inv);
                    let j = self.index[&y] as usize;
                    if !seen[j] {
                        seen[j] = true;
                        class.push(j);
                    }
                }
                k += 1;
            }
            class.sort();
            classes.push(class);
        }
        classes
    }

    /// Number of conjugacy classes, i.e. of irreducible complex characters.
    pub fn class_count(&self) -> usize {
        self.conjugacy_classes().len()
    }
}

fn matrix(f: &FiniteField, n: usize, entries: &[(usize, usize, Fq)], diagonal: Fq) -> Vec<Fq> {
    let mut m: Vec<Fq> = (0..n * n).map(|k| if k / n == k % n { diagonal } else { f.zero() }).collect();
    for &(i, j, v) in entries {
        m[i * n + j] = v;
    }
    m
}

/// `F_p`-basis `1, ζ, …, ζ^(e-1)` of `F_q`.
fn additive_basis(f: &FiniteField) -> Vec<Fq> {
    let mut e = 0;
    let mut size = 1;
    while size < f.order() {
        size *= f.characteristic();
        e += 1;
    }
    (0..e).map(|k| f.power_of_primitive(k)).collect()
}

fn transvections(f: &FiniteField, n: usize) -> Vec<Vec<Fq>> {
    let basis = additive_basis(f);
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                for &a in &basis {
                    gens.push(matrix(f, n, &[(i, j, a)], f.one()));
                }
            }
        }
    }
    gens
}

fn gl_generators(f: &FiniteField, n: usize) -> Vec<Vec<Fq>> {
    let mut gens = transvections(f, n);
    gens.push(matrix(f, n, &[(0, 0, f.primitive())], f.one()));
    gens
}

/// Points of `P^{n-1}(F_q)` as vectors whose first nonzero entry is 1.
fn projective_points(f: &FiniteField, n: usize) -> Vec<Vec<Fq>> {
    let q = f.order();
    let mut out = Vec::new();
    for code in 0..q.pow(n as u32) {
        let v: Vec<Fq> = (0..n).map(|k| ((code / q.pow(k as u32)) % q) as Fq).collect();
        if let Some(&lead) = v.iter().find(|&&x| x != 0) {
            if lead == f.one() {
                out.push(v);
            }
        }
    }
    out
}

fn normalize(f: &FiniteField, v: &[Fq]) -> Vec<Fq> {
    let lead = *v.iter().find(|&&x| x != 0).expect("nonzero vector");
    let inv = f.inv(lead).expect("nonzero");
    v.iter().map(|&x| f.mul(x, inv)).collect()
}

fn mat_vec(f: &FiniteField, n: usize, m: &[Fq], v: &[Fq]) -> Vec<Fq> {
    (0..n).map(|i| (0..n).fold(0, |s, k| f.add(s, f.mul(m[i * n + k], v[k])))).collect()
}

/// Symmetric bilinear form `B(x,y) = Q(x+y) - Q(x) - Q(y)` of
/// `Q = x₀x₄ + x₁x₃ + x₂²`.
fn so5_bilinear(f: &FiniteField, x: &[Fq], y: &[Fq]) -> Fq {
    let terms = [
        f.mul(x[0], y[4]),
        f.mul(x[4], y[0]),
        f.mul(x[1], y[3]),
        f.mul(x[3], y[1]),
        f.mul(f.from_int(2), f.mul(x[2], y[2])),
    ];
    terms.iter().fold(0, |s, &t| f.add(s, t))
}

fn so5_quadratic(f: &FiniteField, x: &[Fq]) -> Fq {
    let terms = [f.mul(x[0], x[4]), f.mul(x[1], x[3]), f.mul(x[2], x[2])];
    terms.iter().fold(0, |s, &t| f.add(s, t))
}

/// Matrix of the orthogonal reflection in an anisotropic vector.
fn so5_reflection(f: &FiniteField, u: &[Fq]) -> Vec<Fq> {
    let qu_inv = f.inv(so5_quadratic(f, u)).expect("anisotropic");
    let mut m = vec![0; 25];
    for j in 0..5 {
        let e: Vec<Fq> = (0..5).map(|k| Fq::from(k == j)).collect();
        let c = f.mul(so5_bilinear(f, &e, u), qu_inv);
        for i in 0..5 {
            m[i * 5 + j] = f.sub(e[i], f.mul(c, u[i]));
        }
    }
    m
}

/// Symplectic form with `⟨e₀,e₃⟩ = ⟨e₁,e₂⟩ = 1`.
fn sp4_form(f: &FiniteField, x: &[Fq], y: &[Fq]) -> Fq {
    let t = [f.mul(x[0], y[3]), f.neg(f.mul(x[3], y[0])), f.mul(x[1], y[2]), f.neg(f.mul(x[2], y[1]))];
    t.iter().fold(0, |s, &v| f.add(s, v))
}

/// Transvection `x ↦ x + a⟨x,v⟩v`.
fn sp4_transvection(f: &FiniteField, v: &[Fq], a: Fq) -> Vec<Fq> {
    let mut m = vec![0; 16];
    for j in 0..4 {
        let e: Vec<Fq> = (0..4).map(|k| Fq::from(k == j)).collect();
        let c = f.mul(a, sp4_form(f, &e, v));
        for i in 0..4 {
            m[i * 4 + j] = f.add(e[i], f.mul(c, v[i]));
        }
    }
    m
}

fn small_vectors(n: usize, entries: &[Fq]) -> Vec<Vec<Fq>> {
    let k = entries.len();
    (1..k.pow(n as u32)).map(|code| (0..n).map(|i| entries[(code / k.pow(i as u32)) % k]).collect()).collect()
}

/// Builds a named group over `F_q` by closure.
pub fn build_group(name: GroupName, q: u64, bound: usize) -> Result<FiniteMatrixGroup> {
    let f = FiniteField::new(q)?;
    let g = match name {
        GroupName::Gl(n) => {
            let gens = gl_generators(&f, n);
            FiniteMatrixGroup::generate(f, Representation::Matrix(n), gens, bound)?
        }
        GroupName::Sl(n) => {
            let mut gens = transvections(&f, n);
            if n == 1 {
                gens.push(vec![f.one()]);
            }
            FiniteMatrixGroup::generate(f, Representation::Matrix(n), gens, bound)?
        }
        GroupName::Pgl(n) => {
            let points = projective_points(&f, n);
            let lookup: HashMap<Vec<Fq>, Fq> = points.iter().enumerate().map(|(i, v)| (v.clone(), i as Fq)).collect();
            let gens = gl_generators(&f, n)
                .iter()
                .map(|m| points.iter().map(|v| lookup[&normalize(&f, &mat_vec(&f, n, m, v))]).collect())
                .collect();
            FiniteMatrixGroup::generate(f, Representation::Permutation(points.len()), gens, bound)?
        }
        GroupName::Sp4 => {
            let basis = additive_basis(&f);
            let mut gens = Vec::new();
            for v in small_vectors(4, &[0, 1]) {
                for &a in &basis {
                    gens.push(sp4_transvection(&f, &v, a));
                }
            }
            FiniteMatrixGroup::generate(f, Representation::Matrix(4), gens, bound)?
        }
        GroupName::So5 => {
            if f.characteristic() == 2 {
                return Err(Error::BadPrime { p: 2, type_label: "B2".to_string() });
            }
            let anisotropic: Vec<Vec<Fq>> =
                small_vectors(5, &[0, f.one()]).into_iter().filter(|u| so5_quadratic(&f, u) != 0).collect();
            let base = so5_reflection(&f, &anisotropic[0]);
            let helper = FiniteMatrixGroup {
                field: f.clone(),
                rep: Representation::Matrix(5),
                generators: Vec::new(),
                elements: Vec::new(),
                index: HashMap::new(),
            };
            // products of two reflections have determinant 1
            let mut gens: Vec<Vec<Fq>> =
                anisotropic.iter().skip(1).map(|u| helper.product(&base, &so5_reflection(&f, u))).collect();
            gens.sort();
            gens.dedup();
            gens.retain(|g| *g != helper.identity());
            FiniteMatrixGroup::generate(f, Representation::Matrix(5), gens, bound)?
        }
        GroupName::Torus => {
            let gens = vec![vec![f.primitive()]];
            FiniteMatrixGroup::generate(f, Representation::Matrix(1), gens, bound)?
        }
        GroupName::O2 => {
            let z = f.primitive();
            let z_inv = f.inv(z).expect("nonzero");
            let gens = vec![vec![z, 0, 0, z_inv], vec![0, f.one(), f.one(), 0]];
            FiniteMatrixGroup::generate(f, Representation::Matrix(2), gens, bound)?
        }
    };
    let expected = name.expected_order(q);
    if g.order() as u64 != expected {
        return Err(Error::invariant(format!(
            "|{name}(F_{q})| = {} but the order formula gives {expected}",
            g.order()
        )));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_class_counts() {
        for (name, q, order, classes) in [
            (GroupName::Sl(2), 3, 24, 7),
            (GroupName::Gl(2), 2, 6, 3),
            (GroupName::Pgl(2), 3, 24, 5),
            (GroupName::Gl(2), 3, 48, 8),
            (GroupName::Gl(3), 2, 168, 6),
            (GroupName::Torus, 5, 4, 4),
            (GroupName::O2, 3, 4, 4),
        ] {
            let g = build_group(name, q, DEFAULT_GROUP_BOUND).unwrap();
            assert_eq!(g.order(), order, "{name}/{q}");
            let classes_found = g.conjugacy_classes();
            assert_eq!(classes_found.len(), classes, "{name}/{q}");
            assert_eq!(classes_found.iter().map(Vec::len).sum::<usize>(), order);
        }
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(build_group(GroupName::Gl(3), 3, 100), Err(Error::OrderBound { bound: 100 })));
    }

    #[test]
    fn parse_names() {
        assert_eq!(GroupName::parse("SL2"), Some(GroupName::Sl(2)));
        assert_eq!(GroupName::parse("pgl3"), Some(GroupName::Pgl(3)));
        assert_eq!(GroupName::parse("pgl4"), None);
        assert_eq!(GroupName::parse("g2"), None);
    }
}
