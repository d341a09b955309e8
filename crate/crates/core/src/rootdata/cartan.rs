//! Cartan types, Cartan matrices and abstract root systems.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Irreducible Cartan types supported by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleType {
    A1,
    A2,
    B2,
    C2,
    G2,
}

impl SimpleType {
    pub const ALL: [SimpleType; 5] = [SimpleType::A1, SimpleType::A2, SimpleType::B2, SimpleType::C2, SimpleType::G2];

    pub fn rank(self) -> usize {
        match self {
            SimpleType::A1 => 1,
            _ => 2,
        }
    }

    /// `C[i][j] = ⟨α_i, α_j^∨⟩`, Bourbaki numbering.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        match self {
            SimpleType::A1 => vec![vec![2]],
            SimpleType::A2 => vec![vec![2, -1], vec![-1, 2]],
            SimpleType::B2 => vec![vec![2, -2], vec![-1, 2]],
            SimpleType::C2 => vec![vec![2, -1], vec![-2, 2]],
            SimpleType::G2 => vec![vec![2, -1], vec![-3, 2]],
        }
    }

    /// Type of the dual root system.
    pub fn dual(self) -> SimpleType {
        match self {
            SimpleType::B2 => SimpleType::C2,
            SimpleType::C2 => SimpleType::B2,
            t => t,
        }
    }

    /// Primes that are bad for this type.
    pub fn bad_primes(self) -> &'static [u64] {
        match self {
            SimpleType::A1 | SimpleType::A2 => &[],
            SimpleType::B2 | SimpleType::C2 => &[2],
            SimpleType::G2 => &[2, 3],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SimpleType::A1 => "A1",
            SimpleType::A2 => "A2",
            SimpleType::B2 => "B2",
            SimpleType::C2 => "C2",
            SimpleType::G2 => "G2",
        }
    }

    pub fn parse(s: &str) -> Option<SimpleType> {
        SimpleType::ALL.into_iter().find(|t| t.label() == s)
    }

    /// Identifies an irreducible rank ≤ 2 Cartan matrix. Double bonds are
    /// reported as `B2` (the root systems of `B2` and `C2` are isomorphic);
    /// the returned permutation lists the input indices in standard order.
    pub fn classify(cartan: &[Vec<i64>]) -> Result<(SimpleType, Vec<usize>)> {
        match cartan.len() {
            1 => Ok((SimpleType::A1, vec![0])),
            2 => {
                let (a, b) = (cartan[0][1], cartan[1][0]);
                match a * b {
                    1 => Ok((SimpleType::A2, vec![0, 1])),
                    // standard B2: ⟨α_0, α_1^∨⟩ = -2
                    2 => Ok((SimpleType::B2, if a == -2 { vec![0, 1] } else { vec![1, 0] })),
                    // standard G2: ⟨α_1, α_0^∨⟩ = -3
                    3 => Ok((SimpleType::G2, if b == -3 { vec![0, 1] } else { vec![1, 0] })),
                    _ => Err(Error::UnsupportedType(format!("reducible or unknown Cartan matrix {cartan:?}"))),
                }
            }
            n => Err(Error::UnsupportedType(format!("irreducible component of rank {n}"))),
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorType {
    Simple(SimpleType),
    Torus(usize),
}

/// A product of irreducible types and torus factors, e.g. `A1xA1xT1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub factors: Vec<FactorType>,
}

impl CartanType {
    pub fn parse(label: &str) -> Result<CartanType> {
        let mut factors = Vec::new();
        for part in label.split('x') {
            let part = part.trim();
            if let Some(t) = SimpleType::parse(part) {
                factors.push(FactorType::Simple(t));
            } else if let Some(n) = part.strip_prefix('T').and_then(|n| n.parse::<usize>().ok()) {
                if n == 0 {
                    return Err(Error::UnsupportedType(label.to_string()));
                }
                factors.push(FactorType::Torus(n));
            } else {
                return Err(Error::UnsupportedType(format!(
                    "`{part}` in `{label}` (supported: A1, A2, B2, C2, G2, Tn and products joined by `x`)"
                )));
            }
        }
        if factors.is_empty() {
            return Err(Error::UnsupportedType(label.to_string()));
        }
        Ok(CartanType { factors })
    }

    pub fn simple_factors(&self) -> impl Iterator<Item = SimpleType> + '_ {
        self.factors.iter().filter_map(|f| match f {
            FactorType::Simple(t) => Some(*t),
            FactorType::Torus(_) => None,
        })
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_factors().map(SimpleType::rank).sum()
    }

    /// Block-diagonal Cartan matrix of the simple factors.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.semisimple_rank();
        let mut c = vec![vec![0; n]; n];
        let mut off = 0;
        for t in self.simple_factors() {
            let block = t.cartan_matrix();
            for i in 0..t.rank() {
                for j in 0..t.rank() {
                    c[off + i][off + j] = block[i][j];
                }
            }
            off += t.rank();
        }
        c
    }

    pub fn dual(&self) -> CartanType {
        CartanType {
            factors: self
                .factors
                .iter()
                .map(|f| match f {
                    FactorType::Simple(t) => FactorType::Simple(t.dual()),
                    t => *t,
                })
                .collect(),
        }
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|f| match f {
                FactorType::Simple(t) => t.label().to_string(),
                FactorType::Torus(n) => format!("T{n}"),
            })
            .collect();
        parts.join("x")
    }
}

/// Roots and coroots in simple-root / simple-coroot coordinates.
#[derive(Clone, Debug)]
pub struct AbstractRootSystem {
    /// Root coefficients on the simple roots; positive roots first.
    pub roots: Vec<Vec<i64>>,
    /// Matching coroot coefficients on the simple coroots.
    pub coroots: Vec<Vec<i64>>,
    pub num_positive: usize,
}

impl AbstractRootSystem {
    /// Closes the simple roots under the simple reflections. Positive roots are
    /// ordered by height and then so that simple root `i` sits at index `i`;
    /// negative roots follow in the same order.
    pub fn from_cartan(cartan: &[Vec<i64>]) -> AbstractRootSystem {
        let n = cartan.len();
        let unit = |i: usize| (0..n).map(|k| i64::from(k == i)).collect::<Vec<i64>>();
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            seen.insert(unit(i), unit(i));
            queue.push_back((unit(i), unit(i)));
        }
        while let Some((root, coroot)) = queue.pop_front() {
            for j in 0..n {
                // ⟨α, α_j^∨⟩ and ⟨α_j, α^∨⟩
                let a: i64 = (0..n).map(|k| root[k] * cartan[k][j]).sum();
                let b: i64 = (0..n).map(|k| coroot[k] * cartan[j][k]).sum();
                let mut r = root.clone();
                r[j] -= a;
                let mut c = coroot.clone();
                c[j] -= b;
                if !seen.contains_key(&r) {
                    seen.insert(r.clone(), c.clone());
                    queue.push_back((r, c));
                }
            }
        }
        let mut positive: Vec<(Vec<i64>, Vec<i64>)> =
            seen.into_iter().filter(|(r, _)| r.iter().all(|&x| x >= 0)).collect();
        positive.sort_by(|(a, _), (b, _)| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let num_positive = positive.len();
        let mut roots: Vec<Vec<i64>> = positive.iter().map(|(r, _)| r.clone()).collect();
        let mut coroots: Vec<Vec<i64>> = positive.iter().map(|(_, c)| c.clone()).collect();
        for (r, c) in &positive {
            roots.push(r.iter().map(|x| -x).collect());
            coroots.push(c.iter().map(|x| -x).collect());
        }
        AbstractRootSystem { roots, coroots, num_positive }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (t, n) in
            [(SimpleType::A1, 2), (SimpleType::A2, 6), (SimpleType::B2, 8), (SimpleType::C2, 8), (SimpleType::G2, 12)]
        {
            let rs = AbstractRootSystem::from_cartan(&t.cartan_matrix());
            assert_eq!(rs.roots.len(), n, "{t}");
            for i in 0..t.rank() {
                assert_eq!(rs.roots[i], (0..t.rank()).map(|k| i64::from(k == i)).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn g2_highest_root() {
        let rs = AbstractRootSystem::from_cartan(&SimpleType::G2.cartan_matrix());
        // α_1 short, α_2 long: highest root 3α_1 + 2α_2
        assert_eq!(rs.roots[rs.num_positive - 1], vec![3, 2]);
    }

    #[test]
    fn parse_products() {
        let t = CartanType::parse("A1xA1xT1").unwrap();
        assert_eq!(t.semisimple_rank(), 2);
        assert_eq!(t.label(), "A1xA1xT1");
        assert!(CartanType::parse("A3").is_err());
        assert!(CartanType::parse("T0").is_err());
        assert_eq!(CartanType::parse("B2xT2").unwrap().dual().label(), "C2xT2");
    }

    #[test]
    fn classify_orders_standard() {
        let (t, order) = SimpleType::classify(&[vec![2, -1], vec![-2, 2]]).unwrap();
        assert_eq!((t, order), (SimpleType::B2, vec![1, 0]));
        let (t, order) = SimpleType::classify(&[vec![2, -3], vec![-1, 2]]).unwrap();
        assert_eq!((t, order), (SimpleType::G2, vec![1, 0]));
    }
}
