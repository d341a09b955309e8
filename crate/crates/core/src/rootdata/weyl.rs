//! Weyl groups as explicit finite groups of lattice automorphisms.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

use super::RootDatum;

pub const DEFAULT_ORDER_BOUND: usize = 100_000;

/// A lattice automorphism together with its action on the dual lattice
/// (`y` is the inverse transpose of `x`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    x: IntMatrix,
    y: IntMatrix,
}

impl WeylElement {
    pub fn new(x: IntMatrix, y: IntMatrix) -> WeylElement {
        WeylElement { x, y }
    }

    pub fn identity(n: usize) -> WeylElement {
        WeylElement { x: IntMatrix::identity(n), y: IntMatrix::identity(n) }
    }

    pub fn x(&self) -> &IntMatrix {
        &self.x
    }

    pub fn y(&self) -> &IntMatrix {
        &self.y
    }

    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        WeylElement { x: self.x.mul(&other.x), y: self.y.mul(&other.y) }
    }

    /// Swaps the roles of `X` and `Y`.
    pub fn dual(&self) -> WeylElement {
        WeylElement { x: self.y.clone(), y: self.x.clone() }
    }
}

/// `W = ⟨W°, Γ⟩` with `W°` generated by the simple reflections. Element 0 is
/// the identity and the elements of `W°` come first.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    index: HashMap<IntMatrix, usize>,
    mul: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    connected_order: usize,
    root_perms: Vec<Vec<usize>>,
    rank: usize,
}

impl WeylGroup {
    pub(crate) fn generate(d: &RootDatum, extra: &[IntMatrix], bound: usize) -> Result<WeylGroup> {
        let n = d.rank();
        let mut gens: Vec<WeylElement> = d.simple_indices().iter().map(|&i| d.reflection(i)).collect();
        let mut elements = vec![WeylElement::identity(n)];
        let mut index = HashMap::new();
        index.insert(elements[0].x.clone(), 0);
        Self::close(&mut elements, &mut index, &gens, bound)?;
        let connected_order = elements.len();
        for g in extra {
            let (inv, _) = g
                .finite_order_inverse(64)
                .ok_or_else(|| Error::NotAutomorphism(format!("{g:?} does not have finite order")))?;
            gens.push(WeylElement::new(g.clone(), inv.transpose()));
        }
        if !extra.is_empty() {
            Self::close(&mut elements, &mut index, &gens, bound)?;
        }
        let m = elements.len();
        let mut mul = vec![vec![0; m]; m];
        for a in 0..m {
            for b in 0..m {
                let prod = elements[a].x.mul(&elements[b].x);
                mul[a][b] = *index
                    .get(&prod)
                    .ok_or_else(|| Error::invariant("Weyl group closure is not closed under products"))?;
            }
        }
        let inverse = (0..m)
            .map(|a| (0..m).find(|&b| mul[a][b] == 0).ok_or_else(|| Error::invariant("missing inverse")))
            .collect::<Result<Vec<usize>>>()?;
        let root_perms = elements
            .iter()
            .map(|w| {
                d.root_permutation(&w.x, &w.y)
                    .ok_or_else(|| Error::NotAutomorphism(format!("{:?} does not permute the roots", w.x)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WeylGroup { elements, index, mul, inverse, connected_order, root_perms, rank: n })
    }

    fn close(
        elements: &mut Vec<WeylElement>,
        index: &mut HashMap<IntMatrix, usize>,
        gens: &[WeylElement],
        bound: usize,
    ) -> Result<()> {
        let mut queue: VecDeque<usize> = (0..elements.len()).collect();
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let w = elements[i].mul(g);
                if !index.contains_key(&w.x) {
                    if elements.len() >= bound {
                        return Err(Error::OrderBound { bound });
                    }
                    index.insert(w.x.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(w);
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `|W°|`; indices below this are exactly the elements of `W°`.
    pub fn connected_order(&self) -> usize {
        self.connected_order
    }

    pub fn is_connected_element(&self, w: usize) -> bool {
        w < self.connected_order
    }

    pub fn index_of(&self, x: &IntMatrix) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn root_permutation(&self, w: usize) -> &[usize] {
        &self.root_perms[w]
    }

    /// Conjugate `g w g⁻¹` of an element by an outside automorphism
    /// normalizing the group.
    pub fn conjugate_by(&self, g: &WeylElement, g_inv: &WeylElement, w: usize) -> Option<usize> {
        self.index_of(&g.x.mul(&self.elements[w].x).mul(&g_inv.x))
    }
}
