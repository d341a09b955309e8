//! Finite Weyl groups as Coxeter systems: shortlex enumeration, Bruhat
//! order, Kazhdan–Lusztig polynomials and cells.

mod cells;
mod kl;

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::rootdata::build::{build_datum, Isogeny};
use crate::rootdata::{CartanType, FactorType, RootDatum, SimpleType, WeylElement};

pub use cells::{cell_action, cells, CellPartition};
pub use kl::{kl_table, KLTable, Poly};

/// A Weyl group with its simple reflections, enumerated in shortlex order so
/// that `words[w]` is the lexicographically least reduced word of `w`.
#[derive(Clone, Debug)]
pub struct CoxeterGroup {
    generators: Vec<WeylElement>,
    elements: Vec<WeylElement>,
    words: Vec<Vec<usize>>,
    index: HashMap<IntMatrix, usize>,
    /// `left[s][w] = s·w`
    left: Vec<Vec<usize>>,
    /// `right[s][w] = w·s`
    right: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    cartan: Vec<Vec<i64>>,
}

/// Group orders of the irreducible types.
pub fn type_order(t: SimpleType) -> usize {
    match t {
        SimpleType::A1 => 2,
        SimpleType::A2 => 6,
        SimpleType::B2 | SimpleType::C2 => 8,
        SimpleType::G2 => 12,
    }
}

/// Enumerates `W` of a datum from its simple reflections.
pub fn enumerate_weyl(d: &RootDatum, bound: usize) -> Result<CoxeterGroup> {
    let generators: Vec<WeylElement> = d.simple_indices().iter().map(|&i| d.reflection(i)).collect();
    let g = CoxeterGroup::from_generators(d.rank(), generators, d.cartan_matrix(), bound)?;
    // length = number of positive roots made negative
    for (w, elt) in g.elements.iter().enumerate() {
        let perm = d
            .root_permutation(elt.x(), elt.y())
            .ok_or_else(|| Error::invariant("Weyl element does not permute roots"))?;
        let inversions = d.positive_roots().filter(|&a| !d.is_positive(perm[a])).count();
        if inversions != g.length(w) {
            return Err(Error::invariant(format!("length of {:?} disagrees with its inversion count", g.words[w])));
        }
    }
    let expected = expected_order(&g.cartan)?;
    if g.order() != expected {
        return Err(Error::invariant(format!("|W| = {} but the type predicts {expected}", g.order())));
    }
    Ok(g)
}

fn expected_order(cartan: &[Vec<i64>]) -> Result<usize> {
    let n = cartan.len();
    let mut seen = vec![false; n];
    let mut order = 1;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort();
        let sub: Vec<Vec<i64>> = comp.iter().map(|&i| comp.iter().map(|&j| cartan[i][j]).collect()).collect();
        order *= type_order(SimpleType::classify(&sub)?.0);
    }
    Ok(order)
}

/// The Weyl group of an irreducible type in its standard numbering.
pub fn standard(t: SimpleType) -> CoxeterGroup {
    let d = build_datum(&CartanType { factors: vec![FactorType::Simple(t)] }, &Isogeny::Adjoint)
        .expect("standard types build");
    enumerate_weyl(&d, 1000).expect("standard types enumerate")
}

impl CoxeterGroup {
    fn from_generators(
        rank: usize,
        generators: Vec<WeylElement>,
        cartan: Vec<Vec<i64>>,
        bound: usize,
    ) -> Result<CoxeterGroup> {
        let mut elements = vec![WeylElement::identity(rank)];
        let mut words = vec![Vec::new()];
        let mut index = HashMap::new();
        index.insert(elements[0].x().clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        // breadth first with generators in increasing order: first discovery
        // happens along the shortlex-least word
        while let Some(w) = queue.pop_front() {
            for (s, g) in generators.iter().enumerate() {
                let next = elements[w].mul(g);
                if !index.contains_key(next.x()) {
                    if elements.len() >= bound {
                        return Err(Error::OrderBound { bound });
                    }
                    let mut word = words[w].clone();
                    word.push(s);
                    index.insert(next.x().clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                    words.push(word);
                }
            }
        }
        let lookup = |m: IntMatrix| -> Result<usize> {
            index.get(&m).copied().ok_or_else(|| Error::invariant("Coxeter group is not closed"))
        };
        let mut left = Vec::new();
        let mut right = Vec::new();
        for g in &generators {
            left.push(elements.iter().map(|e| lookup(g.x().mul(e.x()))).collect::<Result<Vec<_>>>()?);
            right.push(elements.iter().map(|e| lookup(e.x().mul(g.x()))).collect::<Result<Vec<_>>>()?);
        }
        let mut inverse = vec![0; elements.len()];
        for (w, word) in words.iter().enumerate() {
            let mut v = 0;
            for &s in word.iter().rev() {
                v = right[s][v];
            }
            inverse[w] = v;
        }
        Ok(CoxeterGroup { generators, elements, words, index, left, right, inverse, cartan })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.words[w].len()
    }

    pub fn index_of(&self, x: &IntMatrix) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// `s·w`
    pub fn left_mul(&self, s: usize, w: usize) -> usize {
        self.left[s][w]
    }

    /// `w·s`
    pub fn right_mul(&self, w: usize, s: usize) -> usize {
        self.right[s][w]
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.words[b].iter().fold(a, |acc, &s| self.right[s][acc])
    }

    /// Evaluates a word in the generators.
    pub fn eval(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &s| self.right[s][acc])
    }

    pub fn longest(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn is_left_descent(&self, s: usize, w: usize) -> bool {
        self.length(self.left[s][w]) < self.length(w)
    }

    pub fn is_right_descent(&self, w: usize, s: usize) -> bool {
        self.length(self.right[s][w]) < self.length(w)
    }

    pub fn left_descents(&self, w: usize) -> u64 {
        (0..self.rank()).filter(|&s| self.is_left_descent(s, w)).fold(0, |m, s| m | (1 << s))
    }

    pub fn right_descents(&self, w: usize) -> u64 {
        (0..self.rank()).filter(|&s| self.is_right_descent(w, s)).fold(0, |m, s| m | (1 << s))
    }

    /// `C[i][j] = ⟨α_i, α_j^∨⟩` for the generating reflections.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Bruhat order as a dense table `le[w][x] = (x ≤ w)`, computed from
    /// the lifting property: for `ws < w`, `x ≤ w` iff `min(x, xs) ≤ ws`.
    pub fn bruhat(&self) -> Vec<Vec<bool>> {
        let n = self.order();
        let mut le = vec![vec![false; n]; n];
        le[0][0] = true;
        // elements are sorted by length
        for w in 1..n {
            let s = *self.words[w].last().expect("nonidentity has a word");
            let ws = self.right[s][w];
            for x in 0..n {
                let xs = self.right[s][x];
                let m = if self.length(xs) < self.length(x) { xs } else { x };
                le[w][x] = le[ws][m];
            }
        }
        le
    }

    /// Relabels the generators; used to check that cells do not depend on
    /// the enumeration order.
    pub fn with_generator_order(&self, order: &[usize]) -> Result<CoxeterGroup> {
        let gens = order.iter().map(|&i| self.generators[i].clone()).collect();
        let cartan = order.iter().map(|&i| order.iter().map(|&j| self.cartan[i][j]).collect()).collect();
        CoxeterGroup::from_generators(self.elements[0].x().rows(), gens, cartan, self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_words() {
        for t in SimpleType::ALL {
            let g = standard(t);
            assert_eq!(g.order(), type_order(t));
            assert_eq!(g.word(0), &[] as &[usize]);
            for w in 0..g.order() {
                assert_eq!(g.eval(g.word(w)), w);
            }
        }
        let a2 = standard(SimpleType::A2);
        assert_eq!(a2.word(a2.longest()), &[0, 1, 0]);
    }

    #[test]
    fn bruhat_basics() {
        let g = standard(SimpleType::A2);
        let le = g.bruhat();
        for w in 0..g.order() {
            assert!(le[w][0]);
            assert!(le[g.longest()][w]);
        }
        let s = g.eval(&[0]);
        let t = g.eval(&[1]);
        assert!(!le[s][t]);
    }
}
