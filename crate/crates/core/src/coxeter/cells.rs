//! Left, right and two-sided cells as strongly connected components of the
//! Kazhdan–Lusztig preorder graphs.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::rootdata::WeylElement;

use super::{CoxeterGroup, KLTable};

/// Cell ids are numbered by the smallest (shortlex) element they contain, so
/// `{e}` is always cell 0 and `{w₀}` the last two-sided cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub two_sided: Vec<usize>,
}

impl CellPartition {
    pub fn num_two_sided(&self) -> usize {
        count(&self.two_sided)
    }

    pub fn num_left(&self) -> usize {
        count(&self.left)
    }

    pub fn num_right(&self) -> usize {
        count(&self.right)
    }

    pub fn cell_of(&self, w: usize) -> usize {
        self.two_sided[w]
    }

    /// Members of two-sided cell `c`, ascending.
    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.two_sided.len()).filter(|&w| self.two_sided[w] == c).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        (0..self.num_two_sided()).map(|c| self.members(c).len()).collect()
    }
}

fn count(ids: &[usize]) -> usize {
    ids.iter().max().map_or(0, |m| m + 1)
}

/// Edges `y → x` whenever `μ(x,y) ≠ 0` and the descent set of `x` is not
/// contained in that of `y`; the direction is irrelevant for components.
fn components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut graph = DiGraph::<(), ()>::with_capacity(n, 0);
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for (a, b) in edges {
        graph.add_edge(nodes[a], nodes[b], ());
    }
    let mut comps: Vec<Vec<usize>> =
        tarjan_scc(&graph).into_iter().map(|c| c.into_iter().map(|v| v.index()).collect()).collect();
    for c in &mut comps {
        c.sort();
    }
    comps.sort_by_key(|c| c[0]);
    let mut id = vec![0; n];
    for (k, c) in comps.iter().enumerate() {
        for &w in c {
            id[w] = k;
        }
    }
    id
}

fn preorder_edges(g: &CoxeterGroup, t: &KLTable, descents: &[u64]) -> Vec<(usize, usize)> {
    let n = g.order();
    let mut edges = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y && t.mu(x, y) != 0 && descents[x] & !descents[y] != 0 {
                edges.push((y, x));
            }
        }
    }
    edges
}

pub fn cells(g: &CoxeterGroup, t: &KLTable) -> CellPartition {
    let n = g.order();
    let ldesc: Vec<u64> = (0..n).map(|w| g.left_descents(w)).collect();
    let rdesc: Vec<u64> = (0..n).map(|w| g.right_descents(w)).collect();
    let le = preorder_edges(g, t, &ldesc);
    let re = preorder_edges(g, t, &rdesc);
    let left = components(n, le.iter().copied());
    let right = components(n, re.iter().copied());
    let two_sided = components(n, le.into_iter().chain(re));
    CellPartition { left, right, two_sided }
}

/// Permutation of two-sided cells induced by conjugation with a lattice
/// automorphism `a` normalizing `W`.
pub fn cell_action(g: &CoxeterGroup, p: &CellPartition, a: &WeylElement) -> Result<Vec<usize>> {
    let (a_inv_x, _) = a
        .x()
        .finite_order_inverse(1000)
        .ok_or_else(|| Error::NotAutomorphism(format!("{:?} does not have finite order", a.x())))?;
    let k = p.num_two_sided();
    let mut perm = vec![usize::MAX; k];
    for (w, elt) in g.elements().iter().enumerate() {
        let image = g
            .index_of(&a.x().mul(elt.x()).mul(&a_inv_x))
            .ok_or_else(|| Error::NotAutomorphism(format!("{:?} does not normalize W", a.x())))?;
        let (from, to) = (p.cell_of(w), p.cell_of(image));
        if perm[from] == usize::MAX {
            perm[from] = to;
        } else if perm[from] != to {
            return Err(Error::CellMoved(from));
        }
    }
    let mut hit = vec![false; k];
    for &c in &perm {
        if hit[c] {
            return Err(Error::invariant("cell action is not a permutation"));
        }
        hit[c] = true;
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{kl_table, standard};
    use crate::rootdata::SimpleType;

    #[test]
    fn rank_two_cell_sizes() {
        for (t, sizes) in [
            (SimpleType::A1, vec![1, 1]),
            (SimpleType::A2, vec![1, 4, 1]),
            (SimpleType::B2, vec![1, 6, 1]),
            (SimpleType::G2, vec![1, 10, 1]),
        ] {
            let g = standard(t);
            let c = cells(&g, &kl_table(&g).unwrap());
            assert_eq!(c.sizes(), sizes, "{t}");
            assert_eq!(c.cell_of(g.longest()), c.num_two_sided() - 1);
        }
    }

    #[test]
    fn a2_left_cells() {
        let g = standard(SimpleType::A2);
        let c = cells(&g, &kl_table(&g).unwrap());
        assert_eq!(c.num_left(), 4);
        assert_eq!(c.num_right(), 4);
    }
}
