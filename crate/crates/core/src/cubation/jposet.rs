use std::collections::HashMap;

use serde::Serialize;

use super::simplicial::SimplicialComplex;
use crate::poset::{ElemId, OrderIndex, RankedPoset};

/// An element `(t, C_1, C)` of the blow-up poset: `C` is a nonempty flag of
/// faces of `t` and `C_1` a nonempty subset of `C`, stored as a bit mask over
/// the positions of `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct JElem {
    pub t: usize,
    pub chain: usize,
    pub c1: u32,
}

/// `(t, C_1, C) <= (t', C_1', C')` iff `t <= t'` and `C_1 ⊆ C_1' ⊆ C' ⊆ C`.
/// The rank of `(t, C_1, C)` is `dim t + |C_1| - |C|`.
#[derive(Clone, Debug)]
pub struct JPoset {
    pub poset: RankedPoset,
    pub elements: Vec<JElem>,
    /// Flags of the face poset of `T`, indexed by `JElem::chain`.
    pub chains: Vec<Vec<usize>>,
}

impl JPoset {
    pub fn build(t: &SimplicialComplex) -> Self {
        let chains: Vec<Vec<usize>> = t
            .order()
            .all_flags()
            .into_iter()
            .flatten()
            .map(|f| f.0)
            .collect();
        let chain_index: HashMap<&[usize], usize> = chains
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_slice(), i))
            .collect();
        let mut elements = Vec::new();
        for (ci, c) in chains.iter().enumerate() {
            let top = *c.last().expect("flags are nonempty");
            for &x in t.order().filter(top) {
                for c1 in 1u32..(1 << c.len()) {
                    elements.push(JElem {
                        t: x,
                        chain: ci,
                        c1,
                    });
                }
            }
        }
        let rank = |e: &JElem| t.dim_of(e.t) + e.c1.count_ones() as usize - chains[e.chain].len();
        elements.sort_by_key(|e| (rank(e), *e));
        let index: HashMap<JElem, usize> =
            elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut covers = Vec::new();
        for (i, e) in elements.iter().enumerate() {
            for &up in t.face_poset().upper_covers(e.t) {
                covers.push((i, index[&JElem { t: up, ..*e }]));
            }
            let c = &chains[e.chain];
            for pos in (0..c.len()).filter(|&p| e.c1 >> p & 1 == 0) {
                covers.push((
                    i,
                    index[&JElem {
                        c1: e.c1 | 1 << pos,
                        ..*e
                    }],
                ));
                let mut shorter = c.clone();
                shorter.remove(pos);
                let low = e.c1 & ((1 << pos) - 1);
                let high = (e.c1 >> (pos + 1)) << pos;
                covers.push((
                    i,
                    index[&JElem {
                        t: e.t,
                        chain: chain_index[shorter.as_slice()],
                        c1: low | high,
                    }],
                ));
            }
        }
        let ranks = elements.iter().map(rank).collect();
        let poset = RankedPoset::new(ranks, covers)
            .expect("every generating relation raises the rank by one");
        Self {
            poset,
            elements,
            chains,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Largest face in the flag of `x`.
    pub fn max_chain(&self, x: ElemId) -> usize {
        *self.chains[self.elements[x].chain]
            .last()
            .expect("flags are nonempty")
    }

    /// Euler characteristic of the order complex, via `g(x) = 1 - Σ_{y<x} g(y)`
    /// and `χ = Σ g`.
    pub fn order_complex_euler(&self) -> i64 {
        euler_of_order_complex(&self.poset)
    }

    /// The down-closed subposet lying over the faces of `t`.
    pub fn fiber(&self, tc: &SimplicialComplex, t: usize) -> RankedPoset {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&x| tc.le(self.elements[x].t, t))
            .collect();
        induced(&self.poset, &keep)
    }
}

pub(crate) fn euler_of_order_complex(p: &RankedPoset) -> i64 {
    let order = OrderIndex::new(p);
    let mut g = vec![0i64; p.len()];
    for x in p.rank_order() {
        g[x] = 1 - order
            .ideal(x)
            .iter()
            .filter(|&&y| y != x)
            .map(|&y| g[y])
            .sum::<i64>();
    }
    g.iter().sum()
}

/// Subposet on `keep` (ascending), which must be down-closed so that covers
/// restrict.
fn induced(p: &RankedPoset, keep: &[usize]) -> RankedPoset {
    let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let ranks = keep.iter().map(|&x| p.rank(x)).collect();
    let covers = keep
        .iter()
        .flat_map(|&x| p.lower_covers(x).iter().map(move |&y| (y, x)))
        .filter_map(|(y, x)| Some((*pos.get(&y)?, pos[&x])))
        .collect::<Vec<_>>();
    RankedPoset::new(ranks, covers).expect("ranks are inherited")
}
