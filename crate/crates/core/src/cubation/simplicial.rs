use std::collections::HashMap;

use crate::mod2::betti_numbers;
use crate::poset::{OrderIndex, RankedPoset};

/// Simplicial complex given by its facets, closed under taking faces.
///
/// Vertices are dense indices into `labels`; simplices are sorted vertex lists
/// numbered in `(dimension, vertices)` order, which is also the element order
/// of [`SimplicialComplex::face_poset`].
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    simplices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    poset: RankedPoset,
    order: OrderIndex,
}

impl SimplicialComplex {
    /// Closure of `facets`. Vertex labels are the strings in `labels`.
    pub fn from_facets(labels: Vec<String>, facets: &[Vec<usize>]) -> Self {
        let mut all: Vec<Vec<usize>> = Vec::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            let n = f.len();
            for mask in 1u32..(1 << n) {
                all.push(
                    (0..n)
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| f[i])
                        .collect(),
                );
            }
        }
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all.dedup();
        let index: HashMap<Vec<usize>, usize> = all
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let ranks = all.iter().map(|s| s.len() - 1).collect();
        let mut covers = Vec::new();
        for (i, s) in all.iter().enumerate() {
            if s.len() > 1 {
                for k in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(k);
                    covers.push((index[&face], i));
                }
            }
        }
        let poset =
            RankedPoset::new(ranks, covers).expect("faces of a simplex differ in dimension by one");
        let order = OrderIndex::new(&poset);
        Self {
            labels,
            simplices: all,
            index,
            poset,
            order,
        }
    }

    /// Vertex labels are `0..n` as strings.
    pub fn from_integer_facets(facets: &[Vec<usize>]) -> Self {
        let n = facets.iter().flatten().copied().max().map_or(0, |m| m + 1);
        Self::from_facets((0..n).map(|i| i.to_string()).collect(), facets)
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn simplex(&self, s: usize) -> &[usize] {
        &self.simplices[s]
    }

    pub fn dim_of(&self, s: usize) -> usize {
        self.simplices[s].len() - 1
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.len() - 1)
    }

    pub fn find(&self, vertices: &[usize]) -> Option<usize> {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        self.index.get(&v).copied()
    }

    pub fn face_poset(&self) -> &RankedPoset {
        &self.poset
    }

    pub fn order(&self) -> &OrderIndex {
        &self.order
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.order.le(a, b)
    }

    pub fn simplices_of_dim(&self, k: usize) -> Vec<usize> {
        self.poset.elements_of_rank(k)
    }

    pub fn f_vector(&self) -> Vec<u64> {
        self.poset.rank_counts()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.poset.euler_characteristic()
    }

    pub fn betti(&self) -> Vec<usize> {
        betti_numbers(&self.poset)
    }

    /// Every simplex of dimension `k` lies in exactly `n` simplices of
    /// dimension `k + 1`; returns the first offender.
    pub fn first_with_coface_count_not(&self, k: usize, n: usize) -> Option<usize> {
        self.simplices_of_dim(k)
            .into_iter()
            .find(|&s| self.poset.upper_covers(s).len() != n)
    }
}
