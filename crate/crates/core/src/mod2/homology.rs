use std::collections::HashMap;

use super::{BitMatrix, Mod2Chain, SparseMatrix};
use crate::poset::{Flag, OrderIndex, RankedPoset};

/// Elements of each rank, in index order; the cellular basis of `C_i`.
pub fn cellular_cells(p: &RankedPoset) -> Vec<Vec<usize>> {
    let top = p.max_rank().map_or(0, |r| r + 1);
    let mut cells = vec![Vec::new(); top];
    for x in 0..p.len() {
        cells[p.rank(x)].push(x);
    }
    cells
}

fn cellular_columns(p: &RankedPoset, cells: &[Vec<usize>], i: usize) -> (usize, Vec<Vec<usize>>) {
    if i == 0 || i >= cells.len() {
        let rows = if i == 0 {
            0
        } else {
            cells.get(i - 1).map_or(0, Vec::len)
        };
        let cols = cells.get(i).map_or(vec![], |c| vec![Vec::new(); c.len()]);
        return (rows, cols);
    }
    let pos: HashMap<usize, usize> = cells[i - 1]
        .iter()
        .enumerate()
        .map(|(k, &x)| (x, k))
        .collect();
    let cols = cells[i]
        .iter()
        .map(|&x| p.lower_covers(x).iter().map(|y| pos[y]).collect())
        .collect();
    (cells[i - 1].len(), cols)
}

/// Cellular boundary `C_i → C_{i-1}` with mod-2 incidence given by covers.
/// Rows index rank `i-1` elements, columns rank `i` elements, both in index order.
pub fn cellular_boundary(p: &RankedPoset, i: usize) -> BitMatrix {
    let cells = cellular_cells(p);
    let (rows, cols) = cellular_columns(p, &cells, i);
    BitMatrix::from_entries(
        rows,
        cols.len(),
        cols.iter()
            .enumerate()
            .flat_map(|(c, rs)| rs.iter().map(move |&r| (r, c))),
    )
}

/// Mod-2 Betti numbers of the cell complex whose face poset is `p`.
///
/// Valid when every closed cell is a ball with mod-2 incidence 1 along each
/// cover, as for cubical complexes and their antipodal quotients.
pub fn betti_numbers(p: &RankedPoset) -> Vec<usize> {
    let cells = cellular_cells(p);
    let ranks: Vec<usize> = (0..=cells.len())
        .map(|i| {
            let (rows, cols) = cellular_columns(p, &cells, i);
            SparseMatrix::from_columns(rows, cols).rank()
        })
        .collect();
    (0..cells.len())
        .map(|i| cells[i].len() - ranks[i] - ranks[i + 1])
        .collect()
}

/// The order complex: chains of a poset as simplices, indexed by dimension in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct OrderComplex {
    flags: Vec<Vec<Flag>>,
    index: Vec<HashMap<Flag, usize>>,
}

impl OrderComplex {
    pub fn new(p: &RankedPoset) -> Self {
        Self::from_order(&OrderIndex::new(p))
    }

    pub fn from_order(order: &OrderIndex) -> Self {
        let flags = order.all_flags();
        let index = flags
            .iter()
            .map(|fs| {
                fs.iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, f)| (f, i))
                    .collect()
            })
            .collect();
        Self { flags, index }
    }

    /// Flags with `dim + 1` elements.
    pub fn flags(&self, dim: usize) -> &[Flag] {
        self.flags.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self) -> Option<usize> {
        self.flags.len().checked_sub(1)
    }

    pub fn index_of(&self, f: &Flag) -> Option<usize> {
        self.index.get(f.dim())?.get(f).copied()
    }

    fn columns(&self, i: usize) -> (usize, Vec<Vec<usize>>) {
        let rows = if i == 0 { 0 } else { self.flags(i - 1).len() };
        let cols = self
            .flags(i)
            .iter()
            .map(|f| {
                if i == 0 {
                    Vec::new()
                } else {
                    (0..f.len())
                        .map(|k| self.index[i - 1][&f.without(k)])
                        .collect()
                }
            })
            .collect();
        (rows, cols)
    }

    /// Simplicial boundary `C_i → C_{i-1}`.
    pub fn boundary(&self, i: usize) -> BitMatrix {
        let (rows, cols) = self.columns(i);
        BitMatrix::from_entries(
            rows,
            cols.len(),
            cols.iter()
                .enumerate()
                .flat_map(|(c, rs)| rs.iter().map(move |&r| (r, c))),
        )
    }

    pub fn coboundary(&self, i: usize) -> BitMatrix {
        self.boundary(i + 1).transpose()
    }

    pub fn betti(&self) -> Vec<usize> {
        let n = self.flags.len();
        let ranks: Vec<usize> = (0..=n)
            .map(|i| {
                let (rows, cols) = self.columns(i);
                SparseMatrix::from_columns(rows, cols).rank()
            })
            .collect();
        (0..n)
            .map(|i| self.flags[i].len() - ranks[i] - ranks[i + 1])
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.flags
            .iter()
            .enumerate()
            .map(|(i, fs)| {
                if i % 2 == 0 {
                    fs.len() as i64
                } else {
                    -(fs.len() as i64)
                }
            })
            .sum()
    }
}

pub fn order_complex_betti(p: &RankedPoset) -> Vec<usize> {
    OrderComplex::new(p).betti()
}

/// Nonempty and mod-2 acyclic: Betti numbers `1, 0, 0, ...`.
pub fn reduced_is_trivial(betti: &[usize]) -> bool {
    betti.first() == Some(&1) && betti[1..].iter().all(|&b| b == 0)
}

/// Simplicial boundary of a chain of flags. One-element flags have zero
/// boundary (no augmentation).
pub fn flag_boundary(chain: &Mod2Chain<Flag>) -> Mod2Chain<Flag> {
    chain.map_linear(|f| {
        if f.len() < 2 {
            Mod2Chain::zero()
        } else {
            (0..f.len()).map(|k| f.without(k)).collect()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge() -> RankedPoset {
        RankedPoset::new(vec![0, 0, 1], vec![(0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn order_complex_of_an_edge() {
        let oc = OrderComplex::new(&edge());
        assert_eq!(oc.flags(0).len(), 3);
        assert_eq!(oc.flags(1).len(), 2);
        let d = oc.boundary(1);
        // column of (0 < 2) hits {0} and {2}
        let col = oc.index_of(&Flag(vec![0, 2])).unwrap();
        let rows: Vec<usize> = d.column(col).ones_iter().collect();
        assert_eq!(
            rows,
            vec![
                oc.index_of(&Flag(vec![0])).unwrap(),
                oc.index_of(&Flag(vec![2])).unwrap()
            ]
        );
        assert_eq!(oc.betti(), vec![1, 0]);
    }

    #[test]
    fn flag_boundary_of_edge_flag() {
        let c: Mod2Chain<Flag> = [Flag(vec![0, 2])].into_iter().collect();
        let b = flag_boundary(&c);
        assert_eq!(
            b.iter().cloned().collect::<Vec<_>>(),
            vec![Flag(vec![0]), Flag(vec![2])]
        );
        assert!(flag_boundary(&b).is_zero());
    }

    #[test]
    fn cellular_edge_boundary() {
        let d = cellular_boundary(&edge(), 1);
        assert_eq!(d.dump(), "0 0\n1 0\n");
        assert_eq!(betti_numbers(&edge()), vec![1, 0]);
    }
}
