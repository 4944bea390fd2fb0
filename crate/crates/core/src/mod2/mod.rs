//! Linear algebra over GF(2): bit-packed vectors and matrices, set-valued
//! chains, boundary matrices of cubical and order complexes, and homology.

mod homology;
mod sparse;

pub use homology::{
    betti_numbers, cellular_boundary, cellular_cells, flag_boundary, order_complex_betti,
    reduced_is_trivial, OrderComplex,
};
pub use sparse::SparseMatrix;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Mod2Error {
    /// `certificate` is a functional `y` with `yᵀM = 0` and `yᵀb = 1`.
    #[error("no solution")]
    NoSolution { certificate: BitVec },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Fixed-length bit vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in idx {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        if b {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Dense row-major GF(2) matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Entries listed as `(row, col)`; repeated entries cancel.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c) in entries {
            m.data[r].flip(c);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        self.data[r].set(c, b);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones_iter() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec, Mod2Error> {
        if x.len() != self.cols {
            return Err(Mod2Error::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        Ok(BitVec::from_indices(
            self.rows,
            (0..self.rows).filter(|&r| self.data[r].dot(x)),
        ))
    }

    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix, Mod2Error> {
        if self.cols != rhs.rows {
            return Err(Mod2Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in self.data[r].ones_iter() {
                out.data[r].xor_assign(&rhs.data[k]);
            }
        }
        Ok(out)
    }

    /// Row echelon form of a copy; returns pivot columns and, for each
    /// resulting row, the combination of original rows that produced it.
    fn eliminate(&self, track: bool) -> (Vec<BitVec>, Vec<BitVec>, Vec<usize>) {
        let mut rows = self.data.clone();
        let mut combos: Vec<BitVec> = if track {
            (0..self.rows)
                .map(|i| BitVec::from_indices(self.rows, [i]))
                .collect()
        } else {
            Vec::new()
        };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(p, r);
            if track {
                combos.swap(p, r);
            }
            for i in 0..self.rows {
                if i != r && rows[i].get(c) {
                    let (src, dst) = split_pair(&mut rows, r, i);
                    dst.xor_assign(src);
                    if track {
                        let (src, dst) = split_pair(&mut combos, r, i);
                        dst.xor_assign(src);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (rows, combos, pivots)
    }

    pub fn rank(&self) -> usize {
        self.eliminate(false).2.len()
    }

    /// Some `x` with `M x = target`, or a certificate that none exists.
    pub fn solve(&self, target: &BitVec) -> Result<BitVec, Mod2Error> {
        if target.len() != self.rows {
            return Err(Mod2Error::DimensionMismatch {
                expected: self.rows,
                got: target.len(),
            });
        }
        let (rows, combos, pivots) = self.eliminate(true);
        let mut x = BitVec::zeros(self.cols);
        for (i, row) in rows.iter().enumerate() {
            let rhs = combos[i].dot(target);
            if i < pivots.len() {
                if rhs {
                    x.set(pivots[i], true);
                }
            } else if rhs {
                debug_assert!(row.is_zero());
                return Err(Mod2Error::NoSolution {
                    certificate: combos[i].clone(),
                });
            }
        }
        Ok(x)
    }

    /// Basis of `{x : M x = 0}`.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let (rows, _, pivots) = self.eliminate(false);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = BitVec::zeros(self.cols);
                x.set(f, true);
                for (i, &p) in pivots.iter().enumerate() {
                    if rows[i].get(f) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }

    /// Nonzero entries as sorted `"row col"` lines.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones_iter() {
                let _ = writeln!(s, "{r} {c}");
            }
        }
        s
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let mut cols: Vec<Vec<usize>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones_iter() {
                cols[c].push(r);
            }
        }
        SparseMatrix::from_columns(self.rows, cols)
    }
}

fn split_pair<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (a, b) = v.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

/// A GF(2) chain: a finite set of basis elements, added by symmetric difference.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mod2Chain<T: Ord = crate::poset::Flag> {
    cells: BTreeSet<T>,
}

impl<T: Ord> Default for Mod2Chain<T> {
    fn default() -> Self {
        Self {
            cells: BTreeSet::new(),
        }
    }
}

impl<T: Ord + Clone> Mod2Chain<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.cells.contains(x)
    }

    /// Adds one basis element (removing it if already present).
    pub fn toggle(&mut self, x: T) {
        if !self.cells.remove(&x) {
            self.cells.insert(x);
        }
    }

    pub fn add_assign(&mut self, other: &Mod2Chain<T>) {
        for x in &other.cells {
            self.toggle(x.clone());
        }
    }

    pub fn add(&self, other: &Mod2Chain<T>) -> Mod2Chain<T> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.cells.iter()
    }

    pub fn intersection(&self, other: &Mod2Chain<T>) -> Mod2Chain<T> {
        Mod2Chain {
            cells: self.cells.intersection(&other.cells).cloned().collect(),
        }
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<U: Ord + Clone>(
        &self,
        mut f: impl FnMut(&T) -> Mod2Chain<U>,
    ) -> Mod2Chain<U> {
        let mut out = Mod2Chain::zero();
        for x in &self.cells {
            out.add_assign(&f(x));
        }
        out
    }
}

impl<T: Ord + Clone> FromIterator<T> for Mod2Chain<T> {
    /// Collects with GF(2) semantics: an element listed twice cancels.
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut c = Mod2Chain::zero();
        for x in iter {
            c.toggle(x);
        }
        c
    }
}

impl<T: Ord> IntoIterator for Mod2Chain<T> {
    type Item = T;
    type IntoIter = std::collections::btree_set::IntoIter<T>;

    fn into_iter(self) -> Self::IntoIter {
        self.cells.into_iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle_incidence(n: usize) -> BitMatrix {
        // rows: edges i -- i+1, cols: vertices
        BitMatrix::from_entries(n, n, (0..n).flat_map(|i| [(i, i), (i, (i + 1) % n)]))
    }

    #[test]
    fn odd_cycle_has_no_two_colouring() {
        let m = cycle_incidence(5);
        let err = m.solve(&BitVec::ones(5)).unwrap_err();
        let Mod2Error::NoSolution { certificate } = err else {
            panic!()
        };
        assert_eq!(certificate.count_ones(), 5);
        assert!(m.transpose().mul_vec(&certificate).unwrap().is_zero());
        assert!(certificate.dot(&BitVec::ones(5)));
    }

    #[test]
    fn even_cycle_colours() {
        let m = cycle_incidence(6);
        let x = m.solve(&BitVec::ones(6)).unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), BitVec::ones(6));
        assert_eq!(x.count_ones(), 3);
    }

    #[test]
    fn dump_is_sorted() {
        let m = BitMatrix::from_entries(2, 3, [(1, 2), (0, 1), (1, 0)]);
        assert_eq!(m.dump(), "0 1\n1 0\n1 2\n");
    }

    #[test]
    fn chains_cancel() {
        let c: Mod2Chain<usize> = [1, 2, 2, 3].into_iter().collect();
        assert_eq!(c.iter().copied().collect::<Vec<_>>(), vec![1, 3]);
        assert!(c.add(&c).is_zero());
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in prop::collection::vec((0usize..7, 0usize..9), 0..40)) {
            let m = BitMatrix::from_entries(7, 9, entries);
            let kernel = m.kernel_basis();
            prop_assert_eq!(m.rank() + kernel.len(), 9);
            for k in &kernel {
                prop_assert!(m.mul_vec(k).unwrap().is_zero());
            }
            prop_assert_eq!(m.to_sparse().rank(), m.rank());
            prop_assert_eq!(m.transpose().rank(), m.rank());
        }

        #[test]
        fn solve_is_exact_or_certified(
            entries in prop::collection::vec((0usize..6, 0usize..5), 0..25),
            target in prop::collection::vec(any::<bool>(), 6),
        ) {
            let m = BitMatrix::from_entries(6, 5, entries);
            let b = BitVec::from_indices(6, (0..6).filter(|&i| target[i]));
            match m.solve(&b) {
                Ok(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), b),
                Err(Mod2Error::NoSolution { certificate }) => {
                    prop_assert!(m.transpose().mul_vec(&certificate).unwrap().is_zero());
                    prop_assert!(certificate.dot(&b));
                }
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}
