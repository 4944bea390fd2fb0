//! Hermite and Smith normal forms over the integers with unimodular transforms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged integer matrix");
            data.extend(r);
        }
        Self {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// The first `k` rows.
    pub fn top_rows(&self, k: usize) -> IntMatrix {
        IntMatrix {
            rows: k,
            cols: self.cols,
            data: self.data[..k * self.cols].to_vec(),
        }
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * &rhs[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * &m[(n - 1, n - 1)]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += q * row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * q;
            self[(dst, j)] += v;
        }
    }

    /// `col[dst] += q * col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * q;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let parts: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", parts.join(", "))?;
        }
        Ok(())
    }
}

/// `H = U A` with `H` in row Hermite normal form and `U` unimodular.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Number of nonzero rows of `h`.
    pub rank: usize,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
}

impl Hermite {
    pub fn verify(&self, a: &IntMatrix) -> bool {
        self.u.mul(a) == self.h && self.u.is_unimodular()
    }

    /// The nonzero rows.
    pub fn basis(&self) -> IntMatrix {
        self.h.top_rows(self.rank)
    }
}

/// Row Hermite normal form: pivots positive, entries above a pivot reduced into
/// `[0, pivot)`, zero rows last.
pub fn hermite_normal_form(a: &IntMatrix) -> Hermite {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        loop {
            let best = (r..h.rows())
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&i, &j| h[(i, c)].abs().cmp(&h[(j, c)].abs()).then(i.cmp(&j)));
            let Some(p) = best else { break };
            h.swap_rows(p, r);
            u.swap_rows(p, r);
            let mut done = true;
            for i in r + 1..h.rows() {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row(i, r, &q);
                u.add_row(i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row(i, r, &q);
            u.add_row(i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Hermite {
        h,
        u,
        rank: r,
        pivots,
    }
}

/// `D = U A V` with `D` diagonal, each diagonal entry dividing the next, and
/// `U`, `V` unimodular. `v_inv` is the inverse of `V`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Nonzero diagonal entries, all positive.
    pub invariants: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn verify(&self, a: &IntMatrix) -> bool {
        let n = self.v.rows();
        self.u.mul(a).mul(&self.v) == self.d
            && self.u.is_unimodular()
            && self.v.is_unimodular()
            && self.v.mul(&self.v_inv) == IntMatrix::identity(n)
            && self.is_diagonal_chain()
    }

    fn is_diagonal_chain(&self) -> bool {
        for i in 0..self.d.rows() {
            for j in 0..self.d.cols() {
                if i != j && !self.d[(i, j)].is_zero() {
                    return false;
                }
            }
        }
        self.invariants.iter().all(BigInt::is_positive)
            && self
                .invariants
                .windows(2)
                .all(|w| w[1].is_multiple_of(&w[0]))
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);
    let col_swap =
        |d: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, a: usize, b: usize| {
            d.swap_cols(a, b);
            v.swap_cols(a, b);
            vi.swap_rows(a, b);
        };
    let mut k = 0;
    while k < m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in k..m {
            for j in k..n {
                if d[(i, j)].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(pi, k);
        u.swap_rows(pi, k);
        col_swap(&mut d, &mut v, &mut v_inv, pj, k);
        loop {
            let mut clean = true;
            for i in k + 1..m {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = -d[(i, k)].div_floor(&d[(k, k)]);
                d.add_row(i, k, &q);
                u.add_row(i, k, &q);
                if !d[(i, k)].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..n {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = -d[(k, j)].div_floor(&d[(k, k)]);
                d.add_col(j, k, &q);
                v.add_col(j, k, &q);
                // inverse of the column operation acts on rows of v_inv
                v_inv.add_row(k, j, &(-&q));
                if !d[(k, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // pivot must divide the whole trailing block
                let bad = (k + 1..m)
                    .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(k, k)]));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        d.add_row(k, i, &BigInt::one());
                        u.add_row(k, i, &BigInt::one());
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row k / column k to the pivot
            let mut best = (k, k);
            for i in k + 1..m {
                if !d[(i, k)].is_zero() && d[(i, k)].abs() < d[best].abs() {
                    best = (i, k);
                }
            }
            for j in k + 1..n {
                if !d[(k, j)].is_zero() && d[(k, j)].abs() < d[best].abs() {
                    best = (k, j);
                }
            }
            if best.0 != k {
                d.swap_rows(best.0, k);
                u.swap_rows(best.0, k);
            } else if best.1 != k {
                col_swap(&mut d, &mut v, &mut v_inv, best.1, k);
            }
        }
        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
        k += 1;
    }
    let invariants = (0..m.min(n))
        .map(|i| d[(i, i)].clone())
        .take_while(|x| !x.is_zero())
        .collect();
    Smith {
        d,
        u,
        v,
        v_inv,
        invariants,
    }
}
