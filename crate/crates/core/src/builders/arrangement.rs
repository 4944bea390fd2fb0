//! Central hyperplane arrangements with exact rational normals and their
//! covectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::{BuildError, SignVector};
use crate::json::{parse_bigint, JsonError};
use crate::lattice::IntMatrix;

/// `n` normal vectors in `R^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    normals: Vec<Vec<BigRational>>,
}

impl Arrangement {
    pub fn new(dim: usize, normals: Vec<Vec<BigRational>>) -> Result<Self, BuildError> {
        for v in &normals {
            if v.len() != dim {
                return Err(BuildError::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
        }
        Ok(Self { dim, normals })
    }

    pub fn from_integers(dim: usize, normals: &[Vec<i64>]) -> Result<Self, BuildError> {
        let normals = normals
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&x| BigRational::from_integer(BigInt::from(x)))
                    .collect()
            })
            .collect();
        Self::new(dim, normals)
    }

    /// `n` normals on the moment curve `(1, k, k^2, ...)`, `k = 1..=n`. Every
    /// `dim` of them form a Vandermonde matrix, so the arrangement is generic.
    pub fn moment_curve(dim: usize, n: usize) -> Self {
        let normals = (1..=n as i64)
            .map(|k| {
                (0..dim as u32)
                    .map(|e| BigRational::from_integer(BigInt::from(k).pow(e)))
                    .collect()
            })
            .collect();
        Self { dim, normals }
    }

    /// A generic arrangement with small random integer normals.
    pub fn random_generic(dim: usize, n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let normals: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..dim).map(|_| rng.gen_range(-6..=6)).collect())
                .collect();
            let a = Self::from_integers(dim, &normals).expect("rows have length dim");
            if a.check_generic().is_ok() {
                return a;
            }
        }
    }

    /// `{"dim": D, "normals": [[e, ...], ...]}`; each entry an integer, a
    /// `[num, den]` pair or a `"num/den"` string.
    pub fn from_json(v: &Value) -> Result<Self, JsonError> {
        let bad = |m: &str| JsonError::Schema(m.to_string());
        let dim = v
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("arrangement needs an integer \"dim\""))? as usize;
        let rows = v
            .get("normals")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("arrangement needs \"normals\""))?;
        let mut normals = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| bad("each normal must be an array"))?;
            normals.push(
                row.iter()
                    .map(parse_rational)
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        Self::new(dim, normals).map_err(|e| JsonError::Schema(e.to_string()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[Vec<BigRational>] {
        &self.normals
    }

    /// Normals scaled by positive integers to clear denominators.
    fn integer_normals(&self) -> Vec<Vec<BigInt>> {
        self.normals
            .iter()
            .map(|v| {
                let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                v.iter()
                    .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
                    .collect()
            })
            .collect()
    }

    /// Every `dim`-subset of normals is linearly independent (or, with fewer
    /// than `dim` normals, the whole set is). Reports the first failing subset.
    pub fn check_generic(&self) -> Result<(), BuildError> {
        let ints = self.integer_normals();
        let k = self.dim.min(self.len());
        for subset in subsets(self.len(), k) {
            let rows: Vec<Vec<BigInt>> = subset.iter().map(|&i| ints[i].clone()).collect();
            if rank_of(&rows, self.dim) < k {
                return Err(BuildError::NotGeneric(subset));
            }
        }
        Ok(())
    }

    /// Sign vectors of the lines cut out by `dim - 1` hyperplanes, both signs.
    pub fn cocircuits(&self) -> Vec<SignVector> {
        let ints = self.integer_normals();
        let n = self.len();
        let mut out = Vec::new();
        if self.dim == 0 {
            return out;
        }
        for subset in subsets(n, self.dim - 1) {
            let rows: Vec<Vec<BigInt>> = subset.iter().map(|&i| ints[i].clone()).collect();
            let c = cross_product(&rows, self.dim);
            if c.iter().all(Zero::is_zero) {
                continue;
            }
            let x: SignVector = ints
                .iter()
                .map(|a| {
                    let s: BigInt = a.iter().zip(&c).map(|(p, q)| p * q).sum();
                    sign(&s)
                })
                .collect();
            out.push(x.iter().map(|s| -s).collect());
            out.push(x);
        }
        out.sort();
        out.dedup();
        out
    }

    /// Every nonzero covector, sorted by number of zeros then lexicographically.
    ///
    /// A sign vector is a covector exactly when the cocircuits conformal to it
    /// cover its support; all `3^n` candidates are tested.
    pub fn covectors(&self) -> Vec<SignVector> {
        let n = self.len();
        let cocircuits = self.cocircuits();
        let mut out = Vec::new();
        let total = 3usize.pow(n as u32);
        for code in 0..total {
            let y = decode(code, n);
            if y.iter().all(|&s| s == 0) {
                continue;
            }
            let mut covered = vec![false; n];
            for x in &cocircuits {
                if x.iter().zip(&y).all(|(&a, &b)| a == 0 || a == b) {
                    for i in 0..n {
                        covered[i] |= x[i] != 0;
                    }
                }
            }
            if (0..n).all(|i| covered[i] == (y[i] != 0)) {
                out.push(y);
            }
        }
        out.sort_by_key(|y| (y.iter().filter(|&&s| s == 0).count(), y.clone()));
        out
    }
}

fn parse_rational(v: &Value) -> Result<BigRational, JsonError> {
    let bad = || JsonError::Schema(format!("{v} is not a rational number"));
    match v {
        Value::Array(pair) if pair.len() == 2 => {
            let num = parse_bigint(&pair[0])?;
            let den = parse_bigint(&pair[1])?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        Value::String(s) if s.contains('/') => {
            let (a, b) = s.split_once('/').ok_or_else(bad)?;
            let num: BigInt = a.trim().parse().map_err(|_| bad())?;
            let den: BigInt = b.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        _ => Ok(BigRational::from_integer(parse_bigint(v)?)),
    }
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Base-3 digits mapped `0 → 0, 1 → +, 2 → -`.
fn decode(mut code: usize, n: usize) -> SignVector {
    let mut y = Vec::with_capacity(n);
    for _ in 0..n {
        y.push(match code % 3 {
            0 => 0,
            1 => 1,
            _ => -1,
        });
        code /= 3;
    }
    y
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn rank_of(rows: &[Vec<BigInt>], cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    crate::lattice::hermite_normal_form(&IntMatrix::from_rows(rows.to_vec(), cols)).rank
}

/// Vector orthogonal to `dim - 1` rows: entry `j` is `(-1)^j` times the minor
/// with column `j` deleted.
fn cross_product(rows: &[Vec<BigInt>], dim: usize) -> Vec<BigInt> {
    (0..dim)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let det = IntMatrix::from_rows(minor, dim - 1).determinant();
            if j % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_lines_in_the_plane() {
        let a = Arrangement::moment_curve(2, 3);
        assert!(a.check_generic().is_ok());
        assert_eq!(a.cocircuits().len(), 6);
        let cov = a.covectors();
        let zeros = |y: &SignVector| y.iter().filter(|&&s| s == 0).count();
        assert_eq!(cov.iter().filter(|y| zeros(y) == 0).count(), 6);
        assert_eq!(cov.iter().filter(|y| zeros(y) == 1).count(), 6);
    }

    #[test]
    fn parallel_normals_are_not_generic() {
        let a = Arrangement::from_integers(2, &[vec![1, 0], vec![0, 1], vec![2, 0]]).unwrap();
        assert_eq!(a.check_generic(), Err(BuildError::NotGeneric(vec![0, 2])));
    }

    #[test]
    fn cross_product_is_orthogonal() {
        let rows = vec![
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)],
            vec![BigInt::from(4), BigInt::from(5), BigInt::from(7)],
        ];
        let c = cross_product(&rows, 3);
        for r in &rows {
            let d: BigInt = r.iter().zip(&c).map(|(a, b)| a * b).sum();
            assert!(d.is_zero());
        }
    }

    #[test]
    fn rational_entries() {
        let v: Value =
            serde_json::from_str(r#"{"dim":2,"normals":[[1,[1,2]],["3/4",-1],[[2,3],5]]}"#)
                .unwrap();
        let a = Arrangement::from_json(&v).unwrap();
        assert_eq!(a.len(), 3);
        assert!(a.check_generic().is_ok());
        assert_eq!(a.covectors().len(), 12);
    }
}
