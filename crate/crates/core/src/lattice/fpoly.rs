use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Integer polynomial `Σ f_i t^i`, stored without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FPolynomial {
    coeffs: Vec<BigInt>,
}

impl FPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![BigInt::from(c)])
    }

    /// `1 + t`.
    pub fn one_plus_t() -> Self {
        Self::from_i64(&[1, 1])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_counts(counts: &[u64]) -> Self {
        Self::new(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul_one_plus_t(&self) -> Self {
        self * &Self::one_plus_t()
    }

    /// Value at `t = -1`.
    pub fn eval_at_minus_one(&self) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
            .sum()
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Coefficients as `i64`, padded with zeros to at least `len` entries.
    pub fn to_i64_vec(&self, len: usize) -> Option<Vec<i64>> {
        let mut out: Vec<i64> = self
            .coeffs
            .iter()
            .map(|c| c.to_i64())
            .collect::<Option<_>>()?;
        if out.len() < len {
            out.resize(len, 0);
        }
        Some(out)
    }

    pub fn to_u64_vec(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(|c| c.to_u64()).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        Self::new(self.coeffs.iter().map(|c| c * &k).collect())
    }
}

impl Add for &FPolynomial {
    type Output = FPolynomial;

    fn add(self, rhs: &FPolynomial) -> FPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        FPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &FPolynomial {
    type Output = FPolynomial;

    fn sub(self, rhs: &FPolynomial) -> FPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        FPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &FPolynomial {
    type Output = FPolynomial;

    fn mul(self, rhs: &FPolynomial) -> FPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return FPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        FPolynomial::new(out)
    }
}

impl fmt::Display for FPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for FPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::json::serialize_bigints(&self.coeffs, s)
    }
}

/// `(2+t)^(d+1) - t^(d+1)`, the f-polynomial of the boundary of a `(d+1)`-cube.
pub fn cube_boundary_f(d: usize) -> FPolynomial {
    let two_plus_t = FPolynomial::from_i64(&[2, 1]);
    let mut p = FPolynomial::constant(1);
    for _ in 0..=d {
        p = &p * &two_plus_t;
    }
    let mut top = vec![BigInt::zero(); d + 2];
    top[d + 1] = BigInt::one();
    &p - &FPolynomial::new(top)
}

/// The zonotopal family: f-polynomial of the boundary of a cubical
/// `(d+1)`-zonotope with `n + d + 1` zones.
///
/// `F(d, 0)` is the cube boundary, `F(0, n) = 2` and
/// `F(d, n) = F(d, n-1) + (1+t) F(d-1, n)`.
pub fn zonotope_f(d: usize, n: usize) -> FPolynomial {
    let mut memo = HashMap::new();
    zonotope_f_memo(d, n, &mut memo)
}

fn zonotope_f_memo(
    d: usize,
    n: usize,
    memo: &mut HashMap<(usize, usize), FPolynomial>,
) -> FPolynomial {
    if let Some(p) = memo.get(&(d, n)) {
        return p.clone();
    }
    let p = if n == 0 {
        cube_boundary_f(d)
    } else if d == 0 {
        FPolynomial::constant(2)
    } else {
        let prev = zonotope_f_memo(d, n - 1, memo);
        let lower = zonotope_f_memo(d - 1, n, memo);
        &prev + &lower.mul_one_plus_t()
    };
    memo.insert((d, n), p.clone());
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: &[i64]) -> FPolynomial {
        FPolynomial::from_i64(v)
    }

    #[test]
    fn cube_boundaries() {
        assert_eq!(cube_boundary_f(1), f(&[4, 4]));
        assert_eq!(cube_boundary_f(2), f(&[8, 12, 6]));
        assert_eq!(cube_boundary_f(3), f(&[16, 32, 24, 8]));
        assert_eq!(cube_boundary_f(5), f(&[64, 192, 240, 160, 60, 12]));
    }

    #[test]
    fn zonotope_recursion_values() {
        assert_eq!(zonotope_f(0, 5), f(&[2]));
        assert_eq!(zonotope_f(1, 1), f(&[6, 6]));
        assert_eq!(zonotope_f(2, 1), f(&[14, 24, 12]));
        assert_eq!(zonotope_f(2, 2), f(&[22, 40, 20]));
        assert_eq!(zonotope_f(3, 1), f(&[30, 70, 60, 20]));
        assert_eq!(zonotope_f(3, 3), f(&[84, 224, 210, 70]));
    }

    #[test]
    fn derivative_and_evaluation() {
        assert_eq!(f(&[16, 32, 24, 8]).derivative(), f(&[32, 48, 24]));
        assert_eq!(f(&[7]).derivative(), FPolynomial::zero());
        for d in 0..8 {
            let expected = if d % 2 == 0 { 2 } else { 0 };
            assert_eq!(
                cube_boundary_f(d).eval_at_minus_one(),
                BigInt::from(expected)
            );
        }
    }

    #[test]
    fn product_rule() {
        let a = f(&[4, 4]);
        let b = f(&[2, 1]);
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        assert_eq!(lhs, rhs);
    }
}
