//! f-polynomials, the zonotopal f-vector family and integer-lattice analysis of
//! the affine span of that family.

mod fpoly;
mod normal_form;

pub use fpoly::{cube_boundary_f, zonotope_f, FPolynomial};
pub use normal_form::{hermite_normal_form, smith_normal_form, Hermite, IntMatrix, Smith};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice spanned by {count} vectors changes when one more is added")]
    NotStabilized { count: usize },
    #[error("need at least one vector")]
    NoVectors,
    #[error("vectors have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("f-vector of {0} violates the 3-sphere congruences")]
    Violation(String),
    #[error("could not build {0}: {1}")]
    Build(String, String),
}

/// `base + L` where `L` is the integer row span of `generators`, kept in
/// Hermite normal form without zero rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLattice {
    base: Vec<BigInt>,
    generators: IntMatrix,
}

impl AffineLattice {
    /// Smallest affine lattice containing every vector.
    pub fn affine_span(vectors: &[Vec<BigInt>]) -> Result<Self, LatticeError> {
        let base = vectors.first().ok_or(LatticeError::NoVectors)?.clone();
        let n = base.len();
        let mut diffs = Vec::with_capacity(vectors.len() - 1);
        for v in &vectors[1..] {
            if v.len() != n {
                return Err(LatticeError::LengthMismatch(n, v.len()));
            }
            diffs.push(v.iter().zip(&base).map(|(a, b)| a - b).collect());
        }
        Ok(Self::new(base, IntMatrix::from_rows(diffs, n)))
    }

    pub fn new(base: Vec<BigInt>, generators: IntMatrix) -> Self {
        let generators = hermite_normal_form(&generators).basis();
        Self { base, generators }
    }

    pub fn base(&self) -> &[BigInt] {
        &self.base
    }

    /// Hermite basis of the difference lattice.
    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    /// Same difference lattice (bases compared in Hermite form) and the bases
    /// differ by a lattice vector.
    pub fn same_lattice(&self, other: &AffineLattice) -> bool {
        if self.generators != other.generators || self.base.len() != other.base.len() {
            return false;
        }
        let delta: Vec<BigInt> = self
            .base
            .iter()
            .zip(&other.base)
            .map(|(a, b)| a - b)
            .collect();
        self.contains_difference(&delta)
    }

    /// Whether `v` lies in the difference lattice.
    pub fn contains_difference(&self, v: &[BigInt]) -> bool {
        let mut rest = v.to_vec();
        let mut row = 0;
        for c in 0..v.len() {
            if row < self.generators.rows() && !self.generators[(row, c)].is_zero() {
                let p = &self.generators[(row, c)];
                if !rest[c].is_multiple_of(p) {
                    return false;
                }
                let q = &rest[c] / p;
                for j in 0..rest.len() {
                    let s = &self.generators[(row, j)] * &q;
                    rest[j] -= s;
                }
                row += 1;
            } else if !rest[c].is_zero() {
                return false;
            }
        }
        rest.iter().all(Zero::is_zero)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        v.len() == self.base.len() && {
            let delta: Vec<BigInt> = v.iter().zip(&self.base).map(|(a, b)| a - b).collect();
            self.contains_difference(&delta)
        }
    }

    /// The lattice of all integer points in the rational span of the difference
    /// lattice, with the same base point.
    pub fn saturation(&self) -> AffineLattice {
        let s = smith_normal_form(&self.generators);
        let r = s.rank();
        AffineLattice::new(self.base.clone(), s.v_inv.top_rows(r))
    }

    /// Invariant factors of the difference lattice inside its saturation.
    pub fn smith_invariants(&self) -> Vec<BigInt> {
        smith_normal_form(&self.generators).invariants
    }
}

/// Affine lattice spanned by `F(d, 0), ..., F(d, count-1)`, checked to be
/// unchanged when `F(d, count)` is added.
pub fn span_e(d: usize, count: usize) -> Result<AffineLattice, LatticeError> {
    let len = d + 1;
    let vecs = |k: usize| -> Vec<Vec<BigInt>> {
        (0..k)
            .map(|n| {
                let p = zonotope_f(d, n);
                (0..len).map(|i| p.coeff(i)).collect()
            })
            .collect()
    };
    if count == 0 {
        return Err(LatticeError::NoVectors);
    }
    let lattice = AffineLattice::affine_span(&vecs(count))?;
    let bigger = AffineLattice::affine_span(&vecs(count + 1))?;
    if !lattice.same_lattice(&bigger) {
        return Err(LatticeError::NotStabilized { count });
    }
    Ok(lattice)
}

/// Expected rank of the zonotopal span in dimension `d`.
pub fn expected_rank(d: usize) -> usize {
    d.div_ceil(2)
}

/// `Σ coefficients_i x_i ≡ constant (mod modulus)`; modulus 0 means an exact
/// linear equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularEquation {
    #[serde(serialize_with = "crate::json::serialize_bigints")]
    pub coefficients: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::serialize_bigint")]
    pub constant: BigInt,
    #[serde(serialize_with = "crate::json::serialize_bigint")]
    pub modulus: BigInt,
}

impl ModularEquation {
    pub fn evaluate(&self, v: &[BigInt]) -> BigInt {
        let s: BigInt = self.coefficients.iter().zip(v).map(|(a, b)| a * b).sum();
        reduce(&s, &self.modulus)
    }

    pub fn holds_for(&self, v: &[BigInt]) -> bool {
        self.evaluate(v) == self.constant
    }
}

fn reduce(x: &BigInt, m: &BigInt) -> BigInt {
    if m.is_zero() {
        x.clone()
    } else {
        x.mod_floor(m)
    }
}

/// A generating set of the modular equations satisfied by every input vector.
///
/// With `U D V` the Smith form of the difference matrix, the columns of `V`
/// give coordinates on the cokernel: a column beyond the rank yields an exact
/// equation, a column with invariant factor `m > 1` an equation modulo `m`.
/// Exact equations are reported in Hermite form; modular ones have their
/// coefficients reduced into `[0, m)`.
pub fn mine_modular_equations(
    vectors: &[Vec<BigInt>],
) -> Result<Vec<ModularEquation>, LatticeError> {
    let lattice = AffineLattice::affine_span(vectors)?;
    let base = lattice.base().to_vec();
    let n = base.len();
    let s = smith_normal_form(lattice.generators());
    let r = s.rank();
    let mut out = Vec::new();
    for (j, m) in s.invariants.iter().enumerate() {
        if m.is_one() {
            continue;
        }
        let coefficients: Vec<BigInt> = s.v.column(j).iter().map(|c| c.mod_floor(m)).collect();
        let constant = reduce(&dot(&coefficients, &base), m);
        out.push(ModularEquation {
            coefficients,
            constant,
            modulus: m.clone(),
        });
    }
    let exact: Vec<Vec<BigInt>> = (r..n).map(|j| s.v.column(j)).collect();
    if !exact.is_empty() {
        let h = hermite_normal_form(&IntMatrix::from_rows(exact, n)).basis();
        for coefficients in h.row_vecs() {
            let constant = dot(&coefficients, &base);
            out.push(ModularEquation {
                coefficients,
                constant,
                modulus: BigInt::zero(),
            });
        }
    }
    Ok(out)
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Congruences `f_0 ≡ f_1 ≡ f_2 + f_3 ≡ 0 (mod 2)` for a cubical 3-sphere.
pub fn facet_parity_d3(f: &[BigInt]) -> bool {
    let two = BigInt::from(2);
    let get = |i: usize| f.get(i).cloned().unwrap_or_default();
    f.len() <= 4
        && get(0).is_multiple_of(&two)
        && get(1).is_multiple_of(&two)
        && (get(2) + get(3)).is_multiple_of(&two)
}

#[derive(Clone, Debug, Serialize)]
pub struct FacetParityReport {
    pub checked: Vec<(String, FPolynomial)>,
}

/// Checks the 3-sphere congruences on every catalogue 3-sphere (the 4-cube
/// boundary and zonotopal 3-spheres with up to seven zones).
pub fn verify_facet_parity_d3() -> Result<FacetParityReport, LatticeError> {
    let mut checked = Vec::new();
    for name in crate::builders::catalogue_three_spheres() {
        let k = crate::builders::catalogue(&name)
            .map_err(|e| LatticeError::Build(name.clone(), e.to_string()))?;
        let f = k.f_polynomial();
        if !facet_parity_d3(f.coeffs()) {
            return Err(LatticeError::Violation(name));
        }
        checked.push((name, f));
    }
    Ok(FacetParityReport { checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn span_small_dimensions() {
        let l0 = span_e(0, 3).unwrap();
        assert_eq!(l0.rank(), 0);
        assert_eq!(l0.base(), &big(&[2])[..]);
        let l1 = span_e(1, 3).unwrap();
        assert_eq!(l1.generators(), &IntMatrix::from_i64_rows(&[vec![2, 2]]));
        let l2 = span_e(2, 3).unwrap();
        assert_eq!(l2.generators(), &IntMatrix::from_i64_rows(&[vec![2, 4, 2]]));
    }

    #[test]
    fn too_few_generators_is_reported() {
        assert_eq!(span_e(3, 1), Err(LatticeError::NotStabilized { count: 1 }));
    }

    #[test]
    fn saturation_of_even_row() {
        let l = AffineLattice::new(big(&[0, 0, 0]), IntMatrix::from_i64_rows(&[vec![2, 4, 2]]));
        let v = l.saturation();
        assert_eq!(v.generators(), &IntMatrix::from_i64_rows(&[vec![1, 2, 1]]));
        assert_eq!(l.smith_invariants(), big(&[2]));
        let z2 = AffineLattice::new(big(&[0, 0]), IntMatrix::identity(2));
        assert_eq!(z2.saturation(), z2);
        assert_eq!(z2.smith_invariants(), big(&[1, 1]));
    }

    #[test]
    fn polygon_equations() {
        let eqs = mine_modular_equations(&[big(&[4, 4]), big(&[6, 6]), big(&[8, 8])]).unwrap();
        let two = BigInt::from(2);
        assert!(eqs.iter().any(|e| e.modulus == two));
        assert!(eqs.iter().any(|e| e.modulus.is_zero()
            && e.coefficients == big(&[1, -1])
            && e.constant.is_zero()));
        for e in &eqs {
            for v in [big(&[4, 4]), big(&[6, 6]), big(&[8, 8])] {
                assert!(e.holds_for(&v));
            }
        }
        assert!(!eqs.iter().all(|e| e.holds_for(&big(&[5, 5]))));
    }

    #[test]
    fn single_vector_pins_every_coordinate() {
        let eqs = mine_modular_equations(&[big(&[3, 7])]).unwrap();
        assert_eq!(eqs.len(), 2);
        assert!(eqs.iter().all(|e| e.modulus.is_zero()));
        assert_eq!(eqs[0].coefficients, big(&[1, 0]));
        assert_eq!(eqs[0].constant, BigInt::from(3));
    }

    #[test]
    fn cube_three_sphere_parity() {
        assert!(facet_parity_d3(&big(&[16, 32, 24, 8])));
        assert!(facet_parity_d3(&big(&[30, 70, 60, 20])));
        assert!(!facet_parity_d3(&big(&[15, 32, 24, 8])));
    }

    proptest! {
        #[test]
        fn evaluation_kills_multiples_of_one_plus_t(c in prop::collection::vec(-1000i64..1000, 0..8)) {
            let p = FPolynomial::from_i64(&c);
            prop_assert!(p.mul_one_plus_t().eval_at_minus_one().is_zero());
        }

        #[test]
        fn mined_equations_hold(rows in prop::collection::vec(prop::collection::vec(-30i64..30, 3), 1..5)) {
            let vs: Vec<Vec<BigInt>> = rows.iter().map(|r| big(r)).collect();
            for e in mine_modular_equations(&vs).unwrap() {
                for v in &vs {
                    prop_assert!(e.holds_for(v));
                }
            }
        }
    }
}
