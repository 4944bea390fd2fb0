//! The paired-facet complex `NK` and the derivative complex `DK`.
//!
//! An element of `NK` is an ordered pair `(b, c)` of opposite facets of a face
//! `a` of `K` (facets with no common vertex). Pairs are ordered componentwise
//! and have rank `rank(a) - 1`. Swapping the pair is a free involution; its
//! orbits form `DK`, labelled by the sorted pair. Both complexes map to `K` by
//! sending a pair to the face it spans.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::FPolynomial;
use crate::poset::{
    intersect_sorted, is_isomorphism, validate_cubical, validate_cubical_poset, CubicalComplex,
    ElemId, PosetError, RankedPoset,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivativeError {
    #[error("isomorphism check failed: {0}")]
    IsomorphismFailure(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Two opposite facets of `join`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PairedFace {
    pub b: ElemId,
    pub c: ElemId,
    pub join: ElemId,
}

impl PairedFace {
    pub fn swapped(self) -> Self {
        PairedFace {
            b: self.c,
            c: self.b,
            join: self.join,
        }
    }

    /// The representative with `b < c`.
    pub fn unordered(self) -> Self {
        if self.b < self.c {
            self
        } else {
            self.swapped()
        }
    }
}

#[derive(Clone, Debug)]
pub struct DerivativeComplex {
    pub nk: CubicalComplex,
    pub nk_labels: Vec<PairedFace>,
    pub dk: CubicalComplex,
    /// Orbit labels with `b < c`.
    pub dk_labels: Vec<PairedFace>,
    /// `NK → DK`, exactly two-to-one.
    pub cover_map: Vec<ElemId>,
    /// The swap involution on `NK`.
    pub epsilon: Vec<ElemId>,
}

impl DerivativeComplex {
    /// Builds `NK` and `DK` for a validated complex.
    pub fn build(k: &CubicalComplex) -> Result<Self, DerivativeError> {
        let p = k.poset();
        let mut labels = Vec::new();
        for a in 0..p.len() {
            let facets = p.lower_covers(a);
            for &b in facets {
                for &c in facets {
                    if b != c && are_opposite(k, b, c) {
                        labels.push(PairedFace { b, c, join: a });
                    }
                }
            }
        }
        labels.sort_by_key(|x| (p.rank(x.b), x.b, x.c, x.join));
        let nk_index: HashMap<PairedFace, ElemId> =
            labels.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let nk_ranks = labels.iter().map(|x| p.rank(x.b)).collect();
        let mut covers = Vec::new();
        for (i, x) in labels.iter().enumerate() {
            for &b2 in p.upper_covers(x.b) {
                for &c2 in p.upper_covers(x.c) {
                    for &a2 in p.upper_covers(x.join) {
                        if let Some(&j) = nk_index.get(&PairedFace {
                            b: b2,
                            c: c2,
                            join: a2,
                        }) {
                            covers.push((i, j));
                        }
                    }
                }
            }
        }
        let nk_poset = RankedPoset::new(nk_ranks, covers)?;
        let epsilon: Vec<ElemId> = labels.iter().map(|x| nk_index[&x.swapped()]).collect();

        let mut dk_labels: Vec<PairedFace> = labels.iter().filter(|x| x.b < x.c).copied().collect();
        dk_labels.sort_by_key(|x| (p.rank(x.b), x.b, x.c, x.join));
        let dk_index: HashMap<PairedFace, ElemId> =
            dk_labels.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let cover_map: Vec<ElemId> = labels.iter().map(|x| dk_index[&x.unordered()]).collect();
        let dk_ranks = dk_labels.iter().map(|x| p.rank(x.b)).collect();
        let dk_covers: Vec<_> = nk_poset
            .covers()
            .into_iter()
            .map(|(a, b)| (cover_map[a], cover_map[b]))
            .collect();
        let dk_poset = RankedPoset::new(dk_ranks, dk_covers)?;

        let validate = |q| {
            if k.is_lattice() {
                validate_cubical(q)
            } else {
                validate_cubical_poset(q)
            }
        };
        Ok(Self {
            nk: validate(nk_poset)?,
            nk_labels: labels,
            dk: validate(dk_poset)?,
            dk_labels,
            cover_map,
            epsilon,
        })
    }

    /// `j` on `NK`.
    pub fn join_nk(&self, x: ElemId) -> ElemId {
        self.nk_labels[x].join
    }

    /// `j` on `DK`.
    pub fn join_dk(&self, x: ElemId) -> ElemId {
        self.dk_labels[x].join
    }

    /// `f(DK)` is the derivative of `f(K)` and `f(NK) = 2 f(DK)`.
    pub fn check_derivative(&self, k: &CubicalComplex) -> bool {
        let f_dk = self.dk.f_polynomial();
        f_dk == k.f_polynomial().derivative() && self.nk.f_polynomial() == f_dk.scale(2)
    }

    /// The swap is a fixed-point-free involutive automorphism of `NK`, and
    /// the cover map is two-to-one.
    pub fn check_involution(&self) -> bool {
        let n = self.epsilon.len();
        let involutive = (0..n).all(|x| self.epsilon[x] != x && self.epsilon[self.epsilon[x]] == x);
        let mut fibre = vec![0usize; self.dk.len()];
        for &y in &self.cover_map {
            fibre[y] += 1;
        }
        involutive
            && is_isomorphism(self.nk.poset(), self.nk.poset(), &self.epsilon)
            && fibre.iter().all(|&m| m == 2)
    }

    /// For every element `x` of `NK`, `j` restricts to an isomorphism from the
    /// link of `x` onto the link of `j(x)` in `K`.
    pub fn check_links(&self, k: &CubicalComplex) -> Result<(), DerivativeError> {
        for x in 0..self.nk.len() {
            let a = self.join_nk(x);
            let above: Vec<ElemId> = self
                .nk
                .order_filter(x)?
                .iter()
                .copied()
                .filter(|&y| y != x)
                .collect();
            let target: Vec<ElemId> = k
                .order_filter(a)?
                .iter()
                .copied()
                .filter(|&y| y != a)
                .collect();
            let map: Option<Vec<ElemId>> = above
                .iter()
                .map(|&y| target.binary_search(&self.join_nk(y)).ok())
                .collect();
            let (link_x, link_a) = (self.nk.link(x)?, k.link(a)?);
            let ok = map.is_some_and(|m| is_isomorphism(&link_x, &link_a, &m));
            if !ok {
                return Err(DerivativeError::IsomorphismFailure(format!(
                    "link of paired face {x} does not map onto the link of {a}"
                )));
            }
        }
        Ok(())
    }
}

fn are_opposite(k: &CubicalComplex, b: ElemId, c: ElemId) -> bool {
    let vb = k.vertices_of(b);
    let vc = k.vertices_of(c);
    intersect_sorted(&vb, &vc).is_empty()
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivationReport {
    pub f_lhs: FPolynomial,
    pub f_rhs: FPolynomial,
    /// Image of each element of `D(K1 × K2)` in `(DK1 × K2) ⊔ (K1 × DK2)`.
    pub bijection: Vec<ElemId>,
}

/// Verifies `D(K1 × K2) ≅ (DK1 × K2) ⊔ (K1 × DK2)` through the explicit map
/// that splits a pair of opposite facets of `(a1, a2)` according to the factor
/// in which the two facets differ.
pub fn derivation_check(
    k1: &CubicalComplex,
    k2: &CubicalComplex,
) -> Result<DerivationReport, DerivativeError> {
    let n2 = k2.len();
    let prod = k1.product(k2)?;
    let lhs = DerivativeComplex::build(&prod)?;
    let d1 = DerivativeComplex::build(k1)?;
    let d2 = DerivativeComplex::build(k2)?;
    let m2 = d2.dk.len();
    let left = d1.dk.poset().product(k2.poset());
    let right = k1.poset().product(d2.dk.poset());
    let offset = left.len();
    let rhs = left.disjoint_union(&right);
    let idx1: HashMap<PairedFace, ElemId> = d1
        .dk_labels
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, i))
        .collect();
    let idx2: HashMap<PairedFace, ElemId> = d2
        .dk_labels
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, i))
        .collect();
    let split = |e: ElemId| (e / n2, e % n2);
    let fail = |msg: String| DerivativeError::IsomorphismFailure(msg);
    let mut bijection = Vec::with_capacity(lhs.dk.len());
    for (x, lab) in lhs.dk_labels.iter().enumerate() {
        let (b1, b2) = split(lab.b);
        let (c1, c2) = split(lab.c);
        let (a1, a2) = split(lab.join);
        let image = if b2 == c2 && b2 == a2 {
            let pair = PairedFace {
                b: b1,
                c: c1,
                join: a1,
            }
            .unordered();
            idx1.get(&pair).map(|&d| d * n2 + a2)
        } else if b1 == c1 && b1 == a1 {
            let pair = PairedFace {
                b: b2,
                c: c2,
                join: a2,
            }
            .unordered();
            idx2.get(&pair).map(|&d| offset + a1 * m2 + d)
        } else {
            None
        };
        bijection
            .push(image.ok_or_else(|| {
                fail(format!("pair {x} of the product splits in neither factor"))
            })?);
    }
    if !is_isomorphism(lhs.dk.poset(), &rhs, &bijection) {
        let f_l = lhs.dk.f_polynomial();
        let f_r = rhs.f_polynomial();
        return Err(fail(format!(
            "componentwise map is not an isomorphism (f-vectors {f_l} and {f_r})"
        )));
    }
    Ok(DerivationReport {
        f_lhs: lhs.dk.f_polynomial(),
        f_rhs: rhs.f_polynomial(),
        bijection,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StrataReport {
    /// Number of `DK` elements joining to each face of `K`.
    pub multiplicity: Vec<usize>,
    /// Closed-support Euler characteristic of the locus covered exactly `i` times.
    pub chi_c: Vec<i64>,
    /// `(-1)^(d-i) chi_c[i]`, which should equal `f_i(K)`.
    pub counts: Vec<i64>,
    pub matches: bool,
}

/// Multiple-point strata of the immersion `|DK| → |K|`, read off the dual cell
/// structure: the open dual cell of a face `a` has dimension `d - rank(a)` and
/// is covered once for every `DK` element joining to `a`.
pub fn strata_counts(k: &CubicalComplex, d: &DerivativeComplex) -> StrataReport {
    let dim = k.dim().unwrap_or(0);
    let mut multiplicity = vec![0usize; k.len()];
    for x in 0..d.dk.len() {
        multiplicity[d.join_dk(x)] += 1;
    }
    let mut chi_c = vec![0i64; dim + 1];
    for a in 0..k.len() {
        let m = multiplicity[a];
        if m <= dim {
            chi_c[m] += if (dim - k.rank(a)).is_multiple_of(2) {
                1
            } else {
                -1
            };
        }
    }
    let counts: Vec<i64> = chi_c
        .iter()
        .enumerate()
        .map(|(i, &c)| if (dim - i).is_multiple_of(2) { c } else { -c })
        .collect();
    let f = k.f_vector();
    let matches = multiplicity.iter().all(|&m| m <= dim)
        && counts.iter().zip(&f).all(|(&c, &fi)| c == fi as i64);
    StrataReport {
        multiplicity,
        chi_c,
        counts,
        matches,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::catalogue;

    #[test]
    fn square_boundary_derivative() {
        let k = catalogue("4gon").unwrap();
        let d = DerivativeComplex::build(&k).unwrap();
        assert_eq!(d.dk.f_vector(), vec![4]);
        assert!(d.check_derivative(&k));
    }

    #[test]
    fn cube3_derivative_is_three_bands() {
        let k = catalogue("cube3").unwrap();
        let d = DerivativeComplex::build(&k).unwrap();
        assert_eq!(d.dk.f_vector(), vec![12, 12]);
        assert!(d.check_involution());
        // three components: Betti 0 of the derivative complex
        assert_eq!(crate::mod2::betti_numbers(d.dk.poset())[0], 3);
        d.check_links(&k).unwrap();
    }

    #[test]
    fn cube4_derivative() {
        let k = catalogue("cube4").unwrap();
        let d = DerivativeComplex::build(&k).unwrap();
        assert_eq!(d.dk.f_vector(), vec![32, 48, 24]);
        let s = strata_counts(&k, &d);
        assert!(s.matches);
        assert_eq!(s.counts[3], 8);
    }

    #[test]
    fn cube3_strata() {
        let k = catalogue("cube3").unwrap();
        let d = DerivativeComplex::build(&k).unwrap();
        let s = strata_counts(&k, &d);
        assert_eq!(s.counts, vec![8, 12, 6]);
        assert!(s.matches);
    }

    #[test]
    fn derivation_with_a_point_and_an_edge() {
        let sq = catalogue("4gon").unwrap();
        let pt = catalogue("point").unwrap();
        let r = derivation_check(&sq, &pt).unwrap();
        assert_eq!(r.f_lhs, FPolynomial::from_i64(&[4]));
        let e = catalogue("edge").unwrap();
        let r = derivation_check(&sq, &e).unwrap();
        let expected = &(&FPolynomial::from_i64(&[4]) * &FPolynomial::from_i64(&[2, 1]))
            + &FPolynomial::from_i64(&[4, 4]);
        assert_eq!(r.f_rhs, expected);
    }

    #[test]
    fn derivative_of_disjoint_union_adds() {
        let a = catalogue("cube3").unwrap();
        let b = catalogue("6gon").unwrap();
        let u = a.disjoint_union(&b).unwrap();
        let f = DerivativeComplex::build(&u).unwrap().dk.f_polynomial();
        let fa = DerivativeComplex::build(&a).unwrap().dk.f_polynomial();
        let fb = DerivativeComplex::build(&b).unwrap().dk.f_polynomial();
        assert_eq!(f, &fa + &fb);
    }
}
