//! Vertex bicolorings, Eulerian degree, colour counts and the parity of face
//! numbers of odd-dimensional cubical spheres.

mod chain_ops;

pub use chain_ops::{ChainOperators, IdentityReport};

use serde::Serialize;
use thiserror::Error;

use crate::derivative::DerivativeError;
use crate::mod2::{betti_numbers, cellular_boundary, BitVec, Mod2Error};
use crate::poset::{CubicalComplex, ElemId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParityError {
    /// Edges of an odd 1-cycle: the all-ones edge cochain is not a coboundary.
    #[error("no bicoloring: odd cycle through {} edges", .0.len())]
    Obstruction(Vec<ElemId>),
    #[error("vertex links have different Euler characteristics at {0} and {1}")]
    NotEulerian(ElemId, ElemId),
    #[error("complex has no vertices")]
    Empty,
    #[error("hypothesis failed: {0}")]
    HypothesisFailure(String),
    #[error("parity identity violated: {0}")]
    TheoremViolation(String),
    #[error(transparent)]
    Derivative(#[from] DerivativeError),
}

/// `black[i]` is the colour of the `i`-th vertex of `vertices`.
#[derive(Clone, Debug, Serialize)]
pub struct Bicoloring {
    pub vertices: Vec<ElemId>,
    pub black: Vec<bool>,
}

impl Bicoloring {
    pub fn black_count(&self) -> usize {
        self.black.iter().filter(|&&b| b).count()
    }

    pub fn white_count(&self) -> usize {
        self.black.len() - self.black_count()
    }

    pub fn is_black(&self, v: ElemId) -> Option<bool> {
        self.vertices.binary_search(&v).ok().map(|i| self.black[i])
    }

    /// Every edge has one endpoint of each colour.
    pub fn is_valid(&self, k: &CubicalComplex) -> bool {
        k.poset().elements_of_rank(1).into_iter().all(|e| {
            let ends = k.poset().lower_covers(e);
            ends.len() == 2
                && self
                    .is_black(ends[0])
                    .zip(self.is_black(ends[1]))
                    .is_some_and(|(a, b)| a != b)
        })
    }
}

/// Solves `δc = 1` for the vertex cochain `c`; on failure returns an odd
/// cycle (a 1-cycle pairing to 1 with the all-ones cochain).
pub fn bicolor(k: &CubicalComplex) -> Result<Bicoloring, ParityError> {
    let vertices = k.poset().elements_of_rank(0);
    let edges = k.poset().elements_of_rank(1);
    if vertices.is_empty() {
        return Err(ParityError::Empty);
    }
    let delta = cellular_boundary(k.poset(), 1).transpose();
    match delta.solve(&BitVec::ones(edges.len())) {
        Ok(c) => Ok(Bicoloring {
            black: (0..vertices.len()).map(|i| c.get(i)).collect(),
            vertices,
        }),
        Err(Mod2Error::NoSolution { certificate }) => Err(ParityError::Obstruction(
            certificate.ones_iter().map(|i| edges[i]).collect(),
        )),
        Err(e) => unreachable!("coboundary dimensions are consistent: {e}"),
    }
}

/// `Σ_{y > v} (-1)^(rank y - 1)`: the Euler characteristic of the link of `v`.
pub fn vertex_link_euler(k: &CubicalComplex, v: ElemId) -> i64 {
    k.order()
        .filter(v)
        .iter()
        .filter(|&&y| y != v)
        .map(|&y| if k.rank(y) % 2 == 1 { 1 } else { -1 })
        .sum()
}

/// The common Euler characteristic of all vertex links.
pub fn eulerian_degree(k: &CubicalComplex) -> Result<i64, ParityError> {
    let vertices = k.poset().elements_of_rank(0);
    let first = *vertices.first().ok_or(ParityError::Empty)?;
    let n = vertex_link_euler(k, first);
    for &v in &vertices[1..] {
        if vertex_link_euler(k, v) != n {
            return Err(ParityError::NotEulerian(first, v));
        }
    }
    Ok(n)
}

#[derive(Clone, Debug, Serialize)]
pub struct ColorCountReport {
    pub eulerian_degree: i64,
    pub black: usize,
    pub white: usize,
    /// Entry `i` counts pairs (black vertex, rank-`i` face containing it).
    pub black_incidences: Vec<u64>,
    /// `n f_b = f_{b,1} - f_{b,2} + ...`
    pub identity_holds: bool,
    pub balanced: bool,
    /// `balanced` is only forced when the Eulerian degree is nonzero.
    pub pass: bool,
}

pub fn color_count_check(k: &CubicalComplex) -> Result<ColorCountReport, ParityError> {
    let coloring = bicolor(k)?;
    let n = eulerian_degree(k)?;
    let dim = k.dim().unwrap_or(0);
    let mut black_incidences = vec![0u64; dim + 1];
    for (i, &v) in coloring.vertices.iter().enumerate() {
        if coloring.black[i] {
            for &y in k.order().filter(v) {
                black_incidences[k.rank(y)] += 1;
            }
        }
    }
    let black = coloring.black_count();
    let white = coloring.white_count();
    let alternating: i64 = black_incidences
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| if i % 2 == 1 { c as i64 } else { -(c as i64) })
        .sum();
    let identity_holds = n * black as i64 == alternating;
    let balanced = black == white;
    let pass = identity_holds && (n == 0 || balanced);
    Ok(ColorCountReport {
        eulerian_degree: n,
        black,
        white,
        black_incidences,
        identity_holds,
        balanced,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Thm52Report {
    pub check: &'static str,
    pub dim: usize,
    pub f: Vec<u64>,
    /// For odd `d`, `f_1 + f_3 + ... + f_{d-2}` mod 2; for even `d`,
    /// `Σ i f_i - d f_d` mod 2.
    pub parity_sum: u64,
    /// `d f_d ≡ Σ i f_i (mod 2)`.
    pub general_identity: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identities: Option<IdentityReport>,
}

/// Checks the hypotheses (every face link has even Euler characteristic and
/// the complex is a mod-2 homology sphere in the middle degrees), then the
/// parity conclusions. A failing conclusion on a qualifying complex is
/// reported as [`ParityError::TheoremViolation`].
pub fn theorem52_check(k: &CubicalComplex) -> Result<Thm52Report, ParityError> {
    let dim = k.dim().ok_or(ParityError::Empty)?;
    for x in 0..k.len() {
        let chi = k
            .link(x)
            .map_err(DerivativeError::from)?
            .euler_characteristic();
        if chi % 2 != 0 {
            return Err(ParityError::HypothesisFailure(format!(
                "link of face {x} has Euler characteristic {chi}"
            )));
        }
    }
    let betti = betti_numbers(k.poset());
    for (i, &b) in betti.iter().enumerate() {
        if i > 0 && i < dim && b != 0 {
            return Err(ParityError::HypothesisFailure(format!(
                "mod-2 homology in degree {i} has rank {b}"
            )));
        }
    }
    let f = k.f_vector();
    let weighted: u64 = f
        .iter()
        .enumerate()
        .map(|(i, &c)| (i as u64 % 2) * (c % 2))
        .sum::<u64>()
        % 2;
    let top = (dim as u64 % 2) * (f[dim] % 2);
    let general_identity = weighted == top;
    let parity_sum = if dim % 2 == 1 {
        f.iter()
            .enumerate()
            .filter(|&(i, _)| i % 2 == 1 && i + 2 <= dim)
            .map(|(_, &c)| c)
            .sum::<u64>()
            % 2
    } else {
        (weighted + top) % 2
    };
    let pass = parity_sum == 0 && general_identity;
    if !pass {
        return Err(ParityError::TheoremViolation(format!(
            "f = {f:?}, parity sum {parity_sum}"
        )));
    }
    Ok(Thm52Report {
        check: "thm52",
        dim,
        f,
        parity_sum,
        general_identity,
        pass,
        identities: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{catalogue, cube_boundary_signed};

    #[test]
    fn cube4_bicoloring_matches_coordinate_parity() {
        let z = cube_boundary_signed(4);
        let c = bicolor(&z.complex).unwrap();
        assert!(c.is_valid(&z.complex));
        assert_eq!((c.black_count(), c.white_count()), (8, 8));
        // vertices with the same number of minus signs mod 2 share a colour
        let parity = |v: ElemId| z.covectors[v].iter().filter(|&&s| s < 0).count() % 2;
        let v0 = c.vertices[0];
        for &v in &c.vertices {
            assert_eq!(c.is_black(v) == c.is_black(v0), parity(v) == parity(v0));
        }
    }

    #[test]
    fn eulerian_degrees() {
        assert_eq!(eulerian_degree(&catalogue("cube3").unwrap()), Ok(0));
        assert_eq!(eulerian_degree(&catalogue("cube4").unwrap()), Ok(2));
        assert_eq!(eulerian_degree(&catalogue("8gon").unwrap()), Ok(2));
    }

    #[test]
    fn projective_plane_has_odd_cycle() {
        let rp2 = catalogue("rp(3,3)").unwrap();
        match bicolor(&rp2) {
            Err(ParityError::Obstruction(cycle)) => assert_eq!(cycle.len() % 2, 1),
            other => panic!("expected an obstruction, got {other:?}"),
        }
        assert_eq!(betti_numbers(rp2.poset()), vec![1, 1, 1]);
    }

    #[test]
    fn colour_counts() {
        let r = color_count_check(&catalogue("cube6").unwrap()).unwrap();
        assert_eq!((r.black, r.white), (32, 32));
        assert!(r.pass);
        let r = color_count_check(&catalogue("6gon").unwrap()).unwrap();
        assert_eq!((r.black, r.white, r.eulerian_degree), (3, 3, 2));
    }

    #[test]
    fn odd_sphere_parity() {
        let r = theorem52_check(&catalogue("cube4").unwrap()).unwrap();
        assert_eq!(r.f[1], 32);
        assert!(r.pass);
        let r = theorem52_check(&catalogue("zono(3,4)").unwrap()).unwrap();
        assert_eq!(r.parity_sum, 0);
        assert!(matches!(
            theorem52_check(&catalogue("4gon*4gon").unwrap()),
            Err(ParityError::HypothesisFailure(_))
        ));
    }
}
