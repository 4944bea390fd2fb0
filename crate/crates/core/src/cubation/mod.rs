//! Cubical spheres from normal-crossing immersions.
//!
//! Given a simplicial immersion `y: M → T` of a closed `(d-1)`-manifold into a
//! triangulated `d`-sphere, the blow-up poset `J` has elements `(t, C_1, C)`
//! with `C` a flag of faces of `t` and `∅ ≠ C_1 ⊆ C`. Identifying elements
//! with the same `(C_1, C)` whose simplices lie in the same sector around the
//! largest face of `C` gives a poset `K` whose dual is a cubical `d`-sphere.
//! Its face numbers satisfy `f_i ≡ Σ_{mult t = i} (-1)^dim t (mod 2)`.

mod fixtures;
mod immersion;
mod jposet;
mod quotient;
mod simplicial;

pub use fixtures::{fixture, fixture_names};
pub use immersion::{Immersion, Sector, Side};
pub use jposet::{JElem, JPoset};
pub use quotient::{KClass, Quotient};
pub use simplicial::SimplicialComplex;

use serde::Serialize;
use thiserror::Error;

use crate::json::JsonError;
use crate::mod2::{betti_numbers, order_complex_betti};
use crate::poset::CubicalComplex;

#[derive(Debug, Error)]
pub enum CubationError {
    #[error("target is not a triangulated sphere: {0}")]
    NotSphere(String),
    #[error("source is not a closed pseudomanifold of codimension one: {0}")]
    NotClosedManifold(String),
    #[error("vertex map is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("not a normal crossing: {0}")]
    NotNormalCrossing(String),
    #[error("sheet through {simplex} cuts its star into {components} pieces")]
    SheetNotSeparating { simplex: String, components: usize },
    #[error("quotient is not cubical: {0}")]
    QuotientNotCubical(String),
    #[error("f_{0} has the wrong parity")]
    CongruenceViolation(usize),
    #[error("rank counts of the classes ending at {0} have the wrong parities")]
    UtParityViolation(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Json(#[from] JsonError),
}

/// The blow-up, its quotient and the dual cubical complex.
#[derive(Clone, Debug)]
pub struct Cubation {
    pub immersion: Immersion,
    pub j: JPoset,
    pub quotient: Quotient,
}

#[derive(Clone, Debug, Serialize)]
pub struct CubationReport {
    pub check: &'static str,
    pub dim: usize,
    pub f: Vec<u64>,
    /// `Σ_{mult t = i} (-1)^dim t`: compactly supported Euler characteristic of
    /// the `i`-fold point stratum.
    pub strata_chi: Vec<i64>,
    pub congruence: bool,
    pub euler: i64,
    pub betti: Vec<usize>,
    pub sphere: bool,
    pub blowup_size: usize,
    pub blowup_euler: i64,
    /// Fibers over closed simplices are acyclic; only computed for `d <= 2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fibers_acyclic: Option<bool>,
    pub class_parities: bool,
    pub pass: bool,
}

impl Cubation {
    pub fn build(immersion: Immersion) -> Result<Self, CubationError> {
        let j = JPoset::build(immersion.target());
        let quotient = Quotient::build(&immersion, &j)?;
        Ok(Self {
            immersion,
            j,
            quotient,
        })
    }

    pub fn dim(&self) -> usize {
        self.immersion.dim()
    }

    pub fn complex(&self) -> &CubicalComplex {
        &self.quotient.k_op
    }

    pub fn f_vector(&self) -> Vec<u64> {
        self.quotient.k_op.f_vector()
    }

    pub fn strata_chi(&self) -> Vec<i64> {
        strata_chi(&self.immersion)
    }

    /// For each `t`, the classes whose flag ends at `t`, counted by rank in
    /// `K`, must be odd exactly in rank `d - mult(t)`.
    pub fn check_class_parities(&self) -> Result<(), CubationError> {
        let d = self.dim();
        let t = self.immersion.target();
        for x in 0..t.len() {
            let mut counts = vec![0usize; d + 1];
            for c in self.quotient.classes_ending_at(&self.j, x) {
                counts[self.quotient.k.rank(c)] += 1;
            }
            let expected = d - self.immersion.multiplicity(x);
            if counts
                .iter()
                .enumerate()
                .any(|(r, &n)| (n % 2 == 1) != (r == expected))
            {
                return Err(CubationError::UtParityViolation(self.immersion.name(x)));
            }
        }
        Ok(())
    }

    /// Checks the mod-2 congruence between face numbers and strata, the class
    /// parity audit, and that the result is a sphere.
    pub fn verify(&self) -> Result<CubationReport, CubationError> {
        let d = self.dim();
        let f = self.f_vector();
        let strata = self.strata_chi();
        if let Some(i) =
            (0..=d).find(|&i| f.get(i).copied().unwrap_or(0) % 2 != strata[i].rem_euclid(2) as u64)
        {
            return Err(CubationError::CongruenceViolation(i));
        }
        self.check_class_parities()?;
        let sphere_chi = if d.is_multiple_of(2) { 2 } else { 0 };
        let euler = self.quotient.k_op.euler_characteristic();
        let betti = betti_numbers(self.quotient.k_op.poset());
        let mut sphere_betti = vec![0; d + 1];
        sphere_betti[0] = 1;
        sphere_betti[d] = 1;
        let sphere = euler == sphere_chi && betti == sphere_betti;
        let blowup_euler = self.j.order_complex_euler();
        let fibers_acyclic = (d <= 2).then(|| {
            let t = self.immersion.target();
            (0..t.len()).all(|x| {
                let b = order_complex_betti(&self.j.fiber(t, x));
                b[0] == 1 && b[1..].iter().all(|&n| n == 0)
            })
        });
        let pass = sphere
            && blowup_euler == sphere_chi
            && strata.iter().sum::<i64>() == sphere_chi
            && fibers_acyclic != Some(false);
        Ok(CubationReport {
            check: "cubation",
            dim: d,
            f,
            strata_chi: strata,
            congruence: true,
            euler,
            betti,
            sphere,
            blowup_size: self.j.len(),
            blowup_euler,
            fibers_acyclic,
            class_parities: true,
            pass,
        })
    }
}

/// `Σ_{mult t = i} (-1)^dim t` for `i = 0..=d`. The entries sum to the Euler
/// characteristic of the sphere.
pub fn strata_chi(imm: &Immersion) -> Vec<i64> {
    let d = imm.dim();
    let t = imm.target();
    let mut out = vec![0i64; d + 1];
    for x in 0..t.len() {
        out[imm.multiplicity(x)] += if t.dim_of(x).is_multiple_of(2) { 1 } else { -1 };
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct TopPointsReport {
    pub check: &'static str,
    pub dim: usize,
    pub top_multiple_points: usize,
    pub euler_source: i64,
    pub pass: bool,
}

/// For odd `d`, the number of `d`-fold points has the parity of `χ(M)`.
pub fn verify_top_multiple_points(imm: &Immersion) -> Result<TopPointsReport, CubationError> {
    let d = imm.dim();
    if d.is_multiple_of(2) {
        return Err(CubationError::Unsupported(format!(
            "the d-fold point parity needs odd d, got {d}"
        )));
    }
    let t = imm.target();
    let top_multiple_points = (0..t.len()).filter(|&x| imm.multiplicity(x) == d).count();
    let euler_source = imm.source().euler_characteristic();
    let pass = top_multiple_points as i64 % 2 == euler_source.rem_euclid(2);
    Ok(TopPointsReport {
        check: "top-multiple-points",
        dim: d,
        top_multiple_points,
        euler_source,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(name: &str) -> (Cubation, CubationReport) {
        let c = Cubation::build(fixture(name).unwrap()).unwrap();
        let r = c.verify().unwrap();
        assert!(r.pass, "{name}: {r:?}");
        (c, r)
    }

    #[test]
    fn empty_immersions() {
        assert_eq!(run("circle").1.f, vec![12, 12]);
        assert_eq!(run("octahedron").1.f, vec![146, 288, 144]);
    }

    #[test]
    fn embedded_equator_gives_even_counts() {
        let (_, r) = run("octahedron-equator");
        assert_eq!(r.strata_chi, vec![2, 0, 0]);
        assert!(r.f.iter().all(|&n| n % 2 == 0), "{:?}", r.f);
    }

    #[test]
    fn figure_eight() {
        let (c, r) = run("figure-eight");
        assert_eq!(r.strata_chi, vec![3, -2, 1]);
        assert_eq!(r.f.iter().map(|n| n % 2).collect::<Vec<_>>(), vec![1, 0, 1]);
        assert!(c.complex().is_lattice());
    }

    #[test]
    fn tangency_is_rejected() {
        assert!(matches!(
            fixture("figure-eight-tangent"),
            Err(CubationError::NotNormalCrossing(_))
        ));
    }

    #[test]
    fn points_on_a_circle() {
        let (c, r) = run("hexagon-points");
        assert_eq!(r.strata_chi, vec![-2, 2]);
        let top = verify_top_multiple_points(&c.immersion).unwrap();
        assert_eq!((top.top_multiple_points, top.pass), (2, true));
    }

    #[test]
    fn equatorial_sphere_in_three_dimensions() {
        let (c, r) = run("cross-polytope-equator");
        assert_eq!(r.strata_chi, vec![-2, 2, 0, 0]);
        assert!(r.fibers_acyclic.is_none());
        let top = verify_top_multiple_points(&c.immersion).unwrap();
        assert_eq!((top.top_multiple_points, top.euler_source), (0, 2));
    }
}
