//! Constructors for cubical complexes: cube boundaries and solid cubes,
//! polygons, zonotope boundaries from generic arrangements, antipodal
//! quotients, products and a named catalogue.

mod arrangement;

pub use arrangement::Arrangement;

use std::collections::HashMap;

use thiserror::Error;

use crate::poset::{
    validate_cubical, validate_cubical_poset, CubicalComplex, PosetError, RankedPoset,
};

/// Entries in `{-1, 0, 1}`.
pub type SignVector = Vec<i8>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("unknown catalogue name {0:?}")]
    UnknownName(String),
    #[error("arrangement is not generic: normals {0:?} are dependent")]
    NotGeneric(Vec<usize>),
    #[error("arrangement has {got} normals, need at least {need}")]
    TooFewNormals { need: usize, got: usize },
    #[error("expected vectors of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("sign vector set is not closed under negation")]
    NotCentrallySymmetric,
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// A complex whose elements are labelled by sign vectors, ordered by zeroing
/// coordinates: `X < Y` when `Y` is `X` with some nonzero entries set to 0.
#[derive(Clone, Debug)]
pub struct Zonotope {
    pub complex: CubicalComplex,
    /// Label of each element, by element index.
    pub covectors: Vec<SignVector>,
}

impl Zonotope {
    pub fn f_vector(&self) -> Vec<u64> {
        self.complex.f_vector()
    }
}

fn zeros(y: &SignVector) -> usize {
    y.iter().filter(|&&s| s == 0).count()
}

/// Poset on sign vectors with rank = number of zeros. The input is sorted by
/// `(rank, vector)` to fix element order.
fn sign_vector_poset(mut vectors: Vec<SignVector>) -> (RankedPoset, Vec<SignVector>) {
    vectors.sort_by_key(|y| (zeros(y), y.clone()));
    vectors.dedup();
    let index: HashMap<&SignVector, usize> =
        vectors.iter().enumerate().map(|(i, y)| (y, i)).collect();
    let mut covers = Vec::new();
    for (i, y) in vectors.iter().enumerate() {
        for k in 0..y.len() {
            if y[k] != 0 {
                let mut z = y.clone();
                z[k] = 0;
                if let Some(&j) = index.get(&z) {
                    covers.push((i, j));
                }
            }
        }
    }
    let ranks = vectors.iter().map(zeros).collect();
    let poset = RankedPoset::new(ranks, covers).expect("zeroing one coordinate raises rank by one");
    (poset, vectors)
}

fn all_sign_vectors(k: usize) -> Vec<SignVector> {
    (0..3usize.pow(k as u32))
        .map(|mut code| {
            (0..k)
                .map(|_| {
                    let s = [0i8, 1, -1][code % 3];
                    code /= 3;
                    s
                })
                .collect()
        })
        .collect()
}

/// Boundary of the `k`-cube (a `(k-1)`-sphere) with its sign-vector labels.
pub fn cube_boundary_signed(k: usize) -> Zonotope {
    let vectors = all_sign_vectors(k)
        .into_iter()
        .filter(|y| y.iter().any(|&s| s != 0))
        .collect();
    let (poset, covectors) = sign_vector_poset(vectors);
    let complex = validate_cubical(poset).expect("cube boundaries are cubical");
    Zonotope { complex, covectors }
}

/// Boundary of the `k`-cube; f-polynomial `(2+t)^k - t^k`.
pub fn cube_boundary(k: usize) -> CubicalComplex {
    cube_boundary_signed(k).complex
}

/// All faces of the `k`-cube including the cube itself.
pub fn solid_cube(k: usize) -> CubicalComplex {
    let (poset, _) = sign_vector_poset(all_sign_vectors(k));
    validate_cubical(poset).expect("solid cubes are cubical")
}

/// Cycle with `n` vertices and `n` edges; vertex `i` is element `i`, edge
/// `{i, i+1}` is element `n + i`.
pub fn polygon(n: usize) -> Result<CubicalComplex, BuildError> {
    if n < 3 {
        return Err(BuildError::UnknownName(format!("{n}gon")));
    }
    let ranks = (0..2 * n).map(|x| usize::from(x >= n)).collect();
    let covers: Vec<_> = (0..n)
        .flat_map(|i| [(i, n + i), ((i + 1) % n, n + i)])
        .collect();
    Ok(validate_cubical(RankedPoset::new(ranks, covers)?)?)
}

/// Boundary of the zonotope dual to a generic central arrangement.
///
/// Faces are the nonzero covectors; a face with `z` zeros has rank `z`.
pub fn zonotope_boundary(arrangement: &Arrangement) -> Result<Zonotope, BuildError> {
    if arrangement.len() < arrangement.dim() || arrangement.dim() == 0 {
        return Err(BuildError::TooFewNormals {
            need: arrangement.dim().max(1),
            got: arrangement.len(),
        });
    }
    arrangement.check_generic()?;
    let (poset, covectors) = sign_vector_poset(arrangement.covectors());
    let complex = validate_cubical(poset)?;
    Ok(Zonotope { complex, covectors })
}

/// Identifies each face with its negative. The result is validated as a
/// cubical poset but need not satisfy the lattice condition.
pub fn antipodal_quotient(z: &Zonotope) -> Result<CubicalComplex, BuildError> {
    let index: HashMap<&SignVector, usize> = z
        .covectors
        .iter()
        .enumerate()
        .map(|(i, y)| (y, i))
        .collect();
    let neg: Vec<usize> = z
        .covectors
        .iter()
        .map(|y| {
            let m: SignVector = y.iter().map(|s| -s).collect();
            index
                .get(&m)
                .copied()
                .ok_or(BuildError::NotCentrallySymmetric)
        })
        .collect::<Result<_, _>>()?;
    // class representative: the smaller index of the pair
    let mut class = vec![usize::MAX; z.covectors.len()];
    let mut reps = Vec::new();
    for x in z.complex.poset().rank_order() {
        if class[x] == usize::MAX {
            if neg[x] == x {
                return Err(BuildError::NotCentrallySymmetric);
            }
            class[x] = reps.len();
            class[neg[x]] = reps.len();
            reps.push(x);
        }
    }
    let p = z.complex.poset();
    let ranks = reps.iter().map(|&x| p.rank(x)).collect();
    let covers: Vec<_> = p
        .covers()
        .into_iter()
        .map(|(a, b)| (class[a], class[b]))
        .collect();
    Ok(validate_cubical_poset(RankedPoset::new(ranks, covers)?)?)
}

/// Names of the catalogue 3-spheres: the 4-cube boundary and zonotopal
/// 3-spheres with 5, 6 and 7 zones.
pub fn catalogue_three_spheres() -> Vec<String> {
    ["cube4", "zono(4,5)", "zono(4,6)", "zono(4,7)"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// Catalogue spheres: cube boundaries of dimension up to 5, even polygons up
/// to 16 sides and zonotopal spheres of dimension up to 3 with up to three
/// extra zones.
pub fn catalogue_spheres() -> Vec<String> {
    let mut names: Vec<String> = (2..=6).map(|k| format!("cube{k}")).collect();
    names.extend((2..=8).map(|n| format!("{}gon", 2 * n)));
    for a in 2..=4 {
        for extra in 1..=3 {
            names.push(format!("zono({a},{})", a + extra));
        }
    }
    names
}

/// Every name understood by [`catalogue`], with parameters instantiated at
/// their smallest values, for listing.
pub fn catalogue_names() -> Vec<String> {
    let mut names = vec![
        "point".to_string(),
        "edge".to_string(),
        "square".to_string(),
    ];
    names.extend((1..=6).map(|k| format!("cube{k}")));
    names.extend((1..=4).map(|k| format!("solidcube{k}")));
    names.extend((3..=16).map(|n| format!("{n}gon")));
    for a in 1..=4 {
        for b in a..=a + 3 {
            names.push(format!("zono({a},{b})"));
        }
    }
    names.extend(
        ["rp(3,3)", "rp(3,4)", "rp(4,4)", "4gon*4gon", "cube3*edge"]
            .iter()
            .map(|s| s.to_string()),
    );
    names
}

/// Builds a named complex.
///
/// - `cube{k}`: boundary of the `k`-cube, `1 <= k <= 8`
/// - `solidcube{k}`, `point`, `edge`, `square`: solid cubes
/// - `{n}gon`: `n`-cycle, `n >= 3`
/// - `zono(a,b)`: boundary of a zonotope in `R^a` with `b` zones (moment-curve normals)
/// - `rp(a,b)`: antipodal quotient of `zono(a,b)`
/// - `A*B`: product
pub fn catalogue(name: &str) -> Result<CubicalComplex, BuildError> {
    let name = name.trim();
    let unknown = || BuildError::UnknownName(name.to_string());
    if let Some((a, b)) = name.split_once('*') {
        let left = catalogue(a)?;
        let right = catalogue(b)?;
        return Ok(left.product(&right)?);
    }
    match name {
        "point" => return Ok(solid_cube(0)),
        "edge" => return Ok(solid_cube(1)),
        "square" => return Ok(solid_cube(2)),
        _ => {}
    }
    if let Some(k) = name.strip_prefix("solidcube") {
        let k: usize = k.parse().map_err(|_| unknown())?;
        return if k <= 6 {
            Ok(solid_cube(k))
        } else {
            Err(unknown())
        };
    }
    if let Some(k) = name.strip_prefix("cube") {
        let k: usize = k.parse().map_err(|_| unknown())?;
        return if (1..=8).contains(&k) {
            Ok(cube_boundary(k))
        } else {
            Err(unknown())
        };
    }
    if let Some(n) = name.strip_suffix("gon") {
        let n: usize = n.parse().map_err(|_| unknown())?;
        return polygon(n).map_err(|_| unknown());
    }
    if let Some(args) = name.strip_prefix("zono(").and_then(|s| s.strip_suffix(')')) {
        let (a, b) = parse_pair(args).ok_or_else(unknown)?;
        return Ok(zonotope_by_zones(a, b)?.complex);
    }
    if let Some(args) = name.strip_prefix("rp(").and_then(|s| s.strip_suffix(')')) {
        let (a, b) = parse_pair(args).ok_or_else(unknown)?;
        return antipodal_quotient(&zonotope_by_zones(a, b)?);
    }
    Err(unknown())
}

/// Zonotope in `R^a` with `b` zones from moment-curve normals.
pub fn zonotope_by_zones(a: usize, b: usize) -> Result<Zonotope, BuildError> {
    if a == 0 || b < a || b > 10 {
        return Err(BuildError::UnknownName(format!("zono({a},{b})")));
    }
    zonotope_boundary(&Arrangement::moment_curve(a, b))
}

fn parse_pair(s: &str) -> Option<(usize, usize)> {
    let (a, b) = s.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{cube_boundary_f, zonotope_f};

    #[test]
    fn cube_boundaries_match_formula() {
        for k in 1..=5 {
            let c = cube_boundary(k);
            assert_eq!(c.f_polynomial(), cube_boundary_f(k - 1), "cube{k}");
        }
        assert_eq!(cube_boundary(3).euler_characteristic(), 2);
        assert_eq!(cube_boundary(4).euler_characteristic(), 0);
    }

    #[test]
    fn vertex_link_of_cube3() {
        let c = cube_boundary(3);
        let link = c.link(0).unwrap();
        assert_eq!(link.rank_counts(), vec![3, 3]);
        let top = c.poset().maximal_elements()[0];
        assert!(c.link(top).unwrap().is_empty());
    }

    #[test]
    fn solid_cube_ideal() {
        let c = solid_cube(3);
        let top = c.len() - 1;
        assert_eq!(c.order_ideal(top).unwrap().len(), 27);
    }

    #[test]
    fn products_and_unions() {
        let sq = catalogue("square").unwrap();
        let e = catalogue("edge").unwrap();
        assert_eq!(sq.product(&e).unwrap().f_vector(), vec![8, 12, 6, 1]);
        assert_eq!(sq.disjoint_union(&sq).unwrap().f_vector(), vec![8, 8, 2]);
        assert_eq!(catalogue("cube3").unwrap().rank_selected(&[2]).len(), 6);
    }

    #[test]
    fn zonotopes_follow_recursion() {
        for a in 1..=4 {
            for extra in 0..=3 {
                let z = zonotope_by_zones(a, a + extra).unwrap();
                assert_eq!(
                    z.complex.f_polynomial(),
                    zonotope_f(a - 1, extra),
                    "zono({a},{})",
                    a + extra
                );
            }
        }
        assert_eq!(catalogue("zono(3,5)").unwrap().f_vector(), vec![22, 40, 20]);
    }

    #[test]
    fn antipodal_quotients_halve() {
        assert_eq!(catalogue("rp(2,3)").unwrap().f_vector(), vec![3, 3]);
        assert_eq!(catalogue("rp(3,4)").unwrap().f_vector(), vec![7, 12, 6]);
        let rp2 = antipodal_quotient(&cube_boundary_signed(3)).unwrap();
        assert_eq!(rp2.f_vector(), vec![4, 6, 3]);
        assert!(!rp2.is_lattice());
    }

    #[test]
    fn catalogue_errors() {
        assert!(matches!(catalogue("nope"), Err(BuildError::UnknownName(_))));
        assert!(catalogue("2gon").is_err());
        assert!(catalogue("zono(3,2)").is_err());
        assert_eq!(catalogue("16gon").unwrap().f_vector(), vec![16, 16]);
    }
}
