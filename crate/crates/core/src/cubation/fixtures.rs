//! Small immersions used by tests and the command line.

use super::immersion::Immersion;
use super::simplicial::SimplicialComplex;
use super::CubationError;

pub fn fixture_names() -> &'static [&'static str] {
    &[
        "circle",
        "hexagon-points",
        "octahedron",
        "octahedron-equator",
        "figure-eight",
        "figure-eight-tangent",
        "cross-polytope-equator",
    ]
}

pub fn fixture(name: &str) -> Result<Immersion, CubationError> {
    let (t, m, map) = match name {
        "circle" => (vec![vec![0, 1], vec![1, 2], vec![0, 2]], vec![], vec![]),
        "hexagon-points" => (cycle(6), vec![vec![0], vec![1]], vec![0, 3]),
        "octahedron" => (cross_polytope(3), vec![], vec![]),
        // the great circle through ±x and ±y
        "octahedron-equator" => (cross_polytope(3), cycle(4), vec![0, 2, 1, 3]),
        "figure-eight" => (grid_sphere(), cycle(8), figure_eight_map(false)),
        "figure-eight-tangent" => (grid_sphere(), cycle(8), figure_eight_map(true)),
        "cross-polytope-equator" => {
            let octahedron = cross_polytope(3);
            (cross_polytope(4), octahedron, (0..6).collect())
        }
        _ => {
            return Err(CubationError::Unsupported(format!(
                "unknown immersion {name:?}"
            )))
        }
    };
    Immersion::new(
        SimplicialComplex::from_integer_facets(&t),
        SimplicialComplex::from_integer_facets(&m),
        &map,
    )
}

fn cycle(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| vec![i, (i + 1) % n]).collect()
}

/// Boundary of the cross-polytope: vertex `2i` is `+e_i`, `2i + 1` is `-e_i`.
fn cross_polytope(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .map(|signs| (0..n).map(|i| 2 * i + (signs >> i & 1) as usize).collect())
        .collect()
}

/// A 5x5 grid (vertex `5j + i` at `(i, j)`, diagonals `(i,j)-(i+1,j+1)`) with
/// its boundary coned off to vertex 25.
fn grid_sphere() -> Vec<Vec<usize>> {
    let v = |i: usize, j: usize| 5 * j + i;
    let mut facets = Vec::new();
    for j in 0..4 {
        for i in 0..4 {
            facets.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            facets.push(vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    let mut ring = Vec::new();
    ring.extend((0..4).map(|i| v(i, 0)));
    ring.extend((0..4).map(|j| v(4, j)));
    ring.extend((0..4).map(|i| v(4 - i, 4)));
    ring.extend((0..4).map(|j| v(0, 4 - j)));
    for k in 0..ring.len() {
        facets.push(vec![ring[k], ring[(k + 1) % ring.len()], 25]);
    }
    facets
}

/// An 8-cycle passing twice through `(2,2)`. The transverse version crosses
/// east-west against north-south; the tangent one touches there instead.
fn figure_eight_map(tangent: bool) -> Vec<usize> {
    let second: [(usize, usize); 3] = if tangent {
        [(1, 2), (1, 1), (2, 1)]
    } else {
        [(2, 1), (1, 1), (1, 2)]
    };
    [(2, 2), (3, 2), (3, 3), (2, 3), (2, 2)]
        .into_iter()
        .chain(second)
        .map(|(i, j)| 5 * j + i)
        .collect()
}
