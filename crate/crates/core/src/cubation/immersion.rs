use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;
use serde_json::Value;

use super::simplicial::SimplicialComplex;
use super::CubationError;
use crate::json::JsonError;

/// Position of a face relative to one sheet through a simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    On,
    A,
    B,
}

pub type Sector = Vec<Side>;

/// A simplicial map from a closed `(d-1)`-manifold `M` into a triangulated
/// `d`-sphere `T`, checked to be a normal-crossing immersion.
#[derive(Clone, Debug)]
pub struct Immersion {
    t: SimplicialComplex,
    m: SimplicialComplex,
    dim: usize,
    /// Image in `T` of every simplex of `M`.
    image: Vec<usize>,
    /// Simplices of `M` mapping onto each simplex of `T`, ascending.
    sheets: Vec<Vec<usize>>,
    /// `sectors[t][u]` for every `u >= t`: one coordinate per sheet of `t`.
    sectors: Vec<HashMap<usize, Sector>>,
}

impl Immersion {
    /// Validates `T`, `M` and the vertex map, then computes sheets and sector
    /// maps. `vertex_map[v]` is the `T` vertex hit by the `M` vertex `v`.
    pub fn new(
        t: SimplicialComplex,
        m: SimplicialComplex,
        vertex_map: &[usize],
    ) -> Result<Self, CubationError> {
        let dim = check_sphere(&t)?;
        check_manifold(&m, dim)?;
        if vertex_map.len() != m.vertex_count() {
            return Err(CubationError::NotSimplicial(format!(
                "{} vertices of M but {} images",
                m.vertex_count(),
                vertex_map.len()
            )));
        }
        let mut image = Vec::with_capacity(m.len());
        for s in 0..m.len() {
            let verts: Vec<usize> = m.simplex(s).iter().map(|&v| vertex_map[v]).collect();
            let mut distinct = verts.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() != verts.len() {
                return Err(CubationError::NotSimplicial(format!(
                    "simplex {} of M is collapsed",
                    m.simplex(s).len()
                )));
            }
            match t.find(&distinct) {
                Some(x) => image.push(x),
                None => {
                    let names: Vec<&str> =
                        distinct.iter().map(|&v| t.labels()[v].as_str()).collect();
                    return Err(CubationError::NotSimplicial(format!(
                        "image {{{}}} is not a simplex of T",
                        names.join(",")
                    )));
                }
            }
        }
        let mut sheets = vec![Vec::new(); t.len()];
        for (s, &x) in image.iter().enumerate() {
            sheets[x].push(s);
        }
        let mut imm = Self {
            t,
            m,
            dim,
            image,
            sheets,
            sectors: Vec::new(),
        };
        imm.sectors = (0..imm.t.len())
            .map(|x| imm.sector_map(x))
            .collect::<Result<_, _>>()?;
        imm.check_sector_restrictions()?;
        Ok(imm)
    }

    /// Parses `{"T":{"simplices":..},"M":{"simplices":..},"vertex_map":{..}}`.
    /// Vertex ids may be integers or strings.
    pub fn from_json(text: &str) -> Result<Self, CubationError> {
        let v: Value = serde_json::from_str(text).map_err(JsonError::from)?;
        let schema = |msg: &str| CubationError::Json(JsonError::Schema(msg.to_string()));
        let (t_labels, t_facets) = parse_simplices(v.get("T").ok_or_else(|| schema("missing T"))?)
            .ok_or_else(|| schema("T.simplices must be a list of vertex lists"))?;
        let (m_labels, m_facets) = match v.get("M") {
            Some(m) => parse_simplices(m)
                .ok_or_else(|| schema("M.simplices must be a list of vertex lists"))?,
            None => (Vec::new(), Vec::new()),
        };
        let map = v.get("vertex_map").and_then(Value::as_object);
        let mut vertex_map = Vec::with_capacity(m_labels.len());
        for label in &m_labels {
            let target = map
                .and_then(|o| o.get(label))
                .and_then(vertex_label)
                .ok_or_else(|| schema(&format!("vertex_map has no image for {label}")))?;
            let idx = t_labels.iter().position(|l| *l == target).ok_or_else(|| {
                CubationError::NotSimplicial(format!(
                    "{label} maps to {target}, which is not a vertex of T"
                ))
            })?;
            vertex_map.push(idx);
        }
        Self::new(
            SimplicialComplex::from_facets(t_labels, &t_facets),
            SimplicialComplex::from_facets(m_labels, &m_facets),
            &vertex_map,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.t
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.m
    }

    pub fn image(&self, s: usize) -> usize {
        self.image[s]
    }

    pub fn sheets(&self, t: usize) -> &[usize] {
        &self.sheets[t]
    }

    /// Number of sheets through `t`.
    pub fn multiplicity(&self, t: usize) -> usize {
        self.sheets[t].len()
    }

    /// Sector of `u >= t` relative to the sheets through `t`.
    pub fn sector(&self, t: usize, u: usize) -> Option<&Sector> {
        self.sectors[t].get(&u)
    }

    /// Simplices of `T` on the sheet `s` of `M`: images of the cofaces of `s`.
    fn on_sheet(&self, s: usize) -> HashSet<usize> {
        self.m
            .order()
            .filter(s)
            .iter()
            .map(|&x| self.image[x])
            .collect()
    }

    fn sector_map(&self, t: usize) -> Result<HashMap<usize, Sector>, CubationError> {
        let d = self.dim;
        let sheets = &self.sheets[t];
        let k = sheets.len();
        let dim_t = self.t.dim_of(t);
        if k + dim_t > d {
            return Err(CubationError::NotNormalCrossing(format!(
                "{} sheets through a {dim_t}-simplex {}",
                k,
                self.name(t)
            )));
        }
        let star: Vec<usize> = self.t.order().filter(t).to_vec();
        let tops: Vec<usize> = star
            .iter()
            .copied()
            .filter(|&u| self.t.dim_of(u) == d)
            .collect();
        let top_pos: HashMap<usize, usize> =
            tops.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let mut sectors: HashMap<usize, Sector> =
            star.iter().map(|&u| (u, Vec::with_capacity(k))).collect();
        for &s in sheets {
            let on = self.on_sheet(s);
            let mut parent: Vec<usize> = (0..tops.len()).collect();
            for &f in &star {
                if self.t.dim_of(f) + 1 == d && !on.contains(&f) {
                    let ends = self.t.face_poset().upper_covers(f);
                    if let [a, b] = ends {
                        union(&mut parent, top_pos[a], top_pos[b]);
                    }
                }
            }
            let roots: Vec<usize> = (0..tops.len()).map(|i| find(&mut parent, i)).collect();
            let mut distinct = roots.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() != 2 {
                return Err(CubationError::SheetNotSeparating {
                    simplex: self.name(t),
                    components: distinct.len(),
                });
            }
            // tops are ascending, so the first one fixes side A
            let side_a = roots[0];
            for &u in &star {
                let side = if on.contains(&u) {
                    Side::On
                } else {
                    let mut sides = self
                        .t
                        .order()
                        .filter(u)
                        .iter()
                        .filter_map(|x| top_pos.get(x))
                        .map(|&i| if roots[i] == side_a { Side::A } else { Side::B });
                    let first = sides
                        .next()
                        .expect("every simplex of a pure complex lies in a facet");
                    if sides.any(|x| x != first) {
                        return Err(CubationError::NotNormalCrossing(format!(
                            "a face off the sheet at {} touches both sides",
                            self.name(t)
                        )));
                    }
                    first
                };
                sectors.get_mut(&u).expect("star element").push(side);
            }
        }
        let realized: HashSet<&Sector> = sectors.values().collect();
        if realized.len() != 3usize.pow(k as u32) {
            return Err(CubationError::NotNormalCrossing(format!(
                "only {} of {} sectors occur around {}",
                realized.len(),
                3usize.pow(k as u32),
                self.name(t)
            )));
        }
        Ok(sectors)
    }

    /// For `s < t`, the sector map of `s` restricted to the star of `t` must
    /// agree with that of `t` on the sheets passing through `t` (up to naming
    /// the two sides) and be constant off the sheet elsewhere.
    fn check_sector_restrictions(&self) -> Result<(), CubationError> {
        for t in 0..self.t.len() {
            let star = self.t.order().filter(t);
            for &s in self.t.order().ideal(t) {
                if s == t {
                    continue;
                }
                for (i, &sheet) in self.sheets[s].iter().enumerate() {
                    let through = self.sheets[t].iter().position(|&x| self.m.le(sheet, x));
                    let mut pairing: BTreeMap<Side, Side> = BTreeMap::new();
                    let mut constant = None;
                    for &u in star {
                        let a = self.sectors[s][&u][i];
                        let ok = match through {
                            Some(j) => {
                                let b = self.sectors[t][&u][j];
                                (a == Side::On) == (b == Side::On)
                                    && *pairing.entry(a).or_insert(b) == b
                            }
                            None => a != Side::On && *constant.get_or_insert(a) == a,
                        };
                        if !ok {
                            return Err(CubationError::NotNormalCrossing(format!(
                                "sectors at {} and {} disagree",
                                self.name(s),
                                self.name(t)
                            )));
                        }
                    }
                    if pairing.contains_key(&Side::A)
                        && pairing.get(&Side::A) == pairing.get(&Side::B)
                    {
                        return Err(CubationError::NotNormalCrossing(format!(
                            "sides at {} merge at {}",
                            self.name(s),
                            self.name(t)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `{v0,v1,...}` in the input labels of `T`.
    pub fn name(&self, t: usize) -> String {
        let names: Vec<&str> = self
            .t
            .simplex(t)
            .iter()
            .map(|&v| self.t.labels()[v].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut i = i;
    while parent[i] != r {
        let next = parent[i];
        parent[i] = r;
        i = next;
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Pure `d`-dimensional pseudomanifold with the mod-2 homology of a sphere.
fn check_sphere(t: &SimplicialComplex) -> Result<usize, CubationError> {
    let d = t
        .dim()
        .ok_or_else(|| CubationError::NotSphere("T is empty".into()))?;
    if d == 0 {
        return Err(CubationError::NotSphere(
            "T must have dimension at least 1".into(),
        ));
    }
    if t.face_poset()
        .maximal_elements()
        .iter()
        .any(|&x| t.dim_of(x) != d)
    {
        return Err(CubationError::NotSphere("T is not pure".into()));
    }
    if let Some(f) = t.first_with_coface_count_not(d - 1, 2) {
        return Err(CubationError::NotSphere(format!(
            "a ridge of T lies in {} facets",
            t.face_poset().upper_covers(f).len()
        )));
    }
    let mut expected = vec![0; d + 1];
    expected[0] = 1;
    expected[d] = 1;
    let betti = t.betti();
    if betti != expected {
        return Err(CubationError::NotSphere(format!(
            "mod-2 Betti numbers {betti:?}"
        )));
    }
    Ok(d)
}

/// Empty, or pure of dimension `d - 1` with every codimension-one face in
/// exactly two facets.
fn check_manifold(m: &SimplicialComplex, d: usize) -> Result<(), CubationError> {
    let Some(dm) = m.dim() else { return Ok(()) };
    if dm + 1 != d {
        return Err(CubationError::NotClosedManifold(format!(
            "M has dimension {dm}, expected {}",
            d - 1
        )));
    }
    if m.face_poset()
        .maximal_elements()
        .iter()
        .any(|&x| m.dim_of(x) != dm)
    {
        return Err(CubationError::NotClosedManifold("M is not pure".into()));
    }
    if dm >= 1 {
        if let Some(f) = m.first_with_coface_count_not(dm - 1, 2) {
            return Err(CubationError::NotClosedManifold(format!(
                "a ridge of M lies in {} facets",
                m.face_poset().upper_covers(f).len()
            )));
        }
    }
    Ok(())
}

fn vertex_label(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Some(n.to_string()),
        _ => None,
    }
}

/// Labels sorted numerically when all are integers, otherwise as strings.
fn parse_simplices(v: &Value) -> Option<(Vec<String>, Vec<Vec<usize>>)> {
    let raw: Vec<Vec<String>> = v
        .get("simplices")?
        .as_array()?
        .iter()
        .map(|s| {
            s.as_array()?
                .iter()
                .map(vertex_label)
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()?;
    let mut labels: Vec<String> = raw.iter().flatten().cloned().collect();
    labels.sort_by(|a, b| match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => std::cmp::Ordering::Less,
        (Err(_), Ok(_)) => std::cmp::Ordering::Greater,
        _ => a.cmp(b),
    });
    labels.dedup();
    let pos: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let facets = raw
        .iter()
        .map(|s| s.iter().map(|l| pos[l.as_str()]).collect())
        .collect();
    Some((labels, facets))
}
