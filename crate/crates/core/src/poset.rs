//! Ranked posets, flags and validated cubical complexes.
//!
//! Elements are dense indices `0..len`. A [`RankedPoset`] stores its Hasse
//! diagram (lower and upper covers, both sorted) together with a rank for every
//! element; every cover raises the rank by exactly one. A [`CubicalComplex`]
//! additionally caches every order ideal and filter and guarantees that each
//! ideal is the face poset of a cube.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::lattice::FPolynomial;

pub type ElemId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("unknown element {0}")]
    UnknownElement(ElemId),
    #[error("not graded: {0}")]
    NotGraded(String),
    #[error("order ideal of element {0} is not the face poset of a cube")]
    IdealNotCube(ElemId),
    #[error("elements {0} and {1} have no unique meet")]
    NotLattice(ElemId, ElemId),
}

/// A finite poset given by its Hasse diagram and a rank function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedPoset {
    ranks: Vec<usize>,
    down: Vec<Vec<ElemId>>,
    up: Vec<Vec<ElemId>>,
}

impl RankedPoset {
    /// Builds a poset from ranks and cover pairs `(lower, upper)`.
    ///
    /// Duplicate covers are merged. Every cover must raise the rank by one.
    pub fn new(
        ranks: Vec<usize>,
        covers: impl IntoIterator<Item = (ElemId, ElemId)>,
    ) -> Result<Self, PosetError> {
        let n = ranks.len();
        let mut down = vec![Vec::new(); n];
        let mut up = vec![Vec::new(); n];
        for (lo, hi) in covers {
            if lo >= n {
                return Err(PosetError::UnknownElement(lo));
            }
            if hi >= n {
                return Err(PosetError::UnknownElement(hi));
            }
            if ranks[hi] != ranks[lo] + 1 {
                return Err(PosetError::NotGraded(format!(
                    "cover {lo} < {hi} has ranks {} and {}",
                    ranks[lo], ranks[hi]
                )));
            }
            down[hi].push(lo);
            up[lo].push(hi);
        }
        for v in down.iter_mut().chain(up.iter_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        Ok(Self { ranks, down, up })
    }

    pub fn empty() -> Self {
        Self {
            ranks: Vec::new(),
            down: Vec::new(),
            up: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, x: ElemId) -> usize {
        self.ranks[x]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn lower_covers(&self, x: ElemId) -> &[ElemId] {
        &self.down[x]
    }

    pub fn upper_covers(&self, x: ElemId) -> &[ElemId] {
        &self.up[x]
    }

    pub fn max_rank(&self) -> Option<usize> {
        self.ranks.iter().copied().max()
    }

    pub fn min_rank(&self) -> Option<usize> {
        self.ranks.iter().copied().min()
    }

    pub fn check_element(&self, x: ElemId) -> Result<(), PosetError> {
        if x < self.len() {
            Ok(())
        } else {
            Err(PosetError::UnknownElement(x))
        }
    }

    /// All cover pairs `(lower, upper)` in lexicographic order.
    pub fn covers(&self) -> Vec<(ElemId, ElemId)> {
        let mut out: Vec<_> = (0..self.len())
            .flat_map(|lo| self.up[lo].iter().map(move |&hi| (lo, hi)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn elements_of_rank(&self, r: usize) -> Vec<ElemId> {
        (0..self.len()).filter(|&x| self.ranks[x] == r).collect()
    }

    /// Number of elements of each rank `0..=max_rank`.
    pub fn rank_counts(&self) -> Vec<u64> {
        let Some(top) = self.max_rank() else {
            return Vec::new();
        };
        let mut counts = vec![0u64; top + 1];
        for &r in &self.ranks {
            counts[r] += 1;
        }
        counts
    }

    pub fn f_polynomial(&self) -> FPolynomial {
        FPolynomial::from_counts(&self.rank_counts())
    }

    /// Alternating sum of the number of elements of each rank.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .map(|&r| if r % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    pub fn minimal_elements(&self) -> Vec<ElemId> {
        (0..self.len())
            .filter(|&x| self.down[x].is_empty())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<ElemId> {
        (0..self.len()).filter(|&x| self.up[x].is_empty()).collect()
    }

    /// Elements sorted by rank, ties by index.
    pub fn rank_order(&self) -> Vec<ElemId> {
        let mut order: Vec<ElemId> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.ranks[x], x));
        order
    }

    /// Checks that every minimal element has rank zero, which together with the
    /// cover condition makes rank equal to the length of every maximal chain below.
    pub fn check_graded(&self) -> Result<(), PosetError> {
        for x in self.minimal_elements() {
            if self.ranks[x] != 0 {
                return Err(PosetError::NotGraded(format!(
                    "minimal element {x} has rank {}",
                    self.ranks[x]
                )));
            }
        }
        Ok(())
    }

    /// Every order ideal, each sorted and containing its generator.
    pub fn compute_ideals(&self) -> Vec<Vec<ElemId>> {
        let mut ideals: Vec<Vec<ElemId>> = vec![Vec::new(); self.len()];
        for x in self.rank_order() {
            let mut acc: Vec<ElemId> = vec![x];
            for &c in &self.down[x] {
                acc.extend_from_slice(&ideals[c]);
            }
            acc.sort_unstable();
            acc.dedup();
            ideals[x] = acc;
        }
        ideals
    }

    pub fn order_ideal(&self, x: ElemId) -> Result<Vec<ElemId>, PosetError> {
        self.check_element(x)?;
        Ok(self.closure(x, &self.down))
    }

    pub fn order_filter(&self, x: ElemId) -> Result<Vec<ElemId>, PosetError> {
        self.check_element(x)?;
        Ok(self.closure(x, &self.up))
    }

    fn closure(&self, x: ElemId, adj: &[Vec<ElemId>]) -> Vec<ElemId> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            if seen.insert(y) {
                stack.extend_from_slice(&adj[y]);
            }
        }
        seen.into_iter().collect()
    }

    /// The induced subposet on `keep` (sorted, deduplicated), re-indexed in the
    /// given order. Ranks are shifted by `-shift`. Covers of the subposet are the
    /// covers of the original that join two kept elements; callers are
    /// responsible for `keep` being convex enough for that to be the Hasse
    /// diagram (ideals, filters and links are).
    fn induced_convex(&self, keep: &[ElemId], shift: usize) -> RankedPoset {
        let mut index = vec![usize::MAX; self.len()];
        for (i, &x) in keep.iter().enumerate() {
            index[x] = i;
        }
        let ranks = keep.iter().map(|&x| self.ranks[x] - shift).collect();
        let covers = keep.iter().flat_map(|&x| {
            let index = &index;
            self.up[x]
                .iter()
                .filter(move |&&y| index[y] != usize::MAX)
                .map(move |&y| (index[x], index[y]))
        });
        RankedPoset::new(ranks, covers.collect::<Vec<_>>()).expect("induced covers stay graded")
    }

    /// The link `⋁x \ {x}` with ranks shifted so that the covers of `x` have rank 0.
    pub fn link(&self, x: ElemId) -> Result<RankedPoset, PosetError> {
        let mut filter = self.order_filter(x)?;
        filter.retain(|&y| y != x);
        Ok(self.induced_convex(&filter, self.ranks[x] + 1))
    }

    /// The dual poset. Ranks become `max_rank - rank`.
    pub fn dual(&self) -> RankedPoset {
        let top = self.max_rank().unwrap_or(0);
        RankedPoset {
            ranks: self.ranks.iter().map(|&r| top - r).collect(),
            down: self.up.clone(),
            up: self.down.clone(),
        }
    }

    /// Elements whose rank lies in `ranks`, re-ranked by the position of their
    /// rank in the sorted selection.
    pub fn rank_selected(&self, ranks: &[usize]) -> RankedPoset {
        let selected: Vec<usize> = ranks
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let keep: Vec<ElemId> = (0..self.len())
            .filter(|&x| selected.binary_search(&self.ranks[x]).is_ok())
            .collect();
        let mut index = vec![usize::MAX; self.len()];
        for (i, &x) in keep.iter().enumerate() {
            index[x] = i;
        }
        let new_rank = |x: ElemId| selected.binary_search(&self.ranks[x]).unwrap();
        let ideals = self.compute_ideals();
        let mut covers = Vec::new();
        for &hi in &keep {
            for &lo in &ideals[hi] {
                if index[lo] != usize::MAX && new_rank(lo) + 1 == new_rank(hi) {
                    covers.push((index[lo], index[hi]));
                }
            }
        }
        let ranks = keep.iter().map(|&x| new_rank(x)).collect();
        RankedPoset::new(ranks, covers).expect("rank selection keeps a graded Hasse diagram")
    }

    /// Componentwise product. Element `(a, b)` has index `a * other.len() + b`.
    pub fn product(&self, other: &RankedPoset) -> RankedPoset {
        let m = other.len();
        let mut ranks = Vec::with_capacity(self.len() * m);
        for a in 0..self.len() {
            for b in 0..m {
                ranks.push(self.ranks[a] + other.ranks[b]);
            }
        }
        let mut covers = Vec::new();
        for a in 0..self.len() {
            for b in 0..m {
                for &a2 in &self.up[a] {
                    covers.push((a * m + b, a2 * m + b));
                }
                for &b2 in &other.up[b] {
                    covers.push((a * m + b, a * m + b2));
                }
            }
        }
        RankedPoset::new(ranks, covers).expect("product of ranked posets is ranked")
    }

    /// Disjoint union; elements of `other` are shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &RankedPoset) -> RankedPoset {
        let n = self.len();
        let ranks = self
            .ranks
            .iter()
            .chain(other.ranks.iter())
            .copied()
            .collect();
        let covers = self
            .covers()
            .into_iter()
            .chain(other.covers().into_iter().map(|(a, b)| (a + n, b + n)));
        RankedPoset::new(ranks, covers.collect::<Vec<_>>()).expect("disjoint union is ranked")
    }

    /// Relabels elements: element `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[ElemId]) -> RankedPoset {
        let mut ranks = vec![0; self.len()];
        for x in 0..self.len() {
            ranks[perm[x]] = self.ranks[x];
        }
        let covers: Vec<_> = self
            .covers()
            .into_iter()
            .map(|(a, b)| (perm[a], perm[b]))
            .collect();
        RankedPoset::new(ranks, covers).expect("relabelling preserves ranks")
    }

    /// Same ranks and the same set of covers.
    pub fn same_hasse_diagram(&self, other: &RankedPoset) -> bool {
        self.ranks == other.ranks && self.down == other.down
    }
}

/// Ideals and filters of a poset, cached for repeated order queries.
#[derive(Clone, Debug)]
pub struct OrderIndex {
    ideals: Vec<Vec<ElemId>>,
    filters: Vec<Vec<ElemId>>,
}

impl OrderIndex {
    pub fn new(poset: &RankedPoset) -> Self {
        let ideals = poset.compute_ideals();
        Self::from_ideals(ideals)
    }

    fn from_ideals(ideals: Vec<Vec<ElemId>>) -> Self {
        let mut filters = vec![Vec::new(); ideals.len()];
        for (y, ideal) in ideals.iter().enumerate() {
            for &x in ideal {
                filters[x].push(y);
            }
        }
        Self { ideals, filters }
    }

    pub fn ideal(&self, x: ElemId) -> &[ElemId] {
        &self.ideals[x]
    }

    pub fn filter(&self, x: ElemId) -> &[ElemId] {
        &self.filters[x]
    }

    pub fn le(&self, x: ElemId, y: ElemId) -> bool {
        self.ideals[y].binary_search(&x).is_ok()
    }

    pub fn lt(&self, x: ElemId, y: ElemId) -> bool {
        x != y && self.le(x, y)
    }

    /// All chains with exactly `length` elements, each listed bottom-up, in
    /// lexicographic order.
    pub fn flags(&self, length: usize) -> Vec<Flag> {
        let mut out = Vec::new();
        if length == 0 {
            return out;
        }
        let mut stack = Vec::with_capacity(length);
        for x in 0..self.ideals.len() {
            stack.push(x);
            self.extend_flags(&mut stack, length, &mut out);
            stack.pop();
        }
        out.sort();
        out
    }

    fn extend_flags(&self, stack: &mut Vec<ElemId>, length: usize, out: &mut Vec<Flag>) {
        if stack.len() == length {
            out.push(Flag(stack.clone()));
            return;
        }
        let top = *stack.last().unwrap();
        for &y in &self.filters[top] {
            if y != top {
                stack.push(y);
                self.extend_flags(stack, length, out);
                stack.pop();
            }
        }
    }

    /// Every nonempty chain, grouped by number of elements (index 0 holds the
    /// one-element chains).
    pub fn all_flags(&self) -> Vec<Vec<Flag>> {
        let mut by_len: Vec<Vec<Flag>> = Vec::new();
        let mut stack = Vec::new();
        for x in 0..self.ideals.len() {
            stack.push(x);
            self.collect_all(&mut stack, &mut by_len);
            stack.pop();
        }
        for v in &mut by_len {
            v.sort();
        }
        by_len
    }

    fn collect_all(&self, stack: &mut Vec<ElemId>, by_len: &mut Vec<Vec<Flag>>) {
        if by_len.len() < stack.len() {
            by_len.resize(stack.len(), Vec::new());
        }
        by_len[stack.len() - 1].push(Flag(stack.clone()));
        let top = *stack.last().unwrap();
        for &y in &self.filters[top] {
            if y != top {
                stack.push(y);
                self.collect_all(stack, by_len);
                stack.pop();
            }
        }
    }
}

/// A chain `x_0 < x_1 < ... < x_k`, stored bottom-up.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag(pub Vec<ElemId>);

impl Flag {
    pub fn new(elements: Vec<ElemId>) -> Self {
        Flag(elements)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Simplicial dimension: one less than the number of elements.
    pub fn dim(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn elements(&self) -> &[ElemId] {
        &self.0
    }

    pub fn first(&self) -> Option<ElemId> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<ElemId> {
        self.0.last().copied()
    }

    /// The flag with the element at `pos` removed.
    pub fn without(&self, pos: usize) -> Flag {
        let mut v = self.0.clone();
        v.remove(pos);
        Flag(v)
    }

    /// Strictly increasing in `order`.
    pub fn is_chain_in(&self, order: &OrderIndex) -> bool {
        self.0.windows(2).all(|w| order.lt(w[0], w[1]))
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("<"))
    }
}

/// A ranked poset in which every order ideal is a cube face poset.
///
/// Complexes built by [`validate_cubical`] also satisfy the lattice condition
/// (any two faces meet in a single face or not at all); those built by
/// [`validate_cubical_poset`] may not, which is what quotients such as cubical
/// projective spaces need.
#[derive(Clone, Debug)]
pub struct CubicalComplex {
    poset: RankedPoset,
    order: OrderIndex,
    lattice: bool,
}

impl CubicalComplex {
    pub fn poset(&self) -> &RankedPoset {
        &self.poset
    }

    pub fn into_poset(self) -> RankedPoset {
        self.poset
    }

    pub fn order(&self) -> &OrderIndex {
        &self.order
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    /// Maximal rank; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.poset.max_rank()
    }

    pub fn rank(&self, x: ElemId) -> usize {
        self.poset.rank(x)
    }

    pub fn f_vector(&self) -> Vec<u64> {
        self.poset.rank_counts()
    }

    pub fn f_polynomial(&self) -> FPolynomial {
        self.poset.f_polynomial()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.poset.euler_characteristic()
    }

    pub fn le(&self, x: ElemId, y: ElemId) -> bool {
        self.order.le(x, y)
    }

    pub fn lt(&self, x: ElemId, y: ElemId) -> bool {
        self.order.lt(x, y)
    }

    pub fn order_ideal(&self, x: ElemId) -> Result<&[ElemId], PosetError> {
        self.poset.check_element(x)?;
        Ok(self.order.ideal(x))
    }

    pub fn order_filter(&self, x: ElemId) -> Result<&[ElemId], PosetError> {
        self.poset.check_element(x)?;
        Ok(self.order.filter(x))
    }

    pub fn link(&self, x: ElemId) -> Result<RankedPoset, PosetError> {
        self.poset.link(x)
    }

    /// Vertices (rank-0 elements) of the face `x`.
    pub fn vertices_of(&self, x: ElemId) -> Vec<ElemId> {
        self.order
            .ideal(x)
            .iter()
            .copied()
            .filter(|&v| self.poset.rank(v) == 0)
            .collect()
    }

    pub fn flags(&self, length: usize) -> Vec<Flag> {
        self.order.flags(length)
    }

    pub fn dual(&self) -> RankedPoset {
        self.poset.dual()
    }

    pub fn rank_selected(&self, ranks: &[usize]) -> RankedPoset {
        self.poset.rank_selected(ranks)
    }

    /// Product complex; element `(a, b)` has index `a * other.len() + b`.
    pub fn product(&self, other: &CubicalComplex) -> Result<CubicalComplex, PosetError> {
        let p = self.poset.product(&other.poset);
        if self.lattice && other.lattice {
            validate_cubical(p)
        } else {
            validate_cubical_poset(p)
        }
    }

    /// Disjoint union; elements of `other` are shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &CubicalComplex) -> Result<CubicalComplex, PosetError> {
        let p = self.poset.disjoint_union(&other.poset);
        if self.lattice && other.lattice {
            validate_cubical(p)
        } else {
            validate_cubical_poset(p)
        }
    }
}

/// Validates a poset as a cubical complex: graded, every ideal a cube, and the
/// bounded extension a lattice.
pub fn validate_cubical(poset: RankedPoset) -> Result<CubicalComplex, PosetError> {
    let mut complex = validate_cubical_poset(poset)?;
    check_lattice(&complex)?;
    complex.lattice = true;
    Ok(complex)
}

/// Validates gradedness and cube ideals only.
pub fn validate_cubical_poset(poset: RankedPoset) -> Result<CubicalComplex, PosetError> {
    poset.check_graded()?;
    let ideals = poset.compute_ideals();
    let mut signatures: Vec<CubeSig> = vec![CubeSig::default(); poset.len()];
    for x in poset.rank_order() {
        check_cube_ideal(&poset, &ideals, x, &mut signatures)?;
    }
    Ok(CubicalComplex {
        poset,
        order: OrderIndex::from_ideals(ideals),
        lattice: false,
    })
}

/// Position of a face inside a reference cube: coordinates in `fixed` are set to
/// the matching bit of `values`; the remaining coordinates are free.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct CubeSig {
    fixed: u32,
    values: u32,
}

fn check_cube_ideal(
    poset: &RankedPoset,
    ideals: &[Vec<ElemId>],
    x: ElemId,
    _scratch: &mut [CubeSig],
) -> Result<(), PosetError> {
    let r = poset.rank(x);
    let ideal = &ideals[x];
    let fail = || PosetError::IdealNotCube(x);
    if r >= 20 || ideal.len() != 3usize.pow(r as u32) {
        return Err(fail());
    }
    if r == 0 {
        return Ok(());
    }
    let verts: Vec<ElemId> = ideal
        .iter()
        .copied()
        .filter(|&v| poset.rank(v) == 0)
        .collect();
    if verts.len() != 1 << r {
        return Err(fail());
    }
    let v0 = verts[0];
    // Edges at v0 and their far endpoints.
    let mut far = Vec::with_capacity(r);
    for &e in ideal {
        if poset.rank(e) == 1 && poset.lower_covers(e).contains(&v0) {
            let ends = poset.lower_covers(e);
            if ends.len() != 2 {
                return Err(fail());
            }
            far.push(if ends[0] == v0 { ends[1] } else { ends[0] });
        }
    }
    if far.len() != r {
        return Err(fail());
    }
    let facets = poset.lower_covers(x);
    if facets.len() != 2 * r {
        return Err(fail());
    }
    let vertex_set = |f: ElemId| -> Vec<ElemId> {
        ideals[f]
            .iter()
            .copied()
            .filter(|&v| poset.rank(v) == 0)
            .collect()
    };
    let containing: Vec<Vec<ElemId>> = facets
        .iter()
        .map(|&f| vertex_set(f))
        .filter(|vs| vs.binary_search(&v0).is_ok())
        .collect();
    if containing.len() != r {
        return Err(fail());
    }
    // Coordinate hyperplane i: the facet through v0 that misses far[i].
    let mut planes: Vec<&Vec<ElemId>> = Vec::with_capacity(r);
    for &u in &far {
        let mut hits = containing.iter().filter(|vs| vs.binary_search(&u).is_err());
        match (hits.next(), hits.next()) {
            (Some(p), None) => planes.push(p),
            _ => return Err(fail()),
        }
    }
    let coord = |v: ElemId| -> u32 {
        let mut c = 0u32;
        for (i, p) in planes.iter().enumerate() {
            if p.binary_search(&v).is_err() {
                c |= 1 << i;
            }
        }
        c
    };
    let full: u32 = if r == 32 { u32::MAX } else { (1u32 << r) - 1 };
    let mut sig_of = std::collections::HashMap::with_capacity(ideal.len());
    let mut seen = std::collections::HashSet::with_capacity(ideal.len());
    for &f in ideal {
        let vs = vertex_set(f);
        let mut and = full;
        let mut or = 0u32;
        for &v in &vs {
            let c = coord(v);
            and &= c;
            or |= c;
        }
        let fixed = !(and ^ or) & full;
        let sig = CubeSig {
            fixed,
            values: and & fixed,
        };
        let free = (full & !fixed).count_ones() as usize;
        if free != poset.rank(f) || vs.len() != 1 << free || !seen.insert(sig) {
            return Err(fail());
        }
        sig_of.insert(f, sig);
    }
    for &f in ideal {
        let sf = sig_of[&f];
        let lower = poset.lower_covers(f);
        if lower.len() != 2 * poset.rank(f) {
            return Err(fail());
        }
        for &g in lower {
            let sg = sig_of[&g];
            let specialises = sg.fixed & sf.fixed == sf.fixed
                && (sg.values & sf.fixed) == sf.values
                && (sg.fixed & !sf.fixed).count_ones() == 1;
            if !specialises {
                return Err(fail());
            }
        }
    }
    Ok(())
}

/// Meets are unique iff they are unique for every pair of maximal faces: every
/// other pair reduces to meets inside a single cube.
fn check_lattice(complex: &CubicalComplex) -> Result<(), PosetError> {
    let poset = &complex.poset;
    let order = &complex.order;
    let maximal = poset.maximal_elements();
    let mut is_max = vec![false; poset.len()];
    for &m in &maximal {
        is_max[m] = true;
    }
    for v in poset.elements_of_rank(0) {
        let tops: Vec<ElemId> = order
            .filter(v)
            .iter()
            .copied()
            .filter(|&y| is_max[y])
            .collect();
        for (i, &a) in tops.iter().enumerate() {
            for &b in &tops[i + 1..] {
                let common: Vec<ElemId> = intersect_sorted(order.ideal(a), order.ideal(b));
                // only examine the pair from its smallest shared vertex
                let first_vertex = common.iter().copied().find(|&z| poset.rank(z) == 0);
                if first_vertex != Some(v) {
                    continue;
                }
                let tops_of_common = common
                    .iter()
                    .filter(|&&z| {
                        poset
                            .upper_covers(z)
                            .iter()
                            .all(|u| common.binary_search(u).is_err())
                    })
                    .count();
                if tops_of_common != 1 {
                    return Err(PosetError::NotLattice(a, b));
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn intersect_sorted(a: &[ElemId], b: &[ElemId]) -> Vec<ElemId> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Whether two posets are order-isomorphic via `map` (a bijection from the
/// elements of `a` to those of `b` preserving ranks and covers).
pub fn is_isomorphism(a: &RankedPoset, b: &RankedPoset, map: &[ElemId]) -> bool {
    if a.len() != b.len() || map.len() != a.len() {
        return false;
    }
    let mut hit = vec![false; b.len()];
    for &y in map {
        if y >= b.len() || std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    (0..a.len()).all(|x| {
        a.rank(x) == b.rank(map[x]) && {
            let mut img: Vec<ElemId> = a.lower_covers(x).iter().map(|&c| map[c]).collect();
            img.sort_unstable();
            img == b.lower_covers(map[x])
        }
    })
}
