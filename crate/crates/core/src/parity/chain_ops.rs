//! Chain maps between the order complexes of `K` and `NK` over GF(2).
//!
//! - `σ = 1 + ε_*` on chains of `NK`
//! - `γ(a_0 < ... < a_r)`: every chain `e_0 < ... < e_r` of `NK` with `j(e_i) = a_i`
//! - `τ(a_0 < ... < a_r)`: every chain `e_1 < ... < e_r` of `NK` with
//!   `j(e_i) = a_i` whose first facets all lie above `a_0`; zero on 0-chains
//!
//! With the non-augmented boundary these satisfy `∂σ = σ∂`, `∂τ = τ∂` and
//! `στ = ∂γ + γ∂`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::derivative::{DerivativeComplex, DerivativeError};
use crate::mod2::{flag_boundary, Mod2Chain};
use crate::poset::{CubicalComplex, ElemId, Flag};

type Chain = Mod2Chain<Flag>;

/// A complex together with its paired-facet complex and cached flag lists.
pub struct ChainOperators<'a> {
    k: &'a CubicalComplex,
    d: DerivativeComplex,
    /// `NK` elements joining to each face of `K`.
    preimages: Vec<Vec<ElemId>>,
    k_flags: Vec<Vec<Flag>>,
    nk_flags: Vec<Vec<Flag>>,
}

impl<'a> ChainOperators<'a> {
    pub fn new(k: &'a CubicalComplex) -> Result<Self, DerivativeError> {
        let d = DerivativeComplex::build(k)?;
        let mut preimages = vec![Vec::new(); k.len()];
        for x in 0..d.nk.len() {
            preimages[d.join_nk(x)].push(x);
        }
        let k_flags = k.order().all_flags();
        let nk_flags = d.nk.order().all_flags();
        Ok(Self {
            k,
            d,
            preimages,
            k_flags,
            nk_flags,
        })
    }

    pub fn complex(&self) -> &CubicalComplex {
        self.k
    }

    pub fn derivative(&self) -> &DerivativeComplex {
        &self.d
    }

    /// Dimension `d` of `K`.
    pub fn dim(&self) -> usize {
        self.k.dim().unwrap_or(0)
    }

    /// Flags of `K` with `i + 1` elements.
    pub fn k_flags(&self, i: usize) -> &[Flag] {
        self.k_flags.get(i).map_or(&[], Vec::as_slice)
    }

    /// Flags of `NK` with `i + 1` elements.
    pub fn nk_flags(&self, i: usize) -> &[Flag] {
        self.nk_flags.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn epsilon(&self, c: &Chain) -> Chain {
        c.map_linear(|f| {
            [Flag(f.0.iter().map(|&x| self.d.epsilon[x]).collect())]
                .into_iter()
                .collect()
        })
    }

    pub fn sigma(&self, c: &Chain) -> Chain {
        c.add(&self.epsilon(c))
    }

    pub fn boundary(&self, c: &Chain) -> Chain {
        flag_boundary(c)
    }

    /// Chains `e_0 < ... < e_r` of `NK` with `j(e_i) = a_i`, where the first
    /// facet of each `e_i` satisfies `keep`.
    fn lifts(&self, faces: &[ElemId], keep: impl Fn(ElemId) -> bool) -> Chain {
        let mut out = Chain::zero();
        let mut stack: Vec<ElemId> = Vec::with_capacity(faces.len());
        self.lift_rec(faces, &keep, &mut stack, &mut out);
        out
    }

    fn lift_rec(
        &self,
        faces: &[ElemId],
        keep: &impl Fn(ElemId) -> bool,
        stack: &mut Vec<ElemId>,
        out: &mut Chain,
    ) {
        let i = stack.len();
        if i == faces.len() {
            out.toggle(Flag(stack.clone()));
            return;
        }
        for &e in &self.preimages[faces[i]] {
            if !keep(self.d.nk_labels[e].b) {
                continue;
            }
            if let Some(&prev) = stack.last() {
                if !self.d.nk.lt(prev, e) {
                    continue;
                }
            }
            stack.push(e);
            self.lift_rec(faces, keep, stack, out);
            stack.pop();
        }
    }

    pub fn gamma(&self, c: &Chain) -> Chain {
        c.map_linear(|f| self.lifts(f.elements(), |_| true))
    }

    pub fn tau(&self, c: &Chain) -> Chain {
        c.map_linear(|f| {
            if f.len() < 2 {
                return Chain::zero();
            }
            let a0 = f.0[0];
            self.lifts(&f.0[1..], |b| self.k.le(a0, b))
        })
    }

    /// `P_i`: the `i`-flags of `K` that do not occupy exactly the ranks
    /// `d - i, ..., d`.
    pub fn p_chain(&self, i: usize) -> Chain {
        let d = self.dim();
        self.k_flags(i)
            .iter()
            .filter(|f| !occupies_top(self.k, f, d))
            .cloned()
            .collect()
    }

    /// The `i`-flags of `NK` that do not occupy exactly the ranks
    /// `d - 1 - i, ..., d - 1`; equal to `γ P_i`.
    pub fn gamma_p_expected(&self, i: usize) -> Chain {
        let top = self.dim().saturating_sub(1);
        self.nk_flags(i)
            .iter()
            .filter(|f| !occupies_top(&self.d.nk, f, top))
            .cloned()
            .collect()
    }

    /// One flag from each swap orbit of flags of `NK` with `i + 1` elements:
    /// the one whose first element `(b, c)` has `b < c`.
    pub fn section_w(&self, i: usize) -> Chain {
        self.nk_flags(i)
            .iter()
            .filter(|f| {
                let first = self.d.nk_labels[f.0[0]];
                first.b < first.c
            })
            .cloned()
            .collect()
    }

    /// A uniformly random subset of the `i`-flags of `K`.
    pub fn random_chain(&self, i: usize, rng: &mut impl Rng) -> Chain {
        self.k_flags(i)
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .cloned()
            .collect()
    }

    pub fn random_nk_chain(&self, i: usize, rng: &mut impl Rng) -> Chain {
        self.nk_flags(i)
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .cloned()
            .collect()
    }

    /// Checks the operator identities on `count` random chains drawn with
    /// `seed`, plus the `P_i` identities.
    pub fn check_identities(&self, count: usize, seed: u64) -> IdentityReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = IdentityReport {
            seed,
            chains: count,
            ..IdentityReport::default()
        };
        let d = self.dim();
        for _ in 0..count {
            let i = rng.gen_range(0..=d);
            let c = self.random_chain(i, &mut rng);
            let e = self.random_nk_chain(i.min(d.saturating_sub(1)), &mut rng);
            if self.boundary(&self.sigma(&e)) != self.sigma(&self.boundary(&e)) {
                report
                    .failures
                    .push(format!("boundary and sigma disagree on a degree {i} chain"));
            }
            if self.boundary(&self.tau(&c)) != self.tau(&self.boundary(&c)) {
                report
                    .failures
                    .push(format!("boundary and tau disagree on a degree {i} chain"));
            }
            let lhs = self.sigma(&self.tau(&c));
            let rhs = self
                .boundary(&self.gamma(&c))
                .add(&self.gamma(&self.boundary(&c)));
            if lhs != rhs {
                report.failures.push(format!(
                    "sigma tau differs from the gamma homotopy on a degree {i} chain"
                ));
            }
            let g = self.gamma(&c);
            if self.sigma(&self.section_of(&g)) != g {
                report.failures.push(format!(
                    "image of gamma is not in the image of sigma in degree {i}"
                ));
            }
        }
        for i in 0..=d {
            let p = self.p_chain(i);
            if i > 0 && i < d && !self.boundary(&p).is_zero() {
                report.failures.push(format!("P_{i} is not a cycle"));
            }
            if i >= 1 && self.tau(&p) != self.gamma(&self.p_chain(i - 1)) {
                report
                    .failures
                    .push(format!("tau P_{i} differs from gamma P_{}", i - 1));
            }
            if self.gamma(&p) != self.gamma_p_expected(i) {
                report
                    .failures
                    .push(format!("gamma P_{i} differs from its direct enumeration"));
            }
            if self.sigma(&self.section_w(i)) != self.nk_flags(i).iter().cloned().collect::<Chain>()
            {
                report
                    .failures
                    .push(format!("sigma W misses flags in degree {i}"));
            }
        }
        report.pass = report.failures.is_empty();
        report
    }

    /// Flags of `c` whose first element has `b < c`.
    fn section_of(&self, c: &Chain) -> Chain {
        c.iter()
            .filter(|f| {
                let first = self.d.nk_labels[f.0[0]];
                first.b < first.c
            })
            .cloned()
            .collect()
    }
}

/// The flag has `i + 1` elements whose ranks are exactly `top - i, ..., top`.
fn occupies_top(k: &CubicalComplex, f: &Flag, top: usize) -> bool {
    let i = f.dim();
    i <= top
        && f.0
            .iter()
            .enumerate()
            .all(|(pos, &x)| k.rank(x) == top - i + pos)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct IdentityReport {
    pub seed: u64,
    pub chains: usize,
    pub pass: bool,
    pub failures: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::catalogue;

    #[test]
    fn gamma_of_a_square() {
        let k = catalogue("cube3").unwrap();
        let ops = ChainOperators::new(&k).unwrap();
        let q = k.poset().elements_of_rank(2)[0];
        let g = ops.gamma(&[Flag(vec![q])].into_iter().collect());
        assert_eq!(g.len(), 4);
        let v = k.poset().elements_of_rank(0)[0];
        assert!(ops.gamma(&[Flag(vec![v])].into_iter().collect()).is_zero());
    }

    #[test]
    fn tau_of_vertex_edge_flag() {
        let k = catalogue("cube3").unwrap();
        let ops = ChainOperators::new(&k).unwrap();
        let e = k.poset().elements_of_rank(1)[0];
        let v = k.poset().lower_covers(e)[0];
        let w = k.poset().lower_covers(e)[1];
        let c: Chain = [Flag(vec![v, e])].into_iter().collect();
        let t = ops.tau(&c);
        assert_eq!(t.len(), 1);
        let lab = ops.derivative().nk_labels[t.iter().next().unwrap().0[0]];
        assert_eq!((lab.b, lab.c), (v, w));
        let rhs = ops.gamma(&ops.boundary(&c));
        assert_eq!(ops.sigma(&t), rhs);
    }

    #[test]
    fn p_chains_of_cube3() {
        let k = catalogue("cube3").unwrap();
        let ops = ChainOperators::new(&k).unwrap();
        assert_eq!(ops.p_chain(1).len(), 48);
        assert_eq!(ops.p_chain(0).len(), 20);
        assert!(ops.boundary(&ops.p_chain(1)).is_zero());
    }

    #[test]
    fn identities_hold_on_small_spheres() {
        for name in ["4gon", "cube3", "zono(3,4)"] {
            let k = catalogue(name).unwrap();
            let r = ChainOperators::new(&k).unwrap().check_identities(30, 7);
            assert!(r.pass, "{name}: {:?}", r.failures);
        }
    }
}
