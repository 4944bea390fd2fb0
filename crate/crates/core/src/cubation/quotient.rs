use std::collections::HashMap;

use serde::Serialize;

use super::immersion::{Immersion, Sector, Side};
use super::jposet::JPoset;
use super::CubationError;
use crate::poset::{validate_cubical, CubicalComplex, ElemId, OrderIndex, RankedPoset};

/// A class of the quotient: blow-up elements sharing the flag, the marked
/// subset and the sector of `t` relative to the largest face of the flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KClass {
    pub chain: usize,
    pub c1: u32,
    pub sector: Sector,
}

impl KClass {
    /// Rank in the dual complex: `#On + |C| - |C_1|`.
    pub fn dual_rank(&self, chain_len: usize) -> usize {
        self.sector.iter().filter(|&&s| s == Side::On).count() + chain_len
            - self.c1.count_ones() as usize
    }
}

/// The quotient `K` of the blow-up poset and its dual cubical complex.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub classes: Vec<KClass>,
    /// Class of each blow-up element.
    pub class_of: Vec<usize>,
    /// `K` itself, ranked by `d - dual_rank`.
    pub k: RankedPoset,
    /// The dual of `K`, validated as a cubical complex.
    pub k_op: CubicalComplex,
}

impl Quotient {
    pub fn build(imm: &Immersion, j: &JPoset) -> Result<Self, CubationError> {
        let d = imm.dim();
        let mut keys: Vec<KClass> = Vec::with_capacity(j.len());
        for (x, e) in j.elements.iter().enumerate() {
            let top = j.max_chain(x);
            let sector = imm
                .sector(top, e.t)
                .expect("t lies above every face of its flags")
                .clone();
            keys.push(KClass {
                chain: e.chain,
                c1: e.c1,
                sector,
            });
        }
        let k_rank = |c: &KClass| d - c.dual_rank(j.chains[c.chain].len());
        let mut classes = keys.clone();
        classes.sort_by(|a, b| k_rank(a).cmp(&k_rank(b)).then_with(|| a.cmp(b)));
        classes.dedup();
        let index: HashMap<&KClass, usize> =
            classes.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let class_of: Vec<usize> = keys.iter().map(|k| index[k]).collect();
        let ranks: Vec<usize> = classes.iter().map(k_rank).collect();

        let mut covers = Vec::new();
        let mut long = Vec::new();
        for (x, y) in j.poset.covers() {
            let (a, b) = (class_of[x], class_of[y]);
            if a == b {
                continue;
            }
            match ranks[b].checked_sub(ranks[a]) {
                Some(1) => covers.push((a, b)),
                Some(n) if n >= 2 => long.push((a, b)),
                _ => {
                    return Err(CubationError::QuotientNotCubical(format!(
                        "blow-up relation between classes {a} and {b} of ranks {} and {}",
                        ranks[a], ranks[b]
                    )))
                }
            }
        }
        let k = RankedPoset::new(ranks, covers)
            .map_err(|e| CubationError::QuotientNotCubical(e.to_string()))?;
        let order = OrderIndex::new(&k);
        if let Some(&(a, b)) = long.iter().find(|&&(a, b)| !order.lt(a, b)) {
            return Err(CubationError::QuotientNotCubical(format!(
                "relation {a} < {b} is not generated by covers"
            )));
        }
        if k.max_rank() != Some(d) {
            return Err(CubationError::QuotientNotCubical(format!(
                "top rank {:?}, expected {d}",
                k.max_rank()
            )));
        }
        let k_op = validate_cubical(k.dual())
            .map_err(|e| CubationError::QuotientNotCubical(e.to_string()))?;
        Ok(Self {
            classes,
            class_of,
            k,
            k_op,
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Classes whose flag ends at `t`.
    pub fn classes_ending_at<'a>(
        &'a self,
        j: &'a JPoset,
        t: usize,
    ) -> impl Iterator<Item = ElemId> + 'a {
        (0..self.len()).filter(move |&c| j.chains[self.classes[c].chain].last() == Some(&t))
    }
}
