//! JSON interchange: posets, arrangements, immersions and integer vectors.
//!
//! Poset documents look like
//! `{"elements":[{"id":0,"rank":0},...],"covers":[[0,4],...]}`. On input,
//! external ids are relabelled densely in `(rank, id)` order; on output the
//! dense index is the id, so isomorphic constructions with the same element
//! order serialize identically.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

use crate::poset::{ElemId, PosetError, RankedPoset};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

fn schema(msg: impl Into<String>) -> JsonError {
    JsonError::Schema(msg.into())
}

pub(crate) fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub(crate) fn serialize_bigints<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        match x.to_i64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

#[derive(Serialize, Deserialize)]
struct ElementDoc {
    id: i64,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
struct PosetDoc {
    elements: Vec<ElementDoc>,
    covers: Vec<(i64, i64)>,
}

/// Parses a poset document. Returns the poset and, for each dense index, the
/// external id it came from.
pub fn parse_poset(text: &str) -> Result<(RankedPoset, Vec<i64>), JsonError> {
    let doc: PosetDoc = serde_json::from_str(text)?;
    poset_from_doc(doc)
}

pub fn poset_from_value(v: &Value) -> Result<(RankedPoset, Vec<i64>), JsonError> {
    let doc: PosetDoc = serde_json::from_value(v.clone())?;
    poset_from_doc(doc)
}

fn poset_from_doc(doc: PosetDoc) -> Result<(RankedPoset, Vec<i64>), JsonError> {
    let mut elems: Vec<(usize, i64)> = doc.elements.iter().map(|e| (e.rank, e.id)).collect();
    elems.sort_unstable();
    let mut index = HashMap::with_capacity(elems.len());
    for (i, &(_, id)) in elems.iter().enumerate() {
        if index.insert(id, i).is_some() {
            return Err(schema(format!("duplicate element id {id}")));
        }
    }
    let lookup = |id: i64| {
        index
            .get(&id)
            .copied()
            .ok_or_else(|| schema(format!("cover mentions unknown id {id}")))
    };
    let mut covers = Vec::with_capacity(doc.covers.len());
    for (lo, hi) in doc.covers {
        covers.push((lookup(lo)?, lookup(hi)?));
    }
    let ranks = elems.iter().map(|&(r, _)| r).collect();
    let poset = RankedPoset::new(ranks, covers)?;
    Ok((poset, elems.into_iter().map(|(_, id)| id).collect()))
}

/// Poset document with dense ids.
pub fn poset_to_value(p: &RankedPoset) -> Value {
    let doc = PosetDoc {
        elements: (0..p.len())
            .map(|i| ElementDoc {
                id: i as i64,
                rank: p.rank(i),
            })
            .collect(),
        covers: p
            .covers()
            .into_iter()
            .map(|(a, b)| (a as i64, b as i64))
            .collect(),
    };
    serde_json::to_value(doc).expect("poset documents always serialize")
}

/// Poset document with an extra `"labels"` object mapping each id to a label.
pub fn labelled_poset_to_value<L: Serialize>(p: &RankedPoset, labels: &[L]) -> Value {
    let mut v = poset_to_value(p);
    let map: BTreeMap<String, Value> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| {
            (
                i.to_string(),
                serde_json::to_value(l).expect("labels serialize"),
            )
        })
        .collect();
    v["labels"] = serde_json::to_value(map).expect("labels serialize");
    v
}

/// A list of integer vectors: `[[1,2,3],[4,5,6]]`. Entries may be JSON
/// integers or decimal strings for values beyond 64 bits.
pub fn parse_vectors(text: &str) -> Result<Vec<Vec<BigInt>>, JsonError> {
    let v: Value = serde_json::from_str(text)?;
    let rows = v
        .as_array()
        .ok_or_else(|| schema("expected an array of integer arrays"))?;
    rows.iter()
        .map(|row| {
            let row = row
                .as_array()
                .ok_or_else(|| schema("expected an array of integer arrays"))?;
            row.iter().map(parse_bigint).collect()
        })
        .collect()
}

pub(crate) fn parse_bigint(v: &Value) -> Result<BigInt, JsonError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| schema(format!("{n} is not an integer"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| schema(format!("{s:?} is not an integer"))),
        other => Err(schema(format!("{other} is not an integer"))),
    }
}

/// Looks up an element of a parsed poset by its external id.
pub fn find_external(ids: &[i64], id: i64) -> Option<ElemId> {
    ids.iter().position(|&x| x == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_relabels_by_rank() {
        let text = r#"{"elements":[{"id":10,"rank":1},{"id":3,"rank":0},{"id":7,"rank":0}],
                       "covers":[[3,10],[7,10]]}"#;
        let (p, ids) = parse_poset(text).unwrap();
        assert_eq!(ids, vec![3, 7, 10]);
        assert_eq!(p.covers(), vec![(0, 2), (1, 2)]);
        let v = poset_to_value(&p);
        let (q, _) = poset_from_value(&v).unwrap();
        assert!(p.same_hasse_diagram(&q));
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(parse_poset("{"), Err(JsonError::Parse(_))));
        let dup = r#"{"elements":[{"id":1,"rank":0},{"id":1,"rank":0}],"covers":[]}"#;
        assert!(matches!(parse_poset(dup), Err(JsonError::Schema(_))));
        let dangling = r#"{"elements":[{"id":1,"rank":0}],"covers":[[1,2]]}"#;
        assert!(matches!(parse_poset(dangling), Err(JsonError::Schema(_))));
        let skip = r#"{"elements":[{"id":1,"rank":0},{"id":2,"rank":2}],"covers":[[1,2]]}"#;
        assert!(matches!(
            parse_poset(skip),
            Err(JsonError::Poset(PosetError::NotGraded(_)))
        ));
    }

    #[test]
    fn big_vectors() {
        let v = parse_vectors(r#"[[1, "123456789012345678901234567890"]]"#).unwrap();
        assert_eq!(v[0][1].to_string(), "123456789012345678901234567890");
    }
}
