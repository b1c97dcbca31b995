//! Walks on pentachord tiles: sequences of the generators
//! `1 = p_12, 2 = p_23, 3 = p_34, 4 = p_45, 5 = p_15`.

use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{normal_form, DihedralGroup, GroupElement, TileGroup, PENTACHORD_GENERATORS};
use crate::pitch::{PitchError, PitchSegment};

pub const GENERATOR_COUNT: u8 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("generator index {0} is outside 1..=5")]
    StepOutOfRange(i64),
    #[error("cannot parse walk {0:?}")]
    Parse(String),
    #[error("walks act on length-5 segments, got length {0}")]
    WrongLength(usize),
    #[error(transparent)]
    Pitch(#[from] PitchError),
}

/// Steps in the order they are taken.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Walk {
    steps: Vec<u8>,
}

impl Walk {
    pub fn new(steps: Vec<u8>) -> Result<Self, WalkError> {
        if let Some(&bad) = steps.iter().find(|&&k| !(1..=GENERATOR_COUNT).contains(&k)) {
            return Err(WalkError::StepOutOfRange(bad as i64));
        }
        Ok(Walk { steps })
    }

    /// Reads a printed product, either `3241…` or `3,2,4,1,…`. The leftmost
    /// factor acts last, so the steps are the reversed digits.
    pub fn parse_product(text: &str) -> Result<Self, WalkError> {
        let text = text.trim();
        let digits: Vec<i64> = if text.contains(',') || text.contains(' ') {
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i64>().map_err(|_| WalkError::Parse(text.into())))
                .collect::<Result<_, _>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(i64::from)
                        .ok_or_else(|| WalkError::Parse(text.into()))
                })
                .collect::<Result<_, _>>()?
        };
        if let Some(&bad) = digits
            .iter()
            .find(|&&k| !(1..=GENERATOR_COUNT as i64).contains(&k))
        {
            return Err(WalkError::StepOutOfRange(bad));
        }
        Walk::new(digits.iter().rev().map(|&k| k as u8).collect())
    }

    pub fn steps(&self) -> &[u8] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The walk as a printed product, last step first.
    pub fn printed(&self) -> Vec<u8> {
        self.steps.iter().rev().copied().collect()
    }

    pub fn push(&mut self, step: u8) -> Result<(), WalkError> {
        if !(1..=GENERATOR_COUNT).contains(&step) {
            return Err(WalkError::StepOutOfRange(step as i64));
        }
        self.steps.push(step);
        Ok(())
    }

    pub fn pop(&mut self) -> Option<u8> {
        self.steps.pop()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Walk) -> Walk {
        Walk {
            steps: self.steps.iter().chain(&other.steps).copied().collect(),
        }
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(u8::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Cancels adjacent equal steps until none remain.
pub fn reduce(w: &Walk) -> Walk {
    let mut stack: Vec<u8> = Vec::with_capacity(w.len());
    for &k in &w.steps {
        if stack.last() == Some(&k) {
            stack.pop();
        } else {
            stack.push(k);
        }
    }
    Walk { steps: stack }
}

pub fn generator_pair(step: u8) -> (usize, usize) {
    PENTACHORD_GENERATORS[step as usize - 1]
}

pub fn evaluate(w: &Walk, s: &PitchSegment) -> Result<PitchSegment, WalkError> {
    if s.len() != 5 {
        return Err(WalkError::WrongLength(s.len()));
    }
    w.steps.iter().try_fold(s.clone(), |cur, &k| {
        let (i, j) = generator_pair(k);
        Ok(cur.contextual_inversion(i, j)?)
    })
}

/// `p_{k_n} ⋯ p_{k_1}` for the walk `(k_1, …, k_n)`.
pub fn to_group(w: &Walk, modulus: u32) -> GroupElement {
    let word: Vec<(usize, usize)> = w.steps.iter().map(|&k| generator_pair(k)).collect();
    normal_form(&word, 5, modulus).expect("generator indices are valid")
}

/// `t_1^a t_2^b t_3^c t_4^d p^ε` with `p = p_12` and `p_{i+1} = p t_i`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkNormalForm {
    /// Signed exponents of `t_1..t_4` as produced by the rewriting.
    pub exponents: [i64; 4],
    pub parity: u8,
}

impl WalkNormalForm {
    /// Exponents reduced into `[0, m)`.
    pub fn reduced(&self, modulus: u32) -> [u32; 4] {
        self.exponents.map(|e| e.rem_euclid(modulus as i64) as u32)
    }

    /// The group element, with `t_i` realised as `p_12 ∘ p_{i+1}`.
    pub fn to_group(&self, modulus: u32) -> GroupElement {
        let p = GroupElement::contextual(5, modulus, 1, 2).expect("valid");
        let mut acc = GroupElement::identity(5, modulus);
        for (i, &e) in self.exponents.iter().enumerate() {
            let (a, b) = PENTACHORD_GENERATORS[i + 1];
            let t = p.mul(&GroupElement::contextual(5, modulus, a, b).expect("valid"));
            let t = if e < 0 { t.inverse() } else { t };
            for _ in 0..e.unsigned_abs() % modulus as u64 {
                acc = acc.mul(&t);
            }
        }
        if self.parity == 1 {
            acc = acc.mul(&p);
        }
        acc
    }
}

impl fmt::Display for WalkNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("t_{}", i + 1)),
                _ => parts.push(format!("t_{}^{}", i + 1, e)),
            }
        }
        if self.parity == 1 {
            parts.push("p".into());
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Rewrites a walk into normal form by the segment rules.
///
/// The printed product is split into segments, each beginning at an
/// occurrence of `p`. A segment without a leading `p` replaces `p_{i+1}` by
/// `t_i^{-1}` at odd positions and by `t_i` at even positions; a segment with
/// a leading `p` drops it and swaps the two cases. Odd-length segments leave a
/// trailing `p`, which cancels the leading `p` of the next segment.
pub fn normalize(w: &Walk) -> WalkNormalForm {
    let printed = reduce(w).printed();
    let mut segments: Vec<&[u8]> = Vec::new();
    let mut start = 0;
    for i in 1..printed.len() {
        if printed[i] == 1 {
            segments.push(&printed[start..i]);
            start = i;
        }
    }
    if !printed.is_empty() {
        segments.push(&printed[start..]);
    }
    let mut nf = WalkNormalForm::default();
    let mut pending = false;
    for seg in segments {
        let leading = seg.first() == Some(&1);
        let body = if leading { &seg[1..] } else { seg };
        // A pending p and a leading p cancel.
        let starts_with_p = leading != pending;
        let length = body.len() + usize::from(starts_with_p);
        for (pos, &k) in body.iter().enumerate() {
            let odd = pos % 2 == 0;
            let sign = if odd != starts_with_p { -1 } else { 1 };
            nf.exponents[k as usize - 2] += sign;
        }
        pending = length % 2 == 1;
    }
    nf.parity = u8::from(pending);
    nf
}

/// Undirected Cayley graph; vertices are numbered in breadth-first order
/// from the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyGraph {
    pub vertices: Vec<String>,
    /// `(u, v, gen)` with `u < v` and `gen` 1-based.
    pub edges: Vec<(usize, usize, usize)>,
}

impl CayleyGraph {
    /// Every generator is assumed to be an involution.
    pub fn build<T: Clone + Eq + std::hash::Hash>(
        elements: &[T],
        generators: &[T],
        mul: impl Fn(&T, &T) -> T,
        label: impl Fn(&T) -> String,
    ) -> Self {
        let index: std::collections::HashMap<&T, usize> =
            elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut edges = Vec::new();
        for (i, e) in elements.iter().enumerate() {
            for (k, g) in generators.iter().enumerate() {
                let j = index[&mul(g, e)];
                if i < j {
                    edges.push((i, j, k + 1));
                }
            }
        }
        edges.sort();
        CayleyGraph {
            vertices: elements.iter().map(label).collect(),
            edges,
        }
    }

    pub fn of_tile_group(group: &TileGroup) -> Self {
        CayleyGraph::build(
            &group.elements,
            &group.generators,
            |a, b| group.mul(a, b),
            |e| format!("({},{},{})", e.parity, e.shift, e.deck),
        )
    }

    pub fn of_dihedral(group: &DihedralGroup) -> Self {
        let m = group.modulus;
        CayleyGraph::build(
            &group.elements,
            &group.generators,
            |a, b| DihedralGroup::mul(m, *a, *b),
            |e| format!("({},{})", e.0, e.1),
        )
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(u, v, _) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph cayley {\n");
        for (i, label) in self.vertices.iter().enumerate() {
            writeln!(out, "  g{i} [label=\"{label}\"];").expect("string write");
        }
        for &(u, v, k) in &self.edges {
            writeln!(out, "  g{u} -- g{v} [gen={k}];").expect("string write");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_graphml(&self) -> String {
        let mut out = String::from(concat!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
            "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n",
            "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n",
            "  <key id=\"gen\" for=\"edge\" attr.name=\"gen\" attr.type=\"int\"/>\n",
            "  <graph id=\"cayley\" edgedefault=\"undirected\">\n",
        ));
        for (i, label) in self.vertices.iter().enumerate() {
            writeln!(
                out,
                "    <node id=\"g{i}\"><data key=\"label\">{label}</data></node>"
            )
            .expect("string write");
        }
        for (n, &(u, v, k)) in self.edges.iter().enumerate() {
            writeln!(
                out,
                "    <edge id=\"e{n}\" source=\"g{u}\" target=\"g{v}\"><data key=\"gen\">{k}</data></edge>"
            )
            .expect("string write");
        }
        out.push_str("  </graph>\n</graphml>\n");
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices.iter().enumerate()
                .map(|(i, l)| serde_json::json!({"id": format!("g{i}"), "label": l}))
                .collect::<Vec<_>>(),
            "edges": self.edges.iter()
                .map(|&(u, v, k)| serde_json::json!({"source": format!("g{u}"), "target": format!("g{v}"), "gen": k}))
                .collect::<Vec<_>>(),
        })
    }

    /// Inverse of [`CayleyGraph::to_json_value`].
    pub fn from_json_value(value: &serde_json::Value) -> Result<Self, String> {
        let node = |v: &serde_json::Value| -> Result<usize, String> {
            v.as_str()
                .and_then(|s| s.strip_prefix('g'))
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| format!("bad node id {v}"))
        };
        let vertices = value["vertices"]
            .as_array()
            .ok_or("missing vertices")?
            .iter()
            .enumerate()
            .map(|(i, v)| match (node(&v["id"]), v["label"].as_str()) {
                (Ok(id), Some(label)) if id == i => Ok(label.to_string()),
                _ => Err(format!("bad vertex {v}")),
            })
            .collect::<Result<Vec<_>, String>>()?;
        let edges = value["edges"]
            .as_array()
            .ok_or("missing edges")?
            .iter()
            .map(|e| {
                let gen = e["gen"].as_u64().ok_or_else(|| format!("bad edge {e}"))?;
                Ok((node(&e["source"])?, node(&e["target"])?, gen as usize))
            })
            .collect::<Result<Vec<_>, String>>()?;
        if edges
            .iter()
            .any(|&(u, v, _)| u >= vertices.len() || v >= vertices.len())
        {
            return Err("edge endpoint out of range".into());
        }
        Ok(CayleyGraph { vertices, edges })
    }
}
