//! Closed combinatorial surfaces glued from polygons.
//!
//! Every face is a `p`-gon whose corners `0..p` run in the face's own
//! orientation; side `s` joins corner `s` to corner `s + 1`. Two paired sides
//! are glued with opposite orientations (corner `s` of one face meets corner
//! `s' + 1` of the other), so every surface built here is orientable.

mod build;
mod formulas;
mod maps;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::GroupError;

pub use build::{
    bring_surface, build_cover_surface, build_orbit_surface, build_surface, from_polygons,
    tetrahedron, vertex_cycle, BuildMode, OrbitSeeds,
};
pub use formulas::{
    curvature_identity_holds, flag_identity_holds, formula_report, genus_from_tiling,
    incidence_for_length, table_row, triangle_group_order, vertex_incidence_check, FormulaReport,
    IncidenceReport, TriangleGroupOrder,
};
pub use maps::{
    double_cover, find_automorphisms, find_involutions, quotient, quotient_by_deck,
    quotient_by_involution, Automorphism, DoubleCover, QuotientReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invalid side pairing: {0}")]
    InvalidPairing(String),
    #[error("side {side} of face {face} would be glued to itself")]
    GluingInconsistent { face: usize, side: usize },
    #[error("labels disagree across side {side} of face {face}")]
    LabelMismatch { face: usize, side: usize },
    #[error("cut edges share the vertex {0}")]
    CutsNotDisjoint(usize),
    #[error("automorphism fixes face {0}")]
    InvolutionFixesFace(usize),
    #[error("automorphism fixes the edge at side {side} of face {face}")]
    InvolutionFixesEdge { face: usize, side: usize },
    #[error("map is not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("signature {{{p},{q}}} is Euclidean; the order formula does not apply")]
    EuclideanSignature { p: u64, q: u64 },
    #[error("formula gives the non-integer value {numerator}/{denominator}")]
    NonIntegerGenus { numerator: i64, denominator: i64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// One polygon; `labels[c]` is the value carried by corner `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deck: Option<u32>,
}

/// Faces plus a fixed-point-free involution on their sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SurfaceFile", into = "SurfaceFile")]
pub struct CombinatorialSurface {
    modulus: Option<u32>,
    p: usize,
    faces: Vec<Face>,
    /// Indexed by half-side `f * p + s`.
    partner: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SurfaceFile {
    #[serde(rename = "mod", default, skip_serializing_if = "Option::is_none")]
    modulus: Option<u32>,
    p: usize,
    faces: Vec<Face>,
    pairing: Vec<[usize; 4]>,
}

impl TryFrom<SurfaceFile> for CombinatorialSurface {
    type Error = SurfaceError;
    fn try_from(file: SurfaceFile) -> Result<Self, Self::Error> {
        let p = file.p;
        if p < 2 {
            return Err(SurfaceError::InvalidPairing(format!("polygon size {p}")));
        }
        let mut faces = file.faces;
        faces.sort_by_key(|f| f.id);
        if faces.iter().enumerate().any(|(i, f)| f.id != i) {
            return Err(SurfaceError::InvalidPairing("face ids must be 0..F".into()));
        }
        let mut partner = vec![usize::MAX; faces.len() * p];
        for [f, s, f2, s2] in file.pairing {
            if f >= faces.len() || f2 >= faces.len() || s >= p || s2 >= p {
                return Err(SurfaceError::InvalidPairing(format!(
                    "entry [{f},{s},{f2},{s2}] out of range"
                )));
            }
            let (a, b) = (f * p + s, f2 * p + s2);
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(SurfaceError::InvalidPairing(format!(
                    "side ({f},{s}) or ({f2},{s2}) paired twice"
                )));
            }
            partner[a] = b;
            partner[b] = a;
        }
        CombinatorialSurface::new(file.modulus, p, faces, partner)
    }
}

impl From<CombinatorialSurface> for SurfaceFile {
    fn from(s: CombinatorialSurface) -> Self {
        let p = s.p;
        let pairing = (0..s.partner.len())
            .filter(|&h| h < s.partner[h])
            .map(|h| {
                let o = s.partner[h];
                [h / p, h % p, o / p, o % p]
            })
            .collect();
        SurfaceFile {
            modulus: s.modulus,
            p,
            faces: s.faces,
            pairing,
        }
    }
}

impl CombinatorialSurface {
    /// Validates and assembles a surface; `partner` is indexed by `f * p + s`.
    pub fn new(
        modulus: Option<u32>,
        p: usize,
        faces: Vec<Face>,
        partner: Vec<usize>,
    ) -> Result<Self, SurfaceError> {
        let surface = CombinatorialSurface {
            modulus,
            p,
            faces,
            partner,
        };
        surface.validate()?;
        Ok(surface)
    }

    /// Checks the closed-surface invariants: the pairing is a total
    /// fixed-point-free involution, and labels agree across glued sides.
    pub fn validate(&self) -> Result<(), SurfaceError> {
        let p = self.p;
        if self.partner.len() != self.faces.len() * p {
            return Err(SurfaceError::InvalidPairing(format!(
                "{} sides listed for {} faces of size {p}",
                self.partner.len(),
                self.faces.len()
            )));
        }
        for (h, &o) in self.partner.iter().enumerate() {
            if o >= self.partner.len() {
                return Err(SurfaceError::InvalidPairing(format!(
                    "side ({},{}) is unpaired",
                    h / p,
                    h % p
                )));
            }
            if o == h {
                return Err(SurfaceError::GluingInconsistent {
                    face: h / p,
                    side: h % p,
                });
            }
            if self.partner[o] != h {
                return Err(SurfaceError::InvalidPairing(format!(
                    "pairing is not an involution at ({},{})",
                    h / p,
                    h % p
                )));
            }
        }
        for (i, face) in self.faces.iter().enumerate() {
            if face.id != i {
                return Err(SurfaceError::InvalidPairing("face ids must be 0..F".into()));
            }
            if let Some(l) = &face.labels {
                if l.len() != p {
                    return Err(SurfaceError::InvalidPairing(format!(
                        "face {i} has {} labels, expected {p}",
                        l.len()
                    )));
                }
            }
        }
        for h in 0..self.partner.len() {
            let (f, s) = (h / p, h % p);
            let (g, t) = self.side(self.partner[h]);
            if let (Some(a), Some(b)) = (&self.faces[f].labels, &self.faces[g].labels) {
                if a[s] != b[(t + 1) % p] || a[(s + 1) % p] != b[t] {
                    return Err(SurfaceError::LabelMismatch { face: f, side: s });
                }
            }
        }
        Ok(())
    }

    pub fn modulus(&self) -> Option<u32> {
        self.modulus
    }

    pub fn polygon_size(&self) -> usize {
        self.p
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn half_side(&self, face: usize, side: usize) -> usize {
        face * self.p + side
    }

    pub fn side(&self, half_side: usize) -> (usize, usize) {
        (half_side / self.p, half_side % self.p)
    }

    /// Face and side glued to side `side` of `face`.
    pub fn neighbor(&self, face: usize, side: usize) -> (usize, usize) {
        self.side(self.partner[self.half_side(face, side)])
    }

    pub(crate) fn partner_of(&self, half_side: usize) -> usize {
        self.partner[half_side]
    }

    /// Next corner around the same vertex: cross the side starting at the
    /// corner, arrive at the end corner of the partner side.
    pub fn next_corner(&self, corner: usize) -> usize {
        let (g, t) = self.side(self.partner[corner]);
        g * self.p + (t + 1) % self.p
    }

    /// Vertices as cycles of corners, ordered by smallest corner.
    pub fn vertices(&self) -> Vertices {
        let n = self.partner.len();
        let mut vertex_of = vec![usize::MAX; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if vertex_of[start] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cycle = Vec::new();
            let mut c = start;
            while vertex_of[c] == usize::MAX {
                vertex_of[c] = id;
                cycle.push(c);
                c = self.next_corner(c);
            }
            cycles.push(cycle);
        }
        Vertices { cycles, vertex_of }
    }

    /// Connected component index of every face, numbered by first face.
    pub fn face_components(&self) -> Vec<usize> {
        let f = self.faces.len();
        let mut comp = vec![usize::MAX; f];
        let mut next = 0;
        for start in 0..f {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(x) = stack.pop() {
                for s in 0..self.p {
                    let (g, _) = self.neighbor(x, s);
                    if comp[g] == usize::MAX {
                        comp[g] = next;
                        stack.push(g);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Label carried by a vertex, when all its corners agree.
    pub fn vertex_label(&self, cycle: &[usize]) -> Option<u32> {
        let mut value = None;
        for &c in cycle {
            let (f, k) = self.side(c);
            let v = self.faces[f].labels.as_ref()?[k];
            match value {
                None => value = Some(v),
                Some(prev) if prev != v => return None,
                _ => {}
            }
        }
        value
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("surfaces serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertices {
    pub cycles: Vec<Vec<usize>>,
    /// Vertex id of every corner.
    pub vertex_of: Vec<usize>,
}

impl Vertices {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.cycles[v].len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentStats {
    #[serde(rename = "F")]
    pub faces: usize,
    #[serde(rename = "E")]
    pub edges: usize,
    #[serde(rename = "V")]
    pub vertices: usize,
    pub chi: i64,
    pub genus: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceStats {
    #[serde(rename = "F")]
    pub faces: usize,
    #[serde(rename = "V")]
    pub vertices: usize,
    #[serde(rename = "E")]
    pub edges: usize,
    pub chi: i64,
    /// Genus when the surface is connected.
    pub genus: Option<i64>,
    pub components: usize,
    pub component_stats: Vec<ComponentStats>,
    /// Vertex degree → number of vertices, written as `[[degree, count], …]`.
    #[serde(with = "degree_pairs")]
    pub degree_profile: BTreeMap<usize, usize>,
    /// `{p, q}` when every vertex has the same degree `q`.
    pub regular_type: Option<(usize, usize)>,
}

mod degree_pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<usize, usize>,
        ser: S,
    ) -> Result<S::Ok, S::Error> {
        map.iter().collect::<Vec<_>>().serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> Result<BTreeMap<usize, usize>, D::Error> {
        Ok(Vec::<(usize, usize)>::deserialize(de)?
            .into_iter()
            .collect())
    }
}

impl SurfaceStats {
    pub fn genera(&self) -> Vec<i64> {
        self.component_stats.iter().map(|c| c.genus).collect()
    }
}

impl fmt::Display for SurfaceStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.genera().iter().map(i64::to_string).collect();
        write!(
            f,
            "F={} E={} V={} chi={} g={} components={}",
            self.faces,
            self.edges,
            self.vertices,
            self.chi,
            g.join(","),
            self.components
        )
    }
}

pub fn surface_stats(s: &CombinatorialSurface) -> SurfaceStats {
    let verts = s.vertices();
    let comp = s.face_components();
    let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
    let mut per = vec![(0usize, 0usize, 0usize); ncomp];
    for &c in &comp {
        per[c].0 += 1;
        per[c].1 += s.p;
    }
    for cycle in &verts.cycles {
        per[comp[cycle[0] / s.p]].2 += 1;
    }
    let component_stats: Vec<ComponentStats> = per
        .into_iter()
        .map(|(f, half, v)| {
            let e = half / 2;
            let chi = v as i64 - e as i64 + f as i64;
            ComponentStats {
                faces: f,
                edges: e,
                vertices: v,
                chi,
                genus: 1 - chi / 2,
            }
        })
        .collect();
    let mut degree_profile = BTreeMap::new();
    for cycle in &verts.cycles {
        *degree_profile.entry(cycle.len()).or_insert(0) += 1;
    }
    let regular_type = (degree_profile.len() == 1)
        .then(|| (s.p, *degree_profile.keys().next().expect("one degree")));
    let (faces, edges, vertices) = (s.face_count(), s.edge_count(), verts.len());
    let chi = vertices as i64 - edges as i64 + faces as i64;
    SurfaceStats {
        faces,
        vertices,
        edges,
        chi,
        genus: (ncomp == 1).then(|| 1 - chi / 2),
        components: ncomp,
        component_stats,
        degree_profile,
        regular_type,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere_digon() -> CombinatorialSurface {
        let faces = (0..2)
            .map(|id| Face {
                id,
                labels: None,
                deck: None,
            })
            .collect();
        CombinatorialSurface::new(None, 2, faces, vec![2, 3, 0, 1]).unwrap()
    }

    #[test]
    fn two_digons_make_a_sphere() {
        let s = sphere_digon();
        let st = surface_stats(&s);
        assert_eq!(
            (st.faces, st.edges, st.vertices, st.chi, st.genus),
            (2, 2, 2, 2, Some(0))
        );
        assert_eq!(st.to_string(), "F=2 E=2 V=2 chi=2 g=0 components=1");
    }

    #[test]
    fn rejects_bad_pairings() {
        let faces: Vec<Face> = (0..2)
            .map(|id| Face {
                id,
                labels: None,
                deck: None,
            })
            .collect();
        assert!(matches!(
            CombinatorialSurface::new(None, 2, faces.clone(), vec![0, 3, 2, 1]),
            Err(SurfaceError::GluingInconsistent { face: 0, side: 0 })
        ));
        assert!(matches!(
            CombinatorialSurface::new(None, 2, faces, vec![2, 3, 1, 0]),
            Err(SurfaceError::InvalidPairing(_))
        ));
    }

    #[test]
    fn label_mismatch_detected() {
        let faces = vec![
            Face {
                id: 0,
                labels: Some(vec![0, 1]),
                deck: None,
            },
            Face {
                id: 1,
                labels: Some(vec![0, 1]),
                deck: None,
            },
        ];
        assert!(matches!(
            CombinatorialSurface::new(Some(12), 2, faces, vec![2, 3, 0, 1]),
            Err(SurfaceError::LabelMismatch { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let s = sphere_digon();
        let text = s.to_json();
        assert_eq!(
            text,
            r#"{"p":2,"faces":[{"id":0},{"id":1}],"pairing":[[0,0,1,0],[0,1,1,1]]}"#
        );
        assert_eq!(CombinatorialSurface::from_json(&text).unwrap(), s);
        let bad = r#"{"p":2,"faces":[{"id":0},{"id":1}],"pairing":[[0,0,1,0]]}"#;
        assert!(CombinatorialSurface::from_json(bad).is_err());
    }
}
