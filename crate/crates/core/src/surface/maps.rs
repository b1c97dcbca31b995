use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::{surface_stats, CombinatorialSurface, Face, SurfaceError};
use crate::group::TileGroup;

/// Orientation-preserving map sending corner `c` of face `f` to corner
/// `c + shift[f]` of face `face[f]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Automorphism {
    pub face: Vec<usize>,
    pub shift: Vec<usize>,
}

impl Automorphism {
    pub fn identity(faces: usize) -> Self {
        Automorphism {
            face: (0..faces).collect(),
            shift: vec![0; faces],
        }
    }

    /// Image of a half-side (equivalently a corner) `f * p + c`.
    pub fn apply(&self, half_side: usize, p: usize) -> usize {
        let (f, c) = (half_side / p, half_side % p);
        self.face[f] * p + (c + self.shift[f]) % p
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism, p: usize) -> Automorphism {
        let face = other.face.iter().map(|&g| self.face[g]).collect();
        let shift = other
            .face
            .iter()
            .zip(&other.shift)
            .map(|(&g, &s)| (s + self.shift[g]) % p)
            .collect();
        Automorphism { face, shift }
    }

    pub fn is_identity(&self) -> bool {
        self.face.iter().enumerate().all(|(i, &f)| i == f) && self.shift.iter().all(|&s| s == 0)
    }

    /// Checks that the map is a bijection commuting with the side pairing.
    pub fn verify(&self, s: &CombinatorialSurface) -> Result<(), SurfaceError> {
        let p = s.polygon_size();
        let f = s.face_count();
        if self.face.len() != f || self.shift.len() != f {
            return Err(SurfaceError::NotAnAutomorphism("wrong size".into()));
        }
        let images: HashSet<usize> = self.face.iter().copied().collect();
        if images.len() != f || self.face.iter().any(|&x| x >= f) {
            return Err(SurfaceError::NotAnAutomorphism(
                "face map is not a bijection".into(),
            ));
        }
        for h in 0..f * p {
            if self.apply(s.partner_of(h), p) != s.partner_of(self.apply(h, p)) {
                let (face, side) = s.side(h);
                return Err(SurfaceError::NotAnAutomorphism(format!(
                    "pairing not preserved at ({face},{side})"
                )));
            }
        }
        Ok(())
    }

    /// Map induced by a relabelling of faces: face `f` goes to the face whose
    /// labels are `relabel(labels(f))`, corner for corner.
    pub fn from_relabeling(
        s: &CombinatorialSurface,
        relabel: impl Fn(&[u32]) -> Vec<u32>,
    ) -> Result<Self, SurfaceError> {
        let by_label: std::collections::HashMap<&[u32], usize> = s
            .faces()
            .iter()
            .filter_map(|face| face.labels.as_deref().map(|l| (l, face.id)))
            .collect();
        let face = s
            .faces()
            .iter()
            .map(|face| {
                let labels = face
                    .labels
                    .as_deref()
                    .ok_or_else(|| SurfaceError::NotAnAutomorphism("unlabelled face".into()))?;
                by_label
                    .get(relabel(labels).as_slice())
                    .copied()
                    .ok_or_else(|| {
                        SurfaceError::NotAnAutomorphism(format!("no image for face {}", face.id))
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let map = Automorphism {
            shift: vec![0; face.len()],
            face,
        };
        map.verify(s)?;
        Ok(map)
    }
}

/// Extends `face 0, corner 0 ↦ face target_face, corner target_corner` along
/// the pairing; `None` if the extension is inconsistent.
fn extend(
    s: &CombinatorialSurface,
    target_face: usize,
    target_shift: usize,
) -> Option<Automorphism> {
    let p = s.polygon_size();
    let f = s.face_count();
    let mut face = vec![usize::MAX; f];
    let mut shift = vec![0; f];
    let mut used = vec![false; f];
    face[0] = target_face;
    shift[0] = target_shift;
    used[target_face] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for side in 0..p {
            let (y, ys) = s.neighbor(x, side);
            let (img, img_side) = s.neighbor(face[x], (side + shift[x]) % p);
            let want_shift = (img_side + p - ys) % p;
            if face[y] == usize::MAX {
                if used[img] {
                    return None;
                }
                used[img] = true;
                face[y] = img;
                shift[y] = want_shift;
                stack.push(y);
            } else if face[y] != img || shift[y] != want_shift {
                return None;
            }
        }
    }
    Some(Automorphism { face, shift })
}

/// All orientation-preserving automorphisms of a connected surface.
///
/// With `respect_labels`, only maps preserving every corner label are kept.
pub fn find_automorphisms(
    s: &CombinatorialSurface,
    respect_labels: bool,
) -> Result<Vec<Automorphism>, SurfaceError> {
    if surface_stats(s).components != 1 {
        return Err(SurfaceError::InvalidArgument(
            "surface must be connected".into(),
        ));
    }
    let p = s.polygon_size();
    let label = |f: usize, c: usize| s.faces()[f].labels.as_ref().map(|l| l[c]);
    let mut out = Vec::new();
    for target in 0..s.face_count() {
        for shift in 0..p {
            if let Some(a) = extend(s, target, shift) {
                let keeps = !respect_labels
                    || (0..s.face_count()).all(|f| {
                        (0..p).all(|c| label(f, c) == label(a.face[f], (c + a.shift[f]) % p))
                    });
                if keeps {
                    out.push(a);
                }
            }
        }
    }
    Ok(out)
}

/// Automorphisms of order exactly two.
pub fn find_involutions(
    s: &CombinatorialSurface,
    respect_labels: bool,
) -> Result<Vec<Automorphism>, SurfaceError> {
    let p = s.polygon_size();
    Ok(find_automorphisms(s, respect_labels)?
        .into_iter()
        .filter(|a| !a.is_identity() && a.compose(a, p).is_identity())
        .collect())
}

/// Quotient surface with its covering data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub surface: CombinatorialSurface,
    pub group_order: usize,
    /// Vertices of the cover fixed by some nontrivial element.
    pub branch_vertices: Vec<usize>,
    /// Preimage counts of quotient faces, edges and vertices.
    pub face_fibres: Vec<usize>,
    pub edge_fibres: Vec<usize>,
    pub vertex_fibres: Vec<usize>,
}

impl QuotientReport {
    /// Every face, edge and vertex has exactly `group_order` preimages.
    pub fn unbranched(&self) -> bool {
        let n = self.group_order;
        self.branch_vertices.is_empty()
            && [&self.face_fibres, &self.edge_fibres, &self.vertex_fibres]
                .iter()
                .all(|fib| fib.iter().all(|&k| k == n))
    }

    /// Riemann–Hurwitz: `χ(S) = |G|·χ(S/G) − Σ_v (|G| − #preimages(v))`.
    pub fn hurwitz_holds(&self, cover_chi: i64) -> bool {
        let n = self.group_order as i64;
        let ramification: i64 = self.vertex_fibres.iter().map(|&k| n - k as i64).sum();
        cover_chi == n * surface_stats(&self.surface).chi - ramification
    }
}

fn closure(generators: &[Automorphism], faces: usize, p: usize) -> Vec<Automorphism> {
    let id = Automorphism::identity(faces);
    let mut seen: HashSet<Automorphism> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in generators {
            let next = g.compose(&out[i], p);
            if seen.insert(next.clone()) {
                out.push(next);
            }
        }
        i += 1;
    }
    out
}

/// Quotient by the group generated by `generators`, which must act freely on faces.
pub fn quotient(
    s: &CombinatorialSurface,
    generators: &[Automorphism],
) -> Result<QuotientReport, SurfaceError> {
    let p = s.polygon_size();
    let nf = s.face_count();
    for g in generators {
        g.verify(s)?;
    }
    let group = closure(generators, nf, p);
    // rep[f] = (quotient face, shift taking corner c of f to corner c + shift of the representative)
    let mut rep = vec![(usize::MAX, 0); nf];
    let mut reps = Vec::new();
    for f in 0..nf {
        if rep[f].0 != usize::MAX {
            continue;
        }
        let q = reps.len();
        reps.push(f);
        for g in &group {
            let img = g.face[f];
            if rep[img].0 == q {
                return Err(SurfaceError::InvolutionFixesFace(img));
            }
            // corner c of img comes from corner c - shift of f
            rep[img] = (q, (p - g.shift[f]) % p);
        }
    }
    let mut partner = vec![usize::MAX; reps.len() * p];
    for (q, &f) in reps.iter().enumerate() {
        for side in 0..p {
            let (g, t) = s.neighbor(f, side);
            let (rq, sh) = rep[g];
            let target = rq * p + (t + sh) % p;
            if target == q * p + side {
                return Err(SurfaceError::InvolutionFixesEdge { face: f, side });
            }
            partner[q * p + side] = target;
        }
    }
    let labels_invariant = group.iter().all(|g| {
        (0..nf).all(|f| {
            let (a, b) = (&s.faces()[f].labels, &s.faces()[g.face[f]].labels);
            match (a, b) {
                (Some(a), Some(b)) => (0..p).all(|c| a[c] == b[(c + g.shift[f]) % p]),
                _ => false,
            }
        })
    });
    let faces = reps
        .iter()
        .enumerate()
        .map(|(id, &f)| Face {
            id,
            labels: if labels_invariant {
                s.faces()[f].labels.clone()
            } else {
                None
            },
            deck: None,
        })
        .collect();
    let surface = CombinatorialSurface::new(s.modulus(), p, faces, partner)?;

    let cover_v = s.vertices();
    let quot_v = surface.vertices();
    let project = |corner: usize| {
        let (f, c) = s.side(corner);
        let (q, sh) = rep[f];
        q * p + (c + sh) % p
    };
    let mut face_fibres = vec![0; reps.len()];
    for &(q, _) in &rep {
        face_fibres[q] += 1;
    }
    let mut edge_fibres = vec![0; surface.edge_count()];
    let edge_id = |h: usize, surf: &CombinatorialSurface| h.min(surf.partner_of(h));
    let quotient_edges: Vec<usize> = (0..surface.partner.len())
        .filter(|&h| h < surface.partner_of(h))
        .collect();
    for h in (0..s.partner.len()).filter(|&h| h < s.partner_of(h)) {
        let e = edge_id(project(h), &surface);
        let idx = quotient_edges
            .binary_search(&e)
            .expect("projected edge exists");
        edge_fibres[idx] += 1;
    }
    let mut vertex_fibres = vec![0; quot_v.len()];
    for cycle in &cover_v.cycles {
        vertex_fibres[quot_v.vertex_of[project(cycle[0])]] += 1;
    }
    let branch_vertices: BTreeSet<usize> = group
        .iter()
        .filter(|g| !g.is_identity())
        .flat_map(|g| {
            cover_v
                .cycles
                .iter()
                .enumerate()
                .filter(|(v, cycle)| cover_v.vertex_of[g.apply(cycle[0], p)] == *v)
                .map(|(v, _)| v)
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(QuotientReport {
        surface,
        group_order: group.len(),
        branch_vertices: branch_vertices.into_iter().collect(),
        face_fibres,
        edge_fibres,
        vertex_fibres,
    })
}

pub fn quotient_by_involution(
    s: &CombinatorialSurface,
    involution: &Automorphism,
) -> Result<QuotientReport, SurfaceError> {
    let p = s.polygon_size();
    if let Some(f) = (0..s.face_count()).find(|&f| involution.face[f] == f) {
        return Err(SurfaceError::InvolutionFixesFace(f));
    }
    if !involution.compose(involution, p).is_identity() {
        return Err(SurfaceError::NotAnAutomorphism(
            "map is not an involution".into(),
        ));
    }
    quotient(s, std::slice::from_ref(involution))
}

/// Quotient of a cover-mode surface by its deck group `Ab_T`, acting by
/// right multiplication.
pub fn quotient_by_deck(
    cover: &CombinatorialSurface,
    group: &TileGroup,
) -> Result<QuotientReport, SurfaceError> {
    let generators: Vec<Automorphism> = group
        .abelian_part()
        .iter()
        .map(|h| Automorphism {
            face: group
                .elements
                .iter()
                .map(|e| group.index_of(&group.mul(e, h)).expect("closed"))
                .collect(),
            shift: vec![0; group.order()],
        })
        .collect();
    quotient(cover, &generators)
}

/// Two sheets of a surface cross-glued along cut edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCover {
    pub surface: CombinatorialSurface,
    /// Vertices of the base that become branch points.
    pub branch_points: Vec<usize>,
    /// Exchange of the two sheets.
    pub sheet_swap: Automorphism,
}

/// Cuts are given as `(face, side)` pairs naming edges of `s`; they must not
/// share endpoints.
pub fn double_cover(
    s: &CombinatorialSurface,
    cuts: &[(usize, usize)],
) -> Result<DoubleCover, SurfaceError> {
    let p = s.polygon_size();
    let nf = s.face_count();
    let verts = s.vertices();
    let mut cut = vec![false; nf * p];
    let mut endpoints = BTreeSet::new();
    for &(f, side) in cuts {
        if f >= nf || side >= p {
            return Err(SurfaceError::InvalidArgument(format!(
                "no edge ({f},{side})"
            )));
        }
        let h = s.half_side(f, side);
        if cut[h] {
            return Err(SurfaceError::InvalidArgument(format!(
                "edge ({f},{side}) cut twice"
            )));
        }
        cut[h] = true;
        cut[s.partner_of(h)] = true;
        let a = verts.vertex_of[h];
        let b = verts.vertex_of[f * p + (side + 1) % p];
        for v in [a, b] {
            if !endpoints.insert(v) {
                return Err(SurfaceError::CutsNotDisjoint(v));
            }
        }
    }
    let total = nf * p;
    let mut partner = vec![0; 2 * total];
    for h in 0..total {
        let o = s.partner_of(h);
        let (same, other) = if cut[h] { (total, 0) } else { (0, total) };
        partner[h] = o + same;
        partner[h + total] = o + other;
    }
    let faces = (0..2 * nf)
        .map(|id| Face {
            id,
            labels: s.faces()[id % nf].labels.clone(),
            deck: Some((id / nf) as u32),
        })
        .collect();
    let surface = CombinatorialSurface::new(s.modulus(), p, faces, partner)?;
    let sheet_swap = Automorphism {
        face: (0..2 * nf).map(|f| (f + nf) % (2 * nf)).collect(),
        shift: vec![0; 2 * nf],
    };
    Ok(DoubleCover {
        surface,
        branch_points: endpoints.into_iter().collect(),
        sheet_swap,
    })
}
