use serde::{Deserialize, Serialize};

use super::{surface_stats, CombinatorialSurface, SurfaceError, SurfaceStats};
use crate::group::hurwitz_bound_holds;

/// Orders of the extended triangle group `Δ_g(2,p,q)` and its rotation subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleGroupOrder {
    pub full: u64,
    pub von_dyck: u64,
}

/// `8pq(g − 1) / ((p − 2)(q − 2) − 4)`.
pub fn triangle_group_order(p: u64, q: u64, g: u64) -> Result<TriangleGroupOrder, SurfaceError> {
    if p < 2 || q < 2 {
        return Err(SurfaceError::InvalidArgument(format!("p={p}, q={q}")));
    }
    let den = (p as i64 - 2) * (q as i64 - 2) - 4;
    if den == 0 {
        return Err(SurfaceError::EuclideanSignature { p, q });
    }
    let num = 8 * p as i64 * q as i64 * (g as i64 - 1);
    if num % den != 0 || num / den <= 0 {
        return Err(SurfaceError::NonIntegerGenus {
            numerator: num,
            denominator: den,
        });
    }
    let full = (num / den) as u64;
    Ok(TriangleGroupOrder {
        full,
        von_dyck: full / 2,
    })
}

/// Genus of a closed surface tiled by `faces` regular `p`-gons, `q` at each
/// vertex: `g = 1 + F(pq − 2p − 2q)/(4q)`.
pub fn genus_from_tiling(p: u64, q: u64, faces: u64) -> Result<i64, SurfaceError> {
    if p == 0 || q == 0 || faces == 0 {
        return Err(SurfaceError::InvalidArgument(
            "arguments must be positive".into(),
        ));
    }
    let num = faces as i64 * (p as i64 * q as i64 - 2 * p as i64 - 2 * q as i64);
    let den = 4 * q as i64;
    if num % den != 0 {
        return Err(SurfaceError::NonIntegerGenus {
            numerator: num + den,
            denominator: den,
        });
    }
    Ok(1 + num / den)
}

/// Vertex incidence of the `G̃_n` tiling: `n` for even `n`, `2n` for odd `n`.
pub fn incidence_for_length(n: usize) -> usize {
    if n.is_multiple_of(2) {
        n
    } else {
        2 * n
    }
}

/// Genus of the `N`-tile-orbit surface for segments of length `n`:
/// `1 + 6(n − 4)N` for even `n`, `1 + 6(n − 3)N` for odd `n`.
pub fn table_row(n: u64, count: u64) -> Result<i64, SurfaceError> {
    if n < 3 || count == 0 {
        return Err(SurfaceError::InvalidArgument(format!("n={n}, N={count}")));
    }
    let shift = if n.is_multiple_of(2) { 4 } else { 3 };
    Ok(1 + 6 * (n as i64 - shift) * count as i64)
}

/// `qV = 2E = pF`.
pub fn flag_identity_holds(p: usize, q: usize, stats: &SurfaceStats) -> bool {
    q * stats.vertices == 2 * stats.edges && 2 * stats.edges == p * stats.faces
}

/// `(p − 2)(q − 2) = 4(1 − χ/V)(1 − χ/F)`, cleared of denominators.
pub fn curvature_identity_holds(p: usize, q: usize, v: usize, f: usize, chi: i64) -> bool {
    let (p, q, v, f) = (p as i64, q as i64, v as i64, f as i64);
    (p - 2) * (q - 2) * v * f == 4 * (v - chi) * (f - chi)
}

/// Cross-check of the tiling formulas on a connected regular surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaReport {
    pub p: usize,
    pub q: usize,
    pub genus: i64,
    pub flag_identity: bool,
    pub curvature_identity: bool,
    pub genus_formula: Option<i64>,
    /// `4E`, compared with the triangle group order when it is defined.
    pub flag_count: usize,
    pub triangle_group: Option<TriangleGroupOrder>,
    pub hurwitz: Option<bool>,
}

impl FormulaReport {
    pub fn consistent(&self) -> bool {
        self.flag_identity
            && self.curvature_identity
            && self.genus_formula == Some(self.genus)
            && self
                .triangle_group
                .is_none_or(|t| t.full as usize == self.flag_count)
            && self.hurwitz != Some(false)
    }
}

/// Evaluates every formula on `s`; `acting_group` is the order of a group of
/// automorphisms to test against the Hurwitz bound.
pub fn formula_report(
    s: &CombinatorialSurface,
    acting_group: Option<usize>,
) -> Result<FormulaReport, SurfaceError> {
    let stats = surface_stats(s);
    let (p, q) = stats
        .regular_type
        .ok_or_else(|| SurfaceError::InvalidArgument("surface is not regular".into()))?;
    let genus = stats
        .genus
        .ok_or_else(|| SurfaceError::InvalidArgument("surface is disconnected".into()))?;
    let triangle_group = match triangle_group_order(p as u64, q as u64, genus.max(0) as u64) {
        Ok(t) => Some(t),
        Err(SurfaceError::EuclideanSignature { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(FormulaReport {
        p,
        q,
        genus,
        flag_identity: flag_identity_holds(p, q, &stats),
        curvature_identity: curvature_identity_holds(p, q, stats.vertices, stats.faces, stats.chi),
        genus_formula: genus_from_tiling(p as u64, q as u64, stats.faces as u64).ok(),
        flag_count: 4 * stats.edges,
        triangle_group,
        hurwitz: acting_group.map(|order| hurwitz_bound_holds(order, genus)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceReport {
    pub expected: usize,
    /// Distinct vertex degrees found.
    pub degrees: Vec<usize>,
    pub passed: bool,
}

/// Compares every vertex degree with the incidence predicted for length `n`.
pub fn vertex_incidence_check(s: &CombinatorialSurface, n: usize) -> IncidenceReport {
    let expected = incidence_for_length(n);
    let degrees: Vec<usize> = surface_stats(s).degree_profile.keys().copied().collect();
    IncidenceReport {
        expected,
        passed: degrees == [expected],
        degrees,
    }
}
