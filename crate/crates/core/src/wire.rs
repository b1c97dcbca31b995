//! JSON bodies shared by the HTTP service, its client, and the CLI.

use serde::{Deserialize, Serialize};

use crate::group::{
    basis, condition_check, orbit, restricted_translation_group, tile_group, ConditionCertificate,
    CyclicTranslations, Family, GeneratorSet, GroupError, TileElement,
};
use crate::pitch::PitchSegment;
use crate::surface::SurfaceStats;
use crate::walks::{generator_pair, normalize, reduce, Walk, WalkNormalForm};

pub const SCHEMA_VERSION: u32 = 1;

fn schema() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Neighbor {
    pub gen: u8,
    pub operator: String,
    pub segment: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborsResponse {
    #[serde(default = "schema")]
    pub schema_version: u32,
    pub segment: String,
    pub neighbors: Vec<Neighbor>,
}

impl NeighborsResponse {
    pub fn compute(s: &PitchSegment) -> Result<Self, GroupError> {
        if s.len() != 5 {
            return Err(GroupError::Unsupported {
                n: s.len(),
                modulus: s.modulus(),
            });
        }
        let neighbors = (1..=5u8)
            .map(|gen| {
                let (i, j) = generator_pair(gen);
                Ok(Neighbor {
                    gen,
                    operator: format!("p{i},{j}"),
                    segment: s.contextual_inversion(i, j)?.to_string(),
                })
            })
            .collect::<Result<_, GroupError>>()?;
        Ok(NeighborsResponse {
            schema_version: SCHEMA_VERSION,
            segment: s.to_string(),
            neighbors,
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CreateSessionRequest {
    /// Defaults to the segment the service was started with.
    #[serde(default)]
    pub segment: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRequest {
    pub gen: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionView {
    #[serde(default = "schema")]
    pub schema_version: u32,
    pub id: String,
    pub base: String,
    pub current: String,
    /// Every step taken, undone steps removed.
    pub history: Vec<u8>,
    /// The history with adjacent repeats cancelled.
    pub walk: Vec<u8>,
    pub normal_form: String,
    pub normal_form_detail: WalkNormalForm,
    pub mode: String,
    pub stats: Option<SurfaceStats>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsResponse {
    #[serde(default = "schema")]
    pub schema_version: u32,
    pub segment: String,
    pub mode: String,
    #[serde(flatten)]
    pub stats: SurfaceStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CayleyResponse {
    #[serde(default = "schema")]
    pub schema_version: u32,
    pub group: String,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub graph: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizeRequest {
    /// Printed product, `3241…` or `3,2,4,1,…`.
    pub walk: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizeResponse {
    #[serde(default = "schema")]
    pub schema_version: u32,
    pub steps: Vec<u8>,
    pub reduced: Vec<u8>,
    pub normal_form: String,
    pub normal_form_detail: WalkNormalForm,
}

impl NormalizeResponse {
    pub fn compute(w: &Walk) -> Self {
        let nf = normalize(w);
        NormalizeResponse {
            schema_version: SCHEMA_VERSION,
            steps: w.steps().to_vec(),
            reduced: reduce(w).steps().to_vec(),
            normal_form: nf.to_string(),
            normal_form_detail: nf,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileSummary {
    pub order: usize,
    pub n_ab: u32,
    pub dihedral_order: usize,
    pub generator_images: Vec<TileElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    #[serde(default = "schema")]
    pub schema_version: u32,
    pub segment: String,
    pub modulus: u32,
    pub certificate: ConditionCertificate,
    pub basis_full: Vec<String>,
    pub basis_cyclic: Vec<String>,
    pub restricted: CyclicTranslations,
    pub orbit_size: usize,
    pub ti_orbit_size: usize,
    /// Present for pentachords mod 12 satisfying the condition.
    pub tile_group: Option<TileSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tile_group_error: Option<String>,
}

impl GroupReport {
    pub fn compute(s: &PitchSegment) -> Result<Self, GroupError> {
        let n = s.len();
        let names = |f| -> Result<Vec<String>, GroupError> {
            Ok(basis(n, f)?.iter().map(ToString::to_string).collect())
        };
        let certificate = condition_check(s);
        let (tile_group, tile_group_error) = if n == 5 && s.modulus() == 12 && certificate.holds {
            match tile_group(s) {
                Ok(g) => (
                    Some(TileSummary {
                        order: g.order(),
                        n_ab: g.n_ab,
                        dihedral_order: g.dihedral_quotient().order(),
                        generator_images: g.generators.clone(),
                    }),
                    None,
                ),
                Err(e) => (None, Some(e.to_string())),
            }
        } else {
            (None, None)
        };
        Ok(GroupReport {
            schema_version: SCHEMA_VERSION,
            segment: s.to_string(),
            modulus: s.modulus(),
            basis_full: names(Family::Full)?,
            basis_cyclic: names(Family::Cyclic)?,
            restricted: restricted_translation_group(s, Family::Cyclic)?,
            orbit_size: orbit(s, &GeneratorSet::Family(Family::Cyclic))?.len(),
            ti_orbit_size: orbit(s, &GeneratorSet::TranspositionInversion)?.len(),
            certificate,
            tile_group,
            tile_group_error,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    #[serde(default = "schema")]
    pub schema_version: u32,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Health {
    #[serde(default = "schema")]
    pub schema_version: u32,
    pub status: String,
    pub segment: String,
    pub mode: String,
}
