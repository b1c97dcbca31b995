use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{CombinatorialSurface, Face, SurfaceError};
use crate::group::{orbit, tile_group, Family, GeneratorSet, GroupError, TileGroup};
use crate::pitch::{OperatorDescriptor, PitchSegment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuildMode {
    /// Tiles are the orbit segments under `G̃_n`.
    Orbit,
    /// Tiles are the elements of the pentachord tile group.
    Cover,
}

impl std::str::FromStr for BuildMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "orbit" => Ok(BuildMode::Orbit),
            "cover" => Ok(BuildMode::Cover),
            other => Err(format!("unknown mode {other:?} (expected orbit|cover)")),
        }
    }
}

/// Which segments start the orbit in orbit mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitSeeds {
    Single,
    /// Every translate and inversion of the segment.
    TranspositionInversionClass,
}

pub fn build_surface(
    s: &PitchSegment,
    mode: BuildMode,
) -> Result<CombinatorialSurface, SurfaceError> {
    match mode {
        BuildMode::Orbit => build_orbit_surface(s, OrbitSeeds::Single),
        BuildMode::Cover => build_cover_surface(&tile_group(s)?),
    }
}

/// Side `i` of a tile is glued to side `i` of its image under `p_{i+1,i+2}`,
/// and the last side to the image under `p_1n`.
fn side_generator(i: usize, n: usize) -> OperatorDescriptor {
    if i + 1 < n {
        OperatorDescriptor::p(i + 1, i + 2)
    } else {
        OperatorDescriptor::p(1, n)
    }
}

pub fn build_orbit_surface(
    s: &PitchSegment,
    seeds: OrbitSeeds,
) -> Result<CombinatorialSurface, SurfaceError> {
    let n = s.len();
    let gens = GeneratorSet::Family(Family::Cyclic);
    let seed_list = match seeds {
        OrbitSeeds::Single => vec![s.clone()],
        OrbitSeeds::TranspositionInversionClass => orbit(s, &GeneratorSet::TranspositionInversion)?,
    };
    let mut tiles = BTreeSet::new();
    for seed in &seed_list {
        if tiles.contains(seed) {
            continue;
        }
        tiles.extend(orbit(seed, &gens)?);
    }
    let tiles: Vec<PitchSegment> = tiles.into_iter().collect();
    let index: HashMap<&PitchSegment, usize> =
        tiles.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut partner = vec![0; tiles.len() * n];
    for (f, tile) in tiles.iter().enumerate() {
        for side in 0..n {
            let image = side_generator(side, n)
                .apply(tile)
                .map_err(GroupError::from)?;
            if &image == tile {
                return Err(SurfaceError::GluingInconsistent { face: f, side });
            }
            partner[f * n + side] = index[&image] * n + side;
        }
    }
    let faces = tiles
        .iter()
        .enumerate()
        .map(|(id, t)| Face {
            id,
            labels: Some(t.entries().to_vec()),
            deck: None,
        })
        .collect();
    CombinatorialSurface::new(Some(s.modulus()), n, faces, partner)
}

/// Cayley 2-complex of the tile group: the tile of `g` meets the tile of
/// `gen_k · g` across side `k`.
pub fn build_cover_surface(group: &TileGroup) -> Result<CombinatorialSurface, SurfaceError> {
    let p = group.generators.len();
    let mut partner = vec![0; group.order() * p];
    for (f, e) in group.elements.iter().enumerate() {
        for (k, gen) in group.generators.iter().enumerate() {
            let g = group
                .index_of(&group.mul(gen, e))
                .expect("tile group is closed");
            partner[f * p + k] = g * p + k;
        }
    }
    let faces = group
        .elements
        .iter()
        .enumerate()
        .map(|(id, e)| Face {
            id,
            labels: Some(group.label(e).entries().to_vec()),
            deck: Some(e.deck),
        })
        .collect();
    CombinatorialSurface::new(Some(group.modulus), p, faces, partner)
}

/// Glues oriented polygons given by vertex lists: the directed edge `a → b`
/// of one polygon is paired with `b → a` of another. Labels are the vertex ids.
pub fn from_polygons(polygons: &[Vec<usize>]) -> Result<CombinatorialSurface, SurfaceError> {
    let p = polygons
        .first()
        .map(Vec::len)
        .ok_or_else(|| SurfaceError::InvalidArgument("no polygons".into()))?;
    let mut directed = HashMap::new();
    for (f, poly) in polygons.iter().enumerate() {
        if poly.len() != p {
            return Err(SurfaceError::InvalidArgument(format!(
                "polygon {f} has {} corners, expected {p}",
                poly.len()
            )));
        }
        for s in 0..p {
            let key = (poly[s], poly[(s + 1) % p]);
            if directed.insert(key, f * p + s).is_some() {
                return Err(SurfaceError::InvalidPairing(format!(
                    "directed edge {key:?} occurs twice"
                )));
            }
        }
    }
    let mut partner = vec![0; polygons.len() * p];
    for (&(a, b), &h) in &directed {
        partner[h] = *directed
            .get(&(b, a))
            .ok_or_else(|| SurfaceError::InvalidPairing(format!("edge {a}->{b} has no reverse")))?;
    }
    let faces = polygons
        .iter()
        .enumerate()
        .map(|(id, poly)| Face {
            id,
            labels: Some(poly.iter().map(|&v| v as u32).collect()),
            deck: None,
        })
        .collect();
    CombinatorialSurface::new(None, p, faces, partner)
}

pub fn tetrahedron() -> CombinatorialSurface {
    from_polygons(&[vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 3, 2]])
        .expect("tetrahedron is closed")
}

/// Oriented faces of the icosahedron: apex 0, upper ring 1..=5, lower ring 6..=10, apex 11.
fn icosahedron_triangles() -> Vec<[usize; 3]> {
    let up = |i: usize| 1 + i % 5;
    let low = |i: usize| 6 + i % 5;
    (0..5)
        .flat_map(|i| {
            [
                [0, up(i), up(i + 1)],
                [up(i), low(i + 1), up(i + 1)],
                [up(i), low(i), low(i + 1)],
                [11, low(i + 1), low(i)],
            ]
        })
        .collect()
}

/// The genus-4 `{5,5}` surface with 12 pentagons: one face per icosahedron
/// vertex, bounded by its five neighbours in rotation order.
pub fn bring_surface() -> CombinatorialSurface {
    let mut succ: HashMap<(usize, usize), usize> = HashMap::new();
    for [a, b, c] in icosahedron_triangles() {
        succ.insert((a, b), c);
        succ.insert((b, c), a);
        succ.insert((c, a), b);
    }
    let polygons: Vec<Vec<usize>> = (0..12)
        .map(|v| {
            let first = (0..12)
                .find(|&u| succ.contains_key(&(v, u)))
                .expect("vertex has neighbours");
            let mut ring = vec![first];
            while ring.len() < 5 {
                ring.push(succ[&(v, *ring.last().expect("nonempty"))]);
            }
            ring
        })
        .collect();
    from_polygons(&polygons).expect("great dodecahedron is closed")
}

/// Successive tiles around the first vertex under `z = σ ∘ p_12`, ending at `s`.
pub fn vertex_cycle(s: &PitchSegment, limit: usize) -> Result<Vec<PitchSegment>, SurfaceError> {
    let z = OperatorDescriptor::VertexRotation;
    let mut out = Vec::new();
    let mut cur = s.clone();
    for _ in 0..limit {
        cur = z.apply(&cur).map_err(GroupError::from)?;
        out.push(cur.clone());
        if &cur == s {
            return Ok(out);
        }
    }
    Err(SurfaceError::InvalidArgument(format!(
        "z-cycle of {s} does not close within {limit} steps"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::surface_stats;

    fn seg(t: &str) -> PitchSegment {
        PitchSegment::parse(t, 12).unwrap()
    }

    #[test]
    fn trichord_torus() {
        let s = build_orbit_surface(&seg("0,1,9"), OrbitSeeds::Single).unwrap();
        let st = surface_stats(&s);
        assert_eq!((st.faces, st.edges, st.vertices, st.chi), (24, 36, 12, 0));
        assert_eq!(st.regular_type, Some((3, 6)));
    }

    #[test]
    fn pentachord_orbit_surface() {
        let st = surface_stats(&build_surface(&seg("0,4,7,t,2"), BuildMode::Orbit).unwrap());
        assert_eq!(
            (st.faces, st.edges, st.vertices, st.chi, st.genus),
            (24, 60, 12, -24, Some(13))
        );
        assert_eq!(st.regular_type, Some((5, 10)));
    }

    #[test]
    fn vertices_carry_one_value() {
        let s = build_orbit_surface(&seg("0,1,3,5"), OrbitSeeds::Single).unwrap();
        let v = s.vertices();
        assert!(v.cycles.iter().all(|c| s.vertex_label(c).is_some()));
    }

    #[test]
    fn fixed_side_is_rejected() {
        assert!(matches!(
            build_orbit_surface(&seg("5,5,5"), OrbitSeeds::Single),
            Err(SurfaceError::GluingInconsistent { .. })
        ));
    }

    #[test]
    fn platonic_examples() {
        let st = surface_stats(&tetrahedron());
        assert_eq!((st.faces, st.edges, st.vertices, st.chi), (4, 6, 4, 2));
        let st = surface_stats(&bring_surface());
        assert_eq!(
            (st.faces, st.edges, st.vertices, st.chi, st.genus),
            (12, 30, 12, -6, Some(4))
        );
        assert_eq!(st.regular_type, Some((5, 5)));
    }

    #[test]
    fn trichord_z_cycle() {
        let cycle = vertex_cycle(&seg("0,1,9"), 20).unwrap();
        let text: Vec<String> = cycle.iter().map(|s| s.to_string()).collect();
        assert_eq!(text, ["0,4,1", "0,3,4", "0,e,3", "0,8,e", "0,9,8", "0,1,9"]);
    }
}
