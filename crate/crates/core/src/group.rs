//! Contextual-inversion groups `G_n` (all `p_ij`) and `G̃_n` (cyclically
//! consecutive `p_{i,i+1}` plus `p_1n`), their normal forms, the translation
//! conditions, and the finite tile group used to build pentachord covers.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{
    gcd_with_modulus, hermite_normal_form, kernel_lattice, mod_inverse, KernelLattice,
};
use crate::pitch::{
    reduce, AffineOperator, OperatorDescriptor, PitchError, PitchSegment, MIN_LENGTH,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Pitch(#[from] PitchError),
    #[error("segment length must be at least {MIN_LENGTH}, got {0}")]
    TooShort(usize),
    #[error("{segment} does not satisfy Condition 1 (gcd of differences with {modulus} is {gcd})")]
    ConditionFailed {
        segment: String,
        modulus: u32,
        gcd: u32,
    },
    #[error("quotient has order {got}, expected {expected}")]
    DegenerateQuotient { expected: usize, got: usize },
    #[error("tile group needs a length-5 segment mod 12, got length {n} mod {modulus}")]
    Unsupported { n: usize, modulus: u32 },
    #[error("second functional needs {expected} weights, got {got}")]
    BadFunctional { expected: usize, got: usize },
}

/// Which contextual group: all `p_ij`, or the cyclic generators only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `G_n`, generated by every `p_ij`.
    Full,
    /// `G̃_n`, generated by `p_12, p_23, …, p_{n−1,n}, p_1n`.
    Cyclic,
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" | "G" | "g" => Ok(Family::Full),
            "cyclic" | "tilde" | "G~" | "gt" => Ok(Family::Cyclic),
            other => Err(format!("unknown family {other:?} (expected full|cyclic)")),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Full => "full",
            Family::Cyclic => "cyclic",
        })
    }
}

/// Basis translation `T^upper_lower` (translation by `x_upper − x_lower`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisTranslation {
    pub upper: usize,
    pub lower: usize,
}

impl BasisTranslation {
    pub fn descriptor(&self) -> OperatorDescriptor {
        OperatorDescriptor::t(self.upper, self.lower)
    }

    pub fn amount(&self, s: &PitchSegment) -> Result<u32, PitchError> {
        let (a, b) = (s.get(self.upper)?, s.get(self.lower)?);
        Ok(reduce(a as i64 - b as i64, s.modulus()))
    }
}

impl fmt::Display for BasisTranslation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T^{}_{}", self.upper, self.lower)
    }
}

/// Basis of the abelian part of `G_n` or `G̃_n`.
pub fn basis(n: usize, family: Family) -> Result<Vec<BasisTranslation>, GroupError> {
    if n < MIN_LENGTH {
        return Err(GroupError::TooShort(n));
    }
    let alternating = |j: usize| BasisTranslation {
        upper: j,
        lower: if j % 2 == 1 { 1 } else { 2 },
    };
    Ok(match family {
        Family::Full => (2..=n)
            .map(|j| BasisTranslation { upper: j, lower: 1 })
            .collect(),
        Family::Cyclic if n.is_multiple_of(2) => (3..=n).map(alternating).collect(),
        Family::Cyclic => std::iter::once(BasisTranslation { upper: 2, lower: 1 })
            .chain((3..=n).map(alternating))
            .collect(),
    })
}

/// Contextual inversions generating the family, as `(i, j)` pairs with `i < j`.
pub fn family_generators(n: usize, family: Family) -> Vec<(usize, usize)> {
    match family {
        Family::Full => (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect(),
        Family::Cyclic => (1..n)
            .map(|i| (i, i + 1))
            .chain(std::iter::once((1, n)))
            .collect(),
    }
}

/// Element `p_12^ε ∘ Π_j (T^j_1)^{λ_j}` of `G_n`, with `λ` indexed by `j = 2..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub n: usize,
    pub modulus: u32,
    pub parity: u8,
    pub exponents: Vec<u32>,
}

impl GroupElement {
    pub fn identity(n: usize, modulus: u32) -> Self {
        GroupElement {
            n,
            modulus,
            parity: 0,
            exponents: vec![0; n - 1],
        }
    }

    /// `p_ij = p_12 ∘ T^{ij}_{12}`, and `T^{ij}_{12}` has exponents `e_i + e_j − e_2`
    /// (the coordinate of index 1 is identically zero).
    pub fn contextual(n: usize, modulus: u32, i: usize, j: usize) -> Result<Self, GroupError> {
        for idx in [i, j] {
            if idx == 0 || idx > n {
                return Err(PitchError::IndexOutOfRange { index: idx, n }.into());
            }
        }
        if i == j {
            return Err(PitchError::EqualIndices(i).into());
        }
        let mut lambda = vec![0i64; n - 1];
        for (idx, sign) in [(i, 1), (j, 1), (2, -1)] {
            if idx >= 2 {
                lambda[idx - 2] += sign;
            }
        }
        Ok(GroupElement {
            n,
            modulus,
            parity: 1,
            exponents: lambda.into_iter().map(|v| reduce(v, modulus)).collect(),
        })
    }

    pub fn translation(n: usize, modulus: u32, exponents: &[i64]) -> Self {
        assert_eq!(exponents.len(), n - 1);
        GroupElement {
            n,
            modulus,
            parity: 0,
            exponents: exponents.iter().map(|&v| reduce(v, modulus)).collect(),
        }
    }

    /// Group law: `(ε1, λ1)(ε2, λ2) = (ε1 + ε2, (−1)^{ε2} λ1 + λ2)`, which is
    /// operator composition "apply the right factor first".
    pub fn mul(&self, rhs: &GroupElement) -> GroupElement {
        assert_eq!((self.n, self.modulus), (rhs.n, rhs.modulus));
        let sign = if rhs.parity == 1 { -1 } else { 1 };
        GroupElement {
            n: self.n,
            modulus: self.modulus,
            parity: (self.parity + rhs.parity) % 2,
            exponents: self
                .exponents
                .iter()
                .zip(&rhs.exponents)
                .map(|(&a, &b)| reduce(sign * a as i64 + b as i64, self.modulus))
                .collect(),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        if self.parity == 1 {
            return self.clone();
        }
        GroupElement {
            exponents: self
                .exponents
                .iter()
                .map(|&a| reduce(-(a as i64), self.modulus))
                .collect(),
            ..self.clone()
        }
    }

    pub fn is_identity(&self) -> bool {
        self.parity == 0 && self.exponents.iter().all(|&a| a == 0)
    }

    /// Matrix form: `p_12^ε · (Id + Σ λ_j (C_j − C_1))`, where `C_j` has ones in column `j`.
    pub fn operator(&self) -> AffineOperator {
        let n = self.n;
        let mut matrix = vec![0i64; n * n];
        for r in 0..n {
            matrix[r * n + r] = 1;
            for (idx, &l) in self.exponents.iter().enumerate() {
                let j = idx + 1;
                matrix[r * n + j] += l as i64;
                matrix[r * n] -= l as i64;
            }
        }
        let translation = AffineOperator::from_parts(n, self.modulus, &matrix, &vec![0; n]);
        if self.parity == 1 {
            OperatorDescriptor::p(1, 2)
                .to_operator(n, self.modulus)
                .expect("n ≥ 3")
                .compose(&translation)
        } else {
            translation
        }
    }

    /// Translation amount `Σ λ_j (x_j − x_1)` of the abelian part on `s`.
    pub fn translation_amount(&self, s: &PitchSegment) -> u32 {
        let e = s.entries();
        let total: i64 = self
            .exponents
            .iter()
            .enumerate()
            .map(|(idx, &l)| l as i64 * (e[idx + 1] as i64 - e[0] as i64))
            .sum();
        reduce(total, self.modulus)
    }

    pub fn apply(&self, s: &PitchSegment) -> Result<PitchSegment, GroupError> {
        Ok(self.operator().apply(s)?)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lambda: Vec<String> = self.exponents.iter().map(u32::to_string).collect();
        write!(f, "(ε={}, λ=({}))", self.parity, lambda.join(","))
    }
}

/// Normal form of a word of contextual inversions, applied in listed order
/// (the first entry acts first).
pub fn normal_form(
    word: &[(usize, usize)],
    n: usize,
    modulus: u32,
) -> Result<GroupElement, GroupError> {
    if n < MIN_LENGTH {
        return Err(GroupError::TooShort(n));
    }
    word.iter()
        .try_fold(GroupElement::identity(n, modulus), |acc, &(i, j)| {
            Ok(GroupElement::contextual(n, modulus, i, j)?.mul(&acc))
        })
}

/// Witness for Condition 1 (odd `n`) or Condition 2 (even `n`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCertificate {
    pub holds: bool,
    /// Which condition applies: 1 for odd length, 2 for even length.
    pub condition: u8,
    /// Coefficients `λ` (reduced into `[0, m)`), one per difference.
    pub lambdas: Vec<u32>,
    pub differences: Vec<u32>,
    pub gcd: u32,
    pub modulus: u32,
}

impl ConditionCertificate {
    /// Re-evaluates `Σ λ_i d_i mod m`.
    pub fn evaluate(&self) -> u32 {
        let total: u64 = self
            .lambdas
            .iter()
            .zip(&self.differences)
            .map(|(&l, &d)| l as u64 * d as u64)
            .sum();
        (total % self.modulus as u64) as u32
    }

    pub fn verified(&self) -> bool {
        self.holds && self.evaluate() == 1 % self.modulus
    }
}

/// Differences used by the conditions: `x_j − x_1` for odd `n`; for even `n`,
/// `x_j − x_1` when `j` is odd and `x_j − x_2` when `j` is even, `j = 3..=n`.
pub fn condition_differences(s: &PitchSegment) -> Vec<u32> {
    let family = if s.len() % 2 == 1 {
        Family::Full
    } else {
        Family::Cyclic
    };
    basis(s.len(), family)
        .expect("segments have length ≥ 3")
        .iter()
        .map(|b| b.amount(s).expect("basis indices are in range"))
        .collect()
}

/// Solves `Σ λ_i d_i ≡ 1 (mod m)` when possible.
///
/// A single unit difference gives the certificate `λ_i = d_i^{-1}` on the first
/// such coordinate; otherwise the Bézout coefficients are accumulated by
/// extended Euclid across the differences.
pub fn condition_check(s: &PitchSegment) -> ConditionCertificate {
    let m = s.modulus() as i64;
    let d = condition_differences(s);
    let di: Vec<i64> = d.iter().map(|&x| x as i64).collect();
    let g = gcd_with_modulus(&di, m);
    let condition = if s.len() % 2 == 1 { 1 } else { 2 };
    let mut lambdas = vec![0u32; d.len()];
    let holds = g == 1;
    if holds {
        if let Some((idx, inv)) = di
            .iter()
            .enumerate()
            .find_map(|(i, &x)| mod_inverse(x, m).map(|inv| (i, inv)))
        {
            lambdas[idx] = inv as u32;
        } else {
            // Invariant: Σ coeff_i d_i ≡ acc (mod m), acc = gcd of the prefix and m.
            let mut acc = m;
            let mut coeff = vec![0i64; d.len()];
            for (i, &x) in di.iter().enumerate() {
                let (g2, a, b) = crate::lattice::ext_gcd(acc, x);
                if g2 == acc {
                    continue;
                }
                for c in coeff.iter_mut() {
                    *c *= a;
                }
                coeff[i] += b;
                acc = g2;
            }
            lambdas = coeff.into_iter().map(|c| reduce(c, s.modulus())).collect();
        }
    }
    ConditionCertificate {
        holds,
        condition,
        lambdas,
        differences: d,
        gcd: g as u32,
        modulus: s.modulus(),
    }
}

/// Cyclic group of translations the family's abelian part induces on one segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicTranslations {
    pub order: u32,
    /// Smallest positive residue generating the group (`gcd(d, m)`).
    pub generator: u32,
}

/// Restricts the basis translations to `s`: generated by `T_g`, `g = gcd(d, m)`.
pub fn restricted_translation_group(
    s: &PitchSegment,
    family: Family,
) -> Result<CyclicTranslations, GroupError> {
    let amounts: Vec<i64> = basis(s.len(), family)?
        .iter()
        .map(|b| b.amount(s).map(|a| a as i64))
        .collect::<Result<_, _>>()?;
    let m = s.modulus() as i64;
    let g = gcd_with_modulus(&amounts, m);
    Ok(CyclicTranslations {
        order: (m / g) as u32,
        generator: (g % m) as u32,
    })
}

/// Kernel of `λ ↦ Σ λ_i d_i (mod m)`; see [`crate::lattice::kernel_lattice`].
pub fn translation_kernel(differences: &[u32], modulus: u32) -> KernelLattice {
    let d: Vec<i64> = differences.iter().map(|&x| x as i64).collect();
    kernel_lattice(&d, modulus as i64)
}

/// Generators to close an orbit under.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorSet {
    Family(Family),
    /// The `T/I` group, generated by `T_1` and `I`.
    TranspositionInversion,
    Custom(Vec<OperatorDescriptor>),
}

impl GeneratorSet {
    pub fn descriptors(&self, n: usize) -> Vec<OperatorDescriptor> {
        match self {
            GeneratorSet::Family(f) => family_generators(n, *f)
                .into_iter()
                .map(|(i, j)| OperatorDescriptor::p(i, j))
                .collect(),
            GeneratorSet::TranspositionInversion => vec![
                OperatorDescriptor::Translation { k: 1 },
                OperatorDescriptor::Inversion { k: 0 },
            ],
            GeneratorSet::Custom(list) => list.clone(),
        }
    }
}

/// Closure of `s` under the generators, in lexicographic order.
///
/// The frontier is expanded smallest-first, so the traversal itself is
/// deterministic as well as the output.
pub fn orbit(s: &PitchSegment, generators: &GeneratorSet) -> Result<Vec<PitchSegment>, GroupError> {
    let gens = generators.descriptors(s.len());
    let mut seen: BTreeSet<PitchSegment> = BTreeSet::new();
    let mut frontier: BTreeSet<PitchSegment> = BTreeSet::new();
    frontier.insert(s.clone());
    seen.insert(s.clone());
    while let Some(current) = frontier.pop_first() {
        for g in &gens {
            let next = g.apply(&current)?;
            if seen.insert(next.clone()) {
                frontier.insert(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The five pentachord generators `p_12, p_23, p_34, p_45, p_15`, numbered 1..=5.
pub const PENTACHORD_GENERATORS: [(usize, usize); 5] = [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)];

/// Element `(ε, a, b)` of `Z_2 ⋉ (Z_m ⊕ Z_{n_ab})`; the nontrivial parity acts
/// by negation on both coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TileElement {
    pub parity: u8,
    /// Image under `φ(λ) = Σ λ_i d_i mod m`: the translation applied to the seed.
    pub shift: u32,
    /// Image under the second functional `φ′`: the deck coordinate.
    pub deck: u32,
}

/// Configuration of the second functional `φ′(λ) = Σ w_i λ_i mod n_ab`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileGroupConfig {
    /// Weights `w`; defaults to all ones.
    pub weights: Option<Vec<i64>>,
}

/// Finite group labelling the tiles of the pentachord cover.
///
/// Realised as the image of `G̃_5` under `(ε, λ) ↦ (ε, φ(λ), φ′(λ))`. The
/// abelian part `Ab_T` is `{(0, 0, b)}`, and dividing it out leaves the
/// dihedral group `{(ε, a)}` of order `2m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileGroup {
    pub segment: PitchSegment,
    pub modulus: u32,
    pub n_ab: u32,
    pub differences: Vec<u32>,
    pub weights: Vec<i64>,
    pub certificate: ConditionCertificate,
    /// Images of `p_12, p_23, p_34, p_45, p_15`.
    pub generators: Vec<TileElement>,
    /// All elements in breadth-first order from the identity.
    pub elements: Vec<TileElement>,
    #[serde(skip)]
    index: HashMap<TileElement, usize>,
}

impl TileGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> TileElement {
        TileElement {
            parity: 0,
            shift: 0,
            deck: 0,
        }
    }

    pub fn mul(&self, a: &TileElement, b: &TileElement) -> TileElement {
        let sign = if b.parity == 1 { -1 } else { 1 };
        TileElement {
            parity: (a.parity + b.parity) % 2,
            shift: reduce(sign * a.shift as i64 + b.shift as i64, self.modulus),
            deck: reduce(sign * a.deck as i64 + b.deck as i64, self.n_ab),
        }
    }

    pub fn index_of(&self, e: &TileElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Projection of a `G̃_5` normal form onto the tile group.
    pub fn project(&self, g: &GroupElement) -> TileElement {
        let shift: i64 = g
            .exponents
            .iter()
            .zip(&self.differences)
            .map(|(&l, &d)| l as i64 * d as i64)
            .sum();
        let deck: i64 = g
            .exponents
            .iter()
            .zip(&self.weights)
            .map(|(&l, &w)| l as i64 * w)
            .sum();
        TileElement {
            parity: g.parity,
            shift: reduce(shift, self.modulus),
            deck: reduce(deck, self.n_ab),
        }
    }

    /// The pitch segment carried by the tile of `e`: `p_12^ε (T_a s)`.
    pub fn label(&self, e: &TileElement) -> PitchSegment {
        let moved = self.segment.transpose(e.shift as i64);
        if e.parity == 1 {
            moved.contextual_inversion(1, 2).expect("length 5")
        } else {
            moved
        }
    }

    /// Elements of `Ab_T`, the kernel of the projection to the dihedral part.
    pub fn abelian_part(&self) -> Vec<TileElement> {
        self.elements
            .iter()
            .filter(|e| e.parity == 0 && e.shift == 0)
            .copied()
            .collect()
    }

    /// Image in the dihedral quotient, as `(parity, shift)`.
    pub fn dihedral_image(e: &TileElement) -> (u8, u32) {
        (e.parity, e.shift)
    }

    /// Dihedral quotient: its elements in BFS order and generator images.
    pub fn dihedral_quotient(&self) -> DihedralGroup {
        let gens: Vec<(u8, u32)> = self.generators.iter().map(Self::dihedral_image).collect();
        DihedralGroup::generate(self.modulus, &gens)
    }
}

/// `D_m` as pairs `(ε, a)`, `(ε1,a1)(ε2,a2) = (ε1+ε2, (−1)^{ε2} a1 + a2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralGroup {
    pub modulus: u32,
    pub generators: Vec<(u8, u32)>,
    pub elements: Vec<(u8, u32)>,
}

impl DihedralGroup {
    pub fn mul(modulus: u32, a: (u8, u32), b: (u8, u32)) -> (u8, u32) {
        let sign = if b.0 == 1 { -1 } else { 1 };
        (
            (a.0 + b.0) % 2,
            reduce(sign * a.1 as i64 + b.1 as i64, modulus),
        )
    }

    pub fn generate(modulus: u32, generators: &[(u8, u32)]) -> Self {
        let elements = bfs_closure((0u8, 0u32), generators, |g, x| Self::mul(modulus, *g, *x));
        DihedralGroup {
            modulus,
            generators: generators.to_vec(),
            elements,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Breadth-first closure of `identity` under left multiplication by `gens`.
pub(crate) fn bfs_closure<T: Clone + Eq + std::hash::Hash>(
    identity: T,
    gens: &[T],
    mul: impl Fn(&T, &T) -> T,
) -> Vec<T> {
    let mut seen = std::collections::HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul(g, &x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        order.push(x);
    }
    order
}

/// Builds the tile group of a pentachord satisfying Condition 1.
pub fn tile_group(s: &PitchSegment) -> Result<TileGroup, GroupError> {
    tile_group_with(s, &TileGroupConfig::default())
}

pub fn tile_group_with(
    s: &PitchSegment,
    config: &TileGroupConfig,
) -> Result<TileGroup, GroupError> {
    if s.len() != 5 || s.modulus() != 12 {
        return Err(GroupError::Unsupported {
            n: s.len(),
            modulus: s.modulus(),
        });
    }
    let certificate = condition_check(s);
    if !certificate.holds {
        return Err(GroupError::ConditionFailed {
            segment: s.to_string(),
            modulus: s.modulus(),
            gcd: certificate.gcd,
        });
    }
    let modulus = s.modulus();
    let n_ab = restricted_translation_group(s, Family::Cyclic)?.order;
    let differences = certificate.differences.clone();
    let weights = match &config.weights {
        Some(w) if w.len() != differences.len() => {
            return Err(GroupError::BadFunctional {
                expected: differences.len(),
                got: w.len(),
            })
        }
        Some(w) => w.clone(),
        None => vec![1; differences.len()],
    };
    let mut group = TileGroup {
        segment: s.clone(),
        modulus,
        n_ab,
        differences,
        weights,
        certificate,
        generators: Vec::new(),
        elements: Vec::new(),
        index: HashMap::new(),
    };
    group.generators = PENTACHORD_GENERATORS
        .iter()
        .map(|&(i, j)| GroupElement::contextual(5, modulus, i, j).map(|g| group.project(&g)))
        .collect::<Result<_, _>>()?;
    let gens = group.generators.clone();
    let elements = bfs_closure(group.identity(), &gens, |g, x| group.mul(g, x));
    let expected = 2 * modulus as usize * n_ab as usize;
    if elements.len() != expected {
        return Err(GroupError::DegenerateQuotient {
            expected,
            got: elements.len(),
        });
    }
    group.index = elements.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    group.elements = elements;
    Ok(group)
}

/// Hurwitz bound `|Q| ≤ 84(g − 1)` for automorphism groups of genus `g ≥ 2`.
pub fn hurwitz_bound_holds(group_order: usize, genus: i64) -> bool {
    genus < 2 || group_order as i64 <= 84 * (genus - 1)
}

/// Canonical HNF of arbitrary integer vectors (re-exported for callers comparing bases).
pub fn canonical_basis(vectors: &[Vec<i64>]) -> Vec<Vec<i64>> {
    hermite_normal_form(vectors)
}
