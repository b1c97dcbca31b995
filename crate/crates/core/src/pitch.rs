//! Pitch segments over `Z_m` and the affine operators acting on them.
//!
//! A [`PitchSegment`] is an ordered vector of residues. Every operator used
//! in the crate (translations, inversions, contextual inversions, contextual
//! translations and the coordinate permutations) is an affine map
//! `x ↦ A·x + b (mod m)` and can be materialised as an [`AffineOperator`].
//!
//! Indices in the public API are 1-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_MODULUS: u32 = 12;
pub const MIN_LENGTH: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PitchError {
    #[error("segment length {0} is below the minimum of {MIN_LENGTH}")]
    TooShort(usize),
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u32),
    #[error("entry {value} is outside 0..{modulus}")]
    EntryOutOfRange { value: u32, modulus: u32 },
    #[error("index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("contextual inversion needs distinct indices, got {0} twice")]
    EqualIndices(usize),
    #[error("operator of size {op} cannot act on a segment of length {segment}")]
    DimensionMismatch { op: usize, segment: usize },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

fn parse_err(input: &str, reason: impl Into<String>) -> PitchError {
    PitchError::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

#[inline]
pub(crate) fn reduce(value: i64, modulus: u32) -> u32 {
    value.rem_euclid(modulus as i64) as u32
}

/// Renders a residue with the chromatic alphabet (`t` = 10, `e` = 11) when the
/// modulus allows it.
pub fn residue_name(value: u32, modulus: u32) -> String {
    match (value, modulus <= 12) {
        (10, true) => "t".to_string(),
        (11, true) => "e".to_string(),
        _ => value.to_string(),
    }
}

/// Parses one residue token: decimal digits, or `t`/`e` (also `a`/`b`).
pub fn parse_residue(token: &str, modulus: u32) -> Result<u32, PitchError> {
    let token = token.trim();
    let value = match token {
        "t" | "T" | "a" | "A" => 10,
        "e" | "E" | "b" | "B" => 11,
        _ => token
            .parse::<i64>()
            .map_err(|_| parse_err(token, "not a residue"))?,
    };
    if value < 0 || value >= modulus as i64 {
        return Err(PitchError::EntryOutOfRange {
            value: value.max(0) as u32,
            modulus,
        });
    }
    Ok(value as u32)
}

/// An ordered segment `⟨x_1, …, x_n⟩` of residues mod `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SegmentRepr", into = "SegmentRepr")]
pub struct PitchSegment {
    modulus: u32,
    entries: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct SegmentRepr {
    #[serde(rename = "mod", default = "default_modulus")]
    modulus: u32,
    entries: Vec<u32>,
}

fn default_modulus() -> u32 {
    DEFAULT_MODULUS
}

impl TryFrom<SegmentRepr> for PitchSegment {
    type Error = PitchError;
    fn try_from(r: SegmentRepr) -> Result<Self, Self::Error> {
        PitchSegment::new(r.entries, r.modulus)
    }
}

impl From<PitchSegment> for SegmentRepr {
    fn from(s: PitchSegment) -> Self {
        SegmentRepr {
            modulus: s.modulus,
            entries: s.entries,
        }
    }
}

impl PitchSegment {
    pub fn new(entries: Vec<u32>, modulus: u32) -> Result<Self, PitchError> {
        if modulus < 2 {
            return Err(PitchError::InvalidModulus(modulus));
        }
        if entries.len() < MIN_LENGTH {
            return Err(PitchError::TooShort(entries.len()));
        }
        if let Some(&value) = entries.iter().find(|&&v| v >= modulus) {
            return Err(PitchError::EntryOutOfRange { value, modulus });
        }
        Ok(PitchSegment { modulus, entries })
    }

    /// Builds a segment from arbitrary integers, reducing each mod `modulus`.
    pub fn from_ints(values: &[i64], modulus: u32) -> Result<Self, PitchError> {
        if modulus < 2 {
            return Err(PitchError::InvalidModulus(modulus));
        }
        Self::new(
            values.iter().map(|&v| reduce(v, modulus)).collect(),
            modulus,
        )
    }

    /// Parses `0,4,7,t,2` (commas or whitespace). A comma-free token such as
    /// `0479` is read one character per entry.
    pub fn parse(text: &str, modulus: u32) -> Result<Self, PitchError> {
        if modulus < 2 {
            return Err(PitchError::InvalidModulus(modulus));
        }
        let text = text
            .trim()
            .trim_start_matches(['<', '⟨', '('])
            .trim_end_matches(['>', '⟩', ')']);
        let tokens: Vec<String> = if text.contains(',') || text.contains(char::is_whitespace) {
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(str::to_string)
                .collect()
        } else {
            text.chars().map(|c| c.to_string()).collect()
        };
        let entries = tokens
            .iter()
            .map(|t| parse_residue(t, modulus))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(entries, modulus)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Entry at a 1-based position.
    pub fn get(&self, index: usize) -> Result<u32, PitchError> {
        self.check_index(index)?;
        Ok(self.entries[index - 1])
    }

    fn check_index(&self, index: usize) -> Result<(), PitchError> {
        if index == 0 || index > self.len() {
            Err(PitchError::IndexOutOfRange {
                index,
                n: self.len(),
            })
        } else {
            Ok(())
        }
    }

    fn map(&self, f: impl Fn(i64) -> i64) -> PitchSegment {
        PitchSegment {
            modulus: self.modulus,
            entries: self
                .entries
                .iter()
                .map(|&x| reduce(f(x as i64), self.modulus))
                .collect(),
        }
    }

    /// `T_k`: adds `k` to every entry.
    pub fn transpose(&self, k: i64) -> PitchSegment {
        self.map(|x| x + k)
    }

    /// `I_k`: replaces every entry `x` by `k − x`.
    pub fn invert(&self, k: i64) -> PitchSegment {
        self.map(|x| k - x)
    }

    /// `p_ij`: inversion about the sum of the segment's own i-th and j-th entries.
    pub fn contextual_inversion(&self, i: usize, j: usize) -> Result<PitchSegment, PitchError> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(PitchError::EqualIndices(i));
        }
        let axis = self.entries[i - 1] as i64 + self.entries[j - 1] as i64;
        Ok(self.invert(axis))
    }

    /// Translation amount of `T^{hk}_{ij}` on this segment: `x_h + x_k − x_i − x_j`.
    pub fn contextual_translation_amount(
        &self,
        i: usize,
        j: usize,
        h: usize,
        k: usize,
    ) -> Result<u32, PitchError> {
        for idx in [i, j, h, k] {
            self.check_index(idx)?;
        }
        let x = |idx: usize| self.entries[idx - 1] as i64;
        Ok(reduce(x(h) + x(k) - x(i) - x(j), self.modulus))
    }

    /// `T^{hk}_{ij}`: translation by `x_h + x_k − x_i − x_j`.
    pub fn contextual_translation(
        &self,
        i: usize,
        j: usize,
        h: usize,
        k: usize,
    ) -> Result<PitchSegment, PitchError> {
        let amount = self.contextual_translation_amount(i, j, h, k)?;
        Ok(self.transpose(amount as i64))
    }

    pub fn permute(&self, perm: Permutation) -> Result<PitchSegment, PitchError> {
        let n = self.len();
        let entries = match perm {
            Permutation::Rotation(k) => {
                let k = k.rem_euclid(n as i64) as usize;
                (0..n).map(|r| self.entries[(r + k) % n]).collect()
            }
            Permutation::Transposition(i, j) => {
                self.check_index(i)?;
                self.check_index(j)?;
                let mut e = self.entries.clone();
                e.swap(i - 1, j - 1);
                e
            }
        };
        Ok(PitchSegment {
            modulus: self.modulus,
            entries,
        })
    }

    /// Applies an affine operator.
    pub fn apply(&self, op: &AffineOperator) -> Result<PitchSegment, PitchError> {
        op.apply(self)
    }

    /// Human-readable note names (C, C#, …) for the chromatic case.
    pub fn note_names(&self) -> Option<Vec<&'static str>> {
        const NAMES: [&str; 12] = [
            "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B",
        ];
        (self.modulus == 12).then(|| self.entries.iter().map(|&x| NAMES[x as usize]).collect())
    }
}

impl fmt::Display for PitchSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|&x| residue_name(x, self.modulus))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Coordinate permutations: `σ^k` (cyclic shift left by `k`) or `τ_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Permutation {
    Rotation(i64),
    Transposition(usize, usize),
}

/// Affine map `x ↦ A·x + b (mod m)` on segments of length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineOperator {
    n: usize,
    modulus: u32,
    matrix: Vec<u32>,
    shift: Vec<u32>,
}

impl AffineOperator {
    /// Builds an operator from an integer matrix and shift, reducing mod `modulus`.
    pub fn from_parts(n: usize, modulus: u32, matrix: &[i64], shift: &[i64]) -> Self {
        assert_eq!(matrix.len(), n * n, "matrix must be n×n");
        assert_eq!(shift.len(), n, "shift must have length n");
        AffineOperator {
            n,
            modulus,
            matrix: matrix.iter().map(|&v| reduce(v, modulus)).collect(),
            shift: shift.iter().map(|&v| reduce(v, modulus)).collect(),
        }
    }

    fn linear(n: usize, modulus: u32, entry: impl Fn(usize, usize) -> i64) -> Self {
        let mut matrix = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                matrix.push(reduce(entry(r, c), modulus));
            }
        }
        AffineOperator {
            n,
            modulus,
            matrix,
            shift: vec![0; n],
        }
    }

    pub fn identity(n: usize, modulus: u32) -> Self {
        Self::linear(n, modulus, |r, c| (r == c) as i64)
    }

    pub fn translation(n: usize, modulus: u32, k: i64) -> Self {
        let mut op = Self::identity(n, modulus);
        op.shift = vec![reduce(k, modulus); n];
        op
    }

    pub fn inversion(n: usize, modulus: u32, k: i64) -> Self {
        let mut op = Self::linear(n, modulus, |r, c| -((r == c) as i64));
        op.shift = vec![reduce(k, modulus); n];
        op
    }

    /// Matrix of `p_ij` (0-based `i`, `j`): row `r` is `e_i + e_j − e_r`.
    fn contextual0(n: usize, modulus: u32, i: usize, j: usize) -> Self {
        Self::linear(n, modulus, |r, c| {
            (c == i) as i64 + (c == j) as i64 - (c == r) as i64
        })
    }

    fn contextual_translation0(
        n: usize,
        modulus: u32,
        i: usize,
        j: usize,
        h: usize,
        k: usize,
    ) -> Self {
        Self::linear(n, modulus, |r, c| {
            (r == c) as i64 + (c == h) as i64 + (c == k) as i64 - (c == i) as i64 - (c == j) as i64
        })
    }

    fn rotation(n: usize, modulus: u32, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as usize;
        Self::linear(n, modulus, |r, c| (c == (r + k) % n) as i64)
    }

    fn transposition0(n: usize, modulus: u32, i: usize, j: usize) -> Self {
        Self::linear(n, modulus, |r, c| {
            let src = if r == i {
                j
            } else if r == j {
                i
            } else {
                r
            };
            (c == src) as i64
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn entry(&self, row: usize, col: usize) -> u32 {
        self.matrix[row * self.n + col]
    }

    pub fn shift(&self) -> &[u32] {
        &self.shift
    }

    /// Rows of the linear part.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.matrix.chunks(self.n).map(<[u32]>::to_vec).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.modulus)
    }

    pub fn apply(&self, s: &PitchSegment) -> Result<PitchSegment, PitchError> {
        if s.len() != self.n {
            return Err(PitchError::DimensionMismatch {
                op: self.n,
                segment: s.len(),
            });
        }
        if s.modulus() != self.modulus {
            return Err(PitchError::ModulusMismatch(self.modulus, s.modulus()));
        }
        let m = self.modulus as u64;
        let entries = (0..self.n)
            .map(|r| {
                let row = &self.matrix[r * self.n..(r + 1) * self.n];
                let acc = row
                    .iter()
                    .zip(s.entries())
                    .fold(self.shift[r] as u64, |acc, (&a, &x)| {
                        (acc + a as u64 * x as u64) % m
                    });
                acc as u32
            })
            .collect();
        Ok(PitchSegment {
            modulus: self.modulus,
            entries,
        })
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &AffineOperator) -> AffineOperator {
        assert_eq!(self.n, other.n, "operator sizes differ");
        assert_eq!(self.modulus, other.modulus, "operator moduli differ");
        let (n, m) = (self.n, self.modulus as u64);
        let mut matrix = vec![0u32; n * n];
        let mut shift = vec![0u32; n];
        for r in 0..n {
            for c in 0..n {
                let mut acc = 0u64;
                for t in 0..n {
                    acc += self.matrix[r * n + t] as u64 * other.matrix[t * n + c] as u64;
                }
                matrix[r * n + c] = (acc % m) as u32;
            }
            let mut acc = self.shift[r] as u64;
            for t in 0..n {
                acc += self.matrix[r * n + t] as u64 * other.shift[t] as u64;
            }
            shift[r] = (acc % m) as u32;
        }
        AffineOperator {
            n,
            modulus: self.modulus,
            matrix,
            shift,
        }
    }

    pub fn pow(&self, exponent: u32) -> AffineOperator {
        let mut result = Self::identity(self.n, self.modulus);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        result
    }

    /// Smallest `k ≥ 1` with `self^k = Id`, searched up to `limit`.
    pub fn order(&self, limit: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.compose(self);
        }
        None
    }
}

/// Named operators, convertible to an [`AffineOperator`] for a given `n` and `m`.
///
/// Text forms accepted by [`FromStr`]: `Id`, `T5`, `I`, `I4`, `p12` or `p1,5`,
/// `T^34_12`, `T^3_1` (translation by `x_3 − x_1`), `s`, `s^2`, `tau23`, `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum OperatorDescriptor {
    Identity,
    Translation {
        k: i64,
    },
    Inversion {
        k: i64,
    },
    Contextual {
        i: usize,
        j: usize,
    },
    /// `T^{hk}_{ij}`.
    ContextualTranslation {
        i: usize,
        j: usize,
        h: usize,
        k: usize,
    },
    /// `σ^k`.
    Rotation {
        k: i64,
    },
    Transposition {
        i: usize,
        j: usize,
    },
    /// `z = σ ∘ p_12`.
    VertexRotation,
}

impl OperatorDescriptor {
    pub fn p(i: usize, j: usize) -> Self {
        OperatorDescriptor::Contextual { i, j }
    }

    /// Shorthand `T^upper_lower`: translation by `x_upper − x_lower`.
    pub fn t(upper: usize, lower: usize) -> Self {
        OperatorDescriptor::ContextualTranslation {
            i: lower,
            j: lower,
            h: upper,
            k: lower,
        }
    }

    pub fn to_operator(&self, n: usize, modulus: u32) -> Result<AffineOperator, PitchError> {
        let idx = |i: usize| -> Result<usize, PitchError> {
            if i == 0 || i > n {
                Err(PitchError::IndexOutOfRange { index: i, n })
            } else {
                Ok(i - 1)
            }
        };
        if modulus < 2 {
            return Err(PitchError::InvalidModulus(modulus));
        }
        Ok(match *self {
            OperatorDescriptor::Identity => AffineOperator::identity(n, modulus),
            OperatorDescriptor::Translation { k } => AffineOperator::translation(n, modulus, k),
            OperatorDescriptor::Inversion { k } => AffineOperator::inversion(n, modulus, k),
            OperatorDescriptor::Contextual { i, j } => {
                if i == j {
                    return Err(PitchError::EqualIndices(i));
                }
                AffineOperator::contextual0(n, modulus, idx(i)?, idx(j)?)
            }
            OperatorDescriptor::ContextualTranslation { i, j, h, k } => {
                AffineOperator::contextual_translation0(
                    n,
                    modulus,
                    idx(i)?,
                    idx(j)?,
                    idx(h)?,
                    idx(k)?,
                )
            }
            OperatorDescriptor::Rotation { k } => AffineOperator::rotation(n, modulus, k),
            OperatorDescriptor::Transposition { i, j } => {
                AffineOperator::transposition0(n, modulus, idx(i)?, idx(j)?)
            }
            OperatorDescriptor::VertexRotation => AffineOperator::rotation(n, modulus, 1)
                .compose(&AffineOperator::contextual0(n, modulus, 0, 1)),
        })
    }

    /// Applies the operator to a segment directly.
    pub fn apply(&self, s: &PitchSegment) -> Result<PitchSegment, PitchError> {
        match *self {
            OperatorDescriptor::Identity => Ok(s.clone()),
            OperatorDescriptor::Translation { k } => Ok(s.transpose(k)),
            OperatorDescriptor::Inversion { k } => Ok(s.invert(k)),
            OperatorDescriptor::Contextual { i, j } => s.contextual_inversion(i, j),
            OperatorDescriptor::ContextualTranslation { i, j, h, k } => {
                s.contextual_translation(i, j, h, k)
            }
            OperatorDescriptor::Rotation { k } => s.permute(Permutation::Rotation(k)),
            OperatorDescriptor::Transposition { i, j } => {
                s.permute(Permutation::Transposition(i, j))
            }
            OperatorDescriptor::VertexRotation => s
                .contextual_inversion(1, 2)?
                .permute(Permutation::Rotation(1)),
        }
    }
}

impl fmt::Display for OperatorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            OperatorDescriptor::Identity => write!(f, "Id"),
            OperatorDescriptor::Translation { k } => write!(f, "T{k}"),
            OperatorDescriptor::Inversion { k } => write!(f, "I{k}"),
            OperatorDescriptor::Contextual { i, j } => write!(f, "p{i},{j}"),
            OperatorDescriptor::ContextualTranslation { i, j, h, k } => {
                if i == j && j == k {
                    write!(f, "T^{h}_{i}")
                } else {
                    write!(f, "T^{h},{k}_{i},{j}")
                }
            }
            OperatorDescriptor::Rotation { k } => write!(f, "s^{k}"),
            OperatorDescriptor::Transposition { i, j } => write!(f, "tau{i},{j}"),
            OperatorDescriptor::VertexRotation => write!(f, "z"),
        }
    }
}

/// Splits an index pair such as `12`, `1,2` or `1_2`.
fn parse_index_pair(text: &str, whole: &str) -> Result<(usize, usize), PitchError> {
    let text = text.trim_matches(|c| c == '(' || c == ')' || c == '_');
    let parts: Vec<&str> = text
        .split([',', '_', ' '])
        .filter(|s| !s.is_empty())
        .collect();
    let digits = |s: &str| -> Result<usize, PitchError> {
        s.parse::<usize>()
            .map_err(|_| parse_err(whole, "bad index"))
    };
    match parts.as_slice() {
        [a, b] => Ok((digits(a)?, digits(b)?)),
        [ab] if ab.len() == 2 && ab.chars().all(|c| c.is_ascii_digit()) => {
            let (a, b) = ab.split_at(1);
            Ok((digits(a)?, digits(b)?))
        }
        [single] if single.len() == 1 => Err(parse_err(whole, "expected two indices")),
        _ => Err(parse_err(whole, "expected two indices")),
    }
}

impl FromStr for OperatorDescriptor {
    type Err = PitchError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s = input.trim();
        let int = |t: &str| -> Result<i64, PitchError> {
            t.parse::<i64>()
                .map_err(|_| parse_err(input, "bad integer"))
        };
        match s {
            "Id" | "id" | "e" => return Ok(OperatorDescriptor::Identity),
            "I" => return Ok(OperatorDescriptor::Inversion { k: 0 }),
            "z" => return Ok(OperatorDescriptor::VertexRotation),
            "s" | "sigma" => return Ok(OperatorDescriptor::Rotation { k: 1 }),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("T^") {
            let (upper, lower) = rest
                .split_once('_')
                .ok_or_else(|| parse_err(input, "expected T^hk_ij"))?;
            let upper = upper.trim_matches(['{', '}']);
            let lower = lower.trim_matches(['{', '}']);
            if upper.len() == 1 && lower.len() == 1 {
                let h = int(upper)? as usize;
                let i = int(lower)? as usize;
                return Ok(OperatorDescriptor::t(h, i));
            }
            let (h, k) = parse_index_pair(upper, input)?;
            let (i, j) = parse_index_pair(lower, input)?;
            return Ok(OperatorDescriptor::ContextualTranslation { i, j, h, k });
        }
        if let Some(rest) = s.strip_prefix("tau") {
            let (i, j) = parse_index_pair(rest, input)?;
            return Ok(OperatorDescriptor::Transposition { i, j });
        }
        if let Some(rest) = s.strip_prefix("s^").or_else(|| s.strip_prefix("sigma^")) {
            return Ok(OperatorDescriptor::Rotation { k: int(rest)? });
        }
        if let Some(rest) = s.strip_prefix('p') {
            let (i, j) = parse_index_pair(rest, input)?;
            return Ok(OperatorDescriptor::Contextual { i, j });
        }
        if let Some(rest) = s.strip_prefix('T') {
            return Ok(OperatorDescriptor::Translation { k: int(rest)? });
        }
        if let Some(rest) = s.strip_prefix('I') {
            return Ok(OperatorDescriptor::Inversion { k: int(rest)? });
        }
        Err(parse_err(input, "unknown operator"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(text: &str) -> PitchSegment {
        PitchSegment::parse(text, 12).unwrap()
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(seg("0,1,9").transpose(0), seg("0,1,9"));
        assert_eq!(seg("0,1,9").transpose(1), seg("1,2,t"));
        assert_eq!(seg("0,1,3,5").transpose(7), seg("7,8,t,0"));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(seg("0,1,9").invert(0), seg("0,e,3"));
        assert_eq!(seg("0,0,0").invert(5), seg("5,5,5"));
        assert_eq!(seg("0,4,7,t,2").invert(4), seg("4,0,9,6,2"));
        let s = seg("0,4,7,t,2");
        assert_eq!(s.invert(7).invert(7), s);
    }

    #[test]
    fn contextual_inversion_examples() {
        assert_eq!(
            seg("0,1,9").contextual_inversion(1, 2).unwrap(),
            seg("1,0,4")
        );
        assert_eq!(
            seg("0,1,9").contextual_inversion(2, 3).unwrap(),
            seg("t,9,1")
        );
        assert_eq!(
            seg("5,5,5").contextual_inversion(1, 3).unwrap(),
            seg("5,5,5")
        );
        assert_eq!(
            seg("0,1,9").contextual_inversion(1, 2).unwrap(),
            seg("0,1,9").contextual_inversion(2, 1).unwrap()
        );
    }

    #[test]
    fn contextual_inversion_errors() {
        let s = seg("0,1,9");
        assert_eq!(
            s.contextual_inversion(1, 4),
            Err(PitchError::IndexOutOfRange { index: 4, n: 3 })
        );
        assert_eq!(
            s.contextual_inversion(0, 1),
            Err(PitchError::IndexOutOfRange { index: 0, n: 3 })
        );
        assert_eq!(
            s.contextual_inversion(2, 2),
            Err(PitchError::EqualIndices(2))
        );
    }

    #[test]
    fn contextual_translation_examples() {
        // T^{23}_{12} cancels to T^3_1: amount x_3 − x_1.
        let s = seg("0,1,9");
        assert_eq!(s.contextual_translation_amount(1, 2, 2, 3).unwrap(), 9);
        assert_eq!(s.contextual_translation(1, 2, 2, 3).unwrap(), seg("9,t,6"));
        let s = seg("0,1,3,5");
        assert_eq!(s.contextual_translation_amount(1, 2, 3, 4).unwrap(), 7);
        assert_eq!(
            s.contextual_translation(1, 2, 3, 4).unwrap(),
            seg("7,8,t,0")
        );
        assert_eq!(s.contextual_translation(2, 4, 2, 4).unwrap(), s);
    }

    #[test]
    fn permute_examples() {
        assert_eq!(
            seg("0,1,9").permute(Permutation::Rotation(1)).unwrap(),
            seg("1,9,0")
        );
        assert_eq!(
            seg("0,1,3,5")
                .permute(Permutation::Transposition(2, 3))
                .unwrap(),
            seg("0,3,1,5")
        );
        assert_eq!(
            seg("0,1,9").permute(Permutation::Rotation(3)).unwrap(),
            seg("0,1,9")
        );
        assert!(seg("0,1,9")
            .permute(Permutation::Transposition(1, 5))
            .is_err());
    }

    #[test]
    fn vertex_rotation_matrices() {
        let z3 = OperatorDescriptor::VertexRotation
            .to_operator(3, 12)
            .unwrap();
        // Rows of z = σ p_12 for n = 3.
        assert_eq!(
            z3.rows(),
            vec![vec![1, 0, 0], vec![1, 1, 11], vec![0, 1, 0]]
        );
        assert_eq!(z3.order(100), Some(6));
        let z4 = OperatorDescriptor::VertexRotation
            .to_operator(4, 12)
            .unwrap();
        assert_eq!(
            z4.rows(),
            vec![
                vec![1, 0, 0, 0],
                vec![1, 1, 11, 0],
                vec![1, 1, 0, 11],
                vec![0, 1, 0, 0]
            ]
        );
        assert_eq!(z4.order(100), Some(4));
        let p = OperatorDescriptor::p(1, 2).to_operator(3, 12).unwrap();
        assert!(p.compose(&p).is_identity());
        let sigma = OperatorDescriptor::Rotation { k: 1 }
            .to_operator(3, 12)
            .unwrap();
        assert_eq!(sigma.compose(&p), z3);
    }

    #[test]
    fn p12_matrix_matches_display() {
        let p = OperatorDescriptor::p(1, 2).to_operator(4, 12).unwrap();
        assert_eq!(
            p.rows(),
            vec![
                vec![0, 1, 0, 0],
                vec![1, 0, 0, 0],
                vec![1, 1, 11, 0],
                vec![1, 1, 0, 11]
            ]
        );
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(seg("0,4,7,t,2").entries(), &[0, 4, 7, 10, 2]);
        assert_eq!(seg("0 4 7 10 2").entries(), &[0, 4, 7, 10, 2]);
        assert_eq!(seg("047t2").entries(), &[0, 4, 7, 10, 2]);
        assert_eq!(seg("0,4,7,t,2").to_string(), "0,4,7,t,2");
        assert!(PitchSegment::parse("0,12,3", 12).is_err());
        assert!(PitchSegment::parse("0,1", 12).is_err());
        assert!(PitchSegment::parse("0,x,1", 12).is_err());
        let s7 = PitchSegment::parse("0,2,4,5,6", 7).unwrap();
        assert_eq!(s7.transpose(3).entries(), &[3, 5, 0, 1, 2]);
    }

    #[test]
    fn descriptor_parsing() {
        use OperatorDescriptor as D;
        assert_eq!("p12".parse::<D>().unwrap(), D::p(1, 2));
        assert_eq!("p1,5".parse::<D>().unwrap(), D::p(1, 5));
        assert_eq!("T^3_1".parse::<D>().unwrap(), D::t(3, 1));
        assert_eq!(
            "T^34_12".parse::<D>().unwrap(),
            D::ContextualTranslation {
                i: 1,
                j: 2,
                h: 3,
                k: 4
            }
        );
        assert_eq!("T5".parse::<D>().unwrap(), D::Translation { k: 5 });
        assert_eq!("I".parse::<D>().unwrap(), D::Inversion { k: 0 });
        assert_eq!("I4".parse::<D>().unwrap(), D::Inversion { k: 4 });
        assert_eq!("s^2".parse::<D>().unwrap(), D::Rotation { k: 2 });
        assert_eq!(
            "tau23".parse::<D>().unwrap(),
            D::Transposition { i: 2, j: 3 }
        );
        assert_eq!("z".parse::<D>().unwrap(), D::VertexRotation);
        assert!("q12".parse::<D>().is_err());
        for d in [
            D::p(1, 5),
            D::t(3, 1),
            D::Translation { k: 4 },
            D::Rotation { k: 2 },
        ] {
            assert_eq!(d.to_string().parse::<D>().unwrap(), d);
        }
    }

    #[test]
    fn operator_matches_direct_action() {
        use OperatorDescriptor as D;
        let s = seg("0,4,7,t,2");
        for d in [
            D::Identity,
            D::Translation { k: 5 },
            D::Inversion { k: 3 },
            D::p(2, 4),
            D::ContextualTranslation {
                i: 1,
                j: 2,
                h: 3,
                k: 5,
            },
            D::Rotation { k: 2 },
            D::Transposition { i: 1, j: 4 },
            D::VertexRotation,
        ] {
            let op = d.to_operator(5, 12).unwrap();
            assert_eq!(op.apply(&s).unwrap(), d.apply(&s).unwrap(), "{d}");
        }
    }

    #[test]
    fn serde_roundtrip() {
        let s = seg("0,4,7,t,2");
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"mod":12,"entries":[0,4,7,10,2]}"#);
        let back: PitchSegment = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<PitchSegment>(r#"{"mod":12,"entries":[0,13,1]}"#).is_err());
    }
}
