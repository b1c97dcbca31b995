//! Integer lattices: Hermite normal form and kernels of `Z^k → Z_m`.

use serde::{Deserialize, Serialize};

/// Extended Euclid: returns `(g, x, y)` with `a·x + b·y = g ≥ 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a, b).0
}

/// `gcd(values…, modulus)`.
pub fn gcd_with_modulus(values: &[i64], modulus: i64) -> i64 {
    values.iter().fold(modulus, |g, &v| gcd(g, v))
}

/// Multiplicative inverse of `a` mod `m`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m))
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Output rows are nonzero, pivots sit in strictly increasing columns and are
/// positive, and entries above each pivot are reduced into `[0, pivot)`.
#[allow(clippy::needless_range_loop)]
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut m: Vec<Vec<i64>> = rows.to_vec();
    let mut pivot_row = 0;
    for col in 0..width {
        if pivot_row == m.len() {
            break;
        }
        // Euclid on column `col` among rows pivot_row.. until one nonzero entry remains.
        loop {
            let nonzero: Vec<usize> = (pivot_row..m.len()).filter(|&r| m[r][col] != 0).collect();
            if nonzero.len() <= 1 {
                if let Some(&r) = nonzero.first() {
                    m.swap(pivot_row, r);
                }
                break;
            }
            let best = *nonzero
                .iter()
                .min_by_key(|&&r| m[r][col].abs())
                .expect("nonempty");
            m.swap(pivot_row, best);
            for r in pivot_row + 1..m.len() {
                if m[r][col] != 0 {
                    let q = m[r][col].div_euclid(m[pivot_row][col]);
                    for c in col..width {
                        m[r][c] -= q * m[pivot_row][c];
                    }
                }
            }
        }
        if m[pivot_row][col] == 0 {
            continue;
        }
        if m[pivot_row][col] < 0 {
            for c in col..width {
                m[pivot_row][c] = -m[pivot_row][c];
            }
        }
        let p = m[pivot_row][col];
        for r in 0..pivot_row {
            let q = m[r][col].div_euclid(p);
            if q != 0 {
                for c in col..width {
                    m[r][c] -= q * m[pivot_row][c];
                }
            }
        }
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m
}

/// The lattice `{λ ∈ Z^k : Σ λ_i d_i ≡ 0 (mod m)}` with a canonical HNF basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelLattice {
    pub differences: Vec<i64>,
    pub modulus: i64,
    /// HNF basis rows; square and upper triangular since the lattice has full rank.
    pub basis: Vec<Vec<i64>>,
    /// `[Z^k : L]`, equal to the size of the image of the functional.
    pub index: i64,
}

impl KernelLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn functional(&self, v: &[i64]) -> i64 {
        v.iter()
            .zip(&self.differences)
            .map(|(a, b)| a * b)
            .sum::<i64>()
            .rem_euclid(self.modulus)
    }

    /// Membership by back-substitution against the triangular basis.
    pub fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.differences.len() {
            return false;
        }
        let mut rest = v.to_vec();
        for (i, row) in self.basis.iter().enumerate() {
            let pivot = row[i];
            if rest[i] % pivot != 0 {
                return false;
            }
            let q = rest[i] / pivot;
            for (r, b) in rest.iter_mut().zip(row) {
                *r -= q * b;
            }
        }
        rest.iter().all(|&x| x == 0)
    }

    /// True when `vectors` span exactly this lattice.
    pub fn is_spanned_by(&self, vectors: &[Vec<i64>]) -> bool {
        hermite_normal_form(vectors) == self.basis
    }
}

/// Kernel of `λ ↦ Σ λ_i d_i mod m` on `Z^k`.
///
/// Computed as the kernel of the integer row `(d_1, …, d_k, m)`: the augmented
/// rows `(a_i | e_i)` are reduced to HNF, the rows whose first entry vanishes
/// span the integer kernel, and dropping the coefficient of `m` projects it
/// bijectively onto the lattice.
pub fn kernel_lattice(differences: &[i64], modulus: i64) -> KernelLattice {
    assert!(
        !differences.is_empty(),
        "difference vector must be nonempty"
    );
    assert!(modulus > 0, "modulus must be positive");
    let k = differences.len();
    let mut coeffs: Vec<i64> = differences.iter().map(|d| d.rem_euclid(modulus)).collect();
    coeffs.push(modulus);
    let augmented: Vec<Vec<i64>> = coeffs
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let mut row = vec![0; k + 2];
            row[0] = a;
            row[i + 1] = 1;
            row
        })
        .collect();
    let reduced = hermite_normal_form(&augmented);
    let kernel: Vec<Vec<i64>> = reduced
        .iter()
        .filter(|row| row[0] == 0)
        .map(|row| row[1..=k].to_vec())
        .collect();
    let basis = hermite_normal_form(&kernel);
    let index = (0..basis.len()).map(|i| basis[i][i]).product();
    KernelLattice {
        differences: differences.to_vec(),
        modulus,
        basis,
        index,
    }
}
