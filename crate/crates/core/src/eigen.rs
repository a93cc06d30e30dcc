//! First eigenvalues of the schemes: Krawtchouk polynomials, a character-sum
//! oracle for translation schemes over finite abelian groups, the Lee
//! eigenvalue generating function, direct-product tables, and Lloyd
//! polynomial evaluation.
//!
//! The character oracle is the ground truth here: every closed form in this
//! module is validated against it rather than trusted.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::{ClassIndex, Error};

/// Absolute tolerance for discarding imaginary residue of character sums and
/// for within-class grouping consistency.
const CHAR_TOL: f64 = 1e-9;

/// Matrix of first eigenvalues `P_k(j)` indexed by (class k, eigenvalue index
/// j). Entries are exact integers stored in `f64` when `exact` is set.
#[derive(Clone, Debug, Serialize)]
pub struct EigenTable {
    pub classes: Vec<ClassIndex>,
    pub eigen_indices: Vec<ClassIndex>,
    /// `values[k][j] = P_k(j)`.
    pub values: Vec<Vec<f64>>,
    #[serde(serialize_with = "crate::scheme::serialize_biguint_seq")]
    pub valencies: Vec<BigUint>,
    pub exact: bool,
}

impl EigenTable {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Zero-detection tolerance matching the table: 0 for exact tables,
    /// relative 1e-6 otherwise.
    pub fn zero_tolerance(&self) -> f64 {
        if self.exact {
            0.0
        } else {
            1e-6
        }
    }
}

/// Finite abelian group presented as a product of cyclic factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GroupSpec {
    /// `Z_modulus ^ copies` (covers `Z_q^n` and `Z_{2^k}^n`).
    Power {
        modulus: u32,
        copies: usize,
    },
    /// Additive group of `F_q^{rows x cols}` for prime q.
    MatrixSpace {
        q: u32,
        rows: usize,
        cols: usize,
    },
    Product(Vec<GroupSpec>),
}

impl GroupSpec {
    /// The cyclic moduli of the underlying coordinate presentation.
    pub fn moduli(&self) -> Vec<u32> {
        match self {
            GroupSpec::Power { modulus, copies } => vec![*modulus; *copies],
            GroupSpec::MatrixSpace { q, rows, cols } => vec![*q; rows * cols],
            GroupSpec::Product(parts) => parts.iter().flat_map(|p| p.moduli()).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.moduli().iter().map(|&m| m as usize).product()
    }
}

/// Mixed-radix digit expansion with little-endian strides.
pub(crate) fn digits_of(mut index: usize, moduli: &[u32], out: &mut [u32]) {
    for (d, &m) in out.iter_mut().zip(moduli) {
        *d = (index % m as usize) as u32;
        index /= m as usize;
    }
}

pub(crate) fn index_of(digits: &[u32], moduli: &[u32]) -> usize {
    let mut idx = 0usize;
    let mut stride = 1usize;
    for (&d, &m) in digits.iter().zip(moduli) {
        idx += d as usize * stride;
        stride *= m as usize;
    }
    idx
}

fn lcm_of(moduli: &[u32]) -> u64 {
    moduli
        .iter()
        .fold(1u64, |acc, &m| num_integer::lcm(acc, m as u64))
}

/// First eigenvalues of a translation scheme by direct character sums:
/// `P_k(χ) = Σ_{x in class k} χ(x)`, with characters grouped by the class
/// index of their index vector.
///
/// Rejects class maps that are not symmetric (`class(-x) != class(x)`),
/// imaginary residue above tolerance, and grouping inconsistencies. When all
/// entries land within tolerance of integers the table is rounded and marked
/// exact.
pub fn translation_scheme_eigenvalues(
    moduli: &[u32],
    class_of: impl Fn(&[u32]) -> ClassIndex,
) -> Result<EigenTable, Error> {
    translation_scheme_eigenvalues_grouped(moduli, &class_of, &class_of)
}

/// As [`translation_scheme_eigenvalues`], but with a separate grouping map
/// for character index vectors. Needed when the dual labeling differs from
/// the primal one (the NRT scheme groups characters by the shape of the
/// block-reversed index vector).
pub fn translation_scheme_eigenvalues_grouped(
    moduli: &[u32],
    class_of: &dyn Fn(&[u32]) -> ClassIndex,
    char_class_of: &dyn Fn(&[u32]) -> ClassIndex,
) -> Result<EigenTable, Error> {
    assert!(!moduli.is_empty(), "group must have at least one factor");
    let size: usize = moduli.iter().map(|&m| m as usize).product();
    let width = moduli.len();

    // Label every element and fix the canonical class order: diagonal
    // (label of 0) first, the rest lexicographic.
    let mut labels: Vec<ClassIndex> = Vec::with_capacity(size);
    let mut digits = vec![0u32; width];
    for i in 0..size {
        digits_of(i, moduli, &mut digits);
        labels.push(class_of(&digits));
    }
    let diag = labels[0].clone();
    let mut rest: Vec<ClassIndex> = labels
        .iter()
        .filter(|l| **l != diag)
        .cloned()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut classes = vec![diag];
    classes.append(&mut rest);
    let class_id: HashMap<&ClassIndex, usize> =
        classes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let ids: Vec<usize> = labels.iter().map(|l| class_id[l]).collect();

    // Symmetric scheme requirement: class(-x) = class(x).
    let mut neg = vec![0u32; width];
    for i in 0..size {
        digits_of(i, moduli, &mut digits);
        for (nd, (&d, &m)) in neg.iter_mut().zip(digits.iter().zip(moduli)) {
            *nd = (m - d) % m;
        }
        if ids[index_of(&neg, moduli)] != ids[i] {
            return Err(Error::NonSymmetricClasses { x: i });
        }
    }

    let n_classes = classes.len();
    let mut valencies = vec![0u64; n_classes];
    for &id in &ids {
        valencies[id] += 1;
    }

    // Exact phase arithmetic: χ_a(x) = e(Σ a_j x_j (L/m_j) / L).
    let l = lcm_of(moduli);
    let roots: Vec<Complex64> = (0..l)
        .map(|t| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t as f64 / l as f64))
        .collect();
    let weights: Vec<u64> = moduli.iter().map(|&m| l / m as u64).collect();

    let all_digits: Vec<Vec<u32>> = (0..size)
        .map(|i| {
            let mut d = vec![0u32; width];
            digits_of(i, moduli, &mut d);
            d
        })
        .collect();

    let mut rows: Vec<Option<Vec<f64>>> = vec![None; n_classes];
    for a in 0..size {
        let digits_a = &all_digits[a];
        let group = char_class_of(digits_a);
        let Some(&gid) = class_id.get(&group) else {
            return Err(Error::InvalidParams(format!(
                "character group label {group:?} is not a class label"
            )));
        };
        let mut sums = vec![Complex64::zero(); n_classes];
        for (x, digits_x) in all_digits.iter().enumerate() {
            let mut t = 0u64;
            for j in 0..width {
                t = (t + digits_a[j] as u64 * digits_x[j] as u64 % moduli[j] as u64 * weights[j])
                    % l;
            }
            sums[ids[x]] += roots[t as usize];
        }
        let mut row = Vec::with_capacity(n_classes);
        for s in &sums {
            if s.im.abs() > CHAR_TOL {
                return Err(Error::ImaginaryResidue {
                    residue: s.im.abs(),
                });
            }
            row.push(s.re);
        }
        match &rows[gid] {
            None => rows[gid] = Some(row),
            Some(prev) => {
                let dev = prev
                    .iter()
                    .zip(&row)
                    .map(|(p, r)| (p - r).abs())
                    .fold(0.0f64, f64::max);
                if dev > CHAR_TOL {
                    return Err(Error::CharacterGrouping { deviation: dev });
                }
            }
        }
    }

    // rows[j] holds the character row for eigen index j; transpose into
    // values[k][j] = P_k(χ_j).
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n_classes);
    for (j, r) in rows.into_iter().enumerate() {
        cols.push(r.ok_or_else(|| {
            Error::InvalidParams(format!(
                "no character index carries the class label {:?}",
                classes[j]
            ))
        })?);
    }
    let mut values = vec![vec![0.0f64; n_classes]; n_classes];
    for (j, col) in cols.iter().enumerate() {
        for (k, v) in col.iter().enumerate() {
            values[k][j] = *v;
        }
    }

    let exact = values
        .iter()
        .flatten()
        .all(|v| (v - v.round()).abs() <= CHAR_TOL);
    if exact {
        for v in values.iter_mut().flatten() {
            *v = v.round();
        }
    }

    Ok(EigenTable {
        eigen_indices: classes.clone(),
        classes,
        values,
        valencies: valencies.into_iter().map(BigUint::from).collect(),
        exact,
    })
}

/// Krawtchouk polynomial of the Hamming scheme H(n, q):
/// `K_k(i) = Σ_j (−1)^j (q−1)^{k−j} C(i,j) C(n−i, k−j)`, exact.
pub fn krawtchouk(k: u64, i: u64, n: u64, q: u64) -> i64 {
    assert!(q >= 2 && k <= n && i <= n);
    let mut acc = BigInt::zero();
    for j in 0..=k {
        let c1 = crate::combinat::binomial(i, j);
        if c1.is_zero() {
            continue;
        }
        let c2 = crate::combinat::binomial(n - i, k - j);
        if c2.is_zero() {
            continue;
        }
        let term = BigInt::from(c1 * c2) * BigInt::from(q - 1).pow((k - j) as u32);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc.to_i64().expect("krawtchouk value fits in i64")
}

/// The Lee eigenvalue generating polynomial for one eigenvalue index.
///
/// For an index vector with Lee composition `(i_0..i_s)` this is the product
/// `Π_l f_l(z)^{i_l}` whose coefficient at `z^k = z_1^{k_1}…z_s^{k_s}` equals
/// the eigenvalue `P_k` between class `k` and that index. The factor is
///
/// - q odd:  `f_l(z) = 1 + 2 Σ_{m=1..s} z_m cos(2π m l / q)`
/// - q even: `f_l(z) = 1 + 2 Σ_{m=1..s−1} z_m cos(2π m l / q) + (−1)^l z_s`
pub struct LeeEigenPoly {
    vars: usize,
    terms: HashMap<Vec<u32>, f64>,
}

impl LeeEigenPoly {
    /// Coefficient of the monomial `z^k`; zero if absent. `k` lists the
    /// non-identity entries `(k_1..k_s)` of a Lee composition.
    pub fn coefficient(&self, k: &[u32]) -> f64 {
        assert_eq!(k.len(), self.vars);
        self.terms.get(k).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, z: &[f64]) -> f64 {
        assert_eq!(z.len(), self.vars);
        self.terms
            .iter()
            .map(|(expo, c)| {
                c * expo
                    .iter()
                    .zip(z)
                    .map(|(&e, zi)| zi.powi(e as i32))
                    .product::<f64>()
            })
            .sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, f64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }
}

/// Builds the Lee eigenvalue generating polynomial for alphabet `q`, length
/// `n`, and eigenvalue index composition `(i_0..i_s)`. Rejects compositions
/// that do not sum to `n`.
pub fn lee_eigen_gf(q: u64, n: u64, composition: &[u32]) -> Result<LeeEigenPoly, Error> {
    let s = (q / 2) as usize;
    assert!(q >= 2, "Lee scheme needs q >= 2");
    if composition.len() != s + 1 {
        return Err(Error::LengthMismatch {
            left: composition.len(),
            right: s + 1,
        });
    }
    let total: u64 = composition.iter().map(|&c| c as u64).sum();
    if total != n {
        return Err(Error::CompositionSum {
            got: total,
            expected: n,
        });
    }

    // Linear factor f_l as (constant, per-variable coefficients).
    let factor = |l: usize| -> (f64, Vec<f64>) {
        let mut lin = vec![0.0f64; s];
        if q % 2 == 1 {
            for m in 1..=s {
                lin[m - 1] = 2.0 * (2.0 * std::f64::consts::PI * (m * l) as f64 / q as f64).cos();
            }
        } else {
            for m in 1..s {
                lin[m - 1] = 2.0 * (2.0 * std::f64::consts::PI * (m * l) as f64 / q as f64).cos();
            }
            lin[s - 1] = if l % 2 == 0 { 1.0 } else { -1.0 };
        }
        (1.0, lin)
    };

    let mut terms: HashMap<Vec<u32>, f64> = HashMap::new();
    terms.insert(vec![0u32; s], 1.0);
    for (l, &mult) in composition.iter().enumerate() {
        let (c0, lin) = factor(l);
        for _ in 0..mult {
            let mut next: HashMap<Vec<u32>, f64> = HashMap::with_capacity(terms.len() * (s + 1));
            for (expo, coeff) in &terms {
                *next.entry(expo.clone()).or_insert(0.0) += coeff * c0;
                for (m, &lc) in lin.iter().enumerate() {
                    if lc != 0.0 {
                        let mut bumped = expo.clone();
                        bumped[m] += 1;
                        *next.entry(bumped).or_insert(0.0) += coeff * lc;
                    }
                }
            }
            terms = next;
        }
    }
    Ok(LeeEigenPoly { vars: s, terms })
}

/// Kronecker-style product of eigen tables over tuple indices:
/// `P_(k_1..k_t)(i_1..i_t) = Π_j P^{(j)}_{k_j}(i_j)`.
///
/// Class labels are concatenations of the factor labels, reordered to the
/// canonical convention (diagonal first, then lexicographic).
pub fn product_scheme_eigenvalues(factors: &[EigenTable]) -> Result<EigenTable, Error> {
    let first = factors.first().ok_or(Error::InvalidParams(
        "product of eigen tables needs at least one factor".into(),
    ))?;
    let mut classes: Vec<ClassIndex> = first.classes.clone();
    let mut eigen_indices: Vec<ClassIndex> = first.eigen_indices.clone();
    let mut values = first.values.clone();
    let mut valencies = first.valencies.clone();
    let mut exact = first.exact;

    for f in &factors[1..] {
        let n_rows = classes.len() * f.classes.len();
        let mut new_classes = Vec::with_capacity(n_rows);
        let mut new_eigen = Vec::with_capacity(eigen_indices.len() * f.eigen_indices.len());
        let mut new_values = vec![vec![0.0; eigen_indices.len() * f.eigen_indices.len()]; n_rows];
        let mut new_val = Vec::with_capacity(n_rows);
        for (k1, c1) in classes.iter().enumerate() {
            for (k2, c2) in f.classes.iter().enumerate() {
                let mut c = c1.clone();
                c.extend_from_slice(c2);
                new_classes.push(c);
                new_val.push(&valencies[k1] * &f.valencies[k2]);
                let row = &mut new_values[k1 * f.classes.len() + k2];
                for (j1, _) in eigen_indices.iter().enumerate() {
                    for (j2, _) in f.eigen_indices.iter().enumerate() {
                        row[j1 * f.eigen_indices.len() + j2] = values[k1][j1] * f.values[k2][j2];
                    }
                }
            }
        }
        for i1 in &eigen_indices {
            for i2 in &f.eigen_indices {
                let mut c = i1.clone();
                c.extend_from_slice(i2);
                new_eigen.push(c);
            }
        }
        classes = new_classes;
        eigen_indices = new_eigen;
        values = new_values;
        valencies = new_val;
        exact = exact && f.exact;
    }

    // Canonical reorder: diagonal label (position 0 of every factor) first.
    let row_perm = canonical_permutation(&classes);
    let col_perm = canonical_permutation(&eigen_indices);
    let mut table = EigenTable {
        classes: row_perm.iter().map(|&i| classes[i].clone()).collect(),
        eigen_indices: col_perm.iter().map(|&i| eigen_indices[i].clone()).collect(),
        values: row_perm
            .iter()
            .map(|&i| col_perm.iter().map(|&j| values[i][j]).collect())
            .collect(),
        valencies: row_perm.iter().map(|&i| valencies[i].clone()).collect(),
        exact,
    };
    if table.exact {
        for v in table.values.iter_mut().flatten() {
            *v = v.round();
        }
    }
    Ok(table)
}

/// Permutation putting index 0 first and sorting the rest lexicographically.
fn canonical_permutation(labels: &[ClassIndex]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..labels.len()).collect();
    perm.sort_by(|&a, &b| {
        if a == 0 || b == 0 {
            a.cmp(&b)
        } else {
            labels[a].cmp(&labels[b])
        }
    });
    perm
}

/// Lloyd polynomial value `Ψ_e(j) = Σ_{d(k) <= e} P_k(j)` for eigenvalue
/// index position `j`.
pub fn lloyd_polynomial(
    table: &EigenTable,
    quasi_distance: impl Fn(&ClassIndex) -> u64,
    e: u64,
    j: usize,
) -> f64 {
    table
        .classes
        .iter()
        .enumerate()
        .filter(|(_, c)| quasi_distance(c) <= e)
        .map(|(k, _)| table.values[k][j])
        .sum()
}

/// Number of eigenvalue indices j with `|Ψ_e(j)| <= tolerance * max_j |Ψ_e(j)|`.
pub fn lloyd_zero_count(
    table: &EigenTable,
    quasi_distance: impl Fn(&ClassIndex) -> u64,
    e: u64,
    tolerance: f64,
) -> usize {
    assert!(tolerance >= 0.0);
    let psi: Vec<f64> = (0..table.eigen_indices.len())
        .map(|j| lloyd_polynomial(table, &quasi_distance, e, j))
        .collect();
    let scale = psi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    psi.iter().filter(|v| v.abs() <= tolerance * scale).count()
}
