//! Exact integer-partition, composition, binomial, and Gaussian-binomial
//! machinery, plus the two asymptotic companions used by the Lee bounds.
//!
//! - [`partition_count`]: p(n) via the pentagonal-number recurrence
//! - [`bounded_part_partition_count`]: p_{<=s}(e), parts not exceeding s
//! - [`gaussian_binomial`]: the q-analog `[n m]_x` as an integer polynomial
//! - [`bounded_tuple_count`]: lattice points of a box intersected with a simplex
//!
//! Everything returns exact `BigUint`/`BigInt` values; the only floating-point
//! results are [`ramanujan_asymptotic`] and [`schur_asymptotic`].

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::Error;

/// p(n), the number of partitions of n.
///
/// Production algorithm is Euler's pentagonal-number recurrence,
/// `p(i) = Σ_k (−1)^{k+1} [p(i − k(3k−1)/2) + p(i − k(3k+1)/2)]`,
/// which is O(n^{3/2}) additions.
pub fn partition_count(n: u64) -> BigUint {
    partition_counts_upto(n)
        .pop()
        .expect("table has n+1 entries")
}

/// The full table p(0), p(1), ..., p(n_max) from the pentagonal recurrence.
///
/// Intermediate sums are signed, so the table is built over `BigInt` and
/// converted at the end.
pub fn partition_counts_upto(n_max: u64) -> Vec<BigUint> {
    let n_max = n_max as usize;
    let mut table: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    table.push(BigInt::one());
    for i in 1..=n_max {
        let mut acc = BigInt::zero();
        let mut k: usize = 1;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let positive = k % 2 == 1;
            if positive {
                acc += &table[i - g1];
            } else {
                acc -= &table[i - g1];
            }
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= i {
                if positive {
                    acc += &table[i - g2];
                } else {
                    acc -= &table[i - g2];
                }
            }
            k += 1;
        }
        table.push(acc);
    }
    table
        .into_iter()
        .map(|v| {
            debug_assert!(!v.is_negative());
            v.to_biguint().expect("partition counts are non-negative")
        })
        .collect()
}

/// p_{<=s}(e): partitions of e into parts not exceeding s.
///
/// Coefficient extraction from `1/Π_{j=1..s} (1 − x^j)`; each factor is folded
/// into the truncated series in place.
pub fn bounded_part_partition_count(e: u64, s: u64) -> BigUint {
    bounded_part_partition_counts_upto(e, s)
        .pop()
        .expect("table has e+1 entries")
}

/// The series `Σ_e p_{<=s}(e) x^e` truncated at `x^{e_max}`, as coefficients.
pub fn bounded_part_partition_counts_upto(e_max: u64, s: u64) -> Vec<BigUint> {
    let e_max = e_max as usize;
    let mut coeffs = vec![BigUint::zero(); e_max + 1];
    coeffs[0] = BigUint::one();
    // Multiplying a truncated series by 1/(1 - x^j) is the prefix recurrence
    // c_i += c_{i-j}.
    for j in 1..=(s as usize).min(e_max) {
        for i in j..=e_max {
            let prev = coeffs[i - j].clone();
            coeffs[i] += prev;
        }
    }
    coeffs
}

/// Ramanujan's asymptotic `p(n) ~ exp(π sqrt(2n/3)) / (4n sqrt(3))`.
pub fn ramanujan_asymptotic(n: u64) -> f64 {
    assert!(n >= 1, "asymptotic requires n >= 1");
    let n = n as f64;
    (std::f64::consts::PI * (2.0 * n / 3.0).sqrt()).exp() / (4.0 * n * 3.0f64.sqrt())
}

/// Schur's asymptotic `p_{<=s}(e) ~ e^{s−1} / (s!(s−1)!)` for fixed s >= 2.
pub fn schur_asymptotic(e: u64, s: u64) -> f64 {
    assert!(s >= 2, "Schur asymptotic requires s >= 2");
    let num = (e as f64).powi(s as i32 - 1);
    num / (factorial_f64(s) * factorial_f64(s - 1))
}

fn factorial_f64(n: u64) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// C(e+k, k), the number of weak compositions of 0..=e into k parts.
pub fn weak_composition_cumulative(e: u64, k: u64) -> BigUint {
    binomial(e + k, k)
}

/// Exact count of integer tuples with `0 <= s_i <= bounds[i]` and `Σ s_i <= e`.
pub fn bounded_tuple_count(e: u64, bounds: &[u64]) -> BigUint {
    let cap = e as usize;
    // Truncated product of the box generating functions Π (1 + x + ... + x^{n_i}).
    let mut coeffs = vec![BigUint::zero(); cap + 1];
    coeffs[0] = BigUint::one();
    for &b in bounds {
        let mut next = vec![BigUint::zero(); cap + 1];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..=(b as usize).min(cap - i) {
                next[i + j] += c;
            }
        }
        coeffs = next;
    }
    let mut total = BigUint::zero();
    for c in coeffs {
        total += c;
    }
    total
}

/// Gaussian binomial `[n m]_x = (x)_n / ((x)_m (x)_{n−m})` with
/// `(x)_n = (1−x)(1−x²)⋯(1−xⁿ)`, as an integer polynomial.
///
/// Computed through the defining product using the symmetry `[n m] = [n n−m]`:
/// numerator `Π_{i=1..m'} (1 − x^{n−m'+i})`, denominator `Π_{i=1..m'} (1 − x^i)`,
/// and one exact long division. Rejects m > n.
pub fn gaussian_binomial(n: u64, m: u64) -> Result<IntPolynomial, Error> {
    if m > n {
        return Err(Error::GaussianIndex { n, m });
    }
    let m = m.min(n - m);
    let mut numerator = IntPolynomial::one();
    let mut denominator = IntPolynomial::one();
    for i in 1..=m {
        numerator = numerator.mul(&IntPolynomial::one_minus_pow((n - m + i) as usize));
        denominator = denominator.mul(&IntPolynomial::one_minus_pow(i as usize));
    }
    numerator.div_exact(&denominator)
}

/// Dense polynomial with arbitrary-precision integer coefficients,
/// index = exponent. Trailing coefficient is non-zero unless zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// `1 − x^j` (the constant 0 for j = 0 would be `1 − 1`; j must be >= 1).
    pub fn one_minus_pow(j: usize) -> Self {
        assert!(j >= 1);
        let mut coeffs = vec![BigInt::zero(); j + 1];
        coeffs[0] = BigInt::one();
        coeffs[j] = -BigInt::one();
        IntPolynomial { coeffs }
    }

    /// Builds from raw coefficients, stripping trailing zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    /// Exact polynomial long division; errors if the remainder is non-zero or
    /// any coefficient quotient is inexact.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, Error> {
        if divisor.is_zero() {
            return Err(Error::InexactDivision);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() - 1 < dd {
            return Err(Error::InexactDivision);
        }
        let lead = divisor.coeffs.last().expect("non-zero divisor");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&rem[i], lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (t, dc) in divisor.coeffs.iter().enumerate() {
                let sub = &q * dc;
                rem[i - dd + t] -= sub;
            }
            quot[i - dd] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(Self::from_coeffs(quot))
    }

    /// Evaluation at x = 1 (sum of coefficients).
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Sum of the coefficients of x^0..=x^e, as used for cumulative
    /// dispersion extraction behind a 1/(1−x) factor.
    pub fn prefix_sum(&self, e: u64) -> BigInt {
        self.coeffs.iter().take(e as usize + 1).sum()
    }
}
