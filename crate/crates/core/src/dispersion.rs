//! Exact dispersion functions Π(e) for every supported scheme family.
//!
//! Π(e) counts the scheme classes whose quasi-distance is at most e. Each
//! closed form or generating-function route here is paired with a direct
//! enumeration oracle in the tests; the production paths never fall back to
//! floating point.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinat::{binomial, bounded_tuple_count, gaussian_binomial};
use crate::scheme::SchemeFamilyParams;
use crate::Error;

/// Π(e) values for e = 0..=e_max together with the first differences
/// δ(e) = Π(e) − Π(e−1).
#[derive(Clone, Debug, Serialize)]
pub struct DispersionProfile {
    pub family: SchemeFamilyParams,
    #[serde(serialize_with = "crate::scheme::serialize_biguint_seq")]
    pub values: Vec<BigUint>,
    #[serde(serialize_with = "crate::scheme::serialize_biguint_seq")]
    pub delta: Vec<BigUint>,
}

/// δ(w) for w = 0..=e_max where δ(w) is the number of partitions of w into at
/// most `max_parts` parts, each of size at most `max_size`.
fn box_partition_deltas(max_size: u64, max_parts: u64, e_max: u64) -> Vec<BigUint> {
    let e_max = e_max as usize;
    let parts_cap = (max_parts as usize).min(e_max);
    // dp[w][k]: partitions of w into exactly k parts of size <= max_size.
    let mut dp = vec![vec![BigUint::zero(); parts_cap + 1]; e_max + 1];
    dp[0][0] = BigUint::one();
    for size in 1..=(max_size as usize).min(e_max) {
        for w in size..=e_max {
            for k in 1..=parts_cap.min(w) {
                let prev = dp[w - size][k - 1].clone();
                dp[w][k] += prev;
            }
        }
    }
    dp.into_iter().map(|row| row.into_iter().sum()).collect()
}

/// δ_{q,n}(e): Lee compositions of weight exactly e, i.e. partitions of e
/// into at most n parts with parts in [1..⌊q/2⌋].
pub fn lee_delta(q: u64, n: u64, e: u64) -> BigUint {
    assert!(q >= 2, "Lee scheme needs q >= 2");
    let s = q / 2;
    if e > s * n {
        return BigUint::zero();
    }
    box_partition_deltas(s, n, e).pop().expect("e+1 entries")
}

/// Π_{q,n}(e) by coefficient extraction from `(1/(1−x)) [n+s over n]_x`.
pub fn lee_dispersion(q: u64, n: u64, e: u64) -> BigUint {
    assert!(q >= 2, "Lee scheme needs q >= 2");
    let s = q / 2;
    let gb = gaussian_binomial(n + s, n).expect("m <= n+s");
    gb.prefix_sum(e)
        .to_biguint()
        .expect("Gaussian binomial coefficients are non-negative")
}

/// Sum-rank dispersion for t uniform blocks with per-block rank bound d.
/// For e <= d this is the free count C(t+e, e); beyond d the exact bounded
/// count keeps the profile saturating at (d+1)^t.
pub fn sumrank_dispersion(t: u64, d: u64, e: u64) -> BigUint {
    if e <= d {
        binomial(t + e, e)
    } else {
        bounded_tuple_count(e, &vec![d; t as usize])
    }
}

/// Mixed-alphabet dispersion: tuples (s_1..s_k) with 0 <= s_i <= n_i and
/// Σ s_i <= e.
pub fn mixed_dispersion(bounds: &[u64], e: u64) -> BigUint {
    assert!(!bounds.is_empty(), "mixed scheme needs at least one block");
    bounded_tuple_count(e, bounds)
}

/// NRT dispersion: shapes λ in N^r with Σ λ_i <= n and Σ i·λ_i <= e.
pub fn nrt_dispersion(r: u64, n: u64, e: u64) -> BigUint {
    assert!(r >= 1 && n >= 1);
    box_partition_deltas(r, n, e).into_iter().sum()
}

/// q-ary Johnson dispersion, piecewise closed form validated against the
/// pair-enumeration oracle `|{(i,j): 0 <= j <= i <= w, i+j <= e}|`.
pub fn johnson_dispersion(w: u64, e: u64) -> BigUint {
    assert!(w >= 1);
    let half = e / 2;
    let value = if e <= w {
        (half + 1) * (e - half + 1)
    } else if e < 2 * w {
        (3 * w - e + 2) * (e - w + 1) / 2 + (w - half) * (half + w - e)
    } else {
        (w + 1) * (w + 2) / 2
    };
    BigUint::from(value)
}

/// Homogeneous-metric dispersion: statistics (π_Z, π_U, π_S, π_V) in N^4 with
/// π_Z + π_U + π_S + π_V = n and π_U + π_V + 2π_S <= t'. Direct enumeration;
/// no closed form is assumed. This is the generic count for alphabet
/// exponent k >= 3; over Z_4 the V part of the alphabet is empty and the
/// scheme realizes only the π_V = 0 statistics (see [`profile`]).
pub fn homogeneous_dispersion(n: u64, t_prime: u64) -> BigUint {
    let mut count = 0u64;
    for pi_u in 0..=n {
        for pi_s in 0..=n - pi_u {
            for pi_v in 0..=n - pi_u - pi_s {
                if pi_u + pi_v + 2 * pi_s <= t_prime {
                    count += 1;
                }
            }
        }
    }
    BigUint::from(count)
}

/// The k = 2 degenerate case: V is empty, so only (π_Z, π_U, π_S) occur.
fn homogeneous_dispersion_z4(n: u64, t_prime: u64) -> BigUint {
    let mut count = 0u64;
    for pi_u in 0..=n {
        for pi_s in 0..=n - pi_u {
            if pi_u + 2 * pi_s <= t_prime {
                count += 1;
            }
        }
    }
    BigUint::from(count)
}

/// Total class count of a family, the saturation value of its profile.
pub fn total_class_count(family: &SchemeFamilyParams) -> BigUint {
    match family {
        SchemeFamilyParams::Lee { q, n } => {
            let s = (*q / 2) as u64;
            binomial(*n as u64 + s, s)
        }
        SchemeFamilyParams::Nrt { n, r, .. } => binomial((*n + *r) as u64, *r as u64),
        SchemeFamilyParams::Mixed { blocks } => blocks
            .iter()
            .map(|&(n, _)| BigUint::from(n as u64 + 1))
            .product(),
        SchemeFamilyParams::Sumrank { blocks, .. } => blocks
            .iter()
            .map(|&(n, _)| BigUint::from(n as u64 + 1))
            .product(),
        SchemeFamilyParams::Johnson { w, .. } => {
            BigUint::from((*w as u64 + 1) * (*w as u64 + 2) / 2)
        }
        SchemeFamilyParams::Homogeneous { k: 2, n } => binomial(*n as u64 + 2, 2),
        SchemeFamilyParams::Homogeneous { n, .. } => binomial(*n as u64 + 3, 3),
        SchemeFamilyParams::Clarkliang => BigUint::from(4u32),
    }
}

/// Computes the dispersion profile of a family for e = 0..=e_max.
pub fn profile(family: &SchemeFamilyParams, e_max: u64) -> Result<DispersionProfile, Error> {
    family.validate()?;
    let value_at = |e: u64| -> BigUint {
        match family {
            SchemeFamilyParams::Lee { q, n } => lee_dispersion(*q as u64, *n as u64, e),
            SchemeFamilyParams::Nrt { n, r, .. } => nrt_dispersion(*r as u64, *n as u64, e),
            SchemeFamilyParams::Mixed { blocks } => {
                let bounds: Vec<u64> = blocks.iter().map(|&(n, _)| n as u64).collect();
                mixed_dispersion(&bounds, e)
            }
            SchemeFamilyParams::Sumrank { blocks, .. } => {
                let bounds: Vec<u64> = blocks.iter().map(|&(n, _)| n as u64).collect();
                bounded_tuple_count(e, &bounds)
            }
            SchemeFamilyParams::Johnson { w, .. } => johnson_dispersion(*w as u64, e),
            SchemeFamilyParams::Homogeneous { k: 2, n } => homogeneous_dispersion_z4(*n as u64, e),
            SchemeFamilyParams::Homogeneous { n, .. } => homogeneous_dispersion(*n as u64, e),
            SchemeFamilyParams::Clarkliang => {
                // d-values of CL(15,2) are (0, 1, 2, 2).
                BigUint::from(match e {
                    0 => 1u32,
                    1 => 2,
                    _ => 4,
                })
            }
        }
    };
    let values: Vec<BigUint> = (0..=e_max).map(value_at).collect();
    let delta: Vec<BigUint> = values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if i == 0 {
                v.clone()
            } else {
                v - &values[i - 1]
            }
        })
        .collect();
    Ok(DispersionProfile {
        family: family.clone(),
        values,
        delta,
    })
}
