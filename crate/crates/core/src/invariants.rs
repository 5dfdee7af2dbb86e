//! Exact Riemann–Hurwitz bookkeeping for cyclic branched covers of the disk.
//!
//! Everything here is integer arithmetic; the parity of every halved
//! quantity is asserted rather than assumed.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Genus of the total space of the `d`-fold cover branched over `d*m`
/// points: `(d^2 m - m d - 2d + 2) / 2`.
pub fn genus_dm(d: u64, m: u64) -> Result<u64> {
    if d < 2 {
        return Err(Error::InvalidParameter("genus_dm needs d >= 2".to_string()));
    }
    if m < 1 {
        return Err(Error::InvalidParameter("genus_dm needs m >= 1".to_string()));
    }
    let numerator = (d * d * m + 2) as i64 - (m * d + 2 * d) as i64;
    assert!(numerator % 2 == 0, "genus numerator must be even");
    assert!(numerator >= 0, "genus must be non-negative");
    Ok((numerator / 2) as u64)
}

/// Genus and boundary count of the `d`-fold cover branched over `n` points:
/// `g = (dn - n - d - gcd(d,n))/2 + 1`, `k = gcd(d,n)`.
pub fn rh_invariants(d: u64, n: u64) -> Result<(u64, u64)> {
    if d < 2 || n < 2 {
        return Err(Error::InvalidParameter(
            "rh_invariants needs d >= 2 and n >= 2".to_string(),
        ));
    }
    let k = d.gcd(&n);
    let numerator = (d * n) as i64 - n as i64 - d as i64 - k as i64;
    assert!(numerator % 2 == 0, "dn - n - d - gcd(d,n) must be even");
    let g = numerator / 2 + 1;
    assert!(g >= 0, "genus must be non-negative");
    Ok((g as u64, k))
}

/// Asserts that the two genus formulas agree when `n = d*m` (where the
/// boundary count equals `d`). Returns the common genus.
pub fn check_formula_consistency(d: u64, m: u64) -> Result<u64> {
    let g = genus_dm(d, m)?;
    let (g_rh, k) = rh_invariants(d, d * m)?;
    if g != g_rh || k != d {
        return Err(Error::InvalidStructure(format!(
            "formula mismatch at d={d}, m={m}: genus_dm={g}, rh=({g_rh},{k})"
        )));
    }
    Ok(g)
}

/// The genus bookkeeping of gluing `k` covers into one:
/// `sum_i g(d, m_i) + (k-1)(d-1) = g(d, sum_i m_i)`.
/// Returns both sides for reporting.
pub fn operad_genus_additivity(d: u64, parts: &[u64]) -> Result<(u64, u64)> {
    if parts.is_empty() {
        return Err(Error::InvalidParameter(
            "additivity needs k >= 1 parts".to_string(),
        ));
    }
    let k = parts.len() as u64;
    let mut lhs = (k - 1) * (d - 1);
    for &m in parts {
        lhs += genus_dm(d, m)?;
    }
    let rhs = genus_dm(d, parts.iter().sum())?;
    Ok((lhs, rhs))
}

/// A disconnected atomic surface: one cover of sheet count `d_i` per
/// component, all branched over the same `n` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeEmbedding {
    pub sheet_counts: Vec<u64>,
    pub branch_points: u64,
}

/// Per-component invariants plus the totals the decomposition prescribes:
/// boundary counts add up, and the master sheet count is the lcm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeInvariants {
    /// `(g_i, k_i)` for each component.
    pub components: Vec<(u64, u64)>,
    /// `k = sum k_i`, the boundary count of the total cover. The per-
    /// component `k_i` may exceed 2; only the component of the collapsed
    /// atomic surface is constrained to 1 or 2 boundaries.
    pub total_boundary: u64,
    /// `lcm(d_1, ..., d_m)`.
    pub master_sheet_count: u64,
}

pub fn composite_invariants(composite: &CompositeEmbedding) -> Result<CompositeInvariants> {
    if composite.sheet_counts.is_empty() {
        return Err(Error::InvalidParameter(
            "composite needs at least one component".to_string(),
        ));
    }
    let mut components = Vec::with_capacity(composite.sheet_counts.len());
    let mut total_boundary = 0;
    let mut master = 1u64;
    for &d in &composite.sheet_counts {
        let (g, k) = rh_invariants(d, composite.branch_points)?;
        total_boundary += k;
        master = master.lcm(&d);
        components.push((g, k));
    }
    Ok(CompositeInvariants {
        components,
        total_boundary,
        master_sheet_count: master,
    })
}
