//! Reduced homology ranks over prime fields by sparse column reduction of
//! boundary matrices.

use serde::Serialize;

use super::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub const DEFAULT_PRIMES: [u64; 2] = [2, 32003];

/// Reduced Betti numbers `b~_0 .. b~_k` over GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    #[serde(rename = "p")]
    pub field_prime: u64,
    #[serde(rename = "betti")]
    pub reduced_betti: Vec<usize>,
    /// Highest degree computed, -1 when nothing was computed.
    pub computed_up_to: i64,
    pub truncated: bool,
    pub empty: bool,
}

impl BettiVector {
    pub fn get(&self, d: usize) -> usize {
        self.reduced_betti.get(d).copied().unwrap_or(0)
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Highest degree whose homology the stored skeleton determines. `None`
/// means every degree (the complex is complete).
pub fn reliable_degree(k: &SimplicialComplex) -> Option<usize> {
    k.is_truncated().then(|| k.dim_cap().saturating_sub(1))
}

/// Reduced Betti numbers in every degree the complex determines: up to
/// `dim_cap - 1` for truncated complexes, up to the top dimension otherwise.
pub fn homology_ranks(k: &SimplicialComplex, p: u64) -> Result<BettiVector> {
    let top = match reliable_degree(k) {
        Some(d) => Some(d),
        None => k.dimension(),
    };
    compute(k, p, top)
}

/// Reduced Betti numbers in degrees `0..=degree`. Fails when the complex is
/// truncated below what that degree needs.
pub fn homology_ranks_up_to(k: &SimplicialComplex, p: u64, degree: usize) -> Result<BettiVector> {
    if let Some(max) = reliable_degree(k) {
        if degree > max {
            return Err(Error::Truncation(format!(
                "degree {degree} requested but complex is truncated at dimension {}; reliable up to {max}",
                k.dim_cap()
            )));
        }
    }
    compute(k, p, Some(degree))
}

fn compute(k: &SimplicialComplex, p: u64, top: Option<usize>) -> Result<BettiVector> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if p > u32::MAX as u64 {
        return Err(Error::InvalidArgument(format!("prime {p} too large")));
    }
    let Some(top) = top.filter(|_| !k.is_empty()) else {
        return Ok(BettiVector {
            field_prime: p,
            reduced_betti: Vec::new(),
            computed_up_to: -1,
            truncated: k.is_truncated(),
            empty: k.is_empty(),
        });
    };
    // ranks[d] = rank of the boundary out of degree d, with the
    // augmentation in degree 0
    let ranks: Vec<usize> = (0..=top + 1).map(|d| boundary_rank(k, d, p)).collect();
    let reduced_betti = (0..=top).map(|d| k.count(d) - ranks[d] - ranks[d + 1]).collect();
    Ok(BettiVector {
        field_prime: p,
        reduced_betti,
        computed_up_to: top as i64,
        truncated: k.is_truncated(),
        empty: false,
    })
}

/// Rank of the boundary map from `d`-chains to `(d-1)`-chains over GF(p).
pub fn boundary_rank(k: &SimplicialComplex, d: usize, p: u64) -> usize {
    if d == 0 {
        return usize::from(k.count(0) > 0);
    }
    let rows = k.count(d - 1);
    let mut columns: Vec<Vec<(u32, u32)>> = k
        .simplices(d)
        .map(|s| {
            let mut col: Vec<(u32, u32)> = (0..s.len())
                .map(|skip| {
                    let face: Vec<u32> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    let row = k.index_of(&face).expect("complex is closed under faces") as u32;
                    let coeff = if skip % 2 == 0 { 1 } else { (p - 1) as u32 };
                    (row, coeff)
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    // sparsest columns first; stable, so ties keep simplex order
    columns.sort_by_key(Vec::len);
    reduce_rank(columns, rows, p)
}

/// Rank of a sparse matrix given as columns of sorted `(row, value)` entries
/// with values in `0..p`.
pub fn reduce_rank(columns: Vec<Vec<(u32, u32)>>, rows: usize, p: u64) -> usize {
    let mut pivot_col: Vec<Option<usize>> = vec![None; rows];
    let mut reduced: Vec<Vec<(u32, u32)>> = Vec::with_capacity(columns.len());
    for mut col in columns {
        col.retain(|&(_, v)| v != 0);
        while let Some(&(low, val)) = col.last() {
            match pivot_col[low as usize] {
                Some(j) => {
                    let other = &reduced[j];
                    let other_low = other.last().expect("pivot column non-empty").1 as u64;
                    let factor = val as u64 * mod_inverse(other_low, p) % p;
                    col = axpy(&col, other, p - factor, p);
                }
                None => {
                    pivot_col[low as usize] = Some(reduced.len());
                    reduced.push(col);
                    break;
                }
            }
        }
    }
    reduced.len()
}

// a + scale * b, both sorted by row
fn axpy(a: &[(u32, u32)], b: &[(u32, u32)], scale: u64, p: u64) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, (b[j].1 as u64 * scale % p) as u32));
            j += 1;
        } else {
            let v = (a[i].1 as u64 + b[j].1 as u64 * scale) % p;
            if v != 0 {
                out.push((a[i].0, v as u32));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}
