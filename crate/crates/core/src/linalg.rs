//! Exact rank over the rationals by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Rank of the row family over `Q`. Rows are cleared to integers first,
/// then eliminated fraction-free, so no rounding can ever occur.
pub fn exact_rank(rows: &[Vec<Rat>]) -> Result<usize> {
    if rows.is_empty() {
        return Ok(0);
    }
    let cols = rows[0].len();
    for r in rows {
        if r.len() != cols {
            return Err(Error::SizeMismatch(r.len(), cols));
        }
    }
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    Ok(bareiss_rank(&mut m, cols))
}

fn clear_denominators(row: &[Rat]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in row {
        l = l.lcm(c.denom());
    }
    row.iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect()
}

fn bareiss_rank(m: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = m.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        // pivot search: smallest nonzero magnitude keeps entries small
        let pivot = (row..rows)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].magnitude().bits());
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        for r in row + 1..rows {
            for c in col + 1..cols {
                let num = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[r][c] = q;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        row += 1;
        rank += 1;
    }
    rank
}
