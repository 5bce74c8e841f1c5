//! Face counts of the associahedron: exact Catalan numbers, the
//! Devadoss-Read generating function for non-equivalent faces, and an
//! independent brute-force counter over explicit tree enumeration.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::rat::Rat;

use super::tree::{dyslexic_canonical, enumerate_trees};

/// `C_k = binomial(2k, k) / (k + 1)`, exact.
pub fn catalan(k: u32) -> BigUint {
    let mut c = BigUint::one();
    // C_{i} = C_{i-1} * 2(2i - 1) / (i + 1)
    for i in 1..=k as u64 {
        c = c * BigUint::from(2 * (2 * i - 1)) / BigUint::from(i + 1);
    }
    c
}

/// Triangular table of Devadoss-Read coefficients `a_{m,n}`: the number of
/// non-equivalent faces of `K_n` of codimension `m - 1`, for `n <= max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTable {
    max_n: usize,
    /// `coeffs[(m, n)]` for `1 <= m <= n - 1`.
    coeffs: BTreeMap<(usize, usize), u64>,
}

impl SeriesTable {
    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn coefficient(&self, m: usize, n: usize) -> u64 {
        self.coeffs.get(&(m, n)).copied().unwrap_or(0)
    }

    /// Row for `K_n` indexed by codimension `0..n-2`, i.e.
    /// `(a_{1,n}, ..., a_{n-1,n})`.
    pub fn row_by_codim(&self, n: usize) -> Vec<u64> {
        (1..n).map(|m| self.coefficient(m, n)).collect()
    }

    /// Row for the sphere `S^{n-1}` ordered by increasing number of free
    /// parameters, the order used for the canonical-form table: parameter
    /// count `p` corresponds to codimension `n - 2 - p`.
    pub fn sphere_row(&self, sphere_dim: usize) -> Vec<u64> {
        let n = sphere_dim + 1; // K_{n} for S^{n-1}
        let mut row = self.row_by_codim(n);
        row.reverse();
        row
    }

    pub fn row_total(&self, n: usize) -> u64 {
        self.row_by_codim(n).iter().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<_> = (2..=self.max_n)
            .map(|n| json!({ "n": n, "by_codim": self.row_by_codim(n) }))
            .collect();
        json!({ "max_n": self.max_n, "rows": rows })
    }
}

// Bivariate polynomial truncated to total y-degree <= cap, with exact
// rational coefficients; key is (x-degree, y-degree).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
struct Series {
    terms: BTreeMap<(usize, usize), Rat>,
}

impl Series {
    fn y() -> Series {
        let mut s = Series::default();
        s.terms.insert((0, 1), Rat::one());
        s
    }

    fn one() -> Series {
        let mut s = Series::default();
        s.terms.insert((0, 0), Rat::one());
        s
    }

    fn add_term(&mut self, key: (usize, usize), c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn add(&self, rhs: &Series) -> Series {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    fn mul(&self, rhs: &Series, cap: usize) -> Series {
        let mut out = Series::default();
        for (&(ax, ay), ac) in &self.terms {
            for (&(bx, by), bc) in &rhs.terms {
                if ay + by > cap {
                    continue;
                }
                out.add_term((ax + bx, ay + by), ac * bc);
            }
        }
        out
    }

    fn scale_half(&self) -> Series {
        let half = Rat::new(1.into(), 2.into());
        let mut out = Series::default();
        for (&k, c) in &self.terms {
            out.add_term(k, c * &half);
        }
        out
    }

    /// Multiplication by `x`.
    fn shift_x(&self) -> Series {
        let mut out = Series::default();
        for (&(dx, dy), c) in &self.terms {
            out.add_term((dx + 1, dy), c.clone());
        }
        out
    }

    /// Substitution `(x, y) -> (x^2, y^2)`, truncated.
    fn double_exponents(&self, cap: usize) -> Series {
        let mut out = Series::default();
        for (&(ax, ay), c) in &self.terms {
            if 2 * ay <= cap {
                out.add_term((2 * ax, 2 * ay), c.clone());
            }
        }
        out
    }

    /// `1 / (1 - self)` for a series with no y-degree-0 part: the geometric
    /// sum terminates at the truncation order.
    fn geometric_inverse(&self, cap: usize) -> Series {
        assert!(
            self.terms.keys().all(|&(_, dy)| dy >= 1),
            "geometric inverse needs positive y-order"
        );
        let mut acc = Series::one();
        let mut power = Series::one();
        for _ in 0..cap {
            power = power.mul(self, cap);
            if power.terms.is_empty() {
                break;
            }
            acc = acc.add(&power);
        }
        acc
    }
}

/// Solves the Devadoss-Read functional equation
/// `A = y + x (A^2/(1-A) + (1+A) A(x^2,y^2)/(1-A(x^2,y^2))) / 2`
/// by fixed-point iteration on truncated series, and extracts the face
/// counts `a_{m,n}` for `n <= max_n`.
///
/// A term `x^m y^n` counts equivalence classes of trees with `n` leaves
/// and `m` internal nodes, i.e. faces of codimension `m - 1`: the leaf
/// contributes `y`, and each internal node contributes one factor of `x`
/// together with its child sequence counted up to reversal (the plain and
/// the palindromic halves of the bracket).
pub fn devadoss_read(max_n: usize) -> Result<SeriesTable> {
    if max_n < 2 {
        return Err(Error::InvalidInput(format!("max_n = {max_n} < 2")));
    }
    let cap = max_n;
    let mut a = Series::default();
    loop {
        let a2 = a.double_exponents(cap);
        let planar = a.mul(&a, cap).mul(&a.geometric_inverse(cap), cap);
        let symmetric = Series::one()
            .add(&a)
            .mul(&a2, cap)
            .mul(&a2.geometric_inverse(cap), cap);
        let next = Series::y().add(&planar.add(&symmetric).scale_half().shift_x());
        if next == a {
            break;
        }
        a = next;
    }

    let mut coeffs = BTreeMap::new();
    for (&(m, n), c) in &a.terms {
        if n < 2 || n > max_n {
            continue;
        }
        if !c.is_integer() {
            return Err(Error::Inconsistent(format!(
                "non-integral coefficient {c} at x^{m} y^{n} after convergence"
            )));
        }
        let v = c.to_integer().to_u64().ok_or_else(|| {
            Error::Inconsistent(format!("coefficient at x^{m} y^{n} is negative or too large"))
        })?;
        if m < 1 || m > n - 1 {
            return Err(Error::Inconsistent(format!(
                "unexpected nonzero coefficient at x^{m} y^{n}"
            )));
        }
        coeffs.insert((m, n), v);
    }
    Ok(SeriesTable { max_n, coeffs })
}

/// Counts trees with `n` leaves grouped by codimension (= internal nodes
/// minus one), raw planar and modulo dyslexic equivalence. Independent
/// oracle for `devadoss_read`.
pub fn face_counts_bruteforce(n: usize) -> Result<(Vec<u64>, Vec<u64>)> {
    if !(2..=10).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "brute-force face counting supports 2 <= n <= 10, got {n}"
        )));
    }
    let mut planar = vec![0u64; n - 1];
    let mut classes: Vec<HashSet<String>> = vec![HashSet::new(); n - 1];
    for tree in enumerate_trees(n, None) {
        let codim = tree.internal_count() - 1;
        planar[codim] += 1;
        classes[codim].insert(dyslexic_canonical(&tree).to_grammar());
    }
    let dyslexic = classes.into_iter().map(|s| s.len() as u64).collect();
    Ok((planar, dyslexic))
}
