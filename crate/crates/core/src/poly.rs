//! Sparse multivariate polynomials over the rationals in the ambient
//! phase-space variables `x_1..x_N, p_1..p_N`, plus momentum-free
//! polynomial matrices.
//!
//! Terms with zero coefficient are never stored, so two polynomials are
//! equal iff their term maps are equal. Identities on `T*S^n` are checked
//! here as ambient polynomial identities in `R^N x R^N`, which is strictly
//! stronger and avoids intrinsic sphere charts altogether.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use crate::MAX_AMBIENT_DIM;

/// Exponent vector of length `2N`: `x`-exponents first, then `p`-exponents.
pub type Mono = Vec<u16>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    ambient: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(ambient: usize) -> Self {
        assert!(
            ambient >= 1 && ambient <= MAX_AMBIENT_DIM,
            "ambient dimension {ambient} outside 1..={MAX_AMBIENT_DIM}"
        );
        Poly {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ambient: usize, c: Rat) -> Self {
        let mut p = Poly::zero(ambient);
        if !c.is_zero() {
            p.terms.insert(vec![0; 2 * ambient], c);
        }
        p
    }

    /// The position variable `x_i`, `1 <= i <= N`.
    pub fn var_x(ambient: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= ambient);
        let mut p = Poly::zero(ambient);
        let mut m = vec![0u16; 2 * ambient];
        m[i - 1] = 1;
        p.terms.insert(m, rat::rat(1));
        p
    }

    /// The momentum variable `p_i`, `1 <= i <= N`.
    pub fn var_p(ambient: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= ambient);
        let mut p = Poly::zero(ambient);
        let mut m = vec![0u16; 2 * ambient];
        m[ambient + i - 1] = 1;
        p.terms.insert(m, rat::rat(1));
        p
    }

    /// Builds a polynomial from raw `(exponents, coefficient)` terms;
    /// repeated monomials accumulate.
    pub fn from_terms(ambient: usize, terms: impl IntoIterator<Item = (Mono, Rat)>) -> Result<Self> {
        let mut p = Poly::zero(ambient);
        for (m, c) in terms {
            if m.len() != 2 * ambient {
                return Err(Error::SizeMismatch(m.len(), 2 * ambient));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True if no momentum variable occurs.
    pub fn is_momentum_free(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m[self.ambient..].iter().all(|&e| e == 0))
    }

    fn add_term(&mut self, mono: Mono, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scaled(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ambient);
        }
        Poly {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    /// Partial derivative with respect to variable index `v` in `0..2N`
    /// (`v < N` selects `x_{v+1}`, otherwise `p_{v-N+1}`).
    pub fn diff(&self, v: usize) -> Poly {
        assert!(v < 2 * self.ambient);
        let mut out = Poly::zero(self.ambient);
        for (m, c) in &self.terms {
            let e = m[v];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[v] = e - 1;
            out.add_term(m2, c * rat::rat(e as i64));
        }
        out
    }

    /// Evaluates at a point `(x_1..x_N, p_1..p_N)`.
    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        if point.len() != 2 * self.ambient {
            return Err(Error::InvalidInput(format!(
                "point length {} does not match 2N = {}",
                point.len(),
                2 * self.ambient
            )));
        }
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rat::to_f64(c);
            for (v, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t *= point[v];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Terms in graded lexicographic order on `(x, p)`.
    pub fn sorted_terms(&self) -> Vec<(&Mono, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| grlex(a, b));
        v
    }

    /// Debug serialization: sorted list of exponents / numerator / denominator.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| {
                json!({
                    "exponents": m,
                    "numerator": c.numer().to_string(),
                    "denominator": c.denom().to_string(),
                })
            })
            .collect();
        json!({ "ambient": self.ambient, "terms": terms })
    }

    /// Monomial-coefficient vector of this polynomial over a given
    /// monomial list (missing monomials contribute zero).
    pub fn coeff_vector(&self, monomials: &[Mono]) -> Vec<Rat> {
        monomials
            .iter()
            .map(|m| self.terms.get(m).cloned().unwrap_or_else(Rat::zero))
            .collect()
    }

    /// Union of monomials over a family, in graded lex order.
    pub fn monomial_union(polys: &[&Poly]) -> Vec<Mono> {
        let mut set: Vec<Mono> = Vec::new();
        for p in polys {
            for m in p.terms.keys() {
                set.push(m.clone());
            }
        }
        set.sort_by(|a, b| grlex(a, b));
        set.dedup();
        set
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.ambient != other.ambient {
            Err(Error::DimensionMismatch(self.ambient, other.ambient))
        } else {
            Ok(())
        }
    }
}

fn grlex(a: &Mono, b: &Mono) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.ambient;
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if v < n {
                    write!(f, "*x{}", v + 1)?;
                } else {
                    write!(f, "*p{}", v - n + 1)?;
                }
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_same(rhs).expect("dimension mismatch in +");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_same(rhs).expect("dimension mismatch in -");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_same(rhs).expect("dimension mismatch in *");
        let mut out = Poly::zero(self.ambient);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m: Mono = ma.iter().zip(mb).map(|(&a, &b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

/// Canonical Poisson bracket over all `N` ambient pairs `(x_a, p_a)`:
/// `{f, g} = sum_a (df/dx_a dg/dp_a - dg/dx_a df/dp_a)`.
pub fn poisson_bracket(f: &Poly, g: &Poly) -> Result<Poly> {
    f.check_same(g)?;
    let n = f.ambient;
    let mut out = Poly::zero(n);
    for a in 0..n {
        let fx = f.diff(a);
        let gp = g.diff(n + a);
        let gx = g.diff(a);
        let fp = f.diff(n + a);
        out = &out + &(&(&fx * &gp) - &(&gx * &fp));
    }
    Ok(out)
}

/// Square matrix of momentum-free polynomials, interpreting a Killing
/// tensor as an endomorphism field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    dim: usize,
    entries: Vec<Poly>, // row-major
}

impl PolyMatrix {
    pub fn zero(dim: usize) -> Self {
        PolyMatrix {
            dim,
            entries: (0..dim * dim).map(|_| Poly::zero(dim)).collect(),
        }
    }

    pub fn from_entries(dim: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::SizeMismatch(entries.len(), dim * dim));
        }
        for e in &entries {
            if e.ambient() != dim {
                return Err(Error::DimensionMismatch(e.ambient(), dim));
            }
            if !e.is_momentum_free() {
                return Err(Error::InvalidInput(
                    "matrix entries must be momentum-free".into(),
                ));
            }
        }
        Ok(PolyMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.dim + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, p: Poly) {
        assert!(p.is_momentum_free() && p.ambient() == self.dim);
        self.entries[i * self.dim + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.entry(i, j) == self.entry(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..=i).all(|j| self.entry(i, j) == &-self.entry(j, i)))
    }

    pub fn scaled(&self, c: &Rat) -> PolyMatrix {
        PolyMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|p| p.scaled(c)).collect(),
        }
    }

    pub fn add(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::SizeMismatch(self.dim, rhs.dim));
        }
        Ok(PolyMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::SizeMismatch(self.dim, rhs.dim));
        }
        Ok(PolyMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn matmul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::SizeMismatch(self.dim, rhs.dim));
        }
        let n = self.dim;
        let mut out = PolyMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Poly::zero(n);
                for k in 0..n {
                    acc = &acc + &(self.entry(i, k) * rhs.entry(k, j));
                }
                out.entries[i * n + j] = acc;
            }
        }
        Ok(out)
    }

    /// Number of nonzero terms summed over all entries.
    pub fn term_count(&self) -> usize {
        self.entries.iter().map(Poly::num_terms).sum()
    }

    /// Evaluates every entry at a position vector `x` (length `N`).
    pub fn eval(&self, x: &[f64]) -> Result<Vec<Vec<f64>>> {
        let n = self.dim;
        if x.len() != n {
            return Err(Error::SizeMismatch(x.len(), n));
        }
        let mut point = x.to_vec();
        point.extend(std::iter::repeat(0.0).take(n));
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                row.push(self.entry(i, j).eval(&point)?);
            }
            rows.push(row);
        }
        Ok(rows)
    }
}

/// Entrywise exact `AB - BA`.
pub fn matrix_commutator(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
    if a.dim != b.dim {
        return Err(Error::SizeMismatch(a.dim, b.dim));
    }
    a.matmul(b)?.sub(&b.matmul(a)?)
}
