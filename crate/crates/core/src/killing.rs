//! The generator Killing tensors `K_ij` on `S^{N-1}` with diagonal
//! algebraic curvature tensor, in both representations: as the phase-space
//! function `(x_i p_j - x_j p_i)^2` and as the momentum-free symmetric
//! matrix with block `[[x_j^2, -x_i x_j], [-x_i x_j, x_i^2]]` in rows and
//! columns `i, j`. The generators satisfy the Kohno-Drinfeld relations in
//! both Lie algebras; this module checks them exactly.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::exact_rank;
use crate::poly::{matrix_commutator, poisson_bracket, Poly, PolyMatrix};
use crate::rat::{self, Rat};

/// Unordered index pair `(i, j)` with `1 <= i < j <= N`; `(j, i)`
/// normalizes to `(i, j)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct KillingIndex {
    i: usize,
    j: usize,
    ambient: usize,
}

impl KillingIndex {
    pub fn new(i: usize, j: usize, ambient: usize) -> Result<Self> {
        if i == j || i < 1 || j < 1 || i > ambient || j > ambient {
            return Err(Error::InvalidInput(format!(
                "invalid Killing index ({i},{j}) for ambient dimension {ambient}"
            )));
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        Ok(KillingIndex { i, j, ambient })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }
}

/// All pairs `(i, j)`, `1 <= i < j <= n`, in lexicographic order. This is
/// the coordinate order of [`KillingVector`].
pub fn pair_list(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in i + 1..=n {
            out.push((i, j));
        }
    }
    out
}

/// Position of the normalized pair in [`pair_list`].
pub fn pair_position(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(i >= 1 && j <= n);
    // pairs (1,*), ..., (i-1,*) come first
    (i - 1) * n - i * (i - 1) / 2 + (j - i - 1)
}

/// A vector in the `K_ij` coordinate space of dimension `N(N-1)/2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KillingVector {
    ambient: usize,
    coeffs: Vec<Rat>,
}

impl KillingVector {
    pub fn zero(ambient: usize) -> Self {
        KillingVector {
            ambient,
            coeffs: vec![Rat::zero(); ambient * (ambient - 1) / 2],
        }
    }

    pub fn from_coeffs(ambient: usize, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != ambient * (ambient - 1) / 2 {
            return Err(Error::SizeMismatch(
                coeffs.len(),
                ambient * (ambient - 1) / 2,
            ));
        }
        Ok(KillingVector { ambient, coeffs })
    }

    /// The basis vector `K_ij`.
    pub fn basis(idx: KillingIndex) -> Self {
        let mut v = KillingVector::zero(idx.ambient);
        v.coeffs[pair_position(idx.ambient, idx.i, idx.j)] = rat::rat(1);
        v
    }

    /// The metric `sum_{i<j} K_ij`, the all-ones vector.
    pub fn metric(ambient: usize) -> Self {
        KillingVector {
            ambient,
            coeffs: vec![rat::rat(1); ambient * (ambient - 1) / 2],
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Rat {
        &self.coeffs[pair_position(self.ambient, i, j)]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, c: Rat) {
        self.coeffs[pair_position(self.ambient, i, j)] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn add(&self, rhs: &KillingVector) -> Result<KillingVector> {
        if self.ambient != rhs.ambient {
            return Err(Error::DimensionMismatch(self.ambient, rhs.ambient));
        }
        Ok(KillingVector {
            ambient: self.ambient,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scaled(&self, c: &Rat) -> KillingVector {
        KillingVector {
            ambient: self.ambient,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Phase-space representation: `sum c_ij (x_i p_j - x_j p_i)^2`.
    pub fn phase_poly(&self) -> Poly {
        let n = self.ambient;
        let mut acc = Poly::zero(n);
        for (&(i, j), c) in pair_list(n).iter().zip(&self.coeffs) {
            if !c.is_zero() {
                acc = &acc + &kij_phase_raw(n, i, j).scaled(c);
            }
        }
        acc
    }

    /// Endomorphism representation as a momentum-free polynomial matrix.
    pub fn matrix(&self) -> PolyMatrix {
        let n = self.ambient;
        let mut acc = PolyMatrix::zero(n);
        for (&(i, j), c) in pair_list(n).iter().zip(&self.coeffs) {
            if !c.is_zero() {
                acc = acc.add(&kij_matrix_raw(n, i, j).scaled(c)).unwrap();
            }
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = pair_list(self.ambient)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(i, j), c)| {
                json!({
                    "i": i,
                    "j": j,
                    "coeff_num": c.numer().to_string(),
                    "coeff_den": c.denom().to_string(),
                })
            })
            .collect();
        serde_json::Value::Array(terms)
    }

    pub fn from_json(ambient: usize, v: &serde_json::Value) -> Result<Self> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::InvalidInput("expected array of K_ij records".into()))?;
        let mut out = KillingVector::zero(ambient);
        for item in items {
            let get = |k: &str| -> Result<&serde_json::Value> {
                item.get(k)
                    .ok_or_else(|| Error::InvalidInput(format!("missing field {k:?}")))
            };
            let i = get("i")?.as_u64().unwrap_or(0) as usize;
            let j = get("j")?.as_u64().unwrap_or(0) as usize;
            let idx = KillingIndex::new(i, j, ambient)?;
            let num = json_bigint(get("coeff_num")?)?;
            let den = json_bigint(get("coeff_den")?)?;
            if den.is_zero() {
                return Err(Error::InvalidInput("zero denominator".into()));
            }
            let prev = out.coeff(idx.i, idx.j).clone();
            out.set_coeff(idx.i, idx.j, prev + Rat::new(num, den));
        }
        Ok(out)
    }
}

fn json_bigint(v: &serde_json::Value) -> Result<num_bigint::BigInt> {
    let s = match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Number(n) => n.to_string(),
        other => return Err(Error::InvalidInput(format!("expected integer, got {other}"))),
    };
    s.parse()
        .map_err(|_| Error::InvalidInput(format!("cannot parse integer {s:?}")))
}

impl fmt::Display for KillingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in pair_list(self.ambient).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "K_{i}{j}")?;
            } else {
                write!(f, "{c}*K_{i}{j}")?;
            }
        }
        Ok(())
    }
}

fn kij_phase_raw(n: usize, i: usize, j: usize) -> Poly {
    let cross = &(&Poly::var_x(n, i) * &Poly::var_p(n, j)) - &(&Poly::var_x(n, j) * &Poly::var_p(n, i));
    &cross * &cross
}

fn kij_matrix_raw(n: usize, i: usize, j: usize) -> PolyMatrix {
    let xi = Poly::var_x(n, i);
    let xj = Poly::var_x(n, j);
    let mut m = PolyMatrix::zero(n);
    m.set_entry(i - 1, i - 1, &xj * &xj);
    m.set_entry(j - 1, j - 1, &xi * &xi);
    let off = &(-&xi) * &xj;
    m.set_entry(i - 1, j - 1, off.clone());
    m.set_entry(j - 1, i - 1, off);
    m
}

/// The phase-space function `K_ij(x, p) = (x_i p_j - x_j p_i)^2`.
pub fn kij_phase(idx: KillingIndex) -> Poly {
    kij_phase_raw(idx.ambient, idx.i, idx.j)
}

/// The extension-by-zero endomorphism of `K_ij`.
pub fn kij_matrix(idx: KillingIndex) -> PolyMatrix {
    kij_matrix_raw(idx.ambient, idx.i, idx.j)
}

/// Which Lie bracket to verify a relation in.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bracket {
    Poisson,
    Commutator,
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracket::Poisson => write!(f, "poisson"),
            Bracket::Commutator => write!(f, "commutator"),
        }
    }
}

impl FromStr for Bracket {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "poisson" => Ok(Bracket::Poisson),
            "commutator" => Ok(Bracket::Commutator),
            other => Err(Error::InvalidInput(format!(
                "unknown bracket {other:?}; expected poisson or commutator"
            ))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: &'static str,
    pub indices: Vec<usize>,
    pub status: &'static str,
    pub residual_term_count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub ambient: usize,
    pub bracket: Bracket,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.status == "ok")
    }
}

fn bracket_of_vectors(bracket: Bracket, a: &KillingVector, b: &KillingVector) -> Result<usize> {
    // residual term count; 0 means the bracket vanishes identically
    match bracket {
        Bracket::Poisson => Ok(poisson_bracket(&a.phase_poly(), &b.phase_poly())?.num_terms()),
        Bracket::Commutator => Ok(matrix_commutator(&a.matrix(), &b.matrix())?.term_count()),
    }
}

/// Checks the Kohno-Drinfeld relations `[K_ij, K_kl] = 0` for disjoint
/// quadruples and `[K_ij, K_ik + K_jk] = 0` for distinct triples, exactly,
/// in the requested bracket.
pub fn verify_kd_relations(n: usize, bracket: Bracket) -> Result<RelationReport> {
    if !(3..=8).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "relation check supports 3 <= N <= 8, got {n}"
        )));
    }
    let mut checks = Vec::new();
    let kv = |i, j| KillingVector::basis(KillingIndex::new(i, j, n).unwrap());
    // disjoint quadruples
    for i in 1..=n {
        for j in i + 1..=n {
            for k in 1..=n {
                for l in k + 1..=n {
                    if (k, l) <= (i, j) || [i, j].contains(&k) || [i, j].contains(&l) {
                        continue;
                    }
                    let residual = bracket_of_vectors(bracket, &kv(i, j), &kv(k, l))?;
                    checks.push(RelationCheck {
                        relation: "disjoint",
                        indices: vec![i, j, k, l],
                        status: if residual == 0 { "ok" } else { "failed" },
                        residual_term_count: residual,
                    });
                }
            }
        }
    }
    // overlapping triples
    for i in 1..=n {
        for j in i + 1..=n {
            for k in 1..=n {
                if k == i || k == j {
                    continue;
                }
                let sum = kv(i, k).add(&kv(j, k))?;
                let residual = bracket_of_vectors(bracket, &kv(i, j), &sum)?;
                checks.push(RelationCheck {
                    relation: "overlapping",
                    indices: vec![i, j, k],
                    status: if residual == 0 { "ok" } else { "failed" },
                    residual_term_count: residual,
                });
            }
        }
    }
    Ok(RelationReport {
        ambient: n,
        bracket,
        checks,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub ambient: usize,
    pub bracket: Bracket,
    pub generator_rank: usize,
    pub expected_generator_rank: usize,
    pub bracket_rank: usize,
    pub expected_bracket_rank: usize,
}

impl IndependenceReport {
    pub fn ok(&self) -> bool {
        self.generator_rank == self.expected_generator_rank
            && self.bracket_rank == self.expected_bracket_rank
    }
}

/// Rank of the generator family `{K_ij}` and of the bracket family
/// `{[K_ij, K_jk]}` over `i < j < k`, as monomial-coefficient vectors.
pub fn verify_independence(n: usize, bracket: Bracket) -> Result<IndependenceReport> {
    if !(2..=8).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "independence check supports 2 <= N <= 8, got {n}"
        )));
    }
    let generators: Vec<Poly> = pair_list(n)
        .iter()
        .map(|&(i, j)| match bracket {
            Bracket::Poisson => kij_phase_raw(n, i, j),
            Bracket::Commutator => flatten_matrix(&kij_matrix_raw(n, i, j)),
        })
        .collect();
    let generator_rank = poly_family_rank(&generators)?;

    let mut brackets = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let p = match bracket {
                    Bracket::Poisson => {
                        poisson_bracket(&kij_phase_raw(n, i, j), &kij_phase_raw(n, j, k))?
                    }
                    Bracket::Commutator => flatten_matrix(&matrix_commutator(
                        &kij_matrix_raw(n, i, j),
                        &kij_matrix_raw(n, j, k),
                    )?),
                };
                brackets.push(p);
            }
        }
    }
    let bracket_rank = poly_family_rank(&brackets)?;

    Ok(IndependenceReport {
        ambient: n,
        bracket,
        generator_rank,
        expected_generator_rank: n * (n - 1) / 2,
        bracket_rank,
        expected_bracket_rank: n * (n - 1) * (n - 2) / 6,
    })
}

// Encodes an N x N polynomial matrix as a single polynomial by tagging
// entry (i, j) with the momentum monomial p_{i+1} p_{j+1}^2. The ordered
// tag matters: a symmetric tag would annihilate antisymmetric matrices,
// and commutators of symmetric matrices are antisymmetric. The momentum
// part identifies the ordered entry, so the map is linear and injective
// on momentum-free matrices and ranks are preserved.
fn flatten_matrix(m: &PolyMatrix) -> Poly {
    let n = m.dim();
    let mut acc = Poly::zero(n);
    for i in 0..n {
        for j in 0..n {
            if !m.entry(i, j).is_zero() {
                let pj = Poly::var_p(n, j + 1);
                let tag = &(&Poly::var_p(n, i + 1) * &pj) * &pj;
                acc = &acc + &(m.entry(i, j) * &tag);
            }
        }
    }
    acc
}

/// Rank of a polynomial family over `Q` via monomial-coefficient vectors.
pub fn poly_family_rank(polys: &[Poly]) -> Result<usize> {
    if polys.is_empty() {
        return Ok(0);
    }
    let refs: Vec<&Poly> = polys.iter().collect();
    let monos = Poly::monomial_union(&refs);
    let rows: Vec<Vec<Rat>> = polys.iter().map(|p| p.coeff_vector(&monos)).collect();
    exact_rank(&rows)
}

/// A permutation of `{1..N}` as the image list `sigma(i) = perm[i-1]`.
pub fn check_permutation(sigma: &[usize]) -> Result<()> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    for &s in sigma {
        if s < 1 || s > n || seen[s - 1] {
            return Err(Error::InvalidInput(format!(
                "{sigma:?} is not a permutation of 1..={n}"
            )));
        }
        seen[s - 1] = true;
    }
    Ok(())
}

/// The residual symmetric-group action `sigma(K_ij) = K_{sigma(i) sigma(j)}`,
/// extended linearly.
pub fn apply_permutation(sigma: &[usize], v: &KillingVector) -> Result<KillingVector> {
    if sigma.len() != v.ambient {
        return Err(Error::SizeMismatch(sigma.len(), v.ambient));
    }
    check_permutation(sigma)?;
    let n = v.ambient;
    let mut out = KillingVector::zero(n);
    for (&(i, j), c) in pair_list(n).iter().zip(&v.coeffs) {
        if !c.is_zero() {
            let (a, b) = (sigma[i - 1], sigma[j - 1]);
            let prev = out.coeff(a, b).clone();
            out.set_coeff(a, b, prev + c);
        }
    }
    Ok(out)
}

/// Relabels the ambient variables of a phase-space polynomial by a
/// permutation: `x_i -> x_{sigma(i)}`, `p_i -> p_{sigma(i)}`.
pub fn relabel_poly(p: &Poly, sigma: &[usize]) -> Result<Poly> {
    let n = p.ambient();
    if sigma.len() != n {
        return Err(Error::SizeMismatch(sigma.len(), n));
    }
    check_permutation(sigma)?;
    let terms = p.sorted_terms().into_iter().map(|(mono, c)| {
        let mut m = vec![0u16; 2 * n];
        for i in 0..n {
            m[sigma[i] - 1] = mono[i];
            m[n + sigma[i] - 1] = mono[n + i];
        }
        (m, c.clone())
    });
    Poly::from_terms(n, terms.collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn index_normalization() {
        let a = KillingIndex::new(2, 1, 3).unwrap();
        let b = KillingIndex::new(1, 2, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(kij_phase(a), kij_phase(b));
        assert!(KillingIndex::new(1, 1, 3).is_err());
        assert!(KillingIndex::new(0, 2, 3).is_err());
        assert!(KillingIndex::new(1, 4, 3).is_err());
    }

    #[test]
    fn pair_positions_are_lexicographic() {
        for n in 2..=6 {
            for (pos, &(i, j)) in pair_list(n).iter().enumerate() {
                assert_eq!(pair_position(n, i, j), pos);
                assert_eq!(pair_position(n, j, i), pos);
            }
        }
    }

    #[test]
    fn phase_function_matches_expansion() {
        // K_12 = x_2^2 p_1^2 + x_1^2 p_2^2 - 2 x_1 x_2 p_1 p_2 for N = 2
        let n = 2;
        let p = kij_phase(KillingIndex::new(1, 2, n).unwrap());
        let x1 = Poly::var_x(n, 1);
        let x2 = Poly::var_x(n, 2);
        let p1 = Poly::var_p(n, 1);
        let p2 = Poly::var_p(n, 2);
        let expect = &(&(&(&x2 * &x2) * &(&p1 * &p1)) + &(&(&x1 * &x1) * &(&p2 * &p2)))
            - &(&(&x1 * &x2) * &(&p1 * &p2)).scaled(&rat(2));
        assert_eq!(p, expect);
        // vanishes when p is parallel to the x block
        assert_eq!(p.eval(&[1.0, 0.0, 1.0, 0.0]).unwrap(), 0.0);
        assert_eq!(p.eval(&[1.0, 0.0, 0.0, 1.0]).unwrap(), 1.0);
    }

    #[test]
    fn matrix_block_and_kernel() {
        let n = 3;
        let m = kij_matrix(KillingIndex::new(1, 2, n).unwrap());
        assert!(m.is_symmetric());
        // third row and column vanish
        for k in 0..3 {
            assert!(m.entry(2, k).is_zero());
            assert!(m.entry(k, 2).is_zero());
        }
        // trace = x_i^2 + x_j^2
        let trace = &(m.entry(0, 0) + m.entry(1, 1)) + m.entry(2, 2);
        let x1 = Poly::var_x(n, 1);
        let x2 = Poly::var_x(n, 2);
        assert_eq!(trace, &(&x1 * &x1) + &(&x2 * &x2));
        // K_ij annihilates the position vector
        for i in 0..3 {
            let mut row_dot_x = Poly::zero(n);
            for j in 0..3 {
                row_dot_x = &row_dot_x + &(m.entry(i, j) * &Poly::var_x(n, j + 1));
            }
            assert!(row_dot_x.is_zero(), "row {i}");
        }
    }

    #[test]
    fn metric_is_lagrange_identity() {
        // sum_{i<j} K_ij = |x|^2 |p|^2 - (x.p)^2 for every N in 2..6
        for n in 2..=6 {
            let metric = KillingVector::metric(n).phase_poly();
            let mut x2 = Poly::zero(n);
            let mut p2 = Poly::zero(n);
            let mut xp = Poly::zero(n);
            for a in 1..=n {
                x2 = &x2 + &(&Poly::var_x(n, a) * &Poly::var_x(n, a));
                p2 = &p2 + &(&Poly::var_p(n, a) * &Poly::var_p(n, a));
                xp = &xp + &(&Poly::var_x(n, a) * &Poly::var_p(n, a));
            }
            assert_eq!(metric, &(&x2 * &p2) - &(&xp * &xp), "N = {n}");
        }
    }

    #[test]
    fn kd_relations_hold() {
        for n in 3..=5 {
            for b in [Bracket::Poisson, Bracket::Commutator] {
                let report = verify_kd_relations(n, b).unwrap();
                assert!(report.all_ok(), "N = {n}, {b}");
            }
        }
        assert!(verify_kd_relations(2, Bracket::Poisson).is_err());
    }

    #[test]
    fn adjacent_poisson_bracket_is_nonzero() {
        let n = 3;
        let k12 = kij_phase(KillingIndex::new(1, 2, n).unwrap());
        let k23 = kij_phase(KillingIndex::new(2, 3, n).unwrap());
        let br = poisson_bracket(&k12, &k23).unwrap();
        // {K_12, K_23} = 4 (x_1 p_2 - x_2 p_1)(x_2 p_3 - x_3 p_2)(x_3 p_1 - x_1 p_3)
        let cross = |i: usize, j: usize| {
            &(&Poly::var_x(n, i) * &Poly::var_p(n, j)) - &(&Poly::var_x(n, j) * &Poly::var_p(n, i))
        };
        let expect = (&(&cross(1, 2) * &cross(2, 3)) * &cross(3, 1)).scaled(&rat(4));
        assert_eq!(br, expect);
    }

    #[test]
    fn independence_ranks() {
        for b in [Bracket::Poisson, Bracket::Commutator] {
            let r3 = verify_independence(3, b).unwrap();
            assert_eq!((r3.generator_rank, r3.bracket_rank), (3, 1));
            let r4 = verify_independence(4, b).unwrap();
            assert_eq!((r4.generator_rank, r4.bracket_rank), (6, 4));
            assert!(r4.ok());
            let r2 = verify_independence(2, b).unwrap();
            assert_eq!((r2.generator_rank, r2.bracket_rank), (1, 0));
        }
    }

    #[test]
    fn permutation_action() {
        let n = 3;
        let k12 = KillingVector::basis(KillingIndex::new(1, 2, n).unwrap());
        // transposition (1 2) fixes K_12
        let swapped = apply_permutation(&[2, 1, 3], &k12).unwrap();
        assert_eq!(swapped, k12);
        // 3-cycle 1->2->3->1 sends K_12 to K_23
        let cycled = apply_permutation(&[2, 3, 1], &k12).unwrap();
        assert_eq!(
            cycled,
            KillingVector::basis(KillingIndex::new(2, 3, n).unwrap())
        );
        // any permutation fixes the metric
        let metric = KillingVector::metric(n);
        assert_eq!(apply_permutation(&[3, 1, 2], &metric).unwrap(), metric);
        assert!(apply_permutation(&[1, 1, 2], &metric).is_err());
    }

    #[test]
    fn action_is_group_action_on_s3() {
        let n = 3;
        let perms: Vec<Vec<usize>> = vec![
            vec![1, 2, 3],
            vec![2, 1, 3],
            vec![1, 3, 2],
            vec![3, 2, 1],
            vec![2, 3, 1],
            vec![3, 1, 2],
        ];
        let v = {
            let mut v = KillingVector::zero(n);
            v.set_coeff(1, 2, rat(2));
            v.set_coeff(1, 3, rat(-5));
            v
        };
        for s in &perms {
            for t in &perms {
                // (s . t)(v) computed by composing images: (s.t)(i) = s[t[i]]
                let st: Vec<usize> = t.iter().map(|&i| s[i - 1]).collect();
                let lhs = apply_permutation(&st, &v).unwrap();
                let rhs = apply_permutation(s, &apply_permutation(t, &v).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn brackets_are_equivariant() {
        // sigma({K_ij, K_kl}) as variable relabeling equals {sigma K_ij, sigma K_kl}
        for n in 3..=4 {
            let sigma: Vec<usize> = (1..=n).map(|i| i % n + 1).collect(); // n-cycle
            for &(i, j) in &pair_list(n) {
                for &(k, l) in &pair_list(n) {
                    let a = KillingVector::basis(KillingIndex::new(i, j, n).unwrap());
                    let b = KillingVector::basis(KillingIndex::new(k, l, n).unwrap());
                    let lhs = relabel_poly(
                        &poisson_bracket(&a.phase_poly(), &b.phase_poly()).unwrap(),
                        &sigma,
                    )
                    .unwrap();
                    let rhs = poisson_bracket(
                        &apply_permutation(&sigma, &a).unwrap().phase_poly(),
                        &apply_permutation(&sigma, &b).unwrap().phase_poly(),
                    )
                    .unwrap();
                    assert_eq!(lhs, rhs, "N={n} ({i}{j}),({k}{l})");
                }
            }
        }
    }

    #[test]
    fn vector_json_round_trip() {
        let n = 4;
        let mut v = KillingVector::zero(n);
        v.set_coeff(1, 3, rat(7));
        v.set_coeff(2, 4, crate::rat::ratio(-1, 2));
        let back = KillingVector::from_json(n, &v.to_json()).unwrap();
        assert_eq!(back, v);
    }
}

