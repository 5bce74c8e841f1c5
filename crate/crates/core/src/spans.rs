//! Stäckel systems with diagonal algebraic curvature tensor: construction
//! of Gaudin, Jucys-Murphy and elliptic spans, the operad composition of
//! spans over an index partition, tree-driven recursive construction, and
//! exact verification of the defining commutation conditions.

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::json;

use crate::coords::LabeledTree;
use crate::error::{Error, Result};
use crate::killing::{pair_list, KillingVector};
use crate::linalg::exact_rank;
use crate::poly::{matrix_commutator, poisson_bracket};
use crate::rat::Rat;

/// A candidate Stäckel system: a set of vectors in the `K_ij` coordinate
/// space on `S^{N-1}`. The defining conditions (rank `N-1`, pairwise
/// commutation in both brackets, metric membership) are checked by
/// [`verify_span`], not enforced at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StaeckelSpan {
    ambient: usize,
    basis: Vec<KillingVector>,
}

impl StaeckelSpan {
    pub fn new(ambient: usize, basis: Vec<KillingVector>) -> Result<Self> {
        for v in &basis {
            if v.ambient() != ambient {
                return Err(Error::DimensionMismatch(v.ambient(), ambient));
            }
        }
        Ok(StaeckelSpan { ambient, basis })
    }

    /// The empty system on `S^0`, the operad identity.
    pub fn empty() -> Self {
        StaeckelSpan {
            ambient: 1,
            basis: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[KillingVector] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Rat>> = self.basis.iter().map(|v| v.coeffs().to_vec()).collect();
        exact_rank(&rows).expect("basis rows share a length by construction")
    }

    /// Subspace equality: both ranks equal the rank of the stacked family.
    pub fn same_subspace(&self, other: &StaeckelSpan) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(self.ambient, other.ambient));
        }
        let ra = self.rank();
        let rb = other.rank();
        let mut rows: Vec<Vec<Rat>> = self.basis.iter().map(|v| v.coeffs().to_vec()).collect();
        rows.extend(other.basis.iter().map(|v| v.coeffs().to_vec()));
        Ok(ra == rb && exact_rank(&rows)? == ra)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "N": self.ambient,
            "basis": self.basis.iter().map(KillingVector::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let n = v
            .get("N")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::InvalidInput("span JSON needs an integer field N".into()))?
            as usize;
        if n < 1 {
            return Err(Error::InvalidInput("N must be at least 1".into()));
        }
        let basis_json = v
            .get("basis")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::InvalidInput("span JSON needs an array field basis".into()))?;
        let basis = basis_json
            .iter()
            .map(|b| KillingVector::from_json(n, b))
            .collect::<Result<_>>()?;
        StaeckelSpan::new(n, basis)
    }
}

/// Gaudin span for pairwise distinct parameters `z`: the vectors
/// `sum_{i<j} (b_i - b_j)/(z_i - z_j) K_ij` with `b` ranging over the
/// standard directions `e_1, ..., e_{N-1}`. Constant `b` acts trivially,
/// so this transversal spans the whole subalgebra; `b = z` realizes the
/// metric inside it.
pub fn gaudin_span(z: &[Rat]) -> Result<StaeckelSpan> {
    let n = z.len();
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "Gaudin span needs at least 2 parameters, got {n}"
        )));
    }
    for i in 0..n {
        for j in i + 1..n {
            if z[i] == z[j] {
                return Err(Error::InvalidInput(format!(
                    "repeated Gaudin parameter at positions {} and {}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let mut basis = Vec::with_capacity(n - 1);
    for r in 1..n {
        let mut v = KillingVector::zero(n);
        for &(i, j) in &pair_list(n) {
            // b = e_r: coefficient (delta_ir - delta_jr) / (z_i - z_j)
            let num = match (i == r, j == r) {
                (true, false) => Rat::one(),
                (false, true) => -Rat::one(),
                _ => continue,
            };
            v.set_coeff(i, j, num / (&z[i - 1] - &z[j - 1]));
        }
        basis.push(v);
    }
    StaeckelSpan::new(n, basis)
}

/// Jucys-Murphy span: the partial sums `K_12, K_13 + K_23, ...`,
/// corresponding to standard spherical coordinates.
pub fn jm_span(n: usize) -> Result<StaeckelSpan> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "Jucys-Murphy span needs N >= 2, got {n}"
        )));
    }
    let mut basis = Vec::with_capacity(n - 1);
    for m in 2..=n {
        let mut v = KillingVector::zero(n);
        for i in 1..m {
            v.set_coeff(i, m, Rat::one());
        }
        basis.push(v);
    }
    StaeckelSpan::new(n, basis)
}

/// Elementary symmetric polynomial `e_r` of the given values.
fn elem_sym(vals: &[Rat], r: usize) -> Rat {
    // e[k] after processing each value
    let mut e = vec![Rat::zero(); r + 1];
    e[0] = Rat::one();
    for v in vals {
        for k in (1..=r).rev() {
            let add = &e[k - 1] * v;
            e[k] += add;
        }
    }
    e[r].clone()
}

/// Elliptic span for strictly increasing parameters `Lambda`: basis
/// `B_r = sum_{i<j} e_r(Lambda \ {Lambda_i, Lambda_j}) K_ij` for
/// `r = 0..N-2`. `B_0` is the metric; the span equals the Gaudin span of
/// the same parameters.
pub fn elliptic_span(lambda: &[Rat]) -> Result<StaeckelSpan> {
    let n = lambda.len();
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "elliptic span needs at least 2 parameters, got {n}"
        )));
    }
    for w in lambda.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidInput(
                "elliptic parameters must be strictly increasing".into(),
            ));
        }
    }
    let mut basis = Vec::with_capacity(n - 1);
    for r in 0..n - 1 {
        let mut v = KillingVector::zero(n);
        for &(i, j) in &pair_list(n) {
            let rest: Vec<Rat> = lambda
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i - 1 && k != j - 1)
                .map(|(_, l)| l.clone())
                .collect();
            v.set_coeff(i, j, elem_sym(&rest, r));
        }
        basis.push(v);
    }
    StaeckelSpan::new(n, basis)
}

/// An ordered partition of `{1..N}` into disjoint nonempty blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidInput("empty partition block".into()));
            }
            b.sort_unstable();
            for &i in b.iter() {
                if i < 1 || i > n || seen[i - 1] {
                    return Err(Error::InvalidInput(format!(
                        "index {i} missing from 1..={n} or repeated"
                    )));
                }
                seen[i - 1] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::InvalidInput(format!(
                "partition blocks do not cover 1..={n}"
            )));
        }
        Ok(Partition { n, blocks })
    }

    /// Consecutive blocks of the given sizes.
    pub fn consecutive(sizes: &[usize]) -> Result<Self> {
        let n: usize = sizes.iter().sum();
        let mut blocks = Vec::with_capacity(sizes.len());
        let mut next = 1;
        for &s in sizes {
            blocks.push((next..next + s).collect());
            next += s;
        }
        Partition::new(n, blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

/// Operad composition of Stäckel systems over a partition:
/// the coarse span is included via `K_{ab} -> sum_{a in I_a, b in I_b} K_ab`
/// and each block span via its index inclusion; the direct sum is again a
/// Stäckel system of rank `N - 1`.
pub fn compose_spans(
    part: &Partition,
    coarse: &StaeckelSpan,
    blocks: &[StaeckelSpan],
) -> Result<StaeckelSpan> {
    let k = part.blocks.len();
    if coarse.ambient() != k {
        return Err(Error::DimensionMismatch(coarse.ambient(), k));
    }
    if blocks.len() != k {
        return Err(Error::SizeMismatch(blocks.len(), k));
    }
    for (b, span) in part.blocks.iter().zip(blocks) {
        if span.ambient() != b.len() {
            return Err(Error::DimensionMismatch(span.ambient(), b.len()));
        }
    }
    let n = part.n;
    let mut basis = Vec::new();
    // fine levels first, coarse level last: iterated singleton composition
    // then lists the Jucys-Murphy partial sums in their usual order
    for (block, span) in part.blocks.iter().zip(blocks) {
        for v in span.basis() {
            let mut out = KillingVector::zero(n);
            for &(i, j) in &pair_list(span.ambient()) {
                let c = v.coeff(i, j);
                if !c.is_zero() {
                    out.set_coeff(block[i - 1], block[j - 1], c.clone());
                }
            }
            basis.push(out);
        }
    }
    for v in coarse.basis() {
        let mut out = KillingVector::zero(n);
        for &(alpha, beta) in &pair_list(k) {
            let c = v.coeff(alpha, beta);
            if c.is_zero() {
                continue;
            }
            for &a in &part.blocks[alpha - 1] {
                for &b in &part.blocks[beta - 1] {
                    let prev = out.coeff(a, b).clone();
                    out.set_coeff(a, b, prev + c);
                }
            }
        }
        basis.push(out);
    }
    StaeckelSpan::new(n, basis)
}

/// Recursive span construction from a parameter-labelled tree: an elliptic
/// span at every internal node, composed over the consecutive blocks given
/// by the children's leaf counts.
pub fn staeckel_from_tree(t: &LabeledTree) -> Result<StaeckelSpan> {
    match t {
        LabeledTree::Leaf => Ok(StaeckelSpan::empty()),
        LabeledTree::Node { children, params } => {
            let spans: Vec<StaeckelSpan> =
                children.iter().map(staeckel_from_tree).collect::<Result<_>>()?;
            let sizes: Vec<usize> = children.iter().map(LabeledTree::leaf_count).collect();
            let part = Partition::consecutive(&sizes)?;
            let coarse = elliptic_span(params)?;
            compose_spans(&part, &coarse, &spans)
        }
    }
}

/// Numeric cross-check of the elliptic construction. Restrict
/// `P diag(Lambda) P` (`P` the projector off `x`) to an orthonormal
/// tangent basis at `x`, expand the adjugate of `L - lambda Id` as a
/// polynomial in `lambda` with matrix coefficients, and return each
/// coefficient evaluated as a quadratic form on the tangent vector `p`.
/// The outputs lie in the span of [`elliptic_span`]'s basis evaluated at
/// `(x, p)`.
pub fn adjugate_oracle(lambda: &[f64], x: &[f64], p: &[f64]) -> Result<Vec<f64>> {
    use nalgebra::{DMatrix, DVector};

    let n = lambda.len();
    if x.len() != n {
        return Err(Error::SizeMismatch(x.len(), n));
    }
    if p.len() != n {
        return Err(Error::SizeMismatch(p.len(), n));
    }
    if n < 2 {
        return Err(Error::InvalidInput("need at least 2 parameters".into()));
    }
    if lambda.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "parameters must be strictly increasing".into(),
        ));
    }
    let dot: f64 = x.iter().zip(p).map(|(a, b)| a * b).sum();
    if dot.abs() > 1e-12 {
        return Err(Error::InvalidInput(format!(
            "p must be tangent to the sphere at x, got x.p = {dot}"
        )));
    }
    if x.iter().any(|v| v.abs() < 1e-9) {
        return Err(Error::InvalidInput(
            "generic point required: some component of x vanishes".into(),
        ));
    }

    let m = n - 1;
    let frame = crate::coords::tangent_frame(x)?;
    let diag = DMatrix::from_fn(n, n, |r, c| if r == c { lambda[r] } else { 0.0 });
    // columns of the frame are orthogonal to x, so the projectors drop out
    let l = frame.transpose() * diag * &frame;
    let pt = frame.transpose() * DVector::from_column_slice(p);

    if m == 1 {
        // the 1x1 adjugate is the constant 1; the quadratic form is |p|^2
        return Ok(vec![pt[0] * pt[0]]);
    }

    // the adjugate entries are degree-(m-1) polynomials in lambda:
    // sample at m points and solve a Vandermonde system per entry
    let samples: Vec<f64> = (0..m).map(|s| s as f64).collect();
    let adjs: Vec<DMatrix<f64>> = samples
        .iter()
        .map(|&s| adjugate(&(&l - s * DMatrix::identity(m, m))))
        .collect();
    let vand = DMatrix::from_fn(m, m, |r, c| samples[r].powi(c as i32));
    let lu = vand.lu();

    let mut coeff_mats = vec![DMatrix::zeros(m, m); m];
    for i in 0..m {
        for j in 0..m {
            let rhs = DVector::from_fn(m, |s, _| adjs[s][(i, j)]);
            let sol = lu
                .solve(&rhs)
                .ok_or_else(|| Error::Numerical("singular Vandermonde system".into()))?;
            for (k, mat) in coeff_mats.iter_mut().enumerate() {
                mat[(i, j)] = sol[k];
            }
        }
    }

    Ok(coeff_mats
        .iter()
        .map(|mat| (pt.transpose() * mat * &pt)[(0, 0)])
        .collect())
}

/// Classical adjugate via cofactors; well-defined also on singular input.
fn adjugate(a: &nalgebra::DMatrix<f64>) -> nalgebra::DMatrix<f64> {
    let m = a.nrows();
    if m == 1 {
        return nalgebra::DMatrix::from_element(1, 1, 1.0);
    }
    nalgebra::DMatrix::from_fn(m, m, |j, i| {
        let minor = a.clone().remove_row(i).remove_column(j);
        let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
        sign * minor.determinant()
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanReport {
    pub ambient: usize,
    pub basis_size: usize,
    pub rank: usize,
    pub expected_rank: usize,
    pub poisson_failures: Vec<(usize, usize)>,
    pub commutator_failures: Vec<(usize, usize)>,
    pub contains_metric: bool,
}

impl SpanReport {
    pub fn ok(&self) -> bool {
        self.rank == self.expected_rank
            && self.poisson_failures.is_empty()
            && self.commutator_failures.is_empty()
            && self.contains_metric
    }
}

/// Exact verification of the Stäckel conditions: rank `N-1`, pairwise
/// vanishing of both brackets, and metric membership (appending the
/// all-ones vector does not raise the rank).
pub fn verify_span(span: &StaeckelSpan) -> Result<SpanReport> {
    let n = span.ambient();
    let basis = span.basis();
    let rank = span.rank();

    let phases: Vec<_> = basis.iter().map(KillingVector::phase_poly).collect();
    let matrices: Vec<_> = basis.iter().map(KillingVector::matrix).collect();
    let mut poisson_failures = Vec::new();
    let mut commutator_failures = Vec::new();
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            if !poisson_bracket(&phases[a], &phases[b])?.is_zero() {
                poisson_failures.push((a, b));
            }
            if !matrix_commutator(&matrices[a], &matrices[b])?.is_zero() {
                commutator_failures.push((a, b));
            }
        }
    }

    let contains_metric = if n == 1 {
        true
    } else {
        let mut rows: Vec<Vec<Rat>> = basis.iter().map(|v| v.coeffs().to_vec()).collect();
        rows.push(KillingVector::metric(n).coeffs().to_vec());
        exact_rank(&rows)? == rank
    };

    Ok(SpanReport {
        ambient: n,
        basis_size: basis.len(),
        rank,
        expected_rank: n - 1,
        poisson_failures,
        commutator_failures,
        contains_metric,
    })
}
