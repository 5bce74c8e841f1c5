//! Floating-point cross-checks built on dense linear algebra: the
//! eigenvalues of the restricted parameter endomorphism, which must agree
//! with the bisection solver.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

use super::UNIT_TOL;

/// Deterministic orthonormal basis of the hyperplane orthogonal to the
/// unit vector `x`: Gram-Schmidt over the standard basis with the axis
/// closest to `x` dropped. Columns of the returned `N x (N-1)` matrix.
pub(crate) fn tangent_frame(x: &[f64]) -> Result<DMatrix<f64>> {
    let n = x.len();
    let nrm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (nrm - 1.0).abs() > UNIT_TOL {
        return Err(Error::InvalidInput(format!(
            "expected a unit vector, got norm {nrm}"
        )));
    }
    let drop = (0..n)
        .max_by(|&a, &b| x[a].abs().partial_cmp(&x[b].abs()).unwrap())
        .unwrap();
    let mut frame = DMatrix::zeros(n, n - 1);
    let mut built: Vec<Vec<f64>> = vec![x.to_vec()];
    let mut col = 0usize;
    for k in 0..n {
        if k == drop {
            continue;
        }
        let mut v = vec![0.0; n];
        v[k] = 1.0;
        for b in &built {
            let dot: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= dot * bi;
            }
        }
        let len: f64 = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if len < 1e-10 {
            return Err(Error::Numerical(format!(
                "tangent frame degenerated at axis {k}"
            )));
        }
        for vi in &mut v {
            *vi /= len;
        }
        for (r, vi) in v.iter().enumerate() {
            frame[(r, col)] = *vi;
        }
        built.push(v);
        col += 1;
    }
    Ok(frame)
}

/// The `N - 1` eigenvalues of `P diag(Lambda) P` restricted to the
/// tangent space at `x` (`P` the projector off `x`), sorted ascending.
/// An independent check of the root-solving route.
pub fn sckt_eigen_oracle(lambda: &[f64], x: &[f64]) -> Result<Vec<f64>> {
    let n = lambda.len();
    if x.len() != n {
        return Err(Error::SizeMismatch(x.len(), n));
    }
    if n < 2 {
        return Err(Error::InvalidInput("need at least 2 parameters".into()));
    }
    let t = tangent_frame(x)?;
    let diag = DMatrix::from_fn(n, n, |r, c| if r == c { lambda[r] } else { 0.0 });
    // columns of t are orthogonal to x, so the projectors drop out
    let restricted = t.transpose() * diag * &t;
    let sym = 0.5 * (&restricted + restricted.transpose());
    let mut eigs: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(eigs)
}
