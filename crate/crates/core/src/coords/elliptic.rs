//! Elliptic coordinates: the roots of `sum_k x_k^2 / (Lambda_k - lambda) = 0`
//! interlacing the parameters, solved by bisection, and the inverse point
//! construction.

use crate::error::{Error, Result};

use super::{DEFLATION_THRESHOLD, UNIT_TOL};

const BISECT_MAX_ITER: usize = 200;
const BISECT_TOL: f64 = 1e-13;
const POLE_OFFSET: f64 = 1e-12;

fn check_increasing(lambda: &[f64]) -> Result<()> {
    if lambda.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "parameters must be strictly increasing".into(),
        ));
    }
    Ok(())
}

fn check_unit(x: &[f64], tol: f64) -> Result<()> {
    let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > tol {
        return Err(Error::InvalidInput(format!(
            "expected a unit vector, got norm {norm}"
        )));
    }
    Ok(())
}

/// The `N - 1` elliptic coordinates of the unit vector `x` with respect to
/// strictly increasing parameters `Lambda`, sorted ascending.
///
/// Components with `x_k^2` below the deflation threshold are removed from
/// the root equation and contribute the degenerate root `Lambda_k`, the
/// continuity limit of the generic case. The remaining function has one
/// root strictly between consecutive surviving parameters, found by
/// bisection (the function is strictly increasing between its poles).
pub fn elliptic_roots(lambda: &[f64], x: &[f64]) -> Result<Vec<f64>> {
    let n = lambda.len();
    if x.len() != n {
        return Err(Error::SizeMismatch(x.len(), n));
    }
    if n < 2 {
        return Err(Error::InvalidInput("need at least 2 parameters".into()));
    }
    check_increasing(lambda)?;
    check_unit(x, UNIT_TOL)?;

    let mut roots = Vec::with_capacity(n - 1);
    let mut active: Vec<usize> = Vec::with_capacity(n);
    for k in 0..n {
        if x[k] * x[k] < DEFLATION_THRESHOLD {
            roots.push(lambda[k]);
        } else {
            active.push(k);
        }
    }
    let f = |l: f64| -> f64 {
        active
            .iter()
            .map(|&k| x[k] * x[k] / (lambda[k] - l))
            .sum()
    };
    for w in active.windows(2) {
        let (lo, hi) = (lambda[w[0]], lambda[w[1]]);
        roots.push(bisect(&f, lo, hi)?);
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(roots)
}

fn bisect(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> Result<f64> {
    let scale = (hi - lo).max(1.0);
    let mut offset = POLE_OFFSET * scale;
    // f runs from -inf at the left pole to +inf at the right pole; shrink
    // the offset until both signs are visible
    let (mut a, mut b) = loop {
        let a = lo + offset;
        let b = hi - offset;
        if a < b && f(a) < 0.0 && f(b) > 0.0 {
            break (a, b);
        }
        offset *= 0.25;
        if offset < f64::EPSILON * scale {
            return Err(Error::Numerical(format!(
                "bisection could not bracket a root in ({lo}, {hi})"
            )));
        }
    };
    for _ in 0..BISECT_MAX_ITER {
        if b - a <= BISECT_TOL {
            break;
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if f(mid) < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Inverse of [`elliptic_roots`] on strictly interlacing values:
/// `x_k = s_k sqrt( prod_m (L_k - l_m) / prod_{l != k} (L_k - L_l) )`.
pub fn elliptic_point(lambda: &[f64], roots: &[f64], signs: &[i8]) -> Result<Vec<f64>> {
    let n = lambda.len();
    if roots.len() + 1 != n {
        return Err(Error::SizeMismatch(roots.len(), n - 1));
    }
    if signs.len() != n || signs.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::InvalidInput(
            "signs must be a list of +1/-1 of length N".into(),
        ));
    }
    check_increasing(lambda)?;
    for k in 0..n - 1 {
        if !(lambda[k] < roots[k] && roots[k] < lambda[k + 1]) {
            return Err(Error::InvalidInput(format!(
                "root {} = {} does not interlace ({}, {})",
                k,
                roots[k],
                lambda[k],
                lambda[k + 1]
            )));
        }
    }
    let mut x = Vec::with_capacity(n);
    for k in 0..n {
        let mut num = 1.0;
        for &r in roots {
            num *= lambda[k] - r;
        }
        let mut den = 1.0;
        for l in 0..n {
            if l != k {
                den *= lambda[k] - lambda[l];
            }
        }
        let radicand = num / den;
        if radicand < -1e-12 {
            return Err(Error::InvalidInput(format!(
                "negative radicand {radicand} at component {}; interlacing is broken",
                k + 1
            )));
        }
        x.push(signs[k] as f64 * radicand.max(0.0).sqrt());
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_worked_case() {
        // Lambda = (0,1,2), x = (1,1,1)/sqrt(3): roots of 3l^2 - 6l + 2
        let s = 1.0 / 3f64.sqrt();
        let roots = elliptic_roots(&[0.0, 1.0, 2.0], &[s, s, s]).unwrap();
        let want = [1.0 - s, 1.0 + s];
        for (r, w) in roots.iter().zip(want) {
            assert!((r - w).abs() < 1e-12, "{r} vs {w}");
        }
    }

    #[test]
    fn degenerate_components_take_their_parameter_values() {
        // x = e_2: components 1 and 3 vanish, roots = (Lambda_1, Lambda_3)
        let roots = elliptic_roots(&[0.0, 1.0, 2.0], &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(roots, vec![0.0, 2.0]);
    }

    #[test]
    fn degenerate_rule_matches_the_continuity_limit() {
        // x = (eps, sqrt(1-2 eps^2), eps) approaches e_2; the two roots
        // must approach (0, 2)
        let lambda = [0.0, 1.0, 2.0];
        let mut prev_err = f64::INFINITY;
        for eps in [1e-4f64, 1e-5] {
            let mid = (1.0 - 2.0 * eps * eps).sqrt();
            let roots = elliptic_roots(&lambda, &[eps, mid, eps]).unwrap();
            let err = (roots[0] - 0.0).abs().max((roots[1] - 2.0).abs());
            assert!(err < 1e-6, "eps = {eps}: roots {roots:?}");
            assert!(err < prev_err, "limit must tighten as eps shrinks");
            prev_err = err;
        }
    }

    #[test]
    fn interlacing_holds_generically() {
        let lambda = [0.0, 0.3, 1.1, 2.0];
        let x = {
            let raw: [f64; 4] = [0.4, -0.2, 0.7, 0.5];
            let norm: f64 = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
            raw.map(|v| v / norm)
        };
        let roots = elliptic_roots(&lambda, &x).unwrap();
        assert_eq!(roots.len(), 3);
        for k in 0..3 {
            assert!(lambda[k] < roots[k] && roots[k] < lambda[k + 1]);
        }
    }

    #[test]
    fn point_formula_and_round_trip() {
        let lambda = [0.0, 1.0, 2.0];
        let roots = [0.5, 1.5];
        let x = elliptic_point(&lambda, &roots, &[1, 1, 1]).unwrap();
        assert!((x[0] - 0.375f64.sqrt()).abs() < 1e-15);
        assert!((x[1] - 0.25f64.sqrt()).abs() < 1e-15);
        assert!((x[2] - 0.375f64.sqrt()).abs() < 1e-15);
        let norm: f64 = x.iter().map(|v| v * v).sum();
        assert!((norm - 1.0).abs() < 1e-12);

        let back = elliptic_roots(&lambda, &x).unwrap();
        for (b, r) in back.iter().zip(roots) {
            assert!((b - r).abs() < 1e-9);
        }
        // flipping signs leaves the roots unchanged
        let x2 = elliptic_point(&lambda, &roots, &[-1, 1, -1]).unwrap();
        let back2 = elliptic_roots(&lambda, &x2).unwrap();
        assert_eq!(back, back2);
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(elliptic_roots(&[0.0, 1.0], &[2.0, 0.0]).is_err()); // not unit
        assert!(elliptic_roots(&[1.0, 0.0], &[1.0, 0.0]).is_err()); // not increasing
        assert!(elliptic_point(&[0.0, 1.0, 2.0], &[0.5, 0.7], &[1, 1, 1]).is_err()); // broken interlacing
        assert!(elliptic_point(&[0.0, 1.0], &[0.5], &[1, 2]).is_err()); // bad signs
    }
}
