//! Tree-driven coordinate maps: the sphere-join composition of points, the
//! polyspherical recursion for binary trees, and the forward/inverse
//! coordinate maps attached to a labelled tree, together with the numeric
//! orthogonality check on the inverse map's Jacobian.

use crate::assoc::Tree;
use crate::error::{Error, Result};

use super::elliptic::{elliptic_point, elliptic_roots};
use super::labeled::LabeledTree;

/// Unit-norm tolerance for the composition of already-computed points.
const COMPOSE_TOL: f64 = 1e-9;

/// Block norms below this are degenerate for the forward map.
const BLOCK_NORM_THRESHOLD: f64 = 1e-9;

/// Central-difference step for the Jacobian in [`orthogonality_check`].
const JACOBIAN_STEP: f64 = 1e-5;

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn check_unit(v: &[f64], tol: f64, what: &str) -> Result<()> {
    let n = norm(v);
    if (n - 1.0).abs() > tol {
        return Err(Error::InvalidInput(format!(
            "{what} must be a unit vector, got norm {n}"
        )));
    }
    Ok(())
}

fn path_label(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        let tail: Vec<String> = path.iter().map(usize::to_string).collect();
        format!("root.{}", tail.join("."))
    }
}

/// The join of `k` points: `(y_1 x_1, ..., y_k x_k)` by block
/// concatenation. All inputs must be unit vectors; the output then is one.
pub fn sphere_compose(y: &[f64], xs: &[Vec<f64>]) -> Result<Vec<f64>> {
    if y.len() != xs.len() {
        return Err(Error::SizeMismatch(xs.len(), y.len()));
    }
    check_unit(y, COMPOSE_TOL, "weight point")?;
    for x in xs {
        check_unit(x, COMPOSE_TOL, "block point")?;
    }
    let mut out = Vec::with_capacity(xs.iter().map(Vec::len).sum());
    for (w, x) in y.iter().zip(xs) {
        out.extend(x.iter().map(|v| w * v));
    }
    Ok(out)
}

/// The polyspherical point of a binary tree: `z = (x cos phi, y sin phi)`
/// applied recursively, one angle per internal node in postorder.
pub fn polyspherical_point(t: &Tree, angles: &[f64]) -> Result<Vec<f64>> {
    let internal = t.internal_count();
    if angles.len() != internal {
        return Err(Error::SizeMismatch(angles.len(), internal));
    }
    let mut next = 0usize;
    let point = poly_rec(t, angles, &mut next)?;
    debug_assert_eq!(next, internal);
    Ok(point)
}

fn poly_rec(t: &Tree, angles: &[f64], next: &mut usize) -> Result<Vec<f64>> {
    match t {
        Tree::Leaf => Ok(vec![1.0]),
        Tree::Node(children) => {
            if children.len() != 2 {
                return Err(Error::InvalidInput(format!(
                    "polyspherical recursion needs a binary tree, found arity {}",
                    children.len()
                )));
            }
            let x = poly_rec(&children[0], angles, next)?;
            let y = poly_rec(&children[1], angles, next)?;
            let phi = angles[*next];
            *next += 1;
            let mut out = Vec::with_capacity(x.len() + y.len());
            out.extend(x.iter().map(|v| v * phi.cos()));
            out.extend(y.iter().map(|v| v * phi.sin()));
            Ok(out)
        }
    }
}

/// Coordinate values at one internal node, addressed by its child-index
/// path from the root.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeCoords {
    pub path: Vec<usize>,
    pub values: Vec<f64>,
}

/// All coordinate values of a labelled tree, internal nodes in preorder;
/// a tree with `N` leaves carries `N - 1` values in total.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeCoords {
    pub nodes: Vec<NodeCoords>,
}

impl TreeCoords {
    pub fn total(&self) -> usize {
        self.nodes.iter().map(|n| n.values.len()).sum()
    }

    /// Concatenates all node values in preorder.
    pub fn flatten(&self) -> Vec<f64> {
        self.nodes.iter().flat_map(|n| n.values.clone()).collect()
    }

    /// Rebuilds the per-node layout of `t` from a flat preorder vector.
    pub fn from_flat(t: &LabeledTree, values: &[f64]) -> Result<Self> {
        let mut layout = Vec::new();
        collect_layout(t, &mut Vec::new(), &mut layout);
        let expected: usize = layout.iter().map(|(_, a)| a - 1).sum();
        if values.len() != expected {
            return Err(Error::SizeMismatch(values.len(), expected));
        }
        let mut nodes = Vec::with_capacity(layout.len());
        let mut pos = 0usize;
        for (path, arity) in layout {
            let take = arity - 1;
            nodes.push(NodeCoords {
                path,
                values: values[pos..pos + take].to_vec(),
            });
            pos += take;
        }
        Ok(TreeCoords { nodes })
    }
}

fn collect_layout(t: &LabeledTree, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, usize)>) {
    if let LabeledTree::Node { children, .. } = t {
        out.push((path.clone(), children.len()));
        for (i, c) in children.iter().enumerate() {
            path.push(i);
            collect_layout(c, path, out);
            path.pop();
        }
    }
}

/// The forward coordinate map: at every internal node, the block norms of
/// `x` over the children's leaf sets form a point on a small sphere whose
/// elliptic coordinates are that node's values; recursion continues into
/// the normalized blocks.
pub fn tree_coords_forward(t: &LabeledTree, x: &[f64]) -> Result<TreeCoords> {
    if x.len() != t.leaf_count() {
        return Err(Error::SizeMismatch(x.len(), t.leaf_count()));
    }
    check_unit(x, super::UNIT_TOL, "point")?;
    let mut nodes = Vec::new();
    forward_rec(t, x, &mut Vec::new(), &mut nodes)?;
    Ok(TreeCoords { nodes })
}

fn forward_rec(
    t: &LabeledTree,
    x: &[f64],
    path: &mut Vec<usize>,
    out: &mut Vec<NodeCoords>,
) -> Result<()> {
    let LabeledTree::Node { children, params } = t else {
        return Ok(());
    };
    let mut y = Vec::with_capacity(children.len());
    let mut blocks = Vec::with_capacity(children.len());
    let mut pos = 0usize;
    for (i, c) in children.iter().enumerate() {
        let block = &x[pos..pos + c.leaf_count()];
        pos += c.leaf_count();
        let r = norm(block);
        if r < BLOCK_NORM_THRESHOLD {
            path.push(i);
            let label = path_label(&path[..path.len() - 1]);
            return Err(Error::Numerical(format!(
                "degenerate block norm {r} for child {i} of node {label}"
            )));
        }
        y.push(r);
        blocks.push(block.iter().map(|v| v / r).collect::<Vec<_>>());
    }
    let lambda = LabeledTree::params_f64(params);
    let values = elliptic_roots(&lambda, &y)?;
    out.push(NodeCoords {
        path: path.clone(),
        values,
    });
    for (i, c) in children.iter().enumerate() {
        path.push(i);
        forward_rec(c, &blocks[i], path, out)?;
        path.pop();
    }
    Ok(())
}

/// The inverse coordinate map: recursive [`elliptic_point`] at every node
/// (block weights are norms, hence nonnegative) joined by
/// [`sphere_compose`]; per-component signs are supplied for the leaves.
pub fn tree_coords_inverse(t: &LabeledTree, coords: &TreeCoords, signs: &[i8]) -> Result<Vec<f64>> {
    if signs.len() != t.leaf_count() {
        return Err(Error::SizeMismatch(signs.len(), t.leaf_count()));
    }
    if signs.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::InvalidInput("signs must be +1 or -1".into()));
    }
    let mut next = 0usize;
    let point = inverse_rec(t, coords, signs, &mut next, &mut Vec::new())?;
    if next != coords.nodes.len() {
        return Err(Error::SizeMismatch(coords.nodes.len(), next));
    }
    Ok(point)
}

fn inverse_rec(
    t: &LabeledTree,
    coords: &TreeCoords,
    signs: &[i8],
    next: &mut usize,
    path: &mut Vec<usize>,
) -> Result<Vec<f64>> {
    let LabeledTree::Node { children, params } = t else {
        return Ok(vec![signs[0] as f64]);
    };
    let node = coords.nodes.get(*next).ok_or_else(|| {
        Error::InvalidInput(format!(
            "missing coordinate values for node {}",
            path_label(path)
        ))
    })?;
    *next += 1;
    let lambda = LabeledTree::params_f64(params);
    let plus = vec![1i8; children.len()];
    let y = elliptic_point(&lambda, &node.values, &plus).map_err(|e| match e {
        Error::InvalidInput(m) => {
            Error::InvalidInput(format!("node {}: {m}", path_label(path)))
        }
        other => other,
    })?;
    let mut xs = Vec::with_capacity(children.len());
    let mut pos = 0usize;
    for (i, c) in children.iter().enumerate() {
        let block_signs = &signs[pos..pos + c.leaf_count()];
        pos += c.leaf_count();
        path.push(i);
        xs.push(inverse_rec(c, coords, block_signs, next, path)?);
        path.pop();
    }
    sphere_compose(&y, &xs)
}

/// Maximum normalized off-diagonal Gram entry of the Jacobian of
/// [`tree_coords_inverse`] at the coordinates of `x`, by central
/// differences. Near zero exactly when the coordinate lines are
/// orthogonal at `x`.
pub fn orthogonality_check(t: &LabeledTree, x: &[f64]) -> Result<f64> {
    orthogonality_check_with(t, t, x)
}

/// [`orthogonality_check`] with distinct trees for the forward and the
/// inverse map; mismatched labels serve as a negative control.
///
/// Two quantities are combined. The Gram part measures mutual
/// orthogonality of the inverse chart's coordinate lines. It is blind to
/// a label mismatch, because the inverse chart of any labelled tree is an
/// orthogonal system on its own; the duality part therefore also measures
/// the angle between each coordinate line of the inverse chart and the
/// level sets of the other forward coordinates, which is nonzero exactly
/// when the two charts disagree.
pub fn orthogonality_check_with(
    t_forward: &LabeledTree,
    t_inverse: &LabeledTree,
    x: &[f64],
) -> Result<f64> {
    let coords = tree_coords_forward(t_forward, x)?;
    let signs: Vec<i8> = x.iter().map(|&v| if v < 0.0 { -1 } else { 1 }).collect();
    let flat = coords.flatten();
    let h = JACOBIAN_STEP;
    let mut columns = Vec::with_capacity(flat.len());
    for i in 0..flat.len() {
        let mut hi = flat.clone();
        let mut lo = flat.clone();
        hi[i] += h;
        lo[i] -= h;
        let p_hi = tree_coords_inverse(t_inverse, &TreeCoords::from_flat(t_inverse, &hi)?, &signs)?;
        let p_lo = tree_coords_inverse(t_inverse, &TreeCoords::from_flat(t_inverse, &lo)?, &signs)?;
        let col: Vec<f64> = p_hi
            .iter()
            .zip(&p_lo)
            .map(|(a, b)| (a - b) / (2.0 * h))
            .collect();
        let len = norm(&col);
        if len < 1e-12 {
            return Err(Error::Numerical(format!(
                "degenerate Jacobian column {i} (norm {len})"
            )));
        }
        columns.push(col);
    }
    let mut worst = 0.0f64;
    for i in 0..columns.len() {
        for j in i + 1..columns.len() {
            let dot: f64 = columns[i].iter().zip(&columns[j]).map(|(a, b)| a * b).sum();
            let g = dot.abs() / (norm(&columns[i]) * norm(&columns[j]));
            worst = worst.max(g);
        }
    }

    // gradients of the forward coordinate functions at the inverse chart's
    // base point, by central differences along the sphere
    let base = tree_coords_inverse(t_inverse, &coords, &signs)?;
    let n = base.len();
    let m = flat.len();
    let mut grads = vec![vec![0.0; n]; m];
    for k in 0..n {
        let mut hi = base.clone();
        let mut lo = base.clone();
        hi[k] += h;
        lo[k] -= h;
        let renorm = |v: Vec<f64>| -> Vec<f64> {
            let len = norm(&v);
            v.iter().map(|a| a / len).collect()
        };
        let c_hi = tree_coords_forward(t_forward, &renorm(hi))?.flatten();
        let c_lo = tree_coords_forward(t_forward, &renorm(lo))?.flatten();
        for i in 0..m {
            grads[i][k] = (c_hi[i] - c_lo[i]) / (2.0 * h);
        }
    }
    for (i, grad) in grads.iter().enumerate() {
        let glen = norm(grad);
        if glen < 1e-12 {
            return Err(Error::Numerical(format!(
                "degenerate gradient of coordinate {i} (norm {glen})"
            )));
        }
        for (j, col) in columns.iter().enumerate() {
            if i == j {
                continue;
            }
            let dot: f64 = grad.iter().zip(col).map(|(a, b)| a * b).sum();
            worst = worst.max(dot.abs() / (glen * norm(col)));
        }
    }
    Ok(worst)
}
