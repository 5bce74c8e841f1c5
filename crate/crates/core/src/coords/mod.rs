//! Numerical separation coordinates on spheres: elliptic coordinate
//! solving with interlacing, polyspherical recursion, the sphere-join
//! operad on points, tree-driven forward/inverse coordinate maps and
//! orthogonality validation.

mod elliptic;
mod labeled;
mod oracles;
mod treecoords;

pub use elliptic::{elliptic_point, elliptic_roots};
pub use labeled::{random_labeled_tree, LabeledTree};
pub use oracles::sckt_eigen_oracle;
pub(crate) use oracles::tangent_frame;
pub use treecoords::{
    orthogonality_check, orthogonality_check_with, polyspherical_point, sphere_compose,
    tree_coords_forward,
    tree_coords_inverse, NodeCoords, TreeCoords,
};

/// Below this squared-component threshold an ambient component counts as
/// vanished and its elliptic root degenerates to the component's
/// parameter value.
pub const DEFLATION_THRESHOLD: f64 = 1e-20;

/// Unit-norm tolerance for exact-point preconditions.
pub const UNIT_TOL: f64 = 1e-12;
