//! Combinatorics of the Stasheff polytope `K_n`: planar rooted trees,
//! based-polygon dissections, the mosaic operad, dyslexic equivalence and
//! the Devadoss-Read enumeration of non-equivalent faces.

mod dissection;
mod series;
mod tree;

pub use dissection::{dissection_to_tree, tree_to_dissection, Dissection};
pub use series::{catalan, devadoss_read, face_counts_bruteforce, SeriesTable};
pub use tree::{dyslexic_canonical, enumerate_trees, mosaic_compose, Tree};
