//! Dissections of a based polygon by non-crossing diagonals, dual to
//! planar rooted trees.
//!
//! A tree with `n` leaves corresponds to a dissection of the `(n+1)`-gon
//! with vertices `0..=n` and base edge `(0, n)`. The subtree spanning the
//! leaf interval `[i, j]` (leaves numbered from 0) corresponds to the
//! chord `(i, j+1)`; the root gives the base, every other internal node a
//! diagonal, so the diagonal count is one less than the internal count.

use std::collections::BTreeSet;

use serde_json::json;

use crate::error::{Error, Result};

use super::tree::Tree;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dissection {
    /// Leaf count `n`; the polygon has `n + 1` vertices.
    leaves: usize,
    /// Diagonals as vertex pairs `(a, b)` with `a < b`.
    diagonals: BTreeSet<(usize, usize)>,
}

impl Dissection {
    pub fn new(leaves: usize, diagonals: BTreeSet<(usize, usize)>) -> Result<Self> {
        if leaves < 1 {
            return Err(Error::InvalidInput("polygon needs at least 1 leaf".into()));
        }
        let n = leaves;
        for &(a, b) in &diagonals {
            if a >= b || b > n || b < a + 2 || (a, b) == (0, n) {
                return Err(Error::InvalidInput(format!(
                    "({a},{b}) is not a diagonal of the based {}-gon",
                    n + 1
                )));
            }
        }
        let ds: Vec<_> = diagonals.iter().copied().collect();
        for (s, &(a, b)) in ds.iter().enumerate() {
            for &(c, d) in &ds[s + 1..] {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return Err(Error::InvalidInput(format!(
                        "diagonals ({a},{b}) and ({c},{d}) cross"
                    )));
                }
            }
        }
        if diagonals.len() > n.saturating_sub(2) {
            return Err(Error::InvalidInput(format!(
                "{} diagonals exceed the maximum {} for an {}-gon",
                diagonals.len(),
                n - 2,
                n + 1
            )));
        }
        Ok(Dissection { leaves, diagonals })
    }

    pub fn leaves(&self) -> usize {
        self.leaves
    }

    pub fn diagonals(&self) -> &BTreeSet<(usize, usize)> {
        &self.diagonals
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "polygon": self.leaves + 1,
            "diagonals": self.diagonals.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        })
    }
}

pub fn tree_to_dissection(t: &Tree) -> Dissection {
    let mut diagonals = BTreeSet::new();
    collect_chords(t, 0, true, &mut diagonals);
    Dissection {
        leaves: t.leaf_count(),
        diagonals,
    }
}

fn collect_chords(t: &Tree, start: usize, is_root: bool, out: &mut BTreeSet<(usize, usize)>) {
    if let Tree::Node(cs) = t {
        let span = t.leaf_count();
        if !is_root {
            out.insert((start, start + span));
        }
        let mut pos = start;
        for c in cs {
            collect_chords(c, pos, false, out);
            pos += c.leaf_count();
        }
    }
}

pub fn dissection_to_tree(d: &Dissection) -> Result<Tree> {
    if d.leaves == 1 {
        return Ok(Tree::Leaf);
    }
    build(0, d.leaves, &d.diagonals)
}

// Reconstructs the subtree whose region has base chord (a, b). The cell
// adjacent to (a, b) is traced greedily: from each vertex v take the
// longest chord (v, w) with w <= b, falling back to the polygon edge
// (v, v+1). Non-crossing diagonals make the greedy choice unambiguous.
fn build(a: usize, b: usize, diagonals: &BTreeSet<(usize, usize)>) -> Result<Tree> {
    if b == a + 1 {
        return Ok(Tree::Leaf);
    }
    let mut children = Vec::new();
    let mut v = a;
    while v < b {
        let w = (v + 2..=b)
            .rev()
            .find(|&w| (v, w) != (a, b) && diagonals.contains(&(v, w)))
            .unwrap_or(v + 1);
        children.push(build(v, w, diagonals)?);
        v = w;
    }
    Tree::node(children)
}
