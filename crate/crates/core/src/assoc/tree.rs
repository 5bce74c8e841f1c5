//! Planar rooted trees with all internal arities >= 2, labelling the faces
//! of the associahedron. A tree with `n` leaves and `d+1` internal nodes
//! corresponds to a codimension-`d` face of `K_n`.

use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum Tree {
    Leaf,
    Node(Vec<Tree>),
}

impl Tree {
    /// Internal node; rejects arity < 2.
    pub fn node(children: Vec<Tree>) -> Result<Tree> {
        if children.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "internal node arity {} < 2",
                children.len()
            )));
        }
        Ok(Tree::Node(children))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(cs) => cs.iter().map(Tree::leaf_count).sum(),
        }
    }

    pub fn internal_count(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(cs) => 1 + cs.iter().map(Tree::internal_count).sum::<usize>(),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(cs) => cs.len(),
        }
    }

    pub fn is_binary(&self) -> bool {
        match self {
            Tree::Leaf => true,
            Tree::Node(cs) => cs.len() == 2 && cs.iter().all(Tree::is_binary),
        }
    }

    pub fn children(&self) -> &[Tree] {
        match self {
            Tree::Leaf => &[],
            Tree::Node(cs) => cs,
        }
    }

    /// Mirror image: reverses child order at every node.
    pub fn mirror(&self) -> Tree {
        match self {
            Tree::Leaf => Tree::Leaf,
            Tree::Node(cs) => Tree::Node(cs.iter().rev().map(Tree::mirror).collect()),
        }
    }

    /// Text form in the grammar `tree := "L" | "(" tree ("," tree)+ ")"`.
    pub fn to_grammar(&self) -> String {
        format!("{self}")
    }

    /// Parses the tree grammar; whitespace-insensitive.
    pub fn parse(input: &str) -> Result<Tree> {
        let mut p = Parser::new(input);
        let t = p.tree()?;
        p.skip_ws();
        if let Some(c) = p.peek() {
            return Err(p.err(format!("unexpected character {c:?} after tree")));
        }
        Ok(t)
    }

    /// JSON form: nested arrays with `"L"` leaves.
    pub fn to_json(&self) -> Value {
        match self {
            Tree::Leaf => json!("L"),
            Tree::Node(cs) => Value::Array(cs.iter().map(Tree::to_json).collect()),
        }
    }

    pub fn from_json(v: &Value) -> Result<Tree> {
        match v {
            Value::String(s) if s == "L" => Ok(Tree::Leaf),
            Value::Array(items) => {
                let cs = items.iter().map(Tree::from_json).collect::<Result<_>>()?;
                Tree::node(cs)
            }
            other => Err(Error::InvalidInput(format!(
                "expected \"L\" or array in tree JSON, got {other}"
            ))),
        }
    }
}

// Total order by (leaf count, arity, children lexicographically); gives a
// deterministic canonical representative independent of construction
// history.
impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.leaf_count()
            .cmp(&other.leaf_count())
            .then(self.arity().cmp(&other.arity()))
            .then_with(|| match (self, other) {
                (Tree::Node(a), Tree::Node(b)) => a.cmp(b),
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "L"),
            Tree::Node(cs) => {
                write!(f, "(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            chars: input.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next();
        match c {
            Some('\n') => {
                self.line += 1;
                self.column = 1;
            }
            Some(_) => self.column += 1,
            None => {}
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn err(&self, message: String) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message,
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.err(format!("expected {want:?}, found {c:?}"))),
            None => Err(self.err(format!("expected {want:?}, found end of input"))),
        }
    }

    fn tree(&mut self) -> Result<Tree> {
        self.skip_ws();
        match self.peek() {
            Some('L') => {
                self.bump();
                Ok(Tree::Leaf)
            }
            Some('(') => {
                self.bump();
                let mut children = vec![self.tree()?];
                self.expect(',')?;
                children.push(self.tree()?);
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(',') => {
                            self.bump();
                            children.push(self.tree()?);
                        }
                        Some(')') => {
                            self.bump();
                            return Ok(Tree::Node(children));
                        }
                        Some(c) => return Err(self.err(format!("expected ',' or ')', found {c:?}"))),
                        None => return Err(self.err("unterminated '('".into())),
                    }
                }
            }
            Some(c) => Err(self.err(format!("expected 'L' or '(', found {c:?}"))),
            None => Err(self.err("empty input".into())),
        }
    }
}

/// All planar rooted trees with `leaves` leaves (and exactly `internal`
/// internal nodes when given), each exactly once, sorted by the canonical
/// tree order.
pub fn enumerate_trees(leaves: usize, internal: Option<usize>) -> Vec<Tree> {
    assert!(leaves >= 1);
    let mut out = all_trees(leaves);
    if let Some(k) = internal {
        out.retain(|t| t.internal_count() == k);
    }
    out.sort();
    out
}

fn all_trees(n: usize) -> Vec<Tree> {
    if n == 1 {
        return vec![Tree::Leaf];
    }
    let mut out = Vec::new();
    let mut parts = Vec::new();
    compositions(n, 2, &mut parts, &mut |parts| {
        let choices: Vec<Vec<Tree>> = parts.iter().map(|&m| all_trees(m)).collect();
        let mut stack = vec![Vec::with_capacity(parts.len())];
        for c in &choices {
            let mut next = Vec::new();
            for prefix in &stack {
                for t in c {
                    let mut p: Vec<Tree> = prefix.clone();
                    p.push(t.clone());
                    next.push(p);
                }
            }
            stack = next;
        }
        for children in stack {
            out.push(Tree::Node(children));
        }
    });
    out
}

// All compositions of n into at least `min_parts` positive parts.
fn compositions(n: usize, min_parts: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if n == 0 {
        if acc.len() >= min_parts {
            f(acc);
        }
        return;
    }
    for first in 1..=n {
        acc.push(first);
        compositions(n - first, min_parts, acc, f);
        acc.pop();
    }
}

/// Grafts the root of `xs[i]` onto leaf `i` of `y` (leaves numbered left to
/// right). The single-leaf tree is the operad identity.
pub fn mosaic_compose(y: &Tree, xs: &[Tree]) -> Result<Tree> {
    if xs.len() != y.leaf_count() {
        return Err(Error::InvalidInput(format!(
            "arity mismatch: tree has {} leaves but {} arguments were given",
            y.leaf_count(),
            xs.len()
        )));
    }
    let mut idx = 0;
    Ok(graft(y, xs, &mut idx))
}

fn graft(t: &Tree, xs: &[Tree], idx: &mut usize) -> Tree {
    match t {
        Tree::Leaf => {
            let r = xs[*idx].clone();
            *idx += 1;
            r
        }
        Tree::Node(cs) => Tree::Node(cs.iter().map(|c| graft(c, xs, idx)).collect()),
    }
}

/// Lexicographically minimal representative over the orbit of all per-node
/// child reversals, computed bottom-up. Idempotent and constant on orbits.
pub fn dyslexic_canonical(t: &Tree) -> Tree {
    match t {
        Tree::Leaf => Tree::Leaf,
        Tree::Node(cs) => {
            let cs: Vec<Tree> = cs.iter().map(dyslexic_canonical).collect();
            let mut rev = cs.clone();
            rev.reverse();
            Tree::Node(if rev < cs { rev } else { cs })
        }
    }
}
