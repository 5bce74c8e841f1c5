//! Trees whose internal nodes carry normalized elliptic parameter vectors.
//!
//! An internal node of arity `k` carries `k` strictly increasing values
//! with first entry 0 and last entry 1; the affine gauge of elliptic
//! parameters is fixed by this normalization, so arity-2 nodes carry no
//! free parameters. Parameters are kept as exact rationals; the numeric
//! layer converts on demand.

use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::assoc::Tree;
use crate::error::{Error, Result};
use crate::rat::{self, parse_rat, Rat};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LabeledTree {
    Leaf,
    Node {
        children: Vec<LabeledTree>,
        params: Vec<Rat>,
    },
}

impl LabeledTree {
    pub fn node(children: Vec<LabeledTree>, params: Vec<Rat>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "internal node arity {} < 2",
                children.len()
            )));
        }
        if params.len() != children.len() {
            return Err(Error::InvalidInput(format!(
                "arity-{} node needs {} parameters, got {}",
                children.len(),
                children.len(),
                params.len()
            )));
        }
        if params.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(
                "node parameters must be strictly increasing".into(),
            ));
        }
        if !params[0].is_zero() || !params[params.len() - 1].is_one() {
            return Err(Error::InvalidInput(
                "node parameters must be normalized to start at 0 and end at 1".into(),
            ));
        }
        Ok(LabeledTree::Node { children, params })
    }

    /// The corolla: a single internal node with one leaf per parameter.
    pub fn corolla(params: Vec<Rat>) -> Result<Self> {
        let leaves = vec![LabeledTree::Leaf; params.len()];
        LabeledTree::node(leaves, params)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            LabeledTree::Leaf => 1,
            LabeledTree::Node { children, .. } => children.iter().map(Self::leaf_count).sum(),
        }
    }

    pub fn internal_count(&self) -> usize {
        match self {
            LabeledTree::Leaf => 0,
            LabeledTree::Node { children, .. } => {
                1 + children.iter().map(Self::internal_count).sum::<usize>()
            }
        }
    }

    /// Number of free parameters: `sum over internal nodes (arity - 2)`,
    /// the dimension of the corresponding associahedron face.
    pub fn essential_param_count(&self) -> usize {
        match self {
            LabeledTree::Leaf => 0,
            LabeledTree::Node { children, .. } => {
                children.len() - 2
                    + children.iter().map(Self::essential_param_count).sum::<usize>()
            }
        }
    }

    /// The underlying unlabelled shape.
    pub fn shape(&self) -> Tree {
        match self {
            LabeledTree::Leaf => Tree::Leaf,
            LabeledTree::Node { children, .. } => {
                Tree::Node(children.iter().map(Self::shape).collect())
            }
        }
    }

    pub fn params_f64(params: &[Rat]) -> Vec<f64> {
        params.iter().map(rat::to_f64).collect()
    }

    /// Internal-node parameter vectors in preorder, the order used by the
    /// flat coordinate layout.
    pub fn preorder_params(&self) -> Vec<&[Rat]> {
        let mut out = Vec::new();
        self.collect_preorder(&mut out);
        out
    }

    fn collect_preorder<'a>(&'a self, out: &mut Vec<&'a [Rat]>) {
        if let LabeledTree::Node { children, params } = self {
            out.push(params);
            for c in children {
                c.collect_preorder(out);
            }
        }
    }

    /// Parses `L`, `(t,...,t){r,...,r}` or the shorthand `corolla{r,...,r}`;
    /// parameters accept integers, `p/q` and finite decimals.
    pub fn parse(input: &str) -> Result<Self> {
        let mut p = LParser {
            src: input,
            pos: 0,
        };
        let t = p.tree()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(t)
    }

    /// JSON form: nested `{children: [...], params: [...]}` with `"L"`
    /// leaves; parameters serialized as decimal strings of the exact value.
    pub fn to_json(&self) -> Value {
        match self {
            LabeledTree::Leaf => json!("L"),
            LabeledTree::Node { children, params } => json!({
                "children": children.iter().map(Self::to_json).collect::<Vec<_>>(),
                "params": params
                    .iter()
                    .map(|r| format!("{:.17e}", rat::to_f64(r)))
                    .collect::<Vec<_>>(),
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) if s == "L" => Ok(LabeledTree::Leaf),
            Value::Object(map) => {
                let children = map
                    .get("children")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::InvalidInput("missing children array".into()))?
                    .iter()
                    .map(Self::from_json)
                    .collect::<Result<_>>()?;
                let params = map
                    .get("params")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::InvalidInput("missing params array".into()))?
                    .iter()
                    .map(|p| match p {
                        Value::String(s) => parse_decimal_or_rat(s),
                        Value::Number(n) => {
                            let f = n.as_f64().ok_or_else(|| {
                                Error::InvalidInput(format!("bad parameter {n}"))
                            })?;
                            Rat::from_float(f).ok_or_else(|| {
                                Error::InvalidInput(format!("non-finite parameter {f}"))
                            })
                        }
                        other => Err(Error::InvalidInput(format!("bad parameter {other}"))),
                    })
                    .collect::<Result<_>>()?;
                LabeledTree::node(children, params)
            }
            other => Err(Error::InvalidInput(format!(
                "expected \"L\" or object in labeled-tree JSON, got {other}"
            ))),
        }
    }
}

fn parse_decimal_or_rat(s: &str) -> Result<Rat> {
    // accept scientific notation from our own output
    if s.contains(['e', 'E']) {
        let f: f64 = s
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad parameter {s:?}")))?;
        return Rat::from_float(f)
            .ok_or_else(|| Error::InvalidInput(format!("non-finite parameter {s:?}")));
    }
    parse_rat(s)
}

impl std::fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LabeledTree::Leaf => write!(f, "L"),
            LabeledTree::Node { children, params } => {
                write!(f, "(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "){{")?;
                for (i, p) in params.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

struct LParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> LParser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(|c: char| c.is_whitespace()) {
            self.pos += self.rest().chars().next().unwrap().len_utf8();
        }
    }

    fn err(&self, message: &str) -> Error {
        let consumed = &self.src[..self.pos];
        let line = consumed.matches('\n').count() + 1;
        let column = consumed.rsplit('\n').next().unwrap_or("").chars().count() + 1;
        Error::Parse {
            line,
            column,
            message: message.to_string(),
        }
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("expected {c:?}")))
        }
    }

    fn tree(&mut self) -> Result<LabeledTree> {
        self.skip_ws();
        if self.rest().starts_with("corolla") {
            self.pos += "corolla".len();
            let params = self.params()?;
            return LabeledTree::corolla(params);
        }
        if self.rest().starts_with('L') {
            self.pos += 1;
            return Ok(LabeledTree::Leaf);
        }
        self.eat('(')?;
        let mut children = vec![self.tree()?];
        self.eat(',')?;
        children.push(self.tree()?);
        loop {
            self.skip_ws();
            if self.rest().starts_with(',') {
                self.pos += 1;
                children.push(self.tree()?);
            } else {
                break;
            }
        }
        self.eat(')')?;
        let params = self.params()?;
        LabeledTree::node(children, params)
    }

    fn params(&mut self) -> Result<Vec<Rat>> {
        self.eat('{')?;
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let end = self
                .rest()
                .find(|c: char| c == ',' || c == '}')
                .ok_or_else(|| self.err("unterminated parameter list"))?;
            let token = &self.rest()[..end];
            if token.trim().is_empty() {
                return Err(self.err("empty parameter"));
            }
            out.push(parse_rat(token)?);
            self.pos += end;
            if self.rest().starts_with(',') {
                self.pos += 1;
            } else {
                self.eat('}')?;
                return Ok(out);
            }
        }
    }
}

/// Deterministic random labelled tree with the given leaf count: a random
/// shape and random normalized strictly increasing rational parameters at
/// every internal node.
pub fn random_labeled_tree<R: Rng>(rng: &mut R, leaves: usize) -> LabeledTree {
    assert!(leaves >= 1);
    if leaves == 1 {
        return LabeledTree::Leaf;
    }
    let arity = if leaves == 2 {
        2
    } else {
        rng.gen_range(2..=leaves.min(4))
    };
    // random composition of `leaves` into `arity` positive parts
    let mut parts = vec![1usize; arity];
    for _ in 0..leaves - arity {
        let i = rng.gen_range(0..arity);
        parts[i] += 1;
    }
    let children: Vec<LabeledTree> = parts
        .iter()
        .map(|&p| random_labeled_tree(rng, p))
        .collect();
    let params = random_params(rng, arity);
    LabeledTree::node(children, params).expect("generated parameters are valid")
}

fn random_params<R: Rng>(rng: &mut R, arity: usize) -> Vec<Rat> {
    // strictly increasing rationals with denominator 1000, endpoints 0 and 1
    let mut interior: Vec<i64> = Vec::new();
    while interior.len() < arity - 2 {
        let v = rng.gen_range(1..1000i64);
        if !interior.contains(&v) {
            interior.push(v);
        }
    }
    interior.sort_unstable();
    let mut params = Vec::with_capacity(arity);
    params.push(Rat::zero());
    params.extend(interior.into_iter().map(|v| rat::ratio(v, 1000)));
    params.push(Rat::one());
    params
}
