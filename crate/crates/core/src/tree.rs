// SPDX-License-Identifier: Apache-2.0

//! Canonical trees of read-once formulas over the basis of all `l`-ary functions.
//!
//! A canonical tree has literal leaves (each variable at most once) and
//! internal nodes labelled either with `and`/`or`/`xor` of any arity >= 2 or
//! with a prime function given by its truth table. Two adjacent nodes never
//! carry the same `and`/`or`/`xor` symbol, and output negations exist only on
//! leaves and inside prime labels.
//!
//! Text grammar (whitespace is insignificant):
//!
//! ```text
//! expr := ["~"] (lit | gate)
//! lit  := "x" int
//! gate := op "(" expr ("," expr)+ ")"
//! op   := "and" | "or" | "xor" | "p:" hex
//! ```
//!
//! The hex of a `p:` label is the truth table of the label over its arguments
//! in order, in the same encoding as `tt:` strings.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::truth_table::TruthTable;
use crate::vars::VarSet;
use crate::MAX_VARS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    And,
    Or,
    Xor,
    /// A prime function of arity equal to the number of children.
    Prime(TruthTable),
}

impl Gate {
    fn is_symbol(&self) -> bool {
        !matches!(self, Gate::Prime(_))
    }

    fn same_symbol(&self, other: &Gate) -> bool {
        self.is_symbol() && self == other
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::And => f.write_str("and"),
            Gate::Or => f.write_str("or"),
            Gate::Xor => f.write_str("xor"),
            Gate::Prime(t) => {
                let s = t.to_string();
                let hex = s.rsplit(':').next().unwrap_or_default();
                write!(f, "p:{hex}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf { var: usize, negated: bool },
    Gate(Gate),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub kind: NodeKind,
    pub children: Vec<NodeId>,
}

/// A formula as written, before canonicalisation. May contain negations of
/// gates and nested gates with the same symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Lit { var: usize, negated: bool },
    Not(Box<Formula>),
    Gate { gate: Gate, args: Vec<Formula> },
}

impl Formula {
    pub fn lit(var: usize) -> Formula {
        Formula::Lit {
            var,
            negated: false,
        }
    }

    pub fn gate(gate: Gate, args: Vec<Formula>) -> Formula {
        Formula::Gate { gate, args }
    }

    pub fn negate(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    /// Parses the formula grammar without canonicalising.
    pub fn parse(text: &str) -> Result<Formula> {
        let mut p = Parser { src: text, pos: 0 };
        let f = p.expr()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(f)
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            Formula::Lit { var, .. } => out.push(*var),
            Formula::Not(f) => f.collect_vars(out),
            Formula::Gate { args, .. } => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn current_token(&self) -> String {
        let rest = self.rest();
        let end = rest
            .char_indices()
            .skip(1)
            .find(|(_, c)| !c.is_ascii_alphanumeric() && *c != ':')
            .map_or(rest.len(), |(i, _)| i);
        let first_alnum = rest
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphanumeric());
        let tok = if first_alnum {
            &rest[..end]
        } else {
            &rest[..rest.chars().next().map_or(0, char::len_utf8)]
        };
        if tok.is_empty() {
            "<end of input>".to_string()
        } else {
            tok.to_string()
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            token: self.current_token(),
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> &str {
        let rest = self.rest();
        let end = rest
            .char_indices()
            .find(|(_, c)| !c.is_ascii_alphanumeric())
            .map_or(rest.len(), |(i, _)| i);
        let start = self.pos;
        self.pos += end;
        &self.src[start..self.pos]
    }

    fn expr(&mut self) -> Result<Formula> {
        self.skip_ws();
        if self.eat('~') {
            return Ok(self.expr()?.negate());
        }
        let start = self.pos;
        if self.rest().starts_with("p:") {
            self.pos += 2;
            let hex = self.word().to_string();
            if hex.is_empty() {
                return Err(self.error("expected hex truth table after `p:`"));
            }
            let args = self.args()?;
            let m = args.len();
            if m < 3 {
                self.pos = start;
                return Err(Error::NotPrimeLabel(format!(
                    "p:{hex} with {m} arguments (prime labels need at least 3)"
                )));
            }
            if m > MAX_VARS {
                return Err(Error::UnsupportedVarCount(m));
            }
            let label =
                TruthTable::from_hex(m, &hex.to_ascii_lowercase()).map_err(|e| match e {
                    Error::Parse { message, .. } => Error::Parse {
                        token: format!("p:{hex}"),
                        position: start,
                        message,
                    },
                    other => other,
                })?;
            return Ok(Formula::gate(Gate::Prime(label), args));
        }
        let word = self.word().to_string();
        let gate = match word.as_str() {
            "and" => Gate::And,
            "or" => Gate::Or,
            "xor" => Gate::Xor,
            w if w.starts_with('x') && w.len() > 1 => {
                let var: usize = w[1..].parse().map_err(|_| {
                    self.pos = start;
                    self.error("expected a variable `x<k>`")
                })?;
                if var == 0 || var > MAX_VARS {
                    self.pos = start;
                    return Err(self.error(&format!("variable index must be in 1..={MAX_VARS}")));
                }
                return Ok(Formula::lit(var));
            }
            _ => {
                self.pos = start;
                return Err(self.error("expected a literal or a gate"));
            }
        };
        let args = self.args()?;
        Ok(Formula::gate(gate, args))
    }

    fn args(&mut self) -> Result<Vec<Formula>> {
        if !self.eat('(') {
            self.skip_ws();
            return Err(self.error("expected `(`"));
        }
        let mut args = vec![self.expr()?];
        loop {
            if self.eat(',') {
                args.push(self.expr()?);
            } else if self.eat(')') {
                break;
            } else {
                self.skip_ws();
                return Err(self.error("expected `,` or `)`"));
            }
        }
        if args.len() < 2 {
            return Err(self.error("gates need at least two arguments"));
        }
        Ok(args)
    }
}

/// Owned intermediate form used while building arenas.
#[derive(Clone, Debug)]
enum Shape {
    Leaf { var: usize, negated: bool },
    Gate(Gate, Vec<Shape>),
}

impl Shape {
    fn layout(self, l: usize) -> ReadOnceTree {
        fn push(s: Shape, nodes: &mut Vec<Node>) -> NodeId {
            let id = NodeId(nodes.len());
            match s {
                Shape::Leaf { var, negated } => nodes.push(Node {
                    kind: NodeKind::Leaf { var, negated },
                    children: vec![],
                }),
                Shape::Gate(g, kids) => {
                    nodes.push(Node {
                        kind: NodeKind::Gate(g),
                        children: vec![],
                    });
                    let ids: Vec<NodeId> = kids.into_iter().map(|k| push(k, nodes)).collect();
                    nodes[id.0].children = ids;
                }
            }
            id
        }
        let mut nodes = Vec::new();
        let root = push(self, &mut nodes);
        ReadOnceTree { nodes, root, l }
    }
}

/// Violated invariant found by [`ReadOnceTree::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    RepeatedVariable(usize),
    /// Prime label wider than the basis bound.
    Basis {
        node: NodeId,
        arity: usize,
        l: usize,
    },
    /// A symbol node has a child with the same symbol.
    Adjacency {
        node: NodeId,
        child: NodeId,
    },
    NotPrime {
        node: NodeId,
    },
    ArityMismatch {
        node: NodeId,
        label: usize,
        children: usize,
    },
    TooFewChildren {
        node: NodeId,
    },
    LeafWithChildren {
        node: NodeId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RepeatedVariable(v) => write!(f, "variable x{v} occurs more than once"),
            Violation::Basis { node, arity, l } => {
                write!(
                    f,
                    "basis violation at node {}: arity {arity} > l = {l}",
                    node.0
                )
            }
            Violation::Adjacency { node, child } => write!(
                f,
                "adjacency violation: node {} and its child {} carry the same symbol",
                node.0, child.0
            ),
            Violation::NotPrime { node } => write!(f, "label of node {} is not prime", node.0),
            Violation::ArityMismatch {
                node,
                label,
                children,
            } => write!(
                f,
                "node {} has a {label}-ary label but {children} children",
                node.0
            ),
            Violation::TooFewChildren { node } => {
                write!(f, "node {} has fewer children than its label needs", node.0)
            }
            Violation::LeafWithChildren { node } => write!(f, "leaf {} has children", node.0),
        }
    }
}

/// Canonical tree of a read-once function, stored as an arena.
#[derive(Clone, Debug)]
pub struct ReadOnceTree {
    nodes: Vec<Node>,
    root: NodeId,
    l: usize,
}

impl PartialEq for ReadOnceTree {
    /// Structural equality; children are compared in order.
    fn eq(&self, other: &Self) -> bool {
        fn same(a: &ReadOnceTree, x: NodeId, b: &ReadOnceTree, y: NodeId) -> bool {
            let (nx, ny) = (a.node(x), b.node(y));
            nx.kind == ny.kind
                && nx.children.len() == ny.children.len()
                && nx
                    .children
                    .iter()
                    .zip(&ny.children)
                    .all(|(&cx, &cy)| same(a, cx, b, cy))
        }
        same(self, self.root, other, other.root)
    }
}

impl Eq for ReadOnceTree {}

impl ReadOnceTree {
    /// Parses and canonicalises a formula; prime labels wider than `l` are rejected.
    pub fn parse(text: &str, l: usize) -> Result<ReadOnceTree> {
        ReadOnceTree::canonicalize(&Formula::parse(text)?, l)
    }

    /// Wraps an arena without checking any invariant; see [`ReadOnceTree::validate`].
    pub fn from_raw_parts(nodes: Vec<Node>, root: NodeId, l: usize) -> ReadOnceTree {
        ReadOnceTree { nodes, root, l }
    }

    /// Pushes negations down to leaves and prime labels and merges nested
    /// gates carrying the same symbol.
    ///
    /// `!and` becomes `or` of negated children and vice versa, `!xor` negates
    /// its first child, and `!p:h` becomes `p:(!h)`.
    pub fn canonicalize(formula: &Formula, l: usize) -> Result<ReadOnceTree> {
        let mut vars = Vec::new();
        formula.collect_vars(&mut vars);
        let mut seen = VarSet::empty();
        for v in vars {
            if v == 0 || v > MAX_VARS {
                return Err(Error::VariableOutOfRange {
                    var: v,
                    n: MAX_VARS,
                });
            }
            if seen.contains(v) {
                return Err(Error::ReadOnceViolation(v));
            }
            seen.insert(v);
        }
        Ok(canon(formula, false, l)?.layout(l))
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Arity bound of the basis this tree was built for.
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn with_l(mut self, l: usize) -> ReadOnceTree {
        self.l = l;
        self
    }

    /// Node ids reachable from the root, parents before children.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            out.push(id);
            stack.extend(self.node(id).children.iter().rev());
        }
        out
    }

    pub fn internal_nodes(&self) -> Vec<NodeId> {
        self.preorder()
            .into_iter()
            .filter(|&id| matches!(self.node(id).kind, NodeKind::Gate(_)))
            .collect()
    }

    /// Variables occurring at leaves.
    pub fn leaf_vars(&self) -> VarSet {
        self.leaf_sets()[self.root.0]
    }

    /// For every node, the variables of the leaves below it (indexed by arena slot).
    pub fn leaf_sets(&self) -> Vec<VarSet> {
        let mut sets = vec![VarSet::empty(); self.nodes.len()];
        for id in self.preorder().into_iter().rev() {
            let node = self.node(id);
            sets[id.0] = match node.kind {
                NodeKind::Leaf { var, .. } => VarSet::singleton(var),
                NodeKind::Gate(_) => node
                    .children
                    .iter()
                    .fold(VarSet::empty(), |acc, c| acc.union(sets[c.0])),
            };
        }
        sets
    }

    /// Function computed by the tree, over its leaf variables in ascending order.
    pub fn truth_table(&self) -> TruthTable {
        self.node_table(self.root)
    }

    /// Function computed at `id`, over the leaf variables of its subtree in
    /// ascending order.
    pub fn node_table(&self, id: NodeId) -> TruthTable {
        let vars = self.leaf_sets()[id.0];
        self.eval_over(id, vars)
    }

    /// Evaluates the subtree at `id` as a table over `vars` (ascending).
    fn eval_over(&self, id: NodeId, vars: VarSet) -> TruthTable {
        let k = vars.len();
        let node = self.node(id);
        match &node.kind {
            NodeKind::Leaf { var, negated } => {
                let pos = vars
                    .iter()
                    .position(|v| v == *var)
                    .expect("leaf in var set")
                    + 1;
                let t = TruthTable::var(k, pos).expect("valid position");
                if *negated {
                    !t
                } else {
                    t
                }
            }
            NodeKind::Gate(g) => {
                let kids: Vec<TruthTable> = node
                    .children
                    .iter()
                    .map(|&c| self.eval_over(c, vars))
                    .collect();
                match g {
                    Gate::And => kids.iter().skip(1).fold(kids[0].clone(), |a, b| &a & b),
                    Gate::Or => kids.iter().skip(1).fold(kids[0].clone(), |a, b| &a | b),
                    Gate::Xor => kids.iter().skip(1).fold(kids[0].clone(), |a, b| &a ^ b),
                    Gate::Prime(h) => TruthTable::compose(h, &kids).expect("label arity"),
                }
            }
        }
    }

    /// Lists every violated tree invariant, checking prime arities against `l`.
    pub fn validate(&self, l: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = VarSet::empty();
        for id in self.preorder() {
            let node = self.node(id);
            match &node.kind {
                NodeKind::Leaf { var, .. } => {
                    if !node.children.is_empty() {
                        out.push(Violation::LeafWithChildren { node: id });
                    }
                    if seen.contains(*var) {
                        out.push(Violation::RepeatedVariable(*var));
                    }
                    seen.insert(*var);
                }
                NodeKind::Gate(g) => {
                    let m = node.children.len();
                    if m < 2 {
                        out.push(Violation::TooFewChildren { node: id });
                    }
                    if let Gate::Prime(h) = g {
                        if h.num_vars() != m {
                            out.push(Violation::ArityMismatch {
                                node: id,
                                label: h.num_vars(),
                                children: m,
                            });
                        }
                        if h.num_vars() < 3 || !h.depends_on_all() || !h.is_prime_unchecked() {
                            out.push(Violation::NotPrime { node: id });
                        }
                        if h.num_vars() > l {
                            out.push(Violation::Basis {
                                node: id,
                                arity: h.num_vars(),
                                l,
                            });
                        }
                    }
                    for &c in &node.children {
                        if let NodeKind::Gate(cg) = &self.node(c).kind {
                            if g.same_symbol(cg) {
                                out.push(Violation::Adjacency { node: id, child: c });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn parents(&self) -> Vec<Option<NodeId>> {
        let mut parent = vec![None; self.nodes.len()];
        for id in self.preorder() {
            for &c in &self.node(id).children {
                parent[c.0] = Some(id);
            }
        }
        parent
    }

    pub fn leaf_of(&self, var: usize) -> Option<NodeId> {
        self.preorder()
            .into_iter()
            .find(|&id| matches!(self.node(id).kind, NodeKind::Leaf { var: v, .. } if v == var))
    }

    /// Least common ancestor of the leaves of `vars`.
    pub fn lca(&self, vars: VarSet) -> Result<NodeId> {
        if vars.is_empty() {
            return Err(Error::EmptyVarSet);
        }
        let parent = self.parents();
        let path = |leaf: NodeId| {
            let mut p = vec![leaf];
            let mut cur = leaf;
            while let Some(up) = parent[cur.0] {
                p.push(up);
                cur = up;
            }
            p.reverse();
            p
        };
        let mut common: Option<Vec<NodeId>> = None;
        for v in vars.iter() {
            let leaf = self.leaf_of(v).ok_or(Error::MissingVariable(v))?;
            let p = path(leaf);
            common = Some(match common {
                None => p,
                Some(c) => c
                    .iter()
                    .zip(&p)
                    .take_while(|(a, b)| a == b)
                    .map(|(a, _)| *a)
                    .collect(),
            });
        }
        Ok(*common.expect("non-empty").last().expect("root is common"))
    }

    /// True iff at every prime-labelled node the number of subtrees meeting
    /// `u` is 0, 1 or the arity of the label.
    pub fn is_conservative(&self, u: VarSet) -> bool {
        let sets = self.leaf_sets();
        self.preorder().into_iter().all(|id| {
            let node = self.node(id);
            match &node.kind {
                NodeKind::Gate(Gate::Prime(h)) => {
                    let hits = node
                        .children
                        .iter()
                        .filter(|c| !sets[c.0].is_disjoint(u))
                        .count();
                    hits <= 1 || hits == h.num_vars()
                }
                _ => true,
            }
        })
    }

    /// Draws a random canonical tree on `x1..xn` with default settings.
    pub fn random(n: usize, l: usize, seed: u64) -> ReadOnceTree {
        RandomTreeConfig::default().generate(n, l, seed)
    }
}

fn canon(f: &Formula, negate: bool, l: usize) -> Result<Shape> {
    match f {
        Formula::Lit { var, negated } => Ok(Shape::Leaf {
            var: *var,
            negated: *negated ^ negate,
        }),
        Formula::Not(inner) => canon(inner, !negate, l),
        Formula::Gate { gate, args } => {
            if args.len() < 2 {
                return Err(Error::Parse {
                    token: gate.to_string(),
                    position: 0,
                    message: "gates need at least two arguments".into(),
                });
            }
            match gate {
                Gate::Prime(h) => {
                    check_prime_label(h, args.len(), l)?;
                    let label = if negate { !h } else { h.clone() };
                    let kids = args
                        .iter()
                        .map(|a| canon(a, false, l))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Shape::Gate(Gate::Prime(label), kids))
                }
                Gate::Xor => {
                    let kids = args
                        .iter()
                        .enumerate()
                        .map(|(i, a)| canon(a, negate && i == 0, l))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(flatten(Gate::Xor, kids))
                }
                Gate::And | Gate::Or => {
                    let g = match (gate, negate) {
                        (Gate::And, false) | (Gate::Or, true) => Gate::And,
                        _ => Gate::Or,
                    };
                    let kids = args
                        .iter()
                        .map(|a| canon(a, negate, l))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(flatten(g, kids))
                }
            }
        }
    }
}

fn flatten(g: Gate, kids: Vec<Shape>) -> Shape {
    let mut out = Vec::with_capacity(kids.len());
    for k in kids {
        match k {
            Shape::Gate(cg, grand) if cg == g => out.extend(grand),
            other => out.push(other),
        }
    }
    Shape::Gate(g, out)
}

fn check_prime_label(h: &TruthTable, arity: usize, l: usize) -> Result<()> {
    if h.num_vars() != arity || arity < 3 {
        return Err(Error::NotPrimeLabel(format!(
            "p:{} with {arity} arguments",
            Gate::Prime(h.clone()).to_string().trim_start_matches("p:")
        )));
    }
    if !h.depends_on_all() || !h.is_prime_unchecked() {
        return Err(Error::NotPrimeLabel(Gate::Prime(h.clone()).to_string()));
    }
    if arity > l {
        return Err(Error::BasisViolation { arity, l });
    }
    Ok(())
}

impl fmt::Display for ReadOnceTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &ReadOnceTree, id: NodeId, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let node = t.node(id);
            match &node.kind {
                NodeKind::Leaf { var, negated } => {
                    if *negated {
                        f.write_str("~")?;
                    }
                    write!(f, "x{var}")
                }
                NodeKind::Gate(g) => {
                    write!(f, "{g}(")?;
                    for (i, &c) in node.children.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        go(t, c, f)?;
                    }
                    f.write_str(")")
                }
            }
        }
        go(self, self.root, f)
    }
}

/// Settings of the seeded tree generator.
#[derive(Clone, Debug)]
pub struct RandomTreeConfig {
    /// Chance that a node over at least three variables gets a prime label
    /// (when `l >= 3`).
    pub prime_probability: f64,
    /// Largest arity drawn for `and`/`or`/`xor` nodes.
    pub max_symbol_arity: usize,
}

impl Default for RandomTreeConfig {
    fn default() -> Self {
        RandomTreeConfig {
            prime_probability: 0.4,
            max_symbol_arity: 4,
        }
    }
}

impl RandomTreeConfig {
    /// Builds a canonical tree on exactly `x1..xn` by recursively breaking a
    /// shuffled variable list into blocks. Deterministic per seed.
    pub fn generate(&self, n: usize, l: usize, seed: u64) -> ReadOnceTree {
        assert!((1..=MAX_VARS).contains(&n), "n out of range");
        assert!(l >= 2, "l must be at least 2");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut vars: Vec<usize> = (1..=n).collect();
        vars.shuffle(&mut rng);
        self.build(&vars, l, None, &mut rng).layout(l)
    }

    fn build(
        &self,
        vars: &[usize],
        l: usize,
        parent: Option<&Gate>,
        rng: &mut ChaCha8Rng,
    ) -> Shape {
        if vars.len() == 1 {
            return Shape::Leaf {
                var: vars[0],
                negated: rng.gen_bool(0.5),
            };
        }
        let max_prime = l.min(vars.len());
        if max_prime >= 3 && rng.gen_bool(self.prime_probability) {
            let m = rng.gen_range(3..=max_prime);
            let label = random_prime(m, rng);
            let kids = split(vars, m, rng)
                .into_iter()
                .map(|b| self.build(&b, l, None, rng))
                .collect();
            return Shape::Gate(Gate::Prime(label), kids);
        }
        let choices: Vec<Gate> = [Gate::And, Gate::Or, Gate::Xor]
            .into_iter()
            .filter(|g| Some(g) != parent)
            .collect();
        let g = choices[rng.gen_range(0..choices.len())].clone();
        let k = rng.gen_range(2..=vars.len().min(self.max_symbol_arity.max(2)));
        let kids = split(vars, k, rng)
            .into_iter()
            .map(|b| self.build(&b, l, Some(&g), rng))
            .collect();
        Shape::Gate(g, kids)
    }
}

/// Cuts `vars` into `k` non-empty consecutive blocks at random points.
fn split(vars: &[usize], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let mut cuts: Vec<usize> = (1..vars.len()).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(k - 1).collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(k);
    let mut start = 0;
    for c in cuts.into_iter().chain(std::iter::once(vars.len())) {
        out.push(vars[start..c].to_vec());
        start = c;
    }
    out
}

/// Rejection-samples a prime function of `m >= 3` variables.
pub(crate) fn random_prime(m: usize, rng: &mut impl Rng) -> TruthTable {
    loop {
        let t = TruthTable::from_fn(m, |_| rng.gen_bool(0.5)).expect("small arity");
        if t.depends_on_all() && t.is_prime_unchecked() {
            return t;
        }
    }
}
