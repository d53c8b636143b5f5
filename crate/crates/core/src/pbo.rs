//! Pseudo-Boolean compilation of the identification problem.
//!
//! Each network edge `e` gets a binary variable `x_e` (variable index = edge
//! index). The objective
//!
//! ```text
//! f = -Σ x_e + A1 Σ (x_e - h_e)² + A2 Σ x_e x_g (h_{e∖g} + h_{g∖e})² + A3·0
//! ```
//!
//! is expanded to multilinear normal form. `h_e` counts selected embeddings
//! through `e`; the second sum runs over ordered pairs of distinct edges
//! sharing a node. Only existing edges get variables, so the non-edge penalty
//! is identically zero and kept only as a named component.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::embedding::{enumerate_embeddings, Matcher};
use crate::error::{Error, Result};
use crate::graph::{EdgeIdx, MotifPattern, NodeIdx, RegulatoryNetwork};

pub const DEFAULT_TERM_CAP: usize = 200_000;

/// Bijection between network edges and model variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableMap {
    edges: Vec<EdgeIdx>,
}

impl VariableMap {
    pub fn identity(net: &RegulatoryNetwork) -> Self {
        Self {
            edges: (0..net.edge_count()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_of(&self, var: usize) -> EdgeIdx {
        self.edges[var]
    }

    pub fn var_of(&self, edge: EdgeIdx) -> Option<usize> {
        self.edges.binary_search(&edge).ok()
    }

    /// Selected edges of a little-endian basis index.
    pub fn decode(&self, basis: usize) -> BTreeSet<EdgeIdx> {
        (0..self.edges.len())
            .filter(|k| basis >> k & 1 == 1)
            .map(|k| self.edges[k])
            .collect()
    }

    pub fn encode(&self, edges: &BTreeSet<EdgeIdx>) -> usize {
        edges
            .iter()
            .filter_map(|&e| self.var_of(e))
            .fold(0, |acc, k| acc | 1 << k)
    }
}

/// Multilinear real polynomial over `num_vars` binary variables.
///
/// Terms are keyed by their sorted, duplicate-free variable list; zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PseudoBooleanPolynomial {
    num_vars: usize,
    constant: f64,
    terms: BTreeMap<Vec<u32>, f64>,
}

impl PseudoBooleanPolynomial {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            constant: 0.0,
            terms: BTreeMap::new(),
        }
    }

    pub fn variable(num_vars: usize, var: u32) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(&[var], 1.0);
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.constant == 0.0 && self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn coefficient(&self, vars: &[u32]) -> f64 {
        let key = normalize(vars);
        if key.is_empty() {
            self.constant
        } else {
            self.terms.get(&key).copied().unwrap_or(0.0)
        }
    }

    /// Adds `coef · Π vars`, collapsing repeated variables (`x² = x`).
    pub fn add_term(&mut self, vars: &[u32], coef: f64) {
        let key = normalize(vars);
        self.add_normalized(key, coef);
    }

    fn add_normalized(&mut self, key: Vec<u32>, coef: f64) {
        if coef == 0.0 {
            return;
        }
        if let Some(&max) = key.last() {
            debug_assert!((max as usize) < self.num_vars, "variable {max} out of range");
        }
        if key.is_empty() {
            self.constant += coef;
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if *o.get() == 0.0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add_constant(&mut self, c: f64) {
        self.constant += c;
    }

    pub fn add_scaled(&mut self, other: &Self, scale: f64) {
        self.constant += other.constant * scale;
        for (k, &v) in &other.terms {
            self.add_normalized(k.clone(), v * scale);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.num_vars.max(other.num_vars));
        let lhs: Vec<(&[u32], f64)> = std::iter::once((&[][..], self.constant))
            .chain(self.terms())
            .filter(|(_, c)| *c != 0.0)
            .collect();
        let rhs: Vec<(&[u32], f64)> = std::iter::once((&[][..], other.constant))
            .chain(other.terms())
            .filter(|(_, c)| *c != 0.0)
            .collect();
        for (a, ca) in &lhs {
            for (b, cb) in &rhs {
                out.add_normalized(union_sorted(a, b), ca * cb);
            }
        }
        out
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// `f(X)`: constant plus the coefficients of all terms whose variables are set.
    pub fn evaluate(&self, assignment: &[bool]) -> Result<f64> {
        if assignment.len() != self.num_vars {
            return Err(Error::LengthMismatch {
                expected: self.num_vars,
                actual: assignment.len(),
            });
        }
        Ok(self.constant
            + self
                .terms
                .iter()
                .filter(|(k, _)| k.iter().all(|&v| assignment[v as usize]))
                .map(|(_, &c)| c)
                .sum::<f64>())
    }

    /// Evaluates at a little-endian basis index (bit `k` is variable `k`).
    pub fn evaluate_index(&self, basis: usize) -> Result<f64> {
        let bits: Vec<bool> = (0..self.num_vars).map(|k| basis >> k & 1 == 1).collect();
        self.evaluate(&bits)
    }

    /// Text dump: a `# variables` header, one `coefficient<TAB>v1,v2,...`
    /// line per term and the constant on a `C` line.
    pub fn to_dump(&self) -> String {
        let mut s = format!("# variables\t{}\n", self.num_vars);
        for (k, v) in &self.terms {
            let vars: Vec<String> = k.iter().map(u32::to_string).collect();
            let _ = writeln!(s, "{v}\t{}", vars.join(","));
        }
        let _ = writeln!(s, "C\t{}", self.constant);
        s
    }

    pub fn from_dump(text: &str, path: &Path) -> Result<Self> {
        let mut num_vars = None;
        let mut terms = Vec::new();
        let mut constant = 0.0;
        for (i, line) in text.lines().enumerate() {
            let err = |m: &str| Error::parse(path, i + 1, m);
            if let Some(rest) = line.strip_prefix("# variables\t") {
                num_vars = Some(rest.trim().parse::<usize>().map_err(|_| err("bad variable count"))?);
                continue;
            }
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let (head, tail) = line.split_once('\t').ok_or_else(|| err("expected a tab"))?;
            if head == "C" {
                constant = tail.trim().parse().map_err(|_| err("bad constant"))?;
                continue;
            }
            let coef: f64 = head.parse().map_err(|_| err("bad coefficient"))?;
            let vars = tail
                .split(',')
                .map(|v| v.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| err("bad variable list"))?;
            terms.push((vars, coef));
        }
        let inferred = terms
            .iter()
            .flat_map(|(v, _)| v.iter())
            .map(|&v| v as usize + 1)
            .max()
            .unwrap_or(0);
        let mut p = Self::zero(num_vars.unwrap_or(inferred).max(inferred));
        p.constant = constant;
        for (vars, coef) in terms {
            p.add_term(&vars, coef);
        }
        Ok(p)
    }
}

fn normalize(vars: &[u32]) -> Vec<u32> {
    let mut key = vars.to_vec();
    key.sort_unstable();
    key.dedup();
    key
}

fn union_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// How `h` places the motif on its anchor edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HMode {
    /// Motif edge (1,2) sits on the anchor; one unit per mapping.
    Anchored,
    /// Any motif edge may sit on the anchor; one unit per distinct edge set.
    #[default]
    Orbit,
}

impl std::str::FromStr for HMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "anchored" => Ok(HMode::Anchored),
            "orbit" => Ok(HMode::Orbit),
            other => Err(format!("unknown h mode '{other}' (expected anchored or orbit)")),
        }
    }
}

/// What `h_{e∖g}` leaves out in the node-sharing penalty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairExclusion {
    /// Embeddings through `e` that do not contain edge `g`.
    #[default]
    Edge,
    /// Embeddings through `e` avoiding the endpoints of `g` that `e` does not share.
    Nodes,
}

impl std::str::FromStr for PairExclusion {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "edge" => Ok(PairExclusion::Edge),
            "nodes" => Ok(PairExclusion::Nodes),
            other => Err(format!("unknown pair exclusion '{other}' (expected edge or nodes)")),
        }
    }
}

/// Restrictions on the embeddings counted by an `h` polynomial.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Avoid {
    pub nodes: BTreeSet<NodeIdx>,
    pub edges: BTreeSet<EdgeIdx>,
}

impl Avoid {
    pub fn nodes(nodes: impl IntoIterator<Item = NodeIdx>) -> Self {
        Self {
            nodes: nodes.into_iter().collect(),
            edges: BTreeSet::new(),
        }
    }

    pub fn edge(edge: EdgeIdx) -> Self {
        Self {
            nodes: BTreeSet::new(),
            edges: [edge].into(),
        }
    }
}

/// `h` for one anchor edge: the sum, over label-consistent injective
/// placements of the motif through `anchor` that respect `avoid`, of the
/// product of the placed edge variables. Built by backtracking from the
/// anchor.
pub fn build_h_polynomial(
    net: &RegulatoryNetwork,
    motif: &MotifPattern,
    anchor: EdgeIdx,
    avoid: &Avoid,
    mode: HMode,
    wildcard: bool,
) -> Result<PseudoBooleanPolynomial> {
    if anchor >= net.edge_count() {
        return Err(Error::UnknownEdge(anchor));
    }
    let mut allowed = vec![true; net.edge_count()];
    for &e in &avoid.edges {
        if e < allowed.len() {
            allowed[e] = false;
        }
    }
    let mut banned = vec![false; net.node_count()];
    for &v in &avoid.nodes {
        if v < banned.len() {
            banned[v] = true;
        }
    }
    let matcher = Matcher::new(net, motif, wildcard)
        .allowed_edges(&allowed)
        .banned_nodes(&banned);
    let mut poly = PseudoBooleanPolynomial::zero(net.edge_count());
    match mode {
        HMode::Anchored => {
            let k = motif
                .anchor_edge()
                .ok_or_else(|| Error::InvalidConfig("motif is not canonical: no edge between nodes 1 and 2".into()))?;
            matcher.for_each_mapping(k, anchor, &mut |m| {
                let vars: Vec<u32> = motif
                    .edges()
                    .iter()
                    .map(|e| net.edge_between(m[e.a], m[e.b]).expect("mapped edge") as u32)
                    .collect();
                poly.add_term(&vars, 1.0);
            });
        }
        HMode::Orbit => {
            for emb in matcher.embeddings_through(anchor) {
                let vars: Vec<u32> = emb.edge_ids.iter().map(|&e| e as u32).collect();
                poly.add_term(&vars, 1.0);
            }
        }
    }
    Ok(poly)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Penalties {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl Penalties {
    pub fn uniform(a: f64) -> Self {
        Self { a1: a, a2: a, a3: a }
    }

    /// `|E| + 1`: one violated penalty unit outweighs selecting every edge.
    pub fn default_for(net: &RegulatoryNetwork) -> Self {
        Self::uniform(net.edge_count() as f64 + 1.0)
    }

    pub fn min(&self) -> f64 {
        self.a1.min(self.a2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelOptions {
    pub mode: HMode,
    pub exclusion: PairExclusion,
    pub wildcard: bool,
    pub term_cap: usize,
}

impl Default for ModelOptions {
    fn default() -> Self {
        Self {
            mode: HMode::Orbit,
            exclusion: PairExclusion::Edge,
            wildcard: false,
            term_cap: DEFAULT_TERM_CAP,
        }
    }
}

/// The assembled objective with its named components.
#[derive(Debug, Clone, PartialEq)]
pub struct Objective {
    pub total: PseudoBooleanPolynomial,
    pub cost: PseudoBooleanPolynomial,
    pub edge_penalty: PseudoBooleanPolynomial,
    pub node_penalty: PseudoBooleanPolynomial,
    pub non_edge_penalty: PseudoBooleanPolynomial,
    pub vars: VariableMap,
    pub penalties: Penalties,
}

/// One placement feeding an `h` polynomial.
struct Placement {
    vars: Vec<u32>,
    nodes: Vec<NodeIdx>,
}

/// Builds `f = -f_c + f_p1 + f_p2 + f_p3` over the edges of `net`.
pub fn assemble_objective(
    net: &RegulatoryNetwork,
    motif: &MotifPattern,
    penalties: Penalties,
    options: &ModelOptions,
) -> Result<Objective> {
    let r = net.edge_count();
    let cap = options.term_cap;
    let check = |p: &PseudoBooleanPolynomial| {
        if p.term_count() > cap {
            Err(Error::PolynomialBlowup { cap })
        } else {
            Ok(())
        }
    };

    // h_e placements, grouped by anchor edge.
    let mut through: HashMap<EdgeIdx, Vec<Placement>> = HashMap::new();
    match options.mode {
        HMode::Orbit => {
            for emb in enumerate_embeddings(net, motif, options.wildcard).embeddings {
                let vars: Vec<u32> = emb.edge_ids.iter().map(|&e| e as u32).collect();
                for &e in &emb.edge_ids {
                    through.entry(e).or_default().push(Placement {
                        vars: vars.clone(),
                        nodes: emb.node_ids.clone(),
                    });
                }
            }
        }
        HMode::Anchored => {
            let k = motif
                .anchor_edge()
                .ok_or_else(|| Error::InvalidConfig("motif is not canonical: no edge between nodes 1 and 2".into()))?;
            let matcher = Matcher::new(net, motif, options.wildcard);
            for e in 0..r {
                matcher.for_each_mapping(k, e, &mut |m| {
                    let vars: Vec<u32> = motif
                        .edges()
                        .iter()
                        .map(|me| net.edge_between(m[me.a], m[me.b]).expect("mapped edge") as u32)
                        .collect();
                    let mut nodes = m.to_vec();
                    nodes.sort_unstable();
                    through.entry(e).or_default().push(Placement {
                        vars: normalize(&vars),
                        nodes,
                    });
                });
            }
        }
    }
    let h_poly = |e: EdgeIdx, keep: &dyn Fn(&Placement) -> bool| {
        let mut p = PseudoBooleanPolynomial::zero(r);
        for pl in through.get(&e).into_iter().flatten().filter(|pl| keep(pl)) {
            p.add_normalized(pl.vars.clone(), 1.0);
        }
        p
    };

    let mut cost = PseudoBooleanPolynomial::zero(r);
    for e in 0..r {
        cost.add_term(&[e as u32], 1.0);
    }

    let mut edge_penalty = PseudoBooleanPolynomial::zero(r);
    for e in 0..r {
        let mut diff = PseudoBooleanPolynomial::variable(r, e as u32);
        diff.add_scaled(&h_poly(e, &|_| true), -1.0);
        let sq = diff.square();
        check(&sq)?;
        edge_penalty.add_scaled(&sq, penalties.a1);
        check(&edge_penalty)?;
    }

    let mut node_penalty = PseudoBooleanPolynomial::zero(r);
    for e1 in 0..r {
        for e2 in net.adjacent_edges(e1) {
            let (a, b) = (net.edge(e1), net.edge(e2));
            let mut inner = match options.exclusion {
                PairExclusion::Edge => h_poly(e1, &|pl| !pl.vars.contains(&(e2 as u32))),
                PairExclusion::Nodes => {
                    let banned: Vec<NodeIdx> = [b.src, b.dst]
                        .into_iter()
                        .filter(|v| *v != a.src && *v != a.dst)
                        .collect();
                    h_poly(e1, &|pl| banned.iter().all(|v| !pl.nodes.contains(v)))
                }
            };
            let other = match options.exclusion {
                PairExclusion::Edge => h_poly(e2, &|pl| !pl.vars.contains(&(e1 as u32))),
                PairExclusion::Nodes => {
                    let banned: Vec<NodeIdx> = [a.src, a.dst]
                        .into_iter()
                        .filter(|v| *v != b.src && *v != b.dst)
                        .collect();
                    h_poly(e2, &|pl| banned.iter().all(|v| !pl.nodes.contains(v)))
                }
            };
            inner.add_scaled(&other, 1.0);
            if inner.is_zero() {
                continue;
            }
            let mut pair = PseudoBooleanPolynomial::zero(r);
            pair.add_term(&[e1 as u32, e2 as u32], 1.0);
            let term = pair.mul(&inner.square());
            check(&term)?;
            node_penalty.add_scaled(&term, penalties.a2);
            check(&node_penalty)?;
        }
    }

    // Variables exist only for present edges, so f_p3 has no terms.
    let non_edge_penalty = PseudoBooleanPolynomial::zero(r);

    let mut total = PseudoBooleanPolynomial::zero(r);
    total.add_scaled(&cost, -1.0);
    total.add_scaled(&edge_penalty, 1.0);
    check(&total)?;
    total.add_scaled(&node_penalty, 1.0);
    check(&total)?;
    total.add_scaled(&non_edge_penalty, penalties.a3);

    Ok(Objective {
        total,
        cost,
        edge_penalty,
        node_penalty,
        non_edge_penalty,
        vars: VariableMap::identity(net),
        penalties,
    })
}

pub fn evaluate(poly: &PseudoBooleanPolynomial, assignment: &[bool]) -> Result<f64> {
    poly.evaluate(assignment)
}

/// Diagonal of the problem Hamiltonian: entry `b` is `f` at the assignment
/// whose bit `k` is variable `k`.
///
/// Computed by a subset-sum transform over the term masks, `O(r·2^r)`.
pub fn objective_table(poly: &PseudoBooleanPolynomial, qubit_cap: usize) -> Result<Vec<f64>> {
    let r = poly.num_vars();
    if r > qubit_cap || r >= usize::BITS as usize - 1 {
        return Err(Error::QubitCapExceeded {
            requested: r,
            cap: qubit_cap,
        });
    }
    let size = 1usize << r;
    let mut table = vec![0.0; size];
    for (vars, coef) in poly.terms() {
        let mask = vars.iter().fold(0usize, |m, &v| m | 1 << v);
        table[mask] += coef;
    }
    for k in 0..r {
        let bit = 1usize << k;
        for b in 0..size {
            if b & bit != 0 {
                table[b] += table[b ^ bit];
            }
        }
    }
    let c = poly.constant();
    if c != 0.0 {
        table.iter_mut().for_each(|v| *v += c);
    }
    Ok(table)
}
