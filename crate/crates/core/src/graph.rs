//! Directed, relation-labelled graphs: regulatory networks and motif patterns.
//!
//! Networks keep their nodes sorted by identifier and their edges sorted by
//! `(src, dst)` node index, so two loads of the same file always produce the
//! same edge indexing. Edge indices double as the variable indices of the
//! pseudo-Boolean model.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeIdx = usize;
pub type EdgeIdx = usize;

/// Regulatory effect carried by an edge.
///
/// `Activation` and `Repression` are the two model labels (0 and 1).
/// `Unknown` only occurs in curated networks, never in motif patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Relation {
    Activation,
    Repression,
    Unknown,
}

impl Relation {
    pub fn tag(self) -> char {
        match self {
            Relation::Activation => 'A',
            Relation::Repression => 'R',
            Relation::Unknown => 'U',
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "A" => Some(Relation::Activation),
            "R" => Some(Relation::Repression),
            "U" => Some(Relation::Unknown),
            _ => None,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// Coefficient `c` for an existing network edge against an existing motif
/// edge: true (1) when the labels agree, or when the network label is
/// `Unknown` and `unknown_is_wildcard` is set.
pub fn relation_match(net_rel: Relation, motif_rel: Relation, unknown_is_wildcard: bool) -> bool {
    debug_assert!(motif_rel != Relation::Unknown);
    net_rel == motif_rel || (unknown_is_wildcard && net_rel == Relation::Unknown)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub src: NodeIdx,
    pub dst: NodeIdx,
    pub relation: Relation,
}

/// A directed regulatory network `G = (V, E, γ)`.
#[derive(Debug, Clone)]
pub struct RegulatoryNetwork {
    name: String,
    nodes: Vec<String>,
    edges: Vec<Edge>,
    out_adj: Vec<Vec<EdgeIdx>>,
    in_adj: Vec<Vec<EdgeIdx>>,
    lookup: HashMap<(NodeIdx, NodeIdx), EdgeIdx>,
}

impl PartialEq for RegulatoryNetwork {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.nodes == other.nodes && self.edges == other.edges
    }
}

impl Eq for RegulatoryNetwork {}

impl RegulatoryNetwork {
    /// Builds a network from named endpoints. Nodes are the union of `nodes`
    /// and all edge endpoints. Self-loops are dropped with a warning;
    /// duplicate `(src, dst)` pairs are rejected.
    pub fn from_named_edges<S: AsRef<str>>(
        name: impl Into<String>,
        nodes: impl IntoIterator<Item = S>,
        edges: &[(String, String, Relation)],
    ) -> Result<Self> {
        let name = name.into();
        let mut node_set: BTreeSet<String> = nodes.into_iter().map(|s| s.as_ref().to_owned()).collect();
        for (s, d, _) in edges {
            node_set.insert(s.clone());
            node_set.insert(d.clone());
        }
        let nodes: Vec<String> = node_set.into_iter().collect();
        let index: HashMap<&str, NodeIdx> = nodes.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();

        let mut seen = BTreeMap::new();
        for (s, d, rel) in edges {
            if s == d {
                log::warn!("{name}: dropping self-loop on {s}");
                continue;
            }
            let key = (index[s.as_str()], index[d.as_str()]);
            if seen.insert(key, *rel).is_some() {
                return Err(Error::DuplicateEdge(s.clone(), d.clone()));
            }
        }
        let edges = seen
            .into_iter()
            .map(|((src, dst), relation)| Edge { src, dst, relation })
            .collect();
        Ok(Self::assemble(name, nodes, edges))
    }

    /// `edges` must already be sorted by `(src, dst)` and free of duplicates
    /// and self-loops.
    fn assemble(name: String, nodes: Vec<String>, edges: Vec<Edge>) -> Self {
        let n = nodes.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut lookup = HashMap::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            out_adj[e.src].push(i);
            in_adj[e.dst].push(i);
            lookup.insert((e.src, e.dst), i);
        }
        Self {
            name,
            nodes,
            edges,
            out_adj,
            in_adj,
            lookup,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node_name(&self, node: NodeIdx) -> &str {
        &self.nodes[node]
    }

    pub fn node_index(&self, name: &str) -> Option<NodeIdx> {
        self.nodes.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: EdgeIdx) -> &Edge {
        &self.edges[idx]
    }

    pub fn edge_between(&self, src: NodeIdx, dst: NodeIdx) -> Option<EdgeIdx> {
        self.lookup.get(&(src, dst)).copied()
    }

    pub fn out_edges(&self, node: NodeIdx) -> &[EdgeIdx] {
        &self.out_adj[node]
    }

    pub fn in_edges(&self, node: NodeIdx) -> &[EdgeIdx] {
        &self.in_adj[node]
    }

    pub fn out_degree(&self, node: NodeIdx) -> usize {
        self.out_adj[node].len()
    }

    pub fn in_degree(&self, node: NodeIdx) -> usize {
        self.in_adj[node].len()
    }

    /// Edges sharing at least one endpoint with `edge`, excluding itself.
    pub fn adjacent_edges(&self, edge: EdgeIdx) -> BTreeSet<EdgeIdx> {
        let e = self.edges[edge];
        [e.src, e.dst]
            .iter()
            .flat_map(|&v| self.out_adj[v].iter().chain(&self.in_adj[v]))
            .copied()
            .filter(|&o| o != edge)
            .collect()
    }

    /// Subgraph induced on `keep`, plus the parent index of every retained edge.
    pub fn induced_subgraph(&self, keep: &BTreeSet<NodeIdx>, name: impl Into<String>) -> (Self, Vec<EdgeIdx>) {
        let nodes: Vec<String> = keep.iter().map(|&v| self.nodes[v].clone()).collect();
        let remap: HashMap<NodeIdx, NodeIdx> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        let mut parents = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if let (Some(&s), Some(&d)) = (remap.get(&e.src), remap.get(&e.dst)) {
                edges.push(Edge {
                    src: s,
                    dst: d,
                    relation: e.relation,
                });
                parents.push(i);
            }
        }
        // Node order is preserved, so the (src, dst) ordering of edges is too.
        (Self::assemble(name.into(), nodes, edges), parents)
    }

    /// Same node set, only the listed edges.
    pub fn edge_subgraph(&self, keep: &BTreeSet<EdgeIdx>) -> (Self, Vec<EdgeIdx>) {
        let parents: Vec<EdgeIdx> = keep.iter().copied().collect();
        let edges = parents.iter().map(|&i| self.edges[i]).collect();
        (Self::assemble(self.name.clone(), self.nodes.clone(), edges), parents)
    }

    /// Replaces the edge set, keeping names and nodes.
    pub fn with_edges(&self, mut edges: Vec<Edge>) -> Self {
        edges.sort_by_key(|e| (e.src, e.dst));
        Self::assemble(self.name.clone(), self.nodes.clone(), edges)
    }

    /// Weakly-connected components, each sorted, ordered by smallest member.
    pub fn weak_components(&self) -> Vec<BTreeSet<NodeIdx>> {
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        for start in 0..self.nodes.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for w in self.neighbours(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Undirected neighbours in ascending order.
    pub fn neighbours(&self, v: NodeIdx) -> Vec<NodeIdx> {
        let mut ns: Vec<NodeIdx> = self.out_adj[v]
            .iter()
            .map(|&e| self.edges[e].dst)
            .chain(self.in_adj[v].iter().map(|&e| self.edges[e].src))
            .collect();
        ns.sort_unstable();
        ns.dedup();
        ns
    }

    /// Canonical edge-list text: one `src<TAB>dst<TAB>rel` line per edge in index order.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for e in &self.edges {
            s.push_str(&self.nodes[e.src]);
            s.push('\t');
            s.push_str(&self.nodes[e.dst]);
            s.push('\t');
            s.push(e.relation.tag());
            s.push('\n');
        }
        s
    }

    pub fn parse_tsv(name: impl Into<String>, text: &str, path: &Path) -> Result<Self> {
        let edges = parse_edge_list(text, path)?;
        Self::from_named_edges(name, std::iter::empty::<&str>(), &edges)
    }
}

/// Reads the shared `src<TAB>dst<TAB>relation` format. `#` lines and blank
/// lines are skipped.
pub fn parse_edge_list(text: &str, path: &Path) -> Result<Vec<(String, String, Relation)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::parse(
                path,
                i + 1,
                format!("expected 3 tab-separated fields, found {}", fields.len()),
            ));
        }
        let (s, d, r) = (fields[0].trim(), fields[1].trim(), fields[2].trim());
        if s.is_empty() || d.is_empty() {
            return Err(Error::parse(path, i + 1, "empty node identifier"));
        }
        let rel = Relation::from_tag(r)
            .ok_or_else(|| Error::parse(path, i + 1, format!("relation must be A, R or U, found '{r}'")))?;
        out.push((s.to_owned(), d.to_owned(), rel));
    }
    Ok(out)
}

/// Edge of a motif pattern, endpoints are 0-based motif node indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MotifEdge {
    pub a: usize,
    pub b: usize,
    pub relation: Relation,
}

/// A small connected directed motif `M = (V', E', γ')`.
///
/// Nodes are stored 0-based; text and reports show them 1-based. After
/// [`canonicalize_motif`] the edge `0 -> 1` is always present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotifPattern {
    name: String,
    size: usize,
    edges: Vec<MotifEdge>,
}

impl MotifPattern {
    /// Validates size, connectivity, labels and simple-graph structure.
    /// Does not relabel; see [`canonicalize_motif`].
    pub fn new(name: impl Into<String>, size: usize, mut edges: Vec<MotifEdge>) -> Result<Self> {
        if size < 3 {
            return Err(Error::MotifTooSmall(size));
        }
        let mut seen = BTreeSet::new();
        for e in &edges {
            if e.relation == Relation::Unknown {
                return Err(Error::UnknownInMotif);
            }
            if e.a >= size || e.b >= size || e.a == e.b {
                return Err(Error::InvalidConfig(format!(
                    "bad motif edge {} -> {}",
                    e.a + 1,
                    e.b + 1
                )));
            }
            if !seen.insert((e.a, e.b)) {
                return Err(Error::DuplicateEdge((e.a + 1).to_string(), (e.b + 1).to_string()));
            }
        }
        edges.sort();
        let motif = Self {
            name: name.into(),
            size,
            edges,
        };
        if !motif.is_connected() {
            return Err(Error::DisconnectedMotif);
        }
        Ok(motif)
    }

    pub fn from_named_edges(name: impl Into<String>, edges: &[(String, String, Relation)]) -> Result<Self> {
        let names: BTreeSet<&str> = edges.iter().flat_map(|(s, d, _)| [s.as_str(), d.as_str()]).collect();
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let medges = edges
            .iter()
            .map(|(s, d, r)| MotifEdge {
                a: index[s.as_str()],
                b: index[d.as_str()],
                relation: *r,
            })
            .collect();
        Self::new(name, names.len(), medges)
    }

    pub fn parse_tsv(name: impl Into<String>, text: &str, path: &Path) -> Result<Self> {
        let edges = parse_edge_list(text, path)?;
        canonicalize_motif(&Self::from_named_edges(name, &edges)?)
    }

    pub fn to_tsv(&self) -> String {
        self.edges
            .iter()
            .map(|e| format!("{}\t{}\t{}\n", e.a + 1, e.b + 1, e.relation))
            .collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn edges(&self) -> &[MotifEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Index of the edge joining motif nodes 0 and 1, if any.
    pub fn anchor_edge(&self) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| (e.a == 0 && e.b == 1) || (e.a == 1 && e.b == 0))
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.size];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                let w = if e.a == v {
                    e.b
                } else if e.b == v {
                    e.a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn relation_between(&self, a: usize, b: usize) -> Option<Relation> {
        self.edges.iter().find(|e| e.a == a && e.b == b).map(|e| e.relation)
    }
}

const MAX_CANON_NODES: usize = 9;

/// Relabels motif nodes so that nodes 1 and 2 are joined by an edge.
///
/// Among all relabelings with an edge between the first two nodes, picks the
/// one whose row-major adjacency code is lexicographically least, where a
/// pair scores 0 for Activation, 1 for Repression and 2 for no edge.
pub fn canonicalize_motif(raw: &MotifPattern) -> Result<MotifPattern> {
    let n = raw.size;
    if n < 3 {
        return Err(Error::MotifTooSmall(n));
    }
    if !raw.is_connected() {
        return Err(Error::DisconnectedMotif);
    }
    if n > MAX_CANON_NODES {
        return Err(Error::MotifTooLarge(n));
    }
    let mut matrix = vec![2u8; n * n];
    for e in &raw.edges {
        matrix[e.a * n + e.b] = match e.relation {
            Relation::Activation => 0,
            Relation::Repression => 1,
            Relation::Unknown => return Err(Error::UnknownInMotif),
        };
    }

    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    let mut order: Vec<usize> = (0..n).collect();
    permute(&mut order, 0, &mut |order| {
        if matrix[order[0] * n + order[1]] == 2 && matrix[order[1] * n + order[0]] == 2 {
            return;
        }
        let code: Vec<u8> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| matrix[order[i] * n + order[j]])
            .collect();
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            best = Some((code, order.to_vec()));
        }
    });
    let (_, order) = best.expect("connected motif with >= 3 nodes has an edge");
    let mut new_label = vec![0; n];
    for (pos, &old) in order.iter().enumerate() {
        new_label[old] = pos;
    }
    let edges = raw
        .edges
        .iter()
        .map(|e| MotifEdge {
            a: new_label[e.a],
            b: new_label[e.b],
            relation: e.relation,
        })
        .collect();
    MotifPattern::new(raw.name.clone(), n, edges)
}

fn permute(order: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == order.len() {
        visit(order);
        return;
    }
    for i in k..order.len() {
        order.swap(k, i);
        permute(order, k + 1, visit);
        order.swap(k, i);
    }
}

pub const BUILTIN_MOTIF_NAMES: [&str; 4] = ["cascade", "ffl", "bifan", "biparallel"];

/// The four regulatory motifs used for the synthetic benchmarks, in
/// canonical labelling.
///
/// * cascade: activating three-node cycle 1→2→3→1.
/// * ffl: incoherent feed-forward loop, 1 activates 2 and 3, 2 represses 3.
/// * bifan: sources 1 and 4 each activate 2 and repress 3.
/// * biparallel: diamond with an activating path 1→2→4 and a repressing path 1→3→4.
pub fn builtin_motifs() -> Vec<MotifPattern> {
    use Relation::{Activation as A, Repression as R};
    type Spec<'a> = (&'a str, usize, &'a [(usize, usize, Relation)]);
    let spec: [Spec; 4] = [
        ("cascade", 3, &[(1, 2, A), (2, 3, A), (3, 1, A)]),
        ("ffl", 3, &[(1, 2, A), (1, 3, A), (2, 3, R)]),
        ("bifan", 4, &[(1, 2, A), (1, 3, R), (4, 2, A), (4, 3, R)]),
        ("biparallel", 4, &[(1, 2, A), (1, 3, R), (2, 4, A), (3, 4, R)]),
    ];
    spec.iter()
        .map(|(name, size, edges)| {
            let edges = edges
                .iter()
                .map(|&(a, b, relation)| MotifEdge {
                    a: a - 1,
                    b: b - 1,
                    relation,
                })
                .collect();
            MotifPattern::new(*name, *size, edges).expect("builtin motif is valid")
        })
        .collect()
}

pub fn builtin_motif(name: &str) -> Option<MotifPattern> {
    let key = name.to_ascii_lowercase();
    builtin_motifs().into_iter().find(|m| m.name == key)
}

impl MotifPattern {
    /// True when `a -> b` in the motif carries `rel` (used by oracles and tests).
    pub fn has_edge(&self, a: usize, b: usize, rel: Relation) -> bool {
        self.relation_between(a, b) == Some(rel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(edges: &[(&str, &str, Relation)]) -> Vec<(String, String, Relation)> {
        edges
            .iter()
            .map(|(s, d, r)| (s.to_string(), d.to_string(), *r))
            .collect()
    }

    #[test]
    fn relation_match_table() {
        use Relation::*;
        assert!(relation_match(Activation, Activation, false));
        assert!(!relation_match(Activation, Repression, false));
        assert!(relation_match(Unknown, Repression, true));
        assert!(!relation_match(Unknown, Repression, false));
        for a in [Activation, Repression] {
            for b in [Activation, Repression] {
                assert_eq!(relation_match(a, b, false), relation_match(b, a, false));
            }
        }
    }

    #[test]
    fn builtin_shapes() {
        let m = builtin_motifs();
        let sizes: Vec<(usize, usize)> = m.iter().map(|m| (m.size(), m.edge_count())).collect();
        assert_eq!(sizes, vec![(3, 3), (3, 3), (4, 4), (4, 4)]);
        for motif in &m {
            assert!(motif.anchor_edge().is_some());
            assert_eq!(
                &canonicalize_motif(motif).unwrap(),
                motif,
                "{} not canonical",
                motif.name()
            );
        }
    }

    #[test]
    fn builtins_roundtrip_through_text() {
        for motif in builtin_motifs() {
            let text = motif.to_tsv();
            let back = MotifPattern::parse_tsv(motif.name(), &text, Path::new("mem")).unwrap();
            assert_eq!(back, motif);
            assert_eq!(back.to_tsv(), text);
        }
    }

    #[test]
    fn canonicalize_places_edge_between_first_nodes() {
        use Relation::*;
        // FFL with the intermediate node labelled first.
        let raw = MotifPattern::from_named_edges(
            "ffl",
            &named(&[("x", "y", Activation), ("x", "z", Activation), ("y", "z", Repression)]),
        )
        .unwrap();
        let canon = canonicalize_motif(&raw).unwrap();
        assert!(canon.anchor_edge().is_some());
        assert_eq!(canon, builtin_motif("ffl").unwrap());

        let relabelled = MotifPattern::from_named_edges(
            "ffl",
            &named(&[("c", "a", Activation), ("c", "b", Activation), ("a", "b", Repression)]),
        )
        .unwrap();
        assert_eq!(canonicalize_motif(&relabelled).unwrap(), canon);
    }

    #[test]
    fn canonicalize_rejects_bad_motifs() {
        use Relation::*;
        let two = MotifPattern {
            name: "pair".into(),
            size: 2,
            edges: vec![MotifEdge {
                a: 0,
                b: 1,
                relation: Activation,
            }],
        };
        assert!(matches!(canonicalize_motif(&two), Err(Error::MotifTooSmall(2))));
        let split = MotifPattern::new(
            "split",
            4,
            vec![
                MotifEdge {
                    a: 0,
                    b: 1,
                    relation: Activation,
                },
                MotifEdge {
                    a: 2,
                    b: 3,
                    relation: Activation,
                },
            ],
        );
        assert!(matches!(split, Err(Error::DisconnectedMotif)));
        let unknown = MotifPattern::from_named_edges("u", &named(&[("a", "b", Unknown), ("b", "c", Activation)]));
        assert!(matches!(unknown, Err(Error::UnknownInMotif)));
    }

    #[test]
    fn network_indexing_is_sorted_and_stable() {
        use Relation::*;
        let text = "# comment\nb\ta\tA\na\tc\tR\nc\tc\tA\na\tb\tU\n";
        let net = RegulatoryNetwork::parse_tsv("n", text, Path::new("mem")).unwrap();
        assert_eq!(net.nodes(), ["a", "b", "c"]);
        assert_eq!(net.edge_count(), 3, "self-loop dropped");
        assert_eq!(net.to_tsv(), "a\tb\tU\na\tc\tR\nb\ta\tA\n");
        let again = RegulatoryNetwork::parse_tsv("n", text, Path::new("mem")).unwrap();
        assert_eq!(net, again);
        assert_eq!(net.edge_between(1, 0), Some(2));
        assert_eq!(net.edge(1).relation, Repression);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = RegulatoryNetwork::parse_tsv("n", "a\tb\tA\na\tb\n", Path::new("f.tsv")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = RegulatoryNetwork::parse_tsv("n", "a\tb\tX\n", Path::new("f.tsv")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = RegulatoryNetwork::parse_tsv("n", "a\tb\tA\na\tb\tR\n", Path::new("f.tsv")).unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge(..)));
    }

    #[test]
    fn components_and_subgraphs() {
        use Relation::*;
        let net = RegulatoryNetwork::from_named_edges(
            "n",
            ["z"],
            &named(&[("a", "b", Activation), ("b", "c", Activation), ("d", "e", Repression)]),
        )
        .unwrap();
        let comps = net.weak_components();
        assert_eq!(comps.len(), 3);
        let (sub, parents) = net.induced_subgraph(&comps[0], "sub");
        assert_eq!(sub.edge_count(), 2);
        assert_eq!(parents, vec![0, 1]);
        assert_eq!(net.adjacent_edges(0), BTreeSet::from([1]));
    }
}
