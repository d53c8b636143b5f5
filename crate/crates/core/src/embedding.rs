//! Motif embeddings: enumeration, edge-decomposition checks and conflicts.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{relation_match, EdgeIdx, MotifPattern, NodeIdx, RegulatoryNetwork};

/// An edge set `Λ ⊆ E` whose edge-induced subgraph is label-isomorphic to the motif.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Embedding {
    /// Sorted network edge indices, one per motif edge.
    pub edge_ids: Vec<EdgeIdx>,
    /// Sorted endpoint set.
    pub node_ids: Vec<NodeIdx>,
    /// `mapping[k]` is the network node playing motif node `k`.
    pub mapping: Vec<NodeIdx>,
}

impl Embedding {
    fn from_mapping(net: &RegulatoryNetwork, motif: &MotifPattern, mapping: Vec<NodeIdx>) -> Self {
        let mut edge_ids: Vec<EdgeIdx> = motif
            .edges()
            .iter()
            .map(|e| {
                net.edge_between(mapping[e.a], mapping[e.b])
                    .expect("mapping only produced for present edges")
            })
            .collect();
        edge_ids.sort_unstable();
        let mut node_ids = mapping.clone();
        node_ids.sort_unstable();
        Self {
            edge_ids,
            node_ids,
            mapping,
        }
    }

    pub fn shares_node(&self, other: &Embedding) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.node_ids.len() && j < other.node_ids.len() {
            match self.node_ids[i].cmp(&other.node_ids[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingSet {
    pub embeddings: Vec<Embedding>,
    pub network_ref: String,
}

impl EmbeddingSet {
    pub fn new(network_ref: impl Into<String>, embeddings: Vec<Embedding>) -> Self {
        Self {
            embeddings,
            network_ref: network_ref.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.embeddings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.embeddings.is_empty()
    }

    pub fn is_non_overlapping(&self) -> bool {
        let mut used = BTreeSet::new();
        self.embeddings
            .iter()
            .flat_map(|e| &e.node_ids)
            .all(|&v| used.insert(v))
    }

    /// `φ(W)`: union of member edge sets.
    pub fn edge_union(&self) -> BTreeSet<EdgeIdx> {
        self.embeddings
            .iter()
            .flat_map(|e| e.edge_ids.iter().copied())
            .collect()
    }
}

/// Backtracking label-respecting matcher.
///
/// Maps one motif edge onto a fixed network edge, then extends over the
/// remaining motif nodes in BFS order, pruning on adjacency, labels,
/// injectivity and the optional edge/node filters.
pub(crate) struct Matcher<'a> {
    net: &'a RegulatoryNetwork,
    motif: &'a MotifPattern,
    wildcard: bool,
    allowed_edges: Option<&'a [bool]>,
    banned_nodes: Option<&'a [bool]>,
}

impl<'a> Matcher<'a> {
    pub(crate) fn new(net: &'a RegulatoryNetwork, motif: &'a MotifPattern, wildcard: bool) -> Self {
        Self {
            net,
            motif,
            wildcard,
            allowed_edges: None,
            banned_nodes: None,
        }
    }

    pub(crate) fn allowed_edges(mut self, mask: &'a [bool]) -> Self {
        self.allowed_edges = Some(mask);
        self
    }

    pub(crate) fn banned_nodes(mut self, mask: &'a [bool]) -> Self {
        self.banned_nodes = Some(mask);
        self
    }

    fn edge_ok(&self, edge: EdgeIdx, motif_edge: usize) -> bool {
        if self.allowed_edges.is_some_and(|m| !m[edge]) {
            return false;
        }
        relation_match(
            self.net.edge(edge).relation,
            self.motif.edges()[motif_edge].relation,
            self.wildcard,
        )
    }

    fn node_ok(&self, v: NodeIdx) -> bool {
        self.banned_nodes.is_none_or(|m| !m[v])
    }

    /// Calls `visit` with every injective, label-consistent mapping that sends
    /// motif edge `motif_edge` onto network edge `net_edge`.
    pub(crate) fn for_each_mapping(&self, motif_edge: usize, net_edge: EdgeIdx, visit: &mut impl FnMut(&[NodeIdx])) {
        if !self.edge_ok(net_edge, motif_edge) {
            return;
        }
        let me = self.motif.edges()[motif_edge];
        let ne = *self.net.edge(net_edge);
        if !self.node_ok(ne.src) || !self.node_ok(ne.dst) {
            return;
        }
        let n = self.motif.size();
        let order = self.extension_order(me.a, me.b);
        let mut mapping = vec![usize::MAX; n];
        mapping[me.a] = ne.src;
        mapping[me.b] = ne.dst;
        // Other motif edges between the anchor endpoints (a 2-cycle) must hold too.
        if !self.closing_edges_ok(me.b, &mapping, Some(motif_edge)) {
            return;
        }
        self.extend(&order, 0, &mut mapping, visit);
    }

    /// Motif nodes other than the anchor endpoints, in BFS order.
    fn extension_order(&self, a: usize, b: usize) -> Vec<usize> {
        let n = self.motif.size();
        let mut placed = vec![false; n];
        placed[a] = true;
        placed[b] = true;
        let mut order = Vec::with_capacity(n - 2);
        let mut frontier = vec![a, b];
        while let Some(v) = frontier.first().copied() {
            frontier.remove(0);
            for e in self.motif.edges() {
                let w = if e.a == v {
                    e.b
                } else if e.b == v {
                    e.a
                } else {
                    continue;
                };
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                    frontier.push(w);
                }
            }
        }
        order
    }

    fn extend(&self, order: &[usize], depth: usize, mapping: &mut Vec<NodeIdx>, visit: &mut impl FnMut(&[NodeIdx])) {
        if depth == order.len() {
            visit(mapping);
            return;
        }
        let u = order[depth];
        // Any motif edge linking u to an already-mapped node yields the candidates.
        let (k, link) = self
            .motif
            .edges()
            .iter()
            .enumerate()
            .find(|(_, e)| (e.a == u && mapping[e.b] != usize::MAX) || (e.b == u && mapping[e.a] != usize::MAX))
            .expect("BFS order guarantees a mapped neighbour");
        let candidates: Vec<NodeIdx> = if link.a == u {
            self.net
                .in_edges(mapping[link.b])
                .iter()
                .filter(|&&ei| self.edge_ok(ei, k))
                .map(|&ei| self.net.edge(ei).src)
                .collect()
        } else {
            self.net
                .out_edges(mapping[link.a])
                .iter()
                .filter(|&&ei| self.edge_ok(ei, k))
                .map(|&ei| self.net.edge(ei).dst)
                .collect()
        };
        for v in candidates {
            if !self.node_ok(v) || mapping.contains(&v) {
                continue;
            }
            mapping[u] = v;
            if self.closing_edges_ok(u, mapping, None) {
                self.extend(order, depth + 1, mapping, visit);
            }
            mapping[u] = usize::MAX;
        }
    }

    /// Every motif edge between `u` and a mapped node must exist in the network
    /// with a matching label.
    fn closing_edges_ok(&self, u: usize, mapping: &[NodeIdx], skip: Option<usize>) -> bool {
        self.motif.edges().iter().enumerate().all(|(k, e)| {
            if Some(k) == skip || (e.a != u && e.b != u) {
                return true;
            }
            let (s, d) = (mapping[e.a], mapping[e.b]);
            if s == usize::MAX || d == usize::MAX {
                return true;
            }
            self.net.edge_between(s, d).is_some_and(|ei| self.edge_ok(ei, k))
        })
    }

    /// Distinct embeddings (by edge set) containing `net_edge`, in edge-set order.
    pub(crate) fn embeddings_through(&self, net_edge: EdgeIdx) -> Vec<Embedding> {
        let mut found: BTreeMap<Vec<EdgeIdx>, Embedding> = BTreeMap::new();
        for k in 0..self.motif.edge_count() {
            self.for_each_mapping(k, net_edge, &mut |m| {
                insert_least(&mut found, Embedding::from_mapping(self.net, self.motif, m.to_vec()));
            });
        }
        found.into_values().collect()
    }

    /// All distinct embeddings whose edges pass the filters.
    pub(crate) fn all_embeddings(&self, seeds: impl IntoIterator<Item = EdgeIdx>) -> Vec<Embedding> {
        let mut found: BTreeMap<Vec<EdgeIdx>, Embedding> = BTreeMap::new();
        for e in seeds {
            self.for_each_mapping(0, e, &mut |m| {
                insert_least(&mut found, Embedding::from_mapping(self.net, self.motif, m.to_vec()));
            });
        }
        found.into_values().collect()
    }
}

fn insert_least(found: &mut BTreeMap<Vec<EdgeIdx>, Embedding>, emb: Embedding) {
    match found.get(&emb.edge_ids) {
        Some(existing) if existing.mapping <= emb.mapping => {}
        _ => {
            found.insert(emb.edge_ids.clone(), emb);
        }
    }
}

/// Every distinct embedding of `motif` in `net`, sorted by edge set.
///
/// Automorphic re-mappings of one edge set are collapsed; the stored mapping
/// is the lexicographically least one.
pub fn enumerate_embeddings(net: &RegulatoryNetwork, motif: &MotifPattern, wildcard: bool) -> EmbeddingSet {
    let per_seed: Vec<Vec<Embedding>> = (0..net.edge_count())
        .into_par_iter()
        .map(|e| {
            let mut out = Vec::new();
            Matcher::new(net, motif, wildcard).for_each_mapping(0, e, &mut |m| {
                out.push(Embedding::from_mapping(net, motif, m.to_vec()));
            });
            out
        })
        .collect();
    let mut found = BTreeMap::new();
    for emb in per_seed.into_iter().flatten() {
        insert_least(&mut found, emb);
    }
    EmbeddingSet::new(net.name(), found.into_values().collect())
}

/// Embeddings lying wholly inside `edges`.
pub fn embeddings_within(
    net: &RegulatoryNetwork,
    motif: &MotifPattern,
    wildcard: bool,
    edges: &BTreeSet<EdgeIdx>,
) -> Vec<Embedding> {
    let mask = edge_mask(net, edges);
    Matcher::new(net, motif, wildcard)
        .allowed_edges(&mask)
        .all_embeddings(edges.iter().copied().filter(|&e| e < net.edge_count()))
}

fn edge_mask(net: &RegulatoryNetwork, edges: &BTreeSet<EdgeIdx>) -> Vec<bool> {
    let mut mask = vec![false; net.edge_count()];
    for &e in edges {
        if e < mask.len() {
            mask[e] = true;
        }
    }
    mask
}

/// Why an edge set is not the edge decomposition of a non-overlapping set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// The index is not an edge of the network.
    NotAnEdge(EdgeIdx),
    /// No complete embedding among the unconsumed edges contains this edge.
    NoWitness(EdgeIdx),
    /// Two peeled embeddings touch the same network node.
    Overlap { node: NodeIdx, first: usize, second: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Feasible(EmbeddingSet),
    Infeasible(Violation),
}

impl Decomposition {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Decomposition::Feasible(_))
    }

    pub fn witness(&self) -> Option<&EmbeddingSet> {
        match self {
            Decomposition::Feasible(w) => Some(w),
            Decomposition::Infeasible(_) => None,
        }
    }
}

/// Decides whether `edge_subset` equals `φ(W)` for some non-overlapping `W`
/// and recovers that `W`.
///
/// Peels embeddings one at a time: the group containing the smallest
/// unconsumed edge, taking the least edge set among the candidates. The set
/// is feasible iff peeling consumes every edge and the groups are pairwise
/// node-disjoint.
pub fn verify_edge_decomposition(
    net: &RegulatoryNetwork,
    motif: &MotifPattern,
    wildcard: bool,
    edge_subset: &BTreeSet<EdgeIdx>,
) -> Decomposition {
    if let Some(&bad) = edge_subset.iter().find(|&&e| e >= net.edge_count()) {
        return Decomposition::Infeasible(Violation::NotAnEdge(bad));
    }
    let mut mask = edge_mask(net, edge_subset);
    let mut remaining = edge_subset.clone();
    let mut groups: Vec<Embedding> = Vec::new();
    while let Some(&first) = remaining.iter().next() {
        let witness = Matcher::new(net, motif, wildcard)
            .allowed_edges(&mask)
            .embeddings_through(first)
            .into_iter()
            .next();
        let Some(witness) = witness else {
            return Decomposition::Infeasible(Violation::NoWitness(first));
        };
        for &e in &witness.edge_ids {
            remaining.remove(&e);
            mask[e] = false;
        }
        groups.push(witness);
    }
    let mut owner: BTreeMap<NodeIdx, usize> = BTreeMap::new();
    for (g, emb) in groups.iter().enumerate() {
        for &v in &emb.node_ids {
            if let Some(&prev) = owner.get(&v) {
                return Decomposition::Infeasible(Violation::Overlap {
                    node: v,
                    first: prev,
                    second: g,
                });
            }
            owner.insert(v, g);
        }
    }
    Decomposition::Feasible(EmbeddingSet::new(net.name(), groups))
}

/// Shrinks an arbitrary edge selection to a feasible one: embeddings inside
/// the selection are taken in edge-set order whenever they are node-disjoint
/// from those already taken; the union of the taken embeddings is returned.
pub fn repair_to_feasible(
    net: &RegulatoryNetwork,
    motif: &MotifPattern,
    wildcard: bool,
    edge_subset: &BTreeSet<EdgeIdx>,
) -> BTreeSet<EdgeIdx> {
    let mut used = BTreeSet::new();
    let mut out = BTreeSet::new();
    for emb in embeddings_within(net, motif, wildcard, edge_subset) {
        if emb.node_ids.iter().any(|v| used.contains(v)) {
            continue;
        }
        used.extend(emb.node_ids.iter().copied());
        out.extend(emb.edge_ids.iter().copied());
    }
    out
}

/// Undirected conflict graph over candidate embeddings: two candidates
/// conflict when they share a network node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    adjacency: Vec<Vec<usize>>,
}

impl ConflictGraph {
    pub fn from_adjacency(mut adjacency: Vec<Vec<usize>>) -> Self {
        let n = adjacency.len();
        let mut sym = vec![BTreeSet::new(); n];
        for (v, ns) in adjacency.iter_mut().enumerate() {
            for &w in ns.iter() {
                if w != v && w < n {
                    sym[v].insert(w);
                    sym[w].insert(v);
                }
            }
        }
        Self {
            adjacency: sym.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn conflicts(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

pub fn build_conflict_graph(embs: &EmbeddingSet) -> ConflictGraph {
    let mut by_node: BTreeMap<NodeIdx, Vec<usize>> = BTreeMap::new();
    for (i, e) in embs.embeddings.iter().enumerate() {
        for &v in &e.node_ids {
            by_node.entry(v).or_default().push(i);
        }
    }
    let mut adjacency = vec![BTreeSet::new(); embs.len()];
    for members in by_node.values() {
        for (x, &a) in members.iter().enumerate() {
            for &b in &members[x + 1..] {
                adjacency[a].insert(b);
                adjacency[b].insert(a);
            }
        }
    }
    ConflictGraph {
        adjacency: adjacency.into_iter().map(|s| s.into_iter().collect()).collect(),
    }
}
