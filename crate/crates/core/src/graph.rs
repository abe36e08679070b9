//! Undirected simple graphs on dense 0-based vertex ids, and the structural
//! operations the rest of the crate builds on: components, induced subgraphs,
//! contractions, quotients, strong products and graph powers.

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

/// Default cap on the vertex count of a strong product.
pub const DEFAULT_PRODUCT_LIMIT: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("loop at vertex {0}")]
    LoopEdge(usize),
    #[error("group {0} does not induce a connected subgraph")]
    DisconnectedGroup(usize),
    #[error("vertex {0} appears in more than one group")]
    OverlappingGroups(usize),
    #[error("parts do not partition the vertex set: {0}")]
    NotAPartition(String),
    #[error("product would have {0} vertices, exceeding the limit {1}")]
    ProductTooLarge(usize, usize),
    #[error("graph power requires p >= 1")]
    ZeroPower,
}

/// A sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    /// Wraps a vector that is already sorted and duplicate-free.
    pub fn from_sorted(ids: Vec<usize>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        VertexSet(ids)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        VertexSet::new(v)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let out = self.iter().filter(|&v| other.contains(v)).collect();
        VertexSet(out)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

/// Records how vertices of a source graph map onto a contracted graph.
///
/// `mapping[old] = new` for every source vertex; `groups` lists the
/// contracted sets in the order they were supplied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    pub mapping: Vec<usize>,
    pub groups: Vec<VertexSet>,
}

/// An undirected simple graph. Vertices are `0..n`; adjacency lists are
/// sorted and symmetric, with no loops or parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// An edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Parallel edges are merged; loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        for list in &mut g.adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    /// Structural self-check: sorted symmetric adjacency, no loops, ids in range.
    pub fn validate(&self) -> Result<(), GraphError> {
        let n = self.n();
        for (u, list) in self.adj.iter().enumerate() {
            if !list.windows(2).all(|w| w[0] < w[1]) {
                return Err(GraphError::NotAPartition(format!(
                    "adjacency of {u} not sorted/deduplicated"
                )));
            }
            for &v in list {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange(v, n));
                }
                if v == u {
                    return Err(GraphError::LoopEdge(u));
                }
                if self.adj[v].binary_search(&u).is_err() {
                    return Err(GraphError::NotAPartition(format!(
                        "edge ({u},{v}) not symmetric"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Connected components as sorted sets, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(VertexSet::from_sorted(comp));
        }
        out
    }

    /// The subgraph induced by `s`, relabelled to `0..|s|`, plus the
    /// new-to-old vertex mapping.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        let n = self.n();
        if let Some(v) = s.iter().find(|&v| v >= n) {
            return Err(GraphError::VertexOutOfRange(v, n));
        }
        let new_to_old: Vec<usize> = s.iter().collect();
        let mut old_to_new = vec![usize::MAX; n];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = new;
        }
        let mut g = Graph::empty(new_to_old.len());
        for (new, &old) in new_to_old.iter().enumerate() {
            for &w in &self.adj[old] {
                let nw = old_to_new[w];
                if nw != usize::MAX {
                    g.adj[new].push(nw);
                }
            }
        }
        // neighbour lists inherit sortedness from the monotone relabelling
        Ok((g, new_to_old))
    }

    /// Contracts each group (which must induce a connected subgraph) into a
    /// single vertex; ungrouped vertices are kept. Parallel edges are merged
    /// and loops dropped. New ids are ordered by smallest original member.
    pub fn contract_components(
        &self,
        groups: &[VertexSet],
    ) -> Result<(Graph, ContractionMap), GraphError> {
        let n = self.n();
        let mut group_of = vec![usize::MAX; n];
        for (gi, group) in groups.iter().enumerate() {
            for v in group.iter() {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange(v, n));
                }
                if group_of[v] != usize::MAX {
                    return Err(GraphError::OverlappingGroups(v));
                }
                group_of[v] = gi;
            }
        }
        for (gi, group) in groups.iter().enumerate() {
            if !self.group_connected(group) {
                return Err(GraphError::DisconnectedGroup(gi));
            }
        }
        // Units: each group and each ungrouped vertex, keyed by smallest member.
        let mut units: Vec<(usize, Option<usize>)> = Vec::new();
        for (gi, group) in groups.iter().enumerate() {
            if let Some(rep) = group.first() {
                units.push((rep, Some(gi)));
            }
        }
        for v in 0..n {
            if group_of[v] == usize::MAX {
                units.push((v, None));
            }
        }
        units.sort_unstable();
        let mut mapping = vec![usize::MAX; n];
        for (new, &(rep, gi)) in units.iter().enumerate() {
            match gi {
                Some(gi) => {
                    for v in groups[gi].iter() {
                        mapping[v] = new;
                    }
                }
                None => mapping[rep] = new,
            }
        }
        let mut g = Graph::empty(units.len());
        for (u, v) in self.edges() {
            let (nu, nv) = (mapping[u], mapping[v]);
            if nu != nv {
                g.adj[nu].push(nv);
                g.adj[nv].push(nu);
            }
        }
        for list in &mut g.adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok((
            g,
            ContractionMap {
                mapping,
                groups: groups.to_vec(),
            },
        ))
    }

    fn group_connected(&self, group: &VertexSet) -> bool {
        if group.is_empty() {
            return true;
        }
        let start = group.first().unwrap();
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if group.contains(v) && !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == group.len()
    }

    /// Quotient by a partition: one vertex per part (in the given order),
    /// with an edge whenever some cross edge exists. Parts need not be
    /// connected, but must be non-empty and cover every vertex exactly once.
    pub fn quotient(&self, parts: &[VertexSet]) -> Result<Graph, GraphError> {
        let n = self.n();
        let mut part_of = vec![usize::MAX; n];
        for (pi, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(GraphError::NotAPartition(format!("part {pi} is empty")));
            }
            for v in part.iter() {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange(v, n));
                }
                if part_of[v] != usize::MAX {
                    return Err(GraphError::NotAPartition(format!(
                        "vertex {v} in two parts"
                    )));
                }
                part_of[v] = pi;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(GraphError::NotAPartition(format!("vertex {v} in no part")));
        }
        let mut g = Graph::empty(parts.len());
        for (u, v) in self.edges() {
            let (pu, pv) = (part_of[u], part_of[v]);
            if pu != pv {
                g.adj[pu].push(pv);
                g.adj[pv].push(pu);
            }
        }
        for list in &mut g.adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(g)
    }

    /// Graph power: same vertices, edges between distinct pairs at
    /// distance at most `p`.
    pub fn power(&self, p: usize) -> Result<Graph, GraphError> {
        if p == 0 {
            return Err(GraphError::ZeroPower);
        }
        let n = self.n();
        let mut g = Graph::empty(n);
        let mut dist = vec![usize::MAX; n];
        for v in 0..n {
            // bounded-depth BFS from v
            dist[v] = 0;
            let mut frontier = vec![v];
            let mut touched = vec![v];
            for d in 1..=p {
                let mut next = Vec::new();
                for &u in &frontier {
                    for &w in &self.adj[u] {
                        if dist[w] == usize::MAX {
                            dist[w] = d;
                            touched.push(w);
                            next.push(w);
                        }
                    }
                }
                frontier = next;
                if frontier.is_empty() {
                    break;
                }
            }
            for &w in &touched {
                if w != v {
                    g.adj[v].push(w);
                }
                dist[w] = usize::MAX;
            }
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }
}

/// Strong product with the default vertex-count cap.
pub fn strong_product(a: &Graph, b: &Graph) -> Result<Graph, GraphError> {
    strong_product_with_limit(a, b, DEFAULT_PRODUCT_LIMIT)
}

/// Strong product `a ⊠ b`: vertex `(v, x)` is numbered `v * b.n() + x`;
/// distinct pairs are adjacent when each coordinate is equal or adjacent.
pub fn strong_product_with_limit(a: &Graph, b: &Graph, limit: usize) -> Result<Graph, GraphError> {
    let size = a.n().saturating_mul(b.n());
    if size > limit {
        return Err(GraphError::ProductTooLarge(size, limit));
    }
    let bn = b.n();
    let mut g = Graph::empty(size);
    let push = |p: usize, q: usize, g: &mut Graph| {
        g.adj[p].push(q);
        g.adj[q].push(p);
    };
    for v in 0..a.n() {
        for x in 0..bn {
            let p = v * bn + x;
            // same a-coordinate, adjacent in b
            for &y in b.neighbours(x) {
                if y > x {
                    push(p, v * bn + y, &mut g);
                }
            }
            for &w in a.neighbours(v) {
                if w > v {
                    // adjacent in a, same b-coordinate
                    push(p, w * bn + x, &mut g);
                    // adjacent in both
                    for &y in b.neighbours(x) {
                        push(p, w * bn + y, &mut g);
                    }
                }
            }
        }
    }
    for list in &mut g.adj {
        list.sort_unstable();
        list.dedup();
    }
    Ok(g)
}
