//! Tree decompositions and tree-partitions: validation, width, heuristic
//! construction by elimination orderings, an exact small-instance oracle,
//! and a width-bounded tree-partition construction for bounded-degree
//! graphs of small treewidth.

use crate::graph::{Graph, GraphError, VertexSet};
use crate::layering::bfs_layering_multi;
use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};
use thiserror::Error;

/// Default vertex limit for the exact treewidth oracle.
pub const DEFAULT_EXACT_LIMIT: usize = 14;

#[derive(Debug, Error)]
pub enum TreewidthError {
    #[error("tree field is not a tree")]
    NotATree,
    #[error("tree has {nodes} nodes but {bags} bags/parts")]
    ShapeMismatch { nodes: usize, bags: usize },
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("instance too large for the exact oracle: n = {n}, limit = {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("tree-partition budget exceeded: achieved width {achieved} > budget {budget}")]
    BudgetExceeded { achieved: usize, budget: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Bags indexed by the nodes of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub tree: Graph,
    pub bags: Vec<VertexSet>,
}

impl TreeDecomposition {
    pub fn width(&self) -> isize {
        self.bags
            .iter()
            .map(|b| b.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }
}

/// Disjoint parts indexed by the nodes of a tree; edges of the underlying
/// graph stay within a part or join parts on adjacent tree nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePartition {
    pub tree: Graph,
    pub parts: Vec<VertexSet>,
}

impl TreePartition {
    /// Width = maximum part size.
    pub fn width(&self) -> usize {
        self.parts.iter().map(|p| p.len()).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DecompositionViolation {
    VertexMissing { vertex: usize },
    VertexDisconnected { vertex: usize },
    EdgeUncovered { u: usize, v: usize },
    BagVertexOutOfRange { node: usize, vertex: usize },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct DecompositionReport {
    pub violations: Vec<DecompositionViolation>,
}

impl DecompositionReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A graph is accepted as a tree when it is empty, or connected and acyclic.
pub fn is_tree(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    g.edge_count() == n - 1 && g.connected_components().len() == 1
}

/// Checks the three decomposition axioms: every vertex in a non-empty
/// connected set of tree nodes, and every edge inside some bag.
pub fn validate_tree_decomposition(
    g: &Graph,
    td: &TreeDecomposition,
) -> Result<DecompositionReport, TreewidthError> {
    if !is_tree(&td.tree) {
        return Err(TreewidthError::NotATree);
    }
    if td.tree.n() != td.bags.len() {
        return Err(TreewidthError::ShapeMismatch {
            nodes: td.tree.n(),
            bags: td.bags.len(),
        });
    }
    let n = g.n();
    let mut report = DecompositionReport::default();
    let mut nodes_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (x, bag) in td.bags.iter().enumerate() {
        for v in bag.iter() {
            if v >= n {
                report
                    .violations
                    .push(DecompositionViolation::BagVertexOutOfRange { node: x, vertex: v });
            } else {
                nodes_of[v].push(x);
            }
        }
    }
    for v in 0..n {
        if nodes_of[v].is_empty() {
            report
                .violations
                .push(DecompositionViolation::VertexMissing { vertex: v });
        } else if !subtree_connected(&td.tree, &nodes_of[v]) {
            report
                .violations
                .push(DecompositionViolation::VertexDisconnected { vertex: v });
        }
    }
    for (u, v) in g.edges() {
        let covered = td.bags.iter().any(|bag| bag.contains(u) && bag.contains(v));
        if !covered {
            report
                .violations
                .push(DecompositionViolation::EdgeUncovered { u, v });
        }
    }
    Ok(report)
}

fn subtree_connected(tree: &Graph, nodes: &[usize]) -> bool {
    if nodes.is_empty() {
        return false;
    }
    let inside: BTreeSet<usize> = nodes.iter().copied().collect();
    let mut seen = BTreeSet::from([nodes[0]]);
    let mut queue = VecDeque::from([nodes[0]]);
    while let Some(x) = queue.pop_front() {
        for &y in tree.neighbours(x) {
            if inside.contains(&y) && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.len() == inside.len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TreePartitionViolation {
    VertexMissing {
        vertex: usize,
    },
    VertexDuplicated {
        vertex: usize,
    },
    PartVertexOutOfRange {
        node: usize,
        vertex: usize,
    },
    /// Edge joining parts that are not equal or adjacent in the tree.
    EdgeAcross {
        u: usize,
        v: usize,
        part_u: usize,
        part_v: usize,
    },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct TreePartitionReport {
    pub violations: Vec<TreePartitionViolation>,
}

impl TreePartitionReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that the parts partition the vertex set and that every edge is
/// intra-part or joins adjacent tree nodes.
pub fn validate_tree_partition(
    g: &Graph,
    tp: &TreePartition,
) -> Result<TreePartitionReport, TreewidthError> {
    if !is_tree(&tp.tree) {
        return Err(TreewidthError::NotATree);
    }
    if tp.tree.n() != tp.parts.len() {
        return Err(TreewidthError::ShapeMismatch {
            nodes: tp.tree.n(),
            bags: tp.parts.len(),
        });
    }
    let n = g.n();
    let mut report = TreePartitionReport::default();
    let mut part_of = vec![usize::MAX; n];
    for (x, part) in tp.parts.iter().enumerate() {
        for v in part.iter() {
            if v >= n {
                report
                    .violations
                    .push(TreePartitionViolation::PartVertexOutOfRange { node: x, vertex: v });
            } else if part_of[v] != usize::MAX {
                report
                    .violations
                    .push(TreePartitionViolation::VertexDuplicated { vertex: v });
            } else {
                part_of[v] = x;
            }
        }
    }
    for v in 0..n {
        if part_of[v] == usize::MAX {
            report
                .violations
                .push(TreePartitionViolation::VertexMissing { vertex: v });
        }
    }
    for (u, v) in g.edges() {
        let (pu, pv) = (part_of[u], part_of[v]);
        if pu == usize::MAX || pv == usize::MAX {
            continue;
        }
        if pu != pv && !tp.tree.has_edge(pu, pv) {
            report.violations.push(TreePartitionViolation::EdgeAcross {
                u,
                v,
                part_u: pu,
                part_v: pv,
            });
        }
    }
    Ok(report)
}

/// Vertex-selection rule for heuristic elimination orderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EliminationStrategy {
    /// Eliminate a vertex of minimum current degree.
    MinDegree,
    /// Eliminate a vertex adding the fewest fill edges.
    MinFill,
}

/// Heuristic tree decomposition from a greedy elimination ordering.
/// Deterministic: ties break towards the lowest vertex id. The result is
/// always valid; its width is an upper bound on the treewidth.
pub fn heuristic_tree_decomposition(g: &Graph, strategy: EliminationStrategy) -> TreeDecomposition {
    let n = g.n();
    let mut fill: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbours(v).iter().copied().collect())
        .collect();
    let mut alive: Vec<bool> = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| match strategy {
                EliminationStrategy::MinDegree => (fill[v].len(), v),
                EliminationStrategy::MinFill => (missing_edges(&fill, v), v),
            })
            .unwrap();
        order.push(v);
        let nbrs: Vec<usize> = fill[v].iter().copied().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                fill[a].insert(b);
                fill[b].insert(a);
            }
        }
        for &a in &nbrs {
            fill[a].remove(&v);
        }
        alive[v] = false;
    }
    decomposition_from_order(g, &order)
}

fn missing_edges(fill: &[BTreeSet<usize>], v: usize) -> usize {
    let nbrs: Vec<usize> = fill[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !fill[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

/// Builds the standard elimination-order decomposition: one bag per vertex
/// (the vertex plus its neighbourhood at elimination time), each bag linked
/// to the bag of its earliest-eliminated later neighbour. Component roots
/// are chained so the tree is connected.
fn decomposition_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    debug_assert_eq!(order.len(), n);
    if n == 0 {
        return TreeDecomposition {
            tree: Graph::empty(0),
            bags: Vec::new(),
        };
    }
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut fill: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbours(v).iter().copied().collect())
        .collect();
    let mut bags: Vec<VertexSet> = vec![VertexSet::empty(); n];
    let mut tree_edges: Vec<(usize, usize)> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let nbrs: Vec<usize> = fill[v].iter().copied().collect();
        let mut bag: Vec<usize> = nbrs.clone();
        bag.push(v);
        bags[i] = VertexSet::new(bag);
        match nbrs.iter().map(|&u| position[u]).min() {
            Some(parent) => tree_edges.push((i, parent)),
            None => roots.push(i),
        }
        for (a_idx, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[a_idx + 1..] {
                fill[a].insert(b);
                fill[b].insert(a);
            }
        }
        for &a in &nbrs {
            fill[a].remove(&v);
        }
    }
    for w in roots.windows(2) {
        tree_edges.push((w[0], w[1]));
    }
    let tree = Graph::from_edges(n, tree_edges).expect("elimination tree edges are valid");
    TreeDecomposition { tree, bags }
}

/// Exact treewidth with the default instance limit.
pub fn exact_treewidth(g: &Graph) -> Result<(isize, TreeDecomposition), TreewidthError> {
    exact_treewidth_with_limit(g, DEFAULT_EXACT_LIMIT)
}

/// Exact treewidth via dynamic programming over subsets of eliminated
/// vertices, with a witnessing decomposition recovered from the optimal
/// elimination order. Refuses instances with more than `limit` vertices.
pub fn exact_treewidth_with_limit(
    g: &Graph,
    limit: usize,
) -> Result<(isize, TreeDecomposition), TreewidthError> {
    // hard cap: the DP table has 2^n entries
    let limit = limit.min(26);
    let n = g.n();
    if n > limit {
        return Err(TreewidthError::TooLarge { n, limit });
    }
    if n == 0 {
        return Ok((
            -1,
            TreeDecomposition {
                tree: Graph::empty(0),
                bags: Vec::new(),
            },
        ));
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbours(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    // q(s, v): neighbours outside s ∪ {v} of the component of v in g[s ∪ {v}]
    let q = |s: u32, v: usize| -> u32 {
        let region = s | (1 << v);
        let mut comp: u32 = 1 << v;
        let mut frontier: u32 = 1 << v;
        let mut reach_out: u32 = 0;
        while frontier != 0 {
            let mut next: u32 = 0;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                reach_out |= adj[u] & !region;
                next |= adj[u] & region & !comp;
            }
            comp |= next;
            frontier = next;
        }
        reach_out
    };
    let size = 1usize << n;
    let mut f = vec![u8::MAX; size];
    let mut choice = vec![u8::MAX; size];
    f[0] = 0;
    for s in 1..size as u32 {
        let mut best = u8::MAX;
        let mut best_v = u8::MAX;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let prev = s & !(1 << v);
            let cost = f[prev as usize].max(q(prev, v).count_ones() as u8);
            if cost < best {
                best = cost;
                best_v = v as u8;
            }
        }
        f[s as usize] = best;
        choice[s as usize] = best_v;
    }
    // Recover the elimination order back to front.
    let mut order = vec![0usize; n];
    let mut s = full;
    for i in (0..n).rev() {
        let v = choice[s as usize] as usize;
        order[i] = v;
        s &= !(1 << v);
    }
    let td = decomposition_from_order(g, &order);
    let width = f[full as usize] as isize;
    debug_assert_eq!(td.width(), width);
    Ok((width, td))
}

/// Outcome summary for [`tree_partition_bounded`].
#[derive(Debug, Clone, Serialize)]
pub struct BoundedPartitionReport {
    /// Largest part in the returned partition.
    pub achieved_width: usize,
    /// The enforced budget `20 * k * max(delta, 1)`.
    pub budget: usize,
    pub k: usize,
    pub delta: usize,
    pub strategy: String,
}

/// Builds a tree-partition of `g` with width at most `20 * k * Δ`, where
/// `k` is one more than the width of the supplied decomposition and `Δ` is
/// the maximum degree (clamped to 1). Several constructions are tried and
/// the narrowest valid one wins; exceeding the budget is reported as an
/// error rather than silently returned.
pub fn tree_partition_bounded(
    g: &Graph,
    td: &TreeDecomposition,
) -> Result<(TreePartition, BoundedPartitionReport), TreewidthError> {
    let report = validate_tree_decomposition(g, td)?;
    if !report.is_ok() {
        return Err(TreewidthError::InvalidDecomposition(format!(
            "{:?}",
            report.violations[0]
        )));
    }
    let n = g.n();
    let delta = g.max_degree().max(1);
    let k = ((td.width() + 1).max(1)) as usize;
    let budget = 20 * k * delta;
    if n == 0 {
        return Ok((
            TreePartition {
                tree: Graph::empty(0),
                parts: Vec::new(),
            },
            BoundedPartitionReport {
                achieved_width: 0,
                budget,
                k,
                delta,
                strategy: "empty".into(),
            },
        ));
    }

    let mut best: Option<(TreePartition, &'static str)> = None;
    let consider = |tp: TreePartition,
                    name: &'static str,
                    best: &mut Option<(TreePartition, &'static str)>| {
        if let Ok(rep) = validate_tree_partition(g, &tp) {
            if rep.is_ok() {
                let better = match best {
                    None => true,
                    Some((cur, _)) => tp.width() < cur.width(),
                };
                if better {
                    *best = Some((tp, name));
                }
            }
        }
    };

    if let Some(tp) = forest_partition(g) {
        consider(tp, "forest-singletons", &mut best);
    }
    consider(layer_path_partition(g), "bfs-layers", &mut best);
    consider(chunked_partition(g, td), "decomposition-chunks", &mut best);
    consider(
        TreePartition {
            tree: Graph::empty(1),
            parts: vec![VertexSet::new((0..n).collect())],
        },
        "single-part",
        &mut best,
    );

    let (tp, strategy) = best.expect("at least the single-part candidate is valid");
    let achieved = tp.width();
    if achieved > budget {
        return Err(TreewidthError::BudgetExceeded { achieved, budget });
    }
    Ok((
        tp,
        BoundedPartitionReport {
            achieved_width: achieved,
            budget,
            k,
            delta,
            strategy: strategy.into(),
        },
    ))
}

/// Singleton parts arranged on the graph itself (components chained),
/// available when `g` is acyclic. Width 1.
fn forest_partition(g: &Graph) -> Option<TreePartition> {
    let comps = g.connected_components();
    let n = g.n();
    let tree_edge_target = n.checked_sub(comps.len())?;
    if g.edge_count() != tree_edge_target {
        return None; // has a cycle
    }
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for w in comps.windows(2) {
        edges.push((w[0].first().unwrap(), w[1].first().unwrap()));
    }
    let tree = Graph::from_edges(n, edges).ok()?;
    Some(TreePartition {
        tree,
        parts: (0..n).map(|v| VertexSet::new(vec![v])).collect(),
    })
}

/// BFS layers as parts on a path: a layering is a path-partition.
fn layer_path_partition(g: &Graph) -> TreePartition {
    let layering = bfs_layering_multi(g);
    let parts: Vec<VertexSet> = layering.layers().to_vec();
    let m = parts.len();
    let tree = Graph::from_edges(m, (0..m.saturating_sub(1)).map(|i| (i, i + 1)))
        .expect("path edges are valid");
    TreePartition { tree, parts }
}

/// Cuts the (tightened, rooted) decomposition tree into connected chunks so
/// that no vertex's bag-subtree crosses two cuts, then assigns every vertex
/// to the chunk holding its topmost bag. Cut greedily wherever legal.
fn chunked_partition(g: &Graph, td: &TreeDecomposition) -> TreePartition {
    let (tree, bags) = tighten(td);
    let m = tree.n();
    debug_assert!(m > 0);

    // Root at node 0; preorder with parents.
    let mut parent = vec![usize::MAX; m];
    let mut preorder = Vec::with_capacity(m);
    let mut stack = vec![0usize];
    let mut seen = vec![false; m];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        preorder.push(x);
        for &y in tree.neighbours(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                stack.push(y);
            }
        }
    }

    // Topmost bag of each vertex: first preorder node whose bag contains it.
    let n = g.n();
    let mut top = vec![usize::MAX; n];
    for &x in &preorder {
        for v in bags[x].iter() {
            if top[v] == usize::MAX {
                top[v] = x;
            }
        }
    }

    let mut crossed = vec![false; n];
    let mut chunk = vec![usize::MAX; m];
    let mut chunk_count = 0usize;
    let mut chunk_edges: Vec<(usize, usize)> = Vec::new();
    for &x in &preorder {
        if parent[x] == usize::MAX {
            chunk[x] = chunk_count;
            chunk_count += 1;
            continue;
        }
        let p = parent[x];
        let crossers: Vec<usize> = bags[x].iter().filter(|&v| bags[p].contains(v)).collect();
        if crossers.iter().all(|&v| !crossed[v]) {
            for &v in &crossers {
                crossed[v] = true;
            }
            chunk[x] = chunk_count;
            chunk_edges.push((chunk[p], chunk_count));
            chunk_count += 1;
        } else {
            chunk[x] = chunk[p];
        }
    }

    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); chunk_count];
    for v in 0..n {
        parts[chunk[top[v]]].push(v);
    }
    let tree = Graph::from_edges(chunk_count, chunk_edges).expect("chunk quotient is a tree");
    TreePartition {
        tree,
        parts: parts.into_iter().map(VertexSet::new).collect(),
    }
}

/// Contracts decomposition tree edges whose bags are nested, so persistence
/// along the tree reflects genuine bag changes. Bags never change, only the
/// tree does, so a worklist of edges reaches the fixpoint: merges enqueue
/// the keeper's new incidences.
fn tighten(td: &TreeDecomposition) -> (Graph, Vec<VertexSet>) {
    let m = td.tree.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..m)
        .map(|x| td.tree.neighbours(x).iter().copied().collect())
        .collect();
    let bags: Vec<VertexSet> = td.bags.clone();
    let mut alive = vec![true; m];
    let mut queue: VecDeque<(usize, usize)> = td.tree.edges().collect();
    while let Some((x, y)) = queue.pop_front() {
        if !alive[x] || !alive[y] || !adj[x].contains(&y) {
            continue;
        }
        let (absorbed, keeper) = if subset(&bags[x], &bags[y]) {
            (x, y)
        } else if subset(&bags[y], &bags[x]) {
            (y, x)
        } else {
            continue;
        };
        let nbrs: Vec<usize> = adj[absorbed].iter().copied().collect();
        for w in nbrs {
            adj[w].remove(&absorbed);
            if w != keeper {
                adj[w].insert(keeper);
                adj[keeper].insert(w);
                queue.push_back((keeper, w));
            }
        }
        adj[absorbed].clear();
        alive[absorbed] = false;
    }
    let live: Vec<usize> = (0..m).filter(|&x| alive[x]).collect();
    let mut new_id = vec![usize::MAX; m];
    for (i, &x) in live.iter().enumerate() {
        new_id[x] = i;
    }
    let mut edges = Vec::new();
    for &x in &live {
        for &y in &adj[x] {
            if x < y {
                edges.push((new_id[x], new_id[y]));
            }
        }
    }
    let tree = Graph::from_edges(live.len(), edges).expect("tightened tree is valid");
    let bags = live.into_iter().map(|x| bags[x].clone()).collect();
    (tree, bags)
}

fn subset(a: &VertexSet, b: &VertexSet) -> bool {
    a.iter().all(|v| b.contains(v))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::generators::SplitMix64;

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, edges).unwrap()
    }

    fn grid(rows: usize, cols: usize) -> Graph {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Graph::from_edges(rows * cols, edges).unwrap()
    }

    pub(crate) fn random_graph(n: usize, edge_prob_percent: u64, rng: &mut SplitMix64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.next_below(100) < edge_prob_percent {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn validate_decomposition_cases() {
        let k1 = Graph::empty(1);
        let td = TreeDecomposition {
            tree: Graph::empty(1),
            bags: vec![VertexSet::new(vec![0])],
        };
        assert!(validate_tree_decomposition(&k1, &td).unwrap().is_ok());
        assert_eq!(td.width(), 0);

        let p3 = path(3);
        let td = TreeDecomposition {
            tree: Graph::from_edges(2, [(0, 1)]).unwrap(),
            bags: vec![VertexSet::new(vec![0, 1]), VertexSet::new(vec![1, 2])],
        };
        assert!(validate_tree_decomposition(&p3, &td).unwrap().is_ok());
        assert_eq!(td.width(), 1);

        let with_chord = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let report = validate_tree_decomposition(&with_chord, &td).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, DecompositionViolation::EdgeUncovered { u: 0, v: 2 })));

        // disconnected occurrence set
        let td_bad = TreeDecomposition {
            tree: Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap(),
            bags: vec![
                VertexSet::new(vec![0, 1]),
                VertexSet::new(vec![1, 2]),
                VertexSet::new(vec![0, 2]),
            ],
        };
        let report = validate_tree_decomposition(&p3, &td_bad).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, DecompositionViolation::VertexDisconnected { vertex: 0 })));

        // not a tree
        let td_cycle = TreeDecomposition {
            tree: cycle(3),
            bags: vec![VertexSet::empty(); 3],
        };
        assert!(matches!(
            validate_tree_decomposition(&p3, &td_cycle),
            Err(TreewidthError::NotATree)
        ));
    }

    #[test]
    fn width_cases() {
        let td = TreeDecomposition {
            tree: Graph::empty(1),
            bags: vec![VertexSet::new(vec![0, 1, 2, 3])],
        };
        assert_eq!(td.width(), 3);
        let td = TreeDecomposition {
            tree: Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap(),
            bags: vec![
                VertexSet::new(vec![0, 1]),
                VertexSet::new(vec![1, 2, 3]),
                VertexSet::new(vec![3, 4]),
            ],
        };
        assert_eq!(td.width(), 2);
        let empty = TreeDecomposition {
            tree: Graph::empty(0),
            bags: Vec::new(),
        };
        assert_eq!(empty.width(), -1);
    }

    #[test]
    fn heuristic_cases() {
        for strategy in [EliminationStrategy::MinDegree, EliminationStrategy::MinFill] {
            // trees have width 1
            let star = Graph::from_edges(6, (1..6).map(|v| (0, v))).unwrap();
            let td = heuristic_tree_decomposition(&star, strategy);
            assert!(validate_tree_decomposition(&star, &td).unwrap().is_ok());
            assert_eq!(td.width(), 1);

            let k5 = complete(5);
            let td = heuristic_tree_decomposition(&k5, strategy);
            assert!(validate_tree_decomposition(&k5, &td).unwrap().is_ok());
            assert_eq!(td.width(), 4);

            let c6 = cycle(6);
            let td = heuristic_tree_decomposition(&c6, strategy);
            assert!(validate_tree_decomposition(&c6, &td).unwrap().is_ok());
            assert_eq!(td.width(), 2);
        }
    }

    #[test]
    fn heuristic_handles_disconnected_and_empty() {
        let g = Graph::from_edges(5, [(0, 1), (2, 3)]).unwrap();
        let td = heuristic_tree_decomposition(&g, EliminationStrategy::MinDegree);
        assert!(validate_tree_decomposition(&g, &td).unwrap().is_ok());

        let td = heuristic_tree_decomposition(&Graph::empty(0), EliminationStrategy::MinFill);
        assert_eq!(td.width(), -1);
    }

    #[test]
    fn exact_cases() {
        let (w, td) = exact_treewidth(&complete(4)).unwrap();
        assert_eq!(w, 3);
        assert!(validate_tree_decomposition(&complete(4), &td)
            .unwrap()
            .is_ok());

        let (w, _) = exact_treewidth(&path(5)).unwrap();
        assert_eq!(w, 1);

        let g = grid(3, 3);
        let (w, td) = exact_treewidth(&g).unwrap();
        assert_eq!(w, 3);
        assert!(validate_tree_decomposition(&g, &td).unwrap().is_ok());
        // heuristics cannot undercut the oracle here
        for strategy in [EliminationStrategy::MinDegree, EliminationStrategy::MinFill] {
            assert!(heuristic_tree_decomposition(&g, strategy).width() >= 3);
        }

        let (w, _) = exact_treewidth(&cycle(6)).unwrap();
        assert_eq!(w, 2);

        assert_eq!(exact_treewidth(&Graph::empty(0)).unwrap().0, -1);
        assert!(matches!(
            exact_treewidth(&Graph::empty(20)),
            Err(TreewidthError::TooLarge { n: 20, limit: 14 })
        ));
    }

    #[test]
    fn heuristic_at_least_exact_on_small_graphs() {
        let mut rng = SplitMix64::new(0xce11);
        for round in 0..30 {
            let n = 4 + (round % 7);
            let g = random_graph(n, 35, &mut rng);
            let (exact, _) = exact_treewidth(&g).unwrap();
            for strategy in [EliminationStrategy::MinDegree, EliminationStrategy::MinFill] {
                let td = heuristic_tree_decomposition(&g, strategy);
                assert!(validate_tree_decomposition(&g, &td).unwrap().is_ok());
                assert!(td.width() >= exact);
            }
        }
    }

    #[test]
    fn validate_tree_partition_cases() {
        let p4 = path(4);
        let tp = TreePartition {
            tree: path(4),
            parts: (0..4).map(|v| VertexSet::new(vec![v])).collect(),
        };
        assert!(validate_tree_partition(&p4, &tp).unwrap().is_ok());
        assert_eq!(tp.width(), 1);

        let c4 = cycle(4);
        let tp = TreePartition {
            tree: Graph::from_edges(2, [(0, 1)]).unwrap(),
            parts: vec![VertexSet::new(vec![0, 1]), VertexSet::new(vec![2, 3])],
        };
        assert!(validate_tree_partition(&c4, &tp).unwrap().is_ok());

        // edge between parts at tree distance 2
        let p3 = path(3);
        let tp = TreePartition {
            tree: path(3),
            parts: vec![
                VertexSet::new(vec![0, 2]),
                VertexSet::new(vec![1]),
                VertexSet::empty(),
            ],
        };
        let report = validate_tree_partition(&p3, &tp).unwrap();
        assert!(report.is_ok()); // 0-2 not an edge of P_3; parts 0,1 adjacent

        let tp = TreePartition {
            tree: path(3),
            parts: vec![
                VertexSet::new(vec![0]),
                VertexSet::new(vec![2]),
                VertexSet::new(vec![1]),
            ],
        };
        let report = validate_tree_partition(&p3, &tp).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, TreePartitionViolation::EdgeAcross { u: 0, v: 1, .. })));
    }

    #[test]
    fn tree_partition_bounded_cases() {
        // K_1
        let k1 = Graph::empty(1);
        let td = TreeDecomposition {
            tree: Graph::empty(1),
            bags: vec![VertexSet::new(vec![0])],
        };
        let (tp, rep) = tree_partition_bounded(&k1, &td).unwrap();
        assert!(validate_tree_partition(&k1, &tp).unwrap().is_ok());
        assert_eq!(tp.width(), 1);
        assert_eq!(rep.budget, 20);

        // P_10 with its width-1 decomposition: k = 2, delta = 2, budget 80
        let p10 = path(10);
        let td = heuristic_tree_decomposition(&p10, EliminationStrategy::MinDegree);
        assert_eq!(td.width(), 1);
        let (tp, rep) = tree_partition_bounded(&p10, &td).unwrap();
        assert!(validate_tree_partition(&p10, &tp).unwrap().is_ok());
        assert_eq!(rep.budget, 80);
        assert!(rep.achieved_width <= 2);

        // K_4 with a single bag: budget 240
        let k4 = complete(4);
        let td = TreeDecomposition {
            tree: Graph::empty(1),
            bags: vec![VertexSet::new(vec![0, 1, 2, 3])],
        };
        let (tp, rep) = tree_partition_bounded(&k4, &td).unwrap();
        assert!(validate_tree_partition(&k4, &tp).unwrap().is_ok());
        assert_eq!(rep.budget, 240);
        assert!(tp.width() <= 4);

        // long cycle: persistence defeats chunking, BFS layers win
        let c = cycle(50);
        let td = heuristic_tree_decomposition(&c, EliminationStrategy::MinDegree);
        let (tp, rep) = tree_partition_bounded(&c, &td).unwrap();
        assert!(validate_tree_partition(&c, &tp).unwrap().is_ok());
        assert!(rep.achieved_width <= rep.budget);
        assert!(tp.width() <= 2);
    }

    #[test]
    fn tree_partition_bounded_random_graphs() {
        let mut rng = SplitMix64::new(77);
        for round in 0..20 {
            let n = 8 + (round % 20);
            let g = random_graph(n, 18, &mut rng);
            let td = heuristic_tree_decomposition(&g, EliminationStrategy::MinDegree);
            let (tp, rep) = tree_partition_bounded(&g, &td).unwrap();
            assert!(validate_tree_partition(&g, &tp).unwrap().is_ok());
            assert!(rep.achieved_width <= rep.budget);
        }
    }
}
