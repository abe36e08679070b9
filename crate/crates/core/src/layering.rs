//! Layerings: ordered partitions `(V_0, V_1, ...)` of a graph's vertices in
//! which every edge joins the same or consecutive layers. Empty layers are
//! representable and preserved; layer indices are semantic.

use crate::graph::{Graph, VertexSet};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LayeringError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("graph is disconnected; use bfs_layering_multi")]
    Disconnected,
    #[error("coarsening factor must be >= 1")]
    ZeroFactor,
    #[error("hit_layers must be a non-empty set of valid layer indices")]
    BadHitLayers,
}

/// An ordered list of disjoint vertex sets covering the whole graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layering {
    layers: Vec<VertexSet>,
}

static EMPTY: &[usize] = &[];

impl Layering {
    pub fn new(layers: Vec<VertexSet>) -> Self {
        Layering { layers }
    }

    pub fn layers(&self) -> &[VertexSet] {
        &self.layers
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Layer `i`, or the empty set when `i` is out of range.
    pub fn layer(&self, i: usize) -> &[usize] {
        self.layers.get(i).map(|s| s.as_slice()).unwrap_or(EMPTY)
    }

    /// `layer_of[v] = Some(i)` for each vertex assigned to exactly one layer.
    /// Vertices in no layer map to `None`; duplicates keep the first index.
    pub fn index_map(&self, n: usize) -> Vec<Option<usize>> {
        let mut map = vec![None; n];
        for (i, layer) in self.layers.iter().enumerate() {
            for v in layer.iter() {
                if v < n && map[v].is_none() {
                    map[v] = Some(i);
                }
            }
        }
        map
    }

    /// Union of layers `i..i+w`, with out-of-range indices treated as empty.
    pub fn band(&self, i: usize, w: usize) -> VertexSet {
        let mut out = Vec::new();
        for j in i..i.saturating_add(w) {
            out.extend(self.layer(j).iter().copied());
        }
        VertexSet::new(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LayeringViolation {
    /// Vertex assigned to no layer.
    Uncovered { vertex: usize },
    /// Vertex assigned to two layers.
    Duplicated {
        vertex: usize,
        first: usize,
        second: usize,
    },
    /// Layer contains an id that is not a vertex of the graph.
    OutOfRange { vertex: usize, layer: usize },
    /// Edge spanning non-consecutive layers.
    EdgeSpan {
        u: usize,
        v: usize,
        layer_u: usize,
        layer_v: usize,
    },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct LayeringReport {
    pub violations: Vec<LayeringViolation>,
}

impl LayeringReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks disjointness, coverage, and the consecutive-layer edge condition.
/// Violations are data, not errors.
pub fn validate_layering(g: &Graph, l: &Layering) -> LayeringReport {
    let n = g.n();
    let mut report = LayeringReport::default();
    let mut first = vec![None; n];
    for (i, layer) in l.layers().iter().enumerate() {
        for v in layer.iter() {
            if v >= n {
                report.violations.push(LayeringViolation::OutOfRange {
                    vertex: v,
                    layer: i,
                });
                continue;
            }
            match first[v] {
                None => first[v] = Some(i),
                Some(f) => report.violations.push(LayeringViolation::Duplicated {
                    vertex: v,
                    first: f,
                    second: i,
                }),
            }
        }
    }
    for v in 0..n {
        if first[v].is_none() {
            report
                .violations
                .push(LayeringViolation::Uncovered { vertex: v });
        }
    }
    for (u, v) in g.edges() {
        if let (Some(iu), Some(iv)) = (first[u], first[v]) {
            if iu.abs_diff(iv) > 1 {
                report.violations.push(LayeringViolation::EdgeSpan {
                    u,
                    v,
                    layer_u: iu,
                    layer_v: iv,
                });
            }
        }
    }
    report
}

/// BFS layering of a connected graph: `V_i` = vertices at distance `i` from
/// the root.
pub fn bfs_layering(g: &Graph, root: usize) -> Result<Layering, LayeringError> {
    let n = g.n();
    if root >= n {
        return Err(LayeringError::VertexOutOfRange(root, n));
    }
    let (layers, visited) = bfs_from(g, root);
    if visited != n {
        return Err(LayeringError::Disconnected);
    }
    Ok(Layering::new(layers))
}

fn bfs_from(g: &Graph, root: usize) -> (Vec<VertexSet>, usize) {
    let mut dist = vec![usize::MAX; g.n()];
    dist[root] = 0;
    let mut frontier = vec![root];
    let mut layers = Vec::new();
    let mut visited = 0;
    while !frontier.is_empty() {
        visited += frontier.len();
        frontier.sort_unstable();
        let mut next = Vec::new();
        for &u in &frontier {
            for &v in g.neighbours(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    next.push(v);
                }
            }
        }
        layers.push(VertexSet::from_sorted(frontier));
        frontier = next;
    }
    (layers, visited)
}

/// Per-component BFS from each component's smallest vertex, merged by layer
/// index. Always a valid layering; empty graphs give an empty layering.
pub fn bfs_layering_multi(g: &Graph) -> Layering {
    let mut merged: Vec<Vec<usize>> = Vec::new();
    for comp in g.connected_components() {
        let root = comp.first().unwrap();
        let (layers, _) = bfs_from(g, root);
        if merged.len() < layers.len() {
            merged.resize(layers.len(), Vec::new());
        }
        for (i, layer) in layers.iter().enumerate() {
            merged[i].extend(layer.iter());
        }
    }
    Layering::new(merged.into_iter().map(VertexSet::new).collect())
}

/// Prepends `s` empty layers.
pub fn shift_layering(l: &Layering, s: usize) -> Layering {
    let mut layers = vec![VertexSet::empty(); s];
    layers.extend(l.layers().iter().cloned());
    Layering::new(layers)
}

/// Groups `p` consecutive layers: `W_i` is the union of the original layers
/// `ip..(i+1)p`. Valid for the `p`-th power of the underlying graph.
pub fn coarsen_layering(l: &Layering, p: usize) -> Result<Layering, LayeringError> {
    if p == 0 {
        return Err(LayeringError::ZeroFactor);
    }
    let mut out = Vec::new();
    let mut i = 0;
    while i < l.len() {
        let mut chunk = Vec::new();
        for j in i..(i + p).min(l.len()) {
            chunk.extend(l.layer(j).iter().copied());
        }
        out.push(VertexSet::new(chunk));
        i += p;
    }
    Ok(Layering::new(out))
}

/// Re-centres a layering on `hit_layers`: `d_j` is the distance from index
/// `j` to the nearest hit index, and `W_i` is the union of all layers at
/// distance exactly `i`. Returns the collapsed layering and the index map
/// `j -> d_j`. Validity is preserved because `|d_a - d_b| <= 1` whenever
/// `|a - b| <= 1`.
pub fn distance_collapse(
    l: &Layering,
    hit_layers: &BTreeSet<usize>,
) -> Result<(Layering, Vec<usize>), LayeringError> {
    if hit_layers.is_empty() || hit_layers.iter().any(|&i| i >= l.len()) {
        return Err(LayeringError::BadHitLayers);
    }
    let dist: Vec<usize> = (0..l.len())
        .map(|j| hit_layers.iter().map(|&i| i.abs_diff(j)).min().unwrap())
        .collect();
    let max_d = dist.iter().copied().max().unwrap_or(0);
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); max_d + 1];
    for (j, &d) in dist.iter().enumerate() {
        out[d].extend(l.layer(j).iter().copied());
    }
    Ok((
        Layering::new(out.into_iter().map(VertexSet::new).collect()),
        dist,
    ))
}
