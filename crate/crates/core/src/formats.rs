//! Shared file formats.
//!
//! Graphs travel as an edge-list text format: optional `#` comment lines,
//! then a header `n m`, then `m` lines `u v` with `0 <= u < v < n` in
//! lexicographic order. Everything else (layerings, decompositions,
//! partitions, colourings, certificates) is JSON with explicit indices so
//! empty layers and sparse structures round-trip exactly.

use crate::colouring::Colouring;
use crate::graph::{Graph, VertexSet};
use crate::layered::{HPartition, KLPartition, ProductEmbedding};
use crate::layering::Layering;
use crate::treewidth::{TreeDecomposition, TreePartition};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the edge-list text format. Strict: comments only before the
/// header, exactly `m` edge lines, endpoints ordered and sorted, no
/// duplicates.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text.lines().enumerate();
    let (header_no, header) = loop {
        match lines.next() {
            Some((no, line)) => {
                let trimmed = line.trim();
                if trimmed.is_empty() || trimmed.starts_with('#') {
                    continue;
                }
                break (no + 1, trimmed.to_string());
            }
            None => return Err(parse_err(0, "missing `n m` header")),
        }
    };
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .ok_or_else(|| parse_err(header_no, "missing vertex count"))?
        .parse()
        .map_err(|_| parse_err(header_no, "vertex count is not an integer"))?;
    let m: usize = it
        .next()
        .ok_or_else(|| parse_err(header_no, "missing edge count"))?
        .parse()
        .map_err(|_| parse_err(header_no, "edge count is not an integer"))?;
    if it.next().is_some() {
        return Err(parse_err(header_no, "trailing tokens after `n m` header"));
    }
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m);
    let mut prev: Option<(usize, usize)> = None;
    for _ in 0..m {
        let (no, line) = lines
            .next()
            .ok_or_else(|| parse_err(header_no, format!("expected {m} edge lines")))?;
        let no = no + 1;
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .ok_or_else(|| parse_err(no, "missing edge endpoint"))?
            .parse()
            .map_err(|_| parse_err(no, "endpoint is not an integer"))?;
        let v: usize = it
            .next()
            .ok_or_else(|| parse_err(no, "missing second endpoint"))?
            .parse()
            .map_err(|_| parse_err(no, "endpoint is not an integer"))?;
        if it.next().is_some() {
            return Err(parse_err(no, "trailing tokens after edge"));
        }
        if u >= v {
            return Err(parse_err(no, format!("edge {u} {v} must satisfy u < v")));
        }
        if v >= n {
            return Err(parse_err(
                no,
                format!("endpoint {v} out of range (n = {n})"),
            ));
        }
        if let Some(p) = prev {
            if (u, v) <= p {
                return Err(parse_err(no, "edges must be sorted and distinct"));
            }
        }
        prev = Some((u, v));
        edges.push((u, v));
    }
    for (no, line) in lines {
        if !line.trim().is_empty() {
            return Err(parse_err(no + 1, "unexpected content after edge list"));
        }
    }
    Graph::from_edges(n, edges).map_err(|e| FormatError::Invalid(e.to_string()))
}

/// Canonical edge-list text for a graph.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LayeringJson {
    pub n: usize,
    pub layers: Vec<Vec<usize>>,
}

pub fn layering_to_json(l: &Layering, n: usize) -> LayeringJson {
    LayeringJson {
        n,
        layers: l.layers().iter().map(|s| s.iter().collect()).collect(),
    }
}

pub fn layering_from_json(j: &LayeringJson) -> Layering {
    Layering::new(j.layers.iter().map(|l| VertexSet::new(l.clone())).collect())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub tree_edges: Vec<(usize, usize)>,
    pub bags: Vec<Vec<usize>>,
}

pub fn decomposition_to_json(td: &TreeDecomposition) -> DecompositionJson {
    DecompositionJson {
        tree_edges: td.tree.edges().collect(),
        bags: td.bags.iter().map(|b| b.iter().collect()).collect(),
    }
}

pub fn decomposition_from_json(j: &DecompositionJson) -> Result<TreeDecomposition, FormatError> {
    let tree = Graph::from_edges(j.bags.len(), j.tree_edges.iter().copied())
        .map_err(|e| FormatError::Invalid(format!("tree edges: {e}")))?;
    Ok(TreeDecomposition {
        tree,
        bags: j.bags.iter().map(|b| VertexSet::new(b.clone())).collect(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreePartitionJson {
    pub tree_edges: Vec<(usize, usize)>,
    pub parts: Vec<Vec<usize>>,
}

pub fn tree_partition_to_json(tp: &TreePartition) -> TreePartitionJson {
    TreePartitionJson {
        tree_edges: tp.tree.edges().collect(),
        parts: tp.parts.iter().map(|p| p.iter().collect()).collect(),
    }
}

pub fn tree_partition_from_json(j: &TreePartitionJson) -> Result<TreePartition, FormatError> {
    let tree = Graph::from_edges(j.parts.len(), j.tree_edges.iter().copied())
        .map_err(|e| FormatError::Invalid(format!("tree edges: {e}")))?;
    Ok(TreePartition {
        tree,
        parts: j.parts.iter().map(|p| VertexSet::new(p.clone())).collect(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColouringJson {
    pub palette: usize,
    pub colours: Vec<usize>,
}

pub fn colouring_to_json(c: &Colouring) -> ColouringJson {
    ColouringJson {
        palette: c.palette(),
        colours: c.colours().to_vec(),
    }
}

pub fn colouring_from_json(j: &ColouringJson) -> Result<Colouring, FormatError> {
    Colouring::new(j.palette, j.colours.clone()).map_err(|e| FormatError::Invalid(e.to_string()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HostJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KlPartitionJson {
    pub host: HostJson,
    pub parts: Vec<Vec<usize>>,
    pub layering: LayeringJson,
    pub witness: DecompositionJson,
    pub k: usize,
    pub ell: usize,
}

pub fn kl_partition_to_json(klp: &KLPartition, n: usize) -> KlPartitionJson {
    KlPartitionJson {
        host: HostJson {
            n: klp.hp.host.n(),
            edges: klp.hp.host.edges().collect(),
        },
        parts: klp.hp.parts.iter().map(|p| p.iter().collect()).collect(),
        layering: layering_to_json(&klp.l, n),
        witness: decomposition_to_json(&klp.witness),
        k: klp.k,
        ell: klp.ell,
    }
}

pub fn kl_partition_from_json(j: &KlPartitionJson) -> Result<KLPartition, FormatError> {
    let host = Graph::from_edges(j.host.n, j.host.edges.iter().copied())
        .map_err(|e| FormatError::Invalid(format!("host edges: {e}")))?;
    Ok(KLPartition {
        hp: HPartition {
            host,
            parts: j.parts.iter().map(|p| VertexSet::new(p.clone())).collect(),
        },
        l: layering_from_json(&j.layering),
        witness: decomposition_from_json(&j.witness)?,
        k: j.k,
        ell: j.ell,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingJson {
    pub mapping: Vec<(usize, usize, usize)>,
    pub all_ok: bool,
    pub failing_edges: Vec<(usize, usize)>,
}

pub fn embedding_to_json(e: &ProductEmbedding) -> EmbeddingJson {
    EmbeddingJson {
        mapping: e.mapping.clone(),
        all_ok: e.all_ok,
        failing_edges: e
            .edge_checks
            .iter()
            .filter(|c| !c.ok)
            .map(|c| (c.u, c.v))
            .collect(),
    }
}

/// FNV-1a (64-bit) content digest, hex encoded. Stable input fingerprints
/// for run reports.
pub fn digest(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{hash:016x}")
}
