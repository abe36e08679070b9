//! Deterministic, seeded instance families with controlled structure:
//! grids, triangulated grids, series-parallel graphs, layered banded
//! graphs, and apexed variants of any base family.
//!
//! All randomness flows through [`SplitMix64`], so identical specs produce
//! byte-identical graphs on every platform.

use crate::graph::{Graph, VertexSet};
use crate::layering::Layering;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("series-parallel generator needs n >= 2")]
    TooSmall,
    #[error("banded generator needs layers, per_layer and k >= 1")]
    InfeasibleCaps,
    #[error("apex degree {degree} exceeds base vertex count {base}")]
    ApexDegreeTooLarge { degree: usize, base: usize },
}

/// SplitMix64: `state += 0x9E3779B97F4A7C15`, then two xor-multiply mixing
/// rounds (Steele, Lea & Flood). Small, portable, and stable across
/// releases, which keeps generated certificates reproducible.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough draw in `0..bound` (modulo bias is irrelevant here).
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }
}

/// A reproducible instance description: family, size parameters, seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    Grid {
        rows: usize,
        cols: usize,
    },
    TriGrid {
        rows: usize,
        cols: usize,
    },
    SeriesParallel {
        n: usize,
        seed: u64,
    },
    Banded {
        layers: usize,
        per_layer: usize,
        k: usize,
        delta_cap: usize,
        seed: u64,
    },
    Apexed {
        base: Box<GeneratorSpec>,
        apex_count: usize,
        apex_degree: usize,
        seed: u64,
    },
}

/// Generated instance: the graph, plus the layering or apex set when the
/// family defines one.
#[derive(Debug, Clone)]
pub struct GenOutput {
    pub graph: Graph,
    pub layering: Option<Layering>,
    pub apexes: Option<VertexSet>,
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<GenOutput, GenError> {
        match self {
            GeneratorSpec::Grid { rows, cols } => Ok(GenOutput {
                graph: gen_grid(*rows, *cols)?,
                layering: None,
                apexes: None,
            }),
            GeneratorSpec::TriGrid { rows, cols } => Ok(GenOutput {
                graph: gen_triangulated_grid(*rows, *cols)?,
                layering: None,
                apexes: None,
            }),
            GeneratorSpec::SeriesParallel { n, seed } => Ok(GenOutput {
                graph: gen_series_parallel(*n, *seed)?,
                layering: None,
                apexes: None,
            }),
            GeneratorSpec::Banded {
                layers,
                per_layer,
                k,
                delta_cap,
                seed,
            } => {
                let (graph, layering) = gen_banded(*layers, *per_layer, *k, *delta_cap, *seed)?;
                Ok(GenOutput {
                    graph,
                    layering: Some(layering),
                    apexes: None,
                })
            }
            GeneratorSpec::Apexed {
                base,
                apex_count,
                apex_degree,
                seed,
            } => {
                let (graph, apexes) = gen_apexed(base, *apex_count, *apex_degree, *seed)?;
                Ok(GenOutput {
                    graph,
                    layering: None,
                    apexes: Some(apexes),
                })
            }
        }
    }
}

/// `rows x cols` grid with row-major vertex ids. Planar, max degree 4.
pub fn gen_grid(rows: usize, cols: usize) -> Result<Graph, GenError> {
    if rows == 0 || cols == 0 {
        return Err(GenError::ZeroDimension);
    }
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
    Ok(Graph::from_edges(rows * cols, edges).expect("grid edges are valid"))
}

/// Grid plus one fixed diagonal per cell, from `(r, c)` to `(r+1, c+1)`.
/// Planar, interior degree 6.
pub fn gen_triangulated_grid(rows: usize, cols: usize) -> Result<Graph, GenError> {
    if rows == 0 || cols == 0 {
        return Err(GenError::ZeroDimension);
    }
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
            if c + 1 < cols && r + 1 < rows {
                edges.push((v, v + cols + 1));
            }
        }
    }
    Ok(Graph::from_edges(rows * cols, edges).expect("grid edges are valid"))
}

/// Random 2-tree growth: start from an edge and repeatedly attach a new
/// vertex to both endpoints of a randomly chosen existing edge. Treewidth
/// is exactly 2 for n >= 3, so the result is series-parallel.
pub fn gen_series_parallel(n: usize, seed: u64) -> Result<Graph, GenError> {
    if n < 2 {
        return Err(GenError::TooSmall);
    }
    let mut rng = SplitMix64::new(seed ^ 0x0005_e72a_11e1_u64);
    let mut edges: Vec<(usize, usize)> = vec![(0, 1)];
    for v in 2..n {
        let (a, b) = edges[rng.next_below(edges.len() as u64) as usize];
        edges.push((a, v));
        edges.push((b, v));
    }
    Ok(Graph::from_edges(n, edges).expect("series-parallel edges are valid"))
}

/// Layered instance: each layer carries a random partial k-tree, and
/// consecutive layers are joined by random cross edges with at most
/// `delta_cap` cross edges per vertex per side. Returns the graph together
/// with its (valid) layering. Layer `i` holds ids
/// `i*per_layer .. (i+1)*per_layer`.
pub fn gen_banded(
    layers: usize,
    per_layer: usize,
    k: usize,
    delta_cap: usize,
    seed: u64,
) -> Result<(Graph, Layering), GenError> {
    if layers == 0 || per_layer == 0 || k == 0 {
        return Err(GenError::InfeasibleCaps);
    }
    let mut rng = SplitMix64::new(seed ^ 0xba4d_ed00_u64);
    let n = layers * per_layer;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for layer in 0..layers {
        let base = layer * per_layer;
        for (u, v) in partial_k_tree_edges(per_layer, k, &mut rng) {
            edges.push((base + u, base + v));
        }
    }
    // Cross edges, capped per vertex per side.
    if delta_cap > 0 {
        for layer in 0..layers.saturating_sub(1) {
            let lo = layer * per_layer;
            let hi = (layer + 1) * per_layer;
            let mut down = vec![0usize; per_layer]; // cross degree of layer side
            let mut up = vec![0usize; per_layer];
            let mut present: Vec<(usize, usize)> = Vec::new();
            for _ in 0..per_layer {
                let u = rng.next_below(per_layer as u64) as usize;
                let v = rng.next_below(per_layer as u64) as usize;
                if down[u] < delta_cap && up[v] < delta_cap && !present.contains(&(u, v)) {
                    present.push((u, v));
                    down[u] += 1;
                    up[v] += 1;
                    edges.push((lo + u, hi + v));
                }
            }
        }
    }
    let graph = Graph::from_edges(n, edges).expect("banded edges are valid");
    let layering = Layering::new(
        (0..layers)
            .map(|i| VertexSet::from_sorted((i * per_layer..(i + 1) * per_layer).collect()))
            .collect(),
    );
    Ok((graph, layering))
}

/// Random k-tree growth followed by random edge drops (roughly 30%),
/// giving a partial k-tree on `m` local ids `0..m`.
fn partial_k_tree_edges(m: usize, k: usize, rng: &mut SplitMix64) -> Vec<(usize, usize)> {
    let seed_size = m.min(k + 1);
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for u in 0..seed_size {
        for v in u + 1..seed_size {
            edges.push((u, v));
        }
    }
    if seed_size > k {
        // the k-subsets of the seed clique
        for skip in 0..seed_size {
            let clique: Vec<usize> = (0..seed_size).filter(|&x| x != skip).collect();
            cliques.push(clique);
        }
    } else {
        cliques.push((0..seed_size).collect());
    }
    for v in seed_size..m {
        let at = rng.next_below(cliques.len() as u64) as usize;
        let host = cliques[at].clone();
        for &u in &host {
            edges.push((u, v));
        }
        for skip in 0..host.len() {
            let mut clique: Vec<usize> = host
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &x)| x)
                .collect();
            clique.push(v);
            cliques.push(clique);
        }
    }
    edges
        .into_iter()
        .filter(|_| rng.next_below(100) >= 30)
        .collect()
}

/// Adds `apex_count` vertices on top of the base instance, each joined to
/// exactly `apex_degree` distinct random base vertices. Apexes get the ids
/// after the base graph.
pub fn gen_apexed(
    base: &GeneratorSpec,
    apex_count: usize,
    apex_degree: usize,
    seed: u64,
) -> Result<(Graph, VertexSet), GenError> {
    let base_out = base.generate()?;
    let nb = base_out.graph.n();
    if apex_degree > nb {
        return Err(GenError::ApexDegreeTooLarge {
            degree: apex_degree,
            base: nb,
        });
    }
    let mut rng = SplitMix64::new(seed ^ 0xa9e7_ed00_u64);
    let n = nb + apex_count;
    let mut edges: Vec<(usize, usize)> = base_out.graph.edges().collect();
    for a in 0..apex_count {
        let apex = nb + a;
        let mut chosen: Vec<usize> = Vec::with_capacity(apex_degree);
        while chosen.len() < apex_degree {
            let v = rng.next_below(nb as u64) as usize;
            if !chosen.contains(&v) {
                chosen.push(v);
            }
        }
        chosen.sort_unstable();
        for v in chosen {
            edges.push((v, apex));
        }
    }
    let graph = Graph::from_edges(n, edges).expect("apexed edges are valid");
    let apexes = VertexSet::from_sorted((nb..n).collect());
    Ok((graph, apexes))
}
