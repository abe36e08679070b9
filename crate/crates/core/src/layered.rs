//! Layered treewidth, H-partitions and (k, ℓ)-partitions, and the
//! constructions that move between them: bag substitution, graph-power
//! layered decompositions, apex absorption, product embeddings, and
//! layered-width-one normalisation.

use crate::graph::{Graph, GraphError, VertexSet};
use crate::layering::{distance_collapse, validate_layering, Layering, LayeringError};
use crate::treewidth::{validate_tree_decomposition, TreeDecomposition, TreewidthError};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LayeredError {
    #[error("invalid layering: {0}")]
    InvalidLayering(String),
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid H-partition: {0}")]
    InvalidHPartition(String),
    #[error("invalid (k,l)-partition: {0}")]
    InvalidKlPartition(String),
    #[error("copy index overflow in part {part}, layer {layer}: needs more than l = {ell} copies")]
    CopyOverflow {
        part: usize,
        layer: usize,
        ell: usize,
    },
    #[error("graph power requires p >= 1")]
    ZeroPower,
    #[error("supplied set is not a clique: {0} and {1} are non-adjacent")]
    NotAClique(usize, usize),
    #[error("malformed partition of the clique: {0}")]
    MalformedCliquePartition(String),
    #[error("construction self-check failed: {0}")]
    ConstructionFailed(String),
    #[error(transparent)]
    Treewidth(#[from] TreewidthError),
    #[error(transparent)]
    Layering(#[from] LayeringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A tree decomposition together with a layering and the cached maximum of
/// `|B_x ∩ V_i|` over bags and layers.
#[derive(Debug, Clone)]
pub struct LayeredTreeDecomposition {
    pub td: TreeDecomposition,
    pub l: Layering,
    pub layered_width: usize,
}

impl LayeredTreeDecomposition {
    pub fn new(g: &Graph, td: TreeDecomposition, l: Layering) -> Result<Self, LayeredError> {
        let layered_width = layered_width_of_decomposition(g, &td, &l)?;
        Ok(LayeredTreeDecomposition {
            td,
            l,
            layered_width,
        })
    }
}

/// A partition of a graph's vertices indexed by the vertices of a host
/// graph: every edge stays inside a part or joins parts adjacent in the
/// host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPartition {
    pub host: Graph,
    pub parts: Vec<VertexSet>,
}

impl HPartition {
    /// Width = maximum part size.
    pub fn width(&self) -> usize {
        self.parts.iter().map(|p| p.len()).max().unwrap_or(0)
    }

    pub fn part_of(&self, n: usize) -> Vec<usize> {
        let mut map = vec![usize::MAX; n];
        for (x, part) in self.parts.iter().enumerate() {
            for v in part.iter() {
                if v < n {
                    map[v] = x;
                }
            }
        }
        map
    }
}

/// An H-partition with a layering, a witness decomposition of the host of
/// width at most `k`, and layered width at most `ell`: each part meets each
/// layer in at most `ell` vertices.
#[derive(Debug, Clone)]
pub struct KLPartition {
    pub hp: HPartition,
    pub l: Layering,
    pub witness: TreeDecomposition,
    pub k: usize,
    pub ell: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum HPartitionViolation {
    PartEmpty {
        part: usize,
    },
    VertexMissing {
        vertex: usize,
    },
    VertexDuplicated {
        vertex: usize,
    },
    PartVertexOutOfRange {
        part: usize,
        vertex: usize,
    },
    /// Edge whose endpoints lie in distinct, non-adjacent host vertices.
    EdgeHostsNonAdjacent {
        u: usize,
        v: usize,
        host_u: usize,
        host_v: usize,
    },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct HPartitionReport {
    pub violations: Vec<HPartitionViolation>,
}

impl HPartitionReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the partition axioms and the host-adjacency edge condition.
pub fn validate_h_partition(g: &Graph, hp: &HPartition) -> Result<HPartitionReport, LayeredError> {
    if hp.host.n() != hp.parts.len() {
        return Err(LayeredError::InvalidHPartition(format!(
            "host has {} vertices but {} parts were supplied",
            hp.host.n(),
            hp.parts.len()
        )));
    }
    let n = g.n();
    let mut report = HPartitionReport::default();
    let mut part_of = vec![usize::MAX; n];
    for (x, part) in hp.parts.iter().enumerate() {
        if part.is_empty() {
            report
                .violations
                .push(HPartitionViolation::PartEmpty { part: x });
        }
        for v in part.iter() {
            if v >= n {
                report
                    .violations
                    .push(HPartitionViolation::PartVertexOutOfRange { part: x, vertex: v });
            } else if part_of[v] != usize::MAX {
                report
                    .violations
                    .push(HPartitionViolation::VertexDuplicated { vertex: v });
            } else {
                part_of[v] = x;
            }
        }
    }
    for v in 0..n {
        if part_of[v] == usize::MAX {
            report
                .violations
                .push(HPartitionViolation::VertexMissing { vertex: v });
        }
    }
    for (u, v) in g.edges() {
        let (x, y) = (part_of[u], part_of[v]);
        if x == usize::MAX || y == usize::MAX {
            continue;
        }
        if x != y && !hp.host.has_edge(x, y) {
            report
                .violations
                .push(HPartitionViolation::EdgeHostsNonAdjacent {
                    u,
                    v,
                    host_u: x,
                    host_v: y,
                });
        }
    }
    Ok(report)
}

/// Exact maximum of `|B_x ∩ V_i|` over all bags and layers.
pub fn layered_width_of_decomposition(
    g: &Graph,
    td: &TreeDecomposition,
    l: &Layering,
) -> Result<usize, LayeredError> {
    let td_report = validate_tree_decomposition(g, td)?;
    if !td_report.is_ok() {
        return Err(LayeredError::InvalidDecomposition(format!(
            "{:?}",
            td_report.violations[0]
        )));
    }
    let l_report = validate_layering(g, l);
    if !l_report.is_ok() {
        return Err(LayeredError::InvalidLayering(format!(
            "{:?}",
            l_report.violations[0]
        )));
    }
    let layer_of = l.index_map(g.n());
    let mut best = 0;
    for bag in &td.bags {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for v in bag.iter() {
            if let Some(Some(i)) = layer_of.get(v) {
                *counts.entry(*i).or_insert(0) += 1;
            }
        }
        best = best.max(counts.values().copied().max().unwrap_or(0));
    }
    Ok(best)
}

/// Exact maximum of `|A_x ∩ V_i|` over all parts and layers.
pub fn partition_layered_width(
    g: &Graph,
    hp: &HPartition,
    l: &Layering,
) -> Result<usize, LayeredError> {
    let hp_report = validate_h_partition(g, hp)?;
    if !hp_report.is_ok() {
        return Err(LayeredError::InvalidHPartition(format!(
            "{:?}",
            hp_report.violations[0]
        )));
    }
    let l_report = validate_layering(g, l);
    if !l_report.is_ok() {
        return Err(LayeredError::InvalidLayering(format!(
            "{:?}",
            l_report.violations[0]
        )));
    }
    let layer_of = l.index_map(g.n());
    let mut best = 0;
    for part in &hp.parts {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for v in part.iter() {
            if let Some(Some(i)) = layer_of.get(v) {
                *counts.entry(*i).or_insert(0) += 1;
            }
        }
        best = best.max(counts.values().copied().max().unwrap_or(0));
    }
    Ok(best)
}

/// Full validation of a (k, ℓ)-partition: the H-partition axioms, the
/// layering, the witness decomposition of the host with width at most `k`,
/// and layered width at most `ell`.
pub fn validate_kl_partition(g: &Graph, klp: &KLPartition) -> Result<Vec<String>, LayeredError> {
    let mut problems = Vec::new();
    let hp_report = validate_h_partition(g, &klp.hp)?;
    for v in &hp_report.violations {
        problems.push(format!("h-partition: {v:?}"));
    }
    let l_report = validate_layering(g, &klp.l);
    for v in &l_report.violations {
        problems.push(format!("layering: {v:?}"));
    }
    match validate_tree_decomposition(&klp.hp.host, &klp.witness) {
        Ok(report) => {
            for v in &report.violations {
                problems.push(format!("witness: {v:?}"));
            }
            let width = klp.witness.width();
            if width > klp.k as isize {
                problems.push(format!("witness width {width} exceeds k = {}", klp.k));
            }
        }
        Err(e) => problems.push(format!("witness: {e}")),
    }
    if hp_report.is_ok() && l_report.is_ok() {
        let lw = partition_layered_width(g, &klp.hp, &klp.l)?;
        if lw > klp.ell {
            problems.push(format!("layered width {lw} exceeds l = {}", klp.ell));
        }
    }
    Ok(problems)
}

fn require_valid_klp(g: &Graph, klp: &KLPartition) -> Result<(), LayeredError> {
    let problems = validate_kl_partition(g, klp)?;
    if let Some(first) = problems.first() {
        return Err(LayeredError::InvalidKlPartition(first.clone()));
    }
    Ok(())
}

/// Substitutes each witness bag by the union of its parts, giving a tree
/// decomposition of `g` with layered width at most `(k + 1) * ell`.
pub fn layered_td_from_partition(
    g: &Graph,
    klp: &KLPartition,
) -> Result<LayeredTreeDecomposition, LayeredError> {
    require_valid_klp(g, klp)?;
    let bags = klp
        .witness
        .bags
        .iter()
        .map(|bag| {
            let mut members = Vec::new();
            for x in bag.iter() {
                members.extend(klp.hp.parts[x].iter());
            }
            VertexSet::new(members)
        })
        .collect();
    let td = TreeDecomposition {
        tree: klp.witness.tree.clone(),
        bags,
    };
    let report = validate_tree_decomposition(g, &td)?;
    if !report.is_ok() {
        return Err(LayeredError::ConstructionFailed(format!(
            "substituted decomposition invalid: {:?}",
            report.violations[0]
        )));
    }
    let out = LayeredTreeDecomposition::new(g, td, klp.l.clone())?;
    let bound = (klp.k + 1) * klp.ell;
    if out.layered_width > bound {
        return Err(LayeredError::ConstructionFailed(format!(
            "layered width {} exceeds (k+1)*l = {bound}",
            out.layered_width
        )));
    }
    Ok(out)
}

/// Outcome summary for [`power_layered_decomposition`].
#[derive(Debug, Clone, Serialize)]
pub struct PowerReport {
    pub p: usize,
    /// Layered width of the input decomposition.
    pub k: usize,
    pub delta: usize,
    /// `2 p k Δ^{floor(p/2)}` with `Δ` clamped to 1.
    pub bound: usize,
    pub measured: usize,
    pub within_bound: bool,
}

/// Layered tree decomposition of the `p`-th power: each bag is blown up to
/// the radius-`floor(p/2)` balls around its members, and the layering is
/// coarsened into runs of `p` layers.
pub fn power_layered_decomposition(
    g: &Graph,
    td: &TreeDecomposition,
    l: &Layering,
    p: usize,
) -> Result<(Graph, LayeredTreeDecomposition, PowerReport), LayeredError> {
    if p == 0 {
        return Err(LayeredError::ZeroPower);
    }
    let k = layered_width_of_decomposition(g, td, l)?;
    let delta = g.max_degree();
    let gp = g.power(p)?;
    let radius = p / 2;
    let bags = td
        .bags
        .iter()
        .map(|bag| {
            let mut members = Vec::new();
            for v in bag.iter() {
                members.extend(ball(g, v, radius));
            }
            VertexSet::new(members)
        })
        .collect();
    let td_power = TreeDecomposition {
        tree: td.tree.clone(),
        bags,
    };
    let coarse = crate::layering::coarsen_layering(l, p)?;
    let report = validate_tree_decomposition(&gp, &td_power)?;
    if !report.is_ok() {
        return Err(LayeredError::ConstructionFailed(format!(
            "power decomposition invalid: {:?}",
            report.violations[0]
        )));
    }
    let out = LayeredTreeDecomposition::new(&gp, td_power, coarse)?;
    let bound = 2 * p * k * delta.max(1).pow(radius as u32);
    let within_bound = if bound == 0 {
        out.layered_width == 0
    } else {
        out.layered_width < bound
    };
    let report = PowerReport {
        p,
        k,
        delta,
        bound,
        measured: out.layered_width,
        within_bound,
    };
    Ok((gp, out, report))
}

fn ball(g: &Graph, v: usize, radius: usize) -> Vec<usize> {
    let mut dist = BTreeMap::from([(v, 0usize)]);
    let mut frontier = vec![v];
    for d in 1..=radius {
        let mut next = Vec::new();
        for &u in &frontier {
            for &w in g.neighbours(u) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d);
                    next.push(w);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    dist.into_keys().collect()
}

/// Outcome summary for [`drop_apices`].
#[derive(Debug, Clone, Serialize)]
pub struct DropApicesReport {
    /// Layer indices of the rest-partition that contained apex neighbours.
    pub hit_layers: Vec<usize>,
    pub apex_count: usize,
    pub apex_max_degree: usize,
    pub k_budget: usize,
    pub ell_budget: usize,
    pub measured_layered_width: usize,
    pub measured_witness_width: isize,
}

/// Absorbs an apex set into a (k, ℓ)-partition of the rest of the graph:
/// the layering is re-centred on the layers containing apex neighbours
/// (so all of them move to layer 0), the apex set becomes one new part on
/// a new universal host vertex, and the witness is extended by adding that
/// vertex to every bag. Produces a `(k+1, 2 ℓ Δ_A |A|)`-partition of `g`.
///
/// `klp_of_rest` is expressed over the induced subgraph `g - a` with its
/// vertices relabelled in ascending order; the result is over `g` itself.
pub fn drop_apices(
    g: &Graph,
    a: &VertexSet,
    klp_of_rest: &KLPartition,
) -> Result<(KLPartition, DropApicesReport), LayeredError> {
    if let Some(v) = a.iter().find(|&v| v >= g.n()) {
        return Err(LayeredError::Graph(GraphError::VertexOutOfRange(v, g.n())));
    }
    if a.is_empty() {
        require_valid_klp(g, klp_of_rest)?;
        let report = DropApicesReport {
            hit_layers: Vec::new(),
            apex_count: 0,
            apex_max_degree: 0,
            k_budget: klp_of_rest.k,
            ell_budget: klp_of_rest.ell,
            measured_layered_width: partition_layered_width(g, &klp_of_rest.hp, &klp_of_rest.l)?,
            measured_witness_width: klp_of_rest.witness.width(),
        };
        return Ok((klp_of_rest.clone(), report));
    }
    let rest: VertexSet = (0..g.n()).filter(|v| !a.contains(*v)).collect();
    let (g_rest, new_to_old) = g.induced_subgraph(&rest)?;
    require_valid_klp(&g_rest, klp_of_rest)?;
    let mut old_to_new = vec![usize::MAX; g.n()];
    for (new, &old) in new_to_old.iter().enumerate() {
        old_to_new[old] = new;
    }

    // Layers (in rest terms) that see an apex.
    let layer_of_rest = klp_of_rest.l.index_map(g_rest.n());
    let mut hits: BTreeSet<usize> = BTreeSet::new();
    let mut apex_max_degree = 0usize;
    for x in a.iter() {
        apex_max_degree = apex_max_degree.max(g.degree(x));
        for &w in g.neighbours(x) {
            if !a.contains(w) {
                if let Some(i) = layer_of_rest[old_to_new[w]] {
                    hits.insert(i);
                }
            }
        }
    }

    let collapsed_rest = if hits.is_empty() {
        klp_of_rest.l.clone()
    } else {
        distance_collapse(&klp_of_rest.l, &hits)?.0
    };
    // Translate to g ids and put the apex set in layer 0.
    let mut layers: Vec<Vec<usize>> = collapsed_rest
        .layers()
        .iter()
        .map(|layer| layer.iter().map(|v| new_to_old[v]).collect())
        .collect();
    if layers.is_empty() {
        layers.push(Vec::new());
    }
    layers[0].extend(a.iter());
    let layering = Layering::new(layers.into_iter().map(VertexSet::new).collect());

    // Parts in g ids, plus the apex part on a new universal host vertex.
    let mut parts: Vec<VertexSet> = klp_of_rest
        .hp
        .parts
        .iter()
        .map(|part| VertexSet::new(part.iter().map(|v| new_to_old[v]).collect()))
        .collect();
    parts.push(a.clone());
    let old_host_n = klp_of_rest.hp.host.n();
    let mut host_edges: Vec<(usize, usize)> = klp_of_rest.hp.host.edges().collect();
    for x in 0..old_host_n {
        host_edges.push((x, old_host_n));
    }
    let host = Graph::from_edges(old_host_n + 1, host_edges)?;

    let witness = if klp_of_rest.witness.bags.is_empty() {
        TreeDecomposition {
            tree: Graph::empty(1),
            bags: vec![VertexSet::new(vec![old_host_n])],
        }
    } else {
        TreeDecomposition {
            tree: klp_of_rest.witness.tree.clone(),
            bags: klp_of_rest
                .witness
                .bags
                .iter()
                .map(|bag| {
                    let mut b: Vec<usize> = bag.iter().collect();
                    b.push(old_host_n);
                    VertexSet::new(b)
                })
                .collect(),
        }
    };

    let k_budget = klp_of_rest.k + 1;
    let ell_budget = 2 * klp_of_rest.ell * apex_max_degree.max(1) * a.len();
    let out = KLPartition {
        hp: HPartition { host, parts },
        l: layering,
        witness,
        k: k_budget,
        ell: ell_budget,
    };
    require_valid_klp(g, &out)?;

    // Every neighbour of the apex set must now sit in layer 0.
    let layer0 = &out.l.layers()[0];
    for x in a.iter() {
        for &w in g.neighbours(x) {
            if !a.contains(w) && !layer0.contains(w) {
                return Err(LayeredError::ConstructionFailed(format!(
                    "apex neighbour {w} not in layer 0"
                )));
            }
        }
    }
    let report = DropApicesReport {
        hit_layers: hits.into_iter().collect(),
        apex_count: a.len(),
        apex_max_degree,
        k_budget,
        ell_budget,
        measured_layered_width: partition_layered_width(g, &out.hp, &out.l)?,
        measured_witness_width: out.witness.width(),
    };
    Ok((out, report))
}

/// One vertex's coordinates in the host ⊠ path ⊠ clique product.
pub type ProductCoordinate = (usize, usize, usize);

#[derive(Debug, Clone, Serialize)]
pub struct EdgeCheck {
    pub u: usize,
    pub v: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductEmbedding {
    /// `(host vertex, layer index, copy index)` per vertex.
    pub mapping: Vec<ProductCoordinate>,
    pub edge_checks: Vec<EdgeCheck>,
    pub all_ok: bool,
}

/// Maps each vertex to (its part's host vertex, its layer, a copy index
/// unique within part and layer, assigned in ascending id order), then
/// checks every edge against the product adjacency: host coordinates equal
/// or adjacent, layers differing by at most one. Per-edge failures are
/// reported rather than raised, so corrupted partitions are named edge by
/// edge.
pub fn embed_in_product(g: &Graph, klp: &KLPartition) -> Result<ProductEmbedding, LayeredError> {
    let n = g.n();
    let part_of = klp.hp.part_of(n);
    if let Some(v) = (0..n).find(|&v| part_of[v] == usize::MAX) {
        return Err(LayeredError::InvalidHPartition(format!(
            "vertex {v} is in no part"
        )));
    }
    let layer_of = klp.l.index_map(n);
    if let Some(v) = (0..n).find(|&v| layer_of[v].is_none()) {
        return Err(LayeredError::InvalidLayering(format!(
            "vertex {v} is in no layer"
        )));
    }
    let mut copy_counter: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut mapping: Vec<ProductCoordinate> = Vec::with_capacity(n);
    for v in 0..n {
        let key = (part_of[v], layer_of[v].unwrap());
        let copy = copy_counter.entry(key).or_insert(0);
        if *copy >= klp.ell {
            return Err(LayeredError::CopyOverflow {
                part: key.0,
                layer: key.1,
                ell: klp.ell,
            });
        }
        mapping.push((key.0, key.1, *copy));
        *copy += 1;
    }
    let mut edge_checks = Vec::new();
    let mut all_ok = true;
    for (u, v) in g.edges() {
        let (hu, iu, _) = mapping[u];
        let (hv, iv, _) = mapping[v];
        let host_ok = hu == hv || klp.hp.host.has_edge(hu, hv);
        let layer_ok = iu.abs_diff(iv) <= 1;
        let ok = host_ok && layer_ok;
        all_ok &= ok;
        edge_checks.push(EdgeCheck { u, v, ok });
    }
    Ok(ProductEmbedding {
        mapping,
        edge_checks,
        all_ok,
    })
}

/// Outcome summary for [`make_width_one`].
#[derive(Debug, Clone, Serialize)]
pub struct WidthOneReport {
    pub witness_width_budget: usize,
    pub measured_witness_width: isize,
    pub measured_layered_width: usize,
}

/// Trades layered width for host treewidth: the host is replaced by its
/// used (vertex, copy) pairs, each new part holds at most one vertex per
/// layer, and the witness bags are blown up by all copies, so the new
/// witness width is at most `(k + 1) * ell - 1`.
pub fn make_width_one(
    g: &Graph,
    klp: &KLPartition,
) -> Result<(KLPartition, WidthOneReport), LayeredError> {
    require_valid_klp(g, klp)?;
    let embedding = embed_in_product(g, klp)?;
    if !embedding.all_ok {
        return Err(LayeredError::InvalidKlPartition(
            "edge fails the product adjacency".into(),
        ));
    }
    // Used (host, copy) pairs in lexicographic order.
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(h, _, c) in &embedding.mapping {
        used.insert((h, c));
    }
    let used: Vec<(usize, usize)> = used.into_iter().collect();
    let mut id_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, &pair) in used.iter().enumerate() {
        id_of.insert(pair, i);
    }
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); used.len()];
    for (v, &(h, _, c)) in embedding.mapping.iter().enumerate() {
        parts[id_of[&(h, c)]].push(v);
    }
    let mut host_edges = Vec::new();
    for (i, &(hx, _)) in used.iter().enumerate() {
        for (j, &(hy, _)) in used.iter().enumerate().skip(i + 1) {
            if hx == hy || klp.hp.host.has_edge(hx, hy) {
                host_edges.push((i, j));
            }
        }
    }
    let host = Graph::from_edges(used.len(), host_edges)?;
    let witness = TreeDecomposition {
        tree: klp.witness.tree.clone(),
        bags: klp
            .witness
            .bags
            .iter()
            .map(|bag| {
                let mut members = Vec::new();
                for x in bag.iter() {
                    for (&(h, _), &id) in id_of.range((x, 0)..(x + 1, 0)) {
                        debug_assert_eq!(h, x);
                        members.push(id);
                    }
                }
                VertexSet::new(members)
            })
            .collect(),
    };
    let budget = (klp.k + 1) * klp.ell;
    let out = KLPartition {
        hp: HPartition {
            host,
            parts: parts.into_iter().map(VertexSet::new).collect(),
        },
        l: klp.l.clone(),
        witness,
        k: budget.saturating_sub(1),
        ell: 1,
    };
    require_valid_klp(g, &out)?;
    let measured_layered_width = partition_layered_width(g, &out.hp, &out.l)?;
    if measured_layered_width > 1 {
        return Err(LayeredError::ConstructionFailed(format!(
            "layered width {measured_layered_width} after normalisation"
        )));
    }
    let report = WidthOneReport {
        witness_width_budget: budget.saturating_sub(1),
        measured_witness_width: out.witness.width(),
        measured_layered_width,
    };
    Ok((out, report))
}

#[derive(Debug, Clone, Serialize)]
pub struct FriendlinessReport {
    pub friendly: bool,
    /// Prescribed parts that are not parts of the partition.
    pub missing_parts: Vec<VertexSet>,
    /// Clique vertices not in the layer required of them.
    pub misplaced: Vec<(usize, usize)>,
}

/// Checks that every prescribed part is a part of the partition, and that
/// the two clique sides sit in layers 0 and 1 respectively.
pub fn friendliness_check(
    g: &Graph,
    klp: &KLPartition,
    clique: &VertexSet,
    c0: &VertexSet,
    c1: &VertexSet,
    prescribed_parts: &[VertexSet],
) -> Result<FriendlinessReport, LayeredError> {
    for u in clique.iter() {
        for v in clique.iter() {
            if u < v && !g.has_edge(u, v) {
                return Err(LayeredError::NotAClique(u, v));
            }
        }
    }
    let check_partition = |pieces: &[&VertexSet], what: &str| -> Result<(), LayeredError> {
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut total = 0;
        for piece in pieces {
            for v in piece.iter() {
                if !clique.contains(v) {
                    return Err(LayeredError::MalformedCliquePartition(format!(
                        "{what}: vertex {v} is not in the clique"
                    )));
                }
                if !seen.insert(v) {
                    return Err(LayeredError::MalformedCliquePartition(format!(
                        "{what}: vertex {v} appears twice"
                    )));
                }
                total += 1;
            }
        }
        if total != clique.len() {
            return Err(LayeredError::MalformedCliquePartition(format!(
                "{what}: covers {total} of {} clique vertices",
                clique.len()
            )));
        }
        Ok(())
    };
    check_partition(&[c0, c1], "c0/c1")?;
    check_partition(
        &prescribed_parts.iter().collect::<Vec<_>>(),
        "prescribed parts",
    )?;

    let mut missing_parts = Vec::new();
    for part in prescribed_parts {
        if !klp.hp.parts.iter().any(|p| p == part) {
            missing_parts.push(part.clone());
        }
    }
    let mut misplaced = Vec::new();
    for (side, layer) in [(c0, 0usize), (c1, 1usize)] {
        for v in side.iter() {
            let in_layer = klp
                .l
                .layers()
                .get(layer)
                .map(|s| s.contains(v))
                .unwrap_or(false);
            if !in_layer {
                misplaced.push((v, layer));
            }
        }
    }
    Ok(FriendlinessReport {
        friendly: missing_parts.is_empty() && misplaced.is_empty(),
        missing_parts,
        misplaced,
    })
}
