//! Vertex colourings, monochromatic-component analysis, the independent
//! clustering verifier, and the bounded-clustering 2-colouring obtained
//! from a tree-partition.

use crate::graph::{Graph, VertexSet};
use crate::treewidth::{validate_tree_partition, TreePartition};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ColouringError {
    #[error("colouring covers {got} vertices but the graph has {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("vertex {vertex} has colour {colour} outside palette {palette}")]
    PaletteMismatch {
        vertex: usize,
        colour: usize,
        palette: usize,
    },
    #[error("invalid tree-partition: {0}")]
    InvalidTreePartition(String),
    #[error("invalid layering: {0}")]
    InvalidLayering(String),
    #[error("invalid band decomposition: {0}")]
    InvalidBandDecomposition(String),
    #[error("construction self-check failed: {0}")]
    ConstructionFailed(String),
    #[error(transparent)]
    Treewidth(#[from] crate::treewidth::TreewidthError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

/// A total assignment of colours `0..palette` to vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    palette: usize,
    colours: Vec<usize>,
}

impl Colouring {
    pub fn new(palette: usize, colours: Vec<usize>) -> Result<Self, ColouringError> {
        for (vertex, &colour) in colours.iter().enumerate() {
            if colour >= palette {
                return Err(ColouringError::PaletteMismatch {
                    vertex,
                    colour,
                    palette,
                });
            }
        }
        Ok(Colouring { palette, colours })
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn colours(&self) -> &[usize] {
        &self.colours
    }

    pub fn colour(&self, v: usize) -> usize {
        self.colours[v]
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }
}

/// Machine-checkable record of a clustering claim: the monochromatic
/// components, their maxima, and the realized bound chain.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClusterCertificate {
    pub palette: usize,
    pub max_component: usize,
    pub per_colour_max: Vec<usize>,
    /// Realized band treewidth bound: 1 + the widest band decomposition
    /// used by a banded construction; 0 when not applicable.
    pub k: usize,
    pub delta: usize,
    /// The theoretical budget the colouring claims to satisfy.
    pub budget: usize,
    pub band_widths: Vec<usize>,
    pub tree_partition_widths: Vec<usize>,
    /// Maximum degree of any contracted vertex, per contraction stage.
    pub contraction_degrees: Vec<usize>,
    /// Achieved clustering of the two colouring stages; the final
    /// clustering is at most `factors[0] * max(factors[1], 1)`.
    pub factors: [usize; 2],
    pub components: Vec<(usize, VertexSet)>,
}

impl ClusterCertificate {
    fn from_components(
        palette: usize,
        components: Vec<(usize, VertexSet)>,
        delta: usize,
        budget: usize,
    ) -> Self {
        let mut per_colour_max = vec![0usize; palette];
        let mut max_component = 0;
        for (colour, comp) in &components {
            per_colour_max[*colour] = per_colour_max[*colour].max(comp.len());
            max_component = max_component.max(comp.len());
        }
        ClusterCertificate {
            palette,
            max_component,
            per_colour_max,
            k: 0,
            delta,
            budget,
            band_widths: Vec::new(),
            tree_partition_widths: Vec::new(),
            contraction_degrees: Vec::new(),
            factors: [max_component, 1],
            components,
        }
    }
}

/// Why a clustering check failed.
#[derive(Debug, Clone, Serialize)]
pub enum FailureReason {
    MalformedColouring {
        detail: String,
    },
    PaletteExceeded {
        palette: usize,
        max_colours: usize,
    },
    OversizedComponent {
        colour: usize,
        size: usize,
        bound: usize,
        component: VertexSet,
    },
}

#[derive(Debug, Error)]
#[error("clustering verification failed: {reason:?}")]
pub struct ClusteringFailure {
    pub certificate: ClusterCertificate,
    pub reason: FailureReason,
}

/// Connected components of each colour class, ordered by colour and then by
/// smallest member.
pub fn monochromatic_components(
    g: &Graph,
    c: &Colouring,
) -> Result<Vec<(usize, VertexSet)>, ColouringError> {
    if c.len() != g.n() {
        return Err(ColouringError::LengthMismatch {
            got: c.len(),
            want: g.n(),
        });
    }
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out: Vec<(usize, VertexSet)> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let colour = c.colour(start);
        let mut comp = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for &v in g.neighbours(u) {
                if !seen[v] && c.colour(v) == colour {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push((colour, VertexSet::from_sorted(comp)));
    }
    out.sort_by_key(|(colour, comp)| (*colour, comp.first().unwrap_or(0)));
    Ok(out)
}

/// The independent verifier: succeeds iff the palette fits in
/// `max_colours` and every monochromatic component has at most `bound`
/// vertices. The certificate always reports the measured maxima; failures
/// carry the offending component.
pub fn verify_clustering(
    g: &Graph,
    c: &Colouring,
    max_colours: usize,
    bound: usize,
) -> Result<ClusterCertificate, Box<ClusteringFailure>> {
    let components = monochromatic_components(g, c).map_err(|e| {
        Box::new(ClusteringFailure {
            certificate: ClusterCertificate::from_components(0, Vec::new(), 0, bound),
            reason: FailureReason::MalformedColouring {
                detail: e.to_string(),
            },
        })
    })?;
    let certificate =
        ClusterCertificate::from_components(c.palette(), components, g.max_degree(), bound);
    if c.palette() > max_colours {
        let reason = FailureReason::PaletteExceeded {
            palette: c.palette(),
            max_colours,
        };
        return Err(Box::new(ClusteringFailure {
            certificate,
            reason,
        }));
    }
    if let Some((colour, comp)) = certificate
        .components
        .iter()
        .find(|(_, comp)| comp.len() > bound)
        .cloned()
    {
        let reason = FailureReason::OversizedComponent {
            colour,
            size: comp.len(),
            bound,
            component: comp,
        };
        return Err(Box::new(ClusteringFailure {
            certificate,
            reason,
        }));
    }
    Ok(certificate)
}

/// 2-colours `g` along a proper 2-colouring of the tree of `tp` (parity of
/// depth, per tree component, rooted at the smallest node). Monochromatic
/// components cannot cross parts, so the clustering is at most the
/// partition width.
pub fn two_colour_bounded(
    g: &Graph,
    tp: &TreePartition,
) -> Result<(Colouring, ClusterCertificate), ColouringError> {
    let report = validate_tree_partition(g, tp)
        .map_err(|e| ColouringError::InvalidTreePartition(e.to_string()))?;
    if !report.is_ok() {
        return Err(ColouringError::InvalidTreePartition(format!(
            "{:?}",
            report.violations[0]
        )));
    }
    let parity = tree_parity(&tp.tree);
    let mut colours = vec![0usize; g.n()];
    for (x, part) in tp.parts.iter().enumerate() {
        for v in part.iter() {
            colours[v] = parity[x];
        }
    }
    let colouring = Colouring::new(2, colours)?;
    let width = tp.width();
    let mut certificate = verify_clustering(g, &colouring, 2, width)
        .map_err(|f| ColouringError::ConstructionFailed(format!("{:?}", f.reason)))?;
    certificate.tree_partition_widths = vec![width];
    certificate.factors = [certificate.max_component, 1];
    Ok((colouring, certificate))
}

/// Proper 2-colouring of a forest by BFS depth parity, each component
/// rooted at its smallest node.
fn tree_parity(tree: &Graph) -> Vec<usize> {
    let mut parity = vec![usize::MAX; tree.n()];
    for comp in tree.connected_components() {
        let root = comp.first().unwrap();
        parity[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in tree.neighbours(x) {
                if parity[y] == usize::MAX {
                    parity[y] = 1 - parity[x];
                    queue.push_back(y);
                }
            }
        }
    }
    parity
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::treewidth::{
        heuristic_tree_decomposition, tree_partition_bounded, EliminationStrategy,
    };

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn mono_components_cases() {
        let g = path(4);
        let all_same = Colouring::new(1, vec![0; 4]).unwrap();
        let comps = monochromatic_components(&g, &all_same).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].1.len(), 4);

        let proper = Colouring::new(2, vec![0, 1, 0, 1]).unwrap();
        let comps = monochromatic_components(&g, &proper).unwrap();
        assert_eq!(comps.len(), 4);
        assert!(comps.iter().all(|(_, c)| c.len() == 1));

        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let c = Colouring::new(2, vec![0, 0, 1]).unwrap();
        let comps = monochromatic_components(&tri, &c).unwrap();
        assert_eq!(comps[0], (0, VertexSet::new(vec![0, 1])));
        assert_eq!(comps[1], (1, VertexSet::new(vec![2])));

        let short = Colouring::new(2, vec![0, 1]).unwrap();
        assert!(monochromatic_components(&g, &short).is_err());
    }

    #[test]
    fn verify_cases() {
        let g = path(4);
        let proper = Colouring::new(2, vec![0, 1, 0, 1]).unwrap();
        let cert = verify_clustering(&g, &proper, 2, 1).unwrap();
        assert_eq!(cert.max_component, 1);
        assert_eq!(cert.per_colour_max, vec![1, 1]);

        let g5 = path(5);
        let all = Colouring::new(1, vec![0; 5]).unwrap();
        let failure = verify_clustering(&g5, &all, 1, 4).unwrap_err();
        match failure.reason {
            FailureReason::OversizedComponent { size, bound, .. } => {
                assert_eq!((size, bound), (5, 4));
            }
            _ => panic!("expected oversized component"),
        }
        assert_eq!(failure.certificate.max_component, 5);

        let wide = Colouring::new(3, vec![0, 1, 2, 0, 1]).unwrap();
        let failure = verify_clustering(&g5, &wide, 2, 5).unwrap_err();
        assert!(matches!(
            failure.reason,
            FailureReason::PaletteExceeded {
                palette: 3,
                max_colours: 2
            }
        ));
    }

    #[test]
    fn two_colour_cases() {
        // single edge, two singleton parts on adjacent tree nodes
        let g = path(2);
        let tp = TreePartition {
            tree: path(2),
            parts: vec![VertexSet::new(vec![0]), VertexSet::new(vec![1])],
        };
        let (col, cert) = two_colour_bounded(&g, &tp).unwrap();
        assert_ne!(col.colour(0), col.colour(1));
        assert_eq!(cert.max_component, 1);

        // star with singleton parts: proper colouring
        let star = Graph::from_edges(6, (1..6).map(|v| (0, v))).unwrap();
        let tp = TreePartition {
            tree: Graph::from_edges(6, (1..6).map(|v| (0, v))).unwrap(),
            parts: (0..6).map(|v| VertexSet::new(vec![v])).collect(),
        };
        let (col, cert) = two_colour_bounded(&star, &tp).unwrap();
        assert_eq!(cert.max_component, 1);
        for v in 1..6 {
            assert_ne!(col.colour(0), col.colour(v));
        }

        // P_10 in pairs along a path tree: clustering <= 2
        let p10 = path(10);
        let tp = TreePartition {
            tree: path(5),
            parts: (0..5)
                .map(|i| VertexSet::new(vec![2 * i, 2 * i + 1]))
                .collect(),
        };
        let (_, cert) = two_colour_bounded(&p10, &tp).unwrap();
        assert!(cert.max_component <= 2);
        assert_eq!(cert.tree_partition_widths, vec![2]);

        // invalid partition rejected
        let bad = TreePartition {
            tree: path(2),
            parts: vec![VertexSet::new(vec![0]), VertexSet::new(vec![1])],
        };
        assert!(two_colour_bounded(&p10, &bad).is_err());
    }

    #[test]
    fn mono_components_stay_within_parts() {
        let mut rng = crate::generators::SplitMix64::new(5);
        for _ in 0..10 {
            let n = 12 + (rng.next_below(20) as usize);
            let g = crate::treewidth::tests::random_graph(n, 15, &mut rng);
            let td = heuristic_tree_decomposition(&g, EliminationStrategy::MinDegree);
            let (tp, _) = tree_partition_bounded(&g, &td).unwrap();
            let (col, cert) = two_colour_bounded(&g, &tp).unwrap();
            let mut part_of = vec![usize::MAX; g.n()];
            for (x, part) in tp.parts.iter().enumerate() {
                for v in part.iter() {
                    part_of[v] = x;
                }
            }
            for (_, comp) in &cert.components {
                let first = part_of[comp.first().unwrap()];
                assert!(comp.iter().all(|v| part_of[v] == first));
            }
            assert!(cert.max_component <= tp.width());
            assert!(col.palette() <= 2);
        }
    }
}
