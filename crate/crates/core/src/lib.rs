//! Clustered colouring toolkit.
//!
//! Constructs vertex colourings with few colours and small monochromatic
//! components for graphs that admit layerings whose bands of consecutive
//! layers have small treewidth, together with the supporting machinery:
//! graph operations, layerings, tree decompositions and tree-partitions,
//! layered decompositions and partitions, instance generators, and an
//! independent clustering verifier for every quantitative claim.
//!
//! ```
//! use clucol::{three_colour_pipeline, verify_clustering, Variant};
//! use clucol::generators::gen_grid;
//!
//! let g = gen_grid(12, 12).unwrap();
//! let (colouring, cert) = three_colour_pipeline(&g, Variant::Appendix).unwrap();
//! assert!(colouring.palette() <= 3);
//! // the certificate's budget is 8000 k^3 delta^2 with the realized k
//! verify_clustering(&g, &colouring, 3, cert.budget).unwrap();
//! ```

#![forbid(unsafe_code)]

pub mod banded;
pub mod colouring;
pub mod formats;
pub mod generators;
pub mod graph;
pub mod layered;
pub mod layering;
pub mod treewidth;

pub use banded::{three_colour_appendix, three_colour_main, three_colour_pipeline, Variant};
pub use colouring::{
    monochromatic_components, two_colour_bounded, verify_clustering, ClusterCertificate, Colouring,
};
pub use graph::{strong_product, Graph, VertexSet};
pub use layering::{bfs_layering, bfs_layering_multi, Layering};
pub use treewidth::{
    exact_treewidth, heuristic_tree_decomposition, tree_partition_bounded, EliminationStrategy,
    TreeDecomposition, TreePartition,
};
