//! Visual JSJ decompositions of Coxeter groups over virtually abelian splittings.
//!
//! Starting from a presentation diagram, [`jsj`] builds the staged
//! decomposition `Ψ₀ → Ψ₁ → …` by splitting vertices along minimal
//! non-crossing virtually abelian separators until a fixed point, and
//! [`classify_vertex`] tags each final vertex as rigid or orbifold.
//!
//! ```
//! use coxeter_jsj::{fixtures, jsj};
//!
//! let d = fixtures::fix_star();
//! let trace = jsj(&d).unwrap();
//! assert_eq!(trace.final_stage().vertex_count(), 4);
//! ```

pub mod classify;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod genset;
pub mod gog;
pub mod jsj;
pub mod oracle;
pub mod orbifold;
pub mod splitters;

pub use classify::{
    classify_irreducible, classify_subset, coxeter_graph_components, is_virtually_abelian,
    virtually_abelian_structure, AffineType, FiniteType, IrreducibleType, VirtAbelianStructure,
};
pub use diagram::{CoxeterDiagram, DiagramBuilder};
pub use error::{Error, Result};
pub use format::{parse_diagram, write_diagram};
pub use genset::GenSet;
pub use gog::{Edge, GraphOfGroups, VertexId};
pub use jsj::{
    check_amenable, jsj, jsj_with, m_jsj_decomposition, next_stage, reduce, split_vertex, verify_trace,
    JsjOptions, SplitPick, StageTrace,
};
pub use orbifold::{
    classify_vertex, orbifold_structure, realize_orbifold, OrbifoldClass, OrbifoldStructure, Shape, VertexKind,
};
pub use splitters::{candidate_splitters, crosses, is_compatible, is_minimal, minimal_splitters, SplitterRecord};
