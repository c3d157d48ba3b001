//! Additive induced-hereditary graph properties, exact vertex-partition
//! solving, and the gadget constructions that reduce p-in-r hypergraph
//! colouring to (P,Q)-colouring.

pub mod error;
pub mod graph;
pub mod gadgets;
pub mod partition;
pub mod properties;
pub mod reduction;

pub use error::{GadgetError, GraphError, ParseError, PropertyError, ReductionError, SolverError};
pub use gadgets::{ForcingAnchors, GadgetSet, PortedGadget};
pub use graph::{Graph, VertexSet};
pub use properties::{EndBlockChoice, Property, PropertyPairParams};
pub use partition::{OrderedPartition, UniquenessReport};
pub use reduction::{Hypergraph, ReductionCertificateMap};
