//! Turaev genus of link diagrams and of alternating decomposition graphs.

pub mod altdecomp;
pub mod bracket;
pub mod classify;
pub mod construct;
pub mod corpus;
pub mod diagram;
pub mod enumerate;
pub mod families;
pub mod graph;
pub mod iso;
pub mod moves;
pub mod par;
pub mod ribbon;
pub mod unionfind;
pub mod verify;

pub use diagram::{parse_pd, ArcId, ArcKind, DiagramError, PlanarDiagram, Resolution, ResolutionChoice, Sign};
