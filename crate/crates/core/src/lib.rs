//! Counting proper 3-edge-colorings of cubic multigraphs, four ways.
//!
//! * [`coloring::count_colorings`] searches colorings directly.
//! * [`penrose::contract_plain`] and [`penrose::contract_extended`] sum the
//!   Penrose bracket over an immersed [`diagram::Diagram`];
//!   [`penrose::skein_evaluate`] reaches the same value by edge expansion.
//! * [`state::logical_expansion_count`] sums colorings of loop states built
//!   from a perfect matching.
//!
//! ```
//! use chromatic_bracket::generators::NamedGraph;
//! use chromatic_bracket::{coloring, penrose};
//!
//! let k33 = NamedGraph::K33;
//! assert_eq!(coloring::count_colorings(&k33.graph()), 12);
//! let d = k33.diagram();
//! assert_eq!(penrose::contract_plain(&d).unwrap().0, 0);
//! assert_eq!(penrose::contract_extended(&d).unwrap().0, 12);
//! ```

pub mod coloring;
pub mod diagram;
pub mod formation;
pub mod generators;
pub mod graph;
pub mod matching;
pub mod penrose;
pub mod state;

pub use coloring::{Color, EdgeColoring};
pub use diagram::{CrossingKind, Diagram, Port};
pub use graph::CubicGraph;
pub use matching::PerfectMatching;
pub use penrose::BracketValue;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/colorings.md")]
    mod colorings {}
    #[doc = include_str!("../../../book/src/matchings.md")]
    mod matchings {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/immersions.md")]
    mod immersions {}
    #[doc = include_str!("../../../book/src/penrose.md")]
    mod penrose {}
}
