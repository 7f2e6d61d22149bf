//! Circuits and their diagrams of states.
//!
//! A diagram has one horizontal line per computational-basis state of the
//! register (line `i` carries `|i⟩`, line 0 on top) and one layer per gate.
//! Each layer connects line `j` to line `i` wherever the immersed gate
//! unitary has a non-null entry `U[i][j]`.

mod build;
mod circuit;
mod dsl;
pub mod gates;
mod render;

pub use build::{build_diagram, DiagramMode, Edge, Layer, LineState, StateDiagram, EDGE_TOL};
pub use circuit::{simulate, Circuit, Gate, InputState};
pub use dsl::parse_circuit;
pub use render::{format_amplitude, render_svg, render_text, LAYER_WIDTH, LINE_PITCH};
