//! Parse a small circuit, build its diagram of states in both modes and
//! render it as text and SVG.

use qsdiag::diagram::{build_diagram, parse_circuit, render_svg, render_text, simulate, DiagramMode, EDGE_TOL};

const SOURCE: &str = "\
# ghz on three qubits
qubits 3
input 0
h 2
cx 2 1
cx 1 0
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let circ = parse_circuit(SOURCE)?;
    let simplified = build_diagram(&circ, DiagramMode::Simplified)?;
    print!("{}", render_text(&simplified));

    let complete = build_diagram(&circ, DiagramMode::Complete)?;
    println!("edges: simplified {}  complete {}", simplified.edge_count(), complete.edge_count());
    println!("simulated support: {:?}", simulate(&circ).support(EDGE_TOL));

    let svg = render_svg(&simplified);
    let path = std::env::temp_dir().join("ghz_diagram.svg");
    std::fs::write(&path, svg)?;
    println!("svg written to {}", path.display());

    if let Err(e) = parse_circuit("qubits 2\ncx 0 4\n") {
        println!("bad circuit: {e}");
    }
    Ok(())
}
