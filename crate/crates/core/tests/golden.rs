//! Byte-exact renderings of three fixed circuits. Set `UPDATE_GOLDEN=1` to
//! rewrite the files after a deliberate change to the renderers.

use std::path::PathBuf;

use qsdiag::diagram::{build_diagram, parse_circuit, render_svg, render_text, DiagramMode};
use qsdiag::matrix::ComplexMatrix;
use qsdiag::purify::synthesize_purification_circuit;
use qsdiag::state::DensityMatrix;

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn check(name: &str, actual: &str) {
    let path = dir("golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(expected == actual, "{name} differs from the golden file");
}

fn golden_case(stem: &str) {
    let src = std::fs::read_to_string(dir("data").join(format!("{stem}.qc"))).unwrap();
    let circ = parse_circuit(&src).unwrap();
    let d = build_diagram(&circ, DiagramMode::Simplified).unwrap();
    check(&format!("{stem}.txt"), &render_text(&d));
    check(&format!("{stem}.svg"), &render_svg(&d));
    let full = build_diagram(&circ, DiagramMode::Complete).unwrap();
    check(&format!("{stem}_complete.txt"), &render_text(&full));
}

#[test]
fn identity() {
    golden_case("identity");
}

#[test]
fn cnot() {
    golden_case("cnot");
}

#[test]
fn purification() {
    golden_case("purification");
}

#[test]
fn purification_source_matches_synthesis() {
    let json = std::fs::read_to_string(dir("data").join("rho_mixed.json")).unwrap();
    let rho = DensityMatrix::new(ComplexMatrix::from_json(&json).unwrap()).unwrap();
    let dsl = synthesize_purification_circuit(&rho).unwrap().to_dsl();
    let path = dir("data").join("purification.qc");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &dsl).unwrap();
    }
    assert_eq!(std::fs::read_to_string(path).unwrap(), dsl);
}

#[test]
fn svg_is_well_formed() {
    for stem in ["identity", "cnot", "purification"] {
        let svg = std::fs::read_to_string(dir("golden").join(format!("{stem}.svg"))).unwrap();
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let root = doc.root_element();
        assert_eq!(root.tag_name().name(), "svg");
        assert_eq!(root.attribute("version"), Some("1.1"));
        assert!(root.descendants().any(|n| n.attribute("stroke-width") == Some("3.0")));
    }
}
