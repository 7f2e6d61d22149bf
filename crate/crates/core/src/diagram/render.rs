use std::fmt::Write as _;

use crate::matrix::C64;

use super::build::{DiagramMode, StateDiagram, EDGE_TOL};

/// Horizontal space taken by one layer in SVG output.
pub const LAYER_WIDTH: f64 = 120.0;
/// Vertical distance between neighbouring lines in SVG output.
pub const LINE_PITCH: f64 = 40.0;

const MARGIN_LEFT: f64 = 90.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 40.0;
/// Part of each layer occupied by the edges; the rest is the line segment.
const EDGE_SPAN: f64 = 60.0;

fn sig3(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { format!("{x}") };
    }
    let digits = |e: i32| (2 - e).max(0) as usize;
    let e = x.abs().log10().floor() as i32;
    let mut s = format!("{:.*}", digits(e), x);
    if s.trim_start_matches('-').parse::<f64>().is_ok_and(|r| r >= 10f64.powi(e + 1)) {
        s = format!("{:.*}", digits(e + 1), x);
    }
    s
}

/// Complex amplitude to three significant digits per component, e.g.
/// `0.707`, `-0.5i`, `0.354+0.612i`.
pub fn format_amplitude(z: C64) -> String {
    let re = z.re.abs() > EDGE_TOL;
    let im = z.im.abs() > EDGE_TOL;
    match (re, im) {
        (false, false) => "0".into(),
        (true, false) => sig3(z.re),
        (false, true) => format!("{}i", sig3(z.im)),
        (true, true) => {
            let sign = if z.im < 0.0 { '-' } else { '+' };
            format!("{}{sign}{}i", sig3(z.re), sig3(z.im.abs()))
        }
    }
}

fn ket(index: usize, n_qubits: usize) -> String {
    format!("|{:0width$b}>", index, width = n_qubits)
}

fn mode_name(mode: DiagramMode) -> &'static str {
    match mode {
        DiagramMode::Complete => "complete",
        DiagramMode::Simplified => "simplified",
    }
}

fn set_text(set: &[usize]) -> String {
    let items: Vec<String> = set.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

/// Fixed-width text rendering: one row per line (`=` active, `-` inactive,
/// `o` where the line meets an edge), then each layer's edge list.
pub fn render_text(d: &StateDiagram) -> String {
    let n_layers = d.layers.len();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "diagram of states: {} qubits, {} lines, {} layers, {}",
        d.n_qubits,
        d.n_lines(),
        n_layers,
        mode_name(d.mode)
    );
    if !d.traced.is_empty() {
        let qs: Vec<String> = d.traced.iter().map(|q| format!("q{q}")).collect();
        let _ = writeln!(out, "traced out: {}", qs.join(" "));
    }
    out.push('\n');

    let iw = (d.n_lines() - 1).to_string().len();
    let mut touched = vec![vec![false; d.n_lines()]; n_layers];
    for (t, layer) in d.layers.iter().enumerate() {
        for e in &layer.edges {
            touched[t][e.from] = true;
            touched[t][e.to] = true;
        }
    }
    for line in 0..d.n_lines() {
        let _ = write!(out, "{line:>iw$} {} ", ket(line, d.n_qubits));
        for t in 0..=n_layers {
            let seg = if d.activity[t][line].active { '=' } else { '-' };
            out.extend([seg; 3]);
            if t < n_layers {
                out.push(if touched[t][line] { 'o' } else { seg });
            }
        }
        out.push('\n');
    }

    for (t, layer) in d.layers.iter().enumerate() {
        let _ = writeln!(out, "\nlayer {}: {}", t + 1, layer.label);
        for e in &layer.edges {
            let _ = writeln!(out, "  {:>iw$} -> {:>iw$}  {}", e.from, e.to, format_amplitude(e.amplitude));
        }
        let _ = writeln!(out, "  active after: {}", set_text(&d.active_set(t + 1)));
    }
    let _ = writeln!(out, "\ninput active: {}", set_text(&d.active_set(0)));
    let _ = writeln!(out, "output active: {}", set_text(&d.final_active()));
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// SVG 1.1 rendering with thick strokes on active line segments.
pub fn render_svg(d: &StateDiagram) -> String {
    let n_layers = d.layers.len() as f64;
    let seg = LAYER_WIDTH - EDGE_SPAN;
    let width = MARGIN_LEFT + n_layers * LAYER_WIDTH + seg + MARGIN_RIGHT;
    let height = MARGIN_TOP + (d.n_lines() - 1) as f64 * LINE_PITCH + MARGIN_BOTTOM;
    let y = |line: usize| MARGIN_TOP + line as f64 * LINE_PITCH;
    let x0 = |t: usize| MARGIN_LEFT + t as f64 * LAYER_WIDTH;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.1}\" height=\"{height:.1}\" viewBox=\"0 0 {width:.1} {height:.1}\">"
    );
    let _ = writeln!(
        out,
        "<title>diagram of states, {} qubits, {}</title>",
        d.n_qubits,
        mode_name(d.mode)
    );
    out.push_str("<g font-family=\"monospace\" font-size=\"12\">\n");
    for line in 0..d.n_lines() {
        let _ = writeln!(out, "<text x=\"10.0\" y=\"{:.1}\">{}</text>", y(line) + 4.0, escape(&ket(line, d.n_qubits)));
    }
    for (t, layer) in d.layers.iter().enumerate() {
        let cx = x0(t) + seg + EDGE_SPAN / 2.0;
        let _ = writeln!(out, "<text x=\"{cx:.1}\" y=\"20.0\" text-anchor=\"middle\">{}</text>", escape(&layer.label));
    }
    out.push_str("</g>\n");

    out.push_str("<g stroke-linecap=\"round\">\n");
    for (t, states) in d.activity.iter().enumerate() {
        for (line, s) in states.iter().enumerate() {
            let (stroke, w) = if s.active { ("#000000", 3.0) } else { ("#9a9a9a", 1.0) };
            let _ = writeln!(
                out,
                "<line x1=\"{:.1}\" y1=\"{yy:.1}\" x2=\"{:.1}\" y2=\"{yy:.1}\" stroke=\"{stroke}\" stroke-width=\"{w:.1}\"/>",
                x0(t),
                x0(t) + seg,
                yy = y(line)
            );
        }
    }
    out.push_str("</g>\n");

    out.push_str("<g font-family=\"monospace\" font-size=\"9\">\n");
    for (t, layer) in d.layers.iter().enumerate() {
        let (xa, xb) = (x0(t) + seg, x0(t + 1));
        for e in &layer.edges {
            let live = d.activity[t][e.from].active;
            let (stroke, w) = if live { ("#1f4e9c", 2.0) } else { ("#b0b0b0", 0.8) };
            let (ya, yb) = (y(e.from), y(e.to));
            let _ = writeln!(
                out,
                "<line x1=\"{xa:.1}\" y1=\"{ya:.1}\" x2=\"{xb:.1}\" y2=\"{yb:.1}\" stroke=\"{stroke}\" stroke-width=\"{w:.1}\"/>"
            );
            let _ = writeln!(
                out,
                "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" fill=\"{stroke}\">{}</text>",
                (xa + xb) / 2.0,
                (ya + yb) / 2.0 - 3.0,
                escape(&format_amplitude(e.amplitude))
            );
        }
    }
    out.push_str("</g>\n");

    if !d.traced.is_empty() {
        let qs: Vec<String> = d.traced.iter().map(|q| format!("q{q}")).collect();
        let _ = writeln!(
            out,
            "<text x=\"10.0\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"12\">traced out: {}</text>",
            height - 12.0,
            qs.join(" ")
        );
    }
    out.push_str("</svg>\n");
    out
}
