use crate::composite::{gather, scatter};
use crate::error::{Error, Result};
use crate::matrix::{C64, ZERO};
use crate::MAX_QUBITS;

use super::circuit::{Circuit, Gate};

/// Entries with modulus at or below this are null: no edge is drawn.
pub const EDGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramMode {
    /// Every non-null entry of every gate becomes an edge.
    Complete,
    /// Edges leaving lines that carry no amplitude are dropped.
    Simplified,
}

/// Connection from line `from` before a layer to line `to` after it,
/// weighted by the unitary entry `U[to][from]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub amplitude: C64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub label: String,
    pub edges: Vec<Edge>,
}

/// State of one line at one layer boundary.
///
/// `active` means the line carries amplitude above [`EDGE_TOL`]. `reachable`
/// means some path of non-null edges leads to it from the input support,
/// regardless of interference; it is a superset of `active`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineState {
    pub active: bool,
    pub reachable: bool,
    pub amplitude: C64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateDiagram {
    pub n_qubits: usize,
    pub mode: DiagramMode,
    pub layers: Vec<Layer>,
    /// `activity[t]` describes every line before layer `t`; the last entry
    /// is the output boundary.
    pub activity: Vec<Vec<LineState>>,
    pub traced: Vec<usize>,
}

impl StateDiagram {
    pub fn n_lines(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn active_set(&self, boundary: usize) -> Vec<usize> {
        self.activity[boundary].iter().enumerate().filter(|(_, s)| s.active).map(|(i, _)| i).collect()
    }

    pub fn reachable_set(&self, boundary: usize) -> Vec<usize> {
        self.activity[boundary].iter().enumerate().filter(|(_, s)| s.reachable).map(|(i, _)| i).collect()
    }

    pub fn final_active(&self) -> Vec<usize> {
        self.active_set(self.layers.len())
    }

    pub fn edge_count(&self) -> usize {
        self.layers.iter().map(|l| l.edges.len()).sum()
    }
}

/// All non-null edges of `gate` on the full register, sorted by
/// `(from, to)`, without building the dense immersed matrix.
fn gate_edges(gate: &Gate, n_qubits: usize) -> Vec<Edge> {
    let pos = gate.targets.indices();
    let local = 1usize << pos.len();
    let mask = scatter(local - 1, pos);
    let mut edges = Vec::new();
    for from in 0..1usize << n_qubits {
        let lc = gather(from, pos);
        let rest = from & !mask;
        for lr in 0..local {
            let z = gate.matrix[(lr, lc)];
            if z.norm() > EDGE_TOL {
                edges.push(Edge { from, to: rest | scatter(lr, pos), amplitude: z });
            }
        }
    }
    edges.sort_by_key(|e| (e.from, e.to));
    edges
}

/// Builds the layered diagram of `circuit`.
pub fn build_diagram(circuit: &Circuit, mode: DiagramMode) -> Result<StateDiagram> {
    let n = circuit.n_qubits;
    if n > MAX_QUBITS {
        return Err(Error::RegisterTooLarge(n));
    }
    let lines = 1usize << n;
    let input = circuit.input_state();
    let mut amps = input.amplitudes().to_vec();
    let mut reach: Vec<bool> = amps.iter().map(|z| z.norm() > EDGE_TOL).collect();

    let snapshot = |amps: &[C64], reach: &[bool]| -> Vec<LineState> {
        amps.iter()
            .zip(reach)
            .map(|(&a, &r)| LineState { active: a.norm() > EDGE_TOL, reachable: r, amplitude: a })
            .collect()
    };

    let mut activity = vec![snapshot(&amps, &reach)];
    let mut layers = Vec::with_capacity(circuit.gates.len());
    for gate in &circuit.gates {
        let all = gate_edges(gate, n);
        let mut next = vec![ZERO; lines];
        let mut next_reach = vec![false; lines];
        for e in &all {
            next[e.to] += e.amplitude * amps[e.from];
            next_reach[e.to] |= reach[e.from];
        }
        let edges = match mode {
            DiagramMode::Complete => all,
            DiagramMode::Simplified => all.into_iter().filter(|e| amps[e.from].norm() > EDGE_TOL).collect(),
        };
        layers.push(Layer { label: gate.label(), edges });
        amps = next;
        reach = next_reach;
        activity.push(snapshot(&amps, &reach));
    }

    Ok(StateDiagram { n_qubits: n, mode, layers, activity, traced: circuit.traced.clone() })
}
