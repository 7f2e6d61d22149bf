//! Line-oriented circuit language.
//!
//! ```text
//! # comment
//! qubits 2
//! input 0                 # or: input [0.6, 0, 0.8i, 0]
//! trace 0                 # optional: qubits discarded at the end
//! ry(pi/3) 1
//! cry(2.094) 1 0          # control first
//! damp [[1, 0], [0, 1]] 0 # matrix literal, first listed qubit most significant
//! ```

use crate::angle::parse_angle;
use crate::channels::parse_amplitude;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};
use crate::state::PureState;
use crate::MAX_QUBITS;

use super::circuit::{Circuit, Gate, InputState};
use super::gates::{named_gate, split_controls};

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn col(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn err_at(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.text[..pos].chars().count() + 1, msg: msg.into() }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col(), msg: msg.into() }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, ch: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{ch}`")))
        }
    }

    fn ident(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let r = self.rest();
        let len = r
            .char_indices()
            .find(|&(i, c)| !(c == '_' || c.is_ascii_alphabetic() || (i > 0 && c.is_ascii_digit())))
            .map_or(r.len(), |(i, _)| i);
        if len == 0 {
            return None;
        }
        let start = self.pos;
        self.pos += len;
        Some((start, &r[..len]))
    }

    /// Next token up to whitespace or one of `stops`.
    fn token(&mut self, stops: &[char]) -> (usize, &'a str) {
        self.skip_ws();
        let r = self.rest();
        let len = r.find(|c: char| c.is_whitespace() || stops.contains(&c)).unwrap_or(r.len());
        let start = self.pos;
        self.pos += len;
        (start, &r[..len])
    }

    fn amplitude(&mut self) -> Result<C64> {
        self.skip_ws();
        let start = self.pos;
        let r = self.rest();
        let len = r.find([',', ']']).unwrap_or(r.len());
        self.pos += len;
        let txt = r[..len].trim();
        parse_amplitude(txt).ok_or_else(|| self.err_at(start, format!("bad amplitude `{txt}`")))
    }

    /// `[a, b, ...]`
    fn amplitude_list(&mut self) -> Result<Vec<C64>> {
        self.expect('[')?;
        let mut out = vec![self.amplitude()?];
        while self.eat(',') {
            out.push(self.amplitude()?);
        }
        self.expect(']')?;
        Ok(out)
    }

    /// `[[a, b], [c, d]]`
    fn matrix(&mut self) -> Result<ComplexMatrix> {
        let start = self.pos;
        self.expect('[')?;
        let mut rows = vec![self.amplitude_list()?];
        while self.eat(',') {
            rows.push(self.amplitude_list()?);
        }
        self.expect(']')?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(self.err_at(start, "matrix literal must be square"));
        }
        Ok(ComplexMatrix::from_rows(&rows))
    }

    fn count(&mut self, what: &str) -> Result<(usize, usize)> {
        let (start, tok) = self.token(&[]);
        if tok.is_empty() {
            return Err(self.err(format!("expected {what}")));
        }
        tok.parse::<usize>().map(|v| (start, v)).map_err(|_| self.err_at(start, format!("expected {what}, found `{tok}`")))
    }

    fn qubit(&mut self, n_qubits: usize) -> Result<usize> {
        let (start, q) = self.count("a qubit index")?;
        if q >= n_qubits {
            return Err(self.err_at(start, format!("qubit {q} out of range for a {n_qubits}-qubit register")));
        }
        Ok(q)
    }

    fn qubit_list(&mut self, n_qubits: usize) -> Result<Vec<usize>> {
        let mut qs = Vec::new();
        while !self.at_end() {
            let start = self.pos;
            let q = self.qubit(n_qubits)?;
            if qs.contains(&q) {
                return Err(self.err_at(start, format!("qubit {q} listed twice")));
            }
            qs.push(q);
        }
        Ok(qs)
    }

    fn params(&mut self) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        if !self.eat('(') {
            return Ok(out);
        }
        loop {
            let (start, tok) = self.token(&[',', ')']);
            let v = parse_angle(tok).ok_or_else(|| self.err_at(start, format!("bad angle `{tok}`")))?;
            out.push(v);
            if self.eat(')') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }
}

/// Parses a circuit; every error carries a 1-based line and column.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    let mut seen_input = false;
    let mut seen_trace = false;

    for (idx, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor { line: idx + 1, text: body, pos: 0 };
        if cur.at_end() {
            continue;
        }
        let Some((name_pos, name)) = cur.ident() else {
            return Err(cur.err("expected a keyword or gate name"));
        };

        if name == "qubits" {
            if circuit.is_some() {
                return Err(cur.err_at(name_pos, "`qubits` given twice"));
            }
            let (start, n) = cur.count("a qubit count")?;
            if n == 0 || n > MAX_QUBITS {
                return Err(cur.err_at(start, format!("qubit count must be 1..={MAX_QUBITS}, got {n}")));
            }
            if !cur.at_end() {
                return Err(cur.err("unexpected text after qubit count"));
            }
            circuit = Some(Circuit::new(n)?);
            continue;
        }

        let Some(circ) = circuit.as_mut() else {
            return Err(cur.err_at(name_pos, "the first statement must be `qubits N`"));
        };
        let n = circ.n_qubits;

        match name {
            "input" => {
                if seen_input {
                    return Err(cur.err_at(name_pos, "`input` given twice"));
                }
                seen_input = true;
                cur.skip_ws();
                let start = cur.pos;
                let input = if cur.peek() == Some('[') {
                    let amps = cur.amplitude_list()?;
                    if amps.len() != 1 << n {
                        return Err(cur.err_at(start, format!("expected {} amplitudes, found {}", 1 << n, amps.len())));
                    }
                    let st = PureState::with_tol(amps, 1e-9).map_err(|e| cur.err_at(start, e.to_string()))?;
                    InputState::Amplitudes(st)
                } else {
                    let (start, k) = cur.count("a basis index or amplitude list")?;
                    if k >= 1 << n {
                        return Err(cur.err_at(start, format!("basis index {k} out of range for {n} qubits")));
                    }
                    InputState::Basis(k)
                };
                if !cur.at_end() {
                    return Err(cur.err("unexpected text after input"));
                }
                circ.input = input;
            }
            "trace" => {
                if seen_trace {
                    return Err(cur.err_at(name_pos, "`trace` given twice"));
                }
                seen_trace = true;
                let qs = cur.qubit_list(n)?;
                if qs.is_empty() {
                    return Err(cur.err("expected at least one qubit"));
                }
                circ.traced = qs;
                circ.traced.sort_unstable();
            }
            _ => {
                let params = cur.params()?;
                cur.skip_ws();
                let literal = if cur.peek() == Some('[') {
                    if split_controls(name).is_some() {
                        return Err(cur.err_at(name_pos, format!("`{name}` is a built-in gate and takes no matrix")));
                    }
                    if !params.is_empty() {
                        return Err(cur.err_at(name_pos, "a matrix literal takes no parameters"));
                    }
                    Some(cur.matrix()?)
                } else {
                    None
                };
                let qs = cur.qubit_list(n)?;
                let gate = match literal {
                    Some(m) => {
                        let want = m.rows().trailing_zeros() as usize;
                        if !m.rows().is_power_of_two() || m.rows() < 2 || want != qs.len() {
                            return Err(cur.err_at(
                                name_pos,
                                format!("{0}x{0} matrix does not fit {1} qubits", m.rows(), qs.len()),
                            ));
                        }
                        Gate::from_matrix(name, m, &qs, Vec::new(), n)
                    }
                    None => {
                        let Some((controls, base)) = split_controls(name) else {
                            return Err(cur.err_at(name_pos, format!("unknown gate `{name}`")));
                        };
                        let Some((_, arity)) = named_gate(name, &params) else {
                            let want = super::gates::base_signature(base).map_or(0, |s| s.0);
                            return Err(cur.err_at(
                                name_pos,
                                format!("`{name}` takes {want} parameter(s), found {}", params.len()),
                            ));
                        };
                        if arity != qs.len() {
                            return Err(cur.err_at(
                                name_pos,
                                format!(
                                    "`{name}` acts on {arity} qubit(s) ({controls} control(s)), found {}",
                                    qs.len()
                                ),
                            ));
                        }
                        Gate::named(name, &params, &qs, n)
                    }
                };
                let gate = gate.map_err(|e| cur.err_at(name_pos, e.to_string()))?;
                circ.push(gate)?;
            }
        }
    }

    circuit.ok_or(Error::Parse { line: text.lines().count().max(1), col: 1, msg: "missing `qubits N`".into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c, ONE, ZERO};

    fn parse_err(text: &str) -> (usize, usize, String) {
        match parse_circuit(text) {
            Err(Error::Parse { line, col, msg }) => (line, col, msg),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn single_x() {
        let circ = parse_circuit("qubits 2\ninput 0\nx 0").unwrap();
        assert_eq!(circ.n_qubits, 2);
        assert_eq!(circ.gates.len(), 1);
        assert_eq!(circ.gates[0].name, "x");
        assert_eq!(circ.gates[0].targets.indices(), &[0]);
        assert_eq!(circ.input, InputState::Basis(0));
    }

    #[test]
    fn purification_shape() {
        let circ = parse_circuit("qubits 2\ninput 0\nry(1.047) 1\ncry(2.094) 1 0\ncphase(0.5) 1 0").unwrap();
        let names: Vec<&str> = circ.gates.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["ry", "cry", "cphase"]);
        assert_eq!(circ.gates[1].qubits, vec![1, 0]);
        assert_eq!(circ.gates[2].params, vec![0.5]);
    }

    #[test]
    fn out_of_range_qubit_named() {
        let (line, col, msg) = parse_err("qubits 2\nx 5");
        assert_eq!((line, col), (2, 3));
        assert!(msg.contains("qubit 5"), "{msg}");
    }

    #[test]
    fn error_positions() {
        let (l, c, m) = parse_err("qubits 2\n  foo 0");
        assert_eq!((l, c), (2, 3));
        assert!(m.contains("unknown gate"), "{m}");
        let (l, c, m) = parse_err("qubits 2\ncx 0");
        assert_eq!((l, c), (2, 1));
        assert!(m.contains("acts on 2"), "{m}");
        let (l, c, _) = parse_err("qubits 1\nry(pie) 0");
        assert_eq!((l, c), (2, 4));
        assert_eq!(parse_err("x 0").0, 1);
        assert_eq!(parse_err("qubits 11").1, 8);
        assert_eq!(parse_err("qubits 2\ninput 4").1, 7);
        assert_eq!(parse_err("qubits 2\ncx 1 1").1, 6);
        assert_eq!(parse_err("# nothing\n").2, "missing `qubits N`");
    }

    #[test]
    fn comments_and_angles() {
        let circ = parse_circuit("# header\nqubits 1 # one\n\nrz(pi/2) 0 # turn\n").unwrap();
        assert!((circ.gates[0].params[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-16);
    }

    #[test]
    fn amplitude_input() {
        let circ = parse_circuit("qubits 1\ninput [0.6, 0.8i]").unwrap();
        match circ.input {
            InputState::Amplitudes(s) => assert_eq!(s.amplitudes(), &[c(0.6, 0.0), c(0.0, 0.8)]),
            _ => panic!(),
        }
        assert!(parse_circuit("qubits 1\ninput [1, 1]").is_err());
        assert!(parse_circuit("qubits 1\ninput [1]").is_err());
    }

    #[test]
    fn matrix_literal_written_order() {
        // cnot written as a literal with control 0, target 1
        let text = "qubits 2\ninput 1\nmycx [[1,0,0,0],[0,1,0,0],[0,0,0,1],[0,0,1,0]] 0 1";
        let circ = parse_circuit(text).unwrap();
        let out = super::super::circuit::simulate(&circ);
        assert_eq!(out.amplitudes(), &[ZERO, ZERO, ZERO, ONE]);
        assert!(parse_circuit("qubits 1\nu [[1, 1], [1, 1]] 0").is_err());
        assert!(parse_circuit("qubits 1\nx [[1, 0], [0, 1]] 0").is_err());
        assert!(parse_circuit("qubits 2\nu [[1, 0], [0, 1]] 0 1").is_err());
    }

    #[test]
    fn dsl_round_trip() {
        let text = "qubits 3\ninput [0.6, 0, 0, 0, 0, 0, 0, 0.8i]\ntrace 2\nh 0\nccx 0 1 2\nry(0.3) 1\nm [[0, 1], [1, 0]] 2\n";
        let circ = parse_circuit(text).unwrap();
        let again = parse_circuit(&circ.to_dsl()).unwrap();
        assert_eq!(circ, again);
    }
}
