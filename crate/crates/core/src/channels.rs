//! Factory for the single-qubit error channels: rotations, deformations
//! (bit / bit-phase / phase flip), displacements (the amplitude-damping
//! family along ±x, ±y, ±z) and the depolarizing channel.
//!
//! Direction convention for displacements: `*_plus` drives every state to
//! the positive pole of its axis, `*_minus` to the negative pole. The z
//! pair uses the standard damping operators (towards |0⟩) and their
//! reversal (towards |1⟩). The x and y variants are the standard operators
//! conjugated as `U† F U` by one of the two sign choices of the 45° axis
//! rotations, picked so the fixed point lands on the requested pole:
//!
//! | kind              | U                       | fixed point        |
//! |-------------------|-------------------------|--------------------|
//! | `amp_damp_x_plus` | (1/√2)[[1, 1], [−1, 1]] | (|0⟩ + |1⟩)/√2     |
//! | `amp_damp_x_minus`| (1/√2)[[1, −1], [1, 1]] | (|0⟩ − |1⟩)/√2     |
//! | `amp_damp_y_plus` | (1/√2)[[1, −i], [−i, 1]]| (|0⟩ + i|1⟩)/√2    |
//! | `amp_damp_y_minus`| (1/√2)[[1, i], [i, 1]]  | (|0⟩ − i|1⟩)/√2    |
//!
//! The standard depolarizing weights are cos²θ and sin²θ/3; θ in [0, π/2]
//! already covers every distinct channel action, larger θ is accepted.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use crate::angle::parse_angle;
use crate::error::{Error, Result};
use crate::kraus::KrausChannel;
use crate::matrix::{c, pauli, ComplexMatrix, C64, I, ONE, ZERO};
use crate::state::PureState;
use crate::TOL_ALGEBRAIC;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeformationKind {
    BitFlip,
    BitPhaseFlip,
    PhaseFlip,
}

impl DeformationKind {
    pub fn pauli(self) -> ComplexMatrix {
        match self {
            DeformationKind::BitFlip => pauli::x(),
            DeformationKind::BitPhaseFlip => pauli::y(),
            DeformationKind::PhaseFlip => pauli::z(),
        }
    }

    /// Bloch axis left untouched by the deformation.
    pub fn axis(self) -> Axis {
        match self {
            DeformationKind::BitFlip => Axis::X,
            DeformationKind::BitPhaseFlip => Axis::Y,
            DeformationKind::PhaseFlip => Axis::Z,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    Identity,
    Rotation(Axis),
    Deformation(DeformationKind),
    AmpDamp(Axis, Direction),
    DepolarizingGeneral,
    DepolarizingStandard,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 15] = [
        ChannelKind::Identity,
        ChannelKind::Rotation(Axis::X),
        ChannelKind::Rotation(Axis::Y),
        ChannelKind::Rotation(Axis::Z),
        ChannelKind::Deformation(DeformationKind::BitFlip),
        ChannelKind::Deformation(DeformationKind::BitPhaseFlip),
        ChannelKind::Deformation(DeformationKind::PhaseFlip),
        ChannelKind::AmpDamp(Axis::Z, Direction::Minus),
        ChannelKind::AmpDamp(Axis::Z, Direction::Plus),
        ChannelKind::AmpDamp(Axis::X, Direction::Minus),
        ChannelKind::AmpDamp(Axis::X, Direction::Plus),
        ChannelKind::AmpDamp(Axis::Y, Direction::Minus),
        ChannelKind::AmpDamp(Axis::Y, Direction::Plus),
        ChannelKind::DepolarizingGeneral,
        ChannelKind::DepolarizingStandard,
    ];

    pub fn name(self) -> &'static str {
        use Axis::*;
        use Direction::*;
        match self {
            ChannelKind::Identity => "identity",
            ChannelKind::Rotation(X) => "rotation_x",
            ChannelKind::Rotation(Y) => "rotation_y",
            ChannelKind::Rotation(Z) => "rotation_z",
            ChannelKind::Deformation(DeformationKind::BitFlip) => "bit_flip",
            ChannelKind::Deformation(DeformationKind::BitPhaseFlip) => "bit_phase_flip",
            ChannelKind::Deformation(DeformationKind::PhaseFlip) => "phase_flip",
            ChannelKind::AmpDamp(Z, Minus) => "amp_damp_z_minus",
            ChannelKind::AmpDamp(Z, Plus) => "amp_damp_z_plus",
            ChannelKind::AmpDamp(X, Minus) => "amp_damp_x_minus",
            ChannelKind::AmpDamp(X, Plus) => "amp_damp_x_plus",
            ChannelKind::AmpDamp(Y, Minus) => "amp_damp_y_minus",
            ChannelKind::AmpDamp(Y, Plus) => "amp_damp_y_plus",
            ChannelKind::DepolarizingGeneral => "depolarizing_general",
            ChannelKind::DepolarizingStandard => "depolarizing_standard",
        }
    }
}

impl FromStr for ChannelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ChannelKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Format(format!("unknown channel kind `{s}`")))
    }
}

/// A channel request: kind, intensity θ (radians) and, for the generalized
/// depolarizing channel, the two-qubit environment amplitudes (α, β, γ, δ).
///
/// Text form: `kind:theta[:alpha,beta,gamma,delta]`, θ accepting `pi/4`
/// style values.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    pub theta: f64,
    pub env_amplitudes: Option<[C64; 4]>,
}

impl ChannelSpec {
    pub fn new(kind: ChannelKind, theta: f64) -> Self {
        Self { kind, theta, env_amplitudes: None }
    }

    pub fn depolarizing_general(amplitudes: [C64; 4]) -> Self {
        Self { kind: ChannelKind::DepolarizingGeneral, theta: 0.0, env_amplitudes: Some(amplitudes) }
    }

    pub fn build(&self) -> Result<KrausChannel> {
        match self.kind {
            ChannelKind::Identity => Ok(KrausChannel::identity(2)),
            ChannelKind::Rotation(axis) => Ok(make_rotation(axis, self.theta)),
            ChannelKind::Deformation(kind) => make_deformation(kind, self.theta),
            ChannelKind::AmpDamp(axis, dir) => make_amp_damp(axis, dir, self.theta),
            ChannelKind::DepolarizingStandard => make_depolarizing_standard(self.theta),
            ChannelKind::DepolarizingGeneral => {
                let amps = self
                    .env_amplitudes
                    .ok_or_else(|| Error::Format("depolarizing_general needs alpha,beta,gamma,delta".into()))?;
                make_depolarizing_general(&amps)
            }
        }
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.name(), self.theta)?;
        if let Some(a) = &self.env_amplitudes {
            let parts: Vec<String> = a.iter().map(|z| format_amplitude(*z)).collect();
            write!(f, ":{}", parts.join(","))?;
        }
        Ok(())
    }
}

fn format_amplitude(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

/// `a`, `bi`, `a+bi`, `a-bi`.
pub(crate) fn parse_amplitude(s: &str) -> Option<C64> {
    let s = s.trim();
    if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not an exponent sign or the leading sign
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        return match split {
            Some(k) => {
                let re = body[..k].parse::<f64>().ok()?;
                let im_txt = &body[k..];
                let im = if im_txt == "+" || im_txt == "-" { format!("{im_txt}1") } else { im_txt.to_string() };
                Some(c(re, im.parse().ok()?))
            }
            None => {
                let im = match body {
                    "" | "+" => 1.0,
                    "-" => -1.0,
                    b => b.parse().ok()?,
                };
                Some(c(0.0, im))
            }
        };
    }
    s.parse::<f64>().ok().map(|x| c(x, 0.0))
}

impl FromStr for ChannelSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().splitn(3, ':');
        let kind: ChannelKind = parts.next().unwrap_or_default().parse()?;
        let theta = match parts.next() {
            Some(t) => parse_angle(t).ok_or_else(|| Error::Format(format!("bad angle `{t}`")))?,
            None if kind == ChannelKind::Identity || kind == ChannelKind::DepolarizingGeneral => 0.0,
            None => return Err(Error::Format(format!("`{}` needs a θ value", kind.name()))),
        };
        let env_amplitudes = match parts.next() {
            Some(list) => {
                let amps: Vec<C64> = list
                    .split(',')
                    .map(|a| parse_amplitude(a).ok_or_else(|| Error::Format(format!("bad amplitude `{a}`"))))
                    .collect::<Result<_>>()?;
                let arr: [C64; 4] = amps
                    .try_into()
                    .map_err(|v: Vec<C64>| Error::Format(format!("expected 4 amplitudes, got {}", v.len())))?;
                Some(arr)
            }
            None => None,
        };
        if env_amplitudes.is_some() && kind != ChannelKind::DepolarizingGeneral {
            return Err(Error::Format(format!("`{}` takes no amplitudes", kind.name())));
        }
        Ok(ChannelSpec { kind, theta, env_amplitudes })
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::OutOfRange(format!("θ = {theta} outside [0, π]")));
    }
    Ok(())
}

/// Rotation-error operator for an axis. The Bloch action is
///
/// * x: `Y′ = cos θ Y − sin θ Z`, `Z′ = sin θ Y + cos θ Z`
/// * y: `X′ = cos θ X − sin θ Z`, `Z′ = sin θ X + cos θ Z`
/// * z: `X′ = cos θ X − sin θ Y`, `Y′ = sin θ X + cos θ Y`
///
/// For y this is `[[cos θ/2, sin θ/2], [−sin θ/2, cos θ/2]]`, i.e. the
/// circuit gate `ry(−θ)`.
pub fn rotation_matrix(axis: Axis, theta: f64) -> ComplexMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    match axis {
        Axis::X => ComplexMatrix::from_rows(&[[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]]),
        Axis::Y => ComplexMatrix::from_real_rows(&[[co, s], [-s, co]]),
        Axis::Z => ComplexMatrix::diag(&[c(co, -s), c(co, s)]),
    }
}

/// Single-operator channel applying the axis rotation by θ.
pub fn make_rotation(axis: Axis, theta: f64) -> KrausChannel {
    let name = ChannelKind::Rotation(axis).name();
    KrausChannel::new(vec![rotation_matrix(axis, theta)]).expect("2x2 operator").with_name(name)
}

/// `{|cos θ/2| I, |sin θ/2| σ}`, zero operators pruned.
pub fn make_deformation(kind: DeformationKind, theta: f64) -> Result<KrausChannel> {
    check_theta(theta)?;
    let (s, co) = (theta / 2.0).sin_cos();
    let ops = vec![ComplexMatrix::identity(2).scale(c(co.abs(), 0.0)), kind.pauli().scale(c(s.abs(), 0.0))];
    Ok(KrausChannel::new(ops)?.pruned().with_name(ChannelKind::Deformation(kind).name()))
}

/// Standard amplitude damping towards |0⟩.
fn damping_toward_zero(theta: f64) -> [ComplexMatrix; 2] {
    let (s, co) = (theta / 2.0).sin_cos();
    [
        ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, co]]),
        ComplexMatrix::from_real_rows(&[[0.0, s], [0.0, 0.0]]),
    ]
}

/// Reversed amplitude damping towards |1⟩.
fn damping_toward_one(theta: f64) -> [ComplexMatrix; 2] {
    let (s, co) = (theta / 2.0).sin_cos();
    [
        ComplexMatrix::from_real_rows(&[[co, 0.0], [0.0, 1.0]]),
        ComplexMatrix::from_real_rows(&[[0.0, 0.0], [s, 0.0]]),
    ]
}

/// The 45° rotation `U` used to carry the z displacement onto the x or y
/// axis (operators become `U† F U`). `None` for the z axis.
pub fn displacement_rotation(axis: Axis, dir: Direction) -> Option<ComplexMatrix> {
    let h = c(FRAC_1_SQRT_2, 0.0);
    let m = match (axis, dir) {
        (Axis::Z, _) => return None,
        (Axis::X, Direction::Plus) => ComplexMatrix::from_real_rows(&[[1.0, 1.0], [-1.0, 1.0]]),
        (Axis::X, Direction::Minus) => ComplexMatrix::from_real_rows(&[[1.0, -1.0], [1.0, 1.0]]),
        (Axis::Y, Direction::Plus) => ComplexMatrix::from_rows(&[[ONE, -I], [-I, ONE]]),
        (Axis::Y, Direction::Minus) => ComplexMatrix::from_rows(&[[ONE, I], [I, ONE]]),
    };
    Some(m.scale(h))
}

pub fn make_amp_damp(axis: Axis, dir: Direction, theta: f64) -> Result<KrausChannel> {
    check_theta(theta)?;
    let ops: Vec<ComplexMatrix> = match (axis, dir) {
        (Axis::Z, Direction::Plus) => damping_toward_zero(theta).to_vec(),
        (Axis::Z, Direction::Minus) => damping_toward_one(theta).to_vec(),
        _ => {
            let u = displacement_rotation(axis, dir).expect("x/y rotation");
            let ud = u.adjoint();
            damping_toward_zero(theta).iter().map(|f| &(&ud * f) * &u).collect()
        }
    };
    Ok(KrausChannel::new(ops)?.pruned().with_name(ChannelKind::AmpDamp(axis, dir).name()))
}

fn check_env(amps: &[C64; 4]) -> Result<()> {
    let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > TOL_ALGEBRAIC {
        return Err(Error::NotNormalized { norm_sq });
    }
    Ok(())
}

/// `{|α| I, |β| σx, |γ| σy, |δ| σz}`; amplitude phases do not change the
/// channel action and are dropped.
pub fn make_depolarizing_general(amps: &[C64; 4]) -> Result<KrausChannel> {
    check_env(amps)?;
    let paulis = [ComplexMatrix::identity(2), pauli::x(), pauli::y(), pauli::z()];
    let ops = paulis.iter().zip(amps).map(|(p, a)| p.scale(c(a.norm(), 0.0))).collect();
    Ok(KrausChannel::new(ops)?.pruned().with_name(ChannelKind::DepolarizingGeneral.name()))
}

/// Environment populations cos²θ on |00⟩ and sin²θ/3 on the other three.
pub fn standard_depolarizing_env(theta: f64) -> [C64; 4] {
    let w = theta.sin() / 3f64.sqrt();
    [c(theta.cos(), 0.0), c(w, 0.0), c(w, 0.0), c(w, 0.0)]
}

/// `{cos θ I, sin θ/√3 σx, sin θ/√3 σy, sin θ/√3 σz}`.
pub fn make_depolarizing_standard(theta: f64) -> Result<KrausChannel> {
    check_theta(theta)?;
    let w = c(theta.sin() / 3f64.sqrt(), 0.0);
    let ops = vec![
        ComplexMatrix::identity(2).scale(c(theta.cos(), 0.0)),
        pauli::x().scale(w),
        pauli::y().scale(w),
        pauli::z().scale(w),
    ];
    Ok(KrausChannel::new(ops)?.pruned().with_name(ChannelKind::DepolarizingStandard.name()))
}

/// Single-qubit environment `cos(θ/2)|0⟩ + sin(θ/2)|1⟩` of the deformation
/// circuits.
pub fn deformation_env(theta: f64) -> PureState {
    let (s, co) = (theta / 2.0).sin_cos();
    PureState::new(vec![c(co, 0.0), c(s, 0.0)]).expect("normalized by construction")
}

/// Controlled-σ with the environment (MSB) as control.
pub fn deformation_unitary(kind: DeformationKind) -> ComplexMatrix {
    let p0 = ComplexMatrix::diag(&[ONE, ZERO]);
    let p1 = ComplexMatrix::diag(&[ZERO, ONE]);
    &p0.kron(&ComplexMatrix::identity(2)) + &p1.kron(&kind.pauli())
}

/// Two-qubit unitary (environment MSB, prepared in |0⟩) realizing standard
/// amplitude damping: a rotation by θ/2 inside the {|01⟩, |10⟩} subspace.
pub fn amp_damp_unitary(theta: f64) -> ComplexMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    ComplexMatrix::from_real_rows(&[
        [1.0, 0.0, 0.0, 0.0],
        [0.0, co, -s, 0.0],
        [0.0, s, co, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
}

/// Three-qubit unitary applying I, σx, σy, σz to the system (LSB) when the
/// two environment qubits read 00, 01, 10, 11.
pub fn depolarizing_unitary() -> ComplexMatrix {
    let paulis = [ComplexMatrix::identity(2), pauli::x(), pauli::y(), pauli::z()];
    let mut u = ComplexMatrix::zeros(8, 8);
    for (k, p) in paulis.iter().enumerate() {
        let mut proj = ComplexMatrix::zeros(4, 4);
        proj[(k, k)] = ONE;
        u = &u + &proj.kron(p);
    }
    u
}
