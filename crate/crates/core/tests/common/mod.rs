#![allow(dead_code)]

use qsdiag::channels::{Axis, ChannelKind, ChannelSpec, DeformationKind, Direction};
use qsdiag::kraus::KrausChannel;
use qsdiag::matrix::c;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const TWO_OPERATOR_KINDS: [ChannelKind; 9] = [
    ChannelKind::Deformation(DeformationKind::BitFlip),
    ChannelKind::Deformation(DeformationKind::BitPhaseFlip),
    ChannelKind::Deformation(DeformationKind::PhaseFlip),
    ChannelKind::AmpDamp(Axis::Z, Direction::Plus),
    ChannelKind::AmpDamp(Axis::Z, Direction::Minus),
    ChannelKind::AmpDamp(Axis::X, Direction::Plus),
    ChannelKind::AmpDamp(Axis::X, Direction::Minus),
    ChannelKind::AmpDamp(Axis::Y, Direction::Plus),
    ChannelKind::AmpDamp(Axis::Y, Direction::Minus),
];

/// Every factory channel at `theta` (in [0, π]); the general depolarizing
/// channel gets a fixed uneven environment.
pub fn factory_channels(theta: f64) -> Vec<KrausChannel> {
    ChannelKind::ALL
        .iter()
        .map(|&kind| match kind {
            ChannelKind::DepolarizingGeneral => {
                let (s, co) = theta.sin_cos();
                let w = [c(co, 0.0), c(0.6 * s, 0.0), c(0.0, 0.48 * s), c(0.64 * s, 0.0)];
                ChannelSpec::depolarizing_general(w).build().unwrap()
            }
            _ => ChannelSpec::new(kind, theta).build().unwrap(),
        })
        .collect()
}

/// `n` angles spread over [0, π], endpoints included.
pub fn theta_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| PI * k as f64 / (n - 1) as f64).collect()
}
