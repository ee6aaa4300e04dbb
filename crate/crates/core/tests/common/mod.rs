#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, TAU};
use toric_core::{PlaneParams, SectionProblem, TorusParams};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn problem(big: f64, small: f64, alpha: f64, phi: f64, rho: f64) -> SectionProblem {
    SectionProblem::new(
        TorusParams::new(big, small).unwrap(),
        PlaneParams::new(alpha, phi, rho).unwrap(),
    )
}

pub fn random_torus(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let big = rng.gen_range(0.5..10.0);
    let small = rng.gen_range(0.05..=1.0) * big;
    (big, small)
}

/// Any admissible parameters, including empty sections.
pub fn random_problem(rng: &mut ChaCha8Rng) -> SectionProblem {
    let (big, small) = random_torus(rng);
    let phi = rng.gen_range(-FRAC_PI_2..=FRAC_PI_2);
    let rho = rng.gen_range(0.0..(big + small));
    problem(big, small, rng.gen_range(0.0..TAU), phi, rho)
}

/// Non-horizontal plane with `|phi|` in `phi_range` that cuts the torus.
pub fn random_cutting(rng: &mut ChaCha8Rng, phi_lo: f64, phi_hi: f64) -> SectionProblem {
    let (big, small) = random_torus(rng);
    let mut phi = rng.gen_range(phi_lo..phi_hi);
    if rng.gen_bool(0.5) {
        phi = -phi;
    }
    let reach = big * phi.cos().abs() + small;
    let rho = rng.gen_range(0.0..0.95) * reach;
    problem(big, small, rng.gen_range(0.0..TAU), phi, rho)
}
