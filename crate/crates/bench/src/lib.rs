//! Fixed workloads shared by the criterion benches in `benches/`.

use toric_core::{PlaneParams, SectionProblem, TorusParams};

/// Named configurations: (label, R, r, alpha, phi, rho), angles in radians.
pub const CASES: [(&str, f64, f64, f64, f64, f64); 4] = [
    ("lemniscate", 2.0, 1.0, 0.0, 0.0, 1.0),
    (
        "villarceau",
        2.0,
        1.0,
        0.0,
        std::f64::consts::FRAC_PI_3,
        0.0,
    ),
    ("cassini", 3.0, 1.0, 0.0, 0.0, 1.0),
    ("generic", 3.0, 1.0, 0.35, 0.4, 0.6),
];

pub fn case(label: &str) -> SectionProblem {
    let (_, big, small, alpha, phi, rho) = CASES
        .iter()
        .copied()
        .find(|c| c.0 == label)
        .unwrap_or_else(|| panic!("unknown case {label}"));
    SectionProblem::new(
        TorusParams::new(big, small).expect("valid torus"),
        PlaneParams::new(alpha, phi, rho).expect("valid plane"),
    )
}

#[cfg(test)]
mod tests {
    #[test]
    fn cases_build() {
        for c in super::CASES {
            super::case(c.0);
        }
    }
}
