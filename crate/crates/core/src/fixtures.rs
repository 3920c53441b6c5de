//! Small named quivers used by tests, the acceptance suite and the CLI.

use crate::exceptional::{gen_surface_quiver, SurfaceKind};
use crate::quiver::GentleQuiver;

pub const A2: &str = include_str!("../fixtures/a2.gq");
pub const A3: &str = include_str!("../fixtures/a3.gq");
pub const KRONECKER: &str = include_str!("../fixtures/kronecker.gq");
pub const DELTA1: &str = include_str!("../fixtures/delta1.gq");
pub const DELTA2: &str = include_str!("../fixtures/delta2.gq");
pub const LOOP: &str = include_str!("../fixtures/loop.gq");

fn parse(text: &str) -> GentleQuiver {
    GentleQuiver::parse(text).expect("bundled fixture parses")
}

pub fn a2() -> GentleQuiver {
    parse(A2)
}

pub fn a3() -> GentleQuiver {
    parse(A3)
}

pub fn kronecker() -> GentleQuiver {
    parse(KRONECKER)
}

/// Annulus with five ○-points, acyclic quiver.
pub fn delta1() -> GentleQuiver {
    parse(DELTA1)
}

/// Same annulus, quiver with an oriented 3-cycle.
pub fn delta2() -> GentleQuiver {
    parse(DELTA2)
}

/// `k[a]/(a^2)`.
pub fn loop_nilpotent() -> GentleQuiver {
    parse(LOOP)
}

/// Linear `A_n` (`1 -> 2 -> ... -> n`) without relations.
pub fn linear(n: usize) -> GentleQuiver {
    let mut q = GentleQuiver::new();
    for v in 1..=n {
        q.add_vertex(&v.to_string()).unwrap();
    }
    for v in 1..n {
        q.add_arrow(&format!("a{v}"), &v.to_string(), &(v + 1).to_string())
            .unwrap();
    }
    q
}

/// Named, gentle, finite-dimensional quivers covering disks, annuli,
/// punctured and higher-genus surfaces.
pub fn corpus() -> Vec<(String, GentleQuiver)> {
    let mut out = vec![
        ("a2".to_string(), a2()),
        ("a3".to_string(), a3()),
        ("kronecker".to_string(), kronecker()),
        ("delta1".to_string(), delta1()),
        ("delta2".to_string(), delta2()),
        ("loop".to_string(), loop_nilpotent()),
        ("a5".to_string(), linear(5)),
    ];
    for g in 1..=2 {
        out.push((
            format!("t{g}12"),
            gen_surface_quiver(SurfaceKind::OneBoundaryTwoPoints, g).unwrap(),
        ));
        out.push((
            format!("t{g}22"),
            gen_surface_quiver(SurfaceKind::TwoBoundariesTwoPoints, g).unwrap(),
        ));
    }
    out
}
