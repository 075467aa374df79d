#![allow(dead_code)]

use qpsurf::surface::{add_punctures_with, once_punctured_genus, sphere_base, MarkedSurface, Triangulation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Case {
    pub name: String,
    pub triangulation: Triangulation,
    pub scalars: Option<&'static str>,
}

/// Torus, tetrahedron, bipyramid, octahedron.
pub fn named_cases() -> Vec<Case> {
    vec![
        Case { name: "torus".into(), triangulation: once_punctured_genus(1).unwrap(), scalars: None },
        Case { name: "tetrahedron".into(), triangulation: sphere_base(4).unwrap(), scalars: Some("2,3,5,7") },
        Case { name: "bipyramid".into(), triangulation: sphere_base(5).unwrap(), scalars: None },
        Case { name: "octahedron".into(), triangulation: sphere_base(6).unwrap(), scalars: None },
    ]
}

pub const MAX_ARCS: usize = 18;

/// Random chains of puncture insertions starting from the three sphere bases
/// and the once-punctured surfaces of genus 1 to 3, never exceeding
/// `MAX_ARCS` arcs.
pub fn random_cases(count: usize, seed: u64) -> Vec<Case> {
    let bases: Vec<(String, Triangulation)> = vec![
        ("sphere4".into(), sphere_base(4).unwrap()),
        ("sphere5".into(), sphere_base(5).unwrap()),
        ("sphere6".into(), sphere_base(6).unwrap()),
        ("genus1".into(), once_punctured_genus(1).unwrap()),
        ("genus2".into(), once_punctured_genus(2).unwrap()),
        ("genus3".into(), once_punctured_genus(3).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let (name, base) = &bases[k % bases.len()];
            let room = (MAX_ARCS - base.arc_count()) / 3;
            let extra = rng.gen_range(1..=room);
            let t = add_punctures_with(base, extra, &mut rng).unwrap();
            Case { name: format!("{name}+{extra}#{k}"), triangulation: t, scalars: None }
        })
        .collect()
}

/// Every (genus, punctures) with genus ≤ 3, punctures ≤ 8 that admits a
/// triangulation with valence at least 3.
pub fn existence_family() -> Vec<MarkedSurface> {
    let mut out = Vec::new();
    for g in 0..=3 {
        for p in 1..=8 {
            if g == 0 && p < 4 {
                continue;
            }
            out.push(MarkedSurface::new(g, p).unwrap());
        }
    }
    out
}
