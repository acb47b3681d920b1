//! Bounds for epimorphisms between surface groups, by classification.

use tcrlab::groups::{SurfaceClassification, SurfaceHom};
use tcrlab::invariants::surface_invariants;

fn main() {
    for class in [
        SurfaceClassification::FactorsThroughFree,
        SurfaceClassification::DoesNotFactor,
        SurfaceClassification::Unknown,
    ] {
        let h = SurfaceHom::new(3, 2, class).unwrap();
        for r in 2..=3 {
            let s = surface_invariants(&h, r).unwrap();
            println!(
                "{class}, r = {r}: cat = {}, cd = {}, TC_r = {}",
                s.cat.value, s.cd.value, s.tc_r.value
            );
        }
    }
}
