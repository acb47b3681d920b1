//! Interval bounds for nilpotent and almost nilpotent targets, given the
//! cohomological dimension of the target.

use tcrlab::invariants::{nilpotent_tcr_bounds, NilpotentFacts, NilpotentFlavor};

fn main() {
    for flavor in [NilpotentFlavor::Nilpotent, NilpotentFlavor::AlmostNilpotent] {
        for cd_target in 1..=3 {
            let facts = NilpotentFacts { cd_target, flavor };
            let bounds: Vec<String> = (2..=4)
                .map(|r| nilpotent_tcr_bounds(&facts, r).unwrap().to_string())
                .collect();
            println!(
                "{flavor:?}, cd(target) = {cd_target}: cat = cd = {}, TC_2..TC_4 = {}",
                facts.cat_cd(),
                bounds.join(", ")
            );
        }
    }
}
