//! Exact TC_r of epimorphisms onto finitely generated abelian groups.

use tcrlab::groups::{AbelianHom, FgAbelianGroup};
use tcrlab::invariants::{cd_of_abelian_epi, tcr_of_abelian_epi};

fn main() {
    for (m, torsion) in [(1, vec![]), (1, vec![2, 4]), (2, vec![6]), (0, vec![2, 12])] {
        let target = FgAbelianGroup::with_torsion(m, &torsion).unwrap();
        let n = target.generator_count();
        let h = AbelianHom::canonical_projection(n, target).unwrap();
        let cd = cd_of_abelian_epi(&h).unwrap();
        let tcs: Vec<String> = (2..=5)
            .map(|r| tcr_of_abelian_epi(&h, r).unwrap().to_string())
            .collect();
        println!(
            "Z^{n} -> {}: cd = {cd}, TC_2..TC_5 = {}",
            h.target(),
            tcs.join(", ")
        );
    }
}
