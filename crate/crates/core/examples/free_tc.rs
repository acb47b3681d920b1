//! TC_r of epimorphisms between free groups.

use tcrlab::groups::{FreeGroup, FreeHom};
use tcrlab::invariants::{cat_cd_of_free_epi, tcr_of_free_epi};

fn main() {
    let onto_z = FreeHom::new(
        FreeGroup::new(3).unwrap(),
        FreeGroup::new(1).unwrap(),
        vec![vec![1], vec![1], vec![-1]],
    )
    .unwrap();
    let onto_f2 = FreeHom::new(
        FreeGroup::new(3).unwrap(),
        FreeGroup::new(2).unwrap(),
        vec![vec![1], vec![2], vec![1, 2]],
    )
    .unwrap();
    for (name, h) in [("F_3 -> Z", &onto_z), ("F_3 -> F_2", &onto_f2)] {
        let cat = cat_cd_of_free_epi(h).unwrap();
        let tcs: Vec<String> = (2..=4)
            .map(|r| tcr_of_free_epi(h, r).unwrap().to_string())
            .collect();
        println!("{name}: cat = cd = {cat}, TC_2..TC_4 = {}", tcs.join(", "));
    }
}
