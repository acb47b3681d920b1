//! Normal forms of finitely generated abelian groups and checks on
//! homomorphisms between them.

use tcrlab::groups::{normalize_presentation, AbelianHom, FgAbelianGroup};
use tcrlab::linalg::IntegerMatrix;

fn main() {
    // Z^3 modulo the columns (2, 0, 0) and (0, 6, 4).
    let relations = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 6], vec![0, 4]]).unwrap();
    let g = normalize_presentation(3, &relations).unwrap();
    println!("Z^3 / <(2,0,0), (0,6,4)> = {g}");
    println!("Smith Normal number: {}", g.smith_normal_number());

    let target = FgAbelianGroup::with_torsion(1, &[2, 4]).unwrap();
    let h = AbelianHom::canonical_projection(3, target).unwrap();
    println!("{} -> {}", h.source(), h.target());
    println!("  well defined: {}", h.check_well_defined());
    println!("  epimorphism:  {}", h.is_epimorphism().unwrap());
    println!("  injective:    {}", h.is_injective().unwrap());

    let source = FgAbelianGroup::with_torsion(1, &[2]).unwrap();
    let onto_z2 = AbelianHom::new(
        source,
        FgAbelianGroup::with_torsion(0, &[2]).unwrap(),
        IntegerMatrix::from_rows(&[vec![0, 1]]).unwrap(),
    )
    .unwrap();
    println!(
        "{} -> {}: torsion image nonzero = {}",
        onto_z2.source(),
        onto_z2.target(),
        onto_z2.torsion_image_is_nonzero()
    );
}
