//! Surjectivity of free-group homomorphisms by Stallings folding.

use tcrlab::groups::{FreeGroup, FreeHom};

fn main() {
    // Letters are signed generator indices starting at 1.
    let cases = [
        ("a, b, ab", vec![vec![1], vec![2], vec![1, 2]]),
        ("a^2, b, ab^-1", vec![vec![1, 1], vec![2], vec![1, -2]]),
        ("a^2, b^2, ab", vec![vec![1, 1], vec![2, 2], vec![1, 2]]),
    ];
    for (name, images) in cases {
        let h = FreeHom::new(
            FreeGroup::new(3).unwrap(),
            FreeGroup::new(2).unwrap(),
            images,
        )
        .unwrap();
        let graph = h.fold();
        println!(
            "F_3 -> F_2 on ({name}): folded graph has {} vertices, {} edges; surjective = {}",
            graph.vertex_count(),
            graph.edge_count(),
            h.is_surjective()
        );
    }
}
