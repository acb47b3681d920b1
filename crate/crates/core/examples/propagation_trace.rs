//! Re-deriving TC_r with closed forms disabled, and printing the trace.

use tcrlab::groups::{AbelianHom, FgAbelianGroup};
use tcrlab::invariants::{compute, replay, HomSpec, InvariantKind, Query};

fn main() {
    let h = AbelianHom::canonical_projection(2, FgAbelianGroup::free(1)).unwrap();
    for disable in [true, false] {
        let mut q = Query::new(HomSpec::Abelian(h.clone()), 3, InvariantKind::TcR);
        if disable {
            q = q.without_closed_forms();
        }
        let report = compute(&q).unwrap();
        println!(
            "closed forms {}: TC_3 = {}",
            if disable { "off" } else { "on" },
            report.value
        );
        for (i, step) in report.trace.iter().enumerate() {
            println!("  {}", step.summary(i, 3));
        }
        assert!(replay(&report.trace).is_ok());
    }
}
