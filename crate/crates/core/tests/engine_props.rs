mod common;

use std::collections::BTreeMap;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tcrlab::cuplength::cuplength_lower_bound;
use tcrlab::groups::{
    AbelianHom, FgAbelianGroup, FreeGroup, FreeHom, SurfaceClassification, SurfaceHom,
};
use tcrlab::invariants::{
    cd_of_abelian_epi, compute, evaluate, replay, tcr_of_abelian_epi, Bound, HomSpec,
    InvariantKind, InvariantValue, NilpotentFacts, NilpotentFlavor, Query, Rule,
};

fn torsion_chain() -> impl Strategy<Value = Vec<i64>> {
    prop_oneof![
        Just(vec![]),
        Just(vec![2]),
        Just(vec![3]),
        Just(vec![6]),
        Just(vec![2, 4]),
        Just(vec![2, 6]),
        Just(vec![6, 12]),
        Just(vec![2, 2, 4]),
    ]
}

/// Epimorphism `ℤ^n ↠ ℤ^m ⊕ T` given by a random matrix, with the expected
/// values `m + k(T)` computed from the chosen invariants.
fn abelian_epi() -> impl Strategy<Value = (AbelianHom, u64)> {
    (0usize..=2, torsion_chain(), 0usize..=2, any::<u64>()).prop_map(|(m, t, extra, seed)| {
        let target = FgAbelianGroup::with_torsion(m, &t).unwrap();
        let n = target.generator_count() + extra;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = (0..50)
            .map(|_| {
                AbelianHom::new(
                    FgAbelianGroup::free(n),
                    target.clone(),
                    random_matrix(&mut rng, target.generator_count(), n, 2),
                )
                .unwrap()
            })
            .find(|h| h.is_epimorphism().unwrap())
            .unwrap_or_else(|| AbelianHom::canonical_projection(n, target.clone()).unwrap());
        (h, (m + t.len()) as u64)
    })
}

/// Arbitrary well-defined abelian homomorphism, epi or not.
fn abelian_hom() -> impl Strategy<Value = AbelianHom> {
    (
        0usize..=2,
        torsion_chain(),
        0usize..=2,
        torsion_chain(),
        any::<u64>(),
    )
        .prop_map(|(ms, ts, mt, tt, seed)| {
            let s = FgAbelianGroup::with_torsion(ms, &ts).unwrap();
            let t = FgAbelianGroup::with_torsion(mt, &tt).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..100)
                .map(|_| {
                    AbelianHom::new(
                        s.clone(),
                        t.clone(),
                        random_matrix(&mut rng, t.generator_count(), s.generator_count(), 3),
                    )
                    .unwrap()
                })
                .find(AbelianHom::check_well_defined)
                .unwrap_or_else(|| {
                    AbelianHom::new(
                        s.clone(),
                        t.clone(),
                        tcrlab::linalg::IntegerMatrix::zeros(
                            t.generator_count(),
                            s.generator_count(),
                        ),
                    )
                    .unwrap()
                })
        })
}

fn free_hom() -> impl Strategy<Value = FreeHom> {
    (
        1usize..=3,
        1usize..=3,
        proptest::collection::vec(
            proptest::collection::vec(prop_oneof![1i32..=3, -3i32..=-1], 0..=3),
            3,
        ),
    )
        .prop_map(|(s, t, words)| {
            let images = words[..s]
                .iter()
                .map(|w| {
                    w.iter()
                        .map(|&x| x.signum() * (1 + (x.abs() - 1) % t as i32))
                        .collect()
                })
                .collect();
            FreeHom::new(
                FreeGroup::new(s).unwrap(),
                FreeGroup::new(t).unwrap(),
                images,
            )
            .unwrap()
        })
}

fn any_spec() -> impl Strategy<Value = HomSpec> {
    prop_oneof![
        abelian_epi().prop_map(|(h, _)| HomSpec::Abelian(h)),
        abelian_hom().prop_map(HomSpec::Abelian),
        free_hom().prop_map(HomSpec::Free),
        (
            1usize..=3,
            1usize..=3,
            prop_oneof![
                Just(SurfaceClassification::FactorsThroughFree),
                Just(SurfaceClassification::DoesNotFactor)
            ]
        )
            .prop_map(|(g, h, c)| HomSpec::Surface(SurfaceHom::new(g.max(h), h, c).unwrap())),
        (
            0u64..=3,
            prop_oneof![
                Just(NilpotentFlavor::Nilpotent),
                Just(NilpotentFlavor::AlmostNilpotent)
            ]
        )
            .prop_map(|(cd_target, flavor)| HomSpec::Nilpotent(NilpotentFacts {
                cd_target,
                flavor
            })),
    ]
}

fn value(spec: &HomSpec, r: u32, inv: InvariantKind, closed: bool) -> InvariantValue {
    let mut q = Query::new(spec.clone(), r, inv);
    if !closed {
        q = q.without_closed_forms();
    }
    compute(&q).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn abelian_epis_match_the_formula((h, mk) in abelian_epi(), r in 2u32..=5) {
        let spec = HomSpec::Abelian(h.clone());
        prop_assert_eq!(cd_of_abelian_epi(&h).unwrap(), InvariantValue::exact(mk));
        prop_assert_eq!(tcr_of_abelian_epi(&h, r).unwrap(), InvariantValue::exact((r as u64 - 1) * mk));
        prop_assert_eq!(value(&spec, r, InvariantKind::TcR, true), InvariantValue::exact((r as u64 - 1) * mk));
        prop_assert_eq!(value(&spec, r, InvariantKind::Cat, true), InvariantValue::exact(mk));
    }

    #[test]
    fn propagation_alone_is_sound((h, mk) in abelian_epi(), r in 2u32..=4) {
        let spec = HomSpec::Abelian(h);
        let expected = [(InvariantKind::Cat, mk), (InvariantKind::Cd, mk), (InvariantKind::TcR, (r as u64 - 1) * mk)];
        for (inv, v) in expected {
            let open = value(&spec, r, inv, false);
            prop_assert!(open.contains(Bound::Finite(v)), "{:?}: {} does not contain {}", inv, open, v);
        }
    }

    #[test]
    fn closed_forms_refine_propagation(spec in any_spec(), r in 2u32..=4) {
        for inv in InvariantKind::ALL {
            let closed = value(&spec, r, inv, true);
            let open = value(&spec, r, inv, false);
            prop_assert!(open.encloses(&closed), "{:?}: {} vs {}", inv, open, closed);
        }
    }

    #[test]
    fn traces_replay_and_narrow(spec in any_spec(), r in 2u32..=4, closed in any::<bool>()) {
        let mut q = Query::new(spec, r, InvariantKind::TcR);
        if !closed {
            q = q.without_closed_forms();
        }
        let ev = evaluate(&q).unwrap();
        let trace = ev.engine.trace();
        prop_assert_eq!(replay(trace), Ok(()));
        let mut last: BTreeMap<String, InvariantValue> = BTreeMap::new();
        for step in trace {
            let key = step.fact.to_string();
            if let Some(prev) = last.get(&key) {
                prop_assert!(prev.encloses(&step.value), "{} widened from {} to {}", key, prev, step.value);
            }
            last.insert(key, step.value);
        }
        // A second pass changes nothing.
        let mut again = ev.engine.clone();
        again.propagate().unwrap();
        prop_assert_eq!(again.trace().len(), trace.len());
        prop_assert_eq!(again.facts(), ev.engine.facts());
    }

    #[test]
    fn every_report_is_justified(spec in any_spec(), r in 2u32..=4) {
        for inv in InvariantKind::ALL {
            let report = compute(&Query::new(spec.clone(), r, inv)).unwrap();
            prop_assert!(!report.trace.is_empty());
            prop_assert_eq!(report.trace.last().unwrap().value, report.value);
            prop_assert_eq!(replay(&report.trace), Ok(()));
            let cited = report.trace.iter().any(|s| {
                s.citation.starts_with("plumbing")
                    || ["Theorem ", "Proposition ", "Corollary ", "Section "].iter().any(|p| s.citation.starts_with(p))
            });
            prop_assert!(cited);
        }
    }

    #[test]
    fn torsion_image_forces_infinity(h in abelian_hom(), r in 2u32..=4) {
        prop_assume!(h.torsion_image_is_nonzero());
        let hs = HomSpec::Abelian(h);
        for inv in InvariantKind::ALL {
            let report = compute(&Query::new(hs.clone(), r, inv)).unwrap();
            prop_assert_eq!(report.value, InvariantValue::infinite());
            prop_assert!(report.trace.iter().any(|s| s.rule == Rule::R11));
        }
    }

    #[test]
    fn cup_length_stays_below_the_upper_bound(n in 0usize..=3, m in 0usize..=3, seed in any::<u64>(), r in 2u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = AbelianHom::new(FgAbelianGroup::free(n), FgAbelianGroup::free(m), random_matrix(&mut rng, m, n, 2)).unwrap();
        let lower = cuplength_lower_bound(h.matrix(), r as usize).unwrap().value as u64;
        let tc = value(&HomSpec::Abelian(h.clone()), r, InvariantKind::TcR, true);
        prop_assert!(Bound::Finite(lower) <= tc.hi());
        if h.is_epimorphism().unwrap() {
            prop_assert_eq!(tc, InvariantValue::exact(lower));
        }
    }
}

#[test]
fn infinite_premises_give_infinite_upper_bounds() {
    for k in 1..5 {
        assert_eq!(
            InvariantValue::infinite().times(k),
            InvariantValue::infinite()
        );
        assert_eq!(
            InvariantValue::at_least(Bound::Finite(2)).times(k).hi(),
            Bound::Infinite
        );
    }
    assert_eq!(
        InvariantValue::infinite().times(0),
        InvariantValue::exact(0)
    );
}
