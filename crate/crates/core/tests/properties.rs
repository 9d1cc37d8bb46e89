use std::sync::Arc;

use gnorm_core::coaction::Coaction;
use gnorm_core::derivation::Derivation;
use gnorm_core::group::{Factor, FiniteGroupScheme};
use gnorm_core::ideal::{divide_remainder, satisfies_buchberger};
use gnorm_core::{Ideal, MonomialOrder, MultiPoly, PolyRing, PrimeField, QuotientRing};
use proptest::prelude::*;

fn arb_poly(ring: Arc<PolyRing>, max_deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let n = ring.nvars();
    let p = ring.field().p();
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), 1..p), 1..=max_terms).prop_map(
        move |terms| {
            let terms = terms
                .into_iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= max_deg)
                .map(|(e, c)| (e.into_iter().collect(), c));
            MultiPoly::from_terms(&ring, terms)
        },
    )
}

fn arb_ring() -> impl Strategy<Value = Arc<PolyRing>> {
    (prop::sample::select(vec![2u64, 3, 5]), 1usize..=3).prop_map(|(p, n)| {
        let names = ["x", "y", "z"];
        PolyRing::new(PrimeField::new(p).unwrap(), &names[..n])
    })
}

fn arb_ideal() -> impl Strategy<Value = (Arc<PolyRing>, Vec<MultiPoly>)> {
    arb_ring().prop_flat_map(|r| {
        let gens = prop::collection::vec(arb_poly(r.clone(), 4, 3), 1..=3);
        (Just(r), gens)
    })
}

fn arb_order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::Lex),
        Just(MonomialOrder::DegRevLex),
        Just(MonomialOrder::Block(1)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduced_basis_satisfies_buchberger((r, gens) in arb_ideal(), order in arb_order()) {
        let i = Ideal::new(&r, gens.clone());
        let gb = i.groebner_basis(order);
        prop_assert!(satisfies_buchberger(&gb, order));
        for g in &gens {
            prop_assert!(divide_remainder(g, &gb, order).is_zero());
        }
    }

    #[test]
    fn basis_ignores_generator_order((r, gens) in arb_ideal(), order in arb_order()) {
        let a = Ideal::new(&r, gens.clone()).groebner_basis(order);
        let mut rev = gens.clone();
        rev.reverse();
        let b = Ideal::new(&r, rev).groebner_basis(order);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn colon_by_double_inclusion((r, gens) in arb_ideal(), other in 0usize..3, probe in 0usize..3) {
        let i = Ideal::new(&r, gens.clone());
        let j = Ideal::new(&r, vec![MultiPoly::var(&r, other % r.nvars())]);
        let c = i.quotient(&j);
        // (I : J)·J ⊆ I
        prop_assert!(i.contains_ideal(&c.mul(&j)));
        // f·J ⊆ I implies f ∈ (I : J)
        let f = gens[probe % gens.len()].mul(&MultiPoly::var(&r, 0));
        if i.contains_ideal(&Ideal::new(&r, vec![f.clone()]).mul(&j)) {
            prop_assert!(c.contains(&f));
        }
        prop_assert!(c.contains_ideal(&i));
    }

    #[test]
    fn saturation_is_stable((r, gens) in arb_ideal()) {
        let i = Ideal::new(&r, gens);
        let j = Ideal::new(&r, vec![MultiPoly::var(&r, 0)]);
        let (sat, s) = i.saturate(&j);
        prop_assert!(s >= 1);
        prop_assert!(sat.quotient(&j).same_as(&sat));
        prop_assert!(sat.contains_ideal(&i));
    }
}

fn cusp() -> QuotientRing {
    let r = PolyRing::new(PrimeField::new(2).unwrap(), &["x", "y"]);
    QuotientRing::new(Ideal::parse(&r, &["y^2 + x^3"]).unwrap()).unwrap()
}

fn cusp_poly() -> impl Strategy<Value = MultiPoly> {
    arb_poly(cusp().ring().clone(), 3, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn norm_is_multiplicative(f in cusp_poly(), g in cusp_poly(), mu in any::<bool>()) {
        let r = cusp();
        let (factor, img) = if mu { (Factor::mu(1), "T*y") } else { (Factor::alpha(1), "y + T") };
        let grp = Arc::new(FiniteGroupScheme::new(2, &[factor]).unwrap());
        let a = Coaction::parse(grp, r.clone(), &[("y", img)]).unwrap();
        let nfg = a.norm_invariant(&f.mul(&g)).unwrap();
        let nf = a.norm_invariant(&f).unwrap();
        let ng = a.norm_invariant(&g).unwrap();
        prop_assert!(r.is_zero(&nfg.sub(&nf.mul(&ng))));
    }

    #[test]
    fn derivations_satisfy_leibniz(f in cusp_poly(), g in cusp_poly(), scaling in any::<bool>()) {
        let r = cusp();
        let d = Derivation::parse(r.clone(), &[("y", if scaling { "y" } else { "1" })]).unwrap();
        let lhs = d.apply(&f.mul(&g));
        let rhs = d.apply(&f).mul(&g).add(&f.mul(&d.apply(&g)));
        prop_assert!(r.is_zero(&lhs.sub(&rhs)));
    }

    #[test]
    fn coaction_is_a_ring_map(f in cusp_poly(), g in cusp_poly()) {
        let r = cusp();
        let grp = Arc::new(FiniteGroupScheme::new(2, &[Factor::alpha(1)]).unwrap());
        let a = Coaction::parse(grp, r, &[("y", "y + T")]).unwrap();
        let lhs = a.apply(&f.mul(&g));
        let rhs = a.apply(&f).mul(&a.apply(&g));
        prop_assert!(a.tensor().is_zero(&lhs.sub(&rhs)));
        prop_assert!(a.coassociative_on(&f));
        prop_assert!(a.counit_on(&g));
    }
}
