use num_bigint::BigInt;
use proptest::prelude::*;

use macd::affweyl::{aff_length, reduced_word, simple_reflection, AffElt, ReducedWord};
use macd::charring::{pair_c, CharPoly, QPoly};
use macd::demazure::{demazure_chain, e_zero};
use macd::macdinf::{char_wm, weight_box, ModuleSpec};
use macd::qbgpath::{enumerate_paths, enumerate_paths_par, Qbg, StepKind};
use macd::rootsys::{RootSystem, Weight};

const TYPES: [&str; 6] = ["A1", "A2", "A3", "B2", "C2", "G2"];

fn rs(t: &str) -> RootSystem {
    RootSystem::new(t.parse().unwrap())
}

fn char_poly(rank: usize) -> impl Strategy<Value = CharPoly> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, rank), 0i64..4, -3i64..=3), 0..6).prop_map(|terms| {
        let mut f = CharPoly::zero();
        for (c, k, a) in terms {
            f = f
                .checked_add(&CharPoly::monomial(Weight::new(&c), k, BigInt::from(a)))
                .unwrap();
        }
        f
    })
}

fn weight(rank: usize, b: i32) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-b..=b, rank).prop_map(|c| Weight::new(&c))
}

fn type_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(TYPES.to_vec())
}

fn aff_elt() -> impl Strategy<Value = (&'static str, AffElt)> {
    type_name().prop_flat_map(|t| {
        let r = rs(t);
        let group = r.weyl_group();
        (Just(t), weight(r.rank(), 3), prop::sample::select(group)).prop_map(|(t, tr, dir)| (t, AffElt { tr, dir }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(f in char_poly(2), g in char_poly(2), h in char_poly(2)) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&(&f - &g) + &g, f.clone());
        prop_assert_eq!(&f * &CharPoly::one(2), f);
    }

    #[test]
    fn truncation_commutes_with_products(f in char_poly(2), g in char_poly(2), n in 1u32..5) {
        let lhs = (&f * &g).truncate(n).unwrap();
        let rhs = f.truncate(n).unwrap().checked_mul(&g.truncate(n).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn involutions(f in char_poly(2)) {
        let a2 = rs("A2");
        prop_assert_eq!(f.x_invert().x_invert(), f.clone());
        prop_assert_eq!(f.w0_twist(&a2).w0_twist(&a2), f.clone());
        prop_assert_eq!(f.q_invert().unwrap().q_invert().unwrap(), f.clone());
    }

    #[test]
    fn json_round_trip(f in char_poly(2), n in prop::option::of(1u32..6)) {
        let f = match n { Some(n) => f.truncate(n).unwrap(), None => f };
        prop_assert_eq!(CharPoly::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn series_inverse(lo in 0i64..1, coeffs in prop::collection::vec(-3i64..=3, 1..5), n in 1u32..10) {
        let mut c: Vec<BigInt> = coeffs.into_iter().map(BigInt::from).collect();
        c[0] = BigInt::from(1);
        let p = QPoly::from_coeffs(lo, c);
        let inv = p.inverse_series(n).unwrap();
        prop_assert_eq!((&p * &inv).truncate(n), QPoly::one());
    }

    #[test]
    fn pairing_is_symmetric_and_additive(f in char_poly(1), g in char_poly(1), h in char_poly(1)) {
        let a1 = rs("A1");
        let fg = pair_c(&f, &g, &a1, 4).unwrap();
        prop_assert_eq!(&fg, &pair_c(&g, &f, &a1, 4).unwrap());
        let sum = pair_c(&(&f + &h), &g, &a1, 4).unwrap();
        let parts = pair_c(&f, &g, &a1, 4).unwrap().poly + pair_c(&h, &g, &a1, 4).unwrap().poly;
        prop_assert_eq!(sum.poly, parts);
    }

    #[test]
    fn weyl_reduced_words((t, x) in aff_elt()) {
        let r = rs(t);
        let w = x.dir;
        let word = r.reduced_word(&w);
        prop_assert_eq!(r.from_word(&word), w);
        prop_assert_eq!(word.len(), r.length(&w));
        prop_assert_eq!(r.length(&w.inverse()), r.length(&w));
    }

    #[test]
    fn affine_words((t, x) in aff_elt()) {
        let r = rs(t);
        let word = reduced_word(&r, &x);
        prop_assert_eq!(word.check_reduced(&r).unwrap(), x);
        prop_assert_eq!(aff_length(&r, &x.inverse()), aff_length(&r, &x));
        let back = ReducedWord::from_json(&r, &word.to_json()).unwrap();
        prop_assert_eq!(back, word);
        for i in 0..=r.rank() {
            let y = x.mul(&simple_reflection(&r, i).unwrap());
            prop_assert_eq!(aff_length(&r, &y).abs_diff(aff_length(&r, &x)), 1);
        }
    }

    #[test]
    fn demazure_chains_grow(lambda in weight(2, 2)) {
        let a2 = rs("A2");
        let chain = demazure_chain(&a2, &lambda).unwrap();
        for pair in chain.windows(2) {
            prop_assert!(pair[1].is_nonnegative());
            prop_assert!(pair[1].dominates(&pair[0]));
        }
        prop_assert!(e_zero(&a2, &lambda).unwrap().terms().values().all(|p| p.terms().all(|(_, c)| c > &BigInt::from(0))));
    }
}

#[test]
fn root_system_invariants() {
    let expected = [
        ("A1", 1),
        ("A2", 3),
        ("A3", 6),
        ("B2", 4),
        ("C2", 4),
        ("G2", 6),
        ("B3", 9),
        ("C3", 9),
        ("D4", 12),
        ("F4", 24),
        ("E6", 36),
    ];
    for (t, n) in expected {
        let r = rs(t);
        assert_eq!(r.num_positive_roots(), n, "{t}");
        let w0 = r.longest_element();
        assert_eq!(r.length(&w0), n, "{t}");
        // Closure: every reflection permutes the roots.
        for p in 0..r.num_positive_roots() {
            for q in 0..r.num_roots() {
                let img = r.act_root(&r.reflection(p), q);
                assert!(img < r.num_roots());
            }
        }
    }
}

#[test]
fn qbg_edges_are_dichotomous() {
    for t in TYPES {
        let g = Qbg::new(&rs(t));
        let r = g.root_system();
        let two_rho = r.two_rho();
        for e in g.edges() {
            let lf = g.length_of(e.from) as i64;
            let lt = g.length_of(e.to) as i64;
            let h = two_rho.dot(&r.coroot(e.root));
            match e.kind {
                StepKind::Bruhat => assert_eq!(lt, lf + 1),
                StepKind::Quantum => assert_eq!(lt, lf + 1 - h),
            }
            // Forward from `from` and reversed from `to` agree.
            assert_eq!(g.classify(e.from, e.root, false), Some(e.kind));
            assert_eq!(g.classify(e.to, e.root, true), Some(e.kind));
        }
    }
}

#[test]
fn parallel_enumeration_matches_sequential() {
    for t in ["A2", "C2", "G2"] {
        let g = Qbg::new(&rs(t));
        let r = g.root_system();
        for lambda in weight_box(r.rank(), 1) {
            let spec = ModuleSpec::for_u(r, &lambda).unwrap();
            let betas = spec.betas(r).unwrap();
            for reversed in [false, true] {
                let seq = enumerate_paths(&g, &spec.z0(), &betas, reversed).unwrap();
                let par = enumerate_paths_par(&g, &spec.z0(), &betas, reversed).unwrap();
                assert_eq!(seq, par);
            }
        }
    }
}

#[test]
fn filtration_is_monotone_and_normalized() {
    for t in ["A1", "A2", "C2"] {
        let g = Qbg::new(&rs(t));
        let r = g.root_system();
        for lambda in weight_box(r.rank(), 1) {
            let base = ModuleSpec::for_u(r, &lambda).unwrap();
            for sigma in g.vertices() {
                let spec = base.with_sigma(*sigma);
                let chars: Vec<CharPoly> = (0..=spec.prefix_len)
                    .map(|m| char_wm(&g, &spec.with_m(m).unwrap()).unwrap().char)
                    .collect();
                for pair in chars.windows(2) {
                    assert!(pair[0].dominates(&pair[1]), "{t} {lambda}");
                }
                // Cyclic normalization: the extreme weight sits at q^0 with
                // coefficient 1, and no q-power is negative.
                let top = chars[0].coefficient(&spec.extreme_weight());
                assert_eq!(top.min_exp(), Some(0), "{t} {lambda}");
                assert_eq!(top.coeff(0), BigInt::from(1));
                assert!(chars.iter().all(|c| c.terms().values().all(|p| p.min_exp() >= Some(0))));
            }
        }
    }
}
