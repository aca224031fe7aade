use num_rational::Ratio;
use proptest::prelude::*;

use tpairs::congruence::{generate_congruence, switch, twist_product};
use tpairs::constructions::{NaturalPair, SuperValue, Supertropical};
use tpairs::fixtures::{admissible_pairs, admissible_structures, all_pairs, small_carriers};
use tpairs::format::{load_structure, StructureFile};
use tpairs::fractions::{Fraction, LocalizationContext};
use tpairs::growth::{free_profile, hilbert_series, polynomial_closed_form, polynomial_profile};
use tpairs::modules::{free_coords, free_index};
use tpairs::pairs::{surpasses, Pair, SurpassKind};
use tpairs::poly::{poly_add, poly_eval, poly_mul, Polynomial};
use tpairs::semiring::Semiring;
use tpairs::Verdict;

fn super_value() -> impl Strategy<Value = SuperValue> {
    prop_oneof![
        Just(SuperValue::Zero),
        (-6i64..=6).prop_map(SuperValue::Tangible),
        (-6i64..=6).prop_map(SuperValue::Ghost),
    ]
}

fn super_poly() -> impl Strategy<Value = Polynomial<SuperValue>> {
    let s = Supertropical::integers(30);
    prop::collection::vec((super_value(), 0u32..4), 0..4).prop_map(move |terms| {
        terms.into_iter().fold(Polynomial::zero(1), |f, (c, k)| {
            poly_add(&s, &f, &Polynomial::monomial(&s, c, k))
        })
    })
}

proptest! {
    #[test]
    fn supertropical_laws(a in super_value(), b in super_value(), c in super_value()) {
        let s = Supertropical::integers(30);
        prop_assert_eq!(s.add(&s.add(&a, &b), &c), s.add(&a, &s.add(&b, &c)));
        prop_assert_eq!(s.mul(&s.mul(&a, &b), &c), s.mul(&a, &s.mul(&b, &c)));
        prop_assert_eq!(s.mul(&a, &s.add(&b, &c)), s.add(&s.mul(&a, &b), &s.mul(&a, &c)));
        prop_assert_eq!(s.add(&a, &b), s.add(&b, &a));
        let three = s.add(&s.add(&a, &a), &a);
        prop_assert_eq!(three, s.add(&a, &a));
    }

    #[test]
    fn twist_product_on_fixtures(idx in 0usize..8, x in (0usize..16, 0usize..16), y in (0usize..16, 0usize..16), z in (0usize..16, 0usize..16)) {
        let pairs = all_pairs();
        let p = &pairs[idx % pairs.len()];
        let n = p.size();
        let m = |t: (usize, usize)| (t.0 % n, t.1 % n);
        let (x, y, z) = (m(x), m(y), m(z));
        let s = p.semiring();
        prop_assert_eq!(
            twist_product(s, &twist_product(s, &x, &y), &z),
            twist_product(s, &x, &twist_product(s, &y, &z))
        );
        prop_assert_eq!(switch(&twist_product(s, &x, &y)), twist_product(s, &switch(&x), &y));
    }

    #[test]
    fn generated_congruences_are_closed(idx in 0usize..6, seeds in prop::collection::vec((0usize..8, 0usize..8), 1..3)) {
        let pairs = admissible_pairs();
        let p = &pairs[idx % pairs.len()];
        let n = p.size();
        let seeds: Vec<(usize, usize)> = seeds.into_iter().map(|(a, b)| (a % n, b % n)).collect();
        if let Ok(c) = generate_congruence(p, &seeds) {
            for sd in &seeds {
                prop_assert!(c.contains_pair(sd));
            }
            for (a, b) in c.pairs() {
                for x in 0..n {
                    prop_assert!(c.contains(p.add(&a, &x), p.add(&b, &x)));
                    prop_assert!(c.contains(p.mul(&a, &x), p.mul(&b, &x)));
                    prop_assert!(c.contains(p.mul(&x, &a), p.mul(&x, &b)));
                }
                prop_assert!(!(p.is_tangible(&a) && p.in_a0(&b)));
            }
            prop_assert_eq!(generate_congruence(p, &c.pairs()).unwrap(), c);
        }
    }

    #[test]
    fn precedes_zero_is_a_preorder(idx in 0usize..8, a in 0usize..16, b in 0usize..16, c in 0usize..16) {
        let pairs = all_pairs();
        let p = &pairs[idx % pairs.len()];
        let n = p.size();
        let (a, b, c) = (a % n, b % n, c % n);
        let rel = |x: usize, y: usize| surpasses(p, SurpassKind::PrecedesZero, &x, &y).unwrap() == Verdict::Holds;
        prop_assert!(rel(a, a));
        if rel(a, b) && rel(b, c) {
            prop_assert!(rel(a, c));
        }
        if rel(a, b) {
            prop_assert!(rel(p.add(&a, &c), p.add(&b, &c)));
        }
    }

    #[test]
    fn evaluation_respects_sum_and_product(f in super_poly(), g in super_poly(), x in super_value()) {
        let s = Supertropical::integers(30);
        let at = |h: &Polynomial<SuperValue>| poly_eval(&s, h, &[x]).unwrap();
        prop_assert_eq!(at(&poly_add(&s, &f, &g)), s.add(&at(&f), &at(&g)));
        prop_assert_eq!(at(&poly_mul(&s, &f, &g)), s.mul(&at(&f), &at(&g)));
    }

    #[test]
    fn dyadic_fractions_add_and_multiply_as_rationals(a in 0u64..30, i in 0u32..4, b in 0u64..30, j in 0u32..4) {
        let n = NaturalPair { window: 12 };
        let sample: Vec<u64> = (0..6).map(|k| 1u64 << k).collect();
        let ctx = LocalizationContext::new(&n, sample, |x: &u64| x.is_power_of_two(), false).unwrap();
        let (x, y) = (Fraction::new(a, 1u64 << i), Fraction::new(b, 1u64 << j));
        let r = |f: &Fraction<u64>| Ratio::new(f.num as i64, f.den as i64);
        prop_assert_eq!(r(&ctx.frac_add(&x, &y).unwrap()), r(&x) + r(&y));
        prop_assert_eq!(r(&ctx.frac_mul(&x, &y).unwrap()), r(&x) * r(&y));
    }

    #[test]
    fn free_coordinates_round_trip(base in 2usize..5, rank in 1usize..4, seed in 0usize..1000) {
        let idx = seed % base.pow(rank as u32);
        let coords = free_coords(base, rank, idx);
        prop_assert_eq!(coords.len(), rank);
        prop_assert!(coords.iter().all(|&c| c < base));
        prop_assert_eq!(free_index(base, &coords), idx);
    }

    #[test]
    fn structure_files_round_trip(carrier in 0usize..11, choice in 0usize..64) {
        let carriers = small_carriers();
        let (name, s) = &carriers[carrier % carriers.len()];
        let structures = admissible_structures(s, name);
        prop_assume!(!structures.is_empty());
        let p = &structures[choice % structures.len()];
        let text = StructureFile::from_pair(p).to_text();
        let back = load_structure(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        let q = back.pair().unwrap();
        prop_assert_eq!(q.a0_indices(), p.a0_indices());
        prop_assert_eq!(q.tangible_indices(), p.tangible_indices());
        prop_assert_eq!(q.semiring().add_table(), p.semiring().add_table());
        prop_assert_eq!(q.semiring().mul_table(), p.semiring().mul_table());
    }

    #[test]
    fn hilbert_coefficients_are_graded_ranks(t in 1usize..4, kmax in 1usize..7) {
        let prof = polynomial_profile(t, kmax, false).unwrap();
        prop_assert_eq!(&prof.d, &polynomial_closed_form(t, kmax));
        prop_assert_eq!(hilbert_series(&prof, kmax).coefficients, prof.d.clone());
        let sum: usize = prof.d.iter().sum();
        prop_assert_eq!(prof.cumulative.last().copied(), Some(sum));
        let free = free_profile(t, kmax.min(5)).unwrap();
        prop_assert!(free.d.windows(2).all(|w| w[1] == w[0] * t));
    }
}
