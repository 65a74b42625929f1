use std::sync::Arc;

use hopf_lift::cli::JobConfig;
use hopf_lift::cocycle::{delta_connecting, KCharacter, Nichols};
use hopf_lift::convolution::{conv_inverse, convolve, BasisCoalgebra, Functional};
use hopf_lift::cyclotomic::{q_binomial, q_int, CycNum};
use hopf_lift::datum::{CartanDatum, MultiDeg};
use hopf_lift::freehopf::{braided_tensor_mul, free_coproduct, free_mul, iterated_coproducts, word_elt, Word};
use hopf_lift::presented::{retraction_u, Presented};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cyc() -> impl Strategy<Value = CycNum> {
    (prop::sample::select(vec![1u32, 3, 4, 5, 9, 12]), prop::collection::vec(-3i64..=3, 1..5)).prop_map(|(m, cs)| {
        let mut x = CycNum::zero();
        for (k, c) in cs.into_iter().enumerate() {
            x = x.add_ref(&CycNum::root_of_unity(m, k as i64).mul_ref(&CycNum::from_int(c)));
        }
        x
    })
}

fn word(theta: u8, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..theta, 0..=max)
}

fn preset() -> impl Strategy<Value = CartanDatum> {
    prop::sample::select(vec!["a1", "qplane", "a2", "qls"]).prop_map(|n| CartanDatum::preset(n, 3).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(a.add_ref(&b).add_ref(&c), a.add_ref(&b.add_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert!(a.sub_ref(&a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul_ref(&a.inv().unwrap()), CycNum::one());
        }
    }

    #[test]
    fn q_vandermonde(order in prop::sample::select(vec![3u32, 4, 5]), m in 0u32..=8, n in 0u32..=8, r in 0u32..=16) {
        prop_assume!(r <= m + n);
        let q = CycNum::root_of_unity(order, 1);
        let mut sum = CycNum::zero();
        for i in 0..=r.min(m) {
            let j = r - i;
            if j > n {
                continue;
            }
            let term = q_binomial(m, i, &q).mul_ref(&q_binomial(n, j, &q)).mul_ref(&q.powu((j * (m - i)) as u64));
            sum = sum.add_ref(&term);
        }
        prop_assert_eq!(sum, q_binomial(m + n, r, &q));
    }

    #[test]
    fn q_binomial_matches_ratio(order in prop::sample::select(vec![3u32, 4, 5, 7]), n in 0u32..=8, r in 0u32..=8) {
        prop_assume!(r <= n);
        let q = CycNum::root_of_unity(order, 1);
        let mut num = CycNum::one();
        let mut den = CycNum::one();
        for k in 0..r {
            num = num.mul_ref(&q_int(n - k, &q));
            den = den.mul_ref(&q_int(k + 1, &q));
        }
        prop_assume!(!den.is_zero());
        prop_assert_eq!(q_binomial(n, r, &q), num.div_ref(&den).unwrap());
    }

    #[test]
    fn bicharacter(d in preset(), a in prop::collection::vec(0u32..6, 3), a2 in prop::collection::vec(0u32..6, 3), b in prop::collection::vec(0u32..6, 3)) {
        let th = d.theta;
        let deg = |v: &[u32]| MultiDeg(v[..th].to_vec());
        let (a, a2, b) = (deg(&a), deg(&a2), deg(&b));
        prop_assert_eq!(d.chi_eval(&(&a + &a2), &b), d.chi_eval(&a, &b).mul_ref(&d.chi_eval(&a2, &b)));
        prop_assert_eq!(d.chi_eval(&b, &(&a + &a2)), d.chi_eval(&b, &a).mul_ref(&d.chi_eval(&b, &a2)));
    }

    #[test]
    fn free_coproduct_is_coassociative_and_multiplicative(w1 in word(2, 3), w2 in word(2, 3)) {
        let d = CartanDatum::qplane(3);
        let (a, b) = (word_elt(&w1), word_elt(&w2));
        let (left, right) = iterated_coproducts(&d, &free_mul(&a, &b));
        prop_assert_eq!(left, right);
        let prod = braided_tensor_mul(&d, &free_coproduct(&d, &a), &free_coproduct(&d, &b));
        prop_assert_eq!(free_coproduct(&d, &free_mul(&a, &b)), prod);
    }

    #[test]
    fn normal_form_is_associative(i in 0usize..200, j in 0usize..200, k in 0usize..200, a2 in any::<bool>()) {
        let d = if a2 { CartanDatum::a2(3, -1) } else { CartanDatum::qplane(3) };
        let p = Presented::new(&d).unwrap();
        let basis = p.rbar_basis(6);
        let pick = |n: usize| hopf_lift::lin::Lin::basis(basis[n % basis.len()].clone());
        let (x, y, z) = (pick(i), pick(j), pick(k));
        prop_assert_eq!(p.mul(&p.mul(&x, &y), &z), p.mul(&x, &p.mul(&y, &z)));
    }

    #[test]
    fn convolution_is_associative_with_unit(vals in prop::collection::vec(-2i64..=2, 27)) {
        let p = Presented::new(&CartanDatum::qplane(3)).unwrap();
        let b = Arc::new(BasisCoalgebra::braided_b(&p));
        let dim = b.dim();
        let mk = |off: usize| {
            let mut v: Vec<CycNum> = (0..dim).map(|n| CycNum::from_int(vals[(n + off) % vals.len()])).collect();
            v[0] = CycNum::one();
            Functional::from_values(&b, v).unwrap()
        };
        let (f, g, h) = (mk(0), mk(9), mk(18));
        prop_assert_eq!(convolve(&convolve(&f, &g).unwrap(), &h).unwrap(), convolve(&f, &convolve(&g, &h).unwrap()).unwrap());
        let e = Functional::counit(&b);
        prop_assert_eq!(convolve(&f, &e).unwrap(), f.clone());
        prop_assert_eq!(convolve(&f, &conv_inverse(&f).unwrap()).unwrap(), e);
    }

    #[test]
    fn every_delta_f_is_a_cocycle(f in prop::collection::vec(-3i64..=3, 3), seed in any::<u64>()) {
        let nich = Nichols::from_datum(&CartanDatum::qplane(3)).unwrap();
        let sigma = delta_connecting(&nich, &KCharacter::from_ints(&nich.p, &f).unwrap(), &retraction_u(&nich.p)).unwrap();
        prop_assert_eq!(nich.cos.cocycle_failure(&sigma), None);
        let chi = nich.random_invariant_chi(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(nich.cos.cocycle_failure(&nich.cos.twist(&sigma, &chi).unwrap()), None);
    }

    #[test]
    fn config_round_trips(f in prop::collection::vec(cyc(), 3), cutoff in prop::option::of(6u32..20)) {
        let mut cfg = JobConfig::preset("qplane", 3);
        for (name, v) in ["z1", "z2", "z21"].iter().zip(f) {
            cfg.f_values.insert(name.to_string(), v);
        }
        cfg.cutoff = cutoff;
        cfg.commands = vec!["lift".into(), "oracle lemma31 --m 2 --n 1".into()];
        prop_assert_eq!(JobConfig::from_json(&cfg.to_json()).unwrap(), cfg);
    }
}
