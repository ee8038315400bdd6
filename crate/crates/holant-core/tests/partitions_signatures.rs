mod common;

use common::{arb_signature, q, table_sig};
use holant_core::partitions::{
    bell, enumerate_set_partitions, integer_partitions, mobius, mobius_from_finest, mult, mult_definitional, refines,
    signed_factorial, IntPartition, SetPartition,
};
use holant_core::signatures::{
    chi_lambda, chi_lambda_definitional, chi_partition, chi_partition_product, classify, fingerprint,
    fingerprint_definitional, generate_signature, Tail,
};
use holant_core::{Field, Scalar, Signature, TypeTag};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

/// Bell numbers from Stirling numbers of the second kind.
fn bell_oracle(n: usize) -> BigUint {
    let mut s = vec![vec![BigUint::from(0u32); n + 1]; n + 1];
    s[0][0] = BigUint::from(1u32);
    for i in 1..=n {
        for j in 1..=i {
            s[i][j] = BigUint::from(j) * &s[i - 1][j] + &s[i - 1][j - 1];
        }
    }
    s[n].iter().sum()
}

/// Cumulant of the moment sequence `s(n)/s(0)`.
fn cumulant(d: usize, s: &Signature) -> Scalar {
    let f = s.field();
    let inv = s.table()[0].inv().unwrap();
    let m: Vec<Scalar> = (0..=d).map(|j| &s.eval(j).unwrap() * &inv).collect();
    let mut k = vec![f.zero()];
    for n in 1..=d {
        let mut acc = m[n].clone();
        for j in 1..n {
            let c = f.from_bigint(&BigInt::from(holant_core::partitions::binomial(n - 1, j - 1)));
            acc = &acc - &(&(&c * &k[j]) * &m[n - j]);
        }
        k.push(acc);
    }
    k[d].clone()
}

#[test]
fn bell_numbers_match_stirling_sums() {
    for n in 0..=12 {
        assert_eq!(bell(n), bell_oracle(n), "n={n}");
        if (1..=9).contains(&n) {
            assert_eq!(
                BigUint::from(enumerate_set_partitions(n).unwrap().len()),
                bell_oracle(n)
            );
        }
    }
}

#[test]
fn mult_closed_form_matches_definition() {
    for n in 1..=7 {
        for lam in integer_partitions(n) {
            assert_eq!(mult(&lam), mult_definitional(&lam).unwrap(), "{lam}");
        }
    }
}

#[test]
fn mobius_row_sums_vanish() {
    for d in 2..=8 {
        let total: BigInt = enumerate_set_partitions(d)
            .unwrap()
            .iter()
            .map(|r| signed_factorial(r.len()))
            .sum();
        assert_eq!(total, BigInt::from(0), "d={d}");
    }
}

fn arb_partition(n: usize) -> impl Strategy<Value = SetPartition> {
    proptest::collection::vec(0..n, n).prop_map(|owner| SetPartition::from_owner(&owner))
}

proptest! {
    #[test]
    fn mobius_interval_sums_vanish(rho in (2usize..=6).prop_flat_map(arb_partition)) {
        let n = rho.ground_size();
        let below: Vec<SetPartition> = enumerate_set_partitions(n)
            .unwrap()
            .into_iter()
            .filter(|s| refines(s, &rho).unwrap())
            .collect();
        for sigma in &below {
            if *sigma == rho {
                prop_assert_eq!(mobius(sigma, &rho).unwrap(), BigInt::from(1));
                continue;
            }
            let sum: BigInt = below
                .iter()
                .filter(|t| refines(sigma, t).unwrap())
                .map(|t| mobius(sigma, t).unwrap())
                .sum();
            prop_assert_eq!(sum, BigInt::from(0));
        }
        prop_assert_eq!(mobius(&SetPartition::finest(n), &rho).unwrap(), mobius_from_finest(&rho));
    }

    #[test]
    fn fingerprint_is_the_cumulant(s in arb_signature(Field::Rational, 8, false), d in 1usize..=7) {
        let a = fingerprint(d, &s).unwrap();
        prop_assert_eq!(&a, &fingerprint_definitional(d, &s).unwrap());
        prop_assert_eq!(a, cumulant(d, &s));
    }

    #[test]
    fn fingerprint_agrees_over_gaussian_and_gf(s in arb_signature(Field::Gaussian, 7, false), d in 1usize..=6) {
        prop_assert_eq!(fingerprint(d, &s).unwrap(), cumulant(d, &s));
    }

    #[test]
    fn fingerprint_is_scale_invariant(s in arb_signature(Field::Rational, 7, false), c in 1i64..5, d in 1usize..=6) {
        let scaled: Vec<Scalar> = s.table().iter().map(|x| x * &q(c)).collect();
        let t = Signature::from_table("t", scaled, Tail::Zero, false).unwrap();
        prop_assert_eq!(fingerprint(d, &s).unwrap(), fingerprint(d, &t).unwrap());
    }

    #[test]
    fn chi_lambda_recursion_matches_definition(
        s in arb_signature(Field::Rational, 9, false),
        parts in proptest::collection::vec(1usize..4, 1..=4),
    ) {
        let s = s.normalized().unwrap();
        let lam = IntPartition::new(parts).unwrap();
        prop_assert_eq!(chi_lambda(&lam, &s).unwrap(), chi_lambda_definitional(&lam, &s).unwrap());
    }

    #[test]
    fn chi_of_singleton_blocks_is_the_product(s in arb_signature(Field::Rational, 7, false), rho in (1usize..=5).prop_flat_map(arb_partition)) {
        // χ(ρ) sums over refinements of ρ only, so it factorises over blocks.
        prop_assert_eq!(chi_partition(&rho, &s).unwrap(), chi_partition_product(&rho, &s).unwrap());
    }

    #[test]
    fn generated_signatures_have_their_type(c in 1i64..6, t in 0usize..3) {
        let tag = [TypeTag::Lin, TypeTag::Omega, TypeTag::Infinity][t];
        let s = generate_signature(tag, &q(c), 8).unwrap();
        prop_assert_eq!(classify(&[s], 8).unwrap().tag, tag);
    }
}

#[test]
fn fingerprint_fixtures() {
    let q = Field::Rational;
    assert_eq!(fingerprint(4, &Signature::even(q)).unwrap(), common::q(-2));
    let gf2 = Field::gf(2).unwrap();
    let hw = Signature::hw_le_1(gf2);
    assert!(fingerprint(2, &hw).unwrap().is_one());
    for d in 3..=8 {
        assert!(fingerprint(d, &hw).unwrap().is_zero());
    }
    let c = Signature::constant("c", common::q(7)).unwrap();
    let g = Signature::geometric("g", 3, -1, q).unwrap();
    for d in 2..=8 {
        assert!(fingerprint(d, &c).unwrap().is_zero());
        assert!(fingerprint(d, &g).unwrap().is_zero());
    }
    let t = table_sig("t", &[1, 1, 3], q);
    assert_eq!(fingerprint(2, &t).unwrap(), common::q(2));
}
