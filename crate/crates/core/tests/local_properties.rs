//! Local solubility: good primes, witnesses, depth caps and the overall report.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hasse_lab::invariants::discriminant;
use hasse_lab::local::{
    locally_soluble, p_adic_soluble, p_adic_soluble_with, verify_witness, LocalVerdict, Overall, PadicOptions, Witness,
};
use hasse_lab::{GenusOneModel, ModelKind};

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn random_nondegenerate(kind: ModelKind, range: i64, rng: &mut ChaCha8Rng) -> GenusOneModel {
    loop {
        let c: Vec<i64> = (0..kind.m()).map(|_| rng.random_range(-range..=range)).collect();
        let m = GenusOneModel::from_ints(kind, &c).unwrap();
        if !discriminant(&m).is_zero() {
            return m;
        }
    }
}

/// The explicit search agrees with the Hasse-bound shortcut at good primes.
#[test]
fn good_primes_are_soluble() {
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    let primes: Vec<u64> = (5..400).filter(|&p| is_prime(p)).collect();
    let mut checked = 0;
    for i in 0..50 {
        let kind = ModelKind::ALL[i % 3];
        let m = random_nondegenerate(kind, 10, &mut rng);
        let delta = discriminant(&m) * BigInt::from(6);
        let mut tried = 0;
        while tried < 5 {
            let p = primes[rng.random_range(0..primes.len())];
            if (&delta % BigInt::from(p)).is_zero() {
                continue;
            }
            tried += 1;
            let v = p_adic_soluble(&m, &BigInt::from(p)).unwrap();
            assert!(v.is_soluble(), "{m} at good prime {p}: {v}");
            if let LocalVerdict::Soluble(Witness::Padic(w)) = &v {
                assert!(verify_witness(&m, w));
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 250);
}

/// Every soluble verdict carries a witness that re-verifies.
#[test]
fn witnesses_reverify() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut witnesses = 0;
    for kind in ModelKind::ALL {
        for _ in 0..30 {
            let m = random_nondegenerate(kind, 6, &mut rng);
            let report = locally_soluble(&m).unwrap();
            for (place, verdict) in report.places() {
                if let LocalVerdict::Soluble(Witness::Padic(w)) = verdict {
                    assert!(verify_witness(&m, w), "{m} at {place}: {verdict}");
                    witnesses += 1;
                }
            }
        }
    }
    assert!(witnesses > 50);
}

/// Doubling the depth cap leaves insoluble verdicts unchanged.
#[test]
fn doubled_depth_cap_keeps_insoluble_verdicts() {
    let mut fixtures: Vec<(GenusOneModel, u64)> = vec![
        (GenusOneModel::diagonal_cubic(1, 2, 4), 2),
        (GenusOneModel::diagonal_cubic(1, 3, 9), 3),
        (GenusOneModel::diagonal_cubic(1, 7, 49), 7),
        (GenusOneModel::quadric_pair([1, 0, 0, 0, 1, 0, 0, 1, 0, -1], [0, 1, 0, 0, 0, 0, 0, 1, 0, 2]), 3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(203);
    while fixtures.len() < 24 {
        let kind = ModelKind::ALL[fixtures.len() % 3];
        let m = random_nondegenerate(kind, 8, &mut rng);
        for p in [2u64, 3, 5] {
            if p_adic_soluble(&m, &BigInt::from(p)).unwrap().is_insoluble() {
                fixtures.push((m.clone(), p));
                break;
            }
        }
    }
    let base = PadicOptions::default();
    let doubled = PadicOptions { depth_factor: 2 * base.depth_factor, depth_slack: 2 * base.depth_slack, ..base.clone() };
    for (m, p) in fixtures {
        let p = BigInt::from(p);
        let a = p_adic_soluble_with(&m, &p, &base).unwrap();
        let b = p_adic_soluble_with(&m, &p, &doubled).unwrap();
        assert!(a.is_insoluble(), "{m} at {p}: {a}");
        assert!(b.is_insoluble(), "{m} at {p} with doubled cap: {b}");
    }
}

#[test]
fn report_combines_places() {
    let mut rng = ChaCha8Rng::seed_from_u64(204);
    for kind in ModelKind::ALL {
        for _ in 0..20 {
            let m = random_nondegenerate(kind, 9, &mut rng);
            let r = locally_soluble(&m).unwrap();
            let all_soluble = r.places().iter().all(|(_, v)| v.is_soluble());
            match &r.overall {
                Overall::LocallySoluble => assert!(all_soluble && r.cofactor.is_none(), "{m}"),
                Overall::LocallyInsoluble(place) => {
                    let v = r.places().into_iter().find(|(p, _)| p == place).unwrap().1;
                    assert!(v.is_insoluble(), "{m}");
                }
                Overall::Undecided(_) => panic!("{m}: small models factor completely"),
            }
            for p in [2, 3] {
                assert!(r.primes.contains_key(&BigInt::from(p)), "{m}: {p} always searched");
            }
        }
    }
}
