//! Classification: monotonicity in the height, soundness of witnesses and
//! invariance under unimodular changes of variables.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hasse_lab::invariants::discriminant;
use hasse_lab::models::{act, evaluate, TwistedTransform};
use hasse_lab::rational_points::{classify, search_point, HasseClass};
use hasse_lab::{GenusOneModel, ModelKind};

fn random_nondegenerate(kind: ModelKind, range: i64, rng: &mut ChaCha8Rng) -> GenusOneModel {
    loop {
        let c: Vec<i64> = (0..kind.m()).map(|_| rng.random_range(-range..=range)).collect();
        let m = GenusOneModel::from_ints(kind, &c).unwrap();
        if !discriminant(&m).is_zero() {
            return m;
        }
    }
}

#[test]
fn soluble_stays_soluble_at_larger_heights() {
    let mut rng = ChaCha8Rng::seed_from_u64(301);
    let mut soluble = 0;
    for kind in ModelKind::ALL {
        for _ in 0..25 {
            let m = random_nondegenerate(kind, 8, &mut rng);
            let h1 = rng.random_range(1..=20);
            if let HasseClass::Soluble(p) = classify(&m, h1) {
                soluble += 1;
                assert!(p.naive_height() <= h1.into());
                match classify(&m, 4 * h1) {
                    HasseClass::Soluble(q) => assert!(evaluate(&m, &q).unwrap().iter().all(Zero::is_zero)),
                    other => panic!("{m}: soluble at {h1}, {other} at {}", 4 * h1),
                }
            }
        }
    }
    assert!(soluble > 20);
}

#[test]
fn points_verify_and_never_meet_local_obstructions() {
    let mut rng = ChaCha8Rng::seed_from_u64(302);
    for kind in ModelKind::ALL {
        for _ in 0..25 {
            let m = random_nondegenerate(kind, 8, &mut rng);
            match classify(&m, 30) {
                HasseClass::Soluble(p) => assert!(evaluate(&m, &p).unwrap().iter().all(Zero::is_zero), "{m}: {p}"),
                HasseClass::LocallyInsoluble(place) => {
                    assert!(search_point(&m, 300).is_none(), "{m}: insoluble at {place} yet has a point")
                }
                _ => {}
            }
        }
    }
    for (m, h) in [
        (GenusOneModel::diagonal_cubic(1, 2, 4), 2000),
        (GenusOneModel::binary_quartic([-1, 0, 0, 0, -1]), 2000),
        (GenusOneModel::diagonal_cubic(1, 3, 9), 2000),
    ] {
        assert!(matches!(classify(&m, 10), HasseClass::LocallyInsoluble(_)), "{m}");
        assert!(search_point(&m, h).is_none(), "{m}");
    }
}

#[test]
fn transformed_soluble_models_are_never_locally_insoluble() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut checked = 0;
    for kind in ModelKind::ALL {
        let mut found = 0;
        while found < 8 {
            let m = random_nondegenerate(kind, 6, &mut rng);
            let HasseClass::Soluble(_) = classify(&m, 50) else { continue };
            found += 1;
            let g = TwistedTransform::random_unimodular(kind, 5, &mut rng);
            let gm = act(&g, &m).unwrap().to_integral().unwrap();
            let c = classify(&gm, 5);
            assert!(!matches!(c, HasseClass::LocallyInsoluble(_)), "{m} -> {gm}: {c}");
            checked += 1;
        }
    }
    assert_eq!(checked, 24);
}
