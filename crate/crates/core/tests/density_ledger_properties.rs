//! Euler factors, enclosures, Monte Carlo convergence and ledger identities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use hasse_lab::density::{self, euler_product, local_factor_ternary_cubic, mc_local_density_with};
use hasse_lab::ledger;
use hasse_lab::ModelKind;

fn primes(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

#[test]
fn factors_lie_in_unit_interval_and_obey_the_tail_bound() {
    for p in primes(10_000) {
        let f = local_factor_ternary_cubic(p).unwrap().value;
        assert!(f > BigRational::zero() && f <= BigRational::one(), "factor at {p}");
        let deficit = BigRational::one() - &f;
        let bound = BigRational::new(BigInt::one(), BigInt::from(2) * BigInt::from(p).pow(3));
        assert!(deficit <= bound, "1 - factor({p}) exceeds 1/(2p^3)");
    }
}

#[test]
fn enclosures_nest() {
    let cutoffs = [10u64, 100, 1000, 10_000];
    let encl: Vec<_> = cutoffs.iter().map(|&c| euler_product(c).unwrap()).collect();
    for w in encl.windows(2) {
        assert!(w[0].lo <= w[1].lo && w[1].lo <= w[1].hi && w[1].hi <= w[0].hi);
    }
    let widths: Vec<f64> = encl.iter().map(|e| e.width().to_f64().unwrap()).collect();
    assert!(widths.windows(2).all(|w| w[1] < w[0]), "{widths:?}");
}

/// The estimate at `p` against the exact factor, `N = 10⁵` with a fixed seed.
fn mc_z(p: u64) -> f64 {
    let est = mc_local_density_with(ModelKind::TernaryCubic, p, 6, 100_000, 7, 1).unwrap();
    assert_eq!(est.undecided, 0);
    let exact = local_factor_ternary_cubic(p).unwrap().value.to_f64().unwrap();
    let z = est.z_score(exact).unwrap();
    eprintln!("p = {p}: estimate {:?}, exact {exact:.6}, z = {z:.2}", est.estimate);
    z
}

#[test]
fn monte_carlo_converges_at_three() {
    assert!(mc_z(3).abs() <= 4.0);
}

#[test]
fn monte_carlo_converges_at_five() {
    assert!(mc_z(5).abs() <= 4.0);
}

#[test]
fn failure_bound_and_bounded_mass_sum_to_one() {
    for n in [2, 3, 4] {
        let total = ledger::hasse_failure_lower_bound(n).unwrap() + ledger::bounded_average_mass(n).unwrap();
        assert_eq!(total, BigRational::one(), "n = {n}");
        let sigma = BigRational::from_integer(ledger::SelmerTable::sigma(n).unwrap().into());
        let direct = (BigRational::new(BigInt::from(n * n - n), BigInt::from(20)) + BigRational::from_integer(n.into())) / sigma;
        assert_eq!(ledger::bounded_average_mass(n).unwrap(), direct);
    }
}

#[test]
fn curve_count_ratio_approaches_four() {
    let devs: Vec<f64> = [6u32, 9, 12]
        .iter()
        .map(|&e| {
            let x = BigInt::from(10).pow(e);
            let c = ledger::curve_count(&x).unwrap().to_f64().unwrap();
            (c / 10f64.powf(e as f64 * 5.0 / 6.0) - 4.0).abs()
        })
        .collect();
    assert!(devs.windows(2).all(|w| w[1] < w[0]), "{devs:?}");
}

#[test]
fn density_lower_bounds_are_positive_and_ordered() {
    let r = density::remark1_bounds();
    assert!(r.first > 0.0 && r.second > r.first);
    assert!((r.zeta3 - 1.2020569031595942).abs() < 1e-14);
}
