//! The definite-member criterion for pairs of quadrics against a numerical
//! search for a common real zero on the unit sphere.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hasse_lab::invariants::discriminant;
use hasse_lab::local::real_soluble;
use hasse_lab::{GenusOneModel, ModelKind};

/// Symmetric matrix with `x·Sx = q(x)`, from the upper-triangular coefficient order.
fn sym(q: &[i64]) -> [[f64; 4]; 4] {
    let mut s = [[0.0; 4]; 4];
    let mut k = 0;
    for i in 0..4 {
        for j in i..4 {
            if i == j {
                s[i][i] = q[k] as f64;
            } else {
                s[i][j] = q[k] as f64 / 2.0;
                s[j][i] = q[k] as f64 / 2.0;
            }
            k += 1;
        }
    }
    s
}

fn quad(s: &[[f64; 4]; 4], x: &[f64; 4]) -> (f64, [f64; 4]) {
    let mut sx = [0.0; 4];
    for i in 0..4 {
        sx[i] = (0..4).map(|j| s[i][j] * x[j]).sum();
    }
    let v = (0..4).map(|i| x[i] * sx[i]).sum();
    (v, sx.map(|t| 2.0 * t))
}

/// Gauss-Newton with minimum-norm steps from many random starts.
fn numerical_zero(q1: &[i64], q2: &[i64], rng: &mut ChaCha8Rng) -> bool {
    let (s1, s2) = (sym(q1), sym(q2));
    for _ in 0..300 {
        let mut x: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        for _ in 0..60 {
            let norm = x.iter().map(|t| t * t).sum::<f64>().sqrt();
            if norm < 1e-9 {
                break;
            }
            x = x.map(|t| t / norm);
            let ((r1, g1), (r2, g2)) = (quad(&s1, &x), quad(&s2, &x));
            if r1.abs() + r2.abs() < 1e-13 {
                return true;
            }
            let (a, b, d) = (
                (0..4).map(|i| g1[i] * g1[i]).sum::<f64>(),
                (0..4).map(|i| g1[i] * g2[i]).sum::<f64>(),
                (0..4).map(|i| g2[i] * g2[i]).sum::<f64>(),
            );
            let det = a * d - b * b;
            if det.abs() < 1e-14 {
                break;
            }
            let (u, w) = ((d * r1 - b * r2) / det, (a * r2 - b * r1) / det);
            for i in 0..4 {
                x[i] -= u * g1[i] + w * g2[i];
            }
        }
    }
    false
}

#[test]
fn pencil_criterion_agrees_with_numerical_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    let (mut soluble, mut insoluble, mut disagreements) = (0, 0, Vec::new());
    let mut done = 0;
    while done < 150 {
        let q1: Vec<i64> = if done % 3 == 0 {
            // near a sum of squares, so that some member is often definite
            let mut q = vec![0i64; 10];
            for (k, d) in [0usize, 4, 7, 9].into_iter().enumerate() {
                q[d] = rng.random_range(2..=6) + k as i64 % 2;
            }
            for k in [1usize, 2, 3, 5, 6, 8] {
                q[k] = rng.random_range(-1..=1);
            }
            q
        } else {
            (0..10).map(|_| rng.random_range(-3..=3)).collect()
        };
        let q2: Vec<i64> = (0..10).map(|_| rng.random_range(-3..=3)).collect();
        let c: Vec<i64> = q1.iter().chain(&q2).copied().collect();
        let m = GenusOneModel::from_ints(ModelKind::QuadricPair, &c).unwrap();
        if discriminant(&m).is_zero() {
            continue;
        }
        done += 1;
        let exact = real_soluble(&m).unwrap();
        let numeric = numerical_zero(&q1, &q2, &mut rng);
        if exact { soluble += 1 } else { insoluble += 1 }
        if exact != numeric {
            disagreements.push(format!("{m}: criterion {exact}, search {numeric}"));
        }
    }
    eprintln!("{soluble} soluble, {insoluble} insoluble");
    assert!(disagreements.is_empty(), "{disagreements:#?}");
    assert!(soluble >= 20 && insoluble >= 20, "{soluble} / {insoluble}");
}
