//! Randomized properties of the Lorentzian metric constructor.

use cobord::metric::{
    extract_timelike_line, lorentz_from_riemannian, pullback_is_riemannian, LineField,
    SymmetricForm, TOL_ROUND_TRIP,
};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_spd(d: usize, rng: &mut ChaCha8Rng) -> SymmetricForm {
    let m = DMatrix::from_fn(d, d, |_, _| rng.gen_range(-1.0..1.0));
    SymmetricForm::new(m.transpose() * &m + DMatrix::identity(d, d)).unwrap()
}

fn random_direction(d: usize, rng: &mut ChaCha8Rng) -> LineField {
    loop {
        let v = DVector::from_fn(d, |_, _| rng.gen_range(-1.0..1.0));
        if v.norm() > 0.1 {
            return LineField::new(v).unwrap();
        }
    }
}

/// Basis of the g_R-orthogonal complement of v: project the coordinate
/// vectors onto the kernel of w = g_R v, dropping the one most parallel to w.
fn orthogonal_complement(g_r: &SymmetricForm, v: &LineField) -> Vec<DVector<f64>> {
    let d = g_r.dim();
    let w = g_r.matrix() * v.vector();
    let denom = v.vector().dot(&w);
    let drop = (0..d)
        .max_by(|&a, &b| w[a].abs().partial_cmp(&w[b].abs()).unwrap())
        .unwrap();
    (0..d)
        .filter(|&i| i != drop)
        .map(|i| {
            let mut e = DVector::zeros(d);
            e[i] = 1.0;
            &e - v.vector() * (w[i] / denom)
        })
        .collect()
}

#[test]
fn lorentz_construction_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for d in 2..=8usize {
        for _ in 0..200 {
            let g_r = random_spd(d, &mut rng);
            let v = random_direction(d, &mut rng);
            let g = lorentz_from_riemannian(&g_r, &v).unwrap();

            // signature (1, d-1)
            assert_eq!(g.signature().unwrap(), (1, d - 1));

            // g(V, V) = -g_R(V, V) < 0
            let gvv = g.apply(v.vector(), v.vector());
            let grvv = g_r.apply(v.vector(), v.vector());
            assert!(gvv < 0.0);
            assert!((gvv + grvv).abs() < 1e-9 * grvv.abs());

            // spacelike pullback on the orthogonal complement
            let basis = orthogonal_complement(&g_r, &v);
            assert!(pullback_is_riemannian(&g, &basis).unwrap());
        }
    }
}

#[test]
fn scale_invariance_of_the_construction() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in 2..=8usize {
        for _ in 0..100 {
            let g_r = random_spd(d, &mut rng);
            let v = random_direction(d, &mut rng);
            let g = lorentz_from_riemannian(&g_r, &v).unwrap();
            for lambda in [-3.0, 0.25, 17.0] {
                let scaled = LineField::new(v.vector() * lambda).unwrap();
                let g2 = lorentz_from_riemannian(&g_r, &scaled).unwrap();
                let scale = g.matrix().norm().max(1.0);
                assert!(
                    (g.matrix() - g2.matrix()).norm() < 1e-9 * scale,
                    "d={d} lambda={lambda}"
                );
            }
        }
    }
}

#[test]
fn extraction_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for d in 2..=8usize {
        for _ in 0..200 {
            let g_r = random_spd(d, &mut rng);
            let v = random_direction(d, &mut rng);
            let g = lorentz_from_riemannian(&g_r, &v).unwrap();
            let line = extract_timelike_line(&g, &g_r).unwrap();

            // compare after g_R-normalizing the input, up to sign
            let norm = g_r.apply(v.vector(), v.vector()).sqrt();
            let unit = v.vector() / norm;
            let diff_plus = (line.vector() - &unit).norm();
            let diff_minus = (line.vector() + &unit).norm();
            assert!(
                diff_plus.min(diff_minus) < TOL_ROUND_TRIP,
                "d={d}: {:?}",
                diff_plus.min(diff_minus)
            );
        }
    }
}
