//! Cross-checks of the Jacobi SVD, Hermitian eigensolver and
//! pseudoinverse against nalgebra.

use hilmod::matkit::{self, CMatrix};
use hilmod::sample;
use hilmod::C64;
use nalgebra::DMatrix;

fn to_na(a: &CMatrix) -> DMatrix<C64> {
    DMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)])
}

fn shapes() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in 1..=9 {
        for c in 1..=9 {
            out.push((r, c));
        }
    }
    out
}

#[test]
fn singular_values_match() {
    let mut rng = sample::trial_rng(2024, 0);
    for (r, c) in shapes() {
        for _ in 0..4 {
            let a = sample::gaussian_matrix(&mut rng, r, c);
            let ours = matkit::svd(&a).unwrap().singular_values;
            let mut theirs: Vec<f64> = to_na(&a).singular_values().iter().copied().collect();
            theirs.sort_by(|x, y| y.total_cmp(x));
            assert_eq!(ours.len(), theirs.len());
            let scale = theirs[0].max(1.0);
            for (x, y) in ours.iter().zip(&theirs) {
                assert!((x - y).abs() <= 1e-12 * scale, "{r}x{c}: {x} vs {y}");
            }
        }
    }
}

#[test]
fn hermitian_eigenvalues_match() {
    let mut rng = sample::trial_rng(2024, 1);
    for n in 1..=10 {
        for _ in 0..5 {
            let g = sample::gaussian_matrix(&mut rng, n, n);
            let h = (&g + &g.adjoint()).scale_real(0.5);
            let (ours, vecs) = matkit::hermitian_eig(&h).unwrap();
            let mut theirs: Vec<f64> = to_na(&h).symmetric_eigen().eigenvalues.iter().copied().collect();
            theirs.sort_by(f64::total_cmp);
            for (x, y) in ours.iter().zip(&theirs) {
                assert!((x - y).abs() <= 1e-12 * (1.0 + y.abs()), "n={n}: {x} vs {y}");
            }
            let recon = &(&vecs * &CMatrix::from_diag(&ours)) * &vecs.adjoint();
            assert!((&recon - &h).max_abs() <= 1e-12 * (1.0 + h.max_abs()));
        }
    }
}

#[test]
fn pseudoinverse_matches_on_rank_deficient_input() {
    let mut rng = sample::trial_rng(2024, 2);
    for (r, c) in shapes() {
        let k = r.min(c) / 2 + 1;
        let left = sample::gaussian_matrix(&mut rng, r, k);
        let right = sample::gaussian_matrix(&mut rng, k, c);
        let a = &left * &right;
        let ours = matkit::pinv(&a, 1e-10);
        let theirs = to_na(&a).pseudo_inverse(1e-8 * matkit::spectral_norm(&a)).unwrap();
        let diff = ours.as_slice().iter().zip(theirs.transpose().iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        let scale = theirs.iter().map(|z| z.norm()).fold(1.0, f64::max);
        assert!(diff <= 1e-8 * scale, "{r}x{c} rank {k}: {diff}");
    }
}
