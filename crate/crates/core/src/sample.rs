//! Seeded random instances.
//!
//! Every trial draws from its own ChaCha20 stream: the generator is seeded
//! with the master seed and the stream id is the trial index, so a trial's
//! draws do not depend on how many other trials ran or in which order.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::cstar::{AlgebraElement, BlockAlgebra};
use crate::hmod::{ModuleSpace, ModuleVector, Submodule};
use crate::matkit::CMatrix;
use crate::modop::ModuleOperator;
use crate::{Error, Result};

/// Identifier recorded in reports so runs can be replicated.
pub const RNG_ALGORITHM: &str = "chacha20-stream-v1";

/// Range of nonzero singular values used by [`random_operator`].
pub const SINGULAR_VALUE_RANGE: (f64, f64) = (0.1, 10.0);

pub type TrialRng = ChaCha20Rng;

pub fn trial_rng(master_seed: u64, trial: u64) -> TrialRng {
    let mut rng = ChaCha20Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}

/// Standard complex Gaussian entries, `(N + iN)/√2`.
pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * s, im * s)
    })
}

/// `r` orthonormal rows spanning a Haar-random `r`-dimensional subspace of
/// `C^d` (Gaussian rows, modified Gram-Schmidt applied twice).
pub fn haar_rows<R: Rng + ?Sized>(rng: &mut R, r: usize, d: usize) -> CMatrix {
    assert!(r <= d, "cannot draw {r} orthonormal rows in dimension {d}");
    loop {
        let g = gaussian_matrix(rng, r, d);
        let mut rows: Vec<Vec<C64>> = (0..r).map(|i| g.row(i).to_vec()).collect();
        let mut ok = true;
        for i in 0..r {
            for _ in 0..2 {
                for j in 0..i {
                    let (done, rest) = rows.split_at_mut(i);
                    let proj: C64 = done[j].iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
                    for (x, b) in rest[0].iter_mut().zip(&done[j]) {
                        *x -= proj * b;
                    }
                }
            }
            let nrm = rows[i].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if nrm < 1e-8 {
                ok = false;
                break;
            }
            rows[i].iter_mut().for_each(|z| *z /= nrm);
        }
        if ok {
            return CMatrix::from_fn(r, d, |i, j| rows[i][j]);
        }
    }
}

/// Uniform rank in `0..=k·n_i` per block.
pub fn random_rank_profile<R: Rng + ?Sized>(rng: &mut R, space: &ModuleSpace) -> Vec<usize> {
    (0..space.algebra().num_blocks()).map(|i| rng.random_range(0..=space.block_width(i))).collect()
}

/// Orthogonal projection onto a Haar-random subspace of the given
/// dimension in each block.
pub fn random_projection<R: Rng + ?Sized>(
    rng: &mut R,
    space: &ModuleSpace,
    rank_profile: &[usize],
) -> Result<ModuleOperator> {
    let nb = space.algebra().num_blocks();
    if rank_profile.len() != nb {
        return Err(Error::InvalidRank(format!("expected {nb} block ranks, got {}", rank_profile.len())));
    }
    for (i, &r) in rank_profile.iter().enumerate() {
        if r > space.block_width(i) {
            return Err(Error::InvalidRank(format!("block {i}: rank {r} exceeds dimension {}", space.block_width(i))));
        }
    }
    let bases: Vec<CMatrix> =
        rank_profile.iter().enumerate().map(|(i, &r)| haar_rows(rng, r, space.block_width(i))).collect();
    Ok(Submodule::from_orthonormal_rows(space, bases).projection_onto())
}

fn spectrum_draw<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let (lo, hi) = SINGULAR_VALUE_RANGE;
    (lo.ln() + rng.random::<f64>() * (hi.ln() - lo.ln())).exp()
}

fn operator_with_ranks<R: Rng + ?Sized>(
    rng: &mut R,
    domain: &ModuleSpace,
    codomain: &ModuleSpace,
    ranks: &[usize],
) -> ModuleOperator {
    let blocks = ranks
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let p = domain.block_width(i);
            let q = codomain.block_width(i);
            if r == 0 {
                return CMatrix::zeros(p, q);
            }
            let mut u = haar_rows(rng, r, p).adjoint();
            let v = haar_rows(rng, r, q);
            for j in 0..r {
                let s = spectrum_draw(rng);
                for row in 0..p {
                    u[(row, j)] *= s;
                }
            }
            &u * &v
        })
        .collect();
    ModuleOperator::from_blocks_unchecked(domain.clone(), codomain.clone(), blocks)
}

/// `U diag(σ) V^H` per block with Haar `U`, `V`, uniform rank in
/// `0..=min(k·n_i, m·n_i)` and nonzero singular values log-uniform in
/// [`SINGULAR_VALUE_RANGE`]. Keeping the spectrum away from zero makes the
/// closed range quantitative: `γ(T) ≥ 0.1` unless `T = 0`.
pub fn random_operator<R: Rng + ?Sized>(rng: &mut R, domain: &ModuleSpace, codomain: &ModuleSpace) -> Result<ModuleOperator> {
    domain.algebra().ensure_same(codomain.algebra())?;
    let ranks: Vec<usize> = (0..domain.algebra().num_blocks())
        .map(|i| rng.random_range(0..=domain.block_width(i).min(codomain.block_width(i))))
        .collect();
    Ok(operator_with_ranks(rng, domain, codomain, &ranks))
}

/// Like [`random_operator`] but with at least one nonzero block.
pub fn random_nonzero_operator<R: Rng + ?Sized>(
    rng: &mut R,
    domain: &ModuleSpace,
    codomain: &ModuleSpace,
) -> Result<ModuleOperator> {
    domain.algebra().ensure_same(codomain.algebra())?;
    let nb = domain.algebra().num_blocks();
    let forced = rng.random_range(0..nb);
    let ranks: Vec<usize> = (0..nb)
        .map(|i| {
            let max = domain.block_width(i).min(codomain.block_width(i));
            let lo = usize::from(i == forced);
            rng.random_range(lo..=max)
        })
        .collect();
    Ok(operator_with_ranks(rng, domain, codomain, &ranks))
}

/// Operator with the given rank in every block.
pub fn random_operator_with_ranks<R: Rng + ?Sized>(
    rng: &mut R,
    domain: &ModuleSpace,
    codomain: &ModuleSpace,
    ranks: &[usize],
) -> Result<ModuleOperator> {
    domain.algebra().ensure_same(codomain.algebra())?;
    if ranks.len() != domain.algebra().num_blocks() {
        return Err(Error::InvalidRank(format!("expected {} block ranks", domain.algebra().num_blocks())));
    }
    for (i, &r) in ranks.iter().enumerate() {
        if r > domain.block_width(i).min(codomain.block_width(i)) {
            return Err(Error::InvalidRank(format!("block {i}: rank {r} too large")));
        }
    }
    Ok(operator_with_ranks(rng, domain, codomain, ranks))
}

/// A commuting pair: per block, both projections are diagonal in one
/// Haar-random orthonormal basis, with independently chosen basis subsets.
pub fn random_commuting_pair<R: Rng + ?Sized>(rng: &mut R, space: &ModuleSpace) -> (ModuleOperator, ModuleOperator) {
    let mut p_bases = Vec::new();
    let mut q_bases = Vec::new();
    for i in 0..space.algebra().num_blocks() {
        let d = space.block_width(i);
        let u = haar_rows(rng, d, d);
        let pick = |rng: &mut R| -> CMatrix {
            let chosen: Vec<usize> = (0..d).filter(|_| rng.random::<bool>()).collect();
            CMatrix::from_fn(chosen.len(), d, |r, c| u[(chosen[r], c)])
        };
        p_bases.push(pick(rng));
        q_bases.push(pick(rng));
    }
    (
        Submodule::from_orthonormal_rows(space, p_bases).projection_onto(),
        Submodule::from_orthonormal_rows(space, q_bases).projection_onto(),
    )
}

/// A nested pair `Ran(P) ⊆ Ran(Q)`.
pub fn random_nested_pair<R: Rng + ?Sized>(rng: &mut R, space: &ModuleSpace) -> (ModuleOperator, ModuleOperator) {
    let mut p_bases = Vec::new();
    let mut q_bases = Vec::new();
    for i in 0..space.algebra().num_blocks() {
        let d = space.block_width(i);
        let u = haar_rows(rng, d, d);
        let outer = rng.random_range(0..=d);
        let inner = rng.random_range(0..=outer);
        p_bases.push(u.submatrix(0, 0, inner, d));
        q_bases.push(u.submatrix(0, 0, outer, d));
    }
    (
        Submodule::from_orthonormal_rows(space, p_bases).projection_onto(),
        Submodule::from_orthonormal_rows(space, q_bases).projection_onto(),
    )
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, space: &ModuleSpace) -> ModuleVector {
    let blocks = (0..space.algebra().num_blocks())
        .map(|i| gaussian_matrix(rng, space.algebra().block_dim(i), space.block_width(i)))
        .collect();
    ModuleVector::from_blocks_unchecked(space.clone(), blocks)
}

pub fn random_element<R: Rng + ?Sized>(rng: &mut R, algebra: &BlockAlgebra) -> AlgebraElement {
    let blocks = algebra.block_dims().iter().map(|&n| gaussian_matrix(rng, n, n)).collect();
    AlgebraElement::from_blocks_unchecked(algebra.clone(), blocks)
}

/// Uniform point of the closed disk `|λ| ≤ radius`.
pub fn random_lambda<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> C64 {
    let r = radius * rng.random::<f64>().sqrt();
    let phi = std::f64::consts::TAU * rng.random::<f64>();
    C64::from_polar(r, phi)
}

/// A random vector of `m` with module norm 1, or `None` for `m = 0`.
pub fn random_unit_vector_in<R: Rng + ?Sized>(rng: &mut R, m: &Submodule) -> Option<ModuleVector> {
    if m.is_zero() {
        return None;
    }
    let x = random_vector(rng, m.space());
    let px = m.projection_onto().apply(&x).ok()?;
    let n = px.norm();
    if n == 0.0 {
        return None;
    }
    Some(px.scale(C64::new(1.0 / n, 0.0)))
}
