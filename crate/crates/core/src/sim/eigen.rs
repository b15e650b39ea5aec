//! Lowest eigenpairs by restarted Lanczos with full reorthogonalization.
//!
//! Excited states are found by locking: each new run is kept orthogonal to
//! the eigenvectors already converged, which resolves exact degeneracies that
//! a single Krylov sequence cannot see.

use alloc::vec;
use alloc::vec::Vec;
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hamiltonian::Hamiltonian;
use super::state::QuantumState;
use crate::error::SimError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenOptions {
    pub seed: u64,
    pub krylov_dim: usize,
    pub max_restarts: usize,
    /// Residual tolerance relative to [`Hamiltonian::scale`].
    pub residual_tol: f64,
    /// Eigenvalues closer than this (relative) count as degenerate.
    pub degeneracy_tol: f64,
    /// Upper limit on the reported degenerate subspace.
    pub max_degeneracy: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            seed: 0x5eed,
            krylov_dim: 120,
            max_restarts: 60,
            residual_tol: 1e-10,
            degeneracy_tol: 1e-10,
            max_degeneracy: 8,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroundState {
    pub energy: f64,
    pub state: QuantumState,
    /// Number of eigenvalues found within the degeneracy tolerance of the minimum.
    pub degeneracy: usize,
    /// Distance to the first level above the degenerate subspace, when resolved.
    pub gap: Option<f64>,
    /// Degenerate ground vectors, `state` first.
    pub subspace: Vec<Vec<f64>>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn orthogonalize(w: &mut [f64], against: &[Vec<f64>]) {
    for _ in 0..2 {
        for v in against {
            let c = dot(w, v);
            axpy(w, -c, v);
        }
    }
}

/// Lowest eigenpair of `h` restricted to the complement of `locked`.
fn lanczos(
    h: &Hamiltonian,
    locked: &[Vec<f64>],
    start: Vec<f64>,
    opts: &EigenOptions,
) -> Result<Option<(f64, Vec<f64>)>, SimError> {
    let dim = h.dim();
    let room = dim - locked.len();
    if room == 0 {
        return Ok(None);
    }
    let tol = opts.residual_tol * h.scale();
    let mut start = start;
    for _ in 0..opts.max_restarts.max(1) {
        orthogonalize(&mut start, locked);
        let nrm = norm(&start);
        if nrm < 1e-300 {
            return Ok(None);
        }
        start.iter_mut().for_each(|x| *x /= nrm);

        let m_max = opts.krylov_dim.min(room).max(1);
        let mut basis: Vec<Vec<f64>> = vec![start];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        let mut w = vec![0.0; dim];
        let mut last: Option<(f64, Vec<f64>)> = None;

        for j in 0..m_max {
            h.apply(&basis[j], &mut w);
            let alpha = dot(&w, &basis[j]);
            alphas.push(alpha);
            orthogonalize(&mut w, locked);
            orthogonalize(&mut w, &basis);
            let beta = norm(&w);

            let (theta, y) = lowest_ritz(&alphas, &betas);
            let residual = beta * y[y.len() - 1].abs();
            let exhausted = beta < tol.max(1e-14) || j + 1 == m_max;
            if residual < tol || exhausted {
                let mut x = vec![0.0; dim];
                for (yi, v) in y.iter().zip(&basis) {
                    axpy(&mut x, *yi, v);
                }
                let nx = norm(&x);
                x.iter_mut().for_each(|v| *v /= nx);
                if residual < tol || beta < tol.max(1e-14) {
                    return Ok(Some((theta, x)));
                }
                last = Some((theta, x));
                break;
            }
            betas.push(beta);
            basis.push(w.iter().map(|x| x / beta).collect());
        }
        match last {
            Some((_, x)) => start = x,
            None => unreachable!("loop always records a Ritz pair"),
        }
    }
    Err(SimError::NoConvergence(opts.max_restarts * opts.krylov_dim))
}

fn lowest_ritz(alphas: &[f64], betas: &[f64]) -> (f64, Vec<f64>) {
    let m = alphas.len();
    let t = DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            alphas[i]
        } else if i + 1 == j {
            betas[i]
        } else if j + 1 == i {
            betas[j]
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(t);
    let (k, theta) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |(bk, bv), (i, &v)| if v < bv { (i, v) } else { (bk, bv) });
    (theta, eig.eigenvectors.column(k).iter().copied().collect())
}

/// Lowest eigenvalue of `h`, one ground vector, and the resolved degeneracy.
pub fn ground_state(h: &Hamiltonian, opts: &EigenOptions) -> Result<GroundState, SimError> {
    let scale = h.scale();
    let deg_tol = opts.degeneracy_tol * scale;
    if h.rabi() == 0.0 {
        return Ok(diagonal_ground_state(h, deg_tol));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut random = || -> Vec<f64> { (0..h.dim()).map(|_| rng.gen::<f64>() - 0.5).collect() };

    let (e0, v0) = lanczos(h, &[], random(), opts)?.expect("non-empty space");
    let mut subspace = vec![v0];
    let mut gap = None;
    while subspace.len() < opts.max_degeneracy {
        match lanczos(h, &subspace, random(), opts)? {
            Some((e, v)) if e - e0 < deg_tol => subspace.push(v),
            Some((e, _)) => {
                gap = Some(e - e0);
                break;
            }
            None => break,
        }
    }
    Ok(GroundState {
        energy: e0,
        state: QuantumState::from_real(&subspace[0]),
        degeneracy: subspace.len(),
        gap,
        subspace,
    })
}

fn diagonal_ground_state(h: &Hamiltonian, deg_tol: f64) -> GroundState {
    let dim = h.dim();
    let e0 = (0..dim).map(|s| h.diagonal(s)).fold(f64::INFINITY, f64::min);
    let ground: Vec<usize> = (0..dim).filter(|&s| h.diagonal(s) - e0 <= deg_tol).collect();
    let gap = (0..dim)
        .map(|s| h.diagonal(s) - e0)
        .filter(|&d| d > deg_tol)
        .fold(None, |m: Option<f64>, d| Some(m.map_or(d, |m| m.min(d))));
    let subspace: Vec<Vec<f64>> = ground
        .iter()
        .map(|&s| {
            let mut v = vec![0.0; dim];
            v[s] = 1.0;
            v
        })
        .collect();
    GroundState {
        energy: e0,
        state: QuantumState::basis(h.atoms(), ground[0]),
        degeneracy: ground.len(),
        gap,
        subspace,
    }
}
