use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::SimError;
use crate::graph::{AtomGraph, AtomId};

pub const DEFAULT_ATOM_CAP: usize = 14;
pub const HARD_ATOM_CAP: usize = 20;

/// Global drive and interaction scales; per-atom detuning is `weight * detuning`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RydbergParams {
    pub rabi: f64,
    pub detuning: f64,
    pub blockade: f64,
    pub atom_cap: usize,
}

impl RydbergParams {
    pub fn new(rabi: f64, detuning: f64, blockade: f64) -> Self {
        RydbergParams {
            rabi,
            detuning,
            blockade,
            atom_cap: DEFAULT_ATOM_CAP,
        }
    }

    /// Blockade set to `4 * max weight * detuning`, keeping every `w * detuning` below it.
    pub fn for_graph(graph: &AtomGraph, rabi: f64, detuning: f64) -> Self {
        Self::new(rabi, detuning, default_blockade(graph, detuning))
    }

    pub fn with_atom_cap(mut self, cap: usize) -> Self {
        self.atom_cap = cap;
        self
    }
}

pub fn default_blockade(graph: &AtomGraph, detuning: f64) -> f64 {
    4.0 * graph.max_weight().max(1) as f64 * detuning.abs()
}

/// `H = (rabi/2) sum X_i - detuning sum w_i n_i + blockade sum_(i,j) n_i n_j + sum p_i n_i`
/// over the `2^n` occupation basis; bit `i` of a basis index is atom `i`.
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    atoms: usize,
    rabi: f64,
    detuning: f64,
    blockade: f64,
    weights: Vec<f64>,
    weight_sum: Vec<f64>,
    static_diag: Vec<f64>,
}

impl Hamiltonian {
    pub fn new(graph: &AtomGraph, params: &RydbergParams) -> Result<Self, SimError> {
        let n = graph.num_atoms();
        let cap = params.atom_cap.min(HARD_ATOM_CAP);
        if n > cap {
            return Err(SimError::AtomCap { atoms: n, cap });
        }
        for (name, v) in [
            ("rabi", params.rabi),
            ("detuning", params.detuning),
            ("blockade", params.blockade),
        ] {
            if !v.is_finite() {
                return Err(SimError::NonFinite(name));
            }
        }
        if params.blockade <= 0.0 {
            return Err(SimError::NonPositiveBlockade);
        }
        let weights: Vec<f64> = graph.atoms().iter().map(|a| a.weight as f64).collect();
        let dim = 1usize << n;
        let mut weight_sum = vec![0.0; dim];
        let mut static_diag = vec![0.0; dim];
        let edges: Vec<(AtomId, AtomId)> = graph.edges().collect();
        for s in 0..dim {
            weight_sum[s] = (0..n).filter(|i| s >> i & 1 == 1).map(|i| weights[i]).sum();
            let pairs = edges.iter().filter(|&&(a, b)| s >> a & s >> b & 1 == 1).count();
            static_diag[s] = params.blockade * pairs as f64;
        }
        Ok(Hamiltonian {
            atoms: n,
            rabi: params.rabi,
            detuning: params.detuning,
            blockade: params.blockade,
            weights,
            weight_sum,
            static_diag,
        })
    }

    /// Adds an energy `penalty` whenever `atom` is excited.
    pub fn with_penalty(mut self, atom: AtomId, penalty: f64) -> Self {
        for (s, d) in self.static_diag.iter_mut().enumerate() {
            if s >> atom & 1 == 1 {
                *d += penalty;
            }
        }
        self
    }

    pub fn set_drive(&mut self, rabi: f64, detuning: f64) {
        self.rabi = rabi;
        self.detuning = detuning;
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    pub fn dim(&self) -> usize {
        1 << self.atoms
    }

    pub fn rabi(&self) -> f64 {
        self.rabi
    }

    pub fn detuning(&self) -> f64 {
        self.detuning
    }

    pub fn blockade(&self) -> f64 {
        self.blockade
    }

    #[inline]
    pub fn diagonal(&self, s: usize) -> f64 {
        self.diagonal_at(s, self.detuning)
    }

    #[inline]
    pub(crate) fn diagonal_at(&self, s: usize, detuning: f64) -> f64 {
        -detuning * self.weight_sum[s] + self.static_diag[s]
    }

    /// True when `0 < w_i * detuning < blockade` for every weighted atom.
    pub fn in_valid_regime(&self) -> bool {
        self.weights
            .iter()
            .filter(|&&w| w > 0.0)
            .all(|&w| w * self.detuning > 0.0 && w * self.detuning < self.blockade)
    }

    /// Magnitude bound used for relative tolerances.
    pub fn scale(&self) -> f64 {
        let diag = self
            .static_diag
            .iter()
            .zip(&self.weight_sum)
            .fold(0.0f64, |m, (s, w)| m.max((s - self.detuning * w).abs()));
        (diag + 0.5 * self.rabi.abs() * self.atoms as f64).max(f64::MIN_POSITIVE)
    }

    /// `y = H x` for real vectors.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        let half = 0.5 * self.rabi;
        for s in 0..self.dim() {
            let mut acc = self.diagonal(s) * x[s];
            if half != 0.0 {
                for i in 0..self.atoms {
                    acc += half * x[s ^ 1 << i];
                }
            }
            y[s] = acc;
        }
    }

    /// `y = H x` for complex vectors.
    pub fn apply_complex(&self, x: &[Complex64], y: &mut [Complex64]) {
        let half = 0.5 * self.rabi;
        for s in 0..self.dim() {
            let mut acc = x[s] * self.diagonal(s);
            if half != 0.0 {
                for i in 0..self.atoms {
                    acc += x[s ^ 1 << i] * half;
                }
            }
            y[s] = acc;
        }
    }
}

/// Builds the Rydberg Hamiltonian of `graph`.
pub fn build_hamiltonian(graph: &AtomGraph, params: &RydbergParams) -> Result<Hamiltonian, SimError> {
    Hamiltonian::new(graph, params)
}
