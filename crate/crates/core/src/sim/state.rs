use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::graph::AtomId;
use crate::polynomial::Assignment;

/// Amplitudes over the `2^n` occupation basis; bit `i` of an index is atom `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    atoms: usize,
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    /// All atoms in the ground level.
    pub fn zeros(atoms: usize) -> Self {
        Self::basis(atoms, 0)
    }

    pub fn basis(atoms: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << atoms];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        QuantumState { atoms, amplitudes }
    }

    /// Wraps a real vector, normalizing it.
    pub fn from_real(v: &[f64]) -> Self {
        let atoms = v.len().trailing_zeros() as usize;
        assert_eq!(1 << atoms, v.len(), "length must be a power of two");
        let n = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
        QuantumState {
            atoms,
            amplitudes: v.iter().map(|&x| Complex64::new(x / n, 0.0)).collect(),
        }
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Self {
        let atoms = amplitudes.len().trailing_zeros() as usize;
        assert_eq!(1 << atoms, amplitudes.len(), "length must be a power of two");
        QuantumState { atoms, amplitudes }
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.amplitudes.iter().map(|a| a.norm_sqr()).sum())
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Basis index of largest probability (lowest index on ties).
    pub fn dominant(&self) -> usize {
        let p = self.probabilities();
        (0..p.len()).fold(0, |best, s| if p[s] > p[best] { s } else { best })
    }

    /// Probability that atom `atom` is excited.
    pub fn excitation(&self, atom: AtomId) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(s, _)| s >> atom & 1 == 1)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Marginal distribution of the occupations of `data` (variable `i` at position `i`).
    pub fn projection_probabilities(&self, data: &[AtomId]) -> BTreeMap<Assignment, f64> {
        let mut out = BTreeMap::new();
        for (s, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            if p == 0.0 {
                continue;
            }
            let bits = Assignment(data.iter().map(|&d| s >> d & 1 == 1).collect());
            *out.entry(bits).or_insert(0.0) += p;
        }
        out
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &QuantumState) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm_sqr()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_marginalizes() {
        let s = QuantumState::from_real(&[1.0, 1.0, 1.0, 1.0]);
        let p = s.projection_probabilities(&[1]);
        assert!((p[&Assignment::from_bits(&[0])] - 0.5).abs() < 1e-15);
        assert!((s.excitation(0) - 0.5).abs() < 1e-15);
        assert!((s.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dominant_prefers_lowest_index() {
        let s = QuantumState::from_real(&[0.0, 1.0, 1.0, 0.5]);
        assert_eq!(s.dominant(), 1);
        assert!((s.fidelity(&QuantumState::basis(2, 1)) - 1.0 / 2.25).abs() < 1e-12);
    }
}
