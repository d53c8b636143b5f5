use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// States at least this long use the parallel kernels.
const PAR_THRESHOLD: usize = 1 << 14;
const REDUCE_CHUNK: usize = 1 << 12;

pub const DEFAULT_QUBIT_CAP: usize = 20;

/// Dense `2^r` amplitude vector. Bit `k` of an index is qubit (variable) `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|+⟩^{⊗r}`: every amplitude `2^{-r/2}`.
    pub fn uniform(qubits: usize, qubit_cap: usize) -> Result<Self> {
        check_cap(qubits, qubit_cap)?;
        let size = 1usize << qubits;
        let a = Complex64::new((size as f64).sqrt().recip(), 0.0);
        Ok(Self {
            qubits,
            amps: vec![a; size],
        })
    }

    pub fn basis(qubits: usize, index: usize, qubit_cap: usize) -> Result<Self> {
        check_cap(qubits, qubit_cap)?;
        let size = 1usize << qubits;
        if index >= size {
            return Err(Error::LengthMismatch {
                expected: size,
                actual: index + 1,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); size];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { qubits, amps })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::LengthMismatch {
                expected: amps.len().next_power_of_two(),
                actual: amps.len(),
            });
        }
        Ok(Self {
            qubits: amps.len().trailing_zeros() as usize,
            amps,
        })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.reduce(|a, _| a.norm_sqr()).sqrt()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `e^{-iγ H_P}` for diagonal `H_P`: amplitude `b` picks up `e^{-iγ·diag[b]}`.
    pub fn apply_phase(&mut self, diag: &[f64], gamma: f64) -> Result<()> {
        self.check_len(diag.len())?;
        let kernel = |(a, &d): (&mut Complex64, &f64)| *a *= Complex64::from_polar(1.0, -gamma * d);
        if self.amps.len() >= PAR_THRESHOLD {
            self.amps.par_iter_mut().zip(diag.par_iter()).for_each(kernel);
        } else {
            self.amps.iter_mut().zip(diag.iter()).for_each(kernel);
        }
        Ok(())
    }

    /// `e^{-iβ Σ X_k}`: an `Rx(2β)` rotation on every qubit.
    pub fn apply_mixer(&mut self, beta: f64) {
        let (s, c) = beta.sin_cos();
        let mis = Complex64::new(0.0, -s);
        for k in 0..self.qubits {
            let bit = 1usize << k;
            let rotate = |chunk: &mut [Complex64]| {
                let (lo, hi) = chunk.split_at_mut(bit);
                for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x0, x1) = (*a0, *a1);
                    *a0 = x0 * c + x1 * mis;
                    *a1 = x1 * c + x0 * mis;
                }
            };
            if self.amps.len() >= PAR_THRESHOLD {
                self.amps.par_chunks_mut(2 * bit).for_each(rotate);
            } else {
                self.amps.chunks_mut(2 * bit).for_each(rotate);
            }
        }
    }

    /// `⟨ψ|H_P|ψ⟩ = Σ |a_b|² diag[b]`.
    pub fn expectation(&self, diag: &[f64]) -> Result<f64> {
        self.check_len(diag.len())?;
        Ok(self.reduce(|a, b| a.norm_sqr() * diag[b]))
    }

    /// Deterministic sum: fixed chunks reduced in index order.
    fn reduce(&self, term: impl Fn(&Complex64, usize) -> f64 + Sync) -> f64 {
        let partial = |(ci, chunk): (usize, &[Complex64])| {
            chunk
                .iter()
                .enumerate()
                .map(|(i, a)| term(a, ci * REDUCE_CHUNK + i))
                .sum::<f64>()
        };
        let sums: Vec<f64> = if self.amps.len() >= PAR_THRESHOLD {
            self.amps.par_chunks(REDUCE_CHUNK).enumerate().map(partial).collect()
        } else {
            self.amps.chunks(REDUCE_CHUNK).enumerate().map(partial).collect()
        };
        sums.iter().sum()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.amps.len() {
            return Err(Error::LengthMismatch {
                expected: self.amps.len(),
                actual: len,
            });
        }
        Ok(())
    }

    /// Debug dump: `r` as u64, then `2^r` (re, im) pairs, all little-endian.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 16 * self.amps.len());
        out.extend_from_slice(&(self.qubits as u64).to_le_bytes());
        for a in &self.amps {
            out.extend_from_slice(&a.re.to_le_bytes());
            out.extend_from_slice(&a.im.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let bad = |actual| Error::LengthMismatch { expected: 8, actual };
        if bytes.len() < 8 {
            return Err(bad(bytes.len()));
        }
        let qubits = u64::from_le_bytes(bytes[..8].try_into().expect("8 bytes")) as usize;
        if qubits >= 48 {
            return Err(Error::QubitCapExceeded {
                requested: qubits,
                cap: 47,
            });
        }
        let want = 8 + 16 * (1usize << qubits);
        if bytes.len() != want {
            return Err(Error::LengthMismatch {
                expected: want,
                actual: bytes.len(),
            });
        }
        let amps = bytes[8..]
            .chunks_exact(16)
            .map(|c| {
                Complex64::new(
                    f64::from_le_bytes(c[..8].try_into().expect("8 bytes")),
                    f64::from_le_bytes(c[8..].try_into().expect("8 bytes")),
                )
            })
            .collect();
        Ok(Self { qubits, amps })
    }
}

fn check_cap(qubits: usize, cap: usize) -> Result<()> {
    if qubits > cap || qubits >= 48 {
        return Err(Error::QubitCapExceeded { requested: qubits, cap });
    }
    Ok(())
}
