//! Two-step and three-step transition amplitudes.
//!
//! A [`MeasurementChain`] is the full pre/post-selection setup: prepare
//! `|I>`, evolve with `U(t1)`, measure in the mid basis `{|b_j>}`, evolve
//! with `U(t2,t1)`, detect in the final basis `{|F_i>}`. The N x N path
//! amplitudes `A(F_i <- b_j <- I) = <F_i|U(t2,t1)|b_j><b_j|U(t1)|I>` carry
//! everything downstream modules need.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::qcore::{inner, Basis, StateVector, UnitaryMatrix};
use crate::scalar::Scalar;

/// Pre/post-selected three-step measurement setup.
#[derive(Debug, Clone)]
pub struct MeasurementChain<T: Scalar> {
    initial: StateVector<T>,
    u1: UnitaryMatrix<T>,
    u21: UnitaryMatrix<T>,
    mid_basis: Basis<T>,
    final_basis: Basis<T>,
}

impl<T: Scalar> MeasurementChain<T> {
    /// Builds a chain; omitted evolutions default to the identity.
    pub fn new(
        initial: StateVector<T>,
        u1: Option<UnitaryMatrix<T>>,
        u21: Option<UnitaryMatrix<T>>,
        mid_basis: Basis<T>,
        final_basis: Basis<T>,
    ) -> Result<Self> {
        let dim = initial.dim();
        let u1 = match u1 {
            Some(u) => u,
            None => UnitaryMatrix::identity(dim)?,
        };
        let u21 = match u21 {
            Some(u) => u,
            None => UnitaryMatrix::identity(dim)?,
        };
        for (name, got) in [
            ("u1", u1.dim()),
            ("u21", u21.dim()),
            ("mid_basis", mid_basis.dim()),
            ("final_basis", final_basis.dim()),
        ] {
            if got != dim {
                return Err(Error::invalid_param(
                    name,
                    format!("dimension {got} does not match initial state dimension {dim}"),
                ));
            }
        }
        Ok(Self {
            initial,
            u1,
            u21,
            mid_basis,
            final_basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.initial.dim()
    }

    pub fn initial(&self) -> &StateVector<T> {
        &self.initial
    }

    pub fn u1(&self) -> &UnitaryMatrix<T> {
        &self.u1
    }

    pub fn u21(&self) -> &UnitaryMatrix<T> {
        &self.u21
    }

    pub fn mid_basis(&self) -> &Basis<T> {
        &self.mid_basis
    }

    pub fn final_basis(&self) -> &Basis<T> {
        &self.final_basis
    }

    /// `A(F_i <- I) = <F_i|U(t2,t1) U(t1)|I>`, computed without reference to
    /// the mid basis.
    pub fn two_step_amplitude(&self, i: usize) -> Result<Complex<T>> {
        if i >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            });
        }
        let evolved = self.u21.apply(&self.u1.apply(&self.initial)?)?;
        inner(self.final_basis.vector(i), &evolved)
    }

    /// All N two-step amplitudes.
    pub fn two_step_amplitudes(&self) -> Result<Vec<Complex<T>>> {
        (0..self.dim())
            .map(|i| self.two_step_amplitude(i))
            .collect()
    }

    /// The N x N table of path amplitudes.
    pub fn path_table(&self) -> Result<PathAmplitudeTable<T>> {
        let dim = self.dim();
        let evolved_initial = self.u1.apply(&self.initial)?;
        let mut entries = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        for j in 0..dim {
            let b_j = self.mid_basis.vector(j);
            let via = inner(b_j, &evolved_initial)?;
            let evolved_bj = self.u21.apply(b_j)?;
            for i in 0..dim {
                entries[i * dim + j] = inner(self.final_basis.vector(i), &evolved_bj)? * via;
            }
        }
        PathAmplitudeTable::from_entries(dim, entries)
    }
}

/// The N x N complex amplitudes `A(F_i <- b_j <- I)`, indexed (final, mid).
#[derive(Debug, Clone, PartialEq)]
pub struct PathAmplitudeTable<T: Scalar> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> PathAmplitudeTable<T> {
    /// Builds a table from row-major entries. Entries must be finite; no
    /// normalization is imposed so synthetic tables can be used directly.
    pub fn from_entries(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        if entries
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFinite {
                what: "path amplitudes".to_string(),
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.entries[i * self.dim + j]
    }

    /// Amplitudes of all paths arriving at final state `i`.
    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    /// `Σ_j A(F_i <- b_j <- I)`; equals the two-step amplitude.
    pub fn row_sum(&self, i: usize) -> Complex<T> {
        self.row(i)
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, c| acc + *c)
    }

    /// `Σ_j |A(F_i <- b_j <- I)|`, the scale used for divergence checks.
    pub fn row_abs_sum(&self, i: usize) -> T {
        self.row(i)
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), |a, b| a + b)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim,
            });
        }
        Ok(())
    }

    /// Detection probabilities for final state `i` with interference intact
    /// versus destroyed: `(|Σ_j A_ij|^2, Σ_j |A_ij|^2)`.
    pub fn interference_contrast(&self, i: usize) -> Result<InterferenceContrast<T>> {
        self.check_index(i)?;
        let coherent = self.row_sum(i).norm_sqr();
        let incoherent = self
            .row(i)
            .iter()
            .map(|c| c.norm_sqr())
            .fold(T::zero(), |a, b| a + b);
        Ok(InterferenceContrast {
            coherent,
            incoherent,
        })
    }
}

/// Detection probabilities for one final state at the two extremes of
/// measurement strength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceContrast<T> {
    /// Interference intact (infinitely inaccurate pointer): `|Σ_j A_ij|^2`.
    pub coherent: T,
    /// Interference destroyed (fully accurate pointer): `Σ_j |A_ij|^2`.
    pub incoherent: T,
}
