//! Finite-dimensional complex state and operator algebra.
//!
//! States, unitaries, orthonormal bases and observables for small Hilbert
//! spaces (dimension 1..=16), with validation at construction. Everything is
//! immutable once built, so values can be shared freely between threads.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest supported Hilbert-space dimension. Dense storage throughout.
pub const MAX_DIM: usize = 16;

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::UnsupportedDimension { dim });
    }
    Ok(())
}

fn check_finite<T: Scalar>(values: &[Complex<T>], what: &str) -> Result<()> {
    if values
        .iter()
        .any(|c| !c.re.is_finite() || !c.im.is_finite())
    {
        return Err(Error::NonFinite {
            what: what.to_string(),
        });
    }
    Ok(())
}

/// Unit-norm complex vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Scalar> {
    components: Vec<Complex<T>>,
}

impl<T: Scalar> StateVector<T> {
    /// Builds a state from components, renormalizing small defects.
    ///
    /// Inputs whose norm is off by more than [`Scalar::input_norm_tol`] are
    /// rejected instead of silently rescaled.
    pub fn new(components: Vec<Complex<T>>) -> Result<Self> {
        check_dim(components.len())?;
        check_finite(&components, "state components")?;
        let norm = components
            .iter()
            .map(|c| c.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt();
        let defect = (norm - T::one()).abs();
        if defect > T::input_norm_tol() {
            return Err(Error::NotNormalized {
                defect: defect.to_f64().unwrap_or(f64::NAN),
            });
        }
        let components = components.into_iter().map(|c| c / norm).collect();
        Ok(Self { components })
    }

    /// The computational basis state `|k>`.
    pub fn basis_state(dim: usize, k: usize) -> Result<Self> {
        check_dim(dim)?;
        if k >= dim {
            return Err(Error::IndexOutOfRange { index: k, dim });
        }
        let mut components = vec![Complex::new(T::zero(), T::zero()); dim];
        components[k] = Complex::new(T::one(), T::zero());
        Ok(Self { components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Complex<T>] {
        &self.components
    }

    pub fn component(&self, k: usize) -> Complex<T> {
        self.components[k]
    }

    pub fn norm(&self) -> T {
        self.components
            .iter()
            .map(|c| c.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }
}

/// `<a|b>`, conjugating the first argument.
pub fn inner<T: Scalar>(a: &StateVector<T>, b: &StateVector<T>) -> Result<Complex<T>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(a.components
        .iter()
        .zip(&b.components)
        .map(|(x, y)| x.conj() * *y)
        .fold(Complex::new(T::zero(), T::zero()), |acc, c| acc + c))
}

/// Square complex matrix with `U†U = 1`, validated at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix<T: Scalar> {
    dim: usize,
    /// Row-major entries.
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> UnitaryMatrix<T> {
    /// Builds a unitary from row-major entries, rejecting matrices whose
    /// `U†U` deviates from the identity by more than the rejection tolerance
    /// in any entry.
    pub fn new(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        check_finite(&entries, "matrix entries")?;
        let u = Self { dim, entries };
        let defect = u.unitarity_defect();
        if defect > T::ortho_reject_tol() {
            return Err(Error::NotUnitary {
                defect: defect.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(u)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let zero = Complex::new(T::zero(), T::zero());
        let mut entries = vec![zero; dim * dim];
        for k in 0..dim {
            entries[k * dim + k] = Complex::new(T::one(), T::zero());
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row * self.dim + col]
    }

    /// Max entrywise deviation of `U†U` from the identity.
    pub fn unitarity_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..self.dim {
                    acc += self.entry(k, i).conj() * self.entry(k, j);
                }
                let target = if i == j { T::one() } else { T::zero() };
                let defect = (acc - Complex::new(target, T::zero())).norm();
                if defect > worst {
                    worst = defect;
                }
            }
        }
        worst
    }

    /// `U|s>`. The image is renormalized against rounding drift.
    pub fn apply(&self, s: &StateVector<T>) -> Result<StateVector<T>> {
        if s.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: s.dim(),
            });
        }
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.dim];
        for (row, slot) in out.iter_mut().enumerate() {
            let mut acc = Complex::new(T::zero(), T::zero());
            for col in 0..self.dim {
                acc += self.entry(row, col) * s.component(col);
            }
            *slot = acc;
        }
        StateVector::new(out)
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &UnitaryMatrix<T>) -> Result<UnitaryMatrix<T>> {
        if rhs.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: rhs.dim,
            });
        }
        let mut entries = vec![Complex::new(T::zero(), T::zero()); self.dim * self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..self.dim {
                    acc += self.entry(i, k) * rhs.entry(k, j);
                }
                entries[i * self.dim + j] = acc;
            }
        }
        UnitaryMatrix::new(self.dim, entries)
    }
}

/// Orthonormal set of `dim` states spanning the space.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis<T: Scalar> {
    vectors: Vec<StateVector<T>>,
}

impl<T: Scalar> Basis<T> {
    pub fn new(vectors: Vec<StateVector<T>>) -> Result<Self> {
        let dim = vectors.len();
        check_dim(dim)?;
        for v in &vectors {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.dim(),
                });
            }
        }
        for i in 0..dim {
            for j in i..dim {
                let ov = inner(&vectors[i], &vectors[j])?;
                let target = if i == j { T::one() } else { T::zero() };
                let defect = (ov - Complex::new(target, T::zero())).norm();
                if defect > T::ortho_reject_tol() {
                    return Err(Error::NotOrthonormal {
                        i,
                        j,
                        defect: defect.to_f64().unwrap_or(f64::NAN),
                    });
                }
            }
        }
        Ok(Self { vectors })
    }

    pub fn computational(dim: usize) -> Result<Self> {
        let vectors = (0..dim)
            .map(|k| StateVector::basis_state(dim, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { vectors })
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vector(&self, j: usize) -> &StateVector<T> {
        &self.vectors[j]
    }

    pub fn vectors(&self) -> &[StateVector<T>] {
        &self.vectors
    }

    /// Max componentwise distance between two bases, used to check that an
    /// observable is diagonal in the basis a chain measures.
    pub fn max_distance(&self, other: &Basis<T>) -> Result<T> {
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let mut worst = T::zero();
        for (a, b) in self.vectors.iter().zip(&other.vectors) {
            for (x, y) in a.components().iter().zip(b.components()) {
                let d = (*x - *y).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        Ok(worst)
    }
}

/// Hermitian observable given by an orthonormal eigenbasis and real
/// eigenvalues: `B = Σ_j B_j |b_j><b_j|`.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable<T: Scalar> {
    basis: Basis<T>,
    eigenvalues: Vec<T>,
}

impl<T: Scalar> Observable<T> {
    pub fn new(basis: Basis<T>, eigenvalues: Vec<T>) -> Result<Self> {
        if eigenvalues.len() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                got: eigenvalues.len(),
            });
        }
        if eigenvalues.iter().any(|b| !b.is_finite()) {
            return Err(Error::NonFinite {
                what: "eigenvalues".to_string(),
            });
        }
        Ok(Self { basis, eigenvalues })
    }

    /// The projector `π_j = |b_j><b_j|` as an observable (eigenvalue 1 at
    /// `j`, 0 elsewhere).
    pub fn projector(basis: Basis<T>, j: usize) -> Result<Self> {
        let dim = basis.dim();
        if j >= dim {
            return Err(Error::IndexOutOfRange { index: j, dim });
        }
        let mut eigenvalues = vec![T::zero(); dim];
        eigenvalues[j] = T::one();
        Ok(Self { basis, eigenvalues })
    }

    /// Projector onto the span of several basis states, e.g. `π_{1∪2}`.
    pub fn union_projector(basis: Basis<T>, indices: &[usize]) -> Result<Self> {
        let dim = basis.dim();
        let mut eigenvalues = vec![T::zero(); dim];
        for &j in indices {
            if j >= dim {
                return Err(Error::IndexOutOfRange { index: j, dim });
            }
            eigenvalues[j] = T::one();
        }
        Ok(Self { basis, eigenvalues })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &Basis<T> {
        &self.basis
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// `exp(-iB)`: the exact unitary generated by an impulsive coupling to
    /// this observable, diagonal in its eigenbasis with phases `e^{-iB_j}`.
    pub fn impulsive_kick(&self) -> Result<UnitaryMatrix<T>> {
        let dim = self.dim();
        let mut entries = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        for (j, &value) in self.eigenvalues.iter().enumerate() {
            let phase = Complex::new(value.cos(), -value.sin());
            let v = self.basis.vector(j);
            for a in 0..dim {
                for b in 0..dim {
                    entries[a * dim + b] += phase * v.component(a) * v.component(b).conj();
                }
            }
        }
        UnitaryMatrix::new(dim, entries)
    }
}

/// Convenience wrapper matching the operation name used elsewhere.
pub fn projector_observable<T: Scalar>(basis: &Basis<T>, j: usize) -> Result<Observable<T>> {
    Observable::projector(basis.clone(), j)
}

/// `exp(-iV)` for an observable `V`.
pub fn impulsive_kick<T: Scalar>(v: &Observable<T>) -> Result<UnitaryMatrix<T>> {
    v.impulsive_kick()
}
