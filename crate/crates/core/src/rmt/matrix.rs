use num_complex::Complex;

use crate::distributions::EnsembleKind;
use crate::error::{domain, numeric, Result};
use crate::numerics::RandomStream;
use crate::rmt::eigen::eigenvalues_hermitian;
use crate::scalar::Real;

/// Dense square matrix of complex entries, stored row-major.
///
/// Nothing here enforces self-adjointness; the ensemble constructors build
/// it in structurally and the eigensolver checks it on entry.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> HermitianMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        }
    }

    /// Builds a matrix from row-major complex entries.
    pub fn from_rows(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(domain(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from row-major real entries.
    pub fn from_real_rows(dim: usize, data: &[T]) -> Result<Self> {
        Self::from_rows(dim, data.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex<T>) {
        self.data[i * self.dim + j] = z;
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn scaled(&self, c: T) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn trace(&self) -> T {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    pub fn frobenius_norm_sqr(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs_entry(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    /// Largest `|a_ij − conj(a_ji)|` over all index pairs.
    pub fn self_adjoint_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_hermitian_exact(&self) -> bool {
        (0..self.dim).all(|i| (i..self.dim).all(|j| self.get(i, j) == self.get(j, i).conj()))
    }
}

/// One draw from a Gaussian ensemble.
///
/// `n` counts distinct levels. GOE and GUE members are `n × n`; GSE members
/// are stored as `2n × 2n` complex matrices in quaternion self-dual block
/// form `[[A, B], [−conj(B), conj(A)]]`. GOE entries have zero imaginary part.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianMatrixSample<T> {
    pub kind: EnsembleKind,
    pub n: usize,
    pub matrix: HermitianMatrix<T>,
}

/// Ascending eigenvalues, one per distinct level.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData<T> {
    pub eigenvalues: Vec<T>,
}

fn complex_normal<T: Real>(stream: &mut RandomStream) -> Complex<T> {
    let re = stream.standard_normal();
    let im = stream.standard_normal();
    Complex::new(re, im)
}

/// Samples one member of `kind` with `n` distinct levels.
///
/// GOE: `(A + Aᵀ)/2` with real N(0,1) entries. GUE: `(A + A†)/2` with entries
/// N(0,1) + i·N(0,1). GSE: `A = (C + C†)/2`, `B = (D − Dᵀ)/2` from complex
/// Gaussian `C`, `D`.
pub fn sample_matrix<T: Real>(
    stream: &mut RandomStream,
    kind: EnsembleKind,
    n: usize,
) -> Result<GaussianMatrixSample<T>> {
    if n < 2 {
        return Err(domain(format!("matrix dimension must be >= 2, got {n}")));
    }
    let half = T::lit(0.5);
    let matrix = match kind {
        EnsembleKind::Goe => {
            let a: Vec<T> = (0..n * n).map(|_| stream.standard_normal()).collect();
            let mut h = HermitianMatrix::zeros(n);
            for i in 0..n {
                for j in i..n {
                    let x = (a[i * n + j] + a[j * n + i]) * half;
                    h.set(i, j, Complex::new(x, T::zero()));
                    h.set(j, i, Complex::new(x, T::zero()));
                }
            }
            h
        }
        EnsembleKind::Gue => {
            let a: Vec<Complex<T>> = (0..n * n).map(|_| complex_normal(stream)).collect();
            hermitian_part(n, &a)
        }
        EnsembleKind::Gse => {
            let c: Vec<Complex<T>> = (0..n * n).map(|_| complex_normal(stream)).collect();
            let d: Vec<Complex<T>> = (0..n * n).map(|_| complex_normal(stream)).collect();
            let a = hermitian_part(n, &c);
            let mut h = HermitianMatrix::zeros(2 * n);
            for i in 0..n {
                for j in 0..n {
                    let b = (d[i * n + j] - d[j * n + i]) * half;
                    let aij = a.get(i, j);
                    h.set(i, j, aij);
                    h.set(n + i, n + j, aij.conj());
                    h.set(i, n + j, b);
                    h.set(n + i, j, -b.conj());
                }
            }
            h
        }
    };
    Ok(GaussianMatrixSample { kind, n, matrix })
}

fn hermitian_part<T: Real>(n: usize, a: &[Complex<T>]) -> HermitianMatrix<T> {
    let half = T::lit(0.5);
    let mut h = HermitianMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let z = (a[i * n + j] + a[j * n + i].conj()) * half;
            h.set(i, j, z);
            h.set(j, i, z.conj());
        }
    }
    h
}

fn degeneracy_tolerance<T: Real>(dim: usize) -> T {
    T::lit(1e-8).max(T::lit(64.0) * T::from_usize_lossy(dim) * T::epsilon())
}

/// Collapses Kramers pairs of an ascending GSE spectrum.
///
/// Consecutive eigenvalues are paired and averaged. A pair further apart than
/// `1e−8` relative to the spectral radius is a numeric error.
pub fn kramers_deduplicate<T: Real>(eigenvalues: &[T]) -> Result<Vec<T>> {
    if !eigenvalues.len().is_multiple_of(2) {
        return Err(domain(format!(
            "Kramers pairing needs an even number of eigenvalues, got {}",
            eigenvalues.len()
        )));
    }
    let scale = eigenvalues.iter().fold(T::one(), |acc, x| acc.max(x.abs()));
    let tol = degeneracy_tolerance::<T>(eigenvalues.len()) * scale;
    eigenvalues
        .chunks_exact(2)
        .map(|pair| {
            let gap = (pair[1] - pair[0]).abs();
            if gap > tol {
                Err(numeric(format!(
                    "eigenvalues {} and {} are not a Kramers pair (gap {gap})",
                    pair[0], pair[1]
                )))
            } else {
                Ok((pair[0] + pair[1]) * T::lit(0.5))
            }
        })
        .collect()
}

impl<T: Real> GaussianMatrixSample<T> {
    /// Full spectrum of the stored matrix (`2n` values for GSE).
    pub fn raw_eigenvalues(&self) -> Result<Vec<T>> {
        eigenvalues_hermitian(&self.matrix)
    }

    /// The `n` distinct levels, Kramers-deduplicated for GSE.
    pub fn spectrum(&self) -> Result<SpectralData<T>> {
        let raw = self.raw_eigenvalues()?;
        let eigenvalues = match self.kind {
            EnsembleKind::Gse => kramers_deduplicate(&raw)?,
            _ => raw,
        };
        Ok(SpectralData { eigenvalues })
    }
}
