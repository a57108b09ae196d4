use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::exact::matrix::Matrix;
use crate::exact::scalar::Scalar;

/// A linear subspace of Q^ambient, represented by the reduced row echelon
/// basis of its span. The representation is canonical: two subspaces are
/// equal exactly when their stored bases are equal, so `==` decides
/// subspace equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Canonicalizes an arbitrary spanning set. An empty set spans the
    /// zero subspace (an empty row list carries no width of its own).
    pub fn from_span(ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        for v in &vectors {
            assert_eq!(v.len(), ambient, "span vector has wrong length");
        }
        let m = Matrix::from_rows(vectors).expect("uniform row lengths");
        Self::from_rows(ambient, &m)
    }

    /// Canonicalizes the row space of `m`.
    pub fn from_rows(ambient: usize, m: &Matrix) -> Self {
        assert_eq!(m.cols(), ambient, "row width must match ambient");
        let (r, pivots) = m.rref();
        let rank = pivots.len();
        let basis = Matrix::from_fn(rank, ambient, |i, j| r[(i, j)].clone());
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical (RREF) basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after subtracting its projection along each basis
    /// row. Zero exactly when `v` lies in the subspace.
    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient, "vector length must match ambient");
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let c = w[p].clone();
            for j in 0..self.ambient {
                let t = &c * &self.basis[(i, j)];
                w[j] -= &t;
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` with respect to the canonical basis, if `v` lies
    /// in the subspace. Because the basis is in RREF, the coordinate of the
    /// i-th basis vector is just the entry of `v` at the i-th pivot column.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_contained_in(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        let stacked = self.basis.vstack(&other.basis);
        Ok(Subspace::from_rows(self.ambient, &stacked))
    }

    /// Intersection via the kernel of `[U^T | -V^T]`: a kernel vector gives
    /// coefficients of one spanning set of U matching a combination in V.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let joint = self
            .basis
            .transpose()
            .hstack(&other.basis.transpose().scale(&-Scalar::one()));
        let kernel = joint.kernel_basis();
        let mut vectors = Vec::new();
        for k in kernel.basis().row_vecs() {
            let coeffs = &k[..self.dim()];
            vectors.push(crate::exact::matrix::combine(
                self.ambient,
                coeffs,
                &self.basis,
            ));
        }
        Ok(Subspace::from_span(self.ambient, vectors))
    }

    /// The space of linear functionals vanishing on this subspace,
    /// identified with vectors via the standard dot product. Its basis rows
    /// are the constraint rows "membership in this subspace" as a linear
    /// system: `v` lies here iff every annihilator row dots to zero with `v`.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        self.basis.kernel_basis()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), Error> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Subspace", 3)?;
        s.serialize_field("ambient_dim", &self.ambient)?;
        s.serialize_field("dim", &self.dim())?;
        s.serialize_field("basis", &self.basis)?;
        s.end()
    }
}
